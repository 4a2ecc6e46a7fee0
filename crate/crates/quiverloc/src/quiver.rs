//! Finite quivers (directed multigraphs with named arrows), fullness
//! checks and quiver homomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::locality::Label;
use crate::union_find::UnionFind;

/// A named arrow with its source and target vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub label: Label,
    pub source: Label,
    pub target: Label,
}

/// Structural fingerprint of a quiver, used to tie paths and algebra
/// elements to the quiver they were built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiverId(u64);

/// A finite quiver: sorted vertex labels and arrows sorted by label.
/// Loops and parallel arrows are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Label>,
    arrows: Vec<Arrow>,
    id: QuiverId,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)`
    /// triples. Fails on duplicate arrow labels and on sources or targets
    /// that are not declared vertices.
    pub fn new<V, VI, A, L, S, T>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator<Item = VI>,
        VI: Into<Label>,
        A: IntoIterator<Item = (L, S, T)>,
        L: Into<Label>,
        S: Into<Label>,
        T: Into<Label>,
    {
        let mut verts: Vec<Label> = vertices.into_iter().map(Into::into).collect();
        verts.sort();
        verts.dedup();

        let mut arrs: Vec<Arrow> = Vec::new();
        for (label, source, target) in arrows {
            let arrow = Arrow {
                label: label.into(),
                source: source.into(),
                target: target.into(),
            };
            for v in [&arrow.source, &arrow.target] {
                if verts.binary_search(v).is_err() {
                    return Err(Error::input(format!(
                        "arrow `{}` uses undeclared vertex `{v}`",
                        arrow.label
                    )));
                }
            }
            arrs.push(arrow);
        }
        arrs.sort_by(|a, b| a.label.cmp(&b.label));
        for w in arrs.windows(2) {
            if w[0].label == w[1].label {
                return Err(Error::input(format!(
                    "duplicate arrow label `{}`",
                    w[0].label
                )));
            }
        }

        let id = fingerprint(&verts, &arrs);
        Ok(Quiver {
            vertices: verts,
            arrows: arrs,
            id,
        })
    }

    pub fn empty() -> Self {
        Quiver::new(Vec::<Label>::new(), Vec::<(Label, Label, Label)>::new()).unwrap()
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn id(&self) -> QuiverId {
        self.id
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).is_ok()
    }

    pub fn arrow(&self, label: &str) -> Option<&Arrow> {
        self.arrows
            .binary_search_by(|a| a.label.as_str().cmp(label))
            .ok()
            .map(|i| &self.arrows[i])
    }

    /// A quiver is full when every vertex meets at least one arrow
    /// endpoint, and a vertex meeting two or more endpoints is both the
    /// source of some arrow and the target of some arrow.
    pub fn is_full(&self) -> bool {
        self.fullness_witness().is_none()
    }

    /// First vertex (in sorted order) violating fullness, with the reason.
    pub fn fullness_witness(&self) -> Option<(Label, FullnessViolation)> {
        let mut endpoint_count: BTreeMap<&Label, usize> = BTreeMap::new();
        let mut sources: BTreeSet<&Label> = BTreeSet::new();
        let mut targets: BTreeSet<&Label> = BTreeSet::new();
        for a in &self.arrows {
            *endpoint_count.entry(&a.source).or_default() += 1;
            *endpoint_count.entry(&a.target).or_default() += 1;
            sources.insert(&a.source);
            targets.insert(&a.target);
        }
        for v in &self.vertices {
            match endpoint_count.get(v).copied().unwrap_or(0) {
                0 => return Some((v.clone(), FullnessViolation::Isolated)),
                1 => {}
                _ => {
                    if !(sources.contains(v) && targets.contains(v)) {
                        return Some((v.clone(), FullnessViolation::NotSourceAndTarget));
                    }
                }
            }
        }
        None
    }

    /// Independent fullness check through the tagged-endpoint projection:
    /// fullness holds iff the projection onto the vertices is onto and its
    /// fibers realize exactly the equivalence closure of target-meets-source.
    pub fn is_full_via_fibers(&self) -> bool {
        let m = self.arrows.len();
        // endpoint i = source of arrow i, endpoint m + i = target of arrow i
        let projection: Vec<&Label> = self
            .arrows
            .iter()
            .map(|a| &a.source)
            .chain(self.arrows.iter().map(|a| &a.target))
            .collect();

        let covered: BTreeSet<&Label> = projection.iter().copied().collect();
        let onto = self.vertices.iter().all(|v| covered.contains(v));

        let mut uf = UnionFind::new(2 * m);
        for (i, a) in self.arrows.iter().enumerate() {
            for (j, b) in self.arrows.iter().enumerate() {
                if a.target == b.source {
                    uf.union(m + i, j);
                }
            }
        }
        let mut fibers_match = true;
        'outer: for u in 0..2 * m {
            for v in 0..2 * m {
                let same_fiber = projection[u] == projection[v];
                if same_fiber != uf.same(u, v) {
                    fibers_match = false;
                    break 'outer;
                }
            }
        }
        onto && fibers_match
    }
}

/// Why a vertex breaks fullness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FullnessViolation {
    /// The vertex meets no arrow endpoint.
    Isolated,
    /// The vertex meets two or more endpoints but is not both a source
    /// and a target.
    NotSourceAndTarget,
}

impl std::fmt::Display for FullnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FullnessViolation::Isolated => write!(f, "meets no arrow"),
            FullnessViolation::NotSourceAndTarget => {
                write!(f, "meets two or more endpoints but is not both a source and a target")
            }
        }
    }
}

fn fingerprint(vertices: &[Label], arrows: &[Arrow]) -> QuiverId {
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    vertices.hash(&mut hasher);
    for a in arrows {
        a.label.hash(&mut hasher);
        a.source.hash(&mut hasher);
        a.target.hash(&mut hasher);
    }
    QuiverId(hasher.finish())
}

/// A pair of maps on vertices and arrows between two quivers.
///
/// The commutation squares are checked by [`QuiverHom::is_hom`], not
/// assumed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverHom {
    vertex_map: BTreeMap<Label, Label>,
    arrow_map: BTreeMap<Label, Label>,
}

impl QuiverHom {
    pub fn new(vertex_map: BTreeMap<Label, Label>, arrow_map: BTreeMap<Label, Label>) -> Self {
        QuiverHom {
            vertex_map,
            arrow_map,
        }
    }

    pub fn identity(q: &Quiver) -> Self {
        QuiverHom {
            vertex_map: q.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
            arrow_map: q.arrows().iter().map(|a| (a.label.clone(), a.label.clone())).collect(),
        }
    }

    pub fn vertex_map(&self) -> &BTreeMap<Label, Label> {
        &self.vertex_map
    }

    pub fn arrow_map(&self) -> &BTreeMap<Label, Label> {
        &self.arrow_map
    }

    /// True iff the maps are total, land in `to`, and both squares
    /// `s'(f1(a)) = f0(s(a))` and `t'(f1(a)) = f0(t(a))` hold.
    pub fn is_hom(&self, from: &Quiver, to: &Quiver) -> bool {
        for v in from.vertices() {
            match self.vertex_map.get(v) {
                Some(w) if to.has_vertex(w) => {}
                _ => return false,
            }
        }
        for a in from.arrows() {
            let image = match self.arrow_map.get(&a.label) {
                Some(l) => match to.arrow(l) {
                    Some(arrow) => arrow,
                    None => return false,
                },
                None => return false,
            };
            if image.source != self.vertex_map[&a.source] || image.target != self.vertex_map[&a.target]
            {
                return false;
            }
        }
        true
    }
}
