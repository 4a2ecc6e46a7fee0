//! The two maps between quivers and locality sets, the regular hull, the
//! full cover with its projection, and the exhaustive round-trip verifier.
//!
//! Writing `psi` for quiver -> locality set and `phi` for locality set ->
//! quiver: `psi . phi` is the regular hull on relations, `phi . psi` is
//! the full cover on quivers, and both composites are projections onto the
//! regular locality sets and the full quivers respectively.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::locality::{Label, LocalitySet};
use crate::oracle::{self, EnumerationBudget};
use crate::quiver::{Quiver, QuiverHom};
use crate::union_find::UnionFind;

/// Which end of an arrow a tagged endpoint refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndpointTag {
    Source,
    Target,
}

impl EndpointTag {
    fn suffix(self) -> &'static str {
        match self {
            EndpointTag::Source => "s",
            EndpointTag::Target => "t",
        }
    }
}

/// A tagged endpoint: one arrow label together with a source/target tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Endpoint {
    pub label: Label,
    pub tag: EndpointTag,
}

impl Endpoint {
    pub fn render(&self) -> Label {
        format!("{}.{}", self.label, self.tag.suffix())
    }
}

/// One class of the equivalence closure of target-meets-source on the
/// tagged endpoints of a locality set. Becomes a vertex of the derived
/// quiver, named after its smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EndpointClass {
    members: Vec<Endpoint>,
}

impl EndpointClass {
    pub fn members(&self) -> &[Endpoint] {
        &self.members
    }

    pub fn canonical_name(&self) -> Label {
        self.members[0].render()
    }
}

/// The locality set of a quiver: carrier = arrow labels, with `(a, b)`
/// related exactly when the target of `a` is the source of `b`.
pub fn locality_of_quiver(q: &Quiver) -> LocalitySet {
    let elements: Vec<Label> = q.arrows().iter().map(|a| a.label.clone()).collect();
    let mut pairs = Vec::new();
    for a in q.arrows() {
        for b in q.arrows() {
            if a.target == b.source {
                pairs.push((a.label.clone(), b.label.clone()));
            }
        }
    }
    LocalitySet::new(elements, pairs).expect("arrow labels are declared")
}

/// Tagged-endpoint classes of a locality set, sorted by canonical name.
///
/// The closure is computed by union-find over the `2 * |X|` endpoints,
/// independent of the saturation oracle used to cross-check the hull.
pub fn endpoint_classes(x: &LocalitySet) -> Vec<EndpointClass> {
    let elements = x.elements();
    let n = elements.len();
    let index_of = |label: &str| -> usize {
        elements
            .binary_search_by(|e| e.as_str().cmp(label))
            .expect("relation labels are declared")
    };
    // endpoint i = source endpoint of element i, n + i = target endpoint
    let mut uf = UnionFind::new(2 * n);
    for (a, b) in x.relation() {
        uf.union(n + index_of(a), index_of(b));
    }
    let mut classes: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
    for i in 0..2 * n {
        let (label, tag) = if i < n {
            (elements[i].clone(), EndpointTag::Source)
        } else {
            (elements[i - n].clone(), EndpointTag::Target)
        };
        classes.entry(uf.find(i)).or_default().push(Endpoint { label, tag });
    }
    let mut result: Vec<EndpointClass> = classes
        .into_values()
        .map(|mut members| {
            members.sort();
            EndpointClass { members }
        })
        .collect();
    result.sort();
    result
}

/// The quiver of a locality set: one arrow per element, with vertices the
/// endpoint classes and source/target given by the class of each tagged
/// endpoint.
pub fn quiver_of_locality(x: &LocalitySet) -> Quiver {
    let classes = endpoint_classes(x);
    let mut class_of: BTreeMap<(Label, EndpointTag), Label> = BTreeMap::new();
    for class in &classes {
        let name = class.canonical_name();
        for member in class.members() {
            class_of.insert((member.label.clone(), member.tag), name.clone());
        }
    }
    let vertices: Vec<Label> = classes.iter().map(EndpointClass::canonical_name).collect();
    let arrows: Vec<(Label, Label, Label)> = x
        .elements()
        .iter()
        .map(|e| {
            (
                e.clone(),
                class_of[&(e.clone(), EndpointTag::Source)].clone(),
                class_of[&(e.clone(), EndpointTag::Target)].clone(),
            )
        })
        .collect();
    Quiver::new(vertices, arrows).expect("class names are declared vertices")
}

/// Smallest regular locality relation containing the given one, realized
/// as the locality set of the quiver of `x`. The carrier is unchanged.
pub fn regular_hull(x: &LocalitySet) -> LocalitySet {
    locality_of_quiver(&quiver_of_locality(x))
}

/// A full cover: the derived quiver plus its projection back onto the
/// original, identity on arrow labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullCoverResult {
    pub cover: Quiver,
    pub projection: QuiverHom,
}

/// The full cover of a quiver with its canonical projection: vertices of
/// the cover are endpoint classes, each projected to the vertex its
/// members name in `q`.
pub fn full_cover(q: &Quiver) -> FullCoverResult {
    let x = locality_of_quiver(q);
    let cover = quiver_of_locality(&x);

    let mut vertex_map: BTreeMap<Label, Label> = BTreeMap::new();
    for class in endpoint_classes(&x) {
        let images: BTreeSet<&Label> = class
            .members()
            .iter()
            .map(|m| {
                let arrow = q.arrow(&m.label).expect("cover arrows come from q");
                match m.tag {
                    EndpointTag::Source => &arrow.source,
                    EndpointTag::Target => &arrow.target,
                }
            })
            .collect();
        assert_eq!(images.len(), 1, "endpoint class projects to one vertex");
        vertex_map.insert(class.canonical_name(), (*images.iter().next().unwrap()).clone());
    }
    let arrow_map = q
        .arrows()
        .iter()
        .map(|a| (a.label.clone(), a.label.clone()))
        .collect();
    FullCoverResult {
        cover,
        projection: QuiverHom::new(vertex_map, arrow_map),
    }
}

/// Attempts the unique vertex bijection between two quivers over the same
/// arrow labels that makes the identity on arrows a homomorphism.
///
/// Returns `None` when the forced assignments conflict, leave a vertex of
/// `q` untouched, or fail to be a bijection onto the vertices of `q2`.
pub fn canonical_iso(q: &Quiver, q2: &Quiver) -> Result<Option<QuiverHom>> {
    let labels: Vec<&Label> = q.arrows().iter().map(|a| &a.label).collect();
    let labels2: Vec<&Label> = q2.arrows().iter().map(|a| &a.label).collect();
    if labels != labels2 {
        return Err(Error::input("quivers have different arrow label sets"));
    }

    let mut vertex_map: BTreeMap<Label, Label> = BTreeMap::new();
    let mut force = |from: &Label, to: &Label| -> bool {
        match vertex_map.get(from) {
            Some(existing) => existing == to,
            None => {
                vertex_map.insert(from.clone(), to.clone());
                true
            }
        }
    };
    for a in q.arrows() {
        let b = q2.arrow(&a.label).expect("same label sets");
        if !force(&a.source, &b.source) || !force(&a.target, &b.target) {
            return Ok(None);
        }
    }

    if vertex_map.len() != q.vertices().len() {
        return Ok(None); // a vertex of q meets no arrow, so no map is forced
    }
    let image: BTreeSet<&Label> = vertex_map.values().collect();
    if image.len() != vertex_map.len() || image.len() != q2.vertices().len() {
        return Ok(None);
    }

    let arrow_map = q
        .arrows()
        .iter()
        .map(|a| (a.label.clone(), a.label.clone()))
        .collect();
    Ok(Some(QuiverHom::new(vertex_map, arrow_map)))
}

/// Which round-trip property a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundtripProperty {
    /// The locality set of some quiver is not regular.
    PsiRegular,
    /// The quiver of some locality set is not full.
    PhiFull,
    /// The hull disagrees with the composite or the saturation oracle,
    /// fails to contain the original relation, or moves a regular set.
    HullAgreement,
    /// Presence of the canonical isomorphism onto the cover disagrees
    /// with fullness.
    CoverIsoPresence,
}

impl fmt::Display for RoundtripProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RoundtripProperty::PsiRegular => "locality set of a quiver is regular",
            RoundtripProperty::PhiFull => "quiver of a locality set is full",
            RoundtripProperty::HullAgreement => "hull agreement",
            RoundtripProperty::CoverIsoPresence => "canonical iso onto the cover iff full",
        };
        f.write_str(s)
    }
}

/// First failure found by [`verify_roundtrips`], in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripCounterexample {
    pub property: RoundtripProperty,
    pub witness: String,
}

/// Counts and outcome of an exhaustive round-trip verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub max_elems: usize,
    /// Locality sets scanned, indexed by carrier size `0..=max_elems`.
    pub locality_sets_scanned: Vec<u64>,
    pub quivers_scanned: u64,
    pub counterexample: Option<RoundtripCounterexample>,
}

impl RoundtripReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn total_locality_sets(&self) -> u64 {
        self.locality_sets_scanned.iter().sum()
    }
}

/// Exhaustively verifies, over all locality sets with carrier size up to
/// `max_elems` and all quivers with up to `max_elems` vertices and arrows:
///
/// 1. the locality set of every quiver is regular;
/// 2. the quiver of every locality set is full;
/// 3. the composite relation equals [`regular_hull`] and the independent
///    saturation oracle, contains the original relation, and fixes every
///    regular locality set;
/// 4. the canonical isomorphism onto the full cover exists exactly for
///    full quivers.
///
/// Scan order is fixed (locality sets by size then bitmask, quivers by
/// vertex count, arrow count, then assignment), so the reported
/// counterexample is the enumeration-least one.
pub fn verify_roundtrips(max_elems: usize) -> Result<RoundtripReport> {
    if max_elems > 4 {
        return Err(Error::budget(format!(
            "verify_roundtrips is limited to carriers of size <= 4, got {max_elems}"
        )));
    }
    let budget = EnumerationBudget {
        max_carrier: max_elems,
        max_vertices: max_elems,
        max_arrows: max_elems,
        ..EnumerationBudget::default()
    };

    let mut report = RoundtripReport {
        max_elems,
        locality_sets_scanned: vec![0; max_elems + 1],
        quivers_scanned: 0,
        counterexample: None,
    };
    let record = |property: RoundtripProperty,
                      witness: String,
                      counterexample: &mut Option<RoundtripCounterexample>| {
        if counterexample.is_none() {
            *counterexample = Some(RoundtripCounterexample { property, witness });
        }
    };

    for n in 0..=max_elems {
        for x in oracle::enumerate_locality_sets(n, &budget)? {
            report.locality_sets_scanned[n] += 1;

            let derived = quiver_of_locality(&x);
            if !derived.is_full() {
                record(
                    RoundtripProperty::PhiFull,
                    format!("{x:?}"),
                    &mut report.counterexample,
                );
            }

            let composite = locality_of_quiver(&derived);
            let hull = regular_hull(&x);
            let brute = oracle::brute_regular_hull(&x, &budget)?;
            let hull_ok = composite == hull
                && hull == brute
                && hull.relation().is_superset(x.relation())
                && hull.is_regular()
                && (!x.is_regular() || hull == x);
            if !hull_ok {
                record(
                    RoundtripProperty::HullAgreement,
                    format!("{x:?}"),
                    &mut report.counterexample,
                );
            }
        }
    }

    for v in 0..=max_elems {
        for a in 0..=max_elems {
            for q in oracle::enumerate_quivers(v, a, &budget)? {
                report.quivers_scanned += 1;

                if !locality_of_quiver(&q).is_regular() {
                    record(
                        RoundtripProperty::PsiRegular,
                        format!("{q:?}"),
                        &mut report.counterexample,
                    );
                }

                let cover = full_cover(&q);
                let iso = canonical_iso(&q, &cover.cover)?;
                if iso.is_some() != q.is_full() {
                    record(
                        RoundtripProperty::CoverIsoPresence,
                        format!("{q:?}"),
                        &mut report.counterexample,
                    );
                }
            }
        }
    }

    Ok(report)
}
