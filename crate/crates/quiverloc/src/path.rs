//! Nonempty paths of a quiver and their partial composition: the path
//! semigroup, with concatenation defined exactly when target meets source.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::locality::Label;
use crate::quiver::{Quiver, QuiverId};

/// A nonempty composable sequence of arrows in a fixed quiver.
///
/// Ordering is length-major, then lexicographic on the arrow sequence,
/// matching the canonical order used for enumeration and algebra terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    quiver: QuiverId,
    arrows: Vec<Label>,
    source: Label,
    target: Label,
}

impl Path {
    /// Validates a nonempty arrow sequence in `q` and computes its source
    /// and target. Reports the index of the first non-composable pair.
    pub fn new<I, L>(q: &Quiver, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let labels: Vec<Label> = arrows.into_iter().map(|l| l.as_ref().to_owned()).collect();
        if labels.is_empty() {
            return Err(Error::input("a path needs at least one arrow"));
        }
        let mut resolved = Vec::with_capacity(labels.len());
        for l in &labels {
            match q.arrow(l) {
                Some(a) => resolved.push(a),
                None => {
                    return Err(Error::input(format!("unknown arrow label `{l}`")));
                }
            }
        }
        for (i, w) in resolved.windows(2).enumerate() {
            if w[0].target != w[1].source {
                return Err(Error::Composition {
                    index: i,
                    message: format!(
                        "target of `{}` is `{}` but source of `{}` is `{}`",
                        w[0].label, w[0].target, w[1].label, w[1].source
                    ),
                });
            }
        }
        Ok(Path {
            quiver: q.id(),
            arrows: labels,
            source: resolved[0].source.clone(),
            target: resolved[resolved.len() - 1].target.clone(),
        })
    }

    pub fn arrows(&self) -> &[Label] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    /// Always false: paths have at least one arrow by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> &Label {
        &self.source
    }

    pub fn target(&self) -> &Label {
        &self.target
    }

    pub fn quiver_id(&self) -> QuiverId {
        self.quiver
    }

    /// True iff `self · other` is defined: same quiver and the target of
    /// `self` equals the source of `other`.
    pub fn composable(&self, other: &Path) -> Result<bool> {
        if self.quiver != other.quiver {
            return Err(Error::input("paths belong to different quivers"));
        }
        Ok(self.target == other.source)
    }

    /// Concatenation; defined exactly when [`Path::composable`] holds.
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if !self.composable(other)? {
            return Err(Error::Composition {
                index: self.arrows.len() - 1,
                message: format!(
                    "target `{}` does not meet source `{}`",
                    self.target, other.source
                ),
            });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path {
            quiver: self.quiver,
            arrows,
            source: self.source.clone(),
            target: other.target.clone(),
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

/// All paths of length `1..=max_len`, length-major and lexicographic on
/// arrow sequences within each length. Complete within the bound.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = Vec::new();
    let mut level: Vec<Path> = q
        .arrows()
        .iter()
        .map(|a| Path {
            quiver: q.id(),
            arrows: vec![a.label.clone()],
            source: a.source.clone(),
            target: a.target.clone(),
        })
        .collect();
    let mut len = 1;
    while len <= max_len && !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for p in &level {
            for a in q.arrows() {
                if *p.target() == a.source {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a.label.clone());
                    next.push(Path {
                        quiver: q.id(),
                        arrows,
                        source: p.source.clone(),
                        target: a.target.clone(),
                    });
                }
            }
        }
        level = next;
        len += 1;
    }
    all
}

/// Checks both fine biconditionals on all path triples `(p, q, r)` whose
/// lengths sum to at most `max_len`:
/// composability of `pq` with `r` must match that of `q` with `r`, and
/// composability of `p` with `qr` must match that of `p` with `q`.
pub fn check_path_semigroup_fine(q: &Quiver, max_len: usize) -> bool {
    let paths = enumerate_paths(q, max_len);
    for p1 in &paths {
        for p2 in &paths {
            if p1.len() + p2.len() > max_len {
                continue;
            }
            for p3 in &paths {
                if p1.len() + p2.len() + p3.len() > max_len {
                    continue;
                }
                if p1.target() == p2.source() {
                    let product = p1.compose(p2).expect("composable");
                    let left = product.target() == p3.source();
                    let right = p2.target() == p3.source();
                    if left != right {
                        return false;
                    }
                }
                if p2.target() == p3.source() {
                    let product = p2.compose(p3).expect("composable");
                    let left = p1.target() == product.source();
                    let right = p1.target() == p2.source();
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_quiver() -> Quiver {
        Quiver::new(
            ["x", "y", "z"],
            [("alpha", "x", "y"), ("beta", "y", "z"), ("gamma", "y", "y")],
        )
        .unwrap()
    }

    #[test]
    fn path_through_the_loop() {
        let q = example_quiver();
        let p = Path::new(&q, ["alpha", "gamma", "beta"]).unwrap();
        assert_eq!(p.source(), "x");
        assert_eq!(p.target(), "z");
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn single_arrow_path() {
        let q = example_quiver();
        let p = Path::new(&q, ["alpha"]).unwrap();
        assert_eq!(p.source(), "x");
        assert_eq!(p.target(), "y");
    }

    #[test]
    fn non_composable_pair_reports_its_index() {
        let q = example_quiver();
        let err = Path::new(&q, ["beta", "alpha"]).unwrap_err();
        assert!(matches!(err, Error::Composition { index: 0, .. }));
    }

    #[test]
    fn empty_sequence_is_an_input_error() {
        let q = example_quiver();
        assert!(matches!(
            Path::new(&q, Vec::<&str>::new()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn composability_in_the_example() {
        let q = example_quiver();
        let alpha = Path::new(&q, ["alpha"]).unwrap();
        let beta = Path::new(&q, ["beta"]).unwrap();
        let gamma = Path::new(&q, ["gamma"]).unwrap();
        assert!(alpha.composable(&beta).unwrap());
        assert!(!beta.composable(&alpha).unwrap());
        assert!(gamma.composable(&gamma).unwrap());
    }

    #[test]
    fn composition_concatenates_and_mismatch_errors() {
        let q = example_quiver();
        let alpha = Path::new(&q, ["alpha"]).unwrap();
        let beta = Path::new(&q, ["beta"]).unwrap();
        let gamma = Path::new(&q, ["gamma"]).unwrap();

        let ag = alpha.compose(&gamma).unwrap();
        assert_eq!(ag.arrows(), ["alpha", "gamma"]);

        let left = ag.compose(&beta).unwrap();
        let right = alpha.compose(&gamma.compose(&beta).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.arrows(), ["alpha", "gamma", "beta"]);

        assert!(beta.compose(&alpha).is_err());
    }

    #[test]
    fn different_quivers_do_not_compose() {
        let q1 = example_quiver();
        let q2 = Quiver::new(["x", "y"], [("alpha", "x", "y")]).unwrap();
        let p1 = Path::new(&q1, ["alpha"]).unwrap();
        let p2 = Path::new(&q2, ["alpha"]).unwrap();
        assert!(matches!(p1.composable(&p2), Err(Error::Input(_))));
    }

    #[test]
    fn enumeration_on_the_example_quiver() {
        let q = example_quiver();
        let paths = enumerate_paths(&q, 2);
        let seqs: Vec<Vec<&str>> = paths
            .iter()
            .map(|p| p.arrows().iter().map(|s| s.as_str()).collect())
            .collect();
        assert_eq!(
            seqs,
            vec![
                vec!["alpha"],
                vec!["beta"],
                vec!["gamma"],
                vec!["alpha", "beta"],
                vec!["alpha", "gamma"],
                vec!["gamma", "beta"],
                vec!["gamma", "gamma"],
            ]
        );
    }

    #[test]
    fn enumeration_without_arrows_is_empty() {
        let q = Quiver::new(["v"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert!(enumerate_paths(&q, 5).is_empty());
    }

    #[test]
    fn enumeration_of_a_single_loop() {
        let q = Quiver::new(["y"], [("gamma", "y", "y")]).unwrap();
        let paths = enumerate_paths(&q, 3);
        let lens: Vec<usize> = paths.iter().map(Path::len).collect();
        assert_eq!(lens, [1, 2, 3]);
    }

    #[test]
    fn example_quiver_path_semigroup_is_fine() {
        assert!(check_path_semigroup_fine(&example_quiver(), 4));
    }

    #[test]
    fn single_loop_path_semigroup_is_fine() {
        let q = Quiver::new(["y"], [("gamma", "y", "y")]).unwrap();
        assert!(check_path_semigroup_fine(&q, 6));
    }
}
