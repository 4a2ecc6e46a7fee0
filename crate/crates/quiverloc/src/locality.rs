//! Locality sets: finite carriers with a binary relation marking which
//! ordered pairs are mutually local, plus regularity and locality maps.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Labels are opaque strings; every structure keeps them sorted so that
/// structural equality is literal field equality.
pub type Label = String;

/// A finite set `X` together with a binary relation on it.
///
/// The relation lists the ordered pairs that are considered composable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalitySet {
    elements: Vec<Label>,
    relation: BTreeSet<(Label, Label)>,
}

impl LocalitySet {
    /// Builds a locality set from a list of labels and related pairs.
    ///
    /// Elements are deduplicated and sorted. Fails if a pair mentions a
    /// label that is not among the elements.
    pub fn new<E, EI, P, PA, PB>(elements: E, pairs: P) -> Result<Self>
    where
        E: IntoIterator<Item = EI>,
        EI: Into<Label>,
        P: IntoIterator<Item = (PA, PB)>,
        PA: Into<Label>,
        PB: Into<Label>,
    {
        let mut elems: Vec<Label> = elements.into_iter().map(Into::into).collect();
        elems.sort();
        elems.dedup();

        let mut relation = BTreeSet::new();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            for l in [&a, &b] {
                if elems.binary_search(l).is_err() {
                    return Err(Error::input(format!(
                        "relation pair mentions undeclared label `{l}`"
                    )));
                }
            }
            relation.insert((a, b));
        }
        Ok(LocalitySet {
            elements: elems,
            relation,
        })
    }

    pub fn empty() -> Self {
        LocalitySet {
            elements: Vec::new(),
            relation: BTreeSet::new(),
        }
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn relation(&self) -> &BTreeSet<(Label, Label)> {
        &self.relation
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.elements.binary_search_by(|e| e.as_str().cmp(label)).is_ok()
    }

    pub fn related(&self, a: &str, b: &str) -> bool {
        self.relation.contains(&(a.to_owned(), b.to_owned()))
    }

    /// Same carrier, different relation. Fails on undeclared labels.
    pub fn with_relation<P, PA, PB>(&self, pairs: P) -> Result<Self>
    where
        P: IntoIterator<Item = (PA, PB)>,
        PA: Into<Label>,
        PB: Into<Label>,
    {
        LocalitySet::new(self.elements.clone(), pairs)
    }

    /// A locality set is regular when `(a, d1), (c1, d1), (c1, b)` in the
    /// relation force `(a, b)` into the relation as well.
    pub fn is_regular(&self) -> bool {
        self.regularity_witness().is_none()
    }

    /// First quadruple `(a, d1, c1, b)` violating regularity, in the
    /// enumeration order of the sorted relation; `None` when regular.
    ///
    /// Direct quantifier over the relation, indexed by first and second
    /// coordinate; deliberately independent of the quiver construction.
    pub fn regularity_witness(&self) -> Option<[Label; 4]> {
        let mut by_first: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        let mut by_second: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        for (x, y) in &self.relation {
            by_first.entry(x).or_default().push(y);
            by_second.entry(y).or_default().push(x);
        }
        for (a, d1) in &self.relation {
            for c1 in by_second.get(d1).into_iter().flatten() {
                for b in by_first.get(*c1).into_iter().flatten() {
                    if !self.relation.contains(&((*a).clone(), (*b).clone())) {
                        return Some([
                            a.clone(),
                            d1.clone(),
                            (*c1).clone(),
                            (*b).clone(),
                        ]);
                    }
                }
            }
        }
        None
    }
}

/// A function between two locality sets, kept next to its (co)domain so
/// the preservation condition can be checked rather than assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityMapWitness {
    domain: LocalitySet,
    codomain: LocalitySet,
    mapping: BTreeMap<Label, Label>,
}

impl LocalityMapWitness {
    /// Fails unless `mapping` is total on the domain and lands in the
    /// codomain.
    pub fn new(
        domain: LocalitySet,
        codomain: LocalitySet,
        mapping: BTreeMap<Label, Label>,
    ) -> Result<Self> {
        for x in domain.elements() {
            match mapping.get(x) {
                None => {
                    return Err(Error::input(format!(
                        "mapping is not defined on domain element `{x}`"
                    )))
                }
                Some(y) if !codomain.contains(y) => {
                    return Err(Error::input(format!(
                        "mapping sends `{x}` to `{y}`, which is not in the codomain"
                    )))
                }
                Some(_) => {}
            }
        }
        for x in mapping.keys() {
            if !domain.contains(x) {
                return Err(Error::input(format!(
                    "mapping is defined on `{x}`, which is not in the domain"
                )));
            }
        }
        Ok(LocalityMapWitness {
            domain,
            codomain,
            mapping,
        })
    }

    pub fn identity(x: &LocalitySet) -> Self {
        let mapping = x
            .elements()
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        LocalityMapWitness {
            domain: x.clone(),
            codomain: x.clone(),
            mapping,
        }
    }

    pub fn domain(&self) -> &LocalitySet {
        &self.domain
    }

    pub fn codomain(&self) -> &LocalitySet {
        &self.codomain
    }

    pub fn mapping(&self) -> &BTreeMap<Label, Label> {
        &self.mapping
    }

    /// Image of a domain element. Panics if `x` is outside the domain;
    /// totality is guaranteed by the constructor.
    pub fn apply(&self, x: &str) -> &Label {
        &self.mapping[x]
    }

    /// True iff every related pair of the domain maps to a related pair
    /// of the codomain.
    pub fn is_locality_map(&self) -> bool {
        self.domain
            .relation()
            .iter()
            .all(|(a, b)| self.codomain.related(self.apply(a), self.apply(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(elements: &[&str], pairs: &[(&str, &str)]) -> LocalitySet {
        LocalitySet::new(elements.iter().copied(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn construction_sorts_and_dedups() {
        let x = LocalitySet::new(["beta", "alpha", "beta"], [("alpha", "beta")]).unwrap();
        assert_eq!(x.elements(), ["alpha".to_string(), "beta".to_string()]);
        assert!(x.related("alpha", "beta"));
        assert!(!x.related("beta", "alpha"));
    }

    #[test]
    fn empty_locality_set_is_legal_and_regular() {
        let x = ls(&[], &[]);
        assert!(x.is_empty());
        assert!(x.is_regular());
    }

    #[test]
    fn undeclared_label_is_an_input_error() {
        let err = LocalitySet::new(["a"], [("a", "b")]).unwrap_err();
        assert!(matches!(err, Error::Input(m) if m.contains('b')));
    }

    #[test]
    fn four_element_example_is_not_regular_until_closed() {
        let x = ls(
            &["alpha", "beta1", "alpha1", "beta"],
            &[("alpha", "beta1"), ("alpha1", "beta1"), ("alpha1", "beta")],
        );
        assert!(!x.is_regular());
        assert_eq!(
            x.regularity_witness().unwrap(),
            [
                "alpha".to_string(),
                "beta1".to_string(),
                "alpha1".to_string(),
                "beta".to_string()
            ]
        );

        let closed = ls(
            &["alpha", "beta1", "alpha1", "beta"],
            &[
                ("alpha", "beta1"),
                ("alpha1", "beta1"),
                ("alpha1", "beta"),
                ("alpha", "beta"),
            ],
        );
        assert!(closed.is_regular());
    }

    #[test]
    fn degenerated_three_element_example() {
        let x = ls(
            &["alpha", "beta1", "alpha1"],
            &[("alpha", "beta1"), ("alpha1", "beta1"), ("alpha1", "alpha1")],
        );
        assert!(!x.is_regular());

        let closed = ls(
            &["alpha", "beta1", "alpha1"],
            &[
                ("alpha", "beta1"),
                ("alpha1", "beta1"),
                ("alpha1", "alpha1"),
                ("alpha", "alpha1"),
            ],
        );
        assert!(closed.is_regular());
    }

    #[test]
    fn full_relation_is_regular() {
        let labels = ["a", "b", "c"];
        let pairs: Vec<(&str, &str)> = labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| (*a, *b)))
            .collect();
        assert!(ls(&labels, &pairs).is_regular());
    }

    #[test]
    fn identity_is_a_locality_map() {
        let x = ls(&["a", "b"], &[("a", "b")]);
        assert!(LocalityMapWitness::identity(&x).is_locality_map());
    }

    #[test]
    fn collapsing_map_to_empty_relation_is_not_a_locality_map() {
        let x = ls(&["alpha", "beta"], &[("alpha", "beta")]);
        let y = ls(&["x"], &[]);
        let mapping = [("alpha", "x"), ("beta", "x")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let w = LocalityMapWitness::new(x, y, mapping).unwrap();
        assert!(!w.is_locality_map());
    }

    #[test]
    fn witness_requires_totality_and_codomain_membership() {
        let x = ls(&["a"], &[]);
        let y = ls(&["u"], &[]);
        assert!(LocalityMapWitness::new(x.clone(), y.clone(), BTreeMap::new()).is_err());
        let bad = [("a", "nope")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert!(LocalityMapWitness::new(x, y, bad).is_err());
    }
}
