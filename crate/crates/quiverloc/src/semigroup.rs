//! Finite partial semigroups with a prescribed locality relation, the
//! fine axioms, and the universal extension of a generator map to paths.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correspondence::quiver_of_locality;
use crate::error::{Error, Result};
use crate::locality::{Label, LocalityMapWitness, LocalitySet};
use crate::path::{enumerate_paths, Path};

/// A finite carrier with a locality relation and a multiplication table
/// defined exactly on the related pairs.
///
/// Construction verifies the locality associative law: whenever `(a, b)`,
/// `(a, c)` and `(b, c)` are all related, `(ab, c)` and `(a, bc)` must be
/// related too and the two products must agree. Fineness is a separate,
/// checked property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePartialSemigroup {
    carrier: Vec<Label>,
    relation: BTreeSet<(Label, Label)>,
    table: BTreeMap<(Label, Label), Label>,
}

impl FinitePartialSemigroup {
    pub fn new<C, CI, P, PA, PB, T, TA, TB, TV>(carrier: C, relation: P, table: T) -> Result<Self>
    where
        C: IntoIterator<Item = CI>,
        CI: Into<Label>,
        P: IntoIterator<Item = (PA, PB)>,
        PA: Into<Label>,
        PB: Into<Label>,
        T: IntoIterator<Item = ((TA, TB), TV)>,
        TA: Into<Label>,
        TB: Into<Label>,
        TV: Into<Label>,
    {
        let mut elems: Vec<Label> = carrier.into_iter().map(Into::into).collect();
        elems.sort();
        elems.dedup();
        let member = |l: &Label| elems.binary_search(l).is_ok();

        let mut rel: BTreeSet<(Label, Label)> = BTreeSet::new();
        for (a, b) in relation {
            let (a, b) = (a.into(), b.into());
            for l in [&a, &b] {
                if !member(l) {
                    return Err(Error::input(format!(
                        "relation pair mentions undeclared label `{l}`"
                    )));
                }
            }
            rel.insert((a, b));
        }

        let mut tbl: BTreeMap<(Label, Label), Label> = BTreeMap::new();
        for ((a, b), v) in table {
            let (a, b, v) = (a.into(), b.into(), v.into());
            if !member(&v) {
                return Err(Error::input(format!(
                    "product value `{v}` is not in the carrier"
                )));
            }
            if !rel.contains(&(a.clone(), b.clone())) {
                return Err(Error::input(format!(
                    "table defines ({a}, {b}) which is not in the relation"
                )));
            }
            tbl.insert((a, b), v);
        }
        for (a, b) in &rel {
            if !tbl.contains_key(&(a.clone(), b.clone())) {
                return Err(Error::input(format!(
                    "relation contains ({a}, {b}) but the table does not define it"
                )));
            }
        }

        let s = FinitePartialSemigroup {
            carrier: elems,
            relation: rel,
            table: tbl,
        };
        s.check_locality_associativity()?;
        Ok(s)
    }

    fn check_locality_associativity(&self) -> Result<()> {
        for a in &self.carrier {
            for b in &self.carrier {
                if !self.related(a, b) {
                    continue;
                }
                let ab = self.product(a, b).unwrap().clone();
                for c in &self.carrier {
                    if !(self.related(a, c) && self.related(b, c)) {
                        continue;
                    }
                    let bc = self.product(b, c).unwrap().clone();
                    if !self.related(&ab, c) || !self.related(a, &bc) {
                        return Err(Error::input(format!(
                            "locality associative law fails on ({a}, {b}, {c}): \
                             a product pair is missing from the relation"
                        )));
                    }
                    if self.product(&ab, c) != self.product(a, &bc) {
                        return Err(Error::input(format!(
                            "locality associative law fails on ({a}, {b}, {c}): \
                             (ab)c differs from a(bc)"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &[Label] {
        &self.carrier
    }

    pub fn relation(&self) -> &BTreeSet<(Label, Label)> {
        &self.relation
    }

    pub fn table(&self) -> &BTreeMap<(Label, Label), Label> {
        &self.table
    }

    pub fn related(&self, a: &str, b: &str) -> bool {
        self.relation.contains(&(a.to_owned(), b.to_owned()))
    }

    pub fn product(&self, a: &str, b: &str) -> Option<&Label> {
        self.table.get(&(a.to_owned(), b.to_owned()))
    }

    /// The underlying locality set `(carrier, relation)`.
    pub fn to_locality_set(&self) -> LocalitySet {
        LocalitySet::new(self.carrier.clone(), self.relation.iter().cloned())
            .expect("relation labels are in the carrier")
    }

    /// Both fine biconditionals over all carrier triples: when `(a, b)`
    /// is related, `(ab, c)` is related iff `(b, c)` is; when `(b, c)` is
    /// related, `(a, bc)` is related iff `(a, b)` is.
    pub fn check_fine(&self) -> bool {
        for a in &self.carrier {
            for b in &self.carrier {
                for c in &self.carrier {
                    if let Some(ab) = self.product(a, b) {
                        if self.related(ab, c) != self.related(b, c) {
                            return false;
                        }
                    }
                    if let Some(bc) = self.product(b, c) {
                        if self.related(a, bc) != self.related(a, b) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Chain conclusions over this semigroup's own elements.
    ///
    /// For every chain `x1, ..., xk` (`k <= max_chain`, consecutive pairs
    /// related): all prefix products are defined and `(x1...x_{k-1}, xk)`
    /// and `(x1, x2...xk)` are related. For every two chains whose
    /// junction is related, the two chain products are related.
    pub fn check_chain_closure(&self, max_chain: usize) -> bool {
        let mut level: Vec<Vec<&Label>> = self.carrier.iter().map(|x| vec![x]).collect();
        let mut chains: Vec<Vec<&Label>> = level.clone();
        for _ in 2..=max_chain {
            let mut next = Vec::new();
            for chain in &level {
                let last = chain[chain.len() - 1];
                for x in &self.carrier {
                    if self.related(last, x) {
                        let mut extended = chain.clone();
                        extended.push(x);
                        next.push(extended);
                    }
                }
            }
            chains.extend(next.iter().cloned());
            level = next;
        }

        let left_product = |items: &[&Label]| -> Option<Label> {
            let mut acc = items[0].clone();
            for x in &items[1..] {
                acc = self.product(&acc, x)?.clone();
            }
            Some(acc)
        };

        let mut products = Vec::with_capacity(chains.len());
        for chain in &chains {
            let k = chain.len();
            if k >= 2 {
                let prefix = match left_product(&chain[..k - 1]) {
                    Some(p) => p,
                    None => return false,
                };
                if !self.related(&prefix, chain[k - 1]) {
                    return false;
                }
                let suffix = match left_product(&chain[1..]) {
                    Some(p) => p,
                    None => return false,
                };
                if !self.related(chain[0], &suffix) {
                    return false;
                }
            }
            match left_product(chain) {
                Some(p) => products.push(p),
                None => return false,
            }
        }

        for (c1, p1) in chains.iter().zip(&products) {
            for (c2, p2) in chains.iter().zip(&products) {
                let junction_related = self.related(c1[c1.len() - 1], c2[0]);
                if junction_related && !self.related(p1, p2) {
                    return false;
                }
            }
        }
        true
    }
}

fn check_extension_preconditions(
    f: &LocalityMapWitness,
    s: &FinitePartialSemigroup,
) -> Result<()> {
    if !f.domain().is_regular() {
        return Err(Error::input("the generating locality set is not regular"));
    }
    if *f.codomain() != s.to_locality_set() {
        return Err(Error::input(
            "witness codomain differs from the semigroup's locality set",
        ));
    }
    if !s.check_fine() {
        return Err(Error::input("the codomain semigroup is not fine"));
    }
    if !f.is_locality_map() {
        return Err(Error::input("the generator map is not a locality map"));
    }
    Ok(())
}

/// Extends a generator map to a path of the quiver of its domain by
/// multiplying the images of the arrows left to right.
///
/// Preconditions (regular domain, fine codomain, locality map, path over
/// the derived quiver) are enforced as input errors. A missing
/// intermediate pair is reported as a fine violation; when the
/// preconditions hold it can never occur.
pub fn free_extension(
    f: &LocalityMapWitness,
    s: &FinitePartialSemigroup,
    p: &Path,
) -> Result<Label> {
    check_extension_preconditions(f, s)?;
    if p.quiver_id() != quiver_of_locality(f.domain()).id() {
        return Err(Error::input(
            "path does not live in the quiver of the generating locality set",
        ));
    }
    let values: Vec<&Label> = p.arrows().iter().map(|a| f.apply(a)).collect();

    let result = fold_left(s, &values)?;

    // cross-check one alternative association; all are equal by the
    // locality associative law
    let mut seed_hasher = std::collections::hash_map::DefaultHasher::new();
    std::hash::Hash::hash(&p.arrows(), &mut seed_hasher);
    let mut rng = ChaCha8Rng::seed_from_u64(std::hash::Hasher::finish(&seed_hasher));
    let reassociated = fold_random(s, &values, &mut rng)?;
    assert_eq!(
        result, reassociated,
        "re-association changed the product value"
    );
    Ok(result)
}

fn fold_left(s: &FinitePartialSemigroup, values: &[&Label]) -> Result<Label> {
    let mut acc = values[0].clone();
    for v in &values[1..] {
        match s.product(&acc, v) {
            Some(next) => acc = next.clone(),
            None => {
                return Err(Error::FineViolation {
                    left: acc,
                    right: (*v).clone(),
                })
            }
        }
    }
    Ok(acc)
}

fn fold_random(
    s: &FinitePartialSemigroup,
    values: &[&Label],
    rng: &mut ChaCha8Rng,
) -> Result<Label> {
    if values.len() == 1 {
        return Ok(values[0].clone());
    }
    let split = rng.random_range(1..values.len());
    let left = fold_random(s, &values[..split], rng)?;
    let right = fold_random(s, &values[split..], rng)?;
    match s.product(&left, &right) {
        Some(v) => Ok(v.clone()),
        None => Err(Error::FineViolation { left, right }),
    }
}

/// Outcome of [`verify_freeness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub paths_checked: u64,
    pub pairs_checked: u64,
    pub first_violation: Option<String>,
}

impl FreenessReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Verifies on all paths of the quiver of `x` up to `max_len` that the
/// extension of `f` is a locality semigroup homomorphism and is the only
/// multiplicative map agreeing with `f` on single arrows.
///
/// Multiplicativity is checked on every composable pair within the
/// bound; uniqueness is replayed as the inductive step `ext(p) =
/// ext(prefix) * f(last)` for every path.
pub fn verify_freeness(
    x: &LocalitySet,
    s: &FinitePartialSemigroup,
    f: &LocalityMapWitness,
    max_len: usize,
) -> Result<FreenessReport> {
    if f.domain() != x {
        return Err(Error::input(
            "witness domain differs from the generating locality set",
        ));
    }
    check_extension_preconditions(f, s)?;

    let quiver = quiver_of_locality(x);
    let paths = enumerate_paths(&quiver, max_len);
    let mut report = FreenessReport {
        paths_checked: 0,
        pairs_checked: 0,
        first_violation: None,
    };
    let record = |violation: String, report: &mut FreenessReport| {
        if report.first_violation.is_none() {
            report.first_violation = Some(violation);
        }
    };

    let mut images: BTreeMap<&Path, Label> = BTreeMap::new();
    for p in &paths {
        images.insert(p, free_extension(f, s, p)?);
    }

    for p in &paths {
        report.paths_checked += 1;
        let image = &images[p];
        let arrows = p.arrows();
        if arrows.len() == 1 {
            if image != f.apply(&arrows[0]) {
                record(
                    format!("extension disagrees with the generator map on {arrows:?}"),
                    &mut report,
                );
            }
        } else {
            let prefix = Path::new(&quiver, &arrows[..arrows.len() - 1])?;
            let last = f.apply(&arrows[arrows.len() - 1]);
            match s.product(&images[&prefix], last) {
                Some(v) if v == image => {}
                _ => record(
                    format!("inductive step fails on {arrows:?}"),
                    &mut report,
                ),
            }
        }
    }

    for p in &paths {
        for q in &paths {
            if p.len() + q.len() > max_len || !p.composable(q)? {
                continue;
            }
            report.pairs_checked += 1;
            let (fp, fq) = (&images[p], &images[q]);
            if !s.related(fp, fq) {
                record(
                    format!(
                        "images of composable paths {:?} and {:?} are not related",
                        p.arrows(),
                        q.arrows()
                    ),
                    &mut report,
                );
                continue;
            }
            let product = p.compose(q)?;
            let expected = &images[&product];
            if s.product(fp, fq) != Some(expected) {
                record(
                    format!(
                        "extension is not multiplicative on {:?} and {:?}",
                        p.arrows(),
                        q.arrows()
                    ),
                    &mut report,
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn truncated_pair_model() -> FinitePartialSemigroup {
        FinitePartialSemigroup::new(
            ["alpha", "beta", "alphabeta"],
            [("alpha", "beta")],
            [(("alpha", "beta"), "alphabeta")],
        )
        .unwrap()
    }

    pub(crate) fn mod_two_addition() -> FinitePartialSemigroup {
        let carrier = ["0", "1"];
        let pairs: Vec<(&str, &str)> = carrier
            .iter()
            .flat_map(|a| carrier.iter().map(move |b| (*a, *b)))
            .collect();
        let table = pairs.iter().map(|(a, b)| {
            let v = if a == b { "0" } else { "1" };
            ((*a, *b), v)
        });
        FinitePartialSemigroup::new(carrier, pairs.iter().copied(), table).unwrap()
    }

    #[test]
    fn empty_relation_is_a_fine_semigroup() {
        let s = FinitePartialSemigroup::new(
            ["a", "b"],
            Vec::<(&str, &str)>::new(),
            Vec::<((&str, &str), &str)>::new(),
        )
        .unwrap();
        assert!(s.check_fine());
    }

    #[test]
    fn truncated_pair_model_is_fine() {
        assert!(truncated_pair_model().check_fine());
    }

    #[test]
    fn missing_product_pair_is_not_fine() {
        // (a, b) and (b, c) related but (ab, c) unrelated: breaks the
        // first biconditional while the associative law stays vacuous.
        let s = FinitePartialSemigroup::new(
            ["a", "ab", "b", "c"],
            [("a", "b"), ("b", "c")],
            [(("a", "b"), "ab"), (("b", "c"), "a")],
        )
        .unwrap();
        assert!(!s.check_fine());
    }

    #[test]
    fn table_must_match_relation_exactly() {
        let missing = FinitePartialSemigroup::new(
            ["a"],
            [("a", "a")],
            Vec::<((&str, &str), &str)>::new(),
        );
        assert!(missing.is_err());

        let extra = FinitePartialSemigroup::new(
            ["a"],
            Vec::<(&str, &str)>::new(),
            [(("a", "a"), "a")],
        );
        assert!(extra.is_err());
    }

    #[test]
    fn associativity_violations_are_rejected() {
        // full relation on {a, b} with a non-associative table
        let carrier = ["a", "b"];
        let pairs: Vec<(&str, &str)> = carrier
            .iter()
            .flat_map(|x| carrier.iter().map(move |y| (*x, *y)))
            .collect();
        let table = [
            (("a", "a"), "b"),
            (("a", "b"), "a"),
            (("b", "a"), "a"),
            (("b", "b"), "a"),
        ];
        let err = FinitePartialSemigroup::new(carrier, pairs, table).unwrap_err();
        assert!(matches!(err, Error::Input(m) if m.contains("associative")));
    }

    #[test]
    fn mod_two_addition_is_a_fine_locality_semigroup() {
        let s = mod_two_addition();
        assert!(s.check_fine());
        assert!(s.check_chain_closure(4));
    }

    #[test]
    fn free_extension_on_the_defining_product() {
        let x = LocalitySet::new(["alpha", "beta"], [("alpha", "beta")]).unwrap();
        let s = truncated_pair_model();
        let mapping = [("alpha", "alpha"), ("beta", "beta")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let f = LocalityMapWitness::new(x.clone(), s.to_locality_set(), mapping).unwrap();

        let quiver = quiver_of_locality(&x);
        let p = Path::new(&quiver, ["alpha", "beta"]).unwrap();
        assert_eq!(free_extension(&f, &s, &p).unwrap(), "alphabeta");

        let single = Path::new(&quiver, ["alpha"]).unwrap();
        assert_eq!(free_extension(&f, &s, &single).unwrap(), "alpha");
    }

    #[test]
    fn free_extension_of_a_loop_into_mod_two() {
        let x = LocalitySet::new(["alpha"], [("alpha", "alpha")]).unwrap();
        let s = mod_two_addition();
        let mapping = [("alpha", "1")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let f = LocalityMapWitness::new(x.clone(), s.to_locality_set(), mapping).unwrap();

        let quiver = quiver_of_locality(&x);
        let p = Path::new(&quiver, ["alpha", "alpha", "alpha"]).unwrap();
        assert_eq!(free_extension(&f, &s, &p).unwrap(), "1");
    }

    #[test]
    fn non_locality_map_is_an_input_error() {
        let x = LocalitySet::new(["alpha"], [("alpha", "alpha")]).unwrap();
        let s = truncated_pair_model();
        let mapping = [("alpha", "alpha")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        // (alpha, alpha) must map into the relation, but (alpha, alpha)
        // is not related in the truncated model
        let f = LocalityMapWitness::new(x.clone(), s.to_locality_set(), mapping).unwrap();
        assert!(!f.is_locality_map());
        let err = verify_freeness(&x, &s, &f, 3).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn freeness_of_the_mod_two_example() {
        let x = LocalitySet::new(["alpha"], [("alpha", "alpha")]).unwrap();
        let s = mod_two_addition();
        let mapping = [("alpha", "1")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let f = LocalityMapWitness::new(x.clone(), s.to_locality_set(), mapping).unwrap();
        let report = verify_freeness(&x, &s, &f, 4).unwrap();
        assert!(report.holds());
        assert_eq!(report.paths_checked, 4);
    }

    #[test]
    fn freeness_of_the_truncated_model() {
        let x = LocalitySet::new(["alpha", "beta"], [("alpha", "beta")]).unwrap();
        let s = truncated_pair_model();
        let mapping = [("alpha", "alpha"), ("beta", "beta")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let f = LocalityMapWitness::new(x.clone(), s.to_locality_set(), mapping).unwrap();
        let report = verify_freeness(&x, &s, &f, 2).unwrap();
        assert!(report.holds());
    }
}
