//! Brute-force enumerators and reference implementations used to
//! cross-check the main constructions: all locality sets on a small
//! carrier, all quivers on small label sets, all fine partial semigroups,
//! and a saturation-to-fixpoint regular hull.
//!
//! Enumerations are over labeled structures, with no reduction up to
//! isomorphism, and every stream is deterministic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::locality::{Label, LocalitySet};
use crate::quiver::Quiver;
use crate::semigroup::FinitePartialSemigroup;

/// Size limits for the enumerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_carrier: usize,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_table_checks: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_carrier: 3,
            max_vertices: 3,
            max_arrows: 3,
            max_table_checks: 100_000_000,
        }
    }
}

fn canonical_labels(n: usize) -> Vec<Label> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// All `2^(n*n)` locality sets on the canonical `n`-element carrier, in
/// ascending bitmask order of the relation.
pub fn enumerate_locality_sets(
    n: usize,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = LocalitySet>> {
    if n > budget.max_carrier {
        return Err(Error::budget(format!(
            "carrier size {n} exceeds the budget ({})",
            budget.max_carrier
        )));
    }
    if n * n >= 64 {
        return Err(Error::budget(format!("carrier size {n} is too large")));
    }
    let labels = canonical_labels(n);
    Ok((0..1u64 << (n * n)).map(move |mask| {
        let mut pairs = Vec::new();
        for k in 0..n * n {
            if mask >> k & 1 == 1 {
                pairs.push((labels[k / n].clone(), labels[k % n].clone()));
            }
        }
        LocalitySet::new(labels.clone(), pairs).expect("canonical labels are declared")
    }))
}

/// All quivers on `v` canonical vertices and `a` canonical arrows: every
/// one of the `v^(2a)` source/target assignments, in lexicographic order
/// of the assignment vector.
pub fn enumerate_quivers(
    v: usize,
    a: usize,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = Quiver>> {
    if v > budget.max_vertices || a > budget.max_arrows {
        return Err(Error::budget(format!(
            "quiver bounds ({v}, {a}) exceed the budget ({}, {})",
            budget.max_vertices, budget.max_arrows
        )));
    }
    let total: u64 = if a == 0 {
        1
    } else if v == 0 {
        0
    } else {
        (v as u64)
            .checked_pow(2 * a as u32)
            .ok_or_else(|| Error::budget("assignment count overflows"))?
    };
    let vertices = canonical_labels(v);
    let arrow_labels = canonical_labels(a);
    Ok((0..total).map(move |code| {
        let mut arrows = Vec::with_capacity(a);
        let mut rem = code;
        let mut digits = vec![0usize; 2 * a];
        for slot in (0..2 * a).rev() {
            digits[slot] = (rem % v.max(1) as u64) as usize;
            rem /= v.max(1) as u64;
        }
        for (i, label) in arrow_labels.iter().enumerate() {
            arrows.push((
                label.clone(),
                vertices[digits[2 * i]].clone(),
                vertices[digits[2 * i + 1]].clone(),
            ));
        }
        Quiver::new(vertices.clone(), arrows).expect("canonical labels are declared")
    }))
}

/// Lazily yields every fine partial semigroup on the canonical
/// `n`-element carrier: each relation bitmask paired with each total
/// assignment of products on the related pairs that satisfies the
/// locality associative law and both fine biconditionals.
pub fn enumerate_fine_semigroups(
    n: usize,
    budget: &EnumerationBudget,
) -> Result<FineSemigroups> {
    if n > 3 || n > budget.max_carrier {
        return Err(Error::budget(format!(
            "fine semigroup enumeration is limited to carriers of size <= 3 \
             within the budget ({}), got {n}",
            budget.max_carrier
        )));
    }
    // (n+1)^(n^2) candidate (relation, table) pairs, each checked on n^3 triples
    let candidates = (n as u64 + 1).pow((n * n) as u32);
    let estimated = candidates.saturating_mul((n * n * n) as u64);
    if estimated > budget.max_table_checks {
        return Err(Error::budget(format!(
            "estimated {estimated} table checks exceed the budget ({})",
            budget.max_table_checks
        )));
    }
    Ok(FineSemigroups::new(n))
}

/// Iterator behind [`enumerate_fine_semigroups`]. Candidates are screened
/// on integer indices; survivors are materialized through the validating
/// constructor.
pub struct FineSemigroups {
    labels: Vec<Label>,
    n: usize,
    mask: u64,
    mask_count: u64,
    pairs: Vec<(usize, usize)>,
    code: u64,
    code_count: u64,
}

impl FineSemigroups {
    fn new(n: usize) -> Self {
        let mut iter = FineSemigroups {
            labels: canonical_labels(n),
            n,
            mask: 0,
            mask_count: 1u64 << (n * n),
            pairs: Vec::new(),
            code: 0,
            code_count: 1,
        };
        iter.load_mask(0);
        iter
    }

    fn load_mask(&mut self, mask: u64) {
        self.mask = mask;
        self.pairs.clear();
        for k in 0..self.n * self.n {
            if mask >> k & 1 == 1 {
                self.pairs.push((k / self.n, k % self.n));
            }
        }
        self.code = 0;
        self.code_count = (self.n as u64).pow(self.pairs.len() as u32).max(1);
    }

    #[allow(clippy::needless_range_loop)] // index loops mirror the triple quantifiers
    fn candidate(&self, code: u64) -> Option<FinitePartialSemigroup> {
        let n = self.n;
        let k = self.pairs.len();
        let mut table = vec![vec![None; n]; n];
        let mut rem = code;
        for slot in (0..k).rev() {
            let value = (rem % n as u64) as usize;
            rem /= n as u64;
            let (a, b) = self.pairs[slot];
            table[a][b] = Some(value);
        }
        let related = |a: usize, b: usize| self.mask >> (a * n + b) & 1 == 1;

        // locality associative law
        for &(a, b) in &self.pairs {
            let ab = table[a][b].unwrap();
            for c in 0..n {
                if !(related(a, c) && related(b, c)) {
                    continue;
                }
                let bc = table[b][c].unwrap();
                if !related(ab, c) || !related(a, bc) {
                    return None;
                }
                if table[ab][c] != table[a][bc] {
                    return None;
                }
            }
        }
        // fine biconditionals
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if related(a, b) {
                        let ab = table[a][b].unwrap();
                        if related(ab, c) != related(b, c) {
                            return None;
                        }
                    }
                    if related(b, c) {
                        let bc = table[b][c].unwrap();
                        if related(a, bc) != related(a, b) {
                            return None;
                        }
                    }
                }
            }
        }

        let relation: Vec<(Label, Label)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        let entries: Vec<((Label, Label), Label)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                (
                    (self.labels[a].clone(), self.labels[b].clone()),
                    self.labels[table[a][b].unwrap()].clone(),
                )
            })
            .collect();
        Some(
            FinitePartialSemigroup::new(self.labels.clone(), relation, entries)
                .expect("screened candidate passes the validating constructor"),
        )
    }
}

impl Iterator for FineSemigroups {
    type Item = FinitePartialSemigroup;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.code >= self.code_count {
                if self.mask + 1 >= self.mask_count {
                    return None;
                }
                let next_mask = self.mask + 1;
                self.load_mask(next_mask);
                continue;
            }
            let code = self.code;
            self.code += 1;
            if let Some(s) = self.candidate(code) {
                return Some(s);
            }
        }
    }
}

/// Regular hull by saturation: repeatedly add `(a, b)` whenever
/// `(a, d1)`, `(c1, d1)`, `(c1, b)` are present, until a fixpoint.
/// Independent of the quiver construction that realizes the hull.
pub fn brute_regular_hull(x: &LocalitySet, budget: &EnumerationBudget) -> Result<LocalitySet> {
    if x.len() > budget.max_carrier {
        return Err(Error::budget(format!(
            "carrier size {} exceeds the budget ({})",
            x.len(),
            budget.max_carrier
        )));
    }
    let mut relation: BTreeSet<(Label, Label)> = x.relation().clone();
    loop {
        let mut additions: Vec<(Label, Label)> = Vec::new();
        for (a, d1) in &relation {
            for (c1, d1b) in &relation {
                if d1b != d1 {
                    continue;
                }
                for (c1b, b) in &relation {
                    if c1b != c1 {
                        continue;
                    }
                    if !relation.contains(&(a.clone(), b.clone())) {
                        additions.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        if additions.is_empty() {
            break;
        }
        relation.extend(additions);
    }
    x.with_relation(relation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    #[test]
    fn locality_set_counts() {
        assert_eq!(enumerate_locality_sets(1, &budget()).unwrap().count(), 2);
        assert_eq!(enumerate_locality_sets(2, &budget()).unwrap().count(), 16);
        assert_eq!(enumerate_locality_sets(3, &budget()).unwrap().count(), 512);
    }

    #[test]
    fn regular_count_on_three_elements() {
        // frozen from the first exhaustive run of this enumerator
        let regular = enumerate_locality_sets(3, &budget())
            .unwrap()
            .filter(LocalitySet::is_regular)
            .count();
        assert_eq!(regular, 128);
    }

    #[test]
    fn locality_set_budget() {
        assert!(matches!(
            enumerate_locality_sets(4, &budget()),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn quiver_counts() {
        assert_eq!(enumerate_quivers(1, 1, &budget()).unwrap().count(), 1);
        assert_eq!(enumerate_quivers(2, 1, &budget()).unwrap().count(), 4);
        assert_eq!(enumerate_quivers(3, 2, &budget()).unwrap().count(), 81);
        assert_eq!(enumerate_quivers(0, 0, &budget()).unwrap().count(), 1);
        assert_eq!(enumerate_quivers(0, 2, &budget()).unwrap().count(), 0);
    }

    #[test]
    fn single_vertex_single_arrow_is_a_loop() {
        let q = enumerate_quivers(1, 1, &budget()).unwrap().next().unwrap();
        let arrow = q.arrow("1").unwrap();
        assert_eq!(arrow.source, arrow.target);
    }

    #[test]
    fn fine_semigroups_on_one_element() {
        let all: Vec<_> = enumerate_fine_semigroups(1, &budget()).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert!(all[0].relation().is_empty());
        let reflexive = &all[1];
        assert_eq!(reflexive.product("1", "1"), Some(&"1".to_string()));
    }

    #[test]
    fn fine_semigroup_counts_on_small_carriers() {
        // frozen from the first exhaustive runs of this enumerator
        assert_eq!(enumerate_fine_semigroups(0, &budget()).unwrap().count(), 1);
        assert_eq!(enumerate_fine_semigroups(2, &budget()).unwrap().count(), 16);
    }

    #[test]
    fn fine_semigroup_budget() {
        assert!(matches!(
            enumerate_fine_semigroups(4, &budget()),
            Err(Error::Budget(_))
        ));
        let tight = EnumerationBudget {
            max_table_checks: 10,
            ..EnumerationBudget::default()
        };
        assert!(matches!(
            enumerate_fine_semigroups(3, &tight),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<_> = enumerate_fine_semigroups(2, &budget()).unwrap().collect();
        let b: Vec<_> = enumerate_fine_semigroups(2, &budget()).unwrap().collect();
        assert_eq!(a, b);
        let qa: Vec<_> = enumerate_quivers(2, 2, &budget()).unwrap().collect();
        let qb: Vec<_> = enumerate_quivers(2, 2, &budget()).unwrap().collect();
        assert_eq!(qa, qb);
    }

    #[test]
    fn brute_hull_on_the_four_element_example() {
        let x = LocalitySet::new(
            ["alpha", "beta1", "alpha1", "beta"],
            [("alpha", "beta1"), ("alpha1", "beta1"), ("alpha1", "beta")],
        )
        .unwrap();
        let hull = brute_regular_hull(&x, &EnumerationBudget {
            max_carrier: 4,
            ..EnumerationBudget::default()
        })
        .unwrap();
        let mut expected = x.relation().clone();
        expected.insert(("alpha".to_string(), "beta".to_string()));
        assert_eq!(*hull.relation(), expected);
    }

    #[test]
    fn brute_hull_fixes_regular_sets() {
        let x = LocalitySet::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(brute_regular_hull(&x, &budget()).unwrap(), x);
    }

    #[test]
    fn brute_hull_of_the_six_element_chain() {
        let x = LocalitySet::new(
            ["a", "a1", "a2", "b", "b1", "b2"],
            [
                ("a", "b1"),
                ("a1", "b1"),
                ("a1", "b2"),
                ("a2", "b2"),
                ("a2", "b"),
            ],
        )
        .unwrap();
        let wide = EnumerationBudget {
            max_carrier: 6,
            ..EnumerationBudget::default()
        };
        let hull = brute_regular_hull(&x, &wide).unwrap();
        assert!(hull.related("a", "b"));
    }

    #[test]
    fn brute_hull_budget() {
        let x = LocalitySet::new(["a", "b", "c", "d"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(matches!(
            brute_regular_hull(&x, &budget()),
            Err(Error::Budget(_))
        ));
    }
}
