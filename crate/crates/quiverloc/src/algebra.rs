//! The reduced path algebra: exact-rational linear combinations of
//! nonempty paths, multiplied by concatenation where target meets source
//! and by zero otherwise. Non-unital by construction.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::path::Path;
use crate::quiver::{Quiver, QuiverId};

pub type Coefficient = BigRational;

/// A finite linear combination of paths of one quiver. Zero coefficients
/// are never stored; term keys are ordered length-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    quiver: QuiverId,
    terms: BTreeMap<Path, Coefficient>,
}

impl AlgebraElement {
    pub fn zero(q: &Quiver) -> Self {
        AlgebraElement {
            quiver: q.id(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: Path, coefficient: Coefficient) -> Self {
        let quiver = p.quiver_id();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(p, coefficient);
        }
        AlgebraElement { quiver, terms }
    }

    /// Sums the given terms into one element. Fails if a path belongs to
    /// a different quiver.
    pub fn from_terms<I>(q: &Quiver, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Path, Coefficient)>,
    {
        let mut result = AlgebraElement::zero(q);
        for (p, c) in entries {
            if p.quiver_id() != q.id() {
                return Err(Error::input("term path belongs to a different quiver"));
            }
            result.accumulate(p, c);
        }
        Ok(result)
    }

    fn accumulate(&mut self, p: Path, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Path, Coefficient> {
        &self.terms
    }

    pub fn quiver_id(&self) -> QuiverId {
        self.quiver
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn require_same_quiver(&self, other: &Self) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::input("elements belong to different quivers"));
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_quiver(other)?;
        let mut result = self.clone();
        for (p, c) in &other.terms {
            result.accumulate(p.clone(), c.clone());
        }
        Ok(result)
    }

    /// Bilinear extension of the partial path product; non-composable
    /// monomial products contribute zero.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same_quiver(other)?;
        let mut result = AlgebraElement {
            quiver: self.quiver,
            terms: BTreeMap::new(),
        };
        for (p, cp) in &self.terms {
            for (q, cq) in &other.terms {
                if p.composable(q).expect("same quiver") {
                    let product = p.compose(q).expect("composable");
                    result.accumulate(product, cp * cq);
                }
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut result = AlgebraElement {
            quiver: self.quiver,
            terms: BTreeMap::new(),
        };
        for (p, cp) in &self.terms {
            result.accumulate(p.clone(), cp * c);
        }
        result
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            quiver: self.quiver,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}
