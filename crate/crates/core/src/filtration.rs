//! Finite posets, lower sets, and the per-element grading identity used to
//! pass from a filtration by lower sets to one indexed by integers.

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::weyl::{ElemId, WeylGroup};
use std::sync::atomic::{AtomicU64, Ordering};

pub const POSET_CAP: usize = 10_000;

static NEXT_POSET_ID: AtomicU64 = AtomicU64::new(1);

/// A finite poset on `0..len`, with optional element payloads.
#[derive(Debug, Clone)]
pub struct FinitePoset<T> {
    id: u64,
    elements: Vec<T>,
    leq: Vec<Vec<bool>>,
}

/// A downward-closed subset of a [`FinitePoset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerSet {
    poset: u64,
    members: Vec<bool>,
}

impl<T> FinitePoset<T> {
    pub fn new<F: Fn(&T, &T) -> bool>(elements: Vec<T>, leq: F) -> Result<FinitePoset<T>> {
        let n = elements.len();
        if n > POSET_CAP {
            return Err(Error::PosetTooLarge(n));
        }
        let rel: Vec<Vec<bool>> =
            elements.iter().map(|a| elements.iter().map(|b| leq(a, b)).collect()).collect();
        for a in 0..n {
            if !rel[a][a] {
                return Err(Error::InvalidPoset(format!("relation not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && rel[a][b] && rel[b][a] {
                    return Err(Error::InvalidPoset(format!("relation not antisymmetric at {a}, {b}")));
                }
                if rel[a][b] {
                    if let Some(c) = (0..n).find(|&c| rel[b][c] && !rel[a][c]) {
                        return Err(Error::InvalidPoset(format!("relation not transitive at {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(FinitePoset { id: NEXT_POSET_ID.fetch_add(1, Ordering::Relaxed), elements, leq: rel })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, x: usize) -> &T {
        &self.elements[x]
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::NotInPoset(x))
        }
    }

    pub fn empty_set(&self) -> LowerSet {
        LowerSet { poset: self.id, members: vec![false; self.len()] }
    }

    pub fn full_set(&self) -> LowerSet {
        LowerSet { poset: self.id, members: vec![true; self.len()] }
    }

    pub fn lower_set<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<LowerSet> {
        let mut set = self.empty_set();
        for x in members {
            self.check(x)?;
            set.members[x] = true;
        }
        for y in 0..self.len() {
            if set.members[y] && (0..self.len()).any(|x| self.leq[x][y] && !set.members[x]) {
                return Err(Error::NotLowerSet);
            }
        }
        Ok(set)
    }

    pub fn principal_lower_set(&self, x: usize) -> Result<LowerSet> {
        self.check(x)?;
        let members = (0..self.len()).map(|y| self.leq[y][x]).collect();
        Ok(LowerSet { poset: self.id, members })
    }

    fn same(&self, s: &LowerSet) -> Result<()> {
        if s.poset == self.id {
            Ok(())
        } else {
            Err(Error::MismatchedPosets)
        }
    }

    /// Maximal elements of a lower set.
    pub fn maximal_elements(&self, s: &LowerSet) -> Result<Vec<usize>> {
        self.same(s)?;
        Ok(s.iter()
            .filter(|&x| !s.iter().any(|y| y != x && self.leq[x][y]))
            .collect())
    }

    /// Union of the principal lower sets of `xs`.
    pub fn generated_by<I: IntoIterator<Item = usize>>(&self, xs: I) -> Result<LowerSet> {
        let mut out = self.empty_set();
        for x in xs {
            out = out.union(&self.principal_lower_set(x)?)?;
        }
        Ok(out)
    }

    /// For strictly monotonic `ell` and `n = ell(x0)`, checks
    /// {y ≤ x0} ∩ ⋃_{ell(x) ≤ n, x ≠ x0} {y ≤ x} = ⋃_{x < x0} {y ≤ x}.
    pub fn check_lin_identity(&self, ell: &[i64], x0: usize) -> Result<bool> {
        self.check(x0)?;
        if ell.len() != self.len() {
            return Err(Error::InvalidPoset("grading function has wrong length".into()));
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.leq[a][b] && ell[a] >= ell[b] {
                    return Err(Error::NotStrictlyMonotonic);
                }
            }
        }
        let n = ell[x0];
        let below_x0 = self.principal_lower_set(x0)?;
        let same_level =
            self.generated_by((0..self.len()).filter(|&x| x != x0 && ell[x] <= n))?;
        let lhs = below_x0.intersection(&same_level)?;
        let rhs = self.generated_by((0..self.len()).filter(|&x| x != x0 && self.leq[x][x0]))?;
        Ok(lhs == rhs)
    }
}

impl LowerSet {
    pub fn contains(&self, x: usize) -> bool {
        self.members.get(x).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(x, _)| x)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn union(&self, other: &LowerSet) -> Result<LowerSet> {
        if self.poset != other.poset {
            return Err(Error::MismatchedPosets);
        }
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        Ok(LowerSet { poset: self.poset, members })
    }

    pub fn intersection(&self, other: &LowerSet) -> Result<LowerSet> {
        if self.poset != other.poset {
            return Err(Error::MismatchedPosets);
        }
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect();
        Ok(LowerSet { poset: self.poset, members })
    }
}

/// The Bruhat poset on {}^IW^J, elements in (length, ShortLex) order.
pub fn double_coset_poset(group: &WeylGroup, i: Subset, j: Subset) -> FinitePoset<ElemId> {
    FinitePoset::new(group.double_coset_reps(i, j), |&a, &b| group.bruhat_leq(a, b))
        .expect("Bruhat order is a partial order")
}

/// Runs the grading identity with ℓ = length at every element of the poset.
pub fn check_lin_identity_bruhat(group: &WeylGroup, poset: &FinitePoset<ElemId>) -> Result<bool> {
    let ell: Vec<i64> = poset.elements().iter().map(|&w| group.length(w) as i64).collect();
    for x0 in 0..poset.len() {
        if !poset.check_lin_identity(&ell, x0)? {
            return Ok(false);
        }
    }
    Ok(true)
}
