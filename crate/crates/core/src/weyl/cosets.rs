//! Minimal coset and double coset representatives, and the root subsets
//! attached to a decomposition {}^Iw = {}^Iw^J · w_J.

use super::{ElemId, WeylGroup};
use crate::error::{Error, Result};
use crate::root_datum::RootId;
use crate::subset::Subset;

/// Data attached to one double coset representative w ∈ {}^IW^J.
#[derive(Debug, Clone, PartialEq)]
pub struct RepData {
    pub rep: ElemId,
    /// J ∩ w^{-1}(I).
    pub k: Subset,
    /// I ∩ w(J).
    pub i_meet: Subset,
    pub d: u64,
    pub delta: Vec<i64>,
    /// {}^K W_J with K = J ∩ w^{-1}(I).
    pub fiber: Vec<ElemId>,
}

#[derive(Debug, Clone)]
pub struct DoubleCosetTable {
    pub i: Subset,
    pub j: Subset,
    pub reps: Vec<ElemId>,
    pub per_rep: Vec<RepData>,
}

impl DoubleCosetTable {
    pub fn position(&self, w: ElemId) -> Option<usize> {
        self.reps.iter().position(|&r| r == w)
    }
}

/// Root sets (as positive root indices) attached to {}^Iw = {}^Iw^J · w_J.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSection {
    pub u: Vec<usize>,
    pub u_prime: Vec<usize>,
    pub u_second: Vec<usize>,
    pub n_j: Vec<usize>,
    pub n_j_prime: Vec<usize>,
    pub n_j_second: Vec<usize>,
    pub u_j: Vec<usize>,
    pub u_j_prime: Vec<usize>,
    pub u_j_second: Vec<usize>,
}

impl WeylGroup {
    /// w ∈ {}^IW, i.e. w^{-1}(Φ_I⁺) ⊆ Φ⁺.
    pub fn is_min_left(&self, i: Subset, w: ElemId) -> bool {
        let winv = self.inverse(w);
        i.iter().all(|a| self.is_positive_image(winv, a as RootId))
    }

    /// w ∈ W^J, i.e. w(Φ_J⁺) ⊆ Φ⁺.
    pub fn is_min_right(&self, j: Subset, w: ElemId) -> bool {
        j.iter().all(|b| self.is_positive_image(w, b as RootId))
    }

    pub fn is_double_rep(&self, i: Subset, j: Subset, w: ElemId) -> bool {
        self.is_min_left(i, w) && self.is_min_right(j, w)
    }

    /// {}^IW ordered by (length, ShortLex word).
    pub fn min_coset_reps(&self, i: Subset) -> Vec<ElemId> {
        self.elements().filter(|&w| self.is_min_left(i, w)).collect()
    }

    /// w = w_I · {}^Iw.
    pub fn coset_decompose(&self, i: Subset, w: ElemId) -> (ElemId, ElemId) {
        let mut rep = w;
        let mut wi = self.identity();
        loop {
            let rinv = self.inverse(rep);
            match i.iter().find(|&a| !self.is_positive_image(rinv, a as RootId)) {
                Some(a) => {
                    rep = self.simple_mul(a, rep);
                    wi = self.mul_simple(wi, a);
                }
                None => return (wi, rep),
            }
        }
    }

    /// Right-handed analogue: w = w^J · w_J with w^J ∈ W^J.
    pub fn right_coset_decompose(&self, j: Subset, w: ElemId) -> (ElemId, ElemId) {
        let mut rep = w;
        let mut wj = self.identity();
        loop {
            match j.iter().find(|&b| !self.is_positive_image(rep, b as RootId)) {
                Some(b) => {
                    rep = self.mul_simple(rep, b);
                    wj = self.simple_mul(b, wj);
                }
                None => return (rep, wj),
            }
        }
    }

    pub fn double_coset_reps(&self, i: Subset, j: Subset) -> Vec<ElemId> {
        self.elements().filter(|&w| self.is_double_rep(i, j, w)).collect()
    }

    /// {}^Iw = {}^Iw^J · w_J for {}^Iw ∈ {}^IW.
    pub fn double_decompose(&self, i: Subset, j: Subset, w: ElemId) -> Result<(ElemId, ElemId)> {
        if !self.is_min_left(i, w) {
            return Err(Error::NotMinimalRep(self.format_word(w)));
        }
        Ok(self.right_coset_decompose(j, w))
    }

    /// J ∩ w^{-1}(I).
    pub fn meet_preimage(&self, j: Subset, w: ElemId, i: Subset) -> Subset {
        Subset::from_indices(j.iter().filter(|&b| {
            self.datum().as_simple(self.apply_root(w, b as RootId)).is_some_and(|a| i.contains(a))
        }))
    }

    /// I ∩ w(J).
    pub fn meet_image(&self, i: Subset, w: ElemId, j: Subset) -> Subset {
        self.meet_preimage(i, self.inverse(w), j)
    }

    /// {}^K W_J: elements of W_J that are minimal in their W_K coset.
    pub fn fiber(&self, k: Subset, j: Subset) -> Vec<ElemId> {
        self.elements().filter(|&x| self.in_parabolic(x, j) && self.is_min_left(k, x)).collect()
    }

    pub fn double_coset_table(&self, i: Subset, j: Subset) -> DoubleCosetTable {
        let reps = self.double_coset_reps(i, j);
        let per_rep = reps
            .iter()
            .map(|&w| {
                let k = self.meet_preimage(j, w, i);
                let (d, delta) = self.dw_delta(w);
                RepData {
                    rep: w,
                    k,
                    i_meet: self.meet_image(i, w, j),
                    d,
                    delta,
                    fiber: self.fiber(k, j),
                }
            })
            .collect();
        DoubleCosetTable { i, j, reps, per_rep }
    }

    /// Σ d_γ over Φ_I⁺ ∖ Φ_M⁺, i.e. dim(L_I ∩ N_M) for M ⊆ I.
    pub fn levi_unipotent_dim(&self, i: Subset, m: Subset) -> u64 {
        let d = self.datum();
        d.positive_roots()
            .iter()
            .filter(|r| r.support.is_subset(i) && !r.support.is_subset(m))
            .map(|r| u64::from(r.multiplicity))
            .sum()
    }

    pub fn cross_section(&self, i: Subset, j: Subset, w: ElemId) -> Result<CrossSection> {
        if !self.is_min_left(i, w) {
            return Err(Error::NotMinimalRep(self.format_word(w)));
        }
        let d = self.datum();
        let n = d.num_positive_roots();
        let mut cs = CrossSection {
            u: vec![],
            u_prime: vec![],
            u_second: vec![],
            n_j: vec![],
            n_j_prime: vec![],
            n_j_second: vec![],
            u_j: vec![],
            u_j_prime: vec![],
            u_j_second: vec![],
        };
        for k in 0..n {
            let img = self.apply_root(w, k as RootId);
            if !d.is_positive_root(img) {
                continue;
            }
            let into_levi = d.in_parabolic(img as usize, i);
            let in_j = d.in_parabolic(k, j);
            cs.u.push(k);
            if into_levi {
                cs.u_second.push(k);
            } else {
                cs.u_prime.push(k);
            }
            let (all, prime, second) = if in_j {
                (&mut cs.u_j, &mut cs.u_j_prime, &mut cs.u_j_second)
            } else {
                (&mut cs.n_j, &mut cs.n_j_prime, &mut cs.n_j_second)
            };
            all.push(k);
            if into_levi {
                second.push(k);
            } else {
                prime.push(k);
            }
        }
        Ok(cs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::group;
    use super::*;

    fn words(g: &WeylGroup, ws: &[ElemId]) -> Vec<String> {
        ws.iter().map(|&w| g.format_word(w)).collect()
    }

    #[test]
    fn a2_cosets() {
        let g = group("A2");
        let i = Subset::singleton(0);
        assert_eq!(words(&g, &g.min_coset_reps(i)), ["e", "a2", "a2 a1"]);
        assert_eq!(g.min_coset_reps(Subset::EMPTY).len(), 6);
        assert_eq!(g.min_coset_reps(Subset(3)), vec![0]);
        assert_eq!(words(&g, &g.double_coset_reps(i, Subset::singleton(1))), ["e", "a2 a1"]);
        assert_eq!(words(&g, &g.double_coset_reps(i, i)), ["e", "a2"]);
    }

    #[test]
    fn decompositions_multiply_back() {
        let g = group("B3");
        for i in Subset::all(3) {
            for w in g.elements() {
                let (wi, rep) = g.coset_decompose(i, w);
                assert_eq!(g.mul(wi, rep), w);
                assert!(g.in_parabolic(wi, i) && g.is_min_left(i, rep));
                assert_eq!(g.length(w), g.length(wi) + g.length(rep));
            }
        }
    }

    #[test]
    fn double_decompose_requires_min_rep() {
        let g = group("A2");
        let s1 = g.simple_reflection(0);
        assert!(g.double_decompose(Subset::singleton(0), Subset::EMPTY, s1).is_err());
    }

    #[test]
    fn cross_section_a2_example() {
        let g = group("A2");
        let (i, j) = (Subset::singleton(0), Subset::singleton(1));
        let w = g.parse_word("a2 a1").unwrap();
        let cs = g.cross_section(i, j, w).unwrap();
        // N_J has roots {α1, α1+α2}; both are inverted by s2 s1.
        assert!(cs.n_j.is_empty());
        let cs_e = g.cross_section(i, j, 0).unwrap();
        assert_eq!(cs_e.u_prime, vec![1, 2]);
        assert_eq!(cs_e.u_second, vec![0]);
    }
}
