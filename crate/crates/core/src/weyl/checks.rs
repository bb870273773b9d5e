//! Self-consistency checks of the coset machinery, run per (I, J) by sweeps.

use super::{ElemId, WeylGroup};
use crate::lattice::dot;
use crate::root_datum::RootId;
use crate::subset::Subset;
use std::collections::BTreeSet;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

impl WeylGroup {
    fn positive_set<F: Fn(usize) -> bool>(&self, f: F) -> BTreeSet<usize> {
        (0..self.datum().num_positive_roots()).filter(|&k| f(k)).collect()
    }

    /// Φ_I⁺ ∩ w(Φ⁺) = Φ_I⁺ ∩ w_I(Φ_I⁺) and ℓ(w) = ℓ(w_I) + ℓ({}^Iw) for every w.
    pub fn check_coset_decompositions(&self, i: Subset) -> Check {
        let d = self.datum();
        for w in self.elements() {
            let (wi, rep) = self.coset_decompose(i, w);
            ensure(self.mul(wi, rep) == w && self.in_parabolic(wi, i) && self.is_min_left(i, rep), || {
                format!("bad decomposition of {}", self.format_word(w))
            })?;
            ensure(self.length(w) == self.length(wi) + self.length(rep), || {
                format!("length not additive for {}", self.format_word(w))
            })?;
            let winv = self.inverse(w);
            let wiinv = self.inverse(wi);
            let lhs = self.positive_set(|k| d.in_parabolic(k, i) && self.is_positive_image(winv, k as RootId));
            let rhs = self.positive_set(|k| {
                let img = self.apply_root(wiinv, k as RootId);
                d.in_parabolic(k, i) && d.is_positive_root(img) && d.in_parabolic(img as usize, i)
            });
            ensure(lhs == rhs, || format!("coset characterization fails at {}", self.format_word(w)))?;
        }
        Ok(())
    }

    /// Decompositions {}^Iw = {}^Iw^J · w_J: length additivity, the KostantIJ
    /// equality, fiber membership of w_J and its converse.
    pub fn check_double_decompositions(&self, i: Subset, j: Subset) -> Check {
        let d = self.datum();
        for w in self.min_coset_reps(i) {
            let (rep, wj) = self.double_decompose(i, j, w).map_err(|e| e.to_string())?;
            ensure(self.mul(rep, wj) == w && self.is_double_rep(i, j, rep) && self.in_parabolic(wj, j), || {
                format!("bad double decomposition of {}", self.format_word(w))
            })?;
            ensure(self.length(w) == self.length(rep) + self.length(wj), || {
                format!("length not additive for {}", self.format_word(w))
            })?;
            let lhs = self.positive_set(|k| d.in_parabolic(k, j) && self.is_positive_image(w, k as RootId));
            let rhs = self.positive_set(|k| {
                let img = self.apply_root(wj, k as RootId);
                d.in_parabolic(k, j) && d.is_positive_root(img) && d.in_parabolic(img as usize, j)
            });
            ensure(lhs == rhs, || format!("KostantIJ equality fails at {}", self.format_word(w)))?;
            let k = self.meet_preimage(j, rep, i);
            ensure(self.is_min_left(k, wj), || format!("w_J not minimal for K at {}", self.format_word(w)))?;
        }
        let parabolic_j = self.parabolic_elements(j);
        for rep in self.double_coset_reps(i, j) {
            let k = self.meet_preimage(j, rep, i);
            for &x in &parabolic_j {
                let forward = self.is_min_left(i, self.mul(rep, x));
                ensure(forward == self.is_min_left(k, x), || {
                    format!(
                        "converse fails for rep {} and {}",
                        self.format_word(rep),
                        self.format_word(x)
                    )
                })?;
            }
        }
        Ok(())
    }

    /// Φ_I ∩ w(J) = I ∩ w(J) and Φ_I ∩ w(Φ_J⁺) = Φ⁺_{I∩w(J)} for w ∈ {}^IW^J.
    pub fn check_root_identities(&self, i: Subset, j: Subset) -> Check {
        let d = self.datum();
        for w in self.double_coset_reps(i, j) {
            let m = self.meet_image(i, w, j);
            let images_j: BTreeSet<RootId> = j.iter().map(|b| self.apply_root(w, b as RootId)).collect();
            let lhs0: BTreeSet<RootId> =
                images_j.iter().copied().filter(|&r| d.in_parabolic(d.root_abs(r), i)).collect();
            let rhs0: BTreeSet<RootId> = m.iter().map(|a| a as RootId).collect();
            ensure(lhs0 == rhs0, || format!("eq0 fails at {}", self.format_word(w)))?;

            let lhs: BTreeSet<RootId> = d
                .parabolic_positive(j)
                .map(|k| self.apply_root(w, k as RootId))
                .filter(|&r| d.in_parabolic(d.root_abs(r), i))
                .collect();
            let rhs: BTreeSet<RootId> = d.parabolic_positive(m).map(|k| k as RootId).collect();
            ensure(lhs == rhs, || format!("eqi fails at {}", self.format_word(w)))?;
        }
        Ok(())
    }

    /// w ≤ w' implies {}^Iw ≤ {}^Iw' and {}^Iw^J ≤ {}^Iw'^J.
    pub fn check_projections(&self, i: Subset, j: Subset) -> Check {
        let proj: Vec<(ElemId, ElemId)> = self
            .elements()
            .map(|w| {
                let rep = self.coset_decompose(i, w).1;
                (rep, self.right_coset_decompose(j, rep).0)
            })
            .collect();
        for u in self.elements() {
            for w in self.elements() {
                if self.bruhat_leq(u, w) {
                    let (pu, pw) = (proj[u as usize], proj[w as usize]);
                    ensure(self.bruhat_leq(pu.0, pw.0) && self.bruhat_leq(pu.1, pw.1), || {
                        format!("projection not monotone on {} <= {}", self.format_word(u), self.format_word(w))
                    })?;
                }
            }
        }
        Ok(())
    }

    /// Disjoint-union structure of the cross sections and d_w via N_J / N_{J,w}.
    pub fn check_cross_sections(&self, i: Subset, j: Subset) -> Check {
        let d = self.datum();
        let disjoint_union = |all: &[usize], a: &[usize], b: &[usize]| {
            let mut ab: Vec<usize> = a.iter().chain(b).copied().collect();
            ab.sort_unstable();
            ab.windows(2).all(|x| x[0] != x[1]) && ab == all
        };
        for w in self.min_coset_reps(i) {
            let cs = self.cross_section(i, j, w).map_err(|e| e.to_string())?;
            ensure(disjoint_union(&cs.n_j, &cs.n_j_second, &cs.n_j_prime), || "N_J split".into())?;
            ensure(disjoint_union(&cs.u_j, &cs.u_j_second, &cs.u_j_prime), || "U_J split".into())?;
            ensure(disjoint_union(&cs.u, &cs.u_j, &cs.n_j), || "U_w split".into())?;
            ensure(disjoint_union(&cs.u, &cs.u_second, &cs.u_prime), || "U' / U'' split".into())?;
            let (rep, wj) = self.right_coset_decompose(j, w);
            let u_j_alt: Vec<usize> = d
                .parabolic_positive(j)
                .filter(|&k| {
                    let img = self.apply_root(wj, k as RootId);
                    d.is_positive_root(img) && d.in_parabolic(img as usize, j)
                })
                .collect();
            ensure(u_j_alt == cs.u_j, || format!("U_J,w_J mismatch at {}", self.format_word(w)))?;
            if rep == w {
                let outside: u64 = d
                    .positive_roots()
                    .iter()
                    .enumerate()
                    .filter(|(k, r)| !r.support.is_subset(j) && !cs.n_j.contains(k))
                    .map(|(_, r)| u64::from(r.multiplicity))
                    .sum();
                ensure(outside == self.dw_delta(w).0, || format!("d_w mismatch at {}", self.format_word(w)))?;
            }
        }
        Ok(())
    }

    /// <δ_w, β^∨> = 0 for β ∈ J ∩ w^{-1}(I).
    pub fn check_delta_orthogonality(&self, i: Subset, j: Subset) -> Check {
        let d = self.datum();
        for w in self.double_coset_reps(i, j) {
            let delta = self.dw_delta(w).1;
            for b in self.meet_preimage(j, w, i).iter() {
                ensure(dot(&delta, &d.simple_coroots()[b]) == 0, || {
                    format!("delta of {} pairs nontrivially with {}", self.format_word(w), d.labels()[b])
                })?;
            }
        }
        Ok(())
    }

    /// d_w ≥ ℓ(w), with equality when every multiplicity is 1.
    pub fn check_dw_bounds(&self) -> Check {
        let all_one = self.datum().multiplicities().iter().all(|&m| m == 1);
        for w in self.elements() {
            let dw = self.dw_delta(w).0 as usize;
            let l = self.length(w);
            ensure(dw >= l && (!all_one || dw == l), || format!("d_w bound fails at {}", self.format_word(w)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::group;
    use super::*;

    #[test]
    fn all_checks_on_g2_and_b3() {
        for t in ["G2", "B3", "A1xA1"] {
            let g = group(t);
            let s = g.datum().num_simple();
            g.check_dw_bounds().unwrap();
            for i in Subset::all(s) {
                g.check_coset_decompositions(i).unwrap();
                for j in Subset::all(s) {
                    g.check_double_decompositions(i, j).unwrap();
                    g.check_root_identities(i, j).unwrap();
                    g.check_cross_sections(i, j).unwrap();
                    g.check_delta_orthogonality(i, j).unwrap();
                }
            }
        }
    }

    #[test]
    fn projections_a3() {
        let g = group("A3");
        g.check_projections(Subset(1), Subset(4)).unwrap();
        g.check_projections(Subset(3), Subset(6)).unwrap();
    }
}
