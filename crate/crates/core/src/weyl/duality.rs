//! Order-reversing bijections {}^IW^J → {}^{I'}W^J and on the fibers
//! {}^K W_J, together with the d/δ partition identities they imply.

use super::{ElemId, WeylGroup};
use crate::lattice::add_scaled;
use crate::root_datum::RootId;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq)]
pub struct FiberMap {
    pub rep: ElemId,
    pub image_rep: ElemId,
    pub k: Subset,
    pub k_prime: Subset,
    /// {}^K w_{J,0} = w_{K,0} w_{J,0}.
    pub twist: ElemId,
    pub pairs: Vec<(ElemId, ElemId)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OppositeMaps {
    pub i: Subset,
    pub j: Subset,
    pub i_prime: Subset,
    /// {}^Iw₀ = w_{I,0} w₀.
    pub iw0: ElemId,
    pub rep_map: Vec<(ElemId, ElemId)>,
    pub fiber_maps: Vec<FiberMap>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFailure {
    pub rep: ElemId,
    pub what: &'static str,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
}

impl WeylGroup {
    /// I' = {}^Iw₀^{-1}(I).
    pub fn opposite_subset(&self, i: Subset) -> Subset {
        let iw0 = self.mul(self.longest_in(i), self.longest());
        let inv = self.inverse(iw0);
        Subset::from_indices(i.iter().map(|a| {
            self.datum()
                .as_simple(self.apply_root(inv, a as RootId))
                .expect("w0 permutes -Δ")
        }))
    }

    pub fn opposite_bijections(&self, i: Subset, j: Subset) -> OppositeMaps {
        let iw0 = self.mul(self.longest_in(i), self.longest());
        let iw0_inv = self.inverse(iw0);
        let i_prime = self.opposite_subset(i);
        let wj0 = self.longest_in(j);
        let mut rep_map = Vec::new();
        let mut fiber_maps = Vec::new();
        for w in self.double_coset_reps(i, j) {
            let k = self.meet_preimage(j, w, i);
            let twist = self.mul(self.longest_in(k), wj0);
            let image = self.mul(self.mul(iw0_inv, w), twist);
            let k_prime = self.meet_preimage(j, image, i_prime);
            let twist_inv = self.inverse(twist);
            let pairs = self.fiber(k, j).into_iter().map(|x| (x, self.mul(twist_inv, x))).collect();
            rep_map.push((w, image));
            fiber_maps.push(FiberMap { rep: w, image_rep: image, k, k_prime, twist, pairs });
        }
        OppositeMaps { i, j, i_prime, iw0, rep_map, fiber_maps }
    }

    /// Checks that both maps land in the stated targets, are bijective and
    /// reverse the Bruhat order (in both directions).
    pub fn verify_opposite(&self, maps: &OppositeMaps) -> Result<(), String> {
        let target = self.double_coset_reps(maps.i_prime, maps.j);
        check_order_reversing_bijection(self, &maps.rep_map, &target, "rep map")?;
        for fm in &maps.fiber_maps {
            let target = self.fiber(fm.k_prime, maps.j);
            check_order_reversing_bijection(self, &fm.pairs, &target, "fiber map")
                .map_err(|e| format!("{e} at rep {}", self.format_word(fm.rep)))?;
        }
        Ok(())
    }

    /// d_J = (d_{I∩w(J)} − d_I) + d_w + d_{w'} and
    /// δ_J = w^{-1}(δ_{I∩w(J)} − δ_I) + δ_w + {}^K w_{J,0}(δ_{w'}).
    pub fn partition_identities(&self, i: Subset, j: Subset) -> Vec<PartitionFailure> {
        let d = self.datum();
        let maps = self.opposite_bijections(i, j);
        let (dj, delta_j) = d.complement_data(j);
        let (di, delta_i) = d.complement_data(i);
        let mut failures = Vec::new();
        for fm in &maps.fiber_maps {
            let w = fm.rep;
            let m = self.meet_image(i, w, j);
            let (dm, delta_m) = d.complement_data(m);
            let (dw, delta_w) = self.dw_delta(w);
            let (dw2, delta_w2) = self.dw_delta(fm.image_rep);
            let rhs = dm as i64 - di as i64 + dw as i64 + dw2 as i64;
            if rhs != dj as i64 {
                failures.push(PartitionFailure { rep: w, what: "d", lhs: vec![dj as i64], rhs: vec![rhs] });
            }
            let mut diff = delta_m.clone();
            add_scaled(&mut diff, &delta_i, -1);
            let mut sum = self.apply_vector(self.inverse(w), &diff);
            add_scaled(&mut sum, &delta_w, 1);
            add_scaled(&mut sum, &self.apply_vector(fm.twist, &delta_w2), 1);
            if sum != delta_j {
                failures.push(PartitionFailure { rep: w, what: "delta", lhs: delta_j.clone(), rhs: sum });
            }
        }
        failures
    }
}

fn check_order_reversing_bijection(
    g: &WeylGroup,
    pairs: &[(ElemId, ElemId)],
    target: &[ElemId],
    what: &str,
) -> Result<(), String> {
    let mut images: Vec<ElemId> = pairs.iter().map(|p| p.1).collect();
    images.sort_unstable();
    let mut t = target.to_vec();
    t.sort_unstable();
    if images != t {
        return Err(format!("{what}: image is not the target set"));
    }
    for &(u, fu) in pairs {
        for &(v, fv) in pairs {
            if g.bruhat_leq(u, v) != g.bruhat_leq(fv, fu) {
                return Err(format!(
                    "{what}: order not reversed for {} and {}",
                    g.format_word(u),
                    g.format_word(v)
                ));
            }
        }
    }
    Ok(())
}
