//! The Weyl group as permutations of the reduced roots.
//!
//! Elements are generated breadth first by right multiplication with simple
//! reflections, so element ids are ordered by (length, ShortLex word) and each
//! element is first reached through its ShortLex-least reduced word.

mod checks;
mod cosets;
mod duality;

pub use cosets::{CrossSection, DoubleCosetTable, RepData};
pub use duality::{OppositeMaps, PartitionFailure};

use crate::error::{Error, Result};
use crate::lattice::add_scaled;
use crate::root_datum::{RootDatum, RootId};
use crate::subset::Subset;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 1_000_000;
const BRUHAT_CACHE_LIMIT: usize = 1200;

/// Index of an element inside its [`WeylGroup`].
pub type ElemId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Images of the positive roots; images of negative roots follow by negation.
    pub perm: Vec<RootId>,
    /// ShortLex-least reduced word, as simple-root indices.
    pub word: Vec<u8>,
    pub len: usize,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<RootId>, ElemId>,
    right: Vec<ElemId>,
    inverse: Vec<ElemId>,
    longest: ElemId,
    /// Lower Bruhat intervals as bitsets, when the group is small enough.
    bruhat: Option<Vec<Vec<u64>>>,
}

impl WeylGroup {
    pub fn generate(datum: &RootDatum) -> Result<WeylGroup> {
        Self::generate_with_cap(datum, DEFAULT_CAP)
    }

    pub fn generate_with_cap(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let datum = Arc::new(datum.clone());
        let s = datum.num_simple();
        let n = datum.num_positive_roots();
        let identity: Vec<RootId> = (0..n as RootId).collect();
        let mut elements = vec![WeylElement { perm: identity.clone(), word: vec![], len: 0 }];
        let mut lookup = HashMap::from([(identity, 0 as ElemId)]);
        let mut right: Vec<ElemId> = Vec::new();

        let mut head = 0;
        while head < elements.len() {
            for i in 0..s {
                let w = &elements[head];
                let perm: Vec<RootId> = (0..n)
                    .map(|k| {
                        let t = datum.reflect_root(i, k as RootId);
                        let abs = datum.root_abs(t);
                        if datum.is_positive_root(t) {
                            w.perm[abs]
                        } else {
                            datum.negate_root(w.perm[abs])
                        }
                    })
                    .collect();
                let id = match lookup.get(&perm) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::GroupTooLarge(cap));
                        }
                        let len = perm.iter().filter(|&&r| !datum.is_positive_root(r)).count();
                        let mut word = w.word.clone();
                        word.push(i as u8);
                        let id = elements.len() as ElemId;
                        lookup.insert(perm.clone(), id);
                        elements.push(WeylElement { perm, word, len });
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }

        let mut group = WeylGroup {
            datum,
            elements,
            lookup,
            right,
            inverse: Vec::new(),
            longest: 0,
            bruhat: None,
        };
        group.inverse = (0..group.elements.len())
            .map(|w| group.word_product(group.elements[w].word.iter().rev().copied()))
            .collect();
        group.longest = (0..group.elements.len() as ElemId)
            .max_by_key(|&w| group.elements[w as usize].len)
            .unwrap_or(0);
        if group.elements.len() <= BRUHAT_CACHE_LIMIT {
            let cache = (0..group.elements.len() as ElemId).map(|w| group.lower_interval_bits(w)).collect();
            group.bruhat = Some(cache);
        }
        Ok(group)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.elements.len() as ElemId
    }

    pub fn element(&self, w: ElemId) -> &WeylElement {
        &self.elements[w as usize]
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn longest(&self) -> ElemId {
        self.longest
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w as usize].len
    }

    pub fn word(&self, w: ElemId) -> &[u8] {
        &self.elements[w as usize].word
    }

    pub fn simple_reflection(&self, i: usize) -> ElemId {
        self.right[i]
    }

    /// w·s_i.
    pub fn mul_simple(&self, w: ElemId, i: usize) -> ElemId {
        self.right[w as usize * self.datum.num_simple() + i]
    }

    /// s_i·w.
    pub fn simple_mul(&self, i: usize, w: ElemId) -> ElemId {
        self.inverse(self.mul_simple(self.inverse(w), i))
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w as usize]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.elements[b as usize].word.iter().fold(a, |x, &i| self.mul_simple(x, i as usize))
    }

    /// Product of simple reflections, read left to right.
    pub fn word_product<I: IntoIterator<Item = u8>>(&self, word: I) -> ElemId {
        word.into_iter().fold(0, |x, i| self.mul_simple(x, i as usize))
    }

    pub fn find_by_perm(&self, perm: &[RootId]) -> Option<ElemId> {
        self.lookup.get(perm).copied()
    }

    /// w(β) for a signed root id.
    pub fn apply_root(&self, w: ElemId, root: RootId) -> RootId {
        let d = &self.datum;
        let img = self.elements[w as usize].perm[d.root_abs(root)];
        if d.is_positive_root(root) {
            img
        } else {
            d.negate_root(img)
        }
    }

    /// w(χ) for χ ∈ X*.
    pub fn apply_vector(&self, w: ElemId, chi: &[i64]) -> Vec<i64> {
        self.elements[w as usize]
            .word
            .iter()
            .rev()
            .fold(chi.to_vec(), |v, &i| self.datum.reflect(i as usize, &v))
    }

    pub fn is_positive_image(&self, w: ElemId, root: RootId) -> bool {
        self.datum.is_positive_root(self.apply_root(w, root))
    }

    /// Inversion set {γ ∈ Φ⁺ : w(γ) < 0}, as positive root indices.
    pub fn inversions(&self, w: ElemId) -> Vec<usize> {
        let d = &self.datum;
        self.elements[w as usize]
            .perm
            .iter()
            .enumerate()
            .filter(|(_, &r)| !d.is_positive_root(r))
            .map(|(k, _)| k)
            .collect()
    }

    /// (d_w, δ_w): total multiplicity and weighted sum of the inversion set.
    pub fn dw_delta(&self, w: ElemId) -> (u64, Vec<i64>) {
        let d = &self.datum;
        let mut dw = 0u64;
        let mut delta = vec![0i64; d.rank()];
        for k in self.inversions(w) {
            let r = &d.positive_roots()[k];
            dw += u64::from(r.multiplicity);
            add_scaled(&mut delta, &r.vector, i64::from(r.multiplicity));
        }
        (dw, delta)
    }

    /// Simple-root support of the canonical word.
    pub fn support(&self, w: ElemId) -> Subset {
        Subset::from_indices(self.word(w).iter().map(|&i| i as usize))
    }

    pub fn in_parabolic(&self, w: ElemId, i: Subset) -> bool {
        self.support(w).is_subset(i)
    }

    /// Elements of W_I in id order.
    pub fn parabolic_elements(&self, i: Subset) -> Vec<ElemId> {
        self.elements().filter(|&w| self.in_parabolic(w, i)).collect()
    }

    /// Longest element w_{I,0} of W_I.
    pub fn longest_in(&self, i: Subset) -> ElemId {
        let mut w = self.identity();
        loop {
            match i.iter().find(|&a| self.is_positive_image(w, a as RootId)) {
                Some(a) => w = self.mul_simple(w, a),
                None => return w,
            }
        }
    }

    /// Images w(α_i) of the simple roots as simple-root coefficient vectors,
    /// flattened. Identifies an element independently of the id scheme.
    pub fn simple_image_key(&self, w: ElemId) -> Vec<i64> {
        (0..self.datum.num_simple())
            .flat_map(|i| self.datum.root_coefficients(self.apply_root(w, i as RootId)))
            .collect()
    }

    fn lower_interval_bits(&self, w: ElemId) -> Vec<u64> {
        let mut bits = vec![0u64; self.order().div_ceil(64)];
        let mut members: Vec<ElemId> = vec![0];
        bits[0] |= 1;
        for &i in &self.elements[w as usize].word {
            let current = members.len();
            for k in 0..current {
                let x = self.mul_simple(members[k], i as usize);
                if bits[x as usize / 64] >> (x % 64) & 1 == 0 {
                    bits[x as usize / 64] |= 1 << (x % 64);
                    members.push(x);
                }
            }
        }
        bits
    }

    /// Bruhat order via the subword property on the canonical word of `w`.
    pub fn bruhat_leq(&self, u: ElemId, w: ElemId) -> bool {
        if self.length(u) > self.length(w) {
            return false;
        }
        if u == w {
            return true;
        }
        match &self.bruhat {
            Some(cache) => cache[w as usize][u as usize / 64] >> (u % 64) & 1 == 1,
            None => {
                let bits = self.lower_interval_bits(w);
                bits[u as usize / 64] >> (u % 64) & 1 == 1
            }
        }
    }

    /// {u : u ≤ w}, in id order.
    pub fn lower_interval(&self, w: ElemId) -> Vec<ElemId> {
        self.elements().filter(|&u| self.bruhat_leq(u, w)).collect()
    }

    /// Elements covered by `w` in Bruhat order.
    pub fn lower_covers(&self, w: ElemId) -> Vec<ElemId> {
        let l = self.length(w);
        self.elements()
            .filter(|&u| self.length(u) + 1 == l && self.bruhat_leq(u, w))
            .collect()
    }

    pub fn format_word(&self, w: ElemId) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "e".to_string();
        }
        let labels = self.datum.labels();
        word.iter().map(|&i| labels[i as usize].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Parses a space separated label word (or `e`) and returns the product.
    pub fn parse_word(&self, text: &str) -> Result<ElemId> {
        let mut w = self.identity();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
            if tok == "e" {
                continue;
            }
            w = self.mul_simple(w, self.datum.label_index(tok)?);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_datum, DatumSpec, Lattice};

    pub(crate) fn group(t: &str) -> WeylGroup {
        WeylGroup::generate(&build_datum(&DatumSpec::preset(t, Lattice::SimplyConnected).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn orders_and_longest() {
        for (t, order, l0) in [("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("A3", 24, 6), ("B3", 48, 9), ("F4", 1152, 24)] {
            let g = group(t);
            assert_eq!(g.order(), order, "{t}");
            assert_eq!(g.length(g.longest()), l0, "{t}");
            assert_eq!(g.datum().num_positive_roots(), l0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = build_datum(&DatumSpec::preset("A3", Lattice::Adjoint).unwrap()).unwrap();
        assert_eq!(WeylGroup::generate_with_cap(&d, 10).unwrap_err(), Error::GroupTooLarge(10));
    }

    #[test]
    fn words_are_shortlex_and_consistent() {
        let g = group("B3");
        for w in g.elements() {
            assert_eq!(g.word(w).len(), g.length(w));
            assert_eq!(g.word_product(g.word(w).iter().copied()), w);
            assert_eq!(g.mul(w, g.inverse(w)), g.identity());
        }
        for a in 1..g.order() as ElemId {
            let (wa, wb) = (g.word(a - 1), g.word(a));
            assert!((wa.len(), wa) < (wb.len(), wb));
        }
    }

    #[test]
    fn a2_bruhat_examples() {
        let g = group("A2");
        let s1 = g.parse_word("a1").unwrap();
        let s2 = g.parse_word("a2").unwrap();
        let s2s1 = g.parse_word("a2 a1").unwrap();
        let s1s2 = g.parse_word("a1 a2").unwrap();
        assert!(g.elements().all(|w| g.bruhat_leq(0, w)));
        assert!(g.bruhat_leq(s1, s2s1));
        assert!(!g.bruhat_leq(s1, s2));
        assert!(!g.bruhat_leq(s1s2, s2s1) && !g.bruhat_leq(s2s1, s1s2));
        assert_eq!(g.lower_interval(s1s2), vec![0, s1, s2, s1s2]);
    }

    #[test]
    fn dw_examples() {
        let g = group("A2");
        assert_eq!(g.dw_delta(0), (0, vec![0, 0]));
        let w = g.parse_word("a2 a1").unwrap();
        let (d, delta) = g.dw_delta(w);
        assert_eq!(d, 2);
        let a = g.datum().simple_roots();
        let expected: Vec<i64> = (0..2).map(|k| 2 * a[0][k] + a[1][k]).collect();
        assert_eq!(delta, expected);
        assert_eq!(g.inversions(w), vec![0, 2]);

        let mut spec = DatumSpec::preset("A2", Lattice::Adjoint).unwrap().with_multiplicity(vec![2, 2]);
        spec.split = Some(false);
        let g = WeylGroup::generate(&build_datum(&spec).unwrap()).unwrap();
        let s1 = g.simple_reflection(0);
        assert_eq!(g.dw_delta(s1), (2, vec![2, 0]));
    }

    #[test]
    fn non_reduced_words_canonicalize() {
        let g = group("A2");
        assert_eq!(g.parse_word("a1 a1").unwrap(), 0);
        assert_eq!(g.parse_word("e").unwrap(), 0);
        let w0 = g.parse_word("a2 a1 a2").unwrap();
        assert_eq!(w0, g.longest());
        assert_eq!(g.format_word(w0), "a1 a2 a1");
        assert!(g.parse_word("b7").is_err());
    }

    #[test]
    fn uncached_bruhat_matches_cache() {
        let g = group("B3");
        let mut h = g.clone();
        h.bruhat = None;
        for u in g.elements() {
            for w in g.elements() {
                assert_eq!(g.bruhat_leq(u, w), h.bruhat_leq(u, w));
            }
        }
    }
}
