//! Brute-force reference implementations.
//!
//! Nothing here touches [`WeylGroup`] internals: elements are integer matrices
//! in simple-root coordinates built by repeated simple reflections, and cosets
//! are formed by explicit multiplication. Elements are matched with the main
//! path only through the images of the simple roots.

use crate::error::{Error, Result};
use crate::filtration::{check_lin_identity_bruhat, double_coset_poset};
use crate::grading::{duality_check, full_profile, GradingOptions, Side, SigmaDescriptor};
use crate::lattice::{add_scaled, dot};
use crate::root_datum::{build_datum, DatumSpec, Lattice, RootDatum};
use crate::subset::Subset;
use crate::weyl::{ElemId, WeylGroup};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};

pub const ORACLE_CAP: usize = 20_000;

/// A Weyl group as a set of matrices acting on simple-root coefficients.
#[derive(Debug, Clone)]
pub struct OracleGroup {
    s: usize,
    cartan: Vec<Vec<i64>>,
    /// Column-major: entries `[i*s .. (i+1)*s]` are the coefficients of w(α_i).
    mats: Vec<Vec<i64>>,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<i64>, usize>,
    /// Positive roots as (coefficients, multiplicity).
    roots: Vec<(Vec<i64>, u32)>,
    simple_vectors: Vec<Vec<i64>>,
}

impl OracleGroup {
    pub fn new(datum: &RootDatum) -> Result<OracleGroup> {
        Self::with_cap(datum, ORACLE_CAP)
    }

    pub fn with_cap(datum: &RootDatum, cap: usize) -> Result<OracleGroup> {
        let s = datum.num_simple();
        let cartan: Vec<Vec<i64>> = (0..s)
            .map(|i| (0..s).map(|j| dot(&datum.simple_roots()[i], &datum.simple_coroots()[j])).collect())
            .collect();
        let identity: Vec<i64> = (0..s * s).map(|k| i64::from(k / s == k % s)).collect();
        let mut g = OracleGroup {
            s,
            cartan,
            mats: vec![identity.clone()],
            words: vec![vec![]],
            index: HashMap::from([(identity, 0)]),
            roots: vec![],
            simple_vectors: datum.simple_roots().to_vec(),
        };
        let mut head = 0;
        while head < g.mats.len() {
            for i in 0..s {
                let next = g.times_simple(&g.mats[head], i);
                if !g.index.contains_key(&next) {
                    if g.mats.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    let mut word = g.words[head].clone();
                    word.push(i as u8);
                    g.index.insert(next.clone(), g.mats.len());
                    g.mats.push(next);
                    g.words.push(word);
                }
            }
            head += 1;
        }
        let mut found: HashMap<Vec<i64>, u32> = HashMap::new();
        for w in 0..g.mats.len() {
            for a in 0..s {
                let img = g.column(w, a).to_vec();
                let m = datum.multiplicities()[a];
                if img.iter().all(|&c| c >= 0) {
                    if let Some(&old) = found.get(&img) {
                        if old != m {
                            return Err(Error::OracleFault(format!("conflicting multiplicity at {img:?}")));
                        }
                    }
                    found.insert(img, m);
                }
            }
        }
        let mut roots: Vec<(Vec<i64>, u32)> = found.into_iter().collect();
        roots.sort();
        g.roots = roots;
        Ok(g)
    }

    fn column(&self, w: usize, i: usize) -> &[i64] {
        &self.mats[w][i * self.s..(i + 1) * self.s]
    }

    /// w·s_i: column j becomes w(α_j) − ⟨α_j, α_i^∨⟩ w(α_i).
    fn times_simple(&self, m: &[i64], i: usize) -> Vec<i64> {
        let s = self.s;
        let mut out = m.to_vec();
        for j in 0..s {
            let c = self.cartan[j][i];
            for k in 0..s {
                out[j * s + k] -= c * m[i * s + k];
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn key(&self, w: usize) -> &[i64] {
        &self.mats[w]
    }

    pub fn find(&self, key: &[i64]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn word(&self, w: usize) -> &[u8] {
        &self.words[w]
    }

    pub fn positive_roots(&self) -> &[(Vec<i64>, u32)] {
        &self.roots
    }

    pub fn apply(&self, w: usize, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.s];
        for (i, &ci) in c.iter().enumerate() {
            add_scaled(&mut out, self.column(w, i), ci);
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let key: Vec<i64> = (0..self.s).flat_map(|i| self.apply(a, self.column(b, i))).collect();
        self.index[&key]
    }

    pub fn word_product(&self, word: &[u8]) -> usize {
        let m = word.iter().fold(self.mats[0].clone(), |m, &i| self.times_simple(&m, i as usize));
        self.index[&m]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let rev: Vec<u8> = self.words[w].iter().rev().copied().collect();
        self.word_product(&rev)
    }

    fn is_negative(c: &[i64]) -> bool {
        c.iter().any(|&x| x < 0)
    }

    /// Positive roots sent to negative roots.
    pub fn inversions(&self, w: usize) -> Vec<usize> {
        (0..self.roots.len()).filter(|&k| Self::is_negative(&self.apply(w, &self.roots[k].0))).collect()
    }

    pub fn length(&self, w: usize) -> usize {
        self.inversions(w).len()
    }

    pub fn dw_delta(&self, w: usize, rank: usize) -> (u64, Vec<i64>) {
        let mut d = 0;
        let mut delta = vec![0; rank];
        for k in self.inversions(w) {
            let (c, m) = &self.roots[k];
            d += u64::from(*m);
            for (j, &cj) in c.iter().enumerate() {
                add_scaled(&mut delta, &self.simple_vectors[j], cj * i64::from(*m));
            }
        }
        (d, delta)
    }

    /// W_I by closure under right multiplication with s_i, i ∈ I.
    pub fn parabolic(&self, i: Subset) -> Vec<usize> {
        let mut seen = HashSet::from([0usize]);
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            for a in i.iter() {
                let x = self.word_product(&[self.words[out[head]].clone(), vec![a as u8]].concat());
                if seen.insert(x) {
                    out.push(x);
                }
            }
            head += 1;
        }
        out
    }

    fn classes<F: Fn(usize) -> Vec<usize>>(&self, class_of: F) -> Result<Vec<usize>> {
        let mut done = vec![false; self.order()];
        let mut reps = Vec::new();
        for w in 0..self.order() {
            if done[w] {
                continue;
            }
            let class = class_of(w);
            let min = class.iter().map(|&x| self.length(x)).min().expect("nonempty class");
            let minima: Vec<usize> = class.iter().copied().filter(|&x| self.length(x) == min).collect();
            if minima.len() != 1 {
                return Err(Error::OracleFault(format!("{} minimal elements in one class", minima.len())));
            }
            for x in class {
                done[x] = true;
            }
            reps.push(minima[0]);
        }
        reps.sort_unstable();
        Ok(reps)
    }

    fn left_class(&self, wi: &[usize], w: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = wi.iter().map(|&x| self.mul(x, w)).collect();
        set.into_iter().collect()
    }

    fn double_class(&self, wi: &[usize], wj: &[usize], w: usize) -> Vec<usize> {
        let set: BTreeSet<usize> =
            wi.iter().flat_map(|&x| wj.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(self.mul(x, w), y)).collect();
        set.into_iter().collect()
    }

    /// Minimal-length representatives of W_I \ W.
    pub fn brute_min_reps(&self, i: Subset) -> Result<Vec<usize>> {
        let wi = self.parabolic(i);
        self.classes(|w| self.left_class(&wi, w))
    }

    /// Minimal-length representatives of W_I \ W / W_J.
    pub fn brute_double_reps(&self, i: Subset, j: Subset) -> Result<Vec<usize>> {
        let (wi, wj) = (self.parabolic(i), self.parabolic(j));
        self.classes(|w| self.double_class(&wi, &wj, w))
    }

    fn class_min(&self, class: &[usize]) -> usize {
        *class.iter().min_by_key(|&&x| self.length(x)).expect("nonempty")
    }

    /// w = w_I · rep with rep minimal in W_I w.
    pub fn brute_coset_decompose(&self, i: Subset, w: usize) -> (usize, usize) {
        let wi = self.parabolic(i);
        let rep = self.class_min(&self.left_class(&wi, w));
        (self.mul(w, self.inverse(rep)), rep)
    }

    /// w = rep · w_J with rep minimal in W_I w W_J.
    pub fn brute_double_decompose(&self, i: Subset, j: Subset, w: usize) -> (usize, usize) {
        let (wi, wj) = (self.parabolic(i), self.parabolic(j));
        let rep = self.class_min(&self.double_class(&wi, &wj, w));
        (rep, self.mul(self.inverse(rep), w))
    }

    /// A reduced word for w obtained by peeling randomly chosen right descents.
    pub fn random_reduced_word(&self, w: usize, rng: &mut StdRng) -> Vec<u8> {
        let mut word = Vec::new();
        let mut x = w;
        while x != 0 {
            let descents: Vec<usize> = (0..self.s).filter(|&i| Self::is_negative(self.column(x, i))).collect();
            let &i = descents.choose(rng).expect("nontrivial element has a descent");
            word.push(i as u8);
            x = self.index[&self.times_simple(&self.mats[x], i)];
        }
        word.reverse();
        word
    }

    /// All subword products of a random reduced word of w.
    pub fn brute_lower_interval(&self, w: usize, rng: &mut StdRng) -> HashSet<usize> {
        let word = self.random_reduced_word(w, rng);
        let mut set = HashSet::from([0usize]);
        for &i in &word {
            let next: Vec<usize> =
                set.iter().map(|&x| self.index[&self.times_simple(&self.mats[x], i as usize)]).collect();
            set.extend(next);
        }
        set
    }

    pub fn brute_bruhat(&self, u: usize, w: usize, rng: &mut StdRng) -> bool {
        self.brute_lower_interval(w, rng).contains(&u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCase {
    pub cartan_type: String,
    pub lattice: Lattice,
    pub multiplicity: Option<Vec<u32>>,
}

impl SweepCase {
    pub fn new(t: &str, lattice: Lattice) -> Self {
        SweepCase { cartan_type: t.to_string(), lattice, multiplicity: None }
    }

    pub fn spec(&self) -> Result<DatumSpec> {
        let mut spec = DatumSpec::preset(&self.cartan_type, self.lattice)?;
        if let Some(m) = &self.multiplicity {
            spec = spec.with_multiplicity(m.clone());
        }
        Ok(spec)
    }
}

pub const DEFAULT_TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"];

/// Simply connected presets of the default types, plus A2 adjoint with
/// multiplicities (2, 2).
pub fn default_cases() -> Vec<SweepCase> {
    let mut cases: Vec<SweepCase> = DEFAULT_TYPES.iter().map(|t| SweepCase::new(t, Lattice::SimplyConnected)).collect();
    cases.push(SweepCase { cartan_type: "A2".into(), lattice: Lattice::Adjoint, multiplicity: Some(vec![2, 2]) });
    cases
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cartan_type: String,
    pub lattice: Lattice,
    pub multiplicity: Vec<u32>,
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub agreement: bool,
    pub divergences: Vec<Divergence>,
}

impl OracleReport {
    pub fn first_divergence(&self) -> Option<&Divergence> {
        self.divergences.first()
    }

    pub fn case_id(&self) -> String {
        format!("{}/{} I={{{}}} J={{{}}}", self.cartan_type, self.lattice, self.i.join(","), self.j.join(","))
    }
}

struct Ctx<'a> {
    g: &'a WeylGroup,
    o: &'a OracleGroup,
    to_oracle: Vec<usize>,
    to_group: Vec<ElemId>,
    out: Vec<Divergence>,
}

impl Ctx<'_> {
    fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.out.push(Divergence { check: check.to_string(), detail: detail.into() });
    }

    fn result(&mut self, check: &str, r: std::result::Result<(), String>) {
        if let Err(e) = r {
            self.fail(check, e);
        }
    }

    fn ensure(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(check, detail());
        }
    }

    fn mapped(&self, reps: &[usize]) -> BTreeSet<ElemId> {
        reps.iter().map(|&x| self.to_group[x]).collect()
    }
}

fn datum_checks(ctx: &mut Ctx, rng: &mut StdRng) {
    let (g, o) = (ctx.g, ctx.o);
    let d = g.datum();
    let mut mine: Vec<(Vec<i64>, u32)> =
        d.positive_roots().iter().map(|r| (r.coefficients.clone(), r.multiplicity)).collect();
    mine.sort();
    ctx.ensure("roots", mine == o.positive_roots(), || "positive root sets differ".into());
    for w in g.elements() {
        let x = ctx.to_oracle[w as usize];
        ctx.ensure("lengths", g.length(w) == o.length(x), || format!("length of {}", g.format_word(w)));
        ctx.ensure("words", o.word_product(g.word(w)) == x, || format!("word of {}", g.format_word(w)));
        let ok = g.dw_delta(w) == o.dw_delta(x, d.rank());
        ctx.ensure("dw_delta", ok, || format!("d/delta of {}", g.format_word(w)));
        ctx.ensure("inverse", ctx.to_oracle[g.inverse(w) as usize] == o.inverse(x), || {
            format!("inverse of {}", g.format_word(w))
        });
    }
    for w in g.elements() {
        let below = o.brute_lower_interval(ctx.to_oracle[w as usize], rng);
        for u in g.elements() {
            if g.bruhat_leq(u, w) != below.contains(&ctx.to_oracle[u as usize]) {
                ctx.fail("bruhat", format!("{} vs {}", g.format_word(u), g.format_word(w)));
            }
        }
    }
    let r = g.check_dw_bounds();
    ctx.result("dw_bounds", r);
    let m = d.multiplicities();
    if m.iter().all(|&x| x == m[0]) {
        let ok = g.elements().all(|w| g.dw_delta(w).0 == u64::from(m[0]) * g.length(w) as u64);
        ctx.ensure("dw_uniform", ok, || "d_w is not a multiple of length".into());
    }
    let maps = g.opposite_bijections(Subset::EMPTY, Subset::EMPTY);
    let w0inv = g.inverse(g.longest());
    let ok = maps.rep_map.iter().all(|&(w, img)| img == g.mul(w0inv, w));
    ctx.ensure("opposite_trivial", ok, || "I = J = empty does not give w0^-1 w".into());
}

fn coset_checks(ctx: &mut Ctx, i: Subset) {
    let (g, o) = (ctx.g, ctx.o);
    match o.brute_min_reps(i) {
        Ok(reps) => {
            let ok = ctx.mapped(&reps) == g.min_coset_reps(i).into_iter().collect();
            ctx.ensure("min_reps", ok, || "minimal coset representatives differ".into());
        }
        Err(e) => ctx.fail("min_reps", e.to_string()),
    }
    for w in g.elements() {
        let (wi, rep) = g.coset_decompose(i, w);
        let (bi, brep) = o.brute_coset_decompose(i, ctx.to_oracle[w as usize]);
        let ok = ctx.to_group[bi] == wi && ctx.to_group[brep] == rep;
        ctx.ensure("coset_decompose", ok, || format!("decomposition of {}", g.format_word(w)));
    }
    let r = g.check_coset_decompositions(i);
    ctx.result("coset_checks", r);
}

fn pair_checks(ctx: &mut Ctx, i: Subset, j: Subset) {
    let (g, o) = (ctx.g, ctx.o);
    let d = g.datum();
    match o.brute_double_reps(i, j) {
        Ok(reps) => {
            let ok = ctx.mapped(&reps) == g.double_coset_reps(i, j).into_iter().collect();
            ctx.ensure("double_reps", ok, || "double coset representatives differ".into());
        }
        Err(e) => ctx.fail("double_reps", e.to_string()),
    }
    for w in g.min_coset_reps(i) {
        match g.double_decompose(i, j, w) {
            Ok((rep, wj)) => {
                let (brep, bwj) = o.brute_double_decompose(i, j, ctx.to_oracle[w as usize]);
                let ok = ctx.to_group[brep] == rep && ctx.to_group[bwj] == wj;
                ctx.ensure("double_decompose", ok, || format!("decomposition of {}", g.format_word(w)));
                let add = o.length(ctx.to_oracle[w as usize]) == o.length(brep) + o.length(bwj);
                ctx.ensure("double_decompose", add, || format!("length not additive at {}", g.format_word(w)));
            }
            Err(e) => ctx.fail("double_decompose", e.to_string()),
        }
    }
    let r = g.check_double_decompositions(i, j);
    ctx.result("kostant_ij", r);
    let r = g.check_root_identities(i, j);
    ctx.result("root_identities", r);
    let r = g.check_projections(i, j);
    ctx.result("projections", r);
    let r = g.check_cross_sections(i, j);
    ctx.result("cross_sections", r);
    let r = g.check_delta_orthogonality(i, j);
    ctx.result("delta_orthogonality", r);
    let r = g.verify_opposite(&g.opposite_bijections(i, j));
    ctx.result("opposite", r);
    for f in g.partition_identities(i, j) {
        ctx.fail("partition", format!("{} identity at {}: {:?} vs {:?}", f.what, g.format_word(f.rep), f.lhs, f.rhs));
    }
    let poset = double_coset_poset(g, i, j);
    match check_lin_identity_bruhat(g, &poset) {
        Ok(true) => {}
        Ok(false) => ctx.fail("lin_identity", "identity fails"),
        Err(e) => ctx.fail("lin_identity", e.to_string()),
    }

    let d_j = d.complement_data(j).0 as u32;
    for e in [1u32, 2] {
        for n in 0..=e * d_j {
            let r = duality_check(g, i, j, e, n);
            ctx.result("duality", r);
        }
        for sigma in [SigmaDescriptor::generic("sigma"), SigmaDescriptor::supersingular("sigma")] {
            for side in [Side::Ord, Side::Jacquet] {
                let opts = GradingOptions { side, opposite: false, strict: false };
                match full_profile(g, i, j, e, &sigma, e, &opts) {
                    Ok(rep) => {
                        for (name, ok) in rep.corollary_checks {
                            ctx.ensure(&format!("grading:{name}"), ok, || {
                                format!("e={e}, side={side:?}, supersingular={}", sigma.supersingular)
                            });
                        }
                    }
                    Err(err) => ctx.fail("grading", err.to_string()),
                }
            }
        }
    }
}

fn run_case(case: &SweepCase, seed: u64) -> Vec<OracleReport> {
    let report = |datum: Option<&RootDatum>, i: Subset, j: Subset, divergences: Vec<Divergence>| OracleReport {
        cartan_type: case.cartan_type.clone(),
        lattice: case.lattice,
        multiplicity: datum.map(|d| d.multiplicities().to_vec()).unwrap_or_default(),
        i: datum.map(|d| d.subset_labels(i)).unwrap_or_default(),
        j: datum.map(|d| d.subset_labels(j)).unwrap_or_default(),
        agreement: divergences.is_empty(),
        divergences,
    };
    let setup = || -> Result<(RootDatum, WeylGroup, OracleGroup)> {
        let datum = build_datum(&case.spec()?)?;
        let g = WeylGroup::generate(&datum)?;
        let o = OracleGroup::new(&datum)?;
        Ok((datum, g, o))
    };
    let (datum, g, o) = match setup() {
        Ok(x) => x,
        Err(e) => {
            let div = Divergence { check: "setup".into(), detail: e.to_string() };
            return vec![report(None, Subset::EMPTY, Subset::EMPTY, vec![div])];
        }
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut to_oracle = vec![usize::MAX; g.order()];
    let mut to_group = vec![ElemId::MAX; o.order()];
    let mut missing = Vec::new();
    for w in g.elements() {
        match o.find(&g.simple_image_key(w)) {
            Some(x) => {
                to_oracle[w as usize] = x;
                to_group[x] = w;
            }
            None => missing.push(g.format_word(w)),
        }
    }
    if !missing.is_empty() || g.order() != o.order() {
        let div = Divergence {
            check: "elements".into(),
            detail: format!("orders {} vs {}, unmatched {:?}", g.order(), o.order(), missing),
        };
        return vec![report(Some(&datum), Subset::EMPTY, Subset::EMPTY, vec![div])];
    }
    let s = datum.num_simple();
    let mut out = Vec::new();
    for i in Subset::all(s) {
        for j in Subset::all(s) {
            let mut ctx = Ctx { g: &g, o: &o, to_oracle: to_oracle.clone(), to_group: to_group.clone(), out: vec![] };
            if i.is_empty() && j.is_empty() {
                datum_checks(&mut ctx, &mut rng);
            }
            if j.is_empty() {
                coset_checks(&mut ctx, i);
            }
            pair_checks(&mut ctx, i, j);
            out.push(report(Some(&datum), i, j, ctx.out));
        }
    }
    out
}

/// Runs every consistency and oracle check over all (I, J) of every case of
/// rank at most `max_rank`. Cases run on separate threads.
pub fn sweep(cases: &[SweepCase], max_rank: usize) -> Vec<OracleReport> {
    let selected: Vec<(usize, &SweepCase)> = cases
        .iter()
        .enumerate()
        .filter(|(_, c)| c.spec().ok().and_then(|s| build_datum(&s).ok()).is_none_or(|d| d.num_simple() <= max_rank))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            selected.iter().map(|&(k, c)| scope.spawn(move || run_case(c, 0x5eed + k as u64))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}
