//! Symbolic graded pieces of derived ordinary parts HOrd^n_{P_J} and derived
//! Jacquet functors H_n(N_J, -) applied to a parabolic induction from P_I.
//!
//! Each double coset representative w ∈ {}^IW^J contributes one term
//!
//! `Ind_{L_J ∩ P_K}^{L_J} ( F^{n - e·d_w}_{L_I ∩ P_{I∩w(J)}} σ )^w ⊗ ω^{∓δ_w}`
//!
//! with K = J ∩ w^{-1}(I). Inner functors are never evaluated; terms are only
//! classified as vanishing, proven, or conjectural.

use crate::error::{Error, Result};
use crate::lattice::dot;
use crate::root_datum::RootDatum;
use crate::subset::Subset;
use crate::weyl::{ElemId, WeylGroup};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaDescriptor {
    pub name: String,
    pub supersingular: bool,
    pub right_cuspidal: bool,
    pub left_cuspidal: bool,
}

impl SigmaDescriptor {
    /// Supersingular forces both cuspidality flags.
    pub fn new(name: &str, supersingular: bool, right_cuspidal: bool, left_cuspidal: bool) -> Self {
        SigmaDescriptor {
            name: name.to_string(),
            supersingular,
            right_cuspidal: right_cuspidal || supersingular,
            left_cuspidal: left_cuspidal || supersingular,
        }
    }

    pub fn generic(name: &str) -> Self {
        Self::new(name, false, false, false)
    }

    pub fn supersingular(name: &str) -> Self {
        Self::new(name, true, true, true)
    }

    pub fn is_supercuspidal(&self) -> bool {
        self.right_cuspidal && self.left_cuspidal
    }

    /// Parses a comma separated flag list: `supersingular`, `supercuspidal`,
    /// `right_cuspidal`, `left_cuspidal`, or `none`.
    pub fn parse_flags(name: &str, text: &str) -> Result<Self> {
        let (mut ss, mut r, mut l) = (false, false, false);
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            match tok {
                "supersingular" => ss = true,
                "supercuspidal" => (r, l) = (true, true),
                "right_cuspidal" => r = true,
                "left_cuspidal" => l = true,
                "none" | "generic" => {}
                other => return Err(Error::Parse(format!("unknown sigma flag {other:?}"))),
            }
        }
        Ok(Self::new(name, ss, r, l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Ord,
    Jacquet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroReason {
    NegativeInnerDegree,
    AboveTopDegree,
    CuspidalVanishing,
    FullLeviHigherVanishing,
}

impl ZeroReason {
    pub fn describe(self) -> &'static str {
        match self {
            ZeroReason::NegativeInnerDegree => "negative inner degree",
            ZeroReason::AboveTopDegree => "above top degree",
            ZeroReason::CuspidalVanishing => "inner functor of a cuspidal representation vanishes",
            ZeroReason::FullLeviHigherVanishing => "higher inner functor of the full Levi vanishes",
        }
    }
}

/// Which case of the vanishing/isomorphism criterion establishes a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    /// The inner functor vanishes, hence so does the graded piece.
    InnerVanishing,
    /// w(J) ⊆ I: the comparison map is an isomorphism.
    ConjugateIntoLevi,
    /// n = 0 and w = e.
    DegreeZeroIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "detail")]
pub enum TermStatus {
    Zero(ZeroReason),
    ProvenNonzeroForm(Derivation),
    Conjectural,
    /// Conjectural term demoted by strict mode.
    Unknown,
}

impl TermStatus {
    pub fn is_zero(self) -> bool {
        matches!(self, TermStatus::Zero(_))
    }

    pub fn derivation(self) -> Option<Derivation> {
        match self {
            TermStatus::Zero(_) => Some(Derivation::InnerVanishing),
            TermStatus::ProvenNonzeroForm(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTerm {
    pub conjugator: ElemId,
    pub word: String,
    pub degree: u32,
    pub d_w: u64,
    /// J.
    pub outer_levi: Subset,
    /// K = J ∩ w^{-1}(I).
    pub inducing_subset: Subset,
    /// I.
    pub inner_levi: Subset,
    /// I ∩ w(J).
    pub inner_parabolic: Subset,
    pub inner_degree: i64,
    /// Exponent vector of ω, in X* coordinates.
    pub twist: Vec<i64>,
    pub side: Side,
    /// Inducing from the opposite parabolic, with ω^{-1} in place of ω.
    pub opposite: bool,
    pub status: TermStatus,
    pub note: Option<String>,
}

impl GradedTerm {
    pub fn render(&self, datum: &RootDatum) -> String {
        let functor = match self.side {
            Side::Ord => format!("HOrd^{}", self.inner_degree),
            Side::Jacquet => format!("H_{}", self.inner_degree),
        };
        let twist: Vec<String> = self.twist.iter().map(i64::to_string).collect();
        let mut out = String::new();
        write!(
            out,
            "Ind[{}] ( {}[{}/{}] sigma )^{{{}}} (x) omega^{{{}}}",
            datum.format_subset(self.inducing_subset),
            functor,
            datum.format_subset(self.inner_levi),
            datum.format_subset(self.inner_parabolic),
            self.word,
            twist.join(",")
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingOptions {
    pub side: Side,
    pub opposite: bool,
    pub strict: bool,
}

impl Default for GradingOptions {
    fn default() -> Self {
        GradingOptions { side: Side::Ord, opposite: false, strict: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    pub datum: String,
    pub labels: Vec<String>,
    pub i: Subset,
    pub j: Subset,
    pub e: u32,
    pub sigma: SigmaDescriptor,
    pub options: GradingOptions,
    pub max_degree: u32,
    pub terms: BTreeMap<u32, Vec<GradedTerm>>,
    pub corollary_checks: BTreeMap<String, bool>,
}

impl GradingReport {
    pub fn surviving(&self, n: u32) -> Vec<&GradedTerm> {
        self.terms.get(&n).map_or(vec![], |ts| ts.iter().filter(|t| !t.status.is_zero()).collect())
    }
}

/// Degree-independent data of one representative.
#[derive(Debug, Clone)]
struct RepGrading {
    rep: ElemId,
    word: String,
    k: Subset,
    m: Subset,
    d: u64,
    delta: Vec<i64>,
    top: u64,
    into_levi: bool,
}

fn check_inputs(group: &WeylGroup, i: Subset, j: Subset, e: u32) -> Result<()> {
    let all = group.datum().all_simple();
    for s in [i, j] {
        if !s.is_subset(all) {
            return Err(Error::InvalidSubset(s.0));
        }
    }
    if e < 1 {
        return Err(Error::InvalidDegree);
    }
    Ok(())
}

fn rep_gradings(group: &WeylGroup, i: Subset, j: Subset) -> Vec<RepGrading> {
    group
        .double_coset_reps(i, j)
        .into_iter()
        .map(|w| {
            let m = group.meet_image(i, w, j);
            let (d, delta) = group.dw_delta(w);
            RepGrading {
                rep: w,
                word: group.format_word(w),
                k: group.meet_preimage(j, w, i),
                m,
                d,
                delta,
                top: group.levi_unipotent_dim(i, m),
                // w(J) ⊆ I exactly when I ∩ w(J) has |J| elements.
                into_levi: m.len() == j.len(),
            }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn term(
    r: &RepGrading,
    i: Subset,
    j: Subset,
    e: u32,
    n: u32,
    sigma: &SigmaDescriptor,
    opts: &GradingOptions,
) -> GradedTerm {
    let inner_degree = i64::from(n) - i64::from(e) * r.d as i64;
    let cuspidal = match opts.side {
        Side::Ord => sigma.right_cuspidal,
        Side::Jacquet => sigma.left_cuspidal,
    };
    let zero = if inner_degree < 0 {
        Some(ZeroReason::NegativeInnerDegree)
    } else if r.m == i && inner_degree > 0 {
        Some(ZeroReason::FullLeviHigherVanishing)
    } else if cuspidal && r.m != i && inner_degree == 0 {
        Some(ZeroReason::CuspidalVanishing)
    } else if inner_degree > i64::from(e) * r.top as i64 {
        Some(ZeroReason::AboveTopDegree)
    } else {
        None
    };
    let is_identity = r.rep == 0;
    let status = match zero {
        Some(reason) => TermStatus::Zero(reason),
        None if r.into_levi => TermStatus::ProvenNonzeroForm(Derivation::ConjugateIntoLevi),
        None if n == 0 && is_identity => TermStatus::ProvenNonzeroForm(Derivation::DegreeZeroIdentity),
        None if opts.strict => TermStatus::Unknown,
        None => TermStatus::Conjectural,
    };
    let note = (matches!(status, TermStatus::Conjectural | TermStatus::Unknown) && is_identity).then(|| {
        "at w = e this term is equivalent to Emerton's conjecture that HOrd is the derived functor of Ord".to_string()
    });
    let negate = (opts.side == Side::Ord) != opts.opposite;
    let twist = r.delta.iter().map(|&x| if negate { -x } else { x }).collect();
    GradedTerm {
        conjugator: r.rep,
        word: r.word.clone(),
        degree: n,
        d_w: r.d,
        outer_levi: j,
        inducing_subset: r.k,
        inner_levi: i,
        inner_parabolic: r.m,
        inner_degree,
        twist,
        side: opts.side,
        opposite: opts.opposite,
        status,
        note,
    }
}

/// One term per w ∈ {}^IW^J for the given side and degree.
#[allow(clippy::too_many_arguments)]
pub fn graded_pieces(
    group: &WeylGroup,
    i: Subset,
    j: Subset,
    e: u32,
    n: u32,
    sigma: &SigmaDescriptor,
    opts: &GradingOptions,
) -> Result<Vec<GradedTerm>> {
    check_inputs(group, i, j, e)?;
    Ok(rep_gradings(group, i, j).iter().map(|r| term(r, i, j, e, n, sigma, opts)).collect())
}

pub fn hord_graded_pieces(
    group: &WeylGroup,
    i: Subset,
    j: Subset,
    e: u32,
    n: u32,
    sigma: &SigmaDescriptor,
) -> Result<Vec<GradedTerm>> {
    graded_pieces(group, i, j, e, n, sigma, &GradingOptions::default())
}

pub fn hj_graded_pieces(
    group: &WeylGroup,
    i: Subset,
    j: Subset,
    e: u32,
    n: u32,
    sigma: &SigmaDescriptor,
    opposite: bool,
) -> Result<Vec<GradedTerm>> {
    let opts = GradingOptions { side: Side::Jacquet, opposite, strict: false };
    graded_pieces(group, i, j, e, n, sigma, &opts)
}

/// Terms for 0 ≤ n ≤ max(n_max, e·d_J), plus the applicable corollary checks.
#[allow(clippy::too_many_arguments)]
pub fn full_profile(
    group: &WeylGroup,
    i: Subset,
    j: Subset,
    e: u32,
    sigma: &SigmaDescriptor,
    n_max: u32,
    opts: &GradingOptions,
) -> Result<GradingReport> {
    check_inputs(group, i, j, e)?;
    let datum = group.datum();
    let d_j = datum.complement_data(j).0 as u32;
    let max_degree = n_max.max(e * d_j);
    let reps = rep_gradings(group, i, j);
    let terms: BTreeMap<u32, Vec<GradedTerm>> = (0..=max_degree)
        .map(|n| (n, reps.iter().map(|r| term(r, i, j, e, n, sigma, opts)).collect()))
        .collect();
    let mut report = GradingReport {
        datum: datum.name().to_string(),
        labels: datum.labels().to_vec(),
        i,
        j,
        e,
        sigma: sigma.clone(),
        options: *opts,
        max_degree,
        terms,
        corollary_checks: BTreeMap::new(),
    };
    report.corollary_checks = corollary_checks(group, &report);
    Ok(report)
}

fn twist_sign(opts: &GradingOptions) -> i64 {
    if (opts.side == Side::Ord) != opts.opposite {
        -1
    } else {
        1
    }
}

/// Named checks of the low-degree statements that apply to the report's inputs.
pub fn corollary_checks(group: &WeylGroup, report: &GradingReport) -> BTreeMap<String, bool> {
    let datum = group.datum();
    let (i, j, e) = (report.i, report.j, report.e);
    let opts = report.options;
    let sign = twist_sign(&opts);
    let cuspidal = match opts.side {
        Side::Ord => report.sigma.right_cuspidal,
        Side::Jacquet => report.sigma.left_cuspidal,
    };
    let at = |n: u32| report.terms.get(&n);
    let mut out = BTreeMap::new();

    if i.is_subset(j) && e > 1 {
        let ok = (1..e).all(|n| at(n).is_some_and(|ts| ts.iter().all(|t| t.status.is_zero())));
        out.insert("hord2_i".to_string(), ok);
    }
    if j.is_subset(i) {
        let ok = (0..e).all(|n| {
            at(n).is_some_and(|ts| {
                ts.iter().all(|t| {
                    if t.conjugator == 0 {
                        t.inner_parabolic == j && t.inducing_subset == j && t.inner_degree == i64::from(n)
                    } else {
                        t.status.is_zero()
                    }
                })
            })
        });
        out.insert("hord2_ii".to_string(), ok);

        let delta1 = datum.delta_one();
        let j_perp1 = datum.perp(j).1;
        let bad = delta1.difference(i.union(datum.perp(j).0));
        if cuspidal || bad.is_empty() {
            let alphas = j_perp1.difference(i);
            let ok = at(e).is_some_and(|ts| {
                let identity_ok = ts
                    .iter()
                    .find(|t| t.conjugator == 0)
                    .is_some_and(|t| t.inner_parabolic == j && t.inner_degree == i64::from(e));
                let alpha_ok = alphas.iter().all(|a| {
                    let s = group.simple_reflection(a);
                    ts.iter().find(|t| t.conjugator == s).is_some_and(|t| {
                        let expected: Vec<i64> = datum.simple_roots()[a].iter().map(|x| sign * x).collect();
                        t.inducing_subset == j
                            && t.inner_parabolic == j
                            && t.inner_degree == 0
                            && t.twist == expected
                            && (!t.status.is_zero() || t.status == TermStatus::Zero(ZeroReason::CuspidalVanishing))
                    })
                });
                let rest_ok = ts.iter().all(|t| {
                    let expected = t.conjugator == 0
                        || alphas.iter().any(|a| group.simple_reflection(a) == t.conjugator);
                    expected || t.status.is_zero()
                });
                identity_ok && alpha_ok && rest_ok
            });
            out.insert("hord2_iii".to_string(), ok);
        }
    }
    if i == j && cuspidal {
        let expected: Vec<(ElemId, Vec<i64>)> = datum
            .perp(i)
            .1
            .iter()
            .map(|a| (group.simple_reflection(a), datum.simple_roots()[a].iter().map(|x| sign * x).collect()))
            .collect();
        let ok = (1..e).all(|n| report.surviving(n).is_empty()) && {
            let mut got: Vec<(ElemId, Vec<i64>)> = report
                .surviving(e)
                .iter()
                .filter(|t| t.inducing_subset == j && t.inner_degree == 0 && t.inner_parabolic == i)
                .map(|t| (t.conjugator, t.twist.clone()))
                .collect();
            let all = report.surviving(e).len();
            got.sort();
            let mut exp = expected.clone();
            exp.sort();
            all == got.len() && got == exp
        };
        out.insert("cor_ii".to_string(), ok);
    }
    out
}

/// Checks that the Jacquet-side terms for (I, J, n) match the ordinary-side
/// terms for (I', J, e·d_J − n) under the opposite bijection: the same
/// representatives survive the degree rules, inner degrees are complementary
/// in [0, e·top], and the twists satisfy the δ partition identity.
pub fn duality_check(group: &WeylGroup, i: Subset, j: Subset, e: u32, n: u32) -> std::result::Result<(), String> {
    let datum = group.datum();
    let sigma = SigmaDescriptor::generic("sigma");
    let d_j = datum.complement_data(j).0 as u32;
    if n > e * d_j {
        return Ok(());
    }
    let maps = group.opposite_bijections(i, j);
    let hj = hj_graded_pieces(group, i, j, e, n, &sigma, false).map_err(|x| x.to_string())?;
    let ord = hord_graded_pieces(group, maps.i_prime, j, e, e * d_j - n, &sigma).map_err(|x| x.to_string())?;
    let (_, delta_j) = datum.complement_data(j);
    let (_, delta_i) = datum.complement_data(i);
    for (t, fm) in hj.iter().zip(&maps.fiber_maps) {
        let t2 = ord
            .iter()
            .find(|x| x.conjugator == fm.image_rep)
            .ok_or_else(|| format!("no image term for {}", t.word))?;
        if t.status.is_zero() != t2.status.is_zero() {
            return Err(format!("vanishing differs at {} / {}", t.word, t2.word));
        }
        let top_w = group.levi_unipotent_dim(i, t.inner_parabolic) as i64;
        let top_w2 = group.levi_unipotent_dim(maps.i_prime, t2.inner_parabolic) as i64;
        if top_w != top_w2 || t.inner_degree + t2.inner_degree != i64::from(e) * top_w {
            return Err(format!("inner degrees not complementary at {}", t.word));
        }
        let (_, delta_m) = datum.complement_data(t.inner_parabolic);
        let mut diff = delta_m;
        crate::lattice::add_scaled(&mut diff, &delta_i, -1);
        let back = group.apply_vector(group.inverse(t.conjugator), &diff);
        let moved = group.apply_vector(fm.twist, &t2.twist);
        let rhs: Vec<i64> = (0..datum.rank()).map(|k| delta_j[k] - back[k] + moved[k]).collect();
        if rhs != t.twist {
            return Err(format!("twists do not match at {}", t.word));
        }
    }
    Ok(())
}

/// <twist, β^∨> = 0 for β ∈ K on every term.
pub fn twist_orthogonal(datum: &RootDatum, terms: &[GradedTerm]) -> bool {
    terms.iter().all(|t| t.inducing_subset.iter().all(|b| dot(&t.twist, &datum.simple_coroots()[b]) == 0))
}
