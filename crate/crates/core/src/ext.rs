//! Ext¹ (and conditional Extⁿ) verdicts for pairs of parabolic inductions
//! `Ind_{P_J^-}^G σ'` and `Ind_{P_I^-}^G σ`.
//!
//! Isomorphism relations between the symbolic representations are declared by
//! the caller; they are checked against the central-character constraints and
//! otherwise trusted.

use crate::error::{Error, Result};
use crate::grading::SigmaDescriptor;
use crate::lattice::solve_integer;
use crate::root_datum::RootDatum;
use crate::subset::Subset;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Yes,
    No,
    #[default]
    Unknown,
}

/// The value of ζ∘α^∨ for the central character ζ of σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    One,
    OmegaInverse,
    Other,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    /// σ lives on L_I.
    pub i: Subset,
    /// σ' lives on L_J.
    pub j: Subset,
    pub e: u32,
    pub p_is_2: bool,
    pub sigma: SigmaDescriptor,
    pub sigma_prime: SigmaDescriptor,
    /// Keyed by simple-root index.
    pub pairings: BTreeMap<usize, Pairing>,
    /// σ' ≅ σ^α ⊗ (ω^{-1}∘α), keyed by simple-root index.
    pub rel_twist: BTreeMap<usize, Relation>,
    /// σ' ≅ σ.
    pub rel_id: Relation,
    pub conjecture_assumed: bool,
    pub emerton_conjecture_assumed: Option<bool>,
}

impl Scenario {
    pub fn new(i: Subset, j: Subset, e: u32, sigma: SigmaDescriptor, sigma_prime: SigmaDescriptor) -> Self {
        Scenario {
            i,
            j,
            e,
            p_is_2: false,
            sigma,
            sigma_prime,
            pairings: BTreeMap::new(),
            rel_twist: BTreeMap::new(),
            rel_id: Relation::Unknown,
            conjecture_assumed: false,
            emerton_conjecture_assumed: None,
        }
    }

    pub fn twist(&self, a: usize) -> Relation {
        self.rel_twist.get(&a).copied().unwrap_or_default()
    }

    /// With p = 2, ω is trivial and `One` is the same statement as `OmegaInverse`.
    pub fn pairing(&self, a: usize) -> Pairing {
        match self.pairings.get(&a).copied().unwrap_or_default() {
            Pairing::One if self.p_is_2 => Pairing::OmegaInverse,
            p => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    /// ζ∘α^∨ = ω^{-1} forces σ^α ⊗ (ω^{-1}∘α) ≅ σ, contradicting the declared relations.
    LemmaAlpha { alpha: usize },
    /// σ^α ⊗ (ω^{-1}∘α) has a different central character from σ.
    LemmaGenIdentity { alpha: usize },
    /// σ^α ⊗ (ω^{-1}∘α) and σ^β ⊗ (ω^{-1}∘β) have different central characters.
    LemmaGenTwoTwists { alpha: usize, beta: usize },
    /// A twist relation was declared for a root outside Δ_L^{⊥,1}.
    RelationOutsidePerp { alpha: usize },
    SubsetOutOfRange { subset: Subset },
    InvalidDegree,
}

impl Violation {
    pub fn describe(&self, datum: &RootDatum) -> String {
        let l = |a: &usize| datum.labels().get(*a).cloned().unwrap_or_else(|| a.to_string());
        match self {
            Violation::LemmaAlpha { alpha } => format!(
                "pairing at {} is omega_inverse, so the twist by {} is isomorphic to sigma; rel_twist and rel_id disagree",
                l(alpha),
                l(alpha)
            ),
            Violation::LemmaGenIdentity { alpha } => format!(
                "twist by {} changes the central character, so rel_twist = yes and rel_id = yes cannot both hold",
                l(alpha)
            ),
            Violation::LemmaGenTwoTwists { alpha, beta } => format!(
                "twists by {} and {} have distinct central characters; both cannot be isomorphic to sigma'",
                l(alpha),
                l(beta)
            ),
            Violation::RelationOutsidePerp { alpha } => {
                format!("rel_twist given for {}, which is not in the orthogonal multiplicity-one set", l(alpha))
            }
            Violation::SubsetOutOfRange { subset } => format!("subset {subset:?} not contained in the simple roots"),
            Violation::InvalidDegree => "e must be at least 1".to_string(),
        }
    }
}

/// Whether λ ∈ X_* exists with ⟨α,λ⟩ = 1, ⟨β,λ⟩ = 0 for β ∈ Δ_L^{⊥,1}∖{α},
/// and ⟨γ,λ⟩ = 0 for γ ∈ Δ_L. Returns a solution if so.
pub fn lemma_gen_solution(datum: &RootDatum, i: Subset, alpha: usize) -> Option<Vec<i64>> {
    let perp1 = datum.perp(i).1;
    let mut rows = vec![datum.simple_roots()[alpha].clone()];
    let mut rhs = vec![1];
    for b in perp1.iter().filter(|&b| b != alpha).chain(i.iter()) {
        rows.push(datum.simple_roots()[b].clone());
        rhs.push(0);
    }
    solve_integer(&rows, datum.rank(), &rhs)
}

pub fn lemma_gen_solvable(datum: &RootDatum, i: Subset, alpha: usize) -> bool {
    lemma_gen_solution(datum, i, alpha).is_some()
}

pub fn check_consistency(datum: &RootDatum, sc: &Scenario) -> Vec<Violation> {
    let mut out = Vec::new();
    let all = datum.all_simple();
    for s in [sc.i, sc.j] {
        if !s.is_subset(all) {
            out.push(Violation::SubsetOutOfRange { subset: s });
        }
    }
    if sc.e < 1 {
        out.push(Violation::InvalidDegree);
    }
    if !out.is_empty() {
        return out;
    }
    let perp1 = datum.perp(sc.i).1;
    for (&a, _) in sc.rel_twist.iter().filter(|(_, r)| **r != Relation::Unknown) {
        if !perp1.contains(a) {
            out.push(Violation::RelationOutsidePerp { alpha: a });
        }
    }
    for a in perp1.iter() {
        let twist = sc.twist(a);
        if sc.pairing(a) == Pairing::OmegaInverse {
            let clash = matches!(
                (twist, sc.rel_id),
                (Relation::Yes, Relation::No) | (Relation::No, Relation::Yes)
            );
            if clash {
                out.push(Violation::LemmaAlpha { alpha: a });
            }
        }
        let distinct = matches!(sc.pairing(a), Pairing::One | Pairing::Other) && lemma_gen_solvable(datum, sc.i, a);
        if distinct && twist == Relation::Yes {
            if sc.rel_id == Relation::Yes {
                out.push(Violation::LemmaGenIdentity { alpha: a });
            }
            for b in perp1.iter().filter(|&b| b != a && sc.twist(b) == Relation::Yes) {
                out.push(Violation::LemmaGenTwoTwists { alpha: a, beta: b });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum VerdictKind {
    ExactDim(u32),
    /// Induction induces an isomorphism onto the described Ext group.
    Iso(String),
    UpperBoundCokernel(u32),
    /// Induction is injective with cokernel of exactly this dimension.
    ExactCokernel(u32),
    Zero,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtVerdict {
    pub kind: VerdictKind,
    pub branch: Option<Branch>,
    pub conditional_on: Vec<String>,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl ExtVerdict {
    fn new(kind: VerdictKind, branch: Option<Branch>, citation: &str) -> Self {
        ExtVerdict { kind, branch, conditional_on: vec![], citations: vec![citation.to_string()], notes: vec![] }
    }

    fn assuming(mut self, what: &str) -> Self {
        self.conditional_on.push(what.to_string());
        self
    }

    fn note(mut self, what: String) -> Self {
        self.notes.push(what);
        self
    }

    pub fn is_conditional(&self) -> bool {
        !self.conditional_on.is_empty()
    }

    pub fn render(&self) -> String {
        let kind = match &self.kind {
            VerdictKind::ExactDim(n) => format!("ExactDim({n})"),
            VerdictKind::Iso(d) => format!("Iso onto {d}"),
            VerdictKind::UpperBoundCokernel(n) => format!("injective, cokernel dimension <= {n}"),
            VerdictKind::ExactCokernel(n) => format!("injective, cokernel dimension = {n}"),
            VerdictKind::Zero => "Zero".to_string(),
            VerdictKind::Inconclusive => "Inconclusive".to_string(),
        };
        let mut out = kind;
        if let Some(b) = self.branch {
            out.push_str(&format!(" [{b:?}]"));
        }
        if !self.conditional_on.is_empty() {
            out.push_str(&format!("\n  assuming: {}", self.conditional_on.join("; ")));
        }
        out.push_str(&format!("\n  citations: {}", self.citations.join("; ")));
        for n in &self.notes {
            out.push_str(&format!("\n  note: {n}"));
        }
        out
    }
}

pub const HORD_CONJECTURE: &str = "graded pieces of HOrd^1 at w = e (n = 1)";
pub const EMERTON_CONJECTURE: &str = "Emerton: derived functors of Ord agree with HOrd";

fn both_supersingular(sc: &Scenario) -> bool {
    sc.sigma.supersingular && sc.sigma_prime.supersingular
}

fn both_supercuspidal(sc: &Scenario) -> bool {
    sc.sigma.is_supercuspidal() && sc.sigma_prime.is_supercuspidal()
}

fn incomparable(sc: &Scenario) -> bool {
    !sc.i.is_subset(sc.j) && !sc.j.is_subset(sc.i)
}

fn zcnx_hypotheses(datum: &RootDatum, sc: &Scenario) -> bool {
    datum.is_split() && datum.isogeny_flags().center_connected && both_supersingular(sc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ZcnxCase {
    TwistNotId(usize),
    Iso,
    P2,
}

fn zcnx_case(datum: &RootDatum, sc: &Scenario) -> Option<ZcnxCase> {
    // Split data have Δ¹ = Δ, so Δ_L^⊥ = Δ_L^{⊥,1}.
    let perp = datum.perp(sc.i).0;
    if let Some(a) = perp.iter().find(|&a| sc.twist(a) == Relation::Yes) {
        if sc.rel_id == Relation::No {
            return Some(ZcnxCase::TwistNotId(a));
        }
    }
    let all_no = perp.iter().all(|a| sc.twist(a) == Relation::No);
    if (sc.rel_id == Relation::Yes && !sc.p_is_2) || all_no {
        return Some(ZcnxCase::Iso);
    }
    sc.p_is_2.then_some(ZcnxCase::P2)
}

/// Guards of the decision tree, each evaluated on its own.
pub fn branch_guards(datum: &RootDatum, sc: &Scenario) -> Vec<Branch> {
    let (i, j, e) = (sc.i, sc.j, sc.e);
    let equal = i == j;
    let perp1 = datum.perp(i).1;
    let b1 = incomparable(sc);
    let b2 = !incomparable(sc) && e > 1;
    let b3 = !incomparable(sc)
        && e == 1
        && ((j.is_proper_subset(i) && sc.sigma.right_cuspidal)
            || (i.is_proper_subset(j) && sc.sigma_prime.left_cuspidal));
    let b4 = e == 1 && equal && zcnx_hypotheses(datum, sc) && zcnx_case(datum, sc).is_some();
    let b5 = e == 1
        && equal
        && !b4
        && both_supercuspidal(sc)
        && perp1.iter().all(|a| sc.twist(a) == Relation::No);
    let b6 = e == 1 && equal && !b4 && !b5 && (sc.sigma.right_cuspidal || sc.sigma_prime.left_cuspidal);
    let b7 = !(b1 || b2 || b3 || b4 || b5 || b6);
    [(b1, Branch::B1), (b2, Branch::B2), (b3, Branch::B3), (b4, Branch::B4), (b5, Branch::B5), (b6, Branch::B6), (b7, Branch::B7)]
        .into_iter()
        .filter(|(g, _)| *g)
        .map(|(_, b)| b)
        .collect()
}

fn ext_l(datum: &RootDatum, levi: Subset, left: &str, right: &str) -> String {
    format!("Ext^1_L[{}]({left}, {right})", datum.format_subset(levi))
}

fn ind(datum: &RootDatum, levi: Subset, par: Subset, what: &str) -> String {
    format!("Ind_[{}/{}] {what}", datum.format_subset(levi), datum.format_subset(par))
}

/// Decision tree for Ext¹_G(Ind σ', Ind σ); the first matching branch wins.
pub fn ext1_verdict(datum: &RootDatum, sc: &Scenario) -> Result<ExtVerdict> {
    let violations = check_consistency(datum, sc);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.describe(datum)).collect();
        return Err(Error::InconsistentScenario(text.join("; ")));
    }
    let (i, j) = (sc.i, sc.j);
    let perp1 = datum.perp(i).1;
    let branch = branch_guards(datum, sc)[0];
    let b = Some(branch);
    let v = match branch {
        Branch::B1 => {
            if sc.sigma.right_cuspidal && sc.sigma_prime.left_cuspidal && sc.conjecture_assumed {
                ExtVerdict::new(VerdictKind::Zero, b, "Ext1 vanishing for non-nested parabolics").assuming(HORD_CONJECTURE)
            } else {
                ExtVerdict::new(VerdictKind::Inconclusive, b, "Ext1 vanishing for non-nested parabolics")
            }
        }
        Branch::B2 => {
            if i == j {
                ExtVerdict::new(VerdictKind::Iso(ext_l(datum, i, "sigma'", "sigma")), b, "Ext1 over F != Q_p")
            } else if j.is_subset(i) {
                let d = ext_l(datum, i, &ind(datum, i, j, "sigma'"), "sigma");
                ExtVerdict::new(VerdictKind::Iso(d), b, "Ext1 over F != Q_p, P' in P")
            } else {
                let d = ext_l(datum, j, "sigma'", &ind(datum, j, i, "sigma"));
                ExtVerdict::new(VerdictKind::Iso(d), b, "Ext1 over F != Q_p, P in P'")
            }
        }
        Branch::B3 => {
            if j.is_proper_subset(i) && sc.sigma.right_cuspidal {
                let d = ext_l(datum, i, &ind(datum, i, j, "sigma'"), "sigma");
                ExtVerdict::new(VerdictKind::Iso(d), b, "Ext1 over Q_p (ii)")
            } else {
                let d = ext_l(datum, j, "sigma'", &ind(datum, j, i, "sigma"));
                ExtVerdict::new(VerdictKind::Iso(d), b, "Ext1 over Q_p (iii)")
            }
        }
        Branch::B4 => match zcnx_case(datum, sc).expect("guard") {
            ZcnxCase::TwistNotId(a) => ExtVerdict::new(VerdictKind::ExactDim(1), b, "Ext1 split, connected centre (i)")
                .note(format!(
                    "sigma' is the twist by {}; {} = 0",
                    datum.labels()[a],
                    ext_l(datum, i, "sigma'", "sigma")
                )),
            ZcnxCase::Iso => ExtVerdict::new(
                VerdictKind::Iso(ext_l(datum, i, "sigma'", "sigma")),
                b,
                "Ext1 split, connected centre (ii)",
            ),
            ZcnxCase::P2 => {
                let perp = datum.perp(i).0;
                let cite = "Ext1 split, connected centre (iii)";
                let note = "p = 2: omega is trivial, rel_twist reads sigma' = sigma^alpha".to_string();
                if perp.iter().any(|a| sc.twist(a) == Relation::Unknown) {
                    let n = perp.iter().filter(|&a| sc.twist(a) != Relation::No).count() as u32;
                    ExtVerdict::new(VerdictKind::UpperBoundCokernel(n), b, cite).note(note)
                } else {
                    let n = perp.iter().filter(|&a| sc.twist(a) == Relation::Yes).count() as u32;
                    ExtVerdict::new(VerdictKind::ExactCokernel(n), b, cite).note(note)
                }
            }
        },
        Branch::B5 => ExtVerdict::new(VerdictKind::Iso(ext_l(datum, i, "sigma'", "sigma")), b, "Ext1 over Q_p (i)"),
        Branch::B6 => {
            let n = perp1.iter().filter(|&a| sc.twist(a) != Relation::No).count() as u32;
            ExtVerdict::new(VerdictKind::UpperBoundCokernel(n), b, "Ext1 over Q_p, cokernel bound")
        }
        Branch::B7 => ExtVerdict::new(VerdictKind::Inconclusive, b, "Ext1 decision tree"),
    };
    Ok(v)
}

/// The degree-n map Ext^n_L(σ', σ) → Ext^n_G(Ind σ', Ind σ) for I = J.
pub fn extn_mode(datum: &RootDatum, sc: &Scenario, n: u32) -> Result<ExtVerdict> {
    let assumed = sc.emerton_conjecture_assumed.ok_or(Error::MissingFlag("emerton_conjecture_assumed"))?;
    if sc.i != sc.j {
        return Err(Error::RequiresEqualLevis);
    }
    let violations = check_consistency(datum, sc);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.describe(datum)).collect();
        return Err(Error::InconsistentScenario(text.join("; ")));
    }
    let i = sc.i;
    let cite = "Ext^n comparison via the Ord spectral sequence";
    let iso = || VerdictKind::Iso(format!("Ext^{n}_L[{}](sigma', sigma)", datum.format_subset(i)));
    if n == 0 {
        return Ok(ExtVerdict::new(iso(), None, "full faithfulness of parabolic induction"));
    }
    if sc.e == 1 && n == 1 {
        return ext1_verdict(datum, sc);
    }
    if !assumed || n > sc.e {
        return Ok(ExtVerdict::new(VerdictKind::Inconclusive, None, cite));
    }
    if n < sc.e {
        return Ok(ExtVerdict::new(iso(), None, cite).assuming(EMERTON_CONJECTURE));
    }
    if zcnx_hypotheses(datum, sc) {
        if let Some(ZcnxCase::TwistNotId(a)) = zcnx_case(datum, sc) {
            return Ok(ExtVerdict::new(VerdictKind::ExactDim(1), None, "Ext^e split, connected centre")
                .assuming(EMERTON_CONJECTURE)
                .note(format!("sigma' is the twist by {}; Ext^{n}_L(sigma', sigma) = 0", datum.labels()[a])));
        }
    }
    if both_supercuspidal(sc) {
        let perp1 = datum.perp(i).1;
        let bound = perp1.iter().filter(|&a| sc.twist(a) != Relation::No).count() as u32;
        return Ok(ExtVerdict::new(VerdictKind::UpperBoundCokernel(bound), None, cite).assuming(EMERTON_CONJECTURE));
    }
    Ok(ExtVerdict::new(VerdictKind::Inconclusive, None, cite))
}
