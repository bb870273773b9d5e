//! Based root data with root-space multiplicities.
//!
//! Coordinates: simple roots live in a fixed basis of X*, simple coroots in the
//! dual basis of X_*, and the pairing is the dot product. Reduced positive roots
//! are generated by closing the simple roots under simple reflections.

use crate::error::{Error, Result};
use crate::lattice::{dot, Smith};
use crate::subset::Subset;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Signed root index: `k < N` is the k-th positive root, `N + k` its negative.
pub type RootId = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    SimplyConnected,
    Adjoint,
    Gl,
}

impl std::str::FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simply_connected" | "sc" => Ok(Lattice::SimplyConnected),
            "adjoint" | "ad" => Ok(Lattice::Adjoint),
            "gl" => Ok(Lattice::Gl),
            _ => Err(Error::UnknownLattice(s.to_string())),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::SimplyConnected => "simply_connected",
            Lattice::Adjoint => "adjoint",
            Lattice::Gl => "gl",
        })
    }
}

/// A product of irreducible Cartan types, e.g. `A2`, `B3`, `A1xA1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanType {
    pub components: Vec<(char, usize)>,
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownType(s.to_string());
        let mut components = Vec::new();
        for part in s.split(['x', 'X', '×', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
            let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
            let ok = match letter {
                'A' => n >= 1,
                'B' | 'C' => n >= 2,
                'D' => n >= 3,
                'G' => n == 2,
                'F' => n == 4,
                _ => false,
            };
            if !ok {
                return Err(bad());
            }
            components.push((letter, n));
        }
        Ok(CartanType { components })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(c, n)| format!("{c}{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl CartanType {
    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Cartan matrix `C_ij = <α_i, α_j^∨>` in Bourbaki numbering, block diagonal over components.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.semisimple_rank();
        let mut c = vec![vec![0i64; s]; s];
        let mut off = 0;
        for &(letter, n) in &self.components {
            let block = irreducible_cartan(letter, n);
            for i in 0..n {
                for j in 0..n {
                    c[off + i][off + j] = block[i][j];
                }
            }
            off += n;
        }
        c
    }
}

fn irreducible_cartan(letter: char, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match letter {
        'A' => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        'B' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        'C' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        'G' => link(0, 1, -1, -3),
        'F' => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        _ => unreachable!("validated in parsing"),
    }
    c
}

/// Where the simple roots and coroots come from.
#[derive(Debug, Clone, PartialEq)]
pub enum DatumSource {
    Explicit {
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    },
    Preset {
        cartan_type: CartanType,
        lattice: Lattice,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatumSpec {
    pub name: Option<String>,
    pub source: DatumSource,
    pub multiplicity: Option<Vec<u32>>,
    pub labels: Option<Vec<String>>,
    pub split: Option<bool>,
}

impl DatumSpec {
    pub fn preset(cartan_type: &str, lattice: Lattice) -> Result<DatumSpec> {
        Ok(DatumSpec {
            name: None,
            source: DatumSource::Preset { cartan_type: cartan_type.parse()?, lattice },
            multiplicity: None,
            labels: None,
            split: None,
        })
    }

    pub fn with_multiplicity(mut self, m: Vec<u32>) -> DatumSpec {
        self.multiplicity = Some(m);
        self
    }

    pub fn with_name(mut self, name: &str) -> DatumSpec {
        self.name = Some(name.to_string());
        self
    }
}

/// A reduced positive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the basis of simple roots.
    pub coefficients: Vec<i64>,
    /// Coordinates in X*.
    pub vector: Vec<i64>,
    pub height: i64,
    pub multiplicity: u32,
    /// Simple roots with nonzero coefficient.
    pub support: Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyFlags {
    pub fundamental_weights_exist: bool,
    pub fundamental_coweights_exist: bool,
    pub center_connected: bool,
    pub derived_simply_connected: bool,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    multiplicity: Vec<u32>,
    labels: Vec<String>,
    split: bool,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    /// `reflections[i][k]`: image of the k-th positive root under s_i.
    reflections: Vec<Vec<RootId>>,
}

pub fn build_datum(spec: &DatumSpec) -> Result<RootDatum> {
    let (rank, roots, coroots, default_name) = match &spec.source {
        DatumSource::Explicit { rank, simple_roots, simple_coroots } => {
            (*rank, simple_roots.clone(), simple_coroots.clone(), "datum".to_string())
        }
        DatumSource::Preset { cartan_type, lattice } => {
            let (rank, r, c) = preset_matrices(cartan_type, *lattice)?;
            (rank, r, c, format!("{cartan_type}/{lattice}"))
        }
    };
    let name = spec.name.clone().unwrap_or(default_name);
    RootDatum::new(name, rank, roots, coroots, spec.multiplicity.clone(), spec.labels.clone(), spec.split)
}

type Matrices = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>);

fn preset_matrices(t: &CartanType, lattice: Lattice) -> Result<Matrices> {
    let c = t.cartan_matrix();
    let s = c.len();
    match lattice {
        Lattice::SimplyConnected => {
            let coroots = (0..s).map(|j| (0..s).map(|k| i64::from(j == k)).collect()).collect();
            Ok((s, c.clone(), coroots))
        }
        Lattice::Adjoint => {
            let roots = (0..s).map(|j| (0..s).map(|k| i64::from(j == k)).collect()).collect();
            let coroots = (0..s).map(|j| (0..s).map(|i| c[i][j]).collect()).collect();
            Ok((s, roots, coroots))
        }
        Lattice::Gl => {
            if let Some(&(l, n)) = t.components.iter().find(|c| c.0 != 'A') {
                return Err(Error::GlNonTypeA(format!("{l}{n}")));
            }
            let rank: usize = t.components.iter().map(|c| c.1 + 1).sum();
            let mut roots = Vec::with_capacity(s);
            let mut off = 0;
            for &(_, n) in &t.components {
                for i in 0..n {
                    let mut v = vec![0i64; rank];
                    v[off + i] = 1;
                    v[off + i + 1] = -1;
                    roots.push(v);
                }
                off += n + 1;
            }
            Ok((rank, roots.clone(), roots))
        }
    }
}

impl RootDatum {
    pub fn new(
        name: String,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        multiplicity: Option<Vec<u32>>,
        labels: Option<Vec<String>>,
        split: Option<bool>,
    ) -> Result<RootDatum> {
        let s = simple_roots.len();
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if s > 16 {
            return Err(Error::InvalidDatum("at most 16 simple roots are supported".into()));
        }
        if simple_coroots.len() != s {
            return Err(Error::InvalidDatum(format!(
                "{} simple roots but {} simple coroots",
                s,
                simple_coroots.len()
            )));
        }
        if let Some(v) = simple_roots.iter().chain(&simple_coroots).find(|v| v.len() != rank) {
            return Err(Error::InvalidDatum(format!("vector {v:?} does not have length {rank}")));
        }
        let multiplicity = multiplicity.unwrap_or_else(|| vec![1; s]);
        if multiplicity.len() != s {
            return Err(Error::InvalidDatum("multiplicity list has wrong length".into()));
        }
        if multiplicity.contains(&0) {
            return Err(Error::InvalidDatum("multiplicities must be positive".into()));
        }
        let labels = labels.unwrap_or_else(|| (1..=s).map(|i| format!("a{i}")).collect());
        if labels.len() != s {
            return Err(Error::InvalidDatum("label list has wrong length".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l == "e" || l == "all" || l.contains(|c: char| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidDatum(format!("label {l:?} is reserved or malformed")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidDatum(format!("duplicate label {l}")));
            }
        }
        let all_one = multiplicity.iter().all(|&d| d == 1);
        let split = split.unwrap_or(all_one);
        if split && !all_one {
            return Err(Error::InvalidDatum("split datum must have all multiplicities equal to 1".into()));
        }

        let cartan: Vec<Vec<i64>> = (0..s)
            .map(|i| (0..s).map(|j| dot(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        validate_cartan(&cartan)?;

        let mut datum = RootDatum {
            name,
            rank,
            simple_roots,
            simple_coroots,
            multiplicity,
            labels,
            split,
            cartan,
            positive: Vec::new(),
            index: HashMap::new(),
            reflections: Vec::new(),
        };
        datum.generate_roots()?;
        Ok(datum)
    }

    fn coeff_pairing(&self, coeffs: &[i64], i: usize) -> i64 {
        coeffs.iter().enumerate().map(|(j, c)| c * self.cartan[j][i]).sum()
    }

    fn generate_roots(&mut self) -> Result<()> {
        let s = self.simple_roots.len();
        let bound = s * s + 64 * s;
        let mut coeffs: Vec<Vec<i64>> = Vec::new();
        let mut mult: Vec<u32> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..s {
            let mut c = vec![0; s];
            c[i] = 1;
            seen.insert(c.clone(), coeffs.len());
            coeffs.push(c);
            mult.push(self.multiplicity[i]);
        }
        let mut head = 0;
        while head < coeffs.len() {
            for i in 0..s {
                let beta = coeffs[head].clone();
                if beta.iter().enumerate().all(|(j, &c)| c == i64::from(j == i)) {
                    continue;
                }
                let mut img = beta;
                img[i] -= self.coeff_pairing(&coeffs[head], i);
                if img.iter().any(|&c| c < 0) {
                    return Err(Error::NonCrystallographic(
                        "a simple reflection sends a positive root to a mixed-sign vector".into(),
                    ));
                }
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), coeffs.len());
                    coeffs.push(img);
                    mult.push(mult[head]);
                    if coeffs.len() > bound {
                        return Err(Error::RootGenerationDiverged(bound));
                    }
                }
            }
            head += 1;
        }

        let mut order: Vec<usize> = (0..coeffs.len()).collect();
        order.sort_by(|&a, &b| {
            let ha: i64 = coeffs[a].iter().sum();
            let hb: i64 = coeffs[b].iter().sum();
            ha.cmp(&hb).then_with(|| coeffs[b].cmp(&coeffs[a]))
        });
        self.positive = order
            .iter()
            .map(|&k| {
                let c = coeffs[k].clone();
                let mut vector = vec![0i64; self.rank];
                for (j, &cj) in c.iter().enumerate() {
                    crate::lattice::add_scaled(&mut vector, &self.simple_roots[j], cj);
                }
                Root {
                    height: c.iter().sum(),
                    support: Subset::from_indices((0..s).filter(|&j| c[j] != 0)),
                    coefficients: c,
                    vector,
                    multiplicity: mult[k],
                }
            })
            .collect();
        self.index = self.positive.iter().enumerate().map(|(k, r)| (r.coefficients.clone(), k)).collect();

        let n = self.positive.len();
        let mut reflections = vec![vec![0 as RootId; n]; s];
        for (i, row) in reflections.iter_mut().enumerate() {
            for k in 0..n {
                let mut img = self.positive[k].coefficients.clone();
                img[i] -= self.coeff_pairing(&self.positive[k].coefficients, i);
                row[k] = self.lookup_root(&img).expect("root set closed under simple reflections");
            }
        }
        self.reflections = reflections;

        for i in 0..s {
            for k in 0..n {
                let img = self.reflections[i][k] as usize % n;
                if self.positive[img].multiplicity != self.positive[k].multiplicity {
                    return Err(Error::MultiplicityNotInvariant(format!(
                        "s_{} relates roots of multiplicity {} and {}",
                        self.labels[i], self.positive[k].multiplicity, self.positive[img].multiplicity
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn all_simple(&self) -> Subset {
        Subset::full(self.num_simple())
    }

    pub fn pair(&self, chi: &[i64], lambda: &[i64]) -> i64 {
        dot(chi, lambda)
    }

    /// s_i(χ) = χ − <χ, α_i^∨> α_i on X*.
    pub fn reflect(&self, i: usize, chi: &[i64]) -> Vec<i64> {
        let c = dot(chi, &self.simple_coroots[i]);
        let mut out = chi.to_vec();
        crate::lattice::add_scaled(&mut out, &self.simple_roots[i], -c);
        out
    }

    /// s_i(λ) = λ − <α_i, λ> α_i^∨ on X_*.
    pub fn reflect_coweight(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = dot(&self.simple_roots[i], lambda);
        let mut out = lambda.to_vec();
        crate::lattice::add_scaled(&mut out, &self.simple_coroots[i], -c);
        out
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// Signed root id of a root given by simple-root coefficients.
    pub fn lookup_root(&self, coeffs: &[i64]) -> Option<RootId> {
        let n = self.positive.len();
        if let Some(&k) = self.index.get(coeffs) {
            return Some(k as RootId);
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&k| (n + k) as RootId)
    }

    pub fn is_positive_root(&self, id: RootId) -> bool {
        (id as usize) < self.positive.len()
    }

    pub fn negate_root(&self, id: RootId) -> RootId {
        let n = self.positive.len();
        let k = id as usize;
        (if k < n { k + n } else { k - n }) as RootId
    }

    /// Positive root underlying ±β.
    pub fn root_abs(&self, id: RootId) -> usize {
        id as usize % self.positive.len()
    }

    /// Simple-root coefficients of a signed root.
    pub fn root_coefficients(&self, id: RootId) -> Vec<i64> {
        let r = &self.positive[self.root_abs(id)].coefficients;
        if self.is_positive_root(id) {
            r.clone()
        } else {
            r.iter().map(|c| -c).collect()
        }
    }

    pub fn root_vector(&self, id: RootId) -> Vec<i64> {
        let r = &self.positive[self.root_abs(id)].vector;
        if self.is_positive_root(id) {
            r.clone()
        } else {
            r.iter().map(|c| -c).collect()
        }
    }

    /// Image of a signed root under the simple reflection s_i.
    pub fn reflect_root(&self, i: usize, id: RootId) -> RootId {
        let k = self.root_abs(id);
        let img = self.reflections[i][k];
        if self.is_positive_root(id) {
            img
        } else {
            self.negate_root(img)
        }
    }

    /// The simple root index equal to the given signed root, if any.
    pub fn as_simple(&self, id: RootId) -> Option<usize> {
        let k = id as usize;
        (k < self.num_simple()).then_some(k)
    }

    /// Positive roots whose support lies in `i`, i.e. Φ_I⁺ (as positive indices).
    pub fn parabolic_positive(&self, i: Subset) -> impl Iterator<Item = usize> + '_ {
        self.positive.iter().enumerate().filter(move |(_, r)| r.support.is_subset(i)).map(|(k, _)| k)
    }

    pub fn in_parabolic(&self, k: usize, i: Subset) -> bool {
        self.positive[k].support.is_subset(i)
    }

    /// Δ¹: simple roots of multiplicity one.
    pub fn delta_one(&self) -> Subset {
        Subset::from_indices((0..self.num_simple()).filter(|&i| self.multiplicity[i] == 1))
    }

    /// (I^⊥, I^{⊥,1}).
    pub fn perp(&self, i: Subset) -> (Subset, Subset) {
        let p = Subset::from_indices(
            (0..self.num_simple()).filter(|&a| i.iter().all(|b| self.cartan[a][b] == 0)),
        );
        (p, p.intersection(self.delta_one()))
    }

    /// Σ d_γ and Σ d_γ·γ over Φ⁺ ∖ Φ_K⁺.
    pub fn complement_data(&self, k: Subset) -> (u64, Vec<i64>) {
        let mut d = 0u64;
        let mut delta = vec![0i64; self.rank];
        for r in self.positive.iter().filter(|r| !r.support.is_subset(k)) {
            d += u64::from(r.multiplicity);
            crate::lattice::add_scaled(&mut delta, &r.vector, i64::from(r.multiplicity));
        }
        (d, delta)
    }

    pub fn isogeny_flags(&self) -> IsogenyFlags {
        let s = self.num_simple();
        let unit = |a: usize| (0..s).map(|b| i64::from(a == b)).collect::<Vec<_>>();
        let coroot_snf = Smith::new(&self.simple_coroots, self.rank);
        let root_snf = Smith::new(&self.simple_roots, self.rank);
        let weights = (0..s).all(|a| coroot_snf.solve(&unit(a)).is_some());
        let coweights = (0..s).all(|a| root_snf.solve(&unit(a)).is_some());
        IsogenyFlags {
            fundamental_weights_exist: weights,
            fundamental_coweights_exist: coweights,
            center_connected: coweights,
            derived_simply_connected: weights,
        }
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses `""` (∅), `"all"` (Δ) or a comma/space separated label list.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let t = text.trim();
        if t == "all" {
            return Ok(self.all_simple());
        }
        let mut out = Subset::EMPTY;
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            out.insert(self.label_index(tok)?);
        }
        Ok(out)
    }

    pub fn subset_labels(&self, i: Subset) -> Vec<String> {
        i.iter().map(|k| self.labels[k].clone()).collect()
    }

    pub fn format_subset(&self, i: Subset) -> String {
        self.subset_labels(i).join(",")
    }
}

fn validate_cartan(c: &[Vec<i64>]) -> Result<()> {
    let s = c.len();
    for i in 0..s {
        if c[i][i] != 2 {
            return Err(Error::NonCrystallographic(format!("C_{i}{i} = {} (expected 2)", c[i][i])));
        }
        for j in 0..s {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(Error::NonCrystallographic(format!("C_{}{} = {} > 0", i + 1, j + 1, c[i][j])));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::NonCrystallographic(format!(
                    "C_{}{} and C_{}{} disagree on vanishing",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
            if c[i][j] * c[j][i] > 3 {
                return Err(Error::NonCrystallographic(format!(
                    "C_{}{}·C_{}{} = {} exceeds 3",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    c[i][j] * c[j][i]
                )));
            }
        }
    }
    Ok(())
}
