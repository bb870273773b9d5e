use bruhat_core::ext::{check_consistency, ext1_verdict, extn_mode};
use bruhat_core::grading::{full_profile, graded_pieces};
use bruhat_core::{
    build_datum, default_cases, parse_datum_spec, parse_scenario, sweep, Error, ExtVerdict, GradedTerm,
    GradingOptions, IsogenyFlags, Lattice, RootDatum, Side, SigmaDescriptor, Subset, SweepCase, WeylGroup,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bruhat", version, about = "Weyl group cosets, Bruhat order, graded pieces and Ext1 verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, Cartan matrix, root and group counts, isogeny flags.
    Info {
        datum: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Double coset representatives of W_I \ W / W_J with d_w and δ_w.
    Cosets {
        datum: PathBuf,
        #[command(flatten)]
        levis: Levis,
        #[arg(long)]
        json: bool,
    },
    /// Bruhat order: Hasse diagram or a single comparison.
    Bruhat {
        datum: PathBuf,
        #[arg(long, conflicts_with = "leq", required_unless_present = "leq")]
        list: bool,
        #[arg(long, num_args = 2, value_names = ["U", "W"])]
        leq: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Graded pieces of HOrd^n or H_n of a parabolic induction.
    Grading(GradingArgs),
    /// Ext1 verdict (or Ext^n with --n) for a scenario file.
    Ext {
        datum: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check against the brute-force oracle over all (I, J).
    Verify {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Comma separated preset types, e.g. `A2,B3,G2`; optional `/lattice` suffix.
        #[arg(long, value_delimiter = ',')]
        types: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Levis {
    /// Labels of I; "" for the empty set, "all" for every simple root.
    #[arg(long = "I", allow_hyphen_values = true)]
    i: String,
    #[arg(long = "J", allow_hyphen_values = true)]
    j: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Ord,
    Jacquet,
}

#[derive(Args)]
struct GradingArgs {
    datum: PathBuf,
    #[command(flatten)]
    levis: Levis,
    #[arg(long)]
    e: u32,
    #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
    n: Option<u32>,
    /// All degrees up to max(N, e·d_J).
    #[arg(long, value_name = "N")]
    profile: Option<u32>,
    /// supersingular, supercuspidal, right_cuspidal, left_cuspidal or none.
    #[arg(long, default_value = "none")]
    sigma: String,
    #[arg(long, value_enum, default_value = "ord")]
    side: SideArg,
    #[arg(long)]
    opposite: bool,
    /// Report unproven terms as unknown.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Domain(String),
    Divergence(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn load_datum(path: &Path) -> Result<RootDatum, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(build_datum(&parse_datum_spec(&text)?)?)
}

fn load_group(path: &Path) -> Result<WeylGroup, Failure> {
    Ok(WeylGroup::generate(&load_datum(path)?)?)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable view")
}

fn matrix(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| format!("  [{}]", r.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join("")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn braces(d: &RootDatum, s: Subset) -> String {
    format!("{{{}}}", d.format_subset(s))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct InfoView {
    pub name: String,
    pub rank: usize,
    pub semisimple_rank: usize,
    pub labels: Vec<String>,
    pub multiplicity: Vec<u32>,
    pub split: bool,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: usize,
    pub weyl_order: usize,
    pub isogeny: IsogenyFlags,
}

fn info(path: &Path, as_json: bool) -> Outcome {
    let g = load_group(path)?;
    let d = g.datum();
    let view = InfoView {
        name: d.name().to_string(),
        rank: d.rank(),
        semisimple_rank: d.num_simple(),
        labels: d.labels().to_vec(),
        multiplicity: d.multiplicities().to_vec(),
        split: d.is_split(),
        cartan: d.cartan().to_vec(),
        positive_roots: d.num_positive_roots(),
        weyl_order: g.order(),
        isogeny: d.isogeny_flags(),
    };
    if as_json {
        return Ok(json(&view));
    }
    let f = view.isogeny;
    let yn = |b: bool| if b { "yes" } else { "no" };
    Ok(format!(
        "datum: {}\nrank: {}\nsimple roots: {} ({})\nmultiplicities: {:?}\nsplit: {}\nCartan matrix:\n{}\npositive roots: {}\n|W|: {}\nfundamental weights: {}\nfundamental coweights: {}\nderived subgroup simply connected: {}\ncentre connected: {}",
        view.name,
        view.rank,
        view.semisimple_rank,
        view.labels.join(", "),
        view.multiplicity,
        view.split,
        matrix(&view.cartan),
        view.positive_roots,
        view.weyl_order,
        yn(f.fundamental_weights_exist),
        yn(f.fundamental_coweights_exist),
        yn(f.derived_simply_connected),
        yn(f.center_connected),
    ))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CosetRow {
    pub word: String,
    pub length: usize,
    pub d: u64,
    pub delta: Vec<i64>,
    /// J ∩ w^{-1}(I).
    pub k: Vec<String>,
    /// I ∩ w(J).
    pub m: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CosetsView {
    pub datum: String,
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub representatives: Vec<CosetRow>,
}

fn cosets(path: &Path, levis: &Levis, as_json: bool) -> Outcome {
    let g = load_group(path)?;
    let d = g.datum();
    let (i, j) = (d.parse_subset(&levis.i)?, d.parse_subset(&levis.j)?);
    let table = g.double_coset_table(i, j);
    let representatives = table
        .per_rep
        .iter()
        .map(|r| CosetRow {
            word: g.format_word(r.rep),
            length: g.length(r.rep),
            d: r.d,
            delta: r.delta.clone(),
            k: d.subset_labels(r.k),
            m: d.subset_labels(r.i_meet),
        })
        .collect();
    let view = CosetsView { datum: d.name().to_string(), i: d.subset_labels(i), j: d.subset_labels(j), representatives };
    if as_json {
        return Ok(json(&view));
    }
    let mut out = format!(
        "{} double cosets W_I \\ W / W_J for I = {}, J = {}\n",
        view.representatives.len(),
        braces(d, i),
        braces(d, j)
    );
    out.push_str(&format!("{:<24} {:>3} {:>4}  {:<20} {:<12} {}\n", "w", "len", "d", "delta", "K", "I∩w(J)"));
    for r in &view.representatives {
        let delta = format!("({})", r.delta.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
        let (k, m) = (format!("{{{}}}", r.k.join(",")), format!("{{{}}}", r.m.join(",")));
        out.push_str(&format!(
            "{:<24} {:>3} {:>4}  {:<20} {:<12} {}\n",
            r.word,
            r.length,
            r.d,
            delta,
            k,
            m
        ));
    }
    Ok(out.trim_end().to_string())
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct HasseRow {
    pub word: String,
    pub length: usize,
    pub covers: Vec<String>,
}

fn bruhat(path: &Path, leq: Option<&[String]>, as_json: bool) -> Outcome {
    let g = load_group(path)?;
    if let Some([u, w]) = leq {
        let (u, w) = (g.parse_word(u)?, g.parse_word(w)?);
        let ans = g.bruhat_leq(u, w);
        if as_json {
            return Ok(json(&serde_json::json!({"u": g.format_word(u), "w": g.format_word(w), "leq": ans})));
        }
        return Ok(format!("{} <= {}: {ans}", g.format_word(u), g.format_word(w)));
    }
    let rows: Vec<HasseRow> = g
        .elements()
        .map(|w| HasseRow {
            word: g.format_word(w),
            length: g.length(w),
            covers: g.lower_covers(w).into_iter().map(|u| g.format_word(u)).collect(),
        })
        .collect();
    if as_json {
        return Ok(json(&rows));
    }
    Ok(rows
        .iter()
        .map(|r| format!("{:<28} ℓ={:<3} covers: {}", r.word, r.length, r.covers.join(" | ")))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn status_text(t: &GradedTerm) -> String {
    use bruhat_core::TermStatus::*;
    match t.status {
        Zero(r) => format!("zero ({})", r.describe()),
        ProvenNonzeroForm(d) => format!("proven ({d:?})"),
        Conjectural => "conjectural".to_string(),
        Unknown => "unknown".to_string(),
    }
}

fn term_lines(d: &RootDatum, terms: &[GradedTerm]) -> String {
    terms
        .iter()
        .map(|t| {
            let mut s = format!("  w = {:<16} d_w = {:<3} {}\n      {}", t.word, t.d_w, status_text(t), t.render(d));
            if let Some(n) = &t.note {
                s.push_str(&format!("\n      note: {n}"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn grading(a: &GradingArgs) -> Outcome {
    let g = load_group(&a.datum)?;
    let d = g.datum();
    let (i, j) = (d.parse_subset(&a.levis.i)?, d.parse_subset(&a.levis.j)?);
    let sigma = SigmaDescriptor::parse_flags("sigma", &a.sigma)?;
    let side = match a.side {
        SideArg::Ord => Side::Ord,
        SideArg::Jacquet => Side::Jacquet,
    };
    let opts = GradingOptions { side, opposite: a.opposite, strict: a.strict };
    if let Some(n) = a.n {
        let terms = graded_pieces(&g, i, j, a.e, n, &sigma, &opts)?;
        if a.json {
            return Ok(json(&terms));
        }
        let live = terms.iter().filter(|t| !t.status.is_zero()).count();
        return Ok(format!("degree {n}: {live} of {} terms nonzero\n{}", terms.len(), term_lines(d, &terms)));
    }
    let report = full_profile(&g, i, j, a.e, &sigma, a.profile.unwrap_or(0), &opts)?;
    if a.json {
        return Ok(json(&report));
    }
    let mut out = format!("I = {}, J = {}, e = {}, degrees 0..={}\n", braces(d, i), braces(d, j), a.e, report.max_degree);
    for (n, terms) in &report.terms {
        let live: Vec<GradedTerm> = terms.iter().filter(|t| !t.status.is_zero()).cloned().collect();
        out.push_str(&format!("degree {n}: {} nonzero\n", live.len()));
        if !live.is_empty() {
            out.push_str(&term_lines(d, &live));
            out.push('\n');
        }
    }
    for (name, ok) in &report.corollary_checks {
        out.push_str(&format!("check {name}: {}\n", if *ok { "ok" } else { "FAILED" }));
    }
    Ok(out.trim_end().to_string())
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ExtView {
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub degree: u32,
    pub verdict: ExtVerdict,
}

fn ext(path: &Path, scenario: &Path, n: Option<u32>, as_json: bool) -> Outcome {
    let d = load_datum(path)?;
    let text =
        std::fs::read_to_string(scenario).map_err(|e| Failure::Input(format!("{}: {e}", scenario.display())))?;
    let sc = parse_scenario(&text, &d)?;
    let violations = check_consistency(&d, &sc);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {}", v.describe(&d))).collect();
        return Err(Failure::Domain(format!("inconsistent scenario:\n{}", lines.join("\n"))));
    }
    let verdict = match n {
        Some(n) => extn_mode(&d, &sc, n)?,
        None => ext1_verdict(&d, &sc)?,
    };
    let view = ExtView { i: d.subset_labels(sc.i), j: d.subset_labels(sc.j), degree: n.unwrap_or(1), verdict };
    if as_json {
        return Ok(json(&view));
    }
    Ok(format!(
        "Ext^{} for I = {}, J = {}, e = {}\n{}",
        view.degree,
        braces(&d, sc.i),
        braces(&d, sc.j),
        sc.e,
        view.verdict.render()
    ))
}

fn parse_case(text: &str) -> Result<SweepCase, Failure> {
    let (t, l) = text.split_once('/').unwrap_or((text, "simply_connected"));
    let lattice: Lattice = l.parse()?;
    let case = SweepCase::new(t.trim(), lattice);
    case.spec()?;
    Ok(case)
}

fn verify(max_rank: usize, types: Option<&[String]>, as_json: bool) -> Outcome {
    let cases = match types {
        Some(ts) => ts.iter().filter(|t| !t.trim().is_empty()).map(|t| parse_case(t)).collect::<Result<Vec<_>, _>>()?,
        None => default_cases(),
    };
    let reports = sweep(&cases, max_rank);
    let bad: Vec<_> = reports.iter().filter(|r| !r.agreement).collect();
    let text = if as_json {
        json(&reports)
    } else if bad.is_empty() {
        format!("all {} cases agree", reports.len())
    } else {
        let mut s = format!("{} of {} cases diverge\n", bad.len(), reports.len());
        for r in &bad {
            let d = r.first_divergence().expect("divergent report");
            s.push_str(&format!("  {}: {} ({})\n", r.case_id(), d.check, d.detail));
        }
        s.trim_end().to_string()
    };
    if bad.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Divergence(text))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { datum, json } => info(&datum, json),
        Command::Cosets { datum, levis, json } => cosets(&datum, &levis, json),
        Command::Bruhat { datum, leq, json, .. } => bruhat(&datum, leq.as_deref(), json),
        Command::Grading(args) => grading(&args),
        Command::Ext { datum, scenario, n, json } => ext(&datum, &scenario, n, json),
        Command::Verify { max_rank, types, json } => verify(max_rank, types.as_deref(), json),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Divergence(m)) => {
            emit(&m);
            ExitCode::from(3)
        }
    }
}
