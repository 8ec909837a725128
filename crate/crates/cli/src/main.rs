mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use ndsig::{
    analyze, hunt, parse_polynomial, parse_rational, ratio_report, support_of, verify_erasures,
    verify_towards, Bindings, Completion, DegenerationRecord, Error, ExponentVector, FamilySpec,
    PaperFamily, ReportDocument, SearchRecord, Support,
};

/// Milnor number, signature and Jordan blocks of Newton-nondegenerate
/// surface singularities, and their change under erasing a diagram vertex.
#[derive(Parser, Debug)]
#[command(name = "ndsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of one germ.
    Analyze {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        json: bool,
    },
    /// Erase vertices of the Newton diagram and compare predicted and actual changes.
    #[command(group(ArgGroup::new("how").required(true).args(["vertex", "to"])))]
    Degenerate {
        #[command(flatten)]
        germ: GermArgs,
        /// Vertex to erase, as `a,b,c`; repeat to erase several in turn.
        #[arg(long, value_name = "A,B,C")]
        vertex: Vec<ExponentVector>,
        /// Special fibre polynomial; the needed erasures are found automatically.
        #[arg(long, value_name = "POLY")]
        to: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Look for degenerations that raise the signature.
    #[command(group(ArgGroup::new("mode").required(true).args(["family", "random", "grid"])))]
    Search(SearchArgs),
    /// Write the compact faces as an OBJ mesh and an SVG drawing.
    Render {
        #[command(flatten)]
        germ: GermArgs,
        /// Translate by (-1,-1,-1), i.e. draw the diagram of f/xyz.
        #[arg(long)]
        shift: bool,
        /// Output path; `.obj` and `.svg` are appended.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct GermArgs {
    /// Polynomial in x, y, z, e.g. "x*y*z + x^4 + y^5 + z^6".
    poly: String,
    /// Bind a parameter to a rational value, e.g. --set t=1/2.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Exponent of the pure powers added to non-convenient germs.
    #[arg(long, value_name = "N")]
    completion: Option<u32>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_parser = ["example1", "t-family"])]
    family: Option<String>,
    /// Range of k for the t-family, e.g. 1..6 (inclusive).
    #[arg(long, default_value = "1..6")]
    k: String,
    #[arg(long)]
    random: bool,
    #[arg(long)]
    grid: bool,
    #[arg(long = "box", default_value_t = 3)]
    box_size: u32,
    #[arg(long, default_value_t = 4)]
    points: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also print signature growth relative to the Milnor numbers.
    #[arg(long)]
    ratios: bool,
    #[arg(long)]
    json: bool,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax { .. }
            | Error::UnboundParameter { .. }
            | Error::NegativeExponent { .. }
            | Error::ZeroPolynomial
            | Error::EmptySupport
            | Error::CompletionTooSmall { .. }
            | Error::DegenerateSupport
            | Error::NotConvenient
            | Error::InvalidFamilySpec(_)
            | Error::TargetNotContained
            | Error::EmptyList
            | Error::EmptyFindings => 2,
            Error::AssumptionViolated(_) => 3,
            Error::NonIsolated(_) | Error::NegativeMuMinus(_) => 4,
            Error::NotAVertex(_) | Error::NotInteriorLatticePoint(_) => 5,
            Error::LemmaViolated { .. } => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

struct Germ {
    text: String,
    bindings: Bindings,
    support: Support,
    completion: Completion,
}

fn parse_bindings(set: &[String]) -> Result<Bindings, Failure> {
    let mut b = Bindings::new();
    for item in set {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--set expects NAME=VALUE, got `{item}`")))?;
        let v = parse_rational(value.trim())
            .ok_or_else(|| Failure::usage(format!("`{value}` is not a rational number")))?;
        b.insert(name.trim().to_string(), v);
    }
    Ok(b)
}

fn parse_support(text: &str, bindings: &Bindings) -> Result<Support, Failure> {
    let parsed = parse_polynomial(text, bindings).map_err(|e| {
        let mut f = Failure::from(e.clone());
        let pos = match e {
            Error::Syntax { pos, .. }
            | Error::UnboundParameter { pos, .. }
            | Error::NegativeExponent { pos } => Some(pos),
            _ => None,
        };
        if let Some(pos) = pos {
            f.message = format!("{}\n  {text}\n  {:pos$}^", f.message, "");
        }
        f
    })?;
    Ok(support_of(&parsed)?)
}

impl Germ {
    fn from_args(a: &GermArgs) -> Result<Self, Failure> {
        let bindings = parse_bindings(&a.set)?;
        let support = parse_support(&a.poly, &bindings)?;
        Ok(Self {
            text: a.poly.clone(),
            support,
            bindings,
            completion: a.completion.map_or(Completion::Auto, Completion::Exponent),
        })
    }

    fn document(&self) -> ReportDocument {
        let mut doc = ReportDocument::new();
        doc.input = Some(self.text.clone());
        doc.bindings = self
            .bindings
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect();
        doc.support = Some(self.support.clone());
        doc
    }
}

fn json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn describe_completion(n: Option<u32>) -> String {
    match n {
        None => "none (convenient)".into(),
        Some(n) => format!("missing pure powers added with exponent {n}"),
    }
}

fn cmd_analyze(germ: &GermArgs, as_json: bool) -> CmdResult {
    let g = Germ::from_args(germ)?;
    let a = analyze(&g.support, g.completion)?;
    let mut doc = g.document().with_invariants(&a.invariants);
    doc.completion_n = a.completion;
    if as_json {
        return Ok(json(&doc));
    }
    let inv = &a.invariants;
    let mut out = String::new();
    let _ = writeln!(out, "support     {}", g.support);
    let _ = writeln!(out, "completion  {}", describe_completion(a.completion));
    let _ = writeln!(
        out,
        "points      {} below, {} on the diagram ({} in 2-face interiors)",
        inv.spectral.p_below, inv.spectral.p_on, inv.spectral.p_face_interior
    );
    let _ = writeln!(
        out,
        "jordan      J1 = {}, J2 = {}",
        inv.jordan.j1, inv.jordan.j2
    );
    out.push('\n');
    out.push_str(&ndsig::format_table(&[("f".into(), inv.row())]));
    Ok(out)
}

fn table_order(d: &ndsig::Deltas) -> [i64; 5] {
    [d.mu, d.mu_plus, d.mu_zero, d.mu_minus, d.sign]
}

fn cmd_degenerate(
    germ: &GermArgs,
    vertices: &[ExponentVector],
    to: Option<&str>,
    as_json: bool,
) -> CmdResult {
    let g = Germ::from_args(germ)?;
    let path = match to {
        Some(target) => {
            let t = parse_support(target, &g.bindings)?;
            verify_towards(&g.support, &t, g.completion)?
        }
        None => verify_erasures(&g.support, vertices, g.completion)?,
    };
    let record = DegenerationRecord::from(&path);
    let mut doc = g.document().with_invariants(&path.before);
    doc.completion_n = path.completion;
    doc.degeneration = Some(record.clone());
    if as_json {
        return Ok(json(&doc));
    }

    let mut out = String::new();
    let _ = writeln!(out, "support     {}", g.support);
    let _ = writeln!(out, "completion  {}", describe_completion(path.completion));
    out.push('\n');
    for (i, s) in record.steps.iter().enumerate() {
        let _ = writeln!(out, "step {}: erase {}", i + 1, s.erased);
        let _ = writeln!(
            out,
            "  6V = {}  N_new = {}  N_inner = {}  N_outer = {}  delta = {}  collar triangles = {}",
            s.six_v, s.n_new, s.n_inner, s.n_outer, s.delta, s.collar_triangles
        );
        let list = |v: &[ExponentVector]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        let _ = writeln!(out, "  new   {}", list(&s.new_points));
        let _ = writeln!(out, "  inner {}", list(&s.inner_points));
        let _ = writeln!(out, "  outer {}", list(&s.outer_points));
    }
    out.push('\n');
    out.push_str(&ndsig::format_table(&[
        ("X_0".into(), record.special.row()),
        ("X_t".into(), path.before.row()),
        ("predicted change".into(), table_order(&record.predicted)),
        ("actual change".into(), table_order(&record.direct)),
    ]));
    out.push('\n');
    let _ = writeln!(
        out,
        "{}: signature changes by {}",
        if record.consistent {
            "consistent"
        } else {
            "INCONSISTENT"
        },
        record.direct.sign
    );
    Ok(out)
}

fn parse_k_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::usage(format!("--k expects a range such as 1..6, got `{s}`"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let k = num(s)?;
            Ok((k, k))
        }
    }
}

fn cmd_search(a: &SearchArgs) -> CmdResult {
    let spec = match a.family.as_deref() {
        Some("example1") => FamilySpec::paper(PaperFamily::Example1),
        Some(_) => {
            let (k_min, k_max) = parse_k_range(&a.k)?;
            FamilySpec::paper(PaperFamily::TFamily { k_min, k_max })
        }
        None if a.random => FamilySpec::random(a.box_size, a.points, a.count, a.seed),
        None => FamilySpec::grid(a.box_size, a.points, a.count),
    };
    let result = hunt(&spec)?;
    let ratios = if a.ratios && !result.findings.is_empty() {
        Some(ratio_report(&result.findings)?)
    } else {
        None
    };
    if a.json {
        let mut doc = ReportDocument::new();
        doc.search = Some(SearchRecord {
            spec,
            findings: result.findings,
            stats: result.stats,
            ratios,
        });
        return Ok(json(&doc));
    }

    let mut out = String::new();
    let st = &result.stats;
    let _ = writeln!(
        out,
        "candidates {}  erasures tried {}  compared {}  consistent {}  inconsistent {}",
        st.candidates, st.attempted, st.processed, st.consistent, st.inconsistent
    );
    if let Some(d) = st.min_delta {
        let _ = writeln!(out, "smallest delta {d}");
    }
    for (reason, n) in &st.skipped {
        let _ = writeln!(out, "skipped {n:>6}  {reason}");
    }
    out.push('\n');
    let _ = writeln!(out, "{} findings", result.findings.len());
    for f in &result.findings {
        let erased: Vec<String> = f.erased.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "dsign {:>3}  mu {:>4} -> {:<4}  erase {}  support {}",
            f.sign_delta,
            f.generic.mu,
            f.special.mu,
            erased.join(" "),
            f.support
        );
    }
    if let Some(r) = ratios {
        out.push('\n');
        for row in &r.rows {
            let _ = writeln!(
                out,
                "dsign/mu(X_0) = {}  dsign/mu(X_t) = {}",
                row.per_mu_special, row.per_mu_generic
            );
        }
        let _ = writeln!(
            out,
            "max dsign/mu(X_0) = {}  max dsign/mu(X_t) = {}",
            r.max_per_mu_special, r.max_per_mu_generic
        );
    }
    Ok(out)
}

fn output_stem(out: &Path) -> PathBuf {
    match out.extension().and_then(|e| e.to_str()) {
        Some("obj" | "svg") => out.with_extension(""),
        _ => out.to_path_buf(),
    }
}

fn cmd_render(germ: &GermArgs, shift: bool, out: &Path) -> CmdResult {
    let g = Germ::from_args(germ)?;
    let a = analyze(&g.support, g.completion)?;
    let hidden: Vec<ExponentVector> = a
        .support
        .iter()
        .filter(|p| !g.support.contains(p))
        .copied()
        .collect();
    let faces = render::visible_faces(&a.polyhedron, &hidden);
    let stem = output_stem(out);
    let mut written = String::new();
    for (ext, body) in [
        ("obj", render::to_obj(&faces, shift)),
        ("svg", render::to_svg(&faces, shift)),
    ] {
        let mut name = stem.clone().into_os_string();
        name.push(".");
        name.push(ext);
        let path = PathBuf::from(name);
        std::fs::write(&path, body).map_err(|e| Failure {
            code: 6,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        let _ = writeln!(written, "wrote {}", path.display());
    }
    let _ = writeln!(written, "{} compact faces", faces.len());
    Ok(written)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { germ, json } => cmd_analyze(germ, *json),
        Command::Degenerate {
            germ,
            vertex,
            to,
            json,
        } => cmd_degenerate(germ, vertex, to.as_deref(), *json),
        Command::Search(args) => cmd_search(args),
        Command::Render { germ, shift, out } => cmd_render(germ, *shift, out),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
