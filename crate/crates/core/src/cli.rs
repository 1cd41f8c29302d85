//! The `skeinlab` command line. [`run`] takes the arguments and returns the
//! exit status and both output streams, so it can be driven from tests.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::alexander::{alexander_poly, trail_state_sum};
use crate::arrow::arrow_polynomial_capped;
use crate::bracket::{normalized_jones_capped, state_histogram, DEFAULT_CAP};
use crate::corpus::{classical_knots, corpus, virtual_knots};
use crate::diagram::{parse_braid, Diagram, Format};
use crate::fuzz::{fuzz, FuzzConfig, Invariant};
use crate::khovanov::{build_complex_capped, homology, homology_grid, verify_frobenius};
use crate::skein::{skein_eval, SkeinRule};
use crate::tensor::{compile_morse, contract, default_rmatrix, verify_tensor_axioms};
use crate::tl::{braid_to_tl, verify_relations};
use crate::vassiliev::{four_term_relations, jones_vassiliev_coeffs, relation_weight, WeightSystem};
use crate::{Error, LaurentPoly};

pub const SCHEMA: &str = "skeinlab/1";

#[derive(Parser, Debug)]
#[command(name = "skeinlab", version, about = "Exact knot and link invariants from diagram codes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an invariant of one diagram.
    Compute(ComputeArgs),
    /// Dump the cube of states: loop counts by tier, and marker trails for knots.
    States(StatesArgs),
    /// Run built-in verification suites.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Search experiments.
    Search {
        #[command(subcommand)]
        what: Search,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Braid word, e.g. "1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// PD code, e.g. "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)".
    #[arg(long)]
    pd: Option<String>,
    /// Signed Gauss code, e.g. "O1+O2+U1+U2+".
    #[arg(long)]
    gauss: Option<String>,
    /// File holding a code in any of the formats.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    source: Source,
    /// Format of --file (guessed when absent).
    #[arg(long)]
    format: Option<String>,
    /// Strand count for braid input (default: enough for the word).
    #[arg(long)]
    strands: Option<usize>,
    /// Largest number of classical crossings to accept (default depends on the invariant).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum InvariantArg {
    Bracket,
    F,
    Jones,
    Arrow,
    Alexander,
    Conway,
    Homflypt,
    Khovanov,
    Vcoeffs,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    /// Sum over states.
    State,
    /// Temperley-Lieb closure (braid input).
    Tl,
    /// Tensor contraction (braid input).
    Tensor,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    invariant: InvariantArg,
    /// Engine for the bracket.
    #[arg(long, value_enum, default_value_t = Method::State)]
    method: Method,
    /// Highest power of x for vcoeffs.
    #[arg(long, default_value_t = 4)]
    nmax: usize,
}

#[derive(Args, Debug)]
struct StatesArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Temperley-Lieb relations, tensor axioms, the Frobenius algebra, Lie data, and d∘d = 0.
    Axioms,
    /// Seeded Reidemeister walks on the built-in fixtures.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        moves: usize,
        #[arg(long, default_value_t = 20)]
        sequences: usize,
        /// Crossings a walk may add to its starting diagram.
        #[arg(long, default_value_t = 4)]
        headroom: usize,
        /// Only the classical fixtures.
        #[arg(long)]
        classical_only: bool,
    },
    /// Evaluate every four-term relation of a degree under the so(3) weights.
    Fourterm {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    /// Virtual knots with normalized bracket 1 and nontrivial Arrow polynomial.
    UnitJones {
        #[arg(long, default_value_t = 4)]
        max_classical: usize,
    },
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Verification(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(String, Value), Failure>;

/// Parses `args` (program name first) and runs the command. The thread count
/// comes from `SKEINLAB_THREADS` when set.
pub fn run<I, S>(args: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return RunOutput { status: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("usage error").trim();
            let msg = first.strip_prefix("error:").unwrap_or(first).trim();
            return RunOutput { status: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
    };
    let threads = std::env::var("SKEINLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    let pool = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return RunOutput { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let output = cli.output;
    let (status, text, value) = match pool.install(|| dispatch(cli.command)) {
        Ok((t, v)) => (0, t, v),
        Err(Failure::Verification(t, v)) => (1, t, v),
        Err(Failure::Input(msg)) => {
            return RunOutput { status: 2, stdout: String::new(), stderr: format!("error: {}\n", msg.replace('\n', " ")) };
        }
    };
    let stdout = match output {
        Output::Text => text,
        Output::Json => {
            let mut v = value;
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
    };
    let stderr = if status == 1 { "error: verification failed\n".to_string() } else { String::new() };
    RunOutput { status, stdout, stderr }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Compute(a) => compute(a),
        Command::States(a) => states(a),
        Command::Verify { what: Verify::Axioms } => verify_axioms(),
        Command::Verify { what: Verify::Fuzz { seed, moves, sequences, headroom, classical_only } } => {
            verify_fuzz(FuzzConfig { seed, moves, sequences, headroom, ..FuzzConfig::default() }, classical_only)
        }
        Command::Verify { what: Verify::Fourterm { degree } } => verify_fourterm(degree),
        Command::Search { what: Search::UnitJones { max_classical } } => {
            let r = crate::search::unit_jones_search(max_classical)?;
            Ok((r.text(), json!({ "command": "search unit-jones", "report": r })))
        }
    }
}

struct Input {
    diagram: Diagram,
    braid: Option<(usize, Vec<i64>)>,
    description: Value,
}

fn guess_format(text: &str) -> Format {
    let t = text.trim_start();
    if t.starts_with('{') {
        Format::Json
    } else if t.starts_with("PD") || t.starts_with('X') || t.starts_with('V') || t.starts_with("Loop") {
        Format::Pd
    } else if t.starts_with(['O', 'U', 'o', 'u']) {
        Format::Gauss
    } else {
        Format::Braid
    }
}

fn read_input(a: &InputArgs) -> Result<Input, Failure> {
    let s = &a.source;
    let (format, text, origin) = if let Some(b) = &s.braid {
        (Format::Braid, b.clone(), "braid")
    } else if let Some(p) = &s.pd {
        (Format::Pd, p.clone(), "pd")
    } else if let Some(g) = &s.gauss {
        (Format::Gauss, g.clone(), "gauss")
    } else {
        let path = s.file.as_ref().expect("one source is required");
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let format = match &a.format {
            Some(f) => f.parse()?,
            None => guess_format(&text),
        };
        (format, text, "file")
    };
    let description = json!({ "source": origin, "format": format!("{format:?}").to_lowercase(), "code": text.trim() });
    if format == Format::Braid {
        let word = parse_braid(&text)?;
        let needed = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        let n = a.strands.unwrap_or(needed);
        let diagram = Diagram::from_braid_word(n, &word)?;
        return Ok(Input { diagram, braid: Some((n, word)), description });
    }
    Ok(Input { diagram: Diagram::decode(format, &text)?, braid: None, description })
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn compute(a: ComputeArgs) -> Outcome {
    let input = read_input(&a.input)?;
    let d = &input.diagram;
    let cap = a.input.cap.unwrap_or(DEFAULT_CAP);
    let poly = |p: LaurentPoly| -> (String, Value) { (format!("{p}\n"), json!(p.to_string())) };
    let (text, value) = match a.invariant {
        InvariantArg::Bracket => match a.method {
            Method::State => poly(crate::bracket::bracket_poly_capped(d, cap)?),
            Method::Tl | Method::Tensor => {
                let (n, w) = input.braid.as_ref().ok_or_else(|| Failure::Input("this method needs --braid input".into()))?;
                if w.len() > cap {
                    return Err(Error::TooManyCrossings { crossings: w.len(), cap }.into());
                }
                if a.method == Method::Tl {
                    poly(braid_to_tl(*n, w)?.closure_trace()?)
                } else {
                    let total = contract(&compile_morse(*n, w)?, &default_rmatrix())?;
                    let q = total
                        .div_exact(&LaurentPoly::loop_value(), "A")
                        .ok_or_else(|| Failure::Input("contraction is not divisible by d".into()))?;
                    poly(q)
                }
            }
        },
        InvariantArg::F => poly(normalized_jones_capped(d, cap)?.f),
        InvariantArg::Jones => poly(normalized_jones_capped(d, cap)?.jones),
        InvariantArg::Arrow => {
            let v = arrow_polynomial_capped(d, cap)?;
            let text = format!("{}\n", v.normalized);
            (text, json!({ "raw": v.raw.to_string(), "normalized": v.normalized.to_string() }))
        }
        InvariantArg::Alexander => poly(alexander_poly(d)?),
        InvariantArg::Conway => poly(skein_eval(d, SkeinRule::Conway)?),
        InvariantArg::Homflypt => poly(skein_eval(d, SkeinRule::Homflypt)?),
        InvariantArg::Khovanov => {
            let cap = a.input.cap.unwrap_or(crate::khovanov::DEFAULT_CAP);
            let h = homology(&build_complex_capped(d, cap)?);
            (homology_grid(&h), json!(h))
        }
        InvariantArg::Vcoeffs => {
            let c: Vec<String> = jones_vassiliev_coeffs(d, a.nmax)?.iter().map(rational_text).collect();
            (format!("{}\n", c.join(", ")), json!(c))
        }
    };
    let inv = format!("{:?}", a.invariant).to_lowercase();
    Ok((text, json!({ "command": "compute", "input": input.description, "invariant": inv, "value": value })))
}

fn states(a: StatesArgs) -> Outcome {
    let input = read_input(&a.input)?;
    let d = &input.diagram;
    let hist = state_histogram(d, a.input.cap.unwrap_or(DEFAULT_CAP))?;
    let n = d.classical_indices().len() as i64;
    let mut text = format!("{} classical crossings, {} states\n", n, 1u64 << n);
    let mut tiers = Vec::new();
    let mut rows: Vec<((i64, usize), u64)> = hist.into_iter().collect();
    // by number of B-smoothings, then loops
    rows.sort_by_key(|((a, l), _)| ((n - a) / 2, *l));
    for ((a, loops), mult) in rows {
        let b = (n - a) / 2;
        text.push_str(&format!("tier {b}: {mult} states with {loops} loops\n"));
        tiers.push(json!({ "b": b, "loops": loops, "states": mult }));
    }
    let mut value = json!({ "command": "states", "input": input.description, "tiers": tiers });
    if d.is_classical() && d.component_count() == 1 && d.is_oriented() {
        if let Ok((sum, trails)) = trail_state_sum(d) {
            text.push_str(&format!("{} marker states, signed sum {}\n", trails.len(), sum));
            for t in &trails {
                let m: Vec<String> = t.markers.iter().map(|(c, s)| format!("{c}:{s}")).collect();
                text.push_str(&format!("  [{}] {:+} {}  loops {}\n", m.join(" "), t.sign, t.term, t.loops));
            }
            value["trails"] = json!(trails);
            value["trail_sum"] = json!(sum.to_string());
        }
    }
    Ok((text, value))
}

fn verify_axioms() -> Outcome {
    let mut rows: Vec<(String, String, bool)> = Vec::new();
    for (name, ok) in verify_relations(5) {
        rows.push(("temperley-lieb".into(), name, ok));
    }
    for c in verify_tensor_axioms(&default_rmatrix()) {
        rows.push(("tensor".into(), c.name.into(), c.pass));
    }
    for (name, ok) in verify_frobenius() {
        rows.push(("frobenius".into(), name, ok));
    }
    for (name, ok) in WeightSystem::so3_adjoint().checks() {
        rows.push(("so(3)".into(), name, ok));
    }
    for f in corpus().into_iter().filter(|f| f.crossings() <= 10) {
        let ok = build_complex_capped(&f.diagram(), 10).map(|c| c.is_complex()).unwrap_or(false);
        rows.push(("khovanov".into(), format!("d∘d = 0 on {}", f.name), ok));
    }
    let all = rows.iter().all(|r| r.2);
    let text: String = rows.iter().map(|(s, n, ok)| format!("{} {s}: {n}\n", if *ok { "pass" } else { "FAIL" })).collect();
    let value = json!({
        "command": "verify axioms",
        "pass": all,
        "checks": rows.iter().map(|(s, n, ok)| json!({ "suite": s, "name": n, "pass": ok })).collect::<Vec<_>>(),
    });
    if all {
        Ok((text, value))
    } else {
        Err(Failure::Verification(text, value))
    }
}

fn verify_fuzz(cfg: FuzzConfig, classical_only: bool) -> Outcome {
    let named = |v: Vec<crate::corpus::Fixture>| v.into_iter().map(|f| (f.name.clone(), f.diagram())).collect::<Vec<_>>();
    let classical = fuzz(&named(classical_knots()), &Invariant::CLASSICAL, &cfg)?;
    let mut text = format!("classical: {}", classical.summary());
    let mut pass = classical.passed();
    let mut value = json!({ "command": "verify fuzz", "config": cfg, "classical": classical });
    if !classical_only {
        let vcfg = FuzzConfig { virtual_moves: true, ..cfg.clone() };
        let virt = fuzz(&named(virtual_knots()), &Invariant::VIRTUAL, &vcfg)?;
        text.push_str(&format!("virtual: {}", virt.summary()));
        pass &= virt.passed();
        value["virtual"] = json!(virt);
    }
    value["pass"] = json!(pass);
    if pass {
        Ok((text, value))
    } else {
        Err(Failure::Verification(text, value))
    }
}

fn verify_fourterm(degree: usize) -> Outcome {
    let ws = WeightSystem::so3_adjoint();
    let rels = four_term_relations(degree)?;
    let bad: Vec<String> = rels
        .iter()
        .filter(|r| !relation_weight(r, &ws).is_zero())
        .map(|r| r.terms.iter().map(|(s, d)| format!("{s:+} {d}")).collect::<Vec<_>>().join(" "))
        .collect();
    let text = format!("degree {degree}: {} relations, {} nonzero under {}\n", rels.len(), bad.len(), ws.name);
    let value = json!({ "command": "verify fourterm", "degree": degree, "relations": rels.len(), "nonzero": bad });
    if bad.is_empty() {
        Ok((text, value))
    } else {
        Err(Failure::Verification(text, value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> RunOutput {
        run(std::iter::once("skeinlab").chain(args.iter().copied()))
    }

    #[test]
    fn compute_jones() {
        let r = go(&["compute", "--braid", "1 1 1", "--invariant", "jones"]);
        assert_eq!((r.status, r.stdout.as_str()), (0, "-t^4 + t^3 + t\n"));
    }

    #[test]
    fn engines_agree_on_the_command_line() {
        let outs: Vec<String> = ["state", "tl", "tensor"]
            .iter()
            .map(|m| go(&["compute", "--braid", "1 -2 1 -2", "--invariant", "bracket", "--method", m]).stdout)
            .collect();
        assert!(outs.iter().all(|o| o == &outs[0]), "{outs:?}");
    }

    #[test]
    fn arrow_of_virtual_trefoil() {
        let r = go(&["compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "arrow"]);
        assert_eq!(r.status, 0);
        assert!(r.stdout.contains("K1"));
    }

    #[test]
    fn json_has_schema() {
        let r = go(&["--output", "json", "compute", "--braid", "1 1 1", "--invariant", "vcoeffs", "--nmax", "2"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["value"], json!(["1", "0", "-3"]));
    }

    #[test]
    fn input_errors() {
        for args in [
            vec!["compute", "--braid", "1 x", "--invariant", "jones"],
            vec!["compute", "--pd", "X(1,2,3)", "--invariant", "jones"],
            vec!["compute", "--invariant", "jones"],
            vec!["compute", "--braid", "1", "--gauss", "O1+U1+", "--invariant", "jones"],
            vec!["nonsense"],
            vec!["compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "alexander"],
            vec!["compute", "--braid", "1 1 1 1 1 1 1 1 1 1 1 1 1", "--invariant", "khovanov"],
        ] {
            let r = go(&args);
            assert_eq!(r.status, 2, "{args:?}");
            assert!(r.stderr.starts_with("error:"), "{args:?}: {}", r.stderr);
            assert_eq!(r.stderr.lines().count(), 1, "{args:?}: {}", r.stderr);
        }
    }

    #[test]
    fn states_dump() {
        let r = go(&["states", "--braid", "1 1 1"]);
        assert_eq!(r.status, 0);
        assert!(r.stdout.starts_with("3 classical crossings, 8 states\n"));
        assert!(r.stdout.contains("tier 0: 1 states with 2 loops"));
        assert!(r.stdout.contains("signed sum"));
    }

    #[test]
    fn fourterm() {
        let r = go(&["verify", "fourterm", "--degree", "3"]);
        assert_eq!(r.status, 0, "{}", r.stdout);
        assert!(go(&["verify", "fourterm", "--degree", "9"]).status == 2);
    }
}
