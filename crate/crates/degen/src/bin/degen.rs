//! Command-line interface: constructions, single checks, and the umbrella
//! verification suites with JSON/CSV/text reports.

use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use degen::cones::{
    abelianisation_cone, cone_to_json, dynkin_cone, facet_witness, membership, relint_point,
    CutSet, DegreeVector, Mode,
};
use degen::demazure::{demazure_character, weyl_dim};
use degen::error::Error;
use degen::gradedmod::{filtration_dims, WedgeModule};
use degen::polytopes::{lattice_point_count, marked_polytope};
use degen::rootsys::{rat, Family, Label, Rat, RootSystem};
use degen::stretch::Stretching;
use degen::verify::{verify_suite_with_timestamp, SuiteName, VerifyConfig};
use degen::weyl::{build_wc, inversion_set, word_to_element};

#[derive(Parser)]
#[command(
    name = "degen",
    about = "Exact verification toolkit for partial abelianisations of classical Lie algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Family: A, B, C or D
    #[arg(long, short, env = "DEGEN_FAMILY")]
    family: String,
    /// Rank of the base system
    #[arg(long, short = 'n', env = "DEGEN_RANK")]
    rank: usize,
}

impl SystemArgs {
    fn build(&self) -> Result<RootSystem, Error> {
        RootSystem::new(Family::parse(&self.family)?, self.rank)
    }
}

fn parse_cuts(rs: &RootSystem, cuts: &Option<String>) -> Result<CutSet, Error> {
    match cuts {
        None => Ok(CutSet::empty()),
        Some(s) if s.trim().is_empty() => Ok(CutSet::empty()),
        Some(s) => {
            let positions: Result<Vec<usize>, _> =
                s.split(',').map(|p| p.trim().parse::<usize>()).collect();
            let positions =
                positions.map_err(|_| Error::domain(format!("cannot parse cuts '{s}'")))?;
            CutSet::new(rs, positions)
        }
    }
}

fn parse_lambda(rs: &RootSystem, s: &str) -> Result<Vec<i64>, Error> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| Error::domain(format!("cannot parse weight '{s}'")))?;
    if coords.len() != rs.rank() {
        return Err(Error::domain(format!(
            "weight needs {} coordinates",
            rs.rank()
        )));
    }
    Ok(coords)
}

fn parse_point(rs: &RootSystem, s: &str) -> Result<DegreeVector, Error> {
    let values: Result<Vec<Rat>, Error> = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            if let Some((num, den)) = p.split_once('/') {
                let n: i64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("bad rational '{p}'")))?;
                let d: i64 = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("bad rational '{p}'")))?;
                Ok(rat(n) / rat(d))
            } else {
                let n: i64 = p
                    .parse()
                    .map_err(|_| Error::domain(format!("bad rational '{p}'")))?;
                Ok(rat(n))
            }
        })
        .collect();
    let values = values?;
    if values.len() != rs.num_positive_roots() {
        return Err(Error::domain(format!(
            "degree vector needs {} entries (one per positive root)",
            rs.num_positive_roots()
        )));
    }
    Ok(DegreeVector::new(values))
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots with labels, ε-coordinates and heights
    Roots {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_JSON")]
        json: bool,
    },
    /// Cone constructions and membership tests
    Cone {
        #[command(subcommand)]
        action: ConeAction,
    },
    /// Diagram stretching data: σ, the root embedding and weight embedding
    Stretch {
        #[command(flatten)]
        sys: SystemArgs,
        /// Comma-separated cut positions (empty for none)
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        /// Optional dominant weight "λ1,λ2,…" to embed
        #[arg(long, env = "DEGEN_LAMBDA")]
        lambda: Option<String>,
    },
    /// The distinguished Weyl element: word and inversion set
    Wc {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        #[arg(long, env = "DEGEN_JSON")]
        json: bool,
    },
    /// Demazure character of the stretched module at the embedded weight
    Char {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        /// Dominant weight "λ1,λ2,…" of the base system
        #[arg(long, env = "DEGEN_LAMBDA")]
        lambda: String,
        #[arg(long, env = "DEGEN_JSON")]
        json: bool,
    },
    /// Lattice points of the marked chain polytope (types A and C)
    Polytope {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_LAMBDA")]
        lambda: String,
        #[arg(long, env = "DEGEN_JSON")]
        json: bool,
    },
    /// Graded dimensions of the degree filtration on a wedge module
    Filtration {
        #[command(flatten)]
        sys: SystemArgs,
        /// Exterior power (non-spin fundamental index)
        #[arg(long, short, env = "DEGEN_K")]
        k: usize,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        /// Explicit degree vector "d1,d2,…" (rationals allowed as p/q);
        /// defaults to an interior point of the cut cone
        #[arg(long, env = "DEGEN_POINT")]
        point: Option<String>,
    },
    /// Run verification suites and emit a report
    Verify {
        /// Comma-separated families (default all)
        #[arg(long, env = "DEGEN_FAMILIES", default_value = "A,B,C,D")]
        families: String,
        #[arg(long, env = "DEGEN_MAX_RANK", default_value_t = 5)]
        max_rank: usize,
        /// Coordinate bound for dominant-weight grids
        #[arg(long, env = "DEGEN_LAMBDA_BOUND", default_value_t = 2)]
        lambda_bound: i64,
        /// Suite name or "all"; comma-separated list allowed
        #[arg(long, env = "DEGEN_SUITE", default_value = "all")]
        suite: String,
        #[arg(long, env = "DEGEN_SEED", default_value_t = 0x5eed)]
        seed: u64,
        /// Output file (default stdout)
        #[arg(long, env = "DEGEN_OUT")]
        out: Option<String>,
        /// json, csv or text
        #[arg(long, env = "DEGEN_FORMAT", default_value = "text")]
        format: String,
        /// Omit the timestamp so identical configs give identical bytes
        #[arg(long, env = "DEGEN_NO_TIMESTAMP")]
        no_timestamp: bool,
    },
}

#[derive(Subcommand)]
enum ConeAction {
    /// Print the constraint list as JSON (base cone, or cut cone if --cuts)
    Build {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        /// Build the cut cone even when --cuts is empty
        #[arg(long)]
        dynkin: bool,
    },
    /// Test a degree vector for closure or relative-interior membership
    Membership {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        #[arg(long)]
        dynkin: bool,
        /// Degree vector "d1,d2,…" in root-list order
        #[arg(long, env = "DEGEN_POINT")]
        point: String,
        /// closure or relint
        #[arg(long, env = "DEGEN_MODE", default_value = "closure")]
        mode: String,
    },
    /// Compute a relative-interior point by exact LP
    RelintPoint {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, env = "DEGEN_CUTS")]
        cuts: Option<String>,
        #[arg(long)]
        dynkin: bool,
    },
    /// The witness vector of a summable triple (violates only its own facet)
    Witness {
        #[command(flatten)]
        sys: SystemArgs,
        /// First summand label, e.g. "(1,1)" or "(1,~2)"
        #[arg(long, env = "DEGEN_ALPHA")]
        alpha: String,
        /// Second summand label
        #[arg(long, env = "DEGEN_BETA")]
        beta: String,
    },
}

fn build_cone(
    rs: &RootSystem,
    cuts: &Option<String>,
    dynkin: bool,
) -> Result<degen::cones::ConeSpec, Error> {
    if dynkin || cuts.is_some() {
        let c = parse_cuts(rs, cuts)?;
        dynkin_cone(rs, &c)
    } else {
        Ok(abelianisation_cone(rs))
    }
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Roots { sys, json } => {
            let rs = sys.build()?;
            if json {
                let roots: Vec<serde_json::Value> = (0..rs.num_positive_roots())
                    .map(|i| {
                        serde_json::json!({
                            "label": rs.label(i).to_string(),
                            "coords": rs.root(i).coords,
                            "height": rs.height(i),
                            "support": rs.support(i),
                        })
                    })
                    .collect();
                writeln!(stdout, "{}", serde_json::to_string_pretty(&roots)?)?;
            } else {
                writeln!(
                    stdout,
                    "{} positive roots of {}:",
                    rs.num_positive_roots(),
                    rs.id()
                )?;
                for i in 0..rs.num_positive_roots() {
                    writeln!(
                        stdout,
                        "  {:<8} {:?}  ht={}",
                        rs.label(i).to_string(),
                        rs.root(i).coords,
                        rs.height(i)
                    )?;
                }
            }
        }
        Command::Cone { action } => match action {
            ConeAction::Build { sys, cuts, dynkin } => {
                let rs = sys.build()?;
                let cone = build_cone(&rs, &cuts, dynkin)?;
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&cone_to_json(&rs, &cone))?
                )?;
            }
            ConeAction::Membership {
                sys,
                cuts,
                dynkin,
                point,
                mode,
            } => {
                let rs = sys.build()?;
                let cone = build_cone(&rs, &cuts, dynkin)?;
                let d = parse_point(&rs, &point)?;
                let mode = match mode.as_str() {
                    "closure" => Mode::Closure,
                    "relint" => Mode::Relint,
                    other => return Err(Error::domain(format!("unknown mode '{other}'"))),
                };
                writeln!(stdout, "{}", membership(&cone, &d, mode)?)?;
            }
            ConeAction::RelintPoint { sys, cuts, dynkin } => {
                let rs = sys.build()?;
                let cone = build_cone(&rs, &cuts, dynkin)?;
                let d = relint_point(&rs, &cone)?;
                let parts: Vec<String> = (0..rs.num_positive_roots())
                    .map(|i| format!("{}={}", rs.label(i), d.get(i)))
                    .collect();
                writeln!(stdout, "{}", parts.join(" "))?;
            }
            ConeAction::Witness { sys, alpha, beta } => {
                let rs = sys.build()?;
                let la = Label::parse(&alpha)?;
                let lb = Label::parse(&beta)?;
                let a = rs
                    .index_of_label(la)
                    .ok_or_else(|| Error::domain(format!("{la} is not a root of {}", rs.id())))?;
                let b = rs
                    .index_of_label(lb)
                    .ok_or_else(|| Error::domain(format!("{lb} is not a root of {}", rs.id())))?;
                let gamma = rs
                    .try_add(rs.root(a), rs.root(b))?
                    .ok_or_else(|| Error::domain("the two roots do not sum to a root"))?;
                let d = facet_witness(&rs, rs.root(a), rs.root(b), &gamma)?;
                let parts: Vec<String> = (0..rs.num_positive_roots())
                    .map(|i| format!("{}={}", rs.label(i), d.get(i)))
                    .collect();
                writeln!(stdout, "{}", parts.join(" "))?;
            }
        },
        Command::Stretch { sys, cuts, lambda } => {
            let rs = sys.build()?;
            let c = parse_cuts(&rs, &cuts)?;
            let st = Stretching::from_system(&rs, &c)?;
            let sigma: Vec<String> = (1..=rs.rank())
                .map(|i| format!("{i}->{}", st.sigma(i)))
                .collect();
            writeln!(stdout, "stretched system: {}", st.stretched().id())?;
            writeln!(stdout, "sigma: {}", sigma.join(" "))?;
            writeln!(stdout, "missing: {:?}", st.missing())?;
            writeln!(stdout, "root embedding:")?;
            for (i, img) in st.image_set()?.iter().enumerate() {
                let j = st.stretched().index_of_required(img)?;
                writeln!(stdout, "  {} -> {}", rs.label(i), st.stretched().label(j))?;
            }
            if let Some(ls) = lambda {
                let lam = parse_lambda(&rs, &ls)?;
                writeln!(stdout, "weight embedding: {:?}", st.psi_weight(&lam)?)?;
                writeln!(stdout, "relation exponents:")?;
                for (root, e) in st.ideal_exponents(&lam)? {
                    let j = st.stretched().index_of_required(&root)?;
                    writeln!(stdout, "  {} : {}", st.stretched().label(j), e)?;
                }
            }
        }
        Command::Wc { sys, cuts, json } => {
            let rs = sys.build()?;
            let c = parse_cuts(&rs, &cuts)?;
            let word = build_wc(&rs, &c)?;
            let big = RootSystem::new(rs.family(), rs.rank() + c.len())?;
            let (w, reduced) = word_to_element(&big, &word)?;
            let inv = inversion_set(&big, &w);
            if json {
                let labels: Vec<String> = inv
                    .iter()
                    .map(|r| big.label(big.index_of(r).unwrap()).to_string())
                    .collect();
                writeln!(
                    stdout,
                    "{}",
                    serde_json::json!({
                        "word": word.letters(),
                        "reduced": reduced,
                        "inversions": labels,
                    })
                )?;
            } else {
                writeln!(stdout, "word {} (reduced: {reduced})", word)?;
                writeln!(stdout, "{} inversions", inv.len())?;
            }
        }
        Command::Char {
            sys,
            cuts,
            lambda,
            json,
        } => {
            let rs = sys.build()?;
            let c = parse_cuts(&rs, &cuts)?;
            let st = Stretching::from_system(&rs, &c)?;
            let lam = parse_lambda(&rs, &lambda)?;
            let word = build_wc(&rs, &c)?;
            let chi = demazure_character(st.stretched(), &word, &st.psi_weight(&lam)?)?;
            let wd = weyl_dim(&rs, &lam)?;
            if json {
                let mut v = chi.to_json();
                v["dimension"] = serde_json::json!(chi.dimension());
                v["weyl_dimension"] = serde_json::json!(wd.to_string());
                writeln!(stdout, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(
                    stdout,
                    "demazure dimension {} (weyl dimension {}), {} weights",
                    chi.dimension(),
                    wd,
                    chi.num_weights()
                )?;
            }
        }
        Command::Polytope { sys, lambda, json } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&rs, &lambda)?;
            let count = lattice_point_count(&rs, &lam)?;
            if json {
                let poly = marked_polytope(&rs, &lam)?;
                let mut v = poly.to_json(&rs);
                v["count"] = serde_json::json!(count);
                writeln!(stdout, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(stdout, "{count}")?;
            }
        }
        Command::Filtration {
            sys,
            k,
            cuts,
            point,
        } => {
            let rs = sys.build()?;
            let module = WedgeModule::new(&rs, k)?;
            let d = match point {
                Some(p) => parse_point(&rs, &p)?,
                None => {
                    let c = parse_cuts(&rs, &cuts)?;
                    let cone = dynkin_cone(&rs, &c)?;
                    relint_point(&rs, &cone)?
                }
            };
            writeln!(stdout, "degree,dimension")?;
            for (deg, dim) in filtration_dims(&rs, &module, &d)? {
                writeln!(stdout, "{deg},{dim}")?;
            }
        }
        Command::Verify {
            families,
            max_rank,
            lambda_bound,
            suite,
            seed,
            out,
            format,
            no_timestamp,
        } => {
            let families: Result<Vec<Family>, Error> =
                families.split(',').map(Family::parse).collect();
            let suites: Result<Vec<SuiteName>, Error> = if suite.trim() == "all" {
                Ok(SuiteName::ALL.to_vec())
            } else {
                suite.split(',').map(SuiteName::parse).collect()
            };
            let cfg = VerifyConfig {
                families: families?,
                max_rank,
                lambda_coord_bound: lambda_bound,
                suites: suites?,
                seed,
            };
            let timestamp = if no_timestamp {
                None
            } else {
                Some(
                    SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_millis().to_string())
                        .unwrap_or_default(),
                )
            };
            let report = verify_suite_with_timestamp(&cfg, timestamp)?;
            let body = match format.as_str() {
                "json" => report.to_json()?,
                "csv" => report.to_csv(),
                "text" => report.to_text(),
                other => return Err(Error::domain(format!("unknown format '{other}'"))),
            };
            match out {
                Some(path) => std::fs::write(path, body)?,
                None => write!(stdout, "{body}")?,
            }
            if !report.all_pass() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
