//! Command-line surface for `tropgraph`.
//!
//! Every command returns an [`Outcome`]: the rendered output and the process
//! exit code. Exit codes: 0 success or verdict reached, 1 inconclusive, 2
//! precondition failure, 3 certificate mismatch, 4 I/O, parse or usage error.

pub mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tropgraph::cones::{
    binomial_membership, clique_trop_cone, minor_cone, rays_from_facets, star_trop_cone, MembershipResult, RationalCone,
};
use tropgraph::families::{clique_trajectory, random_hypergraph, star_trajectory, TrajectoryRow};
use tropgraph::gluing::{
    alpha_vector, default_label_budget, enumerate_basis, moment_matrix, BasisKind, GraphBasis, MomentMatrix,
};
use tropgraph::hypergraph::{density, hom_count};
use tropgraph::obstructions::{counting_obstruction, minor_certificate, MinorVerdict};
use tropgraph::rational::fraction_string;
use tropgraph::{Error, Hypergraph};

pub use input::{parse_assignment, parse_graph, parse_schedule};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_certificate_mismatch() => 3,
            CliError::Lib(_) => 2,
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConeSource {
    Clique,
    Star,
    TropSos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Clique,
    Star,
}

#[derive(Parser, Debug)]
#[command(name = "tropgraph", version, about = "Exact tropicalization of graph density profiles")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; trajectories default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

/// Graph arguments accept inline JSON (`{"r":2,"n":2,"edges":[[0,1]]}`),
/// `@path`, `-` for stdin, or named graphs joined by `*` with powers `^k`
/// (`edge`, `path2`, `P3`, `P4`, `K3`, `K4`, `C4`, `star3`, `longbroom`).
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homomorphism count and density t(H; G).
    Density { h: String, g: String },

    /// Cone cut out by the 2x2 principal minors of the reduced moment matrix.
    TropSos {
        #[arg(long)]
        d: usize,
        /// Label budget; defaults to r*d.
        #[arg(long)]
        labels: Option<u32>,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },

    /// Tropicalized clique cone over K_r..K_l.
    CliqueCone {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
    },

    /// Tropicalized star cone over S(1, c)..S(l, c).
    StarCone {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        l: usize,
    },

    /// Tests t(H1) >= t(H2) on a tropical cone.
    TestBinomial {
        h1: String,
        h2: String,
        #[arg(long, value_enum)]
        cone: ConeSource,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        labels: Option<u32>,
    },

    /// Degree-based obstruction to sos-testability of t(UPPER)^k >= t(LOWER)^(k+1).
    Obstruction {
        upper: String,
        lower: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        labels: Option<u32>,
        /// Degree threshold; inferred from the upper graph when omitted.
        #[arg(long)]
        p: Option<usize>,
    },

    /// Exclusion of a partially fixed density point by small principal minors.
    MinorCertificate {
        /// Fixed coordinate `graph=value`, repeatable.
        #[arg(long = "fixed", required = true)]
        fixed: Vec<String>,
        /// Free coordinate; exactly one is supported.
        #[arg(long = "free", required = true)]
        free: Vec<String>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        labels: Option<u32>,
    },

    /// Normalized log-density directions along an extremal family.
    Trajectory {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        l: usize,
        /// Ray index of the clique cone.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// Ray index of the star cone.
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated parameters in (0, 1).
        #[arg(long, visible_aliases = ["alpha", "rho"])]
        schedule: String,
    },

    /// Seeded random r-graph G(n, p).
    RandomGraph {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn json(value: &impl Serialize, code: i32) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("output serializes");
        text.push('\n');
        Outcome { text, code }
    }
}

fn labels_or_default(labels: Option<u32>, d: usize, r: usize) -> u32 {
    labels.unwrap_or_else(|| default_label_budget(d, r))
}

fn require_json(format: Option<Format>, command: &str) -> Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage(format!("{command} has no csv output"))),
        _ => Ok(()),
    }
}

/// Moment matrix over the reduced basis with columns `V_d`.
pub fn reduced_moment_matrix(d: usize, labels: u32, r: usize) -> Result<MomentMatrix, CliError> {
    let rows = enumerate_basis(BasisKind::Reduced, d, labels, r)?;
    let columns = GraphBasis::from_basis(&enumerate_basis(BasisKind::Connected, d, labels, r)?)?;
    Ok(moment_matrix(&rows, columns, true)?)
}

/// The minor cone of the reduced moment matrix with both representations,
/// after checking that facets recomputed from the rays describe the same cone.
/// Also returns the cone as cut out by all minors.
pub fn trop_sos_cone(mm: &MomentMatrix) -> Result<(RationalCone, RationalCone), CliError> {
    let h = minor_cone(mm)?;
    let v = h.clone().with_rays()?;
    let back = RationalCone::from_rays(v.basis.clone(), v.rays.clone().unwrap_or_default(), v.lineality.clone())?
        .with_facets()?;
    if !back.equivalent(&h)? {
        return Err(Error::CertificateMismatch("minor cone facets and rays disagree".into()).into());
    }
    Ok((back, h))
}

fn cone_csv(cone: &RationalCone) -> String {
    let mut out = String::from("kind");
    for i in 1..=cone.dim() {
        out.push_str(&format!(",y{i}"));
    }
    out.push('\n');
    let mut emit = |kind: &str, vs: &[Vec<i64>]| {
        for v in vs {
            out.push_str(kind);
            for x in v {
                out.push_str(&format!(",{x}"));
            }
            out.push('\n');
        }
    };
    emit("facet", cone.facets.as_deref().unwrap_or_default());
    emit("ray", cone.rays.as_deref().unwrap_or_default());
    emit("lineality", &cone.lineality);
    out
}

fn cone_outcome(cone: &RationalCone, extra: Value, format: Option<Format>) -> Outcome {
    match format {
        Some(Format::Csv) => Outcome { text: cone_csv(cone), code: 0 },
        _ => {
            let mut v = serde_json::to_value(cone).expect("cone serializes");
            if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
                map.extend(more);
            }
            Outcome::json(&v, 0)
        }
    }
}

fn trajectory_csv(rows: &[TrajectoryRow]) -> String {
    let dim = rows.first().map_or(0, |r| r.log_ratio.len());
    let mut out = String::from("parameter");
    for i in 1..=dim {
        out.push_str(&format!(",log_ratio{i}"));
    }
    for i in 1..=dim {
        out.push_str(&format!(",direction{i}"));
    }
    out.push_str(",distance\n");
    for row in rows {
        out.push_str(&row.parameter.to_string());
        for x in row.log_ratio.iter().chain(&row.direction) {
            out.push_str(&format!(",{x}"));
        }
        out.push_str(&format!(",{}\n", row.distance));
    }
    out
}

fn cone_basis_graphs(source: ConeSource, r: usize, l: usize, c: usize) -> Result<Vec<Hypergraph>, CliError> {
    Ok(match source {
        ConeSource::Clique => (r..=l).map(|j| Hypergraph::complete(r, j)).collect::<Result<_, _>>()?,
        ConeSource::Star => (1..=l).map(|b| Hypergraph::star(r, b, c)).collect::<Result<_, _>>()?,
        ConeSource::TropSos => unreachable!("trop-sos basis comes from the moment matrix"),
    })
}

fn membership_json(result: &MembershipResult) -> Value {
    serde_json::to_value(result).expect("membership serializes")
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Density { h, g } => {
            require_json(format, "density")?;
            let (h, g) = (parse_graph(h)?, parse_graph(g)?);
            let count = hom_count(&h, &g)?;
            let t = density(&h, &g)?;
            Ok(Outcome::json(&json!({ "hom_count": count.to_string(), "density": fraction_string(&t) }), 0))
        }
        Command::TropSos { d, labels, r } => {
            let labels = labels_or_default(*labels, *d, *r);
            let mm = reduced_moment_matrix(*d, labels, *r)?;
            let mut extra = json!({
                "d": d,
                "labels": labels,
                "rows": mm.size(),
                "basis_extensions": mm.columns.extensions().iter().map(|g| g.to_json()).collect::<Vec<_>>(),
                "degenerate": mm.columns.is_empty(),
                "round_trip": true,
            });
            if mm.columns.is_empty() {
                let cone = RationalCone {
                    basis: Vec::new(),
                    facets: Some(Vec::new()),
                    rays: Some(Vec::new()),
                    lineality: Vec::new(),
                };
                return Ok(cone_outcome(&cone, extra, format));
            }
            let (cone, minors) = trop_sos_cone(&mm)?;
            extra["minor_inequalities"] = json!(minors.facets);
            Ok(cone_outcome(&cone, extra, format))
        }
        Command::CliqueCone { r, l } => {
            let cone = clique_trop_cone(*r, *l)?;
            let extra = json!({ "dd_agrees": dd_agrees(&cone)? });
            Ok(cone_outcome(&cone, extra, format))
        }
        Command::StarCone { r, c, l } => {
            let cone = star_trop_cone(*r, *c, *l)?;
            let extra = json!({ "dd_agrees": dd_agrees(&cone)? });
            Ok(cone_outcome(&cone, extra, format))
        }
        Command::TestBinomial { h1, h2, cone, r, l, c, d, labels } => {
            require_json(format, "test-binomial")?;
            let (g1, g2) = (parse_graph(h1)?, parse_graph(h2)?);
            let (basis, rational_cone) = match cone {
                ConeSource::TropSos => {
                    let d = d.ok_or_else(|| CliError::Usage("--cone trop-sos needs --d".into()))?;
                    let mm = reduced_moment_matrix(d, labels_or_default(*labels, d, *r), *r)?;
                    let (cone, _) = trop_sos_cone(&mm)?;
                    (mm.columns, cone)
                }
                source => {
                    let l = l.ok_or_else(|| CliError::Usage("clique and star cones need --l".into()))?;
                    let cone = match source {
                        ConeSource::Clique => clique_trop_cone(*r, l)?,
                        _ => star_trop_cone(*r, *c, l)?,
                    };
                    (GraphBasis::new(cone_basis_graphs(*source, *r, l, *c)?)?, cone)
                }
            };
            let a1 = alpha_vector(&g1, &basis)?;
            let a2 = alpha_vector(&g2, &basis)?;
            let diff: Vec<i64> = (0..basis.len()).map(|i| a1.get(i) - a2.get(i)).collect();
            let result = binomial_membership(&rational_cone, &diff)?;
            let verdict = if result.is_member() { "valid on trop" } else { "not valid" };
            Ok(Outcome::json(
                &json!({
                    "basis": basis.names(),
                    "exponent": diff,
                    "facets": rational_cone.clone().with_facets()?.facets,
                    "verdict": verdict,
                    "certificate": membership_json(&result),
                }),
                0,
            ))
        }
        Command::Obstruction { upper, lower, k, d, labels, p } => {
            require_json(format, "obstruction")?;
            let (upper, lower) = (parse_graph(upper)?, parse_graph(lower)?);
            let labels = labels_or_default(*labels, *d, upper.r());
            let report = counting_obstruction(&upper, &lower, *k, *d, labels, *p)?;
            Ok(Outcome::json(&report, report.conclusion.exit_code()))
        }
        Command::MinorCertificate { fixed, free, d, labels } => {
            require_json(format, "minor-certificate")?;
            let mut fixed_map = BTreeMap::new();
            for f in fixed {
                let (g, v) = parse_assignment(f)?;
                if fixed_map.insert(g.canonical_form(), v).is_some() {
                    return Err(CliError::Usage(format!("coordinate fixed twice in {f:?}")));
                }
            }
            let free = free.iter().map(|f| parse_graph(f)).collect::<Result<Vec<_>, _>>()?;
            let r = free.first().map_or(2, Hypergraph::r);
            let cert = minor_certificate(&fixed_map, &free, *d, labels_or_default(*labels, *d, r))?;
            let code = match cert.verdict {
                MinorVerdict::Refuted { .. } => 0,
                MinorVerdict::Inconclusive { .. } => 1,
            };
            Ok(Outcome::json(&cert, code))
        }
        Command::Trajectory { family, r, l, i, c, m, schedule } => {
            let schedule = parse_schedule(schedule)?;
            let rows = match family {
                Family::Clique => {
                    let i = i.ok_or_else(|| CliError::Usage("--family clique needs --i".into()))?;
                    clique_trajectory(*r, *l, i, &schedule)?
                }
                Family::Star => {
                    let m = m.ok_or_else(|| CliError::Usage("--family star needs --m".into()))?;
                    star_trajectory(*r, *c, m, *l, &schedule)?
                }
            };
            match format {
                Some(Format::Json) => Ok(Outcome::json(&rows, 0)),
                _ => Ok(Outcome { text: trajectory_csv(&rows), code: 0 }),
            }
        }
        Command::RandomGraph { r, n, edge_prob, seed } => {
            require_json(format, "random-graph")?;
            if !(0.0..=1.0).contains(edge_prob) {
                return Err(Error::InvalidParameter(format!("edge probability {edge_prob} not in [0, 1]")).into());
            }
            Ok(Outcome::json(&random_hypergraph(*r, *n, *edge_prob, *seed)?, 0))
        }
    }
}

/// Rays recomputed by double description from the closed-form facets equal
/// the closed-form rays.
fn dd_agrees(cone: &RationalCone) -> Result<bool, CliError> {
    let facets = cone.facets.as_ref().expect("closed-form cones carry facets");
    let (rays, lineality) = rays_from_facets(cone.dim(), facets)?;
    Ok(lineality.is_empty() && Some(&rays) == cone.rays.as_ref())
}

/// Parses `args` (program name first), runs the command and writes the
/// output. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 4 } else { 0 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: {}: {e}", path.display());
                return 4;
            }
        }
        None => print!("{}", outcome.text),
    }
    outcome.code
}
