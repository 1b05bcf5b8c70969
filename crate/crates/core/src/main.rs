use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use abfib::chern::{self, BasisSheaf, ChernCharacter};
use abfib::error::{Error, Result};
use abfib::fm::{self, ColumnStatus};
use abfib::lattice;
use abfib::rational::parse_q;
use abfib::report::{render, Format, Node};
use abfib::ring::parse::parse_class;
use abfib::ring::{self, ModelRegistry};
use abfib::search::{self, AnomalyMode, ConeConvention, HeteroticConstraints, Range, SearchBounds};
use abfib::stability::{self, PolarizationChoice};
use abfib::verify;

const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "abfib",
    version,
    about = "Exact cohomology calculus for an abelian-surface fibered Calabi-Yau threefold"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,
    /// Load ring models from a file; they shadow built-ins of the same name.
    #[arg(long, global = true)]
    model_file: Option<std::path::PathBuf>,
    /// Add a timestamp to the output.
    #[arg(long, global = true)]
    timestamp: bool,
    /// Worker threads for parallel enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the available ring models.
    Models,
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// Fourier-Mukai transform on cohomology.
    #[command(subcommand)]
    Fm(FmCommand),
    /// Chern class computations.
    #[command(subcommand)]
    Chern(ChernCommand),
    /// Bounded search for spectral data meeting the heterotic constraints.
    Search(SearchArgs),
    /// Ampleness and stability numerics on the dual fibration.
    #[command(subcommand)]
    Stability(StabilityCommand),
    /// Neron-Severi lattice of E x E.
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Subcommand)]
enum FmCommand {
    /// Apply s_P (or its inverse) to a class.
    Apply {
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        class: String,
        /// Refuse classes that touch columns not yet verified.
        #[arg(long)]
        verified_only: bool,
    },
    /// Reconstruct s_P from the basis sheaves and check it against the printed matrices.
    Verify,
}

#[derive(Subcommand)]
enum ChernCommand {
    /// Chern classes of a complete intersection in P^N.
    Ci {
        #[arg(long)]
        ambient: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Vec<i64>,
        /// Number of nodes resolved by a small resolution.
        #[arg(long)]
        nodes: Option<i64>,
    },
    /// Characters of the basis sheaves and their transforms.
    Table,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    rank: i64,
    #[arg(long, allow_hyphen_values = true)]
    c3: String,
    /// Target c1 on V^ (default 0).
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    /// c2 of the tangent bundle of V^ (default [e^] + 8[E^]).
    #[arg(long, allow_hyphen_values = true)]
    c2t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a_range: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    b_range: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    chi_range: Option<Range>,
    /// Twist ranges `lo:hi,lo:hi` for the H^ and A^ coefficients.
    #[arg(long, allow_hyphen_values = true)]
    twist_range: Option<String>,
    #[arg(long, value_enum, default_value_t = Anomaly::Require)]
    anomaly: Anomaly,
    #[arg(long, value_enum, default_value_t = Cone::Open)]
    anomaly_cone: Cone,
    /// Accept spectral curves a[e] + b[l] outside a > 0, b >= 0.
    #[arg(long)]
    allow_ineffective: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Anomaly {
    Require,
    Ignore,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cone {
    Open,
    Closed,
}

#[derive(Subcommand)]
enum StabilityCommand {
    /// Kleiman test for l H^ + k A^.
    Ample {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Least twist k making the extension stable.
    Threshold {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        n: i64,
    },
    /// Slope of a Chern character on V^ with respect to l H^ + k A^.
    Slope {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Primitive generators of the effective cone up to a height.
    Cone {
        #[arg(long)]
        height: i64,
    },
    /// Reach every cone generator from E under SL(2,Z).
    Orbit {
        #[arg(long)]
        height: i64,
    },
    /// Reverse Cauchy-Schwarz on effective classes.
    Schwarz {
        #[arg(long)]
        height: i64,
    },
}

struct Outcome {
    node: Node,
    code: u8,
}

impl Outcome {
    fn ok(node: Node) -> Self {
        Outcome { node, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if cli.timestamp {
                let secs = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                out.node = Node::map("output", vec![Node::scalar("timestamp", secs), out.node]);
            }
            let fmt = match cli.format {
                OutFormat::Text => Format::Text,
                OutFormat::Json => Format::Json,
            };
            print!("{}", render(&out.node, fmt));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load_models(cli: &Cli) -> Result<ModelRegistry> {
    match &cli.model_file {
        None => Ok(ModelRegistry::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
            ModelRegistry::from_model_file(&text)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let models = load_models(cli)?;
    match &cli.command {
        Command::Models => Ok(Outcome::ok(cmd_models(&models)?)),
        Command::Verify { suite } => {
            let suites = verify::run(suite, &models)?;
            let pass = suites.iter().all(|s| s.passed());
            Ok(Outcome {
                node: verify::report(&suites),
                code: if pass { 0 } else { EXIT_VERIFY },
            })
        }
        Command::Fm(FmCommand::Apply {
            inverse,
            class,
            verified_only,
        }) => Ok(Outcome::ok(cmd_fm_apply(*inverse, class, *verified_only)?)),
        Command::Fm(FmCommand::Verify) => {
            let suites = verify::run("fm-matrix", &models)?;
            let pass = suites.iter().all(|s| s.passed());
            Ok(Outcome {
                node: verify::report(&suites),
                code: if pass { 0 } else { EXIT_VERIFY },
            })
        }
        Command::Chern(ChernCommand::Ci {
            ambient,
            degrees,
            nodes,
        }) => Ok(Outcome::ok(cmd_ci(*ambient, degrees, *nodes)?)),
        Command::Chern(ChernCommand::Table) => Ok(Outcome::ok(cmd_table()?)),
        Command::Search(args) => cmd_search(args, cli.workers),
        Command::Stability(s) => Ok(Outcome::ok(cmd_stability(s)?)),
        Command::Lattice(l) => Ok(Outcome::ok(cmd_lattice(l)?)),
    }
}

fn cmd_models(models: &ModelRegistry) -> Result<Node> {
    let mut out = Vec::new();
    for name in models.names() {
        let m = models.get(&name)?;
        let source = if models.is_overridden(&name) {
            "file"
        } else {
            "builtin"
        };
        let basis = m
            .basis()
            .iter()
            .map(|b| format!("{} ({})", b.label, b.degree))
            .collect::<Vec<_>>()
            .join(", ");
        out.push(Node::map(
            name,
            vec![
                Node::scalar("source", source),
                Node::scalar("top_degree", m.top_degree()),
                Node::scalar("rank", m.rank()),
                Node::scalar("basis", basis),
                Node::scalar("well_formed", m.is_well_formed()),
            ],
        ));
    }
    Ok(Node::map("models", out))
}

fn cmd_fm_apply(inverse: bool, text: &str, verified_only: bool) -> Result<Node> {
    let (m, source) = if inverse {
        (fm::builtin_sp_inverse(), ring::vdual())
    } else {
        (fm::builtin_sp(), ring::v())
    };
    let ch = ChernCharacter::new(parse_class(text, &source)?);
    let image = if verified_only {
        m.apply_verified(&ch)?
    } else {
        m.apply(&ch)?
    };
    let expected: Vec<Node> = ch
        .class()
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(j, x)| {
            !num_traits::Zero::is_zero(*x) && m.column_status()[*j] == ColumnStatus::Expected
        })
        .map(|(j, _)| Node::item(source.label(j)))
        .collect();
    Ok(Node::map(
        "fm",
        vec![
            Node::scalar("direction", if inverse { "inverse" } else { "forward" }),
            Node::scalar("source", ch.class()),
            Node::scalar("image", image.class()),
            Node::list("expected_columns_used", expected),
        ],
    ))
}

fn cmd_ci(ambient: u32, degrees: &[i64], nodes: Option<i64>) -> Result<Node> {
    let c = chern::ci_tangent_chern(ambient, degrees)?;
    let degs = degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut classes = Vec::new();
    for k in 0..=c.dim() {
        classes.push(Node::scalar(format!("c{k}"), format!("{} h^{k}", c.c(k))));
    }
    let mut out = vec![
        Node::scalar("ambient", ambient),
        Node::scalar("degrees", degs),
        Node::scalar("dimension", c.dim()),
        Node::scalar("h^top", c.h_top),
        Node::map("chern", classes),
        Node::scalar("euler", c.euler()),
        Node::scalar("calabi_yau", c.is_calabi_yau()),
    ];
    if let Some(n) = nodes {
        let chi = abfib::rational::to_i64(&c.euler())
            .ok_or_else(|| Error::Invalid("euler characteristic out of range".into()))?;
        out.push(Node::scalar("nodes", n));
        out.push(Node::scalar(
            "euler_resolution",
            chern::euler_resolution(chi, n),
        ));
    }
    Ok(Node::map("ci", out))
}

fn cmd_table() -> Result<Node> {
    let sp = fm::builtin_sp();
    let mut rows = Vec::new();
    for s in BasisSheaf::ALL {
        let (_, verified) = fm::recorded_image(s);
        rows.push(Node::map(
            s.name(),
            vec![
                Node::scalar("ch", s.ch().class()),
                Node::scalar("ch_sq", s.sq_image_ch().class()),
                Node::scalar("ch_sp", sp.apply(&s.ch())?.class()),
                Node::scalar("status", if verified { "verified" } else { "expected" }),
            ],
        ));
    }
    Ok(Node::map("table", rows))
}

fn parse_twist(s: &str) -> Result<(Range, Range)> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Invalid(format!("twist range `{s}` is not `lo:hi,lo:hi`")))?;
    Ok((x.parse()?, y.parse()?))
}

fn cmd_search(args: &SearchArgs, workers: usize) -> Result<Outcome> {
    let vd = ring::vdual();
    let mut k = HeteroticConstraints::weak_heterotic(args.rank);
    k.c3_target = parse_q(&args.c3)?;
    if let Some(c1) = &args.c1 {
        k.c1_target = parse_class(c1, &vd)?;
    }
    if let Some(c2) = &args.c2t {
        k.c2_tangent = parse_class(c2, &vd)?;
    }
    k.anomaly_mode = match args.anomaly {
        Anomaly::Require => AnomalyMode::RequireEffective,
        Anomaly::Ignore => AnomalyMode::Ignore,
    };
    k.anomaly_cone = match args.anomaly_cone {
        Cone::Open => ConeConvention::Open,
        Cone::Closed => ConeConvention::Closed,
    };
    k.require_effective_curve = !args.allow_ineffective;
    let mut bounds = SearchBounds::default_for_rank(args.rank);
    if let Some(a) = args.a_range {
        bounds.a = a;
    }
    if let Some(b) = args.b_range {
        bounds.b = b;
    }
    if let Some(c) = args.chi_range {
        bounds.chi = c;
    }
    if let Some(t) = &args.twist_range {
        bounds.twist = Some(parse_twist(t)?);
    }
    let report = search::enumerate(&bounds, &k, workers)?;
    Ok(Outcome {
        code: if report.infeasible() {
            EXIT_INFEASIBLE
        } else {
            0
        },
        node: report.to_node(),
    })
}

fn polarization(l: &str, k: &str) -> Result<PolarizationChoice> {
    Ok(PolarizationChoice::new(parse_q(l)?, parse_q(k)?))
}

fn cmd_stability(s: &StabilityCommand) -> Result<Node> {
    match s {
        StabilityCommand::Ample { l, k } => {
            let p = polarization(l, k)?;
            let a = stability::is_ample(&p);
            let mut out = vec![
                Node::scalar("divisor", p.divisor()),
                Node::scalar("ample", a.ample),
            ];
            for (name, d) in &a.degrees {
                out.push(Node::scalar(format!("degree_on_{name}"), d));
            }
            if let Some(w) = a.witness {
                out.push(Node::scalar("witness", w));
            }
            Ok(Node::map("ample", out))
        }
        StabilityCommand::Threshold { a, mu, n } => {
            let (a, mu) = (parse_q(a)?, parse_q(mu)?);
            let k = stability::stability_threshold(&a, &mu, *n)?;
            Ok(Node::map(
                "threshold",
                vec![
                    Node::scalar("a", &a),
                    Node::scalar("mu", &mu),
                    Node::scalar("n", n),
                    Node::scalar("k", k),
                ],
            ))
        }
        StabilityCommand::Slope { class, l, k } => {
            let p = polarization(l, k)?;
            let ch = ChernCharacter::new(parse_class(class, &ring::vdual())?);
            let mu = stability::slope(&ch, &p)?;
            Ok(Node::map(
                "slope",
                vec![
                    Node::scalar("character", ch.class()),
                    Node::scalar("divisor", p.divisor()),
                    Node::scalar("slope", mu),
                ],
            ))
        }
    }
}

fn prim(p: &lattice::Prim) -> String {
    format!("[{}:{}:{}]", p[0], p[1], p[2])
}

fn cmd_lattice(l: &LatticeCommand) -> Result<Node> {
    match l {
        LatticeCommand::Cone { height } => {
            let gens = lattice::cone_generators(*height)?;
            Ok(Node::map(
                "cone",
                vec![
                    Node::scalar("height", height),
                    Node::scalar("count", gens.len()),
                    Node::list(
                        "generators",
                        gens.iter().map(|g| Node::item(prim(g))).collect(),
                    ),
                ],
            ))
        }
        LatticeCommand::Orbit { height } => {
            let r = lattice::orbit_transitivity(*height)?;
            Ok(Node::map(
                "orbit",
                vec![
                    Node::scalar("height", r.height),
                    Node::scalar("targets", r.targets),
                    Node::scalar("reached", r.reached.len()),
                    Node::list(
                        "witnesses",
                        r.reached
                            .iter()
                            .map(|(p, g)| Node::item(format!("{} <- {}", prim(p), g)))
                            .collect(),
                    ),
                    Node::list(
                        "missed",
                        r.missed.iter().map(|p| Node::item(prim(p))).collect(),
                    ),
                ],
            ))
        }
        LatticeCommand::Schwarz { height } => {
            let r = lattice::reverse_schwarz_check(*height)?;
            Ok(Node::map(
                "schwarz",
                vec![
                    Node::scalar("height", r.height),
                    Node::scalar("classes", r.classes),
                    Node::scalar("pairs", r.pairs),
                    Node::list(
                        "violations",
                        r.violations
                            .iter()
                            .map(|(d, h)| Node::item(format!("{} {}", prim(d), prim(h))))
                            .collect(),
                    ),
                ],
            ))
        }
    }
}
