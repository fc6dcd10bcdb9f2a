//! Command-line front end: thin adapters from flags to the library, with
//! stable JSON reports and scriptable exit codes (0 success, 1 input error,
//! 2 theorem contradiction, 3 budget refusal).

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use newtondiag::crmap::{CrmapError, MonomialMap};
use newtondiag::diagram::FaceKind;
use newtondiag::diagram::NewtonDiagram;
use newtondiag::oracle::{self, OracleError};
use newtondiag::whitney::{self, Chooser, WhitneyError};
use newtondiag::{HyperplaneMembership, Poly};

const SCHEMA_VERSION: u32 = 1;

const EXIT_INPUT: u8 = 1;
const EXIT_CONTRADICTION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "newtondiag",
    about = "Newton diagrams of polynomials constant on a hyperplane",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership in H and report the degree bound
    Check(PolyArgs),
    /// Divide p - 1 by x1 + ... + xn - 1 and print quotient and remainder
    Quotient(PolyArgs),
    /// Print the Newton diagram of the quotient
    Diagram(DiagramArgs),
    /// Print a view of the Newton diagram along an axis pair
    View(ViewArgs),
    /// Generate a degree-extremal polynomial by repeated top-term moves
    Whitney(WhitneyArgs),
    /// Check a monomial sphere map for properness and the degree bound
    Crmap(CrmapArgs),
    /// Exhaustively verify node-count bounds over unique-source diagrams
    Search(SearchArgs),
    /// Exhaustively check the 2f + e + c count bound on small simple diagrams
    Lemma42(Lemma42Args),
    /// List the vertical and horizontal faces of a diagram
    Faces(DiagramArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial in the text grammar, e.g. "x^3 + 3*x*y + y^3"
    polynomial: Option<String>,
    /// Read the polynomial from a file instead
    #[arg(long, conflicts_with = "polynomial")]
    file: Option<std::path::PathBuf>,
    /// Number of variables
    #[arg(long)]
    dim: usize,
    /// Emit the JSON report instead of human-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DiagramArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Treat the input as the quotient q itself rather than as p
    #[arg(long)]
    of_quotient: bool,
}

#[derive(Args)]
struct ViewArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Axis looked from (1-based)
    #[arg(long)]
    from: usize,
    /// Axis looked towards (1-based)
    #[arg(long)]
    to: usize,
    /// Assert the diagram has this size before taking the view
    #[arg(long)]
    size: Option<u32>,
}

#[derive(Args)]
struct WhitneyArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    degree: u32,
    /// Term selection rule: "lex" or "seed:<u64>"
    #[arg(long, default_value = "lex")]
    chooser: Chooser,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CrmapArgs {
    /// Map file: one component per line, `<rational> : <monomial-in-z>`
    #[arg(long)]
    file: std::path::PathBuf,
    /// Source dimension; inferred from the variables used when absent
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    size: u32,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the minimizers at the requested size to this path as JSON
    #[arg(long)]
    dump_minimizers: Option<std::path::PathBuf>,
    /// Also run the hidden-node audit (dimension 4 and up)
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Lemma42Args {
    #[arg(long, default_value_t = 3)]
    max_height: u32,
    #[arg(long, default_value_t = 3)]
    max_width: u32,
    /// Additionally fill this many random simple diagrams
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 20240)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

struct Failure {
    exit: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure {
            exit: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(err: OracleError) -> Self {
        let exit = match &err {
            OracleError::BudgetExceeded { .. } => EXIT_BUDGET,
            OracleError::TheoremContradiction { .. } => EXIT_CONTRADICTION,
            _ => EXIT_INPUT,
        };
        Failure {
            exit,
            message: err.to_string(),
        }
    }
}

impl From<WhitneyError> for Failure {
    fn from(err: WhitneyError) -> Self {
        let exit = match &err {
            WhitneyError::BoundViolated { .. } => EXIT_CONTRADICTION,
            _ => EXIT_INPUT,
        };
        Failure {
            exit,
            message: err.to_string(),
        }
    }
}

impl From<CrmapError> for Failure {
    fn from(err: CrmapError) -> Self {
        let exit = match &err {
            CrmapError::BoundViolated { .. } => EXIT_CONTRADICTION,
            _ => EXIT_INPUT,
        };
        Failure {
            exit,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(args) => run_check(args),
        Command::Quotient(args) => run_quotient(args),
        Command::Diagram(args) => run_diagram(args),
        Command::View(args) => run_view(args),
        Command::Whitney(args) => run_whitney(args),
        Command::Crmap(args) => run_crmap(args),
        Command::Search(args) => run_search(args),
        Command::Lemma42(args) => run_lemma42(args),
        Command::Faces(args) => run_faces(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

fn read_polynomial(args: &PolyArgs) -> Result<Poly, Failure> {
    let text = match (&args.polynomial, &args.file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            return Err(Failure::input(
                "pass a polynomial or --file, not both or neither",
            ))
        }
    };
    Poly::parse(text.trim(), args.dim).map_err(Failure::input)
}

fn report(command: &str, inputs: Value, verdicts: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "verdicts": verdicts,
    })
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn run_check(args: PolyArgs) -> Result<(), Failure> {
    let p = read_polynomial(&args)?;
    let membership = p.hyperplane_membership();
    let in_h = membership.is_member();
    let mut verdicts = json!({
        "in_H": in_h,
        "terms": p.term_count(),
    });
    let mut human = vec![
        format!("polynomial: {p}"),
        format!("dimension: {}", args.dim),
        format!("in_H: {in_h}"),
        format!("terms: {}", p.term_count()),
    ];
    match &membership {
        HyperplaneMembership::Member => match whitney::degree_bound_report(&p) {
            Ok(bound) => {
                verdicts["degree"] = json!(bound.degree);
                verdicts["bound"] = json!(bound.bound);
                verdicts["tight"] = json!(bound.tight);
                verdicts["sharp_whitney"] = json!(whitney::is_sharp_whitney(&p));
                human.push(format!("degree: {}", bound.degree));
                human.push(format!("bound: {}", bound.bound));
                human.push(format!("tight: {}", bound.tight));
                human.push(format!("sharp_whitney: {}", whitney::is_sharp_whitney(&p)));
            }
            Err(WhitneyError::ConstantPolynomial) => {
                verdicts["degree"] = json!(0);
                human.push("degree: 0 (no bound applies to a constant)".into());
            }
            Err(err) => return Err(err.into()),
        },
        HyperplaneMembership::NegativeCoefficient {
            exponent,
            coefficient,
        } => {
            verdicts["witness"] = json!({ "negative_coefficient": coefficient.to_string(), "alpha": exponent.entries() });
            human.push(format!(
                "witness: coefficient {coefficient} at {exponent:?} is negative"
            ));
        }
        HyperplaneMembership::NotOneOnHyperplane { point, value } => {
            let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            verdicts["witness"] = json!({ "point": coords, "value": value.to_string() });
            human.push(format!(
                "witness: value {value} at hyperplane point ({})",
                point
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    if args.json {
        emit(&report(
            "check",
            json!({ "polynomial": p.to_string(), "dim": args.dim }),
            verdicts,
        ));
    } else {
        for line in human {
            println!("{line}");
        }
    }
    if in_h {
        Ok(())
    } else {
        Err(Failure::input("polynomial is not in H"))
    }
}

fn run_quotient(args: PolyArgs) -> Result<(), Failure> {
    let p = read_polynomial(&args)?;
    let division = p.divide_by_hyperplane();
    if args.json {
        let verdicts = json!({
            "quotient": division.quotient.to_string(),
            "remainder": division.remainder.to_string(),
            "quotient_terms": division.quotient.term_count(),
            "exact": division.remainder.is_zero(),
        });
        emit(&report(
            "quotient",
            json!({ "polynomial": p.to_string(), "dim": args.dim }),
            verdicts,
        ));
    } else {
        println!("quotient: {}", division.quotient);
        println!("remainder: {}", division.remainder);
    }
    Ok(())
}

fn diagram_of(args: &DiagramArgs) -> Result<NewtonDiagram, Failure> {
    let p = read_polynomial(&args.poly)?;
    if args.of_quotient {
        return Ok(NewtonDiagram::from_quotient(&p));
    }
    let division = p.divide_by_hyperplane();
    if !division.remainder.is_zero() {
        return Err(Failure::input(
            "p - 1 is not divisible by the hyperplane; pass the quotient with --of-quotient",
        ));
    }
    Ok(NewtonDiagram::from_quotient(&division.quotient))
}

fn print_diagram_human(diagram: &NewtonDiagram) {
    if let Some(grid) = diagram.ascii_grid() {
        print!("{grid}");
    }
    println!("size: {}", diagram.size());
    println!("support: {} points", diagram.support_len());
    for record in diagram.nodes() {
        println!(
            "node {:?}: {:?} ({:?})",
            record.position.entries(),
            record.kind,
            record.geometry
        );
    }
}

fn run_diagram(args: DiagramArgs) -> Result<(), Failure> {
    let diagram = diagram_of(&args)?;
    if args.poly.json {
        let verdicts = serde_json::to_value(diagram.dump()).expect("dump serializes");
        emit(&report(
            "diagram",
            json!({ "dim": args.poly.dim, "of_quotient": args.of_quotient }),
            verdicts,
        ));
    } else {
        print_diagram_human(&diagram);
    }
    Ok(())
}

fn run_view(args: ViewArgs) -> Result<(), Failure> {
    let diagram = diagram_of(&args.diagram)?;
    if let Some(expected) = args.size {
        if diagram.size() != expected {
            return Err(Failure::input(format!(
                "diagram has size {}, expected {expected}",
                diagram.size()
            )));
        }
    }
    if args.from == 0 || args.to == 0 {
        return Err(Failure::input("axes are 1-based"));
    }
    let view = diagram
        .view(args.from - 1, args.to - 1)
        .map_err(Failure::input)?;
    let hidden = diagram.node_count() - view.node_count();
    if args.diagram.poly.json {
        let verdicts = json!({
            "view": serde_json::to_value(view.dump()).expect("dump serializes"),
            "hidden_nodes": hidden,
            "diagram_nodes": diagram.node_count(),
        });
        emit(&report(
            "view",
            json!({ "dim": args.diagram.poly.dim, "from": args.from, "to": args.to }),
            verdicts,
        ));
    } else {
        print_diagram_human(&view);
        println!("hidden nodes: {hidden}");
    }
    Ok(())
}

fn run_whitney(args: WhitneyArgs) -> Result<(), Failure> {
    let trace = whitney::generate(args.dim, args.degree, &args.chooser)?;
    let p = &trace.polynomial;
    let bound = whitney::degree_bound_report(p)?;
    let diagram = whitney::quotient_diagram(p);
    let chooser = match &args.chooser {
        Chooser::LexLargest => "lex".to_string(),
        Chooser::Seeded(seed) => format!("seed:{seed}"),
    };
    let verdicts = json!({
        "polynomial": p.to_string(),
        "degree": bound.degree,
        "terms": bound.term_count,
        "bound": bound.bound,
        "tight": bound.tight,
        "in_H": true,
        "sharp_whitney": whitney::is_sharp_whitney(p),
        "node_count": diagram.node_count(),
        "moves": trace.moves.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(),
    });
    let full = report(
        "whitney",
        json!({ "dim": args.dim, "degree": args.degree, "chooser": chooser }),
        verdicts.clone(),
    );
    if args.json {
        emit(&full);
    } else {
        println!("{p}");
        emit(&verdicts);
    }
    Ok(())
}

fn run_crmap(args: CrmapArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.file.display())))?;
    let map = MonomialMap::parse(&text, args.dim)?;
    let corollary = map.corollary_report()?;
    let verdicts = serde_json::to_value(&corollary).expect("report serializes");
    if args.json {
        emit(&report(
            "crmap",
            json!({ "file": args.file.display().to_string() }),
            verdicts,
        ));
    } else {
        emit(&verdicts);
    }
    Ok(())
}

fn run_search(args: SearchArgs) -> Result<(), Failure> {
    let bound_report = oracle::verify_bound(args.dim, args.size, args.workers)?;
    let audit = if args.audit {
        Some(oracle::hidden_node_audit(args.dim, args.size)?)
    } else {
        None
    };
    if let Some(path) = &args.dump_minimizers {
        let census = bound_report
            .at_requested_size()
            .ok_or_else(|| Failure::input("no diagram of the requested size exists"))?;
        let dumps: Vec<_> = census
            .minimizers
            .iter()
            .map(|m| m.to_newton_diagram(args.dim).dump())
            .collect();
        let body = serde_json::to_string_pretty(&dumps).expect("dumps serialize");
        std::fs::write(path, body)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.json {
        let mut verdicts = serde_json::to_value(&bound_report).expect("report serializes");
        if let Some(audit) = &audit {
            verdicts["audit"] = serde_json::to_value(audit).expect("audit serializes");
        }
        emit(&report(
            "search",
            json!({ "dim": args.dim, "size": args.size }),
            verdicts,
        ));
    } else {
        println!(
            "searched {} assignments over {} points",
            bound_report.assignment_estimate, bound_report.point_count
        );
        println!("valid unique-source diagrams: {}", bound_report.valid_count);
        for census in &bound_report.per_size {
            println!(
                "size {}: {} diagrams, min nodes {} (bound {}{}), {} minimizers{}",
                census.size,
                census.diagram_count,
                census.min_node_count,
                census.bound,
                if census.sharp { ", attained" } else { "" },
                census.minimizer_count,
                if census.all_minimizers_one_point_per_degree {
                    ", all one point per degree"
                } else {
                    ""
                },
            );
        }
        if let Some(audit) = &audit {
            println!(
                "hidden-node audit: {} diagrams, {} with the strong hypothesis, margin {}",
                audit.diagrams_checked, audit.strong_hypothesis_count, audit.min_margin
            );
        }
        println!("all bounds verified");
    }
    Ok(())
}

fn run_lemma42(args: Lemma42Args) -> Result<(), Failure> {
    let survey = oracle::survey_simple_diagrams(args.max_height, args.max_width)?;
    let mut random_checked = 0usize;
    for simple in oracle::random_simple_diagrams(args.random, args.seed) {
        let before = simple.face_node_count();
        if before.weighted() < simple.height() + 1 {
            return Err(Failure {
                exit: EXIT_CONTRADICTION,
                message: format!(
                    "random simple diagram of height {} has 2f+e+c = {}",
                    simple.height(),
                    before.weighted()
                ),
            });
        }
        let filled = simple.fill().map_err(|e| Failure {
            exit: EXIT_CONTRADICTION,
            message: format!("fill failed: {e}"),
        })?;
        if filled.face_node_count().weighted() > before.weighted() {
            return Err(Failure {
                exit: EXIT_CONTRADICTION,
                message: "fill increased the boundary count".into(),
            });
        }
        random_checked += 1;
    }
    if args.json {
        let mut verdicts = serde_json::to_value(&survey).expect("report serializes");
        verdicts["random_checked"] = json!(random_checked);
        emit(&report(
            "lemma42",
            json!({ "max_height": args.max_height, "max_width": args.max_width, "random": args.random }),
            verdicts,
        ));
    } else {
        println!(
            "height <= {}, row span <= {}: {} simple diagrams over {} row patterns, min slack {}",
            args.max_height,
            args.max_width,
            survey.simple_count,
            survey.row_patterns,
            survey.min_slack
        );
        if random_checked > 0 {
            println!("random fills checked: {random_checked}");
        }
        println!("2f + e + c >= height + 1 verified; fill never increased the count");
    }
    Ok(())
}

fn run_faces(args: DiagramArgs) -> Result<(), Failure> {
    let diagram = diagram_of(&args)?;
    let faces = diagram.faces();
    if args.poly.json {
        let listed: Vec<Value> = faces
            .iter()
            .map(|face| {
                let points: Vec<_> = face.points.iter().map(|p| p.entries().to_vec()).collect();
                match face.kind {
                    FaceKind::Vertical { axes } => json!({
                        "type": "vertical",
                        "vars": [axes.0 + 1, axes.1 + 1],
                        "points": points,
                    }),
                    FaceKind::Horizontal { degree } => json!({
                        "type": "horizontal",
                        "degree": degree,
                        "points": points,
                    }),
                }
            })
            .collect();
        emit(&report(
            "faces",
            json!({ "dim": args.poly.dim, "of_quotient": args.of_quotient }),
            json!({ "faces": listed, "count": faces.len() }),
        ));
    } else {
        for face in &faces {
            let points: Vec<String> = face
                .points
                .iter()
                .map(|p| format!("{:?}", p.entries()))
                .collect();
            match face.kind {
                FaceKind::Vertical { axes } => {
                    println!(
                        "vertical (x{}, x{}): {}",
                        axes.0 + 1,
                        axes.1 + 1,
                        points.join(" ")
                    );
                }
                FaceKind::Horizontal { degree } => {
                    println!("horizontal degree {degree}: {}", points.join(" "));
                }
            }
        }
        println!("{} faces", faces.len());
    }
    Ok(())
}
