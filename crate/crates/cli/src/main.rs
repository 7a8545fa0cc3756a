mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use kflop::bott::{bott_cohomology, hodge_numbers_with, Weight};
use kflop::counterex::{counterexample_report, Presentation};
use kflop::flopgeom::{gamma_map, is_indeterminate, is_prime, quadric_value, springer_fiber, AffinePoint5, ModP, PlueckerPoint};
use kflop::kgroup::{ClassExpr, KTheory, MatrixReport};
use kflop::linalg::IntegerMatrix;
use kflop::partitions::enumerate_box;
use kflop::verify::{verify_all, DEFAULT_SEED};
use kflop::weyl::{chamber_sort_report, duality_sigma, duality_word, ChamberVector};
use kflop::{BoxShape, Error, Strategy};

#[derive(Parser)]
#[command(name = "kflop", version, about = "Exact K-theory and flop computations on Grassmannians")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Grass {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    h: usize,
}

impl Grass {
    fn shape(&self) -> Result<BoxShape, Error> {
        BoxShape::grassmannian(self.t, self.h)
    }

    /// Flop commands require `t <= h/2`.
    fn flop_shape(&self) -> Result<BoxShape, Error> {
        if 2 * self.t > self.h {
            return Err(Error::InvalidParameter(format!("flops need t <= h/2, got t={}, h={}", self.t, self.h)));
        }
        self.shape()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Canonical basis of K(G(t,h)).
    Kbasis(Grass),
    /// Matrix of the flop map in canonical bases.
    FlopMatrix(Grass),
    /// Unimodularity verdict for the flop map.
    CheckIso(Grass),
    /// Smith invariants of a matrix, or of the flop matrix.
    Snf {
        /// JSON array of rows, e.g. [[1,2],[3,4]].
        #[arg(long, conflicts_with_all = ["t", "h"])]
        matrix: Option<String>,
        #[arg(long, requires = "h")]
        t: Option<usize>,
        #[arg(long, requires = "t")]
        h: Option<usize>,
    },
    /// The main-component map on T*P^2 and its index.
    Counterexample {
        /// Basis ([O(1)], [O], [O(-1)]); the default.
        #[arg(long, alias = "paper-basis", conflicts_with = "canonical_basis")]
        line_basis: bool,
        #[arg(long)]
        canonical_basis: bool,
    },
    /// Cohomology of an irreducible homogeneous bundle.
    Bott {
        #[command(flatten)]
        grass: Grass,
        /// "a1,..,at|b1,..,b(h-t)": Sigma^a tau (x) Sigma^b q.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Hodge numbers of G(t,h).
    Hodge(Grass),
    /// Image of a point under the map to Pluecker space.
    Gamma {
        /// alpha,x,y,z,w
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Work over F_p instead of Q.
        #[arg(long)]
        field: Option<u64>,
    },
    /// Value of the Pluecker quadric.
    Quadric {
        /// p12,p13,p14,p23,p24,p34
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Springer fibre over a rank-i point.
    SpringerFiber {
        #[command(flatten)]
        grass: Grass,
        #[arg(long)]
        i: usize,
    },
    /// The duality element of S_h and its word.
    WeylWord {
        #[arg(long)]
        h: usize,
    },
    /// Sort a regular vector into the dominant chamber.
    ChamberSort {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Expand a class expression in the canonical basis.
    Expand {
        #[command(flatten)]
        grass: Grass,
        /// e.g. "wedge2(T)&O(-1) - 3*O"
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Run every acceptance criterion.
    VerifyAll,
}

/// A command's report and whether its verdict holds.
struct Outcome {
    report: Value,
    verdict: bool,
    table: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, verdict: true, table: None }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(T::to_string).collect()
}

fn parse_list<T: std::str::FromStr>(s: &str, n: usize, what: &str) -> Result<Vec<T>, Error> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry `{x}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!("{what} needs {n} entries, got {}", v.len())));
    }
    Ok(v)
}

fn parse_matrix(s: &str) -> Result<IntegerMatrix, Error> {
    let value: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let rows = value.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                .iter()
                .map(|x| {
                    let text = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(Error::Parse(format!("bad matrix entry {x}"))),
                    };
                    text.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad matrix entry {x}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntegerMatrix::from_rows(&rows)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::default() };
    let outcome = match &cli.command {
        Command::Kbasis(g) => {
            let shape = g.shape()?;
            let basis = enumerate_box(shape);
            Outcome::ok(json!({"box": [shape.rows, shape.cols], "rank": basis.len(), "basis": strings(&basis)}))
        }
        Command::FlopMatrix(g) => {
            let shape = g.flop_shape()?;
            let m = KTheory::shared(shape).flop_matrix(strategy)?;
            Outcome::ok(to_json(&MatrixReport::new(shape, &m)?))
        }
        Command::CheckIso(g) => {
            let shape = g.flop_shape()?;
            let det = KTheory::shared(shape).flop_matrix(strategy)?.determinant()?;
            let iso = det == BigInt::from(1) || det == BigInt::from(-1);
            Outcome {
                report: json!({"box": [shape.rows, shape.cols], "det": det.to_string(), "isomorphism": iso}),
                verdict: iso,
                table: None,
            }
        }
        Command::Snf { matrix, t, h } => {
            let m = match (matrix, t, h) {
                (Some(text), _, _) => parse_matrix(text)?,
                (None, Some(t), Some(h)) => {
                    let shape = Grass { t: *t, h: *h }.flop_shape()?;
                    KTheory::shared(shape).flop_matrix(strategy)?
                }
                _ => return Err(Error::InvalidParameter("give --matrix or both --t and --h".into())),
            };
            Outcome::ok(json!({"rows": m.rows(), "cols": m.cols(), "snf": strings(&m.smith_invariants())}))
        }
        Command::Counterexample { canonical_basis, .. } => {
            let presentation = if *canonical_basis { Presentation::Canonical } else { Presentation::Lines };
            Outcome::ok(to_json(&counterexample_report(presentation)?))
        }
        Command::Bott { grass, weight } => {
            let shape = grass.shape()?;
            let w: Weight = weight.parse()?;
            if w.shape() != shape {
                return Err(Error::BoxMismatch { left: w.shape().to_string(), right: shape.to_string() });
            }
            Outcome::ok(to_json(&bott_cohomology(&w)))
        }
        Command::Hodge(g) => Outcome::ok(to_json(&hodge_numbers_with(g.shape()?, strategy))),
        Command::Gamma { point, field } => gamma(point, *field)?,
        Command::Quadric { point } => {
            let c = parse_list::<BigRational>(point, 6, "Pluecker point")?;
            let pt = PlueckerPoint { coords: std::array::from_fn(|i| c[i].clone()) };
            let value = quadric_value(&pt);
            Outcome::ok(json!({"value": value.to_string(), "on_quadric": value == BigRational::from_integer(0.into())}))
        }
        Command::SpringerFiber { grass, i } => Outcome::ok(to_json(&springer_fiber(grass.t, grass.h, *i)?)),
        Command::WeylWord { h } => {
            let sigma = duality_sigma(*h)?;
            let word = duality_word(*h)?;
            Outcome::ok(json!({"sigma": sigma.one_line(), "word": word, "length": word.len()}))
        }
        Command::ChamberSort { vector } => {
            let v: ChamberVector = vector.parse()?;
            Outcome::ok(to_json(&chamber_sort_report(&v)?))
        }
        Command::Expand { grass, expr } => {
            let shape = grass.shape()?;
            let e: ClassExpr = expr.parse()?;
            let class = KTheory::shared(shape).expand(&e)?;
            Outcome::ok(json!({
                "box": [shape.rows, shape.cols],
                "expr": e.to_string(),
                "basis": strings(&enumerate_box(shape)),
                "coords": strings(class.coords()),
                "class": class.to_string(),
            }))
        }
        Command::VerifyAll => {
            let report = verify_all(cli.seed, strategy);
            let mut lines = String::new();
            for c in &report.criteria {
                lines.push_str(&format!(
                    "{:>2} {:<28} {} {:>9.1} ms  {}\n",
                    c.id,
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.elapsed.as_secs_f64() * 1e3,
                    c.detail
                ));
            }
            Outcome { verdict: report.all_pass, report: to_json(&report), table: Some(lines) }
        }
    };
    Ok(outcome)
}

fn gamma(point: &str, field: Option<u64>) -> Result<Outcome, Error> {
    match field {
        None => {
            let c = parse_list::<BigRational>(point, 5, "point")?;
            let pt = AffinePoint5::new(std::array::from_fn(|i| c[i].clone()));
            let indeterminate = is_indeterminate(&pt)?;
            let image = gamma_map(&pt);
            Ok(Outcome::ok(json!({
                "field": "Q",
                "pluecker": strings(&image.coords),
                "indeterminate": indeterminate,
                "quadric": quadric_value(&image).to_string(),
            })))
        }
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("field order {p} is not prime")));
            }
            let c = parse_list::<i64>(point, 5, "point")?;
            let pt = AffinePoint5::new(std::array::from_fn(|i| ModP::new(c[i], p)));
            let indeterminate = is_indeterminate(&pt)?;
            let image = gamma_map(&pt);
            Ok(Outcome::ok(json!({
                "field": p,
                "pluecker": image.coords.iter().map(|x| x.value().to_string()).collect::<Vec<_>>(),
                "indeterminate": indeterminate,
                "quadric": quadric_value(&image).value().to_string(),
            })))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NonIntegralExpansion { .. } | Error::Singular => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!("{}", outcome.report),
                Format::Table => match &outcome.table {
                    Some(text) => print!("{text}"),
                    None => print!("{}", table::render(&outcome.report)),
                },
            }
            if outcome.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let err = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            match cli.format {
                Format::Json => println!("{err}"),
                Format::Table => eprintln!("error ({}): {e}", e.kind()),
            }
            ExitCode::from(exit_code_for(&e))
        }
    }
}
