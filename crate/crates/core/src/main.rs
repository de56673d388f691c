use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use hyperclass::classgroup::{ambiguous_class_order, ambiguous_pair, least_alpha};
use hyperclass::construct::{theorem2_witnesses, verify_certificate, WitnessCertificate};
use hyperclass::field::{make_field, Fe, Tower};
use hyperclass::poly::{set_factor_seed, Poly, DEFAULT_FACTOR_SEED};
use hyperclass::report::{render, Format, RunConfig};
use hyperclass::verify::{self, GridPoint};
use hyperclass::zeta::DEFAULT_COUNT_CAP;
use hyperclass::Error;

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperclass", version, about = "Class groups of F_q[T, √(e𝔭)] and their 2-power divisibility")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Characteristic.
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Non-square multiplier as an element index; defaults to the least non-square.
    #[arg(long)]
    e: Option<u32>,
    /// Largest extension field size used in point counting.
    #[arg(long, env = "HYPERCLASS_CAP", default_value_t = DEFAULT_COUNT_CAP)]
    count_cap: u64,
    /// Seed for equal-degree polynomial splitting.
    #[arg(long, default_value_t = DEFAULT_FACTOR_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Class number, structure and cross-checks for one discriminant e·𝔭.
    Classnum {
        #[command(flatten)]
        common: Common,
        /// 𝔭 in the text form "c0+c1T+c2T^2".
        #[arg(long)]
        poly: String,
    },
    /// Sweeps checking one family of statements; exit 1 on any failure.
    Verify {
        #[command(subcommand)]
        mode: VerifyMode,
    },
    /// Two degree-k discriminants whose class numbers differ mod 8.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
    },
    /// Re-verifies a witness certificate from scratch.
    Recheck {
        /// Certificate written by `witness --format json`.
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, env = "HYPERCLASS_CAP", default_value_t = DEFAULT_COUNT_CAP)]
        count_cap: u64,
    },
    /// h mod 8 over irreducibles of degree k, with residue patterns at linear primes.
    Survey {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        /// Number of irreducibles sampled.
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum VerifyMode {
    /// Parity and 4-divisibility of h against deg 𝔭.
    Thm1 {
        #[command(flatten)]
        common: Common,
        /// Largest deg 𝔭.
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },
    /// The δB(λ) prediction of 8 | h on special discriminants.
    #[command(name = "8crit")]
    Crit {
        #[command(flatten)]
        common: Common,
        /// Grid of q:l points, e.g. "5:4,7:4,5:6"; defaults to --p/--n with --l.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 4)]
        l: usize,
        /// Special discriminants per grid point.
        #[arg(long, default_value_t = 4)]
        instances: usize,
    },
    /// Rational 2-power torsion on the Jacobian against 4 | k.
    Cor1 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// 4 | 2(q^k − 1)/(q² − 1) + h and the type-number parity rule.
    Gekeler {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::SearchExhausted(_) => EXIT_EXHAUSTED,
            Error::Internal(_) | Error::Saturated { .. } => EXIT_CHECK,
            _ => EXIT_USAGE,
        };
        Failure { code, message: err.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

struct Setup {
    tower: Tower,
    e: Fe,
}

fn setup(common: &Common) -> Result<Setup, Failure> {
    set_factor_seed(common.seed);
    let tower = make_field(common.p, common.n)?;
    let e = match common.e {
        Some(e) => {
            let f = tower.base();
            if !f.contains(Fe(e)) {
                return Err(usage(format!("e = {e} is not an element of F_{}", f.size())));
            }
            if f.is_square(Fe(e)) {
                return Err(Error::SquareMultiplier(format!("e = {e}")).into());
            }
            Fe(e)
        }
        None => tower.base().least_non_square(),
    };
    Ok(Setup { tower, e })
}

fn config(command: &str, common: &Common, s: &Setup) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        field: s.tower.base().spec().clone(),
        e: s.e.0,
        poly: None,
        degree_cap: None,
        l: None,
        k: None,
        count_cap: common.count_cap,
        instances: None,
        grid: None,
        seed: common.seed,
        format: common.format,
        out: common.out.as_ref().map(|p| p.display().to_string()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Summary {
    instances: usize,
    failures: usize,
}

fn finish<R: Serialize>(cfg: &RunConfig, out: &Option<PathBuf>, rows: &[R], failures: usize) -> Result<(), Failure> {
    let summary = Summary { instances: rows.len(), failures };
    emit(out, &render(cfg, &summary, rows)?)?;
    if failures > 0 {
        return Err(Failure { code: EXIT_CHECK, message: format!("{failures} of {} checks failed", rows.len()) });
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassnumRow {
    q: u32,
    e: u32,
    p_poly: String,
    k: usize,
    genus: usize,
    h: u64,
    h_mod_8: u64,
    divisors: String,
    two_sylow_s: u32,
    cyclic: bool,
    ambiguous_order: Option<u64>,
    l_polynomial: String,
    cross_check: String,
}

fn classnum(common: &Common, poly: &str) -> Result<(), Failure> {
    let s = setup(common)?;
    let p_poly = Poly::parse(poly, s.tower.q())?;
    let cd = verify::class_data(s.tower.base(), s.e, &p_poly, common.count_cap)?;
    let structure = cd.group.structure();
    let (two_s, cyclic) = structure.two_sylow();
    let ambiguous_order = if cd.order.k() % 2 == 0 {
        let alpha = least_alpha(s.tower.base(), cd.order.discriminant().lead());
        let (b, c) = ambiguous_pair(&s.tower, &cd.order, alpha)?;
        Some(ambiguous_class_order(&cd.order, &b, &c, &cd.group)?.order)
    } else {
        None
    };
    let join = |v: &[String], sep: &str| v.join(sep);
    let row = ClassnumRow {
        q: s.tower.q(),
        e: s.e.0,
        p_poly: p_poly.to_text(),
        k: cd.order.k(),
        genus: cd.order.genus(),
        h: cd.h,
        h_mod_8: cd.h % 8,
        divisors: join(&structure.divisors.iter().map(u64::to_string).collect::<Vec<_>>(), "x"),
        two_sylow_s: two_s,
        cyclic,
        ambiguous_order,
        l_polynomial: join(&cd.l_coeffs.iter().map(i64::to_string).collect::<Vec<_>>(), " "),
        cross_check: if cd.group.class_number() == cd.h { "ok".into() } else { "mismatch".into() },
    };
    let mut cfg = config("classnum", common, &s);
    cfg.poly = Some(poly.to_string());
    let failures = usize::from(row.cross_check != "ok");
    finish(&cfg, &common.out, &[row], failures)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

fn parse_grid(text: &str) -> Result<Vec<GridPoint>, Failure> {
    text.split(',')
        .map(|item| {
            let (q, l) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| usage(format!("grid entry {item:?} is not q:l")))?;
            let q: u32 = q.parse().map_err(|_| usage(format!("bad q in {item:?}")))?;
            let l: usize = l.parse().map_err(|_| usage(format!("bad l in {item:?}")))?;
            let (p, n) = prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power")))?;
            Ok(GridPoint { p, n, l })
        })
        .collect()
}

fn run_verify(mode: &VerifyMode) -> Result<(), Failure> {
    match mode {
        VerifyMode::Thm1 { common, cap } => {
            let s = setup(common)?;
            let rows = verify::verify_theorem1(&s.tower, s.e, *cap, common.count_cap);
            let mut cfg = config("verify thm1", common, &s);
            cfg.degree_cap = Some(*cap);
            finish(&cfg, &common.out, &rows, rows.iter().filter(|r| !r.pass).count())
        }
        VerifyMode::Cor1 { common, cap } => {
            let s = setup(common)?;
            let rows = verify::verify_corollary1(&s.tower, s.e, *cap, common.count_cap);
            let mut cfg = config("verify cor1", common, &s);
            cfg.degree_cap = Some(*cap);
            finish(&cfg, &common.out, &rows, rows.iter().filter(|r| !r.pass).count())
        }
        VerifyMode::Gekeler { common, cap } => {
            let s = setup(common)?;
            let rows = verify::verify_gekeler(&s.tower, s.e, *cap, common.count_cap);
            let mut cfg = config("verify gekeler", common, &s);
            cfg.degree_cap = Some(*cap);
            finish(&cfg, &common.out, &rows, rows.iter().filter(|r| !r.pass).count())
        }
        VerifyMode::Crit { common, grid, l, instances } => {
            let s = setup(common)?;
            let points = match grid {
                Some(g) => parse_grid(g)?,
                None => vec![GridPoint { p: common.p, n: common.n, l: *l }],
            };
            let rows = verify::verify_8crit(&points, *instances, common.count_cap);
            let mut cfg = config("verify 8crit", common, &s);
            cfg.grid = grid.clone();
            cfg.l = grid.is_none().then_some(*l);
            cfg.instances = Some(*instances);
            finish(&cfg, &common.out, &rows, rows.iter().filter(|r| !r.pass).count())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    config: serde_json::Value,
    certificate: WitnessCertificate,
}

#[derive(Serialize)]
struct WitnessRow {
    b_poly: String,
    delta: u32,
    e: u32,
    p_poly: String,
    h: u64,
    h_mod_8: u64,
    predicted_8_divides: bool,
    point_of_order_four: bool,
    type_number_even: bool,
    divisors: String,
}

fn witness(common: &Common, k: usize) -> Result<(), Failure> {
    if k % 4 != 0 {
        return Err(usage(format!("k = {k} is not divisible by 4")));
    }
    let s = setup(common)?;
    let mut cfg = config("witness", common, &s);
    cfg.k = Some(k);
    let cert = match theorem2_witnesses(&s.tower, k, common.count_cap) {
        Ok(c) => c,
        Err(err @ Error::SearchExhausted(_)) => {
            let report = serde_json::json!({
                "config": cfg,
                "status": "search exhausted",
                "reason": err.to_string(),
            });
            emit(&common.out, &format!("{}\n", serde_json::to_string_pretty(&report).expect("json")))?;
            return Err(err.into());
        }
        Err(err) => return Err(err.into()),
    };
    match common.format {
        Format::Json => {
            let file = WitnessFile { config: serde_json::to_value(&cfg).expect("json"), certificate: cert };
            emit(&common.out, &format!("{}\n", serde_json::to_string_pretty(&file).expect("json")))
        }
        Format::Csv => {
            let rows: Vec<WitnessRow> = [&cert.plus, &cert.minus]
                .iter()
                .map(|c| WitnessRow {
                    b_poly: c.b_poly.clone(),
                    delta: c.delta,
                    e: c.e,
                    p_poly: c.p_poly.clone(),
                    h: c.h,
                    h_mod_8: c.h_mod_8,
                    predicted_8_divides: c.predicted_8_divides,
                    point_of_order_four: c.two_torsion.has_point_of_order_four,
                    type_number_even: c.type_number_even,
                    divisors: c.divisors.iter().map(u64::to_string).collect::<Vec<_>>().join("x"),
                })
                .collect();
            finish(&cfg, &common.out, &rows, 0)
        }
    }
}

fn recheck(path: &PathBuf, count_cap: u64) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file: WitnessFile = serde_json::from_str(&text).map_err(|e| usage(format!("not a JSON witness certificate (write one with `witness --format json`): {e}")))?;
    verify_certificate(&file.certificate, count_cap)?;
    println!(
        "certificate ok: h = {}, h' = {}",
        file.certificate.plus.h, file.certificate.minus.h
    );
    Ok(())
}

#[derive(Serialize)]
struct SurveySummary {
    samples: usize,
    h_mod_8: Vec<(u64, usize)>,
}

fn survey(common: &Common, k: usize, cap: usize) -> Result<(), Failure> {
    let s = setup(common)?;
    let rows = verify::survey(&s.tower, s.e, k, cap, common.count_cap)?;
    let mut cfg = config("survey", common, &s);
    cfg.k = Some(k);
    cfg.instances = Some(cap);
    let summary = SurveySummary { samples: rows.len(), h_mod_8: verify::survey_histogram(&rows) };
    emit(&common.out, &render(&cfg, &summary, &rows)?)?;
    let failures = rows.iter().filter(|r| !r.failure.is_empty()).count();
    if failures > 0 {
        return Err(Failure { code: EXIT_CHECK, message: format!("{failures} survey rows failed") });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Classnum { common, poly } => classnum(common, poly),
        Command::Verify { mode } => run_verify(mode),
        Command::Witness { common, k } => witness(common, *k),
        Command::Recheck { cert, count_cap } => recheck(cert, *count_cap),
        Command::Survey { common, k, cap } => survey(common, *k, *cap),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hyperclass: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
