use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use orbihom::algebra::build_crossed_product;
use orbihom::coefficients::total_complex;
use orbihom::cyclic::{mixed_from_cyclic, TwistedCyclicModule};
use orbihom::koszul::{koszul_exactness_report, LinearKoszulData, DEFAULT_ORDER_BOUND};
use orbihom::linalg::SparseMatrix;
use orbihom::orbifold::{sector_decomposition, verify_theorem, Verdict};
use orbihom::{Error, Field, PrimeField, Rationals};
use serde_json::Value;

use crate::problem::{FieldDesc, LoadError, ProblemFile};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const MAX_CHAIN_DIM_VAR: &str = "ORBIHOM_MAX_CHAIN_DIM";
pub const DEFAULT_MAX_CHAIN_DIM: usize = 200_000;

#[derive(Parser, Debug)]
#[command(name = "orbihom", version, about = "Exact Hochschild and cyclic homology of finite orbifolds")]
pub struct Cli {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallel: u16,
    /// Leave timing fields out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compare the crossed product with the sector and fixed-locus models.
    Verify { file: PathBuf },
    /// Homology of C(A ⋊ G), or of C(A) with --algebra-only.
    Homology {
        file: PathBuf,
        #[arg(long)]
        algebra_only: bool,
    },
    /// Exactness of the Koszul complex of a finite-order linear map.
    Koszul {
        #[arg(long)]
        dim: usize,
        /// Row-major comma-separated entries, "n" or "n/d".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        order_bound: usize,
        /// Work over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print the sector decomposition table.
    Sectors { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Load(LoadError),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Invalid(e) => Failure::Math(e),
            e => Failure::Load(e),
        }
    }
}

impl Failure {
    fn outcome(self) -> Outcome {
        let (code, message) = match self {
            Failure::Load(e) => (EXIT_INPUT, e.to_string()),
            Failure::Math(e @ Error::ResourceLimit { .. }) => {
                (EXIT_RESOURCE, format!("{e}\nhint: lower the truncation or raise {MAX_CHAIN_DIM_VAR}"))
            }
            Failure::Math(e @ (Error::NotSmooth | Error::NotCommutative(..))) => (
                EXIT_INPUT,
                format!(
                    "{e}\nhint: the comparison needs a smooth commutative algebra; \
                     set \"mode\": \"report-only\" to compute homology without a verdict"
                ),
            ),
            Failure::Math(e) => (EXIT_INPUT, e.to_string()),
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: e.to_string() },
        Err(e) => return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() },
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.parallel as usize).build() {
        Ok(pool) => pool,
        Err(e) => return Failure::Math(Error::Parse(e.to_string())).outcome(),
    };
    let start = Instant::now();
    match pool.install(|| execute(&cli.command)) {
        Ok((mut value, code)) => {
            if !cli.no_timing {
                value["timing"] = serde_json::json!({
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                    "parallel": cli.parallel,
                });
            }
            Outcome { code, stdout: report::render(&value), stderr: String::new() }
        }
        Err(f) => f.outcome(),
    }
}

fn execute(command: &Command) -> Result<(Value, i32), Failure> {
    match command {
        Command::Verify { file } => {
            let p = ProblemFile::load(file)?;
            match p.field {
                FieldDesc::Q => verify(&Rationals, &p),
                FieldDesc::Fp { p: modulus } => verify(&PrimeField::new(modulus)?, &p),
            }
        }
        Command::Homology { file, algebra_only } => {
            let p = ProblemFile::load(file)?;
            match p.field {
                FieldDesc::Q => homology(&Rationals, &p, *algebra_only),
                FieldDesc::Fp { p: modulus } => homology(&PrimeField::new(modulus)?, &p, *algebra_only),
            }
        }
        Command::Sectors { file } => {
            let p = ProblemFile::load(file)?;
            match p.field {
                FieldDesc::Q => sectors(&Rationals, &p),
                FieldDesc::Fp { p: modulus } => sectors(&PrimeField::new(modulus)?, &p),
            }
        }
        Command::Koszul { dim, matrix, max_degree, order_bound, prime } => match prime {
            None => koszul(&Rationals, *dim, matrix, *max_degree, *order_bound),
            Some(p) => koszul(&PrimeField::new(*p)?, *dim, matrix, *max_degree, *order_bound),
        },
    }
}

fn max_chain_dim() -> Result<usize, Error> {
    match std::env::var(MAX_CHAIN_DIM_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{MAX_CHAIN_DIM_VAR}={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_CHAIN_DIM),
    }
}

/// Refuses before any tensor space `base^(top+1)` is allocated.
fn check_chain_dim(base: usize, top: usize) -> Result<(), Error> {
    let limit = max_chain_dim()?;
    let required = u32::try_from(top + 1).ok().and_then(|e| base.checked_pow(e)).unwrap_or(usize::MAX);
    if required > limit {
        return Err(Error::ResourceLimit { required, limit });
    }
    Ok(())
}

fn verify<F: Field>(field: &F, p: &ProblemFile) -> Result<(Value, i32), Failure> {
    let problem = p.orbifold_problem(field)?;
    let order = problem.action.group().order();
    let input = report::input_summary(p, problem.algebra.dim(), order);
    check_chain_dim(problem.algebra.dim() * order, p.truncation)?;
    let set = p.gset()?;
    match verify_theorem(&problem) {
        Ok(r) => {
            let code = if r.verdict == Verdict::Fail { EXIT_FAIL } else { EXIT_OK };
            Ok((report::verify_report(input, &r, set.as_ref()), code))
        }
        Err(Error::NotAMixedMap { operator, degree, witness }) => {
            Ok((report::mixed_map_failure(input, operator, degree, witness), EXIT_FAIL))
        }
        Err(e) => Err(e.into()),
    }
}

fn homology<F: Field>(field: &F, p: &ProblemFile, algebra_only: bool) -> Result<(Value, i32), Failure> {
    let (algebra, action) = p.build(field)?;
    let input = report::input_summary(p, algebra.dim(), action.group().order());
    let kinds = p.coefficient_kinds()?;
    let (target, label) = if algebra_only {
        (algebra, "A")
    } else {
        check_chain_dim(algebra.dim() * action.group().order(), p.truncation)?;
        (build_crossed_product(&algebra, &action)?.algebra, "A#G")
    };
    check_chain_dim(target.dim(), p.truncation)?;
    let mixed = mixed_from_cyclic(&TwistedCyclicModule::untwisted(&target, p.truncation)?)?;
    let theories = kinds
        .into_iter()
        .map(|w| Ok(report::total_homology(&total_complex(&mixed, w)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok((report::homology_report(input, label, target.dim(), theories), EXIT_OK))
}

fn sectors<F: Field>(field: &F, p: &ProblemFile) -> Result<(Value, i32), Failure> {
    let (algebra, action) = p.build(field)?;
    let input = report::input_summary(p, algebra.dim(), action.group().order());
    let dec = sector_decomposition(&algebra, &action)?;
    let set = p.gset()?;
    Ok((report::sectors_report(input, report::sector_table(&dec, set.as_ref())), EXIT_OK))
}

/// Parses `m * m` comma-separated entries in row-major order.
pub fn parse_matrix<F: Field>(field: &F, m: usize, entries: &str) -> Result<Vec<Vec<F::Elem>>, Error> {
    let values = entries
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| field.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != m * m {
        return Err(Error::ShapeMismatch(format!("{} matrix entries for dimension {m}", values.len())));
    }
    Ok(values.chunks(m.max(1)).map(|r| r.to_vec()).take(m).collect())
}

fn koszul<F: Field>(field: &F, m: usize, entries: &str, max_degree: usize, bound: usize) -> Result<(Value, i32), Failure> {
    let rows = parse_matrix(field, m, entries)?;
    // the largest chain group is Sym^D, of dimension C(m + D - 1, D)
    let sym = (1..=max_degree).try_fold(1usize, |acc, i| acc.checked_mul(m + i - 1).map(|x| x / i));
    let limit = max_chain_dim()?;
    match sym {
        Some(n) if n <= limit => {}
        other => return Err(Error::ResourceLimit { required: other.unwrap_or(usize::MAX), limit }.into()),
    }
    let formatted = rows.iter().map(|r| r.iter().map(|x| field.format(x)).collect()).collect();
    let data = LinearKoszulData::with_order_bound(field, SparseMatrix::from_dense(field, &rows)?, bound)?;
    let r = koszul_exactness_report(&data, max_degree);
    let code = if r.quasi_iso_to_k() { EXIT_OK } else { EXIT_FAIL };
    Ok((report::koszul_report(field.spec(), formatted, data.fixed_space_is_zero(), &r), code))
}

