//! `modinv`: compute Dickson invariants, Hilbert series, orbit counts and
//! bases, and run the verification campaigns.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error or refused
//! work bound.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use modinv::basisgen::{self, BasisReport};
use modinv::combinat::hilbert_conjecture;
use modinv::dickson::Dickson;
use modinv::gfq::{FieldParams, Gf};
use modinv::groups::GroupSpec;
use modinv::identities::{self, DEFAULT_SEED};
use modinv::solver::{self, HilbertReport};
use modinv::steenrod::verify_filtration;

/// Largest `q^n` for which `dickson` expands `Q_{n,i}`.
const DICKSON_BOUND: u64 = 4096;

#[derive(Parser, Debug)]
#[command(name = "modinv", version, about = "Parabolic invariants of truncated polynomial algebras over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Clone, Default)]
struct Params {
    /// Field order, a prime power.
    #[arg(long, global = true, env = "MODINV_Q")]
    q: Option<u64>,
    /// Truncation level: `Q_m(n) = F_q[x_1..x_n] / (x_i^{q^m})`.
    #[arg(long, global = true, env = "MODINV_M")]
    m: Option<u32>,
    /// Number of variables.
    #[arg(long, global = true, env = "MODINV_N")]
    n: Option<usize>,
    /// Filtration level.
    #[arg(long, global = true, env = "MODINV_K")]
    k: Option<usize>,
    /// Index of the Dickson invariant `Q_{n,i}`.
    #[arg(long, global = true, env = "MODINV_I", allow_negative_numbers = true)]
    i: Option<i64>,
    /// Block sizes of the parabolic subgroup, e.g. `2,1`.
    #[arg(long, global = true, env = "MODINV_ALPHA")]
    alpha: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct Output {
    /// Write a JSON report here (`-` for stdout).
    #[arg(long, global = true, env = "MODINV_JSON")]
    json: Option<PathBuf>,
    /// Write a per-degree CSV table here.
    #[arg(long, global = true, env = "MODINV_CSV")]
    csv: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "MODINV_JOBS")]
    jobs: Option<usize>,
    /// `key = value` file supplying defaults for the flags above.
    #[arg(long, global = true, env = "MODINV_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, short, global = true, env = "MODINV_VERBOSE")]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Dickson invariant `Q_{n,i}`.
    Dickson,
    /// Print the conjectured Hilbert series `C_{alpha,m}(t)`.
    Series,
    /// Count `P(alpha)`-orbits on `F_{q^m}^n`.
    Orbits,
    /// Dump the basis of `Q_m(n)^{P(alpha)}` as JSON.
    BasisDump,
    /// Run a verification campaign.
    Verify {
        #[command(subcommand)]
        subject: Subject,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Subject {
    /// Brute-force Hilbert series against `C_{alpha,m}(t)`.
    Hilbert,
    /// Invariance, independence and span of the constructed basis.
    Basis {
        /// Allow `n > 3`, where the nested recipe is unproven.
        #[arg(long)]
        conjecture_check: bool,
    },
    /// Steenrod and Dickson closure of the filtration `F_{n,k}`.
    Filtration,
    /// The delta/Dickson/transfer/Steenrod identity suites.
    Identities {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Fail {
    Usage(String),
    Mismatch,
}

impl From<modinv::Error> for Fail {
    fn from(e: modinv::Error) -> Fail {
        match e {
            modinv::Error::WorkBound(msg) => Fail::Usage(format!("refused: work bound exceeded: {msg}")),
            e => Fail::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    match run(&mut cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Mismatch) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("modinv: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &mut Cli) -> Outcome {
    if let Some(path) = cli.output.config.clone() {
        apply_config(cli, &path)?;
    }
    if let Some(jobs) = cli.output.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| usage(e.to_string()))?;
    }
    let ctx = Ctx { p: cli.params.clone(), out: cli.output.clone() };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Dickson => ctx.dickson(),
        Command::Series => ctx.series(),
        Command::Orbits => ctx.orbits(),
        Command::BasisDump => ctx.basis_dump(),
        Command::Verify { subject } => match *subject {
            Subject::Hilbert => ctx.verify_hilbert(),
            Subject::Basis { conjecture_check } => ctx.verify_basis(conjecture_check),
            Subject::Filtration => ctx.verify_filtration(),
            Subject::Identities { seed } => ctx.verify_identities(seed),
        },
    };
    ctx.log(format!("finished in {:.2}s", start.elapsed().as_secs_f64()));
    result
}

fn apply_config(cli: &mut Cli, path: &Path) -> Outcome {
    let cfg = config::load(path).map_err(usage)?;
    fn fill<T: std::str::FromStr>(slot: &mut Option<T>, cfg: &std::collections::BTreeMap<String, String>, key: &str) -> Outcome {
        if slot.is_none() {
            if let Some(v) = cfg.get(key) {
                *slot = Some(v.parse().map_err(|_| usage(format!("config: bad value for {key}: {v}")))?);
            }
        }
        Ok(())
    }
    let p = &mut cli.params;
    fill(&mut p.q, &cfg, "q")?;
    fill(&mut p.m, &cfg, "m")?;
    fill(&mut p.n, &cfg, "n")?;
    fill(&mut p.k, &cfg, "k")?;
    fill(&mut p.i, &cfg, "i")?;
    fill(&mut p.alpha, &cfg, "alpha")?;
    let o = &mut cli.output;
    fill(&mut o.jobs, &cfg, "jobs")?;
    fill(&mut o.json, &cfg, "json")?;
    fill(&mut o.csv, &cfg, "csv")?;
    if !o.verbose {
        if let Some(v) = cfg.get("verbose") {
            o.verbose = matches!(v.as_str(), "1" | "true" | "yes" | "on");
        }
    }
    Ok(())
}

struct Ctx {
    p: Params,
    out: Output,
}

impl Ctx {
    fn log(&self, msg: impl AsRef<str>) {
        if self.out.verbose {
            eprintln!("[modinv] {}", msg.as_ref());
        }
    }

    fn field(&self) -> Result<Gf, Fail> {
        let q = self.p.q.ok_or_else(|| usage("--q is required"))?;
        Ok(FieldParams::of_order(q)?)
    }

    fn m(&self) -> Result<u32, Fail> {
        let m = self.p.m.ok_or_else(|| usage("--m is required"))?;
        if m == 0 {
            return Err(usage("--m must be positive"));
        }
        Ok(m)
    }

    fn alpha(&self) -> Result<Vec<u32>, Fail> {
        let text = self.p.alpha.as_deref().ok_or_else(|| usage("--alpha is required"))?;
        let alpha = text
            .split(',')
            .map(|s| s.trim().parse::<u32>().ok().filter(|&a| a > 0))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| usage(format!("--alpha must be positive integers separated by commas, got `{text}`")))?;
        let n: u32 = alpha.iter().sum();
        if let Some(given) = self.p.n {
            if given != n as usize {
                return Err(usage(format!("--n {given} disagrees with |alpha| = {n}")));
            }
        }
        Ok(alpha)
    }

    fn write_json(&self, value: &serde_json::Value) -> Outcome {
        let Some(path) = &self.out.json else { return Ok(()) };
        let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
        if path.as_os_str() == "-" {
            print!("{text}");
            return Ok(());
        }
        std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        self.log(format!("wrote {}", path.display()));
        Ok(())
    }

    /// Rows of `degree, conjecture, bruteforce, basis_count, match`.
    fn write_csv(&self, rows: &[(u32, String, u64, Option<u64>, bool)]) -> Outcome {
        let Some(path) = &self.out.csv else { return Ok(()) };
        let mut text = String::from("degree,conjecture,bruteforce,basis_count,match\n");
        for (d, conj, brute, count, ok) in rows {
            let count = count.map(|c| c.to_string()).unwrap_or_default();
            writeln!(text, "{d},{conj},{brute},{count},{ok}").expect("string write");
        }
        std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        self.log(format!("wrote {}", path.display()));
        Ok(())
    }

    fn dickson(&self) -> Outcome {
        let f = self.field()?;
        let n = self.p.n.ok_or_else(|| usage("--n is required"))?;
        let i = self.p.i.ok_or_else(|| usage("--i is required"))?;
        let size = (f.q() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > DICKSON_BOUND {
            return Err(usage(format!("refused: work bound exceeded: q^n = {size} > {DICKSON_BOUND}")));
        }
        let p = Dickson::new(&f).qpoly(n, i);
        println!("{p}");
        self.write_json(&serde_json::json!({ "q": f.q(), "n": n, "i": i, "poly": p.to_string() }))
    }

    fn series(&self) -> Outcome {
        let f = self.field()?;
        let (alpha, m) = (self.alpha()?, self.m()?);
        let s = hilbert_conjecture(&alpha, m, f.q() as u64)?;
        println!("{s}");
        self.log(format!("C(1) = {}", s.total()));
        self.write_json(&serde_json::json!({
            "alpha": alpha, "m": m, "q": f.q(), "series": s.to_json(), "total": s.total().to_string(),
        }))
    }

    fn orbits(&self) -> Outcome {
        let f = self.field()?;
        let (alpha, m) = (self.alpha()?, self.m()?);
        let k = solver::orbit_count(&f, &alpha, m)?;
        println!("{k}");
        self.write_json(&serde_json::json!({ "alpha": alpha, "m": m, "q": f.q(), "orbits": k }))
    }

    fn basis_dump(&self) -> Outcome {
        let f = self.field()?;
        let (alpha, m) = (self.alpha()?, self.m()?);
        let n: u32 = alpha.iter().sum();
        solver::check_work_bound(n as usize, m, f.q() as u64)?;
        let basis = basisgen::build(&f, &alpha, m)?;
        self.log(format!("{} elements, families {:?}", basis.elements.len(), basis.family_sizes()));
        let json = basis.to_json();
        if self.out.json.is_none() {
            println!("{}", serde_json::to_string_pretty(&json).expect("json values serialize"));
            return Ok(());
        }
        self.write_json(&json)
    }

    fn verify_hilbert(&self) -> Outcome {
        let f = self.field()?;
        let (alpha, m) = (self.alpha()?, self.m()?);
        let r: HilbertReport = solver::verify_hilbert(&f, &alpha, m)?;
        let rows: Vec<_> = (0..r.bruteforce.len().max(r.conjecture.coeffs().len()))
            .map(|d| {
                let conj = r.conjecture.coeff(d);
                let brute = r.bruteforce.get(d).copied().unwrap_or(0);
                (d as u32, conj.to_string(), brute, None, conj == brute.into())
            })
            .collect();
        for (d, conj, brute, _, ok) in &rows {
            self.log(format!("degree {d}: conjecture {conj}, bruteforce {brute}{}", if *ok { "" } else { "  MISMATCH" }));
        }
        let orbits = r.totals.orbits.map(|k| k.to_string()).unwrap_or_else(|| "skipped".into());
        println!(
            "hilbert alpha={} m={m} q={}: {} (total {}, orbits {orbits})",
            join(&alpha),
            f.q(),
            verdict(r.equal),
            r.totals.bruteforce
        );
        self.write_json(&r.to_json())?;
        self.write_csv(&rows)?;
        if r.equal { Ok(()) } else { Err(Fail::Mismatch) }
    }

    fn verify_basis(&self, conjecture_check: bool) -> Outcome {
        let f = self.field()?;
        let (alpha, m) = (self.alpha()?, self.m()?);
        let n: u32 = alpha.iter().sum();
        if n > 3 && !conjecture_check {
            return Err(usage(format!("basis verification needs n <= 3 (got {n}); pass --conjecture-check to try the recipe")));
        }
        solver::check_work_bound(n as usize, m, f.q() as u64)?;
        let basis = basisgen::build(&f, &alpha, m)?;
        let group = GroupSpec::parabolic(&f, &alpha)?;
        let r: BasisReport = basisgen::verify_independence_and_span(&basis, &group)?;
        let rows: Vec<_> = r
            .rows
            .iter()
            .map(|row| (row.degree, row.conjecture.clone(), row.bruteforce, Some(row.basis_count), row.matches()))
            .collect();
        for row in r.rows.iter().filter(|row| row.bruteforce > 0 || row.basis_count > 0) {
            self.log(format!(
                "degree {}: conjecture {}, bruteforce {}, elements {}, rank {}{}",
                row.degree,
                row.conjecture,
                row.bruteforce,
                row.basis_count,
                row.rank,
                if row.matches() { "" } else { "  MISMATCH" }
            ));
        }
        println!(
            "basis alpha={} m={m} q={}: {} ({} elements, {} not invariant, {} zero, {} off-degree)",
            join(&alpha),
            f.q(),
            verdict(r.ok()),
            basis.elements.len(),
            r.not_invariant.len(),
            r.zero_elements.len(),
            r.degree_mismatches.len()
        );
        self.write_json(&serde_json::json!({
            "alpha": alpha,
            "m": m,
            "q": f.q(),
            "passed": r.ok(),
            "rows": r.rows,
            "not_invariant": r.not_invariant,
            "zero_elements": r.zero_elements,
            "degree_mismatches": r.degree_mismatches,
            "basis": basis.to_json(),
        }))?;
        self.write_csv(&rows)?;
        if r.ok() { Ok(()) } else { Err(Fail::Mismatch) }
    }

    fn verify_filtration(&self) -> Outcome {
        let f = self.field()?;
        let m = self.m()?;
        let n = match (self.p.n, &self.p.alpha) {
            (Some(n), _) => n,
            (None, Some(_)) => self.alpha()?.iter().sum::<u32>() as usize,
            (None, None) => return Err(usage("--n is required")),
        };
        let k = self.p.k.ok_or_else(|| usage("--k is required"))?;
        if !(1..=3).contains(&n) {
            return Err(usage(format!("filtration verification needs 1 <= n <= 3, got {n}")));
        }
        solver::check_work_bound(n, m, f.q() as u64)?;
        let r = verify_filtration(&f, n, k, m)?;
        println!(
            "filtration F_{{{n},{k}}} m={m} q={}: {} ({} elements, {} Steenrod, {} Dickson, {} annihilation checks)",
            f.q(),
            verdict(r.passed()),
            r.elements,
            r.steenrod_checks,
            r.dickson_checks,
            r.annihilation_checks
        );
        for w in &r.failures {
            self.log(format!("escapes: {} under {}", w.element, w.operation));
        }
        self.write_json(&r.to_json())?;
        if r.passed() { Ok(()) } else { Err(Fail::Mismatch) }
    }

    fn verify_identities(&self, seed: u64) -> Outcome {
        let f = self.field()?;
        let m = self.m()?;
        solver::check_work_bound(3, m, f.q() as u64)?;
        let reports = identities::run_all(&f, m, seed)?;
        for r in &reports {
            println!("{} {} ({} cases)", verdict(r.passed), r.name, r.cases);
            for fail in &r.failures {
                self.log(format!("  {fail}"));
            }
        }
        let ok = reports.iter().all(|r| r.passed);
        self.write_json(&serde_json::json!({ "q": f.q(), "m": m, "seed": seed, "passed": ok, "reports": reports }))?;
        if ok { Ok(()) } else { Err(Fail::Mismatch) }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

fn join(alpha: &[u32]) -> String {
    alpha.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
