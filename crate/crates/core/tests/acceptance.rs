//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p modinv --test acceptance`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modinv::basisgen::{build, verify_independence_and_span};
use modinv::combinat::{compositions, q_int_literal};
use modinv::delta::{a_closed, delta, y_closed};
use modinv::dickson::Dickson;
use modinv::gfq::{FieldParams, Gf};
use modinv::groups::GroupSpec;
use modinv::identities::{run_all, DEFAULT_SEED};
use modinv::mvpoly::{act, MatrixGF, Monomial, Poly};
use modinv::solver::{verify_hilbert, ORBIT_BOUND};
use modinv::steenrod::{steenrod_power, unstable_check, verify_filtration};
use modinv::Result;

const GRID: [(u64, u32); 5] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];
const SMALL_GRID: [(u64, u32); 3] = [(2, 2), (2, 3), (3, 2)];

fn field(q: u64) -> Gf {
    FieldParams::of_order(q).expect("prime power")
}

fn alphas() -> Vec<Vec<u32>> {
    (1..=3).flat_map(compositions).collect()
}

/// Totals gathered by criteria 1 and 2 for the counting chain.
#[derive(Default)]
struct Counts {
    conjecture: BTreeMap<(u64, u32, Vec<u32>), String>,
    bruteforce: BTreeMap<(u64, u32, Vec<u32>), u64>,
    orbits: BTreeMap<(u64, u32, Vec<u32>), Option<u64>>,
    basis: BTreeMap<(u64, u32, Vec<u32>), u64>,
}

struct Outcome {
    failures: Vec<String>,
    cases: usize,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { failures: Vec::new(), cases: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let (ok, detail) = match f() {
        Ok(o) if o.failures.is_empty() && o.cases > 0 => (true, format!("{} cases", o.cases)),
        Ok(o) if o.cases == 0 => (false, "no cases ran".to_string()),
        Ok(o) => (false, format!("{}/{} failed: {}", o.failures.len(), o.cases, o.failures.join("; "))),
        Err(e) => (false, format!("error: {e}")),
    };
    let secs = start.elapsed().as_secs_f64();
    println!("{} criterion {id}: {name} ({detail}, {secs:.1}s)", if ok { "PASS" } else { "FAIL" });
    ok
}

fn hilbert(counts: &mut Counts) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (q, m) in GRID {
        let f = field(q);
        for alpha in alphas() {
            let r = verify_hilbert(&f, &alpha, m)?;
            o.check(r.equal, || format!("q={q} m={m} alpha={alpha:?}: {:?} vs {}", r.bruteforce, r.conjecture));
            let key = (q, m, alpha.clone());
            counts.conjecture.insert(key.clone(), r.totals.conjecture.clone());
            counts.bruteforce.insert(key.clone(), r.totals.bruteforce);
            counts.orbits.insert(key, r.totals.orbits);
        }
    }
    Ok(o)
}

fn bases(counts: &mut Counts) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (q, m) in GRID {
        let f = field(q);
        for alpha in alphas() {
            let basis = build(&f, &alpha, m)?;
            let group = GroupSpec::parabolic(&f, &alpha)?;
            let r = verify_independence_and_span(&basis, &group)?;
            o.check(r.not_invariant.is_empty(), || format!("q={q} m={m} alpha={alpha:?}: not invariant {:?}", r.not_invariant));
            let dependent: Vec<u32> = r.rows.iter().filter(|row| row.rank != row.basis_count).map(|row| row.degree).collect();
            o.check(dependent.is_empty() && r.zero_elements.is_empty(), || {
                format!("q={q} m={m} alpha={alpha:?}: dependent in degrees {dependent:?}")
            });
            let short: Vec<u32> = r.rows.iter().filter(|row| !row.matches()).map(|row| row.degree).collect();
            o.check(short.is_empty() && r.degree_mismatches.is_empty(), || {
                format!("q={q} m={m} alpha={alpha:?}: span/degree mismatch in degrees {short:?}")
            });
            counts.basis.insert((q, m, alpha), basis.elements.len() as u64);
        }
    }
    Ok(o)
}

fn counting_chain(counts: &Counts) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (key, conj) in &counts.conjecture {
        let (q, m, alpha) = key;
        if q.checked_pow(m * alpha.iter().sum::<u32>()).map_or(true, |s| s > ORBIT_BOUND) {
            continue;
        }
        let brute = counts.bruteforce[key];
        let basis = counts.basis.get(key).copied();
        let orbits = counts.orbits[key];
        let ok = orbits.map(|k| k.to_string()) == Some(conj.clone())
            && *conj == brute.to_string()
            && basis == Some(brute);
        o.check(ok, || format!("q={q} m={m} alpha={alpha:?}: orbits {orbits:?}, C(1) {conj}, basis {basis:?}, dims {brute}"));
    }
    Ok(o)
}

fn identity_suite() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (q, m) in GRID {
        for r in run_all(&field(q), m, DEFAULT_SEED)? {
            o.check(r.passed, || format!("q={q} m={m} {}: {:?}", r.name, r.failures));
        }
    }
    Ok(o)
}

fn filtration() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (q, m) in SMALL_GRID {
        let f = field(q);
        for (n, k) in [(2, 1), (3, 1), (3, 2)] {
            let r = verify_filtration(&f, n, k, m)?;
            o.check(r.passed() && r.annihilation_checks > 0, || format!("q={q} m={m} F_{{{n},{k}}}: {:?}", r.failures));
        }
    }
    Ok(o)
}

fn q10(f: &Gf, e: u64) -> Poly {
    Poly::from_exps(f, &[(e * (f.q() as u64 - 1)) as u32])
}

fn closed_forms() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (q, m) in SMALL_GRID {
        let f = field(q);
        let big = q_int_literal(m, q);
        let top = (q.pow(m) - 1) as u32;
        for s in 0..big {
            let d = delta(2, m, &q10(&f, s))?.truncate(m);
            o.check(d == y_closed(&f, m, s)?, || format!("q={q} m={m} y_{s}"));
        }
        for s in 0..=big {
            let d = delta(2, m, &delta(2, m, &q10(&f, s))?)?.truncate(m);
            o.check(d == a_closed(&f, m, s)?, || format!("q={q} m={m} a_{s}"));
        }
        let d = delta(2, m, &q10(&f, big + 1))?.truncate(m);
        o.check(d == -&Poly::from_exps(&f, &[top, top]), || format!("q={q} m={m} rank-2 boundary"));
        let d = delta(2, m, &delta(2, m, &q10(&f, big + 2))?)?.truncate(m);
        o.check(d == Poly::from_exps(&f, &[top, top, top]), || format!("q={q} m={m} rank-3 boundary"));
    }
    Ok(o)
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Gf, n: usize, max_exp: u32, terms: usize) -> Poly {
    let q = f.q();
    Poly::from_terms(
        f,
        n,
        (0..terms).map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            (Monomial::from_exps(&e), rng.gen_range(1..q))
        }),
    )
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &Gf, n: usize) -> MatrixGF {
    loop {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.q())).collect()).collect();
        let g = MatrixGF::from_rows(f, &rows).expect("square");
        if g.is_invertible() {
            return g;
        }
    }
}

/// Substitutes `x_j -> sum_i g_ij x_i` by repeated multiplication.
fn naive_act(g: &MatrixGF, p: &Poly) -> Poly {
    let n = p.nvars();
    let f = p.field().clone();
    let forms: Vec<Poly> = (0..n)
        .map(|j| Poly::from_terms(&f, n, (0..n).map(|i| (Monomial::var(i, 1), g.get(i, j)))))
        .collect();
    let mut out = Poly::zero(&f, n);
    for (mono, c) in p.terms() {
        let mut img = Poly::constant(&f, n, *c);
        for (j, form) in forms.iter().enumerate() {
            for _ in 0..mono.exp(j) {
                img = &img * form;
            }
        }
        out = &out + &img;
    }
    out
}

/// `P^k` on a monomial from `P^k(x g) = x P^k(g) + x^q P^{k-1}(g)`.
fn steenrod_oracle(k: i64, f: &Gf, exps: &[u32]) -> Poly {
    if k < 0 {
        return Poly::zero(f, exps.len());
    }
    let Some(v) = exps.iter().position(|&e| e > 0) else {
        return if k == 0 { Poly::one(f, exps.len()) } else { Poly::zero(f, exps.len()) };
    };
    let mut rest = exps.to_vec();
    rest[v] -= 1;
    let x = Poly::var(f, exps.len(), v);
    let xq = Poly::monomial(f, exps.len(), Monomial::var(v, f.q()), 1);
    &(&x * &steenrod_oracle(k, f, &rest)) + &(&xq * &steenrod_oracle(k - 1, f, &rest))
}

fn structural() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for q in [2u64, 3, 4] {
        let f = field(q);
        let dk = Dickson::new(&f);
        for n in 1..=3 {
            o.check(dk.fundamental_check(n), || format!("q={q} fundamental equation n={n}"));
            for i in 0..n {
                let ok = dk.qpoly(n, i as i64) == dk.qpoly_by_quotient(n, i)?;
                o.check(ok, || format!("q={q} Q_{{{n},{i}}} recursion vs bracket quotient"));
            }
        }
    }
    for q in [2u64, 3, 4, 5] {
        let f = field(q);
        for _ in 0..20 {
            let n = rng.gen_range(1..=3);
            let a = random_poly(&mut rng, &f, n, 6, 4);
            let b = random_poly(&mut rng, &f, n, 6, 4);
            let g = random_invertible(&mut rng, &f, n);
            let h = random_invertible(&mut rng, &f, n);
            o.check(act(&g, &(&a * &b))? == &act(&g, &a)? * &act(&g, &b)?, || format!("q={q} action multiplicative"));
            o.check(act(&g, &(&a + &b))? == &act(&g, &a)? + &act(&g, &b)?, || format!("q={q} action additive"));
            o.check(act(&g, &act(&h, &a)?)? == act(&g.mul(&h)?, &a)?, || format!("q={q} left action"));
            let c = random_poly(&mut rng, &f, n, 12, 3);
            o.check(act(&g, &c)? == naive_act(&g, &c), || format!("q={q} base-q substitution vs naive: {c}"));
        }
    }
    for q in [2u64, 3, 4] {
        let f = field(q);
        for _ in 0..20 {
            let exps: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
            let x = Poly::from_exps(&f, &exps);
            o.check(unstable_check(&x), || format!("q={q} unstable on {x}"));
            let d = exps.iter().sum::<u32>() as i64;
            for k in 0..=d {
                o.check(steenrod_power(k, &x) == steenrod_oracle(k, &f, &exps), || format!("q={q} P^{k}({x}) vs recursion"));
            }
            let a = random_poly(&mut rng, &f, 2, 3, 2);
            let b = random_poly(&mut rng, &f, 2, 3, 2);
            let k = rng.gen_range(0..=4);
            let lhs = steenrod_power(k, &(&a * &b));
            let mut rhs = Poly::zero(&f, 2);
            for j in 0..=k {
                rhs = &rhs + &(&steenrod_power(j, &a) * &steenrod_power(k - j, &b));
            }
            o.check(lhs == rhs, || format!("q={q} Cartan formula P^{k}(({a})({b}))"));
        }
    }
    for (q, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let f = field(q);
        let g = q10(&f, q_int_literal(m, q) + 1);
        let d = delta(2, m, &g)?.truncate(m);
        o.check(g.truncate(m).is_zero() && !d.is_zero(), || format!("q={q} m={m} non-descent witness"));
    }
    Ok(o)
}

fn main() {
    let mut counts = Counts::default();
    let results = [
        run(1, "Hilbert series equals C_{alpha,m}(t) on the grid", || hilbert(&mut counts)),
        run(2, "bases invariant, independent and spanning on the grid", || bases(&mut counts)),
        run(3, "orbit count = C(1) = |basis| = sum of dimensions", || counting_chain(&counts)),
        run(4, "delta, Dickson, edge and transfer identities", identity_suite),
        run(5, "Steenrod filtration closure and annihilation", filtration),
        run(6, "closed forms y_s, a_s and boundary identities", closed_forms),
        run(7, "structural properties", structural),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
