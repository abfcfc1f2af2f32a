//! Brute-force invariant dimensions of `Q_m(n)^G`, degree by degree, and
//! orbit counts on `F_{q^m}^n`.
//!
//! Generators acting by monomial matrices (a permutation times a diagonal)
//! are handled first by orbit sums; the remaining generators are stacked as
//! `g - 1` on that subspace and reduced once.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::combinat::{hilbert_conjecture, SeriesPoly};
use crate::error::{Error, Result};
use crate::gfq::{make_extension, Gf};
use crate::groups::GroupSpec;
use crate::mvpoly::{act_trunc, MatrixGF, Monomial, Poly};

/// Largest `dim Q_m(n) = q^{mn}` accepted by the solver.
pub const WORK_BOUND: u64 = 20_000;
/// Largest `q^{mn}` for orbit counting.
pub const ORBIT_BOUND: u64 = 10_000_000;

pub fn check_work_bound(n: usize, m: u32, q: u64) -> Result<()> {
    let size = q.checked_pow(m * n as u32).unwrap_or(u64::MAX);
    if size > WORK_BOUND {
        return Err(Error::WorkBound(format!("dim Q_{m}({n}) = {q}^{} exceeds {WORK_BOUND}", m * n as u32)));
    }
    Ok(())
}

/// Degree-`d` monomials of `Q_m(n)` in decreasing lex order.
pub struct GradedBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub index: FxHashMap<Monomial, usize>,
}

pub fn graded_basis(n: usize, m: u32, q: u64, d: u32) -> GradedBasis {
    let top = q.pow(m) as u32 - 1;
    let mut monomials = Vec::new();
    fn rec(i: usize, n: usize, rest: u32, top: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if i == n - 1 {
            if rest <= top {
                cur[i] = rest;
                out.push(Monomial::from_exps(cur));
            }
            return;
        }
        for e in (0..=rest.min(top)).rev() {
            cur[i] = e;
            rec(i + 1, n, rest - e, top, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            monomials.push(Monomial::ONE);
        }
    } else {
        rec(0, n, d, top, &mut vec![0; n], &mut monomials);
    }
    let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    GradedBasis { degree: d, monomials, index }
}

pub fn to_vector(f: &Poly, basis: &GradedBasis) -> Option<Vec<u32>> {
    let mut v = vec![0; basis.monomials.len()];
    for (m, c) in f.terms() {
        v[*basis.index.get(m)?] = *c;
    }
    Some(v)
}

fn monomial_image(g: &MatrixGF, field: &Gf, m: &Monomial, n: usize) -> Option<(Monomial, u32)> {
    let mut e = Monomial::ONE;
    let mut c = 1;
    for j in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&i| g.get(i, j) != 0).collect();
        if nz.len() != 1 {
            return None;
        }
        e.0[nz[0]] += m.0[j];
        c = field.mul(c, field.pow(g.get(nz[0], j), m.0[j] as u64));
    }
    Some((e, c))
}

fn is_monomial_matrix(g: &MatrixGF) -> bool {
    (0..g.cols()).all(|j| (0..g.rows()).filter(|&i| g.get(i, j) != 0).count() == 1)
}

/// A basis of the degree-`d` invariants of `Q_m(n)^G`.
pub fn invariants_in_degree(group: &GroupSpec, m: u32, d: u32) -> Result<Vec<Poly>> {
    let field = &group.field;
    let n = group.n();
    let q = field.q() as u64;
    let basis = graded_basis(n, m, q, d);
    let size = basis.monomials.len();
    let (mono, other): (Vec<&MatrixGF>, Vec<&MatrixGF>) = group.generators.iter().partition(|g| is_monomial_matrix(g));

    // Orbit sums for the monomial generators.
    let mut coeff: Vec<u32> = vec![0; size];
    let mut seen = vec![false; size];
    let mut candidates: Vec<Vec<(usize, u32)>> = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        coeff[start] = 1;
        let mut members = vec![start];
        let mut stack = vec![start];
        let mut consistent = true;
        while let Some(i) = stack.pop() {
            for g in &mono {
                let (img, s) = monomial_image(g, field, &basis.monomials[i], n).expect("monomial generator");
                let j = basis.index[&img];
                let want = field.mul(s, coeff[i]);
                if !seen[j] {
                    seen[j] = true;
                    coeff[j] = want;
                    members.push(j);
                    stack.push(j);
                } else if coeff[j] != want {
                    consistent = false;
                }
            }
        }
        if consistent {
            candidates.push(members.iter().map(|&i| (i, coeff[i])).collect());
        }
    }
    let to_poly = |v: &[(usize, u32)]| Poly::from_terms(field, n, v.iter().map(|&(i, c)| (basis.monomials[i], c)));
    let cand_polys: Vec<Poly> = candidates.iter().map(|v| to_poly(v)).collect();

    let result = if other.is_empty() || cand_polys.is_empty() {
        cand_polys
    } else {
        let mut mat = MatrixGF::zeros(field, other.len() * size, cand_polys.len());
        for (k, v) in cand_polys.iter().enumerate() {
            for (gi, g) in other.iter().enumerate() {
                let diff = &act_trunc(g, v, m)? - v;
                for (mono, c) in diff.terms() {
                    mat.set(gi * size + basis.index[mono], k, *c);
                }
            }
        }
        mat.kernel()
            .iter()
            .map(|combo| {
                let mut acc = Poly::zero(field, n);
                for (k, &c) in combo.iter().enumerate() {
                    if c != 0 {
                        acc = &acc + &cand_polys[k].scale(c);
                    }
                }
                acc
            })
            .collect()
    };
    for v in &result {
        for g in &group.generators {
            if act_trunc(g, v, m)? != *v {
                return Err(Error::NotInvariant);
            }
        }
    }
    Ok(result)
}

pub fn invariant_dimension(group: &GroupSpec, m: u32, d: u32) -> Result<usize> {
    Ok(invariants_in_degree(group, m, d)?.len())
}

/// `dim Q_m(n)^G` in every degree `0..=n(q^m - 1)`.
pub fn hilbert_bruteforce(group: &GroupSpec, m: u32) -> Result<Vec<u64>> {
    let n = group.n();
    let q = group.field.q() as u64;
    check_work_bound(n, m, q)?;
    let top = n as u32 * (q.pow(m) as u32 - 1);
    (0..=top).into_par_iter().map(|d| invariant_dimension(group, m, d).map(|k| k as u64)).collect()
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Number of `P(alpha)`-orbits on row vectors `F_{q^m}^n`, `v -> v g`.
pub fn orbit_count(field: &Gf, alpha: &[u32], m: u32) -> Result<u64> {
    let group = GroupSpec::parabolic(field, alpha)?;
    let n = group.n();
    let ext = make_extension(field, m)?;
    let big = &ext.field;
    let qm = big.q() as u64;
    let total = qm.checked_pow(n as u32).filter(|&t| t <= ORBIT_BOUND).ok_or_else(|| {
        Error::WorkBound(format!("{qm}^{n} points exceed {ORBIT_BOUND}"))
    })?;
    let gens: Vec<Vec<u32>> = group
        .generators
        .iter()
        .map(|g| (0..n * n).map(|k| ext.embed(g.get(k / n, k % n))).collect())
        .collect();
    let mut parent: Vec<u32> = (0..total as u32).collect();
    let mut v = vec![0u32; n];
    for x in 0..total {
        let mut c = x;
        for slot in v.iter_mut() {
            *slot = (c % qm) as u32;
            c /= qm;
        }
        for g in &gens {
            let mut y = 0u64;
            for j in (0..n).rev() {
                let mut s = 0;
                for (i, &vi) in v.iter().enumerate() {
                    s = big.add(s, big.mul(vi, g[i * n + j]));
                }
                y = y * qm + s as u64;
            }
            let (a, b) = (find(&mut parent, x as u32), find(&mut parent, y as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    Ok((0..total as u32).filter(|&x| find(&mut parent, x) == x).count() as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub conjecture: String,
    pub bruteforce: u64,
    pub orbits: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct HilbertReport {
    pub alpha: Vec<u32>,
    pub m: u32,
    pub q: u64,
    pub conjecture: SeriesPoly,
    pub bruteforce: Vec<u64>,
    pub equal: bool,
    pub totals: Totals,
}

impl HilbertReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": self.alpha,
            "m": self.m,
            "q": self.q,
            "conjecture": self.conjecture.to_json(),
            "bruteforce": self.bruteforce,
            "equal": self.equal,
            "totals": self.totals,
        })
    }
}

pub fn series_matches(series: &SeriesPoly, dims: &[u64]) -> bool {
    let len = dims.len().max(series.coeffs().len());
    (0..len).all(|k| series.coeff(k) == dims.get(k).copied().unwrap_or(0).into())
}

pub fn verify_hilbert(field: &Gf, alpha: &[u32], m: u32) -> Result<HilbertReport> {
    let q = field.q() as u64;
    let group = GroupSpec::parabolic(field, alpha)?;
    let conjecture = hilbert_conjecture(alpha, m, q)?;
    let bruteforce = hilbert_bruteforce(&group, m)?;
    let equal = series_matches(&conjecture, &bruteforce);
    let orbits = match orbit_count(field, alpha, m) {
        Ok(k) => Some(k),
        Err(Error::WorkBound(_)) => None,
        Err(e) => return Err(e),
    };
    let totals = Totals { conjecture: conjecture.total().to_string(), bruteforce: bruteforce.iter().sum(), orbits };
    Ok(HilbertReport { alpha: alpha.to_vec(), m, q, conjecture, bruteforce, equal, totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldParams;

    fn field(q: u64) -> Gf {
        FieldParams::of_order(q).unwrap()
    }

    #[test]
    fn graded_basis_counts() {
        let b = graded_basis(2, 2, 2, 3);
        assert_eq!(b.monomials.len(), 4);
        assert!(b.monomials.windows(2).all(|w| w[0] > w[1]));
        let total: usize = (0..=9).map(|d| graded_basis(3, 1, 4, d).monomials.len()).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn rank_one_is_everything_divisible_by_q_minus_one() {
        let f = field(3);
        let dims = hilbert_bruteforce(&GroupSpec::general(&f, 1), 2).unwrap();
        let want: Vec<u64> = (0..=8).map(|d| u64::from(d % 2 == 0)).collect();
        assert_eq!(dims, want);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_count(&field(2), &[2], 2).unwrap(), 5);
        assert_eq!(orbit_count(&field(2), &[1], 2).unwrap(), 4);
    }

    #[test]
    fn small_hilbert_reports() {
        for (q, alpha, m) in [(2u64, vec![2u32], 2u32), (2, vec![1, 1], 2), (3, vec![2], 1), (2, vec![2, 1], 2)] {
            let r = verify_hilbert(&field(q), &alpha, m).unwrap();
            assert!(r.equal, "q={q} alpha={alpha:?} m={m}: {} vs {:?}", r.conjecture, r.bruteforce);
            assert_eq!(r.totals.orbits.map(|o| o.to_string()), Some(r.totals.conjecture.clone()));
        }
    }

    /// Kernel of the stacked `(g - 1)` conditions over all monomials.
    fn direct_dimension(group: &GroupSpec, m: u32, d: u32) -> usize {
        let f = &group.field;
        let n = group.n();
        let basis = graded_basis(n, m, f.q() as u64, d);
        let size = basis.monomials.len();
        let mut mat = MatrixGF::zeros(f, group.generators.len() * size, size);
        for (k, mono) in basis.monomials.iter().enumerate() {
            let x = Poly::monomial(f, n, *mono, 1);
            for (gi, g) in group.generators.iter().enumerate() {
                for (img, c) in (&act_trunc(g, &x, m).unwrap() - &x).terms() {
                    mat.set(gi * size + basis.index[img], k, *c);
                }
            }
        }
        size - mat.rank()
    }

    #[test]
    fn orbit_reduction_matches_direct_kernel() {
        for (q, alpha, m) in [(2u64, vec![3u32], 2u32), (3, vec![2, 1], 1), (2, vec![1, 2], 2), (4, vec![2], 1), (3, vec![1, 1], 2)] {
            let g = GroupSpec::parabolic(&field(q), &alpha).unwrap();
            let n = g.n() as u32;
            for d in 0..=n * ((q as u32).pow(m) - 1) {
                assert_eq!(invariant_dimension(&g, m, d).unwrap(), direct_dimension(&g, m, d), "q={q} alpha={alpha:?} m={m} d={d}");
            }
        }
    }

    #[test]
    fn work_bound_refuses_large_jobs() {
        assert!(check_work_bound(3, 4, 3).is_err());
        assert!(check_work_bound(3, 3, 3).is_ok());
    }
}
