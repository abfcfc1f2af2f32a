//! The operators `delta_{a;b}`.
//!
//! For `f` in `c` variables, `delta_{a;b}(f)` lives in `c + 1` variables: it is
//! the `a x a` determinant with rows `x_j^{q^r}` (`r = 0..a-2`) and last row
//! `x_j^{q^b} f(x_1, .., ^x_j, .., x_{c+1})`, `j = 1..a`, divided by
//! `L_a = [0..a-1]`. Everything happens in the full polynomial ring; callers
//! truncate afterwards.

use crate::combinat::q_int_literal;
use crate::dickson::Dickson;
use crate::error::{Error, Result};
use crate::gfq::Gf;
use crate::mvpoly::{Monomial, Poly, MAX_VARS};

/// `delta_{a;b}(f)`.
pub fn delta(a: usize, b: u32, f: &Poly) -> Result<Poly> {
    let c = f.nvars();
    if a == 0 || a > c + 1 || c + 1 > MAX_VARS {
        return Err(Error::OutOfRange(format!("delta_{a} on {c} variables")));
    }
    let field = f.field().clone();
    let dk = Dickson::new(&field);
    let n = c + 1;
    let q = field.q();
    let qb = q.checked_pow(b).ok_or_else(|| Error::OutOfRange("q^b overflows".into()))?;
    let minor = dk.bracket(&(0..a as u32 - 1).collect::<Vec<_>>());
    let mut num = Poly::zero(&field, n);
    for j in 0..a {
        // f with its variables placed around the hole at j.
        let skip: Vec<usize> = (0..c).map(|i| if i < j { i } else { i + 1 }).collect();
        let fj = f.embed(n, &skip);
        let others: Vec<usize> = (0..a).filter(|&k| k != j).collect();
        let mj = minor.embed(n, &others);
        let mut term = (&fj * &mj).mul_monomial(&Monomial::var(j, qb), 1);
        if (a - 1 + j) % 2 == 1 {
            term = -&term;
        }
        num = &num + &term;
    }
    let den = dk.l(a).embed(n, &(0..a).collect::<Vec<_>>());
    num.exact_div(&den)
}

/// `delta_{a;b}` applied `reps` times.
pub fn delta_iter(a: usize, b: u32, reps: usize, f: &Poly) -> Result<Poly> {
    let mut g = f.clone();
    for _ in 0..reps {
        g = delta(a, b, &g)?;
    }
    Ok(g)
}

/// `delta_{a;m}(f)` read in `Q_m`.
pub fn delta_trunc(a: usize, m: u32, f: &Poly) -> Result<Poly> {
    Ok(delta(a, m, f)?.truncate(m))
}

/// `sum_k x1^{q^m-q-k(q-1)} x2^{(s+k)(q-1)}`, from `x1^{q^m-q} x2^{s(q-1)}` down
/// to `x1^{s(q-1)} x2^{q^m-q}`; defined for `s < [m]_q`.
pub fn y_closed(field: &Gf, m: u32, s: u64) -> Result<Poly> {
    let q = field.q() as u64;
    let big = q_int_literal(m, q);
    if s >= big {
        return Err(Error::OutOfRange(format!("y_s needs s < [m]_q, got s = {s}")));
    }
    let terms = (0..big - s).map(|k| {
        let e1 = ((big - 1 - k) * (q - 1)) as u32;
        let e2 = ((s + k) * (q - 1)) as u32;
        (Monomial::from_exps(&[e1, e2]), 1)
    });
    Ok(Poly::from_terms(field, 2, terms))
}

/// `sum x1^{i1(q-1)} x2^{i2(q-1)} x3^{i3(q-1)}` over `i_j < [m]_q` with
/// `i1 + i2 + i3 = 2[m]_q - 2 + s`; defined for `s <= [m]_q`.
pub fn a_closed(field: &Gf, m: u32, s: u64) -> Result<Poly> {
    let q = field.q() as u64;
    let big = q_int_literal(m, q);
    if s > big {
        return Err(Error::OutOfRange(format!("a_s needs s <= [m]_q, got s = {s}")));
    }
    let total = 2 * big - 2 + s;
    let mut terms = Vec::new();
    for i1 in 0..big {
        for i2 in 0..big {
            if i1 + i2 > total {
                continue;
            }
            let i3 = total - i1 - i2;
            if i3 < big {
                let e = [i1, i2, i3].map(|i| (i * (q - 1)) as u32);
                terms.push((Monomial::from_exps(&e), 1));
            }
        }
    }
    Ok(Poly::from_terms(field, 3, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldParams;

    fn field(q: u64) -> Gf {
        FieldParams::of_order(q).unwrap()
    }

    fn q10(f: &Gf, s: u64) -> Poly {
        Poly::from_exps(f, &[(s * (f.q() as u64 - 1)) as u32])
    }

    #[test]
    fn rank_two_example() {
        let f = field(2);
        let d = delta(2, 2, &q10(&f, 1)).unwrap();
        assert_eq!(d, Poly::parse("x1^2*x2 + x1*x2^2", &f, 2).unwrap());
    }

    #[test]
    fn delta_one_is_a_shift() {
        for q in [2, 3, 4] {
            let f = field(q);
            for m in 1..=3 {
                let top = (q as u32).pow(m) - 1;
                assert_eq!(delta(1, m, &Poly::one(&f, 0)).unwrap(), Poly::from_exps(&f, &[top]));
                if q == 3 {
                    let g = Poly::parse("x1^2 + 2*x2", &f, 2).unwrap();
                    let want = Poly::parse(&format!("x1^{top}*x2^2 + 2*x1^{top}*x3"), &f, 3).unwrap();
                    assert_eq!(delta(1, m, &g).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn rank_two_matches_y_closed() {
        for (q, mmax) in [(2u64, 4u32), (3, 3), (4, 2), (5, 2)] {
            let f = field(q);
            for m in 1..=mmax {
                let big = q_int_literal(m, q);
                for s in 0..big {
                    let d = delta(2, m, &q10(&f, s)).unwrap();
                    assert_eq!(d, y_closed(&f, m, s).unwrap(), "q={q} m={m} s={s}");
                }
                let top = (q as u32).pow(m) - 1;
                let boundary = delta(2, m, &q10(&f, big + 1)).unwrap().truncate(m);
                assert_eq!(boundary, -&Poly::from_exps(&f, &[top, top]));
            }
        }
    }

    #[test]
    fn degree_law() {
        let f = field(3);
        let dk = Dickson::new(&f);
        let cases = [
            (1usize, Poly::parse("x1^2 + 2*x2^2", &f, 2).unwrap()),
            (2, q10(&f, 2)),
            (2, Poly::parse("x1^2*x2", &f, 2).unwrap()),
            (3, dk.qpoly(2, 1)),
            (3, &dk.qpoly(2, 0) * &dk.qpoly(2, 1)),
        ];
        for (a, arg) in cases {
            for b in a as u32 - 1..=3 {
                let d = delta(a, b, &arg).unwrap();
                let want = arg.degree().unwrap() as i64 + 3i64.pow(b) - 3i64.pow(a as u32 - 1);
                if !d.is_zero() {
                    assert!(d.is_homogeneous());
                    assert_eq!(d.degree().unwrap() as i64, want, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn non_invariant_argument_is_rejected() {
        let f = field(3);
        let x1 = Poly::from_exps(&f, &[1]);
        assert!(matches!(delta(2, 3, &x1), Err(Error::NotDivisible { .. })));
        assert!(delta(4, 1, &x1).is_err());
    }

    #[test]
    fn a_closed_small_example() {
        let f = field(2);
        assert_eq!(a_closed(&f, 2, 0).unwrap().num_terms(), 6);
    }

    #[test]
    fn iterated_rank_two_matches_a_closed() {
        for (q, mmax) in [(2u64, 3u32), (3, 2)] {
            let f = field(q);
            for m in 1..=mmax {
                let big = q_int_literal(m, q);
                for s in 0..=big {
                    let d = delta_iter(2, m, 2, &q10(&f, s)).unwrap().truncate(m);
                    assert_eq!(d, a_closed(&f, m, s).unwrap(), "q={q} m={m} s={s}");
                }
            }
        }
    }
}
