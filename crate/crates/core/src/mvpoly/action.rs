//! `g . f` substitutes `x_j -> sum_i g_ij x_i`. This is a left action:
//! `act(g, act(h, f)) = act(gh, f)`.
//!
//! Powers of the linear forms are expanded through base-`q` digits of the
//! exponent, `l^e = prod_k (l^(q^k))^(a_k)`, with `l^(q^k) = sum_i g_ij x_i^(q^k)`
//! because matrix entries lie in `F_q`.

use rustc_hash::FxHashMap;

use super::{MatrixGF, Monomial, Poly};
use crate::error::{Error, Result};
use crate::gfq::same_field;

pub fn act(g: &MatrixGF, f: &Poly) -> Result<Poly> {
    act_impl(g, f, None)
}

/// Action followed by truncation, truncating every intermediate product.
pub fn act_trunc(g: &MatrixGF, f: &Poly, m: u32) -> Result<Poly> {
    let bound = f.q().checked_pow(m).ok_or_else(|| Error::OutOfRange("q^m overflows".into()))?;
    act_impl(g, &f.truncate(m), Some(bound))
}

/// Column `j` has a single nonzero entry: returns `(row, entry)` per column.
fn monomial_shape(g: &MatrixGF) -> Option<Vec<(usize, u32)>> {
    (0..g.cols())
        .map(|j| {
            let nz: Vec<usize> = (0..g.rows()).filter(|&i| g.get(i, j) != 0).collect();
            (nz.len() == 1).then(|| (nz[0], g.get(nz[0], j)))
        })
        .collect()
}

fn act_impl(g: &MatrixGF, f: &Poly, bound: Option<u32>) -> Result<Poly> {
    let n = f.nvars();
    if g.rows() != n || g.cols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix acting on {n} variables", g.rows(), g.cols())));
    }
    if !same_field(g.field(), f.field()) {
        return Err(Error::Mismatch);
    }
    let field = f.field().clone();
    if let Some(shape) = monomial_shape(g) {
        let terms = f.terms().map(|(m, c)| {
            let mut e = Monomial::ONE;
            let mut coeff = *c;
            for (j, &(i, s)) in shape.iter().enumerate() {
                e.0[i] += m.0[j];
                coeff = field.mul(coeff, field.pow(s, m.0[j] as u64));
            }
            (e, coeff)
        });
        return Ok(Poly::from_terms(&field, n, terms));
    }
    let q = field.q();
    let mut cache: FxHashMap<(usize, u32), Poly> = FxHashMap::default();
    let mut out = Poly::zero(&field, n);
    for (m, c) in f.terms() {
        let mut img = Poly::constant(&field, n, *c);
        for j in 0..n {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let factor = cache
                .entry((j, e))
                .or_insert_with(|| linear_form_power(g, j, e, q, bound, &field, n))
                .clone();
            img = mul_opt(&img, &factor, bound);
            if img.is_zero() {
                break;
            }
        }
        out = &out + &img;
    }
    Ok(out)
}

fn mul_opt(a: &Poly, b: &Poly, bound: Option<u32>) -> Poly {
    match bound {
        Some(bd) => a.mul_bounded(b, Some(bd)),
        None => a * b,
    }
}

fn linear_form_power(g: &MatrixGF, j: usize, mut e: u32, q: u32, bound: Option<u32>, field: &crate::gfq::Gf, n: usize) -> Poly {
    let mut result = Poly::one(field, n);
    let mut qk = 1u32;
    while e > 0 {
        let digit = e % q;
        e /= q;
        if digit > 0 {
            let terms = (0..n).filter(|&i| g.get(i, j) != 0).map(|i| (Monomial::var(i, qk), g.get(i, j)));
            let frob = Poly::from_terms(field, n, terms);
            if let Some(bd) = bound {
                if qk >= bd {
                    return Poly::zero(field, n);
                }
            }
            for _ in 0..digit {
                result = mul_opt(&result, &frob, bound);
            }
        }
        if e > 0 {
            qk = qk.checked_mul(q).expect("exponent digit overflow");
        }
    }
    result
}
