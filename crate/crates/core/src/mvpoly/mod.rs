//! Sparse multivariate polynomials over `F_q`, the truncation to
//! `Q_m(n) = F_q[x_1..x_n]/(x_i^{q^m})`, the linear substitution action of
//! matrices, and dense linear algebra over `F_q`.
//!
//! Variables are 0-based in the API and 1-based in text (`x1`, `x2`, ...).
//! Monomials compare lexicographically with `x1 > x2 > ...`.

mod action;
mod matrix;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::gfq::{same_field, Gf};

pub use action::{act, act_trunc};
pub use matrix::{MatrixGF, RowSpace};

pub const MAX_VARS: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[i] = e;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    #[inline]
    pub fn below(&self, bound: u32) -> bool {
        self.0.iter().all(|&e| e < bound)
    }
}

/// A polynomial in `nvars` variables over a finite field.
#[derive(Clone)]
pub struct Poly {
    field: Gf,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && same_field(&self.field, &other.field) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}; {} vars]({})", self.field.q(), self.nvars, self)
    }
}

fn accumulate(field: &Gf, acc: &mut FxHashMap<Monomial, u32>, m: Monomial, c: u32) {
    let slot = acc.entry(m).or_insert(0);
    *slot = field.add(*slot, c);
}

impl Poly {
    pub fn zero(field: &Gf, nvars: usize) -> Poly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Gf, nvars: usize, c: u32) -> Poly {
        let mut p = Poly::zero(field, nvars);
        if c != 0 {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn one(field: &Gf, nvars: usize) -> Poly {
        Poly::constant(field, nvars, 1)
    }

    pub fn var(field: &Gf, nvars: usize, i: usize) -> Poly {
        assert!(i < nvars);
        Poly::monomial(field, nvars, Monomial::var(i, 1), 1)
    }

    pub fn monomial(field: &Gf, nvars: usize, m: Monomial, c: u32) -> Poly {
        let mut p = Poly::zero(field, nvars);
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// `x^exps` with coefficient 1.
    pub fn from_exps(field: &Gf, exps: &[u32]) -> Poly {
        Poly::monomial(field, exps.len(), Monomial::from_exps(exps), 1)
    }

    pub fn from_terms(field: &Gf, nvars: usize, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Poly {
        let mut acc = FxHashMap::default();
        for (m, c) in terms {
            accumulate(field, &mut acc, m, c);
        }
        Poly::from_acc(field, nvars, acc)
    }

    fn from_acc(field: &Gf, nvars: usize, acc: FxHashMap<Monomial, u32>) -> Poly {
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        Poly { field: field.clone(), nvars, terms }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    /// Total degree of the highest term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, *c)).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars == other.nvars && same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        Ok(self.mul_bounded(other, None))
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let s = self.field.add(self.coeff(&m), c);
        if s == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, s);
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, self.field.mul(*a, c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(a, b)| (a.mul(m), self.field.mul(*b, c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    fn mul_bounded(&self, other: &Poly, bound: Option<u32>) -> Poly {
        let (a, b) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let f = &self.field;
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        acc.reserve(a.terms.len() * b.terms.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                if let Some(bd) = bound {
                    if !m.below(bd) {
                        continue;
                    }
                }
                accumulate(f, &mut acc, m, f.mul(*ca, *cb));
            }
        }
        Poly::from_acc(f, self.nvars, acc)
    }

    /// Product in `Q_m`: monomials with an exponent `>= q^m` are dropped.
    pub fn mul_trunc(&self, other: &Poly, m: u32) -> Poly {
        self.compatible(other).expect("operands must share field and variables");
        self.mul_bounded(other, Some(self.bound(m)))
    }

    fn bound(&self, m: u32) -> u32 {
        self.field.q().checked_pow(m).expect("q^m overflows u32")
    }

    pub fn pow(&self, k: u64) -> Poly {
        self.pow_bounded(k, None)
    }

    pub fn pow_trunc(&self, k: u64, m: u32) -> Poly {
        self.pow_bounded(k, Some(self.bound(m)))
    }

    fn pow_bounded(&self, mut k: u64, bound: Option<u32>) -> Poly {
        let mut result = Poly::one(&self.field, self.nvars);
        if let Some(bd) = bound {
            result = result.truncate_to(bd);
        }
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_bounded(&base, bound);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_bounded(&base, bound);
            }
        }
        result
    }

    /// Image in `Q_m`.
    pub fn truncate(&self, m: u32) -> Poly {
        self.truncate_to(self.bound(m))
    }

    fn truncate_to(&self, bound: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.below(bound)).map(|(m, c)| (*m, *c)).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn is_reduced(&self, m: u32) -> bool {
        let bd = self.bound(m);
        self.terms.keys().all(|t| t.below(bd))
    }

    /// Re-index variables: variable `i` becomes variable `map[i]` of a ring
    /// with `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        assert!(nvars <= MAX_VARS && map.iter().all(|&j| j < nvars));
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::ONE;
            for (i, &j) in map.iter().enumerate() {
                e.0[j] += m.0[i];
            }
            (e, *c)
        });
        Poly::from_terms(&self.field, nvars, terms)
    }

    /// The same polynomial viewed in more (trailing) variables.
    pub fn extend(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        Poly { field: self.field.clone(), nvars, terms: self.terms.clone() }
    }

    /// `f^(q^j)`: exponents scale by `q^j`, coefficients by the field Frobenius.
    pub fn frobenius_power(&self, j: u32) -> Poly {
        let s = self.q().pow(j);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = *m;
                for x in e.0.iter_mut() {
                    *x *= s;
                }
                (e, self.field.pow(*c, s as u64))
            })
            .collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Exact quotient `self / g` by lex leading-term division.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        self.compatible(g)?;
        let (lt, lc) = g.leading_term().ok_or(Error::ZeroInverse)?;
        let lc_inv = self.field.inv(lc)?;
        let f = &self.field;
        let mut rem = self.terms.clone();
        let mut quot: Vec<(Monomial, u32)> = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, *c)) {
            if !lt.divides(&m) {
                let remainder = Poly { field: f.clone(), nvars: self.nvars, terms: rem };
                return Err(Error::NotDivisible { remainder: Box::new(remainder) });
            }
            let qm = lt.quotient_of(&m);
            let qc = f.mul(c, lc_inv);
            quot.push((qm, qc));
            for (gm, gc) in &g.terms {
                let t = qm.mul(gm);
                let sub = f.mul(qc, *gc);
                let entry = rem.entry(t).or_insert(0);
                *entry = f.sub(*entry, sub);
                if *entry == 0 {
                    rem.remove(&t);
                }
            }
        }
        Ok(Poly { field: f.clone(), nvars: self.nvars, terms: quot.into_iter().collect() })
    }

    pub fn var_degree_max(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn var_degree_min(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).min()
    }

    /// Coefficient of `x_v^d`, as a polynomial in the other variables.
    pub fn coeff_of_var_power(&self, v: usize, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] == d)
            .map(|(m, c)| {
                let mut e = *m;
                e.0[v] = 0;
                (e, *c)
            })
            .collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Substitute the constant `c` for variable `v`.
    pub fn eval_var(&self, v: usize, c: u32) -> Poly {
        let terms = self.terms.iter().map(|(m, a)| {
            let mut e = *m;
            let k = e.0[v];
            e.0[v] = 0;
            (e, self.field.mul(*a, self.field.pow(c, k as u64)))
        });
        Poly::from_terms(&self.field, self.nvars, terms)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("operands must share field and variables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.field.neg(*c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("operands must share field and variables")
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn det(rows: &[Vec<Poly>]) -> Result<Poly> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let (field, nvars) = (rows[0][0].field.clone(), rows[0][0].nvars);
    for e in rows.iter().flatten() {
        if e.nvars != nvars || !same_field(&e.field, &field) {
            return Err(Error::Mismatch);
        }
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(rows, 0, &cols))
}

fn det_rec(rows: &[Vec<Poly>], r: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let first = &rows[r][cols[0]];
    let mut acc = Poly::zero(&first.field, first.nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_rec(rows, r + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
