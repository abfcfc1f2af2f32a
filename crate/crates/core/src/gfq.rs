//! Finite fields `F_q`, `q = p^e`.
//!
//! Elements are `u32` codes: the coefficient vector of the canonical
//! representative modulo the defining polynomial, read as a base-`p` integer
//! (constant term least significant). Prime-field elements are their residues.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const TABLE_LIMIT: u32 = 256;

/// Shared handle to a field.
pub type Gf = Arc<FieldParams>;

#[derive(Debug)]
pub struct FieldParams {
    p: u32,
    e: u32,
    q: u32,
    /// Size of the subfield this field is regarded as an extension of; the
    /// Frobenius used by [`FieldParams::frobenius`] is `a -> a^base`.
    base: u32,
    /// Monic modulus over `F_p`, coefficients from the constant term up.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.base == other.base && self.modulus == other.modulus
    }
}

impl Eq for FieldParams {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`, failing when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

// Dense polynomials over F_p as coefficient vectors (constant term first).

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pow_mod(mut a: u64, mut n: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while n > 0 {
        if n & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        n >>= 1;
    }
    r
}

fn decode(code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut c = code;
    (0..len)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for code in 0..(p as u64).pow(k as u32) {
            let mut g = decode(code as u32, p, k);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `d` over `F_p`, in order of the
/// base-`p` code of its lower coefficients.
fn find_modulus(p: u32, d: u32) -> Vec<u32> {
    for code in 0..(p as u64).pow(d) {
        let mut f = decode(code as u32, p, d as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldParams {
    /// `F_{p^e}` with modulus chosen by exhaustive search.
    pub fn new(p: u32, e: u32) -> Result<Gf> {
        if !is_prime(p as u64) || e == 0 {
            return Err(Error::NotPrimePower((p as u64).saturating_pow(e)));
        }
        let modulus = find_modulus(p, e);
        Ok(Arc::new(Self::build(p, e, p, modulus)))
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Gf> {
        let (p, e) = prime_power(q)?;
        Self::new(p, e)
    }

    fn build(p: u32, e: u32, base: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let mut f = FieldParams { p, e, q, base, modulus, tables: None };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = f.slow_add(a, b);
                    mul[a as usize * n + b as usize] = f.slow_mul(a, b);
                }
            }
            let neg = (0..q).map(|a| f.slow_neg(a)).collect();
            let mut inv = vec![0; n];
            for a in 1..q {
                inv[a as usize] = (1..q).find(|&b| mul[a as usize * n + b as usize] == 1).unwrap();
            }
            f.tables = Some(Tables { add, mul, neg, inv });
        }
        f
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (decode(a, self.p, self.e as usize), decode(b, self.p, self.e as usize));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        encode(&s, self.p)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let x = decode(a, self.p, self.e as usize);
        let s: Vec<u32> = x.iter().map(|u| (self.p - u) % self.p).collect();
        encode(&s, self.p)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.e as usize;
        let (x, y) = (decode(a, self.p, n), decode(b, self.p, n));
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + u as u64 * v as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(n, 0);
        encode(&r, self.p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize],
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize],
            None => self.slow_mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize],
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut r, mut b) = (1, a);
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    /// `a^(base^j)`.
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let ord = self.q as u64 - 1;
        let mut k = pow_mod(self.base as u64, j as u64, ord);
        if k == 0 {
            k = ord;
        }
        self.pow(a, k)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn primitive_element(&self) -> u32 {
        let ord = self.q as u64 - 1;
        let primes: Vec<u64> = (2..=ord).filter(|&d| ord % d == 0 && is_prime(d)).collect();
        (1..self.q)
            .find(|&g| primes.iter().all(|&r| self.pow(g, ord / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn scalar(self: &Arc<Self>, value: u32) -> Scalar {
        assert!(value < self.q, "code {value} out of range for F_{}", self.q);
        Scalar { field: Arc::clone(self), value }
    }
}

pub fn same_field(a: &Gf, b: &Gf) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A field element bundled with its field.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Gf,
    value: u32,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(&self.field, &other.field)
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.field.scalar(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.field.scalar(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.field.scalar(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Scalar {
        self.field.scalar(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(self.field.scalar(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> Scalar {
        self.field.scalar(self.field.pow(self.value, n))
    }

    pub fn frobenius(&self, j: u32) -> Scalar {
        self.field.scalar(self.field.frobenius(self.value, j))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `F_{q^m}` together with the embedding of `F_q`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Gf,
    embedding: Vec<u32>,
}

impl Extension {
    pub fn embed(&self, a: u32) -> u32 {
        self.embedding[a as usize]
    }
}

pub fn make_extension(small: &Gf, m: u32) -> Result<Extension> {
    if m == 0 {
        return Err(Error::OutOfRange("extension degree must be positive".into()));
    }
    let (p, e) = (small.p(), small.e());
    let modulus = find_modulus(p, e * m);
    let big = Arc::new(FieldParams::build(p, e * m, small.q(), modulus));
    let embedding = if e == 1 {
        (0..small.q()).collect()
    } else {
        // Send the generator of F_q to a root of its modulus in F_{q^m}.
        let root = (0..big.q())
            .find(|&r| {
                let mut acc = 0;
                for &c in small.modulus().iter().rev() {
                    acc = big.add(big.mul(acc, r), c);
                }
                acc == 0
            })
            .ok_or_else(|| Error::OutOfRange("no root of the subfield modulus".into()))?;
        (0..small.q())
            .map(|a| {
                let coeffs = decode(a, p, e as usize);
                coeffs.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, root), c))
            })
            .collect()
    };
    Ok(Extension { field: big, embedding })
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut r = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = (n % p64, k % p64);
        if b > a {
            return 0;
        }
        r = r * small_binom(a, b) % p64;
        n /= p64;
        k /= p64;
    }
    r as u32
}

fn small_binom(n: u64, k: u64) -> u64 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}
