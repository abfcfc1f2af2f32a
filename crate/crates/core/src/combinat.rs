//! q-integers, Gaussian binomials, the essential index sets `Delta^m_s`, and
//! `(q,t)`-multinomial series.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dickson::DicksonWord;
use crate::error::{Error, Result};

/// `(q^a - 1)/(q - 1)` with the convention `[0]_q = 1`.
pub fn q_int(a: u32, q: u64) -> u64 {
    if a == 0 { 1 } else { q_int_literal(a, q) }
}

/// `(q^a - 1)/(q - 1)`; `0` at `a = 0`.
pub fn q_int_literal(a: u32, q: u64) -> u64 {
    (q.pow(a) - 1) / (q - 1)
}

/// `(q^a - q^b)/(q - 1)` for `a >= b`.
pub fn q_diff(a: u32, b: u32, q: u64) -> u64 {
    (q.pow(a) - q.pow(b)) / (q - 1)
}

/// Gaussian binomial `[m choose s]_q` via the q-Pascal rule.
pub fn gauss_binom(m: u32, s: u32, q: u64) -> BigUint {
    if s > m {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for k in 1..=m as usize {
        let mut next = vec![BigUint::one(); k + 1];
        for j in 1..k {
            next[j] = &row[j - 1] + BigUint::from(q).pow(j as u32) * &row[j];
        }
        row = next;
    }
    row[s as usize].clone()
}

/// Partitions with at most `parts` parts, each at most `max`, as weakly
/// decreasing vectors of length `parts`.
pub fn box_partitions(parts: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap {
            cur.push(v);
            rec(k - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, max, &mut Vec::new(), &mut out);
    out
}

/// Allowed range `[lo, hi)` of `e_i` for a word of type `lambda`.
fn type_interval(lambda: &[u32], i: usize, q: u64) -> (u64, u64) {
    let next = lambda.get(i + 1).copied().unwrap_or(0);
    (q_diff(lambda[i], next, q), q_diff(lambda[i] + 1, next, q))
}

fn words_of_type(lambda: &[u32], q: u64) -> Vec<DicksonWord> {
    let mut out = vec![Vec::new()];
    for i in 0..lambda.len() {
        let (lo, hi) = type_interval(lambda, i, q);
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (lo..hi).map(move |e| {
                    let mut v = w.clone();
                    v.push(e as u32);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(DicksonWord::new).collect()
}

/// The essential Dickson monomials `Delta^m_s`.
pub fn delta_space(m: u32, s: usize, q: u64) -> Vec<DicksonWord> {
    if s as u32 > m {
        return Vec::new();
    }
    box_partitions(s, m - s as u32).iter().flat_map(|l| words_of_type(l, q)).collect()
}

/// The unique partition `lambda` such that the word lies in the product of
/// its type intervals.
pub fn word_type(w: &DicksonWord, q: u64) -> Vec<u32> {
    let s = w.s;
    let mut lambda = vec![0u32; s];
    for i in (0..s).rev() {
        let next = if i + 1 < s { lambda[i + 1] } else { 0 };
        let e = w.exps[i] as u64;
        let mut l = next;
        while q_diff(l + 1, next, q) <= e {
            l += 1;
        }
        lambda[i] = l;
    }
    lambda
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Essential,
    Edge,
    Neither,
}

pub fn is_essential(w: &DicksonWord, m: u32, q: u64) -> bool {
    if w.s as u32 > m {
        return false;
    }
    word_type(w, q).first().map_or(true, |&l| l <= m - w.s as u32)
}

/// Essential, edge (not essential but `Q_{s,i}` times an essential word), or
/// neither.
pub fn classify(w: &DicksonWord, m: u32, q: u64) -> Kind {
    if is_essential(w, m, q) {
        return Kind::Essential;
    }
    let edge = (0..w.s).any(|k| {
        w.exps[k] > 0 && {
            let mut v = w.clone();
            v.exps[k] -= 1;
            is_essential(&v, m, q)
        }
    });
    if edge { Kind::Edge } else { Kind::Neither }
}

/// Edge test by interval endpoints: `w` is not essential, and for some
/// box-fitting `lambda` one `e_j` sits at the right end of its interval while
/// the rest are inside.
pub fn is_edge_by_endpoint(w: &DicksonWord, m: u32, q: u64) -> bool {
    let s = w.s;
    if s as u32 > m || is_essential(w, m, q) {
        return false;
    }
    box_partitions(s, m - s as u32).iter().any(|l| {
        (0..s).any(|j| {
            (0..s).all(|i| {
                let (lo, hi) = type_interval(l, i, q);
                let e = w.exps[i] as u64;
                if i == j { e == hi } else { lo <= e && e < hi }
            })
        })
    })
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<BigInt>,
}

impl SeriesPoly {
    pub fn zero() -> SeriesPoly {
        SeriesPoly { coeffs: Vec::new() }
    }

    pub fn one() -> SeriesPoly {
        SeriesPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(k: usize, c: BigInt) -> SeriesPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        SeriesPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> SeriesPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        SeriesPoly { coeffs }
    }

    pub fn from_u64s(cs: &[u64]) -> SeriesPoly {
        SeriesPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - t^k`.
    pub fn one_minus(k: usize) -> SeriesPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] += 1;
        coeffs[k] -= 1;
        SeriesPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SeriesPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return SeriesPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SeriesPoly::from_coeffs(out)
    }

    pub fn shift(&self, k: usize) -> SeriesPoly {
        if self.coeffs.is_empty() {
            return SeriesPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        SeriesPoly { coeffs }
    }

    /// Exact quotient.
    pub fn div_exact(&self, d: &SeriesPoly) -> Result<SeriesPoly> {
        let dd = d.degree().ok_or(Error::InexactDivision)?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(Zero::is_zero) { Ok(SeriesPoly::zero()) } else { Err(Error::InexactDivision) };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd];
            if (c % lead).is_zero() {
                let qc = c / lead;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &qc * dc;
                }
                quot[k] = qc;
            } else {
                return Err(Error::InexactDivision);
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(SeriesPoly::from_coeffs(quot))
    }

    /// Value at `t = 1`.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| serde_json::Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SeriesPoly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("series must be a JSON array".into()))?;
        let coeffs = arr
            .iter()
            .map(|c| {
                c.as_str()
                    .and_then(|s| s.parse::<BigInt>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `[d; alpha]_{q,t}`: `prod_{j<d} (1 - t^{q^d - q^j})` divided by
/// `prod_i prod_{j<alpha_i} (1 - t^{q^{A_i} - q^{A_{i-1}+j}})`, `A_i` the
/// partial sums of `alpha`.
pub fn qt_multinomial(d: u32, alpha: &[u32], q: u64) -> Result<SeriesPoly> {
    if alpha.iter().sum::<u32>() != d {
        return Err(Error::OutOfRange(format!("parts {alpha:?} do not sum to {d}")));
    }
    let qd = q.pow(d);
    let mut num = SeriesPoly::one();
    for j in 0..d {
        num = num.mul(&SeriesPoly::one_minus((qd - q.pow(j)) as usize));
    }
    let mut prev = 0;
    for &a in alpha {
        let cur = prev + a;
        for j in 0..a {
            num = num.div_exact(&SeriesPoly::one_minus((q.pow(cur) - q.pow(prev + j)) as usize))?;
        }
        prev = cur;
    }
    Ok(num)
}

/// Weak compositions `beta <= alpha` (componentwise) with `|beta| <= m`.
pub fn sub_compositions(alpha: &[u32], m: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|b: Vec<u32>| {
                (0..=a).map(move |x| {
                    let mut v = b.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|b| b.iter().sum::<u32>() <= m);
    out
}

/// `C_{alpha,m}(t) = sum_beta t^{e(beta)} [m; beta, m - |beta|]_{q,t}` with
/// `e(beta) = sum_i (alpha_i - beta_i)(q^m - q^{B_i})`.
pub fn hilbert_conjecture(alpha: &[u32], m: u32, q: u64) -> Result<SeriesPoly> {
    let qm = q.pow(m);
    let mut total = SeriesPoly::zero();
    for beta in sub_compositions(alpha, m) {
        let mut b_sum = 0;
        let mut e = 0u64;
        for (a, b) in alpha.iter().zip(&beta) {
            b_sum += b;
            e += (a - b) as u64 * (qm - q.pow(b_sum));
        }
        let mut parts = beta.clone();
        parts.push(m - b_sum);
        total = total.add(&qt_multinomial(m, &parts, q)?.shift(e as usize));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integers() {
        assert_eq!(q_int(0, 2), 1);
        assert_eq!(q_int_literal(0, 2), 0);
        assert_eq!(q_int(3, 2), 7);
        assert_eq!(q_int(2, 3), 4);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gauss_binom(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gauss_binom(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gauss_binom(3, 1, 3), BigUint::from(13u32));
        assert_eq!(gauss_binom(3, 4, 3), BigUint::zero());
    }

    #[test]
    fn delta_space_examples() {
        let d = delta_space(2, 1, 2);
        assert_eq!(d.iter().map(|w| w.exps[0]).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(delta_space(3, 0, 2), vec![DicksonWord::one(0)]);
        assert!(delta_space(2, 3, 2).is_empty());
    }

    #[test]
    fn delta_space_sizes_are_gaussian() {
        for q in [2u64, 3, 4] {
            for m in 0..=4 {
                for s in 0..=m as usize + 1 {
                    let d = delta_space(m, s, q);
                    assert_eq!(BigUint::from(d.len()), gauss_binom(m, s as u32, q), "q={q} m={m} s={s}");
                    let mut sorted = d.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), d.len());
                    assert!(d.iter().all(|w| classify(w, m, q) == Kind::Essential));
                }
            }
        }
    }

    #[test]
    fn classification_example() {
        let w = DicksonWord::new(vec![3, 0]);
        assert_eq!(classify(&w, 3, 2), Kind::Edge);
        assert!(is_edge_by_endpoint(&w, 3, 2));
    }

    #[test]
    fn edge_definitions_agree() {
        for q in [2u64, 3] {
            for m in 1..=4u32 {
                for s in 1..=3usize {
                    let bound = q_int_literal(m + 1, q) as u32 + 2;
                    let mut w = vec![0u32; s];
                    loop {
                        let word = DicksonWord::new(w.clone());
                        let kind = classify(&word, m, q);
                        assert_eq!(kind == Kind::Edge, is_edge_by_endpoint(&word, m, q), "{word:?} m={m} q={q}");
                        // Q_{s,i} times an essential word is essential or edge.
                        if kind == Kind::Essential {
                            for k in 0..s {
                                let mut v = word.clone();
                                v.exps[k] += 1;
                                assert_ne!(classify(&v, m, q), Kind::Neither);
                            }
                        }
                        let mut k = 0;
                        while k < s && w[k] == bound {
                            w[k] = 0;
                            k += 1;
                        }
                        if k == s {
                            break;
                        }
                        w[k] += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(qt_multinomial(2, &[1, 1], 2).unwrap(), SeriesPoly::from_u64s(&[1, 1, 1]));
        assert_eq!(qt_multinomial(3, &[3], 2).unwrap(), SeriesPoly::one());
        assert_eq!(qt_multinomial(3, &[0, 3, 0], 3).unwrap(), SeriesPoly::one());
        // At t = 1 the multinomial counts flags.
        let t = qt_multinomial(3, &[1, 1, 1], 2).unwrap().total();
        assert_eq!(t, BigInt::from(21));
        assert!(qt_multinomial(3, &[1, 1], 2).is_err());
    }

    #[test]
    fn conjecture_examples() {
        let c = hilbert_conjecture(&[1], 2, 2).unwrap();
        assert_eq!(c.to_string(), "1 + t + t^2 + t^3");
        assert_eq!(hilbert_conjecture(&[2], 2, 2).unwrap().total(), BigInt::from(5));
        assert_eq!(hilbert_conjecture(&[1, 1, 1], 3, 2).unwrap().total(), BigInt::from(106));
    }

    #[test]
    fn series_text_and_json() {
        let s = SeriesPoly::from_coeffs(vec![BigInt::from(2), BigInt::from(-1), BigInt::zero(), BigInt::from(3)]);
        assert_eq!(s.to_string(), "2 - t + 3*t^3");
        assert_eq!(SeriesPoly::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(SeriesPoly::zero().to_string(), "0");
        let inexact = SeriesPoly::from_u64s(&[1, 1]).div_exact(&SeriesPoly::from_u64s(&[1, 0, 1]));
        assert!(matches!(inexact, Err(Error::InexactDivision)));
    }
}
