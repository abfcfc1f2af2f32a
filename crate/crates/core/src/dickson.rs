//! Upper-triangular invariants `V_k`, Moore determinants `[r_1..r_n]`, and
//! the Dickson invariants `Q_{n,i}`.
//!
//! `V_k` is the product of `x_k + sum_{i<k} l_i x_i` over `l in F_q^{k-1}`;
//! `L_n = V_1 ... V_n = [0, 1, .., n-1]`. `Q_{n,i}` is computed by the
//! recursion `Q_{n,i} = V_n^{q-1} Q_{n-1,i} + Q_{n-1,i-1}^q`; the quotient
//! `[0..^i..n] / L_n` is kept as an independent route.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfq::Gf;
use crate::mvpoly::{MatrixGF, Monomial, Poly, RowSpace};

/// `Q_{s,s-1}^{e_1} Q_{s,s-2}^{e_2} ... Q_{s,0}^{e_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DicksonWord {
    pub s: usize,
    pub exps: Vec<u32>,
}

impl DicksonWord {
    pub fn new(exps: Vec<u32>) -> DicksonWord {
        DicksonWord { s: exps.len(), exps }
    }

    pub fn one(s: usize) -> DicksonWord {
        DicksonWord { s, exps: vec![0; s] }
    }

    /// Exponent of `Q_{s,i}`.
    pub fn exp_of(&self, i: usize) -> u32 {
        self.exps[self.s - 1 - i]
    }

    /// `Q_{s,i} -> Q_{s+1,i+1}`.
    pub fn phi(&self) -> DicksonWord {
        let mut exps = self.exps.clone();
        exps.push(0);
        DicksonWord { s: self.s + 1, exps }
    }

    pub fn degree(&self, q: u64) -> u64 {
        let qs = q.pow(self.s as u32);
        self.exps
            .iter()
            .enumerate()
            .map(|(k, &e)| e as u64 * (qs - q.pow((self.s - 1 - k) as u32)))
            .sum()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let base = format!("Q{}{}", self.s, self.s - 1 - k);
                if e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join("*") }
    }
}

/// Words of rank `s` and degree `d`.
pub fn words_of_degree(s: usize, d: u64, q: u64) -> Vec<DicksonWord> {
    let qs = q.pow(s as u32);
    let degs: Vec<u64> = (0..s).map(|k| qs - q.pow((s - 1 - k) as u32)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(k: usize, rest: u64, degs: &[u64], cur: &mut Vec<u32>, out: &mut Vec<DicksonWord>) {
        if k == degs.len() {
            if rest == 0 {
                out.push(DicksonWord::new(cur.clone()));
            }
            return;
        }
        for e in 0..=rest / degs[k] {
            cur.push(e as u32);
            rec(k + 1, rest - e * degs[k], degs, cur, out);
            cur.pop();
        }
    }
    if s == 0 {
        if d == 0 {
            out.push(DicksonWord::one(0));
        }
        return out;
    }
    rec(0, d, &degs, &mut cur, &mut out);
    out
}

fn perm_sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Memoizing factory for the invariants over one field.
pub struct Dickson {
    field: Gf,
    q_cache: Mutex<HashMap<(usize, usize), Poly>>,
    word_cache: Mutex<HashMap<DicksonWord, Poly>>,
}

impl Dickson {
    pub fn new(field: &Gf) -> Dickson {
        Dickson { field: field.clone(), q_cache: Mutex::new(HashMap::new()), word_cache: Mutex::new(HashMap::new()) }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `V_k` in variables `x_1..x_k`.
    pub fn v(&self, k: usize) -> Poly {
        assert!(k >= 1);
        let f = &self.field;
        let q = f.q();
        let mut acc = Poly::one(f, k);
        let count = (q as u64).pow(k as u32 - 1);
        for code in 0..count {
            let mut c = code;
            let mut terms = vec![(Monomial::var(k - 1, 1), 1)];
            for i in 0..k - 1 {
                terms.push((Monomial::var(i, 1), (c % q as u64) as u32));
                c /= q as u64;
            }
            acc = &acc * &Poly::from_terms(f, k, terms);
        }
        acc
    }

    /// `L_n = V_1 ... V_n`.
    pub fn l(&self, n: usize) -> Poly {
        let mut acc = Poly::one(&self.field, n);
        for k in 1..=n {
            let map: Vec<usize> = (0..k).collect();
            acc = &acc * &self.v(k).embed(n, &map);
        }
        acc
    }

    /// `[r_1..r_n] = det(x_i^{q^{r_j}})` in `n = rs.len()` variables.
    pub fn bracket(&self, rs: &[u32]) -> Poly {
        let n = rs.len();
        let q = self.field.q();
        let pw: Vec<u32> = rs.iter().map(|&r| q.pow(r)).collect();
        let terms = permutations(n).into_iter().map(|p| {
            let mut m = Monomial::ONE;
            for (i, &j) in p.iter().enumerate() {
                m.0[i] += pw[j];
            }
            let c = if perm_sign(&p) { self.field.neg(1) } else { 1 };
            (m, c)
        });
        Poly::from_terms(&self.field, n, terms)
    }

    /// `Q_{n,i}` in `n` variables; zero when `i` is outside `0..=n`.
    pub fn qpoly(&self, n: usize, i: i64) -> Poly {
        if i < 0 || i as usize > n {
            return Poly::zero(&self.field, n);
        }
        let i = i as usize;
        if i == n {
            return Poly::one(&self.field, n);
        }
        if let Some(p) = self.q_cache.lock().unwrap().get(&(n, i)) {
            return p.clone();
        }
        let q = self.field.q() as u64;
        let map: Vec<usize> = (0..n - 1).collect();
        let vn = self.v(n).pow(q - 1);
        let a = &vn * &self.qpoly(n - 1, i as i64).embed(n, &map);
        let b = self.qpoly(n - 1, i as i64 - 1).frobenius_power(1).embed(n, &map);
        let r = &a + &b;
        self.q_cache.lock().unwrap().insert((n, i), r.clone());
        r
    }

    /// `[0..^i..n] / L_n`.
    pub fn qpoly_by_quotient(&self, n: usize, i: usize) -> Result<Poly> {
        if i > n {
            return Err(Error::OutOfRange(format!("Q_{{{n},{i}}}")));
        }
        let rs: Vec<u32> = (0..=n as u32).filter(|&r| r != i as u32).collect();
        self.bracket(&rs).exact_div(&self.bracket(&(0..n as u32).collect::<Vec<_>>()))
    }

    /// Expansion of a Dickson monomial in `s` variables.
    pub fn expand(&self, w: &DicksonWord) -> Poly {
        if let Some(p) = self.word_cache.lock().unwrap().get(w) {
            return p.clone();
        }
        let mut acc = Poly::one(&self.field, w.s);
        for (k, &e) in w.exps.iter().enumerate() {
            if e > 0 {
                acc = &acc * &self.qpoly(w.s, (w.s - 1 - k) as i64).pow(e as u64);
            }
        }
        self.word_cache.lock().unwrap().insert(w.clone(), acc.clone());
        acc
    }

    /// Expansion computed directly in `Q_m(s)`.
    pub fn expand_trunc(&self, w: &DicksonWord, m: u32) -> Poly {
        let mut acc = Poly::one(&self.field, w.s).truncate(m);
        for (k, &e) in w.exps.iter().enumerate() {
            if e > 0 {
                let f = self.qpoly(w.s, (w.s - 1 - k) as i64).truncate(m).pow_trunc(e as u64, m);
                acc = acc.mul_trunc(&f, m);
            }
        }
        acc
    }

    /// `V_{n+1}(x, X) = X^{q^n} + sum_{i<n} (-1)^{n-i} Q_{n,i} X^{q^i}`.
    pub fn fundamental_check(&self, n: usize) -> bool {
        let q = self.field.q();
        let lhs = self.v(n + 1);
        let map: Vec<usize> = (0..n).collect();
        let mut rhs = Poly::monomial(&self.field, n + 1, Monomial::var(n, q.pow(n as u32)), 1);
        for i in 0..n {
            let x = Poly::monomial(&self.field, n + 1, Monomial::var(n, q.pow(i as u32)), 1);
            let mut t = &self.qpoly(n, i as i64).embed(n + 1, &map) * &x;
            if (n - i) % 2 == 1 {
                t = -&t;
            }
            rhs = &rhs + &t;
        }
        lhs == rhs
    }

    /// Writes `f` (in `s` variables) as a combination of Dickson monomials,
    /// one homogeneous component at a time. Fails when `f` is not in `D_s`.
    pub fn express(&self, f: &Poly, s: usize) -> Result<Vec<(DicksonWord, u32)>> {
        if f.nvars() != s {
            return Err(Error::Mismatch);
        }
        let q = self.field.q() as u64;
        let mut degrees: Vec<u32> = f.monomials().map(Monomial::degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = Vec::new();
        for d in degrees {
            let comp = f.homogeneous_component(d);
            let words = words_of_degree(s, d as u64, q);
            let expansions: Vec<Poly> = words.iter().map(|w| self.expand(w)).collect();
            let mut index: HashMap<Monomial, usize> = HashMap::new();
            for p in expansions.iter().chain(std::iter::once(&comp)) {
                for m in p.monomials() {
                    let next = index.len();
                    index.entry(*m).or_insert(next);
                }
            }
            // Columns: words, then the target.
            let mut mat = MatrixGF::zeros(&self.field, index.len(), words.len() + 1);
            for (j, p) in expansions.iter().chain(std::iter::once(&comp)).enumerate() {
                for (m, c) in p.terms() {
                    mat.set(index[m], j, *c);
                }
            }
            let (r, pivots) = mat.rref();
            if pivots.last() == Some(&words.len()) {
                return Err(Error::OutOfRange("polynomial is not a Dickson polynomial".into()));
            }
            for (row, &pc) in pivots.iter().enumerate() {
                let c = r.get(row, words.len());
                if c != 0 {
                    out.push((words[pc].clone(), c));
                }
            }
        }
        Ok(out)
    }
}

/// Whether the polynomials are linearly independent.
pub fn independent(polys: &[Poly]) -> bool {
    let Some(first) = polys.first() else { return true };
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for m in p.monomials() {
            let next = index.len();
            index.entry(*m).or_insert(next);
        }
    }
    let mut rs = RowSpace::new(first.field(), index.len());
    polys.iter().all(|p| {
        let mut v = vec![0; index.len()];
        for (m, c) in p.terms() {
            v[index[m]] = *c;
        }
        rs.insert(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldParams;

    fn alg(q: u64) -> Dickson {
        Dickson::new(&FieldParams::of_order(q).unwrap())
    }

    #[test]
    fn small_examples() {
        let d = alg(2);
        let f = d.field().clone();
        assert_eq!(d.qpoly(2, 1), Poly::parse("x1^2 + x1*x2 + x2^2", &f, 2).unwrap());
        assert_eq!(d.bracket(&[0, 2]), Poly::parse("x1*x2^4 + x1^4*x2", &f, 2).unwrap());
        assert!(d.qpoly(2, -1).is_zero());
        assert!(d.qpoly(2, 3).is_zero());
        assert_eq!(d.qpoly(3, 3), Poly::one(&f, 3));
    }

    #[test]
    fn l_as_product_and_bracket() {
        for q in [2, 3, 4, 5] {
            let d = alg(q);
            for n in 1..=3 {
                assert_eq!(d.l(n), d.bracket(&(0..n as u32).collect::<Vec<_>>()), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn recursion_matches_quotient_route() {
        for (q, nmax) in [(2u64, 4usize), (3, 3), (4, 3), (5, 2)] {
            let d = alg(q);
            for n in 1..=nmax {
                for i in 0..=n {
                    let r = d.qpoly(n, i as i64);
                    assert_eq!(r, d.qpoly_by_quotient(n, i).unwrap(), "q={q} n={n} i={i}");
                    let deg = q.pow(n as u32) - q.pow(i as u32);
                    assert!(r.is_homogeneous());
                    assert_eq!(r.degree().unwrap() as u64, deg);
                }
                assert_eq!(d.qpoly(n, 0), d.l(n).pow(q - 1));
            }
        }
    }

    #[test]
    fn fundamental_equation() {
        for (q, nmax) in [(2u64, 3usize), (3, 3), (4, 2), (5, 2)] {
            let d = alg(q);
            for n in 1..=nmax {
                assert!(d.fundamental_check(n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn express_round_trip() {
        let d = alg(3);
        let w1 = DicksonWord::new(vec![2, 1]);
        let w2 = DicksonWord::new(vec![0, 0]);
        let f = &d.expand(&w1).scale(2) + &d.expand(&w2);
        let mut e = d.express(&f, 2).unwrap();
        e.sort();
        assert_eq!(e, vec![(w2, 1), (w1, 2)]);
        let x = Poly::parse("x1", d.field(), 2).unwrap();
        assert!(d.express(&x, 2).is_err());
    }

    #[test]
    fn word_degrees() {
        for w in words_of_degree(3, 24, 2) {
            assert_eq!(w.degree(2), 24);
            assert_eq!(d_deg(&alg(2), &w), 24);
        }
        assert_eq!(DicksonWord::new(vec![1, 2]).phi(), DicksonWord::new(vec![1, 2, 0]));
    }

    fn d_deg(d: &Dickson, w: &DicksonWord) -> u64 {
        d.expand(w).degree().unwrap() as u64
    }
}
