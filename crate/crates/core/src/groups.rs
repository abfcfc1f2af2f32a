//! `GL_n(F_q)` and its block upper-triangular parabolic subgroups `P(alpha)`:
//! generators, enumeration, cosets and transfer.
//!
//! The Borel subgroup is `P(1, .., 1)` and `GL_n` is `P(n)`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gfq::Gf;
use crate::mvpoly::{act_trunc, MatrixGF, Poly};

const MAX_GROUP_ORDER: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub field: Gf,
    pub alpha: Vec<u32>,
    pub generators: Vec<MatrixGF>,
}

impl GroupSpec {
    pub fn parabolic(field: &Gf, alpha: &[u32]) -> Result<GroupSpec> {
        Ok(GroupSpec { field: field.clone(), alpha: alpha.to_vec(), generators: parabolic_generators(field, alpha)? })
    }

    pub fn general(field: &Gf, n: usize) -> GroupSpec {
        GroupSpec { field: field.clone(), alpha: vec![n as u32], generators: gl_generators(field, n) }
    }

    pub fn borel(field: &Gf, n: usize) -> Result<GroupSpec> {
        GroupSpec::parabolic(field, &vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.alpha.iter().sum::<u32>() as usize
    }

    pub fn elements(&self) -> Result<Vec<MatrixGF>> {
        enumerate(&self.field, self.n(), &self.generators)
    }

    /// Whether `f` is fixed by every generator in `Q_m`.
    pub fn fixes(&self, f: &Poly, m: u32) -> Result<bool> {
        let t = f.truncate(m);
        for g in &self.generators {
            if act_trunc(g, &t, m)? != t {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `diag(gamma, 1, ..)` for a primitive `gamma` (omitted when `q = 2`), the
/// cyclic permutation `x_j -> x_{j+1}`, and the transvection `I + E_{12}`.
pub fn gl_generators(field: &Gf, n: usize) -> Vec<MatrixGF> {
    let mut gens = Vec::new();
    if field.q() > 2 && n >= 1 {
        let mut d = MatrixGF::identity(field, n);
        d.set(0, 0, field.primitive_element());
        gens.push(d);
    }
    if n >= 2 {
        let mut c = MatrixGF::zeros(field, n, n);
        for j in 0..n {
            c.set((j + 1) % n, j, 1);
        }
        gens.push(c);
        let mut t = MatrixGF::identity(field, n);
        t.set(0, 1, 1);
        gens.push(t);
    }
    gens
}

/// Block generators of each `GL_{alpha_i}` plus `I + E_{A_i, A_i + 1}` at each
/// block boundary (`A_i` the partial sums).
pub fn parabolic_generators(field: &Gf, alpha: &[u32]) -> Result<Vec<MatrixGF>> {
    if alpha.is_empty() || alpha.contains(&0) {
        return Err(Error::OutOfRange(format!("alpha must have positive parts, got {alpha:?}")));
    }
    let n = alpha.iter().sum::<u32>() as usize;
    let mut gens = Vec::new();
    let mut offset = 0;
    for (k, &a) in alpha.iter().enumerate() {
        let a = a as usize;
        for g in gl_generators(field, a) {
            let mut big = MatrixGF::identity(field, n);
            for i in 0..a {
                for j in 0..a {
                    big.set(offset + i, offset + j, g.get(i, j));
                }
            }
            gens.push(big);
        }
        offset += a;
        if k + 1 < alpha.len() {
            let mut t = MatrixGF::identity(field, n);
            t.set(offset - 1, offset, 1);
            gens.push(t);
        }
    }
    Ok(gens)
}

/// All elements of the group generated by `gens`, identity first.
pub fn enumerate(field: &Gf, n: usize, gens: &[MatrixGF]) -> Result<Vec<MatrixGF>> {
    let id = MatrixGF::identity(field, n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.data().to_vec());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if seen.insert(y.data().to_vec()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(Error::WorkBound(format!("group exceeds {MAX_GROUP_ORDER} elements")));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

pub fn gl_order(k: u32, q: u64) -> BigUint {
    let qk = BigUint::from(q).pow(k);
    (0..k).map(|j| &qk - BigUint::from(q).pow(j)).product()
}

/// `|P(alpha)| = prod |GL_{alpha_i}| * q^{(n^2 - sum alpha_i^2)/2}`.
pub fn expected_order(alpha: &[u32], q: u64) -> BigUint {
    let n: u32 = alpha.iter().sum();
    let sq: u32 = alpha.iter().map(|a| a * a).sum();
    let levi: BigUint = alpha.iter().map(|&a| gl_order(a, q)).product();
    levi * BigUint::from(q).pow((n * n - sq) / 2)
}

/// Representatives of the left cosets `gH` of `H` in `G`.
pub fn coset_reps(g: &[MatrixGF], h: &[MatrixGF]) -> Result<Vec<MatrixGF>> {
    let g_set: HashSet<&[u32]> = g.iter().map(MatrixGF::data).collect();
    if h.iter().any(|x| !g_set.contains(x.data())) {
        return Err(Error::NotSubgroup);
    }
    let mut covered: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for x in g {
        if covered.contains(x.data()) {
            continue;
        }
        for y in h {
            covered.insert(x.mul(y)?.data().to_vec());
        }
        reps.push(x.clone());
    }
    Ok(reps)
}

/// `tr_H^G(f) = sum_{gH} g . f` in `Q_m`; `f` must be fixed by `h_gens`.
pub fn transfer(f: &Poly, reps: &[MatrixGF], h_gens: &[MatrixGF], m: u32) -> Result<Poly> {
    let t = f.truncate(m);
    for h in h_gens {
        if act_trunc(h, &t, m)? != t {
            return Err(Error::NotInvariant);
        }
    }
    let mut acc = Poly::zero(f.field(), f.nvars());
    for g in reps {
        acc = &acc + &act_trunc(g, &t, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldParams;

    fn field(q: u64) -> Gf {
        FieldParams::of_order(q).unwrap()
    }

    fn order(q: u64, alpha: &[u32]) -> usize {
        GroupSpec::parabolic(&field(q), alpha).unwrap().elements().unwrap().len()
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(2, &[2]), 6);
        assert_eq!(order(2, &[3]), 168);
        assert_eq!(order(2, &[1, 1, 1]), 8);
        assert_eq!(order(2, &[2, 1]), 24);
    }

    #[test]
    fn orders_match_formula() {
        for q in [2u64, 3, 4] {
            for n in 1..=3 {
                for alpha in crate::combinat::compositions(n) {
                    if q == 4 && n == 3 && alpha.len() == 1 {
                        continue;
                    }
                    assert_eq!(BigUint::from(order(q, &alpha)), expected_order(&alpha, q), "q={q} alpha={alpha:?}");
                }
            }
        }
    }

    #[test]
    fn generators_are_upper_block_triangular() {
        let f = field(3);
        for g in parabolic_generators(&f, &[2, 1]).unwrap() {
            assert_eq!(g.get(2, 0), 0);
            assert_eq!(g.get(2, 1), 0);
            assert!(g.is_invertible());
        }
    }

    #[test]
    fn coset_indices() {
        let f = field(2);
        let g2 = GroupSpec::general(&f, 2).elements().unwrap();
        let b2 = GroupSpec::borel(&f, 2).unwrap().elements().unwrap();
        assert_eq!(coset_reps(&g2, &b2).unwrap().len(), 3);
        let g3 = GroupSpec::general(&f, 3).elements().unwrap();
        let b3 = GroupSpec::borel(&f, 3).unwrap().elements().unwrap();
        assert_eq!(coset_reps(&g3, &b3).unwrap().len(), 21);
        let p21 = GroupSpec::parabolic(&f, &[2, 1]).unwrap().elements().unwrap();
        assert_eq!(coset_reps(&g3, &p21).unwrap().len(), 7);
        assert!(matches!(coset_reps(&b3, &g3), Err(Error::NotSubgroup)));
    }

    #[test]
    fn transfer_of_invariant_multiplies_by_index() {
        let f = field(3);
        let g2 = GroupSpec::general(&f, 2);
        let b2 = GroupSpec::borel(&f, 2).unwrap();
        let reps = coset_reps(&g2.elements().unwrap(), &b2.elements().unwrap()).unwrap();
        assert_eq!(reps.len(), 4);
        let dk = crate::dickson::Dickson::new(&f);
        let inv = dk.qpoly(2, 1);
        // Index 4 is 1 mod 3.
        assert_eq!(transfer(&inv, &reps, &b2.generators, 3).unwrap(), inv.truncate(3));
        let x2 = Poly::parse("x2", &f, 2).unwrap();
        assert!(matches!(transfer(&x2, &reps, &b2.generators, 3), Err(Error::NotInvariant)));
    }
}
