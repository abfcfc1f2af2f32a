//! Exact checks of the delta/Dickson/transfer/Steenrod identities used to
//! build and certify the bases. Each check returns an [`IdentityReport`].
//!
//! Statements quantified over `f in D_s` are tested on random Dickson
//! polynomials drawn from a seeded ChaCha stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basisgen;
use crate::combinat::{delta_space, is_essential, q_int_literal};
use crate::delta::{a_closed, delta, y_closed};
use crate::dickson::{words_of_degree, Dickson, DicksonWord};
use crate::error::Result;
use crate::gfq::Gf;
use crate::groups::{coset_reps, transfer, GroupSpec};
use crate::mvpoly::{act, Poly};
use crate::steenrod::{
    cartan_check, delta3_mplus1_check, delta_commutation_check, steenrod_on_l, unstable_check, CommutationKind,
    Filtration,
};

pub const DEFAULT_SEED: u64 = 0x5eed_d1c5;
pub const SAMPLES: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

struct Tally {
    name: String,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally { name: name.into(), cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn done(self) -> IdentityReport {
        IdentityReport { passed: self.failures.is_empty() && self.cases > 0, name: self.name, cases: self.cases, failures: self.failures }
    }
}

/// Shared state for one `(q, m)`.
pub struct Context {
    pub field: Gf,
    pub dk: Dickson,
    pub m: u32,
    pub q: u64,
    rng: ChaCha8Rng,
}

impl Context {
    pub fn new(field: &Gf, m: u32, seed: u64) -> Context {
        Context { field: field.clone(), dk: Dickson::new(field), m, q: field.q() as u64, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn qi(&self, k: i64) -> u64 {
        if k <= 0 { 0 } else { q_int_literal(k as u32, self.q) }
    }

    fn top(&self) -> u32 {
        (self.q.pow(self.m) - 1) as u32
    }

    fn tr(&self, p: &Poly) -> Poly {
        p.truncate(self.m)
    }

    fn d(&self, a: usize, f: &Poly) -> Result<Poly> {
        delta(a, self.m, f)
    }

    fn q10(&self, e: u64) -> Poly {
        Poly::from_exps(&self.field, &[(e * (self.q - 1)) as u32])
    }

    fn word(&self, exps: &[u64]) -> Poly {
        self.dk.expand(&DicksonWord::new(exps.iter().map(|&e| e as u32).collect()))
    }

    /// A random combination of one to three Dickson words of rank `s` and
    /// degree at most `max_deg`.
    fn random_dickson(&mut self, s: usize, max_deg: u64) -> Poly {
        let mut out = Poly::zero(&self.field, s);
        let terms = self.rng.gen_range(1..=3);
        for _ in 0..terms {
            let words = loop {
                let d = self.rng.gen_range(0..=max_deg);
                let ws = words_of_degree(s, d, self.q);
                if !ws.is_empty() {
                    break ws;
                }
            };
            let w = &words[self.rng.gen_range(0..words.len())];
            let c = self.rng.gen_range(1..self.q as u32);
            out = &out + &self.dk.expand(w).scale(c);
        }
        out
    }
}

/// `x_1^{e_1} .. x_n^{e_n}`.
fn mono(field: &Gf, exps: &[u32]) -> Poly {
    Poly::from_exps(field, exps)
}

/// The five delta/Dickson product identities, each on `samples` random
/// Dickson arguments.
pub fn delta_dickson(cx: &mut Context, samples: usize) -> Result<Vec<IdentityReport>> {
    let q = cx.q;
    let qm = q.pow(cx.m);
    let top3 = 3 * (qm - 1);
    let mut out = Vec::new();

    let mut t = Tally::new("Q_{s,0} delta_s(f) = 0");
    for k in 0..samples {
        let s = 1 + k % 3;
        let f = if s == 1 {
            let e = cx.rng.gen_range(0..=qm as u32);
            Poly::from_exps(&cx.field, &[e]).scale(cx.rng.gen_range(1..q as u32))
        } else {
            let bound = (s as u64 + 1) * qm;
            cx.random_dickson(s - 1, bound)
        };
        let d = cx.d(s, &f)?;
        let n = d.nvars();
        let qs0 = cx.dk.qpoly(s, 0).embed(n, &(0..s).collect::<Vec<_>>());
        let ok = cx.tr(&(&qs0 * &d)).is_zero();
        t.check(ok, || format!("s={s} f={f}"));
    }
    out.push(t.done());

    let mut t = Tally::new("Q_{2,1} delta_2(f) = delta_2(Q_{1,0}^q f), f in D_1");
    let q21 = cx.dk.qpoly(2, 1);
    for _ in 0..samples {
        let f = cx.random_dickson(1, 2 * qm);
        let lhs = cx.tr(&(&q21 * &cx.d(2, &f)?));
        let rhs = cx.tr(&cx.d(2, &(&cx.q10(q) * &f))?);
        t.check(lhs == rhs, || format!("f={f}"));
    }
    out.push(t.done());

    let mut t = Tally::new("Q_{3,i} delta_3(f) = delta_3(Q_{2,i-1}^q f), i = 1, 2, f in D_2");
    let bound = top3 - (qm - q * q) + q * q;
    for k in 0..samples {
        let i = 1 + k % 2;
        let f = cx.random_dickson(2, bound);
        let q3i = cx.dk.qpoly(3, i as i64);
        let lhs = cx.tr(&(&q3i * &cx.d(3, &f)?));
        let q2 = cx.dk.qpoly(2, i as i64 - 1).pow(q);
        let rhs = cx.tr(&cx.d(3, &(&q2 * &f))?);
        t.check(lhs == rhs, || format!("i={i} f={f}"));
    }
    out.push(t.done());

    let bound = top3 - 2 * (qm - q) + q;
    let q32 = cx.dk.qpoly(3, 2);
    let q31 = cx.dk.qpoly(3, 1);
    let mut t4 = Tally::new("Q_{3,2} delta_2^2(f) = delta_2^2(Q_{1,0}^{q^2} f), f in D_1");
    let mut t5 = Tally::new("Q_{3,1} delta_2^2(f) = 0, f in D_1");
    for _ in 0..samples {
        let f = cx.random_dickson(1, bound);
        let dd = cx.d(2, &cx.d(2, &f)?)?;
        let lhs = cx.tr(&(&q32 * &dd));
        let rhs = cx.tr(&cx.d(2, &cx.d(2, &(&cx.q10(q * q) * &f))?)?);
        t4.check(lhs == rhs, || format!("f={f}"));
        t5.check(cx.tr(&(&q31 * &dd)).is_zero(), || format!("f={f}"));
    }
    out.push(t4.done());
    out.push(t5.done());
    Ok(out)
}

/// Closed forms of `delta_3` on the edge words of `D_2`, in `S`, and the
/// vanishing of large powers of `Q_{3,0}` in `Q_m`.
pub fn delta3_closed_forms(cx: &Context) -> Result<Vec<IdentityReport>> {
    let (q, m) = (cx.q, cx.m);
    let q30 = cx.dk.qpoly(3, 0);
    let mut out = Vec::new();

    let mut t = Tally::new("delta_3(Q_{2,0}^{[i]}) = delta_{3;m-i}(1)^{q^i} Q_{3,0}^{[i]}");
    for i in 0..=m {
        let lhs = cx.d(3, &cx.word(&[0, cx.qi(i as i64)]))?;
        let base = delta(3, m - i, &Poly::one(&cx.field, 2))?;
        let rhs = &base.frobenius_power(i) * &q30.pow(cx.qi(i as i64));
        t.check(lhs == rhs, || format!("i={i}"));
    }
    if m >= 2 {
        let lhs = cx.d(3, &cx.word(&[0, cx.qi(m as i64 - 2)]))?;
        t.check(lhs == q30.pow(cx.qi(m as i64 - 2)), || "i=m-2".into());
    }
    if m >= 3 {
        let e = cx.qi(m as i64 - 3);
        let lhs = cx.d(3, &cx.word(&[0, e]))?;
        let rhs = &cx.dk.qpoly(3, 2).pow(q.pow(m - 3)) * &q30.pow(e);
        t.check(lhs == rhs, || "i=m-3".into());
    }
    out.push(t.done());

    let mut t = Tally::new("Q_{3,0}^k = 0 in Q_m for k > [m-2]");
    let edge = cx.qi(m as i64 - 2);
    for k in edge + 1..=edge + 3 {
        let v = cx.dk.expand_trunc(&DicksonWord::new(vec![0, 0, k as u32]), m);
        t.check(v.is_zero(), || format!("k={k}"));
    }
    out.push(t.done());

    if m >= 3 {
        let mut t = Tally::new("delta_3(Q_{2,1}^{q^{m-3}} Q_{2,0}^{[m-3]}) = Q_{3,1}^{q^{m-3}} Q_{3,0}^{[m-3]}");
        let e = cx.qi(m as i64 - 3);
        let lhs = cx.d(3, &cx.word(&[q.pow(m - 3), e]))?;
        let rhs = cx.word(&[0, q.pow(m - 3), e]);
        t.check(lhs == rhs, String::new);
        out.push(t.done());
    }

    let mut t = Tally::new("delta_3(Q_{2,1}^{(q^l2-q^l3)/(q-1)} Q_{2,0}^{[l3]}) = delta_{3;m-l3}(Q_{2,1}^{[l2-l3]})^{q^l3} Q_{3,0}^{[l3]}");
    for l3 in 0..=m.saturating_sub(2) {
        for l2 in l3..=m {
            let a = (q.pow(l2) - q.pow(l3)) / (q - 1);
            let lhs = cx.d(3, &cx.word(&[a, cx.qi(l3 as i64)]))?;
            let inner = delta(3, m - l3, &cx.word(&[cx.qi((l2 - l3) as i64), 0]))?;
            let rhs = &inner.frobenius_power(l3) * &q30.pow(cx.qi(l3 as i64));
            t.check(lhs == rhs, || format!("l2={l2} l3={l3}"));
        }
    }
    out.push(t.done());
    Ok(out)
}

/// The scalar multiple of `x_1^T x_2^T x_3^{(qt+i-2)(q-1)}` predicted for
/// `t >= 1`, `s = 0`.
fn reduction_rhs(cx: &Context, s: u64, t: u64, i: u64) -> Result<Poly> {
    let (q, top) = (cx.q, cx.top());
    let f = &cx.field;
    let zero = Poly::zero(f, 3);
    let mono3 = |e: i64| if e < 0 { zero.clone() } else { mono(f, &[top, top, (e as u64 * (q - 1)) as u32]) };
    let (q, s, t, i) = (q as i64, s as i64, t as i64, i as i64);
    Ok(match (t >= 1, s) {
        (true, s) if s > 1 => zero,
        (true, 1) => mono3(q * t + i - 1),
        (true, _) => mono3(q * t + i - 2).scale(f.from_int(t + 1)),
        (false, s) => {
            let dd = cx.d(2, &cx.d(2, &cx.q10((i + s) as u64))?)?;
            if s <= 1 { dd } else { &dd - &mono3(s + i - 2) }
        }
    })
}

/// `delta_2(V_1^{s(q-1)} V_2^{t(q-1)} delta_2(Q_{1,0}^i))` in `Q_m(3)` against
/// the five-case formula.
pub fn delta2_reduction(cx: &Context) -> Result<IdentityReport> {
    let q = cx.q;
    let mut t_ = Tally::new("delta_2(V_1^{s(q-1)} V_2^{t(q-1)} delta_2(Q_{1,0}^i)) five-case formula");
    let v1 = cx.dk.v(1).embed(2, &[0]);
    let v2 = cx.dk.v(2);
    for s in 0..=3u64 {
        for t in 0..=3u64 {
            for i in 0..=cx.qi(cx.m as i64) {
                let inner = cx.d(2, &cx.q10(i))?;
                let arg = &(&v1.pow(s * (q - 1)) * &v2.pow(t * (q - 1))) * &inner;
                let got = cx.tr(&cx.d(2, &arg)?);
                let want = cx.tr(&reduction_rhs(cx, s, t, i)?);
                t_.check(got == want, || format!("s={s} t={t} i={i}"));
            }
        }
    }
    Ok(t_.done())
}

/// `Q_{2,1}^{(q^{m-1}-q^i)/(q-1)} Q_{2,0}^{[i]} - delta_2(Q_{1,0}^{[i]})` is a
/// combination of essential words divisible by `Q_{2,0}^{[i+1]}`.
pub fn edge_decomposition(cx: &Context) -> Result<IdentityReport> {
    let (q, m) = (cx.q, cx.m);
    let mut t = Tally::new("edge word of D_2 = delta_2(Q_{1,0}^{[i]}) + essential words divisible by Q_{2,0}^{[i+1]}");
    for i in 0..m {
        let a = (q.pow(m - 1) - q.pow(i)) / (q - 1);
        let edge = cx.word(&[a, cx.qi(i as i64)]);
        let diff = &edge - &cx.d(2, &cx.q10(cx.qi(i as i64)))?;
        let terms = cx.dk.express(&diff, 2)?;
        let need = cx.qi(i as i64 + 1) as u32;
        let ok = terms.iter().all(|(w, _)| w.exp_of(0) >= need && is_essential(w, m, q));
        t.check(ok, || format!("i={i}: {:?}", terms.iter().map(|(w, c)| format!("{c}*{}", w.label())).collect::<Vec<_>>()));
    }
    Ok(t.done())
}

/// The listed edge words of `D_3` lie in the span of the rank-3 basis in `Q_m`.
pub fn rank3_edge_elements(cx: &Context) -> Result<IdentityReport> {
    let (q, m) = (cx.q, cx.m);
    let mut t = Tally::new("edge words of D_3 lie in span of the GL_3 basis");
    if m < 2 {
        return Ok(t.done());
    }
    let basis = basisgen::build_with(&cx.dk, &[3], m)?;
    let span: Vec<Poly> = basis.elements.iter().map(|e| e.poly.clone()).collect();
    let qd = |a: u32, b: u32| (q.pow(a) - q.pow(b)) / (q - 1);
    let mut words = vec![vec![0, 0, cx.qi(m as i64 - 2)]];
    for l3 in 0..=m.saturating_sub(3) {
        if m < 3 {
            break;
        }
        words.push(vec![0, qd(m - 2, l3), cx.qi(l3 as i64)]);
        for l2 in l3..=m - 3 {
            words.push(vec![qd(m - 2, l2), qd(l2, l3), cx.qi(l3 as i64)]);
        }
    }
    for w in words {
        let p = cx.dk.expand_trunc(&DicksonWord::new(w.iter().map(|&e| e as u32).collect()), m);
        t.check(crate::steenrod::in_span(&p, &span, m, q), || format!("{w:?}"));
    }
    // Q_{3,0}^{[m-2]} already sits in delta_3(Delta^m_2).
    let w = DicksonWord::new(vec![0, cx.qi(m as i64 - 2) as u32]);
    let in_delta = delta_space(m, 2, q).contains(&w);
    t.check(in_delta, || "Q_{2,0}^{[m-2]} not in Delta^m_2".into());
    Ok(t.done())
}

/// `[0,a,b]/[0,1,2]`.
fn bracket_ratio(dk: &Dickson, a: u32, b: u32) -> Result<Poly> {
    dk.bracket(&[0, a, b]).exact_div(&dk.bracket(&[0, 1, 2]))
}

/// Whether `f` equals the word `lead` plus terms in the monomial ideal
/// generated by `gens`.
fn lead_plus_ideal(dk: &Dickson, f: &Poly, lead: &[u32], gens: &[Vec<u32>]) -> Result<bool> {
    let terms = dk.express(f, 3)?;
    let lead_w = DicksonWord::new(lead.to_vec());
    let has_lead = terms.iter().any(|(w, c)| *w == lead_w && *c == 1);
    let rest_ok = terms
        .iter()
        .filter(|(w, _)| *w != lead_w)
        .all(|(w, _)| gens.iter().any(|g| g.iter().zip(&w.exps).all(|(a, b)| b >= a)));
    Ok(has_lead && rest_ok)
}

/// The rank-3 key reductions and their Frobenius-twisted corollaries, in `S`.
pub fn key_reduction(cx: &Context) -> Result<Vec<IdentityReport>> {
    let (q, m) = (cx.q, cx.m);
    let dk = &cx.dk;
    let mut out = Vec::new();
    let one2 = Poly::one(&cx.field, 2);
    let q21 = dk.qpoly(2, 1);
    let qd = |a: u32, b: u32| ((q.pow(a) - q.pow(b)) / (q - 1)) as u32;
    let qi = |k: i64| cx.qi(k) as u32;

    let mut t = Tally::new("delta_{3;b}(1) = [0,1,b]/[0,1,2], delta_{3;b}(Q_{2,1}) = [0,2,b]/[0,1,2]");
    for b in 1..=m + 1 {
        t.check(delta(3, b, &one2)? == bracket_ratio(dk, 1, b)?, || format!("b={b} unit"));
        t.check(delta(3, b, &q21)? == bracket_ratio(dk, 2, b)?, || format!("b={b} Q21"));
    }
    out.push(t.done());

    if m < 2 {
        return Ok(out);
    }
    let d3q21 = cx.d(3, &q21)?;
    let d3one = cx.d(3, &one2)?;

    let mut t = Tally::new("key reduction (i): leading word Q_{3,1}^{[m-2]} modulo (Q_{3,0})");
    let lhs = &(&bracket_ratio(dk, 1, m - 1)? * &d3q21) - &(&bracket_ratio(dk, 2, m - 1)? * &d3one);
    t.check(lead_plus_ideal(dk, &lhs, &[0, qi(m as i64 - 2), 0], &[vec![0, 0, 1]])?, String::new);
    out.push(t.done());

    let mut t = Tally::new("key reduction (ii): leading word Q_{3,2}^{..} Q_{3,1}^{[l]} modulo (Q_{3,1}^{[l+1]}, Q_{3,0})");
    for l in 0..=m - 2 {
        let lhs = &(&bracket_ratio(dk, 1, l + 1)? * &d3q21) - &(&bracket_ratio(dk, 2, l + 1)? * &d3one);
        let lead = [qd(m - 2, l), qi(l as i64), 0];
        let gens = [vec![0, qi(l as i64 + 1), 0], vec![0, 0, 1]];
        t.check(lead_plus_ideal(dk, &lhs, &lead, &gens)?, || format!("l={l}"));
    }
    out.push(t.done());

    // delta_{3;b}(1)^{q^c} delta_{3;m}(Q21^{q^c} Q20^{[c]}) - delta_{3;b}(Q21)^{q^c} delta_{3;m}(Q20^{[c]}).
    let twisted = |b: u32, c: u32| -> Result<Poly> {
        let a = delta(3, b, &one2)?.frobenius_power(c);
        let bb = delta(3, b, &q21)?.frobenius_power(c);
        let x = cx.d(3, &cx.word(&[q.pow(c), cx.qi(c as i64)]))?;
        let y = cx.d(3, &cx.word(&[0, cx.qi(c as i64)]))?;
        Ok(&(&a * &x) - &(&bb * &y))
    };

    let mut t = Tally::new("reduction corollary (1): Q_{3,1}^{(q^{m-2}-q^l)/(q-1)} Q_{3,0}^{[l]} modulo (Q_{3,0}^{[l+1]})");
    for l in 0..=m - 2 {
        let lhs = twisted(m - l - 1, l)?;
        let lead = [0, qd(m - 2, l), qi(l as i64)];
        t.check(lead_plus_ideal(dk, &lhs, &lead, &[vec![0, 0, qi(l as i64 + 1)]])?, || format!("l={l}"));
    }
    out.push(t.done());

    if m >= 3 {
        let mut t = Tally::new("reduction corollary (2): Q_{3,2}^{..} Q_{3,1}^{..} Q_{3,0}^{[l3]} modulo (Q_{3,1}^{..}, Q_{3,0}^{[l3+1]})");
        for l3 in 0..=m - 3 {
            for l2 in l3..=m - 3 {
                let lhs = twisted(l2 - l3 + 1, l3)?;
                let lead = [qd(m - 2, l2), qd(l2, l3), qi(l3 as i64)];
                let gens = [vec![0, 0, qi(l3 as i64 + 1)], vec![0, qd(l2 + 1, l3), qi(l3 as i64)]];
                t.check(lead_plus_ideal(dk, &lhs, &lead, &gens)?, || format!("l2={l2} l3={l3}"));
            }
        }
        out.push(t.done());
    }
    Ok(out)
}

/// Transfer computations behind the generating-set arguments.
pub fn transfer_facts(cx: &Context) -> Result<Vec<IdentityReport>> {
    let (q, m) = (cx.q, cx.m);
    let f = &cx.field;
    let top = cx.top();
    let mut out = Vec::new();

    let g2 = GroupSpec::general(f, 2);
    let b2 = GroupSpec::borel(f, 2)?;
    let reps = coset_reps(&g2.elements()?, &b2.elements()?)?;
    let mut t = Tally::new("tr_B^{G_2}(x_1^T x_2^{s(q-1)}) = -delta_2(Q_{1,0}^{s+1})");
    for s in 0..=cx.qi(m as i64) {
        let x = mono(f, &[top, (s * (q - 1)) as u32]);
        let lhs = transfer(&x, &reps, &b2.generators, m)?;
        let rhs = -&cx.tr(&cx.d(2, &cx.q10(s + 1))?);
        t.check(lhs == rhs, || format!("s={s}"));
    }
    out.push(t.done());

    let g3 = GroupSpec::general(f, 3);
    let g3_elems = g3.elements()?;
    let p21 = GroupSpec::parabolic(f, &[2, 1])?;
    let p12 = GroupSpec::parabolic(f, &[1, 2])?;
    let b3 = GroupSpec::borel(f, 3)?;
    let p21_elems = p21.elements()?;
    let reps21 = coset_reps(&g3_elems, &p21_elems)?;
    let reps12 = coset_reps(&g3_elems, &p12.elements()?)?;
    let reps_b_21 = coset_reps(&p21_elems, &b3.elements()?)?;
    let big_m = m.max(4);

    let mut t = Tally::new("tr_{P(2,1)}^{G_3}(Q_{2,1}) = tr_{P(2,1)}^{G_3}(Q_{2,0}) = 0 in S");
    for i in 0..2 {
        let x = cx.dk.qpoly(2, i).embed(3, &[0, 1]);
        t.check(transfer(&x, &reps21, &p21.generators, big_m)?.is_zero(), || format!("Q2{i}"));
    }
    out.push(t.done());

    let d2 = delta_space(m, 2, q);
    let q20 = cx.dk.qpoly(2, 0);
    let mut t = Tally::new("tr_{P(2,1)}^{G_3}(Q_{2,0} delta_3(w)) = 0, w in Delta^m_2");
    for w in &d2 {
        let x = &q20.embed(3, &[0, 1]) * &cx.d(3, &cx.dk.expand(w))?;
        t.check(transfer(&x, &reps21, &p21.generators, m)?.is_zero(), || w.label());
    }
    out.push(t.done());

    let mut t = Tally::new("tr_{B_3}^{P(2,1)}(x_1^T g(x_2,x_3)) = -delta_2(Q_{1,0} g), g in Delta^m_2");
    let mut t_laplace = Tally::new("delta_3(g Q_{2,0}) = Q_{2,0} delta_3(g) - delta_2(Q_{1,0} g), g in Delta^m_2");
    for w in &d2 {
        let g = cx.dk.expand(w);
        let x = &mono(f, &[top, 0, 0]) * &g.embed(3, &[1, 2]);
        let lhs = transfer(&x, &reps_b_21, &b3.generators, m)?;
        let arg = &cx.q10(1).embed(2, &[0]) * &g;
        let d2g = cx.d(2, &arg)?;
        t.check(lhs == -&cx.tr(&d2g), || w.label());
        let l = cx.d(3, &(&g * &q20))?;
        let r = &(&q20.embed(3, &[0, 1]) * &cx.d(3, &g)?) - &d2g;
        t_laplace.check(l == r, || w.label());
    }
    out.push(t.done());
    out.push(t_laplace.done());

    let mut t = Tally::new("tr_{P(1,2)}^{G_3}(delta_1(w)) = delta_3(w Q_{2,0}), w in Delta^m_2");
    for w in &d2 {
        let x = cx.d(1, &cx.dk.expand(w))?;
        let lhs = transfer(&x, &reps12, &p12.generators, m)?;
        let rhs = cx.tr(&cx.d(3, &(&cx.dk.expand(w) * &q20))?);
        t.check(lhs == rhs, || w.label());
    }
    out.push(t.done());

    let mut t = Tally::new("tr_{P(1,2)}^{G_3}(x_1^T delta_2(Q_{1,0}^j)(x_2,x_3)) = -delta_2^2(Q_{1,0}^{j+1})");
    for j in 0..cx.qi(m as i64) {
        let x = cx.d(1, &cx.d(2, &cx.q10(j))?)?;
        let lhs = transfer(&x, &reps12, &p12.generators, m)?;
        let rhs = -&cx.tr(&cx.d(2, &cx.d(2, &cx.q10(j + 1))?)?);
        t.check(lhs == rhs, || format!("j={j}"));
    }
    out.push(t.done());

    let mut t = Tally::new("tr_{P(1,2)}^{G_3}(Q_{1,0}^j h) = 0 for j > 0, h in delta_3(Q_{2,1}^*) or delta_2^2(1)");
    let mut hs = Vec::new();
    for j2 in 0..cx.qi(m as i64 - 1) {
        hs.push(cx.d(3, &cx.word(&[j2, 0]))?);
    }
    hs.push(cx.d(2, &cx.d(2, &Poly::one(f, 1))?)?);
    for j in 1..cx.qi(m as i64) {
        for h in &hs {
            let x = &cx.q10(j).embed(3, &[0]) * h;
            t.check(transfer(&x, &reps12, &p12.generators, m)?.is_zero(), || format!("j={j}"));
        }
    }
    out.push(t.done());
    Ok(out)
}

/// Truncation does not commute with `delta_2`, `y_s` closed forms and
/// boundary values, and related small facts in ranks 2 and 3.
pub fn rank2_facts(cx: &Context) -> Result<Vec<IdentityReport>> {
    let (q, m) = (cx.q, cx.m);
    let f = &cx.field;
    let top = cx.top();
    let big = cx.qi(m as i64);
    let mut out = Vec::new();

    let mut t = Tally::new("non-descent: Q_{1,0}^{[m]+1} = 0 in Q_m but delta_2 of it is not");
    let g = cx.q10(big + 1);
    let d = cx.tr(&cx.d(2, &g)?);
    t.check(cx.tr(&g).is_zero() && !d.is_zero() && cx.d(2, &Poly::zero(f, 1))?.is_zero(), String::new);
    out.push(t.done());

    let mut t = Tally::new("y_s closed form and delta_2^2 closed form");
    for s in 0..big {
        t.check(cx.d(2, &cx.q10(s))? == y_closed(f, m, s)?, || format!("y s={s}"));
    }
    for s in 0..=big {
        let dd = cx.tr(&cx.d(2, &cx.d(2, &cx.q10(s))?)?);
        t.check(dd == a_closed(f, m, s)?, || format!("a s={s}"));
    }
    out.push(t.done());

    let mut t = Tally::new("boundary: delta_2(Q_{1,0}^{[m]+1}) = -(x_1x_2)^T, delta_2^2(Q_{1,0}^{[m]+2}) = (x_1x_2x_3)^T");
    t.check(d == -&mono(f, &[top, top]), || "rank 2".into());
    let dd = cx.tr(&cx.d(2, &cx.d(2, &cx.q10(big + 2))?)?);
    t.check(dd == mono(f, &[top, top, top]), || "rank 3".into());
    out.push(t.done());

    let mut t = Tally::new("y_{[i]} is a genuine G_2-invariant");
    let g2 = GroupSpec::general(f, 2);
    for i in 0..m {
        let y = cx.d(2, &cx.q10(cx.qi(i as i64)))?;
        let fixed = g2.generators.iter().all(|g| act(g, &y).map(|z| z == y).unwrap_or(false));
        t.check(fixed, || format!("i={i}"));
    }
    out.push(t.done());

    let mut t = Tally::new("Q_{2,0}^k = 0 in Q_m(2) for k > [m-1]; Q_{2,1}^{2[m-1]} = x_1^{q^m-q} x_2^{q^m-q}");
    let e = cx.qi(m as i64 - 1);
    t.check(cx.dk.expand_trunc(&DicksonWord::new(vec![0, e as u32 + 1]), m).is_zero(), String::new);
    let lhs = cx.dk.expand_trunc(&DicksonWord::new(vec![2 * e as u32, 0]), m);
    let c = (q.pow(m) - q) as u32;
    t.check(lhs == mono(f, &[c, c]), || "Q21 power".into());
    if m >= 1 {
        let y = cx.tr(&cx.d(2, &cx.q10((q.pow(m) - q) / (q - 1)))?);
        t.check(y == lhs, || "y".into());
    }
    out.push(t.done());

    let mut t = Tally::new("x_1^T x_2^T x_3^{i(q-1)} is not G_3-fixed for i < [m]");
    let g3 = GroupSpec::general(f, 3);
    for i in 0..big {
        let x = mono(f, &[top, top, (i * (q - 1)) as u32]);
        t.check(!g3.fixes(&x, m)?, || format!("i={i}"));
    }
    out.push(t.done());

    if q == 3 && m == 2 {
        let mut t = Tally::new("in Q_2(3) over F_3: Q_{3,0} = Q_{3,1} = 0 and Q_{3,2} = (x_1x_2x_3)^6");
        t.check(cx.dk.qpoly(3, 0).truncate(2).is_zero(), || "Q30".into());
        t.check(cx.dk.qpoly(3, 1).truncate(2).is_zero(), || "Q31".into());
        t.check(cx.dk.qpoly(3, 2).truncate(2) == mono(f, &[6, 6, 6]), || "Q32".into());
        out.push(t.done());
    }
    Ok(out)
}

/// Steenrod axioms, the action on `L_2`, `L_3`, the `P^k`/`delta`
/// commutation identities, `delta_{3;m+1}` and the filtration span.
pub fn steenrod_facts(cx: &mut Context, samples: usize) -> Result<Vec<IdentityReport>> {
    let (q, m) = (cx.q, cx.m);
    let f = cx.field.clone();
    let qm = q.pow(m) as i64;
    let mut out = Vec::new();

    let mut t = Tally::new("unstable condition and Cartan formula");
    for _ in 0..samples {
        let e: Vec<u32> = (0..3).map(|_| cx.rng.gen_range(0..2 * q as u32 + 2)).collect();
        let x = mono(&f, &e);
        t.check(unstable_check(&x), || format!("{x}"));
        let a = cx.random_dickson(3, q * q * q);
        let b = mono(&f, &[cx.rng.gen_range(0..4), cx.rng.gen_range(0..4), cx.rng.gen_range(0..4)]);
        let k = cx.rng.gen_range(0..(q * q) as i64);
        t.check(cartan_check(&a, &b, k), || format!("k={k} f={a} g={b}"));
    }
    out.push(t.done());

    let mut t = Tally::new("P^j L_n = Q_{n,i} L_n at j = q^i + .. + q^{n-1}, zero otherwise");
    for n in [2usize, 3] {
        for (j, _, ok) in steenrod_on_l(&cx.dk, n) {
            t.check(ok, || format!("n={n} j={j}"));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("P^k commutes with delta_2 up to Q_{2,*} and delta_{2;m+1} terms");
    for s in 0..=cx.qi(m as i64) + 1 {
        for k in 0..=qm + q as i64 + 2 {
            let arg = cx.q10(s);
            t.check(delta_commutation_check(&cx.dk, CommutationKind::Rank2, &arg, k, m)?, || format!("f=Q10^{s} k={k}"));
        }
    }
    for s in 0..cx.qi(m as i64).min(3) {
        let arg = cx.d(2, &cx.q10(s))?;
        for k in 0..=2 * q as i64 + 2 {
            t.check(delta_commutation_check(&cx.dk, CommutationKind::Rank2, &arg, k, m)?, || format!("f=delta_2(Q10^{s}) k={k}"));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("P^k commutes with delta_3 up to Q_{3,*} and delta_{3;m+1} terms");
    for w in delta_space(m, 2, q).into_iter().take(6) {
        let arg = cx.dk.expand(&w);
        for k in 0..=(q * q + q + 2) as i64 {
            t.check(delta_commutation_check(&cx.dk, CommutationKind::Rank3, &arg, k, m)?, || format!("f={} k={k}", w.label()));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("delta_{3;m+1}(h) in Q_m(3), h in D_2");
    let top3 = 3 * (q.pow(m) - 1);
    let lift = q.pow(m + 1) - q * q;
    for d in 0..=top3.saturating_sub(lift) + q * q {
        for w in words_of_degree(2, d, q) {
            let r = delta3_mplus1_check(&cx.dk, &w, m)?;
            t.check(r.passed, || format!("{} ({})", r.word, r.case));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("F_{n,k} spanned over Delta^m_s equals span over all of D_s");
    for n in 2..=3usize {
        for k in 0..=n.min(m as usize) {
            let a = Filtration::new(&cx.dk, n, k, m)?;
            let b = Filtration::flexible(&cx.dk, n, k, m)?;
            t.check(a.same_span(&b), || format!("n={n} k={k}"));
        }
    }
    out.push(t.done());
    Ok(out)
}

/// Every suite at one `(q, m)`.
pub fn run_all(field: &Gf, m: u32, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut cx = Context::new(field, m, seed);
    let mut out = delta_dickson(&mut cx, SAMPLES)?;
    out.extend(delta3_closed_forms(&cx)?);
    out.push(delta2_reduction(&cx)?);
    out.push(edge_decomposition(&cx)?);
    out.push(rank3_edge_elements(&cx)?);
    out.extend(key_reduction(&cx)?);
    out.extend(transfer_facts(&cx)?);
    out.extend(rank2_facts(&cx)?);
    out.extend(steenrod_facts(&mut cx, SAMPLES)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldParams;

    #[test]
    fn all_suites_pass_small() {
        let f = FieldParams::of_order(2).unwrap();
        for r in run_all(&f, 2, DEFAULT_SEED).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn wrong_coefficient_is_caught() {
        // With (t(q-1) - 1) in place of (t + 1) the s = 0 case fails at q = 3.
        let f = FieldParams::of_order(3).unwrap();
        let cx = Context::new(&f, 2, 1);
        let inner = cx.d(2, &cx.q10(0)).unwrap();
        let arg = &cx.dk.v(2).pow(2) * &inner;
        let got = cx.tr(&cx.d(2, &arg).unwrap());
        let top = cx.top();
        let base = mono(&f, &[top, top, 2]);
        assert_eq!(got, base.scale(2));
        assert_ne!(got, base.scale(1));
    }
}
