//! Text form `c*x1^e1*x2^e2 + ...`, highest lex term first. Unit
//! coefficients and exponents are omitted; the zero polynomial is `0`.
//! Coefficients print as field codes.

use std::fmt;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::gfq::Gf;

fn write_term(f: &mut fmt::Formatter<'_>, nvars: usize, m: &Monomial, c: u32) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if c != 1 || m.degree() == 0 {
        parts.push(c.to_string());
    }
    for i in 0..nvars {
        match m.0[i] {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            e => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_term(f, self.nvars, m, *c)?;
        }
        Ok(())
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.parse::<u32>().map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

impl Poly {
    pub fn parse(s: &str, field: &Gf, nvars: usize) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero(field, nvars);
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let mut coeff = 1;
            let mut mono = Monomial::ONE;
            for factor in term.split('*').map(str::trim) {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (parse_u32(i, "variable index")?, parse_u32(e, "exponent")?),
                        None => (parse_u32(rest, "variable index")?, 1),
                    };
                    if idx == 0 || idx as usize > nvars {
                        return Err(Error::Parse(format!("variable x{idx} outside x1..x{nvars}")));
                    }
                    mono.0[idx as usize - 1] += exp;
                } else {
                    let c = parse_u32(factor, "coefficient")?;
                    if c >= field.q() {
                        return Err(Error::Parse(format!("coefficient {c} is not a code of F_{}", field.q())));
                    }
                    coeff = field.mul(coeff, c);
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}
