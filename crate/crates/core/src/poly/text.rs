//! Text form of polynomials: terms `coeff*x0^e0*x1^e1...` joined by ` + `,
//! leading term first. A coefficient of one is omitted on nonconstant terms
//! and exponents of one are omitted.

use super::{MultiPoly, PolyError};
use crate::fields::Field;

impl<F: Field> MultiPoly<F> {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.field();
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                let constant = m.degree() == 0;
                if constant || !field.is_one(c) {
                    factors.push(field.format_elem(c));
                }
                for (i, &e) in m.exps().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{i}")),
                        _ => factors.push(format!("x{i}^{e}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Variable index for `x<i>`, or the aliases `x,y,z,w` (and `s,t`).
fn var_index(name: &str, nvars: usize) -> Option<usize> {
    if let Some(rest) = name.strip_prefix('x') {
        if !rest.is_empty() {
            return rest.parse::<usize>().ok().filter(|&i| i < nvars);
        }
    }
    let alias = match name {
        "x" | "s" => 0,
        "y" | "t" => 1,
        "z" => 2,
        "w" => 3,
        _ => return None,
    };
    (alias < nvars).then_some(alias)
}

/// Splits on `sep` outside square brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_poly<F: Field>(field: &F, nvars: usize, input: &str) -> Result<MultiPoly<F>, PolyError> {
    let err = |msg: &str| PolyError::Parse(format!("{msg} in {input:?}"));
    let mut out = MultiPoly::zero(field, nvars);
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(err("empty input"));
    }
    for raw_term in split_top(trimmed, '+') {
        let mut term = raw_term.trim();
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coeff = field.one();
        if let Some(rest) = term.strip_prefix('-') {
            if !rest.starts_with(|c: char| c.is_ascii_digit()) {
                coeff = field.neg(&coeff);
                term = rest.trim_start();
            }
        }
        let mut exps = vec![0u16; nvars];
        for factor in split_top(term, '*') {
            let factor = factor.trim();
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) => {
                    let e: u16 = e.trim().parse().map_err(|_| err("bad exponent"))?;
                    (b.trim(), e)
                }
                _ => (factor, 1),
            };
            if let Some(i) = var_index(base, nvars) {
                exps[i] += exp;
            } else {
                let c = field.parse_elem(base).map_err(|e| err(&e.to_string()))?;
                coeff = field.mul(&coeff, &field.pow(&c, exp as u64));
            }
        }
        out = out.add(&MultiPoly::monomial(field, &exps, coeff));
    }
    Ok(out)
}
