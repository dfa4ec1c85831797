//! Dynamically typed field elements, for callers (CLI, config files) that
//! pick the field at run time.

use std::fmt;

use num_rational::BigRational;

use super::{field_make, Field, FieldError, FiniteField, Gf, Rationals};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyField {
    Finite(FiniteField),
    Rationals,
}

impl AnyField {
    /// Parses `GF(p^k)`, `GF(p)` or `QQ`.
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let err = || FieldError::Parse { what: "field spec", input: spec.to_string() };
        let s = spec.trim();
        if s == "QQ" || s == "Q" {
            return Ok(AnyField::Rationals);
        }
        let body = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (p, k) = match body.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim()),
            None => (body.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| err())?;
        let k: u32 = k.parse().map_err(|_| err())?;
        Ok(AnyField::Finite(field_make(p, k)?))
    }

    pub fn spec(&self) -> String {
        match self {
            AnyField::Finite(f) => f.spec(),
            AnyField::Rationals => Rationals.spec(),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElement, FieldError> {
        Ok(match self {
            AnyField::Finite(f) => FieldElement::Finite(f.clone(), f.parse_elem(s)?),
            AnyField::Rationals => FieldElement::Rational(Rationals.parse_elem(s)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Finite(FiniteField, Gf),
    Rational(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn parent(&self) -> AnyField {
        match self {
            FieldElement::Finite(f, _) => AnyField::Finite(f.clone()),
            FieldElement::Rational(_) => AnyField::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Finite(_, a) => a.index() == 0,
            FieldElement::Rational(q) => Rationals.is_zero(q),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Finite(field, a) => f.write_str(&field.format_elem(a)),
            FieldElement::Rational(q) => f.write_str(&Rationals.format_elem(q)),
        }
    }
}

fn apply<F: Field>(field: &F, a: &F::Elem, b: &F::Elem, op: ArithOp) -> Result<F::Elem, FieldError> {
    Ok(match op {
        ArithOp::Add => field.add(a, b),
        ArithOp::Sub => field.sub(a, b),
        ArithOp::Mul => field.mul(a, b),
        ArithOp::Div => field.div(a, b).ok_or(FieldError::DivisionByZero)?,
    })
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match (a, b) {
        (FieldElement::Finite(fa, x), FieldElement::Finite(fb, y)) if fa == fb => {
            Ok(FieldElement::Finite(fa.clone(), apply(fa, x, y, op)?))
        }
        (FieldElement::Rational(x), FieldElement::Rational(y)) => {
            Ok(FieldElement::Rational(apply(&Rationals, x, y, op)?))
        }
        _ => Err(FieldError::MismatchedParents(a.parent().spec(), b.parent().spec())),
    }
}

/// `a^(p^e)`; negative `e` gives iterated p-th roots.
pub fn frobenius(a: &FieldElement, e: i64) -> Result<FieldElement, FieldError> {
    match a {
        FieldElement::Finite(f, x) => Ok(FieldElement::Finite(f.clone(), f.frobenius(*x, e))),
        FieldElement::Rational(_) => Err(FieldError::FrobeniusUndefined("QQ".into())),
    }
}

/// The unique square root in GF(2^k), `a^(2^(k-1))`.
pub fn sqrt_char2(a: &FieldElement) -> Result<FieldElement, FieldError> {
    match a {
        FieldElement::Finite(f, x) if f.p() == 2 => {
            Ok(FieldElement::Finite(f.clone(), f.frobenius(*x, f.degree() as i64 - 1)))
        }
        _ => Err(FieldError::SqrtNotChar2),
    }
}
