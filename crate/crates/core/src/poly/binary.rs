use std::fmt;

use super::{uni, PolyError};
use crate::fields::Field;

/// Binary form of degree `d`; `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Clone, PartialEq)]
pub struct BinaryForm<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| self.field.format_elem(c)).collect();
        write!(f, "BinaryForm[{}]", parts.join(", "))
    }
}

impl<F: Field> BinaryForm<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F, degree: usize) -> Self {
        Self::new(field, vec![field.zero(); degree + 1])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn eval(&self, s: &F::Elem, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        let d = self.degree() as u64;
        self.coeffs.iter().enumerate().fold(f.zero(), |acc, (i, c)| {
            let term = f.mul(c, &f.mul(&f.pow(s, d - i as u64), &f.pow(t, i as u64)));
            f.add(&acc, &term)
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        Self::new(f, out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::new(&self.field, vec![self.field.one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading coefficients normalized so the first nonzero one is 1.
    fn normalized(&self) -> (Self, F::Elem) {
        let f = &self.field;
        let lead = self.coeffs.iter().find(|c| !f.is_zero(c)).cloned().unwrap_or_else(|| f.one());
        let inv = f.inv(&lead).expect("nonzero");
        (self.scale(&inv), lead)
    }

    /// Multiplicity of the root `(a:b)`; `None` for the zero form.
    pub fn multiplicity_at(&self, a: &F::Elem, b: &F::Elem) -> Option<u32> {
        let sff = squarefree_decomposition(self).ok()?;
        Some(
            sff.factors
                .iter()
                .find(|(g, _)| self.field.is_zero(&g.eval(a, b)))
                .map_or(0, |(_, m)| *m),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition<F: Field> {
    pub unit: F::Elem,
    /// Pairwise coprime squarefree factors, first nonzero coefficient 1,
    /// sorted by multiplicity.
    pub factors: Vec<(BinaryForm<F>, u32)>,
}

impl<F: Field> SquarefreeDecomposition<F> {
    pub fn product(&self, field: &F) -> BinaryForm<F> {
        let mut acc = BinaryForm::new(field, vec![self.unit.clone()]);
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    /// Root multiplicities over the algebraic closure, largest first.
    pub fn signature(&self) -> Vec<u32> {
        let mut sig: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(*m).take(g.degree()))
            .collect();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        sig
    }
}

pub fn squarefree_decomposition<F: Field>(form: &BinaryForm<F>) -> Result<SquarefreeDecomposition<F>, PolyError> {
    let field = form.field();
    let d = form.degree();
    let coeffs = form.coeffs();
    let m = coeffs.iter().position(|c| !field.is_zero(c)).ok_or(PolyError::ZeroInput)?;
    // dehomogenize at t = 1: g(s) = sum coeffs[i] s^(d-i), degree d - m
    let g: Vec<F::Elem> = (0..=d - m).map(|j| coeffs[d - j].clone()).collect();
    let unit = g[d - m].clone();
    let monic = uni::monic(field, &g);
    let mut factors: Vec<(BinaryForm<F>, u32)> = uni::squarefree_univariate(field, &monic)
        .into_iter()
        .map(|(u, mult)| {
            let e = u.len() - 1;
            (BinaryForm::new(field, (0..=e).map(|i| u[e - i].clone()).collect()), mult)
        })
        .collect();
    if m > 0 {
        let t = BinaryForm::new(field, vec![field.zero(), field.one()]);
        match factors.iter_mut().find(|(_, mult)| *mult as usize == m) {
            Some(entry) => entry.0 = entry.0.mul(&t),
            None => factors.push((t, m as u32)),
        }
    }
    for entry in factors.iter_mut() {
        entry.0 = entry.0.normalized().0;
    }
    factors.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
    Ok(SquarefreeDecomposition { unit, factors })
}

/// `Some(r)` with `r^2 = f` over the coefficient field, else `None`.
pub fn is_square_form<F: Field>(f: &BinaryForm<F>) -> Option<BinaryForm<F>> {
    let field = f.field();
    if f.degree() % 2 == 1 {
        return None;
    }
    if f.is_zero() {
        return Some(BinaryForm::zero(field, f.degree() / 2));
    }
    if field.characteristic() == 2 {
        let mut root = Vec::with_capacity(f.degree() / 2 + 1);
        for (i, c) in f.coeffs().iter().enumerate() {
            if i % 2 == 1 {
                if !field.is_zero(c) {
                    return None;
                }
            } else {
                root.push(field.sqrt(c)?);
            }
        }
        return Some(BinaryForm::new(field, root));
    }
    let sff = squarefree_decomposition(f).ok()?;
    if sff.factors.iter().any(|(_, m)| m % 2 == 1) {
        return None;
    }
    let mut root = BinaryForm::new(field, vec![field.sqrt(&sff.unit)?]);
    for (g, m) in &sff.factors {
        root = root.mul(&g.pow(m / 2));
    }
    Some(root)
}
