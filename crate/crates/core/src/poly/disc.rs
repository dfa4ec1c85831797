//! Resultants and the universal discriminant of binary forms.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{BinaryForm, Monomial, MultiPoly, PolyError};
use crate::fields::{field_make, Field, FiniteField, Rationals};
use crate::linalg;

pub const MIN_DISC_DEGREE: usize = 2;
pub const MAX_DISC_DEGREE: usize = 6;

/// Sylvester resultant of two nonzero univariate polynomials (coefficients
/// low to high).
pub fn resultant<F: Field>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Result<F::Elem, PolyError> {
    let f = super::uni::trim(field, f.to_vec());
    let g = super::uni::trim(field, g.to_vec());
    if f.is_empty() || g.is_empty() {
        return Err(PolyError::ZeroInput);
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m + n == 0 {
        return Ok(field.one());
    }
    let size = m + n;
    let mut rows = vec![vec![field.zero(); size]; size];
    for r in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            rows[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            rows[n + r][r + j] = c.clone();
        }
    }
    Ok(linalg::determinant(field, rows))
}

fn check_degree(d: usize) -> Result<(), PolyError> {
    if (MIN_DISC_DEGREE..=MAX_DISC_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(PolyError::UnsupportedDegree(d))
    }
}

type IntPoly = BTreeMap<Monomial, i128>;

fn int_add(p: &mut IntPoly, m: Monomial, c: i128) {
    let e = p.entry(m.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        p.remove(&m);
    }
}

/// D(a_0..a_d) = (-1)^(d(d-1)/2) Res(f, df/ds) / a_0 for
/// f = sum a_i s^(d-i) t^i, with integer coefficients.
fn compute_universal(d: usize) -> MultiPoly<Rationals> {
    let nvars = d + 1;
    // Sylvester matrix of f (degree d) and f_s (degree d-1); each entry is
    // an integer times a single variable a_i.
    let size = 2 * d - 1;
    let mut entries: Vec<Vec<Option<(i128, usize)>>> = vec![vec![None; size]; size];
    for r in 0..d - 1 {
        for i in 0..=d {
            entries[r][r + i] = Some((1, i));
        }
    }
    for r in 0..d {
        for i in 0..d {
            entries[d - 1 + r][r + i] = Some(((d - i) as i128, i));
        }
    }
    // Laplace expansion row by row over sets of used columns.
    let mut dp: BTreeMap<u32, IntPoly> = BTreeMap::new();
    dp.insert(0, IntPoly::from([(Monomial::one(nvars), 1)]));
    for row in &entries {
        let mut next: BTreeMap<u32, IntPoly> = BTreeMap::new();
        for (mask, poly) in &dp {
            for (c, entry) in row.iter().enumerate() {
                let Some((coef, var)) = entry else { continue };
                if mask & (1 << c) != 0 {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                let mut unit = vec![0u16; nvars];
                unit[*var] = 1;
                let unit = Monomial::new(&unit);
                let target = next.entry(mask | (1 << c)).or_default();
                for (m, v) in poly {
                    int_add(target, m.mul(&unit), sign * coef * v);
                }
            }
        }
        dp = next;
    }
    let res = dp.into_values().next().unwrap_or_default();
    let sign: i128 = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let q = Rationals;
    MultiPoly::from_terms(
        &q,
        nvars,
        res.into_iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            assert!(exps[0] >= 1, "Res(f, f_s) is divisible by a_0");
            exps[0] -= 1;
            (exps, q.from_i64((sign * c) as i64))
        }),
    )
}

fn universal_cache() -> &'static [OnceLock<MultiPoly<Rationals>>; MAX_DISC_DEGREE + 1] {
    static CACHE: OnceLock<[OnceLock<MultiPoly<Rationals>>; MAX_DISC_DEGREE + 1]> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The universal discriminant of a binary form of degree `d` in the
/// indeterminates `a_0..a_d`, with integer coefficients.
pub fn universal_discriminant(d: usize) -> Result<MultiPoly<Rationals>, PolyError> {
    check_degree(d)?;
    Ok(universal_cache()[d].get_or_init(|| compute_universal(d)).clone())
}

fn gf2() -> FiniteField {
    field_make(2, 1).expect("GF(2)")
}

/// Reduction of an integer-coefficient polynomial modulo p into `field`.
pub fn reduce_integer_poly<F: Field>(p: &MultiPoly<Rationals>, field: &F) -> MultiPoly<F> {
    p.map_coeffs(field, |c| {
        assert!(c.is_integer(), "integer coefficients expected");
        let ch = field.characteristic();
        let n: BigInt = if ch == 0 { c.numer().clone() } else { c.numer() % BigInt::from(ch) };
        field.from_i64(n.to_i64().expect("coefficient fits in i64"))
    })
}

/// The universal discriminant reduced modulo 2.
pub fn universal_discriminant_mod2(d: usize) -> Result<MultiPoly<FiniteField>, PolyError> {
    Ok(reduce_integer_poly(&universal_discriminant(d)?, &gf2()))
}

/// The polynomial P over GF(2) with P^2 = universal discriminant mod 2,
/// obtained by halving exponents.
pub fn disc_sqrt_char2(d: usize) -> Result<MultiPoly<FiniteField>, PolyError> {
    let disc = universal_discriminant_mod2(d)?;
    for (m, _) in disc.terms() {
        if m.exps().iter().any(|e| e % 2 == 1) {
            return Err(PolyError::OddExponent(format!("{:?}", m.exps())));
        }
    }
    Ok(disc.sqrt().expect("all exponents even and coefficients in GF(2)"))
}

/// Discriminant of a concrete binary form, through the universal polynomial
/// (reduced modulo the characteristic).
pub fn discriminant<F: Field>(form: &BinaryForm<F>) -> Result<F::Elem, PolyError> {
    let field = form.field();
    let universal = universal_discriminant(form.degree())?;
    Ok(reduce_integer_poly(&universal, field).eval(form.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, squarefree_decomposition};
    use proptest::prelude::*;

    #[test]
    fn resultant_examples() {
        let q = Rationals;
        let lin = |r: i64| vec![q.from_i64(-r), q.one()];
        assert_eq!(resultant(&q, &lin(5), &lin(2)).unwrap(), q.from_i64(3));
        assert_eq!(resultant(&q, &lin(5), &lin(5)).unwrap(), q.zero());
        let a = vec![q.one(), q.zero(), q.one()];
        let b = vec![q.from_i64(-1), q.zero(), q.one()];
        // roots ±i against ±1: product of differences is 4
        assert_eq!(resultant(&q, &a, &b).unwrap(), q.from_i64(4));
        assert_eq!(resultant(&q, &[], &b), Err(PolyError::ZeroInput));
    }

    #[test]
    fn quadratic_and_cubic_discriminants() {
        let q = Rationals;
        assert_eq!(universal_discriminant(2).unwrap(), parse_poly(&q, 3, "x1^2 + -4*x0*x2").unwrap());
        let cubic = parse_poly(
            &q,
            4,
            "18*x0*x1*x2*x3 + -4*x1^3*x3 + x1^2*x2^2 + -4*x0*x2^3 + -27*x0^2*x3^2",
        )
        .unwrap();
        assert_eq!(universal_discriminant(3).unwrap(), cubic);
        assert_eq!(universal_discriminant_mod2(2).unwrap(), parse_poly(&gf2(), 3, "x1^2").unwrap());
        assert_eq!(disc_sqrt_char2(2).unwrap(), parse_poly(&gf2(), 3, "x1").unwrap());
        assert_eq!(universal_discriminant(7).unwrap_err(), PolyError::UnsupportedDegree(7));
        assert_eq!(universal_discriminant(1).unwrap_err(), PolyError::UnsupportedDegree(1));
    }

    #[test]
    fn degrees_and_weights() {
        for d in 2..=MAX_DISC_DEGREE {
            let disc = universal_discriminant(d).unwrap();
            assert_eq!(disc.homogeneous_degree(), Some(2 * (d as u32 - 1)));
            // isobaric: sum of i * e_i is d(d-1) for every term
            for (m, _) in disc.terms() {
                let w: u32 = m.exps().iter().enumerate().map(|(i, &e)| i as u32 * e as u32).sum();
                assert_eq!(w, (d * (d - 1)) as u32);
            }
            let p = disc_sqrt_char2(d).unwrap();
            assert_eq!(p.homogeneous_degree(), Some(d as u32 - 1));
            assert_eq!(p.mul(&p), universal_discriminant_mod2(d).unwrap());
        }
    }

    fn has_repeated_root<F: Field>(form: &BinaryForm<F>) -> bool {
        squarefree_decomposition(form).unwrap().factors.iter().any(|(_, m)| *m >= 2)
    }

    proptest! {
        #[test]
        fn discriminant_detects_repeated_roots_gf2k(d in 2usize..=6, k in 1u32..=4, raw in prop::collection::vec(0u32..16, 7)) {
            let f = field_make(2, k).unwrap();
            let form = BinaryForm::new(&f, raw[..=d].iter().map(|&c| f.elem(c % f.size())).collect());
            prop_assume!(!form.is_zero());
            let disc = discriminant(&form).unwrap();
            prop_assert_eq!(f.is_zero(&disc), has_repeated_root(&form));
        }

        #[test]
        fn discriminant_detects_repeated_roots_rationals(d in 2usize..=5, raw in prop::collection::vec(-3i64..=3, 6)) {
            let q = Rationals;
            let form = BinaryForm::new(&q, raw[..=d].iter().map(|&c| q.from_i64(c)).collect());
            prop_assume!(!form.is_zero());
            let disc = discriminant(&form).unwrap();
            prop_assert_eq!(q.is_zero(&disc), has_repeated_root(&form));
        }

        #[test]
        fn resultant_vanishes_iff_common_root(a in prop::collection::vec(0u32..8, 1..4), b in prop::collection::vec(0u32..8, 1..4)) {
            let f = field_make(2, 3).unwrap();
            let mut pa = vec![f.one()];
            for &r in &a { pa = crate::poly::uni::mul(&f, &pa, &[f.elem(r), f.one()]); }
            let mut pb = vec![f.one()];
            for &r in &b { pb = crate::poly::uni::mul(&f, &pb, &[f.elem(r), f.one()]); }
            let common = a.iter().any(|x| b.contains(x));
            prop_assert_eq!(f.is_zero(&resultant(&f, &pa, &pb).unwrap()), common);
        }
    }
}
