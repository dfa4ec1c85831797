//! Dense univariate polynomials as little-endian coefficient vectors.

use crate::fields::{Field, FiniteField, Gf};

pub fn trim<F: Field>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(field, out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let nb: Vec<F::Elem> = b.iter().map(|c| field.neg(c)).collect();
    add(field, a, &nb)
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, out)
}

pub fn scale<F: Field>(field: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn monic<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        Some(lc) => scale(field, a, &field.inv(lc).expect("trimmed polynomial")),
        None => Vec::new(),
    }
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lc_inv = field.inv(&b[db]).expect("trimmed polynomial");
    let mut r = trim(field, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = field.mul(&r[dr], &lc_inv);
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = field.sub(&r[shift + j], &field.mul(&c, y));
        }
        q[shift] = c;
        r = trim(field, r);
    }
    (trim(field, q), r)
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    div_rem(field, a, b).1
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(field, a.to_vec());
    let mut b = trim(field, b.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

pub fn derivative<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    trim(field, out)
}

pub fn eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

pub fn powmod<F: Field>(field: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut base = rem(field, base, m);
    let mut acc = rem(field, &[field.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &base), m);
        }
        e >>= 1;
        if e > 0 {
            base = rem(field, &mul(field, &base, &base), m);
        }
    }
    acc
}

/// `X^(p^k) mod m` by k successive p-th powers.
pub fn x_pow_frobenius<F: Field>(field: &F, k: u32, m: &[F::Elem]) -> Vec<F::Elem> {
    let p = field.characteristic();
    let mut h = rem(field, &[field.zero(), field.one()], m);
    for _ in 0..k {
        h = powmod(field, &h, p, m);
    }
    h
}

/// Coefficientwise p-th root of a polynomial in `X^p`.
pub fn pth_root_poly<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let p = field.characteristic() as usize;
    let out = a
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c).expect("perfect field"))
        .collect();
    trim(field, out)
}

/// Squarefree factorization of a monic polynomial over a perfect field:
/// pairs `(factor, multiplicity)` with pairwise coprime squarefree monic
/// factors, sorted by multiplicity.
pub fn squarefree_univariate<F: Field>(field: &F, f: &[F::Elem]) -> Vec<(Vec<F::Elem>, u32)> {
    let mut out = Vec::new();
    sff_into(field, f, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sff_into<F: Field>(field: &F, f: &[F::Elem], scale_mult: u32, out: &mut Vec<(Vec<F::Elem>, u32)>) {
    if degree(f).unwrap_or(0) == 0 {
        return;
    }
    let df = derivative(field, f);
    let mut c = gcd(field, f, &df);
    let mut w = div_rem(field, f, &c).0;
    let mut i = 1u32;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(field, &w, &c);
        let fac = div_rem(field, &w, &y).0;
        if degree(&fac).unwrap_or(0) > 0 {
            out.push((monic(field, &fac), i * scale_mult));
        }
        c = div_rem(field, &c, &y).0;
        w = y;
        i += 1;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let p = field.characteristic() as u32;
        assert!(p > 0, "leftover factor in characteristic 0");
        let root = pth_root_poly(field, &c);
        sff_into(field, &monic(field, &root), scale_mult * p, out);
    }
}

/// True if `f` has a root in `field`.
pub fn has_root(field: &FiniteField, f: &[Gf]) -> bool {
    let f = trim(field, f.to_vec());
    match degree(&f) {
        None => true,
        Some(0) => false,
        Some(1) => true,
        Some(_) => degree(&rational_part(field, &f)).unwrap_or(0) > 0,
    }
}

/// gcd(f, X^q - X): the product of the distinct linear factors of f.
fn rational_part(field: &FiniteField, f: &[Gf]) -> Vec<Gf> {
    let xq = x_pow_frobenius(field, field.degree(), f);
    let xq_minus_x = sub(field, &xq, &[Gf::ZERO, Gf::ONE]);
    gcd(field, f, &xq_minus_x)
}

/// Distinct roots of `f` in `field`, in increasing canonical order. The zero
/// polynomial is reported as having every element as a root.
pub fn roots(field: &FiniteField, f: &[Gf]) -> Vec<Gf> {
    let f = trim(field, f.to_vec());
    if f.is_empty() {
        return field.elements().collect();
    }
    if field.size() <= 64 {
        return field.elements().filter(|x| eval(field, &f, x).index() == 0).collect();
    }
    let g = rational_part(field, &monic(field, &f));
    let mut out = Vec::new();
    split_linear(field, &g, &mut out);
    out.sort();
    out
}

/// Splits a monic product of distinct linear factors.
fn split_linear(field: &FiniteField, g: &[Gf], out: &mut Vec<Gf>) {
    match degree(g) {
        None | Some(0) => return,
        Some(1) => {
            out.push(field.neg(&g[0]));
            return;
        }
        _ => {}
    }
    let q = field.size() as u64;
    for delta in field.elements().skip(1) {
        let h = if field.p() == 2 {
            // Tr(delta X) = sum_{i<k} (delta X)^(2^i) mod g
            let mut term = rem(field, &[Gf::ZERO, delta], g);
            let mut acc = term.clone();
            for _ in 1..field.degree() {
                term = rem(field, &mul(field, &term, &term), g);
                acc = add(field, &acc, &term);
            }
            acc
        } else {
            let pw = powmod(field, &[delta, Gf::ONE], (q - 1) / 2, g);
            sub(field, &pw, &[Gf::ONE])
        };
        let d = gcd(field, g, &h);
        let dd = degree(&d).unwrap_or(0);
        if dd > 0 && dd < degree(g).unwrap() {
            let other = div_rem(field, g, &d).0;
            split_linear(field, &d, out);
            split_linear(field, &monic(field, &other), out);
            return;
        }
    }
    unreachable!("equal-degree splitting failed for every shift");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{field_make, Rationals};
    use proptest::prelude::*;

    #[test]
    fn gcd_and_division() {
        let f = field_make(5, 1).unwrap();
        let e = |v: &[i64]| v.iter().map(|&c| f.from_i64(c)).collect::<Vec<_>>();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&f, &e(&[-1, 1]), &e(&[-2, 1]));
        let b = mul(&f, &e(&[-1, 1]), &e(&[-3, 1]));
        assert_eq!(gcd(&f, &a, &b), e(&[-1, 1]));
        let (q, r) = div_rem(&f, &a, &e(&[-1, 1]));
        assert_eq!(q, e(&[-2, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn squarefree_in_char_two() {
        let f = field_make(2, 1).unwrap();
        // x^2 (x+1)^3 = x^5 + x^4 + x^3 + x^2
        let poly: Vec<Gf> = [0, 0, 1, 1, 1, 1].iter().map(|&c| f.from_i64(c)).collect();
        let sff = squarefree_univariate(&f, &poly);
        assert_eq!(sff, vec![(vec![Gf::ZERO, Gf::ONE], 2), (vec![Gf::ONE, Gf::ONE], 3)]);
    }

    #[test]
    fn roots_large_field() {
        let f = field_make(2, 10).unwrap();
        let rs = [f.elem(3), f.elem(77), f.elem(500)];
        let mut poly = vec![Gf::ONE];
        for r in &rs {
            poly = mul(&f, &poly, &[*r, Gf::ONE]);
        }
        // x^2+x+1 splits as GF(4) sits inside GF(2^10)
        poly = mul(&f, &poly, &[Gf::ONE, Gf::ONE, Gf::ONE]);
        let found = roots(&f, &poly);
        let brute: Vec<Gf> = f.elements().filter(|x| eval(&f, &poly, x).index() == 0).collect();
        assert_eq!(found, brute);
        assert_eq!(found.len(), 5);
    }

    #[test]
    fn roots_odd_characteristic() {
        let f = field_make(3, 5).unwrap();
        let poly = mul(&f, &[f.elem(10), Gf::ONE], &[f.elem(100), Gf::ONE]);
        let poly = mul(&f, &poly, &[Gf::ONE, Gf::ZERO, Gf::ONE]);
        let brute: Vec<Gf> = f.elements().filter(|x| eval(&f, &poly, x).index() == 0).collect();
        assert_eq!(roots(&f, &poly), brute);
    }

    proptest! {
        #[test]
        fn sff_multiplies_back(k in 1u32..4, coeffs in prop::collection::vec(0u32..64, 1..4), mults in prop::collection::vec(1u32..5, 1..4)) {
            let f = field_make(2, k).unwrap();
            let mut poly = vec![Gf::ONE];
            for (c, m) in coeffs.iter().zip(&mults) {
                for _ in 0..*m {
                    poly = mul(&f, &poly, &[f.elem(c % f.size()), Gf::ONE]);
                }
            }
            let sff = squarefree_univariate(&f, &poly);
            let mut back = vec![Gf::ONE];
            for (fac, m) in &sff {
                for _ in 0..*m {
                    back = mul(&f, &back, fac);
                }
                prop_assert_eq!(gcd(&f, fac, &derivative(&f, fac)).len(), 1);
            }
            prop_assert_eq!(back, poly);
        }

        #[test]
        fn sff_rationals(a in -5i64..5, b in -5i64..5, m in 1u32..4) {
            let q = Rationals;
            let lin = |r: i64| vec![q.from_i64(-r), q.one()];
            let mut poly = vec![q.one()];
            for _ in 0..m { poly = mul(&q, &poly, &lin(a)); }
            poly = mul(&q, &poly, &lin(b));
            let sff = squarefree_univariate(&q, &poly);
            let total: u32 = sff.iter().map(|(f, m)| degree(f).unwrap() as u32 * m).sum();
            prop_assert_eq!(total, m + 1);
        }
    }
}
