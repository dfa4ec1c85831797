//! Table-driven arithmetic in GF(p^k).
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! encoding its canonical representative `c_0 + c_1 t + ... ` modulo the
//! field modulus. Multiplication, inversion and Frobenius go through
//! exp/log tables for a primitive element.

use std::fmt;
use std::sync::Arc;

use super::{is_prime, prime_factors, Field, FieldError};

/// Largest field order for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of a [`FiniteField`], in canonical integer encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub(crate) u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    /// Position of the element in the canonical enumeration `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low to high (length k + 1).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds GF(p^k) with the smallest monic irreducible modulus.
pub fn field_make(p: u64, k: u32) -> Result<FiniteField, FieldError> {
    FiniteField::new(p, k)
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let too_large = FieldError::TooLarge { p, k, max: MAX_FIELD_SIZE };
        let q = p.checked_pow(k).ok_or(too_large.clone())?;
        if q > MAX_FIELD_SIZE {
            return Err(too_large);
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = smallest_irreducible(p, k);
        let arith = SlowArith { p, k, modulus: &modulus };
        let g = arith.primitive_element(q);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = arith.mul(x, g);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        if order == 1 {
            exp[1] = 1;
        }
        Ok(FiniteField { inner: Arc::new(Inner { p, k, q, modulus, exp, log }) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elem(&self, index: u32) -> Gf {
        assert!(index < self.inner.q, "element index {index} out of range");
        Gf(index)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.inner.q).map(Gf)
    }

    /// The class of `t` modulo the modulus (equals an integer when k = 1).
    pub fn gen(&self) -> Gf {
        if self.inner.k == 1 {
            let c0 = self.inner.modulus[0];
            Gf((self.inner.p - c0) % self.inner.p)
        } else {
            Gf(self.inner.p)
        }
    }

    /// The primitive element whose powers index the exp table.
    pub fn primitive(&self) -> Gf {
        Gf(self.inner.exp[1 % self.inner.exp.len()])
    }

    /// Coefficients of the canonical representative, low to high, length k.
    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        let mut v = a.0;
        (0..self.inner.k)
            .map(|_| {
                let d = v % self.inner.p;
                v /= self.inner.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Gf, FieldError> {
        if coeffs.len() > self.inner.k as usize {
            return Err(FieldError::Parse {
                what: "element",
                input: format!("{coeffs:?} has more than {} coefficients", self.inner.k),
            });
        }
        let p = self.inner.p as i64;
        let mut enc = 0u32;
        for &c in coeffs.iter().rev() {
            enc = enc * self.inner.p + c.rem_euclid(p) as u32;
        }
        Ok(Gf(enc))
    }

    /// `a^(p^e)`; `e` is taken modulo the extension degree.
    pub fn frobenius(&self, a: Gf, e: i64) -> Gf {
        if a.0 == 0 {
            return a;
        }
        let k = self.inner.k as i64;
        let e = e.rem_euclid(k) as u32;
        let order = (self.inner.q - 1) as u64;
        let mut mult = 1u64;
        for _ in 0..e {
            mult = mult * self.inner.p as u64 % order.max(1);
        }
        let l = self.inner.log[a.0 as usize] as u64;
        Gf(self.inner.exp[((l * mult) % order.max(1)) as usize])
    }

    /// Embedding of this field into `target`, sending `t` to the first root
    /// of the modulus in `target` in canonical enumeration order.
    pub fn embedding_into(&self, target: &FiniteField) -> Result<Embedding, FieldError> {
        if self.p() != target.p() || target.degree() % self.degree() != 0 {
            return Err(FieldError::NoEmbedding(self.spec(), target.spec()));
        }
        let modulus: Vec<Gf> = self.modulus().iter().map(|&c| target.from_i64(c as i64)).collect();
        let root = target
            .elements()
            .find(|x| {
                let mut acc = Gf::ZERO;
                for c in modulus.iter().rev() {
                    acc = target.add(&target.mul(&acc, x), c);
                }
                acc == Gf::ZERO
            })
            .ok_or_else(|| FieldError::NoEmbedding(self.spec(), target.spec()))?;
        let mut powers = Vec::with_capacity(self.degree() as usize);
        let mut x = Gf::ONE;
        for _ in 0..self.degree() {
            powers.push(x);
            x = target.mul(&x, &root);
        }
        Ok(Embedding { source: self.clone(), target: target.clone(), powers })
    }

    fn add_enc(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn neg_enc(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.k == other.inner.k)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl Field for FiniteField {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf::ZERO
    }

    fn one(&self) -> Gf {
        Gf::ONE
    }

    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        Gf(self.add_enc(a.0, b.0))
    }

    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        Gf(self.add_enc(a.0, self.neg_enc(b.0)))
    }

    fn neg(&self, a: &Gf) -> Gf {
        Gf(self.neg_enc(a.0))
    }

    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let inner = &*self.inner;
        Gf(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        Some(Gf(inner.exp[((order - inner.log[a.0 as usize]) % order) as usize]))
    }

    fn from_i64(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.inner.p as i64) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }

    fn pth_root(&self, a: &Gf) -> Option<Gf> {
        Some(self.frobenius(*a, -1))
    }

    fn sqrt(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return Some(*a);
        }
        if self.inner.p == 2 {
            return Some(self.frobenius(*a, -1));
        }
        let l = self.inner.log[a.0 as usize];
        (l % 2 == 0).then(|| Gf(self.inner.exp[(l / 2) as usize]))
    }

    fn format_elem(&self, a: &Gf) -> String {
        let parts: Vec<String> = self.coeffs(*a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn parse_elem(&self, s: &str) -> Result<Gf, FieldError> {
        let err = || FieldError::Parse { what: "finite field element", input: s.to_string() };
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = body
                .split(',')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(|c| c.parse::<i64>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            return self.from_coeffs(&coeffs);
        }
        s.parse::<i64>().map(|n| self.from_i64(n)).map_err(|_| err())
    }

    fn spec(&self) -> String {
        if self.inner.k == 1 {
            format!("GF({})", self.inner.p)
        } else {
            format!("GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

/// A field homomorphism GF(p^k) -> GF(p^m), k | m.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    powers: Vec<Gf>,
}

impl Embedding {
    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn map(&self, a: Gf) -> Gf {
        let coeffs = self.source.coeffs(a);
        let mut acc = Gf::ZERO;
        for (c, pw) in coeffs.iter().zip(&self.powers) {
            if *c != 0 {
                let c = self.target.from_i64(*c as i64);
                acc = self.target.add(&acc, &self.target.mul(&c, pw));
            }
        }
        acc
    }
}

/// Polynomial arithmetic on encoded elements, used only while building the
/// tables.
struct SlowArith<'a> {
    p: u32,
    k: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn decode(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..self.k {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let modbits: u64 =
                self.modulus.iter().enumerate().fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
            for i in (self.k..2 * self.k).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= modbits << (i - self.k);
                }
            }
            return prod as u32;
        }
        let p = self.p as u64;
        let (da, db) = (self.decode(a), self.decode(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c != 0 {
                for j in 0..=k {
                    let idx = i - k + j;
                    prod[idx] = (prod[idx] + p * p - c * self.modulus[j] as u64) % p;
                }
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
        self.encode(&digits)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn primitive_element(&self, q: u32) -> u32 {
        let order = (q - 1) as u64;
        if order == 1 {
            return 1;
        }
        let factors = prime_factors(order);
        (2..q)
            .find(|&g| factors.iter().all(|&r| self.pow(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Smallest monic irreducible of degree k over GF(p), ordering coefficient
/// vectors lexicographically from the x^(k-1) coefficient down to the
/// constant term.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for n in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut v = n;
        for _ in 0..k {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin's test: f (monic, degree k) is irreducible iff X^(p^k) = X mod f and
/// gcd(X^(p^(k/r)) - X, f) = 1 for every prime r | k.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let p64 = p as u64;
    let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let x = zp::reduce(&[0, 1], &f, p64);
    let mut frob = vec![x.clone()];
    let mut h = x.clone();
    for _ in 0..k {
        h = zp::powmod(&h, p64, &f, p64);
        frob.push(h.clone());
    }
    if frob[k] != x {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let h = &frob[k / r as usize];
        let diff = zp::sub(h, &x, p64);
        zp::degree(&zp::gcd(&diff, &f, p64)) == Some(0)
    })
}

/// Dense polynomials over Z/p as little-endian `u64` vectors.
mod zp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn reduce(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = degree(m).expect("nonzero modulus");
        let lc_inv = inv(m[dm], p);
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = r[dr] * lc_inv % p;
            for j in 0..=dm {
                let idx = dr - dm + j;
                r[idx] = (r[idx] + p * p - c * m[j] % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce(&prod, m, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = reduce(a, m, p);
        let mut acc = reduce(&[1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = reduce(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive irreducibility oracle: no monic factor of degree 1..=k/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        let f64: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        for d in 1..=k / 2 {
            for n in 0..(p as u64).pow(d as u32) {
                let mut g: Vec<u64> = (0..d).map(|i| (n / (p as u64).pow(i as u32)) % p as u64).collect();
                g.push(1);
                if zp::reduce(&f64, &g, p as u64).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gf2_modulus_is_t() {
        let f = field_make(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.size(), 2);
    }

    #[test]
    fn gf4_modulus_is_unique_irreducible_quadratic() {
        // Oracle: of the four monic quadratics over GF(2) only t^2+t+1 survives.
        let candidates: Vec<Vec<u32>> =
            vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        let irreducible: Vec<_> =
            candidates.iter().filter(|c| irreducible_by_trial_division(c, 2)).collect();
        assert_eq!(irreducible, vec![&vec![1, 1, 1]]);
        assert_eq!(field_make(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_smallest_in_order() {
        // Enumerate monic quadratics over GF(3) in the fixed order
        // (x coefficient first, then constant) and keep the first irreducible.
        let mut first = None;
        'outer: for c1 in 0..3u32 {
            for c0 in 0..3u32 {
                let f = vec![c0, c1, 1];
                if irreducible_by_trial_division(&f, 3) {
                    first = Some(f);
                    break 'outer;
                }
            }
        }
        assert_eq!(first, Some(vec![1, 0, 1]));
        assert_eq!(field_make(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (p, k) in [(2u32, 2u32), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)] {
            for n in 0..(p as u64).pow(k) {
                let mut f: Vec<u32> = (0..k).map(|i| ((n / (p as u64).pow(i)) % p as u64) as u32).collect();
                f.push(1);
                assert_eq!(is_irreducible(&f, p), irreducible_by_trial_division(&f, p), "{f:?} p={p}");
            }
        }
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(field_make(4, 1).unwrap_err(), FieldError::CompositeCharacteristic(4));
        assert!(field_make(2, 0).is_err());
    }

    #[test]
    fn deterministic_construction() {
        for (p, k) in [(2, 5), (3, 3), (7, 2)] {
            assert_eq!(field_make(p, k).unwrap().modulus(), field_make(p, k).unwrap().modulus());
        }
    }

    #[test]
    fn omega_times_omega_squared_is_one() {
        let f = field_make(2, 2).unwrap();
        let w = f.gen();
        let w2 = f.mul(&w, &w);
        assert_eq!(f.mul(&w, &w2), Gf::ONE);
        assert_eq!(f.add(&Gf::ONE, &Gf::ONE), Gf::ZERO);
        assert_eq!(f.frobenius(w, 1), w2);
        assert_eq!(f.sqrt(&w), Some(w2));
    }

    #[test]
    fn frobenius_has_order_k() {
        let f = field_make(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 3), a);
        }
        assert_eq!(f.frobenius(Gf::ONE, 2), Gf::ONE);
    }

    #[test]
    fn multiplication_agrees_with_slow_arithmetic() {
        for (p, k) in [(2, 4), (3, 2), (5, 2), (2, 7)] {
            let f = field_make(p, k).unwrap();
            let slow = SlowArith { p: p as u32, k, modulus: f.modulus() };
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(&a, &b).0, slow.mul(a.0, b.0));
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = field_make(2, 2).unwrap();
        let big = field_make(2, 6).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.map(small.mul(&a, &b)), big.mul(&e.map(a), &e.map(b)));
                assert_eq!(e.map(small.add(&a, &b)), big.add(&e.map(a), &e.map(b)));
            }
        }
        assert!(small.embedding_into(&field_make(2, 5).unwrap()).is_err());
    }

    #[test]
    fn element_text_roundtrip() {
        let f = field_make(2, 3).unwrap();
        let a = f.parse_elem("[1,0,1]").unwrap();
        assert_eq!(f.coeffs(a), vec![1, 0, 1]);
        assert_eq!(f.format_elem(&a), "[1,0,1]");
        assert_eq!(f.parse_elem("1").unwrap(), Gf::ONE);
        assert!(f.parse_elem("[1,0,1,1]").is_err());
    }
}
