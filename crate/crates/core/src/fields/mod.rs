//! Exact coefficient fields: prime and extension fields GF(p^k) and the
//! rationals.
//!
//! Algorithms elsewhere in the crate are generic over the [`Field`] trait.
//! A field value is a cheap, immutable handle; elements are plain values and
//! every operation goes through the field handle, so a polynomial or point
//! never needs to carry more than its coefficients.

mod element;
mod finite;
mod rational;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use element::{arith, frobenius, sqrt_char2, AnyField, ArithOp, FieldElement};
pub use finite::{field_make, Embedding, FiniteField, Gf, MAX_FIELD_SIZE};
pub use rational::Rationals;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("composite characteristic {0}")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({p}^{k}) exceeds the supported size {max}")]
    TooLarge { p: u64, k: u32, max: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    MismatchedParents(String, String),
    #[error("Frobenius undefined over {0}")]
    FrobeniusUndefined(String),
    #[error("unique square root only in characteristic 2")]
    SqrtNotChar2,
    #[error("cannot embed {0} into {1}")]
    NoEmbedding(String, String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical map Z -> field.
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Inverse Frobenius `a^(1/p)`; `None` in characteristic 0.
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Some square root of `a` if one exists in the field. In characteristic 2
    /// it is the unique one.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Spec string, `GF(p^k)` or `QQ`.
    fn spec(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
