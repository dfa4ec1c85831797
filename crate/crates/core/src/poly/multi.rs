use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::{BinaryForm, PolyError};
use crate::fields::Field;

/// Exponent vector. Ordered graded-lexicographically with x0 > x1 > ...
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) SmallVec<[u16; 8]>);

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial in `nvars` variables over `F`. Terms are kept in a map
/// sorted by the monomial order, so the leading term is the last entry.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, &vec![0; nvars], c)
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut exps = vec![0u16; nvars];
        exps[i] = 1;
        Self::monomial(field, &exps, field.one())
    }

    /// All `nvars` variables, in order.
    pub fn vars(field: &F, nvars: usize) -> Vec<Self> {
        (0..nvars).map(|i| Self::var(field, nvars, i)).collect()
    }

    pub fn monomial(field: &F, exps: &[u16], c: F::Elem) -> Self {
        let mut p = Self::zero(field, exps.len());
        if !field.is_zero(&c) {
            p.terms.insert(Monomial::new(exps), c);
        }
        p
    }

    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, F::Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector has wrong length");
            p.add_term(Monomial::new(&exps), &c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, exps: &[u16]) -> F::Elem {
        self.terms.get(&Monomial::new(exps)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, or `None` for the zero polynomial or an
    /// inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field.spec(), other.field.spec()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("MultiPoly::add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.mul(m), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("MultiPoly::mul");
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let field = &self.field;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Evaluates every variable except `var`, returning the coefficients
    /// (low to high) of the resulting univariate polynomial in `var`.
    pub fn eval_except(&self, var: usize, point: &[F::Elem]) -> Vec<F::Elem> {
        let field = &self.field;
        let deg = self.terms.keys().map(|m| m.exps()[var] as usize).max().unwrap_or(0);
        let mut out = vec![field.zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, (x, &e)) in point.iter().zip(m.exps()).enumerate() {
                if i != var && e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            let slot = &mut out[m.exps()[var] as usize];
            *slot = field.add(slot, &t);
        }
        super::uni::trim(field, out)
    }

    /// Composes with `images`, one polynomial per variable; all images share
    /// a field and a variable count, which becomes that of the result.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for im in images {
            first.check_compatible(im)?;
        }
        if first.field != self.field {
            return Err(PolyError::FieldMismatch(self.field.spec(), first.field.spec()));
        }
        let mut powers: Vec<Vec<MultiPoly<F>>> = Vec::with_capacity(self.nvars);
        for (i, im) in images.iter().enumerate() {
            let maxe = self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0);
            let mut pw = vec![MultiPoly::one(&self.field, first.nvars)];
            for e in 1..=maxe as usize {
                let next = pw[e - 1].mul(im);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = MultiPoly::zero(&self.field, first.nvars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, first.nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            for (k, v) in t.terms {
                out.add_term(k, &v);
            }
        }
        Ok(out)
    }

    /// Like [`substitute`](Self::substitute), additionally requiring the
    /// images to be homogeneous of one common degree.
    pub fn substitute_homogeneous(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, PolyError> {
        let mut degree = None;
        for im in images.iter().filter(|p| !p.is_zero()) {
            let d = im.homogeneous_degree().ok_or(PolyError::Inhomogeneous)?;
            if *degree.get_or_insert(d) != d {
                return Err(PolyError::Inhomogeneous);
            }
        }
        self.substitute(images)
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            let c = self.field.mul(c, &self.field.from_i64(e as i64));
            out.add_term(Monomial(exps), &c);
        }
        out
    }

    pub fn partials(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Leading-term division by a single divisor: `self = q*g + r` with no
    /// term of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.check_compatible(g)?;
        let (lm, lc) = g.leading_term().ok_or(PolyError::ZeroDivisor)?;
        let lc_inv = self.field.inv(lc).expect("nonzero leading coefficient");
        let mut p = self.clone();
        let mut q = Self::zero(&self.field, self.nvars);
        let mut r = Self::zero(&self.field, self.nvars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = self.field.mul(&c, &lc_inv);
                let neg = self.field.neg(&qc);
                for (gm, gc) in &g.terms {
                    p.add_term(gm.mul(&qm), &self.field.mul(gc, &neg));
                }
                q.add_term(qm, &qc);
            } else {
                p.terms.remove(&m);
                r.terms.insert(m, c);
            }
        }
        Ok((q, r))
    }

    pub fn reduce_mod(&self, g: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(g)?.1)
    }

    /// `Some(q)` with `self = q*g`, or `None` if `g` does not divide `self`.
    pub fn divide_exact(&self, g: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(g)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.nvars);
        };
        let mut mins = first.0.clone();
        for m in it {
            for (a, &b) in mins.iter_mut().zip(m.exps()) {
                *a = (*a).min(b);
            }
        }
        Monomial(mins)
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (k, c) in &self.terms {
            assert!(m.divides(k), "monomial does not divide every term");
            out.terms.insert(m.quotient_of(k), c.clone());
        }
        out
    }

    /// Square root `r` with `r^2 = self`, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let field = &self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        if field.characteristic() == 2 {
            let mut out = Self::zero(field, self.nvars);
            for (m, c) in &self.terms {
                if m.exps().iter().any(|e| e % 2 == 1) {
                    return None;
                }
                let half = Monomial(m.0.iter().map(|e| e / 2).collect());
                out.terms.insert(half, field.sqrt(c)?);
            }
            return Some(out);
        }
        // Build the root term by term from the top: each new term is
        // lt(remainder) / (2 lt(root)).
        let (lm, lc) = self.leading_term()?;
        if lm.exps().iter().any(|e| e % 2 == 1) {
            return None;
        }
        let half = Monomial(lm.0.iter().map(|e| e / 2).collect());
        let mut root = Self::monomial(field, half.exps(), field.sqrt(lc)?);
        let two_lc = field.mul(&field.from_i64(2), &field.sqrt(lc)?);
        let two_lc_inv = field.inv(&two_lc)?;
        let max_terms = self.terms.len() * 2 + 2;
        for _ in 0..max_terms {
            let rem = self.sub(&root.mul(&root));
            let Some((rm, rc)) = rem.leading_term() else {
                return Some(root);
            };
            if !half.divides(rm) {
                return None;
            }
            let m = half.quotient_of(rm);
            if m >= half {
                return None;
            }
            let c = field.mul(rc, &two_lc_inv);
            root = root.add(&Self::monomial(field, m.exps(), c));
        }
        (root.mul(&root) == *self).then_some(root)
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, self.nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// `F(s v + t w)` as a binary form of degree `deg F`.
    pub fn restrict_to_line(&self, v: &[F::Elem], w: &[F::Elem]) -> Result<BinaryForm<F>, PolyError> {
        let field = &self.field;
        if v.len() != self.nvars || w.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: v.len().min(w.len()) });
        }
        if proportional(field, v, w) {
            return Err(PolyError::DegenerateLine);
        }
        let d = self.homogeneous_degree().ok_or(PolyError::Inhomogeneous)? as usize;
        Ok(self.restrict_unchecked(v, w, d))
    }

    /// Restriction without the degeneracy and homogeneity checks; `d` is the
    /// degree of every term.
    pub(crate) fn restrict_unchecked(&self, v: &[F::Elem], w: &[F::Elem], d: usize) -> BinaryForm<F> {
        let field = &self.field;
        // powers[i][e] = (v_i s + w_i t)^e as a coefficient vector of length e+1
        let mut powers: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let maxe = self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0) as usize;
            let lin = [v[i].clone(), w[i].clone()];
            let mut pw = vec![vec![field.one()]];
            for e in 1..=maxe {
                let prev = &pw[e - 1];
                let mut next = vec![field.zero(); e + 1];
                for (j, c) in prev.iter().enumerate() {
                    next[j] = field.add(&next[j], &field.mul(c, &lin[0]));
                    next[j + 1] = field.add(&next[j + 1], &field.mul(c, &lin[1]));
                }
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = vec![field.zero(); d + 1];
        let mut buf = Vec::with_capacity(d + 1);
        let mut tmp = Vec::with_capacity(d + 1);
        for (m, c) in &self.terms {
            buf.clear();
            buf.push(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &powers[i][e as usize];
                tmp.clear();
                tmp.resize(buf.len() + p.len() - 1, field.zero());
                for (a, x) in buf.iter().enumerate() {
                    if field.is_zero(x) {
                        continue;
                    }
                    for (b, y) in p.iter().enumerate() {
                        tmp[a + b] = field.add(&tmp[a + b], &field.mul(x, y));
                    }
                }
                std::mem::swap(&mut buf, &mut tmp);
            }
            for (slot, x) in out.iter_mut().zip(&buf) {
                *slot = field.add(slot, x);
            }
        }
        BinaryForm::new(field, out)
    }
}

/// True if `v` and `w` are linearly dependent.
pub fn proportional<F: Field>(field: &F, v: &[F::Elem], w: &[F::Elem]) -> bool {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let det = field.sub(&field.mul(&v[i], &w[j]), &field.mul(&v[j], &w[i]));
            if !field.is_zero(&det) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Sum or product with arity and field checks.
pub fn mp_arith<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, op: PolyOp) -> Result<MultiPoly<F>, PolyError> {
    f.check_compatible(g)?;
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Mul => f.mul(g),
    })
}
