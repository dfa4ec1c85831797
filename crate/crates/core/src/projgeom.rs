//! Points, planes and lines of P^3. Lines carry Plücker coordinates
//! `(p12, p13, p14, p23, p24, p34)`, `p_ij = a_i b_j - a_j b_i`, subject to
//! `p12 p34 - p13 p24 + p14 p23 = 0`.

use rand::Rng;
use thiserror::Error;

use crate::fields::{Field, FiniteField, Gf};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("degenerate line: the points coincide")]
    DegenerateLine,
    #[error("coordinates violate the Plücker relation")]
    NotALine,
    #[error("the lines are not skew")]
    NotSkew,
    #[error("transversal not unique: the point lies on one of the lines")]
    TransversalNotUnique,
    #[error("line lies in the plane")]
    LineInPlane,
    #[error("point lies on the line")]
    PointOnLine,
    #[error("the planes coincide")]
    SamePlane,
}

/// Index pairs of the Plücker coordinates, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pidx(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&pr| pr == (i, j)).expect("i < j < 4")
}

/// Scales so that the first nonzero entry is 1; `false` for the zero vector.
pub fn normalize<F: Field>(field: &F, v: &mut [F::Elem]) -> bool {
    let Some(lead) = v.iter().find(|c| !field.is_zero(c)).cloned() else {
        return false;
    };
    let inv = field.inv(&lead).expect("nonzero");
    for c in v.iter_mut() {
        *c = field.mul(c, &inv);
    }
    true
}

fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<E> {
    coords: [E; 4],
}

impl<E: Clone> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coords: [E; 4]) -> Result<Self, GeomError> {
        if !normalize(field, &mut coords) {
            return Err(GeomError::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[E; 4] {
        &self.coords
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPlane<E> {
    coeffs: [E; 4],
}

impl<E: Clone> ProjPlane<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: [E; 4]) -> Result<Self, GeomError> {
        if !normalize(field, &mut coeffs) {
            return Err(GeomError::ZeroVector);
        }
        Ok(ProjPlane { coeffs })
    }

    pub fn coeffs(&self) -> &[E; 4] {
        &self.coeffs
    }

    /// The coordinate hyperplane `x_i = 0`.
    pub fn coordinate<F: Field<Elem = E>>(field: &F, i: usize) -> Self {
        let mut c: [E; 4] = std::array::from_fn(|_| field.zero());
        c[i] = field.one();
        ProjPlane { coeffs: c }
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, x: &ProjPoint<E>) -> bool {
        field.is_zero(&dot(field, &self.coeffs, &x.coords))
    }

    /// Index of the first nonzero coefficient (which is 1).
    pub fn pivot<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.coeffs.iter().position(|c| !field.is_zero(c)).expect("normalized plane")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerLine<E> {
    p: [E; 6],
}

pub enum Incident<'a, E> {
    Point(&'a ProjPoint<E>),
    Plane(&'a ProjPlane<E>),
    Line(&'a PluckerLine<E>),
}

pub fn plucker_relation<F: Field>(field: &F, p: &[F::Elem; 6]) -> F::Elem {
    let a = field.mul(&p[0], &p[5]);
    let b = field.mul(&p[1], &p[4]);
    let c = field.mul(&p[2], &p[3]);
    field.add(&field.sub(&a, &b), &c)
}

/// Plücker coordinates of the span of two vectors (not normalized).
pub fn wedge<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> [F::Elem; 6] {
    PAIRS.map(|(i, j)| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i])))
}

/// Line coordinates of the intersection of the planes `u` and `v`.
pub fn dual_wedge<F: Field>(field: &F, u: &[F::Elem], v: &[F::Elem]) -> [F::Elem; 6] {
    let q = wedge(field, u, v);
    [q[5].clone(), field.neg(&q[4]), q[3].clone(), q[2].clone(), field.neg(&q[1]), q[0].clone()]
}

impl<E: Clone> PluckerLine<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut p: [E; 6]) -> Result<Self, GeomError> {
        if !field.is_zero(&plucker_relation(field, &p)) {
            return Err(GeomError::NotALine);
        }
        if !normalize(field, &mut p) {
            return Err(GeomError::ZeroVector);
        }
        Ok(PluckerLine { p })
    }

    pub fn coords(&self) -> &[E; 6] {
        &self.p
    }

    pub fn coord(&self, i: usize, j: usize) -> &E {
        &self.p[pidx(i, j)]
    }

    /// Skew 4x4 matrix with entries `p_ij` above the diagonal.
    fn matrix<F: Field<Elem = E>>(&self, field: &F) -> [[E; 4]; 4] {
        let mut m: [[E; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| field.zero()));
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m[i][j] = self.p[k].clone();
            m[j][i] = field.neg(&self.p[k]);
        }
        m
    }

    /// Two distinct points spanning the line.
    pub fn spanning_points<F: Field<Elem = E>>(&self, field: &F) -> (ProjPoint<E>, ProjPoint<E>) {
        let m = self.matrix(field);
        let cols: Vec<[E; 4]> = (0..4).map(|j| std::array::from_fn(|i| m[i][j].clone())).collect();
        let first = cols
            .iter()
            .position(|c| c.iter().any(|x| !field.is_zero(x)))
            .expect("nonzero line");
        let second = cols
            .iter()
            .position(|c| !crate::poly::proportional(field, &cols[first], c))
            .expect("rank two");
        (
            ProjPoint::new(field, cols[first].clone()).expect("nonzero"),
            ProjPoint::new(field, cols[second].clone()).expect("nonzero"),
        )
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, field: &F, x: &ProjPoint<E>) -> bool {
        let x = &x.coords;
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    let t1 = field.mul(&x[i], self.coord(j, k));
                    let t2 = field.mul(&x[j], self.coord(i, k));
                    let t3 = field.mul(&x[k], self.coord(i, j));
                    if !field.is_zero(&field.add(&field.sub(&t1, &t2), &t3)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `P u`, the point where the line meets the plane `u`; zero when the line
    /// lies in the plane.
    fn meet_vector<F: Field<Elem = E>>(&self, field: &F, u: &[E; 4]) -> [E; 4] {
        let m = self.matrix(field);
        std::array::from_fn(|i| dot(field, &m[i], u))
    }

    pub fn lies_in<F: Field<Elem = E>>(&self, field: &F, plane: &ProjPlane<E>) -> bool {
        self.meet_vector(field, &plane.coeffs).iter().all(|x| field.is_zero(x))
    }

    pub fn intersect_plane<F: Field<Elem = E>>(&self, field: &F, plane: &ProjPlane<E>) -> Result<ProjPoint<E>, GeomError> {
        ProjPoint::new(field, self.meet_vector(field, &plane.coeffs)).map_err(|_| GeomError::LineInPlane)
    }

    pub fn meets<F: Field<Elem = E>>(&self, field: &F, other: &PluckerLine<E>) -> bool {
        let (p, q) = (&self.p, &other.p);
        let terms = [
            (field.mul(&p[0], &q[5]), false),
            (field.mul(&p[1], &q[4]), true),
            (field.mul(&p[2], &q[3]), false),
            (field.mul(&p[3], &q[2]), false),
            (field.mul(&p[4], &q[1]), true),
            (field.mul(&p[5], &q[0]), false),
        ];
        let s = terms.iter().fold(field.zero(), |acc, (t, neg)| {
            if *neg {
                field.sub(&acc, t)
            } else {
                field.add(&acc, t)
            }
        });
        field.is_zero(&s)
    }

    /// The plane spanned by the line and a point off it.
    pub fn plane_through<F: Field<Elem = E>>(&self, field: &F, x: &ProjPoint<E>) -> Result<ProjPlane<E>, GeomError> {
        let (a, b) = self.spanning_points(field);
        let rows = vec![a.coords.to_vec(), b.coords.to_vec(), x.coords.to_vec()];
        let ker = linalg::kernel(field, &rows, 4);
        if ker.len() != 1 {
            return Err(GeomError::PointOnLine);
        }
        let v: [E; 4] = std::array::from_fn(|i| ker[0][i].clone());
        ProjPlane::new(field, v)
    }

    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> Vec<String> {
        self.p.iter().map(|c| field.format_elem(c)).collect()
    }
}

impl<E: Clone> ProjPoint<E> {
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> Vec<String> {
        self.coords.iter().map(|c| field.format_elem(c)).collect()
    }
}

impl<E: Clone> ProjPlane<E> {
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> Vec<String> {
        self.coeffs.iter().map(|c| field.format_elem(c)).collect()
    }
}

pub fn line_from_points<F: Field>(field: &F, a: &ProjPoint<F::Elem>, b: &ProjPoint<F::Elem>) -> Result<PluckerLine<F::Elem>, GeomError> {
    let mut p = wedge(field, &a.coords, &b.coords);
    if !normalize(field, &mut p) {
        return Err(GeomError::DegenerateLine);
    }
    Ok(PluckerLine { p })
}

pub fn line_from_planes<F: Field>(field: &F, u: &ProjPlane<F::Elem>, v: &ProjPlane<F::Elem>) -> Result<PluckerLine<F::Elem>, GeomError> {
    let mut p = dual_wedge(field, &u.coeffs, &v.coeffs);
    if !normalize(field, &mut p) {
        return Err(GeomError::SamePlane);
    }
    Ok(PluckerLine { p })
}

pub fn incidence<F: Field>(field: &F, line: &PluckerLine<F::Elem>, other: Incident<'_, F::Elem>) -> bool {
    match other {
        Incident::Point(x) => line.contains_point(field, x),
        Incident::Plane(u) => line.lies_in(field, u),
        Incident::Line(m) => line.meets(field, m),
    }
}

/// The line through `q` meeting the skew lines `l1` and `l2`, with its
/// points of intersection with `l1` and `l2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal<E> {
    pub line: PluckerLine<E>,
    pub on_first: ProjPoint<E>,
    pub on_second: ProjPoint<E>,
}

pub fn transversal_through_point<F: Field>(
    field: &F,
    l1: &PluckerLine<F::Elem>,
    l2: &PluckerLine<F::Elem>,
    q: &ProjPoint<F::Elem>,
) -> Result<Transversal<F::Elem>, GeomError> {
    if l1.meets(field, l2) {
        return Err(GeomError::NotSkew);
    }
    let p1 = l1.plane_through(field, q).map_err(|_| GeomError::TransversalNotUnique)?;
    let p2 = l2.plane_through(field, q).map_err(|_| GeomError::TransversalNotUnique)?;
    let line = line_from_planes(field, &p1, &p2)?;
    let on_first = l1.intersect_plane(field, &p2)?;
    let on_second = l2.intersect_plane(field, &p1)?;
    Ok(Transversal { line, on_first, on_second })
}

pub fn transversal_in_plane<F: Field>(
    field: &F,
    l1: &PluckerLine<F::Elem>,
    l2: &PluckerLine<F::Elem>,
    plane: &ProjPlane<F::Elem>,
) -> Result<PluckerLine<F::Elem>, GeomError> {
    if l1.meets(field, l2) {
        return Err(GeomError::NotSkew);
    }
    let a = l1.intersect_plane(field, plane)?;
    let b = l2.intersect_plane(field, plane)?;
    line_from_points(field, &a, &b)
}

/// Number of points of P^2 over a field with `q` elements.
pub fn p2_size(q: u32) -> usize {
    let q = q as usize;
    q * q + q + 1
}

/// The `idx`-th point of P^2 in lexicographic order of normalized
/// coordinates: `[0,0,1]`, then `[0,1,a]`, then `[1,a,b]`.
pub fn p2_point(field: &FiniteField, idx: usize) -> [Gf; 3] {
    let q = field.size() as usize;
    assert!(idx < p2_size(field.size()), "P^2 index out of range");
    if idx == 0 {
        [Gf::ZERO, Gf::ZERO, Gf::ONE]
    } else if idx <= q {
        [Gf::ZERO, Gf::ONE, field.elem((idx - 1) as u32)]
    } else {
        let r = idx - q - 1;
        [Gf::ONE, field.elem((r / q) as u32), field.elem((r % q) as u32)]
    }
}

/// Lines through a point, indexed by the points of the complementary
/// coordinate plane `x_i0 = 0` (i0 the pivot of the point).
#[derive(Clone, Debug)]
pub struct LinesThrough {
    field: FiniteField,
    q: ProjPoint<Gf>,
    pivot: usize,
}

impl LinesThrough {
    pub fn len(&self) -> usize {
        p2_size(self.field.size())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, idx: usize) -> PluckerLine<Gf> {
        let pt = p2_point(&self.field, idx);
        let mut r = [Gf::ZERO; 4];
        let mut it = pt.iter();
        for (i, slot) in r.iter_mut().enumerate() {
            if i != self.pivot {
                *slot = *it.next().expect("three coordinates");
            }
        }
        let r = ProjPoint { coords: r };
        line_from_points(&self.field, &self.q, &r).expect("distinct points")
    }

    pub fn iter(&self) -> impl Iterator<Item = PluckerLine<Gf>> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

pub fn enum_lines_through(q: &ProjPoint<Gf>, field: &FiniteField) -> LinesThrough {
    let pivot = q.coords.iter().position(|c| c.index() != 0).expect("normalized point");
    LinesThrough { field: field.clone(), q: q.clone(), pivot }
}

/// Lines in a plane `u`, indexed by P^2 via the planes `v` with `v_i0 = 0`
/// (i0 the pivot of `u`): the line is `u ∩ v`.
#[derive(Clone, Debug)]
pub struct LinesIn {
    field: FiniteField,
    plane: ProjPlane<Gf>,
    pivot: usize,
}

impl LinesIn {
    pub fn len(&self) -> usize {
        p2_size(self.field.size())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, idx: usize) -> PluckerLine<Gf> {
        let pt = p2_point(&self.field, idx);
        let mut v = [Gf::ZERO; 4];
        let mut it = pt.iter();
        for (i, slot) in v.iter_mut().enumerate() {
            if i != self.pivot {
                *slot = *it.next().expect("three coordinates");
            }
        }
        let v = ProjPlane { coeffs: v };
        line_from_planes(&self.field, &self.plane, &v).expect("distinct planes")
    }

    pub fn iter(&self) -> impl Iterator<Item = PluckerLine<Gf>> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

pub fn enum_lines_in(plane: &ProjPlane<Gf>, field: &FiniteField) -> LinesIn {
    let pivot = plane.coeffs.iter().position(|c| c.index() != 0).expect("normalized plane");
    LinesIn { field: field.clone(), plane: plane.clone(), pivot }
}

pub fn random_point<R: Rng + ?Sized>(field: &FiniteField, rng: &mut R) -> ProjPoint<Gf> {
    loop {
        let c: [Gf; 4] = std::array::from_fn(|_| field.elem(rng.gen_range(0..field.size())));
        if let Ok(p) = ProjPoint::new(field, c) {
            return p;
        }
    }
}

pub fn random_plane<R: Rng + ?Sized>(field: &FiniteField, rng: &mut R) -> ProjPlane<Gf> {
    let p = random_point(field, rng);
    ProjPlane { coeffs: p.coords }
}

/// Coordinate line `x_i = x_j = 0`.
pub fn coordinate_line<F: Field>(field: &F, i: usize, j: usize) -> PluckerLine<F::Elem> {
    let u = ProjPlane::coordinate(field, i);
    let v = ProjPlane::coordinate(field, j);
    line_from_planes(field, &u, &v).expect("distinct coordinate planes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::field_make;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(f: &FiniteField, c: [u32; 4]) -> ProjPoint<Gf> {
        ProjPoint::new(f, c.map(|x| f.elem(x))).unwrap()
    }

    #[test]
    fn basic_lines() {
        let f = field_make(2, 1).unwrap();
        let l = line_from_points(&f, &pt(&f, [1, 0, 0, 0]), &pt(&f, [0, 1, 0, 0])).unwrap();
        assert_eq!(l.coords(), &[Gf::ONE, Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ZERO]);
        let l = line_from_points(&f, &pt(&f, [0, 0, 1, 0]), &pt(&f, [0, 0, 0, 1])).unwrap();
        assert_eq!(l.coords(), &[Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE]);
        assert_eq!(l, coordinate_line(&f, 0, 1));
        let a = pt(&f, [1, 1, 0, 0]);
        assert_eq!(line_from_points(&f, &a, &a).unwrap_err(), GeomError::DegenerateLine);
    }

    #[test]
    fn incidence_examples() {
        let f = field_make(2, 1).unwrap();
        let vxy = coordinate_line(&f, 0, 1);
        let vzw = coordinate_line(&f, 2, 3);
        assert!(incidence(&f, &vxy, Incident::Point(&pt(&f, [0, 0, 1, 0]))));
        assert!(incidence(&f, &vxy, Incident::Plane(&ProjPlane::coordinate(&f, 0))));
        assert!(!incidence(&f, &vxy, Incident::Line(&vzw)));
        assert!(incidence(&f, &vxy, Incident::Line(&coordinate_line(&f, 0, 2))));
    }

    #[test]
    fn transversal_through_generic_point() {
        let f = field_make(2, 4).unwrap();
        let (x0, y0, z0, w0) = (f.elem(3), f.elem(7), f.elem(9), f.elem(12));
        let q = ProjPoint::new(&f, [Gf::ONE, f.div(&y0, &x0).unwrap(), f.div(&z0, &x0).unwrap(), f.div(&w0, &x0).unwrap()]).unwrap();
        let q = ProjPoint::new(&f, [x0, y0, z0, w0]).unwrap_or(q);
        let l1 = coordinate_line(&f, 0, 1);
        let l2 = coordinate_line(&f, 2, 3);
        let t = transversal_through_point(&f, &l1, &l2, &q).unwrap();
        assert_eq!(t.on_first, ProjPoint::new(&f, [Gf::ZERO, Gf::ZERO, z0, w0]).unwrap());
        assert_eq!(t.on_second, ProjPoint::new(&f, [x0, y0, Gf::ZERO, Gf::ZERO]).unwrap());
        assert!(t.line.contains_point(&f, &q));
        assert!(t.line.meets(&f, &l1) && t.line.meets(&f, &l2));
        let bad = pt(&f, [0, 0, 1, 1]);
        assert_eq!(transversal_through_point(&f, &l1, &l2, &bad).unwrap_err(), GeomError::TransversalNotUnique);
    }

    #[test]
    fn transversal_in_plane_example() {
        let f = field_make(2, 1).unwrap();
        let l1 = coordinate_line(&f, 0, 1);
        let l2 = coordinate_line(&f, 2, 3);
        let plane = ProjPlane::new(&f, [Gf::ONE, Gf::ZERO, Gf::ONE, Gf::ZERO]).unwrap();
        let t = transversal_in_plane(&f, &l1, &l2, &plane).unwrap();
        // l1 ∩ V(x+z) = [0,0,0,1], l2 ∩ V(x+z) = [0,1,0,0]: the line V(x,z)
        assert_eq!(t, coordinate_line(&f, 0, 2));
        assert!(t.lies_in(&f, &plane) && t.meets(&f, &l1) && t.meets(&f, &l2));
        let containing = ProjPlane::coordinate(&f, 0);
        assert_eq!(transversal_in_plane(&f, &l1, &l2, &containing).unwrap_err(), GeomError::LineInPlane);
    }

    #[test]
    fn enumeration_sizes() {
        for (k, n) in [(1, 7), (2, 21), (3, 73)] {
            let f = field_make(2, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            let q = random_point(&f, &mut rng);
            let through = enum_lines_through(&q, &f);
            let lines: Vec<_> = through.iter().collect();
            assert_eq!(lines.len(), n);
            let distinct: std::collections::BTreeSet<_> = lines.iter().cloned().collect();
            assert_eq!(distinct.len(), n);
            assert!(lines.iter().all(|l| l.contains_point(&f, &q)));
            let u = random_plane(&f, &mut rng);
            let inside: Vec<_> = enum_lines_in(&u, &f).iter().collect();
            let distinct: std::collections::BTreeSet<_> = inside.iter().cloned().collect();
            assert_eq!(distinct.len(), n);
            assert!(inside.iter().all(|l| l.lies_in(&f, &u)));
        }
    }

    #[test]
    fn transversal_unique_among_enumerated_lines() {
        for k in 1..=4 {
            let f = field_make(2, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
            let l1 = coordinate_line(&f, 0, 2);
            let l2 = coordinate_line(&f, 1, 3);
            for _ in 0..5 {
                let q = random_point(&f, &mut rng);
                let Ok(t) = transversal_through_point(&f, &l1, &l2, &q) else { continue };
                let hits: Vec<_> = enum_lines_through(&q, &f).iter().filter(|l| l.meets(&f, &l1) && l.meets(&f, &l2)).collect();
                assert_eq!(hits, vec![t.line.clone()]);
            }
        }
    }

    fn arb_point(f: FiniteField) -> impl Strategy<Value = ProjPoint<Gf>> {
        let q = f.size();
        prop::array::uniform4(0..q).prop_filter_map("zero vector", move |c| ProjPoint::new(&f, c.map(|x| f.elem(x))).ok())
    }

    proptest! {
        #[test]
        fn join_is_symmetric_and_on_grassmannian(a in arb_point(field_make(3, 2).unwrap()), b in arb_point(field_make(3, 2).unwrap())) {
            let f = field_make(3, 2).unwrap();
            prop_assume!(a != b);
            let l = line_from_points(&f, &a, &b).unwrap();
            prop_assert_eq!(&l, &line_from_points(&f, &b, &a).unwrap());
            prop_assert!(f.is_zero(&plucker_relation(&f, l.coords())));
            prop_assert!(l.contains_point(&f, &a) && l.contains_point(&f, &b));
            let (s1, s2) = l.spanning_points(&f);
            prop_assert_eq!(line_from_points(&f, &s1, &s2).unwrap(), l);
        }

        #[test]
        fn plane_meet_lies_in_both(a in arb_point(field_make(2, 3).unwrap()), b in arb_point(field_make(2, 3).unwrap())) {
            let f = field_make(2, 3).unwrap();
            prop_assume!(a != b);
            let u = ProjPlane::new(&f, *a.coords()).unwrap();
            let v = ProjPlane::new(&f, *b.coords()).unwrap();
            let l = line_from_planes(&f, &u, &v).unwrap();
            prop_assert!(f.is_zero(&plucker_relation(&f, l.coords())));
            prop_assert!(l.lies_in(&f, &u) && l.lies_in(&f, &v));
        }
    }
}
