//! Exhaustive and sampled searches for points on hypersurfaces over finite
//! fields. All scans slice along the last coordinate: the other coordinates
//! run over a projective space one dimension lower, and the remaining
//! univariate problem is solved by gcd and root finding.

use rand::Rng;

use crate::fields::{Field, FiniteField, Gf};
use crate::poly::{uni, MultiPoly};
use crate::projgeom::{p2_point, p2_size, ProjPoint};

/// Copy of `p` over a field containing its coefficient field.
pub fn extend_poly(p: &MultiPoly<FiniteField>, target: &FiniteField) -> MultiPoly<FiniteField> {
    if p.field() == target {
        return p.clone();
    }
    let emb = p.field().embedding_into(target).expect("coefficient field embeds");
    p.map_coeffs(target, |c| emb.map(*c))
}

/// Univariate gcd of the slices of `polys` along `var` at `point`.
fn slice_gcd(field: &FiniteField, polys: &[MultiPoly<FiniteField>], var: usize, point: &[Gf]) -> Vec<Gf> {
    let mut g: Vec<Gf> = Vec::new();
    for p in polys {
        let s = p.eval_except(var, point);
        g = if g.is_empty() { s } else { uni::gcd(field, &g, &s) };
        if uni::degree(&g) == Some(0) {
            break;
        }
    }
    g
}

/// First projective common zero of homogeneous `polys` in three variables
/// over their field, in slicing order.
pub fn common_zero_p2(polys: &[MultiPoly<FiniteField>]) -> Option<[Gf; 3]> {
    let field = polys[0].field().clone();
    let at_infinity = [Gf::ZERO, Gf::ZERO, Gf::ONE];
    if polys.iter().all(|p| p.eval(&at_infinity).index() == 0) {
        return Some(at_infinity);
    }
    let q = field.size();
    for i in 0..=q {
        let (a, b) = if i == q { (Gf::ZERO, Gf::ONE) } else { (Gf::ONE, field.elem(i)) };
        let g = slice_gcd(&field, polys, 2, &[a, b, Gf::ZERO]);
        if uni::degree(&g).map_or(true, |d| d > 0) && uni::has_root(&field, &g) {
            let z = uni::roots(&field, &g)[0];
            return Some([a, b, z]);
        }
    }
    None
}

/// All projective common zeros of homogeneous `polys` in four variables over
/// their field.
pub fn common_zeros_p3(polys: &[MultiPoly<FiniteField>]) -> Vec<ProjPoint<Gf>> {
    let field = polys[0].field().clone();
    let mut out = Vec::new();
    let last = [Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE];
    if polys.iter().all(|p| p.eval(&last).index() == 0) {
        out.push(ProjPoint::new(&field, last).expect("nonzero"));
    }
    for idx in 0..p2_size(field.size()) {
        let [a, b, c] = p2_point(&field, idx);
        let g = slice_gcd(&field, polys, 3, &[a, b, c, Gf::ZERO]);
        for w in uni::roots(&field, &g) {
            out.push(ProjPoint::new(&field, [a, b, c, w]).expect("nonzero"));
        }
    }
    out.sort();
    out
}

/// Singular point of a plane curve over its field, if any.
pub fn curve_singular_point(c: &MultiPoly<FiniteField>) -> Option<[Gf; 3]> {
    let mut polys = vec![c.clone()];
    polys.extend(c.partials());
    common_zero_p2(&polys)
}

/// Singular points of a surface over its field.
pub fn surface_singular_points(f: &MultiPoly<FiniteField>) -> Vec<ProjPoint<Gf>> {
    let mut polys = vec![f.clone()];
    polys.extend(f.partials());
    common_zeros_p3(&polys)
}

/// Points of `V(f)` (four variables) with `x0 = 1` and random `x1, x2`,
/// solving for `x3`. Each draw contributes all its roots; stops once `n`
/// points are collected or after `50 n + 1000` draws.
pub fn sample_surface_points<R: Rng + ?Sized>(f: &MultiPoly<FiniteField>, n: usize, rng: &mut R) -> Vec<ProjPoint<Gf>> {
    let field = f.field().clone();
    let mut out = Vec::new();
    let mut draws = 0;
    while out.len() < n && draws < 50 * n + 1000 {
        draws += 1;
        let y = field.elem(rng.gen_range(0..field.size()));
        let z = field.elem(rng.gen_range(0..field.size()));
        let uni_poly = f.eval_except(3, &[Gf::ONE, y, z, Gf::ZERO]);
        if uni_poly.is_empty() {
            // the whole fibre lies on the surface; take one point of it
            out.push(ProjPoint::new(&field, [Gf::ONE, y, z, Gf::ZERO]).expect("nonzero"));
            continue;
        }
        for w in uni::roots(&field, &uni_poly) {
            out.push(ProjPoint::new(&field, [Gf::ONE, y, z, w]).expect("nonzero"));
        }
    }
    out.truncate(n);
    out
}

/// Points of `V(f)` on the quadric `x0 x1 + x2 x3 = 0` (characteristic 2),
/// via `x0 = 1`, `x1 = x2 x3` and a random `x2`.
pub fn sample_points_on_fixed_quadric<R: Rng + ?Sized>(f: &MultiPoly<FiniteField>, n: usize, rng: &mut R) -> Vec<ProjPoint<Gf>> {
    let field = f.field().clone();
    let nv = 2;
    let x3 = MultiPoly::var(&field, nv, 1);
    let x2 = MultiPoly::var(&field, nv, 0);
    let images = vec![MultiPoly::one(&field, nv), x2.mul(&x3), x2.clone(), x3];
    let g = f.substitute(&images).expect("four images");
    let mut out = Vec::new();
    let mut draws = 0;
    while out.len() < n && draws < 50 * n + 1000 {
        draws += 1;
        let z = field.elem(rng.gen_range(0..field.size()));
        let uni_poly = g.eval_except(1, &[z, Gf::ZERO]);
        if uni_poly.is_empty() {
            continue;
        }
        for w in uni::roots(&field, &uni_poly) {
            let y = field.mul(&z, &w);
            out.push(ProjPoint::new(&field, [Gf::ONE, y, z, w]).expect("nonzero"));
        }
    }
    out.truncate(n);
    out
}
