//! The three Kummer quartic families of characteristic 2 (ordinary, 2-rank 1,
//! supersingular), their Cremona involutions, tropes, Plücker congruences and
//! predicted bitangent lines.

use rand::Rng;
use thiserror::Error;

use crate::bitangent::{
    class_count, classify_line, draw_generic, order_count, trope_plane_detect, BitangentError, CongruenceReport,
    GenericityPolicy, QuarticSurface, Sample,
};
use crate::fields::{Field, FieldError, FiniteField, Gf};
use crate::linalg;
use crate::poly::{parse_poly, MultiPoly, PolyError};
use crate::projgeom::{
    coordinate_line, dual_wedge, line_from_points, random_plane, random_point, transversal_in_plane,
    transversal_through_point, wedge, GeomError, PluckerLine, ProjPlane, ProjPoint,
};
use crate::scan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("Kummer families need characteristic 2, got {0}")]
    NotChar2(String),
    #[error("bad family spec {0:?}: {1}")]
    BadSpec(String, String),
    #[error("singular point check failed: {0}")]
    SingularPoints(String),
    #[error("plane {0} is not a trope")]
    NotATrope(String),
    #[error("degenerate sample: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Bitangent(#[from] BitangentError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Ordinary { a: Gf, b: Gf, c: Gf },
    Rank1 { alpha: Gf, beta: Gf },
    Supersingular { alpha: Gf },
}

#[derive(Clone, Debug, PartialEq)]
pub struct KummerFamily {
    field: FiniteField,
    params: FamilyParams,
}

fn split_top_commas(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl KummerFamily {
    pub fn new(field: &FiniteField, params: FamilyParams) -> Result<Self, KummerError> {
        if field.p() != 2 {
            return Err(KummerError::NotChar2(field.spec()));
        }
        match &params {
            FamilyParams::Ordinary { a, b, c } => {
                for (name, v) in [("a", a), ("b", b), ("c", c)] {
                    if v.index() == 0 {
                        return Err(KummerError::ZeroParameter(name));
                    }
                }
            }
            FamilyParams::Rank1 { beta, .. } if beta.index() == 0 => return Err(KummerError::ZeroParameter("beta")),
            _ => {}
        }
        Ok(KummerFamily { field: field.clone(), params })
    }

    pub fn ordinary(field: &FiniteField, a: Gf, b: Gf, c: Gf) -> Result<Self, KummerError> {
        Self::new(field, FamilyParams::Ordinary { a, b, c })
    }

    pub fn rank1(field: &FiniteField, alpha: Gf, beta: Gf) -> Result<Self, KummerError> {
        Self::new(field, FamilyParams::Rank1 { alpha, beta })
    }

    pub fn supersingular(field: &FiniteField, alpha: Gf) -> Result<Self, KummerError> {
        Self::new(field, FamilyParams::Supersingular { alpha })
    }

    /// Random parameters, nonzero where the family requires it.
    pub fn random<R: Rng + ?Sized>(field: &FiniteField, kind: &str, rng: &mut R) -> Result<Self, KummerError> {
        let q = field.size();
        let mut nonzero = || field.elem(rng.gen_range(1..q));
        let params = match kind {
            "ordinary" => FamilyParams::Ordinary { a: nonzero(), b: nonzero(), c: nonzero() },
            "rank1" => {
                let beta = nonzero();
                FamilyParams::Rank1 { alpha: field.elem(rng.gen_range(0..q)), beta }
            }
            "supersingular" => FamilyParams::Supersingular { alpha: field.elem(rng.gen_range(0..q)) },
            other => return Err(KummerError::BadSpec(other.into(), "unknown family".into())),
        };
        Self::new(field, params)
    }

    /// Parses `ordinary:a,b,c`, `rank1:alpha,beta`, `supersingular:alpha`,
    /// or `<kind>:rand`.
    pub fn parse<R: Rng + ?Sized>(spec: &str, field: &FiniteField, rng: &mut R) -> Result<Self, KummerError> {
        let bad = |msg: &str| KummerError::BadSpec(spec.to_string(), msg.to_string());
        let (kind, args) = spec.split_once(':').ok_or_else(|| bad("expected <kind>:<parameters>"))?;
        let kind = kind.trim();
        if args.trim() == "rand" {
            return Self::random(field, kind, rng);
        }
        let vals: Vec<Gf> = split_top_commas(args)
            .into_iter()
            .map(|s| field.parse_elem(s))
            .collect::<Result<_, _>>()?;
        let params = match (kind, vals.as_slice()) {
            ("ordinary", [a, b, c]) => FamilyParams::Ordinary { a: *a, b: *b, c: *c },
            ("rank1", [alpha, beta]) => FamilyParams::Rank1 { alpha: *alpha, beta: *beta },
            ("supersingular", [alpha]) => FamilyParams::Supersingular { alpha: *alpha },
            ("ordinary" | "rank1" | "supersingular", _) => return Err(bad("wrong number of parameters")),
            _ => return Err(bad("unknown family")),
        };
        Self::new(field, params)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn kind(&self) -> &'static str {
        match self.params {
            FamilyParams::Ordinary { .. } => "ordinary",
            FamilyParams::Rank1 { .. } => "rank1",
            FamilyParams::Supersingular { .. } => "supersingular",
        }
    }

    /// `kind:p1,p2,...` in the field element format.
    pub fn spec(&self) -> String {
        let f = &self.field;
        let vals: Vec<Gf> = match self.params {
            FamilyParams::Ordinary { a, b, c } => vec![a, b, c],
            FamilyParams::Rank1 { alpha, beta } => vec![alpha, beta],
            FamilyParams::Supersingular { alpha } => vec![alpha],
        };
        let vals: Vec<String> = vals.iter().map(|v| f.format_elem(v)).collect();
        format!("{}:{}", self.kind(), vals.join(","))
    }

    /// The (order, class) of the bitangent congruence.
    pub fn expected_bidegree(&self) -> (usize, usize) {
        match self.params {
            FamilyParams::Ordinary { .. } => (3, 7),
            FamilyParams::Rank1 { .. } => (2, 4),
            FamilyParams::Supersingular { .. } => (1, 2),
        }
    }

    /// Same family with its parameters carried into an extension field.
    pub fn extend_to(&self, target: &FiniteField) -> Result<Self, KummerError> {
        let emb = self.field.embedding_into(target)?;
        let m = |v: Gf| emb.map(v);
        let params = match self.params {
            FamilyParams::Ordinary { a, b, c } => FamilyParams::Ordinary { a: m(a), b: m(b), c: m(c) },
            FamilyParams::Rank1 { alpha, beta } => FamilyParams::Rank1 { alpha: m(alpha), beta: m(beta) },
            FamilyParams::Supersingular { alpha } => FamilyParams::Supersingular { alpha: m(alpha) },
        };
        Self::new(target, params)
    }

    fn point(&self, c: [u32; 4]) -> ProjPoint<Gf> {
        ProjPoint::new(&self.field, c.map(|i| self.field.elem(i))).expect("nonzero")
    }
}

fn poly_from(field: &FiniteField, nvars: usize, terms: &[([u16; 4], Gf)]) -> MultiPoly<FiniteField> {
    MultiPoly::from_terms(field, nvars, terms.iter().map(|(e, c)| (e[..nvars].to_vec(), *c)))
}

pub fn kummer_surface(fam: &KummerFamily) -> QuarticSurface<FiniteField> {
    let f = &fam.field;
    let one = Gf::ONE;
    let sq = |v: Gf| f.mul(&v, &v);
    let terms: Vec<([u16; 4], Gf)> = match fam.params {
        FamilyParams::Ordinary { a, b, c } => vec![
            ([2, 2, 0, 0], a),
            ([0, 0, 2, 2], a),
            ([2, 0, 2, 0], b),
            ([0, 2, 0, 2], b),
            ([2, 0, 0, 2], c),
            ([0, 2, 2, 0], c),
            ([1, 1, 1, 1], one),
        ],
        FamilyParams::Rank1 { alpha, beta } => vec![
            ([4, 0, 0, 0], sq(beta)),
            ([2, 0, 2, 0], sq(alpha)),
            ([2, 0, 1, 1], one),
            ([1, 1, 2, 0], one),
            ([0, 2, 0, 2], one),
            ([0, 0, 4, 0], one),
        ],
        FamilyParams::Supersingular { alpha } => vec![
            ([3, 0, 0, 1], one),
            ([3, 1, 0, 0], alpha),
            ([2, 1, 1, 0], one),
            ([2, 0, 2, 0], sq(alpha)),
            ([1, 3, 0, 0], one),
            ([0, 2, 0, 2], one),
            ([0, 0, 4, 0], one),
        ],
    };
    QuarticSurface::new(poly_from(f, 4, &terms)).expect("Kummer quartics are reduced")
}

/// The listed singular points of the family.
pub fn listed_singular_points(fam: &KummerFamily) -> Vec<ProjPoint<Gf>> {
    let mut pts = match fam.params {
        FamilyParams::Ordinary { .. } => vec![
            fam.point([1, 0, 0, 0]),
            fam.point([0, 1, 0, 0]),
            fam.point([0, 0, 1, 0]),
            fam.point([0, 0, 0, 1]),
        ],
        FamilyParams::Rank1 { .. } => vec![fam.point([0, 0, 0, 1]), fam.point([0, 1, 0, 0])],
        FamilyParams::Supersingular { .. } => vec![fam.point([0, 0, 0, 1])],
    };
    pts.sort();
    pts
}

/// Largest field size at which the exhaustive singular-point scan runs.
pub const SINGULAR_SCAN_MAX_FIELD: u32 = 1 << 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointsReport {
    pub points: Vec<ProjPoint<Gf>>,
    /// Extension degrees (over GF(2)) of the fields that were scanned.
    pub scanned_degrees: Vec<u32>,
}

/// Verifies the listed singular points, then scans the base field and its
/// extensions of degree up to 3 (within [`SINGULAR_SCAN_MAX_FIELD`]) for any
/// others.
pub fn singular_points(fam: &KummerFamily) -> Result<SingularPointsReport, KummerError> {
    let x = kummer_surface(fam);
    let f = x.poly();
    let listed = listed_singular_points(fam);
    let partials = f.partials();
    for p in &listed {
        if !std::iter::once(f).chain(partials.iter()).all(|g| g.eval(p.coords()).index() == 0) {
            return Err(KummerError::SingularPoints(format!("{:?} is not singular", p.format(&fam.field))));
        }
    }
    let mut scanned = Vec::new();
    for m in 1..=3 {
        let k = fam.field.degree() * m;
        if (1u64 << k) > SINGULAR_SCAN_MAX_FIELD as u64 {
            break;
        }
        let target = FiniteField::new(2, k)?;
        let found = scan::surface_singular_points(&scan::extend_poly(f, &target));
        let emb = fam.field.embedding_into(&target)?;
        let mut expected: Vec<ProjPoint<Gf>> = listed
            .iter()
            .map(|p| ProjPoint::new(&target, p.coords().map(|c| emb.map(c))).expect("nonzero"))
            .collect();
        expected.sort();
        if found != expected {
            return Err(KummerError::SingularPoints(format!(
                "over {} found {} singular points, expected {}",
                target.spec(),
                found.len(),
                expected.len()
            )));
        }
        scanned.push(k);
    }
    Ok(SingularPointsReport { points: listed, scanned_degrees: scanned })
}

pub fn trope_planes(fam: &KummerFamily) -> Vec<ProjPlane<Gf>> {
    let idx: &[usize] = match fam.params {
        FamilyParams::Ordinary { .. } => &[0, 1, 2, 3],
        FamilyParams::Rank1 { .. } => &[0, 2],
        FamilyParams::Supersingular { .. } => &[0],
    };
    idx.iter().map(|&i| ProjPlane::coordinate(&fam.field, i)).collect()
}

/// Trope planes with their conics `C`, `F|_plane = C^2`.
pub fn trope_data(fam: &KummerFamily) -> Result<Vec<(ProjPlane<Gf>, MultiPoly<FiniteField>)>, KummerError> {
    let x = kummer_surface(fam);
    trope_planes(fam)
        .into_iter()
        .map(|plane| match trope_plane_detect(&x, &plane) {
            Some(conic) => Ok((plane, conic)),
            None => Err(KummerError::NotATrope(format!("{:?}", plane.format(&fam.field)))),
        })
        .collect()
}

/// Pairs of skew lines whose transversals are bitangent, one per
/// involution of that kind.
pub fn skew_pairs(fam: &KummerFamily) -> Vec<(PluckerLine<Gf>, PluckerLine<Gf>)> {
    let f = &fam.field;
    let pair = |a: (usize, usize), b: (usize, usize)| (coordinate_line(f, a.0, a.1), coordinate_line(f, b.0, b.1));
    match fam.params {
        FamilyParams::Ordinary { .. } => vec![pair((0, 1), (2, 3)), pair((0, 2), (1, 3)), pair((0, 3), (1, 2))],
        FamilyParams::Rank1 { .. } => vec![pair((0, 1), (2, 3))],
        FamilyParams::Supersingular { .. } => vec![],
    }
}

/// The line `l0` every cone ray meets: `V(x,z)` (2-rank 1) or `V(x,y)`
/// (supersingular).
pub fn cone_axis(fam: &KummerFamily) -> Option<PluckerLine<Gf>> {
    match fam.params {
        FamilyParams::Ordinary { .. } => None,
        FamilyParams::Rank1 { .. } => Some(coordinate_line(&fam.field, 0, 2)),
        FamilyParams::Supersingular { .. } => Some(coordinate_line(&fam.field, 0, 1)),
    }
}

/// Linear conditions on Plücker coordinates cutting the cone congruence:
/// `p13 = 0, p14 = p23` (2-rank 1) or `p12 = 0, p14 = p23` (supersingular).
fn cone_conditions(fam: &KummerFamily) -> Option<[[i64; 6]; 2]> {
    match fam.params {
        FamilyParams::Ordinary { .. } => None,
        FamilyParams::Rank1 { .. } => Some([[0, 1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0]]),
        FamilyParams::Supersingular { .. } => Some([[1, 0, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0]]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapRole {
    /// Restricts to a bitangent involution of the surface.
    Bitangent,
    /// Linear automorphism used to relate the bitangent involutions.
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CremonaMap {
    pub name: String,
    pub components: Vec<MultiPoly<FiniteField>>,
    pub role: MapRole,
}

impl CremonaMap {
    pub fn parse(field: &FiniteField, name: &str, comps: [&str; 4], role: MapRole) -> Result<Self, PolyError> {
        let components = comps.iter().map(|c| parse_poly(field, 4, c)).collect::<Result<_, _>>()?;
        Ok(CremonaMap { name: name.to_string(), components, role })
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().find_map(|c| c.homogeneous_degree()).unwrap_or(0)
    }

    pub fn field(&self) -> &FiniteField {
        self.components[0].field()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CremonaMap) -> CremonaMap {
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components).expect("four components"))
            .collect();
        CremonaMap { name: format!("{}∘{}", self.name, other.name), components, role: MapRole::Auxiliary }
    }

    /// Image of a point, or `None` at an indeterminacy point.
    pub fn apply(&self, p: &ProjPoint<Gf>) -> Option<ProjPoint<Gf>> {
        let v: [Gf; 4] = std::array::from_fn(|i| self.components[i].eval(p.coords()));
        ProjPoint::new(self.field(), v).ok()
    }

    pub fn to_text(&self) -> Vec<String> {
        self.components.iter().map(|c| c.to_text()).collect()
    }

    fn extend_to(&self, target: &FiniteField) -> CremonaMap {
        CremonaMap {
            name: self.name.clone(),
            components: self.components.iter().map(|c| scan::extend_poly(c, target)).collect(),
            role: self.role,
        }
    }
}

pub fn standard_inversion(field: &FiniteField) -> CremonaMap {
    CremonaMap::parse(field, "T", ["y*z*w", "x*z*w", "x*y*w", "x*y*z"], MapRole::Auxiliary).expect("valid")
}

/// The coordinate permutations `g1 = [y,x,w,z]`, `g2 = [z,w,x,y]`,
/// `g3 = [w,z,y,x]`.
pub fn pair_swaps(field: &FiniteField) -> Vec<CremonaMap> {
    [("g1", ["y", "x", "w", "z"]), ("g2", ["z", "w", "x", "y"]), ("g3", ["w", "z", "y", "x"])]
        .into_iter()
        .map(|(n, c)| CremonaMap::parse(field, n, c, MapRole::Auxiliary).expect("valid"))
        .collect()
}

pub fn involutions(fam: &KummerFamily) -> Vec<CremonaMap> {
    let f = &fam.field;
    let e = |v: &Gf| f.format_elem(v);
    let parse = |name: &str, comps: [&str; 4], role| CremonaMap::parse(f, name, comps, role).expect("valid");
    match fam.params {
        FamilyParams::Ordinary { .. } => vec![
            parse("T1", ["x*z*w", "y*z*w", "x*y*z", "x*y*w"], MapRole::Bitangent),
            parse("T2", ["x*y*w", "x*y*z", "y*z*w", "x*z*w"], MapRole::Bitangent),
            parse("T3", ["x*y*z", "x*y*w", "x*z*w", "y*z*w"], MapRole::Bitangent),
        ],
        FamilyParams::Rank1 { beta, .. } => {
            let b = e(&beta);
            vec![
                parse("sigma1", ["x*z^2", "y*z^2", &format!("{b}*x^2*z"), &format!("{b}*x^2*w")], MapRole::Bitangent),
                parse("sigma2", ["x^2*z", "x^2*w", "x*z^2", "y*z^2"], MapRole::Bitangent),
                parse("tau", ["z", "w", &format!("{b}*x"), &format!("{b}*y")], MapRole::Auxiliary),
            ]
        }
        FamilyParams::Supersingular { alpha } => {
            let a = e(&alpha);
            vec![parse(
                "T",
                ["x^3", "x^2*y", &format!("{a}*x^3 + x^2*z + x*y^2"), &format!("{a}*x^2*y + x^2*w + y^3")],
                MapRole::Bitangent,
            )]
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreservesCheck {
    pub holds: bool,
    /// `M` with `F ∘ T = M F`.
    pub multiplier: Option<MultiPoly<FiniteField>>,
}

pub fn check_preserves(x: &QuarticSurface<FiniteField>, t: &CremonaMap) -> PreservesCheck {
    let composed = x.poly().substitute(&t.components).expect("four components");
    match composed.divide_exact(x.poly()) {
        Ok(Some(m)) if !composed.is_zero() => PreservesCheck { holds: true, multiplier: Some(m) },
        _ => PreservesCheck { holds: false, multiplier: None },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvolutiveCheck {
    pub holds: bool,
    /// `h` with `T ∘ T = h · id`.
    pub factor: Option<MultiPoly<FiniteField>>,
}

pub fn check_involutive(t: &CremonaMap) -> InvolutiveCheck {
    let f = t.field();
    let tt = t.compose(t);
    let vars = MultiPoly::vars(f, 4);
    let fail = InvolutiveCheck { holds: false, factor: None };
    let Ok(Some(h)) = tt.components[0].divide_exact(&vars[0]) else { return fail };
    if h.is_zero() {
        return fail;
    }
    if (0..4).all(|i| tt.components[i] == h.mul(&vars[i])) {
        InvolutiveCheck { holds: true, factor: Some(h) }
    } else {
        fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitangentInvolutionReport {
    pub map: String,
    pub field: String,
    /// The `s^3 t` and `s t^3` coefficients of `F(s p + t T(p))` lie in `(F)`.
    pub symbolic_ok: bool,
    /// Those coefficients vanish as polynomials.
    pub identically_zero: bool,
    /// Nonzero remainders modulo `F`, as text.
    pub remainders: Vec<String>,
    pub requested: usize,
    pub checked: usize,
    pub failures: usize,
    pub skipped: usize,
}

impl BitangentInvolutionReport {
    pub fn passes(&self) -> bool {
        self.symbolic_ok && self.failures == 0 && self.checked == self.requested
    }
}

/// Odd coefficients of `F(s p + t T(p))` for generic `p`, as polynomials in
/// the coordinates of `p`: `sum T_i dF/dx_i` and `sum x_i (dF/dx_i ∘ T)`.
pub fn odd_coefficients(x: &QuarticSurface<FiniteField>, t: &CremonaMap) -> [MultiPoly<FiniteField>; 2] {
    let f = x.field();
    let vars = MultiPoly::vars(f, 4);
    let partials = x.poly().partials();
    let mut c1 = MultiPoly::zero(f, 4);
    let mut c3 = MultiPoly::zero(f, 4);
    for i in 0..4 {
        c1 = c1.add(&t.components[i].mul(&partials[i]));
        let pt = partials[i].substitute(&t.components).expect("four components");
        c3 = c3.add(&vars[i].mul(&pt));
    }
    [c1, c3]
}

pub fn check_bitangent_involution<R: Rng + ?Sized>(
    x: &QuarticSurface<FiniteField>,
    t: &CremonaMap,
    field: &FiniteField,
    n_samples: usize,
    rng: &mut R,
) -> BitangentInvolutionReport {
    let odd = odd_coefficients(x, t);
    let mut remainders = Vec::new();
    for c in &odd {
        let r = c.reduce_mod(x.poly()).expect("nonzero divisor");
        if !r.is_zero() {
            remainders.push(r.to_text());
        }
    }
    let symbolic_ok = remainders.is_empty();
    let identically_zero = odd.iter().all(MultiPoly::is_zero);

    let xe = QuarticSurface::new(scan::extend_poly(x.poly(), field)).expect("still a reduced quartic");
    let te = t.extend_to(field);
    let points = scan::sample_surface_points(xe.poly(), 3 * n_samples + 50, rng);
    let (mut checked, mut failures, mut skipped) = (0, 0, 0);
    for p in &points {
        if checked == n_samples {
            break;
        }
        let Some(img) = te.apply(p).filter(|q| q != p) else {
            skipped += 1;
            continue;
        };
        let line = line_from_points(field, p, &img).expect("distinct points");
        checked += 1;
        if !classify_line(&xe, &line).is_bitangent() {
            failures += 1;
        }
    }
    BitangentInvolutionReport {
        map: t.name.clone(),
        field: field.spec(),
        symbolic_ok,
        identically_zero,
        remainders,
        requested: n_samples,
        checked,
        failures,
        skipped,
    }
}

/// Removes a common polynomial factor from `polys`. Probes: the common
/// monomial content, then (smallest first) the monomial-free part of each
/// nonzero polynomial and its square root.
pub fn remove_common_factor(polys: &[MultiPoly<FiniteField>]) -> (MultiPoly<FiniteField>, Vec<MultiPoly<FiniteField>>) {
    let f = polys[0].field().clone();
    let nv = polys[0].nvars();
    let mut factor = MultiPoly::one(&f, nv);
    let mut cur: Vec<MultiPoly<FiniteField>> = polys.to_vec();
    // monomial content
    let nonzero: Vec<&MultiPoly<FiniteField>> = cur.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return (factor, cur);
    }
    let mut exps = nonzero[0].monomial_content().exps().to_vec();
    for p in &nonzero[1..] {
        for (e, c) in exps.iter_mut().zip(p.monomial_content().exps()) {
            *e = (*e).min(*c);
        }
    }
    let content = MultiPoly::monomial(&f, &exps, Gf::ONE);
    if !content.is_constant() {
        let m = content.leading_term().expect("monomial").0.clone();
        cur = cur.iter().map(|p| if p.is_zero() { p.clone() } else { p.div_monomial(&m) }).collect();
        factor = factor.mul(&content);
    }
    loop {
        let mut candidates: Vec<MultiPoly<FiniteField>> = Vec::new();
        for p in cur.iter().filter(|p| !p.is_zero()) {
            let prim = p.div_monomial(&p.monomial_content());
            if let Some(r) = prim.sqrt() {
                candidates.push(r);
            }
            candidates.push(prim);
        }
        candidates.retain(|c| !c.is_constant());
        candidates.sort_by_key(|c| (c.total_degree(), c.num_terms()));
        let hit = candidates.into_iter().find_map(|c| {
            let quotients: Option<Vec<_>> = cur.iter().map(|p| p.divide_exact(&c).ok().flatten()).collect();
            quotients.map(|q| (c, q))
        });
        match hit {
            Some((c, q)) => {
                factor = factor.mul(&c);
                cur = q;
            }
            None => break,
        }
    }
    // make the first nonzero leading coefficient 1
    if let Some(lead) = cur.iter().find(|p| !p.is_zero()).map(|p| *p.leading_term().expect("nonzero").1) {
        let inv = f.inv(&lead).expect("nonzero");
        cur = cur.iter().map(|p| p.scale(&inv)).collect();
        factor = factor.scale(&lead);
    }
    (factor, cur)
}

pub const PLUCKER_NAMES: [&str; 6] = ["p12", "p13", "p14", "p23", "p24", "p34"];

/// A polynomial relation among Plücker coordinates, written with the
/// variables `p12 .. p34`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerRelation {
    pub name: String,
    pub poly: MultiPoly<FiniteField>,
}

impl PluckerRelation {
    pub fn parse(field: &FiniteField, text: &str) -> Result<Self, PolyError> {
        let mut s = text.to_string();
        for (i, n) in PLUCKER_NAMES.iter().enumerate() {
            s = s.replace(n, &format!("x{i}"));
        }
        Ok(PluckerRelation { name: text.to_string(), poly: parse_poly(field, 6, &s)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationVerdict {
    /// Holds as a polynomial identity in `x, y, z, w`.
    Identity,
    /// Holds modulo the quartic.
    ModuloSurface,
    /// Nonzero modulo the quartic but vanishes at every sampled point.
    SetTheoretic,
    Fails,
}

impl RelationVerdict {
    pub fn holds(self) -> bool {
        self != RelationVerdict::Fails
    }

    pub fn label(self) -> &'static str {
        match self {
            RelationVerdict::Identity => "identity",
            RelationVerdict::ModuloSurface => "modulo F",
            RelationVerdict::SetTheoretic => "set-theoretic only",
            RelationVerdict::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PluckerCongruence {
    pub map: String,
    pub raw_minors: Vec<MultiPoly<FiniteField>>,
    pub common_factor: MultiPoly<FiniteField>,
    pub minors: Vec<MultiPoly<FiniteField>>,
}

pub fn plucker_congruence(t: &CremonaMap) -> PluckerCongruence {
    let f = t.field();
    let vars = MultiPoly::vars(f, 4);
    let raw: Vec<MultiPoly<FiniteField>> = crate::projgeom::PAIRS
        .iter()
        .map(|&(i, j)| vars[i].mul(&t.components[j]).sub(&vars[j].mul(&t.components[i])))
        .collect();
    let (common_factor, minors) = remove_common_factor(&raw);
    PluckerCongruence { map: t.name.clone(), raw_minors: raw, common_factor, minors }
}

/// Checks a relation on the reduced minors: as an identity, modulo `F`, or
/// by evaluation at `n_samples` points of `X` over `sample_field`.
pub fn check_relation<R: Rng + ?Sized>(
    cong: &PluckerCongruence,
    rel: &PluckerRelation,
    surface: Option<&QuarticSurface<FiniteField>>,
    sample_field: &FiniteField,
    n_samples: usize,
    rng: &mut R,
) -> RelationVerdict {
    let value = rel.poly.substitute(&cong.minors).expect("six minors");
    if value.is_zero() {
        return RelationVerdict::Identity;
    }
    let Some(x) = surface else { return RelationVerdict::Fails };
    if value.reduce_mod(x.poly()).expect("nonzero divisor").is_zero() {
        return RelationVerdict::ModuloSurface;
    }
    let xe = scan::extend_poly(x.poly(), sample_field);
    let ve = scan::extend_poly(&value, sample_field);
    let points = scan::sample_surface_points(&xe, n_samples, rng);
    if points.len() == n_samples && points.iter().all(|p| ve.eval(p.coords()).index() == 0) {
        RelationVerdict::SetTheoretic
    } else {
        RelationVerdict::Fails
    }
}

/// Relations declared for the congruence of a map: always the Plücker
/// quadric, plus the cone equations of `sigma2` and of the supersingular `T`.
pub fn declared_relations(field: &FiniteField, map_name: &str) -> Vec<PluckerRelation> {
    let mut rels = vec!["p12*p34 + -1*p13*p24 + p14*p23"];
    match map_name {
        "sigma2" => rels.extend(["p13", "p14 + -1*p23", "p12*p34 + p14*p23"]),
        "T" => rels.extend(["p12", "p14 + -1*p23", "p13*p24 + p14*p23"]),
        _ => {}
    }
    rels.into_iter().map(|r| PluckerRelation::parse(field, r).expect("valid relation")).collect()
}

/// The cubic relation satisfied on the surface by the congruence of the
/// standard inversion.
pub fn inversion_cubic_relation(field: &FiniteField) -> PluckerRelation {
    PluckerRelation::parse(field, "p12*p13*p23 + p12*p14*p24 + p13*p14*p34 + p23*p24*p34").expect("valid relation")
}

fn elem_of(field: &FiniteField, n: i64) -> Gf {
    field.from_i64(n)
}

/// The unique ray of the cone congruence through `q` (or inside a plane):
/// the Plücker coordinates of `q ∧ r` (resp. `u ∩ v`) are linear in `r`
/// (resp. `v`), so the cone conditions give a 2x4 linear system whose kernel
/// must be two-dimensional.
pub fn cone_ray(fam: &KummerFamily, sample: &Sample) -> Result<Option<PluckerLine<Gf>>, KummerError> {
    let Some(conds) = cone_conditions(fam) else { return Ok(None) };
    let f = &fam.field;
    let base: [Gf; 4] = match sample {
        Sample::Point(q) => *q.coords(),
        Sample::Plane(u) => *u.coeffs(),
    };
    // columns: the Plücker vector of base ∧ e_m (or base ∩ e_m)
    let cols: Vec<[Gf; 6]> = (0..4)
        .map(|m| {
            let mut e = [Gf::ZERO; 4];
            e[m] = Gf::ONE;
            match sample {
                Sample::Point(_) => wedge(f, &base, &e),
                Sample::Plane(_) => dual_wedge(f, &base, &e),
            }
        })
        .collect();
    let rows: Vec<Vec<Gf>> = conds
        .iter()
        .map(|c| {
            (0..4)
                .map(|m| (0..6).fold(Gf::ZERO, |acc, k| f.add(&acc, &f.mul(&elem_of(f, c[k]), &cols[m][k]))))
                .collect()
        })
        .collect();
    let ker = linalg::kernel(f, &rows, 4);
    if ker.len() != 2 {
        return Err(KummerError::Degenerate(format!("cone system has a {}-dimensional kernel", ker.len())));
    }
    let other = ker
        .iter()
        .find(|v| !crate::poly::proportional(f, v, &base))
        .ok_or_else(|| KummerError::Degenerate("cone system kernel is spanned by the sample".into()))?;
    let other: [Gf; 4] = std::array::from_fn(|i| other[i]);
    let p = match sample {
        Sample::Point(_) => wedge(f, &base, &other),
        Sample::Plane(_) => dual_wedge(f, &base, &other),
    };
    Ok(Some(PluckerLine::new(f, p)?))
}

/// The predicted bitangent lines through a point or inside a plane:
/// transversals of the skew pairs, the cone ray, and (planes only) the
/// intersections with the trope planes.
pub fn predicted_bitangents(fam: &KummerFamily, sample: &Sample) -> Result<Vec<PluckerLine<Gf>>, KummerError> {
    let f = &fam.field;
    let mut out = Vec::new();
    for (l1, l2) in skew_pairs(fam) {
        out.push(match sample {
            Sample::Point(q) => transversal_through_point(f, &l1, &l2, q)?.line,
            Sample::Plane(u) => transversal_in_plane(f, &l1, &l2, u)?,
        });
    }
    if let Some(ray) = cone_ray(fam, sample)? {
        out.push(ray);
    }
    if let Sample::Plane(u) = sample {
        for t in trope_planes(fam) {
            out.push(crate::projgeom::line_from_planes(f, u, &t)?);
        }
    }
    Ok(out)
}

/// Redraw policy for the family: tropes, the skew-pair lines and the cone
/// axis, singular points, and plane-section smoothness to depth 3.
pub fn genericity_policy(fam: &KummerFamily) -> GenericityPolicy {
    let mut lines: Vec<PluckerLine<Gf>> = skew_pairs(fam).into_iter().flat_map(|(a, b)| [a, b]).collect();
    lines.extend(cone_axis(fam));
    GenericityPolicy {
        tropes: trope_planes(fam),
        lines,
        singular_points: listed_singular_points(fam),
        section_depth: 3,
    }
}

fn check_prediction(fam: &KummerFamily, sample: &Sample, expected: usize) -> Result<(), String> {
    let mut pred = predicted_bitangents(fam, sample).map_err(|e| e.to_string())?;
    pred.sort();
    pred.dedup();
    if pred.len() != expected {
        return Err("predicted lines not distinct".into());
    }
    Ok(())
}

pub fn sample_generic_point<R: Rng + ?Sized>(fam: &KummerFamily, rng: &mut R) -> Result<ProjPoint<Gf>, KummerError> {
    let x = kummer_surface(fam);
    let policy = genericity_policy(fam);
    let (order, _) = fam.expected_bidegree();
    Ok(draw_generic(rng, |rng| {
        let q = random_point(&fam.field, rng);
        policy.check_point(&x, &q)?;
        check_prediction(fam, &Sample::Point(q.clone()), order)?;
        Ok(q)
    })?)
}

pub fn sample_generic_plane<R: Rng + ?Sized>(fam: &KummerFamily, rng: &mut R) -> Result<ProjPlane<Gf>, KummerError> {
    let x = kummer_surface(fam);
    let policy = genericity_policy(fam);
    let (_, class) = fam.expected_bidegree();
    Ok(draw_generic(rng, |rng| {
        let u = random_plane(&fam.field, rng);
        policy.check_plane(&x, &u)?;
        check_prediction(fam, &Sample::Plane(u.clone()), class)?;
        Ok(u)
    })?)
}

/// Exhaustive count at a generic sample, with the prediction attached.
pub fn count_with_prediction(fam: &KummerFamily, sample: &Sample) -> Result<CongruenceReport, KummerError> {
    let x = kummer_surface(fam);
    let report = match sample {
        Sample::Point(q) => order_count(&x, q),
        Sample::Plane(u) => class_count(&x, u),
    };
    Ok(report.with_prediction(predicted_bitangents(fam, sample)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusReport {
    pub field: String,
    pub checked: usize,
    pub fixed: usize,
    pub on_quadric: usize,
    /// Fixed by `T1` but off the quadric.
    pub fixed_off_quadric: usize,
    /// On the quadric but not fixed.
    pub quadric_not_fixed: usize,
    /// Singular or indeterminacy points.
    pub skipped: usize,
}

impl FixedLocusReport {
    pub fn passes(&self) -> bool {
        self.fixed_off_quadric == 0 && self.quadric_not_fixed == 0
    }
}

/// Checks `T1(p) = p  <=>  xy + zw = 0` at `n_samples` points of an ordinary
/// surface over `field`: half drawn at random on the surface, half on its
/// intersection with the quadric.
pub fn fixed_locus_check<R: Rng + ?Sized>(
    fam: &KummerFamily,
    field: &FiniteField,
    n_samples: usize,
    rng: &mut R,
) -> Result<FixedLocusReport, KummerError> {
    if !matches!(fam.params, FamilyParams::Ordinary { .. }) {
        return Err(KummerError::BadSpec(fam.spec(), "fixed locus check needs the ordinary family".into()));
    }
    let fam = fam.extend_to(field)?;
    let x = kummer_surface(&fam);
    let t1 = involutions(&fam).into_iter().next().expect("T1");
    let singular = listed_singular_points(&fam);
    let mut points = scan::sample_surface_points(x.poly(), n_samples - n_samples / 2, rng);
    points.extend(scan::sample_points_on_fixed_quadric(x.poly(), n_samples / 2, rng));
    let mut report = FixedLocusReport {
        field: field.spec(),
        checked: 0,
        fixed: 0,
        on_quadric: 0,
        fixed_off_quadric: 0,
        quadric_not_fixed: 0,
        skipped: 0,
    };
    for p in &points {
        if singular.contains(p) {
            report.skipped += 1;
            continue;
        }
        let Some(img) = t1.apply(p) else {
            report.skipped += 1;
            continue;
        };
        let c = p.coords();
        let q = field.add(&field.mul(&c[0], &c[1]), &field.mul(&c[2], &c[3]));
        let fixed = &img == p;
        let on = q.index() == 0;
        report.checked += 1;
        report.fixed += fixed as usize;
        report.on_quadric += on as usize;
        report.fixed_off_quadric += (fixed && !on) as usize;
        report.quadric_not_fixed += (on && !fixed) as usize;
    }
    Ok(report)
}

/// The quartic `x0^3 x1 + x1^3 x2 + x2^3 x3 + x3^3 x0` with the involution
/// `[x2, x3, x0, x1]`.
pub fn cyclic_fixture(field: &FiniteField) -> (QuarticSurface<FiniteField>, CremonaMap) {
    let f = parse_poly(field, 4, "x0^3*x1 + x1^3*x2 + x2^3*x3 + x3^3*x0").expect("valid");
    let sigma = CremonaMap::parse(field, "sigma", ["x2", "x3", "x0", "x1"], MapRole::Bitangent).expect("valid");
    (QuarticSurface::new(f).expect("reduced quartic"), sigma)
}

/// `p0^2 p3 + p0 p1 p4 + p1^2 p2 + p4^2` after substituting the invariants
/// `p0 = x0+x2, p1 = x1+x3, p2 = x0 x2, p3 = x1 x3, p4 = x0 x1 + x2 x3`.
pub fn cyclic_invariant_relation(field: &FiniteField) -> MultiPoly<FiniteField> {
    let inv: Vec<MultiPoly<FiniteField>> = ["x0 + x2", "x1 + x3", "x0*x2", "x1*x3", "x0*x1 + x2*x3"]
        .iter()
        .map(|s| parse_poly(field, 4, s).expect("valid"))
        .collect();
    let rel = parse_poly(field, 5, "x0^2*x3 + x0*x1*x4 + x1^2*x2 + x4^2").expect("valid");
    rel.substitute(&inv).expect("five invariants")
}

/// At sampled points `p` of the cyclic fixture off the fixed line, checks
/// that `F(s p + t σ(p))` has a root of multiplicity at least 2 at `(1:1)`,
/// the point `p + σ(p)` of the fixed line. Returns `(checked, failures)`.
pub fn cyclic_tangency_check<R: Rng + ?Sized>(field: &FiniteField, n_samples: usize, rng: &mut R) -> (usize, usize) {
    let (x, sigma) = cyclic_fixture(field);
    let points = scan::sample_surface_points(x.poly(), 3 * n_samples + 50, rng);
    let (mut checked, mut failures) = (0, 0);
    for p in &points {
        if checked == n_samples {
            break;
        }
        // unnormalized image, so that (1:1) is the point p + σ(p)
        let img: [Gf; 4] = std::array::from_fn(|i| sigma.components[i].eval(p.coords()));
        let Ok(form) = x.poly().restrict_to_line(p.coords(), &img) else { continue };
        checked += 1;
        if form.multiplicity_at(&Gf::ONE, &Gf::ONE).map_or(true, |m| m < 2) {
            failures += 1;
        }
    }
    (checked, failures)
}

/// `w^2 (x + y + z)^2 + x (y^3 + x^2 z)`.
pub fn referee_fixture(field: &FiniteField) -> QuarticSurface<FiniteField> {
    let f = parse_poly(field, 4, "w^2*x^2 + w^2*y^2 + w^2*z^2 + x*y^3 + x^3*z").expect("valid");
    QuarticSurface::new(f).expect("reduced quartic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitangent::inseparable_centers;
    use crate::fields::field_make;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf2() -> FiniteField {
        field_make(2, 1).unwrap()
    }

    #[test]
    fn specialized_equations() {
        let f = gf2();
        let o = KummerFamily::ordinary(&f, Gf::ONE, Gf::ONE, Gf::ONE).unwrap();
        assert_eq!(
            *kummer_surface(&o).poly(),
            parse_poly(&f, 4, "x^2*y^2 + z^2*w^2 + x^2*z^2 + y^2*w^2 + x^2*w^2 + y^2*z^2 + x*y*z*w").unwrap()
        );
        let r = KummerFamily::rank1(&f, Gf::ZERO, Gf::ONE).unwrap();
        assert_eq!(
            *kummer_surface(&r).poly(),
            parse_poly(&f, 4, "x^4 + x^2*z*w + x*y*z^2 + y^2*w^2 + z^4").unwrap()
        );
        let s = KummerFamily::supersingular(&f, Gf::ZERO).unwrap();
        assert_eq!(
            *kummer_surface(&s).poly(),
            parse_poly(&f, 4, "x^3*w + x^2*y*z + x*y^3 + y^2*w^2 + z^4").unwrap()
        );
    }

    #[test]
    fn parameter_constraints() {
        let f = field_make(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = KummerFamily::parse("ordinary:0,1,1", &f, &mut rng).unwrap_err();
        assert_eq!(err.to_string(), "a must be nonzero");
        assert_eq!(KummerFamily::parse("rank1:1,0", &f, &mut rng).unwrap_err(), KummerError::ZeroParameter("beta"));
        let fam = KummerFamily::parse("ordinary:[1,1,0],[0,1,0],1", &f, &mut rng).unwrap();
        assert_eq!(fam.spec(), "ordinary:[1,1,0],[0,1,0],[1,0,0]");
        assert!(KummerFamily::parse("supersingular:rand", &f, &mut rng).is_ok());
        assert!(KummerFamily::parse("elliptic:1", &f, &mut rng).is_err());
        assert!(KummerFamily::parse("ordinary:1,1", &f, &mut rng).is_err());
        let odd = field_make(3, 1).unwrap();
        assert!(matches!(KummerFamily::supersingular(&odd, Gf::ZERO), Err(KummerError::NotChar2(_))));
    }

    fn families(f: &FiniteField, seed: u64) -> Vec<KummerFamily> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ["ordinary", "rank1", "supersingular"]
            .iter()
            .map(|k| KummerFamily::random(f, k, &mut rng).unwrap())
            .collect()
    }

    #[test]
    fn singular_points_of_families() {
        for k in [2, 3, 4] {
            let f = field_make(2, k).unwrap();
            for fam in families(&f, k as u64) {
                let rep = singular_points(&fam).unwrap();
                assert_eq!(rep.points, listed_singular_points(&fam));
                assert!(!rep.scanned_degrees.is_empty());
            }
        }
    }

    #[test]
    fn trope_conics() {
        let f = gf2();
        let r = KummerFamily::rank1(&f, Gf::ZERO, Gf::ONE).unwrap();
        let data = trope_data(&r).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].1, parse_poly(&f, 4, "y*w + z^2").unwrap());
        let s = KummerFamily::supersingular(&f, Gf::ZERO).unwrap();
        let data = trope_data(&s).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].1, parse_poly(&f, 4, "y*w + z^2").unwrap());
        let k = field_make(2, 4).unwrap();
        for fam in families(&k, 8) {
            for (plane, conic) in trope_data(&fam).unwrap() {
                let x = kummer_surface(&fam);
                assert_eq!(x.plane_section(&plane).total_degree(), Some(4));
                assert_eq!(conic.homogeneous_degree(), Some(2));
            }
        }
    }

    #[test]
    fn listed_maps() {
        let f = field_make(2, 3).unwrap();
        let fams = families(&f, 2);
        assert_eq!(involutions(&fams[0])[0].to_text(), vec!["x0*x2*x3", "x1*x2*x3", "x0*x1*x2", "x0*x1*x3"]);
        assert_eq!(involutions(&fams[1])[1].to_text(), vec!["x0^2*x2", "x0^2*x3", "x0*x2^2", "x1*x2^2"]);
        let total: usize = fams.iter().map(|fam| involutions(fam).len()).sum();
        assert_eq!(total, 7);
    }

    #[test]
    fn ordinary_maps_are_inversion_composed_with_swaps() {
        let f = field_make(2, 3).unwrap();
        let fam = &families(&f, 3)[0];
        let t = standard_inversion(&f);
        for (g, stored) in pair_swaps(&f).iter().zip(involutions(fam)) {
            let (_, a) = remove_common_factor(&g.compose(&t).components);
            let (_, b) = remove_common_factor(&stored.components);
            assert_eq!(a, b, "{}", stored.name);
        }
    }

    #[test]
    fn tau_relates_the_rank1_involutions() {
        let f = field_make(2, 4).unwrap();
        let fam = &families(&f, 4)[1];
        let maps = involutions(fam);
        let (sigma1, sigma2, tau) = (&maps[0], &maps[1], &maps[2]);
        let composed = tau.compose(sigma1);
        // equal up to a common factor and a diagonal scaling of coordinates
        let (_, a) = remove_common_factor(&composed.components);
        let (_, b) = remove_common_factor(&sigma2.components);
        for (p, q) in a.iter().zip(&b) {
            let (lp, lq) = (p.leading_term().unwrap(), q.leading_term().unwrap());
            assert_eq!(lp.0, lq.0);
            let ratio = f.div(lp.1, lq.1).unwrap();
            assert_eq!(*p, q.scale(&ratio));
        }
    }

    #[test]
    fn preserves_and_involutive() {
        for k in [3, 4] {
            let f = field_make(2, k).unwrap();
            for fam in families(&f, 10 + k as u64) {
                let x = kummer_surface(&fam);
                for t in involutions(&fam) {
                    let pres = check_preserves(&x, &t);
                    assert!(pres.holds, "{} does not preserve", t.name);
                    let m = pres.multiplier.unwrap();
                    assert_eq!(m.homogeneous_degree(), Some(4 * t.degree() - 4));
                    assert!(check_involutive(&t).holds, "{} not involutive", t.name);
                }
            }
        }
        let f = gf2();
        let random_map = CremonaMap::parse(&f, "r", ["x^2*y", "z^3", "x*w^2", "y^3"], MapRole::Auxiliary).unwrap();
        let x = kummer_surface(&KummerFamily::ordinary(&f, Gf::ONE, Gf::ONE, Gf::ONE).unwrap());
        assert!(!check_preserves(&x, &random_map).holds);
        assert!(!check_involutive(&random_map).holds);
        let g1 = &pair_swaps(&f)[0];
        assert_eq!(check_involutive(g1).factor, Some(MultiPoly::one(&f, 4)));
    }

    #[test]
    fn sigma2_involution_factor_degree() {
        let f = field_make(2, 3).unwrap();
        let fam = &families(&f, 5)[1];
        let sigma2 = &involutions(fam)[1];
        let inv = check_involutive(sigma2);
        assert_eq!(inv.factor.unwrap().homogeneous_degree(), Some(8));
    }

    #[test]
    fn bitangent_involutions_small() {
        let f = field_make(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for fam in families(&f, 6) {
            let x = kummer_surface(&fam);
            for t in involutions(&fam).iter().filter(|t| t.role == MapRole::Bitangent) {
                let rep = check_bitangent_involution(&x, t, &f, 20, &mut rng);
                assert!(rep.passes(), "{rep:?}");
            }
        }
    }

    #[test]
    fn ordinary_skew_parametrization_is_square() {
        // F(s x0, s y0, t z0, t w0) has no odd terms in (s, t)
        let f = field_make(2, 3).unwrap();
        let fam = &families(&f, 7)[0];
        let x = kummer_surface(fam);
        let nv = 6;
        let v = MultiPoly::vars(&f, nv);
        let images = vec![v[4].mul(&v[0]), v[4].mul(&v[1]), v[5].mul(&v[2]), v[5].mul(&v[3])];
        let g = x.poly().substitute(&images).unwrap();
        for (m, _) in g.terms() {
            assert_eq!(m.exps()[4] % 2, 0);
        }
    }

    #[test]
    fn cone_minors() {
        let f = field_make(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let fams = families(&f, 9);
        let sigma2 = &involutions(&fams[1])[1];
        let cong = plucker_congruence(sigma2);
        let expect = |s: [&str; 6]| -> Vec<MultiPoly<FiniteField>> { s.iter().map(|t| parse_poly(&f, 4, t).unwrap()).collect() };
        assert_eq!(cong.minors, expect(["x^2", "0", "x*z", "x*z", "x*w + y*z", "z^2"]));
        assert_eq!(cong.common_factor, parse_poly(&f, 4, "x*w + y*z").unwrap());
        for rel in declared_relations(&f, "sigma2") {
            assert_eq!(check_relation(&cong, &rel, None, &f, 0, &mut rng), RelationVerdict::Identity, "{}", rel.name);
        }
        let t = &involutions(&fams[2])[0];
        let cong = plucker_congruence(t);
        assert_eq!(cong.minors, expect(["0", "x^2", "x*y", "x*y", "y^2", "x*w + y*z"]));
        for rel in declared_relations(&f, "T") {
            assert_eq!(check_relation(&cong, &rel, None, &f, 0, &mut rng), RelationVerdict::Identity, "{}", rel.name);
        }
    }

    #[test]
    fn inversion_congruence() {
        let f = field_make(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let fam = &families(&f, 15)[0];
        let x = kummer_surface(fam);
        let cong = plucker_congruence(&standard_inversion(&f));
        let expect: Vec<_> = ["z*w*x^2 + z*w*y^2", "y*w*x^2 + y*w*z^2", "y*z*x^2 + y*z*w^2", "x*w*y^2 + x*w*z^2", "x*z*y^2 + x*z*w^2", "x*y*z^2 + x*y*w^2"]
            .iter()
            .map(|s| parse_poly(&f, 4, s).unwrap())
            .collect();
        assert_eq!(cong.minors, expect);
        assert!(cong.common_factor.is_constant());
        let quad = &declared_relations(&f, "T-inversion")[0];
        assert_eq!(check_relation(&cong, quad, None, &f, 0, &mut rng), RelationVerdict::Identity);
        let k6 = field_make(2, 6).unwrap();
        let cubic = inversion_cubic_relation(&f);
        assert!(check_relation(&cong, &cubic, Some(&x), &k6, 50, &mut rng).holds());
    }

    #[test]
    fn predicted_lines_match_counts_small_field() {
        let f = field_make(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for fam in families(&f, 17) {
            let (m, n) = fam.expected_bidegree();
            let q = sample_generic_point(&fam, &mut rng).unwrap();
            let rep = count_with_prediction(&fam, &Sample::Point(q)).unwrap();
            assert_eq!(rep.count(), m, "{}", fam.spec());
            assert_eq!(rep.matches(), Some(true));
            let u = sample_generic_plane(&fam, &mut rng).unwrap();
            let rep = count_with_prediction(&fam, &Sample::Plane(u)).unwrap();
            assert_eq!(rep.count(), n, "{}", fam.spec());
            assert_eq!(rep.matches(), Some(true));
        }
    }

    #[test]
    fn cone_rays_meet_axis() {
        let f = field_make(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for fam in &families(&f, 19)[1..] {
            let axis = cone_axis(fam).unwrap();
            for _ in 0..5 {
                let q = sample_generic_point(fam, &mut rng).unwrap();
                let ray = cone_ray(fam, &Sample::Point(q.clone())).unwrap().unwrap();
                assert!(ray.contains_point(&f, &q));
                assert!(ray.meets(&f, &axis));
            }
        }
    }

    #[test]
    fn fixed_locus_small() {
        let f = field_make(2, 3).unwrap();
        let k = field_make(2, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let fam = &families(&f, 21)[0];
        let rep = fixed_locus_check(fam, &k, 60, &mut rng).unwrap();
        assert!(rep.passes(), "{rep:?}");
        assert!(rep.fixed > 0 && rep.fixed < rep.checked);
        assert!(fixed_locus_check(&families(&f, 21)[1], &k, 10, &mut rng).is_err());
    }

    #[test]
    fn cyclic_fixture_properties() {
        let f = gf2();
        assert!(cyclic_invariant_relation(&f).is_zero());
        let (x, sigma) = cyclic_fixture(&f);
        assert!(check_preserves(&x, &sigma).holds);
        let one = ProjPoint::new(&f, [Gf::ONE; 4]).unwrap();
        assert!(x.poly().partials().iter().all(|p| p.eval(one.coords()) == Gf::ZERO));
        assert!(x.contains(&one));
        let k = field_make(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let (checked, failures) = cyclic_tangency_check(&k, 30, &mut rng);
        assert_eq!((checked, failures), (30, 0));
    }

    #[test]
    fn referee_fixture_properties() {
        let f = gf2();
        let x = referee_fixture(&f);
        let centre = ProjPoint::new(&f, [Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE]).unwrap();
        assert_eq!(inseparable_centers(&x), vec![centre]);
        assert!(trope_plane_detect(&x, &ProjPlane::coordinate(&f, 0)).is_some());
        let squared = ProjPlane::new(&f, [Gf::ONE, Gf::ONE, Gf::ONE, Gf::ZERO]).unwrap();
        assert!(trope_plane_detect(&x, &squared).is_none());
        for fam in families(&field_make(2, 3).unwrap(), 23) {
            assert!(inseparable_centers(&kummer_surface(&fam)).is_empty());
        }
    }
}
