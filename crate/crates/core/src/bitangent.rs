//! Tangency of lines to quartic surfaces and exhaustive counts of bitangent
//! lines through a point (order) or inside a plane (class).

use std::collections::BTreeMap;
use std::ops::Range;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::fields::{Field, FiniteField, Gf};
use crate::linalg;
use crate::poly::{squarefree_decomposition, BinaryForm, MultiPoly, PolyError};
use crate::projgeom::{enum_lines_in, enum_lines_through, GeomError, PluckerLine, ProjPlane, ProjPoint};
use crate::scan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitangentError {
    #[error("not a quartic surface: {0}")]
    NotQuartic(String),
    #[error("the quartic is a perfect square (non-reduced surface)")]
    Square,
    #[error("no generic sample after {attempts} draws (last rejection: {reason})")]
    NoGenericSample { attempts: usize, reason: String },
    #[error("expected bidegree needs d >= 4, got {0}")]
    DegreeTooSmall(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSurface<F: Field> {
    f: MultiPoly<F>,
}

impl<F: Field> QuarticSurface<F> {
    pub fn new(f: MultiPoly<F>) -> Result<Self, BitangentError> {
        if f.nvars() != 4 {
            return Err(BitangentError::NotQuartic(format!("{} variables", f.nvars())));
        }
        if f.is_zero() {
            return Err(BitangentError::NotQuartic("zero polynomial".into()));
        }
        if f.homogeneous_degree() != Some(4) {
            return Err(BitangentError::NotQuartic("not homogeneous of degree 4".into()));
        }
        if f.sqrt().is_some() {
            return Err(BitangentError::Square);
        }
        Ok(QuarticSurface { f })
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.f
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn contains(&self, x: &ProjPoint<F::Elem>) -> bool {
        self.field().is_zero(&self.f.eval(x.coords()))
    }

    /// Binary quartic `F(s a + t b)` for the spanning points `a, b` of `line`.
    pub fn restrict(&self, line: &PluckerLine<F::Elem>) -> BinaryForm<F> {
        let (a, b) = line.spanning_points(self.field());
        self.f.restrict_unchecked(a.coords(), b.coords(), 4)
    }

    /// Plane section as a ternary quartic in the coordinates `x_j`, `j` not
    /// the pivot of `plane`, obtained by eliminating the pivot variable.
    pub fn plane_section(&self, plane: &ProjPlane<F::Elem>) -> MultiPoly<F> {
        let field = self.field();
        let i0 = plane.pivot(field);
        let others: Vec<usize> = (0..4).filter(|&j| j != i0).collect();
        let mut images = Vec::with_capacity(4);
        for i in 0..4 {
            if let Some(pos) = others.iter().position(|&j| j == i) {
                images.push(MultiPoly::var(field, 3, pos));
            } else {
                let mut lin = MultiPoly::zero(field, 3);
                for (pos, &j) in others.iter().enumerate() {
                    let c = field.neg(&plane.coeffs()[j]);
                    lin = lin.add(&MultiPoly::var(field, 3, pos).scale(&c));
                }
                images.push(lin);
            }
        }
        self.f.substitute(&images).expect("four images")
    }
}

/// How a line meets the surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangencyClass {
    Contained,
    Transversal,
    SimpleTangent,
    /// Signature `[2,2]` or `[4]`.
    Bitangent { signature: Vec<u32> },
    /// Signature `[3,1]`.
    Flex { signature: Vec<u32> },
}

impl TangencyClass {
    pub fn from_form<F: Field>(form: &BinaryForm<F>) -> Self {
        if form.is_zero() {
            return TangencyClass::Contained;
        }
        let signature = squarefree_decomposition(form).expect("nonzero form").signature();
        match signature.as_slice() {
            [2, 2] | [4] => TangencyClass::Bitangent { signature },
            [3, 1] => TangencyClass::Flex { signature },
            s if s.contains(&2) => TangencyClass::SimpleTangent,
            _ => TangencyClass::Transversal,
        }
    }

    pub fn is_bitangent(&self) -> bool {
        matches!(self, TangencyClass::Contained | TangencyClass::Bitangent { .. })
    }

    pub fn is_flex(&self) -> bool {
        match self {
            TangencyClass::Flex { .. } => true,
            TangencyClass::Bitangent { signature } => signature == &[4],
            _ => false,
        }
    }

    /// Short label used in reports: `contained`, `22`, `4`, `31`, `211`, `1111`.
    pub fn label(&self) -> String {
        match self {
            TangencyClass::Contained => "contained".into(),
            TangencyClass::Transversal => "1111".into(),
            TangencyClass::SimpleTangent => "211".into(),
            TangencyClass::Bitangent { signature } | TangencyClass::Flex { signature } => {
                signature.iter().map(u32::to_string).collect()
            }
        }
    }
}

pub fn classify_line<F: Field>(x: &QuarticSurface<F>, line: &PluckerLine<F::Elem>) -> TangencyClass {
    TangencyClass::from_form(&x.restrict(line))
}

/// Bitangent test without the full decomposition: in characteristic 2 a
/// binary quartic over a perfect field is a square iff its odd coefficients
/// vanish.
pub fn is_bitangent_form<F: Field>(form: &BinaryForm<F>) -> bool {
    let field = form.field();
    if field.characteristic() == 2 {
        let c = form.coeffs();
        return field.is_zero(&c[1]) && field.is_zero(&c[3]);
    }
    TangencyClass::from_form(form).is_bitangent()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub line: PluckerLine<Gf>,
    pub class: TangencyClass,
}

/// Bitangent lines among `get(i)` for `i` in `range`, in index order.
pub fn scan_lines<G>(x: &QuarticSurface<FiniteField>, range: Range<usize>, get: G) -> Vec<Witness>
where
    G: Fn(usize) -> PluckerLine<Gf> + Sync,
{
    range
        .into_par_iter()
        .filter_map(|i| {
            let line = get(i);
            let form = x.restrict(&line);
            is_bitangent_form(&form).then(|| Witness { class: TangencyClass::from_form(&form), line })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sample {
    Point(ProjPoint<Gf>),
    Plane(ProjPlane<Gf>),
}

impl Sample {
    pub fn mode(&self) -> &'static str {
        match self {
            Sample::Point(_) => "point",
            Sample::Plane(_) => "plane",
        }
    }

    pub fn format(&self, field: &FiniteField) -> Vec<String> {
        match self {
            Sample::Point(p) => p.format(field),
            Sample::Plane(u) => u.format(field),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub surface: String,
    pub field: FiniteField,
    pub sample: Sample,
    /// Point samples only: whether the point lies on the surface.
    pub sample_on_surface: bool,
    pub witnesses: Vec<Witness>,
    pub predicted: Option<Vec<PluckerLine<Gf>>>,
    pub elapsed_ms: u64,
}

impl CongruenceReport {
    pub fn count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn signature_counts(&self) -> BTreeMap<String, usize> {
        let mut out: BTreeMap<String, usize> = ["22", "4", "contained"].iter().map(|k| (k.to_string(), 0)).collect();
        for w in &self.witnesses {
            *out.entry(w.class.label()).or_default() += 1;
        }
        out
    }

    pub fn witness_lines(&self) -> Vec<PluckerLine<Gf>> {
        self.witnesses.iter().map(|w| w.line.clone()).collect()
    }

    /// Set equality of witnesses and prediction, when a prediction is attached.
    pub fn matches(&self) -> Option<bool> {
        let predicted = self.predicted.as_ref()?;
        let mut a = self.witness_lines();
        let mut b = predicted.clone();
        a.sort();
        b.sort();
        b.dedup();
        Some(a == b)
    }

    pub fn with_prediction(mut self, predicted: Vec<PluckerLine<Gf>>) -> Self {
        self.predicted = Some(predicted);
        self
    }

    pub fn to_json(&self, seed: Option<u64>) -> Value {
        let f = &self.field;
        json!({
            "surface": self.surface,
            "field": f.spec(),
            "seed": seed,
            "mode": self.sample.mode(),
            "sample": self.sample.format(f),
            "sample_on_surface": self.sample_on_surface,
            "count": self.count(),
            "signatures": self.signature_counts(),
            "witnesses": self.witnesses.iter().map(|w| w.line.format(f)).collect::<Vec<_>>(),
            "predicted": self.predicted.as_ref().map(|p| p.iter().map(|l| l.format(f)).collect::<Vec<_>>()),
            "match": self.matches(),
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

pub fn order_count(x: &QuarticSurface<FiniteField>, q: &ProjPoint<Gf>) -> CongruenceReport {
    let start = Instant::now();
    let lines = enum_lines_through(q, x.field());
    let witnesses = scan_lines(x, 0..lines.len(), |i| lines.get(i));
    CongruenceReport {
        surface: x.poly().to_text(),
        field: x.field().clone(),
        sample: Sample::Point(q.clone()),
        sample_on_surface: x.contains(q),
        witnesses,
        predicted: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn class_count(x: &QuarticSurface<FiniteField>, plane: &ProjPlane<Gf>) -> CongruenceReport {
    let start = Instant::now();
    let lines = enum_lines_in(plane, x.field());
    let witnesses = scan_lines(x, 0..lines.len(), |i| lines.get(i));
    CongruenceReport {
        surface: x.poly().to_text(),
        field: x.field().clone(),
        sample: Sample::Plane(plane.clone()),
        sample_on_surface: false,
        witnesses,
        predicted: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Points `q` with `sum q_i dF/dx_i = 0` identically, as a basis of the
/// underlying vector space (empty when there are none).
pub fn inseparable_centers<F: Field>(x: &QuarticSurface<F>) -> Vec<ProjPoint<F::Elem>> {
    let field = x.field();
    let partials = x.poly().partials();
    let mut monomials: Vec<_> = partials.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<F::Elem>> = monomials
        .iter()
        .map(|m| partials.iter().map(|p| p.coeff(m.exps())).collect())
        .collect();
    let mut basis: Vec<ProjPoint<F::Elem>> = linalg::kernel(field, &rows, 4)
        .into_iter()
        .map(|v| ProjPoint::new(field, std::array::from_fn(|i| v[i].clone())).expect("kernel vectors are nonzero"))
        .collect();
    basis.sort();
    basis
}

/// The conic `C` with `F|_plane = C^2`, written in the variables other than
/// the pivot of `plane`, if the plane is a trope.
pub fn trope_plane_detect<F: Field>(x: &QuarticSurface<F>, plane: &ProjPlane<F::Elem>) -> Option<MultiPoly<F>> {
    let section = x.plane_section(plane);
    let root = section.sqrt()?;
    if root.mul(&root) != section {
        return None;
    }
    let i0 = plane.pivot(x.field());
    let others: Vec<usize> = (0..4).filter(|&j| j != i0).collect();
    let images: Vec<MultiPoly<F>> = others.iter().map(|&j| MultiPoly::var(x.field(), 4, j)).collect();
    Some(root.substitute(&images).expect("three images"))
}

/// Reference bidegrees for surfaces of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedBidegree {
    /// Order of a general projection surface; in characteristic 2 an upper
    /// bound.
    pub order: u64,
    pub order_is_bound: bool,
    pub class: u64,
    /// Possible classes in characteristic 2 (quartics only).
    pub char2_classes: Option<Vec<u64>>,
    pub flex: (u64, u64),
}

pub fn expected_bidegree(d: u32, characteristic: u64) -> Result<ExpectedBidegree, BitangentError> {
    if d < 4 {
        return Err(BitangentError::DegreeTooSmall(d));
    }
    let d = d as u64;
    let m = d * (d - 1) * (d - 2) * (d - 3) / 2;
    let n = d * (d - 2) * (d * d - 9) / 2;
    let char2 = characteristic == 2;
    Ok(ExpectedBidegree {
        order: if char2 { m / 2 } else { m },
        order_is_bound: char2,
        class: n,
        char2_classes: (char2 && d == 4).then(|| vec![7, 4, 2, 1]),
        flex: (d * (d - 1) * (d - 2), 3 * d * (d - 2)),
    })
}

/// Effective stand-in for "general point / general plane".
#[derive(Clone, Debug, Default)]
pub struct GenericityPolicy {
    pub tropes: Vec<ProjPlane<Gf>>,
    pub lines: Vec<PluckerLine<Gf>>,
    pub singular_points: Vec<ProjPoint<Gf>>,
    /// Extension depth for the plane-section smoothness scan; 0 disables it.
    pub section_depth: u32,
}

pub const MAX_REDRAWS: usize = 100;

impl GenericityPolicy {
    pub fn check_point(&self, x: &QuarticSurface<FiniteField>, q: &ProjPoint<Gf>) -> Result<(), String> {
        let f = x.field();
        if x.contains(q) {
            return Err("point on the surface".into());
        }
        if self.tropes.iter().any(|t| t.contains(f, q)) {
            return Err("point on a trope plane".into());
        }
        if self.lines.iter().any(|l| l.contains_point(f, q)) {
            return Err("point on a distinguished line".into());
        }
        Ok(())
    }

    pub fn check_plane(&self, x: &QuarticSurface<FiniteField>, plane: &ProjPlane<Gf>) -> Result<(), String> {
        let f = x.field();
        if self.singular_points.iter().any(|p| plane.contains(f, p)) {
            return Err("plane through a singular point".into());
        }
        if self.tropes.contains(plane) {
            return Err("plane is a trope".into());
        }
        if self.lines.iter().any(|l| l.lies_in(f, plane)) {
            return Err("plane contains a distinguished line".into());
        }
        if self.section_depth > 0 {
            let section = x.plane_section(plane);
            if let Some((k, _)) = section_singularity(&section, self.section_depth) {
                return Err(format!("plane section singular over GF(2^{k})"));
            }
        }
        Ok(())
    }
}

/// First singular point of a plane curve over the extensions of degree
/// `m = 1..=depth` of its field, with the extension degree of the field
/// where it was found.
pub fn section_singularity(c: &MultiPoly<FiniteField>, depth: u32) -> Option<(u32, [Gf; 3])> {
    let base = c.field();
    for m in 1..=depth {
        let k = base.degree() * m;
        // extensions beyond the supported field size are not scanned
        let Ok(target) = FiniteField::new(base.p() as u64, k) else { break };
        let ext = scan::extend_poly(c, &target);
        if let Some(p) = scan::curve_singular_point(&ext) {
            return Some((k, p));
        }
    }
    None
}

/// Draws until `attempt` accepts, at most [`MAX_REDRAWS`] times.
pub fn draw_generic<T, R: Rng + ?Sized>(
    rng: &mut R,
    mut attempt: impl FnMut(&mut R) -> Result<T, String>,
) -> Result<T, BitangentError> {
    let mut reason = String::new();
    for _ in 0..MAX_REDRAWS {
        match attempt(rng) {
            Ok(v) => return Ok(v),
            Err(r) => reason = r,
        }
    }
    Err(BitangentError::NoGenericSample { attempts: MAX_REDRAWS, reason })
}
