use anyhow::bail;
use bitcong::bitangent::{
    class_count, draw_generic, inseparable_centers, order_count, GenericityPolicy, QuarticSurface, Sample,
};
use bitcong::fields::{AnyField, Field, FiniteField, Gf};
use bitcong::kummer::{self, KummerFamily, MapRole};
use bitcong::poly::{disc_sqrt_char2, parse_poly, universal_discriminant_mod2};
use bitcong::projgeom::{random_plane, random_point};
use bitcong::quartic_curves::{self as qc, PlaneQuartic, WallKind};
use bitcong::scan;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Common, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

pub struct Report {
    pub json: Value,
    pub outcome: Outcome,
    /// Printed to stderr after the report.
    pub message: Option<String>,
}

fn finite_field(common: &Common, default: &str) -> anyhow::Result<FiniteField> {
    let spec = common.field.as_deref().unwrap_or(default);
    match AnyField::parse(spec)? {
        AnyField::Finite(f) => Ok(f),
        AnyField::Rationals => bail!("a finite field is required, got {spec}"),
    }
}

struct Suite {
    checks: Vec<Value>,
    first_failure: Option<String>,
}

impl Suite {
    fn new() -> Self {
        Suite { checks: Vec::new(), first_failure: None }
    }

    fn record(&mut self, name: &str, pass: bool, detail: Value) {
        if !pass && self.first_failure.is_none() {
            self.first_failure = Some(name.to_string());
        }
        self.checks.push(json!({"check": name, "pass": pass, "detail": detail}));
    }
}

pub fn verify_kummer(family: &str, common: &Common) -> anyhow::Result<Report> {
    let field = finite_field(common, "GF(2^5)")?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let fam = KummerFamily::parse(family, &field, &mut rng)?;
    let samples = common.samples.unwrap_or(20);
    let x = kummer::kummer_surface(&fam);
    let (order, class) = fam.expected_bidegree();
    let mut suite = Suite::new();

    suite.record("surface", true, json!(x.poly().to_text()));

    match kummer::singular_points(&fam) {
        Ok(rep) => suite.record(
            "singular_points",
            true,
            json!({
                "points": rep.points.iter().map(|p| p.format(&field)).collect::<Vec<_>>(),
                "scanned_degrees": rep.scanned_degrees,
            }),
        ),
        Err(e) => suite.record("singular_points", false, json!(e.to_string())),
    }

    match kummer::trope_data(&fam) {
        Ok(data) => suite.record(
            "tropes",
            true,
            json!(data
                .iter()
                .map(|(plane, conic)| json!({"plane": plane.format(&field), "conic": conic.to_text()}))
                .collect::<Vec<_>>()),
        ),
        Err(e) => suite.record("tropes", false, json!(e.to_string())),
    }

    let centers = inseparable_centers(&x);
    suite.record(
        "inseparable_centers",
        centers.is_empty(),
        json!(centers.iter().map(|p| p.format(&field)).collect::<Vec<_>>()),
    );

    for t in kummer::involutions(&fam) {
        let pres = kummer::check_preserves(&x, &t);
        suite.record(
            &format!("preserves:{}", t.name),
            pres.holds,
            json!({"multiplier": pres.multiplier.map(|m| m.to_text())}),
        );
        let inv = kummer::check_involutive(&t);
        suite.record(
            &format!("involutive:{}", t.name),
            inv.holds,
            json!({"factor": inv.factor.map(|h| h.to_text())}),
        );
        if t.role != MapRole::Bitangent {
            continue;
        }
        let rep = kummer::check_bitangent_involution(&x, &t, &field, samples, &mut rng);
        suite.record(
            &format!("bitangent:{}", t.name),
            rep.passes(),
            json!({
                "symbolic": rep.symbolic_ok,
                "identically_zero": rep.identically_zero,
                "remainders": rep.remainders,
                "checked": rep.checked,
                "failures": rep.failures,
                "skipped": rep.skipped,
            }),
        );
        let cong = kummer::plucker_congruence(&t);
        let mut all = true;
        let rels: Vec<Value> = kummer::declared_relations(&field, &t.name)
            .iter()
            .map(|rel| {
                let v = kummer::check_relation(&cong, rel, Some(&x), &field, samples, &mut rng);
                all &= v.holds();
                json!({"relation": rel.name, "verdict": v.label()})
            })
            .collect();
        suite.record(
            &format!("plucker:{}", t.name),
            all,
            json!({
                "common_factor": cong.common_factor.to_text(),
                "minors": cong.minors.iter().map(|m| m.to_text()).collect::<Vec<_>>(),
                "relations": rels,
            }),
        );
    }

    if fam.kind() == "ordinary" {
        let cong = kummer::plucker_congruence(&kummer::standard_inversion(&field));
        let rel = kummer::inversion_cubic_relation(&field);
        let v = kummer::check_relation(&cong, &rel, Some(&x), &field, samples, &mut rng);
        suite.record("plucker:inversion_cubic", v.holds(), json!({"relation": rel.name, "verdict": v.label()}));
    }

    for (mode, expected) in [(Mode::Point, order), (Mode::Plane, class)] {
        let name = if mode == Mode::Point { "order" } else { "class" };
        let mut counts = Vec::new();
        let mut mismatches = 0;
        let mut axis_misses = 0;
        for _ in 0..samples {
            let sample = match mode {
                Mode::Point => Sample::Point(kummer::sample_generic_point(&fam, &mut rng)?),
                Mode::Plane => Sample::Plane(kummer::sample_generic_plane(&fam, &mut rng)?),
            };
            let rep = kummer::count_with_prediction(&fam, &sample)?;
            counts.push(rep.count());
            if rep.count() != expected || rep.matches() != Some(true) {
                mismatches += 1;
            }
            if let (Some(axis), Some(ray)) = (kummer::cone_axis(&fam), kummer::cone_ray(&fam, &sample)?) {
                if !ray.meets(&field, &axis) {
                    axis_misses += 1;
                }
            }
        }
        suite.record(
            name,
            mismatches == 0,
            json!({"expected": expected, "counts": counts, "prediction_mismatches": mismatches}),
        );
        if kummer::cone_axis(&fam).is_some() {
            suite.record(&format!("cone_rays_meet_axis:{name}"), axis_misses == 0, json!({"misses": axis_misses}));
        }
    }

    if fam.kind() == "ordinary" {
        let rep = kummer::fixed_locus_check(&fam, &field, samples * 10, &mut rng)?;
        suite.record(
            "fixed_locus",
            rep.passes(),
            json!({
                "checked": rep.checked,
                "fixed": rep.fixed,
                "on_quadric": rep.on_quadric,
                "fixed_off_quadric": rep.fixed_off_quadric,
                "quadric_not_fixed": rep.quadric_not_fixed,
                "skipped": rep.skipped,
            }),
        );
    }

    let passed = suite.first_failure.is_none();
    let json = json!({
        "schema": 1,
        "command": "verify-kummer",
        "family": fam.spec(),
        "field": field.spec(),
        "seed": common.seed,
        "samples": samples,
        "bidegree": [order, class],
        "checks": suite.checks,
        "passed": passed,
    });
    let message = suite.first_failure.map(|name| format!("verification failed: {name}"));
    Ok(Report { json, outcome: if passed { Outcome::Pass } else { Outcome::Fail }, message })
}

fn random_sample<R: Rng>(
    x: &QuarticSurface<FiniteField>,
    mode: Mode,
    policy: &GenericityPolicy,
    rng: &mut R,
) -> anyhow::Result<Sample> {
    let f = x.field();
    Ok(draw_generic(rng, |rng| match mode {
        Mode::Point => {
            let q = random_point(f, rng);
            policy.check_point(x, &q).map(|_| Sample::Point(q))
        }
        Mode::Plane => {
            let u = random_plane(f, rng);
            policy.check_plane(x, &u).map(|_| Sample::Plane(u))
        }
    })?)
}

pub fn count(mode: Mode, family: Option<&str>, poly: &Option<String>, common: &Common) -> anyhow::Result<Report> {
    let field = finite_field(common, "GF(2^5)")?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let samples = common.samples.unwrap_or(1);
    let mut reports = Vec::new();
    let mut outcome = Outcome::Pass;
    match (family, poly) {
        (Some(spec), _) => {
            let fam = KummerFamily::parse(spec, &field, &mut rng)?;
            for _ in 0..samples {
                let sample = match mode {
                    Mode::Point => Sample::Point(kummer::sample_generic_point(&fam, &mut rng)?),
                    Mode::Plane => Sample::Plane(kummer::sample_generic_plane(&fam, &mut rng)?),
                };
                let rep = kummer::count_with_prediction(&fam, &sample)?;
                if rep.matches() != Some(true) {
                    outcome = Outcome::Fail;
                }
                reports.push(rep.to_json(Some(common.seed)));
            }
        }
        (None, Some(text)) => {
            let x = QuarticSurface::new(parse_poly(&field, 4, text)?)?;
            let policy = GenericityPolicy { section_depth: 2, ..Default::default() };
            for _ in 0..samples {
                let rep = match random_sample(&x, mode, &policy, &mut rng)? {
                    Sample::Point(q) => order_count(&x, &q),
                    Sample::Plane(u) => class_count(&x, &u),
                };
                let mut value = rep.to_json(Some(common.seed));
                if let Sample::Plane(u) = &rep.sample {
                    // the section's count over the closure, by stabilization
                    let section = PlaneQuartic::new(x.plane_section(u))?;
                    let sec = qc::plane_bitangent_count(&section, common.k_max)?;
                    if !sec.stabilized && outcome == Outcome::Pass {
                        outcome = Outcome::Inconclusive;
                    }
                    value["section"] = sec.to_json();
                }
                reports.push(value);
            }
        }
        (None, None) => bail!("count needs --family, --poly or --poly-file"),
    }
    let json = json!({
        "schema": 1,
        "command": "count",
        "mode": if mode == Mode::Point { "point" } else { "plane" },
        "field": field.spec(),
        "seed": common.seed,
        "reports": reports,
    });
    Ok(Report { json, outcome, message: None })
}

pub fn disc(degree: usize, common: &Common) -> anyhow::Result<Report> {
    let field = finite_field(common, "GF(2^4)")?;
    if field.p() != 2 {
        bail!("disc works in characteristic 2, got {}", field.spec());
    }
    let samples = common.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let d = universal_discriminant_mod2(degree)?;
    let p = disc_sqrt_char2(degree)?;
    let square_ok = p.mul(&p) == d;
    let deg = p.homogeneous_degree();
    let (de, pe) = (scan::extend_poly(&d, &field), scan::extend_poly(&p, &field));
    let mut failures = 0;
    for _ in 0..samples {
        let coeffs: Vec<Gf> = (0..=degree).map(|_| field.elem(rng.gen_range(0..field.size()))).collect();
        let pv = pe.eval(&coeffs);
        if de.eval(&coeffs) != field.mul(&pv, &pv) {
            failures += 1;
        }
    }
    let pass = square_ok && deg == Some(degree as u32 - 1) && failures == 0;
    let json = json!({
        "schema": 1,
        "command": "disc",
        "degree": degree,
        "discriminant_mod2": d.to_text(),
        "sqrt": p.to_text(),
        "sqrt_degree": deg,
        "square_identity": square_ok,
        "field": field.spec(),
        "seed": common.seed,
        "random_forms": samples,
        "random_failures": failures,
        "passed": pass,
    });
    Ok(Report { json, outcome: if pass { Outcome::Pass } else { Outcome::Fail }, message: None })
}

pub fn wall(kind: Option<&str>, poly: &Option<String>, common: &Common) -> anyhow::Result<Report> {
    let (curve, kind) = match (kind, poly) {
        (Some(k), _) => {
            let kind: WallKind = k.parse()?;
            (qc::wall_fixture(kind), Some(kind))
        }
        (None, Some(text)) => {
            let field = finite_field(common, "GF(2)")?;
            (PlaneQuartic::parse(&field, text)?, None)
        }
        (None, None) => bail!("wall needs --kind, --poly or --poly-file"),
    };
    if let qc::Smoothness::Singular { k, point } = qc::curve_is_smooth(&curve, 2) {
        let f = FiniteField::new(2, k)?;
        bail!("curve is singular at {:?} over {}", qc::format_line(&f, &point), f.spec());
    }
    let rep = qc::plane_bitangent_count(&curve, common.k_max)?;
    let mut json = rep.to_json();
    json["command"] = json!("wall");
    json["curve"] = json!(curve.poly().to_text());
    let mut outcome = if rep.stabilized { Outcome::Pass } else { Outcome::Inconclusive };
    let mut message = (!rep.stabilized).then(|| format!("count did not stabilize by k = {}", common.k_max));
    if let Some(kind) = kind {
        let listed = qc::listed_lines(kind, &rep.witness_field);
        let contained = listed.iter().all(|l| rep.witnesses.contains(l));
        json["kind"] = json!(kind.to_string());
        json["listed_contained"] = json!(contained);
        if !contained || (rep.stabilized && rep.count() != Some(kind.expected_count())) {
            outcome = Outcome::Fail;
            message = Some(format!("kind {kind} fixture does not match its listed bitangents"));
        }
    }
    Ok(Report { json, outcome, message })
}

pub fn fixtures(_common: &Common) -> anyhow::Result<Report> {
    let walls: Vec<Value> = WallKind::ALL
        .iter()
        .map(|&kind| {
            let (field, q) = qc::fixture_q(kind);
            let qp = parse_poly(&field, 3, q).expect("pinned");
            let evals: Vec<Value> = kind
                .constraint_points()
                .iter()
                .map(|pt| {
                    let v = qp.eval(&pt.map(|i| field.elem(i)));
                    json!({"point": pt, "value": field.format_elem(&v)})
                })
                .collect();
            json!({
                "kind": kind.to_string(),
                "field": field.spec(),
                "Q": qp.to_text(),
                "curve": qc::wall_fixture(kind).poly().to_text(),
                "constraints": evals,
                "listed_bitangents": qc::listed_bitangents(kind),
            })
        })
        .collect();
    let gf2 = FiniteField::new(2, 1)?;
    let (cyc, sigma) = kummer::cyclic_fixture(&gf2);
    let referee = kummer::referee_fixture(&gf2);
    let centers = inseparable_centers(&referee);
    let json = json!({
        "schema": 1,
        "command": "fixtures",
        "wall": walls,
        "cyclic": {
            "field": gf2.spec(),
            "surface": cyc.poly().to_text(),
            "involution": sigma.to_text(),
            "invariant_relation_vanishes": kummer::cyclic_invariant_relation(&gf2).is_zero(),
        },
        "referee": {
            "field": gf2.spec(),
            "surface": referee.poly().to_text(),
            "inseparable_centers": centers.iter().map(|p| p.format(&gf2)).collect::<Vec<_>>(),
        },
    });
    Ok(Report { json, outcome: Outcome::Pass, message: None })
}
