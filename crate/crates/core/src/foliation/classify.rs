//! Certified classification of line foliations of 3-space into the three
//! normal forms.
//!
//! Radial fields are recognized purely algebraically from their degree-1
//! shape. Open books are found by sampling tangent lines, nominating candidate
//! axes through common-transversal computations, and then confirming with an
//! exact plane-pencil invariance identity; the sampled geometry only proposes,
//! the polynomial identity certifies. A field that survives both exact
//! rejections is tagged as the chord foliation of a twisted cubic, which is
//! the only remaining type.

use serde::Serialize;

use super::{
    common_transversals, tangent_line_at, FoliationError, Line3, Point3H, Transversals,
};
use crate::arith::GaussianRational;
use crate::field::PolyVectorField;
use crate::poly::{MultiPoly, VarSet};
use crate::rng::DetRng;

type Gq = GaussianRational;

const SAMPLE_LINES: usize = 8;
const POINT_RETRIES: usize = 50;
const SAMPLE_HEIGHT: u64 = 100;
const MAX_SUBSETS: usize = 20;

/// The trichotomy of line foliations in dimension three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoliationClass {
    /// All lines through one point (possibly at infinity: parallel lines).
    RadialPoint(Point3H),
    /// Radial in the pages of a plane pencil through the axis.
    OpenBook(Line3),
    /// Chords and tangents of a twisted cubic.
    CubicChords,
}

impl FoliationClass {
    pub fn tag(&self) -> &'static str {
        match self {
            FoliationClass::RadialPoint(_) => "RadialPoint",
            FoliationClass::OpenBook(_) => "OpenBook",
            FoliationClass::CubicChords => "CubicChords",
        }
    }
}

/// Linear forms cutting out the page pencil of an open-book axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisPencil {
    /// Affine axis `l1 = l2 = 0`; pages are `l1/l2 = const` and invariance is
    /// the identity `l2*X(l1) - l1*X(l2) = 0`.
    Planes { l1: MultiPoly, l2: MultiPoly },
    /// Axis at infinity; pages are the parallel planes `l3 = const` and
    /// invariance is `X(l3) = 0`.
    Parallel { l3: MultiPoly },
}

/// Exact, re-checkable witness attached to each classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyCertificate {
    /// `X_i = scale * (z_i - m_i)` (affine center) or `X_i = scale * d_i`
    /// (center at infinity with direction d).
    Radial { scale: Gq, center: Point3H },
    /// The pencil identity for the found axis vanishes identically.
    OpenBook { axis: Line3, pencil: AxisPencil },
    /// Both exact tests were rejected; the trichotomy forces the chord type.
    /// Stores every axis candidate that was exactly refuted.
    ChordsByElimination { rejected_axes: Vec<Line3> },
}

/// Classification result: class, certificate, the sampled tangent lines and
/// the seed that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub class: FoliationClass,
    pub certificate: ClassifyCertificate,
    pub sample_lines: Vec<Line3>,
    pub seed: u64,
}

/// Wire form of a report (all coordinates as grammar strings).
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReportWire {
    pub class: String,
    pub center: Option<Vec<String>>,
    pub axis: Option<Vec<String>>,
    pub certificate: CertificateWire,
    pub sample_lines: Vec<Vec<String>>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateWire {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil_forms: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil_residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected_axes: Option<Vec<Vec<String>>>,
}

fn coords_to_strings<const N: usize>(c: &[Gq; N]) -> Vec<String> {
    c.iter().map(|v| v.to_string()).collect()
}

impl ClassifyReport {
    /// Re-derive every exact check backing this report against the field.
    pub fn verify(&self, x: &PolyVectorField) -> bool {
        let x = match normalize_field(x) {
            Ok(f) => f,
            Err(_) => return false,
        };
        match (&self.class, &self.certificate) {
            (FoliationClass::RadialPoint(center), ClassifyCertificate::Radial { scale, center: c2 }) => {
                center == c2 && radial_matches(&x, scale, center)
            }
            (FoliationClass::OpenBook(axis), ClassifyCertificate::OpenBook { axis: a2, pencil }) => {
                axis == a2
                    && self.sample_lines.iter().all(|l| l.meets(axis))
                    && pencil_identity_holds(&x, pencil)
                    && pencil_cuts_axis(pencil, axis)
            }
            (FoliationClass::CubicChords, ClassifyCertificate::ChordsByElimination { rejected_axes }) => {
                radial_shape(&x).is_none()
                    && rejected_axes.iter().all(|axis| {
                        !self.sample_lines.iter().all(|l| l.meets(axis))
                            || !pencil_identity_holds(&x, &axis_pencil(axis, x.vars()))
                    })
            }
            _ => false,
        }
    }

    pub fn to_wire(&self) -> ClassifyReportWire {
        let (center, axis) = match &self.class {
            FoliationClass::RadialPoint(p) => (Some(coords_to_strings(p.coords())), None),
            FoliationClass::OpenBook(l) => (None, Some(coords_to_strings(l.plucker()))),
            FoliationClass::CubicChords => (None, None),
        };
        let certificate = match &self.certificate {
            ClassifyCertificate::Radial { scale, .. } => CertificateWire {
                kind: "radial-decomposition".into(),
                scale: Some(scale.to_string()),
                pencil_forms: None,
                pencil_residual: None,
                rejected_axes: None,
            },
            ClassifyCertificate::OpenBook { pencil, .. } => {
                let forms = match pencil {
                    AxisPencil::Planes { l1, l2 } => vec![l1.to_string(), l2.to_string()],
                    AxisPencil::Parallel { l3 } => vec![l3.to_string()],
                };
                CertificateWire {
                    kind: "pencil-invariance".into(),
                    scale: None,
                    pencil_forms: Some(forms),
                    pencil_residual: Some("0".into()),
                    rejected_axes: None,
                }
            }
            ClassifyCertificate::ChordsByElimination { rejected_axes } => CertificateWire {
                kind: "elimination".into(),
                scale: None,
                pencil_forms: None,
                pencil_residual: None,
                rejected_axes: Some(
                    rejected_axes.iter().map(|l| coords_to_strings(l.plucker())).collect(),
                ),
            },
        };
        ClassifyReportWire {
            class: self.class.tag().to_string(),
            center,
            axis,
            certificate,
            sample_lines: self
                .sample_lines
                .iter()
                .map(|l| coords_to_strings(l.plucker()))
                .collect(),
            seed: self.seed,
        }
    }
}

fn normalize_field(x: &PolyVectorField) -> Result<PolyVectorField, FoliationError> {
    if x.is_reduced() {
        Ok(x.clone())
    } else {
        let (r, _) = x.primitive_reduce()?;
        Ok(r)
    }
}

/// Decompose a degree-<=1 field as `scale*(z - m)` or a constant direction.
fn radial_shape(x: &PolyVectorField) -> Option<(Gq, Point3H)> {
    let n = x.arity();
    let vars = x.vars();
    if x.components().iter().any(|c| c.total_degree() > 1) {
        return None;
    }
    // linear part and constants
    let mut a = vec![vec![Gq::zero(); n]; n];
    let mut b = vec![Gq::zero(); n];
    for (i, c) in x.components().iter().enumerate() {
        for (m, coeff) in c.terms() {
            if m.is_unit() {
                b[i] = coeff.clone();
            } else {
                let j = m.0.iter().position(|&e| e == 1).expect("degree-1 monomial");
                a[i][j] = coeff.clone();
            }
        }
    }
    let embed = |v: &[Gq]| -> [Gq; 3] {
        std::array::from_fn(|k| v.get(k).cloned().unwrap_or_else(Gq::zero))
    };
    if a.iter().all(|row| row.iter().all(|c| c.is_zero())) {
        // constant field: parallel lines, center at infinity
        let center = Point3H::at_infinity(embed(&b)).ok()?;
        let k = b.iter().position(|c| !c.is_zero()).expect("field nonzero");
        return Some((b[k].clone(), center));
    }
    // need a scalar linear part c * Id
    let c = a[0][0].clone();
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let expected = if i == j { c.clone() } else { Gq::zero() };
            if *entry != expected {
                return None;
            }
        }
    }
    if c.is_zero() {
        return None;
    }
    let cinv = c.inv().expect("nonzero scale");
    let m: Vec<Gq> = b.iter().map(|bi| -&(bi * &cinv)).collect();
    let me = embed(&m);
    let center = Point3H::affine(me[0].clone(), me[1].clone(), me[2].clone());
    let _ = vars;
    Some((c, center))
}

fn radial_matches(x: &PolyVectorField, scale: &Gq, center: &Point3H) -> bool {
    let vars = x.vars();
    let n = x.arity();
    match center.affine_coords() {
        Some(m) => (0..n).all(|i| {
            let expect = MultiPoly::var(vars, i)
                .sub(&MultiPoly::constant(vars, m[i].clone()))
                .scale(scale);
            x.component(i) == &expect
        }),
        None => {
            let c = center.coords();
            (0..n).all(|i| {
                let expect = MultiPoly::constant(vars, &c[i + 1] * scale);
                x.component(i) == &expect
            })
        }
    }
}

/// Linear forms of the page pencil attached to an axis.
pub(crate) fn axis_pencil(axis: &Line3, vars: &VarSet) -> AxisPencil {
    if axis.is_at_infinity() {
        // planes whose line at infinity is the axis: the normal direction is
        // read off the direction-plane coordinates
        let p = axis.plucker();
        let l3 = MultiPoly::var(vars, 0)
            .scale(&p[5])
            .sub(&MultiPoly::var(vars, 1).scale(&p[4]))
            .add(&MultiPoly::var(vars, 2).scale(&p[3]));
        AxisPencil::Parallel { l3 }
    } else {
        let [l1, l2] = axis.cutting_planes(vars);
        AxisPencil::Planes { l1, l2 }
    }
}

fn pencil_identity_holds(x: &PolyVectorField, pencil: &AxisPencil) -> bool {
    match pencil {
        AxisPencil::Planes { l1, l2 } => {
            let xl1 = x.lie_poly(l1).expect("forms share the field's variables");
            let xl2 = x.lie_poly(l2).expect("forms share the field's variables");
            xl1.mul(l2).sub(&xl2.mul(l1)).is_zero()
        }
        AxisPencil::Parallel { l3 } => x
            .lie_poly(l3)
            .expect("form shares the field's variables")
            .is_zero(),
    }
}

fn pencil_cuts_axis(pencil: &AxisPencil, axis: &Line3) -> bool {
    let (a, b) = axis.spanning_points();
    let eval_form = |f: &MultiPoly, p: &Point3H| -> Gq {
        // affine-linear form at homogeneous point: u0*w + sum u_k * x_k
        let c = p.coords();
        let mut acc = Gq::zero();
        for (m, coeff) in f.terms() {
            if m.is_unit() {
                acc = &acc + &(coeff * &c[0]);
            } else {
                let j = m.0.iter().position(|&e| e == 1).expect("linear form");
                acc = &acc + &(coeff * &c[j + 1]);
            }
        }
        acc
    };
    match pencil {
        AxisPencil::Planes { l1, l2 } => {
            [l1, l2].into_iter().all(|f| {
                eval_form(f, &a).is_zero() && eval_form(f, &b).is_zero()
            })
        }
        AxisPencil::Parallel { l3 } => {
            axis.is_at_infinity()
                && eval_form(l3, &a).is_zero()
                && eval_form(l3, &b).is_zero()
        }
    }
}

fn sample_tangent_lines(
    x: &PolyVectorField,
    rng: &mut DetRng,
) -> Result<Vec<Line3>, FoliationError> {
    let mut lines: Vec<Line3> = Vec::new();
    let mut budget = SAMPLE_LINES * POINT_RETRIES;
    while lines.len() < SAMPLE_LINES && budget > 0 {
        budget -= 1;
        let p: [Gq; 3] = std::array::from_fn(|_| Gq::sample(rng, SAMPLE_HEIGHT));
        match tangent_line_at(x, &p) {
            Ok(l) => {
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
            Err(FoliationError::SingularPoint) => continue,
            Err(e) => return Err(e),
        }
    }
    if lines.len() < 6 {
        return Err(FoliationError::SamplingExhausted);
    }
    Ok(lines)
}

fn four_subsets(n: usize) -> impl Iterator<Item = [usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    out.push([a, b, c, d]);
                    if out.len() >= MAX_SUBSETS {
                        return out.into_iter();
                    }
                }
            }
        }
    }
    out.into_iter()
}

/// Classify a line foliation of 3-space (or of the plane, where every line
/// foliation is a pencil). Requires the line-foliation criterion to hold.
pub fn classify(x: &PolyVectorField, seed: u64) -> Result<ClassifyReport, FoliationError> {
    let x = normalize_field(x)?;
    let cert = x.line_field_certificate()?;
    if !cert.holds {
        return Err(FoliationError::NotALineField);
    }
    match x.arity() {
        2 | 3 => {}
        _ => return Err(FoliationError::UnsupportedArity),
    }

    if let Some((scale, center)) = radial_shape(&x) {
        return Ok(ClassifyReport {
            class: FoliationClass::RadialPoint(center.clone()),
            certificate: ClassifyCertificate::Radial { scale, center },
            sample_lines: vec![],
            seed,
        });
    }
    if x.arity() == 2 {
        // a planar field satisfying the criterion is a pencil, and a reduced
        // pencil field always has the degree-1 shape
        return Err(FoliationError::NotALineField);
    }

    let mut rng = DetRng::new(seed).derive(0x636c6173);
    let lines = sample_tangent_lines(&x, &mut rng)?;

    let mut candidates: Vec<Line3> = Vec::new();
    for idx in four_subsets(lines.len()) {
        let quad: [Line3; 4] = std::array::from_fn(|k| lines[idx[k]].clone());
        if let Transversals::Finite(ts) = common_transversals(&quad) {
            for t in ts {
                if !candidates.contains(&t) {
                    candidates.push(t);
                }
            }
        }
    }

    let mut rejected = Vec::new();
    for axis in candidates {
        if !lines.iter().all(|l| l.meets(&axis)) {
            rejected.push(axis);
            continue;
        }
        let pencil = axis_pencil(&axis, x.vars());
        if pencil_identity_holds(&x, &pencil) {
            return Ok(ClassifyReport {
                class: FoliationClass::OpenBook(axis.clone()),
                certificate: ClassifyCertificate::OpenBook { axis, pencil },
                sample_lines: lines,
                seed,
            });
        }
        rejected.push(axis);
    }

    Ok(ClassifyReport {
        class: FoliationClass::CubicChords,
        certificate: ClassifyCertificate::ChordsByElimination { rejected_axes: rejected },
        sample_lines: lines,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{
        conjugate_field, cubic_chord_field, open_book_field, radial_field, AffineMap,
        OpenBookData,
    };
    use crate::poly::RatFunc;

    fn gq(n: i64) -> Gq {
        Gq::from_int(n)
    }

    #[test]
    fn classifies_radial_fields_exactly() {
        let center = Point3H::affine(gq(2), gq(-1), gq(0));
        let x = radial_field(&center);
        let report = classify(&x, 1).unwrap();
        assert_eq!(report.class, FoliationClass::RadialPoint(center));
        assert!(report.verify(&x));

        let inf = Point3H::at_infinity([gq(3), gq(1), gq(0)]).unwrap();
        let y = radial_field(&inf);
        let report2 = classify(&y, 1).unwrap();
        assert_eq!(report2.class, FoliationClass::RadialPoint(inf));
        assert!(report2.verify(&y));
    }

    #[test]
    fn classifies_degenerate_open_book() {
        let vt = VarSet::t();
        let data = OpenBookData::new(RatFunc::zero(&vt), RatFunc::var(&vt, 0));
        let x = open_book_field(&data).unwrap();
        let report = classify(&x, 7).unwrap();
        let z3_axis = Line3::through_point_direction(
            &[gq(0), gq(0), gq(0)],
            &[gq(0), gq(0), gq(1)],
        )
        .unwrap();
        assert_eq!(report.class, FoliationClass::OpenBook(z3_axis));
        assert!(report.verify(&x));
        // the certificate is the exact pencil identity z2*X(z1) - z1*X(z2) = 0
        match &report.certificate {
            ClassifyCertificate::OpenBook { pencil: AxisPencil::Planes { l1, l2 }, .. } => {
                let xl1 = x.lie_poly(l1).unwrap();
                let xl2 = x.lie_poly(l2).unwrap();
                assert!(xl1.mul(l2).sub(&xl2.mul(l1)).is_zero());
            }
            other => panic!("expected an affine pencil certificate, got {other:?}"),
        }
    }

    #[test]
    fn classifies_cubic_chords_after_conjugation() {
        let x = cubic_chord_field();
        let report = classify(&x, 3).unwrap();
        assert_eq!(report.class, FoliationClass::CubicChords);
        assert!(report.verify(&x));

        let mut rng = DetRng::new(999);
        let map = AffineMap::sample(&mut rng, 3);
        let y = conjugate_field(&x, &map).unwrap();
        let report2 = classify(&y, 4).unwrap();
        assert_eq!(report2.class, FoliationClass::CubicChords);
        assert!(report2.verify(&y));
    }

    #[test]
    fn classifies_parallel_page_book_with_axis_at_infinity() {
        // X = (1, z3, 0): pages z3 = const carry parallel lines whose
        // direction turns with the page
        let v = VarSet::z(3);
        let x = PolyVectorField::new(vec![
            MultiPoly::one(&v),
            MultiPoly::var(&v, 2),
            MultiPoly::zero(&v),
        ]);
        let report = classify(&x, 11).unwrap();
        match &report.class {
            FoliationClass::OpenBook(axis) => {
                assert!(axis.is_at_infinity());
                match &report.certificate {
                    ClassifyCertificate::OpenBook { pencil: AxisPencil::Parallel { l3 }, .. } => {
                        assert!(x.lie_poly(l3).unwrap().is_zero());
                    }
                    other => panic!("expected a parallel pencil, got {other:?}"),
                }
            }
            other => panic!("expected an open book, got {other:?}"),
        }
        assert!(report.verify(&x));
    }

    #[test]
    fn rejects_non_line_fields() {
        let v = VarSet::z(3);
        let rot = PolyVectorField::new(vec![
            MultiPoly::var(&v, 1).neg(),
            MultiPoly::var(&v, 0),
            MultiPoly::zero(&v),
        ]);
        assert_eq!(classify(&rot, 0).unwrap_err(), FoliationError::NotALineField);
    }

    #[test]
    fn reports_are_deterministic_per_seed() {
        let x = cubic_chord_field();
        let a = classify(&x, 42).unwrap();
        let b = classify(&x, 42).unwrap();
        assert_eq!(a, b);
    }
}
