//! Line geometry in projective 3-space and the three normal forms of line
//! foliations: radial pencils, open books (plane pencils with a moving base
//! point per page) and the chords of a twisted cubic.
//!
//! Points carry homogeneous coordinates `(w : x : y : z)` with `w = 0` at
//! infinity; lines carry Plücker coordinates, so incidence and transversal
//! computations are exact linear algebra plus one quadric.

mod classify;

pub use classify::{classify, AxisPencil, ClassifyCertificate, ClassifyReport, FoliationClass};

use crate::arith::GaussianRational;
use crate::field::{FieldError, PolyVectorField, RatVectorField};
use crate::linalg;
use crate::poly::{MultiPoly, PolyError, RatFunc, UniRatFunc, VarSet};

type Gq = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoliationError {
    #[error("homogeneous coordinates must not all vanish")]
    ZeroCoordinates,
    #[error("coordinates violate the Plücker quadric relation")]
    PluckerRelation,
    #[error("the two points coincide and span no line")]
    CoincidentPoints,
    #[error("the field vanishes at the requested point")]
    SingularPoint,
    #[error("need at least two pairwise distinct lines")]
    DuplicateLines,
    #[error("point-curve data defines the zero direction field")]
    DegenerateData,
    #[error("affine map matrix is singular")]
    SingularMatrix,
    #[error("field does not satisfy the line-foliation criterion")]
    NotALineField,
    #[error("could not sample enough regular points")]
    SamplingExhausted,
    #[error("classification expects a field in two or three variables")]
    UnsupportedArity,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn normalize4(mut c: [Gq; 4]) -> Option<[Gq; 4]> {
    let lead = c.iter().position(|v| !v.is_zero())?;
    let inv = c[lead].inv().expect("nonzero leading coordinate");
    for v in c.iter_mut() {
        *v = &*v * &inv;
    }
    Some(c)
}

/// Point of projective 3-space: `(w : x : y : z)`, stored with its first
/// nonzero coordinate scaled to 1 so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point3H([Gq; 4]);

impl Point3H {
    pub fn new(coords: [Gq; 4]) -> Result<Self, FoliationError> {
        normalize4(coords).map(Point3H).ok_or(FoliationError::ZeroCoordinates)
    }

    pub fn affine(x: Gq, y: Gq, z: Gq) -> Self {
        Point3H::new([Gq::one(), x, y, z]).expect("w = 1")
    }

    pub fn at_infinity(d: [Gq; 3]) -> Result<Self, FoliationError> {
        let [d1, d2, d3] = d;
        Point3H::new([Gq::zero(), d1, d2, d3])
    }

    pub fn coords(&self) -> &[Gq; 4] {
        &self.0
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[0].is_zero()
    }

    /// Affine coordinates when the point is at finite distance.
    pub fn affine_coords(&self) -> Option<[Gq; 3]> {
        if self.is_at_infinity() {
            return None;
        }
        // normalization already forces w = 1
        Some([self.0[1].clone(), self.0[2].clone(), self.0[3].clone()])
    }
}

const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn normalize6(mut c: [Gq; 6]) -> Option<[Gq; 6]> {
    let lead = c.iter().position(|v| !v.is_zero())?;
    let inv = c[lead].inv().expect("nonzero leading coordinate");
    for v in c.iter_mut() {
        *v = &*v * &inv;
    }
    Some(c)
}

fn quadric(p: &[Gq; 6]) -> Gq {
    // p01 p23 - p02 p13 + p03 p12
    &(&(&p[0] * &p[5]) - &(&p[1] * &p[4])) + &(&p[2] * &p[3])
}

fn pairing(p: &[Gq; 6], q: &[Gq; 6]) -> Gq {
    let a = &(&(&p[0] * &q[5]) - &(&p[1] * &q[4])) + &(&p[2] * &q[3]);
    let b = &(&(&p[5] * &q[0]) - &(&p[4] * &q[1])) + &(&p[3] * &q[2]);
    &a + &b
}

/// Line of projective 3-space in Plücker coordinates
/// `(p01, p02, p03, p12, p13, p23)`, normalized like points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line3([Gq; 6]);

impl Line3 {
    pub fn from_plucker(coords: [Gq; 6]) -> Result<Self, FoliationError> {
        let c = normalize6(coords).ok_or(FoliationError::ZeroCoordinates)?;
        if !quadric(&c).is_zero() {
            return Err(FoliationError::PluckerRelation);
        }
        Ok(Line3(c))
    }

    pub fn through_points(a: &Point3H, b: &Point3H) -> Result<Self, FoliationError> {
        let (pa, pb) = (a.coords(), b.coords());
        let mut c: [Gq; 6] = std::array::from_fn(|_| Gq::zero());
        for (k, (i, j)) in PLUCKER_PAIRS.iter().enumerate() {
            c[k] = &(&pa[*i] * &pb[*j]) - &(&pa[*j] * &pb[*i]);
        }
        let c = normalize6(c).ok_or(FoliationError::CoincidentPoints)?;
        debug_assert!(quadric(&c).is_zero());
        Ok(Line3(c))
    }

    /// Line through an affine point with the given direction vector.
    pub fn through_point_direction(p: &[Gq; 3], d: &[Gq; 3]) -> Result<Self, FoliationError> {
        let a = Point3H::affine(p[0].clone(), p[1].clone(), p[2].clone());
        let b = Point3H::at_infinity(d.clone())?;
        Line3::through_points(&a, &b)
    }

    pub fn plucker(&self) -> &[Gq; 6] {
        &self.0
    }

    /// Mutual pairing; zero exactly when the lines meet (or coincide).
    pub fn pairing_with(&self, other: &Line3) -> Gq {
        pairing(&self.0, &other.0)
    }

    pub fn meets(&self, other: &Line3) -> bool {
        self.pairing_with(other).is_zero()
    }

    /// Entirely contained in the plane at infinity?
    pub fn is_at_infinity(&self) -> bool {
        self.0[0].is_zero() && self.0[1].is_zero() && self.0[2].is_zero()
    }

    /// Two distinct points spanning the line, recovered from the rank-2 skew
    /// matrix `a b^T - b a^T`.
    pub fn spanning_points(&self) -> (Point3H, Point3H) {
        let mut m = vec![vec![Gq::zero(); 4]; 4];
        for (k, (i, j)) in PLUCKER_PAIRS.iter().enumerate() {
            m[*i][*j] = self.0[k].clone();
            m[*j][*i] = -&self.0[k];
        }
        let mut cols: Vec<[Gq; 4]> = Vec::new();
        for c in 0..4 {
            let col: [Gq; 4] = std::array::from_fn(|r| m[r][c].clone());
            if col.iter().any(|v| !v.is_zero()) {
                cols.push(col);
            }
        }
        let first = cols[0].clone();
        let second = cols
            .iter()
            .skip(1)
            .find(|col| {
                // not proportional to `first`
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        let det = &(&first[i] * &col[j]) - &(&first[j] * &col[i]);
                        if !det.is_zero() {
                            return true;
                        }
                    }
                }
                false
            })
            .expect("plücker matrix has rank 2");
        (
            Point3H::new(first).expect("nonzero column"),
            Point3H::new(second.clone()).expect("nonzero column"),
        )
    }

    pub fn contains(&self, p: &Point3H) -> bool {
        let (a, b) = self.spanning_points();
        let rows = vec![a.coords().to_vec(), b.coords().to_vec(), p.coords().to_vec()];
        linalg::rank(&rows) == 2
    }

    /// Two independent planes through the line, as affine-linear polynomials
    /// `u0 + u1 z1 + u2 z2 + u3 z3` over the given 3-variable set.
    pub fn cutting_planes(&self, vars: &VarSet) -> [MultiPoly; 2] {
        let (a, b) = self.spanning_points();
        let rows = vec![a.coords().to_vec(), b.coords().to_vec()];
        let ns = linalg::nullspace(&rows, 4);
        assert_eq!(ns.len(), 2, "a line lies on a pencil of planes");
        let form = |u: &Vec<Gq>| -> MultiPoly {
            let mut p = MultiPoly::constant(vars, u[0].clone());
            for k in 0..3 {
                p = p.add(&MultiPoly::var(vars, k).scale(&u[k + 1]));
            }
            p
        };
        [form(&ns[0]), form(&ns[1])]
    }
}

/// Common point of a family of lines, if one exists. Exact homogeneous linear
/// algebra: intersect the plane pencils of all lines.
pub fn lines_common_point(lines: &[Line3]) -> Result<Option<Point3H>, FoliationError> {
    if lines.len() < 2 {
        return Err(FoliationError::DuplicateLines);
    }
    for (k, a) in lines.iter().enumerate() {
        if lines[..k].contains(a) {
            return Err(FoliationError::DuplicateLines);
        }
    }
    let mut rows = Vec::with_capacity(2 * lines.len());
    for l in lines {
        let (a, b) = l.spanning_points();
        let pts = vec![a.coords().to_vec(), b.coords().to_vec()];
        for plane in linalg::nullspace(&pts, 4) {
            rows.push(plane);
        }
    }
    let ns = linalg::nullspace(&rows, 4);
    match ns.len() {
        0 => Ok(None),
        1 => {
            let v: [Gq; 4] = std::array::from_fn(|i| ns[0][i].clone());
            Ok(Some(Point3H::new(v)?))
        }
        _ => unreachable!("distinct lines share at most one point"),
    }
}

/// Result of a transversal computation: either every common transversal
/// (at most two, possibly none rational), or an infinite family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transversals {
    Finite(Vec<Line3>),
    Infinite,
}

/// All lines meeting each of the four given lines: the solutions of four
/// linear pairing conditions intersected with the Plücker quadric.
pub fn common_transversals(lines: &[Line3; 4]) -> Transversals {
    let rows: Vec<Vec<Gq>> = lines
        .iter()
        .map(|l| {
            let p = l.plucker();
            // pairing(p, ·) as a covector on (q01, q02, q03, q12, q13, q23)
            vec![
                p[5].clone(),
                -&p[4],
                p[3].clone(),
                p[2].clone(),
                -&p[1],
                p[0].clone(),
            ]
        })
        .collect();
    let ns = linalg::nullspace(&rows, 6);
    match ns.len() {
        0 => Transversals::Finite(vec![]),
        1 => {
            let y: [Gq; 6] = std::array::from_fn(|i| ns[0][i].clone());
            if quadric(&y).is_zero() {
                match Line3::from_plucker(y) {
                    Ok(l) => Transversals::Finite(vec![l]),
                    Err(_) => Transversals::Finite(vec![]),
                }
            } else {
                Transversals::Finite(vec![])
            }
        }
        2 => {
            let u: [Gq; 6] = std::array::from_fn(|i| ns[0][i].clone());
            let v: [Gq; 6] = std::array::from_fn(|i| ns[1][i].clone());
            // restrict the quadric to the pencil s*u + t*v
            let a = quadric(&u);
            let b = pairing(&u, &v);
            let c = quadric(&v);
            if a.is_zero() && b.is_zero() && c.is_zero() {
                return Transversals::Infinite;
            }
            let mut roots: Vec<(Gq, Gq)> = Vec::new(); // (s, t)
            if a.is_zero() {
                roots.push((Gq::one(), Gq::zero()));
                if !b.is_zero() {
                    roots.push((-&c, b.clone()));
                }
            } else {
                let disc = &(&b * &b) - &(&(&a * &c) * &Gq::from_int(4));
                if disc.is_zero() {
                    roots.push((-&b, &a * &Gq::from_int(2)));
                } else if let Some(r) = disc.sqrt() {
                    let two_a = &a * &Gq::from_int(2);
                    roots.push((&(-&b) + &r, two_a.clone()));
                    roots.push((&(-&b) - &r, two_a));
                }
                // irrational roots: no Q(i)-rational transversal to report
            }
            let mut found = Vec::new();
            for (s, t) in roots {
                let y: [Gq; 6] =
                    std::array::from_fn(|i| &(&u[i] * &s) + &(&v[i] * &t));
                if y.iter().all(|w| w.is_zero()) {
                    continue;
                }
                if let Ok(l) = Line3::from_plucker(y) {
                    if !found.contains(&l) {
                        found.push(l);
                    }
                }
            }
            Transversals::Finite(found)
        }
        _ => Transversals::Infinite,
    }
}

/// Pencil-of-lines field centered at `center` (affine: `z - m`; at infinity:
/// the constant direction field).
pub fn radial_field(center: &Point3H) -> PolyVectorField {
    let v = VarSet::z(3);
    let comps: Vec<MultiPoly> = match center.affine_coords() {
        Some(m) => (0..3)
            .map(|i| MultiPoly::var(&v, i).sub(&MultiPoly::constant(&v, m[i].clone())))
            .collect(),
        None => {
            let c = center.coords();
            (0..3)
                .map(|i| MultiPoly::constant(&v, c[i + 1].clone()))
                .collect()
        }
    };
    let (field, _) = PolyVectorField::new(comps)
        .primitive_reduce()
        .expect("radial fields are nonzero");
    field
}

/// Point curve `t -> (t*z2(t), z2(t), z3(t))` of an open book with pages
/// `z1/z2 = t`: one base point per page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookData {
    pub z2_of_t: UniRatFunc,
    pub z3_of_t: UniRatFunc,
}

impl OpenBookData {
    pub fn new(z2_of_t: UniRatFunc, z3_of_t: UniRatFunc) -> Self {
        assert_eq!(z2_of_t.vars().arity(), 1, "point curve is univariate");
        assert_eq!(z3_of_t.vars().arity(), 1, "point curve is univariate");
        OpenBookData { z2_of_t, z3_of_t }
    }
}

/// Reduced polynomial field tangent to the open book defined by `data`:
/// in each page `z1/z2 = t` the lines through the base point `m(t)`.
pub fn open_book_field(data: &OpenBookData) -> Result<PolyVectorField, FoliationError> {
    let v = VarSet::z(3);
    let t = RatFunc::var(&v, 0).div(&RatFunc::var(&v, 1)).expect("z2 is nonzero");
    let m2 = data.z2_of_t.compose_univariate(&t)?;
    let m3 = data.z3_of_t.compose_univariate(&t)?;
    let m1 = t.mul(&m2);
    let dir = RatVectorField::new(vec![
        RatFunc::var(&v, 0).sub(&m1),
        RatFunc::var(&v, 1).sub(&m2),
        RatFunc::var(&v, 2).sub(&m3),
    ]);
    if dir.is_zero() {
        return Err(FoliationError::DegenerateData);
    }
    Ok(dir.clear_denominators()?)
}

/// The chord field of the twisted cubic `t -> (t, t^2, t^3)`: through a
/// generic point passes exactly one secant (or tangent) of the curve, and the
/// field below is tangent to it. Vanishes identically on the curve.
pub fn cubic_chord_field() -> PolyVectorField {
    let v = VarSet::z(3);
    let z1 = MultiPoly::var(&v, 0);
    let z2 = MultiPoly::var(&v, 1);
    let z3 = MultiPoly::var(&v, 2);
    let a = z2.sub(&z1.pow(2));
    let b = z3.sub(&z1.mul(&z2));
    let x3 = b
        .pow(2)
        .sub(&z1.mul(&a).mul(&b))
        .add(&z2.mul(&a.pow(2)));
    let raw = PolyVectorField::new(vec![a.pow(2), a.mul(&b), x3]);
    let (field, cof) = raw.primitive_reduce().expect("chord field is nonzero");
    debug_assert!(cof.is_one());
    field
}

/// Invertible affine map `z -> M z + b` over Q(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Gq; 3]; 3],
    pub translation: [Gq; 3],
}

impl AffineMap {
    pub fn identity() -> Self {
        let one = Gq::one();
        let zero = Gq::zero();
        AffineMap {
            matrix: [
                [one.clone(), zero.clone(), zero.clone()],
                [zero.clone(), one.clone(), zero.clone()],
                [zero.clone(), zero.clone(), one],
            ],
            translation: std::array::from_fn(|_| Gq::zero()),
        }
    }

    pub fn translation(b: [Gq; 3]) -> Self {
        let mut m = AffineMap::identity();
        m.translation = b;
        m
    }

    /// Random invertible affine map with Gaussian-integer entries (resamples
    /// until the matrix inverts). Integer entries keep conjugated coefficients
    /// small without losing genericity.
    pub fn sample(rng: &mut crate::rng::DetRng, height: u64) -> Self {
        let gint = |rng: &mut crate::rng::DetRng| {
            GaussianRational::new(
                crate::arith::Rational::from_int(rng.int_signed(height)),
                crate::arith::Rational::from_int(rng.int_signed(height)),
            )
        };
        loop {
            let mut matrix: [[Gq; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| Gq::zero()));
            for row in matrix.iter_mut() {
                for entry in row.iter_mut() {
                    *entry = gint(rng);
                }
            }
            if linalg::invert3(&matrix).is_some() {
                let mut translation: [Gq; 3] = std::array::from_fn(|_| Gq::zero());
                for entry in translation.iter_mut() {
                    *entry = gint(rng);
                }
                return AffineMap { matrix, translation };
            }
        }
    }
}

/// Pushforward of a polynomial field by an invertible affine map:
/// `(T_* X)(w) = M X(T^{-1} w)`, reduced. Tangency to straight lines is
/// preserved, so the certificate status survives conjugation.
pub fn conjugate_field(
    x: &PolyVectorField,
    map: &AffineMap,
) -> Result<PolyVectorField, FoliationError> {
    let v = x.vars().clone();
    assert_eq!(v.arity(), 3, "conjugation is a 3-space operation");
    let minv = linalg::invert3(&map.matrix).ok_or(FoliationError::SingularMatrix)?;
    // arguments of the substitution: (M^{-1}(w - b))_i as affine-linear polys
    let args: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut p = MultiPoly::zero(&v);
            for j in 0..3 {
                p = p.add(&MultiPoly::var(&v, j).scale(&minv[i][j]));
                let shift = &minv[i][j] * &map.translation[j];
                p = p.sub(&MultiPoly::constant(&v, shift));
            }
            p
        })
        .collect();
    let pulled: Vec<MultiPoly> = x.components().iter().map(|c| c.compose(&args)).collect();
    let comps: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut acc = MultiPoly::zero(&v);
            for j in 0..3 {
                acc = acc.add(&pulled[j].scale(&map.matrix[i][j]));
            }
            acc
        })
        .collect();
    let (reduced, _) = PolyVectorField::new(comps).primitive_reduce()?;
    Ok(reduced)
}

/// Tangent line of the foliation through a regular affine point.
pub fn tangent_line_at(
    x: &PolyVectorField,
    p: &[Gq; 3],
) -> Result<Line3, FoliationError> {
    let point: Vec<Gq> = p.to_vec();
    let d = x.evaluate(&point);
    if d.iter().all(|c| c.is_zero()) {
        return Err(FoliationError::SingularPoint);
    }
    let dir: [Gq; 3] = std::array::from_fn(|i| d[i].clone());
    Line3::through_point_direction(p, &dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use crate::rng::DetRng;

    fn gq(n: i64) -> Gq {
        Gq::from_int(n)
    }

    fn rat(n: i64, d: i64) -> Gq {
        Gq::from_rational(crate::arith::Rational::new(n.into(), d.into()).unwrap())
    }

    fn v3() -> VarSet {
        VarSet::z(3)
    }

    fn comp_strings(x: &PolyVectorField) -> Vec<String> {
        x.components().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn radial_field_examples() {
        let origin = Point3H::affine(gq(0), gq(0), gq(0));
        assert_eq!(comp_strings(&radial_field(&origin)), vec!["z1", "z2", "z3"]);

        let m = Point3H::affine(gq(1), gq(2), gq(3));
        assert_eq!(
            comp_strings(&radial_field(&m)),
            vec!["z1 - 1", "z2 - 2", "z3 - 3"]
        );

        let inf = Point3H::at_infinity([gq(1), gq(0), gq(0)]).unwrap();
        assert_eq!(comp_strings(&radial_field(&inf)), vec!["1", "0", "0"]);

        for center in [origin, m, inf] {
            let f = radial_field(&center);
            assert!(f.is_reduced());
            assert!(f.line_field_certificate().unwrap().holds);
        }
    }

    #[test]
    fn open_book_examples() {
        let vt = VarSet::t();
        // m(t) = (0, 0, t): degenerate book whose point curve is the axis
        let data = OpenBookData::new(
            RatFunc::zero(&vt),
            RatFunc::var(&vt, 0),
        );
        let x = open_book_field(&data).unwrap();
        assert_eq!(comp_strings(&x), vec!["z1*z2", "z2^2", "z2*z3 - z1"]);
        assert!(x.line_field_certificate().unwrap().holds);
        let page = parse_expr("z1/z2", &v3()).unwrap();
        assert!(x.is_first_integral(&page).unwrap());

        // m(t) = (t, 1, 0)
        let data2 = OpenBookData::new(RatFunc::one(&vt), RatFunc::zero(&vt));
        let y = open_book_field(&data2).unwrap();
        assert_eq!(
            comp_strings(&y),
            vec!["z1*z2 - z1", "z2^2 - z2", "z2*z3"]
        );
        assert!(y.line_field_certificate().unwrap().holds);

        // constant m at the origin collapses to the radial field
        let data3 = OpenBookData::new(RatFunc::zero(&vt), RatFunc::zero(&vt));
        let z = open_book_field(&data3).unwrap();
        assert_eq!(comp_strings(&z), vec!["z1", "z2", "z3"]);
    }

    #[test]
    fn open_book_tangent_lines_meet_the_axis() {
        let vt = VarSet::t();
        let z3_axis = Line3::through_point_direction(
            &[gq(0), gq(0), gq(0)],
            &[gq(0), gq(0), gq(1)],
        )
        .unwrap();
        let mut rng = DetRng::new(704);
        let mut books = 0;
        while books < 20 {
            let data = OpenBookData::new(
                RatFunc::sample(&mut rng, &vt, 2, 2, 4),
                RatFunc::sample(&mut rng, &vt, 2, 2, 4),
            );
            let Ok(x) = open_book_field(&data) else { continue };
            let mut lines = 0;
            while lines < 5 {
                let p: [Gq; 3] = std::array::from_fn(|_| Gq::sample(&mut rng, 30));
                match tangent_line_at(&x, &p) {
                    Ok(l) => {
                        assert!(l.pairing_with(&z3_axis).is_zero());
                        lines += 1;
                    }
                    Err(FoliationError::SingularPoint) => continue,
                    Err(e) => panic!("{e}"),
                }
            }
            books += 1;
        }
    }

    #[test]
    fn cubic_chord_field_properties() {
        let x = cubic_chord_field();
        assert!(x.is_reduced());
        assert!(x.line_field_certificate().unwrap().holds);

        // at the midpoint of the chord from γ(0) to γ(1) the direction is (1,1,1)
        let val = x.evaluate(&[rat(1, 2), rat(1, 2), rat(1, 2)]);
        let first = val[0].clone();
        assert!(!first.is_zero());
        for c in &val {
            assert_eq!(c, &first);
        }

        // the field vanishes on the curve
        let val2 = x.evaluate(&[gq(2), gq(4), gq(8)]);
        assert!(val2.iter().all(|c| c.is_zero()));

        // X1/X2 = A/B is a first integral
        let v = v3();
        let a = parse_expr("z2 - z1^2", &v).unwrap();
        let b = parse_expr("z3 - z1*z2", &v).unwrap();
        let h = a.div(&b).unwrap();
        assert!(x.is_first_integral(&h).unwrap());
    }

    #[test]
    fn cubic_field_vanishes_on_curve_identically() {
        // substitute the parametrization into each component: zero polynomials in t
        let x = cubic_chord_field();
        let vt = VarSet::t();
        let t = MultiPoly::var(&vt, 0);
        let gamma = [t.clone(), t.pow(2), t.pow(3)];
        for c in x.components() {
            assert!(c.compose(&gamma).is_zero());
        }
    }

    #[test]
    fn chord_direction_oracle() {
        // X at λγ(t1) + (1-λ)γ(t2) is proportional to γ(t1) - γ(t2)
        let x = cubic_chord_field();
        let mut rng = DetRng::new(700);
        for _ in 0..50 {
            let t1 = Gq::sample(&mut rng, 8);
            let t2 = Gq::sample(&mut rng, 8);
            if t1 == t2 {
                continue;
            }
            let lam = Gq::sample(&mut rng, 8);
            let g1 = [t1.clone(), &t1 * &t1, &(&t1 * &t1) * &t1];
            let g2 = [t2.clone(), &t2 * &t2, &(&t2 * &t2) * &t2];
            let one_m = &Gq::one() - &lam;
            let p: Vec<Gq> = (0..3).map(|i| &(&g1[i] * &lam) + &(&g2[i] * &one_m)).collect();
            let val = x.evaluate(&p);
            if val.iter().all(|c| c.is_zero()) {
                continue; // landed on the curve itself
            }
            let dir: Vec<Gq> = (0..3).map(|i| &g1[i] - &g2[i]).collect();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let minor = &(&val[i] * &dir[j]) - &(&val[j] * &dir[i]);
                    assert!(minor.is_zero());
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_certificates() {
        let x = cubic_chord_field();
        assert_eq!(conjugate_field(&x, &AffineMap::identity()).unwrap(), x);

        // radial at 0 conjugated by a translation is radial at b
        let r = radial_field(&Point3H::affine(gq(0), gq(0), gq(0)));
        let shifted = conjugate_field(&r, &AffineMap::translation([gq(1), gq(2), gq(3)])).unwrap();
        assert_eq!(shifted, radial_field(&Point3H::affine(gq(1), gq(2), gq(3))));

        let mut rng = DetRng::new(701);
        for _ in 0..10 {
            let map = AffineMap::sample(&mut rng, 4);
            let y = conjugate_field(&x, &map).unwrap();
            assert!(y.line_field_certificate().unwrap().holds);
        }
    }

    #[test]
    fn tangent_line_examples() {
        let r = radial_field(&Point3H::affine(gq(0), gq(0), gq(0)));
        let l = tangent_line_at(&r, &[gq(1), gq(0), gq(0)]).unwrap();
        // the z1 axis: through (0,0,0) with direction (1,0,0)
        let axis = Line3::through_point_direction(
            &[gq(0), gq(0), gq(0)],
            &[gq(1), gq(0), gq(0)],
        )
        .unwrap();
        assert_eq!(l, axis);

        let c = radial_field(&Point3H::at_infinity([gq(1), gq(0), gq(0)]).unwrap());
        let l2 = tangent_line_at(&c, &[gq(0), gq(1), gq(0)]).unwrap();
        let expect = Line3::through_point_direction(
            &[gq(0), gq(1), gq(0)],
            &[gq(1), gq(0), gq(0)],
        )
        .unwrap();
        assert_eq!(l2, expect);

        // singular point rejected
        assert_eq!(
            tangent_line_at(&r, &[gq(0), gq(0), gq(0)]).unwrap_err(),
            FoliationError::SingularPoint
        );

        // chords: at the midpoint of γ(0)γ(1) the tangent line is that chord
        let x = cubic_chord_field();
        let chord = tangent_line_at(&x, &[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        let g0 = Point3H::affine(gq(0), gq(0), gq(0));
        let g1 = Point3H::affine(gq(1), gq(1), gq(1));
        assert_eq!(chord, Line3::through_points(&g0, &g1).unwrap());
    }

    #[test]
    fn common_point_examples() {
        let axes: Vec<Line3> = (0..3)
            .map(|k| {
                let mut d = [gq(0), gq(0), gq(0)];
                d[k] = gq(1);
                Line3::through_point_direction(&[gq(0), gq(0), gq(0)], &d).unwrap()
            })
            .collect();
        let p = lines_common_point(&axes).unwrap().unwrap();
        assert_eq!(p, Point3H::affine(gq(0), gq(0), gq(0)));

        // two parallel lines meet at infinity in their common direction
        let l1 = Line3::through_point_direction(&[gq(0), gq(0), gq(0)], &[gq(1), gq(1), gq(0)]).unwrap();
        let l2 = Line3::through_point_direction(&[gq(0), gq(0), gq(1)], &[gq(1), gq(1), gq(0)]).unwrap();
        let q = lines_common_point(&[l1.clone(), l2]).unwrap().unwrap();
        assert_eq!(q, Point3H::at_infinity([gq(1), gq(1), gq(0)]).unwrap());

        // skew lines share nothing
        let l3 = Line3::through_point_direction(&[gq(0), gq(0), gq(0)], &[gq(1), gq(0), gq(0)]).unwrap();
        let l4 = Line3::through_point_direction(&[gq(0), gq(1), gq(1)], &[gq(0), gq(0), gq(1)]).unwrap();
        assert!(lines_common_point(&[l3.clone(), l4]).unwrap().is_none());

        assert_eq!(
            lines_common_point(&[l3.clone(), l3]).unwrap_err(),
            FoliationError::DuplicateLines
        );
    }

    #[test]
    fn transversals_of_lines_meeting_an_axis() {
        // four generic lines all meeting the z3 axis, pairwise skew
        let z3_axis = Line3::through_point_direction(
            &[gq(0), gq(0), gq(0)],
            &[gq(0), gq(0), gq(1)],
        )
        .unwrap();
        let mk = |h: i64, x: i64, y: i64| {
            Line3::through_points(
                &Point3H::affine(gq(0), gq(0), gq(h)),
                &Point3H::affine(gq(x), gq(y), gq(h + x - y)),
            )
            .unwrap()
        };
        let lines = [mk(0, 1, 2), mk(1, 1, -1), mk(2, 3, 1), mk(5, 2, 7)];
        for l in &lines {
            assert!(l.meets(&z3_axis));
        }
        match common_transversals(&lines) {
            Transversals::Finite(ts) => {
                assert!(ts.contains(&z3_axis), "axis must appear among transversals");
                assert!(ts.len() <= 2);
            }
            Transversals::Infinite => panic!("expected finitely many transversals"),
        }
    }

    #[test]
    fn transversals_of_concurrent_lines_are_infinite() {
        let through_origin = |d: [i64; 3]| {
            Line3::through_point_direction(
                &[gq(0), gq(0), gq(0)],
                &[gq(d[0]), gq(d[1]), gq(d[2])],
            )
            .unwrap()
        };
        let lines = [
            through_origin([1, 0, 0]),
            through_origin([0, 1, 0]),
            through_origin([0, 0, 1]),
            through_origin([1, 1, 1]),
        ];
        assert_eq!(common_transversals(&lines), Transversals::Infinite);
    }

    #[test]
    fn transversals_of_random_lines_stay_finite() {
        let mut rng = DetRng::new(702);
        for _ in 0..20 {
            let mut ls = Vec::new();
            while ls.len() < 4 {
                let p: [Gq; 3] = std::array::from_fn(|_| Gq::sample(&mut rng, 10));
                let d: [Gq; 3] = std::array::from_fn(|_| Gq::sample(&mut rng, 10));
                if d.iter().all(|c| c.is_zero()) {
                    continue;
                }
                if let Ok(l) = Line3::through_point_direction(&p, &d) {
                    ls.push(l);
                }
            }
            let arr: [Line3; 4] = [ls[0].clone(), ls[1].clone(), ls[2].clone(), ls[3].clone()];
            match common_transversals(&arr) {
                Transversals::Finite(ts) => assert!(ts.len() <= 2),
                Transversals::Infinite => {
                    panic!("four random lines should have finitely many transversals")
                }
            }
        }
    }

    #[test]
    fn plucker_relation_holds_for_constructed_lines() {
        let mut rng = DetRng::new(703);
        for _ in 0..100 {
            let p: [Gq; 3] = std::array::from_fn(|_| Gq::sample(&mut rng, 20));
            let d: [Gq; 3] = std::array::from_fn(|_| Gq::sample(&mut rng, 20));
            if d.iter().all(|c| c.is_zero()) {
                continue;
            }
            let l = Line3::through_point_direction(&p, &d).unwrap();
            assert!(quadric(l.plucker()).is_zero());
            let (a, b) = l.spanning_points();
            assert!(l.contains(&a));
            assert!(l.contains(&b));
        }
    }
}
