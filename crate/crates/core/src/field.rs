//! Polynomial and rational vector fields: Lie derivatives, brackets, the
//! line-foliation criterion with its cofactor certificate, first integrals and
//! infinitesimal symmetries.
//!
//! A vector field `X = sum X_i d/dz_i` is tangent to a foliation by straight
//! lines exactly when the derived field `sum X(X_i) d/dz_i` is a polynomial
//! multiple of `X`. The certificate below decides this by the pairwise cross
//! conditions `X(X_i) X_j - X(X_j) X_i = 0` and then recovers the cofactor by
//! exact division, so no unknowns are ever solved for.

use crate::arith::GaussianRational;
use crate::poly::{exact_divide, integer_normalize, poly_gcd, MultiPoly, PolyError, RatFunc, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("vector field and function live over different variable sets")]
    VarSetMismatch,
    #[error("the zero vector field is not allowed here")]
    ZeroField,
    #[error("function is constant")]
    ConstantFunction,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("cross conditions hold but exact division failed; input was not primitive")]
    InternalInconsistency,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Polynomial vector field. `reduced` records that the component gcd is known
/// to be a unit (the codimension-two singular set convention).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    vars: VarSet,
    components: Vec<MultiPoly>,
    reduced: bool,
}

impl PolyVectorField {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        assert!(!components.is_empty(), "vector field needs components");
        let vars = components[0].vars().clone();
        assert_eq!(components.len(), vars.arity(), "one component per variable");
        for c in &components {
            assert_eq!(c.vars(), &vars, "components over mixed variable sets");
        }
        PolyVectorField { vars, components, reduced: false }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Evaluate all components at a point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Vec<GaussianRational> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Derivative of `g` along the field: `sum X_i dg/dz_i`.
    pub fn lie_poly(&self, g: &MultiPoly) -> Result<MultiPoly, FieldError> {
        if g.vars() != &self.vars {
            return Err(FieldError::VarSetMismatch);
        }
        let mut acc = MultiPoly::zero(&self.vars);
        for (i, xi) in self.components.iter().enumerate() {
            acc = acc.add(&xi.mul(&g.derivative(i)));
        }
        Ok(acc)
    }

    /// Derivative of a rational function along the field.
    pub fn lie_rat(&self, g: &RatFunc) -> Result<RatFunc, FieldError> {
        if g.vars() != &self.vars {
            return Err(FieldError::VarSetMismatch);
        }
        let num = self.lie_poly(g.num())?.mul(g.den()).sub(&g.num().mul(&self.lie_poly(g.den())?));
        Ok(RatFunc::new(num, g.den().mul(g.den()))?)
    }

    /// Scale every component by the same polynomial.
    pub fn scale(&self, h: &MultiPoly) -> PolyVectorField {
        PolyVectorField::new(self.components.iter().map(|c| c.mul(h)).collect())
    }

    /// Divide by the component gcd. Returns the reduced field and the cofactor,
    /// so that `cofactor * reduced = self` exactly.
    pub fn primitive_reduce(&self) -> Result<(PolyVectorField, MultiPoly), FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroField);
        }
        let mut g = MultiPoly::zero(&self.vars);
        for c in &self.components {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.clone() } else { poly_gcd(&g, c)? };
            if g.is_constant() {
                break;
            }
        }
        let g = g.monic();
        let comps: Result<Vec<MultiPoly>, FieldError> = self
            .components
            .iter()
            .map(|c| {
                Ok(exact_divide(c, &g)?
                    .expect("component gcd divides each component"))
            })
            .collect();
        let mut comps = comps?;
        // integer-primitive coefficients keep all later identity checks cheap;
        // the cofactor absorbs the scalar so the factorization stays exact
        let scale = integer_normalize(&mut comps);
        let mut reduced = PolyVectorField::new(comps);
        reduced.reduced = true;
        Ok((reduced, g.scale(&scale)))
    }

    /// Line-foliation criterion with certificate.
    ///
    /// `holds` iff `X(X_i) X_j - X(X_j) X_i = 0` for all pairs; the cofactor
    /// `mu` then satisfies `X(X_i) = mu * X_i` for every component, which is
    /// re-verified before returning.
    pub fn line_field_certificate(&self) -> Result<LineFieldCertificate, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroField);
        }
        let derived: Result<Vec<MultiPoly>, FieldError> =
            self.components.iter().map(|xi| self.lie_poly(xi)).collect();
        let derived = derived?;
        let n = self.components.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let residual = derived[i]
                    .mul(&self.components[j])
                    .sub(&derived[j].mul(&self.components[i]));
                if !residual.is_zero() {
                    return Ok(LineFieldCertificate {
                        holds: false,
                        mu: None,
                        failing_pair: Some((i, j, residual)),
                    });
                }
            }
        }
        let k = self
            .components
            .iter()
            .position(|c| !c.is_zero())
            .expect("field is nonzero");
        let mu = exact_divide(&derived[k], &self.components[k])?
            .ok_or(FieldError::InternalInconsistency)?;
        for i in 0..n {
            if derived[i] != mu.mul(&self.components[i]) {
                return Err(FieldError::InternalInconsistency);
            }
        }
        Ok(LineFieldCertificate { holds: true, mu: Some(mu), failing_pair: None })
    }

    /// Is `h` constant along the trajectories of the field?
    pub fn is_first_integral(&self, h: &RatFunc) -> Result<bool, FieldError> {
        if h.vars() != &self.vars {
            return Err(FieldError::VarSetMismatch);
        }
        // X(N) D - N X(D) = 0 decides X(N/D) = 0 without normalizing.
        let lhs = self.lie_poly(h.num())?.mul(h.den());
        let rhs = h.num().mul(&self.lie_poly(h.den())?);
        Ok(lhs == rhs)
    }

    /// Is `self` an infinitesimal symmetry of `x`, i.e. is `[self, x]`
    /// everywhere proportional to `x`?
    ///
    /// Decided through vanishing 2x2 minors of the pair, never by dividing:
    /// the proportionality function need not be polynomial, the minors are.
    pub fn is_infinitesimal_symmetry(&self, x: &PolyVectorField) -> Result<bool, FieldError> {
        let b = lie_bracket(self, x)?;
        let n = x.components.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let minor = b.components[i]
                    .mul(&x.components[j])
                    .sub(&b.components[j].mul(&x.components[i]));
                if !minor.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Certificate for the line-foliation criterion: either the cofactor witness
/// or the first failing cross-condition residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFieldCertificate {
    pub holds: bool,
    pub mu: Option<MultiPoly>,
    /// `(i, j, X(X_i) X_j - X(X_j) X_i)` for the first pair that fails.
    pub failing_pair: Option<(usize, usize, MultiPoly)>,
}

/// `[x, y]` with components `x(y_i) - y(x_i)`; bilinear and antisymmetric.
/// The output is not reduced: certificates refer to the raw bracket.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField, FieldError> {
    if x.vars != y.vars || x.components.len() != y.components.len() {
        return Err(FieldError::VarSetMismatch);
    }
    let comps: Result<Vec<MultiPoly>, FieldError> = (0..x.components.len())
        .map(|i| Ok(x.lie_poly(&y.components[i])?.sub(&y.lie_poly(&x.components[i])?)))
        .collect();
    Ok(PolyVectorField::new(comps?))
}

/// Vector field with rational-function components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVectorField {
    components: Vec<RatFunc>,
}

impl RatVectorField {
    pub fn new(components: Vec<RatFunc>) -> Self {
        assert!(!components.is_empty(), "vector field needs components");
        let vars = components[0].vars().clone();
        for c in &components {
            assert_eq!(c.vars(), &vars, "components over mixed variable sets");
        }
        RatVectorField { components }
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn vars(&self) -> &VarSet {
        self.components[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn lie_rat(&self, g: &RatFunc) -> Result<RatFunc, FieldError> {
        if g.vars() != self.vars() {
            return Err(FieldError::VarSetMismatch);
        }
        let mut acc = RatFunc::zero(g.vars());
        for (i, xi) in self.components.iter().enumerate() {
            acc = acc.add(&xi.mul(&g.derivative(i)));
        }
        Ok(acc)
    }

    /// Multiply out the least common denominator and reduce: the primitive
    /// polynomial field defining the same direction field.
    pub fn clear_denominators(&self) -> Result<PolyVectorField, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroField);
        }
        let vars = self.vars().clone();
        let mut lcm = MultiPoly::one(&vars);
        for c in &self.components {
            let g = poly_gcd(&lcm, c.den())?;
            let extra = exact_divide(c.den(), &g)?.expect("gcd divides");
            lcm = lcm.mul(&extra);
        }
        let comps: Vec<MultiPoly> = self
            .components
            .iter()
            .map(|c| {
                let cof = exact_divide(&lcm, c.den())
                    .expect("den nonzero")
                    .expect("den divides lcm");
                c.num().mul(&cof)
            })
            .collect();
        let (reduced, _) = PolyVectorField::new(comps).primitive_reduce()?;
        Ok(reduced)
    }
}

/// The gradient field of a nonconstant rational function.
pub fn gradient(f: &RatFunc) -> Result<RatVectorField, FieldError> {
    let n = f.vars().arity();
    let comps: Vec<RatFunc> = (0..n).map(|i| f.derivative(i)).collect();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(FieldError::ConstantFunction);
    }
    Ok(RatVectorField::new(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use crate::rng::DetRng;

    fn v3() -> VarSet {
        VarSet::z(3)
    }

    fn field(vars: &VarSet, comps: &[&str]) -> PolyVectorField {
        PolyVectorField::new(
            comps
                .iter()
                .map(|s| parse_expr(s, vars).unwrap().num().clone())
                .collect(),
        )
    }

    fn radial(vars: &VarSet) -> PolyVectorField {
        PolyVectorField::new((0..vars.arity()).map(|i| MultiPoly::var(vars, i)).collect())
    }

    #[test]
    fn lie_derivative_examples() {
        let v = v3();
        let r = radial(&v);
        // Euler relation on a degree-2 monomial
        let g = MultiPoly::var(&v, 0).mul(&MultiPoly::var(&v, 1));
        assert_eq!(r.lie_poly(&g).unwrap(), g.scale(&GaussianRational::from_int(2)));
        // X = (1, z3, 0) annihilates z3
        let x = field(&v, &["1", "z3", "0"]);
        assert!(x.lie_poly(&MultiPoly::var(&v, 2)).unwrap().is_zero());
        // constants die
        assert!(r.lie_poly(&MultiPoly::int(&v, 9)).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let v = VarSet::z(1);
        let d1 = field(&v, &["1"]);
        let z1d1 = field(&v, &["z1"]);
        assert_eq!(lie_bracket(&d1, &z1d1).unwrap(), d1);

        let v2 = VarSet::z(2);
        let a = field(&v2, &["z1", "0"]);
        let b = field(&v2, &["0", "z2"]);
        assert!(lie_bracket(&a, &b).unwrap().is_zero());
        assert!(lie_bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear() {
        let v = v3();
        let mut rng = DetRng::new(90);
        for _ in 0..50 {
            let x = PolyVectorField::new(
                (0..3).map(|_| MultiPoly::sample(&mut rng, &v, 2, 3, 5)).collect(),
            );
            let y = PolyVectorField::new(
                (0..3).map(|_| MultiPoly::sample(&mut rng, &v, 2, 3, 5)).collect(),
            );
            let xy = lie_bracket(&x, &y).unwrap();
            let yx = lie_bracket(&y, &x).unwrap();
            for i in 0..3 {
                assert_eq!(xy.components()[i], yx.components()[i].neg());
            }
        }
    }

    #[test]
    fn jacobi_identity_on_linear_fields() {
        let v = v3();
        let mut rng = DetRng::new(91);
        let linear = |rng: &mut DetRng| {
            PolyVectorField::new(
                (0..3)
                    .map(|_| {
                        let mut p = MultiPoly::zero(&v);
                        for j in 0..3 {
                            p = p.add(
                                &MultiPoly::var(&v, j)
                                    .scale(&GaussianRational::sample(rng, 4)),
                            );
                        }
                        p
                    })
                    .collect(),
            )
        };
        for _ in 0..200 {
            let x = linear(&mut rng);
            let y = linear(&mut rng);
            let z = linear(&mut rng);
            let a = lie_bracket(&lie_bracket(&x, &y).unwrap(), &z).unwrap();
            let b = lie_bracket(&lie_bracket(&y, &z).unwrap(), &x).unwrap();
            let c = lie_bracket(&lie_bracket(&z, &x).unwrap(), &y).unwrap();
            for i in 0..3 {
                assert!(a.components()[i]
                    .add(&b.components()[i])
                    .add(&c.components()[i])
                    .is_zero());
            }
        }
    }

    #[test]
    fn primitive_reduce_examples() {
        let v = VarSet::z(2);
        let x = field(&v, &["z1*z2", "z1^2"]);
        let (red, cof) = x.primitive_reduce().unwrap();
        assert_eq!(red.components(), field(&v, &["z2", "z1"]).components());
        assert_eq!(cof, MultiPoly::var(&v, 0));
        assert!(red.is_reduced());

        let y = field(&v, &["z2", "z1"]);
        let (red2, cof2) = y.primitive_reduce().unwrap();
        assert_eq!(red2.components(), y.components());
        assert!(cof2.is_one());

        let z = field(&v, &["0", "0"]);
        assert_eq!(z.primitive_reduce(), Err(FieldError::ZeroField));
    }

    #[test]
    fn certificate_radial_and_constant() {
        let v = v3();
        let r = radial(&v);
        let cert = r.line_field_certificate().unwrap();
        assert!(cert.holds);
        assert!(cert.mu.as_ref().unwrap().is_one());

        let c = field(&v, &["1", "0", "0"]);
        let cert2 = c.line_field_certificate().unwrap();
        assert!(cert2.holds);
        assert!(cert2.mu.as_ref().unwrap().is_zero());
    }

    #[test]
    fn certificate_rejects_rotation() {
        let v = v3();
        let rot = field(&v, &["-z2", "z1", "0"]);
        let cert = rot.line_field_certificate().unwrap();
        assert!(!cert.holds);
        let (i, j, residual) = cert.failing_pair.unwrap();
        assert_eq!((i, j), (0, 1));
        let expected = parse_expr("-(z1^2 + z2^2)", &v).unwrap();
        assert_eq!(&residual, expected.num());
    }

    #[test]
    fn certificate_mu_identity_holds_for_random_line_fields() {
        // radial fields conjugated by translations stay line fields
        let v = v3();
        let mut rng = DetRng::new(92);
        for _ in 0..50 {
            let comps: Vec<MultiPoly> = (0..3)
                .map(|i| {
                    MultiPoly::var(&v, i).sub(&MultiPoly::constant(
                        &v,
                        GaussianRational::sample(&mut rng, 10),
                    ))
                })
                .collect();
            let x = PolyVectorField::new(comps);
            let cert = x.line_field_certificate().unwrap();
            assert!(cert.holds);
            let mu = cert.mu.unwrap();
            for i in 0..3 {
                let lhs = x.lie_poly(x.component(i)).unwrap();
                assert_eq!(lhs, mu.mul(x.component(i)));
            }
        }
    }

    #[test]
    fn first_integral_examples() {
        let v = v3();
        let r = radial(&v);
        let h = parse_expr("z1/z2", &v).unwrap();
        assert!(r.is_first_integral(&h).unwrap());
        let x = field(&v, &["1", "z3", "0"]);
        assert!(x.is_first_integral(&parse_expr("z3", &v).unwrap()).unwrap());
        assert!(!r.is_first_integral(&parse_expr("z1", &v).unwrap()).unwrap());
    }

    #[test]
    fn component_ratios_are_first_integrals_of_line_fields() {
        let v = v3();
        let mut rng = DetRng::new(93);
        for _ in 0..30 {
            let comps: Vec<MultiPoly> = (0..3)
                .map(|i| {
                    MultiPoly::var(&v, i).sub(&MultiPoly::constant(
                        &v,
                        GaussianRational::sample(&mut rng, 6),
                    ))
                })
                .collect();
            let x = PolyVectorField::new(comps);
            assert!(x.line_field_certificate().unwrap().holds);
            for i in 0..3 {
                for j in 0..3 {
                    if i == j || x.component(j).is_zero() {
                        continue;
                    }
                    let h = RatFunc::new(x.component(i).clone(), x.component(j).clone()).unwrap();
                    assert!(x.is_first_integral(&h).unwrap());
                }
            }
        }
    }

    #[test]
    fn symmetry_examples() {
        let v = v3();
        let r = radial(&v);
        // a field is a symmetry of itself
        assert!(r.is_infinitesimal_symmetry(&r).unwrap());
        // any linear field vanishing at the origin commutes with the radial one
        let mut rng = DetRng::new(94);
        for _ in 0..20 {
            let y = PolyVectorField::new(
                (0..3)
                    .map(|_| {
                        let mut p = MultiPoly::zero(&v);
                        for j in 0..3 {
                            p = p.add(
                                &MultiPoly::var(&v, j)
                                    .scale(&GaussianRational::sample(&mut rng, 5)),
                            );
                        }
                        p
                    })
                    .collect(),
            );
            assert!(y.is_infinitesimal_symmetry(&r).unwrap());
        }
        // d/dz3 is not
        let d3 = field(&v, &["0", "0", "1"]);
        assert!(!d3.is_infinitesimal_symmetry(&r).unwrap());
    }

    #[test]
    fn symmetry_is_scale_invariant() {
        let v = v3();
        let x = field(&v, &["z1*z2", "z2^2", "z2*z3 - z1"]);
        let y = field(&v, &["z1", "z2", "0"]);
        assert!(y.is_infinitesimal_symmetry(&x).unwrap());
        let y2 = y.scale(&MultiPoly::int(&v, 7));
        let x2 = x.scale(&MultiPoly::constant(&v, GaussianRational::i()));
        assert!(y2.is_infinitesimal_symmetry(&x).unwrap());
        assert!(y.is_infinitesimal_symmetry(&x2).unwrap());
    }

    #[test]
    fn gradient_examples() {
        let v = v3();
        let f = parse_expr("z1^2", &v).unwrap();
        let g = gradient(&f).unwrap();
        assert_eq!(g.components()[0], parse_expr("2*z1", &v).unwrap());
        assert!(g.components()[1].is_zero());

        let f2 = parse_expr("z1 + (z2 + i*z3)^2", &v).unwrap();
        let g2 = gradient(&f2).unwrap();
        assert_eq!(g2.components()[0], parse_expr("1", &v).unwrap());
        assert_eq!(g2.components()[1], parse_expr("2*(z2 + i*z3)", &v).unwrap());
        assert_eq!(g2.components()[2], parse_expr("2*i*(z2 + i*z3)", &v).unwrap());

        let v5 = VarSet::z(5);
        let phi = parse_expr("z1^2*z3 + z1*z2*z4 + z2^2*z5", &v5).unwrap();
        let gphi = gradient(&phi).unwrap();
        let expect = [
            "2*z1*z3 + z2*z4",
            "z1*z4 + 2*z2*z5",
            "z1^2",
            "z1*z2",
            "z2^2",
        ];
        for (c, e) in gphi.components().iter().zip(expect) {
            assert_eq!(c, &parse_expr(e, &v5).unwrap());
        }

        assert_eq!(
            gradient(&parse_expr("5", &v).unwrap()).unwrap_err(),
            FieldError::ConstantFunction
        );
    }

    #[test]
    fn clear_denominators_examples() {
        let v = v3();
        let x = RatVectorField::new(vec![
            parse_expr("1/z1", &v).unwrap(),
            parse_expr("1", &v).unwrap(),
            parse_expr("0", &v).unwrap(),
        ]);
        let p = x.clear_denominators().unwrap();
        assert_eq!(p.components(), field(&v, &["1", "z1", "0"]).components());

        // polynomial input just gets primitively reduced
        let y = RatVectorField::new(vec![
            parse_expr("z1*z2", &v).unwrap(),
            parse_expr("z1^2", &v).unwrap(),
            parse_expr("0", &v).unwrap(),
        ]);
        let q = y.clear_denominators().unwrap();
        assert_eq!(q.components(), field(&v, &["z2", "z1", "0"]).components());

        // grad(z1 + 1/(z2 + i z3)) clears to ((z2+i z3)^2, -1, -i)
        let f = parse_expr("z1 + 1/(z2 + i*z3)", &v).unwrap();
        let cleared = gradient(&f).unwrap().clear_denominators().unwrap();
        let expected = field(&v, &["(z2 + i*z3)^2", "-1", "-i"]);
        assert_eq!(cleared.components(), expected.components());
    }
}
