//! Riccati equations `a(t) y' = c0 + c3 y + A3 y^2` with quadratic `a`, as
//! they arise from infinitesimal symmetries of degenerate open books: the
//! point-curve profile must solve one of three normal forms, whose rational
//! solutions are completely explicit.

use crate::arith::GaussianRational;
use crate::poly::{MultiPoly, RatFunc, UniRatFunc, VarSet};

type Gq = GaussianRational;

/// `a(t) y' - (c0 + c3 y + A3 y^2)`, with `deg a <= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiccatiEquation {
    a: MultiPoly,
    c0: Gq,
    c3: Gq,
    a3: Gq,
}

impl RiccatiEquation {
    pub fn new(a: MultiPoly, c0: Gq, c3: Gq, a3: Gq) -> Self {
        assert_eq!(a.vars().arity(), 1, "coefficient a is univariate");
        assert!(a.total_degree() <= 2, "coefficient a has degree at most 2");
        assert!(
            !(a.is_zero() && c0.is_zero() && c3.is_zero() && a3.is_zero()),
            "equation must not vanish identically"
        );
        RiccatiEquation { a, c0, c3, a3 }
    }

    pub fn coefficient(&self) -> &MultiPoly {
        &self.a
    }

    pub fn scalars(&self) -> (&Gq, &Gq, &Gq) {
        (&self.c0, &self.c3, &self.a3)
    }
}

/// Exact residual `a(t) y' - (c0 + c3 y + A3 y^2)`.
pub fn riccati_residual(eq: &RiccatiEquation, y: &UniRatFunc) -> UniRatFunc {
    assert_eq!(y.vars().arity(), 1, "solution candidate is univariate");
    let vt = y.vars().clone();
    let a = RatFunc::from_poly(eq.a.lift_to(&vt).expect("both univariate in t"));
    let rhs = RatFunc::constant(&vt, eq.c0.clone())
        .add(&y.scale(&eq.c3))
        .add(&y.mul(y).scale(&eq.a3));
    a.mul(&y.derivative(0)).sub(&rhs)
}

/// The three normal forms reached after normalizing the constant solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiccatiFamily {
    /// `t^2 y' + y = 0`: irregular singularity, the only rational solution
    /// is `y = 0`.
    Irregular,
    /// `t y' + lambda y = 0`: Euler equation, rational solutions `t^(-lambda)`
    /// exist exactly for integer `lambda`.
    Euler,
    /// `t^2 y' - y^2 = 0`: solved by the rational family `t/(1 + mu t)`.
    Quadratic,
}

impl RiccatiFamily {
    /// The equation itself, in residual form.
    pub fn equation(&self, param: Option<&Gq>) -> RiccatiEquation {
        let vt = VarSet::t();
        let t = MultiPoly::var(&vt, 0);
        match self {
            RiccatiFamily::Irregular => {
                RiccatiEquation::new(t.pow(2), Gq::zero(), -&Gq::one(), Gq::zero())
            }
            RiccatiFamily::Euler => {
                let lambda = param.expect("euler family needs lambda").clone();
                RiccatiEquation::new(t, Gq::zero(), -&lambda, Gq::zero())
            }
            RiccatiFamily::Quadratic => {
                RiccatiEquation::new(t.pow(2), Gq::zero(), Gq::zero(), Gq::one())
            }
        }
    }
}

/// The rational solution of a family, when one exists:
/// irregular -> `0`; euler(lambda) -> `t^(-lambda)` for integer lambda,
/// none otherwise; quadratic(mu) -> `t/(1 + mu t)`.
pub fn riccati_family_solution(
    family: RiccatiFamily,
    param: Option<&Gq>,
) -> Option<UniRatFunc> {
    let vt = VarSet::t();
    match family {
        RiccatiFamily::Irregular => Some(RatFunc::zero(&vt)),
        RiccatiFamily::Euler => {
            let lambda = param.expect("euler family needs lambda");
            if !lambda.is_real() || !lambda.re.is_integer() {
                return None;
            }
            let n: i64 = lambda.re.numerator().try_into().ok()?;
            let t = RatFunc::var(&vt, 0);
            let e = u32::try_from(n.unsigned_abs()).ok()?;
            if n <= 0 {
                Some(t.pow(e))
            } else {
                Some(RatFunc::one(&vt).div(&t.pow(e)).expect("t^e is nonzero"))
            }
        }
        RiccatiFamily::Quadratic => {
            let mu = param.expect("quadratic family needs mu");
            let t = RatFunc::var(&vt, 0);
            let den = RatFunc::one(&vt).add(&t.scale(mu));
            Some(t.div(&den).expect("1 + mu t is nonzero"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use crate::rng::DetRng;

    fn gq(n: i64) -> Gq {
        Gq::from_int(n)
    }

    fn uni(s: &str) -> UniRatFunc {
        parse_expr(s, &VarSet::t()).unwrap()
    }

    #[test]
    fn residual_examples() {
        // quadratic family at mu = 2: y = t/(1 + 2t)
        let eq = RiccatiFamily::Quadratic.equation(None);
        assert!(riccati_residual(&eq, &uni("t/(1 + 2*t)")).is_zero());

        // irregular: only y = 0
        let eq2 = RiccatiFamily::Irregular.equation(None);
        assert!(riccati_residual(&eq2, &uni("0")).is_zero());
        assert!(!riccati_residual(&eq2, &uni("t")).is_zero());

        // euler with lambda = -3: y = t^3
        let eq3 = RiccatiFamily::Euler.equation(Some(&gq(-3)));
        assert!(riccati_residual(&eq3, &uni("t^3")).is_zero());
    }

    #[test]
    fn family_solutions() {
        assert_eq!(
            riccati_family_solution(RiccatiFamily::Euler, Some(&gq(-2))).unwrap(),
            uni("t^2")
        );
        let half = Gq::from_rational(crate::arith::Rational::new(1.into(), 2.into()).unwrap());
        assert!(riccati_family_solution(RiccatiFamily::Euler, Some(&half)).is_none());
        assert!(riccati_family_solution(RiccatiFamily::Euler, Some(&Gq::i())).is_none());
        assert_eq!(
            riccati_family_solution(RiccatiFamily::Quadratic, Some(&gq(0))).unwrap(),
            uni("t")
        );
        assert!(riccati_family_solution(RiccatiFamily::Irregular, None)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn family_solutions_satisfy_their_equations() {
        let mut rng = DetRng::new(88);
        for _ in 0..100 {
            let lambda = Gq::from_int(rng.int_signed(10));
            let eq = RiccatiFamily::Euler.equation(Some(&lambda));
            let y = riccati_family_solution(RiccatiFamily::Euler, Some(&lambda)).unwrap();
            assert!(riccati_residual(&eq, &y).is_zero());

            let mu = Gq::sample(&mut rng, 10);
            let eq2 = RiccatiFamily::Quadratic.equation(None);
            let y2 = riccati_family_solution(RiccatiFamily::Quadratic, Some(&mu)).unwrap();
            assert!(riccati_residual(&eq2, &y2).is_zero());

            let eq3 = RiccatiFamily::Irregular.equation(None);
            let y3 = riccati_family_solution(RiccatiFamily::Irregular, None).unwrap();
            assert!(riccati_residual(&eq3, &y3).is_zero());
        }
    }
}
