//! Operators around Hessian degeneracy: det Hess, Monge-Ampère and Burgers
//! residuals, the Gauss map and its generic rank, annihilating polynomials,
//! and the explicit families of Hessian-degenerate functions in two and three
//! variables.

use crate::arith::GaussianRational;
use crate::field::gradient;
use crate::poly::ratfunc::compose_fraction_pair;
use crate::poly::{MultiPoly, PolyError, RatFunc, UniRatFunc, VarSet};
use crate::rng::DetRng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdeError {
    #[error("expected a function of exactly {expected} variables")]
    WrongArity { expected: usize },
    #[error("function is constant")]
    ConstantFunction,
    #[error("annihilator arity does not match the function arity")]
    ArityMismatch,
    #[error("could not sample a pole-free point after {0} retries")]
    SamplingExhausted(usize),
    #[error("direction coefficients must not both vanish")]
    DegenerateDirection,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

const POLE_RETRIES: usize = 20;

/// Matrix of second partials of `f`.
pub fn hessian_matrix(f: &RatFunc) -> Vec<Vec<RatFunc>> {
    let n = f.vars().arity();
    let firsts: Vec<RatFunc> = (0..n).map(|i| f.derivative(i)).collect();
    (0..n)
        .map(|i| (0..n).map(|j| firsts[i].derivative(j)).collect())
        .collect()
}

fn poly_det(m: &[Vec<MultiPoly>], vars: &VarSet) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(vars);
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot.mul(&poly_det(&minor, vars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Exact determinant of the Hessian matrix of `f`.
///
/// Every second partial of `P/Q` is a polynomial over the common denominator
/// `Q^3`, so the determinant reduces to one polynomial determinant over
/// `Q^(3n)`: no intermediate fraction is ever normalized.
pub fn hessian_det(f: &RatFunc) -> RatFunc {
    let vars = f.vars().clone();
    let n = vars.arity();
    if f.is_polynomial() {
        let firsts: Vec<MultiPoly> = (0..n).map(|i| f.num().derivative(i)).collect();
        let rows: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| firsts[i].derivative(j)).collect())
            .collect();
        return RatFunc::from_poly(poly_det(&rows, &vars));
    }
    let p = f.num();
    let q = f.den();
    let two = GaussianRational::from_int(2);
    let firsts: Vec<MultiPoly> = (0..n)
        .map(|i| p.derivative(i).mul(q).sub(&p.mul(&q.derivative(i))))
        .collect();
    let rows: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    firsts[i]
                        .derivative(j)
                        .mul(q)
                        .sub(&firsts[i].mul(&q.derivative(j)).scale(&two))
                })
                .collect()
        })
        .collect();
    let det = poly_det(&rows, &vars);
    RatFunc::new(det, q.pow(3 * n as u32)).expect("denominator power is nonzero")
}

/// `f11 f22 - f12^2 - 1` for a function of two variables.
pub fn monge_ampere_residual(f: &RatFunc) -> Result<RatFunc, PdeError> {
    if f.vars().arity() != 2 {
        return Err(PdeError::WrongArity { expected: 2 });
    }
    let det = hessian_det(f);
    Ok(det.sub(&RatFunc::one(f.vars())))
}

/// The tuple of first partials of a nonconstant function.
pub fn gauss_map(f: &RatFunc) -> Result<Vec<RatFunc>, PdeError> {
    let grad = gradient(f).map_err(|_| PdeError::ConstantFunction)?;
    Ok(grad.components().to_vec())
}

/// Generic rank of the Gauss map, estimated as the maximum exact rank of the
/// Hessian at sampled rational points. Never exceeds the true generic rank;
/// equals it with overwhelming probability for a handful of trials.
pub fn gauss_generic_rank(
    f: &RatFunc,
    rng: &mut DetRng,
    trials: usize,
    height: u64,
) -> Result<usize, PdeError> {
    assert!(trials >= 1, "at least one trial");
    let n = f.vars().arity();
    let hess = hessian_matrix(f);
    let mut best = 0;
    for _ in 0..trials {
        let mut found = None;
        for _ in 0..POLE_RETRIES {
            let point: Vec<GaussianRational> =
                (0..n).map(|_| GaussianRational::sample(rng, height)).collect();
            let mut rows = Vec::with_capacity(n);
            let mut ok = true;
            'rows: for row in &hess {
                let mut vals = Vec::with_capacity(n);
                for entry in row {
                    match entry.evaluate(&point) {
                        Ok(v) => vals.push(v),
                        Err(_) => {
                            ok = false;
                            break 'rows;
                        }
                    }
                }
                rows.push(vals);
            }
            if ok {
                found = Some(crate::linalg::rank(&rows));
                break;
            }
        }
        match found {
            Some(r) => best = best.max(r),
            None => return Err(PdeError::SamplingExhausted(POLE_RETRIES)),
        }
    }
    Ok(best)
}

/// Does `p(df/dz1, ..., df/dzn) = 0` hold identically?
pub fn annihilator_check(p: &MultiPoly, f: &RatFunc) -> Result<bool, PdeError> {
    if p.vars().arity() != f.vars().arity() {
        return Err(PdeError::ArityMismatch);
    }
    let grad = gauss_map(f)?;
    let one = MultiPoly::one(p.vars());
    let (num_hat, _) = compose_fraction_pair(p, &one, &grad);
    Ok(num_hat.is_zero())
}

/// The classical quintic-variable cubic `z1^2 z3 + z1 z2 z4 + z2^2 z5` whose
/// Hessian determinant vanishes although it depends on all five variables.
pub fn gordan_noether() -> MultiPoly {
    let v = VarSet::z(5);
    let z: Vec<MultiPoly> = (0..5).map(|i| MultiPoly::var(&v, i)).collect();
    z[0].pow(2)
        .mul(&z[2])
        .add(&z[0].mul(&z[1]).mul(&z[3]))
        .add(&z[1].pow(2).mul(&z[4]))
}

/// `da/dz1 + a * da/dz2` for a function of two variables.
pub fn burgers_residual(a: &RatFunc) -> Result<RatFunc, PdeError> {
    if a.vars().arity() != 2 {
        return Err(PdeError::WrongArity { expected: 2 });
    }
    Ok(a.derivative(0).add(&a.mul(&a.derivative(1))))
}

fn affine_tail(vars: &VarSet, consts: &(GaussianRational, GaussianRational, GaussianRational)) -> RatFunc {
    RatFunc::var(vars, 0)
        .scale(&consts.0)
        .add(&RatFunc::var(vars, 1).scale(&consts.1))
        .add(&RatFunc::constant(vars, consts.2.clone()))
}

/// First two-variable family: `ell(a1 z1 + a2 z2) + c1 z1 + c2 z2 + c3`.
/// Always Hessian-degenerate.
pub fn hesse2d_linear_form(
    ell: &UniRatFunc,
    a: (GaussianRational, GaussianRational),
    consts: (GaussianRational, GaussianRational, GaussianRational),
) -> Result<RatFunc, PdeError> {
    if a.0.is_zero() && a.1.is_zero() {
        return Err(PdeError::DegenerateDirection);
    }
    let v = VarSet::z(2);
    let arg = RatFunc::var(&v, 0).scale(&a.0).add(&RatFunc::var(&v, 1).scale(&a.1));
    let composed = ell.compose_univariate(&arg)?;
    Ok(composed.add(&affine_tail(&v, &consts)))
}

/// Second two-variable family:
/// `ell((z1 - b1)/(z2 - b2)) * (z2 - b2) + c1 z1 + c2 z2 + c3`.
/// Always Hessian-degenerate.
pub fn hesse2d_pencil(
    ell: &UniRatFunc,
    b: (GaussianRational, GaussianRational),
    consts: (GaussianRational, GaussianRational, GaussianRational),
) -> Result<RatFunc, PdeError> {
    let v = VarSet::z(2);
    let den = RatFunc::var(&v, 1).sub(&RatFunc::constant(&v, b.1.clone()));
    let num = RatFunc::var(&v, 0).sub(&RatFunc::constant(&v, b.0.clone()));
    let arg = num.div(&den).expect("z2 - b2 is not the zero polynomial");
    let composed = ell.compose_univariate(&arg)?;
    Ok(composed.mul(&den).add(&affine_tail(&v, &consts)))
}

/// First three-variable polynomial family: `eps*z1 + phi(z2, z3)`.
pub fn hesse3d_affine(eps: bool, phi: &MultiPoly) -> MultiPoly {
    let v = VarSet::z(3);
    let phi = phi.lift_to(&v).expect("phi lives in z2, z3");
    assert!(!phi.uses_var(0), "phi must not involve z1");
    if eps {
        MultiPoly::var(&v, 0).add(&phi)
    } else {
        phi
    }
}

/// Second three-variable polynomial family:
/// `a1(z1) + z2*a2(z1) + z3*a3(z1)` with univariate polynomial coefficients.
pub fn hesse3d_ruled(a1: &MultiPoly, a2: &MultiPoly, a3: &MultiPoly) -> MultiPoly {
    let v = VarSet::z(3);
    let z1 = RatFunc::var(&v, 0);
    let into_z1 = |p: &MultiPoly| -> MultiPoly {
        assert_eq!(p.vars().arity(), 1, "coefficients are univariate");
        RatFunc::from_poly(p.clone())
            .compose_univariate(&z1)
            .expect("polynomial composition")
            .num()
            .clone()
    };
    into_z1(a1)
        .add(&MultiPoly::var(&v, 1).mul(&into_z1(a2)))
        .add(&MultiPoly::var(&v, 2).mul(&into_z1(a3)))
}

/// Composite of the solution families, keyed the way the CLI exposes them.
pub fn hesse_construct_2d(
    kind: u8,
    ell: &UniRatFunc,
    pair: (GaussianRational, GaussianRational),
    consts: (GaussianRational, GaussianRational, GaussianRational),
) -> Result<RatFunc, PdeError> {
    match kind {
        1 => hesse2d_linear_form(ell, pair, consts),
        2 => hesse2d_pencil(ell, pair, consts),
        _ => panic!("kind must be 1 or 2"),
    }
}

/// Evaluate `p` at rational-function arguments (used by tests and the CLI to
/// check annihilators against arbitrary tuples, not only gradients).
pub fn poly_at_ratfuncs(p: &MultiPoly, args: &[RatFunc]) -> Result<RatFunc, PdeError> {
    assert_eq!(p.vars().arity(), args.len(), "argument count mismatch");
    let one = MultiPoly::one(p.vars());
    let (num_hat, den_hat) = compose_fraction_pair(p, &one, args);
    // den_hat is a power of the common denominator: never zero
    Ok(RatFunc::new(num_hat, den_hat)?)
}
