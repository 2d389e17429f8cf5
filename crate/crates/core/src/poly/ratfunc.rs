//! Normalized rational functions over Q(i).
//!
//! A [`RatFunc`] is a reduced fraction of [`MultiPoly`]s: the gcd of numerator
//! and denominator is a unit and the denominator is monic in graded-lex order.
//! Normalization is eager, so structural equality is semantic equality.

use std::collections::HashMap;

use super::gcd::{exact_divide, poly_gcd};
use super::{Monomial, MultiPoly, PolyError, VarSet};
use crate::arith::GaussianRational;

/// Rational function in one variable (a [`RatFunc`] over an arity-1 set).
pub type UniRatFunc = RatFunc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Build and normalize `num/den`.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        assert_eq!(num.vars(), den.vars(), "fraction over mixed variable sets");
        if num.is_zero() {
            return Ok(RatFunc { num, den: MultiPoly::one(den.vars()) });
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator constant");
            return Ok(RatFunc { num: num.scale(&inv), den: MultiPoly::one(num.vars()) });
        }
        // den | num happens all the time in identity workloads; catch it
        // before paying for a full gcd.
        if let Some(q) = exact_divide(&num, &den)? {
            return Ok(RatFunc { num: q, den: MultiPoly::one(den.vars()) });
        }
        let g = poly_gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                exact_divide(&num, &g)?.expect("gcd divides numerator"),
                exact_divide(&den, &g)?.expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("leading coefficient nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn zero(vars: &VarSet) -> Self {
        RatFunc::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        RatFunc::from_poly(MultiPoly::one(vars))
    }

    pub fn constant(vars: &VarSet, c: GaussianRational) -> Self {
        RatFunc::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: &VarSet, idx: usize) -> Self {
        RatFunc::from_poly(MultiPoly::var(vars, idx))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("denominator product is nonzero")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("denominator product is nonzero")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    /// Finish a fraction whose numerator and denominator are already coprime:
    /// only the monic normalization of the denominator remains.
    fn from_reduced(num: MultiPoly, den: MultiPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { den: MultiPoly::one(num.vars()), num };
        }
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("leading coefficient nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Cross-reduced product: cancelling `gcd(num_l, den_r)` and
    /// `gcd(num_r, den_l)` first leaves an already-reduced fraction.
    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.vars());
        }
        let g1 = poly_gcd(&self.num, &other.den).expect("operands nonzero");
        let g2 = poly_gcd(&other.num, &self.den).expect("operands nonzero");
        let div = |p: &MultiPoly, g: &MultiPoly| -> MultiPoly {
            if g.is_one() {
                p.clone()
            } else {
                exact_divide(p, g).expect("gcd nonzero").expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&other.den, &g1));
        RatFunc::from_reduced(num, den)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(self.mul(&RatFunc::from_reduced(other.den.clone(), other.num.clone())))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // coprime parts stay coprime under powers
        RatFunc::from_reduced(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &GaussianRational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// Exact partial derivative (quotient rule, renormalized).
    ///
    /// The repeated part `g = gcd(den, d(den))` of the denominator always
    /// divides the raw quotient-rule numerator, so it is peeled off before the
    /// residual gcd runs; after peeling, the fraction is generically reduced
    /// already and the cheap coprimality certificate settles it.
    pub fn derivative(&self, var: usize) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative(var));
        }
        let dden = self.den.derivative(var);
        if dden.is_zero() {
            return RatFunc::new(self.num.derivative(var), self.den.clone())
                .expect("denominator unchanged");
        }
        let num = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&dden));
        let g = poly_gcd(&self.den, &dden).expect("denominator nonzero");
        if g.is_one() {
            return RatFunc::new(num, self.den.mul(&self.den))
                .expect("denominator square is nonzero");
        }
        let num = exact_divide(&num, &g)
            .expect("gcd nonzero")
            .expect("repeated denominator part divides the numerator");
        let den_over_g = exact_divide(&self.den, &g)
            .expect("gcd nonzero")
            .expect("gcd divides the denominator");
        RatFunc::new(num, self.den.mul(&den_over_g)).expect("denominator nonzero")
    }

    pub fn derivative_named(&self, var: &str) -> Result<RatFunc, PolyError> {
        let idx = self
            .vars()
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(idx))
    }

    /// Exact evaluation; errors when the denominator vanishes at the point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational, PolyError> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(PolyError::PoleAtPoint);
        }
        Ok(&self.num.evaluate(point) / &d)
    }

    /// Simultaneous substitution. Every variable of `self` is sent to the
    /// matching entry of `assignment` (per name), or to the same-named
    /// variable of `target` when absent.
    pub fn substitute(
        &self,
        target: &VarSet,
        assignment: &[(&str, RatFunc)],
    ) -> Result<RatFunc, PolyError> {
        for (name, value) in assignment {
            if value.vars() != target {
                return Err(PolyError::VarSetMismatch);
            }
            if self.vars().index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
        }
        let mut values: Vec<RatFunc> = Vec::with_capacity(self.vars().arity());
        for name in self.vars().names() {
            match assignment.iter().find(|(n, _)| n == name) {
                Some((_, v)) => values.push(v.clone()),
                None => {
                    let idx = target
                        .index_of(name)
                        .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                    values.push(RatFunc::var(target, idx));
                }
            }
        }
        let (num_hat, den_hat) = compose_fraction_pair(&self.num, &self.den, &values);
        if den_hat.is_zero() {
            return Err(PolyError::IdenticallyZeroDenominator);
        }
        RatFunc::new(num_hat, den_hat)
    }

    /// Random rational function with numerator/denominator of total degree at
    /// most `num_deg` / `den_deg`.
    pub fn sample(
        rng: &mut crate::rng::DetRng,
        vars: &VarSet,
        num_deg: u32,
        den_deg: u32,
        height: u64,
    ) -> RatFunc {
        let num = MultiPoly::sample(rng, vars, num_deg, (num_deg + 2) as usize, height);
        let den = MultiPoly::sample_nonzero(rng, vars, den_deg, (den_deg + 2) as usize, height);
        RatFunc::new(num, den).expect("denominator nonzero")
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::parser::format_expr(self))
    }
}

/// Helpers for univariate rational functions in `t`.
impl RatFunc {
    /// The identity function `t` over the one-variable set.
    pub fn t_var() -> UniRatFunc {
        RatFunc::var(&VarSet::t(), 0)
    }

    /// Compose a univariate function with an inner multivariate argument:
    /// `self(arg)`. `self` must have arity 1.
    pub fn compose_univariate(&self, arg: &RatFunc) -> Result<RatFunc, PolyError> {
        assert_eq!(self.vars().arity(), 1, "compose_univariate needs arity 1");
        let name = self.vars().name(0).to_string();
        self.substitute(arg.vars(), &[(&name, arg.clone())])
    }
}

/// Evaluate the pair `p/q` at `values` simultaneously, returning an
/// unnormalized fraction. Exposed at crate level so identity checks can skip
/// normalization of large intermediates.
pub(crate) fn compose_fraction_pair(
    p: &MultiPoly,
    q: &MultiPoly,
    values: &[RatFunc],
) -> (MultiPoly, MultiPoly) {
    let target = values
        .first()
        .map(|v| v.vars().clone())
        .expect("at least one value");
    // Common denominator for all substituted values.
    let mut common = MultiPoly::one(&target);
    for v in values {
        let g = poly_gcd(&common, v.den()).expect("nonzero denominators");
        let extra = exact_divide(v.den(), &g)
            .expect("gcd nonzero")
            .expect("gcd divides");
        common = common.mul(&extra);
    }
    let nums: Vec<MultiPoly> = values
        .iter()
        .map(|v| {
            let cof = exact_divide(&common, v.den())
                .expect("den nonzero")
                .expect("den divides common denominator");
            v.num().mul(&cof)
        })
        .collect();
    let dp = p.total_degree();
    let dq = q.total_degree();
    let degree = dp.max(dq);
    let mut memo: HashMap<Monomial, MultiPoly> = HashMap::new();
    let p_hat = compose_homogenized(p, &nums, &common, degree, &mut memo);
    let q_hat = compose_homogenized(q, &nums, &common, degree, &mut memo);
    (p_hat, q_hat)
}

/// `sum_m c_m * prod_i nums[i]^{m_i} * den^{degree - |m|}`, i.e. the numerator
/// of `p(nums/den)` over the denominator `den^degree`.
pub(crate) fn compose_homogenized(
    p: &MultiPoly,
    nums: &[MultiPoly],
    den: &MultiPoly,
    degree: u32,
    memo: &mut HashMap<Monomial, MultiPoly>,
) -> MultiPoly {
    let target = nums
        .first()
        .map(|v| v.vars().clone())
        .unwrap_or_else(|| den.vars().clone());
    // Powers of the common denominator up to `degree`.
    let mut den_pows = Vec::with_capacity(degree as usize + 1);
    den_pows.push(MultiPoly::one(&target));
    for k in 1..=degree as usize {
        let next = den_pows[k - 1].mul(den);
        den_pows.push(next);
    }
    let mut acc = MultiPoly::zero(&target);
    for (m, c) in p.terms() {
        let pp = power_product(m, nums, memo);
        let pad = (degree - m.total_degree()) as usize;
        acc = acc.add(&pp.mul(&den_pows[pad]).scale(c));
    }
    acc
}

impl MultiPoly {
    /// Pure polynomial composition: evaluate `self` at polynomial arguments
    /// over a common target variable set.
    pub fn compose(&self, args: &[MultiPoly]) -> MultiPoly {
        assert_eq!(args.len(), self.vars().arity(), "one argument per variable");
        let target = args
            .first()
            .map(|a| a.vars().clone())
            .unwrap_or_else(|| self.vars().clone());
        let one = MultiPoly::one(&target);
        let mut memo: HashMap<Monomial, MultiPoly> = HashMap::new();
        compose_homogenized(self, args, &one, self.total_degree(), &mut memo)
    }
}

fn power_product(
    m: &Monomial,
    nums: &[MultiPoly],
    memo: &mut HashMap<Monomial, MultiPoly>,
) -> MultiPoly {
    if let Some(hit) = memo.get(m) {
        return hit.clone();
    }
    let value = match m.0.iter().position(|&e| e > 0) {
        None => MultiPoly::one(nums[0].vars()),
        Some(i) => {
            let mut prev = m.clone();
            prev.0[i] -= 1;
            power_product(&prev, nums, memo).mul(&nums[i])
        }
    };
    memo.insert(m.clone(), value.clone());
    value
}
