//! Sparse multivariate polynomials over Q(i).
//!
//! Terms are kept in a map ordered by graded lexicographic monomial order, so
//! leading terms, display order and equality are all canonical. Zero
//! coefficients are never stored.

mod gcd;
pub(crate) mod ratfunc;

pub use gcd::{exact_divide, poly_gcd};
pub use ratfunc::{RatFunc, UniRatFunc};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::arith::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("values built over different variable sets")]
    VarSetMismatch,
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("substitution makes the denominator identically zero")]
    IdenticallyZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("exact division by the zero polynomial")]
    DivisorZero,
    #[error("invalid variable name: {0}")]
    BadVariableName(String),
}

/// Ordered set of variable names, fixed for the lifetime of values built on it.
///
/// Valid names are `z1, z2, ...` plus the auxiliaries `t` and `s`; this is the
/// same alphabet the expression grammar accepts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for n in &names {
            let ok = n == "t"
                || n == "s"
                || (n.len() > 1
                    && n.starts_with('z')
                    && n[1..].chars().all(|c| c.is_ascii_digit()));
            if !ok {
                return Err(PolyError::BadVariableName(n.clone()));
            }
        }
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(PolyError::BadVariableName(format!("duplicate {n}")));
            }
        }
        Ok(VarSet(Arc::new(names)))
    }

    /// The coordinates `z1..zn`.
    pub fn z(n: usize) -> Self {
        VarSet(Arc::new((1..=n).map(|k| format!("z{k}")).collect()))
    }

    /// The single parameter `t`.
    pub fn t() -> Self {
        VarSet(Arc::new(vec!["t".to_string()]))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// New set with extra names appended.
    pub fn extended<S: Into<String>>(&self, extra: Vec<S>) -> Result<Self, PolyError> {
        let mut names: Vec<String> = self.0.as_ref().clone();
        names.extend(extra.into_iter().map(Into::into));
        VarSet::new(names)
    }
}

/// Exponent vector; one entry per variable of the owning [`VarSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex with earlier
    /// variables weighing more.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0) {
                    if a != b {
                        return a.cmp(b);
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Rescale a family of polynomials by one rational so every coefficient
/// becomes a Gaussian integer with no common integer factor. Returns the
/// factor `s` with `s * normalized = original`. Integer coefficients make all
/// later arithmetic on the family substantially cheaper.
pub fn integer_normalize(comps: &mut [MultiPoly]) -> GaussianRational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for p in comps.iter() {
        for (_, c) in p.terms() {
            for part in [&c.re, &c.im] {
                if !part.is_zero() {
                    den_lcm = den_lcm.lcm(part.denominator());
                }
            }
        }
    }
    for p in comps.iter() {
        for (_, c) in p.terms() {
            for part in [&c.re, &c.im] {
                if !part.is_zero() {
                    let scaled = part.numerator() * (&den_lcm / part.denominator());
                    num_gcd = num_gcd.gcd(&scaled);
                }
            }
        }
    }
    if num_gcd.is_zero() {
        return GaussianRational::one();
    }
    let factor = crate::arith::Rational::new(den_lcm, num_gcd).expect("gcd nonzero");
    let f = GaussianRational::from_rational(factor.clone());
    for p in comps.iter_mut() {
        *p = p.scale(&f);
    }
    GaussianRational::from_rational(factor.inv().expect("nonzero factor"))
}

const PACK_LIMIT: usize = 8;

fn pack(m: &Monomial) -> u128 {
    let mut k = 0u128;
    for (i, &e) in m.0.iter().enumerate() {
        debug_assert!(e < 1 << 16);
        k |= (e as u128) << (16 * i);
    }
    k
}

fn unpack(mut k: u128, arity: usize) -> Monomial {
    let mut e = vec![0u32; arity];
    for slot in e.iter_mut() {
        *slot = (k & 0xFFFF) as u32;
        k >>= 16;
    }
    Monomial(e)
}

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(vars.arity()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        MultiPoly::constant(vars, GaussianRational::one())
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        MultiPoly::constant(vars, GaussianRational::from_int(n))
    }

    pub fn var(vars: &VarSet, idx: usize) -> Self {
        assert!(idx < vars.arity(), "variable index out of range");
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Monomial::var(vars.arity(), idx), GaussianRational::one());
        p
    }

    pub fn from_terms(
        vars: &VarSet,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.arity(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.leading().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Largest total degree of any variable's exponent plus one, per variable.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable sets");
    }

    /// Checked addition; errors instead of panicking on a variable-set clash.
    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch);
        }
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch);
        }
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: &GaussianRational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * k;
        }
        out
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let arity = self.vars.arity();
        if arity <= PACK_LIMIT {
            // Accumulate under packed exponent keys, then restore canonical order.
            let (small, large) = if self.terms.len() <= other.terms.len() {
                (self, other)
            } else {
                (other, self)
            };
            let packed_large: Vec<(u128, &GaussianRational)> =
                large.terms.iter().map(|(m, c)| (pack(m), c)).collect();
            let mut acc: HashMap<u128, GaussianRational> =
                HashMap::with_capacity(packed_large.len() * 2);
            for (ms, cs) in &small.terms {
                let pms = pack(ms);
                for (ml, cl) in &packed_large {
                    let key = pms + ml;
                    let prod = cs * cl;
                    match acc.entry(key) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(prod);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let sum = e.get() + &prod;
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
            let mut out = MultiPoly::zero(&self.vars);
            for (k, c) in acc {
                if !c.is_zero() {
                    out.terms.insert(unpack(k, arity), c);
                }
            }
            out
        } else {
            let mut out = MultiPoly::zero(&self.vars);
            for (ms, cs) in &self.terms {
                for (mo, co) in &other.terms {
                    out.add_term(ms.mul(mo), cs * co);
                }
            }
            out
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.vars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.vars.arity(), "variable index out of range");
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    pub fn derivative_named(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(idx))
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.vars.arity(), "point arity mismatch");
        // Power tables per variable.
        let mut powers: Vec<Vec<GaussianRational>> = Vec::with_capacity(point.len());
        for (v, x) in point.iter().enumerate() {
            let d = self.degree_in(v) as usize;
            let mut tbl = Vec::with_capacity(d + 1);
            tbl.push(GaussianRational::one());
            for k in 1..=d {
                let next = &tbl[k - 1] * x;
                tbl.push(next);
            }
            powers.push(tbl);
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[v][e as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Homogeneous pieces, ascending by degree; empty iff zero.
    pub fn homogeneous_components(&self) -> Vec<(u32, MultiPoly)> {
        let mut buckets: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            buckets
                .entry(m.total_degree())
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(m.clone(), c.clone());
        }
        buckets.into_iter().collect()
    }

    /// Coefficient of `var^k`, with that variable's exponent cleared.
    pub fn coeff_of_power(&self, var: usize, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut m2 = m.clone();
                m2.0[var] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    /// Multiply by `var^k`.
    pub fn mul_var_power(&self, var: usize, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[var] += k;
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// View as a univariate polynomial in `var`: pairs `(k, coefficient)` with
    /// nonzero coefficients, ascending in `k`.
    pub fn univariate_view(&self, var: usize) -> Vec<(u32, MultiPoly)> {
        let mut buckets: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = m2.0[var];
            m2.0[var] = 0;
            buckets
                .entry(k)
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(m2, c.clone());
        }
        buckets.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Divide every coefficient by the leading one, making the polynomial monic.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("leading coefficient is nonzero"))
                }
            }
        }
    }

    /// Random sparse polynomial: at most `terms` monomials of total degree
    /// <= `max_deg`, coefficients of the given height. Deterministic in `rng`.
    pub fn sample(
        rng: &mut crate::rng::DetRng,
        vars: &VarSet,
        max_deg: u32,
        terms: usize,
        height: u64,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for _ in 0..terms {
            let mut e = vec![0u32; vars.arity()];
            let mut left = max_deg;
            for slot in e.iter_mut() {
                let k = rng.below(left as u64 + 1) as u32;
                *slot = k;
                left -= k;
            }
            p = p.add(&MultiPoly::from_terms(
                vars,
                [(Monomial(e), GaussianRational::sample(rng, height))],
            ));
        }
        p
    }

    /// Like [`MultiPoly::sample`] but guaranteed nonzero.
    pub fn sample_nonzero(
        rng: &mut crate::rng::DetRng,
        vars: &VarSet,
        max_deg: u32,
        terms: usize,
        height: u64,
    ) -> MultiPoly {
        loop {
            let p = Self::sample(rng, vars, max_deg, terms, height);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Map this polynomial onto a target variable set; every variable used must
    /// exist (by name) in the target.
    pub fn lift_to(&self, target: &VarSet) -> Result<MultiPoly, PolyError> {
        if self.vars == *target {
            return Ok(self.clone());
        }
        let mut index_map = Vec::with_capacity(self.vars.arity());
        for (v, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => index_map.push(j),
                None => {
                    if self.uses_var(v) {
                        return Err(PolyError::UnknownVariable(name.clone()));
                    }
                    index_map.push(usize::MAX);
                }
            }
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[index_map[v]] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::poly_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::rng::DetRng;

    fn gq(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn random_poly(
        rng: &mut DetRng,
        vars: &VarSet,
        max_deg: u32,
        terms: usize,
        height: u64,
    ) -> MultiPoly {
        MultiPoly::sample(rng, vars, max_deg, terms, height)
    }

    #[test]
    fn square_of_sum() {
        let v = VarSet::z(2);
        let z1 = MultiPoly::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let s = z1.add(&z2);
        let sq = s.mul(&s);
        let expected = z1
            .mul(&z1)
            .add(&z1.mul(&z2).scale(&gq(2)))
            .add(&z2.mul(&z2));
        assert_eq!(sq, expected);
    }

    #[test]
    fn additive_identity_and_difference_of_squares() {
        let v = VarSet::z(2);
        let z1 = MultiPoly::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        assert_eq!(z1.add(&MultiPoly::zero(&v)), z1);
        let prod = z1.sub(&z2).mul(&z1.add(&z2));
        assert_eq!(prod, z1.mul(&z1).sub(&z2.mul(&z2)));
    }

    #[test]
    fn derivative_basics() {
        let v = VarSet::z(3);
        let z1 = MultiPoly::var(&v, 0);
        let z3 = MultiPoly::var(&v, 2);
        // d(z1^2 z3)/dz1 = 2 z1 z3
        let p = z1.pow(2).mul(&z3);
        assert_eq!(p.derivative(0), z1.mul(&z3).scale(&gq(2)));
        // constants die
        assert!(MultiPoly::int(&v, 7).derivative(0).is_zero());
    }

    #[test]
    fn gordan_noether_partial() {
        // phi = z1^2 z3 + z1 z2 z4 + z2^2 z5; d(phi)/dz3 = z1^2
        let v = VarSet::z(5);
        let z: Vec<_> = (0..5).map(|i| MultiPoly::var(&v, i)).collect();
        let phi = z[0]
            .pow(2)
            .mul(&z[2])
            .add(&z[0].mul(&z[1]).mul(&z[3]))
            .add(&z[1].pow(2).mul(&z[4]));
        assert_eq!(phi.derivative(2), z[0].pow(2));
        assert_eq!(
            phi.evaluate(&[gq(1), gq(1), gq(1), gq(1), gq(1)]),
            gq(3)
        );
        let comps = phi.homogeneous_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, 3);
    }

    #[test]
    fn homogeneous_components_split_and_reassemble() {
        let v = VarSet::z(3);
        let z1 = MultiPoly::var(&v, 0);
        let z3 = MultiPoly::var(&v, 2);
        let p = z1.pow(2).mul(&z3).add(&z1);
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (1, z1.clone()));
        assert_eq!(comps[1], (3, z1.pow(2).mul(&z3)));
        assert!(MultiPoly::zero(&v).homogeneous_components().is_empty());

        let mut rng = DetRng::new(11);
        for _ in 0..100 {
            let p = random_poly(&mut rng, &v, 5, 6, 10);
            let mut sum = MultiPoly::zero(&v);
            for (d, comp) in p.homogeneous_components() {
                for (m, _) in comp.terms() {
                    assert_eq!(m.total_degree(), d);
                }
                sum = sum.add(&comp);
            }
            assert_eq!(sum, p);
        }
    }

    #[test]
    fn evaluate_simple() {
        let v = VarSet::z(2);
        let p = MultiPoly::var(&v, 0).mul(&MultiPoly::var(&v, 1));
        assert_eq!(p.evaluate(&[gq(2), gq(3)]), gq(6));
    }

    #[test]
    fn varset_rejects_bad_names() {
        assert!(VarSet::new(vec!["x"]).is_err());
        assert!(VarSet::new(vec!["z1", "z1"]).is_err());
        assert!(VarSet::new(vec!["z1", "t", "s"]).is_ok());
    }

    #[test]
    fn try_ops_catch_varset_mismatch() {
        let a = MultiPoly::var(&VarSet::z(2), 0);
        let b = MultiPoly::var(&VarSet::z(3), 0);
        assert_eq!(a.try_add(&b), Err(PolyError::VarSetMismatch));
    }

    #[test]
    fn derivative_is_linear_and_leibniz() {
        let v = VarSet::z(3);
        let mut rng = DetRng::new(4242);
        for _ in 0..200 {
            let p = random_poly(&mut rng, &v, 4, 5, 8);
            let q = random_poly(&mut rng, &v, 4, 5, 8);
            for var in 0..3 {
                assert_eq!(p.add(&q).derivative(var), p.derivative(var).add(&q.derivative(var)));
                let lhs = p.mul(&q).derivative(var);
                let rhs = p.derivative(var).mul(&q).add(&p.mul(&q.derivative(var)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn monic_normalizes_leading_coefficient() {
        let v = VarSet::z(1);
        let z = MultiPoly::var(&v, 0);
        let p = z.pow(2).scale(&gq(3)).add(&MultiPoly::int(&v, 6));
        let m = p.monic();
        assert_eq!(m.leading_coeff(), Some(&GaussianRational::one()));
        assert_eq!(
            m,
            z.pow(2).add(&MultiPoly::constant(
                &v,
                GaussianRational::from_rational(Rational::from_int(2))
            ))
        );
    }
}
