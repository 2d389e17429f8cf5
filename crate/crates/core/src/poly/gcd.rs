//! Multivariate polynomial GCD and exact division.
//!
//! The GCD runs a primitive polynomial remainder sequence on a univariate view
//! in one main variable, recursing into the coefficient ring for contents. No
//! modular images: everything stays exact over Q(i).

use super::{MultiPoly, PolyError};
use crate::arith::GaussianRational;

/// Exact quotient `p / q`: `Some(r)` with `q*r = p`, or `None` when no
/// polynomial quotient exists.
pub fn exact_divide(p: &MultiPoly, q: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
    if q.is_zero() {
        return Err(PolyError::DivisorZero);
    }
    assert_eq!(p.vars(), q.vars(), "polynomials over different variable sets");
    if p.is_zero() {
        return Ok(Some(MultiPoly::zero(p.vars())));
    }
    if let Some(c) = q.as_constant() {
        return Ok(Some(p.scale(&c.inv().expect("nonzero constant"))));
    }
    let (qm, qc) = q.leading().expect("q nonzero");
    let qm = qm.clone();
    let qc = qc.clone();
    let mut rem = p.clone();
    let mut quot = MultiPoly::zero(p.vars());
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().expect("rem nonzero");
        if !qm.divides(rm) {
            // a term survives into the remainder: p is not a multiple of q
            return Ok(None);
        }
        let m = qm.quotient_into(rm);
        let c = rc / &qc;
        quot = quot.add(&MultiPoly::from_terms(p.vars(), [(m.clone(), c.clone())]));
        rem = rem.sub(&q.mul_term(&m, &c));
    }
    Ok(Some(quot))
}

/// Monic greatest common divisor; `gcd(p, 0)` is `p` made monic.
pub fn poly_gcd(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
    assert_eq!(p.vars(), q.vars(), "polynomials over different variable sets");
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::BothZero);
    }
    Ok(gcd_rec(p, q).monic())
}

fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.vars());
    }
    // Main variable: last one appearing in either operand.
    let arity = p.vars().arity();
    let var = (0..arity)
        .rev()
        .find(|&v| p.uses_var(v) || q.uses_var(v))
        .expect("nonconstant polynomial uses some variable");

    // Single shared variable: plain monic Euclid, no content machinery.
    let used: Vec<usize> = (0..arity).filter(|&v| p.uses_var(v) || q.uses_var(v)).collect();
    if used.len() == 1 {
        return univariate_gcd(p, q, used[0]);
    }

    // Coprimality fast path: restricting to a line that preserves the total
    // degree of `p` maps any common factor to a nonconstant common factor of
    // the restrictions; a coprime restriction therefore certifies gcd = 1.
    if coprime_on_a_line(p, q) {
        return MultiPoly::one(p.vars());
    }

    let cont_p = content_in(p, var);
    let cont_q = content_in(q, var);
    let cont_gcd = gcd_rec(&cont_p, &cont_q);
    let pp_p = divide_exactly(p, &cont_p);
    let pp_q = divide_exactly(q, &cont_q);

    let (mut a, mut b) = if pp_p.degree_in(var) >= pp_q.degree_in(var) {
        (pp_p, pp_q)
    } else {
        (pp_q, pp_p)
    };
    let pp_gcd = loop {
        if b.degree_in(var) == 0 {
            // v-free nonzero remainder against a v-primitive partner
            break MultiPoly::one(p.vars());
        }
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(var) == 0 {
            break MultiPoly::one(p.vars());
        }
        a = b;
        b = primitive_in(&r, var);
    };
    cont_gcd.mul(&pp_gcd)
}

/// Monic Euclidean algorithm for polynomials in one shared variable.
fn univariate_gcd(p: &MultiPoly, q: &MultiPoly, var: usize) -> MultiPoly {
    let vars = p.vars().clone();
    let to_vec = |f: &MultiPoly| -> Vec<GaussianRational> {
        let d = f.degree_in(var) as usize;
        let mut out = vec![GaussianRational::zero(); d + 1];
        for (m, c) in f.terms() {
            out[m.0[var] as usize] = c.clone();
        }
        out
    };
    let g = coeff_vec_gcd(to_vec(p), to_vec(q));
    let mut out = MultiPoly::zero(&vars);
    for (k, c) in g.into_iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0u32; vars.arity()];
            e[var] = k as u32;
            out = out.add(&MultiPoly::from_terms(&vars, [(super::Monomial(e), c)]));
        }
    }
    out
}

fn trim(v: &mut Vec<GaussianRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Monic gcd of two univariate coefficient vectors (index = power).
fn coeff_vec_gcd(
    mut a: Vec<GaussianRational>,
    mut b: Vec<GaussianRational>,
) -> Vec<GaussianRational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b, with b normalized monic
        let lead = b.last().expect("nonempty").clone();
        let inv = lead.inv().expect("leading coefficient nonzero");
        for c in b.iter_mut() {
            *c = &*c * &inv;
        }
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a.last().expect("nonempty").clone();
            for (k, bc) in b.iter().enumerate() {
                let delta = &factor * bc;
                a[shift + k] = &a[shift + k] - &delta;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(lead) = a.last().cloned() {
        let inv = lead.inv().expect("leading coefficient nonzero");
        for c in a.iter_mut() {
            *c = &*c * &inv;
        }
    }
    a
}

/// Coefficients of `p(a + t*b)` as a univariate polynomial in `t`.
fn restrict_to_line(
    p: &MultiPoly,
    a: &[GaussianRational],
    b: &[GaussianRational],
) -> Vec<GaussianRational> {
    let arity = p.vars().arity();
    // per-variable power tables of (a_v + t b_v)^k
    let mut tables: Vec<Vec<Vec<GaussianRational>>> = Vec::with_capacity(arity);
    for v in 0..arity {
        let d = p.degree_in(v) as usize;
        let mut tbl = Vec::with_capacity(d + 1);
        tbl.push(vec![GaussianRational::one()]);
        for k in 1..=d {
            let prev = &tbl[k - 1];
            let mut next = vec![GaussianRational::zero(); k + 1];
            for (j, c) in prev.iter().enumerate() {
                next[j] = &next[j] + &(c * &a[v]);
                next[j + 1] = &next[j + 1] + &(c * &b[v]);
            }
            tbl.push(next);
        }
        tables.push(tbl);
    }
    let mut acc = vec![GaussianRational::zero(); p.total_degree() as usize + 1];
    for (m, coeff) in p.terms() {
        let mut term = vec![coeff.clone()];
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = &tables[v][e as usize];
            let mut next = vec![GaussianRational::zero(); term.len() + factor.len() - 1];
            for (i, tc) in term.iter().enumerate() {
                if tc.is_zero() {
                    continue;
                }
                for (j, fc) in factor.iter().enumerate() {
                    let prod = tc * fc;
                    next[i + j] = &next[i + j] + &prod;
                }
            }
            term = next;
        }
        for (k, c) in term.into_iter().enumerate() {
            acc[k] = &acc[k] + &c;
        }
    }
    acc
}

/// One-sided coprimality certificate: find a line on which `p` keeps its
/// total degree and the univariate restrictions are coprime.
fn coprime_on_a_line(p: &MultiPoly, q: &MultiPoly) -> bool {
    let arity = p.vars().arity();
    let dp = p.total_degree() as usize;
    for attempt in 0..4u64 {
        let mut rng = crate::rng::DetRng::new(0x6cd0 + attempt);
        let a: Vec<GaussianRational> =
            (0..arity).map(|_| GaussianRational::sample(&mut rng, 6)).collect();
        let b: Vec<GaussianRational> =
            (0..arity).map(|_| GaussianRational::sample(&mut rng, 6)).collect();
        if b.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut pr = restrict_to_line(p, &a, &b);
        trim(&mut pr);
        if pr.len() != dp + 1 {
            continue; // degree dropped: inconclusive line
        }
        let mut qr = restrict_to_line(q, &a, &b);
        trim(&mut qr);
        if qr.is_empty() {
            continue;
        }
        let g = coeff_vec_gcd(pr, qr);
        if g.len() == 1 {
            return true;
        }
    }
    false
}

/// Content of `p` viewed as univariate in `var`: gcd of its coefficients.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.vars());
    for (_, coeff) in p.univariate_view(var) {
        acc = gcd_rec(&acc, &coeff);
        if acc.is_constant() && !acc.is_zero() {
            return MultiPoly::one(p.vars());
        }
    }
    acc
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let cont = content_in(p, var);
    divide_exactly(p, &cont)
}

fn divide_exactly(p: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    exact_divide(p, d)
        .expect("divisor nonzero")
        .expect("content divides its polynomial")
}

/// Pseudo-remainder of `a` by `b` in `var`: repeatedly scale by `b`'s leading
/// coefficient and cancel the top `var`-power. Equals the classical
/// pseudo-remainder up to a leading-coefficient factor, which the primitive
/// sequence strips anyway.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = b.coeff_of_power(var, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < db {
            break;
        }
        let lr = r.coeff_of_power(var, dr);
        r = r
            .mul(&lb)
            .sub(&lr.mul(&b).mul_var_power(var, dr - db));
        // scaling by a unit keeps the remainder's class and the numbers small
        r = r.monic();
    }
    r
}
