//! Shared fixtures for the kernel benchmarks.

use linefol_core::eikonal::{build_solution, sample_isotropic_frame, EikonalSolution};
use linefol_core::foliation::{conjugate_field, cubic_chord_field, AffineMap};
use linefol_core::field::PolyVectorField;
use linefol_core::poly::{MultiPoly, RatFunc, VarSet};
use linefol_core::rng::DetRng;

/// A pair of random dense-ish trivariate polynomials.
pub fn poly_pair(seed: u64, deg: u32, terms: usize) -> (MultiPoly, MultiPoly) {
    let v = VarSet::z(3);
    let mut rng = DetRng::new(seed);
    (
        MultiPoly::sample(&mut rng, &v, deg, terms, 8),
        MultiPoly::sample_nonzero(&mut rng, &v, deg, terms, 8),
    )
}

/// The twisted-cubic chord field pushed through a random affine map.
pub fn conjugated_chord_field(seed: u64) -> PolyVectorField {
    let mut rng = DetRng::new(seed);
    let map = AffineMap::sample(&mut rng, 4);
    conjugate_field(&cubic_chord_field(), &map).expect("sampled maps are invertible")
}

/// A nontrivial rational eikonal solution with profile degrees (3, 3).
pub fn eikonal_fixture(seed: u64) -> (RatFunc, EikonalSolution) {
    let mut rng = DetRng::new(seed);
    let frame = sample_isotropic_frame(&mut rng, 5);
    let ell = RatFunc::sample(&mut rng, &VarSet::t(), 3, 3, 3);
    let f = build_solution(&frame, &ell).expect("frame is valid");
    let sol = EikonalSolution::new(frame, ell).expect("construction verifies");
    (f, sol)
}
