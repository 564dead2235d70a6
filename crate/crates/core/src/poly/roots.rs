//! Numeric root location for weight assignment and the Riemann-hypothesis
//! check.
//!
//! Durand-Kerner iteration on the monic reversal of a Weil factor locates
//! all inverse roots simultaneously. Callers pass squarefree polynomials
//! (multiplicities are removed exactly beforehand), so convergence is
//! quadratic and the 1e-6 relative tolerance downstream is comfortable.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::IntPoly;

const MAX_ITER: usize = 500;
const STEP_TOL: f64 = 1e-13;

/// Complex inverse roots of `p` (i.e. roots of its reversal), assuming the
/// constant term of `p` is nonzero. `p` should be squarefree.
pub fn inverse_roots(p: &IntPoly) -> Vec<Complex64> {
    let rev = p.reversal();
    roots_of(&rev)
}

/// All complex roots of a polynomial with nonzero leading coefficient.
pub fn roots_of(f: &IntPoly) -> Vec<Complex64> {
    let deg = f.degree();
    if deg == 0 || f.is_zero() {
        return vec![];
    }
    let lead = f.leading().to_f64().expect("coefficient in f64 range");
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("coefficient in f64 range") / lead)
        .collect();
    durand_kerner(&coeffs)
}

/// Roots of the monic polynomial with the given coefficients (low degree
/// first, leading coefficient 1 included as the last entry).
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    // Deterministic spread of initial guesses; the offset keeps them away
    // from real axis symmetry traps.
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * x + Complex64::new(*c, 0.0);
        }
        acc
    };
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge deterministically.
                denom = Complex64::new(1e-12, 1e-12);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < STEP_TOL {
            break;
        }
    }
    z
}
