//! Fourth-order finite-difference stencils.
//!
//! Central stencils are used in the interior; one-sided stencils keep every
//! sample on one side of a kink (for the DLITE term, the diagonal `x = c`
//! where the third derivative jumps) or inside the domain.

/// Which side of `x` a stencil may sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stencil {
    Central,
    Forward,
    Backward,
}

impl Stencil {
    /// Furthest sample offset in units of `h`.
    pub fn reach(self, second: bool) -> f64 {
        match (self, second) {
            (Stencil::Central, _) => 2.0,
            (_, false) => 4.0,
            (_, true) => 5.0,
        }
    }
}

const FIRST_CENTRAL: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const FIRST_FORWARD: [(f64, f64); 5] = [
    (0.0, -25.0),
    (1.0, 48.0),
    (2.0, -36.0),
    (3.0, 16.0),
    (4.0, -3.0),
];
const SECOND_CENTRAL: [(f64, f64); 5] = [
    (-2.0, -1.0),
    (-1.0, 16.0),
    (0.0, -30.0),
    (1.0, 16.0),
    (2.0, -1.0),
];
const SECOND_FORWARD: [(f64, f64); 6] = [
    (0.0, 45.0),
    (1.0, -154.0),
    (2.0, 214.0),
    (3.0, -156.0),
    (4.0, 61.0),
    (5.0, -10.0),
];

fn apply(f: &impl Fn(f64) -> f64, x: f64, h: f64, taps: &[(f64, f64)], mirror: bool) -> f64 {
    let dir = if mirror { -1.0 } else { 1.0 };
    taps.iter()
        .map(|&(k, w)| w * f(x + dir * k * h))
        .sum::<f64>()
}

fn first_raw(f: &impl Fn(f64) -> f64, x: f64, h: f64, stencil: Stencil) -> f64 {
    let s = match stencil {
        Stencil::Central => apply(f, x, h, &FIRST_CENTRAL, false),
        Stencil::Forward => apply(f, x, h, &FIRST_FORWARD, false),
        // Mirrored taps flip the sign of an odd derivative.
        Stencil::Backward => -apply(f, x, h, &FIRST_FORWARD, true),
    };
    s / (12.0 * h)
}

/// First derivative: fourth-order stencil plus one Richardson level.
pub fn first_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64, stencil: Stencil) -> f64 {
    let coarse = first_raw(&f, x, h, stencil);
    let fine = first_raw(&f, x, 0.5 * h, stencil);
    (16.0 * fine - coarse) / 15.0
}

/// Second derivative: fourth-order stencil.
pub fn second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64, stencil: Stencil) -> f64 {
    let s = match stencil {
        Stencil::Central => apply(&f, x, h, &SECOND_CENTRAL, false),
        Stencil::Forward => apply(&f, x, h, &SECOND_FORWARD, false),
        Stencil::Backward => apply(&f, x, h, &SECOND_FORWARD, true),
    };
    s / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let f = |x: f64| 3.0 * x.powi(4) - x.powi(3) + 2.0 * x - 1.0;
        let d1 = |x: f64| 12.0 * x.powi(3) - 3.0 * x * x + 2.0;
        let d2 = |x: f64| 36.0 * x * x - 6.0 * x;
        for s in [Stencil::Central, Stencil::Forward, Stencil::Backward] {
            assert!(
                (first_derivative(f, 0.7, 1e-3, s) - d1(0.7)).abs() < 1e-8,
                "{s:?}"
            );
            assert!(
                (second_derivative(f, 0.7, 1e-2, s) - d2(0.7)).abs() < 1e-8,
                "{s:?}"
            );
        }
    }

    #[test]
    fn transcendental() {
        for s in [Stencil::Central, Stencil::Forward, Stencil::Backward] {
            assert!((first_derivative(f64::exp, 0.3, 1e-3, s) - 0.3f64.exp()).abs() < 1e-10);
            assert!((second_derivative(f64::sin, 0.3, 1e-3, s) + 0.3f64.sin()).abs() < 1e-7);
        }
    }
}
