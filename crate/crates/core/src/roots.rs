//! Safeguarded root finding for strictly increasing functions.

/// Find a root of the strictly increasing function `eval` inside `[lo, hi]`.
///
/// The caller guarantees `f(lo) < 0 < f(hi)`. Each iteration evaluates the
/// candidate, shrinks the bracket by the sign, and proposes a Newton step when
/// `eval` supplies a derivative, falling back to the midpoint whenever the
/// step leaves the bracket. `accept(x, fx, width)` decides convergence.
pub(crate) fn increasing_root<F, A>(
    mut eval: F,
    mut lo: f64,
    mut hi: f64,
    max_iter: usize,
    mut accept: A,
) -> Option<f64>
where
    F: FnMut(f64) -> (f64, Option<f64>),
    A: FnMut(f64, f64, f64) -> bool,
{
    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let (fx, dfx) = eval(x);
        if accept(x, fx, hi - lo) {
            return Some(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = match dfx {
            Some(d) if d > 0.0 && fx.is_finite() => x - fx / d,
            _ => f64::NAN,
        };
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if !(x > lo && x < hi) {
            // bracket collapsed to adjacent floats
            let (fx, _) = eval(lo);
            return if accept(lo, fx, hi - lo) { Some(lo) } else { None };
        }
    }
    None
}
