use crate::{Error, Real, Result};

/// Root of `f` on `[lo, hi]` by bisection, to a relative tolerance of 1e-9
/// on the abscissa.
///
/// The bracket must straddle a sign change; endpoints that are themselves
/// roots are returned directly. Bisection is slow but immune to the flat
/// stretches and steep shoulders the inverse criterion solves run into.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T) -> Result<T> {
    let rel_tol = T::of(1e-9);
    if !(lo < hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo), f(hi));
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::domain(format!(
            "no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    let lo_positive = flo > T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) / T::of(2.0);
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        let scale = lo.abs().max(hi.abs());
        if hi - lo <= rel_tol * scale {
            break;
        }
    }
    Ok((lo + hi) / T::of(2.0))
}
