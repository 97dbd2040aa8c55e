use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::{Real, C};

/// Z-class J-module for `J = diag(−1, 1)`, parameterized by ψ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JModule2<T> {
    pub psi: C<T>,
    pub r: Mat2<T>,
    pub rsq: Mat2<T>,
    pub rinv: Mat2<T>,
    pub d: Mat2<T>,
}

pub fn zclass_jmodule<T: Real>(psi: C<T>) -> Result<JModule2<T>> {
    if !psi.re.is_finite() || !psi.im.is_finite() {
        return Err(Error::arg("psi must be finite"));
    }
    let m = psi.norm();
    let one = T::one();
    let two = T::lit(2.0);
    let re = |v: T| C::new(v, T::zero());
    let r = Mat2::new(re(one - m), psi, -psi.conj(), re(one + m));
    let rsq = Mat2::new(re(one - two * m), psi * two, -psi.conj() * two, re(one + two * m));
    let rinv = Mat2::new(re(one + m), -psi, psi.conj(), re(one - m));
    let d = Mat2::new(re(two * m), -psi * two, -psi.conj() * two, re(two * m));
    Ok(JModule2 { psi, r, rsq, rinv, d })
}
