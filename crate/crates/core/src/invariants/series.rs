//! Truncated formal power series over `Q`.
//!
//! A series of order `M` stores the coefficients of `z^0..=z^M`; every
//! operation is exact modulo `z^(M+1)`. Binary operations on series of
//! different orders truncate to the smaller order.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exp needs a zero constant term")]
    ExpConstantTerm,
    #[error("log needs constant term 1")]
    LogConstantTerm,
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        PowerSeries::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `exp(f)` for `f(0) = 0`, from `n a_n = Σ_{k=1}^{n} k f_k a_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpConstantTerm);
        }
        let order = self.order();
        let mut a = vec![BigRational::zero(); order + 1];
        a[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k) * &a[n - k];
                }
            }
            a[n] = acc / int(n);
        }
        Ok(PowerSeries { coeffs: a })
    }

    /// `log(f)` for `f(0) = 1`, from `f · (log f)' = f'`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogConstantTerm);
        }
        let order = self.order();
        let mut g = vec![BigRational::zero(); order + 1];
        for n in 1..=order {
            let mut acc = int(n) * &self.coeffs[n];
            for k in 1..n {
                if !g[k].is_zero() {
                    acc -= int(k) * &g[k] * &self.coeffs[n - k];
                }
            }
            g[n] = acc / int(n);
        }
        Ok(PowerSeries { coeffs: g })
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let order = self.order();
        let c0 = self.coeffs[0].recip();
        let mut a = vec![BigRational::zero(); order + 1];
        a[0] = c0.clone();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &a[n - k];
                }
            }
            a[n] = -acc * &c0;
        }
        Ok(PowerSeries { coeffs: a })
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn pow(&self, exponent: i64) -> Result<Self, SeriesError> {
        let base = if exponent < 0 { self.inverse()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut result = PowerSeries::one(self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }

    /// Index of the first coefficient where the two series differ, up to the smaller order.
    pub fn first_difference(&self, other: &PowerSeries) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_z_is_inverse_factorials() {
        let z = PowerSeries::from_ints(&[0, 1], 6);
        let e = z.exp().unwrap();
        let mut fact = 1i64;
        for n in 0..=6 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(e.coeff(n as usize), &q(1, fact));
        }
    }

    #[test]
    fn log_of_geometric_series() {
        // -log(1 - z) = Σ z^m / m
        let geo = PowerSeries::from_ints(&[1, -1], 8).inverse().unwrap();
        let l = geo.log().unwrap();
        assert!(l.coeff(0).is_zero());
        for m in 1..=8 {
            assert_eq!(l.coeff(m), &q(1, m as i64));
        }
    }

    #[test]
    fn negative_power_is_binomial() {
        // (1 - z)^{-3}: C(n + 2, 2)
        let s = PowerSeries::from_ints(&[1, -1], 6).pow(-3).unwrap();
        for n in 0..=6i64 {
            assert_eq!(s.coeff(n as usize), &q((n + 2) * (n + 1) / 2, 1));
        }
    }

    #[test]
    fn domain_errors() {
        let one = PowerSeries::one(3);
        assert_eq!(one.exp(), Err(SeriesError::ExpConstantTerm));
        assert_eq!(PowerSeries::zero(3).log(), Err(SeriesError::LogConstantTerm));
        assert_eq!(PowerSeries::zero(3).inverse(), Err(SeriesError::NotInvertible));
        assert_eq!(PowerSeries::zero(3).pow(-1), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = PowerSeries::from_ints(&[1, 1], 5);
        let b = PowerSeries::from_ints(&[1, 1], 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!(a.first_difference(&b), None);
    }

    fn zero_constant_series() -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec(-4i64..=4, 1..8).prop_map(|mut c| {
            c.insert(0, 0);
            PowerSeries::from_ints(&c, 7)
        })
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(f in zero_constant_series()) {
            let e = f.exp().unwrap();
            prop_assert_eq!(e.log().unwrap(), f);
        }

        #[test]
        fn exp_is_a_homomorphism(f in zero_constant_series(), g in zero_constant_series()) {
            prop_assert_eq!((&f + &g).exp().unwrap(), &f.exp().unwrap() * &g.exp().unwrap());
        }

        #[test]
        fn inverse_is_inverse(mut c in prop::collection::vec(-4i64..=4, 1..8)) {
            c[0] = if c[0] == 0 { 1 } else { c[0] };
            let f = PowerSeries::from_ints(&c, 7);
            prop_assert_eq!(&f * &f.inverse().unwrap(), PowerSeries::one(7));
        }
    }
}
