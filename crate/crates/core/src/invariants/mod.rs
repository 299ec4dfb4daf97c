//! Series Euler characteristic, zeta functions, and the two numerical
//! identities every ramified covering of finite categories satisfies:
//!
//! * `χ_Σ(C̃) = d·χ_Σ(C) − V`, with `χ_Σ(C̃)` defined exactly when `χ_Σ(C)` is;
//! * `ζ_C̃(z) = ζ_C(z)^d · (1 − z)^V` in `Q[[z]]`.
//!
//! All arithmetic is exact.

pub mod adjugate;
pub mod polynomial;
pub mod series;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::category::FiniteCategory;
use crate::covering::RamifiedCovering;
use crate::nerve::chain_counts;

use adjugate::{adjugate, determinant, PolyMatrix};
use polynomial::{Polynomial, RationalFunction};
use series::PowerSeries;

/// Default truncation order for zeta computations.
pub const DEFAULT_ORDER: usize = 20;

/// `I − (A_C − I)·t`.
fn euler_matrix(cat: &FiniteCategory) -> PolyMatrix {
    let a = cat.adjacency_matrix();
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &count)| {
                    let off = count - u64::from(i == j);
                    let mut coeffs = vec![BigRational::from_integer(BigInt::from(u8::from(i == j)))];
                    coeffs.push(-BigRational::from_integer(BigInt::from(off)));
                    Polynomial::new(coeffs)
                })
                .collect()
        })
        .collect()
}

/// `(sum(adj(I − (A_C − I)t)), det(I − (A_C − I)t))` before reduction.
pub fn euler_rational_parts(cat: &FiniteCategory) -> (Polynomial, Polynomial) {
    let m = euler_matrix(cat);
    let numerator = adjugate(&m)
        .iter()
        .flatten()
        .fold(Polynomial::zero(), |acc, p| &acc + p);
    (numerator, determinant(&m))
}

/// The reduced rational function whose Maclaurin series is `Σ #N̄_n(C) t^n`.
pub fn euler_rational_function(cat: &FiniteCategory) -> RationalFunction {
    let (num, den) = euler_rational_parts(cat);
    RationalFunction::new(num, den).expect("det(I - (A - I)t) has constant term 1")
}

/// Value of the series Euler characteristic, or the absence of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerCharacteristic {
    Defined(BigRational),
    Undefined,
}

impl EulerCharacteristic {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            EulerCharacteristic::Defined(v) => Some(v),
            EulerCharacteristic::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, EulerCharacteristic::Defined(_))
    }
}

impl fmt::Display for EulerCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerCharacteristic::Defined(v) => write!(f, "{}", rational_string(v)),
            EulerCharacteristic::Undefined => f.write_str("undefined"),
        }
    }
}

/// `p/q` with a positive denominator, `1` included.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Evaluates the reduced rational function at `t = −1`.
pub fn series_euler_characteristic(cat: &FiniteCategory) -> EulerCharacteristic {
    evaluate_at_minus_one(&euler_rational_function(cat))
}

fn evaluate_at_minus_one(r: &RationalFunction) -> EulerCharacteristic {
    match r.eval(&-BigRational::one()) {
        Some(v) => EulerCharacteristic::Defined(v),
        None => EulerCharacteristic::Undefined,
    }
}

/// `Σ_{n ≤ order} #N̄_n(C) t^n`.
pub fn euler_series_coefficients(cat: &FiniteCategory, order: usize) -> PowerSeries {
    let counts = chain_counts(cat, order, true);
    PowerSeries::from_coeffs(
        counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect(),
        order,
    )
}

/// `Σ_{m=1}^{order} #N_m(C)/m · z^m`, the logarithm of the zeta function.
pub fn zeta_log(cat: &FiniteCategory, order: usize) -> PowerSeries {
    let counts = chain_counts(cat, order, false);
    let coeffs = counts
        .into_iter()
        .enumerate()
        .map(|(m, c)| {
            if m == 0 {
                BigRational::zero()
            } else {
                BigRational::new(c.into(), BigInt::from(m))
            }
        })
        .collect();
    PowerSeries::from_coeffs(coeffs, order)
}

/// `ζ_C(z) = exp(Σ #N_m(C) z^m / m)` modulo `z^(order+1)`.
pub fn zeta_truncated(cat: &FiniteCategory, order: usize) -> PowerSeries {
    zeta_log(cat, order).exp().expect("zero constant term")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannHurwitzReport {
    pub chi_total: EulerCharacteristic,
    pub chi_base: EulerCharacteristic,
    pub degree: u64,
    pub total_ramification: u64,
    /// Both characteristics defined, or both undefined.
    pub definedness_agrees: bool,
    /// `Some(χ(C̃) == d·χ(C) − V)` when both are defined.
    pub identity_holds: Option<bool>,
}

impl RiemannHurwitzReport {
    pub fn passed(&self) -> bool {
        self.definedness_agrees && self.identity_holds != Some(false)
    }
}

pub fn check_riemann_hurwitz(cov: &RamifiedCovering) -> RiemannHurwitzReport {
    let chi_total = series_euler_characteristic(cov.functor().source());
    let chi_base = series_euler_characteristic(cov.functor().target());
    let degree = cov.degree();
    let total_ramification = cov.total_ramification();
    let definedness_agrees = chi_total.is_defined() == chi_base.is_defined();
    let identity_holds = match (&chi_total, &chi_base) {
        (EulerCharacteristic::Defined(top), EulerCharacteristic::Defined(bottom)) => {
            let rhs = bottom * BigRational::from_integer(degree.into())
                - BigRational::from_integer(total_ramification.into());
            Some(*top == rhs)
        }
        _ => None,
    };
    RiemannHurwitzReport {
        chi_total,
        chi_base,
        degree,
        total_ramification,
        definedness_agrees,
        identity_holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaDivisibilityReport {
    pub order: usize,
    /// `ζ_C̃(z)`.
    pub total: PowerSeries,
    /// `ζ_C(z)^d · (1 − z)^V`.
    pub predicted: PowerSeries,
    pub first_mismatch: Option<usize>,
}

impl ZetaDivisibilityReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn check_zeta_divisibility(cov: &RamifiedCovering, order: usize) -> ZetaDivisibilityReport {
    let total = zeta_truncated(cov.functor().source(), order);
    let base = zeta_truncated(cov.functor().target(), order);
    let one_minus_z = PowerSeries::from_ints(&[1, -1], order);
    let d = i64::try_from(cov.degree()).expect("degree fits in i64");
    let v = i64::try_from(cov.total_ramification()).expect("ramification fits in i64");
    let predicted = &base.pow(d).expect("nonnegative power") * &one_minus_z.pow(v).expect("nonnegative power");
    let first_mismatch = total.first_difference(&predicted);
    ZetaDivisibilityReport {
        order,
        total,
        predicted,
        first_mismatch,
    }
}
