use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial in `q` with nonnegative integer coefficients; `coeffs[d]` is
/// the coefficient of `q^d`. Trailing zeros are trimmed, and the zero
/// polynomial is stored as `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPolynomial {
    coeffs: Vec<u64>,
}

impl QPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The q-integer `[k] = 1 + q + ... + q^(k-1)`; `[0] = 0`.
    pub fn q_integer(k: usize) -> Self {
        Self::from_coeffs(vec![1; k])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> Result<u64> {
        self.coeffs
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow("polynomial evaluation"))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// Builds `sum_d counts[d] q^d` from a histogram of degrees.
    pub fn from_degrees<I: IntoIterator<Item = usize>>(degrees: I) -> Self {
        let mut coeffs = Vec::new();
        for d in degrees {
            if coeffs.len() <= d {
                coeffs.resize(d + 1, 0);
            }
            coeffs[d] += 1;
        }
        Self::from_coeffs(coeffs)
    }

    /// Coefficients separated by single spaces, as used in CSV output.
    pub fn to_spaced(&self) -> String {
        self.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("q")?,
                (1, c) => write!(f, "{c}q")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, c) => write!(f, "{c}q^{d}")?,
            }
        }
        Ok(())
    }
}
