//! Exact-rational sparse polynomials and ideals.

mod dimension;
mod gcd;
mod groebner;
mod ideal;
mod monomial;
mod poly;
mod univariate;

use serde::{Deserialize, Serialize};

pub use dimension::{independent_dimension, krull_dimension};
pub use gcd::{content, gcd, primitive_part, squarefree_part};
pub use groebner::{groebner_basis, normal_form};
pub use ideal::Ideal;
pub use monomial::{Monomial, TermOrder};
pub use poly::{format_rational, Polynomial};
pub use univariate::yun;

use crate::error::{Error, Result};

/// Rationals from `num-rational`: always normalised, positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Ordered, distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable `{a}`")));
            }
        }
        Ok(Ring { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        self.index(name)
            .map(|i| Polynomial::var(self.dim(), i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}
