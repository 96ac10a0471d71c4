//! Exact rational assignments `g -> x_g`.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::linalg::{determinant, group_matrix};

pub const DEFAULT_RETRIES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSpecialization {
    values: Vec<BigRational>,
    seed: Option<u64>,
}

impl RationalSpecialization {
    /// Unchecked assignment; indexed by the group's element order.
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values, seed: None }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Accepts the assignment only if it is total and the specialized
    /// group matrix is nonsingular.
    pub fn checked(spec: &GroupSpec, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != spec.order() {
            return Err(Error::LengthMismatch {
                expected: spec.order(),
                got: values.len(),
            });
        }
        let table = GroupTable::new(spec);
        if determinant(&group_matrix(&table, &values)).is_zero() {
            return Err(Error::Singular { retries: 0 });
        }
        Ok(Self { values, seed: None })
    }

    /// Uniform integers in `[1, range]` from a seeded ChaCha stream, redrawn
    /// until the group matrix is nonsingular.
    pub fn random(spec: &GroupSpec, seed: u64, range: u64) -> Result<Self> {
        Self::random_with_retries(spec, seed, range, DEFAULT_RETRIES)
    }

    pub fn random_with_retries(
        spec: &GroupSpec,
        seed: u64,
        range: u64,
        retries: usize,
    ) -> Result<Self> {
        if range < 2 {
            return Err(Error::Precondition(format!(
                "range {range} must be at least 2"
            )));
        }
        let table = GroupTable::new(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..=retries {
            let values: Vec<BigRational> = (0..spec.order())
                .map(|_| BigRational::from_integer(rng.gen_range(1..=range).into()))
                .collect();
            if !determinant(&group_matrix(&table, &values)).is_zero() {
                return Ok(Self {
                    values,
                    seed: Some(seed),
                });
            }
        }
        Err(Error::Singular { retries })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}
