//! Resource limits shared by every operation that enumerates.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Vertex limit for exact independent-set and colouring search.
    pub exact_limit: usize,
    /// Largest `k` for which the indicator polynomial is expanded.
    pub indicator_limit: usize,
    /// Calibration limits on `n`, truncation and degree.
    pub calib_max_n: usize,
    pub calib_max_tau: usize,
    pub calib_max_d: usize,
    /// Cap on (target set, support) pairs visited by calibration.
    pub calib_max_work: u64,
    /// Largest colour-monomial index a tensor matrix may range over.
    pub max_matrix_dim: usize,
    /// Largest matrix handed to the dense eigensolver.
    pub explicit_dim_limit: usize,
    /// Colour-symmetric blocks replace explicit assembly above this dimension.
    pub symmetric_above: usize,
    /// Items an exhaustive constraint check may visit before sampling instead.
    pub max_enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exact_limit: 40,
            indicator_limit: 20,
            calib_max_n: 16,
            calib_max_tau: 5,
            calib_max_d: 6,
            calib_max_work: 200_000_000,
            max_matrix_dim: 20_000,
            explicit_dim_limit: 2_500,
            symmetric_above: 64,
            max_enumeration: 2_000_000,
        }
    }
}
