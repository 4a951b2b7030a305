use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Quantization density `m`: cells `[k/m, (k+1)/m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantGrid {
    m: u64,
}

impl QuantGrid {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("quantization density m must be >= 1".into()));
        }
        Ok(QuantGrid { m })
    }

    pub fn m(self) -> u64 {
        self.m
    }

    /// Cell index `k = ⌊m x⌋`, corrected so that `k/m ≤ x < (k+1)/m` holds
    /// in floating point. The correction makes quantization idempotent.
    pub fn cell(self, x: f64) -> i64 {
        let m = self.m as f64;
        let mut k = (x * m).floor() as i64;
        if (k as f64) / m > x {
            k -= 1;
        } else if ((k + 1) as f64) / m <= x {
            k += 1;
        }
        k
    }

    /// `[x]_m = ⌊m x⌋ / m`.
    pub fn quantize(self, x: f64) -> f64 {
        self.value(self.cell(x))
    }

    pub fn value(self, cell: i64) -> f64 {
        cell as f64 / self.m as f64
    }

    pub fn log2_m(self) -> f64 {
        (self.m as f64).log2()
    }
}

/// Coordinatewise `[x]_m`.
pub fn m_quantize(x: &[f64], m: u64) -> Result<Vec<f64>> {
    let grid = QuantGrid::new(m)?;
    Ok(x.iter().map(|&v| grid.quantize(v)).collect())
}

/// Coordinatewise cell indices `⌊m x_j⌋`.
pub fn m_quantize_cells(x: &[f64], m: u64) -> Result<Vec<i64>> {
    let grid = QuantGrid::new(m)?;
    Ok(x.iter().map(|&v| grid.cell(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(m_quantize(&[0.75], 2).unwrap(), vec![0.5]);
        assert_eq!(m_quantize(&[-0.25], 4).unwrap(), vec![-0.25]);
        assert_eq!(m_quantize(&[3.0, -7.0], 13).unwrap(), vec![3.0, -7.0]);
        assert_eq!(m_quantize_cells(&[-0.01, 0.0], 10).unwrap(), vec![-1, 0]);
        assert!(QuantGrid::new(0).is_err());
    }

    #[test]
    fn float_boundary_is_respected() {
        // 49 · (1/49) rounds below 1 in binary floating point.
        let g = QuantGrid::new(49).unwrap();
        let x = 1.0 / 49.0;
        let q = g.quantize(x);
        assert!(q <= x);
        assert_eq!(g.quantize(q), q);
    }

    proptest! {
        #[test]
        fn idempotent_and_below(x in -1e6f64..1e6, m in 1u64..5000) {
            let g = QuantGrid::new(m).unwrap();
            let q = g.quantize(x);
            prop_assert!(q <= x);
            prop_assert!(x < g.value(g.cell(x) + 1));
            prop_assert_eq!(g.quantize(q), q);
        }
    }
}
