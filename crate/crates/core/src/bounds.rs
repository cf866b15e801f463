//! Stretch-factor constants, evaluated from their closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    /// `1 + sqrt 2`: Y4inf versus Del-inf, and per Del-inf edge in L-infinity.
    pub one_plus_sqrt2: f64,
    /// `2(1 + sqrt 2)`: slope coefficient of the key inequality.
    pub key_coefficient: f64,
    /// `sqrt(13 + 8 sqrt 2)`: stretch of Y4inf.
    pub y4inf_stretch: f64,
    /// `sqrt(4 + 2 sqrt 2)`: stretch of Del-inf.
    pub delinf_stretch: f64,
    /// `3(2 + sqrt 2)`: crossing-edge factor in Y4.
    pub crossing_factor: f64,
    /// `11 + 7 sqrt 2`: per Del-inf edge factor in Y4.
    pub y4_edge_factor: f64,
    /// `(11 + 7 sqrt 2) sqrt(4 + 2 sqrt 2)`: stretch of Y4.
    pub y4_stretch: f64,
    /// `(26 + 23 sqrt 2) sqrt(13 + 8 sqrt 2)`: Y4 stretch obtained by
    /// chaining the older per-edge factor with the Y4inf bound.
    pub y4_stretch_chained: f64,
    /// `8 sqrt 2 (26 + 23 sqrt 2)`: the older Y4 stretch.
    pub y4_stretch_previous: f64,
    /// `(1 + sqrt 2) sqrt(4 + 2 sqrt 2)`: the older Y4inf stretch.
    pub y4inf_stretch_previous: f64,
}

impl BoundTable {
    /// Evaluates every constant and checks that they are ordered as expected.
    pub fn new() -> Result<Self> {
        let r2 = 2f64.sqrt();
        let delinf_stretch = (4.0 + 2.0 * r2).sqrt();
        let y4inf_stretch = (13.0 + 8.0 * r2).sqrt();
        let y4_edge_factor = 11.0 + 7.0 * r2;
        let table = Self {
            one_plus_sqrt2: 1.0 + r2,
            key_coefficient: 2.0 * (1.0 + r2),
            y4inf_stretch,
            delinf_stretch,
            crossing_factor: 3.0 * (2.0 + r2),
            y4_edge_factor,
            y4_stretch: y4_edge_factor * delinf_stretch,
            y4_stretch_chained: (26.0 + 23.0 * r2) * y4inf_stretch,
            y4_stretch_previous: 8.0 * r2 * (26.0 + 23.0 * r2),
            y4inf_stretch_previous: (1.0 + r2) * delinf_stretch,
        };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<()> {
        let ordered = [
            (
                "Y4inf improves on the older bound",
                self.y4inf_stretch < self.y4inf_stretch_previous,
            ),
            (
                "Y4 bound below the chained bound",
                self.y4_stretch < self.y4_stretch_chained,
            ),
            (
                "chained bound below the older Y4 bound",
                self.y4_stretch_chained < self.y4_stretch_previous,
            ),
            (
                "Del-inf bound below the Y4inf bound",
                self.delinf_stretch < self.y4inf_stretch,
            ),
            (
                "crossing factor equals 6/(sqrt2 - 1) divided by sqrt 2",
                (self.crossing_factor - 6.0 / (2f64.sqrt() - 1.0) / 2f64.sqrt()).abs() < 1e-12,
            ),
        ];
        match ordered.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(Error::Invariant(format!(
                "bound table inconsistent: {name}"
            ))),
            None => Ok(()),
        }
    }

    /// Upper bound on the stretch of the Euclidean Yao graph with `k` cones,
    /// where one is known: 5, 6 and every `k >= 7`.
    pub fn yao_k_stretch(&self, k: usize) -> Option<f64> {
        match k {
            4 => Some(self.y4_stretch),
            5 => Some(2.0 + 3f64.sqrt()),
            6 => Some(5.8),
            k if k >= 7 => {
                let theta = 2.0 * std::f64::consts::PI / k as f64;
                let c = theta.cos();
                Some((1.0 + (2.0 - 2.0 * c).sqrt()) / (2.0 * c - 1.0))
            }
            _ => None,
        }
    }

    /// Named constants, in declaration order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("1+sqrt2", self.one_plus_sqrt2),
            ("2(1+sqrt2)", self.key_coefficient),
            ("sqrt(13+8sqrt2)", self.y4inf_stretch),
            ("sqrt(4+2sqrt2)", self.delinf_stretch),
            ("3(2+sqrt2)", self.crossing_factor),
            ("11+7sqrt2", self.y4_edge_factor),
            ("(11+7sqrt2)sqrt(4+2sqrt2)", self.y4_stretch),
            ("(26+23sqrt2)sqrt(13+8sqrt2)", self.y4_stretch_chained),
            ("8sqrt2(26+23sqrt2)", self.y4_stretch_previous),
            ("(1+sqrt2)sqrt(4+2sqrt2)", self.y4inf_stretch_previous),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_values() {
        let b = BoundTable::new().unwrap();
        let close = |v: f64, d: f64, tol: f64| (v - d).abs() < tol;
        assert!(close(b.one_plus_sqrt2, 2.4142136, 1e-7));
        assert!(close(b.key_coefficient, 4.8284271, 1e-7));
        assert!(close(b.y4inf_stretch, 4.9308933, 1e-7));
        assert!(close(b.delinf_stretch, 2.6131259, 1e-7));
        assert!(close(b.crossing_factor, 10.2426407, 1e-7));
        assert!(close(b.y4_edge_factor, 20.8994949, 1e-7));
        assert!(close(b.y4_stretch, 54.613, 1e-3));
        assert!(close(b.y4_stretch_chained, 288.59, 1e-2));
        assert!(close(b.y4_stretch_previous, 662.16, 1e-2));
        assert!(close(b.y4inf_stretch_previous, 6.3086, 1e-4));
    }

    #[test]
    fn yao_k_formula() {
        let b = BoundTable::new().unwrap();
        assert!((b.yao_k_stretch(5).unwrap() - 3.7320508).abs() < 1e-7);
        assert!((b.yao_k_stretch(7).unwrap() - 7.5624).abs() < 1e-3);
        // The bound tends to 1 as the cones narrow.
        assert!(b.yao_k_stretch(1000).unwrap() < 1.01);
        assert!(b.yao_k_stretch(3).is_none());
    }
}
