//! Built-in scalar function families for data files: band laminations are
//! described by named coefficient families, never by arbitrary code.

use serde::{Deserialize, Serialize};

/// A polynomial-family function of one real variable.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", content = "coeffs", rename_all = "lowercase")]
pub enum ProfileFn {
    /// `c0 + c1·t`
    Affine((f64, f64)),
    /// `Σ coeffs[k]·t^k`
    Poly(Vec<f64>),
}

impl ProfileFn {
    pub fn constant(c: f64) -> Self {
        ProfileFn::Poly(vec![c])
    }

    pub fn affine(c0: f64, c1: f64) -> Self {
        ProfileFn::Affine((c0, c1))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ProfileFn::Affine((c0, c1)) => c0 + c1 * t,
            ProfileFn::Poly(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * t + ck),
        }
    }

    /// Exact antiderivative evaluated as `∫_a^b`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let anti = |t: f64| -> f64 {
            match self {
                ProfileFn::Affine((c0, c1)) => c0 * t + 0.5 * c1 * t * t,
                ProfileFn::Poly(c) => c
                    .iter()
                    .enumerate()
                    .map(|(k, &ck)| ck * t.powi(k as i32 + 1) / (k as f64 + 1.0))
                    .sum(),
            }
        };
        anti(b) - anti(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_integral() {
        let p = ProfileFn::Poly(vec![1.0, 0.0, 3.0]); // 1 + 3t²
        assert_eq!(p.eval(2.0), 13.0);
        assert!((p.integral(0.0, 1.0) - 2.0).abs() < 1e-15);
        let a = ProfileFn::affine(2.0, -1.0);
        assert_eq!(a.eval(0.5), 1.5);
        assert!((a.integral(0.0, 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let p = ProfileFn::Poly(vec![1.0, 2.0]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"family":"poly","coeffs":[1.0,2.0]}"#);
    }
}
