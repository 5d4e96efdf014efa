//! Box-constrained subproblems of the accelerated dual scheme.
//!
//! Every iteration of [`crate::solver::solve`] solves two small convex
//! programs over the unit sup-norm ball `B`:
//!
//! * the gradient step `argmin_y <g, y - q> + (L/2) ||y - q||_F^2`, and
//! * the weighted-history step `argmin_z (L/sigma) d(z) + <w, z>`,
//!
//! where `||.||_F` is the configured dual metric and `d` the configured
//! prox function. For Euclidean choices both collapse to coordinate-wise
//! clamps; the sup-norm metric and the mixed prox reduce to a scalar convex
//! line search, and the `l_p'` prox to a scalar root find. All solutions stay
//! inside the box exactly (final clamp), which keeps the iterates feasible.

use crate::error::{Error, Result};

/// Dual-side metric `||.||_F` for the gradient step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FNorm {
    L1,
    L2,
    LInf,
}

impl FNorm {
    /// The exponent as a float, `inf` for the sup norm.
    pub fn exponent(self) -> f64 {
        match self {
            FNorm::L1 => 1.0,
            FNorm::L2 => 2.0,
            FNorm::LInf => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for FNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FNorm::L1 => write!(f, "l1"),
            FNorm::L2 => write!(f, "l2"),
            FNorm::LInf => write!(f, "linf"),
        }
    }
}

impl serde::Serialize for FNorm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FNorm::L1 => s.serialize_u64(1),
            FNorm::L2 => s.serialize_u64(2),
            FNorm::LInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for FNorm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = FNorm;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "1, 2, or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<FNorm, E> {
                match v {
                    1 => Ok(FNorm::L1),
                    2 => Ok(FNorm::L2),
                    _ => Err(E::custom(format!(
                        "metric exponent must be 1, 2, or \"inf\", got {v}"
                    ))),
                }
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<FNorm, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom(format!("bad metric exponent {v}")))
                    .and_then(|v| self.visit_u64(v))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<FNorm, E> {
                if v == 1.0 {
                    Ok(FNorm::L1)
                } else if v == 2.0 {
                    Ok(FNorm::L2)
                } else if v == f64::INFINITY {
                    Ok(FNorm::LInf)
                } else {
                    Err(E::custom(format!(
                        "metric exponent must be 1, 2, or \"inf\", got {v}"
                    )))
                }
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<FNorm, E> {
                match v {
                    "1" => Ok(FNorm::L1),
                    "2" => Ok(FNorm::L2),
                    s if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") => {
                        Ok(FNorm::LInf)
                    }
                    _ => Err(E::custom(format!(
                        "metric exponent must be 1, 2, or \"inf\", got {v:?}"
                    ))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Prox function `d` for the history step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProxKind {
    /// `d(q) = ||q||_2^2 / 2`.
    HalfSqL2,
    /// `d(q) = ||q||_{p'}^2 / 2` with `p'` in `(1, 2]`.
    PPrime { p_prime: f64 },
    /// `d(q) = ||q||_inf^2 / 2 + eps * ||q||_2^2 / 2`, paired with the
    /// sup-norm metric.
    Eps { epsilon: f64 },
}

impl ProxKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProxKind::HalfSqL2 => Ok(()),
            ProxKind::PPrime { p_prime } => {
                if p_prime > 1.0 && p_prime <= 2.0 {
                    Ok(())
                } else {
                    Err(Error::input(format!(
                        "prox exponent p' must lie in (1, 2], got {p_prime}"
                    )))
                }
            }
            ProxKind::Eps { epsilon } => {
                if epsilon > 0.0 && epsilon.is_finite() {
                    Ok(())
                } else {
                    Err(Error::input(format!(
                        "prox epsilon must be positive, got {epsilon}"
                    )))
                }
            }
        }
    }

    /// Strong convexity modulus of `d` with respect to `||.||_F` on `R^n`.
    ///
    /// For `d = ||.||_{p'}^2 / 2` the modulus is `p' - 1` when the metric
    /// exponent `p >= p'`, and degrades by `n^(1/p' - 1/p)` when `p < p'`.
    /// The mixed prox is `eps`-strongly convex for the sup norm only.
    pub fn strong_convexity(&self, f_norm: FNorm, n: usize) -> Result<f64> {
        let p = f_norm.exponent();
        match *self {
            ProxKind::HalfSqL2 => pprime_modulus(2.0, p, n),
            ProxKind::PPrime { p_prime } => {
                self.validate()?;
                pprime_modulus(p_prime, p, n)
            }
            ProxKind::Eps { epsilon } => {
                self.validate()?;
                if f_norm != FNorm::LInf {
                    return Err(Error::unsupported(
                        "the mixed prox is only calibrated for the sup-norm metric".to_string(),
                    ));
                }
                Ok(epsilon)
            }
        }
    }

    /// Maximum of `d` over the unit sup-norm ball in `R^n`.
    pub fn max_over_ball(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            ProxKind::HalfSqL2 => n / 2.0,
            ProxKind::PPrime { p_prime } => n.powf(2.0 / p_prime) / 2.0,
            ProxKind::Eps { epsilon } => 0.5 + epsilon * n / 2.0,
        }
    }
}

impl serde::Serialize for ProxKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match *self {
            ProxKind::HalfSqL2 => s.serialize_str("half_sq_l2"),
            ProxKind::PPrime { p_prime } => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("p_prime", &p_prime)?;
                m.end()
            }
            ProxKind::Eps { epsilon } => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("epsilon", &epsilon)?;
                m.end()
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for ProxKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = ProxKind;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(
                    f,
                    "\"half_sq_l2\", {{\"p_prime\": x}}, or {{\"epsilon\": x}}"
                )
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<ProxKind, E> {
                if v.eq_ignore_ascii_case("half_sq_l2") {
                    Ok(ProxKind::HalfSqL2)
                } else {
                    Err(E::custom(format!("unknown prox function {v:?}")))
                }
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<ProxKind, A::Error> {
                use serde::de::Error as _;
                let key: String = map
                    .next_key()?
                    .ok_or_else(|| A::Error::custom("empty prox object"))?;
                let value: f64 = map.next_value()?;
                if map.next_key::<String>()?.is_some() {
                    return Err(A::Error::custom("prox object must have exactly one key"));
                }
                match key.as_str() {
                    "p_prime" => Ok(ProxKind::PPrime { p_prime: value }),
                    "epsilon" => Ok(ProxKind::Eps { epsilon: value }),
                    other => Err(A::Error::custom(format!("unknown prox key {other:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

fn pprime_modulus(p_prime: f64, p: f64, n: usize) -> Result<f64> {
    let base = p_prime - 1.0;
    if p >= p_prime {
        Ok(base)
    } else {
        // 1/p - with p possibly 1; n^(1/p' - 1/p) <= 1 here.
        Ok(base * (n as f64).powf(1.0 / p_prime - 1.0 / p))
    }
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Minimizes a convex function on `[lo, hi]` by ternary search.
fn ternary_min(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    while hi - lo > tol {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

/// Absolute tolerance of the scalar searches inside the steps.
pub const STEP_SEARCH_TOL: f64 = 1e-12;

/// Gradient step: `argmin` over the unit box of
/// `<g, y - q> + (L/2) ||y - q||_F^2`.
pub fn step_y(q: &[f64], g: &[f64], lipschitz: f64, f_norm: FNorm) -> Result<Vec<f64>> {
    if q.len() != g.len() {
        return Err(Error::input(
            "gradient and iterate lengths differ".to_string(),
        ));
    }
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(Error::input(format!(
            "Lipschitz constant must be positive, got {lipschitz}"
        )));
    }
    match f_norm {
        FNorm::L2 => Ok(q
            .iter()
            .zip(g)
            .map(|(&qi, &gi)| clamp_unit(qi - gi / lipschitz))
            .collect()),
        FNorm::LInf => {
            // Along the search the move of coordinate i saturates either at
            // radius t or at the box wall, whichever is closer; the resulting
            // scalar objective is convex in t.
            let g_max = g.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            if g_max == 0.0 {
                return Ok(q.to_vec());
            }
            let y_at = |t: f64| -> Vec<f64> {
                q.iter()
                    .zip(g)
                    .map(|(&qi, &gi)| {
                        if gi == 0.0 {
                            qi
                        } else {
                            clamp_unit(qi - t * gi.signum())
                        }
                    })
                    .collect()
            };
            let objective = |t: f64| -> f64 {
                let y = y_at(t);
                let linear: f64 = g
                    .iter()
                    .zip(y.iter().zip(q))
                    .map(|(&gi, (&yi, &qi))| gi * (yi - qi))
                    .sum();
                let radius = y
                    .iter()
                    .zip(q)
                    .fold(0.0f64, |a, (&yi, &qi)| a.max((yi - qi).abs()));
                linear + 0.5 * lipschitz * radius * radius
            };
            let hi = 2.0 * g_max / lipschitz + 2.0;
            let t = ternary_min(0.0, hi, STEP_SEARCH_TOL, objective);
            Ok(y_at(t))
        }
        FNorm::L1 => Err(Error::unsupported(
            "gradient step in the l1 metric is not offered".to_string(),
        )),
    }
}

/// History step: `argmin` over the unit box of
/// `(L/sigma) d(z) + <w, z>`.
pub fn step_z(w: &[f64], lipschitz: f64, sigma_d: f64, prox: ProxKind) -> Result<Vec<f64>> {
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(Error::input(format!(
            "Lipschitz constant must be positive, got {lipschitz}"
        )));
    }
    if !(sigma_d > 0.0 && sigma_d.is_finite()) {
        return Err(Error::input(format!(
            "prox modulus must be positive, got {sigma_d}"
        )));
    }
    prox.validate()?;
    let c = lipschitz / sigma_d;
    if w.iter().all(|&x| x == 0.0) {
        return Ok(vec![0.0; w.len()]);
    }
    match prox {
        ProxKind::HalfSqL2 => Ok(w.iter().map(|&wi| clamp_unit(-wi / c)).collect()),
        ProxKind::PPrime { p_prime } => {
            if p_prime == 2.0 {
                return Ok(w.iter().map(|&wi| clamp_unit(-wi / c)).collect());
            }
            // Coordinates obey |z_i| = min(1, (|w_i| / theta)^(1/(p'-1)))
            // with theta = c * ||z||_{p'}^(2-p'); the scalar fixed point is
            // the root of a strictly increasing function, bracketed below by
            // 0 and above by c*n^((2-p')/p') + max|w|.
            let n = w.len() as f64;
            let magnitude = |theta: f64| -> Vec<f64> {
                w.iter()
                    .map(|&wi| {
                        if wi == 0.0 {
                            0.0
                        } else {
                            (wi.abs() / theta).powf(1.0 / (p_prime - 1.0)).min(1.0)
                        }
                    })
                    .collect()
            };
            let residual = |theta: f64| -> f64 {
                let u = magnitude(theta);
                let norm = u
                    .iter()
                    .map(|x| x.powf(p_prime))
                    .sum::<f64>()
                    .powf(1.0 / p_prime);
                theta - c * norm.powf(2.0 - p_prime)
            };
            let w_max = w.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            let mut lo = 0.0;
            let mut hi = c * n.powf((2.0 - p_prime) / p_prime) + w_max;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if residual(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= STEP_SEARCH_TOL * hi.max(1.0) {
                    break;
                }
            }
            let theta = 0.5 * (lo + hi);
            Ok(w.iter()
                .zip(magnitude(theta))
                .map(|(&wi, ui)| -wi.signum() * ui)
                .collect())
        }
        ProxKind::Eps { epsilon } => {
            // Fix the sup-norm radius t; inside, coordinates decouple into
            // clamps. The envelope over t is convex on [0, 1].
            let z_at = |t: f64| -> Vec<f64> {
                w.iter()
                    .map(|&wi| (-wi / (c * epsilon)).clamp(-t, t))
                    .collect()
            };
            let objective = |t: f64| -> f64 {
                let z = z_at(t);
                let sq: f64 = z.iter().map(|x| x * x).sum();
                let dot: f64 = z.iter().zip(w).map(|(zi, wi)| zi * wi).sum();
                0.5 * c * t * t + 0.5 * c * epsilon * sq + dot
            };
            let t = ternary_min(0.0, 1.0, STEP_SEARCH_TOL, objective);
            Ok(z_at(t))
        }
    }
}
