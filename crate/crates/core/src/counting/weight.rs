use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    W0,
    W1,
}

/// `t -> exp(-1 / (1 - u^2))` with `u = (t - center) / halfwidth`, zero for `|u| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: f64,
    pub halfwidth: f64,
    pub role: Role,
}

impl Bump {
    pub const W0_DEFAULT: Bump = Bump { center: 1.0, halfwidth: 1.0, role: Role::W0 };
    pub const W1_DEFAULT: Bump = Bump { center: 1.5, halfwidth: 1.0, role: Role::W1 };

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.halfwidth;
        if u.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - u * u)).exp()
        }
    }

    /// Open support `(lo, hi)`.
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.halfwidth, self.center + self.halfwidth)
    }
}

/// `W(x) = scale * w_a(x1^2+x2^2) w_b(x3^2+x4^2) w_c(x5^2+x6^2) w_d(Q1(x))`; the
/// same four bumps give `omega(x, y)` on `(L1, L2, L3, L4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub bumps: [Bump; 4],
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl Default for WeightSpec {
    fn default() -> Self {
        Self {
            bumps: [Bump::W1_DEFAULT, Bump::W0_DEFAULT, Bump::W0_DEFAULT, Bump::W1_DEFAULT],
            scale: 1.0,
        }
    }
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        let roles = self.bumps.map(|b| b.role);
        if roles != [Role::W1, Role::W0, Role::W0, Role::W1] {
            return Err(Error::UnsupportedWeight(
                "the factors must be w1, w0, w0, w1 on the three radii and Q1".into(),
            ));
        }
        for b in &self.bumps {
            if b.halfwidth.is_nan() || b.halfwidth <= 0.0 || !b.center.is_finite() || !b.halfwidth.is_finite() {
                return Err(Error::InvalidWeight(format!("bad bump {b:?}")));
            }
            if b.role == Role::W1 && b.center - b.halfwidth <= 0.0 {
                return Err(Error::InvalidWeight(format!(
                    "w1 must be supported away from 0, got support starting at {}",
                    b.center - b.halfwidth
                )));
            }
        }
        if !self.scale.is_finite() {
            return Err(Error::InvalidWeight("scale must be finite".into()));
        }
        Ok(())
    }

    /// Product of the four factors at already-normalized arguments.
    #[inline]
    pub fn eval(&self, a: f64, b: f64, c: f64, d: f64) -> f64 {
        let w = self.bumps[0].eval(a);
        if w == 0.0 {
            return 0.0;
        }
        self.scale * w * self.bumps[1].eval(b) * self.bumps[2].eval(c) * self.bumps[3].eval(d)
    }

    pub fn scaled(&self, lambda: f64) -> WeightSpec {
        WeightSpec { scale: self.scale * lambda, ..*self }
    }
}
