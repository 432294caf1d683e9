use super::{BilliardError, Vec2};
use crate::scalar::Scalar;

/// Orthogonal 2x2 map taking mouth-B-relative coordinates to mouth-A-relative
/// coordinates. Row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMap<F> {
    pub m: [[F; 2]; 2],
}

impl<F: Scalar> FrameMap<F> {
    /// Rim-angle preserving map.
    pub fn identity() -> Self {
        FrameMap { m: [[F::one(), F::zero()], [F::zero(), F::one()]] }
    }

    pub fn rotation(theta: F) -> Self {
        let (s, c) = theta.sin_cos();
        FrameMap { m: [[c, -s], [s, c]] }
    }

    /// Reflection `y -> -y` followed by a rotation.
    pub fn mirrored(theta: F) -> Self {
        let r = Self::rotation(theta).m;
        FrameMap { m: [[r[0][0], -r[0][1]], [r[1][0], -r[1][1]]] }
    }

    #[inline]
    pub fn apply(&self, v: Vec2<F>) -> Vec2<F> {
        Vec2::new(self.m[0][0] * v.x + self.m[0][1] * v.y, self.m[1][0] * v.x + self.m[1][1] * v.y)
    }

    /// Transpose, the inverse of an orthogonal map.
    #[inline]
    pub fn apply_inverse(&self, v: Vec2<F>) -> Vec2<F> {
        Vec2::new(self.m[0][0] * v.x + self.m[1][0] * v.y, self.m[0][1] * v.x + self.m[1][1] * v.y)
    }

    /// Largest entry of `M^T M - I`.
    pub fn orthogonality_defect(&self) -> F {
        let c0 = Vec2::new(self.m[0][0], self.m[1][0]);
        let c1 = Vec2::new(self.m[0][1], self.m[1][1]);
        let d = [c0.dot(c0) - F::one(), c1.dot(c1) - F::one(), c0.dot(c1)];
        d.iter().fold(F::zero(), |a, x| a.max(x.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WormholeSpec<F> {
    pub mouth_a: Vec2<F>,
    pub mouth_b: Vec2<F>,
    pub radius: F,
    /// Exit precedes entry by this much.
    pub time_shift: F,
    pub frame_map: FrameMap<F>,
}

impl<F: Scalar> WormholeSpec<F> {
    pub fn validate(&self) -> Result<(), BilliardError> {
        if !(self.radius > F::zero()) {
            return Err(BilliardError::Config("mouth radius must be positive".into()));
        }
        if !(self.time_shift > F::zero()) {
            return Err(BilliardError::Config("wormhole time shift must be positive".into()));
        }
        if (self.mouth_a - self.mouth_b).norm() <= F::lit(2.0) * self.radius {
            return Err(BilliardError::Config("wormhole mouths overlap".into()));
        }
        // distance preservation to 1e-12 relative (scaled for single precision)
        let tol = F::lit(F::EVENT_EPS).max(F::epsilon() * F::lit(16.0));
        if !(self.frame_map.orthogonality_defect() <= tol) {
            return Err(BilliardError::Config("frame map is not an isometry".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallState<F> {
    pub position: Vec2<F>,
    pub velocity: Vec2<F>,
    pub radius: F,
    pub mass: F,
    /// Time at which `position` holds.
    pub birth_time: F,
}

impl<F: Scalar> BallState<F> {
    pub fn speed(&self) -> F {
        self.velocity.norm()
    }

    pub fn kinetic_energy(&self) -> F {
        F::lit(0.5) * self.mass * self.velocity.norm_sqr()
    }

    pub fn momentum(&self) -> Vec2<F> {
        self.velocity * self.mass
    }
}

/// Axis-aligned box; a ball whose center leaves it is gone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<F> {
    pub min: Vec2<F>,
    pub max: Vec2<F>,
}

impl<F: Scalar> Domain<F> {
    pub fn contains(&self, p: Vec2<F>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilliardConfig<F> {
    pub wormhole: WormholeSpec<F>,
    pub initial_ball: BallState<F>,
    pub horizon: F,
    pub domain: Domain<F>,
}

impl<F: Scalar> BilliardConfig<F> {
    pub fn validate(&self) -> Result<(), BilliardError> {
        self.wormhole.validate()?;
        let b = &self.initial_ball;
        if !(b.radius > F::zero()) || !(b.mass > F::zero()) {
            return Err(BilliardError::Config("ball radius and mass must be positive".into()));
        }
        if b.radius >= self.wormhole.radius {
            return Err(BilliardError::Config("ball must fit through a mouth".into()));
        }
        if !(b.velocity.norm() > F::zero()) {
            return Err(BilliardError::Config("initial ball must move".into()));
        }
        if !(self.horizon > self.wormhole.time_shift) {
            return Err(BilliardError::Config("horizon must exceed the wormhole time shift".into()));
        }
        if !self.domain.contains(b.position) {
            return Err(BilliardError::Config("initial ball lies outside the domain".into()));
        }
        for c in [self.wormhole.mouth_a, self.wormhole.mouth_b] {
            if (b.position - c).norm() <= self.wormhole.radius {
                return Err(BilliardError::Config("initial ball lies inside a mouth".into()));
            }
        }
        Ok(())
    }

    pub fn start_time(&self) -> F {
        self.initial_ball.birth_time
    }

    pub fn end_time(&self) -> F {
        self.initial_ball.birth_time + self.horizon
    }

    /// Characteristic scales making residual components dimensionless.
    pub fn scales(&self) -> Scales<F> {
        Scales {
            time: self.wormhole.time_shift,
            length: self.wormhole.radius,
            speed: self.initial_ball.velocity.norm(),
        }
    }

    pub fn cast<G: Scalar>(&self) -> BilliardConfig<G> {
        let c = |x: F| G::lit(x.as_f64());
        let w = &self.wormhole;
        let b = &self.initial_ball;
        BilliardConfig {
            wormhole: WormholeSpec {
                mouth_a: w.mouth_a.cast(),
                mouth_b: w.mouth_b.cast(),
                radius: c(w.radius),
                time_shift: c(w.time_shift),
                frame_map: FrameMap {
                    m: [[c(w.frame_map.m[0][0]), c(w.frame_map.m[0][1])], [c(w.frame_map.m[1][0]), c(w.frame_map.m[1][1])]],
                },
            },
            initial_ball: BallState {
                position: b.position.cast(),
                velocity: b.velocity.cast(),
                radius: c(b.radius),
                mass: c(b.mass),
                birth_time: c(b.birth_time),
            },
            horizon: c(self.horizon),
            domain: Domain { min: self.domain.min.cast(), max: self.domain.max.cast() },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales<F> {
    pub time: F,
    pub length: F,
    pub speed: F,
}

/// Exit data of a ball emerging from mouth A: the unknowns of the
/// self-interaction ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams<F> {
    pub exit_time: F,
    /// Angle of the exit point on mouth A's rim.
    pub exit_angle: F,
    /// Heading relative to the outward rim normal, in (-pi/2, pi/2).
    pub exit_direction: F,
    pub exit_speed: F,
}

impl<F: Scalar> AnsatzParams<F> {
    pub fn validate(&self) -> Result<(), BilliardError> {
        if !(self.exit_speed > F::zero()) {
            return Err(BilliardError::Params("exit speed must be positive".into()));
        }
        if !(self.exit_direction.abs() < F::FRAC_PI_2()) {
            return Err(BilliardError::Params("exit direction must point out of the mouth".into()));
        }
        if !(self.exit_time.is_finite() && self.exit_angle.is_finite()) {
            return Err(BilliardError::Params("non-finite parameters".into()));
        }
        Ok(())
    }

    /// State of the emerging ball at `exit_time`.
    pub fn exit_state(&self, w: &WormholeSpec<F>, like: &BallState<F>) -> BallState<F> {
        let n = Vec2::polar(self.exit_angle);
        BallState {
            position: w.mouth_a + n * w.radius,
            velocity: Vec2::polar(self.exit_angle + self.exit_direction) * self.exit_speed,
            radius: like.radius,
            mass: like.mass,
            birth_time: self.exit_time,
        }
    }

    /// Inverse of [`exit_state`](Self::exit_state).
    pub fn from_exit_state(w: &WormholeSpec<F>, s: &BallState<F>) -> Self {
        let rel = s.position - w.mouth_a;
        let angle = rel.angle();
        AnsatzParams {
            exit_time: s.birth_time,
            exit_angle: angle,
            exit_direction: crate::scalar::wrap_angle(s.velocity.angle() - angle),
            exit_speed: s.velocity.norm(),
        }
    }

    /// Coordinates in which solver distances are measured.
    pub fn scaled(&self, origin: F, sc: &Scales<F>) -> [F; 4] {
        [(self.exit_time - origin) / sc.time, self.exit_angle, self.exit_direction, self.exit_speed / sc.speed]
    }

    pub fn from_scaled(x: [F; 4], origin: F, sc: &Scales<F>) -> Self {
        AnsatzParams {
            exit_time: origin + x[0] * sc.time,
            exit_angle: crate::scalar::wrap_angle(x[1]),
            exit_direction: x[2],
            exit_speed: x[3] * sc.speed,
        }
    }
}

/// Distance in scaled parameter space with the rim angle taken mod 2pi.
pub fn scaled_distance<F: Scalar>(a: &[F; 4], b: &[F; 4]) -> F {
    let d = [a[0] - b[0], crate::scalar::wrap_angle(a[1] - b[1]), a[2] - b[2], a[3] - b[3]];
    d.iter().fold(F::zero(), |s, x| s + *x * *x).sqrt()
}
