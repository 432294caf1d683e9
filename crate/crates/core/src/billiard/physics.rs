use super::{BallState, BilliardError, Vec2, WormholeSpec};
use crate::scalar::Scalar;

/// Inertial motion over `dt >= 0`.
pub fn advance_free<F: Scalar>(s: &BallState<F>, dt: F) -> BallState<F> {
    debug_assert!(dt >= F::zero());
    BallState { position: s.position + s.velocity * dt, birth_time: s.birth_time + dt, ..*s }
}

/// Position of `s` at absolute time `t`.
pub fn at_time<F: Scalar>(s: &BallState<F>, t: F) -> BallState<F> {
    BallState { position: s.position + s.velocity * (t - s.birth_time), birth_time: t, ..*s }
}

/// Relative tolerance on "touching" for collisions and rim crossings.
fn contact_tol<F: Scalar>() -> F {
    F::lit(F::EVENT_EPS).sqrt()
}

/// Frictionless elastic collision of two disks in contact at the same
/// instant. Only the velocity components along the line of centers change.
pub fn collide_elastic<F: Scalar>(
    s1: &BallState<F>,
    s2: &BallState<F>,
) -> Result<(BallState<F>, BallState<F>), BilliardError> {
    let d = s2.position - s1.position;
    let dist = d.norm();
    let reach = s1.radius + s2.radius;
    if !((dist - reach).abs() <= contact_tol::<F>() * reach) {
        return Err(BilliardError::NotInContact { distance: dist.as_f64(), expected: reach.as_f64() });
    }
    let n = d / dist;
    // closing speed along the normal
    let u = (s1.velocity - s2.velocity).dot(n);
    if u < F::zero() {
        return Err(BilliardError::Receding);
    }
    let total = s1.mass + s2.mass;
    let k1 = F::lit(2.0) * s2.mass / total * u;
    let k2 = F::lit(2.0) * s1.mass / total * u;
    Ok((
        BallState { velocity: s1.velocity - n * k1, ..*s1 },
        BallState { velocity: s2.velocity + n * k2, ..*s2 },
    ))
}

/// Earliest `t >= 0` at which a point at offset `d` moving with relative
/// velocity `w` reaches distance `reach` from the origin while approaching.
/// Tangential passes (discriminant within tolerance of zero) are misses.
pub fn first_contact<F: Scalar>(d: Vec2<F>, w: Vec2<F>, reach: F) -> Option<F> {
    let a = w.norm_sqr();
    let b = F::lit(2.0) * d.dot(w);
    let c = d.norm_sqr() - reach * reach;
    if !(a > F::zero()) || b >= F::zero() {
        return None;
    }
    let disc = b * b - F::lit(4.0) * a * c;
    if disc <= F::lit(F::EVENT_EPS) * b * b {
        return None;
    }
    // smaller root, in the cancellation-free form
    let t = F::lit(2.0) * c / (-b + disc.sqrt());
    if t < -F::lit(F::EVENT_EPS) * (F::one() + reach / a.sqrt()) {
        // already overlapping
        return None;
    }
    Some(t.max(F::zero()))
}

fn check_rim<F: Scalar>(rel: Vec2<F>, radius: F) -> Result<Vec2<F>, BilliardError> {
    let r = rel.norm();
    if !((r - radius).abs() <= contact_tol::<F>() * radius) {
        return Err(BilliardError::NotOnRim { distance: r.as_f64(), radius: radius.as_f64() });
    }
    Ok(rel / r)
}

/// Carries a ball entering mouth B to its exit from mouth A, `time_shift`
/// earlier. Positions move by the frame map; the velocity is mapped and then
/// reflected in the exit tangent, so inward radial motion leaves radially
/// outward.
pub fn wormhole_map<F: Scalar>(
    w: &WormholeSpec<F>,
    entry: &BallState<F>,
    entry_time: F,
) -> Result<(BallState<F>, F), BilliardError> {
    let n_in = check_rim(entry.position - w.mouth_b, w.radius)?;
    if !(entry.velocity.dot(n_in) < F::zero()) {
        return Err(BilliardError::NotIngoing);
    }
    let n_out = w.frame_map.apply(n_in);
    let exit_time = entry_time - w.time_shift;
    let exit = BallState {
        position: w.mouth_a + n_out * w.radius,
        velocity: w.frame_map.apply(entry.velocity).reflect(n_out),
        birth_time: exit_time,
        ..*entry
    };
    Ok((exit, exit_time))
}

/// A ball entering mouth A travels forward in time and leaves mouth B
/// `time_shift` later. This is the time reverse of [`wormhole_map`].
pub fn wormhole_map_forward<F: Scalar>(
    w: &WormholeSpec<F>,
    entry: &BallState<F>,
    entry_time: F,
) -> Result<(BallState<F>, F), BilliardError> {
    let n_a = check_rim(entry.position - w.mouth_a, w.radius)?;
    if !(entry.velocity.dot(n_a) < F::zero()) {
        return Err(BilliardError::NotIngoing);
    }
    let n_b = w.frame_map.apply_inverse(n_a);
    let exit_time = entry_time + w.time_shift;
    let exit = BallState {
        position: w.mouth_b + n_b * w.radius,
        velocity: w.frame_map.apply_inverse(entry.velocity.reflect(n_a)),
        birth_time: exit_time,
        ..*entry
    };
    Ok((exit, exit_time))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::FrameMap;

    fn ball(p: [f64; 2], v: [f64; 2]) -> BallState<f64> {
        BallState { position: p.into(), velocity: v.into(), radius: 0.5, mass: 1.0, birth_time: 0.0 }
    }

    fn spec(map: FrameMap<f64>) -> WormholeSpec<f64> {
        WormholeSpec {
            mouth_a: Vec2::new(0.0, 3.0),
            mouth_b: Vec2::new(0.0, -3.0),
            radius: 1.0,
            time_shift: 4.0,
            frame_map: map,
        }
    }

    #[test]
    fn advance_examples() {
        let s = advance_free(&ball([0.0, 0.0], [1.0, 0.0]), 2.0);
        assert_eq!(s.position, Vec2::new(2.0, 0.0));
        let s0 = ball([1.0, -1.0], [0.5, 0.25]);
        assert_eq!(advance_free(&s0, 0.0), s0);
        let s = advance_free(&s0, 4.0);
        assert_eq!(s.position, Vec2::new(3.0, 0.0));
        assert_eq!(s.velocity, s0.velocity);
    }

    #[test]
    fn head_on_swap() {
        let (a, b) = collide_elastic(&ball([0.0, 0.0], [1.0, 0.0]), &ball([1.0, 0.0], [-1.0, 0.0])).unwrap();
        assert_eq!(a.velocity, Vec2::new(-1.0, 0.0));
        assert_eq!(b.velocity, Vec2::new(1.0, 0.0));
    }

    #[test]
    fn grazing_contact_changes_nothing() {
        let s1 = ball([0.0, 0.0], [1.0, 0.0]);
        let s2 = ball([0.0, 1.0], [0.0, 0.0]);
        let (a, b) = collide_elastic(&s1, &s2).unwrap();
        assert_eq!((a.velocity, b.velocity), (s1.velocity, s2.velocity));
    }

    #[test]
    fn collision_errors() {
        let far = collide_elastic(&ball([0.0, 0.0], [1.0, 0.0]), &ball([3.0, 0.0], [0.0, 0.0]));
        assert!(matches!(far, Err(BilliardError::NotInContact { .. })));
        let away = collide_elastic(&ball([0.0, 0.0], [-1.0, 0.0]), &ball([1.0, 0.0], [1.0, 0.0]));
        assert!(matches!(away, Err(BilliardError::Receding)));
    }

    #[test]
    fn contact_time() {
        // gap of 2 closing at speed 1
        assert_eq!(first_contact(Vec2::new(3.0, 0.0), Vec2::new(-1.0, 0.0), 1.0), Some(2.0));
        assert_eq!(first_contact(Vec2::new(3.0, 0.0), Vec2::new(1.0, 0.0), 1.0), None);
        // tangent line
        assert_eq!(first_contact(Vec2::new(3.0, 1.0), Vec2::new(-1.0, 0.0), 1.0), None);
        // touching now and approaching
        assert_eq!(first_contact(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0), 1.0), Some(0.0));
    }

    #[test]
    fn identity_map_radial() {
        let w = spec(FrameMap::identity());
        let theta: f64 = 2.0;
        let n = Vec2::polar(theta);
        let entry = BallState { position: w.mouth_b + n, velocity: -n * 2.0, ..ball([0.0, 0.0], [0.0, 0.0]) };
        let (exit, t) = wormhole_map(&w, &entry, 10.0).unwrap();
        assert_eq!(t, 6.0);
        assert!((exit.position - (w.mouth_a + n)).norm() < 1e-15);
        assert!((exit.velocity - n * 2.0).norm() < 1e-15);
    }

    #[test]
    fn map_rejects_bad_entries() {
        let w = spec(FrameMap::identity());
        let off = ball([5.0, 5.0], [-1.0, 0.0]);
        assert!(matches!(wormhole_map(&w, &off, 0.0), Err(BilliardError::NotOnRim { .. })));
        let out = ball([1.0, -3.0], [1.0, 0.0]);
        assert!(matches!(wormhole_map(&w, &out, 0.0), Err(BilliardError::NotIngoing)));
    }

    #[test]
    fn forward_map_inverts_backward_map() {
        for map in [FrameMap::identity(), FrameMap::rotation(0.7), FrameMap::mirrored(-1.1)] {
            let w = spec(map);
            let n = Vec2::polar(0.4);
            let entry = BallState { position: w.mouth_b + n, velocity: Vec2::new(-1.2, 0.3), ..ball([0.0, 0.0], [0.0, 0.0]) };
            let (exit, t) = wormhole_map(&w, &entry, 9.0).unwrap();
            // run the exit backwards in time into mouth A
            let rev = BallState { velocity: -exit.velocity, ..exit };
            let (back, t2) = wormhole_map_forward(&w, &rev, t).unwrap();
            assert_eq!(t2, 9.0);
            assert!((back.position - entry.position).norm() < 1e-14);
            assert!((back.velocity + entry.velocity).norm() < 1e-14);
        }
    }
}
