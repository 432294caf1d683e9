use super::physics::{at_time, collide_elastic, first_contact, wormhole_map, wormhole_map_forward};
use super::{AnsatzParams, BallState, BilliardConfig, BilliardError, Vec2};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mouth {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Collision,
    MouthEntry(Mouth),
    MouthExit(Mouth),
    DomainExit,
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Collision => "collision",
            EventKind::MouthEntry(_) => "mouth_entry",
            EventKind::MouthExit(_) => "mouth_exit",
            EventKind::DomainExit => "domain_exit",
        }
    }

    pub fn mouth(&self) -> Option<Mouth> {
        match self {
            EventKind::MouthEntry(m) | EventKind::MouthExit(m) => Some(*m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event<F> {
    pub time: F,
    pub kind: EventKind,
    /// Ball ids taking part.
    pub balls: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<F> {
    pub time: F,
    pub position: Vec2<F>,
    pub velocity: Vec2<F>,
}

/// Worldline of one ball between its creation and removal, sampled at event
/// boundaries. Straight lines join consecutive samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BallTrack<F> {
    pub ball: usize,
    /// Balls that are stages of the same worldline across a traversal share
    /// a lineage.
    pub lineage: usize,
    pub samples: Vec<Sample<F>>,
}

/// A ball crossing into mouth B, with its state at the crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry<F> {
    pub ball: usize,
    pub state: BallState<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome<F> {
    pub events: Vec<Event<F>>,
    pub tracks: Vec<BallTrack<F>>,
    /// Exit data of the ball released from mouth A, if any.
    pub emergent: Option<AnsatzParams<F>>,
    /// First mouth-B entry after the release; it is what the emergent ball
    /// must become.
    pub claimed: Option<Entry<F>>,
    /// Mouth-B entries whose earlier exit is not part of this evolution.
    pub unclaimed: Vec<Entry<F>>,
    /// Balls passing forward in time from mouth A to mouth B.
    pub forward_traversals: usize,
    /// A ball was released on top of another.
    pub spawn_overlap: bool,
}

impl<F: Scalar> SimOutcome<F> {
    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

pub(crate) const MAIN_BALL: usize = 0;
pub(crate) const EMERGENT_BALL: usize = 1;

/// Evolves `c` from its initial ball, optionally with an extra ball released
/// from mouth A per `emergent`.
///
/// Without an emergent ball, an undisturbed path that enters mouth B implies
/// an earlier exit from mouth A; the run is then repeated once with that exit
/// present, which is the traversal chain of the plain evolution.
pub fn simulate<F: Scalar>(
    c: &BilliardConfig<F>,
    emergent: Option<&AnsatzParams<F>>,
    max_events: usize,
) -> Result<SimOutcome<F>, BilliardError> {
    c.validate()?;
    if emergent.is_some() {
        return run(c, emergent, max_events);
    }
    let first = run(c, None, max_events)?;
    let Some(e) = first.unclaimed.first() else {
        return Ok(first);
    };
    let (exit, _) = wormhole_map(&c.wormhole, &e.state, e.state.birth_time)?;
    let p = AnsatzParams::from_exit_state(&c.wormhole, &exit);
    if p.exit_time < c.start_time() || p.validate().is_err() {
        return Ok(first);
    }
    run(c, Some(&p), max_events)
}

struct Live<F> {
    id: usize,
    state: BallState<F>,
}

struct Spawn<F> {
    state: BallState<F>,
    id: usize,
    mouth: Mouth,
}

#[derive(Clone, Copy)]
enum Next {
    Spawn(usize),
    Mouth(usize, Mouth),
    Domain(usize),
    Contact(usize, usize),
}

fn domain_exit<F: Scalar>(c: &BilliardConfig<F>, s: &BallState<F>) -> Option<F> {
    if !c.domain.contains(s.position) {
        return Some(F::zero());
    }
    let mut best: Option<F> = None;
    for (p, v, lo, hi) in [
        (s.position.x, s.velocity.x, c.domain.min.x, c.domain.max.x),
        (s.position.y, s.velocity.y, c.domain.min.y, c.domain.max.y),
    ] {
        let t = if v > F::zero() {
            (hi - p) / v
        } else if v < F::zero() {
            (lo - p) / v
        } else {
            continue;
        };
        let t = t.max(F::zero());
        best = Some(best.map_or(t, |b| b.min(t)));
    }
    best
}

fn run<F: Scalar>(
    c: &BilliardConfig<F>,
    emergent: Option<&AnsatzParams<F>>,
    max_events: usize,
) -> Result<SimOutcome<F>, BilliardError> {
    let t_end = c.end_time();
    let mut out = SimOutcome {
        events: Vec::new(),
        tracks: Vec::new(),
        emergent: emergent.copied(),
        claimed: None,
        unclaimed: Vec::new(),
        forward_traversals: 0,
        spawn_overlap: false,
    };
    let mut live: Vec<Live<F>> = Vec::new();
    let mut pending: Vec<Spawn<F>> = Vec::new();

    let main = c.initial_ball;
    out.tracks.push(BallTrack { ball: MAIN_BALL, lineage: 0, samples: vec![sample(&main)] });
    live.push(Live { id: MAIN_BALL, state: main });
    if let Some(p) = emergent {
        p.validate()?;
        if p.exit_time < c.start_time() || p.exit_time > t_end {
            return Err(BilliardError::Params("exit time outside the simulated window".into()));
        }
        let state = p.exit_state(&c.wormhole, &main);
        out.tracks.push(BallTrack { ball: EMERGENT_BALL, lineage: 1, samples: Vec::new() });
        pending.push(Spawn { state, id: EMERGENT_BALL, mouth: Mouth::A });
    }

    let mut t_now = c.start_time();
    let mut processed = 0usize;
    loop {
        let mut best: Option<(F, Next)> = None;
        let mut consider = |t: F, n: Next| -> Result<(), BilliardError> {
            if !t.is_finite() {
                return Err(BilliardError::EventTime { lo: t_now.as_f64(), hi: t_end.as_f64() });
            }
            if best.is_none_or(|(b, _)| t < b) {
                best = Some((t, n));
            }
            Ok(())
        };
        for (k, s) in pending.iter().enumerate() {
            consider(s.state.birth_time, Next::Spawn(k))?;
        }
        for (k, b) in live.iter().enumerate() {
            let s = &b.state;
            for (m, center) in [(Mouth::A, c.wormhole.mouth_a), (Mouth::B, c.wormhole.mouth_b)] {
                if let Some(dt) = first_contact(s.position - center, s.velocity, c.wormhole.radius) {
                    consider(t_now + dt, Next::Mouth(k, m))?;
                }
            }
            if let Some(dt) = domain_exit(c, s) {
                consider(t_now + dt, Next::Domain(k))?;
            }
        }
        for i in 0..live.len() {
            for j in (i + 1)..live.len() {
                let (a, b) = (&live[i].state, &live[j].state);
                if let Some(dt) = first_contact(b.position - a.position, b.velocity - a.velocity, a.radius + b.radius) {
                    consider(t_now + dt, Next::Contact(i, j))?;
                }
            }
        }

        let Some((t, next)) = best.filter(|(t, _)| *t <= t_end) else {
            break;
        };
        processed += 1;
        if processed > max_events {
            return Err(BilliardError::Runaway(max_events));
        }
        t_now = t;
        for b in live.iter_mut() {
            b.state = at_time(&b.state, t);
        }

        match next {
            Next::Spawn(k) => {
                let s = pending.remove(k);
                if live.iter().any(|b| {
                    let reach = b.state.radius + s.state.radius;
                    (b.state.position - s.state.position).norm() < reach * (F::one() - F::lit(F::EVENT_EPS).sqrt())
                }) {
                    out.spawn_overlap = true;
                }
                out.tracks[s.id].samples.push(sample(&s.state));
                out.events.push(Event { time: t, kind: EventKind::MouthExit(s.mouth), balls: vec![s.id] });
                live.push(Live { id: s.id, state: s.state });
            }
            Next::Contact(i, j) => {
                let (a, b) = collide_elastic(&live[i].state, &live[j].state)?;
                live[i].state = a;
                live[j].state = b;
                let (ia, ib) = (live[i].id, live[j].id);
                out.tracks[ia].samples.push(sample(&a));
                out.tracks[ib].samples.push(sample(&b));
                out.events.push(Event { time: t, kind: EventKind::Collision, balls: vec![ia.min(ib), ia.max(ib)] });
            }
            Next::Domain(k) => {
                let b = live.remove(k);
                out.tracks[b.id].samples.push(sample(&b.state));
                out.events.push(Event { time: t, kind: EventKind::DomainExit, balls: vec![b.id] });
            }
            Next::Mouth(k, m) => {
                let b = live.remove(k);
                out.tracks[b.id].samples.push(sample(&b.state));
                out.events.push(Event { time: t, kind: EventKind::MouthEntry(m), balls: vec![b.id] });
                let entry = Entry { ball: b.id, state: b.state };
                match m {
                    Mouth::B => {
                        let claims = out.claimed.is_none() && emergent.is_some_and(|p| t > p.exit_time);
                        if claims {
                            out.tracks[EMERGENT_BALL].lineage = out.tracks[b.id].lineage;
                            out.claimed = Some(entry);
                        } else {
                            out.unclaimed.push(entry);
                        }
                    }
                    Mouth::A => {
                        let (state, _) = wormhole_map_forward(&c.wormhole, &b.state, t)?;
                        let id = out.tracks.len();
                        let lineage = out.tracks[b.id].lineage;
                        out.tracks.push(BallTrack { ball: id, lineage, samples: Vec::new() });
                        pending.push(Spawn { state, id, mouth: Mouth::B });
                        out.forward_traversals += 1;
                    }
                }
            }
        }
    }

    for b in &live {
        let s = at_time(&b.state, t_end);
        out.tracks[b.id].samples.push(sample(&s));
    }
    // the claiming ball became the emergent one: every stage of that worldline
    // carries the same lineage
    if let Some(e) = out.claimed {
        let lineage = out.tracks[e.ball].lineage;
        out.tracks[EMERGENT_BALL].lineage = lineage;
    }
    out.events.sort_by(|a, b| a.time.partial_cmp(&b.time).expect("finite event times"));
    Ok(out)
}

fn sample<F: Scalar>(s: &BallState<F>) -> Sample<F> {
    Sample { time: s.birth_time, position: s.position, velocity: s.velocity }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::{Domain, FrameMap, WormholeSpec};

    fn config(mouth_a: [f64; 2], mouth_b: [f64; 2], velocity: [f64; 2]) -> BilliardConfig<f64> {
        BilliardConfig {
            wormhole: WormholeSpec {
                mouth_a: mouth_a.into(),
                mouth_b: mouth_b.into(),
                radius: 1.0,
                time_shift: 5.0,
                frame_map: FrameMap::identity(),
            },
            initial_ball: BallState {
                position: Vec2::new(-8.0, 0.0),
                velocity: velocity.into(),
                radius: 0.25,
                mass: 1.0,
                birth_time: 0.0,
            },
            horizon: 30.0,
            domain: Domain { min: Vec2::new(-12.0, -8.0), max: Vec2::new(12.0, 8.0) },
        }
    }

    #[test]
    fn undisturbed_path_leaves_domain() {
        let c = config([0.0, 3.0], [0.0, -3.0], [1.0, 0.0]);
        let o = simulate(&c, None, 64).unwrap();
        assert_eq!(o.events.len(), 1);
        assert_eq!(o.events[0].kind, EventKind::DomainExit);
        assert_eq!(o.events[0].time, 20.0);
        assert_eq!(o.tracks.len(), 1);
        assert_eq!(o.tracks[0].samples.len(), 2);
    }

    #[test]
    fn horizon_stops_the_run() {
        let mut c = config([0.0, 3.0], [0.0, -3.0], [0.5, 0.0]);
        c.horizon = 10.0;
        let o = simulate(&c, None, 64).unwrap();
        assert!(o.events.is_empty());
        let last = o.tracks[0].samples.last().unwrap();
        assert_eq!((last.time, last.position), (10.0, Vec2::new(-3.0, 0.0)));
    }

    #[test]
    fn path_into_mouth_b_chains_through_mouth_a() {
        // straight at mouth B's center: enters at (-1, -3) at t = 7
        let c = config([0.0, 3.0], [-0.0, -3.0], [1.0, 0.0]);
        let c = BilliardConfig { initial_ball: BallState { position: Vec2::new(-8.0, -3.0), ..c.initial_ball }, ..c };
        let o = simulate(&c, None, 64).unwrap();
        let kinds: Vec<_> = o.events.iter().map(|e| (e.kind, e.time)).collect();
        assert_eq!(
            kinds,
            vec![
                (EventKind::MouthExit(Mouth::A), 2.0),
                (EventKind::MouthEntry(Mouth::B), 7.0),
                (EventKind::DomainExit, 13.0)
            ]
        );
        assert!(o.unclaimed.is_empty());
        let e = o.claimed.unwrap();
        assert_eq!(e.ball, MAIN_BALL);
        assert_eq!(o.tracks[EMERGENT_BALL].lineage, o.tracks[MAIN_BALL].lineage);
    }

    #[test]
    fn emergent_that_never_meets() {
        let c = config([0.0, 3.0], [0.0, -3.0], [1.0, 0.0]);
        let p = AnsatzParams { exit_time: 1.0, exit_angle: 1.5, exit_direction: 0.0, exit_speed: 1.0 };
        let o = simulate(&c, Some(&p), 64).unwrap();
        assert_eq!(o.count(EventKind::Collision), 0);
        assert_eq!(o.count(EventKind::DomainExit), 2);
        assert!(o.claimed.is_none());
        for t in &o.tracks {
            assert_eq!(t.samples.len(), 2);
            assert_eq!(t.samples[0].velocity, t.samples[1].velocity);
        }
    }

    #[test]
    fn forward_traversal_through_mouth_a() {
        let c = config([0.0, 0.0], [0.0, -5.0], [1.0, 0.0]);
        let o = simulate(&c, None, 64).unwrap();
        assert_eq!(o.forward_traversals, 1);
        let kinds: Vec<_> = o.events.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, vec![EventKind::MouthEntry(Mouth::A), EventKind::MouthExit(Mouth::B), EventKind::DomainExit]);
        assert_eq!(o.events[1].time - o.events[0].time, 5.0);
        assert_eq!(o.tracks[1].lineage, 0);
    }

    #[test]
    fn runaway_is_reported() {
        let c = config([0.0, 3.0], [0.0, -3.0], [1.0, 0.0]);
        assert_eq!(simulate(&c, None, 0), Err(BilliardError::Runaway(0)));
    }

    #[test]
    fn deterministic() {
        let c = config([0.0, 2.5], [0.0, -2.5], [1.0, 0.0]);
        let p = AnsatzParams { exit_time: 4.0, exit_angle: -2.4, exit_direction: 0.3, exit_speed: 0.8 };
        let a = simulate(&c, Some(&p), 64).unwrap();
        let b = simulate(&c, Some(&p), 64).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}
