//! Text renderings of solver results. All numbers use [`fmt12`].

use std::fmt::Write;

use super::{ConsistentSolution, Event, Mouth};
use crate::scalar::{fmt12, Scalar};

fn f<F: Scalar>(x: F) -> String {
    fmt12(x.as_f64())
}

pub fn solutions_csv<F: Scalar>(sols: &[ConsistentSolution<F>]) -> String {
    let mut s = String::from("solution_id,kind,exit_time,exit_angle,exit_direction,exit_speed,residual_norm,event_count\n");
    for (i, sol) in sols.iter().enumerate() {
        let p = match &sol.params {
            Some(p) => [p.exit_time, p.exit_angle, p.exit_direction, p.exit_speed].map(f).join(","),
            None => ",,,".to_owned(),
        };
        let _ = writeln!(s, "{i},{},{p},{},{}", sol.kind.name(), f(sol.residual_norm), sol.outcome.events.len());
    }
    s
}

pub fn trajectories_csv<F: Scalar>(sols: &[ConsistentSolution<F>]) -> String {
    let mut s = String::from("solution_id,lineage,ball,t,x,y,vx,vy\n");
    for (i, sol) in sols.iter().enumerate() {
        for tr in &sol.outcome.tracks {
            for p in &tr.samples {
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{},{},{},{}",
                    tr.lineage,
                    tr.ball,
                    f(p.time),
                    f(p.position.x),
                    f(p.position.y),
                    f(p.velocity.x),
                    f(p.velocity.y)
                );
            }
        }
    }
    s
}

fn event_line<F: Scalar>(e: &Event<F>) -> String {
    let balls: Vec<String> = e.balls.iter().map(|b| b.to_string()).collect();
    let mouth = match e.kind.mouth() {
        Some(Mouth::A) => " mouth=A",
        Some(Mouth::B) => " mouth=B",
        None => "",
    };
    format!("t={} {}{mouth} balls=[{}]", f(e.time), e.kind.name(), balls.join(","))
}

/// One `[solution N]` block per solution, one line per event.
pub fn event_log<F: Scalar>(sols: &[ConsistentSolution<F>]) -> String {
    let mut s = String::new();
    for (i, sol) in sols.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "[solution {i}] kind={} residual={}", sol.kind.name(), f(sol.residual_norm));
        for e in &sol.outcome.events {
            s.push_str(&event_line(e));
            s.push('\n');
        }
    }
    s
}
