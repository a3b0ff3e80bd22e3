//! Riemann problems of pressureless gas dynamics: a delta shock for
//! colliding streams, a vacuum fan for separating ones.
//!
//! cargo run --example pgd_delta_shock

use deltawave::euler::State;
use deltawave::sdw::{solve_pgd_riemann, PgdRiemannSolution};

fn main() -> deltawave::Result<()> {
    let pairs = [
        (State::new(1.0, 1.0), State::new(1.2, 0.8)),
        (State::new(1.2, 0.8), State::new(1.14286, 0.7)),
        (State::new(1.0, 1.0), State::new(1.14286, 0.7)),
        (State::new(1.0, 0.2), State::new(0.5, 0.9)),
    ];
    for (l, r) in pairs {
        match solve_pgd_riemann(&l, &r)? {
            PgdRiemannSolution::DeltaShock { speed, strength_rate, .. } => {
                println!("({}, {}) | ({}, {}): delta shock, speed {speed:.6}, mass {strength_rate:.6} t", l.rho, l.u, r.rho, r.u)
            }
            PgdRiemannSolution::VacuumFan { .. } => {
                println!("({}, {}) | ({}, {}): vacuum between x = {} t and x = {} t", l.rho, l.u, r.rho, r.u, l.u, r.u)
            }
            PgdRiemannSolution::Trivial { .. } => println!("({}, {}) | ({}, {}): no wave", l.rho, l.u, r.rho, r.u),
        }
    }
    Ok(())
}
