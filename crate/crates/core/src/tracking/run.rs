use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::front::{discretize_initial, next_collision, waves_to_fronts, CollisionEvent, Front, FrontList, PiecewiseData};
use super::monitor::{
    check_bounds, classify, compute_tv, glimm_functional, initial_checks, GlimmSnapshot, InteractionCase, InitialChecks,
    WaveSummary,
};
use crate::error::{Error, Result};
use crate::estimates::{default_rho_ceiling, estimate_cstar, EstimateConstants};
use crate::euler::{solve_riemann, GasParams, State, Wave, WaveKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrackConfig {
    /// Maximal invariant amplitude of a rarefaction fragment.
    pub delta_r: f64,
    pub t_end: f64,
    /// Abort once more fronts than this are alive.
    pub front_cap: usize,
    /// Include same-family shock pairs in the interaction potential.
    pub q_same_family: bool,
    /// Record the functional after every this many collisions.
    pub snapshot_every: usize,
    /// Sample size and seed for the interaction constant when
    /// `constants` is not given.
    pub cstar_samples: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<EstimateConstants>,
}

impl Default for TrackConfig {
    fn default() -> Self {
        Self {
            delta_r: 0.05,
            t_end: 15000.0,
            front_cap: 1_000_000,
            q_same_family: true,
            snapshot_every: 64,
            cstar_samples: 10_000,
            seed: 0,
            constants: None,
        }
    }
}

/// What one call to [`resolve_collision`] removed and inserted.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    pub removed: Vec<Front>,
    pub added: Vec<Front>,
}

/// Replace the fronts of `ev` by the exact Riemann solution between the
/// outermost states, centred at the collision point.
pub fn resolve_collision(fl: &mut FrontList, ev: &CollisionEvent, p: &GasParams, delta_r: f64) -> Result<Resolution> {
    if ev.last >= fl.fronts.len() || ev.first >= ev.last {
        return Err(Error::Integrity(format!("collision range {}..={} is invalid", ev.first, ev.last)));
    }
    if fl.fronts[ev.first..=ev.last].iter().map(|f| f.id).ne(ev.ids.iter().copied()) {
        return Err(Error::Integrity("collision refers to fronts that are no longer adjacent".into()));
    }
    if ev.t < fl.t {
        return Err(Error::Integrity(format!("collision at t = {} precedes the current time {}", ev.t, fl.t)));
    }
    let left = fl.fronts[ev.first].left;
    let right = fl.fronts[ev.last].right;
    let sol = solve_riemann(&left, &right, p)?;
    let waves: Vec<Wave> = sol.waves().copied().collect();
    let mut id = fl.next_id;
    let added = waves_to_fronts(&waves, ev.x, ev.t, p, delta_r, || {
        id += 1;
        id - 1
    })?;
    fl.next_id = id;
    fl.t = ev.t;
    let removed: Vec<Front> = fl.fronts.splice(ev.first..=ev.last, added.iter().copied()).collect();
    Ok(Resolution { removed, added })
}

/// Incoming and outgoing waves of one collision with the checks applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionRecord {
    pub index: usize,
    pub t: f64,
    pub x: f64,
    pub case: InteractionCase,
    pub incoming: Vec<WaveSummary>,
    pub outgoing: Vec<WaveSummary>,
    pub bounds_ok: bool,
    pub f_before: f64,
    pub f_after: f64,
}

impl CollisionRecord {
    pub fn f_increase(&self) -> f64 {
        self.f_after - self.f_before
    }
}

fn summarize_outgoing(added: &[Front]) -> Vec<WaveSummary> {
    let mut out: Vec<WaveSummary> = Vec::new();
    for f in added {
        match out.last_mut() {
            Some(w) if w.family == f.family && w.kind == f.kind => w.strength += f.strength(),
            _ => out.push(WaveSummary::of_front(f)),
        }
    }
    out
}

/// A front together with the interval of time it was alive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub front: Front,
    /// Collision that created the front; 0 for the initial data.
    pub born_at_event: usize,
    /// `INFINITY` while the front is still alive.
    pub t_death: f64,
}

impl Segment {
    fn alive_at(&self, t: f64) -> bool {
        self.front.t0 <= t && t < self.t_death
    }
}

/// Aggregate counts over a run.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct MonitorReport {
    pub collisions: usize,
    pub unclassified: usize,
    pub bound_violations: usize,
    /// Collisions after which `F` grew by more than `1e-12 max(1, F)`.
    pub f_increases: usize,
    pub max_f_increase: f64,
    pub case_counts: BTreeMap<String, usize>,
    pub max_fronts: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub params: GasParams,
    pub config: TrackConfig,
    pub constants: EstimateConstants,
    pub initial: FrontList,
    #[serde(rename = "final")]
    pub final_list: FrontList,
    #[serde(skip)]
    pub segments: Vec<Segment>,
    #[serde(skip)]
    pub collisions: Vec<CollisionRecord>,
    pub snapshots: Vec<GlimmSnapshot>,
    pub checks: InitialChecks,
    pub report: MonitorReport,
}

pub fn run(data: &PiecewiseData, p: &GasParams, config: &TrackConfig) -> Result<Trajectory> {
    if !(config.t_end > 0.0) {
        return Err(Error::Domain(format!("t_end must be positive, got {}", config.t_end)));
    }
    let constants = match &config.constants {
        Some(c) => c.clone(),
        None => estimate_cstar(config.cstar_samples, default_rho_ceiling(p), p, config.seed)?,
    };
    let k_tilde = constants.k_tilde();
    let mut fl = discretize_initial(data, p, config.delta_r)?;
    let initial = fl.clone();
    let mut segments: Vec<Segment> =
        fl.fronts.iter().map(|&front| Segment { front, born_at_event: 0, t_death: f64::INFINITY }).collect();
    let mut g = glimm_functional(&fl, k_tilde, config.q_same_family);
    let f0 = g.f;
    let mut checks = initial_checks(&g, compute_tv(&fl, p)?, &constants, p);
    let mut snapshots = vec![g];
    let mut collisions = Vec::new();
    let mut report = MonitorReport { max_fronts: fl.len(), ..Default::default() };
    let every = config.snapshot_every.max(1);

    while let Some(ev) = next_collision(&fl) {
        if ev.t > config.t_end {
            break;
        }
        let res = resolve_collision(&mut fl, &ev, p, config.delta_r)?;
        let index = collisions.len() + 1;
        for f in &res.removed {
            segments[f.id as usize].t_death = ev.t;
        }
        for &front in &res.added {
            debug_assert_eq!(front.id as usize, segments.len());
            segments.push(Segment { front, born_at_event: index, t_death: f64::INFINITY });
        }
        if fl.len() > config.front_cap {
            return Err(Error::FrontCapExceeded { cap: config.front_cap, time: ev.t, fronts: fl.len() });
        }
        report.max_fronts = report.max_fronts.max(fl.len());

        let incoming: Vec<WaveSummary> = res.removed.iter().map(WaveSummary::of_front).collect();
        let outgoing = summarize_outgoing(&res.added);
        let case = classify(&incoming);
        let bounds_ok = check_bounds(case, &incoming, &outgoing, &constants, p)?;
        let after = glimm_functional(&fl, k_tilde, config.q_same_family);

        let rise = after.f - g.f;
        if rise > 1e-12 * g.f.max(1.0) {
            report.f_increases += 1;
        }
        report.max_f_increase = report.max_f_increase.max(rise);
        if case == InteractionCase::Unclassified {
            report.unclassified += 1;
        }
        if !bounds_ok {
            report.bound_violations += 1;
        }
        *report.case_counts.entry(case.label().to_string()).or_default() += 1;
        if after.l_minus > f0 + 1e-12 * f0.max(1.0) {
            checks.l_minus_le_f0 = false;
        }
        collisions.push(CollisionRecord {
            index,
            t: ev.t,
            x: ev.x,
            case,
            incoming,
            outgoing,
            bounds_ok,
            f_before: g.f,
            f_after: after.f,
        });
        g = after;
        if index % every == 0 {
            snapshots.push(g);
        }
    }
    report.collisions = collisions.len();
    fl.t = config.t_end;
    g.t = config.t_end;
    snapshots.push(g);

    Ok(Trajectory {
        params: *p,
        config: config.clone(),
        constants,
        initial,
        final_list: fl,
        segments,
        collisions,
        snapshots,
        checks,
        report,
    })
}

/// Integration box `[a, b] x [0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservationBox {
    pub a: f64,
    pub b: f64,
    pub t: f64,
}

/// Residuals of the integral balance laws for mass and momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationResidual {
    pub bx: ConservationBox,
    pub eq1: f64,
    pub eq2: f64,
}

impl Trajectory {
    pub fn t_end(&self) -> f64 {
        self.config.t_end
    }

    /// Fronts alive at time `t`, ordered by position.
    pub fn fronts_at(&self, t: f64) -> Vec<Front> {
        let t_last = self.t_end();
        let mut v: Vec<Front> = self
            .segments
            .iter()
            .filter(|s| s.alive_at(t) || (t >= t_last && s.t_death.is_infinite() && s.front.t0 <= t))
            .map(|s| s.front)
            .collect();
        v.sort_by(|a, b| a.x_at(t).total_cmp(&b.x_at(t)).then(a.speed.total_cmp(&b.speed)).then(a.id.cmp(&b.id)));
        v
    }

    /// Breakpoints and the constant states between them at time `t`.
    pub fn profile_at(&self, t: f64) -> (Vec<f64>, Vec<State>) {
        let fronts = self.fronts_at(t);
        let xs = fronts.iter().map(|f| f.x_at(t)).collect();
        let mut states = vec![self.initial.far_left];
        states.extend(fronts.iter().map(|f| f.right));
        (xs, states)
    }

    /// Smallest and largest front position over `[0, t_end]`.
    pub fn extent(&self) -> Option<(f64, f64)> {
        let t_last = self.t_end();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.segments {
            let t1 = s.t_death.min(t_last);
            for x in [s.front.x0, s.front.x_at(t1)] {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        lo.is_finite().then_some((lo, hi))
    }

    /// Box one unit wider than the extent of the fronts, up to `t_end`.
    pub fn default_box(&self) -> ConservationBox {
        let (lo, hi) = self.extent().unwrap_or((0.0, 0.0));
        ConservationBox { a: lo - 1.0, b: hi + 1.0, t: self.t_end() }
    }

    pub fn write_fronts_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "event_index,t,x,family,kind,amplitude,speed")?;
        for s in &self.segments {
            let f = &s.front;
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                s.born_at_event,
                f.t0,
                f.x0,
                f.family.index(),
                f.kind.label(),
                f.amplitude,
                f.speed
            )?;
        }
        Ok(())
    }

    /// Step profile at `t`: each breakpoint appears twice, with the states
    /// on its left and right, between the edges `a` and `b`.
    pub fn write_profile_csv<W: Write>(&self, mut w: W, t: f64, a: f64, b: f64) -> Result<()> {
        let (xs, states) = self.profile_at(t);
        writeln!(w, "x,rho,u")?;
        writeln!(w, "{},{},{}", a, states[0].rho, states[0].u)?;
        for (k, &x) in xs.iter().enumerate() {
            writeln!(w, "{},{},{}", x, states[k].rho, states[k].u)?;
            writeln!(w, "{},{},{}", x, states[k + 1].rho, states[k + 1].u)?;
        }
        let last = states.last().expect("non-empty");
        writeln!(w, "{},{},{}", b, last.rho, last.u)?;
        Ok(())
    }

    pub fn write_glimm_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,Lminus,Lplus,Q,F")?;
        for g in &self.snapshots {
            writeln!(w, "{},{},{},{},{}", g.t, g.l_minus, g.l_plus, g.q, g.f)?;
        }
        Ok(())
    }
}

fn integrate_profile(xs: &[f64], states: &[State], a: f64, b: f64, q: impl Fn(&State) -> f64) -> f64 {
    let mut total = 0.0;
    let mut lo = a;
    for (k, st) in states.iter().enumerate() {
        let hi = xs.get(k).copied().unwrap_or(b).clamp(a, b);
        total += q(st) * (hi - lo).max(0.0);
        lo = lo.max(hi);
    }
    total
}

/// Residuals of
/// `int rho(x,T) - int rho(x,0) + int_0^T [rho u](b) - [rho u](a) dt`
/// and the momentum analogue over `bx`.
///
/// Fails with [`Error::Box`] if a front touches the box edges before `T`,
/// since the edge fluxes would then no longer be constant.
pub fn conservation_residual(traj: &Trajectory, bx: &ConservationBox, p: &GasParams) -> Result<ConservationResidual> {
    if !(bx.a < bx.b && bx.t > 0.0 && bx.t <= traj.t_end()) {
        return Err(Error::Box(format!("invalid box [{}, {}] x [0, {}]", bx.a, bx.b, bx.t)));
    }
    for s in &traj.segments {
        if s.front.t0 > bx.t {
            continue;
        }
        let t1 = s.t_death.min(bx.t);
        for x in [s.front.x0, s.front.x_at(t1)] {
            if !(x > bx.a && x < bx.b) {
                return Err(Error::Box(format!("front {} reaches x = {x} inside [0, {}]", s.front.id, bx.t)));
            }
        }
    }
    let (x0, s0) = traj.profile_at(0.0);
    let (x1, s1) = traj.profile_at(bx.t);
    let (l, r) = (traj.initial.far_left, traj.initial.far_right);
    let mass = |st: &State| st.rho;
    let mom = |st: &State| st.momentum();
    let eq1 = integrate_profile(&x1, &s1, bx.a, bx.b, mass) - integrate_profile(&x0, &s0, bx.a, bx.b, mass)
        + bx.t * (r.flux(p)[0] - l.flux(p)[0]);
    let eq2 = integrate_profile(&x1, &s1, bx.a, bx.b, mom) - integrate_profile(&x0, &s0, bx.a, bx.b, mom)
        + bx.t * (r.flux(p)[1] - l.flux(p)[1]);
    Ok(ConservationResidual { bx: *bx, eq1: eq1.abs(), eq2: eq2.abs() })
}

/// Same residuals summed front by front: each segment contributes its
/// lifetime times the Rankine-Hugoniot defect `c [U] - [F(U)]`.
pub fn conservation_residual_by_segments(traj: &Trajectory, t: f64, p: &GasParams) -> (f64, f64) {
    let (mut e1, mut e2) = (0.0, 0.0);
    for s in &traj.segments {
        let dt = (s.t_death.min(t) - s.front.t0).max(0.0);
        if dt == 0.0 {
            continue;
        }
        let f = &s.front;
        let (ul, ur) = (f.left.conserved(), f.right.conserved());
        let (fl, fr) = (f.left.flux(p), f.right.flux(p));
        e1 += dt * (f.speed * (ul[0] - ur[0]) - (fl[0] - fr[0]));
        e2 += dt * (f.speed * (ul[1] - ur[1]) - (fl[1] - fr[1]));
    }
    (e1.abs(), e2.abs())
}

/// Outermost fronts of the final configuration with the state of largest
/// density between them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticState {
    pub peak: State,
    pub c1: f64,
    pub c2: f64,
    pub first_kind: WaveKind,
    pub last_kind: WaveKind,
}

impl Trajectory {
    pub fn asymptotic_state(&self) -> Option<AsymptoticState> {
        let fl = &self.final_list;
        let (first, last) = (fl.fronts.first()?, fl.fronts.last()?);
        let peak = fl.states().into_iter().fold(fl.far_left, |best, s| if s.rho > best.rho { s } else { best });
        Some(AsymptoticState { peak, c1: first.speed, c2: last.speed, first_kind: first.kind, last_kind: last.kind })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1(eps: f64) -> (PiecewiseData, GasParams) {
        let p = GasParams::new_inclusive(eps).unwrap();
        let d = PiecewiseData::three_state(State::new(1.0, 1.0), State::new(1.2, 0.8), State::new(1.14286, 0.7), 0.0, 2.0)
            .unwrap();
        (d, p)
    }

    fn quick(t_end: f64) -> TrackConfig {
        TrackConfig { t_end, cstar_samples: 400, ..Default::default() }
    }

    #[test]
    fn first_example_converges_to_outer_riemann_solution() {
        let (d, p) = ex1(0.5);
        let traj = run(&d, &p, &quick(15000.0)).unwrap();
        let a = traj.asymptotic_state().unwrap();
        let sol = solve_riemann(&d.states[0], &d.states[2], &p).unwrap();
        assert!((a.peak.rho - sol.middle.rho).abs() < 1e-7, "{:?} vs {:?}", a.peak, sol.middle);
        assert!((a.peak.u - sol.middle.u).abs() < 1e-7);
        assert!((a.peak.rho - 1.299787).abs() < 5e-6 && (a.peak.u - 0.800616).abs() < 5e-6);
        assert!((a.c1 - 0.135530).abs() < 5e-6 && (a.c2 - 1.533374).abs() < 5e-6);
    }

    #[test]
    fn both_residual_forms_agree() {
        let (d, p) = ex1(0.1);
        let traj = run(&d, &p, &quick(500.0)).unwrap();
        let bx = traj.default_box();
        let r = conservation_residual(&traj, &bx, &p).unwrap();
        let (e1, e2) = conservation_residual_by_segments(&traj, bx.t, &p);
        let scale = (bx.b - bx.a) * 2.0;
        assert!((r.eq1 - e1).abs() < 1e-10 * scale, "{} vs {e1}", r.eq1);
        assert!((r.eq2 - e2).abs() < 1e-10 * scale, "{} vs {e2}", r.eq2);
    }

    #[test]
    fn box_too_small_is_rejected() {
        let (d, p) = ex1(0.1);
        let traj = run(&d, &p, &quick(50.0)).unwrap();
        let bx = ConservationBox { a: -1.0, b: 3.0, t: 50.0 };
        assert!(matches!(conservation_residual(&traj, &bx, &p), Err(Error::Box(_))));
    }

    #[test]
    fn front_cap_is_enforced() {
        let p = GasParams::new(0.1).unwrap();
        let d = PiecewiseData::new(vec![0.0, 1.0], vec![State::new(1.0, 0.0), State::new(1.0, 1.0), State::new(1.0, 0.0)])
            .unwrap();
        let cfg = TrackConfig { front_cap: 3, delta_r: 0.01, ..quick(10.0) };
        assert!(matches!(run(&d, &p, &cfg), Err(Error::FrontCapExceeded { .. })));
    }

    #[test]
    fn states_stay_consistent() {
        let (d, p) = ex1(0.01);
        let traj = run(&d, &p, &quick(3000.0)).unwrap();
        traj.final_list.validate().unwrap();
        assert!(traj.report.collisions > 0);
        let (_, states) = traj.profile_at(traj.t_end());
        assert_eq!(states, traj.final_list.states());
    }
}
