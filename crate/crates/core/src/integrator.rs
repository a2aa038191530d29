//! Five-stage, fourth-order strong-stability-preserving Runge-Kutta.
//!
//! The scheme is stored in Shu-Osher form: every stage is a convex
//! combination of earlier stages and forward-Euler updates of them,
//!
//! ```text
//! u(0) = u^n
//! u(s) = sum_k alpha[s-1][k] u(k) + dt * sum_k beta[s-1][k] F(u(k)),  s = 1..5
//! u^{n+1} = u(5)
//! ```
//!
//! Dirichlet data are re-imposed on each stage at that stage's own time.

use crate::error::{Error, Result};
use crate::semidiscrete::{RhsField, VelocityField};

pub const STAGES: usize = 5;

/// State vector that the integrator can combine linearly.
pub trait RkState: Clone {
    type Rate;

    fn scale(&mut self, a: f64);
    fn add_state(&mut self, a: f64, other: &Self);
    fn add_rate(&mut self, a: f64, rate: &Self::Rate);
    fn all_finite(&self) -> bool;
    fn set_time(&mut self, _t: f64) {}
}

impl RkState for f64 {
    type Rate = f64;

    fn scale(&mut self, a: f64) {
        *self *= a;
    }

    fn add_state(&mut self, a: f64, other: &Self) {
        *self += a * other;
    }

    fn add_rate(&mut self, a: f64, rate: &f64) {
        *self += a * rate;
    }

    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl RkState for VelocityField {
    type Rate = RhsField;

    fn scale(&mut self, a: f64) {
        self.u *= a;
        self.v *= a;
    }

    fn add_state(&mut self, a: f64, other: &Self) {
        self.u.scaled_add(a, &other.u);
        self.v.scaled_add(a, &other.v);
    }

    fn add_rate(&mut self, a: f64, rate: &RhsField) {
        self.u.scaled_add(a, &rate.du);
        self.v.scaled_add(a, &rate.dv);
    }

    fn all_finite(&self) -> bool {
        self.is_finite()
    }

    fn set_time(&mut self, t: f64) {
        self.t = t;
    }
}

/// Shu-Osher coefficients plus the time abscissa of each stage.
#[derive(Debug, Clone, PartialEq)]
pub struct SspRk54Tableau {
    pub alpha: [[f64; STAGES]; STAGES],
    pub beta: [[f64; STAGES]; STAGES],
    /// `c[k]` is the time offset (in units of dt) of stage state `u(k)`.
    pub c: [f64; STAGES],
}

impl SspRk54Tableau {
    /// The optimal SSPRK(5,4) scheme of Spiteri and Ruuth.
    pub fn optimal() -> Self {
        let mut alpha = [[0.0; STAGES]; STAGES];
        let mut beta = [[0.0; STAGES]; STAGES];
        alpha[0][0] = 1.0;
        beta[0][0] = 0.391_752_226_571_890;
        alpha[1][0] = 0.444_370_493_651_235;
        alpha[1][1] = 0.555_629_506_348_765;
        beta[1][1] = 0.368_410_593_050_371;
        alpha[2][0] = 0.620_101_851_488_403;
        alpha[2][2] = 0.379_898_148_511_597;
        beta[2][2] = 0.251_891_774_271_694;
        alpha[3][0] = 0.178_079_954_393_132;
        alpha[3][3] = 0.821_920_045_606_868;
        beta[3][3] = 0.544_974_750_228_521;
        alpha[4][2] = 0.517_231_671_970_585;
        alpha[4][3] = 0.096_059_710_526_147;
        beta[4][3] = 0.063_692_468_666_290;
        // published as 0.386708617503269; taking the complement keeps the
        // convex weights of the last stage summing to one
        alpha[4][4] = 1.0 - alpha[4][2] - alpha[4][3];
        beta[4][4] = 0.226_007_483_236_906;

        // Abscissae follow from applying the scheme to u' = 1.
        let mut c = [0.0; STAGES];
        for s in 0..STAGES - 1 {
            c[s + 1] = (0..=s).map(|k| alpha[s][k] * c[k] + beta[s][k]).sum();
        }
        Self { alpha, beta, c }
    }

    /// Time offset of the state produced by the final combination; 1 for a
    /// consistent scheme.
    pub fn final_abscissa(&self) -> f64 {
        let s = STAGES - 1;
        (0..STAGES)
            .map(|k| self.alpha[s][k] * self.c[k] + self.beta[s][k])
            .sum()
    }

    /// Advances `state` from `t` to `t + dt`.
    ///
    /// `rhs` evaluates the time derivative at a stage state and time; `bc`
    /// re-imposes boundary data on a freshly combined stage state.
    pub fn step<S, R, B>(&self, state: &S, t: f64, dt: f64, rhs: &mut R, bc: &mut B) -> Result<S>
    where
        S: RkState,
        R: FnMut(&S, f64) -> Result<S::Rate>,
        B: FnMut(&mut S, f64),
    {
        let mut stages: Vec<S> = Vec::with_capacity(STAGES + 1);
        let mut rates: Vec<S::Rate> = Vec::with_capacity(STAGES);
        stages.push(state.clone());
        for s in 0..STAGES {
            rates.push(rhs(&stages[s], t + self.c[s] * dt)?);
            let first = (0..=s).find(|&k| self.alpha[s][k] != 0.0).unwrap_or(0);
            let mut next = stages[first].clone();
            next.scale(self.alpha[s][first]);
            for k in first + 1..=s {
                if self.alpha[s][k] != 0.0 {
                    next.add_state(self.alpha[s][k], &stages[k]);
                }
            }
            for k in 0..=s {
                if self.beta[s][k] != 0.0 {
                    next.add_rate(dt * self.beta[s][k], &rates[k]);
                }
            }
            let stage_time = if s + 1 < STAGES {
                t + self.c[s + 1] * dt
            } else {
                t + dt
            };
            bc(&mut next, stage_time);
            next.set_time(stage_time);
            if !next.all_finite() {
                return Err(Error::BlowUp {
                    stage: s + 1,
                    time: stage_time,
                });
            }
            stages.push(next);
        }
        Ok(stages.pop().expect("five stages were pushed"))
    }
}

impl Default for SspRk54Tableau {
    fn default() -> Self {
        Self::optimal()
    }
}

/// Fixed-step time loop settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeLoopConfig {
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
}

impl TimeLoopConfig {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self {
            dt,
            t_end,
            snapshot_times: Vec::new(),
        }
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    /// Number of steps to reach `t_end`, which must be a whole multiple of
    /// `dt` to within `1e-9 dt`.
    pub fn step_count(&self) -> Result<usize> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config(format!(
                "t_end must be non-negative, got {}",
                self.t_end
            )));
        }
        aligned_steps(self.t_end, self.dt, "t_end")
    }

    /// Step indices at which snapshots are taken, sorted and deduplicated.
    pub fn snapshot_steps(&self) -> Result<Vec<usize>> {
        let total = self.step_count()?;
        let mut steps = Vec::with_capacity(self.snapshot_times.len());
        for &ts in &self.snapshot_times {
            if !(0.0..=self.t_end).contains(&ts) {
                return Err(Error::Config(format!(
                    "snapshot time {ts} outside [0, {}]",
                    self.t_end
                )));
            }
            let k = aligned_steps(ts, self.dt, "snapshot time")?;
            steps.push(k.min(total));
        }
        steps.sort_unstable();
        steps.dedup();
        Ok(steps)
    }
}

fn aligned_steps(t: f64, dt: f64, what: &str) -> Result<usize> {
    let ratio = t / dt;
    let k = ratio.round();
    if (ratio - k).abs() > 1e-9 || k > u32::MAX as f64 {
        return Err(Error::Config(format!(
            "{what} {t} is not a whole multiple of dt = {dt}"
        )));
    }
    Ok(k as usize)
}

/// Result of [`integrate`].
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub final_state: S,
    pub snapshots: Vec<(f64, S)>,
    pub steps: usize,
}

/// Runs the SSP-RK54 scheme from `t = 0` to `cfg.t_end`.
///
/// Boundary data are applied to the initial state at `t = 0`. `observer`
/// sees every completed step as `(step index, time, state)`; times are
/// always reported as `k * dt`.
pub fn integrate<S, R, B, O>(
    initial: S,
    cfg: &TimeLoopConfig,
    mut rhs: R,
    mut bc: B,
    mut observer: O,
) -> Result<Trajectory<S>>
where
    S: RkState,
    R: FnMut(&S, f64) -> Result<S::Rate>,
    B: FnMut(&mut S, f64),
    O: FnMut(usize, f64, &S),
{
    let steps = cfg.step_count()?;
    let snap_steps = cfg.snapshot_steps()?;
    let tableau = SspRk54Tableau::optimal();
    let dt = cfg.dt;

    let mut state = initial;
    bc(&mut state, 0.0);
    state.set_time(0.0);
    let mut snapshots = Vec::with_capacity(snap_steps.len());
    let mut next_snap = snap_steps.iter().peekable();
    if next_snap.peek() == Some(&&0) {
        snapshots.push((0.0, state.clone()));
        next_snap.next();
    }
    for k in 0..steps {
        let t = k as f64 * dt;
        state = tableau.step(&state, t, dt, &mut rhs, &mut bc)?;
        let t_new = (k + 1) as f64 * dt;
        state.set_time(t_new);
        observer(k + 1, t_new, &state);
        if next_snap.peek() == Some(&&(k + 1)) {
            snapshots.push((t_new, state.clone()));
            next_snap.next();
        }
    }
    Ok(Trajectory {
        final_state: state,
        snapshots,
        steps,
    })
}
