//! Hamiltonian flow integration.
//!
//! Dormand-Prince RK5(4) with FSAL, PI-free step control, and fourth-order
//! dense output, so a trajectory can be sampled at any intermediate time
//! without re-integrating. Tolerances default to 1e-10; the disk dynamics
//! here are smooth away from the (measure-zero) cutoff shells, and the
//! integrator's own error estimate governs step size through them. Steps are
//! additionally capped (see [`IntegrateParams::max_step`]) so that fields
//! which are identically zero along part of a trajectory cannot grow the
//! step far enough to jump over a later active time window.
//!
//! A trajectory leaving the closed unit disk is an error: compactly supported
//! Hamiltonians cannot do that, so it always indicates a bad input field.

use crate::hamiltonian::{vector_field, EvalError, Expr};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum FlowError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("exceeded {max} integration steps")]
    MaxStepsExceeded { max: usize },
    #[error("trajectory left the unit disk at t = {t}: ({x}, {y})")]
    LeftDomain { t: f64, x: f64, y: f64 },
    #[error("bad flow parameters: {0}")]
    BadParams(String),
    #[error("csv export failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrateParams {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Forced first step; `None` picks one from the field's local scale.
    pub initial_step: Option<f64>,
    /// Hard cap on the step size; `None` caps at a sixteenth of the interval.
    ///
    /// Time-gated fields are identically zero along long stretches of some
    /// trajectories and switch on abruptly. Zero-error steps grow the step
    /// geometrically, and a step spanning a whole quiet-then-active interval
    /// can place the active region under the one stage that neither the
    /// fifth-order weights nor the error estimator look at, silently skipping
    /// it. A cap below the gate width keeps every burst inside the stages
    /// that are actually weighted.
    pub max_step: Option<f64>,
}

impl Default for IntegrateParams {
    fn default() -> Self {
        IntegrateParams {
            rtol: 1e-10,
            atol: 1e-10,
            max_steps: 200_000,
            initial_step: None,
            max_step: None,
        }
    }
}

/// One accepted step's dense-output polynomial (per coordinate).
#[derive(Debug, Clone, Copy)]
struct DenseSeg {
    t: f64,
    h: f64,
    r: [[f64; 2]; 5],
}

impl DenseSeg {
    fn eval(&self, t: f64) -> (f64, f64) {
        let th = (t - self.t) / self.h;
        let th1 = 1.0 - th;
        let at = |c: usize| {
            let r = &self.r;
            r[0][c] + th * (r[1][c] + th1 * (r[2][c] + th * (r[3][c] + th1 * r[4][c])))
        };
        (at(0), at(1))
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub t0: f64,
    pub t1: f64,
    start: (f64, f64),
    end: (f64, f64),
    segs: Vec<DenseSeg>,
    pub naccept: usize,
    pub nreject: usize,
    pub nfev: usize,
}

impl Trajectory {
    pub fn start(&self) -> (f64, f64) {
        self.start
    }
    pub fn end(&self) -> (f64, f64) {
        self.end
    }

    /// Position at time `t`, clamped into the integrated range.
    pub fn sample(&self, t: f64) -> (f64, f64) {
        if t <= self.t0 || self.segs.is_empty() {
            return self.start;
        }
        if t >= self.t1 {
            return self.end;
        }
        let i = self
            .segs
            .partition_point(|s| s.t + s.h < t)
            .min(self.segs.len() - 1);
        self.segs[i].eval(t)
    }
}

// Dormand-Prince tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Integrates `X_H` from `start` over `[t0, t1]`, `t1 > t0`.
pub fn integrate(
    e: &Expr,
    start: (f64, f64),
    t0: f64,
    t1: f64,
    params: &IntegrateParams,
) -> Result<Trajectory, FlowError> {
    if !(t1 > t0) {
        return Err(FlowError::BadParams(format!(
            "need t1 > t0, got [{t0}, {t1}]"
        )));
    }
    if params.rtol <= 0.0 || params.atol <= 0.0 {
        return Err(FlowError::BadParams("tolerances must be positive".into()));
    }
    let hmax = match params.max_step {
        Some(m) if m > 0.0 && m.is_finite() => m.min(t1 - t0),
        Some(m) => return Err(FlowError::BadParams(format!("max step {m} must be > 0"))),
        None => (t1 - t0) / 16.0,
    };
    let mut nfev = 0usize;
    let f = |t: f64, y: (f64, f64), n: &mut usize| -> Result<(f64, f64), FlowError> {
        *n += 1;
        Ok(vector_field(e, t, y.0, y.1)?)
    };

    let mut t = t0;
    let mut y = start;
    let mut k1 = f(t, y, &mut nfev)?;

    let sc = |y: (f64, f64), yn: (f64, f64), c: usize| {
        let yy = if c == 0 {
            y.0.abs().max(yn.0.abs())
        } else {
            y.1.abs().max(yn.1.abs())
        };
        params.atol + params.rtol * yy
    };

    let mut h = match params.initial_step {
        Some(h0) if h0 > 0.0 => h0.min(hmax),
        Some(h0) => {
            return Err(FlowError::BadParams(format!(
                "initial step {h0} must be > 0"
            )))
        }
        None => {
            let d0 = ((y.0 / sc(y, y, 0)).powi(2) + (y.1 / sc(y, y, 1)).powi(2)).sqrt();
            let d1 = ((k1.0 / sc(y, y, 0)).powi(2) + (k1.1 / sc(y, y, 1)).powi(2)).sqrt();
            let h0 = if d0 < 1e-5 || d1 < 1e-5 {
                1e-6
            } else {
                0.01 * d0 / d1
            };
            let ye = (y.0 + h0 * k1.0, y.1 + h0 * k1.1);
            let f1 = f(t + h0, ye, &mut nfev)?;
            let d2 = (((f1.0 - k1.0) / sc(y, y, 0)).powi(2)
                + ((f1.1 - k1.1) / sc(y, y, 1)).powi(2))
            .sqrt()
                / h0;
            let h1 = if d1.max(d2) <= 1e-15 {
                (h0 * 1e-3).max(1e-6)
            } else {
                (0.01 / d1.max(d2)).powf(0.2)
            };
            (100.0 * h0).min(h1).min(hmax)
        }
    };

    let mut segs = Vec::new();
    let mut naccept = 0usize;
    let mut nreject = 0usize;
    let mut facmax = 10.0f64;

    loop {
        if naccept + nreject >= params.max_steps {
            return Err(FlowError::MaxStepsExceeded {
                max: params.max_steps,
            });
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(FlowError::StepSizeUnderflow { t });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }

        let mut k = [[0.0f64; 2]; 7];
        k[0] = [k1.0, k1.1];
        for s in 1..7 {
            let mut acc = [0.0f64; 2];
            for (j, kj) in k.iter().enumerate().take(s) {
                acc[0] += A[s - 1][j] * kj[0];
                acc[1] += A[s - 1][j] * kj[1];
            }
            let ys = (y.0 + h * acc[0], y.1 + h * acc[1]);
            let ks = f(t + C[s - 1] * h, ys, &mut nfev)?;
            k[s] = [ks.0, ks.1];
        }
        // Stage 7 used the 5th-order weights, so its argument is the proposed
        // endpoint (FSAL).
        let ynew = (
            y.0 + h * (0..6).map(|j| A[5][j] * k[j][0]).sum::<f64>(),
            y.1 + h * (0..6).map(|j| A[5][j] * k[j][1]).sum::<f64>(),
        );

        let mut err = 0.0f64;
        for c in 0..2 {
            let e_c: f64 = (0..7).map(|j| E[j] * k[j][c]).sum();
            let w = h * e_c / sc(y, ynew, c);
            err += w * w;
        }
        err = (err / 2.0).sqrt();

        if !err.is_finite() || !ynew.0.is_finite() || !ynew.1.is_finite() {
            nreject += 1;
            h *= 0.5;
            facmax = 1.0;
            continue;
        }

        if err <= 1.0 {
            if ynew.0 * ynew.0 + ynew.1 * ynew.1 >= 1.0 {
                return Err(FlowError::LeftDomain {
                    t: t + h,
                    x: ynew.0,
                    y: ynew.1,
                });
            }
            let ydiff = (ynew.0 - y.0, ynew.1 - y.1);
            let bspl = (h * k[0][0] - ydiff.0, h * k[0][1] - ydiff.1);
            let mut r5 = [0.0f64; 2];
            for c in 0..2 {
                r5[c] = h * (0..7).map(|j| D[j] * k[j][c]).sum::<f64>();
            }
            segs.push(DenseSeg {
                t,
                h,
                r: [
                    [y.0, y.1],
                    [ydiff.0, ydiff.1],
                    [bspl.0, bspl.1],
                    [
                        ydiff.0 - h * k[6][0] - bspl.0,
                        ydiff.1 - h * k[6][1] - bspl.1,
                    ],
                    r5,
                ],
            });
            naccept += 1;
            t += h;
            y = ynew;
            k1 = (k[6][0], k[6][1]);
            if last {
                return Ok(Trajectory {
                    t0,
                    t1,
                    start,
                    end: y,
                    segs,
                    naccept,
                    nreject,
                    nfev,
                });
            }
            let fac = (0.9 * err.powf(-0.2)).clamp(0.2, facmax);
            h = (h * fac).min(hmax);
            facmax = 10.0;
        } else {
            nreject += 1;
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            facmax = 1.0;
        }
    }
}

/// Time-1 flow applied to a batch of points (parallel).
pub fn flow_map(
    e: &Expr,
    points: &[(f64, f64)],
    params: &IntegrateParams,
) -> Result<Vec<(f64, f64)>, FlowError> {
    points
        .par_iter()
        .map(|&p| integrate(e, p, 0.0, 1.0, params).map(|tr| tr.end()))
        .collect()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CirclePreservation {
    pub source: usize,
    /// Circle whose boundary the images are closest to.
    pub target: usize,
    /// All boundary samples agreed on the target circle.
    pub unanimous: bool,
    pub max_residual: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PreservationReport {
    pub preserved: bool,
    /// `permutation[i]` is where circle `i` goes; meaningful when preserved.
    pub permutation: Vec<usize>,
    pub tol: f64,
    pub max_residual: f64,
    pub circles: Vec<CirclePreservation>,
}

/// Flows boundary samples of every link circle to time 1 and checks that each
/// circle lands on a circle of the link (setwise), within `tol` of its
/// boundary. The induced assignment must also be a permutation.
pub fn link_preservation(
    e: &Expr,
    layout: &crate::geometry::LinkLayout,
    samples: usize,
    tol: f64,
    params: &IntegrateParams,
) -> Result<PreservationReport, FlowError> {
    use crate::rational::rat_to_f64;
    if samples < 3 {
        return Err(FlowError::BadParams(
            "need at least 3 samples per circle".into(),
        ));
    }
    let geo: Vec<(f64, f64, f64)> = layout
        .circles
        .iter()
        .map(|c| {
            (
                rat_to_f64(&c.center.0),
                rat_to_f64(&c.center.1),
                rat_to_f64(&c.radius),
            )
        })
        .collect();

    let mut circles = Vec::with_capacity(layout.k);
    for (src, &(cx, cy, r)) in geo.iter().enumerate() {
        let pts: Vec<(f64, f64)> = (0..samples)
            .map(|j| {
                let th = j as f64 * std::f64::consts::TAU / samples as f64;
                (cx + r * th.cos(), cy + r * th.sin())
            })
            .collect();
        let images = flow_map(e, &pts, params)?;
        let mut target = 0usize;
        let mut unanimous = true;
        let mut max_residual = 0.0f64;
        for (j, &(ix, iy)) in images.iter().enumerate() {
            let (mut best, mut best_res) = (0usize, f64::INFINITY);
            for (ci, &(ox, oy, orad)) in geo.iter().enumerate() {
                let d = ((ix - ox).powi(2) + (iy - oy).powi(2)).sqrt();
                let res = (d - orad).abs();
                if res < best_res {
                    best = ci;
                    best_res = res;
                }
            }
            if j == 0 {
                target = best;
            } else if best != target {
                unanimous = false;
            }
            max_residual = max_residual.max(best_res);
        }
        circles.push(CirclePreservation {
            source: src,
            target,
            unanimous,
            max_residual,
        });
    }

    let permutation: Vec<usize> = circles.iter().map(|c| c.target).collect();
    let mut seen = vec![false; layout.k];
    let mut bijective = true;
    for &p in &permutation {
        if seen[p] {
            bijective = false;
        }
        seen[p] = true;
    }
    let max_residual = circles.iter().fold(0.0f64, |m, c| m.max(c.max_residual));
    let preserved = bijective && circles.iter().all(|c| c.unanimous) && max_residual < tol;
    Ok(PreservationReport {
        preserved,
        permutation,
        tol,
        max_residual,
        circles,
    })
}

/// Smallest distance between any two strand positions over a uniform time
/// sweep; the braid reader needs this strictly positive.
pub fn strand_separation(trajs: &[Trajectory], sweep: usize) -> f64 {
    if trajs.len() < 2 || sweep == 0 {
        return f64::INFINITY;
    }
    let (t0, t1) = (trajs[0].t0, trajs[0].t1);
    let mut min = f64::INFINITY;
    for i in 0..=sweep {
        let t = t0 + (t1 - t0) * i as f64 / sweep as f64;
        for a in 0..trajs.len() {
            let pa = trajs[a].sample(t);
            for tb in trajs.iter().skip(a + 1) {
                let pb = tb.sample(t);
                min = min.min(((pa.0 - pb.0).powi(2) + (pa.1 - pb.1).powi(2)).sqrt());
            }
        }
    }
    min
}

/// Writes `strand,t,x,y` rows sampled uniformly from each trajectory.
pub fn export_csv<W: std::io::Write>(
    mut w: W,
    trajs: &[Trajectory],
    rows_per_strand: usize,
) -> Result<(), FlowError> {
    writeln!(w, "strand,t,x,y")?;
    for (s, tr) in trajs.iter().enumerate() {
        for i in 0..=rows_per_strand {
            let t = tr.t0 + (tr.t1 - tr.t0) * i as f64 / rows_per_strand as f64;
            let (x, y) = tr.sample(t);
            writeln!(w, "{s},{t},{x},{y}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{parse, rotation, swap_pair, Expr};
    use std::f64::consts::PI;

    fn dp() -> IntegrateParams {
        IntegrateParams::default()
    }

    #[test]
    fn rigid_rotation_endpoint_and_dense_output() {
        let rot = rotation((0.0, 0.0), PI, 0.5, 0.8).unwrap();
        let tr = integrate(&rot, (0.3, 0.0), 0.0, 1.0, &dp()).unwrap();
        let (x, y) = tr.end();
        assert!((x + 0.3).abs() < 1e-8 && y.abs() < 1e-8, "({x}, {y})");
        // Quarter in, the point should sit at angle pi/4.
        let (mx, my) = tr.sample(0.25);
        let want = (0.3 * (PI / 4.0).cos(), 0.3 * (PI / 4.0).sin());
        assert!(
            (mx - want.0).abs() < 1e-6 && (my - want.1).abs() < 1e-6,
            "({mx}, {my})"
        );
        // Clamping.
        assert_eq!(tr.sample(-1.0), tr.start());
        assert_eq!(tr.sample(2.0), tr.end());
    }

    #[test]
    fn harmonic_oscillator_matches_closed_form() {
        // H = (x^2+y^2)/2 gives X_H = (y, -x): clockwise unit rotation.
        let e = parse("(x^2 + y^2)/2").unwrap();
        let tr = integrate(&e, (0.5, 0.2), 0.0, 1.0, &dp()).unwrap();
        let (c, s) = (1.0f64.cos(), 1.0f64.sin());
        let want = (0.5 * c + 0.2 * s, -0.5 * s + 0.2 * c);
        let got = tr.end();
        assert!(
            (got.0 - want.0).abs() < 1e-9 && (got.1 - want.1).abs() < 1e-9,
            "{got:?}"
        );
        // Dense output against the closed form at many times.
        for i in 0..=40 {
            let t = i as f64 / 40.0;
            let (c, s) = (t.cos(), t.sin());
            let want = (0.5 * c + 0.2 * s, -0.5 * s + 0.2 * c);
            let got = tr.sample(t);
            assert!(
                (got.0 - want.0).abs() < 1e-7 && (got.1 - want.1).abs() < 1e-7,
                "t={t}: {got:?} vs {want:?}"
            );
        }
    }

    #[test]
    fn autonomous_energy_is_conserved() {
        let e = parse("2*bump(x^2 + y^2, 1/4, 3/5)").unwrap();
        let tr = integrate(&e, (0.52, 0.1), 0.0, 1.0, &dp()).unwrap();
        let h0 = crate::hamiltonian::eval(&e, 0.0, 0.52, 0.1).unwrap();
        for i in 0..=64 {
            let t = i as f64 / 64.0;
            let (x, y) = tr.sample(t);
            let h = crate::hamiltonian::eval(&e, t, x, y).unwrap();
            assert!((h - h0).abs() < 1e-8, "t={t}: {h} vs {h0}");
        }
    }

    #[test]
    fn leaving_the_disk_is_detected() {
        // X_H = (0, -1) everywhere: marches straight out the bottom.
        let e = parse("x").unwrap();
        match integrate(&e, (0.0, -0.5), 0.0, 1.0, &dp()) {
            Err(FlowError::LeftDomain { y, .. }) => assert!(y <= -1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_params_rejected() {
        let e = Expr::zero();
        assert!(matches!(
            integrate(&e, (0.0, 0.0), 0.0, 0.0, &dp()),
            Err(FlowError::BadParams(_))
        ));
        let mut p = dp();
        p.rtol = 0.0;
        assert!(matches!(
            integrate(&e, (0.0, 0.0), 0.0, 1.0, &p),
            Err(FlowError::BadParams(_))
        ));
        let mut p = dp();
        p.max_steps = 3;
        let wavy = parse("sin(40*t)*bump(x^2+y^2, 1/4, 1/2)").unwrap();
        assert!(matches!(
            integrate(&wavy, (0.3, 0.0), 0.0, 1.0, &p),
            Err(FlowError::MaxStepsExceeded { max: 3 })
        ));
    }

    #[test]
    fn zero_field_is_identity() {
        let tr = integrate(&Expr::zero(), (0.3, -0.4), 0.0, 1.0, &dp()).unwrap();
        assert_eq!(tr.end(), (0.3, -0.4));
        assert_eq!(tr.sample(0.37), (0.3, -0.4));
    }

    #[test]
    fn late_burst_after_a_quiet_stretch_is_not_stepped_over() {
        // A half turn time-compressed into (1/2, 1) acting on a point that
        // sits 0.005 inside the rigid zone and 0.025 inside the support
        // edge; the field on this trajectory is identically zero over the
        // whole first half. Zero-error steps grow geometrically there, and
        // the final clamped step can then span the entire burst: its only
        // stage inside the burst is the one both the solution weights and
        // the error weights ignore, and that stage's large value pushes
        // every weighted stage clean out of the support, so the step is
        // accepted with zero estimated error and the burst never acts. The
        // step cap keeps enough stages inside the burst to catch it.
        let rot = rotation((0.0, 0.0), PI, 0.75, 0.77).unwrap();
        let gate = (Expr::constant(4.0) * Expr::T - Expr::constant(3.0))
            .squared()
            .bump_of(0.998f64.powi(2), 0.999f64.powi(2));
        let speed = Expr::constant(4.0) * (Expr::constant(2.0 * PI) * Expr::T).sin_of().squared();
        let h = gate * speed * rot;
        let tr = integrate(&h, (0.745, 0.0), 0.0, 1.0, &dp()).unwrap();
        let quiet = tr.sample(0.45);
        assert!(
            (quiet.0 - 0.745).abs() < 1e-9 && quiet.1.abs() < 1e-9,
            "moved during the quiet stretch: {quiet:?}"
        );
        let (x, y) = tr.end();
        assert!((x + 0.745).abs() < 1e-6 && y.abs() < 1e-6, "({x}, {y})");
    }

    #[test]
    fn swap_preserves_two_component_link() {
        let layout = crate::geometry::standard_layout(2, &crate::rational::rat(0, 1)).unwrap();
        let sw = swap_pair(&layout, 0, 1).unwrap();
        let rep = link_preservation(&sw.expr, &layout, 12, 1e-6, &dp()).unwrap();
        assert!(rep.preserved, "{rep:?}");
        assert_eq!(rep.permutation, vec![1, 0]);
        assert!(rep.max_residual < 1e-8, "{}", rep.max_residual);

        let idrep = link_preservation(&Expr::zero(), &layout, 8, 1e-6, &dp()).unwrap();
        assert!(idrep.preserved);
        assert_eq!(idrep.permutation, vec![0, 1]);
    }

    #[test]
    fn non_preserving_field_is_flagged() {
        let layout = crate::geometry::standard_layout(2, &crate::rational::rat(0, 1)).unwrap();
        // Global rotation by pi/7 carries both circles off the link.
        let rot = rotation((0.0, 0.0), PI / 7.0, 0.8, 0.9).unwrap();
        let rep = link_preservation(&rot, &layout, 12, 1e-6, &dp()).unwrap();
        assert!(!rep.preserved);
        assert!(rep.max_residual > 1e-3, "{}", rep.max_residual);
    }

    #[test]
    fn separation_of_rigidly_rotating_pair() {
        let rot = rotation((0.0, 0.0), PI, 0.5, 0.8).unwrap();
        let trs: Vec<Trajectory> = [(0.2, 0.0), (-0.2, 0.0)]
            .iter()
            .map(|&p| integrate(&rot, p, 0.0, 1.0, &dp()).unwrap())
            .collect();
        let sep = strand_separation(&trs, 256);
        assert!((sep - 0.4).abs() < 1e-7, "{sep}");
    }

    #[test]
    fn csv_layout() {
        let tr = integrate(&Expr::zero(), (0.1, 0.2), 0.0, 1.0, &dp()).unwrap();
        let mut buf = Vec::new();
        export_csv(&mut buf, &[tr], 4).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "strand,t,x,y");
        assert_eq!(lines.len(), 1 + 5);
        assert!(lines[1].starts_with("0,0,0.1,0.2"));
    }
}
