//! Reading a braid word off strand trajectories.
//!
//! One marked point per link circle (its rightmost point) flows for unit
//! time; each endpoint lands on the image circle and is closed up along that
//! circle back to its marked point through the shorter boundary arc. The
//! choice of arc does not matter for the braid type: the potential difference
//! is a loop around a single link circle, and no other strand is ever inside
//! it. The closed strands are then scanned left to right: every transversal
//! crossing of two strands in the horizontal projection contributes one
//! letter, `+sigma_r` when the strand moving rightward passes below the other
//! (counterclockwise exchange), `-sigma_r` when it passes above, `r` the
//! 1-based position of the crossing pair at that moment.
//!
//! Near-degenerate pictures (rank ties, vertical near-coincidence at a
//! crossing) are retried under a slightly rotated projection; genuinely
//! colliding strands are an error. Rotated frames that view the initial
//! order reversed have their letters folded back (`sigma_r` to
//! `sigma_{k-r}`), so the reported braid does not depend on the projection
//! direction.

use super::normal::NormalForm;
use super::{BraidError, BraidWord};
use crate::flow::{integrate, link_preservation, IntegrateParams, Trajectory};
use crate::geometry::LinkLayout;
use crate::rational::rat_to_f64;

/// Which arc of the image circle closes a strand back to its marked point.
/// All three give the same braid type: the two choices differ by a loop
/// around one link circle whose interior meets no other strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    /// Shorter way round; antipodal ties break counterclockwise.
    #[default]
    ShorterArc,
    Ccw,
    Cw,
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractParams {
    /// Uniform scan resolution over the closed motion.
    pub samples: usize,
    /// Bisection iterations per crossing.
    pub bisect_iters: usize,
    /// Minimum vertical separation at a crossing before retrying.
    pub vtol: f64,
    /// Events closer than this in time and sharing a strand force a retry.
    pub ttol: f64,
    /// Projection angles tried before giving up.
    pub retries: usize,
    /// Pairwise strand distance below this is a hard error.
    pub collision_tol: f64,
    /// Share of the closed motion spent on the closure arcs.
    pub closure_fraction: f64,
    /// Closure arc orientation.
    pub closure: Closure,
    /// Base projection angle; retries perturb away from it.
    pub projection_angle: f64,
    /// Boundary-sample count and residual tolerance for the preservation
    /// check run before extraction.
    pub preservation_samples: usize,
    pub preservation_tol: f64,
}

impl Default for ExtractParams {
    fn default() -> Self {
        ExtractParams {
            samples: 4096,
            bisect_iters: 70,
            vtol: 1e-6,
            ttol: 1e-10,
            retries: 8,
            collision_tol: 1e-7,
            closure_fraction: 0.125,
            closure: Closure::ShorterArc,
            projection_angle: 0.0,
            preservation_samples: 24,
            preservation_tol: 1e-6,
        }
    }
}

/// Braid type of a link-preserving map, with the evidence used to read it.
#[derive(Debug, Clone)]
pub struct BraidType {
    pub word: BraidWord,
    pub normal: NormalForm,
    /// Where each link circle is sent.
    pub circle_permutation: Vec<usize>,
    /// Smallest pairwise distance seen between closed strands.
    pub min_separation: f64,
}

/// Flow trajectory plus the boundary arc closing it up, parametrized over
/// `[0, 1]` with the final `closure_fraction` spent on the arc.
struct ClosedStrand {
    traj: Trajectory,
    center: (f64, f64),
    radius: f64,
    theta_end: f64,
    dtheta: f64,
    rho_end: f64,
    closure_fraction: f64,
}

impl ClosedStrand {
    fn new(
        traj: Trajectory,
        center: (f64, f64),
        radius: f64,
        closure: Closure,
        closure_fraction: f64,
    ) -> ClosedStrand {
        let (ex, ey) = traj.end();
        let theta_end = (ey - center.1).atan2(ex - center.0);
        let rho_end = ((ex - center.0).powi(2) + (ey - center.1).powi(2)).sqrt();
        // Arc back to angle 0 (the marked point).
        let dtheta = match closure {
            Closure::ShorterArc => {
                // Ties (antipodal endpoint) break counterclockwise.
                let mut d = -theta_end;
                if d > std::f64::consts::PI {
                    d -= std::f64::consts::TAU;
                } else if d <= -std::f64::consts::PI {
                    d += std::f64::consts::TAU;
                }
                d
            }
            Closure::Ccw => (-theta_end).rem_euclid(std::f64::consts::TAU),
            Closure::Cw => -(theta_end.rem_euclid(std::f64::consts::TAU)),
        };
        ClosedStrand {
            traj,
            center,
            radius,
            theta_end,
            dtheta,
            rho_end,
            closure_fraction,
        }
    }

    fn at(&self, t: f64) -> (f64, f64) {
        let total = 1.0 + self.closure_fraction;
        let tt = t.clamp(0.0, 1.0) * total;
        if tt <= 1.0 {
            return self.traj.sample(tt);
        }
        let s = (tt - 1.0) / self.closure_fraction;
        let th = self.theta_end + s * self.dtheta;
        let rho = self.rho_end + s * (self.radius - self.rho_end);
        (
            self.center.0 + rho * th.cos(),
            self.center.1 + rho * th.sin(),
        )
    }
}

/// Reads the braid word of closed strand motions over `t` in `[0, 1]`.
/// Exposed for synthetic paths; [`braid_type`] is the end-to-end entry.
/// Strands must be indexed in their initial left-to-right order: that
/// indexing anchors which generator each crossing produces, whatever
/// projection ends up used.
pub fn read_word<S>(paths: &[S], params: &ExtractParams) -> Result<BraidWord, BraidError>
where
    S: Fn(f64) -> (f64, f64),
{
    let k = paths.len();
    if k == 0 {
        return Err(BraidError::NoStrands);
    }
    let n = params.samples.max(16);
    let raw: Vec<Vec<(f64, f64)>> = (0..=n)
        .map(|s| {
            let t = s as f64 / n as f64;
            paths.iter().map(|p| p(t)).collect()
        })
        .collect();

    for (s, row) in raw.iter().enumerate() {
        for i in 0..k {
            for j in i + 1..k {
                let d = ((row[i].0 - row[j].0).powi(2) + (row[i].1 - row[j].1).powi(2)).sqrt();
                if d < params.collision_tol {
                    return Err(BraidError::StrandCollision {
                        t: s as f64 / n as f64,
                        i,
                        j,
                        dist: d,
                    });
                }
            }
        }
    }
    if k == 1 {
        return Ok(BraidWord::identity(1));
    }

    'attempt: for attempt in 0..params.retries.max(1) {
        let phi = params.projection_angle + attempt as f64 * 0.5657;
        let (c, s) = (phi.cos(), phi.sin());
        let u = |p: (f64, f64)| p.0 * c + p.1 * s;
        let v = |p: (f64, f64)| -p.0 * s + p.1 * c;

        // The emitted word is anchored to the strands' initial indexing:
        // strand i starts i-th from the left. A frame that views that order
        // reversed sees the picture rotated by a half turn, so its letters
        // are flipped back below (sigma_r to sigma_{k-r}; a half turn keeps
        // crossing sense, so signs stay). A frame whose initial ranking is
        // any other permutation cannot be reconciled with the indexing and
        // is skipped like a degenerate picture.
        let mut init: Vec<usize> = (0..k).collect();
        init.sort_by(|&a, &b| u(raw[0][a]).partial_cmp(&u(raw[0][b])).unwrap());
        if init.windows(2).any(|w| u(raw[0][w[0]]) == u(raw[0][w[1]])) {
            continue 'attempt;
        }
        let flipped = if init.iter().copied().eq(0..k) {
            false
        } else if init.iter().rev().copied().eq(0..k) {
            true
        } else {
            continue 'attempt;
        };

        let mut events: Vec<(f64, i64, usize, usize)> = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                for step in 0..n {
                    let d0 = u(raw[step][i]) - u(raw[step][j]);
                    let d1 = u(raw[step + 1][i]) - u(raw[step + 1][j]);
                    if d0 == 0.0 {
                        continue 'attempt;
                    }
                    if d0 * d1 >= 0.0 {
                        continue;
                    }
                    let mut a = step as f64 / n as f64;
                    let mut b = (step + 1) as f64 / n as f64;
                    let mut da = d0;
                    for _ in 0..params.bisect_iters {
                        let m = 0.5 * (a + b);
                        let dm = u(paths[i](m)) - u(paths[j](m));
                        if dm == 0.0 {
                            a = m;
                            break;
                        }
                        if da * dm < 0.0 {
                            b = m;
                        } else {
                            a = m;
                            da = dm;
                        }
                    }
                    let t_star = 0.5 * (a + b);
                    let pts: Vec<(f64, f64)> = paths.iter().map(|p| p(t_star)).collect();
                    let vi = v(pts[i]);
                    let vj = v(pts[j]);
                    if (vi - vj).abs() < params.vtol {
                        continue 'attempt;
                    }
                    let mut order: Vec<usize> = (0..k).collect();
                    order.sort_by(|&a, &b| u(pts[a]).partial_cmp(&u(pts[b])).unwrap());
                    let ri = order.iter().position(|&x| x == i).unwrap();
                    let rj = order.iter().position(|&x| x == j).unwrap();
                    if ri.abs_diff(rj) != 1 {
                        continue 'attempt;
                    }
                    // d0 < 0 means strand i sat left of j and is the one
                    // moving right through the exchange.
                    let (mover_v, other_v) = if d0 < 0.0 { (vi, vj) } else { (vj, vi) };
                    let rank = ri.min(rj);
                    let letter = if mover_v < other_v {
                        (rank + 1) as i64
                    } else {
                        -((rank + 1) as i64)
                    };
                    events.push((t_star, letter, i, j));
                }
            }
        }
        events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in events.windows(2) {
            let (t0, _, a0, b0) = w[0];
            let (t1, _, a1, b1) = w[1];
            if (t1 - t0).abs() < params.ttol && (a0 == a1 || a0 == b1 || b0 == a1 || b0 == b1) {
                continue 'attempt;
            }
        }
        let letters = events
            .iter()
            .map(|e| {
                if flipped {
                    e.1.signum() * (k as i64 - e.1.abs())
                } else {
                    e.1
                }
            })
            .collect();
        return BraidWord::from_letters(k, letters);
    }
    Err(BraidError::DegenerateProjection {
        retries: params.retries.max(1),
    })
}

/// Braid type of the time-1 map of a Hamiltonian relative to a link.
///
/// Checks link preservation first, flows the marked points, closes them up
/// along their image circles, and reads the word.
pub fn braid_type(
    e: &crate::hamiltonian::Expr,
    layout: &LinkLayout,
    xp: &ExtractParams,
    ip: &IntegrateParams,
) -> Result<BraidType, BraidError> {
    let report = link_preservation(e, layout, xp.preservation_samples, xp.preservation_tol, ip)?;
    if !report.preserved {
        return Err(BraidError::NotPreserved {
            max_residual: report.max_residual,
        });
    }

    let mut strands = Vec::with_capacity(layout.k);
    for i in 0..layout.k {
        let traj = integrate(e, layout.base_point(i), 0.0, 1.0, ip)?;
        let target = &layout.circles[report.permutation[i]];
        let center = (rat_to_f64(&target.center.0), rat_to_f64(&target.center.1));
        let radius = rat_to_f64(&target.radius);
        let (ex, ey) = traj.end();
        let residual = (((ex - center.0).powi(2) + (ey - center.1).powi(2)).sqrt() - radius).abs();
        if residual > xp.preservation_tol {
            return Err(BraidError::NotPreserved {
                max_residual: residual,
            });
        }
        strands.push(ClosedStrand::new(
            traj,
            center,
            radius,
            xp.closure,
            xp.closure_fraction,
        ));
    }

    let paths: Vec<_> = strands.iter().map(|s| move |t: f64| s.at(t)).collect();
    let word = read_word(&paths, xp)?;

    let n = xp.samples.max(16);
    let mut min_separation = f64::INFINITY;
    for step in 0..=n {
        let t = step as f64 / n as f64;
        let pts: Vec<(f64, f64)> = strands.iter().map(|s| s.at(t)).collect();
        for i in 0..pts.len() {
            for p in pts.iter().skip(i + 1) {
                let d = ((pts[i].0 - p.0).powi(2) + (pts[i].1 - p.1).powi(2)).sqrt();
                min_separation = min_separation.min(d);
            }
        }
    }

    let normal = NormalForm::of(&word);
    Ok(BraidType {
        word,
        normal,
        circle_permutation: report.permutation,
        min_separation,
    })
}
