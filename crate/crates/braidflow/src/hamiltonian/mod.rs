//! Time-dependent Hamiltonians on the unit disk.
//!
//! Hamiltonians are closed-form expressions in `t`, `x`, `y` built from
//! arithmetic, `sin`/`cos`/`exp`/`neg`, integer powers, and a smooth cutoff
//! `bump(s, a, b)` that equals 1 for `s <= a`, 0 for `s >= b`, and glues the
//! two plateaus with the mollifier ratio
//! `m((b-s)/(b-a)) / (m((b-s)/(b-a)) + m((s-a)/(b-a)))`, `m(v) = exp(-1/v)`.
//!
//! With the area form `dx ^ dy` the induced vector field is
//! `X_H = (dH/dy, -dH/dx)`; derivatives come from forward-mode duals, so the
//! field is exact to rounding. `hofer_norm` returns a two-sided estimate of
//! `int_0^1 (max H_t - min H_t) dt` where the extrema run over the whole
//! sphere model: outside the disk the Hamiltonian is 0, so the oscillation at
//! each time is clamped against 0. Every threshold comparison elsewhere in the
//! crate uses the upper end of the estimate.

mod dual;
mod parse;

pub use dual::{Dual, Scalar};
pub use parse::parse;

use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected {expected}")]
    Syntax {
        offset: usize,
        found: String,
        expected: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{func}` expects {want} argument(s), got {got} (at byte {offset})")]
    Arity {
        func: String,
        want: usize,
        got: usize,
        offset: usize,
    },
    #[error("bump bounds must be constant expressions (at byte {offset})")]
    BumpNonConstant { offset: usize },
    #[error("bump requires bounds a < b, got a = {lo}, b = {hi} (at byte {offset})")]
    BumpBounds { lo: f64, hi: f64, offset: usize },
    #[error("malformed number literal at byte {offset}")]
    BadNumber { offset: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero in subexpression at bytes {}..{}", span.0, span.1)]
    DivisionByZero { span: (usize, usize) },
    #[error("evaluation produced a non-finite value")]
    NonFinite,
}

#[derive(Debug, thiserror::Error)]
pub enum HamiltonianError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("support violation: |H({t}, {x}, {y})| = {value:e} in the boundary collar")]
    SupportViolation { t: f64, x: f64, y: f64, value: f64 },
    #[error("support does not fit: {0}")]
    SupportOverflow(String),
    #[error("bad builder parameters: {0}")]
    BadBuilderParams(String),
    #[error("bad estimator parameters: {0}")]
    BadParams(String),
}

/// Expression tree. `Div` keeps the byte span of its source text so division
/// by zero can point at the offending subexpression; programmatically built
/// divisions carry the empty span.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    T,
    X,
    Y,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, (usize, usize)),
    Pow(Box<Expr>, u32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    Neg(Box<Expr>),
    Bump { arg: Box<Expr>, lo: f64, hi: f64 },
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }
    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }
    pub fn squared(self) -> Expr {
        Expr::Pow(Box::new(self), 2)
    }
    pub fn bump_of(self, lo: f64, hi: f64) -> Expr {
        Expr::Bump {
            arg: Box::new(self),
            lo,
            hi,
        }
    }
    pub fn sin_of(self) -> Expr {
        Expr::Sin(Box::new(self))
    }
    pub fn cos_of(self) -> Expr {
        Expr::Cos(Box::new(self))
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
}
impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
}
impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
}

/// Structural equality that ignores source spans.
pub fn structurally_equal(a: &Expr, b: &Expr) -> bool {
    use Expr::*;
    match (a, b) {
        (Const(x), Const(y)) => x == y,
        (T, T) | (X, X) | (Y, Y) => true,
        (Add(a1, a2), Add(b1, b2))
        | (Sub(a1, a2), Sub(b1, b2))
        | (Mul(a1, a2), Mul(b1, b2))
        | (Div(a1, a2, _), Div(b1, b2, _)) => {
            structurally_equal(a1, b1) && structurally_equal(a2, b2)
        }
        (Pow(a1, n), Pow(b1, m)) => n == m && structurally_equal(a1, b1),
        (Sin(a1), Sin(b1)) | (Cos(a1), Cos(b1)) | (Exp(a1), Exp(b1)) | (Neg(a1), Neg(b1)) => {
            structurally_equal(a1, b1)
        }
        (
            Bump {
                arg: a1,
                lo: l1,
                hi: h1,
            },
            Bump {
                arg: b1,
                lo: l2,
                hi: h2,
            },
        ) => l1 == l2 && h1 == h2 && structurally_equal(a1, b1),
        _ => false,
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn fmt_expr(e: &Expr, parent: u8, out: &mut String) {
    let p = prec(e);
    let wrap = p < parent;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Const(c) => {
            if c.is_sign_negative() {
                out.push_str(&format!("neg({})", -c));
            } else {
                out.push_str(&format!("{c}"));
            }
        }
        Expr::T => out.push('t'),
        Expr::X => out.push('x'),
        Expr::Y => out.push('y'),
        Expr::Add(a, b) => {
            fmt_expr(a, 1, out);
            out.push_str(" + ");
            fmt_expr(b, 2, out);
        }
        Expr::Sub(a, b) => {
            fmt_expr(a, 1, out);
            out.push_str(" - ");
            fmt_expr(b, 2, out);
        }
        Expr::Mul(a, b) => {
            fmt_expr(a, 2, out);
            out.push('*');
            fmt_expr(b, 3, out);
        }
        Expr::Div(a, b, _) => {
            fmt_expr(a, 2, out);
            out.push('/');
            fmt_expr(b, 3, out);
        }
        Expr::Pow(a, n) => {
            fmt_expr(a, 4, out);
            out.push_str(&format!("^{n}"));
        }
        Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) | Expr::Neg(a) => {
            let name = match e {
                Expr::Sin(_) => "sin",
                Expr::Cos(_) => "cos",
                Expr::Exp(_) => "exp",
                _ => "neg",
            };
            out.push_str(name);
            out.push('(');
            fmt_expr(a, 1, out);
            out.push(')');
        }
        Expr::Bump { arg, lo, hi } => {
            out.push_str("bump(");
            fmt_expr(arg, 1, out);
            let fmt_bound = |v: f64| {
                if v.is_sign_negative() {
                    format!("neg({})", -v)
                } else {
                    format!("{v}")
                }
            };
            out.push_str(&format!(", {}, {})", fmt_bound(*lo), fmt_bound(*hi)));
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Renders the expression as text that reparses to the same tree.
pub fn display(e: &Expr) -> String {
    let mut s = String::new();
    fmt_expr(e, 0, &mut s);
    s
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&display(self))
    }
}

/// Mollifier-ratio cutoff; exactly 1 on `s <= lo`, exactly 0 on `s >= hi`.
/// The tiny margin avoids 0 * inf in dual derivatives right at the edges; the
/// function value there is below double precision anyway.
fn bump_val<S: Scalar>(s: S, lo: f64, hi: f64) -> S {
    let w = hi - lo;
    let sv = s.value();
    if sv <= lo + 1e-12 * w {
        return S::from_f64(1.0);
    }
    if sv >= hi - 1e-12 * w {
        return S::from_f64(0.0);
    }
    let wid = S::from_f64(w);
    let u1 = S::from_f64(hi).sub(s).div(wid);
    let u2 = s.sub(S::from_f64(lo)).div(wid);
    let m = |u: S| S::from_f64(-1.0).div(u).exp();
    let m1 = m(u1);
    let m2 = m(u2);
    m1.div(m1.add(m2))
}

fn eval_scalar<S: Scalar>(e: &Expr, t: S, x: S, y: S) -> Result<S, EvalError> {
    Ok(match e {
        Expr::Const(c) => S::from_f64(*c),
        Expr::T => t,
        Expr::X => x,
        Expr::Y => y,
        Expr::Add(a, b) => eval_scalar(a, t, x, y)?.add(eval_scalar(b, t, x, y)?),
        Expr::Sub(a, b) => eval_scalar(a, t, x, y)?.sub(eval_scalar(b, t, x, y)?),
        Expr::Mul(a, b) => eval_scalar(a, t, x, y)?.mul(eval_scalar(b, t, x, y)?),
        Expr::Div(a, b, span) => {
            let den = eval_scalar(b, t, x, y)?;
            if den.value() == 0.0 {
                return Err(EvalError::DivisionByZero { span: *span });
            }
            eval_scalar(a, t, x, y)?.div(den)
        }
        Expr::Pow(a, n) => eval_scalar(a, t, x, y)?.powi(*n),
        Expr::Sin(a) => eval_scalar(a, t, x, y)?.sin(),
        Expr::Cos(a) => eval_scalar(a, t, x, y)?.cos(),
        Expr::Exp(a) => eval_scalar(a, t, x, y)?.exp(),
        Expr::Neg(a) => eval_scalar(a, t, x, y)?.neg(),
        Expr::Bump { arg, lo, hi } => bump_val(eval_scalar(arg, t, x, y)?, *lo, *hi),
    })
}

/// Value of a variable-free expression, if it is one.
pub fn const_value(e: &Expr) -> Option<f64> {
    match e {
        Expr::T | Expr::X | Expr::Y => None,
        _ => {
            // A lone probe suffices: variables were just excluded recursively.
            fn walk(e: &Expr) -> Option<f64> {
                Some(match e {
                    Expr::Const(c) => *c,
                    Expr::T | Expr::X | Expr::Y => return None,
                    Expr::Add(a, b) => walk(a)? + walk(b)?,
                    Expr::Sub(a, b) => walk(a)? - walk(b)?,
                    Expr::Mul(a, b) => walk(a)? * walk(b)?,
                    Expr::Div(a, b, _) => {
                        let d = walk(b)?;
                        if d == 0.0 {
                            return None;
                        }
                        walk(a)? / d
                    }
                    Expr::Pow(a, n) => walk(a)?.powi(*n as i32),
                    Expr::Sin(a) => walk(a)?.sin(),
                    Expr::Cos(a) => walk(a)?.cos(),
                    Expr::Exp(a) => walk(a)?.exp(),
                    Expr::Neg(a) => -walk(a)?,
                    Expr::Bump { arg, lo, hi } => bump_val(walk(arg)?, *lo, *hi),
                })
            }
            walk(e)
        }
    }
}

pub fn eval(e: &Expr, t: f64, x: f64, y: f64) -> Result<f64, EvalError> {
    let v = eval_scalar(e, t, x, y)?;
    if !v.is_finite() {
        return Err(EvalError::NonFinite);
    }
    Ok(v)
}

/// `(dH/dx, dH/dy)` by forward-mode differentiation.
pub fn partials(e: &Expr, t: f64, x: f64, y: f64) -> Result<(f64, f64), EvalError> {
    let tc = Dual::constant(t);
    let hx = eval_scalar(e, tc, Dual::seeded(x), Dual::constant(y))?.d;
    let hy = eval_scalar(e, tc, Dual::constant(x), Dual::seeded(y))?.d;
    if !(hx.is_finite() && hy.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    Ok((hx, hy))
}

/// Hamiltonian vector field for the area form `dx ^ dy`:
/// `X_H = (dH/dy, -dH/dx)`.
pub fn vector_field(e: &Expr, t: f64, x: f64, y: f64) -> Result<(f64, f64), EvalError> {
    let (hx, hy) = partials(e, t, x, y)?;
    Ok((hy, -hx))
}

/// Max deviation between dual-number partials and central finite differences
/// over the sample points.
pub fn derivative_check(e: &Expr, samples: &[(f64, f64, f64)]) -> Result<f64, EvalError> {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for &(t, x, y) in samples {
        let (hx, hy) = partials(e, t, x, y)?;
        let fdx = (eval(e, t, x + h, y)? - eval(e, t, x - h, y)?) / (2.0 * h);
        let fdy = (eval(e, t, x, y + h)? - eval(e, t, x, y - h)?) / (2.0 * h);
        worst = worst.max((hx - fdx).abs()).max((hy - fdy).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy)]
pub struct HoferParams {
    /// Time quadrature nodes; rounded up so the node count is 4m + 1.
    pub t_nodes: usize,
    /// Spatial grid resolution per axis over the disk's bounding square.
    pub grid: usize,
    /// Rounds of local grid halving around each extremizer.
    pub refine: usize,
}

impl Default for HoferParams {
    fn default() -> Self {
        HoferParams {
            t_nodes: 65,
            grid: 96,
            refine: 14,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HoferEstimate {
    pub lower: f64,
    pub upper: f64,
}

fn simpson(vals: &[f64], h: f64) -> f64 {
    let n = vals.len() - 1;
    let mut s = vals[0] + vals[n];
    for (i, v) in vals.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

struct NodeOsc {
    osc: f64,
    safety: f64,
}

fn node_oscillation(
    e: &Expr,
    t: f64,
    grid: usize,
    refine: usize,
) -> Result<NodeOsc, HamiltonianError> {
    let cell = 2.0 / (grid - 1) as f64;
    let mut max_v = f64::NEG_INFINITY;
    let mut min_v = f64::INFINITY;
    let mut max_pt = (0.0, 0.0);
    let mut min_pt = (0.0, 0.0);
    let mut grad_max: f64 = 0.0;
    for i in 0..grid {
        let x = -1.0 + i as f64 * cell;
        for j in 0..grid {
            let y = -1.0 + j as f64 * cell;
            if x * x + y * y > 1.0 {
                continue;
            }
            let v = eval(e, t, x, y)?;
            if v > max_v {
                max_v = v;
                max_pt = (x, y);
            }
            if v < min_v {
                min_v = v;
                min_pt = (x, y);
            }
            if i % 2 == 0 && j % 2 == 0 {
                let (hx, hy) = partials(e, t, x, y)?;
                grad_max = grad_max.max((hx * hx + hy * hy).sqrt());
            }
        }
    }
    if max_v == f64::NEG_INFINITY {
        return Err(HamiltonianError::BadParams(
            "grid too coarse for the disk".into(),
        ));
    }

    let mut spacing = cell;
    for _ in 0..refine {
        spacing /= 2.0;
        for (best_v, best_pt, maximize) in [
            (&mut max_v, &mut max_pt, true),
            (&mut min_v, &mut min_pt, false),
        ] {
            let (cx, cy) = *best_pt;
            for di in -2i32..=2 {
                for dj in -2i32..=2 {
                    let x = cx + di as f64 * spacing;
                    let y = cy + dj as f64 * spacing;
                    if x * x + y * y > 1.0 {
                        continue;
                    }
                    let v = eval(e, t, x, y)?;
                    if (maximize && v > *best_v) || (!maximize && v < *best_v) {
                        *best_v = v;
                        *best_pt = (x, y);
                    }
                }
            }
        }
    }
    // The sphere model extends H by zero outside the disk.
    let osc = max_v.max(0.0) - min_v.min(0.0);
    Ok(NodeOsc {
        osc,
        safety: grad_max * spacing * std::f64::consts::SQRT_2,
    })
}

/// Two-sided estimate of the time integral of the spatial oscillation.
///
/// Per node the oscillation comes from grid sampling plus local refinement;
/// the upper end adds a gradient-times-final-cell safety term. Both ends are
/// widened by a Richardson estimate of the time-quadrature error. Treats the
/// Hamiltonian as compactly supported (oscillation clamped against 0).
pub fn hofer_norm(e: &Expr, params: &HoferParams) -> Result<HoferEstimate, HamiltonianError> {
    if params.grid < 8 {
        return Err(HamiltonianError::BadParams(
            "grid must be at least 8".into(),
        ));
    }
    let mut n = params.t_nodes.saturating_sub(1).max(4);
    n += (4 - n % 4) % 4;
    let h = 1.0 / n as f64;
    let nodes: Vec<NodeOsc> = (0..=n)
        .into_par_iter()
        .map(|i| node_oscillation(e, i as f64 * h, params.grid, params.refine))
        .collect::<Result<_, _>>()?;

    let osc: Vec<f64> = nodes.iter().map(|nd| nd.osc).collect();
    let osc_hi: Vec<f64> = nodes.iter().map(|nd| nd.osc + nd.safety).collect();
    let full = simpson(&osc, h);
    let half: Vec<f64> = osc.iter().step_by(2).copied().collect();
    let quad_err = 2.0 * (full - simpson(&half, 2.0 * h)).abs() / 15.0;
    Ok(HoferEstimate {
        lower: (full - quad_err).max(0.0),
        upper: simpson(&osc_hi, h) + quad_err,
    })
}

/// Radius beyond which compactly supported Hamiltonians must vanish; builders
/// keep their supports inside it.
pub const SUPPORT_RADIUS: f64 = 0.95;

/// Samples the collar `SUPPORT_RADIUS <= r <= 1` at several times and fails
/// on any value of magnitude 1e-12 or more.
pub fn check_compact_support(e: &Expr) -> Result<(), HamiltonianError> {
    for &t in &[0.0, 0.21, 0.48, 0.77, 1.0] {
        for ring in 0..6 {
            let r = SUPPORT_RADIUS + ring as f64 * (1.0 - SUPPORT_RADIUS) / 5.0;
            for a in 0..48 {
                let th = a as f64 * std::f64::consts::TAU / 48.0;
                let (x, y) = (r * th.cos(), r * th.sin());
                let value = eval(e, t, x, y)?;
                if value.abs() >= 1e-12 {
                    return Err(HamiltonianError::SupportViolation { t, x, y, value });
                }
            }
        }
    }
    Ok(())
}

/// Taper profile `f(s) = (angle/2) (inner^2 - s) bump(s, inner^2, outer^2)`
/// about `center`, `s` the squared distance. On `s <= inner^2` the slope is
/// exactly `-angle/2`, so the time-1 flow is the rigid rotation by `angle`
/// (counterclockwise for positive angles); the field vanishes beyond `outer`.
pub fn rotation(
    center: (f64, f64),
    angle: f64,
    inner: f64,
    outer: f64,
) -> Result<Expr, HamiltonianError> {
    if !(inner > 0.0 && inner < outer) {
        return Err(HamiltonianError::BadBuilderParams(format!(
            "need 0 < inner < outer, got {inner}, {outer}"
        )));
    }
    let reach = (center.0 * center.0 + center.1 * center.1).sqrt() + outer;
    if reach >= SUPPORT_RADIUS {
        return Err(HamiltonianError::SupportOverflow(format!(
            "rotation support reaches radius {reach:.4}, past the collar at {SUPPORT_RADIUS}"
        )));
    }
    let s = (Expr::X - Expr::constant(center.0)).squared()
        + (Expr::Y - Expr::constant(center.1)).squared();
    let s1 = inner * inner;
    let profile = Expr::constant(s1) - s.clone();
    Ok(Expr::constant(angle / 2.0) * profile * s.bump_of(s1, outer * outer))
}

/// Rotation builder output plus the support geometry the caller may need to
/// site compatible perturbations.
#[derive(Debug, Clone)]
pub struct SwapField {
    pub expr: Expr,
    pub center: (f64, f64),
    /// Total rotation angle of the rigid zone over unit time.
    pub angle: f64,
    pub inner: f64,
    pub outer: f64,
}

/// Counterclockwise half-turn of the smallest annulus-padded disk containing
/// circles `a` and `b` of the layout; the rigid zone covers both circles and
/// the support avoids every other circle and the boundary collar.
pub fn swap_pair(
    layout: &crate::geometry::LinkLayout,
    a: usize,
    b: usize,
) -> Result<SwapField, HamiltonianError> {
    swap_rotation(layout, a, b, std::f64::consts::PI)
}

/// Like [`swap_pair`] with an arbitrary rigid rotation angle (`2 pi` gives a
/// full twist of the pair).
pub fn swap_rotation(
    layout: &crate::geometry::LinkLayout,
    a: usize,
    b: usize,
    angle: f64,
) -> Result<SwapField, HamiltonianError> {
    use crate::rational::rat_to_f64;
    if a == b || a >= layout.k || b >= layout.k {
        return Err(HamiltonianError::BadBuilderParams(format!(
            "swap_pair needs two distinct circle indices < {}, got {a}, {b}",
            layout.k
        )));
    }
    let pos = |i: usize| {
        let c = &layout.circles[i];
        (
            rat_to_f64(&c.center.0),
            rat_to_f64(&c.center.1),
            rat_to_f64(&c.radius),
        )
    };
    let (ax, ay, ar) = pos(a);
    let (bx, by, br) = pos(b);
    let mid = ((ax + bx) / 2.0, (ay + by) / 2.0);
    let dist = |x: f64, y: f64| ((x - mid.0).powi(2) + (y - mid.1).powi(2)).sqrt();
    let needed = (dist(ax, ay) + ar).max(dist(bx, by) + br);
    let mut avail = SUPPORT_RADIUS - 1e-3 - (mid.0 * mid.0 + mid.1 * mid.1).sqrt();
    for i in 0..layout.k {
        if i == a || i == b {
            continue;
        }
        let (cx, cy, cr) = pos(i);
        avail = avail.min(dist(cx, cy) - cr);
    }
    if avail - needed < 1e-6 {
        return Err(HamiltonianError::SupportOverflow(format!(
            "no annulus around circles {a},{b}: rigid zone needs {needed:.4}, room ends at {avail:.4}"
        )));
    }
    let slack = avail - needed;
    let inner = needed + 0.25 * slack;
    let outer = needed + 0.75 * slack;
    Ok(SwapField {
        expr: rotation(mid, angle, inner, outer)?,
        center: mid,
        angle,
        inner,
        outer,
    })
}

pub fn scaled(e: Expr, c: f64) -> Expr {
    Expr::constant(c) * e
}

pub fn sum(a: Expr, b: Expr) -> Expr {
    a + b
}

/// Time-independent bump `delta * bump(s, inner^2, outer^2)` about `center`.
pub fn radial_bump(
    center: (f64, f64),
    delta: f64,
    inner: f64,
    outer: f64,
) -> Result<Expr, HamiltonianError> {
    if !(inner > 0.0 && inner < outer) {
        return Err(HamiltonianError::BadBuilderParams(format!(
            "need 0 < inner < outer, got {inner}, {outer}"
        )));
    }
    let reach = (center.0 * center.0 + center.1 * center.1).sqrt() + outer;
    if reach >= SUPPORT_RADIUS {
        return Err(HamiltonianError::SupportOverflow(format!(
            "bump support reaches radius {reach:.4}, past the collar at {SUPPORT_RADIUS}"
        )));
    }
    let s = (Expr::X - Expr::constant(center.0)).squared()
        + (Expr::Y - Expr::constant(center.1)).squared();
    Ok(Expr::constant(delta) * s.bump_of(inner * inner, outer * outer))
}
