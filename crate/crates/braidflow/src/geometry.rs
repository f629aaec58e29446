//! Link layouts and exact stability thresholds.
//!
//! A layout is `k` disjoint round circles in the open unit disk together with
//! declared rational areas: `A_1..A_k` are the enclosed areas of the circles
//! and `A_{k+1}` is the area of the complement on the ambient sphere of total
//! area 1. Declared areas are symplectic bookkeeping and are deliberately not
//! tied to the Euclidean radii; the Euclidean data fixes the topology (which
//! circle is which, disjointness), the rational data fixes all thresholds
//! exactly. The dynamical domain is always the open unit disk.
//!
//! A layout is admissible for parameter `eta >= 0` when `A_1 = ... = A_k = l`
//! and `l = 2*eta*(k-1) + A_{k+1}`. Together with the areas summing to 1 this
//! pins `l = (1 + 2*eta*(k-1)) / (k+1)`.
//!
//! `lambda_gap` is half the smallest positive value of an integer combination
//! of the areas; every action difference that matters for braid changes is a
//! multiple of twice the gap. `stability_threshold` divides it down to the
//! Hofer radius `lambda_gap / (300 k)` inside which braid types are rigid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rat, parse_rat, rat_int, Rat};

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("layout must have at least one circle")]
    EmptyLink,
    #[error("layout has k = {k} but {circles} circles / {areas} areas")]
    ShapeMismatch {
        k: usize,
        circles: usize,
        areas: usize,
    },
    #[error("eta must be >= 0, got {0}")]
    NegativeEta(String),
    #[error("area {index} must be positive, got {value}")]
    NonPositiveArea { index: usize, value: String },
    #[error("areas must sum to 1, got {0}")]
    AreaSumNotOne(String),
    #[error("disk area must satisfy sum of circle areas < disk_area < 1, got {0}")]
    BadDiskArea(String),
    #[error("circle {0} has non-positive radius")]
    NonPositiveRadius(usize),
    #[error("circles {0} and {1} are not disjoint")]
    CirclesOverlap(usize, usize),
    #[error("circle {0} is not strictly inside the unit disk")]
    CircleOutsideDisk(usize),
    #[error("layout is not admissible: {0}")]
    NotAdmissible(String),
    #[error("equal circle area lambda = {lambda} must be < 1/k for k = {k}")]
    LambdaTooLarge { k: usize, lambda: String },
    #[error("lambda_gap requires a non-empty list of positive areas")]
    GapBadInput,
    #[error("layout json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circle {
    pub center: (Rat, Rat),
    pub radius: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkLayout {
    pub k: usize,
    pub eta: Rat,
    pub circles: Vec<Circle>,
    /// `k + 1` entries; the last is the complement area on the sphere.
    pub areas: Vec<Rat>,
    pub disk_area: Rat,
}

#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// The common circle area when admissible.
    pub lambda: Option<Rat>,
    /// All circle areas equal, so link components may be permuted by maps.
    pub surjective_setting: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct StabilityThreshold {
    pub lambda: Rat,
    pub lambda_gap: Rat,
    /// `lambda_gap / 300`.
    pub epsilon_link: Rat,
    /// `epsilon_link / k`; Hofer distances below this cannot move the braid type.
    pub threshold: Rat,
}

impl LinkLayout {
    /// Checks the structural invariants: shapes, positivity, area sum,
    /// pairwise disjointness, and strict containment in the unit disk.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.k == 0 {
            return Err(GeometryError::EmptyLink);
        }
        if self.circles.len() != self.k || self.areas.len() != self.k + 1 {
            return Err(GeometryError::ShapeMismatch {
                k: self.k,
                circles: self.circles.len(),
                areas: self.areas.len(),
            });
        }
        if self.eta.is_negative() {
            return Err(GeometryError::NegativeEta(fmt_rat(&self.eta)));
        }
        for (i, a) in self.areas.iter().enumerate() {
            if !a.is_positive() {
                return Err(GeometryError::NonPositiveArea {
                    index: i + 1,
                    value: fmt_rat(a),
                });
            }
        }
        let total: Rat = self.areas.iter().sum();
        if total != rat_int(1) {
            return Err(GeometryError::AreaSumNotOne(fmt_rat(&total)));
        }
        let inner: Rat = self.areas[..self.k].iter().sum();
        if self.disk_area <= inner || self.disk_area >= rat_int(1) {
            return Err(GeometryError::BadDiskArea(fmt_rat(&self.disk_area)));
        }
        let one = rat_int(1);
        for (i, c) in self.circles.iter().enumerate() {
            if !c.radius.is_positive() {
                return Err(GeometryError::NonPositiveRadius(i + 1));
            }
            // |center|^2 < (1 - r)^2 with r < 1, all exact.
            if c.radius >= one {
                return Err(GeometryError::CircleOutsideDisk(i + 1));
            }
            let d2 = &c.center.0 * &c.center.0 + &c.center.1 * &c.center.1;
            let margin = &one - &c.radius;
            if d2 >= &margin * &margin {
                return Err(GeometryError::CircleOutsideDisk(i + 1));
            }
        }
        for i in 0..self.circles.len() {
            for j in (i + 1)..self.circles.len() {
                let (a, b) = (&self.circles[i], &self.circles[j]);
                let dx = &a.center.0 - &b.center.0;
                let dy = &a.center.1 - &b.center.1;
                let d2 = &dx * &dx + &dy * &dy;
                let rsum = &a.radius + &b.radius;
                if d2 <= &rsum * &rsum {
                    return Err(GeometryError::CirclesOverlap(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// Marked point of circle `i` (0-based): the rightmost point.
    pub fn base_point(&self, i: usize) -> (f64, f64) {
        let c = &self.circles[i];
        (
            crate::rational::rat_to_f64(&c.center.0) + crate::rational::rat_to_f64(&c.radius),
            crate::rational::rat_to_f64(&c.center.1),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RawLayout::from(self)).expect("layout serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GeometryError> {
        let raw: RawLayout =
            serde_json::from_value(v.clone()).map_err(|e| GeometryError::Json(e.to_string()))?;
        let layout = raw.into_layout()?;
        layout.validate()?;
        Ok(layout)
    }
}

#[derive(Serialize, Deserialize)]
struct RawCircle {
    center: [String; 2],
    radius: String,
}

#[derive(Serialize, Deserialize)]
struct RawLayout {
    k: usize,
    eta: String,
    circles: Vec<RawCircle>,
    areas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    disk_area: Option<String>,
}

impl From<&LinkLayout> for RawLayout {
    fn from(l: &LinkLayout) -> Self {
        RawLayout {
            k: l.k,
            eta: fmt_rat(&l.eta),
            circles: l
                .circles
                .iter()
                .map(|c| RawCircle {
                    center: [fmt_rat(&c.center.0), fmt_rat(&c.center.1)],
                    radius: fmt_rat(&c.radius),
                })
                .collect(),
            areas: l.areas.iter().map(fmt_rat).collect(),
            disk_area: Some(fmt_rat(&l.disk_area)),
        }
    }
}

impl RawLayout {
    fn into_layout(self) -> Result<LinkLayout, GeometryError> {
        let jerr = GeometryError::Json;
        let eta = parse_rat(&self.eta).map_err(jerr)?;
        let mut circles = Vec::with_capacity(self.circles.len());
        for c in &self.circles {
            circles.push(Circle {
                center: (
                    parse_rat(&c.center[0]).map_err(GeometryError::Json)?,
                    parse_rat(&c.center[1]).map_err(GeometryError::Json)?,
                ),
                radius: parse_rat(&c.radius).map_err(GeometryError::Json)?,
            });
        }
        let mut areas = Vec::with_capacity(self.areas.len());
        for a in &self.areas {
            areas.push(parse_rat(a).map_err(GeometryError::Json)?);
        }
        let disk_area = match &self.disk_area {
            Some(s) => parse_rat(s).map_err(GeometryError::Json)?,
            None => {
                // Midpoint between the circle-area total and the full sphere.
                let inner: Rat = areas.iter().take(self.k).sum();
                (inner + rat_int(1)) / rat_int(2)
            }
        };
        Ok(LinkLayout {
            k: self.k,
            eta,
            circles,
            areas,
            disk_area,
        })
    }
}

/// Reports which admissibility conditions hold for the layout's declared data.
/// Structural invariants are still hard errors.
pub fn check_admissible(layout: &LinkLayout) -> Result<AdmissibilityReport, GeometryError> {
    layout.validate()?;
    let k = layout.k;
    let lambda = layout.areas[0].clone();
    let mut failures = Vec::new();

    let equal_areas = layout.areas[..k].iter().all(|a| *a == lambda);
    if !equal_areas {
        failures.push(format!(
            "circle areas are not all equal: {}",
            layout.areas[..k]
                .iter()
                .map(fmt_rat)
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    let expected = rat_int(2) * &layout.eta * rat_int(k as i64 - 1) + &layout.areas[k];
    if equal_areas && lambda != expected {
        failures.push(format!(
            "lambda = {} but 2*eta*(k-1) + complement = {}",
            fmt_rat(&lambda),
            fmt_rat(&expected)
        ));
    }
    let admissible = failures.is_empty();
    Ok(AdmissibilityReport {
        admissible,
        lambda: if admissible { Some(lambda) } else { None },
        surjective_setting: equal_areas,
        failures,
    })
}

/// Half the minimal positive `|sum a_i * A_i|` over integer vectors `a`.
///
/// Over a common denominator `q` the combinations are exactly the integer
/// multiples of `gcd(numerators)/q`, so the minimum is `gcd/q` and the gap
/// is `gcd/(2q)`.
pub fn lambda_gap(areas: &[Rat]) -> Result<Rat, GeometryError> {
    if areas.is_empty() || areas.iter().any(|a| !a.is_positive()) {
        return Err(GeometryError::GapBadInput);
    }
    let mut q = BigInt::one();
    for a in areas {
        q = q.lcm(a.denom());
    }
    let mut g = BigInt::zero();
    for a in areas {
        let n = a.numer() * (&q / a.denom());
        g = g.gcd(&n);
    }
    Ok(Rat::new(g, q * BigInt::from(2)))
}

/// Exact Hofer-stability threshold of an admissible layout.
pub fn stability_threshold(layout: &LinkLayout) -> Result<StabilityThreshold, GeometryError> {
    let report = check_admissible(layout)?;
    if !report.admissible {
        return Err(GeometryError::NotAdmissible(report.failures.join("; ")));
    }
    let gap = lambda_gap(&layout.areas)?;
    let epsilon_link = &gap / rat_int(300);
    let threshold = &epsilon_link / rat_int(layout.k as i64);
    Ok(StabilityThreshold {
        lambda: report.lambda.expect("admissible layout has lambda"),
        lambda_gap: gap,
        epsilon_link,
        threshold,
    })
}

/// `k` equal-area circles on a horizontal row inside the unit disk.
///
/// Radii are `16/(21k - 1)` so the row spans `[-4/5, 4/5]`, with the gap
/// between adjacent circles fixed at 10% of the radius. Declared areas follow
/// from admissibility: `lambda = (1 + 2*eta*(k-1)) / (k+1)`.
pub fn standard_layout(k: usize, eta: &Rat) -> Result<LinkLayout, GeometryError> {
    if k == 0 {
        return Err(GeometryError::EmptyLink);
    }
    if eta.is_negative() {
        return Err(GeometryError::NegativeEta(fmt_rat(eta)));
    }
    let kq = rat_int(k as i64);
    let lambda = (rat_int(1) + rat_int(2) * eta * rat_int(k as i64 - 1)) / rat_int(k as i64 + 1);
    if lambda >= rat_int(1) / &kq {
        return Err(GeometryError::LambdaTooLarge {
            k,
            lambda: fmt_rat(&lambda),
        });
    }
    let complement = rat_int(1) - &kq * &lambda;
    let disk_area = (&kq * &lambda + rat_int(1)) / rat_int(2);

    let radius = rat(16, 21 * k as i64 - 1);
    let spacing = rat(21, 10) * &radius;
    let mut circles = Vec::with_capacity(k);
    for i in 1..=k {
        let offset = rat(2 * i as i64 - k as i64 - 1, 2) * &spacing;
        circles.push(Circle {
            center: (offset, rat_int(0)),
            radius: radius.clone(),
        });
    }
    let mut areas = vec![lambda; k];
    areas.push(complement);
    let layout = LinkLayout {
        k,
        eta: eta.clone(),
        circles,
        areas,
        disk_area,
    };
    layout.validate()?;
    Ok(layout)
}

use crate::rational::rat;
