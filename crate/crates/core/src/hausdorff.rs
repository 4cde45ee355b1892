//! Sampled Hausdorff distances between square sets and segment sets.

use std::io::Write;

use rayon::prelude::*;

use crate::binomial::ResidueSpec;
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;
use crate::scalar::Real;
use crate::star::{a0_approx, an_approx, SegmentSet};
use crate::triangle::{u_set, SquareSet};

/// Default arclength step for sampling segment sets.
pub const DEFAULT_SEGMENT_SPACING: f64 = 1e-3;

/// Grid side above which the bucket size is enlarged.
const MAX_GRID_SIDE: usize = 4096;

/// A finite sample of a compact subset of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud<T: Real> {
    pub points: Vec<[T; 2]>,
    /// Largest gap between neighbouring samples.
    pub spacing: T,
    pub provenance: String,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<[T; 2]>, spacing: T, provenance: impl Into<String>) -> Result<Self> {
        if spacing.is_nan() || spacing <= T::zero() {
            return Err(Error::InvalidArgument("sampling spacing must be positive".into()));
        }
        Ok(PointCloud {
            points,
            spacing,
            provenance: provenance.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Worst distance from a point of the source set to the nearest sample.
    pub fn discretization_error(&self) -> T {
        self.spacing * T::lit(std::f64::consts::FRAC_1_SQRT_2)
    }
}

/// A sampled distance together with the sampling error it may carry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HausdorffEstimate<T: Real> {
    pub distance: T,
    pub error_bound: T,
}

/// Lattice points with step at most `spacing` covering every square,
/// boundaries included, shared points listed once.
pub fn sample_square_set<T: Real>(set: &SquareSet, spacing: T) -> Result<PointCloud<T>> {
    let side = T::one() / T::from_count(set.size());
    let tol = T::epsilon() * T::lit(16.0);
    if spacing.is_nan() || spacing <= T::zero() || spacing > side * (T::one() + tol) {
        return Err(Error::SpacingTooCoarse {
            spacing: spacing.to_f64().unwrap_or(f64::NAN),
            cell: side.to_f64().unwrap_or(f64::NAN),
        });
    }
    let per_cell = (side / spacing * (T::one() - tol)).ceil().to_u64().unwrap_or(1).max(1);
    let mut lattice: Vec<(u64, u64)> = set
        .cells()
        .iter()
        .flat_map(|c| {
            (0..=per_cell)
                .flat_map(move |dy| (0..=per_cell).map(move |dx| (c.col * per_cell + dx, c.row * per_cell + dy)))
        })
        .collect();
    lattice.sort_unstable_by_key(|&(x, y)| (y, x));
    lattice.dedup();
    let denom = T::from_count(set.size() * per_cell);
    let points = lattice
        .into_iter()
        .map(|(x, y)| [T::from_count(x) / denom, T::from_count(y) / denom])
        .collect();
    PointCloud::new(
        points,
        T::one() / denom,
        format!(
            "squares n={} size={} mod {} ≡ {}",
            set.level(),
            set.size(),
            set.residue().modulus(),
            set.residue().residue()
        ),
    )
}

/// Points along every segment at equal arclength steps of at most `spacing`,
/// endpoints included; exact duplicates are removed.
pub fn sample_segment_set<T: Real>(set: &SegmentSet<T>, spacing: T) -> Result<PointCloud<T>> {
    if spacing.is_nan() || spacing <= T::zero() {
        return Err(Error::InvalidArgument("sampling spacing must be positive".into()));
    }
    let slack = T::one() - T::epsilon() * T::lit(64.0);
    let mut points: Vec<[T; 2]> = Vec::new();
    for s in set.iter() {
        let steps = (s.length() / spacing * slack).ceil().to_u64().unwrap_or(1).max(1);
        let n = T::from_count(steps);
        for k in 0..=steps {
            let t = T::from_count(k) / n;
            points.push([s.a[0] + t * (s.b[0] - s.a[0]), s.a[1] + t * (s.b[1] - s.a[1])]);
        }
    }
    points.sort_unstable_by(|p, q| p[0].partial_cmp(&q[0]).unwrap().then(p[1].partial_cmp(&q[1]).unwrap()));
    points.dedup();
    PointCloud::new(
        points,
        spacing,
        format!(
            "segments maxlen={} iters={} count={}",
            set.maxlen,
            set.iterations,
            set.len()
        ),
    )
}

/// Points bucketed into square cells, stored compressed by cell.
struct Grid<T: Real> {
    origin: [T; 2],
    cell: T,
    nx: usize,
    ny: usize,
    starts: Vec<usize>,
    points: Vec<[T; 2]>,
}

impl<T: Real> Grid<T> {
    fn new(points: &[[T; 2]], cell: T) -> Self {
        let min = |k: usize| points.iter().map(|p| p[k]).fold(T::infinity(), T::min);
        let max = |k: usize| points.iter().map(|p| p[k]).fold(T::neg_infinity(), T::max);
        let origin = [min(0), min(1)];
        let extent = (max(0) - origin[0]).max(max(1) - origin[1]);
        let mut cell = cell;
        if extent / cell > T::from_count(MAX_GRID_SIDE as u64) {
            cell = extent / T::from_count(MAX_GRID_SIDE as u64);
        }
        let dim = |k: usize| ((max(k) - origin[k]) / cell).floor().to_usize().unwrap_or(0) + 1;
        let (nx, ny) = (dim(0), dim(1));
        let mut grid = Grid {
            origin,
            cell,
            nx,
            ny,
            starts: vec![0; nx * ny + 1],
            points: Vec::new(),
        };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(p)).collect();
        for &k in &keys {
            grid.starts[k + 1] += 1;
        }
        for k in 0..nx * ny {
            grid.starts[k + 1] += grid.starts[k];
        }
        let mut fill = grid.starts.clone();
        let mut sorted = vec![[T::zero(); 2]; points.len()];
        for (p, &k) in points.iter().zip(&keys) {
            sorted[fill[k]] = *p;
            fill[k] += 1;
        }
        grid.points = sorted;
        grid
    }

    fn coord(&self, v: T, k: usize, n: usize) -> isize {
        let c = ((v - self.origin[k]) / self.cell).floor().to_isize().unwrap_or(0);
        c.clamp(0, n as isize - 1)
    }

    fn key(&self, p: &[T; 2]) -> usize {
        self.coord(p[1], 1, self.ny) as usize * self.nx + self.coord(p[0], 0, self.nx) as usize
    }

    fn bucket(&self, cx: isize, cy: isize) -> &[[T; 2]] {
        if cx < 0 || cy < 0 || cx >= self.nx as isize || cy >= self.ny as isize {
            return &[];
        }
        let k = cy as usize * self.nx + cx as usize;
        &self.points[self.starts[k]..self.starts[k + 1]]
    }

    /// Squared distance from `q` to the nearest stored point, searching rings
    /// of cells outward until no farther ring can improve it.
    fn nearest_sq(&self, q: &[T; 2]) -> T {
        let raw = |v: T, k: usize| ((v - self.origin[k]) / self.cell).floor().to_isize().unwrap_or(0);
        let (qx, qy) = (raw(q[0], 0), raw(q[1], 1));
        let reach = [qx, self.nx as isize - 1 - qx, qy, self.ny as isize - 1 - qy]
            .iter()
            .map(|d| d.unsigned_abs())
            .max()
            .unwrap_or(0) as isize;
        let mut best = T::infinity();
        for r in 0..=reach {
            let mut visit = |cx: isize, cy: isize| {
                for p in self.bucket(cx, cy) {
                    let (dx, dy) = (p[0] - q[0], p[1] - q[1]);
                    best = best.min(dx * dx + dy * dy);
                }
            };
            if r == 0 {
                visit(qx, qy);
            } else {
                for cx in qx - r..=qx + r {
                    visit(cx, qy - r);
                    visit(cx, qy + r);
                }
                for cy in qy - r + 1..qy + r {
                    visit(qx - r, cy);
                    visit(qx + r, cy);
                }
            }
            let cleared = T::from_count(r as u64) * self.cell;
            if best <= cleared * cleared {
                break;
            }
        }
        best
    }
}

fn directed<T: Real>(from: &[[T; 2]], to: &Grid<T>) -> T {
    from.par_iter().map(|q| to.nearest_sq(q)).reduce(T::zero, T::max).sqrt()
}

/// Symmetric Hausdorff distance between two clouds, with the bound
/// `δ_a √2/2 + δ_b √2/2` on the gap to the distance between the sampled sets.
pub fn hausdorff_distance<T: Real>(a: &PointCloud<T>, b: &PointCloud<T>) -> Result<HausdorffEstimate<T>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let cell = a.spacing.max(b.spacing);
    let (ga, gb) = rayon::join(|| Grid::new(&a.points, cell), || Grid::new(&b.points, cell));
    let (ab, ba) = rayon::join(|| directed(&a.points, &gb), || directed(&b.points, &ga));
    Ok(HausdorffEstimate {
        distance: ab.max(ba),
        error_bound: a.discretization_error() + b.discretization_error(),
    })
}

/// Whether every point of `a` lies within `eps` of some point of `b`.
pub fn within_fattening<T: Real>(a: &PointCloud<T>, b: &PointCloud<T>, eps: T) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let grid = Grid::new(&b.points, a.spacing.max(b.spacing));
    Ok(a.points.par_iter().all(|q| grid.nearest_sq(q).sqrt() <= eps))
}

/// One line of a convergence report.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow<T: Real> {
    pub n: usize,
    pub distance: T,
    pub error_bound: T,
    pub points_u: usize,
    pub points_a: usize,
    pub a_maxlen: usize,
    pub a_iters: usize,
}

/// Distances from `𝒰_{n,r}` (sampled at `1/U_β(n)`) to a fixed segment
/// approximation `𝒜_{a_iters}` built from pairs of length at most `a_maxlen`.
pub fn convergence_report<T: Real>(
    sys: &NumerationSystem<T>,
    residue: ResidueSpec,
    levels: &[usize],
    a_maxlen: usize,
    a_iters: usize,
    segment_spacing: T,
) -> Result<Vec<ConvergenceRow<T>>> {
    if levels.is_empty() {
        return Err(Error::InvalidArgument("no levels requested".into()));
    }
    let a0 = a0_approx(sys, a_maxlen, residue)?;
    let approx = sample_segment_set(&an_approx(&a0, a_iters, sys), segment_spacing)?;
    levels
        .iter()
        .map(|&n| {
            let set = u_set(sys, n, residue)?;
            let cloud = sample_square_set(&set, T::one() / T::from_count(sys.u(n)?))?;
            let est = hausdorff_distance(&cloud, &approx)?;
            Ok(ConvergenceRow {
                n,
                distance: est.distance,
                error_bound: est.error_bound,
                points_u: cloud.len(),
                points_a: approx.len(),
                a_maxlen,
                a_iters,
            })
        })
        .collect()
}

pub fn write_convergence_csv<T: Real, W: Write>(rows: &[ConvergenceRow<T>], mut out: W) -> Result<()> {
    writeln!(out, "n,distance,error_bound,points_u,points_a,a_maxlen,a_iters")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.9},{:.9},{},{},{},{}",
            r.n,
            r.distance.to_f64().unwrap(),
            r.error_bound.to_f64().unwrap(),
            r.points_u,
            r.points_a,
            r.a_maxlen,
            r.a_iters
        )?;
    }
    Ok(())
}
