//! Point configurations and exact predicates.

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::lp::{lp_feasible, reduce_rows};
use crate::scalar::{Scalar, ScalarKind};

/// A labeled finite point list in `R^d`. Point `i` has label `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig<S> {
    dim: usize,
    points: Vec<Vec<S>>,
}

impl<S: Scalar> PointConfig<S> {
    pub fn new(dim: usize, points: Vec<Vec<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArguments("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::TooFewPoints { needed: 1, found: 0 });
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        Ok(PointConfig { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[S] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Scalar realization; for cyclotomic configurations, the largest order
    /// among the coordinates.
    pub fn scalar_kind(&self) -> ScalarKind {
        let mut kind = ScalarKind::Rational;
        for x in self.points.iter().flatten() {
            if let ScalarKind::Cyclotomic(m) = x.kind() {
                kind = match kind {
                    ScalarKind::Cyclotomic(k) => ScalarKind::Cyclotomic(lcm(k, m)),
                    ScalarKind::Rational => ScalarKind::Cyclotomic(m),
                };
            }
        }
        kind
    }

    /// Sub-configuration on the given indices, relabeled `0..k` in order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let pts = indices
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, len: self.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(self.dim, pts)
    }

    /// Tverberg number `(d+1)(r-1)+1` for this dimension.
    pub fn tverberg_number(&self, r: usize) -> usize {
        tverberg_number(self.dim, r)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    use num_integer::Integer;
    a.lcm(&b)
}

/// `Tv(d, r) = (d+1)(r-1)+1`.
pub fn tverberg_number(d: usize, r: usize) -> usize {
    (d + 1) * (r.max(1) - 1) + 1
}

/// Exact determinant by fraction-based elimination.
pub fn determinant<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv();
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].mul(&inv);
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x = x.sub_mul(&f, p);
                }
            }
        }
    }
    det
}

/// Sign of `det [p_i 1]` over the `d+1` given points.
pub fn orientation<S: Scalar>(config: &PointConfig<S>, indices: &[usize]) -> Result<i8> {
    let d = config.dim();
    if indices.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            found: indices.len(),
        });
    }
    for (k, &i) in indices.iter().enumerate() {
        if i >= config.len() {
            return Err(Error::IndexOutOfRange { index: i, len: config.len() });
        }
        if indices[..k].contains(&i) {
            return Err(Error::InvalidArguments(format!("repeated index {i}")));
        }
    }
    let m = indices
        .iter()
        .map(|&i| {
            let mut row = config.point(i).to_vec();
            row.push(S::one());
            row
        })
        .collect();
    Ok(determinant(m).signum())
}

/// Basis of the affine dependences `{α : Σ α_i = 0, Σ α_i p_i = 0}`.
///
/// The returned vectors are the standard kernel basis of the reduced
/// `(d+1) × n` matrix with columns `(p_i, 1)`: one vector per free column,
/// with a 1 in that column.
pub fn affine_dependence_kernel<S: Scalar>(config: &PointConfig<S>) -> Vec<Vec<S>> {
    let n = config.len();
    let d = config.dim();
    let mut rows: Vec<Vec<S>> = (0..=d)
        .map(|c| {
            (0..n)
                .map(|i| if c < d { config.point(i)[c].clone() } else { S::one() })
                .collect()
        })
        .collect();
    let pivots = reduce_rows(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = rows[r][f].neg();
            }
            v
        })
        .collect()
}

/// True iff every `(d+1)`-subset is affinely independent.
pub fn in_general_position<S: Scalar>(config: &PointConfig<S>) -> Result<bool> {
    let d = config.dim();
    if config.len() < d + 1 {
        return Err(Error::TooFewPoints {
            needed: d + 1,
            found: config.len(),
        });
    }
    for subset in Combinations::new(config.len(), d + 1) {
        if orientation(config, &subset)? == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is `p_i` outside the convex hull of the other points?
pub fn is_extreme_point<S: Scalar>(config: &PointConfig<S>, i: usize) -> bool {
    let d = config.dim();
    let others: Vec<usize> = (0..config.len()).filter(|&j| j != i).collect();
    if others.is_empty() {
        return true;
    }
    let mut a: Vec<Vec<S>> = (0..d)
        .map(|c| others.iter().map(|&j| config.point(j)[c].clone()).collect())
        .collect();
    a.push(vec![S::one(); others.len()]);
    let mut b: Vec<S> = config.point(i).to_vec();
    b.push(S::one());
    !lp_feasible(&a, &b).is_feasible()
}

/// Every point is a vertex of the convex hull.
pub fn in_convex_position<S: Scalar>(config: &PointConfig<S>) -> bool {
    (0..config.len()).all(|i| is_extreme_point(config, i))
}

/// Intersection point of segments `ab` and `cd` when they meet in exactly
/// one point.
fn segment_intersection<S: Scalar>(a: &[S], b: &[S], c: &[S], d: &[S]) -> Option<Vec<S>> {
    // a + s(b-a) = c + t(d-c)
    let r = [b[0].sub(&a[0]), b[1].sub(&a[1])];
    let q = [d[0].sub(&c[0]), d[1].sub(&c[1])];
    let denom = r[0].mul(&q[1]).sub(&r[1].mul(&q[0]));
    if denom.is_zero() {
        // parallel or collinear: not a single point in convex position
        return None;
    }
    let ca = [c[0].sub(&a[0]), c[1].sub(&a[1])];
    let s = ca[0].mul(&q[1]).sub(&ca[1].mul(&q[0])).div(&denom);
    let t = ca[0].mul(&r[1]).sub(&ca[1].mul(&r[0])).div(&denom);
    let unit = |x: &S| !x.is_negative() && x.cmp_value(&S::one()).is_le();
    if !unit(&s) || !unit(&t) {
        return None;
    }
    Some(vec![a[0].add(&s.mul(&r[0])), a[1].add(&s.mul(&r[1]))])
}

fn on_segment<S: Scalar>(x: &[S], a: &[S], b: &[S]) -> bool {
    let cross = b[0]
        .sub(&a[0])
        .mul(&x[1].sub(&a[1]))
        .sub(&b[1].sub(&a[1]).mul(&x[0].sub(&a[0])));
    if !cross.is_zero() {
        return false;
    }
    (0..2).all(|k| {
        let lo_hi = if a[k].cmp_value(&b[k]).is_le() { (&a[k], &b[k]) } else { (&b[k], &a[k]) };
        lo_hi.0.cmp_value(&x[k]).is_le() && x[k].cmp_value(lo_hi.1).is_le()
    })
}

/// Planar strong general convex position: convex position, and no three
/// segments spanned by pairwise disjoint point pairs pass through a common
/// point.
pub fn strong_general_convex_position_2d<S: Scalar>(config: &PointConfig<S>) -> Result<bool> {
    if config.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: config.dim(),
        });
    }
    if !in_convex_position(config) {
        return Err(Error::NotConvexPosition);
    }
    let n = config.len();
    let pairs: Vec<(usize, usize)> = Combinations::new(n, 2).map(|v| (v[0], v[1])).collect();
    let disjoint = |p: (usize, usize), q: (usize, usize)| {
        p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
    };
    for (i, &p) in pairs.iter().enumerate() {
        for (j, &q) in pairs.iter().enumerate().skip(i + 1) {
            if !disjoint(p, q) {
                continue;
            }
            let Some(x) = segment_intersection(
                config.point(p.0),
                config.point(p.1),
                config.point(q.0),
                config.point(q.1),
            ) else {
                continue;
            };
            for &s in pairs.iter().skip(j + 1) {
                if disjoint(s, p) && disjoint(s, q) && on_segment(&x, config.point(s.0), config.point(s.1)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
