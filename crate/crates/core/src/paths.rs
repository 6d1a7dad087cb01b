//! Explicit paths between vertices of the Tverberg partition graph.

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::graph::{build_graph_capped, DEFAULT_MAX_PARTITIONS};
use crate::partition::{enumerate_r_partitions, max_weight_assignment, Partition};
use crate::scalar::Scalar;
use crate::tverberg::{common_point, is_tverberg, TverbergCertificate};

/// Accumulates single moves on a label vector, recording each new partition.
struct Walk {
    labels: Vec<usize>,
    path: Vec<Partition>,
}

impl Walk {
    fn new(labels: Vec<usize>) -> Self {
        let start = Partition::from_labels(&labels).expect("valid labels");
        Walk {
            labels,
            path: vec![start],
        }
    }

    fn set(&mut self, x: usize, label: usize) {
        if self.labels[x] != label {
            self.labels[x] = label;
            self.path.push(Partition::from_labels(&self.labels).expect("valid labels"));
        }
    }
}

/// Dependence coefficients of a certificate: positive on part 0 of
/// `partition`, negative on part 1, zero off the support.
fn dependence<S: Scalar>(cert: &TverbergCertificate<S>, partition: &Partition) -> Vec<S> {
    (0..partition.len())
        .map(|i| match cert.coefficients.get(&i) {
            Some(c) if partition.part_of(i) == 0 => c.clone(),
            Some(c) => c.neg(),
            None => S::zero(),
        })
        .collect()
}

/// `b = -c a` for some `c > 0`.
fn negatively_proportional<S: Scalar>(a: &[S], b: &[S]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[k].is_zero() || b[k].signum() == a[k].signum() {
        return false;
    }
    let ratio = b[k].div(&a[k]);
    a.iter().zip(b).all(|(x, y)| *y == x.mul(&ratio))
}

/// A path of Radon partitions from `p` to `q`, consecutive ones one move
/// apart.
///
/// Both partitions give affine dependences `α`, `β` with sign pattern
/// matching their parts. Along `(1-t)α + tβ` the sign pattern changes one
/// coordinate at a time (ties broken by point index), and every
/// intermediate sign pattern is a Radon partition. Points whose coefficient
/// is zero at `t = 0` or `t = 1` are placed by extra moves at those times.
pub fn radon_path<S: Scalar>(config: &PointConfig<S>, p: &Partition, q: &Partition) -> Result<Vec<Partition>> {
    for x in [p, q] {
        if x.num_parts() != 2 {
            return Err(Error::InvalidArguments(format!("{x} does not have two parts")));
        }
    }
    let cert_p = is_tverberg(config, p)?.ok_or_else(|| Error::NotRadon(p.to_string()))?;
    let cert_q = is_tverberg(config, q)?.ok_or_else(|| Error::NotRadon(q.to_string()))?;
    if p == q {
        return Ok(vec![p.clone()]);
    }
    let alpha = dependence(&cert_p, p);
    let mut beta = dependence(&cert_q, q);
    // Label 0 is the side where the moving dependence is positive.
    let mut target: Vec<usize> = q.labels();
    if negatively_proportional(&alpha, &beta) {
        beta = beta.iter().map(S::neg).collect();
        target.iter_mut().for_each(|l| *l = 1 - *l);
    }
    let side = |v: &S| if v.is_positive() { 0 } else { 1 };
    let n = p.len();
    let mut walk = Walk::new(p.labels());

    for i in 0..n {
        if alpha[i].is_zero() && !beta[i].is_zero() {
            walk.set(i, side(&beta[i]));
        }
    }
    let mut events: Vec<(S, usize)> = (0..n)
        .filter(|&i| !alpha[i].is_zero() && !beta[i].is_zero() && alpha[i].signum() != beta[i].signum())
        .map(|i| (alpha[i].div(&alpha[i].sub(&beta[i])), i))
        .collect();
    events.sort_by(|a, b| a.0.cmp_value(&b.0).then(a.1.cmp(&b.1)));
    for (_, i) in events {
        walk.set(i, side(&beta[i]));
    }
    for (i, &l) in target.iter().enumerate() {
        walk.set(i, l);
    }
    debug_assert_eq!(walk.path.last(), Some(q));
    Ok(walk.path)
}

/// How [`tverberg_path`] treats configurations below `3·Tv(d,r) - 1` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathMode {
    /// Refuse with [`Error::TooFewPoints`].
    Strict,
    /// Try the construction, validate it, then fall back to a graph search.
    BestEffort,
}

/// A path of Tverberg partitions from `p` to `q`.
///
/// With certificate supports `S_P`, `S_Q`: if they are disjoint, points
/// outside `S_P` move to their `q` parts (keeping `S_P` fixed, so `p`'s
/// certificate survives), then the points of `S_P` move (keeping `S_Q`
/// fixed). Otherwise an intermediate partition supported in
/// `S \ (S_P ∪ S_Q)` splits the path in two disjoint-support halves.
pub fn tverberg_path<S: Scalar>(config: &PointConfig<S>, p: &Partition, q: &Partition) -> Result<Vec<Partition>> {
    tverberg_path_with(config, p, q, PathMode::Strict)
}

pub fn tverberg_path_with<S: Scalar>(
    config: &PointConfig<S>,
    p: &Partition,
    q: &Partition,
    mode: PathMode,
) -> Result<Vec<Partition>> {
    let r = p.num_parts();
    if q.num_parts() != r {
        return Err(Error::InvalidArguments(format!("{p} and {q} have different part counts")));
    }
    let cert_p = is_tverberg(config, p)?.ok_or_else(|| Error::NotTverberg(p.to_string()))?;
    let cert_q = is_tverberg(config, q)?.ok_or_else(|| Error::NotTverberg(q.to_string()))?;
    if p == q {
        return Ok(vec![p.clone()]);
    }
    let needed = 3 * config.tverberg_number(r) - 1;
    if config.len() >= needed {
        return construct(config, p, &cert_p.support, q, &cert_q.support);
    }
    if mode == PathMode::Strict {
        return Err(Error::TooFewPoints {
            needed,
            found: config.len(),
        });
    }
    if let Ok(path) = construct(config, p, &cert_p.support, q, &cert_q.support) {
        if validate_path(config, &path, p, q).is_ok() {
            return Ok(path);
        }
    }
    let graph = build_graph_capped(config, r, DEFAULT_MAX_PARTITIONS)?;
    let (Some(a), Some(b)) = (graph.index_of(p), graph.index_of(q)) else {
        return Err(Error::NoPathFound);
    };
    let path = graph.shortest_path(a, b).ok_or(Error::NoPathFound)?;
    Ok(path.into_iter().map(|v| graph.vertices[v].clone()).collect())
}

fn construct<S: Scalar>(
    config: &PointConfig<S>,
    p: &Partition,
    support_p: &[usize],
    q: &Partition,
    support_q: &[usize],
) -> Result<Vec<Partition>> {
    if support_p.iter().all(|x| support_q.binary_search(x).is_err()) {
        return Ok(disjoint_supports(p, support_p, q));
    }
    let (mid, support_mid) = intermediate(config, p.num_parts(), support_p, support_q)?;
    let mut path = disjoint_supports(p, support_p, &mid);
    let second = disjoint_supports(&mid, &support_mid, q);
    path.extend(second.into_iter().skip(1));
    Ok(path)
}

/// Moves everything outside `support_p` to its `q` part, then the rest.
/// `q`'s parts are matched to `p`'s by maximal overlap.
fn disjoint_supports(p: &Partition, support_p: &[usize], q: &Partition) -> Vec<Partition> {
    let r = p.num_parts();
    let mut overlap = vec![vec![0i64; r]; r];
    for x in 0..p.len() {
        overlap[q.part_of(x)][p.part_of(x)] += 1;
    }
    let to_p_label = max_weight_assignment(&overlap);
    let mut walk = Walk::new(p.labels());
    let in_p = |x: &usize| support_p.binary_search(x).is_ok();
    for x in (0..p.len()).filter(|x| !in_p(x)) {
        walk.set(x, to_p_label[q.part_of(x)]);
    }
    for x in (0..p.len()).filter(in_p) {
        walk.set(x, to_p_label[q.part_of(x)]);
    }
    walk.path
}

/// A Tverberg partition certified by points outside both supports: the
/// first `Tv(d,r)` such points are partitioned, the rest join part 0.
fn intermediate<S: Scalar>(
    config: &PointConfig<S>,
    r: usize,
    support_p: &[usize],
    support_q: &[usize],
) -> Result<(Partition, Vec<usize>)> {
    let tv = config.tverberg_number(r);
    let free: Vec<usize> = (0..config.len())
        .filter(|x| support_p.binary_search(x).is_err() && support_q.binary_search(x).is_err())
        .take(tv)
        .collect();
    if free.len() < tv {
        return Err(Error::NoPathFound);
    }
    for sub in enumerate_r_partitions(tv, r)? {
        let parts: Vec<Vec<usize>> = sub.parts().iter().map(|part| part.iter().map(|&k| free[k]).collect()).collect();
        if let Some(cert) = common_point(config, &parts) {
            let mut labels = vec![0; config.len()];
            for (j, part) in parts.iter().enumerate() {
                for &x in part {
                    labels[x] = j;
                }
            }
            return Ok((Partition::from_labels(&labels)?, cert.support));
        }
    }
    Err(Error::NoPathFound)
}

/// Why a path is not a valid walk in the Tverberg partition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathDefect {
    WrongEndpoints,
    NotTverberg(usize),
    NotAdjacent(usize),
}

/// Checks endpoints, membership of every step and distance 1 between
/// consecutive steps.
pub fn validate_path<S: Scalar>(
    config: &PointConfig<S>,
    path: &[Partition],
    p: &Partition,
    q: &Partition,
) -> std::result::Result<(), PathDefect> {
    if path.first() != Some(p) || path.last() != Some(q) {
        return Err(PathDefect::WrongEndpoints);
    }
    for (i, step) in path.iter().enumerate() {
        if !matches!(is_tverberg(config, step), Ok(Some(_))) {
            return Err(PathDefect::NotTverberg(i));
        }
        if i > 0 && crate::partition::partition_distance(&path[i - 1], step) != Ok(1) {
            return Err(PathDefect::NotAdjacent(i));
        }
    }
    Ok(())
}
