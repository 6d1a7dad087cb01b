//! Hull-intersection predicates on partitioned configurations.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::geometry::{affine_dependence_kernel, PointConfig};
use crate::lp::lp_feasible;
use crate::partition::{enumerate_r_partitions, Partition};
use crate::scalar::Scalar;

/// A point common to the convex hulls of all parts, with the convex
/// coefficients that express it in each part.
#[derive(Clone, Debug, PartialEq)]
pub struct TverbergCertificate<S> {
    pub witness: Vec<S>,
    /// Positive coefficient of each support point.
    pub coefficients: BTreeMap<usize, S>,
    /// Points with positive coefficient, ascending.
    pub support: Vec<usize>,
}

impl<S: Scalar> TverbergCertificate<S> {
    /// Re-checks the certificate against `config` and `partition`: per-part
    /// coefficient sums are one and per-part weighted sums equal the witness.
    pub fn verify(&self, config: &PointConfig<S>, partition: &Partition) -> bool {
        let d = config.dim();
        if self.witness.len() != d || partition.len() != config.len() {
            return false;
        }
        let r = partition.num_parts();
        let mut sums = vec![S::zero(); r];
        let mut points = vec![vec![S::zero(); d]; r];
        for (&i, c) in &self.coefficients {
            if i >= config.len() || !c.is_positive() {
                return false;
            }
            let j = partition.part_of(i);
            sums[j] = sums[j].add(c);
            for (acc, x) in points[j].iter_mut().zip(config.point(i)) {
                *acc = acc.add(&c.mul(x));
            }
        }
        let support: Vec<usize> = self.coefficients.keys().copied().collect();
        support == self.support
            && sums.iter().all(|s| *s == S::one())
            && points.iter().all(|p| *p == self.witness)
    }

    /// JSON with every scalar as its exact string.
    pub fn to_json(&self) -> Value {
        let coefficients: serde_json::Map<String, Value> = self
            .coefficients
            .iter()
            .map(|(i, c)| (i.to_string(), Value::String(c.to_exact_string())))
            .collect();
        json!({
            "witness": self.witness.iter().map(|x| x.to_exact_string()).collect::<Vec<_>>(),
            "coefficients": coefficients,
            "support": self.support,
        })
    }
}

/// Solves for a common point of `conv(parts[0]) ∩ … ∩ conv(parts[k-1])`.
/// Parts must be nonempty and pairwise disjoint.
pub fn common_point<S: Scalar>(
    config: &PointConfig<S>,
    parts: &[Vec<usize>],
) -> Option<TverbergCertificate<S>> {
    let d = config.dim();
    let mut columns: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(j, part)| part.iter().map(move |&i| (i, j)))
        .collect();
    columns.sort_unstable();
    let k = parts.len();
    let mut rows = Vec::with_capacity(k + d * k.saturating_sub(1));
    let mut rhs = Vec::with_capacity(rows.capacity());
    for j in 0..k {
        rows.push(
            columns
                .iter()
                .map(|&(_, p)| if p == j { S::one() } else { S::zero() })
                .collect::<Vec<_>>(),
        );
        rhs.push(S::one());
    }
    for j in 1..k {
        for c in 0..d {
            rows.push(
                columns
                    .iter()
                    .map(|&(i, p)| {
                        if p == 0 {
                            config.point(i)[c].clone()
                        } else if p == j {
                            config.point(i)[c].neg()
                        } else {
                            S::zero()
                        }
                    })
                    .collect(),
            );
            rhs.push(S::zero());
        }
    }
    let result = lp_feasible(&rows, &rhs);
    let solution = result.basic_solution?;
    debug_assert_eq!(solution.len(), result.support_size);
    let coefficients: BTreeMap<usize, S> = solution
        .into_iter()
        .map(|(col, v)| (columns[col].0, v))
        .collect();
    let mut witness = vec![S::zero(); d];
    for (&i, c) in &coefficients {
        let (_, part) = columns[columns.partition_point(|&(x, _)| x < i)];
        if part == 0 {
            for (w, x) in witness.iter_mut().zip(config.point(i)) {
                *w = w.add(&c.mul(x));
            }
        }
    }
    Some(TverbergCertificate {
        witness,
        support: coefficients.keys().copied().collect(),
        coefficients,
    })
}

fn check_partition<S: Scalar>(config: &PointConfig<S>, partition: &Partition) -> Result<()> {
    if partition.len() != config.len() {
        return Err(Error::PartitionMismatch(format!(
            "partition has {} elements, configuration has {} points",
            partition.len(),
            config.len()
        )));
    }
    Ok(())
}

/// A certificate when the parts' convex hulls share a point, else `None`.
pub fn is_tverberg<S: Scalar>(
    config: &PointConfig<S>,
    partition: &Partition,
) -> Result<Option<TverbergCertificate<S>>> {
    check_partition(config, partition)?;
    Ok(common_point(config, &partition.parts()))
}

fn require_tverberg<S: Scalar>(
    config: &PointConfig<S>,
    partition: &Partition,
) -> Result<TverbergCertificate<S>> {
    is_tverberg(config, partition)?.ok_or_else(|| Error::NotTverberg(partition.to_string()))
}

/// Support of a basic certificate and the partition restricted to it.
pub fn por_reduction<S: Scalar>(
    config: &PointConfig<S>,
    partition: &Partition,
) -> Result<(Vec<usize>, Partition)> {
    let cert = require_tverberg(config, partition)?;
    let restricted = partition.restrict(&cert.support);
    Ok((cert.support, restricted))
}

/// Validity of every single-element move out of a Tverberg partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTable {
    partition: Partition,
    /// `valid[x][k]`: moving `x` into part `k` keeps the partition Tverberg.
    valid: Vec<Vec<bool>>,
}

impl MoveTable {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn is_valid(&self, x: usize, part: usize) -> bool {
        self.valid[x][part]
    }

    /// No move of `x` keeps the Tverberg property.
    pub fn is_essential(&self, x: usize) -> bool {
        !self.valid[x].iter().any(|&v| v)
    }

    pub fn essential_points(&self) -> Vec<usize> {
        (0..self.valid.len()).filter(|&x| self.is_essential(x)).collect()
    }

    pub fn degree(&self) -> usize {
        self.valid.iter().flatten().filter(|&&v| v).count()
    }

    /// Partitions reached by the valid moves, in (point, part) order.
    pub fn neighbors(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for (x, row) in self.valid.iter().enumerate() {
            for (k, &ok) in row.iter().enumerate() {
                if ok {
                    out.push(self.partition.moved(x, k).expect("valid move"));
                }
            }
        }
        out
    }
}

/// Tests every single-element move. Points outside a certificate's support
/// can always move: the certificate survives and their part keeps a support
/// point.
pub fn essential_points<S: Scalar>(config: &PointConfig<S>, partition: &Partition) -> Result<MoveTable> {
    let cert = require_tverberg(config, partition)?;
    let r = partition.num_parts();
    let mut valid = vec![vec![false; r]; partition.len()];
    for (x, row) in valid.iter_mut().enumerate() {
        let in_support = cert.coefficients.contains_key(&x);
        for (k, slot) in row.iter_mut().enumerate() {
            let Some(moved) = partition.moved(x, k) else {
                continue;
            };
            *slot = !in_support || common_point(config, &moved.parts()).is_some();
        }
    }
    Ok(MoveTable {
        partition: partition.clone(),
        valid,
    })
}

/// Degree of a Tverberg partition in the Tverberg partition graph.
pub fn tverberg_degree<S: Scalar>(config: &PointConfig<S>, partition: &Partition) -> Result<usize> {
    Ok(essential_points(config, partition)?.degree())
}

/// Whether the parts still have intersecting hulls after deleting any set
/// of at most `t` points (a part emptied by the deletion fails).
pub fn tolerance_check<S: Scalar>(config: &PointConfig<S>, partition: &Partition, t: usize) -> Result<bool> {
    check_partition(config, partition)?;
    let parts = partition.parts();
    let Some(cert) = common_point(config, &parts) else {
        return Ok(false);
    };
    let n = config.len();
    for size in 1..=t.min(n) {
        for removed in Combinations::new(n, size) {
            // Deletions avoiding the support leave the certificate intact.
            if removed.iter().all(|x| !cert.coefficients.contains_key(x)) {
                continue;
            }
            let remaining: Vec<Vec<usize>> = parts
                .iter()
                .map(|p| p.iter().copied().filter(|x| removed.binary_search(x).is_err()).collect())
                .collect();
            if remaining.iter().any(|p: &Vec<usize>| p.is_empty()) || common_point(config, &remaining).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Isomorphism classes of nerves on three parts, in census column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleNerve {
    NoEdges,
    OneEdge,
    TwoEdges,
    Hollow,
    Filled,
}

impl TriangleNerve {
    pub const ALL: [TriangleNerve; 5] = [
        TriangleNerve::NoEdges,
        TriangleNerve::OneEdge,
        TriangleNerve::TwoEdges,
        TriangleNerve::Hollow,
        TriangleNerve::Filled,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TriangleNerve::NoEdges => "no_edges",
            TriangleNerve::OneEdge => "one_edge",
            TriangleNerve::TwoEdges => "two_edges",
            TriangleNerve::Hollow => "hollow_triangle",
            TriangleNerve::Filled => "filled_triangle",
        }
    }
}

/// Intersection pattern of the parts' convex hulls. Faces are bitmasks over
/// part indices; singletons are always faces and are included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveClass {
    pub parts: usize,
    pub faces: Vec<u32>,
    /// Lexicographically least face list over all relabelings of the parts.
    pub canonical: Vec<u32>,
}

impl NerveClass {
    pub fn triangle_class(&self) -> Option<TriangleNerve> {
        if self.parts != 3 {
            return None;
        }
        let edges = self.faces.iter().filter(|f| f.count_ones() == 2).count();
        let filled = self.faces.contains(&0b111);
        Some(match (edges, filled) {
            (_, true) => TriangleNerve::Filled,
            (0, _) => TriangleNerve::NoEdges,
            (1, _) => TriangleNerve::OneEdge,
            (2, _) => TriangleNerve::TwoEdges,
            _ => TriangleNerve::Hollow,
        })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn canonical_faces(parts: usize, faces: &[u32]) -> Vec<u32> {
    permutations(parts)
        .into_iter()
        .map(|perm| {
            let mut mapped: Vec<u32> = faces
                .iter()
                .map(|&f| {
                    (0..parts)
                        .filter(|&b| f & (1 << b) != 0)
                        .fold(0u32, |acc, b| acc | (1 << perm[b]))
                })
                .collect();
            mapped.sort_unstable();
            mapped
        })
        .min()
        .unwrap_or_default()
}

/// Largest part count for which the nerve canonical form is computed.
pub const MAX_NERVE_PARTS: usize = 6;

/// Nerve of the partition's parts. Subsets are tested in order of size and
/// skipped unless all their maximal proper subsets are faces.
pub fn nerve<S: Scalar>(config: &PointConfig<S>, partition: &Partition) -> Result<NerveClass> {
    check_partition(config, partition)?;
    let r = partition.num_parts();
    if r > MAX_NERVE_PARTS {
        return Err(Error::InvalidArguments(format!(
            "nerve supports at most {MAX_NERVE_PARTS} parts, got {r}"
        )));
    }
    let parts = partition.parts();
    let mut masks: Vec<u32> = (1..(1u32 << r)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut faces: BTreeSet<u32> = BTreeSet::new();
    for mask in masks {
        let closed = (0..r)
            .filter(|&b| mask & (1 << b) != 0)
            .all(|b| mask.count_ones() == 1 || faces.contains(&(mask & !(1 << b))));
        if !closed {
            continue;
        }
        if mask.count_ones() == 1 {
            faces.insert(mask);
            continue;
        }
        let selected: Vec<Vec<usize>> = (0..r)
            .filter(|&b| mask & (1 << b) != 0)
            .map(|b| parts[b].clone())
            .collect();
        if common_point(config, &selected).is_some() {
            faces.insert(mask);
        }
    }
    let faces: Vec<u32> = faces.into_iter().collect();
    Ok(NerveClass {
        parts: r,
        canonical: canonical_faces(r, &faces),
        faces,
    })
}

/// All Radon partitions (two parts with intersecting hulls).
///
/// With a one-dimensional space of affine dependences the sign pattern of
/// its generator fixes the two cores and points with zero coefficient may
/// go to either side. Otherwise every 2-partition is tested directly.
pub fn radon_partitions_via_kernel<S: Scalar>(config: &PointConfig<S>) -> Result<Vec<Partition>> {
    let n = config.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    let kernel = affine_dependence_kernel(config);
    if kernel.len() != 1 {
        let mut out = Vec::new();
        for p in enumerate_r_partitions(n, 2)? {
            if common_point(config, &p.parts()).is_some() {
                out.push(p);
            }
        }
        return Ok(out);
    }
    let alpha = &kernel[0];
    let zeros: Vec<usize> = (0..n).filter(|&i| alpha[i].is_zero()).collect();
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << zeros.len()) {
        let labels: Vec<usize> = (0..n)
            .map(|i| match alpha[i].signum() {
                1 => 0,
                -1 => 1,
                _ => {
                    let z = zeros.binary_search(&i).unwrap();
                    ((mask >> z) & 1) as usize
                }
            })
            .collect();
        found.insert(Partition::from_labels(&labels)?);
    }
    Ok(found.into_iter().collect())
}
