//! Set partitions in restricted-growth form and the abstract partition graph.
//!
//! A partition of `{0..n}` into `r` nonempty parts is stored as its
//! restricted-growth string: `a[0] = 0` and each `a[i]` is at most one more
//! than the maximum of the preceding entries. This form is unique per
//! partition, so equality and hashing go through it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    assignment: Vec<u8>,
    parts: usize,
}

impl Partition {
    /// Canonicalizes arbitrary labels by order of first appearance.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut map: Vec<(usize, u8)> = Vec::new();
        let mut assignment = Vec::with_capacity(labels.len());
        for &l in labels {
            let code = match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, c)) => c,
                None => {
                    if map.len() >= u8::MAX as usize {
                        return Err(Error::InvalidArguments("too many parts".into()));
                    }
                    let c = map.len() as u8;
                    map.push((l, c));
                    c
                }
            };
            assignment.push(code);
        }
        Ok(Partition {
            parts: map.len(),
            assignment,
        })
    }

    /// Builds from disjoint parts covering `0..n`.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (j, part) in parts.iter().enumerate() {
            for &x in part {
                if x >= n || labels[x] != usize::MAX {
                    return Err(Error::InvalidArguments(format!("element {x} misplaced")));
                }
                labels[x] = j;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidArguments("parts do not cover all elements".into()));
        }
        Partition::from_labels(&labels)
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts
    }

    pub fn part_of(&self, x: usize) -> usize {
        self.assignment[x] as usize
    }

    pub fn labels(&self) -> Vec<usize> {
        self.assignment.iter().map(|&a| a as usize).collect()
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.parts];
        for (i, &a) in self.assignment.iter().enumerate() {
            parts[a as usize].push(i);
        }
        parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.parts];
        for &a in &self.assignment {
            sizes[a as usize] += 1;
        }
        sizes
    }

    /// Moves `x` into part `to` (a part index of `self`). Returns `None` when
    /// `to` is `x`'s own part or the move would empty a part.
    pub fn moved(&self, x: usize, to: usize) -> Option<Partition> {
        let from = self.part_of(x);
        if from == to || to >= self.parts {
            return None;
        }
        if self.assignment.iter().filter(|&&a| a as usize == from).count() < 2 {
            return None;
        }
        let mut labels = self.labels();
        labels[x] = to;
        Partition::from_labels(&labels).ok()
    }

    /// All partitions reachable by one element move, without emptying a part.
    pub fn neighbors(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for to in 0..self.parts {
                if let Some(p) = self.moved(x, to) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Restriction to the given elements (relabeled `0..k` in order).
    pub fn restrict(&self, elements: &[usize]) -> Partition {
        let labels: Vec<usize> = elements.iter().map(|&x| self.part_of(x)).collect();
        Partition::from_labels(&labels).expect("restriction of a valid partition")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.assignment.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses a comma-separated label list such as `0,0,1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArguments(format!("bad partition label {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_labels(&labels)
    }
}

/// Restricted-growth strings of `n` elements with exactly `r` blocks, in
/// lexicographic order.
pub struct RPartitions {
    n: usize,
    r: usize,
    current: Option<Vec<u8>>,
}

impl RPartitions {
    fn first(n: usize, r: usize) -> Vec<u8> {
        // 0,...,0,1,2,...,r-1
        let mut a = vec![0u8; n];
        for k in 1..r {
            a[n - r + k] = k as u8;
        }
        a
    }

    /// Lexicographic successor, or `None` after the last string.
    fn successor(&self, a: &[u8]) -> Option<Vec<u8>> {
        let n = self.n;
        let r = self.r;
        // prefix maxima
        let mut prefix_max = vec![0u8; n];
        let mut m = 0u8;
        for i in 0..n {
            m = m.max(a[i]);
            prefix_max[i] = m;
        }
        for i in (1..n).rev() {
            let limit = (prefix_max[i - 1] as usize + 1).min(r - 1);
            if (a[i] as usize) < limit {
                let v = a[i] + 1;
                let new_max = prefix_max[i - 1].max(v) as usize;
                let missing = r - 1 - new_max;
                if n - i - 1 < missing {
                    continue;
                }
                let mut b = a[..i].to_vec();
                b.push(v);
                b.resize(n, 0);
                for k in 0..missing {
                    b[n - missing + k] = (new_max + 1 + k) as u8;
                }
                return Some(b);
            }
        }
        None
    }
}

impl Iterator for RPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = self.successor(&cur);
        Some(Partition {
            assignment: cur,
            parts: self.r,
        })
    }
}

/// Every partition of `n` elements into exactly `r` nonempty parts, once.
pub fn enumerate_r_partitions(n: usize, r: usize) -> Result<RPartitions> {
    if r < 1 || r > n {
        return Err(Error::InvalidArguments(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    if r > u8::MAX as usize {
        return Err(Error::InvalidArguments("too many parts".into()));
    }
    Ok(RPartitions {
        n,
        r,
        current: Some(RPartitions::first(n, r)),
    })
}

/// Maximum-weight perfect matching on a square matrix (Hungarian method).
/// Returns the column assigned to each row.
pub(crate) fn max_weight_assignment(weights: &[Vec<i64>]) -> Vec<usize> {
    let k = weights.len();
    if k == 0 {
        return Vec::new();
    }
    // minimize cost = -weight; potentials u, v; p[j] = row matched to column j (1-based)
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; k + 1];
    let mut v = vec![0i64; k + 1];
    let mut p = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=k {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = -weights[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; k];
    for j in 1..=k {
        assignment[p[j] - 1] = j - 1;
    }
    assignment
}

/// Régnier's partition distance: `n` minus the largest total overlap of a
/// part-to-part correspondence.
pub fn partition_distance(p: &Partition, q: &Partition) -> Result<usize> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch(p.len(), q.len()));
    }
    let k = p.num_parts().max(q.num_parts());
    let mut overlap = vec![vec![0i64; k]; k];
    for x in 0..p.len() {
        overlap[p.part_of(x)][q.part_of(x)] += 1;
    }
    let matched: i64 = max_weight_assignment(&overlap)
        .iter()
        .enumerate()
        .map(|(i, &j)| overlap[i][j])
        .sum();
    Ok(p.len() - matched as usize)
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); r + 1];
    row[0] = BigUint::one();
    for _ in 0..n {
        for k in (1..=r).rev() {
            row[k] = &row[k] * k + &row[k - 1];
        }
        row[0] = BigUint::zero();
    }
    row[r].clone()
}

/// 2-associated Stirling numbers: partitions into `r` blocks of size >= 2.
pub fn stirling2_assoc(n: usize, r: usize) -> BigUint {
    // S2(n, k) = k S2(n-1, k) + (n-1) S2(n-2, k-1)
    let mut table = vec![vec![BigUint::zero(); r + 1]; n + 1];
    table[0][0] = BigUint::one();
    for m in 1..=n {
        for k in 1..=r {
            let mut v = &table[m - 1][k] * k;
            if m >= 2 {
                v += &table[m - 2][k - 1] * (m - 1);
            }
            table[m][k] = v;
        }
    }
    table[n][r].clone()
}

fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form edge count of `G[S, r]`, valid under `r <= n/2`.
pub fn abstract_edge_count(n: usize, r: usize) -> Result<BigUint> {
    if r < 1 || r > n {
        return Err(Error::InvalidArguments(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    if 2 * r > n {
        return Err(Error::HypothesisViolated { n, r });
    }
    Ok(edge_count_formula(n, r))
}

fn edge_count_formula(n: usize, r: usize) -> BigUint {
    let mut total = BigUint::zero();
    for k in 0..r {
        total += binomial_big(n, k) * stirling2_assoc(n - k, r - k) * (n - k) * (r - 1);
    }
    total / 2u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    ClosedForm,
    Enumeration,
}

/// Edge count of `G[S, r]`: the closed form when its hypothesis holds,
/// otherwise counted over all single-element moves.
pub fn edge_count(n: usize, r: usize) -> Result<(BigUint, CountMethod)> {
    match abstract_edge_count(n, r) {
        Ok(v) => Ok((v, CountMethod::ClosedForm)),
        Err(Error::HypothesisViolated { .. }) => {
            Ok((BigUint::from(brute_force_edge_count(n, r)?), CountMethod::Enumeration))
        }
        Err(e) => Err(e),
    }
}

/// Number of unordered pairs of `r`-partitions at distance 1, by
/// generating every single-element move.
pub fn brute_force_edge_count(n: usize, r: usize) -> Result<u64> {
    let mut twice = 0u64;
    for p in enumerate_r_partitions(n, r)? {
        twice += p.neighbors().into_iter().collect::<HashSet<_>>().len() as u64;
    }
    Ok(twice / 2)
}

/// Diameter of `G[S, r]`.
pub fn abstract_diameter(n: usize, r: usize) -> Result<usize> {
    if r < 1 || r > n {
        return Err(Error::InvalidArguments(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok(if n + 2 <= 2 * r {
        2 * n - 2 * r
    } else {
        n - n.div_ceil(r)
    })
}

/// Degree of `p` in `G[S, r]`: elements outside singleton parts can move to
/// any of the other `r-1` parts.
pub fn abstract_degree(p: &Partition) -> usize {
    let r = p.num_parts();
    p.part_sizes()
        .iter()
        .filter(|&&s| s != 1)
        .map(|&s| s * (r - 1))
        .sum()
}
