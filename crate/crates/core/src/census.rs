//! Nerve censuses over all `r`-partitions of a configuration.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::graph::for_each_partition;
use crate::scalar::Scalar;
use crate::tverberg::{nerve, TriangleNerve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveCensus {
    pub parts: usize,
    pub total: u64,
    /// Partition count per canonical face list.
    pub classes: BTreeMap<Vec<u32>, u64>,
    /// For three parts, counts in [`TriangleNerve::ALL`] order.
    pub triangle: Option<[u64; 5]>,
}

pub fn nerve_census<S: Scalar>(config: &PointConfig<S>, r: usize, cap: u64) -> Result<NerveCensus> {
    let n = config.len();
    if r < 2 || n < r {
        return Err(Error::InvalidArguments(format!("need 2 <= r <= n, got n={n}, r={r}")));
    }
    let mut classes = BTreeMap::new();
    let mut triangle = (r == 3).then_some([0u64; 5]);
    let mut total = 0;
    let mut failure = None;
    for_each_partition(
        n,
        r,
        cap,
        |p| nerve(config, p),
        |_, class| match class {
            Ok(class) => {
                total += 1;
                if let (Some(counts), Some(t)) = (triangle.as_mut(), class.triangle_class()) {
                    counts[t.index()] += 1;
                }
                *classes.entry(class.canonical).or_insert(0) += 1;
            }
            Err(e) => failure = Some(e),
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(NerveCensus {
        parts: r,
        total,
        classes,
        triangle,
    })
}

impl NerveCensus {
    /// Named triangle counts, when the census has three parts.
    pub fn triangle_named(&self) -> Option<Vec<(&'static str, u64)>> {
        let counts = self.triangle?;
        Some(TriangleNerve::ALL.iter().map(|t| (t.name(), counts[t.index()])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::regular_polygon;
    use crate::partition::stirling2;
    use num_traits::ToPrimitive;

    #[test]
    fn hexagon_census_sums() {
        let census = nerve_census(&regular_polygon(6).unwrap(), 3, 1_000_000).unwrap();
        let counts = census.triangle.unwrap();
        assert_eq!(counts.iter().sum::<u64>(), stirling2(6, 3).to_u64().unwrap());
        assert_eq!(census.classes.values().sum::<u64>(), census.total);
        assert_eq!(census.classes.len(), counts.iter().filter(|&&c| c > 0).count());
    }
}
