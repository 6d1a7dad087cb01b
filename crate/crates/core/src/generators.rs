//! Named and random point configurations.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::geometry::{affine_dependence_kernel, in_general_position, tverberg_number, PointConfig};
use crate::io::AnyConfig;
use crate::scalar::{parse_rational, Cyclotomic, Rational, Scalar};

/// Regeneration attempts before a generator gives up.
pub const MAX_ATTEMPTS: usize = 100;

/// Identifier of the random generator recorded in experiment outputs.
pub const RNG_NAME: &str = "ChaCha8";

/// Vertices `(cos 2πk/n, sin 2πk/n)`, counterclockwise from `(1, 0)`,
/// exactly in the `4n`-th cyclotomic field.
pub fn regular_polygon(n: usize) -> Result<PointConfig<Cyclotomic>> {
    if n < 3 {
        return Err(Error::InvalidArguments(format!("a polygon needs at least 3 vertices, got {n}")));
    }
    let order = 4 * n as u32;
    let points = (0..n as i64)
        .map(|k| vec![Cyclotomic::cos_turn(order, 4 * k), Cyclotomic::sin_turn(order, 4 * k)])
        .collect();
    PointConfig::new(2, points)
}

/// An affine image of the regular `n`-gon with vertices
/// `(cos 2πk/n, cos 2π(k-1)/n)`.
///
/// The map `(x, y) ↦ (x, x cos(2π/n) + y sin(2π/n))` is invertible, so every
/// hull-intersection question has the same answer as for
/// [`regular_polygon`], while the coordinates live in the much smaller
/// field `Q(ζ_n)`.
pub fn regular_polygon_affine(n: usize) -> Result<PointConfig<Cyclotomic>> {
    if n < 3 {
        return Err(Error::InvalidArguments(format!("a polygon needs at least 3 vertices, got {n}")));
    }
    let order = n as u32;
    let points = (0..n as i64)
        .map(|k| vec![Cyclotomic::cos_turn(order, k), Cyclotomic::cos_turn(order, k - 1)])
        .collect();
    PointConfig::new(2, points)
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Default cluster perturbation, relative to the unit simplex edge.
pub fn default_cluster_scale() -> Rational {
    Rational::new(1.into(), 1000.into())
}

/// Resolution of cluster perturbations: each one is `scale · k / 10^6`.
const CLUSTER_GRID: u32 = 6;

/// `r-1` points near each vertex of the standard simplex `0, e_1, …, e_d`,
/// followed by one point near its barycenter: `Tv(d, r)` points in all.
pub fn perturbed_clusters(d: usize, r: usize, scale: &Rational, seed: u64) -> Result<PointConfig<Rational>> {
    if d < 1 || r < 2 {
        return Err(Error::InvalidArguments(format!("need d >= 1 and r >= 2, got d={d}, r={r}")));
    }
    if !scale.is_positive() {
        return Err(Error::InvalidArguments("perturbation scale must be positive".into()));
    }
    let grid = pow10(CLUSTER_GRID);
    let grid_i64 = 10i64.pow(CLUSTER_GRID);
    let mut centers: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    centers.push(vec![<Rational as Scalar>::zero(); d]);
    for i in 0..d {
        let mut e = vec![<Rational as Scalar>::zero(); d];
        e[i] = <Rational as Scalar>::one();
        centers.push(e);
    }
    let bary = Rational::new(1.into(), BigInt::from(d + 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        rng.set_stream(attempt as u64);
        let mut jitter = |c: &Rational| -> Rational {
            let k: i64 = rng.random_range(-grid_i64..=grid_i64);
            c + scale * Rational::new(BigInt::from(k), grid.clone())
        };
        let mut points = Vec::with_capacity(tverberg_number(d, r));
        for center in &centers {
            for _ in 0..r - 1 {
                points.push(center.iter().map(&mut jitter).collect::<Vec<_>>());
            }
        }
        points.push((0..d).map(|_| jitter(&bary)).collect());
        let config = PointConfig::new(d, points)?;
        if in_general_position(&config)? {
            return Ok(config);
        }
    }
    Err(Error::DegenerateAfterRetries(MAX_ATTEMPTS))
}

/// Index of the barycenter point in [`perturbed_clusters`] output.
pub fn cluster_barycenter_index(d: usize, r: usize) -> usize {
    tverberg_number(d, r) - 1
}

/// Resampling attempts per point in [`random_uniform`].
const RESAMPLE_LIMIT: usize = 1000;

/// `n` points with coordinates `k / bound`, `k` uniform in
/// `[-bound, bound]`. Points are drawn one at a time and redrawn while they
/// break general position.
pub fn random_uniform(n: usize, d: usize, seed: u64, bound: u64) -> Result<PointConfig<Rational>> {
    if n < 1 || d < 1 || bound < 1 {
        return Err(Error::InvalidArguments(format!(
            "need n, d, bound >= 1, got n={n}, d={d}, bound={bound}"
        )));
    }
    let bound_i = i64::try_from(bound).map_err(|_| Error::InvalidArguments("bound too large".into()))?;
    let den = BigInt::from(bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while points.len() < n {
        let mut accepted = false;
        for _ in 0..RESAMPLE_LIMIT {
            let candidate: Vec<Rational> = (0..d)
                .map(|_| Rational::new(BigInt::from(rng.random_range(-bound_i..=bound_i)), den.clone()))
                .collect();
            if keeps_general_position(&points, &candidate, d) {
                points.push(candidate);
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::DegenerateAfterRetries(RESAMPLE_LIMIT));
        }
    }
    PointConfig::new(d, points)
}

/// Every subset of at most `d+1` points containing `candidate` stays
/// affinely independent.
fn keeps_general_position(points: &[Vec<Rational>], candidate: &[Rational], d: usize) -> bool {
    let k = points.len().min(d);
    for others in Combinations::new(points.len(), k) {
        let mut pts: Vec<Vec<Rational>> = others.iter().map(|&i| points[i].clone()).collect();
        pts.push(candidate.to_vec());
        let sub = PointConfig::new(d, pts).expect("consistent dimensions");
        if !affine_dependence_kernel(&sub).is_empty() {
            return false;
        }
    }
    true
}

/// A configuration recipe, expressible as a CLI flag or a JSON stanza.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    RegularPolygon {
        n: usize,
    },
    PerturbedClusters {
        d: usize,
        r: usize,
        /// Exact rational such as `1/1000`.
        scale: String,
        seed: u64,
    },
    RandomUniform {
        n: usize,
        d: usize,
        seed: u64,
        bound: u64,
    },
    FromFile {
        path: String,
    },
}

/// Default coordinate bound for random configurations.
pub const DEFAULT_BOUND: u64 = 1000;

impl GeneratorSpec {
    /// Parses `regular-polygon:8`, `clusters:d=2,r=3[,scale=1/1000][,seed=0]`,
    /// `random:n=7,d=2[,seed=0][,bound=1000]` or `file:<path>`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArguments(format!("generator {text:?}: {m}"));
        let (kind, args) = text.split_once(':').unwrap_or((text, ""));
        let mut fields = std::collections::BTreeMap::new();
        if kind != "file" && kind != "regular-polygon" {
            for item in args.split(',').filter(|s| !s.is_empty()) {
                let (k, v) = item.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                fields.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let num = |fields: &std::collections::BTreeMap<String, String>, key: &str, default: Option<u64>| -> Result<u64> {
            match fields.get(key) {
                Some(v) => v.parse().map_err(|_| bad(&format!("{key} must be an integer"))),
                None => default.ok_or_else(|| bad(&format!("missing {key}"))),
            }
        };
        let spec = match kind {
            "regular-polygon" | "polygon" => GeneratorSpec::RegularPolygon {
                n: args.trim().parse().map_err(|_| bad("expected vertex count"))?,
            },
            "clusters" => GeneratorSpec::PerturbedClusters {
                d: num(&fields, "d", None)? as usize,
                r: num(&fields, "r", None)? as usize,
                scale: fields.get("scale").cloned().unwrap_or_else(|| "1/1000".into()),
                seed: num(&fields, "seed", Some(0))?,
            },
            "random" => GeneratorSpec::RandomUniform {
                n: num(&fields, "n", None)? as usize,
                d: num(&fields, "d", Some(2))? as usize,
                seed: num(&fields, "seed", Some(0))?,
                bound: num(&fields, "bound", Some(DEFAULT_BOUND))?,
            },
            "file" => GeneratorSpec::FromFile { path: args.to_string() },
            _ => return Err(bad("unknown generator")),
        };
        if let Some(unknown) = fields.keys().find(|k| !["d", "r", "n", "scale", "seed", "bound"].contains(&k.as_str())) {
            return Err(bad(&format!("unknown key {unknown}")));
        }
        Ok(spec)
    }

    /// Seed used by the generator, if it is randomized.
    pub fn seed(&self) -> Option<u64> {
        match self {
            GeneratorSpec::PerturbedClusters { seed, .. } | GeneratorSpec::RandomUniform { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn generate(&self) -> Result<AnyConfig> {
        Ok(match self {
            GeneratorSpec::RegularPolygon { n } => AnyConfig::Cyclotomic(regular_polygon(*n)?),
            GeneratorSpec::PerturbedClusters { d, r, scale, seed } => {
                let scale = parse_rational(scale)
                    .ok_or_else(|| Error::InvalidArguments(format!("bad scale {scale:?}")))?;
                AnyConfig::Rational(perturbed_clusters(*d, *r, &scale, *seed)?)
            }
            GeneratorSpec::RandomUniform { n, d, seed, bound } => {
                AnyConfig::Rational(random_uniform(*n, *d, *seed, *bound)?)
            }
            GeneratorSpec::FromFile { path } => crate::io::read_config_file(std::path::Path::new(path))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{orientation, strong_general_convex_position_2d};

    #[test]
    fn square_is_exact() {
        let sq = regular_polygon(4).unwrap();
        let expect = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        for (p, (x, y)) in sq.points().iter().zip(expect) {
            assert_eq!(p[0], Cyclotomic::from_i64(x));
            assert_eq!(p[1], Cyclotomic::from_i64(y));
        }
    }

    #[test]
    fn polygons_on_unit_circle_and_ccw() {
        for n in 3..=10 {
            let poly = regular_polygon(n).unwrap();
            for p in poly.points() {
                assert_eq!(p[0].mul(&p[0]).add(&p[1].mul(&p[1])), Cyclotomic::one());
            }
            assert_eq!(orientation(&poly, &[0, 1, 2]).unwrap(), 1);
            assert!(in_general_position(&poly).unwrap());
        }
    }

    #[test]
    fn concurrent_diagonals() {
        assert!(!strong_general_convex_position_2d(&regular_polygon(6).unwrap()).unwrap());
        assert!(!strong_general_convex_position_2d(&regular_polygon(8).unwrap()).unwrap());
        assert!(strong_general_convex_position_2d(&regular_polygon(7).unwrap()).unwrap());
    }

    #[test]
    fn affine_image_preserves_orientations() {
        for n in [5, 6, 8] {
            let a = regular_polygon(n).unwrap();
            let b = regular_polygon_affine(n).unwrap();
            for t in Combinations::new(n, 3) {
                assert_eq!(orientation(&a, &t).unwrap(), orientation(&b, &t).unwrap());
            }
        }
    }

    #[test]
    fn clusters_have_tverberg_size() {
        let c = perturbed_clusters(2, 3, &default_cluster_scale(), 7).unwrap();
        assert_eq!(c.len(), 7);
        assert!(in_general_position(&c).unwrap());
        assert_eq!(c, perturbed_clusters(2, 3, &default_cluster_scale(), 7).unwrap());
    }

    #[test]
    fn random_is_deterministic_and_generic() {
        let a = random_uniform(8, 2, 42, 1000).unwrap();
        assert_eq!(a, random_uniform(8, 2, 42, 1000).unwrap());
        assert_ne!(a, random_uniform(8, 2, 43, 1000).unwrap());
        assert!(in_general_position(&a).unwrap());
        let line = random_uniform(6, 1, 1, 5).unwrap();
        assert!(in_general_position(&line).unwrap());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(GeneratorSpec::parse("regular-polygon:8").unwrap(), GeneratorSpec::RegularPolygon { n: 8 });
        assert_eq!(
            GeneratorSpec::parse("clusters:d=2,r=3").unwrap(),
            GeneratorSpec::PerturbedClusters { d: 2, r: 3, scale: "1/1000".into(), seed: 0 }
        );
        let spec = GeneratorSpec::parse("random:n=7,d=2,seed=5").unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GeneratorSpec>(&json).unwrap(), spec);
        assert!(GeneratorSpec::parse("random:n=7,q=1").is_err());
        assert!(GeneratorSpec::parse("hexagon:6").is_err());
    }
}
