use rand::seq::SliceRandom;
use rand::Rng as _;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

/// Default number of configuration-model draws before giving up.
pub const REGULAR_ATTEMPTS: u64 = 1_000_000;

/// `G(n, p)`: each pair `u < v`, in lexicographic order, is kept by its own
/// Bernoulli draw.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("edge probability {p} outside [0, 1]")));
    }
    let mut r = rng::from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniform `d`-regular graph by the configuration model with rejection of
/// non-simple pairings.
pub fn sample_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    sample_regular_with_budget(n, d, seed, REGULAR_ATTEMPTS)
}

pub fn sample_regular_with_budget(n: usize, d: usize, seed: u64, attempts: u64) -> Result<Graph> {
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::domain(format!("degree {d} needs more than {n} vertices")));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::domain(format!("n·d = {} is odd", n * d)));
    }
    let mut r = rng::from_seed(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let mut adj = vec![Vec::with_capacity(d); n];
    'attempt: for _ in 0..attempts {
        points.shuffle(&mut r);
        adj.iter_mut().for_each(Vec::clear);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                continue 'attempt;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let g = Graph::from_edges(n, points.chunks_exact(2).map(|p| (p[0], p[1])))?;
        debug_assert!((0..n).all(|v| g.degree(v) == d));
        return Ok(g);
    }
    Err(Error::resource("configuration-model attempts", attempts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        assert_eq!(sample_gnp(10, 0.0, 1).unwrap().m(), 0);
        assert_eq!(sample_gnp(10, 1.0, 1).unwrap(), Graph::complete(10));
        assert!(sample_gnp(3, 1.5, 1).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        assert_eq!(sample_gnp(50, 0.1, 42).unwrap(), sample_gnp(50, 0.1, 42).unwrap());
        assert_eq!(sample_regular(20, 3, 42).unwrap(), sample_regular(20, 3, 42).unwrap());
    }

    #[test]
    fn regular_outputs() {
        assert_eq!(sample_regular(4, 3, 7).unwrap(), Graph::complete(4));
        for seed in 0..50 {
            let g = sample_regular(30, 3, seed).unwrap();
            assert!((0..30).all(|v| g.degree(v) == 3));
        }
        assert!(sample_regular(5, 3, 0).is_err());
        assert!(sample_regular(3, 3, 0).is_err());
        assert!(matches!(
            sample_regular_with_budget(12, 10, 0, 1),
            Err(Error::Resource { .. }) | Ok(_)
        ));
    }
}
