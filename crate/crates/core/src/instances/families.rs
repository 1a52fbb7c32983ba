use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::InstanceError;
use crate::topology::{NodeId, Topology};

/// Restarts allowed before a regular degree sequence is declared infeasible.
const REGULAR_ATTEMPTS: usize = 100_000;

/// Path `0 - 1 - ... - (nodes-1)`.
pub fn gen_line(nodes: usize) -> Result<Topology, InstanceError> {
    if nodes < 2 {
        return Err(InstanceError::InvalidParameter(format!(
            "a line needs at least 2 nodes, got {nodes}"
        )));
    }
    Ok(Topology::new(nodes, (1..nodes).map(|i| (i - 1, i)))?)
}

/// Cycle `0 - 1 - ... - (nodes-1) - 0`.
pub fn gen_cycle(nodes: usize) -> Result<Topology, InstanceError> {
    if nodes < 3 {
        return Err(InstanceError::InvalidParameter(format!(
            "a cycle needs at least 3 nodes, got {nodes}"
        )));
    }
    let edges = (1..nodes).map(|i| (i - 1, i)).chain([(0, nodes - 1)]);
    Ok(Topology::new(nodes, edges)?)
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn gen_star(leaves: usize) -> Result<Topology, InstanceError> {
    if leaves < 1 {
        return Err(InstanceError::InvalidParameter("a star needs a leaf".into()));
    }
    Ok(Topology::new(leaves + 1, (1..=leaves).map(|i| (0, i)))?)
}

/// Spider with center 0; each leg's nodes are numbered consecutively
/// outward from the center.
pub fn gen_spider(leg_lengths: &[usize]) -> Result<Topology, InstanceError> {
    if leg_lengths.len() < 3 {
        return Err(InstanceError::NotASpider(leg_lengths.len()));
    }
    if leg_lengths.contains(&0) {
        return Err(InstanceError::InvalidParameter("spider legs need length >= 1".into()));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in leg_lengths {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(Topology::new(next, edges)?)
}

/// Random labeled tree from a uniformly drawn Prüfer sequence.
pub fn gen_tree(nodes: usize, seed: u64) -> Result<Topology, InstanceError> {
    if nodes < 2 {
        return Err(InstanceError::InvalidParameter(format!(
            "a tree needs at least 2 nodes, got {nodes}"
        )));
    }
    if nodes == 2 {
        return Ok(Topology::new(2, [(0, 1)])?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<NodeId> = (0..nodes - 2).map(|_| rng.gen_range(0..nodes)).collect();
    let mut degree = vec![1usize; nodes];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<NodeId> =
        (0..nodes).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(nodes - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    edges.push((u, v));
    Ok(Topology::new(nodes, edges)?)
}

/// Connected random `degree`-regular graph by stub matching: loops and
/// repeated edges restart the pairing, as do disconnected results.
pub fn gen_regular(nodes: usize, degree: usize, seed: u64) -> Result<Topology, InstanceError> {
    let infeasible = InstanceError::InfeasibleRegular { nodes, degree };
    if degree == 0 || degree >= nodes || (nodes * degree) % 2 == 1 || (degree == 1 && nodes > 2) {
        return Err(infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<NodeId> = (0..nodes).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    for _ in 0..REGULAR_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(NodeId, NodeId)> = stubs
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let topology = Topology::new(nodes, edges)?;
        if topology.is_connected() {
            return Ok(topology);
        }
    }
    Err(infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let line = gen_line(9).unwrap();
        assert_eq!((0..9).filter(|&v| line.degree(v) == 1).count(), 2);
        assert_eq!((0..9).filter(|&v| line.degree(v) == 2).count(), 7);
        let spider = gen_spider(&[1, 1, 1]).unwrap();
        assert_eq!(spider, gen_star(3).unwrap());
        assert_eq!(gen_spider(&[2, 2]), Err(InstanceError::NotASpider(2)));
        let cycle = gen_cycle(5).unwrap();
        assert_eq!(cycle.regular_degree(), Some(2));
    }

    #[test]
    fn trees_are_trees_and_seeded() {
        for seed in 0..50 {
            let n = 2 + (seed as usize % 30);
            let t = gen_tree(n, seed).unwrap();
            assert!(t.is_tree());
            assert_eq!(t, gen_tree(n, seed).unwrap());
        }
    }

    #[test]
    fn regular_graphs() {
        let g = gen_regular(10, 3, 1).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_connected());
        assert_eq!(g, gen_regular(10, 3, 1).unwrap());
        assert!(gen_regular(7, 3, 0).is_err());
        assert!(gen_regular(4, 4, 0).is_err());
    }
}
