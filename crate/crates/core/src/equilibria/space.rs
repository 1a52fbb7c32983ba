//! Enumeration of occupant-class states and a fast integer evaluator for
//! equilibrium status, welfare and improving jumps.

use crate::game::{ClassState, GameInstance};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};

const STUBBORN_BIT: u8 = 0x80;

/// Every class state of a game: stubborn nodes fixed, the strategic type
/// counts distributed over the free nodes.
pub(crate) struct StateSpace {
    template: Vec<u8>,
    free: Vec<NodeId>,
    /// Remaining quota per code; index 0 counts empty nodes.
    quota: Vec<usize>,
}

impl StateSpace {
    pub fn new(game: &GameInstance) -> Self {
        let template = game.stubborn_state().codes().to_vec();
        let free = game.free_nodes();
        let counts = game.strategic_type_counts();
        let placed: usize = counts.iter().sum();
        let mut quota = vec![free.len() - placed];
        quota.extend(counts);
        StateSpace {
            template,
            free,
            quota,
        }
    }

    /// Multinomial count of states, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        let mut total: u128 = 1;
        let mut remaining = self.free.len() as u128;
        for &q in &self.quota {
            match binomial(remaining, q as u128).and_then(|b| total.checked_mul(b)) {
                Some(t) => total = t,
                None => return u128::MAX,
            }
            remaining -= q as u128;
        }
        total
    }

    /// Calls `visit` on each state in lexicographic order of the free-node
    /// codes (empty first, then types ascending). Stops early when `visit`
    /// returns false.
    pub fn for_each(&self, mut visit: impl FnMut(&[u8]) -> bool) {
        let mut codes = self.template.clone();
        let mut quota = self.quota.clone();
        self.fill(0, &mut codes, &mut quota, &mut visit);
    }

    fn fill(
        &self,
        i: usize,
        codes: &mut [u8],
        quota: &mut [usize],
        visit: &mut impl FnMut(&[u8]) -> bool,
    ) -> bool {
        if i == self.free.len() {
            return visit(codes);
        }
        let node = self.free[i];
        for c in 0..quota.len() {
            if quota[c] == 0 {
                continue;
            }
            quota[c] -= 1;
            codes[node] = c as u8;
            let go_on = self.fill(i + 1, codes, quota, visit);
            quota[c] += 1;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Evaluates class states given as raw codes with integer arithmetic only.
pub(crate) struct Evaluator<'a> {
    topology: &'a Topology,
    n: usize,
    adjacent: Vec<bool>,
    num_types: usize,
    /// Common denominator of all utilities, when it fits.
    scale: Option<u128>,
    empties: Vec<NodeId>,
    /// Per empty node: occupied-neighbor count, then per-type counts.
    counts: Vec<u32>,
}

impl<'a> Evaluator<'a> {
    pub fn new(topology: &'a Topology, num_types: usize) -> Self {
        let n = topology.node_count();
        let mut adjacent = vec![false; n * n];
        for &(u, v) in topology.edges() {
            adjacent[u * n + v] = true;
            adjacent[v * n + u] = true;
        }
        let mut scale = Some(1u128);
        for d in 2..=topology.max_degree() as u128 {
            scale = scale.and_then(|l| (l / gcd(l, d)).checked_mul(d));
        }
        // leave headroom for summing over all nodes
        let scale = scale.filter(|&l| l.checked_mul(n as u128 + 1).is_some());
        Evaluator {
            topology,
            n,
            adjacent,
            num_types,
            scale,
            empties: Vec::new(),
            counts: Vec::new(),
        }
    }

    fn type_of(code: u8) -> usize {
        (code & !STUBBORN_BIT) as usize
    }

    fn is_strategic(code: u8) -> bool {
        code != 0 && code & STUBBORN_BIT == 0
    }

    /// `(different, occupied)` for a type-`t` occupant of `node`.
    fn own_counts(&self, codes: &[u8], node: NodeId, t: usize) -> (u32, u32) {
        let mut diff = 0;
        let mut occ = 0;
        for &w in self.topology.neighbors(node) {
            let c = codes[w];
            if c != 0 {
                occ += 1;
                if Self::type_of(c) != t {
                    diff += 1;
                }
            }
        }
        (diff, occ)
    }

    fn prepare_empties(&mut self, codes: &[u8]) {
        let stride = self.num_types + 2;
        self.empties.clear();
        self.counts.clear();
        for e in 0..self.n {
            if codes[e] != 0 {
                continue;
            }
            self.empties.push(e);
            let base = self.counts.len();
            self.counts.resize(base + stride, 0);
            for &w in self.topology.neighbors(e) {
                let c = codes[w];
                if c != 0 {
                    self.counts[base] += 1;
                    self.counts[base + 1 + Self::type_of(c)] += 1;
                }
            }
        }
    }

    /// Whether a type-`t` agent at `from` with utility `diff/occ` improves by
    /// jumping to the `slot`-th empty node.
    fn improves(&self, from: NodeId, t: usize, diff: u32, occ: u32, slot: usize) -> bool {
        let stride = self.num_types + 2;
        let e = self.empties[slot];
        let base = slot * stride;
        let mut o = self.counts[base];
        let mut same = self.counts[base + 1 + t];
        if self.adjacent[from * self.n + e] {
            o -= 1;
            same -= 1;
        }
        let d = o - same;
        if o == 0 || d == 0 {
            return false;
        }
        if occ == 0 {
            return true;
        }
        // d/o > diff/occ
        (d as u64) * (occ as u64) > (diff as u64) * (o as u64)
    }

    pub fn is_equilibrium(&mut self, codes: &[u8]) -> bool {
        self.first_jump(codes).is_none()
    }

    /// The first improving jump in `(from, to)` order.
    pub fn first_jump(&mut self, codes: &[u8]) -> Option<(NodeId, NodeId)> {
        let mut found = None;
        self.scan_jumps(codes, |from, to| {
            found = Some((from, to));
            false
        });
        found
    }

    /// All improving jumps in `(from, to)` order.
    pub fn jumps(&mut self, codes: &[u8], out: &mut Vec<(NodeId, NodeId)>) {
        out.clear();
        self.scan_jumps(codes, |from, to| {
            out.push((from, to));
            true
        });
    }

    fn scan_jumps(&mut self, codes: &[u8], mut emit: impl FnMut(NodeId, NodeId) -> bool) {
        self.prepare_empties(codes);
        for from in 0..self.n {
            let c = codes[from];
            if !Self::is_strategic(c) {
                continue;
            }
            let t = Self::type_of(c);
            let (diff, occ) = self.own_counts(codes, from, t);
            if occ > 0 && diff == occ {
                continue;
            }
            for slot in 0..self.empties.len() {
                if self.improves(from, t, diff, occ, slot) && !emit(from, self.empties[slot]) {
                    return;
                }
            }
        }
    }

    /// Welfare in units of `1/scale`, or `None` if no common scale fits.
    pub fn scaled_welfare(&self, codes: &[u8]) -> Option<u128> {
        let scale = self.scale?;
        let mut total = 0u128;
        for v in 0..self.n {
            let c = codes[v];
            if !Self::is_strategic(c) {
                continue;
            }
            let (diff, occ) = self.own_counts(codes, v, Self::type_of(c));
            if occ > 0 {
                total += scale / occ as u128 * diff as u128;
            }
        }
        Some(total)
    }

    pub fn scale(&self) -> Option<u128> {
        self.scale
    }

    pub fn welfare(&self, codes: &[u8]) -> Rational {
        match (self.scaled_welfare(codes), self.scale) {
            (Some(w), Some(l)) => Rational::new(w as i128, l as i128),
            _ => crate::utility::welfare_of_state(
                self.topology,
                &ClassState::from_codes(codes.to_vec().into_boxed_slice()),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;

    #[test]
    fn state_count_is_multinomial() {
        let t = Topology::new(6, (1..6).map(|i| (i - 1, i))).unwrap();
        let game = GameInstance::all_strategic(t, &[2, 2]).unwrap();
        let space = StateSpace::new(&game);
        // 6! / (2! 2! 2!)
        assert_eq!(space.size(), 90);
        let mut seen = std::collections::HashSet::new();
        space.for_each(|c| seen.insert(c.to_vec()));
        assert_eq!(seen.len(), 90);
    }

    #[test]
    fn fast_welfare_matches_exact() {
        let t = Topology::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 5)]).unwrap();
        let game = GameInstance::all_strategic(t.clone(), &[2, 1, 1]).unwrap();
        let eval = Evaluator::new(&t, 3);
        StateSpace::new(&game).for_each(|c| {
            let state = ClassState::from_codes(c.to_vec().into_boxed_slice());
            assert_eq!(eval.welfare(c), crate::utility::welfare_of_state(&t, &state));
            true
        });
    }
}
