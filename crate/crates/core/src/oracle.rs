//! Independent reference computations used to cross-check the fast paths.
//!
//! Nothing here is on a hot path; the implementations favour being obviously
//! correct over being quick.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

/// Largest input accepted by [`emd_brute_force`].
pub const BRUTE_FORCE_MAX: usize = 8;

/// EMD between equal-size samples as the cheapest perfect matching, by
/// trying every permutation.
pub fn emd_brute_force(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() || x.len() > BRUTE_FORCE_MAX {
        return Err(Error::InvalidParameter(format!(
            "brute force needs equal sizes in 1..={BRUTE_FORCE_MAX}"
        )));
    }
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut perm, 0, &mut |p| {
        let cost: f64 = p
            .iter()
            .enumerate()
            .map(|(i, &j)| (x[i] - y[j]).abs())
            .sum();
        best = best.min(cost);
    });
    Ok(best / n as f64)
}

fn permute(p: &mut [usize], at: usize, visit: &mut dyn FnMut(&[usize])) {
    if at == p.len() {
        visit(p);
        return;
    }
    for i in at..p.len() {
        p.swap(at, i);
        permute(p, at + 1, visit);
        p.swap(at, i);
    }
}

/// EMD between arbitrary-size samples as a min-cost transportation problem:
/// each `x` point supplies `|y|` units, each `y` point demands `|x|` units,
/// and the optimal cost is divided by `|x| * |y|`.
pub fn emd_transport(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySequence);
    }
    let (a, b) = (x.len(), y.len());
    // Nodes: source, x points, y points, sink.
    let source = 0;
    let sink = a + b + 1;
    let mut g = FlowGraph::new(a + b + 2);
    for (i, &xi) in x.iter().enumerate() {
        g.add_edge(source, 1 + i, b as i64, 0.0);
        for (j, &yj) in y.iter().enumerate() {
            g.add_edge(1 + i, 1 + a + j, (a * b) as i64, (xi - yj).abs());
        }
    }
    for j in 0..b {
        g.add_edge(1 + a + j, sink, a as i64, 0.0);
    }
    let (flow, cost) = g.min_cost_flow(source, sink);
    debug_assert_eq!(flow, (a * b) as i64);
    Ok(cost / (a * b) as f64)
}

struct Edge {
    to: usize,
    cap: i64,
    cost: f64,
}

struct FlowGraph {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowGraph {
    fn new(nodes: usize) -> Self {
        Self {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: f64) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap, cost });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Successive shortest paths with Bellman-Ford.
    fn min_cost_flow(&mut self, s: usize, t: usize) -> (i64, f64) {
        let nodes = self.adj.len();
        let (mut flow, mut cost) = (0i64, 0.0);
        loop {
            let mut dist = vec![f64::INFINITY; nodes];
            let mut via = vec![usize::MAX; nodes];
            dist[s] = 0.0;
            for _ in 0..nodes {
                let mut changed = false;
                for u in 0..nodes {
                    if dist[u].is_infinite() {
                        continue;
                    }
                    for &e in &self.adj[u] {
                        let edge = &self.edges[e];
                        if edge.cap > 0 && dist[u] + edge.cost < dist[edge.to] - 1e-12 {
                            dist[edge.to] = dist[u] + edge.cost;
                            via[edge.to] = e;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[t].is_infinite() {
                return (flow, cost);
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                cost += push as f64 * self.edges[e].cost;
                v = self.edges[e ^ 1].to;
            }
            flow += push;
        }
    }
}

/// Expected squared loss of the selective predictor for the mean on a
/// length-`2^k` sequence, summed directly over scales and blocks.
pub fn selective_mean_loss(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "length {n} is not a power of two >= 2"
        )));
    }
    let k = n.trailing_zeros();
    let mut prefix = vec![0.0; n + 1];
    for (i, v) in x.iter().enumerate() {
        prefix[i + 1] = prefix[i] + v;
    }
    let mut total = 0.0;
    for kp in 1..=k {
        let width = 1usize << kp;
        let h = width / 2;
        let blocks = n / width;
        let mut scale_sum = 0.0;
        for b in 0..blocks {
            let t = b * width;
            let first = (prefix[t + h] - prefix[t]) / h as f64;
            let second = (prefix[t + width] - prefix[t + h]) / h as f64;
            scale_sum += (first - second).powi(2);
        }
        total += scale_sum / blocks as f64;
    }
    Ok(total / f64::from(k))
}

/// Local search for sequences that maximize [`selective_mean_loss`]. Moves
/// flip a coordinate to 0, 1 or a uniform value and are kept when they do not
/// decrease the loss; each move is scored in `O(k)`.
pub struct HillClimber {
    x: Vec<f64>,
    k: u32,
    /// `half_sums[kp - 1][block] = (first half sum, second half sum)`.
    half_sums: Vec<Vec<(f64, f64)>>,
}

impl HillClimber {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "length {n} is not a power of two >= 2"
            )));
        }
        let k = n.trailing_zeros();
        let half_sums = (1..=k)
            .map(|kp| {
                let width = 1usize << kp;
                let h = width / 2;
                x.chunks(width)
                    .map(|c| (c[..h].iter().sum(), c[h..].iter().sum()))
                    .collect()
            })
            .collect();
        Ok(Self { x, k, half_sums })
    }

    pub fn sequence(&self) -> &[f64] {
        &self.x
    }

    pub fn loss(&self) -> f64 {
        let mut total = 0.0;
        for (i, scale) in self.half_sums.iter().enumerate() {
            let h = (1u64 << i) as f64;
            let s: f64 = scale.iter().map(|(a, b)| ((a - b) / h).powi(2)).sum();
            total += s / scale.len() as f64;
        }
        total / f64::from(self.k)
    }

    /// Change in loss if `x[i]` became `value`.
    fn delta(&self, i: usize, value: f64) -> f64 {
        let d = value - self.x[i];
        let mut total = 0.0;
        for (s, scale) in self.half_sums.iter().enumerate() {
            let h = 1usize << s;
            let block = i / (2 * h);
            let (a, b) = scale[block];
            let (na, nb) = if i % (2 * h) < h {
                (a + d, b)
            } else {
                (a, b + d)
            };
            let hf = h as f64;
            let before = ((a - b) / hf).powi(2);
            let after = ((na - nb) / hf).powi(2);
            total += (after - before) / scale.len() as f64;
        }
        total / f64::from(self.k)
    }

    fn set(&mut self, i: usize, value: f64) {
        let d = value - self.x[i];
        for (s, scale) in self.half_sums.iter_mut().enumerate() {
            let h = 1usize << s;
            let slot = &mut scale[i / (2 * h)];
            if i % (2 * h) < h {
                slot.0 += d;
            } else {
                slot.1 += d;
            }
        }
        self.x[i] = value;
    }

    pub fn climb(&mut self, moves: usize, rng: &mut dyn RngCore) {
        let n = self.x.len();
        for _ in 0..moves {
            let i = rng.gen_range(0..n);
            let value = match rng.gen_range(0..3) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen::<f64>(),
            };
            if self.delta(i, value) >= 0.0 {
                self.set(i, value);
            }
        }
    }
}
