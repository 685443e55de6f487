//! Spring-embedder layout over graph-theoretic distances.
//!
//! Positions nodes so that Euclidean distances approximate hop distances,
//! by minimizing the classic spring energy
//!
//! ```text
//! E = Σ_{i<j} ½ · k_ij · (‖p_i − p_j‖ − l_ij)²
//! ```
//!
//! with ideal lengths `l_ij = L · d_ij` (the longest shortest path spans
//! the drawing side) and stiffness `k_ij = K / d_ij²`. Minimization moves
//! one node at a time — always the one with the steepest energy gradient —
//! by a damped 2×2 Newton step with a gradient-descent fallback.
//!
//! Disconnected graphs are laid out one component at a time and the
//! component drawings are then packed onto shelves without overlap.

// index loops here walk flat row-major tables in step with computed
// offsets; iterator forms would bury the subscripts that mirror the math
#![allow(clippy::needless_range_loop)]

use crate::factors::connected_components;
use crate::simgraph::HeteroGraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A 2-D position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Node positions in graph node order.
pub type Positions = Vec<Point>;

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutParams {
    /// Nominal side length of one component's drawing area.
    pub side: f64,
    /// Global spring stiffness `K`.
    pub spring_k: f64,
    /// Convergence bound on the largest gradient norm.
    pub tolerance: f64,
    /// Outer-iteration budget per node (total budget is `n` times this).
    pub max_outer_per_node: usize,
    /// Newton/backtracking steps allowed per node visit.
    pub max_inner: usize,
    /// Seed for the initial-placement jitter.
    pub seed: u64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            side: 1.0,
            spring_k: 1.0,
            tolerance: 1e-4,
            max_outer_per_node: 1000,
            max_inner: 50,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult {
    pub positions: Positions,
    /// Total outer iterations spent across all components.
    pub iterations: usize,
    /// Largest gradient norm at termination, freshly recomputed.
    pub max_gradient: f64,
    /// Final spring energy summed over components.
    pub energy: f64,
}

/// All-pairs hop distances by breadth-first search.
///
/// `None` marks pairs in different components. `adj` is a symmetric
/// neighbor-list representation.
pub fn hop_distances(adj: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    let n = adj.len();
    let mut all = Vec::with_capacity(n);
    for start in 0..n {
        let mut dist = vec![None; n];
        dist[start] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        all.push(dist);
    }
    all
}

/// Lay out a graph; disconnected components are solved independently
/// and packed side by side. Positions come back in node order.
pub fn kk_layout(graph: &HeteroGraph, params: &LayoutParams) -> LayoutResult {
    let n = graph.n_nodes();
    if n == 0 {
        return LayoutResult {
            positions: Vec::new(),
            iterations: 0,
            max_gradient: 0.0,
            energy: 0.0,
        };
    }
    let adj = graph.adjacency();
    let comps = connected_components(&adj);

    let mut comp_positions: Vec<Positions> = Vec::with_capacity(comps.len());
    let mut iterations = 0usize;
    let mut max_gradient = 0.0f64;
    let mut energy = 0.0f64;

    for (ci, comp) in comps.iter().enumerate() {
        if comp.len() == 1 {
            comp_positions.push(vec![Point::new(params.side / 2.0, params.side / 2.0)]);
            continue;
        }
        // component-local adjacency
        let mut local_of = vec![usize::MAX; n];
        for (li, &g) in comp.iter().enumerate() {
            local_of[g] = li;
        }
        let local_adj: Vec<Vec<usize>> = comp
            .iter()
            .map(|&g| adj[g].iter().map(|&v| local_of[v]).collect())
            .collect();
        let dist = hop_distances(&local_adj);
        let seed = params.seed.wrapping_add((ci as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let solved = solve_component(&dist, params, seed);
        iterations += solved.iterations;
        max_gradient = max_gradient.max(solved.max_gradient);
        energy += solved.energy;
        comp_positions.push(solved.positions);
    }

    let packed = pack_components(&comp_positions, params.side);

    let mut positions = vec![Point::new(0.0, 0.0); n];
    for (comp, placed) in comps.iter().zip(&packed) {
        for (&g, &p) in comp.iter().zip(placed) {
            positions[g] = p;
        }
    }
    LayoutResult {
        positions,
        iterations,
        max_gradient,
        energy,
    }
}

/// Translate component drawings onto shelves so their padded bounding
/// boxes are disjoint. Input and output are positions per component, in
/// the same order; only translations are applied. Components are packed
/// largest bounding box first into rows of width `2 · side · √(count)`.
pub fn pack_components(component_positions: &[Positions], side: f64) -> Vec<Positions> {
    let pad = 0.25 * side;
    let n_comps = component_positions.len();
    if n_comps == 0 {
        return Vec::new();
    }
    struct Cell {
        index: usize,
        min_x: f64,
        min_y: f64,
        w: f64,
        h: f64,
    }
    let mut cells: Vec<Cell> = component_positions
        .iter()
        .enumerate()
        .map(|(index, pos)| {
            let min_x = pos.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
            let max_x = pos.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
            let min_y = pos.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
            let max_y = pos.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
            Cell {
                index,
                min_x,
                min_y,
                w: (max_x - min_x) + pad,
                h: (max_y - min_y) + pad,
            }
        })
        .collect();
    cells.sort_by(|a, b| {
        (b.w * b.h)
            .partial_cmp(&(a.w * a.h))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.index.cmp(&b.index))
    });

    let wrap = 2.0 * side * (n_comps as f64).sqrt();
    let mut out: Vec<Positions> = component_positions.to_vec();
    let mut cursor_x = 0.0f64;
    let mut shelf_y = 0.0f64;
    let mut shelf_h = 0.0f64;
    for cell in &cells {
        if cursor_x > 0.0 && cursor_x + cell.w > wrap {
            shelf_y += shelf_h;
            cursor_x = 0.0;
            shelf_h = 0.0;
        }
        // place the bounding box at pad/2 inside its cell
        let dx = cursor_x + pad / 2.0 - cell.min_x;
        let dy = shelf_y + pad / 2.0 - cell.min_y;
        for p in &mut out[cell.index] {
            p.x += dx;
            p.y += dy;
        }
        cursor_x += cell.w;
        shelf_h = shelf_h.max(cell.h);
    }
    out
}

/// Spring energy of a connected graph at the given positions.
///
/// Uses the same ideal lengths and stiffnesses as [`kk_layout`], so for
/// a connected graph this reproduces the energy the solver reports.
/// `None` when the graph is disconnected, has fewer than two nodes, or
/// the position count does not match.
pub fn kk_energy(graph: &HeteroGraph, positions: &[Point], params: &LayoutParams) -> Option<f64> {
    let springs = whole_graph_springs(graph, params)?;
    if positions.len() != springs.n {
        return None;
    }
    Some(springs.energy(positions))
}

/// Analytic gradient of [`kk_energy`] per node, under the same
/// preconditions.
pub fn kk_gradient(
    graph: &HeteroGraph,
    positions: &[Point],
    params: &LayoutParams,
) -> Option<Vec<Point>> {
    let springs = whole_graph_springs(graph, params)?;
    if positions.len() != springs.n {
        return None;
    }
    Some(
        (0..springs.n)
            .map(|m| {
                let (gx, gy) = springs.gradient(positions, m);
                Point::new(gx, gy)
            })
            .collect(),
    )
}

fn whole_graph_springs(graph: &HeteroGraph, params: &LayoutParams) -> Option<Springs> {
    let n = graph.n_nodes();
    if n < 2 {
        return None;
    }
    let dist = hop_distances(&graph.adjacency());
    for row in &dist {
        if row.iter().any(|d| d.is_none()) {
            return None;
        }
    }
    Some(springs_from_dist(&dist, params))
}

struct SolvedComponent {
    positions: Positions,
    iterations: usize,
    max_gradient: f64,
    energy: f64,
}

/// Minimize the spring energy of one connected component.
///
/// `dist` holds hop distances; every pair must be reachable.
/// Ideal lengths and stiffnesses from a hop-distance table: the graph
/// diameter maps to `side`, and stiffness falls off with the square of
/// the hop distance.
fn springs_from_dist(dist: &[Vec<Option<usize>>], params: &LayoutParams) -> Springs {
    let n = dist.len();
    let max_d = dist
        .iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .expect("component has at least one pair") as f64;
    let unit = params.side / max_d;

    let mut l = vec![0.0f64; n * n];
    let mut k = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = dist[i][j].expect("connected component") as f64;
            l[i * n + j] = unit * d;
            k[i * n + j] = params.spring_k / (d * d);
        }
    }
    Springs { n, l, k }
}

fn solve_component(dist: &[Vec<Option<usize>>], params: &LayoutParams, seed: u64) -> SolvedComponent {
    let n = dist.len();
    let solver = springs_from_dist(dist, params);

    // circle start with seeded jitter to break symmetric degeneracies
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = params.side / 2.0;
    let radius = params.side / 2.0;
    let step_angle = std::f64::consts::TAU / n as f64;
    let mut pos: Positions = (0..n)
        .map(|i| {
            let jitter: f64 = rng.random_range(-0.25..0.25);
            let a = step_angle * (i as f64 + jitter);
            Point::new(center + radius * a.cos(), center + radius * a.sin())
        })
        .collect();

    let mut grad: Vec<(f64, f64)> = (0..n).map(|m| solver.gradient(&pos, m)).collect();
    let max_outer = params.max_outer_per_node.saturating_mul(n);
    let mut iterations = 0usize;

    loop {
        let (mut m, mut dm) = argmax_norm(&grad);
        if dm <= params.tolerance {
            // cached gradients drift as neighbors move; certify with a
            // fresh recompute before declaring convergence
            for (i, g) in grad.iter_mut().enumerate() {
                *g = solver.gradient(&pos, i);
            }
            let (m2, dm2) = argmax_norm(&grad);
            if dm2 <= params.tolerance {
                break;
            }
            m = m2;
            dm = dm2;
        }
        if iterations >= max_outer {
            break;
        }
        iterations += 1;
        solver.optimize_node(m, dm, &mut pos, &mut grad, params);
    }

    for (i, g) in grad.iter_mut().enumerate() {
        *g = solver.gradient(&pos, i);
    }
    let (_, max_gradient) = argmax_norm(&grad);
    SolvedComponent {
        positions: pos.clone(),
        iterations,
        max_gradient,
        energy: solver.energy(&pos),
    }
}

fn argmax_norm(grad: &[(f64, f64)]) -> (usize, f64) {
    let mut best = (0usize, 0.0f64);
    for (i, g) in grad.iter().enumerate() {
        let norm = g.0.hypot(g.1);
        if norm > best.1 {
            best = (i, norm);
        }
    }
    best
}

/// Pairwise spring tables for one component.
struct Springs {
    n: usize,
    l: Vec<f64>,
    k: Vec<f64>,
}

const MIN_DIST: f64 = 1e-12;

impl Springs {
    fn energy(&self, pos: &[Point]) -> f64 {
        let mut e = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let d = pos[i].distance(&pos[j]);
                let s = d - self.l[i * self.n + j];
                e += 0.5 * self.k[i * self.n + j] * s * s;
            }
        }
        e
    }

    /// Energy of the springs incident to node `m` with `m` at `p`.
    fn local_energy(&self, pos: &[Point], m: usize, p: Point) -> f64 {
        let mut e = 0.0;
        for i in 0..self.n {
            if i == m {
                continue;
            }
            let d = p.distance(&pos[i]).max(MIN_DIST);
            let s = d - self.l[m * self.n + i];
            e += 0.5 * self.k[m * self.n + i] * s * s;
        }
        e
    }

    fn gradient(&self, pos: &[Point], m: usize) -> (f64, f64) {
        let mut gx = 0.0;
        let mut gy = 0.0;
        for i in 0..self.n {
            if i == m {
                continue;
            }
            let dx = pos[m].x - pos[i].x;
            let dy = pos[m].y - pos[i].y;
            let d = dx.hypot(dy).max(MIN_DIST);
            let coeff = self.k[m * self.n + i] * (1.0 - self.l[m * self.n + i] / d);
            gx += coeff * dx;
            gy += coeff * dy;
        }
        (gx, gy)
    }

    /// One spring's pull on `i` from node `m` sitting at `pm`.
    fn pull(&self, pos: &[Point], i: usize, m: usize, pm: Point) -> (f64, f64) {
        let dx = pos[i].x - pm.x;
        let dy = pos[i].y - pm.y;
        let d = dx.hypot(dy).max(MIN_DIST);
        let coeff = self.k[i * self.n + m] * (1.0 - self.l[i * self.n + m] / d);
        (coeff * dx, coeff * dy)
    }

    fn hessian(&self, pos: &[Point], m: usize) -> (f64, f64, f64) {
        let (mut hxx, mut hxy, mut hyy) = (0.0, 0.0, 0.0);
        for i in 0..self.n {
            if i == m {
                continue;
            }
            let dx = pos[m].x - pos[i].x;
            let dy = pos[m].y - pos[i].y;
            let d = dx.hypot(dy).max(MIN_DIST);
            let d3 = d * d * d;
            let kk = self.k[m * self.n + i];
            let ll = self.l[m * self.n + i];
            hxx += kk * (1.0 - ll * dy * dy / d3);
            hyy += kk * (1.0 - ll * dx * dx / d3);
            hxy += kk * ll * dx * dy / d3;
        }
        (hxx, hxy, hyy)
    }

    /// Move node `m` to `target`, keeping every cached gradient current.
    /// A move costs O(n): each other node swaps m's old spring pull for
    /// the new one, and m's own gradient is recomputed.
    fn move_node(&self, pos: &mut [Point], grad: &mut [(f64, f64)], m: usize, target: Point) {
        let old = pos[m];
        for i in 0..self.n {
            if i == m {
                continue;
            }
            let before = self.pull(pos, i, m, old);
            let after = self.pull(pos, i, m, target);
            grad[i].0 += after.0 - before.0;
            grad[i].1 += after.1 - before.1;
        }
        pos[m] = target;
        grad[m] = self.gradient(pos, m);
    }

    /// Newton-iterate node `m` until its own gradient is within tolerance
    /// or the inner budget runs out. Steps that would raise the node's
    /// local energy fall back to backtracking gradient descent.
    fn optimize_node(
        &self,
        m: usize,
        start_norm: f64,
        pos: &mut [Point],
        grad: &mut [(f64, f64)],
        params: &LayoutParams,
    ) {
        let mut norm = start_norm;
        for _ in 0..params.max_inner {
            if norm <= params.tolerance {
                return;
            }
            let g = grad[m];
            let (hxx, hxy, hyy) = self.hessian(pos, m);
            let det = hxx * hyy - hxy * hxy;
            let here = pos[m];
            let e_here = self.local_energy(pos, m, here);

            let mut next: Option<Point> = None;
            if det.abs() > 1e-12 * (hxx.abs() + hyy.abs()).max(1.0) {
                let dx = (hxy * g.1 - hyy * g.0) / det;
                let dy = (hxy * g.0 - hxx * g.1) / det;
                let cand = Point::new(here.x + dx, here.y + dy);
                if self.local_energy(pos, m, cand) <= e_here + 1e-9 {
                    next = Some(cand);
                }
            }
            if next.is_none() {
                // backtracking descent along -g
                let scale = 0.5 / norm;
                let mut t = 1.0f64;
                for _ in 0..20 {
                    let cand = Point::new(here.x - t * scale * g.0, here.y - t * scale * g.1);
                    if self.local_energy(pos, m, cand) < e_here {
                        next = Some(cand);
                        break;
                    }
                    t *= 0.5;
                }
            }
            match next {
                Some(p) => {
                    self.move_node(pos, grad, m, p);
                    norm = grad[m].0.hypot(grad[m].1);
                }
                None => return, // no descent found; give the turn back
            }
        }
    }
}
