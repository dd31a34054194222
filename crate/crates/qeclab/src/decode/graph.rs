//! Detector graphs: the matching-decoder view of a code.
//!
//! For one error sector (X errors seen by Z-like checks, or Z errors seen by
//! X-like checks), each qubit error flips at most two checks, so single
//! errors are edges between check nodes, or half-edges to the boundary when
//! only one check fires. Parallel qubits flipping the same check pair are
//! collapsed into one edge class with the combined odd-flip probability.
//!
//! Repeated noisy measurement extends the graph in time: the space-time
//! graph is the product of the spatial graph with a path of R rounds, so
//! shortest path lengths split into a spatial part plus `w_time * |dr|`.

use super::DecodeError;
use crate::bits::BitVec;
use crate::codes::StabilizerCode;
use crate::noise::ErrorModel;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    XErrors,
    ZErrors,
}

impl Sector {
    pub fn both() -> [Sector; 2] {
        [Sector::XErrors, Sector::ZErrors]
    }
}

#[derive(Debug, Clone)]
pub struct DetEdge {
    pub a: u32,
    /// None is the open boundary.
    pub b: Option<u32>,
    /// Qubits in this parallel class; the first is the correction
    /// representative.
    pub qubits: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct DetectorGraph {
    pub sector: Sector,
    /// Check indices (into the code's stabilizer generators) forming nodes;
    /// virtual nodes (closing checks) use u32::MAX here.
    pub checks: Vec<u32>,
    /// Map from check index to node id.
    pub node_of_check: Vec<Option<u32>>,
    pub edges: Vec<DetEdge>,
    /// Node ids of closing-check detectors, whose events are reconstructed
    /// as the per-round XOR of the stored nodes' events.
    pub virtual_nodes: Vec<u32>,
    /// Coordinates per node (stored checks inherit the code's check
    /// coordinates; virtual nodes carry their own).
    pub node_coords: Option<Vec<(i32, i32)>>,
}

impl DetectorGraph {
    /// Build the sector graph. Fails if some single error in this sector
    /// flips more than two checks (no matching structure).
    pub fn build(code: &StabilizerCode, sector: Sector) -> Result<DetectorGraph, DecodeError> {
        let n_checks = code.stabilizer_gens().len();
        let detecting_bit = |check: usize, q: usize| -> bool {
            let s = &code.stabilizer_gens()[check];
            match sector {
                Sector::XErrors => s.z_bits().get(q),
                Sector::ZErrors => s.x_bits().get(q),
            }
        };
        let mut node_of_check = vec![None; n_checks];
        let mut checks = Vec::new();
        for c in 0..n_checks {
            let relevant = match sector {
                Sector::XErrors => !code.stabilizer_gens()[c].z_bits().is_zero(),
                Sector::ZErrors => !code.stabilizer_gens()[c].x_bits().is_zero(),
            };
            if relevant {
                node_of_check[c] = Some(checks.len() as u32);
                checks.push(c as u32);
            }
        }
        let mut node_coords: Option<Vec<(i32, i32)>> = code.check_coords.as_ref().map(|cc| {
            checks.iter().map(|&c| cc[c as usize]).collect()
        });
        let mut virtual_nodes = Vec::new();
        let mut closing: Vec<(&crate::pauli::PauliOp, u32)> = Vec::new();
        for (op, coord) in &code.closing_checks {
            let relevant = match sector {
                Sector::XErrors => !op.z_bits().is_zero(),
                Sector::ZErrors => !op.x_bits().is_zero(),
            };
            if relevant {
                let node = checks.len() as u32;
                checks.push(u32::MAX);
                virtual_nodes.push(node);
                closing.push((op, node));
                if let Some(nc) = node_coords.as_mut() {
                    nc.push(*coord);
                }
            }
        }
        let closing_bit = |q: usize, node: u32| -> bool {
            closing.iter().any(|&(op, nd)| {
                nd == node
                    && match sector {
                        Sector::XErrors => op.z_bits().get(q),
                        Sector::ZErrors => op.x_bits().get(q),
                    }
            })
        };
        let mut classes: std::collections::BTreeMap<(u32, Option<u32>), Vec<u32>> =
            std::collections::BTreeMap::new();
        for q in 0..code.n() {
            let mut fired: Vec<u32> = (0..n_checks)
                .filter(|&c| detecting_bit(c, q))
                .map(|c| node_of_check[c].unwrap())
                .collect();
            for &(_, nd) in &closing {
                if closing_bit(q, nd) {
                    fired.push(nd);
                }
            }
            match fired.len() {
                0 => {} // undetectable in this sector
                1 => classes.entry((fired[0], None)).or_default().push(q as u32),
                2 => {
                    let (a, b) = (fired[0].min(fired[1]), fired[0].max(fired[1]));
                    classes.entry((a, Some(b))).or_default().push(q as u32);
                }
                n => {
                    return Err(DecodeError::NotMatchable {
                        qubit: q,
                        checks: n,
                    })
                }
            }
        }
        let edges = classes
            .into_iter()
            .map(|((a, b), qubits)| DetEdge { a, b, qubits })
            .collect();
        Ok(DetectorGraph {
            sector,
            checks,
            node_of_check,
            edges,
            virtual_nodes,
            node_coords,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.checks.len()
    }

    pub fn has_boundary(&self) -> bool {
        self.edges.iter().any(|e| e.b.is_none())
    }
}

/// Combined probability that an odd number of the qubits in an edge class
/// flip.
fn class_flip_prob(per_qubit: f64, count: usize) -> f64 {
    (1.0 - (1.0 - 2.0 * per_qubit).powi(count as i32)) / 2.0
}

/// Minus-log-odds weight; infinite for p = 0 (the edge is excluded).
pub fn odds_weight(p: f64) -> f64 {
    if p <= 0.0 {
        f64::INFINITY
    } else if p >= 1.0 {
        f64::NEG_INFINITY
    } else {
        ((1.0 - p) / p).ln()
    }
}

/// A detector graph weighted for a model, with precomputed all-pairs
/// shortest paths (space), boundary distances, and hop counts for the
/// cluster decoder.
#[derive(Debug, Clone)]
pub struct WeightedSector {
    pub graph: DetectorGraph,
    pub edge_weight: Vec<f64>,
    pub w_time: f64,
    /// dist[u * V + v]: spatial shortest-path weight.
    dist: Vec<f64>,
    /// hops[u * V + v]: unweighted spatial distance (cluster metric).
    hops: Vec<u16>,
    pub boundary_dist: Vec<f64>,
    /// Best first edge from each node toward the boundary.
    boundary_edge: Vec<u32>,
    /// adjacency: (edge index, other endpoint or NONE for boundary)
    adj: Vec<Vec<(u32, Option<u32>)>>,
}

const SCALE: f64 = (1u64 << 20) as f64;

/// Round a finite weight to the integer domain used by the matcher.
pub fn scale_weight(w: f64) -> i64 {
    (w * SCALE).round() as i64
}

impl WeightedSector {
    pub fn new(
        code: &StabilizerCode,
        sector: Sector,
        model: &ErrorModel,
    ) -> Result<WeightedSector, DecodeError> {
        let graph = DetectorGraph::build(code, sector)?;
        let per_qubit = match sector {
            Sector::XErrors => model.kind.x_flip_prob(),
            Sector::ZErrors => model.kind.z_flip_prob(),
        };
        let edge_weight: Vec<f64> = graph
            .edges
            .iter()
            .map(|e| odds_weight(class_flip_prob(per_qubit, e.qubits.len())))
            .collect();
        let w_time = odds_weight(model.q);
        let v = graph.n_nodes();
        let mut adj = vec![Vec::new(); v];
        for (ei, e) in graph.edges.iter().enumerate() {
            adj[e.a as usize].push((ei as u32, e.b));
            if let Some(b) = e.b {
                adj[b as usize].push((ei as u32, Some(e.a)));
            }
        }
        let mut ws = WeightedSector {
            graph,
            edge_weight,
            w_time,
            dist: vec![f64::INFINITY; v * v],
            hops: vec![u16::MAX; v * v],
            boundary_dist: vec![f64::INFINITY; v],
            boundary_edge: vec![u32::MAX; v],
            adj,
        };
        ws.compute_metrics();
        Ok(ws)
    }

    fn compute_metrics(&mut self) {
        let v = self.graph.n_nodes();
        // Weighted all-pairs by Dijkstra from each source.
        for src in 0..v {
            self.dijkstra(src);
            self.bfs_hops(src);
        }
        // Boundary distances: relax from every boundary edge.
        for node in 0..v {
            for &(ei, other) in &self.adj[node] {
                if other.is_none() {
                    let w = self.edge_weight[ei as usize];
                    if w < self.boundary_dist[node] {
                        self.boundary_dist[node] = w;
                        self.boundary_edge[node] = ei;
                    }
                }
            }
        }
        // Propagate: boundary reachable through interior paths.
        let direct: Vec<f64> = self.boundary_dist.clone();
        for node in 0..v {
            for t in 0..v {
                let via = self.dist[node * v + t] + direct[t];
                if via < self.boundary_dist[node] {
                    self.boundary_dist[node] = via;
                }
            }
        }
    }

    fn dijkstra(&mut self, src: usize) {
        let v = self.graph.n_nodes();
        let base = src * v;
        self.dist[base + src] = 0.0;
        let mut heap: BinaryHeap<(Reverse<OrdF64>, u32)> = BinaryHeap::new();
        heap.push((Reverse(OrdF64(0.0)), src as u32));
        while let Some((Reverse(OrdF64(d)), u)) = heap.pop() {
            if d > self.dist[base + u as usize] {
                continue;
            }
            for &(ei, other) in &self.adj[u as usize] {
                let Some(t) = other else { continue };
                let w = self.edge_weight[ei as usize];
                if !w.is_finite() {
                    continue;
                }
                let nd = d + w;
                if nd < self.dist[base + t as usize] {
                    self.dist[base + t as usize] = nd;
                    heap.push((Reverse(OrdF64(nd)), t));
                }
            }
        }
    }

    fn bfs_hops(&mut self, src: usize) {
        let v = self.graph.n_nodes();
        let base = src * v;
        self.hops[base + src] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src as u32);
        while let Some(u) = queue.pop_front() {
            let du = self.hops[base + u as usize];
            for &(ei, other) in &self.adj[u as usize] {
                let Some(t) = other else { continue };
                if !self.edge_weight[ei as usize].is_finite() {
                    continue;
                }
                if self.hops[base + t as usize] == u16::MAX {
                    self.hops[base + t as usize] = du + 1;
                    queue.push_back(t);
                }
            }
        }
    }

    pub fn spatial_dist(&self, a: u32, b: u32) -> f64 {
        self.dist[a as usize * self.graph.n_nodes() + b as usize]
    }

    pub fn spatial_hops(&self, a: u32, b: u32) -> u16 {
        self.hops[a as usize * self.graph.n_nodes() + b as usize]
    }

    pub fn adjacency(&self, node: u32) -> &[(u32, Option<u32>)] {
        &self.adj[node as usize]
    }

    /// Reconstruct a shortest spatial path from a to b; XOR the
    /// representative qubit of each edge walked into `flips`.
    pub fn walk_path(&self, a: u32, b: u32, flips: &mut BitVec) {
        let mut cur = a;
        let mut guard = 0;
        while cur != b {
            let need = self.spatial_dist(cur, b);
            let mut advanced = false;
            for &(ei, other) in &self.adj[cur as usize] {
                let Some(t) = other else { continue };
                let w = self.edge_weight[ei as usize];
                if !w.is_finite() {
                    continue;
                }
                if (w + self.spatial_dist(t, b) - need).abs() <= 1e-9 * (1.0 + need.abs()) {
                    flips.flip(self.graph.edges[ei as usize].qubits[0] as usize);
                    cur = t;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "no shortest-path step from {cur} to {b}");
            guard += 1;
            assert!(guard <= self.graph.n_nodes(), "path walk cycled");
        }
    }

    /// Walk from a node to the boundary along the cheapest route.
    pub fn walk_to_boundary(&self, a: u32, flips: &mut BitVec) {
        let mut cur = a;
        let mut guard = 0;
        loop {
            // Direct boundary edge if it is the optimal move.
            let be = self.boundary_edge[cur as usize];
            let direct = if be != u32::MAX {
                self.edge_weight[be as usize]
            } else {
                f64::INFINITY
            };
            let need = self.boundary_dist[cur as usize];
            if (direct - need).abs() <= 1e-9 * (1.0 + need.abs()) {
                flips.flip(self.graph.edges[be as usize].qubits[0] as usize);
                return;
            }
            let mut advanced = false;
            for &(ei, other) in &self.adj[cur as usize] {
                let Some(t) = other else { continue };
                let w = self.edge_weight[ei as usize];
                if !w.is_finite() {
                    continue;
                }
                if (w + self.boundary_dist[t as usize] - need).abs() <= 1e-9 * (1.0 + need.abs()) {
                    flips.flip(self.graph.edges[ei as usize].qubits[0] as usize);
                    cur = t;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "no boundary step from {cur}");
            guard += 1;
            assert!(guard <= self.graph.n_nodes(), "boundary walk cycled");
        }
    }
}

#[derive(PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_named_code, Family};
    use crate::noise::NoiseKind;

    #[test]
    fn surface_sector_structure() {
        let code = build_named_code(&Family::Surface { l: 3 }).unwrap();
        let g = DetectorGraph::build(&code, Sector::XErrors).unwrap();
        // Plaquette Z-checks: L(L-1) = 6 nodes; every qubit is one edge.
        assert_eq!(g.n_nodes(), 6);
        assert_eq!(g.edges.iter().map(|e| e.qubits.len()).sum::<usize>(), 13);
        assert!(g.has_boundary());
    }

    #[test]
    fn toric_closing_check_closes_graph() {
        let code = build_named_code(&Family::Toric { l: 3 }).unwrap();
        let g = DetectorGraph::build(&code, Sector::XErrors).unwrap();
        // L^2 - 1 stored plaquettes plus the reconstructed dependent one.
        assert_eq!(g.n_nodes(), 9);
        assert_eq!(g.virtual_nodes.len(), 1);
        // Periodic lattice: no boundary, every qubit joins two plaquettes.
        assert!(!g.has_boundary());
        assert!(g.edges.iter().all(|e| e.qubits.len() == 1));
        assert_eq!(g.edges.len(), 18);
    }

    #[test]
    fn bacon_shor_collapses_columns() {
        let code = build_named_code(&Family::BaconShor { n: 5 }).unwrap();
        let g = DetectorGraph::build(&code, Sector::XErrors).unwrap();
        // A 1D chain of the 4 double-column checks; 5 parallel classes of 5
        // qubits each (per column).
        assert_eq!(g.n_nodes(), 4);
        assert_eq!(g.edges.len(), 5);
        for e in &g.edges {
            assert_eq!(e.qubits.len(), 5);
        }
        assert_eq!(g.edges.iter().filter(|e| e.b.is_none()).count(), 2);
    }

    #[test]
    fn weights_match_log_odds() {
        let code = build_named_code(&Family::Surface { l: 5 }).unwrap();
        let model = ErrorModel::new(NoiseKind::BitFlip { p: 0.1 }, 0.01).unwrap();
        let ws = WeightedSector::new(&code, Sector::XErrors, &model).unwrap();
        let unit = (0.9f64 / 0.1).ln();
        for w in &ws.edge_weight {
            assert!((w - unit).abs() < 1e-12);
        }
        assert!((ws.w_time - (0.99f64 / 0.01).ln()).abs() < 1e-12);
        // Adjacent bulk plaquettes: distance one unit step.
        let (a, b) = (ws.graph.edges[0].a, ws.graph.edges[0].b);
        if let Some(b) = b {
            assert!((ws.spatial_dist(a, b) - unit).abs() < 1e-9);
        }
    }

    #[test]
    fn every_defect_can_reach_boundary_on_surface() {
        let code = build_named_code(&Family::Surface { l: 5 }).unwrap();
        let model = ErrorModel::noise_free_measurement(NoiseKind::BitFlip { p: 0.05 });
        let ws = WeightedSector::new(&code, Sector::XErrors, &model).unwrap();
        for node in 0..ws.graph.n_nodes() as u32 {
            assert!(ws.boundary_dist[node as usize].is_finite());
            let mut flips = BitVec::zeros(code.n());
            ws.walk_to_boundary(node, &mut flips);
            assert!(flips.popcount() >= 1);
        }
    }

    #[test]
    fn path_walk_reproduces_distance() {
        let code = build_named_code(&Family::Toric { l: 4 }).unwrap();
        let model = ErrorModel::noise_free_measurement(NoiseKind::BitFlip { p: 0.08 });
        let ws = WeightedSector::new(&code, Sector::XErrors, &model).unwrap();
        let unit = (0.92f64 / 0.08).ln();
        for a in 0..ws.graph.n_nodes() as u32 {
            for b in 0..ws.graph.n_nodes() as u32 {
                let mut flips = BitVec::zeros(code.n());
                ws.walk_path(a, b, &mut flips);
                let steps = (ws.spatial_dist(a, b) / unit).round() as usize;
                assert_eq!(flips.popcount(), steps);
            }
        }
    }
}
