//! Reduced visibility graph over the obstacle vertices and the four terminals.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::geom::{orientation, segment_in_free_space, Point, PointKey, Polygon};
use crate::scalar::{cmp_scalar, Scalar};
use crate::scenario::Scenario;

/// Whether the segment `pq` avoids every obstacle interior.
pub fn visible<T: Scalar>(p: Point<T>, q: Point<T>, obstacles: &[Polygon<T>]) -> bool {
    segment_in_free_space(p, q, obstacles)
}

/// Graph indices of the four terminals. Coincident terminals share an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Terminals {
    pub ra: usize,
    pub rb: usize,
    pub da: usize,
    pub db: usize,
}

#[derive(Clone, Debug)]
pub struct VisGraph<T> {
    vertices: Vec<Point<T>>,
    /// Obstacle and vertex index for obstacle vertices.
    corner: Vec<Option<(usize, usize)>>,
    adjacency: Vec<Vec<(usize, T)>>,
    terminals: Terminals,
    index: HashMap<PointKey, usize>,
}

impl<T: Scalar> VisGraph<T> {
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Point<T> {
        self.vertices[v]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn terminals(&self) -> Terminals {
        self.terminals
    }

    /// Neighbours of `v` with edge weights, sorted by neighbour index.
    pub fn neighbors(&self, v: usize) -> &[(usize, T)] {
        &self.adjacency[v]
    }

    pub fn visible_verts(&self, v: usize) -> Vec<usize> {
        self.adjacency[v].iter().map(|&(u, _)| u).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_obstacle_vertex(&self, v: usize) -> bool {
        self.corner[v].is_some()
    }

    /// Index of the vertex at `p`, exact match first, then within tolerance.
    pub fn index_of(&self, p: Point<T>) -> Option<usize> {
        self.index
            .get(&p.key())
            .copied()
            .or_else(|| self.vertices.iter().position(|q| q.approx_eq(p)))
    }

    /// Longest edge incident to each vertex.
    pub fn longest_incident_edge(&self) -> Vec<T> {
        self.adjacency
            .iter()
            .map(|adj| adj.iter().fold(T::zero(), |m, &(_, w)| m.max(w)))
            .collect()
    }

    /// Dijkstra distances from `source`; unreachable vertices get infinity.
    pub fn shortest_dists_from(&self, source: usize) -> Vec<T> {
        #[derive(PartialEq)]
        struct Item<T>(T, usize);
        impl<T: Scalar> Eq for Item<T> {}
        impl<T: Scalar> PartialOrd for Item<T> {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl<T: Scalar> Ord for Item<T> {
            fn cmp(&self, other: &Self) -> Ordering {
                cmp_scalar(other.0, self.0).then(other.1.cmp(&self.1))
            }
        }

        let mut dist = vec![T::infinity(); self.len()];
        dist[source] = T::zero();
        let mut heap = BinaryHeap::new();
        heap.push(Item(T::zero(), source));
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Item(nd, v));
                }
            }
        }
        dist
    }

    /// Vertex and edge lists as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<[f64; 2]> = self.vertices.iter().map(|p| p.to_f64()).collect();
        let mut edges = Vec::new();
        for (u, adj) in self.adjacency.iter().enumerate() {
            for &(v, w) in adj {
                if u < v {
                    edges.push(serde_json::json!([u, v, w.as_f64()]));
                }
            }
        }
        let t = self.terminals;
        serde_json::json!({
            "vertices": vertices,
            "edges": edges,
            "terminals": {"ra": t.ra, "rb": t.rb, "da": t.da, "db": t.db},
        })
    }
}

/// Whether segment `u -> v` is tangent to the obstacle at vertex `v`, i.e.
/// both obstacle neighbours of `v` lie on one side of the line.
fn tangent_at<T: Scalar>(u: Point<T>, v: Point<T>, poly: &Polygon<T>, i: usize) -> bool {
    let (a, b) = poly.neighbors(i);
    orientation(u, v, a).sign() * orientation(u, v, b).sign() >= 0
}

/// Builds the reduced visibility graph, or the full one when `full` is set.
pub fn build_graph<T: Scalar>(s: &Scenario<T>, full: bool) -> VisGraph<T> {
    let mut vertices = Vec::new();
    let mut corner = Vec::new();
    for (k, poly) in s.obstacles.iter().enumerate() {
        for (i, &v) in poly.vertices().iter().enumerate() {
            vertices.push(v);
            corner.push(Some((k, i)));
        }
    }
    let mut terminal_ids = [0usize; 4];
    let mut is_terminal = vec![false; vertices.len()];
    for (slot, p) in [s.ra, s.rb, s.da, s.db].into_iter().enumerate() {
        let id = match vertices.iter().position(|q: &Point<T>| q.approx_eq(p)) {
            Some(id) => id,
            None => {
                vertices.push(p);
                corner.push(None);
                is_terminal.push(false);
                vertices.len() - 1
            }
        };
        is_terminal[id] = true;
        terminal_ids[slot] = id;
    }

    let n = vertices.len();
    let mut adjacency: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let add = |adjacency: &mut Vec<Vec<(usize, T)>>, i: usize, j: usize| {
        let w = vertices[i].dist(vertices[j]);
        adjacency[i].push((j, w));
        adjacency[j].push((i, w));
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let (p, q) = (vertices[i], vertices[j]);
            let boundary_edge = match (corner[i], corner[j]) {
                (Some((ki, ii)), Some((kj, ij))) if ki == kj => {
                    let m = s.obstacles[ki].len();
                    (ii + 1) % m == ij || (ij + 1) % m == ii
                }
                _ => false,
            };
            if boundary_edge {
                add(&mut adjacency, i, j);
                continue;
            }
            if !visible(p, q, &s.obstacles) {
                continue;
            }
            let keep = full
                || is_terminal[i]
                || is_terminal[j]
                || {
                    let ti = corner[i].is_none_or(|(k, idx)| tangent_at(q, p, &s.obstacles[k], idx));
                    let tj = corner[j].is_none_or(|(k, idx)| tangent_at(p, q, &s.obstacles[k], idx));
                    ti && tj
                };
            if keep {
                add(&mut adjacency, i, j);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_by_key(|&(v, _)| v);
    }
    let index = vertices.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
    VisGraph {
        vertices,
        corner,
        adjacency,
        terminals: Terminals {
            ra: terminal_ids[0],
            rb: terminal_ids[1],
            da: terminal_ids[2],
            db: terminal_ids[3],
        },
        index,
    }
}

/// Reduced visibility graph of a scenario.
pub fn build_rvg<T: Scalar>(s: &Scenario<T>) -> VisGraph<T> {
    build_graph(s, false)
}
