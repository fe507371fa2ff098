//! A* search over taut cable configurations.
//!
//! A search node is a taut cable whose ends are the two robot positions,
//! together with the distance each robot has travelled. Expanding a node
//! moves either robot, or both, to a neighbouring graph vertex and tightens
//! the extended cable. The goal test is applied when a node is dequeued:
//! both ends at their destinations and the cable no longer than `ell`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cable::{cat_curve, CableError, TautCable, Tightener};
use crate::geom::{Point, Polyline};
use crate::scalar::{cmp_scalar, Scalar};
use crate::scenario::Scenario;
use crate::visgraph::{build_graph, VisGraph};

/// Expansion limit applied when pruning is disabled and no budget is given.
pub const DEFAULT_UNPRUNED_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    /// Uniform-cost search.
    None,
    /// Straight-line distance to the goal.
    Sld,
    /// Graph distance to the goal on the visibility graph.
    Spd,
    /// Optimal cost of a relaxed instance with a longer cable.
    Jr,
}

impl Heuristic {
    pub const ALL: [Heuristic; 4] = [Heuristic::None, Heuristic::Sld, Heuristic::Spd, Heuristic::Jr];

    pub fn as_str(self) -> &'static str {
        match self {
            Heuristic::None => "none",
            Heuristic::Sld => "sld",
            Heuristic::Spd => "spd",
            Heuristic::Jr => "jr",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "ucs" => Ok(Heuristic::None),
            "sld" => Ok(Heuristic::Sld),
            "spd" => Ok(Heuristic::Spd),
            "jr" => Ok(Heuristic::Jr),
            other => Err(format!("unknown heuristic '{other}' (expected none, sld, spd or jr)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanOptions {
    /// Drop nodes whose cable is too long to lie on any solution.
    pub prune: bool,
    /// Maximum number of expansions; `None` means unlimited when pruning and
    /// [`DEFAULT_UNPRUNED_BUDGET`] otherwise.
    pub node_budget: Option<usize>,
    /// Search the full visibility graph instead of the reduced one.
    pub full_graph: bool,
    /// Keep a copy of every expanded node in the result.
    pub record_expanded: bool,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self { prune: true, node_budget: None, full_graph: false, record_expanded: false }
    }
}

#[derive(Clone, Debug)]
pub struct SearchNode<T> {
    pub cable: TautCable<T>,
    pub ia: usize,
    pub ib: usize,
    pub cost_a: T,
    pub cost_b: T,
    pub parent: Option<usize>,
    pub f: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<T> {
    pub pi_a: Vec<Point<T>>,
    pub pi_b: Vec<Point<T>>,
    pub cost_a: T,
    pub cost_b: T,
    pub final_cable: TautCable<T>,
}

impl<T: Scalar> Solution<T> {
    pub fn max_cost(&self) -> T {
        self.cost_a.max(self.cost_b)
    }

    pub fn tau_a(&self) -> Polyline<T> {
        Polyline::new(self.pi_a.clone())
    }

    pub fn tau_b(&self) -> Polyline<T> {
        Polyline::new(self.pi_b.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub expanded: usize,
    pub generated: usize,
    pub pruned: usize,
    pub wall_time: Duration,
    pub budget_exhausted: bool,
}

/// Snapshot of an expanded node.
#[derive(Clone, Debug)]
pub struct ExpandedNode<T> {
    /// Search node index, shared with `parent` of other snapshots.
    pub id: usize,
    pub parent: Option<usize>,
    pub cable: TautCable<T>,
    pub cost_a: T,
    pub cost_b: T,
    pub f: T,
}

#[derive(Clone, Debug)]
pub struct PlanResult<T> {
    /// Optimal pair with each path pulled taut, or `None` if infeasible.
    pub solution: Option<Solution<T>>,
    /// The vertex sequences exactly as found by the search.
    pub raw: Option<Solution<T>>,
    pub stats: SearchStats,
    pub expanded_nodes: Vec<ExpandedNode<T>>,
}

#[derive(Clone, Debug)]
struct Entry<T> {
    f: T,
    g: T,
    key: Arc<[usize]>,
    seq: usize,
    id: usize,
}

impl<T: Scalar> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Entry<T> {}
impl<T: Scalar> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Entry<T> {
    // Reversed so that the max-heap pops the smallest entry.
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_scalar(other.f, self.f)
            .then_with(|| cmp_scalar(other.g, self.g))
            .then_with(|| other.key.cmp(&self.key))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Params<T> {
    ell: T,
    heuristic: Heuristic,
    prune: bool,
    budget: Option<usize>,
    record: bool,
}

struct Outcome<T> {
    nodes: Vec<SearchNode<T>>,
    goal: Option<usize>,
    stats: SearchStats,
    expanded: Vec<ExpandedNode<T>>,
}

/// Planner for one obstacle set and terminal layout.
///
/// The visibility graph, triangulation and distance tables are built once
/// and shared read-only, so a planner can serve many searches, including
/// concurrent ones and ones with different cable lengths.
#[derive(Clone, Debug)]
pub struct Planner<T> {
    s: Scenario<T>,
    g: Arc<VisGraph<T>>,
    tight: Arc<Tightener<T>>,
    to_da: Arc<Vec<T>>,
    to_db: Arc<Vec<T>>,
    reach: Arc<Vec<T>>,
}

impl<T: Scalar> Planner<T> {
    pub fn new(s: &Scenario<T>) -> Self {
        Self::with_graph(s, false)
    }

    pub fn with_graph(s: &Scenario<T>, full: bool) -> Self {
        let g = build_graph(s, full);
        let tight = Tightener::for_scenario(s);
        Self::from_parts(s, g, tight)
    }

    pub fn from_parts(s: &Scenario<T>, g: VisGraph<T>, tight: Tightener<T>) -> Self {
        let t = g.terminals();
        let to_da = g.shortest_dists_from(t.da);
        let to_db = g.shortest_dists_from(t.db);
        let reach = g.longest_incident_edge();
        Self {
            s: s.clone(),
            g: Arc::new(g),
            tight: Arc::new(tight),
            to_da: Arc::new(to_da),
            to_db: Arc::new(to_db),
            reach: Arc::new(reach),
        }
    }

    /// Same geometry with another cable length.
    ///
    /// The triangulation box is kept, which is sound for any length since
    /// taut cables stay within the hull of the graph vertices.
    pub fn with_ell(&self, ell: T) -> Self {
        Self { s: self.s.with_ell(ell), ..self.clone() }
    }

    pub fn scenario(&self) -> &Scenario<T> {
        &self.s
    }

    pub fn graph(&self) -> &VisGraph<T> {
        &self.g
    }

    pub fn tightener(&self) -> &Tightener<T> {
        &self.tight
    }

    pub fn root_cable(&self) -> Result<TautCable<T>, CableError> {
        self.tight.tighten(self.s.cable.points())
    }

    fn ends(&self, cable: &TautCable<T>) -> (usize, usize) {
        let ia = self.g.index_of(cable.first()).expect("cable end on graph vertex");
        let ib = self.g.index_of(cable.last()).expect("cable end on graph vertex");
        (ia, ib)
    }

    fn key(&self, cable: &TautCable<T>) -> Arc<[usize]> {
        cable
            .verts()
            .iter()
            .map(|&p| self.g.index_of(p).expect("cable vertex on graph vertex"))
            .collect()
    }

    /// Straight-line distance of the farther robot to its goal.
    pub fn heuristic_sld(&self, cable: &TautCable<T>) -> T {
        cable.first().dist(self.s.da).max(cable.last().dist(self.s.db))
    }

    /// Graph distance of the farther robot to its goal.
    pub fn heuristic_spd(&self, cable: &TautCable<T>) -> T {
        let (ia, ib) = self.ends(cable);
        self.to_da[ia].max(self.to_db[ib])
    }

    /// Optimal remaining cost of the instance relaxed to cable length
    /// `ell * (1 + k)`, where `k` counts the cable's wrap vertices. Falls
    /// back to [`Self::heuristic_spd`] when the sub-search runs out of
    /// budget, and is infinite when even the relaxed instance is infeasible.
    pub fn heuristic_jr(&self, cable: &TautCable<T>) -> T {
        self.jr_bound(cable, T::zero(), T::zero())
            .unwrap_or_else(|| self.heuristic_spd(cable))
    }

    fn jr_multiplier(k: usize) -> T {
        T::lit(1.0 + k as f64)
    }

    /// Relaxed optimal final max cost from a node, `None` on budget overrun.
    fn jr_bound(&self, cable: &TautCable<T>, ca: T, cb: T) -> Option<T> {
        let params = Params {
            ell: self.s.ell * Self::jr_multiplier(cable.interior_count()),
            heuristic: Heuristic::Spd,
            prune: true,
            budget: Some(10 * self.g.len()),
            record: false,
        };
        let out = self.search(cable.clone(), ca, cb, &params);
        match out.goal {
            Some(id) => Some(out.nodes[id].cost_a.max(out.nodes[id].cost_b)),
            None if out.stats.budget_exhausted => None,
            None => Some(T::infinity()),
        }
    }

    fn priority(&self, h: Heuristic, cable: &TautCable<T>, ia: usize, ib: usize, ca: T, cb: T) -> T {
        match h {
            Heuristic::None => ca.max(cb),
            Heuristic::Sld => (ca + cable.first().dist(self.s.da)).max(cb + cable.last().dist(self.s.db)),
            Heuristic::Spd => (ca + self.to_da[ia]).max(cb + self.to_db[ib]),
            // The relaxed sub-search is deferred until the node is dequeued.
            Heuristic::Jr => (ca + self.to_da[ia]).max(cb + self.to_db[ib]),
        }
    }

    /// Runs the search and returns the optimal pair, if any.
    pub fn plan(&self, h: Heuristic, opts: &PlanOptions) -> PlanResult<T> {
        let start = Instant::now();
        let root = match self.root_cable() {
            Ok(c) => c,
            Err(e) => {
                log::error!("initial cable cannot be tightened: {e}");
                return PlanResult {
                    solution: None,
                    raw: None,
                    stats: SearchStats::default(),
                    expanded_nodes: Vec::new(),
                };
            }
        };
        let budget = match (opts.node_budget, opts.prune) {
            (Some(b), _) => Some(b),
            (None, true) => None,
            (None, false) => Some(DEFAULT_UNPRUNED_BUDGET),
        };
        let params = Params {
            ell: self.s.ell,
            heuristic: h,
            prune: opts.prune,
            budget,
            record: opts.record_expanded,
        };
        let out = self.search(root, T::zero(), T::zero(), &params);
        let mut stats = out.stats;
        let raw = out.goal.map(|id| extract_solution(&out.nodes, id));
        let solution = raw.as_ref().map(|r| self.pull_taut(r).unwrap_or_else(|_| r.clone()));
        stats.wall_time = start.elapsed();
        PlanResult { solution, raw, stats, expanded_nodes: out.expanded }
    }

    /// Replaces each path by the shortest path in its homotopy class and
    /// pads the shorter sequence with stays.
    fn pull_taut(&self, raw: &Solution<T>) -> Result<Solution<T>, CableError> {
        let mut pi_a = self.tight.tighten(&raw.pi_a)?.verts().to_vec();
        let mut pi_b = self.tight.tighten(&raw.pi_b)?.verts().to_vec();
        let n = pi_a.len().max(pi_b.len());
        let (la, lb) = (*pi_a.last().unwrap(), *pi_b.last().unwrap());
        pi_a.resize(n, la);
        pi_b.resize(n, lb);
        let tau_a = Polyline::new(pi_a.clone());
        let tau_b = Polyline::new(pi_b.clone());
        let cat = cat_curve(&tau_a, &tau_b, &self.s.cable, T::one())?;
        let final_cable = self.tight.tighten(cat.points())?;
        Ok(Solution { pi_a, pi_b, cost_a: tau_a.length(), cost_b: tau_b.length(), final_cable })
    }

    fn search(&self, root: TautCable<T>, ca0: T, cb0: T, p: &Params<T>) -> Outcome<T> {
        let eps = T::length_eps();
        let t = self.g.terminals();
        let prune_base = p.ell.max(root.length());
        let mut stats = SearchStats::default();
        let mut nodes: Vec<SearchNode<T>> = Vec::new();
        let mut stale: Vec<bool> = Vec::new();
        let mut refined: Vec<bool> = Vec::new();
        let mut frontier: HashMap<Arc<[usize]>, Vec<(T, T, usize)>> = HashMap::new();
        let mut heap = BinaryHeap::new();
        let mut expanded = Vec::new();
        let mut seq = 0usize;

        let (ia, ib) = self.ends(&root);
        let f = self.priority(p.heuristic, &root, ia, ib, ca0, cb0);
        let key = self.key(&root);
        frontier.entry(key.clone()).or_default().push((ca0, cb0, 0));
        nodes.push(SearchNode { cable: root, ia, ib, cost_a: ca0, cost_b: cb0, parent: None, f });
        stale.push(false);
        refined.push(false);
        stats.generated = 1;
        if f.is_finite() {
            heap.push(Entry { f, g: ca0.max(cb0), key, seq, id: 0 });
        }

        let mut goal = None;
        while let Some(entry) = heap.pop() {
            let id = entry.id;
            if stale[id] {
                continue;
            }
            let (ia, ib) = (nodes[id].ia, nodes[id].ib);
            if ia == t.da && ib == t.db && nodes[id].cable.length() <= p.ell + eps {
                goal = Some(id);
                break;
            }
            if p.heuristic == Heuristic::Jr && !refined[id] {
                refined[id] = true;
                let n = &nodes[id];
                if let Some(v) = self.jr_bound(&n.cable, n.cost_a, n.cost_b) {
                    if v > n.f + eps {
                        nodes[id].f = v;
                        if v.is_finite() {
                            seq += 1;
                            heap.push(Entry { f: v, seq, ..entry });
                        }
                        continue;
                    }
                }
            }
            if p.budget.is_some_and(|b| stats.expanded >= b) {
                stats.budget_exhausted = true;
                break;
            }
            stats.expanded += 1;
            if p.record {
                let n = &nodes[id];
                expanded.push(ExpandedNode {
                    id,
                    parent: n.parent,
                    cable: n.cable.clone(),
                    cost_a: n.cost_a,
                    cost_b: n.cost_b,
                    f: n.f,
                });
            }
            let cable = nodes[id].cable.clone();
            let (ca, cb) = (nodes[id].cost_a, nodes[id].cost_b);
            let moves_a: Vec<(usize, T)> =
                std::iter::once((ia, T::zero())).chain(self.g.neighbors(ia).iter().copied()).collect();
            let moves_b: Vec<(usize, T)> =
                std::iter::once((ib, T::zero())).chain(self.g.neighbors(ib).iter().copied()).collect();
            for (k, &(na, wa)) in moves_a.iter().enumerate() {
                for (l, &(nb, wb)) in moves_b.iter().enumerate() {
                    if k == 0 && l == 0 {
                        continue;
                    }
                    let next = match self.tight.extend_visible(&cable, self.g.vertex(na), self.g.vertex(nb)) {
                        Ok(c) => c,
                        Err(e) => {
                            log::debug!("move skipped: {e}");
                            continue;
                        }
                    };
                    stats.generated += 1;
                    if p.prune && next.length() > prune_base + self.reach[na].max(self.reach[nb]) + eps {
                        stats.pruned += 1;
                        continue;
                    }
                    let (nca, ncb) = (ca + wa, cb + wb);
                    let key = self.key(&next);
                    let slot = frontier.entry(key.clone()).or_default();
                    if slot.iter().any(|&(a, b, _)| a <= nca && b <= ncb) {
                        continue;
                    }
                    slot.retain(|&(a, b, other)| {
                        let dominated = nca <= a && ncb <= b;
                        if dominated {
                            stale[other] = true;
                        }
                        !dominated
                    });
                    let f = self.priority(p.heuristic, &next, na, nb, nca, ncb);
                    let child = nodes.len();
                    slot.push((nca, ncb, child));
                    nodes.push(SearchNode {
                        cable: next,
                        ia: na,
                        ib: nb,
                        cost_a: nca,
                        cost_b: ncb,
                        parent: Some(id),
                        f,
                    });
                    stale.push(false);
                    refined.push(false);
                    if f.is_finite() {
                        seq += 1;
                        heap.push(Entry { f, g: nca.max(ncb), key, seq, id: child });
                    }
                }
            }
        }
        Outcome { nodes, goal, stats, expanded }
    }
}

/// Walks the parent chain from `goal` back to the root.
pub fn extract_solution<T: Scalar>(nodes: &[SearchNode<T>], goal: usize) -> Solution<T> {
    let mut chain = Vec::new();
    let mut cur = Some(goal);
    while let Some(id) = cur {
        chain.push(id);
        cur = nodes[id].parent;
    }
    chain.reverse();
    let pi_a = chain.iter().map(|&id| nodes[id].cable.first()).collect();
    let pi_b = chain.iter().map(|&id| nodes[id].cable.last()).collect();
    let g = &nodes[goal];
    Solution { pi_a, pi_b, cost_a: g.cost_a, cost_b: g.cost_b, final_cable: g.cable.clone() }
}

/// Convenience wrapper building a [`Planner`] for one search.
pub fn plan<T: Scalar>(s: &Scenario<T>, h: Heuristic, opts: &PlanOptions) -> PlanResult<T> {
    Planner::with_graph(s, opts.full_graph).plan(h, opts)
}
