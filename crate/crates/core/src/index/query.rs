use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;

use super::tree::{IsaxTree, NodeId};
use crate::error::{Error, Result};
use crate::series::{squared_distance, Dataset};
use crate::summarization::{isax_mindist, Summaries, SummaryKind};

/// `exact / approximate`, with 0/0 defined as 1.
pub fn tightness(exact: f64, approximate: f64) -> f64 {
    if approximate <= 0.0 {
        1.0
    } else {
        exact / approximate
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsfPoint {
    pub series_examined: usize,
    pub bsf_distance: f64,
}

/// One approximate query: the best-so-far trajectory over visited leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryReport {
    pub query_id: usize,
    pub budget: usize,
    pub trajectory: Vec<BsfPoint>,
    pub answer: usize,
    pub visited_leaves: Vec<NodeId>,
    pub exact_distance: Option<f64>,
}

impl QueryReport {
    pub fn bsf(&self) -> f64 {
        self.trajectory
            .last()
            .map_or(f64::INFINITY, |p| p.bsf_distance)
    }

    pub fn series_examined(&self) -> usize {
        self.trajectory.last().map_or(0, |p| p.series_examined)
    }

    pub fn tightness(&self) -> Option<f64> {
        self.exact_distance.map(|e| tightness(e, self.bsf()))
    }

    pub fn with_exact(mut self, exact: f64) -> Self {
        self.exact_distance = Some(exact);
        self
    }
}

impl fmt::Display for QueryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qid={} budget={} bsf={:.6}", self.query_id, self.budget, self.bsf())?;
        match self.exact_distance {
            Some(exact) => write!(
                f,
                " exact={exact:.6} tightness={:.6}",
                tightness(exact, self.bsf())
            ),
            None => write!(f, " exact=nan tightness=nan"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    dist: f64,
    node: NodeId,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // reversed: BinaryHeap pops the smallest mindist, then the lowest node id
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Nodes in ascending MINDIST order from the query summary.
struct Traversal<'a> {
    tree: &'a IsaxTree,
    query: &'a [f64],
    heap: BinaryHeap<Candidate>,
}

impl<'a> Traversal<'a> {
    fn new(tree: &'a IsaxTree, query: &'a [f64]) -> Result<Self> {
        if query.len() != tree.segments() {
            return Err(Error::ShapeMismatch(format!(
                "query summary has {} values, tree words have {}",
                query.len(),
                tree.segments()
            )));
        }
        let mut t = Self {
            tree,
            query,
            heap: BinaryHeap::new(),
        };
        for &id in tree.top_level() {
            t.push(id);
        }
        Ok(t)
    }

    fn push(&mut self, node: NodeId) {
        let dist = isax_mindist(self.query, &self.tree.node(node).word, self.tree.source_m());
        self.heap.push(Candidate { dist, node });
    }

    /// Next leaf and its MINDIST.
    fn next_leaf(&mut self) -> Option<(NodeId, f64)> {
        while let Some(Candidate { dist, node }) = self.heap.pop() {
            let n = self.tree.node(node);
            if n.is_leaf() {
                return Some((node, dist));
            }
            let kids: Vec<NodeId> = n.children().collect();
            for kid in kids {
                self.push(kid);
            }
        }
        None
    }
}

fn check_query(tree: &IsaxTree, dataset: &Dataset, query: &[f32]) -> Result<()> {
    if tree.len() != dataset.len() {
        return Err(Error::ShapeMismatch(format!(
            "tree indexes {} series, dataset has {}",
            tree.len(),
            dataset.len()
        )));
    }
    if query.len() != dataset.series_len() {
        return Err(Error::LengthMismatch {
            left: dataset.series_len(),
            right: query.len(),
        });
    }
    Ok(())
}

/// Visits leaves in ascending MINDIST order and scans their series until
/// `budget` series have been examined. `query_summary` is the query's
/// summary in unit values, computed the same way as the indexed words.
pub fn approx_query(
    tree: &IsaxTree,
    dataset: &Dataset,
    query_id: usize,
    query: &[f32],
    query_summary: &[f64],
    budget: usize,
) -> Result<QueryReport> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be >= 1".into()));
    }
    if tree.is_empty() {
        return Err(Error::EmptyTree);
    }
    check_query(tree, dataset, query)?;
    let mut traversal = Traversal::new(tree, query_summary)?;
    let mut examined = 0;
    let mut best = (f64::INFINITY, usize::MAX);
    let mut trajectory = Vec::new();
    let mut visited = Vec::new();
    while let Some((leaf, _)) = traversal.next_leaf() {
        visited.push(leaf);
        for &id in tree.leaf_members(leaf) {
            let d = squared_distance(query, dataset.series(id));
            if d < best.0 {
                best = (d, id);
            }
            examined += 1;
            if examined == budget {
                break;
            }
        }
        trajectory.push(BsfPoint {
            series_examined: examined,
            bsf_distance: best.0.sqrt(),
        });
        if examined == budget {
            break;
        }
    }
    Ok(QueryReport {
        query_id,
        budget,
        trajectory,
        answer: best.1,
        visited_leaves: visited,
        exact_distance: None,
    })
}

/// Nearest neighbor by full scan; ties go to the lowest identifier.
pub fn exact_query_bruteforce(dataset: &Dataset, query: &[f32]) -> Result<(usize, f64)> {
    if query.len() != dataset.series_len() {
        return Err(Error::LengthMismatch {
            left: dataset.series_len(),
            right: query.len(),
        });
    }
    let mut best = (0, f64::INFINITY);
    for (id, s) in dataset.iter().enumerate() {
        let d = squared_distance(query, s);
        if d < best.1 {
            best = (id, d);
        }
    }
    Ok((best.0, best.1.sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactAnswer {
    pub id: usize,
    pub distance: f64,
    pub series_examined: usize,
}

/// Exact nearest neighbor with MINDIST pruning. Only sound over PAA words.
pub fn exact_query_pruned(
    tree: &IsaxTree,
    dataset: &Dataset,
    query: &[f32],
    query_paa: &[f64],
) -> Result<ExactAnswer> {
    if tree.kind() != SummaryKind::Paa {
        return Err(Error::UnsupportedSummarization);
    }
    if tree.is_empty() {
        return Err(Error::EmptyTree);
    }
    check_query(tree, dataset, query)?;
    let mut traversal = Traversal::new(tree, query_paa)?;
    let mut best = (usize::MAX, f64::INFINITY);
    let mut examined = 0;
    while let Some((leaf, lower_bound)) = traversal.next_leaf() {
        // keep equal bounds (a tie may hold a lower id) and absorb rounding in the bound
        if lower_bound > best.1.sqrt() * (1.0 + 1e-9) {
            break;
        }
        for &id in tree.leaf_members(leaf) {
            let d = squared_distance(query, dataset.series(id));
            if d < best.1 || (d == best.1 && id < best.0) {
                best = (id, d);
            }
            examined += 1;
        }
    }
    Ok(ExactAnswer {
        id: best.0,
        distance: best.1.sqrt(),
        series_examined: examined,
    })
}

/// Mean pairwise distance inside each visited leaf, averaged over leaves.
/// Leaves with fewer than two series are skipped; returns `None` if none remain.
pub fn leaf_compactness(tree: &IsaxTree, dataset: &Dataset, leaves: &[NodeId]) -> Option<f64> {
    let per_leaf: Vec<f64> = leaves
        .iter()
        .filter_map(|&leaf| {
            let ids = tree.leaf_members(leaf);
            if ids.len() < 2 {
                return None;
            }
            let mut sum = 0.0;
            for (a, &i) in ids.iter().enumerate() {
                for &j in &ids[a + 1..] {
                    sum += squared_distance(dataset.series(i), dataset.series(j)).sqrt();
                }
            }
            let pairs = ids.len() * (ids.len() - 1) / 2;
            Some(sum / pairs as f64)
        })
        .collect();
    if per_leaf.is_empty() {
        None
    } else {
        Some(per_leaf.iter().sum::<f64>() / per_leaf.len() as f64)
    }
}

/// Index-free tightness upper bound: for each budget `k`, the best true
/// distance among the `k` series closest to the query in summary space.
/// Returns the mean tightness per budget over all queries.
pub fn ideal_tightness_curve(
    dataset: &Dataset,
    queries: &Dataset,
    base: &Summaries,
    query_summaries: &Summaries,
    budgets: &[usize],
) -> Result<Vec<f64>> {
    if base.len() != dataset.len() || query_summaries.len() != queries.len() {
        return Err(Error::ShapeMismatch(
            "summaries do not match their datasets".into(),
        ));
    }
    if base.l() != query_summaries.l() || queries.series_len() != dataset.series_len() {
        return Err(Error::ShapeMismatch("queries and base differ in shape".into()));
    }
    if let Some(&k) = budgets.iter().find(|&&k| k == 0 || k > dataset.len()) {
        return Err(Error::InvalidArgument(format!(
            "budget {k} outside 1..={}",
            dataset.len()
        )));
    }
    let per_query: Vec<Vec<f64>> = (0..queries.len())
        .into_par_iter()
        .map(|q| {
            let query = queries.series(q);
            let qs = query_summaries.row(q);
            let mut order: Vec<(f64, usize)> = (0..dataset.len())
                .map(|i| (squared_distance(base.row(i), qs), i))
                .collect();
            order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut prefix_best = Vec::with_capacity(order.len());
            let mut best = f64::INFINITY;
            for &(_, i) in &order {
                best = best.min(squared_distance(query, dataset.series(i)));
                prefix_best.push(best);
            }
            let exact = best.sqrt();
            budgets
                .iter()
                .map(|&k| tightness(exact, prefix_best[k - 1].sqrt()))
                .collect()
        })
        .collect();
    let nq = per_query.len().max(1) as f64;
    Ok((0..budgets.len())
        .map(|b| per_query.iter().map(|t| t[b]).sum::<f64>() / nq)
        .collect())
}
