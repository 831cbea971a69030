//! DAG of stochastic and deterministic nodes with seeded ancestral sampling.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand_distr::Distribution as SampleFrom;
use rayon::prelude::*;
use statrs::function::erf::erf;

use crate::rng;
use crate::{Error, Result};

const REJECTION_LIMIT: usize = 10_000;

/// Marginal distribution of a stochastic node. Parameters are fixed at
/// network build time; units are carried by the node's semantic role.
#[derive(Debug, Clone, PartialEq)]
pub enum Dist {
    Point(f64),
    Uniform { low: f64, high: f64 },
    Normal { mean: f64, sd: f64 },
    TruncatedNormal { mean: f64, sd: f64, low: f64, high: f64 },
}

fn std_normal_cdf(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

fn std_normal_pdf(x: f64) -> f64 {
    if !x.is_finite() {
        return 0.0;
    }
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

impl Dist {
    // !(a < b) rather than a >= b so that NaN parameters fail validation too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> std::result::Result<(), String> {
        match *self {
            Dist::Point(v) => {
                if !v.is_finite() {
                    return Err("point value must be finite".into());
                }
            }
            Dist::Uniform { low, high } => {
                if !(low < high) {
                    return Err(format!("uniform requires low < high, got [{low}, {high}]"));
                }
            }
            Dist::Normal { sd, .. } => {
                if !(sd >= 0.0) {
                    return Err(format!("normal requires sd >= 0, got {sd}"));
                }
            }
            Dist::TruncatedNormal { mean, sd, low, high } => {
                if !(sd >= 0.0) {
                    return Err(format!("truncated normal requires sd >= 0, got {sd}"));
                }
                if !(low < high) {
                    return Err(format!(
                        "truncated normal requires low < high, got [{low}, {high}]"
                    ));
                }
                if sd > 0.0 {
                    let alpha = (low - mean) / sd;
                    let beta = (high - mean) / sd;
                    if std_normal_cdf(beta) - std_normal_cdf(alpha) <= 0.0 {
                        return Err("truncation interval carries no probability mass".into());
                    }
                } else if mean < low || mean > high {
                    return Err("degenerate truncated normal has its mass outside [low, high]".into());
                }
            }
        }
        Ok(())
    }

    /// Analytic mean; for `TruncatedNormal` the mean of the truncated density.
    pub fn mean(&self) -> f64 {
        match *self {
            Dist::Point(v) => v,
            Dist::Uniform { low, high } => 0.5 * (low + high),
            Dist::Normal { mean, .. } => mean,
            Dist::TruncatedNormal { mean, sd, low, high } => {
                if sd == 0.0 {
                    return mean;
                }
                let alpha = (low - mean) / sd;
                let beta = (high - mean) / sd;
                let z = std_normal_cdf(beta) - std_normal_cdf(alpha);
                mean + sd * (std_normal_pdf(alpha) - std_normal_pdf(beta)) / z
            }
        }
    }

    /// One draw. `None` means the rejection limit was hit.
    fn draw(&self, rng: &mut impl rand::Rng) -> Option<f64> {
        match *self {
            Dist::Point(v) => Some(v),
            Dist::Uniform { low, high } => Some(rng.random_range(low..high)),
            Dist::Normal { mean, sd } => {
                Some(rand_distr::Normal::new(mean, sd).unwrap().sample(rng))
            }
            Dist::TruncatedNormal { mean, sd, low, high } => {
                let normal = rand_distr::Normal::new(mean, sd).unwrap();
                for _ in 0..REJECTION_LIMIT {
                    let v = normal.sample(rng);
                    if v >= low && v <= high {
                        return Some(v);
                    }
                }
                None
            }
        }
    }
}

type DetFnImpl = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A named deterministic function of the parent values, fixed arity.
#[derive(Clone)]
pub struct DetFn {
    name: String,
    f: DetFnImpl,
}

impl DetFn {
    pub fn new(name: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for DetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("DetFn").field(&self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum NodeKind {
    Stochastic(Dist),
    Deterministic(DetFn),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub parents: Vec<String>,
}

/// The simulation substrate: nodes keyed by id, edges implied by parent lists.
#[derive(Debug, Clone, Default)]
pub struct Network {
    nodes: BTreeMap<String, Node>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_stochastic(&mut self, id: impl Into<String>, dist: Dist) -> &mut Self {
        let id = id.into();
        self.nodes.insert(
            id.clone(),
            Node {
                id,
                kind: NodeKind::Stochastic(dist),
                parents: Vec::new(),
            },
        );
        self
    }

    pub fn add_deterministic(
        &mut self,
        id: impl Into<String>,
        parents: &[&str],
        func: DetFn,
    ) -> &mut Self {
        let id = id.into();
        self.nodes.insert(
            id.clone(),
            Node {
                id,
                kind: NodeKind::Deterministic(func),
                parents: parents.iter().map(|p| (*p).to_string()).collect(),
            },
        );
        self
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.keys().map(String::as_str)
    }

    /// Checks parent references, distribution parameters, and acyclicity.
    /// Returns a deterministic topological order (Kahn's algorithm; ties
    /// broken by lexicographic node id).
    pub fn validate(&self) -> Result<Vec<String>> {
        for node in self.nodes.values() {
            if let NodeKind::Stochastic(dist) = &node.kind {
                dist.validate().map_err(|reason| Error::InvalidDistribution {
                    node: node.id.clone(),
                    reason,
                })?;
            }
            for parent in &node.parents {
                if !self.nodes.contains_key(parent) {
                    return Err(Error::DanglingParent {
                        node: node.id.clone(),
                        parent: parent.clone(),
                    });
                }
            }
        }

        let mut indegree: BTreeMap<&str, usize> = BTreeMap::new();
        let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for node in self.nodes.values() {
            indegree.entry(&node.id).or_insert(0);
            for parent in &node.parents {
                *indegree.entry(&node.id).or_insert(0) += 1;
                children.entry(parent).or_default().push(&node.id);
            }
        }

        let mut ready: BTreeSet<&str> = indegree
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(id, _)| *id)
            .collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(&id) = ready.iter().next() {
            ready.remove(id);
            order.push(id.to_string());
            for &child in children.get(id).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indegree.get_mut(child).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(child);
                }
            }
        }

        if order.len() < self.nodes.len() {
            return Err(Error::CycleDetected {
                cycle: self.find_cycle(&order),
            });
        }
        Ok(order)
    }

    /// Walks parent links among the nodes left out of the partial order until
    /// one repeats.
    fn find_cycle(&self, order: &[String]) -> Vec<String> {
        let placed: BTreeSet<&str> = order.iter().map(String::as_str).collect();
        let start = self
            .nodes
            .keys()
            .find(|id| !placed.contains(id.as_str()))
            .expect("cycle exists");
        let mut seen: Vec<&str> = vec![start];
        let mut current = start.as_str();
        loop {
            let next = self.nodes[current]
                .parents
                .iter()
                .find(|p| !placed.contains(p.as_str()))
                .expect("node in a cycle has an unplaced parent");
            if let Some(pos) = seen.iter().position(|s| *s == next.as_str()) {
                let mut cycle: Vec<String> = seen[pos..].iter().map(|s| s.to_string()).collect();
                cycle.push(next.clone());
                return cycle;
            }
            seen.push(next);
            current = next;
        }
    }

    /// Ancestral Monte-Carlo sampling: `n` independent joint draws evaluated
    /// in topological order. Draw `i` of each node depends only on
    /// `(seed, i, node id)`, so the result is independent of how draws are
    /// scheduled across threads.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleSet> {
        if n == 0 {
            return Err(Error::InvalidPlan {
                reason: "sample count must be >= 1".into(),
            });
        }
        let order = self.validate()?;
        let index: HashMap<&str, usize> = order
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let hashes: Vec<u64> = order.iter().map(|id| rng::node_hash(id)).collect();
        let nodes: Vec<&Node> = order.iter().map(|id| &self.nodes[id]).collect();
        let parent_slots: Vec<Vec<usize>> = nodes
            .iter()
            .map(|node| node.parents.iter().map(|p| index[p.as_str()]).collect())
            .collect();

        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|draw| {
                let mut values = vec![0.0f64; nodes.len()];
                let mut args = Vec::new();
                for (slot, node) in nodes.iter().enumerate() {
                    let value = match &node.kind {
                        NodeKind::Stochastic(dist) => {
                            let mut r = rng::stream(seed, draw as u64, hashes[slot]);
                            dist.draw(&mut r).ok_or_else(|| Error::RejectionLimit {
                                node: node.id.clone(),
                                draw,
                                limit: REJECTION_LIMIT,
                            })?
                        }
                        NodeKind::Deterministic(func) => {
                            args.clear();
                            args.extend(parent_slots[slot].iter().map(|&p| values[p]));
                            let v = (func.f)(&args);
                            if !v.is_finite() {
                                return Err(Error::Numeric {
                                    node: node.id.clone(),
                                    draw,
                                });
                            }
                            v
                        }
                    };
                    values[slot] = value;
                }
                Ok(values)
            })
            .collect::<Result<_>>()?;

        let mut values: BTreeMap<String, Vec<f64>> = order
            .iter()
            .map(|id| (id.clone(), Vec::with_capacity(n)))
            .collect();
        for row in &rows {
            for (slot, id) in order.iter().enumerate() {
                values.get_mut(id).unwrap().push(row[slot]);
            }
        }
        Ok(SampleSet { values, n, seed })
    }

    /// Deterministic evaluation: every stochastic node is replaced by its
    /// distribution mean, then deterministic nodes are applied once in
    /// topological order.
    pub fn evaluate_at_means(&self) -> Result<BTreeMap<String, f64>> {
        let order = self.validate()?;
        let mut values: BTreeMap<String, f64> = BTreeMap::new();
        for id in &order {
            let node = &self.nodes[id];
            let value = match &node.kind {
                NodeKind::Stochastic(dist) => dist.mean(),
                NodeKind::Deterministic(func) => {
                    let args: Vec<f64> = node.parents.iter().map(|p| values[p]).collect();
                    (func.f)(&args)
                }
            };
            if !value.is_finite() {
                return Err(Error::Numeric {
                    node: id.clone(),
                    draw: 0,
                });
            }
            values.insert(id.clone(), value);
        }
        Ok(values)
    }
}

/// Per-node sample matrix from one `Network::sample` run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: BTreeMap<String, Vec<f64>>,
    n: usize,
    seed: u64,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn samples(&self, id: &str) -> Option<&[f64]> {
        self.values.get(id).map(Vec::as_slice)
    }

    pub fn summarize(&self) -> BTreeMap<String, Summary> {
        self.values
            .iter()
            .map(|(id, v)| (id.clone(), Summary::from_samples(v)))
            .collect()
    }
}

/// Summary statistics for one node's samples. Percentiles are nearest-rank
/// on the sorted samples.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Summary {
    pub mean: f64,
    pub sd: f64,
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn from_samples(samples: &[f64]) -> Self {
        assert!(!samples.is_empty(), "summary of an empty sample vector");
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let sd = if n > 1 {
            (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let rank = |p: f64| {
            let k = ((p / 100.0) * n as f64).ceil() as usize;
            sorted[k.clamp(1, n) - 1]
        };
        Summary {
            mean,
            sd,
            p5: rank(5.0),
            p50: rank(50.0),
            p95: rank(95.0),
            min: sorted[0],
            max: sorted[n - 1],
        }
    }
}
