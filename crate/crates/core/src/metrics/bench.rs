use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::Engine;
use crate::graph::{NodeId, WeightedGraph};
use crate::search::SearchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchResult {
    pub repetitions: usize,
    pub warmup: usize,
    pub mean_seconds: f64,
    /// Population standard deviation.
    pub stddev_seconds: f64,
    pub min_seconds: f64,
    /// Every timed repetition produced the same visit order.
    pub deterministic: bool,
    pub order: Vec<NodeId>,
}

/// Runs `warmup` discarded iterations, then `repetitions` timed ones on the
/// calling thread, using the monotonic clock.
pub fn bench(
    graph: &WeightedGraph,
    root: NodeId,
    engine: &Engine,
    repetitions: usize,
    warmup: usize,
) -> Result<BenchResult, SearchError> {
    let repetitions = repetitions.max(1);
    for _ in 0..warmup {
        engine.run(graph, root)?;
    }
    let mut samples = Vec::with_capacity(repetitions);
    let mut reference: Option<Vec<NodeId>> = None;
    let mut deterministic = true;
    for _ in 0..repetitions {
        let t = Instant::now();
        let result = engine.run(graph, root)?;
        samples.push(t.elapsed().as_secs_f64());
        let ids = result.ids();
        match &reference {
            None => reference = Some(ids),
            Some(first) => deterministic &= *first == ids,
        }
    }
    let mean = samples.iter().sum::<f64>() / repetitions as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / repetitions as f64;
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BenchResult {
        repetitions,
        warmup,
        // Guards against the sum rounding a single sample below itself.
        mean_seconds: mean.max(min),
        stddev_seconds: var.sqrt(),
        min_seconds: min,
        deterministic,
        order: reference.unwrap_or_default(),
    })
}
