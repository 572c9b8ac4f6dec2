//! Exhaustive all-pairs delivery checks and strategy comparison.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{route, Outcome, RouteTrace, Strategy};
use crate::planar::Triangulation;
use crate::schnyder::Drawing;
use crate::vrac::SaturatedGraph;
use crate::VertexId;

/// Where an instance came from, enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceDescriptor {
    Generated { n: usize, seed: u64, flips: usize },
    File { path: String, sha256: String },
    Fixture { name: String },
}

/// A triangulation with its drawing and saturated graph.
#[derive(Debug, Clone)]
pub struct RoutingInstance {
    pub descriptor: InstanceDescriptor,
    pub triangulation: Triangulation,
    pub drawing: Drawing,
    pub saturated: SaturatedGraph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeliveryReport {
    pub descriptor: Option<InstanceDescriptor>,
    pub strategy: Strategy,
    pub n: usize,
    pub pairs_tested: usize,
    pub delivered: usize,
    pub failed: usize,
    pub max_hops: usize,
    pub total_hops: u64,
    pub mean_hops: f64,
    /// largest `hops / bfs distance` over delivered routes
    pub max_stretch: f64,
    /// delivered routes that repeat a vertex or exceed `n - 1` hops
    pub non_simple: usize,
    /// Euclidean hops that did not strictly decrease the distance to the target
    pub distance_audit_failures: usize,
    /// failed routes, sorted by `(source, destination)`
    pub counterexamples: Vec<RouteTrace>,
}

impl DeliveryReport {
    pub fn all_delivered(&self) -> bool {
        self.failed == 0
    }

    pub fn rate(&self) -> f64 {
        if self.pairs_tested == 0 {
            1.0
        } else {
            self.delivered as f64 / self.pairs_tested as f64
        }
    }
}

/// Replayable record of one failed route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub descriptor: Option<InstanceDescriptor>,
    pub rotation: Vec<Vec<VertexId>>,
    pub denom: i64,
    pub coords: Vec<[i64; 3]>,
    pub saturated: Vec<[Option<VertexId>; 3]>,
    pub trace: RouteTrace,
}

impl Counterexample {
    pub fn new(
        descriptor: Option<InstanceDescriptor>,
        t: &Triangulation,
        d: &Drawing,
        sg: &SaturatedGraph,
        trace: RouteTrace,
    ) -> Self {
        Counterexample {
            descriptor,
            rotation: t.rotation().to_vec(),
            denom: d.denom(),
            coords: d.coords().to_vec(),
            saturated: sg.table().to_vec(),
            trace,
        }
    }
}

fn bfs(t: &Triangulation, s: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; t.n()];
    dist[s.index()] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in t.neighbors(u) {
            if dist[w.index()] == usize::MAX {
                dist[w.index()] = dist[u.index()] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Default)]
struct SourceStats {
    pairs: usize,
    delivered: usize,
    max_hops: usize,
    total_hops: u64,
    max_stretch: f64,
    non_simple: usize,
    audit_failures: usize,
    failures: Vec<RouteTrace>,
}

fn distance_audit(d: &Drawing, trace: &RouteTrace) -> usize {
    let t = trace.destination;
    trace
        .hops
        .windows(2)
        .filter(|w| d.scaled_dist2(w[1], t) >= d.scaled_dist2(w[0], t))
        .count()
}

/// Routes every ordered pair of distinct vertices with a hop budget of `n`.
/// Sources run in parallel; the report does not depend on the schedule.
pub fn verify_all_pairs(
    t: &Triangulation,
    d: &Drawing,
    sg: &SaturatedGraph,
    strategy: Strategy,
) -> DeliveryReport {
    let n = t.n();
    let per_source: Vec<SourceStats> = (0..n)
        .into_par_iter()
        .map(|s| {
            let s = VertexId::new(s);
            let dist = bfs(t, s);
            let mut st = SourceStats::default();
            for target in t.vertices().filter(|&x| x != s) {
                let trace = route(t, d, sg, s, target, strategy, n).expect("valid endpoints");
                st.pairs += 1;
                if strategy == Strategy::EuclideanGreedy {
                    st.audit_failures += distance_audit(d, &trace);
                }
                if trace.outcome == Outcome::Delivered {
                    let hops = trace.hop_count();
                    st.delivered += 1;
                    st.max_hops = st.max_hops.max(hops);
                    st.total_hops += hops as u64;
                    st.max_stretch = st
                        .max_stretch
                        .max(hops as f64 / dist[target.index()] as f64);
                    if !trace.is_simple() || hops > n - 1 {
                        st.non_simple += 1;
                    }
                } else {
                    st.failures.push(trace);
                }
            }
            st
        })
        .collect();

    let mut report = DeliveryReport {
        descriptor: None,
        strategy,
        n,
        pairs_tested: 0,
        delivered: 0,
        failed: 0,
        max_hops: 0,
        total_hops: 0,
        mean_hops: 0.0,
        max_stretch: 0.0,
        non_simple: 0,
        distance_audit_failures: 0,
        counterexamples: Vec::new(),
    };
    for st in per_source {
        report.pairs_tested += st.pairs;
        report.delivered += st.delivered;
        report.max_hops = report.max_hops.max(st.max_hops);
        report.total_hops += st.total_hops;
        report.max_stretch = report.max_stretch.max(st.max_stretch);
        report.non_simple += st.non_simple;
        report.distance_audit_failures += st.audit_failures;
        report.counterexamples.extend(st.failures);
    }
    report.failed = report.pairs_tested - report.delivered;
    if report.delivered > 0 {
        report.mean_hops = report.total_hops as f64 / report.delivered as f64;
    }
    report
        .counterexamples
        .sort_by_key(|c| (c.source, c.destination));
    report
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub pairs_tested: usize,
    pub delivered: usize,
    pub rate: f64,
    pub max_hops: usize,
    pub mean_hops: f64,
    pub max_stretch: f64,
    pub distance_audit_failures: usize,
}

impl StrategySummary {
    fn from_report(r: &DeliveryReport) -> Self {
        StrategySummary {
            strategy: r.strategy,
            pairs_tested: r.pairs_tested,
            delivered: r.delivered,
            rate: r.rate(),
            max_hops: r.max_hops,
            mean_hops: r.mean_hops,
            max_stretch: r.max_stretch,
            distance_audit_failures: r.distance_audit_failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub descriptor: InstanceDescriptor,
    pub n: usize,
    pub results: Vec<StrategySummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub strategies: Vec<Strategy>,
    pub rows: Vec<ComparisonRow>,
    /// per strategy, pooled over all rows
    pub totals: Vec<StrategySummary>,
}

/// All-pairs reports for every instance and strategy, one row per instance
/// in input order.
pub fn compare_strategies(
    instances: &[RoutingInstance],
    strategies: &[Strategy],
) -> ComparisonReport {
    let rows: Vec<ComparisonRow> = instances
        .iter()
        .map(|inst| ComparisonRow {
            descriptor: inst.descriptor.clone(),
            n: inst.triangulation.n(),
            results: strategies
                .iter()
                .map(|&s| {
                    let r =
                        verify_all_pairs(&inst.triangulation, &inst.drawing, &inst.saturated, s);
                    StrategySummary::from_report(&r)
                })
                .collect(),
        })
        .collect();

    let totals = strategies
        .iter()
        .enumerate()
        .map(|(i, &strategy)| {
            let mut total = StrategySummary {
                strategy,
                pairs_tested: 0,
                delivered: 0,
                rate: 1.0,
                max_hops: 0,
                mean_hops: 0.0,
                max_stretch: 0.0,
                distance_audit_failures: 0,
            };
            let mut hops = 0.0;
            for row in &rows {
                let r = &row.results[i];
                total.pairs_tested += r.pairs_tested;
                total.delivered += r.delivered;
                total.max_hops = total.max_hops.max(r.max_hops);
                total.max_stretch = total.max_stretch.max(r.max_stretch);
                total.distance_audit_failures += r.distance_audit_failures;
                hops += r.mean_hops * r.delivered as f64;
            }
            if total.pairs_tested > 0 {
                total.rate = total.delivered as f64 / total.pairs_tested as f64;
            }
            if total.delivered > 0 {
                total.mean_hops = hops / total.delivered as f64;
            }
            total
        })
        .collect();

    ComparisonReport {
        strategies: strategies.to_vec(),
        rows,
        totals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, t5};
    use crate::schnyder::{compute_drawing, compute_realizer};
    use crate::vrac::extract_saturated;

    fn instance(name: &str, t: Triangulation) -> RoutingInstance {
        let r = compute_realizer(&t).unwrap();
        let d = compute_drawing(&t, &r).unwrap();
        let sg = extract_saturated(&t, &d).unwrap();
        RoutingInstance {
            descriptor: InstanceDescriptor::Fixture { name: name.into() },
            triangulation: t,
            drawing: d,
            saturated: sg,
        }
    }

    #[test]
    fn k4_all_pairs() {
        let i = instance("k4", k4());
        for s in Strategy::ALL {
            let r = verify_all_pairs(&i.triangulation, &i.drawing, &i.saturated, s);
            assert_eq!(
                (r.pairs_tested, r.delivered, r.max_hops),
                (12, 12, 1),
                "{s}"
            );
            assert_eq!(r.max_stretch, 1.0);
        }
    }

    #[test]
    fn t5_all_pairs() {
        let i = instance("t5", t5());
        let r = verify_all_pairs(
            &i.triangulation,
            &i.drawing,
            &i.saturated,
            Strategy::SectorGreedy,
        );
        assert_eq!((r.pairs_tested, r.delivered, r.failed), (20, 20, 0));
        assert!(r.counterexamples.is_empty());
        let e = verify_all_pairs(
            &i.triangulation,
            &i.drawing,
            &i.saturated,
            Strategy::EuclideanGreedy,
        );
        assert_eq!(e.pairs_tested, 20);
        assert_eq!(e.distance_audit_failures, 0);
    }

    #[test]
    fn comparison_has_one_row_per_instance() {
        let insts = [instance("k4", k4()), instance("t5", t5())];
        let c = compare_strategies(&insts, &[Strategy::SectorGreedy, Strategy::EuclideanGreedy]);
        assert_eq!(c.rows.len(), 2);
        assert_eq!(c.totals[0].pairs_tested, 32);
        assert_eq!(c.totals[0].rate, 1.0);
        assert_eq!(c.rows[0].results[1].rate, 1.0);
    }

    #[test]
    fn sabotaged_saturated_graph_yields_sorted_counterexamples() {
        let mut i = instance("t5", t5());
        // v's s5 edge points at v itself
        i.saturated
            .set(VertexId::new(4), crate::Tree::T3, Some(VertexId::new(4)));
        let r = verify_all_pairs(
            &i.triangulation,
            &i.drawing,
            &i.saturated,
            Strategy::SectorCandidates,
        );
        assert!(r.failed > 0);
        assert!(r
            .counterexamples
            .iter()
            .all(|c| c.outcome == Outcome::LoopDetected));
        assert_eq!(r.failed, r.counterexamples.len());
        let keys: Vec<_> = r
            .counterexamples
            .iter()
            .map(|c| (c.source, c.destination))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
