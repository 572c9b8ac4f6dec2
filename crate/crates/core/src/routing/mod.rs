//! Greedy forwarding on a Schnyder drawing.
//!
//! Every forwarding decision is a pure function of a [`LocalView`]: the
//! current vertex, its neighbours and their coordinates, the destination's
//! coordinates and the saturated edges of the current vertex. [`route`] and
//! [`verify_all_pairs`] wrap that rule with loop detection and statistics.

mod verify;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::Triangulation;
use crate::schnyder::Drawing;
use crate::vrac::{classify_sector, sign_triple, SaturatedGraph, SectorId, Sign};
use crate::VertexId;

pub use verify::{
    compare_strategies, verify_all_pairs, ComparisonReport, ComparisonRow, Counterexample,
    DeliveryReport, InstanceDescriptor, RoutingInstance, StrategySummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Odd sectors follow the saturated edge; otherwise step to the
    /// neighbour that gets closest to the destination in the one order the
    /// destination is below.
    SectorGreedy,
    /// Odd sectors follow the saturated edge; even sectors pick one of the two
    /// bordering saturated edges by the overshoot count.
    SectorCandidates,
    /// Neighbour strictly closest to the destination in the plane.
    EuclideanGreedy,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::SectorGreedy,
        Strategy::SectorCandidates,
        Strategy::EuclideanGreedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::SectorGreedy => "sector-greedy",
            Strategy::SectorCandidates => "sector-candidates",
            Strategy::EuclideanGreedy => "euclidean-greedy",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sector" | "sector-greedy" => Ok(Strategy::SectorGreedy),
            "sector-candidates" => Ok(Strategy::SectorCandidates),
            "euclidean" | "euclidean-greedy" => Ok(Strategy::EuclideanGreedy),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

/// Which branch of the rule produced a hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Neighbour,
    OddSector,
    EvenSector,
    Descent,
    Corner,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub at: VertexId,
    /// sector of the destination around `at`; absent for Euclidean steps
    pub sector: Option<SectorId>,
    pub tier: Tier,
    /// `None` when the rule found no admissible neighbour
    pub next: Option<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Delivered,
    Stuck,
    LoopDetected,
    HopBudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteTrace {
    pub source: VertexId,
    pub destination: VertexId,
    pub strategy: Strategy,
    pub hops: Vec<VertexId>,
    pub decisions: Vec<Decision>,
    pub outcome: Outcome,
}

impl RouteTrace {
    pub fn hop_count(&self) -> usize {
        self.hops.len() - 1
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.hops.iter().all(|v| seen.insert(*v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("source and destination are both {0}")]
    SameEndpoints(VertexId),
    #[error("vertex {0} out of range")]
    UnknownVertex(VertexId),
    #[error("hop budget must be at least 1")]
    ZeroBudget,
}

/// Everything a forwarding decision at `at` may look at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalView<'a> {
    pub at: (VertexId, [i64; 3]),
    pub neighbours: &'a [(VertexId, [i64; 3])],
    pub target: (VertexId, [i64; 3]),
    /// saturated edges of `at`, all `None` at a corner
    pub sat: [Option<VertexId>; 3],
}

fn fill_neighbours(
    buf: &mut Vec<(VertexId, [i64; 3])>,
    t: &Triangulation,
    d: &Drawing,
    at: VertexId,
) {
    buf.clear();
    buf.extend(t.neighbors(at).iter().map(|&w| (w, d.coord(w))));
}

/// Number of orders in which `c` lies strictly past `t` as seen from `u`.
fn overshoot(u: [i64; 3], c: [i64; 3], t: [i64; 3]) -> usize {
    (0..3)
        .filter(|&k| {
            let from_u = Sign::of(t[k] - u[k]);
            from_u != Sign::Zero && Sign::of(t[k] - c[k]) == from_u.negate()
        })
        .count()
}

fn coord_of(view: &LocalView, v: VertexId) -> Option<[i64; 3]> {
    view.neighbours
        .iter()
        .find(|(w, _)| *w == v)
        .map(|&(_, c)| c)
}

/// Sector-based next hop for a single decision.
pub fn next_hop_local(view: &LocalView, strategy: Strategy) -> Decision {
    let (u, cu) = view.at;
    let (t, ct) = view.target;
    if strategy == Strategy::EuclideanGreedy {
        return euclidean_local(view);
    }
    let sector = classify_sector(cu, ct);
    let decision = |tier, next| Decision {
        at: u,
        sector,
        tier,
        next,
    };
    if view.neighbours.iter().any(|(w, _)| *w == t) {
        return decision(Tier::Neighbour, Some(t));
    }
    let Some(id) = sector else {
        return decision(Tier::Neighbour, None);
    };
    match strategy {
        Strategy::SectorGreedy => sector_greedy(view, id, decision),
        Strategy::SectorCandidates => sector_candidates(view, id, decision),
        Strategy::EuclideanGreedy => unreachable!(),
    }
}

fn sector_greedy(
    view: &LocalView,
    _id: SectorId,
    decision: impl Fn(Tier, Option<VertexId>) -> Decision,
) -> Decision {
    let (cu, ct) = (view.at.1, view.target.1);
    let s = sign_triple(cu, ct).expect("distinct rows");
    if s.count(Sign::Neg) == 2 {
        let j = s.unique(Sign::Pos).unwrap();
        return decision(Tier::OddSector, view.sat[j]);
    }
    let k = s.unique(Sign::Neg).expect("distinct rows with equal sums");
    let best = view
        .neighbours
        .iter()
        .filter(|(_, c)| ct[k] < c[k] && c[k] < cu[k])
        .min_by_key(|(w, c)| (c[k], *w))
        .map(|&(w, _)| w);
    let tier = if view.sat == [None; 3] {
        Tier::Corner
    } else {
        Tier::Descent
    };
    decision(tier, best)
}

fn sector_candidates(
    view: &LocalView,
    id: SectorId,
    decision: impl Fn(Tier, Option<VertexId>) -> Decision,
) -> Decision {
    let (cu, ct) = (view.at.1, view.target.1);
    if view.sat == [None; 3] {
        let best = view
            .neighbours
            .iter()
            .min_by_key(|(w, c)| (overshoot(cu, *c, ct), *w))
            .map(|&(w, _)| w);
        return decision(Tier::Corner, best);
    }
    if let Some(tree) = id.sector.odd_tree() {
        return decision(Tier::OddSector, view.sat[tree.index()]);
    }
    let (a, b) = id.sector.neighbours();
    let mut best: Option<(usize, VertexId)> = None;
    for odd in [a, b] {
        let tree = odd.odd_tree().unwrap();
        let Some(c) = view.sat[tree.index()] else {
            continue;
        };
        let Some(cc) = coord_of(view, c) else {
            continue;
        };
        let fully_opposite =
            classify_sector(cc, ct).is_some_and(|s| !s.boundary && s.sector == odd.opposite());
        if fully_opposite {
            continue;
        }
        let score = overshoot(cu, cc, ct);
        if best.is_none_or(|(b, _)| score < b) {
            best = Some((score, c));
        }
    }
    decision(Tier::EvenSector, best.map(|(_, c)| c))
}

fn euclidean_local(view: &LocalView) -> Decision {
    let (u, cu) = view.at;
    let (t, ct) = view.target;
    let dist = |c: [i64; 3]| Drawing::scaled_dist2_of(c, ct);
    let here = dist(cu);
    let best = view
        .neighbours
        .iter()
        .map(|&(w, c)| (dist(c), w))
        .min()
        .filter(|&(dw, _)| dw < here)
        .map(|(_, w)| w);
    let tier = if view.neighbours.iter().any(|(w, _)| *w == t) {
        Tier::Neighbour
    } else {
        Tier::Euclidean
    };
    Decision {
        at: u,
        sector: None,
        tier,
        next: best,
    }
}

fn next_hop_with(
    buf: &mut Vec<(VertexId, [i64; 3])>,
    u: VertexId,
    t: VertexId,
    tri: &Triangulation,
    d: &Drawing,
    sat: [Option<VertexId>; 3],
    strategy: Strategy,
) -> Decision {
    fill_neighbours(buf, tri, d, u);
    let view = LocalView {
        at: (u, d.coord(u)),
        neighbours: buf,
        target: (t, d.coord(t)),
        sat,
    };
    next_hop_local(&view, strategy)
}

/// Sector-based next hop from `u` towards `t`.
pub fn next_hop_sector(
    u: VertexId,
    t: VertexId,
    tri: &Triangulation,
    d: &Drawing,
    sg: &SaturatedGraph,
    strategy: Strategy,
) -> Decision {
    next_hop_with(&mut Vec::new(), u, t, tri, d, sg.entries(u), strategy)
}

/// Neighbour of `u` strictly closer to `t` than `u` itself, closest first,
/// ties to the lower index. `next` is `None` at a local minimum.
pub fn next_hop_euclidean(u: VertexId, t: VertexId, tri: &Triangulation, d: &Drawing) -> Decision {
    next_hop_with(
        &mut Vec::new(),
        u,
        t,
        tri,
        d,
        [None; 3],
        Strategy::EuclideanGreedy,
    )
}

/// Forwards from `s` until delivery, a dead end, a revisited vertex or
/// `max_hops` hops. Only the harness looks at earlier hops; decisions never
/// see them.
pub fn route(
    tri: &Triangulation,
    d: &Drawing,
    sg: &SaturatedGraph,
    s: VertexId,
    t: VertexId,
    strategy: Strategy,
    max_hops: usize,
) -> Result<RouteTrace, RouteError> {
    for v in [s, t] {
        if v.index() >= tri.n() {
            return Err(RouteError::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(RouteError::SameEndpoints(s));
    }
    if max_hops == 0 {
        return Err(RouteError::ZeroBudget);
    }
    let mut hops = vec![s];
    let mut decisions = Vec::new();
    let mut buf = Vec::new();
    let mut cur = s;
    let outcome = loop {
        if hops.len() > max_hops {
            break Outcome::HopBudgetExceeded;
        }
        let sat = if strategy == Strategy::EuclideanGreedy {
            [None; 3]
        } else {
            sg.entries(cur)
        };
        let step = next_hop_with(&mut buf, cur, t, tri, d, sat, strategy);
        decisions.push(step);
        let Some(next) = step.next else {
            break Outcome::Stuck;
        };
        let repeated = hops.contains(&next);
        hops.push(next);
        if next == t {
            break Outcome::Delivered;
        }
        if repeated {
            break Outcome::LoopDetected;
        }
        cur = next;
    };
    Ok(RouteTrace {
        source: s,
        destination: t,
        strategy,
        hops,
        decisions,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, t5};
    use crate::schnyder::{compute_drawing, compute_realizer};
    use crate::vrac::{extract_saturated, Sector};

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn setup(t: &Triangulation) -> (Drawing, SaturatedGraph) {
        let r = compute_realizer(t).unwrap();
        let d = compute_drawing(t, &r).unwrap();
        let sg = extract_saturated(t, &d).unwrap();
        (d, sg)
    }

    #[test]
    fn t5_next_hops() {
        let t = t5();
        let (d, sg) = setup(&t);
        for strategy in [Strategy::SectorGreedy, Strategy::SectorCandidates] {
            let step = next_hop_sector(v(4), VertexId::A3, &t, &d, &sg, strategy);
            assert_eq!(step.next, Some(v(3)));
            assert_eq!(step.tier, Tier::OddSector);
            assert_eq!(step.sector.unwrap().sector, Sector::S5);
            let step = next_hop_sector(v(3), VertexId::A3, &t, &d, &sg, strategy);
            assert_eq!(
                (step.next, step.tier),
                (Some(VertexId::A3), Tier::Neighbour)
            );
        }
        let k = k4();
        let (d, sg) = setup(&k);
        let step = next_hop_sector(
            VertexId::A1,
            VertexId::A2,
            &k,
            &d,
            &sg,
            Strategy::SectorGreedy,
        );
        assert_eq!(
            (step.next, step.tier),
            (Some(VertexId::A2), Tier::Neighbour)
        );
    }

    #[test]
    fn t5_route() {
        let t = t5();
        let (d, sg) = setup(&t);
        let trace = route(&t, &d, &sg, v(4), VertexId::A3, Strategy::SectorGreedy, 5).unwrap();
        assert_eq!(trace.hops, vec![v(4), v(3), VertexId::A3]);
        assert_eq!(trace.outcome, Outcome::Delivered);
        assert_eq!(trace.decisions.len(), 2);
        assert_eq!(
            route(&t, &d, &sg, v(4), v(4), Strategy::SectorGreedy, 5),
            Err(RouteError::SameEndpoints(v(4)))
        );
    }

    #[test]
    fn euclidean_steps() {
        let k = k4();
        let (d, _) = setup(&k);
        assert_eq!(
            next_hop_euclidean(v(3), VertexId::A1, &k, &d).next,
            Some(VertexId::A1)
        );

        // exact oracle on T5: from v towards A3, compare |u - A3|^2 with |A2 - A3|^2
        let t = t5();
        let (d, _) = setup(&t);
        let xy = |c: [i64; 3]| (c[0] + 2 * c[2], c[0]);
        let d2 = |a: [i64; 3], b: [i64; 3]| {
            let ((ax, ay), (bx, by)) = (xy(a), xy(b));
            (ax - bx).pow(2) + 3 * (ay - by).pow(2)
        };
        let (cu, ca2, ca3, cv) = (d.coord(v(3)), d.coord(v(1)), d.coord(v(2)), d.coord(v(4)));
        let (du, da2, dv) = (d2(cu, ca3), d2(ca2, ca3), d2(cv, ca3));
        let want = if du < da2 { v(3) } else { v(1) };
        assert!(du.min(da2) < dv);
        assert_eq!(
            next_hop_euclidean(v(4), VertexId::A3, &t, &d).next,
            Some(want)
        );
    }

    #[test]
    fn euclidean_local_minimum_is_stuck() {
        // both neighbours of (4,3,3) are further from A2 than it is
        let view = LocalView {
            at: (v(3), [4, 3, 3]),
            neighbours: &[(v(0), [10, 0, 0]), (v(2), [0, 0, 10])],
            target: (v(1), [0, 10, 0]),
            sat: [None; 3],
        };
        assert_eq!(next_hop_local(&view, Strategy::EuclideanGreedy).next, None);
    }

    #[test]
    fn overshoot_counts() {
        assert_eq!(overshoot([1, 1, 3], [5, 0, 0], [2, 2, 1]), 2);
        assert_eq!(overshoot([1, 1, 3], [2, 2, 1], [2, 2, 1]), 0);
    }
}
