//! Degree-capped tree-connected factors and the inequality verifiers
//! feeding them.
//!
//! Two enumeration verifiers bound the partition-connectivity deficiency
//! of a spanning subgraph minus a vertex set (one via a density fraction
//! `eps`, one via a scale `k`); a third checks the strict inequality that
//! guarantees a capped partition-connected factor exists. The searcher
//! realizes those factors: greedy cap-violation repair with a full
//! backtracking fallback that can also prove absence.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::certificate::FactorCertificate;
use crate::connectivity::{is_partition_connected_scaled, theta_minus};
use crate::cpartite::max_cpartite_factor;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::packing::{extract_spanning_trees, has_tree_packing};
use crate::setfn::SetFunction;

/// Full-subset enumeration bound for the verifiers.
pub const VERIFY_LIMIT: usize = 10;
/// Backtracking bound for the exhaustive factor search.
pub const EXHAUSTIVE_SEARCH_LIMIT: usize = 10;

/// Per-vertex degree caps, optionally with a designated vertex whose cap
/// was reduced (floor instead of ceiling).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCapProfile {
    pub caps: Vec<i64>,
    pub special: Option<usize>,
}

impl DegreeCapProfile {
    pub fn uniform(n: usize, cap: i64) -> DegreeCapProfile {
        DegreeCapProfile {
            caps: vec![cap; n],
            special: None,
        }
    }

    pub fn new(caps: Vec<i64>, special: Option<usize>) -> DegreeCapProfile {
        DegreeCapProfile { caps, special }
    }

    /// Caps `ceil(ratio * d(v))`, reduced to `floor(ratio * d(u))` at `u`.
    pub fn from_degree_fraction(
        g: &MultiGraph,
        ratio: Rational64,
        special: Option<usize>,
    ) -> DegreeCapProfile {
        let caps = (0..g.vertex_count())
            .map(|v| {
                let exact = ratio * Rational64::from_integer(g.degree(v) as i64);
                if special == Some(v) {
                    exact.floor().to_integer()
                } else {
                    exact.ceil().to_integer()
                }
            })
            .collect();
        DegreeCapProfile { caps, special }
    }

    pub fn respected_by(&self, degrees: &[usize]) -> bool {
        degrees
            .iter()
            .zip(self.caps.iter())
            .all(|(&d, &cap)| d as i64 <= cap)
    }
}

/// Hypothesis data for the capped-factor existence check: the slack
/// weight `lambda`, the per-vertex budget `eta`, and an optional required
/// sub-factor.
#[derive(Clone, Debug)]
pub struct HypothesisParams {
    pub lambda: Rational64,
    pub eta: Vec<Rational64>,
    pub required: Option<MultiGraph>,
}

/// Verdict of an inequality verifier, with precondition failures kept
/// separate so vacuous cases are distinguishable from counterexamples.
#[derive(Clone, Debug)]
pub struct VerifierReport {
    pub preconditions_ok: bool,
    pub failed_preconditions: Vec<String>,
    pub verdict: bool,
    pub witness: Option<String>,
}

impl VerifierReport {
    pub fn holds(&self) -> bool {
        self.preconditions_ok && self.verdict
    }
}

fn check_spanning_subgraph(g: &MultiGraph, g0: &MultiGraph) -> Option<String> {
    if g0.vertex_count() != g.vertex_count() {
        return Some("subgraph has a different vertex count".into());
    }
    let by_id: std::collections::HashMap<usize, (usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e.id, (e.u.min(e.v), e.u.max(e.v))))
        .collect();
    for e in g0.edges() {
        match by_id.get(&e.id) {
            Some(&ends) if ends == (e.u.min(e.v), e.u.max(e.v)) => {}
            _ => return Some(format!("edge id {} is not an edge of the parent", e.id)),
        }
    }
    None
}

fn check_verify_capacity(n: usize, operation: &'static str) -> Result<()> {
    if n > VERIFY_LIMIT {
        return Err(Error::Capacity {
            operation,
            n,
            limit: VERIFY_LIMIT,
        });
    }
    Ok(())
}

fn rational(x: usize) -> Rational64 {
    Rational64::from_integer(x as i64)
}

/// For every `X`: `d_{g0}(X) >= fraction * d_g(X)`; returns the first
/// violating set.
fn dense_enough(
    g: &MultiGraph,
    g0: &MultiGraph,
    fraction: Rational64,
) -> Result<Option<VertexSet>> {
    let n = g.vertex_count();
    for mask in 0u64..(1u64 << n) {
        let x = VertexSet(mask);
        if rational(g0.cut_degree(x)?) < fraction * rational(g.cut_degree(x)?) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Deficiency bound for a dense spanning subgraph minus a vertex set:
/// if `g` is `(l/eps)`-partition-connected and `d_{g0}(X) >= eps d_g(X)`
/// everywhere, then
/// `theta_l(g0 - s) <= sum_{v in s} (d_{g0}(v)/2 + eps d_g(v)/2 - l(v))
///  + l(V) - e_{g0}(s)`.
pub fn verify_eps_deficiency_bound(
    g: &MultiGraph,
    g0: &MultiGraph,
    l: &SetFunction,
    eps: Rational64,
    s: VertexSet,
) -> Result<VerifierReport> {
    let n = g.vertex_count();
    check_verify_capacity(n, "verify_eps_deficiency_bound")?;
    let mut failed = Vec::new();
    if let Some(reason) = check_spanning_subgraph(g, g0) {
        return Err(Error::NotSpanningSubgraph(reason));
    }
    if !eps.is_positive() {
        failed.push(format!("eps must be positive, got {eps}"));
    }
    if failed.is_empty() {
        if !is_partition_connected_scaled(g, l, eps.recip())? {
            failed.push(format!("parent graph is not (l/{eps})-partition-connected"));
        }
        if let Some(x) = dense_enough(g, g0, eps)? {
            failed.push(format!("d_g0(X) >= {eps} d_g(X) fails at X = {x}"));
        }
    }

    let lhs = theta_minus(g0, l, s, Rational64::one())?;
    let half = Rational64::new(1, 2);
    let mut rhs = Rational64::from_integer(l.value(VertexSet::full(n)))
        - rational(g0.inside_edge_count(s)?);
    for v in s.iter() {
        rhs += half * rational(g0.degree(v)) + eps * half * rational(g.degree(v))
            - Rational64::from_integer(l.vertex_value(v));
    }
    let verdict = lhs <= rhs;
    Ok(VerifierReport {
        preconditions_ok: failed.is_empty(),
        failed_preconditions: failed,
        verdict,
        witness: (!verdict).then(|| format!("S = {s}: deficiency {lhs} > bound {rhs}")),
    })
}

/// The strict inequality that guarantees an `l`-partition-connected
/// factor with capped degrees: for every `S`,
/// `theta_l(g0 - S) < 1 + sum_{v in S}(eta(v) - 2 l(v)) + l(V) + l(S)
///  - lambda (e(S) + l(S))`,
/// with the `e(S)` term taken on `g0` unless a supergraph is supplied.
pub fn verify_existence_hypothesis(
    g0: &MultiGraph,
    l: &SetFunction,
    params: &HypothesisParams,
    edge_count_graph: Option<&MultiGraph>,
) -> Result<VerifierReport> {
    let n = g0.vertex_count();
    check_verify_capacity(n, "verify_existence_hypothesis")?;
    let mut failed = Vec::new();
    if !l.is_intersecting_supermodular()? {
        failed.push("l is not intersecting supermodular".into());
    }
    if !l.is_nonincreasing()? {
        failed.push("l is not nonincreasing".into());
    }
    if !l.is_nonnegative() {
        failed.push("l is not nonnegative".into());
    }
    if params.lambda.is_negative() || params.lambda > Rational64::one() {
        failed.push(format!("lambda must lie in [0,1], got {}", params.lambda));
    }
    if params.eta.len() != n {
        failed.push("eta must assign a value to every vertex".into());
    }
    if let Some(f) = &params.required {
        if let Some(reason) = check_spanning_subgraph(g0, f) {
            failed.push(format!("required factor: {reason}"));
        }
    }
    if !failed.is_empty() {
        return Ok(VerifierReport {
            preconditions_ok: false,
            failed_preconditions: failed,
            verdict: false,
            witness: None,
        });
    }
    let edge_graph = edge_count_graph.unwrap_or(g0);
    let full = Rational64::from_integer(l.value(VertexSet::full(n)));
    let mut verdict = true;
    let mut witness = None;
    for mask in 0u64..(1u64 << n) {
        let s = VertexSet(mask);
        let lhs = theta_minus(g0, l, s, Rational64::one())?;
        let mut rhs = Rational64::one() + full
            + Rational64::from_integer(l.value(s))
            - params.lambda
                * (rational(edge_graph.inside_edge_count(s)?)
                    + Rational64::from_integer(l.value(s)));
        for v in s.iter() {
            rhs += params.eta[v] - Rational64::from_integer(2 * l.vertex_value(v));
        }
        if lhs >= rhs {
            verdict = false;
            witness = Some(format!("S = {s}: deficiency {lhs} >= bound {rhs}"));
            break;
        }
    }
    Ok(VerifierReport {
        preconditions_ok: true,
        failed_preconditions: Vec::new(),
        verdict,
        witness,
    })
}

/// Scaled deficiency comparison: when `d_{g0}(A) >= d_g(A)/k` everywhere,
/// `theta_l(g0 - s) <= theta_{kl}(g - s)/k
///  + sum_{v in s}(d_{g0}(v)/2 - d_g(v)/2k) - e_{g0}(s) + e_g(s)/k`.
pub fn verify_scaled_deficiency_bound(
    g: &MultiGraph,
    g0: &MultiGraph,
    l: &SetFunction,
    k: Rational64,
    s: VertexSet,
) -> Result<VerifierReport> {
    let n = g.vertex_count();
    check_verify_capacity(n, "verify_scaled_deficiency_bound")?;
    if let Some(reason) = check_spanning_subgraph(g, g0) {
        return Err(Error::NotSpanningSubgraph(reason));
    }
    let mut failed = Vec::new();
    if k < Rational64::one() {
        failed.push(format!("k must be at least 1, got {k}"));
    }
    if !l.is_intersecting_supermodular()? {
        failed.push("l is not intersecting supermodular".into());
    }
    if failed.is_empty() {
        if let Some(x) = dense_enough(g, g0, k.recip())? {
            failed.push(format!("d_g0(A) >= d_g(A)/{k} fails at A = {x}"));
        }
    }

    let lhs = theta_minus(g0, l, s, Rational64::one())?;
    let half = Rational64::new(1, 2);
    let mut rhs = k.recip() * theta_minus(g, l, s, k)?
        - rational(g0.inside_edge_count(s)?)
        + k.recip() * rational(g.inside_edge_count(s)?);
    for v in s.iter() {
        rhs += half * rational(g0.degree(v)) - k.recip() * half * rational(g.degree(v));
    }
    let verdict = lhs <= rhs;
    Ok(VerifierReport {
        preconditions_ok: failed.is_empty(),
        failed_preconditions: failed,
        verdict,
        witness: (!verdict).then(|| format!("S = {s}: deficiency {lhs} > bound {rhs}")),
    })
}

/// Searches `g0` for a spanning factor containing `required`, packing `m`
/// spanning trees, and respecting the caps. Greedy deletion first; when
/// it stalls, exhaustive backtracking (small graphs) finds a factor or
/// proves none exists (`None`).
pub fn search_capped_factor(
    g0: &MultiGraph,
    m: usize,
    caps: &DegreeCapProfile,
    required: Option<&MultiGraph>,
) -> Result<Option<FactorCertificate>> {
    let n = g0.vertex_count();
    if caps.caps.len() != n {
        return Err(Error::InvalidInput("cap table length mismatch".into()));
    }
    let required_ids: std::collections::HashSet<usize> = match required {
        None => Default::default(),
        Some(f) => {
            if let Some(reason) = check_spanning_subgraph(g0, f) {
                return Err(Error::NotSpanningSubgraph(reason));
            }
            f.edge_ids().collect()
        }
    };
    if !has_tree_packing(g0, m) {
        return Ok(None);
    }
    if let Some(f) = required {
        if !caps.respected_by(f.degrees()) {
            return Ok(None);
        }
    }

    // greedy: repair the worst cap violation by deleting a removable edge
    // whose other endpoint has the most slack to give
    let mut current = g0.clone();
    loop {
        let violator = (0..n)
            .filter(|&v| current.degree(v) as i64 > caps.caps[v])
            .max_by_key(|&v| (current.degree(v) as i64 - caps.caps[v], std::cmp::Reverse(v)));
        let Some(v) = violator else {
            let witness = extract_spanning_trees(&current, m)?;
            let cert = FactorCertificate::claim(
                g0,
                &current,
                Some(witness),
                None,
                Some(caps.caps.clone()),
                caps.special,
            )?;
            return Ok(Some(cert));
        };
        let mut candidates: Vec<(i64, usize)> = current
            .edges()
            .iter()
            .filter(|e| e.touches(v) && !required_ids.contains(&e.id))
            .map(|e| {
                let w = e.other_end(v);
                (current.degree(w) as i64 - caps.caps[w], e.id)
            })
            .collect();
        candidates.sort_by_key(|&(slack, id)| (std::cmp::Reverse(slack), id));
        let mut deleted = false;
        for (_, id) in candidates {
            let rest: Vec<usize> = current.edge_ids().filter(|&x| x != id).collect();
            let candidate = current.spanning_subgraph(&rest)?;
            if has_tree_packing(&candidate, m) {
                current = candidate;
                deleted = true;
                break;
            }
        }
        if !deleted {
            break;
        }
    }

    // greedy stalled
    if n > EXHAUSTIVE_SEARCH_LIMIT {
        return Err(Error::Capacity {
            operation: "search_capped_factor (exhaustive fallback)",
            n,
            limit: EXHAUSTIVE_SEARCH_LIMIT,
        });
    }
    exhaustive_capped(g0, m, caps, &required_ids)
}

fn exhaustive_capped(
    g0: &MultiGraph,
    m: usize,
    caps: &DegreeCapProfile,
    required_ids: &std::collections::HashSet<usize>,
) -> Result<Option<FactorCertificate>> {
    let n = g0.vertex_count();
    let mut inc_degree = vec![0i64; n];
    let mut undecided = vec![0i64; n];
    let mut optional = Vec::new();
    let mut forced = Vec::new();
    for (i, e) in g0.edges().iter().enumerate() {
        if required_ids.contains(&e.id) {
            inc_degree[e.u] += 1;
            inc_degree[e.v] += 1;
            forced.push(i);
        } else {
            undecided[e.u] += 1;
            undecided[e.v] += 1;
            optional.push(i);
        }
    }
    if inc_degree
        .iter()
        .zip(caps.caps.iter())
        .any(|(&d, &cap)| d > cap)
    {
        return Ok(None);
    }

    let mut state = SearchState {
        g0,
        m,
        caps: &caps.caps,
        optional: &optional,
        status: vec![EdgeStatus::Undecided; g0.edge_count()],
        inc_degree,
        undecided,
    };
    for &i in &forced {
        state.status[i] = EdgeStatus::In;
    }
    let found = state.descend(0);
    match found {
        None => Ok(None),
        Some(ids) => {
            let factor = g0.spanning_subgraph(&ids)?;
            let witness = extract_spanning_trees(&factor, m)?;
            let cert = FactorCertificate::claim(
                g0,
                &factor,
                Some(witness),
                None,
                Some(caps.caps.clone()),
                caps.special,
            )?;
            Ok(Some(cert))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeStatus {
    In,
    Out,
    Undecided,
}

struct SearchState<'a> {
    g0: &'a MultiGraph,
    m: usize,
    caps: &'a [i64],
    optional: &'a [usize],
    status: Vec<EdgeStatus>,
    inc_degree: Vec<i64>,
    undecided: Vec<i64>,
}

impl<'a> SearchState<'a> {
    fn descend(&mut self, depth: usize) -> Option<Vec<usize>> {
        if depth == self.optional.len() {
            let ids = self.kept_ids();
            let factor = self.g0.spanning_subgraph(&ids).ok()?;
            if has_tree_packing(&factor, self.m) {
                return Some(ids);
            }
            return None;
        }
        let index = self.optional[depth];
        let e = self.g0.edges()[index];
        self.undecided[e.u] -= 1;
        self.undecided[e.v] -= 1;

        // include
        if self.inc_degree[e.u] < self.caps[e.u] && self.inc_degree[e.v] < self.caps[e.v] {
            self.inc_degree[e.u] += 1;
            self.inc_degree[e.v] += 1;
            self.status[index] = EdgeStatus::In;
            if self.floor_ok() {
                if let Some(hit) = self.descend(depth + 1) {
                    return Some(hit);
                }
            }
            self.status[index] = EdgeStatus::Undecided;
            self.inc_degree[e.u] -= 1;
            self.inc_degree[e.v] -= 1;
        }

        // exclude, provided the surviving edges can still pack m trees
        self.status[index] = EdgeStatus::Out;
        if self.floor_ok() && self.remaining_packs() {
            if let Some(hit) = self.descend(depth + 1) {
                return Some(hit);
            }
        }
        self.status[index] = EdgeStatus::Undecided;

        self.undecided[e.u] += 1;
        self.undecided[e.v] += 1;
        None
    }

    fn floor_ok(&self) -> bool {
        self.inc_degree
            .iter()
            .zip(self.undecided.iter())
            .all(|(&d, &r)| d + r >= self.m as i64)
    }

    fn remaining_packs(&self) -> bool {
        let ids: Vec<usize> = self
            .g0
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.status[i] != EdgeStatus::Out)
            .map(|(_, e)| e.id)
            .collect();
        let candidate = self
            .g0
            .spanning_subgraph(&ids)
            .expect("ids come from the graph");
        has_tree_packing(&candidate, self.m)
    }

    fn kept_ids(&self) -> Vec<usize> {
        self.g0
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.status[i] == EdgeStatus::In)
            .map(|(_, e)| e.id)
            .collect()
    }
}

/// Integer ceiling of `c * m / (c - 1)`: the uniform threshold feeding
/// the capped pipeline.
pub fn cpartite_threshold(m: usize, c: usize) -> usize {
    (c * m).div_ceil(c - 1)
}

/// The capped-degree c-partite tree-connected factor pipeline: take the
/// edge-maximum c-partite factor, cap each vertex at
/// `ceil(d_H(v)/2 + (c-1) d_G(v)/2c)` (floor at the designated vertex),
/// and search that host for an m-tree-connected factor. Existence is
/// guaranteed when the packing precondition holds, so an exhausted search
/// here is a loud failure.
pub fn capped_cpartite_factor(
    g: &MultiGraph,
    m: usize,
    c: usize,
    u: Option<usize>,
) -> Result<FactorCertificate> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("c must be at least 2, got {c}")));
    }
    if let Some(u) = u {
        if u >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                index: u,
                n: g.vertex_count(),
            });
        }
    }
    let threshold = cpartite_threshold(m, c);
    if !has_tree_packing(g, threshold) {
        // surface the dual certificate
        return match extract_spanning_trees(g, threshold) {
            Err(e) => Err(e),
            Ok(_) => unreachable!("packing test and extraction disagree"),
        };
    }
    let host = max_cpartite_factor(g, c, 0)?;
    let half = Rational64::new(1, 2);
    let spread = Rational64::new(c as i64 - 1, 2 * c as i64);
    let caps: Vec<i64> = (0..g.vertex_count())
        .map(|v| {
            let exact = half * rational(host.factor.degree(v)) + spread * rational(g.degree(v));
            if u == Some(v) {
                exact.floor().to_integer()
            } else {
                exact.ceil().to_integer()
            }
        })
        .collect();
    let profile = DegreeCapProfile::new(caps, u);
    match search_capped_factor(&host.factor, m, &profile, None)? {
        Some(cert) => {
            // headline bound: ceil((2c-1)/2c * d_G(v)), floored at u
            let headline = Rational64::new(2 * c as i64 - 1, 2 * c as i64);
            for v in 0..g.vertex_count() {
                let exact = headline * rational(g.degree(v));
                let cap = if u == Some(v) {
                    exact.floor().to_integer()
                } else {
                    exact.ceil().to_integer()
                };
                debug_assert!(cert.degrees[v] as i64 <= cap);
            }
            cert.validate(g)?;
            Ok(cert)
        }
        None => Err(Error::Falsification(format!(
            "no {m}-tree-connected factor under the capped profile inside the \
             {c}-partite optimum of: {}",
            g.to_text()
        ))),
    }
}

/// The bipartite (c = 2) case: caps `ceil(3 d_G(v)/4)`, floor at `u`.
pub fn capped_bipartite_factor(
    g: &MultiGraph,
    m: usize,
    u: Option<usize>,
) -> Result<FactorCertificate> {
    capped_cpartite_factor(g, m, 2, u)
}
