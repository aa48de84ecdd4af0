//! Claims harness: ties every family claim to a machine check and reports
//! the outcome with a witness.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::families::{accelerated_binomial_core, ceil_log2, Family, FamilySpec};
use crate::graph::{bfs_distances, is_biconnected, LabeledGraph, Role};
use crate::schemes::{validate_schedule, SchemeKind, Violation};
use crate::solver::{broadcast_time, exact_broadcast_time};

use super::{find_sp_terminals, is_sp, planarity_check, verify_embedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Degrees,
    Distances,
    Sp,
    Planar,
    Biconnected,
    Scheme,
    Exact,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Degrees, Check::Distances, Check::Sp, Check::Planar, Check::Biconnected, Check::Scheme, Check::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Check::Degrees => "degrees",
            Check::Distances => "distances",
            Check::Sp => "sp",
            Check::Planar => "planar",
            Check::Biconnected => "biconnected",
            Check::Scheme => "scheme",
            Check::Exact => "exact",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// Ordered set of checks, parsed from `sp,planar,...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckSet(BTreeSet<Check>);

impl CheckSet {
    pub fn all() -> CheckSet {
        CheckSet(Check::ALL.into_iter().collect())
    }

    pub fn parse(list: &str) -> Result<CheckSet> {
        let set: BTreeSet<Check> =
            list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Check::from_str).collect::<Result<_>>()?;
        if set.is_empty() {
            return Err(Error::Parse("empty check list".into()));
        }
        Ok(CheckSet(set))
    }

    pub fn contains(&self, c: Check) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Check> + '_ {
        self.0.iter().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not evaluated (for instance, above the exact solver's cap).
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    Value { expected: String, actual: String },
    Kernel { edges: Vec<(usize, usize)> },
    Embedding { faces: usize, genus: usize, components: usize },
    NonPlanar { block_edges: usize },
    Rounds { rounds: usize, origin: usize, bound: Option<usize> },
    Violation { origin: usize, violation: Violation },
    Error { message: String },
}

/// What is being claimed, about which instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub family: Option<Family>,
    pub k: Option<u32>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(flatten)]
    pub claim: Claim,
    pub verdict: Verdict,
    pub witness: Witness,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).expect("report serializes"))
    }
}

/// Claimed broadcast-time bound of a family instance (for `ab`, of
/// `AB_k` without `t`). `None` for `k3sp`, whose claim is `ceil(n/2)` on
/// the exact value only.
pub fn claimed_bound(family: Family, k: u32, n: usize) -> Option<usize> {
    let k = k as usize;
    Some(match family {
        Family::Bt => (2 * k).saturating_sub(1),
        Family::Mb => 3 * k / 2,
        Family::B => k + 1,
        Family::Eb | Family::Pb => k,
        Family::Rb => ceil_log2(n) as usize + 1,
        Family::Ab => (4 * k).div_ceil(3),
        Family::K3sp => return None,
    })
}

/// Whether the claimed bound is the exact broadcast time.
fn bound_is_exact(family: Family) -> bool {
    matches!(family, Family::Bt | Family::Mb | Family::B | Family::Eb | Family::Pb)
}

fn scheme_kind(family: Family) -> Option<SchemeKind> {
    Some(match family {
        Family::Bt => SchemeKind::Binomial,
        Family::Mb => SchemeKind::Mb,
        Family::B | Family::Eb | Family::Pb => SchemeKind::Composed,
        Family::Rb => SchemeKind::Relaxed,
        Family::Ab => SchemeKind::Ab,
        Family::K3sp => return None,
    })
}

/// The graph whose broadcast time a family claims something about.
fn measured(spec: &FamilySpec, g: &LabeledGraph) -> LabeledGraph {
    match spec.family {
        Family::Ab => accelerated_binomial_core(spec.k),
        _ => g.clone(),
    }
}

/// Finds the family instance `g` is, by rebuilding canonical candidates.
/// Random `k3sp` graphs are never identified.
pub fn identify_family(g: &LabeledGraph) -> Option<FamilySpec> {
    let n = g.n();
    let mut candidates = Vec::new();
    if n.is_power_of_two() {
        let k = n.trailing_zeros();
        candidates.push(FamilySpec::new(Family::Bt, k));
        candidates.push(FamilySpec::new(Family::Mb, k));
    }
    if n >= 2 && (n - 1).is_power_of_two() {
        let k = (n - 1).trailing_zeros();
        candidates.push(FamilySpec::new(Family::B, k));
        candidates.push(FamilySpec::new(Family::Ab, k));
    }
    if n >= 2 {
        let k = ceil_log2(n);
        candidates.push(FamilySpec::new(Family::Eb, k).with_n(n));
        candidates.push(FamilySpec::new(Family::Pb, k).with_n(n));
        candidates.push(FamilySpec::new(Family::Rb, k).with_n(n));
    }
    candidates.into_iter().find(|spec| spec.validate().is_ok() && spec.build().is_ok_and(|b| b.graph == g.graph))
}

struct Ctx<'a> {
    spec: Option<&'a FamilySpec>,
    g: &'a LabeledGraph,
    cap: usize,
}

impl Ctx<'_> {
    fn report(&self, check: &str, verdict: Verdict, witness: Witness) -> VerificationReport {
        let prefix = self.spec.map_or("graph", |s| s.family.tag());
        VerificationReport {
            claim: Claim {
                id: format!("{prefix}.{check}"),
                family: self.spec.map(|s| s.family),
                k: self.spec.map(|s| s.k),
                n: self.g.n(),
            },
            verdict,
            witness,
        }
    }

    fn value(&self, check: &str, ok: bool, expected: String, actual: String) -> VerificationReport {
        self.report(check, if ok { Verdict::Pass } else { Verdict::Fail }, Witness::Value { expected, actual })
    }

    fn error(&self, check: &str, e: impl fmt::Display) -> VerificationReport {
        self.report(check, Verdict::Fail, Witness::Error { message: e.to_string() })
    }
}

fn degrees(ctx: &Ctx, spec: &FamilySpec) -> Option<VerificationReport> {
    let g = ctx.g;
    let k = spec.k as usize;
    let n_expected = spec.vertex_count().ok()?;
    let t_deg = |g: &LabeledGraph| g.role(Role::T).map_or(0, |t| g.graph.degree(t));
    let (expected, actual) = match spec.family {
        Family::Bt => {
            (format!("n={n_expected} max_degree={k}"), format!("n={} max_degree={}", g.n(), g.graph.max_degree()))
        }
        Family::Mb => {
            (format!("n={n_expected} max_degree={}", k - 1), format!("n={} max_degree={}", g.n(), g.graph.max_degree()))
        }
        Family::B | Family::Ab | Family::Eb | Family::Pb | Family::Rb => {
            (format!("n={n_expected} deg(t)={}", n_expected - 1), format!("n={} deg(t)={}", g.n(), t_deg(g)))
        }
        Family::K3sp => (
            format!("n={n_expected} min_degree>=2"),
            format!("n={} min_degree>={}", g.n(), g.graph.min_degree().min(2)),
        ),
    };
    Some(ctx.value("degrees", expected == actual, expected, actual))
}

fn show(d: Option<usize>) -> String {
    d.map_or("inf".into(), |d| d.to_string())
}

fn distances(ctx: &Ctx, spec: &FamilySpec) -> Option<VerificationReport> {
    let g = ctx.g;
    let k = spec.k as usize;
    match spec.family {
        Family::Mb => {
            let (s, t, tp) = (g.role(Role::S)?, g.role(Role::T)?, g.role(Role::TPrime)?);
            let d = bfs_distances(&g.graph, s);
            let actual = format!("dist(s,t)={} dist(s,t')={}", show(d[t].hops()), show(d[tp].hops()));
            let expected = format!("dist(s,t)={} dist(s,t')={k}", k + 1);
            Some(ctx.value("distances", expected == actual, expected, actual))
        }
        Family::Bt => {
            let ecc = g.graph.eccentricity(0);
            Some(ctx.value("distances", ecc == Some(k), format!("ecc(root)={k}"), format!("ecc(root)={}", show(ecc))))
        }
        Family::Ab => {
            let core = accelerated_binomial_core(spec.k);
            let labels = core.dist_label.as_ref()?;
            let bound = spec.k.div_ceil(3) as usize;
            let bfs = bfs_distances(&core.graph, 0);
            // the chain "neighbour labelled one less" must reach s in label(v) steps
            let bad = (0..core.n()).find(|&v| {
                let mut cur = v;
                let mut steps = 0;
                while cur != 0 && steps <= bound {
                    let want = labels[&cur].wrapping_sub(1);
                    match core.graph.neighbors(cur).iter().find(|w| labels.get(w) == Some(&want)) {
                        Some(&w) => cur = w,
                        None => break,
                    }
                    steps += 1;
                }
                cur != 0 || steps != labels[&v] || labels[&v] > bound || bfs[v].hops().is_none_or(|d| d > labels[&v])
            });
            let actual = match bad {
                None => format!("every label chain reaches s within {bound}"),
                Some(v) => format!("vertex {v} (label {}) breaks the label chain", labels[&v]),
            };
            Some(ctx.value("distances", bad.is_none(), format!("every label chain reaches s within {bound}"), actual))
        }
        Family::B | Family::Rb | Family::Eb | Family::Pb => {
            let ecc = g.role(Role::T).and_then(|t| g.graph.eccentricity(t));
            Some(ctx.value("distances", ecc == Some(1), "ecc(t)=1".into(), format!("ecc(t)={}", show(ecc))))
        }
        Family::K3sp => None,
    }
}

/// SP check. In `literal` mode the graph must be SP; in family mode the
/// family's own claim is checked (`AB_k`, `k >= 2`, and `PB_k`, `k >= 3`,
/// are claimed not SP).
fn sp(ctx: &Ctx, literal: bool, terminals: Option<(usize, usize)>, try_all: bool) -> VerificationReport {
    let g = ctx.g;
    let family = ctx.spec.map(|s| (s.family, s.k));
    let expect_sp = literal || !matches!(family, Some((Family::Ab, 2..)) | Some((Family::Pb, 3..)));
    let id = if expect_sp { "sp" } else { "not_sp" };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if let Some(p) = terminals {
        pairs.push(p);
    } else if let (Some(s), Some(t)) = (g.role(Role::S), g.role(Role::T)) {
        pairs.push((s, t));
        if matches!(family, Some((Family::K3sp, _))) {
            // the base triangle's edges, in construction order
            pairs.extend([(0, 2), (1, 2)]);
        }
    }
    if pairs.is_empty() && !try_all {
        return ctx.error(id, "no terminals: pass --terminals S,T or --try-all-pairs");
    }
    let mut kernel = Vec::new();
    for &(s, t) in &pairs {
        match is_sp(&g.graph, s, t) {
            Ok(v) if v.is_sp => {
                return ctx.report(
                    id,
                    if expect_sp { Verdict::Pass } else { Verdict::Fail },
                    Witness::Kernel { edges: v.kernel },
                );
            }
            Ok(v) => {
                if kernel.is_empty() {
                    kernel = v.kernel;
                }
            }
            Err(e) => return ctx.error(id, e),
        }
    }
    if try_all {
        match find_sp_terminals(&g.graph) {
            Ok(Some((s, t))) => {
                let v = is_sp(&g.graph, s, t).expect("pair just accepted");
                return ctx.report(
                    id,
                    if expect_sp { Verdict::Pass } else { Verdict::Fail },
                    Witness::Kernel { edges: v.kernel },
                );
            }
            Ok(None) => {}
            Err(e) => return ctx.error(id, e),
        }
    }
    ctx.report(id, if expect_sp { Verdict::Fail } else { Verdict::Pass }, Witness::Kernel { edges: kernel })
}

fn planar(ctx: &Ctx) -> VerificationReport {
    let g = ctx.g;
    let rot = match &g.rotation {
        Some(r) => Ok(r.clone()),
        None => planarity_check(&g.graph),
    };
    match rot {
        Ok(rot) => match verify_embedding(&g.graph, &rot) {
            Ok(rep) => ctx.report(
                "planar",
                if rep.planar { Verdict::Pass } else { Verdict::Fail },
                Witness::Embedding { faces: rep.faces, genus: rep.genus, components: rep.components },
            ),
            Err(e) => ctx.error("planar", e),
        },
        Err(np) => ctx.report("planar", Verdict::Fail, Witness::NonPlanar { block_edges: np.block.len() }),
    }
}

fn biconnected(ctx: &Ctx) -> VerificationReport {
    match is_biconnected(&ctx.g.graph) {
        Ok(b) => ctx.value("biconnected", b, "true".into(), b.to_string()),
        Err(e) => ctx.error("biconnected", e),
    }
}

/// Worst completion of `kind` over all origins of `g`.
pub fn worst_scheme_rounds(g: &LabeledGraph, kind: SchemeKind) -> Result<(usize, usize), (usize, String)> {
    let results: Vec<Result<usize, (usize, String)>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let s = kind.run(g, v).map_err(|e| (v, e.to_string()))?;
            validate_schedule(&g.graph, &s).map_err(|viol| (v, serde_json::to_string(&viol).expect("serializes")))
        })
        .collect();
    let mut worst = (0, 0);
    for (v, r) in results.into_iter().enumerate() {
        let r = r?;
        if r > worst.0 {
            worst = (r, v);
        }
    }
    Ok(worst)
}

fn scheme(ctx: &Ctx) -> Option<VerificationReport> {
    let (kind, bound, target) = match ctx.spec {
        Some(spec) => {
            let kind = scheme_kind(spec.family)?;
            (kind, claimed_bound(spec.family, spec.k, ctx.g.n()), measured(spec, ctx.g))
        }
        None => (SchemeKind::Greedy, None, ctx.g.clone()),
    };
    Some(match worst_scheme_rounds(&target, kind) {
        Ok((rounds, origin)) => {
            let ok = bound.is_none_or(|b| rounds <= b);
            ctx.report(
                "scheme",
                if ok { Verdict::Pass } else { Verdict::Fail },
                Witness::Rounds { rounds, origin, bound },
            )
        }
        Err((origin, msg)) => match serde_json::from_str::<serde_json::Value>(&msg) {
            Ok(_) => ctx.report(
                "scheme",
                Verdict::Fail,
                Witness::Error { message: format!("origin {origin}: invalid schedule {msg}") },
            ),
            Err(_) => ctx.error("scheme", format!("origin {origin}: {msg}")),
        },
    })
}

fn exact(ctx: &Ctx) -> Vec<VerificationReport> {
    let (target, bound, is_exact) = match ctx.spec {
        Some(spec) => (
            measured(spec, ctx.g),
            claimed_bound(spec.family, spec.k, ctx.g.n())
                .or_else(|| (spec.family == Family::K3sp).then(|| ctx.g.n().div_ceil(2))),
            bound_is_exact(spec.family),
        ),
        None => (ctx.g.clone(), None, false),
    };
    if target.n() > ctx.cap {
        return vec![ctx.report(
            "exact",
            Verdict::Skipped,
            Witness::Error { message: format!("{} vertices exceeds the solver cap {}", target.n(), ctx.cap) },
        )];
    }
    let mut out = Vec::new();
    match broadcast_time(&target.graph, ctx.cap) {
        Ok((rounds, origin)) => {
            // the witness schedule must replay to the reported time
            let witness_ok = exact_broadcast_time(&target.graph, origin, ctx.cap)
                .is_ok_and(|(r, s)| r == rounds && validate_schedule(&target.graph, &s) == Ok(rounds));
            let ok = witness_ok && bound.is_none_or(|b| if is_exact { rounds == b } else { rounds <= b });
            out.push(ctx.report(
                "exact",
                if ok { Verdict::Pass } else { Verdict::Fail },
                Witness::Rounds { rounds, origin, bound },
            ));
        }
        Err(e) => out.push(ctx.error("exact", e)),
    }
    if let Some(spec) = ctx.spec.filter(|s| s.family == Family::Mb) {
        let s = ctx.g.role(Role::S).expect("MB has s");
        match exact_broadcast_time(&ctx.g.graph, s, ctx.cap) {
            Ok((rounds, _)) => {
                let want = spec.k as usize + 1;
                out.push(ctx.report(
                    "terminal_exact",
                    if rounds == want { Verdict::Pass } else { Verdict::Fail },
                    Witness::Rounds { rounds, origin: s, bound: Some(want) },
                ));
            }
            Err(e) => out.push(ctx.error("terminal_exact", e)),
        }
    }
    out
}

fn run_checks(
    ctx: &Ctx,
    checks: &CheckSet,
    literal: bool,
    terminals: Option<(usize, usize)>,
    try_all: bool,
) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for c in checks.iter() {
        match c {
            Check::Degrees => out.extend(ctx.spec.and_then(|s| degrees(ctx, s))),
            Check::Distances => out.extend(ctx.spec.and_then(|s| distances(ctx, s))),
            Check::Sp => {
                if literal || !matches!(ctx.spec.map(|s| s.family), Some(Family::Bt)) {
                    out.push(sp(ctx, literal, terminals, try_all));
                }
            }
            Check::Planar => out.push(planar(ctx)),
            Check::Biconnected => {
                let claimed = match ctx.spec {
                    Some(s) => match s.family {
                        Family::K3sp | Family::Eb | Family::Pb => true,
                        Family::B | Family::Ab => s.k >= 1,
                        Family::Rb => ctx.g.n() >= 3,
                        Family::Bt | Family::Mb => false,
                    },
                    None => true,
                };
                if literal || claimed {
                    out.push(biconnected(ctx));
                }
            }
            Check::Scheme => out.extend(scheme(ctx)),
            Check::Exact => out.extend(exact(ctx)),
        }
    }
    out
}

/// Runs the selected checks on each family instance. Instances are handled
/// in parallel; the output order follows `specs`, then check order.
pub fn verify_family_claims(specs: &[FamilySpec], checks: &CheckSet, cap: usize) -> Vec<VerificationReport> {
    specs
        .par_iter()
        .map(|spec| match spec.build() {
            Ok(g) => run_checks(&Ctx { spec: Some(spec), g: &g, cap }, checks, false, None, false),
            Err(e) => {
                let g = LabeledGraph::plain(crate::graph::Graph::new(0, &[]).expect("empty graph"));
                vec![Ctx { spec: Some(spec), g: &g, cap }.error("build", e)]
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Options for [`verify_graph`].
#[derive(Debug, Clone, Copy)]
pub struct GraphCheckOptions {
    pub terminals: Option<(usize, usize)>,
    pub try_all_pairs: bool,
    pub cap: usize,
}

/// Checks a graph from a file. `sp`, `planar` and `biconnected` assert the
/// property itself; `degrees`, `distances`, `scheme` and `exact` use the
/// claims of the family the graph is recognised as (a generic greedy /
/// exact report otherwise).
pub fn verify_graph(g: &LabeledGraph, checks: &CheckSet, opts: GraphCheckOptions) -> Result<Vec<VerificationReport>> {
    if let Some((s, t)) = opts.terminals {
        if s >= g.n() || t >= g.n() {
            return Err(domain(format!("terminals ({s}, {t}) out of range for n = {}", g.n())));
        }
    }
    let spec = identify_family(g);
    let ctx = Ctx { spec: spec.as_ref(), g, cap: opts.cap };
    Ok(run_checks(&ctx, checks, true, opts.terminals, opts.try_all_pairs))
}

/// One line of the claims table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: Family,
    pub k: u32,
    pub n: usize,
    pub claimed_bound: usize,
    pub scheme_rounds_worst: usize,
    /// `None` when the instance is above the solver cap.
    pub exact_rounds: Option<usize>,
    pub sp: bool,
    pub planar: bool,
}

pub fn table_row(spec: &FamilySpec, cap: usize) -> Result<TableRow> {
    let g = spec.build()?;
    let n = g.n();
    let claimed = claimed_bound(spec.family, spec.k, n)
        .ok_or_else(|| domain(format!("family {} has no tabulated bound", spec.family)))?;
    let kind = scheme_kind(spec.family).expect("bounded families have a scheme");
    let target = measured(spec, &g);
    let (worst, _) =
        worst_scheme_rounds(&target, kind).map_err(|(v, msg)| domain(format!("scheme failed from {v}: {msg}")))?;
    let exact_rounds = if target.n() <= cap { Some(broadcast_time(&target.graph, cap)?.0) } else { None };
    let sp = match (g.role(Role::S), g.role(Role::T)) {
        (Some(s), Some(t)) => is_sp(&g.graph, s, t)?.is_sp,
        _ => false,
    };
    let planar = planarity_check(&g.graph).is_ok();
    Ok(TableRow {
        family: spec.family,
        k: spec.k,
        n,
        claimed_bound: claimed,
        scheme_rounds_worst: worst,
        exact_rounds,
        sp,
        planar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::DEFAULT_CAP;

    fn specs(family: Family, ks: std::ops::RangeInclusive<u32>) -> Vec<FamilySpec> {
        ks.map(|k| FamilySpec::new(family, k)).collect()
    }

    #[test]
    fn mb_claims_pass() {
        let reports = verify_family_claims(&specs(Family::Mb, 3..=6), &CheckSet::all(), DEFAULT_CAP);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
        assert!(reports.iter().any(|r| r.claim.id == "mb.terminal_exact"));
    }

    #[test]
    fn mb2_degree_claim_is_unattainable() {
        // a connected graph on four vertices has a vertex of degree >= 2
        let reports =
            verify_family_claims(&specs(Family::Mb, 2..=2), &CheckSet::parse("degrees").unwrap(), DEFAULT_CAP);
        assert_eq!(reports[0].verdict, Verdict::Fail);
    }

    #[test]
    fn ab_is_planar_and_not_sp() {
        let checks = CheckSet::parse("sp,planar,distances").unwrap();
        let reports = verify_family_claims(&specs(Family::Ab, 2..=6), &checks, DEFAULT_CAP);
        assert_eq!(reports.iter().filter(|r| r.claim.id == "ab.not_sp").count(), 5);
        assert!(reports.iter().all(|r| r.verdict == Verdict::Pass), "{reports:?}");
    }

    #[test]
    fn literal_sp_on_ab_fails_with_kernel() {
        let g = FamilySpec::new(Family::Ab, 2).build().unwrap();
        let opts = GraphCheckOptions { terminals: None, try_all_pairs: false, cap: DEFAULT_CAP };
        let reports = verify_graph(&g, &CheckSet::parse("sp").unwrap(), opts).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Fail);
        assert!(matches!(&reports[0].witness, Witness::Kernel { edges } if !edges.is_empty()));
    }

    #[test]
    fn identification() {
        for (f, k) in
            [(Family::Mb, 3), (Family::Eb, 5), (Family::Pb, 6), (Family::Ab, 3), (Family::B, 2), (Family::Bt, 3)]
        {
            let g = FamilySpec::new(f, k).build().unwrap();
            let spec = identify_family(&g).unwrap();
            assert_eq!((spec.family, spec.k), (f, k));
        }
    }

    #[test]
    fn table_rows() {
        let row = table_row(&FamilySpec::new(Family::Bt, 3), DEFAULT_CAP).unwrap();
        assert_eq!(row.exact_rounds, Some(5));
        let row = table_row(&FamilySpec::new(Family::Pb, 8), DEFAULT_CAP).unwrap();
        assert_eq!(row.n, 160);
        assert_eq!(row.exact_rounds, None);
        assert!(row.scheme_rounds_worst <= 8 && row.planar && !row.sp);
        assert!(table_row(&FamilySpec::new(Family::K3sp, 4), DEFAULT_CAP).is_err());
    }

    #[test]
    fn check_set_parsing() {
        assert_eq!(CheckSet::parse("sp, planar").unwrap().iter().count(), 2);
        assert!(CheckSet::parse("sp,bogus").is_err());
        assert!(CheckSet::parse("").is_err());
    }
}
