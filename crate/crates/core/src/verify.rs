//! Verification jobs: each runs one family of finite checks over a parameter
//! range and reports per-instance PASS/FAIL/SKIP (or EVIDENCE for sweeps).

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::complex::{
    aux_graph_xn, compare_complexes, independence_complex_capped, perfect_matching_complex_capped,
    ComplexComparison, SimplicialComplex, DEFAULT_FACE_CAP,
};
use crate::error::{Error, Result};
use crate::families::{
    alternate_to_even_labels, even_attach_edges, even_tiling, grid_2xn, grid_mxn,
    odd_tiling_alternate, odd_tiling_simple, triangle_tiling, triangles_to_grid_labels,
};
use crate::graph::{isomorphic_under_edge_map, Graph};
use crate::homology::{homology_consistent_with, reduced_betti, BettiReport};
use crate::matchings::{
    enumerate_bad_matchings, grid_bad_matchings_closed_form, horizontals_coupled,
    no_perfect_matching_uses,
};
use crate::morse::{
    element_pairing_sequence, even_tiling_schedule, fold_sequence_grid, grid_even_critical_labels,
    grid_schedule, infer_homotopy_type, morse_euler_check, odd_simple_schedule, run_schedule,
    verify_acyclic, verify_partial_pairing, Evidence, HomotopyKind, HomotopyTypeReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Job {
    ThmGrid,
    ThmEvenTiling,
    ThmOddAlternate,
    ThmTriangles,
    ThmOddSimple,
    LemmaBad,
    LemmaBc,
    LemmaAttach,
    IndEqualsPm,
    FoldSequence,
    AppendixSchedules,
    Conjecture,
}

impl Job {
    pub const ALL: [Job; 12] = [
        Job::ThmGrid,
        Job::ThmEvenTiling,
        Job::ThmOddAlternate,
        Job::ThmTriangles,
        Job::ThmOddSimple,
        Job::LemmaBad,
        Job::LemmaBc,
        Job::LemmaAttach,
        Job::IndEqualsPm,
        Job::FoldSequence,
        Job::AppendixSchedules,
        Job::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Job::ThmGrid => "thm-grid",
            Job::ThmEvenTiling => "thm-even-tiling",
            Job::ThmOddAlternate => "thm-odd-alternate",
            Job::ThmTriangles => "thm-triangles",
            Job::ThmOddSimple => "thm-odd-simple",
            Job::LemmaBad => "lemma-bad",
            Job::LemmaBc => "lemma-bc",
            Job::LemmaAttach => "lemma-attach",
            Job::IndEqualsPm => "ind-equals-pm",
            Job::FoldSequence => "fold-sequence",
            Job::AppendixSchedules => "appendix-schedules",
            Job::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Job {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Job {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Job::ALL
            .into_iter()
            .find(|j| j.name() == s)
            .ok_or_else(|| format!("unknown job `{s}`"))
    }
}

/// Parameter caps for every job; the defaults keep the whole suite at desk scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub grid_n_max: usize,
    pub even_n_max: usize,
    pub even_k_max: usize,
    pub odd_n_max: usize,
    pub odd_k_max: usize,
    pub triangles_k_max: usize,
    pub sweep_m_max: usize,
    pub sweep_n_max: usize,
    pub face_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid_n_max: 10,
            even_n_max: 5,
            even_k_max: 3,
            odd_n_max: 3,
            odd_k_max: 2,
            triangles_k_max: 5,
            sweep_m_max: 4,
            sweep_n_max: 4,
            face_cap: DEFAULT_FACE_CAP,
        }
    }
}

impl VerifyConfig {
    /// Applies a `key=value` setting; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: usize) -> std::result::Result<(), String> {
        let slot = match key {
            "grid_n_max" => &mut self.grid_n_max,
            "even_n_max" => &mut self.even_n_max,
            "even_k_max" => &mut self.even_k_max,
            "odd_n_max" => &mut self.odd_n_max,
            "odd_k_max" => &mut self.odd_k_max,
            "triangles_k_max" => &mut self.triangles_k_max,
            "sweep_m_max" => &mut self.sweep_m_max,
            "sweep_n_max" => &mut self.sweep_n_max,
            "face_cap" => &mut self.face_cap,
            _ => return Err(format!("unknown setting `{key}`")),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Evidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Evidence => "EVIDENCE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub instance: String,
    pub status: Status,
    pub predicted: String,
    pub computed: String,
    pub detail: Value,
}

impl InstanceResult {
    fn new(
        instance: impl fmt::Display,
        ok: bool,
        predicted: String,
        computed: String,
        detail: Value,
    ) -> Self {
        InstanceResult {
            instance: instance.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            predicted,
            computed,
            detail,
        }
    }

    fn skip(instance: impl fmt::Display, reason: &Error) -> Self {
        InstanceResult {
            instance: instance.to_string(),
            status: Status::Skip,
            predicted: String::new(),
            computed: format!("skipped: {reason}"),
            detail: json!({"reason": reason.to_string()}),
        }
    }

    fn fail(instance: impl fmt::Display, predicted: String, reason: &Error) -> Self {
        InstanceResult {
            instance: instance.to_string(),
            status: Status::Fail,
            predicted,
            computed: format!("error: {reason}"),
            detail: json!({"error": reason.to_string()}),
        }
    }

    pub fn line(&self, job: Job) -> String {
        if self.predicted.is_empty() {
            format!(
                "{} {} {}: {}",
                self.status, job, self.instance, self.computed
            )
        } else {
            format!(
                "{} {} {}: predicted {}; computed {}",
                self.status, job, self.instance, self.predicted, self.computed
            )
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance,
            "status": self.status.to_string(),
            "predicted": self.predicted,
            "computed": self.computed,
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone)]
pub struct JobReport {
    pub job: Job,
    pub instances: Vec<InstanceResult>,
}

impl JobReport {
    pub fn count(&self, status: Status) -> usize {
        self.instances.iter().filter(|i| i.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.instances
            .iter()
            .all(|i| matches!(i.status, Status::Pass | Status::Evidence))
    }

    /// 1 if anything failed, else 3 if anything was skipped, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            1
        } else if self.count(Status::Skip) > 0 {
            3
        } else {
            0
        }
    }

    pub fn lines(&self) -> Vec<String> {
        self.instances.iter().map(|i| i.line(self.job)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "job": self.job.name(),
            "instances": self.instances.iter().map(InstanceResult::to_json).collect::<Vec<_>>(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "skip": self.count(Status::Skip),
                "evidence": self.count(Status::Evidence),
            },
        })
    }
}

pub fn run_job(job: Job, cfg: &VerifyConfig) -> JobReport {
    let instances = match job {
        Job::ThmGrid => thm_grid(cfg),
        Job::ThmEvenTiling => thm_even_tiling(cfg),
        Job::ThmOddAlternate => thm_odd_alternate(cfg),
        Job::ThmTriangles => thm_triangles(cfg),
        Job::ThmOddSimple => thm_odd_simple(cfg),
        Job::LemmaBad => lemma_bad(cfg),
        Job::LemmaBc => lemma_bc(cfg),
        Job::LemmaAttach => lemma_attach(cfg),
        Job::IndEqualsPm => ind_equals_pm(cfg),
        Job::FoldSequence => fold_sequence(cfg),
        Job::AppendixSchedules => appendix_schedules(cfg),
        Job::Conjecture => conjecture_sweep(cfg)
            .into_iter()
            .map(|r| r.into_instance())
            .collect(),
    };
    JobReport { job, instances }
}

fn predicted_kind(kind: HomotopyKind) -> HomotopyTypeReport {
    HomotopyTypeReport {
        kind,
        evidence: Evidence::None,
    }
}

/// Contractible for odd n, S^{(n-2)/2} for even n.
pub fn grid_prediction(n: usize) -> HomotopyKind {
    if n % 2 == 1 {
        HomotopyKind::Contractible
    } else {
        HomotopyKind::WedgeOfSpheres {
            dim: (n as i32 - 2) / 2,
            count: 1,
        }
    }
}

fn betti_summary(r: &BettiReport) -> String {
    if r.void {
        return "void complex".into();
    }
    let betti: Vec<String> = r.reduced_betti.iter().map(u64::to_string).collect();
    format!(
        "betti [{}] {}",
        betti.join(","),
        if r.is_torsion_free() {
            "torsion-free"
        } else {
            "with torsion"
        }
    )
}

fn complex_or_skip(
    g: &Graph,
    cfg: &VerifyConfig,
    instance: &str,
    predicted: &str,
) -> std::result::Result<SimplicialComplex, InstanceResult> {
    perfect_matching_complex_capped(g, cfg.face_cap).map_err(|e| match e {
        Error::FaceCapExceeded { .. } => InstanceResult::skip(instance, &e),
        other => InstanceResult::fail(instance, predicted.to_owned(), &other),
    })
}

/// Homology of the perfect matching complex of `g` against a predicted type.
fn homology_instance(g: &Graph, predicted: HomotopyKind, cfg: &VerifyConfig) -> InstanceResult {
    let instance = g.family().map_or_else(|| "graph".into(), |d| d.to_string());
    let c = match complex_or_skip(g, cfg, &instance, &predicted.to_string()) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let r = reduced_betti(&c);
    let ok = homology_consistent_with(&r, &predicted_kind(predicted));
    InstanceResult::new(
        &instance,
        ok,
        predicted.to_string(),
        betti_summary(&r),
        json!({"faces": c.len(), "homology": r.to_json()}),
    )
}

fn thm_grid(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.grid_n_max)
        .map(|n| match grid_2xn(n) {
            Ok(g) => homology_instance(&g, grid_prediction(n), cfg),
            Err(e) => InstanceResult::fail(format!("grid2(n={n})"), String::new(), &e),
        })
        .collect()
}

fn appendix_schedules(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.grid_n_max)
        .map(|n| appendix_instance(n, cfg))
        .collect()
}

fn appendix_instance(n: usize, cfg: &VerifyConfig) -> InstanceResult {
    let instance = format!("grid2(n={n})");
    let predicted_kind = grid_prediction(n);
    let predicted = if n % 2 == 1 {
        "0 critical cells, contractible".to_owned()
    } else {
        format!(
            "critical cell {{{}}}, {}",
            grid_even_critical_labels(n).join(","),
            predicted_kind
        )
    };
    let c = match grid_2xn(n).map_err(|e| InstanceResult::fail(&instance, predicted.clone(), &e)) {
        Ok(g) => match complex_or_skip(&g, cfg, &instance, &predicted) {
            Ok(c) => c,
            Err(r) => return r,
        },
        Err(r) => return r,
    };
    let schedule = grid_schedule(n);
    let outcome = match element_pairing_sequence(&c, &schedule) {
        Ok(o) => o,
        Err(e) => return InstanceResult::fail(&instance, predicted, &e),
    };
    let legal = verify_partial_pairing(&c, &outcome.pairing).is_valid();
    let acyclic = legal && verify_acyclic(&c, &outcome.pairing).unwrap_or(false);
    let euler = morse_euler_check(&c, &outcome.critical, outcome.empty_paired);
    let h = infer_homotopy_type(&outcome.critical, outcome.empty_paired);
    let cells: Vec<Vec<String>> = outcome.critical.faces().map(|f| c.face_labels(f)).collect();
    let census_ok = if n % 2 == 1 {
        cells.is_empty()
    } else {
        cells == [grid_even_critical_labels(n)]
    };
    let ok =
        legal && acyclic && euler && outcome.empty_paired && census_ok && h.kind == predicted_kind;
    let census: Vec<String> = cells
        .iter()
        .map(|f| format!("{{{}}}", f.join(",")))
        .collect();
    InstanceResult::new(
        &instance,
        ok,
        predicted,
        format!(
            "{} critical cell(s) [{}], acyclic {}, euler {}, {}",
            cells.len(),
            census.join(" "),
            acyclic,
            euler,
            h.kind
        ),
        json!({
            "schedule": schedule.elements(),
            "critical": cells,
            "empty_paired": outcome.empty_paired,
            "legal": legal,
            "acyclic": acyclic,
            "euler": euler,
            "homotopy": h.to_json(),
        }),
    )
}

fn thm_even_tiling(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    let mut out = Vec::new();
    for n in 3..=cfg.even_n_max {
        for k in 2..=cfg.even_k_max {
            out.push(even_tiling_instance(n, k, cfg));
        }
    }
    out
}

fn even_tiling_instance(n: usize, k: usize, cfg: &VerifyConfig) -> InstanceResult {
    let instance = format!("even-tiling(n={n},k={k})");
    let predicted = "0 critical cells, contractible".to_owned();
    let c = match even_tiling(n, k)
        .map_err(|e| InstanceResult::fail(&instance, predicted.clone(), &e))
    {
        Ok(g) => match complex_or_skip(&g, cfg, &instance, &predicted) {
            Ok(c) => c,
            Err(r) => return r,
        },
        Err(r) => return r,
    };
    let schedule = even_tiling_schedule(n);
    let report = match run_schedule(&c, &schedule) {
        Ok(r) => r,
        Err(e) => return InstanceResult::fail(&instance, predicted, &e),
    };
    let r = reduced_betti(&c);
    let ok = report.critical_count() == 0
        && report.acyclic
        && report.homotopy.kind == HomotopyKind::Contractible
        && r.is_acyclic();
    InstanceResult::new(
        &instance,
        ok,
        predicted,
        format!(
            "{} critical cell(s) with schedule {}, acyclic {}, {}",
            report.critical_count(),
            schedule,
            report.acyclic,
            betti_summary(&r)
        ),
        json!({"morse": report.to_json(), "homology": r.to_json()}),
    )
}

fn thm_odd_alternate(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    let mut out = Vec::new();
    for n in 2..=cfg.odd_n_max {
        for k in 2..=cfg.odd_k_max {
            let mut res = match odd_tiling_alternate(n, k) {
                Ok(g) => homology_instance(&g, HomotopyKind::Contractible, cfg),
                Err(e) => {
                    out.push(InstanceResult::fail(
                        format!("odd-alternate(n={n},k={k})"),
                        String::new(),
                        &e,
                    ));
                    continue;
                }
            };
            // removing the even attaching edges must give the even tiling with 2n
            let reduced = odd_tiling_alternate(n, k).and_then(|g| {
                let even = even_tiling(2 * n, k)?;
                let stripped = g.remove_edges(&even_attach_edges(&g, k)?)?;
                Ok(isomorphic_under_edge_map(
                    &stripped,
                    &even,
                    &alternate_to_even_labels(n, k),
                ))
            });
            let iso = reduced.unwrap_or(false);
            if res.status == Status::Pass && !iso {
                res.status = Status::Fail;
            }
            res.computed = format!(
                "{}, reduces to even-tiling(n={},k={k}): {iso}",
                res.computed,
                2 * n
            );
            out.push(res);
        }
    }
    out
}

fn thm_triangles(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.triangles_k_max)
        .map(|k| {
            let g = match triangle_tiling(k) {
                Ok(g) => g,
                Err(e) => {
                    return InstanceResult::fail(format!("triangles(k={k})"), String::new(), &e)
                }
            };
            let mut res = homology_instance(&g, grid_prediction(k + 1), cfg);
            let iso = grid_2xn(k + 1)
                .and_then(|grid| {
                    let stripped = g.remove_edges(&even_attach_edges(&g, k)?)?;
                    Ok(isomorphic_under_edge_map(
                        &stripped,
                        &grid,
                        &triangles_to_grid_labels(k),
                    ))
                })
                .unwrap_or(false);
            if res.status == Status::Pass && !iso {
                res.status = Status::Fail;
            }
            res.computed = format!("{}, reduces to grid2(n={}): {iso}", res.computed, k + 1);
            res
        })
        .collect()
}

fn thm_odd_simple(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    let mut out = Vec::new();
    for n in 2..=cfg.odd_n_max {
        for k in 2..=cfg.odd_k_max {
            let g = match odd_tiling_simple(n, k) {
                Ok(g) => g,
                Err(e) => {
                    out.push(InstanceResult::fail(
                        format!("odd-simple(n={n},k={k})"),
                        String::new(),
                        &e,
                    ));
                    continue;
                }
            };
            let mut res = homology_instance(&g, HomotopyKind::Contractible, cfg);
            if res.status == Status::Skip {
                out.push(res);
                continue;
            }
            let schedule = odd_simple_schedule(n);
            let census = perfect_matching_complex_capped(&g, cfg.face_cap)
                .and_then(|c| run_schedule(&c, &schedule));
            let (text, morse) = match census {
                Ok(report) => {
                    let discrepancy = report.critical_count() > 0;
                    (
                        format!(
                            "schedule {} leaves {} critical cell(s){}",
                            schedule,
                            report.critical_count(),
                            if discrepancy {
                                " (schedule discrepancy)"
                            } else {
                                ""
                            }
                        ),
                        json!({"report": report.to_json(), "discrepancy": discrepancy}),
                    )
                }
                Err(e) => (
                    format!("schedule {schedule} not executable: {e} (schedule discrepancy)"),
                    json!({"error": e.to_string(), "discrepancy": true}),
                ),
            };
            res.computed = format!("{}, {}", res.computed, text);
            res.detail["morse"] = morse;
            out.push(res);
        }
    }
    out
}

fn lemma_bad(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.grid_n_max)
        .map(|n| {
            let instance = format!("grid2(n={n})");
            let expected = 2 * n.saturating_sub(2);
            let run = || -> Result<(bool, usize)> {
                let g = grid_2xn(n)?;
                let enumerated = enumerate_bad_matchings(&g)?;
                let closed = grid_bad_matchings_closed_form(n)?;
                Ok((enumerated == closed, enumerated.len()))
            };
            match run() {
                Ok((equal, count)) => InstanceResult::new(
                    &instance,
                    equal && count == expected,
                    format!("{expected} bad matchings of the two-edge forms"),
                    format!("{count} enumerated, closed form equal: {equal}"),
                    json!({"count": count, "closed_form_equal": equal}),
                ),
                Err(e) => InstanceResult::fail(&instance, String::new(), &e),
            }
        })
        .collect()
}

fn lemma_bc(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.grid_n_max)
        .map(|n| {
            let instance = format!("grid2(n={n})");
            match horizontals_coupled(n) {
                Ok(ok) => InstanceResult::new(
                    &instance,
                    ok,
                    "b_i in τ iff c_i in τ for every perfect matching τ".into(),
                    format!("holds: {ok}"),
                    json!({"coupled": ok}),
                ),
                Err(e) => InstanceResult::fail(&instance, String::new(), &e),
            }
        })
        .collect()
}

fn lemma_attach(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    let mut graphs = Vec::new();
    for n in 2..=cfg.odd_n_max {
        for k in 2..=cfg.odd_k_max {
            graphs.push((k, odd_tiling_alternate(n, k)));
        }
    }
    for k in 2..=cfg.triangles_k_max {
        graphs.push((k, triangle_tiling(k)));
    }
    graphs
        .into_iter()
        .map(|(k, g)| {
            let run = || -> Result<(String, bool)> {
                let g = g?;
                let name = g.family().map_or_else(|| "graph".into(), |d| d.to_string());
                Ok((
                    name,
                    no_perfect_matching_uses(&g, &even_attach_edges(&g, k)?)?,
                ))
            };
            match run() {
                Ok((name, ok)) => InstanceResult::new(
                    name,
                    ok,
                    "no perfect matching uses a_2, a_4, …".into(),
                    format!("holds: {ok}"),
                    json!({"excluded": ok}),
                ),
                Err(e) => InstanceResult::fail(format!("k={k}"), String::new(), &e),
            }
        })
        .collect()
}

fn ind_equals_pm(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (2..=cfg.grid_n_max)
        .map(|n| {
            let instance = format!("grid2(n={n})");
            let run = || -> Result<(ComplexComparison, usize)> {
                let ind = independence_complex_capped(&aux_graph_xn(n)?, cfg.face_cap)?;
                let pm = perfect_matching_complex_capped(&grid_2xn(n)?, cfg.face_cap)?;
                Ok((compare_complexes(&ind, &pm, None), pm.len()))
            };
            match run() {
                Ok((cmp, faces)) => InstanceResult::new(
                    &instance,
                    cmp.is_equal(),
                    "independence complex of the auxiliary graph equals the matching complex"
                        .into(),
                    format!("{cmp:?} over {faces} faces"),
                    json!({"equal": cmp.is_equal(), "faces": faces}),
                ),
                Err(e @ Error::FaceCapExceeded { .. }) => InstanceResult::skip(&instance, &e),
                Err(e) => InstanceResult::fail(&instance, String::new(), &e),
            }
        })
        .collect()
}

fn fold_sequence(cfg: &VerifyConfig) -> Vec<InstanceResult> {
    (3..=cfg.grid_n_max)
        .map(|n| {
            let instance = format!("aux(n={n})");
            let predicted = format!(
                "three valid folds onto aux(n={}) + P_3, homology unchanged",
                n - 2
            );
            let run = || -> Result<(Vec<Vec<u64>>, bool)> {
                let seq = fold_sequence_grid(n)?;
                let mut reports = Vec::new();
                for g in &seq.graphs {
                    reports.push(reduced_betti(&independence_complex_capped(
                        g,
                        cfg.face_cap,
                    )?));
                }
                let invariant = reports.windows(2).all(|w| w[0].same_homology(&w[1]));
                Ok((
                    reports.into_iter().map(|r| r.reduced_betti).collect(),
                    invariant,
                ))
            };
            match run() {
                Ok((betti, invariant)) => InstanceResult::new(
                    &instance,
                    invariant,
                    predicted,
                    format!("folds certified, betti per step {betti:?}, invariant {invariant}"),
                    json!({"betti": betti, "invariant": invariant}),
                ),
                Err(e @ Error::FaceCapExceeded { .. }) => InstanceResult::skip(&instance, &e),
                Err(e) => InstanceResult::fail(&instance, predicted, &e),
            }
        })
        .collect()
}

/// One row of the m×n grid sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub m: usize,
    pub n: usize,
    pub outcome: std::result::Result<BettiReport, Error>,
}

impl SweepRow {
    pub fn betti_field(&self) -> String {
        match &self.outcome {
            Ok(r) if r.void => "void".into(),
            Ok(r) => r
                .reduced_betti
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            Err(e) => format!("skipped ({e})"),
        }
    }

    pub fn torsion_free_field(&self) -> String {
        match &self.outcome {
            Ok(r) => r.is_torsion_free().to_string(),
            Err(_) => "unknown".into(),
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.m,
            self.n,
            self.betti_field(),
            self.torsion_free_field()
        )
    }

    fn into_instance(self) -> InstanceResult {
        let instance = format!("grid(m={},n={})", self.m, self.n);
        match &self.outcome {
            Ok(r) => InstanceResult {
                instance,
                status: Status::Evidence,
                predicted: String::new(),
                computed: format!("{} ({})", betti_summary(r), r.shadow().kind),
                detail: r.to_json(),
            },
            Err(e) => InstanceResult::skip(instance, e),
        }
    }
}

pub const SWEEP_CSV_HEADER: &str = "m,n,betti,torsion_free";

/// Homology of the perfect matching complex of every m×n grid with
/// 1 ≤ m ≤ m_max, 1 ≤ n ≤ n_max. Evidence only.
pub fn conjecture_sweep(cfg: &VerifyConfig) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for m in 1..=cfg.sweep_m_max {
        for n in 1..=cfg.sweep_n_max {
            let outcome = grid_mxn(m, n)
                .and_then(|g| perfect_matching_complex_capped(&g, cfg.face_cap))
                .map(|c| reduced_betti(&c));
            rows.push(SweepRow { m, n, outcome });
        }
    }
    rows
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}
