use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use su21_core::algebra::{self, AElement, AIdentity};
use su21_core::clifford::{self, CliffElement};
use su21_core::cohomology;
use su21_core::enveloping;
use su21_core::induction::{self, canonical_image_rank, certify_words, dim_v, raw_words, Phi, XsIdentity};
use su21_core::lie::{self, GGenerator};
use su21_core::module::{self, DiscreteSeriesModule, SpectrumWindow};
use su21_core::{CheckFailure, CheckResult, CheckStats};

use crate::config::{RunConfig, Suite};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
    pub counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub run_id: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            1
        } else {
            0
        }
    }
}

type CheckFn<'a> = Box<dyn Fn() -> CheckResult + Send + Sync + 'a>;

struct Check<'a> {
    id: String,
    anchor: String,
    run: CheckFn<'a>,
}

fn check<'a>(id: impl Into<String>, anchor: impl Into<String>, run: impl Fn() -> CheckResult + Send + Sync + 'a) -> Check<'a> {
    Check { id: id.into(), anchor: anchor.into(), run: Box::new(run) }
}

fn execute(c: &Check<'_>) -> CheckRecord {
    let start = Instant::now();
    let res = (c.run)();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (status, witness, counts) = match res {
        Ok(stats) => {
            let mut counts: BTreeMap<String, u64> = stats.counts.into_iter().collect();
            counts.insert("cases".into(), stats.cases as u64);
            (Status::Pass, None, counts)
        }
        Err(e) => (Status::Fail, Some(e.witness), BTreeMap::new()),
    };
    CheckRecord { id: c.id.clone(), anchor: c.anchor.clone(), status, witness, elapsed_ms, counts }
}

fn fail(e: impl std::fmt::Display) -> CheckFailure {
    CheckFailure::new(e.to_string())
}

/// Rank of the canonical images plus certification of every raw word, split across the pool.
pub fn verify_isomorphism_parallel(module: &DiscreteSeriesModule, k: u32, l: u32, max_deg: u32, threads: usize) -> CheckResult {
    let p = module.p().clone();
    let dim = dim_v(&p, k, l);
    let mut phi = Phi::new(module).map_err(fail)?;
    let (count, rank) = canonical_image_rank(&mut phi, k, l).map_err(fail)?;
    if count != 4 * dim {
        return Err(CheckFailure::new(format!("canonical count {count} != 4 dim V = {}", 4 * dim)));
    }
    if rank != count {
        return Err(CheckFailure::new(format!("canonical images have rank {rank} < {count}")));
    }
    let words = raw_words(max_deg, cohomology::w_dim(&p));
    let chunk = words.len().div_ceil(threads * 4).max(1);
    let steps: Vec<u64> = words.par_chunks(chunk).map(|ch| certify_words(module, ch, max_deg)).collect::<Result<_, _>>().map_err(fail)?;
    Ok(CheckStats::new(words.len() + 1)
        .with("canonical_count", count as u64)
        .with("phi_rank", rank as u64)
        .with("raw_words", words.len() as u64)
        .with("rewrite_steps", steps.iter().sum()))
}

fn checks_for<'a>(suite: Suite, cfg: &'a RunConfig, module: Option<&'a DiscreteSeriesModule>) -> Vec<Check<'a>> {
    let mut out = Vec::new();
    match suite {
        Suite::Structure => {
            out.push(check("structure.brackets", "structure", lie::verify_structure));
            out.push(check("structure.alpha", "alpha", lie::verify_alpha_homomorphism));
        }
        Suite::Clifford => {
            out.push(check("clifford.axioms", "clifford", clifford::verify_clifford_axioms));
            out.push(check("clifford.projections", "pp", clifford::verify_projections));
            out.push(check("clifford.e1e2", "E1E2", clifford::verify_e1e2_annihilator));
            out.push(check("clifford.invariants", "C(p)^K", clifford::verify_cliff_invariants));
        }
        Suite::Enveloping => {
            out.push(check("enveloping.calc", "calc", || enveloping::verify_calc(6)));
            out.push(check("enveloping.lem", "lem", || enveloping::verify_ad_f_powers(3)));
            for d in 1..=4 {
                out.push(check(format!("enveloping.ug.{d}"), "ug", move || enveloping::verify_pbw_basis(d)));
            }
            for n in 2..=5u8 {
                out.push(check(format!("enveloping.sym.{n}"), "sym", move || enveloping::verify_sym_decomposition(n)));
            }
            out.push(check("enveloping.casimir", "casimir", enveloping::verify_casimir));
        }
        Suite::Algebra => {
            for id in AIdentity::ALL {
                out.push(check(format!("algebra.{}", id.id()), id.anchor(), move || algebra::verify_identity(id)));
            }
            out.push(check("algebra.k_dirac", "k-dirac", algebra::verify_k_dirac));
            out.push(check("algebra.b_invariance", "b-invariance", algebra::verify_b_generators));
        }
        Suite::Module => {
            let m = module.expect("module suites get a module");
            let w = m.window();
            let labels: Vec<_> = w.labels().map(|(n, k)| w.label(n, k)).collect();
            out.push(check("module.cg", "paction", move || module::verify_cg_maps(&labels)));
            out.push(check("module.relations", "transition", move || module::verify_relations(&m.table)));
            out.push(check("module.paction_shape", "paction", move || module::verify_paction_shape(m)));
            let (bn, bm) = (w.n_max.saturating_sub(2), w.m_max.saturating_sub(2));
            out.push(check("module.basis1", "basis1", move || module::verify_basis1(m, bn, bm)));
            out.push(check("module.action", "kaction", move || {
                let gens: Vec<AElement> = GGenerator::ALL.iter().map(|g| AElement::gen_tensor(*g, &CliffElement::one())).collect();
                let pairs: Vec<(AElement, AElement)> =
                    gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
                module::verify_action_compatibility(m, &pairs, 2)
            }));
        }
        Suite::Cohomology => {
            let m = module.expect("module suites get a module");
            out.push(check("cohomology.kernel", "dircoho", move || cohomology::verify_kernel(m)));
            out.push(check("cohomology.action", "dircoho", move || cohomology::verify_dircoho_action(m)));
            out.push(check("cohomology.scalars", "scalars", move || cohomology::verify_scalar_actions(m)));
        }
        Suite::Induction => {
            let m = module.expect("module suites get a module");
            for id in XsIdentity::ALL {
                out.push(check(format!("induction.{}", id.id()), id.anchor(), move || induction::verify_xs_identity(m, id, 2)));
            }
            let (k, l) = cfg.basis;
            out.push(check("induction.basis", "finite_basis", move || induction::verify_finite_bases(m, k, l)));
            let (deg, threads) = (cfg.max_deg, cfg.threads);
            out.push(check("induction.main", "isomorphism", move || verify_isomorphism_parallel(m, k, l, deg, threads)));
        }
    }
    out
}

/// Builds the module for `cfg`, mapping solver failures to exit code 3.
pub fn build_module(cfg: &RunConfig) -> Result<DiscreteSeriesModule, CliError> {
    let w = SpectrumWindow::new(cfg.p(), cfg.window.0, cfg.window.1)?;
    let table = module::solve_transitions(&w)?;
    Ok(DiscreteSeriesModule::new(table))
}

pub fn run_id(cfg: &RunConfig) -> String {
    use std::hash::{DefaultHasher, Hash, Hasher};
    let mut h = DefaultHasher::new();
    cfg.to_json().to_string().hash(&mut h);
    format!("su21-{:016x}", h.finish())
}

pub fn run_suite(cfg: &RunConfig) -> Result<CheckReport, CliError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build().map_err(|e| CliError::Config(e.to_string()))?;
    let needs_module = cfg.suites.iter().any(|s| s.needs_module());
    let module = if needs_module { Some(build_module(cfg)?) } else { None };
    let mut checks = Vec::new();
    for suite in Suite::ALL.iter().filter(|s| cfg.suites.contains(s)) {
        let list = checks_for(*suite, cfg, module.as_ref());
        pool.install(|| {
            if cfg.fail_fast {
                for c in &list {
                    let r = execute(c);
                    let failed = r.status == Status::Fail;
                    checks.push(r);
                    if failed {
                        break;
                    }
                }
            } else {
                checks.extend(list.par_iter().map(execute).collect::<Vec<_>>());
            }
        });
    }
    Ok(CheckReport { run_id: run_id(cfg), config: cfg.to_json(), checks })
}
