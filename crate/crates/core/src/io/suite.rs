use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    generate, Generator, InstanceMeta, InstanceSpec, Report, EXIT_OK, EXIT_SOLVER, EXIT_VERDICT,
};
use crate::matching::{exact_max_sum, EXACT_CAP};
use crate::verify::{self, Verdict};
use crate::witness::minimize_h;
use crate::EPS_THM;

/// `TVERBERG_TOL` if set to a positive number, otherwise [`EPS_THM`].
pub fn eps_thm_from_env() -> f64 {
    std::env::var("TVERBERG_TOL")
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(EPS_THM)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Checks {
    pub fingerhut: bool,
    pub theorem: bool,
    pub helly: bool,
    pub suri: bool,
    pub disks: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            fingerhut: true,
            theorem: true,
            helly: true,
            suri: true,
            disks: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub count: usize,
    /// Inclusive range of total point counts; odd bounds are rounded inward.
    pub min_size: usize,
    pub max_size: usize,
    pub seed: u64,
    pub generator: Generator,
    pub checks: Checks,
    pub eps_thm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub index: usize,
    pub spec: InstanceSpec,
    pub report: Option<Report>,
    /// Why the instance was not run.
    pub skipped: Option<String>,
    /// The error that stopped a started instance.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<SuiteEntry>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub non_converged: usize,
    /// Smallest margin per verdict name.
    pub min_margins: BTreeMap<String, f64>,
    pub exit_code: i32,
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 finalizer so neighbouring indices get unrelated streams
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sizes(config: &SuiteConfig) -> Vec<usize> {
    let lo = config.min_size.max(2).next_multiple_of(2);
    (lo..=config.max_size).step_by(2).collect()
}

fn run_one(config: &SuiteConfig, index: usize, spec: InstanceSpec) -> SuiteEntry {
    let mut entry = SuiteEntry {
        index,
        spec,
        report: None,
        skipped: None,
        error: None,
    };
    if spec.count > EXACT_CAP {
        entry.skipped = Some(format!(
            "{} points exceed the exact solver cap {EXACT_CAP}",
            spec.count
        ));
        return entry;
    }
    let result = (|| -> Result<Report, String> {
        let s = generate(&spec).map_err(|e| e.to_string())?;
        let m = exact_max_sum(&s).map_err(|e| e.to_string())?;
        let w = minimize_h(&s, &m).map_err(|e| e.to_string())?;
        let eps = config.eps_thm;
        let checks = config.checks;
        let mut verdicts: Vec<Verdict> = Vec::new();
        if checks.theorem {
            verdicts.push(verify::theorem_verdict(&w, eps));
        }
        if checks.fingerhut {
            verdicts
                .push(verify::check_fingerhut(&s, &m, w.o_star, eps).map_err(|e| e.to_string())?);
        }
        if checks.helly {
            verdicts.push(verify::check_helly_triples(&s, &m, eps).map_err(|e| e.to_string())?);
        }
        if checks.suri {
            verdicts.push(verify::check_suri(&s, eps).map_err(|e| e.to_string())?);
        }
        if checks.disks {
            verdicts.push(verify::check_tverberg_disks(&s, &m).map_err(|e| e.to_string())?);
        }
        Ok(Report {
            instance: InstanceMeta {
                generator: Some(spec.generator),
                seed: Some(spec.seed),
                count: spec.count,
            },
            matching: Some(m),
            witness: Some(w),
            verdicts,
            trace: None,
        })
    })();
    match result {
        Ok(r) => entry.report = Some(r),
        Err(e) => entry.error = Some(e),
    }
    entry
}

/// Generates `count` instances cycling through the even sizes of the range
/// and runs the selected checks on each exact max-sum matching. Instances
/// run in parallel; entries are in index order.
///
/// Exit code: 3 if any witness failed to certify or any instance errored,
/// else 1 if any verdict failed, else 0.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let sizes = sizes(config);
    let entries: Vec<SuiteEntry> = (0..if sizes.is_empty() { 0 } else { config.count })
        .into_par_iter()
        .map(|i| {
            let spec = InstanceSpec {
                generator: config.generator,
                count: sizes[i % sizes.len()],
                seed: instance_seed(config.seed, i),
            };
            run_one(config, i, spec)
        })
        .collect();

    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut non_converged = 0;
    let mut min_margins = BTreeMap::new();
    for e in &entries {
        if e.skipped.is_some() {
            skipped += 1;
            continue;
        }
        let Some(r) = &e.report else {
            non_converged += 1;
            continue;
        };
        if r.witness.as_ref().is_some_and(|w| !w.converged) {
            non_converged += 1;
        }
        if r.all_passed() {
            passed += 1;
        } else {
            failed += 1;
        }
        for v in &r.verdicts {
            let slot = min_margins.entry(v.name.clone()).or_insert(f64::INFINITY);
            *slot = f64::min(*slot, v.margin);
        }
    }
    let exit_code = if non_converged > 0 {
        EXIT_SOLVER
    } else if failed > 0 {
        EXIT_VERDICT
    } else {
        EXIT_OK
    };
    SuiteReport {
        config: config.clone(),
        entries,
        passed,
        failed,
        skipped,
        non_converged,
        min_margins,
        exit_code,
    }
}
