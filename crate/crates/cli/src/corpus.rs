//! Batch runs over a directory of instance files.

use std::path::Path;

use supcenter_core::centers::center_set;
use supcenter_core::constructive::{admissible_slack, repair_near_center, RepairInput};
use supcenter_core::lp::distance_to_polytope;
use supcenter_core::Error;

use crate::commands::{
    constraint_name, constructive_body, constructive_ok, garkavi_body, modulus_sweep,
    sample_near_centers, subcase_name, DEFAULT_DELTA_MAX, DEFAULT_EPS, DEFAULT_SEED,
};
use crate::error::CliError;
use crate::instance::{load, CenterInstance, ConstraintSpec, Instance};
use crate::report::*;

pub const REPAIRS_PER_EPS: usize = 20;
pub const GARKAVI_SAMPLES: usize = 20;

pub fn center_entry(inst: &CenterInstance) -> Result<(CenterEntry, bool), CliError> {
    let tol = inst.tolerances(None);
    let eps = inst
        .options
        .eps
        .clone()
        .unwrap_or_else(|| DEFAULT_EPS.to_vec());
    let seed = inst.options.seed.unwrap_or(DEFAULT_SEED);
    let own = center_set(&inst.problem(tol)?)?;
    let vertex_count = own.center_polytope.vertices(&tol)?.len();
    let constructive = constructive_body(inst, &tol)?;
    let mut ok = constructive_ok(&constructive);

    let mut modes = vec![ConstraintSpec::Ball, ConstraintSpec::Subspace];
    if !modes.contains(&inst.constraint) {
        modes.push(inst.constraint);
    }
    let delta_max = inst.options.delta_max.unwrap_or(DEFAULT_DELTA_MAX);
    let mut moduli = Vec::new();
    for mode in modes {
        let entries = modulus_sweep(&inst.problem_with(mode, tol)?, &eps, delta_max)?;
        ok &= entries.iter().all(|e| e.delta > 0.0);
        moduli.push(ModulusSweep {
            constraint: constraint_name(mode),
            eps: entries.iter().map(|e| e.eps).collect(),
            delta: entries.iter().map(|e| e.delta).collect(),
        });
    }

    let ball = inst.problem_with(ConstraintSpec::Ball, tol)?;
    let cent = center_set(&ball)?.center_polytope;
    let mut repairs = Vec::new();
    for (k, &e) in eps.iter().enumerate() {
        let slack = admissible_slack(&inst.family, &inst.y, e, &tol)?;
        let gs = sample_near_centers(
            &ball,
            slack.delta,
            REPAIRS_PER_EPS,
            seed.wrapping_add(k as u64),
        )?;
        let mut sweep = RepairSweep {
            eps: e,
            delta: slack.delta,
            subcase: subcase_name(slack.subcase),
            trials: gs.len(),
            failures: 0,
            worst_distance_to_center: 0.0,
            worst_overshoot: f64::NEG_INFINITY,
        };
        for g in gs {
            let input = RepairInput {
                g: g.clone(),
                eps: e,
                delta: slack.delta,
            };
            match repair_near_center(&input, &inst.family, &inst.y, &tol) {
                Ok(out) => {
                    let d = distance_to_polytope(&out.h2, &cent, &tol)?.0;
                    sweep.worst_distance_to_center = sweep.worst_distance_to_center.max(d);
                    sweep.worst_overshoot = sweep.worst_overshoot.max(g.dist(&out.h2) - e);
                }
                Err(Error::Precondition(_) | Error::Certificate(_)) => sweep.failures += 1,
                Err(other) => return Err(other.into()),
            }
        }
        ok &= sweep.failures == 0
            && sweep.worst_distance_to_center <= 1e-7
            && sweep.worst_overshoot <= 1e-9;
        repairs.push(sweep);
    }

    Ok((
        CenterEntry {
            radius: own.radius,
            vertex_count,
            constructive,
            moduli,
            repairs,
        },
        ok,
    ))
}

pub fn run_instance(file: &str, inst: &Instance) -> CorpusEntry {
    let result = match inst {
        Instance::Center(c) => center_entry(c).map(|(e, ok)| (EntryBody::Center(e), ok)),
        Instance::Garkavi(g) => garkavi_body(g.spec.n, g.spec.seed, g.spec.theta, GARKAVI_SAMPLES)
            .map(|(b, ok)| (EntryBody::Garkavi(b), ok)),
    };
    let (body, passed) = result.unwrap_or_else(|e| (EntryBody::Error(e.to_string()), false));
    CorpusEntry {
        file: file.into(),
        name: inst.name().into(),
        passed,
        body,
    }
}

/// Runs every `*.json` file of `dir` in file-name order.
pub fn run_corpus(dir: &Path) -> Result<Report, CliError> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no instance files",
            dir.display()
        )));
    }
    let mut entries = Vec::with_capacity(files.len());
    for path in files {
        let file = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        let entry = match load(&path) {
            Ok(inst) => run_instance(&file, &inst),
            Err(e) => CorpusEntry {
                file: file.clone(),
                name: file.clone(),
                passed: false,
                body: EntryBody::Error(e.to_string()),
            },
        };
        entries.push(entry);
    }
    let passed = entries.iter().filter(|e| e.passed).count();
    let mut summary = vec![format!("{passed}/{} instances pass", entries.len())];
    for e in &entries {
        summary.push(format!(
            "{} {} ({})",
            if e.passed { "ok  " } else { "FAIL" },
            e.file,
            e.name
        ));
        if let EntryBody::Error(m) = &e.body {
            summary.push(format!("     {m}"));
        }
    }
    Ok(Report::new(
        "corpus",
        None,
        Status::from_bool(passed == entries.len()),
        summary,
        Body::Corpus(CorpusBody { entries }),
    ))
}
