//! Verification suites selectable from the command line.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use super::config::Resolved;
use crate::cyclotomic::fixed::{fixed_point_suite, iso_d_suite};
use crate::cyclotomic::qfamily::adjacent_pairs;
use crate::cyclotomic::{iso_checks, CycloAlgebra, QSeriesFamily};
use crate::engine::Algebra;
use crate::error::Result;
use crate::polrep::independence_rank;
use crate::report::CheckSet;
use crate::scalars::series_checks;
use crate::vqha::{
    fixed_point_basis_split, oracle_checks, polrep_relation_checks, relation_checks, rho_sign_checks, v_algebra,
};
use crate::wqha::{graded_counts, phi_checks, relation_checks_d, w_algebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RelationsV,
    RelationsW,
    Polrep,
    Basis,
    FixedPoint,
    Series,
    QConditions,
    IsoB,
    IsoD,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::RelationsV => "relations-v",
            Suite::RelationsW => "relations-w",
            Suite::Polrep => "polrep",
            Suite::Basis => "basis",
            Suite::FixedPoint => "fixed-point",
            Suite::Series => "series",
            Suite::QConditions => "q-conditions",
            Suite::IsoB => "iso-b",
            Suite::IsoD => "iso-d",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::value_variants().iter().copied().find(|v| v.name() == s)
    }
}

fn v_of(cfg: &Resolved) -> Result<Algebra> {
    v_algebra(cfg.params.clone(), cfg.require_beta()?.to_vec())
}

fn w_of(cfg: &Resolved) -> Result<Algebra> {
    w_algebra(cfg.params.clone(), cfg.require_beta()?.to_vec())
}

fn basis_suite(cfg: &Resolved) -> Result<CheckSet> {
    let v = v_of(cfg)?;
    let words = v.basis_words(cfg.max_ydeg);
    let n = v.rank();
    let fact: usize = (1..=n).product();
    let monos = crate::poly::Mono::up_to_degree(n, cfg.max_ydeg).len();
    let expected = (1usize << n) * fact * monos * v.tuples().len();
    let rank = independence_rank(&v, &words, cfg.max_ydeg + v.group().max_length() + 1)?;
    let mut set = CheckSet::new();
    set.check("basis word count", "2^n n! |monomials| |beta| words", words.len() == expected, || {
        format!("{} words, expected {expected}", words.len())
    });
    set.check("basis words act independently", "rank of basis words on the polynomial representation", rank == words.len(), || {
        format!("rank {rank} of {} words", words.len())
    });
    Ok(set)
}

fn fixed_suite(cfg: &Resolved) -> Result<CheckSet> {
    let v = v_of(cfg)?;
    let w = w_of(cfg)?;
    let mut set = rho_sign_checks(&v, cfg.max_ydeg);
    set.extend(phi_checks(&w, &v, cfg.phi_pairs, cfg.seed, cfg.max_ydeg)?);
    let (plus, _) = fixed_point_basis_split(&v, cfg.max_ydeg);
    let mut fixed: BTreeMap<i32, usize> = BTreeMap::new();
    for t in &plus {
        *fixed.entry(v.term_degree(t)).or_default() += 1;
    }
    let native = graded_counts(&w, cfg.max_ydeg);
    set.check("fixed points match the type D algebra by degree", "graded dims of V^rho and W in the word window", fixed == native, || {
        format!("{fixed:?} vs {native:?}")
    });
    if let Some(m) = &cfg.m {
        set.extend(fixed_point_suite(&cfg.params, cfg.require_beta()?, m, cfg.quotient)?);
    }
    Ok(set)
}

fn q_suite(cfg: &Resolved) -> Result<CheckSet> {
    let order = cfg.truncation.unwrap_or(6);
    let family = QSeriesFamily::build(&cfg.params, &adjacent_pairs(cfg.require_beta()?), order)?;
    family.verify()
}

fn run(cfg: &Resolved, suite: Suite) -> Result<CheckSet> {
    match suite {
        Suite::RelationsV => relation_checks(&v_of(cfg)?),
        Suite::RelationsW => relation_checks_d(&w_of(cfg)?),
        Suite::Polrep => {
            let v = v_of(cfg)?;
            let mut set = polrep_relation_checks(&v, cfg.probe_degree)?;
            set.extend(oracle_checks(&v, cfg.samples, cfg.seed, cfg.probe_degree)?);
            Ok(set)
        }
        Suite::Basis => basis_suite(cfg),
        Suite::FixedPoint => fixed_suite(cfg),
        Suite::Series => series_checks(cfg.params.field(), cfg.series_order),
        Suite::QConditions => q_suite(cfg),
        Suite::IsoB => {
            let cyc = CycloAlgebra::new(&v_of(cfg)?, cfg.multiplicities()?, cfg.quotient)?;
            iso_checks(&cyc, cfg.truncation)
        }
        Suite::IsoD => iso_d_suite(&cfg.params, cfg.require_beta()?, cfg.multiplicities()?, cfg.quotient, cfg.truncation),
    }
}

/// Runs a suite; an error while running is recorded as a failed check.
pub fn run_suite(cfg: &Resolved, suite: Suite) -> CheckSet {
    run(cfg, suite).unwrap_or_else(|e| {
        let mut set = CheckSet::new();
        set.error(&format!("{} suite ran to completion", suite.name()), "suite preconditions", e);
        set
    })
}
