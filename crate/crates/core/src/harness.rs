//! Randomized cross-check of the brute-force oracle against the reduction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decision::{
    check_consequence_rho, stable_bruteforce, Budget, ConsequenceVerdict, StableWitness,
};
use crate::error::Result;
use crate::random::{self, InstanceLimits};
use crate::reduction::{reduce, InstanceFile, StableInstance};
use crate::semantics::{eval_luk, Valuation};

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub instance: InstanceFile,
    pub e: u64,
    pub stable: bool,
    pub rho_consequence: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_witness: Option<StableWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_witness: Option<Valuation>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HarnessReport {
    pub records: Vec<TrialRecord>,
}

impl HarnessReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| !r.agree)
    }

    pub fn stable_count(&self) -> usize {
        self.records.iter().filter(|r| r.stable).count()
    }

    /// One JSON document per line, one line per trial.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

/// Runs both deciders on one instance.
pub fn compare(trial: usize, instance: &StableInstance, budget: Budget) -> Result<TrialRecord> {
    let brute = stable_bruteforce(instance, budget)?;
    let reduced = reduce(instance)?;
    let verdict = check_consequence_rho(&reduced, budget)?;
    if let ConsequenceVerdict::Countermodel { witness } = &verdict {
        debug_assert!(eval_luk(&reduced.theta, witness)?.is_one());
    }
    let rho_consequence = verdict.is_consequence();
    Ok(TrialRecord {
        trial,
        instance: instance.to_file(),
        e: reduced.e,
        stable: brute.stable,
        rho_consequence,
        agree: brute.stable == rho_consequence,
        stable_witness: brute.counterexample,
        rho_witness: verdict.witness().cloned(),
    })
}

/// Generates `trials` random instances from `seed` and checks that the
/// brute-force verdict matches the reduced consequence verdict on each.
pub fn equivalence_harness(
    seed: u64,
    trials: usize,
    limits: &InstanceLimits,
    budget: Budget,
) -> Result<HarnessReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = (0..trials)
        .map(|t| compare(t, &random::instance(&mut rng, limits), budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(HarnessReport { records })
}
