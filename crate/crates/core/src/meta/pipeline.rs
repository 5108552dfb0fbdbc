use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::anneal::{anneal, AnnealConfig};
use super::traversal::{reverse_traversal, reverse_traversal_with};
use crate::error::{Error, Result};
use crate::ir::MixedPhasePolynomial;
use crate::synthesis::{synthesize, Method, QubitMapping, SynthResult};
use crate::topology::Topology;

/// How the stages of a pipeline are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PipelineKind {
    /// A single synthesis call.
    Plain(Method),
    /// Annealing from the identity mapping.
    Anneal(Method),
    /// Reverse Traversal with a plain inner synthesis.
    Traversal(Method),
    /// Reverse Traversal, then annealing from its best input mapping.
    TraversalThenAnneal(Method),
    /// Reverse Traversal whose every step is an annealing run.
    TraversalOfAnneals(Method),
}

/// A named pipeline together with its iteration budgets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PipelineSpec {
    pub kind: PipelineKind,
    /// Forward syntheses of Reverse Traversal.
    pub rt_iterations: usize,
    /// Iterations of each annealing run.
    pub anneal_iterations: usize,
    pub cnot_blocks: usize,
}

impl PipelineSpec {
    /// Default budgets: 100 iterations for a single metaheuristic, 10 each
    /// when two are combined.
    pub fn new(kind: PipelineKind) -> Self {
        use PipelineKind::*;
        let (rt, an) = match kind {
            Plain(_) => (0, 0),
            Anneal(_) => (0, 100),
            Traversal(_) => (100, 0),
            TraversalThenAnneal(_) | TraversalOfAnneals(_) => (10, 10),
        };
        PipelineSpec {
            kind,
            rt_iterations: rt,
            anneal_iterations: an,
            cnot_blocks: AnnealConfig::default().cnot_blocks,
        }
    }

    /// The benchmarked pipelines, in reporting order.
    pub fn roster() -> Vec<PipelineSpec> {
        ["naive", "An", "SG", "Par", "SG+RT", "SG+RT->An", "An+SG+RT", "Par+RT->An"]
            .iter()
            .map(|s| s.parse().expect("roster names parse"))
            .collect()
    }

    pub fn name(&self) -> String {
        use PipelineKind::*;
        match self.kind {
            Plain(m) => m.name().to_string(),
            Anneal(Method::NaiveRouted) => "An".to_string(),
            Anneal(m) => format!("An+{}", m.name()),
            Traversal(m) => format!("{}+RT", m.name()),
            TraversalThenAnneal(m) => format!("{}+RT->An", m.name()),
            TraversalOfAnneals(Method::SteinerGraySynth) => "An+SG+RT".to_string(),
            TraversalOfAnneals(m) => format!("{}+RT+An", m.name()),
        }
    }

    /// Total synthesis budget: stage budgets add up when stages run in
    /// sequence and multiply when one is nested in the other.
    pub fn total_iterations(&self) -> usize {
        use PipelineKind::*;
        match self.kind {
            Plain(_) => 1,
            Anneal(_) => self.anneal_iterations,
            Traversal(_) => self.rt_iterations,
            TraversalThenAnneal(_) => self.rt_iterations + self.anneal_iterations,
            TraversalOfAnneals(_) => self.rt_iterations * self.anneal_iterations,
        }
    }

    fn anneal_config(&self, seed: u64) -> AnnealConfig {
        AnnealConfig {
            iterations: self.anneal_iterations,
            cnot_blocks: self.cnot_blocks,
            seed,
            ..AnnealConfig::default()
        }
    }
}

impl fmt::Display for PipelineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PipelineSpec {
    type Err = Error;

    /// Accepts the roster names, case-insensitively, with `->` or `→`.
    fn from_str(s: &str) -> Result<Self> {
        use PipelineKind::*;
        let key = s.trim().replace('→', "->").to_ascii_lowercase();
        let kind = match key.as_str() {
            "an" => Anneal(Method::NaiveRouted),
            "an+sg" => Anneal(Method::SteinerGraySynth),
            "an+par" => Anneal(Method::ParitySynth),
            "sg+rt" => Traversal(Method::SteinerGraySynth),
            "par+rt" => Traversal(Method::ParitySynth),
            "sg+rt->an" => TraversalThenAnneal(Method::SteinerGraySynth),
            "par+rt->an" => TraversalThenAnneal(Method::ParitySynth),
            "an+sg+rt" | "sg+rt+an" => TraversalOfAnneals(Method::SteinerGraySynth),
            "par+rt+an" | "an+par+rt" => TraversalOfAnneals(Method::ParitySynth),
            other => match other.parse::<Method>() {
                Ok(m) => Plain(m),
                Err(_) => return Err(Error::UnknownMethod(s.to_string())),
            },
        };
        Ok(PipelineSpec::new(kind))
    }
}

/// Decorrelates the seeds of nested annealing runs.
fn stage_seed(seed: u64, step: usize) -> u64 {
    let mut z = seed ^ (step as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs a pipeline from the identity mapping. Only annealing consumes `seed`.
pub fn run_pipeline(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<SynthResult> {
    use PipelineKind::*;
    let start = Instant::now();
    let identity = QubitMapping::identity(p.n());
    let mut result = match spec.kind {
        Plain(m) => synthesize(p, topo, m, &identity)?,
        Anneal(m) => anneal(p, topo, &spec.anneal_config(seed), m, &identity)?,
        Traversal(m) => reverse_traversal(p, topo, spec.rt_iterations, m)?,
        TraversalThenAnneal(m) => {
            let rt = reverse_traversal(p, topo, spec.rt_iterations, m)?;
            anneal(p, topo, &spec.anneal_config(seed), m, &rt.input_mapping)?
        }
        TraversalOfAnneals(m) => reverse_traversal_with(p, spec.rt_iterations, |poly, map, step| {
            anneal(poly, topo, &spec.anneal_config(stage_seed(seed, step)), m, map)
        })?,
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::tests::{assert_sound, random_poly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn names_round_trip() {
        for spec in PipelineSpec::roster() {
            assert_eq!(spec.name().parse::<PipelineSpec>().unwrap(), spec);
        }
        let a: PipelineSpec = "SG+RT→An".parse().unwrap();
        assert_eq!(a, "sg+rt->an".parse().unwrap());
        assert_eq!("Par+RT+An".parse::<PipelineSpec>().unwrap().name(), "Par+RT+An");
        assert!("SG+XX".parse::<PipelineSpec>().is_err());
    }

    #[test]
    fn default_budgets() {
        let get = |s: &str| s.parse::<PipelineSpec>().unwrap().total_iterations();
        assert_eq!(get("An"), 100);
        assert_eq!(get("SG+RT"), 100);
        assert_eq!(get("An+SG+RT"), 100);
        assert_eq!(get("SG+RT->An"), 20);
        assert_eq!(get("SG"), 1);
    }

    #[test]
    fn every_pipeline_is_sound_and_deterministic() {
        let t = Topology::named("valencia").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_poly(5, 10, &mut rng);
        let mut specs = PipelineSpec::roster();
        specs.push("Par+RT+An".parse().unwrap());
        for mut spec in specs {
            spec.rt_iterations = spec.rt_iterations.min(3);
            spec.anneal_iterations = spec.anneal_iterations.min(5);
            let a = run_pipeline(&p, &t, &spec, 11).unwrap();
            let b = run_pipeline(&p, &t, &spec, 11).unwrap();
            assert_eq!(a.gates, b.gates, "{spec}");
            if spec.kind != PipelineKind::Plain(Method::Naive) {
                assert_sound(&p, &t, &a);
            }
        }
    }

    #[test]
    fn anneal_after_traversal_never_loses_to_it() {
        let t = Topology::named("yorktown").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for seed in 0..5 {
            let p = random_poly(5, 12, &mut rng);
            let mut rt: PipelineSpec = "SG+RT".parse().unwrap();
            rt.rt_iterations = 10;
            let both: PipelineSpec = "SG+RT->An".parse().unwrap();
            let a = run_pipeline(&p, &t, &rt, seed).unwrap();
            let b = run_pipeline(&p, &t, &both, seed).unwrap();
            assert!(b.cnot_count <= a.cnot_count);
        }
    }
}
