use crate::error::{Error, Result};
use crate::label::ModuleLabel;
use crate::partitions::{Partition, PatternSet};
use crate::rational::{rat, Rational};
use crate::virasoro::{PBWVector, Verma, VermaSpec};

use super::matrix::WordCache;

/// One of the three Ising modules `L(1/2, h) = M(1/2, h) / J`: the Verma
/// action, singular generators of `J`, and the forbidden patterns.
pub struct ModuleSpec {
    pub label: ModuleLabel,
    pub verma: Verma,
    pub generators: Vec<PBWVector>,
    pub patterns: PatternSet,
    pub(crate) words: WordCache,
}

impl ModuleSpec {
    pub fn new(label: ModuleLabel) -> Result<Self> {
        let spec = VermaSpec::new(rat(1, 2), label.highest_weight());
        let verma = Verma::new(spec.clone());
        let generators = match label {
            ModuleLabel::HHalf => vec![
                vector(&spec, &[(&[1, 1], rat(1, 1)), (&[2], rat(-4, 3))]),
                vector(&spec, &[(&[1, 1, 1], rat(1, 1)), (&[2, 1], rat(-3, 1)), (&[3], rat(3, 4))]),
            ],
            ModuleLabel::HSixteenth => vec![
                vector(&spec, &[(&[2], rat(1, 1)), (&[1, 1], rat(-4, 3))]),
                vector(
                    &spec,
                    &[
                        (&[2, 2], rat(1, 1)),
                        (&[2, 1, 1], rat(-600, 49)),
                        (&[1, 1, 1, 1], rat(144, 49)),
                        (&[3, 1], rat(264, 49)),
                        (&[4], rat(-36, 49)),
                    ],
                ),
            ],
            ModuleLabel::H0 => {
                let s6 = verma.singular_vectors(6).into_iter().next().ok_or_else(|| Error::MissingSingularVector {
                    c: "1/2".into(),
                    h: "0".into(),
                    level: 6,
                })?;
                vec![vector(&spec, &[(&[1], rat(1, 1))]), s6]
            }
        };
        Self::with_generators(label, verma, generators)
    }

    /// Checks that every generator is singular.
    pub fn with_generators(label: ModuleLabel, verma: Verma, generators: Vec<PBWVector>) -> Result<Self> {
        for g in &generators {
            if let Err(mode) = verma.check_singular(g) {
                return Err(Error::NotSingular { weight: g.weight() as u32, mode });
            }
        }
        Ok(ModuleSpec {
            label,
            verma,
            generators,
            patterns: PatternSet::for_module(label),
            words: WordCache::default(),
        })
    }

    pub fn highest_weight(&self) -> &Rational {
        &self.verma.spec().h
    }

    pub fn generator_weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight() as u32).collect()
    }

    /// Partitions that may index quotient basis vectors: all of them, except
    /// for the vacuum module where `L_{-1}|0>` is already zero.
    pub fn admissible(&self, lambda: &Partition) -> bool {
        self.label != ModuleLabel::H0 || lambda.ones() == 0
    }
}

fn vector(spec: &VermaSpec, terms: &[(&[u32], Rational)]) -> PBWVector {
    let weight = terms[0].0.iter().sum::<u32>() as i64;
    PBWVector::from_terms(
        spec.clone(),
        weight,
        terms.iter().map(|(k, v)| (Partition::from_parts(k.to_vec()), v.clone())),
    )
    .expect("built-in generators are homogeneous")
}
