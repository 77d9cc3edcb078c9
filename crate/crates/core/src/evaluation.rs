//! Random context and extension generators, the brute-force concept oracle,
//! and seed-recall metrics.
//!
//! The generators are fully determined by their seed: equal inputs produce
//! bit-identical contexts on every platform. The oracle enumerates concepts
//! by exhausting object subsets and exists only to cross-check the lectic
//! enumeration; it refuses contexts with more than [`ORACLE_OBJECT_LIMIT`]
//! objects.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::discovery::ContextExtension;
use crate::error::Error;
use crate::lattice::Concept;

/// Hard ceiling for the brute-force oracle.
pub const ORACLE_OBJECT_LIMIT: usize = 20;

/// Parameters for a random context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    object_count: usize,
    attribute_count: usize,
    density: f64,
    rng_seed: u64,
}

impl GenSpec {
    pub fn new(
        object_count: usize,
        attribute_count: usize,
        density: f64,
        rng_seed: u64,
    ) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidDensity { value: density });
        }
        Ok(GenSpec {
            object_count,
            attribute_count,
            density,
            rng_seed,
        })
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn attribute_count(&self) -> usize {
        self.attribute_count
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }
}

fn bernoulli(rng: &mut impl RngCore, p: f64) -> bool {
    // top 53 bits give a uniform double in [0, 1)
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    u < p
}

/// Generates a context with objects `g0..` and attributes `m0..`, each cell
/// set independently with probability `density`.
pub fn gen_random_context(spec: &GenSpec) -> FormalContext {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let object_names: Vec<String> = (0..spec.object_count).map(|i| format!("g{}", i)).collect();
    let attribute_names: Vec<String> =
        (0..spec.attribute_count).map(|i| format!("m{}", i)).collect();
    let rows: Vec<BitSet> = (0..spec.object_count)
        .map(|_| {
            let mut row = BitSet::empty(spec.attribute_count);
            for m in 0..spec.attribute_count {
                if bernoulli(&mut rng, spec.density) {
                    row.insert(m);
                }
            }
            row
        })
        .collect();
    FormalContext::from_rows(object_names, attribute_names, rows)
        .expect("generated names are distinct and non-empty")
}

fn fresh_names(prefix: &str, count: usize, taken: &dyn Fn(&str) -> bool) -> Vec<String> {
    let mut names = Vec::with_capacity(count);
    let mut next = 0usize;
    while names.len() < count {
        let candidate = format!("{}{}", prefix, next);
        next += 1;
        if !taken(&candidate) {
            names.push(candidate);
        }
    }
    names
}

/// Grows `base` monotonically: all of its crosses are kept, `new_objects`
/// objects and `new_attributes` attributes are appended, and every cell
/// outside the original relation is set independently with probability
/// `new_density`.
pub fn gen_random_extension(
    base: &FormalContext,
    new_objects: usize,
    new_attributes: usize,
    new_density: f64,
    rng_seed: u64,
) -> Result<ContextExtension, Error> {
    if !(0.0..=1.0).contains(&new_density) {
        return Err(Error::InvalidDensity { value: new_density });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let mut object_names = base.object_names().to_vec();
    object_names.extend(fresh_names("g", new_objects, &|name| {
        base.object_index(name).is_some()
    }));
    let mut attribute_names = base.attribute_names().to_vec();
    attribute_names.extend(fresh_names("m", new_attributes, &|name| {
        base.attribute_index(name).is_some()
    }));

    let g_plus = object_names.len();
    let m_plus = attribute_names.len();
    let rows: Vec<BitSet> = (0..g_plus)
        .map(|g| {
            let mut row = BitSet::empty(m_plus);
            for m in 0..m_plus {
                let in_base =
                    g < base.object_count() && m < base.attribute_count() && base.has(g, m);
                if in_base || bernoulli(&mut rng, new_density) {
                    row.insert(m);
                }
            }
            row
        })
        .collect();
    let extended = FormalContext::from_rows(object_names, attribute_names, rows)
        .expect("extension names are distinct and non-empty");
    ContextExtension::new(base.clone(), extended, false)
}

/// Enumerates every concept by exhausting object subsets. Independent of the
/// lectic enumeration; output sorted in lectic intent order.
pub fn brute_force_concepts(k: &FormalContext) -> Result<Vec<Concept>, Error> {
    let g = k.object_count();
    if g > ORACLE_OBJECT_LIMIT {
        return Err(Error::TooLargeForOracle {
            objects: g,
            limit: ORACLE_OBJECT_LIMIT,
        });
    }
    let mut intents = BTreeSet::new();
    for word in 0..(1u64 << g) {
        let s = k.object_set(BitSet::from_word(g, word).iter())?;
        intents.insert(k.intent(&s)?);
    }
    intents
        .into_iter()
        .map(|intent| {
            let extent = k.extent(&intent)?;
            Ok(Concept::from_parts(extent, intent))
        })
        .collect()
}

/// How much of the discovery lattice the reported seeds anticipate.
#[derive(Debug, Clone, PartialEq)]
pub struct RecallMetrics {
    pub seed_count: usize,
    /// Concepts of K* excluding its top and bottom.
    pub discovery_concept_count: usize,
    /// Counted concepts that contain some seed as a preconcept.
    pub anticipated_count: usize,
    /// `anticipated / discovery_concept_count`, 0 when the denominator is 0.
    pub recall: f64,
}

/// Computes seed recall against the concepts of the discovery context.
pub fn seed_recall(ext: &ContextExtension, cap: Option<usize>) -> Result<RecallMetrics, Error> {
    let seeds = ext.maximal_seeds(cap)?;
    let star = ext.discovery_context();
    let concepts = star.concept_list(cap)?;

    let embedded: Vec<_> = seeds
        .iter()
        .map(|seed| {
            let x = ext.embed_objects(seed.objects()).expect("seed over base");
            let y = ext.embed_attributes(seed.attributes()).expect("seed over base");
            (x, y)
        })
        .collect();

    // the first concept is the top (maximal extent), the last the bottom
    let counted = if concepts.len() > 2 {
        &concepts[1..concepts.len() - 1]
    } else {
        &[]
    };
    let anticipated_count = counted
        .iter()
        .filter(|c| {
            embedded
                .iter()
                .any(|(x, y)| x.is_subset(c.extent()) && y.is_subset(c.intent()))
        })
        .count();
    let discovery_concept_count = counted.len();
    let recall = if discovery_concept_count == 0 {
        0.0
    } else {
        anticipated_count as f64 / discovery_concept_count as f64
    };
    Ok(RecallMetrics {
        seed_count: seeds.len(),
        discovery_concept_count,
        anticipated_count,
        recall,
    })
}
