//! Revelation mappings, the discovery context, seeds, and the
//! negative-context outbox procedure.
//!
//! Given an existing context `K` and an extended context `K⁺` that embeds it,
//! the revelation mappings Φ and Ψ pick out, for a set of objects
//! (attributes), exactly the attributes (objects) that are *newly* associated
//! with all of them. The relation they induce is `R⁺ ∖ R`, which defines the
//! discovery context `K*`. A seed is a non-empty preconcept of `K*` drawn
//! entirely from the old objects and attributes — the ex ante trace of a
//! relationship nobody had described yet.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, NameKind};
use crate::lattice::ConceptLattice;
use crate::verify::{verify_propositions, VerificationReport};

/// A validated pair of contexts (K, K⁺) with name-based embeddings.
#[derive(Debug, Clone)]
pub struct ContextExtension {
    base: FormalContext,
    extended: FormalContext,
    object_embedding: Vec<usize>,
    attribute_embedding: Vec<usize>,
    /// Per extended object: its base intent mapped into K⁺ attribute indices
    /// (empty for objects outside the base, per the convention I_R(g) = ∅).
    base_rows_plus: Vec<BitSet>,
    /// Per extended attribute: its base extent mapped into K⁺ object indices.
    base_cols_plus: Vec<BitSet>,
    removals_present: bool,
}

impl ContextExtension {
    /// Validates that every base name occurs in the extended context and
    /// computes the embeddings.
    ///
    /// Pairs present in R but absent from R⁺ ("removals") are rejected unless
    /// `allow_removals` is set; discovery proper is a monotone extension.
    pub fn new(
        base: FormalContext,
        extended: FormalContext,
        allow_removals: bool,
    ) -> Result<Self, Error> {
        let mut object_embedding = Vec::with_capacity(base.object_count());
        for name in base.object_names() {
            let idx = extended
                .object_index(name)
                .ok_or_else(|| Error::MissingEmbedding {
                    kind: NameKind::Object,
                    name: name.clone(),
                })?;
            object_embedding.push(idx);
        }
        let mut attribute_embedding = Vec::with_capacity(base.attribute_count());
        for name in base.attribute_names() {
            let idx = extended
                .attribute_index(name)
                .ok_or_else(|| Error::MissingEmbedding {
                    kind: NameKind::Attribute,
                    name: name.clone(),
                })?;
            attribute_embedding.push(idx);
        }

        let mut base_rows_plus: Vec<BitSet> = (0..extended.object_count())
            .map(|_| BitSet::empty(extended.attribute_count()))
            .collect();
        for (g, &gp) in object_embedding.iter().enumerate() {
            for m in base.row(g).iter() {
                base_rows_plus[gp].insert(attribute_embedding[m]);
            }
        }
        let mut base_cols_plus: Vec<BitSet> = (0..extended.attribute_count())
            .map(|_| BitSet::empty(extended.object_count()))
            .collect();
        for (m, &mp) in attribute_embedding.iter().enumerate() {
            for g in base.col(m).iter() {
                base_cols_plus[mp].insert(object_embedding[g]);
            }
        }

        let removals: usize = base_rows_plus
            .iter()
            .enumerate()
            .map(|(gp, row)| row.difference(extended.row(gp)).len())
            .sum();
        if removals > 0 && !allow_removals {
            return Err(Error::RemovalsRejected { count: removals });
        }

        Ok(ContextExtension {
            base,
            extended,
            object_embedding,
            attribute_embedding,
            base_rows_plus,
            base_cols_plus,
            removals_present: removals > 0,
        })
    }

    pub fn base(&self) -> &FormalContext {
        &self.base
    }

    pub fn extended(&self) -> &FormalContext {
        &self.extended
    }

    pub fn removals_present(&self) -> bool {
        self.removals_present
    }

    /// Index of base object `g` within the extended context.
    pub fn object_embedding(&self, g: usize) -> usize {
        self.object_embedding[g]
    }

    /// Index of base attribute `m` within the extended context.
    pub fn attribute_embedding(&self, m: usize) -> usize {
        self.attribute_embedding[m]
    }

    /// Maps a base object set into the extended index space.
    pub fn embed_objects(&self, s: &ObjectSet) -> Result<ObjectSet, Error> {
        self.base.check_objects(s)?;
        let mut bits = BitSet::empty(self.extended.object_count());
        for g in s.iter() {
            bits.insert(self.object_embedding[g]);
        }
        Ok(ObjectSet::from_bits(bits))
    }

    /// Maps a base attribute set into the extended index space.
    pub fn embed_attributes(&self, t: &AttributeSet) -> Result<AttributeSet, Error> {
        self.base.check_attributes(t)?;
        let mut bits = BitSet::empty(self.extended.attribute_count());
        for m in t.iter() {
            bits.insert(self.attribute_embedding[m]);
        }
        Ok(AttributeSet::from_bits(bits))
    }

    /// The image of the base object set inside K⁺ (old objects).
    pub fn old_objects(&self) -> ObjectSet {
        let mut bits = BitSet::empty(self.extended.object_count());
        for &gp in &self.object_embedding {
            bits.insert(gp);
        }
        ObjectSet::from_bits(bits)
    }

    /// The image of the base attribute set inside K⁺ (old attributes).
    pub fn old_attributes(&self) -> AttributeSet {
        let mut bits = BitSet::empty(self.extended.attribute_count());
        for &mp in &self.attribute_embedding {
            bits.insert(mp);
        }
        AttributeSet::from_bits(bits)
    }

    /// Φ(S⁺) = I_{R⁺}(S⁺) ∖ ⋃_{g∈S⁺} I_R(g): attributes newly shared by all
    /// of `s_plus`. Φ(∅) = M⁺.
    pub fn phi(&self, s_plus: &ObjectSet) -> Result<AttributeSet, Error> {
        self.extended.check_objects(s_plus)?;
        let mut acc = BitSet::full(self.extended.attribute_count());
        for g in s_plus.iter() {
            acc.intersect_with(self.extended.row(g));
        }
        for g in s_plus.iter() {
            acc.subtract(&self.base_rows_plus[g]);
        }
        Ok(AttributeSet::from_bits(acc))
    }

    /// Ψ(T⁺) = E_{R⁺}(T⁺) ∖ ⋃_{m∈T⁺} E_R(m): objects newly bearing all of
    /// `t_plus`. Ψ(∅) = G⁺.
    pub fn psi(&self, t_plus: &AttributeSet) -> Result<ObjectSet, Error> {
        self.extended.check_attributes(t_plus)?;
        let mut acc = BitSet::full(self.extended.object_count());
        for m in t_plus.iter() {
            acc.intersect_with(self.extended.col(m));
        }
        for m in t_plus.iter() {
            acc.subtract(&self.base_cols_plus[m]);
        }
        Ok(ObjectSet::from_bits(acc))
    }

    /// The discovery context K* = (G⁺, M⁺; R⁺ ∖ R).
    pub fn discovery_context(&self) -> FormalContext {
        let rows: Vec<BitSet> = (0..self.extended.object_count())
            .map(|gp| self.extended.row(gp).difference(&self.base_rows_plus[gp]))
            .collect();
        FormalContext::from_rows(
            self.extended.object_names().to_vec(),
            self.extended.attribute_names().to_vec(),
            rows,
        )
        .expect("extended names are valid")
    }

    /// R* restricted to old objects and old attributes, indexed over the
    /// *base* ranges: row `g` holds the base attributes newly related to `g`.
    pub(crate) fn star_rows_over_base(&self) -> Vec<BitSet> {
        (0..self.base.object_count())
            .map(|g| {
                let gp = self.object_embedding[g];
                let mut bits = BitSet::empty(self.base.attribute_count());
                for (m, &mp) in self.attribute_embedding.iter().enumerate() {
                    if self.extended.has(gp, mp) && !self.base.has(g, m) {
                        bits.insert(m);
                    }
                }
                bits
            })
            .collect()
    }

    /// True iff (X; Y) is a seed: both sides non-empty, drawn from the base
    /// names, and X × Y ⊆ R*.
    pub fn is_seed(&self, objects: &ObjectSet, attributes: &AttributeSet) -> Result<bool, Error> {
        self.base.check_objects(objects)?;
        self.base.check_attributes(attributes)?;
        if objects.is_empty() || attributes.is_empty() {
            return Ok(false);
        }
        let wanted = self.embed_attributes(attributes)?;
        for g in objects.iter() {
            let gp = self.object_embedding[g];
            let star_row = self.extended.row(gp).difference(&self.base_rows_plus[gp]);
            if !wanted.bits().is_subset(&star_row) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One seed per concept (Q; V) of K* with old objects and old attributes:
    /// the pair (Q ∩ G; V ∩ M), deduplicated and sorted lectically.
    ///
    /// Non-empty whenever R* contains a pair of old objects and attributes.
    pub fn maximal_seeds(&self, cap: Option<usize>) -> Result<Vec<Seed>, Error> {
        let star = self.discovery_context();
        let old_g = self.old_objects();
        let old_m = self.old_attributes();
        let mut seeds = BTreeSet::new();
        for concept in star.concept_list(cap)? {
            let x_plus = concept.extent().intersection(&old_g);
            let y_plus = concept.intent().intersection(&old_m);
            if x_plus.is_empty() || y_plus.is_empty() {
                continue;
            }
            seeds.insert(Seed {
                objects: self.restrict_objects(&x_plus),
                attributes: self.restrict_attributes(&y_plus),
            });
        }
        Ok(seeds.into_iter().collect())
    }

    /// Every seed: all non-empty pairs (X; Y) with X × Y inside
    /// R* ∩ (G × M), enumerated as the downsets of the maximal old-old
    /// bicliques. Errors with [`Error::CapExceeded`] once more than `cap`
    /// distinct seeds have been collected.
    pub fn all_seeds(&self, cap: Option<usize>) -> Result<Vec<Seed>, Error> {
        let cap = cap.unwrap_or(usize::MAX);
        let restricted = FormalContext::from_rows(
            self.base.object_names().to_vec(),
            self.base.attribute_names().to_vec(),
            self.star_rows_over_base(),
        )
        .expect("base names are valid");

        let mut seeds: BTreeSet<Seed> = BTreeSet::new();
        for concept in restricted.concept_list(Some(cap))? {
            if concept.extent().is_empty() || concept.intent().is_empty() {
                continue;
            }
            let ext_indices = concept.extent().indices();
            let int_indices = concept.intent().indices();
            // a biclique side of 64+ would overflow the subset masks below,
            // and its downset count dwarfs any enumerable cap anyway
            if ext_indices.len() >= 64 || int_indices.len() >= 64 {
                return Err(Error::CapExceeded { emitted: seeds.len() });
            }
            // every non-empty subset pair of a biclique is itself a seed
            for x_mask in 1..(1u64 << ext_indices.len()) {
                for y_mask in 1..(1u64 << int_indices.len()) {
                    let objects = ObjectSet::from_bits(
                        BitSet::from_indices(
                            self.base.object_count(),
                            ext_indices
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| x_mask & (1 << i) != 0)
                                .map(|(_, &g)| g),
                        )
                        .expect("indices from base"),
                    );
                    let attributes = AttributeSet::from_bits(
                        BitSet::from_indices(
                            self.base.attribute_count(),
                            int_indices
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| y_mask & (1 << i) != 0)
                                .map(|(_, &m)| m),
                        )
                        .expect("indices from base"),
                    );
                    seeds.insert(Seed { objects, attributes });
                    if seeds.len() > cap {
                        return Err(Error::CapExceeded { emitted: cap });
                    }
                }
            }
        }
        Ok(seeds.into_iter().collect())
    }

    pub(crate) fn restrict_objects(&self, s_plus: &ObjectSet) -> ObjectSet {
        let mut bits = BitSet::empty(self.base.object_count());
        for (g, &gp) in self.object_embedding.iter().enumerate() {
            if s_plus.contains(gp) {
                bits.insert(g);
            }
        }
        ObjectSet::from_bits(bits)
    }

    pub(crate) fn restrict_attributes(&self, t_plus: &AttributeSet) -> AttributeSet {
        let mut bits = BitSet::empty(self.base.attribute_count());
        for (m, &mp) in self.attribute_embedding.iter().enumerate() {
            if t_plus.contains(mp) {
                bits.insert(m);
            }
        }
        AttributeSet::from_bits(bits)
    }
}

/// A non-empty preconcept of the discovery context drawn from base names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Seed {
    objects: ObjectSet,
    attributes: AttributeSet,
}

impl Seed {
    /// Validates the pair against the extension.
    pub fn new(
        ext: &ContextExtension,
        objects: ObjectSet,
        attributes: AttributeSet,
    ) -> Result<Self, Error> {
        if !ext.is_seed(&objects, &attributes)? {
            return Err(Error::InvalidPreconcept);
        }
        Ok(Seed { objects, attributes })
    }

    pub fn objects(&self) -> &ObjectSet {
        &self.objects
    }

    pub fn attributes(&self) -> &AttributeSet {
        &self.attributes
    }
}

/// Φ̃(S) = M ∖ ⋃_{g∈S} I_R(g) — the approximation of Φ computable from the
/// existing context alone; equals the intent of S in the negative context.
pub fn phi_tilde(k: &FormalContext, s: &ObjectSet) -> Result<AttributeSet, Error> {
    k.check_objects(s)?;
    let mut union = BitSet::empty(k.attribute_count());
    for g in s.iter() {
        union.union_with(k.row(g));
    }
    Ok(AttributeSet::from_bits(union.complement()))
}

/// Ψ̃(T) = G ∖ ⋃_{m∈T} E_R(m), dually.
pub fn psi_tilde(k: &FormalContext, t: &AttributeSet) -> Result<ObjectSet, Error> {
    k.check_attributes(t)?;
    let mut union = BitSet::empty(k.object_count());
    for m in t.iter() {
        union.union_with(k.col(m));
    }
    Ok(ObjectSet::from_bits(union.complement()))
}

/// One ranked anti-concept of the negative context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// Index into the lattice carried by the report.
    pub concept: usize,
    /// Ranking score `|extent| · |intent|` (a declared heuristic).
    pub score: u64,
    /// Number of non-trivial preconcepts, `(2^|extent|−1)·(2^|intent|−1)`,
    /// saturating at `u128::MAX`.
    pub preconcept_count: u128,
}

/// The outbox for mining: anti-concepts of K̄ ranked as seed candidates.
#[derive(Debug, Clone)]
pub struct CandidateReport {
    /// The full concept lattice of the negative context.
    pub lattice: ConceptLattice,
    /// Anti-concepts with non-empty extent and intent, ranked by score
    /// descending, ties broken by lectic order of the intent.
    pub candidates: Vec<Candidate>,
    /// SHA-256 digest of the input context.
    pub provenance: String,
}

fn pow2_minus_1(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Builds the negative picture of `k` and ranks its anti-concepts as places
/// to look for seeds. Operates on the existing context alone.
pub fn candidate_outbox(k: &FormalContext, cap: Option<usize>) -> Result<CandidateReport, Error> {
    let negative = k.negate();
    let lattice = negative.lattice(cap)?;
    let mut candidates: Vec<Candidate> = lattice
        .concepts()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.extent().is_empty() && !c.intent().is_empty())
        .map(|(i, c)| Candidate {
            concept: i,
            score: (c.extent().len() as u64) * (c.intent().len() as u64),
            preconcept_count: pow2_minus_1(c.extent().len())
                .saturating_mul(pow2_minus_1(c.intent().len())),
        })
        .collect();
    candidates.sort_by(|a, b| {
        b.score.cmp(&a.score).then_with(|| {
            lattice.concepts()[a.concept]
                .intent()
                .cmp(lattice.concepts()[b.concept].intent())
        })
    });
    Ok(CandidateReport {
        lattice,
        candidates,
        provenance: k.digest(),
    })
}

/// One reported seed with its lattice cross-references.
#[derive(Debug, Clone)]
pub struct SeedEntry {
    pub seed: Seed,
    /// Indices of K* concepts the seed anticipates (is a preconcept of).
    pub anticipated: Vec<usize>,
    /// Indices of anti-concepts of K̄ containing the seed.
    pub containing: Vec<usize>,
}

/// The full mining result for an extension.
#[derive(Debug, Clone)]
pub struct SeedReport {
    pub discovery_context: FormalContext,
    /// Lattice of the discovery context.
    pub k_star_lattice: ConceptLattice,
    /// Lattice of the negative existing context.
    pub anti_lattice: ConceptLattice,
    pub seeds: Vec<SeedEntry>,
    pub verification: VerificationReport,
}

/// Assembles the seed report: maximal seeds, the lattices they point into,
/// and a machine-check of the propositions on this extension.
pub fn seed_report(
    ext: &ContextExtension,
    cap: Option<usize>,
    sample_budget: u64,
    rng_seed: u64,
) -> Result<SeedReport, Error> {
    let discovery_context = ext.discovery_context();
    let k_star_lattice = discovery_context.lattice(cap)?;
    let anti_lattice = ext.base().negate().lattice(cap)?;
    let seeds = ext.maximal_seeds(cap)?;

    let entries = seeds
        .into_iter()
        .map(|seed| {
            let x_plus = ext.embed_objects(seed.objects()).expect("seed is over base");
            let y_plus = ext
                .embed_attributes(seed.attributes())
                .expect("seed is over base");
            let anticipated = k_star_lattice
                .concepts()
                .iter()
                .enumerate()
                .filter(|(_, c)| x_plus.is_subset(c.extent()) && y_plus.is_subset(c.intent()))
                .map(|(i, _)| i)
                .collect();
            let containing = anti_lattice
                .concepts()
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    seed.objects().is_subset(c.extent()) && seed.attributes().is_subset(c.intent())
                })
                .map(|(i, _)| i)
                .collect();
            SeedEntry {
                seed,
                anticipated,
                containing,
            }
        })
        .collect();

    Ok(SeedReport {
        discovery_context,
        k_star_lattice,
        anti_lattice,
        seeds: entries,
        verification: verify_propositions(ext, sample_budget, rng_seed),
    })
}
