//! Machine-checking of the propositions that govern revelation mappings and
//! seeds.
//!
//! Every law is universally quantified over subsets, so the checker runs
//! exhaustively when the extended context is small enough and falls back to
//! uniform sampling with a fixed, reported RNG seed otherwise. Failures are
//! data, not errors: each check carries a pass flag and, on failure, a
//! counterexample witness.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::discovery::{phi_tilde, psi_tilde, ContextExtension};
use crate::DEFAULT_CAP;

/// Exhaustive checking is attempted only below this many (S, T) pairs.
pub const EXHAUSTIVE_PAIR_LIMIT: u64 = 1 << 20;

/// The revelation mappings under test. The standard implementation delegates
/// to [`ContextExtension::phi`] and [`ContextExtension::psi`]; alternative
/// implementations exist so that deliberately corrupted mappings can be shown
/// to trip the checker.
pub trait RevelationMaps {
    fn phi(&self, ext: &ContextExtension, s_plus: &ObjectSet) -> AttributeSet;
    fn psi(&self, ext: &ContextExtension, t_plus: &AttributeSet) -> ObjectSet;
}

/// The mappings as defined: intersect in K⁺, subtract the old rows.
pub struct StandardMaps;

impl RevelationMaps for StandardMaps {
    fn phi(&self, ext: &ContextExtension, s_plus: &ObjectSet) -> AttributeSet {
        ext.phi(s_plus).expect("set drawn from the extended context")
    }

    fn psi(&self, ext: &ContextExtension, t_plus: &AttributeSet) -> ObjectSet {
        ext.psi(t_plus).expect("set drawn from the extended context")
    }
}

/// Outcome of one checked law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Counterexample description when the check failed.
    pub witness: Option<String>,
    /// How many instances were examined.
    pub cases: u64,
}

impl PropCheck {
    fn passed(name: &'static str, cases: u64) -> Self {
        PropCheck {
            name,
            pass: true,
            witness: None,
            cases,
        }
    }

    fn failed(name: &'static str, cases: u64, witness: String) -> Self {
        PropCheck {
            name,
            pass: false,
            witness: Some(witness),
            cases,
        }
    }
}

/// Result of a full verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub rng_seed: u64,
    pub sample_budget: u64,
    /// Whether the subset laws were checked over every subset pair.
    pub exhaustive: bool,
    pub checks: Vec<PropCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&PropCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pass state of the six numbered propositions alone.
    pub fn numbered_props_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("prop"))
            .all(|c| c.pass)
    }
}

/// Checks Propositions 1–6 and the supporting identities with the standard
/// revelation mappings.
pub fn verify_propositions(
    ext: &ContextExtension,
    sample_budget: u64,
    rng_seed: u64,
) -> VerificationReport {
    verify_propositions_with(ext, sample_budget, rng_seed, &StandardMaps)
}

/// As [`verify_propositions`], but with caller-supplied revelation mappings.
pub fn verify_propositions_with(
    ext: &ContextExtension,
    sample_budget: u64,
    rng_seed: u64,
    maps: &impl RevelationMaps,
) -> VerificationReport {
    let mut runner = Runner::new(ext, sample_budget, rng_seed, maps);
    let checks = alloc::vec![
        runner.prop1_antitone(),
        runner.prop2_galois_connection(),
        runner.prop3_new_relations(),
        runner.prop4_seed_existence(),
        runner.prop5_no_existing_preconcept(),
        runner.prop5_seed_disjointness(),
        runner.prop6_seed_in_negative(),
        runner.birkhoff_galois(),
        runner.revelation_closure_laws(),
        runner.phi_is_discovery_intent(),
        runner.approximation_containment(),
    ];
    VerificationReport {
        rng_seed,
        sample_budget,
        exhaustive: runner.exhaustive,
        checks,
    }
}

struct Runner<'a, M: RevelationMaps> {
    ext: &'a ContextExtension,
    star: FormalContext,
    maps: &'a M,
    rng: ChaCha8Rng,
    exhaustive: bool,
    budget: u64,
}

impl<'a, M: RevelationMaps> Runner<'a, M> {
    fn new(ext: &'a ContextExtension, sample_budget: u64, rng_seed: u64, maps: &'a M) -> Self {
        let g = ext.extended().object_count();
        let m = ext.extended().attribute_count();
        let total_pairs = if (g + m) as u32 >= u64::BITS {
            u64::MAX
        } else {
            1u64 << (g + m)
        };
        Runner {
            ext,
            star: ext.discovery_context(),
            maps,
            rng: ChaCha8Rng::seed_from_u64(rng_seed),
            exhaustive: total_pairs <= sample_budget.min(EXHAUSTIVE_PAIR_LIMIT),
            budget: sample_budget,
        }
    }

    fn phi(&self, s: &ObjectSet) -> AttributeSet {
        self.maps.phi(self.ext, s)
    }

    fn psi(&self, t: &AttributeSet) -> ObjectSet {
        self.maps.psi(self.ext, t)
    }

    fn object_universe(&self) -> usize {
        self.ext.extended().object_count()
    }

    fn attribute_universe(&self) -> usize {
        self.ext.extended().attribute_count()
    }

    fn random_objects(&mut self) -> ObjectSet {
        ObjectSet::from_bits(BitSet::random(self.object_universe(), &mut self.rng))
    }

    fn random_attributes(&mut self) -> AttributeSet {
        AttributeSet::from_bits(BitSet::random(self.attribute_universe(), &mut self.rng))
    }

    /// Visits object sets: all of them when exhaustive, `budget` random ones
    /// otherwise. Stops early once the visitor reports a failure.
    fn for_object_sets(&mut self, mut visit: impl FnMut(&mut Self, &ObjectSet) -> Option<String>) -> (u64, Option<String>) {
        let n = self.object_universe();
        let mut cases = 0;
        if self.exhaustive {
            for word in 0..(1u64 << n) {
                let s = ObjectSet::from_bits(BitSet::from_word(n, word));
                cases += 1;
                if let Some(w) = visit(self, &s) {
                    return (cases, Some(w));
                }
            }
        } else {
            for _ in 0..self.budget {
                let s = self.random_objects();
                cases += 1;
                if let Some(w) = visit(self, &s) {
                    return (cases, Some(w));
                }
            }
        }
        (cases, None)
    }

    fn for_attribute_sets(&mut self, mut visit: impl FnMut(&mut Self, &AttributeSet) -> Option<String>) -> (u64, Option<String>) {
        let n = self.attribute_universe();
        let mut cases = 0;
        if self.exhaustive {
            for word in 0..(1u64 << n) {
                let t = AttributeSet::from_bits(BitSet::from_word(n, word));
                cases += 1;
                if let Some(w) = visit(self, &t) {
                    return (cases, Some(w));
                }
            }
        } else {
            for _ in 0..self.budget {
                let t = self.random_attributes();
                cases += 1;
                if let Some(w) = visit(self, &t) {
                    return (cases, Some(w));
                }
            }
        }
        (cases, None)
    }

    fn for_set_pairs(
        &mut self,
        mut visit: impl FnMut(&mut Self, &ObjectSet, &AttributeSet) -> Option<String>,
    ) -> (u64, Option<String>) {
        let g = self.object_universe();
        let m = self.attribute_universe();
        let mut cases = 0;
        if self.exhaustive {
            for s_word in 0..(1u64 << g) {
                let s = ObjectSet::from_bits(BitSet::from_word(g, s_word));
                for t_word in 0..(1u64 << m) {
                    let t = AttributeSet::from_bits(BitSet::from_word(m, t_word));
                    cases += 1;
                    if let Some(w) = visit(self, &s, &t) {
                        return (cases, Some(w));
                    }
                }
            }
        } else {
            for _ in 0..self.budget {
                let s = self.random_objects();
                let t = self.random_attributes();
                cases += 1;
                if let Some(w) = visit(self, &s, &t) {
                    return (cases, Some(w));
                }
            }
        }
        (cases, None)
    }

    fn fmt_objects(&self, s: &ObjectSet) -> String {
        self.ext.extended().format_objects(s)
    }

    fn fmt_attributes(&self, t: &AttributeSet) -> String {
        self.ext.extended().format_attributes(t)
    }

    // ---- Proposition 1: Φ and Ψ are antitone --------------------------------

    fn prop1_antitone(&mut self) -> PropCheck {
        const NAME: &str = "prop1_antitone";
        let mut total = 0;
        if self.exhaustive {
            // single-element extensions imply antitonicity along any chain
            let (cases, witness) = self.for_object_sets(|r, s| {
                let phi_s = r.phi(s);
                for g in 0..r.object_universe() {
                    if s.contains(g) {
                        continue;
                    }
                    let mut bigger = s.bits().clone();
                    bigger.insert(g);
                    let bigger = ObjectSet::from_bits(bigger);
                    if !r.phi(&bigger).is_subset(&phi_s) {
                        return Some(format!(
                            "Φ not antitone: S1={} ⊆ S2={} but Φ(S2) ⊄ Φ(S1)",
                            r.fmt_objects(s),
                            r.fmt_objects(&bigger)
                        ));
                    }
                }
                None
            });
            total += cases;
            if let Some(w) = witness {
                return PropCheck::failed(NAME, total, w);
            }
            let (cases, witness) = self.for_attribute_sets(|r, t| {
                let psi_t = r.psi(t);
                for m in 0..r.attribute_universe() {
                    if t.contains(m) {
                        continue;
                    }
                    let mut bigger = t.bits().clone();
                    bigger.insert(m);
                    let bigger = AttributeSet::from_bits(bigger);
                    if !r.psi(&bigger).is_subset(&psi_t) {
                        return Some(format!(
                            "Ψ not antitone: T1={} ⊆ T2={} but Ψ(T2) ⊄ Ψ(T1)",
                            r.fmt_attributes(t),
                            r.fmt_attributes(&bigger)
                        ));
                    }
                }
                None
            });
            total += cases;
            if let Some(w) = witness {
                return PropCheck::failed(NAME, total, w);
            }
        } else {
            for _ in 0..self.budget {
                let s2 = self.random_objects();
                let mask = self.random_objects();
                let s1 = s2.intersection(&mask);
                total += 1;
                if !self.phi(&s2).is_subset(&self.phi(&s1)) {
                    return PropCheck::failed(
                        NAME,
                        total,
                        format!(
                            "Φ not antitone: S1={} ⊆ S2={} but Φ(S2) ⊄ Φ(S1)",
                            self.fmt_objects(&s1),
                            self.fmt_objects(&s2)
                        ),
                    );
                }
                let t2 = self.random_attributes();
                let mask = self.random_attributes();
                let t1 = t2.intersection(&mask);
                total += 1;
                if !self.psi(&t2).is_subset(&self.psi(&t1)) {
                    return PropCheck::failed(
                        NAME,
                        total,
                        format!(
                            "Ψ not antitone: T1={} ⊆ T2={} but Ψ(T2) ⊄ Ψ(T1)",
                            self.fmt_attributes(&t1),
                            self.fmt_attributes(&t2)
                        ),
                    );
                }
            }
        }
        PropCheck::passed(NAME, total)
    }

    // ---- Proposition 2: (Φ, Ψ) is a Galois connection ------------------------

    fn prop2_galois_connection(&mut self) -> PropCheck {
        const NAME: &str = "prop2_galois_connection";
        let mut total = 0;

        // property (ii): T ⊆ Φ(S) ⟺ S ⊆ Ψ(T)
        let (cases, witness) = self.for_set_pairs(|r, s, t| {
            let left = t.is_subset(&r.phi(s));
            let right = s.is_subset(&r.psi(t));
            if left != right {
                return Some(format!(
                    "Galois (ii) broken at S={}, T={}: T⊆Φ(S) is {} but S⊆Ψ(T) is {}",
                    r.fmt_objects(s),
                    r.fmt_attributes(t),
                    left,
                    right
                ));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }

        // property (i): S ⊆ ΨΦ(S) and T ⊆ ΦΨ(T)
        let (cases, witness) = self.for_object_sets(|r, s| {
            if !s.is_subset(&r.psi(&r.phi(s))) {
                return Some(format!("Galois (i) broken: S={} ⊄ ΨΦ(S)", r.fmt_objects(s)));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }
        let (cases, witness) = self.for_attribute_sets(|r, t| {
            if !t.is_subset(&r.phi(&r.psi(t))) {
                return Some(format!(
                    "Galois (i) broken: T={} ⊄ ΦΨ(T)",
                    r.fmt_attributes(t)
                ));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }
        PropCheck::passed(NAME, total)
    }

    // ---- Proposition 3: the induced relation is R⁺ ∖ R ----------------------

    fn prop3_new_relations(&mut self) -> PropCheck {
        const NAME: &str = "prop3_new_relations";
        let g_count = self.object_universe();
        let m_count = self.attribute_universe();
        let mut cases = 0;
        for g in 0..g_count {
            let singleton_g =
                ObjectSet::from_bits(BitSet::from_indices(g_count, [g]).expect("in range"));
            let phi_g = self.phi(&singleton_g);
            for m in 0..m_count {
                cases += 1;
                let newly = self.star.has(g, m);
                if phi_g.contains(m) != newly {
                    return PropCheck::failed(
                        NAME,
                        cases,
                        format!(
                            "({}, {}): m ∈ Φ(g) is {} but (g,m) ∈ R⁺∖R is {}",
                            self.ext.extended().object_name(g),
                            self.ext.extended().attribute_name(m),
                            phi_g.contains(m),
                            newly
                        ),
                    );
                }
            }
        }
        for m in 0..m_count {
            let singleton_m =
                AttributeSet::from_bits(BitSet::from_indices(m_count, [m]).expect("in range"));
            let psi_m = self.psi(&singleton_m);
            for g in 0..g_count {
                cases += 1;
                let newly = self.star.has(g, m);
                if psi_m.contains(g) != newly {
                    return PropCheck::failed(
                        NAME,
                        cases,
                        format!(
                            "({}, {}): g ∈ Ψ(m) is {} but (g,m) ∈ R⁺∖R is {}",
                            self.ext.extended().object_name(g),
                            self.ext.extended().attribute_name(m),
                            psi_m.contains(g),
                            newly
                        ),
                    );
                }
            }
        }
        PropCheck::passed(NAME, cases)
    }

    // ---- Proposition 4: old-old novelty guarantees a seed --------------------

    fn prop4_seed_existence(&mut self) -> PropCheck {
        const NAME: &str = "prop4_seed_existence";
        let star_old = self.ext.star_rows_over_base();
        let first_pair = star_old
            .iter()
            .enumerate()
            .find_map(|(g, row)| row.iter().next().map(|m| (g, m)));
        let seeds = match self.ext.maximal_seeds(Some(DEFAULT_CAP)) {
            Ok(seeds) => seeds,
            Err(e) => {
                return PropCheck::failed(NAME, 1, format!("seed enumeration failed: {}", e))
            }
        };
        match first_pair {
            Some((g, m)) => {
                let base = self.ext.base();
                let x = base.object_set([g]).expect("in range");
                let y = base.attribute_set([m]).expect("in range");
                if !self.ext.is_seed(&x, &y).expect("valid sets") {
                    return PropCheck::failed(
                        NAME,
                        1,
                        format!(
                            "({}, {}) lies in R* ∩ (G×M) but its singleton pair is not a seed",
                            base.object_name(g),
                            base.attribute_name(m)
                        ),
                    );
                }
                if seeds.is_empty() {
                    return PropCheck::failed(
                        NAME,
                        1,
                        "R* ∩ (G×M) ≠ ∅ but no maximal seed was produced".into(),
                    );
                }
            }
            None => {
                if !seeds.is_empty() {
                    return PropCheck::failed(
                        NAME,
                        1,
                        "R* ∩ (G×M) = ∅ yet a seed was produced".into(),
                    );
                }
            }
        }
        PropCheck::passed(NAME, 1)
    }

    // ---- Proposition 5: no preconcept of K is a seed -------------------------

    fn prop5_no_existing_preconcept(&mut self) -> PropCheck {
        const NAME: &str = "prop5_no_existing_preconcept";
        let base = self.ext.base().clone();
        let g = base.object_count();
        let mut cases = 0;

        let check =
            |r: &mut Self, p: &ObjectSet, u: &AttributeSet, cases: &mut u64| -> Option<String> {
                *cases += 1;
                if r.ext.is_seed(p, u).expect("valid sets") {
                    return Some(format!(
                        "preconcept ({} ; {}) of K was accepted as a seed",
                        base.format_objects(p),
                        base.format_attributes(u)
                    ));
                }
                None
            };

        if self.exhaustive {
            for word in 1..(1u64 << g) {
                let p = ObjectSet::from_bits(BitSet::from_word(g, word));
                let intent = base.intent(&p).expect("valid set");
                let members = intent.indices();
                for sub in 1..(1u64 << members.len()) {
                    let u = AttributeSet::from_bits(
                        BitSet::from_indices(
                            base.attribute_count(),
                            members
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| sub & (1 << i) != 0)
                                .map(|(_, &m)| m),
                        )
                        .expect("indices from base"),
                    );
                    if let Some(w) = check(self, &p, &u, &mut cases) {
                        return PropCheck::failed(NAME, cases, w);
                    }
                }
            }
        } else {
            for _ in 0..self.budget {
                let mut p = BitSet::random(g, &mut self.rng);
                if p.is_empty() {
                    if g == 0 {
                        break;
                    }
                    p.insert(pick(&mut self.rng, g));
                }
                let p = ObjectSet::from_bits(p);
                let intent = base.intent(&p).expect("valid set");
                if intent.is_empty() {
                    continue;
                }
                let mut u = intent.bits().random_subset(&mut self.rng);
                if u.is_empty() {
                    let members = intent.indices();
                    u.insert(members[pick(&mut self.rng, members.len())]);
                }
                let u = AttributeSet::from_bits(u);
                if let Some(w) = check(self, &p, &u, &mut cases) {
                    return PropCheck::failed(NAME, cases, w);
                }
            }
        }
        PropCheck::passed(NAME, cases)
    }

    // ---- Proposition 5 corollary: seeds touch only a priori unrelated pairs --

    fn prop5_seed_disjointness(&mut self) -> PropCheck {
        const NAME: &str = "prop5_seed_disjointness";
        let base = self.ext.base();
        let seeds = match self.ext.maximal_seeds(Some(DEFAULT_CAP)) {
            Ok(seeds) => seeds,
            Err(e) => {
                return PropCheck::failed(NAME, 0, format!("seed enumeration failed: {}", e))
            }
        };
        let mut cases = 0;
        for seed in &seeds {
            cases += 1;
            let mut extent_union = base.empty_objects();
            for m in seed.attributes().iter() {
                let col = base.attribute_set([m]).expect("in range");
                extent_union = extent_union.union(&base.extent(&col).expect("valid"));
            }
            if !seed.objects().is_disjoint(&extent_union) {
                return PropCheck::failed(
                    NAME,
                    cases,
                    format!(
                        "seed ({} ; {}) overlaps ⋃ E_R(m)",
                        base.format_objects(seed.objects()),
                        base.format_attributes(seed.attributes())
                    ),
                );
            }
            let mut intent_union = base.empty_attributes();
            for g in seed.objects().iter() {
                let row = base.object_set([g]).expect("in range");
                intent_union = intent_union.union(&base.intent(&row).expect("valid"));
            }
            if !seed.attributes().is_disjoint(&intent_union) {
                return PropCheck::failed(
                    NAME,
                    cases,
                    format!(
                        "seed ({} ; {}) overlaps ⋃ I_R(g)",
                        base.format_objects(seed.objects()),
                        base.format_attributes(seed.attributes())
                    ),
                );
            }
        }
        PropCheck::passed(NAME, cases)
    }

    // ---- Proposition 6: a seed is a preconcept of the negative context -------

    fn prop6_seed_in_negative(&mut self) -> PropCheck {
        const NAME: &str = "prop6_seed_in_negative";
        let base = self.ext.base();
        let negative = base.negate();
        let seeds = match self.ext.maximal_seeds(Some(DEFAULT_CAP)) {
            Ok(seeds) => seeds,
            Err(e) => {
                return PropCheck::failed(NAME, 0, format!("seed enumeration failed: {}", e))
            }
        };
        let mut cases = 0;
        for seed in &seeds {
            cases += 1;
            if !negative
                .is_preconcept(seed.objects(), seed.attributes())
                .expect("valid sets")
            {
                return PropCheck::failed(
                    NAME,
                    cases,
                    format!(
                        "seed ({} ; {}) is not a preconcept of the negative context",
                        base.format_objects(seed.objects()),
                        base.format_attributes(seed.attributes())
                    ),
                );
            }
        }
        PropCheck::passed(NAME, cases)
    }

    // ---- Birkhoff Galois laws on K and K⁺ -------------------------------------

    fn birkhoff_galois(&mut self) -> PropCheck {
        const NAME: &str = "birkhoff_galois";
        let mut total = 0;
        let (cases, witness) = self.for_set_pairs(|r, s, t| {
            let kp = r.ext.extended();
            let left = s.is_subset(&kp.extent(t).expect("valid"));
            let right = t.is_subset(&kp.intent(s).expect("valid"));
            if left != right {
                return Some(format!(
                    "(I,E) Galois (ii) broken in K⁺ at S={}, T={}",
                    r.fmt_objects(s),
                    r.fmt_attributes(t)
                ));
            }
            if !s.is_subset(&kp.close_objects(s).expect("valid")) {
                return Some(format!("S={} ⊄ E(I(S)) in K⁺", r.fmt_objects(s)));
            }
            if !t.is_subset(&kp.close_attributes(t).expect("valid")) {
                return Some(format!("T={} ⊄ I(E(T)) in K⁺", r.fmt_attributes(t)));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }

        // and on the base context, which has its own universes
        let base = self.ext.base().clone();
        let g = base.object_count();
        let m = base.attribute_count();
        let pairs = if (g + m) as u32 >= u64::BITS {
            u64::MAX
        } else {
            1u64 << (g + m)
        };
        let run = |s: &ObjectSet, t: &AttributeSet, total: &mut u64| -> Option<String> {
            *total += 1;
            let left = s.is_subset(&base.extent(t).expect("valid"));
            let right = t.is_subset(&base.intent(s).expect("valid"));
            if left != right {
                return Some(format!(
                    "(I,E) Galois (ii) broken in K at S={}, T={}",
                    base.format_objects(s),
                    base.format_attributes(t)
                ));
            }
            None
        };
        if pairs <= self.budget.min(EXHAUSTIVE_PAIR_LIMIT) {
            for s_word in 0..(1u64 << g) {
                let s = ObjectSet::from_bits(BitSet::from_word(g, s_word));
                for t_word in 0..(1u64 << m) {
                    let t = AttributeSet::from_bits(BitSet::from_word(m, t_word));
                    if let Some(w) = run(&s, &t, &mut total) {
                        return PropCheck::failed(NAME, total, w);
                    }
                }
            }
        } else {
            for _ in 0..self.budget {
                let s = ObjectSet::from_bits(BitSet::random(g, &mut self.rng));
                let t = AttributeSet::from_bits(BitSet::random(m, &mut self.rng));
                if let Some(w) = run(&s, &t, &mut total) {
                    return PropCheck::failed(NAME, total, w);
                }
            }
        }
        PropCheck::passed(NAME, total)
    }

    // ---- consequences of Prop 2: closure behaviour of Ψ∘Φ --------------------

    fn revelation_closure_laws(&mut self) -> PropCheck {
        const NAME: &str = "revelation_closure_laws";
        let mut total = 0;

        let (cases, witness) = self.for_object_sets(|r, s| {
            let phi_s = r.phi(s);
            let closed = r.psi(&phi_s);
            // idempotence of Ψ∘Φ
            let twice = r.psi(&r.phi(&closed));
            if twice != closed {
                return Some(format!("ΨΦ not idempotent at S={}", r.fmt_objects(s)));
            }
            // triple composition collapses
            if r.phi(&closed) != phi_s {
                return Some(format!("ΦΨΦ(S) ≠ Φ(S) at S={}", r.fmt_objects(s)));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }

        let (cases, witness) = self.for_attribute_sets(|r, t| {
            let psi_t = r.psi(t);
            if r.psi(&r.phi(&psi_t)) != psi_t {
                return Some(format!("ΨΦΨ(T) ≠ Ψ(T) at T={}", r.fmt_attributes(t)));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }

        // monotonicity of Ψ∘Φ on sampled inclusions
        let budget = if self.exhaustive { 0 } else { self.budget };
        for _ in 0..budget {
            let s2 = self.random_objects();
            let mask = self.random_objects();
            let s1 = s2.intersection(&mask);
            total += 1;
            let c1 = self.psi(&self.phi(&s1));
            let c2 = self.psi(&self.phi(&s2));
            if !c1.is_subset(&c2) {
                return PropCheck::failed(
                    NAME,
                    total,
                    format!(
                        "ΨΦ not monotone: S1={} ⊆ S2={}",
                        self.fmt_objects(&s1),
                        self.fmt_objects(&s2)
                    ),
                );
            }
        }
        if self.exhaustive {
            let (cases, witness) = self.for_object_sets(|r, s| {
                let closure = r.psi(&r.phi(s));
                for g in 0..r.object_universe() {
                    if s.contains(g) {
                        continue;
                    }
                    let mut bigger = s.bits().clone();
                    bigger.insert(g);
                    let bigger = ObjectSet::from_bits(bigger);
                    if !closure.is_subset(&r.psi(&r.phi(&bigger))) {
                        return Some(format!(
                            "ΨΦ not monotone between {} and {}",
                            r.fmt_objects(s),
                            r.fmt_objects(&bigger)
                        ));
                    }
                }
                None
            });
            total += cases;
            if let Some(w) = witness {
                return PropCheck::failed(NAME, total, w);
            }
        }
        PropCheck::passed(NAME, total)
    }

    // ---- Φ and Ψ are the Birkhoff operators of K* ----------------------------

    fn phi_is_discovery_intent(&mut self) -> PropCheck {
        const NAME: &str = "phi_is_discovery_intent";
        let mut total = 0;
        let (cases, witness) = self.for_object_sets(|r, s| {
            if r.phi(s) != r.star.intent(s).expect("valid") {
                return Some(format!(
                    "Φ(S) ≠ intent of S in K* at S={}",
                    r.fmt_objects(s)
                ));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }
        let (cases, witness) = self.for_attribute_sets(|r, t| {
            if r.psi(t) != r.star.extent(t).expect("valid") {
                return Some(format!(
                    "Ψ(T) ≠ extent of T in K* at T={}",
                    r.fmt_attributes(t)
                ));
            }
            None
        });
        total += cases;
        if let Some(w) = witness {
            return PropCheck::failed(NAME, total, w);
        }
        PropCheck::passed(NAME, total)
    }

    // ---- Φ̃ approximates Φ from the old data alone ----------------------------

    fn approximation_containment(&mut self) -> PropCheck {
        const NAME: &str = "approximation_containment";
        let base = self.ext.base().clone();
        let negative = base.negate();
        let g = base.object_count();
        let m = base.attribute_count();
        let mut total = 0;

        let sets: u64 = if self.exhaustive { 1u64 << g } else { self.budget };
        for i in 0..sets {
            let s = if self.exhaustive {
                ObjectSet::from_bits(BitSet::from_word(g, i))
            } else {
                ObjectSet::from_bits(BitSet::random(g, &mut self.rng))
            };
            total += 1;
            let approx = phi_tilde(&base, &s).expect("valid");
            // Φ̃ is exactly the intent operator of K̄
            if approx != negative.intent(&s).expect("valid") {
                return PropCheck::failed(
                    NAME,
                    total,
                    format!("Φ̃(S) ≠ I_K̄(S) at S={}", base.format_objects(&s)),
                );
            }
            // Φ(S) ∩ M ⊆ Φ̃(S)
            let embedded = self.ext.embed_objects(&s).expect("base set");
            let phi_old = self
                .ext
                .restrict_attributes(&self.phi(&embedded).intersection(&self.ext.old_attributes()));
            if !phi_old.is_subset(&approx) {
                return PropCheck::failed(
                    NAME,
                    total,
                    format!("Φ(S) ∩ M ⊄ Φ̃(S) at S={}", base.format_objects(&s)),
                );
            }
        }

        let sets: u64 = if self.exhaustive { 1u64 << m } else { self.budget };
        for i in 0..sets {
            let t = if self.exhaustive {
                AttributeSet::from_bits(BitSet::from_word(m, i))
            } else {
                AttributeSet::from_bits(BitSet::random(m, &mut self.rng))
            };
            total += 1;
            let approx = psi_tilde(&base, &t).expect("valid");
            if approx != negative.extent(&t).expect("valid") {
                return PropCheck::failed(
                    NAME,
                    total,
                    format!("Ψ̃(T) ≠ E_K̄(T) at T={}", base.format_attributes(&t)),
                );
            }
            let embedded = self.ext.embed_attributes(&t).expect("base set");
            let psi_old = self
                .ext
                .restrict_objects(&self.psi(&embedded).intersection(&self.ext.old_objects()));
            if !psi_old.is_subset(&approx) {
                return PropCheck::failed(
                    NAME,
                    total,
                    format!("Ψ(T) ∩ G ⊄ Ψ̃(T) at T={}", base.format_attributes(&t)),
                );
            }
        }
        PropCheck::passed(NAME, total)
    }
}

fn pick(rng: &mut impl RngCore, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::fixtures::{existing, extended};
    use crate::context::FormalContext;

    fn worked_extension() -> ContextExtension {
        ContextExtension::new(existing(), extended(), false).unwrap()
    }

    #[test]
    fn worked_extension_passes_exhaustively() {
        let ext = worked_extension();
        let report = verify_propositions(&ext, 1 << 20, 7);
        assert!(report.exhaustive);
        assert!(report.all_pass(), "failures: {:?}", report.checks);
        assert_eq!(report.checks.len(), 11);
        assert!(report.numbered_props_pass());
    }

    #[test]
    fn identity_extension_passes_vacuously() {
        let k = existing();
        let ext = ContextExtension::new(k.clone(), k, false).unwrap();
        let report = verify_propositions(&ext, 1 << 20, 7);
        assert!(report.all_pass());
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let ext = worked_extension();
        let a = verify_propositions(&ext, 64, 99);
        let b = verify_propositions(&ext, 64, 99);
        assert!(!a.exhaustive);
        assert_eq!(a, b);
        assert!(a.all_pass());
    }

    #[test]
    fn corrupted_phi_fails_prop3_with_witness() {
        struct NoSubtraction;
        impl RevelationMaps for NoSubtraction {
            fn phi(&self, ext: &ContextExtension, s: &ObjectSet) -> AttributeSet {
                // the mutation: skip the ∖ ⋃ I_R(g) subtraction
                ext.extended().intent(s).expect("valid")
            }
            fn psi(&self, ext: &ContextExtension, t: &AttributeSet) -> ObjectSet {
                ext.psi(t).expect("valid")
            }
        }
        let ext = worked_extension();
        let report = verify_propositions_with(&ext, 1 << 20, 7, &NoSubtraction);
        let prop3 = report.check("prop3_new_relations").unwrap();
        assert!(!prop3.pass);
        assert!(prop3.witness.is_some());
    }

    #[test]
    fn removal_extensions_still_satisfy_the_formal_laws() {
        let base = existing();
        let shrunk = FormalContext::new(
            ["A", "B", "C"],
            ["α", "β", "γ"],
            [("A", "α"), ("B", "γ"), ("C", "β")],
        )
        .unwrap();
        let ext = ContextExtension::new(base, shrunk, true).unwrap();
        let report = verify_propositions(&ext, 1 << 20, 7);
        assert!(report.all_pass(), "failures: {:?}", report.checks);
    }
}
