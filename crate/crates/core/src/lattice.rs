//! Concepts, preconcepts, closure operators, and deterministic concept
//! enumeration.
//!
//! Enumeration follows the NextClosure discipline: intents are produced in
//! strictly increasing lectic order over the declared attribute order, so the
//! output is canonical, duplicate-free, and identical across runs.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::Error;

/// A pair (extent, intent) closed under both derivation operators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Concept {
    extent: ObjectSet,
    intent: AttributeSet,
}

impl Concept {
    pub(crate) fn from_parts(extent: ObjectSet, intent: AttributeSet) -> Self {
        Concept { extent, intent }
    }

    pub fn extent(&self) -> &ObjectSet {
        &self.extent
    }

    pub fn intent(&self) -> &AttributeSet {
        &self.intent
    }
}

/// A pair (objects, attributes) where every listed object bears every listed
/// attribute; not necessarily closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preconcept {
    objects: ObjectSet,
    attributes: AttributeSet,
}

impl Preconcept {
    /// Validates the containment `objects ⊆ extent(attributes)`.
    pub fn new(
        context: &FormalContext,
        objects: ObjectSet,
        attributes: AttributeSet,
    ) -> Result<Self, Error> {
        if !context.is_preconcept(&objects, &attributes)? {
            return Err(Error::InvalidPreconcept);
        }
        Ok(Preconcept { objects, attributes })
    }

    pub fn objects(&self) -> &ObjectSet {
        &self.objects
    }

    pub fn attributes(&self) -> &AttributeSet {
        &self.attributes
    }

    /// The "less extensive than" order: componentwise inclusion.
    pub fn leq(&self, other: &Preconcept) -> Result<bool, Error> {
        if self.objects.universe() != other.objects.universe()
            || self.attributes.universe() != other.attributes.universe()
        {
            return Err(Error::ContextMismatch);
        }
        Ok(self.objects.is_subset(&other.objects)
            && self.attributes.is_subset(&other.attributes))
    }
}

/// Node labelling for DOT export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelStyle {
    /// Every node carries its full extent and intent.
    Full,
    /// Each object and attribute appears once, at its introducing concept.
    Reduced,
}

/// All concepts of a context in lectic order, plus the Hasse diagram of the
/// extent-inclusion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConceptLattice {
    concepts: Vec<Concept>,
    covers: Vec<(usize, usize)>,
}

impl ConceptLattice {
    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    /// Cover pairs `(lower, upper)`: `lower` is directly below `upper`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn position(&self, concept: &Concept) -> Option<usize> {
        self.concepts.iter().position(|c| c == concept)
    }

    /// Hasse diagram in DOT syntax. Node ids are `c<index>`; one edge per
    /// cover pair, drawn from the upper concept down to the lower.
    pub fn to_dot(&self, context: &FormalContext, style: LabelStyle) -> String {
        let mut out = String::from("digraph lattice {\n");
        match style {
            LabelStyle::Full => {
                for (i, c) in self.concepts.iter().enumerate() {
                    let label = alloc::format!(
                        "{} ; {}",
                        context.format_objects(c.extent()),
                        context.format_attributes(c.intent())
                    );
                    let _ = writeln!(out, "  c{} [label=\"{}\"];", i, escape_dot(&label));
                }
            }
            LabelStyle::Reduced => {
                for (i, c) in self.concepts.iter().enumerate() {
                    let mut attrs: Vec<String> = Vec::new();
                    for m in c.intent().iter() {
                        let single = context.attribute_set([m]).expect("index from context");
                        if context.extent(&single).expect("validated") == *c.extent() {
                            attrs.push(escape_dot(context.attribute_name(m)));
                        }
                    }
                    let mut objs: Vec<String> = Vec::new();
                    for g in c.extent().iter() {
                        let single = context.object_set([g]).expect("index from context");
                        if context.intent(&single).expect("validated") == *c.intent() {
                            objs.push(escape_dot(context.object_name(g)));
                        }
                    }
                    // the separator is a DOT line break, kept out of escaping
                    let mut label = attrs.join(", ");
                    if !objs.is_empty() {
                        if !label.is_empty() {
                            label.push_str("\\n");
                        }
                        label.push_str(&objs.join(", "));
                    }
                    let _ = writeln!(out, "  c{} [label=\"{}\"];", i, label);
                }
            }
        }
        for &(lower, upper) in &self.covers {
            let _ = writeln!(out, "  c{} -> c{};", upper, lower);
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(ch),
        }
    }
    out
}

/// Upper bound on the number of concepts of a context with `relation_size`
/// incidence pairs: `(3/2)·2^√(|R|+1) − 1`.
pub fn concept_count_bound(relation_size: usize) -> f64 {
    1.5 * libm::exp2(libm::sqrt(relation_size as f64 + 1.0)) - 1.0
}

impl FormalContext {
    /// `intent(extent(t))`: the smallest concept intent containing `t`.
    pub fn close_attributes(&self, t: &AttributeSet) -> Result<AttributeSet, Error> {
        self.intent(&self.extent(t)?)
    }

    /// `extent(intent(s))`: the smallest concept extent containing `s`.
    pub fn close_objects(&self, s: &ObjectSet) -> Result<ObjectSet, Error> {
        self.extent(&self.intent(s)?)
    }

    /// The concept generated by a set of objects.
    pub fn concept_of_objects(&self, s: &ObjectSet) -> Result<Concept, Error> {
        let intent = self.intent(s)?;
        let extent = self.extent(&intent)?;
        Ok(Concept::from_parts(extent, intent))
    }

    /// The concept generated by a set of attributes.
    pub fn concept_of_attributes(&self, t: &AttributeSet) -> Result<Concept, Error> {
        let extent = self.extent(t)?;
        let intent = self.intent(&extent)?;
        Ok(Concept::from_parts(extent, intent))
    }

    /// `I(s) = t` and `E(t) = s`.
    pub fn is_concept(&self, s: &ObjectSet, t: &AttributeSet) -> Result<bool, Error> {
        Ok(self.intent(s)? == *t && self.extent(t)? == *s)
    }

    /// Every object in `s` bears every attribute in `t`.
    pub fn is_preconcept(&self, s: &ObjectSet, t: &AttributeSet) -> Result<bool, Error> {
        self.check_objects(s)?;
        Ok(t.is_subset(&self.intent(s)?))
    }

    /// All concepts in lectic intent order, without the cover relation.
    ///
    /// `cap` bounds how many concepts may be emitted; exceeding it aborts
    /// with [`Error::CapExceeded`] carrying the partial count.
    pub fn concept_list(&self, cap: Option<usize>) -> Result<Vec<Concept>, Error> {
        let m = self.attribute_count();
        let cap = cap.unwrap_or(usize::MAX);
        let mut concepts = Vec::new();

        let mut intent = self.close_attributes(&self.empty_attributes())?;
        loop {
            if concepts.len() >= cap {
                return Err(Error::CapExceeded { emitted: concepts.len() });
            }
            let extent = self.extent(&intent)?;
            concepts.push(Concept::from_parts(extent, intent.clone()));

            match self.next_closure(&intent, m) {
                Some(next) => intent = next,
                None => break,
            }
        }
        Ok(concepts)
    }

    fn next_closure(&self, current: &AttributeSet, m: usize) -> Option<AttributeSet> {
        for i in (0..m).rev() {
            if current.contains(i) {
                continue;
            }
            let mut candidate = current.bits().clone();
            candidate.keep_below(i);
            candidate.insert(i);
            let closed = self
                .close_attributes(&AttributeSet::from_bits(candidate))
                .expect("candidate drawn from this context");
            if closed.bits().eq_below(current.bits(), i) {
                return Some(closed);
            }
        }
        None
    }

    /// Enumerates every concept and the Hasse diagram of the lattice.
    pub fn lattice(&self, cap: Option<usize>) -> Result<ConceptLattice, Error> {
        let concepts = self.concept_list(cap)?;
        let covers = hasse_covers(&concepts);
        Ok(ConceptLattice { concepts, covers })
    }
}

/// Transitive reduction of the extent-inclusion order, as (lower, upper)
/// index pairs sorted ascending.
fn hasse_covers(concepts: &[Concept]) -> Vec<(usize, usize)> {
    let n = concepts.len();
    let mut covers = Vec::new();
    for lower in 0..n {
        // Upper covers of `lower`: minimal concepts strictly above it.
        let mut minimal: Vec<usize> = Vec::new();
        for upper in 0..n {
            if upper == lower {
                continue;
            }
            let le = concepts[lower].extent().is_subset(concepts[upper].extent());
            if !le || concepts[lower].extent() == concepts[upper].extent() {
                continue;
            }
            if minimal
                .iter()
                .any(|&kept| concepts[kept].extent().is_subset(concepts[upper].extent()))
            {
                continue;
            }
            minimal.retain(|&kept| !concepts[upper].extent().is_subset(concepts[kept].extent()));
            minimal.push(upper);
        }
        for upper in minimal {
            covers.push((lower, upper));
        }
    }
    covers.sort_unstable();
    covers
}
