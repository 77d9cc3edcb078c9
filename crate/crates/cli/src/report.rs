//! Machine-readable report formats.
//!
//! Field names and array orders are part of the interface: name arrays list
//! members in declared context order, seed arrays are sorted lectically, and
//! candidate arrays keep rank order.

use indexmap::IndexMap;
use serde::Serialize;
use uum_core::{
    AttributeSet, CandidateReport, Concept, ContextExtension, FormalContext, ObjectSet,
    SeedReport, VerificationReport,
};

/// A context embedded in a report, equivalent to its cxt file.
#[derive(Debug, Serialize)]
pub struct ContextJson {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    /// One string per object: `X` for a cross, `.` otherwise.
    pub incidence: Vec<String>,
}

impl From<&FormalContext> for ContextJson {
    fn from(k: &FormalContext) -> Self {
        ContextJson {
            objects: k.object_names().to_vec(),
            attributes: k.attribute_names().to_vec(),
            incidence: (0..k.object_count())
                .map(|g| {
                    (0..k.attribute_count())
                        .map(|m| if k.has(g, m) { 'X' } else { '.' })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConceptJson {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

impl ConceptJson {
    pub fn new(k: &FormalContext, concept: &Concept) -> Self {
        ConceptJson {
            extent: object_names(k, concept.extent()),
            intent: attribute_names(k, concept.intent()),
        }
    }
}

pub fn object_names(k: &FormalContext, s: &ObjectSet) -> Vec<String> {
    s.iter().map(|g| k.object_name(g).to_string()).collect()
}

pub fn attribute_names(k: &FormalContext, t: &AttributeSet) -> Vec<String> {
    t.iter().map(|m| k.attribute_name(m).to_string()).collect()
}

#[derive(Debug, Serialize)]
pub struct PropositionJson {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn propositions_json(v: &VerificationReport) -> IndexMap<String, PropositionJson> {
    v.checks
        .iter()
        .map(|c| {
            (
                c.name.to_string(),
                PropositionJson {
                    pass: c.pass,
                    witness: c.witness.clone(),
                },
            )
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SeedJson {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub anticipating_concepts: Vec<ConceptJson>,
    pub containing_anticoncepts: Vec<ConceptJson>,
}

#[derive(Debug, Serialize)]
pub struct SeedReportJson {
    pub discovery_context: ContextJson,
    pub seeds: Vec<SeedJson>,
    pub propositions: IndexMap<String, PropositionJson>,
}

impl SeedReportJson {
    pub fn build(report: &SeedReport, ext: &ContextExtension) -> Self {
        let base = ext.base();
        let star = &report.discovery_context;
        let seeds = report
            .seeds
            .iter()
            .map(|entry| SeedJson {
                objects: object_names(base, entry.seed.objects()),
                attributes: attribute_names(base, entry.seed.attributes()),
                anticipating_concepts: entry
                    .anticipated
                    .iter()
                    .map(|&i| ConceptJson::new(star, &report.k_star_lattice.concepts()[i]))
                    .collect(),
                containing_anticoncepts: entry
                    .containing
                    .iter()
                    .map(|&i| ConceptJson::new(base, &report.anti_lattice.concepts()[i]))
                    .collect(),
            })
            .collect();
        SeedReportJson {
            discovery_context: ContextJson::from(star),
            seeds,
            propositions: propositions_json(&report.verification),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AntiConceptJson {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub score: u64,
    pub preconcept_count: u128,
}

#[derive(Debug, Serialize)]
pub struct CandidateReportJson {
    pub provenance: String,
    pub anti_concepts: Vec<AntiConceptJson>,
}

impl CandidateReportJson {
    pub fn build(report: &CandidateReport, k: &FormalContext) -> Self {
        CandidateReportJson {
            provenance: report.provenance.clone(),
            anti_concepts: report
                .candidates
                .iter()
                .map(|c| {
                    let concept = &report.lattice.concepts()[c.concept];
                    AntiConceptJson {
                        extent: object_names(k, concept.extent()),
                        intent: attribute_names(k, concept.intent()),
                        score: c.score,
                        preconcept_count: c.preconcept_count,
                    }
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use uum_core::{candidate_outbox, seed_report};

    fn table1() -> FormalContext {
        FormalContext::new(
            ["A", "B", "C"],
            ["α", "β", "γ"],
            [("A", "α"), ("A", "β"), ("B", "γ"), ("C", "β"), ("C", "γ")],
        )
        .unwrap()
    }

    fn table2() -> FormalContext {
        FormalContext::new(
            ["A", "B", "C", "D", "E"],
            ["α", "β", "γ", "δ"],
            [
                ("A", "α"),
                ("A", "β"),
                ("A", "δ"),
                ("B", "α"),
                ("B", "γ"),
                ("C", "β"),
                ("C", "γ"),
                ("D", "α"),
                ("D", "δ"),
                ("E", "β"),
                ("E", "γ"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn seed_report_json_shape() {
        let ext = ContextExtension::new(table1(), table2(), false).unwrap();
        let report = seed_report(&ext, None, 1 << 20, 0).unwrap();
        let json = serde_json::to_value(SeedReportJson::build(&report, &ext)).unwrap();

        assert_eq!(json["seeds"][0]["objects"], serde_json::json!(["B"]));
        assert_eq!(json["seeds"][0]["attributes"], serde_json::json!(["α"]));
        assert_eq!(
            json["seeds"][0]["anticipating_concepts"][0]["extent"],
            serde_json::json!(["B", "D"])
        );
        assert_eq!(
            json["seeds"][0]["containing_anticoncepts"]
                .as_array()
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            json["discovery_context"]["incidence"],
            serde_json::json!(["...X", "X...", "....", "X..X", ".XX."])
        );
        assert_eq!(json["propositions"]["prop3_new_relations"]["pass"], true);
        assert!(json["propositions"]["prop3_new_relations"]
            .get("witness")
            .is_none());
    }

    #[test]
    fn candidate_report_json_shape() {
        let k = table1();
        let report = candidate_outbox(&k, None).unwrap();
        let json = serde_json::to_value(CandidateReportJson::build(&report, &k)).unwrap();
        let anti = json["anti_concepts"].as_array().unwrap();
        assert_eq!(anti.len(), 3);
        assert_eq!(anti[0]["extent"], serde_json::json!(["B", "C"]));
        assert_eq!(anti[0]["intent"], serde_json::json!(["α"]));
        assert_eq!(anti[0]["score"], 2);
        assert_eq!(anti[0]["preconcept_count"], 3);
        assert_eq!(json["provenance"].as_str().unwrap().len(), 64);
    }
}
