//! Serializable report documents and the plain-text invariant table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::degeneration::{DegenerationSummary, Deltas, PathReport};
use crate::exponent::ExponentVector;
use crate::invariants::SingularityInvariants;
use crate::lattice::VolumeData;
use crate::search::{FamilySpec, Finding, HuntStats, RatioReport};
use crate::support::Support;

pub const ENGINE: &str = concat!("ndsig ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub mu: i64,
    pub mu_plus: i64,
    pub mu_zero: i64,
    pub mu_minus: i64,
    pub signature: i64,
    pub j1: i64,
    pub j2: i64,
}

impl From<&SingularityInvariants> for InvariantsRecord {
    fn from(i: &SingularityInvariants) -> Self {
        Self {
            mu: i.mu,
            mu_plus: i.mu_plus,
            mu_zero: i.mu_zero,
            mu_minus: i.mu_minus,
            signature: i.signature,
            j1: i.jordan.j1,
            j2: i.jordan.j2,
        }
    }
}

impl InvariantsRecord {
    pub fn row(&self) -> [i64; 5] {
        [
            self.mu,
            self.mu_plus,
            self.mu_zero,
            self.mu_minus,
            self.signature,
        ]
    }
}

/// One or more erasures. For a chain the counts are summed over the steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationRecord {
    pub erased: Vec<ExponentVector>,
    pub six_v: i64,
    pub n_new: i64,
    pub n_inner: i64,
    pub n_outer: i64,
    pub delta: i64,
    pub predicted: Deltas,
    pub direct: Deltas,
    pub consistent: bool,
    pub special: InvariantsRecord,
    pub steps: Vec<DegenerationSummary>,
}

impl From<&PathReport> for DegenerationRecord {
    fn from(p: &PathReport) -> Self {
        let steps: Vec<DegenerationSummary> = p.steps.iter().map(|s| s.summary()).collect();
        let sum = |f: fn(&DegenerationSummary) -> i64| steps.iter().map(f).sum();
        Self {
            erased: p.erased(),
            six_v: sum(|s| s.six_v),
            n_new: sum(|s| s.n_new),
            n_inner: sum(|s| s.n_inner),
            n_outer: sum(|s| s.n_outer),
            delta: sum(|s| s.delta),
            predicted: p.predicted(),
            direct: p.direct(),
            consistent: p.consistent(),
            special: InvariantsRecord::from(&p.after),
            steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub spec: FamilySpec,
    pub findings: Vec<Finding>,
    pub stats: HuntStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratios: Option<RatioReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub engine: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    /// Parameter values as exact rationals, e.g. `"1/2"`.
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
    #[serde(default)]
    pub completion_n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Support>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volumes: Option<VolumeData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<DegenerationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchRecord>,
}

impl ReportDocument {
    pub fn new() -> Self {
        Self {
            engine: ENGINE.to_string(),
            input: None,
            bindings: BTreeMap::new(),
            completion_n: None,
            support: None,
            invariants: None,
            volumes: None,
            degeneration: None,
            search: None,
        }
    }

    pub fn with_invariants(mut self, inv: &SingularityInvariants) -> Self {
        self.invariants = Some(inv.into());
        self.volumes = Some(inv.volume);
        self
    }
}

impl Default for ReportDocument {
    fn default() -> Self {
        Self::new()
    }
}

pub const TABLE_HEADER: [&str; 5] = ["mu", "mu+", "mu0", "mu-", "mu+-mu-"];

/// Right-aligned table with the columns `mu mu+ mu0 mu- mu+-mu-`.
pub fn format_table(rows: &[(String, [i64; 5])]) -> String {
    let label_w = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    let mut widths = TABLE_HEADER.map(str::len);
    for (_, r) in rows {
        for (w, v) in widths.iter_mut().zip(r) {
            *w = (*w).max(v.to_string().len());
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{:label_w$}", "");
    for (h, w) in TABLE_HEADER.iter().zip(widths) {
        let _ = write!(out, "  {h:>w$}");
    }
    out.push('\n');
    for (label, r) in rows {
        let pad = label_w - label.chars().count();
        let _ = write!(out, "{label}{:pad$}", "");
        for (v, w) in r.iter().zip(widths) {
            let _ = write!(out, "  {v:>w$}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::verify_towards;
    use crate::families;
    use crate::invariants::signature_triple;
    use crate::search::{hunt, ratio_report, PaperFamily};

    #[test]
    fn table_layout() {
        let t = format_table(&[
            ("X_0".into(), [45, 5, 3, 37, -32]),
            ("X_t".into(), [38, 1, 1, 36, -35]),
        ]);
        assert_eq!(
            t,
            "     mu  mu+  mu0  mu-  mu+-mu-\n\
             X_0  45    5    3   37      -32\n\
             X_t  38    1    1   36      -35\n"
        );
    }

    #[test]
    fn documents_round_trip() {
        let inv = signature_triple(&families::tpqr(4, 5, 6)).unwrap();
        let mut doc = ReportDocument::new().with_invariants(&inv);
        doc.input = Some("x*y*z + x^4 + y^5 + z^6".into());
        doc.bindings.insert("t".into(), "-1/2".into());
        doc.support = Some(families::tpqr(4, 5, 6));
        let path = verify_towards(
            &families::example1(true),
            &families::example1(false),
            crate::invariants::Completion::Auto,
        )
        .unwrap();
        doc.degeneration = Some((&path).into());
        let spec = crate::search::FamilySpec::paper(PaperFamily::Example1);
        let found = hunt(&spec).unwrap();
        doc.search = Some(SearchRecord {
            spec,
            ratios: Some(ratio_report(&found.findings).unwrap()),
            findings: found.findings,
            stats: found.stats,
        });

        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);

        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["invariants"]["mu"], 14);
        assert_eq!(v["invariants"]["signature"], -11);
        assert_eq!(v["degeneration"]["six_v"], 7);
        assert_eq!(v["degeneration"]["consistent"], true);
        assert_eq!(v["volumes"]["six_vol3"], inv.volume.six_vol3);
    }

    #[test]
    fn minimal_document_round_trips() {
        let doc = ReportDocument::new();
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<ReportDocument>(&json).unwrap(), doc);
    }
}
