//! Verification records and suite reports.
//!
//! Every quantitative check in the toolkit reduces to "lhs <= rhs + slack",
//! direction-normalized, so a single record shape covers all of them.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// One checked inequality: identifier, the statement being verified,
/// computed sides, margin, verdict and parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check_id: String,
    /// Human-readable form of the inequality or law being checked.
    pub statement: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs + slack - lhs`; nonnegative iff the check passes.
    pub margin: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    /// Optional per-case rows (for example one row per block) backing the
    /// aggregate lhs/rhs; used for CSV margin tables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl VerificationRecord {
    /// Record for an upper-bound check `lhs <= rhs + slack`.
    pub fn upper(check_id: &str, statement: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        let margin = rhs + slack - lhs;
        VerificationRecord {
            check_id: check_id.into(),
            statement: statement.into(),
            lhs,
            rhs,
            margin,
            pass: margin >= 0.0 && lhs.is_finite(),
            params: BTreeMap::new(),
            table: vec![],
        }
    }

    /// Record for a lower-bound check `value >= bound - slack`, normalized
    /// to the `lhs <= rhs` direction by storing lhs = bound, rhs = value.
    pub fn lower(check_id: &str, statement: &str, value: f64, bound: f64, slack: f64) -> Self {
        let mut r = Self::upper(check_id, statement, bound, value, slack);
        r.params
            .insert("direction".into(), "lower-bound".into());
        r
    }

    /// Boolean verdict rendered as a degenerate inequality.
    pub fn boolean(check_id: &str, statement: &str, ok: bool) -> Self {
        VerificationRecord {
            check_id: check_id.into(),
            statement: statement.into(),
            lhs: if ok { 0.0 } else { 1.0 },
            rhs: 0.0,
            margin: if ok { 0.0 } else { -1.0 },
            pass: ok,
            params: BTreeMap::new(),
            table: vec![],
        }
    }

    /// A check that could not run; always a failure, with the reason kept.
    pub fn failed(check_id: &str, statement: &str, reason: &str) -> Self {
        let mut r = Self::boolean(check_id, statement, false);
        r.params.insert("error".into(), reason.into());
        r
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn with_table(mut self, table: Vec<TableRow>) -> Self {
        self.table = table;
        self
    }
}

/// Aggregate counts for a record list.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn from_records(records: &[VerificationRecord]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        }
    }
}

/// Wall-clock data, kept apart from the verified content so golden-file
/// comparisons and the content hash are unaffected by timing.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: BTreeMap<String, u128>,
}

/// Full run report. `content_hash` covers everything except `timing`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
    pub content_hash: String,
    pub timing: Timing,
}

impl SuiteReport {
    pub fn new(
        seed: u64,
        config: BTreeMap<String, String>,
        records: Vec<VerificationRecord>,
        timing: Timing,
    ) -> Self {
        let summary = Summary::from_records(&records);
        let mut report = SuiteReport {
            schema: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            records,
            summary,
            content_hash: String::new(),
            timing,
        };
        report.content_hash = report.compute_content_hash();
        report
    }

    /// SHA-256 over the canonical serialization of the timing-free content.
    pub fn compute_content_hash(&self) -> String {
        #[derive(Serialize)]
        struct Hashable<'a> {
            schema: u32,
            tool_version: &'a str,
            seed: u64,
            config: &'a BTreeMap<String, String>,
            records: &'a [VerificationRecord],
            summary: &'a Summary,
        }
        let h = Hashable {
            schema: self.schema,
            tool_version: &self.tool_version,
            seed: self.seed,
            config: &self.config,
            records: &self.records,
            summary: &self.summary,
        };
        let bytes = serde_json::to_vec(&h).expect("report serializes");
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        hex_string(&hasher.finalize())
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// Flatten records (and their tables) to CSV lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,label,lhs,rhs,margin,pass\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},,{},{},{},{}\n",
                r.check_id, r.lhs, r.rhs, r.margin, r.pass
            ));
            for row in &r.table {
                out.push_str(&format!(
                    "{},{},{},{},{},\n",
                    r.check_id, row.label, row.lhs, row.rhs, row.margin
                ));
            }
        }
        out
    }
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_sign_drives_pass() {
        let ok = VerificationRecord::upper("t", "a <= b", 1.0, 2.0, 0.0);
        assert!(ok.pass && ok.margin == 1.0);
        let bad = VerificationRecord::upper("t", "a <= b", 3.0, 2.0, 1e-12);
        assert!(!bad.pass);
        let low = VerificationRecord::lower("t", "v >= b", 0.9, 0.5, 0.0);
        assert!(low.pass && (low.margin - 0.4).abs() < 1e-15);
    }

    #[test]
    fn content_hash_ignores_timing() {
        let records = vec![VerificationRecord::boolean("x", "ok", true)];
        let mut t1 = Timing::default();
        t1.wall_ms.insert("suite".into(), 5);
        let mut t2 = Timing::default();
        t2.wall_ms.insert("suite".into(), 99);
        let r1 = SuiteReport::new(1, BTreeMap::new(), records.clone(), t1);
        let r2 = SuiteReport::new(1, BTreeMap::new(), records, t2);
        assert_eq!(r1.content_hash, r2.content_hash);
        let r3 = SuiteReport::new(2, BTreeMap::new(), vec![], Timing::default());
        assert_ne!(r1.content_hash, r3.content_hash);
    }
}
