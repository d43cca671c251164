use serde::Serialize;
use serde_json::Value;

/// One predicted-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub predicted: Value,
    pub oracle: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    /// `pass` is set from value equality, never supplied by the caller.
    pub fn compare(
        check: impl Into<String>,
        predicted: impl Serialize,
        oracle: impl Serialize,
        witness: Option<String>,
    ) -> Self {
        let predicted = serde_json::to_value(predicted).expect("serializable prediction");
        let oracle = serde_json::to_value(oracle).expect("serializable oracle");
        CheckRecord {
            check: check.into(),
            pass: predicted == oracle,
            predicted,
            oracle,
            witness,
        }
    }

    /// A check that could not be evaluated; always a failure.
    pub fn error(check: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CheckRecord {
            check: check.into(),
            predicted: Value::Null,
            oracle: Value::String(format!("error: {message}")),
            pass: false,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Plain-text rendering, one line per record.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {}: predicted {} oracle {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.predicted,
                r.oracle
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!(" [{w}]"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_equality() {
        assert!(CheckRecord::compare("x", 3, 3, None).pass);
        assert!(!CheckRecord::compare("x", 3, 4, None).pass);
        assert!(!CheckRecord::compare("x", vec![1, 2], vec![2, 1], None).pass);
        assert!(!CheckRecord::error("x", "boom").pass);
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::new();
        r.push(CheckRecord::compare("k", 2, 2, Some("w".into())));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"check": "k", "predicted": 2, "oracle": 2, "pass": true, "witness": "w"}])
        );
        assert!(r.render_text().starts_with("PASS k"));
    }
}
