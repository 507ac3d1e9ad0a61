//! Reproduction of the computer-assisted classification results.
//!
//! Every check compares a freshly computed artifact with a stored expected
//! artifact (`data/expected/<id>.json`) and reports the differences.

mod enumeration;
mod floor_systems;
mod gaps;
mod lemmas;

use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use enumeration::{a1_raw, verify_a1, verify_thm31, A1Entry};
pub use floor_systems::{
    a3_system, a4_system, a5_system, verify_a2, verify_a3, verify_a4, verify_a5, verify_a6,
    verify_d213,
};
pub use gaps::{gap_isolated_5d, gap_threefold, GAP3D_DEFAULT_R_MAX, GAP5D_DEFAULT_R_MAX};
pub use lemmas::{verify_lemma61, verify_lemma62};

/// Every verification id, in suite order.
pub const IDS: [&str; 12] = [
    "a1", "thm31", "a2", "a3", "a4", "a5", "a6", "d213", "lemma61", "lemma62", "gap3d", "gap5d",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    /// The main claim fails.
    Failed,
    /// The main claim holds but a supporting check differs.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    pub discrepancies: Vec<String>,
    pub runtime_ms: u64,
}

impl TheoremReport {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Collects the failures of one verification run.
#[derive(Default)]
pub(crate) struct Checks {
    main: Vec<String>,
    support: Vec<String>,
}

impl Checks {
    /// Records a failure of the main claim unless `ok`.
    pub fn main(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.main.push(msg());
        }
    }

    /// Records a failure of a supporting check unless `ok`.
    pub fn support(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.support.push(msg());
        }
    }

    pub fn report(self, id: &str, expected: Value, actual: Value, start: Instant) -> TheoremReport {
        let status = if !self.main.is_empty() {
            Status::Failed
        } else if !self.support.is_empty() {
            Status::Partial
        } else {
            Status::Verified
        };
        let mut discrepancies = self.main;
        discrepancies.extend(self.support);
        TheoremReport {
            id: id.to_string(),
            status,
            expected,
            actual,
            discrepancies,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Parses a stored expected artifact, returning both the typed form and the
/// raw JSON for the report.
pub(crate) fn load_expected<T: DeserializeOwned>(src: &str) -> (T, Value) {
    let raw: Value = serde_json::from_str(src).expect("stored expected artifact is valid JSON");
    let typed = serde_json::from_value(raw.clone())
        .expect("stored expected artifact has the documented shape");
    (typed, raw)
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report artifacts serialise")
}

/// Runs one check by id, using the default sweep bounds.
pub fn run(id: &str) -> Result<TheoremReport> {
    Ok(match id {
        "a1" => verify_a1(),
        "thm31" => verify_thm31(),
        "a2" => verify_a2(),
        "a3" => verify_a3(),
        "a4" => verify_a4(),
        "a5" => verify_a5(),
        "a6" => verify_a6(),
        "d213" => verify_d213(),
        "lemma61" => verify_lemma61(),
        "lemma62" => verify_lemma62(),
        "gap3d" => gap_threefold(GAP3D_DEFAULT_R_MAX)?,
        "gap5d" => gap_isolated_5d(GAP5D_DEFAULT_R_MAX)?,
        _ => return Err(Error::Parse(format!("unknown verification id `{id}`"))),
    })
}

/// Expands `all` and rejects unknown ids, keeping the requested order and
/// dropping repeats.
pub fn resolve_ids<S: AsRef<str>>(ids: &[S]) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for id in ids {
        let id = id.as_ref();
        let expanded: Vec<&'static str> = if id == "all" {
            IDS.to_vec()
        } else {
            match IDS.iter().find(|k| **k == id) {
                Some(k) => vec![*k],
                None => return Err(Error::Parse(format!("unknown verification id `{id}`"))),
            }
        };
        for k in expanded {
            if !out.contains(&k) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_resolution() {
        assert_eq!(resolve_ids(&["a6", "a2", "a6"]).unwrap(), vec!["a6", "a2"]);
        assert_eq!(resolve_ids(&["all"]).unwrap().len(), IDS.len());
        assert!(resolve_ids(&["bogus"]).is_err());
        assert!(run("bogus").is_err());
    }

    #[test]
    fn status_follows_discrepancies() {
        let start = Instant::now();
        let mut c = Checks::default();
        c.main(true, || unreachable!());
        assert_eq!(
            c.report("x", Value::Null, Value::Null, start).status,
            Status::Verified
        );
        let mut c = Checks::default();
        c.support(false, || "minor".into());
        let r = c.report("x", Value::Null, Value::Null, start);
        assert_eq!((r.status, r.discrepancies.len()), (Status::Partial, 1));
        let mut c = Checks::default();
        c.support(false, || "minor".into());
        c.main(false, || "major".into());
        let r = c.report("x", Value::Null, Value::Null, start);
        assert_eq!(r.status, Status::Failed);
        assert_eq!(
            r.discrepancies,
            vec!["major".to_string(), "minor".to_string()]
        );
    }
}
