//! Named pass/fail results with basis witnesses.

use std::fmt;

use serde::Serialize;

use crate::linalg::{LinMap, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The first basis entry (row = codomain index, col = domain index) where two maps differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 4)?;
        st.serialize_field("row", &self.row)?;
        st.serialize_field("col", &self.col)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.end()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): {} vs {}",
            self.row, self.col, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass(id: &str) -> Verdict {
        Verdict {
            id: id.to_string(),
            status: Status::Pass,
            witness: None,
            note: None,
        }
    }

    pub fn fail(id: &str, witness: Option<Witness>) -> Verdict {
        Verdict {
            id: id.to_string(),
            status: Status::Fail,
            witness,
            note: None,
        }
    }

    pub fn skipped(id: &str, reason: &str) -> Verdict {
        Verdict {
            id: id.to_string(),
            status: Status::Skipped,
            witness: None,
            note: Some(reason.to_string()),
        }
    }

    pub fn from_bool(id: &str, ok: bool) -> Verdict {
        if ok {
            Verdict::pass(id)
        } else {
            Verdict::fail(id, None)
        }
    }

    /// Pass iff the maps are entrywise equal; otherwise the first differing entry.
    pub fn equal(id: &str, lhs: &LinMap, rhs: &LinMap) -> Verdict {
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            return Verdict::fail(id, None).with_note(&format!(
                "shape {}x{} vs {}x{}",
                lhs.rows(),
                lhs.cols(),
                rhs.rows(),
                rhs.cols()
            ));
        }
        match lhs.first_difference(rhs) {
            None => Verdict::pass(id),
            Some((row, col, l, r)) => Verdict::fail(
                id,
                Some(Witness {
                    row,
                    col,
                    lhs: l,
                    rhs: r,
                }),
            ),
        }
    }

    pub fn with_note(mut self, note: &str) -> Verdict {
        self.note = Some(note.to_string());
        self
    }

    pub fn with_id(mut self, id: &str) -> Verdict {
        self.id = id.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        write!(f, "{:<8} {}", s, self.id)?;
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// An ordered list of verdicts with unique ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    entries: Vec<Verdict>,
}

impl VerdictReport {
    pub fn new() -> VerdictReport {
        VerdictReport::default()
    }

    /// Appends a verdict. Panics on a duplicate id, which is a programming error.
    pub fn push(&mut self, v: Verdict) {
        assert!(self.get(&v.id).is_none(), "duplicate verdict id {}", v.id);
        self.entries.push(v);
    }

    /// Appends every entry of `other`, prefixing ids with `prefix.` when nonempty.
    pub fn extend(&mut self, prefix: &str, other: VerdictReport) {
        for mut v in other.entries {
            if !prefix.is_empty() {
                v.id = format!("{prefix}.{}", v.id);
            }
            self.push(v);
        }
    }

    pub fn entries(&self) -> &[Verdict] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&Verdict> {
        self.entries.iter().find(|v| v.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.get(id).map(|v| v.status)
    }

    /// No entry failed (skipped entries are allowed).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|v| v.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.entries.iter().filter(|v| v.failed())
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.failures().next()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A report marking each id as skipped with the given reason.
    pub fn skip_all(ids: &[&str], reason: &str) -> VerdictReport {
        let mut r = VerdictReport::new();
        for id in ids {
            r.push(Verdict::skipped(id, reason));
        }
        r
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.entries {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
