//! Stable JSON form of a [`PairRecord`]; field order is the key order.

use serde::{Deserialize, Serialize};

use super::{PairError, PairRecord, PrimePower, Split, Status, TableCell, WaterhouseCase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideJson {
    pub status: Status,
    pub case: String,
    /// Canonical j-invariant labels, when curves were enumerated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub js: Option<Vec<String>>,
    /// Number of isomorphism classes, when curves were enumerated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub q1: u64,
    pub q2: u64,
    pub p1: u64,
    pub a1: u32,
    pub p2: u64,
    pub a2: u32,
    pub t1: i128,
    pub t2: i128,
    pub delta: i128,
    pub conductor: u64,
    pub fundamental_discriminant: i128,
    pub e1: SideJson,
    pub e2: SideJson,
    pub table_cell: String,
    pub splits: [Split; 2],
}

impl From<&PairRecord> for PairJson {
    fn from(r: &PairRecord) -> PairJson {
        let side = |status: Status, case: WaterhouseCase| SideJson {
            status,
            case: case.as_str().to_string(),
            js: None,
            count: None,
        };
        PairJson {
            q1: r.q1.q,
            q2: r.q2.q,
            p1: r.q1.p,
            a1: r.q1.a,
            p2: r.q2.p,
            a2: r.q2.a,
            t1: r.t1,
            t2: r.t2,
            delta: r.delta,
            conductor: r.conductor_f,
            fundamental_discriminant: r.fundamental_d,
            e1: side(r.e1_status, r.e1_case),
            e2: side(r.e2_status, r.e2_case),
            table_cell: r.table_cell.to_string(),
            splits: [r.split1, r.split2],
        }
    }
}

impl TryFrom<&PairJson> for PairRecord {
    type Error = PairError;

    fn try_from(j: &PairJson) -> Result<PairRecord, PairError> {
        let case = |s: &str| WaterhouseCase::parse(s).ok_or_else(|| PairError::Malformed(format!("case {s:?}")));
        Ok(PairRecord {
            q1: PrimePower { q: j.q1, p: j.p1, a: j.a1 },
            q2: PrimePower { q: j.q2, p: j.p2, a: j.a2 },
            t1: j.t1,
            t2: j.t2,
            delta: j.delta,
            conductor_f: j.conductor,
            fundamental_d: j.fundamental_discriminant,
            e1_case: case(&j.e1.case)?,
            e2_case: case(&j.e2.case)?,
            e1_status: j.e1.status,
            e2_status: j.e2.status,
            table_cell: j.table_cell.parse::<TableCell>()?,
            split1: j.splits[0],
            split2: j.splits[1],
        })
    }
}

impl PairRecord {
    pub fn to_json(&self) -> PairJson {
        PairJson::from(self)
    }
}
