//! The six witness fixtures, embedded and optionally overridden from a
//! directory holding `case1.json` … `case6.json`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use freepoint_core::search::WitnessCase;

use crate::json::TowerDto;
use crate::Failure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFixture {
    pub case: usize,
    pub n: usize,
    pub q: u64,
    pub d: usize,
    pub tower: TowerDto,
    /// `(a^{e_0} : … : a^{e_n})`, `a` the root of the top modulus.
    pub point_exponents: Vec<u64>,
}

impl WitnessFixture {
    pub fn to_case(&self) -> WitnessCase {
        WitnessCase {
            n: self.n,
            q: self.q,
            d: self.d,
            p: self.tower.p,
            levels: self.tower.specs(),
            exponents: self.point_exponents.clone(),
        }
    }
}

pub const CASE_COUNT: usize = 6;

const EMBEDDED: [&str; CASE_COUNT] = [
    include_str!("../fixtures/case1.json"),
    include_str!("../fixtures/case2.json"),
    include_str!("../fixtures/case3.json"),
    include_str!("../fixtures/case4.json"),
    include_str!("../fixtures/case5.json"),
    include_str!("../fixtures/case6.json"),
];

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Fixture `case` (1-based) with the SHA-256 of its file bytes.
pub fn load(dir: Option<&Path>, case: usize) -> Result<(WitnessFixture, String), Failure> {
    if case == 0 || case > CASE_COUNT {
        return Err(Failure::input(format!("case must be in 1..={CASE_COUNT}")));
    }
    let text = match dir {
        Some(d) => std::fs::read_to_string(d.join(format!("case{case}.json")))?,
        None => EMBEDDED[case - 1].to_string(),
    };
    let fixture: WitnessFixture = serde_json::from_str(&text)?;
    if fixture.point_exponents.len() != fixture.n + 1 {
        return Err(Failure::input(format!("case{case}: point needs {} coordinates", fixture.n + 1)));
    }
    Ok((fixture, sha256_hex(text.as_bytes())))
}
