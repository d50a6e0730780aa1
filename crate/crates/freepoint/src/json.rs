//! JSON encodings. Rationals are `{"num": "..", "den": ".."}` decimal
//! strings, integers that may exceed 2^53 are strings, and no payload
//! contains a float.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use freepoint_core::bounds::{Check, PowerSum, Slack, Status};
use freepoint_core::linsys::{GeneratingPoint, LinearSystem, SystemKind};
use freepoint_core::search::{SearchConfig, Strategy};
use freepoint_core::tower::LevelSpec;
use freepoint_core::{FieldTower, Form, ParamSet};

use crate::Failure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDto {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalDto {
    fn from(r: &BigRational) -> Self {
        RationalDto { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl RationalDto {
    pub fn to_rational(&self) -> Result<BigRational, Failure> {
        let num: BigInt = self.num.parse().map_err(|_| Failure::input("bad rational numerator"))?;
        let den: BigInt = self.den.parse().map_err(|_| Failure::input("bad rational denominator"))?;
        if den == BigInt::from(0) {
            return Err(Failure::input("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

pub fn rational(r: &BigRational) -> Value {
    serde_json::to_value(RationalDto::from(r)).expect("plain struct")
}

/// `{"p": 3, "levels": [{"degree": 10, "modulus": [..]}]}`, constant term
/// first. Coefficients over a non-prime level are element indices of that
/// level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDto {
    pub p: u64,
    pub levels: Vec<LevelDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDto {
    pub degree: usize,
    pub modulus: Vec<u64>,
}

impl TowerDto {
    pub fn from_specs(p: u64, specs: &[LevelSpec]) -> Self {
        let levels = specs
            .iter()
            .map(|s| LevelDto { degree: s.degree, modulus: s.modulus.iter().map(|&c| c as u64).collect() })
            .collect();
        TowerDto { p, levels }
    }

    pub fn from_tower(t: &FieldTower) -> Self {
        Self::from_specs(t.characteristic(), &t.specs())
    }

    pub fn specs(&self) -> Vec<LevelSpec> {
        self.levels
            .iter()
            .map(|l| LevelSpec { degree: l.degree, modulus: l.modulus.iter().map(|&c| c as u128).collect() })
            .collect()
    }

    /// Validates primality, shapes and irreducibility of every modulus.
    pub fn build(&self) -> Result<FieldTower, Failure> {
        Ok(FieldTower::new(self.p, &self.specs())?)
    }
}

pub fn form(f: &Form<u32>) -> Value {
    json!({ "n": f.n, "d": f.d, "coeffs": f.coeffs })
}

pub fn power_sum(s: &PowerSum) -> Value {
    let terms: Vec<Value> = s.terms().map(|(e, c)| json!({ "exp4": e, "coeff": rational(c) })).collect();
    json!({ "q": s.q(), "terms": terms })
}

pub fn slack(s: &Slack) -> Value {
    match s {
        Slack::Integer(x) => json!({ "integer": x.to_string() }),
        Slack::Rational(r) => json!({ "rational": rational(r) }),
        Slack::Sum(p) => json!({ "power_sum": power_sum(p) }),
        Slack::None => Value::Null,
    }
}

pub fn status(s: &Status) -> Value {
    match s {
        Status::Pass => json!("pass"),
        Status::Fail => json!("fail"),
        Status::Skipped(why) => json!({ "skipped": why }),
    }
}

pub fn check(c: &Check) -> Value {
    json!({
        "name": c.name,
        "index": c.index,
        "strict": c.strict,
        "status": status(&c.status),
        "slack": slack(&c.slack),
    })
}

/// Map with stringified `u128` keys and values.
pub fn histogram<K: ToString>(h: &BTreeMap<K, u128>) -> Value {
    let m: serde_json::Map<String, Value> = h.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
    Value::Object(m)
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Exhaustive => "exhaustive",
        Strategy::Sweep => "sweep",
        Strategy::Random => "random",
    }
}

pub fn parse_strategy(s: &str) -> Result<Strategy, Failure> {
    match s {
        "exhaustive" => Ok(Strategy::Exhaustive),
        "sweep" => Ok(Strategy::Sweep),
        "random" => Ok(Strategy::Random),
        _ => Err(Failure::input(format!("unknown strategy {s:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDto {
    pub tower: TowerDto,
    pub r: usize,
    pub coords: Vec<u32>,
    pub strategy: String,
    pub seed: u64,
    pub budget: String,
    pub max_exponent: u64,
    pub candidate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDto {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    pub kind: String,
    pub basis: Vec<Vec<u32>>,
    pub generator: Option<GeneratorDto>,
}

fn kind_name(k: SystemKind) -> &'static str {
    match k {
        SystemKind::Reducible => "red",
        SystemKind::Irreducible => "irr",
        SystemKind::Other => "other",
    }
}

fn parse_u128(s: &str, what: &str) -> Result<u128, Failure> {
    s.parse().map_err(|_| Failure::input(format!("bad {what} {s:?}")))
}

impl SystemDto {
    pub fn from_system(s: &LinearSystem) -> Self {
        let generator = s.generator.as_ref().map(|g| GeneratorDto {
            tower: TowerDto::from_specs(g.p, &g.specs),
            r: g.r,
            coords: g.coords.clone(),
            strategy: strategy_name(g.config.strategy).into(),
            seed: g.config.seed,
            budget: g.config.budget.to_string(),
            max_exponent: g.config.max_exponent,
            candidate: g.candidate.to_string(),
        });
        SystemDto {
            n: s.params.n,
            d: s.params.d,
            q: s.params.q as u64,
            kind: kind_name(s.kind).into(),
            basis: s.basis.iter().map(|f| f.coeffs.clone()).collect(),
            generator,
        }
    }

    pub fn to_system(&self) -> Result<LinearSystem, Failure> {
        let params = ParamSet::new(self.n, self.d, self.q as u128)?;
        let kind = match self.kind.as_str() {
            "red" => SystemKind::Reducible,
            "irr" => SystemKind::Irreducible,
            "other" => SystemKind::Other,
            k => return Err(Failure::input(format!("unknown system kind {k:?}"))),
        };
        let basis = self.basis.iter().map(|c| Form { n: self.n, d: self.d, coeffs: c.clone() }).collect();
        let mut system = LinearSystem::new(params, kind, basis)?;
        if let Some(g) = &self.generator {
            system.generator = Some(GeneratingPoint {
                specs: g.tower.specs(),
                p: g.tower.p,
                r: g.r,
                coords: g.coords.clone(),
                config: SearchConfig {
                    strategy: parse_strategy(&g.strategy)?,
                    seed: g.seed,
                    budget: parse_u128(&g.budget, "budget")?,
                    max_exponent: g.max_exponent,
                },
                candidate: parse_u128(&g.candidate, "candidate")?,
            });
        }
        Ok(system)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use freepoint_core::linsys::{build_l_irr, build_l_red, coordinate_hyperplane};

    #[test]
    fn rational_round_trip() {
        let r = BigRational::new(BigInt::from(-85), BigInt::from(6561));
        let dto = RationalDto::from(&r);
        assert_eq!(dto, RationalDto { num: "-85".into(), den: "6561".into() });
        assert_eq!(dto.to_rational().unwrap(), r);
        assert!(RationalDto { num: "1".into(), den: "0".into() }.to_rational().is_err());
    }

    #[test]
    fn tower_round_trip() {
        let dto: TowerDto = serde_json::from_str(r#"{"p":3,"levels":[{"degree":2,"modulus":[1,0,1]}]}"#).unwrap();
        let t = dto.build().unwrap();
        assert_eq!(t.order(1), 9);
        assert_eq!(TowerDto::from_tower(&t), dto);
        let bad: TowerDto = serde_json::from_str(r#"{"p":3,"levels":[{"degree":2,"modulus":[2,0,1]}]}"#).unwrap();
        assert_eq!(bad.build().unwrap_err().code, crate::exit::USAGE);
    }

    #[test]
    fn system_round_trip() {
        let p = ParamSet::new(2, 2, 3).unwrap();
        for s in [build_l_red(p, &coordinate_hyperplane(2)).unwrap(), build_l_irr(p, SearchConfig::default()).unwrap().0] {
            let dto = SystemDto::from_system(&s);
            let text = serde_json::to_string(&dto).unwrap();
            let back: SystemDto = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_system().unwrap(), s);
        }
    }
}
