//! JSON interchange for every library type. All integers are arbitrary
//! precision: values that fit within ±2^53 are emitted as JSON numbers,
//! larger ones as decimal strings; both forms are accepted on input.
//! Objects serialize with sorted keys, so output is canonical.

use std::str::FromStr;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::abelian::{FgAbelianGroup, Int, IntMatrix};
use crate::error::{Result, TorificError};
use crate::fan::{FanAction, KatoFan};
use crate::graded::{CharacterMultiset, Grading};
use crate::hilbert::ConstrainedMonoidSpec;
use crate::ideal::{MonoidIdeal, ThresholdReport};
use crate::monoid::ToricMonoid;
use crate::torify::{
    build_model, ChartReport, ModelAction, QuotientReport, TorifyMode, TorifyReport,
};

pub const SCHEMA_VERSION: &str = "1";

fn bad(msg: impl Into<String>) -> TorificError {
    TorificError::InvalidInput(msg.into())
}

const SAFE_LIMIT: i64 = 1 << 53;

pub fn int_to_value(v: &Int) -> Value {
    match v.to_i64() {
        Some(n) if n.abs() <= SAFE_LIMIT => json!(n),
        _ => json!(v.to_string()),
    }
}

pub fn int_from_value(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(bad(format!("non-integer number {n}")))
            }
        }
        Value::String(s) => Int::from_str(s).map_err(|_| bad(format!("bad integer string {s:?}"))),
        other => Err(bad(format!("expected integer, got {other}"))),
    }
}

pub fn vec_to_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

pub fn vec_from_value(v: &Value) -> Result<Vec<Int>> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected array, got {v}")))?
        .iter()
        .map(int_from_value)
        .collect()
}

pub fn vecs_to_value(vs: &[Vec<Int>]) -> Value {
    Value::Array(vs.iter().map(|v| vec_to_value(v)).collect())
}

pub fn vecs_from_value(v: &Value) -> Result<Vec<Vec<Int>>> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected array of arrays, got {v}")))?
        .iter()
        .map(vec_from_value)
        .collect()
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    json!({ "rows": m.rows, "cols": m.cols, "entries": vecs_to_value(&m.rows_vec()) })
}

pub fn matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let cols = require_usize(v, "cols")?;
    let rows = require_usize(v, "rows")?;
    let entries = vecs_from_value(require(v, "entries")?)?;
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(bad("matrix entries do not match declared shape"));
    }
    Ok(IntMatrix::from_rows(&entries, cols))
}

fn require<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn require_usize(v: &Value, key: &str) -> Result<usize> {
    require(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("field {key:?} must be a non-negative integer")))
}

fn require_bool(v: &Value, key: &str) -> Result<bool> {
    require(v, key)?
        .as_bool()
        .ok_or_else(|| bad(format!("field {key:?} must be a boolean")))
}

pub fn monoid_to_value(m: &ToricMonoid) -> Value {
    json!({
        "ambient_rank": m.ambient_rank,
        "generators": vecs_to_value(&m.generators),
        "saturated": m.saturated,
    })
}

pub fn monoid_from_value(v: &Value) -> Result<ToricMonoid> {
    let ambient = require_usize(v, "ambient_rank")?;
    let gens = vecs_from_value(require(v, "generators")?)?;
    let mut m = ToricMonoid::from_generators(ambient, &gens)?;
    // The flag is recomputed rather than trusted, so hand-written input
    // does not need to know the saturation status in advance.
    m.saturated = match crate::monoid::saturate(&m) {
        Ok(s) => crate::monoid::monoids_equal(&m, &s)?,
        Err(_) => false,
    };
    Ok(m)
}

pub fn group_to_value(g: &FgAbelianGroup) -> Value {
    json!({ "free_rank": g.free_rank, "torsion": vec_to_value(&g.torsion) })
}

pub fn group_from_value(v: &Value) -> Result<FgAbelianGroup> {
    let free = require_usize(v, "free_rank")?;
    let torsion = vec_from_value(require(v, "torsion")?)?;
    FgAbelianGroup::new(free, torsion)
}

pub fn grading_to_value(g: &Grading) -> Value {
    json!({ "group": group_to_value(&g.target), "matrix": matrix_to_value(&g.map.matrix) })
}

/// Reads a grading relative to an already-parsed monoid.
pub fn grading_from_value(monoid: &ToricMonoid, v: &Value) -> Result<Grading> {
    let group = group_from_value(require(v, "group")?)?;
    let matrix = matrix_from_value(require(v, "matrix")?)?;
    Grading::new(monoid.clone(), group, matrix)
}

pub fn multiset_to_value(s: &CharacterMultiset) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|(e, m)| json!({ "element": vec_to_value(e), "mult": m }))
        .collect();
    json!({ "group": group_to_value(&s.target), "entries": entries })
}

pub fn multiset_from_value(v: &Value) -> Result<CharacterMultiset> {
    let group = group_from_value(require(v, "group")?)?;
    let mut elements = Vec::new();
    for e in require(v, "entries")?
        .as_array()
        .ok_or_else(|| bad("field \"entries\" must be an array"))?
    {
        let elt = vec_from_value(require(e, "element")?)?;
        let mult = require_usize(e, "mult")?;
        for _ in 0..mult {
            elements.push(elt.clone());
        }
    }
    Ok(CharacterMultiset::new(group, &elements))
}

pub fn ideal_to_value(i: &MonoidIdeal) -> Value {
    json!({ "generators": vecs_to_value(&i.gens) })
}

/// Reads an ideal relative to an already-parsed parent monoid.
pub fn ideal_from_value(parent: &ToricMonoid, v: &Value) -> Result<MonoidIdeal> {
    let gens = vecs_from_value(require(v, "generators")?)?;
    if gens.is_empty() {
        return Ok(MonoidIdeal { parent: parent.clone(), gens });
    }
    crate::ideal::ideal_from(parent, &gens)
}

pub fn spec_to_value(s: &ConstrainedMonoidSpec) -> Value {
    let congruences: Vec<Value> = s
        .congruences
        .iter()
        .map(|(row, m)| json!({ "row": vec_to_value(row), "modulus": int_to_value(m) }))
        .collect();
    json!({
        "ambient_rank": s.ambient_rank,
        "inequalities": vecs_to_value(&s.inequalities),
        "equations": vecs_to_value(&s.equations),
        "congruences": congruences,
    })
}

pub fn spec_from_value(v: &Value) -> Result<ConstrainedMonoidSpec> {
    let ambient_rank = require_usize(v, "ambient_rank")?;
    let inequalities = vecs_from_value(require(v, "inequalities")?)?;
    let equations = match v.get("equations") {
        Some(e) => vecs_from_value(e)?,
        None => Vec::new(),
    };
    let mut congruences = Vec::new();
    if let Some(cs) = v.get("congruences") {
        for c in cs.as_array().ok_or_else(|| bad("field \"congruences\" must be an array"))? {
            congruences
                .push((vec_from_value(require(c, "row")?)?, int_from_value(require(c, "modulus")?)?));
        }
    }
    let spec = ConstrainedMonoidSpec { ambient_rank, inequalities, equations, congruences };
    spec.validate()?;
    Ok(spec)
}

pub fn model_action_to_value(m: &ModelAction) -> Value {
    let base_cols = m.base.ambient_rank;
    let target = &m.total.target;
    let mut base_matrix = IntMatrix::zero(target.len(), base_cols);
    for r in 0..target.len() {
        for c in 0..base_cols {
            *base_matrix.get_mut(r, c) = m.total.map.matrix.get(r, c).clone();
        }
    }
    json!({
        "monoid": monoid_to_value(&m.base),
        "grading": json!({ "group": group_to_value(target), "matrix": matrix_to_value(&base_matrix) }),
        "sigma": multiset_to_value(&m.sigma),
    })
}

pub fn model_action_from_value(v: &Value) -> Result<ModelAction> {
    let base = monoid_from_value(require(v, "monoid")?)?;
    let grading_v = require(v, "grading")?;
    let target = group_from_value(require(grading_v, "group")?)?;
    let matrix = matrix_from_value(require(grading_v, "matrix")?)?;
    let sigma = multiset_from_value(require(v, "sigma")?)?;
    let mut elements = Vec::new();
    for (e, mult) in &sigma.entries {
        for _ in 0..*mult {
            elements.push(e.clone());
        }
    }
    build_model(&base, &target, &matrix, &elements)
}

pub fn fan_to_value(f: &KatoFan) -> Value {
    let cones: Vec<Value> = f.cones.iter().map(|c| json!(c)).collect();
    json!({ "rank": f.rank, "rays": vecs_to_value(&f.rays), "cones": cones })
}

pub fn fan_from_value(v: &Value) -> Result<KatoFan> {
    let rank = require_usize(v, "rank")?;
    let rays = vecs_from_value(require(v, "rays")?)?;
    let mut cone_rays: Vec<Vec<Vec<Int>>> = Vec::new();
    for c in require(v, "cones")?
        .as_array()
        .ok_or_else(|| bad("field \"cones\" must be an array"))?
    {
        let idx: Vec<usize> = c
            .as_array()
            .ok_or_else(|| bad("each cone must be an array of ray indices"))?
            .iter()
            .map(|i| {
                i.as_u64().map(|n| n as usize).ok_or_else(|| bad("ray index must be an integer"))
            })
            .collect::<Result<_>>()?;
        for &i in &idx {
            if i >= rays.len() {
                return Err(bad(format!("ray index {i} out of range")));
            }
        }
        cone_rays.push(idx.iter().map(|&i| rays[i].clone()).collect());
    }
    KatoFan::from_cones(rank, &cone_rays)
}

pub fn fan_action_to_value(a: &FanAction) -> Value {
    let gens: Vec<Value> = a.group_gens.iter().map(matrix_to_value).collect();
    json!({ "fan": fan_to_value(&a.fan), "generators": gens })
}

pub fn fan_action_from_value(v: &Value) -> Result<FanAction> {
    let fan = fan_from_value(require(v, "fan")?)?;
    let mut gens = Vec::new();
    for g in require(v, "generators")?
        .as_array()
        .ok_or_else(|| bad("field \"generators\" must be an array"))?
    {
        let m = matrix_from_value(g)?;
        if m.rows != fan.rank || m.cols != fan.rank {
            return Err(bad("group generator matrix must be square of the fan rank"));
        }
        gens.push(m);
    }
    Ok(FanAction::new(fan, gens))
}

pub fn mode_to_str(m: TorifyMode) -> &'static str {
    match m {
        TorifyMode::Balanced => "balanced",
        TorifyMode::Raw => "raw",
    }
}

pub fn mode_from_str(s: &str) -> Result<TorifyMode> {
    match s {
        "balanced" => Ok(TorifyMode::Balanced),
        "raw" => Ok(TorifyMode::Raw),
        other => Err(bad(format!("unknown mode {other:?}"))),
    }
}

fn chart_to_value(c: &ChartReport) -> Value {
    json!({
        "monoid": monoid_to_value(&c.monoid),
        "grading": grading_to_value(&c.grading),
        "exceptional": vecs_to_value(&c.exceptional),
        "removed": vecs_to_value(&c.removed),
        "toroidal": c.toroidal,
        "taut": c.taut,
        "loose": c.loose,
        "unit_degrees_reduced": c.unit_degrees_reduced,
        "merged_from": c.merged_from,
    })
}

pub fn torify_report_to_value(r: &TorifyReport) -> Value {
    json!({
        "mode": mode_to_str(r.mode),
        "characters": multiset_to_value(&r.characters),
        "ideal": ideal_to_value(&r.ideal),
        "vacuous": r.vacuous,
        "charts": r.charts.iter().map(chart_to_value).collect::<Vec<Value>>(),
        "toroidal": r.toroidal,
    })
}

pub fn quotient_report_to_value(q: &QuotientReport) -> Value {
    json!({
        "degree_zero": monoid_to_value(&q.degree_zero),
        "invariant_ideal": ideal_to_value(&q.invariant_ideal),
        "quotient_charts": q.quotient_charts.iter().map(monoid_to_value).collect::<Vec<Value>>(),
        "chart_identity": q.chart_identity,
    })
}

pub fn threshold_report_to_value(t: &ThresholdReport) -> Value {
    json!({
        "threshold": t.threshold,
        "window_verified": t.window,
        "cap": t.cap,
        "certified": true,
    })
}

/// Wraps a payload in the versioned document envelope.
pub fn document(kind: &str, payload: Value) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload })
}

/// Unwraps a document envelope, checking version and kind.
pub fn parse_document<'a>(v: &'a Value, expected_kind: &str) -> Result<&'a Value> {
    let version = require(v, "schema_version")?
        .as_str()
        .ok_or_else(|| bad("schema_version must be a string"))?;
    if version != SCHEMA_VERSION {
        return Err(bad(format!("unsupported schema_version {version:?}")));
    }
    let kind = require(v, "kind")?.as_str().ok_or_else(|| bad("kind must be a string"))?;
    if kind != expected_kind {
        return Err(bad(format!("expected kind {expected_kind:?}, got {kind:?}")));
    }
    require(v, "payload")
}

/// Extracts a named sub-object of a payload.
pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    require(v, key)
}

pub fn field_bool(v: &Value, key: &str) -> Result<bool> {
    require_bool(v, key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::saturate;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn int_round_trip() {
        for s in ["0", "-7", "9007199254740992", "123456789012345678901234567890"] {
            let v = Int::from_str(s).unwrap();
            assert_eq!(int_from_value(&int_to_value(&v)).unwrap(), v);
        }
        // Large values become strings, small ones numbers.
        assert!(int_to_value(&Int::from(5)).is_number());
        let huge = Int::from_str("123456789012345678901234567890").unwrap();
        assert!(int_to_value(&huge).is_string());
    }

    #[test]
    fn monoid_round_trip() {
        let m = saturate(
            &ToricMonoid::from_generators(2, &[iv(&[1, 0]), iv(&[1, 2])]).unwrap(),
        )
        .unwrap();
        let v = monoid_to_value(&m);
        let back = monoid_from_value(&v).unwrap();
        assert_eq!(back.generators, m.generators);
        assert!(back.saturated);
        // Canonical output is byte-stable.
        assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&v).unwrap());
    }

    #[test]
    fn document_envelope() {
        let doc = document("monoid", json!({"x": 1}));
        assert!(parse_document(&doc, "monoid").is_ok());
        assert!(parse_document(&doc, "fan").is_err());
    }

    #[test]
    fn multiset_round_trip() {
        let g = FgAbelianGroup::free(1);
        let s = CharacterMultiset::new(g, &[iv(&[1]), iv(&[1]), iv(&[-2])]);
        let back = multiset_from_value(&multiset_to_value(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn model_action_round_trip() {
        let base = saturate(&ToricMonoid::from_generators(0, &[]).unwrap()).unwrap();
        let m = build_model(
            &base,
            &FgAbelianGroup::free(1),
            &IntMatrix::zero(1, 0),
            &[iv(&[1]), iv(&[-1])],
        )
        .unwrap();
        let back = model_action_from_value(&model_action_to_value(&m)).unwrap();
        assert_eq!(back.total.monoid.generators, m.total.monoid.generators);
        assert_eq!(back.sigma, m.sigma);
    }

    #[test]
    fn fan_round_trip() {
        let f = KatoFan::from_cones(2, &[vec![iv(&[1, 0]), iv(&[0, 1])]]).unwrap();
        let back = fan_from_value(&fan_to_value(&f)).unwrap();
        assert!(crate::fan::fans_equal(&back, &f));
    }
}
