//! Character selectors: `2` (irreducible row), `galois-average:1`, or an
//! explicit value vector in class order such as `[2,0,-1]` or
//! `["1/2", {"conductor":3,"coeffs":["0","1"]}, 0]`.

use artin_core::cyclotomic::parse_rational;
use artin_core::{CharacterTable, ClassFunction, CycloNumber, Error, Result};
use serde_json::Value;

pub fn select(table: &CharacterTable, selector: &str) -> Result<ClassFunction> {
    let s = selector.trim();
    let row = |text: &str| -> Result<&ClassFunction> {
        let i: usize = text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad irreducible index {text:?}")))?;
        if i >= table.len() {
            return Err(Error::InvalidInput(format!(
                "irreducible {i} does not exist; the table has {} rows",
                table.len()
            )));
        }
        Ok(table.irreducible(i))
    };
    if let Some(rest) = s.strip_prefix("galois-average:") {
        return Ok(row(rest)?.galois_average());
    }
    if let Some(rest) = s.strip_prefix("galois-sum:") {
        return Ok(row(rest)?.galois_orbit_sum());
    }
    if s.starts_with('[') {
        let v: Vec<Value> = serde_json::from_str(s).map_err(|e| Error::Parse(format!("value vector: {e}")))?;
        let values = v.iter().map(value).collect::<Result<Vec<_>>>()?;
        return ClassFunction::new(table.group(), values);
    }
    if s.contains(',') {
        let values = s
            .split(',')
            .map(|t| parse_rational(t).map(CycloNumber::from_rational))
            .collect::<Result<Vec<_>>>()?;
        return ClassFunction::new(table.group(), values);
    }
    row(s).cloned()
}

fn value(v: &Value) -> Result<CycloNumber> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("{n} is not an integer; write fractions as \"p/q\"")))?;
            Ok(CycloNumber::from_integer(i))
        }
        Value::String(s) => parse_rational(s).map(CycloNumber::from_rational),
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("cyclotomic value: {e}"))),
        other => Err(Error::Parse(format!("unsupported value {other}"))),
    }
}
