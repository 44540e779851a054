//! JSON encoding of the core types.
//!
//! Output keeps a fixed field order and writes every integer as a decimal
//! string, so values beyond 2^53 survive consumers that read numbers as
//! doubles. Input accepts either strings or plain JSON integers.
//!
//! ```text
//! point          ["x", "y"]
//! ideal/module   {"generators": [point, ...]}
//! factorization  {"anchor": point, "factors": [["r", "s", "b"], ...]}
//! stream         {"anchor": point, "right": rule, "left": rule}
//! rule           {"list": [["r", "s", "b"], ...]}
//!              | {"family": "triangular", "start": "k"}
//!              | {"family": "powers", "slope": ["r", "s"], "exponent": "b"}
//! ```

use serde_json::{json, Map, Value};
use staircase_core::{
    FactorStream, Factorization, LatticePoint, MonomialIdeal, MonomialModule, Rect, SideRule,
    Slope, StabilizationReport, Violation, Window,
};

use crate::error::{Error, Result};

pub trait Json: Sized {
    fn to_value(&self) -> Value;
    /// Decodes `value`, reporting schema errors relative to `pointer`.
    fn from_value(value: &Value, pointer: &str) -> Result<Self>;
}

/// Compact encoding.
pub fn to_json<T: Json>(value: &T) -> String {
    value.to_value().to_string()
}

pub fn from_json<T: Json>(text: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text)?;
    T::from_value(&value, "")
}

fn schema(pointer: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        message: message.into(),
    }
}

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    format!("{pointer}/{key}")
}

fn object<'a>(value: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| schema(pointer, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, pointer: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(pointer, format!("missing field \"{key}\"")))
}

fn array<'a>(value: &'a Value, pointer: &str) -> Result<&'a [Value]> {
    value
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| schema(pointer, "expected an array"))
}

fn tuple<'a, const N: usize>(value: &'a Value, pointer: &str) -> Result<&'a [Value; N]> {
    array(value, pointer)?
        .try_into()
        .map_err(|_| schema(pointer, format!("expected an array of {N} integers")))
}

fn int<T: std::str::FromStr + TryFrom<i64> + TryFrom<u64>>(
    value: &Value,
    pointer: &str,
) -> Result<T> {
    let parsed = match value {
        Value::String(s) => s.parse::<T>().ok(),
        Value::Number(n) => n
            .as_i64()
            .and_then(|v| T::try_from(v).ok())
            .or_else(|| n.as_u64().and_then(|v| T::try_from(v).ok())),
        _ => None,
    };
    parsed.ok_or_else(|| schema(pointer, "expected an integer in range"))
}

fn text(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

fn slope_at(r: &Value, s: &Value, pointer: &str) -> Result<Slope> {
    let (r, s): (i64, i64) = (int(r, pointer)?, int(s, pointer)?);
    Slope::reduced(r, s).ok_or_else(|| {
        schema(
            pointer,
            format!("{r}/{s} is not a positive fraction in lowest terms"),
        )
    })
}

fn factor_list(factors: impl Iterator<Item = (Slope, u64)>) -> Value {
    Value::Array(
        factors
            .map(|(s, b)| json!([text(s.numerator()), text(s.denominator()), text(b)]))
            .collect(),
    )
}

fn parse_factor_list(value: &Value, pointer: &str) -> Result<Vec<(Slope, u64)>> {
    array(value, pointer)?
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let at = child(pointer, i);
            let [r, s, b] = tuple::<3>(item, &at)?;
            Ok((slope_at(r, s, &at)?, int(b, &child(&at, 2))?))
        })
        .collect()
}

impl Json for LatticePoint {
    fn to_value(&self) -> Value {
        json!([text(self.x), text(self.y)])
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let [x, y] = tuple::<2>(value, pointer)?;
        Ok(LatticePoint::new(
            int(x, &child(pointer, 0))?,
            int(y, &child(pointer, 1))?,
        ))
    }
}

fn generators_value(points: &[LatticePoint]) -> Value {
    json!({ "generators": points.iter().map(Json::to_value).collect::<Vec<_>>() })
}

fn parse_generators(value: &Value, pointer: &str) -> Result<Vec<LatticePoint>> {
    let obj = object(value, pointer)?;
    let at = child(pointer, "generators");
    array(field(obj, "generators", pointer)?, &at)?
        .iter()
        .enumerate()
        .map(|(i, p)| LatticePoint::from_value(p, &child(&at, i)))
        .collect()
}

impl Json for MonomialIdeal {
    fn to_value(&self) -> Value {
        generators_value(self.generators())
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        Ok(MonomialIdeal::minimize(&parse_generators(value, pointer)?)?)
    }
}

impl Json for MonomialModule {
    fn to_value(&self) -> Value {
        generators_value(self.generators())
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        Ok(MonomialModule::from_generators(&parse_generators(
            value, pointer,
        )?)?)
    }
}

impl Json for Factorization {
    fn to_value(&self) -> Value {
        json!({ "anchor": self.anchor.to_value(), "factors": factor_list(self.factors()) })
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let obj = object(value, pointer)?;
        let anchor =
            LatticePoint::from_value(field(obj, "anchor", pointer)?, &child(pointer, "anchor"))?;
        let factors =
            parse_factor_list(field(obj, "factors", pointer)?, &child(pointer, "factors"))?;
        Ok(Factorization::from_factors(anchor, factors)?)
    }
}

impl Json for SideRule {
    fn to_value(&self) -> Value {
        match self {
            SideRule::List(v) => json!({ "list": factor_list(v.iter().copied()) }),
            SideRule::Triangular { start } => {
                json!({ "family": "triangular", "start": text(start) })
            }
            SideRule::Powers { slope, exponent } => json!({
                "family": "powers",
                "slope": [text(slope.numerator()), text(slope.denominator())],
                "exponent": text(exponent),
            }),
        }
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let obj = object(value, pointer)?;
        if let Some(list) = obj.get("list") {
            return Ok(SideRule::List(parse_factor_list(
                list,
                &child(pointer, "list"),
            )?));
        }
        let family = field(obj, "family", pointer)?;
        match family.as_str() {
            Some("triangular") => {
                let start = match obj.get("start") {
                    Some(v) => int(v, &child(pointer, "start"))?,
                    None => 1,
                };
                Ok(SideRule::Triangular { start })
            }
            Some("powers") => {
                let at = child(pointer, "slope");
                let [r, s] = tuple::<2>(field(obj, "slope", pointer)?, &at)?;
                let exponent = int(
                    field(obj, "exponent", pointer)?,
                    &child(pointer, "exponent"),
                )?;
                Ok(SideRule::Powers {
                    slope: slope_at(r, s, &at)?,
                    exponent,
                })
            }
            // a face of slope 1 repeated forever: the boundary never turns
            Some("antidiagonal") => Err(staircase_core::Error::NonAdmissibleModule(
                Violation::UnboundedSkewFace {
                    slope: Slope::reduced(1, 1).expect("1/1 is reduced"),
                },
            )
            .into()),
            _ => Err(schema(
                &child(pointer, "family"),
                "expected \"triangular\" or \"powers\"",
            )),
        }
    }
}

impl Json for FactorStream {
    fn to_value(&self) -> Value {
        json!({
            "anchor": self.anchor().to_value(),
            "right": self.right().to_value(),
            "left": self.left().to_value(),
        })
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let obj = object(value, pointer)?;
        let anchor = match obj.get("anchor") {
            Some(v) => LatticePoint::from_value(v, &child(pointer, "anchor"))?,
            None => LatticePoint::ORIGIN,
        };
        let side = |key: &str| -> Result<SideRule> {
            match obj.get(key) {
                Some(v) => SideRule::from_value(v, &child(pointer, key)),
                None => Ok(SideRule::empty()),
            }
        };
        Ok(FactorStream::new(anchor, side("left")?, side("right")?)?)
    }
}

impl Json for Rect {
    fn to_value(&self) -> Value {
        json!({
            "x_min": text(self.x_min),
            "x_max": text(self.x_max),
            "y_min": text(self.y_min),
            "y_max": text(self.y_max),
        })
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let obj = object(value, pointer)?;
        let get =
            |key: &str| -> Result<i64> { int(field(obj, key, pointer)?, &child(pointer, key)) };
        Ok(Rect::new(
            get("x_min")?,
            get("x_max")?,
            get("y_min")?,
            get("y_max")?,
        )?)
    }
}

/// Rows from top (`y_max`) to bottom, `#` for members and `.` otherwise.
fn window_rows(window: &Window) -> Vec<Value> {
    let r = window.rect();
    (r.y_min..=r.y_max)
        .rev()
        .map(|y| {
            let row: String = (r.x_min..=r.x_max)
                .map(|x| match window.get(LatticePoint::new(x, y)) {
                    Some(true) => '#',
                    _ => '.',
                })
                .collect();
            Value::String(row)
        })
        .collect()
}

fn parse_window(value: &Value, rect: Rect, pointer: &str) -> Result<Window> {
    let rows = array(value, pointer)?;
    if rows.len() as u64 != rect.height() {
        return Err(schema(pointer, format!("expected {} rows", rect.height())));
    }
    let rows: Vec<&[u8]> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let at = child(pointer, i);
            let s = row
                .as_str()
                .ok_or_else(|| schema(&at, "expected a string"))?;
            if s.len() as u64 != rect.width() || !s.bytes().all(|b| b == b'#' || b == b'.') {
                return Err(schema(
                    &at,
                    format!("expected {} of '#' or '.'", rect.width()),
                ));
            }
            Ok(s.as_bytes())
        })
        .collect::<Result<_>>()?;
    Ok(Window::try_from_fn(rect, |p| {
        let row = (rect.y_max - p.y) as usize;
        let col = (p.x - rect.x_min) as usize;
        Ok(rows[row][col] == b'#')
    })?)
}

impl Json for StabilizationReport {
    fn to_value(&self) -> Value {
        json!({
            "rect": self.rect.to_value(),
            "n_start": text(self.n_start),
            "n_end": text(self.n_end),
            "stabilized_at": self.stabilized_at.map_or(Value::Null, text),
            "window": window_rows(&self.window),
        })
    }

    fn from_value(value: &Value, pointer: &str) -> Result<Self> {
        let obj = object(value, pointer)?;
        let rect = Rect::from_value(field(obj, "rect", pointer)?, &child(pointer, "rect"))?;
        let stabilized_at = match field(obj, "stabilized_at", pointer)? {
            Value::Null => None,
            v => Some(int(v, &child(pointer, "stabilized_at"))?),
        };
        Ok(StabilizationReport {
            rect,
            n_start: int(field(obj, "n_start", pointer)?, &child(pointer, "n_start"))?,
            n_end: int(field(obj, "n_end", pointer)?, &child(pointer, "n_end"))?,
            stabilized_at,
            window: parse_window(
                field(obj, "window", pointer)?,
                rect,
                &child(pointer, "window"),
            )?,
        })
    }
}
