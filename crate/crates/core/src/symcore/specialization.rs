use std::collections::BTreeMap;

use num_rational::BigRational;

use super::CoeffSymbol;
use crate::error::{Error, Result};

/// Assignment of exact rational values to coefficient symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    values: BTreeMap<CoeffSymbol, BigRational>,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an assignment over `universe`, calling `value` once per symbol.
    pub fn over<I, F>(universe: I, mut value: F) -> Self
    where
        I: IntoIterator<Item = CoeffSymbol>,
        F: FnMut(CoeffSymbol) -> BigRational,
    {
        Self {
            values: universe.into_iter().map(|s| (s, value(s))).collect(),
        }
    }

    pub fn insert(&mut self, sym: CoeffSymbol, value: BigRational) {
        self.values.insert(sym, value);
    }

    pub fn get(&self, sym: &CoeffSymbol) -> Option<&BigRational> {
        self.values.get(sym)
    }

    pub fn value(&self, sym: &CoeffSymbol) -> Result<&BigRational> {
        self.values.get(sym).ok_or(Error::UnassignedSymbol(*sym))
    }

    /// Errors with the first symbol of `universe` that has no value.
    pub fn check_covers<'a, I>(&self, universe: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a CoeffSymbol>,
    {
        for s in universe {
            if !self.values.contains_key(s) {
                return Err(Error::UnassignedSymbol(*s));
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoeffSymbol, &BigRational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every assigned value is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }

    /// JSON object mapping canonical symbol strings to rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.values
                .iter()
                .map(|(s, v)| (s.to_string(), serde_json::Value::String(v.to_string())))
                .collect(),
        )
    }

    /// Parses the JSON form. Keys outside `universe` are rejected when a
    /// universe is given.
    pub fn from_json(v: &serde_json::Value, universe: Option<&[CoeffSymbol]>) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("specialization must be a JSON object".into()))?;
        let mut out = Specialization::new();
        for (k, val) in obj {
            let sym: CoeffSymbol = k.parse()?;
            if let Some(u) = universe {
                if !u.contains(&sym) {
                    return Err(Error::Parse(format!("unknown symbol {k}")));
                }
            }
            let text = match val {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(Error::Parse(format!("value of {k} must be a rational string"))),
            };
            let r: BigRational = text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {text:?} for {k}")))?;
            out.insert(sym, r);
        }
        Ok(out)
    }
}

impl FromIterator<(CoeffSymbol, BigRational)> for Specialization {
    fn from_iter<I: IntoIterator<Item = (CoeffSymbol, BigRational)>>(it: I) -> Self {
        Self { values: it.into_iter().collect() }
    }
}
