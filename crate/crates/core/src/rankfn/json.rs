//! JSON forms: `{"n": 3, "values": {"1": 1.0, "1,2": 1.58, ...}}`.
//!
//! Keys are sorted comma-separated 1-based indices; ∅ is omitted. Rank
//! functions must list every nonempty subset, functionals only their nonzero
//! coefficients (as rational strings).

use std::collections::BTreeMap;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GroundSet, LinearFunctional, RankFunction, Subset};
use crate::rational::{Rational, RationalText};

#[derive(Serialize, Deserialize)]
struct Wire<V> {
    n: usize,
    values: BTreeMap<String, V>,
}

/// Value types that have a JSON representation inside a rank function.
pub trait JsonValue: Clone + num_traits::Zero {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Result<Self, String>;
}

impl JsonValue for f64 {
    type Repr = f64;
    fn to_repr(&self) -> f64 {
        *self
    }
    fn from_repr(r: f64) -> Result<Self, String> {
        Ok(r)
    }
}

impl JsonValue for Rational {
    type Repr = RationalText;
    fn to_repr(&self) -> RationalText {
        RationalText(self.clone())
    }
    fn from_repr(r: RationalText) -> Result<Self, String> {
        Ok(r.0)
    }
}

impl<T: JsonValue> Serialize for RankFunction<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values = self
            .iter()
            .skip(1)
            .map(|(sub, v)| (sub.to_string(), v.to_repr()))
            .collect();
        Wire { n: self.n(), values }.serialize(s)
    }
}

impl<'de, T: JsonValue> Deserialize<'de> for RankFunction<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Wire::<T::Repr>::deserialize(d)?;
        let ground = GroundSet::new(wire.n).map_err(D::Error::custom)?;
        let mut values: Vec<Option<T>> = vec![None; ground.len()];
        values[0] = Some(T::zero());
        for (key, repr) in wire.values {
            let sub = Subset::parse_key(&key, wire.n).map_err(D::Error::custom)?;
            if sub.is_empty() {
                return Err(D::Error::custom("the empty set is implicit and must be omitted"));
            }
            if values[sub.mask()].is_some() {
                return Err(D::Error::custom(format!("duplicate subset key `{key}`")));
            }
            values[sub.mask()] = Some(T::from_repr(repr).map_err(D::Error::custom)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(m, v)| {
                v.ok_or_else(|| D::Error::custom(format!("missing value for subset {{{}}}", Subset(m as u32))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        RankFunction::from_values(wire.n, values).map_err(D::Error::custom)
    }
}

impl Serialize for LinearFunctional {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values = self
            .terms()
            .map(|(sub, c)| (sub.to_string(), RationalText(c.clone())))
            .collect();
        Wire { n: self.n(), values }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearFunctional {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Wire::<RationalText>::deserialize(d)?;
        let mut f = LinearFunctional::zero(wire.n).map_err(D::Error::custom)?;
        for (key, c) in wire.values {
            let sub = Subset::parse_key(&key, wire.n).map_err(D::Error::custom)?;
            if sub.is_empty() {
                return Err(D::Error::custom("coefficient on the empty set"));
            }
            f.add_term(sub, c.0).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}
