//! Deserialization of `{"kind": ..., ...}` objects.
//!
//! Serde's derived internally tagged enums buffer the whole object before
//! choosing a variant, which hides the location of errors inside it from
//! path-tracking deserializers. When `kind` is the first key this module
//! streams the remaining entries straight into the variant's payload, so
//! such errors keep their full path. Objects with `kind` elsewhere are
//! buffered and parsed the slow way.

use std::fmt;
use std::marker::PhantomData;

use serde::de::value::{MapAccessDeserializer, MapDeserializer};
use serde::de::{self, Deserialize, Deserializer, MapAccess, Visitor};

pub trait Tagged<'de>: Sized {
    const KINDS: &'static [&'static str];

    /// Builds the variant named `kind` (one of `KINDS`) from the entries
    /// left after the tag.
    fn variant<M: MapAccess<'de>>(kind: &str, rest: M) -> Result<Self, M::Error>;
}

/// Deserializes the remaining entries of a tagged object as `T`.
pub fn payload<'de, M: MapAccess<'de>, T: Deserialize<'de>>(rest: M) -> Result<T, M::Error> {
    T::deserialize(MapAccessDeserializer::new(rest))
}

/// Payload of variants without fields; rejects any extra key.
#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoFields {}

pub fn deserialize<'de, D: Deserializer<'de>, T: Tagged<'de>>(d: D) -> Result<T, D::Error> {
    d.deserialize_map(TaggedVisitor(PhantomData))
}

struct TaggedVisitor<T>(PhantomData<T>);

impl<'de, T: Tagged<'de>> TaggedVisitor<T> {
    fn check<E: de::Error>(kind: &str) -> Result<(), E> {
        if T::KINDS.contains(&kind) {
            Ok(())
        } else {
            Err(E::unknown_variant(kind, T::KINDS))
        }
    }
}

impl<'de, T: Tagged<'de>> Visitor<'de> for TaggedVisitor<T> {
    type Value = T;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an object with \"kind\" one of {:?}", T::KINDS)
    }

    fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> Result<T, M::Error> {
        let Some(first) = map.next_key::<String>()? else {
            return Err(de::Error::missing_field("kind"));
        };
        if first == "kind" {
            let kind: String = map.next_value()?;
            Self::check(&kind)?;
            return T::variant(&kind, map);
        }
        let mut entries = serde_json::Map::new();
        entries.insert(first, map.next_value()?);
        while let Some((k, v)) = map.next_entry::<String, serde_json::Value>()? {
            entries.insert(k, v);
        }
        let kind = match entries.remove("kind") {
            Some(serde_json::Value::String(s)) => s,
            Some(_) => return Err(de::Error::custom("\"kind\" must be a string")),
            None => return Err(de::Error::missing_field("kind")),
        };
        Self::check(&kind)?;
        let rest = MapDeserializer::<_, serde_json::Error>::new(entries.into_iter());
        T::variant(&kind, rest).map_err(de::Error::custom)
    }
}
