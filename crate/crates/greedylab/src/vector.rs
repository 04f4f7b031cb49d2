//! Finitely supported coefficient vectors and their coordinate addressing.
//!
//! Coordinates are either flat positive indices (`Coord::flat`) or
//! `(block, offset)` pairs for block-layout spaces whose absolute indices are
//! too large to store. A single vector never mixes the two flavors.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A basis coordinate. `block == 0` denotes a flat index `offset`;
/// `block >= 1` addresses `offset` inside that block.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    block: u32,
    offset: u64,
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Coord {
    pub fn flat(index: u64) -> Self {
        debug_assert!(index >= 1, "flat indices are 1-based");
        Coord { block: 0, offset: index }
    }

    pub fn in_block(block: u32, offset: u64) -> Self {
        debug_assert!(block >= 1 && offset >= 1, "block coordinates are 1-based");
        Coord { block, offset }
    }

    pub fn is_flat(&self) -> bool {
        self.block == 0
    }

    /// Flat index, if this is a flat coordinate.
    pub fn flat_index(&self) -> Option<u64> {
        self.is_flat().then_some(self.offset)
    }

    pub fn block(&self) -> u32 {
        self.block
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_flat() {
            write!(f, "{}", self.offset)
        } else {
            write!(f, "({},{})", self.block, self.offset)
        }
    }
}

// Flat coordinates serialize as bare integers, block coordinates as
// two-element arrays, so index sets come out as sorted JSON arrays.
impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_flat() {
            serializer.serialize_u64(self.offset)
        } else {
            (self.block, self.offset).serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoordVisitor;
        impl<'de> Visitor<'de> for CoordVisitor {
            type Value = Coord;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or a [block, offset] pair")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coord, E> {
                if v == 0 {
                    return Err(E::custom("indices are 1-based"));
                }
                Ok(Coord::flat(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coord, E> {
                if v <= 0 {
                    return Err(E::custom("indices are 1-based"));
                }
                Ok(Coord::flat(v as u64))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Coord, A::Error> {
                let block: u32 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::custom("missing block"))?;
                let offset: u64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::custom("missing offset"))?;
                if block == 0 || offset == 0 {
                    return Err(de::Error::custom("block coordinates are 1-based"));
                }
                Ok(Coord::in_block(block, offset))
            }
        }
        deserializer.deserialize_any(CoordVisitor)
    }
}

/// A finitely supported coefficient sequence. Stored zeros are canonicalized
/// away; `ambient_dim` is the truncation horizon used when an operation needs
/// the surrounding index universe (flat vectors only).
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteVector {
    entries: BTreeMap<Coord, f64>,
    ambient_dim: u64,
}

impl FiniteVector {
    /// The zero vector with the given truncation horizon.
    pub fn zero(ambient_dim: u64) -> Self {
        FiniteVector { entries: BTreeMap::new(), ambient_dim: ambient_dim.max(1) }
    }

    /// Build from `(coordinate, value)` pairs. Zeros are dropped, duplicate
    /// coordinates are rejected, flat indices must stay within `ambient_dim`,
    /// and flavors must not mix.
    pub fn from_entries<I>(entries: I, ambient_dim: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (Coord, f64)>,
    {
        let mut map = BTreeMap::new();
        let mut saw_flat = false;
        let mut saw_block = false;
        for (coord, value) in entries {
            if !value.is_finite() {
                return Err(Error::InvalidParam(format!(
                    "non-finite value {value} at coordinate {coord}"
                )));
            }
            if coord.offset == 0 {
                return Err(Error::InvalidParam(format!("coordinate {coord} is 0-based")));
            }
            if coord.is_flat() {
                saw_flat = true;
                if coord.offset > ambient_dim {
                    return Err(Error::IndexOutsideLayout {
                        coord,
                        detail: format!("flat index exceeds ambient dimension {ambient_dim}"),
                    });
                }
            } else {
                saw_block = true;
            }
            if value != 0.0 && map.insert(coord, value).is_some() {
                return Err(Error::InvalidParam(format!("duplicate coordinate {coord}")));
            }
        }
        if saw_flat && saw_block {
            return Err(Error::MixedCoordinates);
        }
        Ok(FiniteVector { entries: map, ambient_dim: ambient_dim.max(1) })
    }

    /// Convenience constructor from flat `(index, value)` pairs.
    pub fn flat(pairs: &[(u64, f64)], ambient_dim: u64) -> Result<Self> {
        Self::from_entries(pairs.iter().map(|&(i, v)| (Coord::flat(i), v)), ambient_dim)
    }

    /// The unit vector `e_i` in a flat space.
    pub fn unit(index: u64, ambient_dim: u64) -> Self {
        Self::flat(&[(index, 1.0)], ambient_dim.max(index)).expect("unit vector is valid")
    }

    /// The unit vector at an arbitrary coordinate.
    pub fn unit_at(coord: Coord, ambient_dim: u64) -> Self {
        let dim = if coord.is_flat() { ambient_dim.max(coord.offset()) } else { ambient_dim };
        Self::from_entries([(coord, 1.0)], dim).expect("unit vector is valid")
    }

    /// Coordinate read `e_c*(x)`; absent coordinates are 0.
    pub fn coeff(&self, coord: Coord) -> f64 {
        self.entries.get(&coord).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> &BTreeMap<Coord, f64> {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = Coord> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ambient_dim(&self) -> u64 {
        self.ambient_dim
    }

    pub fn is_block_indexed(&self) -> bool {
        self.entries.keys().next().map(|c| !c.is_flat()).unwrap_or(false)
    }

    /// Largest coefficient magnitude (0 for the zero vector).
    pub fn max_abs_coeff(&self) -> f64 {
        self.entries.values().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Largest flat index in the support (flat vectors; 0 when empty).
    pub fn max_flat_index(&self) -> u64 {
        self.entries
            .keys()
            .filter_map(Coord::flat_index)
            .max()
            .unwrap_or(0)
    }

    /// The enumeration universe behind "outside" coordinates: all flat
    /// indices up to the ambient dimension. Block-indexed vectors fall back
    /// to their own support, since block layouts may be astronomically wide.
    pub fn universe(&self) -> Vec<Coord> {
        if self.is_block_indexed() {
            self.support().collect()
        } else {
            (1..=self.ambient_dim).map(Coord::flat).collect()
        }
    }

    fn merge(&self, other: &Self, sign: f64) -> Result<Self> {
        let ambient = self.ambient_dim.max(other.ambient_dim);
        let mut map = self.entries.clone();
        for (&c, &v) in &other.entries {
            let slot = map.entry(c).or_insert(0.0);
            *slot += sign * v;
            if *slot == 0.0 {
                map.remove(&c);
            }
        }
        let vec = FiniteVector { entries: map, ambient_dim: ambient };
        if vec.entries.keys().any(|c| c.is_flat()) && vec.entries.keys().any(|c| !c.is_flat()) {
            return Err(Error::MixedCoordinates);
        }
        Ok(vec)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.merge(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.merge(other, -1.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return FiniteVector::zero(self.ambient_dim);
        }
        FiniteVector {
            entries: self.entries.iter().map(|(&c, &v)| (c, factor * v)).collect(),
            ambient_dim: self.ambient_dim,
        }
    }

    /// Returns a copy with a single coordinate replaced (zeros are dropped).
    pub fn with_coeff(&self, coord: Coord, value: f64) -> Self {
        let mut entries = self.entries.clone();
        if value == 0.0 {
            entries.remove(&coord);
        } else {
            entries.insert(coord, value);
        }
        let ambient = match coord.flat_index() {
            Some(i) => self.ambient_dim.max(i),
            None => self.ambient_dim,
        };
        FiniteVector { entries, ambient_dim: ambient }
    }

    pub fn with_ambient(&self, ambient_dim: u64) -> Result<Self> {
        Self::from_entries(self.entries.iter().map(|(&c, &v)| (c, v)), ambient_dim)
    }
}

/// JSON schema for vectors: `{"entries": [[index, value], ...]}` with an
/// optional `"ambient_dim"`; block-addressed entries use
/// `[[block, offset, value], ...]` rows instead.
#[derive(Serialize, Deserialize)]
struct VectorDoc {
    entries: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ambient_dim: Option<u64>,
}

impl FiniteVector {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: VectorDoc = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for row in &doc.entries {
            let arr = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("vector entry {row} is not an array")))?;
            match arr.len() {
                2 => {
                    let index = arr[0]
                        .as_u64()
                        .ok_or_else(|| Error::Parse(format!("bad index in {row}")))?;
                    let value = arr[1]
                        .as_f64()
                        .ok_or_else(|| Error::Parse(format!("bad value in {row}")))?;
                    entries.push((Coord::flat(index), value));
                }
                3 => {
                    let block = arr[0]
                        .as_u64()
                        .ok_or_else(|| Error::Parse(format!("bad block in {row}")))?;
                    let offset = arr[1]
                        .as_u64()
                        .ok_or_else(|| Error::Parse(format!("bad offset in {row}")))?;
                    let value = arr[2]
                        .as_f64()
                        .ok_or_else(|| Error::Parse(format!("bad value in {row}")))?;
                    if block == 0 || block > u32::MAX as u64 {
                        return Err(Error::Parse(format!("block out of range in {row}")));
                    }
                    entries.push((Coord::in_block(block as u32, offset), value));
                }
                n => {
                    return Err(Error::Parse(format!("vector entry has {n} fields, expected 2 or 3")))
                }
            }
        }
        let ambient = doc.ambient_dim.unwrap_or_else(|| {
            entries
                .iter()
                .filter_map(|(c, _)| c.flat_index())
                .max()
                .unwrap_or(1)
        });
        Self::from_entries(entries, ambient)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(c, v)| {
                if c.is_flat() {
                    serde_json::json!([c.offset(), v])
                } else {
                    serde_json::json!([c.block(), c.offset(), v])
                }
            })
            .collect();
        serde_json::json!({ "entries": rows, "ambient_dim": self.ambient_dim })
    }

    /// CSV rows `index,value`, one per line; a non-numeric first row is
    /// treated as a header and skipped.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let index = parts.next().unwrap_or("").trim();
            let value = parts.next().unwrap_or("").trim();
            match (index.parse::<u64>(), value.parse::<f64>()) {
                (Ok(i), Ok(v)) => entries.push((Coord::flat(i), v)),
                _ if lineno == 0 => continue, // header row
                _ => {
                    return Err(Error::Parse(format!("bad CSV row {}: {line}", lineno + 1)));
                }
            }
        }
        let ambient = entries
            .iter()
            .filter_map(|(c, _)| c.flat_index())
            .max()
            .unwrap_or(1);
        Self::from_entries(entries, ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_canonicalized_away() {
        let v = FiniteVector::flat(&[(1, 0.0), (3, 2.0)], 5).unwrap();
        assert_eq!(v.support_size(), 1);
        assert_eq!(v.coeff(Coord::flat(3)), 2.0);
        assert_eq!(v.coeff(Coord::flat(1)), 0.0);
    }

    #[test]
    fn index_beyond_ambient_is_rejected() {
        let err = FiniteVector::flat(&[(9, 1.0)], 5).unwrap_err();
        assert!(matches!(err, Error::IndexOutsideLayout { .. }));
    }

    #[test]
    fn mixed_flavors_are_rejected() {
        let err = FiniteVector::from_entries(
            [(Coord::flat(1), 1.0), (Coord::in_block(1, 2), 1.0)],
            4,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MixedCoordinates));
    }

    #[test]
    fn subtraction_cancels_exactly() {
        let v = FiniteVector::flat(&[(1, 1.5), (2, -2.0)], 4).unwrap();
        let d = v.sub(&v).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn json_round_trip_flat_and_block() {
        let v = FiniteVector::flat(&[(2, 0.5), (7, -1.0)], 9).unwrap();
        let text = v.to_json_value().to_string();
        let back = FiniteVector::from_json_str(&text).unwrap();
        assert_eq!(v, back);

        let w = FiniteVector::from_entries(
            [(Coord::in_block(1, 3), 2.0), (Coord::in_block(2, 1), -1.0)],
            2,
        )
        .unwrap();
        let text = w.to_json_value().to_string();
        let back = FiniteVector::from_json_str(&text).unwrap();
        assert_eq!(w, back);
    }

    #[test]
    fn csv_round_trip_with_header() {
        let v = FiniteVector::from_csv_str("index,value\n1,0.25\n4,-3\n").unwrap();
        assert_eq!(v.coeff(Coord::flat(1)), 0.25);
        assert_eq!(v.coeff(Coord::flat(4)), -3.0);
        assert_eq!(v.ambient_dim(), 4);
    }

    #[test]
    fn coord_order_is_block_major_then_offset() {
        let mut coords = vec![
            Coord::in_block(2, 1),
            Coord::flat(5),
            Coord::flat(2),
            Coord::in_block(1, 9),
        ];
        coords.sort();
        assert_eq!(
            coords,
            vec![
                Coord::flat(2),
                Coord::flat(5),
                Coord::in_block(1, 9),
                Coord::in_block(2, 1)
            ]
        );
    }
}
