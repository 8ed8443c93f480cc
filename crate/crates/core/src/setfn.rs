//! Integer-valued functions on vertex sets.
//!
//! Two modes: a uniform constant (the everyday case, `l(A) = m` for every
//! nonempty `A`) and an explicit table over all subsets of a small ground
//! set. `l(empty) = 0` always. Scaling by a rational factor is handled at
//! the call sites that need it (the scaled value of an integer function
//! need not be an integer), so this type stays integer-valued.

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Ground sets larger than this cannot use table mode (2^n storage).
pub const TABLE_LIMIT: usize = 16;
/// Pair enumeration for the supermodularity check is 4^n.
pub const SUPERMODULAR_CHECK_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFunction {
    /// `l(A) = m` for every nonempty `A`.
    Uniform(i64),
    /// `values[mask]` for every subset of `0..n`; `values[0] = 0`.
    Table { n: usize, values: Vec<i64> },
}

/// Structural flags of a set function, all verified by enumeration in
/// table mode and decided directly in uniform mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub intersecting_supermodular: bool,
    pub nonincreasing: bool,
    pub nonnegative: bool,
}

impl SetFunction {
    pub fn uniform(m: i64) -> SetFunction {
        SetFunction::Uniform(m)
    }

    pub fn table(n: usize, values: Vec<i64>) -> Result<SetFunction> {
        if n == 0 || n > TABLE_LIMIT {
            return Err(Error::Capacity {
                operation: "SetFunction::table",
                n,
                limit: TABLE_LIMIT,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidInput(format!(
                "table for n = {n} needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        if values[0] != 0 {
            return Err(Error::InvalidInput("l(empty set) must be 0".into()));
        }
        Ok(SetFunction::Table { n, values })
    }

    /// Builds a table from a closure (the empty set is forced to 0).
    pub fn table_from_fn<F: FnMut(VertexSet) -> i64>(n: usize, mut f: F) -> Result<SetFunction> {
        if n == 0 || n > TABLE_LIMIT {
            return Err(Error::Capacity {
                operation: "SetFunction::table",
                n,
                limit: TABLE_LIMIT,
            });
        }
        let values = (0..1usize << n)
            .map(|mask| {
                if mask == 0 {
                    0
                } else {
                    f(VertexSet(mask as u64))
                }
            })
            .collect();
        SetFunction::table(n, values)
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, SetFunction::Uniform(_))
    }

    /// `l(A)`, with `l(empty) = 0` in both modes.
    pub fn value(&self, a: VertexSet) -> i64 {
        match self {
            SetFunction::Uniform(m) => {
                if a.is_empty() {
                    0
                } else {
                    *m
                }
            }
            SetFunction::Table { values, .. } => values[a.0 as usize],
        }
    }

    /// `l(v)` shorthand.
    pub fn vertex_value(&self, v: usize) -> i64 {
        self.value(VertexSet::singleton(v))
    }

    /// `k * l` for integer `k`.
    pub fn scaled(&self, k: i64) -> SetFunction {
        match self {
            SetFunction::Uniform(m) => SetFunction::Uniform(m * k),
            SetFunction::Table { n, values } => SetFunction::Table {
                n: *n,
                values: values.iter().map(|v| v * k).collect(),
            },
        }
    }

    /// Restriction to an induced subgraph: `keep[new] = old` (ascending).
    pub fn restricted(&self, keep: &[usize]) -> Result<SetFunction> {
        match self {
            SetFunction::Uniform(m) => Ok(SetFunction::Uniform(*m)),
            SetFunction::Table { n, values } => {
                let sub = keep.len();
                if sub > *n {
                    return Err(Error::InvalidInput(
                        "restriction cannot grow the ground set".into(),
                    ));
                }
                let table = (0..1usize << sub)
                    .map(|mask| {
                        let mut old_mask = 0usize;
                        for (new, &old) in keep.iter().enumerate() {
                            if mask >> new & 1 == 1 {
                                old_mask |= 1 << old;
                            }
                        }
                        values[old_mask]
                    })
                    .collect();
                SetFunction::table(sub, table)
            }
        }
    }

    fn check_enumeration(&self, operation: &'static str) -> Result<usize> {
        match self {
            SetFunction::Uniform(_) => Ok(0),
            SetFunction::Table { n, .. } => {
                if *n > SUPERMODULAR_CHECK_LIMIT {
                    Err(Error::Capacity {
                        operation,
                        n: *n,
                        limit: SUPERMODULAR_CHECK_LIMIT,
                    })
                } else {
                    Ok(*n)
                }
            }
        }
    }

    /// `l(A∩B) + l(A∪B) >= l(A) + l(B)` for all intersecting pairs.
    /// Uniform functions satisfy this with equality, no enumeration needed.
    pub fn is_intersecting_supermodular(&self) -> Result<bool> {
        let n = self.check_enumeration("is_intersecting_supermodular")?;
        if let SetFunction::Table { values, .. } = self {
            for a in 1usize..1 << n {
                for b in 1usize..1 << n {
                    if a & b == 0 {
                        continue;
                    }
                    if values[a & b] + values[a | b] < values[a] + values[b] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `l(A) >= l(B)` for all nonempty `A ⊆ B`.
    pub fn is_nonincreasing(&self) -> Result<bool> {
        let n = self.check_enumeration("is_nonincreasing")?;
        if let SetFunction::Table { values, .. } = self {
            for b in 1usize..1 << n {
                // enumerate proper nonempty subsets of b
                let mut a = (b - 1) & b;
                while a > 0 {
                    if values[a] < values[b] {
                        return Ok(false);
                    }
                    a = (a - 1) & b;
                }
            }
        }
        Ok(true)
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            SetFunction::Uniform(m) => *m >= 0,
            SetFunction::Table { values, .. } => values.iter().all(|&v| v >= 0),
        }
    }

    pub fn shape_report(&self) -> Result<ShapeReport> {
        Ok(ShapeReport {
            intersecting_supermodular: self.is_intersecting_supermodular()?,
            nonincreasing: self.is_nonincreasing()?,
            nonnegative: self.is_nonnegative(),
        })
    }

    /// Table serialization: one line `s <bitmask> <value>` per nonempty
    /// subset, ascending by mask. Uniform functions are not serialized.
    pub fn to_text(&self) -> Result<String> {
        match self {
            SetFunction::Uniform(_) => Err(Error::InvalidInput(
                "uniform set functions have no table serialization".into(),
            )),
            SetFunction::Table { n, values } => {
                let mut out = String::new();
                for mask in 1usize..1 << n {
                    out.push_str(&format!("s {} {}\n", mask, values[mask]));
                }
                Ok(out)
            }
        }
    }

    /// Parses the `s <bitmask> <value>` format; the ground set size is the
    /// bit width of the largest mask and the table must be complete.
    pub fn from_text(text: &str) -> Result<SetFunction> {
        let mut entries: Vec<(usize, i64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("s") {
                return Err(Error::Parse(format!(
                    "line {}: expected `s <mask> <value>`",
                    lineno + 1
                )));
            }
            let mask: usize = tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing mask", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let value: i64 = tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing value", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            entries.push((mask, value));
        }
        let max_mask = entries
            .iter()
            .map(|&(m, _)| m)
            .max()
            .ok_or_else(|| Error::Parse("empty set-function table".into()))?;
        let n = usize::BITS as usize - max_mask.leading_zeros() as usize;
        if n > TABLE_LIMIT {
            return Err(Error::Capacity {
                operation: "SetFunction::from_text",
                n,
                limit: TABLE_LIMIT,
            });
        }
        let mut values = vec![None; 1 << n];
        values[0] = Some(0);
        for (mask, value) in entries {
            if mask == 0 {
                if value != 0 {
                    return Err(Error::Parse("l(empty set) must be 0".into()));
                }
                continue;
            }
            if values[mask].replace(value).is_some() {
                return Err(Error::Parse(format!("duplicate mask {mask}")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(mask, v)| v.ok_or_else(|| Error::Parse(format!("missing mask {mask}"))))
            .collect::<Result<Vec<i64>>>()?;
        SetFunction::table(n, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_is_supermodular_without_enumeration() {
        let l = SetFunction::uniform(3);
        assert!(l.is_intersecting_supermodular().unwrap());
        assert!(l.is_nonincreasing().unwrap());
        assert!(l.is_nonnegative());
        assert_eq!(l.value(VertexSet::EMPTY), 0);
        assert_eq!(l.value(VertexSet::from_iter([0, 2])), 3);
    }

    #[test]
    fn squared_cardinality_is_intersecting_supermodular() {
        let l = SetFunction::table_from_fn(3, |a| (a.len() * a.len()) as i64).unwrap();
        assert!(l.is_intersecting_supermodular().unwrap());
        assert!(!l.is_nonincreasing().unwrap());
    }

    #[test]
    fn negated_cardinality_flags() {
        let l = SetFunction::table_from_fn(3, |a| -(a.len() as i64)).unwrap();
        assert!(l.is_nonincreasing().unwrap());
        assert!(!l.is_nonnegative());
    }

    #[test]
    fn restriction_maps_masks() {
        let l = SetFunction::table_from_fn(4, |a| a.0 as i64).unwrap();
        // keep old vertices 1 and 3 as new 0 and 1
        let r = l.restricted(&[1, 3]).unwrap();
        assert_eq!(r.value(VertexSet::singleton(0)), 0b0010);
        assert_eq!(r.value(VertexSet::singleton(1)), 0b1000);
        assert_eq!(r.value(VertexSet::from_iter([0, 1])), 0b1010);
    }

    #[test]
    fn table_text_round_trip() {
        let l = SetFunction::table_from_fn(3, |a| 2 * a.len() as i64 - 1).unwrap();
        let text = l.to_text().unwrap();
        let back = SetFunction::from_text(&text).unwrap();
        assert_eq!(back, l);
        assert!(SetFunction::from_text("s 2 5\n").is_err(), "incomplete table");
    }

    #[test]
    fn scaling_multiplies_values() {
        let l = SetFunction::table_from_fn(2, |a| a.len() as i64).unwrap();
        let l3 = l.scaled(3);
        assert_eq!(l3.value(VertexSet::from_iter([0, 1])), 6);
        assert_eq!(SetFunction::uniform(2).scaled(3), SetFunction::uniform(6));
    }
}
