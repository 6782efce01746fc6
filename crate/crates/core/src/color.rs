//! Color labels, edge colorings and relabelings of the 1-packing classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PackingColor {
    #[serde(rename = "1a")]
    A1,
    #[serde(rename = "1b")]
    B1,
    #[serde(rename = "1c")]
    C1,
    #[serde(rename = "3a")]
    A3,
}

impl PackingColor {
    pub const ALL: [PackingColor; 4] = [PackingColor::A1, PackingColor::B1, PackingColor::C1, PackingColor::A3];
    pub const ONES: [PackingColor; 3] = [PackingColor::A1, PackingColor::B1, PackingColor::C1];

    /// Position in the default spec `(1,1,1,3)`.
    pub fn class_index(self) -> usize {
        self as usize
    }

    pub fn from_class_index(i: usize) -> Option<PackingColor> {
        Self::ALL.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            PackingColor::A1 => "1a",
            PackingColor::B1 => "1b",
            PackingColor::C1 => "1c",
            PackingColor::A3 => "3a",
        }
    }

    pub fn is_one(self) -> bool {
        self != PackingColor::A3
    }
}

impl fmt::Display for PackingColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown color label {0:?}")]
pub struct UnknownLabel(pub String);

impl FromStr for PackingColor {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1a" => Ok(PackingColor::A1),
            "1b" => Ok(PackingColor::B1),
            "1c" => Ok(PackingColor::C1),
            "3a" => Ok(PackingColor::A3),
            _ => Err(UnknownLabel(s.to_string())),
        }
    }
}

/// Edge to color; an edge without an entry is unassigned.
pub type EdgeColoring = BTreeMap<EdgeId, PackingColor>;

/// A bijection on `{1a, 1b, 1c}`; `3a` is always fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorPermutation {
    image: [PackingColor; 3],
}

impl ColorPermutation {
    pub fn identity() -> Self {
        ColorPermutation { image: PackingColor::ONES }
    }

    /// `image[i]` is where the i-th of `1a, 1b, 1c` goes. `None` unless a
    /// permutation of the three 1-colors.
    pub fn new(image: [PackingColor; 3]) -> Option<Self> {
        let mut sorted = image;
        sorted.sort();
        (sorted == PackingColor::ONES).then_some(ColorPermutation { image })
    }

    pub fn swap(a: PackingColor, b: PackingColor) -> Self {
        let image = PackingColor::ONES.map(|c| {
            if c == a {
                b
            } else if c == b {
                a
            } else {
                c
            }
        });
        ColorPermutation::new(image).expect("swap of 1-colors")
    }

    pub fn apply(&self, c: PackingColor) -> PackingColor {
        match c {
            PackingColor::A3 => PackingColor::A3,
            one => self.image[one.class_index()],
        }
    }

    pub fn all() -> Vec<ColorPermutation> {
        use PackingColor::*;
        [[A1, B1, C1], [A1, C1, B1], [B1, A1, C1], [B1, C1, A1], [C1, A1, B1], [C1, B1, A1]]
            .into_iter()
            .map(|image| ColorPermutation { image })
            .collect()
    }
}

pub fn apply_permutation(coloring: &EdgeColoring, perm: ColorPermutation) -> EdgeColoring {
    coloring.iter().map(|(&e, &c)| (e, perm.apply(c))).collect()
}

/// Number of edges per color, in label order.
pub fn class_sizes(coloring: &EdgeColoring) -> [usize; 4] {
    let mut out = [0; 4];
    for c in coloring.values() {
        out[c.class_index()] += 1;
    }
    out
}
