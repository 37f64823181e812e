//! Two-level internal states and their edge-color encoding.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Internal state of a particle at a detector. Drawn blue (`Up`) or red (`Down`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// ASCII code used in machine formats.
    pub fn code(self) -> char {
        match self {
            Spin::Up => 'u',
            Spin::Down => 'd',
        }
    }

    pub fn arrow(self) -> char {
        match self {
            Spin::Up => '↑',
            Spin::Down => '↓',
        }
    }

    /// Graphviz color name.
    pub fn dot_color(self) -> &'static str {
        match self {
            Spin::Up => "blue",
            Spin::Down => "red",
        }
    }

    pub fn from_code(c: char) -> Option<Spin> {
        match c {
            'u' | 'U' | '↑' => Some(Spin::Up),
            'd' | 'D' | '↓' => Some(Spin::Down),
            _ => None,
        }
    }

    /// Bit value used when indexing amplitude tensors (`Down` = 1).
    pub(crate) fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arrow())
    }
}

/// Per-detector color assignment `c_1..c_N` used by the designers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorVector(pub Vec<Spin>);

impl ColorVector {
    pub fn uniform(n: usize, spin: Spin) -> Self {
        ColorVector(vec![spin; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flipped(&self) -> Self {
        ColorVector(self.0.iter().map(|s| s.flipped()).collect())
    }

    /// Parses a string such as `"udud"` (arrows are accepted as well).
    pub fn parse(text: &str) -> Option<Self> {
        text.chars().map(Spin::from_code).collect::<Option<Vec<_>>>().map(ColorVector)
    }
}

impl std::ops::Index<usize> for ColorVector {
    type Output = Spin;
    fn index(&self, i: usize) -> &Spin {
        &self.0[i]
    }
}
