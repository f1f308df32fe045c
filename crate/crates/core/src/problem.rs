//! Colouring problems and edge colourings of a host.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::edgeset::EdgeSet;
use crate::pattern::TargetPattern;
use crate::shape::{EdgeId, PartitionShape};

/// Colours are stored as bytes.
pub const MAX_COLORS: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("a colouring problem needs at least one target")]
    NoTargets,
    #[error("{0} targets exceed the supported {MAX_COLORS} colours")]
    TooManyColors(usize),
    #[error("colouring has {got} entries but the host has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("edge {edge} has colour {color}, but only {colors} colours exist")]
    BadColor {
        edge: EdgeId,
        color: usize,
        colors: usize,
    },
}

/// Host plus one target per colour. Colour `i` must avoid `targets[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringProblem {
    shape: PartitionShape,
    targets: Vec<TargetPattern>,
}

impl ColoringProblem {
    pub fn new(shape: PartitionShape, targets: Vec<TargetPattern>) -> Result<Self, ProblemError> {
        if targets.is_empty() {
            return Err(ProblemError::NoTargets);
        }
        if targets.len() > MAX_COLORS {
            return Err(ProblemError::TooManyColors(targets.len()));
        }
        Ok(ColoringProblem { shape, targets })
    }

    pub fn shape(&self) -> &PartitionShape {
        &self.shape
    }

    pub fn targets(&self) -> &[TargetPattern] {
        &self.targets
    }

    pub fn colors(&self) -> usize {
        self.targets.len()
    }
}

/// Total assignment of a colour to every host edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn from_colors(colors: Vec<u8>) -> Self {
        EdgeColoring { colors }
    }

    /// Every edge in `color`.
    pub fn uniform(edge_count: usize, color: u8) -> Self {
        EdgeColoring {
            colors: vec![color; edge_count],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.colors[e] as usize
    }

    pub fn set_color(&mut self, e: EdgeId, c: u8) {
        self.colors[e] = c;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    /// Edges carrying colour `c`.
    pub fn class(&self, c: usize) -> EdgeSet {
        EdgeSet::from_ids(
            self.colors.len(),
            self.colors
                .iter()
                .enumerate()
                .filter(|(_, &x)| x as usize == c)
                .map(|(e, _)| e),
        )
    }

    pub fn classes(&self, colors: usize) -> Vec<EdgeSet> {
        (0..colors).map(|c| self.class(c)).collect()
    }

    /// Checks that the colouring covers exactly the host edges of `problem`
    /// and only uses its colours.
    pub fn check_against(&self, problem: &ColoringProblem) -> Result<(), ProblemError> {
        let expected = problem.shape().edge_count();
        if self.colors.len() != expected {
            return Err(ProblemError::WrongLength {
                expected,
                got: self.colors.len(),
            });
        }
        let r = problem.colors();
        match self.colors.iter().position(|&c| c as usize >= r) {
            Some(edge) => Err(ProblemError::BadColor {
                edge,
                color: self.colors[edge] as usize,
                colors: r,
            }),
            None => Ok(()),
        }
    }
}
