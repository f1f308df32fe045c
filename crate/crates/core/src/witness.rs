//! Explicit lower-bound colourings, emitted as ordinary certificates.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::formulas::{ceil_div, floor_div};
use crate::pattern::TargetPattern;
use crate::problem::{ColoringProblem, EdgeColoring};
use crate::shape::{PartitionShape, ShapeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{kind} requires {guard}")]
    Guard {
        kind: &'static str,
        guard: &'static str,
    },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// Three colours on `K_{j×floor(2n/j)}`: red empty, blue the star at
    /// vertex 0, green everything else. Avoids `(K_{1,2}, P_4, nK_2)`.
    NullStarRest { j: u64, n: u64 },
    /// Two colours on `K_{3×(n-1)}`: red between parts 0 and 1, blue the
    /// edges at part 2. Avoids `(nK_2, C_7)`.
    BipartiteSplit3 { n: u64 },
    /// Two colours on `K_{j×t0}`, `t0 = ceil((2n+2)/j) - 1`: red among parts
    /// `1..j`, blue the edges at part 0. Avoids `(nK_2, C_7)`.
    PartVsRest { j: u64, n: u64 },
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::NullStarRest { .. } => "null-star-rest",
            WitnessKind::BipartiteSplit3 { .. } => "bipartite-split3",
            WitnessKind::PartVsRest { .. } => "part-vs-rest",
        }
    }

    /// Parses a kind name; `j` is ignored by `bipartite-split3`.
    pub fn from_name(name: &str, j: u64, n: u64) -> Option<Self> {
        match name {
            "null-star-rest" => Some(WitnessKind::NullStarRest { j, n }),
            "bipartite-split3" => Some(WitnessKind::BipartiteSplit3 { n }),
            "part-vs-rest" => Some(WitnessKind::PartVsRest { j, n }),
            _ => None,
        }
    }

    /// `(parts, class size)` of the host the construction lives on.
    pub fn host(self) -> Result<(u64, u64), WitnessError> {
        let fail = |guard| WitnessError::Guard {
            kind: self.name(),
            guard,
        };
        match self {
            WitnessKind::NullStarRest { j, n } => {
                if j < 2 {
                    return Err(fail("j >= 2"));
                }
                if n < 2 {
                    return Err(fail("n >= 2"));
                }
                Ok((j, floor_div(2 * n, j)))
            }
            WitnessKind::BipartiteSplit3 { n } => {
                if n < 3 {
                    return Err(fail("n >= 3"));
                }
                Ok((3, n - 1))
            }
            WitnessKind::PartVsRest { j, n } => {
                if j < 3 {
                    return Err(fail("j >= 3"));
                }
                if n < j {
                    return Err(fail("n >= j"));
                }
                Ok((j, ceil_div(2 * n + 2, j) - 1))
            }
        }
    }

    pub fn build(self) -> Result<Certificate, WitnessError> {
        match self {
            WitnessKind::NullStarRest { j, n } => witness_null_star_rest(j, n),
            WitnessKind::BipartiteSplit3 { n } => witness_bipartite_split3(n),
            WitnessKind::PartVsRest { j, n } => witness_part_vs_rest(j, n),
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WitnessKind::NullStarRest { j, n } | WitnessKind::PartVsRest { j, n } => {
                write!(f, "{}(j={j},n={n})", self.name())
            }
            WitnessKind::BipartiteSplit3 { n } => write!(f, "{}(n={n})", self.name()),
        }
    }
}

fn shape_for(kind: WitnessKind) -> Result<PartitionShape, WitnessError> {
    let (parts, size) = kind.host()?;
    let too_big = |count| ShapeError::TooLarge {
        parts: parts as usize,
        class_size: size as usize,
        count,
    };
    let count = parts.saturating_mul(size);
    if count > crate::shape::MAX_VERTICES as u64 {
        return Err(too_big(count.min(usize::MAX as u64) as usize).into());
    }
    Ok(PartitionShape::new(parts as usize, size as usize)?)
}

fn certificate(
    kind: WitnessKind,
    shape: PartitionShape,
    targets: Vec<TargetPattern>,
    color_of: impl Fn(&PartitionShape, usize, usize) -> u8,
) -> Certificate {
    let colors = shape.edges().map(|(_, u, v)| color_of(&shape, u, v)).collect();
    let problem = ColoringProblem::new(shape, targets).expect("non-empty target list");
    Certificate::new(
        problem,
        EdgeColoring::from_colors(colors),
        format!("witness:{kind}"),
    )
    .expect("construction colours every host edge")
}

pub fn witness_null_star_rest(j: u64, n: u64) -> Result<Certificate, WitnessError> {
    let kind = WitnessKind::NullStarRest { j, n };
    let shape = shape_for(kind)?;
    let targets = vec![
        TargetPattern::Star(2),
        TargetPattern::Path(4),
        TargetPattern::Stripe(n as usize),
    ];
    // colour 0 (red) stays empty
    Ok(certificate(kind, shape, targets, |_, u, _| if u == 0 { 1 } else { 2 }))
}

pub fn witness_bipartite_split3(n: u64) -> Result<Certificate, WitnessError> {
    let kind = WitnessKind::BipartiteSplit3 { n };
    let shape = shape_for(kind)?;
    let targets = vec![TargetPattern::Stripe(n as usize), TargetPattern::Cycle(7)];
    Ok(certificate(kind, shape, targets, |s, _, v| {
        // u < v, so v is in part 2 whenever the edge touches part 2
        if s.part_of(v) == 2 {
            1
        } else {
            0
        }
    }))
}

pub fn witness_part_vs_rest(j: u64, n: u64) -> Result<Certificate, WitnessError> {
    let kind = WitnessKind::PartVsRest { j, n };
    let shape = shape_for(kind)?;
    let targets = vec![TargetPattern::Stripe(n as usize), TargetPattern::Cycle(7)];
    Ok(certificate(kind, shape, targets, |s, u, _| {
        if s.part_of(u) == 0 {
            1
        } else {
            0
        }
    }))
}
