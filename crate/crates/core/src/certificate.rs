//! Certificates: an explicit colouring claimed to avoid every target.
//!
//! Verification only consults the detectors, never the code that produced
//! the colouring.

use alloc::string::String;
use alloc::vec::Vec;

use crate::detect::{self, DetectorResult};
use crate::pattern::TargetPattern;
use crate::problem::{ColoringProblem, EdgeColoring, ProblemError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    problem: ColoringProblem,
    coloring: EdgeColoring,
    provenance: String,
}

impl Certificate {
    /// Builds a well-formed certificate: the colouring covers the host and
    /// uses only the problem's colours. Validity is a separate question.
    pub fn new(
        problem: ColoringProblem,
        coloring: EdgeColoring,
        provenance: impl Into<String>,
    ) -> Result<Self, ProblemError> {
        coloring.check_against(&problem)?;
        Ok(Certificate {
            problem,
            coloring,
            provenance: provenance.into(),
        })
    }

    pub fn problem(&self) -> &ColoringProblem {
        &self.problem
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Runs the batch detector of each colour on its class.
    pub fn verify(&self) -> Verification {
        let shape = self.problem.shape();
        let classes = self
            .problem
            .targets()
            .iter()
            .enumerate()
            .map(|(color, &target)| ClassCheck {
                color,
                target,
                result: detect::contains(shape, &self.coloring.class(color), target),
            })
            .collect();
        Verification { classes }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    pub color: usize,
    pub target: TargetPattern,
    pub result: DetectorResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub classes: Vec<ClassCheck>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| !c.result.found())
    }

    pub fn violations(&self) -> impl Iterator<Item = &ClassCheck> {
        self.classes.iter().filter(|c| c.result.found())
    }
}
