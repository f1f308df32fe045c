//! Target patterns and their compact textual notation.
//!
//! The notation follows the usual graph names: `K1,m` for a star, `Pp` for a
//! path on `p` vertices, `nK2` for `n` independent edges, `Ck` for a cycle.
//! A list of targets is written with `;` separators, in colour order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetPattern {
    /// `K_{1,m}`, `m >= 1`.
    Star(usize),
    /// `P_p`, the path on `p >= 1` vertices.
    Path(usize),
    /// `nK_2`, `n >= 1` pairwise disjoint edges.
    Stripe(usize),
    /// `C_k`, `k >= 3`.
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{kind} parameter {param} is out of range (minimum {min})")]
    OutOfRange {
        kind: &'static str,
        param: usize,
        min: usize,
    },
    #[error("unknown pattern kind `{0}`")]
    UnknownKind(String),
    #[error("cannot parse target `{token}`: {reason}")]
    Syntax { token: String, reason: &'static str },
    #[error("target list is empty")]
    EmptyList,
}

impl TargetPattern {
    /// Validated constructor from the certificate `kind`/`param` pair.
    pub fn from_kind(kind: &str, param: usize) -> Result<Self, PatternError> {
        let p = match kind {
            "star" => TargetPattern::Star(param),
            "path" => TargetPattern::Path(param),
            "stripe" => TargetPattern::Stripe(param),
            "cycle" => TargetPattern::Cycle(param),
            other => return Err(PatternError::UnknownKind(other.to_string())),
        };
        p.validate()
    }

    pub fn validate(self) -> Result<Self, PatternError> {
        let min = self.min_param();
        if self.param() < min {
            return Err(PatternError::OutOfRange {
                kind: self.kind(),
                param: self.param(),
                min,
            });
        }
        Ok(self)
    }

    fn min_param(self) -> usize {
        match self {
            TargetPattern::Cycle(_) => 3,
            _ => 1,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            TargetPattern::Star(_) => "star",
            TargetPattern::Path(_) => "path",
            TargetPattern::Stripe(_) => "stripe",
            TargetPattern::Cycle(_) => "cycle",
        }
    }

    pub fn param(self) -> usize {
        match self {
            TargetPattern::Star(m)
            | TargetPattern::Path(m)
            | TargetPattern::Stripe(m)
            | TargetPattern::Cycle(m) => m,
        }
    }

    /// Number of edges in one copy of the pattern.
    pub fn edge_count(self) -> usize {
        match self {
            TargetPattern::Star(m) => m,
            TargetPattern::Path(p) => p.saturating_sub(1),
            TargetPattern::Stripe(n) => n,
            TargetPattern::Cycle(k) => k,
        }
    }

    /// Number of vertices in one copy of the pattern.
    pub fn vertex_count(self) -> usize {
        match self {
            TargetPattern::Star(m) => m + 1,
            TargetPattern::Path(p) => p,
            TargetPattern::Stripe(n) => 2 * n,
            TargetPattern::Cycle(k) => k,
        }
    }
}

impl fmt::Display for TargetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TargetPattern::Star(m) => write!(f, "K1,{m}"),
            TargetPattern::Path(p) => write!(f, "P{p}"),
            TargetPattern::Stripe(n) => write!(f, "{n}K2"),
            TargetPattern::Cycle(k) => write!(f, "C{k}"),
        }
    }
}

fn number(token: &str, digits: &str) -> Result<usize, PatternError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(PatternError::Syntax {
            token: token.to_string(),
            reason: "expected a decimal count",
        });
    }
    digits.parse().map_err(|_| PatternError::Syntax {
        token: token.to_string(),
        reason: "count does not fit",
    })
}

impl FromStr for TargetPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token = s.trim();
        let p = if let Some(rest) = token.strip_prefix("K1,") {
            TargetPattern::Star(number(token, rest)?)
        } else if let Some(rest) = token.strip_suffix("K2") {
            // a bare "K2" is one edge
            let n = if rest.is_empty() { 1 } else { number(token, rest)? };
            TargetPattern::Stripe(n)
        } else if let Some(rest) = token.strip_prefix('P') {
            TargetPattern::Path(number(token, rest)?)
        } else if let Some(rest) = token.strip_prefix('C') {
            TargetPattern::Cycle(number(token, rest)?)
        } else {
            return Err(PatternError::Syntax {
                token: token.to_string(),
                reason: "expected K1,<m>, P<p>, <n>K2 or C<k>",
            });
        };
        p.validate()
    }
}

/// Parses a `;`-separated target list such as `K1,2;P4;3K2`.
pub fn parse_targets(s: &str) -> Result<Vec<TargetPattern>, PatternError> {
    if s.trim().is_empty() {
        return Err(PatternError::EmptyList);
    }
    s.split(';').map(str::parse).collect()
}

/// Renders a target list in the same notation [`parse_targets`] accepts.
pub fn format_targets(targets: &[TargetPattern]) -> String {
    let mut out = String::new();
    for (i, t) in targets.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        out.push_str(&t.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_compact_notation() {
        assert_eq!(
            parse_targets("K1,2;P4;3K2").unwrap(),
            vec![
                TargetPattern::Star(2),
                TargetPattern::Path(4),
                TargetPattern::Stripe(3)
            ]
        );
        assert_eq!(
            parse_targets("2K2;C7").unwrap(),
            vec![TargetPattern::Stripe(2), TargetPattern::Cycle(7)]
        );
        assert_eq!("K2".parse::<TargetPattern>().unwrap(), TargetPattern::Stripe(1));
    }

    #[test]
    fn display_round_trips() {
        for s in ["K1,2", "P4", "3K2", "C7", "K1,11", "P1"] {
            assert_eq!(s.parse::<TargetPattern>().unwrap().to_string(), s);
        }
        assert_eq!(format_targets(&parse_targets("K1,2;P4;4K2").unwrap()), "K1,2;P4;4K2");
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(matches!(
            parse_targets("K1,2;Q4"),
            Err(PatternError::Syntax { token, .. }) if token == "Q4"
        ));
        assert!(matches!(
            "C2".parse::<TargetPattern>(),
            Err(PatternError::OutOfRange { min: 3, .. })
        ));
        assert!(matches!("0K2".parse::<TargetPattern>(), Err(PatternError::OutOfRange { .. })));
        assert!(matches!("Px".parse::<TargetPattern>(), Err(PatternError::Syntax { .. })));
        assert_eq!(parse_targets("  "), Err(PatternError::EmptyList));
        assert!(matches!(
            TargetPattern::from_kind("wheel", 5),
            Err(PatternError::UnknownKind(_))
        ));
    }
}
