use core::fmt;

/// Value of a size multipartite Ramsey number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RamseyValue {
    Finite(u64),
    /// No class size forces the pattern (bipartite host against an odd cycle).
    Infinite,
    /// Not determined; a proven lower bound when one is known.
    Unknown { lower_bound: Option<u64> },
}

impl fmt::Display for RamseyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamseyValue::Finite(t) => write!(f, "Finite {t}"),
            RamseyValue::Infinite => f.write_str("Infinite"),
            RamseyValue::Unknown { lower_bound: Some(b) } => write!(f, "Unknown lower_bound={b}"),
            RamseyValue::Unknown { lower_bound: None } => f.write_str("Unknown"),
        }
    }
}
