//! Closed-form values for the established families, with their exact domains.
//!
//! Integer arithmetic only.

use core::fmt;

use thiserror::Error;

use crate::value::RamseyValue;

/// A family of Ramsey numbers indexed by the number of parts `j` and the
/// stripe size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `m_j(K_{1,2}, P_4, nK_2)`.
    StarPathStripe { j: u64, n: u64 },
    /// `m_j(nK_2, C_7)`.
    StripeC7 { j: u64, n: u64 },
    /// `m_j(nK_2, C_6)`; only the externally published `(3, 3)` entry.
    StripeC6 { j: u64, n: u64 },
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::StarPathStripe { .. } => "star-path-stripe",
            Family::StripeC7 { .. } => "stripe-c7",
            Family::StripeC6 { .. } => "stripe-c6",
        }
    }

    pub fn from_name(name: &str, j: u64, n: u64) -> Option<Self> {
        match name {
            "star-path-stripe" => Some(Family::StarPathStripe { j, n }),
            "stripe-c7" => Some(Family::StripeC7 { j, n }),
            "stripe-c6" => Some(Family::StripeC6 { j, n }),
            _ => None,
        }
    }

    pub fn params(self) -> (u64, u64) {
        match self {
            Family::StarPathStripe { j, n } | Family::StripeC7 { j, n } | Family::StripeC6 { j, n } => (j, n),
        }
    }

    /// True for entries taken from the literature rather than derived here.
    pub fn is_external_citation(self) -> bool {
        matches!(self, Family::StripeC6 { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (j, n) = self.params();
        match self {
            Family::StarPathStripe { .. } => write!(f, "m_{j}(K1,2, P4, {n}K2)"),
            Family::StripeC7 { .. } => write!(f, "m_{j}({n}K2, C7)"),
            Family::StripeC6 { .. } => write!(f, "m_{j}({n}K2, C6)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{family} is not established for these parameters: requires {guard}")]
pub struct DomainError {
    pub family: &'static str,
    pub guard: &'static str,
}

fn guard(family: Family, guard: &'static str) -> DomainError {
    DomainError {
        family: family.name(),
        guard,
    }
}

pub fn floor_div(a: u64, b: u64) -> u64 {
    a / b
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Which piece of the piecewise definitions applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `floor(2n/j) + 1`, `j, n >= 2`.
    StarPathStripe,
    /// `j = 2`: the host is bipartite and never contains `C_7`.
    C7Bipartite,
    /// `(j, n) = (4, 2)`: value 2.
    C7FourTwo,
    /// `(j, n)` in `{(3, 2), (4, 3)}`: value 3.
    C7Three,
    /// `j = 3, n >= 3`: value `n`.
    C7ThreeParts,
    /// `j = 4, n >= 4`: value `ceil((n+1)/2)`.
    C7FourParts,
    /// `j >= 5`: open.
    C7Open,
    /// `m_3(3K_2, C_6) = 3`, cited.
    C6Cited,
}

pub fn branch(f: Family) -> Result<Branch, DomainError> {
    match f {
        Family::StarPathStripe { j, n } => {
            if j < 2 {
                Err(guard(f, "j >= 2"))
            } else if n < 2 {
                Err(guard(f, "n >= 2"))
            } else {
                Ok(Branch::StarPathStripe)
            }
        }
        Family::StripeC7 { j, n } => {
            if j < 2 {
                Err(guard(f, "j >= 2"))
            } else if n < 2 {
                Err(guard(f, "n >= 2"))
            } else {
                Ok(match (j, n) {
                    (2, _) => Branch::C7Bipartite,
                    (4, 2) => Branch::C7FourTwo,
                    (3, 2) | (4, 3) => Branch::C7Three,
                    (3, _) => Branch::C7ThreeParts,
                    (4, _) => Branch::C7FourParts,
                    _ => Branch::C7Open,
                })
            }
        }
        Family::StripeC6 { j, n } => {
            if (j, n) == (3, 3) {
                Ok(Branch::C6Cited)
            } else {
                Err(guard(f, "(j, n) = (3, 3)"))
            }
        }
    }
}

/// The established value of `f`.
pub fn value(f: Family) -> Result<RamseyValue, DomainError> {
    let (j, n) = f.params();
    Ok(match branch(f)? {
        Branch::StarPathStripe => RamseyValue::Finite(floor_div(2 * n, j) + 1),
        Branch::C7Bipartite => RamseyValue::Infinite,
        Branch::C7FourTwo => RamseyValue::Finite(2),
        Branch::C7Three | Branch::C6Cited => RamseyValue::Finite(3),
        Branch::C7ThreeParts => RamseyValue::Finite(n),
        Branch::C7FourParts => RamseyValue::Finite(ceil_div(n + 1, 2)),
        // only a lower bound; tightness is not claimed
        Branch::C7Open => RamseyValue::Unknown {
            lower_bound: lb_stripe_c7(j, n).ok(),
        },
    })
}

/// `ceil((2n+2)/j)`, a lower bound on `m_j(nK_2, C_7)` for `j >= 3`, `n >= j`.
pub fn lb_stripe_c7(j: u64, n: u64) -> Result<u64, DomainError> {
    let fam = Family::StripeC7 { j, n };
    if j < 3 {
        return Err(guard(fam, "j >= 3"));
    }
    if n < j {
        return Err(guard(fam, "n >= j"));
    }
    Ok(ceil_div(2 * n + 2, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_values() {
        let f = |j, n| value(Family::StarPathStripe { j, n }).unwrap();
        assert_eq!(f(3, 4), RamseyValue::Finite(3));
        for n in 2..20 {
            assert_eq!(f(2, n), RamseyValue::Finite(n + 1));
        }
        assert_eq!(f(4, 6), RamseyValue::Finite(4));
        let c7 = |j, n| value(Family::StripeC7 { j, n }).unwrap();
        assert_eq!(c7(2, 5), RamseyValue::Infinite);
        assert_eq!(c7(4, 9), RamseyValue::Finite(5));
        assert_eq!(c7(4, 4), RamseyValue::Finite(3));
        assert_eq!(c7(4, 2), RamseyValue::Finite(2));
        assert_eq!(c7(3, 2), RamseyValue::Finite(3));
        assert_eq!(c7(4, 3), RamseyValue::Finite(3));
        assert_eq!(c7(3, 7), RamseyValue::Finite(7));
        assert_eq!(c7(5, 6), RamseyValue::Unknown { lower_bound: Some(3) });
        assert_eq!(c7(6, 3), RamseyValue::Unknown { lower_bound: None });
        assert_eq!(
            value(Family::StripeC6 { j: 3, n: 3 }).unwrap(),
            RamseyValue::Finite(3)
        );
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lb_stripe_c7(4, 4), Ok(3));
        assert_eq!(lb_stripe_c7(3, 3), Ok(3));
        assert_eq!(lb_stripe_c7(5, 5), Ok(3));
        assert_eq!(lb_stripe_c7(5, 4).unwrap_err().guard, "n >= j");
        assert_eq!(lb_stripe_c7(2, 4).unwrap_err().guard, "j >= 3");
    }

    #[test]
    fn domain_errors_name_the_guard() {
        let e = value(Family::StarPathStripe { j: 3, n: 1 }).unwrap_err();
        assert_eq!(e.guard, "n >= 2");
        assert_eq!(e.family, "star-path-stripe");
        assert_eq!(value(Family::StripeC7 { j: 1, n: 4 }).unwrap_err().guard, "j >= 2");
        assert!(value(Family::StripeC6 { j: 3, n: 4 }).is_err());
    }

    /// Every input fires exactly one branch predicate, evaluated here
    /// independently of `branch`.
    #[test]
    fn piecewise_totality() {
        for j in 0..=12u64 {
            for n in 0..=12u64 {
                let preds = [
                    (Branch::C7Bipartite, j == 2 && n >= 2),
                    (Branch::C7FourTwo, (j, n) == (4, 2)),
                    (Branch::C7Three, (j, n) == (3, 2) || (j, n) == (4, 3)),
                    (Branch::C7ThreeParts, j == 3 && n >= 3),
                    (Branch::C7FourParts, j == 4 && n >= 4),
                    (Branch::C7Open, j >= 5 && n >= 2),
                ];
                let fired: alloc::vec::Vec<_> = preds.iter().filter(|p| p.1).collect();
                match branch(Family::StripeC7 { j, n }) {
                    Ok(b) => {
                        assert_eq!(fired.len(), 1, "j={j} n={n}");
                        assert_eq!(fired[0].0, b);
                    }
                    Err(_) => assert!(fired.is_empty(), "j={j} n={n}"),
                }
                let sps = branch(Family::StarPathStripe { j, n });
                assert_eq!(sps.is_ok(), j >= 2 && n >= 2);
            }
        }
    }
}
