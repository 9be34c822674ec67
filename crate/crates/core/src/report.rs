//! Check reports shared by every verifier.

use std::fmt;

use crate::poly::Poly;

/// Which family of identities a failure belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Binary,
    Ternary,
    NonSymBinary,
    NonSymTernary,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Binary => "binary",
            Relation::Ternary => "ternary",
            Relation::NonSymBinary => "nonsym-binary",
            Relation::NonSymTernary => "nonsym-ternary",
        })
    }
}

/// A single violated condition. Indices are zero-based; `Display` prints
/// them one-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// `difference` is left side minus right side, never zero.
    Relation { relation: Relation, indices: Vec<usize>, difference: Poly },
    /// A factor of entry `entry` is not in the half-shifted orbit.
    Membership { entry: usize, factor: Poly },
    /// Conservation fails at a vertex in doubled coordinates.
    Conservation { vertex: (i64, i64), inflow: u64, outflow: u64 },
    /// An edge key with `x + y` even.
    KeyParity { key: (i64, i64) },
    /// An edge key that is not the canonical coset representative.
    NonCanonical { key: (i64, i64) },
    /// An edge with multiplicity zero.
    ZeroMultiplicity { key: (i64, i64) },
    /// A multiquiver row violating the sign condition.
    BetaRow { row: usize, reason: String },
    /// `psi(sigma_i(u_j)) != sigma'_i(psi(u_j))`.
    Intertwining { shift: usize, variable: usize, difference: Poly },
    /// `psi(p_i)` is not a nonzero scalar multiple of `p'_i`.
    NotProportional { entry: usize, image: Poly, target: Poly },
    /// Anything else, with a human-readable reason.
    Other(String),
}

fn one_based(ix: &[usize]) -> String {
    let v: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", v.join(","))
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Relation { relation, indices, difference } => {
                write!(f, "{relation} {}: difference {difference}", one_based(indices))
            }
            Failure::Membership { entry, factor } => {
                write!(f, "membership: factor {factor} of entry {} is off-orbit", entry + 1)
            }
            Failure::Conservation { vertex, inflow, outflow } => {
                write!(f, "conservation at vertex ({}, {}): {inflow} in, {outflow} out", vertex.0, vertex.1)
            }
            Failure::KeyParity { key } => write!(f, "edge key ({}, {}) is not an edge", key.0, key.1),
            Failure::NonCanonical { key } => {
                write!(f, "edge key ({}, {}) is not canonical", key.0, key.1)
            }
            Failure::ZeroMultiplicity { key } => {
                write!(f, "edge key ({}, {}) has multiplicity 0", key.0, key.1)
            }
            Failure::BetaRow { row, reason } => write!(f, "beta row {}: {reason}", row + 1),
            Failure::Intertwining { shift, variable, difference } => {
                write!(f, "intertwining fails for sigma_{} on u{}: difference {difference}", shift + 1, variable + 1)
            }
            Failure::NotProportional { entry, image, target } => {
                write!(f, "entry {}: image {image} is not a scalar multiple of {target}", entry + 1)
            }
            Failure::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, failure: Failure) {
        self.failures.push(failure);
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.failures.extend(other.failures);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("PASS");
        }
        writeln!(f, "FAIL ({} failures)", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  {fail}")?;
        }
        Ok(())
    }
}
