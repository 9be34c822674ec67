//! Splitting monic solutions into orbital pieces, and locating the rank-two
//! support of each piece.

use std::fmt;

use thiserror::Error;

use crate::consistency::{check_binary, check_ternary, SolutionTuple};
use crate::factored::FactoredPoly;
use crate::poly::{int, Poly};
use crate::report::{CheckReport, Failure};
use crate::shift::{is_fixed_by_shift, OrbitId, OrbitRelation, ShiftError, ShiftSystem, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitalError {
    #[error("entry {} is not monic", .0 + 1)]
    NotMonic(usize),
    #[error("orbit comparison undecided for factor {factor} of entry {}", .entry + 1)]
    Undecided { entry: usize, factor: String },
    #[error("more than two nonconstant entries ({}): at most two indices can carry an orbital piece", one_based(.0))]
    TooManyNonconstant(Vec<usize>),
    #[error("entry {} is a constant other than 1", .0 + 1)]
    NonUnitConstant(usize),
    #[error("sigma_{} does not fix the generator although entry {} is 1", .0 + 1, .0 + 1)]
    NotFixed(usize),
    #[error("sigma_{} fixes the generator although entry {} is nonconstant", .0 + 1, .0 + 1)]
    FixedOnSupport(usize),
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

fn one_based(ix: &[usize]) -> String {
    ix.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
}

/// A solution all of whose entry-`i` factors lie in the half-shifted orbit
/// `sigma_i^{1/2}(orbit)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitalPiece {
    pub orbit: OrbitId,
    pub solution: SolutionTuple,
}

impl OrbitalPiece {
    pub fn new(orbit: OrbitId, solution: SolutionTuple) -> Self {
        OrbitalPiece { orbit, solution }
    }

    pub fn generator(&self) -> &Poly {
        self.orbit.generator()
    }
}

/// Support of an orbital piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Pair(usize, usize),
    Trivial,
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Pair(i, j) => write!(f, "{{{}, {}}}", i + 1, j + 1),
            Support::Trivial => f.write_str("trivial"),
        }
    }
}

struct Group {
    orbit: OrbitId,
    factors: Vec<Vec<(Poly, u32)>>,
}

/// Groups the factors of a monic solution by the `Z^n`-orbit of their
/// half-unshifted forms. Each piece is anchored at the first factor of its
/// lowest nonconstant entry.
pub fn decompose(p: &SolutionTuple) -> Result<Vec<OrbitalPiece>, OrbitalError> {
    let sys = p.sys();
    let n = p.n();
    let all: Vec<usize> = (0..n).collect();
    let mut groups: Vec<Group> = Vec::new();
    for (i, entry) in p.entries().iter().enumerate() {
        if !entry.is_monic() {
            return Err(OrbitalError::NotMonic(i));
        }
        for (f, mult) in entry.factors() {
            let base = sys.half_shift(i, Sign::Minus, f)?;
            let mut home = None;
            for (g, group) in groups.iter().enumerate() {
                match group.orbit.locate(sys, &base)? {
                    OrbitRelation::Shift(_) => {
                        home = Some(g);
                        break;
                    }
                    OrbitRelation::NotInOrbit => {}
                    OrbitRelation::Undecided => {
                        return Err(OrbitalError::Undecided { entry: i, factor: f.to_string() })
                    }
                }
            }
            let g = match home {
                Some(g) => g,
                None => {
                    let orbit = OrbitId::new(sys, base, all.clone())?;
                    groups.push(Group { orbit, factors: vec![Vec::new(); n] });
                    groups.len() - 1
                }
            };
            groups[g].factors[i].push((f.clone(), *mult));
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let entries = g
                .factors
                .into_iter()
                .map(|fs| FactoredPoly::new(sys.m(), int(1), fs).expect("factors come from a valid tuple"))
                .collect();
            let solution = SolutionTuple::new(sys.clone(), entries).expect("shape preserved");
            Ok(OrbitalPiece { orbit: g.orbit, solution })
        })
        .collect()
}

/// Checks that each factor of entry `i` lies in `sigma_i^{1/2}(orbit)`, then
/// runs the binary and ternary checks on the piece.
pub fn verify_orbital(piece: &OrbitalPiece) -> CheckReport {
    let sys = piece.solution.sys();
    let mut report = CheckReport::pass();
    for (i, entry) in piece.solution.entries().iter().enumerate() {
        for (f, _) in entry.factors() {
            let verdict = sys
                .half_shift(i, Sign::Minus, f)
                .map_err(OrbitalError::from)
                .and_then(|base| piece.orbit.locate(sys, &base).map_err(OrbitalError::from));
            match verdict {
                Ok(OrbitRelation::Shift(_)) => {}
                Ok(OrbitRelation::NotInOrbit) => report.push(Failure::Membership { entry: i, factor: f.clone() }),
                Ok(OrbitRelation::Undecided) => {
                    report.push(Failure::Other(format!("membership of factor {f} of entry {} is undecided", i + 1)))
                }
                Err(e) => report.push(Failure::Other(e.to_string())),
            }
        }
    }
    report.merge(check_binary(&piece.solution)).merge(check_ternary(&piece.solution))
}

/// The at most two indices carrying nonconstant entries, after checking that
/// every other `sigma_k` fixes the generator and that the support indices do not.
pub fn support_pair(piece: &OrbitalPiece) -> Result<Support, OrbitalError> {
    support_of(piece.solution.sys(), piece.generator(), piece.solution.entries())
}

pub(crate) fn support_of(sys: &ShiftSystem, q0: &Poly, entries: &[FactoredPoly]) -> Result<Support, OrbitalError> {
    let nonconstant: Vec<usize> = (0..entries.len()).filter(|&i| !entries[i].is_constant()).collect();
    if nonconstant.len() > 2 {
        return Err(OrbitalError::TooManyNonconstant(nonconstant));
    }
    for k in 0..entries.len() {
        let fixed = is_fixed_by_shift(q0, &sys.column(k))?;
        if nonconstant.contains(&k) {
            if fixed && nonconstant.len() == 2 {
                return Err(OrbitalError::FixedOnSupport(k));
            }
        } else {
            if !entries[k].is_monic() {
                return Err(OrbitalError::NonUnitConstant(k));
            }
            if !fixed {
                return Err(OrbitalError::NotFixed(k));
            }
        }
    }
    Ok(match nonconstant[..] {
        [i, j] => Support::Pair(i, j),
        _ => Support::Trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn gl3() -> ShiftSystem {
        ShiftSystem::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]).unwrap()
    }

    fn gl3_sym() -> SolutionTuple {
        let polys = ["u1 - 1/2", "(u1 - 1/2)*(u2 - 1/2)", "u2 - 1/2"];
        SolutionTuple::factored_from_polys(gl3(), polys.iter().map(|s| parse_poly(s, 2).unwrap()).collect()).unwrap()
    }

    #[test]
    fn gl3_splits_in_two() {
        let pieces = decompose(&gl3_sym()).unwrap();
        assert_eq!(pieces.len(), 2);
        let shown: Vec<Vec<String>> =
            pieces.iter().map(|p| p.solution.polys().iter().map(Poly::to_string).collect()).collect();
        assert_eq!(shown[0], vec!["u1 - 1/2", "u1 - 1/2", "1"]);
        assert_eq!(shown[1], vec!["1", "u2 - 1/2", "u2 - 1/2"]);
        assert_eq!(pieces[0].generator(), &parse_poly("u1 - 1", 2).unwrap());
        let u1 = parse_poly("u1", 2).unwrap();
        assert!(matches!(pieces[0].orbit.locate(&gl3(), &u1).unwrap(), OrbitRelation::Shift(_)));
        assert_eq!(support_pair(&pieces[0]).unwrap(), Support::Pair(0, 1));
        assert_eq!(support_pair(&pieces[1]).unwrap(), Support::Pair(1, 2));
        for p in &pieces {
            assert!(verify_orbital(p).passed());
        }
    }

    #[test]
    fn ones_decompose_to_nothing() {
        assert!(decompose(&SolutionTuple::ones(gl3())).unwrap().is_empty());
    }

    #[test]
    fn off_orbit_factor_is_reported() {
        let mut piece = decompose(&gl3_sym()).unwrap().remove(0);
        let bad = FactoredPoly::new(2, int(1), vec![(parse_poly("u1 + 1/3", 2).unwrap(), 1)]).unwrap();
        let mut entries = piece.solution.entries().to_vec();
        entries[0] = bad;
        piece.solution = SolutionTuple::new(gl3(), entries).unwrap();
        let r = verify_orbital(&piece);
        assert!(r.failures.iter().any(|f| matches!(f, Failure::Membership { entry: 0, .. })));
    }

    #[test]
    fn non_monic_is_rejected() {
        let s =
            SolutionTuple::from_polys(gl3(), vec![parse_poly("2*u1", 2).unwrap(), Poly::one(2), Poly::one(2)]).unwrap();
        assert_eq!(decompose(&s), Err(OrbitalError::NotMonic(0)));
    }

    #[test]
    fn too_many_entries_is_a_structure_error() {
        let sys = ShiftSystem::from_i64(&[&[1, 1, 1]]).unwrap();
        let s = SolutionTuple::from_polys(sys.clone(), vec![parse_poly("u1", 1).unwrap(); 3]).unwrap();
        let pieces = decompose(&s).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(matches!(support_pair(&pieces[0]), Err(OrbitalError::TooManyNonconstant(_))));
    }
}
