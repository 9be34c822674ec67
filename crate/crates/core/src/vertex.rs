//! Higher spin 6-vertex configurations and their bijection with orbital
//! solutions supported on an index pair.
//!
//! Coordinates are doubled so that every lattice object has an integer key:
//! face `(a, b)` is `(2a, 2b)`, a type-`i` edge is `(2a + 1, 2b)`, a type-`j`
//! edge is `(2a, 2b + 1)` and a vertex is `(2a + 1, 2b + 1)`. The type-`i`
//! edge `(x, y)` stands for the factor `q0` shifted by `(x/2) alpha_i + (y/2) alpha_j`.
//!
//! Flow runs up along type-`i` edges and right along type-`j` edges; at every
//! vertex the inflow from below and from the left equals the outflow up and
//! to the right.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::consistency::SolutionTuple;
use crate::factored::FactoredPoly;
use crate::orbital::{decompose, support_of, OrbitalError, OrbitalPiece, Support};
use crate::poly::{int, rat, Poly, Rational};
use crate::report::{CheckReport, Failure};
use crate::shift::{OrbitId, OrbitRelation, ShiftError, ShiftSystem, Sign, StabilizerLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("index pair must consist of two distinct indices")]
    SameIndex,
    #[error("stabilizer of the generator on the pair has rank {0}; configurations need rank 0 or 1")]
    LatticeRank(usize),
    #[error("declared lattice {given} differs from the stabilizer {computed}")]
    LatticeMismatch { given: String, computed: String },
    #[error("invalid configuration:\n{0}")]
    Invalid(CheckReport),
    #[error("piece has trivial support; only pieces on an index pair encode")]
    TrivialPiece,
    #[error("factor {factor} of entry {} is not in the orbit", .entry + 1)]
    OffOrbit { entry: usize, factor: String },
    #[error("orbit comparison undecided for factor {factor} of entry {}", .entry + 1)]
    Undecided { entry: usize, factor: String },
    #[error("decoding the encoded configuration does not reproduce the piece")]
    RoundTrip,
    #[error("random configurations need a rank-1 stabilizer <(r, s)> with r, s >= 1, got {0}")]
    RandomNeedsPositiveStabilizer(String),
    #[error(transparent)]
    Orbital(#[from] OrbitalError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

/// Doubled-coordinate key.
pub type Key = (i64, i64);

/// A finite multiplicity assignment on the edges of the square lattice of an
/// orbit, modulo twice the stabilizer lattice of the generator on the pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexConfig {
    sys: ShiftSystem,
    orbit: OrbitId,
    edges: BTreeMap<Key, u32>,
}

impl VertexConfig {
    /// Builds a configuration; keys are canonicalized and repeated keys add up.
    /// Parity and conservation are checked by [`validate`], not here.
    pub fn new(
        sys: &ShiftSystem,
        generator: Poly,
        pair: (usize, usize),
        edges: impl IntoIterator<Item = (Key, u32)>,
    ) -> Result<Self, ConfigError> {
        if pair.0 == pair.1 {
            return Err(ConfigError::SameIndex);
        }
        let orbit = OrbitId::new(sys, generator, vec![pair.0, pair.1])?;
        let rank = orbit.stabilizer().rank();
        if rank > 1 {
            return Err(ConfigError::LatticeRank(rank));
        }
        let mut c = VertexConfig { sys: sys.clone(), orbit, edges: BTreeMap::new() };
        for (k, m) in edges {
            c.add(k, m);
        }
        Ok(c)
    }

    /// Like [`VertexConfig::new`], also checking a declared lattice basis.
    pub fn with_lattice(
        sys: &ShiftSystem,
        generator: Poly,
        pair: (usize, usize),
        lattice: &[Vec<i64>],
        edges: impl IntoIterator<Item = (Key, u32)>,
    ) -> Result<Self, ConfigError> {
        let c = Self::new(sys, generator, pair, edges)?;
        let given = StabilizerLattice::from_generators(2, lattice);
        if &given != c.lattice() {
            return Err(ConfigError::LatticeMismatch { given: given.to_string(), computed: c.lattice().to_string() });
        }
        Ok(c)
    }

    pub fn empty(sys: &ShiftSystem, generator: Poly, pair: (usize, usize)) -> Result<Self, ConfigError> {
        Self::new(sys, generator, pair, [])
    }

    pub fn sys(&self) -> &ShiftSystem {
        &self.sys
    }

    pub fn orbit(&self) -> &OrbitId {
        &self.orbit
    }

    pub fn generator(&self) -> &Poly {
        self.orbit.generator()
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.orbit.index_set()[0], self.orbit.index_set()[1])
    }

    pub fn lattice(&self) -> &StabilizerLattice {
        self.orbit.stabilizer()
    }

    pub fn edges(&self) -> &BTreeMap<Key, u32> {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(r, s)` when the lattice has rank 1.
    pub fn period(&self) -> Option<(i64, i64)> {
        match self.lattice().basis() {
            [v] => Some((v[0], v[1])),
            _ => None,
        }
    }

    /// Canonical representative of a doubled point modulo `2 * lattice`:
    /// `0 <= x < 2r`, or `0 <= y < 2s` when `r = 0`.
    pub fn canonical(&self, (x, y): Key) -> Key {
        match self.period() {
            Some((r, s)) if r != 0 => {
                let q = x.div_euclid(2 * r);
                (x - 2 * r * q, y - 2 * s * q)
            }
            Some((_, s)) => {
                let q = y.div_euclid(2 * s);
                (x, y - 2 * s * q)
            }
            None => (x, y),
        }
    }

    /// Adds multiplicity at the canonical representative of `key`.
    pub fn add(&mut self, key: Key, mult: u32) {
        let k = self.canonical(key);
        *self.edges.entry(k).or_insert(0) += mult;
    }

    /// Multiplicity at any representative, 0 when absent.
    pub fn multiplicity(&self, key: Key) -> u32 {
        self.edges.get(&self.canonical(key)).copied().unwrap_or(0)
    }

    /// Pointwise sum of two configurations on the same orbit and pair.
    pub fn sum(&self, other: &VertexConfig) -> VertexConfig {
        assert_eq!(self.orbit, other.orbit);
        let mut out = self.clone();
        for (&k, &m) in &other.edges {
            out.add(k, m);
        }
        out
    }

    /// Translates every key by a doubled offset.
    pub fn translate(&self, (dx, dy): Key) -> VertexConfig {
        let mut out = VertexConfig { edges: BTreeMap::new(), ..self.clone() };
        for (&(x, y), &m) in &self.edges {
            out.add((x + dx, y + dy), m);
        }
        out
    }

    /// The same configuration seen from another generator of the same orbit.
    pub fn reanchor(&self, generator: Poly) -> Result<VertexConfig, ConfigError> {
        let target = VertexConfig::empty(&self.sys, generator.clone(), self.pair())?;
        // self.q0 = (a, b) . new_q0, so a key of self sits at key + (2a, 2b) for the new anchor.
        match target.orbit.locate(&self.sys, self.generator())? {
            OrbitRelation::Shift(k) => {
                let mut out = target;
                for (&(x, y), &m) in &self.edges {
                    out.add((x + 2 * k[0], y + 2 * k[1]), m);
                }
                Ok(out)
            }
            OrbitRelation::NotInOrbit => {
                Err(ConfigError::OffOrbit { entry: self.pair().0, factor: generator.to_string() })
            }
            OrbitRelation::Undecided => {
                Err(ConfigError::Undecided { entry: self.pair().0, factor: generator.to_string() })
            }
        }
    }

    /// The same configuration on the pair `(j, i)`: key `(x, y)` becomes `(y, x)`.
    pub fn transposed(&self) -> VertexConfig {
        let (i, j) = self.pair();
        let mut out =
            VertexConfig::empty(&self.sys, self.generator().clone(), (j, i)).expect("transposing keeps the orbit");
        for (&(x, y), &m) in &self.edges {
            out.add((y, x), m);
        }
        out
    }

    /// Equality after aligning generators and the order of the pair.
    pub fn equivalent(&self, other: &VertexConfig) -> bool {
        if self.sys != other.sys {
            return false;
        }
        let (i, j) = self.pair();
        if other.pair() == (j, i) {
            return self.equivalent(&other.transposed());
        }
        if self.pair() != other.pair() {
            return false;
        }
        match other.reanchor(self.generator().clone()) {
            Ok(moved) => moved.edges == self.edges,
            Err(_) => false,
        }
    }

    fn factor_at(&self, (x, y): Key) -> Poly {
        let (i, j) = self.pair();
        let t = self.sys.combination(&[i, j], &[rat(x, 2), rat(y, 2)]);
        self.generator().shift(&t)
    }
}

impl fmt::Display for VertexConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.pair();
        writeln!(f, "generator: {}", self.generator())?;
        writeln!(f, "pair: {{{}, {}}}", i + 1, j + 1)?;
        writeln!(f, "lattice: {}", self.lattice())?;
        for (&(x, y), &m) in &self.edges {
            let kind = if x.rem_euclid(2) == 1 { i } else { j };
            writeln!(f, "  edge ({x}, {y}) type {} mult {m}", kind + 1)?;
        }
        Ok(())
    }
}

/// Checks key parity, canonicality, positive multiplicities, and conservation
/// at every vertex touching the support.
pub fn validate(c: &VertexConfig) -> CheckReport {
    let mut report = CheckReport::pass();
    let mut vertices = BTreeSet::new();
    for (&(x, y), &m) in &c.edges {
        if (x + y).rem_euclid(2) != 1 {
            report.push(Failure::KeyParity { key: (x, y) });
            continue;
        }
        if c.canonical((x, y)) != (x, y) {
            report.push(Failure::NonCanonical { key: (x, y) });
        }
        if m == 0 {
            report.push(Failure::ZeroMultiplicity { key: (x, y) });
        }
        let ends = if x.rem_euclid(2) == 1 { [(x, y - 1), (x, y + 1)] } else { [(x - 1, y), (x + 1, y)] };
        for v in ends {
            vertices.insert(c.canonical(v));
        }
    }
    for (x, y) in vertices {
        let inflow = u64::from(c.multiplicity((x, y - 1))) + u64::from(c.multiplicity((x - 1, y)));
        let outflow = u64::from(c.multiplicity((x, y + 1))) + u64::from(c.multiplicity((x + 1, y)));
        if inflow != outflow {
            report.push(Failure::Conservation { vertex: (x, y), inflow, outflow });
        }
    }
    report
}

/// The orbital solution of a valid configuration: entry `i` collects the
/// type-`i` factors, entry `j` the type-`j` factors, all other entries are 1.
pub fn decode(c: &VertexConfig) -> Result<OrbitalPiece, ConfigError> {
    let report = validate(c);
    if !report.passed() {
        return Err(ConfigError::Invalid(report));
    }
    let sys = &c.sys;
    let (i, j) = c.pair();
    let mut factors: Vec<Vec<(Poly, u32)>> = vec![Vec::new(); sys.n()];
    for (&(x, y), &m) in &c.edges {
        let entry = if x.rem_euclid(2) == 1 { i } else { j };
        factors[entry].push((c.factor_at((x, y)), m));
    }
    let entries = factors
        .into_iter()
        .map(|fs| FactoredPoly::new(sys.m(), int(1), fs).expect("shifts of a monic generator"))
        .collect();
    let solution = SolutionTuple::new(sys.clone(), entries).expect("n entries");
    let orbit = c.orbit.restrict(sys, (0..sys.n()).collect())?;
    Ok(OrbitalPiece::new(orbit, solution))
}

/// The unique configuration of an orbital piece supported on a pair.
pub fn encode(piece: &OrbitalPiece) -> Result<VertexConfig, ConfigError> {
    let sys = piece.solution.sys();
    let Support::Pair(i, j) = support_of(sys, piece.generator(), piece.solution.entries())? else {
        return Err(ConfigError::TrivialPiece);
    };
    let mut c = VertexConfig::empty(sys, piece.generator().clone(), (i, j))?;
    for (entry, parity) in [(i, (1, 0)), (j, (0, 1))] {
        for (f, m) in piece.solution.entry(entry).factors() {
            let base = sys.half_shift(entry, Sign::Minus, f)?;
            match c.orbit.locate(sys, &base)? {
                OrbitRelation::Shift(k) => c.add((2 * k[0] + parity.0, 2 * k[1] + parity.1), *m),
                OrbitRelation::NotInOrbit => return Err(ConfigError::OffOrbit { entry, factor: f.to_string() }),
                OrbitRelation::Undecided => return Err(ConfigError::Undecided { entry, factor: f.to_string() }),
            }
        }
    }
    let report = validate(&c);
    if !report.passed() {
        return Err(ConfigError::Invalid(report));
    }
    Ok(c)
}

/// One entry of a classification: an orbit, its index pair and its configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassEntry {
    pub orbit: OrbitId,
    pub pair: (usize, usize),
    pub config: VertexConfig,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ClassificationRecord {
    pub entries: Vec<ClassEntry>,
}

impl ClassificationRecord {
    /// Entrywise product of the decoded pieces.
    pub fn reconstruct(&self, sys: &ShiftSystem) -> Result<SolutionTuple, ConfigError> {
        let mut acc = SolutionTuple::ones(sys.clone());
        for e in &self.entries {
            acc = acc.mul(&decode(&e.config)?.solution);
        }
        Ok(acc)
    }
}

/// Decomposes a monic solution and encodes every piece, checking that each
/// configuration decodes back to its piece exactly.
pub fn classify(p: &SolutionTuple) -> Result<ClassificationRecord, ConfigError> {
    let mut record = ClassificationRecord::default();
    for piece in decompose(p)? {
        let config = encode(&piece)?;
        let back = decode(&config)?;
        let same =
            back.solution.entries().iter().zip(piece.solution.entries()).all(|(a, b)| a.factor_map() == b.factor_map());
        if !same {
            return Err(ConfigError::RoundTrip);
        }
        record.entries.push(ClassEntry { orbit: piece.orbit.clone(), pair: config.pair(), config });
    }
    Ok(record)
}

/// Superposes `loops` random monotone staircase loops on the cylinder
/// `Z^2 / <(r, s)>`, each with `r` steps along `i` and `s` steps along `j` in a
/// uniformly shuffled order. Deterministic for a given seed.
pub fn random_config(
    sys: &ShiftSystem,
    generator: Poly,
    pair: (usize, usize),
    loops: usize,
    seed: u64,
) -> Result<VertexConfig, ConfigError> {
    let mut c = VertexConfig::empty(sys, generator, pair)?;
    let (r, s) = match c.period() {
        Some((r, s)) if r >= 1 && s >= 1 => (r, s),
        _ => return Err(ConfigError::RandomNeedsPositiveStabilizer(c.lattice().to_string())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..loops {
        let mut steps: Vec<bool> =
            std::iter::repeat_n(true, r as usize).chain(std::iter::repeat_n(false, s as usize)).collect();
        steps.shuffle(&mut rng);
        let mut x = 2 * rng.gen_range(0..r) + 1;
        let mut y = 2 * rng.gen_range(-s..=s) + 1;
        for along_i in steps {
            if along_i {
                c.add((x + 1, y), 1);
                x += 2;
            } else {
                c.add((x, y + 1), 1);
                y += 2;
            }
        }
    }
    Ok(c)
}

/// The shift vector `(x/2) alpha_i + (y/2) alpha_j` of a key, for display.
pub fn key_shift(c: &VertexConfig, (x, y): Key) -> Vec<Rational> {
    let (i, j) = c.pair();
    c.sys.combination(&[i, j], &[rat(x, 2), rat(y, 2)])
}
