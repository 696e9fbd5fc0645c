//! Character-lattice algebra for lifting maps between tori.
//!
//! A torus is recorded by its character lattice, a free abelian group
//! `Z^n`. Morphisms of tori are recorded dually as integer matrices acting
//! on column vectors. Everything here is exact.

mod matrix;

pub use matrix::{hnf_rows, snf, solve_integer, IntMatrix, Snf};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("quotient is not free: invariant factor {factor}")]
    NotFreeQuotient { factor: BigInt },
    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),
    #[error("no integral lift solves the corner constraint")]
    NoIntegralLift,
}

impl LatticeError {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeError::DimensionMismatch { .. } => "DimensionMismatch",
            LatticeError::DependentBasis => "DependentBasis",
            LatticeError::NotFreeQuotient { .. } => "NotFreeQuotient",
            LatticeError::InconsistentDiagram(_) => "InconsistentDiagram",
            LatticeError::NoIntegralLift => "NoIntegralLift",
        }
    }
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A sublattice of `Z^n`, kept in row Hermite normal form so that two
/// lattices are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeRepr {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = LatticeError;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        Lattice::from_basis(r.ambient_rank, r.basis.to_rows())
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr { ambient_rank: l.ambient_rank, basis: l.basis }
    }
}

impl Lattice {
    /// The sublattice with the given basis; the vectors must be independent.
    pub fn from_basis(ambient_rank: usize, basis: Vec<Vec<BigInt>>) -> Result<Self> {
        let count = basis.len();
        let lattice = Self::span(ambient_rank, basis)?;
        if lattice.rank() != count {
            return Err(LatticeError::DependentBasis);
        }
        Ok(lattice)
    }

    /// The sublattice generated by arbitrary (possibly dependent) vectors.
    pub fn span(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(LatticeError::DimensionMismatch { expected: ambient_rank, found: bad.len() });
        }
        let m = IntMatrix::from_rows(ambient_rank, generators).expect("lengths checked");
        Ok(Lattice { ambient_rank, basis: hnf_rows(&m) })
    }

    pub fn from_i64(ambient_rank: usize, basis: &[&[i64]]) -> Result<Self> {
        let rows = basis.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_basis(ambient_rank, rows)
    }

    pub fn full(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Basis vectors as the rows of a matrix (Hermite normal form).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let probe = IntMatrix::from_rows(self.ambient_rank, vec![v.to_vec()]).unwrap();
        hnf_rows(&self.basis.vstack(&probe)) == self.basis
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_rank == self.ambient_rank && other.basis.rows_iter().all(|r| self.contains(r))
    }

    /// Nonzero invariant factors of the basis matrix.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        snf(&self.basis).invariant_factors().to_vec()
    }
}

/// The torsion closure `{v : n v in L for some n != 0}` of `L`.
pub fn saturate(l: &Lattice) -> Lattice {
    if l.rank() == 0 {
        return l.clone();
    }
    // basis = left^-1 * D * right^-1, so the rational span of the basis is
    // the span of the first `rank` rows of right^-1, which extend to a
    // basis of Z^n.
    let s = snf(l.basis());
    let rows = s.right_inv.select_rows(0..s.rank);
    Lattice { ambient_rank: l.ambient_rank, basis: hnf_rows(&rows) }
}

/// Index of `l` inside its saturation: the product of the invariant factors.
pub fn saturation_index(l: &Lattice) -> BigInt {
    l.invariant_factors().iter().product()
}

pub fn is_direct_summand(l: &Lattice) -> bool {
    let s = saturate(l);
    s.contains_lattice(l) && l.contains_lattice(&s)
}

/// A homomorphism `Z^source -> Z^target`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeMapRepr", into = "LatticeMapRepr")]
pub struct LatticeMap {
    source_rank: usize,
    target_rank: usize,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeMapRepr {
    source_rank: usize,
    target_rank: usize,
    matrix: IntMatrix,
}

impl TryFrom<LatticeMapRepr> for LatticeMap {
    type Error = LatticeError;
    fn try_from(r: LatticeMapRepr) -> Result<Self> {
        // An empty JSON matrix carries no column count.
        let matrix = if r.matrix.nrows() == 0 { IntMatrix::zeros(0, r.source_rank) } else { r.matrix };
        LatticeMap::new(r.source_rank, r.target_rank, matrix)
    }
}

impl From<LatticeMap> for LatticeMapRepr {
    fn from(m: LatticeMap) -> Self {
        LatticeMapRepr { source_rank: m.source_rank, target_rank: m.target_rank, matrix: m.matrix }
    }
}

impl LatticeMap {
    pub fn new(source_rank: usize, target_rank: usize, matrix: IntMatrix) -> Result<Self> {
        if matrix.nrows() != target_rank {
            return Err(LatticeError::DimensionMismatch { expected: target_rank, found: matrix.nrows() });
        }
        if matrix.ncols() != source_rank {
            return Err(LatticeError::DimensionMismatch { expected: source_rank, found: matrix.ncols() });
        }
        Ok(LatticeMap { source_rank, target_rank, matrix })
    }

    pub fn from_matrix(matrix: IntMatrix) -> Self {
        LatticeMap { source_rank: matrix.ncols(), target_rank: matrix.nrows(), matrix }
    }

    pub fn from_i64(source_rank: usize, target_rank: usize, rows: &[&[i64]]) -> Result<Self> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, source_rank)
        } else {
            IntMatrix::from_i64_rows(source_rank, rows)
        };
        Self::new(source_rank, target_rank, m)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix(IntMatrix::identity(n))
    }

    pub fn zero(source_rank: usize, target_rank: usize) -> Self {
        Self::from_matrix(IntMatrix::zeros(target_rank, source_rank))
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        if inner.target_rank != self.source_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.source_rank, found: inner.target_rank });
        }
        Ok(LatticeMap::from_matrix(self.matrix.mul(&inner.matrix)))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    pub fn image(&self) -> Lattice {
        Lattice::span(self.target_rank, self.matrix.transpose().to_rows()).expect("columns have target length")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// The maximal torsion-free quotient of a pushout, with its two structure maps.
#[derive(Clone, Debug, Serialize)]
pub struct Pushout {
    pub rank: usize,
    pub from_first: LatticeMap,
    pub from_second: LatticeMap,
}

impl Pushout {
    pub fn lattice(&self) -> Lattice {
        Lattice::full(self.rank)
    }
}

/// Given `p: X -> M` and `q: X -> C`, forms `(M ⊕ C) / {(p x, -q x)}` and
/// drops its torsion. The structure maps satisfy `from_first ∘ p = from_second ∘ q`.
pub fn pushout_torsion_free(p: &LatticeMap, q: &LatticeMap) -> Result<Pushout> {
    if p.source_rank != q.source_rank {
        return Err(LatticeError::DimensionMismatch { expected: p.source_rank, found: q.source_rank });
    }
    let (m, c) = (p.target_rank, q.target_rank);
    let relations = p.matrix.vstack(&q.matrix.neg());
    let s = snf(&relations);
    // y -> (left * y)[rank..] kills the relation columns and is onto the free part.
    let quotient = s.left.select_rows(s.rank..m + c);
    let rank = m + c - s.rank;
    let from_first = LatticeMap::new(m, rank, quotient.select_cols(0..m))?;
    let from_second = LatticeMap::new(c, rank, quotient.select_cols(m..m + c))?;
    Ok(Pushout { rank, from_first, from_second })
}

/// A splitting of `B -> B/A`: `projection` identifies the quotient with
/// `Z^k`, `section` is a right inverse of it.
#[derive(Clone, Debug, Serialize)]
pub struct Splitting {
    pub projection: LatticeMap,
    pub section: LatticeMap,
}

/// Splits the free quotient of an inclusion `A -> B`.
pub fn split_free_quotient(incl: &LatticeMap) -> Result<Splitting> {
    let s = snf(&incl.matrix);
    if let Some(bad) = s.invariant_factors().iter().find(|d| !d.is_one()) {
        return Err(LatticeError::NotFreeQuotient { factor: bad.clone() });
    }
    let b = incl.target_rank;
    let projection = LatticeMap::new(b, b - s.rank, s.left.select_rows(s.rank..b))?;
    let section = LatticeMap::new(b - s.rank, b, s.left_inv.select_cols(s.rank..b))?;
    Ok(Splitting { projection, section })
}

impl Splitting {
    /// Checks `projection ∘ section = id`, `projection ∘ incl = 0`, and that the
    /// images of `incl` and `section` together span the target with ranks adding up.
    pub fn verify(&self, incl: &LatticeMap) -> bool {
        let k = self.section.source_rank;
        let id = self.projection.matrix.mul(&self.section.matrix) == IntMatrix::identity(k);
        let kills = self.projection.matrix.mul(&incl.matrix).is_zero();
        let b = incl.target_rank;
        let mut gens = incl.matrix.transpose().to_rows();
        gens.extend(self.section.matrix.transpose().to_rows());
        let spans = Lattice::span(b, gens).map(|l| l == Lattice::full(b)).unwrap_or(false);
        let ranks = incl.rank() + self.section.rank() == b;
        id && kills && spans && ranks
    }
}

/// Extra commutativity required of a torus lift: a map from the center
/// lattice and one from the cover lattice into `⊕ Z/moduli[i]`
/// (modulus 0 meaning `Z`), which the lift must intertwine.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerConstraint {
    pub from_center: LatticeMap,
    pub from_cover: LatticeMap,
    pub moduli: Vec<BigInt>,
}

fn congruent(a: &IntMatrix, b: &IntMatrix, moduli: &[BigInt]) -> bool {
    a.add(&b.neg()).reduce_rows_mod(moduli).is_zero()
}

/// Finds `lift: X*(T') -> X*(C)` with `lift ∘ extension = restriction`, where
/// `extension: X*(T) -> X*(T')` is injective with free cokernel.
pub fn lift_torus_map(restriction: &LatticeMap, extension: &LatticeMap) -> Result<LatticeMap> {
    lift_impl(restriction, extension, None)
}

/// As [`lift_torus_map`], additionally requiring
/// `corner.from_center ∘ lift ≡ corner.from_cover` modulo the corner moduli.
pub fn lift_torus_map_with_corner(
    restriction: &LatticeMap,
    extension: &LatticeMap,
    corner: &CornerConstraint,
) -> Result<LatticeMap> {
    lift_impl(restriction, extension, Some(corner))
}

fn lift_impl(restriction: &LatticeMap, extension: &LatticeMap, corner: Option<&CornerConstraint>) -> Result<LatticeMap> {
    if restriction.source_rank != extension.source_rank {
        return Err(LatticeError::DimensionMismatch { expected: extension.source_rank, found: restriction.source_rank });
    }
    let t = extension.source_rank;
    let cover = extension.target_rank;
    let center = restriction.target_rank;
    let s = snf(&extension.matrix);
    if let Some(bad) = s.invariant_factors().iter().find(|d| !d.is_one()) {
        return Err(LatticeError::NotFreeQuotient { factor: bad.clone() });
    }
    if s.rank != t {
        return Err(LatticeError::InconsistentDiagram("extension map is not injective".into()));
    }
    // retraction ∘ extension = id and retraction ∘ section = 0.
    let retraction = s.right.mul(&s.left.select_rows(0..t));
    let projection = s.left.select_rows(t..cover);
    let section = s.left_inv.select_cols(t..cover);
    let mut lift = restriction.matrix.mul(&retraction);

    if let Some(corner) = corner {
        let q = corner.moduli.len();
        if corner.from_center.source_rank != center || corner.from_center.target_rank != q {
            return Err(LatticeError::DimensionMismatch { expected: center, found: corner.from_center.source_rank });
        }
        if corner.from_cover.source_rank != cover || corner.from_cover.target_rank != q {
            return Err(LatticeError::DimensionMismatch { expected: cover, found: corner.from_cover.source_rank });
        }
        let around = corner.from_center.matrix.mul(&restriction.matrix);
        let across = corner.from_cover.matrix.mul(&extension.matrix);
        if !congruent(&around, &across, &corner.moduli) {
            return Err(LatticeError::InconsistentDiagram("outer square does not commute".into()));
        }
        // On the complement s(Z^k) pick x with from_center * x ≡ from_cover * section.
        let k = cover - t;
        if k > 0 {
            let rhs = corner.from_cover.matrix.mul(&section);
            let mods = IntMatrix::diagonal(q, q, &corner.moduli);
            let system = corner.from_center.matrix.hstack(&mods);
            let sol = solve_integer(&system, &rhs).ok_or(LatticeError::NoIntegralLift)?;
            let x = sol.select_rows(0..center);
            lift = lift.add(&x.mul(&projection));
        }
        let got = corner.from_center.matrix.mul(&lift);
        if !congruent(&got, &corner.from_cover.matrix, &corner.moduli) {
            return Err(LatticeError::InconsistentDiagram("corner constraint not met".into()));
        }
    }

    let lift = LatticeMap::new(cover, center, lift)?;
    debug_assert_eq!(lift.matrix.mul(&extension.matrix), restriction.matrix);
    Ok(lift)
}

/// Index `[outer : inner]` of nested lattices of equal rank, as the
/// determinant of the inner basis written in outer coordinates.
pub fn relative_index(outer: &Lattice, inner: &Lattice) -> Option<BigInt> {
    if outer.rank() != inner.rank() || !outer.contains_lattice(inner) {
        return None;
    }
    let coords = solve_integer(&outer.basis().transpose(), &inner.basis().transpose())?;
    Some(coords.det().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(n: usize, rows: &[&[i64]]) -> Lattice {
        Lattice::from_i64(n, rows).unwrap()
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&lat(2, &[&[2, 0], &[0, 3]])), Lattice::full(2));
        assert_eq!(saturate(&lat(2, &[&[2, 4]])), lat(2, &[&[1, 2]]));
        assert_eq!(saturate(&lat(3, &[&[2, 2, 0], &[0, 4, 4]])), lat(3, &[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(saturation_index(&lat(3, &[&[2, 2, 0], &[0, 4, 4]])), BigInt::from(8));
    }

    #[test]
    fn direct_summand_examples() {
        assert!(is_direct_summand(&lat(2, &[&[1, 2]])));
        assert!(!is_direct_summand(&lat(2, &[&[2, 4]])));
        assert!(is_direct_summand(&Lattice::full(4)));
        assert!(is_direct_summand(&Lattice::zero(3)));
    }

    #[test]
    fn dependent_basis_rejected() {
        assert_eq!(Lattice::from_i64(2, &[&[1, 2], &[2, 4]]), Err(LatticeError::DependentBasis));
        assert!(matches!(
            Lattice::from_i64(3, &[&[1, 2]]),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pushout_diagonal() {
        let id = LatticeMap::identity(1);
        let po = pushout_torsion_free(&id, &id).unwrap();
        assert_eq!(po.rank, 1);
        assert_eq!(po.from_first.compose(&id).unwrap(), po.from_second.compose(&id).unwrap());
        assert!(po.from_first.matrix()[(0, 0)].abs().is_one());
        assert_eq!(po.from_first, po.from_second);
    }

    #[test]
    fn pushout_two_three() {
        let p = LatticeMap::from_i64(1, 1, &[&[2]]).unwrap();
        let q = LatticeMap::from_i64(1, 1, &[&[3]]).unwrap();
        let po = pushout_torsion_free(&p, &q).unwrap();
        assert_eq!(po.rank, 1);
        // Up to the sign of the generator the structure maps are ·3 and ·2.
        let a = po.from_first.matrix()[(0, 0)].clone();
        let b = po.from_second.matrix()[(0, 0)].clone();
        assert_eq!(a.abs(), BigInt::from(3));
        assert_eq!(b.abs(), BigInt::from(2));
        assert_eq!(a.signum(), b.signum());
    }

    #[test]
    fn pushout_with_zero_leg() {
        let p = LatticeMap::from_i64(1, 2, &[&[1], &[0]]).unwrap();
        let q = LatticeMap::zero(1, 1);
        let po = pushout_torsion_free(&p, &q).unwrap();
        assert_eq!(po.rank, 2);
        assert!(po.from_first.compose(&p).unwrap().matrix().is_zero());
    }

    #[test]
    fn split_examples() {
        let incl = LatticeMap::from_i64(1, 2, &[&[1], &[0]]).unwrap();
        let sp = split_free_quotient(&incl).unwrap();
        assert!(sp.verify(&incl));
        assert_eq!(sp.section.source_rank(), 1);

        let doubling = LatticeMap::from_i64(1, 1, &[&[2]]).unwrap();
        assert_eq!(
            split_free_quotient(&doubling).unwrap_err(),
            LatticeError::NotFreeQuotient { factor: BigInt::from(2) }
        );

        let incl = LatticeMap::from_i64(2, 3, &[&[1, 0], &[1, 1], &[2, 3]]).unwrap();
        let sp = split_free_quotient(&incl).unwrap();
        assert!(sp.verify(&incl));
    }

    #[test]
    fn lift_trivial_center() {
        let restriction = LatticeMap::from_i64(2, 1, &[&[1, -1]]).unwrap();
        let lift = lift_torus_map(&restriction, &LatticeMap::identity(2)).unwrap();
        assert_eq!(lift, restriction);
    }

    #[test]
    fn lift_torsion_cokernel() {
        let restriction = LatticeMap::identity(1);
        let ext = LatticeMap::from_i64(1, 1, &[&[3]]).unwrap();
        assert!(matches!(lift_torus_map(&restriction, &ext), Err(LatticeError::NotFreeQuotient { .. })));
    }

    /// Brute force: every `c × cover` matrix with entries in [-2, 2].
    fn brute_lifts(
        restriction: &LatticeMap,
        extension: &LatticeMap,
        corner: &CornerConstraint,
    ) -> Vec<IntMatrix> {
        let (c, cover) = (restriction.target_rank(), extension.target_rank());
        let cells = c * cover;
        let mut found = Vec::new();
        let total = 5usize.pow(cells as u32);
        for code in 0..total {
            let mut x = code;
            let mut m = IntMatrix::zeros(c, cover);
            for i in 0..c {
                for j in 0..cover {
                    m[(i, j)] = BigInt::from((x % 5) as i64 - 2);
                    x /= 5;
                }
            }
            if m.mul(extension.matrix()) != *restriction.matrix() {
                continue;
            }
            let got = corner.from_center.matrix().mul(&m);
            if congruent(&got, corner.from_cover.matrix(), &corner.moduli) {
                found.push(m);
            }
        }
        found
    }

    #[test]
    fn lift_rank_one_center_matches_search() {
        // T has rank 1, T' = T x Z has rank 2, C has rank 2; the corner
        // Z/3 records the finite intersection of the center with the derived group.
        let extension = LatticeMap::from_i64(1, 2, &[&[1], &[0]]).unwrap();
        let restriction = LatticeMap::from_i64(1, 2, &[&[1], &[1]]).unwrap();
        let corner = CornerConstraint {
            from_center: LatticeMap::from_i64(2, 1, &[&[1, 0]]).unwrap(),
            from_cover: LatticeMap::from_i64(2, 1, &[&[1, 2]]).unwrap(),
            moduli: vec![BigInt::from(3)],
        };
        let oracle = brute_lifts(&restriction, &extension, &corner);
        assert!(!oracle.is_empty());
        let lift = lift_torus_map_with_corner(&restriction, &extension, &corner).unwrap();
        assert_eq!(lift.compose(&extension).unwrap(), restriction);
        let got = corner.from_center.compose(&lift).unwrap();
        assert!(congruent(got.matrix(), corner.from_cover.matrix(), &corner.moduli));
    }

    #[test]
    fn lift_inconsistent_corner() {
        let extension = LatticeMap::from_i64(1, 2, &[&[1], &[0]]).unwrap();
        let restriction = LatticeMap::from_i64(1, 1, &[&[1]]).unwrap();
        let corner = CornerConstraint {
            from_center: LatticeMap::from_i64(1, 1, &[&[1]]).unwrap(),
            from_cover: LatticeMap::from_i64(2, 1, &[&[2, 0]]).unwrap(),
            moduli: vec![BigInt::from(3)],
        };
        assert!(matches!(
            lift_torus_map_with_corner(&restriction, &extension, &corner),
            Err(LatticeError::InconsistentDiagram(_))
        ));
    }

    #[test]
    fn lattice_json_shape() {
        let l = lat(2, &[&[2, 4]]);
        let js = serde_json::to_string(&l).unwrap();
        assert_eq!(js, r#"{"ambient_rank":2,"basis":[["2","4"]]}"#);
        let back: Lattice = serde_json::from_str(&js).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Lattice>(r#"{"ambient_rank":2,"basis":[],"x":1}"#).is_err());
    }

    #[test]
    fn relative_index_matches_invariants() {
        let l = lat(3, &[&[2, 2, 0], &[0, 4, 4]]);
        assert_eq!(relative_index(&saturate(&l), &l), Some(BigInt::from(8)));
    }
}
