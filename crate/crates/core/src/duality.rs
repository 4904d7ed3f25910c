//! Exact linear algebra on operator spaces: spans of operator algebras,
//! commutants, and instance checks of the double-commutant duality between
//! the group and enveloping-algebra images.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::SpaceSpec;
use crate::central::{algebra_generator_matrices, group_generator_matrices, DualityKind};
use crate::error::Result;
use crate::tensor::{ExactMatrix, TensorSpace};

type SparseVec = BTreeMap<usize, BigRational>;

/// Incremental reduced row echelon form over the rationals. Rows are kept
/// fully reduced against each other, keyed by pivot column.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (&pivot, row) in &self.rows {
            let Some(f) = v.get(&pivot).cloned() else { continue };
            for (&c, x) in row {
                let e = v.entry(c).or_insert_with(BigRational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(&c);
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether the rank grew.
    fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead.clone();
        for x in r.values_mut() {
            *x *= &inv;
        }
        // clear the new pivot column from existing rows
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&pivot).cloned() {
                for (&c, x) in &r {
                    let e = row.entry(c).or_insert_with(BigRational::zero);
                    *e -= &f * x;
                    if e.is_zero() {
                        row.remove(&c);
                    }
                }
            }
        }
        self.rows.insert(pivot, std::mem::take(&mut r));
        true
    }

    fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of `{x : row · x = 0 for every row}` in `0..ncols`.
    fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut x = SparseVec::new();
            x.insert(free, BigRational::one());
            for (&pivot, row) in &self.rows {
                if let Some(a) = row.get(&free) {
                    x.insert(pivot, -a.clone());
                }
            }
            out.push(x);
        }
        out
    }
}

/// A subspace of `End(V)` with a canonical reduced basis under row-major
/// vectorization.
#[derive(Clone, Debug)]
pub struct MatrixSpan {
    dim: usize,
    echelon: Echelon,
}

impl MatrixSpan {
    pub fn empty(dim: usize) -> Self {
        Self { dim, echelon: Echelon::default() }
    }

    /// Linear span (not algebra closure) of the given matrices.
    pub fn linear_span(dim: usize, mats: &[ExactMatrix]) -> Self {
        let mut s = Self::empty(dim);
        for m in mats {
            s.insert(m);
        }
        s
    }

    /// Side length of the matrices.
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn insert(&mut self, m: &ExactMatrix) -> bool {
        assert_eq!(m.dim(), self.dim);
        self.echelon.insert(&m.vectorize())
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        self.echelon.contains(&m.vectorize())
    }

    pub fn basis(&self) -> Vec<ExactMatrix> {
        self.echelon.rows.values().map(|v| ExactMatrix::from_vectorized(self.dim, v)).collect()
    }

    pub fn is_subspace_of(&self, other: &MatrixSpan) -> bool {
        self.basis().iter().all(|m| other.contains(m))
    }

    pub fn equals(&self, other: &MatrixSpan) -> bool {
        self.dimension() == other.dimension() && self.is_subspace_of(other) && other.is_subspace_of(self)
    }
}

/// Span of all nonempty products of `generators`, grown until the dimension
/// stops increasing.
pub fn span_of(generators: &[ExactMatrix]) -> MatrixSpan {
    let dim = generators.first().map(ExactMatrix::dim).unwrap_or(0);
    let mut span = MatrixSpan::empty(dim);
    let mut queue: Vec<ExactMatrix> = Vec::new();
    for g in generators {
        if span.insert(g) {
            queue.push(g.clone());
        }
    }
    while let Some(m) = queue.pop() {
        for g in generators {
            let p = g.mul(&m);
            if span.insert(&p) {
                queue.push(p);
            }
        }
    }
    span
}

/// Which notion of commutation the solver imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommutantKind {
    /// `XG = GX`.
    Plain,
    /// Graded: `XG = (-1)^{p(X)p(G)} GX` for homogeneous `X`, `G`, with
    /// parities taken from the tensor-space grading.
    Super,
}

/// All `X` commuting with every element of `span`.
pub fn commutant(span: &MatrixSpan, space: &TensorSpace, kind: CommutantKind) -> MatrixSpan {
    let dim = span.matrix_dim();
    assert_eq!(dim, space.dim());
    let parities: Vec<u8> = (0..dim).map(|i| space.parity_at(i)).collect();

    // homogeneous spanning set of the constraint operators
    let mut constraints: Vec<(ExactMatrix, u8)> = Vec::new();
    for g in span.basis() {
        match kind {
            CommutantKind::Plain => constraints.push((g, 0)),
            CommutantKind::Super => {
                let (even, odd) = g.graded_parts(space);
                if !even.is_zero() {
                    constraints.push((even, 0));
                }
                if !odd.is_zero() {
                    constraints.push((odd, 1));
                }
            }
        }
    }

    // unknown x_{ab} at column a * dim + b
    let var = |a: usize, b: usize| a * dim + b;
    let mut system = Echelon::default();
    for (g, pg) in &constraints {
        let mut by_row: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); dim];
        let mut by_col: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); dim];
        for (&(r, c), v) in g.entries() {
            by_row[r].push((c, v));
            by_col[c].push((r, v));
        }
        // (XG)_{ac} = Σ_b x_ab G_bc ;  (GX)_{ac} = Σ_b G_ab x_bc
        for a in 0..dim {
            for c in 0..dim {
                let mut eq = SparseVec::new();
                for &(b, gv) in &by_col[c] {
                    let e = eq.entry(var(a, b)).or_insert_with(BigRational::zero);
                    *e += gv;
                }
                for &(b, gv) in &by_row[a] {
                    let px = parities[b] ^ parities[c];
                    let sign = if kind == CommutantKind::Super && (px & pg) == 1 { -1 } else { 1 };
                    let e = eq.entry(var(b, c)).or_insert_with(BigRational::zero);
                    *e -= gv * BigRational::from_integer(sign.into());
                }
                eq.retain(|_, v| !v.is_zero());
                if !eq.is_empty() {
                    system.insert(&eq);
                }
            }
        }
    }

    let mut out = MatrixSpan::empty(dim);
    for v in system.nullspace(dim * dim) {
        out.insert(&ExactMatrix::from_vectorized(dim, &v));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityDims {
    pub group_span: usize,
    pub algebra_span: usize,
    pub commutant_of_group: usize,
    pub commutant_of_algebra: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub factors: usize,
    pub which: DualityKind,
    pub commutant: CommutantKind,
    pub dims: DualityDims,
    pub pass: bool,
}

/// The commutant notion under which the duality holds for each pairing: the
/// symmetric-group image is even, so the plain commutant is used; the Sergeev
/// image contains the odd operators `π(a_k)`, so commutation is graded.
pub fn default_commutant_kind(which: DualityKind) -> CommutantKind {
    match which {
        DualityKind::Symmetric => CommutantKind::Plain,
        DualityKind::Sergeev => CommutantKind::Super,
    }
}

pub fn verify_duality(spec: &SpaceSpec, factors: usize, which: DualityKind) -> Result<DualityReport> {
    verify_duality_with(spec, factors, which, default_commutant_kind(which))
}

/// Checks `span(π(G)) = commutant(span(γ(U)))` and
/// `span(γ(U)) = commutant(span(π(G)))`.
pub fn verify_duality_with(
    spec: &SpaceSpec,
    factors: usize,
    which: DualityKind,
    kind: CommutantKind,
) -> Result<DualityReport> {
    if which == DualityKind::Sergeev {
        spec.require_queer()?;
    }
    let space = TensorSpace::new(*spec, factors);
    let id = ExactMatrix::identity(space.dim());

    let mut group_gens = group_generator_matrices(&space, which)?;
    group_gens.push(id.clone());
    let mut algebra_gens = algebra_generator_matrices(&space, which)?;
    algebra_gens.push(id);

    let group_span = span_of(&group_gens);
    let algebra_span = span_of(&algebra_gens);
    let comm_group = commutant(&group_span, &space, kind);
    let comm_algebra = commutant(&algebra_span, &space, kind);

    let pass = group_span.equals(&comm_algebra) && algebra_span.equals(&comm_group);
    Ok(DualityReport {
        m: spec.m(),
        n: spec.n(),
        factors,
        which,
        commutant: kind,
        dims: DualityDims {
            group_span: group_span.dimension(),
            algebra_span: algebra_span.dimension(),
            commutant_of_group: comm_group.dimension(),
            commutant_of_algebra: comm_algebra.dimension(),
        },
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{permutation_algebra_matrix, Permutation};
    use crate::algebra::FormalSum;

    fn gl11() -> SpaceSpec {
        SpaceSpec::new(1, 1).unwrap()
    }

    #[test]
    fn span_examples() {
        assert_eq!(span_of(&[ExactMatrix::identity(3)]).dimension(), 1);
        let space = TensorSpace::new(gl11(), 1);
        let gens = algebra_generator_matrices(&space, DualityKind::Symmetric).unwrap();
        assert_eq!(span_of(&gens).dimension(), 4);
        let space2 = TensorSpace::new(gl11(), 2);
        let mut g = group_generator_matrices(&space2, DualityKind::Symmetric).unwrap();
        g.push(ExactMatrix::identity(4));
        assert_eq!(span_of(&g).dimension(), 2);
    }

    #[test]
    fn commutant_examples() {
        let space = TensorSpace::new(gl11(), 1);
        let full = span_of(&algebra_generator_matrices(&space, DualityKind::Symmetric).unwrap());
        let c = commutant(&full, &space, CommutantKind::Plain);
        assert_eq!(c.dimension(), 1);
        assert!(c.contains(&ExactMatrix::identity(2)));

        let space2 = TensorSpace::new(gl11(), 2);
        let mut alg = algebra_generator_matrices(&space2, DualityKind::Symmetric).unwrap();
        alg.push(ExactMatrix::identity(4));
        let alg_span = span_of(&alg);
        let c = commutant(&alg_span, &space2, CommutantKind::Plain);
        assert_eq!(c.dimension(), 2);
        let swap = permutation_algebra_matrix(&space2, &FormalSum::basis(Permutation::transposition(2, 1, 2).unwrap()));
        assert!(c.contains(&swap));
        let cc = commutant(&c, &space2, CommutantKind::Plain);
        assert!(alg_span.is_subspace_of(&cc));
    }

    #[test]
    fn nullspace_is_exact() {
        let mut e = Echelon::default();
        let row: SparseVec = [(0, BigRational::one()), (1, BigRational::from_integer(2.into()))].into_iter().collect();
        e.insert(&row);
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: BigRational = row.iter().map(|(k, a)| a * v.get(k).cloned().unwrap_or_else(BigRational::zero)).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn duality_small() {
        let r = verify_duality(&gl11(), 1, DualityKind::Symmetric).unwrap();
        assert!(r.pass);
        assert_eq!(r.dims.group_span, 1);
        let r = verify_duality(&gl11(), 2, DualityKind::Symmetric).unwrap();
        assert!(r.pass);
        assert_eq!((r.dims.group_span, r.dims.commutant_of_algebra), (2, 2));
    }
}
