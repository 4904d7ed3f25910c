//! The tensor space `(C^{m|n})^{⊗N}`, the vector representation of U(gl(m|n))
//! on it, the single-use tree action of S(gl(m|n)), and exact matrices of
//! these actions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{sign_of, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word};
use crate::weyl::{self, SuperVariable};

/// `e_{i_1} ⊗ ... ⊗ e_{i_N}`, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTensor(pub Vec<usize>);

impl BasisTensor {
    pub fn new(indices: Vec<usize>) -> Self {
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn parity(&self, spec: &SpaceSpec) -> u8 {
        self.0.iter().fold(0, |acc, &i| acc ^ spec.parity(i))
    }
}

impl fmt::Display for BasisTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

pub type TensorSum = FormalSum<BasisTensor>;

/// The tensor power `(C^{m|n})^{⊗N}` with its lexicographic basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    pub spec: SpaceSpec,
    pub factors: usize,
}

impl TensorSpace {
    pub fn new(spec: SpaceSpec, factors: usize) -> Self {
        Self { spec, factors }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim().pow(self.factors as u32)
    }

    /// Position of a basis tensor in lexicographic order.
    pub fn index_of(&self, v: &BasisTensor) -> usize {
        let d = self.spec.dim();
        v.0.iter().fold(0, |acc, &i| acc * d + (i - 1))
    }

    pub fn tensor_at(&self, mut idx: usize) -> BasisTensor {
        let d = self.spec.dim();
        let mut out = vec![0; self.factors];
        for slot in (0..self.factors).rev() {
            out[slot] = idx % d + 1;
            idx /= d;
        }
        BasisTensor(out)
    }

    pub fn basis(&self) -> impl Iterator<Item = BasisTensor> + '_ {
        (0..self.dim()).map(|k| self.tensor_at(k))
    }

    /// Parity of the basis tensor at position `idx`.
    pub fn parity_at(&self, idx: usize) -> u8 {
        self.tensor_at(idx).parity(&self.spec)
    }
}

/// Action of `E_ab` on a basis tensor: the sum over slots holding `b`, each
/// replaced by `a`, with the Koszul sign of moving `E_ab` past the slots to
/// its left.
pub fn act_unit(spec: &SpaceSpec, e: MatrixUnit, v: &BasisTensor) -> TensorSum {
    let pe = usize::from(e.parity(spec));
    let mut out = FormalSum::zero();
    let mut passed = 0usize;
    for (t, &i) in v.0.iter().enumerate() {
        if i == e.col {
            let mut w = v.0.clone();
            w[t] = e.row;
            out.add_term(BasisTensor(w), Coeff::from(sign_of(pe * passed)));
        }
        passed += usize::from(spec.parity(i));
    }
    out
}

pub fn act_unit_sum(spec: &SpaceSpec, e: MatrixUnit, v: &TensorSum) -> TensorSum {
    v.map_linear(|b| act_unit(spec, e, b))
}

/// Action of a word: the rightmost unit acts first.
pub fn act_word(spec: &SpaceSpec, w: &Word, v: &TensorSum) -> TensorSum {
    let mut cur = v.clone();
    for &u in w.units().iter().rev() {
        cur = act_unit_sum(spec, u, &cur);
        if cur.is_zero() {
            break;
        }
    }
    cur
}

/// Action of an element of U(gl(m|n)) given as a sum of words.
pub fn act_words(spec: &SpaceSpec, u: &FormalSum<Word>, v: &TensorSum) -> TensorSum {
    let mut out = FormalSum::zero();
    for (w, c) in u {
        out.add_scaled(&act_word(spec, w, v), c);
    }
    out
}

/// The tree action of a monomial of S(gl(m|n)): units act right to left and
/// every tensor slot may be rewritten at most once along a path.
pub fn act_sym_tree(spec: &SpaceSpec, a: &SymMonomial, v: &BasisTensor) -> TensorSum {
    let n = v.0.len();
    if a.degree() > n {
        return FormalSum::zero();
    }
    // (indices, used-slot mask) -> signed multiplicity
    let mut layer: BTreeMap<(Vec<usize>, Vec<bool>), Coeff> = BTreeMap::new();
    layer.insert((v.0.clone(), vec![false; n]), Coeff::one());
    for &e in a.units().iter().rev() {
        let pe = usize::from(e.parity(spec));
        let mut next: BTreeMap<(Vec<usize>, Vec<bool>), Coeff> = BTreeMap::new();
        for ((idx, used), c) in &layer {
            let mut passed = 0usize;
            for t in 0..n {
                if !used[t] && idx[t] == e.col {
                    let mut idx2 = idx.clone();
                    idx2[t] = e.row;
                    let mut used2 = used.clone();
                    used2[t] = true;
                    let entry = next.entry((idx2, used2)).or_insert_with(Coeff::zero);
                    *entry += c * sign_of(pe * passed);
                }
                passed += usize::from(spec.parity(idx[t]));
            }
        }
        next.retain(|_, c| !c.is_zero());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    layer.into_iter().map(|((idx, _), c)| (BasisTensor(idx), c)).collect()
}

pub fn act_sym_sum(spec: &SpaceSpec, a: &FormalSum<SymMonomial>, v: &BasisTensor) -> TensorSum {
    let mut out = FormalSum::zero();
    for (m, c) in a {
        out.add_scaled(&act_sym_tree(spec, m, v), c);
    }
    out
}

/// Sparse square matrix over exact rationals on a tensor space. Entry
/// `(r, c)` is the coefficient of basis vector `r` in the image of basis
/// vector `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries.insert((i, i), BigRational::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.dim);
        for (&(r, c), v) in &self.entries {
            out.add_to(r, c, v * k);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, -v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut rows_of_other: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); self.dim];
        for (&(r, c), v) in &other.entries {
            rows_of_other[r].push((c, v));
        }
        let mut out = Self::zero(self.dim);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &rows_of_other[k] {
                out.add_to(r, c, a * b);
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Splits into components by entry parity `p(row) + p(col)` (even, odd).
    pub fn graded_parts(&self, space: &TensorSpace) -> (Self, Self) {
        let parities: Vec<u8> = (0..self.dim).map(|i| space.parity_at(i)).collect();
        let mut even = Self::zero(self.dim);
        let mut odd = Self::zero(self.dim);
        for (&(r, c), v) in &self.entries {
            if parities[r] ^ parities[c] == 0 {
                even.entries.insert((r, c), v.clone());
            } else {
                odd.entries.insert((r, c), v.clone());
            }
        }
        (even, odd)
    }

    /// Row-major vectorization: `(r, c) -> r * dim + c`.
    pub fn vectorize(&self) -> BTreeMap<usize, BigRational> {
        self.entries.iter().map(|(&(r, c), v)| (r * self.dim + c, v.clone())).collect()
    }

    pub fn from_vectorized(dim: usize, v: &BTreeMap<usize, BigRational>) -> Self {
        let mut m = Self::zero(dim);
        for (&k, x) in v {
            m.add_to(k / dim, k % dim, x.clone());
        }
        m
    }

    /// Stable textual digest input: `r c value;` per nonzero entry.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("dim={};", self.dim);
        for (&(r, c), v) in &self.entries {
            s.push_str(&format!("{r} {c} {v};"));
        }
        s
    }

    /// `[{"row": [...], "col": [...], "value": "p/q"}, ...]` with basis tensors
    /// spelled out.
    pub fn to_json_value(&self, space: &TensorSpace) -> serde_json::Value {
        #[derive(Serialize)]
        struct Triplet {
            row: Vec<usize>,
            col: Vec<usize>,
            value: String,
        }
        let ts: Vec<Triplet> = self
            .entries
            .iter()
            .map(|(&(r, c), v)| Triplet {
                row: space.tensor_at(r).0,
                col: space.tensor_at(c).0,
                value: v.to_string(),
            })
            .collect();
        serde_json::to_value(ts).expect("triplets serialize")
    }
}

/// Matrix of a linear action given on basis tensors: column `j` holds the
/// expansion of the image of the `j`-th basis tensor.
pub fn matrix_of(space: &TensorSpace, action: impl Fn(&BasisTensor) -> TensorSum) -> ExactMatrix {
    let mut m = ExactMatrix::zero(space.dim());
    for (j, v) in space.basis().enumerate() {
        for (w, c) in &action(&v) {
            m.add_to(space.index_of(w), j, BigRational::from_integer(c.clone()));
        }
    }
    m
}

pub fn matrix_of_words(space: &TensorSpace, u: &FormalSum<Word>) -> ExactMatrix {
    let spec = space.spec;
    matrix_of(space, |v| act_words(&spec, u, &FormalSum::basis(v.clone())))
}

pub fn matrix_of_unit(space: &TensorSpace, e: MatrixUnit) -> ExactMatrix {
    let spec = space.spec;
    matrix_of(space, |v| act_unit(&spec, e, v))
}

pub fn matrix_of_sym(space: &TensorSpace, a: &FormalSum<SymMonomial>) -> ExactMatrix {
    let spec = space.spec;
    matrix_of(space, |v| act_sym_sum(&spec, a, v))
}

/// An element tested by [`ratio_check`]: either in U (paired with `∂`) or in S
/// (paired with the tree action and `∂̃`).
#[derive(Clone, Debug)]
pub enum RatioElement {
    Enveloping(FormalSum<Word>),
    Symmetric(FormalSum<SymMonomial>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// `entry = sign * evaluation` for every element with a nonzero side.
    Constant(i32),
    /// All entries and evaluations vanish.
    Skipped,
    /// No single sign fits; carries the offending element index.
    Violation { element: usize, entry: BigInt, evaluation: BigInt },
}

#[derive(Clone, Debug)]
pub struct RatioReport {
    pub outcomes: Vec<((BasisTensor, BasisTensor), PairOutcome)>,
}

impl RatioReport {
    pub fn passed(&self) -> bool {
        !self.outcomes.iter().any(|(_, o)| matches!(o, PairOutcome::Violation { .. }))
    }

    pub fn constant_pairs(&self) -> usize {
        self.outcomes.iter().filter(|(_, o)| matches!(o, PairOutcome::Constant(_))).count()
    }

    pub fn skipped_pairs(&self) -> usize {
        self.outcomes.iter().filter(|(_, o)| matches!(o, PairOutcome::Skipped)).count()
    }
}

/// For each pair `(i⃗, j⃗)` compares the matrix entry
/// `(a(e_{j_1}⊗...⊗e_{j_N}), e_{i_1}⊗...⊗e_{i_N})` with
/// `∂(a)(x_{i_1 j_1}...x_{i_N j_N})` at `x = Id` (or `∂̃` for elements of S)
/// and checks that one sign relates them across all supplied elements.
///
/// When `pairs` is `None` every pair of basis tensors is tested.
pub fn ratio_check(
    space: &TensorSpace,
    pairs: Option<&[(BasisTensor, BasisTensor)]>,
    elements: &[RatioElement],
) -> RatioReport {
    let spec = space.spec;
    let all_pairs: Vec<(BasisTensor, BasisTensor)>;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            all_pairs = space
                .basis()
                .flat_map(|i| space.basis().map(move |j| (i.clone(), j)))
                .collect();
            &all_pairs
        }
    };

    let ops: Vec<weyl::WeylOperator> = elements
        .iter()
        .map(|el| match el {
            RatioElement::Enveloping(u) => weyl::partial_word_sum(&spec, u),
            RatioElement::Symmetric(a) => weyl::tilde_partial_sum(&spec, a),
        })
        .collect();

    let mut outcomes = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        let vars: Vec<SuperVariable> = i.0.iter().zip(&j.0).map(|(&a, &b)| SuperVariable::new(a, b)).collect();
        let poly = weyl::monomial_polynomial(&spec, &vars);
        let mut sign: Option<i32> = None;
        let mut outcome = None;
        for (k, (el, op)) in elements.iter().zip(&ops).enumerate() {
            let image = match el {
                RatioElement::Enveloping(u) => act_words(&spec, u, &FormalSum::basis(j.clone())),
                RatioElement::Symmetric(a) => act_sym_sum(&spec, a, j),
            };
            let entry = image.coeff(i);
            let evaluation = weyl::evaluate_at_identity(&weyl::apply(&spec, op, &poly));
            if entry.is_zero() && evaluation.is_zero() {
                continue;
            }
            let fits = |s: i32| entry == &evaluation * s;
            let candidate = if entry.abs() == evaluation.abs() {
                if entry == evaluation {
                    Some(1)
                } else {
                    Some(-1)
                }
            } else {
                None
            };
            match (sign, candidate) {
                (Some(s), _) if fits(s) => {}
                (None, Some(c)) => sign = Some(c),
                _ => {
                    outcome = Some(PairOutcome::Violation { element: k, entry, evaluation });
                    break;
                }
            }
        }
        let outcome = outcome.unwrap_or(match sign {
            Some(s) => PairOutcome::Constant(s),
            None => PairOutcome::Skipped,
        });
        outcomes.push(((i.clone(), j.clone()), outcome));
    }
    RatioReport { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::super_bracket;
    use crate::symmetrization::sigma;

    fn gl11() -> SpaceSpec {
        SpaceSpec::new(1, 1).unwrap()
    }

    fn t(ix: &[usize]) -> BasisTensor {
        BasisTensor(ix.to_vec())
    }

    fn e(r: usize, c: usize) -> MatrixUnit {
        MatrixUnit::new(r, c)
    }

    fn tsum(terms: &[(&[usize], i64)]) -> TensorSum {
        terms.iter().map(|(ix, c)| (t(ix), Coeff::from(*c))).collect()
    }

    #[test]
    fn act_unit_examples() {
        let s = gl11();
        assert_eq!(act_unit(&s, e(2, 1), &t(&[1, 1])), tsum(&[(&[2, 1], 1), (&[1, 2], 1)]));
        assert_eq!(act_unit(&s, e(2, 1), &t(&[2, 1])), tsum(&[(&[2, 2], -1)]));
        assert!(act_unit(&s, e(1, 1), &t(&[2, 2])).is_zero());
    }

    #[test]
    fn act_word_examples() {
        let s = gl11();
        let v = FormalSum::basis(t(&[1, 1]));
        assert_eq!(act_word(&s, &Word::empty(), &v), v);
        assert_eq!(act_word(&s, &Word::new(vec![e(1, 1), e(1, 1)]), &v), tsum(&[(&[1, 1], 4)]));
        let sq = SymMonomial::canonical(&s, vec![e(1, 1), e(1, 1)]).unwrap();
        let u = sigma(&s, &FormalSum::basis(sq));
        assert_eq!(act_words(&s, &u, &v), tsum(&[(&[1, 1], 2)]));
    }

    #[test]
    fn tree_action_examples() {
        let s = gl11();
        let m1 = SymMonomial::canonical(&s, vec![e(1, 1)]).unwrap();
        assert_eq!(act_sym_tree(&s, &m1, &t(&[1])), tsum(&[(&[1], 1)]));
        let sq = SymMonomial::canonical(&s, vec![e(1, 1), e(1, 1)]).unwrap();
        assert_eq!(act_sym_tree(&s, &sq, &t(&[1, 1])), tsum(&[(&[1, 1], 2)]));
        assert!(act_sym_tree(&s, &sq, &t(&[1])).is_zero());
    }

    #[test]
    fn matrix_examples() {
        let s = gl11();
        let sp1 = TensorSpace::new(s, 1);
        assert_eq!(matrix_of(&sp1, |v| FormalSum::basis(v.clone())), ExactMatrix::identity(2));
        let m = matrix_of_unit(&sp1, e(1, 1));
        let mut want = ExactMatrix::zero(2);
        want.add_to(0, 0, BigRational::one());
        assert_eq!(m, want);
    }

    #[test]
    fn representation_property_exhaustive() {
        for (m, n, big_n) in [(1, 1, 2), (2, 1, 2), (1, 2, 2)] {
            let s = SpaceSpec::new(m, n).unwrap();
            let space = TensorSpace::new(s, big_n);
            let units: Vec<_> = s.units().collect();
            let mats: Vec<_> = units.iter().map(|&u| matrix_of_unit(&space, u)).collect();
            for (a, &x) in units.iter().enumerate() {
                for (b, &y) in units.iter().enumerate() {
                    let sgn = sign_of(usize::from(x.parity(&s) & y.parity(&s)));
                    let lhs = mats[a].mul(&mats[b]).sub(&mats[b].mul(&mats[a]).scaled(&BigRational::from_integer(sgn.into())));
                    let br = super_bracket(&s, x, y);
                    let mut rhs = ExactMatrix::zero(space.dim());
                    for (u, c) in &br {
                        rhs = rhs.add(&matrix_of_unit(&space, *u).scaled(&BigRational::from_integer(c.clone())));
                    }
                    assert_eq!(lhs, rhs, "{x} {y} at {s}^{big_n}");
                }
            }
        }
    }

    #[test]
    fn ratio_identity_element() {
        let s = gl11();
        let space = TensorSpace::new(s, 1);
        let report = ratio_check(&space, None, &[RatioElement::Enveloping(FormalSum::basis(Word::empty()))]);
        assert!(report.passed());
        for ((i, j), o) in &report.outcomes {
            if i == j {
                assert_eq!(o, &PairOutcome::Constant(1));
            } else {
                assert_eq!(o, &PairOutcome::Skipped);
            }
        }
    }
}
