//! The symmetric group S_N and the Sergeev group Se(N) = H_N ⋊ S_N, their
//! signed actions on the tensor space, and group-algebra elements.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{sign_of, Coeff, FormalSum, SpaceSpec};
use crate::error::{Error, Result};
use crate::tensor::{matrix_of, BasisTensor, ExactMatrix, TensorSpace, TensorSum};

/// A bijection of `{1, ..., N}` in one-line notation: `images[i - 1] = τ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn from_one_line(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// Product of cycles, where `(a, b, ..., z)` sends `a -> b -> ... -> z -> a`.
    /// Cycles are composed right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(n);
        for cyc in cycles.iter().rev() {
            let mut c = Self::identity(n);
            let mut seen = std::collections::HashSet::new();
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || !seen.insert(a) {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cyc:?} for N = {n}")));
                }
                c.0[a - 1] = cyc[(k + 1) % cyc.len()];
            }
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(n, &[vec![a, b]])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| t == i + 1)
    }

    /// All `N!` permutations, lexicographic in one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Sign `c` with `c · y_1 ... y_k = y_{τ(1)} ... y_{τ(k)}` in a free
/// supercommutative algebra, where `parities[i - 1] = p(y_i)`.
pub fn koszul_sign(parities: &[u8], tau: &Permutation) -> Result<i32> {
    if parities.len() != tau.len() {
        return Err(Error::LengthMismatch { expected: tau.len(), got: parities.len() });
    }
    let k = tau.len();
    let mut inv = 0usize;
    for s in 1..=k {
        for t in s + 1..=k {
            let (a, b) = (tau.apply(s), tau.apply(t));
            if a > b && parities[a - 1] == 1 && parities[b - 1] == 1 {
                inv += 1;
            }
        }
    }
    Ok(sign_of(inv))
}

/// `π(τ)(v_1 ⊗ ... ⊗ v_N) = ± v_{τ^{-1}(1)} ⊗ ... ⊗ v_{τ^{-1}(N)}` with the
/// Koszul sign of the rearrangement.
pub fn perm_act(spec: &SpaceSpec, tau: &Permutation, v: &BasisTensor) -> TensorSum {
    let inv = tau.inverse();
    let parities: Vec<u8> = v.indices().iter().map(|&i| spec.parity(i)).collect();
    let sign = koszul_sign(&parities, &inv).expect("lengths agree");
    let w: Vec<usize> = (1..=v.indices().len()).map(|t| v.indices()[inv.apply(t) - 1]).collect();
    FormalSum::term(BasisTensor::new(w), Coeff::from(sign))
}

/// Normal form `ε^c a_1^{b_1} ... a_N^{b_N} τ` of an element of Se(N).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SergeevElement {
    pub eps: bool,
    pub a: Vec<bool>,
    pub tau: Permutation,
}

impl SergeevElement {
    pub fn identity(n: usize) -> Self {
        Self { eps: false, a: vec![false; n], tau: Permutation::identity(n) }
    }

    pub fn epsilon(n: usize) -> Self {
        Self { eps: true, ..Self::identity(n) }
    }

    /// The generator `a_k` (1-based).
    pub fn a_gen(n: usize, k: usize) -> Self {
        let mut g = Self::identity(n);
        g.a[k - 1] = true;
        g
    }

    pub fn from_perm(tau: Permutation) -> Self {
        let n = tau.len();
        Self { eps: false, a: vec![false; n], tau }
    }

    /// `a_{α_1} ... a_{α_s}` for an increasing subset, already in normal form.
    pub fn a_subset(n: usize, subset: &[usize]) -> Self {
        let mut g = Self::identity(n);
        for &k in subset {
            g.a[k - 1] = true;
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// Normal form of `self · other`.
    pub fn mul(&self, other: &SergeevElement) -> SergeevElement {
        assert_eq!(self.degree(), other.degree());
        let n = self.degree();
        // a^{b1} · (τ1 a^{b2} τ1^{-1}) as a sequence of generator indices
        let mut seq: Vec<usize> = (1..=n).filter(|&k| self.a[k - 1]).collect();
        seq.extend((1..=n).filter(|&k| other.a[k - 1]).map(|k| self.tau.apply(k)));
        let (bits, eps_from_a) = reduce_clifford(n, &seq);
        SergeevElement {
            eps: self.eps ^ other.eps ^ eps_from_a,
            a: bits,
            tau: self.tau.compose(&other.tau),
        }
    }

    pub fn inverse(&self) -> SergeevElement {
        let n = self.degree();
        // (ε^c a^b τ)^{-1} = τ^{-1} (a^b)^{-1} ε^c, with a_k^{-1} = ε a_k
        let mut acc = SergeevElement::from_perm(self.tau.inverse());
        for k in (1..=n).rev().filter(|&k| self.a[k - 1]) {
            acc = acc.mul(&SergeevElement::a_gen(n, k)).mul(&SergeevElement::epsilon(n));
        }
        if self.eps {
            acc = acc.mul(&SergeevElement::epsilon(n));
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        !self.eps && self.a.iter().all(|b| !b) && self.tau.is_identity()
    }
}

impl fmt::Display for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps {
            write!(f, "ε·")?;
        }
        for (k, &b) in self.a.iter().enumerate() {
            if b {
                write!(f, "a{}·", k + 1)?;
            }
        }
        write!(f, "{}", self.tau)
    }
}

/// Sorts a product of generators `a_{k}` using `a_p a_q = ε a_q a_p` and
/// `a_p² = ε`. Returns the exponent bits and whether a net `ε` remains.
fn reduce_clifford(n: usize, seq: &[usize]) -> (Vec<bool>, bool) {
    let mut v = seq.to_vec();
    let mut eps = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            eps = !eps;
            j -= 1;
        }
    }
    let mut bits = vec![false; n];
    for k in v {
        if bits[k - 1] {
            eps = !eps;
        }
        bits[k - 1] = !bits[k - 1];
    }
    (bits, eps)
}

/// `P` on `C^{n|n}`: `e_j -> -e_{j+n}` for `j <= n`, `e_j -> e_{j-n}` otherwise.
fn p_image(spec: &SpaceSpec, j: usize) -> (usize, i32) {
    let n = spec.n();
    if j <= n {
        (j + n, -1)
    } else {
        (j - n, 1)
    }
}

/// `π(a_k)`: the odd operator `P` in slot `k`, with the Koszul sign of passing
/// the slots to its left.
fn a_act(spec: &SpaceSpec, k: usize, v: &BasisTensor) -> (BasisTensor, i32) {
    let idx = v.indices();
    let passed: usize = idx[..k - 1].iter().map(|&i| usize::from(spec.parity(i))).sum();
    let (j, s) = p_image(spec, idx[k - 1]);
    let mut w = idx.to_vec();
    w[k - 1] = j;
    (BasisTensor::new(w), s * sign_of(passed))
}

/// Action of `ε^c a^b τ` on a basis tensor: `τ` first, then `a_N`, ..., `a_1`,
/// then `π(ε) = -Id`.
pub fn sergeev_act(spec: &SpaceSpec, g: &SergeevElement, v: &BasisTensor) -> Result<TensorSum> {
    spec.require_queer()?;
    if v.indices().len() != g.degree() {
        return Err(Error::LengthMismatch { expected: g.degree(), got: v.indices().len() });
    }
    let (mut w, mut sign) = match perm_act(spec, &g.tau, v).into_iter().next() {
        Some((w, c)) => (w, if c == Coeff::from(1) { 1 } else { -1 }),
        None => unreachable!("permutation images are single basis tensors"),
    };
    for k in (1..=g.degree()).rev().filter(|&k| g.a[k - 1]) {
        let (w2, s) = a_act(spec, k, &w);
        w = w2;
        sign *= s;
    }
    if g.eps {
        sign = -sign;
    }
    Ok(FormalSum::term(w, Coeff::from(sign)))
}

pub type PermutationAlgebraElement = FormalSum<Permutation>;
pub type SergeevAlgebraElement = FormalSum<SergeevElement>;

/// Matrix of an element of C[S_N].
pub fn permutation_algebra_matrix(space: &TensorSpace, x: &PermutationAlgebraElement) -> ExactMatrix {
    let spec = space.spec;
    matrix_of(space, |v| x.map_linear(|p| perm_act(&spec, p, v)))
}

/// Matrix of an element of C[Se(N)].
pub fn sergeev_algebra_matrix(space: &TensorSpace, x: &SergeevAlgebraElement) -> Result<ExactMatrix> {
    space.spec.require_queer()?;
    let spec = space.spec;
    Ok(matrix_of(space, |v| x.map_linear(|g| sergeev_act(&spec, g, v).expect("checked above"))))
}

/// Either group algebra, for callers that treat both uniformly.
#[derive(Clone, Debug)]
pub enum GroupAlgebraElement {
    Symmetric(PermutationAlgebraElement),
    Sergeev(SergeevAlgebraElement),
}

pub fn group_algebra_act(space: &TensorSpace, x: &GroupAlgebraElement) -> Result<ExactMatrix> {
    match x {
        GroupAlgebraElement::Symmetric(p) => Ok(permutation_algebra_matrix(space, p)),
        GroupAlgebraElement::Sergeev(s) => sergeev_algebra_matrix(space, s),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGroupTerm {
    coeff: String,
    eps: u8,
    a: Vec<u8>,
    perm: Vec<usize>,
}

impl GroupAlgebraElement {
    /// `[{"coeff": "...", "eps": 0|1, "a": [bits], "perm": [one-line]}, ...]`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<JsonGroupTerm> = match self {
            GroupAlgebraElement::Symmetric(x) => x
                .iter()
                .map(|(p, c)| JsonGroupTerm {
                    coeff: c.to_string(),
                    eps: 0,
                    a: vec![0; p.len()],
                    perm: p.one_line().to_vec(),
                })
                .collect(),
            GroupAlgebraElement::Sergeev(x) => x
                .iter()
                .map(|(g, c)| JsonGroupTerm {
                    coeff: c.to_string(),
                    eps: u8::from(g.eps),
                    a: g.a.iter().map(|&b| u8::from(b)).collect(),
                    perm: g.tau.one_line().to_vec(),
                })
                .collect(),
        };
        serde_json::to_value(terms).expect("group terms serialize")
    }

    /// Parses the group-element schema into C[Se(N)].
    pub fn sergeev_from_json_str(s: &str) -> Result<SergeevAlgebraElement> {
        let terms: Vec<JsonGroupTerm> = serde_json::from_str(s)?;
        let mut out = FormalSum::zero();
        for t in terms {
            let c: Coeff = t.coeff.parse().map_err(|_| Error::Malformed(format!("bad coefficient {:?}", t.coeff)))?;
            let tau = Permutation::from_one_line(t.perm)?;
            if t.a.len() != tau.len() {
                return Err(Error::LengthMismatch { expected: tau.len(), got: t.a.len() });
            }
            out.add_term(SergeevElement { eps: t.eps == 1, a: t.a.iter().map(|&b| b == 1).collect(), tau }, c);
        }
        Ok(out)
    }
}

/// Matrix of `-Id`, the image of `ε`.
pub fn minus_identity(dim: usize) -> ExactMatrix {
    ExactMatrix::identity(dim).scaled(&BigRational::from_integer((-1).into()))
}
