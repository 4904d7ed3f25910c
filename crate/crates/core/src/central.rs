//! Central elements on both sides of the duality: the class-sum elements
//! `a_{ρ,N}` and `q_{ρ,N}`, the invariants `I_ρ` and `J_ρ` of the symmetric
//! algebra, and exact checks that `σ(I_ρ)` and `σ(J_ρ)` act on the tensor
//! space like the corresponding group-algebra elements.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{q_unit, sign_of, sym_product, sym_product_of_linear, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial};
use crate::error::{Error, Result};
use crate::groups::{
    permutation_algebra_matrix, sergeev_algebra_matrix, Permutation, PermutationAlgebraElement, SergeevAlgebraElement,
    SergeevElement,
};
use crate::symmetrization::sigma;
use crate::tensor::{matrix_of_unit, matrix_of_words, ExactMatrix, TensorSpace};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerPartition(Vec<usize>);

impl IntegerPartition {
    /// Sorts the parts into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `k`, parts in decreasing lexicographic order.
    pub fn of_weight(k: usize) -> Vec<IntegerPartition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            if rem == 0 {
                out.push(IntegerPartition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with `|ρ| <= n`, by increasing weight (the empty
    /// partition first).
    pub fn up_to(n: usize) -> Vec<IntegerPartition> {
        (0..=n).flat_map(Self::of_weight).collect()
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Parses `"r1,r2,..."`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("{s:?}: {p:?} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_fits(rho: &IntegerPartition, n: usize) -> Result<()> {
    if rho.weight() > n {
        return Err(Error::PartitionTooLarge { weight: rho.weight(), factors: n });
    }
    Ok(())
}

/// Sequences of `k` pairwise distinct values in `1..=n`.
fn injective_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, k, &mut cur, &mut used, &mut out);
    out
}

/// Splits a tuple into consecutive cycles of lengths `ρ_1, ρ_2, ...`.
fn cycles_of(rho: &IntegerPartition, tuple: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(rho.parts().len());
    let mut start = 0;
    for &p in rho.parts() {
        out.push(tuple[start..start + p].to_vec());
        start += p;
    }
    out
}

/// `a_{ρ,N} = Σ_ī (i_1 ... i_{ρ_1})(...)...` over injective `ī`.
pub fn a_rho(rho: &IntegerPartition, n: usize) -> Result<PermutationAlgebraElement> {
    check_fits(rho, n)?;
    a_rho_unchecked(rho, n)
}

/// As [`a_rho`] without the `|ρ| <= N` guard; the sum is empty when `|ρ| > N`.
pub fn a_rho_unchecked(rho: &IntegerPartition, n: usize) -> Result<PermutationAlgebraElement> {
    let mut out = FormalSum::zero();
    for tuple in injective_tuples(n, rho.weight()) {
        let tau = Permutation::from_cycles(n, &cycles_of(rho, &tuple))?;
        out.add_term(tau, Coeff::one());
    }
    Ok(out)
}

/// `q_{ρ,N} = Σ_ī Σ_{α ⊆ {i_1..i_k}} a_α (cycles) a_α^{-1}`.
pub fn q_rho(rho: &IntegerPartition, n: usize) -> Result<SergeevAlgebraElement> {
    check_fits(rho, n)?;
    q_rho_unchecked(rho, n)
}

pub fn q_rho_unchecked(rho: &IntegerPartition, n: usize) -> Result<SergeevAlgebraElement> {
    let k = rho.weight();
    let mut out = FormalSum::zero();
    for tuple in injective_tuples(n, k) {
        let tau = SergeevElement::from_perm(Permutation::from_cycles(n, &cycles_of(rho, &tuple))?);
        let mut values = tuple.clone();
        values.sort_unstable();
        for mask in 0u32..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| values[b]).collect();
            let a = SergeevElement::a_subset(n, &subset);
            out.add_term(a.mul(&tau).mul(&a.inverse()), Coeff::one());
        }
    }
    Ok(out)
}

/// Sign conventions for the invariants; anything but `Standard` is a
/// deliberate perturbation used as a negative control.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantConvention {
    #[default]
    Standard,
    /// Drops the sign `(-1)^{p_{i_2} + ... + p_{i_k}}`.
    UnsignedTrace,
    /// Runs the `J_k` tuple indices over `1..=n` only.
    HalfRange,
}

fn cyclic_sign(spec: &SpaceSpec, tuple: &[usize], conv: InvariantConvention) -> i32 {
    if conv == InvariantConvention::UnsignedTrace {
        return 1;
    }
    sign_of(tuple[1..].iter().map(|&i| usize::from(spec.parity(i))).sum())
}

fn all_tuples(range: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=range).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// `I_k = Σ_ī (-1)^{p_{i_2}+...+p_{i_k}} E_{i_1 i_2} E_{i_2 i_3} ... E_{i_k i_1}` in S.
pub fn i_k(spec: &SpaceSpec, k: usize) -> FormalSum<SymMonomial> {
    i_k_with(spec, k, InvariantConvention::Standard)
}

pub fn i_k_with(spec: &SpaceSpec, k: usize, conv: InvariantConvention) -> FormalSum<SymMonomial> {
    if k == 0 {
        return FormalSum::basis(SymMonomial::one());
    }
    let mut out = FormalSum::zero();
    for t in all_tuples(spec.dim(), k) {
        let units: Vec<MatrixUnit> = (0..k).map(|q| MatrixUnit::new(t[q], t[(q + 1) % k])).collect();
        if let Some((m, s)) = crate::algebra::koszul_sort(&units, |u| u.is_odd(spec)) {
            let mono = SymMonomial::canonical(spec, m).expect("sorted");
            out.add_term(mono, Coeff::from(s * cyclic_sign(spec, &t, conv)));
        }
    }
    out
}

/// `I_ρ = I_{ρ_1} ... I_{ρ_l}`.
pub fn i_rho(spec: &SpaceSpec, rho: &IntegerPartition) -> FormalSum<SymMonomial> {
    i_rho_with(spec, rho, InvariantConvention::Standard)
}

pub fn i_rho_with(spec: &SpaceSpec, rho: &IntegerPartition, conv: InvariantConvention) -> FormalSum<SymMonomial> {
    rho.parts()
        .iter()
        .fold(FormalSum::basis(SymMonomial::one()), |acc, &k| sym_product(spec, &acc, &i_k_with(spec, k, conv)))
}

/// `J_k = Σ_ī (-1)^{p_{i_2}+...+p_{i_k}} F_{i_1 i_2} ... F_{i_k i_1}`, indices in
/// `1..=2n`, expanded in S(gl(n|n)).
pub fn j_k(spec: &SpaceSpec, k: usize) -> Result<FormalSum<SymMonomial>> {
    j_k_with(spec, k, InvariantConvention::Standard)
}

pub fn j_k_with(spec: &SpaceSpec, k: usize, conv: InvariantConvention) -> Result<FormalSum<SymMonomial>> {
    spec.require_queer()?;
    if k == 0 {
        return Ok(FormalSum::basis(SymMonomial::one()));
    }
    let range = if conv == InvariantConvention::HalfRange { spec.n() } else { spec.dim() };
    let mut out = FormalSum::zero();
    for t in all_tuples(range, k) {
        let factors = (0..k).map(|q| q_unit(spec, t[q], t[(q + 1) % k])).collect::<Result<Vec<_>>>()?;
        let prod = sym_product_of_linear(spec, &factors);
        out.add_scaled(&prod, &Coeff::from(cyclic_sign(spec, &t, conv)));
    }
    Ok(out)
}

pub fn j_rho(spec: &SpaceSpec, rho: &IntegerPartition) -> Result<FormalSum<SymMonomial>> {
    j_rho_with(spec, rho, InvariantConvention::Standard)
}

pub fn j_rho_with(spec: &SpaceSpec, rho: &IntegerPartition, conv: InvariantConvention) -> Result<FormalSum<SymMonomial>> {
    let mut acc = FormalSum::basis(SymMonomial::one());
    for &k in rho.parts() {
        acc = sym_product(spec, &acc, &j_k_with(spec, k, conv)?);
    }
    Ok(acc)
}

/// Outcome of one exact matrix comparison.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub spec: SpaceSpec,
    pub factors: usize,
    pub rho: IntegerPartition,
    pub convention: InvariantConvention,
    pub pass: bool,
    pub lhs: ExactMatrix,
    pub rhs: ExactMatrix,
}

/// Options for the class-sum comparisons.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub convention: InvariantConvention,
    /// Permit `|ρ| > N`; the group side is then the empty sum.
    pub allow_oversized: bool,
}

/// Compares the action of `a_{ρ,N}` with that of `σ(I_ρ)` on `(C^{m|n})^{⊗N}`.
pub fn verify_thm24(spec: &SpaceSpec, n: usize, rho: &IntegerPartition) -> Result<ComparisonReport> {
    verify_thm24_with(spec, n, rho, VerifyOptions::default())
}

pub fn verify_thm24_with(spec: &SpaceSpec, n: usize, rho: &IntegerPartition, opts: VerifyOptions) -> Result<ComparisonReport> {
    if !opts.allow_oversized {
        check_fits(rho, n)?;
    }
    let space = TensorSpace::new(*spec, n);
    let lhs = permutation_algebra_matrix(&space, &a_rho_unchecked(rho, n)?);
    let u = sigma(spec, &i_rho_with(spec, rho, opts.convention));
    let rhs = matrix_of_words(&space, &u);
    Ok(ComparisonReport {
        spec: *spec,
        factors: n,
        rho: rho.clone(),
        convention: opts.convention,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Compares the action of `q_{ρ,N}` with that of `σ(J_ρ)` on `(C^{n|n})^{⊗N}`.
pub fn verify_thm25(n: usize, factors: usize, rho: &IntegerPartition) -> Result<ComparisonReport> {
    verify_thm25_with(n, factors, rho, VerifyOptions::default())
}

pub fn verify_thm25_with(n: usize, factors: usize, rho: &IntegerPartition, opts: VerifyOptions) -> Result<ComparisonReport> {
    let spec = SpaceSpec::queer(n)?;
    if !opts.allow_oversized {
        check_fits(rho, factors)?;
    }
    let space = TensorSpace::new(spec, factors);
    let lhs = sergeev_algebra_matrix(&space, &q_rho_unchecked(rho, factors)?)?;
    let u = sigma(&spec, &j_rho_with(&spec, rho, opts.convention)?);
    let rhs = matrix_of_words(&space, &u);
    Ok(ComparisonReport {
        spec,
        factors,
        rho: rho.clone(),
        convention: opts.convention,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityKind {
    Symmetric,
    Sergeev,
}

/// Matrices of the group generators: adjacent transpositions, plus `a_k` and
/// `ε` for the Sergeev group.
pub fn group_generator_matrices(space: &TensorSpace, which: DualityKind) -> Result<Vec<ExactMatrix>> {
    let n = space.factors;
    let mut out = Vec::new();
    match which {
        DualityKind::Symmetric => {
            for k in 1..n {
                let t = Permutation::transposition(n, k, k + 1)?;
                out.push(permutation_algebra_matrix(space, &FormalSum::basis(t)));
            }
        }
        DualityKind::Sergeev => {
            let mut gens: Vec<SergeevElement> = Vec::new();
            for k in 1..n {
                gens.push(SergeevElement::from_perm(Permutation::transposition(n, k, k + 1)?));
            }
            for k in 1..=n {
                gens.push(SergeevElement::a_gen(n, k));
            }
            gens.push(SergeevElement::epsilon(n));
            for g in gens {
                out.push(sergeev_algebra_matrix(space, &FormalSum::basis(g))?);
            }
        }
    }
    Ok(out)
}

/// Matrices of `γ_N(E_ab)` for all units, or of `γ_N(F_ij)` for Q(n).
pub fn algebra_generator_matrices(space: &TensorSpace, which: DualityKind) -> Result<Vec<ExactMatrix>> {
    let spec = space.spec;
    match which {
        DualityKind::Symmetric => Ok(spec.units().map(|u| matrix_of_unit(space, u)).collect()),
        DualityKind::Sergeev => {
            spec.require_queer()?;
            let mut out = Vec::new();
            for i in 1..=spec.n() {
                for j in 1..=spec.dim() {
                    let f = q_unit(&spec, i, j)?;
                    let mut m = ExactMatrix::zero(space.dim());
                    for (u, _) in &f {
                        m = m.add(&matrix_of_unit(space, *u));
                    }
                    out.push(m);
                }
            }
            Ok(out)
        }
    }
}

/// True iff `x` commutes with every `γ_N` generator and every `π` generator
/// of the chosen side.
pub fn centrality_check(x: &ExactMatrix, space: &TensorSpace, which: DualityKind) -> Result<bool> {
    let alg = algebra_generator_matrices(space, which)?;
    let grp = group_generator_matrices(space, which)?;
    Ok(alg.iter().chain(grp.iter()).all(|g| x.commutes_with(g)))
}
