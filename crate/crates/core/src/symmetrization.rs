//! The special symmetrization `σ̃ : U(gl(m|n)) -> S(gl(m|n))` and its inverse `σ`.
//!
//! `σ̃` is computed two ways: by left-folding the star product over a word, and
//! by the closed sum over regular set partitions of the word positions. The two
//! are independent code paths and are checked against each other in tests.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{sign_of, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word};

/// `(Y_1 ... Y_k) * X`, extended linearly in the first argument.
///
/// The contraction of `X` into `Y_r` is the matrix product `Y_r X`, picking up
/// the Koszul sign of moving `X` past `Y_{r+1} ... Y_k`.
pub fn star(spec: &SpaceSpec, a: &FormalSum<SymMonomial>, x: MatrixUnit) -> FormalSum<SymMonomial> {
    let px = usize::from(x.parity(spec));
    let mut out = FormalSum::zero();
    for (mono, c) in a {
        let ys = mono.units();

        let mut appended = ys.to_vec();
        appended.push(x);
        if let Some((m, s)) = crate::algebra::koszul_sort(&appended, |u| u.is_odd(spec)) {
            out.add_term(SymMonomial::canonical(spec, m).expect("sorted"), c * s);
        }

        // parity of Y_{r+1} ... Y_k, accumulated from the right
        let mut tail_parity = 0usize;
        for r in (0..ys.len()).rev() {
            if let Some(merged) = ys[r].times(x) {
                let mut units = ys.to_vec();
                units[r] = merged;
                if let Some((m, s)) = crate::algebra::koszul_sort(&units, |u| u.is_odd(spec)) {
                    let sign = s * sign_of(tail_parity * px);
                    out.add_term(SymMonomial::canonical(spec, m).expect("sorted"), c * sign);
                }
            }
            tail_parity += usize::from(ys[r].parity(spec));
        }
    }
    out
}

/// `σ̃` of a single word, by the iterated star product `((X_1 * X_2) * ...) * X_k`.
pub fn sigma_tilde_iter(spec: &SpaceSpec, w: &Word) -> FormalSum<SymMonomial> {
    let mut acc = FormalSum::basis(SymMonomial::one());
    for &x in w.units() {
        acc = star(spec, &acc, x);
    }
    acc
}

pub fn sigma_tilde_iter_sum(spec: &SpaceSpec, u: &FormalSum<Word>) -> FormalSum<SymMonomial> {
    u.map_linear(|w| sigma_tilde_iter(spec, w))
}

/// A set partition of `{1, ..., M}` in regular presentation: each block is
/// increasing and blocks are ordered by their first elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularPartition {
    blocks: Vec<Vec<usize>>,
}

impl RegularPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Builds the partition from a restricted growth string (`rgs[i]` is the
    /// block of element `i + 1`).
    fn from_rgs(rgs: &[usize]) -> Self {
        let nblocks = rgs.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self { blocks }
    }
}

/// Enumerates all regular partitions of `{1, ..., M}`, each exactly once.
///
/// Element `s + 1` is placed either at the end of an existing block or into
/// a new block, so the stream is the restricted-growth-string order.
#[derive(Clone, Debug)]
pub struct RegularPartitions {
    rgs: Vec<usize>,
    // max block label among rgs[..=i]
    prefix_max: Vec<usize>,
    done: bool,
}

pub fn regular_partitions(m: usize) -> RegularPartitions {
    RegularPartitions {
        rgs: vec![0; m],
        prefix_max: vec![0; m],
        done: false,
    }
}

impl Iterator for RegularPartitions {
    type Item = RegularPartition;

    fn next(&mut self) -> Option<RegularPartition> {
        if self.done {
            return None;
        }
        let current = RegularPartition::from_rgs(&self.rgs);
        // advance to the next restricted growth string
        let m = self.rgs.len();
        let mut i = m;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let bound = self.prefix_max[i - 1] + 1;
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for k in i + 1..m {
                    self.rgs[k] = 0;
                    self.prefix_max[k] = self.prefix_max[k - 1];
                }
                break;
            }
        }
        Some(current)
    }
}

/// Sign and delta data of a regular partition relative to a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionSignData {
    /// Product of Kronecker deltas `δ_{j_{s_k}}^{i_{s_{k+1}}}` over consecutive
    /// block elements.
    pub delta: bool,
    /// Exponent of `-1`.
    pub q: usize,
}

impl RegularPartition {
    /// Computes `δ(α)` and `q(α)` for the word `E_{i_1 j_1} ... E_{i_M j_M}`.
    pub fn sign_data(&self, spec: &SpaceSpec, w: &Word) -> PartitionSignData {
        let units = w.units();
        let unit = |s: usize| units[s - 1];
        let delta = self
            .blocks
            .iter()
            .all(|b| b.windows(2).all(|p| unit(p[0]).col == unit(p[1]).row));

        // block index of each element
        let mut owner = vec![0usize; units.len() + 1];
        for (t, b) in self.blocks.iter().enumerate() {
            for &s in b {
                owner[s] = t;
            }
        }

        let mut q = 0usize;
        for s in 1..=units.len() {
            let t = owner[s];
            let ps = usize::from(unit(s).parity(spec));
            if ps == 0 {
                continue;
            }
            for block in &self.blocks[t + 1..] {
                // η_k(s) = first element if it precedes s; θ_k(s) = last element before s
                let first = block[0];
                if first >= s {
                    continue;
                }
                let theta = block.iter().copied().filter(|&u| u < s).max().expect("first < s");
                let p = spec.parity(unit(first).row) ^ spec.parity(unit(theta).col);
                q += ps * usize::from(p);
            }
        }
        PartitionSignData { delta, q }
    }
}

/// `σ̃` of a single word by the closed formula: a signed sum over regular
/// partitions of the word positions, each block multiplied out as a matrix
/// product `E_{i_first j_last}`.
pub fn sigma_tilde_closed(spec: &SpaceSpec, w: &Word) -> FormalSum<SymMonomial> {
    let units = w.units();
    let mut out = FormalSum::zero();
    for alpha in regular_partitions(units.len()) {
        let data = alpha.sign_data(spec, w);
        if !data.delta {
            continue;
        }
        let merged: Vec<MatrixUnit> = alpha
            .blocks()
            .iter()
            .map(|b| MatrixUnit::new(units[b[0] - 1].row, units[b[b.len() - 1] - 1].col))
            .collect();
        if let Some((m, s)) = crate::algebra::koszul_sort(&merged, |u| u.is_odd(spec)) {
            let mono = SymMonomial::canonical(spec, m).expect("sorted");
            out.add_term(mono, Coeff::from(s * sign_of(data.q)));
        }
    }
    out
}

pub fn sigma_tilde_closed_sum(spec: &SpaceSpec, u: &FormalSum<Word>) -> FormalSum<SymMonomial> {
    u.map_linear(|w| sigma_tilde_closed(spec, w))
}

/// The special symmetrization `σ = σ̃^{-1} : S -> U`, returned as a sum of
/// words.
///
/// Uses the triangularity of `σ̃`: the word spelling a canonical monomial maps
/// to that monomial plus lower-degree terms, so
/// `σ(a) = word(a) - σ(σ̃(word(a)) - a)`.
pub fn sigma(spec: &SpaceSpec, a: &FormalSum<SymMonomial>) -> FormalSum<Word> {
    let mut memo = HashMap::new();
    let mut out = FormalSum::zero();
    for (mono, c) in a {
        out.add_scaled(&sigma_monomial(spec, mono, &mut memo), c);
    }
    out
}

fn sigma_monomial(
    spec: &SpaceSpec,
    mono: &SymMonomial,
    memo: &mut HashMap<SymMonomial, FormalSum<Word>>,
) -> FormalSum<Word> {
    if let Some(hit) = memo.get(mono) {
        return hit.clone();
    }
    let lift = Word::new(mono.units().to_vec());
    let mut defect = sigma_tilde_closed(spec, &lift);
    defect.add_term(mono.clone(), -Coeff::one());
    debug_assert!(defect.basis_terms().all(|t| t.degree() < mono.degree()));

    let mut result = FormalSum::basis(lift);
    for (lower, c) in &defect {
        let sub = sigma_monomial(spec, lower, memo);
        result.add_scaled(&sub, &-c);
    }
    memo.insert(mono.clone(), result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::super_sort;

    fn gl11() -> SpaceSpec {
        SpaceSpec::new(1, 1).unwrap()
    }

    fn e(r: usize, c: usize) -> MatrixUnit {
        MatrixUnit::new(r, c)
    }

    fn mono(spec: &SpaceSpec, units: &[MatrixUnit]) -> SymMonomial {
        let (m, s) = super_sort(spec, units).unwrap().unwrap();
        assert_eq!(s, 1, "test monomials are written canonically");
        m
    }

    fn sum(spec: &SpaceSpec, terms: &[(&[MatrixUnit], i64)]) -> FormalSum<SymMonomial> {
        terms.iter().map(|(u, c)| (mono(spec, u), Coeff::from(*c))).collect()
    }

    fn word(units: &[MatrixUnit]) -> Word {
        Word::new(units.to_vec())
    }

    #[test]
    fn star_examples() {
        let s = gl11();
        let a = sum(&s, &[(&[e(1, 1)], 1)]);
        assert_eq!(star(&s, &a, e(1, 2)), sum(&s, &[(&[e(1, 1), e(1, 2)], 1), (&[e(1, 2)], 1)]));

        let one = FormalSum::basis(SymMonomial::one());
        assert_eq!(star(&s, &one, e(2, 1)), sum(&s, &[(&[e(2, 1)], 1)]));

        let b = sum(&s, &[(&[e(1, 2), e(2, 1)], 1)]);
        assert_eq!(
            star(&s, &b, e(1, 1)),
            sum(&s, &[(&[e(1, 1), e(1, 2), e(2, 1)], 1), (&[e(1, 2), e(2, 1)], 1)])
        );
    }

    #[test]
    fn sigma_tilde_examples() {
        let s = gl11();
        for f in [sigma_tilde_iter, sigma_tilde_closed] {
            assert_eq!(f(&s, &word(&[e(1, 1), e(1, 2)])), sum(&s, &[(&[e(1, 1), e(1, 2)], 1), (&[e(1, 2)], 1)]));
            assert_eq!(f(&s, &word(&[e(2, 1)])), sum(&s, &[(&[e(2, 1)], 1)]));
            assert!(f(&s, &word(&[e(1, 2), e(1, 2)])).is_zero());
            assert_eq!(f(&s, &word(&[e(1, 1), e(1, 1)])), sum(&s, &[(&[e(1, 1), e(1, 1)], 1), (&[e(1, 1)], 1)]));
            assert_eq!(f(&s, &word(&[e(1, 2), e(2, 1)])), sum(&s, &[(&[e(1, 2), e(2, 1)], 1), (&[e(1, 1)], 1)]));
            assert_eq!(f(&s, &Word::empty()), FormalSum::basis(SymMonomial::one()));
        }
    }

    /// Brute-force set partitions via "each element joins any earlier block or
    /// opens a new one", listed as sorted block lists for comparison.
    fn brute_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for x in 1..=m {
            let mut next = Vec::new();
            for p in &acc {
                for k in 0..p.len() {
                    let mut q = p.clone();
                    q[k].push(x);
                    next.push(q);
                }
                let mut q = p.clone();
                q.push(vec![x]);
                next.push(q);
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn regular_partition_counts_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
        for (m, &b) in bell.iter().enumerate() {
            let parts: Vec<_> = regular_partitions(m).collect();
            assert_eq!(parts.len(), b, "M = {m}");
            let mut seen: Vec<_> = parts.iter().map(|p| p.blocks().to_vec()).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), b);
            let mut brute = brute_partitions(m);
            brute.sort();
            assert_eq!(seen, brute);
            for p in &parts {
                for blk in p.blocks() {
                    assert!(blk.windows(2).all(|w| w[0] < w[1]));
                }
                assert!(p.blocks().windows(2).all(|w| w[0][0] < w[1][0]));
            }
        }
    }

    #[test]
    fn regular_partitions_of_three() {
        let got: Vec<_> = regular_partitions(3).map(|p| p.blocks().to_vec()).collect();
        let want = vec![
            vec![vec![1, 2, 3]],
            vec![vec![1, 2], vec![3]],
            vec![vec![1, 3], vec![2]],
            vec![vec![1], vec![2, 3]],
            vec![vec![1], vec![2], vec![3]],
        ];
        let mut g = got.clone();
        g.sort();
        let mut w = want.clone();
        w.sort();
        assert_eq!(g, w);
        assert_eq!(regular_partitions(0).count(), 1);
        assert_eq!(regular_partitions(1).next().unwrap().blocks(), &[vec![1]]);
    }

    #[test]
    fn sigma_examples() {
        let s = gl11();
        let w = |u: &[MatrixUnit]| word(u);
        let a = sum(&s, &[(&[e(1, 1)], 1)]);
        assert_eq!(sigma(&s, &a), FormalSum::basis(w(&[e(1, 1)])));

        let sq = sum(&s, &[(&[e(1, 1), e(1, 1)], 1)]);
        let expect: FormalSum<Word> =
            [(w(&[e(1, 1), e(1, 1)]), Coeff::from(1)), (w(&[e(1, 1)]), Coeff::from(-1))].into_iter().collect();
        assert_eq!(sigma(&s, &sq), expect);

        let odd = sum(&s, &[(&[e(1, 2), e(2, 1)], 1)]);
        let expect: FormalSum<Word> =
            [(w(&[e(1, 2), e(2, 1)]), Coeff::from(1)), (w(&[e(1, 1)]), Coeff::from(-1))].into_iter().collect();
        assert_eq!(sigma(&s, &odd), expect);
    }

    #[test]
    fn leading_term_is_the_sorted_word() {
        let s = SpaceSpec::new(2, 1).unwrap();
        let units: Vec<_> = s.units().collect();
        for &a in &units {
            for &b in &units {
                for &c in &units {
                    let w = word(&[a, b, c]);
                    let img = sigma_tilde_closed(&s, &w);
                    if let Some((m, sign)) = super_sort(&s, w.units()).unwrap() {
                        assert_eq!(img.coeff(&m), Coeff::from(sign));
                    }
                    assert!(img.basis_terms().all(|t| t.degree() <= 3));
                    assert_eq!(img.basis_terms().filter(|t| t.degree() == 3).count(), usize::from(super_sort(&s, w.units()).unwrap().is_some()));
                }
            }
        }
    }
}
