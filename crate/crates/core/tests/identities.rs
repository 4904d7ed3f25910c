use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superschur::algebra::{q_unit, super_bracket, super_sort, sym_product_of_linear, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word};
use superschur::symmetrization::{sigma, sigma_tilde_closed, sigma_tilde_closed_sum, sigma_tilde_iter};
use superschur::tensor::{matrix_of_sym, matrix_of_words, ratio_check, RatioElement, TensorSpace};
use superschur::weyl::{self, apply, compose, partial_unit, partial_word, partial_word_sum, tilde_partial, tilde_partial_sum, SuperVariable};

fn words(spec: &SpaceSpec, len: usize) -> Vec<Word> {
    let units: Vec<_> = spec.units().collect();
    let mut acc = vec![Word::empty()];
    for _ in 0..len {
        acc = acc
            .into_iter()
            .flat_map(|w| units.iter().map(move |&u| w.concat(&Word::new(vec![u]))))
            .collect();
    }
    acc
}

fn canonical_monomials(spec: &SpaceSpec, max_deg: usize) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        for w in words(spec, d) {
            if let Some((m, _)) = super_sort(spec, w.units()).unwrap() {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn random_word(rng: &mut ChaCha8Rng, spec: &SpaceSpec, len: usize) -> Word {
    let d = spec.dim();
    Word::new((0..len).map(|_| MatrixUnit::new(rng.gen_range(1..=d), rng.gen_range(1..=d))).collect())
}

#[test]
fn iterated_and_closed_agree_on_short_words() {
    let s = SpaceSpec::new(1, 1).unwrap();
    let mut count = 0;
    for len in 0..=4 {
        for w in words(&s, len) {
            assert_eq!(sigma_tilde_iter(&s, &w), sigma_tilde_closed(&s, &w), "word {w}");
            count += 1;
        }
    }
    assert_eq!(count, 1 + 4 + 16 + 64 + 256);

    for (m, n) in [(2, 1), (1, 2), (0, 2)] {
        let s = SpaceSpec::new(m, n).unwrap();
        for w in words(&s, 3) {
            assert_eq!(sigma_tilde_iter(&s, &w), sigma_tilde_closed(&s, &w), "word {w} in {s}");
        }
    }
}

#[test]
fn iterated_and_closed_agree_on_random_long_words() {
    let s = SpaceSpec::new(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let w = random_word(&mut rng, &s, 6);
        assert_eq!(sigma_tilde_iter(&s, &w), sigma_tilde_closed(&s, &w), "word {w}");
    }
}

#[test]
fn sigma_tilde_respects_enveloping_relations() {
    let s = SpaceSpec::new(1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let la = rng.gen_range(0..=2);
        let lb = rng.gen_range(0..=(3 - la));
        let a = random_word(&mut rng, &s, la);
        let b = random_word(&mut rng, &s, lb);
        let x = random_word(&mut rng, &s, 1).units()[0];
        let y = random_word(&mut rng, &s, 1).units()[0];
        let sign = if x.is_odd(&s) && y.is_odd(&s) { -1 } else { 1 };
        let lhs = sigma_tilde_closed(&s, &a.concat(&Word::new(vec![x, y])).concat(&b))
            - sigma_tilde_closed(&s, &a.concat(&Word::new(vec![y, x])).concat(&b)).scaled(&Coeff::from(sign));
        let mut bracket = FormalSum::zero();
        for (u, c) in &super_bracket(&s, x, y) {
            bracket.add_term(a.concat(&Word::new(vec![*u])).concat(&b), c.clone());
        }
        assert_eq!(lhs, sigma_tilde_closed_sum(&s, &bracket));
    }
}

#[test]
fn sigma_round_trip_gl21_degree_three() {
    let s = SpaceSpec::new(2, 1).unwrap();
    for m in canonical_monomials(&s, 3) {
        let a = FormalSum::basis(m);
        assert_eq!(sigma_tilde_closed_sum(&s, &sigma(&s, &a)), a);
    }
}

#[test]
fn partial_is_a_superalgebra_homomorphism() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let s = SpaceSpec::new(m, n).unwrap();
        for x in s.units() {
            for y in s.units() {
                let sign = if x.is_odd(&s) && y.is_odd(&s) { -1 } else { 1 };
                let lhs = compose(&s, &partial_unit(&s, x), &partial_unit(&s, y))
                    - compose(&s, &partial_unit(&s, y), &partial_unit(&s, x)).scaled(&Coeff::from(sign));
                let rhs = super_bracket(&s, x, y).map_linear(|u| partial_unit(&s, *u));
                assert_eq!(lhs, rhs, "[{x}, {y}] in {s}");
            }
        }
    }
}

fn poly_monomials(spec: &SpaceSpec, max_deg: usize) -> Vec<weyl::SuperPolynomial> {
    let vars: Vec<SuperVariable> = spec.units().map(SuperVariable::from).collect();
    let mut acc: Vec<Vec<SuperVariable>> = vec![vec![]];
    let mut out = Vec::new();
    for _ in 0..=max_deg {
        let mut next = Vec::new();
        for v in &acc {
            let p = weyl::monomial_polynomial(spec, v);
            if !p.is_zero() {
                out.push(p);
            }
            for &x in &vars {
                if v.last().is_none_or(|l| *l <= x) {
                    let mut v2 = v.clone();
                    v2.push(x);
                    next.push(v2);
                }
            }
        }
        acc = next;
    }
    out
}

#[test]
fn apply_respects_composition() {
    let s = SpaceSpec::new(1, 1).unwrap();
    let polys = poly_monomials(&s, 3);
    let ops: Vec<_> = s.units().map(|u| partial_unit(&s, u)).collect();
    let units: Vec<_> = s.units().collect();
    for (a, oa) in ops.iter().enumerate() {
        for (b, ob) in ops.iter().enumerate() {
            let composed = compose(&s, oa, ob);
            for f in &polys {
                let seq = apply(&s, oa, &apply(&s, ob, f));
                assert_eq!(apply(&s, &composed, f), seq, "{} {}", units[a], units[b]);
            }
        }
    }
}

#[test]
fn partial_equals_tilde_partial_after_symmetrization() {
    for (m, n) in [(1, 1), (2, 1)] {
        let s = SpaceSpec::new(m, n).unwrap();
        for len in 0..=3 {
            for w in words(&s, len) {
                let lhs = partial_word(&s, &w);
                let rhs = tilde_partial_sum(&s, &sigma_tilde_closed(&s, &w));
                assert_eq!(lhs, rhs, "word {w} in {s}");
            }
        }
    }
}

#[test]
fn tilde_partial_is_partial_of_sigma() {
    for (m, n) in [(1, 1), (2, 1)] {
        let s = SpaceSpec::new(m, n).unwrap();
        for mono in canonical_monomials(&s, 3) {
            let lhs = tilde_partial(&s, &mono);
            let rhs = partial_word_sum(&s, &sigma(&s, &FormalSum::basis(mono.clone())));
            assert_eq!(lhs, rhs, "monomial {mono} in {s}");
        }
    }
}

#[test]
fn tree_action_matches_sigma_gl21() {
    let s = SpaceSpec::new(2, 1).unwrap();
    let space = TensorSpace::new(s, 2);
    for mono in canonical_monomials(&s, 3) {
        let a = FormalSum::basis(mono.clone());
        assert_eq!(matrix_of_sym(&space, &a), matrix_of_words(&space, &sigma(&s, &a)), "{mono}");
    }
}

#[test]
fn ratio_property_gl21() {
    let s = SpaceSpec::new(2, 1).unwrap();
    let space = TensorSpace::new(s, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut elements = Vec::new();
    for _ in 0..12 {
        let len = rng.gen_range(0..=3);
        elements.push(RatioElement::Enveloping(FormalSum::basis(random_word(&mut rng, &s, len))));
    }
    for mono in canonical_monomials(&s, 2).into_iter().step_by(3) {
        elements.push(RatioElement::Symmetric(FormalSum::basis(mono)));
    }
    let report = ratio_check(&space, None, &elements);
    assert!(report.passed());
    assert!(report.constant_pairs() > 0);
}

/// Exact membership test in the span of a list of vectors keyed by monomials.
fn in_span(basis: &[FormalSum<SymMonomial>], target: &FormalSum<SymMonomial>) -> bool {
    let keys: Vec<SymMonomial> = basis
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|v| v.basis_terms().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let to_vec = |v: &FormalSum<SymMonomial>| -> Vec<BigRational> {
        keys.iter().map(|k| BigRational::from_integer(v.coeff(k))).collect()
    };
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let reduce = |rows: &Vec<Vec<BigRational>>, pivots: &Vec<usize>, mut v: Vec<BigRational>| {
        for (r, &p) in rows.iter().zip(pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / r[p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        v
    };
    for b in basis {
        let v = reduce(&rows, &pivots, to_vec(b));
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            rows.push(v);
            pivots.push(p);
        }
    }
    reduce(&rows, &pivots, to_vec(target)).iter().all(Zero::is_zero)
}

#[test]
fn sigma_tilde_preserves_queer_subalgebra() {
    for n in 1..=2 {
        let s = SpaceSpec::queer(n).unwrap();
        let fs: Vec<FormalSum<MatrixUnit>> = (1..=n)
            .flat_map(|i| (1..=2 * n).map(move |j| (i, j)))
            .map(|(i, j)| q_unit(&s, i, j).unwrap())
            .collect();
        // spanning set of S(Q(n)) up to degree 3
        let mut span = vec![FormalSum::basis(SymMonomial::one())];
        let mut level: Vec<Vec<usize>> = vec![vec![]];
        let max_deg = if n == 1 { 3 } else { 2 };
        for _ in 0..max_deg {
            let mut next = Vec::new();
            for idx in &level {
                for k in idx.last().copied().unwrap_or(0)..fs.len() {
                    let mut i2 = idx.clone();
                    i2.push(k);
                    let factors: Vec<_> = i2.iter().map(|&t| fs[t].clone()).collect();
                    span.push(sym_product_of_linear(&s, &factors));
                    next.push(i2);
                }
            }
            level = next;
        }
        // words F_a F_b (F_c) in U(Q(n))
        let mut checked = 0;
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_deg {
            tuples = tuples
                .into_iter()
                .flat_map(|t| (0..fs.len()).map(move |k| [t.clone(), vec![k]].concat()))
                .collect();
            for t in &tuples {
                let mut u: FormalSum<Word> = FormalSum::basis(Word::empty());
                for &k in t {
                    u = u.map_linear(|w| fs[k].map_linear(|unit| FormalSum::basis(w.concat(&Word::new(vec![*unit])))));
                }
                let img = sigma_tilde_closed_sum(&s, &u);
                assert!(in_span(&span, &img), "σ̃ leaves S(Q({n})) for F-word {t:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
