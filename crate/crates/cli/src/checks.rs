//! Exhaustive and seeded property checks shared by `verify --suite properties`
//! and the acceptance tests.

use std::ops::RangeInclusive;

use rand::Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use superschur::algebra::{super_bracket, super_sort, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word};
use superschur::symmetrization::{sigma, sigma_tilde_closed, sigma_tilde_closed_sum, sigma_tilde_iter};
use superschur::tensor::{matrix_of_sym, matrix_of_words, ratio_check, RatioElement, TensorSpace};
use superschur::weyl::{self, apply, partial_word, tilde_partial_sum, SuperPolynomial, SuperVariable};

/// Counts of one property check, plus digests of everything compared on
/// each side. Equal digests mean every comparison matched.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub lhs_hash: String,
    pub rhs_hash: String,
}

impl PropertyOutcome {
    pub fn pass(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

struct Tally {
    name: String,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
    lhs: Sha256,
    rhs: Sha256,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
            lhs: Sha256::new(),
            rhs: Sha256::new(),
        }
    }

    fn compare<T: PartialEq + std::fmt::Display>(&mut self, label: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        self.cases += 1;
        self.lhs.update(format!("{lhs}\n").as_bytes());
        self.rhs.update(format!("{rhs}\n").as_bytes());
        if lhs != rhs {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(label());
            }
        }
    }

    fn finish(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
            lhs_hash: hex::encode(self.lhs.finalize()),
            rhs_hash: hex::encode(self.rhs.finalize()),
        }
    }
}

/// All words of length exactly `len`, in lexicographic order.
pub fn words_of_length(spec: &SpaceSpec, len: usize) -> Vec<Word> {
    let units: Vec<MatrixUnit> = spec.units().collect();
    let mut acc = vec![Vec::new()];
    for _ in 0..len {
        acc = acc
            .into_iter()
            .flat_map(|w: Vec<MatrixUnit>| {
                units.iter().map(move |&u| {
                    let mut w2 = w.clone();
                    w2.push(u);
                    w2
                })
            })
            .collect();
    }
    acc.into_iter().map(Word::new).collect()
}

/// Every nonzero canonical monomial of degree at most `max_deg`.
pub fn canonical_monomials(spec: &SpaceSpec, max_deg: usize) -> Vec<SymMonomial> {
    let units: Vec<MatrixUnit> = spec.units().collect();
    let mut out = vec![SymMonomial::one()];
    let mut level: Vec<Vec<MatrixUnit>> = vec![vec![]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for v in &level {
            for &u in &units {
                if v.last().is_some_and(|l| *l > u || (*l == u && u.is_odd(spec))) {
                    continue;
                }
                let mut v2 = v.clone();
                v2.push(u);
                next.push(v2);
            }
        }
        for v in &next {
            let (m, _) = super_sort(spec, v).expect("units in range").expect("no repeated odd unit");
            out.push(m);
        }
        level = next;
    }
    out
}

/// Monomials `x_{v_1} ... x_{v_k}` of degree at most `max_deg`, nonzero ones only.
pub fn poly_monomials(spec: &SpaceSpec, max_deg: usize) -> Vec<SuperPolynomial> {
    let vars: Vec<SuperVariable> = spec.units().map(SuperVariable::from).collect();
    let mut out = Vec::new();
    let mut level: Vec<Vec<SuperVariable>> = vec![vec![]];
    for deg in 0..=max_deg {
        for v in &level {
            let p = weyl::monomial_polynomial(spec, v);
            if !p.is_zero() {
                out.push(p);
            }
        }
        if deg == max_deg {
            break;
        }
        let mut next = Vec::new();
        for v in &level {
            for &x in &vars {
                if v.last().is_none_or(|l| *l <= x) {
                    let mut v2 = v.clone();
                    v2.push(x);
                    next.push(v2);
                }
            }
        }
        level = next;
    }
    out
}

pub fn random_word(rng: &mut impl Rng, spec: &SpaceSpec, len: usize) -> Word {
    let d = spec.dim();
    Word::new((0..len).map(|_| MatrixUnit::new(rng.gen_range(1..=d), rng.gen_range(1..=d))).collect())
}

fn random_unit(rng: &mut impl Rng, spec: &SpaceSpec) -> MatrixUnit {
    let d = spec.dim();
    MatrixUnit::new(rng.gen_range(1..=d), rng.gen_range(1..=d))
}

/// Iterated and closed forms of `σ̃` on every word with length in `lengths`,
/// then on `random` words of length `random_len`.
pub fn sigma_tilde_consistency(
    spec: &SpaceSpec,
    lengths: RangeInclusive<usize>,
    random: usize,
    random_len: usize,
    rng: &mut impl Rng,
) -> PropertyOutcome {
    let mut t = Tally::new("sigma-tilde-consistency");
    let exhaustive = lengths.flat_map(|l| words_of_length(spec, l));
    let sampled: Vec<Word> = (0..random).map(|_| random_word(rng, spec, random_len)).collect();
    for w in exhaustive.chain(sampled) {
        t.compare(|| format!("word {w}"), &sigma_tilde_iter(spec, &w), &sigma_tilde_closed(spec, &w));
    }
    t.finish()
}

/// `σ̃(A(XY - (-1)^{p(X)p(Y)}YX)B) = σ̃(A[X,Y]B)` on random instances with
/// `|A| + |B| + 2 <= max_total`.
pub fn enveloping_relations(spec: &SpaceSpec, instances: usize, max_total: usize, rng: &mut impl Rng) -> PropertyOutcome {
    assert!(max_total >= 2);
    let mut t = Tally::new("enveloping-relations");
    for _ in 0..instances {
        let rest = rng.gen_range(0..=max_total - 2);
        let la = rng.gen_range(0..=rest);
        let a = random_word(rng, spec, la);
        let b = random_word(rng, spec, rest - la);
        let x = random_unit(rng, spec);
        let y = random_unit(rng, spec);
        let mut lhs_word: FormalSum<Word> = FormalSum::basis(a.concat(&Word::new(vec![x, y])).concat(&b));
        let sign = if x.is_odd(spec) && y.is_odd(spec) { 1 } else { -1 };
        lhs_word.add_term(a.concat(&Word::new(vec![y, x])).concat(&b), sign.into());
        let mut rhs_word = FormalSum::zero();
        for (u, c) in &super_bracket(spec, x, y) {
            rhs_word.add_term(a.concat(&Word::new(vec![*u])).concat(&b), c.clone());
        }
        t.compare(
            || format!("A={a} X={x} Y={y} B={b}"),
            &sigma_tilde_closed_sum(spec, &lhs_word),
            &sigma_tilde_closed_sum(spec, &rhs_word),
        );
    }
    t.finish()
}

/// `σ̃(σ(a)) = a` on every canonical monomial of degree `<= max_deg`.
pub fn round_trip(spec: &SpaceSpec, max_deg: usize) -> PropertyOutcome {
    let mut t = Tally::new("round-trip");
    for m in canonical_monomials(spec, max_deg) {
        let a = FormalSum::basis(m.clone());
        t.compare(|| format!("monomial {m}"), &sigma_tilde_closed_sum(spec, &sigma(spec, &a)), &a);
    }
    t.finish()
}

/// `∂(w) = ∂̃(σ̃(w))` for every word of length `<= max_len`, first as
/// normal-ordered operators, then applied to every polynomial monomial of
/// degree `<= poly_deg`.
pub fn differential_operators(spec: &SpaceSpec, max_len: usize, poly_deg: usize) -> (PropertyOutcome, PropertyOutcome) {
    let polys = poly_monomials(spec, poly_deg);
    let mut ops = Tally::new("differential-operators");
    let mut applied = Tally::new("differential-operators-applied");
    for w in (0..=max_len).flat_map(|l| words_of_length(spec, l)) {
        let lhs = partial_word(spec, &w);
        let rhs = tilde_partial_sum(spec, &sigma_tilde_closed(spec, &w));
        ops.compare(|| format!("word {w}"), &lhs, &rhs);
        for f in &polys {
            applied.compare(|| format!("word {w} on {f}"), &apply(spec, &lhs, f), &apply(spec, &rhs, f));
        }
    }
    (ops.finish(), applied.finish())
}

/// Tree action of `a` against the action of `σ(a)` on the tensor space, for
/// every canonical monomial of degree `<= max_deg`.
pub fn tree_action(space: &TensorSpace, max_deg: usize) -> PropertyOutcome {
    let spec = space.spec;
    let mut t = Tally::new("tree-action");
    for m in canonical_monomials(&spec, max_deg) {
        let a = FormalSum::basis(m.clone());
        let lhs = matrix_of_sym(space, &a).canonical_string();
        let rhs = matrix_of_words(space, &sigma(&spec, &a)).canonical_string();
        t.compare(|| format!("monomial {m}"), &lhs, &rhs);
    }
    t.finish()
}

/// Ratio check over all index pairs with `words` random words of length
/// `<= max_len` and every canonical monomial of degree `<= sym_deg`.
pub fn ratio_property(space: &TensorSpace, words: usize, max_len: usize, sym_deg: usize, rng: &mut impl Rng) -> PropertyOutcome {
    let spec = space.spec;
    let mut elements = Vec::new();
    for _ in 0..words {
        let len = rng.gen_range(0..=max_len);
        elements.push(RatioElement::Enveloping(FormalSum::basis(random_word(rng, &spec, len))));
    }
    for m in canonical_monomials(&spec, sym_deg) {
        elements.push(RatioElement::Symmetric(FormalSum::basis(m)));
    }
    let report = ratio_check(space, None, &elements);
    let mut t = Tally::new("ratio");
    for ((i, j), outcome) in &report.outcomes {
        t.lhs.update(format!("{i:?} {j:?} {outcome:?}\n").as_bytes());
        t.rhs.update(format!("{i:?} {j:?} {outcome:?}\n").as_bytes());
    }
    t.cases = report.constant_pairs();
    if !report.passed() {
        t.failures = report.outcomes.len() - report.constant_pairs() - report.skipped_pairs();
        t.first_failure = report
            .outcomes
            .iter()
            .find(|(_, o)| matches!(o, superschur::tensor::PairOutcome::Violation { .. }))
            .map(|(p, o)| format!("{p:?} {o:?}"));
    }
    t.finish()
}

/// Number of elements used by [`ratio_property`].
pub fn ratio_element_count(spec: &SpaceSpec, words: usize, sym_deg: usize) -> usize {
    words + canonical_monomials(spec, sym_deg).len()
}
