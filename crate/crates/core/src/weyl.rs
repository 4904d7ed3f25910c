//! Polynomial differential operators on the superpolynomial algebra in the
//! variables `x_ij`, and the realization `∂ : U(gl(m|n)) -> 𝒟`.
//!
//! Operators are kept in normal order (all `x` to the left of all `∂`). The
//! normal form of `∂(u)` serves as the equality fingerprint for elements of
//! U(gl(m|n)).

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{koszul_sort, sign_of, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word};

/// The variable `x_ij` (or the symbol `∂_ij`); its parity is that of `E_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperVariable {
    pub row: usize,
    pub col: usize,
}

impl SuperVariable {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    #[inline]
    pub fn parity(&self, spec: &SpaceSpec) -> u8 {
        spec.parity(self.row) ^ spec.parity(self.col)
    }

    #[inline]
    pub fn is_odd(&self, spec: &SpaceSpec) -> bool {
        self.parity(spec) == 1
    }
}

impl From<MatrixUnit> for SuperVariable {
    fn from(u: MatrixUnit) -> Self {
        Self { row: u.row, col: u.col }
    }
}

/// Canonically ordered product of variables; odd variables appear at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyMonomial(Vec<SuperVariable>);

impl PolyMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn vars(&self) -> &[SuperVariable] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Sorts an arbitrary product of variables, returning the Koszul sign, or
    /// `None` when it vanishes.
    pub fn from_product(spec: &SpaceSpec, vars: &[SuperVariable]) -> Option<(Self, i32)> {
        koszul_sort(vars, |v| v.is_odd(spec)).map(|(v, s)| (Self(v), s))
    }
}

impl fmt::Display for PolyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.0 {
            write!(f, "x{}{}", v.row, v.col)?;
        }
        Ok(())
    }
}

pub type SuperPolynomial = FormalSum<PolyMonomial>;

/// The polynomial `x_{a_1 b_1} ... x_{a_N b_N}` in canonical form.
pub fn monomial_polynomial(spec: &SpaceSpec, vars: &[SuperVariable]) -> SuperPolynomial {
    match PolyMonomial::from_product(spec, vars) {
        Some((m, s)) => FormalSum::term(m, Coeff::from(s)),
        None => FormalSum::zero(),
    }
}

/// Normal-ordered basis operator `x_{...} ∂_{...}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylTerm {
    pub x: PolyMonomial,
    pub d: PolyMonomial,
}

pub type WeylOperator = FormalSum<WeylTerm>;

impl fmt::Display for WeylTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.0.is_empty() && self.d.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.x.0 {
            write!(f, "x{}{}", v.row, v.col)?;
        }
        for v in &self.d.0 {
            write!(f, "d{}{}", v.row, v.col)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symbol {
    X(SuperVariable),
    D(SuperVariable),
}

/// Brings a product of generators into normal order using
/// `∂_ab x_cd = δ_ac δ_bd + (-1)^{p_ab p_cd} x_cd ∂_ab`.
fn normal_order_symbols(spec: &SpaceSpec, seq: Vec<Symbol>, coeff: Coeff, out: &mut WeylOperator) {
    let mut stack = vec![(seq, coeff)];
    while let Some((seq, c)) = stack.pop() {
        let hit = seq
            .windows(2)
            .position(|w| matches!((w[0], w[1]), (Symbol::D(_), Symbol::X(_))));
        match hit {
            None => {
                let split = seq.iter().position(|s| matches!(s, Symbol::D(_))).unwrap_or(seq.len());
                let xs: Vec<_> = seq[..split]
                    .iter()
                    .map(|s| match s {
                        Symbol::X(v) => *v,
                        Symbol::D(_) => unreachable!(),
                    })
                    .collect();
                let ds: Vec<_> = seq[split..]
                    .iter()
                    .map(|s| match s {
                        Symbol::D(v) => *v,
                        Symbol::X(_) => unreachable!(),
                    })
                    .collect();
                let (Some((x, sx)), Some((d, sd))) =
                    (PolyMonomial::from_product(spec, &xs), PolyMonomial::from_product(spec, &ds))
                else {
                    continue;
                };
                out.add_term(WeylTerm { x, d }, c * (sx * sd));
            }
            Some(i) => {
                let (Symbol::D(dv), Symbol::X(xv)) = (seq[i], seq[i + 1]) else {
                    unreachable!()
                };
                if dv == xv {
                    let mut contracted = seq.clone();
                    contracted.drain(i..i + 2);
                    stack.push((contracted, c.clone()));
                }
                let mut swapped = seq;
                swapped.swap(i, i + 1);
                let s = sign_of(usize::from(dv.parity(spec) & xv.parity(spec)));
                stack.push((swapped, c * s));
            }
        }
    }
}

fn term_symbols(t: &WeylTerm) -> impl Iterator<Item = Symbol> + '_ {
    t.x.0.iter().map(|v| Symbol::X(*v)).chain(t.d.0.iter().map(|v| Symbol::D(*v)))
}

/// Product `a ∘ b` of normal-ordered operators, normal ordered.
pub fn compose(spec: &SpaceSpec, a: &WeylOperator, b: &WeylOperator) -> WeylOperator {
    let mut out = FormalSum::zero();
    for (ta, ca) in a {
        for (tb, cb) in b {
            let seq: Vec<Symbol> = term_symbols(ta).chain(term_symbols(tb)).collect();
            normal_order_symbols(spec, seq, ca * cb, &mut out);
        }
    }
    out
}

/// Normal form of the composition `c_1 ∘ c_2 ∘ ... ∘ c_k` (identity if empty).
pub fn normal_order(spec: &SpaceSpec, composition: &[WeylOperator]) -> WeylOperator {
    let mut acc = identity();
    for op in composition {
        acc = compose(spec, &acc, op);
    }
    acc
}

pub fn identity() -> WeylOperator {
    FormalSum::basis(WeylTerm::default())
}

/// The multiplication operator `x_v`.
pub fn x_op(v: SuperVariable) -> WeylOperator {
    FormalSum::basis(WeylTerm { x: PolyMonomial(vec![v]), d: PolyMonomial::one() })
}

/// The derivation `∂_v`.
pub fn d_op(v: SuperVariable) -> WeylOperator {
    FormalSum::basis(WeylTerm { x: PolyMonomial::one(), d: PolyMonomial(vec![v]) })
}

/// `∂(E_ij) = Σ_k x_ki ∂_kj`.
pub fn partial_unit(spec: &SpaceSpec, e: MatrixUnit) -> WeylOperator {
    (1..=spec.dim())
        .map(|k| {
            let t = WeylTerm {
                x: PolyMonomial(vec![SuperVariable::new(k, e.row)]),
                d: PolyMonomial(vec![SuperVariable::new(k, e.col)]),
            };
            (t, Coeff::one())
        })
        .collect()
}

/// `∂(X_1 ... X_l) = ∂(X_1) ∘ ... ∘ ∂(X_l)`, normal ordered.
pub fn partial_word(spec: &SpaceSpec, w: &Word) -> WeylOperator {
    let factors: Vec<_> = w.units().iter().map(|&u| partial_unit(spec, u)).collect();
    normal_order(spec, &factors)
}

pub fn partial_word_sum(spec: &SpaceSpec, u: &FormalSum<Word>) -> WeylOperator {
    u.map_linear(|w| partial_word(spec, w))
}

/// `∂̃ = ∂ ∘ σ` on a monomial `E_{i_1 j_1} ... E_{i_M j_M}` of S, by the closed
/// sum over `k̄ = (k_1, ..., k_M)` of
/// `(-1)^{Σ_{q<t} p_{k_q j_q} p_{k_t i_t}} x_{k_1 i_1}...x_{k_M i_M} ∂_{k_1 j_1}...∂_{k_M j_M}`.
pub fn tilde_partial(spec: &SpaceSpec, a: &SymMonomial) -> WeylOperator {
    let units = a.units();
    let m = units.len();
    let d = spec.dim();
    let mut out = FormalSum::zero();
    let mut ks = vec![1usize; m];
    loop {
        let xs: Vec<_> = (0..m).map(|q| SuperVariable::new(ks[q], units[q].row)).collect();
        let ds: Vec<_> = (0..m).map(|q| SuperVariable::new(ks[q], units[q].col)).collect();
        let mut exp = 0usize;
        for t in 0..m {
            if xs[t].is_odd(spec) {
                exp += ds[..t].iter().filter(|v| v.is_odd(spec)).count();
            }
        }
        if let (Some((x, sx)), Some((dm, sd))) =
            (PolyMonomial::from_product(spec, &xs), PolyMonomial::from_product(spec, &ds))
        {
            out.add_term(WeylTerm { x, d: dm }, Coeff::from(sign_of(exp) * sx * sd));
        }
        // odometer over {1..d}^m
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if ks[pos] < d {
                ks[pos] += 1;
                break;
            }
            ks[pos] = 1;
        }
    }
}

pub fn tilde_partial_sum(spec: &SpaceSpec, a: &FormalSum<SymMonomial>) -> WeylOperator {
    a.map_linear(|m| tilde_partial(spec, m))
}

/// `∂_v` applied to a canonical monomial by the graded Leibniz rule.
fn derive(spec: &SpaceSpec, v: SuperVariable, f: &PolyMonomial) -> SuperPolynomial {
    let pv = usize::from(v.parity(spec));
    let mut out = FormalSum::zero();
    let mut passed = 0usize;
    for (t, y) in f.0.iter().enumerate() {
        if *y == v {
            let mut rest = f.0.clone();
            rest.remove(t);
            out.add_term(PolyMonomial(rest), Coeff::from(sign_of(pv * passed)));
        }
        passed += usize::from(y.parity(spec));
    }
    out
}

/// Action of a differential operator on a superpolynomial.
pub fn apply(spec: &SpaceSpec, op: &WeylOperator, f: &SuperPolynomial) -> SuperPolynomial {
    let mut out = FormalSum::zero();
    for (term, c) in op {
        // rightmost derivation acts first
        let mut g = f.clone();
        for &v in term.d.0.iter().rev() {
            g = g.map_linear(|m| derive(spec, v, m));
            if g.is_zero() {
                break;
            }
        }
        for (m, cm) in &g {
            let mut vars = term.x.0.clone();
            vars.extend_from_slice(&m.0);
            if let Some((p, s)) = PolyMonomial::from_product(spec, &vars) {
                out.add_term(p, c * cm * s);
            }
        }
    }
    out
}

/// Evaluates a polynomial at the identity matrix (`x_ij = δ_ij`).
pub fn evaluate_at_identity(f: &SuperPolynomial) -> Coeff {
    f.iter()
        .filter(|(m, _)| m.0.iter().all(|v| v.row == v.col))
        .fold(Coeff::zero(), |acc, (_, c)| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl11() -> SpaceSpec {
        SpaceSpec::new(1, 1).unwrap()
    }

    fn x(r: usize, c: usize) -> SuperVariable {
        SuperVariable::new(r, c)
    }

    fn poly(spec: &SpaceSpec, vars: &[SuperVariable]) -> SuperPolynomial {
        monomial_polynomial(spec, vars)
    }

    fn op_of(terms: &[(&[SuperVariable], &[SuperVariable], i64)], spec: &SpaceSpec) -> WeylOperator {
        let mut out = FormalSum::zero();
        for (xs, ds, c) in terms {
            let (xm, sx) = PolyMonomial::from_product(spec, xs).unwrap();
            let (dm, sd) = PolyMonomial::from_product(spec, ds).unwrap();
            out.add_term(WeylTerm { x: xm, d: dm }, Coeff::from(c * i64::from(sx * sd)));
        }
        out
    }

    #[test]
    fn apply_examples() {
        let s = gl11();
        let one = FormalSum::basis(PolyMonomial::one());
        assert_eq!(apply(&s, &d_op(x(1, 1)), &poly(&s, &[x(1, 1)])), one);
        let euler = compose(&s, &x_op(x(1, 1)), &d_op(x(1, 1)));
        assert_eq!(apply(&s, &euler, &poly(&s, &[x(1, 1), x(1, 1)])), poly(&s, &[x(1, 1), x(1, 1)]).scaled(&Coeff::from(2)));
        assert_eq!(apply(&s, &d_op(x(1, 2)), &poly(&s, &[x(1, 1), x(1, 2)])), poly(&s, &[x(1, 1)]));
        // odd derivation passing an odd variable
        assert_eq!(apply(&s, &d_op(x(1, 2)), &poly(&s, &[x(1, 2), x(2, 1)])), poly(&s, &[x(2, 1)]));
        assert_eq!(apply(&s, &d_op(x(2, 1)), &poly(&s, &[x(1, 2), x(2, 1)])), poly(&s, &[x(1, 2)]).scaled(&Coeff::from(-1)));
    }

    #[test]
    fn normal_order_examples() {
        let s = gl11();
        let got = normal_order(&s, &[d_op(x(1, 1)), x_op(x(1, 1))]);
        assert_eq!(got, op_of(&[(&[x(1, 1)], &[x(1, 1)], 1), (&[], &[], 1)], &s));
        let got = normal_order(&s, &[d_op(x(1, 2)), x_op(x(1, 2))]);
        assert_eq!(got, op_of(&[(&[x(1, 2)], &[x(1, 2)], -1), (&[], &[], 1)], &s));
        let got = normal_order(&s, &[x_op(x(1, 1)), d_op(x(1, 1))]);
        assert_eq!(got, op_of(&[(&[x(1, 1)], &[x(1, 1)], 1)], &s));
    }

    #[test]
    fn partial_unit_expansion() {
        let s = gl11();
        let got = partial_unit(&s, MatrixUnit::new(1, 1));
        assert_eq!(got, op_of(&[(&[x(1, 1)], &[x(1, 1)], 1), (&[x(2, 1)], &[x(2, 1)], 1)], &s));
        assert_eq!(apply(&s, &got, &poly(&s, &[x(1, 1)])), poly(&s, &[x(1, 1)]));
    }

    #[test]
    fn partial_word_examples() {
        let s = gl11();
        let e11 = MatrixUnit::new(1, 1);
        assert_eq!(partial_word(&s, &Word::new(vec![e11])), partial_unit(&s, e11));
        let sq = partial_word(&s, &Word::new(vec![e11, e11]));
        let t = WeylTerm { x: PolyMonomial(vec![x(1, 1)]), d: PolyMonomial(vec![x(1, 1)]) };
        assert_eq!(sq.coeff(&t), Coeff::one());
        let e12 = MatrixUnit::new(1, 2);
        assert!(partial_word(&s, &Word::new(vec![e12, e12])).is_zero());
    }

    #[test]
    fn tilde_partial_degree_one_matches_partial() {
        let s = SpaceSpec::new(2, 1).unwrap();
        for u in s.units() {
            let m = SymMonomial::canonical(&s, vec![u]).unwrap();
            assert_eq!(tilde_partial(&s, &m), partial_unit(&s, u));
        }
    }

    #[test]
    fn tilde_partial_square_of_e11() {
        // Σ_{k1,k2} (-1)^{p_{k1 1} p_{k2 1}} x_{k1 1} x_{k2 1} ∂_{k1 1} ∂_{k2 1}, expanded by hand:
        // (1,1): x11² ∂11²; (1,2),(2,1): x11 x21 ∂11 ∂21 twice; (2,2): x21 x21 = 0.
        let s = gl11();
        let m = SymMonomial::canonical(&s, vec![MatrixUnit::new(1, 1), MatrixUnit::new(1, 1)]).unwrap();
        let want = op_of(
            &[(&[x(1, 1), x(1, 1)], &[x(1, 1), x(1, 1)], 1), (&[x(1, 1), x(2, 1)], &[x(1, 1), x(2, 1)], 2)],
            &s,
        );
        assert_eq!(tilde_partial(&s, &m), want);
    }

    #[test]
    fn evaluation_at_identity() {
        let s = gl11();
        assert_eq!(evaluate_at_identity(&poly(&s, &[x(1, 1), x(2, 2)])), Coeff::one());
        assert_eq!(evaluate_at_identity(&poly(&s, &[x(1, 2)])), Coeff::zero());
    }
}
