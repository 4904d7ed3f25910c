//! Basis bookkeeping for gl(m|n): the superspace, matrix units, supercommutative
//! monomials of S(gl(m|n)), free words of T(gl(m|n)), and exact formal sums.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact integer coefficient.
pub type Coeff = BigInt;

/// `+1` or `-1`.
pub type Sign = i32;

#[inline]
pub(crate) fn sign_of(exponent: usize) -> Sign {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The superspace C^{m|n}: basis vectors `1..=m` are even, `m+1..=m+n` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceSpec {
    m: usize,
    n: usize,
}

impl SpaceSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::EmptySpace { m, n });
        }
        Ok(Self { m, n })
    }

    /// gl(n|n), the ambient superalgebra of Q(n).
    pub fn queer(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn is_queer(&self) -> bool {
        self.m == self.n
    }

    pub fn require_queer(&self) -> Result<()> {
        if self.is_queer() {
            Ok(())
        } else {
            Err(Error::NotQueer { m: self.m, n: self.n })
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.dim()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim() })
        }
    }

    /// Parity of the basis vector `e_i` (0 even, 1 odd).
    #[inline]
    pub fn parity(&self, i: usize) -> u8 {
        debug_assert!((1..=self.dim()).contains(&i));
        u8::from(i > self.m)
    }

    /// The parity-swapping involution `i -> i + n mod 2n` on `1..=2n`.
    ///
    /// Only meaningful when `m = n`.
    #[inline]
    pub fn delta(&self, i: usize) -> usize {
        debug_assert!(self.is_queer());
        if i <= self.n {
            i + self.n
        } else {
            i - self.n
        }
    }

    /// All matrix units in lexicographic `(row, col)` order.
    pub fn units(&self) -> impl Iterator<Item = MatrixUnit> {
        let d = self.dim();
        (1..=d).flat_map(move |row| (1..=d).map(move |col| MatrixUnit { row, col }))
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl({}|{})", self.m, self.n)
    }
}

/// The matrix unit `E_{row,col}` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixUnit {
    pub row: usize,
    pub col: usize,
}

impl MatrixUnit {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn checked(spec: &SpaceSpec, row: usize, col: usize) -> Result<Self> {
        spec.check_index(row)?;
        spec.check_index(col)?;
        Ok(Self { row, col })
    }

    #[inline]
    pub fn parity(&self, spec: &SpaceSpec) -> u8 {
        spec.parity(self.row) ^ spec.parity(self.col)
    }

    #[inline]
    pub fn is_odd(&self, spec: &SpaceSpec) -> bool {
        self.parity(spec) == 1
    }

    /// Associative matrix product `E_ab E_cd = delta_bc E_ad`.
    #[inline]
    pub fn times(self, other: MatrixUnit) -> Option<MatrixUnit> {
        (self.col == other.row).then_some(MatrixUnit { row: self.row, col: other.col })
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.row, self.col)
    }
}

/// Stable sort of a sequence of homogeneous symbols in a free supercommutative
/// algebra. Returns the sorted sequence with the Koszul sign of the reordering,
/// or `None` when an odd symbol repeats (odd squares vanish).
pub fn koszul_sort<T: Ord + Clone>(items: &[T], is_odd: impl Fn(&T) -> bool) -> Option<(Vec<T>, Sign)> {
    let mut out: Vec<T> = items.to_vec();
    let mut swaps = 0usize;
    for i in 1..out.len() {
        let mut j = i;
        while j > 0 && out[j - 1] > out[j] {
            if is_odd(&out[j - 1]) && is_odd(&out[j]) {
                swaps += 1;
            }
            out.swap(j - 1, j);
            j -= 1;
        }
    }
    if out.windows(2).any(|w| w[0] == w[1] && is_odd(&w[0])) {
        return None;
    }
    Some((out, sign_of(swaps)))
}

/// A basis monomial of S(gl(m|n)): matrix units sorted by `(row, col)` with no
/// repeated odd unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMonomial(Vec<MatrixUnit>);

impl SymMonomial {
    /// The empty monomial, i.e. the unit of S.
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// Accepts `units` only if they are already in canonical form.
    pub fn canonical(spec: &SpaceSpec, units: Vec<MatrixUnit>) -> Result<Self> {
        for u in &units {
            spec.check_index(u.row)?;
            spec.check_index(u.col)?;
        }
        if units.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NonCanonicalMonomial(
                "units must be sorted lexicographically by (row, col)".into(),
            ));
        }
        if units.windows(2).any(|w| w[0] == w[1] && w[0].is_odd(spec)) {
            return Err(Error::NonCanonicalMonomial("odd unit repeated (odd squares vanish)".into()));
        }
        Ok(Self(units))
    }

    pub fn units(&self) -> &[MatrixUnit] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self, spec: &SpaceSpec) -> u8 {
        self.0.iter().fold(0, |acc, u| acc ^ u.parity(spec))
    }

    /// Supercommutative product of two monomials.
    pub fn mul(&self, spec: &SpaceSpec, other: &SymMonomial) -> Option<(SymMonomial, Sign)> {
        let mut units = self.0.clone();
        units.extend_from_slice(&other.0);
        sort_units(spec, &units)
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_units(f, &self.0)
    }
}

/// A free word `X_1 X_2 ... X_k` in T(gl(m|n)), read as an element of U(gl(m|n)).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<MatrixUnit>);

impl Word {
    pub fn new(units: Vec<MatrixUnit>) -> Self {
        Self(units)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn units(&self) -> &[MatrixUnit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut units = self.0.clone();
        units.extend_from_slice(&other.0);
        Word(units)
    }

    pub fn check(&self, spec: &SpaceSpec) -> Result<()> {
        for u in &self.0 {
            spec.check_index(u.row)?;
            spec.check_index(u.col)?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_units(f, &self.0)
    }
}

fn write_units(f: &mut fmt::Formatter<'_>, units: &[MatrixUnit]) -> fmt::Result {
    if units.is_empty() {
        return write!(f, "1");
    }
    for (k, u) in units.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write!(f, "{u}")?;
    }
    Ok(())
}

fn sort_units(spec: &SpaceSpec, units: &[MatrixUnit]) -> Option<(SymMonomial, Sign)> {
    koszul_sort(units, |u| u.is_odd(spec)).map(|(v, s)| (SymMonomial(v), s))
}

/// Canonicalizes a product of matrix units in S(gl(m|n)).
///
/// Returns `Ok(None)` when the product vanishes because an odd unit repeats.
pub fn super_sort(spec: &SpaceSpec, units: &[MatrixUnit]) -> Result<Option<(SymMonomial, Sign)>> {
    for u in units {
        spec.check_index(u.row)?;
        spec.check_index(u.col)?;
    }
    Ok(sort_units(spec, units))
}

/// `E_ab E_cd = delta_bc E_ad` as a formal sum (empty or one term).
pub fn matrix_product(a: MatrixUnit, b: MatrixUnit) -> FormalSum<MatrixUnit> {
    match a.times(b) {
        Some(u) => FormalSum::basis(u),
        None => FormalSum::zero(),
    }
}

/// Super bracket `[x, y] = xy - (-1)^{p(x)p(y)} yx`.
pub fn super_bracket(spec: &SpaceSpec, x: MatrixUnit, y: MatrixUnit) -> FormalSum<MatrixUnit> {
    let mut out = matrix_product(x, y);
    let s = sign_of(usize::from(x.parity(spec) & y.parity(spec)));
    if let Some(u) = y.times(x) {
        out.add_term(u, Coeff::from(-s));
    }
    out
}

/// `F_ij = E_ij + E_{delta(i) delta(j)}`, the spanning elements of Q(n).
pub fn q_unit(spec: &SpaceSpec, i: usize, j: usize) -> Result<FormalSum<MatrixUnit>> {
    spec.require_queer()?;
    spec.check_index(i)?;
    spec.check_index(j)?;
    let mut out = FormalSum::basis(MatrixUnit::new(i, j));
    out.add_term(MatrixUnit::new(spec.delta(i), spec.delta(j)), Coeff::one());
    Ok(out)
}

/// Finite linear combination with exact integer coefficients. Zero
/// coefficients are never stored and terms iterate in the basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<B: Ord> {
    terms: BTreeMap<B, Coeff>,
}

impl<B: Ord> Default for FormalSum<B> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> FormalSum<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Coeff::one())
    }

    pub fn term(b: B, c: Coeff) -> Self {
        let mut s = Self::zero();
        s.add_term(b, c);
        s
    }

    pub fn add_term(&mut self, b: B, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Coeff {
        self.terms.get(b).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Coeff> {
        self.terms.iter()
    }

    pub fn basis_terms(&self) -> btree_map::Keys<'_, B, Coeff> {
        self.terms.keys()
    }

    /// Extends `f` linearly.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, Coeff)> for FormalSum<B> {
    fn from_iter<I: IntoIterator<Item = (B, Coeff)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (b, c) in iter {
            s.add_term(b, c);
        }
        s
    }
}

impl<B: Ord> IntoIterator for FormalSum<B> {
    type Item = (B, Coeff);
    type IntoIter = btree_map::IntoIter<B, Coeff>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, B: Ord> IntoIterator for &'a FormalSum<B> {
    type Item = (&'a B, &'a Coeff);
    type IntoIter = btree_map::Iter<'a, B, Coeff>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone> AddAssign<&FormalSum<B>> for FormalSum<B> {
    fn add_assign(&mut self, rhs: &FormalSum<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Ord + Clone> SubAssign<&FormalSum<B>> for FormalSum<B> {
    fn sub_assign(&mut self, rhs: &FormalSum<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c);
        }
    }
}

impl<B: Ord + Clone> Add for FormalSum<B> {
    type Output = FormalSum<B>;

    fn add(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone> Sub for FormalSum<B> {
    type Output = FormalSum<B>;

    fn sub(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for FormalSum<B> {
    type Output = FormalSum<B>;

    fn neg(self) -> FormalSum<B> {
        Self {
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{b}")?;
        }
        Ok(())
    }
}

/// Product in the supercommutative algebra S(gl(m|n)).
pub fn sym_product(spec: &SpaceSpec, a: &FormalSum<SymMonomial>, b: &FormalSum<SymMonomial>) -> FormalSum<SymMonomial> {
    let mut out = FormalSum::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            if let Some((m, s)) = x.mul(spec, y) {
                out.add_term(m, cx * cy * s);
            }
        }
    }
    out
}

/// Extends a formal sum of matrix units to S by picking one unit from each
/// factor: `(sum a_u u)(sum b_v v)...` canonicalized.
pub fn sym_product_of_linear(spec: &SpaceSpec, factors: &[FormalSum<MatrixUnit>]) -> FormalSum<SymMonomial> {
    let mut acc = FormalSum::basis(SymMonomial::one());
    for f in factors {
        let lin: FormalSum<SymMonomial> = f.iter().map(|(u, c)| (SymMonomial(vec![*u]), c.clone())).collect();
        acc = sym_product(spec, &acc, &lin);
    }
    acc
}

/// Sequences of matrix units that serialize as `[[row, col], ...]`.
pub trait UnitSequence: Ord + Clone + Sized {
    fn unit_slice(&self) -> &[MatrixUnit];
    fn from_unit_vec(spec: &SpaceSpec, units: Vec<MatrixUnit>) -> Result<Self>;
}

impl UnitSequence for Word {
    fn unit_slice(&self) -> &[MatrixUnit] {
        &self.0
    }

    fn from_unit_vec(spec: &SpaceSpec, units: Vec<MatrixUnit>) -> Result<Self> {
        let w = Word(units);
        w.check(spec)?;
        Ok(w)
    }
}

impl UnitSequence for SymMonomial {
    fn unit_slice(&self) -> &[MatrixUnit] {
        &self.0
    }

    fn from_unit_vec(spec: &SpaceSpec, units: Vec<MatrixUnit>) -> Result<Self> {
        SymMonomial::canonical(spec, units)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    monomial: Vec<[usize; 2]>,
}

impl<B: UnitSequence> FormalSum<B> {
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .iter()
            .map(|(b, c)| JsonTerm {
                coeff: c.to_string(),
                monomial: b.unit_slice().iter().map(|u| [u.row, u.col]).collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("formal sum serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("formal sum serializes")
    }

    /// Parses the `[{"coeff": "...", "monomial": [[r, c], ...]}, ...]` schema.
    /// Repeated monomials are summed.
    pub fn from_json_str(spec: &SpaceSpec, s: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s)?;
        let mut out = Self::zero();
        for t in terms {
            let c: Coeff = t
                .coeff
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("coefficient {:?} is not an integer", t.coeff)))?;
            let units = t.monomial.iter().map(|[r, c]| MatrixUnit::new(*r, *c)).collect();
            out.add_term(B::from_unit_vec(spec, units)?, c);
        }
        Ok(out)
    }
}
