//! Commutative polynomial models for weight-3 elements.
//!
//! An antisymmetric `P = Σ c_{ij} X^i Y^j` stands for the Lie element
//! `Σ c_{ij} [ad_y^i x, ad_y^j x]`; the derivation with `u(y)` of that shape
//! is tracked through conditions on `P` alone.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_assoc::{add_term, BiDegree, Gen, NcPoly};
use crate::lie::LiePoly;
use crate::linalg::{kernel_basis, primitive_integer_scaling, rank, solve, RatMatrix, Rational};
use crate::trace::TracePoly;

/// A polynomial in commuting `X`, `Y`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        BivarPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        BivarPoly::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        BivarPoly::monomial(0, 1, Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BivarPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        add_term(&mut self.coeffs, (i, j), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BivarPoly::from_terms(self.coeffs.iter().map(|(k, a)| (*k, a * c)))
    }

    /// Common total degree, `None` if inhomogeneous; zero reports 0.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|(i, j)| i + j);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(BivarPoly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// `P(p, q)`.
    pub fn substitute(&self, p: &BivarPoly, q: &BivarPoly) -> Self {
        let mut powers_p = vec![BivarPoly::constant(Rational::one())];
        let mut powers_q = vec![BivarPoly::constant(Rational::one())];
        let mut out = BivarPoly::zero();
        for (&(i, j), c) in &self.coeffs {
            while powers_p.len() <= i as usize {
                let next = powers_p.last().expect("nonempty") * p;
                powers_p.push(next);
            }
            while powers_q.len() <= j as usize {
                let next = powers_q.last().expect("nonempty") * q;
                powers_q.push(next);
            }
            let term = &powers_p[i as usize] * &powers_q[j as usize];
            out = &out + &term.scale(c);
        }
        out
    }

    /// `P(Y, X)`.
    pub fn swap(&self) -> Self {
        BivarPoly::from_terms(self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// `P(X, Y) = -P(Y, X)`.
    pub fn is_antisymmetric(&self) -> bool {
        self.swap() == -self
    }

    /// Exact division by `X^a Y^b`.
    pub fn divide_monomial(&self, a: u32, b: u32) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for (&(i, j), c) in &self.coeffs {
            if i < a || j < b {
                return Err(Error::NotDivisible(format!("{self} by X^{a}*Y^{b}")));
            }
            out.add_term(i - a, j - b, c.clone());
        }
        Ok(out)
    }

    /// Scales to primitive integer coefficients, leading (highest `X`-power)
    /// coefficient positive.
    pub fn primitive(&self) -> Self {
        let keys: Vec<(u32, u32)> = self.coeffs.keys().rev().copied().collect();
        let vals: Vec<Rational> = keys.iter().map(|k| self.coeffs[k].clone()).collect();
        BivarPoly::from_terms(keys.into_iter().zip(primitive_integer_scaling(&vals)))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.coeffs.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (name, e) in [("X", i), ("Y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), c) in &self.coeffs {
            for (&(i, j), d) in &rhs.coeffs {
                out.add_term(a + i, b + j, c * d);
            }
        }
        out
    }
}

/// A polynomial in commuting `x`, `y`, `z`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TrivarPoly {
    coeffs: BTreeMap<(u32, u32, u32), Rational>,
}

impl TrivarPoly {
    pub fn zero() -> Self {
        TrivarPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        TrivarPoly::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: [u32; 3], c: Rational) -> Self {
        let mut p = TrivarPoly::zero();
        p.add_term(e, c);
        p
    }

    /// The variable with index 0, 1 or 2 (`x`, `y`, `z`).
    pub fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        TrivarPoly::monomial(e, Rational::one())
    }

    pub fn add_term(&mut self, e: [u32; 3], c: Rational) {
        add_term(&mut self.coeffs, (e[0], e[1], e[2]), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], &Rational)> {
        self.coeffs.iter().map(|(&(a, b, c), v)| ([a, b, c], v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TrivarPoly::zero();
        for (e, a) in self.terms() {
            out.add_term(e, a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(TrivarPoly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Permutes variables: the result has `new[perm[k]] = old[k]`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut out = TrivarPoly::zero();
        for (e, c) in self.terms() {
            let mut f = [0; 3];
            for k in 0..3 {
                f[perm[k]] = e[k];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.permute([1, 0, 2]) == *self && self.permute([0, 2, 1]) == *self
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.permute([1, 0, 2]) == -self && self.permute([0, 2, 1]) == -self
    }

    /// Substitutes `z = -x - y`, returning a polynomial in `X = x`, `Y = y`.
    pub fn restrict_to_trace_zero(&self) -> BivarPoly {
        let z = &(-&BivarPoly::x()) - &BivarPoly::y();
        let mut out = BivarPoly::zero();
        for (e, c) in self.terms() {
            let m = &BivarPoly::monomial(e[0], e[1], c.clone()) * &z.pow(e[2]);
            out = &out + &m;
        }
        out
    }

    fn leading(&self) -> Option<([u32; 3], &Rational)> {
        self.coeffs.iter().next_back().map(|(&(a, b, c), v)| ([a, b, c], v))
    }

    /// Exact division; `NotDivisible` if a remainder is left.
    pub fn div_exact(&self, divisor: &TrivarPoly) -> Result<TrivarPoly> {
        let (de, dc) = divisor.leading().ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        let mut rest = self.clone();
        let mut quotient = TrivarPoly::zero();
        while let Some((e, c)) = rest.leading().map(|(e, c)| (e, c.clone())) {
            if (0..3).any(|k| e[k] < de[k]) {
                return Err(Error::NotDivisible(format!("{self} by {divisor}")));
            }
            let q = TrivarPoly::monomial([e[0] - de[0], e[1] - de[1], e[2] - de[2]], c / dc);
            rest = &rest - &(&q * divisor);
            quotient = &quotient + &q;
        }
        Ok(quotient)
    }

    /// `(x - y)(y - z)(z - x)`.
    pub fn vandermonde() -> Self {
        let v = |k: usize| TrivarPoly::var(k);
        &(&(&v(0) - &v(1)) * &(&v(1) - &v(2))) * &(&v(2) - &v(0))
    }

    /// `e1`, `e2`, `e3` for `k = 1, 2, 3`.
    pub fn elementary_symmetric(k: usize) -> Self {
        let v = |k: usize| TrivarPoly::var(k);
        match k {
            1 => &(&v(0) + &v(1)) + &v(2),
            2 => &(&(&v(0) * &v(1)) + &(&v(1) * &v(2))) + &(&v(2) * &v(0)),
            3 => &(&v(0) * &v(1)) * &v(2),
            _ => panic!("no elementary symmetric polynomial of index {k}"),
        }
    }
}

impl fmt::Display for TrivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.coeffs.iter().rev().map(|(&(a, b, c), v)| ([a, b, c], v)).enumerate() {
            let factors: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, e)| *e > 0)
                .map(|(name, e)| if e == 1 { name.to_string() } else { format!("{name}^{e}") })
                .collect();
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TrivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrivarPoly({self})")
    }
}

impl Add for &TrivarPoly {
    type Output = TrivarPoly;
    fn add(self, rhs: &TrivarPoly) -> TrivarPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &TrivarPoly {
    type Output = TrivarPoly;
    fn sub(self, rhs: &TrivarPoly) -> TrivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &TrivarPoly {
    type Output = TrivarPoly;
    fn neg(self) -> TrivarPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &TrivarPoly {
    type Output = TrivarPoly;
    fn mul(self, rhs: &TrivarPoly) -> TrivarPoly {
        let mut out = TrivarPoly::zero();
        for (a, c) in self.terms() {
            for (b, d) in rhs.terms() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], c * d);
            }
        }
        out
    }
}

/// `ad_y^k(x)` for `k = 0..=n`.
fn ad_y_powers(n: u32) -> Vec<NcPoly> {
    let mut out = vec![NcPoly::x()];
    for _ in 0..n {
        let next = NcPoly::ad_action(&NcPoly::y(), out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// `Σ c_{ij} [ad_y^i x, ad_y^j x]`.
pub fn lie_from_poly(p: &BivarPoly) -> Result<LiePoly> {
    if !p.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let max = p.terms().map(|(&(i, j), _)| i.max(j)).max().unwrap_or(0);
    let ads = ad_y_powers(max);
    let mut out = NcPoly::zero();
    for (&(i, j), c) in p.terms() {
        out.add_scaled(&ads[i as usize].commutator(&ads[j as usize]), c);
    }
    LiePoly::decompose(&out)
}

/// Inverse of [`lie_from_poly`] on elements of bidegree `(2, d)`, normalized
/// to an antisymmetric polynomial.
pub fn poly_from_lie(l: &LiePoly) -> Result<BivarPoly> {
    if l.is_zero() {
        return Ok(BivarPoly::zero());
    }
    let d = l.bidegree().ok_or(Error::Inhomogeneous("Lie element"))?;
    if d.deg_x != 2 {
        return Err(Error::InvalidArgument(format!("expected x-degree 2, got {l}")));
    }
    let n = d.deg_y as u32;
    let ads = ad_y_powers(n);
    let pairs: Vec<(u32, u32)> = (0..=n).map(|i| (i, n - i)).filter(|(i, j)| i < j).collect();
    let brackets: Vec<NcPoly> = pairs.iter().map(|&(i, j)| ads[i as usize].commutator(&ads[j as usize])).collect();
    let (m, b) = coordinate_system(&brackets, l.embedding());
    let sol = solve(&m, &b).ok_or_else(|| Error::InvalidArgument(format!("{l} is outside the bracket span")))?;
    let half = Rational::new(1.into(), 2.into());
    let mut out = BivarPoly::zero();
    for ((i, j), s) in pairs.into_iter().zip(sol) {
        let c = &s * &half;
        out.add_term(i, j, c.clone());
        out.add_term(j, i, -c);
    }
    Ok(out)
}

fn coordinate_system(columns: &[NcPoly], target: &NcPoly) -> (RatMatrix, Vec<Rational>) {
    let mut index = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for (w, _) in p.terms() {
            let next = index.len();
            index.entry(*w).or_insert(next);
        }
    }
    let cols: Vec<BTreeMap<usize, Rational>> =
        columns.iter().map(|p| p.terms().map(|(w, c)| (index[w], c.clone())).collect()).collect();
    let mut b = vec![Rational::zero(); index.len()];
    for (w, c) in target.terms() {
        b[index[w]] = c.clone();
    }
    (RatMatrix::from_columns(index.len(), &cols), b)
}

/// `κP = P(X,Y) - P(-X-Y,Y) + P(-X-Y,X)`.
pub fn kappa_poly(p: &BivarPoly) -> BivarPoly {
    let s = &(-&BivarPoly::x()) - &BivarPoly::y();
    let a = p.substitute(&s, &BivarPoly::y());
    let b = p.substitute(&s, &BivarPoly::x());
    &(p - &a) + &b
}

/// `X^i Y^{d-i} - X^{d-i} Y^i` for `i > d - i`.
pub fn antisymmetric_basis(d: u32) -> Vec<BivarPoly> {
    (0..=d)
        .rev()
        .filter(|&i| i > d - i)
        .map(|i| &BivarPoly::monomial(i, d - i, Rational::one()) - &BivarPoly::monomial(d - i, i, Rational::one()))
        .collect()
}

/// Kernel of the linear maps `fs` restricted to the span of `basis`.
fn joint_kernel(basis: &[BivarPoly], fs: &[&dyn Fn(&BivarPoly) -> BivarPoly]) -> Vec<BivarPoly> {
    let mut index: BTreeMap<(usize, (u32, u32)), usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for b in basis {
        let mut col = BTreeMap::new();
        for (k, f) in fs.iter().enumerate() {
            for (&m, c) in f(b).terms() {
                let next = index.len();
                let r = *index.entry((k, m)).or_insert(next);
                col.insert(r, c.clone());
            }
        }
        cols.push(col);
    }
    let m = RatMatrix::from_columns(index.len(), &cols);
    kernel_basis(&m)
        .into_iter()
        .map(|v| {
            let mut p = BivarPoly::zero();
            for (c, b) in v.iter().zip(basis) {
                p = &p + &b.scale(c);
            }
            p.primitive()
        })
        .collect()
}

/// Antisymmetric solutions of `κP = 3P` in degree `d`.
pub fn cond_i_space(d: u32) -> Vec<BivarPoly> {
    let eigen = |p: &BivarPoly| &kappa_poly(p) - &p.scale(&Rational::from_integer(3.into()));
    joint_kernel(&antisymmetric_basis(d), &[&eigen])
}

/// `P(Y, X - Y)` and `P(X, Y - X)`.
fn cond_ii_parts(p: &BivarPoly) -> (BivarPoly, BivarPoly) {
    let (x, y) = (BivarPoly::x(), BivarPoly::y());
    (p.substitute(&y, &(&x - &y)), p.substitute(&x, &(&y - &x)))
}

fn cond_ii_cleared(p: &BivarPoly) -> BivarPoly {
    let (a, b) = cond_ii_parts(p);
    &(&BivarPoly::y() * &a) + &(&BivarPoly::x() * &b)
}

/// `Y P(Y, X-Y) + X P(X, Y-X)`, which vanishes iff
/// `P(Y, X-Y)/X + P(X, Y-X)/Y` does.
pub fn cond_ii_residual(p: &BivarPoly) -> Result<BivarPoly> {
    cond_ii_quotient(p)?;
    Ok(cond_ii_cleared(p))
}

/// `P(Y, X-Y)/X + P(X, Y-X)/Y`, with both divisions exact.
pub fn cond_ii_quotient(p: &BivarPoly) -> Result<BivarPoly> {
    if !p.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let (a, b) = cond_ii_parts(p);
    Ok(&a.divide_monomial(1, 0)? + &b.divide_monomial(0, 1)?)
}

/// Degree-`d` polynomials that are even, antisymmetric, satisfy `κP = 3P`
/// and make the condition-(ii) residual vanish.
pub fn joint_space(d: u32) -> Result<Vec<BivarPoly>> {
    if d % 2 == 1 {
        return Err(Error::InvalidArgument(format!("joint conditions need even degree, got {d}")));
    }
    let eigen = |p: &BivarPoly| &kappa_poly(p) - &p.scale(&Rational::from_integer(3.into()));
    Ok(joint_kernel(&antisymmetric_basis(d), &[&eigen, &cond_ii_cleared]))
}

pub fn even_solutions_dim(d: u32) -> Result<usize> {
    Ok(joint_space(d)?.len())
}

/// The dimension the polynomial model predicts for `krv^{(3,d)}`.
pub fn model_dimension(d: u32) -> Result<usize> {
    if d.is_multiple_of(2) {
        even_solutions_dim(d)
    } else {
        Ok(cond_i_space(d).len())
    }
}

/// `⌊(m-1)/2⌋ - ⌊(m-1)/3⌋`.
pub fn weight3_floor_formula(m: u64) -> i64 {
    let k = m as i64 - 1;
    k.div_euclid(2) - k.div_euclid(3)
}

/// Nonnegative solutions of `2a + 3b = m - 3`.
pub fn weight3_tree_count(m: u64) -> u64 {
    if m < 3 {
        return 0;
    }
    let n = m - 3;
    (0..=n / 3).filter(|b| (n - 3 * b).is_multiple_of(2)).count() as u64
}

/// [`weight3_tree_count`], checked against [`weight3_floor_formula`].
pub fn weight3_tree_dim(m: u64) -> Result<u64> {
    let count = weight3_tree_count(m);
    let formula = weight3_floor_formula(m);
    if count as i64 != formula {
        return Err(Error::IdentityFailed(format!("tree count {count} vs formula {formula} at m = {m}")));
    }
    Ok(count)
}

/// Dimension of degree-`n` symmetric polynomials in `x, y, z` modulo
/// `x + y + z`, by rank of all `e1^a e2^b e3^c` restricted to `z = -x - y`.
pub fn symmetric_mod_e1_dim(n: u32) -> usize {
    let e: Vec<TrivarPoly> = (1..=3).map(TrivarPoly::elementary_symmetric).collect();
    let mut images = Vec::new();
    for c in 0..=n / 3 {
        for b in 0..=(n - 3 * c) / 2 {
            let a = n - 3 * c - 2 * b;
            let m = &(&e[0].pow(a) * &e[1].pow(b)) * &e[2].pow(c);
            images.push(m.restrict_to_trace_zero());
        }
    }
    let zero = BivarPoly::zero();
    let (m, _) = bivar_coordinates(&images, &zero);
    rank(&m)
}

fn bivar_coordinates(columns: &[BivarPoly], target: &BivarPoly) -> (RatMatrix, Vec<Rational>) {
    let mut index = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for (k, _) in p.terms() {
            let next = index.len();
            index.entry(*k).or_insert(next);
        }
    }
    let cols: Vec<BTreeMap<usize, Rational>> =
        columns.iter().map(|p| p.terms().map(|(k, c)| (index[k], c.clone())).collect()).collect();
    let mut b = vec![Rational::zero(); index.len()];
    for (k, c) in target.terms() {
        b[index[k]] = c.clone();
    }
    (RatMatrix::from_columns(index.len(), &cols), b)
}

/// Divides a totally antisymmetric `q` by `(x - y)(y - z)(z - x)`.
pub fn antisym_factor(q: &TrivarPoly) -> Result<TrivarPoly> {
    q.div_exact(&TrivarPoly::vandermonde())
}

/// `X^i Y^j ↦ tr(x y^i x y^j)`.
pub fn trace_of_bivar(p: &BivarPoly) -> TracePoly {
    let mut out = TracePoly::zero();
    for (&(i, j), c) in p.terms() {
        let mut w = NcPoly::x();
        for _ in 0..i {
            w = &w * &NcPoly::y();
        }
        w = &w * &NcPoly::x();
        for _ in 0..j {
            w = &w * &NcPoly::y();
        }
        out.add_scaled(&TracePoly::tr(&w), c);
    }
    out
}

/// The polynomial of `∂_x Γ` for `Γ` of bidegree `(3, d)`.
pub fn poly_of_tree(gamma: &TracePoly) -> Result<BivarPoly> {
    match gamma.bidegree() {
        Some(BiDegree { deg_x: 3, .. }) => {}
        _ => return Err(Error::InvalidArgument(format!("expected x-degree 3: {gamma}"))),
    }
    let marked = gamma.partial(Gen::X);
    poly_from_lie(&LiePoly::decompose(&marked)?)
}

/// One row of the polynomial-model table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyModelRow {
    pub degree: u32,
    pub dim_cond_i: usize,
    pub dim_joint: Option<usize>,
}

/// Rows for degrees `1..=d_max`; `dim_joint` is only defined for even degrees.
pub fn poly_model_table(d_max: u32) -> Result<Vec<PolyModelRow>> {
    (1..=d_max)
        .map(|d| {
            let dim_joint = if d % 2 == 0 { Some(even_solutions_dim(d)?) } else { None };
            Ok(PolyModelRow { degree: d, dim_cond_i: cond_i_space(d).len(), dim_joint })
        })
        .collect()
}
