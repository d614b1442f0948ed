//! The trace space `A / [A, A]`, with cyclic words as basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_assoc::{add_term, write_linear_combination, BiDegree, Gen, NcPoly, Word};
use crate::linalg::Rational;

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        // Here i == -1 or the characters match.
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}

/// A word up to rotation, stored as its least rotation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(w: Word) -> Self {
        let gens = w.to_gens();
        CyclicWord(w.rotate(least_rotation(&gens)))
    }

    pub fn representative(self) -> Word {
        self.0
    }

    pub fn bidegree(self) -> BiDegree {
        self.0.bidegree()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({})", self.0)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the trace space.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TracePoly {
    terms: BTreeMap<CyclicWord, Rational>,
}

impl TracePoly {
    pub fn zero() -> Self {
        TracePoly::default()
    }

    /// The canonical projection `a ↦ tr(a)`.
    pub fn tr(a: &NcPoly) -> Self {
        let mut out = TracePoly::zero();
        for (w, c) in a.terms() {
            out.add_term(CyclicWord::new(*w), c.clone());
        }
        out
    }

    /// `tr(1)`.
    pub fn unit() -> Self {
        TracePoly::tr(&NcPoly::one())
    }

    /// `a ⊗ b ↦ tr(ab)`.
    pub fn from_pair(a: &NcPoly, b: &NcPoly) -> Self {
        TracePoly::tr(&(a * b))
    }

    pub fn add_term(&mut self, w: CyclicWord, c: Rational) {
        add_term(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: CyclicWord) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TracePoly::zero();
        for (w, a) in &self.terms {
            out.add_term(*w, a * c);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &TracePoly, c: &Rational) {
        for (w, a) in &other.terms {
            self.add_term(*w, a * c);
        }
    }

    /// Drops the `tr(1)` component.
    pub fn without_unit(&self) -> TracePoly {
        let mut out = self.clone();
        out.terms.remove(&CyclicWord::new(Word::EMPTY));
        out
    }

    /// Common bidegree, `None` if inhomogeneous; zero reports `(0, 0)`.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(|w| w.bidegree());
        let first = match it.next() {
            Some(d) => d,
            None => return Some(BiDegree::default()),
        };
        it.all(|d| d == first).then_some(first)
    }

    pub fn bigraded_components(&self) -> BTreeMap<BiDegree, TracePoly> {
        let mut out: BTreeMap<BiDegree, TracePoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.bidegree()).or_default().add_term(*w, c.clone());
        }
        out
    }

    /// The partial derivative `tr(a_1 ... a_n) ↦ Σ_{a_i = g} a_{i+1} ... a_n a_1 ... a_{i-1}`.
    pub fn partial(&self, g: Gen) -> NcPoly {
        let mut out = NcPoly::zero();
        for (cw, c) in &self.terms {
            let w = cw.representative();
            for i in 0..w.len() {
                if w.letter(i) == g {
                    out.add_term(w.suffix_from(i + 1).concat(w.prefix(i)), c.clone());
                }
            }
        }
        out
    }

    /// Checks `tr(∂_x(f) x) = N_x f` and `tr(∂_y(f) y) = N_y f`, returning the
    /// bidegree of `f`.
    pub fn euler_check(&self) -> Result<BiDegree> {
        let d = self.bidegree().ok_or(Error::Inhomogeneous("trace polynomial"))?;
        for g in Gen::ALL {
            let lhs = TracePoly::from_pair(&self.partial(g), &NcPoly::gen(g));
            let rhs = self.scale(&Rational::from_integer(d.of(g).into()));
            if lhs != rhs {
                return Err(Error::IdentityFailed(format!("Euler identity for {g} on {self}")));
            }
        }
        Ok(d)
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().map(|(w, c)| (*w, c.clone())), |w| w.to_string())
    }
}

impl fmt::Debug for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracePoly({self})")
    }
}

impl<'a> Add<&'a TracePoly> for &'a TracePoly {
    type Output = TracePoly;
    fn add(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a TracePoly> for &'a TracePoly {
    type Output = TracePoly;
    fn sub(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &TracePoly {
    type Output = TracePoly;
    fn neg(self) -> TracePoly {
        self.scale(&-Rational::one())
    }
}
