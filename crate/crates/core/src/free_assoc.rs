//! The free associative algebra on two generators over the rationals.
//!
//! Monomials are [`Word`]s over `{x, y}`, polynomials are [`NcPoly`]s and
//! elements of the tensor square are [`TensorPoly`]s. The tensor square is an
//! outer bimodule: `a . (u ⊗ v) . b = au ⊗ vb`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// One of the two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub const ALL: [Gen; 2] = [Gen::X, Gen::Y];

    fn bit(self) -> u64 {
        match self {
            Gen::X => 0,
            Gen::Y => 1,
        }
    }

    fn from_bit(b: u64) -> Gen {
        if b == 0 {
            Gen::X
        } else {
            Gen::Y
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }

    pub fn other(self) -> Gen {
        match self {
            Gen::X => Gen::Y,
            Gen::Y => Gen::X,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub const MAX_WORD_LEN: usize = 64;

/// A word over `{x, y}`, packed into a `u64` with the first letter in the
/// most significant of the `len` low bits. `x` is 0 and `y` is 1, so the derived
/// ordering is length first, then lexicographic with `x < y`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn gen(g: Gen) -> Word {
        Word { len: 1, bits: g.bit() }
    }

    pub fn from_gens(gens: &[Gen]) -> Word {
        assert!(gens.len() <= MAX_WORD_LEN, "word longer than {MAX_WORD_LEN} letters");
        let bits = gens.iter().fold(0u64, |acc, g| (acc << 1) | g.bit());
        Word { len: gens.len() as u8, bits }
    }

    /// Parses a string of `x`/`y` letters; `"1"` and `""` give the empty word.
    pub fn parse(s: &str) -> Option<Word> {
        if s == "1" {
            return Some(Word::EMPTY);
        }
        let gens: Option<Vec<Gen>> = s
            .chars()
            .map(|c| match c {
                'x' => Some(Gen::X),
                'y' => Some(Gen::Y),
                _ => None,
            })
            .collect();
        let gens = gens?;
        (gens.len() <= MAX_WORD_LEN).then(|| Word::from_gens(&gens))
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn letter(self, i: usize) -> Gen {
        assert!(i < self.len());
        Gen::from_bit((self.bits >> (self.len() - 1 - i)) & 1)
    }

    pub fn letters(self) -> impl Iterator<Item = Gen> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn to_gens(self) -> Vec<Gen> {
        self.letters().collect()
    }

    pub fn concat(self, other: Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= MAX_WORD_LEN, "word longer than {MAX_WORD_LEN} letters");
        let bits = if other.len == 0 { self.bits } else { (self.bits << other.len) | other.bits };
        Word { len: len as u8, bits }
    }

    /// Letters `start..end`.
    pub fn slice(self, start: usize, end: usize) -> Word {
        assert!(start <= end && end <= self.len());
        let len = end - start;
        if len == 0 {
            return Word::EMPTY;
        }
        let shifted = self.bits >> (self.len() - end);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Word { len: len as u8, bits: shifted & mask }
    }

    pub fn prefix(self, n: usize) -> Word {
        self.slice(0, n)
    }

    pub fn suffix_from(self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    /// Moves the first `k` letters to the end.
    pub fn rotate(self, k: usize) -> Word {
        if self.is_empty() {
            return self;
        }
        let k = k % self.len();
        self.suffix_from(k).concat(self.prefix(k))
    }

    pub fn reverse(self) -> Word {
        let mut gens = self.to_gens();
        gens.reverse();
        Word::from_gens(&gens)
    }

    pub fn count(self, g: Gen) -> usize {
        let ones = self.bits.count_ones() as usize;
        match g {
            Gen::Y => ones,
            Gen::X => self.len() - ones,
        }
    }

    pub fn bidegree(self) -> BiDegree {
        BiDegree::new(self.count(Gen::X), self.count(Gen::Y))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for g in self.letters() {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Number of `x` and `y` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize)]
pub struct BiDegree {
    pub deg_x: usize,
    pub deg_y: usize,
}

impl BiDegree {
    pub fn new(deg_x: usize, deg_y: usize) -> Self {
        BiDegree { deg_x, deg_y }
    }

    pub fn total(self) -> usize {
        self.deg_x + self.deg_y
    }

    pub fn of(self, g: Gen) -> usize {
        match g {
            Gen::X => self.deg_x,
            Gen::Y => self.deg_y,
        }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.deg_x, self.deg_y)
    }
}

pub(crate) fn add_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Writes `c*term` pieces joined with ` + ` / ` - `. `render_term` receives the
/// key; a term rendered as `"1"` with a nontrivial coefficient prints only the
/// coefficient.
pub(crate) fn write_linear_combination<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, Rational)>,
    mut render_term: impl FnMut(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (key, c) in terms {
        let body = render_term(&key);
        let negative = c.is_negative();
        let mag = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        first = false;
        if mag.is_one() {
            write!(f, "{body}")?;
        } else if body == "1" {
            write!(f, "{mag}")?;
        } else {
            write!(f, "{mag}*{body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// An element of the free associative algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        NcPoly::term(Word::EMPTY, c)
    }

    pub fn gen(g: Gen) -> Self {
        NcPoly::word(Word::gen(g))
    }

    pub fn x() -> Self {
        NcPoly::gen(Gen::X)
    }

    pub fn y() -> Self {
        NcPoly::gen(Gen::Y)
    }

    pub fn word(w: Word) -> Self {
        NcPoly::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Parses a single word like `"xyx"`, panicking on other letters.
    pub fn w(s: &str) -> Self {
        NcPoly::word(Word::parse(s).unwrap_or_else(|| panic!("not a word: {s:?}")))
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        add_term(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, a)| (*w, a * c)).collect() }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Rational) {
        for (w, a) in &other.terms {
            self.add_term(*w, a * c);
        }
    }

    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }

    /// Coefficient of the empty word.
    pub fn epsilon(&self) -> Rational {
        self.coeff(Word::EMPTY)
    }

    /// Reverses every word and multiplies by `(-1)^length`.
    pub fn star(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let c = if w.len() % 2 == 1 { -c } else { c.clone() };
            (w.reverse(), c)
        }))
    }

    /// The common bidegree of all words, or `None` when the polynomial is not
    /// bihomogeneous. The zero polynomial reports `(0, 0)`.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(|w| w.bidegree());
        let first = match it.next() {
            Some(d) => d,
            None => return Some(BiDegree::default()),
        };
        it.all(|d| d == first).then_some(first)
    }

    /// The common total degree, or `None` if inhomogeneous. Zero reports 0.
    pub fn total_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let first = match it.next() {
            Some(d) => d,
            None => return Some(0),
        };
        it.all(|d| d == first).then_some(first)
    }

    pub fn bigraded_components(&self) -> BTreeMap<BiDegree, NcPoly> {
        let mut out: BTreeMap<BiDegree, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.bidegree()).or_default().add_term(*w, c.clone());
        }
        out
    }

    pub fn graded_components(&self) -> BTreeMap<usize, NcPoly> {
        let mut out: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len()).or_default().add_term(*w, c.clone());
        }
        out
    }

    /// The partial derivative into the tensor square: each occurrence of `g`
    /// splits its word into `prefix ⊗ suffix`.
    pub fn partial(&self, g: Gen) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, c) in &self.terms {
            for i in 0..w.len() {
                if w.letter(i) == g {
                    out.add_term(w.prefix(i), w.suffix_from(i + 1), c.clone());
                }
            }
        }
        out
    }

    /// The adjoint action `ad_a(l)`, with `ad_{g w}(l) = [g, ad_w(l)]` and
    /// `ad_1 = id`.
    pub fn ad_action(a: &NcPoly, l: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &a.terms {
            let mut cur = l.clone();
            for i in (0..w.len()).rev() {
                cur = NcPoly::gen(w.letter(i)).commutator(&cur);
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    /// `(ad_a)^k (l)`.
    pub fn ad_power(a: &NcPoly, k: u32, l: &NcPoly) -> NcPoly {
        (0..k).fold(l.clone(), |acc, _| NcPoly::ad_action(a, &acc))
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().map(|(w, c)| (*w, c.clone())), |w| w.to_string())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(*v), a * b);
            }
        }
        out
    }
}

/// An element of `A ⊗ A`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    /// `1 ⊗ 1`.
    pub fn unit() -> Self {
        TensorPoly::simple(&NcPoly::one(), &NcPoly::one())
    }

    pub fn simple(a: &NcPoly, b: &NcPoly) -> Self {
        let mut out = TensorPoly::zero();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                out.add_term(*u, *v, c * d);
            }
        }
        out
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Rational) {
        add_term(&mut self.terms, (left, right), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TensorPoly::zero();
        for ((u, v), a) in &self.terms {
            out.add_term(*u, *v, a * c);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Rational) {
        for ((u, v), a) in &other.terms {
            self.add_term(*u, *v, a * c);
        }
    }

    /// `a . t`, multiplying the first slot on the left.
    pub fn left_mul(&self, a: &NcPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, c) in a.terms() {
            for ((u, v), d) in &self.terms {
                out.add_term(w.concat(*u), *v, c * d);
            }
        }
        out
    }

    /// `t . b`, multiplying the second slot on the right.
    pub fn right_mul(&self, b: &NcPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((u, v), d) in &self.terms {
            for (w, c) in b.terms() {
                out.add_term(*u, v.concat(*w), c * d);
            }
        }
        out
    }

    /// `(Σ A_i ⊗ B_i) ♦ C = Σ A_i C B_i`.
    pub fn diamond(&self, c: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((a, b), k) in &self.terms {
            for (w, d) in c.terms() {
                out.add_term(a.concat(*w).concat(*b), k * d);
            }
        }
        out
    }

    /// Contraction against the bimodule: `(a ⊗ b) ♦ (c ⊗ d) = ac ⊗ db`.
    pub fn diamond_bimodule(&self, m: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), k) in &self.terms {
            for ((c, d), l) in &m.terms {
                out.add_term(a.concat(*c), d.concat(*b), k * l);
            }
        }
        out
    }

    /// `id ⊗ ε`: keeps terms whose second slot is the empty word.
    pub fn id_epsilon(&self) -> NcPoly {
        NcPoly::from_terms(
            self.terms.iter().filter(|((_, v), _)| v.is_empty()).map(|((u, _), c)| (*u, c.clone())),
        )
    }

    /// `a ⊗ b ↦ b a`.
    pub fn swap_multiply(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|((u, v), c)| (v.concat(*u), c.clone())))
    }

    /// `[g, t] = g.t - t.g` for the outer bimodule structure.
    pub fn commutator_with(&self, a: &NcPoly) -> TensorPoly {
        let mut out = self.left_mul(a);
        out.add_scaled(&self.right_mul(a), &-Rational::one());
        out
    }

    /// `ad_a(t)` on the bimodule, `ad_{g w}(t) = [g, ad_w(t)]`.
    pub fn ad_action(a: &NcPoly, t: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, c) in a.terms() {
            let mut cur = t.clone();
            for i in (0..w.len()).rev() {
                cur = cur.commutator_with(&NcPoly::gen(w.letter(i)));
            }
            out.add_scaled(&cur, c);
        }
        out
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().map(|(k, c)| (*k, c.clone())), |(u, v)| {
            format!("tensor({u}; {v})")
        })
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPoly({self})")
    }
}

impl<'a> Add<&'a TensorPoly> for &'a TensorPoly {
    type Output = TensorPoly;
    fn add(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a TensorPoly> for &'a TensorPoly {
    type Output = TensorPoly;
    fn sub(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

/// All words of the given length, in ascending order.
pub fn words_of_length(n: usize) -> impl Iterator<Item = Word> {
    assert!(n < MAX_WORD_LEN);
    (0..(1u64 << n)).map(move |bits| Word { len: n as u8, bits })
}

/// All words with the given letter counts, in ascending order.
pub fn words_of_bidegree(d: BiDegree) -> impl Iterator<Item = Word> {
    words_of_length(d.total()).filter(move |w| w.bidegree() == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use proptest::prelude::*;

    fn p(s: &str) -> NcPoly {
        NcPoly::w(s)
    }

    fn t(a: &str, b: &str) -> TensorPoly {
        TensorPoly::simple(&p(a), &p(b))
    }

    #[test]
    fn word_packing() {
        let w = Word::parse("xyx").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_gens(), vec![Gen::X, Gen::Y, Gen::X]);
        assert_eq!(w.to_string(), "xyx");
        assert_eq!(w.rotate(1).to_string(), "yxx");
        assert_eq!(w.reverse().to_string(), "xyx");
        assert_eq!(w.slice(1, 3).to_string(), "yx");
        assert_eq!(Word::EMPTY.to_string(), "1");
        assert!(Word::parse("xz").is_none());
        assert!(Word::parse("x").unwrap() < Word::parse("y").unwrap());
        assert!(Word::parse("yy").unwrap() < Word::parse("xxx").unwrap());
        assert!(Word::parse("xyy").unwrap() < Word::parse("yxx").unwrap());
    }

    #[test]
    fn multiplication() {
        assert_eq!(&p("x") * &p("y"), p("xy"));
        assert_eq!(&(&p("x") + &p("y")) * &p("x"), &p("xx") + &p("yx"));
        let a = &p("xy") + &p("yyx").scale(&rat(2, 3));
        assert_eq!(&NcPoly::one() * &a, a);
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("xy").partial(Gen::X), t("1", "y"));
        assert_eq!(p("xyx").partial(Gen::X), &t("1", "yx") + &t("xy", "1"));
        assert!(p("x").partial(Gen::Y).is_zero());
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(t("1", "y").diamond(&p("x")), p("xy"));
        assert_eq!(t("xy", "1").diamond(&p("y")), p("xyy"));
        assert_eq!(p("xyx").partial(Gen::X).diamond(&p("x")), p("xyx").scale(&int(2)));
    }

    #[test]
    fn diamond_bimodule_examples() {
        let m = &t("x", "1") - &t("1", "x");
        assert_eq!(TensorPoly::unit().diamond_bimodule(&m), m);
        assert_eq!(t("x", "y").diamond_bimodule(&TensorPoly::unit()), t("x", "y"));
        // ∂_x(xy) ♦ (x⊗1 − 1⊗x) = x⊗y − 1⊗xy.
        let lhs = p("xy").partial(Gen::X).diamond_bimodule(&m);
        assert_eq!(lhs, &t("x", "y") - &t("1", "xy"));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!((&NcPoly::one() + &p("xy").scale(&int(2))).epsilon(), int(1));
        assert_eq!(p("x").epsilon(), int(0));
        assert_eq!((&NcPoly::scalar(int(3)) - &p("xyx")).epsilon(), int(3));
    }

    #[test]
    fn ad_examples() {
        let x = p("x");
        let y = p("y");
        assert_eq!(NcPoly::ad_action(&y, &x), &p("yx") - &p("xy"));
        assert_eq!(NcPoly::ad_action(&p("yy"), &x), y.commutator(&y.commutator(&x)));
        assert_eq!(NcPoly::ad_action(&(&x + &y), &x), y.commutator(&x));
        assert_eq!(NcPoly::ad_power(&y, 2, &x), NcPoly::ad_action(&p("yy"), &x));
        assert_eq!(NcPoly::ad_action(&NcPoly::scalar(int(3)), &x), x.scale(&int(3)));
    }

    #[test]
    fn star_examples() {
        assert_eq!(p("xy").star(), p("yx"));
        assert_eq!(p("x").star(), -&p("x"));
        assert_eq!(p("xyy").star(), -&p("yyx"));
    }

    #[test]
    fn bidegree_examples() {
        assert_eq!(p("xyx").bidegree(), Some(BiDegree::new(2, 1)));
        assert_eq!((&p("x") + &p("y")).bidegree(), None);
        assert_eq!(NcPoly::zero().bidegree(), Some(BiDegree::new(0, 0)));
    }

    #[test]
    fn rendering() {
        let a = NcPoly::from_terms([
            (Word::EMPTY, rat(3, 2)),
            (Word::parse("xy").unwrap(), int(-1)),
            (Word::parse("yx").unwrap(), rat(-2, 5)),
        ]);
        assert_eq!(a.to_string(), "3/2 - xy - 2/5*yx");
        assert_eq!(NcPoly::zero().to_string(), "0");
        assert_eq!((-&p("x")).to_string(), "-x");
        assert_eq!(t("1", "y").to_string(), "tensor(1; y)");
    }

    /// Third Euler identity over every word up to length 5.
    #[test]
    fn euler_bimodule_identity_exhaustive() {
        let mx = &t("x", "1") - &t("1", "x");
        let my = &t("y", "1") - &t("1", "y");
        for n in 0..=5 {
            for w in words_of_length(n) {
                let a = NcPoly::word(w);
                let lhs = &a.partial(Gen::X).diamond_bimodule(&mx) + &a.partial(Gen::Y).diamond_bimodule(&my);
                let rhs = &TensorPoly::simple(&a, &NcPoly::one()) - &TensorPoly::simple(&NcPoly::one(), &a);
                assert_eq!(lhs, rhs, "word {w}");
            }
        }
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = NcPoly> {
        proptest::collection::vec((0..=max_len, any::<u64>(), -3i64..=3), 0..5).prop_map(move |ts| {
            NcPoly::from_terms(ts.into_iter().map(|(len, bits, c)| {
                let gens: Vec<Gen> = (0..len).map(|i| Gen::from_bit((bits >> i) & 1)).collect();
                (Word::from_gens(&gens), int(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn partial_is_a_derivation(f in arb_poly(6), g in arb_poly(6)) {
            for gen in Gen::ALL {
                let lhs = (&f * &g).partial(gen);
                let rhs = &f.partial(gen).right_mul(&g) + &g.partial(gen).left_mul(&f);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn star_is_an_anti_involution(a in arb_poly(5), b in arb_poly(5)) {
            prop_assert_eq!(a.star().star(), a.clone());
            prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        }

        #[test]
        fn euler_counts_letters(a in arb_poly(6)) {
            for (d, comp) in a.bigraded_components() {
                for g in Gen::ALL {
                    let lhs = comp.partial(g).diamond(&NcPoly::gen(g));
                    prop_assert_eq!(lhs, comp.scale(&int(d.of(g) as i64)));
                }
            }
        }

        #[test]
        fn rotation_and_slicing(bits in any::<u64>(), len in 0usize..20, k in 0usize..40) {
            let gens: Vec<Gen> = (0..len).map(|i| Gen::from_bit((bits >> i) & 1)).collect();
            let w = Word::from_gens(&gens);
            let mut rotated = gens.clone();
            if len > 0 {
                rotated.rotate_left(k % len);
            }
            prop_assert_eq!(w.rotate(k), Word::from_gens(&rotated));
            prop_assert_eq!(w.reverse().reverse(), w);
        }
    }
}
