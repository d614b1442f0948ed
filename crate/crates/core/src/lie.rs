//! The free Lie algebra `L ⊂ A` in Lyndon-basis coordinates, and the space
//! `F(L)` of Lie trees realized inside the trace space.
//!
//! A [`LiePoly`] keeps both its Lyndon coordinates and its associative
//! embedding. The embedding drives the operator calculus; the coordinates are
//! what dimension counts and rendering use.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_assoc::{write_linear_combination, BiDegree, Gen, NcPoly, Word};
use crate::linalg::{pivot_columns, solve, RatMatrix, Rational};
use crate::trace::{CyclicWord, TracePoly};

/// Largest total degree accepted by basis and component computations.
pub const MAX_TOTAL_DEGREE: usize = 16;

pub(crate) fn check_degree_cap(total: usize) -> Result<()> {
    if total > MAX_TOTAL_DEGREE {
        return Err(Error::DegreeCap { requested: total, cap: MAX_TOTAL_DEGREE });
    }
    Ok(())
}

/// True iff `w` is nonempty and strictly smaller than each proper rotation.
pub fn is_lyndon(w: Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < w.rotate(k))
}

/// A Lyndon word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(w: Word) -> Option<Self> {
        is_lyndon(w).then_some(LyndonWord(w))
    }

    pub fn word(self) -> Word {
        self.0
    }

    pub fn bidegree(self) -> BiDegree {
        self.0.bidegree()
    }

    /// `w = uv` with `v` the longest proper Lyndon suffix. `None` for letters.
    pub fn standard_factorization(self) -> Option<(LyndonWord, LyndonWord)> {
        let w = self.0;
        (1..w.len()).find_map(|i| {
            let v = w.suffix_from(i);
            is_lyndon(v).then(|| (LyndonWord(w.prefix(i)), LyndonWord(v)))
        })
    }

    /// The standard bracketing as an element of `A`. Its smallest word is the
    /// Lyndon word itself, with coefficient 1.
    pub fn bracketing(self) -> Arc<NcPoly> {
        static CACHE: OnceLock<RwLock<HashMap<Word, Arc<NcPoly>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.read().expect("bracket cache poisoned").get(&self.0) {
            return p.clone();
        }
        let p = match self.standard_factorization() {
            None => NcPoly::word(self.0),
            Some((u, v)) => u.bracketing().commutator(&v.bracketing()),
        };
        let p = Arc::new(p);
        cache.write().expect("bracket cache poisoned").insert(self.0, p.clone());
        p
    }

    /// Bracket notation, e.g. `[x,[x,y]]`.
    pub fn bracket_string(self) -> String {
        match self.standard_factorization() {
            None => self.0.to_string(),
            Some((u, v)) => format!("[{},{}]", u.bracket_string(), v.bracket_string()),
        }
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lyndon({})", self.0)
    }
}

/// All Lyndon words of length exactly `n`, ascending (Duval's generation).
pub fn lyndon_words(n: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut w: Vec<i8> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        if w.len() == n {
            let gens: Vec<Gen> = w.iter().map(|&b| if b == 0 { Gen::X } else { Gen::Y }).collect();
            out.push(LyndonWord(Word::from_gens(&gens)));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
    }
    out
}

pub fn lyndon_words_of_bidegree(d: BiDegree) -> Vec<LyndonWord> {
    lyndon_words(d.total()).into_iter().filter(|w| w.bidegree() == d).collect()
}

/// The left-normed bracketing `[...[[w1, w2], w3], ..., wn]`.
fn dynkin_word(w: Word) -> NcPoly {
    let mut letters = w.letters();
    let Some(first) = letters.next() else { return NcPoly::zero() };
    letters.fold(NcPoly::gen(first), |acc, g| acc.commutator(&NcPoly::gen(g)))
}

/// The Dynkin map applied linearly.
pub fn dynkin_map(a: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in a.terms() {
        out.add_scaled(&dynkin_word(*w), c);
    }
    out
}

/// Membership test for `L` that works degree by degree with the Dynkin map.
pub fn is_lie(a: &NcPoly) -> bool {
    a.graded_components().into_iter().all(|(n, comp)| {
        n >= 1 && dynkin_map(&comp) == comp.scale(&Rational::from_integer(n.into()))
    })
}

/// An element of the free Lie algebra.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LiePoly {
    coords: BTreeMap<LyndonWord, Rational>,
    embedding: NcPoly,
}

impl LiePoly {
    pub fn zero() -> Self {
        LiePoly::default()
    }

    pub fn gen(g: Gen) -> Self {
        LiePoly::basis(LyndonWord(Word::gen(g)))
    }

    pub fn x() -> Self {
        LiePoly::gen(Gen::X)
    }

    pub fn y() -> Self {
        LiePoly::gen(Gen::Y)
    }

    pub fn basis(w: LyndonWord) -> Self {
        LiePoly::from_coords([(w, Rational::one())])
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (LyndonWord, Rational)>) -> Self {
        let mut embedding = NcPoly::zero();
        let mut map = BTreeMap::new();
        for (w, c) in coords {
            embedding.add_scaled(&w.bracketing(), &c);
            crate::free_assoc::add_term(&mut map, w, c);
        }
        LiePoly { coords: map, embedding }
    }

    /// Lyndon coordinates of `a` by triangular elimination on smallest words.
    /// Succeeds exactly when `a` lies in `L`.
    pub fn decompose(a: &NcPoly) -> Result<LiePoly> {
        let mut rest = a.clone();
        let mut coords = BTreeMap::new();
        loop {
            let next = rest.terms().next().map(|(w, c)| (*w, c.clone()));
            let Some((w, c)) = next else { break };
            let lw = LyndonWord::new(w)
                .ok_or_else(|| Error::NotLie(format!("{a} (word {w} is not Lyndon)")))?;
            rest.add_scaled(&lw.bracketing(), &-c.clone());
            coords.insert(lw, c);
        }
        Ok(LiePoly { coords, embedding: a.clone() })
    }

    /// Membership via the Dynkin map `D`: a homogeneous `a` of degree `n` lies in
    /// `L` iff `D(a) = n a`. Returns Lyndon coordinates on success.
    pub fn dynkin_project(a: &NcPoly) -> Result<LiePoly> {
        let n = a.total_degree().ok_or(Error::Inhomogeneous("polynomial"))?;
        if a.is_zero() {
            return Ok(LiePoly::zero());
        }
        if n == 0 || dynkin_map(a) != a.scale(&Rational::from_integer(n.into())) {
            return Err(Error::NotLie(a.to_string()));
        }
        LiePoly::decompose(a)
    }

    pub fn coords(&self) -> impl Iterator<Item = (&LyndonWord, &Rational)> {
        self.coords.iter()
    }

    pub fn embedding(&self) -> &NcPoly {
        &self.embedding
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn bidegree(&self) -> Option<BiDegree> {
        self.embedding.bidegree()
    }

    pub fn scale(&self, c: &Rational) -> LiePoly {
        if c.is_zero() {
            return LiePoly::zero();
        }
        LiePoly {
            coords: self.coords.iter().map(|(w, a)| (*w, a * c)).collect(),
            embedding: self.embedding.scale(c),
        }
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        let mut coords = self.coords.clone();
        for (w, c) in &other.coords {
            crate::free_assoc::add_term(&mut coords, *w, c.clone());
        }
        LiePoly { coords, embedding: &self.embedding + &other.embedding }
    }

    pub fn sub(&self, other: &LiePoly) -> LiePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LiePoly {
        self.scale(&-Rational::one())
    }

    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        let embedding = self.embedding.commutator(&other.embedding);
        LiePoly::decompose(&embedding).expect("bracket of Lie elements is Lie")
    }

    /// `ad_a(l)` for an arbitrary `a ∈ A`; the result is again Lie.
    pub fn ad_action(a: &NcPoly, l: &LiePoly) -> LiePoly {
        let embedding = NcPoly::ad_action(a, &l.embedding);
        LiePoly::decompose(&embedding).expect("ad action preserves L")
    }

    /// `(ad_a)^k(l)`.
    pub fn ad_power(a: &NcPoly, k: u32, l: &LiePoly) -> LiePoly {
        (0..k).fold(l.clone(), |acc, _| LiePoly::ad_action(a, &acc))
    }

    /// `ad_y^k(x)` and friends: `(ad_g)^k(l)` for a generator `g`.
    pub fn ad_gen_power(g: Gen, k: u32, l: &LiePoly) -> LiePoly {
        LiePoly::ad_power(&NcPoly::gen(g), k, l)
    }

    /// `(id ⊗ ε) ∘ ∂`: the coefficient-weighted prefixes of words ending in `g`.
    pub fn partial(&self, g: Gen) -> NcPoly {
        partial_lie(&self.embedding, g)
    }
}

/// `(id ⊗ ε) ∘ ∂_g` on any element of `A`.
pub fn partial_lie(a: &NcPoly, g: Gen) -> NcPoly {
    NcPoly::from_terms(a.terms().filter_map(|(w, c)| {
        let n = w.len();
        (n > 0 && w.letter(n - 1) == g).then(|| (w.prefix(n - 1), c.clone()))
    }))
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.coords.iter().map(|(w, c)| (*w, c.clone())), |w| w.bracket_string())
    }
}

impl fmt::Debug for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LiePoly({self})")
    }
}

/// A trace polynomial known to come from `F(L)`, i.e. to lie in the span of
/// `tr(l m)` with `l, m ∈ L`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FLElement {
    value: TracePoly,
}

impl FLElement {
    pub fn zero() -> Self {
        FLElement::default()
    }

    /// `Θ(a, b) = tr(ab)`.
    pub fn theta(a: &LiePoly, b: &LiePoly) -> Self {
        FLElement { value: TracePoly::from_pair(a.embedding(), b.embedding()) }
    }

    /// Certifies membership by solving against a basis of each bigraded piece.
    pub fn certify(f: &TracePoly) -> Result<FLElement> {
        for (d, comp) in f.bigraded_components() {
            let basis = flspace_basis(d.deg_x, d.deg_y)?;
            if !in_span(&basis, &comp) {
                return Err(Error::NotInFreeLieTraces(comp.to_string()));
            }
        }
        Ok(FLElement { value: f.clone() })
    }

    pub(crate) fn from_trusted(value: TracePoly) -> Self {
        FLElement { value }
    }

    pub fn value(&self) -> &TracePoly {
        &self.value
    }

    pub fn into_value(self) -> TracePoly {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn bidegree(&self) -> Option<BiDegree> {
        self.value.bidegree()
    }

    pub fn scale(&self, c: &Rational) -> FLElement {
        FLElement { value: self.value.scale(c) }
    }

    pub fn add(&self, other: &FLElement) -> FLElement {
        FLElement { value: &self.value + &other.value }
    }

    /// `Θ(x, ∂_x Γ / N_x)` per bigraded piece (or the `y` analogue when
    /// `N_x = 0`), rendered as `theta(x; ...)`.
    pub fn render_theta(&self) -> String {
        let mut parts = Vec::new();
        for (d, comp) in self.value.bigraded_components() {
            let g = if d.deg_x > 0 { Gen::X } else { Gen::Y };
            let n = Rational::from_integer(d.of(g).into());
            if n.is_zero() {
                parts.push(comp.to_string());
                continue;
            }
            let marked = comp.partial(g).scale(&n.recip());
            match LiePoly::decompose(&marked) {
                Ok(l) => parts.push(format!("theta({g}; {l})")),
                Err(_) => parts.push(comp.to_string()),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FLElement({})", self.value)
    }
}

/// Sparse coordinates of trace polynomials over a shared cyclic-word index.
pub(crate) struct TraceIndex {
    index: BTreeMap<CyclicWord, usize>,
}

impl TraceIndex {
    pub(crate) fn new<'a>(polys: impl IntoIterator<Item = &'a TracePoly>) -> Self {
        let keys: BTreeSet<CyclicWord> = polys.into_iter().flat_map(|p| p.terms().map(|(w, _)| *w)).collect();
        TraceIndex { index: keys.into_iter().enumerate().map(|(i, w)| (w, i)).collect() }
    }

    pub(crate) fn len(&self) -> usize {
        self.index.len()
    }

    /// Coordinates of `p`; terms outside the index are reported as `None`.
    pub(crate) fn coords(&self, p: &TracePoly) -> Option<BTreeMap<usize, Rational>> {
        p.terms().map(|(w, c)| self.index.get(w).map(|&i| (i, c.clone()))).collect()
    }

    pub(crate) fn matrix(&self, columns: &[&TracePoly]) -> RatMatrix {
        let cols: Vec<BTreeMap<usize, Rational>> =
            columns.iter().map(|p| self.coords(p).expect("indexed polynomial")).collect();
        RatMatrix::from_columns(self.len(), &cols)
    }
}

fn in_span(basis: &[FLElement], target: &TracePoly) -> bool {
    if target.is_zero() {
        return true;
    }
    let index = TraceIndex::new(basis.iter().map(FLElement::value));
    let Some(b) = index.coords(target) else { return false };
    let cols: Vec<&TracePoly> = basis.iter().map(FLElement::value).collect();
    let m = index.matrix(&cols);
    let mut rhs = vec![Rational::zero(); index.len()];
    for (i, c) in b {
        rhs[i] = c;
    }
    solve(&m, &rhs).is_some()
}

/// The traces `tr(l m)` for unordered pairs of Lyndon basis elements whose
/// bidegrees add up to `(i, j)`, skipping zeros.
pub fn flspace_spanning_set(i: usize, j: usize) -> Result<Vec<FLElement>> {
    check_degree_cap(i + j)?;
    let mut out = Vec::new();
    if i + j < 2 {
        return Ok(out);
    }
    for a in 0..=i {
        for b in 0..=j {
            let (left, right) = (BiDegree::new(a, b), BiDegree::new(i - a, j - b));
            if left.total() == 0 || right.total() == 0 || left > right {
                continue;
            }
            let lefts = lyndon_words_of_bidegree(left);
            let rights = lyndon_words_of_bidegree(right);
            for l in &lefts {
                for m in &rights {
                    if left == right && l > m {
                        continue;
                    }
                    let t = TracePoly::from_pair(&l.bracketing(), &m.bracketing());
                    if !t.is_zero() {
                        out.push(FLElement { value: t });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A basis of `F(L)^{(i,j)}`: a maximal independent subset of the spanning
/// set, with independence decided inside the trace space.
pub fn flspace_basis(i: usize, j: usize) -> Result<Vec<FLElement>> {
    let span = flspace_spanning_set(i, j)?;
    if span.is_empty() {
        return Ok(span);
    }
    let index = TraceIndex::new(span.iter().map(FLElement::value));
    let cols: Vec<&TracePoly> = span.iter().map(FLElement::value).collect();
    let m = index.matrix(&cols);
    Ok(pivot_columns(&m).into_iter().map(|c| span[c].clone()).collect())
}
