//! Derivations of `A` (and of `L`) stored by their values on generators.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::free_assoc::{Gen, NcPoly};
use crate::lie::{is_lie, LiePoly};
use crate::linalg::Rational;
use crate::trace::TracePoly;

/// A derivation `u` determined by `u(x)` and `u(y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    u_x: NcPoly,
    u_y: NcPoly,
    lie_valued: bool,
}

impl Derivation {
    pub fn new(u_x: NcPoly, u_y: NcPoly) -> Self {
        let lie_valued = is_lie(&u_x) && is_lie(&u_y);
        Derivation { u_x, u_y, lie_valued }
    }

    pub fn from_lie(u_x: &LiePoly, u_y: &LiePoly) -> Self {
        Derivation { u_x: u_x.embedding().clone(), u_y: u_y.embedding().clone(), lie_valued: true }
    }

    pub fn zero() -> Self {
        Derivation { u_x: NcPoly::zero(), u_y: NcPoly::zero(), lie_valued: true }
    }

    pub fn image(&self, g: Gen) -> &NcPoly {
        match g {
            Gen::X => &self.u_x,
            Gen::Y => &self.u_y,
        }
    }

    pub fn u_x(&self) -> &NcPoly {
        &self.u_x
    }

    pub fn u_y(&self) -> &NcPoly {
        &self.u_y
    }

    pub fn is_lie_valued(&self) -> bool {
        self.lie_valued
    }

    pub fn is_zero(&self) -> bool {
        self.u_x.is_zero() && self.u_y.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { u_x: self.u_x.scale(c), u_y: self.u_y.scale(c), lie_valued: self.lie_valued }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            u_x: &self.u_x + &other.u_x,
            u_y: &self.u_y + &other.u_y,
            lie_valued: self.lie_valued && other.lie_valued,
        }
    }

    /// `u(a) = ∂_x(a) ♦ u(x) + ∂_y(a) ♦ u(y)`.
    pub fn apply(&self, a: &NcPoly) -> NcPoly {
        &a.partial(Gen::X).diamond(&self.u_x) + &a.partial(Gen::Y).diamond(&self.u_y)
    }

    /// The map `f ↦ u_f` with `u_f(x) = ∂_y f` and `u_f(y) = -∂_x f`.
    pub fn from_trace(f: &TracePoly) -> Derivation {
        Derivation::new(f.partial(Gen::Y), -&f.partial(Gen::X))
    }

    /// Total degree `N` of a homogeneous derivation (images of degree `N - 1`).
    /// The zero derivation reports `None`.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut degree = None;
        for img in [&self.u_x, &self.u_y] {
            if img.is_zero() {
                continue;
            }
            let d = img.total_degree().ok_or(Error::Inhomogeneous("derivation"))? + 1;
            match degree {
                Some(prev) if prev != d => return Err(Error::Inhomogeneous("derivation")),
                _ => degree = Some(d),
            }
        }
        Ok(degree)
    }

    /// Inverse of [`Derivation::from_trace`] on homogeneous symplectic
    /// derivations: `(1/N) tr(y u(x) - x u(y))`.
    pub fn to_trace(&self) -> Result<TracePoly> {
        let Some(n) = self.degree()? else { return Ok(TracePoly::zero()) };
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let inner = &(&NcPoly::y() * &self.u_x) - &(&NcPoly::x() * &self.u_y);
        Ok(TracePoly::tr(&inner).scale(&Rational::new(One::one(), n.into())))
    }

    /// [`Derivation::to_trace`] applied to each total-degree component.
    pub fn to_trace_graded(&self) -> Result<TracePoly> {
        let xs = self.u_x.graded_components();
        let ys = self.u_y.graded_components();
        let degrees: std::collections::BTreeSet<usize> = xs.keys().chain(ys.keys()).copied().collect();
        let mut out = TracePoly::zero();
        for d in degrees {
            let part = Derivation::new(
                xs.get(&d).cloned().unwrap_or_default(),
                ys.get(&d).cloned().unwrap_or_default(),
            );
            out.add_scaled(&part.to_trace()?, &Rational::one());
        }
        Ok(out)
    }

    /// `u([x, y]) = 0`.
    pub fn is_symplectic(&self) -> bool {
        let omega = NcPoly::x().commutator(&NcPoly::y());
        self.apply(&omega).is_zero()
    }

    /// `[u, v](g) = u(v(g)) - v(u(g))`.
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        let image = |g: Gen| &self.apply(other.image(g)) - &other.apply(self.image(g));
        let (u_x, u_y) = (image(Gen::X), image(Gen::Y));
        if self.lie_valued && other.lie_valued {
            Derivation { u_x, u_y, lie_valued: true }
        } else {
            Derivation::new(u_x, u_y)
        }
    }

    /// `u . tr(a) = tr(u(a))`.
    pub fn act_on_trace(&self, f: &TracePoly) -> TracePoly {
        let mut out = TracePoly::zero();
        for (w, c) in f.terms() {
            let image = self.apply(&NcPoly::word(w.representative()));
            out.add_scaled(&TracePoly::tr(&image), c);
        }
        out
    }

    /// The Leibniz recursion `u(a b) = u(a) b + a u(b)` evaluated word by word;
    /// an independent route to [`Derivation::apply`].
    pub fn apply_by_leibniz(&self, a: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in a.terms() {
            let mut acc = NcPoly::zero();
            let mut prefix = NcPoly::one();
            for (i, g) in w.letters().enumerate() {
                let suffix = NcPoly::word(w.suffix_from(i + 1));
                acc = &acc + &(&(&prefix * self.image(g)) * &suffix);
                prefix = &prefix * &NcPoly::gen(g);
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "der(u(x) = {}, u(y) = {})", self.u_x, self.u_y)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for Derivation {
    fn default() -> Self {
        Derivation::zero()
    }
}

/// Helper used by tests and suites: is `a` zero after tracing?
pub fn traces_to_zero(a: &NcPoly) -> bool {
    TracePoly::tr(a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_assoc::words_of_length;
    use crate::lie::{flspace_basis, FLElement};
    use crate::linalg::int;

    fn p(s: &str) -> NcPoly {
        NcPoly::w(s)
    }

    fn delta(n2: u32) -> FLElement {
        FLElement::theta(&LiePoly::x(), &LiePoly::ad_gen_power(Gen::Y, n2, &LiePoly::x()))
    }

    #[test]
    fn apply_examples() {
        let euler = Derivation::new(p("x"), p("y"));
        assert_eq!(euler.apply(&p("xy")), p("xy").scale(&int(2)));
        let u = Derivation::new(p("y").scale(&int(2)), NcPoly::zero());
        assert_eq!(u.apply(&p("x")), p("y").scale(&int(2)));
        let omega = NcPoly::x().commutator(&NcPoly::y());
        assert!(u.apply(&omega).is_zero());
    }

    #[test]
    fn apply_agrees_with_leibniz_recursion() {
        let u = Derivation::new(&p("xy") - &p("yx").scale(&int(3)), &p("y") + &p("xx"));
        for n in 0..=6 {
            for w in words_of_length(n) {
                let a = NcPoly::word(w);
                assert_eq!(u.apply(&a), u.apply_by_leibniz(&a), "{w}");
            }
        }
    }

    #[test]
    fn from_trace_examples() {
        let u = Derivation::from_trace(&TracePoly::tr(&p("yy")));
        assert_eq!(u, Derivation::new(p("y").scale(&int(2)), NcPoly::zero()));
        let u = Derivation::from_trace(&TracePoly::tr(&p("xy")));
        assert_eq!(u, Derivation::new(p("x"), -&p("y")));
        assert!(Derivation::from_trace(&TracePoly::unit()).is_zero());
    }

    #[test]
    fn to_trace_examples() {
        let u = Derivation::new(p("y").scale(&int(2)), NcPoly::zero());
        assert_eq!(u.to_trace().unwrap(), TracePoly::tr(&p("yy")));
        let u = Derivation::new(p("x"), -&p("y"));
        assert_eq!(u.to_trace().unwrap(), TracePoly::tr(&p("xy")));
        let d2 = delta(2);
        assert_eq!(&Derivation::from_trace(d2.value()).to_trace().unwrap(), d2.value());
        let bad = Derivation::new(p("x"), p("xy"));
        assert!(matches!(bad.to_trace(), Err(Error::Inhomogeneous(_))));
        let not_sympl = Derivation::new(p("x"), NcPoly::zero());
        assert!(matches!(not_sympl.to_trace(), Err(Error::NotSymplectic)));
        let constant = Derivation::new(NcPoly::one(), NcPoly::zero());
        assert_eq!(constant.degree().unwrap(), Some(1));
    }

    #[test]
    fn symplectic_examples() {
        assert!(Derivation::from_trace(&TracePoly::tr(&p("xy"))).is_symplectic());
        assert!(Derivation::new(p("y"), NcPoly::zero()).is_symplectic());
        assert!(!Derivation::new(p("x"), NcPoly::zero()).is_symplectic());
    }

    #[test]
    fn bracket_examples() {
        let u = Derivation::from_trace(delta(2).value());
        let v = Derivation::from_trace(delta(4).value());
        assert!(u.bracket(&u).is_zero());
        assert!(u.bracket(&Derivation::zero()).is_zero());
        let w = u.bracket(&v);
        assert!(w.is_symplectic());
        assert!(w.is_lie_valued());
    }

    #[test]
    fn act_on_trace_examples() {
        let u = Derivation::new(p("x"), -&p("y"));
        assert!(u.act_on_trace(&TracePoly::tr(&p("xy"))).is_zero());
        assert!(u.act_on_trace(&TracePoly::unit()).is_zero());
        let v = Derivation::new(p("y"), NcPoly::zero());
        assert_eq!(v.act_on_trace(&TracePoly::tr(&p("x"))), TracePoly::tr(&p("y")));
    }

    #[test]
    fn act_on_trace_is_well_defined() {
        let u = Derivation::new(&p("xy") + &p("y"), p("yxx"));
        for n in 1..=5 {
            for w in words_of_length(n) {
                let f = TracePoly::tr(&NcPoly::word(w));
                let g = TracePoly::tr(&NcPoly::word(w.rotate(1)));
                assert_eq!(u.act_on_trace(&f), u.act_on_trace(&g));
            }
        }
    }

    #[test]
    fn image_of_from_trace_is_symplectic_and_roundtrips() {
        for total in 1..=7 {
            for i in 0..=total {
                let d = crate::free_assoc::BiDegree::new(i, total - i);
                for w in crate::free_assoc::words_of_bidegree(d) {
                    let f = TracePoly::tr(&NcPoly::word(w));
                    let u = Derivation::from_trace(&f);
                    assert!(u.is_symplectic(), "{f}");
                    assert_eq!(u.to_trace().unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn free_lie_traces_give_lie_derivations() {
        for (i, j) in [(1, 1), (2, 2), (3, 3), (2, 4), (3, 5), (4, 4)] {
            for gamma in flspace_basis(i, j).unwrap() {
                assert!(Derivation::from_trace(gamma.value()).is_lie_valued());
            }
        }
    }

    #[test]
    fn graded_inverse() {
        let f = &TracePoly::tr(&p("xy")) + &TracePoly::tr(&p("xxyy")).scale(&int(5));
        let u = Derivation::from_trace(&f);
        assert!(u.to_trace().is_err());
        assert_eq!(u.to_trace_graded().unwrap(), f);
    }

    #[test]
    fn rendering() {
        let u = Derivation::new(p("y").scale(&int(2)), NcPoly::zero());
        assert_eq!(u.to_string(), "der(u(x) = 2*y, u(y) = 0)");
    }

    #[test]
    fn zero_image_trace() {
        assert!(traces_to_zero(&(&p("xy") - &p("yx"))));
    }
}
