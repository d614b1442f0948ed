//! The divergence, the Lie algebra `krv` and its bigraded pieces.

use std::io;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::free_assoc::{BiDegree, Gen, NcPoly};
use crate::lie::{check_degree_cap, flspace_basis, is_lie, partial_lie, FLElement, LiePoly, TraceIndex};
use crate::linalg::{kernel_basis, primitive_integer_scaling, Rational};
use crate::trace::TracePoly;

/// Version tag written into every JSON document.
pub const JSON_SCHEMA: &str = "krv-lab/1";

/// `div(u) = tr(∂^L_x u(x) + ∂^L_y u(y))`.
pub fn divergence(u: &Derivation) -> Result<TracePoly> {
    for g in Gen::ALL {
        let img = u.image(g);
        if !u.is_lie_valued() && !is_lie(img) {
            return Err(Error::NotLie(format!("u({g}) = {img}")));
        }
    }
    let sum = &partial_lie(u.u_x(), Gen::X) + &partial_lie(u.u_y(), Gen::Y);
    Ok(TracePoly::tr(&sum))
}

/// `tr(g - g*)` with `g = ∂^L_x ∂_y Γ`; agrees with `div(Φ₁(Γ))`.
pub fn divergence_star(gamma: &FLElement) -> Result<TracePoly> {
    let dy = gamma.value().partial(Gen::Y);
    if !is_lie(&dy) {
        return Err(Error::NotLie(format!("d_y of {gamma} = {dy}")));
    }
    let g = partial_lie(&dy, Gen::X);
    Ok(TracePoly::tr(&(&g - &g.star())))
}

/// `δ_{2n} = Θ(x, ad_y^{2n}(x))`.
pub fn delta(n2: u32) -> Result<FLElement> {
    if n2 == 0 || n2 % 2 == 1 {
        return Err(Error::InvalidArgument(format!("delta needs a positive even index, got {n2}")));
    }
    check_degree_cap(n2 as usize + 2)?;
    let x = LiePoly::x();
    Ok(FLElement::theta(&x, &LiePoly::ad_gen_power(Gen::Y, n2, &x)))
}

/// Whether `div(u) = 0` is required exactly, or only up to `tr([x,y]^k)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DivMode {
    #[default]
    Strict,
    Relaxed,
}

/// The piece `krv^{(i,j)}` with an integer-normalized basis.
#[derive(Clone, Debug)]
pub struct KrvComponent {
    pub i: usize,
    pub j: usize,
    pub basis: Vec<FLElement>,
    pub dimension: usize,
}

#[derive(Serialize)]
struct ComponentJson<'a> {
    schema: &'a str,
    i: usize,
    j: usize,
    dim: usize,
    basis: Vec<String>,
}

impl KrvComponent {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComponentJson {
            schema: JSON_SCHEMA,
            i: self.i,
            j: self.j,
            dim: self.dimension,
            basis: self.basis.iter().map(|g| g.to_string()).collect(),
        })
        .expect("serializable component")
    }
}

/// `tr([x,y]^k)`.
pub fn omega_power_trace(k: usize) -> TracePoly {
    let omega = NcPoly::x().commutator(&NcPoly::y());
    let power = (0..k).fold(NcPoly::one(), |acc, _| &acc * &omega);
    TracePoly::tr(&power)
}

fn primitive_trace(f: &TracePoly) -> TracePoly {
    let coeffs: Vec<Rational> = f.terms().map(|(_, c)| c.clone()).collect();
    let scaled = primitive_integer_scaling(&coeffs);
    let mut out = TracePoly::zero();
    for ((w, _), c) in f.terms().zip(scaled) {
        out.add_term(*w, c);
    }
    out
}

/// Kernel of `div ∘ Φ₁` on `F(L)^{(i,j)}`.
pub fn krv_component(i: usize, j: usize, mode: DivMode) -> Result<KrvComponent> {
    check_degree_cap(i + j)?;
    let fl = flspace_basis(i, j)?;
    let divs = fl
        .iter()
        .map(|g| divergence(&Derivation::from_trace(g.value())))
        .collect::<Result<Vec<TracePoly>>>()?;

    let mut columns: Vec<&TracePoly> = divs.iter().collect();
    let relaxed_target;
    if mode == DivMode::Relaxed && i == j && i >= 1 {
        relaxed_target = omega_power_trace(i - 1);
        if !relaxed_target.is_zero() {
            columns.push(&relaxed_target);
        }
    }
    let index = TraceIndex::new(columns.iter().copied());
    let m = index.matrix(&columns);

    let mut basis = Vec::new();
    for v in kernel_basis(&m) {
        let mut gamma = TracePoly::zero();
        for (c, g) in v.iter().zip(&fl) {
            if !c.is_zero() {
                gamma.add_scaled(g.value(), c);
            }
        }
        // The extra relaxed column is independent of the trivial combination,
        // so projected kernel vectors stay independent.
        basis.push(FLElement::from_trusted(primitive_trace(&gamma)));
    }
    let dimension = basis.len();
    Ok(KrvComponent { i, j, basis, dimension })
}

/// `div([u, v]) = u . div(v) - v . div(u)`.
pub fn cocycle_check(u: &Derivation, v: &Derivation) -> Result<bool> {
    let lhs = divergence(&u.bracket(v))?;
    let rhs = &u.act_on_trace(&divergence(v)?) - &v.act_on_trace(&divergence(u)?);
    Ok(lhs == rhs)
}

/// Whether `u` lies in `krv`: symplectic with vanishing (or, relaxed, central)
/// divergence.
pub fn is_krv(u: &Derivation, mode: DivMode) -> Result<bool> {
    if !u.is_symplectic() {
        return Ok(false);
    }
    let div = divergence(u)?;
    if div.is_zero() {
        return Ok(true);
    }
    if mode == DivMode::Strict {
        return Ok(false);
    }
    let Some(d) = div.bidegree() else { return Ok(false) };
    if d.deg_x != d.deg_y {
        return Ok(false);
    }
    let omega = omega_power_trace(d.deg_x);
    if omega.is_zero() {
        return Ok(false);
    }
    let (w, c) = div.terms().next().expect("nonzero");
    let ratio = c / omega.coeff(*w);
    Ok(!ratio.is_zero() && omega.scale(&ratio) == div)
}

/// Writes `i,j,dim` rows as CSV.
pub fn write_dimension_csv<W: io::Write>(out: W, rows: &[(usize, usize, usize)]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "dim"])?;
    for (i, j, dim) in rows {
        w.write_record([i.to_string(), j.to_string(), dim.to_string()])?;
    }
    w.flush()
}

/// The bidegree `div ∘ Φ₁` maps `(i, j)` to.
pub fn divergence_target(d: BiDegree) -> Option<BiDegree> {
    (d.deg_x >= 1 && d.deg_y >= 1).then(|| BiDegree::new(d.deg_x - 1, d.deg_y - 1))
}

/// Scales to a unit leading coefficient; handy for comparing spans.
pub fn monic(f: &TracePoly) -> TracePoly {
    match f.terms().next() {
        Some((_, c)) => f.scale(&(Rational::one() / c)),
        None => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::FLElement;
    use crate::linalg::{int, rank, RatMatrix};

    fn p(s: &str) -> NcPoly {
        NcPoly::w(s)
    }

    fn floor_formula(j: usize) -> usize {
        let j = j as i64;
        ((j - 1).div_euclid(2) - (j - 1).div_euclid(3)) as usize
    }

    #[test]
    fn divergence_examples() {
        let u = Derivation::from_trace(&TracePoly::tr(&p("xy")));
        assert_eq!(u, Derivation::new(p("x"), -&p("y")));
        assert!(divergence(&u).unwrap().is_zero());
        let d2 = delta(2).unwrap();
        assert!(divergence(&Derivation::from_trace(d2.value())).unwrap().is_zero());
        for j in [1, 3, 5, 7] {
            for gamma in flspace_basis(3, j).unwrap() {
                assert!(divergence(&Derivation::from_trace(gamma.value())).unwrap().is_zero());
            }
        }
        let not_lie = Derivation::new(p("xy"), NcPoly::zero());
        assert!(matches!(divergence(&not_lie), Err(Error::NotLie(_))));
        // ∂^L of a generator is 1.
        let shift = Derivation::new(p("x"), NcPoly::zero());
        assert_eq!(divergence(&shift).unwrap(), TracePoly::unit());
    }

    #[test]
    fn divergence_star_examples() {
        assert!(divergence_star(&delta(2).unwrap()).unwrap().is_zero());
        let xy = FLElement::theta(&LiePoly::x(), &LiePoly::y());
        assert!(divergence_star(&xy).unwrap().is_zero());
        for gamma in flspace_basis(3, 6).unwrap() {
            let u = Derivation::from_trace(gamma.value());
            assert_eq!(divergence_star(&gamma).unwrap(), divergence(&u).unwrap());
        }
    }

    #[test]
    fn divergence_formulas_agree_on_nonzero_values() {
        let mut nonzero = 0;
        for (i, j) in [(2, 3), (3, 4), (4, 4), (4, 5), (5, 3)] {
            for gamma in flspace_basis(i, j).unwrap() {
                let a = divergence(&Derivation::from_trace(gamma.value())).unwrap();
                assert_eq!(divergence_star(&gamma).unwrap(), a, "{gamma}");
                nonzero += usize::from(!a.is_zero());
            }
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn delta_examples() {
        let d2 = delta(2).unwrap();
        let x = LiePoly::x();
        let inner = LiePoly::ad_action(&NcPoly::y(), &LiePoly::ad_action(&NcPoly::y(), &x));
        assert_eq!(d2, FLElement::theta(&x, &inner));
        let u = Derivation::from_trace(delta(4).unwrap().value());
        let expected = LiePoly::ad_gen_power(Gen::Y, 4, &x).embedding().scale(&int(-2));
        assert_eq!(u.u_y(), &expected);
        assert!(matches!(delta(3), Err(Error::InvalidArgument(_))));
        assert!(matches!(delta(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(delta(16), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn deltas_are_independent() {
        let ds: Vec<TracePoly> = [2, 4, 6].iter().map(|&n| delta(n).unwrap().into_value()).collect();
        let refs: Vec<&TracePoly> = ds.iter().collect();
        let m = TraceIndex::new(refs.iter().copied()).matrix(&refs);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn component_examples() {
        let c = krv_component(2, 4, DivMode::Strict).unwrap();
        assert_eq!(c.dimension, 1);
        assert_eq!(monic(c.basis[0].value()), monic(delta(4).unwrap().value()));
        assert_eq!(krv_component(2, 3, DivMode::Strict).unwrap().dimension, 0);
        assert_eq!(krv_component(3, 9, DivMode::Strict).unwrap().dimension, 2);
        assert!(matches!(krv_component(3, 14, DivMode::Strict), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn component_basis_invariants() {
        for (i, j) in [(2, 2), (2, 6), (3, 5), (3, 7), (4, 4), (1, 5), (5, 1)] {
            let c = krv_component(i, j, DivMode::Strict).unwrap();
            assert_eq!(c.dimension, c.basis.len());
            for gamma in &c.basis {
                let u = Derivation::from_trace(gamma.value());
                assert!(u.is_symplectic());
                assert!(divergence(&u).unwrap().is_zero());
                assert!(is_krv(&u, DivMode::Strict).unwrap());
                assert_eq!(gamma.bidegree(), Some(BiDegree::new(i, j)));
            }
        }
    }

    #[test]
    fn weight_two_and_three_small() {
        for j in 1..=8 {
            let expected = usize::from(j % 2 == 0);
            assert_eq!(krv_component(2, j, DivMode::Strict).unwrap().dimension, expected, "(2,{j})");
        }
        for j in 1..=8 {
            let expected = if j % 2 == 0 { 0 } else { floor_formula(j) };
            assert_eq!(krv_component(3, j, DivMode::Strict).unwrap().dimension, expected, "(3,{j})");
        }
    }

    #[test]
    fn relaxed_mode_contains_strict() {
        for (i, j) in [(2, 2), (3, 3), (4, 4), (2, 4)] {
            let s = krv_component(i, j, DivMode::Strict).unwrap().dimension;
            let r = krv_component(i, j, DivMode::Relaxed).unwrap().dimension;
            assert!(r >= s && r <= s + 1, "({i},{j}) {s} {r}");
            if i != j {
                assert_eq!(r, s);
            }
        }
    }

    #[test]
    fn relaxed_membership_accepts_central_divergence() {
        // Nonzero divergence proportional to tr([x,y]^2) is only accepted in relaxed mode.
        let fl = flspace_basis(3, 3).unwrap();
        let target = omega_power_trace(2);
        assert!(!target.is_zero());
        for gamma in fl {
            let u = Derivation::from_trace(gamma.value());
            let div = divergence(&u).unwrap();
            let relaxed = is_krv(&u, DivMode::Relaxed).unwrap();
            let strict = is_krv(&u, DivMode::Strict).unwrap();
            assert!(!strict || relaxed);
            if !div.is_zero() && monic(&div) == monic(&target) {
                assert!(relaxed && !strict);
            }
        }
    }

    #[test]
    fn cocycle_examples() {
        let u = Derivation::from_trace(delta(2).unwrap().value());
        let v = Derivation::from_trace(delta(4).unwrap().value());
        assert!(cocycle_check(&u, &v).unwrap());
        assert!(cocycle_check(&u, &u).unwrap());
        let a = Derivation::new(p("y"), NcPoly::x().commutator(&NcPoly::y()));
        let b = Derivation::new(NcPoly::x().commutator(&NcPoly::x().commutator(&NcPoly::y()).commutator(&NcPoly::y())), p("x"));
        assert!(cocycle_check(&a, &b).unwrap());
        let w = u.bracket(&v);
        assert!(w.is_symplectic());
        assert!(divergence(&w).unwrap().is_zero());
    }

    #[test]
    fn divergence_is_graded() {
        for (i, j) in [(2, 3), (3, 4), (4, 3)] {
            for gamma in flspace_basis(i, j).unwrap() {
                let div = divergence(&Derivation::from_trace(gamma.value())).unwrap();
                if !div.is_zero() {
                    assert_eq!(div.bidegree(), divergence_target(BiDegree::new(i, j)));
                }
            }
        }
    }

    #[test]
    fn basis_is_primitive_integral() {
        let c = krv_component(3, 9, DivMode::Strict).unwrap();
        for gamma in &c.basis {
            let coeffs: Vec<Rational> = gamma.value().terms().map(|(_, c)| c.clone()).collect();
            assert_eq!(primitive_integer_scaling(&coeffs), coeffs);
        }
    }

    #[test]
    fn json_and_csv() {
        let c = krv_component(2, 2, DivMode::Strict).unwrap();
        let v = c.to_json();
        assert_eq!(v["schema"], JSON_SCHEMA);
        assert_eq!(v["dim"], 1);
        assert_eq!(v["basis"].as_array().unwrap().len(), 1);
        let mut buf = Vec::new();
        write_dimension_csv(&mut buf, &[(2, 1, 0), (2, 2, 1)]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,j,dim\n2,1,0\n2,2,1\n");
    }

    #[test]
    fn empty_components() {
        assert_eq!(krv_component(0, 1, DivMode::Strict).unwrap().dimension, 0);
        let c = krv_component(1, 1, DivMode::Strict).unwrap();
        assert_eq!(c.dimension, 1);
        let m = RatMatrix::zeros(0, 2);
        assert_eq!(kernel_basis(&m).len(), 2);
    }
}
