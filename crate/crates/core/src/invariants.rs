//! Derived invariants of surface algebras on the torus with one boundary component.

mod ag;

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::curves::{chain_of, degree, CrossingWord};
use crate::error::{ensure_invariant, Error, Result};
use crate::grading::{enumerate_admissible_cuts, is_admissible_cut, DegreeMap};
use crate::homology::{chain_complex, class_coordinates, homology, H1Structure};
use crate::surface::{build_quiver, Quiver, SurfaceProfile, TriangulatedSurface};

pub use ag::{ag_invariant, AgInvariant};

/// gcd(d(a), d(b)) for a homology basis (a, b), with gcd(0, 0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GcdInvariant(pub u64);

/// A matrix in SL(2, Z), row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sl2Witness(pub [[i64; 2]; 2]);

impl Sl2Witness {
    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.0;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    fn mul(&self, o: &Sl2Witness) -> Sl2Witness {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = o.0;
        Sl2Witness([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }

    fn inverse(&self) -> Sl2Witness {
        let [[a, b], [c, d]] = self.0;
        Sl2Witness([[d, -b], [-c, a]])
    }
}

/// A graded surface with a chosen pair of basis curves.
#[derive(Debug, Clone, Copy)]
pub struct TorusInput<'a> {
    pub surface: &'a TriangulatedSurface,
    pub cut: &'a DegreeMap,
    pub a: &'a CrossingWord,
    pub b: &'a CrossingWord,
}

fn require_torus(surface: &TriangulatedSurface) -> Result<SurfaceProfile> {
    let p = surface.profile()?;
    if p.genus != 1 || p.boundary_components != 1 || p.punctures != 0 {
        return Err(Error::UnsupportedProfile(format!(
            "expected a torus with one boundary component, got g={} b={}",
            p.genus, p.boundary_components
        )));
    }
    Ok(p)
}

fn h1_of(quiver: &Quiver, profile: &SurfaceProfile) -> Result<H1Structure> {
    homology(&chain_complex(quiver)?, profile)
}

fn gcd_abs(x: i64, y: i64) -> u64 {
    x.unsigned_abs().gcd(&y.unsigned_abs())
}

/// The gcd invariant of a cut, after checking that (a, b) is a homology basis.
pub fn gcd_invariant(
    surface: &TriangulatedSurface,
    quiver: &Quiver,
    d: &DegreeMap,
    a: &CrossingWord,
    b: &CrossingWord,
) -> Result<GcdInvariant> {
    let profile = require_torus(surface)?;
    if !is_admissible_cut(quiver, d)? {
        return Err(Error::NotAdmissible);
    }
    let h1 = h1_of(quiver, &profile)?;
    let (ca, cb) = (chain_of(a, quiver)?, chain_of(b, quiver)?);
    class_coordinates(&h1, &ca, (&ca, &cb))?;
    Ok(GcdInvariant(gcd_abs(d.pair(&ca)?, d.pair(&cb)?)))
}

/// Derived equivalence of two surface algebras on the torus with one boundary component.
pub fn derived_equivalent_torus(x: TorusInput<'_>, y: TorusInput<'_>) -> Result<bool> {
    let qx = build_quiver(x.surface);
    let qy = build_quiver(y.surface);
    let gx = gcd_invariant(x.surface, &qx, x.cut, x.a, x.b)?;
    let gy = gcd_invariant(y.surface, &qy, y.cut, y.a, y.b)?;
    Ok(gx == gy)
}

/// M1 ∈ SL(2, Z) with M1 · (m, n) = (gcd, 0).
fn to_normal_form(m: i64, n: i64) -> Sl2Witness {
    let e = m.extended_gcd(&n);
    let (mut t, mut u, mut v) = (e.gcd, e.x, e.y);
    if t < 0 {
        t = -t;
        u = -u;
        v = -v;
    }
    Sl2Witness([[u, v], [-n / t, m / t]])
}

/// Some M ∈ SL(2, Z) with M · (m, n) = (m′, n′), when the gcds agree.
pub fn sl2_orbit_witness(m: i64, n: i64, m2: i64, n2: i64) -> Option<Sl2Witness> {
    if gcd_abs(m, n) != gcd_abs(m2, n2) {
        return None;
    }
    if (m, n) == (0, 0) {
        return Some(Sl2Witness([[1, 0], [0, 1]]));
    }
    let m1 = to_normal_form(m, n);
    let m2n = to_normal_form(m2, n2);
    Some(m2n.inverse().mul(&m1))
}

/// The AG pair predicted from the degree of the boundary loop.
///
/// With p marked points and boundary degree d(c) this is (p + d(c), p + 2d(c)).
pub fn ag_formula(surface: &TriangulatedSurface, quiver: &Quiver, d: &DegreeMap) -> Result<(i64, i64)> {
    let profile = require_torus(surface)?;
    if !is_admissible_cut(quiver, d)? {
        return Err(Error::NotAdmissible);
    }
    let c = surface.boundary_loop(0)?;
    let dc = degree(&c, quiver, d)?;
    let p = profile.marked_points as i64;
    Ok((p + dc, p + 2 * dc))
}

/// Result of sweeping every admissible cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub marked_points: usize,
    /// gcd values never exceed this.
    pub bound: u64,
    pub per_cut: Vec<(Vec<u8>, u64)>,
    pub attained: BTreeSet<u64>,
}

/// Checks 0 ≤ gcd ≤ (p + 2)/2 over all admissible cuts.
pub fn bound_check(
    surface: &TriangulatedSurface,
    quiver: &Quiver,
    a: &CrossingWord,
    b: &CrossingWord,
) -> Result<BoundReport> {
    let profile = require_torus(surface)?;
    let h1 = h1_of(quiver, &profile)?;
    let (ca, cb) = (chain_of(a, quiver)?, chain_of(b, quiver)?);
    class_coordinates(&h1, &ca, (&ca, &cb))?;
    let bound = (profile.marked_points as u64 + 2) / 2;
    let mut per_cut = Vec::new();
    let mut attained = BTreeSet::new();
    for (choice, d) in enumerate_admissible_cuts(quiver) {
        let g = gcd_abs(d.pair(&ca)?, d.pair(&cb)?);
        ensure_invariant!(g <= bound, "cut {choice:?} has gcd {g} above the bound {bound}");
        per_cut.push((choice, g));
        attained.insert(g);
    }
    Ok(BoundReport { marked_points: profile.marked_points, bound, per_cut, attained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn p2_gcds() {
        for (k, g) in [(0, 0), (1, 1), (2, 2)] {
            let fx = families::p2_example(k).unwrap();
            let q = build_quiver(&fx.surface);
            assert_eq!(gcd_invariant(&fx.surface, &q, &fx.cut, &fx.a, &fx.b).unwrap(), GcdInvariant(g));
        }
    }

    #[test]
    fn equivalence_decisions() {
        let f1 = families::p2_example(1).unwrap();
        let f2 = families::p2_example(2).unwrap();
        assert!(!derived_equivalent_torus(f1.input(), f2.input()).unwrap());
        assert!(derived_equivalent_torus(f1.input(), f1.input()).unwrap());
        let x = families::bm_lambda0(5, 1).unwrap();
        let y = families::bm_lambda0(7, 1).unwrap();
        assert!(derived_equivalent_torus(x.input(), y.input()).unwrap());
    }

    #[test]
    fn basis_is_checked() {
        let fx = families::p2_example(2).unwrap();
        let q = build_quiver(&fx.surface);
        assert_eq!(gcd_invariant(&fx.surface, &q, &fx.cut, &fx.a, &fx.a), Err(Error::NotABasis));
        let mut bad = fx.cut.clone();
        bad = DegreeMap::new(bad.values().iter().map(|v| 1 - v).collect());
        assert_eq!(gcd_invariant(&fx.surface, &q, &bad, &fx.a, &fx.b), Err(Error::NotAdmissible));
    }

    #[test]
    fn witnesses() {
        let w = sl2_orbit_witness(2, 0, 4, 2).unwrap();
        assert_eq!(w.apply((2, 0)), (4, 2));
        assert_eq!(w.det(), 1);
        assert_eq!(sl2_orbit_witness(0, 0, 0, 0), Some(Sl2Witness([[1, 0], [0, 1]])));
        assert_eq!(sl2_orbit_witness(1, 0, 2, 0), None);
        let w = sl2_orbit_witness(-3, 6, 6, 3).unwrap();
        assert_eq!((w.apply((-3, 6)), w.det()), ((6, 3), 1));
    }

    #[test]
    fn p2_bound_check() {
        let fx = families::p2_example(0).unwrap();
        let q = build_quiver(&fx.surface);
        let r = bound_check(&fx.surface, &q, &fx.a, &fx.b).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.per_cut.len(), 27);
        assert_eq!(r.attained, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn p2_ag_formula() {
        let fx = families::p2_example(0).unwrap();
        let q = build_quiver(&fx.surface);
        for (_, d) in enumerate_admissible_cuts(&q) {
            assert_eq!(ag_formula(&fx.surface, &q, &d).unwrap(), (4, 6));
        }
    }

    #[test]
    fn non_torus_is_refused() {
        let s = families::once_punctured_torus();
        let q = build_quiver(&s);
        let d = DegreeMap::zero(&q);
        let w = CrossingWord::empty();
        assert!(matches!(gcd_invariant(&s, &q, &d, &w, &w), Err(Error::UnsupportedProfile(_))));
    }
}
