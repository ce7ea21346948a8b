//! Generators for concrete graded triangulations of the torus with one
//! boundary component, and the gentle presentations they realize.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::curves::{CrossingWord, Step};
use crate::error::{ensure_invariant, Error, Result};
use crate::grading::{cut_from_choice, DegreeMap, GentlePresentation};
use crate::invariants::{gcd_invariant, TorusInput};
use crate::surface::{build_quiver, EdgeKind, TriangulatedSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    P2Example { cut: usize },
    Bm0 { s: usize, r: usize },
    Bm0Prime { s: usize },
}

/// A triangulation with an admissible cut, a homology basis (a, b) and the boundary loop c.
#[derive(Debug, Clone)]
pub struct GradedFixture {
    pub spec: FamilySpec,
    pub surface: TriangulatedSurface,
    pub cut: DegreeMap,
    pub a: CrossingWord,
    pub b: CrossingWord,
    pub c: CrossingWord,
}

impl GradedFixture {
    pub fn input(&self) -> TorusInput<'_> {
        TorusInput { surface: &self.surface, cut: &self.cut, a: &self.a, b: &self.b }
    }

    pub fn build(spec: FamilySpec) -> Result<Self> {
        match spec {
            FamilySpec::P2Example { cut } => p2_example(cut),
            FamilySpec::Bm0 { s, r } => bm_lambda0(s, r),
            FamilySpec::Bm0Prime { s } => bm_lambda0_prime(s),
        }
    }
}

/// Curve from (triangle label, entry, exit) triples.
fn curve(surface: &TriangulatedSurface, steps: &[(i64, usize, usize)]) -> Result<CrossingWord> {
    let steps = steps
        .iter()
        .map(|&(t, entry, exit)| {
            let triangle = surface
                .triangle_by_label(t)
                .ok_or(Error::UnknownId { what: "triangle", id: t })?;
            Ok(Step { triangle, entry, exit })
        })
        .collect::<Result<Vec<_>>>()?;
    CrossingWord::new(surface, steps)
}

fn finish(
    spec: FamilySpec,
    surface: TriangulatedSurface,
    choice: &[u8],
    a: &[(i64, usize, usize)],
    b: &[(i64, usize, usize)],
) -> Result<GradedFixture> {
    let quiver = build_quiver(&surface);
    let cut = cut_from_choice(&quiver, choice)?;
    let a = curve(&surface, a)?;
    let b = curve(&surface, b)?;
    let c = surface.boundary_loop(0)?;
    Ok(GradedFixture { spec, surface, cut, a, b, c })
}

/// The three-arrow-per-triangle Markoff gluing: two triangles on three arcs.
pub fn once_punctured_torus() -> TriangulatedSurface {
    TriangulatedSurface::ideal(
        vec![(1, EdgeKind::Arc), (2, EdgeKind::Arc), (3, EdgeKind::Arc)],
        vec![(1, [1, 2, 3]), (2, [1, 2, 3])],
    )
    .expect("the Markoff gluing is valid")
}

/// Five arcs, two boundary segments and two marked points; cuts 0, 1, 2.
pub fn p2_example(cut: usize) -> Result<GradedFixture> {
    let choice: &[u8] = match cut {
        0 => &[1, 2, 2],
        1 => &[1, 0, 2],
        2 => &[1, 0, 0],
        _ => return Err(Error::OutOfRange { index: cut, limit: 3 }),
    };
    let arc = |i| (i, EdgeKind::Arc);
    let surface = TriangulatedSurface::new(
        vec![arc(1), arc(2), arc(3), arc(4), arc(5), (6, EdgeKind::Boundary), (7, EdgeKind::Boundary)],
        vec![(1, [1, 2, 4]), (2, [4, 3, 5]), (3, [3, 1, 2]), (4, [5, 6, 7])],
    )?;
    finish(
        FamilySpec::P2Example { cut },
        surface,
        choice,
        &[(3, 2, 0), (2, 1, 0), (1, 2, 1)],
        &[(1, 0, 2), (2, 0, 1), (3, 0, 1)],
    )
}

/// Graded triangulation whose cut algebra is Λ′0(s, 0); p = s − 1.
pub fn bm_lambda0_prime(s: usize) -> Result<GradedFixture> {
    if s < 2 {
        return Err(Error::InvalidParameters(format!("Λ′0(s,0) needs s ≥ 2, got {s}")));
    }
    let si = s as i64;
    let boundary = |i: i64| si + 2 + i;
    let mut edges: Vec<(i64, EdgeKind)> = (1..=si + 2).map(|i| (i, EdgeKind::Arc)).collect();
    edges.extend((1..si).map(|i| (boundary(i), EdgeKind::Boundary)));
    // τ and τ′ first, then a fan of boundary triangles
    let mut triangles = vec![(1, [si + 2, si + 1, si]), (2, [si + 2, si + 1, 1])];
    triangles.extend((1..si).map(|i| (2 + i, [i + 1, i, boundary(i)])));
    let surface = TriangulatedSurface::new(edges, triangles)?;
    let mut b = vec![(1, 2, 1), (2, 1, 2)];
    b.extend((1..si).map(|i| (2 + i, 1, 0)));
    finish(FamilySpec::Bm0Prime { s }, surface, &[2, 2], &[(1, 1, 0), (2, 0, 1)], &b)
}

/// Graded triangulation derived equivalent to Λ0(s, r); p = s − 2.
pub fn bm_lambda0(s: usize, r: usize) -> Result<GradedFixture> {
    if s < 3 || r + 1 > s / 2 {
        return Err(Error::InvalidParameters(format!(
            "Λ0(s,r) fixture needs s ≥ 3 and r ≤ ⌊s/2⌋ − 1, got ({s},{r})"
        )));
    }
    let (si, ri) = (s as i64, r as i64);
    let mut edges: Vec<(i64, EdgeKind)> = (1..=si + 1).map(|i| (i, EdgeKind::Arc)).collect();
    let mut next_boundary = si + 2;
    let mut fresh = || {
        let b = next_boundary;
        next_boundary += 1;
        b
    };
    let mut triangles = vec![(1, [1, si + 1, si]), (2, [2, 1, si + 1])];
    let mut choice = vec![2, 2];
    let mut label = 3;
    for i in 1..=ri {
        triangles.push((label, [2 * i + 2, 2 * i + 1, 2 * i]));
        choice.push(2);
        label += 1;
        let (b1, b2) = (fresh(), fresh());
        triangles.push((label, [2 * i + 1, b1, b2]));
        label += 1;
    }
    let first_fan = label;
    for j in 2 * ri + 2..si {
        triangles.push((label, [j + 1, j, fresh()]));
        label += 1;
    }
    edges.extend((si + 2..next_boundary).map(|b| (b, EdgeKind::Boundary)));
    let surface = TriangulatedSurface::new(edges, triangles)?;

    // The ribbon τ1, τ2, R_1..R_r, T_j turns through every degree-1 angle of
    // the R_i; a is its reverse.
    let mut ribbon = vec![(1, 2, 0), (2, 1, 0)];
    ribbon.extend((0..ri).map(|i| (3 + 2 * i, 2, 0)));
    ribbon.extend((first_fan..label).map(|t| (t, 1, 0)));
    let a: Vec<(i64, usize, usize)> = ribbon.iter().rev().map(|&(t, x, y)| (t, y, x)).collect();
    finish(FamilySpec::Bm0 { s, r }, surface, &choice, &a, &[(1, 0, 1), (2, 2, 1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BmFamily {
    Lambda0,
    Lambda0Prime,
}

/// The quiver with relations as drawn: vertices 1..s+1 (Λ0) or 1..s+2 (Λ′0)
/// become 0-based indices; arrows are α_1..α_s, β, γ (, δ).
pub fn bm_presentation(family: BmFamily, s: usize, r: usize) -> Result<GentlePresentation> {
    if s < 1 {
        return Err(Error::InvalidParameters("s must be positive".into()));
    }
    // α_i : i+1 → i
    let mut arrows: Vec<(usize, usize)> = (1..=s).map(|i| (i, i - 1)).collect();
    let alpha = |i: usize| i - 1;
    match family {
        BmFamily::Lambda0 => {
            if r > s - 1 {
                return Err(Error::InvalidParameters(format!("Λ0(s,r) needs r ≤ s − 1, got ({s},{r})")));
            }
            let (beta, gamma) = (s, s + 1);
            arrows.push((0, s));
            arrows.push((0, s));
            // α_sβ, γα_1, α_iα_{i+1}: composition read right to left
            let mut rel = vec![(beta, alpha(s)), (alpha(1), gamma)];
            rel.extend((1..=r).map(|i| (alpha(i + 1), alpha(i))));
            Ok(GentlePresentation::new(s + 1, arrows, rel))
        }
        BmFamily::Lambda0Prime => {
            if r != 0 {
                return Err(Error::InvalidParameters("Λ′0 is defined for r = 0 only".into()));
            }
            let (beta, gamma, delta) = (s, s + 1, s + 2);
            arrows.push((s, 0));
            arrows.push((s + 1, s));
            arrows.push((s + 1, s));
            Ok(GentlePresentation::new(s + 2, arrows, vec![(gamma, alpha(s)), (delta, beta)]))
        }
    }
}

/// Λ0(s, r) with the derived-equivalent relations α_sβ, γα_1, α_{2i}α_{2i+1}
/// (i = 1..r), which is what the Λ0 fixture realizes.
pub fn bm_lambda0_realized(s: usize, r: usize) -> Result<GentlePresentation> {
    let mut p = bm_presentation(BmFamily::Lambda0, s, 0)?;
    if 2 * r + 1 > s {
        return Err(Error::InvalidParameters(format!("need 2r + 1 ≤ s, got ({s},{r})")));
    }
    p.relations.extend((1..=r).map(|i| (2 * i, 2 * i - 1)));
    Ok(p)
}

/// Every gcd value in [0, (p+1)/2] realized by the families at p marked points.
pub fn attained_values(p: usize) -> Result<BTreeSet<u64>> {
    if p < 1 {
        return Err(Error::InvalidParameters("p must be positive".into()));
    }
    let top = p.div_ceil(2) as u64;
    let mut fixtures = vec![bm_lambda0_prime(p + 1)?];
    let s = p + 2;
    for r in 0..s / 2 {
        fixtures.push(bm_lambda0(s, r)?);
    }
    let mut values = BTreeSet::new();
    for fx in &fixtures {
        let q = build_quiver(&fx.surface);
        let g = gcd_invariant(&fx.surface, &q, &fx.cut, &fx.a, &fx.b)?.0;
        if g <= top {
            values.insert(g);
        }
    }
    ensure_invariant!(
        values.len() as u64 == top + 1,
        "families at p={p} attain {values:?}, expected 0..={top}"
    );
    Ok(values)
}
