//! Closed curves as sequences of angle crossings, and their arrow chains.

use std::collections::HashSet;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::DegreeMap;
use crate::homology::H1Structure;
use crate::surface::{build_quiver, EdgeId, EdgeKind, Quiver, Slot, TriangleId, TriangulatedSurface};

/// One passage of a curve through a triangle, entering through side `entry`
/// and leaving through side `exit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub triangle: TriangleId,
    pub entry: usize,
    pub exit: usize,
}

/// A closed curve, read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingWord {
    steps: Vec<Step>,
}

impl CrossingWord {
    /// Validates `steps` as a closed curve on `surface`.
    pub fn new(surface: &TriangulatedSurface, steps: Vec<Step>) -> Result<Self> {
        let n = steps.len();
        for (i, s) in steps.iter().enumerate() {
            if s.triangle.0 >= surface.triangles().len() {
                return Err(Error::InvalidCurve(format!("step {i}: unknown triangle")));
            }
            if s.entry > 2 || s.exit > 2 {
                return Err(Error::InvalidCurve(format!("step {i}: side index out of range")));
            }
            if s.entry == s.exit {
                return Err(Error::InvalidCurve(format!("step {i}: entry equals exit")));
            }
            for side in [s.entry, s.exit] {
                if !surface.is_arc(surface.side(s.triangle, side)) {
                    return Err(Error::InvalidCurve(format!("step {i}: crosses a boundary segment")));
                }
            }
        }
        for i in 0..n {
            let s = steps[i];
            let t = steps[(i + 1) % n];
            let across = surface.other_slot(Slot { triangle: s.triangle, slot: s.exit });
            if across != (Slot { triangle: t.triangle, slot: t.entry }) {
                return Err(Error::InvalidCurve(format!(
                    "step {i} exits where step {} does not enter",
                    (i + 1) % n
                )));
            }
        }
        Ok(CrossingWord { steps })
    }

    pub fn empty() -> Self {
        CrossingWord { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step { triangle: s.triangle, entry: s.exit, exit: s.entry })
            .collect();
        CrossingWord { steps }
    }

    /// Arcs crossed, in order: the exit arc of each step.
    pub fn arcs(&self, surface: &TriangulatedSurface) -> Vec<EdgeId> {
        self.steps.iter().map(|s| surface.side(s.triangle, s.exit)).collect()
    }

    /// Reconstructs a curve from the cyclic list of arcs it crosses.
    ///
    /// Step `i` runs from `arcs[i]` to `arcs[i + 1]`. Fails when no triangle
    /// sequence fits, and when more than one does.
    pub fn from_arc_sequence(surface: &TriangulatedSurface, arcs: &[EdgeId]) -> Result<Self> {
        let n = arcs.len();
        if n == 0 {
            return Ok(CrossingWord::empty());
        }
        for e in arcs {
            if e.0 >= surface.edges().len() || !surface.is_arc(*e) {
                return Err(Error::InvalidCurve("arc sequence contains a non-arc".into()));
            }
        }
        let candidates: Vec<Vec<Step>> = (0..n)
            .map(|i| {
                let (a, b) = (arcs[i], arcs[(i + 1) % n]);
                let mut out = Vec::new();
                for sa in surface.slots_of(a) {
                    let tri = surface.triangle(sa.triangle);
                    if let Some(k) = tri.sides.iter().position(|e| *e == b) {
                        if k != sa.slot {
                            out.push(Step { triangle: sa.triangle, entry: sa.slot, exit: k });
                        }
                    }
                }
                out
            })
            .collect();
        let mut found = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn search(
            surface: &TriangulatedSurface,
            candidates: &[Vec<Step>],
            current: &mut Vec<Step>,
            found: &mut Vec<Vec<Step>>,
        ) {
            if found.len() > 1 {
                return;
            }
            let i = current.len();
            if i == candidates.len() {
                if CrossingWord::new(surface, current.clone()).is_ok() {
                    found.push(current.clone());
                }
                return;
            }
            for &step in &candidates[i] {
                if let Some(prev) = current.last() {
                    let across = surface.other_slot(Slot { triangle: prev.triangle, slot: prev.exit });
                    if across != (Slot { triangle: step.triangle, slot: step.entry }) {
                        continue;
                    }
                }
                current.push(step);
                search(surface, candidates, current, found);
                current.pop();
            }
        }
        search(surface, &candidates, &mut current, &mut found);
        match found.len() {
            0 => Err(Error::InvalidCurve("no triangle sequence realizes the arc list".into())),
            1 => Ok(CrossingWord { steps: found.pop().unwrap() }),
            k => Err(Error::AmbiguousArcSequence(k)),
        }
    }

    /// Joins two curves at a crossing they share (same arc, same direction).
    pub fn splice(&self, other: &CrossingWord, surface: &TriangulatedSurface) -> Result<Self> {
        for i in 0..self.len() {
            let s = self.steps[i];
            for j in 0..other.len() {
                let t = other.steps[j];
                if (s.triangle, s.exit) == (t.triangle, t.exit) {
                    let mut steps: Vec<Step> = self.steps[..=i].to_vec();
                    steps.extend(other.steps[j + 1..].iter().copied());
                    steps.extend(other.steps[..=j].iter().copied());
                    steps.extend(self.steps[i + 1..].iter().copied());
                    return CrossingWord::new(surface, steps);
                }
            }
        }
        Err(Error::InvalidCurve("curves share no crossing".into()))
    }
}

/// An integer combination of arrows, stored densely by arrow id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ArrowChain(pub Vec<i64>);

impl ArrowChain {
    pub fn zero(len: usize) -> Self {
        ArrowChain(vec![0; len])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        ArrowChain(self.0.iter().map(|c| c * k).collect())
    }

    /// Nonzero entries as (arrow index, coefficient).
    pub fn support(&self) -> Vec<(usize, i64)> {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect()
    }
}

fn zip_with(a: &ArrowChain, b: &ArrowChain, f: impl Fn(i64, i64) -> i64) -> ArrowChain {
    let n = a.0.len().max(b.0.len());
    let get = |v: &ArrowChain, i: usize| v.0.get(i).copied().unwrap_or(0);
    ArrowChain((0..n).map(|i| f(get(a, i), get(b, i))).collect())
}

impl Add for &ArrowChain {
    type Output = ArrowChain;
    fn add(self, rhs: Self) -> ArrowChain {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ArrowChain {
    type Output = ArrowChain;
    fn sub(self, rhs: Self) -> ArrowChain {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &ArrowChain {
    type Output = ArrowChain;
    fn neg(self) -> ArrowChain {
        self.scale(-1)
    }
}

/// Signed count of the angles a curve crosses.
///
/// A step turning counterclockwise (exit = entry + 1) runs along the arrow of
/// that corner and counts +1; the opposite turn counts −1.
pub fn chain_of(curve: &CrossingWord, quiver: &Quiver) -> Result<ArrowChain> {
    let mut chain = ArrowChain::zero(quiver.arrows().len());
    for s in curve.steps() {
        let (slot, sign) = if s.exit == (s.entry + 1) % 3 {
            (s.entry, 1)
        } else {
            (s.exit, -1)
        };
        let arrow = quiver
            .arrow_at(s.triangle, slot)
            .ok_or_else(|| Error::InvalidCurve("step through a corner without arrow".into()))?;
        chain.0[arrow.0] += sign;
    }
    Ok(chain)
}

/// d(γ): the pairing of a degree map with the curve's chain.
pub fn degree(curve: &CrossingWord, quiver: &Quiver, d: &DegreeMap) -> Result<i64> {
    let chain = chain_of(curve, quiver)?;
    d.pair(&chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleClass {
    HomotopicToBoundary,
    BasedOnBoundary,
    Uncontractible,
}

/// Labels triangles of a torus with one boundary component by peeling.
///
/// Boundary segments start out boundary-like. A triangle with two or more
/// boundary-like sides is homotopic to the boundary, and its remaining sides
/// become boundary-like too. What is left splits by the number of
/// boundary-like sides.
pub fn classify_triangles(surface: &TriangulatedSurface) -> Result<Vec<TriangleClass>> {
    let profile = surface.profile()?;
    if profile.genus != 1 || profile.boundary_components != 1 {
        return Err(Error::UnsupportedProfile(format!(
            "classification needs g=b=1, got g={} b={}",
            profile.genus, profile.boundary_components
        )));
    }
    let n = surface.triangles().len();
    let mut boundary_like: Vec<bool> = surface.edges().iter().map(|e| e.kind == EdgeKind::Boundary).collect();
    let mut peeled = vec![false; n];
    loop {
        let mut changed = false;
        for t in 0..n {
            if peeled[t] {
                continue;
            }
            let sides = surface.triangle(TriangleId(t)).sides;
            if sides.iter().filter(|e| boundary_like[e.0]).count() >= 2 {
                peeled[t] = true;
                for e in sides {
                    boundary_like[e.0] = true;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let classes: Vec<TriangleClass> = (0..n)
        .map(|t| {
            if peeled[t] {
                TriangleClass::HomotopicToBoundary
            } else if surface.triangle(TriangleId(t)).sides.iter().any(|e| boundary_like[e.0]) {
                TriangleClass::BasedOnBoundary
            } else {
                TriangleClass::Uncontractible
            }
        })
        .collect();
    let uc = classes.iter().filter(|c| **c == TriangleClass::Uncontractible).count();
    crate::error::ensure_invariant!(uc == 2, "expected 2 uncontractible triangles, found {uc}");
    Ok(classes)
}

/// Splits a chain into the part over boundary-adjacent triangles and the
/// part over the two uncontractible ones.
pub fn decompose_chain(
    chain: &ArrowChain,
    quiver: &Quiver,
    classes: &[TriangleClass],
) -> Result<(ArrowChain, ArrowChain)> {
    let mut bb = ArrowChain::zero(chain.0.len());
    let mut uc = ArrowChain::zero(chain.0.len());
    for (i, c) in chain.0.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let t = quiver.arrows()[i].triangle;
        match classes[t.0] {
            TriangleClass::Uncontractible => uc.0[i] = *c,
            TriangleClass::BasedOnBoundary => bb.0[i] = *c,
            TriangleClass::HomotopicToBoundary => {
                return Err(Error::InvalidCurve(format!(
                    "chain crosses arrow {i} of a triangle homotopic to the boundary"
                )))
            }
        }
    }
    Ok((bb, uc))
}

/// Closed curves passing through each triangle at most once, hence simple.
///
/// Each curve is reported once per orientation, starting at its smallest
/// triangle. At most `limit` curves are returned.
pub fn simple_curves(surface: &TriangulatedSurface, limit: usize) -> Vec<CrossingWord> {
    let n = surface.triangles().len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for start in 0..n {
        for entry in 0..3 {
            if !surface.is_arc(surface.side(TriangleId(start), entry)) {
                continue;
            }
            let mut used = vec![false; n];
            let mut path = Vec::new();
            dfs(surface, start, TriangleId(start), entry, &mut used, &mut path, &mut out, &mut seen, limit);
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    surface: &TriangulatedSurface,
    start: usize,
    t: TriangleId,
    entry: usize,
    used: &mut Vec<bool>,
    path: &mut Vec<Step>,
    out: &mut Vec<CrossingWord>,
    seen: &mut HashSet<Vec<Step>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    used[t.0] = true;
    for exit in 0..3 {
        if exit == entry || !surface.is_arc(surface.side(t, exit)) {
            continue;
        }
        path.push(Step { triangle: t, entry, exit });
        let next = surface.other_slot(Slot { triangle: t, slot: exit });
        if next.triangle.0 == start {
            if let Some(first) = path.first() {
                if first.entry == next.slot && seen.insert(path.clone()) {
                    if let Ok(w) = CrossingWord::new(surface, path.clone()) {
                        out.push(w);
                    }
                }
            }
        } else if next.triangle.0 > start && !used[next.triangle.0] {
            dfs(surface, start, next.triangle, next.slot, used, path, out, seen, limit);
        }
        path.pop();
        if out.len() >= limit {
            break;
        }
    }
    used[t.0] = false;
}

/// First pair of simple curves whose classes form a basis of H1.
pub fn find_basis_curves(
    surface: &TriangulatedSurface,
    h1: &H1Structure,
) -> Result<(CrossingWord, CrossingWord)> {
    let quiver = build_quiver(surface);
    let curves = simple_curves(surface, 200);
    let classes: Vec<(CrossingWord, Vec<i64>)> = curves
        .into_iter()
        .filter_map(|c| {
            let chain = chain_of(&c, &quiver).ok()?;
            let cls = h1.class_of(&chain).ok()?;
            Some((c, cls))
        })
        .collect();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let (x, y) = (&classes[i].1, &classes[j].1);
            if x.len() == 2 && (x[0] * y[1] - x[1] * y[0]).abs() == 1 {
                return Ok((classes[i].0.clone(), classes[j].0.clone()));
            }
        }
    }
    Err(Error::NotABasis)
}
