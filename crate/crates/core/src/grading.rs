//! Degree maps, admissible cuts and the degree-zero cut algebra.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::curves::ArrowChain;
use crate::error::{Error, Result};
use crate::surface::{ArrowId, Quiver};

/// An integer degree on every arrow of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeMap(Vec<i64>);

impl DegreeMap {
    pub fn new(values: Vec<i64>) -> Self {
        DegreeMap(values)
    }

    pub fn zero(quiver: &Quiver) -> Self {
        DegreeMap(vec![0; quiver.arrows().len()])
    }

    /// Builds a total map from `(arrow, degree)` entries; every arrow must be keyed once.
    pub fn from_entries(quiver: &Quiver, entries: &[(usize, i64)]) -> Result<Self> {
        let n = quiver.arrows().len();
        let mut values = vec![None; n];
        for &(id, deg) in entries {
            let slot = values
                .get_mut(id)
                .ok_or(Error::UnknownId { what: "arrow", id: id as i64 })?;
            if slot.is_some() {
                return Err(Error::Malformed(format!("arrow {id} assigned twice")));
            }
            *slot = Some(deg);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(Error::MissingArrow(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeMap(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, a: ArrowId) -> Result<i64> {
        self.0.get(a.0).copied().ok_or(Error::MissingArrow(a.0))
    }

    pub fn entries(&self) -> Vec<(usize, i64)> {
        self.0.iter().copied().enumerate().collect()
    }

    /// Integer pairing with a chain on the same arrows.
    pub fn pair(&self, chain: &ArrowChain) -> Result<i64> {
        if chain.0.len() > self.0.len() {
            return Err(Error::MissingArrow(self.0.len()));
        }
        Ok(chain.0.iter().zip(&self.0).map(|(c, d)| c * d).sum())
    }

    fn check_total(&self, quiver: &Quiver) -> Result<()> {
        let n = quiver.arrows().len();
        if self.0.len() < n {
            return Err(Error::MissingArrow(self.0.len()));
        }
        if self.0.len() > n {
            return Err(Error::UnknownId { what: "arrow", id: n as i64 });
        }
        Ok(())
    }
}

/// Every internal 3-cycle has total degree 1.
pub fn is_degree1(quiver: &Quiver, d: &DegreeMap) -> Result<bool> {
    d.check_total(quiver)?;
    Ok(quiver
        .internal_triangles()
        .iter()
        .all(|t| t.arrows.iter().map(|a| d.0[a.0]).sum::<i64>() == 1))
}

/// Degree 1, values in {0, 1}, and zero on arrows outside internal triangles.
pub fn is_admissible_cut(quiver: &Quiver, d: &DegreeMap) -> Result<bool> {
    if !is_degree1(quiver, d)? {
        return Ok(false);
    }
    let mut internal = vec![false; quiver.arrows().len()];
    for t in quiver.internal_triangles() {
        for a in t.arrows {
            internal[a.0] = true;
        }
    }
    Ok(d.0.iter().zip(&internal).all(|(v, inside)| match v {
        0 => true,
        1 => *inside,
        _ => false,
    }))
}

/// The cut choosing slot `choice[i]` of internal triangle `i`.
pub fn cut_from_choice(quiver: &Quiver, choice: &[u8]) -> Result<DegreeMap> {
    let internal = quiver.internal_triangles();
    if choice.len() != internal.len() {
        return Err(Error::InvalidParameters(format!(
            "choice vector has {} digits, quiver has {} internal triangles",
            choice.len(),
            internal.len()
        )));
    }
    let mut d = DegreeMap::zero(quiver);
    for (t, &k) in internal.iter().zip(choice) {
        if k > 2 {
            return Err(Error::InvalidParameters(format!("choice digit {k} outside 0..2")));
        }
        d.0[t.arrows[k as usize].0] = 1;
    }
    Ok(d)
}

/// Recovers the choice vector of an admissible cut.
pub fn choice_of(quiver: &Quiver, d: &DegreeMap) -> Result<Vec<u8>> {
    if !is_admissible_cut(quiver, d)? {
        return Err(Error::NotAdmissible);
    }
    Ok(quiver
        .internal_triangles()
        .iter()
        .map(|t| t.arrows.iter().position(|a| d.0[a.0] == 1).unwrap() as u8)
        .collect())
}

pub fn choice_string(choice: &[u8]) -> String {
    choice.iter().map(|k| char::from(b'0' + k)).collect()
}

pub fn parse_choice(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0'..='2' => Ok(c as u8 - b'0'),
            _ => Err(Error::InvalidParameters(format!("bad choice digit {c:?}"))),
        })
        .collect()
}

/// Iterator over all 3^(#Q2) admissible cuts in lexicographic choice order.
pub struct Cuts<'a> {
    quiver: &'a Quiver,
    next: Option<Vec<u8>>,
}

impl Iterator for Cuts<'_> {
    type Item = (Vec<u8>, DegreeMap);

    fn next(&mut self) -> Option<Self::Item> {
        let choice = self.next.take()?;
        let d = cut_from_choice(self.quiver, &choice).expect("choice length matches");
        let mut succ = choice.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < 2 {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some((choice, d))
    }
}

pub fn enumerate_admissible_cuts(quiver: &Quiver) -> Cuts<'_> {
    Cuts { quiver, next: Some(vec![0; quiver.internal_triangles().len()]) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresArrow {
    pub id: usize,
    pub source: usize,
    pub target: usize,
}

/// A quiver with length-two zero relations.
///
/// Vertices are `0..vertex_count`. Relations index into `arrows` and read
/// "first `a`, then `b`", so `target(a) = source(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentlePresentation {
    pub vertex_count: usize,
    pub arrows: Vec<PresArrow>,
    pub relations: Vec<(usize, usize)>,
}

impl GentlePresentation {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>, relations: Vec<(usize, usize)>) -> Self {
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(id, (source, target))| PresArrow { id, source, target })
            .collect();
        GentlePresentation { vertex_count, arrows, relations }
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn composable(&self, a: usize, b: usize) -> bool {
        self.arrows[a].target == self.arrows[b].source
    }
}

/// Degree-zero part of the quiver under an admissible cut.
///
/// Arrows keep their quiver ids; vertex `i` is the `i`-th arc.
pub fn cut_algebra(quiver: &Quiver, d: &DegreeMap) -> Result<GentlePresentation> {
    if !is_admissible_cut(quiver, d)? {
        return Err(Error::NotAdmissible);
    }
    let mut position = BTreeMap::new();
    let mut arrows = Vec::new();
    for a in quiver.arrows() {
        if d.0[a.id.0] == 0 {
            position.insert(a.id, arrows.len());
            arrows.push(PresArrow {
                id: a.id.0,
                source: quiver.vertex_index(a.source).unwrap(),
                target: quiver.vertex_index(a.target).unwrap(),
            });
        }
    }
    let mut relations = Vec::new();
    for t in quiver.internal_triangles() {
        let k = t.arrows.iter().position(|a| d.0[a.0] == 1).unwrap();
        let first = t.arrows[(k + 1) % 3];
        let then = t.arrows[(k + 2) % 3];
        relations.push((position[&first], position[&then]));
    }
    Ok(GentlePresentation { vertex_count: quiver.vertices().len(), arrows, relations })
}

pub fn is_gentle(pres: &GentlePresentation) -> bool {
    let n = pres.vertex_count;
    let m = pres.arrows.len();
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for a in &pres.arrows {
        if a.source >= n || a.target >= n {
            return false;
        }
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    if indeg.iter().chain(&outdeg).any(|d| *d > 2) {
        return false;
    }
    let mut seen = HashSet::new();
    for &(a, b) in &pres.relations {
        if a >= m || b >= m || !pres.composable(a, b) || !seen.insert((a, b)) {
            return false;
        }
    }
    for a in 0..m {
        let after: Vec<usize> = (0..m).filter(|&b| pres.composable(a, b)).collect();
        let rel = after.iter().filter(|&&b| pres.is_relation(a, b)).count();
        if rel > 1 || after.len() - rel > 1 {
            return false;
        }
        let before: Vec<usize> = (0..m).filter(|&b| pres.composable(b, a)).collect();
        let rel = before.iter().filter(|&&b| pres.is_relation(b, a)).count();
        if rel > 1 || before.len() - rel > 1 {
            return false;
        }
    }
    true
}

/// ℓ = #arrows − #vertices + 1 for a connected presentation.
pub fn cycle_rank(pres: &GentlePresentation) -> Result<i64> {
    let n = pres.vertex_count;
    if n == 0 {
        return Err(Error::DisconnectedQuiver);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in &pres.arrows {
        let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
        parent[x] = y;
    }
    let roots = (0..n).filter(|&v| find(&mut parent, v) == v).count();
    if roots != 1 {
        return Err(Error::DisconnectedQuiver);
    }
    Ok(pres.arrows.len() as i64 - n as i64 + 1)
}

/// Isomorphism of presentations up to relabeling vertices and arrows.
///
/// Exhaustive vertex-bijection search with degree pruning; arrows are matched
/// within each parallel class at the leaves.
pub fn presentations_isomorphic(p: &GentlePresentation, q: &GentlePresentation) -> bool {
    let n = p.vertex_count;
    if n != q.vertex_count || p.arrows.len() != q.arrows.len() || p.relations.len() != q.relations.len() {
        return false;
    }
    let count = |x: &GentlePresentation| {
        let mut c = vec![vec![0usize; x.vertex_count]; x.vertex_count];
        for a in &x.arrows {
            c[a.source][a.target] += 1;
        }
        c
    };
    let (cp, cq) = (count(p), count(q));
    let signature = |c: &Vec<Vec<usize>>, v: usize| {
        let out: usize = c[v].iter().sum();
        let inn: usize = c.iter().map(|row| row[v]).sum();
        (inn, out, c[v][v])
    };
    let sp: Vec<_> = (0..n).map(|v| signature(&cp, v)).collect();
    let sq: Vec<_> = (0..n).map(|v| signature(&cq, v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    vertex_search(p, q, &cp, &cq, &sp, &sq, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn vertex_search(
    p: &GentlePresentation,
    q: &GentlePresentation,
    cp: &[Vec<usize>],
    cq: &[Vec<usize>],
    sp: &[(usize, usize, usize)],
    sq: &[(usize, usize, usize)],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = p.vertex_count;
    if v == n {
        let mut arrow_map = vec![usize::MAX; p.arrows.len()];
        let mut taken = vec![false; q.arrows.len()];
        return arrow_search(p, q, map, 0, &mut arrow_map, &mut taken);
    }
    for w in 0..n {
        if used[w] || sp[v] != sq[w] {
            continue;
        }
        let consistent = (0..v).all(|u| cp[u][v] == cq[map[u]][w] && cp[v][u] == cq[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if vertex_search(p, q, cp, cq, sp, sq, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

fn arrow_search(
    p: &GentlePresentation,
    q: &GentlePresentation,
    vmap: &[usize],
    i: usize,
    amap: &mut Vec<usize>,
    taken: &mut Vec<bool>,
) -> bool {
    if i == p.arrows.len() {
        return p.relations.iter().all(|&(a, b)| q.is_relation(amap[a], amap[b]));
    }
    let a = p.arrows[i];
    for (j, b) in q.arrows.iter().enumerate() {
        if taken[j] || b.source != vmap[a.source] || b.target != vmap[a.target] {
            continue;
        }
        amap[i] = j;
        taken[j] = true;
        if arrow_search(p, q, vmap, i + 1, amap, taken) {
            return true;
        }
        taken[j] = false;
    }
    false
}
