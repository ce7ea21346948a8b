//! Triangulated marked surfaces and their quivers.
//!
//! A surface is stored purely combinatorially: a list of edges (arcs or
//! boundary segments) and a list of triangles, each with its three sides read
//! counterclockwise. Gluing is implied: the two occurrences of an arc are
//! identified with opposite orientations. Everything else (marked points,
//! boundary cycles, genus) is recovered from the corner structure.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curves::{CrossingWord, Step};
use crate::error::{ensure_invariant, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriangleId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Arc,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Identifier as written in the source document.
    pub label: i64,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub label: i64,
    /// Sides in counterclockwise order.
    pub sides: [EdgeId; 3],
}

/// A side occurrence: side `slot` of triangle `triangle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub triangle: TriangleId,
    pub slot: usize,
}

/// A corner of a triangle, between side `k` and side `k + 1`.
type Corner = Slot;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedSurface {
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    slots: Vec<Vec<Slot>>,
    /// Boundary cycles, each listed as boundary segment slots in traversal order.
    boundary_cycles: Vec<Vec<Slot>>,
    vertex_count: usize,
    punctures: usize,
}

/// Topological summary of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceProfile {
    pub genus: usize,
    pub boundary_components: usize,
    pub marked_points: usize,
    /// Interior vertices; only nonzero for ideal (punctured) triangulations.
    pub punctures: usize,
    pub arcs: usize,
    pub boundary_segments: usize,
    pub triangles: usize,
    pub internal_triangles: usize,
}

impl TriangulatedSurface {
    /// Builds and validates a surface whose marked points all lie on the boundary.
    pub fn new(edges: Vec<(i64, EdgeKind)>, triangles: Vec<(i64, [i64; 3])>) -> Result<Self> {
        Self::build(edges, triangles, false)
    }

    /// Builds an ideal triangulation of a punctured surface without boundary.
    ///
    /// Used for the once-punctured torus, whose quiver is the Markoff quiver.
    pub fn ideal(edges: Vec<(i64, EdgeKind)>, triangles: Vec<(i64, [i64; 3])>) -> Result<Self> {
        Self::build(edges, triangles, true)
    }

    fn build(
        edge_list: Vec<(i64, EdgeKind)>,
        triangle_list: Vec<(i64, [i64; 3])>,
        ideal: bool,
    ) -> Result<Self> {
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(edge_list.len());
        for (label, kind) in edge_list {
            if edge_index.insert(label, EdgeId(edges.len())).is_some() {
                return Err(Error::Malformed(format!("duplicate edge id {label}")));
            }
            edges.push(Edge { label, kind });
        }
        let mut seen_triangles = HashMap::new();
        let mut triangles = Vec::with_capacity(triangle_list.len());
        for (label, sides) in triangle_list {
            if seen_triangles.insert(label, ()).is_some() {
                return Err(Error::Malformed(format!("duplicate triangle id {label}")));
            }
            let mut ids = [EdgeId(0); 3];
            for (k, side) in sides.iter().enumerate() {
                ids[k] = *edge_index
                    .get(side)
                    .ok_or(Error::UnknownId { what: "edge", id: *side })?;
            }
            for a in 0..3 {
                for b in a + 1..3 {
                    if ids[a] == ids[b] {
                        return Err(Error::RepeatedSide { triangle: label, edge: sides[a] });
                    }
                }
            }
            triangles.push(Triangle { label, sides: ids });
        }
        if triangles.is_empty() {
            return Err(Error::Malformed("no triangles".into()));
        }

        let mut slots = vec![Vec::new(); edges.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for (k, e) in tri.sides.iter().enumerate() {
                slots[e.0].push(Slot { triangle: TriangleId(t), slot: k });
            }
        }
        for (e, edge) in edges.iter().enumerate() {
            let count = slots[e].len();
            match edge.kind {
                EdgeKind::Arc if count != 2 => {
                    return Err(Error::ArcMultiplicity { id: edge.label, count })
                }
                EdgeKind::Boundary if count != 1 => {
                    return Err(Error::BoundaryMultiplicity { id: edge.label, count })
                }
                _ => {}
            }
        }

        let components = gluing_components(&triangles, &edges, &slots);
        if components != 1 {
            return Err(Error::Disconnected { components });
        }

        let mut surface = TriangulatedSurface {
            edges,
            triangles,
            slots,
            boundary_cycles: Vec::new(),
            vertex_count: 0,
            punctures: 0,
        };
        surface.trace_vertices(ideal)?;
        Ok(surface)
    }

    /// Walks the corner fans to count marked points, punctures and boundary cycles.
    fn trace_vertices(&mut self, ideal: bool) -> Result<()> {
        let n = self.triangles.len();
        let mut visited = vec![[false; 3]; n];
        let mut fans = 0;
        let mut cyclic = 0;

        // Fans starting at a boundary segment end at the next boundary segment.
        let mut next_segment: HashMap<(usize, usize), Slot> = HashMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.kind != EdgeKind::Boundary {
                continue;
            }
            let start = self.slots[e][0];
            let mut corner = start;
            loop {
                let t = corner.triangle.0;
                if visited[t][corner.slot] {
                    return Err(Error::InvalidBoundary("corner visited twice".into()));
                }
                visited[t][corner.slot] = true;
                match self.rotate(corner) {
                    Some(next) => corner = next,
                    None => break,
                }
            }
            fans += 1;
            let end = Slot { triangle: corner.triangle, slot: (corner.slot + 1) % 3 };
            next_segment.insert((start.triangle.0, start.slot), end);
        }
        // Remaining corners form closed fans around interior vertices.
        for t in 0..n {
            for k in 0..3 {
                if visited[t][k] {
                    continue;
                }
                let mut corner = Slot { triangle: TriangleId(t), slot: k };
                while !visited[corner.triangle.0][corner.slot] {
                    visited[corner.triangle.0][corner.slot] = true;
                    corner = self
                        .rotate(corner)
                        .ok_or_else(|| Error::InvalidBoundary("open fan without boundary".into()))?;
                }
                cyclic += 1;
            }
        }

        if ideal {
            if fans > 0 {
                return Err(Error::InvalidBoundary("ideal triangulation with boundary".into()));
            }
        } else {
            if fans == 0 {
                return Err(Error::InvalidBoundary("no boundary segments".into()));
            }
            if cyclic > 0 {
                return Err(Error::InvalidBoundary(format!(
                    "{cyclic} interior vertices (punctures are not supported)"
                )));
            }
        }

        let mut cycles = Vec::new();
        let mut done: HashMap<(usize, usize), ()> = HashMap::new();
        let mut starts: Vec<Slot> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == EdgeKind::Boundary)
            .map(|(e, _)| self.slots[e][0])
            .collect();
        starts.sort_by_key(|s| (s.triangle.0, s.slot));
        for start in starts {
            if done.contains_key(&(start.triangle.0, start.slot)) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut seg = start;
            loop {
                done.insert((seg.triangle.0, seg.slot), ());
                cycle.push(seg);
                seg = next_segment[&(seg.triangle.0, seg.slot)];
                if seg == start {
                    break;
                }
                if done.contains_key(&(seg.triangle.0, seg.slot)) {
                    return Err(Error::InvalidBoundary("boundary segments do not form cycles".into()));
                }
            }
            cycles.push(cycle);
        }
        self.boundary_cycles = cycles;
        self.vertex_count = fans + cyclic;
        self.punctures = cyclic;
        Ok(())
    }

    /// Next corner around the same vertex: cross side `k + 1` of the corner's triangle.
    fn rotate(&self, corner: Corner) -> Option<Corner> {
        let side = self.side(corner.triangle, (corner.slot + 1) % 3);
        if self.edges[side.0].kind == EdgeKind::Boundary {
            return None;
        }
        Some(self.other_slot(Slot { triangle: corner.triangle, slot: (corner.slot + 1) % 3 }))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn triangle(&self, id: TriangleId) -> &Triangle {
        &self.triangles[id.0]
    }

    pub fn side(&self, t: TriangleId, slot: usize) -> EdgeId {
        self.triangles[t.0].sides[slot]
    }

    pub fn is_arc(&self, e: EdgeId) -> bool {
        self.edges[e.0].kind == EdgeKind::Arc
    }

    pub fn slots_of(&self, e: EdgeId) -> &[Slot] {
        &self.slots[e.0]
    }

    /// The opposite occurrence of the arc at `slot`.
    ///
    /// Panics if the side is a boundary segment.
    pub fn other_slot(&self, slot: Slot) -> Slot {
        let e = self.side(slot.triangle, slot.slot);
        let occ = &self.slots[e.0];
        assert_eq!(occ.len(), 2, "boundary segment has no opposite slot");
        if occ[0] == slot {
            occ[1]
        } else {
            occ[0]
        }
    }

    pub fn edge_by_label(&self, label: i64) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label).map(EdgeId)
    }

    pub fn triangle_by_label(&self, label: i64) -> Option<TriangleId> {
        self.triangles.iter().position(|t| t.label == label).map(TriangleId)
    }

    pub fn arc_count(&self) -> usize {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Arc).count()
    }

    pub fn boundary_count(&self) -> usize {
        self.edges.len() - self.arc_count()
    }

    /// Number of arc sides of a triangle.
    pub fn arc_sides(&self, t: TriangleId) -> usize {
        self.triangles[t.0].sides.iter().filter(|e| self.is_arc(**e)).count()
    }

    pub fn boundary_cycles(&self) -> &[Vec<Slot>] {
        &self.boundary_cycles
    }

    /// Genus, boundary and marked point counts from the Euler characteristic.
    pub fn profile(&self) -> Result<SurfaceProfile> {
        let v = self.vertex_count as i64;
        let e = self.edges.len() as i64;
        let f = self.triangles.len() as i64;
        let b = self.boundary_cycles.len() as i64;
        let chi = v - e + f;
        let twice_genus = 2 - b - chi;
        ensure_invariant!(
            twice_genus >= 0 && twice_genus % 2 == 0,
            "Euler characteristic {chi} incompatible with {b} boundary components"
        );
        let internal = (0..self.triangles.len())
            .filter(|&t| self.arc_sides(TriangleId(t)) == 3)
            .count();
        let profile = SurfaceProfile {
            genus: (twice_genus / 2) as usize,
            boundary_components: b as usize,
            marked_points: self.vertex_count - self.punctures,
            punctures: self.punctures,
            arcs: self.arc_count(),
            boundary_segments: self.boundary_count(),
            triangles: self.triangles.len(),
            internal_triangles: internal,
        };
        ensure_invariant!(
            2 - 2 * profile.genus as i64 - b == chi,
            "Euler identity failed"
        );
        Ok(profile)
    }

    /// A closed crossing word parallel to boundary cycle `component`.
    ///
    /// The loop runs around every marked point of the cycle through the corners
    /// between consecutive arcs; U-turns through triangles with a single arc
    /// side are cancelled.
    pub fn boundary_loop(&self, component: usize) -> Result<CrossingWord> {
        let cycle = self
            .boundary_cycles
            .get(component)
            .ok_or(Error::OutOfRange { index: component, limit: self.boundary_cycles.len() })?;
        // Passages (triangle, from side, to side), cyclically ordered.
        let mut passages: Vec<(TriangleId, usize, usize)> = Vec::new();
        for seg in cycle {
            let mut corner = *seg;
            loop {
                passages.push((corner.triangle, corner.slot, (corner.slot + 1) % 3));
                match self.rotate(corner) {
                    Some(next) => corner = next,
                    None => break,
                }
            }
        }
        loop {
            let n = passages.len();
            if n <= 1 {
                return Err(Error::ContractibleBoundaryLoop);
            }
            let mut changed = false;
            // Merge across boundary sides.
            for i in 0..n {
                let j = (i + 1) % n;
                let (t, a, b) = passages[i];
                let (u, b2, c) = passages[j];
                if t == u && b == b2 && !self.is_arc(self.side(t, b)) {
                    passages[i] = (t, a, c);
                    passages.remove(j);
                    changed = true;
                    break;
                }
            }
            if changed {
                continue;
            }
            // Cancel U-turns through an arc.
            for i in 0..n {
                let (t, a, b) = passages[i];
                if a == b && self.is_arc(self.side(t, a)) {
                    if n < 3 {
                        return Err(Error::ContractibleBoundaryLoop);
                    }
                    let prev = (i + n - 1) % n;
                    let next = (i + 1) % n;
                    let (tp, x, _) = passages[prev];
                    let (_, _, y) = passages[next];
                    passages[prev] = (tp, x, y);
                    let mut drop = [i, next];
                    drop.sort_unstable();
                    passages.remove(drop[1]);
                    passages.remove(drop[0]);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        for &(t, a, b) in &passages {
            if a == b || !self.is_arc(self.side(t, a)) || !self.is_arc(self.side(t, b)) {
                return Err(Error::ContractibleBoundaryLoop);
            }
        }
        let steps = passages
            .into_iter()
            .map(|(triangle, entry, exit)| Step { triangle, entry, exit })
            .collect();
        CrossingWord::new(self, steps)
    }

    /// Flips the arc `edge` inside the quadrilateral formed by its two triangles.
    ///
    /// Returns `None` when the flip would produce a triangle with a repeated side.
    pub fn flip(&self, edge: EdgeId) -> Option<TriangulatedSurface> {
        if !self.is_arc(edge) {
            return None;
        }
        let [s1, s2] = [self.slots[edge.0][0], self.slots[edge.0][1]];
        let t1 = self.triangles[s1.triangle.0].sides;
        let t2 = self.triangles[s2.triangle.0].sides;
        let (a1, a2) = (t1[(s1.slot + 1) % 3], t1[(s1.slot + 2) % 3]);
        let (b1, b2) = (t2[(s2.slot + 1) % 3], t2[(s2.slot + 2) % 3]);
        if a2 == b1 || b2 == a1 {
            return None;
        }
        let mut triangles: Vec<(i64, [i64; 3])> = self
            .triangles
            .iter()
            .map(|t| (t.label, t.sides.map(|e| self.edges[e.0].label)))
            .collect();
        let label = |e: EdgeId| self.edges[e.0].label;
        let x = label(edge);
        triangles[s1.triangle.0].1 = [x, label(a2), label(b1)];
        triangles[s2.triangle.0].1 = [x, label(b2), label(a1)];
        let edges = self.edges.iter().map(|e| (e.label, e.kind)).collect();
        TriangulatedSurface::build(edges, triangles, self.punctures > 0).ok()
    }

    /// The edge and triangle lists in document form.
    pub fn to_parts(&self) -> (Vec<(i64, EdgeKind)>, Vec<(i64, [i64; 3])>) {
        (
            self.edges.iter().map(|e| (e.label, e.kind)).collect(),
            self.triangles
                .iter()
                .map(|t| (t.label, t.sides.map(|e| self.edges[e.0].label)))
                .collect(),
        )
    }
}

fn gluing_components(triangles: &[Triangle], edges: &[Edge], slots: &[Vec<Slot>]) -> usize {
    let mut parent: Vec<usize> = (0..triangles.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for (e, edge) in edges.iter().enumerate() {
        if edge.kind == EdgeKind::Arc && slots[e].len() == 2 {
            let a = find(&mut parent, slots[e][0].triangle.0);
            let b = find(&mut parent, slots[e][1].triangle.0);
            parent[a] = b;
        }
    }
    (0..triangles.len()).filter(|&t| find(&mut parent, t) == t).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: EdgeId,
    pub target: EdgeId,
    pub triangle: TriangleId,
    /// The arrow sits in the corner between side `slot` and side `slot + 1`.
    pub slot: usize,
}

/// The oriented 3-cycle of an internal triangle, in side-slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InternalTriangle {
    pub triangle: TriangleId,
    pub arrows: [ArrowId; 3],
}

/// Quiver of a triangulation: arcs as vertices, angles between arcs as arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<EdgeId>,
    vertex_index: Vec<Option<usize>>,
    arrows: Vec<Arrow>,
    internal: Vec<InternalTriangle>,
    arrow_at: Vec<[Option<ArrowId>; 3]>,
}

impl Quiver {
    pub fn vertices(&self) -> &[EdgeId] {
        &self.vertices
    }

    /// Dense position of an arc among the vertices.
    pub fn vertex_index(&self, e: EdgeId) -> Option<usize> {
        self.vertex_index.get(e.0).copied().flatten()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn internal_triangles(&self) -> &[InternalTriangle] {
        &self.internal
    }

    /// Arrow in the corner between sides `slot` and `slot + 1` of `t`.
    pub fn arrow_at(&self, t: TriangleId, slot: usize) -> Option<ArrowId> {
        self.arrow_at[t.0][slot]
    }

    /// Index of the internal 3-cycle containing `arrow`, if any.
    pub fn internal_of(&self, arrow: ArrowId) -> Option<usize> {
        let t = self.arrows[arrow.0].triangle;
        self.internal.iter().position(|it| it.triangle == t)
    }
}

/// Builds the quiver: within a triangle with counterclockwise sides
/// `(s0, s1, s2)`, arrows run `s0 -> s1 -> s2 -> s0` between arc sides.
pub fn build_quiver(surface: &TriangulatedSurface) -> Quiver {
    let mut vertex_index = vec![None; surface.edges.len()];
    let mut vertices = Vec::new();
    for (e, edge) in surface.edges.iter().enumerate() {
        if edge.kind == EdgeKind::Arc {
            vertex_index[e] = Some(vertices.len());
            vertices.push(EdgeId(e));
        }
    }
    let mut arrows = Vec::new();
    let mut internal = Vec::new();
    let mut arrow_at = vec![[None; 3]; surface.triangles.len()];
    for (t, tri) in surface.triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri.sides[k], tri.sides[(k + 1) % 3]);
            if surface.is_arc(a) && surface.is_arc(b) {
                let id = ArrowId(arrows.len());
                arrows.push(Arrow { id, source: a, target: b, triangle: TriangleId(t), slot: k });
                arrow_at[t][k] = Some(id);
            }
        }
        if let [Some(x), Some(y), Some(z)] = arrow_at[t] {
            internal.push(InternalTriangle { triangle: TriangleId(t), arrows: [x, y, z] });
        }
    }
    Quiver { vertices, vertex_index, arrows, internal, arrow_at }
}
