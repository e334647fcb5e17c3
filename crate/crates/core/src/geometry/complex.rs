//! Triangulated parameter grids with boundary identifications, and the
//! combinatorics of the resulting quotient surface.

use std::collections::HashMap;

/// Union-find with a parity bit per element relative to its root.
#[derive(Debug, Clone)]
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Joins `a` and `b` with `parity(a) ^ parity(b) == rel`; returns
    /// `false` if that contradicts an earlier union.
    fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ rel;
        true
    }
}

/// A triangle list on raw vertices plus vertex identifications grouped in
/// families; within a family the map `a ↦ b` also identifies edges.
#[derive(Debug, Clone, Default)]
pub struct IdentifiedComplex {
    pub vertex_count: usize,
    pub faces: Vec<[usize; 3]>,
    /// `(a, b, family)`.
    pub identifications: Vec<(usize, usize, usize)>,
}

/// Counts and structural checks for the quotient surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Every edge class borders exactly two faces.
    pub closed: bool,
    pub orientable: bool,
}

impl SurfaceSummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Quad grid `(cols+1) × (rows+1)` split along the low–high diagonal,
/// starting at vertex `offset`; vertex `(i, j)` is `offset + i·(rows+1) + j`.
pub fn grid_faces(cols: usize, rows: usize, offset: usize) -> Vec<[usize; 3]> {
    let idx = |i: usize, j: usize| offset + i * (rows + 1) + j;
    let mut faces = Vec::with_capacity(2 * cols * rows);
    for i in 0..cols {
        for j in 0..rows {
            faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            faces.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    faces
}

impl IdentifiedComplex {
    pub fn summarize(&self) -> SurfaceSummary {
        let mut verts = ParityUnionFind::new(self.vertex_count);
        for &(a, b, _) in &self.identifications {
            verts.union(a, b, false);
        }
        let vertices = (0..self.vertex_count)
            .filter(|&v| verts.find(v).0 == v)
            .count();

        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let key = edge_key(f[k], f[(k + 1) % 3]);
                let next = edge_index.len();
                edge_index.entry(key).or_insert(next);
            }
        }
        let mut families: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
        for &(a, b, fam) in &self.identifications {
            families.entry(fam).or_default().insert(a, b);
        }
        // parity records whether the identification flips the (min, max)
        // direction of the raw edge
        let mut edges = ParityUnionFind::new(edge_index.len());
        let mut keys: Vec<(&(usize, usize), &usize)> = edge_index.iter().collect();
        keys.sort();
        let mut fams: Vec<_> = families.iter().collect();
        fams.sort_by_key(|(f, _)| **f);
        for (&(x, y), &e) in keys {
            for (_, map) in &fams {
                if let (Some(&mx), Some(&my)) = (map.get(&x), map.get(&y)) {
                    if let Some(&e2) = edge_index.get(&edge_key(mx, my)) {
                        edges.union(e, e2, mx > my);
                    }
                }
            }
        }
        let edge_count = (0..edge_index.len())
            .filter(|&e| edges.find(e).0 == e)
            .count();

        // incidences: face f uses edge class c with direction sign s
        let mut incidences: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let e = edge_index[&edge_key(a, b)];
                let (root, par) = edges.find(e);
                incidences
                    .entry(root)
                    .or_default()
                    .push((fi, (a > b) ^ par));
            }
        }
        let closed = incidences.values().all(|v| v.len() == 2);

        // two faces on a shared edge must traverse it in opposite directions
        let mut orient = ParityUnionFind::new(self.faces.len());
        let mut orientable = true;
        for v in incidences.values() {
            for w in v.windows(2) {
                let (f1, d1) = w[0];
                let (f2, d2) = w[1];
                // flip(f1) ^ d1 != flip(f2) ^ d2
                orientable &= orient.union(f1, f2, !(d1 ^ d2));
            }
        }

        SurfaceSummary {
            vertices,
            edges: edge_count,
            faces: self.faces.len(),
            closed,
            orientable,
        }
    }
}
