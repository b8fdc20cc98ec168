//! Knitting the Auslander–Reiten quiver of `mod H`.
//!
//! The derived category of a Dynkin quiver `Q` has AR quiver `ZQ^op`; we use
//! coordinates `(p, i)` with `(0, i) = P(i)` and, for every arrow `i → j` of `Q`,
//! arrows `(p, j) → (p, i)` and `(p, i) → (p+1, j)`. τ lowers `p` by one. The
//! module category is the region `p ≥ 0` up to the injectives; dimension vectors
//! are propagated through the meshes.

use std::collections::HashMap;

use serde::Serialize;

use crate::quiver::{positive_roots, DimVector, Quiver};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArVertex {
    pub id: usize,
    pub dim: DimVector,
    /// `Some(i)` iff this is `P(i)`.
    pub projective_of: Option<usize>,
    /// `Some(i)` iff this is `I(i)`.
    pub injective_of: Option<usize>,
    /// Position in the knitting order; every arrow increases it.
    pub slice_index: usize,
    /// τ-orbit, named by the quiver vertex whose projective starts it.
    pub orbit: usize,
    /// Distance from the projective in the τ-orbit.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub start: usize,
    pub middles: Vec<usize>,
    pub end: usize,
}

/// The AR quiver of `mod H`. Vertex ids coincide with slice indices.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    quiver: Quiver,
    vertices: Vec<ArVertex>,
    arrows: Vec<(usize, usize)>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    meshes: Vec<Mesh>,
    projective: Vec<usize>,
    injective: Vec<usize>,
    by_coord: HashMap<(usize, usize), usize>,
    by_dim: HashMap<DimVector, usize>,
    /// `hom[x * len + y] = dim Hom_H(x, y)`.
    hom: Vec<u32>,
}

/// Knits the AR quiver of `mod kQ` starting from the projectives.
pub fn knit_module_category(q: &Quiver) -> Result<ArQuiver> {
    let n = q.n();
    let paths = q.path_counts();
    // Orbits are ordered so that the arrows (p, j) → (p, i) inside one layer
    // go forwards: a vertex comes after all of its out-neighbours in Q, ties by
    // label.
    let mut orbit_order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while orbit_order.len() < n {
        let next = (0..n)
            .find(|&i| !placed[i] && q.out_neighbours(i).all(|j| placed[j]))
            .expect("acyclic quiver");
        placed[next] = true;
        orbit_order.push(next);
    }

    let mut dims: HashMap<(usize, usize), Vec<i64>> = HashMap::new();
    let mut alive = vec![true; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut p = 0usize;
    while alive.iter().any(|&a| a) {
        let mut layer = Vec::new();
        for &i in &orbit_order {
            if !alive[i] {
                continue;
            }
            let d: Option<Vec<i64>> = if p == 0 {
                Some((0..n).map(|j| paths[i][j] as i64).collect())
            } else {
                let mut preds = Vec::new();
                for j in q.out_neighbours(i) {
                    preds.push((p, j));
                }
                for k in q.in_neighbours(i) {
                    preds.push((p - 1, k));
                }
                if preds.iter().any(|c| !dims.contains_key(c)) {
                    None
                } else {
                    let mut d = vec![0i64; n];
                    for c in &preds {
                        for (x, y) in d.iter_mut().zip(&dims[c]) {
                            *x += y;
                        }
                    }
                    for (x, y) in d.iter_mut().zip(&dims[&(p - 1, i)]) {
                        *x -= y;
                    }
                    Some(d)
                }
            };
            match d {
                Some(d) if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) => {
                    dims.insert((p, i), d);
                    layer.push(i);
                }
                _ => alive[i] = false,
            }
        }
        if !layer.is_empty() {
            layers.push(layer);
        }
        p += 1;
    }

    let mut vertices = Vec::new();
    let mut by_coord = HashMap::new();
    for (p, layer) in layers.iter().enumerate() {
        for &i in layer {
            let id = vertices.len();
            let dim = DimVector(dims[&(p, i)].iter().map(|&x| x as u32).collect());
            by_coord.insert((i, p), id);
            vertices.push(ArVertex {
                id,
                dim,
                projective_of: (p == 0).then_some(i),
                injective_of: None,
                slice_index: id,
                orbit: i,
                position: p,
            });
        }
    }
    let len = vertices.len();

    let mut arrows = Vec::new();
    for v in &vertices {
        let (i, p) = (v.orbit, v.position);
        for j in q.out_neighbours(i) {
            if let Some(&w) = by_coord.get(&(j, p)) {
                arrows.push((w, v.id));
            }
            if let Some(&w) = by_coord.get(&(j, p + 1)) {
                arrows.push((v.id, w));
            }
        }
    }
    arrows.sort();
    arrows.dedup();
    let mut preds = vec![Vec::new(); len];
    let mut succs = vec![Vec::new(); len];
    for &(s, t) in &arrows {
        if s >= t {
            return Err(Error::Inconsistent(format!(
                "arrow {s} -> {t} goes backwards"
            )));
        }
        preds[t].push(s);
        succs[s].push(t);
    }

    let mut tau = vec![None; len];
    let mut tau_inv = vec![None; len];
    let mut meshes = Vec::new();
    for v in &vertices {
        if v.position > 0 {
            let t = by_coord[&(v.orbit, v.position - 1)];
            tau[v.id] = Some(t);
            tau_inv[t] = Some(v.id);
            meshes.push(Mesh {
                start: t,
                middles: preds[v.id].clone(),
                end: v.id,
            });
        }
    }

    let mut injective = vec![usize::MAX; n];
    for i in 0..n {
        let dim_i = DimVector((0..n).map(|j| paths[j][i]).collect());
        let v = vertices
            .iter()
            .position(|v| v.dim == dim_i)
            .ok_or_else(|| {
                Error::Inconsistent(format!("injective I({}) was not knitted", q.label(i)))
            })?;
        if tau_inv[v].is_some() {
            return Err(Error::Inconsistent(format!(
                "I({}) has a τ-inverse",
                q.label(i)
            )));
        }
        injective[i] = v;
        vertices[v].injective_of = Some(i);
    }
    let projective: Vec<usize> = (0..n).map(|i| by_coord[&(i, 0)]).collect();

    let by_dim: HashMap<DimVector, usize> =
        vertices.iter().map(|v| (v.dim.clone(), v.id)).collect();

    let mut ar = ArQuiver {
        quiver: q.clone(),
        vertices,
        arrows,
        preds,
        succs,
        tau,
        tau_inv,
        meshes,
        projective,
        injective,
        by_coord,
        by_dim,
        hom: Vec::new(),
    };
    ar.check()?;
    ar.hom = (0..len).flat_map(|x| ar.hammock(x)).collect();
    Ok(ar)
}

impl ArQuiver {
    fn check(&self) -> Result<()> {
        let roots = positive_roots(&self.quiver);
        if roots.len() != self.vertices.len() || self.by_dim.len() != self.vertices.len() {
            return Err(Error::Inconsistent(format!(
                "knitted {} modules with {} distinct dimension vectors, expected {} positive roots",
                self.vertices.len(),
                self.by_dim.len(),
                roots.len()
            )));
        }
        for r in &roots {
            if !self.by_dim.contains_key(r) {
                return Err(Error::Inconsistent(format!("root {r} was not knitted")));
            }
        }
        for mesh in &self.meshes {
            let mut lhs: Vec<u32> = self.vertices[mesh.start].dim.0.clone();
            for (x, y) in lhs.iter_mut().zip(&self.vertices[mesh.end].dim.0) {
                *x += y;
            }
            let mut rhs = vec![0u32; self.quiver.n()];
            for &m in &mesh.middles {
                for (x, y) in rhs.iter_mut().zip(&self.vertices[m].dim.0) {
                    *x += y;
                }
            }
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "mesh additivity fails at {}",
                    self.vertices[mesh.end].dim
                )));
            }
            let mut out = self.succs[mesh.start].clone();
            out.sort();
            if out != mesh.middles {
                return Err(Error::Inconsistent(format!(
                    "mesh at {} is not a translation mesh",
                    self.vertices[mesh.end].dim
                )));
            }
        }
        Ok(())
    }

    /// `dim Hom(x, -)` by additive propagation along the meshes.
    fn hammock(&self, x: usize) -> Vec<u32> {
        let mut f = vec![0i64; self.vertices.len()];
        for z in x..self.vertices.len() {
            let mut val: i64 = self.preds[z].iter().map(|&w| f[w]).sum();
            if let Some(t) = self.tau[z] {
                val -= f[t];
            }
            if z == x {
                val += 1;
            }
            assert!(val >= 0, "negative hammock value");
            f[z] = val;
        }
        f.into_iter().map(|v| v as u32).collect()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ArVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &ArVertex {
        &self.vertices[id]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.meshes
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.preds[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succs[v]
    }

    pub fn projective(&self, i: usize) -> usize {
        self.projective[i]
    }

    pub fn injective(&self, i: usize) -> usize {
        self.injective[i]
    }

    pub fn is_projective(&self, v: usize) -> bool {
        self.vertices[v].projective_of.is_some()
    }

    pub fn is_injective(&self, v: usize) -> bool {
        self.vertices[v].injective_of.is_some()
    }

    pub fn at(&self, orbit: usize, position: usize) -> Option<usize> {
        self.by_coord.get(&(orbit, position)).copied()
    }

    pub fn find_dim(&self, dim: &DimVector) -> Option<usize> {
        self.by_dim.get(dim).copied()
    }

    /// Length of the τ-orbit of `P(i)` inside `mod H`.
    pub fn orbit_len(&self, i: usize) -> usize {
        let mut p = 0;
        while self.by_coord.contains_key(&(i, p)) {
            p += 1;
        }
        p
    }

    /// AR translate inside `mod H`; `None` on projectives.
    pub fn tau_module(&self, v: usize) -> Result<Option<usize>> {
        self.tau
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownObject(format!("module #{v}")))
    }

    pub fn tau_inverse_module(&self, v: usize) -> Result<Option<usize>> {
        self.tau_inv
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownObject(format!("module #{v}")))
    }

    /// `dim Hom_H(x, y)`.
    pub fn hom(&self, x: usize, y: usize) -> u32 {
        self.hom[x * self.vertices.len() + y]
    }

    /// `dim Ext¹_H(x, y) = dim Hom_H(y, τx)`.
    pub fn ext1(&self, x: usize, y: usize) -> u32 {
        self.tau[x].map_or(0, |t| self.hom(y, t))
    }
}
