//! The `m`-cluster category `C^m_H = D^b(H)/G` with `G = τ⁻¹[m]`.
//!
//! Objects are named by their representatives in the fundamental domain
//! `D_G = mod H ∨ … ∨ (mod H)[m-1] ∨ H[m]`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::Serialize;

use crate::ar::{knit_module_category, ArQuiver};
use crate::derived::{hom_orbit, DVertex, DerivedModel, Window, ZCoord};
use crate::mesh::MeshCategory;
use crate::quiver::Quiver;
use crate::{Error, Result};

/// Representatives of the indecomposables of `C^m_H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalDomain {
    pub m: usize,
    /// Slice-major, then shift.
    pub vertices: Vec<DVertex>,
}

pub fn fundamental_domain(ar: &ArQuiver, m: usize) -> FundamentalDomain {
    let mut vertices = Vec::new();
    for v in ar.vertices() {
        for t in 0..m {
            vertices.push(DVertex::new(v.id, t as i32));
        }
        if v.projective_of.is_some() {
            vertices.push(DVertex::new(v.id, m as i32));
        }
    }
    FundamentalDomain { m, vertices }
}

/// The `m`-rigidity relation on the fundamental domain.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    pub m: usize,
    pub nodes: Vec<DVertex>,
    pub self_rigid: Vec<bool>,
    adj: Vec<FixedBitSet>,
}

impl CompatibilityGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Maximal cliques among self-rigid nodes (Bron–Kerbosch with pivoting).
    /// Each clique is sorted; the list is sorted lexicographically.
    pub fn maximal_cliques(&self, cap: Option<usize>) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        let mut p = FixedBitSet::with_capacity(n);
        for i in (0..n).filter(|&i| self.self_rigid[i]) {
            p.insert(i);
        }
        let mut out = Vec::new();
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, FixedBitSet::with_capacity(n), &mut out, cap)?;
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        out: &mut Vec<Vec<usize>>,
        cap: Option<usize>,
    ) -> Result<()> {
        if p.is_clear() && x.is_clear() {
            if cap.is_some_and(|c| out.len() >= c) {
                return Err(Error::CapExceeded(cap.unwrap()));
            }
            out.push(r.clone());
            return Ok(());
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| (p.intersection(&self.adj[u]).count(), std::cmp::Reverse(u)))
            .expect("p or x is nonempty");
        let mut todo = p.clone();
        todo.difference_with(&self.adj[pivot]);
        for v in todo.ones() {
            r.push(v);
            let mut p2 = p.clone();
            p2.intersect_with(&self.adj[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adj[v]);
            self.bron_kerbosch(r, p2, x2, out, cap)?;
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }
}

/// A set of fundamental-domain vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MRigidObject {
    pub summands: Vec<DVertex>,
    pub maximal: bool,
}

/// `C^m_H` for one quiver and one `m`: the derived model, mesh category,
/// fundamental domain and compatibility graph.
#[derive(Debug)]
pub struct ClusterModel {
    m: usize,
    ar: Arc<ArQuiver>,
    derived: Arc<DerivedModel>,
    mesh: Arc<MeshCategory>,
    fd: FundamentalDomain,
    index: HashMap<DVertex, usize>,
    graph: CompatibilityGraph,
}

impl ClusterModel {
    pub fn new(q: &Quiver, m: usize) -> Result<Self> {
        Self::with_window(q, m, Window::for_m(m))
    }

    pub fn with_window(q: &Quiver, m: usize, window: Window) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        if window.lo > -2 || window.hi < m as i32 + 2 {
            return Err(Error::WindowTooSmall(format!(
                "window [{}, {}] must contain [-2, {}]",
                window.lo,
                window.hi,
                m + 2
            )));
        }
        let ar = Arc::new(knit_module_category(q)?);
        let derived = Arc::new(DerivedModel::new(ar.clone(), window));
        let mesh = Arc::new(MeshCategory::new(derived.clone()));
        let fd = fundamental_domain(&ar, m);
        let index = fd
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i))
            .collect();
        let graph = compatibility_graph(&derived, &fd)?;
        Ok(Self {
            m,
            ar,
            derived,
            mesh,
            fd,
            index,
            graph,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn quiver(&self) -> &Quiver {
        self.ar.quiver()
    }

    /// Number of simples.
    pub fn n(&self) -> usize {
        self.ar.quiver().n()
    }

    pub fn ar(&self) -> &Arc<ArQuiver> {
        &self.ar
    }

    pub fn derived(&self) -> &Arc<DerivedModel> {
        &self.derived
    }

    pub fn mesh(&self) -> &Arc<MeshCategory> {
        &self.mesh
    }

    pub fn domain(&self) -> &FundamentalDomain {
        &self.fd
    }

    pub fn graph(&self) -> &CompatibilityGraph {
        &self.graph
    }

    pub fn node(&self, v: DVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn in_domain(&self, v: DVertex) -> bool {
        self.index.contains_key(&v)
    }

    fn nodes_of(&self, set: &[DVertex]) -> Result<Vec<usize>> {
        set.iter()
            .map(|v| {
                self.node(*v).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "{} is not in the fundamental domain",
                        self.derived.name(*v)
                    ))
                })
            })
            .collect()
    }

    pub fn name(&self, v: DVertex) -> String {
        self.derived.name(v)
    }

    pub fn names(&self, vs: &[DVertex]) -> Vec<String> {
        vs.iter().map(|v| self.name(*v)).collect()
    }

    /// Parses a comma-separated list of fundamental-domain objects.
    pub fn parse_object(&self, text: &str) -> Result<Vec<DVertex>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let v = self.derived.parse_name(part)?;
            self.nodes_of(&[v])?;
            out.push(v);
        }
        out.sort();
        let len = out.len();
        out.dedup();
        if out.len() != len {
            return Err(Error::InvalidArgument("repeated summand".into()));
        }
        Ok(out)
    }

    /// `dim Ext^k_{C^m}(x, y) = dim Hom_{C^m}(x, y[k])`; `k = 0` gives Hom.
    pub fn ext_cluster(&self, x: DVertex, y: DVertex, k: usize) -> Result<u32> {
        self.nodes_of(&[x, y])?;
        hom_orbit(&self.derived, x, y, k, self.m)
    }

    pub fn maximal_m_rigid(&self, cap: Option<usize>) -> Result<Vec<MRigidObject>> {
        Ok(self
            .graph
            .maximal_cliques(cap)?
            .into_iter()
            .map(|c| MRigidObject {
                summands: c.into_iter().map(|i| self.fd.vertices[i]).collect(),
                maximal: true,
            })
            .collect())
    }

    pub fn is_m_rigid(&self, set: &[DVertex]) -> Result<bool> {
        let idx = self.nodes_of(set)?;
        Ok(idx.iter().all(|&i| self.graph.self_rigid[i])
            && idx.iter().enumerate().all(|(a, &i)| {
                idx[a + 1..]
                    .iter()
                    .all(|&j| i != j && self.graph.adjacent(i, j))
            }))
    }

    /// Nodes outside `set` compatible with every member of `set`, optionally
    /// restricted to self-rigid nodes.
    fn extenders(&self, set: &[DVertex], rigid_only: bool) -> Result<Vec<DVertex>> {
        let idx = self.nodes_of(set)?;
        Ok((0..self.graph.len())
            .filter(|v| !idx.contains(v))
            .filter(|&v| !rigid_only || self.graph.self_rigid[v])
            .filter(|&v| idx.iter().all(|&i| self.graph.adjacent(i, v)))
            .map(|v| self.fd.vertices[v])
            .collect())
    }

    pub fn is_maximal_m_rigid(&self, set: &[DVertex]) -> Result<bool> {
        Ok(self.is_m_rigid(set)? && self.extenders(set, true)?.is_empty())
    }

    /// True iff every object bi-orthogonal to `t` in degrees `1..=m`, rigid or
    /// not, is a summand of `t`.
    pub fn is_m_cluster_tilting(&self, t: &[DVertex]) -> Result<bool> {
        Ok(self.is_m_rigid(t)? && self.extenders(t, false)?.is_empty())
    }

    /// All complements of an almost complete `m`-rigid object.
    pub fn complements(&self, partial: &[DVertex]) -> Result<Vec<DVertex>> {
        if partial.len() + 1 != self.n() {
            return Err(Error::Precondition(format!(
                "an almost complete object has {} summands, got {}",
                self.n().saturating_sub(1),
                partial.len()
            )));
        }
        if !self.is_m_rigid(partial)? {
            return Err(Error::Precondition("the object is not m-rigid".into()));
        }
        self.extenders(partial, true)
    }

    /// Tilting modules, embedded in degree 0.
    pub fn tilting_objects(&self) -> Vec<Vec<DVertex>> {
        tilting_modules(&self.ar)
            .into_iter()
            .map(|t| t.into_iter().map(|v| DVertex::new(v, 0)).collect())
            .collect()
    }
}

fn compatibility_graph(d: &DerivedModel, fd: &FundamentalDomain) -> Result<CompatibilityGraph> {
    let m = fd.m;
    let nodes = fd.vertices.clone();
    let len = nodes.len();
    // bad[i][j]: some Ext^k(i, j) ≠ 0 for 1 ≤ k ≤ m.
    let bad: Vec<Vec<bool>> = nodes
        .par_iter()
        .map(|&x| {
            nodes
                .iter()
                .map(|&y| {
                    for k in 1..=m {
                        if hom_orbit(d, x, y, k, m)? != 0 {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let self_rigid = (0..len).map(|i| !bad[i][i]).collect();
    let mut adj = vec![FixedBitSet::with_capacity(len); len];
    for (i, row) in adj.iter_mut().enumerate() {
        for j in (0..len).filter(|&j| j != i && !bad[i][j] && !bad[j][i]) {
            row.insert(j);
        }
    }
    Ok(CompatibilityGraph {
        m,
        nodes,
        self_rigid,
        adj,
    })
}

/// All basic tilting modules: sets of `n` indecomposables, pairwise without
/// `Ext¹` in either direction. Each set is sorted by module id.
pub fn tilting_modules(ar: &ArQuiver) -> Vec<Vec<usize>> {
    let n = ar.quiver().n();
    let len = ar.len();
    let ok = |a: usize, b: usize| ar.ext1(a, b) == 0 && ar.ext1(b, a) == 0;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        start: usize,
        len: usize,
        n: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        ok: &dyn Fn(usize, usize) -> bool,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..len {
            if ok(v, v) && cur.iter().all(|&c| ok(c, v)) {
                cur.push(v);
                go(v + 1, len, n, cur, out, ok);
                cur.pop();
            }
        }
    }
    go(0, len, n, &mut cur, &mut out, &ok);
    out
}

/// Shared `ClusterModel`s, keyed by quiver and `m`.
#[derive(Debug, Default)]
pub struct Models {
    cache: RwLock<HashMap<(Quiver, usize), Arc<ClusterModel>>>,
}

impl Models {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, q: &Quiver, m: usize) -> Result<Arc<ClusterModel>> {
        let key = (q.clone(), m);
        if let Some(c) = self.cache.read().get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(ClusterModel::new(q, m)?);
        Ok(self.cache.write().entry(key).or_insert(c).clone())
    }

    pub fn insert(&self, model: Arc<ClusterModel>) {
        self.cache
            .write()
            .insert((model.quiver().clone(), model.m()), model);
    }
}

/// A section of `ZQ^op`: the vertex `(p_i, i)` in each τ-orbit, with
/// `p_j - p_i ∈ {0, 1}` for every arrow `i → j` of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slice {
    pub offsets: Vec<i64>,
}

impl Slice {
    pub fn identity(n: usize) -> Self {
        Self {
            offsets: vec![0; n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.offsets.iter().all(|&p| p == 0)
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        self.offsets.len() == q.n()
            && q.arrows()
                .iter()
                .all(|&(i, j)| matches!(self.offsets[j] - self.offsets[i], 0 | 1))
    }

    /// The quiver `H₀` whose projectives sit on this slice: an arrow `i → j`
    /// of `Q` is kept when `p_i = p_j` and reversed otherwise.
    pub fn quiver(&self, q: &Quiver) -> Result<Quiver> {
        let arrows: Vec<(&str, &str)> = q
            .arrows()
            .iter()
            .map(|&(i, j)| {
                if self.offsets[i] == self.offsets[j] {
                    (q.label(i), q.label(j))
                } else {
                    (q.label(j), q.label(i))
                }
            })
            .collect();
        let labels: Vec<&str> = q.labels().iter().map(String::as_str).collect();
        Quiver::new_multi(&labels, &arrows)
    }

    /// Coordinates relative to `H₀`: `(p, i) ↦ (p - p_i, i)`.
    pub fn to_slice_coord(&self, c: ZCoord) -> ZCoord {
        ZCoord {
            orbit: c.orbit,
            p: c.p - self.offsets[c.orbit],
        }
    }
}

/// All slices with offsets in `[-bound, bound]`, the identity first, then by
/// `Σ|p_i|`, then lexicographically.
pub fn slices(q: &Quiver, bound: i64) -> Vec<Slice> {
    let n = q.n();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(i, j) in q.arrows() {
        // p_j = p_i + e and p_i = p_j - e, e ∈ {0, 1}.
        adj[i].push((j, 1));
        adj[j].push((i, -1));
    }
    let mut order = Vec::new();
    let mut parent: Vec<Option<(usize, i64)>> = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, dir) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, dir));
                    stack.push(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut p = vec![0i64; n];
    fn go(
        k: usize,
        order: &[usize],
        parent: &[Option<(usize, i64)>],
        bound: i64,
        p: &mut Vec<i64>,
        out: &mut Vec<Slice>,
    ) {
        if k == order.len() {
            out.push(Slice { offsets: p.clone() });
            return;
        }
        let v = order[k];
        let choices: Vec<i64> = match parent[v] {
            None => (-bound..=bound).collect(),
            Some((u, dir)) => vec![p[u], p[u] + dir],
        };
        for c in choices {
            if c.abs() <= bound {
                p[v] = c;
                go(k + 1, order, parent, bound, p, out);
            }
        }
    }
    go(0, &order, &parent, bound, &mut p, &mut out);
    out.retain(|s| s.is_valid(q));
    out.sort_by_key(|s| {
        (
            !s.is_identity(),
            s.offsets.iter().map(|x| x.abs()).sum::<i64>(),
            s.offsets.clone(),
        )
    });
    out
}

/// An object moved into `mod H₀ ∨ … ∨ (mod H₀)[m-1]` for a slice `H₀`.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub slice: Slice,
    pub model: Arc<ClusterModel>,
    /// Summands in the coordinates of `model`, sorted.
    pub object: Vec<DVertex>,
    /// `(original summand, its representative over H₀)`.
    pub correspondence: Vec<(DVertex, DVertex)>,
}

impl Normalized {
    pub fn image_of(&self, v: DVertex) -> Option<DVertex> {
        self.correspondence
            .iter()
            .find(|(a, _)| *a == v)
            .map(|(_, b)| *b)
    }
}

/// Transfers `v` to the coordinates of the slice algebra and picks the `G`-orbit
/// representative of degree in `[0, m-1]`, if any.
fn transfer(from: &ClusterModel, slice: &Slice, to: &ClusterModel, v: DVertex) -> Option<DVertex> {
    let c = slice.to_slice_coord(from.derived.zcoord(v));
    let w = to.derived.from_zcoord(c);
    let m = from.m;
    (-1..=1)
        .map(|s| to.derived.g_raw(w, s, m))
        .find(|u| (0..m as i32).contains(&u.shift))
}

/// Finds a slice `H₀` in which every summand of the maximal `m`-rigid object `t`
/// has a representative of degree at most `m - 1`, and checks that the
/// repositioned object is maximal `m`-rigid over `H₀`.
pub fn normalize_to_dminus(
    model: &Arc<ClusterModel>,
    t: &[DVertex],
    models: &Models,
) -> Result<Normalized> {
    let m = model.m;
    if !model.is_maximal_m_rigid(t)? {
        return Err(Error::Precondition(
            "the object is not maximal m-rigid".into(),
        ));
    }
    let mut sorted = t.to_vec();
    sorted.sort();
    if sorted.iter().all(|v| v.shift < m as i32) {
        return Ok(Normalized {
            slice: Slice::identity(model.n()),
            model: model.clone(),
            object: sorted.clone(),
            correspondence: sorted.iter().map(|v| (*v, *v)).collect(),
        });
    }
    let bound = model
        .quiver()
        .components()
        .iter()
        .map(|c| c.coxeter_number() as i64)
        .max()
        .unwrap_or(1)
        * 2;
    for slice in slices(model.quiver(), bound) {
        let h0 = models.get(&slice.quiver(model.quiver())?, m)?;
        let images: Option<Vec<DVertex>> = sorted
            .iter()
            .map(|&v| transfer(model, &slice, &h0, v))
            .collect();
        let Some(images) = images else { continue };
        let mut object = images.clone();
        object.sort();
        object.dedup();
        if object.len() != images.len() || !h0.is_maximal_m_rigid(&object)? {
            continue;
        }
        return Ok(Normalized {
            slice,
            model: h0,
            object,
            correspondence: sorted.iter().copied().zip(images).collect(),
        });
    }
    Err(Error::WindowTooSmall(format!(
        "no slice with offsets in [-{bound}, {bound}] normalizes the object"
    )))
}

/// Cliques of `g` by exhaustive subset search; used to cross-check the
/// Bron–Kerbosch enumeration on small graphs.
pub fn maximal_cliques_brute_force(
    adjacent: &dyn Fn(usize, usize) -> bool,
    rigid: &[bool],
) -> Vec<Vec<usize>> {
    let n = rigid.len();
    assert!(n <= 24, "brute force is limited to 24 nodes");
    let is_clique = |mask: u32| {
        (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| {
            rigid[i]
                && (i + 1..n)
                    .filter(|&j| mask >> j & 1 == 1)
                    .all(|j| adjacent(i, j))
        })
    };
    let cliques: BTreeSet<u32> = (0..1u32 << n).filter(|&m| is_clique(m)).collect();
    let mut out: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|&&m| (0..n).all(|v| m >> v & 1 == 1 || !cliques.contains(&(m | 1 << v))))
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(name: &str, m: usize) -> ClusterModel {
        ClusterModel::new(&Quiver::preset(name).unwrap(), m).unwrap()
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(model("A1", 2).domain().vertices.len(), 3);
        assert_eq!(model("A2", 1).domain().vertices.len(), 5);
        assert_eq!(model("A3", 2).domain().vertices.len(), 15);
        assert!(ClusterModel::new(&Quiver::preset("A2").unwrap(), 0).is_err());
    }

    #[test]
    fn pentagon() {
        let c = model("A2", 1);
        let g = c.graph();
        assert_eq!(g.len(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|i| g.neighbours(i).count() == 2 && g.self_rigid[i]));
        let v = |s: &str| c.derived().parse_name(s).unwrap();
        assert_eq!(c.ext_cluster(v("10"), v("01"), 1).unwrap(), 1);
        for x in c.domain().vertices.clone() {
            assert_eq!(c.complements(&[x]).unwrap().len(), 2);
            assert!(!c.is_m_cluster_tilting(&[x]).unwrap());
        }
    }

    #[test]
    fn a1_m2_has_no_edges() {
        let c = model("A1", 2);
        assert_eq!(c.graph().edge_count(), 0);
        assert_eq!(c.complements(&[]).unwrap().len(), 3);
        assert_eq!(c.maximal_m_rigid(None).unwrap().len(), 3);
    }

    #[test]
    fn clique_counts_and_cap() {
        assert_eq!(model("A2", 1).maximal_m_rigid(None).unwrap().len(), 5);
        assert_eq!(model("A2", 2).maximal_m_rigid(None).unwrap().len(), 12);
        assert_eq!(model("A3", 1).maximal_m_rigid(None).unwrap().len(), 14);
        assert!(matches!(
            model("A3", 1).maximal_m_rigid(Some(3)),
            Err(Error::CapExceeded(3))
        ));
    }

    #[test]
    fn brute_force_agrees() {
        for (name, m) in [("A2", 2), ("A3", 1), ("A2", 3)] {
            let c = model(name, m);
            let g = c.graph();
            let bf = maximal_cliques_brute_force(&|i, j| g.adjacent(i, j), &g.self_rigid);
            assert_eq!(bf, g.maximal_cliques(None).unwrap());
        }
    }

    #[test]
    fn tilting_counts() {
        let ar = |q: &Quiver| knit_module_category(q).unwrap();
        assert_eq!(
            tilting_modules(&ar(&Quiver::preset("A1").unwrap())).len(),
            1
        );
        let a2 = ar(&Quiver::preset("A2").unwrap());
        let t = tilting_modules(&a2);
        let named: Vec<Vec<String>> = t
            .iter()
            .map(|s| s.iter().map(|&v| a2.vertex(v).dim.to_string()).collect())
            .collect();
        assert_eq!(named, vec![vec!["01", "11"], vec!["11", "10"]]);
        assert_eq!(
            tilting_modules(&ar(&Quiver::preset("A3").unwrap())).len(),
            5
        );
    }

    #[test]
    fn slices_of_a2() {
        let q = Quiver::preset("A2").unwrap();
        let s = slices(&q, 1);
        assert!(s[0].is_identity());
        assert!(s.iter().all(|s| s.is_valid(&q)));
        // (-1,-1) (-1,0) (0,0) (0,1) (1,1)
        assert_eq!(s.len(), 5);
        let flipped = Slice {
            offsets: vec![0, 1],
        };
        assert_eq!(flipped.quiver(&q).unwrap().arrows(), &[(1, 0)]);
    }

    #[test]
    fn normalize_example() {
        let models = Models::new();
        let c = Arc::new(model("A2", 1));
        let v = |s: &str| c.derived().parse_name(s).unwrap();
        let t = [v("01"), v("11[1]")];
        let norm = normalize_to_dminus(&c, &t, &models).unwrap();
        assert!(!norm.slice.is_identity());
        assert!(norm.object.iter().all(|x| x.shift == 0));
        let id = normalize_to_dminus(&c, &[v("01"), v("11")], &models).unwrap();
        assert!(id.slice.is_identity());
    }
}
