//! Hom spaces of the mesh category `k(ZQ^op)`, which is equivalent to
//! `ind D^b(H)`.
//!
//! Morphisms are linear combinations of paths modulo the mesh ideal. For every
//! mesh `τz → w₁, …, w_r → z` the relation is `Σᵢ (wᵢ → z)(τz → wᵢ) = 0`, all
//! coefficients `+1`, middles in path order.
//!
//! For a fixed source `x` the spaces `Hom(x, z)` are built in path order:
//! `Hom(x, z)` is `⊕_{w → z} Hom(x, w)` modulo the image of `Hom(x, τz)` under
//! the mesh map. The quotient basis is chosen greedily among the summand basis
//! vectors, so every basis element is represented by a single path.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::derived::{DObject, DVertex, DerivedModel};
use crate::linalg::{independent_subset, is_zero, unit_vec, zero_vec, Echelon, Matrix, Scalar};
use crate::{Error, Result};

/// An element of `Hom_D(source, target)` in the coordinates of
/// [`MeshCategory::hom_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: DVertex,
    pub target: DVertex,
    pub coeffs: Vec<Scalar>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        is_zero(&self.coeffs)
    }

    pub fn scaled_add(&mut self, c: Scalar, other: &Morphism) {
        assert_eq!((self.source, self.target), (other.source, other.target));
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += c * b;
        }
    }
}

/// A basis of `Hom_D(source, target)`, each element a single path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: DVertex,
    pub target: DVertex,
    pub paths: Vec<Vec<DVertex>>,
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn element(&self, i: usize) -> Morphism {
        Morphism {
            source: self.source,
            target: self.target,
            coeffs: unit_vec(self.paths.len(), i),
        }
    }

    pub fn elements(&self) -> Vec<Morphism> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }
}

#[derive(Debug)]
struct Entry {
    /// Basis paths, relative to a source at shift 0.
    paths: Vec<Vec<DVertex>>,
    /// `(w, A)` with `A : Hom(x, w) → Hom(x, z)` post-composition by `w → z`.
    incoming: Vec<(DVertex, Matrix)>,
}

/// All `Hom(x, z)` for one source `x`, stored for `x` at shift 0.
#[derive(Debug)]
struct HomTable {
    entries: HashMap<DVertex, Entry>,
}

impl HomTable {
    fn dim(&self, z: DVertex) -> usize {
        self.entries.get(&z).map_or(0, |e| e.paths.len())
    }

    fn arrow(&self, u: DVertex, v: DVertex) -> Option<&Matrix> {
        self.entries
            .get(&v)?
            .incoming
            .iter()
            .find(|(w, _)| *w == u)
            .map(|(_, a)| a)
    }

    /// Post-composes `vec ∈ Hom(x, path[0])` with the arrows along `path`.
    fn push_along(&self, vec: Vec<Scalar>, path: &[DVertex]) -> Vec<Scalar> {
        let mut v = vec;
        for step in path.windows(2) {
            match self.arrow(step[0], step[1]) {
                Some(a) if a.cols() == v.len() => v = a.mul_vec(&v),
                _ => return zero_vec(self.dim(*path.last().unwrap())),
            }
        }
        v
    }
}

/// A minimal approximation triangle `A → x → cone` (right) or
/// `x → A → cone` (left).
#[derive(Clone, Debug)]
pub struct ApproxTriangle {
    pub target: DVertex,
    pub approx_source: DObject,
    /// One morphism per summand copy of `approx_source`, in summand order.
    pub map: Vec<Morphism>,
    /// Filled in by the localisation layer, which knows `D₀`.
    pub cone: Option<DObject>,
}

/// Mesh-category Hom spaces with lazily built, shared tables.
#[derive(Debug)]
pub struct MeshCategory {
    model: Arc<DerivedModel>,
    tables: RwLock<HashMap<usize, Arc<HomTable>>>,
}

impl MeshCategory {
    pub fn new(model: Arc<DerivedModel>) -> Self {
        Self {
            model,
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &DerivedModel {
        &self.model
    }

    fn table(&self, module: usize) -> Result<Arc<HomTable>> {
        if let Some(t) = self.tables.read().get(&module) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.build_table(module)?);
        Ok(self.tables.write().entry(module).or_insert(t).clone())
    }

    fn build_table(&self, module: usize) -> Result<HomTable> {
        let model = &*self.model;
        let x = DVertex::new(module, 0);
        let len = model.ar().len();
        let mut entries: HashMap<DVertex, Entry> = HashMap::new();
        entries.insert(
            x,
            Entry {
                paths: vec![vec![x]],
                incoming: Vec::new(),
            },
        );
        let region = (module + 1..len)
            .map(|b| DVertex::new(b, 0))
            .chain((0..len).map(|b| DVertex::new(b, 1)));
        for z in region {
            let preds: Vec<DVertex> = model
                .predecessors(z)
                .into_iter()
                .filter(|w| entries.get(w).is_some_and(|e| !e.paths.is_empty()))
                .collect();
            let mut offsets = Vec::with_capacity(preds.len());
            let mut ambient = 0;
            for w in &preds {
                offsets.push(ambient);
                ambient += entries[w].paths.len();
            }
            // Mesh relations: images of Hom(x, τz) in ⊕ Hom(x, w).
            let tz = model.tau_raw(z);
            let mut relations = Vec::new();
            if let Some(te) = entries.get(&tz) {
                for j in 0..te.paths.len() {
                    let e = unit_vec(te.paths.len(), j);
                    let mut r = zero_vec(ambient);
                    for (w, off) in preds.iter().zip(&offsets) {
                        let a = entries[w]
                            .incoming
                            .iter()
                            .find(|(u, _)| *u == tz)
                            .map(|(_, a)| a)
                            .ok_or_else(|| {
                                Error::Inconsistent(format!(
                                    "mesh arrow {} -> {} missing",
                                    model.name(tz),
                                    model.name(*w)
                                ))
                            })?;
                        for (k, c) in a.mul_vec(&e).into_iter().enumerate() {
                            r[off + k] = c;
                        }
                    }
                    relations.push(r);
                }
            }
            let rel_basis: Vec<Vec<Scalar>> = independent_subset(ambient, &relations)
                .into_iter()
                .map(|i| relations[i].clone())
                .collect();
            let mut ech = Echelon::new(ambient);
            for r in &rel_basis {
                ech.insert(r);
            }
            let chosen: Vec<usize> = (0..ambient)
                .filter(|&k| ech.insert(&unit_vec(ambient, k)))
                .collect();
            let expected = model.hom_raw(x, z) as usize;
            if chosen.len() != expected {
                return Err(Error::Inconsistent(format!(
                    "mesh basis of Hom({}, {}) has dimension {} but the hammock gives {}",
                    model.name(x),
                    model.name(z),
                    chosen.len(),
                    expected
                )));
            }
            // Coordinates on `chosen` modulo the relations.
            let mut cols = rel_basis.clone();
            cols.extend(chosen.iter().map(|&k| unit_vec(ambient, k)));
            let inv = Matrix::from_columns(ambient, &cols)
                .inverse()
                .expect("relations and chosen vectors form a basis");
            let skip = rel_basis.len();
            let mut incoming = Vec::with_capacity(preds.len());
            for (w, off) in preds.iter().zip(&offsets) {
                let dw = entries[w].paths.len();
                let mut a = Matrix::zeros(chosen.len(), dw);
                for c in 0..dw {
                    for r in 0..chosen.len() {
                        a.set(r, c, inv.get(skip + r, off + c));
                    }
                }
                incoming.push((*w, a));
            }
            let paths = chosen
                .iter()
                .map(|&k| {
                    let i = offsets.iter().rposition(|&o| o <= k).unwrap();
                    let mut p = entries[&preds[i]].paths[k - offsets[i]].clone();
                    p.push(z);
                    p
                })
                .collect();
            entries.insert(z, Entry { paths, incoming });
        }
        Ok(HomTable { entries })
    }

    fn rel(x: DVertex, v: DVertex) -> DVertex {
        v.shifted(-x.shift)
    }

    /// Basis of `Hom_D(x, y)` by paths; window-checked.
    pub fn hom_basis(&self, x: DVertex, y: DVertex) -> Result<HomBasis> {
        self.model.hom_derived(x, y)?;
        self.hom_basis_raw(x, y)
    }

    pub fn hom_basis_raw(&self, x: DVertex, y: DVertex) -> Result<HomBasis> {
        let table = self.table(x.module)?;
        let paths = table
            .entries
            .get(&Self::rel(x, y))
            .map(|e| {
                e.paths
                    .iter()
                    .map(|p| p.iter().map(|v| v.shifted(x.shift)).collect())
                    .collect()
            })
            .unwrap_or_default();
        Ok(HomBasis {
            source: x,
            target: y,
            paths,
        })
    }

    pub fn hom_dim(&self, x: DVertex, y: DVertex) -> Result<usize> {
        Ok(self.table(x.module)?.dim(Self::rel(x, y)))
    }

    pub fn zero(&self, x: DVertex, y: DVertex) -> Result<Morphism> {
        Ok(Morphism {
            source: x,
            target: y,
            coeffs: zero_vec(self.hom_dim(x, y)?),
        })
    }

    pub fn identity(&self, x: DVertex) -> Morphism {
        Morphism {
            source: x,
            target: x,
            coeffs: vec![Scalar::one()],
        }
    }

    /// The class of a path of arrows in the AR quiver of `D^b(H)`.
    pub fn evaluate_path(&self, path: &[DVertex]) -> Result<Morphism> {
        let (&x, &y) = match (path.first(), path.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::InvalidArgument("empty path".into())),
        };
        for step in path.windows(2) {
            if !self.model.successors(step[0]).contains(&step[1]) {
                return Err(Error::InvalidArgument(format!(
                    "{} -> {} is not an arrow",
                    self.model.name(step[0]),
                    self.model.name(step[1])
                )));
            }
        }
        let table = self.table(x.module)?;
        let rel: Vec<DVertex> = path.iter().map(|v| Self::rel(x, *v)).collect();
        Ok(Morphism {
            source: x,
            target: y,
            coeffs: table.push_along(vec![Scalar::one()], &rel),
        })
    }

    /// `g ∘ f` for `f : x → y`, `g : y → z`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::InvalidArgument(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.model.name(f.source),
                self.model.name(f.target),
                self.model.name(g.source),
                self.model.name(g.target)
            )));
        }
        let x = f.source;
        let table = self.table(x.module)?;
        let gb = self.hom_basis_raw(g.source, g.target)?;
        let mut out = zero_vec(table.dim(Self::rel(x, g.target)));
        if f.is_zero() || g.is_zero() {
            return Ok(Morphism {
                source: x,
                target: g.target,
                coeffs: out,
            });
        }
        for (c, path) in g.coeffs.iter().zip(&gb.paths) {
            if c.is_zero() {
                continue;
            }
            let rel: Vec<DVertex> = path.iter().map(|v| Self::rel(x, *v)).collect();
            let v = table.push_along(f.coeffs.clone(), &rel);
            for (o, a) in out.iter_mut().zip(v) {
                *o += *c * a;
            }
        }
        Ok(Morphism {
            source: x,
            target: g.target,
            coeffs: out,
        })
    }

    /// `G^t f`, transporting basis paths along the automorphism `G^t` of the
    /// translation quiver.
    pub fn g_twist(&self, f: &Morphism, t: i32, m: usize) -> Result<Morphism> {
        let model = &self.model;
        let (gx, gy) = (model.g_raw(f.source, t, m), model.g_raw(f.target, t, m));
        let basis = self.hom_basis_raw(f.source, f.target)?;
        let mut out = self.zero(gx, gy)?;
        for (c, path) in f.coeffs.iter().zip(&basis.paths) {
            if c.is_zero() {
                continue;
            }
            let moved: Vec<DVertex> = path.iter().map(|v| model.g_raw(*v, t, m)).collect();
            out.scaled_add(*c, &self.evaluate_path(&moved)?);
        }
        Ok(out)
    }

    /// The subspace of `Hom(x, z)` spanned by composites `x → w → z`,
    /// `w ∈ through`.
    pub fn factoring_space(&self, x: DVertex, z: DVertex, through: &[DVertex]) -> Result<Echelon> {
        let dim = self.hom_dim(x, z)?;
        let mut ech = Echelon::new(dim);
        if dim == 0 {
            return Ok(ech);
        }
        for &w in through {
            let left = self.hom_basis_raw(x, w)?;
            let right = self.hom_basis_raw(w, z)?;
            for f in left.elements() {
                for g in right.elements() {
                    ech.insert(&self.compose(&f, &g)?.coeffs);
                    if ech.rank() == dim {
                        return Ok(ech);
                    }
                }
            }
        }
        Ok(ech)
    }

    pub fn factoring_dim(&self, x: DVertex, z: DVertex, through: &[DVertex]) -> Result<usize> {
        Ok(self.factoring_space(x, z, through)?.rank())
    }

    /// Minimal right `add(cls)`-approximation of `x`.
    pub fn minimal_right_approximation(
        &self,
        x: DVertex,
        cls: &[DVertex],
    ) -> Result<ApproxTriangle> {
        self.approximation(x, cls, Side::Right)
    }

    /// Minimal left `add(cls)`-approximation of `x`.
    pub fn minimal_left_approximation(
        &self,
        x: DVertex,
        cls: &[DVertex],
    ) -> Result<ApproxTriangle> {
        self.approximation(x, cls, Side::Left)
    }

    fn approximation(&self, x: DVertex, cls: &[DVertex], side: Side) -> Result<ApproxTriangle> {
        for &c in cls.iter().chain([&x]) {
            self.model.shift_vertex(c, 0)?;
        }
        let mut cls: Vec<DVertex> = cls.to_vec();
        cls.sort();
        cls.dedup();
        let mut src = DObject::zero();
        let mut map = Vec::new();
        if cls.contains(&x) {
            src.add(x, 1);
            map.push(self.identity(x));
        } else {
            for &c in &cls {
                let others: Vec<DVertex> = cls.iter().copied().filter(|&d| d != c).collect();
                let (basis, mut ech) = match side {
                    Side::Right => (
                        self.hom_basis_raw(c, x)?,
                        self.factoring_space(c, x, &others)?,
                    ),
                    Side::Left => (
                        self.hom_basis_raw(x, c)?,
                        self.factoring_space(x, c, &others)?,
                    ),
                };
                for f in basis.elements() {
                    if ech.insert(&f.coeffs) {
                        src.add(c, 1);
                        map.push(f);
                    }
                }
            }
        }
        let tri = ApproxTriangle {
            target: x,
            approx_source: src,
            map,
            cone: None,
        };
        if !self.is_approximation(&tri, &cls, side)? {
            return Err(Error::Inconsistent(format!(
                "approximation of {} is not surjective",
                self.model.name(x)
            )));
        }
        for skip in 0..tri.map.len() {
            let mut smaller = tri.clone();
            smaller.map.remove(skip);
            if self.is_approximation(&smaller, &cls, side)? {
                return Err(Error::Inconsistent(format!(
                    "approximation of {} is not minimal",
                    self.model.name(x)
                )));
            }
        }
        Ok(tri)
    }

    /// Rank check of the approximation property of `tri.map` against every
    /// member of `cls`.
    fn is_approximation(&self, tri: &ApproxTriangle, cls: &[DVertex], side: Side) -> Result<bool> {
        let x = tri.target;
        for &c in cls {
            let (dim, mut ech) = match side {
                Side::Right => (self.hom_dim(c, x)?, Echelon::new(self.hom_dim(c, x)?)),
                Side::Left => (self.hom_dim(x, c)?, Echelon::new(self.hom_dim(x, c)?)),
            };
            if dim == 0 {
                continue;
            }
            for phi in &tri.map {
                let a = match side {
                    Side::Right => phi.source,
                    Side::Left => phi.target,
                };
                match side {
                    Side::Right => {
                        for h in self.hom_basis_raw(c, a)?.elements() {
                            ech.insert(&self.compose(&h, phi)?.coeffs);
                        }
                    }
                    Side::Left => {
                        for h in self.hom_basis_raw(a, c)?.elements() {
                            ech.insert(&self.compose(phi, &h)?.coeffs);
                        }
                    }
                }
            }
            if ech.rank() < dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hom dimension per target for one source, read from the table.
    pub fn hom_profile(&self, x: DVertex) -> Result<BTreeMap<DVertex, usize>> {
        let table = self.table(x.module)?;
        Ok(table
            .entries
            .iter()
            .filter(|(_, e)| !e.paths.is_empty())
            .map(|(z, e)| (z.shifted(x.shift), e.paths.len()))
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}
