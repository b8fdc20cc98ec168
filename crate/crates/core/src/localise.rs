//! Localisation of `D^b(H)` at a rigid indecomposable `M = X[k]`.
//!
//! The subcategory `D₀ = {U : Hom(M[i], U) = 0 for all i}` consists of the
//! shifts of the modules in `U_X = {U : Hom(X, U) = 0 = Ext¹(X, U)}`, and
//! `U_X ≃ mod H′` for a hereditary `H′` with `n - 1` simples. `L_M` sends an
//! object `w` to the unique `Y ∈ D₀` with `Hom(Y, U) = Hom(w, U)` for all
//! `U ∈ D₀`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::ar::{knit_module_category, ArQuiver};
use crate::cluster::{normalize_to_dminus, ClusterModel, Models, Slice};
use crate::derived::{DObject, DVertex, DerivedModel};
use crate::mesh::{ApproxTriangle, MeshCategory};
use crate::quiver::{DimVector, Quiver};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct PerpendicularData {
    /// The localised object `M`.
    pub at: DVertex,
    /// `X` with `M = X[k]`.
    pub base_module: usize,
    /// Modules of `U_X`, by id.
    pub u_members: Vec<usize>,
    /// The `n - 1` projectives of `U_X`, ordered by label; the `j`-th is `P(j)`
    /// of `H′`.
    pub projectives: Vec<usize>,
    pub h_prime: Quiver,
    h_ar: Arc<ArQuiver>,
    to_h: HashMap<usize, usize>,
}

impl PerpendicularData {
    pub fn new(model: &DerivedModel, mesh: &MeshCategory, at: DVertex) -> Result<Self> {
        let ar = model.ar();
        let n = ar.quiver().n();
        if at.module >= ar.len() {
            return Err(Error::UnknownObject(model.name(at)));
        }
        let x = at.module;
        if ar.ext1(x, x) != 0 {
            return Err(Error::Precondition(format!(
                "{} is not rigid",
                model.name(at)
            )));
        }
        let u_members: Vec<usize> = (0..ar.len())
            .filter(|&u| ar.hom(x, u) == 0 && ar.ext1(x, u) == 0)
            .collect();
        let mut projectives: Vec<usize> = u_members
            .iter()
            .copied()
            .filter(|&p| u_members.iter().all(|&y| ar.ext1(p, y) == 0))
            .collect();
        if projectives.len() + 1 != n {
            return Err(Error::Inconsistent(format!(
                "U has {} projectives, expected {}",
                projectives.len(),
                n - 1
            )));
        }

        // H′ stores its vertices in label order.
        projectives.sort_by_key(|&p| ar.vertex(p).dim.to_string());
        let labels: Vec<String> = projectives
            .iter()
            .map(|&p| ar.vertex(p).dim.to_string())
            .collect();
        let mut arrows = Vec::new();
        // An irreducible map P'_b → P'_a is an arrow a → b of H′.
        for (a, &pa) in projectives.iter().enumerate() {
            for (b, &pb) in projectives.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (src, tgt) = (DVertex::new(pb, 0), DVertex::new(pa, 0));
                let others: Vec<DVertex> = projectives
                    .iter()
                    .filter(|&&p| p != pa && p != pb)
                    .map(|&p| DVertex::new(p, 0))
                    .collect();
                let irr = ar.hom(pb, pa) as usize - mesh.factoring_dim(src, tgt, &others)?;
                for _ in 0..irr {
                    arrows.push((labels[a].clone(), labels[b].clone()));
                }
            }
        }
        let h_prime = Quiver::new_multi(&labels, &arrows)?;
        let h_ar = Arc::new(knit_module_category(&h_prime)?);
        if h_ar.len() != u_members.len() {
            return Err(Error::Inconsistent(format!(
                "U has {} indecomposables but mod H' has {}",
                u_members.len(),
                h_ar.len()
            )));
        }
        let mut to_h = HashMap::new();
        for &u in &u_members {
            let dim = DimVector(projectives.iter().map(|&p| ar.hom(p, u)).collect());
            let h = h_ar.find_dim(&dim).ok_or_else(|| {
                Error::Inconsistent(format!("{} is not an H'-module dimension vector", dim))
            })?;
            to_h.insert(u, h);
        }
        for (j, &p) in projectives.iter().enumerate() {
            if to_h[&p] != h_ar.projective(j) {
                return Err(Error::Inconsistent(format!(
                    "P'_{j} does not map to the projective P({j}) of H'"
                )));
            }
        }
        Ok(Self {
            at,
            base_module: x,
            u_members,
            projectives,
            h_prime,
            h_ar,
            to_h,
        })
    }

    pub fn h_ar(&self) -> &Arc<ArQuiver> {
        &self.h_ar
    }

    pub fn is_in_d0(&self, u: DVertex) -> bool {
        self.to_h.contains_key(&u.module)
    }

    /// The image of `u ∈ D₀` in `D^b(H′)`; `U[i]` keeps degree `i`.
    pub fn to_h_prime(&self, u: DVertex) -> Option<DVertex> {
        self.to_h.get(&u.module).map(|&h| DVertex::new(h, u.shift))
    }

    fn members_between(&self, lo: i32, hi: i32) -> Vec<DVertex> {
        (lo..=hi)
            .flat_map(|s| self.u_members.iter().map(move |&u| DVertex::new(u, s)))
            .collect()
    }
}

/// `D₀` membership by scanning `Hom(M[i], u)` over all shifts that can be
/// nonzero.
pub fn is_in_d0_by_scan(model: &DerivedModel, at: DVertex, u: DVertex) -> bool {
    let d = u.shift - at.shift;
    (d - 2..=d + 2).all(|i| model.hom_raw(at.shifted(i), u) == 0)
}

/// Degrees scanned around `w` when solving the fingerprint system; the
/// coefficients outside `[deg w, deg w + 1]` must come out zero.
const SOLVE_BELOW: i32 = 2;
const SOLVE_ABOVE: i32 = 3;

/// `L_M(w)` for an indecomposable `w`, by forward substitution of the
/// unitriangular system `Σ_V r_V dim Hom(V, U) = dim Hom(w, U)` over `D₀`
/// members `V, U` in path order.
pub fn project_vertex(model: &DerivedModel, pd: &PerpendicularData, w: DVertex) -> Result<DObject> {
    if pd.is_in_d0(w) {
        return Ok(DObject::from_vertices([w]));
    }
    let (lo, hi) = (w.shift - SOLVE_BELOW, w.shift + SOLVE_ABOVE);
    let members = pd.members_between(lo, hi);
    let mut coeffs: Vec<i64> = Vec::with_capacity(members.len());
    for (k, &u) in members.iter().enumerate() {
        let mut val = model.hom_raw(w, u) as i64;
        for (v, r) in members[..k].iter().zip(&coeffs) {
            val -= r * model.hom_raw(*v, u) as i64;
        }
        coeffs.push(val);
    }
    let mut out = DObject::zero();
    for (u, r) in members.iter().zip(coeffs) {
        if r < 0 {
            return Err(Error::WindowTooSmall(format!(
                "negative coefficient projecting {}",
                model.name(w)
            )));
        }
        if r > 0 {
            if u.shift < w.shift || u.shift > w.shift + 1 {
                return Err(Error::WindowTooSmall(format!(
                    "projection of {} reaches {}",
                    model.name(w),
                    model.name(*u)
                )));
            }
            out.add(*u, r as u32);
        }
    }
    Ok(out)
}

pub fn project_to_d0(model: &DerivedModel, pd: &PerpendicularData, w: &DObject) -> Result<DObject> {
    let mut out = DObject::zero();
    for (v, mult) in w.summands() {
        for (u, r) in project_vertex(model, pd, v)?.summands() {
            out.add(u, r * mult);
        }
    }
    Ok(out)
}

/// Class in `K₀(H)`: `[Z[t]] = (-1)^t [Z]`.
pub fn k0_class(model: &DerivedModel, w: &DObject) -> Vec<i64> {
    let n = model.ar().quiver().n();
    let mut out = vec![0i64; n];
    for (v, mult) in w.summands() {
        let sign = if v.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        for (o, d) in out
            .iter_mut()
            .zip(model.ar().vertex(v.module).dim.entries())
        {
            *o += sign * mult as i64 * *d as i64;
        }
    }
    out
}

/// The triangle `M_x → x → L_M(x) →` with `M_x` a minimal right approximation
/// by shifts of `M`.
pub fn approximation_triangle(
    mesh: &MeshCategory,
    pd: &PerpendicularData,
    x: DVertex,
) -> Result<ApproxTriangle> {
    let model = mesh.model();
    let d = x.shift - pd.at.shift;
    let cls: Vec<DVertex> = (d - 2..=d + 1)
        .map(|j| pd.at.shifted(j))
        .filter(|v| model.in_window(*v))
        .collect();
    let mut tri = mesh.minimal_right_approximation(x, &cls)?;
    let cone = project_vertex(model, pd, x)?;
    let mut expected = k0_class(model, &DObject::from_vertices([x]));
    for (o, a) in expected.iter_mut().zip(k0_class(model, &tri.approx_source)) {
        *o -= a;
    }
    if k0_class(model, &cone) != expected {
        return Err(Error::Inconsistent(format!(
            "[L({0})] differs from [{0}] - [M_x]",
            model.name(x)
        )));
    }
    for v in tri.approx_source.indecomposables() {
        for t in 1..=3 {
            if model.hom_raw(x, v.shifted(t)) != 0 {
                return Err(Error::Inconsistent(format!(
                    "Hom({}, {}[{t}]) is nonzero",
                    model.name(x),
                    model.name(v)
                )));
            }
        }
    }
    tri.cone = Some(cone);
    Ok(tri)
}

/// All window vertices `x ∉ D₀` with `L_M(x) = y`, `Hom(x, M[t]) = 0` for all
/// `t` and `Hom(M, x[t]) = 0` for `t ≠ 1 - i`.
pub fn find_left_replacement(
    model: &DerivedModel,
    pd: &PerpendicularData,
    y: DVertex,
    i: i32,
) -> Result<Vec<DVertex>> {
    if !pd.is_in_d0(y) {
        return Err(Error::Precondition(format!(
            "{} is not in D0",
            model.name(y)
        )));
    }
    if model.hom_raw(y, pd.at.shifted(i)) == 0 {
        return Err(Error::Precondition(format!(
            "Hom({}, M[{i}]) is zero",
            model.name(y)
        )));
    }
    let m = pd.at;
    let target = DObject::from_vertices([y]);
    let mut out = Vec::new();
    for x in model.window_vertices() {
        if pd.is_in_d0(x) {
            continue;
        }
        let d = x.shift - m.shift;
        let to_m = (d - 2..=d + 2).all(|t| model.hom_raw(x, m.shifted(t)) == 0);
        let from_m = (-d - 2..=-d + 2)
            .filter(|&t| t != 1 - i)
            .all(|t| model.hom_raw(m, x.shifted(t)) == 0);
        if to_m && from_m && project_vertex(model, pd, x)? == target {
            out.push(x);
        }
    }
    if out.is_empty() {
        return Err(Error::WindowTooSmall(format!(
            "no left replacement of {} in the window",
            model.name(y)
        )));
    }
    Ok(out)
}

/// Result of localising a maximal `m`-rigid object at one of its summands.
#[derive(Clone, Debug, Serialize)]
pub struct LocaliseReport {
    pub m: usize,
    /// Slice used to move the object into `D_G⁻`; identity if none was needed.
    pub slice: Slice,
    pub object: Vec<String>,
    pub at: String,
    pub h_prime: crate::quiver::QuiverSpec,
    pub image: Vec<String>,
    pub image_summands: usize,
    pub in_domain: bool,
    pub m_rigid: bool,
    pub maximal: bool,
    /// `(summand dropped, complements over H, complements over H′)`.
    pub complements: Vec<(String, usize, usize)>,
    #[serde(skip)]
    pub image_vertices: Vec<DVertex>,
    /// The model the object was localised in, after normalisation.
    #[serde(skip)]
    pub model: Option<Arc<ClusterModel>>,
    #[serde(skip)]
    pub at_vertex: Option<DVertex>,
    /// `(summand, its image over H′)`, in the coordinates of `model`.
    #[serde(skip)]
    pub pairs: Vec<(DVertex, DVertex)>,
    #[serde(skip)]
    pub h_model: Option<Arc<ClusterModel>>,
}

impl LocaliseReport {
    pub fn passed(&self) -> bool {
        let m = self.m;
        self.in_domain
            && self.m_rigid
            && self.maximal
            && self
                .complements
                .iter()
                .all(|&(_, a, b)| a == m + 1 && b == m + 1)
    }
}

/// The object together with the model it lives in after normalisation.
pub struct Prepared {
    pub model: Arc<ClusterModel>,
    pub slice: Slice,
    pub object: Vec<DVertex>,
    pub at: DVertex,
}

/// Moves `t` into `D_G⁻` over a slice when `at` has degree `m`.
pub fn prepare(
    model: &Arc<ClusterModel>,
    t: &[DVertex],
    at: DVertex,
    models: &Models,
) -> Result<Prepared> {
    if !t.contains(&at) {
        return Err(Error::Precondition(format!(
            "{} is not a summand",
            model.name(at)
        )));
    }
    if at.shift < model.m() as i32 {
        let mut object = t.to_vec();
        object.sort();
        return Ok(Prepared {
            model: model.clone(),
            slice: Slice::identity(model.n()),
            object,
            at,
        });
    }
    let norm = normalize_to_dminus(model, t, models)?;
    let at = norm.image_of(at).expect("summand is transferred");
    Ok(Prepared {
        model: norm.model,
        slice: norm.slice,
        object: norm.object,
        at,
    })
}

pub fn localise_object(
    model: &Arc<ClusterModel>,
    t: &[DVertex],
    at: DVertex,
    models: &Models,
) -> Result<LocaliseReport> {
    let m = model.m();
    if !model.is_maximal_m_rigid(t)? {
        return Err(Error::Precondition(
            "the object is not maximal m-rigid".into(),
        ));
    }
    let prep = prepare(model, t, at, models)?;
    let cm = &prep.model;
    let d = cm.derived();
    let pd = PerpendicularData::new(d, cm.mesh(), prep.at)?;
    let hm = models.get(&pd.h_prime, m)?;

    let mut image = Vec::new();
    let mut pairs = Vec::new();
    for &x in prep.object.iter().filter(|&&x| x != prep.at) {
        let tri = approximation_triangle(cm.mesh(), &pd, x)?;
        for v in tri.approx_source.indecomposables() {
            if !(0..=m as i32).contains(&v.shift) {
                return Err(Error::Inconsistent(format!(
                    "approximation of {} uses {}",
                    d.name(x),
                    d.name(v)
                )));
            }
        }
        let cone = tri.cone.expect("cone is set");
        let y = cone.as_indecomposable().ok_or_else(|| {
            Error::Inconsistent(format!(
                "L({}) = {} is not indecomposable",
                d.name(x),
                d.object_name(&cone)
            ))
        })?;
        let h = pd.to_h_prime(y).expect("cone lies in D0");
        image.push(h);
        pairs.push((x, h));
    }
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == image.len();
    let in_domain = distinct && image.iter().all(|v| hm.in_domain(*v));
    let m_rigid = in_domain && hm.is_m_rigid(&sorted)?;
    let maximal = m_rigid && hm.is_maximal_m_rigid(&sorted)?;

    let mut complements = Vec::new();
    if m_rigid {
        for &(x, h) in &pairs {
            let rest: Vec<DVertex> = prep.object.iter().copied().filter(|&v| v != x).collect();
            let rest_h: Vec<DVertex> = sorted.iter().copied().filter(|&v| v != h).collect();
            complements.push((
                d.name(x),
                cm.complements(&rest)?.len(),
                hm.complements(&rest_h)?.len(),
            ));
        }
    }
    Ok(LocaliseReport {
        m,
        slice: prep.slice,
        object: cm.names(&prep.object),
        at: d.name(prep.at),
        h_prime: pd.h_prime.to_spec(),
        image: hm.names(&sorted),
        image_summands: sorted.len(),
        in_domain,
        m_rigid,
        maximal,
        complements,
        image_vertices: sorted,
        model: Some(cm.clone()),
        at_vertex: Some(prep.at),
        pairs,
        h_model: Some(hm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::Window;

    fn setup(name: &str, m: usize) -> Arc<ClusterModel> {
        Arc::new(ClusterModel::new(&Quiver::preset(name).unwrap(), m).unwrap())
    }

    #[test]
    fn a2_perpendicular() {
        let c = setup("A2", 1);
        let d = c.derived();
        let v = |s: &str| d.parse_name(s).unwrap();
        let pd = PerpendicularData::new(d, c.mesh(), v("11")).unwrap();
        assert_eq!(pd.u_members, vec![v("01").module]);
        assert_eq!(pd.h_prime.n(), 1);
        let pd = PerpendicularData::new(d, c.mesh(), v("10")).unwrap();
        assert_eq!(pd.u_members, vec![v("11").module]);
        assert!(!pd.is_in_d0(v("10")));
    }

    #[test]
    fn a3_perpendicular_sizes() {
        let c = setup("A3", 1);
        let d = c.derived();
        for x in 0..d.ar().len() {
            let pd = PerpendicularData::new(d, c.mesh(), DVertex::new(x, 0)).unwrap();
            assert_eq!(pd.h_prime.n(), 2);
            for u in d.window_vertices() {
                assert_eq!(pd.is_in_d0(u), is_in_d0_by_scan(d, pd.at, u));
            }
        }
    }

    #[test]
    fn a2_projection() {
        let c = setup("A2", 1);
        let d = c.derived();
        let v = |s: &str| d.parse_name(s).unwrap();
        let pd = PerpendicularData::new(d, c.mesh(), v("11")).unwrap();
        let img = project_vertex(d, &pd, v("10")).unwrap();
        assert_eq!(img, DObject::from_vertices([v("01[1]")]));
        assert!(project_vertex(d, &pd, v("11[2]")).unwrap().is_zero());
        assert_eq!(
            project_vertex(d, &pd, v("01")).unwrap(),
            DObject::from_vertices([v("01")])
        );
        let tri = approximation_triangle(c.mesh(), &pd, v("10")).unwrap();
        assert_eq!(tri.approx_source, DObject::from_vertices([v("11")]));
        assert_eq!(
            find_left_replacement(d, &pd, v("01[1]"), 1).unwrap(),
            vec![v("10")]
        );
        assert!(find_left_replacement(d, &pd, v("01"), 5).is_err());
    }

    #[test]
    fn fingerprint_holds() {
        for name in ["A3", "A4", "D4"] {
            let c = setup(name, 2);
            let d = c.derived();
            for x in 0..d.ar().len() {
                let pd = PerpendicularData::new(d, c.mesh(), DVertex::new(x, 1)).unwrap();
                for w in d
                    .window_vertices()
                    .into_iter()
                    .filter(|w| (0..=2).contains(&w.shift))
                {
                    let y = project_vertex(d, &pd, w).unwrap();
                    for u in pd.members_between(-1, 5) {
                        let lhs: u32 = y.summands().map(|(v, r)| r * d.hom_raw(v, u)).sum();
                        assert_eq!(lhs, d.hom_raw(w, u));
                    }
                    assert!(y.indecomposables().all(|v| pd.is_in_d0(v)));
                }
            }
        }
    }

    #[test]
    fn tau_commutes_with_projection() {
        let c = setup("A4", 1);
        let d = c.derived();
        for x in 0..d.ar().len() {
            let pd = PerpendicularData::new(d, c.mesh(), DVertex::new(x, 0)).unwrap();
            let hd = DerivedModel::new(pd.h_ar().clone(), Window::for_m(1));
            for &u in &pd.u_members {
                let u = DVertex::new(u, 0);
                let lhs = project_vertex(d, &pd, d.tau_inverse_raw(u)).unwrap();
                let lhs = lhs.as_indecomposable().unwrap();
                let rhs = hd.tau_inverse_raw(pd.to_h_prime(u).unwrap());
                assert_eq!(pd.to_h_prime(lhs).unwrap(), rhs);
            }
        }
    }

    #[test]
    fn localise_a2_example() {
        let models = Models::new();
        let c = setup("A2", 1);
        let v = |s: &str| c.derived().parse_name(s).unwrap();
        let r = localise_object(&c, &[v("01"), v("11")], v("11"), &models).unwrap();
        assert_eq!(r.image, vec!["1[0]"]);
        assert!(r.passed());
    }

    #[test]
    fn localise_sweep_a3() {
        let models = Models::new();
        for m in 1..=2 {
            let c = setup("A3", m);
            for t in c.maximal_m_rigid(None).unwrap() {
                for &at in &t.summands {
                    let r = localise_object(&c, &t.summands, at, &models).unwrap();
                    assert!(r.passed(), "{r:?}");
                    assert_eq!(r.image_summands, 2);
                }
            }
        }
    }
}
