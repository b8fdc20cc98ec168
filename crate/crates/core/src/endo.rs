//! Endomorphism algebras of `m`-rigid objects of `C^m_H`.
//!
//! For `a, b` in the fundamental domain of an `m`-rigid object,
//! `Hom_C(a, b) = Hom_D(a, b) ⊕ Hom_D(a, Gb)`. With `f = (f₀, f₁)` and
//! `g = (g₀, g₁)` the composite is
//! `g ∘ f = (g₀f₀, g₁f₀ + G(g₀)f₁)`; the term `G(g₁)f₁ ∈ Hom_D(a, G²c)` lies in
//! a space that is checked to vanish.

use std::sync::Arc;

use serde::Serialize;

use crate::cluster::{ClusterModel, Models};
use crate::derived::{orbit_terms, DObject, DVertex};
use crate::linalg::{Echelon, Scalar};
use crate::localise::{localise_object, project_to_d0, PerpendicularData};
use crate::mesh::{HomBasis, Morphism};
use crate::{Error, Result};

/// Bases of the two components of `Hom_C(a, b)`.
struct CHom {
    d0: HomBasis,
    d1: HomBasis,
}

impl CHom {
    fn dim(&self) -> usize {
        self.d0.len() + self.d1.len()
    }
}

/// An element of `Hom_C(a, b)` as its two components.
#[derive(Clone, Debug)]
struct CMorphism {
    c0: Morphism,
    c1: Morphism,
}

impl CMorphism {
    fn coords(&self) -> Vec<Scalar> {
        self.c0
            .coeffs
            .iter()
            .chain(&self.c1.coeffs)
            .copied()
            .collect()
    }
}

/// Hom spaces and composition among the summands of an object of `C^m_H`.
pub struct CAlgebra<'a> {
    model: &'a ClusterModel,
    pub summands: Vec<DVertex>,
    homs: Vec<Vec<CHom>>,
}

impl<'a> CAlgebra<'a> {
    pub fn new(model: &'a ClusterModel, summands: &[DVertex]) -> Result<Self> {
        let d = model.derived();
        let mesh = model.mesh();
        let m = model.m();
        let mut homs = Vec::with_capacity(summands.len());
        for &a in summands {
            let mut row = Vec::with_capacity(summands.len());
            for &b in summands {
                let terms = orbit_terms(d, a, b, 0, m);
                // Only t = 0, 1 may contribute; t = 2 is Hom(a, G²b).
                if terms[0] + terms[1] + terms[4] != 0 {
                    return Err(Error::Inconsistent(format!(
                        "Hom_C({}, {}) has G-orbit terms outside t = 0, 1",
                        d.name(a),
                        d.name(b)
                    )));
                }
                let gb = d.g_raw(b, 1, m);
                row.push(CHom {
                    d0: mesh.hom_basis_raw(a, b)?,
                    d1: mesh.hom_basis_raw(a, gb)?,
                });
            }
            homs.push(row);
        }
        for (i, &a) in summands.iter().enumerate() {
            if homs[i][i].d0.len() != 1 {
                return Err(Error::Inconsistent(format!("{} is not a brick", d.name(a))));
            }
        }
        Ok(Self {
            model,
            summands: summands.to_vec(),
            homs,
        })
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.homs[a][b].dim()
    }

    fn basis(&self, a: usize, b: usize) -> Result<Vec<CMorphism>> {
        let h = &self.homs[a][b];
        let mesh = self.model.mesh();
        let z0 = mesh.zero(h.d0.source, h.d0.target)?;
        let z1 = mesh.zero(h.d1.source, h.d1.target)?;
        let mut out = Vec::with_capacity(h.dim());
        for f in h.d0.elements() {
            out.push(CMorphism {
                c0: f,
                c1: z1.clone(),
            });
        }
        for f in h.d1.elements() {
            out.push(CMorphism {
                c0: z0.clone(),
                c1: f,
            });
        }
        Ok(out)
    }

    /// Basis of the radical: everything off the diagonal, the `Hom(a, Ga)`
    /// part on it.
    fn radical(&self, a: usize, b: usize) -> Result<Vec<CMorphism>> {
        let basis = self.basis(a, b)?;
        if a == b {
            Ok(basis.into_iter().skip(1).collect())
        } else {
            Ok(basis)
        }
    }

    fn compose(&self, f: &CMorphism, g: &CMorphism) -> Result<CMorphism> {
        let mesh = self.model.mesh();
        let m = self.model.m();
        let c0 = mesh.compose(&f.c0, &g.c0)?;
        let mut c1 = mesh.compose(&f.c0, &g.c1)?;
        if !f.c1.is_zero() && !g.c0.is_zero() {
            let gg0 = mesh.g_twist(&g.c0, 1, m)?;
            c1.scaled_add(Scalar::from_integer(1), &mesh.compose(&f.c1, &gg0)?);
        }
        Ok(CMorphism { c0, c1 })
    }

    /// Span of `g ∘ f` with `f` from `left(a, c)` and `g` from `right(c, b)`
    /// for `c` in `via`.
    fn products<L, R>(
        &self,
        a: usize,
        b: usize,
        via: &[usize],
        left: L,
        right: R,
        ech: &mut Echelon,
    ) -> Result<()>
    where
        L: Fn(usize, usize) -> Result<Vec<CMorphism>>,
        R: Fn(usize, usize) -> Result<Vec<CMorphism>>,
    {
        for &c in via {
            let fs = left(a, c)?;
            if fs.is_empty() {
                continue;
            }
            for g in right(c, b)? {
                for f in &fs {
                    ech.insert(&self.compose(f, &g)?.coords());
                }
            }
        }
        Ok(())
    }

    fn rad_sq(&self, a: usize, b: usize) -> Result<Echelon> {
        let mut ech = Echelon::new(self.hom_dim(a, b));
        let all: Vec<usize> = (0..self.len()).collect();
        self.products(
            a,
            b,
            &all,
            |x, y| self.radical(x, y),
            |x, y| self.radical(x, y),
            &mut ech,
        )?;
        Ok(ech)
    }

    /// `e_b Γ e Γ e_a`: maps `a → b` factoring through the summand `at`.
    fn ideal(&self, a: usize, b: usize, at: usize, ech: &mut Echelon) -> Result<()> {
        self.products(
            a,
            b,
            &[at],
            |x, y| self.basis(x, y),
            |x, y| self.basis(x, y),
            ech,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoAlgebraData {
    pub object: Vec<String>,
    pub hom_dims: Vec<Vec<usize>>,
    pub rad_sq_dims: Vec<Vec<usize>>,
    /// Arrows `a → b` of the Gabriel quiver, as `dim rad/rad²` of `Hom(a, b)`.
    pub arrows: Vec<Vec<usize>>,
    pub total_dim: usize,
}

pub fn endo_dims(model: &ClusterModel, t: &[DVertex]) -> Result<EndoAlgebraData> {
    if !model.is_m_rigid(t)? {
        return Err(Error::Precondition("the object is not m-rigid".into()));
    }
    let alg = CAlgebra::new(model, t)?;
    let k = alg.len();
    let mut hom_dims = vec![vec![0; k]; k];
    let mut rad_sq_dims = vec![vec![0; k]; k];
    let mut arrows = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let h = alg.hom_dim(a, b);
            let r2 = alg.rad_sq(a, b)?.rank();
            let rad = h - usize::from(a == b);
            hom_dims[a][b] = h;
            rad_sq_dims[a][b] = r2;
            arrows[a][b] = rad
                .checked_sub(r2)
                .ok_or_else(|| Error::Inconsistent("rad² exceeds rad".into()))?;
        }
    }
    Ok(EndoAlgebraData {
        object: model.names(t),
        total_dim: hom_dims.iter().flatten().sum(),
        hom_dims,
        rad_sq_dims,
        arrows,
    })
}

/// `Γ/ΓeΓ` for the idempotent `e` of the summand `at`, on the other summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorData {
    pub rest: Vec<String>,
    /// `dim Hom_C(a, b)` modulo maps factoring through `at`, from composites in `C`.
    pub dims: Vec<Vec<usize>>,
    /// The same computed in `D` by factoring through the `G`-orbit of `at`.
    pub dims_in_d: Vec<Vec<usize>>,
    /// As `dims_in_d`, factoring through the `G`-orbit and all shifts `at[j]`.
    pub dims_in_d_all_shifts: Vec<Vec<usize>>,
    /// Gabriel quiver of `Γ/ΓeΓ`.
    pub arrows: Vec<Vec<usize>>,
    pub ideal_dims: Vec<Vec<usize>>,
}

pub fn factor_dims(model: &ClusterModel, t: &[DVertex], at: DVertex) -> Result<FactorData> {
    if !model.is_m_rigid(t)? {
        return Err(Error::Precondition("the object is not m-rigid".into()));
    }
    let e = t
        .iter()
        .position(|&v| v == at)
        .ok_or_else(|| Error::Precondition(format!("{} is not a summand", model.name(at))))?;
    let alg = CAlgebra::new(model, t)?;
    let d = model.derived();
    let mesh = model.mesh();
    let m = model.m();
    let rest: Vec<usize> = (0..t.len()).filter(|&i| i != e).collect();
    let orbit: Vec<DVertex> = (-2..=2).map(|s| d.g_raw(at, s, m)).collect();
    let reach = m as i32 + 2;
    let shifts: Vec<DVertex> = orbit
        .iter()
        .copied()
        .chain((-reach..=reach).map(|j| at.shifted(j)))
        .collect();
    let k = rest.len();
    let mut out = FactorData {
        rest: rest.iter().map(|&i| model.name(t[i])).collect(),
        dims: vec![vec![0; k]; k],
        dims_in_d: vec![vec![0; k]; k],
        dims_in_d_all_shifts: vec![vec![0; k]; k],
        arrows: vec![vec![0; k]; k],
        ideal_dims: vec![vec![0; k]; k],
    };
    for (i, &a) in rest.iter().enumerate() {
        for (j, &b) in rest.iter().enumerate() {
            let h = alg.hom_dim(a, b);
            let mut ideal = Echelon::new(h);
            alg.ideal(a, b, e, &mut ideal)?;
            out.ideal_dims[i][j] = ideal.rank();
            out.dims[i][j] = h - ideal.rank();

            let mut both = alg.rad_sq(a, b)?;
            alg.ideal(a, b, e, &mut both)?;
            let rad = h - usize::from(a == b);
            out.arrows[i][j] = rad
                .checked_sub(both.rank())
                .ok_or_else(|| Error::Inconsistent("rad² + ΓeΓ exceeds rad".into()))?;

            let (ta, tb) = (t[a], t[b]);
            let gtb = d.g_raw(tb, 1, m);
            let quotient = |through: &[DVertex]| -> Result<usize> {
                Ok(mesh.hom_dim(ta, tb)? - mesh.factoring_dim(ta, tb, through)?
                    + mesh.hom_dim(ta, gtb)?
                    - mesh.factoring_dim(ta, gtb, through)?)
            };
            out.dims_in_d[i][j] = quotient(&orbit)?;
            out.dims_in_d_all_shifts[i][j] = quotient(&shifts)?;
        }
    }
    Ok(out)
}

/// Both sides of `Γ/ΓeΓ ≃ End_{C_{H′}}(T̂)` at the level of dimensions and
/// Gabriel quivers.
#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub m: usize,
    pub object: Vec<String>,
    pub at: String,
    pub endo: EndoAlgebraData,
    pub factor: FactorData,
    /// `End` of the localised object over `H′`, rows ordered as `factor.rest`.
    pub localised: EndoAlgebraData,
    /// `dim Hom_D(Y_a, Y_b) + dim Hom_D(Y_a, L_M(G Y_b))` with `Y = L_M(T)`.
    pub localised_in_d: Vec<Vec<usize>>,
    pub dims_agree: bool,
    pub arrows_agree: bool,
}

impl FactorReport {
    pub fn passed(&self) -> bool {
        self.dims_agree && self.arrows_agree
    }
}

pub fn verify_factor_theorem(
    model: &Arc<ClusterModel>,
    t: &[DVertex],
    at: DVertex,
    models: &Models,
) -> Result<FactorReport> {
    let loc = localise_object(model, t, at, models)?;
    let cm = loc.model.clone().expect("localised model");
    let hm = loc.h_model.clone().expect("H' model");
    let at = loc.at_vertex.expect("localised summand");
    let mut object: Vec<DVertex> = loc.pairs.iter().map(|p| p.0).collect();
    object.push(at);
    object.sort();
    let endo = endo_dims(&cm, &object)?;
    let factor = factor_dims(&cm, &object, at)?;
    let rest: Vec<DVertex> = object.iter().copied().filter(|&v| v != at).collect();
    let image: Vec<DVertex> = rest
        .iter()
        .map(|x| loc.pairs.iter().find(|p| p.0 == *x).expect("paired").1)
        .collect();
    let localised = endo_dims(&hm, &image)?;

    let d = cm.derived();
    let pd = PerpendicularData::new(d, cm.mesh(), at)?;
    let m = cm.m();
    let ys: Vec<DVertex> = rest
        .iter()
        .map(|&x| {
            project_to_d0(d, &pd, &DObject::from_vertices([x]))?
                .as_indecomposable()
                .ok_or_else(|| Error::Inconsistent("image is decomposable".into()))
        })
        .collect::<Result<_>>()?;
    let mut localised_in_d = vec![vec![0; ys.len()]; ys.len()];
    for (i, &ya) in ys.iter().enumerate() {
        for (j, &yb) in ys.iter().enumerate() {
            let gy = project_to_d0(d, &pd, &DObject::from_vertices([d.g_raw(yb, 1, m)]))?;
            let twisted: u32 = gy.summands().map(|(v, r)| r * d.hom_raw(ya, v)).sum();
            localised_in_d[i][j] = (d.hom_raw(ya, yb) + twisted) as usize;
        }
    }

    let dims_agree = factor.dims == factor.dims_in_d
        && factor.dims == factor.dims_in_d_all_shifts
        && factor.dims == localised.hom_dims
        && factor.dims == localised_in_d;
    let arrows_agree = factor.arrows == localised.arrows;
    Ok(FactorReport {
        m,
        object: cm.names(&object),
        at: cm.name(at),
        endo,
        factor,
        localised,
        localised_in_d,
        dims_agree,
        arrows_agree,
    })
}
