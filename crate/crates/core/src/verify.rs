//! Exhaustive verification suites and the report they produce.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{maximal_cliques_brute_force, ClusterModel, MRigidObject, Models};
use crate::derived::{hom_orbit, orbit_terms, DVertex, Window};
use crate::endo::verify_factor_theorem;
use crate::localise::localise_object;
use crate::quiver::{euler_form, Quiver, QuiverSpec};
use crate::{Error, Result};

/// Number of `m`-clusters, `∏ᵢ (mh + eᵢ + 1)/(eᵢ + 1)` per component.
pub fn fuss_catalan(q: &Quiver, m: usize) -> u128 {
    q.components()
        .iter()
        .map(|t| {
            let h = t.coxeter_number() as u128;
            let (mut num, mut den) = (1u128, 1u128);
            for e in t.exponents() {
                num *= m as u128 * h + e as u128 + 1;
                den *= e as u128 + 1;
            }
            num / den
        })
        .product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, checked: usize) -> Self {
        let details = match failures.first() {
            None => format!("{checked} cases"),
            Some(first) => format!("{} of {checked} cases fail; first: {first}", failures.len()),
        };
        Self {
            name: name.to_owned(),
            passed: failures.is_empty(),
            details,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Capped,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub maximal_m_rigid: usize,
    pub fuss_catalan: u128,
    /// Summand count → number of maximal objects.
    pub summand_sizes: BTreeMap<usize, usize>,
    /// Complement count → number of almost complete objects.
    pub complements: BTreeMap<usize, usize>,
    pub tilting_modules: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub quiver: String,
    pub spec: QuiverSpec,
    pub m: usize,
    pub status: Status,
    pub checks: Vec<Check>,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Derived invariants, cluster theorems, localisation and factor sweeps.
    All,
    /// Derived invariants and cluster theorems.
    Cluster,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub scope: Scope,
    pub window: Option<Window>,
    pub max_cliques: Option<usize>,
    /// Graphs up to this many nodes are also enumerated by brute force.
    pub brute_force_limit: usize,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            scope: Scope::All,
            window: None,
            max_cliques: Some(100_000),
            brute_force_limit: 20,
            timings: false,
        }
    }
}

pub fn run_verify_all(
    name: &str,
    q: &Quiver,
    m: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let window = opts.window.unwrap_or_else(|| Window::for_m(m));
    let model = Arc::new(ClusterModel::with_window(q, m, window)?);
    let models = Models::new();
    models.insert(model.clone());

    let mut checks = derived_invariants(&model);
    let mut counts = Counts {
        fuss_catalan: fuss_catalan(q, m),
        ..Counts::default()
    };
    let status = match model.maximal_m_rigid(opts.max_cliques) {
        Err(Error::CapExceeded(cap)) => {
            checks.push(Check {
                name: "enumeration".into(),
                passed: false,
                details: format!("more than {cap} maximal m-rigid objects; raise --max-cliques"),
            });
            Status::Capped
        }
        Err(e) => return Err(e),
        Ok(objects) => {
            checks.extend(cluster_theorems(&model, &objects, opts, &mut counts));
            if opts.scope == Scope::All {
                checks.push(localisation_sweep(&model, &objects, &models));
                checks.push(factor_sweep(&model, &objects, &models));
            }
            if checks.iter().all(|c| c.passed) {
                Status::Pass
            } else {
                Status::Fail
            }
        }
    };
    Ok(VerificationReport {
        quiver: name.to_owned(),
        spec: q.to_spec(),
        m,
        status,
        checks,
        counts,
        elapsed_ms: opts.timings.then(|| start.elapsed().as_millis()),
    })
}

/// Numerical invariants of `D^b(H)` over all pairs of window vertices, and of
/// the `G`-orbit sums over the fundamental domain.
pub fn derived_invariants(model: &ClusterModel) -> Vec<Check> {
    let ar = model.ar();
    let d = model.derived();
    let q = ar.quiver();
    let modules = 0..ar.len();
    let window = d.window_vertices();
    let m = model.m();
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    for x in modules.clone() {
        for y in modules.clone() {
            let lhs = ar.hom(x, y) as i64 - ar.ext1(x, y) as i64;
            let rhs = euler_form(q, &ar.vertex(x).dim, &ar.vertex(y).dim).unwrap_or(i64::MIN);
            if lhs != rhs {
                fails.push(format!("{} {}", ar.vertex(x).dim, ar.vertex(y).dim));
            }
        }
    }
    checks.push(Check::new("euler-form", fails, ar.len() * ar.len()));

    let fails: Vec<String> = window
        .par_iter()
        .flat_map_iter(|&x| {
            let tx = d.tau_raw(x);
            window
                .iter()
                .filter(move |&&y| d.hom_raw(x, y.shifted(1)) != d.hom_raw(y, tx))
                .map(move |&y| format!("{} {}", d.name(x), d.name(y)))
        })
        .collect();
    checks.push(Check::new(
        "serre-duality",
        fails,
        window.len() * window.len(),
    ));

    let fails: Vec<String> = modules
        .clone()
        .filter(|&x| ar.hom(x, x) != 1 || ar.ext1(x, x) != 0)
        .map(|x| ar.vertex(x).dim.to_string())
        .collect();
    checks.push(Check::new("bricks", fails, ar.len()));

    let fails: Vec<String> = ar
        .meshes()
        .iter()
        .filter(|mesh| {
            (0..q.n()).any(|i| {
                let mid: u32 = mesh.middles.iter().map(|&v| ar.vertex(v).dim.0[i]).sum();
                ar.vertex(mesh.start).dim.0[i] + ar.vertex(mesh.end).dim.0[i] != mid
            })
        })
        .map(|mesh| ar.vertex(mesh.end).dim.to_string())
        .collect();
    checks.push(Check::new("mesh-additivity", fails, ar.meshes().len()));

    let mesh = model.mesh();
    let sources: Vec<DVertex> = modules.clone().map(|x| DVertex::new(x, 0)).collect();
    let fails: Vec<String> = sources
        .par_iter()
        .flat_map_iter(|&x| {
            let w = &window;
            w.iter().filter_map(move |&y| match mesh.hom_dim(x, y) {
                Ok(k) if k == d.hom_raw(x, y) as usize => None,
                Ok(k) => Some(format!("{} {}: {k}", d.name(x), d.name(y))),
                Err(e) => Some(e.to_string()),
            })
        })
        .collect();
    checks.push(Check::new(
        "mesh-basis-hammock",
        fails,
        sources.len() * window.len(),
    ));

    let fd = &model.domain().vertices;
    let fails: Vec<String> = fd
        .par_iter()
        .flat_map_iter(|&x| {
            fd.iter().filter_map(move |&y| {
                let t = orbit_terms(d, x, y, 0, m);
                (t[0] + t[1] + t[4] != 0).then(|| format!("{} {}: {t:?}", d.name(x), d.name(y)))
            })
        })
        .collect();
    checks.push(Check::new("orbit-vanishing", fails, fd.len() * fd.len()));

    let mut fails = Vec::new();
    for &x in fd {
        for &y in fd {
            for k in 1..=m {
                let a = hom_orbit(d, x, y, k, m);
                let b = hom_orbit(d, y, x, m + 1 - k, m);
                if a.is_err() || a != b {
                    fails.push(format!("{} {} k={k}", d.name(x), d.name(y)));
                }
            }
        }
    }
    checks.push(Check::new(
        "calabi-yau-symmetry",
        fails,
        fd.len() * fd.len() * m,
    ));

    let g = model.graph();
    let fails: Vec<String> = (0..g.len())
        .filter(|&i| !g.self_rigid[i])
        .map(|i| d.name(g.nodes[i]))
        .collect();
    checks.push(Check::new("self-rigid", fails, g.len()));
    checks
}

fn cluster_theorems(
    model: &ClusterModel,
    objects: &[MRigidObject],
    opts: &VerifyOptions,
    counts: &mut Counts,
) -> Vec<Check> {
    let n = model.n();
    let m = model.m();
    let d = model.derived();
    let names = |t: &[DVertex]| model.names(t).join(",");
    let mut checks = Vec::new();
    counts.maximal_m_rigid = objects.len();
    for t in objects {
        *counts.summand_sizes.entry(t.summands.len()).or_default() += 1;
    }

    let fails = objects
        .iter()
        .filter(|t| t.summands.len() != n)
        .map(|t| names(&t.summands))
        .collect();
    checks.push(Check::new("n-summands", fails, objects.len()));

    let results: Vec<(usize, Option<String>)> = objects
        .par_iter()
        .flat_map_iter(|t| {
            (0..t.summands.len()).map(move |drop| {
                let rest: Vec<DVertex> = t
                    .summands
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, v)| *v)
                    .collect();
                match model.complements(&rest) {
                    Ok(c) if c.len() == m + 1 => (c.len(), None),
                    Ok(c) => (c.len(), Some(format!("{}: {}", names(&rest), c.len()))),
                    Err(e) => (0, Some(e.to_string())),
                }
            })
        })
        .collect();
    for (c, _) in &results {
        *counts.complements.entry(*c).or_default() += 1;
    }
    let total = results.len();
    let fails = results.into_iter().filter_map(|r| r.1).collect();
    checks.push(Check::new("m+1-complements", fails, total));

    // An m-cluster tilting object admits no extension at all, so it is a
    // maximal clique; the two sets agree iff every maximal clique is tilting.
    let fails = objects
        .iter()
        .filter(|t| !model.is_m_cluster_tilting(&t.summands).unwrap_or(false))
        .map(|t| names(&t.summands))
        .collect();
    checks.push(Check::new(
        "maximal-equals-cluster-tilting",
        fails,
        objects.len(),
    ));

    let expected = counts.fuss_catalan;
    let fails = if objects.len() as u128 == expected {
        Vec::new()
    } else {
        vec![format!(
            "{} objects, formula gives {expected}",
            objects.len()
        )]
    };
    checks.push(Check::new("fuss-catalan", fails, 1));

    let g = model.graph();
    if g.len() <= opts.brute_force_limit {
        let bf = maximal_cliques_brute_force(&|i, j| g.adjacent(i, j), &g.self_rigid);
        let fails = match g.maximal_cliques(None) {
            Ok(bk) if bk == bf => Vec::new(),
            Ok(bk) => vec![format!(
                "{} cliques, brute force finds {}",
                bk.len(),
                bf.len()
            )],
            Err(e) => vec![e.to_string()],
        };
        checks.push(Check::new("brute-force-oracle", fails, 1));
    }

    let tilting = model.tilting_objects();
    counts.tilting_modules = tilting.len();
    let fails = tilting
        .iter()
        .filter(|t| !model.is_maximal_m_rigid(t).unwrap_or(false))
        .map(|t| names(t))
        .collect();
    checks.push(Check::new("tilting-embeds", fails, tilting.len()));

    let fails = objects
        .iter()
        .filter(|t| t.summands.len() > (m + 1) * n || t.summands.iter().any(|v| !d.in_window(*v)))
        .map(|t| names(&t.summands))
        .collect();
    checks.push(Check::new("summand-bound", fails, objects.len()));
    checks
}

fn pairs(objects: &[MRigidObject]) -> Vec<(&MRigidObject, DVertex)> {
    objects
        .iter()
        .flat_map(|t| t.summands.iter().map(move |&v| (t, v)))
        .collect()
}

pub fn localisation_sweep(
    model: &Arc<ClusterModel>,
    objects: &[MRigidObject],
    models: &Models,
) -> Check {
    let work = pairs(objects);
    let n = model.n();
    let fails: Vec<String> = work
        .par_iter()
        .filter_map(|(t, at)| {
            let label = || {
                format!(
                    "{} at {}",
                    model.names(&t.summands).join(","),
                    model.name(*at)
                )
            };
            match localise_object(model, &t.summands, *at, models) {
                Ok(r) if r.passed() && r.image_summands + 1 == n => None,
                Ok(r) => Some(format!("{}: image {:?}", label(), r.image)),
                Err(e) => Some(format!("{}: {e}", label())),
            }
        })
        .collect();
    Check::new("localisation", fails, work.len())
}

pub fn factor_sweep(model: &Arc<ClusterModel>, objects: &[MRigidObject], models: &Models) -> Check {
    let work = pairs(objects);
    let fails: Vec<String> = work
        .par_iter()
        .filter_map(|(t, at)| {
            let label = || {
                format!(
                    "{} at {}",
                    model.names(&t.summands).join(","),
                    model.name(*at)
                )
            };
            match verify_factor_theorem(model, &t.summands, *at, models) {
                Ok(r) if r.passed() => None,
                Ok(r) => Some(format!(
                    "{}: {:?} vs {:?}",
                    label(),
                    r.factor.dims,
                    r.localised.hom_dims
                )),
                Err(e) => Some(format!("{}: {e}", label())),
            }
        })
        .collect();
    Check::new("factor-theorem", fails, work.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_fixtures() {
        let fc = |name: &str, m| fuss_catalan(&Quiver::preset(name).unwrap(), m);
        assert_eq!(fc("A2", 1), 5);
        assert_eq!(fc("A2", 2), 12);
        assert_eq!(fc("A2", 3), 22);
        assert_eq!(fc("A3", 1), 14);
        assert_eq!(fc("A3", 2), 55);
        assert_eq!(fc("D4", 1), 50);
        assert_eq!(fc("A4", 3), 969);
        assert_eq!(fc("D4", 2), 336);
    }

    #[test]
    fn verify_a2() {
        let q = Quiver::preset("A2").unwrap();
        let r = run_verify_all("A2", &q, 1, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.counts.maximal_m_rigid, 5);
        assert_eq!(r.counts.summand_sizes, BTreeMap::from([(2, 5)]));
        assert_eq!(r.counts.complements, BTreeMap::from([(2, 10)]));
        assert!(r.elapsed_ms.is_none());
    }

    #[test]
    fn cap_is_reported() {
        let q = Quiver::preset("A3").unwrap();
        let opts = VerifyOptions {
            max_cliques: Some(2),
            ..VerifyOptions::default()
        };
        let r = run_verify_all("A3", &q, 1, &opts).unwrap();
        assert_eq!(r.status, Status::Capped);
    }
}
