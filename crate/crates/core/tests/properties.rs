use std::sync::Arc;

use proptest::prelude::*;

use mcluster::cluster::{maximal_cliques_brute_force, normalize_to_dminus, ClusterModel, Models};
use mcluster::derived::{hom_orbit, DObject, DVertex};
use mcluster::linalg::Scalar;
use mcluster::localise::{localise_object, project_to_d0, project_vertex, PerpendicularData};
use mcluster::mesh::Morphism;
use mcluster::quiver::Quiver;

fn quiver(name: &str, orientation: usize) -> Quiver {
    let all = Quiver::preset(name).unwrap().orientations();
    all[orientation % all.len()].clone()
}

fn model(name: &str, orientation: usize, m: usize) -> Arc<ClusterModel> {
    Arc::new(ClusterModel::new(&quiver(name, orientation), m).unwrap())
}

fn small_types() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A2", "A3", "A4", "D4"])
}

fn combination(basis: &[Morphism], coeffs: &[i64]) -> Option<Morphism> {
    let mut out = basis.first()?.clone();
    out.coeffs
        .iter_mut()
        .for_each(|c| *c = Scalar::from_integer(0));
    for (b, &c) in basis.iter().zip(coeffs.iter().cycle()) {
        out.scaled_add(Scalar::from_integer(c), b);
    }
    Some(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(name in small_types(), o in 0usize..8, picks in prop::collection::vec(0usize..1000, 4), coeffs in prop::collection::vec(-3i64..4, 6)) {
        let c = model(name, o, 1);
        let d = c.derived();
        let mesh = c.mesh();
        let w: Vec<DVertex> = d.window_vertices().into_iter().filter(|v| (0..=2).contains(&v.shift)).collect();
        let mut v: Vec<DVertex> = picks.iter().map(|&p| w[p % w.len()]).collect();
        v.sort();
        let f = combination(&mesh.hom_basis(v[0], v[1]).unwrap().elements(), &coeffs);
        let g = combination(&mesh.hom_basis(v[1], v[2]).unwrap().elements(), &coeffs[2..]);
        let h = combination(&mesh.hom_basis(v[2], v[3]).unwrap().elements(), &coeffs[4..]);
        if let (Some(f), Some(g), Some(h)) = (f, g, h) {
            let left = mesh.compose(&mesh.compose(&f, &g).unwrap(), &h).unwrap();
            let right = mesh.compose(&f, &mesh.compose(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn mesh_dims_match_hammocks_on_every_orientation(name in small_types(), o in 0usize..8) {
        let c = model(name, o, 1);
        let d = c.derived();
        for x in 0..d.ar().len() {
            let x = DVertex::new(x, 0);
            for y in d.window_vertices() {
                prop_assert_eq!(c.mesh().hom_dim(x, y).unwrap(), d.hom_raw(x, y) as usize);
            }
        }
    }

    #[test]
    fn calabi_yau_symmetry(name in small_types(), o in 0usize..8, m in 1usize..4) {
        let c = model(name, o, m);
        let d = c.derived();
        let fd = &c.domain().vertices;
        for &x in fd {
            for &y in fd {
                for k in 1..=m {
                    prop_assert_eq!(hom_orbit(d, x, y, k, m).unwrap(), hom_orbit(d, y, x, m + 1 - k, m).unwrap());
                }
            }
        }
    }

    /// Rigidity computed from mesh-basis dimensions, enumerated by brute force
    /// over subsets, against the clique search on the hammock graph.
    #[test]
    fn clique_search_matches_mesh_brute_force(name in prop::sample::select(vec!["A2", "A3"]), o in 0usize..4, m in 1usize..3) {
        let c = model(name, o, m);
        let d = c.derived();
        let mesh = c.mesh();
        let fd = c.domain().vertices.clone();
        prop_assume!(fd.len() <= 20);
        let ext = |x: DVertex, y: DVertex| -> usize {
            (1..=m as i32)
                .map(|k| (-2..=2).map(|t| mesh.hom_dim(x, d.g_raw(y, t, m).shifted(k)).unwrap()).sum::<usize>())
                .sum()
        };
        let rigid: Vec<bool> = fd.iter().map(|&x| ext(x, x) == 0).collect();
        let adjacent = |i: usize, j: usize| ext(fd[i], fd[j]) == 0 && ext(fd[j], fd[i]) == 0;
        let bf = maximal_cliques_brute_force(&adjacent, &rigid);
        prop_assert_eq!(bf, c.graph().maximal_cliques(None).unwrap());
    }

    #[test]
    fn projection_is_idempotent_and_additive(name in small_types(), o in 0usize..8, at in 0usize..100, k in 0i32..2, picks in prop::collection::vec(0usize..1000, 2)) {
        let c = model(name, o, 2);
        let d = c.derived();
        let at = DVertex::new(at % d.ar().len(), k);
        let pd = PerpendicularData::new(d, c.mesh(), at).unwrap();
        let w: Vec<DVertex> = d.window_vertices().into_iter().filter(|v| (-1..=3).contains(&v.shift)).collect();
        let (a, b) = (w[picks[0] % w.len()], w[picks[1] % w.len()]);
        let pa = project_vertex(d, &pd, a).unwrap();
        let pb = project_vertex(d, &pd, b).unwrap();
        prop_assert_eq!(project_to_d0(d, &pd, &pa).unwrap(), pa.clone());
        let mut sum = pa.clone();
        for (v, r) in pb.summands() {
            sum.add(v, r);
        }
        prop_assert_eq!(project_to_d0(d, &pd, &DObject::from_vertices([a, b])).unwrap(), sum);
        prop_assert!(project_vertex(d, &pd, at.shifted(picks[0] as i32 % 3)).unwrap().is_zero());
    }

    /// A map killed by `L_M` factors through shifts of `M`, so the rank of
    /// `Hom(x, y) → Hom(x, L_M y)` is `hom(x, y)` minus the factoring dimension.
    #[test]
    fn killed_maps_factor_through_m(name in small_types(), o in 0usize..8, at in 0usize..100, picks in prop::collection::vec(0usize..1000, 2)) {
        let c = model(name, o, 1);
        let d = c.derived();
        let mesh = c.mesh();
        let at = DVertex::new(at % d.ar().len(), 0);
        let pd = PerpendicularData::new(d, mesh, at).unwrap();
        let w: Vec<DVertex> = d.window_vertices().into_iter().filter(|v| (0..=2).contains(&v.shift)).collect();
        let (mut x, mut y) = (w[picks[0] % w.len()], w[picks[1] % w.len()]);
        if y < x {
            std::mem::swap(&mut x, &mut y);
        }
        let shifts: Vec<DVertex> = (-3..=3).map(|j| at.shifted(j)).filter(|v| d.in_window(*v)).collect();
        let survives = mesh.hom_dim(x, y).unwrap() - mesh.factoring_dim(x, y, &shifts).unwrap();
        let ly = project_vertex(d, &pd, y).unwrap();
        let target: usize = ly.summands().map(|(v, r)| r as usize * d.hom_raw(x, v) as usize).sum();
        prop_assert!(survives <= target);
        if pd.is_in_d0(y) {
            prop_assert_eq!(survives, mesh.hom_dim(x, y).unwrap());
        }
    }

    #[test]
    fn localisation_on_every_orientation(name in prop::sample::select(vec!["A3", "A4", "D4"]), o in 0usize..8, m in 1usize..3, pick in 0usize..10_000) {
        let models = Models::new();
        let c = model(name, o, m);
        let objects = c.maximal_m_rigid(None).unwrap();
        let t = &objects[pick % objects.len()].summands;
        let at = t[pick % t.len()];
        let r = localise_object(&c, t, at, &models).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        prop_assert_eq!(r.image_summands + 1, c.n());
        let norm = normalize_to_dminus(&c, t, &models).unwrap();
        prop_assert!(norm.object.iter().all(|v| v.shift < m as i32));
        prop_assert!(norm.model.is_maximal_m_rigid(&norm.object).unwrap());
    }
}
