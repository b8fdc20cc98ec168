use std::sync::Arc;

use mcluster::cluster::{ClusterModel, Models};
use mcluster::derived::DObject;
use mcluster::endo::endo_dims;
use mcluster::localise::{
    approximation_triangle, find_left_replacement, project_vertex, PerpendicularData,
};
use mcluster::quiver::Quiver;

fn model(name: &str, m: usize) -> Arc<ClusterModel> {
    Arc::new(ClusterModel::new(&Quiver::preset(name).unwrap(), m).unwrap())
}

#[test]
fn left_replacements_exist_a3() {
    let c = model("A3", 1);
    let d = c.derived();
    let mut found = 0;
    for t in c.maximal_m_rigid(None).unwrap() {
        for &at in t.summands.iter().filter(|v| v.shift < 1) {
            let pd = PerpendicularData::new(d, c.mesh(), at).unwrap();
            for &x in t.summands.iter().filter(|&&x| x != at) {
                let y = project_vertex(d, &pd, x)
                    .unwrap()
                    .as_indecomposable()
                    .unwrap();
                for i in -3..=3 {
                    if d.hom_raw(y, at.shifted(i)) == 0 {
                        continue;
                    }
                    let xs = find_left_replacement(d, &pd, y, i).unwrap();
                    for r in &xs {
                        assert!(!pd.is_in_d0(*r));
                        assert_eq!(
                            project_vertex(d, &pd, *r).unwrap(),
                            DObject::from_vertices([y])
                        );
                    }
                    found += xs.len();
                }
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn approximation_postconditions_a3() {
    for m in 1..=2 {
        let c = model("A3", m);
        let d = c.derived();
        for t in c.maximal_m_rigid(None).unwrap() {
            for &at in t.summands.iter().filter(|v| v.shift < m as i32) {
                let pd = PerpendicularData::new(d, c.mesh(), at).unwrap();
                for &x in t.summands.iter().filter(|&&x| x != at) {
                    let tri = approximation_triangle(c.mesh(), &pd, x).unwrap();
                    let cone = tri.cone.unwrap();
                    assert!(cone.indecomposables().all(|v| pd.is_in_d0(v)));
                    if pd.is_in_d0(x) {
                        assert!(tri.approx_source.is_zero());
                        assert_eq!(cone, DObject::from_vertices([x]));
                    }
                }
            }
        }
    }
}

#[test]
fn endo_algebras_are_consistent() {
    let models = Models::new();
    for (name, m) in [("A2", 1), ("A3", 2), ("D4", 1)] {
        let c = models.get(&Quiver::preset(name).unwrap(), m).unwrap();
        for t in c.maximal_m_rigid(None).unwrap() {
            let e = endo_dims(&c, &t.summands).unwrap();
            let k = t.summands.len();
            assert_eq!(e.total_dim, e.hom_dims.iter().flatten().sum::<usize>());
            for a in 0..k {
                assert_eq!(e.hom_dims[a][a], 1);
                for b in 0..k {
                    let rad = e.hom_dims[a][b] - usize::from(a == b);
                    assert_eq!(e.arrows[a][b] + e.rad_sq_dims[a][b], rad);
                }
            }
        }
    }
}
