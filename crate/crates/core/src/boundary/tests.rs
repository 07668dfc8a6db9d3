use super::*;
use crate::meshgen::fan;
use crate::striploop::verify_strip;

#[test]
fn mk_counts() {
    assert_eq!(gen_mk(0).unwrap().triangle_count(), 1);
    assert_eq!(gen_mk(1).unwrap().triangle_count(), 4);
    assert_eq!(gen_mk(2).unwrap().triangle_count(), 10);
    for k in 0..=8 {
        let mesh = gen_mk(k).unwrap();
        assert_eq!(mesh.triangle_count(), mk_triangles(k));
        assert_eq!(mesh.vertex_count(), 3 << k);
        assert!(validate(&mesh, ValidationMode::WithBoundary).is_valid());
    }
    assert!(gen_mk(MAX_MK + 1).is_err());
}

#[test]
fn mk_dual_is_a_tree_with_long_path() {
    for k in 1..=6 {
        let mesh = gen_mk(k).unwrap();
        let dual = build_dual(&mesh);
        assert_eq!(dual.edge_count(), mesh.triangle_count() - 1);
        let tree = DualSpanningTree::bfs(&dual.to_graph(), 0).unwrap();
        let spine = spine_path(&tree, balance_edge(&tree).unwrap());
        assert_eq!(spine.len(), 2 * k as usize);
    }
}

#[test]
fn mk2_balance_edge() {
    let mesh = gen_mk(2).unwrap();
    let tree = DualSpanningTree::bfs(&build_dual(&mesh).to_graph(), 0).unwrap();
    let (u, v) = balance_edge(&tree).unwrap();
    let (a, b) = tree.sides(u, v);
    assert_eq!(a.min(b), 3);
    assert_eq!(a + b, 10);
}

#[test]
fn single_and_double_triangle() {
    let one = gen_mk(0).unwrap();
    let r = strip_with_boundary(&one).unwrap();
    assert_eq!(r.order, vec![0]);
    assert_eq!(r.stats.splits, 0);

    let quad = fan(2).unwrap();
    let r = strip_with_boundary(&quad).unwrap();
    assert_eq!(r.order.len(), 2);
    assert_eq!(r.stats.splits, 0);
}

#[test]
fn fan_is_already_a_strip() {
    let mesh = fan(5).unwrap();
    let (r, trace) = strip_with_boundary_traced(&mesh).unwrap();
    assert_eq!(trace.spine.len(), 4);
    assert_eq!(r.mesh.triangle_count(), 5);
    assert_eq!(r.stats.splits, 0);
}

#[test]
fn m1_hand_count() {
    let r = strip_with_boundary(&gen_mk(1).unwrap()).unwrap();
    assert_eq!(r.mesh.triangle_count(), 6);
    assert_eq!(r.stats.spine_length, Some(2));
    assert!(verify_strip(r.mesh.triangles(), &r.order).valid);
}

#[test]
fn mk_strip_sizes() {
    for k in 1..=7u32 {
        let n = mk_triangles(k);
        let r = strip_with_boundary(&gen_mk(k).unwrap()).unwrap();
        assert_eq!(r.mesh.triangle_count(), 3 * n - 2 - 4 * k as usize, "k = {k}");
        assert!(r.stats.is_consistent());
    }
}

#[test]
fn closed_mesh_is_rejected() {
    assert!(matches!(
        strip_with_boundary(&crate::meshgen::tetrahedron()),
        Err(Error::Closed)
    ));
}

#[test]
fn strip_follows_tree_edges_only() {
    let mesh = gen_mk(4).unwrap();
    let (r, trace) = strip_with_boundary_traced(&mesh).unwrap();
    for w in r.order.windows(2) {
        let (a, b) = (r.parents[w[0]], r.parents[w[1]]);
        assert!(a == b || trace.tree.is_edge(a, b), "{a} -> {b}");
    }
}
