use manistrip::boundary::{gen_mk, strip_with_boundary};
use manistrip::io::{load_mesh, parse_mesh, save_mesh, MeshFormat};
use manistrip::meshgen::{generate, GenSpec};
use manistrip::output::{read_order, read_stats, StripMode};
use manistrip::sfc::{direct_cycle, export_curve, generate_curve, parse_curve_json, CurveFormat};
use manistrip::striploop::{stripify, verify_cycle, verify_strip};
use manistrip::{validate, Error, ValidationMode};

#[test]
fn generated_meshes_round_trip_through_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for spec in [
        GenSpec::Torus { p: 5, q: 3 },
        GenSpec::Icosphere { s: 1 },
        GenSpec::Octahedron,
        GenSpec::Fan { m: 4 },
        GenSpec::Mk { k: 3 },
    ] {
        let mesh = generate(spec).unwrap();
        for format in [MeshFormat::Off, MeshFormat::Obj] {
            let path = dir.path().join(format!("{spec}.{}", format.extension()));
            save_mesh(&mesh, &path, format).unwrap();
            let back = load_mesh(&path, format).unwrap();
            assert_eq!(back.triangles(), mesh.triangles(), "{spec} {format}");
            assert_eq!(back.vertices(), mesh.vertices(), "{spec} {format}");
        }
    }
}

#[test]
fn closed_artifacts_reload_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = generate(GenSpec::Torus { p: 20, q: 10 }).unwrap();
    let r = stripify(&mesh).unwrap();
    r.write_artifacts(dir.path()).unwrap();

    let out = load_mesh(dir.path().join("mesh.obj"), MeshFormat::Obj).unwrap();
    let (mode, order) = read_order(&dir.path().join("order.txt")).unwrap();
    let stats = read_stats(&dir.path().join("stats.json")).unwrap();
    assert_eq!(mode, StripMode::Cycle);
    assert!(verify_cycle(out.triangles(), &order).valid);
    assert!(validate(&out, ValidationMode::Closed).is_valid());
    assert_eq!(stats, r.stats);
    assert!(stats.output_triangles <= 412);
    assert!(stats.verify && stats.is_consistent());
}

#[test]
fn boundary_artifacts_reload_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = strip_with_boundary(&gen_mk(5).unwrap()).unwrap();
    r.write_artifacts(dir.path()).unwrap();
    let out = load_mesh(dir.path().join("mesh.obj"), MeshFormat::Obj).unwrap();
    let (mode, order) = read_order(&dir.path().join("order.txt")).unwrap();
    assert_eq!(mode, StripMode::Strip);
    assert!(verify_strip(out.triangles(), &order).valid);
    assert!(validate(&out, ValidationMode::WithBoundary).is_valid());
}

#[test]
fn curve_exports_reload() {
    let dir = tempfile::tempdir().unwrap();
    let r = stripify(&generate(GenSpec::Tetrahedron).unwrap()).unwrap();
    let dc = direct_cycle(&r.mesh, &r.order).unwrap();
    let curve = generate_curve(&r.mesh, &dc, 2).unwrap();

    let json = dir.path().join("curve.json");
    export_curve(&curve, &json, CurveFormat::Json).unwrap();
    let back = parse_curve_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(back.closed);
    assert_eq!(back.points, curve.collapsed());

    let obj = dir.path().join("curve.obj");
    export_curve(&curve, &obj, CurveFormat::Obj).unwrap();
    let text = std::fs::read_to_string(&obj).unwrap();
    let vs = text.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vs, curve.collapsed().len());
    let line = text.lines().find(|l| l.starts_with("l ")).unwrap();
    let ids: Vec<usize> = line[2..].split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert_eq!(ids.len(), vs + 1);
    assert_eq!(ids.first(), ids.last());
}

#[test]
fn wrong_pipeline_is_reported() {
    let open = generate(GenSpec::Fan { m: 3 }).unwrap();
    assert!(matches!(stripify(&open), Err(Error::HasBoundary)));
    let closed = generate(GenSpec::Octahedron).unwrap();
    assert!(matches!(strip_with_boundary(&closed), Err(Error::Closed)));
}

#[test]
fn inconsistent_winding_is_rejected() {
    let text = "OFF\n4 4 0\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";
    let mesh = parse_mesh(text, MeshFormat::Off).unwrap();
    assert!(matches!(stripify(&mesh), Err(Error::Invalid(_))));
}
