use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manistrip"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stats(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stats JSON on stdout")
}

#[test]
fn torus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = run(d, &["gen", "torus", "20", "10", "--out", "meshes"]);
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));
    let path = String::from_utf8(gen.stdout).unwrap().trim().to_string();
    assert!(d.join(&path).exists());

    let out = run(d, &["stripify", &path, "--out", "res", "--stats", "copy.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let s = stats(&out);
    assert_eq!(s["input_triangles"], 400);
    assert!(s["output_triangles"].as_u64().unwrap() <= 412);
    assert_eq!(s["verify"], true);
    for f in ["mesh.obj", "order.txt", "stats.json"] {
        assert!(d.join("res").join(f).exists(), "{f}");
    }
    let copy: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("copy.json")).unwrap()).unwrap();
    assert_eq!(copy, s);

    let ok = run(d, &["verify", "res/mesh.obj", "res/order.txt"]);
    assert_eq!(code(&ok), 0);

    let summary = run(d, &["stats", &path]);
    assert_eq!(code(&summary), 0);
    assert_eq!(stats(&summary)["output_triangles"], s["output_triangles"]);
}

#[test]
fn duplicate_id_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "icosphere", "1"]);
    assert_eq!(code(&run(d, &["stripify", "icosphere_1.off"])), 0);
    let text = fs::read_to_string(d.join("order.txt")).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[2] = lines[1];
    fs::write(d.join("bad.txt"), lines.join("\n") + "\n").unwrap();
    let out = run(d, &["verify", "mesh.obj", "bad.txt"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("appears"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sfc_writes_closed_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "tetrahedron", "--format", "obj"]);
    let out = run(d, &["sfc", "tetrahedron.obj", "--depth", "2", "--out", "c"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(d.join("c/curve.obj")).unwrap();
    let vs = text.lines().filter(|l| l.starts_with("v ")).count();
    assert!(vs > 0 && vs <= 4 * 2 * 16);
    let line = text.lines().find(|l| l.starts_with("l ")).unwrap();
    let ids: Vec<&str> = line.split_whitespace().skip(1).collect();
    assert_eq!(ids.len(), vs + 1);
    assert_eq!(ids.first(), ids.last());

    // Reusing the written order gives the same curve.
    let again = run(d, &["sfc", "c/mesh.obj", "--order", "c/order.txt", "--depth", "2", "--out", "c2"]);
    assert_eq!(code(&again), 0, "{}", String::from_utf8_lossy(&again.stderr));
    assert_eq!(fs::read_to_string(d.join("c2/curve.obj")).unwrap(), text);
}

#[test]
fn boundary_mesh_gives_strip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "mk", "3"]);
    let out = run(d, &["stripify-boundary", "mk_3.off"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stats(&out)["verify"], true);
    assert!(fs::read_to_string(d.join("order.txt")).unwrap().starts_with("strip "));
    assert_eq!(code(&run(d, &["verify", "mesh.obj", "order.txt"])), 0);
    let curve = run(d, &["sfc", "mk_3.off", "--depth", "1", "--curve-format", "json"]);
    assert_eq!(code(&curve), 0, "{}", String::from_utf8_lossy(&curve.stderr));
    assert!(d.join("curve.json").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["frobnicate"])), 1);
    assert_eq!(code(&run(d, &["sfc"])), 1);
    assert_eq!(code(&run(d, &["gen", "torus", "5"])), 1);
    assert_eq!(code(&run(d, &["--help"])), 0);

    fs::write(d.join("junk.off"), "OFF\n3 1 0\n0 0 0\nnot a number\n").unwrap();
    assert_eq!(code(&run(d, &["stripify", "junk.off"])), 2);
    assert_eq!(code(&run(d, &["stripify", "missing.off"])), 2);

    run(d, &["gen", "fan", "4"]);
    let open = run(d, &["stripify", "fan_4.off"]);
    assert_eq!(code(&open), 3);
    assert!(String::from_utf8_lossy(&open.stderr).contains("stripify-boundary"));
    run(d, &["gen", "octahedron"]);
    assert_eq!(code(&run(d, &["stripify-boundary", "octahedron.off"])), 3);
}
