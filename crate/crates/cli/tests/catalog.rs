use std::fs;
use std::process::Command;

use sdkit::catalog::{builtin, ingest, Catalog, CatalogEntry, Provenance};
use sdkit::reproduce::reproduce;
use sdkit_core::lattice::{d_n_plus, z_n};

fn sdkit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sdkit"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn directory_with_two_lattices() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("z4.lat"), z_n(4).to_text()).unwrap();
    fs::write(
        dir.path().join("d12.lat"),
        format!("# name: D12+\n{}", d_n_plus(12).unwrap().to_text()),
    )
    .unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let cat = ingest(dir.path()).unwrap();
    assert_eq!(cat.len(), 2);
    let names: Vec<&str> = cat.entries().iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, ["D12+", "z4"]);
}

#[test]
fn non_symmetric_gram_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.lat");
    fs::write(&f, "2\n2 1\n0 2\n").unwrap();
    let err = format!("{:#}", ingest(&f).unwrap_err());
    assert!(err.contains("not symmetric"), "{err}");
}

#[test]
fn digit_three_in_code_row_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.code");
    fs::write(&f, "# name: E4\n4 2\n1021\n0123\n").unwrap();
    let err = format!("{:#}", ingest(&f).unwrap_err());
    assert!(err.contains("line 4, column 4"), "{err}");
}

#[test]
fn duplicate_names_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.lat"), "# name: X\n1\n1\n").unwrap();
    fs::write(dir.path().join("b.lat"), "# name: X\n1\n1\n").unwrap();
    assert!(ingest(dir.path()).is_err());
}

#[test]
fn write_then_ingest_is_identity() {
    let cat = builtin().unwrap();
    let d1 = tempfile::tempdir().unwrap();
    cat.write(d1.path()).unwrap();
    let back = ingest(d1.path()).unwrap();
    assert_eq!(back, cat);
    let d2 = tempfile::tempdir().unwrap();
    back.write(d2.path()).unwrap();
    let mut files: Vec<_> = fs::read_dir(d1.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    files.sort();
    for f in files {
        assert_eq!(
            fs::read(d1.path().join(&f)).unwrap(),
            fs::read(d2.path().join(&f)).unwrap()
        );
    }
}

#[test]
fn provenance_survives_roundtrip() {
    let mut cat = Catalog::new();
    cat.push(CatalogEntry::lattice(
        "nb",
        z_n(2),
        Provenance::NeighborDerived,
    ))
    .unwrap();
    let d = tempfile::tempdir().unwrap();
    cat.write(d.path()).unwrap();
    assert_eq!(
        ingest(d.path()).unwrap().entries()[0].provenance,
        Provenance::NeighborDerived
    );
}

#[test]
fn reproduce_mass4_is_stable() {
    let d = tempfile::tempdir().unwrap();
    let (m1, o, path) = reproduce("mass4", d.path()).unwrap();
    assert!(o.pass);
    assert!(path.exists());
    let (m2, _, _) = reproduce("mass4", d.path()).unwrap();
    assert_eq!(m1.output_hash, m2.output_hash);
    assert_eq!(m1.input_hashes, m2.input_hashes);
    assert_eq!(m1.input_hashes.len(), 1);
}

#[test]
fn reproduce_niemeier_a24() {
    let d = tempfile::tempdir().unwrap();
    let (_, o, _) = reproduce("niemeier-a24", d.path()).unwrap();
    assert!(o.pass, "{o:?}");
}

#[test]
fn cli_code_and_classify() {
    let d = tempfile::tempdir().unwrap();
    let e4 = d.path().join("e4.code");
    fs::write(&e4, "4 2\n1021\n0122\n").unwrap();
    let e4 = e4.to_str().unwrap();
    let (rc, out, _) = sdkit(&["code", "aut", e4]);
    assert_eq!((rc, out.trim()), (0, "48"));
    let (rc, out, _) = sdkit(&["code", "mass", "-n", "4", e4]);
    assert_eq!(rc, 0);
    assert!(out.contains("total 8 expected 8 PASS"), "{out}");
    let (rc, out, _) = sdkit(&["code", "wenum", e4]);
    assert_eq!((rc, out.as_str()), (0, "0 1\n3 8\n"));

    let z4 = d.path().join("z4.lat");
    fs::write(&z4, z_n(4).to_text()).unwrap();
    let (rc, out, _) = sdkit(&["classify", "--lattice", z4.to_str().unwrap()]);
    assert_eq!(rc, 0);
    assert_eq!(out, " i | N | #Aut\nz4 | 1 | 48\n");
}

#[test]
fn cli_classify_catalog_and_report() {
    let d = tempfile::tempdir().unwrap();
    let cat = d.path().join("cat");
    fs::create_dir(&cat).unwrap();
    fs::write(
        cat.join("z4.lat"),
        "# name: Z^4\n".to_string() + &z_n(4).to_text(),
    )
    .unwrap();
    let (rc, out, err) = sdkit(&[
        "--json",
        "classify",
        "--length",
        "4",
        "--catalog",
        cat.to_str().unwrap(),
    ]);
    assert_eq!(rc, 0, "{err}");
    let rep = d.path().join("r.json");
    fs::write(&rep, out).unwrap();
    let (rc, out, _) = sdkit(&["report", rep.to_str().unwrap()]);
    assert_eq!(rc, 0);
    assert_eq!(out, "  i | N | #Aut\nZ^4 | 1 | 48\n");
}

#[test]
fn cli_errors_exit_nonzero() {
    let (rc, _, err) = sdkit(&["reproduce", "missing-script"]);
    assert_eq!(rc, 2);
    assert!(err.contains("unknown script"));
    let (rc, _, _) = sdkit(&["neighbor"]);
    assert_ne!(rc, 0);
}

#[test]
fn corpus_is_seeded() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let (rc, _, err) = sdkit(&["corpus", "--seed", "7", "--out", d.path().to_str().unwrap()]);
        assert_eq!(rc, 0, "{err}");
    }
    let ca = ingest(a.path()).unwrap();
    assert_eq!(ca, ingest(b.path()).unwrap());
    assert_eq!(ca.len(), builtin().unwrap().len());
}
