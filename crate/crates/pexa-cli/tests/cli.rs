use std::fs;
use std::path::Path;
use std::sync::Arc;

use pexa::smod::FiniteModule;
use pexa::tables::{boolean, builtin, chain, krasner, sign};
use pexa_cli::format::{parse_structure, render, Body, ParseOptions, StructureFile};
use pexa_cli::{run, Output, EXIT_BOUND, EXIT_FAILED, EXIT_INVALID};
use serde_json::Value;
use tempfile::TempDir;

const B_SR: &str = "semiring B 2\nadd\n0 1\n1 1\nmul\n0 0\n0 1\n";

fn pexa(dir: &Path, args: &[&str]) -> Output {
    let mut argv = vec!["pexa".to_string()];
    for a in args {
        // file arguments are relative to the scratch directory
        argv.push(if a.contains('.') && dir.join(a).exists() { dir.join(a).display().to_string() } else { a.to_string() });
    }
    run(argv)
}

fn scratch(files: &[(&str, &str)]) -> TempDir {
    let dir = TempDir::new().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

fn b2_text() -> String {
    let module = FiniteModule::free(Arc::new(boolean()), 2).unwrap();
    render(&StructureFile::new("B2", Body::Module { base: "B".into(), module }))
}

fn module_fixture() -> TempDir {
    let b = FiniteModule::regular(Arc::new(boolean()));
    let b = render(&StructureFile::new("B", Body::Module { base: "B".into(), module: b }));
    scratch(&[
        ("b.mod", &b),
        ("b2.mod", &b2_text()),
        ("i.hom", "morphism i 2\nsource b.mod\ntarget b2.mod\nmap 0 1\n"),
        ("d.hom", "morphism d 2\nsource b.mod\ntarget b2.mod\nmap 0 3\n"),
        ("j.hom", "morphism j 4\nsource b2.mod\ntarget b.mod\nmap 0 0 1 1\n"),
    ])
}

#[test]
fn check_reports_an_idempotent_semiring() {
    let dir = scratch(&[("b.sr", B_SR)]);
    let out = pexa(dir.path(), &["check", "b.sr"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "valid semiring (idempotent)\n");
}

#[test]
fn krasner_from_a_single_equation() {
    let dir = scratch(&[("k.hr", "hyperring K 2\n1+1 = {0,1}\n1*1 = 1\n")]);
    let out = pexa(dir.path(), &["check", "k.hr"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "valid hyperfield\n"));
}

#[test]
fn missing_row_is_a_parse_error_with_position() {
    let dir = scratch(&[("bad.sr", "semiring X 2\nadd\n0 1\nmul\n0 0\n0 1\n")]);
    let out = pexa(dir.path(), &["check", "bad.sr"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn failed_axioms_exit_with_a_witness() {
    let dir = scratch(&[("x.sr", "semiring X 2\nadd\n0 1\n1 0\nmul\n0 0\n0 0\n")]);
    let out = pexa(dir.path(), &["check", "x.sr"]);
    assert_eq!(out.code, EXIT_FAILED);
    assert!(out.stdout.starts_with("invalid semiring\n  "), "{}", out.stdout);
}

#[test]
fn size_bound_exit_code() {
    let dir = TempDir::new().unwrap();
    let out = pexa(dir.path(), &["gen", "--family", "proj", "--p", "7", "--d", "2"]);
    assert_eq!(out.code, EXIT_BOUND, "{}", out.stderr);
}

#[test]
fn usage_errors_and_help() {
    let dir = TempDir::new().unwrap();
    assert_eq!(pexa(dir.path(), &["frobnicate"]).code, EXIT_INVALID);
    let help = pexa(dir.path(), &["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn render_then_parse_is_the_identity_on_builtins() {
    let files = [
        StructureFile::new("B", Body::Semiring(boolean())),
        StructureFile::new("chain_4", Body::Semiring(chain(4).unwrap())),
        StructureFile::new("F_5", Body::Ring(builtin("F_5").unwrap().semiring().unwrap())),
        StructureFile::new("K", Body::Hyperring(krasner())),
        StructureFile::new("S", Body::Hyperring(sign())),
    ];
    for file in files {
        let text = render(&file);
        let back = parse_structure(&text, ParseOptions::default()).unwrap();
        assert_eq!(back, file);
        assert_eq!(render(&back), text);
    }
}

#[test]
fn generated_files_are_canonical() {
    let dir = TempDir::new().unwrap();
    let families: [&[&str]; 5] = [
        &["--family", "bmod", "--max-size", "5"],
        &["--family", "kmod", "--max-size", "6"],
        &["--family", "lattice", "--max-size", "5"],
        &["--family", "en", "--n", "5"],
        &["--family", "proj", "--p", "3", "--d", "2"],
    ];
    for (k, family) in families.iter().enumerate() {
        let out_dir = dir.path().join(k.to_string());
        let mut args = vec!["gen"];
        args.extend_from_slice(family);
        args.extend(["--out", out_dir.to_str().unwrap()]);
        let out = pexa(dir.path(), &args);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let mut seen = 0;
        for entry in fs::read_dir(&out_dir).unwrap() {
            let text = fs::read_to_string(entry.unwrap().path()).unwrap();
            let file = parse_structure(&text, ParseOptions::default()).unwrap();
            assert_eq!(render(&file), text);
            seen += 1;
        }
        assert_eq!(seen, out.stdout.lines().count());
    }
}

#[test]
fn presentation_does_not_change_the_digest() {
    let terse = "# defaults fill everything but one cell\nsemiring B 2\n1+1 = 1\n";
    let dir = scratch(&[("b.sr", B_SR), ("terse.sr", terse)]);
    let digest = |file: &str| {
        let out = pexa(dir.path(), &["--json", "check", file]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        v["input_digests"]["input"].as_str().unwrap().to_string()
    };
    assert_eq!(digest("b.sr"), digest("terse.sr"));
}

#[test]
fn classify_admissible_and_plain_morphisms() {
    let dir = module_fixture();
    let class = |hom: &str| pexa(dir.path(), &["classify", "--hom", hom]).stdout;
    assert_eq!(class("i.hom"), "i: admissible_mono\n");
    // the diagonal lands on a non-saturated submodule
    assert_eq!(class("d.hom"), "d: neither\n");
    assert_eq!(class("j.hom"), "j: admissible_epi\n");
}

#[test]
fn exactness_verdicts() {
    let dir = module_fixture();
    let ok = pexa(dir.path(), &["exact", "--mono", "i.hom", "--epi", "j.hom"]);
    assert_eq!((ok.code, ok.stdout.as_str()), (0, "exact\n"));
    let bad = pexa(dir.path(), &["exact", "--mono", "d.hom", "--epi", "j.hom"]);
    assert_eq!(bad.code, EXIT_FAILED);
    assert!(bad.stdout.contains("not an admissible mono"), "{}", bad.stdout);
}

#[test]
fn json_documents_have_the_fixed_fields() {
    let dir = module_fixture();
    let out = pexa(dir.path(), &["--json", "submodules", "--saturated", "b2.mod"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "input_digests", "result", "witnesses"]);
    assert_eq!(v["command"], "submodules");
    assert!(out.stdout.ends_with("}\n"));
}

#[test]
fn quotient_and_lattice_of_free_module() {
    let dir = module_fixture();
    let q = pexa(dir.path(), &["quotient", "b2.mod", "--by", "{0,1}"]);
    assert_eq!(q.code, 0);
    assert!(q.stdout.starts_with("classes [0, 0, 1, 1]\n"), "{}", q.stdout);
    let s = pexa(dir.path(), &["submodules", "--saturated", "b2.mod"]);
    assert!(s.stdout.starts_with("4 saturated submodules\n"), "{}", s.stdout);
}

#[test]
fn jobs_do_not_change_output() {
    let dir = module_fixture();
    let one = pexa(dir.path(), &["--jobs", "1", "submodules", "b2.mod"]);
    let many = pexa(dir.path(), &["--jobs", "4", "submodules", "b2.mod"]);
    assert_eq!(one, many);
}
