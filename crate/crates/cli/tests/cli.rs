mod common;

use common::{fixture, json, modlie, stderr, stdout};

fn p(rel: &str) -> String {
    fixture(rel).to_str().unwrap().to_string()
}

#[test]
fn abelian_e7_scenario_reports_28() {
    let o = modlie(&["run", &p("scenarios/abelian_e7.toml")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("abelian_dimension.E7.p2 = 28"));
}

#[test]
fn missing_file_exits_1_naming_the_path() {
    let o = modlie(&["run", &p("broken/missing_file.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no_such_module.rep"), "{}", stderr(&o));
}

#[test]
fn wrong_expectation_exits_2_with_a_diff() {
    let o = modlie(&["run", &p("broken/wrong_expected.toml")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("r_dimension: expected 2, got 1"), "{}", stdout(&o));
}

#[test]
fn missing_scenario_exits_1() {
    let o = modlie(&["run", "does/not/exist.toml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("does/not/exist.toml"));
}

#[test]
fn paper_scale_is_gated() {
    let o = modlie(&["run", &p("scenarios/paper/hs_product_space.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--paper-scale"));
}

#[test]
fn subcommands_check_the_pipeline() {
    let o = modlie(&["lieproduct", "classify", &p("scenarios/sp4_sl2.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected 'lieproduct'"));
    let o = modlie(&["subalg", "run", &p("scenarios/sp4_sl2.toml")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn valid_rep_passes_all_checks() {
    let o = modlie(&["validate", &p("sp4/V.rep")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 2);
}

#[test]
fn singular_generator_is_named() {
    let o = modlie(&["validate", &p("broken/singular.rep")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("SingularGenerator: generator 1"), "{}", stdout(&o));
}

#[test]
fn relator_violation_names_the_index() {
    let o = modlie(&["validate", "--rep", &p("sp4/V.rep"), &p("broken/bad_relator.pres")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("RelatorViolation: relator 0"), "{}", out);
    assert!(out.contains("ok   ") && out.contains("relator 1"));
}

#[test]
fn form_invariance_is_checked() {
    // V + V carries the form; V alone has the wrong shape
    let dir = tempfile::tempdir().unwrap();
    let vv = dir.path().join("vv.rep");
    std::fs::write(
        &vv,
        "GFREP v1\nfield 5 1\ndim 4 gens 2\n1 1 0 0\n0 1 0 0\n0 0 1 1\n0 0 0 1\n0 4 0 0\n1 0 0 0\n0 0 0 4\n0 0 1 0\n",
    )
    .unwrap();
    let o = modlie(&["validate", "--rep", vv.to_str().unwrap(), &p("sp4/form.mat")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "GFMAT v1 5 1 4 4\n1 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n").unwrap();
    let o = modlie(&["validate", "--rep", vv.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("does not preserve the form"));
}

#[test]
fn scenarios_and_tables_validate() {
    let mut args = vec!["validate".to_string()];
    for e in std::fs::read_dir(fixture("scenarios")).unwrap() {
        let path = e.unwrap().path();
        if path.extension().is_some_and(|x| x == "toml") {
            args.push(path.to_str().unwrap().into());
        }
    }
    args.push(p("chevalley/G2_p7.lie"));
    args.push(p("profiles/e7_a4a2.gfprof"));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = modlie(&refs);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn report_file_matches_stdout_and_timings_stay_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let timings = dir.path().join("t.json");
    let o = modlie(&[
        "--json",
        "run",
        "--out",
        out.to_str().unwrap(),
        "--timings",
        timings.to_str().unwrap(),
        &p("scenarios/sl2_product_space.toml"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), o.stdout);
    let r = json(&o);
    assert_eq!(r["schema"], "modlie-report/1");
    assert_eq!(r["summary"]["r_dimension"], 1);
    assert!(!String::from_utf8(o.stdout).unwrap().contains("seconds"));
    let t: serde_json::Value = serde_json::from_slice(&std::fs::read(&timings).unwrap()).unwrap();
    assert!(t["total_seconds"].is_number());
}

#[test]
fn report_digest_covers_the_document() {
    let o = modlie(&["--json", "run", &p("scenarios/hom_sp4.toml")]);
    let mut r = json(&o);
    let digest = r["digest"].as_str().unwrap().to_string();
    r.as_object_mut().unwrap().remove("digest");
    use sha2::{Digest, Sha256};
    assert_eq!(hex::encode(Sha256::digest(serde_json::to_vec(&r).unwrap())), digest);
}

#[test]
fn direct_subcommands() {
    let o = modlie(&["modrep", "hom", &p("sp4/V.rep"), &p("sp4/V.rep")]);
    assert_eq!(stdout(&o), "hom_dimension = 1\n");
    let o = modlie(&["modrep", "chop", &p("alt7/4.rep")]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = modlie(&["modrep", "forms", &p("sp4/V.rep")]);
    assert!(stdout(&o).contains("form_mode = unique"), "{}", stdout(&o));
    let o = modlie(&["liealg", "verify", &p("chevalley/A2_p7.lie")]);
    assert!(stdout(&o).contains("is_lie = true"));
    let o = modlie(&["liealg", "identify", &p("chevalley/G2_p11.lie")]);
    assert!(stdout(&o).contains("type = G2"), "{}", stdout(&o));
    let o = modlie(&["liealg", "profile", &p("chevalley/A1_p7.lie")]);
    assert!(stdout(&o).contains("center_dim = 0"));
    let o = modlie(&["roots", "abelian-dim", "E6", "--p", "3"]);
    assert!(stdout(&o).contains("abelian_dimension = 17"));
    let o = modlie(&["cohom", "h1", "--presentation", &p("alt7/2alt7.pres"), &p("alt7/4.rep")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("h1_dimension = 0"));
    let o = modlie(&["pencil", &p("sp4/form.mat"), &p("sp4/form.mat")]);
    assert_eq!(o.status.code(), Some(1), "non-nilpotent pencil must be refused");
}

#[test]
fn book_scenario_listing_matches_the_fixture() {
    let book = std::fs::read_to_string(common::root().join("book/src/cli.md")).unwrap();
    let block = book.split("```toml\n").nth(1).unwrap().split("```").next().unwrap();
    let file = std::fs::read_to_string(fixture("scenarios/sp4_sl2.toml")).unwrap();
    assert!(file.ends_with(block), "book/src/cli.md is out of date");
}
