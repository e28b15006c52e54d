use mapenum::cli::run;
use mapenum::io::{self, Format};

fn mapenum(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mapenum").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn maps_csv_cell() {
    let (code, out, _) = mapenum(&["maps", "--n-max", "4", "--g-max", "2", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "maps,4,4,,509"), "{out}");
}

#[test]
fn empty_table() {
    let (code, out, _) = mapenum(&["maps", "--n-max", "0", "--no-cache"]);
    assert_eq!(code, 0);
    assert_eq!(out, "# maps\n");
    let (_, json, _) = mapenum(&["maps", "--n-max", "0", "--format", "json", "--no-cache"]);
    assert!(io::parse(&json, Format::Json).unwrap().is_empty());
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = mapenum(&["verify", "ode-maps", "--order", "16", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["identity"], "ode-maps");
    let (code, _, err) = mapenum(&["verify", "no-such-identity", "--order", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown identity"));
}

#[test]
fn usage_errors() {
    assert_eq!(mapenum(&["maps"]).0, 2);
    assert_eq!(mapenum(&["maps", "--n-max", "3", "--g-max", "1/3"]).0, 2);
    assert_eq!(mapenum(&["oracle", "--edges", "7"]).0, 2);
    assert_eq!(mapenum(&["--format", "xml", "oneface", "--n-max", "2"]).0, 2);
    assert_eq!(mapenum(&["--help"]).0, 0);
}

#[test]
fn formats_agree() {
    let args = ["maps", "--n-max", "5", "--bivariate", "--no-cache", "--format"];
    let mut parsed = Vec::new();
    for (name, f) in [("table", Format::Table), ("csv", Format::Csv), ("json", Format::Json)] {
        let mut a = args.to_vec();
        a.push(name);
        let (code, out, _) = mapenum(&a);
        assert_eq!(code, 0);
        parsed.push(io::parse(&out, f).unwrap());
    }
    assert!(!parsed[0].is_empty());
    assert_eq!(parsed[0], parsed[1]);
    assert_eq!(parsed[1], parsed[2]);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.ndjson");
    let cache = cache.to_str().unwrap();
    for cmd in [
        vec!["triangulations", "--n-max", "8"],
        vec!["bipartite", "--n-max", "6", "--trivariate"],
        vec!["maps", "--n-max", "9", "--g-max", "3/2"],
        vec!["bip-oneface", "--n-max", "6"],
        vec!["oneface", "--n-max", "6"],
    ] {
        let mut cold = cmd.clone();
        cold.push("--no-cache");
        let (_, want, _) = mapenum(&cold);
        let mut warm = cmd.clone();
        warm.extend(["--cache", cache]);
        let (c1, first, _) = mapenum(&warm);
        let before = std::fs::read_to_string(cache).unwrap();
        let (c2, second, _) = mapenum(&warm);
        let after = std::fs::read_to_string(cache).unwrap();
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(first, want);
        assert_eq!(second, want);
        assert_eq!(before, after, "a hit must not append");
    }
    let text = std::fs::read_to_string(cache).unwrap();
    assert!(text.starts_with("{\"format\":\"mapenum-counts\",\"version\":1}"));
    assert_eq!(text.lines().filter(|l| l.contains("\"format\"")).count(), 1);
}

#[test]
fn cache_is_used_when_complete() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.ndjson");
    // A hand-written cache holding a (wrong) value proves the lookup path.
    let mut lines = vec!["{\"format\":\"mapenum-counts\",\"version\":1}".to_string()];
    lines.push("{\"model\":\"bipartite-oneface\",\"n\":1,\"g2\":0,\"indices\":[1,1],\"value\":\"41\"}".into());
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let (code, out, _) =
        mapenum(&["bip-oneface", "--n-max", "1", "--format", "csv", "--cache", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("bip-oneface,1,0,1;1,41"), "{out}");
}

#[test]
fn oracle_json_schema() {
    let (code, out, _) = mapenum(&["oracle", "--edges", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["model"], "maps");
    let rows = io::parse(&out, Format::Json).unwrap();
    let total: i64 = rows.iter().filter(|r| r.g2 == 1).map(|r| i64::try_from(&r.value).unwrap()).sum();
    assert_eq!(total, 10);
    let (_, tri, _) = mapenum(&["oracle", "--edges", "3", "--filter", "triangulation", "--format", "csv"]);
    assert!(tri.contains("triangulations,1,2,,7"), "{tri}");
}

#[test]
fn engines_both() {
    let (code, out, _) = mapenum(&["maps", "--n-max", "8", "--engine", "both", "--no-cache"]);
    assert_eq!(code, 0);
    let (_, plain, _) = mapenum(&["maps", "--n-max", "8", "--no-cache"]);
    assert_eq!(out, plain);
}
