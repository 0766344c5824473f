use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

/// Runs the binary and returns (exit code, stdout + stderr).
fn ttg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ttg"))
        .args(args)
        .output()
        .expect("run ttg");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap(), text)
}

#[test]
fn ltg_chain_trace() {
    let (code, out) = ttg(&[
        "ltg",
        "--kind",
        "krull",
        "--supp",
        "all",
        &data("chain3.space"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "stage 0 base delta={z} cum={z}\n\
         stage 1 successor delta={y} cum={y,z}\n\
         stage 2 successor delta={x} cum={x,y,z}\n\
         total={x,y,z}\n"
    );
}

#[test]
fn ltg_partial_support() {
    let (code, out) = ttg(&["ltg", "--supp", "{x,z}", &data("chain3.space")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("total={x,z}\n"), "{out}");
}

#[test]
fn ltg_ordinal_trace() {
    let (code, out) = ttg(&["ltg", "--kind", "cbrank", &data("omega2.space")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "stage 0 base delta=@0[0,w^2) cum=@0[0,w^2)\n\
         stage 1 successor delta=@1[w,w^2) cum=[0,w^2)\n\
         stage 2 successor delta=[w^2,w^2] cum=[0,w^2]\n\
         total=[0,w^2]\n"
    );
}

#[test]
fn dim_reports() {
    let (code, out) = ttg(&["dim", "--kind", "krull", &data("chain3.space")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "dim x = 2\ndim y = 1\ndim z = 0\nspace_dim = 2\nPASS\n"
    );

    let (code, out) = ttg(&["dim", "--kind", "cbrank", &data("chain3.space")]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error: NotConstructible"), "{out}");

    let (code, out) = ttg(&["dim", "--kind", "nonsense", &data("chain3.space")]);
    assert_eq!(code, 2);
    assert!(out.contains("nonsense"));
}

#[test]
fn compat_passes() {
    let (code, out) = ttg(&["compat", &data("chain3.space")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("PASS\n"));
    let (code, out) = ttg(&["compat", "--kind", "cbrank", &data("omega2.space")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn check_suites() {
    let (code, out) = ttg(&["check", &data("cantor.space")]);
    assert_eq!(code, 0);
    assert!(out.contains("constructible yes"));
    assert!(out.contains("cbrank undefined (RankUndefined)"));

    let (code, out) = ttg(&["check", &data("discrete3.space")]);
    assert_eq!(code, 0);
    assert!(
        out.contains("visible all") && out.contains("cbrank 0 spectral"),
        "{out}"
    );
}

#[test]
fn thomason_listing() {
    let (code, out) = ttg(&["thomason", &data("chain3.space")]);
    assert_eq!(code, 0);
    assert_eq!(out, "{}\n{z}\n{y,z}\n{x,y,z}\ncount 4\n");
    let (code, out) = ttg(&["thomason", "--subset", "{x}", &data("chain3.space")]);
    assert_eq!((code, out.as_str()), (1, "thomason {x} no\n"));
    let (code, _) = ttg(&["thomason", "--subset", "[0,w)", &data("omega2.space")]);
    assert_eq!(code, 0);
}

#[test]
fn visible_points() {
    let (code, out) = ttg(&["visible", &data("chain3.space")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("visible y outer={y,z} inner={z}"), "{out}");
    let (code, out) = ttg(&["visible", "--point", "w", &data("omega2.space")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("visible w "));
}

#[test]
fn stone_commands() {
    assert_eq!(
        ttg(&["stone", "roundtrip", "fields:3"]),
        (0, "PASS 8/8 subsets\n".into())
    );
    let (code, out) = ttg(&["stone", "semi-artinian", "atomless"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("semi-artinian no\ncbrank undefined"));
    let (_, out) = ttg(&["stone", "semi-artinian", "interval:w^2"]);
    assert_eq!(out, "semi-artinian yes\ncbrank 2\n");
    let (code, out) = ttg(&[
        "stone",
        "support",
        "fields:4",
        "--objects",
        &data("objects.txt"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "support A = {0,3}\nsupport B = {1}\n");
    let (_, out) = ttg(&[
        "stone",
        "sigma",
        "fields:4",
        "--objects",
        &data("objects.txt"),
    ]);
    assert_eq!(out, "sigma = {0,1,3}\n");
}

#[test]
fn input_errors() {
    let (code, out) = ttg(&["dim", &data("cyclic.space")]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error: CyclicSpecialisation"));
    let (code, out) = ttg(&["ltg", "--supp", "[0,w+w]", &data("omega2.space")]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error: LiteralError at column 6"), "{out}");
    let (code, _) = ttg(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["ltg", "--supp", "all", &data("omega2.space")];
    assert_eq!(ttg(&args), ttg(&args));
}
