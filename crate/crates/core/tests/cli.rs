use serde_json::Value;
use witt_display::cli::{run, Outcome};

fn cli(args: &[&str], input: &str) -> Outcome {
    run(args, &mut input.as_bytes())
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn witt_add_over_integers() {
    let out = cli(&["witt", "add", "--p", "2", "--len", "2", "--ring", "Z", "--x", "[1,0]", "--y", "[1,0]", "--format", "text"], "");
    assert_eq!(out.stdout, "[2, -1]\n");
    let doc = json(&cli(&["witt", "add", "--p", "2", "--ring", "Z", "--x", "[1,0]", "--y", "[1,0]"], ""));
    assert_eq!(doc["kind"], "witt");
    assert_eq!(doc["components"][1]["terms"][0][1], "-1");
}

#[test]
fn witt_operations() {
    let text = |args: &[&str]| {
        let mut all = args.to_vec();
        all.extend(["--format", "text"]);
        cli(&all, "").stdout.trim().to_string()
    };
    assert_eq!(text(&["witt", "ghost", "--p", "3", "--x", "[1, 2]"]), "[1, 7]");
    assert_eq!(text(&["witt", "versch", "--p", "3", "--x", "[1, 2, 0]"]), "[0, 1, 2]");
    assert_eq!(text(&["witt", "teich", "--p", "2", "--ring", "Z/8[u]", "--x", "u", "--len", "2"]), "[u, 0]");
    assert_eq!(text(&["witt", "frob", "--p", "2", "--ring", "Z/2[u]/(u)^5", "--x", "[u, 1]"]), "[u^2, 1]");
    assert_eq!(text(&["witt", "invert", "--p", "2", "--ring", "Z/4", "--x", "[1, 0]"]), "[1, 0]");
}

#[test]
fn example_pipes_into_point() {
    let example = cli(&["display", "example", "lubin-tate-h3"], "");
    let point = cli(&["display", "point", "--format", "text"], &example.stdout);
    assert_eq!(point.stdout.trim(), "[1 : u2 : u1]");
}

#[test]
fn period_sections_low_order() {
    let out = cli(&["period", "sections", "--h", "2", "--order", "2", "--p", "3", "--format", "text"], "");
    assert_eq!(out.stdout.trim(), "A = [[1, 0]\n [u1, 1]]");
    let doc = json(&cli(&["period", "sections", "--h", "2", "--order", "2", "--p", "3"], ""));
    assert_eq!(doc["functional_equation_holds"], true);
    assert_eq!(doc["A"][1][0], serde_json::json!([[[1], "1"]]));
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["witt", "frobnicate"], "").code, 2);
    assert_eq!(cli(&["witt", "add", "--p", "2", "--x", "[1", "--y", "[1,0]"], "").code, 2);
    assert_eq!(cli(&["witt", "add", "--p", "2", "--ring", "Z[", "--x", "[1]", "--y", "[1]"], "").code, 2);
    assert_eq!(cli(&["display", "point"], "not json").code, 2);
    assert_eq!(cli(&["witt", "invert", "--p", "3", "--ring", "Z/9", "--x", "[3, 1]"], "").code, 1);
    assert_eq!(cli(&["period", "sections", "--p", "4", "--h", "2", "--order", "2"], "").code, 1);
    assert_eq!(cli(&["--help"], "").code, 0);
}

#[test]
fn not_etale_is_a_result() {
    let display = cli(
        &["display", "new", "--p", "3", "--h", "2", "--d", "1", "--ring", "Z/9[u1]/(3,u1)^4", "--matrix",
          r#"[[["0", "0"], ["1", "0"]], [["1", "0"], ["u1^2", "0"]]]"#],
        "",
    );
    let doc = json(&cli(&["deform", "etale"], &display.stdout));
    assert_eq!(doc["etale"], false);
    let lt = cli(&["display", "example", "lubin-tate-h2"], "");
    let doc = json(&cli(&["deform", "etale", "--all-charts"], &lt.stdout));
    assert_eq!(doc["etale"], true);
}

#[test]
fn display_commands_round_trip() {
    let lt = cli(&["display", "example", "lubin-tate-h2", "--p", "2", "--len", "3"], "");
    let dual = cli(&["display", "dual"], &lt.stdout);
    let bidual = cli(&["display", "dual"], &dual.stdout);
    assert_eq!(json(&bidual)["matrix"], json(&lt)["matrix"]);
    let check = json(&cli(&["display", "check"], &lt.stdout));
    assert_eq!(check["valid"], true);
    let nil = json(&cli(&["display", "nilpotent"], &lt.stdout));
    assert_eq!(nil["status"], "nilpotent");
    let change = r#"{"a": [[["1", "0", "0"]]], "b": [[["1", "0", "0"]]], "c": [[["0", "0", "0"]]], "e": [[["1", "0", "0"]]]}"#;
    let moved = cli(&["display", "change", "--change", change], &lt.stdout);
    assert_eq!(json(&moved)["kind"], "display");
    assert_eq!(cli(&["display", "point"], &moved.stdout).code, 0);
}

#[test]
fn dieudonne_from_display_and_back() {
    let disp = cli(
        &["display", "new", "--p", "2", "--h", "2", "--d", "1", "--ring", "GF(2^2)", "--matrix",
          r#"[[["z", "1"], ["1", "0"]], [["1", "z"], ["0", "0"]]]"#],
        "",
    );
    let module = cli(&["dieudonne", "from-display"], &disp.stdout);
    let doc = json(&module);
    assert_eq!(doc["N"], 2);
    assert!(doc["F_matrix"].is_array() && doc["V_matrix"].is_array());
    assert_eq!(json(&cli(&["dieudonne", "check-fv"], &module.stdout))["holds"], true);
}

#[test]
fn moduli_commands() {
    let doc = json(&cli(&["moduli", "present", "--p", "2", "--h", "2", "--len", "2"], ""));
    assert_eq!(doc["A_generators"], serde_json::json!(["beta0_11", "beta0_12", "beta0_21", "beta0_22", "beta1_11", "beta1_12", "beta1_21", "beta1_22"]));
    assert!(doc["eta_R"].is_object());
    let doc = json(&cli(&["moduli", "present", "--p", "2", "--h", "3", "--len", "1"], ""));
    assert!(doc["eta_R"].is_null());
    let doc = json(&cli(&["moduli", "invariant-ideal", "--p", "3", "--h", "2"], ""));
    assert_eq!(doc["unit"], "phi0_22^2");
}

#[test]
fn outputs_are_deterministic() {
    let args = ["moduli", "present", "--p", "3", "--h", "2", "--len", "2"];
    assert_eq!(cli(&args, ""), cli(&args, ""));
}
