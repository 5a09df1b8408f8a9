use witt_display::cli::{run, CACHE_ENV};
use witt_display::witt::table::{generate_universal_polynomials, UniversalPolynomialTable, WittOp};

#[test]
fn universal_polynomial_cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let args = ["witt", "mul", "--p", "3", "--ring", "Z/27", "--x", "[1, 2, 3]", "--y", "[2, 0, 1]"];
    let first = run(&args, &mut "".as_bytes());
    assert_eq!(first.code, 0, "{}", first.stderr);
    let path = dir.path().join("universal-p3.json");
    let loaded = UniversalPolynomialTable::load_json(&path).unwrap();
    let live = generate_universal_polynomials(3, loaded.len() - 1).unwrap();
    for op in WittOp::ALL {
        assert_eq!(loaded.polys(op)[..loaded.len()], live.polys(op)[..loaded.len()]);
    }
    let copy = dir.path().join("copy.json");
    loaded.save_json(&copy).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&copy).unwrap());
    let second = run(&args, &mut "".as_bytes());
    assert_eq!(first, second);
}
