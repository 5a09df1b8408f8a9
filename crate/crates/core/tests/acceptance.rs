use witt_display::acceptance::{run_criterion, CRITERIA};

fn main() {
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA.iter().map(|(id, _)| s.spawn(move || run_criterion(*id))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect::<Vec<_>>()
    });
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
