use std::io::Write;

fn main() {
    // MONOID_GROWTH_THREADS pins the rayon pool size; unset means one
    // thread per core.
    if let Ok(threads) = std::env::var("MONOID_GROWTH_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = monoid_growth::cli::run(&argv, &mut stdout.lock(), &mut stderr.lock());
    let _ = stdout.lock().flush();
    std::process::exit(code);
}
