//! Windowed FPTAS: only the `C` largest elements up to each index are kept.
//! Prints the window width for a few accuracies and solves a sparse input
//! where the windows are much smaller than `n`.
//!
//!     cargo run --release --example fast_fptas

use kratio::fast_fptas::window_size;
use kratio::{fast_fptas_kssr, fptas_kssr, Fraction, Instance};

fn main() -> kratio::Result<()> {
    for k in [2, 3] {
        for (n, d) in [(9, 10), (1, 2), (1, 4)] {
            let inner = Fraction::epsilon(n, d)?.div_int(3)?;
            let w = window_size(k, inner)?;
            println!("k = {k}, eps = {n}/{d}: c = {}, window width C = {}", w.c, w.width);
        }
    }

    // powers of two plus a few near-duplicates: good solutions sit high up
    let mut raw: Vec<i64> = (0..24).map(|i| 1i64 << i).collect();
    raw.extend([3 << 20, 5 << 19, (1 << 22) + 1]);
    let a = Instance::new(&raw, 2)?;
    let eps = Fraction::epsilon(9, 10)?;
    let t = std::time::Instant::now();
    let fast = fast_fptas_kssr(&a, eps)?;
    let fast_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = std::time::Instant::now();
    let full = fptas_kssr(&a, eps)?;
    let full_ms = t.elapsed().as_secs_f64() * 1e3;
    println!("n = {}: windowed ratio {:.6} [{fast_ms:.0} ms], full ratio {:.6} [{full_ms:.0} ms]", a.n(), fast.ratio().to_f64(), full.ratio().to_f64());
    Ok(())
}
