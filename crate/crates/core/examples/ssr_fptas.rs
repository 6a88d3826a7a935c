//! Subset-sum-ratio FPTAS at several accuracies, checked against exhaustive
//! search.
//!
//!     cargo run --release --example ssr_fptas

use kratio::{brute_force_kssr, fptas_kssr, Fraction, Instance};

fn main() -> kratio::Result<()> {
    let a = Instance::new(&[97, 13, 58, 41, 77, 26, 64, 88, 35, 19], 3)?;
    let opt = brute_force_kssr(&a)?;
    println!("values {:?}, k = 3", a.values());
    println!("optimum: ratio {} sums {:?}", opt.ratio().reduced(), opt.sums());
    for (n, d) in [(1, 2), (1, 4), (1, 10), (1, 50)] {
        let eps = Fraction::epsilon(n, d)?;
        let t = std::time::Instant::now();
        let s = fptas_kssr(&a, eps)?;
        println!(
            "eps = {eps:>4}: ratio {:>8} ({:.5}) sums {:?} within bound: {} [{:.1} ms]",
            s.ratio().reduced(),
            s.ratio().to_f64(),
            s.sums(),
            s.ratio().within_factor_of(&opt.ratio(), eps),
            t.elapsed().as_secs_f64() * 1e3
        );
    }
    Ok(())
}
