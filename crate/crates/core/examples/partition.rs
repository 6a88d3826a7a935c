//! k-way partition with the ratio objective. The default instance is the
//! one where minimising the spread and minimising the ratio disagree.
//!
//!     cargo run --release --example partition

use kratio::{brute_force_kpart, fptas_kpart, ratio, Fraction, Instance};

fn main() -> kratio::Result<()> {
    let raw = [16, 16, 18, 20, 24, 27, 29, 40];
    let a = Instance::new(&raw, 4)?;

    // smallest spread (max - min = 11), positions in sorted order
    let spread_sets = [vec![8], vec![1, 2, 3], vec![5, 6], vec![4, 7]];
    println!("smallest-spread partition: ratio {}", ratio(&spread_sets, a.values())?);

    let opt = brute_force_kpart(&a)?;
    println!("optimal ratio {} with sums {:?}", opt.ratio().reduced(), opt.sums());

    for (n, d) in [(1, 2), (1, 10), (1, 100)] {
        let eps = Fraction::epsilon(n, d)?;
        let s = fptas_kpart(&a, eps)?;
        let groups: Vec<Vec<u64>> = s.original_sets(&a).iter().map(|set| set.iter().map(|&i| raw[i] as u64).collect()).collect();
        println!("fptas eps = {eps:>5}: ratio {:>6} groups {:?}", s.ratio().reduced(), groups);
    }
    Ok(())
}
