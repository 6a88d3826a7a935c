//! Exhaustive solvers for the four variants on one small instance.
//!
//!     cargo run --example oracle

use kratio::{brute_force_kpart, brute_force_kssr, brute_force_kssrl, brute_force_kssrr, Instance};

fn main() -> kratio::Result<()> {
    let a = Instance::new(&[1, 2, 3, 10], 3)?;
    let show = |name: &str, s: &kratio::Solution| {
        println!("{name:<22} ratio {:>5} sets {:?} sums {:?}", s.ratio().reduced().to_string(), s.sets(), s.sums())
    };
    show("subset-sum ratio", &brute_force_kssr(&a)?);
    show("partition", &brute_force_kpart(&a)?);
    show("largest element used", &brute_force_kssrl(&a)?);
    for p in 1..=a.max_restriction() {
        show(&format!("anchored at p = {p}"), &brute_force_kssrr(&a, p)?);
    }
    Ok(())
}
