//! Exact anchored solver: for every anchor `p` prints the best solution with
//! `max(S_1) = p`, then the overall optimum (the best anchor).
//!
//!     cargo run --example exact_restricted -- 3 8 9 14 20 21 33

use kratio::{brute_force_kssr, DpStats, Instance};

fn main() -> anyhow::Result<()> {
    let raw: Vec<i64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let raw = if raw.is_empty() { vec![3, 8, 9, 14, 20, 21, 33] } else { raw };
    for k in [2, 3] {
        let a = Instance::new(&raw, k)?;
        println!("k = {k}, sorted values {:?}", a.values());
        let mut best = None;
        for p in 1..=a.max_restriction() {
            let stats = DpStats::new();
            let s = kratio::ssr_exact::exact_kssrr_with(&a, p, Some(&stats))?;
            println!("  p = {p:>2}: ratio {:>7} sums {:?} sets {:?} (peak row {})", s.ratio().reduced(), s.sums(), s.sets(), stats.peak_states());
            if best.as_ref().is_none_or(|b: &kratio::Solution| s.ratio() < b.ratio()) {
                best = Some(s);
            }
        }
        let best = best.expect("at least one anchor");
        println!("  optimum ratio {} = {:.5}", best.ratio().reduced(), best.ratio().to_f64());
        if a.n() <= 12 {
            println!("  exhaustive search agrees: {}", brute_force_kssr(&a)?.ratio() == best.ratio());
        }
    }
    Ok(())
}
