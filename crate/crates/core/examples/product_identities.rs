use tandet::harness::{partner_b, verify_products, HarnessOptions};
use tandet::ntheory::least_nonresidue;

fn main() -> tandet::Result<()> {
    let opts = HarnessOptions::default();
    for p in [7u64, 13] {
        for a in [1, least_nonresidue(p) as i64] {
            for r in verify_products(p, a, Some(partner_b(p, a)), 128, &opts)? {
                let value = r.exact.unwrap_or_default();
                println!("p={p:<2} a={a} ({:<5}) {:<10} {value}", r.claim, r.verdict.to_string());
            }
        }
    }
    Ok(())
}
