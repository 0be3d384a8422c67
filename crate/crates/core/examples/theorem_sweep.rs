use tandet::harness::{verify_theorem, HarnessOptions, SweepParams, TheoremId};

fn main() -> tandet::Result<()> {
    let opts = HarnessOptions::default();
    for id in TheoremId::ALL {
        let (lo, hi) = id.default_range();
        let records = verify_theorem(id, &SweepParams::range(lo, hi), &opts)?;
        let confirmed = records.iter().filter(|r| r.verdict.is_confirmed()).count();
        println!("theorem {id} on {lo}..{hi}: {confirmed}/{} confirmed", records.len());
        for r in records.iter().filter(|r| !r.verdict.is_confirmed()) {
            println!("  {}: {}", r.subject_label(), r.verdict);
        }
    }
    Ok(())
}
