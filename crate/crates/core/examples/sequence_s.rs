use tandet::harness::{sequence_s, HarnessOptions};

fn main() -> tandet::Result<()> {
    for r in sequence_s(15, &HarnessOptions::default())? {
        let v = r.value.map(|v| v.to_string()).unwrap_or_else(|| "uncertified".into());
        println!("s_{:<2} = {v:>12}  ({:?})", r.n, r.source);
    }
    Ok(())
}
