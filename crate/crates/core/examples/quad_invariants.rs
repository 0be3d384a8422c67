use tandet::quadfield::{class_number_imag, mordell_prediction, mordell_sign, QuadInvariants};

fn main() -> tandet::Result<()> {
    for p in [5u64, 13, 29, 41] {
        let inv = QuadInvariants::compute(p)?;
        let eps = inv
            .eps
            .as_ref()
            .map(|e| format!("({} + {}√{p})/2", e.u, e.v))
            .unwrap_or_default();
        println!("p={p:<3} h(p)={:?}  eps={eps}", inv.h_plus);
    }
    for p in [7u64, 11, 19, 23, 31, 43] {
        println!(
            "p={p:<3} h(-p)={}  ((p-1)/2)! = {} mod p (predicted {})",
            class_number_imag(p)?,
            mordell_sign(p)?.value(),
            mordell_prediction(p)?.value()
        );
    }
    Ok(())
}
