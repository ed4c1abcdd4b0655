//! Entanglement distance of Dicke states: closed form against an explicit
//! qubit statevector.
//!
//!     cargo run --example dicke_entanglement

use dicke_control::entanglement::{
    dicke_statevector, entanglement_distance_dicke, entanglement_distance_pure, DickeIndex,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>3} {:>14} {:>14}", "M", "n", "closed form", "statevector");
    for m in [2usize, 3, 4, 6, 9] {
        for n in 0..=m {
            let idx = DickeIndex::new(m, n)?;
            let closed = entanglement_distance_dicke(idx);
            let sv = entanglement_distance_pure(&dicke_statevector(idx)?)?;
            println!("{m:>3} {n:>3} {closed:>14.10} {sv:>14.10}");
        }
    }

    let big = DickeIndex::new(65, 33)?;
    println!("\nM = 65, n = 33: ED = {:.12}", entanglement_distance_dicke(big));
    Ok(())
}
