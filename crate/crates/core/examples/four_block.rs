//! The smallest four-block instance where fill and width optima part ways.

use chordkit::{exact_tau_phi, generate, FamilySpec, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&"tau:2,3,5".parse::<FamilySpec>()?)?;
    let r = exact_tau_phi(&g, &SolverConfig::default())?;
    assert_eq!((r.mfi, r.tw, r.tau, r.phi), (9, 9, 1, 1));
    println!("mfi={} tw={} tau={} phi={}", r.mfi, r.tw, r.tau, r.phi);
    println!("fill-optimal, width {}: {:?}", r.tw + r.tau, r.tau_witness.as_slice());
    println!("width-optimal, fill {}: {:?}", r.mfi + r.phi, r.phi_witness.as_slice());
    Ok(())
}
