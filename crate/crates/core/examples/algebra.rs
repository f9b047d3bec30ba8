//! Pauli-string arithmetic: products, commutators, coherence blocks and the text format.

use num_complex::Complex64 as C64;
use prethermal::algebra::{collective, dipolar, Axis, CouplingProfile, OperatorSum, PauliString};

fn main() -> prethermal::Result<()> {
    let len = 6;
    let z = collective(Axis::Z, len)?;
    let dz = dipolar(Axis::Z, len, CouplingProfile::NearestNeighbor)?;
    let dy = dipolar(Axis::Y, len, CouplingProfile::NearestNeighbor)?;

    println!("[Z, D_z] = 0: {}", z.commutator(&dz)?.is_zero());
    let c = z.commutator(&dy)?;
    println!("[Z, D_y] has {} terms, range {}, norm {:.6}", c.num_terms(), c.cyclic_range(), c.norm());
    println!("<D_z, D_y> = {}", dz.inner_product(&dy)?);

    for (q, block) in dy.coherence_decompose() {
        println!("coherence {q:+}: {} terms, norm {:.6}", block.num_terms(), block.norm());
    }

    let (phase, p) = PauliString::multiply(&"XZ".parse()?, &"YY".parse()?)?;
    println!("XZ * YY = ({phase}) {p}");

    let a = OperatorSum::from_string("XIZ".parse()?, C64::new(0.5, 0.0));
    let b = OperatorSum::from_string("YII".parse()?, C64::new(0.0, 1.0));
    let text = a.product(&(&a + &b))?.to_text();
    print!("{text}");
    assert_eq!(OperatorSum::from_text(&text)?.to_text(), text);
    Ok(())
}
