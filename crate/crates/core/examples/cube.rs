use reclab::systems::{SystemPoint, SystemSpec, TorusScalar};
use reclab::witness::cube_sample;

fn show(p: &SystemPoint) -> String {
    match p {
        SystemPoint::Torus(c) => format!("({})", c.iter().map(TorusScalar::to_string).collect::<Vec<_>>().join(", ")),
        other => format!("{other:?}"),
    }
}

fn main() -> reclab::Result<()> {
    let sys = SystemSpec::WeylAffine { d: 2, alpha: TorusScalar::rational(1, 4) };
    let cube = cube_sample(&sys, &sys.origin(), 2, &[1, 2])?;
    for (mask, p) in cube.entries.iter().enumerate() {
        println!("ε = ({}, {}): T^(n·ε) x = {}", mask & 1, mask >> 1 & 1, show(p));
    }
    Ok(())
}
