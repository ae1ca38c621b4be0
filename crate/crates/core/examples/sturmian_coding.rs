//! Sturmian codings of the golden rotation and their factor complexity.

use reclab::systems::{factor_count, sturmian_code, SystemSpec, TorusScalar};

fn main() -> reclab::Result<()> {
    let sys = SystemSpec::Sturmian { alpha: TorusScalar::golden(), base: TorusScalar::rational(1, 10) };
    let word = sturmian_code(&sys, 0, 39)?;
    println!("first 40 symbols: {}", word.to_bit_string());

    let long = sturmian_code(&sys, 0, 9_999)?;
    let symbols = long.certain()?;
    for len in 1..=8 {
        println!("factors of length {len}: {}", factor_count(symbols, len));
    }
    Ok(())
}
