//! Prime-field arithmetic: the primitive element of GF(71) and the
//! order-14 element that generates the STS code.

use ota_signaling::gf::{make_field, GfOp};

fn main() -> ota_signaling::Result<()> {
    let field = make_field(71)?;
    let alpha = field.alpha();
    println!(
        "GF({}) primitive element alpha = {}",
        field.modulus(),
        alpha.value()
    );
    println!("order(alpha) = {}", alpha.mult_order()?);

    let beta = alpha.pow(field.group_order() / 14);
    println!(
        "beta = alpha^5 = {}, order {}",
        beta.value(),
        beta.mult_order()?
    );
    let powers: Vec<u64> = (0..14).map(|n| beta.pow(n).value()).collect();
    println!("beta^0..beta^13 = {powers:?}");

    let a = field.element(51);
    let b = field.element(30);
    for op in [GfOp::Add, GfOp::Sub, GfOp::Mul, GfOp::Div] {
        println!("51 {op:?} 30 = {}", a.checked(op, &b)?.value());
    }
    println!("1/51 = {}", a.inverse()?.value());
    match field.zero().inverse() {
        Ok(_) => unreachable!(),
        Err(e) => println!("1/0 -> error: {e}"),
    }

    assert!(make_field(72).is_err());
    Ok(())
}
