//! Parse an expression, differentiate it symbolically and print each order.
//!
//!     cargo run --example derivatives -- "exp(x)*sin(x)" 6

use rollekit::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "exp(x)*sin(x)".to_owned());
    let max: usize = args.next().map_or(Ok(4), |s| s.parse())?;

    let f = parse(&text)?;
    println!("f(x)   = {f}");
    for k in 1..=max {
        let d = f.derivative(k);
        println!("f^({k})  = {d}    [f^({k})(1) = {:.12}]", d.eval(1.0)?);
    }
    Ok(())
}
