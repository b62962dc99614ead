//! The limit functions: `u(c)` for the component count, `μ(λ)` for the
//! genus per edge and the double integral `λ(i)`.
//!
//! cargo run --release --example series

use genus_lab::asymptotics::{lambda_i, mu, u, u_prime};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>5} {:>14} {:>14} {:>6} {:>9}",
        "c", "u(c)", "u'(c)", "terms", "tail"
    );
    for c in [0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0] {
        let v = u(c, 1e-12)?;
        let d = u_prime(c, 1e-10)?;
        println!(
            "{c:>5} {:>14.10} {:>14.10} {:>6} {:>9.1e}",
            v.value, d.value, v.truncation_index, v.tail_bound
        );
    }

    println!("\n{:>6} {:>12}", "lambda", "mu");
    for lambda in [0.6, 0.75, 1.0, 2.0, 3.0, 10.0, 50.0] {
        println!("{lambda:>6} {:>12.9}", mu(lambda, 1e-10)?.value);
    }

    println!("\n{:>4} {:>14}", "i", "lambda(i)");
    for i in [0.25, 0.5, 1.0, 1.5, 2.0] {
        println!("{i:>4} {:>14.9}", lambda_i(i, 1e-10)?);
    }
    Ok(())
}
