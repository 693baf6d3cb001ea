//! Scheme validity and attack vulnerability for a few parameter sets.

use flrank::flpke::validate_params;

fn main() {
    println!("   n   k  u   w  valid  t_pub  bound  vulnerable");
    for (n, k, u, w) in [(56, 28, 3, 16), (54, 32, 4, 13), (56, 28, 3, 21), (56, 28, 3, 22), (20, 6, 2, 10), (56, 28, 3, 14)] {
        let r = validate_params(n, n, k, u, w);
        println!(
            "{n:>4} {k:>3} {u:>2} {w:>3}  {:>5}  {:>5}  {:>5}  {}",
            r.valid(),
            r.t_pub,
            r.bound,
            if r.vulnerable { "yes" } else { "no" }
        );
    }
}
