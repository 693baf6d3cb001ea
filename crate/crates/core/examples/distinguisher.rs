//! Compares dim Λ_i for Gabidulin codes and random codes.

use flrank::attack::distinguisher_report;
use flrank::fieldtower::{Field, Tower};
use flrank::gabidulin::GabCode;
use flrank::matrix::Matrix;
use flrank::ranklin::LinearCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let (n, k) = (24, 6);
    let tower = Tower::build(2, n, 2, 1)?;
    let f = tower.fqm();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    let gab = GabCode::random(f, n, k, &mut rng)?.code(f);
    let data = (0..n * k).map(|_| f.random(&mut rng)).collect();
    let random = LinearCode::from_generator(f, &Matrix::from_vec(k, n, data));

    println!("i  gabidulin  random");
    let a = distinguisher_report(f, &gab, 6);
    let b = distinguisher_report(f, &random, 6);
    for ((i, dg), (_, dr)) in a.into_iter().zip(b) {
        println!("{i:<2} {dg:>9}  {dr:>6}");
    }
    Ok(())
}
