//! Generates keys for both published parameter sets and recovers an
//! equivalent private key from the public key alone.

use flrank::attack::{recover_key, verify_equivalent_key};
use flrank::fieldtower::Tower;
use flrank::flpke::{keygen_with, KeygenHooks};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() -> flrank::Result<()> {
    for (name, n, k, u, w) in [("fl-56", 56, 28, 3, 16), ("fl-54", 54, 32, 4, 13)] {
        let t0 = Instant::now();
        let tower = Tower::build(2, n, u, 1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (pk, sk) = keygen_with(&tower, n, k, w, KeygenHooks::default(), &mut rng)?;
        let setup = t0.elapsed();
        let res = recover_key(&pk)?;
        println!(
            "{name}: setup {:?}, attack {:?}, dual dim {}, verified {}, x matches {}",
            setup,
            res.elapsed,
            res.dual_dim,
            verify_equivalent_key(&pk, &res),
            res.x == sk.x
        );
    }
    Ok(())
}
