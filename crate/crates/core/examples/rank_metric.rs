//! Rank weight, isometries and the support-zeroing transform.

use flrank::fieldtower::{Field, Tower};
use flrank::ranklin::{apply_fq_matrix, hamming_weight, random_invertible, random_rank_vector, rank_weight, zeroing_transform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let tower = Tower::build(2, 16, 2, 7)?;
    let f = tower.fqm();
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let v = random_rank_vector(f, 12, 5, &mut rng)?;
    println!("rank weight {} with Hamming weight {}", rank_weight(f, &v), hamming_weight(f, &v));

    let p = random_invertible(tower.fq(), 12, &mut rng);
    println!("after a random P in GL_12(F_2): {}", rank_weight(f, &apply_fq_matrix(f, &v, &p)));

    let (s, w) = zeroing_transform(f, &v)?;
    let vs = apply_fq_matrix(f, &v, &s);
    let zeros = vs.iter().take_while(|&&x| f.is_zero(x)).count();
    println!("zeroing transform: w = {w}, leading zeros = {zeros}, tail rank = {}", rank_weight(f, &vs[w..]));
    Ok(())
}
