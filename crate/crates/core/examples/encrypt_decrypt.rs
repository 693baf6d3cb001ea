//! Key generation, encryption and decryption at the fl-54 parameters.

use flrank::cli::{pack_message, preset, unpack_message};
use flrank::fieldtower::Tower;
use flrank::flpke::{decrypt, encrypt, keygen_with, KeygenHooks};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let p = preset("fl-54")?;
    let tower = Tower::build(p.q, p.m, p.u, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (pk, sk) = keygen_with(&tower, p.n, p.k, p.w, KeygenHooks::default(), &mut rng)?;
    println!("n = {}, k = {}, w = {}, t_pub = {}", pk.n(), pk.k, pk.w, pk.t_pub);

    let text = b"attack at dawn";
    let msg = pack_message(&pk, text)?;
    let c = encrypt(&pk, &msg, &mut rng)?;
    let back = unpack_message(&pk, &decrypt(&sk, &pk, &c)?)?;
    println!("decrypted: {:?}", String::from_utf8_lossy(&back));
    Ok(())
}
