//! Writes keys, a ciphertext and a recovered key to disk and reads them back.

use flrank::attack::recover_key;
use flrank::fieldtower::Tower;
use flrank::flpke::{encrypt, keygen_with, KeygenHooks};
use flrank::cli::pack_message;
use flrank::serial::{self, parse_document};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let dir = std::env::temp_dir().join("flrank-key-files");
    std::fs::create_dir_all(&dir)?;
    let tower = Tower::build(2, 24, 3, 9)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (pk, sk) = keygen_with(&tower, 24, 10, 8, KeygenHooks::default(), &mut rng)?;
    let c = encrypt(&pk, &pack_message(&pk, b"files")?, &mut rng)?;
    let rec = recover_key(&pk)?;

    let files = [
        ("pk.fl", serial::write_public(&pk)),
        ("sk.fl", serial::write_private(&pk, &sk)),
        ("ct.fl", serial::write_ciphertext(&pk, &c)),
        ("rec.fl", serial::write_recovered(&pk, &rec)),
    ];
    for (name, text) in &files {
        std::fs::write(dir.join(name), text)?;
        println!("{name}: {} bytes", text.len());
    }

    let pk2 = parse_document(&std::fs::read_to_string(dir.join("pk.fl"))?)?.public_key()?;
    let sk2 = parse_document(&std::fs::read_to_string(dir.join("sk.fl"))?)?.private_key()?;
    let c2 = parse_document(&std::fs::read_to_string(dir.join("ct.fl"))?)?.ciphertext()?;
    println!("round trip: {}", pk2 == pk && sk2 == sk && c2 == c);
    println!("written to {}", dir.display());
    Ok(())
}
