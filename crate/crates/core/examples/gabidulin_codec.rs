//! Encodes with a Gabidulin code, corrupts with rank errors and decodes.

use flrank::fieldtower::{Field, FqmElem, Tower};
use flrank::gabidulin::{dual_gabidulin, sample_rank_error, GabCode};
use flrank::ranklin::dual_code;
use flrank::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let tower = Tower::build(2, 12, 2, 5)?;
    let f = tower.fqm();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let code = GabCode::random(f, 12, 4, &mut rng)?;
    println!("Gab[12, 4] corrects rank errors up to {}", code.radius());

    for t in 0..=code.radius() + 1 {
        let msg: Vec<FqmElem> = (0..4).map(|_| f.random(&mut rng)).collect();
        let e = sample_rank_error(f, 12, t, &mut rng)?;
        let r: Vec<FqmElem> = code.encode(f, &msg)?.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
        match code.decode(f, &r) {
            Ok((m, e2)) => println!("rank {t}: recovered message {}, error {}", m == msg, e2 == e),
            Err(Error::DecodingFailure) => println!("rank {t}: decoding failure"),
            Err(e) => return Err(e),
        }
    }

    let dual = dual_gabidulin(f, &code)?;
    println!("dual is Gab[12, {}]: {}", dual.k(), dual.code(f) == dual_code(f, &code.code(f)));
    Ok(())
}
