//! Builds the field tower F_2 ⊂ F_2^8 ⊂ L and exercises its operations.

use flrank::fieldtower::{coords, dual_basis, Basis, Field, Tower};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flrank::Result<()> {
    let tower = Tower::build(2, 8, 3, 42)?;
    let (f, l) = (tower.fqm(), tower.l());
    println!("mod_fqm = {:?}", tower.params().mod_fqm.iter().map(|c| c.0).collect::<Vec<_>>());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = f.random_nonzero(&mut rng);
    let b = f.random(&mut rng);
    println!("a = {:#x}, b = {:#x}, a*b = {:#x}, a^-1 = {:#x}", a.0, b.0, f.mul(a, b).0, f.inv(a)?.0);
    println!("frobenius(a, 8) == a: {}", f.frobenius(a, 8) == a);
    println!("Tr(a) = {}", f.trace(a).0);

    let x = l.random(&mut rng);
    println!("Tr_L(x) = {:#x}, Tr_L(x^(2^8)) = {:#x}", l.trace(x).0, l.trace(l.frobenius_qm(x, 1)).0);

    let basis = Basis::new(l, (0..3).map(|_| l.random(&mut rng)).collect());
    let dual = dual_basis(l, &basis)?;
    let c = coords(l, x, &basis)?;
    let back = c.iter().zip(&basis.elems).fold(l.zero(), |acc, (&ci, &bi)| l.add(acc, l.scale_fqm(bi, ci)));
    println!("dual basis found ({} elements), reconstruction ok: {}", dual.len(), back == x);
    Ok(())
}
