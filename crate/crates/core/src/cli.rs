//! Command implementations behind the `flpke` binary.

use crate::attack::{self, ReportRow, REPORT_HEADER};
use crate::error::{Error, Result};
use crate::fieldtower::{Field, FqmElem, Fqm, Tower};
use crate::flpke::{self, KeygenHooks, PublicKey};
use crate::gabidulin::GabCode;
use crate::matrix::Matrix;
use crate::ranklin::{self, LinearCode};
use crate::serial;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

/// A named parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamPreset {
    pub name: &'static str,
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub u: usize,
    pub w: usize,
}

pub const PRESETS: [ParamPreset; 2] = [
    ParamPreset { name: "fl-56", q: 2, m: 56, n: 56, k: 28, u: 3, w: 16 },
    ParamPreset { name: "fl-54", q: 2, m: 54, n: 54, k: 32, u: 4, w: 13 },
];

pub fn preset(name: &str) -> Result<ParamPreset> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .copied()
        .ok_or_else(|| Error::ParamViolation(format!("unknown preset {name:?} (known: fl-56, fl-54)")))
}

/// Parameters scaled from `n`: k = n/2, u = 3, w = round(2n/7).
pub fn scaled_params(n: usize) -> ParamPreset {
    ParamPreset { name: "scaled", q: 2, m: n, n, k: n / 2, u: 3, w: (2 * n + 3) / 7 }
}

/// Bytes that fit in one plaintext.
pub fn message_capacity(pk: &PublicKey) -> usize {
    pk.k.saturating_sub(pk.tower.u() + 1) * pk.tower.m() / 8
}

/// Coordinate 0 carries the byte length in its digits (LSB first); the
/// bytes follow MSB-first, one bit per digit, through coordinates
/// 1 .. k - u - 1. The last u coordinates stay zero.
pub fn pack_message(pk: &PublicKey, bytes: &[u8]) -> Result<Vec<FqmElem>> {
    let f = pk.tower.fqm();
    let m = f.m();
    let cap = message_capacity(pk);
    if bytes.len() > cap || (bytes.len() as u128) >> m.min(127) != 0 {
        return Err(Error::MessageTooLong { len: bytes.len(), cap });
    }
    let mut digits = vec![0u32; pk.k * m];
    for (i, d) in digits[..m].iter_mut().enumerate() {
        *d = (bytes.len() >> i & 1) as u32;
    }
    for (j, &b) in bytes.iter().enumerate() {
        for bit in 0..8 {
            digits[m + 8 * j + bit] = (b >> (7 - bit) & 1) as u32;
        }
    }
    Ok(digits
        .chunks(m)
        .map(|c| f.pack(&c.iter().map(|&v| crate::fieldtower::FqElem(v)).collect::<Vec<_>>()))
        .collect())
}

pub fn unpack_message(pk: &PublicKey, msg: &[FqmElem]) -> Result<Vec<u8>> {
    let f = pk.tower.fqm();
    let m = f.m();
    let digits: Vec<u32> = msg.iter().flat_map(|&x| f.digits(x)).map(|d| d.0).collect();
    if digits.iter().any(|&d| d > 1) {
        return Err(Error::Parse("plaintext digits outside {0, 1}".into()));
    }
    let len = digits[..m.min(63)].iter().enumerate().fold(0usize, |acc, (i, &d)| acc | (d as usize) << i);
    let cap = message_capacity(pk);
    if len > cap {
        return Err(Error::MessageTooLong { len, cap });
    }
    Ok((0..len)
        .map(|j| (0..8).fold(0u8, |acc, bit| acc << 1 | digits[m + 8 * j + bit] as u8))
        .collect())
}

#[derive(Parser, Debug)]
#[command(name = "flpke", version, about = "Rank-metric encryption and its key-recovery attack")]
pub struct Cli {
    /// RNG seed; every command is deterministic for a fixed seed.
    #[arg(long, env = "FLPKE_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message file.
    #[command(long_about = "Encrypt a message file.\n\n\
        The first plaintext coordinate holds the byte length; the bytes follow \
        MSB-first, one bit per F_q coefficient, through the next k-u-1 \
        coordinates, zero-padded. The last u coordinates are zero.")]
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext with the private key.
    Decrypt(DecryptArgs),
    /// Recover an equivalent private key from a public key.
    Attack(AttackArgs),
    /// Print dim Λ_i for a code.
    Distinguish(DistinguishArgs),
    /// Time the attack across code lengths.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    /// Named parameter set (fl-56 or fl-54).
    #[arg(long, conflicts_with_all = ["q", "m", "n", "k", "u", "w"])]
    pub preset: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Extension degree; defaults to n.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    pub k: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    pub u: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    pub w: Option<usize>,
    /// Public and private key paths.
    #[arg(long, num_args = 2, value_names = ["PK", "SK"], required = true)]
    pub out: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EncryptArgs {
    #[arg(long)]
    pub pk: PathBuf,
    #[arg(long)]
    pub msg: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Rank weight of the error; defaults to t_pub.
    #[arg(long)]
    pub weight: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DecryptArgs {
    #[arg(long)]
    pub sk: PathBuf,
    #[arg(long)]
    pub pk: PathBuf,
    #[arg(long)]
    pub ct: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct AttackArgs {
    #[arg(long)]
    pub pk: PathBuf,
    /// Recovered key output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append a CSV row (writing the header for a new file).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Private key to compare the recovered x against.
    #[arg(long)]
    pub known_sk: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistinguishArgs {
    /// Random Gabidulin code of length N and dimension K.
    #[arg(long, num_args = 2, value_names = ["N", "K"], group = "source")]
    pub gabidulin: Option<Vec<usize>>,
    /// Uniformly random code of length N and dimension K.
    #[arg(long, num_args = 2, value_names = ["N", "K"], group = "source")]
    pub random: Option<Vec<usize>>,
    /// Code file.
    #[arg(long, group = "source")]
    pub code: Option<PathBuf>,
    /// Public code of a public key.
    #[arg(long, group = "source")]
    pub public_key: Option<PathBuf>,
    /// Extension degree for generated codes; defaults to N.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub max_i: usize,
    /// Write the generator matrix as a hex dump.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [20usize, 28, 40, 56])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_public(path: &Path) -> Result<PublicKey> {
    serial::parse_document(&read(path)?)?.public_key()
}

fn tower_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f7e57)
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Keygen(a) => keygen(a, seed, out),
        Command::Encrypt(a) => encrypt(a, seed, out),
        Command::Decrypt(a) => decrypt(a, out),
        Command::Attack(a) => attack(a, out),
        Command::Distinguish(a) => distinguish(a, seed, out),
        Command::Bench(a) => bench(a, seed, out),
    }
}

fn keygen(a: KeygenArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let p = match &a.preset {
        Some(name) => preset(name)?,
        None => {
            let n = a.n.unwrap_or(0);
            ParamPreset {
                name: "custom",
                q: a.q,
                m: a.m.unwrap_or(n),
                n,
                k: a.k.unwrap_or(0),
                u: a.u.unwrap_or(0),
                w: a.w.unwrap_or(0),
            }
        }
    };
    let report = flpke::validate_params(p.m, p.n, p.k, p.u, p.w);
    if let Some(v) = report.first_violation() {
        return Err(Error::ParamViolation(format!("{v} fails for (n, k, u, w) = ({}, {}, {}, {})", p.n, p.k, p.u, p.w)));
    }
    let tower = Tower::build(p.q, p.m, p.u, seed)?;
    let mut rng = tower_rng(seed);
    let (pk, sk) = flpke::keygen_with(&tower, p.n, p.k, p.w, KeygenHooks::default(), &mut rng)?;
    write(&a.out[0], serial::write_public(&pk).as_bytes())?;
    write(&a.out[1], serial::write_private(&pk, &sk).as_bytes())?;
    let verdict = if report.vulnerable {
        format!("yes ({} ≤ {})", p.w, report.bound)
    } else {
        format!("no ({} > {})", p.w, report.bound)
    };
    writeln!(out, "params: q={} m={} n={} k={} u={} w={}", p.q, p.m, p.n, p.k, p.u, p.w)?;
    writeln!(out, "rank_weight(z): {}", ranklin::rank_weight(tower.l(), &sk.z))?;
    writeln!(out, "t_pub: {}", pk.t_pub)?;
    writeln!(out, "vulnerable: {verdict}")?;
    Ok(())
}

fn encrypt(a: EncryptArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let pk = read_public(&a.pk)?;
    let bytes = fs::read(&a.msg).map_err(|e| Error::Io(format!("{}: {e}", a.msg.display())))?;
    let msg = pack_message(&pk, &bytes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = a.weight.unwrap_or(pk.t_pub);
    let c = flpke::encrypt_with_weight(&pk, &msg, weight, &mut rng)?;
    write(&a.out, serial::write_ciphertext(&pk, &c).as_bytes())?;
    writeln!(out, "encrypted {} bytes with error weight {weight}", bytes.len())?;
    Ok(())
}

fn decrypt(a: DecryptArgs, out: &mut dyn Write) -> Result<()> {
    let pk = read_public(&a.pk)?;
    let sk = serial::parse_document(&read(&a.sk)?)?.private_key()?;
    let doc = serial::parse_document(&read(&a.ct)?)?;
    if doc.tower != pk.tower || doc.header.n != pk.n() {
        return Err(Error::Parse("ciphertext does not match the public key parameters".into()));
    }
    let c = doc.ciphertext()?;
    let msg = flpke::decrypt(&sk, &pk, &c)?;
    let bytes = unpack_message(&pk, &msg)?;
    write(&a.out, &bytes)?;
    writeln!(out, "decrypted {} bytes", bytes.len())?;
    Ok(())
}

fn attack(a: AttackArgs, out: &mut dyn Write) -> Result<()> {
    let pk = read_public(&a.pk)?;
    let start = Instant::now();
    let outcome = attack::recover_key(&pk);
    let elapsed = start.elapsed();
    let row = ReportRow::new(&pk, &outcome, elapsed);
    if let Some(path) = &a.report {
        let mut text = if path.exists() { read(path)? } else { format!("{REPORT_HEADER}\n") };
        text.push_str(&row.to_csv());
        text.push('\n');
        write(path, text.as_bytes())?;
    }
    writeln!(out, "bound: {}", row.bound)?;
    writeln!(out, "dual_dim: {}", row.dual_dim)?;
    writeln!(out, "elapsed_ms: {}", row.elapsed_ms)?;
    let res = outcome?;
    writeln!(out, "lambda_dim: {}", res.lambda_dim)?;
    writeln!(out, "verified: {}", row.verified)?;
    if let Some(path) = &a.out {
        write(path, serial::write_recovered(&pk, &res).as_bytes())?;
    }
    if let Some(path) = &a.known_sk {
        let sk = serial::parse_document(&read(path)?)?.private_key()?;
        let matches = sk.x == res.x;
        writeln!(out, "known_sk: {}", if matches { "match" } else { "mismatch" })?;
        if !matches {
            return Err(Error::ParamViolation("recovered x differs from the planted x".into()));
        }
    }
    if !row.verified {
        return Err(Error::ParamViolation("recovered key failed verification".into()));
    }
    Ok(())
}

fn random_code_matrix(f: &Fqm, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Matrix<FqmElem> {
    Matrix::from_vec(k, n, (0..k * n).map(|_| f.random(rng)).collect())
}

fn distinguish(a: DistinguishArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generated = |nk: &[usize]| -> Result<(usize, usize, Tower)> {
        let (n, k) = (nk[0], nk[1]);
        if k == 0 || k > n {
            return Err(Error::ParamViolation(format!("need 0 < k <= n, got n = {n}, k = {k}")));
        }
        Ok((n, k, Tower::build(2, a.m.unwrap_or(n), 2, seed)?))
    };
    let (tower, gen) = if let Some(nk) = &a.gabidulin {
        let (n, k, tower) = generated(nk)?;
        let code = GabCode::random(tower.fqm(), n, k, &mut tower_rng(seed))?;
        let g = code.gen_matrix(tower.fqm());
        (tower, g)
    } else if let Some(nk) = &a.random {
        let (n, k, tower) = generated(nk)?;
        let g = random_code_matrix(tower.fqm(), n, k, &mut rng);
        (tower, g)
    } else if let Some(path) = &a.code {
        let doc = serial::parse_document(&read(path)?)?;
        let g = doc.code()?;
        (doc.tower, g)
    } else if let Some(path) = &a.public_key {
        let pk = read_public(path)?;
        let bundle = attack::build_public_code(&pk, &crate::fieldtower::Basis::power(pk.tower.l()))?;
        (pk.tower.clone(), bundle.g_pub)
    } else {
        return Err(Error::ParamViolation(
            "one of --gabidulin, --random, --code or --public-key is required".into(),
        ));
    };
    let f = tower.fqm();
    let code = LinearCode::from_generator(f, &gen);
    if let Some(path) = &a.dump {
        write(path, serial::dump_matrix(f, code.generator()).as_bytes())?;
    }
    writeln!(out, "i,dim")?;
    for (i, d) in attack::distinguisher_report(f, &code, a.max_i) {
        writeln!(out, "{i},{d}")?;
    }
    Ok(())
}

/// Timing of the attack at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub params: ParamPreset,
    pub median: Duration,
    pub min: Duration,
    pub successes: usize,
    pub reps: usize,
}

pub const BENCH_HEADER: &str = "n,k,u,w,reps,successes,median_ms,min_ms";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{:.3},{:.3}",
            p.n,
            p.k,
            p.u,
            p.w,
            self.reps,
            self.successes,
            self.median.as_secs_f64() * 1e3,
            self.min.as_secs_f64() * 1e3
        )
    }
}

/// Median attack time over `reps` fresh keys at each size.
pub fn bench_sizes(sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let reps = reps.max(1);
    let mut rows = Vec::new();
    for &n in sizes {
        let p = scaled_params(n);
        let tower = Tower::build(p.q, p.m, p.u, seed)?;
        let mut rng = tower_rng(seed ^ n as u64);
        let mut times = Vec::with_capacity(reps);
        let mut successes = 0;
        for _ in 0..reps {
            let (pk, _) = flpke::keygen_with(&tower, p.n, p.k, p.w, KeygenHooks::default(), &mut rng)?;
            let start = Instant::now();
            let ok = attack::recover_key(&pk).is_ok_and(|r| attack::verify_equivalent_key(&pk, &r));
            times.push(start.elapsed());
            successes += ok as usize;
        }
        times.sort();
        rows.push(BenchRow { params: p, median: times[reps / 2], min: times[0], successes, reps });
    }
    Ok(rows)
}

fn bench(a: BenchArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let rows = bench_sizes(&a.sizes, a.reps, seed)?;
    let mut text = format!("{BENCH_HEADER}\n");
    for r in &rows {
        text.push_str(&r.to_csv());
        text.push('\n');
    }
    match &a.out {
        Some(path) => write(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
