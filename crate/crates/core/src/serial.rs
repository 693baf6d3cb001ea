//! Line-oriented text format for keys, ciphertexts, recovered keys and codes.
//!
//! ```text
//! FLPKE v1
//! q m u n k w
//! kind=public
//! mod_fqm=<hex>
//! mod_L=<hex>
//! g=<hex>
//! ...
//! ```
//!
//! Every value is the concatenated coefficient stream of its elements
//! (F_q^m elements as m digits, L elements as u blocks of m digits, constant
//! term first, matrices row-major), packed LSB-first at ⌈log2 q⌉ bits per
//! digit and written as lowercase hex.

use crate::attack::AttackResult;
use crate::error::{Error, Result};
use crate::fieldtower::{Field, FqElem, Fqm, FqmElem, LElem, LField, Tower, TowerParams};
use crate::flpke::{self, PrivateKey, PublicKey};
use crate::matrix::Matrix;
use crate::ranklin;
use std::fmt::Write as _;
use std::time::Duration;

pub const MAGIC: &str = "FLPKE v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Public,
    Private,
    Ciphertext,
    Recovered,
    Code,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Public => "public",
            Kind::Private => "private",
            Kind::Ciphertext => "ciphertext",
            Kind::Recovered => "recovered",
            Kind::Code => "code",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "public" => Kind::Public,
            "private" => Kind::Private,
            "ciphertext" => Kind::Ciphertext,
            "recovered" => Kind::Recovered,
            "code" => Kind::Code,
            _ => return Err(Error::Parse(format!("unknown kind {s:?}"))),
        })
    }
}

/// The `q m u n k w` line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub q: u32,
    pub m: usize,
    pub u: usize,
    pub n: usize,
    pub k: usize,
    pub w: usize,
}

/// A parsed file before interpretation.
#[derive(Clone, Debug)]
pub struct Document {
    pub header: Header,
    pub kind: Kind,
    pub tower: Tower,
    fields: Vec<(String, String)>,
}

fn digit_bits(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

/// Packs digits LSB-first and renders lowercase hex.
pub fn encode_digits(q: u32, digits: &[u32]) -> String {
    let bits = digit_bits(q) as usize;
    let mut bytes = vec![0u8; (digits.len() * bits).div_ceil(8)];
    for (i, &d) in digits.iter().enumerate() {
        for b in 0..bits {
            if d >> b & 1 == 1 {
                let pos = i * bits + b;
                bytes[pos / 8] |= 1 << (pos % 8);
            }
        }
    }
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Inverse of [`encode_digits`] for exactly `count` digits.
pub fn decode_digits(q: u32, hex: &str, count: usize) -> Result<Vec<u32>> {
    let bits = digit_bits(q) as usize;
    let nbytes = (count * bits).div_ceil(8);
    if !hex.is_ascii() || hex.len() != 2 * nbytes {
        return Err(Error::Parse(format!("expected {} hex characters, found {}", 2 * nbytes, hex.len())));
    }
    let bytes = (0..nbytes)
        .map(|i| u8::from_str_radix(&hex[2 * i..2 * i + 2], 16))
        .collect::<std::result::Result<Vec<u8>, _>>()
        .map_err(|e| Error::Parse(format!("bad hex: {e}")))?;
    let bit = |pos: usize| (bytes[pos / 8] >> (pos % 8)) & 1;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let d = (0..bits).fold(0u32, |acc, b| acc | (bit(i * bits + b) as u32) << b);
        if d >= q {
            return Err(Error::Parse(format!("digit {d} out of range for q = {q}")));
        }
        out.push(d);
    }
    if (count * bits..nbytes * 8).any(|p| bit(p) != 0) {
        return Err(Error::Parse("nonzero padding bits".into()));
    }
    Ok(out)
}

fn fqm_digits(f: &Fqm, v: &[FqmElem]) -> Vec<u32> {
    v.iter().flat_map(|&x| f.digits(x)).map(|d| d.0).collect()
}

fn l_digits(l: &LField, v: &[LElem]) -> Vec<u32> {
    v.iter().flat_map(|&x| l.prime_coords(x)).map(|d| d.0).collect()
}

/// One-element-per-cell hex dump of a matrix, one row per line.
pub fn dump_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>) -> String {
    let q = f.prime_field().q();
    let mut out = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = m
            .row(r)
            .iter()
            .map(|&x| encode_digits(q, &f.prime_coords(x).iter().map(|d| d.0).collect::<Vec<_>>()))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

struct Writer {
    out: String,
    q: u32,
}

impl Writer {
    fn new(tower: &Tower, n: usize, k: usize, w: usize, kind: Kind) -> Self {
        let p = tower.params();
        let mut out = format!("{MAGIC}\n{} {} {} {n} {k} {w}\nkind={}\n", p.q, p.m, p.u, kind.name());
        let fq_digits: Vec<u32> = p.mod_fqm.iter().map(|d| d.0).collect();
        let _ = writeln!(out, "mod_fqm={}", encode_digits(p.q, &fq_digits));
        let _ = writeln!(out, "mod_L={}", encode_digits(p.q, &fqm_digits(tower.fqm(), &p.mod_l)));
        Writer { out, q: p.q }
    }

    fn field(&mut self, name: &str, digits: &[u32]) {
        let _ = writeln!(self.out, "{name}={}", encode_digits(self.q, digits));
    }

    fn plain(&mut self, name: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{name}={value}");
    }
}

pub fn write_public(pk: &PublicKey) -> String {
    let mut w = Writer::new(&pk.tower, pk.n(), pk.k, pk.w, Kind::Public);
    w.field("g", &fqm_digits(pk.tower.fqm(), &pk.g));
    w.field("K", &l_digits(pk.tower.l(), &pk.big_k));
    w.plain("t_pub", pk.t_pub);
    w.out
}

pub fn write_private(pk: &PublicKey, sk: &PrivateKey) -> String {
    let mut w = Writer::new(&pk.tower, pk.n(), pk.k, pk.w, Kind::Private);
    let l = pk.tower.l();
    w.field("x", &l_digits(l, &sk.x));
    w.field("P", &sk.p.entries().iter().map(|d| d.0).collect::<Vec<_>>());
    w.field("z", &l_digits(l, &sk.z));
    w.out
}

pub fn write_ciphertext(pk: &PublicKey, c: &[FqmElem]) -> String {
    let mut w = Writer::new(&pk.tower, pk.n(), pk.k, pk.w, Kind::Ciphertext);
    w.field("c", &fqm_digits(pk.tower.fqm(), c));
    w.out
}

/// Recovered key; timing is deliberately not stored so files are
/// reproducible.
pub fn write_recovered(pk: &PublicKey, res: &AttackResult) -> String {
    let mut w = Writer::new(&pk.tower, pk.n(), pk.k, pk.w, Kind::Recovered);
    let l = pk.tower.l();
    w.field("x", &l_digits(l, &res.x));
    w.field("z", &l_digits(l, &res.z));
    w.field("T", &res.t.entries().iter().map(|d| d.0).collect::<Vec<_>>());
    w.field("h", &fqm_digits(pk.tower.fqm(), &res.h_tilde));
    w.plain("dual_dim", res.dual_dim);
    w.plain("lambda_dim", res.lambda_dim);
    w.out
}

/// A generator matrix over F_q^m; `k` in the header is its row count.
pub fn write_code(tower: &Tower, g: &Matrix<FqmElem>) -> String {
    let mut w = Writer::new(tower, g.cols(), g.rows(), 0, Kind::Code);
    w.field("G", &fqm_digits(tower.fqm(), g.entries()));
    w.out
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text.lines();
    if lines.next().map(str::trim_end) != Some(MAGIC) {
        return Err(Error::Parse(format!("missing {MAGIC:?} line")));
    }
    let head = lines.next().ok_or_else(|| Error::Parse("missing parameter line".into()))?;
    let nums: Vec<&str> = head.split_whitespace().collect();
    if nums.len() != 6 {
        return Err(Error::Parse(format!("parameter line needs 6 numbers, found {}", nums.len())));
    }
    let q = nums[0].parse::<u32>().map_err(|_| Error::Parse(format!("bad q: {:?}", nums[0])))?;
    let header = Header {
        q,
        m: parse_usize(nums[1], "m")?,
        u: parse_usize(nums[2], "u")?,
        n: parse_usize(nums[3], "n")?,
        k: parse_usize(nums[4], "k")?,
        w: parse_usize(nums[5], "w")?,
    };
    if q < 2 || header.m < 2 || header.u < 2 {
        return Err(Error::Parse("q, m and u must be at least 2".into()));
    }
    let mut fields = Vec::new();
    for line in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got {line:?}")))?;
        if fields.iter().any(|(name, _): &(String, String)| name == k) {
            return Err(Error::Parse(format!("duplicate field {k}")));
        }
        fields.push((k.to_string(), v.to_string()));
    }
    let get = |name: &str| {
        fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing field {name}")))
    };
    let kind = Kind::parse(get("kind")?)?;
    crate::fieldtower::PrimeField::new(q).map_err(|e| Error::Parse(e.to_string()))?;
    let mod_fqm: Vec<FqElem> = decode_digits(q, get("mod_fqm")?, header.m + 1)?.into_iter().map(FqElem).collect();
    let ml = decode_digits(q, get("mod_L")?, (header.u + 1) * header.m)?;
    let mod_l: Vec<FqmElem> = ml.chunks(header.m).map(|c| pack(q, header.m, c)).collect();
    let params = TowerParams { q, m: header.m, u: header.u, mod_fqm, mod_l };
    let tower = Tower::from_params(&params).map_err(|e| Error::Parse(format!("invalid tower: {e}")))?;
    Ok(Document { header, kind, tower, fields })
}

fn pack(q: u32, m: usize, digits: &[u32]) -> FqmElem {
    let bits = digit_bits(q);
    debug_assert_eq!(digits.len(), m);
    FqmElem(digits.iter().enumerate().fold(0u64, |acc, (i, &d)| acc | (d as u64) << (i as u32 * bits)))
}

impl Document {
    pub fn raw(&self, name: &str) -> Result<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing field {name}")))
    }

    fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Parse(format!("expected a {} file, found {}", kind.name(), self.kind.name())));
        }
        Ok(())
    }

    fn number(&self, name: &str) -> Result<usize> {
        parse_usize(self.raw(name)?, name)
    }

    pub fn fqm_vec(&self, name: &str, len: usize) -> Result<Vec<FqmElem>> {
        let (q, m) = (self.header.q, self.header.m);
        let d = decode_digits(q, self.raw(name)?, len * m)?;
        Ok(d.chunks(m).map(|c| pack(q, m, c)).collect())
    }

    pub fn l_vec(&self, name: &str, len: usize) -> Result<Vec<LElem>> {
        let u = self.header.u;
        let blocks = self.fqm_vec(name, len * u)?;
        Ok(blocks.chunks(u).map(LElem::from_coeffs).collect())
    }

    pub fn fq_matrix(&self, name: &str, rows: usize, cols: usize) -> Result<Matrix<FqElem>> {
        let d = decode_digits(self.header.q, self.raw(name)?, rows * cols)?;
        Ok(Matrix::from_vec(rows, cols, d.into_iter().map(FqElem).collect()))
    }

    pub fn public_key(&self) -> Result<PublicKey> {
        self.expect(Kind::Public)?;
        let Header { n, k, w, .. } = self.header;
        let g = self.fqm_vec("g", n)?;
        let big_k = self.l_vec("K", n)?;
        let t_pub = self.number("t_pub")?;
        if t_pub != flpke::t_pub(n, k, w) {
            return Err(Error::Parse(format!("t_pub = {t_pub} disagrees with the header")));
        }
        let pk = PublicKey { tower: self.tower.clone(), g, k, w, big_k, t_pub };
        pk.code().map_err(|e| Error::Parse(format!("invalid support: {e}")))?;
        Ok(pk)
    }

    pub fn private_key(&self) -> Result<PrivateKey> {
        self.expect(Kind::Private)?;
        let Header { n, k, w, .. } = self.header;
        let x = self.l_vec("x", k)?;
        let p = self.fq_matrix("P", n, n)?;
        let z = self.l_vec("z", n)?;
        let s = ranklin::apply_fq_matrix(self.tower.l(), &z, &p)[..w.min(n)].to_vec();
        Ok(PrivateKey { x, p, s, z })
    }

    pub fn ciphertext(&self) -> Result<Vec<FqmElem>> {
        self.expect(Kind::Ciphertext)?;
        self.fqm_vec("c", self.header.n)
    }

    pub fn recovered(&self) -> Result<AttackResult> {
        self.expect(Kind::Recovered)?;
        let Header { n, k, .. } = self.header;
        Ok(AttackResult {
            x: self.l_vec("x", k)?,
            z: self.l_vec("z", n)?,
            t: self.fq_matrix("T", n, n)?,
            h_tilde: self.fqm_vec("h", n)?,
            dual_dim: self.number("dual_dim")?,
            lambda_dim: self.number("lambda_dim")?,
            elapsed: Duration::ZERO,
        })
    }

    pub fn code(&self) -> Result<Matrix<FqmElem>> {
        self.expect(Kind::Code)?;
        let Header { n, k, .. } = self.header;
        Ok(Matrix::from_vec(k, n, self.fqm_vec("G", k * n)?))
    }
}
