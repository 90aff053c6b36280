//! Rabin squaring on Blum moduli and what is built on it: the hard-core
//! bit generator, Blum-Goldwasser encryption and square-root signatures.
//! Also the hard-core bit inverter, the Toeplitz extractor and the
//! next-bit hybrid measurement. Toy sizes only; none of this is secure.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::Rng;
use thiserror::Error;

use crate::numtheory::{gcd, gen_blum_prime, is_prime_trial, modexp, NumError, Residue};
use crate::rng::trial_rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CryptoError {
    #[error("{0} shares a factor with the modulus")]
    NotCoprime(u64),
    #[error("{0} is not a quadratic residue")]
    NotResidue(u64),
    #[error("{0} and {1} are not distinct primes = 3 mod 4")]
    NotBlum(u64, u64),
    #[error("ciphertext made for modulus {0}, key has {1}")]
    KeyMismatch(u64, u64),
    #[error("lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrix shapes {0}x{1} and {2}x{3} do not compose")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not Toeplitz")]
    NotToeplitz,
    #[error("modulus bit length {0} out of range")]
    BadBits(u32),
    #[error(transparent)]
    Prime(#[from] NumError),
}

fn parity(v: u64) -> bool {
    v.count_ones() & 1 == 1
}

fn bit_len(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// `n = pq` with both primes `≡ 3 (mod 4)`; `t = (p-1)(q-1)/4`, `u = (t+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlumKey {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub t: u64,
    pub u: u64,
}

impl BlumKey {
    pub fn from_primes(p: u64, q: u64) -> Result<Self, CryptoError> {
        if p == q || p % 4 != 3 || q % 4 != 3 || !is_prime_trial(p) || !is_prime_trial(q) {
            return Err(CryptoError::NotBlum(p, q));
        }
        let n = p.checked_mul(q).ok_or(CryptoError::NotBlum(p, q))?;
        let t = (p - 1) / 2 * ((q - 1) / 2);
        Ok(BlumKey { n, p, q, t, u: t.div_ceil(2) })
    }

    /// Two random Blum primes of `bits / 2` bits each.
    pub fn generate<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<Self, CryptoError> {
        if !(6..=64).contains(&bits) {
            return Err(CryptoError::BadBits(bits));
        }
        let p = gen_blum_prime(bits / 2, rng)?;
        loop {
            let q = gen_blum_prime(bits - bits / 2, rng)?;
            if q != p {
                return BlumKey::from_primes(p, q);
            }
        }
    }

    pub fn is_residue(&self, y: u64) -> bool {
        let y = y % self.n;
        gcd(y, self.n) == 1 && modexp(modexp(y, self.u, self.n), 2, self.n) == y
    }
}

/// `Q_n`, by squaring every unit; for small `n`.
pub fn quadratic_residues(n: u64) -> Vec<u64> {
    let mut q: Vec<u64> = (1..n).filter(|&x| gcd(x, n) == 1).map(|x| x.mul_mod(x, n)).collect();
    q.sort_unstable();
    q.dedup();
    q
}

pub fn rabin_forward(x: u64, n: u64) -> Result<u64, CryptoError> {
    if gcd(x % n, n) != 1 {
        return Err(CryptoError::NotCoprime(x));
    }
    Ok(x.mul_mod(x, n))
}

/// `y^u mod n`, the square root of `y` inside `Q_n`.
pub fn rabin_invert(y: u64, key: &BlumKey) -> Result<u64, CryptoError> {
    if gcd(y % key.n, key.n) != 1 {
        return Err(CryptoError::NotCoprime(y));
    }
    if !key.is_residue(y) {
        return Err(CryptoError::NotResidue(y));
    }
    Ok(modexp(y, key.u, key.n))
}

/// `B_p(x)`, the parity of `x AND p`.
pub fn hardcore_bit(x: &[bool], p: &[bool]) -> Result<bool, CryptoError> {
    if x.len() != p.len() {
        return Err(CryptoError::LengthMismatch(x.len(), p.len()));
    }
    Ok(x.iter().zip(p).filter(|(a, b)| **a && **b).count() % 2 == 1)
}

/// Packed form of [`hardcore_bit`].
pub fn hardcore_word(x: u64, p: u64) -> bool {
    parity(x & p)
}

/// `S_i = B_p(x_i)`, `x_{i+1} = x_i^2 mod n`. A seed outside `Q_n` is
/// squared in first.
pub fn prg_stream(x0: u64, p: u64, key: &BlumKey, len: usize) -> Result<Vec<bool>, CryptoError> {
    let mut x = x0 % key.n;
    if !key.is_residue(x) {
        x = rabin_forward(x, key.n)?;
    }
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(hardcore_word(x, p));
        x = x.mul_mod(x, key.n);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub n: u64,
    pub x: u64,
    pub s_k: u64,
    pub body: Vec<bool>,
}

fn keystream(s1: u64, x: u64, n: u64, len: usize) -> (Vec<bool>, u64) {
    let mut s = s1;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(hardcore_word(s, x));
        s = s.mul_mod(s, n);
    }
    (out, s)
}

/// Encrypts `k - 1` bits with `s_1 .. s_{k-1}` and sends `s_k` in clear.
pub fn bg_encrypt_with(m: &[bool], n: u64, x: u64, s0: u64) -> Result<Ciphertext, CryptoError> {
    let s1 = rabin_forward(s0, n)?;
    let (ks, s_k) = keystream(s1, x, n, m.len());
    let body = m.iter().zip(&ks).map(|(a, b)| a ^ b).collect();
    Ok(Ciphertext { n, x, s_k, body })
}

pub fn bg_encrypt<R: Rng + ?Sized>(m: &[bool], n: u64, rng: &mut R) -> Result<Ciphertext, CryptoError> {
    let mask = if bit_len(n) >= 64 { u64::MAX } else { (1 << bit_len(n)) - 1 };
    let x = rng.gen::<u64>() & mask;
    loop {
        let s0 = rng.gen_range(1..n);
        if gcd(s0, n) == 1 {
            return bg_encrypt_with(m, n, x, s0);
        }
    }
}

/// `v = u^(k-1) mod t`, so that `s_1 = s_k^v`.
pub fn bg_exponent(key: &BlumKey, k: usize) -> u64 {
    modexp(key.u % key.t, (k - 1) as u64, key.t)
}

pub fn bg_recover_s1(s_k: u64, key: &BlumKey, k: usize) -> Result<u64, CryptoError> {
    if !key.is_residue(s_k) {
        return Err(CryptoError::NotResidue(s_k));
    }
    Ok(modexp(s_k, bg_exponent(key, k), key.n))
}

pub fn bg_decrypt(c: &Ciphertext, key: &BlumKey) -> Result<Vec<bool>, CryptoError> {
    if c.n != key.n {
        return Err(CryptoError::KeyMismatch(c.n, key.n));
    }
    let s1 = bg_recover_s1(c.s_k, key, c.body.len() + 1)?;
    let (ks, _) = keystream(s1, c.x, key.n, c.body.len());
    Ok(c.body.iter().zip(&ks).map(|(a, b)| a ^ b).collect())
}

/// Releases `x` as the authorization of `y = x^2 mod n`.
pub fn sign_release(x: u64, n: u64) -> Result<(u64, u64), CryptoError> {
    Ok((x, rabin_forward(x, n)?))
}

pub fn verify_sig(x: u64, y: u64, n: u64) -> bool {
    y < n && x.mul_mod(x, n) == y
}

/// Guesses `B_p(x)` for a fixed hidden `x`: `+1` for 0, `-1` for 1.
pub trait GlOracle {
    fn guess(&self, p: u64) -> i8;
}

impl<F: Fn(u64) -> i8> GlOracle for F {
    fn guess(&self, p: u64) -> i8 {
        self(p)
    }
}

/// Right with probability `(1 + eps) / 2`, decided by hashing the query.
#[derive(Debug, Clone, Copy)]
pub struct NoisyOracle {
    pub x: u64,
    pub eps: f64,
    pub seed: u64,
}

impl GlOracle for NoisyOracle {
    fn guess(&self, p: u64) -> i8 {
        let mut h = DefaultHasher::new();
        (self.seed, p).hash(&mut h);
        let u = (h.finish() >> 11) as f64 / (1u64 << 53) as f64;
        let truth = if hardcore_word(self.x, p) { -1 } else { 1 };
        if u < (1.0 + self.eps) / 2.0 {
            truth
        } else {
            -truth
        }
    }
}

/// `j = ceil(log2(2k / eps^2))`.
pub fn gl_width(k: u32, eps: f64) -> u32 {
    (2.0 * k as f64 / (eps * eps)).log2().ceil().max(1.0) as u32
}

/// In-place Walsh-Hadamard transform, `h(z) = sum_r (-1)^{z.r} G(r)`.
pub fn fwht(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi) {
                (*x, *y) = (*x + *y, *x - *y);
            }
        }
        h *= 2;
    }
}

/// All `2^j` candidates for the hidden `k`-bit `x`, one per guess of `z = xP`.
pub fn gl_invert<O: GlOracle + ?Sized, R: Rng + ?Sized>(oracle: &O, k: u32, eps: f64, rng: &mut R) -> Vec<u64> {
    assert!((1..=63).contains(&k), "k out of range");
    let j = gl_width(k, eps).min(20);
    let mask = (1u64 << k) - 1;
    // column c of the k x j matrix P
    let cols: Vec<u64> = (0..j).map(|_| rng.gen::<u64>() & mask).collect();
    let pr: Vec<u64> = (0..1u64 << j)
        .map(|r| (0..j).filter(|&c| r >> c & 1 == 1).fold(0, |acc, c| acc ^ cols[c as usize]))
        .collect();
    let mut cand = vec![0u64; 1 << j];
    let mut g = vec![0i64; 1 << j];
    for i in 0..k {
        let v = 1u64 << i;
        g[0] = 0;
        for r in 1..pr.len() {
            g[r] = oracle.guess(pr[r] ^ v) as i64;
        }
        fwht(&mut g);
        for (z, &h) in g.iter().enumerate() {
            if h < 0 {
                cand[z] |= v;
            }
        }
    }
    cand
}

/// [`gl_invert`] followed by the check `y = F(x)`.
pub fn gl_recover<O, R, F>(oracle: &O, k: u32, eps: f64, rng: &mut R, check: F) -> Option<u64>
where
    O: GlOracle + ?Sized,
    R: Rng + ?Sized,
    F: Fn(u64) -> bool,
{
    gl_invert(oracle, k, eps, rng).into_iter().find(|&x| check(x))
}

/// Rows of at most 64 bits; bit `c` of a row is column `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert!(cols <= 64 && data.len() == rows);
        let mask = if cols == 64 { u64::MAX } else { (1 << cols) - 1 };
        BitMatrix { rows, cols, data: data.into_iter().map(|r| r & mask).collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix::new(rows, cols, vec![0; rows])
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r] >> c & 1 == 1
    }

    /// The `m x i` Toeplitz matrix with `Z[a][b] = d[a - b + i - 1]`.
    pub fn toeplitz(m: usize, i: usize, diagonals: u64) -> Self {
        assert!(m + i - 1 <= 64);
        let data = (0..m)
            .map(|a| (0..i).fold(0, |row, b| row | (diagonals >> (a + i - 1 - b) & 1) << b))
            .collect();
        BitMatrix::new(m, i, data)
    }

    pub fn random_toeplitz<R: Rng + ?Sized>(m: usize, i: usize, rng: &mut R) -> Self {
        BitMatrix::toeplitz(m, i, rng.gen())
    }

    pub fn is_toeplitz(&self) -> bool {
        (0..self.rows.saturating_sub(1))
            .all(|a| (0..self.cols.saturating_sub(1)).all(|b| self.get(a + 1, b + 1) == self.get(a, b)))
    }
}

/// `XZ` over GF(2).
pub fn toeplitz_extract(x: &BitMatrix, z: &BitMatrix) -> Result<BitMatrix, CryptoError> {
    if x.cols != z.rows {
        return Err(CryptoError::ShapeMismatch(x.rows, x.cols, z.rows, z.cols));
    }
    if !z.is_toeplitz() {
        return Err(CryptoError::NotToeplitz);
    }
    Ok(BitMatrix::new(x.rows, z.cols, x.data.iter().map(|&row| row_times(row, z)).collect()))
}

fn row_times(row: u64, z: &BitMatrix) -> u64 {
    (0..z.rows).filter(|&a| row >> a & 1 == 1).fold(0, |acc, a| acc ^ z.data[a])
}

/// Exact L1 distance between `n` i.i.d. draws from `q` and `n` uniform
/// draws over the same alphabet, summed over count vectors.
pub fn product_l1(q: &[f64], n: usize) -> f64 {
    let kinds = q.len();
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=n).scan(0.0, |acc, i| {
            *acc += (i as f64).ln();
            Some(*acc)
        }))
        .collect();
    let ln_u = -(kinds as f64).ln() * n as f64;
    let mut total = 0.0;
    let mut counts = vec![0usize; kinds];
    fn walk(
        slot: usize,
        left: usize,
        counts: &mut Vec<usize>,
        q: &[f64],
        ln_fact: &[f64],
        ln_u: f64,
        total: &mut f64,
    ) {
        if slot + 1 == counts.len() {
            counts[slot] = left;
            let n: usize = counts.iter().sum();
            let mut ln_multi = ln_fact[n];
            let mut ln_p = 0.0;
            let mut zero = false;
            for (c, &pq) in counts.iter().zip(q) {
                ln_multi -= ln_fact[*c];
                if *c > 0 {
                    if pq == 0.0 {
                        zero = true;
                    } else {
                        ln_p += *c as f64 * pq.ln();
                    }
                }
            }
            let pv = if zero { 0.0 } else { ln_p.exp() };
            *total += ln_multi.exp() * (pv - ln_u.exp()).abs();
            return;
        }
        for c in 0..=left {
            counts[slot] = c;
            walk(slot + 1, left - c, counts, q, ln_fact, ln_u, total);
        }
    }
    walk(0, n, &mut counts, q, &ln_fact, ln_u, &mut total);
    total
}

/// Output distribution of one row `xZ` for `x` uniform on `support`.
pub fn row_distribution(support: &[u64], z: &BitMatrix) -> Vec<f64> {
    let mut q = vec![0.0; 1 << z.cols];
    for &x in support {
        q[row_times(x, z) as usize] += 1.0 / support.len() as f64;
    }
    q
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractorReport {
    /// Mean exact L1 distance of the `n x i` output from uniform.
    pub mean_l1: f64,
    /// Mean L1 distance of a single output row.
    pub mean_row_l1: f64,
    /// `4 sqrt(n i / 2^k)`.
    pub bound: f64,
}

/// Rows drawn independently and uniformly from a fixed random set of
/// `2^k` values out of `2^m` (a flat source of min-entropy `k`), averaged
/// over `draws` random Toeplitz matrices.
pub fn extractor_experiment(m: usize, k: u32, i: usize, n: usize, draws: u64, seed: u64) -> ExtractorReport {
    use rand::seq::index::sample;
    let mut rng = trial_rng(seed, u64::MAX);
    let support: Vec<u64> = sample(&mut rng, 1 << m, 1 << k).into_iter().map(|v| v as u64).collect();
    let (mut l1, mut row_l1) = (0.0, 0.0);
    for d in 0..draws {
        let z = BitMatrix::random_toeplitz(m, i, &mut trial_rng(seed, d));
        let q = row_distribution(&support, &z);
        let u = 1.0 / q.len() as f64;
        row_l1 += q.iter().map(|p| (p - u).abs()).sum::<f64>();
        l1 += product_l1(&q, n);
    }
    let draws = draws.max(1) as f64;
    ExtractorReport {
        mean_l1: l1 / draws,
        mean_row_l1: row_l1 / draws,
        bound: 4.0 * ((n * i) as f64 / (1u64 << k) as f64).sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridReport {
    /// `p_i`: acceptance with the first `i` bits replaced by coin flips.
    pub p: Vec<f64>,
    /// `i` maximizing `|p_{i-1} - p_i|`, 1-based.
    pub position: usize,
    pub gap: f64,
    /// Correlation of the implied next-bit predictor, `2 (p_{i-1} - p_i)`.
    pub correlation: f64,
}

/// Estimates every hybrid acceptance rate of `test` on outputs of `gen`.
pub fn nextbit_hybrid<G, T>(gen: G, test: T, len: usize, trials: u64, seed: u64) -> HybridReport
where
    G: Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<bool>,
    T: Fn(&[bool]) -> bool,
{
    let mut hits = vec![0u64; len + 1];
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let s = gen(&mut rng);
        assert_eq!(s.len(), len, "generator length");
        let coins: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
        for (i, h) in hits.iter_mut().enumerate() {
            let mut hybrid = coins[..i].to_vec();
            hybrid.extend_from_slice(&s[i..]);
            if test(&hybrid) {
                *h += 1;
            }
        }
    }
    let p: Vec<f64> = hits.iter().map(|&h| h as f64 / trials.max(1) as f64).collect();
    let (position, gap) = (1..=len)
        .map(|i| (i, p[i - 1] - p[i]))
        .fold((1, 0.0f64), |best, cur| if cur.1.abs() > best.1.abs() { cur } else { best });
    HybridReport { p, position, gap, correlation: 2.0 * gap }
}
