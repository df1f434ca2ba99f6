//! Exact generalized Stirling and Bell numbers.
//!
//! Normally ordering `((a^dag)^r a^s)^n` produces
//! `(a^dag)^{n(r-s)} sum_k S_{r,s}(n,k) (a^dag)^k a^k`, and in the
//! differential representation `a = d/dx`, `a^dag = x` the same operator
//! acts on a monomial `x^m` as multiplication by
//! `prod_j ff(m + j(r-s), s)`. Matching those coefficients against the
//! falling-factorial basis gives a triangular integer system; solving it
//! in increasing `m` is the primary route here. A truncated Fock-space
//! matrix computation ([`fock_oracle`]) provides the independent route,
//! and closed forms cover the diagonal and Lah families.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::util::{binomial, factorial, falling};
use crate::Result;

/// Creation power `r` and annihilation power `s` with `r >= s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    r: u32,
    s: u32,
}

impl FamilyParams {
    pub fn new(r: u32, s: u32) -> Result<Self> {
        if r >= s && s >= 1 {
            Ok(FamilyParams { r, s })
        } else {
            Err(Error::InvalidParams { r, s })
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Excess of creations over annihilations per factor.
    pub fn excess(&self) -> u32 {
        self.r - self.s
    }

    pub fn is_diagonal(&self) -> bool {
        self.r == self.s
    }
}

impl std::fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// One row of generalized Stirling numbers: `S_{r,s}(n, k)` for
/// `k = s ... n*s` (the `n = 0` row is the single conventional entry
/// at `k = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    pub params: FamilyParams,
    pub n: u64,
    entries: BTreeMap<u64, BigInt>,
}

impl StirlingTable {
    pub fn entry(&self, k: u64) -> Option<&BigInt> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn k_min(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            self.params.s as u64
        }
    }

    pub fn k_max(&self) -> u64 {
        self.n * self.params.s as u64
    }

    pub fn row_sum(&self) -> BigInt {
        self.entries.values().sum()
    }
}

/// Coefficient of `[x^r (d/dx)^s]^n` applied to `x^m` (a single monomial):
/// `prod_{j=0}^{n-1} ff(m + j(r-s), s)`; equals 1 for `n = 0`.
pub fn monomial_coefficient(params: FamilyParams, n: u64, m: u64) -> BigInt {
    let (r, s) = (params.r as u64, params.s as u64);
    let mut acc = BigInt::one();
    for j in 0..n {
        if acc.is_zero() {
            break;
        }
        acc *= falling(m + j * (r - s), s);
    }
    acc
}

/// Generalized Stirling row by forward substitution in the triangular
/// falling-factorial system. Every division by `m!` must be exact; a
/// remainder signals an implementation bug, never an input condition.
pub fn stirling_table(params: FamilyParams, n: u64) -> Result<StirlingTable> {
    let s = params.s as u64;
    let mut entries = BTreeMap::new();
    if n == 0 {
        entries.insert(0, BigInt::one());
        return Ok(StirlingTable { params, n, entries });
    }
    let k_max = n * s;
    let mut m_fact = factorial(s); // m! running value
    for m in s..=k_max {
        let mut rhs = monomial_coefficient(params, n, m);
        for (&k, coeff) in entries.iter() {
            rhs -= coeff * falling(m, k);
        }
        let (q, rem) = num_integer::Integer::div_rem(&rhs, &m_fact);
        if !rem.is_zero() {
            return Err(Error::NonIntegralSolve(format!(
                "family {params}, n={n}, m={m}"
            )));
        }
        entries.insert(m, q);
        m_fact *= m + 1;
    }
    Ok(StirlingTable { params, n, entries })
}

/// `B_{r,s}(n)`: row sum of the Stirling table, with `B(0) = 1`.
///
/// ```
/// use bellnum::normal_order::{bell_number, FamilyParams};
/// let p = FamilyParams::new(9, 6).unwrap();
/// assert_eq!(bell_number(p, 2).to_string(), "207775");
/// ```
pub fn bell_number(params: FamilyParams, n: u64) -> BigInt {
    stirling_table(params, n)
        .expect("triangular solve is exact by construction")
        .row_sum()
}

/// Exact Bell numbers `B_{r,s}(0..=max_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellSequence {
    pub params: FamilyParams,
    values: Vec<BigInt>,
}

impl BellSequence {
    pub fn new(params: FamilyParams, max_n: u64) -> Self {
        let values = (0..=max_n).map(|n| bell_number(params, n)).collect();
        BellSequence { params, values }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Closed form for the diagonal family:
/// `S_{r,r}(n,k) = sum_{p=0}^{k-r} (-1)^p ff(k-p, r)^n / ((k-p)! p!)`.
/// The alternating rational sum must collapse to an integer.
pub fn stirling_rr_closed(r: u32, n: u64, k: u64) -> Result<BigInt> {
    let r64 = r as u64;
    if k < r64 || k > r64 * n {
        return Err(Error::OutOfRange(format!(
            "k={k} outside [{r64}, {}] for S_{{{r},{r}}}({n}, k)",
            r64 * n
        )));
    }
    // sum_p (-1)^p ff(k-p,r)^n / ((k-p)! p!) = [sum_p (-1)^p ff(k-p,r)^n C(k,p)] / k!
    let k_fact = factorial(k);
    let mut num = BigInt::zero();
    for p in 0..=(k - r64) {
        let t = falling(k - p, r64).pow(n as u32) * binomial(k, p);
        if p % 2 == 0 {
            num += t;
        } else {
            num -= t;
        }
    }
    let (q, rem) = num_integer::Integer::div_rem(&num, &k_fact);
    if !rem.is_zero() {
        return Err(Error::NonIntegralResult(format!("S_{{{r},{r}}}({n},{k})")));
    }
    Ok(q)
}

/// Unsigned Lah numbers `n!/k! C(n-1, k-1)`, the `(r,s) = (2,1)` family.
pub fn lah_number(n: u64, k: u64) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("Lah({n},{k}) needs 1 <= k <= n")));
    }
    Ok(factorial(n) / factorial(k) * binomial(n - 1, k - 1))
}

/// Dense integer matrix just big enough for the Fock oracle.
#[derive(Clone)]
struct IntMatrix {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    fn zero(dim: usize) -> Self {
        IntMatrix {
            dim,
            rows: vec![vec![BigInt::zero(); dim]; dim],
        }
    }

    fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Brute-force oracle: represent the ladder operators as truncated
/// matrices, form `((a^dag)^r a^s)^n` by repeated matrix multiplication,
/// and recover the Stirling row by binomial inversion of the matrix
/// elements against the falling-factorial relation.
///
/// Matrices act on the unnormalized basis `(a^dag)^m |0>`, where `a^dag`
/// shifts up with coefficient 1 and `a` shifts down with coefficient `m`;
/// amplitudes of the normalized basis are these integers times a shared
/// `sqrt(m!)` normalization, so everything stays exact.
pub fn fock_oracle(params: FamilyParams, n: u64, dim: usize) -> Result<StirlingTable> {
    let (r, s) = (params.r as usize, params.s as usize);
    let needed = n as usize * (r + s);
    if dim < needed {
        return Err(Error::TruncationTooSmall { needed, got: dim });
    }
    let size = dim + 1;

    let mut lower = IntMatrix::zero(size); // a
    let mut raise = IntMatrix::zero(size); // a^dag
    for m in 1..size {
        lower.rows[m - 1][m] = BigInt::from(m);
        raise.rows[m][m - 1] = BigInt::one();
    }

    let mut op = IntMatrix::identity(size);
    for _ in 0..s {
        op = lower.mul(&op);
    }
    for _ in 0..r {
        op = raise.mul(&op);
    }
    let mut power = IntMatrix::identity(size);
    for _ in 0..n {
        power = op.mul(&power);
    }

    if n == 0 {
        let mut entries = BTreeMap::new();
        entries.insert(0, BigInt::one());
        return Ok(StirlingTable { params, n, entries });
    }

    // <m + n(r-s)| op^n |m> = sum_k S(n,k) ff(m,k)
    let excess = n as usize * (r - s);
    let k_max = n * s as u64;
    let coeffs: Vec<BigInt> = (0..=k_max)
        .map(|m| power.rows[m as usize + excess][m as usize].clone())
        .collect();

    // invert: S(n,k) k! = sum_{m<=k} (-1)^{k-m} C(k,m) c_m
    let mut entries = BTreeMap::new();
    for k in 0..=k_max {
        let mut acc = BigInt::zero();
        for (m, c) in coeffs.iter().enumerate().take(k as usize + 1) {
            let t = binomial(k, m as u64) * c;
            if (k - m as u64).is_multiple_of(2) {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let (q, rem) = num_integer::Integer::div_rem(&acc, &factorial(k));
        if !rem.is_zero() {
            return Err(Error::NonIntegralSolve(format!(
                "fock inversion, family {params}, n={n}, k={k}"
            )));
        }
        if k < params.s as u64 {
            if !q.is_zero() {
                return Err(Error::NonIntegralSolve(format!(
                    "fock inversion produced nonzero entry below k=s at k={k}"
                )));
            }
        } else {
            entries.insert(k, q);
        }
    }
    Ok(StirlingTable { params, n, entries })
}

/// Classical set-partition counts by block number: returns
/// `counts[k] = S(n,k)` for `k = 0..=n`, enumerated via restricted
/// growth strings. The independent oracle for the `(1,1)` family.
pub fn classical_stirling_by_partitions(n: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); n + 1];
    if n == 0 {
        counts[0] = BigInt::one();
        return counts;
    }
    // element i joins one of the existing blocks or opens a new one
    fn rec(remaining: usize, blocks_used: usize, counts: &mut [BigInt]) {
        if remaining == 0 {
            counts[blocks_used] += 1u32;
            return;
        }
        for b in 0..=blocks_used {
            let used = if b == blocks_used {
                blocks_used + 1
            } else {
                blocks_used
            };
            rec(remaining - 1, used, counts);
        }
    }
    rec(n - 1, 1, &mut counts);
    counts
}

/// Classical Bell number by brute-force enumeration.
pub fn classical_bell_by_partitions(n: usize) -> BigInt {
    classical_stirling_by_partitions(n).iter().sum()
}
