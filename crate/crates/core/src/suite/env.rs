use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::jacobi;
use crate::error::Result;
use crate::padic::{
    a_prime, binom_rational, canonical_residue, fermat_quotient, reduce_rational, PadicValue,
    PrimeContext, RationalArg,
};
use crate::quadform::{represent, QuadForm, QuadRep};
use crate::sequences::{
    bernoulli_poly_with, bernoulli_residues, euler_numbers, euler_poly_with, harmonic_table,
    padic_gamma, u_numbers, SequenceTable,
};

/// Per-prime tables shared by every check run at `(p, e)`. Everything is
/// built on first use.
pub struct PrimeEnv {
    pub p: u64,
    pub ctx: Arc<PrimeContext>,
    euler: OnceLock<SequenceTable>,
    useq: OnceLock<SequenceTable>,
    bernoulli: OnceLock<Result<SequenceTable>>,
    harmonic: [OnceLock<Vec<PadicValue>>; 2],
    fermat: Mutex<HashMap<u64, PadicValue>>,
}

impl std::fmt::Debug for PrimeEnv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PrimeEnv(p = {}, e = {})", self.p, self.ctx.precision())
    }
}

impl PrimeEnv {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Ok(PrimeEnv {
            p,
            ctx: PrimeContext::new(p, e)?,
            euler: OnceLock::new(),
            useq: OnceLock::new(),
            bernoulli: OnceLock::new(),
            harmonic: [OnceLock::new(), OnceLock::new()],
            fermat: Mutex::new(HashMap::new()),
        })
    }

    pub fn precision(&self) -> u32 {
        self.ctx.precision()
    }

    pub fn int(&self, n: i64) -> PadicValue {
        self.ctx.int(n)
    }

    pub fn frac(&self, n: i64, d: i64) -> PadicValue {
        self.ctx.ratio(n, d)
    }

    pub fn zero(&self) -> PadicValue {
        PadicValue::exact_zero(&self.ctx)
    }

    pub fn rational(&self, a: &RationalArg) -> PadicValue {
        reduce_rational(a, &self.ctx)
    }

    /// `p^k` for `k >= 0`.
    pub fn pp(&self, k: u32) -> PadicValue {
        self.ctx.bigint(&self.ctx.pow(k))
    }

    /// `b^n` for any integer `n`; `b` must be prime to `p` if `n < 0`.
    pub fn ipow(&self, b: i64, n: i64) -> Result<PadicValue> {
        self.int(b).pow(n)
    }

    fn table_len(&self) -> usize {
        self.p.saturating_sub(2) as usize
    }

    fn euler_table(&self) -> &SequenceTable {
        self.euler.get_or_init(|| euler_numbers(self.table_len(), Some(&self.ctx)))
    }

    /// `E_n` for `n <= p - 2`.
    pub fn euler(&self, n: usize) -> Result<PadicValue> {
        self.euler_table().padic(n, &self.ctx)
    }

    /// `U_n` for `n <= p - 2`.
    pub fn useq(&self, n: usize) -> Result<PadicValue> {
        self.useq
            .get_or_init(|| u_numbers(self.table_len(), Some(&self.ctx)))
            .padic(n, &self.ctx)
    }

    fn bernoulli_table(&self) -> Result<&SequenceTable> {
        self.bernoulli
            .get_or_init(|| bernoulli_residues(self.table_len(), &self.ctx))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `B_n` for `n <= p - 2`.
    pub fn bernoulli(&self, n: usize) -> Result<PadicValue> {
        self.bernoulli_table()?.padic(n, &self.ctx)
    }

    pub fn euler_poly(&self, n: usize, x: &RationalArg) -> Result<PadicValue> {
        euler_poly_with(self.euler_table(), n, x, &self.ctx)
    }

    pub fn bernoulli_poly(&self, n: usize, x: &RationalArg) -> Result<PadicValue> {
        bernoulli_poly_with(self.bernoulli_table()?, n, x, &self.ctx)
    }

    fn harmonic_of(&self, n: u64, order: u32) -> PadicValue {
        let table = self.harmonic[order as usize - 1]
            .get_or_init(|| harmonic_table(self.p - 1, order, &self.ctx));
        table[n as usize].clone()
    }

    /// `H_n` for `n < p`.
    pub fn h(&self, n: u64) -> PadicValue {
        self.harmonic_of(n, 1)
    }

    /// `H_n^{(2)}` for `n < p`.
    pub fn h2(&self, n: u64) -> PadicValue {
        self.harmonic_of(n, 2)
    }

    /// Fermat quotient `q_p(b)`.
    pub fn q(&self, b: u64) -> Result<PadicValue> {
        let mut cache = self.fermat.lock().expect("fermat cache");
        if let Some(v) = cache.get(&b) {
            return Ok(v.clone());
        }
        let v = fermat_quotient(&BigInt::from(b), &self.ctx)?;
        cache.insert(b, v.clone());
        Ok(v)
    }

    /// `binom(n, k)` for integers.
    pub fn binom(&self, n: i64, k: i64) -> PadicValue {
        binom_rational(&RationalArg::int(n), k, &self.ctx)
    }

    pub fn binom_q(&self, a: &RationalArg, k: i64) -> PadicValue {
        binom_rational(a, k, &self.ctx)
    }

    pub fn rep(&self, form: QuadForm) -> Result<QuadRep> {
        represent(self.p, form)
    }

    /// `Γ_p(x)` computed at precision `t` (the Gamma routine is exponential
    /// in the precision, so callers ask only for what the check needs).
    pub fn gamma(&self, x: &RationalArg, t: u32) -> Result<PadicValue> {
        padic_gamma(x, &self.ctx.at_precision(t)?)
    }

    /// Legendre symbol `(n / p)`.
    pub fn legendre(&self, n: i64) -> i64 {
        jacobi(&BigInt::from(n), &BigInt::from(self.p)) as i64
    }

    /// `(-1)^((p-1)/2)`.
    pub fn eps(&self) -> i64 {
        sign((self.p as i64 - 1) / 2)
    }

    pub fn param(&self, a: &RationalArg) -> Result<Param> {
        Param::new(a.clone(), self.p)
    }

    pub fn a_prime(&self, a: &RationalArg) -> Result<PadicValue> {
        a_prime(a, &self.ctx)
    }
}

/// `(-1)^n`.
pub fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A sampled parameter with its canonical residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub a: RationalArg,
    pub r: u64,
}

impl Param {
    pub fn new(a: RationalArg, p: u64) -> Result<Self> {
        let r = canonical_residue(&a, &BigInt::from(p))?;
        Ok(Param { a, r: r.to_u64().expect("residue below p") })
    }

    /// `a + n`.
    pub fn plus(&self, n: i64) -> RationalArg {
        RationalArg(self.a.value() + BigRational::from_integer(n.into()))
    }

    /// `a · n`.
    pub fn times(&self, n: i64) -> RationalArg {
        RationalArg(self.a.value() * BigRational::from_integer(n.into()))
    }
}

impl From<&Param> for RationalArg {
    fn from(p: &Param) -> Self {
        p.a.clone()
    }
}
