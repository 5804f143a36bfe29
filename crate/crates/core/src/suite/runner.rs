use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::env::{Param, PrimeEnv};
use super::registry::{find_check, CheckSpec, Kind};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::padic::{congruent_mod, RationalArg, DEFAULT_PRECISION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// An isolated entry (conjecture or unproved remark) that held.
    Consistent,
    Refuted,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Consistent => "consistent",
            Status::Refuted => "refuted",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub kind: Kind,
    pub p: u64,
    pub a: Option<RationalArg>,
    pub t: u32,
    /// Residues in `[0, p^t)`, one per component, comma separated.
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub status: Status,
    pub micros: u64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub precision: u32,
    /// Rerun once at `precision + 4` when the first pass cannot decide.
    pub retry: bool,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { precision: DEFAULT_PRECISION, retry: true, jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub count: usize,
    pub den_max: u64,
    pub num_max: i64,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { count: 10, den_max: 12, num_max: 24, seed: 1 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub consistent: usize,
    pub refuted: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    fn new(results: Vec<CheckResult>) -> Self {
        let mut s = Summary { total: results.len(), ..Summary::default() };
        for r in &results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
                Status::Consistent => s.consistent += 1,
                Status::Refuted => s.refuted += 1,
            }
        }
        Report { results, summary: s }
    }

    /// 0 when clean, 1 on any failure outside the isolated entries, 3 when
    /// only isolated entries were refuted.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.error > 0 {
            1
        } else if self.summary.refuted > 0 {
            3
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| matches!(r.status, Status::Fail | Status::Error | Status::Refuted))
    }
}

fn residues(values: &[crate::padic::PadicValue], t: u32) -> String {
    values
        .iter()
        .map(|v| v.residue_mod(t as i64).map_or_else(|_| "?".to_string(), |r| r.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

/// One evaluation at the precision of `env`. `Ok((lhs, rhs, pass))`.
fn evaluate(spec: &CheckSpec, env: &PrimeEnv, param: Option<&Param>) -> Result<(String, String, bool)> {
    let t = spec.modulus(env.p);
    let lhs = spec.lhs(env, param)?;
    let rhs = spec.rhs(env, param)?;
    if lhs.len() != rhs.len() {
        panic!("{}: sides have {} and {} components", spec.id, lhs.len(), rhs.len());
    }
    let mut pass = true;
    for (x, y) in lhs.iter().zip(&rhs) {
        pass &= congruent_mod(x, y, t as i64)?;
    }
    Ok((residues(&lhs, t), residues(&rhs, t), pass))
}

/// Runs `spec` at `p` using the shared tables in `env`.
pub fn run_spec(spec: &CheckSpec, env: &PrimeEnv, param: Option<&Param>, opts: &RunOptions) -> Result<CheckResult> {
    let p = env.p;
    if !spec.applies(p, param) {
        return Err(Error::NotApplicable { id: spec.id.clone(), p });
    }
    let start = Instant::now();
    let mut outcome = evaluate(spec, env, param);
    if opts.retry && matches!(&outcome, Err(e) if e.is_precision()) {
        let wider = PrimeEnv::new(p, env.precision() + 4)?;
        outcome = evaluate(spec, &wider, param);
    }
    let micros = start.elapsed().as_micros() as u64;
    let t = spec.modulus(p);
    let base = CheckResult {
        id: spec.id.clone(),
        kind: spec.kind,
        p,
        a: param.map(|x| x.a.clone()),
        t,
        lhs: String::new(),
        rhs: String::new(),
        pass: false,
        status: Status::Error,
        micros,
        error: None,
    };
    Ok(match outcome {
        Ok((lhs, rhs, pass)) => {
            let status = match (spec.isolated, pass) {
                (false, true) => Status::Pass,
                (false, false) => Status::Fail,
                (true, true) => Status::Consistent,
                (true, false) => Status::Refuted,
            };
            CheckResult { lhs, rhs, pass, status, ..base }
        }
        Err(e) => CheckResult { error: Some(e.to_string()), ..base },
    })
}

/// Looks up `id` and runs it once.
pub fn run_check(id: &str, p: u64, a: Option<&RationalArg>, opts: &RunOptions) -> Result<CheckResult> {
    let spec = find_check(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    let env = PrimeEnv::new(p, opts.precision)?;
    let param = a.map(|a| env.param(a)).transpose()?;
    run_spec(&spec, &env, param.as_ref(), opts)
}

fn fnv1a(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Up to `count` distinct reduced fractions `num/den` satisfying the check's
/// hypotheses at `p`, drawn from a stream seeded by `(seed, id, p)` and
/// returned in increasing order.
pub fn sample_params(spec: &CheckSpec, p: u64, sampling: &Sampling) -> Vec<Param> {
    let seed = fnv1a(&[&sampling.seed.to_le_bytes(), spec.id.as_bytes(), &p.to_le_bytes()]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let cap = 200 * sampling.count.max(1);
    let pb = BigInt::from(p);
    for _ in 0..cap {
        if out.len() == sampling.count {
            break;
        }
        let den = rng.gen_range(1..=sampling.den_max.max(1)) as i64;
        let num = rng.gen_range(-sampling.num_max..=sampling.num_max);
        if num.gcd(&den) != 1 || (den as u64).is_multiple_of(p) || !seen.insert((num, den)) {
            continue;
        }
        let a = RationalArg::frac(num, den);
        let Ok(param) = Param::new(a, p) else { continue };
        if param.a.is_integral_at(&pb) && spec.applies(p, Some(&param)) {
            out.push(param);
        }
    }
    out.sort_by(|x, y| x.a.value().cmp(y.a.value()));
    out
}

/// Odd primes in `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime_u64(n)).collect()
}

/// Runs every applicable `(check, p, a)` triple. Work is spread over
/// `opts.jobs` threads by `(check, p)` item and merged back in
/// `(id, p, a)` order, so the report does not depend on scheduling.
pub fn run_range(specs: &[CheckSpec], p_min: u64, p_max: u64, sampling: &Sampling, opts: &RunOptions) -> Result<Report> {
    let primes = primes_between(p_min, p_max);
    let mut envs = BTreeMap::new();
    for &p in &primes {
        envs.insert(p, Arc::new(PrimeEnv::new(p, opts.precision)?));
    }
    let mut order: Vec<usize> = (0..specs.len()).collect();
    order.sort_by(|&i, &j| specs[i].id.cmp(&specs[j].id));
    let items: Vec<(usize, u64)> = order.iter().flat_map(|&i| primes.iter().map(move |&p| (i, p))).collect();

    let work = |&(i, p): &(usize, u64)| -> Vec<CheckResult> {
        let spec = &specs[i];
        let env = &envs[&p];
        if spec.is_sampled() {
            sample_params(spec, p, sampling)
                .iter()
                .filter_map(|a| run_spec(spec, env, Some(a), opts).ok())
                .collect()
        } else if spec.applies(p, None) {
            run_spec(spec, env, None, opts).into_iter().collect()
        } else {
            Vec::new()
        }
    };

    let chunks: Vec<Vec<CheckResult>> = if opts.jobs <= 1 {
        items.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| items.par_iter().map(work).collect())
    };
    Ok(Report::new(chunks.into_iter().flatten().collect()))
}

/// The registered checks selected by `ids` (`"all"` selects everything).
pub fn select_checks(ids: &[String]) -> Result<Vec<CheckSpec>> {
    let all = super::registry::list_checks();
    if ids.iter().any(|s| s == "all") {
        return Ok(all);
    }
    let mut picked = Vec::new();
    let mut pool: Vec<Option<CheckSpec>> = all.into_iter().map(Some).collect();
    for id in ids {
        let mut hit = false;
        for slot in pool.iter_mut() {
            let matches = slot.as_ref().is_some_and(|c| &c.id == id || c.id.starts_with(&format!("{id}-")));
            if matches {
                picked.push(slot.take().expect("present"));
                hit = true;
            }
        }
        if !hit && !picked.iter().any(|c: &CheckSpec| &c.id == id) {
            return Err(Error::UnknownCheck(id.clone()));
        }
    }
    Ok(picked)
}
