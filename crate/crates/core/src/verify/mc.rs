use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::haar::{sample_haar, Matrix};
use crate::error::{Error, Result};
use crate::integrals::{evaluate, IntegralSpec, Limits};
use crate::ratfield::RationalFunction;

/// Samples per generator stream. Chunk `k` draws from stream `k` of the
/// ChaCha8 generator seeded with the master seed, so results do not depend on
/// the number of worker threads.
pub const CHUNK: u64 = 4096;

/// Default `|z|` acceptance threshold.
pub const DEFAULT_THRESHOLD: f64 = 5.0;

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.count == 0 {
            return o;
        }
        if o.count == 0 {
            return self;
        }
        let count = self.count + o.count;
        let d = o.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * o.count as f64 / count as f64,
            m2: self.m2 + o.m2 + d * d * (self.count as f64 * o.count as f64) / count as f64,
        }
    }

    /// Standard error of the mean.
    fn stderr(&self) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// A monomial with zero-based numeric indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Monomial {
    conj: Vec<(usize, usize, u32)>,
    plain: Vec<(usize, usize, u32)>,
}

impl Monomial {
    fn eval(&self, u: &Matrix) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &(i, j, m) in &self.conj {
            acc *= u.get(i, j).conj().powu(m);
        }
        for &(i, j, m) in &self.plain {
            acc *= u.get(i, j).powu(m);
        }
        acc
    }
}

/// Maps one axis of labels to zero-based indices: positive integers are used
/// as they are, otherwise labels are numbered by first occurrence.
fn map_axis(labels: &[&str], n: usize) -> Result<Vec<usize>> {
    let numeric: Option<Vec<usize>> = labels
        .iter()
        .map(|l| l.parse::<usize>().ok().filter(|&x| x >= 1))
        .collect();
    let idx = match numeric {
        Some(v) => v.into_iter().map(|x| x - 1).collect(),
        None => {
            let mut seen: Vec<&str> = Vec::new();
            labels
                .iter()
                .map(|l| match seen.iter().position(|s| s == l) {
                    Some(i) => i,
                    None => {
                        seen.push(l);
                        seen.len() - 1
                    }
                })
                .collect::<Vec<_>>()
        }
    };
    if let Some(k) = idx.iter().position(|&x| x >= n) {
        return Err(Error::IndexOutOfRange {
            index: labels[k].to_string(),
            n,
        });
    }
    Ok(idx)
}

fn monomial(spec: &IntegralSpec, n: usize) -> Result<Monomial> {
    let all: Vec<_> = spec.conj.iter().chain(&spec.plain).collect();
    let rows = map_axis(&all.iter().map(|f| f.row.as_str()).collect::<Vec<_>>(), n)?;
    let cols = map_axis(&all.iter().map(|f| f.col.as_str()).collect::<Vec<_>>(), n)?;
    let mut entries = all
        .iter()
        .zip(rows.into_iter().zip(cols))
        .map(|(f, (r, c))| (r, c, f.mult));
    let conj = entries.by_ref().take(spec.conj.len()).collect();
    let plain = entries.collect();
    Ok(Monomial { conj, plain })
}

/// Estimates of several monomials from one shared sample stream.
fn estimate_all(monos: &[Monomial], n: usize, samples: u64, seed: u64) -> Vec<(Moments, Moments)> {
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<(Moments, Moments)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = CHUNK.min(samples - k * CHUNK);
            let mut acc = vec![(Moments::default(), Moments::default()); monos.len()];
            for _ in 0..count {
                let u = sample_haar(n, &mut rng);
                for (m, (re, im)) in monos.iter().zip(acc.iter_mut()) {
                    let v = m.eval(&u);
                    re.push(v.re);
                    im.push(v.im);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![(Moments::default(), Moments::default()); monos.len()];
    for chunk in per_chunk {
        for (t, c) in total.iter_mut().zip(chunk) {
            *t = (t.0.merge(c.0), t.1.merge(c.1));
        }
    }
    total
}

/// Complex estimate with separate standard errors for both parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub re: f64,
    pub im: f64,
}

/// Outcome of one Monte-Carlo check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McReport {
    pub integral: IntegralSpec,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub estimate: Estimate,
    pub stderr: f64,
    pub stderr_im: f64,
    /// Exact value at `n`, as `p/q`.
    pub symbolic_value: String,
    pub symbolic_approx: f64,
    /// `|Re estimate - symbolic| / stderr`.
    pub z_score: f64,
    /// `|Im estimate| / stderr_im`.
    pub z_score_im: f64,
    pub threshold: f64,
    pub pass: bool,
}

fn z(diff: f64, stderr: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff.abs() / stderr
    }
}

fn report(
    spec: &IntegralSpec,
    n: usize,
    samples: u64,
    seed: u64,
    moments: (Moments, Moments),
    exact: BigRational,
    threshold: f64,
) -> McReport {
    let (re, im) = moments;
    let approx = exact.to_f64().unwrap_or(f64::NAN);
    let z_score = z(re.mean - approx, re.stderr());
    let z_score_im = z(im.mean, im.stderr());
    McReport {
        integral: spec.clone(),
        n,
        samples,
        seed,
        estimate: Estimate {
            re: re.mean,
            im: im.mean,
        },
        stderr: re.stderr(),
        stderr_im: im.stderr(),
        symbolic_value: exact.to_string(),
        symbolic_approx: approx,
        z_score,
        z_score_im,
        threshold,
        pass: z_score <= threshold && z_score_im <= threshold,
    }
}

fn symbolic_at(value: &RationalFunction, n: usize) -> Result<BigRational> {
    value.evaluate(&BigInt::from(n))
}

/// Monte-Carlo estimate of one integral at dimension `n`, compared with its
/// exact value.
pub fn mc_estimate(
    spec: &IntegralSpec,
    n: usize,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<McReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mono = monomial(spec, n)?;
    let exact = symbolic_at(&evaluate(spec, limits)?, n)?;
    let moments = estimate_all(std::slice::from_ref(&mono), n, samples, seed).remove(0);
    Ok(report(
        spec,
        n,
        samples,
        seed,
        moments,
        exact,
        DEFAULT_THRESHOLD,
    ))
}

/// One integral of a suite, with an optional expected value replacing the
/// computed one.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteEntry {
    pub spec: IntegralSpec,
    pub expected: Option<RationalFunction>,
}

impl From<IntegralSpec> for SuiteEntry {
    fn from(spec: IntegralSpec) -> Self {
        SuiteEntry {
            spec,
            expected: None,
        }
    }
}

/// Checks every entry at every `n`, sharing the sampled matrices between
/// entries at the same `n`. Per-item failures are reported in place.
pub fn check_suite(
    entries: &[SuiteEntry],
    n_values: &[usize],
    samples: u64,
    seed: u64,
    threshold: f64,
    limits: &Limits,
) -> Vec<Result<McReport>> {
    let values: Vec<Result<RationalFunction>> = entries
        .iter()
        .map(|e| match &e.expected {
            Some(v) => Ok(v.clone()),
            None => evaluate(&e.spec, limits),
        })
        .collect();
    let mut out = Vec::with_capacity(entries.len() * n_values.len());
    for &n in n_values {
        if n == 0 {
            out.extend(
                entries
                    .iter()
                    .map(|_| Err(Error::InvalidArgument("n must be positive".into()))),
            );
            continue;
        }
        let prepared: Vec<Result<(Monomial, BigRational)>> = entries
            .iter()
            .zip(&values)
            .map(|(e, v)| {
                let mono = monomial(&e.spec, n)?;
                let v = v.as_ref().map_err(Clone::clone)?;
                Ok((mono, symbolic_at(v, n)?))
            })
            .collect();
        let monos: Vec<Monomial> = prepared
            .iter()
            .filter_map(|p| p.as_ref().ok().map(|x| x.0.clone()))
            .collect();
        let mut moments = estimate_all(&monos, n, samples, seed).into_iter();
        for (e, p) in entries.iter().zip(prepared) {
            out.push(p.map(|(_, exact)| {
                report(
                    &e.spec,
                    n,
                    samples,
                    seed,
                    moments.next().expect("one per prepared"),
                    exact,
                    threshold,
                )
            }));
        }
    }
    out
}
