//! The structured route. For x = ϖ^e·u and y = ϖ^g·v with units u, v, right
//! translation by diag(u⁻¹, 1, v) ∈ K_c and the substitution z ↦ uvz show the
//! z-integral depends only on (e, g); translation by u(0, y', 0) ∈ K_c shears
//! y ∈ p^n to Y = 0. So I^k is a finite sum over (x-region, y-region) pairs of
//! character-sum weights times a z-integral, which is refined cell by cell until
//! each cell is certified constant.

use crate::padic::{char_sum_additive, pow_u64, AdditiveChar, PadicError, PadicNum};
use crate::symalg::Q;
use crate::whittaker::Support;

use super::histogram::Histogram;
use super::integrand::{f_ball, f_point};
use super::{OracleError, OracleJob};

/// Parts of the domain, named by the proof's case split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// x ∈ p^m, y ∈ p^n.
    I3,
    /// x ∉ p^m, y ∈ p^n, z ∈ p^{m+n-c}.
    I5,
    /// x ∉ p^m, y ∈ p^n, z ∉ p^{m+n-c}.
    I6,
    /// x ∈ p^m, y ∉ p^n.
    I7,
    /// x ∉ p^m, y ∉ p^n.
    I8,
}

impl Part {
    pub const ALL: [Part; 5] = [Part::I3, Part::I5, Part::I6, Part::I7, Part::I8];

    pub fn label(self) -> &'static str {
        match self {
            Part::I3 => "I3",
            Part::I5 => "I5",
            Part::I6 => "I6",
            Part::I7 => "I7",
            Part::I8 => "I8",
        }
    }
}

/// A region of one variable: the ball (argument 0) or a shell (argument ϖ^exp).
#[derive(Clone, Copy, Debug)]
struct Region {
    arg_exp: Option<i64>,
    /// Weight A·p^{-E}.
    num: i128,
    den_exp: i64,
}

fn q_to_weight(p: u32, w: &Q) -> (i128, i64) {
    let mut den_exp = 0i64;
    let mut d = w.denom().clone();
    let pb = num_bigint::BigInt::from(p);
    while d > num_bigint::BigInt::from(1) {
        assert!((&d % &pb) == num_bigint::BigInt::from(0), "weight denominator is not a power of p");
        d /= &pb;
        den_exp += 1;
    }
    (i128::try_from(w.numer().clone()).expect("weight fits"), den_exp)
}

/// Ball p^top (argument 0, weight q^{-top}) and shells ϖ^e·o^× for −k ≤ e < top with
/// nonzero ψ-weight, each giving argument ϖ^{e−top}.
fn regions(p: u32, top: i64, k: i64) -> Vec<Region> {
    let psi = AdditiveChar::unramified(p);
    let mut out = vec![Region { arg_exp: None, num: 1, den_exp: top }];
    for e in -k..top {
        let w = char_sum_additive(e, &psi).as_rational().expect("unramified sums are rational");
        if w == Q::from_integer(0.into()) {
            continue;
        }
        let (num, den_exp) = q_to_weight(p, &w);
        out.push(Region { arg_exp: Some(e - top), num, den_exp });
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Task {
    part: Part,
    x: Region,
    y: Region,
    /// z-shell exponent, or `None` for the ball p^{l0}.
    shell: Option<i64>,
    /// Leading residue class of the shell cell.
    top: u64,
}

pub(crate) struct Plan {
    pub(crate) tasks: Vec<Task>,
    l0: i64,
    denom_exp: u32,
}

pub(crate) fn plan(job: &OracleJob) -> Plan {
    let (m, n, k, c) = (job.m, job.n, job.k, job.c as i64);
    let l0 = (m + n - c).max(-2 * k);
    let denom_exp = (m + n + l0.max(0)) as u32;
    let mut tasks = Vec::new();
    for x in regions(job.p, m, k) {
        for y in regions(job.p, n, k) {
            let part = match (x.arg_exp, y.arg_exp) {
                (None, None) => Part::I3,
                (Some(_), None) => Part::I5,
                (None, Some(_)) => Part::I7,
                (Some(_), Some(_)) => Part::I8,
            };
            tasks.push(Task { part, x, y, shell: None, top: 0 });
            let shell_part = if part == Part::I5 { Part::I6 } else { part };
            for h in -2 * k..l0 {
                for top in 1..job.p as u64 {
                    tasks.push(Task { part: shell_part, x, y, shell: Some(h), top });
                }
            }
        }
    }
    Plan { tasks, l0, denom_exp }
}

struct Ctx<'a> {
    job: &'a OracleJob,
    rel: u32,
    start: u32,
    l0: i64,
    denom_exp: u32,
}

impl Ctx<'_> {
    fn arg_ball(&self, exp: Option<i64>) -> PadicNum {
        match exp {
            None => PadicNum::zero(self.job.p),
            Some(e) => PadicNum::uniformizer_pow(self.job.p, e, self.rel),
        }
    }

    fn arg_exact(&self, exp: Option<i64>) -> Q {
        match exp {
            None => Q::from_integer(0.into()),
            Some(e) => Q::from_integer(self.job.p.into()).pow(e as i32),
        }
    }

    /// Weight of a cell of z-volume q^{-zexp} as numerator over p^D.
    fn weight(&self, t: &Task, zexp: i64) -> i128 {
        let shift = self.denom_exp as i64 - t.x.den_exp - t.y.den_exp - zexp;
        assert!(shift >= 0, "common denominator too small");
        t.x.num * t.y.num * (pow_u64(self.job.p, shift as u32) as i128)
    }

    fn record(&self, hist: &mut Histogram, s: Support, w: i128) {
        if let Support::Member(r) = s {
            hist.add(r, 0, w);
        }
    }

    fn run(&self, t: &Task, hist: &mut Histogram, cells: &mut u64) -> Result<(), PadicError> {
        let (p, c, mn) = (self.job.p, self.job.c, self.job.m + self.job.n);
        let x = self.arg_ball(t.x.arg_exp);
        let y = self.arg_ball(t.y.arg_exp);
        let Some(h) = t.shell else {
            *cells += 1;
            let (xe, ye) = (self.arg_exact(t.x.arg_exp), self.arg_exact(t.y.arg_exp));
            let s = f_point(p, c, self.rel, &xe, &ye, &Q::from_integer(0.into()))?;
            self.record(hist, s, self.weight(t, self.l0));
            return Ok(());
        };
        let s_max = (self.l0 - h) as u32;
        // Depth-first over w0 + p^s·o, w0 ≡ top (mod p).
        let mut stack: Vec<(u64, u32)> = Vec::new();
        let first = self.start.clamp(1, s_max);
        let step = pow_u64(p, 1);
        let mut seeds = vec![t.top];
        for s in 1..first {
            seeds = seeds.iter().flat_map(|&w| (0..p as u64).map(move |d| w + d * step.pow(s))).collect();
        }
        stack.extend(seeds.into_iter().rev().map(|w| (w, first)));
        while let Some((w0, s)) = stack.pop() {
            let z = PadicNum::from_parts(p, h - mn, w0, s).map_err(|_| PadicError::PrecisionExhausted)?;
            let certified = if s < s_max {
                match f_ball(p, c, self.rel, x, y, z) {
                    Ok(v) => Some(v),
                    Err(PadicError::PrecisionExhausted) => None,
                    Err(e) => return Err(e),
                }
            } else {
                let zq = Q::from_integer(w0.into()) * Q::from_integer(p.into()).pow((h - mn) as i32);
                let (xe, ye) = (self.arg_exact(t.x.arg_exp), self.arg_exact(t.y.arg_exp));
                Some(f_point(p, c, self.rel, &xe, &ye, &zq)?)
            };
            match certified {
                Some(v) => {
                    *cells += 1;
                    self.record(hist, v, self.weight(t, h + s as i64));
                }
                None => {
                    let unit = pow_u64(p, s);
                    for d in (0..p as u64).rev() {
                        stack.push((w0 + d * unit, s + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) struct PartHistograms {
    pub(crate) parts: Vec<(Part, Histogram)>,
    pub(crate) cells: u64,
}

/// Runs every task of the plan, in parallel when enabled, and merges in task order.
pub(crate) fn run_plan(job: &OracleJob, start: u32, rel: u32, parallel: bool) -> Result<PartHistograms, OracleError> {
    let plan = plan(job);
    let ctx = Ctx { job, rel, start, l0: plan.l0, denom_exp: plan.denom_exp };
    let one = |t: &Task| -> Result<(Part, Histogram, u64), PadicError> {
        let mut h = Histogram::new(job.p, plan.denom_exp, 0);
        let mut cells = 0;
        ctx.run(t, &mut h, &mut cells)?;
        Ok((t.part, h, cells))
    };
    let results: Vec<Result<(Part, Histogram, u64), PadicError>> = if parallel {
        super::par_map(&plan.tasks, one)
    } else {
        plan.tasks.iter().map(one).collect()
    };
    let mut parts: Vec<(Part, Histogram)> =
        Part::ALL.iter().map(|&p| (p, Histogram::new(job.p, plan.denom_exp, 0))).collect();
    let mut cells = 0;
    for r in results {
        let (part, h, c) = r?;
        cells += c;
        let slot = parts.iter_mut().find(|(q, _)| *q == part).expect("known part");
        slot.1.merge(&h);
    }
    Ok(PartHistograms { parts, cells })
}
