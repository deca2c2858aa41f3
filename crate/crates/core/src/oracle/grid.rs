//! The literal route: x = jx·p^{-k}, y = jy·p^{-k} and z = jz·p^{-2k} run over
//! all cells of side p^{M'} and f is evaluated exactly at each representative.

use crate::padic::pow_u64;
use crate::symalg::Q;
use crate::whittaker::Support;

use super::histogram::Histogram;
use super::integrand::f_point;
use super::{OracleError, OracleJob};

/// Cell exponent M' at which the integrand is constant on every cell.
fn cell_exponent(job: &OracleJob) -> i64 {
    0.max(job.m).max(job.n).max(job.m + job.n + job.k - job.c as i64)
}

/// Number of integrand evaluations the grid route needs.
pub fn grid_cells(job: &OracleJob) -> u128 {
    let mp = cell_exponent(job);
    (job.p as u128).pow((4 * job.k + 3 * mp) as u32)
}

/// Refuses jobs with more than `max_cells` evaluations.
pub fn integrate_grid(job: &OracleJob, max_cells: u128) -> Result<Histogram, OracleError> {
    job.validate()?;
    if grid_cells(job) > max_cells {
        return Err(OracleError::InvalidJob(format!("grid needs {} cells", grid_cells(job))));
    }
    let (p, k, mp) = (job.p, job.k, cell_exponent(job));
    let pq = Q::from_integer(p.into());
    let nx = pow_u64(p, (k + mp) as u32);
    let nz = pow_u64(p, (2 * k + mp) as u32);
    let pk = pow_u64(p, k as u32);
    let (sx, sy, sz) = (pq.pow(-(k + job.m) as i32), pq.pow(-(k + job.n) as i32), pq.pow(-(2 * k + job.m + job.n) as i32));
    let rel = job.rel();
    let rows: Vec<u64> = (0..nx).collect();
    let partial = super::par_map(&rows, |&jx| -> Result<Histogram, OracleError> {
        let mut h = Histogram::new(p, (3 * mp) as u32, k as u32);
        let xq = Q::from_integer(jx.into()) * &sx;
        for jy in 0..nx {
            let yq = Q::from_integer(jy.into()) * &sy;
            let phase = (pk - (jx + jy) % pk) % pk;
            for jz in 0..nz {
                let zq = Q::from_integer(jz.into()) * &sz;
                if let Support::Member(r) = f_point(p, job.c, rel, &xq, &yq, &zq)? {
                    h.add(r, phase, 1);
                }
            }
        }
        Ok(h)
    });
    let mut total = Histogram::new(p, (3 * mp) as u32, k as u32);
    for h in partial {
        total.merge(&h?);
    }
    Ok(total)
}
