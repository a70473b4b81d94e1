use std::collections::BTreeMap;

use super::{Certificate, DegreeReport, Status, Strategy, MAX_LISTED_SOLUTIONS};
use crate::{Error, Result};

/// Degrees from `a + sum b_i p^{2i} = |G|` and `a + sum b_i = k`, where
/// `a = |G : G'|` and `b_i` counts characters of degree `p^i`,
/// `p^i <= max_degree`.
///
/// `order` must be a power of an odd prime and `max_degree` a power of the
/// same prime. Exact iff the nonnegative solution is unique.
pub fn degrees_diophantine(order: u64, linear_count: u64, class_count: u64, max_degree: u64) -> Result<DegreeReport> {
    let p = smallest_factor(order)?;
    let mut e = 0usize;
    let mut d = 1u64;
    while d < max_degree {
        d *= p;
        e += 1;
    }
    if d != max_degree || linear_count == 0 || linear_count > order || class_count < linear_count {
        return Err(Error::InvalidParameter(format!(
            "inconsistent counting data: order {order}, linear {linear_count}, classes {class_count}, max degree {max_degree}"
        )));
    }
    let squares: Vec<u64> = (1..=e).map(|i| p.pow(2 * i as u32)).collect();
    let r1 = class_count - linear_count;
    let r2 = order - linear_count;
    let mut sols = Vec::new();
    let mut count = 0u64;
    let mut b = vec![0u64; e];
    solve(&squares, e, r1, r2, &mut b, &mut sols, &mut count);
    if count == 0 {
        return Err(Error::Infeasible);
    }
    let to_map = |b: &[u64]| -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        m.insert(1, linear_count);
        for (i, &bi) in b.iter().enumerate() {
            if bi > 0 {
                m.insert(p.pow(i as u32 + 1), bi);
            }
        }
        m
    };
    let solutions: Vec<BTreeMap<u64, u64>> = sols.iter().map(|b| to_map(b)).collect();
    Ok(DegreeReport {
        degrees: solutions[0].clone(),
        strategy: Strategy::Diophantine,
        status: if count == 1 {
            Status::Exact
        } else {
            Status::Underdetermined
        },
        certificate: Certificate::Diophantine {
            order,
            linear_count,
            class_count,
            max_degree,
            solutions,
            solution_count: count,
        },
    })
}

/// Enumerates `b_0..b_{len-1}` with `sum b = r1`, `sum b_i sq_i = r2`,
/// largest degree first.
fn solve(sq: &[u64], len: usize, r1: u64, r2: u64, b: &mut [u64], sols: &mut Vec<Vec<u64>>, count: &mut u64) {
    if len == 0 {
        if r1 == 0 && r2 == 0 {
            *count += 1;
            if sols.len() < MAX_LISTED_SOLUTIONS {
                sols.push(b.to_vec());
            }
        }
        return;
    }
    let i = len - 1;
    if len == 1 {
        if r1 * sq[0] == r2 {
            b[0] = r1;
            solve(sq, 0, 0, 0, b, sols, count);
            b[0] = 0;
        }
        return;
    }
    // smallest remaining square is sq[0]: need r1 * sq[0] <= r2 <= r1 * sq[i]
    if r2 < r1 * sq[0] || r2 > r1 * sq[i] {
        return;
    }
    let max = (r2 / sq[i]).min(r1);
    for bi in (0..=max).rev() {
        b[i] = bi;
        solve(sq, i, r1 - bi, r2 - bi * sq[i], b, sols, count);
    }
    b[i] = 0;
}

fn smallest_factor(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("group order {n} has no prime factor")));
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            break;
        }
        d += 1;
    }
    let p = if n.is_multiple_of(d) { d } else { n };
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m != 1 {
        return Err(Error::InvalidParameter(format!("{n} is not a prime power")));
    }
    Ok(p)
}
