use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::{Certificate, DegreeReport, Status, Strategy};
use crate::group::{ClassData, ConcreteGroup};
use crate::pc::is_prime;
use crate::{Error, Result};

pub const DEFAULT_EIGEN_BOUND: u64 = 25_000;

#[derive(Clone, Debug)]
pub struct EigenOptions {
    /// largest group order accepted
    pub bound: u64,
    pub seed: u64,
    /// consecutive rounds without any split before giving up
    pub retries: usize,
    /// Work in the ideal spanned by the nonlinear central characters,
    /// counting `|G : G'|` linear characters directly.
    pub split_linear: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            bound: DEFAULT_EIGEN_BOUND,
            seed: 0x00c0_ffee,
            retries: 8,
            split_linear: true,
        }
    }
}

/// A subspace of `F_l^k` with a basis normalized so that vector `c` has a 1
/// in column `pivots[c]` and 0 in every other pivot column.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The least prime `l = 1 mod e` with `l > 2 sqrt(n)`.
pub(crate) fn suitable_prime(n: u64, e: u64) -> Result<u64> {
    let mut floor = 1u64;
    while floor * floor <= 4 * n {
        floor += 1;
    }
    // floor > 2 sqrt(n)
    let mut l = (floor - 1) / e * e + 1;
    while l < floor {
        l += e;
    }
    while l < (1 << 31) {
        if is_prime(l) {
            return Ok(l);
        }
        l += e;
    }
    Err(Error::NoSuitablePrime)
}

/// Degrees from the central characters of the class algebra over `F_l`.
///
/// Central characters `w` are the common eigenvectors of multiplication by
/// class sums, in coordinates `w_i = w(K_i)`. Random combinations of class
/// sums split the space until every eigenspace is a line; each line gives
/// `chi(1)^2 = |G| / sum_i w_i w_{i*} / |C_i|`, lifted from `F_l` to the
/// unique square at most `|G|`.
pub fn degrees_eigenvector(g: &ConcreteGroup, classes: &ClassData, opts: &EigenOptions) -> Result<DegreeReport> {
    let n = g.order() as u64;
    if n > opts.bound {
        return Err(Error::TooLarge {
            order: n,
            bound: opts.bound,
        });
    }
    let exponent = g.exponent();
    let l = suitable_prime(n, exponent)?;
    let f = Field { l };
    let k = classes.len();
    let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size() as u64).collect();
    let inv_class: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| classes.class_of[g.inv(c.representative) as usize] as usize)
        .collect();

    let derived = g.derived_subgroup();
    let linear_count = n / derived.order() as u64;
    let mut pending = if opts.split_linear {
        vec![nonlinear_ideal(g, classes, &derived, f)]
    } else {
        vec![Subspace {
            basis: (0..k)
                .map(|i| {
                    let mut v = vec![0; k];
                    v[i] = 1;
                    v
                })
                .collect(),
            pivots: (0..k).collect(),
        }]
    };
    pending.retain(|s| s.dim() > 0);
    let mut lines: Vec<Vec<u64>> = Vec::new();
    pending.retain(|s| {
        if s.dim() == 1 {
            lines.push(s.basis[0].clone());
            false
        } else {
            true
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rounds = 0usize;
    let mut idle = 0usize;
    while !pending.is_empty() {
        rounds += 1;
        let r: Vec<u64> = (0..k).map(|_| rng.random_range(0..l)).collect();
        let a = class_action(g, classes, &r, f);
        let mut next = Vec::new();
        let mut progress = false;
        for s in pending {
            let parts = split(&a, &s, f);
            if parts.len() <= 1 {
                next.push(s);
                continue;
            }
            progress = true;
            for part in parts {
                if part.dim() == 1 {
                    lines.push(part.basis[0].clone());
                } else {
                    next.push(part);
                }
            }
        }
        pending = next;
        if progress {
            idle = 0;
        } else {
            idle += 1;
            if idle > opts.retries {
                return Err(Error::RetryExhausted(opts.retries));
            }
        }
    }

    let gm = f.reduce(n);
    let mut degrees = BTreeMap::new();
    let mut residues = Vec::new();
    if opts.split_linear {
        degrees.insert(1u64, linear_count);
    }
    for v in &lines {
        let v0 = v[0];
        if v0 == 0 {
            return Err(Error::RetryExhausted(opts.retries));
        }
        let iv0 = f.inv(v0);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, iv0)).collect();
        let mut s = 0u64;
        for i in 0..k {
            let t = f.mul(f.mul(w[i], w[inv_class[i]]), f.inv(f.reduce(sizes[i])));
            s = f.add(s, t);
        }
        if s == 0 {
            return Err(Error::RetryExhausted(opts.retries));
        }
        let d2 = f.mul(gm, f.inv(s));
        residues.push(d2);
        let d = lift_square_root(d2, n, l).ok_or(Error::RetryExhausted(opts.retries))?;
        *degrees.entry(d).or_default() += 1;
    }
    residues.sort_unstable();
    let total: u64 = degrees.iter().map(|(&d, &m)| d * d * m).sum();
    let count: u64 = degrees.values().sum();
    let status = if total == n && count == k as u64 {
        Status::Exact
    } else {
        Status::Inconclusive
    };
    Ok(DegreeReport {
        degrees,
        strategy: Strategy::Eigenvector,
        status,
        certificate: Certificate::Eigenvector {
            modulus: l,
            exponent,
            seed: opts.seed,
            rounds,
            split_linear: opts.split_linear,
            class_count: k as u64,
            square_residues: residues,
        },
    })
}

/// `d` with `d^2 <= n` and `d^2 = r mod l`; unique because `l > 2 sqrt(n)`.
fn lift_square_root(r: u64, n: u64, l: u64) -> Option<u64> {
    let mut d = 1u64;
    while d * d <= n {
        if d * d % l == r {
            return Some(d);
        }
        d += 1;
    }
    None
}

/// `{w : sum_{i in K} w_i = 0 for every coset K of G'}`, which is spanned by
/// the nonlinear central characters.
fn nonlinear_ideal(g: &ConcreteGroup, classes: &ClassData, derived: &crate::group::Subgroup, f: Field) -> Subspace {
    let q = g.quotient(derived).expect("derived subgroup is normal");
    let k = classes.len();
    // classes grouped by coset, in class order
    let mut leader: Vec<Option<usize>> = vec![None; q.group.order()];
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    for (i, c) in classes.classes.iter().enumerate() {
        let coset = q.project(c.representative) as usize;
        match leader[coset] {
            None => leader[coset] = Some(i),
            Some(lead) => {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v[lead] = f.l - 1;
                basis.push(v);
                pivots.push(i);
            }
        }
    }
    Subspace { basis, pivots }
}

/// Matrix `A` of multiplication by `X = sum_j r_j K_j` in class-sum
/// coordinates: `(A w)_i = w(X) w_i` for every central character `w`.
/// Column `l` counts `y` with `y^-1 z_l` in each class, `z_l` the
/// representative of class `l`.
fn class_action(g: &ConcreteGroup, classes: &ClassData, r: &[u64], f: Field) -> Vec<Vec<u64>> {
    let k = classes.len();
    let n = g.order() as u32;
    let mut a = vec![vec![0u64; k]; k];
    for (l, c) in classes.classes.iter().enumerate() {
        let z = c.representative;
        for y in 0..n {
            let w = g.mul(g.inv(y), z);
            let i = classes.class_of[w as usize] as usize;
            let cy = r[classes.class_of[y as usize] as usize];
            a[i][l] = f.add(a[i][l], cy);
        }
    }
    a
}

/// Eigenspaces of `A` restricted to `s`. A single part means no split.
fn split(a: &[Vec<u64>], s: &Subspace, f: Field) -> Vec<Subspace> {
    let d = s.dim();
    let k = a.len();
    // images of the basis vectors
    let images: Vec<Vec<u64>> = s
        .basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|i| {
                    a[i].iter()
                        .zip(b)
                        .fold(0u64, |acc, (&x, &y)| if y == 0 { acc } else { f.add(acc, f.mul(x, y)) })
                })
                .collect()
        })
        .collect();
    // m[r][c] = coordinate r of A b_c
    let m: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| images[c][s.pivots[r]]).collect())
        .collect();
    let scalar = (0..d).all(|r| (0..d).all(|c| if r == c { m[r][c] == m[0][0] } else { m[r][c] == 0 }));
    if scalar {
        return vec![];
    }
    let cp = f.charpoly(&m);
    let mut parts = Vec::new();
    for lambda in f.roots(&cp) {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| if r == c { f.sub(m[r][c], lambda) } else { m[r][c] })
                    .collect()
            })
            .collect();
        let ns = f.nullspace(&shifted);
        if ns.is_empty() {
            continue;
        }
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|y| {
                let mut v = vec![0u64; k];
                for (c, &yc) in y.iter().enumerate() {
                    if yc == 0 {
                        continue;
                    }
                    for (j, &bj) in s.basis[c].iter().enumerate() {
                        if bj != 0 {
                            v[j] = f.add(v[j], f.mul(yc, bj));
                        }
                    }
                }
                v
            })
            .collect();
        let pivots = f.rref(&mut vecs, k);
        parts.push(Subspace { basis: vecs, pivots });
    }
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    if total != d {
        // not diagonalizable over F_l on this subspace; leave it for another
        // random combination
        return vec![];
    }
    parts
}
