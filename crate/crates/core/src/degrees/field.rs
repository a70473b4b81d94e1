//! Dense linear algebra over a prime field `F_l` with `l < 2^31`.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub l: u64,
}

impl Field {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.l;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.l));
        self.pow(a, self.l - 2)
    }

    pub fn reduce(self, a: u64) -> u64 {
        a % self.l
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(s) = (r..rows.len()).find(|&s| rows[s][c] != 0) else {
                continue;
            };
            rows.swap(r, s);
            let iv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, iv);
            }
            for s in 0..rows.len() {
                if s != r && rows[s][c] != 0 {
                    let f = rows[s][c];
                    for j in 0..cols {
                        let v = self.mul(f, rows[r][j]);
                        rows[s][j] = self.sub(rows[s][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{y : M y = 0}` for a square `d x d` matrix.
    pub fn nullspace(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = m.len();
        let mut rows: Vec<Vec<u64>> = m.to_vec();
        let pivots = self.rref(&mut rows, d);
        let mut basis = Vec::new();
        for free in (0..d).filter(|c| !pivots.contains(c)) {
            let mut y = vec![0u64; d];
            y[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                y[pc] = self.sub(0, rows[r][free]);
            }
            basis.push(y);
        }
        basis
    }

    /// Characteristic polynomial `det(x I - M)`, coefficients from the
    /// constant term up, by reduction to Hessenberg form.
    pub fn charpoly(self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        // similarity transforms to upper Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&r| h[r][c] != 0) else {
                continue;
            };
            if piv != c + 1 {
                h.swap(piv, c + 1);
                for row in h.iter_mut() {
                    row.swap(piv, c + 1);
                }
            }
            let iv = self.inv(h[c + 1][c]);
            for r in c + 2..n {
                if h[r][c] == 0 {
                    continue;
                }
                let f = self.mul(h[r][c], iv);
                // row_r -= f row_{c+1}
                for j in 0..n {
                    let v = self.mul(f, h[c + 1][j]);
                    h[r][j] = self.sub(h[r][j], v);
                }
                // col_{c+1} += f col_r
                for row in h.iter_mut() {
                    let v = self.mul(f, row[r]);
                    row[c + 1] = self.add(row[c + 1], v);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(h[k][k], c));
            }
            let mut t = 1u64;
            for i in (0..k).rev() {
                t = self.mul(t, h[i + 1][i]);
                if t == 0 {
                    break;
                }
                let f = self.mul(t, h[i][k]);
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = self.sub(next[j], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in `F_l`, ascending.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.l).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}
