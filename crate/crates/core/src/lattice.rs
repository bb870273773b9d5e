//! Integer linear algebra: Smith normal form and solvability of `A x = b`
//! over the integers.

/// Dot product of two integer coordinate vectors.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_scaled(acc: &mut [i64], v: &[i64], c: i64) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

/// Smith normal form `U A V = D` with unimodular `U` (m×m) and `V` (n×n).
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    /// Diagonal entries of `D`, length `min(m, n)`, nonnegative, each dividing the next nonzero one.
    pub diagonal: Vec<i128>,
    pub rows: usize,
    pub cols: usize,
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

impl Smith {
    pub fn new(a: &[Vec<i64>], cols: usize) -> Smith {
        let m = a.len();
        let n = cols;
        let mut d: Vec<Vec<i128>> = a
            .iter()
            .map(|row| {
                assert_eq!(row.len(), n, "ragged matrix");
                row.iter().map(|&x| x as i128).collect()
            })
            .collect();
        let mut u = identity(m);
        let mut v = identity(n);

        for t in 0..m.min(n) {
            loop {
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if d[i][j] != 0
                            && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        {
                            pivot = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = pivot else { break };
                d.swap(t, pi);
                u.swap(t, pi);
                for row in d.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }

                let mut clean = true;
                for i in t + 1..m {
                    let q = d[i][t] / d[t][t];
                    if q != 0 {
                        for j in 0..n {
                            d[i][j] -= q * d[t][j];
                        }
                        for j in 0..m {
                            u[i][j] -= q * u[t][j];
                        }
                    }
                    clean &= d[i][t] == 0;
                }
                for j in t + 1..n {
                    let q = d[t][j] / d[t][t];
                    if q != 0 {
                        for row in d.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for row in v.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    clean &= d[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let p = d[t][t];
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in 0..n {
                            d[t][j] += d[i][j];
                        }
                        for j in 0..m {
                            u[t][j] += u[i][j];
                        }
                    }
                    None => break,
                }
            }
            if d[t][t] < 0 {
                for x in d[t].iter_mut() {
                    *x = -*x;
                }
                for x in u[t].iter_mut() {
                    *x = -*x;
                }
            }
        }
        let diagonal = (0..m.min(n)).map(|t| d[t][t]).collect();
        Smith { u, v, diagonal, rows: m, cols: n }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&x| x != 0).count()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<i128> {
        self.diagonal.iter().copied().filter(|&x| x != 0).collect()
    }

    /// An integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(b.len(), self.rows);
        let c: Vec<i128> = self
            .u
            .iter()
            .map(|row| row.iter().zip(b).map(|(x, &y)| x * y as i128).sum())
            .collect();
        let mut y = vec![0i128; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            let di = self.diagonal.get(i).copied().unwrap_or(0);
            if di == 0 {
                if ci != 0 {
                    return None;
                }
            } else {
                if ci % di != 0 {
                    return None;
                }
                y[i] = ci / di;
            }
        }
        self.v
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                i64::try_from(s).ok()
            })
            .collect()
    }
}

/// Integer solution of `A x = b` where `A` has `cols` columns.
pub fn solve_integer(a: &[Vec<i64>], cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    Smith::new(a, cols).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        a.iter().map(|r| dot(r, x)).collect()
    }

    #[test]
    fn gl3_coweight_system() {
        let a = vec![vec![1, -1, 0], vec![0, 1, -1]];
        let x = solve_integer(&a, 3, &[1, 0]).unwrap();
        assert_eq!(apply(&a, &x), vec![1, 0]);
    }

    #[test]
    fn sl3_coweight_system_unsolvable() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        assert!(solve_integer(&a, 2, &[1, 0]).is_none());
        assert_eq!(Smith::new(&a, 2).invariant_factors(), vec![1, 3]);
    }

    #[test]
    fn zero_rows_and_columns() {
        let a = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(solve_integer(&a, 2, &[0, 0]), Some(vec![0, 0]));
        assert!(solve_integer(&a, 2, &[1, 0]).is_none());
        let empty: Vec<Vec<i64>> = vec![];
        assert_eq!(solve_integer(&empty, 2, &[]), Some(vec![0, 0]));
    }

    #[test]
    fn divisibility_chain() {
        let a = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(Smith::new(&a, 2).invariant_factors(), vec![1, 6]);
        let a = vec![vec![4, 6, 2], vec![6, 9, 3]];
        let s = Smith::new(&a, 3);
        assert_eq!(s.rank(), 1);
        let x = s.solve(&[2, 3]).unwrap();
        assert_eq!(apply(&a, &x), vec![2, 3]);
        assert!(s.solve(&[1, 0]).is_none());
    }
}
