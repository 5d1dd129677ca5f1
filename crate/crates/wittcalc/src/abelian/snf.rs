//! Smith normal form with transformation matrices.

use crate::matrix::Matrix;

/// `u · m · v = d`, with `d` diagonal and `d₁ | d₂ | …`, all non-negative.
/// `u_inv` and `v_inv` are the inverses of `u` and `v`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Work {
    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        for k in 0..self.a.cols() {
            self.a[(i, k)] += c * self.a[(j, k)];
        }
        for k in 0..self.u.cols() {
            self.u[(i, k)] += c * self.u[(j, k)];
        }
        for k in 0..self.u_inv.rows() {
            self.u_inv[(k, j)] -= c * self.u_inv[(k, i)];
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        for k in 0..self.a.rows() {
            self.a[(k, i)] += c * self.a[(k, j)];
        }
        for k in 0..self.v.rows() {
            self.v[(k, i)] += c * self.v[(k, j)];
        }
        for k in 0..self.v_inv.cols() {
            self.v_inv[(j, k)] -= c * self.v_inv[(i, k)];
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.a.cols() {
            let t = self.a[(i, k)];
            self.a[(i, k)] = self.a[(j, k)];
            self.a[(j, k)] = t;
        }
        for k in 0..self.u.cols() {
            let t = self.u[(i, k)];
            self.u[(i, k)] = self.u[(j, k)];
            self.u[(j, k)] = t;
        }
        for k in 0..self.u_inv.rows() {
            let t = self.u_inv[(k, i)];
            self.u_inv[(k, i)] = self.u_inv[(k, j)];
            self.u_inv[(k, j)] = t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.a.rows() {
            let t = self.a[(k, i)];
            self.a[(k, i)] = self.a[(k, j)];
            self.a[(k, j)] = t;
        }
        for k in 0..self.v.rows() {
            let t = self.v[(k, i)];
            self.v[(k, i)] = self.v[(k, j)];
            self.v[(k, j)] = t;
        }
        for k in 0..self.v_inv.cols() {
            let t = self.v_inv[(i, k)];
            self.v_inv[(i, k)] = self.v_inv[(j, k)];
            self.v_inv[(j, k)] = t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols() {
            self.a[(i, k)] = -self.a[(i, k)];
        }
        for k in 0..self.u.cols() {
            self.u[(i, k)] = -self.u[(i, k)];
        }
        for k in 0..self.u_inv.rows() {
            self.u_inv[(k, i)] = -self.u_inv[(k, i)];
        }
    }

    // Smallest non-zero |entry| in the trailing block, ties broken by (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form of an integer matrix.
pub fn snf(m: &Matrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)];
            // Clear column t; a remainder smaller than the pivot becomes the new pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_euclid(p);
                w.add_row(i, t, -q);
                if w.a[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_euclid(p);
                w.add_col(j, t, -q);
                if w.a[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                let (bi, bj) = smallest_in_cross(&w.a, t);
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // Divisibility of the remaining block.
            let p = w.a[(t, t)];
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| w.a[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[(t, t)] < 0 {
            w.negate_row(t);
        }
    }
    Snf { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv }
}

fn smallest_in_cross(a: &Matrix, t: usize) -> (usize, usize) {
    let mut best = (a[(t, t)].abs(), t, t);
    for i in t + 1..a.rows() {
        let x = a[(i, t)].abs();
        if x != 0 && x < best.0 {
            best = (x, i, t);
        }
    }
    for j in t + 1..a.cols() {
        let x = a[(t, j)].abs();
        if x != 0 && x < best.0 {
            best = (x, t, j);
        }
    }
    (best.1, best.2)
}

/// Basis (as matrix columns) of the integer kernel `{x ∈ Zⁿ : m x = 0}`.
pub fn integer_kernel(m: &Matrix) -> Matrix {
    let s = snf(m);
    let r = s.rank();
    s.v.col_range(r, m.cols())
}
