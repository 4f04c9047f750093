//! Small dense matrices over `Q[q, q^-1]`.

use super::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            rows: vec![vec![Scalar::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    /// Square matrix from rows; `None` if the rows are ragged or not square.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix { n, rows })
    }

    pub fn diagonal(d: Vec<Scalar>) -> Self {
        let mut m = Self::zero(d.len());
        for (i, s) in d.into_iter().enumerate() {
            m.rows[i][i] = s;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.rows[i][j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.rows[i][j].is_zero()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division is
    /// exact in `Q[q, q^-1]`, so this is elimination over the fraction field
    /// without ever leaving the ring.
    pub fn determinant(&self) -> Scalar {
        let n = self.n;
        if n == 0 {
            return Scalar::one();
        }
        let mut a = self.rows.clone();
        let mut sign = false;
        let mut prev = Scalar::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Scalar::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let rows = (0..self.n)
            .filter(|&i| i != skip_row)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.rows[i][j].clone())
                    .collect()
            })
            .collect();
        Matrix { n: self.n - 1, rows }
    }

    /// Inverse over `Q[q, q^-1]`; exists iff the determinant is a unit.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.is_diagonal() {
            let d = (0..self.n)
                .map(|i| self.rows[i][i].inverse_unit())
                .collect::<Option<Vec<_>>>()?;
            return Some(Matrix::diagonal(d));
        }
        let det_inv = self.determinant().inverse_unit()?;
        let mut out = Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.minor(j, i).determinant();
                let c = if (i + j) % 2 == 1 { -c } else { c };
                out.rows[i][j] = &c * &det_inv;
            }
        }
        Some(out)
    }
}

/// Splits the index set of a sparse square operator into the connected
/// components of its row/column incidence graph. `support(i)` lists the
/// nonzero columns of row `i`. Each component is returned as
/// `(rows, cols)`; the operator is invertible iff every component is square
/// with nonzero determinant.
pub fn block_components<F: Fn(usize) -> Vec<usize>>(n: usize, support: F) -> Vec<(Vec<usize>, Vec<usize>)> {
    // union-find over 2n nodes: rows are 0..n, columns n..2n
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in support(i) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, n + j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for x in 0..2 * n {
        let r = find(&mut parent, x);
        let g = groups.entry(r).or_default();
        if x < n {
            g.0.push(x);
        } else {
            g.1.push(x - n);
        }
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let q = Scalar::q_pow(1);
        let m = Matrix::from_rows(vec![
            vec![q.clone(), s(1), s(0)],
            vec![s(2), Scalar::q_pow(-1), s(3)],
            vec![s(0), q.clone(), s(1)],
        ])
        .unwrap();
        // q(q^-1 - 3q) - 1(2 - 0) + 0 = 1 - 3q^2 - 2
        let expected = &s(-1) - &Scalar::from_terms([(2, num_rational::BigRational::from_integer(3.into()))]);
        assert_eq!(m.determinant(), expected);
    }

    #[test]
    fn singular_and_pivoting() {
        let m = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]).unwrap();
        assert_eq!(m.determinant(), s(-1));
        let z = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]).unwrap();
        assert!(z.determinant().is_zero());
        assert!(z.inverse().is_none());
    }

    #[test]
    fn inverse_over_laurent_ring() {
        let q = Scalar::q_pow(1);
        let m = Matrix::from_rows(vec![vec![q.clone(), s(1)], vec![s(0), Scalar::q_pow(2)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        // det = 1 + q is not a unit
        let m = Matrix::from_rows(vec![vec![s(1), s(-1)], vec![s(1), q]]).unwrap();
        assert!(m.inverse().is_none());
    }

    #[test]
    fn components_of_a_permutation_matrix() {
        let blocks = block_components(4, |i| vec![[1, 0, 3, 2][i]]);
        assert_eq!(blocks.len(), 4);
        let blocks = block_components(3, |i| if i == 0 { vec![0, 1] } else { vec![i] });
        assert_eq!(blocks.len(), 2);
    }
}
