//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

pub type Row<F> = Vec<<F as Field>::Elem>;

/// Reduced row echelon form in place. Zero rows are dropped; returns the
/// pivot column of each remaining row.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Row<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        if !field.is_one(&inv) {
            for x in rows[r][col..].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for k in col..ncols {
                if !field.is_zero(&pivot_row[k]) {
                    row[k] = field.sub(&row[k], &field.mul(&c, &pivot_row[k]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Row<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{v : M v = 0}` where `M` has `ncols` columns.
pub fn kernel<F: Field>(field: &F, rows: &[Row<F>], ncols: usize) -> Vec<Row<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `M x = b`, if any.
pub fn solve<F: Field>(field: &F, rows: &[Row<F>], b: &[F::Elem], ncols: usize) -> Option<Row<F>> {
    let mut aug: Vec<Row<F>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Row space of a matrix, kept in reduced echelon form so that equality of
/// subspaces is equality of the stored rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    dim_ambient: usize,
    rows: Vec<Row<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: &F, dim_ambient: usize, mut rows: Vec<Row<F>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == dim_ambient));
        let pivots = rref(field, &mut rows);
        Subspace { dim_ambient, rows, pivots }
    }

    pub fn zero(dim_ambient: usize) -> Self {
        Subspace { dim_ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, dim_ambient: usize) -> Self {
        let rows = (0..dim_ambient)
            .map(|i| {
                let mut r = vec![field.zero(); dim_ambient];
                r[i] = field.one();
                r
            })
            .collect();
        Subspace { dim_ambient, rows, pivots: (0..dim_ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Row<F>] {
        &self.rows
    }

    /// Reduces `v` against the echelon basis; zero iff `v` lies in the space.
    pub fn reduce(&self, field: &F, v: &[F::Elem]) -> Row<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for k in p..self.dim_ambient {
                if !field.is_zero(&row[k]) {
                    v[k] = field.sub(&v[k], &field.mul(&c, &row[k]));
                }
            }
        }
        v
    }

    pub fn contains_vec(&self, field: &F, v: &[F::Elem]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    pub fn contains(&self, field: &F, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|r| self.contains_vec(field, r))
    }

    pub fn sum(&self, field: &F, other: &Subspace<F>) -> Subspace<F> {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::new(field, self.dim_ambient, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Rationals;
        let m = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[1, 0, 1])];
        assert_eq!(rank(&f, &m), 2);
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert!(f.is_zero(&dot));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![1, 1], vec![1, 6]];
        let x = solve(&f, &m, &[3, 1], 2).unwrap();
        assert_eq!(f.add(&x[0], &x[1]), 3);
        assert_eq!(f.sub(&x[0], &x[1]), 1);
        let m = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&f, &m, &[1, 3], 2).is_none());
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let f = Rationals;
        let a = Subspace::new(&f, 3, vec![q(&[1, 1, 0]), q(&[0, 1, 1])]);
        let b = Subspace::new(&f, 3, vec![q(&[1, 2, 1]), q(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains_vec(&f, &q(&[2, 3, 1])));
        assert!(!a.contains_vec(&f, &q(&[0, 0, 1])));
    }
}
