use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;

/// Row-major dense matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    field: PrimeField,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols], field }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.data[i * size + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from rows of already reduced entries.
    ///
    /// Panics if the rows have different lengths or an entry is not reduced.
    pub fn from_rows(field: PrimeField, cols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut m = Self::zeros(field, 0, cols);
        for r in rows {
            m.push_row(&r);
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing each entry.
    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols);
        assert!(v < self.field.modulus(), "entry {v} not reduced");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        // chunks_exact(0) panics, and a zero-column matrix has no entries anyway
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let p = self.field.modulus();
        assert!(row.iter().all(|&x| x < p), "row entries must be reduced");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &DenseMatrix) {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                self.field.axpy(dst, rhs.row(k), self.data[i * self.cols + k]);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        self.row_iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b))))
            .collect()
    }

    /// Rank over the field. Works on a copy; see [`DenseMatrix::into_rank`].
    pub fn rank(&self) -> usize {
        self.clone().into_rank()
    }

    /// Rank over the field, reusing this matrix's storage for the elimination.
    pub fn into_rank(mut self) -> usize {
        let (rows, cols, f) = (self.rows, self.cols, self.field);
        let data = &mut self.data;
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in col..cols {
                    data.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(data[rank * cols + col]).expect("pivot is nonzero");
            f.scale(&mut data[rank * cols + col..(rank + 1) * cols], inv);

            let (top, bottom) = data.split_at_mut((rank + 1) * cols);
            let pivot_row = &top[rank * cols + col..];
            for row in bottom.chunks_exact_mut(cols) {
                let lead = row[col];
                if lead != 0 {
                    f.axpy(&mut row[col..], pivot_row, f.neg(lead));
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A random invertible `size x size` matrix, deterministic in `seed`.
pub fn random_invertible(field: PrimeField, size: usize, seed: u64) -> DenseMatrix {
    assert!(size >= 1, "size must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = random_matrix(field, size, size, &mut rng);
        if m.rank() == size {
            return m;
        }
    }
}

pub(crate) fn random_matrix<R: rand::Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(field, rows, cols);
    for x in &mut m.data {
        *x = field.random(rng);
    }
    m
}
