//! Subschemes of a smooth quadric surface `Q = P1 x P1` and their conditions
//! on forms of bidegree `(a, b)`.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{DenseMatrix, PrimeField};

/// `alpha` lines of the first ruling, `beta` simple points, `gamma` simple
/// points on one further first-ruling line, and `delta` double points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadricScheme {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub delta: u64,
}

impl QuadricScheme {
    pub fn new(alpha: u64, beta: u64, gamma: u64, delta: u64) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    /// Conditions imposed on bidegree `(a, b)` forms, counted naively.
    pub fn conditions(&self, b: u64) -> u64 {
        self.alpha * (b + 1) + self.beta + self.gamma + 3 * self.delta
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// Draws field elements without repetition.
struct Distinct<'a> {
    field: PrimeField,
    rng: &'a mut ChaCha8Rng,
    seen: HashSet<u64>,
}

impl Distinct<'_> {
    fn next(&mut self) -> u64 {
        assert!((self.seen.len() as u64) < self.field.modulus(), "field too small for distinct parameters");
        loop {
            let x = self.field.random(self.rng);
            if self.seen.insert(x) {
                return x;
            }
        }
    }
}

/// Condition matrix of `scheme` on bidegree `(a, b)` forms.
///
/// Column `i * (b + 1) + j` is the monomial `u0^(a-i) u1^i v0^(b-j) v1^j`.
/// Points and lines use the affine chart `u0 = v0 = 1`; first-ruling lines
/// are `{u = const}`. Parameters are sampled pairwise distinct, which is
/// the genericity these schemes need.
pub fn quadric_rows(scheme: &QuadricScheme, a: u32, b: u32, field: PrimeField, seed: u64) -> Result<DenseMatrix> {
    let (a, b) = (a as usize, b as usize);
    let cols = (a + 1) * (b + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut us = Distinct { field, rng: &mut rng, seen: HashSet::new() };
    let lines: Vec<u64> = (0..scheme.alpha).map(|_| us.next()).collect();
    let gamma_line = us.next();
    let point_us: Vec<u64> = (0..scheme.beta + scheme.delta).map(|_| us.next()).collect();
    let mut vs = Distinct { field, rng: us.rng, seen: HashSet::new() };
    let gamma_vs: Vec<u64> = (0..scheme.gamma).map(|_| vs.next()).collect();
    let point_vs: Vec<u64> = (0..scheme.beta + scheme.delta).map(|_| vs.next()).collect();

    let powers = |x: u64, k: usize| -> Vec<u64> {
        let mut out = Vec::with_capacity(k + 1);
        let mut acc = 1 % field.modulus();
        for _ in 0..=k {
            out.push(acc);
            acc = field.mul(acc, x);
        }
        out
    };
    // i * x^(i-1), the derivative of the power table
    let dpowers = |x: u64, k: usize| -> Vec<u64> {
        let p = powers(x, k);
        (0..=k).map(|i| if i == 0 { 0 } else { field.mul(field.reduce(i as u64), p[i - 1]) }).collect()
    };
    let tensor = |pu: &[u64], pv: &[u64]| -> Vec<u64> {
        let mut row = Vec::with_capacity(cols);
        for &x in pu {
            for &y in pv {
                row.push(field.mul(x, y));
            }
        }
        row
    };

    let mut m = DenseMatrix::zeros(field, 0, cols);
    for &u in &lines {
        let pu = powers(u, a);
        for k in 0..=b {
            let mut row = vec![0; cols];
            for i in 0..=a {
                row[i * (b + 1) + k] = pu[i];
            }
            m.push_row(&row);
        }
    }
    let pg = powers(gamma_line, a);
    for &v in &gamma_vs {
        m.push_row(&tensor(&pg, &powers(v, b)));
    }
    let (simple, double) = point_us.split_at(scheme.beta as usize);
    let (simple_v, double_v) = point_vs.split_at(scheme.beta as usize);
    for (&u, &v) in simple.iter().zip(simple_v) {
        m.push_row(&tensor(&powers(u, a), &powers(v, b)));
    }
    for (&u, &v) in double.iter().zip(double_v) {
        let (pu, pv) = (powers(u, a), powers(v, b));
        m.push_row(&tensor(&pu, &pv));
        m.push_row(&tensor(&dpowers(u, a), &pv));
        m.push_row(&tensor(&pu, &dpowers(v, b)));
    }
    Ok(m)
}

/// `h0` of the ideal of `scheme` in bidegree `(a, b)` for one sample.
pub fn quadric_h0(scheme: &QuadricScheme, a: u32, b: u32, field: PrimeField, seed: u64) -> Result<u64> {
    let m = quadric_rows(scheme, a, b, field, seed)?;
    Ok((m.cols() - m.into_rank()) as u64)
}
