use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ledger::binomial;
use crate::linalg::PrimeField;

/// Degree-`d` monomials in `n + 1` variables, in graded lexicographic order
/// (within one degree: descending exponent of `x0`, then `x1`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: u32,
    d: u32,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

/// Monomial basis of degree-`d` forms on `P^n`.
pub fn enumerate_basis(n: u32, d: u32) -> Result<MonomialBasis> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("monomial basis needs n >= 1, got {n}")));
    }
    MonomialBasis::new(n, d)
}

impl MonomialBasis {
    /// Like [`enumerate_basis`], but also accepts `n = 0` (one variable).
    pub(crate) fn new(n: u32, d: u32) -> Result<Self> {
        let expected = binomial(n as u64 + d as u64, n as u64)?;
        let len = usize::try_from(expected).map_err(|_| Error::Overflow("monomial basis size"))?;
        let mut exps = Vec::with_capacity(len);
        let mut current = vec![0u32; n as usize + 1];
        fill(&mut current, 0, d, &mut exps);
        debug_assert_eq!(exps.len(), len);
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Self { n, d, exps, index })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn vars(&self) -> usize {
        self.n as usize + 1
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Values of every basis monomial at `point`.
    pub fn evaluate(&self, field: &PrimeField, point: &[u64]) -> Vec<u64> {
        assert_eq!(point.len(), self.vars());
        // powers[v][e] = point[v]^e
        let powers: Vec<Vec<u64>> = point
            .iter()
            .map(|&x| {
                let mut pw = Vec::with_capacity(self.d as usize + 1);
                let mut acc = 1 % field.modulus();
                for _ in 0..=self.d {
                    pw.push(acc);
                    acc = field.mul(acc, x);
                }
                pw
            })
            .collect();
        self.exps
            .iter()
            .map(|e| e.iter().enumerate().fold(1, |acc, (v, &k)| field.mul(acc, powers[v][k as usize])))
            .collect()
    }
}

fn fill(current: &mut [u32], var: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if var + 1 == current.len() {
        current[var] = left;
        out.push(current.to_vec());
        return;
    }
    for e in (0..=left).rev() {
        current[var] = e;
        fill(current, var + 1, left - e, out);
    }
    current[var] = 0;
}

/// Bases of every degree `0..=d` for a fixed variable count, with the
/// bookkeeping needed to build degree-`k` data from degree `k - 1`.
#[derive(Debug, Clone)]
pub(crate) struct Tower {
    levels: Vec<MonomialBasis>,
    /// `split[k][i] = (v, j)`: monomial `i` of degree `k` is `x_v` times monomial
    /// `j` of degree `k - 1`, with `v` the first variable present.
    split: Vec<Vec<(usize, usize)>>,
    /// `up[k][i * vars + w]`: index in degree `k + 1` of `x_w` times monomial `i`.
    up: Vec<Vec<usize>>,
}

impl Tower {
    pub(crate) fn new(n: u32, d: u32) -> Result<Self> {
        let levels = (0..=d).map(|k| MonomialBasis::new(n, k)).collect::<Result<Vec<_>>>()?;
        let vars = n as usize + 1;
        let mut split = vec![Vec::new()];
        let mut up = Vec::new();
        for k in 1..=d as usize {
            let (lower, upper) = (&levels[k - 1], &levels[k]);
            split.push(
                upper
                    .exps
                    .iter()
                    .map(|e| {
                        let v = e.iter().position(|&x| x > 0).expect("positive degree");
                        let mut parent = e.clone();
                        parent[v] -= 1;
                        (v, lower.index[&parent])
                    })
                    .collect(),
            );
            let mut table = Vec::with_capacity(lower.len() * vars);
            for e in &lower.exps {
                let mut child = e.clone();
                for w in 0..vars {
                    child[w] += 1;
                    table.push(upper.index[&child]);
                    child[w] -= 1;
                }
            }
            up.push(table);
        }
        Ok(Self { levels, split, up })
    }

    pub(crate) fn top(&self) -> &MonomialBasis {
        self.levels.last().expect("at least degree 0")
    }

    pub(crate) fn degree(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    fn vars(&self) -> usize {
        self.levels[0].vars()
    }
}

/// Images of every top-degree source monomial under the linear substitution
/// `x_j -> sum_w forms[j][w] * y_w`.
///
/// Returns `images[alpha][beta]`: the coefficient of target monomial `beta` in
/// the expansion of source monomial `alpha`.
pub(crate) fn substitute(field: &PrimeField, source: &Tower, target: &Tower, forms: &[Vec<u64>]) -> Vec<Vec<u64>> {
    assert_eq!(source.degree(), target.degree());
    assert_eq!(forms.len(), source.vars());
    let t = target.vars();
    assert!(forms.iter().all(|f| f.len() == t));

    let one = 1 % field.modulus();
    let mut prev: Vec<Vec<u64>> = vec![vec![one]];
    for k in 1..=source.degree() as usize {
        let tgt_len = target.levels[k].len();
        let up = &target.up[k - 1];
        let next = source.split[k]
            .iter()
            .map(|&(v, parent)| {
                let mut out = vec![0u64; tgt_len];
                for (beta, &c) in prev[parent].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (w, &l) in forms[v].iter().enumerate() {
                        if l != 0 {
                            let slot = &mut out[up[beta * t + w]];
                            *slot = field.add(*slot, field.mul(c, l));
                        }
                    }
                }
                out
            })
            .collect();
        prev = next;
    }
    prev
}
