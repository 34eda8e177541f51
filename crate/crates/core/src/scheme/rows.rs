//! Linear conditions imposed on degree-`d` forms by each component.
//!
//! Columns are indexed by the [`MonomialBasis`] of degree `d`; a form with
//! coefficient vector `c` contains the component iff every row annihilates `c`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{substitute, MonomialBasis, Tower};
use super::sample::{sample_config_with, span_rank, Geometry, Point, SampledComponent};
use crate::config::{ComponentKind, SchemeConfig};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField};

pub type Row = Vec<u64>;

/// Which rows a sundial emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SundialRows {
    /// Exactly `2(d+1)` rows, one per independent condition.
    #[default]
    Minimal,
    /// Both line blocks, the value at the singular point and three
    /// directional derivatives spanning its 3-space.
    Full,
}

/// Row generator for one `(n, d)` pair; reuses the monomial tables.
#[derive(Debug)]
pub struct RowBuilder {
    field: PrimeField,
    n: u32,
    d: u32,
    source: Tower,
    binary: Tower,
}

impl RowBuilder {
    pub fn new(field: PrimeField, n: u32, d: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange(format!("row generation needs n >= 1, got {n}")));
        }
        Ok(Self { field, n, d, source: Tower::new(n, d)?, binary: Tower::new(1, d)? })
    }

    pub fn basis(&self) -> &MonomialBasis {
        self.source.top()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn vars(&self) -> usize {
        self.n as usize + 1
    }

    fn check_point(&self, p: &[u64]) -> Result<()> {
        if p.len() != self.vars() {
            return Err(Error::Degenerate(format!("point has {} coordinates, expected {}", p.len(), self.vars())));
        }
        Ok(())
    }

    /// One evaluation row.
    pub fn evaluation(&self, p: &Point) -> Result<Row> {
        self.check_point(p)?;
        if p.iter().all(|&x| x == 0) {
            return Err(Error::Degenerate("zero vector is not a point".into()));
        }
        Ok(self.basis().evaluate(&self.field, p))
    }

    /// The `d + 1` coefficient rows of `f(s a + t b)`; row `k` is the
    /// coefficient of `s^(d-k) t^k`.
    pub fn line(&self, a: &Point, b: &Point) -> Result<Vec<Row>> {
        self.check_point(a)?;
        self.check_point(b)?;
        if span_rank(self.field, &[a, b]) != 2 {
            return Err(Error::Degenerate("line through coincident points".into()));
        }
        Ok(self.pencil(a, b))
    }

    fn pencil(&self, a: &Point, b: &Point) -> Vec<Row> {
        let forms: Vec<Vec<u64>> = a.iter().zip(b).map(|(&x, &y)| vec![x, y]).collect();
        let images = substitute(&self.field, &self.source, &self.binary, &forms);
        (0..=self.d as usize).map(|k| images.iter().map(|img| img[k]).collect()).collect()
    }

    /// Rows for the `m`-fold structure on the span of `span`.
    ///
    /// The spanning points are completed to a basis with points drawn from
    /// `rng`; the row space does not depend on the completion.
    pub fn fat_space<R: Rng>(&self, span: &[Point], m: u32, rng: &mut R) -> Result<Vec<Row>> {
        let r = span.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty spanning set".into()))?;
        span.iter().try_for_each(|p| self.check_point(p))?;
        if r >= self.vars() - 1 || m == 0 || m > self.d + 1 {
            return Err(Error::OutOfRange(format!("fat space of dimension {r}, multiplicity {m} in P^{} degree {}", self.n, self.d)));
        }
        if span_rank(self.field, &span.iter().collect::<Vec<_>>()) != span.len() {
            return Err(Error::Degenerate("spanning points are dependent".into()));
        }
        if r == 0 && m == 1 {
            return Ok(vec![self.evaluation(&span[0])?]);
        }
        let columns = loop {
            let mut cols = span.to_vec();
            cols.extend((span.len()..self.vars()).map(|_| (0..self.vars()).map(|_| self.field.random(rng)).collect()));
            if span_rank(self.field, &cols.iter().collect::<Vec<_>>()) == self.vars() {
                break cols;
            }
        };
        // x_j = sum_w columns[w][j] y_w carries {y_(r+1) = .. = y_n = 0} onto the span
        let forms: Vec<Vec<u64>> = (0..self.vars()).map(|j| columns.iter().map(|c| c[j]).collect()).collect();
        let images = substitute(&self.field, &self.source, &self.source, &forms);
        let keep = self
            .source
            .top()
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| e[r + 1..].iter().sum::<u32>() < m)
            .map(|(beta, _)| beta);
        Ok(keep.map(|beta| images.iter().map(|img| img[beta]).collect()).collect())
    }

    pub fn collinear(&self, points: &[Point]) -> Result<Vec<Row>> {
        points.iter().map(|p| self.evaluation(p)).collect()
    }

    /// Rows for the sundial with lines `<p, a>`, `<p, b>` and 3-space `<p, a, b, c>`.
    pub fn sundial(&self, p: &Point, a: &Point, b: &Point, c: &Point, mode: SundialRows) -> Result<Vec<Row>> {
        for q in [p, a, b, c] {
            self.check_point(q)?;
        }
        if span_rank(self.field, &[p, a, b]) != 3 {
            return Err(Error::Degenerate("sundial lines do not span a plane".into()));
        }
        if span_rank(self.field, &[p, a, b, c]) != 4 {
            return Err(Error::Degenerate("sundial 3-space has dimension below 3".into()));
        }
        let d = self.d as usize;
        let mut rows = self.pencil(p, a);
        match mode {
            SundialRows::Minimal => {
                rows.extend(self.pencil(p, b).into_iter().skip(1));
                if d == 0 {
                    rows.push(rows[0].clone());
                } else {
                    rows.push(self.pencil(p, c).swap_remove(1));
                }
            }
            SundialRows::Full => {
                let lm = self.pencil(p, b);
                rows.extend(lm.iter().cloned());
                rows.push(self.evaluation(p)?);
                for q in [a, b, c] {
                    let derivative = if d == 0 { vec![0; rows[0].len()] } else { self.pencil(p, q).swap_remove(1) };
                    rows.push(derivative);
                }
            }
        }
        Ok(rows)
    }

    /// Rows for the two lines `<p, a>` and `<p, b>`: `2d + 1` of them.
    pub fn conic(&self, p: &Point, a: &Point, b: &Point) -> Result<Vec<Row>> {
        if span_rank(self.field, &[p, a, b]) != 3 {
            return Err(Error::Degenerate("conic lines coincide".into()));
        }
        let mut rows = self.line(p, a)?;
        rows.extend(self.line(p, b)?.into_iter().skip(1));
        Ok(rows)
    }

    /// Rows for one sampled component, in the minimal emission.
    pub fn component<R: Rng>(&self, comp: &SampledComponent, rng: &mut R) -> Result<Vec<Row>> {
        match (&comp.geometry, comp.spec.kind) {
            (Geometry::Line { a, b }, ComponentKind::Line) => self.line(a, b),
            (Geometry::Plane { span }, ComponentKind::FatLinearSpace { mult, .. }) => self.fat_space(span, mult, rng),
            (Geometry::Point { p }, ComponentKind::FatPoint { mult }) => self.fat_space(std::slice::from_ref(p), mult, rng),
            (Geometry::Collinear { points, .. }, ComponentKind::CollinearPoints { .. }) => self.collinear(points),
            (Geometry::Sundial { p, a, b, c }, ComponentKind::Sundial) => self.sundial(p, a, b, c, SundialRows::Minimal),
            (Geometry::Conic { p, a, b }, ComponentKind::DegenerateConic) => self.conic(p, a, b),
            (g, k) => Err(Error::Degenerate(format!("geometry {g:?} does not match kind {k}"))),
        }
    }

    /// Stacks the rows of every component.
    pub fn assemble<R: Rng>(&self, comps: &[SampledComponent], rng: &mut R) -> Result<DenseMatrix> {
        let mut m = DenseMatrix::zeros(self.field, 0, self.basis().len());
        for c in comps {
            for row in self.component(c, rng)? {
                m.push_row(&row);
            }
        }
        Ok(m)
    }
}

/// Samples `config` and stacks all its condition rows; deterministic in `seed`.
pub fn assemble_matrix(config: &SchemeConfig, field: PrimeField, seed: u64) -> Result<DenseMatrix> {
    let builder = RowBuilder::new(field, config.n, config.d)?;
    assemble_with(&builder, config, seed).map(|(m, _)| m)
}

/// Like [`assemble_matrix`] with a reusable builder; also returns the geometry.
pub fn assemble_with(builder: &RowBuilder, config: &SchemeConfig, seed: u64) -> Result<(DenseMatrix, Vec<SampledComponent>)> {
    if (builder.n, builder.d) != (config.n, config.d) {
        return Err(Error::OutOfRange("row builder built for a different (n, d)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = sample_config_with(config, builder.field, &mut rng)?;
    let m = builder.assemble(&comps, &mut rng)?;
    Ok((m, comps))
}
