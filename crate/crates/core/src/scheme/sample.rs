//! Generic geometry over the prime field.
//!
//! Constrained components are placed on fixed model hypersurfaces: the
//! hyperplane `x_n = 0`, or in `P3` the quadric `x0 x3 = x1 x2`, the image of
//! `P1 x P1` under `([a0:a1], [b0:b1]) -> (a0 b0, a0 b1, a1 b0, a1 b1)`. Every
//! free coordinate is uniform, so this loses no genericity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ComponentKind, ComponentSpec, Constraint, Ruling, SchemeConfig};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField};

pub type Point = Vec<u64>;

/// Resampling budget before a configuration is declared non-generic.
pub const MAX_SAMPLE_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    /// The line through `a` and `b`.
    Line { a: Point, b: Point },
    /// The linear space spanned by `span`.
    Plane { span: Vec<Point> },
    Point { p: Point },
    /// Points on the line through `a` and `b`.
    Collinear { a: Point, b: Point, points: Vec<Point> },
    /// Lines `<p, a>` and `<p, b>` meeting at `p`, inside `T = <p, a, b, c>`.
    Sundial { p: Point, a: Point, b: Point, c: Point },
    /// Lines `<p, a>` and `<p, b>`.
    Conic { p: Point, a: Point, b: Point },
}

impl Geometry {
    /// Points spanning the linear hull of the component's support.
    pub fn support_span(&self) -> Vec<&Point> {
        match self {
            Geometry::Line { a, b } | Geometry::Collinear { a, b, .. } => vec![a, b],
            Geometry::Plane { span } => span.iter().collect(),
            Geometry::Point { p } => vec![p],
            Geometry::Sundial { p, a, b, .. } | Geometry::Conic { p, a, b } => vec![p, a, b],
        }
    }

    fn map_points(&self, f: impl Fn(&Point) -> Point) -> Geometry {
        match self {
            Geometry::Line { a, b } => Geometry::Line { a: f(a), b: f(b) },
            Geometry::Plane { span } => Geometry::Plane { span: span.iter().map(&f).collect() },
            Geometry::Point { p } => Geometry::Point { p: f(p) },
            Geometry::Collinear { a, b, points } => {
                Geometry::Collinear { a: f(a), b: f(b), points: points.iter().map(&f).collect() }
            }
            Geometry::Sundial { p, a, b, c } => Geometry::Sundial { p: f(p), a: f(a), b: f(b), c: f(c) },
            Geometry::Conic { p, a, b } => Geometry::Conic { p: f(p), a: f(a), b: f(b) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledComponent {
    pub spec: ComponentSpec,
    pub geometry: Geometry,
}

impl SampledComponent {
    /// Applies the projective linear map `g` to every point.
    pub fn transform(&self, g: &DenseMatrix) -> SampledComponent {
        SampledComponent { spec: self.spec, geometry: self.geometry.map_points(|p| g.apply(p)) }
    }
}

/// Rank of a set of points, as rows of a matrix.
pub fn span_rank(field: PrimeField, points: &[&Point]) -> usize {
    let cols = points.first().map_or(0, |p| p.len());
    DenseMatrix::from_rows(field, cols, points.iter().map(|p| p.to_vec())).into_rank()
}

struct Sampler<'a, R> {
    field: PrimeField,
    n: usize,
    rng: &'a mut R,
}

impl<R: Rng> Sampler<'_, R> {
    fn point(&mut self) -> Point {
        (0..=self.n).map(|_| self.field.random(self.rng)).collect()
    }

    fn point_in_hyperplane(&mut self) -> Point {
        let mut p = self.point();
        p[self.n] = 0;
        p
    }

    fn p1(&mut self) -> [u64; 2] {
        [1, self.field.random(self.rng)]
    }

    fn segre(&self, a: [u64; 2], b: [u64; 2]) -> Point {
        let f = &self.field;
        vec![f.mul(a[0], b[0]), f.mul(a[0], b[1]), f.mul(a[1], b[0]), f.mul(a[1], b[1])]
    }

    fn point_on_quadric(&mut self) -> Point {
        let (a, b) = (self.p1(), self.p1());
        self.segre(a, b)
    }

    /// Two points spanning a line of the given ruling.
    fn ruling_line(&mut self, ruling: Ruling) -> (Point, Point) {
        let fixed = self.p1();
        let (e0, e1) = ([1, 0], [0, 1]);
        match ruling {
            Ruling::First => (self.segre(fixed, e0), self.segre(fixed, e1)),
            Ruling::Second => (self.segre(e0, fixed), self.segre(e1, fixed)),
        }
    }

    fn line_points(&mut self, a: &Point, b: &Point, count: u32) -> Vec<Point> {
        (0..count)
            .map(|_| {
                let t = self.field.random(self.rng);
                a.iter().zip(b).map(|(&x, &y)| self.field.add(x, self.field.mul(t, y))).collect()
            })
            .collect()
    }

    fn component(&mut self, spec: ComponentSpec) -> Result<Geometry> {
        use ComponentKind as K;
        use Constraint as C;
        let geometry = match (spec.kind, spec.constraint) {
            (K::Line, C::OnQuadricRuling(r)) => {
                let (a, b) = self.ruling_line(r);
                Geometry::Line { a, b }
            }
            (K::Line, c) => {
                let (a, b) = (self.placed(c), self.placed(c));
                Geometry::Line { a, b }
            }
            (K::FatLinearSpace { dim, .. }, c) => {
                Geometry::Plane { span: (0..=dim).map(|_| self.placed(c)).collect() }
            }
            (K::FatPoint { .. }, c) => Geometry::Point { p: self.placed(c) },
            (K::CollinearPoints { count }, C::OnQuadricRuling(r)) => {
                let (a, b) = self.ruling_line(r);
                let points = self.line_points(&a, &b, count);
                Geometry::Collinear { a, b, points }
            }
            (K::CollinearPoints { count }, C::SupportOnQuadric) => {
                // at most two points of a generic line lie on the quadric
                let (a, b) = (self.point_on_quadric(), self.point_on_quadric());
                let points = [a.clone(), b.clone()].into_iter().take(count as usize).collect();
                Geometry::Collinear { a, b, points }
            }
            (K::CollinearPoints { count }, c) => {
                let (a, b) = (self.placed(c), self.placed(c));
                let points = self.line_points(&a, &b, count);
                Geometry::Collinear { a, b, points }
            }
            (K::Sundial, c) => {
                let p = self.placed(c);
                let (a, b) = match c {
                    C::InHyperplane => (self.point_in_hyperplane(), self.point_in_hyperplane()),
                    _ => (self.point(), self.point()),
                };
                let c = self.point();
                Geometry::Sundial { p, a, b, c }
            }
            (K::DegenerateConic, c) => {
                let p = self.placed(c);
                let (a, b) = match c {
                    C::InHyperplane => (self.point_in_hyperplane(), self.point_in_hyperplane()),
                    _ => (self.point(), self.point()),
                };
                Geometry::Conic { p, a, b }
            }
        };
        Ok(geometry)
    }

    /// A point honoring a point-level constraint.
    fn placed(&mut self, c: Constraint) -> Point {
        match c {
            Constraint::InHyperplane => self.point_in_hyperplane(),
            Constraint::SupportOnQuadric => self.point_on_quadric(),
            Constraint::Free | Constraint::OnQuadricRuling(_) => self.point(),
        }
    }
}

/// Whether a component's own spanning data is nondegenerate.
fn internally_generic(field: PrimeField, g: &Geometry) -> bool {
    match g {
        Geometry::Line { a, b } => span_rank(field, &[a, b]) == 2,
        Geometry::Plane { span } => span_rank(field, &span.iter().collect::<Vec<_>>()) == span.len(),
        Geometry::Point { p } => p.iter().any(|&x| x != 0),
        Geometry::Collinear { a, b, points } => {
            span_rank(field, &[a, b]) == 2
                && points.iter().all(|p| p.iter().any(|&x| x != 0))
                && points
                    .iter()
                    .enumerate()
                    .all(|(i, p)| points[..i].iter().all(|q| span_rank(field, &[p, q]) == 2))
        }
        Geometry::Sundial { p, a, b, c } => span_rank(field, &[p, a, b]) == 3 && span_rank(field, &[p, a, b, c]) == 4,
        Geometry::Conic { p, a, b } => span_rank(field, &[p, a, b]) == 3,
    }
}

/// Rank the union of two supports should have in general position.
fn expected_joint_rank(n: usize, x: &SampledComponent, y: &SampledComponent, rx: usize, ry: usize) -> usize {
    if let (Constraint::OnQuadricRuling(a), Constraint::OnQuadricRuling(b)) = (x.spec.constraint, y.spec.constraint) {
        if a != b {
            // lines of opposite rulings meet
            return 3;
        }
    }
    let both_in_h = x.spec.constraint == Constraint::InHyperplane && y.spec.constraint == Constraint::InHyperplane;
    let ambient = if both_in_h { n } else { n + 1 };
    (rx + ry).min(ambient)
}

fn check_generic(field: PrimeField, n: usize, comps: &[SampledComponent]) -> std::result::Result<(), String> {
    for (i, c) in comps.iter().enumerate() {
        if !internally_generic(field, &c.geometry) {
            return Err(format!("component {i} ({}) is degenerate", c.spec.kind));
        }
    }
    let ranks: Vec<usize> = comps.iter().map(|c| span_rank(field, &c.geometry.support_span())).collect();
    for i in 0..comps.len() {
        for j in 0..i {
            let mut joint = comps[i].geometry.support_span();
            joint.extend(comps[j].geometry.support_span());
            let want = expected_joint_rank(n, &comps[i], &comps[j], ranks[i], ranks[j]);
            if span_rank(field, &joint) != want {
                return Err(format!("components {j} and {i} are in special position"));
            }
        }
    }
    Ok(())
}

/// Samples generic geometry for every component, continuing from `rng`.
pub fn sample_config_with<R: Rng>(config: &SchemeConfig, field: PrimeField, rng: &mut R) -> Result<Vec<SampledComponent>> {
    config.validate()?;
    let n = config.n as usize;
    let mut last = String::new();
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let mut sampler = Sampler { field, n, rng: &mut *rng };
        let comps = config
            .components
            .iter()
            .map(|&spec| Ok(SampledComponent { spec, geometry: sampler.component(spec)? }))
            .collect::<Result<Vec<_>>>()?;
        match check_generic(field, n, &comps) {
            Ok(()) => return Ok(comps),
            Err(why) => last = why,
        }
    }
    Err(Error::Genericity { attempts: MAX_SAMPLE_ATTEMPTS, what: last })
}

/// Samples generic geometry for every component; deterministic in `seed`.
pub fn sample_config(config: &SchemeConfig, field: PrimeField, seed: u64) -> Result<Vec<SampledComponent>> {
    sample_config_with(config, field, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Hypersurface;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn one_line_is_two_distinct_points() {
        let cfg = SchemeConfig::new(3, 2).push(ComponentKind::Line, 1);
        let comps = sample_config(&cfg, f(), 7).unwrap();
        let Geometry::Line { a, b } = &comps[0].geometry else { panic!() };
        assert_eq!(span_rank(f(), &[a, b]), 2);
        assert_eq!(comps, sample_config(&cfg, f(), 7).unwrap());
        assert_ne!(comps, sample_config(&cfg, f(), 8).unwrap());
    }

    #[test]
    fn two_free_lines_in_p3_are_skew() {
        let cfg = SchemeConfig::new(3, 2).push(ComponentKind::Line, 2);
        for seed in 0..10 {
            let comps = sample_config(&cfg, f(), seed).unwrap();
            let mut pts = comps[0].geometry.support_span();
            pts.extend(comps[1].geometry.support_span());
            assert_eq!(span_rank(f(), &pts), 4);
        }
    }

    #[test]
    fn sundial_geometry_in_p4() {
        let cfg = SchemeConfig::new(4, 3).push(ComponentKind::Sundial, 1);
        let comps = sample_config(&cfg, f(), 1).unwrap();
        let Geometry::Sundial { p, a, b, c } = &comps[0].geometry else { panic!() };
        // L = <p,a> and M = <p,b> span a plane, so they meet in exactly one point
        assert_eq!(span_rank(f(), &[p, a]), 2);
        assert_eq!(span_rank(f(), &[p, b]), 2);
        assert_eq!(span_rank(f(), &[p, a, b]), 3);
        // T has projective dimension 3 and contains both lines
        assert_eq!(span_rank(f(), &[p, a, b, c]), 4);
    }

    #[test]
    fn constrained_components_land_on_their_hypersurface() {
        let cfg = SchemeConfig::new(4, 3)
            .with_context(Hypersurface::Hyperplane)
            .push_constrained(ComponentKind::Line, Constraint::InHyperplane, 2)
            .push_constrained(ComponentKind::Sundial, Constraint::InHyperplane, 1)
            .push(ComponentKind::Line, 1);
        let comps = sample_config(&cfg, f(), 3).unwrap();
        for c in &comps[..3] {
            assert!(c.geometry.support_span().iter().all(|p| p[4] == 0));
        }
        let Geometry::Sundial { c, .. } = &comps[2].geometry else { panic!() };
        assert_ne!(c[4], 0);

        let quad = |p: &Point| f().sub(f().mul(p[0], p[3]), f().mul(p[1], p[2]));
        let cfg = SchemeConfig::new(3, 4)
            .with_context(Hypersurface::Quadric)
            .push_constrained(ComponentKind::Line, Constraint::OnQuadricRuling(Ruling::First), 3)
            .push_constrained(ComponentKind::FatPoint { mult: 2 }, Constraint::SupportOnQuadric, 1)
            .push_constrained(ComponentKind::CollinearPoints { count: 2 }, Constraint::SupportOnQuadric, 1);
        let comps = sample_config(&cfg, f(), 5).unwrap();
        for c in &comps {
            match &c.geometry {
                Geometry::Line { a, b } => {
                    // the whole line lies on the quadric, not just the spanning points
                    let mid: Point = a.iter().zip(b).map(|(&x, &y)| f().add(x, f().mul(17, y))).collect();
                    assert_eq!(quad(&mid), 0);
                }
                Geometry::Point { p } => assert_eq!(quad(p), 0),
                Geometry::Collinear { points, .. } => assert!(points.iter().all(|p| quad(p) == 0)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn opposite_rulings_meet_and_are_accepted() {
        let cfg = SchemeConfig::new(3, 2)
            .with_context(Hypersurface::Quadric)
            .push_constrained(ComponentKind::Line, Constraint::OnQuadricRuling(Ruling::First), 1)
            .push_constrained(ComponentKind::Line, Constraint::OnQuadricRuling(Ruling::Second), 1);
        let comps = sample_config(&cfg, f(), 0).unwrap();
        let mut pts = comps[0].geometry.support_span();
        pts.extend(comps[1].geometry.support_span());
        assert_eq!(span_rank(f(), &pts), 3);
    }

    #[test]
    fn tiny_field_reports_genericity_failure() {
        // over F_2 most draws of 40 collinear points repeat a point
        let cfg = SchemeConfig::new(3, 50).push(ComponentKind::CollinearPoints { count: 40 }, 1);
        let err = sample_config(&cfg, PrimeField::new(2).unwrap(), 0).unwrap_err();
        assert!(matches!(err, Error::Genericity { .. }));
    }

    #[test]
    fn unsatisfiable_constraint_is_rejected() {
        let cfg = SchemeConfig::new(3, 2).push_constrained(ComponentKind::Line, Constraint::InHyperplane, 1);
        assert!(matches!(sample_config(&cfg, f(), 0), Err(Error::Unsatisfiable(_))));
    }
}
