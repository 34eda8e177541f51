//! Scheme configurations: which components, in which ambient space, under
//! which placement constraints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two rulings of a smooth quadric surface `P1 x P1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ruling {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// A reduced line.
    Line,
    /// An `r`-dimensional linear space with multiplicity `m`.
    FatLinearSpace { dim: u32, mult: u32 },
    /// A point with multiplicity `m`.
    FatPoint { mult: u32 },
    /// `count` reduced points on one shared generic line.
    CollinearPoints { count: u32 },
    /// Two meeting lines plus the embedded double point of a generic 3-space
    /// through them.
    Sundial,
    /// Two meeting lines. Only produced as a trace or residual piece.
    DegenerateConic,
}

impl ComponentKind {
    pub const DOUBLE_LINE: ComponentKind = ComponentKind::FatLinearSpace { dim: 1, mult: 2 };
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Line => write!(f, "line"),
            ComponentKind::FatLinearSpace { dim: 1, mult: 2 } => write!(f, "double line"),
            ComponentKind::FatLinearSpace { dim, mult } => write!(f, "{mult}-fold {dim}-plane"),
            ComponentKind::FatPoint { mult: 1 } => write!(f, "point"),
            ComponentKind::FatPoint { mult } => write!(f, "{mult}-fold point"),
            ComponentKind::CollinearPoints { count } => write!(f, "{count} collinear points"),
            ComponentKind::Sundial => write!(f, "sundial"),
            ComponentKind::DegenerateConic => write!(f, "degenerate conic"),
        }
    }
}

/// How a component sits relative to the declared hypersurface, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    #[default]
    Free,
    /// Contained in the declared hyperplane. For a sundial this means the
    /// degenerate conic lies in the hyperplane; the embedded direction does not.
    InHyperplane,
    /// A line of the given ruling of the declared quadric; for collinear
    /// points, their supporting line is such a line.
    OnQuadricRuling(Ruling),
    /// The (singular) support point lies on the declared quadric.
    SupportOnQuadric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypersurface {
    Hyperplane,
    /// A smooth quadric surface; only meaningful in `P3`.
    Quadric,
}

impl Hypersurface {
    pub fn degree(self) -> u32 {
        match self {
            Hypersurface::Hyperplane => 1,
            Hypersurface::Quadric => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub kind: ComponentKind,
    #[serde(default)]
    pub constraint: Constraint,
}

impl ComponentSpec {
    pub fn free(kind: ComponentKind) -> Self {
        Self { kind, constraint: Constraint::Free }
    }

    pub fn constrained(kind: ComponentKind, constraint: Constraint) -> Self {
        Self { kind, constraint }
    }

    /// Checks the kind's own invariants in `P^n` at degree `d`.
    pub fn validate(&self, n: u32, d: u32) -> Result<()> {
        match self.kind {
            ComponentKind::FatLinearSpace { dim, mult } => {
                if dim >= n {
                    return Err(Error::OutOfRange(format!(
                        "fat linear space of dimension {dim} in P^{n} (need dim < n)"
                    )));
                }
                check_mult(mult, d)?;
            }
            ComponentKind::FatPoint { mult } => check_mult(mult, d)?,
            ComponentKind::CollinearPoints { count: 0 } => {
                return Err(Error::OutOfRange("collinear point block needs at least one point".into()));
            }
            ComponentKind::Sundial if n < 3 => {
                return Err(Error::OutOfRange(format!("a sundial needs n >= 3, got P^{n}")));
            }
            _ => {}
        }
        Ok(())
    }
}

fn check_mult(mult: u32, d: u32) -> Result<()> {
    if mult == 0 || mult > d + 1 {
        return Err(Error::OutOfRange(format!(
            "multiplicity {mult} outside 1..={} for degree {d}",
            d + 1
        )));
    }
    Ok(())
}

/// A scheme in `P^n` studied in degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub n: u32,
    pub d: u32,
    pub components: Vec<ComponentSpec>,
    /// Hypersurface that constrained components are placed on.
    #[serde(default)]
    pub context: Option<Hypersurface>,
}

impl SchemeConfig {
    pub fn new(n: u32, d: u32) -> Self {
        Self { n, d, components: Vec::new(), context: None }
    }

    pub fn with_context(mut self, context: Hypersurface) -> Self {
        self.context = Some(context);
        self
    }

    pub fn push(mut self, kind: ComponentKind, count: usize) -> Self {
        self.components.extend(std::iter::repeat_n(ComponentSpec::free(kind), count));
        self
    }

    pub fn push_constrained(mut self, kind: ComponentKind, constraint: Constraint, count: usize) -> Self {
        self.components
            .extend(std::iter::repeat_n(ComponentSpec::constrained(kind, constraint), count));
        self
    }

    /// One double line and `lines` free lines.
    pub fn double_line_and_lines(n: u32, d: u32, lines: usize) -> Self {
        Self::new(n, d).push(ComponentKind::DOUBLE_LINE, 1).push(ComponentKind::Line, lines)
    }

    pub fn count_kind(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::OutOfRange(format!("ambient dimension {} < 2", self.n)));
        }
        for c in &self.components {
            c.validate(self.n, self.d)?;
            self.validate_constraint(c)?;
        }
        Ok(())
    }

    fn validate_constraint(&self, c: &ComponentSpec) -> Result<()> {
        use ComponentKind as K;
        use Constraint as C;
        let unsat = |why: &str| Err(Error::Unsatisfiable(format!("{} {:?}: {why}", c.kind, c.constraint)));
        match c.constraint {
            C::Free => Ok(()),
            C::InHyperplane => {
                if self.context != Some(Hypersurface::Hyperplane) {
                    return unsat("no hyperplane declared");
                }
                match c.kind {
                    K::FatLinearSpace { dim, .. } if dim + 1 >= self.n => unsat("does not fit in a hyperplane"),
                    K::Line | K::DegenerateConic if self.n < 3 => unsat("does not fit in a hyperplane"),
                    K::Sundial if self.n < 4 => unsat("needs the conic's plane inside a hyperplane of P^n, n >= 4"),
                    _ => Ok(()),
                }
            }
            C::OnQuadricRuling(_) => {
                self.require_quadric(c)?;
                match c.kind {
                    K::Line | K::CollinearPoints { .. } => Ok(()),
                    _ => unsat("only lines and collinear blocks can lie along a ruling"),
                }
            }
            C::SupportOnQuadric => {
                self.require_quadric(c)?;
                match c.kind {
                    K::FatPoint { .. } | K::Sundial | K::DegenerateConic => Ok(()),
                    K::CollinearPoints { count } if count <= 2 => Ok(()),
                    _ => unsat("support cannot be placed on the quadric"),
                }
            }
        }
    }

    fn require_quadric(&self, c: &ComponentSpec) -> Result<()> {
        if self.context != Some(Hypersurface::Quadric) {
            return Err(Error::Unsatisfiable(format!("{} {:?}: no quadric declared", c.kind, c.constraint)));
        }
        if self.n != 3 {
            return Err(Error::Unsatisfiable(format!("quadric context needs P^3, got P^{}", self.n)));
        }
        Ok(())
    }
}

impl fmt::Display for SchemeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{} d={} {{", self.n, self.d)?;
        // run-length encode identical neighbours
        let mut first = true;
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut j = i + 1;
            while j < self.components.len() && self.components[j] == c {
                j += 1;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}x ", j - i)?;
            }
            write!(f, "{}", c.kind)?;
            if c.constraint != Constraint::Free {
                write!(f, " [{:?}]", c.constraint)?;
            }
            i = j;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_multiplicity_and_dimension() {
        let bad = SchemeConfig::new(3, 2).push(ComponentKind::FatPoint { mult: 4 }, 1);
        assert!(matches!(bad.validate(), Err(Error::OutOfRange(_))));
        let bad = SchemeConfig::new(3, 2).push(ComponentKind::FatLinearSpace { dim: 3, mult: 1 }, 1);
        assert!(bad.validate().is_err());
        let bad = SchemeConfig::new(3, 2).push(ComponentKind::CollinearPoints { count: 0 }, 1);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn constraints_need_a_context() {
        let c = SchemeConfig::new(3, 3).push_constrained(ComponentKind::Line, Constraint::InHyperplane, 1);
        assert!(matches!(c.validate(), Err(Error::Unsatisfiable(_))));
        let c = c.with_context(Hypersurface::Hyperplane);
        assert!(c.validate().is_ok());

        let q = SchemeConfig::new(4, 3)
            .with_context(Hypersurface::Quadric)
            .push_constrained(ComponentKind::Line, Constraint::OnQuadricRuling(Ruling::First), 1);
        assert!(matches!(q.validate(), Err(Error::Unsatisfiable(_))));
    }

    #[test]
    fn display_groups_repeats() {
        let c = SchemeConfig::double_line_and_lines(4, 2, 2);
        assert_eq!(c.to_string(), "P^4 d=2 {double line, 2x line}");
    }
}
