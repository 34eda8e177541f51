//! Residual and trace of a configuration with respect to a hyperplane or a
//! smooth quadric surface in `P3`.
//!
//! Only the component/constraint pairs listed in [`horace_split`] are
//! understood; anything else is an [`Error::UnsupportedSplit`].

use serde::{Deserialize, Serialize};

use super::quadric::QuadricScheme;
use crate::config::{ComponentKind, ComponentSpec, Constraint, Hypersurface, Ruling, SchemeConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceScheme {
    /// A configuration of the hyperplane, in its own coordinates `P^(n-1)`.
    Hyperplane(SchemeConfig),
    /// A scheme on the quadric, to be read in bidegree `(degree, degree)`.
    Quadric { scheme: QuadricScheme, degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoraceSplit {
    /// Lives in the same ambient space in degree `d - degree_drop`; keeps the
    /// constraints of the components it inherits.
    pub residual: SchemeConfig,
    pub trace: TraceScheme,
    pub hypersurface: Hypersurface,
    pub degree_drop: u32,
}

fn unsupported(spec: &ComponentSpec, on: Hypersurface) -> Error {
    Error::UnsupportedSplit(format!("{} with constraint {:?} against a {:?}", spec.kind, spec.constraint, on))
}

/// Splits `config` along `hypersurface`, which must be the declared context
/// whenever some component is constrained to it.
///
/// Hyperplane rules (transverse means `Free`):
///
/// | component | transverse | contained (`InHyperplane`) |
/// |---|---|---|
/// | line | residual line, trace point | trace line |
/// | `m`-fold `r`-plane | residual same, trace `m`-fold `(r-1)`-plane | trace same, residual `(m-1)`-fold |
/// | `m`-fold point | residual same | trace same, residual `(m-1)`-fold |
/// | collinear points | residual | trace |
/// | sundial | residual sundial, trace 2 points | residual point, trace conic |
/// | degenerate conic | residual conic, trace 2 points | trace conic |
///
/// Quadric rules (`P3` only): a free line leaves a residual line and two
/// trace points; a ruling line becomes a trace line; a free double line stays
/// in the residual and leaves two double points; free points and collinear
/// blocks are residual; points on `Q` are trace points; a double point on `Q`
/// leaves a trace double point and a residual point; `gamma` points along a
/// ruling form the collinear block; a sundial whose singular point is on `Q`
/// leaves a trace double point plus two points and a residual conic; free
/// sundials and conics leave four trace points.
pub fn horace_split(config: &SchemeConfig, hypersurface: Hypersurface) -> Result<HoraceSplit> {
    config.validate()?;
    let constrained = config.components.iter().any(|c| c.constraint != Constraint::Free);
    if constrained && config.context != Some(hypersurface) {
        return Err(Error::UnsupportedSplit(format!(
            "constraints refer to {:?}, split requested along {hypersurface:?}",
            config.context
        )));
    }
    let e = hypersurface.degree();
    let d = config.d.checked_sub(e).ok_or_else(|| {
        Error::OutOfRange(format!("cannot take the residual of degree {} along a degree {e} hypersurface", config.d))
    })?;
    let mut residual = SchemeConfig { n: config.n, d, components: Vec::new(), context: config.context };
    let trace = match hypersurface {
        Hypersurface::Hyperplane => {
            if config.n < 3 {
                return Err(Error::OutOfRange(format!("hyperplane trace of P^{} is not a projective space of dimension >= 2", config.n)));
            }
            let mut trace = SchemeConfig::new(config.n - 1, config.d);
            for c in &config.components {
                hyperplane_rule(c, &mut residual.components, &mut trace.components)?;
            }
            TraceScheme::Hyperplane(trace)
        }
        Hypersurface::Quadric => {
            if config.n != 3 {
                return Err(Error::OutOfRange(format!("quadric splits need P^3, got P^{}", config.n)));
            }
            let mut scheme = QuadricScheme::default();
            let mut ruling = None;
            let mut gamma_blocks = 0;
            for c in &config.components {
                quadric_rule(c, &mut residual.components, &mut scheme, &mut ruling, &mut gamma_blocks)?;
            }
            TraceScheme::Quadric { scheme, degree: config.d }
        }
    };
    Ok(HoraceSplit { residual, trace, hypersurface, degree_drop: e })
}

fn hyperplane_rule(c: &ComponentSpec, res: &mut Vec<ComponentSpec>, tr: &mut Vec<ComponentSpec>) -> Result<()> {
    use ComponentKind as K;
    use Constraint as C;
    let free = ComponentSpec::free;
    let inside = |k| ComponentSpec::constrained(k, C::InHyperplane);
    match (c.kind, c.constraint) {
        (_, C::Free) => {
            res.push(*c);
            match c.kind {
                K::Line => tr.push(free(K::FatPoint { mult: 1 })),
                K::FatLinearSpace { dim: 0, .. } | K::FatPoint { .. } | K::CollinearPoints { .. } => {}
                K::FatLinearSpace { dim: 1, mult } => tr.push(free(K::FatPoint { mult })),
                K::FatLinearSpace { dim, mult } => tr.push(free(K::FatLinearSpace { dim: dim - 1, mult })),
                K::Sundial | K::DegenerateConic => tr.extend([free(K::FatPoint { mult: 1 }); 2]),
            }
        }
        (K::Line | K::CollinearPoints { .. } | K::DegenerateConic, C::InHyperplane) => tr.push(free(c.kind)),
        (K::FatLinearSpace { dim, mult }, C::InHyperplane) => {
            tr.push(free(c.kind));
            if mult > 1 {
                res.push(inside(K::FatLinearSpace { dim, mult: mult - 1 }));
            }
        }
        (K::FatPoint { mult }, C::InHyperplane) => {
            tr.push(free(c.kind));
            if mult > 1 {
                res.push(inside(K::FatPoint { mult: mult - 1 }));
            }
        }
        (K::Sundial, C::InHyperplane) => {
            tr.push(free(K::DegenerateConic));
            res.push(inside(K::FatPoint { mult: 1 }));
        }
        _ => return Err(unsupported(c, Hypersurface::Hyperplane)),
    }
    Ok(())
}

fn quadric_rule(
    c: &ComponentSpec,
    res: &mut Vec<ComponentSpec>,
    tr: &mut QuadricScheme,
    ruling: &mut Option<Ruling>,
    gamma_blocks: &mut u32,
) -> Result<()> {
    use ComponentKind as K;
    use Constraint as C;
    let mut same_ruling = |r: Ruling| {
        if ruling.is_some_and(|seen| seen != r) {
            return Err(Error::UnsupportedSplit("trace mixes lines of both rulings".into()));
        }
        *ruling = Some(r);
        Ok(())
    };
    match (c.kind, c.constraint) {
        (K::Line | K::FatLinearSpace { dim: 1, mult: 1 }, C::Free) => {
            res.push(*c);
            tr.beta += 2;
        }
        (K::Line, C::OnQuadricRuling(r)) => {
            same_ruling(r)?;
            tr.alpha += 1;
        }
        (K::FatLinearSpace { dim: 1, mult: 2 }, C::Free) => {
            res.push(*c);
            tr.delta += 2;
        }
        (K::FatPoint { .. } | K::FatLinearSpace { dim: 0, .. } | K::CollinearPoints { .. }, C::Free) => res.push(*c),
        (K::FatPoint { mult: 1 }, C::SupportOnQuadric) => tr.beta += 1,
        (K::FatPoint { mult: 2 }, C::SupportOnQuadric) => {
            tr.delta += 1;
            res.push(ComponentSpec::constrained(K::FatPoint { mult: 1 }, C::SupportOnQuadric));
        }
        (K::CollinearPoints { count }, C::SupportOnQuadric) => tr.beta += count as u64,
        (K::CollinearPoints { count }, C::OnQuadricRuling(r)) => {
            same_ruling(r)?;
            *gamma_blocks += 1;
            if *gamma_blocks > 1 {
                return Err(Error::UnsupportedSplit("more than one collinear block along a ruling".into()));
            }
            tr.gamma += count as u64;
        }
        (K::Sundial | K::DegenerateConic, C::Free) => {
            res.push(*c);
            tr.beta += 4;
        }
        (K::Sundial, C::SupportOnQuadric) => {
            tr.delta += 1;
            tr.beta += 2;
            res.push(ComponentSpec::constrained(K::DegenerateConic, C::SupportOnQuadric));
        }
        _ => return Err(unsupported(c, Hypersurface::Quadric)),
    }
    Ok(())
}
