//! Fixtures shared by the benchmarks.

use postulation_core::ledger::th2_parameters;
use postulation_core::{ComponentKind, Result, SchemeConfig};

/// Double line, `r` lines and `q` collinear points giving a square condition
/// matrix in degree `d` on `P^n`.
pub fn square_case(n: u32, d: u32) -> Result<SchemeConfig> {
    let p = th2_parameters(n, d)?;
    let mut config = SchemeConfig::double_line_and_lines(n, d, p.r as usize);
    if p.q > 0 {
        config = config.push(ComponentKind::CollinearPoints { count: p.q as u32 }, 1);
    }
    Ok(config)
}
