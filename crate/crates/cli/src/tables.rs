//! The three published parameter tables for `P^4`, stored as literal data
//! and compared with a fresh computation from the schedule formulas.

use postulation_core::ledger::proof_schedule;
use postulation_core::Result;

use crate::report::{Record, TableRow};

/// `d` against `x = r - r' - 2q'`.
pub const HYPERPLANE_LINES: [(u32, i64); 13] =
    [(5, 7), (6, 9), (7, 2), (8, 10), (9, 9), (10, 10), (11, 17), (12, 9), (13, 30), (14, 34), (15, 17), (16, 35), (17, 32)];

/// `d` against `(r_hat, x)`.
pub const QUADRIC_TRACE_LINES: [(u32, [i64; 2]); 5] = [(5, [5, 7]), (6, [6, 9]), (7, [2, 2]), (8, [5, 10]), (9, [4, 9])];

/// `d` against `(q', r_hat, q' + r_hat)`.
pub const QUADRIC_TRACE_BUDGET: [(u32, [i64; 3]); 6] =
    [(5, [0, 5, 5]), (6, [0, 6, 6]), (7, [5, 2, 7]), (8, [2, 5, 7]), (9, [4, 4, 8]), (10, [5, 4, 9])];

fn table(name: &str, columns: &[&str], rows: Vec<TableRow>) -> Record {
    let matches = rows.iter().all(|r| r.expected == r.computed);
    Record::Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows, matches }
}

pub fn regenerate() -> Result<Vec<Record>> {
    let hyperplane = HYPERPLANE_LINES
        .iter()
        .map(|&(d, x)| Ok(TableRow { d, expected: vec![x], computed: vec![proof_schedule(4, d)?.x] }))
        .collect::<Result<Vec<_>>>()?;
    let trace = QUADRIC_TRACE_LINES
        .iter()
        .map(|&(d, want)| {
            let s = proof_schedule(4, d)?;
            Ok(TableRow { d, expected: want.to_vec(), computed: vec![s.r_hat.unwrap_or(i64::MIN), s.x] })
        })
        .collect::<Result<Vec<_>>>()?;
    let budget = QUADRIC_TRACE_BUDGET
        .iter()
        .map(|&(d, want)| {
            let s = proof_schedule(4, d)?;
            let r_hat = s.r_hat.unwrap_or(i64::MIN);
            Ok(TableRow { d, expected: want.to_vec(), computed: vec![s.q_prime, r_hat, s.q_prime + r_hat] })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        table("hyperplane-lines", &["x"], hyperplane),
        table("quadric-trace-lines", &["r_hat", "x"], trace),
        table("quadric-trace-budget", &["q'", "r_hat", "q'+r_hat"], budget),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_match() {
        let records = regenerate().unwrap();
        assert_eq!(records.len(), 3);
        assert!(records.iter().all(Record::passed));
    }
}
