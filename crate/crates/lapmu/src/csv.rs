//! Sweep rows as CSV: `p,value,method,residual,bound,iterations`.
//!
//! Reals use [`g17`](crate::format::g17), not-applicable fields are empty
//! and `p = inf` renders as `inf`.

use std::io::{self, Write};

use lapmu_core::SweepRow;

use crate::format::g17;

pub const HEADER: &str = "p,value,method,residual,bound,iterations";

pub fn emit_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            g17(row.p),
            g17(row.value),
            row.method,
            row.residual.map(g17).unwrap_or_default(),
            row.bound.map(g17).unwrap_or_default(),
            row.iterations.map(|i| i.to_string()).unwrap_or_default(),
        )?;
    }
    Ok(())
}
