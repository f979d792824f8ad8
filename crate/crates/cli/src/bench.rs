//! Timing and operation-count harness for keygen, encrypt and decrypt.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use olsc_mceliece::mceliece;
use olsc_mceliece::olsc::DepthModel;
use olsc_mceliece::{rng, CodeParams, SymbolVector};

use crate::commands::write_atomic;
use crate::error::CliError;

pub const CSV_HEADER: &str = "trial,op,wall_ns,ff_ops,xor_ops,cmp_ops,depth_model";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Keygen,
    Encrypt,
    Decrypt,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Keygen => "keygen",
            Op::Encrypt => "encrypt",
            Op::Decrypt => "decrypt",
        }
    }
}

/// One CSV row. Operation counts and depth are only instrumented for the
/// decoder and read 0 on keygen and encrypt rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub trial: usize,
    pub op: Op,
    pub wall_ns: u128,
    pub ff_ops: u64,
    pub xor_ops: u64,
    pub cmp_ops: u64,
    pub depth_model: u32,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub params: CodeParams,
    pub rows: Vec<Row>,
    pub depth: DepthModel,
}

impl BenchReport {
    fn decrypt_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.op == Op::Decrypt)
    }

    pub fn mean_ns(&self, op: Op) -> f64 {
        let (sum, n) = self
            .rows
            .iter()
            .filter(|r| r.op == op)
            .fold((0u128, 0u128), |(s, n), r| (s + r.wall_ns, n + 1));
        if n == 0 {
            0.0
        } else {
            sum as f64 / n as f64
        }
    }

    pub fn total_ff_ops(&self) -> u64 {
        self.rows.iter().map(|r| r.ff_ops).sum()
    }

    /// The decrypt-row `(xor, cmp)` counts if every trial agreed.
    pub fn constant_counts(&self) -> Option<(u64, u64)> {
        let mut it = self.decrypt_rows().map(|r| (r.xor_ops, r.cmp_ops));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.trial,
                r.op.name(),
                r.wall_ns,
                r.ff_ops,
                r.xor_ops,
                r.cmp_ops,
                r.depth_model
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let p = self.params;
        let d = &self.depth;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "parameters: q={} t={} b={} (k={} n={})",
            p.q,
            p.t,
            p.b,
            p.k(),
            p.n()
        );
        let _ = writeln!(s, "trials: {}", self.decrypt_rows().count());
        for op in [Op::Keygen, Op::Encrypt, Op::Decrypt] {
            let _ = writeln!(s, "mean {:<8} {:>12.0} ns", op.name(), self.mean_ns(op));
        }
        let _ = writeln!(s, "finite-field ops: {}", self.total_ff_ops());
        match self.constant_counts() {
            Some((x, c)) => {
                let _ = writeln!(s, "decode xor ops: {x} (constant)");
                let _ = writeln!(s, "decode cmp ops: {c} (constant)");
            }
            None => {
                let _ = writeln!(s, "decode op counts: VARYING");
            }
        }
        let _ = writeln!(
            s,
            "depth model: syndrome {} + vote {} + compare {} + correct {} = {} levels",
            d.syndrome_depth,
            d.vote_depth,
            d.comparator_depth,
            d.correction_depth,
            d.total()
        );
        let _ = writeln!(
            s,
            "sequential bounded-distance model: {} iterations (O(n))",
            d.sequential_iterations
        );
        s
    }
}

pub fn run(params: CodeParams, trials: usize) -> Result<BenchReport, CliError> {
    params.validate()?;
    let depth = DepthModel::for_params(params);
    let mut rng = rng::from_entropy();
    let mut rows = Vec::with_capacity(trials * 3);
    for trial in 0..trials {
        let start = Instant::now();
        let (pk, sk) = mceliece::keygen(params, &mut rng)?;
        let keygen_ns = start.elapsed().as_nanos();

        let m = SymbolVector::random(params.k(), params.b, &mut rng);
        let start = Instant::now();
        let c = mceliece::encrypt(&pk, &m, &mut rng)?;
        let encrypt_ns = start.elapsed().as_nanos();

        let start = Instant::now();
        let (got, report) = mceliece::decrypt(&sk, &c)?;
        let decrypt_ns = start.elapsed().as_nanos();

        if got != m || report.ambiguous != 0 {
            return Err(CliError::Integrity(format!(
                "trial {trial}: round trip failed"
            )));
        }
        if report.field_ops != 0 {
            return Err(CliError::Integrity(format!(
                "trial {trial}: decoder reported {} finite-field ops",
                report.field_ops
            )));
        }
        let plain = |op, wall_ns| Row {
            trial,
            op,
            wall_ns,
            ff_ops: 0,
            xor_ops: 0,
            cmp_ops: 0,
            depth_model: 0,
        };
        rows.push(plain(Op::Keygen, keygen_ns));
        rows.push(plain(Op::Encrypt, encrypt_ns));
        rows.push(Row {
            trial,
            op: Op::Decrypt,
            wall_ns: decrypt_ns,
            ff_ops: report.field_ops,
            xor_ops: report.xor_ops,
            cmp_ops: report.cmp_ops,
            depth_model: depth.total(),
        });
    }
    Ok(BenchReport {
        params,
        rows,
        depth,
    })
}

pub fn write_csv(report: &BenchReport, path: &Path) -> Result<(), CliError> {
    write_atomic(path, report.to_csv().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_schema() {
        let report = run(CodeParams::new(3, 2, 8).unwrap(), 4).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let rows: Vec<_> = lines.collect();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.split(',').count() == 7));
        assert!(report.summary().contains("finite-field ops: 0"));
        assert!(report.constant_counts().is_some());
    }
}
