//! Regeneration of the reference tables: rational rule value, error constant
//! and the classical Gauss error for each row.

use std::fmt;

use ratquad::examples::{ExampleName, Params};
use ratquad::parallel;
use serde::Serialize;

use crate::{run_example, BuildArgs, CliError, ExampleReport};

/// Table identifiers accepted by `table --id`.
pub const IDS: [&str; 5] = ["3.2", "3.7", "3.8", "3.9", "3.10"];

/// One row to compute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub name: ExampleName,
    pub params: Params,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: String,
    pub title: String,
    pub rows: Vec<ExampleReport>,
}

fn omega_rows(name: ExampleName, blocks: &[(f64, &[usize])]) -> Vec<Cell> {
    blocks
        .iter()
        .flat_map(|&(omega, ns)| {
            ns.iter().map(move |&n| Cell {
                name,
                params: Params::omega(omega),
                n,
                m: 2 * n,
            })
        })
        .collect()
}

/// Rows of table `id`.
pub fn layout(id: &str) -> Result<(&'static str, Vec<Cell>), CliError> {
    let plain = |name, ns: &[usize], m: fn(usize) -> usize| -> Vec<Cell> {
        ns.iter()
            .map(|&n| Cell {
                name,
                params: Params::none(),
                n,
                m: m(n),
            })
            .collect()
    };
    match id {
        "3.2" => Ok((
            "I1(omega), m = 2n",
            omega_rows(
                ExampleName::I1,
                &[(2.0, &[1, 4, 7, 10]), (1.1, &[2, 5, 8, 11]), (1.01, &[3, 6, 9, 12])],
            ),
        )),
        "3.7" => Ok((
            "I3(omega), m = 2n",
            omega_rows(
                ExampleName::I3,
                &[(2.0, &[2, 5, 8, 11]), (1.1, &[2, 6, 10, 14]), (1.01, &[2, 6, 10, 14])],
            ),
        )),
        "3.8" => Ok(("I4, m = 2n", plain(ExampleName::I4, &[1, 5, 10, 15], |n| 2 * n))),
        "3.9" => {
            let blocks: [(f64, &[usize]); 3] = [(-0.1, &[3, 6, 9, 12]), (-1.0, &[2, 6, 11, 16]), (-10.0, &[2, 6, 11, 16])];
            let rows = blocks
                .iter()
                .flat_map(|&(eta, ns)| {
                    ns.iter().map(move |&n| Cell {
                        name: ExampleName::I5,
                        params: Params::eta(eta),
                        n,
                        m: 2 * n - 1,
                    })
                })
                .collect();
            Ok(("I5(eta), m = 2n - 1", rows))
        }
        "3.10" => Ok(("I6, m = 2n", plain(ExampleName::I6, &[2, 8, 14, 20], |n| 2 * n))),
        other => Err(CliError::validation(
            "InvalidInput",
            format!("unknown table {other:?} (expected one of {})", IDS.join(", ")),
        )),
    }
}

/// Computes every row of table `id`, error constants included. Rows are evaluated concurrently unless
/// `--sequential` is given; the output order is fixed.
pub fn generate(id: &str, build: &BuildArgs) -> Result<Table, CliError> {
    let (title, cells) = layout(id)?;
    let build = BuildArgs {
        gamma: true,
        ..build.clone()
    };
    let rows = parallel::try_map(build.execution(), &cells, |c| {
        run_example(c.name, c.params, c.n, Some(c.m), &build)
    })?;
    Ok(Table {
        id: id.to_string(),
        title: title.to_string(),
        rows,
    })
}

fn opt_sci(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.2e}"))
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}: {}", self.id, self.title)?;
        writeln!(
            f,
            "{:>6} {:>3} {:>3} {:>5} {:>24} {:>9} {:>9} {:>9}",
            "param", "n", "m", "meth", "rational", "rel err", "gamma_n", "err gauss"
        )?;
        for r in &self.rows {
            let param = r.omega.or(r.eta).map_or_else(String::new, |p| p.to_string());
            writeln!(
                f,
                "{:>6} {:>3} {:>3} {:>5} {:>24.16e} {:>9} {:>9} {:>9}",
                param,
                r.n,
                r.m,
                r.method,
                r.value,
                opt_sci(r.relative_error),
                opt_sci(r.gamma_n),
                opt_sci(r.gauss_relative_error)
            )?;
        }
        Ok(())
    }
}
