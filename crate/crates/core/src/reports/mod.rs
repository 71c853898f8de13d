//! Certification reports and convergence tables.

mod config;

use std::fmt::{self, Write as _};

pub use config::{level_list, ExperimentConfig, ScalarPath};

use crate::assembly::examples::{Example1, Example2};
use crate::assembly::{
    apply_dirichlet, assemble_load, assemble_load_poly, assemble_stiffness, error_norms, solve_spd, ErrorRow,
    SparseSystem,
};
use crate::element::{build_element, certify, Certificate};
use crate::error::{Error, Result};
use crate::fem_space::{Field, GlobalSpace, ReferenceTables};
use crate::mesh::{l_shape_mesh, unit_square_mesh};
use crate::polycore::format_rational;

pub const MAX_CERTIFY_M: usize = 8;
pub const MAX_CERTIFY_N: usize = 3;

#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub certificates: Vec<Certificate>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>2} {:>2} {:>5} {:>5}  {:<6} {:<24} det", "m", "n", "#DOF", "dimP", "status", "bubble integrals")?;
        for c in &self.certificates {
            let bubbles: Vec<String> = c.bubble_integrals.iter().map(format_rational).collect();
            let bubbles = if bubbles.is_empty() { "-".to_string() } else { bubbles.join(" ") };
            writeln!(
                f,
                "{:>2} {:>2} {:>5} {:>5}  {:<6} {:<24} {}",
                c.m,
                c.n,
                c.num_dofs,
                c.dim_shape,
                if c.passed() { "ok" } else { "FAIL" },
                bubbles,
                format_rational(&c.det)
            )?;
        }
        Ok(())
    }
}

/// Certificates for every `1 <= m <= m_max`, `1 <= n <= n_max`.
pub fn run_certify(m_max: usize, n_max: usize) -> Result<CertifyReport> {
    if m_max > MAX_CERTIFY_M || n_max > MAX_CERTIFY_N {
        return Err(Error::InvalidArgument(format!(
            "certification is limited to m <= {MAX_CERTIFY_M}, n <= {MAX_CERTIFY_N}"
        )));
    }
    let mut certificates = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            certificates.push(certify(m, n)?);
        }
    }
    Ok(CertifyReport { certificates })
}

/// One refinement level of a convergence study.
#[derive(Clone, Debug)]
pub struct LevelResult {
    pub inv_h: usize,
    pub ndofs: usize,
    pub residual: f64,
    pub errors: ErrorRow,
}

#[derive(Clone, Debug)]
pub struct ErrorTable {
    pub example: usize,
    pub m: usize,
    pub levels: Vec<LevelResult>,
}

fn fmt_err(v: f64) -> String {
    format!("{v:.4e}")
}

fn fmt_order(v: Option<f64>) -> String {
    v.map(|o| format!("{o:.2}")).unwrap_or_default()
}

impl ErrorTable {
    /// `log(e_prev / e) / log(inv_h / inv_h_prev)` per level and norm; `None`
    /// on the first level.
    pub fn orders(&self) -> Vec<Vec<Option<f64>>> {
        let mut out = Vec::with_capacity(self.levels.len());
        for (i, l) in self.levels.iter().enumerate() {
            let e = l.errors.all();
            out.push(match i.checked_sub(1).map(|p| &self.levels[p]) {
                None => vec![None; e.len()],
                Some(p) => {
                    let r = (l.inv_h as f64 / p.inv_h as f64).ln();
                    p.errors.all().iter().zip(&e).map(|(a, b)| Some((a / b).ln() / r)).collect()
                }
            });
        }
        out
    }

    /// `L2`, `H1`, .., `Hm`.
    pub fn norm_names(&self) -> Vec<String> {
        std::iter::once("L2".to_string()).chain((1..=self.m).map(|k| format!("H{k}"))).collect()
    }

    pub fn to_csv(&self) -> String {
        let names = self.norm_names();
        let mut s = String::from("inv_h");
        for n in &names {
            write!(s, ",{n}_err").unwrap();
        }
        for n in &names {
            write!(s, ",{n}_order").unwrap();
        }
        s.push('\n');
        for (l, ord) in self.levels.iter().zip(self.orders()) {
            write!(s, "{}", l.inv_h).unwrap();
            for v in l.errors.all() {
                write!(s, ",{}", fmt_err(v)).unwrap();
            }
            for o in ord {
                write!(s, ",{}", fmt_order(o)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Errors with an order column after each norm.
    pub fn to_markdown(&self) -> String {
        let mut head = String::from("| 1/h |");
        let mut rule = String::from("|---:|");
        head.push_str(" ‖u-u_h‖_0 | Order |");
        rule.push_str("---:|---:|");
        for k in 1..=self.m {
            write!(head, " \\|u-u_h\\|_{k},h | Order |").unwrap();
            rule.push_str("---:|---:|");
        }
        let mut s = format!("Example {} (m={})\n\n{head}\n{rule}\n", self.example, self.m);
        for (l, ord) in self.levels.iter().zip(self.orders()) {
            write!(s, "| {} |", l.inv_h).unwrap();
            for (v, o) in l.errors.all().into_iter().zip(ord) {
                let o = if o.is_none() { "--".to_string() } else { fmt_order(o) };
                write!(s, " {} | {} |", fmt_err(v), o).unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// Runs every level of `cfg`, calling `progress` after each one.
pub fn run_convergence(cfg: &ExperimentConfig, mut progress: impl FnMut(&LevelResult)) -> Result<ErrorTable> {
    cfg.validate()?;
    let element = build_element(cfg.m, cfg.n)?;
    let tables = ReferenceTables::new(&element);
    let ex1 = (cfg.example == 1).then(|| Example1::new(cfg.m));
    let ex2 = Example2::new(cfg.m);
    let mut levels = Vec::with_capacity(cfg.levels.len());
    for &d in &cfg.levels {
        let mesh = match cfg.example {
            1 => unit_square_mesh(d)?,
            _ => l_shape_mesh(d)?,
        };
        let space = GlobalSpace::with_tables(element.clone(), tables.clone(), mesh)?;
        let matrix = assemble_stiffness(&space);
        let (rhs, exact, g): (Vec<f64>, &dyn Field, Option<&dyn Field>) = match &ex1 {
            Some(ex) => {
                let rhs = match cfg.scalar_path {
                    ScalarPath::Exact => assemble_load_poly(&space, ex.load_poly()),
                    ScalarPath::Double => assemble_load(&space, &ex.load_field(), cfg.quadrature_degree)?,
                };
                (rhs, ex.solution(), None)
            }
            // the second example is m-harmonic
            None => (vec![0.0; space.ndofs()], &ex2, Some(&ex2)),
        };
        let reduced = apply_dirichlet(&SparseSystem { matrix, rhs }, &space, g)?;
        let report = solve_spd(&reduced.matrix, &reduced.rhs)?;
        let u = reduced.expand(&report.x);
        let errors = error_norms(&space, &u, exact, cfg.quadrature_degree)?;
        let level = LevelResult { inv_h: d, ndofs: space.ndofs(), residual: report.residual, errors };
        progress(&level);
        levels.push(level);
    }
    Ok(ErrorTable { example: cfg.example, m: cfg.m, levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ErrorTable {
        let row = |l2: f64, h1: f64| ErrorRow { l2, semi: vec![h1] };
        ErrorTable {
            example: 1,
            m: 1,
            levels: vec![
                LevelResult { inv_h: 4, ndofs: 1, residual: 0.0, errors: row(1.6e-2, 4.0e-1) },
                LevelResult { inv_h: 8, ndofs: 1, residual: 0.0, errors: row(4.0e-3, 2.0e-1) },
            ],
        }
    }

    #[test]
    fn orders_are_log2_ratios() {
        let o = table().orders();
        assert_eq!(o[0], vec![None, None]);
        assert!((o[1][0].unwrap() - 2.0).abs() < 1e-14);
        assert!((o[1][1].unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn csv_and_markdown_share_numbers() {
        let t = table();
        let csv = t.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "inv_h,L2_err,H1_err,L2_order,H1_order");
        assert_eq!(csv.lines().nth(2).unwrap(), "8,4.0000e-3,2.0000e-1,2.00,1.00");
        let md = t.to_markdown();
        for cell in ["4.0000e-3", "2.0000e-1", "2.00", "1.00", "--"] {
            assert!(md.contains(cell), "{cell}");
        }
    }

    #[test]
    fn certify_small_range() {
        let r = run_certify(3, 2).unwrap();
        assert_eq!(r.certificates.len(), 6);
        assert!(r.passed());
        let text = r.to_string();
        // (3,2) has 12 DOFs and one bubble x^3 - x^2 with integral -1/30
        assert!(text.lines().any(|l| l.split_whitespace().take(4).collect::<Vec<_>>() == ["3", "2", "12", "12"]));
        assert!(text.contains("-1/30"));
        assert!(run_certify(9, 1).is_err());
    }

    #[test]
    fn small_study_runs() {
        let mut cfg = ExperimentConfig::new(1, 2);
        cfg.levels = level_list(2, 3);
        let mut seen = 0;
        let t = run_convergence(&cfg, |_| seen += 1).unwrap();
        assert_eq!(seen, 3);
        let o = t.orders();
        // Morley: H2 order approaches 1
        assert!(o[2][2].unwrap() > 0.7);
    }
}
