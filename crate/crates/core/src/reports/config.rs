use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How the load vector is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarPath {
    /// Polynomial loads integrated exactly against the shape functions.
    Exact,
    /// Quadrature for every load.
    Double,
}

impl FromStr for ScalarPath {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Self::Exact),
            "double" => Ok(Self::Double),
            other => Err(format!("unknown scalar path `{other}` (expected exact or double)")),
        }
    }
}

impl fmt::Display for ScalarPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Double => "double",
        })
    }
}

/// One convergence study. Stored as flat `key = value` lines; `#` starts a
/// comment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub example: usize,
    pub m: usize,
    pub n: usize,
    /// Divisions per unit length at each level.
    pub levels: Vec<usize>,
    pub csv: Option<PathBuf>,
    pub markdown: Option<PathBuf>,
    pub quadrature_degree: Option<usize>,
    pub scalar_path: ScalarPath,
}

impl ExperimentConfig {
    pub fn new(example: usize, m: usize) -> Self {
        Self {
            example,
            m,
            n: 2,
            levels: level_list(4, 5),
            csv: None,
            markdown: None,
            quadrature_degree: None,
            scalar_path: ScalarPath::Exact,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::new(1, 3);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config { line: i + 1, msg: format!("expected key = value, got `{line}`") })?;
            cfg.set(key.trim(), value.trim()).map_err(|msg| Error::Config { line: i + 1, msg })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one key; used for file lines and command-line overrides alike.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num(key: &str, v: &str) -> Result<usize, String> {
            v.parse().map_err(|_| format!("`{key}` needs a non-negative integer, got `{v}`"))
        }
        let path = |v: &str| if v.is_empty() { None } else { Some(PathBuf::from(v)) };
        match key {
            "example" => self.example = num(key, value)?,
            "m" => self.m = num(key, value)?,
            "n" => self.n = num(key, value)?,
            "levels" => {
                self.levels = value
                    .split(',')
                    .map(|v| num(key, v.trim()))
                    .collect::<Result<_, _>>()?;
            }
            "csv" => self.csv = path(value),
            "markdown" => self.markdown = path(value),
            "quadrature_degree" => {
                self.quadrature_degree = if value.is_empty() { None } else { Some(num(key, value)?) }
            }
            "scalar_path" => self.scalar_path = value.parse()?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.example != 1 && self.example != 2 {
            return bad(format!("example must be 1 or 2, got {}", self.example));
        }
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        if self.n != 2 {
            return bad(format!("convergence studies run in 2D only, got n = {}", self.n));
        }
        let Some(&base) = self.levels.first() else {
            return bad("empty level list".into());
        };
        if base == 0 {
            return bad("levels must be positive".into());
        }
        if self.levels.iter().enumerate().any(|(i, &l)| l != base << i) {
            return bad(format!("levels must double from {base}: {:?}", self.levels));
        }
        if self.example == 2 && base % 2 != 0 {
            return bad("the L-shaped domain needs an even number of divisions".into());
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let opt = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        let levels: Vec<String> = self.levels.iter().map(|l| l.to_string()).collect();
        format!(
            "example = {}\nm = {}\nn = {}\nlevels = {}\ncsv = {}\nmarkdown = {}\nquadrature_degree = {}\nscalar_path = {}\n",
            self.example,
            self.m,
            self.n,
            levels.join(", "),
            opt(&self.csv),
            opt(&self.markdown),
            self.quadrature_degree.map(|d| d.to_string()).unwrap_or_default(),
            self.scalar_path,
        )
    }
}

/// `count` levels starting at `base`, doubling each time.
pub fn level_list(base: usize, count: usize) -> Vec<usize> {
    (0..count).map(|i| base << i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = ExperimentConfig::new(2, 4);
        c.levels = level_list(2, 3);
        c.csv = Some("out.csv".into());
        c.quadrature_degree = Some(14);
        c.scalar_path = ScalarPath::Double;
        assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn comments_and_overrides() {
        let mut c = ExperimentConfig::parse("# study\nexample = 2\nm=3 # order\nlevels = 4, 8\n").unwrap();
        assert_eq!((c.example, c.m, c.levels.clone()), (2, 3, vec![4, 8]));
        c.set("m", "4").unwrap();
        assert_eq!(c.m, 4);
        assert!(c.set("colour", "red").is_err());
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(matches!(ExperimentConfig::parse("levels = 4, 12"), Err(Error::InvalidArgument(_))));
        assert!(matches!(ExperimentConfig::parse("example = 2\nlevels = 3, 6"), Err(Error::InvalidArgument(_))));
        assert!(matches!(ExperimentConfig::parse("m = x"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(ExperimentConfig::parse("just words"), Err(Error::Config { line: 1, .. })));
    }
}
