//! Classical modular polynomials `Phi_l(X, Y)` read from text tables.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use super::GraphError;
use crate::field::decimal_mod;

/// Degrees for which tables are shipped.
pub const MODPOLY_DEGREES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// `Phi_l` as a full `(l + 2) x (l + 2)` table of decimal coefficients,
/// `coeffs[i][j]` multiplying `X^i Y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPolynomial {
    pub ell: u64,
    pub coeffs: Vec<Vec<String>>,
}

impl ModularPolynomial {
    /// Coefficients reduced mod `p`, same layout as `coeffs`.
    pub fn reduce(&self, p: u64) -> Vec<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(|c| decimal_mod(c, p).expect("validated at load")).collect())
            .collect()
    }
}

/// Parses `phi_<l>.txt` from `dir`.
pub fn load_modpoly(ell: u64, dir: &Path) -> Result<ModularPolynomial, GraphError> {
    if !MODPOLY_DEGREES.contains(&ell) {
        return Err(GraphError::UnknownDegree(ell));
    }
    let path = dir.join(format!("phi_{ell}.txt"));
    let text = std::fs::read_to_string(&path).map_err(|_| GraphError::MissingFile(path.clone()))?;
    parse_modpoly(ell, &text).map_err(|line| GraphError::MalformedLine { path: path.clone(), line })
        .and_then(|m| m.ok_or(GraphError::NonMonic(ell)))
}

/// `Err(line)` on a malformed line, `Ok(None)` if the `l+1 0 1` entry is missing.
fn parse_modpoly(ell: u64, text: &str) -> Result<Option<ModularPolynomial>, usize> {
    let n = ell as usize + 2;
    let mut coeffs = vec![vec!["0".to_string(); n]; n];
    let mut monic = false;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, j, c] = parts[..] else { return Err(k + 1) };
        let (Ok(i), Ok(j)) = (i.parse::<usize>(), j.parse::<usize>()) else { return Err(k + 1) };
        if j > i || i >= n || decimal_mod(c, 2).is_err() {
            return Err(k + 1);
        }
        if i == n - 1 && j == 0 {
            monic = c == "1";
        }
        coeffs[i][j] = c.to_string();
        coeffs[j][i] = c.to_string();
    }
    Ok(monic.then_some(ModularPolynomial { ell, coeffs }))
}

/// Coefficient rows of a modular polynomial reduced mod `p`.
pub type Reduced = Arc<Vec<Vec<u64>>>;

/// Lazily loaded tables from one directory, with per-characteristic
/// reductions cached.
#[derive(Debug)]
pub struct ModpolyStore {
    dir: PathBuf,
    tables: Mutex<HashMap<u64, Arc<ModularPolynomial>>>,
    reduced: Mutex<HashMap<(u64, u64), Reduced>>,
}

impl ModpolyStore {
    pub fn new(dir: impl Into<PathBuf>) -> ModpolyStore {
        ModpolyStore { dir: dir.into(), tables: Mutex::default(), reduced: Mutex::default() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, ell: u64) -> Result<Arc<ModularPolynomial>, GraphError> {
        if let Some(m) = self.tables.lock().unwrap().get(&ell) {
            return Ok(m.clone());
        }
        let m = Arc::new(load_modpoly(ell, &self.dir)?);
        Ok(self.tables.lock().unwrap().entry(ell).or_insert(m).clone())
    }

    /// `Phi_l` with coefficients reduced mod `p`.
    pub fn reduced(&self, ell: u64, p: u64) -> Result<Reduced, GraphError> {
        if let Some(r) = self.reduced.lock().unwrap().get(&(ell, p)) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.get(ell)?.reduce(p));
        Ok(self.reduced.lock().unwrap().entry((ell, p)).or_insert(r).clone())
    }
}
