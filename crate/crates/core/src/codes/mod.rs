//! Binary linear codes described by a parity-check matrix, the two built-in
//! benchmark codes, and matrix file formats.

mod alist;
mod plain;
mod qr;

use std::path::Path;
use std::sync::OnceLock;

pub use alist::{load_alist, save_alist};
pub use plain::{load_plain, save_plain};
pub use qr::{extended_qr48, qr_generator_polynomial};

use crate::error::{Error, Result};
use crate::gf2::{min_weight_census, BitMatrix, Census, EchelonBasis, Span};

/// A binary `[n, k, d]` code given by a full-rank parity-check matrix `H`.
///
/// The dual code is the row space of `H`; its dimension is `r = n − k`.
#[derive(Debug)]
pub struct LinearCode {
    name: String,
    n: usize,
    k: usize,
    h: BitMatrix,
    d: Option<usize>,
    dual_distance: Option<usize>,
    dual_census: OnceLock<Census>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        let dual_census = OnceLock::new();
        if let Some(c) = self.dual_census.get() {
            let _ = dual_census.set(c.clone());
        }
        LinearCode {
            name: self.name.clone(),
            n: self.n,
            k: self.k,
            h: self.h.clone(),
            d: self.d,
            dual_distance: self.dual_distance,
            dual_census,
        }
    }
}

impl LinearCode {
    /// Wraps a parity-check matrix. Dependent rows are dropped (the first
    /// independent rows are kept in order), so `h()` is always full rank.
    ///
    /// # Errors
    /// Fails if the matrix has no columns or no nonzero rows.
    pub fn from_parity_check(name: impl Into<String>, h: BitMatrix) -> Result<Self> {
        let n = h.n_cols();
        if n == 0 {
            return Err(Error::precondition("parity-check matrix has zero columns"));
        }
        let mut basis = EchelonBasis::new(n);
        let rows: Vec<_> = h
            .rows()
            .iter()
            .filter(|r| basis.insert(r))
            .cloned()
            .collect();
        if rows.is_empty() {
            return Err(Error::precondition("parity-check matrix has rank 0"));
        }
        let h = BitMatrix::from_rows(n, rows)?;
        Ok(LinearCode {
            name: name.into(),
            n,
            k: n - h.n_rows(),
            h,
            d: None,
            dual_distance: None,
            dual_census: OnceLock::new(),
        })
    }

    pub(crate) fn with_distances(mut self, d: usize, dual_distance: usize) -> Self {
        self.d = Some(d);
        self.dual_distance = Some(dual_distance);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy `n − k`, the dimension of the dual code.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    /// Known minimum distance, if recorded.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    /// Known dual minimum distance, if recorded.
    pub fn dual_distance(&self) -> Option<usize> {
        self.dual_distance
            .or_else(|| self.dual_census.get().map(|c| c.min_weight))
    }

    /// A generator matrix (basis of the nullspace of `H`).
    pub fn generator(&self) -> BitMatrix {
        self.h.nullspace_basis()
    }

    /// The dual code walked with `H`'s rows as basis.
    pub fn dual_span(&self) -> Result<Span> {
        Span::new(&self.h)
    }

    /// Minimum-weight census of the dual code, computed once.
    pub fn dual_census(&self) -> Result<&Census> {
        if let Some(c) = self.dual_census.get() {
            return Ok(c);
        }
        let c = min_weight_census(&self.h)?;
        Ok(self.dual_census.get_or_init(|| c))
    }

    /// Minimum-weight dual codewords (capped list, enumeration order).
    pub fn min_weight_dual_words(&self) -> Result<&[crate::gf2::BitVector]> {
        Ok(&self.dual_census()?.words)
    }

    /// Fills in `d` and `d⊥` by span enumeration where they are unknown.
    pub fn analyze(&mut self) -> Result<()> {
        if self.dual_distance.is_none() {
            self.dual_distance = Some(self.dual_census()?.min_weight);
        }
        if self.d.is_none() {
            let g = self.generator();
            self.d = Some(if g.n_rows() == 0 {
                // the zero code; no nonzero codeword
                0
            } else {
                min_weight_census(&g)?.min_weight
            });
        }
        Ok(())
    }

    /// True when the code equals its dual.
    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k && self.h.same_row_space(&self.generator())
    }
}

/// Parity-check matrix of the extended [24, 12, 8] Golay code, as printed
/// in the standard table (row 12 is the overall parity row).
pub const GOLAY24_H: [&str; 12] = [
    "110000000000011011100010",
    "101000000000001101110001",
    "100100000000010110111000",
    "100010000000001011011100",
    "100001000000000101101110",
    "100000100000000010110111",
    "100000010000010001011011",
    "100000001000011000101101",
    "100000000100011100010110",
    "100000000010001110001011",
    "100000000001010111000101",
    "000000000000111111111111",
];

/// The extended [24, 12, 8] Golay code with `H` exactly as in [`GOLAY24_H`].
pub fn golay24() -> LinearCode {
    let h = load_plain(&GOLAY24_H.join("\n")).expect("embedded Golay matrix");
    LinearCode::from_parity_check("golay24", h)
        .expect("embedded Golay matrix")
        .with_distances(8, 8)
}

/// Names accepted by [`builtin`].
pub const BUILTIN_CODES: [&str; 2] = ["golay24", "qr48"];

pub fn builtin(name: &str) -> Option<LinearCode> {
    match name {
        "golay24" => Some(golay24()),
        "qr48" => extended_qr48().ok(),
        _ => None,
    }
}

/// Reads a parity-check matrix from disk. Files ending in `.alist` are read
/// as alist. Otherwise the first non-blank line decides: two tokens that
/// are not both single binary digits look like an alist header, anything
/// else is taken as the plain format.
pub fn load_matrix_file(path: &Path) -> Result<BitMatrix> {
    let text = std::fs::read_to_string(path)?;
    let header: Vec<&str> = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().collect())
        .unwrap_or_default();
    let looks_alist = header.len() == 2 && !header.iter().all(|t| *t == "0" || *t == "1");
    if path.extension().is_some_and(|e| e == "alist") || looks_alist {
        load_alist(&text)
    } else {
        load_plain(&text)
    }
}

/// A built-in code name or a matrix file path.
pub fn resolve_code(spec: &str) -> Result<LinearCode> {
    if let Some(code) = builtin(spec) {
        return Ok(code);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Io(format!(
            "{spec}: not a built-in code ({}) and no such file",
            BUILTIN_CODES.join(", ")
        )));
    }
    let h = load_matrix_file(path)?;
    LinearCode::from_parity_check(spec, h)
}
