//! The extended [48, 24, 12] quadratic-residue code.
//!
//! Length-47 QR code: generator `g(x) = Π_{q ∈ Q} (x − α^q)` where `Q` is the
//! set of nonzero squares mod 47 and `α` is a primitive 47th root of unity.
//! Since 2 is a square mod 47 and has order 23, `α` lives in GF(2^23) and
//! `g` has binary coefficients. Adding an overall parity bit to the
//! 24-dimensional cyclic code gives a self-dual code, so its generator
//! matrix doubles as a parity-check matrix.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

const P: usize = 47;
const FIELD_DEGREE: u32 = 23;
// x^23 + x^5 + 1, irreducible over GF(2)
const FIELD_POLY: u64 = (1 << 23) | (1 << 5) | 1;

fn gf_mul(a: u32, b: u32) -> u32 {
    let mut prod: u64 = 0;
    let (a, mut b) = (a as u64, b as u64);
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            prod ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    for bit in (FIELD_DEGREE as usize..=44).rev() {
        if prod >> bit & 1 == 1 {
            prod ^= FIELD_POLY << (bit - FIELD_DEGREE as usize);
        }
    }
    prod as u32
}

fn gf_pow(mut base: u32, mut e: u64) -> u32 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_mul(acc, base);
        }
        base = gf_mul(base, base);
        e >>= 1;
    }
    acc
}

/// Nonzero quadratic residues mod 47, ascending.
pub fn quadratic_residues() -> Vec<usize> {
    let mut q: Vec<usize> = (1..P).map(|x| x * x % P).collect();
    q.sort_unstable();
    q.dedup();
    q
}

/// Coefficients of the QR generator polynomial, constant term first.
///
/// # Errors
/// Fails if a coefficient is not in GF(2) or `g` does not divide `x^47 − 1`.
pub fn qr_generator_polynomial() -> Result<Vec<u8>> {
    let group_order = (1u64 << FIELD_DEGREE) - 1;
    let cofactor = group_order / P as u64;
    // first y = x, x+1, … whose cofactor power is not 1 has order exactly 47
    let alpha = (2u32..)
        .map(|y| gf_pow(y, cofactor))
        .find(|&a| a != 1)
        .expect("field has an element of order 47");
    if gf_pow(alpha, P as u64) != 1 {
        return Err(Error::Consistency("alpha^47 != 1".into()));
    }
    // multiply out (x + alpha^q); addition is XOR in characteristic 2
    let mut poly: Vec<u32> = vec![1];
    for q in quadratic_residues() {
        let root = gf_pow(alpha, q as u64);
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= gf_mul(c, root);
        }
        poly = next;
    }
    if poly.iter().any(|&c| c > 1) {
        return Err(Error::Consistency(
            "QR generator polynomial has non-binary coefficients".into(),
        ));
    }
    let g: Vec<u8> = poly.iter().map(|&c| c as u8).collect();
    if g.len() != 24 || !divides_x_p_minus_1(&g) {
        return Err(Error::Consistency("g(x) does not divide x^47 - 1".into()));
    }
    Ok(g)
}

fn divides_x_p_minus_1(g: &[u8]) -> bool {
    let mut rem = [0u8; P + 1];
    rem[0] = 1;
    rem[P] = 1;
    let deg = g.len() - 1;
    for top in (deg..=P).rev() {
        if rem[top] == 1 {
            for (i, &c) in g.iter().enumerate() {
                rem[top - deg + i] ^= c;
            }
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// The extended [48, 24, 12] QR code.
///
/// `H` rows are the cyclic shifts `x^i g(x)`, `i = 0..24`, each extended by
/// a parity bit. The construction checks rank 24 and self-orthogonality;
/// the minimum distance 12 and the 17296 minimum-weight words are verified
/// by the test suite, not here, because that takes a full 2^24 walk.
///
/// # Errors
/// Fails if any of the construction self-checks fails.
pub fn extended_qr48() -> Result<LinearCode> {
    let g = qr_generator_polynomial()?;
    let n = P + 1;
    let k = P - (g.len() - 1);
    let rows: Vec<BitVector> = (0..k)
        .map(|shift| {
            let mut v = BitVector::zeros(n);
            for (i, &c) in g.iter().enumerate() {
                if c == 1 {
                    v.set(i + shift, true);
                }
            }
            let parity = v.weight() % 2 == 1;
            v.set(P, parity);
            v
        })
        .collect();
    let h = BitMatrix::from_rows(n, rows)?;
    if h.rank() != 24 {
        return Err(Error::Consistency(format!(
            "QR matrix rank {} != 24",
            h.rank()
        )));
    }
    if !h.is_orthogonal_to(&h) {
        return Err(Error::Consistency(
            "QR matrix is not self-orthogonal".into(),
        ));
    }
    Ok(LinearCode::from_parity_check("qr48", h)?.with_distances(12, 12))
}
