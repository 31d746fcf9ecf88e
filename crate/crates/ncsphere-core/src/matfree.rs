//! Matrices over the free algebra, the Pauli basis and the small Clifford
//! systems used to build candidate projections and unitaries.

use crate::freealg::{Alphabet, FreeElt};
use crate::laurent::ParamScalar;
use crate::scalar::GaussRat;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("operation requires a {expected}x{expected} matrix, got {got}x{got}")]
    WrongSize { expected: usize, got: usize },
    #[error("matrix dimensions do not match: {0}x{0} vs {1}x{1}")]
    Mismatch(usize, usize),
    #[error("Clifford systems are only realized for 1, 2 or 3 generators, not {0}")]
    UnsupportedCliffordRank(usize),
}

/// A square matrix with free-algebra entries, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatFree {
    n: usize,
    entries: Vec<FreeElt>,
}

impl MatFree {
    pub fn zero(n: usize, alphabet: Arc<Alphabet>) -> Self {
        MatFree {
            n,
            entries: vec![FreeElt::zero(alphabet); n * n],
        }
    }

    pub fn identity(n: usize, alphabet: Arc<Alphabet>) -> Self {
        let mut m = MatFree::zero(n, alphabet.clone());
        for i in 0..n {
            *m.at_mut(i, i) = FreeElt::one(alphabet.clone());
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, e: &FreeElt) -> Self {
        let mut m = MatFree::zero(n, e.alphabet().clone());
        for i in 0..n {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FreeElt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        MatFree {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.entries[0].alphabet()
    }

    pub fn at(&self, i: usize, j: usize) -> &FreeElt {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FreeElt {
        &mut self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *m.at_mut(i, j) = self.at(j, i).clone();
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&FreeElt) -> FreeElt) -> Self {
        MatFree {
            n: self.n,
            entries: self.entries.iter().map(&f).collect(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        self.map(|e| e.scale(c))
    }

    /// Conjugate transpose under the adjoint determined by star_map (see
    /// `FreeElt::adjoint_map`).
    pub fn adjoint(&self, star_map: &[(usize, ParamScalar)]) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *m.at_mut(i, j) = self.at(j, i).adjoint_map(star_map);
            }
        }
        m
    }

    pub fn trace(&self) -> FreeElt {
        let mut t = FreeElt::zero(self.alphabet().clone());
        for i in 0..self.n {
            t = &t + self.at(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl Add for &MatFree {
    type Output = MatFree;
    fn add(self, rhs: &MatFree) -> MatFree {
        assert_eq!(self.n, rhs.n);
        MatFree {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatFree {
    type Output = MatFree;
    fn sub(self, rhs: &MatFree) -> MatFree {
        assert_eq!(self.n, rhs.n);
        MatFree {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &MatFree {
    type Output = MatFree;
    fn mul(self, rhs: &MatFree) -> MatFree {
        assert_eq!(self.n, rhs.n);
        let alphabet = self.alphabet().clone();
        let mut m = MatFree::zero(self.n, alphabet);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = FreeElt::zero(self.alphabet().clone());
                for k in 0..self.n {
                    acc = &acc + &(self.at(i, k) * rhs.at(k, j));
                }
                *m.at_mut(i, j) = acc;
            }
        }
        m
    }
}

impl Neg for &MatFree {
    type Output = MatFree;
    fn neg(self) -> MatFree {
        self.map(|e| -e)
    }
}

impl fmt::Display for MatFree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[ ")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " , ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

fn const_elt(alphabet: &Arc<Alphabet>, c: GaussRat) -> FreeElt {
    FreeElt::constant(alphabet.clone(), ParamScalar::constant(c))
}

/// The Pauli matrix with the given index (0 is the identity), as a constant
/// matrix over the given alphabet.
pub fn pauli(k: usize, alphabet: &Arc<Alphabet>) -> MatFree {
    assert!(k < 4, "Pauli index out of range");
    let zero = || const_elt(alphabet, GaussRat::zero());
    let one = || const_elt(alphabet, GaussRat::one());
    let m_one = || const_elt(alphabet, GaussRat::from_int(-1));
    let i_ = || const_elt(alphabet, GaussRat::i());
    let m_i = || const_elt(alphabet, -GaussRat::i());
    match k {
        0 => MatFree::from_rows(vec![vec![one(), zero()], vec![zero(), one()]]),
        1 => MatFree::from_rows(vec![vec![zero(), one()], vec![one(), zero()]]),
        2 => MatFree::from_rows(vec![vec![zero(), m_i()], vec![i_(), zero()]]),
        _ => MatFree::from_rows(vec![vec![one(), zero()], vec![zero(), m_one()]]),
    }
}

/// Coefficients (c0, c1, c2, c3) with m = c0 I + c1 s1 + c2 s2 + c3 s3.
/// Exact inversion of the Pauli expansion; requires a 2x2 matrix.
pub fn pauli_expand(m: &MatFree) -> Result<[FreeElt; 4], MatError> {
    if m.size() != 2 {
        return Err(MatError::WrongSize {
            expected: 2,
            got: m.size(),
        });
    }
    let half = ParamScalar::constant(GaussRat::from_parts(1, 2, 0, 1));
    let half_i = ParamScalar::constant(GaussRat::from_parts(0, 1, 1, 2));
    let (m00, m01, m10, m11) = (m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
    let c0 = (&(m00 + m11)).scale(&half);
    let c1 = (&(m01 + m10)).scale(&half);
    let c2 = (&(m01 - m10)).scale(&half_i);
    let c3 = (&(m00 - m11)).scale(&half);
    Ok([c0, c1, c2, c3])
}

/// Anticommuting hermitian generators realized by matrices: one generator
/// on 1x1 matrices, two or three on the Pauli matrices.
pub fn clifford_generators(
    count: usize,
    alphabet: &Arc<Alphabet>,
) -> Result<Vec<MatFree>, MatError> {
    match count {
        1 => Ok(vec![MatFree::from_rows(vec![vec![const_elt(
            alphabet,
            GaussRat::one(),
        )]])]),
        2 => Ok(vec![pauli(1, alphabet), pauli(2, alphabet)]),
        3 => Ok(vec![pauli(1, alphabet), pauli(2, alphabet), pauli(3, alphabet)]),
        n => Err(MatError::UnsupportedCliffordRank(n)),
    }
}
