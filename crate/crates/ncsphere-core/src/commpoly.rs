//! Commutative polynomials over the parameter field.
//!
//! Variables are anonymous indices 0..nvars; callers attach names only when
//! rendering. Exponent vectors always have length nvars. The monomial
//! orders live here too: degree-reverse-lexicographic for general work and
//! plain lexicographic for elimination (put the variables to eliminate
//! first).

use crate::laurent::ParamScalar;
use crate::scalar::GaussRat;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type CExp = Vec<u16>;

pub fn exp_total_degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| u32::from(x)).sum()
}

pub fn exp_mul(a: &[u16], b: &[u16]) -> CExp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// b / a, assuming a divides b.
pub fn exp_quot(b: &[u16], a: &[u16]) -> CExp {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

pub fn exp_lcm(a: &[u16], b: &[u16]) -> CExp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => {
                let (da, db) = (exp_total_degree(a), exp_total_degree(b));
                if da != db {
                    return da.cmp(&db);
                }
                // Equal degree: the monomial with the smaller exponent in
                // the rightmost position where they differ is the larger.
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..a.len() {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<CExp, ParamScalar>,
}

impl CommPoly {
    pub fn zero(nvars: usize) -> Self {
        CommPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        CommPoly::constant(nvars, ParamScalar::one())
    }

    pub fn constant(nvars: usize, c: ParamScalar) -> Self {
        CommPoly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        CommPoly::monomial(nvars, e, ParamScalar::one())
    }

    pub fn monomial(nvars: usize, exp: CExp, c: ParamScalar) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        CommPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CExp, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| exp_total_degree(e))
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, exp: &[u16]) -> ParamScalar {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(ParamScalar::zero)
    }

    fn insert_term(&mut self, exp: CExp, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return CommPoly::zero(self.nvars);
        }
        CommPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u16], c: &ParamScalar) -> Self {
        if c.is_zero() {
            return CommPoly::zero(self.nvars);
        }
        CommPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (exp_mul(e, exp), k * c))
                .collect(),
        }
    }

    /// Leading term under the given order.
    pub fn lead(&self, order: MonomialOrder) -> Option<(&CExp, &ParamScalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        let mut out = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), f(c));
        }
        out
    }

    /// Substitute subs[i] for variable i. All substituted polynomials must
    /// share a variable count, which becomes the output's.
    pub fn compose(&self, subs: &[CommPoly]) -> CommPoly {
        assert_eq!(subs.len(), self.nvars);
        let out_nvars = subs.first().map(|p| p.nvars).unwrap_or(0);
        assert!(subs.iter().all(|p| p.nvars == out_nvars));
        // Memoized powers of each substituted polynomial.
        let mut powers: Vec<Vec<CommPoly>> = subs
            .iter()
            .map(|p| vec![CommPoly::one(out_nvars), p.clone()])
            .collect();
        let mut out = CommPoly::zero(out_nvars);
        for (e, c) in &self.terms {
            let mut term = CommPoly::constant(out_nvars, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                let ei = usize::from(ei);
                while powers[i].len() <= ei {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                if ei > 0 {
                    term = &term * &powers[i][ei];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluate at a point given by scalar coordinates.
    pub fn eval(&self, at: &[ParamScalar]) -> ParamScalar {
        assert_eq!(at.len(), self.nvars);
        let mut acc = ParamScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    term = &term * &at[i];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Rename/permute variables into a ring with target_nvars variables;
    /// map[i] is the image index of variable i.
    pub fn relabel(&self, target_nvars: usize, map: &[usize]) -> CommPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = CommPoly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u16; target_nvars];
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    ne[map[i]] += ei;
                }
            }
            out.insert_term(ne, c.clone());
        }
        out
    }

    pub fn fmt_with_names(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        // Render highest degrevlex terms first.
        let mut keys: Vec<&CExp> = self.terms.keys().collect();
        keys.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], x)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            if idx > 0 {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&format!("({cs})"));
            } else if cs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("({cs})*{mono}"));
            }
        }
        out
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = CommPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_term(exp_mul(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.fmt_with_names(&refs))
    }
}

/// Sum of c_i * var_i^2, a recurring shape for the diagonal quadrics.
pub fn diagonal_quadric(nvars: usize, coeffs: &[ParamScalar]) -> CommPoly {
    assert_eq!(coeffs.len(), nvars);
    let mut out = CommPoly::zero(nvars);
    for (i, c) in coeffs.iter().enumerate() {
        let mut e = vec![0u16; nvars];
        e[i] = 2;
        out = &out + &CommPoly::monomial(nvars, e, c.clone());
    }
    out
}

/// Constant Gaussian-rational polynomial, convenience for tests.
pub fn gauss_const(nvars: usize, c: GaussRat) -> CommPoly {
    CommPoly::constant(nvars, ParamScalar::constant(c))
}
