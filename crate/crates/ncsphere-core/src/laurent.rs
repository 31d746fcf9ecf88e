//! Laurent polynomials in the four moduli and the parameter field of their
//! fractions.
//!
//! The moduli enter every formula either polynomially or through inverses
//! (the star operation sends each modulus to its inverse), so the natural
//! coefficient ring is Laurent polynomials in four variables over the
//! Gaussian rationals. `ParamScalar` is the fraction field; equality is
//! decided by cross-multiplication, so no multivariate gcd is ever needed.
//!
//! Invariant: a `LaurentPoly` never stores a zero coefficient, and a
//! `ParamScalar` keeps a nonzero denominator whose single-term case is
//! always folded away (a monomial is a unit of the Laurent ring).

use crate::scalar::{GaussRat, Rat, ScalarError, UnitCirclePoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const NPARAMS: usize = 4;

/// Exponent vector for one Laurent monomial in the four moduli.
pub type LExp = [i16; NPARAMS];

pub const LEXP_ZERO: LExp = [0; NPARAMS];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<LExp, GaussRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(LEXP_ZERO, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(exp: LExp, coeff: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// The modulus with the given index, as a polynomial.
    pub fn lambda(mu: usize) -> Self {
        LaurentPoly::lambda_pow(mu, 1)
    }

    pub fn lambda_pow(mu: usize, e: i16) -> Self {
        assert!(mu < NPARAMS, "modulus index out of range");
        let mut exp = LEXP_ZERO;
        exp[mu] = e;
        LaurentPoly::monomial(exp, GaussRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LExp, &GaussRat)> {
        self.terms.iter()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&LEXP_ZERO).cloned(),
            _ => None,
        }
    }

    fn insert_term(&mut self, exp: LExp, coeff: GaussRat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by a single monomial: exponent shift plus scaling.
    pub fn mul_monomial(&self, exp: &LExp, coeff: &GaussRat) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut ne = *e;
                    for (a, b) in ne.iter_mut().zip(exp.iter()) {
                        *a += b;
                    }
                    (ne, k * coeff)
                })
                .collect(),
        }
    }

    /// The star involution: each modulus goes to its inverse and the
    /// coefficients are conjugated. An involution because exponent negation
    /// and conjugation both are.
    pub fn star(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let ne = [-e[0], -e[1], -e[2], -e[3]];
                    (ne, k.conj())
                })
                .collect(),
        }
    }

    /// Flip the sign of the selected moduli.
    pub fn flip_signs(&self, mask: [bool; NPARAMS]) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut parity = 0i32;
                    for mu in 0..NPARAMS {
                        if mask[mu] {
                            parity += i32::from(e[mu]);
                        }
                    }
                    let c = if parity.rem_euclid(2) == 1 { -k } else { k.clone() };
                    (*e, c)
                })
                .collect(),
        }
    }

    pub fn eval(&self, at: &[GaussRat; NPARAMS]) -> Result<GaussRat, ScalarError> {
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for mu in 0..NPARAMS {
                if e[mu] != 0 {
                    term = &term * &at[mu].pow(i64::from(e[mu]))?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Positive rational c such that self/c has Gaussian-integer
    /// coefficients whose collective gcd is 1. Content of zero is 1.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for part in [&c.re, &c.im] {
                if part.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(part.numer());
                den_lcm = den_lcm.lcm(part.denom());
            }
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Divide every coefficient by a nonzero rational.
    pub fn div_rat(&self, c: &Rat) -> Self {
        assert!(!c.is_zero());
        let inv = GaussRat::from_rat(Rat::one() / c);
        self.scale(&inv)
    }

    /// Leading term in the deterministic exponent order (largest exponent
    /// vector). Used only for canonical display and denominator scaling.
    pub fn lead(&self) -> Option<(&LExp, &GaussRat)> {
        self.terms.iter().next_back()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += y;
                }
                out.insert_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

const PARAM_NAMES: [&str; NPARAMS] = ["λ0", "λ1", "λ2", "λ3"];

fn fmt_lexp(exp: &LExp) -> String {
    let mut parts = Vec::new();
    for (mu, &e) in exp.iter().enumerate() {
        if e == 1 {
            parts.push(PARAM_NAMES[mu].to_string());
        } else if e != 0 {
            parts.push(format!("{}^{}", PARAM_NAMES[mu], e));
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Largest exponents first: deterministic and readable.
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_lexp(e);
            let cs = c.to_string();
            let (sign, body) = if let Some(stripped) = cs.strip_prefix('-') {
                // Only peel a leading minus when it covers the whole
                // coefficient (purely real or purely imaginary).
                if c.re.is_zero() || c.im.is_zero() {
                    ("-", stripped.to_string())
                } else {
                    ("+", cs.clone())
                }
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if sign == "-" { "-" } else { "+" })?;
            }
            let needs_parens = body.contains('+') || body.contains('-');
            if mono.is_empty() {
                if needs_parens {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else if needs_parens {
                write!(f, "({body})*{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// An element of the fraction field of the Laurent ring.
///
/// Representation is not unique; equality is decided by cross-multiplying.
/// Normalization folds monomial denominators into the numerator (monomials
/// are units here) and strips shared rational content to keep coefficient
/// growth in check.
#[derive(Debug, Clone)]
pub struct ParamScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ParamScalar {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut s = ParamScalar { num, den };
        s.normalize();
        Ok(s)
    }

    fn from_poly(num: LaurentPoly) -> Self {
        ParamScalar {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        ParamScalar::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        ParamScalar::from_poly(LaurentPoly::one())
    }

    pub fn i() -> Self {
        ParamScalar::constant(GaussRat::i())
    }

    pub fn constant(c: GaussRat) -> Self {
        ParamScalar::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        ParamScalar::constant(GaussRat::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        ParamScalar::constant(GaussRat::from_rat(r))
    }

    pub fn from_unit(u: &UnitCirclePoint) -> Self {
        ParamScalar::constant(u.value().clone())
    }

    pub fn lambda(mu: usize) -> Self {
        ParamScalar::from_poly(LaurentPoly::lambda(mu))
    }

    pub fn lambda_pow(mu: usize, e: i16) -> Self {
        ParamScalar::from_poly(LaurentPoly::lambda_pow(mu, e))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // A single-term denominator is a unit: fold it into the numerator.
        if self.den.num_terms() == 1 {
            let (exp, coeff) = self.den.lead().expect("nonzero");
            let inv_exp = [-exp[0], -exp[1], -exp[2], -exp[3]];
            let inv_coeff = coeff.inv().expect("nonzero leading coefficient");
            self.num = self.num.mul_monomial(&inv_exp, &inv_coeff);
            self.den = LaurentPoly::one();
            return;
        }
        // Strip the shared rational content.
        let cn = self.num.content();
        let cd = self.den.content();
        let g = Rat::new(
            cn.numer().gcd(cd.numer()),
            cn.denom().lcm(cd.denom()),
        );
        if !g.is_one() {
            self.num = self.num.div_rat(&g);
            self.den = self.den.div_rat(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the value is the constant c.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        ParamScalar::new(self.den.clone(), self.num.clone())
    }

    pub fn star(&self) -> Self {
        let mut s = ParamScalar {
            num: self.num.star(),
            den: self.den.star(),
        };
        s.normalize();
        s
    }

    pub fn flip_signs(&self, mask: [bool; NPARAMS]) -> Self {
        let mut s = ParamScalar {
            num: self.num.flip_signs(mask),
            den: self.den.flip_signs(mask),
        };
        s.normalize();
        s
    }

    pub fn eval(&self, at: &[GaussRat; NPARAMS]) -> Result<GaussRat, ScalarError> {
        let n = self.num.eval(at)?;
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(&n / &d)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = ParamScalar::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        // a/b = c/d iff ad = cb; denominators are nonzero by invariant.
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ParamScalar {}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut s = if self.den == rhs.den {
            ParamScalar {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
        } else {
            ParamScalar {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            }
        };
        s.normalize();
        s
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut s = ParamScalar {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        };
        s.normalize();
        s
    }
}

impl Div for &ParamScalar {
    type Output = ParamScalar;
    fn div(self, rhs: &ParamScalar) -> ParamScalar {
        let inv = rhs.inv().expect("division by zero ParamScalar");
        self * &inv
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The four symbolic moduli.
pub fn symbolic_lambda() -> [ParamScalar; 4] {
    [
        ParamScalar::lambda(0),
        ParamScalar::lambda(1),
        ParamScalar::lambda(2),
        ParamScalar::lambda(3),
    ]
}

/// Constant moduli from exact circle points.
pub fn numeric_lambda(us: &[UnitCirclePoint; 4]) -> [ParamScalar; 4] {
    [
        ParamScalar::from_unit(&us[0]),
        ParamScalar::from_unit(&us[1]),
        ParamScalar::from_unit(&us[2]),
        ParamScalar::from_unit(&us[3]),
    ]
}
