//! Free associative algebra on a tagged alphabet, and its tensor powers.
//!
//! Words are sequences of generator indices. An alphabet may declare some
//! generators central; words are then normalized by moving central letters
//! to a sorted prefix, which is the only rewriting ever applied implicitly.
//! Everything else (the sphere relations, completion, normal forms) is
//! handled explicitly by the rewrite machinery.

use crate::laurent::ParamScalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    central: Vec<bool>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let central = vec![false; names.len()];
        Arc::new(Alphabet { names, central })
    }

    pub fn with_central<S: Into<String>>(names: Vec<S>, central: Vec<bool>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert_eq!(names.len(), central.len());
        Arc::new(Alphabet { names, central })
    }

    /// The sphere generators z0..z3.
    pub fn z4() -> Arc<Self> {
        Alphabet::new(vec!["z0", "z1", "z2", "z3"])
    }

    /// The rescaled generators Z0..Z3.
    pub fn scaled_z4() -> Arc<Self> {
        Alphabet::new(vec!["Z0", "Z1", "Z2", "Z3"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_central(&self, i: usize) -> bool {
        self.central[i]
    }

    pub fn has_central(&self) -> bool {
        self.central.iter().any(|&c| c)
    }

    /// Word normal form: central letters move to a sorted prefix, the
    /// remaining letters keep their mutual order.
    pub fn normalize_word(&self, w: &[u8]) -> Word {
        if !self.has_central() {
            return w.to_vec();
        }
        let mut central: Vec<u8> = w
            .iter()
            .copied()
            .filter(|&g| self.central[g as usize])
            .collect();
        central.sort_unstable();
        let rest = w.iter().copied().filter(|&g| !self.central[g as usize]);
        central.extend(rest);
        central
    }
}

pub type Word = Vec<u8>;

/// Degree-then-lexicographic comparison with a generator precedence; the
/// standard order for the rewrite machinery. `precedence[g]` is the rank of
/// generator g (smaller rank = smaller letter).
pub fn word_cmp_deglex(a: &[u8], b: &[u8], precedence: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()) {
            let (rx, ry) = (precedence[*x as usize], precedence[*y as usize]);
            if rx != ry {
                return rx.cmp(&ry);
            }
        }
        Ordering::Equal
    })
}

#[derive(Debug, Clone)]
pub struct FreeElt {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, ParamScalar>,
}

impl FreeElt {
    pub fn zero(alphabet: Arc<Alphabet>) -> Self {
        FreeElt {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Arc<Alphabet>) -> Self {
        FreeElt::constant(alphabet, ParamScalar::one())
    }

    pub fn constant(alphabet: Arc<Alphabet>, c: ParamScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        FreeElt { alphabet, terms }
    }

    pub fn gen(alphabet: Arc<Alphabet>, g: usize) -> Self {
        assert!(g < alphabet.len());
        FreeElt::word_term(alphabet, &[g as u8], ParamScalar::one())
    }

    pub fn word_term(alphabet: Arc<Alphabet>, w: &[u8], c: ParamScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            let nw = alphabet.normalize_word(w);
            terms.insert(nw, c);
        }
        FreeElt { alphabet, terms }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> ParamScalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(ParamScalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(|w| w.len());
        match lens.next() {
            None => true,
            Some(first) => lens.all(|l| l == first),
        }
    }

    pub(crate) fn insert_term(&mut self, w: Word, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
            return FreeElt::zero(self.alphabet.clone());
        }
        FreeElt {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// The adjoint anti-automorphism determined by generator star images
    /// g* = factors[g] * g: words reverse, coefficients are starred and
    /// pick up one factor per letter.
    pub fn adjoint(&self, factors: &[ParamScalar]) -> Self {
        let star_map: Vec<(usize, ParamScalar)> = factors
            .iter()
            .enumerate()
            .map(|(g, f)| (g, f.clone()))
            .collect();
        self.adjoint_map(&star_map)
    }

    /// General adjoint: generator g has star image star_map[g].1 times the
    /// generator star_map[g].0. Words reverse, coefficients are starred.
    pub fn adjoint_map(&self, star_map: &[(usize, ParamScalar)]) -> Self {
        assert_eq!(star_map.len(), self.alphabet.len());
        let mut out = FreeElt::zero(self.alphabet.clone());
        for (w, c) in &self.terms {
            let mut coeff = c.star();
            let mut rw: Word = Vec::with_capacity(w.len());
            for &g in w.iter().rev() {
                let (tg, ref f) = star_map[g as usize];
                coeff = &coeff * f;
                rw.push(tg as u8);
            }
            let rw = self.alphabet.normalize_word(&rw);
            out.insert_term(rw, coeff);
        }
        out
    }

    /// Diagonal substitution g -> factors[g] * g.
    pub fn subst_diagonal(&self, factors: &[ParamScalar]) -> Self {
        assert_eq!(factors.len(), self.alphabet.len());
        let mut out = FreeElt::zero(self.alphabet.clone());
        for (w, c) in &self.terms {
            let mut coeff = c.clone();
            for &g in w.iter() {
                coeff = &coeff * &factors[g as usize];
            }
            out.insert_term(w.clone(), coeff);
        }
        out
    }

    /// Linear generator substitution g -> coeff * target-generator, into a
    /// possibly different alphabet.
    pub fn subst_rename(
        &self,
        map: &[(usize, ParamScalar)],
        target: Arc<Alphabet>,
    ) -> Self {
        assert_eq!(map.len(), self.alphabet.len());
        let mut out = FreeElt::zero(target.clone());
        for (w, c) in &self.terms {
            let mut coeff = c.clone();
            let mut nw: Word = Vec::with_capacity(w.len());
            for &g in w.iter() {
                let (tg, ref f) = map[g as usize];
                coeff = &coeff * f;
                nw.push(tg as u8);
            }
            let nw = target.normalize_word(&nw);
            out.insert_term(nw, coeff);
        }
        out
    }

    /// Same words over a different alphabet of the same size.
    pub fn retag(&self, target: Arc<Alphabet>) -> Self {
        assert_eq!(target.len(), self.alphabet.len());
        let mut out = FreeElt::zero(target.clone());
        for (w, c) in &self.terms {
            let nw = target.normalize_word(w);
            out.insert_term(nw, c.clone());
        }
        out
    }

    /// Apply a map to every coefficient (e.g. evaluation of the moduli).
    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        let mut out = FreeElt::zero(self.alphabet.clone());
        for (w, c) in &self.terms {
            out.insert_term(w.clone(), f(c));
        }
        out
    }
}

impl PartialEq for FreeElt {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms.iter().all(|(w, c)| {
            other.terms.get(w).map(|d| c == d).unwrap_or(false)
        })
    }
}

impl Add for &FreeElt {
    type Output = FreeElt;
    fn add(self, rhs: &FreeElt) -> FreeElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FreeElt {
    type Output = FreeElt;
    fn sub(self, rhs: &FreeElt) -> FreeElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &FreeElt {
    type Output = FreeElt;
    fn mul(self, rhs: &FreeElt) -> FreeElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        let mut out = FreeElt::zero(self.alphabet.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let w = self.alphabet.normalize_word(&w);
                out.insert_term(w, ca * cb);
            }
        }
        out
    }
}

impl Neg for &FreeElt {
    type Output = FreeElt;
    fn neg(self) -> FreeElt {
        FreeElt {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

pub fn commutator(a: &FreeElt, b: &FreeElt) -> FreeElt {
    &(a * b) - &(b * a)
}

pub fn anticommutator(a: &FreeElt, b: &FreeElt) -> FreeElt {
    &(a * b) + &(b * a)
}

fn fmt_word(alphabet: &Alphabet, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&g| alphabet.name(g as usize))
        .collect::<Vec<_>>()
        .join(".")
}

impl fmt::Display for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest degree first, then lexicographic by word.
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for (idx, w) in words.iter().enumerate() {
            let c = &self.terms[*w];
            if idx > 0 {
                out.push_str(" + ");
            }
            let cs = c.to_string();
            let ws = fmt_word(&self.alphabet, w);
            if w.is_empty() {
                out.push_str(&format!("({cs})"));
            } else if cs == "1" {
                out.push_str(&ws);
            } else {
                out.push_str(&format!("({cs})·{ws}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Reduced row echelon form of the span of the given elements, with pivots
/// chosen by descending deg-lex word order. The result is a canonical basis
/// of the span, so two spans are equal iff their echelon bases are.
pub fn span_echelon(elems: &[FreeElt]) -> Vec<FreeElt> {
    let mut basis: Vec<FreeElt> = Vec::new();
    let identity_prec: Vec<u8> = (0..=255u16).map(|g| g as u8).collect();
    let lead_word = |e: &FreeElt| -> Option<Word> {
        e.terms()
            .map(|(w, _)| w.clone())
            .max_by(|a, b| word_cmp_deglex(a, b, &identity_prec))
    };
    for elem in elems {
        let mut cur = elem.clone();
        // Eliminate existing pivots.
        loop {
            let mut changed = false;
            for b in &basis {
                let lw = lead_word(b).expect("basis elements nonzero");
                let c = cur.coeff(&lw);
                if !c.is_zero() {
                    cur = &cur - &b.scale(&c);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if cur.is_zero() {
            continue;
        }
        let lw = lead_word(&cur).expect("nonzero");
        let lc = cur.coeff(&lw);
        let cur = cur.scale(&(&ParamScalar::one() / &lc));
        // Back-substitute into the existing basis.
        for b in basis.iter_mut() {
            let c = b.coeff(&lw);
            if !c.is_zero() {
                *b = &*b - &cur.scale(&c);
            }
        }
        basis.push(cur);
    }
    // Canonical order: by leading word, descending.
    basis.sort_by(|a, b| {
        let la = lead_word(a).expect("nonzero");
        let lb = lead_word(b).expect("nonzero");
        word_cmp_deglex(&lb, &la, &identity_prec)
    });
    basis
}

pub fn span_eq(a: &[FreeElt], b: &[FreeElt]) -> bool {
    let ea = span_echelon(a);
    let eb = span_echelon(b);
    ea.len() == eb.len() && ea.iter().zip(eb.iter()).all(|(x, y)| x == y)
}

pub fn in_span(x: &FreeElt, basis: &[FreeElt]) -> bool {
    let mut all: Vec<FreeElt> = basis.to_vec();
    let rank_without = span_echelon(&all).len();
    all.push(x.clone());
    span_echelon(&all).len() == rank_without
}

/// An element of the k-fold tensor power of the free algebra: formal sums
/// of k-tuples of words with scalar coefficients. Multiplication is
/// factorwise concatenation.
#[derive(Debug, Clone)]
pub struct TensorElt {
    alphabet: Arc<Alphabet>,
    factors: usize,
    terms: BTreeMap<Vec<Word>, ParamScalar>,
}

impl TensorElt {
    pub fn zero(alphabet: Arc<Alphabet>, factors: usize) -> Self {
        assert!((1..=4).contains(&factors), "tensor factor count out of range");
        TensorElt {
            alphabet,
            factors,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_free(f: &FreeElt) -> Self {
        let mut out = TensorElt::zero(f.alphabet().clone(), 1);
        for (w, c) in f.terms() {
            out.insert_term(vec![w.clone()], c.clone());
        }
        out
    }

    pub fn one(alphabet: Arc<Alphabet>, factors: usize) -> Self {
        let mut out = TensorElt::zero(alphabet, factors);
        out.insert_term(vec![Vec::new(); out.factors], ParamScalar::one());
        out
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &ParamScalar)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, ws: Vec<Word>, c: ParamScalar) {
        assert_eq!(ws.len(), self.factors);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ws) {
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

    /// Tensor product: factor lists concatenate.
    pub fn tensor(a: &TensorElt, b: &TensorElt) -> TensorElt {
        assert_eq!(a.alphabet, b.alphabet);
        let mut out = TensorElt::zero(a.alphabet.clone(), a.factors + b.factors);
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut ws = wa.clone();
                ws.extend(wb.iter().cloned());
                out.insert_term(ws, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return TensorElt::zero(self.alphabet.clone(), self.factors);
        }
        TensorElt {
            alphabet: self.alphabet.clone(),
            factors: self.factors,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k * c))
                .collect(),
        }
    }

    /// Swap tensor factors i and j.
    pub fn flip(&self, i: usize, j: usize) -> Self {
        assert!(i < self.factors && j < self.factors);
        let mut out = TensorElt::zero(self.alphabet.clone(), self.factors);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            nws.swap(i, j);
            out.insert_term(nws, c.clone());
        }
        out
    }

    /// Diagonal substitution g -> factors[g] * g in every tensor slot.
    pub fn subst_diagonal(&self, factors: &[ParamScalar]) -> Self {
        assert_eq!(factors.len(), self.alphabet.len());
        let mut out = TensorElt::zero(self.alphabet.clone(), self.factors);
        for (ws, c) in &self.terms {
            let mut coeff = c.clone();
            for w in ws {
                for &g in w.iter() {
                    coeff = &coeff * &factors[g as usize];
                }
            }
            out.insert_term(ws.clone(), coeff);
        }
        out
    }

    /// Linear generator substitution, as for `FreeElt::subst_rename`.
    pub fn subst_rename(
        &self,
        map: &[(usize, ParamScalar)],
        target: Arc<Alphabet>,
    ) -> Self {
        assert_eq!(map.len(), self.alphabet.len());
        let mut out = TensorElt::zero(target.clone(), self.factors);
        for (ws, c) in &self.terms {
            let mut coeff = c.clone();
            let mut nws = Vec::with_capacity(ws.len());
            for w in ws {
                let mut nw: Word = Vec::with_capacity(w.len());
                for &g in w.iter() {
                    let (tg, ref f) = map[g as usize];
                    coeff = &coeff * f;
                    nw.push(tg as u8);
                }
                nws.push(target.normalize_word(&nw));
            }
            out.insert_term(nws, coeff);
        }
        out
    }
}

impl PartialEq for TensorElt {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.terms == other.terms
    }
}

impl Add for &TensorElt {
    type Output = TensorElt;
    fn add(self, rhs: &TensorElt) -> TensorElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        assert_eq!(self.factors, rhs.factors);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElt {
    type Output = TensorElt;
    fn sub(self, rhs: &TensorElt) -> TensorElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        assert_eq!(self.factors, rhs.factors);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &TensorElt {
    type Output = TensorElt;
    fn mul(self, rhs: &TensorElt) -> TensorElt {
        assert_eq!(self.alphabet, rhs.alphabet);
        assert_eq!(self.factors, rhs.factors, "tensor ranks must match");
        let mut out = TensorElt::zero(self.alphabet.clone(), self.factors);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let ws: Vec<Word> = wa
                    .iter()
                    .zip(wb.iter())
                    .map(|(x, y)| {
                        let mut w = x.clone();
                        w.extend_from_slice(y);
                        self.alphabet.normalize_word(&w)
                    })
                    .collect();
                out.insert_term(ws, ca * cb);
            }
        }
        out
    }
}

impl Neg for &TensorElt {
    type Output = TensorElt;
    fn neg(self) -> TensorElt {
        TensorElt {
            alphabet: self.alphabet.clone(),
            factors: self.factors,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (ws, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let slots: Vec<String> = ws
                .iter()
                .map(|w| fmt_word(&self.alphabet, w))
                .collect();
            let cs = c.to_string();
            if cs == "1" {
                out.push_str(&slots.join("⊗"));
            } else {
                out.push_str(&format!("({})·{}", cs, slots.join("⊗")));
            }
        }
        write!(f, "{out}")
    }
}
