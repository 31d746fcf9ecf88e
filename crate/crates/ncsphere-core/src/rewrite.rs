//! Word rewriting for quadratic presentations, with graded dimension counts.
//!
//! A presentation is oriented into rewrite rules `lead → tail` under a
//! degree-lexicographic word order, completed by resolving overlap and
//! inclusion ambiguities up to a degree bound (the diamond lemma), and then
//! interrogated: normal forms, graded and filtered dimensions read off the
//! irreducible words, and centrality certificates.
//!
//! Dimension counting has a second, fully independent route:
//! [`graded_dims_linear`] builds the degree-n slice of the two-sided ideal
//! by plain Gaussian elimination on word-indexed coordinate vectors and
//! never touches the rewrite machinery, so the two answers cross-check each
//! other.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{commutator, word_cmp_deglex, Alphabet, FreeElt, Word};
use crate::laurent::ParamScalar;
use crate::scalar::GaussRat;

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("rewriting needs a plain alphabet without central letters")]
    CentralAlphabet,
    #[error("precedence must rank every letter exactly once")]
    BadPrecedence,
    #[error("the relations force 1 = 0")]
    Inconsistent,
    #[error("confluence is certified only through degree {certified}, needed {needed}")]
    NotCertified { certified: usize, needed: usize },
    #[error("linear dimension counting needs constant coefficients")]
    NonConstantCoeff,
    #[error("linear dimension counting needs homogeneous quadratic relations")]
    NonQuadratic,
}

/// A single rule `lead → tail`; every word of `tail` is strictly smaller
/// than `lead` in the system's order, so rewriting terminates.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    lead: Word,
    tail: FreeElt,
}

impl RewriteRule {
    pub fn lead(&self) -> &Word {
        &self.lead
    }

    pub fn tail(&self) -> &FreeElt {
        &self.tail
    }

    /// The rule as the element `lead − tail` it kills.
    pub fn as_element(&self, alphabet: &Arc<Alphabet>) -> FreeElt {
        &FreeElt::word_term(alphabet.clone(), &self.lead, ParamScalar::one()) - &self.tail
    }
}

/// Resource bound for completion; exceeding it stops the run with a partial
/// confluence certificate instead of spinning forever on systems whose
/// completed basis is infinite.
#[derive(Clone, Copy, Debug)]
pub struct CompletionBudget {
    pub max_rules: usize,
    pub max_pairs: u64,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget {
            max_rules: 4000,
            max_pairs: 400_000,
        }
    }
}

/// Outcome of a completion run.
#[derive(Clone, Copy, Debug)]
pub struct CompletionReport {
    /// All ambiguities of degree ≤ this value are resolved, so normal forms
    /// of elements up to this degree are unique.
    pub certified_degree: usize,
    pub rules_total: usize,
    pub rules_added: usize,
    pub pairs_processed: u64,
    /// True when the budget ran out before the requested degree.
    pub exhausted: bool,
}

/// One critical ambiguity: `word` can be rewritten with the left rule at
/// `left_pos` or the right rule at `right_pos`.
#[derive(Clone, Debug)]
struct CriticalPair {
    word: Word,
    left_rule: usize,
    left_pos: usize,
    right_rule: usize,
    right_pos: usize,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    /// `precedence[g]` is the rank of letter g; smaller rank = smaller letter.
    precedence: Vec<u8>,
    rules: Vec<RewriteRule>,
    certified: usize,
}

impl RewriteSystem {
    /// Orient the relations into rules.  The relations are inter-reduced
    /// first, so the leading words come out pairwise distinct.  `precedence`
    /// defaults to the alphabet order.
    pub fn new(
        alphabet: Arc<Alphabet>,
        relations: &[FreeElt],
        precedence: Option<Vec<u8>>,
    ) -> Result<Self, RewriteError> {
        if alphabet.has_central() {
            return Err(RewriteError::CentralAlphabet);
        }
        let precedence =
            precedence.unwrap_or_else(|| (0..alphabet.len() as u8).collect::<Vec<u8>>());
        {
            let mut seen = precedence.clone();
            seen.sort_unstable();
            seen.dedup();
            if precedence.len() != alphabet.len() || seen.len() != precedence.len() {
                return Err(RewriteError::BadPrecedence);
            }
        }
        let mut sys = RewriteSystem {
            alphabet,
            precedence,
            rules: Vec::new(),
            certified: 1,
        };
        for row in sys.reduced_echelon(relations) {
            let rule = sys.orient(row)?;
            sys.rules.push(rule);
        }
        Ok(sys)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lead.clone()).collect()
    }

    /// The degree through which unique normal forms are guaranteed.
    pub fn certified_degree(&self) -> usize {
        self.certified
    }

    fn word_cmp(&self, a: &[u8], b: &[u8]) -> std::cmp::Ordering {
        word_cmp_deglex(a, b, &self.precedence)
    }

    fn lead_word(&self, e: &FreeElt) -> Option<Word> {
        e.terms()
            .map(|(w, _)| w)
            .max_by(|a, b| self.word_cmp(a, b))
            .cloned()
    }

    /// Reduced row echelon over the coefficient field, pivoting on the
    /// largest word under this system's order.
    fn reduced_echelon(&self, elems: &[FreeElt]) -> Vec<FreeElt> {
        let mut basis: Vec<FreeElt> = Vec::new();
        for elem in elems {
            let mut cur = elem.clone();
            loop {
                let mut changed = false;
                for b in &basis {
                    let lw = self.lead_word(b).expect("basis rows nonzero");
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
            let lw = self.lead_word(&cur).expect("nonzero");
            let lc = cur.coeff(&lw);
            let cur = cur.scale(&(&ParamScalar::one() / &lc));
            for b in basis.iter_mut() {
                let c = b.coeff(&lw);
                if !c.is_zero() {
                    *b = &*b - &cur.scale(&c);
                }
            }
            basis.push(cur);
        }
        basis.sort_by(|a, b| {
            let la = self.lead_word(a).expect("nonzero");
            let lb = self.lead_word(b).expect("nonzero");
            self.word_cmp(&lb, &la)
        });
        basis
    }

    /// Turn a nonzero element into a monic rule on its leading word.
    fn orient(&self, e: FreeElt) -> Result<RewriteRule, RewriteError> {
        let lead = self.lead_word(&e).expect("orient needs a nonzero element");
        if lead.is_empty() {
            return Err(RewriteError::Inconsistent);
        }
        let c = e.coeff(&lead);
        let monic = e.scale(&(&ParamScalar::one() / &c));
        let tail =
            &FreeElt::word_term(self.alphabet.clone(), &lead, ParamScalar::one()) - &monic;
        Ok(RewriteRule { lead, tail })
    }

    /// First reducible position in `w`: leftmost position wins, then the
    /// rule with the smallest index.
    fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                let l = rule.lead.len();
                if pos + l <= w.len() && w[pos..pos + l] == rule.lead[..] {
                    return Some((ri, pos));
                }
            }
        }
        None
    }

    /// Replace the factor of `w` at `pos` matched by rule `ri` with the
    /// rule's tail, keeping the scalar weight.
    fn apply_at(&self, w: &[u8], c: &ParamScalar, ri: usize, pos: usize) -> FreeElt {
        let rule = &self.rules[ri];
        let prefix = FreeElt::word_term(self.alphabet.clone(), &w[..pos], c.clone());
        let suffix = FreeElt::word_term(
            self.alphabet.clone(),
            &w[pos + rule.lead.len()..],
            ParamScalar::one(),
        );
        &(&prefix * &rule.tail) * &suffix
    }

    /// Fully rewrite an element.  Deterministic: always contracts the
    /// largest reducible word at its leftmost redex.  Terminates because
    /// every step replaces a word by strictly smaller ones.
    pub fn normal_form(&self, e: &FreeElt) -> FreeElt {
        let mut cur = e.clone();
        loop {
            let mut target: Option<(Word, usize, usize)> = None;
            for (w, _) in cur.terms() {
                if let Some((ri, pos)) = self.find_redex(w) {
                    let better = match &target {
                        None => true,
                        Some((tw, _, _)) => {
                            self.word_cmp(w, tw) == std::cmp::Ordering::Greater
                        }
                    };
                    if better {
                        target = Some((w.clone(), ri, pos));
                    }
                }
            }
            let Some((w, ri, pos)) = target else {
                return cur;
            };
            let c = cur.coeff(&w);
            let repl = self.apply_at(&w, &c, ri, pos);
            cur = &(&cur - &FreeElt::word_term(self.alphabet.clone(), &w, c)) + &repl;
        }
    }

    /// All overlap and inclusion ambiguities of the ordered rule pair (i, j).
    fn ambiguities(&self, i: usize, j: usize) -> Vec<CriticalPair> {
        let u = &self.rules[i].lead;
        let v = &self.rules[j].lead;
        let mut out = Vec::new();
        // Overlap: a proper suffix of u equals a proper prefix of v.
        for k in 1..u.len().min(v.len()) {
            if u[u.len() - k..] == v[..k] {
                let mut w = u.clone();
                w.extend_from_slice(&v[k..]);
                out.push(CriticalPair {
                    word: w,
                    left_rule: i,
                    left_pos: 0,
                    right_rule: j,
                    right_pos: u.len() - k,
                });
            }
        }
        // Inclusion: v sits strictly inside u.
        if v.len() < u.len() {
            for p in 0..=u.len() - v.len() {
                if u[p..p + v.len()] == v[..] {
                    out.push(CriticalPair {
                        word: u.clone(),
                        left_rule: i,
                        left_pos: 0,
                        right_rule: j,
                        right_pos: p,
                    });
                }
            }
        }
        out
    }

    fn queue_key(&self, w: &[u8]) -> (usize, Vec<u8>) {
        (
            w.len(),
            w.iter().map(|&g| self.precedence[g as usize]).collect(),
        )
    }

    /// Resolve all ambiguities of degree ≤ `target_degree`, adding rules for
    /// the ones that fail, in ascending degree order.  When the budget runs
    /// out, the certificate honestly reports the degree reached.
    pub fn complete(
        &mut self,
        target_degree: usize,
        budget: &CompletionBudget,
    ) -> Result<CompletionReport, RewriteError> {
        let mut queue: BTreeMap<(usize, Vec<u8>), Vec<CriticalPair>> = BTreeMap::new();
        let push = |queue: &mut BTreeMap<(usize, Vec<u8>), Vec<CriticalPair>>,
                        sys: &RewriteSystem,
                        pairs: Vec<CriticalPair>| {
            for p in pairs {
                if p.word.len() <= target_degree {
                    queue.entry(sys.queue_key(&p.word)).or_default().push(p);
                }
            }
        };
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                let pairs = self.ambiguities(i, j);
                push(&mut queue, self, pairs);
            }
        }

        let rules_before = self.rules.len();
        let mut pairs_processed: u64 = 0;
        let mut exhausted = false;
        let mut certified = target_degree;

        // Drain one pair at a time, always the smallest ambiguity word, so a
        // budget stop certifies exactly the degrees already emptied.
        loop {
            let Some(key) = queue.keys().next().cloned() else {
                break;
            };
            if pairs_processed >= budget.max_pairs || self.rules.len() >= budget.max_rules {
                exhausted = true;
                certified = key.0.saturating_sub(1).min(target_degree);
                break;
            }
            let pair = {
                let bucket = queue.get_mut(&key).expect("key just observed");
                let pair = bucket.remove(0);
                if bucket.is_empty() {
                    queue.remove(&key);
                }
                pair
            };
            pairs_processed += 1;
            let one = ParamScalar::one();
            let left = self.apply_at(&pair.word, &one, pair.left_rule, pair.left_pos);
            let right = self.apply_at(&pair.word, &one, pair.right_rule, pair.right_pos);
            let diff = &left - &right;
            let nf = self.normal_form(&diff);
            if nf.is_zero() {
                continue;
            }
            let rule = self.orient(nf)?;
            let new_idx = self.rules.len();
            self.rules.push(rule);
            for s in 0..self.rules.len() {
                let fwd = self.ambiguities(new_idx, s);
                push(&mut queue, self, fwd);
                if s != new_idx {
                    let bwd = self.ambiguities(s, new_idx);
                    push(&mut queue, self, bwd);
                }
            }
        }
        self.certified = certified;
        Ok(CompletionReport {
            certified_degree: certified,
            rules_total: self.rules.len(),
            rules_added: self.rules.len() - rules_before,
            pairs_processed,
            exhausted,
        })
    }

    /// Words of the given length containing no leading word as a factor.
    pub fn standard_words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur: Word = Vec::with_capacity(len);
        self.standard_dfs(len, &mut cur, &mut |w| out.push(w.to_vec()));
        out
    }

    fn count_standard(&self, len: usize) -> usize {
        let mut n = 0usize;
        let mut cur: Word = Vec::with_capacity(len);
        self.standard_dfs(len, &mut cur, &mut |_| n += 1);
        n
    }

    fn standard_dfs(&self, len: usize, cur: &mut Word, visit: &mut impl FnMut(&[u8])) {
        if cur.len() == len {
            visit(cur);
            return;
        }
        'letter: for g in 0..self.alphabet.len() as u8 {
            cur.push(g);
            for rule in &self.rules {
                let l = rule.lead.len();
                if l <= cur.len() && cur[cur.len() - l..] == rule.lead[..] {
                    cur.pop();
                    continue 'letter;
                }
            }
            self.standard_dfs(len, cur, visit);
            cur.pop();
        }
    }

    /// Dimension of the degree-n slice of the quotient algebra, read off the
    /// irreducible words.  Exact once confluence is certified through n.
    pub fn graded_dimension(&self, n: usize) -> Result<usize, RewriteError> {
        if n > self.certified {
            return Err(RewriteError::NotCertified {
                certified: self.certified,
                needed: n,
            });
        }
        Ok(self.count_standard(n))
    }

    /// Dimension of the filtration level ≤ n; the natural reading for
    /// inhomogeneous presentations, where rewriting lowers degree.
    pub fn filtered_dimension(&self, n: usize) -> Result<usize, RewriteError> {
        if n > self.certified {
            return Err(RewriteError::NotCertified {
                certified: self.certified,
                needed: n,
            });
        }
        Ok((0..=n).map(|k| self.count_standard(k)).sum())
    }

    /// Normal forms of the commutators of `e` with every generator; `e` is
    /// central exactly when they all vanish.  Demands a certificate one
    /// degree above `e` so the vanishing is conclusive.
    pub fn centrality(&self, e: &FreeElt) -> Result<CentralityWitness, RewriteError> {
        let need = e.degree().map_or(0, |d| d + 1);
        if need > self.certified {
            return Err(RewriteError::NotCertified {
                certified: self.certified,
                needed: need,
            });
        }
        let mut commutators = Vec::with_capacity(self.alphabet.len());
        for g in 0..self.alphabet.len() {
            let zg = FreeElt::gen(self.alphabet.clone(), g);
            let nf = self.normal_form(&commutator(e, &zg));
            commutators.push((g, nf));
        }
        let central = commutators.iter().all(|(_, nf)| nf.is_zero());
        Ok(CentralityWitness {
            central,
            commutators,
            certified_degree: self.certified,
        })
    }
}

/// The evidence behind a centrality verdict: one reduced commutator per
/// generator, plus the confluence degree that makes the reduction binding.
#[derive(Clone, Debug)]
pub struct CentralityWitness {
    pub central: bool,
    pub commutators: Vec<(usize, FreeElt)>,
    pub certified_degree: usize,
}

type SliceVec = BTreeMap<Word, GaussRat>;

/// Gaussian elimination step: reduce `v` against the echelon rows (keyed by
/// pivot word, each row monic with its pivot as largest word) and insert it
/// if anything survives.
fn insert_row(ech: &mut BTreeMap<Word, SliceVec>, mut v: SliceVec) {
    loop {
        let Some((piv, c)) = v
            .iter()
            .next_back()
            .map(|(w, c)| (w.clone(), c.clone()))
        else {
            return;
        };
        match ech.get(&piv) {
            Some(row) => {
                v.remove(&piv);
                for (w, rc) in row {
                    if *w == piv {
                        continue;
                    }
                    let delta = &c * rc;
                    let newc = match v.get(w) {
                        Some(old) => old - &delta,
                        None => -&delta,
                    };
                    if newc.is_zero() {
                        v.remove(w);
                    } else {
                        v.insert(w.clone(), newc);
                    }
                }
            }
            None => {
                let cinv = c.inv().expect("pivot coefficient nonzero");
                let row: SliceVec =
                    v.iter().map(|(w, x)| (w.clone(), x * &cinv)).collect();
                ech.insert(piv, row);
                return;
            }
        }
    }
}

fn words_of_len(nv: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * nv);
        for w in &out {
            for g in 0..nv as u8 {
                let mut nw = w.clone();
                nw.push(g);
                next.push(nw);
            }
        }
        out = next;
    }
    out
}

/// Graded dimensions `dim A_n` for n = 0..=max_n of the algebra presented by
/// homogeneous quadratic relations with constant coefficients, by direct
/// linear algebra on the ideal slices: `I_n = V·I_{n−1} + R·V^{n−2}`.
///
/// Left-multiplying an echelon basis by the four letters keeps it in echelon
/// form (the pivot inherits the prefix), so each level only eliminates the
/// freshly generated `R·V^{n−2}` rows.  Completely independent of the
/// rewriting route above.
pub fn graded_dims_linear(
    alphabet: &Arc<Alphabet>,
    relations: &[FreeElt],
    max_n: usize,
) -> Result<Vec<usize>, RewriteError> {
    let nv = alphabet.len();
    let mut rels: Vec<SliceVec> = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let mut m = SliceVec::new();
        for (w, c) in r.terms() {
            if w.len() != 2 {
                return Err(RewriteError::NonQuadratic);
            }
            let c = c.as_constant().ok_or(RewriteError::NonConstantCoeff)?;
            if !c.is_zero() {
                m.insert(w.clone(), c);
            }
        }
        if !m.is_empty() {
            rels.push(m);
        }
    }

    let mut dims = Vec::with_capacity(max_n + 1);
    dims.push(1);
    if max_n >= 1 {
        dims.push(nv);
    }
    let mut prev: BTreeMap<Word, SliceVec> = BTreeMap::new();
    for n in 2..=max_n {
        let mut ech: BTreeMap<Word, SliceVec> = BTreeMap::new();
        for (piv, row) in &prev {
            for g in 0..nv as u8 {
                let mut nr = SliceVec::new();
                for (w, c) in row {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(g);
                    nw.extend_from_slice(w);
                    nr.insert(nw, c.clone());
                }
                let mut np = Vec::with_capacity(piv.len() + 1);
                np.push(g);
                np.extend_from_slice(piv);
                ech.insert(np, nr);
            }
        }
        for w in words_of_len(nv, n - 2) {
            for r in &rels {
                let v: SliceVec = r
                    .iter()
                    .map(|(rw, c)| {
                        let mut nw = rw.clone();
                        nw.extend_from_slice(&w);
                        (nw, c.clone())
                    })
                    .collect();
                insert_row(&mut ech, v);
            }
        }
        dims.push(nv.pow(n as u32) - ech.len());
        prev = ech;
    }
    dims.truncate(max_n + 1);
    Ok(dims)
}
