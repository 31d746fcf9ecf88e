//! Buchberger's algorithm and multivariate division over the parameter
//! field.
//!
//! The ideals in this crate are small (a handful of quadrics in at most
//! eight variables), so the plain pair-queue Buchberger with the coprime
//! leading-monomial criterion is entirely adequate. The resulting basis is
//! reduced: every generator is monic, minimal, and tail-reduced against the
//! others, which makes normal forms canonical for a fixed order.

use crate::commpoly::{
    exp_coprime, exp_divides, exp_lcm, exp_quot, CommPoly, MonomialOrder,
};
use crate::laurent::ParamScalar;

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub gens: Vec<CommPoly>,
    pub order: MonomialOrder,
}

/// Remainder of p on division by the given polynomials. With gens a
/// Gröbner basis this is the canonical normal form; for arbitrary gens it
/// is still a fixed deterministic reduction (first divisor in list order,
/// largest reducible term first).
pub fn reduce_mod(p: &CommPoly, gens: &[CommPoly], order: MonomialOrder) -> CommPoly {
    let mut rem = p.clone();
    'outer: loop {
        if rem.is_zero() {
            return rem;
        }
        // Largest reducible term.
        let mut terms: Vec<(Vec<u16>, ParamScalar)> = rem
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        for (exp, coeff) in &terms {
            for g in gens {
                if g.is_zero() {
                    continue;
                }
                let (glead, gc) = g.lead(order).expect("nonzero generator");
                if exp_divides(glead, exp) {
                    let q = exp_quot(exp, glead);
                    let factor = coeff / gc;
                    rem = &rem - &g.mul_monomial(&q, &factor);
                    continue 'outer;
                }
            }
        }
        // No term reducible.
        return rem;
    }
}

fn s_poly(f: &CommPoly, g: &CommPoly, order: MonomialOrder) -> CommPoly {
    let (fl, fc) = f.lead(order).expect("nonzero");
    let (gl, gc) = g.lead(order).expect("nonzero");
    let l = exp_lcm(fl, gl);
    let fm = f.mul_monomial(&exp_quot(&l, fl), &(&ParamScalar::one() / fc));
    let gm = g.mul_monomial(&exp_quot(&l, gl), &(&ParamScalar::one() / gc));
    &fm - &gm
}

/// Buchberger completion to a reduced Gröbner basis.
pub fn groebner_basis(gens: &[CommPoly], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<CommPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (li, _) = basis[i].lead(order).expect("nonzero");
        let (lj, _) = basis[j].lead(order).expect("nonzero");
        // Buchberger's first criterion: coprime leads reduce to zero.
        if exp_coprime(li, lj) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce_mod(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r);
            for m in 0..k {
                pairs.push((m, k));
            }
        }
    }
    // Minimalize: drop generators whose lead is divisible by another lead.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (li, _) = basis[i].lead(order).expect("nonzero");
        let li = li.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (lj, _) = basis[j].lead(order).expect("nonzero");
            if exp_divides(&li, lj) && (lj != &li || i < j) {
                keep[j] = false;
            }
        }
    }
    let minimal: Vec<CommPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Reduce: tail-reduce each generator against the others and make monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<CommPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let r = reduce_mod(&minimal[i], &others, order);
        if r.is_zero() {
            continue;
        }
        let (_, lc) = r.lead(order).expect("nonzero");
        let monic = r.scale(&(&ParamScalar::one() / lc));
        reduced.push(monic);
    }
    // Deterministic generator order: by leading monomial, descending.
    reduced.sort_by(|a, b| {
        let (la, _) = a.lead(order).expect("nonzero");
        let (lb, _) = b.lead(order).expect("nonzero");
        order.cmp(lb, la)
    });
    GroebnerBasis {
        gens: reduced,
        order,
    }
}

impl GroebnerBasis {
    pub fn normal_form(&self, p: &CommPoly) -> CommPoly {
        reduce_mod(p, &self.gens, self.order)
    }

    pub fn contains(&self, p: &CommPoly) -> bool {
        self.normal_form(p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::symbolic_lambda;

    fn v(n: usize, i: usize) -> CommPoly {
        CommPoly::var(n, i)
    }

    #[test]
    fn reduction_by_a_groebner_basis_is_canonical() {
        // Ideal (x^2 - y, y^2 - x) in 2 vars.
        let x = v(2, 0);
        let y = v(2, 1);
        let g1 = &(&x * &x) - &y;
        let g2 = &(&y * &y) - &x;
        let gb = groebner_basis(&[g1.clone(), g2.clone()], MonomialOrder::DegRevLex);
        // x^4 reduces to x (x^4 -> y^2 -> x).
        let x4 = &(&x * &x) * &(&x * &x);
        assert_eq!(gb.normal_form(&x4), x);
        // Membership of a random combination.
        let c = &(&x * &g1) + &(&(&y - &x) * &g2);
        assert!(gb.contains(&c));
        // Normal form is idempotent.
        let p = &(&(&x * &y) * &(&x + &y)) + &x;
        let nf = gb.normal_form(&p);
        assert_eq!(gb.normal_form(&nf), nf);
    }

    #[test]
    fn katsura_like_symbolic_coefficients() {
        // Two diagonal quadrics with symbolic moduli: the shape used by the
        // characteristic variety. GB must terminate and stay small.
        let l = symbolic_lambda();
        let n = 4;
        let mut q1 = CommPoly::zero(n);
        let mut q2 = CommPoly::zero(n);
        for mu in 0..4 {
            let mut e = vec![0u16; n];
            e[mu] = 2;
            q1 = &q1 + &CommPoly::monomial(n, e.clone(), ParamScalar::one());
            q2 = &q2 + &CommPoly::monomial(n, e, &l[mu] * &l[mu]);
        }
        let gb = groebner_basis(&[q1.clone(), q2.clone()], MonomialOrder::DegRevLex);
        assert!(gb.gens.len() >= 2);
        assert!(gb.contains(&q1));
        assert!(gb.contains(&q2));
        let comb = &(&v(n, 0) * &q1) - &(&v(n, 3) * &q2);
        assert!(gb.contains(&comb));
        // y0^2*y1^2 is not in the ideal (check against the degree-4 slice
        // oracle below).
        let m = &(&v(n, 0) * &v(n, 0)) * &(&v(n, 1) * &v(n, 1));
        assert!(!gb.contains(&m));
    }

    /// Brute-force membership in the degree <= d slice of an ideal
    /// generated by homogeneous quadrics: row-reduce the span of all
    /// monomial multiples and test the target against it. Independent of
    /// the division-based reduction above.
    fn slice_membership(target: &CommPoly, gens: &[CommPoly], d: u32) -> bool {
        use std::collections::BTreeMap;
        let n = target.nvars();
        // Enumerate monomials of degree <= d - 2 to multiply the quadrics.
        fn monomials(n: usize, d: u32) -> Vec<Vec<u16>> {
            let mut out = vec![vec![0u16; n]];
            for _ in 0..d {
                let mut next = Vec::new();
                for m in &out {
                    for i in 0..n {
                        let mut e = m.clone();
                        e[i] += 1;
                        next.push(e);
                    }
                }
                next.sort();
                next.dedup();
                out.extend(next.clone());
                out.sort();
                out.dedup();
            }
            out
        }
        let mut rows: Vec<BTreeMap<Vec<u16>, ParamScalar>> = Vec::new();
        for g in gens {
            for m in monomials(n, d.saturating_sub(g.total_degree())) {
                let prod = g.mul_monomial(&m, &ParamScalar::one());
                if prod.total_degree() > d {
                    continue;
                }
                rows.push(prod.terms().map(|(e, c)| (e.clone(), c.clone())).collect());
            }
        }
        // Gaussian elimination over the coefficient field.
        let mut pivots: Vec<(Vec<u16>, BTreeMap<Vec<u16>, ParamScalar>)> = Vec::new();
        let reduce_row = |row: &mut BTreeMap<Vec<u16>, ParamScalar>,
                          pivots: &Vec<(Vec<u16>, BTreeMap<Vec<u16>, ParamScalar>)>| {
            for (p, prow) in pivots {
                if let Some(c) = row.get(p).cloned() {
                    if c.is_zero() {
                        row.remove(p);
                        continue;
                    }
                    for (e, pc) in prow {
                        let cur = row.get(e).cloned().unwrap_or_else(ParamScalar::zero);
                        let nv = &cur - &(&c * pc);
                        if nv.is_zero() {
                            row.remove(e);
                        } else {
                            row.insert(e.clone(), nv);
                        }
                    }
                }
            }
            row.retain(|_, c| !c.is_zero());
        };
        for mut row in rows {
            reduce_row(&mut row, &pivots);
            if row.is_empty() {
                continue;
            }
            // Normalize on the largest remaining monomial.
            let p = row.keys().next_back().unwrap().clone();
            let pc = row[&p].clone();
            let inv = &ParamScalar::one() / &pc;
            let norm: BTreeMap<Vec<u16>, ParamScalar> =
                row.iter().map(|(e, c)| (e.clone(), c * &inv)).collect();
            pivots.push((p, norm));
        }
        let mut trow: BTreeMap<Vec<u16>, ParamScalar> = target
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        reduce_row(&mut trow, &pivots);
        trow.is_empty()
    }

    #[test]
    fn division_agrees_with_slice_linear_algebra() {
        let l = symbolic_lambda();
        let n = 4;
        let mut q1 = CommPoly::zero(n);
        let mut q2 = CommPoly::zero(n);
        for mu in 0..4 {
            let mut e = vec![0u16; n];
            e[mu] = 2;
            q1 = &q1 + &CommPoly::monomial(n, e.clone(), ParamScalar::one());
            q2 = &q2 + &CommPoly::monomial(n, e, &l[mu] * &l[mu]);
        }
        let gb = groebner_basis(&[q1.clone(), q2.clone()], MonomialOrder::DegRevLex);
        // y0^4 has a nonzero normal form and the slice oracle agrees it is
        // not a member.
        let y0 = v(n, 0);
        let y0_4 = &(&y0 * &y0) * &(&y0 * &y0);
        assert!(!gb.normal_form(&y0_4).is_zero());
        assert!(!slice_membership(&y0_4, &[q1.clone(), q2.clone()], 4));
        // A genuine member passes both routes.
        let member = &(&(&y0 * &y0) * &q1) - &(&(&v(n, 1) * &v(n, 2)) * &q2);
        assert!(gb.contains(&member));
        assert!(slice_membership(&member, &[q1, q2], 4));
    }

    #[test]
    fn lex_order_eliminates() {
        // (x - y^2, x*y - 1): lex GB with x first eliminates x.
        let x = v(2, 0);
        let y = v(2, 1);
        let g1 = &x - &(&y * &y);
        let g2 = &(&x * &y) - &CommPoly::one(2);
        let gb = groebner_basis(&[g1, g2], MonomialOrder::Lex);
        // Some generator must involve only y: y^3 - 1.
        let pure_y = gb.gens.iter().find(|g| {
            g.terms().all(|(e, _)| e[0] == 0)
        });
        let y3 = &(&y * &y) * &y;
        let expect = &y3 - &CommPoly::one(2);
        assert_eq!(pure_y.expect("elimination produced a pure-y generator"), &expect);
    }
}
