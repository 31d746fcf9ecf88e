//! Sphere presentations built from the four moduli parameters.
//!
//! The quadratic algebra of a noncommutative 3-sphere is generated by the
//! Pauli coefficients of a unitary `U = z0·I + i·(z1σ1 + z2σ2 + z3σ3)` whose
//! adjoint is twisted by unit-circle parameters, `z_μ* = λ_μ z_μ`.  Expanding
//! `UU*` and `U*U` in the Pauli basis produces one inhomogeneous relation
//! (the scalar component, the same for both products) and six homogeneous
//! quadratic relations (the vector components).  This module derives those
//! relations, rewrites them through the standard rescaling `Z_μ = ρ_μ z_μ`,
//! exposes the central elements, and classifies the degenerate parameter
//! configurations.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::freealg::{anticommutator, commutator, Alphabet, FreeElt};
use crate::laurent::ParamScalar;
use crate::matfree::{pauli, pauli_expand, MatFree};
use crate::radical::{RadicalCtx, RadicalScalar};
use crate::scalar::{GaussRat, Rat, UnitCirclePoint};

/// Cyclic triples (k, l, m) used throughout: relation k couples the pair
/// (z0, zk) with the complementary pair (zl, zm).
pub const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

#[derive(Debug, Error)]
pub enum SphereError {
    /// A factor entering the rescaling vanished; the parameters belong to one
    /// of the degenerate families and must go through the classifier instead.
    #[error("degenerate parameters: vanishing factor(s) {factors:?}")]
    SpecialCase { factors: Vec<String> },
    /// Generator hermiticity flags are only meaningful when the product of
    /// the four parameters is 1.
    #[error("hermiticity flags need lambda0*lambda1*lambda2*lambda3 = 1")]
    FlagsNotApplicable,
    /// Sign twists must flip an even number of entries to stay inside the
    /// plain automorphism group.
    #[error("sign twist must flip an even number of entries")]
    OddTwist,
    /// The operation needs explicit unit-circle values, not symbolic ones.
    #[error("operation requires numeric parameters")]
    NeedNumeric,
}

/// The four moduli parameters, either as symbolic Laurent indeterminates or
/// specialized to exact unit-circle points.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliParams {
    lam: [ParamScalar; 4],
    numeric: Option<[UnitCirclePoint; 4]>,
}

impl ModuliParams {
    pub fn symbolic() -> Self {
        ModuliParams {
            lam: crate::laurent::symbolic_lambda(),
            numeric: None,
        }
    }

    pub fn from_points(points: [UnitCirclePoint; 4]) -> Self {
        ModuliParams {
            lam: crate::laurent::numeric_lambda(&points),
            numeric: Some(points),
        }
    }

    pub fn lambda(&self, mu: usize) -> ParamScalar {
        self.lam[mu].clone()
    }

    pub fn lambdas(&self) -> &[ParamScalar; 4] {
        &self.lam
    }

    pub fn points(&self) -> Option<&[UnitCirclePoint; 4]> {
        self.numeric.as_ref()
    }

    pub fn is_numeric(&self) -> bool {
        self.numeric.is_some()
    }

    /// Elementwise star: on the unit circle this is the inverse.
    pub fn star(&self) -> Self {
        ModuliParams {
            lam: [
                self.lam[0].star(),
                self.lam[1].star(),
                self.lam[2].star(),
                self.lam[3].star(),
            ],
            numeric: self
                .numeric
                .as_ref()
                .map(|pts| [pts[0].inv(), pts[1].inv(), pts[2].inv(), pts[3].inv()]),
        }
    }
}

/// A presentation of the quadratic algebra: six homogeneous degree-2
/// relations plus the inhomogeneous scalar component `C = Σ λ_μ z_μ²`.
#[derive(Clone, Debug)]
pub struct SpherePresentation {
    params: ModuliParams,
    alphabet: Arc<Alphabet>,
    /// Vector components of UU* (entries 0..3) and of U*U (entries 3..6),
    /// divided by the overall factor i.
    homogeneous: [FreeElt; 6],
    /// Scalar component of either product.
    c_element: FreeElt,
}

impl SpherePresentation {
    pub fn params(&self) -> &ModuliParams {
        &self.params
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relations(&self) -> &[FreeElt; 6] {
        &self.homogeneous
    }

    /// The central combination Σ λ_μ z_μ²; the sphere itself imposes C = 1.
    pub fn c_element(&self) -> &FreeElt {
        &self.c_element
    }

    /// Star data of the generators: z_μ* = λ_μ z_μ.
    pub fn star_map(&self) -> Vec<(usize, ParamScalar)> {
        (0..4).map(|mu| (mu, self.params.lambda(mu))).collect()
    }

    /// The relations that are not identically zero (degenerate parameters
    /// can kill some of the six).
    pub fn nonzero_relations(&self) -> Vec<FreeElt> {
        self.homogeneous
            .iter()
            .filter(|r| !r.is_zero())
            .cloned()
            .collect()
    }
}

/// Expand `UU*` and `U*U` in the Pauli basis and collect the relations.
pub fn unitarity_relations(params: &ModuliParams) -> SpherePresentation {
    let ab = Alphabet::z4();
    let mut u = MatFree::zero(2, ab.clone());
    for mu in 0..4 {
        let g = FreeElt::gen(ab.clone(), mu);
        let coef = if mu == 0 {
            ParamScalar::one()
        } else {
            ParamScalar::i()
        };
        let term = pauli(mu, &ab).map(|e| (&g * e).scale(&coef));
        u = &u + &term;
    }
    let star_map: Vec<(usize, ParamScalar)> =
        (0..4).map(|mu| (mu, params.lambda(mu))).collect();
    let ustar = u.adjoint(&star_map);

    let uus = pauli_expand(&(&u * &ustar)).expect("2x2 product");
    let usu = pauli_expand(&(&ustar * &u)).expect("2x2 product");
    debug_assert!(uus[0] == usu[0], "scalar components of UU* and U*U agree");

    let minus_i = -&ParamScalar::i();
    let rel = |c: &FreeElt| c.scale(&minus_i);
    SpherePresentation {
        params: params.clone(),
        alphabet: ab,
        homogeneous: [
            rel(&uus[1]),
            rel(&uus[2]),
            rel(&uus[3]),
            rel(&usu[1]),
            rel(&usu[2]),
            rel(&usu[3]),
        ],
        c_element: uus[0].clone(),
    }
}

/// The six relations reorganized into anticommutator/commutator pairs:
/// for each cyclic (k, l, m),
///   `anti[k-1] = (λ_k − λ_0)[z_0,z_k]₊ − (λ_l + λ_m)[z_l,z_m]₋`
///   `comm[k-1] = (λ_k + λ_0)[z_0,z_k]₋ − (λ_m − λ_l)[z_l,z_m]₊`
#[derive(Clone, Debug)]
pub struct CommAnticommForm {
    pub anti: [FreeElt; 3],
    pub comm: [FreeElt; 3],
}

impl CommAnticommForm {
    pub fn all(&self) -> Vec<FreeElt> {
        let mut v = Vec::with_capacity(6);
        v.extend(self.anti.iter().cloned());
        v.extend(self.comm.iter().cloned());
        v
    }
}

pub fn comm_anticomm_form(p: &SpherePresentation) -> CommAnticommForm {
    let ab = p.alphabet.clone();
    let lam = p.params.lambdas();
    let g = |i: usize| FreeElt::gen(ab.clone(), i);
    let mut anti = Vec::with_capacity(3);
    let mut comm = Vec::with_capacity(3);
    for &(k, l, m) in CYCLIC.iter() {
        let ac = anticommutator(&g(0), &g(k)).scale(&(&lam[k] - &lam[0]));
        let cc = commutator(&g(l), &g(m)).scale(&(&lam[l] + &lam[m]));
        anti.push(&ac - &cc);
        let c2 = commutator(&g(0), &g(k)).scale(&(&lam[k] + &lam[0]));
        let a2 = anticommutator(&g(l), &g(m)).scale(&(&lam[m] - &lam[l]));
        comm.push(&c2 - &a2);
    }
    CommAnticommForm {
        anti: [anti[0].clone(), anti[1].clone(), anti[2].clone()],
        comm: [comm[0].clone(), comm[1].clone(), comm[2].clone()],
    }
}

/// Rescaling data: the homogeneous parameters `a_k`, the squared scale
/// factors `ρ_μ²`, and the pairwise products `ρ_μρ_ν` expressed in the
/// quadratic extension generated by t1 = ρ_2ρ_3 and t2 = ρ_1ρ_3.
#[derive(Clone, Debug)]
pub struct SklyaninData {
    pub a: [ParamScalar; 3],
    pub rho_sq: [ParamScalar; 4],
    /// The product ρ_0ρ_1ρ_2ρ_3, fixed by convention to
    /// Π_k (λ_0+λ_k)(λ_m−λ_l).
    pub total_product: ParamScalar,
    ctx: RadicalCtx,
}

impl SklyaninData {
    pub fn radical_ctx(&self) -> &RadicalCtx {
        &self.ctx
    }

    /// ρ_μ ρ_ν as an element of the extension; squares to ρ_μ²·ρ_ν² and the
    /// complementary products multiply to the total product.
    pub fn pair_product(&self, mu: usize, nu: usize) -> RadicalScalar {
        let (mu, nu) = if mu <= nu { (mu, nu) } else { (nu, mu) };
        let p = &self.total_product;
        let r = &self.rho_sq;
        match (mu, nu) {
            (2, 3) => RadicalScalar::t1(),
            (1, 3) => RadicalScalar::t2(),
            (1, 2) => {
                let c = &ParamScalar::one() / &r[3];
                RadicalScalar::t1_t2().scale(&c)
            }
            (0, 1) => RadicalScalar::t1().scale(&(p / &(&r[2] * &r[3]))),
            (0, 2) => RadicalScalar::t2().scale(&(p / &(&r[1] * &r[3]))),
            (0, 3) => {
                let c = p / &(&(&r[1] * &r[2]) * &r[3]);
                RadicalScalar::t1_t2().scale(&c)
            }
            _ => panic!("pair product needs two distinct indices in 0..4"),
        }
    }
}

/// Relations in the rescaled generators Z_μ = ρ_μ z_μ.
#[derive(Clone, Debug)]
pub struct SklyaninForm {
    pub alphabet: Arc<Alphabet>,
    /// The six relations carried through the rescaling, each multiplied by
    /// ρ_0ρ_k; the mixed products ρ_0ρ_k/(ρ_lρ_m) collapse to
    /// (λ_0+λ_k)/(λ_m−λ_l), keeping every coefficient rational.
    pub rescaled: [FreeElt; 6],
    /// `[Z_0,Z_k]₋ − [Z_l,Z_m]₊` for the three cyclic triples.
    pub comm: [FreeElt; 3],
    /// `(a_m − a_l)[Z_0,Z_k]₊ − a_k [Z_l,Z_m]₋` for the three cyclic triples.
    pub anti: [FreeElt; 3],
}

/// The six linear factors whose vanishing makes the rescaling degenerate.
fn special_factors(lam: &[ParamScalar; 4]) -> Vec<(String, ParamScalar)> {
    vec![
        ("lambda0+lambda1".into(), &lam[0] + &lam[1]),
        ("lambda0+lambda2".into(), &lam[0] + &lam[2]),
        ("lambda0+lambda3".into(), &lam[0] + &lam[3]),
        ("lambda2-lambda1".into(), &lam[2] - &lam[1]),
        ("lambda1-lambda3".into(), &lam[1] - &lam[3]),
        ("lambda3-lambda2".into(), &lam[3] - &lam[2]),
    ]
}

/// Rescale the presentation through Z_μ = ρ_μ z_μ.
///
/// The scale factors are fixed through their squares,
///   ρ_0² = (λ_0+λ_1)(λ_0+λ_2)(λ_0+λ_3),
///   ρ_k² = (λ_0+λ_k)(λ_l−λ_k)(λ_k−λ_m)   (cyclic (k,l,m)),
/// and the pairwise products are pinned down by the convention
/// ρ_0ρ_1ρ_2ρ_3 = Π_k (λ_0+λ_k)(λ_m−λ_l), which makes the identity
/// ρ_0ρ_k(λ_m−λ_l) = ρ_mρ_l(λ_0+λ_k) hold exactly, not just up to sign.
/// That identity is what keeps the rescaled relations rational.
pub fn rescale_sklyanin(
    params: &ModuliParams,
) -> Result<(SklyaninData, SklyaninForm), SphereError> {
    let lam = params.lambdas();
    if params.is_numeric() {
        let vanished: Vec<String> = special_factors(lam)
            .into_iter()
            .filter(|(_, value)| value.is_zero())
            .map(|(name, _)| name)
            .collect();
        if !vanished.is_empty() {
            return Err(SphereError::SpecialCase { factors: vanished });
        }
    }

    let a = [
        &(&lam[1] + &lam[0]) * &(&lam[2] + &lam[3]),
        &(&lam[2] + &lam[0]) * &(&lam[3] + &lam[1]),
        &(&lam[3] + &lam[0]) * &(&lam[1] + &lam[2]),
    ];
    let f = |k: usize| &lam[0] + &lam[k];
    let rho_sq = [
        &(&f(1) * &f(2)) * &f(3),
        &(&f(1) * &(&lam[2] - &lam[1])) * &(&lam[1] - &lam[3]),
        &(&f(2) * &(&lam[3] - &lam[2])) * &(&lam[2] - &lam[1]),
        &(&f(3) * &(&lam[1] - &lam[3])) * &(&lam[3] - &lam[2]),
    ];
    // Π_k (λ_0+λ_k)(λ_m−λ_l) with the cyclic convention.
    let mut total = ParamScalar::one();
    for &(k, l, m) in CYCLIC.iter() {
        total = &total * &(&f(k) * &(&lam[m] - &lam[l]));
    }
    let ctx = RadicalCtx::new(&rho_sq[2] * &rho_sq[3], &rho_sq[1] * &rho_sq[3]);
    let data = SklyaninData {
        a,
        rho_sq,
        total_product: total,
        ctx,
    };

    let ab = Alphabet::scaled_z4();
    let g = |i: usize| FreeElt::gen(ab.clone(), i);
    let wt = |w: &[u8], c: ParamScalar| FreeElt::word_term(ab.clone(), w, c);
    let mut firsts = Vec::with_capacity(3);
    let mut seconds = Vec::with_capacity(3);
    let mut comm = Vec::with_capacity(3);
    let mut anti = Vec::with_capacity(3);
    for &(k, l, m) in CYCLIC.iter() {
        let (k8, l8, m8) = (k as u8, l as u8, m as u8);
        // ρ_0ρ_k / (ρ_lρ_m) = (λ_0+λ_k)/(λ_m−λ_l).
        let ratio = &(&lam[0] + &lam[k]) / &(&lam[m] - &lam[l]);
        let first = &(&wt(&[k8, 0], lam[0].clone()) - &wt(&[0, k8], lam[k].clone()))
            + &(&wt(&[l8, m8], lam[m].clone()) - &wt(&[m8, l8], lam[l].clone())).scale(&ratio);
        let second = &(&wt(&[0, k8], lam[0].clone()) - &wt(&[k8, 0], lam[k].clone()))
            + &(&wt(&[l8, m8], lam[l].clone()) - &wt(&[m8, l8], lam[m].clone())).scale(&ratio);
        firsts.push(first);
        seconds.push(second);
        comm.push(&commutator(&g(0), &g(k)) - &anticommutator(&g(l), &g(m)));
        let am_al = &data.a[m - 1] - &data.a[l - 1];
        let t = &anticommutator(&g(0), &g(k)).scale(&am_al)
            - &commutator(&g(l), &g(m)).scale(&data.a[k - 1]);
        anti.push(t);
    }
    let form = SklyaninForm {
        alphabet: ab,
        rescaled: [
            firsts[0].clone(),
            firsts[1].clone(),
            firsts[2].clone(),
            seconds[0].clone(),
            seconds[1].clone(),
            seconds[2].clone(),
        ],
        comm: [comm[0].clone(), comm[1].clone(), comm[2].clone()],
        anti: [anti[0].clone(), anti[1].clone(), anti[2].clone()],
    };
    Ok((data, form))
}

/// The central elements
/// `Q_k = (a_m − a_l)(Z_0² + Z_k²) + a_k(Z_m² − Z_l²)`, whose sum vanishes
/// identically.
pub fn central_elements(sk: &SklyaninData, alphabet: &Arc<Alphabet>) -> [FreeElt; 3] {
    let sq = |i: usize, c: ParamScalar| {
        FreeElt::word_term(alphabet.clone(), &[i as u8, i as u8], c)
    };
    let mut out = Vec::with_capacity(3);
    for &(k, l, m) in CYCLIC.iter() {
        let am_al = &sk.a[m - 1] - &sk.a[l - 1];
        let q = &(&sq(0, am_al.clone()) + &sq(k, am_al))
            + &(&sq(m, sk.a[k - 1].clone()) - &sq(l, sk.a[k - 1].clone()));
        out.push(q);
    }
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

/// Hermiticity of the rescaled generators.  When the product of the λ is 1,
/// ρ_μ²/λ_μ is a nonzero real rational and its sign decides whether Z_μ can
/// be chosen hermitian (+1) or anti-hermitian (−1); the flag does not depend
/// on the branch chosen for ρ_μ.  The four flags always multiply to −1.
pub fn hermiticity_flags(params: &ModuliParams) -> Result<[i8; 4], SphereError> {
    let pts = params.points().ok_or(SphereError::NeedNumeric)?;
    let product = pts
        .iter()
        .fold(GaussRat::one(), |acc, p| &acc * p.value());
    if !product.is_one() {
        return Err(SphereError::FlagsNotApplicable);
    }
    let at = [
        pts[0].value().clone(),
        pts[1].value().clone(),
        pts[2].value().clone(),
        pts[3].value().clone(),
    ];
    let (data, _) = rescale_sklyanin(params)?;
    let mut flags = [0i8; 4];
    for mu in 0..4 {
        let rho2 = data.rho_sq[mu]
            .eval(&at)
            .expect("numeric parameters evaluate");
        let w = &rho2 * &pts[mu].value().conj();
        assert!(
            w.im.is_zero() && !w.re.is_zero(),
            "rho_mu^2 / lambda_mu must be real and nonzero when the lambda product is 1"
        );
        flags[mu] = if w.re.is_positive() { 1 } else { -1 };
    }
    Ok(flags)
}

/// Named degenerate families, keyed by the multiset structure of the λ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseKind {
    /// Four distinct λ²: smooth elliptic-curve data.
    Generic,
    /// Three distinct λ²: the curve splits into two conics plus a line.
    TwoConics,
    /// λ² grouped 3+1: the variety contains a whole plane.
    Plane,
    /// λ² grouped 2+2 with compatible signs: still a tame pencil.
    Paired,
    /// λ² grouped 2+2 with exactly one opposite-sign pair: the algebra grows
    /// exponentially and the correspondence becomes coarse.
    Coarse,
    /// All λ² equal, odd number of sign flips: only three relations survive.
    ThreeRelations,
    /// All λ² equal, even number of sign flips: the commutative sphere.
    Commutative,
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseKind::Generic => "generic",
            CaseKind::TwoConics => "two-conics",
            CaseKind::Plane => "plane",
            CaseKind::Paired => "paired",
            CaseKind::Coarse => "coarse",
            CaseKind::ThreeRelations => "three-relations",
            CaseKind::Commutative => "commutative",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub kind: CaseKind,
    /// Index groups with equal λ², largest group first, each group sorted.
    pub partition: Vec<Vec<usize>>,
    /// Pairs (i, j), i < j, with λ_i = −λ_j.
    pub opposite_pairs: Vec<(usize, usize)>,
}

pub fn classify_case(points: &[UnitCirclePoint; 4]) -> CaseTag {
    let sq: Vec<GaussRat> = points.iter().map(|p| p.value() * p.value()).collect();
    let mut partition: Vec<Vec<usize>> = Vec::new();
    for i in 0..4 {
        match partition.iter_mut().find(|grp| sq[grp[0]] == sq[i]) {
            Some(grp) => grp.push(i),
            None => partition.push(vec![i]),
        }
    }
    partition.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut opposite_pairs = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let neg = -points[j].value();
            if points[i].value() == &neg {
                opposite_pairs.push((i, j));
            }
        }
    }
    let sizes: Vec<usize> = partition.iter().map(|g| g.len()).collect();
    let kind = match sizes.as_slice() {
        [1, 1, 1, 1] => CaseKind::Generic,
        [2, 1, 1] => CaseKind::TwoConics,
        [3, 1] => CaseKind::Plane,
        [2, 2] => {
            // Within each equal-λ² pair the entries are equal or opposite;
            // exactly one opposite pair is the exponential-growth family.
            let opposite_groups = partition
                .iter()
                .filter(|grp| {
                    let neg = -points[grp[1]].value();
                    points[grp[0]].value() == &neg
                })
                .count();
            if opposite_groups == 1 {
                CaseKind::Coarse
            } else {
                CaseKind::Paired
            }
        }
        [4] => {
            // All λ_μ = ±λ_0; the parity of the sign pattern decides.
            let neg_l0 = -points[0].value();
            let minus = points.iter().filter(|p| p.value() == &neg_l0).count();
            if minus % 2 == 1 {
                CaseKind::ThreeRelations
            } else {
                CaseKind::Commutative
            }
        }
        _ => unreachable!("partition of a 4-element set"),
    };
    CaseTag {
        kind,
        partition,
        opposite_pairs,
    }
}

/// Fundamental-domain region for the normalized parameters, in terms of the
/// circle angles φ_i of λ_i (λ_0 = 1):
///   A: 0 ≤ φ₁ ≤ φ₂ ≤ φ₃ ≤ π,
///   B: φ₁ ≤ φ₂ ≤ π ≤ φ₃ ≤ π + φ₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub points: [UnitCirclePoint; 4],
    pub region: Region,
    pub case: CaseTag,
}

/// Quarter-turn class of a unit-circle value: 0 for angle 0, 1 for the open
/// upper half, 2 for angle π, 3 for the open lower half.
fn half_plane_class(u: &GaussRat) -> u8 {
    if u.im.is_zero() {
        if u.re.is_positive() {
            0
        } else {
            2
        }
    } else if u.im.is_positive() {
        1
    } else {
        3
    }
}

/// The sine of the angle from u to v, up to a positive factor.
fn cross(u: &GaussRat, v: &GaussRat) -> Rat {
    &(&u.re * &v.im) - &(&u.im * &v.re)
}

/// Exact comparison of circle angles in [0, 2π).
fn angle_cmp(u: &GaussRat, v: &GaussRat) -> std::cmp::Ordering {
    let (cu, cv) = (half_plane_class(u), half_plane_class(v));
    if cu != cv {
        return cu.cmp(&cv);
    }
    // Same open half-plane: the cross product orients the pair.
    let x = cross(u, v);
    if x.is_zero() {
        std::cmp::Ordering::Equal
    } else if x.is_positive() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

fn angle_le(u: &GaussRat, v: &GaussRat) -> bool {
    angle_cmp(u, v) != std::cmp::Ordering::Greater
}

fn region_of(w: &[GaussRat; 3]) -> Option<Region> {
    let sorted = angle_le(&w[0], &w[1]) && angle_le(&w[1], &w[2]);
    if !sorted {
        return None;
    }
    if half_plane_class(&w[2]) <= 2 {
        return Some(Region::A);
    }
    // φ₂ ≤ π ≤ φ₃, and φ₃ ≤ π + φ₁ means Im(λ₃/λ₁) ≥ 0.
    let ratio = &w[2] * &w[0].conj();
    if half_plane_class(&w[1]) <= 2 && !ratio.im.is_negative() {
        Some(Region::B)
    } else {
        None
    }
}

/// Key used to pick the canonical representative deterministically.
fn candidate_key(region: Region, w: &[GaussRat; 3]) -> (u8, Vec<Rat>) {
    let tag = match region {
        Region::A => 0u8,
        Region::B => 1u8,
    };
    let mut key = Vec::with_capacity(6);
    for x in w.iter() {
        key.push(x.re.clone());
        key.push(x.im.clone());
    }
    (tag, key)
}

/// Normalize the parameters: divide by a global phase so λ_0 = 1, then pick
/// the index order putting the representative in region A (preferred) or B,
/// breaking ties lexicographically on the coordinates.  The result depends
/// only on the orbit under common phase and permutation, and normalizing a
/// normalized tuple returns it unchanged.
pub fn normalize_moduli(points: &[UnitCirclePoint; 4]) -> Normalized {
    const PERMS: [[usize; 4]; 24] = [
        [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
        [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
        [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
        [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
    ];
    let mut best: Option<((u8, Vec<Rat>), [UnitCirclePoint; 4], Region)> = None;
    for perm in PERMS.iter() {
        let phase_inv = points[perm[0]].inv();
        let cand = [
            points[perm[0]].mul(&phase_inv),
            points[perm[1]].mul(&phase_inv),
            points[perm[2]].mul(&phase_inv),
            points[perm[3]].mul(&phase_inv),
        ];
        let w = [
            cand[1].value().clone(),
            cand[2].value().clone(),
            cand[3].value().clone(),
        ];
        if let Some(region) = region_of(&w) {
            let key = candidate_key(region, &w);
            let better = match &best {
                None => true,
                Some((bk, _, _)) => key < *bk,
            };
            if better {
                best = Some((key, cand, region));
            }
        }
    }
    let (_, cand, region) =
        best.expect("every unit-circle quadruple admits a fundamental-domain arrangement");
    let case = classify_case(&cand);
    Normalized {
        points: cand,
        region,
        case,
    }
}

/// Sign twist composed with an index permutation:
/// λ'_μ = (−1)^{flip(π(μ))} λ_{π(μ)}.  Even flip sets come from the plain
/// automorphism that changes the sign of two generators; odd sets arise only
/// from crossed-product twists and must be requested explicitly.
pub fn twist(
    params: &ModuliParams,
    flips: &[usize],
    perm: &[usize; 4],
    allow_odd: bool,
) -> Result<ModuliParams, SphereError> {
    if flips.len() % 2 == 1 && !allow_odd {
        return Err(SphereError::OddTwist);
    }
    let flip = |mu: usize| flips.contains(&mu);
    match params.points() {
        Some(pts) => {
            let get = |mu: usize| {
                let p = pts[perm[mu]].clone();
                if flip(perm[mu]) {
                    p.neg()
                } else {
                    p
                }
            };
            Ok(ModuliParams::from_points([get(0), get(1), get(2), get(3)]))
        }
        None => {
            let lam = params.lambdas();
            let get = |mu: usize| {
                if flip(perm[mu]) {
                    -&lam[perm[mu]]
                } else {
                    lam[perm[mu]].clone()
                }
            };
            Ok(ModuliParams {
                lam: [get(0), get(1), get(2), get(3)],
                numeric: None,
            })
        }
    }
}

/// Parity of a low-dimensional sphere datum: odd spheres are presented by a
/// unitary, even spheres by a self-adjoint matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// A low-dimensional sphere presentation that the suspension can grow.
#[derive(Clone, Debug)]
pub struct LowDimData {
    pub sphere_dim: u32,
    pub parity: Parity,
    pub alphabet: Arc<Alphabet>,
    /// U (odd) or s (even).
    pub mat: MatFree,
    /// Adjoint action on the letters.
    pub star_map: Vec<(usize, ParamScalar)>,
    /// Defining relations carried along (each suspension keeps the old ones;
    /// the new generator is central by alphabet normalization).
    pub relations: Vec<FreeElt>,
    /// The quadratic constant: UU* = U*U = C·I, resp. s² = C·I.
    pub c_constant: FreeElt,
}

/// The circle: one unitary generator u with u* a second letter and relations
/// u u* = u* u = 1.
pub fn circle_data() -> LowDimData {
    let ab = Alphabet::new(vec!["u", "u*"]);
    let star_map = vec![(1, ParamScalar::one()), (0, ParamScalar::one())];
    let u = FreeElt::gen(ab.clone(), 0);
    let us = FreeElt::gen(ab.clone(), 1);
    let one = FreeElt::one(ab.clone());
    let relations = vec![&(&u * &us) - &one, &(&us * &u) - &one];
    LowDimData {
        sphere_dim: 1,
        parity: Parity::Odd,
        alphabet: ab,
        mat: MatFree::from_rows(vec![vec![u]]),
        star_map,
        relations,
        c_constant: one,
    }
}

/// Suspension: adjoin a central self-adjoint generator x and either double
/// the matrix size (odd input, `s = [[x·I, U], [U*, −x·I]]`) or form
/// `U = x·I + i·s` (even input).  The quadratic constant becomes C + x².
pub fn suspend(d: &LowDimData) -> LowDimData {
    let old = &d.alphabet;
    let n_old = old.len();
    let mut names: Vec<String> = (0..n_old).map(|i| old.name(i).to_string()).collect();
    let mut central: Vec<bool> = (0..n_old).map(|i| old.is_central(i)).collect();
    let fresh = format!("x{}", central.iter().filter(|&&c| c).count());
    names.push(fresh);
    central.push(true);
    let ab = Alphabet::with_central(names, central);

    let extend_map: Vec<(usize, ParamScalar)> =
        (0..n_old).map(|g| (g, ParamScalar::one())).collect();
    let ext = |e: &FreeElt| e.subst_rename(&extend_map, ab.clone());
    let x = FreeElt::gen(ab.clone(), n_old);

    let mut star_map = d.star_map.clone();
    star_map.push((n_old, ParamScalar::one()));

    let relations: Vec<FreeElt> = d.relations.iter().map(&ext).collect();
    let c_constant = &ext(&d.c_constant) + &(&x * &x);

    match d.parity {
        Parity::Odd => {
            let n = d.mat.size();
            let u = d.mat.map(&ext);
            let ustar = d.mat.adjoint(&d.star_map).map(&ext);
            let mut s = MatFree::zero(2 * n, ab.clone());
            for i in 0..n {
                for j in 0..n {
                    *s.at_mut(i, j + n) = u.at(i, j).clone();
                    *s.at_mut(i + n, j) = ustar.at(i, j).clone();
                }
                *s.at_mut(i, i) = x.clone();
                *s.at_mut(i + n, i + n) = -&x;
            }
            LowDimData {
                sphere_dim: d.sphere_dim + 1,
                parity: Parity::Even,
                alphabet: ab,
                mat: s,
                star_map,
                relations,
                c_constant,
            }
        }
        Parity::Even => {
            let s = d.mat.map(&ext);
            let n = s.size();
            let xi = MatFree::scalar(n, &x);
            let u = &xi + &s.map(|e| e.scale(&ParamScalar::i()));
            LowDimData {
                sphere_dim: d.sphere_dim + 1,
                parity: Parity::Odd,
                alphabet: ab,
                mat: u,
                star_map,
                relations,
                c_constant,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{in_span, span_echelon, span_eq};

    fn z_gen(ab: &Arc<Alphabet>, i: usize) -> FreeElt {
        FreeElt::gen(ab.clone(), i)
    }

    /// Hand transcription of the six relations for cross-checking the
    /// Pauli-expansion route.
    fn hand_sextet(params: &ModuliParams, ab: &Arc<Alphabet>) -> [FreeElt; 6] {
        let lam = params.lambdas();
        let wt = |w: &[u8], c: ParamScalar| FreeElt::word_term(ab.clone(), w, c);
        let mut firsts = Vec::new();
        let mut seconds = Vec::new();
        for &(k, l, m) in CYCLIC.iter() {
            let (k8, l8, m8) = (k as u8, l as u8, m as u8);
            firsts.push(
                &(&wt(&[k8, 0], lam[0].clone()) - &wt(&[0, k8], lam[k].clone()))
                    + &(&wt(&[l8, m8], lam[m].clone()) - &wt(&[m8, l8], lam[l].clone())),
            );
            seconds.push(
                &(&wt(&[0, k8], lam[0].clone()) - &wt(&[k8, 0], lam[k].clone()))
                    + &(&wt(&[l8, m8], lam[l].clone()) - &wt(&[m8, l8], lam[m].clone())),
            );
        }
        [
            firsts[0].clone(),
            firsts[1].clone(),
            firsts[2].clone(),
            seconds[0].clone(),
            seconds[1].clone(),
            seconds[2].clone(),
        ]
    }

    fn unit(p: i64, q: i64) -> UnitCirclePoint {
        UnitCirclePoint::from_pythagorean(p, q).unwrap()
    }

    fn generic_sample() -> [UnitCirclePoint; 4] {
        [UnitCirclePoint::one(), unit(2, 1), unit(3, 2), unit(5, 3)]
    }

    #[test]
    fn pauli_expansion_matches_the_hand_written_relations() {
        let params = ModuliParams::symbolic();
        let p = unitarity_relations(&params);
        let expected = hand_sextet(&params, p.alphabet());
        for (got, want) in p.relations().iter().zip(expected.iter()) {
            assert_eq!(got, want);
        }
    }

    #[test]
    fn scalar_component_is_the_weighted_sum_of_squares() {
        let params = ModuliParams::symbolic();
        let p = unitarity_relations(&params);
        let ab = p.alphabet().clone();
        let mut c = FreeElt::zero(ab.clone());
        for mu in 0..4u8 {
            c = &c + &FreeElt::word_term(ab.clone(), &[mu, mu], params.lambda(mu as usize));
        }
        assert_eq!(p.c_element(), &c);
    }

    #[test]
    fn comm_anticomm_form_recombines_the_sextet() {
        let params = ModuliParams::symbolic();
        let p = unitarity_relations(&params);
        let form = comm_anticomm_form(&p);
        for k in 0..3 {
            let sum = &p.relations()[k] + &p.relations()[k + 3];
            let diff = &p.relations()[k] - &p.relations()[k + 3];
            assert_eq!(form.anti[k], -&sum);
            assert_eq!(form.comm[k], -&diff);
        }
        assert!(span_eq(&form.all(), p.relations()));
    }

    #[test]
    fn commutative_point_gives_the_six_commutators() {
        let one = UnitCirclePoint::one();
        let params =
            ModuliParams::from_points([one.clone(), one.clone(), one.clone(), one]);
        let p = unitarity_relations(&params);
        let ab = p.alphabet().clone();
        let mut comms = Vec::new();
        for i in 0..4 {
            for j in (i + 1)..4 {
                comms.push(commutator(&z_gen(&ab, i), &z_gen(&ab, j)));
            }
        }
        assert!(span_eq(p.relations(), &comms));
        assert_eq!(span_echelon(p.relations()).len(), 6);
    }

    #[test]
    fn one_sign_flip_leaves_exactly_three_relations() {
        let one = UnitCirclePoint::one();
        let params = ModuliParams::from_points([
            one.clone(),
            one.clone(),
            one,
            UnitCirclePoint::minus_one(),
        ]);
        let p = unitarity_relations(&params);
        assert_eq!(span_echelon(p.relations()).len(), 3);
        let form = comm_anticomm_form(&p);
        let nonzero = form.all().iter().filter(|r| !r.is_zero()).count();
        assert_eq!(nonzero, 3);
    }

    #[test]
    fn inverting_the_parameters_swaps_the_two_relation_families() {
        let params = ModuliParams::symbolic();
        let inv = params.star();
        let p = unitarity_relations(&params);
        let q = unitarity_relations(&inv);
        // z_0 -> −λ_0 z_0, z_i -> λ_i z_i carries the inverted-parameter
        // relations onto the original ones, exchanging the two triples.
        let lam = params.lambdas();
        let factors = vec![-&lam[0], lam[1].clone(), lam[2].clone(), lam[3].clone()];
        for k in 0..3 {
            assert_eq!(
                q.relations()[k].subst_diagonal(&factors),
                p.relations()[k + 3]
            );
            assert_eq!(
                q.relations()[k + 3].subst_diagonal(&factors),
                p.relations()[k]
            );
        }
    }

    #[test]
    fn flipping_two_generator_signs_preserves_the_relation_span() {
        let params = ModuliParams::from_points(generic_sample());
        let p = unitarity_relations(&params);
        let one = ParamScalar::one();
        for (i, j) in [(0usize, 1usize), (1, 2), (0, 3)] {
            let mut factors = vec![one.clone(); 4];
            factors[i] = -&one;
            factors[j] = -&one;
            let flipped: Vec<FreeElt> = p
                .relations()
                .iter()
                .map(|r| r.subst_diagonal(&factors))
                .collect();
            assert!(span_eq(&flipped, p.relations()));
        }
    }

    #[test]
    fn rescaling_parameters_match_their_product_formulas() {
        let params = ModuliParams::symbolic();
        let (data, _) = rescale_sklyanin(&params).unwrap();
        let lam = params.lambdas();
        for &(k, l, m) in CYCLIC.iter() {
            let want = &(&lam[k] + &lam[0]) * &(&lam[l] + &lam[m]);
            assert_eq!(data.a[k - 1], want);
        }
        // Squared consistency: ρ_0²ρ_k²(λ_m−λ_l)² = ρ_m²ρ_l²(λ_0+λ_k)².
        for &(k, l, m) in CYCLIC.iter() {
            let dm = &lam[m] - &lam[l];
            let pk = &lam[0] + &lam[k];
            let lhs = &(&data.rho_sq[0] * &data.rho_sq[k]) * &(&dm * &dm);
            let rhs = &(&data.rho_sq[m] * &data.rho_sq[l]) * &(&pk * &pk);
            assert_eq!(lhs, rhs);
        }
        // The product of the four squares is the square of the fixed total.
        let prod =
            &(&data.rho_sq[0] * &data.rho_sq[1]) * &(&data.rho_sq[2] * &data.rho_sq[3]);
        assert_eq!(prod, &data.total_product * &data.total_product);
    }

    #[test]
    fn pair_products_square_and_multiply_consistently() {
        let params = ModuliParams::symbolic();
        let (data, _) = rescale_sklyanin(&params).unwrap();
        let ctx = data.radical_ctx().clone();
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let p = data.pair_product(mu, nu);
                let sq = ctx.square(&p);
                let want = RadicalScalar::from_scalar(&data.rho_sq[mu] * &data.rho_sq[nu]);
                assert!(sq.sub(&want).is_zero(), "square of rho_{mu} rho_{nu}");
            }
        }
        // Complementary pairs multiply to the fixed total product.
        for (p1, p2) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
            let prod = ctx.mul(
                &data.pair_product(p1.0, p1.1),
                &data.pair_product(p2.0, p2.1),
            );
            let want = RadicalScalar::from_scalar(data.total_product.clone());
            assert!(prod.sub(&want).is_zero());
        }
        // ρ_0ρ_k(λ_m−λ_l) = ρ_mρ_l(λ_0+λ_k) holds exactly in the extension.
        let lam = params.lambdas();
        for &(k, l, m) in CYCLIC.iter() {
            let lhs = data.pair_product(0, k).scale(&(&lam[m] - &lam[l]));
            let rhs = data.pair_product(l, m).scale(&(&lam[0] + &lam[k]));
            assert!(lhs.sub(&rhs).is_zero());
        }
    }

    #[test]
    fn rescaled_relations_recombine_into_the_homogeneous_parameter_form() {
        let params = ModuliParams::symbolic();
        let (data, form) = rescale_sklyanin(&params).unwrap();
        let lam = params.lambdas();
        for (idx, &(k, l, m)) in CYCLIC.iter().enumerate() {
            let sum = &form.rescaled[idx] + &form.rescaled[idx + 3];
            let diff = &form.rescaled[idx] - &form.rescaled[idx + 3];
            // (a_m−a_l)[Z_0,Z_k]₊ − a_k[Z_l,Z_m]₋ = −(λ_m−λ_l)·(first+second).
            let scaled = sum.scale(&(&lam[m] - &lam[l]));
            assert_eq!(form.anti[idx], -&scaled);
            // [Z_0,Z_k]₋ − [Z_l,Z_m]₊ = −(first−second)/(λ_0+λ_k).
            let inv = &ParamScalar::one() / &(&lam[0] + &lam[k]);
            let scaled = diff.scale(&inv);
            assert_eq!(form.comm[idx], -&scaled);
            // a_m − a_l collapses to (λ_k−λ_0)(λ_m−λ_l).
            let am_al = &data.a[m - 1] - &data.a[l - 1];
            let want = &(&lam[k] - &lam[0]) * &(&lam[m] - &lam[l]);
            assert_eq!(am_al, want);
        }
    }

    #[test]
    fn equal_parameters_are_rejected_with_the_vanishing_factors() {
        let one = UnitCirclePoint::one();
        let params =
            ModuliParams::from_points([one.clone(), one.clone(), one.clone(), one]);
        match rescale_sklyanin(&params) {
            Err(SphereError::SpecialCase { factors }) => {
                assert!(factors.contains(&"lambda2-lambda1".to_string()));
                assert_eq!(factors.len(), 3);
            }
            other => panic!("expected a degenerate-parameter error, got {other:?}"),
        }
    }

    #[test]
    fn central_elements_sum_to_zero() {
        let params = ModuliParams::symbolic();
        let (data, form) = rescale_sklyanin(&params).unwrap();
        let q = central_elements(&data, &form.alphabet);
        let sum = &(&q[0] + &q[1]) + &q[2];
        assert!(sum.is_zero());
    }

    #[test]
    fn equal_homogeneous_parameters_reduce_the_central_elements() {
        // With all a_k = 4 the differences vanish: Q_k = 4(Z_m² − Z_l²).
        let ab = Alphabet::scaled_z4();
        let four = ParamScalar::from_int(4);
        let data = SklyaninData {
            a: [four.clone(), four.clone(), four.clone()],
            rho_sq: [
                ParamScalar::one(),
                ParamScalar::one(),
                ParamScalar::one(),
                ParamScalar::one(),
            ],
            total_product: ParamScalar::one(),
            ctx: RadicalCtx::new(ParamScalar::one(), ParamScalar::one()),
        };
        let q = central_elements(&data, &ab);
        for (idx, &(_, l, m)) in CYCLIC.iter().enumerate() {
            let want = &FreeElt::word_term(ab.clone(), &[m as u8, m as u8], four.clone())
                - &FreeElt::word_term(ab.clone(), &[l as u8, l as u8], four.clone());
            assert_eq!(q[idx], want);
        }
    }

    #[test]
    fn hermiticity_flags_need_unit_parameter_product() {
        let params = ModuliParams::from_points(generic_sample());
        assert!(matches!(
            hermiticity_flags(&params),
            Err(SphereError::FlagsNotApplicable)
        ));
    }

    #[test]
    fn hermiticity_flags_multiply_to_minus_one() {
        // λ = (1, u, v, (uv)⁻¹) has product exactly 1.
        let u = unit(2, 1);
        let v = unit(3, 2);
        let uv = u.mul(&v);
        let params = ModuliParams::from_points([UnitCirclePoint::one(), u, v, uv.inv()]);
        let flags = hermiticity_flags(&params).unwrap();
        for f in flags.iter() {
            assert!(*f == 1 || *f == -1);
        }
        let product: i32 = flags.iter().map(|&f| f as i32).product();
        assert_eq!(product, -1);
    }

    #[test]
    fn classifier_recognizes_the_named_families() {
        let one = UnitCirclePoint::one();
        let m1 = UnitCirclePoint::minus_one();
        let u = unit(2, 1);
        let v = unit(3, 2);
        let tag = classify_case(&[one.clone(), one.clone(), one.clone(), one.clone()]);
        assert_eq!(tag.kind, CaseKind::Commutative);
        let tag = classify_case(&[one.clone(), one.clone(), one.clone(), m1.clone()]);
        assert_eq!(tag.kind, CaseKind::ThreeRelations);
        let tag = classify_case(&[one.clone(), u.clone(), u.clone(), m1.clone()]);
        assert_eq!(tag.kind, CaseKind::Coarse);
        let tag = classify_case(&[one.clone(), u.clone(), u.clone(), v.clone()]);
        assert_eq!(tag.kind, CaseKind::TwoConics);
        let tag = classify_case(&[one.clone(), u.clone(), u.clone(), u.clone()]);
        assert_eq!(tag.kind, CaseKind::Plane);
        let tag = classify_case(&[one.clone(), one.clone(), u.clone(), u.clone()]);
        assert_eq!(tag.kind, CaseKind::Paired);
        let tag = classify_case(&[one.clone(), u.clone(), v.clone(), unit(5, 3)]);
        assert_eq!(tag.kind, CaseKind::Generic);
        // Two opposite-sign pairs still belong to the tame 2+2 family.
        let tag = classify_case(&[one.clone(), m1, u.clone(), u.neg()]);
        assert_eq!(tag.kind, CaseKind::Paired);
    }

    #[test]
    fn normalization_removes_a_common_phase() {
        let phase = unit(2, 1);
        let one = UnitCirclePoint::one();
        let scaled = [phase.clone(), phase.clone(), phase.clone(), phase];
        let norm = normalize_moduli(&scaled);
        for p in norm.points.iter() {
            assert_eq!(p.value(), one.value());
        }
        assert_eq!(norm.case.kind, CaseKind::Commutative);
        assert_eq!(norm.region, Region::A);
    }

    #[test]
    fn normalization_is_idempotent_and_orbit_constant() {
        let sample = generic_sample();
        let norm = normalize_moduli(&sample);
        let again = normalize_moduli(&norm.points);
        for (p, q) in norm.points.iter().zip(again.points.iter()) {
            assert_eq!(p.value(), q.value());
        }
        // A permuted and re-phased input lands on the same representative.
        let phase = unit(4, 1);
        let shuffled = [
            sample[2].mul(&phase),
            sample[0].mul(&phase),
            sample[3].mul(&phase),
            sample[1].mul(&phase),
        ];
        let other = normalize_moduli(&shuffled);
        for (p, q) in norm.points.iter().zip(other.points.iter()) {
            assert_eq!(p.value(), q.value());
        }
    }

    #[test]
    fn normalized_representatives_satisfy_the_angle_constraints() {
        let samples: Vec<[UnitCirclePoint; 4]> = vec![
            generic_sample(),
            [unit(1, 2), unit(1, 3), unit(2, 5), unit(1, 7)],
            [unit(3, 1), unit(5, 1), unit(7, 1), unit(9, 1)],
        ];
        for sample in samples {
            let norm = normalize_moduli(&sample);
            let w: Vec<&GaussRat> = norm.points[1..].iter().map(|p| p.value()).collect();
            assert!(angle_le(w[0], w[1]) && angle_le(w[1], w[2]));
            match norm.region {
                Region::A => assert!(half_plane_class(w[2]) <= 2),
                Region::B => {
                    assert!(half_plane_class(w[1]) <= 2);
                    assert!(half_plane_class(w[2]) >= 2);
                    let r = w[2] * &w[0].conj();
                    assert!(!r.im.is_negative());
                }
            }
        }
    }

    #[test]
    fn twists_require_even_sign_sets_and_compose_to_identity() {
        let params = ModuliParams::from_points(generic_sample());
        assert!(matches!(
            twist(&params, &[1], &[0, 1, 2, 3], false),
            Err(SphereError::OddTwist)
        ));
        let t = twist(&params, &[1, 2], &[0, 1, 2, 3], false).unwrap();
        let back = twist(&t, &[1, 2], &[0, 1, 2, 3], false).unwrap();
        assert_eq!(back, params);
        // Classification is twist-invariant.
        let tag = classify_case(params.points().unwrap());
        let tag2 = classify_case(t.points().unwrap());
        assert_eq!(tag.kind, tag2.kind);
    }

    #[test]
    fn suspension_grows_the_circle_into_the_expected_tower() {
        let circle = circle_data();
        let s2 = suspend(&circle);
        assert_eq!(s2.sphere_dim, 2);
        assert_eq!(s2.parity, Parity::Even);
        assert!(s2.mat.trace().is_zero());
        // s is self-adjoint.
        assert_eq!(s2.mat.adjoint(&s2.star_map), s2.mat);
        // s² − C'·I has entries inside the span of the carried relations.
        let sq = &s2.mat * &s2.mat;
        let want = MatFree::scalar(s2.mat.size(), &s2.c_constant);
        let diff = &sq - &want;
        for i in 0..diff.size() {
            for j in 0..diff.size() {
                assert!(in_span(diff.at(i, j), &s2.relations));
            }
        }

        let s3 = suspend(&s2);
        assert_eq!(s3.sphere_dim, 3);
        assert_eq!(s3.parity, Parity::Odd);
        let u = &s3.mat;
        let ustar = u.adjoint(&s3.star_map);
        let want = MatFree::scalar(u.size(), &s3.c_constant);
        for prod in [&(u * &ustar), &(&ustar * u)] {
            let diff = prod - &want;
            for i in 0..diff.size() {
                for j in 0..diff.size() {
                    assert!(in_span(diff.at(i, j), &s3.relations));
                }
            }
        }
    }

    #[test]
    fn suspension_constant_stacks_the_central_squares() {
        let s3 = suspend(&suspend(&circle_data()));
        // C'' = 1 + x0² + x1².
        assert_eq!(s3.c_constant.num_terms(), 3);
        for (w, c) in s3.c_constant.terms() {
            if !w.is_empty() {
                assert_eq!(w.len(), 2);
                assert_eq!(w[0], w[1]);
                assert!(s3.alphabet.is_central(w[0] as usize));
            }
            assert!(c.as_constant().unwrap().is_one());
        }
    }
}
