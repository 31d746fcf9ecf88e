//! Arithmetic in a biquadratic extension of the parameter field.
//!
//! Some quantities of the theory are not rational in the moduli: products
//! of pairs of rescaling factors, and the coordinates of the nontrivial
//! special points, are square roots of parameter-field elements. Both cases
//! need exactly two independent radicals, so elements are stored on the
//! basis {1, t1, t2, t1*t2} over the parameter field, with the squares of
//! t1 and t2 fixed by the context.

use crate::laurent::ParamScalar;
use crate::scalar::GaussRat;

#[derive(Debug, Clone)]
pub struct RadicalCtx {
    pub t1_sq: ParamScalar,
    pub t2_sq: ParamScalar,
}

/// c[0] + c[1] t1 + c[2] t2 + c[3] t1 t2.
#[derive(Debug, Clone, PartialEq)]
pub struct RadicalScalar {
    pub c: [ParamScalar; 4],
}

impl RadicalScalar {
    pub fn zero() -> Self {
        RadicalScalar {
            c: [
                ParamScalar::zero(),
                ParamScalar::zero(),
                ParamScalar::zero(),
                ParamScalar::zero(),
            ],
        }
    }

    pub fn from_scalar(s: ParamScalar) -> Self {
        let mut out = RadicalScalar::zero();
        out.c[0] = s;
        out
    }

    pub fn t1() -> Self {
        let mut out = RadicalScalar::zero();
        out.c[1] = ParamScalar::one();
        out
    }

    pub fn t2() -> Self {
        let mut out = RadicalScalar::zero();
        out.c[2] = ParamScalar::one();
        out
    }

    pub fn t1_t2() -> Self {
        let mut out = RadicalScalar::zero();
        out.c[3] = ParamScalar::one();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        RadicalScalar {
            c: [
                &self.c[0] + &other.c[0],
                &self.c[1] + &other.c[1],
                &self.c[2] + &other.c[2],
                &self.c[3] + &other.c[3],
            ],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RadicalScalar {
            c: [
                &self.c[0] - &other.c[0],
                &self.c[1] - &other.c[1],
                &self.c[2] - &other.c[2],
                &self.c[3] - &other.c[3],
            ],
        }
    }

    pub fn neg(&self) -> Self {
        RadicalScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }

    pub fn scale(&self, s: &ParamScalar) -> Self {
        RadicalScalar {
            c: [
                &self.c[0] * s,
                &self.c[1] * s,
                &self.c[2] * s,
                &self.c[3] * s,
            ],
        }
    }
}

impl RadicalCtx {
    pub fn new(t1_sq: ParamScalar, t2_sq: ParamScalar) -> Self {
        RadicalCtx { t1_sq, t2_sq }
    }

    pub fn mul(&self, a: &RadicalScalar, b: &RadicalScalar) -> RadicalScalar {
        let s = &self.t1_sq;
        let r = &self.t2_sq;
        let sr = s * r;
        let (a0, a1, a2, a3) = (&a.c[0], &a.c[1], &a.c[2], &a.c[3]);
        let (b0, b1, b2, b3) = (&b.c[0], &b.c[1], &b.c[2], &b.c[3]);
        RadicalScalar {
            c: [
                &(&(a0 * b0) + &(&(a1 * b1) * s)) + &(&(&(a2 * b2) * r) + &(&(a3 * b3) * &sr)),
                &(&(a0 * b1) + &(a1 * b0)) + &(&(&(a2 * b3) + &(a3 * b2)) * r),
                &(&(a0 * b2) + &(a2 * b0)) + &(&(&(a1 * b3) + &(a3 * b1)) * s),
                &(&(a0 * b3) + &(a3 * b0)) + &(&(a1 * b2) + &(a2 * b1)),
            ],
        }
    }

    pub fn square(&self, a: &RadicalScalar) -> RadicalScalar {
        self.mul(a, a)
    }

    /// At a numeric evaluation point, certify that {1, t1, t2, t1 t2} is a
    /// basis: the squares of t1, t2 and t1 t2 must all be non-squares in
    /// Q(i). When this holds, `is_zero` on components decides zero in the
    /// extension field.
    pub fn independence_certified(&self, at: &[GaussRat; 4]) -> bool {
        let s = match self.t1_sq.eval(at) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let r = match self.t2_sq.eval(at) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let sr = &s * &r;
        !s.is_zero()
            && !r.is_zero()
            && s.sqrt().is_none()
            && r.sqrt().is_none()
            && sr.sqrt().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::scalar::UnitCirclePoint;

    #[test]
    fn radical_squares_hit_the_context_values() {
        let ctx = RadicalCtx::new(
            ParamScalar::lambda(0),
            ParamScalar::new(
                &LaurentPoly::lambda(1) + &LaurentPoly::lambda(2),
                LaurentPoly::one(),
            )
            .unwrap(),
        );
        let t1 = RadicalScalar::t1();
        let t2 = RadicalScalar::t2();
        assert_eq!(ctx.square(&t1), RadicalScalar::from_scalar(ctx.t1_sq.clone()));
        assert_eq!(ctx.square(&t2), RadicalScalar::from_scalar(ctx.t2_sq.clone()));
        let t1t2 = ctx.mul(&t1, &t2);
        assert_eq!(t1t2, RadicalScalar::t1_t2());
        let sq = ctx.square(&t1t2);
        assert_eq!(
            sq,
            RadicalScalar::from_scalar(&ctx.t1_sq * &ctx.t2_sq)
        );
    }

    #[test]
    fn multiplication_is_commutative_and_distributes() {
        let ctx = RadicalCtx::new(ParamScalar::from_int(2), ParamScalar::lambda(3));
        let a = RadicalScalar {
            c: [
                ParamScalar::from_int(1),
                ParamScalar::lambda(0),
                ParamScalar::from_int(-2),
                ParamScalar::i(),
            ],
        };
        let b = RadicalScalar {
            c: [
                ParamScalar::lambda(1),
                ParamScalar::from_int(3),
                ParamScalar::zero(),
                ParamScalar::from_int(1),
            ],
        };
        let ab = ctx.mul(&a, &b);
        let ba = ctx.mul(&b, &a);
        assert_eq!(ab, ba);
        let c = RadicalScalar::t1();
        let lhs = ctx.mul(&a, &b.add(&c));
        let rhs = ctx.mul(&a, &b).add(&ctx.mul(&a, &c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn independence_certificate_at_a_generic_point() {
        // t1^2 = 2, t2^2 = 3: both non-squares in Q(i), as is 6.
        let ctx = RadicalCtx::new(ParamScalar::from_int(2), ParamScalar::from_int(3));
        let u = UnitCirclePoint::from_pythagorean(2, 1).unwrap().into_value();
        let at = [GaussRat::one(), u.clone(), u.conj(), GaussRat::one()];
        assert!(ctx.independence_certified(&at));
        // t^2 = 4 is a square: certificate must fail.
        let bad = RadicalCtx::new(ParamScalar::from_int(4), ParamScalar::from_int(3));
        assert!(!bad.independence_certified(&at));
        // t1^2 = 2, t2^2 = 8: each non-square but the product 16 is one.
        let subtle = RadicalCtx::new(ParamScalar::from_int(2), ParamScalar::from_int(8));
        assert!(!subtle.independence_certified(&at));
    }
}
