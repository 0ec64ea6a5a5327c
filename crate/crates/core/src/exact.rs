//! Exact rationals and elements of imaginary quadratic fields.
//!
//! Every number in this crate is either a [`Rational`] or a [`QuadElement`]
//! `a + b·ω`, where `ω = √−d` in a quadratic ambient and `ω = t`, a formal
//! transcendental, in a formal ambient. The formal ambient models a curve
//! without complex multiplication: the only multipliers it admits are
//! rational, so general products of formal elements are rejected rather
//! than approximated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("product of two non-rational elements is undefined in a formal ambient")]
    FormalProductUndefined,
    #[error("conjugation is undefined in a formal ambient")]
    FormalConjugationUndefined,
    #[error("norm is undefined in a formal ambient")]
    FormalNormUndefined,
    #[error("inverse of a non-rational element is undefined in a formal ambient")]
    FormalInverseUndefined,
    #[error("division by zero")]
    DivisionByZero,
    #[error("d must be a squarefree positive integer, got {0}")]
    NotSquarefree(u64),
    #[error("invalid rational string {0:?}")]
    InvalidRational(String),
}

/// The ambient 2-dimensional rational space a number or lattice lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AmbientTag {
    /// ℚ(√−d) with `d` squarefree and positive; `ω = √−d`, so `ω² = −d`.
    Quadratic { d: u64 },
    /// A formal transcendental extension ℚ + ℚ·t; distinct ids never interact.
    Formal { id: String },
}

impl AmbientTag {
    pub fn quadratic(d: u64) -> Result<Self, ExactError> {
        if d == 0 || !is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d));
        }
        Ok(AmbientTag::Quadratic { d })
    }

    pub fn formal(id: impl Into<String>) -> Self {
        AmbientTag::Formal { id: id.into() }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, AmbientTag::Quadratic { .. })
    }

    /// `d` for a quadratic ambient, `None` for formal.
    pub fn d(&self) -> Option<u64> {
        match self {
            AmbientTag::Quadratic { d } => Some(*d),
            AmbientTag::Formal { .. } => None,
        }
    }
}

impl fmt::Display for AmbientTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientTag::Quadratic { d } => write!(f, "quadratic(d={d})"),
            AmbientTag::Formal { id } => write!(f, "formal({id})"),
        }
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An exact number `a + b·ω` in its ambient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    ambient: AmbientTag,
    a: Rational,
    b: Rational,
}

impl QuadElement {
    pub fn new(ambient: AmbientTag, a: Rational, b: Rational) -> Self {
        QuadElement { ambient, a, b }
    }

    pub fn from_rational(ambient: AmbientTag, a: Rational) -> Self {
        QuadElement::new(ambient, a, Rational::zero())
    }

    pub fn from_int(ambient: AmbientTag, n: i64) -> Self {
        QuadElement::from_rational(ambient, Rational::from(BigInt::from(n)))
    }

    pub fn zero(ambient: AmbientTag) -> Self {
        QuadElement::from_int(ambient, 0)
    }

    pub fn one(ambient: AmbientTag) -> Self {
        QuadElement::from_int(ambient, 1)
    }

    /// The generator `ω` itself (√−d, or t in a formal ambient).
    pub fn omega(ambient: AmbientTag) -> Self {
        QuadElement::new(ambient, Rational::zero(), Rational::one())
    }

    pub fn ambient(&self) -> &AmbientTag {
        &self.ambient
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the ω-part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check_ambient(&self, other: &QuadElement) -> Result<(), ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::AmbientMismatch(
                self.ambient.to_string(),
                other.ambient.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadElement) -> Result<QuadElement, ExactError> {
        self.check_ambient(other)?;
        Ok(QuadElement::new(
            self.ambient.clone(),
            &self.a + &other.a,
            &self.b + &other.b,
        ))
    }

    pub fn sub(&self, other: &QuadElement) -> Result<QuadElement, ExactError> {
        self.check_ambient(other)?;
        Ok(QuadElement::new(
            self.ambient.clone(),
            &self.a - &other.a,
            &self.b - &other.b,
        ))
    }

    pub fn neg(&self) -> QuadElement {
        QuadElement::new(self.ambient.clone(), -self.a.clone(), -self.b.clone())
    }

    /// Rational scalar multiple; defined in every ambient.
    pub fn scale(&self, r: &Rational) -> QuadElement {
        QuadElement::new(self.ambient.clone(), &self.a * r, &self.b * r)
    }

    /// Exact product. In a quadratic ambient uses `ω² = −d`; in a formal
    /// ambient at least one factor must be rational.
    pub fn mul(&self, other: &QuadElement) -> Result<QuadElement, ExactError> {
        self.check_ambient(other)?;
        match &self.ambient {
            AmbientTag::Quadratic { d } => {
                let d = Rational::from(BigInt::from(*d));
                let a = &self.a * &other.a - &(&self.b * &other.b) * &d;
                let b = &self.a * &other.b + &self.b * &other.a;
                Ok(QuadElement::new(self.ambient.clone(), a, b))
            }
            AmbientTag::Formal { .. } => {
                if self.is_rational() {
                    Ok(other.scale(&self.a))
                } else if other.is_rational() {
                    Ok(self.scale(&other.a))
                } else {
                    Err(ExactError::FormalProductUndefined)
                }
            }
        }
    }

    /// Galois conjugate `a − b·ω`; quadratic ambients only.
    pub fn conj(&self) -> Result<QuadElement, ExactError> {
        if !self.ambient.is_quadratic() {
            return Err(ExactError::FormalConjugationUndefined);
        }
        Ok(QuadElement::new(
            self.ambient.clone(),
            self.a.clone(),
            -self.b.clone(),
        ))
    }

    /// Field norm `x·conj(x) = a² + d·b²`; quadratic ambients only.
    pub fn norm(&self) -> Result<Rational, ExactError> {
        match &self.ambient {
            AmbientTag::Quadratic { d } => {
                let d = Rational::from(BigInt::from(*d));
                Ok(&self.a * &self.a + &(&self.b * &self.b) * &d)
            }
            AmbientTag::Formal { .. } => Err(ExactError::FormalNormUndefined),
        }
    }

    /// Multiplicative inverse. Quadratic: conj/norm. Formal: only rationals
    /// are invertible.
    pub fn inv(&self) -> Result<QuadElement, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        match &self.ambient {
            AmbientTag::Quadratic { .. } => {
                let n = self.norm()?;
                Ok(self.conj()?.scale(&n.recip()))
            }
            AmbientTag::Formal { .. } => {
                if self.is_rational() {
                    Ok(QuadElement::from_rational(
                        self.ambient.clone(),
                        self.a.recip(),
                    ))
                } else {
                    Err(ExactError::FormalInverseUndefined)
                }
            }
        }
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.ambient.is_quadratic() { "w" } else { "t" };
        if self.b.is_zero() {
            return write!(f, "{}", rational_string(&self.a));
        }
        let omega_mag = |m: &Rational| {
            if m.is_one() {
                sym.to_string()
            } else {
                format!("{}*{sym}", rational_string(m))
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}", omega_mag(&self.b.abs()))
            } else {
                write!(f, "{}", omega_mag(&self.b))
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {}", rational_string(&self.a), omega_mag(&self.b.abs()))
        } else {
            write!(f, "{} + {}", rational_string(&self.a), omega_mag(&self.b))
        }
    }
}

/// Canonical decimal string: "p/q" for non-integers, "p" otherwise.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p" or "p/q"; the denominator must be positive.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::InvalidRational(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d <= BigInt::zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(d: u64) -> AmbientTag {
        AmbientTag::quadratic(d).unwrap()
    }

    fn el(d: u64, a: (i64, i64), b: (i64, i64)) -> QuadElement {
        QuadElement::new(
            q(d),
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn mul_gaussian_conjugate_pair() {
        // (1+w)(1-w) = 2 for d=1
        let x = el(1, (1, 1), (1, 1));
        let y = el(1, (1, 1), (-1, 1));
        assert_eq!(x.mul(&y).unwrap(), el(1, (2, 1), (0, 1)));
    }

    #[test]
    fn mul_cube_root_squares_to_conjugate() {
        // rho = (-1+w)/2 with d=3 satisfies rho^2 = conj(rho)
        let rho = el(3, (-1, 2), (1, 2));
        assert_eq!(rho.mul(&rho).unwrap(), rho.conj().unwrap());
    }

    #[test]
    fn mul_scalar_distributes() {
        let x = el(1, (1, 2), (1, 2));
        let two = QuadElement::from_int(q(1), 2);
        assert_eq!(two.mul(&x).unwrap(), el(1, (1, 1), (1, 1)));
    }

    #[test]
    fn mul_rejects_mixed_ambients() {
        let x = QuadElement::one(q(1));
        let y = QuadElement::one(q(3));
        assert!(matches!(x.mul(&y), Err(ExactError::AmbientMismatch(..))));
        let t = QuadElement::one(AmbientTag::formal("t"));
        assert!(matches!(x.mul(&t), Err(ExactError::AmbientMismatch(..))));
    }

    #[test]
    fn formal_product_needs_a_rational_factor() {
        let amb = AmbientTag::formal("t");
        let t = QuadElement::omega(amb.clone());
        let half = QuadElement::from_rational(amb.clone(), Rational::new(1.into(), 2.into()));
        assert_eq!(
            half.mul(&t).unwrap(),
            QuadElement::new(
                amb.clone(),
                Rational::zero(),
                Rational::new(1.into(), 2.into())
            )
        );
        assert!(matches!(t.mul(&t), Err(ExactError::FormalProductUndefined)));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(el(1, (1, 1), (1, 1)).conj().unwrap(), el(1, (1, 1), (-1, 1)));
        assert_eq!(el(1, (3, 1), (0, 1)).conj().unwrap(), el(1, (3, 1), (0, 1)));
        assert_eq!(
            el(3, (-1, 2), (1, 2)).conj().unwrap(),
            el(3, (-1, 2), (-1, 2))
        );
        let t = QuadElement::omega(AmbientTag::formal("t"));
        assert!(matches!(t.conj(), Err(ExactError::FormalConjugationUndefined)));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(
            el(1, (1, 1), (1, 1)).norm().unwrap(),
            Rational::from(BigInt::from(2))
        );
        assert_eq!(
            el(1, (0, 1), (2, 1)).norm().unwrap(),
            Rational::from(BigInt::from(4))
        );
        // units of the maximal order in Q(sqrt(-3)) have norm 1
        assert_eq!(el(3, (-1, 2), (1, 2)).norm().unwrap(), Rational::one());
        let t = QuadElement::omega(AmbientTag::formal("t"));
        assert!(matches!(t.norm(), Err(ExactError::FormalNormUndefined)));
    }

    #[test]
    fn inv_examples() {
        // 1/(2w) = -(1/2)w for d=1; checked by the product round-trip
        let x = el(1, (0, 1), (2, 1));
        let inv = x.inv().unwrap();
        assert_eq!(inv, el(1, (0, 1), (-1, 2)));
        assert_eq!(x.mul(&inv).unwrap(), QuadElement::one(q(1)));

        assert_eq!(el(1, (1, 1), (1, 1)).inv().unwrap(), el(1, (1, 2), (-1, 2)));

        let amb = AmbientTag::formal("t");
        let half = QuadElement::from_rational(amb.clone(), Rational::new(1.into(), 2.into()));
        assert_eq!(half.inv().unwrap(), QuadElement::from_int(amb.clone(), 2));
        let t = QuadElement::omega(amb.clone());
        assert!(matches!(t.inv(), Err(ExactError::FormalInverseUndefined)));
        assert!(matches!(
            QuadElement::zero(amb).inv(),
            Err(ExactError::DivisionByZero)
        ));
    }

    #[test]
    fn squarefree_validation() {
        assert!(AmbientTag::quadratic(1).is_ok());
        assert!(AmbientTag::quadratic(30).is_ok());
        assert!(matches!(
            AmbientTag::quadratic(0),
            Err(ExactError::NotSquarefree(0))
        ));
        assert!(matches!(
            AmbientTag::quadratic(4),
            Err(ExactError::NotSquarefree(4))
        ));
        assert!(matches!(
            AmbientTag::quadratic(12),
            Err(ExactError::NotSquarefree(12))
        ));
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_string(&r), s);
        }
        assert_eq!(rational_string(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(rational_string(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn arb_element(d: u64) -> impl Strategy<Value = QuadElement> {
        (arb_rational(), arb_rational())
            .prop_map(move |(a, b)| QuadElement::new(AmbientTag::quadratic(d).unwrap(), a, b))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in arb_element(5), y in arb_element(5)) {
            let lhs = x.mul(&y).unwrap().norm().unwrap();
            let rhs = x.norm().unwrap() * y.norm().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn conj_is_involutive_ring_hom(x in arb_element(2), y in arb_element(2)) {
            prop_assert_eq!(x.conj().unwrap().conj().unwrap(), x.clone());
            prop_assert_eq!(
                x.add(&y).unwrap().conj().unwrap(),
                x.conj().unwrap().add(&y.conj().unwrap()).unwrap()
            );
            prop_assert_eq!(
                x.mul(&y).unwrap().conj().unwrap(),
                x.conj().unwrap().mul(&y.conj().unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_round_trips(x in arb_element(7)) {
            prop_assume!(!x.is_zero());
            let one = QuadElement::one(AmbientTag::quadratic(7).unwrap());
            prop_assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), one);
        }

        #[test]
        fn norm_zero_iff_zero(x in arb_element(3)) {
            prop_assert_eq!(x.norm().unwrap().is_zero(), x.is_zero());
            prop_assert!(!x.norm().unwrap().is_negative());
        }
    }
}
