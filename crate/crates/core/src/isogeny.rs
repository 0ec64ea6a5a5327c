//! Elliptic curves as lattices and isogenies as multipliers.
//!
//! An isogeny `B → A` is a nonzero `ζ` with `ζ·Λ_B ⊆ Λ_A`; its degree is the
//! index of the image lattice. The dual carries the multiplier `deg/ζ`, the
//! unique one composing with `ζ` to multiplication by the degree, and it is
//! what realizes pullback of degree-zero line bundles under the usual
//! identification of a curve with its dual: the pullback of the bundle
//! attached to a point `x` is the bundle attached to `dual(φ)(x)`.

use crate::exact::{AmbientTag, ExactError, QuadElement, Rational};
use crate::lattice::{
    colon_lattice, multiplier_ring, ColonResult, Lattice, LatticeError, MultiplierRing,
    TorsionPoint,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsogenyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("multiplier is zero")]
    ZeroMultiplier,
    #[error("multiplier does not map the source lattice into the target lattice")]
    NotAMultiplier,
    #[error("point does not lie on the expected curve")]
    CurveMismatch,
    #[error("the hom module is zero")]
    ZeroModule,
    #[error("no generating isogeny found within the search bound")]
    NoGeneratorFound,
    #[error("cannot quotient by the zero point")]
    ZeroPoint,
    #[error("curve carries no special automorphism")]
    NoSpecialAutomorphism,
}

/// Which extra automorphisms the curve carries, via its endomorphism order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialJ {
    /// End = ℤ[i]: the order-4 automorphism.
    J1728,
    /// End = ℤ[(1+√−3)/2]: the order-3 automorphism.
    J0,
    /// Complex multiplication by some other quadratic order.
    OtherCm,
    /// Formal ambient; only integer multipliers.
    NoCm,
}

/// An elliptic curve presented by its period lattice, with the endomorphism
/// ring and special-automorphism class cached at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    lattice: Lattice,
    end_ring: MultiplierRing,
    special: SpecialJ,
}

impl EllipticCurve {
    pub fn new(lattice: Lattice) -> Result<EllipticCurve, IsogenyError> {
        let end_ring = multiplier_ring(&lattice)?;
        let special = match &end_ring {
            MultiplierRing::Integers => SpecialJ::NoCm,
            MultiplierRing::Order(order) => {
                let ambient = lattice.ambient().clone();
                if order == &gaussian_order(&ambient)? {
                    SpecialJ::J1728
                } else if order == &eisenstein_order(&ambient)? {
                    SpecialJ::J0
                } else {
                    SpecialJ::OtherCm
                }
            }
        };
        Ok(EllipticCurve {
            lattice,
            end_ring,
            special,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ambient(&self) -> &AmbientTag {
        self.lattice.ambient()
    }

    pub fn endomorphism_ring(&self) -> &MultiplierRing {
        &self.end_ring
    }

    pub fn special(&self) -> SpecialJ {
        self.special
    }

    pub fn torsion_points(&self, n: u64) -> Vec<TorsionPoint> {
        self.lattice.torsion_points(n)
    }

    pub fn zero_point(&self) -> TorsionPoint {
        TorsionPoint::zero(self.lattice.clone())
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{} over {}", self.lattice, self.ambient())
    }
}

/// Ambient comparison target for J1728: ℤ[i] when d = 1.
fn gaussian_order(ambient: &AmbientTag) -> Result<Lattice, IsogenyError> {
    if ambient.d() != Some(1) {
        // distinct placeholder lattice that never matches an order
        return Ok(never_matching(ambient)?);
    }
    Ok(Lattice::from_basis(
        ambient.clone(),
        &QuadElement::one(ambient.clone()),
        &QuadElement::omega(ambient.clone()),
    )?)
}

/// Ambient comparison target for J0: ℤ[(1+√−3)/2] when d = 3.
fn eisenstein_order(ambient: &AmbientTag) -> Result<Lattice, IsogenyError> {
    if ambient.d() != Some(3) {
        return Ok(never_matching(ambient)?);
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Ok(Lattice::from_basis(
        ambient.clone(),
        &QuadElement::one(ambient.clone()),
        &QuadElement::new(ambient.clone(), half.clone(), half),
    )?)
}

fn never_matching(ambient: &AmbientTag) -> Result<Lattice, LatticeError> {
    let big = Rational::from(BigInt::from(1 << 20));
    Lattice::from_basis(
        ambient.clone(),
        &QuadElement::from_rational(ambient.clone(), big.clone()),
        &QuadElement::omega(ambient.clone()).scale(&big),
    )
}

/// The distinguished automorphism of a J1728 or J0 curve: multiplication by
/// `i`, or by `(−1+√−3)/2`, an order-3 unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialAutomorphism {
    curve: EllipticCurve,
    multiplier: QuadElement,
}

impl SpecialAutomorphism {
    pub fn of(curve: &EllipticCurve) -> Result<SpecialAutomorphism, IsogenyError> {
        let ambient = curve.ambient().clone();
        let multiplier = match curve.special() {
            SpecialJ::J1728 => QuadElement::omega(ambient),
            SpecialJ::J0 => {
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                QuadElement::new(ambient, -half.clone(), half)
            }
            _ => return Err(IsogenyError::NoSpecialAutomorphism),
        };
        Ok(SpecialAutomorphism {
            curve: curve.clone(),
            multiplier,
        })
    }

    pub fn multiplier(&self) -> &QuadElement {
        &self.multiplier
    }

    pub fn as_isogeny(&self) -> Isogeny {
        Isogeny::new(self.curve.clone(), self.curve.clone(), self.multiplier.clone())
            .expect("unit multipliers are endomorphisms")
    }
}

/// An isogeny `φ_ζ : source → target` with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isogeny {
    source: EllipticCurve,
    target: EllipticCurve,
    multiplier: QuadElement,
    degree: u64,
}

impl Isogeny {
    pub fn new(
        source: EllipticCurve,
        target: EllipticCurve,
        multiplier: QuadElement,
    ) -> Result<Isogeny, IsogenyError> {
        if multiplier.is_zero() {
            return Err(IsogenyError::ZeroMultiplier);
        }
        let image = image_lattice(source.lattice(), &multiplier)?;
        for v in image.basis() {
            if !target.lattice().contains(&v)? {
                return Err(IsogenyError::NotAMultiplier);
            }
        }
        let degree = image.index_in(target.lattice())?;
        Ok(Isogeny {
            source,
            target,
            multiplier,
            degree,
        })
    }

    pub fn identity(curve: &EllipticCurve) -> Isogeny {
        Isogeny::new(
            curve.clone(),
            curve.clone(),
            QuadElement::one(curve.ambient().clone()),
        )
        .expect("identity is always an isogeny")
    }

    pub fn source(&self) -> &EllipticCurve {
        &self.source
    }

    pub fn target(&self) -> &EllipticCurve {
        &self.target
    }

    pub fn multiplier(&self) -> &QuadElement {
        &self.multiplier
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// The dual isogeny, with multiplier `deg/ζ`.
    pub fn dual(&self) -> Isogeny {
        let deg = QuadElement::from_int(self.multiplier.ambient().clone(), self.degree as i64);
        let inv = self
            .multiplier
            .inv()
            .expect("isogeny multipliers are invertible");
        let dual_mult = deg.mul(&inv).expect("same ambient");
        Isogeny::new(self.target.clone(), self.source.clone(), dual_mult)
            .expect("n·Λ_target lands in ζ·Λ_source")
    }

    /// `self ∘ inner`, defined when `inner` lands on `self`'s source.
    pub fn compose(&self, inner: &Isogeny) -> Result<Isogeny, IsogenyError> {
        if inner.target != self.source {
            return Err(IsogenyError::CurveMismatch);
        }
        let mult = match self.multiplier.mul(&inner.multiplier) {
            Ok(m) => m,
            Err(ExactError::FormalProductUndefined) => return Err(IsogenyError::NotAMultiplier),
            Err(e) => return Err(e.into()),
        };
        Isogeny::new(inner.source.clone(), self.target.clone(), mult)
    }

    /// Pointwise sum of parallel isogenies.
    pub fn add(&self, other: &Isogeny) -> Result<Isogeny, IsogenyError> {
        if self.source != other.source || self.target != other.target {
            return Err(IsogenyError::CurveMismatch);
        }
        let mult = self.multiplier.add(&other.multiplier)?;
        Isogeny::new(self.source.clone(), self.target.clone(), mult)
    }

    /// Image of a torsion point: the class of `ζ·p̃` for any lift `p̃`.
    pub fn apply_point(&self, p: &TorsionPoint) -> Result<TorsionPoint, IsogenyError> {
        if p.lattice() != self.source.lattice() {
            return Err(IsogenyError::CurveMismatch);
        }
        let moved = self.multiplier.mul(&p.lift())?;
        Ok(self.target.lattice().reduce_point(&moved)?)
    }

    /// The point `y` on the source with `φ*P_x ≅ P_y`; the pullback bundle
    /// is trivial exactly when `y` is zero.
    pub fn pic0_pullback_point(&self, x: &TorsionPoint) -> Result<TorsionPoint, IsogenyError> {
        if x.lattice() != self.target.lattice() {
            return Err(IsogenyError::CurveMismatch);
        }
        self.dual().apply_point(x)
    }

    /// All points on the target whose attached bundle pulls back trivially:
    /// exactly `deg` of them, found inside the `deg`-torsion.
    pub fn kernel_of_dual(&self) -> Vec<TorsionPoint> {
        self.target
            .torsion_points(self.degree)
            .into_iter()
            .filter(|x| {
                self.pic0_pullback_point(x)
                    .expect("points come from the target")
                    .is_zero()
            })
            .collect()
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi[{}]: {} -> {} (deg {})",
            self.multiplier,
            self.source.lattice(),
            self.target.lattice(),
            self.degree
        )
    }
}

fn image_lattice(lat: &Lattice, mult: &QuadElement) -> Result<Lattice, IsogenyError> {
    let [v1, v2] = lat.basis();
    let p1 = match mult.mul(&v1) {
        Ok(p) => p,
        Err(ExactError::FormalProductUndefined) => return Err(IsogenyError::NotAMultiplier),
        Err(e) => return Err(e.into()),
    };
    let p2 = match mult.mul(&v2) {
        Ok(p) => p,
        Err(ExactError::FormalProductUndefined) => return Err(IsogenyError::NotAMultiplier),
        Err(e) => return Err(e.into()),
    };
    Ok(Lattice::from_basis(lat.ambient().clone(), &p1, &p2)?)
}

/// Shape of the homomorphism group `Hom(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomKind {
    /// Full multiplier lattice; both curves share a quadratic ambient.
    Rank2(Lattice),
    /// Positive rational generator; shared formal ambient.
    Rank1(Rational),
    /// No nonzero homomorphisms.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomModule {
    source: EllipticCurve,
    target: EllipticCurve,
    kind: HomKind,
}

impl HomModule {
    pub fn source(&self) -> &EllipticCurve {
        &self.source
    }

    pub fn target(&self) -> &EllipticCurve {
        &self.target
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn rank(&self) -> u8 {
        match self.kind {
            HomKind::Rank2(_) => 2,
            HomKind::Rank1(_) => 1,
            HomKind::Zero => 0,
        }
    }

    /// The two basis isogenies of a rank-2 module, in HNF order.
    pub fn basis_isogenies(&self) -> Result<Vec<Isogeny>, IsogenyError> {
        match &self.kind {
            HomKind::Rank2(l) => l
                .basis()
                .iter()
                .map(|m| Isogeny::new(self.source.clone(), self.target.clone(), m.clone()))
                .collect(),
            HomKind::Rank1(c) => Ok(vec![Isogeny::new(
                self.source.clone(),
                self.target.clone(),
                QuadElement::from_rational(self.source.ambient().clone(), c.clone()),
            )?]),
            HomKind::Zero => Err(IsogenyError::ZeroModule),
        }
    }
}

/// `Hom(B, A)` as the colon lattice `(Λ_A : Λ_B)`, classified by rank.
pub fn hom_module(source: &EllipticCurve, target: &EllipticCurve) -> HomModule {
    let kind = if source.ambient() != target.ambient() {
        HomKind::Zero
    } else {
        match colon_lattice(target.lattice(), source.lattice()) {
            Ok(ColonResult::Lattice(l)) => HomKind::Rank2(l),
            Ok(ColonResult::FormalIdeal(c)) => {
                if c.is_zero() {
                    HomKind::Zero
                } else {
                    HomKind::Rank1(c)
                }
            }
            Err(_) => HomKind::Zero,
        }
    };
    HomModule {
        source: source.clone(),
        target: target.clone(),
        kind,
    }
}

/// An isogeny `ψ` with `End(B)·ψ = Hom(B, A)`, when one exists.
///
/// The search enumerates module elements whose norm equals the covolume
/// ratio `det(H)/det(End(B))`; any generator must have exactly that norm,
/// and the enumeration box derived from the positive-definite norm form is
/// complete, so exhausting it proves there is no generator.
pub fn generating_isogeny(h: &HomModule) -> Result<Isogeny, IsogenyError> {
    match &h.kind {
        HomKind::Zero => Err(IsogenyError::ZeroModule),
        HomKind::Rank1(c) => Isogeny::new(
            h.source.clone(),
            h.target.clone(),
            QuadElement::from_rational(h.source.ambient().clone(), c.clone()),
        ),
        HomKind::Rank2(l) => {
            let order = match h.source.endomorphism_ring() {
                MultiplierRing::Order(o) => o.clone(),
                MultiplierRing::Integers => unreachable!("rank 2 forces a quadratic ambient"),
            };
            let module_norm = l.det() / order.det();
            let mut generators: Vec<QuadElement> = norm_form_solutions(l, &module_norm)?
                .into_iter()
                .filter(|candidate| {
                    order_span(&order, candidate)
                        .map(|span| &span == l)
                        .unwrap_or(false)
                })
                .collect();
            generators.sort_by(|x, y| (x.a(), x.b()).cmp(&(y.a(), y.b())));
            let psi = generators.pop().ok_or(IsogenyError::NoGeneratorFound)?;
            Isogeny::new(h.source.clone(), h.target.clone(), psi)
        }
    }
}

/// `O·ψ` as a lattice.
fn order_span(order: &Lattice, psi: &QuadElement) -> Result<Lattice, IsogenyError> {
    let [o1, o2] = order.basis();
    Ok(Lattice::from_basis(
        order.ambient().clone(),
        &psi.mul(&o1)?,
        &psi.mul(&o2)?,
    )?)
}

/// All elements of the lattice with the given field norm. The coefficient
/// box is the exact one cut out by the discriminant of the norm form.
fn norm_form_solutions(l: &Lattice, n: &Rational) -> Result<Vec<QuadElement>, IsogenyError> {
    let [v1, v2] = l.basis();
    let alpha = v1.norm()?;
    let gamma = v2.norm()?;
    let beta = v1
        .mul(&v2.conj()?)?
        .a()
        .clone()
        * Rational::from(BigInt::from(2));
    let four = Rational::from(BigInt::from(4));
    let disc = &(&four * &alpha) * &gamma - &beta * &beta;
    debug_assert!(disc.is_positive());
    let bound = |num: &Rational| -> i64 {
        let q = &(&four * num) * n / &disc;
        (q.ceil().to_integer().sqrt() + BigInt::one())
            .to_i64()
            .expect("norm-form search bound exceeds i64")
    };
    let (bm, bn) = (bound(&gamma), bound(&alpha));
    let mut out = Vec::new();
    for m in -bm..=bm {
        for k in -bn..=bn {
            if m == 0 && k == 0 {
                continue;
            }
            let cand = v1
                .scale(&Rational::from(BigInt::from(m)))
                .add(&v2.scale(&Rational::from(BigInt::from(k))))?;
            if &cand.norm()? == n {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// The units of an order: its elements of norm 1.
pub fn units_of_order(order: &Lattice) -> Result<Vec<QuadElement>, IsogenyError> {
    norm_form_solutions(order, &Rational::one())
}

/// Quotient of a curve by the cyclic subgroup a nonzero torsion point
/// generates: the overlattice spanned by the lattice and a lift, together
/// with the multiplier-1 quotient isogeny.
pub fn quotient_by_cyclic(
    curve: &EllipticCurve,
    theta: &TorsionPoint,
) -> Result<(EllipticCurve, Isogeny), IsogenyError> {
    if theta.is_zero() {
        return Err(IsogenyError::ZeroPoint);
    }
    if theta.lattice() != curve.lattice() {
        return Err(IsogenyError::CurveMismatch);
    }
    let [v1, v2] = curve.lattice().basis();
    let quotient_lattice = Lattice::from_generators(
        curve.ambient().clone(),
        &[v1, v2, theta.lift()],
    )?;
    let quotient = EllipticCurve::new(quotient_lattice)?;
    let map = Isogeny::new(
        curve.clone(),
        quotient.clone(),
        QuadElement::one(curve.ambient().clone()),
    )?;
    Ok((quotient, map))
}
