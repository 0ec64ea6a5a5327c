//! Rank-2 lattices in the ambient rational plane.
//!
//! A lattice is stored as a positive rational scale times an integer matrix
//! in column Hermite normal form with unit content, so two lattices are equal
//! as point sets exactly when their stored forms are identical. Columns are
//! coordinates in the frame `{1, ω}`.

use crate::exact::{AmbientTag, ExactError, QuadElement, Rational};
use crate::zmat::{column_hnf, Hnf2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("generators do not span a rank-2 lattice")]
    RankDeficient,
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("first lattice is not a sublattice of the second")]
    NotASublattice,
    #[error("points belong to different lattices")]
    LatticeMismatch,
}

/// A rank-2 lattice, canonicalized. Equality is structural and coincides
/// with equality of the underlying point sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: AmbientTag,
    scale: Rational,
    h: Hnf2,
}

impl Lattice {
    /// Canonicalize two independent vectors into a lattice.
    pub fn from_basis(
        ambient: AmbientTag,
        v1: &QuadElement,
        v2: &QuadElement,
    ) -> Result<Lattice, LatticeError> {
        Lattice::from_generators(ambient, &[v1.clone(), v2.clone()])
    }

    /// Canonicalize any finite generating set spanning rank 2.
    pub fn from_generators(
        ambient: AmbientTag,
        gens: &[QuadElement],
    ) -> Result<Lattice, LatticeError> {
        for g in gens {
            if *g.ambient() != ambient {
                return Err(LatticeError::AmbientMismatch(
                    ambient.to_string(),
                    g.ambient().to_string(),
                ));
            }
        }
        // Clear denominators across every coordinate, then reduce to HNF.
        let mut f = BigInt::one();
        for g in gens {
            f = f.lcm(g.a().denom()).lcm(g.b().denom());
        }
        let cols: Vec<[BigInt; 2]> = gens
            .iter()
            .map(|g| {
                let x = (g.a() * Rational::from(f.clone())).to_integer();
                let y = (g.b() * Rational::from(f.clone())).to_integer();
                [x, y]
            })
            .collect();
        let h = column_hnf(&cols).ok_or(LatticeError::RankDeficient)?;
        let g = h.a.gcd(&h.b).gcd(&h.d);
        let h = Hnf2 {
            a: &h.a / &g,
            b: &h.b / &g,
            d: &h.d / &g,
        };
        Ok(Lattice {
            ambient,
            scale: Rational::new(g, f),
            h,
        })
    }

    pub fn ambient(&self) -> &AmbientTag {
        &self.ambient
    }

    /// The canonical basis vectors `(scale·a, 0)` and `(scale·b, scale·d)`.
    pub fn basis(&self) -> [QuadElement; 2] {
        let s = &self.scale;
        [
            QuadElement::new(
                self.ambient.clone(),
                s * Rational::from(self.h.a.clone()),
                Rational::zero(),
            ),
            QuadElement::new(
                self.ambient.clone(),
                s * Rational::from(self.h.b.clone()),
                s * Rational::from(self.h.d.clone()),
            ),
        ]
    }

    /// Positive covolume |det| of the basis matrix.
    pub fn det(&self) -> Rational {
        &(&self.scale * &self.scale) * Rational::from(&self.h.a * &self.h.d)
    }

    /// Exact coordinates of `v` with respect to the canonical basis.
    pub fn coords_of(&self, v: &QuadElement) -> Result<(Rational, Rational), LatticeError> {
        if *v.ambient() != self.ambient {
            return Err(LatticeError::AmbientMismatch(
                self.ambient.to_string(),
                v.ambient().to_string(),
            ));
        }
        let a = Rational::from(self.h.a.clone());
        let b = Rational::from(self.h.b.clone());
        let d = Rational::from(self.h.d.clone());
        let c2 = v.b() / (&self.scale * &d);
        let c1 = (v.a() / &self.scale - &b * &c2) / &a;
        Ok((c1, c2))
    }

    /// Membership in the ℤ-span of the basis.
    pub fn contains(&self, v: &QuadElement) -> Result<bool, LatticeError> {
        let (c1, c2) = self.coords_of(v)?;
        Ok(c1.is_integer() && c2.is_integer())
    }

    /// Index of `self` inside `sup`; errors unless `self ⊆ sup`.
    pub fn index_in(&self, sup: &Lattice) -> Result<u64, LatticeError> {
        if self.ambient != sup.ambient {
            return Err(LatticeError::AmbientMismatch(
                self.ambient.to_string(),
                sup.ambient.to_string(),
            ));
        }
        for v in self.basis() {
            if !sup.contains(&v)? {
                return Err(LatticeError::NotASublattice);
            }
        }
        let ratio = self.det() / sup.det();
        debug_assert!(ratio.is_integer());
        Ok(ratio
            .to_integer()
            .to_u64()
            .expect("lattice index exceeds u64"))
    }

    /// The class of an ambient vector modulo this lattice.
    pub fn reduce_point(&self, v: &QuadElement) -> Result<TorsionPoint, LatticeError> {
        let (c1, c2) = self.coords_of(v)?;
        Ok(TorsionPoint::new(self.clone(), c1, c2))
    }

    /// All n² points of order dividing `n`, in lexicographic coordinate order.
    pub fn torsion_points(&self, n: u64) -> Vec<TorsionPoint> {
        let n_rat = Rational::from(BigInt::from(n));
        let mut pts = Vec::with_capacity((n * n) as usize);
        for i in 0..n {
            for j in 0..n {
                pts.push(TorsionPoint::new(
                    self.clone(),
                    Rational::from(BigInt::from(i)) / &n_rat,
                    Rational::from(BigInt::from(j)) / &n_rat,
                ));
            }
        }
        pts
    }

    /// Basis matrix columns as rational pairs, for matrix arithmetic.
    fn basis_matrix(&self) -> RatMat2 {
        let [v1, v2] = self.basis();
        RatMat2 {
            m: [
                [v1.a().clone(), v2.a().clone()],
                [v1.b().clone(), v2.b().clone()],
            ],
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [v1, v2] = self.basis();
        write!(f, "<{v1}, {v2}>")
    }
}

/// A point of finite order on the torus `ambient / lattice`, stored as
/// reduced coordinates in `[0, 1)` with respect to the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    lattice: Lattice,
    coords: (Rational, Rational),
}

fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

impl TorsionPoint {
    pub fn new(lattice: Lattice, c1: Rational, c2: Rational) -> TorsionPoint {
        TorsionPoint {
            lattice,
            coords: (frac(&c1), frac(&c2)),
        }
    }

    pub fn zero(lattice: Lattice) -> TorsionPoint {
        TorsionPoint::new(lattice, Rational::zero(), Rational::zero())
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &(Rational, Rational) {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.0.is_zero() && self.coords.1.is_zero()
    }

    /// Least n ≥ 1 with n·p in the lattice: the lcm of the coordinate
    /// denominators.
    pub fn order(&self) -> u64 {
        self.coords
            .0
            .denom()
            .lcm(self.coords.1.denom())
            .to_u64()
            .expect("torsion order exceeds u64")
    }

    pub fn add(&self, other: &TorsionPoint) -> Result<TorsionPoint, LatticeError> {
        if self.lattice != other.lattice {
            return Err(LatticeError::LatticeMismatch);
        }
        Ok(TorsionPoint::new(
            self.lattice.clone(),
            &self.coords.0 + &other.coords.0,
            &self.coords.1 + &other.coords.1,
        ))
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint::new(
            self.lattice.clone(),
            -self.coords.0.clone(),
            -self.coords.1.clone(),
        )
    }

    pub fn mul(&self, n: i64) -> TorsionPoint {
        let n = Rational::from(BigInt::from(n));
        TorsionPoint::new(
            self.lattice.clone(),
            &self.coords.0 * &n,
            &self.coords.1 * &n,
        )
    }

    /// The canonical lift `c1·v1 + c2·v2` as an ambient element.
    pub fn lift(&self) -> QuadElement {
        let [v1, v2] = self.lattice.basis();
        v1.scale(&self.coords.0)
            .add(&v2.scale(&self.coords.1))
            .expect("basis vectors share the lattice ambient")
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            crate::exact::rational_string(&self.coords.0),
            crate::exact::rational_string(&self.coords.1)
        )
    }
}

/// Result of a colon-lattice computation: a rank-2 multiplier lattice in a
/// quadratic ambient, or the positive generator of a rational ideal in a
/// formal ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColonResult {
    Lattice(Lattice),
    FormalIdeal(Rational),
}

/// The multiplier ring of a lattice: an order in a quadratic ambient, or ℤ
/// in a formal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplierRing {
    Order(Lattice),
    Integers,
}

/// The quotient ideal `(Λ_A : Λ_B) = {ζ : ζ·Λ_B ⊆ Λ_A}`.
///
/// In a quadratic ambient this is the intersection of the two solution
/// lattices `M_b⁻¹(Λ_A)` for the basis vectors `b` of `Λ_B`, where `M_b` is
/// the multiplication-by-`b` matrix. In a formal ambient only rational
/// multipliers exist and the result is a cyclic group `c·ℤ`.
pub fn colon_lattice(lat_a: &Lattice, lat_b: &Lattice) -> Result<ColonResult, LatticeError> {
    if lat_a.ambient != lat_b.ambient {
        return Err(LatticeError::AmbientMismatch(
            lat_a.ambient.to_string(),
            lat_b.ambient.to_string(),
        ));
    }
    match &lat_a.ambient {
        AmbientTag::Quadratic { d } => {
            let a_mat = lat_a.basis_matrix();
            let [b1, b2] = lat_b.basis();
            let sol1 = multiplier_solution_lattice(&lat_a.ambient, *d, &b1, &a_mat)?;
            let sol2 = multiplier_solution_lattice(&lat_a.ambient, *d, &b2, &a_mat)?;
            Ok(ColonResult::Lattice(intersect(&sol1, &sol2)?))
        }
        AmbientTag::Formal { .. } => {
            let mut gen: Option<Rational> = None;
            for b in lat_b.basis() {
                let (u1, u2) = lat_a.coords_of(&b)?;
                for u in [u1, u2] {
                    if u.is_zero() {
                        continue;
                    }
                    // {t : t·u ∈ ℤ} = (den(u)/|num(u)|)·ℤ
                    let c = Rational::new(u.denom().clone(), u.numer().abs());
                    gen = Some(match gen {
                        None => c,
                        Some(g) => rational_lcm(&g, &c),
                    });
                }
            }
            Ok(ColonResult::FormalIdeal(
                gen.expect("lattice basis vectors are nonzero"),
            ))
        }
    }
}

/// `colon_lattice(Λ, Λ)`, packaged as a ring.
pub fn multiplier_ring(lat: &Lattice) -> Result<MultiplierRing, LatticeError> {
    match colon_lattice(lat, lat)? {
        ColonResult::Lattice(order) => Ok(MultiplierRing::Order(order)),
        ColonResult::FormalIdeal(gen) => {
            debug_assert!(gen.is_one());
            Ok(MultiplierRing::Integers)
        }
    }
}

/// Solutions `ζ` of `ζ·b ∈ Λ_A` as a lattice in multiplier coordinates.
fn multiplier_solution_lattice(
    ambient: &AmbientTag,
    d: u64,
    b: &QuadElement,
    a_mat: &RatMat2,
) -> Result<Lattice, LatticeError> {
    // Multiplication by b = p + qω sends (x, y) to (px − dqy, qx + py).
    let p = b.a().clone();
    let q = b.b().clone();
    let m = RatMat2 {
        m: [
            [p.clone(), -(Rational::from(BigInt::from(d)) * &q)],
            [q, p],
        ],
    };
    let basis = m.inverse().ok_or(LatticeError::RankDeficient)?.mul(a_mat);
    lattice_from_matrix(ambient.clone(), &basis)
}

fn lattice_from_matrix(ambient: AmbientTag, m: &RatMat2) -> Result<Lattice, LatticeError> {
    let v1 = QuadElement::new(ambient.clone(), m.m[0][0].clone(), m.m[1][0].clone());
    let v2 = QuadElement::new(ambient.clone(), m.m[0][1].clone(), m.m[1][1].clone());
    Lattice::from_basis(ambient, &v1, &v2)
}

/// Intersection of two rank-2 lattices, via duality: the dual of a sum is
/// the intersection of the duals.
pub fn intersect(l1: &Lattice, l2: &Lattice) -> Result<Lattice, LatticeError> {
    if l1.ambient != l2.ambient {
        return Err(LatticeError::AmbientMismatch(
            l1.ambient.to_string(),
            l2.ambient.to_string(),
        ));
    }
    let d1 = l1.basis_matrix().inverse().ok_or(LatticeError::RankDeficient)?.transpose();
    let d2 = l2.basis_matrix().inverse().ok_or(LatticeError::RankDeficient)?.transpose();
    let gens: Vec<QuadElement> = [&d1, &d2]
        .iter()
        .flat_map(|m| {
            [
                QuadElement::new(l1.ambient.clone(), m.m[0][0].clone(), m.m[1][0].clone()),
                QuadElement::new(l1.ambient.clone(), m.m[0][1].clone(), m.m[1][1].clone()),
            ]
        })
        .collect();
    let dual_sum = Lattice::from_generators(l1.ambient.clone(), &gens)?;
    let back = dual_sum
        .basis_matrix()
        .inverse()
        .ok_or(LatticeError::RankDeficient)?
        .transpose();
    lattice_from_matrix(l1.ambient.clone(), &back)
}

fn rational_lcm(x: &Rational, y: &Rational) -> Rational {
    Rational::new(x.numer().lcm(y.numer()), x.denom().gcd(y.denom()))
}

/// Minimal exact 2×2 matrix arithmetic used by the colon computation.
struct RatMat2 {
    m: [[Rational; 2]; 2],
}

impl RatMat2 {
    fn det(&self) -> Rational {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    fn inverse(&self) -> Option<RatMat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let inv = det.recip();
        Some(RatMat2 {
            m: [
                [&self.m[1][1] * &inv, -(&self.m[0][1] * &inv)],
                [-(&self.m[1][0] * &inv), &self.m[0][0] * &inv],
            ],
        })
    }

    fn transpose(&self) -> RatMat2 {
        RatMat2 {
            m: [
                [self.m[0][0].clone(), self.m[1][0].clone()],
                [self.m[0][1].clone(), self.m[1][1].clone()],
            ],
        }
    }

    fn mul(&self, other: &RatMat2) -> RatMat2 {
        let mut out = [
            [Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &(&self.m[i][0] * &other.m[0][j]) + &(&self.m[i][1] * &other.m[1][j]);
            }
        }
        RatMat2 { m: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(d: u64) -> AmbientTag {
        AmbientTag::quadratic(d).unwrap()
    }

    fn formal() -> AmbientTag {
        AmbientTag::formal("t")
    }

    fn el(amb: &AmbientTag, a: (i64, i64), b: (i64, i64)) -> QuadElement {
        QuadElement::new(
            amb.clone(),
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
        )
    }

    fn lat(amb: &AmbientTag, v1: ((i64, i64), (i64, i64)), v2: ((i64, i64), (i64, i64))) -> Lattice {
        Lattice::from_basis(amb.clone(), &el(amb, v1.0, v1.1), &el(amb, v2.0, v2.1)).unwrap()
    }

    fn unit(n: i64) -> (i64, i64) {
        (n, 1)
    }

    /// ⟨1, ω⟩
    fn std_lat(d: u64) -> Lattice {
        lat(&q(d), (unit(1), unit(0)), (unit(0), unit(1)))
    }

    #[test]
    fn hnf_preserves_span() {
        // {2+2w, 4w} over d=1
        let amb = q(1);
        let g1 = el(&amb, unit(2), unit(2));
        let g2 = el(&amb, unit(0), unit(4));
        let canon = Lattice::from_basis(amb.clone(), &g1, &g2).unwrap();
        assert!(canon.contains(&g1).unwrap());
        assert!(canon.contains(&g2).unwrap());
        for v in canon.basis() {
            let inputs = Lattice::from_basis(amb.clone(), &g1, &g2).unwrap();
            assert!(inputs.contains(&v).unwrap());
        }
        // and it is not the span of {2, 2w}
        let two_two_omega = lat(&amb, (unit(2), unit(0)), (unit(0), unit(2)));
        assert_ne!(canon, two_two_omega);
    }

    #[test]
    fn hnf_identity_fixed_point() {
        let l = std_lat(1);
        let [v1, v2] = l.basis();
        assert_eq!(v1, el(&q(1), unit(1), unit(0)));
        assert_eq!(v2, el(&q(1), unit(0), unit(1)));
    }

    #[test]
    fn hnf_variants_collapse() {
        let amb = q(1);
        let reference = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let variants = [
            lat(&amb, (unit(0), unit(2)), (unit(1), unit(0))),
            lat(&amb, (unit(-1), unit(0)), (unit(0), unit(2))),
            lat(&amb, (unit(1), unit(0)), (unit(1), unit(2))),
            lat(&amb, (unit(1), unit(2)), (unit(1), unit(0))),
        ];
        for v in variants {
            assert_eq!(v, reference);
        }
    }

    #[test]
    fn rank_deficient_rejected() {
        let amb = q(1);
        let r = Lattice::from_basis(amb.clone(), &el(&amb, unit(1), unit(2)), &el(&amb, unit(2), unit(4)));
        assert!(matches!(r, Err(LatticeError::RankDeficient)));
    }

    #[test]
    fn contains_examples() {
        let amb = q(1);
        let l = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        assert!(l.contains(&el(&amb, unit(0), unit(2))).unwrap());
        assert!(!l.contains(&el(&amb, unit(0), unit(1))).unwrap());

        // ⟨1, (1+w)/2⟩ over d=3 contains w = 2·(1+w)/2 − 1
        let amb3 = q(3);
        let half = lat(&amb3, (unit(1), unit(0)), ((1, 2), (1, 2)));
        assert!(half.contains(&el(&amb3, unit(0), unit(1))).unwrap());

        assert!(matches!(
            l.contains(&el(&amb3, unit(1), unit(0))),
            Err(LatticeError::AmbientMismatch(..))
        ));
    }

    #[test]
    fn index_examples() {
        let amb = q(1);
        let sub = lat(&amb, (unit(2), unit(0)), (unit(0), unit(2)));
        let sup = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        assert_eq!(sub.index_in(&sup).unwrap(), 2);
        assert_eq!(sup.index_in(&sup).unwrap(), 1);

        // formal: ⟨1, t⟩ inside ⟨1/2, t⟩ is the degree-2 quotient overlattice
        let f = formal();
        let b = lat(&f, (unit(1), unit(0)), (unit(0), unit(1)));
        let a = lat(&f, ((1, 2), unit(0)), (unit(0), unit(1)));
        assert_eq!(b.index_in(&a).unwrap(), 2);

        assert!(matches!(sup.index_in(&sub), Err(LatticeError::NotASublattice)));
    }

    #[test]
    fn index_matches_coset_enumeration() {
        let amb = q(1);
        let sub = lat(&amb, (unit(2), unit(0)), (unit(0), unit(2)));
        let sup = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let claimed = sub.index_in(&sup).unwrap();
        // enumerate residues of sup modulo sub by brute force
        let mut seen = std::collections::HashSet::new();
        let [w1, w2] = sup.basis();
        for i in 0..12i64 {
            for j in 0..12i64 {
                let v = w1
                    .scale(&Rational::from(BigInt::from(i)))
                    .add(&w2.scale(&Rational::from(BigInt::from(j))))
                    .unwrap();
                let class = sub.reduce_point(&v).unwrap();
                seen.insert(class.coords().clone());
            }
        }
        assert_eq!(seen.len() as u64, claimed);
    }

    #[test]
    fn index_is_multiplicative_along_chains() {
        let amb = q(1);
        let l3 = std_lat(1);
        let l2 = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let l1 = lat(&amb, (unit(2), unit(0)), (unit(0), unit(4)));
        let i13 = l1.index_in(&l3).unwrap();
        let i12 = l1.index_in(&l2).unwrap();
        let i23 = l2.index_in(&l3).unwrap();
        assert_eq!(i13, i12 * i23);

        let amb3 = q(3);
        let m3 = lat(&amb3, (unit(1), unit(0)), ((1, 2), (1, 2)));
        let m2 = std_lat(3);
        let m1 = lat(&amb3, (unit(3), unit(0)), (unit(0), unit(3)));
        assert_eq!(
            m1.index_in(&m3).unwrap(),
            m1.index_in(&m2).unwrap() * m2.index_in(&m3).unwrap()
        );
    }

    #[test]
    fn colon_hom_lattice_of_gaussian_pair() {
        // (⟨1,2w⟩ : ⟨1,w⟩) = ⟨2,2w⟩ over d=1
        let amb = q(1);
        let a = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let b = std_lat(1);
        let expected = lat(&amb, (unit(2), unit(0)), (unit(0), unit(2)));
        match colon_lattice(&a, &b).unwrap() {
            ColonResult::Lattice(l) => assert_eq!(l, expected),
            _ => panic!("expected a lattice"),
        }
    }

    #[test]
    fn colon_of_maximal_order_is_itself() {
        let amb = q(3);
        let max = lat(&amb, (unit(1), unit(0)), ((1, 2), (1, 2)));
        match colon_lattice(&max, &max).unwrap() {
            ColonResult::Lattice(l) => assert_eq!(l, max),
            _ => panic!("expected a lattice"),
        }
    }

    #[test]
    fn colon_formal_ideal_generator() {
        let f = formal();
        let a = lat(&f, ((1, 2), unit(0)), (unit(0), unit(1)));
        let b = lat(&f, (unit(1), unit(0)), (unit(0), unit(1)));
        match colon_lattice(&a, &b).unwrap() {
            ColonResult::FormalIdeal(g) => assert!(g.is_one()),
            _ => panic!("expected an ideal"),
        }
        // brute-force oracle: every q = p/r with p, r ≤ 8 lands in the ideal
        // exactly when it is an integer
        for p in 1..=8i64 {
            for r in 1..=8i64 {
                let qr = Rational::new(p.into(), r.into());
                let maps_in = b.basis().iter().all(|v| {
                    a.contains(&v.scale(&qr)).unwrap()
                });
                assert_eq!(maps_in, qr.is_integer(), "q = {p}/{r}");
            }
        }
        // reverse direction has generator 2
        match colon_lattice(&b, &a).unwrap() {
            ColonResult::FormalIdeal(g) => {
                assert_eq!(g, Rational::from(BigInt::from(2)))
            }
            _ => panic!("expected an ideal"),
        }
    }

    #[test]
    fn multiplier_ring_examples() {
        // ⟨1, w⟩ over d=1 is its own multiplier ring
        match multiplier_ring(&std_lat(1)).unwrap() {
            MultiplierRing::Order(o) => assert_eq!(o, std_lat(1)),
            _ => panic!(),
        }
        // ⟨1, 2w⟩ is the conductor-2 order
        let amb = q(1);
        let cond2 = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        match multiplier_ring(&cond2).unwrap() {
            MultiplierRing::Order(o) => assert_eq!(o, cond2),
            _ => panic!(),
        }
        // formal lattices only admit integer multipliers
        let f = formal();
        let t_lat = lat(&f, (unit(1), unit(0)), (unit(0), unit(1)));
        assert_eq!(multiplier_ring(&t_lat).unwrap(), MultiplierRing::Integers);
    }

    #[test]
    fn multiplier_ring_brute_force_agrees() {
        let amb = q(1);
        let cond2 = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let order = match multiplier_ring(&cond2).unwrap() {
            MultiplierRing::Order(o) => o,
            _ => unreachable!(),
        };
        for p in -6..=6i64 {
            for qq in -6..=6i64 {
                for r in 1..=4i64 {
                    let z = QuadElement::new(
                        amb.clone(),
                        Rational::new(p.into(), r.into()),
                        Rational::new(qq.into(), r.into()),
                    );
                    let is_multiplier = cond2
                        .basis()
                        .iter()
                        .all(|v| cond2.contains(&z.mul(v).unwrap()).unwrap());
                    assert_eq!(order.contains(&z).unwrap(), is_multiplier, "{z}");
                }
            }
        }
    }

    #[test]
    fn colon_result_is_a_ring_when_endomorphisms() {
        for l in [
            std_lat(1),
            lat(&q(1), (unit(1), unit(0)), (unit(0), unit(2))),
            lat(&q(3), (unit(1), unit(0)), ((1, 2), (1, 2))),
            lat(&q(2), (unit(1), unit(0)), (unit(0), unit(3))),
        ] {
            let order = match multiplier_ring(&l).unwrap() {
                MultiplierRing::Order(o) => o,
                _ => unreachable!(),
            };
            assert!(order.contains(&QuadElement::one(l.ambient().clone())).unwrap());
            let [x, y] = order.basis();
            for prod in [
                x.mul(&x).unwrap(),
                x.mul(&y).unwrap(),
                y.mul(&y).unwrap(),
            ] {
                assert!(order.contains(&prod).unwrap());
            }
        }
    }

    #[test]
    fn colon_is_maximal_against_random_outsiders() {
        let amb = q(1);
        let a = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let b = std_lat(1);
        let colon = match colon_lattice(&a, &b).unwrap() {
            ColonResult::Lattice(l) => l,
            _ => unreachable!(),
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let p: i64 = rng.gen_range(-10..=10);
            let qq: i64 = rng.gen_range(-10..=10);
            let r: i64 = rng.gen_range(1..=10);
            let z = QuadElement::new(
                amb.clone(),
                Rational::new(p.into(), r.into()),
                Rational::new(qq.into(), r.into()),
            );
            if colon.contains(&z).unwrap() {
                continue;
            }
            tested += 1;
            let escapes = b.basis().iter().any(|v| !a.contains(&z.mul(v).unwrap()).unwrap());
            assert!(escapes, "{z} is outside the colon lattice yet maps B into A");
        }
    }

    #[test]
    fn torsion_point_counts() {
        let l = std_lat(1);
        assert_eq!(l.torsion_points(1).len(), 1);
        assert!(l.torsion_points(1)[0].is_zero());
        assert_eq!(l.torsion_points(2).len(), 4);
        let three = l.torsion_points(3);
        assert_eq!(three.len(), 9);
        assert_eq!(three.iter().filter(|p| p.order() == 3).count(), 8);
    }

    #[test]
    fn point_order_examples() {
        let l = std_lat(1);
        let p = |c1: (i64, i64), c2: (i64, i64)| {
            TorsionPoint::new(
                l.clone(),
                Rational::new(c1.0.into(), c1.1.into()),
                Rational::new(c2.0.into(), c2.1.into()),
            )
        };
        assert_eq!(p((0, 1), (0, 1)).order(), 1);
        assert_eq!(p((1, 2), (1, 2)).order(), 2);
        assert_eq!(p((1, 4), (1, 2)).order(), 4);
    }

    #[test]
    fn torsion_points_form_the_expected_group() {
        for n in 1..=6u64 {
            let l = lat(&q(3), (unit(1), unit(0)), ((1, 2), (1, 2)));
            let pts = l.torsion_points(n);
            assert_eq!(pts.len() as u64, n * n);
            // addition is coordinatewise mod 1 and orders match (Z/n)^2
            for (i, p) in pts.iter().enumerate() {
                let (i1, i2) = (i as u64 / n, i as u64 % n);
                let g = i1.gcd(&i2).gcd(&n);
                assert_eq!(p.order(), n / g);
                for (j, r) in pts.iter().enumerate() {
                    let (j1, j2) = (j as u64 / n, j as u64 % n);
                    let sum = p.add(r).unwrap();
                    let expected = &pts[(((i1 + j1) % n) * n + (i2 + j2) % n) as usize];
                    assert_eq!(&sum, expected);
                }
            }
        }
    }

    #[test]
    fn reduce_point_and_lift_round_trip() {
        let amb = q(1);
        let l = lat(&amb, (unit(1), unit(0)), (unit(0), unit(2)));
        let v = el(&amb, (5, 2), (7, 3));
        let p = l.reduce_point(&v).unwrap();
        let diff = v.sub(&p.lift()).unwrap();
        assert!(l.contains(&diff).unwrap());
    }

    #[test]
    fn point_addition_requires_shared_lattice() {
        let p = TorsionPoint::zero(std_lat(1));
        let r = TorsionPoint::zero(std_lat(3));
        assert!(matches!(p.add(&r), Err(LatticeError::LatticeMismatch)));
    }
}
