//! Brauer-map classification for the canonical cover and for the
//! intermediate type-1 cover.
//!
//! Every verdict reduces to point-level conditions: an isogeny condition
//! `ψ(θ)` is the image of a torsion point, and a bundle condition `ψ*P_x`
//! is the pullback point computed through the dual isogeny. Composite
//! pullbacks evaluate right to left, so `(1+ω)*ψ*P_x` applies the dual of
//! `ψ` first and the dual of `1+ω` second.

use crate::isogeny::{
    generating_isogeny, hom_module, EllipticCurve, HomModule, Isogeny, IsogenyError,
    SpecialAutomorphism,
};
use crate::lattice::{LatticeError, TorsionPoint};
use crate::surface::{GroupShape, SurfacePoints, ValidatedSurface};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Isogeny(#[from] IsogenyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("intermediate-cover classification applies to types 2 and 3 only")]
    NotApplicable,
    #[error("the two curves are not isogenous")]
    NotIsogenous,
}

/// How the Brauer map to the cover behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Injective,
    Trivial,
    Mixed,
    ZeroGroup,
}

impl MapKind {
    pub fn label(&self) -> &'static str {
        match self {
            MapKind::Injective => "Injective",
            MapKind::Trivial => "Trivial",
            MapKind::Mixed => "Mixed",
            MapKind::ZeroGroup => "ZeroGroup",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One evaluated condition: the point whose vanishing makes it hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub label: String,
    pub evaluated_point: TorsionPoint,
    pub is_trivial: bool,
}

impl ConditionReport {
    fn new(label: impl Into<String>, point: TorsionPoint) -> ConditionReport {
        let is_trivial = point.is_zero();
        ConditionReport {
            label: label.into(),
            evaluated_point: point,
            is_trivial,
        }
    }
}

/// The assembled verdict with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerClassification {
    pub map_kind: MapKind,
    pub kernel_order: u64,
    pub brauer_group: GroupShape,
    pub witnesses: Vec<ConditionReport>,
    /// Which decision rule produced the verdict.
    pub rule: &'static str,
    pub hom_rank: u8,
}

/// The conditions attached to a type-1 surface: one pullback per Hom basis
/// element plus their sum.
pub fn type1_conditions(
    basis: &[Isogeny],
    tau: &TorsionPoint,
) -> Result<Vec<ConditionReport>, ClassifyError> {
    match basis {
        [psi] => Ok(vec![ConditionReport::new(
            "psi*P_tau",
            psi.pic0_pullback_point(tau)?,
        )]),
        [psi1, psi2] => {
            let sum = psi1.add(psi2)?;
            Ok(vec![
                ConditionReport::new("L1 = psi1*P_tau", psi1.pic0_pullback_point(tau)?),
                ConditionReport::new("L2 = psi2*P_tau", psi2.pic0_pullback_point(tau)?),
                ConditionReport::new("L3 = (psi1+psi2)*P_tau", sum.pic0_pullback_point(tau)?),
            ])
        }
        _ => Err(ClassifyError::NotIsogenous),
    }
}

/// The conditions attached to a type-2 surface: images of `theta2` and
/// pullbacks of the bundle at `theta1`, per basis element and their sum.
pub fn type2_conditions(
    basis: &[Isogeny],
    theta1: &TorsionPoint,
    theta2: &TorsionPoint,
) -> Result<Vec<ConditionReport>, ClassifyError> {
    match basis {
        [psi] => Ok(vec![
            ConditionReport::new("psi(theta2)", psi.apply_point(theta2)?),
            ConditionReport::new("psi*P_theta1", psi.pic0_pullback_point(theta1)?),
        ]),
        [psi1, psi2] => {
            let sum = psi1.add(psi2)?;
            Ok(vec![
                ConditionReport::new("psi1(theta2)", psi1.apply_point(theta2)?),
                ConditionReport::new("psi2(theta2)", psi2.apply_point(theta2)?),
                ConditionReport::new("(psi1+psi2)(theta2)", sum.apply_point(theta2)?),
                ConditionReport::new("psi1*P_theta1", psi1.pic0_pullback_point(theta1)?),
                ConditionReport::new("psi2*P_theta1", psi2.pic0_pullback_point(theta1)?),
                ConditionReport::new("(psi1+psi2)*P_theta1", sum.pic0_pullback_point(theta1)?),
            ])
        }
        _ => Err(ClassifyError::NotIsogenous),
    }
}

/// The type-3 condition `(1+omega)*psi*P_{2epsilon}`.
pub fn type3_condition(
    psi: &Isogeny,
    epsilon: &TorsionPoint,
) -> Result<ConditionReport, ClassifyError> {
    let two_epsilon = epsilon.mul(2);
    let pulled = psi.pic0_pullback_point(&two_epsilon)?;
    let b = psi.source();
    let omega = SpecialAutomorphism::of(b)?;
    let one_plus_omega = Isogeny::identity(b).add(&omega.as_isogeny())?;
    let point = one_plus_omega.pic0_pullback_point(&pulled)?;
    Ok(ConditionReport::new("(1+omega)*psi*P_2epsilon", point))
}

/// The type-5 condition `(2rho+1)*psi*P_eta`.
pub fn type5_condition(
    psi: &Isogeny,
    eta: &TorsionPoint,
) -> Result<ConditionReport, ClassifyError> {
    let pulled = psi.pic0_pullback_point(eta)?;
    let b = psi.source();
    let rho = SpecialAutomorphism::of(b)?;
    let two_rho_plus_one = Isogeny::identity(b)
        .add(&rho.as_isogeny())?
        .add(&rho.as_isogeny())?;
    let point = two_rho_plus_one.pic0_pullback_point(&pulled)?;
    Ok(ConditionReport::new("(2rho+1)*psi*P_eta", point))
}

/// Type-1 conditions from the curves alone, using the HNF basis of
/// `Hom(B, A)`.
pub fn evaluate_type1_conditions(
    curve_a: &EllipticCurve,
    curve_b: &EllipticCurve,
    tau: &TorsionPoint,
) -> Result<Vec<ConditionReport>, ClassifyError> {
    let hom = hom_module(curve_b, curve_a);
    if hom.rank() == 0 {
        return Err(ClassifyError::NotIsogenous);
    }
    type1_conditions(&hom.basis_isogenies()?, tau)
}

fn verdict(
    map_kind: MapKind,
    kernel_order: u64,
    surface: &ValidatedSurface,
    witnesses: Vec<ConditionReport>,
    rule: &'static str,
    hom_rank: u8,
) -> BrauerClassification {
    BrauerClassification {
        map_kind,
        kernel_order,
        brauer_group: surface.invariants().brauer_group,
        witnesses,
        rule,
        hom_rank,
    }
}

/// Full verdict for the Brauer map to the canonical cover.
pub fn classify_canonical(
    surface: &ValidatedSurface,
) -> Result<BrauerClassification, ClassifyError> {
    let a = surface.curve_a();
    let b = surface.curve_b();
    let hom = hom_module(b, a);
    let rank = hom.rank();

    // Types with no Brauer group at all.
    if matches!(surface.surface_type(), 4 | 6 | 7) {
        return Ok(verdict(
            MapKind::ZeroGroup,
            1,
            surface,
            Vec::new(),
            "zero-brauer-group",
            rank,
        ));
    }

    // Non-isogenous curves force injectivity regardless of type.
    if rank == 0 {
        return Ok(verdict(
            MapKind::Injective,
            1,
            surface,
            Vec::new(),
            "non-isogenous-curves",
            rank,
        ));
    }

    match (surface.surface_type(), surface.points()) {
        (1, SurfacePoints::Type1 { tau }) => {
            let conds = type1_conditions(&hom.basis_isogenies()?, tau)?;
            let trivial = conds.iter().filter(|c| c.is_trivial).count();
            let (kind, kernel, rule) = if rank == 1 {
                // without complex multiplication the map is never trivial
                if trivial == 1 {
                    (MapKind::Mixed, 2, "type1-single-generator")
                } else {
                    (MapKind::Injective, 1, "type1-single-generator")
                }
            } else {
                match trivial {
                    0 => (MapKind::Injective, 1, "type1-generator-pair"),
                    3 => (MapKind::Trivial, 4, "type1-generator-pair"),
                    _ => (MapKind::Mixed, 2, "type1-generator-pair"),
                }
            };
            Ok(verdict(kind, kernel, surface, conds, rule, rank))
        }
        (2, SurfacePoints::Type2 { theta1, theta2, .. }) => {
            let conds = type2_conditions(&hom.basis_isogenies()?, theta1, theta2)?;
            let all_trivial = conds.iter().all(|c| c.is_trivial);
            let rule = if rank == 1 {
                "type2-single-generator"
            } else {
                "type2-generator-pair"
            };
            if all_trivial {
                Ok(verdict(MapKind::Injective, 1, surface, conds, rule, rank))
            } else {
                Ok(verdict(MapKind::Trivial, 2, surface, conds, rule, rank))
            }
        }
        (3, SurfacePoints::Type3 { epsilon }) => {
            let psi = generating_isogeny(&hom)?;
            let cond = type3_condition(&psi, epsilon)?;
            let (kind, kernel) = if cond.is_trivial {
                (MapKind::Trivial, 2)
            } else {
                (MapKind::Injective, 1)
            };
            Ok(verdict(kind, kernel, surface, vec![cond], "type3-pullback", rank))
        }
        (5, SurfacePoints::Type5 { eta }) => {
            let psi = generating_isogeny(&hom)?;
            let cond = type5_condition(&psi, eta)?;
            let (kind, kernel) = if cond.is_trivial {
                (MapKind::Trivial, 3)
            } else {
                (MapKind::Injective, 1)
            };
            Ok(verdict(kind, kernel, surface, vec![cond], "type5-pullback", rank))
        }
        _ => unreachable!("validation fixes the point shape per type"),
    }
}

/// Verdict for the Brauer map to the intermediate type-1 cover: constant in
/// the curve and point data.
pub fn classify_intermediate_cover(
    surface: &ValidatedSurface,
) -> Result<BrauerClassification, ClassifyError> {
    let rank = hom_module(surface.curve_b(), surface.curve_a()).rank();
    match surface.surface_type() {
        2 => Ok(verdict(
            MapKind::Trivial,
            2,
            surface,
            Vec::new(),
            "intermediate-cover-type2",
            rank,
        )),
        3 => Ok(verdict(
            MapKind::Injective,
            1,
            surface,
            Vec::new(),
            "intermediate-cover-type3",
            rank,
        )),
        _ => Err(ClassifyError::NotApplicable),
    }
}

/// Convenience for tests and the census: the Hom module the classifier uses.
pub fn classification_hom(surface: &ValidatedSurface) -> HomModule {
    hom_module(surface.curve_b(), surface.curve_a())
}
