//! Bielliptic-surface specifications and their invariant tables.
//!
//! A surface is given by its type (1–7), the two elliptic curves, and the
//! torsion data the group action needs. Validation enforces the
//! Bagnera–De Franchis constraints; the invariants are a pure lookup per
//! type: the acting group, the order of the canonical bundle, the torsion
//! of the second cohomology (= the Brauer group), the multiple-fiber
//! multiplicities, and the pullback multipliers to the canonical cover.

use crate::isogeny::{EllipticCurve, SpecialJ};
use crate::lattice::TorsionPoint;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("unknown surface type {0}; expected 1 through 7")]
    UnknownType(u8),
    #[error("point {point} must have order {expected}, found {found}")]
    WrongPointOrder {
        point: &'static str,
        expected: u64,
        found: u64,
    },
    #[error("point {point} does not lie on curve {curve}")]
    PointOffCurve {
        point: &'static str,
        curve: &'static str,
    },
    #[error("surface type {surface_type} requires curve B with {expected}")]
    WrongSpecialJ {
        surface_type: u8,
        expected: &'static str,
    },
    #[error("tau must differ from theta1 on a type 2 surface")]
    TauEqualsTheta1,
    #[error("surface type {surface_type} requires points: {expected}")]
    WrongPointShape {
        surface_type: u8,
        expected: &'static str,
    },
}

/// Torsion data per type; types 4, 6, 7 take no points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfacePoints {
    Type1 {
        tau: TorsionPoint,
    },
    Type2 {
        theta1: TorsionPoint,
        theta2: TorsionPoint,
        tau: TorsionPoint,
    },
    Type3 {
        epsilon: TorsionPoint,
    },
    Type5 {
        eta: TorsionPoint,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub surface_type: u8,
    pub curve_a: EllipticCurve,
    pub curve_b: EllipticCurve,
    pub points: SurfacePoints,
}

/// A spec that passed [`validate`]; classification consumes only this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedSurface {
    spec: SurfaceSpec,
}

impl ValidatedSurface {
    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn surface_type(&self) -> u8 {
        self.spec.surface_type
    }

    pub fn curve_a(&self) -> &EllipticCurve {
        &self.spec.curve_a
    }

    pub fn curve_b(&self) -> &EllipticCurve {
        &self.spec.curve_b
    }

    pub fn points(&self) -> &SurfacePoints {
        &self.spec.points
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        invariants_for_type(self.spec.surface_type)
    }
}

fn check_point(
    point: &TorsionPoint,
    name: &'static str,
    curve: &EllipticCurve,
    curve_name: &'static str,
    expected_order: u64,
) -> Result<(), SurfaceError> {
    if point.lattice() != curve.lattice() {
        return Err(SurfaceError::PointOffCurve {
            point: name,
            curve: curve_name,
        });
    }
    let found = point.order();
    if found != expected_order {
        return Err(SurfaceError::WrongPointOrder {
            point: name,
            expected: expected_order,
            found,
        });
    }
    Ok(())
}

/// Check every type constraint and freeze the spec for classification.
pub fn validate(spec: SurfaceSpec) -> Result<ValidatedSurface, SurfaceError> {
    let t = spec.surface_type;
    if !(1..=7).contains(&t) {
        return Err(SurfaceError::UnknownType(t));
    }
    match (t, &spec.points) {
        (1, SurfacePoints::Type1 { tau }) => {
            check_point(tau, "tau", &spec.curve_a, "A", 2)?;
        }
        (2, SurfacePoints::Type2 { theta1, theta2, tau }) => {
            check_point(theta1, "theta1", &spec.curve_a, "A", 2)?;
            check_point(theta2, "theta2", &spec.curve_b, "B", 2)?;
            check_point(tau, "tau", &spec.curve_a, "A", 2)?;
            if tau == theta1 {
                return Err(SurfaceError::TauEqualsTheta1);
            }
        }
        (3, SurfacePoints::Type3 { epsilon }) => {
            check_point(epsilon, "epsilon", &spec.curve_a, "A", 4)?;
        }
        (5, SurfacePoints::Type5 { eta }) => {
            check_point(eta, "eta", &spec.curve_a, "A", 3)?;
        }
        (4 | 6 | 7, SurfacePoints::None) => {}
        (t, _) => {
            return Err(SurfaceError::WrongPointShape {
                surface_type: t,
                expected: match t {
                    1 => "tau",
                    2 => "theta1, theta2, tau",
                    3 => "epsilon",
                    5 => "eta",
                    _ => "none",
                },
            });
        }
    }
    // The order-4 automorphism lives on J1728 curves, the order-3 one on J0.
    let required_j = match t {
        3 | 4 => Some((
            SpecialJ::J1728,
            "j-invariant 1728 (endomorphisms by the Gaussian integers)",
        )),
        5..=7 => Some((
            SpecialJ::J0,
            "j-invariant 0 (endomorphisms by the Eisenstein integers)",
        )),
        _ => None,
    };
    if let Some((flag, expected)) = required_j {
        if spec.curve_b.special() != flag {
            return Err(SurfaceError::WrongSpecialJ {
                surface_type: t,
                expected,
            });
        }
    }
    Ok(ValidatedSurface { spec })
}

/// Isomorphism type of a small abelian group, as it appears in the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupShape {
    Trivial,
    Z2,
    Z2xZ2,
    Z3,
}

impl GroupShape {
    pub fn order(&self) -> u64 {
        match self {
            GroupShape::Trivial => 1,
            GroupShape::Z2 => 2,
            GroupShape::Z2xZ2 => 4,
            GroupShape::Z3 => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GroupShape::Trivial => "0",
            GroupShape::Z2 => "Z/2",
            GroupShape::Z2xZ2 => "Z/2 x Z/2",
            GroupShape::Z3 => "Z/3",
        }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The type-1 cover sitting between a type 2 or 3 surface and its canonical
/// cover, with the pullback multipliers on the numerical generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntermediateCover {
    pub cover_type: u8,
    pub cover_ord_canonical: u64,
    /// (multiplier of a0, multiplier of b0) under pullback to the cover.
    pub num_pullback: (u64, u64),
}

/// The per-type invariant row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub surface_type: u8,
    pub group_g: &'static str,
    pub group_order: u64,
    pub ord_canonical: u64,
    pub lambda: u64,
    pub h2_torsion: GroupShape,
    pub brauer_group: GroupShape,
    pub fiber_multiplicities: &'static [u64],
    /// (multiplier of a0, multiplier of b0) under pullback to the canonical
    /// cover; the b0 multiplier is ord/lambda.
    pub num_pullback: (u64, u64),
    /// Generator of the covering group action, as documentation.
    pub sigma_action: Option<&'static str>,
    pub intermediate_cover: Option<IntermediateCover>,
}

/// Row lookup. Only meaningful for validated types.
pub fn invariants_for_type(t: u8) -> SurfaceInvariants {
    let cover2 = IntermediateCover {
        cover_type: 1,
        cover_ord_canonical: 2,
        num_pullback: (2, 1),
    };
    let cover3 = IntermediateCover {
        cover_type: 1,
        cover_ord_canonical: 2,
        num_pullback: (1, 2),
    };
    match t {
        1 => SurfaceInvariants {
            surface_type: 1,
            group_g: "Z/2",
            group_order: 2,
            ord_canonical: 2,
            lambda: 1,
            h2_torsion: GroupShape::Z2xZ2,
            brauer_group: GroupShape::Z2xZ2,
            fiber_multiplicities: &[2, 2, 2, 2],
            num_pullback: (1, 2),
            sigma_action: Some("(x, y) -> (x + tau, -y)"),
            intermediate_cover: None,
        },
        2 => SurfaceInvariants {
            surface_type: 2,
            group_g: "Z/2 x Z/2",
            group_order: 4,
            ord_canonical: 2,
            lambda: 2,
            h2_torsion: GroupShape::Z2,
            brauer_group: GroupShape::Z2,
            fiber_multiplicities: &[2, 2, 2, 2],
            num_pullback: (1, 1),
            sigma_action: Some("[x, y] -> [x + tau, -y] on (A x B)/<(theta1, theta2)>"),
            intermediate_cover: Some(cover2),
        },
        3 => SurfaceInvariants {
            surface_type: 3,
            group_g: "Z/4",
            group_order: 4,
            ord_canonical: 4,
            lambda: 1,
            h2_torsion: GroupShape::Z2,
            brauer_group: GroupShape::Z2,
            fiber_multiplicities: &[2, 4, 4],
            num_pullback: (1, 4),
            sigma_action: Some("(x, y) -> (x + epsilon, omega(y))"),
            intermediate_cover: Some(cover3),
        },
        4 => SurfaceInvariants {
            surface_type: 4,
            group_g: "Z/4 x Z/2",
            group_order: 8,
            ord_canonical: 4,
            lambda: 2,
            h2_torsion: GroupShape::Trivial,
            brauer_group: GroupShape::Trivial,
            fiber_multiplicities: &[2, 4, 4],
            num_pullback: (1, 2),
            sigma_action: None,
            intermediate_cover: None,
        },
        5 => SurfaceInvariants {
            surface_type: 5,
            group_g: "Z/3",
            group_order: 3,
            ord_canonical: 3,
            lambda: 1,
            h2_torsion: GroupShape::Z3,
            brauer_group: GroupShape::Z3,
            fiber_multiplicities: &[3, 3, 3],
            num_pullback: (1, 3),
            sigma_action: Some("(x, y) -> (x + eta, rho(y))"),
            intermediate_cover: None,
        },
        6 => SurfaceInvariants {
            surface_type: 6,
            group_g: "Z/3 x Z/3",
            group_order: 9,
            ord_canonical: 3,
            lambda: 3,
            h2_torsion: GroupShape::Trivial,
            brauer_group: GroupShape::Trivial,
            fiber_multiplicities: &[3, 3, 3],
            num_pullback: (1, 1),
            sigma_action: None,
            intermediate_cover: None,
        },
        7 => SurfaceInvariants {
            surface_type: 7,
            group_g: "Z/6",
            group_order: 6,
            ord_canonical: 6,
            lambda: 1,
            h2_torsion: GroupShape::Trivial,
            brauer_group: GroupShape::Trivial,
            fiber_multiplicities: &[2, 3, 6],
            num_pullback: (1, 6),
            sigma_action: None,
            intermediate_cover: None,
        },
        other => panic!("invariants_for_type called with invalid type {other}"),
    }
}

/// Structural data of the type-1 cover, for types 2 and 3 only.
pub fn intermediate_cover_info(surface: &ValidatedSurface) -> Option<IntermediateCover> {
    surface.invariants().intermediate_cover
}
