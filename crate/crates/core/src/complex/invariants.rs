use super::subgroup::SubgroupC;
use crate::error::{Error, Result};

/// Nonnegative real or `+infinity`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn as_f64(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x,
            ExtReal::Infinity => f64::INFINITY,
        }
    }
}

/// Length data of a subgroup. Fields are `None` where the invariant is not
/// defined for the stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeInvariants {
    pub ell1: Option<f64>,
    pub ell2: Option<f64>,
    pub kappa: Option<f64>,
    pub coarea: Option<ExtReal>,
}

pub fn lattice_invariants(c: &SubgroupC) -> LatticeInvariants {
    let none = LatticeInvariants {
        ell1: None,
        ell2: None,
        kappa: None,
        coarea: None,
    };
    match c {
        SubgroupC::Trivial => LatticeInvariants {
            coarea: Some(ExtReal::Infinity),
            ..none
        },
        SubgroupC::Cyclic { w } => LatticeInvariants {
            ell1: Some(w.norm()),
            coarea: Some(ExtReal::Infinity),
            ..none
        },
        SubgroupC::Line { .. } => none,
        SubgroupC::LineCyclic { step, .. } => LatticeInvariants {
            ell2: Some(*step),
            coarea: Some(ExtReal::Finite(0.0)),
            ..none
        },
        SubgroupC::Lattice(b) => {
            let (l1, l2) = (b.w1.norm(), b.w2.norm());
            LatticeInvariants {
                ell1: Some(l1),
                ell2: Some(l2),
                kappa: Some(l2 / l1),
                coarea: Some(ExtReal::Finite(b.coarea())),
            }
        }
        SubgroupC::Full => LatticeInvariants {
            coarea: Some(ExtReal::Finite(0.0)),
            ..none
        },
    }
}

/// Covolume, extended by `infinity` on `{0}` and cyclic groups and by `0` on
/// groups containing a line with a discrete transversal, or on `C`.
///
/// A bare line has no well-defined value: lattices degenerating to it can
/// have any covolume.
pub fn coarea(c: &SubgroupC) -> Result<ExtReal> {
    lattice_invariants(c).coarea.ok_or(Error::UndefinedInvariant {
        invariant: "coarea",
        stratum: c.tag(),
    })
}
