use alloc::vec::Vec;

use crate::error::{self, Error, Result, Violation};
use crate::geometry::{LatticePoint, Slope};

use super::{FactorStream, MonomialModule, SideRule};

/// Modules given by an infinite generator rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    /// `1` and `x^{1+2+…+r} y^{-r}` for `r ≥ 1`.
    Triangular,
    /// `x^i y^{-i}` for all `i ∈ Z`.
    Antidiagonal,
}

impl NamedFamily {
    pub fn name(self) -> &'static str {
        match self {
            NamedFamily::Triangular => "triangular",
            NamedFamily::Antidiagonal => "antidiagonal",
        }
    }

    pub fn from_name(name: &str) -> Option<NamedFamily> {
        match name {
            "triangular" => Some(NamedFamily::Triangular),
            "antidiagonal" => Some(NamedFamily::Antidiagonal),
            _ => None,
        }
    }

    /// Finitely many of the generators: `r ≤ k` for the triangular family,
    /// `|i| ≤ k` for the antidiagonal one.
    pub fn prefix(self, k: u64) -> Result<Vec<LatticePoint>> {
        let k = error::to_i64(k)?;
        match self {
            NamedFamily::Triangular => {
                let mut out = Vec::new();
                let mut x = 0i64;
                for r in 0..=k {
                    x = error::add(x, r)?;
                    out.push(LatticePoint::new(x, -r));
                }
                Ok(out)
            }
            NamedFamily::Antidiagonal => {
                let lo = k.checked_neg().ok_or(Error::OverflowDetected)?;
                Ok((lo..=k).map(|i| LatticePoint::new(i, -i)).collect())
            }
        }
    }
}

/// A module to be admitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDescription {
    Finite(Vec<LatticePoint>),
    Family(NamedFamily),
    Stream {
        anchor: LatticePoint,
        left: SideRule,
        right: SideRule,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admitted {
    Finite(MonomialModule),
    Stream(FactorStream),
}

/// Accepts modules whose Newton polyhedron has recession cone `R_+²`, i.e.
/// every unbounded face is parallel to an axis.
pub fn admit_module(description: ModuleDescription) -> Result<Admitted> {
    match description {
        ModuleDescription::Finite(points) => {
            MonomialModule::from_generators(&points).map(Admitted::Finite)
        }
        ModuleDescription::Family(NamedFamily::Triangular) => FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::Triangular { start: 1 },
        )
        .map(Admitted::Stream),
        // every generator lies on the line x + y = 0, which is then the only
        // face of the polyhedron
        ModuleDescription::Family(NamedFamily::Antidiagonal) => {
            Err(Error::NonAdmissibleModule(Violation::UnboundedSkewFace {
                slope: Slope::new(1, 1)?,
            }))
        }
        ModuleDescription::Stream {
            anchor,
            left,
            right,
        } => FactorStream::new(anchor, left, right).map(Admitted::Stream),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_family_is_a_stream() {
        let Admitted::Stream(s) =
            admit_module(ModuleDescription::Family(NamedFamily::Triangular)).unwrap()
        else {
            panic!("expected a stream");
        };
        assert_eq!(s.right(), &SideRule::Triangular { start: 1 });
        // the stream's generators are exactly the family's
        let prefix = NamedFamily::Triangular.prefix(5).unwrap();
        assert_eq!(s.partial_sum(0, 5).unwrap().generators(), &prefix[..]);
    }

    #[test]
    fn finite_list_is_a_module() {
        let got = admit_module(ModuleDescription::Finite(alloc::vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(2, -1)
        ]))
        .unwrap();
        assert!(matches!(got, Admitted::Finite(m) if m.generators().len() == 2));
        assert_eq!(
            admit_module(ModuleDescription::Finite(Vec::new())),
            Err(Error::EmptyGeneratorSet)
        );
    }

    #[test]
    fn antidiagonal_is_rejected() {
        let err = admit_module(ModuleDescription::Family(NamedFamily::Antidiagonal)).unwrap_err();
        assert!(matches!(
            err,
            Error::NonAdmissibleModule(Violation::UnboundedSkewFace { .. })
        ));
    }

    #[test]
    fn prefixes() {
        assert_eq!(
            NamedFamily::Antidiagonal.prefix(1).unwrap(),
            [(-1, 1), (0, 0), (1, -1)].map(LatticePoint::from)
        );
        assert_eq!(
            NamedFamily::Triangular.prefix(3).unwrap(),
            [(0, 0), (1, -1), (3, -2), (6, -3)].map(LatticePoint::from)
        );
        assert_eq!(
            NamedFamily::from_name("triangular"),
            Some(NamedFamily::Triangular)
        );
        assert_eq!(NamedFamily::from_name("dense"), None);
    }
}
