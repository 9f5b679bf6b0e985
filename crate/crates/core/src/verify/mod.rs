//! Executable statements: bounds with their equality cases, boundary
//! examples, the cycle witness construction and conjecture scanners, all
//! producing JSON-lines reports.

mod audit;
mod boundary;
mod report;
mod theorems;
mod witness;

pub use audit::{extremal_structure_audit, AuditResult};
pub use boundary::{boundary_checks, hts_sweep_items, star_boundary_items, hts_c5_items, BoundaryItem};
pub use report::{
    validate_report, EqualityCase, Finding, Metadata, PerM, Report, Status, SCHEMA_VERSION, TOOL_VERSION,
};
pub use theorems::{
    check_theorem, equality_certificate, random_connected_graph, scan_conjecture, CheckOptions, Mode,
};
pub use witness::{thm15_witness, Thm15Witness};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A statement that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// `K_{r+1}`-free: `rho <= sqrt(2m(1 - 1/r))`.
    T1_1(usize),
    /// `C_4`-free, `m >= 10`: `rho <= sqrt(m)`.
    T1_2,
    /// `K_{2,r+1}`-free, `m >= 16 r^2`: `rho <= sqrt(m)`.
    T1_3i(usize),
    /// `{C_3^+, C_4^+}`-free, `m >= 9`: `rho <= sqrt(m)`.
    T1_3ii,
    /// `C_5`-free, `m >= 8`: book bound.
    T1_4C5,
    /// `C_6`-free, `m >= 22`: book bound.
    T1_4C6,
    /// Spectral condition for all cycle lengths up to `2k + 2`.
    T1_5(usize),
    /// Vertex deletion bound.
    L5_1,
    /// Perron coordinate bound (`p = 2`).
    L5_2,
    /// `rho(H_{t,0}∘R_k)` below the book bound; `None` sweeps the m-range.
    L5_4(Option<(usize, usize)>),
    /// `rho(S_m^1) > sqrt(m)` for `4 <= m <= 8`.
    R2_1,
    /// `H_{1,0}∘R_1` exceeds the book bound at `m = 7`.
    R4_1,
    /// Cycles of all lengths up to `2k + 2` above the complete split value.
    Conj6_1(usize),
    /// `B_{r+1}`-free: `rho <= sqrt(m)`, equality only complete bipartite.
    Conj6_2(usize),
}

impl TheoremId {
    /// Parse a name such as `T1.3ii` together with the parameters it needs.
    pub fn from_parts(name: &str, k: Option<usize>, r: Option<usize>, t: Option<usize>) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("{name} needs --{what}")))
        };
        let id = match name {
            "T1.1" => TheoremId::T1_1(need(r, "r")?),
            "T1.2" => TheoremId::T1_2,
            "T1.3i" => TheoremId::T1_3i(need(r, "r")?),
            "T1.3ii" => TheoremId::T1_3ii,
            "T1.4C5" => TheoremId::T1_4C5,
            "T1.4C6" => TheoremId::T1_4C6,
            "T1.5" => TheoremId::T1_5(need(k, "k")?),
            "L5.1" => TheoremId::L5_1,
            "L5.2" => TheoremId::L5_2,
            "L5.4" => match (k, t) {
                (Some(k), Some(t)) => TheoremId::L5_4(Some((k, t))),
                (None, None) => TheoremId::L5_4(None),
                _ => return Err(Error::InvalidArgument("L5.4 needs both --k and --t, or neither".into())),
            },
            "R2.1" => TheoremId::R2_1,
            "R4.1" => TheoremId::R4_1,
            "6.1" | "C6.1" => TheoremId::Conj6_1(need(k, "k")?),
            "6.2" | "C6.2" => TheoremId::Conj6_2(need(r, "r")?),
            _ => return Err(Error::InvalidArgument(format!("unknown statement {name:?}"))),
        };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("{self}: {msg}")));
        match *self {
            TheoremId::T1_1(r) if r < 2 => bad("r >= 2"),
            TheoremId::T1_3i(r) if r < 2 => bad("r >= 2"),
            TheoremId::T1_5(k) | TheoremId::Conj6_1(k) if k < 1 => bad("k >= 1"),
            TheoremId::Conj6_2(r) if r < 1 => bad("r >= 1"),
            TheoremId::L5_4(Some((k, _))) if k < 1 => bad("k >= 1"),
            _ => Ok(()),
        }
    }

    pub fn is_conjecture(&self) -> bool {
        matches!(self, TheoremId::Conj6_1(_) | TheoremId::Conj6_2(_))
    }

    /// Smallest size covered by the hypothesis.
    pub fn min_m(&self) -> usize {
        match *self {
            TheoremId::T1_2 => 10,
            TheoremId::T1_3i(r) => 16 * r * r,
            TheoremId::T1_3ii => 9,
            TheoremId::T1_4C5 => 8,
            TheoremId::T1_4C6 => 22,
            TheoremId::L5_4(_) => 8,
            _ => 1,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::T1_1(r) => write!(f, "T1.1[r={r}]"),
            TheoremId::T1_2 => write!(f, "T1.2"),
            TheoremId::T1_3i(r) => write!(f, "T1.3i[r={r}]"),
            TheoremId::T1_3ii => write!(f, "T1.3ii"),
            TheoremId::T1_4C5 => write!(f, "T1.4C5"),
            TheoremId::T1_4C6 => write!(f, "T1.4C6"),
            TheoremId::T1_5(k) => write!(f, "T1.5[k={k}]"),
            TheoremId::L5_1 => write!(f, "L5.1"),
            TheoremId::L5_2 => write!(f, "L5.2"),
            TheoremId::L5_4(None) => write!(f, "L5.4"),
            TheoremId::L5_4(Some((k, t))) => write!(f, "L5.4[k={k},t={t}]"),
            TheoremId::R2_1 => write!(f, "R2.1"),
            TheoremId::R4_1 => write!(f, "R4.1"),
            TheoremId::Conj6_1(k) => write!(f, "6.1[k={k}]"),
            TheoremId::Conj6_2(r) => write!(f, "6.2[r={r}]"),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the `Display` form, e.g. `T1.5[k=2]` or `6.2[r=1]`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once('[') {
            Some((n, rest)) => (
                n,
                rest.strip_suffix(']')
                    .ok_or_else(|| Error::InvalidArgument(format!("unbalanced bracket in {s:?}")))?,
            ),
            None => (s, ""),
        };
        let (mut k, mut r, mut t) = (None, None, None);
        for kv in params.split(',').filter(|p| !p.is_empty()) {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("bad parameter {kv:?}")))?;
            let val: usize = val
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter value {kv:?}")))?;
            match key {
                "k" => k = Some(val),
                "r" => r = Some(val),
                "t" => t = Some(val),
                _ => return Err(Error::InvalidArgument(format!("unknown parameter {key:?}"))),
            }
        }
        TheoremId::from_parts(name, k, r, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_round_trip() {
        let ids = [
            TheoremId::T1_1(3),
            TheoremId::T1_2,
            TheoremId::T1_3i(2),
            TheoremId::T1_3ii,
            TheoremId::T1_4C5,
            TheoremId::T1_4C6,
            TheoremId::T1_5(2),
            TheoremId::L5_1,
            TheoremId::L5_2,
            TheoremId::L5_4(None),
            TheoremId::L5_4(Some((2, 3))),
            TheoremId::R2_1,
            TheoremId::R4_1,
            TheoremId::Conj6_1(2),
            TheoremId::Conj6_2(1),
        ];
        for id in ids {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
        }
        assert!("T1.1".parse::<TheoremId>().is_err());
        assert!("T9".parse::<TheoremId>().is_err());
        assert!(TheoremId::from_parts("T1.5", Some(0), None, None).is_err());
    }
}
