use std::fmt;

use serde::Serialize;

use super::{bs_condition, threshold_t, Threshold};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    TrivialZero,
    ErdosZykov,
    BrownSidorenkoBipartite,
    TheoremTuran,
    BsCondition,
    Conjectural,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::TrivialZero => "trivial-zero",
            Certificate::ErdosZykov => "erdos-zykov",
            Certificate::BrownSidorenkoBipartite => "brown-sidorenko-bipartite",
            Certificate::TheoremTuran => "theorem-turan",
            Certificate::BsCondition => "bs-condition",
            Certificate::Conjectural => "conjectural",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reason why the equipartite graphon on `t` parts is optimal for `T(s, r)`.
pub trait TuranCertifier: Send + Sync {
    fn certificate(&self) -> Certificate;
    fn applies(&self, s: u32, r: u32) -> bool;
    fn threshold(&self, s: u32, r: u32) -> Result<Threshold>;
}

struct ErdosZykov;
struct BrownSidorenko;
struct TheoremTuran;
struct BsCondition;
struct Conjectural;

impl TuranCertifier for ErdosZykov {
    fn certificate(&self) -> Certificate {
        Certificate::ErdosZykov
    }
    fn applies(&self, s: u32, r: u32) -> bool {
        s == r
    }
    fn threshold(&self, _: u32, _: u32) -> Result<Threshold> {
        Ok(Threshold::Infinite)
    }
}

impl TuranCertifier for BrownSidorenko {
    fn certificate(&self) -> Certificate {
        Certificate::BrownSidorenkoBipartite
    }
    fn applies(&self, _: u32, r: u32) -> bool {
        r == 2
    }
    fn threshold(&self, _: u32, _: u32) -> Result<Threshold> {
        Ok(Threshold::Finite(2))
    }
}

impl TuranCertifier for TheoremTuran {
    fn certificate(&self) -> Certificate {
        Certificate::TheoremTuran
    }
    fn applies(&self, s: u32, r: u32) -> bool {
        r < s && s <= 3 * r + 1
    }
    fn threshold(&self, s: u32, r: u32) -> Result<Threshold> {
        threshold_t(s, r)
    }
}

impl TuranCertifier for BsCondition {
    fn certificate(&self) -> Certificate {
        Certificate::BsCondition
    }
    fn applies(&self, s: u32, r: u32) -> bool {
        s > 3 * r + 1 && bs_condition(s, r).unwrap_or(false)
    }
    fn threshold(&self, _: u32, r: u32) -> Result<Threshold> {
        Ok(Threshold::Finite(r as u64))
    }
}

/// Fallback: the `g`-maximizing part count, unproven.
impl TuranCertifier for Conjectural {
    fn certificate(&self) -> Certificate {
        Certificate::Conjectural
    }
    fn applies(&self, _: u32, _: u32) -> bool {
        true
    }
    fn threshold(&self, s: u32, r: u32) -> Result<Threshold> {
        threshold_t(s, r)
    }
}

static CERTIFIERS: [&dyn TuranCertifier; 5] =
    [&ErdosZykov, &BrownSidorenko, &TheoremTuran, &BsCondition, &Conjectural];

/// Certifiers in priority order; the first that applies decides.
pub fn certifiers() -> &'static [&'static dyn TuranCertifier] {
    &CERTIFIERS
}

pub fn certifier(name: &str) -> Option<&'static dyn TuranCertifier> {
    CERTIFIERS.iter().copied().find(|c| c.certificate().as_str() == name)
}
