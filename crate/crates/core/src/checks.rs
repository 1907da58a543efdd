//! Named structural checks, looked up at runtime by the command line.

use serde::Serialize;

use crate::arith::format_rational;
use crate::error::{Error, Result};
use crate::graphs::{
    complete_multipartite, robustness_witness, strongly_unbalanced_witness, symmetrizable_witness,
    Graph,
};
use crate::profile::PartiteProfile;
use crate::turan::bs_lhs;

/// Operands a check may read; each check uses the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct CheckInput {
    pub parts: Option<PartiteProfile>,
    pub graphs: Vec<Graph>,
    pub s: Option<u32>,
    pub r: Option<u32>,
}

impl CheckInput {
    fn profile(&self) -> Result<&PartiteProfile> {
        self.parts
            .as_ref()
            .ok_or_else(|| Error::Domain("this check needs a part profile".into()))
    }

    /// Explicit graphs, or the complete multipartite graph of the profile.
    fn graph_family(&self) -> Result<Vec<Graph>> {
        if !self.graphs.is_empty() {
            return Ok(self.graphs.clone());
        }
        Ok(vec![complete_multipartite(self.profile()?)?])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub verdict: bool,
    /// Why the verdict is false, or supporting data.
    pub witness: Option<String>,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, input: &CheckInput) -> Result<CheckOutcome>;
}

struct Symmetrizable;
struct Robust;
struct StronglyUnbalanced;
struct BsCondition;

impl Check for Symmetrizable {
    fn name(&self) -> &'static str {
        "symmetrizable"
    }

    fn run(&self, input: &CheckInput) -> Result<CheckOutcome> {
        let family = input.graph_family()?;
        let witness = symmetrizable_witness(&family)?.map(|w| {
            format!(
                "member {}: replacing vertex {} by a twin of vertex {} leaves the family",
                w.member, w.replaced, w.source
            )
        });
        Ok(CheckOutcome { check: self.name(), verdict: witness.is_none(), witness })
    }
}

impl Check for Robust {
    fn name(&self) -> &'static str {
        "robust"
    }

    fn run(&self, input: &CheckInput) -> Result<CheckOutcome> {
        let family = input.graph_family()?;
        let [g] = family.as_slice() else {
            return Err(Error::Domain("robustness takes exactly one graph".into()));
        };
        let witness = robustness_witness(g)?.map(|blocks| {
            let blocks: Vec<String> = blocks
                .iter()
                .map(|b| {
                    let vs: Vec<String> = b.iter().map(usize::to_string).collect();
                    format!("{{{}}}", vs.join(","))
                })
                .collect();
            format!("fuzzy blowup over blocks {}", blocks.join(" "))
        });
        Ok(CheckOutcome { check: self.name(), verdict: witness.is_none(), witness })
    }
}

impl Check for StronglyUnbalanced {
    fn name(&self) -> &'static str {
        "strongly-unbalanced"
    }

    fn run(&self, input: &CheckInput) -> Result<CheckOutcome> {
        let p = input.profile()?;
        let witness = strongly_unbalanced_witness(p).map(|(i, j)| {
            let (a, b) = (p.parts()[i], p.parts()[j]);
            format!("parts {a} and {b}: ({a}-{b})^2 <= {a}+{b}")
        });
        Ok(CheckOutcome { check: self.name(), verdict: witness.is_none(), witness })
    }
}

impl Check for BsCondition {
    fn name(&self) -> &'static str {
        "bs-condition"
    }

    fn run(&self, input: &CheckInput) -> Result<CheckOutcome> {
        let (Some(s), Some(r)) = (input.s, input.r) else {
            return Err(Error::Domain("bs-condition needs s and r".into()));
        };
        let lhs = bs_lhs(s, r)?;
        Ok(CheckOutcome {
            check: self.name(),
            verdict: lhs > num_traits::One::one(),
            witness: Some(format!("lhs = {}", format_rational(&lhs))),
        })
    }
}

static CHECKS: [&dyn Check; 4] = [&Symmetrizable, &Robust, &StronglyUnbalanced, &BsCondition];

pub fn checks() -> &'static [&'static dyn Check] {
    &CHECKS
}

pub fn find_check(name: &str) -> Option<&'static dyn Check> {
    CHECKS.iter().copied().find(|c| c.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_parts(p: &str) -> CheckInput {
        CheckInput { parts: Some(p.parse().unwrap()), ..Default::default() }
    }

    #[test]
    fn lookup_by_name() {
        let names: Vec<&str> = checks().iter().map(|c| c.name()).collect();
        assert_eq!(names, ["symmetrizable", "robust", "strongly-unbalanced", "bs-condition"]);
        assert!(find_check("planar").is_none());
    }

    #[test]
    fn verdicts() {
        let su = find_check("strongly-unbalanced").unwrap();
        assert!(su.run(&with_parts("8,4,1")).unwrap().verdict);
        let out = su.run(&with_parts("3,1,1")).unwrap();
        assert!(!out.verdict);
        assert_eq!(out.witness.as_deref(), Some("parts 3 and 1: (3-1)^2 <= 3+1"));

        let robust = find_check("robust").unwrap();
        let c5 = CheckInput { graphs: vec![Graph::cycle(5).unwrap()], ..Default::default() };
        assert!(robust.run(&c5).unwrap().verdict);
        assert!(!robust.run(&with_parts("2,2")).unwrap().verdict);

        let sym = find_check("symmetrizable").unwrap();
        assert!(sym.run(&with_parts("2,1")).unwrap().verdict);
        assert!(!sym.run(&c5).unwrap().verdict);

        let bs = find_check("bs-condition").unwrap();
        let input = CheckInput { s: Some(12), r: Some(6), ..Default::default() };
        assert!(!bs.run(&input).unwrap().verdict);
        let input = CheckInput { s: Some(11), r: Some(3), ..Default::default() };
        assert!(bs.run(&input).unwrap().verdict);
        assert!(bs.run(&CheckInput::default()).is_err());
    }
}
