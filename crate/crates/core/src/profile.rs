use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Part sizes of a complete multipartite graph `K_{a_1,...,a_r}`, kept
/// sorted nonincreasing so that equal profiles compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartiteProfile {
    parts: Vec<u32>,
}

impl PartiteProfile {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a profile needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Domain("part sizes must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartiteProfile { parts })
    }

    /// `T(s, r)`: `s mod r` parts of size `floor(s/r) + 1`, the rest of size `floor(s/r)`.
    pub fn turan(s: u32, r: u32) -> Result<Self> {
        if r < 1 || r > s {
            return Err(Error::Domain(format!(
                "Turán profile needs 1 <= r <= s, got s={s}, r={r}"
            )));
        }
        let (p, q) = (s / r, s % r);
        let parts = (0..r).map(|i| if i < q { p + 1 } else { p }).collect();
        PartiteProfile::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `r`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Number of vertices `s`.
    pub fn vertices(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `(size, multiplicity)` pairs in decreasing size order.
    pub fn size_classes(&self) -> Vec<(u32, usize)> {
        let mut classes: Vec<(u32, usize)> = Vec::new();
        for &a in &self.parts {
            match classes.last_mut() {
                Some((size, count)) if *size == a => *count += 1,
                _ => classes.push((a, 1)),
            }
        }
        classes
    }

    pub fn is_turan(&self) -> bool {
        self.parts[0] - self.parts[self.parts.len() - 1] <= 1
    }

    /// Number of singleton parts.
    pub fn singletons(&self) -> usize {
        self.parts.iter().filter(|&&a| a == 1).count()
    }

    /// Every profile on `s` vertices with at most `max_parts` parts, in
    /// reverse lexicographic order.
    pub fn all_with_vertices(s: u32, max_parts: usize) -> Vec<PartiteProfile> {
        fn rec(rem: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<PartiteProfile>) {
            if rem == 0 {
                out.push(PartiteProfile { parts: cur.clone() });
                return;
            }
            if slots == 0 {
                return;
            }
            for a in (1..=cap.min(rem)).rev() {
                cur.push(a);
                rec(rem - a, a, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if s > 0 {
            rec(s, s, max_parts, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for PartiteProfile {
    type Err = Error;

    /// Comma-separated part sizes, e.g. `"3,1,1"`; order is irrelevant.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid part size {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartiteProfile::new(parts)
    }
}

impl fmt::Display for PartiteProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "K_{{{}}}", joined.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_sorts() {
        let p: PartiteProfile = "1, 3,1".parse().unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.vertices(), 5);
        assert_eq!(p.num_parts(), 3);
    }

    #[test]
    fn rejects_bad_text() {
        assert!(matches!("3,x".parse::<PartiteProfile>(), Err(Error::Parse(_))));
        assert!(matches!("3,0".parse::<PartiteProfile>(), Err(Error::Domain(_))));
        assert!("".parse::<PartiteProfile>().is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(PartiteProfile::turan(7, 3).unwrap().parts(), &[3, 2, 2]);
        assert_eq!(PartiteProfile::turan(6, 3).unwrap().parts(), &[2, 2, 2]);
        assert_eq!(PartiteProfile::turan(4, 3).unwrap().parts(), &[2, 1, 1]);
        assert!(PartiteProfile::turan(3, 4).is_err());
        assert!(PartiteProfile::turan(3, 0).is_err());
    }

    #[test]
    fn size_classes_group_equal_parts() {
        let p = PartiteProfile::new(vec![5, 3, 5, 1, 3, 5]).unwrap();
        assert_eq!(p.size_classes(), vec![(5, 3), (3, 2), (1, 1)]);
    }

    #[test]
    fn enumerates_partitions() {
        // partitions of 8 into at most 4 parts
        assert_eq!(PartiteProfile::all_with_vertices(8, 4).len(), 15);
        assert_eq!(PartiteProfile::all_with_vertices(6, 6).len(), 11);
    }

    proptest! {
        #[test]
        fn turan_parts_balanced(s in 1u32..60, r_seed in 0u32..60) {
            let r = r_seed % s + 1;
            let p = PartiteProfile::turan(s, r).unwrap();
            prop_assert_eq!(p.vertices(), s);
            prop_assert_eq!(p.num_parts(), r as usize);
            prop_assert!(p.is_turan());
        }
    }
}
