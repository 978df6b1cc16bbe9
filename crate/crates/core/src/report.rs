use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

/// At most this many violations keep their witnesses; the count is exact.
pub const MAX_WITNESSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

/// Outcome of a law suite. Violations are data, not errors.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub checked: u64,
    /// Instances that could not be evaluated (missing joins in PInj).
    pub skipped: u64,
    /// Instances checked, per law.
    pub laws: BTreeMap<String, u64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    pub fn new(suite: impl Into<String>) -> Self {
        LawReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Records one checked instance of `law`, and a violation if `holds` is false.
    pub fn check(&mut self, law: &str, holds: bool, witness: impl FnOnce() -> Vec<String>) {
        self.tally(law, 1);
        if !holds {
            self.violate(law, witness());
        }
    }

    /// Records `n` checked instances of `law` at once; failures among them are
    /// reported separately through [`LawReport::violate`].
    pub fn tally(&mut self, law: &str, n: u64) {
        self.checked += n;
        match self.laws.get_mut(law) {
            Some(count) => *count += n,
            None => {
                self.laws.insert(law.to_string(), n);
            }
        }
    }

    pub fn violate(&mut self, law: &str, witness: Vec<String>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(Violation {
                law: law.to_string(),
                witness,
            });
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Folds `other` into `self`. Associative, so shards may merge in any grouping.
    pub fn merge(&mut self, other: LawReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        for (law, n) in other.laws {
            *self.laws.entry(law).or_default() += n;
        }
        self.violation_count += other.violation_count;
        let room = MAX_WITNESSES.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        self.elapsed += other.elapsed;
    }

    pub fn count(&self, law: &str) -> u64 {
        self.laws.get(law).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_is_associative_on_counts() {
        let mk = |n: u64, bad: bool| {
            let mut r = LawReport::new("s");
            for i in 0..n {
                r.check("law", !(bad && i == 0), || vec![format!("{i}")]);
            }
            r
        };
        let (a, b, c) = (mk(3, false), mk(2, true), mk(4, true));
        let mut left = a.clone();
        left.merge(b.clone());
        left.merge(c.clone());
        let mut bc = b;
        bc.merge(c);
        let mut right = a;
        right.merge(bc);
        assert_eq!(left, right);
        assert_eq!(left.checked, 9);
        assert_eq!(left.violation_count, 2);
        assert!(!left.passed());
    }
}
