//! Stability of class-group orders along a Z2-tower: once two consecutive
//! layers past total ramification agree, every later layer must agree too.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Stability {
    /// Values repeat from layer `from` on and never change afterwards.
    Stable { from: usize },
    /// No two consecutive layers at or after n0 agree yet.
    Undetermined,
    /// Layers `repeat_at` and `repeat_at + 1` agree but layer `change_at` differs.
    Violation { repeat_at: usize, change_at: usize },
}

/// Checks a sequence of orders (or ranks) indexed by the layer n.
pub fn check_stability(values: &[u64], n0: usize) -> Stability {
    let Some(n) = (n0..values.len().saturating_sub(1)).find(|&n| values[n] == values[n + 1]) else {
        return Stability::Undetermined;
    };
    match (n + 2..values.len()).find(|&m| values[m] != values[n]) {
        Some(m) => Stability::Violation { repeat_at: n, change_at: m },
        None => Stability::Stable { from: n },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(check_stability(&[1, 2, 4, 4, 4], 1), Stability::Stable { from: 2 });
        assert_eq!(check_stability(&[1, 2, 2, 4], 1), Stability::Violation { repeat_at: 1, change_at: 3 });
        assert_eq!(check_stability(&[1, 2, 4], 1), Stability::Undetermined);
        // repeats before n0 are ignored
        assert_eq!(check_stability(&[2, 2, 4, 8], 1), Stability::Undetermined);
        assert_eq!(check_stability(&[], 0), Stability::Undetermined);
    }

    proptest! {
        #[test]
        fn stable_sequences_are_accepted(prefix in proptest::collection::vec(0u32..6, 0..6), tail in 0u32..6, len in 2usize..6) {
            // strictly increasing prefix then a constant tail
            let mut v: Vec<u64> = Vec::new();
            let mut acc = 0u64;
            for x in prefix {
                acc += x as u64 + 1;
                v.push(acc);
            }
            let t = acc + tail as u64 + 1;
            v.extend(std::iter::repeat_n(t, len));
            let is_stable = matches!(check_stability(&v, 0), Stability::Stable { .. });
            prop_assert!(is_stable);
            let mut broken = v.clone();
            broken.push(t + 1);
            let is_violation = matches!(check_stability(&broken, 0), Stability::Violation { .. });
            prop_assert!(is_violation);
        }
    }
}
