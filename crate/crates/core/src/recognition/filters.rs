use serde::Serialize;

use super::{Violation, ViolationKind};
use crate::graph::{for_each_cycle, CycleVisit, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FilterOutcome {
    Pass,
    Fail(Violation),
    /// The cycle budget ran out before a verdict.
    Inconclusive(String),
}

pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;

/// Necessary conditions for membership in `G_k`, checked on every cycle:
/// cycles of order at least `k` have order divisible by `k`; for `k = 3`
/// (resp. `k = 4`, cycles of order at least 4) any two vertices of a cycle
/// with neighbours off the cycle are at cycle distance divisible by 3
/// (resp. 2).
pub fn cycle_filters_bounded(g: &Graph, k: usize, max_cycles: usize) -> FilterOutcome {
    let mut seen = 0usize;
    let mut result = FilterOutcome::Pass;
    for_each_cycle(g, |c| {
        seen += 1;
        if seen > max_cycles {
            result = FilterOutcome::Inconclusive(format!("more than {max_cycles} cycles"));
            return CycleVisit::Stop;
        }
        let len = c.len();
        if len >= k && len % k != 0 {
            result = FilterOutcome::Fail(Violation::new(
                ViolationKind::Cycle,
                c.to_vec(),
                format!("order {len} >= {k} is not divisible by {k}"),
            ));
            return CycleVisit::Stop;
        }
        let modulus = match k {
            3 => 3,
            4 if len >= 4 => 2,
            _ => return CycleVisit::Continue,
        };
        let attached: Vec<usize> = (0..len)
            .filter(|&i| g.neighbors(c[i]).iter().any(|w| !c.contains(w)))
            .collect();
        for (a, &i) in attached.iter().enumerate() {
            for &j in &attached[a + 1..] {
                let d = (j - i).min(len - (j - i));
                if d % modulus != 0 {
                    let mut vertices = vec![c[i], c[j]];
                    vertices.extend_from_slice(c);
                    result = FilterOutcome::Fail(Violation::new(
                        ViolationKind::Distance,
                        vertices,
                        format!(
                            "attachments {} and {} are at distance {d} on the cycle that follows",
                            c[i], c[j]
                        ),
                    ));
                    return CycleVisit::Stop;
                }
            }
        }
        CycleVisit::Continue
    });
    result
}

pub fn cycle_filters(g: &Graph, k: usize) -> FilterOutcome {
    cycle_filters_bounded(g, k, DEFAULT_MAX_CYCLES)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        match cycle_filters(&Graph::cycle(5), 3) {
            FilterOutcome::Fail(v) => assert_eq!(v.vertices.len(), 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(cycle_filters(&Graph::cycle(6), 4), FilterOutcome::Fail(_)));
        assert_eq!(cycle_filters(&Graph::cycle(3), 4), FilterOutcome::Pass);
        assert_eq!(cycle_filters(&Graph::cycle(9), 3), FilterOutcome::Pass);
        // C9 with leaves at adjacent vertices: distance 1.
        let g = Graph::new(11, (0..9).map(|i| (i, (i + 1) % 9)).chain([(0, 9), (1, 10)])).unwrap();
        match cycle_filters(&g, 3) {
            FilterOutcome::Fail(v) => assert_eq!(v.kind, ViolationKind::Distance),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            cycle_filters_bounded(&Graph::complete(6), 3, 5),
            FilterOutcome::Inconclusive(_) | FilterOutcome::Fail(_)
        ));
        assert!(matches!(
            cycle_filters_bounded(&Graph::complete(6), 6, 5),
            FilterOutcome::Inconclusive(_)
        ));
    }
}
