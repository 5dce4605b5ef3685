use std::collections::BTreeSet;

/// Discovered-but-unvisited nodes ordered by fixed-point weight key, then by
/// node index (node indices follow ascending id order).
///
/// Both lookups are `O(log n)`.
#[derive(Debug, Clone, Default)]
pub struct Frontier {
    by_weight: BTreeSet<(i64, usize)>,
    member: Vec<bool>,
}

impl Frontier {
    pub fn with_capacity(nodes: usize) -> Self {
        Frontier {
            by_weight: BTreeSet::new(),
            member: vec![false; nodes],
        }
    }

    /// Idempotent. Returns `true` if the node was not already a member.
    pub fn insert(&mut self, node: usize, key: i64) -> bool {
        if self.member[node] {
            return false;
        }
        self.member[node] = true;
        self.by_weight.insert((key, node));
        true
    }

    pub fn remove(&mut self, node: usize, key: i64) -> bool {
        if !self.member[node] {
            return false;
        }
        self.member[node] = false;
        self.by_weight.remove(&(key, node))
    }

    pub fn contains(&self, node: usize) -> bool {
        self.member[node]
    }

    pub fn len(&self) -> usize {
        self.by_weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_weight.is_empty()
    }

    /// Member minimizing `|key - target|`; ties go to the smaller key, then
    /// the smaller node.
    pub fn nearest(&self, target: i64) -> Option<usize> {
        let above = self.by_weight.range((target, 0)..).next().copied();
        let below = self
            .by_weight
            .range(..(target, 0))
            .next_back()
            .and_then(|&(k, _)| self.first_with_key(k));
        match (below, above) {
            (None, None) => None,
            (Some((_, n)), None) | (None, Some((_, n))) => Some(n),
            (Some((kb, nb)), Some((ka, na))) => {
                if target - kb <= ka - target {
                    Some(nb)
                } else {
                    Some(na)
                }
            }
        }
    }

    /// Member with the largest key; ties go to the smaller node.
    pub fn max_weight(&self) -> Option<usize> {
        let &(k, _) = self.by_weight.iter().next_back()?;
        self.first_with_key(k).map(|(_, n)| n)
    }

    fn first_with_key(&self, key: i64) -> Option<(i64, usize)> {
        self.by_weight.range((key, 0)..).next().copied()
    }
}
