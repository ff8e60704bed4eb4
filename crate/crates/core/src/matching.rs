//! Maximum bipartite matching (augmenting paths), shared by the forest
//! clause of the ordering and by embedding search.

/// Incremental matcher: left vertices are offered one at a time and stay
/// matched once matched (augmentation only re-routes them).
pub(crate) struct Matcher<'a> {
    adj: &'a [Vec<usize>],
    owner: Vec<Option<usize>>,
    banned: Option<usize>,
}

impl<'a> Matcher<'a> {
    /// `adj[l]` lists the right vertices left vertex `l` may be matched to;
    /// right vertex `banned`, if any, is never used.
    pub(crate) fn new(adj: &'a [Vec<usize>], right: usize, banned: Option<usize>) -> Self {
        Matcher {
            adj,
            owner: vec![None; right],
            banned,
        }
    }

    /// Tries to add left vertex `l`; returns whether it got matched.
    pub(crate) fn offer(&mut self, l: usize) -> bool {
        let mut seen = vec![false; self.owner.len()];
        self.augment(l, &mut seen)
    }

    fn augment(&mut self, l: usize, seen: &mut [bool]) -> bool {
        for &r in &self.adj[l] {
            if seen[r] || Some(r) == self.banned {
                continue;
            }
            seen[r] = true;
            let free = match self.owner[r] {
                None => true,
                Some(other) => self.augment(other, seen),
            };
            if free {
                self.owner[r] = Some(l);
                return true;
            }
        }
        false
    }

    /// Right vertex currently matched to each left vertex.
    pub(crate) fn assignment(&self, left: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; left];
        for (r, o) in self.owner.iter().enumerate() {
            if let Some(l) = o {
                out[*l] = Some(r);
            }
        }
        out
    }
}

/// Size of a maximum matching over all left vertices.
#[cfg(test)]
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let mut m = Matcher::new(adj, right, None);
    (0..adj.len()).filter(|&l| m.offer(l)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_perfect_matching_needing_augmentation() {
        // 0 -> {0, 1}, 1 -> {0}: greedy would take 0->0 first.
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(max_matching(&adj, 2), 2);
        let mut m = Matcher::new(&adj, 2, None);
        assert!(m.offer(0) && m.offer(1));
        assert_eq!(m.assignment(2), vec![Some(1), Some(0)]);
    }

    #[test]
    fn banned_right_vertex_is_skipped() {
        let adj = vec![vec![0, 1], vec![0]];
        let mut m = Matcher::new(&adj, 2, Some(0));
        assert!(m.offer(0));
        assert!(!m.offer(1));
    }

    #[test]
    fn agrees_with_exhaustive_search_on_small_graphs() {
        fn brute(adj: &[Vec<usize>], l: usize, used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = brute(adj, l + 1, used);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + brute(adj, l + 1, used));
                    used[r] = false;
                }
            }
            best
        }
        for mask in 0u32..(1 << 12) {
            let adj: Vec<Vec<usize>> = (0..3)
                .map(|l| (0..4).filter(|&r| mask & (1 << (l * 4 + r)) != 0).collect())
                .collect();
            assert_eq!(max_matching(&adj, 4), brute(&adj, 0, &mut vec![false; 4]), "{adj:?}");
        }
    }
}
