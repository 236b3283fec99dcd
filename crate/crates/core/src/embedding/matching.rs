/// Augmenting-path bipartite matching that saturates the left side.
///
/// Left and right vertices are `0..left` and `0..right`; `adj(i, j)` says
/// whether left `i` may take right `j`. Left vertices are processed in order
/// and right candidates tried in ascending order, so the result is
/// deterministic.
#[derive(Default)]
pub(crate) struct Matcher {
    owner: Vec<usize>,
    seen: Vec<bool>,
}

const FREE: usize = usize::MAX;

impl Matcher {
    /// Returns the right partner of every left vertex, or `None` when no
    /// left-saturating matching exists.
    pub(crate) fn saturate(
        &mut self,
        left: usize,
        right: usize,
        adj: impl Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        if left > right {
            return None;
        }
        self.owner.clear();
        self.owner.resize(right, FREE);
        for i in 0..left {
            self.seen.clear();
            self.seen.resize(right, false);
            if !self.augment(i, right, &adj) {
                return None;
            }
        }
        let mut partner = vec![FREE; left];
        for (j, &i) in self.owner.iter().enumerate() {
            if i != FREE {
                partner[i] = j;
            }
        }
        Some(partner)
    }

    pub(crate) fn exists(
        &mut self,
        left: usize,
        right: usize,
        adj: impl Fn(usize, usize) -> bool,
    ) -> bool {
        self.saturate(left, right, adj).is_some()
    }

    fn augment(&mut self, i: usize, right: usize, adj: &impl Fn(usize, usize) -> bool) -> bool {
        for j in 0..right {
            if self.seen[j] || !adj(i, j) {
                continue;
            }
            self.seen[j] = true;
            if self.owner[j] == FREE || self.augment(self.owner[j], right, adj) {
                self.owner[j] = i;
                return true;
            }
        }
        false
    }
}
