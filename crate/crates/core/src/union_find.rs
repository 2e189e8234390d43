/// Disjoint sets whose representative is always the smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Root lookup without path compression.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two different classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn compress(&mut self) {
        for i in 0..self.parent.len() {
            self.find(i);
        }
    }

    pub fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_root() {
        let mut u = UnionFind::new(5);
        assert!(u.union(4, 2));
        assert!(u.union(2, 3));
        assert!(!u.union(3, 4));
        assert_eq!(u.find(4), 2);
        u.union(0, 3);
        assert_eq!(u.find(4), 0);
        assert_eq!(u.components(), 2);
    }
}
