//! Planar partial matchings of points on a circle.

/// Memoized M(m) and Catalan tables.
#[derive(Clone, Debug)]
pub struct MatchingCounter {
    m: Vec<u128>,
    catalan: Vec<u128>,
}

impl Default for MatchingCounter {
    fn default() -> Self {
        MatchingCounter { m: vec![1, 1], catalan: vec![1] }
    }
}

impl MatchingCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// M(m) = M(m-1) + sum over m1 + m2 = m-2 of M(m1) M(m2).
    pub fn count(&mut self, m: usize) -> u128 {
        while self.m.len() <= m {
            let k = self.m.len();
            let split: u128 = (0..=k - 2).map(|a| self.m[a] * self.m[k - 2 - a]).sum();
            self.m.push(self.m[k - 1] + split);
        }
        self.m[m]
    }

    pub fn catalan(&mut self, m: usize) -> u128 {
        while self.catalan.len() <= m {
            let k = self.catalan.len();
            let c: u128 = (0..k).map(|a| self.catalan[a] * self.catalan[k - 1 - a]).sum();
            self.catalan.push(c);
        }
        self.catalan[m]
    }

    /// The looser bound used on the way to the Catalan comparison:
    /// sum over m1 + m2 = m-1 of M(m1) M(m2).
    pub fn convolution_bound(&mut self, m: usize) -> u128 {
        if m == 0 {
            return 1;
        }
        self.count(m);
        (0..m).map(|a| self.m[a] * self.m[m - 1 - a]).sum()
    }
}

pub fn matching_count(m: usize) -> u128 {
    MatchingCounter::new().count(m)
}

pub fn catalan(m: usize) -> u128 {
    MatchingCounter::new().catalan(m)
}

/// Counts non-crossing partial matchings of m points on a circle by listing
/// every partial matching and testing all pairs of chords.
pub fn brute_force_planar_matchings(m: usize) -> u64 {
    fn rec(i: usize, m: usize, partner: &mut Vec<Option<usize>>, chords: &mut Vec<(usize, usize)>, count: &mut u64) {
        if i == m {
            let crossing = chords.iter().enumerate().any(|(x, &(a, b))| {
                chords[x + 1..].iter().any(|&(c, e)| (a < c && c < b && b < e) || (c < a && a < e && e < b))
            });
            if !crossing {
                *count += 1;
            }
            return;
        }
        if partner[i].is_some() {
            return rec(i + 1, m, partner, chords, count);
        }
        // i stays single
        rec(i + 1, m, partner, chords, count);
        for j in i + 1..m {
            if partner[j].is_none() {
                partner[i] = Some(j);
                partner[j] = Some(i);
                chords.push((i, j));
                rec(i + 1, m, partner, chords, count);
                chords.pop();
                partner[i] = None;
                partner[j] = None;
            }
        }
    }
    let mut count = 0;
    rec(0, m, &mut vec![None; m], &mut Vec::new(), &mut count);
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let want = [1u128, 1, 2, 4, 9, 21, 51];
        let mut mc = MatchingCounter::new();
        for (m, &w) in want.iter().enumerate() {
            assert_eq!(mc.count(m), w);
        }
        assert_eq!(mc.catalan(4), 14);
    }

    #[test]
    fn oracle_small() {
        assert_eq!(brute_force_planar_matchings(0), 1);
        assert_eq!(brute_force_planar_matchings(2), 2);
        assert_eq!(brute_force_planar_matchings(3), 4);
        assert_eq!(brute_force_planar_matchings(6) as u128, matching_count(6));
    }
}
