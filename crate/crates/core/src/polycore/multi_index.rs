use std::fmt;

/// Exponent or derivative vector `(a_1, .., a_n)` with non-negative entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `e_i`, the unit index in slot `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Membership in `A_k`: every entry past the first `k` vanishes.
    pub fn in_leading(&self, k: usize) -> bool {
        self.0.iter().skip(k).all(|&a| a == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entry-wise difference, `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn with_entry(&self, i: usize, value: u32) -> Self {
        let mut v = self.0.clone();
        v[i] = value;
        Self(v)
    }

    /// `alpha! = prod alpha_i!` as a float.
    pub fn factorial_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|&a| (1..=a).map(f64::from).product::<f64>())
            .product()
    }

    /// All indices of length `n` with `|alpha| = order`, in lexicographic order.
    pub fn of_order(n: usize, order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, order, &mut out);
        out
    }

    /// Indices in `A_k` of length `n` with `|alpha| = order`, lexicographic.
    pub fn of_order_leading(n: usize, k: usize, order: u32) -> Vec<MultiIndex> {
        Self::of_order(k, order)
            .into_iter()
            .map(|a| {
                let mut v = a.0;
                v.resize(n, 0);
                MultiIndex(v)
            })
            .collect()
    }

    /// All indices with `|alpha| <= max_order`, graded then lexicographic.
    pub fn up_to_order(n: usize, max_order: u32) -> Vec<MultiIndex> {
        (0..=max_order).flat_map(|d| Self::of_order(n, d)).collect()
    }
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let n = cur.len();
    if n == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for a in 0..=remaining {
        cur[pos] = a;
        fill(cur, pos + 1, remaining - a, out);
    }
    cur[pos] = 0;
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::binomial;
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts_match_binomials() {
        for n in 1..=4usize {
            for d in 0..=7u32 {
                let all = MultiIndex::of_order(n, d);
                let expect = binomial(d as i64 + n as i64 - 1, n as i64 - 1);
                assert_eq!(all.len() as u64, expect, "n={n} d={d}");
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(|a| a.order() == d));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn leading_class() {
        let a = MultiIndex::of_order_leading(3, 1, 2);
        assert_eq!(a, vec![MultiIndex::new(vec![2, 0, 0])]);
        assert!(a[0].in_leading(1));
        assert!(!MultiIndex::new(vec![0, 1, 0]).in_leading(1));
        assert_eq!(MultiIndex::of_order_leading(2, 2, 1).len(), 2);
    }

    #[test]
    fn arithmetic() {
        let a = MultiIndex::new(vec![2, 1]);
        let b = MultiIndex::new(vec![1, 1]);
        assert_eq!(a.add(&b), MultiIndex::new(vec![3, 2]));
        assert_eq!(a.checked_sub(&b), Some(MultiIndex::new(vec![1, 0])));
        assert_eq!(b.checked_sub(&a), None);
        assert_eq!(a.factorial_f64(), 2.0);
    }
}
