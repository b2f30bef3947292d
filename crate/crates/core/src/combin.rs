//! Subset enumeration and counting helpers.

/// Binomial coefficient, 0 when k > n. Saturates at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n-i) / (i+1) is exact because acc = C(n, i)
        let Some(next) = acc.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        acc = next / (i + 1) as u128;
    }
    acc
}

/// Number of k-dimensional subspaces of F_q^n. Saturates at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let q = q as u128;
    let mut acc: u128 = 1;
    for j in 1..=k {
        // acc = [n, j-1]_q, and [n, j]_q = acc (q^(n-j+1) - 1) / (q^j - 1)
        let num = q.checked_pow((n - j + 1) as u32).map(|x| x - 1);
        match num.and_then(|x| acc.checked_mul(x)) {
            Some(x) => acc = x / (q.pow(j as u32) - 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// k-subsets of 0..n in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexSubsets {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl LexSubsets {
    pub fn new(n: usize, k: usize) -> LexSubsets {
        LexSubsets {
            n,
            cur: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        // rightmost position that can still move
        match (0..k).rev().find(|&i| self.cur[i] < self.n - k + i) {
            Some(i) => {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// k-subsets of 0..n in colexicographic order (ordered by largest element
/// first, then the next largest, ...).
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> ColexSubsets {
        ColexSubsets {
            n,
            cur: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        // lowest position whose element can grow without meeting its successor
        let limit = |i: usize, cur: &[usize]| if i + 1 < k { cur[i + 1] } else { self.n };
        match (0..k).find(|&i| self.cur[i] + 1 < limit(i, &self.cur)) {
            Some(i) => {
                self.cur[i] += 1;
                for j in 0..i {
                    self.cur[j] = j;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(13, 3), 286);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(8, 3, 2), 97155);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
        assert_eq!(gaussian_binomial(8, 5, 2), 97155);
        assert_eq!(gaussian_binomial(6, 3, 3), 33880);
        assert_eq!(gaussian_binomial(40, 30, 2), u128::MAX);
        assert_eq!(gaussian_binomial(300, 1, 2), u128::MAX);
        assert_eq!(binomial(200, 100), u128::MAX);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn lex_order() {
        let all: Vec<Vec<usize>> = LexSubsets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(LexSubsets::new(3, 0).count(), 1);
        assert_eq!(LexSubsets::new(2, 3).count(), 0);
    }

    #[test]
    fn colex_order() {
        let all: Vec<Vec<usize>> = ColexSubsets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(ColexSubsets::new(3, 0).count(), 1);
        assert_eq!(ColexSubsets::new(2, 3).count(), 0);
    }

    #[test]
    fn counts_match_binomial() {
        for n in 0..9 {
            for k in 0..=n + 1 {
                assert_eq!(LexSubsets::new(n, k).count() as u128, binomial(n, k));
                assert_eq!(ColexSubsets::new(n, k).count() as u128, binomial(n, k));
            }
        }
    }
}
