//! Linear algebra over GF(2) on packed bit rows.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut r = BitRow::zeros(len);
        for i in support {
            r.flip(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if self.get(i) != v {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn dot(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Gf2Outcome {
    /// One solution; free variables are set to 0.
    Solvable { x: Vec<bool> },
    /// These rows sum to `0 = 1`.
    Inconsistent { rows: Vec<usize> },
}

/// Gaussian elimination on rows with the given supports, tracking row combinations.
pub fn solve(ncols: usize, rows: &[BitRow], rhs: &[bool]) -> Gf2Outcome {
    assert_eq!(rows.len(), rhs.len());
    let nrows = rows.len();
    let mut a: Vec<BitRow> = rows.to_vec();
    let mut b: Vec<bool> = rhs.to_vec();
    let mut hist: Vec<BitRow> = (0..nrows).map(|i| BitRow::from_support(nrows, [i])).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| a[i].get(col)) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        hist.swap(r, p);
        let (pivot_row, pivot_b, pivot_h) = (a[r].clone(), b[r], hist[r].clone());
        for i in 0..nrows {
            if i != r && a[i].get(col) {
                a[i].xor_assign(&pivot_row);
                b[i] ^= pivot_b;
                hist[i].xor_assign(&pivot_h);
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if let Some(i) = (r..nrows).find(|&i| b[i]) {
        return Gf2Outcome::Inconsistent { rows: hist[i].ones().collect() };
    }
    let mut x = vec![false; ncols];
    for &(row, col) in &pivots {
        x[col] = b[row];
    }
    Gf2Outcome::Solvable { x }
}

/// Checks `A x = b` directly.
pub fn satisfies(rows: &[BitRow], rhs: &[bool], x: &[bool]) -> bool {
    let xr = BitRow::from_support(x.len(), x.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i));
    rows.iter().zip(rhs).all(|(r, &b)| r.dot(&xr) == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(ncols: usize, rows: &[BitRow], rhs: &[bool]) -> bool {
        (0u32..1 << ncols).any(|m| {
            let x: Vec<bool> = (0..ncols).map(|i| m >> i & 1 == 1).collect();
            satisfies(rows, rhs, &x)
        })
    }

    #[test]
    fn small_cases() {
        let rows = vec![BitRow::from_support(2, [0, 1]), BitRow::from_support(2, [0]), BitRow::from_support(2, [1])];
        assert_eq!(solve(2, &rows, &[true, true, true]), Gf2Outcome::Inconsistent { rows: vec![0, 1, 2] });
        let Gf2Outcome::Solvable { x } = solve(2, &rows, &[true, true, false]) else { panic!() };
        assert_eq!(x, vec![true, false]);
        assert_eq!(solve(0, &[BitRow::zeros(0)], &[true]), Gf2Outcome::Inconsistent { rows: vec![0] });
    }

    #[test]
    fn wide_rows() {
        let n = 150;
        let rows: Vec<BitRow> = (0..n - 1).map(|i| BitRow::from_support(n, [i, i + 1])).collect();
        let rhs: Vec<bool> = (0..n - 1).map(|i| i % 3 == 0).collect();
        let Gf2Outcome::Solvable { x } = solve(n, &rows, &rhs) else { panic!() };
        assert!(satisfies(&rows, &rhs, &x));
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(
            ncols in 0usize..6,
            raw in prop::collection::vec((any::<u8>(), any::<bool>()), 0..7),
        ) {
            let rows: Vec<BitRow> =
                raw.iter().map(|(m, _)| BitRow::from_support(ncols, (0..ncols).filter(|i| m >> i & 1 == 1))).collect();
            let rhs: Vec<bool> = raw.iter().map(|&(_, b)| b).collect();
            match solve(ncols, &rows, &rhs) {
                Gf2Outcome::Solvable { x } => prop_assert!(satisfies(&rows, &rhs, &x)),
                Gf2Outcome::Inconsistent { rows: cert } => {
                    prop_assert!(!brute(ncols, &rows, &rhs));
                    let mut sum = BitRow::zeros(ncols);
                    let mut parity = false;
                    for &i in &cert {
                        sum.xor_assign(&rows[i]);
                        parity ^= rhs[i];
                    }
                    prop_assert!(sum.is_zero() && parity);
                }
            }
        }
    }
}
