//! Subsets of a family of at most 64 members, as bit masks.

use alloc::vec::Vec;

pub type Mask = u64;

pub fn indices(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Mask {
    idx.into_iter().fold(0, |m, i| m | (1 << i))
}

pub fn full(n: usize) -> Mask {
    if n >= 64 { Mask::MAX } else { (1 << n) - 1 }
}

/// All `k`-element subsets of `universe`, in lexicographic order of their
/// sorted index lists.
pub fn combinations(universe: Mask, k: usize) -> Combinations {
    let items = indices(universe);
    let done = k > items.len();
    Combinations { items, pos: (0..k).collect(), done }
}

pub struct Combinations {
    items: Vec<usize>,
    pos: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let out = from_indices(self.pos.iter().map(|&p| self.items[p]));
        let n = self.items.len();
        let k = self.pos.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.pos[i] < n - k + i {
                self.pos[i] += 1;
                for j in i + 1..k {
                    self.pos[j] = self.pos[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(full(5), 2).count(), 10);
        assert_eq!(combinations(full(5), 0).collect::<Vec<_>>(), [0]);
        assert_eq!(combinations(full(3), 4).count(), 0);
        assert_eq!(combinations(0b1011, 2).collect::<Vec<_>>(), [0b0011, 0b1001, 0b1010]);
    }
}
