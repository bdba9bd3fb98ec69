//! Bitmask evaluation for groups of order at most 64, used by the surveys.

use crate::group::Group;

pub(crate) const MASK_LIMIT: usize = 64;

/// Cayley tables flattened into bytes.
pub(crate) struct MaskGroup {
    n: usize,
    add: Vec<u8>,
    sub: Vec<u8>,
}

/// What one pass over `A × B` yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct MaskEval {
    pub sumset: u64,
    pub restricted: u64,
    /// Every exception has exactly `ls` representations.
    pub counts_ok: bool,
}

impl MaskGroup {
    pub(crate) fn new(g: &Group) -> Option<MaskGroup> {
        let n = g.order();
        if n > MASK_LIMIT {
            return None;
        }
        let mut add = Vec::with_capacity(n * n);
        let mut sub = Vec::with_capacity(n * n);
        for x in g.elements() {
            for y in g.elements() {
                add.push(g.add(x, y).0 as u8);
                sub.push(g.sub(x, y).0 as u8);
            }
        }
        Some(MaskGroup { n, add, sub })
    }

    pub(crate) fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub(crate) fn eval(&self, a: u64, b: u64, s: u64, ls: usize) -> MaskEval {
        let mut reps = [0u8; MASK_LIMIT];
        let (mut sumset, mut restricted) = (0u64, 0u64);
        for x in bits(a) {
            let row = x * self.n;
            for y in bits(b) {
                let z = self.add[row + y] as usize;
                reps[z] += 1;
                sumset |= 1 << z;
                if s >> self.sub[row + y] & 1 == 0 {
                    restricted |= 1 << z;
                }
            }
        }
        let counts_ok = bits(sumset & !restricted).all(|z| reps[z] as usize == ls);
        MaskEval {
            sumset,
            restricted,
            counts_ok,
        }
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// All `n`-bit masks with exactly `k` bits set, in increasing order.
pub(crate) fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut next = if k == 0 {
        Some(0)
    } else if k <= n {
        Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c);
            r.and_then(|r| {
                let v = (((r ^ cur) >> 2) / c) | r;
                (v <= limit).then_some(v)
            })
        };
        Some(cur)
    })
}
