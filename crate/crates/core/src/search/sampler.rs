//! Seeded sampling. Every work item gets its own ChaCha8 stream so results do
//! not depend on scheduling.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{Elem, Group};
use crate::set::GSubset;

/// FNV-1a, used to give every group its own seed.
fn fnv1a(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    /// Stream `item` of the generator keyed by `(seed, label)`.
    pub fn new(seed: u64, label: &str, item: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label).rotate_left(17));
        rng.set_stream(item);
        Sampler { rng }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn element(&mut self, g: &Group) -> Elem {
        Elem(self.rng.gen_range(0..g.order()) as u32)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        use rand::seq::SliceRandom;
        items.shuffle(&mut self.rng);
    }

    /// Uniform subset of the given size.
    pub fn subset_of_size(&mut self, g: &Group, k: usize) -> GSubset {
        let idx = sample(&mut self.rng, g.order(), k.min(g.order()));
        GSubset::from_elems(g, idx.into_iter().map(|i| Elem(i as u32)))
    }

    /// Uniform among non-empty subsets with at most `cap` elements.
    pub fn nonempty_subset(&mut self, g: &Group, cap: usize) -> GSubset {
        let n = g.order();
        let cap = cap.clamp(1, n);
        let weights: Vec<f64> = (1..=cap).map(|k| binomial(n, k)).collect();
        let total: f64 = weights.iter().sum();
        let mut t = self.rng.gen::<f64>() * total;
        let mut k = cap;
        for (i, w) in weights.iter().enumerate() {
            if t < *w {
                k = i + 1;
                break;
            }
            t -= w;
        }
        self.subset_of_size(g, k)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
