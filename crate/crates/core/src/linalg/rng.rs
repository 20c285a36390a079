//! Seedable, splittable random number generator.
//!
//! The generator is SplitMix64: the state is a counter advanced by a fixed
//! odd increment, and each output is a bit-mix of the counter. The whole
//! stream is a pure function of the 64-bit seed, identical on every
//! platform, which is what dataset reproducibility rests on.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
    spare_normal: Option<f64>,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed,
            spare_normal: None,
        }
    }

    /// Derives an independent child stream from the current state and a
    /// stream index. The parent is not advanced, so `base.split(i)` is a
    /// pure function of `(seed, i)` — one stream per dataset record makes
    /// generation order-independent and parallelizable.
    pub fn split(&self, stream: u64) -> Rng {
        Rng::new(mix64(self.state ^ mix64(stream.wrapping_add(0xA076_1D64_78BD_642F))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)` via the multiply-shift reduction.
    pub fn next_range(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (((self.next_u64() as u128) * (n as u128)) >> 64) as usize
    }

    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_uniform() < p
    }

    /// Standard normal draw by the Marsaglia polar method. The second
    /// variate of each accepted pair is cached, so draws come in a fixed
    /// per-stream order.
    pub fn next_standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_uniform() - 1.0;
            let v = 2.0 * self.next_uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * f);
                return u * f;
            }
        }
    }

    pub fn next_normal(&mut self, mean: f64, std: f64) -> f64 {
        mean + std * self.next_standard_normal()
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_range(i + 1);
            items.swap(i, j);
        }
    }
}
