//! Counter-based symbol streams.
//!
//! A stream value is a pure function of `(key, counter)`, so the symbol at a
//! given position never depends on evaluation order or worker count.

/// splitmix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child key, e.g. a per-trial seed from a run seed.
#[inline]
pub fn derive(key: u64, index: u64) -> u64 {
    mix64(key ^ mix64(index.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

/// The `counter`-th value of the stream keyed by `key`.
#[inline]
pub fn value(key: u64, counter: u64) -> u64 {
    mix64(mix64(key).wrapping_add(counter.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// A symbol in `[0, alphabet)`. Uses the high bits, whose bias for small
/// alphabets is below 2^-50.
#[inline]
pub fn symbol(key: u64, counter: u64, alphabet: usize) -> u8 {
    (((value(key, counter) >> 11) as u128 * alphabet as u128) >> 53) as u8
}

/// Sequential convenience wrapper over the counter stream.
#[derive(Debug, Clone)]
pub struct Stream {
    key: u64,
    counter: u64,
}

impl Stream {
    pub fn new(key: u64) -> Self {
        Self { key, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = value(self.key, self.counter);
        self.counter += 1;
        v
    }

    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    pub fn symbol(&mut self, alphabet: usize) -> u8 {
        let s = symbol(self.key, self.counter, alphabet);
        self.counter += 1;
        s
    }
}
