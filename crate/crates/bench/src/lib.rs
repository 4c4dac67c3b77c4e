//! Seeded inputs shared by the benchmarks.

use ccstego::modem::SymbolStream;
use ccstego::seqlib::Sequence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_sequence(len: usize, seed: u64) -> Sequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sequence::new(
        (0..len)
            .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
            .collect(),
    )
    .expect("len > 0")
}

pub fn random_streams(channels: usize, symbols: usize, seed: u64) -> Vec<SymbolStream> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..channels)
        .map(|i| {
            SymbolStream::new(i, (0..symbols).map(|_| rng.random_range(0..16)).collect())
                .expect("symbols < 16")
        })
        .collect()
}

pub fn random_payload(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random()).collect()
}
