use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// The generator for sample `index` of a run seeded with `seed`.
///
/// ChaCha20 keyed by `seed` (expanded with `seed_from_u64`), on stream
/// `index`; streams never overlap, so samples are independent of scheduling.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
