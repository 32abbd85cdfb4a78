//! Reproducible random streams.
//!
//! Every Monte-Carlo realization draws from its own ChaCha stream selected by
//! `(master_seed, realization_index)`, so results do not depend on how the
//! realizations are scheduled across worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c64, CMatrix, CVector};

pub type SimRng = ChaCha8Rng;

/// Stream for realization `index` under `master_seed`.
pub fn substream(master_seed: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// One draw from CN(0, 1): real and imaginary parts each N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> c64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. CN(0, 1) entries, filled row by row.
pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let data: Vec<c64> = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    CMatrix::from_row_slice(rows, cols, &data)
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> CVector {
    CVector::from_iterator(len, (0..len).map(|_| complex_gaussian(rng)))
}
