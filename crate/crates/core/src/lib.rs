//! Spread-spectrum steganography over complete complementary codes.
//!
//! Secret bytes are split into 16-ary symbols, spread over an orthogonal
//! grid of code slots, and added to keyed mid-band DCT coefficients of the
//! cover's luma plane. Extraction is informed: the cover is required, and a
//! matched-filter bank recovers the symbols from the coefficient difference.

pub mod analysis;
pub mod error;
pub mod imaging;
pub mod modem;
pub mod seqlib;
pub mod stego;

pub use error::{Error, Result};
