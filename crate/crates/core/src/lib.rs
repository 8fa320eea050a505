//! Summarize, sample, index and search collections of fixed-length data series.
//!
//! The pipeline mirrors a typical iSAX workflow:
//!
//! 1. generate or load a [`Dataset`] of z-normalized series ([`datagen`], [`format`]);
//! 2. summarize each series with PAA or an SoS-preserving embedding ([`summarization`]);
//! 3. quantize summaries into SAX words and sort them by their bit-interleaved
//!    InvSAX key to draw equal-interval samples ([`sampling`]);
//! 4. build an iSAX tree and answer budget-limited approximate queries ([`index`]);
//! 5. score summaries and answers with the quality measures in [`eval`].

pub mod datagen;
pub mod error;
pub mod eval;
pub mod format;
pub mod index;
pub mod sampling;
pub mod series;
pub mod summarization;

pub use error::{Error, Result};
pub use series::{euclidean, znormalize, DataSeries, Dataset};
