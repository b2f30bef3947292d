//! S_h-linear sets over finite fields and their correspondence with linear
//! codes of minimum distance at least 2h+1.
//!
//! * [`gf`]: table-driven arithmetic in F_q, q = p^m <= 256.
//! * [`linalg`]: vectors, matrices, RREF, kernels, and packed F_2 rank.
//! * [`code`]: linear codes and two independent minimum-distance algorithms.
//! * [`shset`]: h-combinations, verification with witnesses, maximum-set search.
//! * [`correspond`]: code to set, set to code, and greedy maximal extension.
//! * [`bounds`]: V̄_q(h,n) and table lower bounds from code-parameter snapshots.

pub mod bounds;
pub mod code;
pub mod combin;
pub mod correspond;
pub mod error;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod sample;
pub mod shset;

pub use code::{Distance, LinearCode};
pub use correspond::CorrespondenceReport;
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use linalg::{FqMatrix, FqVector};
pub use shset::{CollisionWitness, HCombination, Mode, ShSetCandidate, Verdict};
