//! Seeded random test data: vectors, candidate sets, S_h-linear sets, codes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::code::LinearCode;
use crate::correspond::greedy_vectors;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{FqMatrix, FqVector};
use crate::shset::ShSetCandidate;

pub fn random_vector<R: Rng + ?Sized>(field: &Field, r: usize, rng: &mut R) -> FqVector {
    let codes: Vec<usize> = (0..r).map(|_| rng.gen_range(0..field.q())).collect();
    FqVector::from_codes(field, &codes).expect("codes below q")
}

/// `size` distinct vectors of F_q^r in random order. With `include_zero` the
/// zero vector is one of them, otherwise it is excluded.
pub fn random_candidate<R: Rng + ?Sized>(
    field: &Field,
    r: usize,
    size: usize,
    h: usize,
    include_zero: bool,
    rng: &mut R,
) -> Result<ShSetCandidate> {
    let space = (field.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if (size as u128) > space - u128::from(!include_zero) || (include_zero && size == 0) {
        return Err(Error::PreconditionViolated(format!(
            "cannot pick {size} distinct vectors from F_{}^{r}",
            field.q()
        )));
    }
    let mut elems: Vec<FqVector> = Vec::with_capacity(size);
    if include_zero {
        elems.push(FqVector::zero(field, r));
    }
    while elems.len() < size {
        let v = random_vector(field, r, rng);
        if !v.is_zero() && !elems.contains(&v) {
            elems.push(v);
        }
    }
    elems.shuffle(rng);
    ShSetCandidate::new(field, r, elems, h)
}

/// A random S_h-linear set: the greedy extension of the seed set along a
/// shuffled listing of F_q^r, cut to at most `max_len` elements.
pub fn random_sh_set<R: Rng + ?Sized>(
    field: &Field,
    r: usize,
    h: usize,
    max_len: Option<usize>,
    include_zero: bool,
    rng: &mut R,
) -> Result<ShSetCandidate> {
    let space = (field.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if space > crate::shset::SEARCH_SPACE_CAP {
        return Err(Error::SpaceTooLarge { size: space });
    }
    let mut order: Vec<FqVector> = (1..space).map(|x| FqVector::decode(field, r, x)).collect();
    order.shuffle(rng);
    let seed = if include_zero {
        vec![FqVector::zero(field, r)]
    } else {
        Vec::new()
    };
    let mut elems = greedy_vectors(field, r, h, &seed, &order)?;
    elems.truncate(max_len.unwrap_or(usize::MAX));
    ShSetCandidate::new(field, r, elems, h)
}

/// A random [n,k'] code with k' <= k, from a uniformly random k x n
/// generator matrix.
pub fn random_code<R: Rng + ?Sized>(field: &Field, n: usize, k: usize, rng: &mut R) -> LinearCode {
    let rows: Vec<FqVector> = (0..k).map(|_| random_vector(field, n, rng)).collect();
    let g = FqMatrix::from_rows(field, n, &rows).expect("rows have length n");
    LinearCode::from_generator(&g)
}
