//! Dense vectors and matrices over F_q.

mod packed;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use packed::{packed_rank, BitVector};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A vector of F_q^r.
#[derive(Clone)]
pub struct FqVector {
    field: Field,
    coords: Vec<Elem>,
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FqVector {
    /// Whitespace-separated element codes, the vector file line format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl PartialEq for FqVector {
    fn eq(&self, other: &FqVector) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FqVector {}

impl Hash for FqVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FqVector {
    fn partial_cmp(&self, other: &FqVector) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates, which is the order of [`FqVector::encode`].
impl Ord for FqVector {
    fn cmp(&self, other: &FqVector) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl FqVector {
    pub fn new(field: &Field, coords: Vec<Elem>) -> Result<FqVector> {
        if let Some(bad) = coords.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidElement {
                code: bad.code() as usize,
                q: field.q(),
            });
        }
        Ok(FqVector {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_codes(field: &Field, codes: &[usize]) -> Result<FqVector> {
        let coords = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(FqVector {
            field: field.clone(),
            coords,
        })
    }

    pub(crate) fn from_raw(field: &Field, coords: Vec<Elem>) -> FqVector {
        FqVector {
            field: field.clone(),
            coords,
        }
    }

    pub fn zero(field: &Field, r: usize) -> FqVector {
        FqVector::from_raw(field, vec![Elem::ZERO; r])
    }

    /// The standard basis vector e_i (0-based `i`).
    pub fn unit(field: &Field, r: usize, i: usize) -> FqVector {
        let mut v = FqVector::zero(field, r);
        v.coords[i] = Elem::ONE;
        v
    }

    /// Sum of unit vectors e_i over the given 1-based indices, each scaled by
    /// its coefficient.
    pub fn from_terms(field: &Field, r: usize, terms: &[(usize, usize)]) -> Result<FqVector> {
        let mut v = FqVector::zero(field, r);
        for &(idx, coef) in terms {
            if idx == 0 || idx > r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: idx,
                });
            }
            let c = field.elem(coef)?;
            v.coords[idx - 1] = field.add(v.coords[idx - 1], c);
        }
        Ok(v)
    }

    /// Decodes the integer produced by [`FqVector::encode`].
    pub fn decode(field: &Field, r: usize, mut code: u128) -> FqVector {
        let q = field.q() as u128;
        let mut coords = vec![Elem::ZERO; r];
        for c in coords.iter_mut().rev() {
            *c = Elem::from_code((code % q) as u8);
            code /= q;
        }
        FqVector::from_raw(field, coords)
    }

    /// Base-q integer with the first coordinate most significant, so the
    /// integer order agrees with `Ord`.
    pub fn encode(&self) -> u128 {
        let q = self.field.q() as u128;
        self.coords
            .iter()
            .fold(0u128, |acc, c| acc * q + c.code() as u128)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> Elem {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    fn check_compatible(&self, other: &FqVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FqVector) -> Result<FqVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(Elem::ONE, other);
        Ok(out)
    }

    pub fn sub(&self, other: &FqVector) -> Result<FqVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(self.field.neg(Elem::ONE), other);
        Ok(out)
    }

    pub fn scale(&self, a: Elem) -> FqVector {
        let row = self.field.mul_row(a.code());
        let coords = self
            .coords
            .iter()
            .map(|c| Elem::from_code(row[c.code() as usize]))
            .collect();
        FqVector::from_raw(&self.field, coords)
    }

    /// self += a * other. Lengths must agree.
    pub(crate) fn add_scaled_assign(&mut self, a: Elem, other: &FqVector) {
        debug_assert_eq!(self.len(), other.len());
        let row = self.field.mul_row(a.code());
        for (x, y) in self.coords.iter_mut().zip(&other.coords) {
            let t = row[y.code() as usize];
            *x = Elem::from_code(self.field.add_code(x.code(), t));
        }
    }

    /// Hamming distance.
    pub fn distance(&self, other: &FqVector) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// The vector with a zero coordinate appended.
    pub fn extend_zero(&self) -> FqVector {
        let mut coords = self.coords.clone();
        coords.push(Elem::ZERO);
        FqVector::from_raw(&self.field, coords)
    }
}

/// A dense row-major matrix over F_q.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over F_{}", self.rows, self.cols, self.field.q())?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<FqMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidElement {
                code: bad.code() as usize,
                q: field.q(),
            });
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_codes(field: &Field, rows: &[Vec<usize>]) -> Result<FqMatrix> {
        let vs = rows
            .iter()
            .map(|r| FqVector::from_codes(field, r))
            .collect::<Result<Vec<_>>>()?;
        let cols = vs.first().map_or(0, |v| v.len());
        FqMatrix::from_rows(field, cols, &vs)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Stacks vectors as rows. `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: &Field, cols: usize, rows: &[FqVector]) -> Result<FqMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for v in rows {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            if v.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: v.len(),
                });
            }
            data.extend_from_slice(v.coords());
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Places vectors side by side as columns.
    pub fn from_columns(field: &Field, rows: usize, cols: &[FqVector]) -> Result<FqMatrix> {
        Ok(FqMatrix::from_rows(field, rows, cols)?.transpose())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row(&self, i: usize) -> FqVector {
        FqVector::from_raw(&self.field, self.row_slice(i).to_vec())
    }

    pub fn column(&self, j: usize) -> FqVector {
        FqVector::from_raw(&self.field, (0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn row_vectors(&self) -> Vec<FqVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<FqVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let row = f.mul_row(a.code());
                for j in 0..other.cols {
                    let t = row[other.get(l, j).code() as usize];
                    let cur = out.get(i, j).code();
                    out.set(i, j, Elem::from_code(f.add_code(cur, t)));
                }
            }
        }
        Ok(out)
    }

    /// M * v^T as a vector of length `rows`.
    pub fn mul_vec(&self, v: &FqVector) -> Result<FqVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        let coords = (0..self.rows)
            .map(|i| {
                let s = self.row_slice(i).iter().zip(v.coords()).fold(0u8, |acc, (a, b)| {
                    f.add_code(acc, f.mul_code(a.code(), b.code()))
                });
                Elem::from_code(s)
            })
            .collect();
        Ok(FqVector::from_raw(f, coords))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Reduced row echelon form via Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv_code(m.get(r, c).code());
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.add_row_multiple(i, r, f.neg_code(factor.code()));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of {x : M x^T = 0}, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<FqVector> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(i, free));
                }
                FqVector::from_raw(f, v)
            })
            .collect()
    }

    /// The nonzero rows of the RREF, i.e. a basis of the row space.
    pub fn row_space_basis(&self) -> FqMatrix {
        let Rref { matrix, rank, .. } = self.rref();
        let mut data = matrix.data;
        data.truncate(rank * self.cols);
        FqMatrix {
            field: self.field.clone(),
            rows: rank,
            cols: self.cols,
            data,
        }
    }

    /// Keeps the rows at the given positions, in that order.
    pub fn select_rows(&self, rows: &[usize]) -> FqMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row_slice(i));
        }
        FqMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Keeps the columns at the given positions, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        let mut out = FqMatrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, a: u8) {
        let row = self.field.mul_row(a).to_vec();
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = Elem::from_code(row[x.code() as usize]);
        }
    }

    /// row[dst] += a * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, a: u8) {
        let f = self.field.clone();
        let row = f.mul_row(a);
        for j in 0..self.cols {
            let t = row[self.data[src * self.cols + j].code() as usize];
            let x = &mut self.data[dst * self.cols + j];
            *x = Elem::from_code(f.add_code(x.code(), t));
        }
    }
}

fn common_shape(vs: &[FqVector]) -> Result<Option<(Field, usize)>> {
    let Some(first) = vs.first() else {
        return Ok(None);
    };
    for v in &vs[1..] {
        if v.field() != first.field() {
            return Err(Error::FieldMismatch);
        }
        if v.len() != first.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: v.len(),
            });
        }
    }
    Ok(Some((first.field().clone(), first.len())))
}

/// Rank of the matrix whose rows are `vs`. The empty list has rank 0.
pub fn rank_of(vs: &[FqVector]) -> Result<usize> {
    match common_shape(vs)? {
        None => Ok(0),
        Some((f, r)) => Ok(FqMatrix::from_rows(&f, r, vs)?.rank()),
    }
}

pub fn is_linearly_independent(vs: &[FqVector]) -> Result<bool> {
    Ok(rank_of(vs)? == vs.len())
}

/// Whether `v` lies in the span of `vs`.
pub fn in_span(v: &FqVector, vs: &[FqVector]) -> Result<bool> {
    if vs.is_empty() {
        return Ok(v.is_zero());
    }
    let mut all = vs.to_vec();
    all.push(v.clone());
    common_shape(&all)?;
    Ok(rank_of(vs)? == rank_of(&all)?)
}

/// Positions of a maximal independent sublist, scanning in input order and
/// keeping a vector iff it raises the rank.
pub fn basis_indices(vs: &[FqVector]) -> Result<Vec<usize>> {
    let Some((f, r)) = common_shape(vs)? else {
        return Ok(Vec::new());
    };
    // incremental echelon basis: rows kept with their pivot column
    let mut echelon: Vec<(usize, FqVector)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vs.iter().enumerate() {
        let mut w = v.clone();
        for (p, row) in &echelon {
            let c = w.get(*p);
            if !c.is_zero() {
                w.add_scaled_assign(f.neg(c), row);
            }
        }
        if let Some(p) = (0..r).find(|&j| !w.get(j).is_zero()) {
            let inv = f.inv(w.get(p)).expect("nonzero pivot");
            let w = w.scale(inv);
            // keep earlier rows reduced at the new pivot
            for (_, row) in echelon.iter_mut() {
                let c = row.get(p);
                if !c.is_zero() {
                    row.add_scaled_assign(f.neg(c), &w);
                }
            }
            echelon.push((p, w));
            kept.push(idx);
        }
    }
    Ok(kept)
}

/// A maximal independent sublist of `vs`, first-seen wins.
pub fn extract_basis(vs: &[FqVector]) -> Result<Vec<FqVector>> {
    Ok(basis_indices(vs)?.into_iter().map(|i| vs[i].clone()).collect())
}
