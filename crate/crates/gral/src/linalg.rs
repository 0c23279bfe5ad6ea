//! Exact dense linear algebra over the coefficient rings.
//!
//! Subspaces over a field are kept in reduced row echelon form, which is a
//! unique canonical form, so subspace equality is row-by-row equality.
//! Over ℤ the rows are kept in Hermite normal form (positive pivots, entries
//! above a pivot reduced into `[0, pivot)`), the canonical form for lattices;
//! membership is decided by divisibility-aware reduction.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::scalar::{CoefficientRing, Scalar};
use crate::{Error, Result};

pub fn zero_vec(ring: CoefficientRing, n: usize) -> Vec<Scalar> {
    vec![ring.zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// v += c * w
pub fn add_scaled(v: &mut [Scalar], w: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (vi, wi) in v.iter_mut().zip(w) {
        if !wi.is_zero() {
            *vi = vi.add(&wi.mul(c));
        }
    }
}

/// v -= c * w
pub fn sub_scaled(v: &mut [Scalar], w: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (vi, wi) in v.iter_mut().zip(w) {
        if !wi.is_zero() {
            *vi = vi.sub_mul(c, wi);
        }
    }
}

pub fn scale(v: &mut [Scalar], c: &Scalar) {
    for vi in v.iter_mut() {
        *vi = vi.mul(c);
    }
}

fn leading(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// A span of vectors in canonical echelon form (RREF over fields, HNF over ℤ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ring: CoefficientRing,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(ring: CoefficientRing, ambient: usize) -> Self {
        Subspace {
            ring,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(ring: CoefficientRing, ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        let mut s = Self::empty(ring, ambient);
        if ring == CoefficientRing::Integers {
            s.rows = vecs.to_vec();
            s.renormalize_integer();
        } else {
            for v in vecs {
                s.insert(v.clone());
            }
        }
        s
    }

    /// Span of a set of standard basis vectors.
    pub fn coordinate(ring: CoefficientRing, ambient: usize, idxs: &[usize]) -> Self {
        let mut sorted: Vec<usize> = idxs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let rows = sorted
            .iter()
            .map(|&i| {
                let mut v = zero_vec(ring, ambient);
                v[i] = ring.one();
                v
            })
            .collect();
        Subspace {
            ring,
            ambient,
            rows,
            pivots: sorted,
        }
    }

    pub fn full(ring: CoefficientRing, ambient: usize) -> Self {
        Self::coordinate(ring, ambient, &(0..ambient).collect::<Vec<_>>())
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        if self.ring == CoefficientRing::Integers {
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                if v[c].is_zero() {
                    continue;
                }
                let (q, _) = int_div_rem_floor(&v[c], &row[c]);
                let q = Scalar::Integer(q);
                sub_scaled(&mut v, row, &q);
            }
        } else {
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                if !v[c].is_zero() {
                    let c_val = v[c].clone();
                    sub_scaled(&mut v, row, &c_val);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Inserts a vector, keeping canonical form. Returns true if dim grew.
    /// Over a field this is an incremental RREF update; over ℤ the Hermite
    /// form is recomputed.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient);
        if self.ring == CoefficientRing::Integers {
            if self.contains(&v) {
                return false;
            }
            self.rows.push(v);
            self.renormalize_integer();
            return true;
        }
        let mut v = self.reduce(v);
        let Some(lead) = leading(&v) else {
            return false;
        };
        let inv = v[lead].inv().expect("field scalar");
        scale(&mut v, &inv);
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let c = row[lead].clone();
                sub_scaled(row, &v, &c);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    fn renormalize_integer(&mut self) {
        let (rows, pivots) = hermite_normal_form(std::mem::take(&mut self.rows), self.ambient);
        self.rows = rows;
        self.pivots = pivots;
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        if self.ring == CoefficientRing::Integers {
            s.rows.extend(other.rows.iter().cloned());
            s.renormalize_integer();
        } else {
            for r in &other.rows {
                s.insert(r.clone());
            }
        }
        s
    }

    /// Intersection via the Zassenhaus block trick; fields only.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if !self.ring.is_field() {
            return Err(Error::FieldRequired("subspace intersection"));
        }
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut block: Vec<Vec<Scalar>> = Vec::new();
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            block.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(zero_vec(self.ring, n));
            block.push(row);
        }
        let (rref, _) = row_reduce(block, 2 * n, self.ring);
        let mut out = Subspace::empty(self.ring, n);
        for row in rref {
            if row[..n].iter().all(Scalar::is_zero) {
                out.insert(row[n..].to_vec());
            }
        }
        Ok(out)
    }

    /// Intersection with the span of a set of standard coordinates; exact
    /// over every ring (column permutation + echelon, keep rows supported on
    /// the chosen coordinates).
    pub fn intersect_coordinate(&self, idxs: &[usize]) -> Subspace {
        let mut inside = vec![false; self.ambient];
        for &i in idxs {
            inside[i] = true;
        }
        let outside: Vec<usize> = (0..self.ambient).filter(|&i| !inside[i]).collect();
        let inside_cols: Vec<usize> = (0..self.ambient).filter(|&i| inside[i]).collect();
        let permuted: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| {
                outside
                    .iter()
                    .chain(inside_cols.iter())
                    .map(|&c| r[c].clone())
                    .collect()
            })
            .collect();
        let reduced = if self.ring == CoefficientRing::Integers {
            hermite_normal_form(permuted, self.ambient).0
        } else {
            row_reduce(permuted, self.ambient, self.ring).0
        };
        let k = outside.len();
        let mut out = Subspace::empty(self.ring, self.ambient);
        let mut kept: Vec<Vec<Scalar>> = Vec::new();
        for row in reduced {
            if row[..k].iter().all(Scalar::is_zero) {
                let mut v = zero_vec(self.ring, self.ambient);
                for (j, &c) in inside_cols.iter().enumerate() {
                    v[c] = row[k + j].clone();
                }
                kept.push(v);
            }
        }
        if self.ring == CoefficientRing::Integers {
            out.rows = kept;
            out.renormalize_integer();
        } else {
            for v in kept {
                out.insert(v);
            }
        }
        out
    }
}

/// RREF over a field; returns (rows without zero rows, pivot columns).
pub fn row_reduce(
    mut rows: Vec<Vec<Scalar>>,
    width: usize,
    ring: CoefficientRing,
) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    assert!(ring.is_field());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][col].inv().expect("field scalar");
        scale(&mut rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col].clone();
                sub_scaled(row, &pivot_row, &c);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn as_bigint(s: &Scalar) -> &BigInt {
    match s {
        Scalar::Integer(n) => n,
        _ => panic!("integer scalar expected"),
    }
}

fn int_div_rem_floor(a: &Scalar, b: &Scalar) -> (BigInt, BigInt) {
    as_bigint(a).div_mod_floor(as_bigint(b))
}

/// Row-style Hermite normal form: echelon with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Canonical for the row lattice.
pub fn hermite_normal_form(
    mut rows: Vec<Vec<Scalar>>,
    width: usize,
) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    rows.retain(|r| !is_zero_vec(r));
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        loop {
            let mut nonzero: Vec<usize> = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            // smallest absolute value up front
            nonzero.sort_by_key(|&i| as_bigint(&rows[i][col]).abs());
            let sel = nonzero[0];
            rows.swap(r, sel);
            if nonzero.len() == 1 {
                break;
            }
            for i in r + 1..rows.len() {
                if !rows[i][col].is_zero() {
                    let (q, _) = int_div_rem_floor(&rows[i][col], &rows[r][col]);
                    let q = Scalar::Integer(q);
                    let pivot_row = rows[r].clone();
                    sub_scaled(&mut rows[i], &pivot_row, &q);
                }
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if as_bigint(&rows[r][col]).is_negative() {
                let neg: Vec<Scalar> = rows[r].iter().map(Scalar::neg).collect();
                rows[r] = neg;
            }
            let pivot_row = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                if !row[col].is_zero() {
                    let (q, _) = int_div_rem_floor(&row[col], &pivot_row[col]);
                    sub_scaled(row, &pivot_row, &Scalar::Integer(q));
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Dense matrix acting on column vectors: (rows x cols), `apply` computes M·x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn apply(&self, x: &[Scalar], ring: CoefficientRing) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        let mut out = zero_vec(ring, self.rows);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let m = self.at(i, j);
                if !m.is_zero() {
                    out[i] = out[i].add(&m.mul(xj));
                }
            }
        }
        out
    }

    pub fn compose(&self, other: &Mat, ring: CoefficientRing) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(ring, self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.apply(&other.column(j), ring);
            for (i, v) in col.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Kernel of M (as a map on column vectors): {x : M x = 0}.
/// Exact over fields; over ℤ the saturated kernel lattice is computed by
/// solving over ℚ and scaling each basis vector to a primitive integer
/// vector (the kernel of an integer matrix is a saturated sublattice, so
/// this is exact).
pub fn kernel(m: &Mat, ring: CoefficientRing) -> Subspace {
    if ring == CoefficientRing::Integers {
        let lifted = Mat {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(int_to_rational).collect(),
        };
        let ker = kernel_field(&lifted, CoefficientRing::Rationals);
        let rows: Vec<Vec<Scalar>> = ker
            .rows()
            .iter()
            .map(|r| primitive_integer_vector(r))
            .collect();
        Subspace::from_vectors(CoefficientRing::Integers, m.cols, &rows)
    } else {
        kernel_field(m, ring)
    }
}

fn kernel_field(m: &Mat, ring: CoefficientRing) -> Subspace {
    let (rref, pivots) = row_reduce(m.row_vectors(), m.cols, ring);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = zero_vec(ring, m.cols);
        v[free] = ring.one();
        for (row, &p) in rref.iter().zip(&pivots) {
            v[p] = row[free].neg();
        }
        basis.push(v);
    }
    Subspace::from_vectors(ring, m.cols, &basis)
}

pub fn int_to_rational(s: &Scalar) -> Scalar {
    match s {
        Scalar::Integer(n) => Scalar::Rational(num_rational::BigRational::from(n.clone())),
        _ => panic!("integer scalar expected"),
    }
}

/// Clears denominators and divides by the content, preserving the ray.
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<Scalar> {
    let mut lcm = BigInt::from(1);
    for s in v {
        if let Scalar::Rational(r) = s {
            lcm = lcm.lcm(r.denom());
        }
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|s| match s {
            Scalar::Rational(r) => r.numer() * (&lcm / r.denom()),
            Scalar::Integer(n) => n * &lcm,
            _ => panic!("rational or integer scalar expected"),
        })
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if !g.is_zero() && !g.is_one() {
        for n in ints.iter_mut() {
            *n = &*n / &g;
        }
    }
    ints.into_iter().map(Scalar::Integer).collect()
}

/// Solves M x = b over a field; None when inconsistent.
pub fn solve(m: &Mat, b: &[Scalar], ring: CoefficientRing) -> Option<Vec<Scalar>> {
    assert!(ring.is_field());
    let mut aug: Vec<Vec<Scalar>> = m.row_vectors();
    for (row, bi) in aug.iter_mut().zip(b) {
        row.push(bi.clone());
    }
    let (rref, pivots) = row_reduce(aug, m.cols + 1, ring);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = zero_vec(ring, m.cols);
    for (row, &p) in rref.iter().zip(&pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&n| CoefficientRing::PrimeField(2).from_i64(n))
            .collect()
    }

    fn zz(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&n| CoefficientRing::Integers.from_i64(n))
            .collect()
    }

    #[test]
    fn rref_is_canonical() {
        let ring = CoefficientRing::PrimeField(2);
        let a = Subspace::from_vectors(ring, 3, &[gf2(&[1, 1, 0]), gf2(&[0, 1, 1])]);
        let b = Subspace::from_vectors(ring, 3, &[gf2(&[1, 0, 1]), gf2(&[1, 1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&gf2(&[1, 0, 1])));
        assert!(!a.contains(&gf2(&[1, 0, 0])));
    }

    #[test]
    fn zassenhaus_intersection() {
        let ring = CoefficientRing::PrimeField(3);
        let f = |v: &[i64]| -> Vec<Scalar> { v.iter().map(|&n| ring.from_i64(n)).collect() };
        let a = Subspace::from_vectors(ring, 3, &[f(&[1, 0, 0]), f(&[0, 1, 0])]);
        let b = Subspace::from_vectors(ring, 3, &[f(&[0, 1, 0]), f(&[0, 0, 1])]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f(&[0, 2, 0])));
    }

    #[test]
    fn hermite_form_detects_sublattices() {
        let l = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[2, 0]), zz(&[0, 2])]);
        assert!(l.contains(&zz(&[4, -2])));
        assert!(!l.contains(&zz(&[1, 0])));
        let full = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[1, 0]), zz(&[0, 1])]);
        assert_ne!(l, full);
        assert!(full.contains_subspace(&l));
        assert!(!l.contains_subspace(&full));
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[2, 1]), zz(&[0, 3])]);
        let b = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[2, 4]), zz(&[2, 7])]);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_over_field_and_integers() {
        let ring = CoefficientRing::PrimeField(5);
        let m = Mat::from_rows(vec![
            vec![ring.from_i64(1), ring.from_i64(2), ring.from_i64(3)],
            vec![ring.from_i64(2), ring.from_i64(4), ring.from_i64(6)],
        ]);
        let k = kernel(&m, ring);
        assert_eq!(k.dim(), 2);
        for row in k.rows() {
            assert!(is_zero_vec(&m.apply(row, ring)));
        }

        let mz = Mat::from_rows(vec![zz(&[2, -4])]);
        let kz = kernel(&mz, CoefficientRing::Integers);
        assert_eq!(kz.dim(), 1);
        assert_eq!(kz.rows()[0], zz(&[2, 1]));
    }

    #[test]
    fn solve_augmented() {
        let ring = CoefficientRing::PrimeField(3);
        let m = Mat::from_rows(vec![
            vec![ring.from_i64(2), ring.from_i64(0)],
            vec![ring.from_i64(0), ring.from_i64(1)],
        ]);
        let x = solve(&m, &[ring.from_i64(1), ring.from_i64(2)], ring).unwrap();
        assert_eq!(x, vec![ring.from_i64(2), ring.from_i64(2)]);
        let inconsistent = Mat::from_rows(vec![vec![ring.from_i64(0), ring.from_i64(0)]]);
        assert!(solve(&inconsistent, &[ring.from_i64(1)], ring).is_none());
    }

    #[test]
    fn coordinate_intersection_over_integers() {
        // lattice spanned by (1,1) intersected with the second axis is 0;
        // lattice spanned by (1,1) and (0,2) meets it in 2e2.
        let l = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[1, 1])]);
        assert_eq!(l.intersect_coordinate(&[1]).dim(), 0);
        let l2 = Subspace::from_vectors(CoefficientRing::Integers, 2, &[zz(&[1, 1]), zz(&[0, 2])]);
        let i = l2.intersect_coordinate(&[1]);
        assert_eq!(i.dim(), 1);
        assert_eq!(i.rows()[0], zz(&[0, 2]));
    }
}
