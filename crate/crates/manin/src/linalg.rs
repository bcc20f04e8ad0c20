//! Exact linear algebra over an arbitrary field scalar.
//!
//! Everything here is generic over [`Scalar`]; the rest of the crate
//! instantiates it at arbitrary-precision rationals (see [`crate::Rat`]
//! and the `Q*` aliases at the crate root).  Row reduction is
//! deterministic — leftmost pivot column, first nonzero row — so the
//! reduced row echelon form is the unique canonical representative and
//! subspace equality is entrywise comparison of bases.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

use crate::{Error, Result};

/// Field-like scalar: exact equality, the four operations, and negation.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> + Div<Output = T>
{
}

/// Dense rectangular matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors.  `cols` disambiguates the
    /// empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Matrix-vector product `m * v` with `v` a column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "apply dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = self.at(i, k);
                        if !a.is_zero() {
                            acc = acc + a.clone() * x.clone();
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-vector by matrix product `v * m`.
    pub fn apply_left(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "apply_left dimension mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() {
                    out[j] = out[j].clone() + x.clone() * a.clone();
                }
            }
        }
        out
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let a = self.at(r / other.rows, c / other.cols);
                let b = other.at(r % other.rows, c % other.cols);
                if a.is_zero() || b.is_zero() {
                    T::zero()
                } else {
                    a.clone() * b.clone()
                }
            },
        )
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.rows + other.rows, self.cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let pivot = m.at(r, c).clone();
            if !pivot.is_one() {
                for j in c..m.cols {
                    let v = m.at(r, j).clone();
                    if !v.is_zero() {
                        m.set(r, j, v / pivot.clone());
                    }
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.at(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let s = m.at(r, j).clone();
                    if s.is_zero() {
                        continue;
                    }
                    let v = m.at(i, j).clone();
                    m.set(i, j, v - factor.clone() * s);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// The unique reduced row echelon form.
    pub fn rref(&self) -> Self {
        self.rref_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_pivots().1.len()
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Subspace of a fixed coordinate space, stored as a reduced row
/// echelon basis.  Two subspaces are equal iff their bases are equal
/// entrywise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<T>>) -> Self {
        let m = Matrix::from_rows(ambient, rows);
        Subspace::from_matrix(m)
    }

    pub fn from_matrix(m: Matrix<T>) -> Self {
        let ambient = m.cols();
        let (r, pivots) = m.rref_pivots();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, rows),
        }
    }

    pub fn zero_space(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, vec![]),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<T>> {
        self.basis.row_vecs()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ambient, "reduce dimension mismatch");
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.basis.at(r, c).is_zero())
                .expect("no zero rows in a canonical basis");
            let factor = v[pivot_col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in pivot_col..self.ambient {
                let b = self.basis.at(r, c);
                if !b.is_zero() {
                    v[c] = v[c].clone() - factor.clone() * b.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<T>) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }
}

/// Bilinear pairing on a coordinate space, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<T> {
    ambient: usize,
    gram: Matrix<T>,
}

impl<T: Scalar> BilinearForm<T> {
    pub fn new(gram: Matrix<T>) -> Self {
        assert_eq!(gram.rows(), gram.cols(), "gram matrix must be square");
        BilinearForm {
            ambient: gram.rows(),
            gram,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.ambient
    }

    pub fn pair(&self, u: &[T], v: &[T]) -> T {
        let gu = self.gram.apply_left(u);
        let mut acc = T::zero();
        for (a, b) in gu.iter().zip(v.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }
}

/// Null space of `m`, i.e. all column vectors `v` with `m * v = 0`.
pub fn kernel<T: Scalar>(m: &Matrix<T>) -> Subspace<T> {
    let (r, pivots) = m.rref_pivots();
    let n = m.cols();
    let mut rows = Vec::with_capacity(n - pivots.len());
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            let coeff = r.at(i, free);
            if !coeff.is_zero() {
                v[p] = -coeff.clone();
            }
        }
        rows.push(v);
    }
    Subspace::from_rows(n, rows)
}

pub fn subspace_sum<T: Scalar>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace sum of ambients {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    Ok(Subspace::from_matrix(a.basis().vstack(b.basis())))
}

/// Intersection, via the null space of `[A^T | -B^T]`: a kernel vector
/// `(u, v)` satisfies `u * A = v * B`, and `u * A` spans the
/// intersection.
pub fn subspace_intersection<T: Scalar>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace intersection of ambients {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let n = a.ambient_dim();
    let (ra, rb) = (a.dim(), b.dim());
    let stacked = Matrix::from_fn(n, ra + rb, |r, c| {
        if c < ra {
            a.basis().at(c, r).clone()
        } else {
            -b.basis().at(c - ra, r).clone()
        }
    });
    let ker = kernel(&stacked);
    let rows = (0..ker.dim())
        .map(|i| {
            let uv = ker.basis().row(i);
            a.basis().apply_left(&uv[..ra])
        })
        .collect();
    Ok(Subspace::from_rows(n, rows))
}

/// Orthogonal complement of `s` with respect to a nondegenerate form.
/// The complement lives in the dual ambient space, identified with the
/// primal one coordinate-wise through the form.
pub fn orthogonal_complement<T: Scalar>(
    s: &Subspace<T>,
    form: &BilinearForm<T>,
) -> Result<Subspace<T>> {
    if s.ambient_dim() != form.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "complement of subspace in ambient {} under form on ambient {}",
            s.ambient_dim(),
            form.ambient_dim()
        )));
    }
    if !form.is_nondegenerate() {
        return Err(Error::SingularForm);
    }
    Ok(kernel(&s.basis().matmul(form.gram())))
}

/// All `v` with `m * v` in `s`.
pub fn preimage<T: Scalar>(m: &Matrix<T>, s: &Subspace<T>) -> Result<Subspace<T>> {
    if s.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "preimage: map into dimension {} but subspace ambient {}",
            m.rows(),
            s.ambient_dim()
        )));
    }
    // Rows of `ann` cut out `s` as a null space.
    let ann = kernel(s.basis());
    Ok(kernel(&ann.basis().matmul(m)))
}

/// The image `{ m * v : v in s }`.
pub fn image_of<T: Scalar>(m: &Matrix<T>, s: &Subspace<T>) -> Result<Subspace<T>> {
    if s.ambient_dim() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "image: map from dimension {} but subspace ambient {}",
            m.cols(),
            s.ambient_dim()
        )));
    }
    let rows = (0..s.dim()).map(|i| m.apply(s.basis().row(i))).collect();
    Ok(Subspace::from_rows(m.rows(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QMatrix, QSubspace, Rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qm(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
        Matrix::new(rows, cols, v.iter().map(|&x| rat(x)).collect())
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
        Matrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-3..=3)))
    }

    #[test]
    fn rref_rank_one() {
        let m = qm(2, 2, &[2, 4, 1, 2]);
        assert_eq!(m.rref(), qm(2, 2, &[1, 2, 0, 0]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_identity_fixed_point() {
        let id = QMatrix::identity(4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_permutation_rows() {
        let m = qm(2, 2, &[0, 1, 1, 0]);
        assert_eq!(m.rref(), QMatrix::identity(2));
    }

    #[test]
    fn rref_idempotent_and_rank_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (r0, c0) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = random_matrix(&mut rng, r0, c0);
            let r = m.rref();
            assert_eq!(r.rref(), r);
            assert_eq!(r.rank(), m.rank());
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let k = kernel(&QMatrix::zeros(2, 2));
        assert_eq!(k, QSubspace::full(2));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel(&QMatrix::identity(3));
        assert_eq!(k, QSubspace::zero_space(3));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (r0, c0) = (rng.gen_range(1..5), rng.gen_range(1..6));
            let m = random_matrix(&mut rng, r0, c0);
            let k = kernel(&m);
            assert_eq!(k.dim(), m.cols() - m.rank());
            for row in k.basis_rows() {
                assert!(m.apply(&row).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn intersection_of_axes_is_zero() {
        let a = QSubspace::from_rows(2, vec![vec![rat(1), rat(0)]]);
        let b = QSubspace::from_rows(2, vec![vec![rat(0), rat(1)]]);
        assert_eq!(
            subspace_intersection(&a, &b).unwrap(),
            QSubspace::zero_space(2)
        );
    }

    #[test]
    fn intersection_idempotent() {
        let a = QSubspace::from_rows(3, vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(subspace_intersection(&a, &a).unwrap(), a);
    }

    #[test]
    fn intersection_in_dim_three() {
        let a = QSubspace::from_rows(
            3,
            vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]],
        );
        let b = QSubspace::from_rows(
            3,
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]],
        );
        let expected = QSubspace::from_rows(3, vec![vec![rat(0), rat(1), rat(0)]]);
        assert_eq!(subspace_intersection(&a, &b).unwrap(), expected);
    }

    #[test]
    fn dimension_law_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let n = rng.gen_range(1..6);
            let (ra, rb) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let a = QSubspace::from_matrix(random_matrix(&mut rng, ra, n));
            let b = QSubspace::from_matrix(random_matrix(&mut rng, rb, n));
            let sum = subspace_sum(&a, &b).unwrap();
            let int = subspace_intersection(&a, &b).unwrap();
            assert_eq!(a.dim() + b.dim(), sum.dim() + int.dim());
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = QSubspace::full(2);
        let b = QSubspace::full(3);
        assert!(matches!(
            subspace_sum(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            subspace_intersection(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn complement_of_zero_and_full() {
        let form = BilinearForm::new(QMatrix::identity(3));
        assert_eq!(
            orthogonal_complement(&QSubspace::zero_space(3), &form).unwrap(),
            QSubspace::full(3)
        );
        assert_eq!(
            orthogonal_complement(&QSubspace::full(3), &form).unwrap(),
            QSubspace::zero_space(3)
        );
    }

    #[test]
    fn degenerate_form_rejected() {
        let form = BilinearForm::new(QMatrix::zeros(2, 2));
        let s = QSubspace::full(2);
        assert!(matches!(
            orthogonal_complement(&s, &form),
            Err(Error::SingularForm)
        ));
    }

    #[test]
    fn double_complement_returns_original() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.gen_range(1..6);
            // Random diagonal +-1 form, as used by the operadic pairing.
            let diag: Vec<Rat> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { rat(1) } else { rat(-1) })
                .collect();
            let form = BilinearForm::new(QMatrix::diagonal(diag.clone()));
            let transposed = BilinearForm::new(form.gram().transpose());
            let rows = rng.gen_range(0..4);
            let s = QSubspace::from_matrix(random_matrix(&mut rng, rows, n));
            let c = orthogonal_complement(&s, &form).unwrap();
            let cc = orthogonal_complement(&c, &transposed).unwrap();
            assert_eq!(cc, s);
        }
    }

    #[test]
    fn preimage_of_full_is_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let m = random_matrix(&mut rng, 3, 4);
        assert_eq!(
            preimage(&m, &QSubspace::full(3)).unwrap(),
            QSubspace::full(4)
        );
    }

    #[test]
    fn image_of_zero_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let m = random_matrix(&mut rng, 3, 4);
        assert_eq!(
            image_of(&m, &QSubspace::zero_space(4)).unwrap(),
            QSubspace::zero_space(3)
        );
    }

    #[test]
    fn kernel_contained_in_every_preimage() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let (r0, c0) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let m = random_matrix(&mut rng, r0, c0);
            let srows = rng.gen_range(0..4);
            let s = QSubspace::from_matrix(random_matrix(&mut rng, srows, m.rows()));
            let pre = preimage(&m, &s).unwrap();
            assert!(pre.contains_subspace(&kernel(&m)));
            for row in pre.basis_rows() {
                assert!(s.contains(&m.apply(&row)));
            }
        }
    }

    #[test]
    fn preimage_dimension_mismatch() {
        let m = QMatrix::identity(3);
        let s = QSubspace::full(2);
        assert!(matches!(preimage(&m, &s), Err(Error::DimensionMismatch(_))));
        assert!(matches!(image_of(&m, &s), Err(Error::DimensionMismatch(_))));
    }
}
