//! Exact rational scalars, vectors and the small amount of linear algebra
//! the rest of the crate needs. Everything here is exact; there is no
//! floating point anywhere in the crate.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary precision rational number, always kept in canonical form.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign(x: &Scalar) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// A point or direction with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn from_fracs(xs: &[(i64, i64)]) -> Self {
        Vector(xs.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn dist2(&self, other: &Vector) -> Scalar {
        (self - other).norm2()
    }

    /// Canonical representative of the line through `self`: the first
    /// nonzero coordinate is made positive, length is kept.
    pub fn line_sign_normalized(&self) -> Vector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Canonical representative of the ray/line direction up to positive
    /// scaling: the first nonzero coordinate becomes +1 or -1.
    pub fn ray_normalized(&self) -> Vector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) => self.scale(&(Scalar::one() / x.abs())),
            None => self.clone(),
        }
    }

    /// True iff `self` and `other` are nonzero and parallel.
    pub fn parallel(&self, other: &Vector) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let d = self.dot(other);
        &d * &d == self.norm2() * other.norm2()
    }

    pub fn concat(&self, other: &Vector) -> Vector {
        let mut c = self.0.clone();
        c.extend(other.0.iter().cloned());
        Vector(c)
    }

    pub fn sum<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Vector {
        let mut acc = Vector::zeros(dim);
        for v in vs {
            acc = &acc + v;
        }
        acc
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &'a Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &'a Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

/// Serializes a scalar as its exact `p/q` string.
pub fn serialize_scalar<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Square matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix(pub Vec<Vec<Scalar>>);

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        Matrix(
            (0..dim)
                .map(|i| (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Orthogonal reflection fixing the hyperplane `normal⊥`.
    pub fn reflection(normal: &Vector) -> Self {
        let d = normal.dim();
        let c = int(2) / normal.norm2();
        let mut m = Self::identity(d);
        for i in 0..d {
            for j in 0..d {
                m.0[i][j] -= &c * &normal.0[i] * &normal.0[j];
            }
        }
        m
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim();
        let mut out = vec![vec![Scalar::zero(); d]; d];
        for i in 0..d {
            for k in 0..d {
                if self.0[i][k].is_zero() {
                    continue;
                }
                for j in 0..d {
                    out[i][j] += &self.0[i][k] * &other.0[k][j];
                }
            }
        }
        Matrix(out)
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim();
        Matrix((0..d).map(|i| (0..d).map(|j| self.0[j][i].clone()).collect()).collect())
    }

    /// Block diagonal sum, used for joins of reflection groups.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim(), other.dim());
        let mut out = Matrix::identity(a + b).0;
        for i in 0..a {
            for j in 0..a {
                out[i][j] = self.0[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                out[a + i][a + j] = other.0[i][j].clone();
            }
        }
        Matrix(out)
    }
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[r].len() {
                    if !rows[r][j].is_zero() {
                        let t = &f * &rows[r][j];
                        rows[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let n = vs[0].dim();
    let mut rows: Vec<Vec<Scalar>> = vs.iter().map(|v| v.0.clone()).collect();
    row_reduce(&mut rows, n).len()
}

/// Basis of `{x : <r, x> = 0 for all r in rows}` in ambient dimension `dim`.
pub fn nullspace(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|v| v.0.clone()).collect();
    let pivots = row_reduce(&mut m, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = Vector::zeros(dim);
            x.0[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                x.0[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily.
pub fn independent_subset(vs: &[Vector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        basis.push(v.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Solves the square system `a x = b`; `None` if singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows, n);
    if pivots.len() < n {
        return None;
    }
    Some(rows.iter().map(|r| r[n].clone()).collect())
}

/// A linear subspace given by a basis, with a cached inverse Gram matrix
/// for exact orthogonal projection.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vector>,
    gram_inv: Vec<Vec<Scalar>>,
}

impl Subspace {
    /// Span of the given vectors (need not be independent).
    pub fn span(ambient: usize, vs: &[Vector]) -> Self {
        let idx = independent_subset(vs);
        let basis: Vec<Vector> = idx.iter().map(|&i| vs[i].clone()).collect();
        let k = basis.len();
        let gram: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| a.dot(b)).collect())
            .collect();
        let gram_inv = (0..k)
            .map(|j| {
                let e: Vec<Scalar> =
                    (0..k).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect();
                solve(&gram, &e).expect("basis vectors are independent")
            })
            .collect::<Vec<_>>();
        // gram_inv is stored column-wise; the Gram matrix is symmetric so the
        // inverse is too.
        Subspace { dim: ambient, basis, gram_inv }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &Vector) -> Vector {
        let k = self.basis.len();
        let rhs: Vec<Scalar> = self.basis.iter().map(|b| b.dot(x)).collect();
        let mut out = Vector::zeros(self.dim);
        for i in 0..k {
            let mut c = Scalar::zero();
            for j in 0..k {
                c += &self.gram_inv[j][i] * &rhs[j];
            }
            out.add_scaled(&c, &self.basis[i]);
        }
        out
    }

    pub fn contains(&self, x: &Vector) -> bool {
        &self.project(x) == x
    }

    /// Basis of the orthogonal complement inside the ambient space.
    pub fn complement(&self) -> Vec<Vector> {
        nullspace(&self.basis, self.dim)
    }

    /// A vector inside the subspace orthogonal to all of `vs` (which should
    /// span a hyperplane of the subspace). `None` if the solution space is
    /// not one-dimensional.
    pub fn normal_to(&self, vs: &[Vector]) -> Option<Vector> {
        let k = self.basis.len();
        let rows: Vec<Vector> = vs
            .iter()
            .map(|v| Vector(self.basis.iter().map(|b| b.dot(v)).collect()))
            .collect();
        let ns = nullspace(&rows, k);
        if ns.len() != 1 {
            return None;
        }
        let mut n = Vector::zeros(self.dim);
        for (c, b) in ns[0].0.iter().zip(&self.basis) {
            n.add_scaled(c, b);
        }
        Some(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_scalar("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_scalar("-4"), Some(int(-4)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(Vector::from_fracs(&[(1, 2), (-1, 3)]).to_string(), "(1/2, -1/3)");
    }

    #[test]
    fn nullspace_of_zero_sum() {
        let ns = nullspace(&[Vector::from_ints(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.dot(&Vector::from_ints(&[1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn projection_is_orthogonal() {
        let s = Subspace::span(3, &[Vector::from_ints(&[1, -1, 0]), Vector::from_ints(&[0, 1, -1])]);
        let x = Vector::from_ints(&[3, 0, 0]);
        let p = s.project(&x);
        assert_eq!(p, Vector::from_ints(&[2, -1, -1]));
        assert!(s.contains(&p));
        assert!((&x - &p).dot(&Vector::from_ints(&[1, -1, 0])).is_zero());
    }

    #[test]
    fn reflection_is_involution() {
        let r = Matrix::reflection(&Vector::from_ints(&[1, -1]));
        assert_eq!(r.apply(&Vector::from_ints(&[1, 0])), Vector::from_ints(&[0, 1]));
        assert_eq!(r.mul(&r), Matrix::identity(2));
    }

    #[test]
    fn normal_inside_plane() {
        let s = Subspace::span(3, &[Vector::from_ints(&[1, -1, 0]), Vector::from_ints(&[0, 1, -1])]);
        let n = s.normal_to(&[Vector::from_ints(&[1, -1, 0])]).unwrap();
        assert!(s.contains(&n));
        assert!(n.dot(&Vector::from_ints(&[1, -1, 0])).is_zero());
        assert!(!n.is_zero());
    }
}
