//! Dense row-major multi-dimensional array and the linear-algebra primitives
//! everything else builds on.
//!
//! Layout is row-major everywhere (last axis fastest); there is exactly one
//! layout rule in the whole crate.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense tensor: a shape plus a flat row-major buffer.
///
/// Tensors are immutable once produced by an operation; the only in-place
/// mutation in the crate is the optimizer update, which owns its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S> {
    shape: Vec<usize>,
    data: Vec<S>,
}

/// Batch/channel/height/width shape of an image-like tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape4 {
    pub n: usize,
    pub c: usize,
    pub h: usize,
    pub w: usize,
}

impl Shape4 {
    pub fn new(n: usize, c: usize, h: usize, w: usize) -> Result<Self> {
        if n == 0 || c == 0 || h == 0 || w == 0 {
            return Err(Error::BadShape {
                op: "Shape4",
                detail: format!("all dimensions must be >= 1, got {n}x{c}x{h}x{w}"),
            });
        }
        Ok(Shape4 { n, c, h, w })
    }

    pub fn from_shape(shape: &[usize]) -> Result<Self> {
        match shape {
            &[n, c, h, w] => Shape4::new(n, c, h, w),
            other => Err(Error::BadShape {
                op: "Shape4",
                detail: format!("expected 4 dimensions, got {other:?}"),
            }),
        }
    }

    pub fn numel(&self) -> usize {
        self.n * self.c * self.h * self.w
    }

    pub fn to_vec(&self) -> Vec<usize> {
        vec![self.n, self.c, self.h, self.w]
    }
}

impl<S: Scalar> Tensor<S> {
    /// Builds a tensor from a shape and flat row-major data.
    pub fn new(shape: Vec<usize>, data: Vec<S>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::BadShape {
                op: "Tensor::new",
                detail: format!("shape {shape:?} needs {numel} elements, got {}", data.len()),
            });
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape,
            data: vec![S::zero(); numel],
        }
    }

    pub fn fill(shape: Vec<usize>, value: S) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape,
            data: vec![value; numel],
        }
    }

    /// One-dimensional tensor from a plain vector.
    pub fn from_vec(data: Vec<S>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    /// Reinterprets the buffer under a new shape with the same element count.
    pub fn reshape(mut self, shape: Vec<usize>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != self.data.len() {
            return Err(Error::ShapeMismatch {
                op: "reshape",
                lhs: self.shape,
                rhs: shape,
            });
        }
        self.shape = shape;
        Ok(self)
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_check(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                op,
                lhs: self.shape.clone(),
                rhs: other.shape.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_check(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_check(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Elementwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_check(other, "mul")?;
        Ok(self.zip_with(other, |a, b| a * b))
    }

    pub fn scale(&self, k: S) -> Self {
        self.map(|v| v * k)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        Tensor {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// In-place `self += other * k`.
    pub fn axpy(&mut self, other: &Self, k: S) -> Result<()> {
        self.zip_check(other, "axpy")?;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * k;
        }
        Ok(())
    }

    pub fn sum(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, &v| acc + v)
    }

    /// Matrix product of a `[m, k]` tensor with a `[k, n]` tensor.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let (m, k) = match *self.shape.as_slice() {
            [m, k] => (m, k),
            _ => {
                return Err(Error::BadShape {
                    op: "matmul",
                    detail: format!("lhs must be 2-D, got {:?}", self.shape),
                })
            }
        };
        let (k2, n) = match *other.shape.as_slice() {
            [k2, n] => (k2, n),
            _ => {
                return Err(Error::BadShape {
                    op: "matmul",
                    detail: format!("rhs must be 2-D, got {:?}", other.shape),
                })
            }
        };
        if k != k2 {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                lhs: self.shape.clone(),
                rhs: other.shape.clone(),
            });
        }
        let mut out = vec![S::zero(); m * n];
        matmul_into(&self.data, &other.data, &mut out, m, k, n);
        Ok(Tensor {
            shape: vec![m, n],
            data: out,
        })
    }

    /// Flattens every input tensor and joins them into one 1-D tensor.
    ///
    /// Total element count is preserved.
    pub fn concat_flat(parts: &[Tensor<S>]) -> Tensor<S> {
        let total: usize = parts.iter().map(|t| t.numel()).sum();
        let mut data = Vec::with_capacity(total);
        for p in parts {
            data.extend_from_slice(&p.data);
        }
        Tensor {
            shape: vec![total],
            data,
        }
    }

    /// Row-wise concatenation of `[n, f_i]` tensors into `[n, sum(f_i)]`.
    pub fn concat_cols(parts: &[&Tensor<S>]) -> Result<Tensor<S>> {
        let n = match parts.first() {
            Some(t) if t.shape.len() == 2 => t.shape[0],
            _ => {
                return Err(Error::BadShape {
                    op: "concat_cols",
                    detail: "needs at least one 2-D tensor".into(),
                })
            }
        };
        let mut widths = Vec::with_capacity(parts.len());
        for t in parts {
            if t.shape.len() != 2 || t.shape[0] != n {
                return Err(Error::ShapeMismatch {
                    op: "concat_cols",
                    lhs: parts[0].shape.clone(),
                    rhs: t.shape.clone(),
                });
            }
            widths.push(t.shape[1]);
        }
        let total_w: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(n * total_w);
        for row in 0..n {
            for (t, &w) in parts.iter().zip(&widths) {
                data.extend_from_slice(&t.data[row * w..(row + 1) * w]);
            }
        }
        Ok(Tensor {
            shape: vec![n, total_w],
            data,
        })
    }

    /// Index of the first NaN/Inf element, if any.
    pub fn first_non_finite(&self) -> Option<usize> {
        self.data.iter().position(|v| !v.is_finite())
    }

    /// Errors if the tensor contains NaN/Inf, naming it for diagnostics.
    pub fn ensure_finite(&self, name: &str) -> Result<()> {
        match self.first_non_finite() {
            None => Ok(()),
            Some(i) => Err(Error::NonFinite {
                tensor: format!("{name}[{i}]"),
            }),
        }
    }

    /// Casts element-by-element between scalar types.
    pub fn cast<T: Scalar>(&self) -> Tensor<T> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| T::from_f64(v.to_f64())).collect(),
        }
    }
}

/// `out += a @ b` for row-major `a: [m, k]`, `b: [k, n]`.
///
/// The i-k-j loop order keeps the inner loop contiguous over both `b` and
/// `out`, which the compiler vectorizes.
pub fn matmul_into<S: Scalar>(a: &[S], b: &[S], out: &mut [S], m: usize, k: usize, n: usize) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(out.len(), m * n);
    for i in 0..m {
        let a_row = &a[i * k..(i + 1) * k];
        let out_row = &mut out[i * n..(i + 1) * n];
        for (kk, &aik) in a_row.iter().enumerate() {
            if aik == S::zero() {
                continue;
            }
            let b_row = &b[kk * n..(kk + 1) * n];
            for (o, &bv) in out_row.iter_mut().zip(b_row) {
                *o += aik * bv;
            }
        }
    }
}

/// `out += a @ b^T` for row-major `a: [m, k]`, `b: [n, k]`.
pub fn matmul_abt_into<S: Scalar>(a: &[S], b: &[S], out: &mut [S], m: usize, k: usize, n: usize) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), n * k);
    debug_assert_eq!(out.len(), m * n);
    for i in 0..m {
        let a_row = &a[i * k..(i + 1) * k];
        let out_row = &mut out[i * n..(i + 1) * n];
        for (j, o) in out_row.iter_mut().enumerate() {
            *o += dot(a_row, &b[j * k..(j + 1) * k]);
        }
    }
}

/// Lane-split dot product; the fixed-width accumulators let the compiler
/// keep the reduction in vector registers.
#[inline]
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    const LANES: usize = 16;
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [S::zero(); LANES];
    let chunks = a.len() / LANES;
    for c in 0..chunks {
        let av = &a[c * LANES..(c + 1) * LANES];
        let bv = &b[c * LANES..(c + 1) * LANES];
        for l in 0..LANES {
            acc[l] += av[l] * bv[l];
        }
    }
    let mut total = S::zero();
    for l in 0..LANES {
        total += acc[l];
    }
    for i in chunks * LANES..a.len() {
        total += a[i] * b[i];
    }
    total
}

/// `out += a^T @ b` for row-major `a: [m, k]`, `b: [m, n]`; `out: [k, n]`.
pub fn matmul_atb_into<S: Scalar>(a: &[S], b: &[S], out: &mut [S], m: usize, k: usize, n: usize) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), m * n);
    debug_assert_eq!(out.len(), k * n);
    for i in 0..m {
        let a_row = &a[i * k..(i + 1) * k];
        let b_row = &b[i * n..(i + 1) * n];
        for (kk, &aik) in a_row.iter().enumerate() {
            if aik == S::zero() {
                continue;
            }
            let out_row = &mut out[kk * n..(kk + 1) * n];
            for (o, &bv) in out_row.iter_mut().zip(b_row) {
                *o += aik * bv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let id = Tensor::new(vec![2, 2], vec![1.0f64, 0.0, 0.0, 1.0]).unwrap();
        let v = Tensor::new(vec![2, 1], vec![3.0, 4.0]).unwrap();
        let out = id.matmul(&v).unwrap();
        assert_eq!(out.shape(), &[2, 1]);
        assert_eq!(out.data(), &[3.0, 4.0]);
    }

    #[test]
    fn concat_flat_preserves_count() {
        let a = Tensor::<f64>::zeros(vec![2, 3]);
        let b = Tensor::<f64>::zeros(vec![6]);
        let out = Tensor::concat_flat(&[a, b]);
        assert_eq!(out.shape(), &[12]);
    }

    #[test]
    fn add_fill() {
        let a = Tensor::fill(vec![2, 2], 1.0f32);
        let b = Tensor::fill(vec![2, 2], 2.0f32);
        assert_eq!(a.add(&b).unwrap(), Tensor::fill(vec![2, 2], 3.0f32));
    }

    #[test]
    fn shape_mismatch_names_both_shapes() {
        let a = Tensor::<f64>::zeros(vec![2, 3]);
        let b = Tensor::<f64>::zeros(vec![3, 3]);
        let err = a.add(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[2, 3]") && msg.contains("[3, 3]"), "{msg}");
    }

    #[test]
    fn matmul_shapes() {
        let a = Tensor::<f64>::fill(vec![2, 3], 1.0);
        let b = Tensor::<f64>::fill(vec![3, 4], 1.0);
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.shape(), &[2, 4]);
        assert!(c.data().iter().all(|&v| v == 3.0));
        assert!(b.matmul(&a).is_err());
    }

    #[test]
    fn transposed_matmul_kernels_agree() {
        // a: 3x4, b: 4x5 reference via matmul; check abt/atb against it.
        let a: Vec<f64> = (0..12).map(|i| (i as f64) * 0.37 - 1.0).collect();
        let b: Vec<f64> = (0..20).map(|i| (i as f64) * 0.11 + 0.5).collect();
        let mut c_ref = vec![0.0; 15];
        matmul_into(&a, &b, &mut c_ref, 3, 4, 5);

        // b^T is 5x4; a @ (b^T)^T == a @ b
        let mut bt = vec![0.0; 20];
        for i in 0..4 {
            for j in 0..5 {
                bt[j * 4 + i] = b[i * 5 + j];
            }
        }
        let mut c1 = vec![0.0; 15];
        matmul_abt_into(&a, &bt, &mut c1, 3, 4, 5);
        assert_eq!(c1, c_ref);

        // a^T is 4x3; (a^T)^T @ b == a @ b
        let mut at = vec![0.0; 12];
        for i in 0..3 {
            for j in 0..4 {
                at[j * 3 + i] = a[i * 4 + j];
            }
        }
        let mut c2 = vec![0.0; 15];
        matmul_atb_into(&at, &b, &mut c2, 4, 3, 5);
        assert_eq!(c2, c_ref);
    }

    #[test]
    fn shape4_rejects_zero() {
        assert!(Shape4::new(1, 0, 28, 28).is_err());
        assert!(Shape4::from_shape(&[2, 1, 28, 28]).is_ok());
        assert!(Shape4::from_shape(&[2, 1, 28]).is_err());
    }
}
