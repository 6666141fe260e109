use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, ZERO};
use crate::tol;

/// A normalized pure state over a tensor product of qudits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Dims,
    amps: CVector,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn new(dims: Dims, amps: Vec<Complex64>) -> Result<Self> {
        check_len(&dims, amps.len())?;
        let amps = CVector::from_vec(amps);
        let norm = amps.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector { dims, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(dims: Dims, amps: Vec<Complex64>) -> Result<Self> {
        check_len(&dims, amps.len())?;
        let amps = CVector::from_vec(amps);
        let norm = amps.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector {
            dims,
            amps: amps.unscale(norm),
        })
    }

    /// Real amplitudes, normalized.
    pub fn from_real(dims: Dims, amps: &[f64]) -> Result<Self> {
        Self::normalized(dims, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|flat>`.
    pub fn basis(dims: Dims, flat: usize) -> Result<Self> {
        if flat >= dims.total() {
            return Err(Error::FlatOutOfRange {
                index: flat,
                total: dims.total(),
            });
        }
        let mut amps = alloc::vec![ZERO; dims.total()];
        amps[flat] = linalg::ONE;
        Ok(StateVector {
            dims,
            amps: CVector::from_vec(amps),
        })
    }

    /// Tensor product `factors[0] (x) factors[1] (x) ...`.
    pub fn product(factors: &[StateVector]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or(Error::InvalidParameter("empty tensor product"))?;
        let mut local = first.dims.local().to_vec();
        let mut amps = first.amps.clone();
        for f in &factors[1..] {
            local.extend_from_slice(f.dims.local());
            amps = amps.kronecker(&f.amps);
        }
        let dims = Dims::new(local)?;
        Ok(StateVector { dims, amps })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    #[inline]
    pub fn amp(&self, flat: usize) -> Complex64 {
        self.amps[flat]
    }

    pub fn as_vector(&self) -> &CVector {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `|psi*>`: amplitudes conjugated in the computational basis.
    pub fn conjugate(&self) -> Self {
        StateVector {
            dims: self.dims.clone(),
            amps: self.amps.map(|z| z.conj()),
        }
    }

    /// `|psi><psi|`.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            dims: self.dims.clone(),
            matrix: &self.amps * self.amps.adjoint(),
        }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// Applies `u` to subsystem `site` only.
    pub fn apply_local_unitary(&self, site: usize, u: &CMatrix) -> Result<Self> {
        check_local_unitary(&self.dims, site, u)?;
        let mut amps: Vec<Complex64> = self.amps.iter().copied().collect();
        apply_on_site(&self.dims, site, u, &mut amps, false);
        Ok(StateVector {
            dims: self.dims.clone(),
            amps: CVector::from_vec(amps),
        })
    }
}

/// A valid density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates and wraps `matrix`. Inputs that miss positivity by more
    /// than the tolerance are rejected, never projected.
    pub fn new(dims: Dims, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != dims.total() || matrix.ncols() != dims.total() {
            return Err(Error::LengthMismatch {
                expected: dims.total(),
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry"));
        }
        let herm = linalg::hermitian_deviation(&matrix);
        if herm > tol::HERMITIAN {
            return Err(Error::NotHermitian(herm));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::TraceNotOne(trace.re));
        }
        let min = linalg::min_eigenvalue(&matrix);
        if min < tol::PSD {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix { dims, matrix })
    }

    /// Internal constructor for matrices that are valid by construction.
    pub(crate) fn from_trusted(dims: Dims, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), dims.total());
        DensityMatrix { dims, matrix }
    }

    /// `I / total`.
    pub fn maximally_mixed(dims: Dims) -> Self {
        let n = dims.total();
        let matrix = CMatrix::identity(n, n).unscale(n as f64);
        DensityMatrix { dims, matrix }
    }

    /// Convex combination `sum_k w_k rho_k`. Weights must be nonnegative
    /// and sum to one; all components must share dims.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or(Error::InvalidParameter("empty mixture"))?;
        let n = first.dims.total();
        let mut matrix = CMatrix::zeros(n, n);
        let mut wsum = 0.0;
        for (w, rho) in parts {
            if rho.dims != first.dims {
                return Err(Error::InvalidParameter("mixture components differ in dims"));
            }
            if !(*w >= 0.0) {
                return Err(Error::InvalidParameter("negative mixture weight"));
            }
            wsum += w;
            matrix += rho.matrix.scale(*w);
        }
        if (wsum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidParameter("mixture weights do not sum to one"));
        }
        Ok(DensityMatrix {
            dims: first.dims.clone(),
            matrix,
        })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Matrix entry `<i|rho|j>`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// `P_{i,j} = Tr(rho |i><j|) = <j|rho|i>`.
    #[inline]
    pub fn overlap_element(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(j, i)]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dims.total()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Traces out the subsystems in `discard`, which must be a nonempty
    /// proper subset. Remaining subsystems keep their relative order.
    pub fn partial_trace(&self, discard: &[usize]) -> Result<Self> {
        let discard = normalize_selection(&self.dims, discard)?;
        let keep = self.dims.complement(&discard);
        let keep_off = self.dims.offsets(&keep);
        let drop_off = self.dims.offsets(&discard);
        let k = keep_off.len();
        let matrix = CMatrix::from_fn(k, k, |i, j| {
            drop_off
                .iter()
                .map(|&t| self.matrix[(keep_off[i] + t, keep_off[j] + t)])
                .sum()
        });
        Ok(DensityMatrix {
            dims: self.dims.restrict(&keep)?,
            matrix,
        })
    }

    /// Marginal on the listed subsystems (in ascending order).
    pub fn reduce_to(&self, keep: &[usize]) -> Result<Self> {
        for &s in keep {
            self.dims.check_site(s)?;
        }
        let discard = self.dims.complement(keep);
        if discard.is_empty() {
            return Ok(self.clone());
        }
        self.partial_trace(&discard)
    }

    /// Partial transpose over the subsystems in `sites`.
    pub fn partial_transpose(&self, sites: &[usize]) -> Result<CMatrix> {
        let sites = normalize_selection(&self.dims, sites)?;
        let rest = self.dims.complement(&sites);
        let rest_off = self.dims.offsets(&rest);
        let t_off = self.dims.offsets(&sites);
        let n = self.dims.total();
        let mut out = CMatrix::zeros(n, n);
        for &kr in &rest_off {
            for &kc in &rest_off {
                for &tr in &t_off {
                    for &tc in &t_off {
                        out[(kr + tr, kc + tc)] = self.matrix[(kr + tc, kc + tr)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `rho*` in the computational basis.
    pub fn conjugate(&self) -> Self {
        DensityMatrix {
            dims: self.dims.clone(),
            matrix: self.matrix.map(|z| z.conj()),
        }
    }

    /// `U_site rho U_site^dag`.
    pub fn apply_local_unitary(&self, site: usize, u: &CMatrix) -> Result<Self> {
        check_local_unitary(&self.dims, site, u)?;
        let n = self.dims.total();
        let mut matrix = self.matrix.clone();
        let mut buf = alloc::vec![ZERO; n];
        for j in 0..n {
            for i in 0..n {
                buf[i] = matrix[(i, j)];
            }
            apply_on_site(&self.dims, site, u, &mut buf, false);
            for i in 0..n {
                matrix[(i, j)] = buf[i];
            }
        }
        for i in 0..n {
            for j in 0..n {
                buf[j] = matrix[(i, j)];
            }
            apply_on_site(&self.dims, site, u, &mut buf, true);
            for j in 0..n {
                matrix[(i, j)] = buf[j];
            }
        }
        Ok(DensityMatrix {
            dims: self.dims.clone(),
            matrix,
        })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.matrix)
    }
}

fn check_len(dims: &Dims, len: usize) -> Result<()> {
    if len != dims.total() {
        return Err(Error::LengthMismatch {
            expected: dims.total(),
            found: len,
        });
    }
    Ok(())
}

fn check_local_unitary(dims: &Dims, site: usize, u: &CMatrix) -> Result<()> {
    dims.check_site(site)?;
    let d = dims.dim(site);
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            found: u.nrows().max(u.ncols()),
        });
    }
    let dev = linalg::unitary_deviation(u);
    if dev > tol::UNITARY {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// In-place `data <- U_site data`, or `data <- data U_site^dag` when
/// `adjoint_right` is set (i.e. `data[a] <- sum_b conj(U[a,b]) data[b]`).
fn apply_on_site(dims: &Dims, site: usize, u: &CMatrix, data: &mut [Complex64], adjoint_right: bool) {
    let d = dims.dim(site);
    let st = dims.stride(site);
    let rest = dims.complement(&[site]);
    let mut col = alloc::vec![ZERO; d];
    for r in dims.offsets(&rest) {
        for (b, c) in col.iter_mut().enumerate() {
            *c = data[r + b * st];
        }
        for a in 0..d {
            let mut acc = ZERO;
            for b in 0..d {
                let coef = if adjoint_right { u[(a, b)].conj() } else { u[(a, b)] };
                acc += coef * col[b];
            }
            data[r + a * st] = acc;
        }
    }
}

/// Sorted, deduplicated, range-checked, nonempty proper subset.
fn normalize_selection(dims: &Dims, sites: &[usize]) -> Result<Vec<usize>> {
    let mut v = sites.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != sites.len() {
        return Err(Error::InvalidSelection("duplicate subsystem"));
    }
    for &s in &v {
        dims.check_site(s)?;
    }
    if v.is_empty() {
        return Err(Error::InvalidSelection("empty subsystem set"));
    }
    if v.len() == dims.n() {
        return Err(Error::InvalidSelection("cannot select every subsystem"));
    }
    Ok(v)
}

/// Pauli X.
pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, linalg::ONE, linalg::ONE, ZERO])
}

/// Hadamard gate.
pub fn hadamard() -> CMatrix {
    let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    CMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}
