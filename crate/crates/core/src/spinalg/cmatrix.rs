//! Small dense complex matrices for the two-spin algebra.

use num_complex::Complex;

use crate::real::Real;

/// `N×N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<T, const N: usize> {
    pub a: [[Complex<T>; N]; N],
}

pub type CMat2<T> = CMat<T, 2>;
pub type CMat4<T> = CMat<T, 4>;

impl<T: Real, const N: usize> CMat<T, N> {
    pub fn zeros() -> Self {
        Self {
            a: [[Complex::new(T::zero(), T::zero()); N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.a[i][i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_rows(a: [[Complex<T>; N]; N]) -> Self {
        Self { a }
    }

    /// Rank-one projector `|v⟩⟨v|`.
    pub fn projector(v: &[Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.a[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            t = t + self.a[i][i];
        }
        t
    }

    pub fn scaled(&self, s: T) -> Self {
        let mut m = *self;
        for row in m.a.iter_mut() {
            for v in row.iter_mut() {
                *v = Complex::new(v.re * s, v.im * s);
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..N {
            for j in 0..N {
                m.a[i][j] = m.a[i][j] + other.a[i][j];
            }
        }
        m
    }

    /// `Tr(self · other)`.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            for j in 0..N {
                t = t + self.a[i][j] * other.a[j][i];
            }
        }
        t
    }

    /// Largest deviation from Hermiticity, `max |a_ij − conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                let d = self.a[i][j] - self.a[j][i].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian matrix by the cyclic complex Jacobi
    /// method, sorted in descending order. The caller is responsible for
    /// passing a (numerically) Hermitian matrix.
    pub fn hermitian_eigenvalues(&self) -> [T; N] {
        let mut m = *self;
        let scale = {
            let mut s = T::zero();
            for i in 0..N {
                for j in 0..N {
                    s = s.max(m.a[i][j].norm());
                }
            }
            s.max(T::one())
        };
        let tol = T::epsilon() * scale;
        for _sweep in 0..60 {
            let mut off = T::zero();
            for p in 0..N {
                for q in (p + 1)..N {
                    off = off.max(m.a[p][q].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    let apq = m.a[p][q];
                    let beta = apq.norm();
                    if beta <= tol * T::of(1e-2) {
                        continue;
                    }
                    let u = apq / Complex::new(beta, T::zero());
                    let app = m.a[p][p].re;
                    let aqq = m.a[q][q].re;
                    let tau = (aqq - app) / (T::of(2.0) * beta);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    let cs = Complex::new(c, T::zero());
                    let su = u * s;
                    // Column update: col_p ← c·col_p + s·ū·col_q,
                    //                col_q ← −s·u·col_p + c·col_q.
                    for k in 0..N {
                        let kp = m.a[k][p];
                        let kq = m.a[k][q];
                        m.a[k][p] = kp * cs + kq * su.conj();
                        m.a[k][q] = kq * cs - kp * su;
                    }
                    // Row update with the adjoint rotation.
                    for k in 0..N {
                        let pk = m.a[p][k];
                        let qk = m.a[q][k];
                        m.a[p][k] = pk * cs + qk * su;
                        m.a[q][k] = qk * cs - pk * su.conj();
                    }
                }
            }
        }
        let mut eig = [T::zero(); N];
        for i in 0..N {
            eig[i] = m.a[i][i].re;
        }
        eig.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        eig
    }
}

impl<T: Real> CMat2<T> {
    /// Tensor product, basis ordered `(↑↑, ↑↓, ↓↑, ↓↓)` with the first
    /// factor as the slow index.
    pub fn kron(&self, other: &CMat2<T>) -> CMat4<T> {
        let mut m = CMat4::zeros();
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        m.a[2 * i1 + i2][2 * j1 + j2] = self.a[i1][j1] * other.a[i2][j2];
                    }
                }
            }
        }
        m
    }
}

impl<T: Real> CMat4<T> {
    /// Partial transpose over the second (Λ̄) factor.
    pub fn partial_transpose_second(&self) -> Self {
        let mut m = Self::zeros();
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        m.a[2 * i1 + i2][2 * j1 + j2] = self.a[2 * i1 + j2][2 * j1 + i2];
                    }
                }
            }
        }
        m
    }

    /// Trace over the second factor, leaving the Λ density matrix.
    pub fn partial_trace_second(&self) -> CMat2<T> {
        let mut m = CMat2::zeros();
        for i1 in 0..2 {
            for j1 in 0..2 {
                for k in 0..2 {
                    m.a[i1][j1] = m.a[i1][j1] + self.a[2 * i1 + k][2 * j1 + k];
                }
            }
        }
        m
    }

    /// Trace over the first factor, leaving the Λ̄ density matrix.
    pub fn partial_trace_first(&self) -> CMat2<T> {
        let mut m = CMat2::zeros();
        for i2 in 0..2 {
            for j2 in 0..2 {
                for k in 0..2 {
                    m.a[i2][j2] = m.a[i2][j2] + self.a[2 * k + i2][2 * k + j2];
                }
            }
        }
        m
    }
}
