#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use opframe::algebra::{AlgebraDescriptor, AlgebraKind};
use opframe::frames::OperatorFamily;
use opframe::hilbert_module::ModuleOperator;
use opframe::quadrature::QuadratureRule;
use opframe::sampling::{self, SampleRng};
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn to_dense(m: &DMatrix<Complex64>) -> Dense {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().zip(b).flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|r| (0..n).map(|c| if r == c { c_one() } else { c_zero() }).collect()).collect()
}

fn c_one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn c_zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn add_scaled(a: &Dense, b: &Dense, t: f64) -> Dense {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * t).collect()).collect()
}

pub fn adjoint(a: &Dense) -> Dense {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|r| (0..rows).map(|c| a[c][r].conj()).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(c_zero(), |acc, l| acc + row[l] * b[l][j])).collect())
        .collect()
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations on
/// the real symmetric embedding `[[Re, −Im], [Im, Re]]` (each eigenvalue appears twice there).
pub fn jacobi_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.len();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for r in 0..n {
        for c in 0..n {
            let z = 0.5 * (h[r][c] + h[c][r].conj());
            a[r][c] = z.re;
            a[r + n][c + n] = z.re;
            a[r][c + n] = -z.im;
            a[r + n][c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..m).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(1e-300) {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..m {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    values.sort_by(|x, y| x.partial_cmp(y).unwrap());
    values.into_iter().step_by(2).collect()
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(h: &Dense) -> f64 {
    jacobi_eigenvalues(h).iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Spectral norm of an arbitrary matrix via `λ_max(A A*)`.
pub fn spectral_norm(a: &Dense) -> f64 {
    jacobi_eigenvalues(&matmul(a, &adjoint(a))).last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Flattening of a module operator: block `(r, c)` holds `M_rc`, built entry by entry.
pub fn flatten_operator(m: &ModuleOperator) -> Dense {
    let n = m.rank();
    let k = m.descriptor().dim;
    let mut out = vec![vec![c_zero(); n * k]; n * k];
    for r in 0..n {
        for cb in 0..n {
            let block = m.block(r, cb).matrix();
            for i in 0..k {
                for j in 0..k {
                    out[r * k + i][cb * k + j] = block[(i, j)];
                }
            }
        }
    }
    out
}

/// `Σᵢ wᵢ Mᵢ Mᵢ*` by explicit loops over the flattened node operators.
pub fn frame_operator_oracle(family: &OperatorFamily) -> Dense {
    weighted_sum(family, family)
}

/// `Σᵢ wᵢ Nᵢ Mᵢ*` where `N` comes from `left` and `M` from `right`.
pub fn weighted_sum(left: &OperatorFamily, right: &OperatorFamily) -> Dense {
    let dim = left.rank() * left.descriptor().dim;
    let mut acc = vec![vec![c_zero(); dim]; dim];
    for ((w, nu), m) in left.rule().weights().iter().zip(left.node_operators()).zip(right.node_operators()) {
        let f = flatten_operator(nu);
        let g = flatten_operator(m);
        for r in 0..dim {
            for cc in 0..dim {
                let mut z = c_zero();
                for l in 0..dim {
                    z += f[r][l] * g[cc][l].conj();
                }
                acc[r][cc] += z * *w;
            }
        }
    }
    acc
}

pub fn random_descriptor(rng: &mut SampleRng, max_dim: usize) -> AlgebraDescriptor {
    let dim = rng.random_range(1..=max_dim);
    let kind = if rng.random_bool(0.5) { AlgebraKind::Full } else { AlgebraKind::Diagonal };
    AlgebraDescriptor::new(kind, dim).unwrap()
}

/// Random family on Gauss–Legendre `[0, 1]`: parametric of degree ≤ 2 or sampled, entries `N(0, 1)`.
pub fn random_family(rng: &mut SampleRng, descriptor: AlgebraDescriptor, rank: usize, nodes: usize) -> OperatorFamily {
    let rule = QuadratureRule::gauss_legendre(0.0, 1.0, nodes).unwrap();
    if rng.random_bool(0.5) {
        let degree = rng.random_range(1..=3);
        let coeffs = (0..degree).map(|_| sampling::random_operator(descriptor, rank, rng)).collect();
        OperatorFamily::parametric(rule, coeffs).unwrap()
    } else {
        let ops = (0..nodes).map(|_| sampling::random_operator(descriptor, rank, rng)).collect();
        OperatorFamily::sampled(rule, ops).unwrap()
    }
}

/// Random frame with `k ≤ max_dim`, `n ≤ max_rank`; redraws until `B/A ≤ 100`.
pub fn random_frame(rng: &mut SampleRng, max_dim: usize, max_rank: usize, nodes: usize) -> OperatorFamily {
    loop {
        let d = random_descriptor(rng, max_dim);
        let n = rng.random_range(1..=max_rank);
        let fam = random_family(rng, d, n, nodes);
        let b = fam.frame_operator().optimal_bounds();
        if b.lower > 1e-2 * b.upper {
            return fam;
        }
    }
}
