use num_complex::Complex64;

use super::{DenseMatrix, Tolerances};
use crate::error::{Error, Result};

/// Eigenvalues of a general square matrix, in no particular order.
///
/// The matrix is first split into irreducible diagonal blocks (strongly
/// connected components of its sparsity graph); each block is balanced,
/// reduced to Hessenberg form and iterated with single-shift complex QR.
pub fn general_eigenvalues(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    general_eigenvalues_with(m, &Tolerances::default())
}

pub fn general_eigenvalues_with(m: &DenseMatrix, tol: &Tolerances) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::LengthMismatch {
            left: m.rows(),
            right: m.cols(),
        });
    }
    let mut out = Vec::with_capacity(m.rows());
    for comp in strongly_connected_components(m) {
        if comp.len() == 1 {
            out.push(m[(comp[0], comp[0])]);
            continue;
        }
        let n = comp.len();
        let mut h: Vec<Complex64> = (0..n * n)
            .map(|idx| m[(comp[idx / n], comp[idx % n])])
            .collect();
        balance(&mut h, n);
        hessenberg(&mut h, n);
        out.extend(hessenberg_qr(&mut h, n, tol.qr_iterations)?);
    }
    Ok(out)
}

/// Iterative Tarjan over the graph with an edge `i -> j` whenever `a_ij != 0`.
fn strongly_connected_components(m: &DenseMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    let zero = Complex64::new(0.0, 0.0);
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && m[(i, j)] != zero).collect())
        .collect();

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Radix-2 diagonal similarity balancing.
fn balance(a: &mut [Complex64], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[j * n + i]);
                    r += l1(a[i * n + j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let gi = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= gi;
                }
                for j in 0..n {
                    a[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(a: &mut [Complex64], n: usize) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let x0 = a[lo * n + k];
        let tail: f64 = (lo + 1..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] += phase * alpha;
        let beta = 2.0 / (lo..n).map(|i| v[i].norm_sqr()).sum::<f64>();

        // left: A[lo.., k..] -= beta v (v* A)
        for j in k..n {
            let mut acc = zero;
            for i in lo..n {
                acc += v[i].conj() * a[i * n + j];
            }
            acc *= beta;
            for i in lo..n {
                a[i * n + j] -= v[i] * acc;
            }
        }
        // right: A[.., lo..] -= beta (A v) v*
        for r in 0..n {
            let row = &mut a[r * n..(r + 1) * n];
            let mut acc = zero;
            for j in lo..n {
                acc += row[j] * v[j];
            }
            acc *= beta;
            for j in lo..n {
                row[j] -= acc * v[j].conj();
            }
        }
        a[lo * n + k] = -phase * alpha;
        for i in lo + 1..n {
            a[i * n + k] = zero;
        }
    }
}

/// Unitary rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

fn hessenberg_qr(h: &mut [Complex64], n: usize, per_eigenvalue: usize) -> Result<Vec<Complex64>> {
    let eps = f64::EPSILON;
    let cap = per_eigenvalue.max(1) * n;
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut total = 0;
    let mut iter = 0;
    let at = |h: &[Complex64], i: usize, j: usize| h[i * n + j];

    loop {
        if hi == 0 {
            eig.push(at(h, 0, 0));
            break;
        }
        // find the start of the unreduced active block
        let mut l = hi;
        while l > 0 {
            let mut s = at(h, l - 1, l - 1).norm() + at(h, l, l).norm();
            if s == 0.0 {
                s = (l.saturating_sub(1)..=hi)
                    .flat_map(|i| (l.saturating_sub(1)..=hi).map(move |j| (i, j)))
                    .map(|(i, j)| at(h, i, j).norm())
                    .fold(0.0, f64::max);
            }
            if at(h, l, l - 1).norm() <= eps * s {
                h[l * n + l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(at(h, hi, hi));
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > cap {
            return Err(Error::NoConvergence {
                routine: "Hessenberg QR",
                iterations: cap,
            });
        }

        let mu = if iter % 10 == 0 {
            at(h, hi, hi) + 0.75 * at(h, hi, hi - 1).norm()
        } else {
            let a = at(h, hi - 1, hi - 1);
            let b = at(h, hi - 1, hi);
            let c = at(h, hi, hi - 1);
            let d = at(h, hi, hi);
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in l..hi {
            let (x, y) = if k == l {
                (at(h, l, l) - mu, at(h, l + 1, l))
            } else {
                (at(h, k, k - 1), at(h, k + 1, k - 1))
            };
            let (c, s) = givens(x, y);
            let first = if k == l { l } else { k - 1 };
            for j in first..=hi {
                let a = at(h, k, j);
                let b = at(h, k + 1, j);
                h[k * n + j] = a * c + s * b;
                h[(k + 1) * n + j] = -s.conj() * a + b * c;
            }
            if k > l {
                h[(k + 1) * n + k - 1] = Complex64::new(0.0, 0.0);
            }
            let last = (k + 2).min(hi);
            for i in l..=last {
                let a = at(h, i, k);
                let b = at(h, i, k + 1);
                h[i * n + k] = a * c + b * s.conj();
                h[i * n + k + 1] = -a * s + b * c;
            }
        }
    }
    Ok(eig)
}
