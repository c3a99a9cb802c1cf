//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the algorithms it checks: invariant factors come
//! from gcds of minors, Betti numbers from a breadth-first spanning forest,
//! abelianization from counting letters, and critical points from a brute
//! force grid search on finite differences.

#![allow(dead_code)]

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use reeb_toolkit::curves::PerturbationBump;
use reeb_toolkit::zlinalg::IntMatrix;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let rows = rng.random_range(1..=max_dim);
    let cols = rng.random_range(1..=max_dim);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect()
}

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(rows, cols).unwrap()
}

/// Fraction-free determinant in `i128`.
fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero invariant factors `d_k / d_{k-1}`, where `d_k` is the gcd of all
/// `k x k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| i128::from(m[i][j])).collect())
                    .collect();
                g = g.gcd(&det_i128(sub));
            }
        }
        if g == 0 {
            break;
        }
        let dk = BigInt::from(g);
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

/// Random product of elementary unimodular operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, ops: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        if rng.random_bool(0.5) {
            u[0][0] = -1;
        }
        return u;
    }
    for _ in 0..ops {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        match rng.random_range(0..3) {
            0 => {
                let k = rng.random_range(-2..=2);
                for c in 0..n {
                    u[i][c] += k * u[j][c];
                }
            }
            1 => u.swap(i, j),
            _ => {
                for c in 0..n {
                    u[i][c] = -u[i][c];
                }
            }
        }
    }
    u
}

pub fn mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Cycle rank by breadth-first search: every edge that does not discover a
/// new vertex closes a cycle.
pub fn betti_by_bfs(vertices: usize, edges: &[[usize; 2]]) -> usize {
    let mut adj = vec![Vec::new(); vertices];
    for (k, e) in edges.iter().enumerate() {
        adj[e[0]].push((e[1], k));
        if e[0] != e[1] {
            adj[e[1]].push((e[0], k));
        }
    }
    let mut seen = vec![false; vertices];
    let mut tree_edges = 0;
    for root in 0..vertices {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree_edges += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    edges.len() - tree_edges
}

/// Exponent sums of a word written as space separated letters, each
/// optionally followed by `^k`. No brackets.
pub fn letter_count(word: &str, generators: &[&str]) -> Vec<i64> {
    let mut out = vec![0; generators.len()];
    for tok in word.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().unwrap()),
            None => (tok, 1),
        };
        let i = generators.iter().position(|g| *g == name).unwrap();
        out[i] += exp;
    }
    out
}

/// Solve `[[a, b], [c, d]] x = rhs` with partial pivoting.
pub fn solve2(m: [[f64; 2]; 2], rhs: [f64; 2]) -> [f64; 2] {
    let (mut m, mut rhs) = (m, rhs);
    if m[1][0].abs() > m[0][0].abs() {
        m.swap(0, 1);
        rhs.swap(0, 1);
    }
    let l = m[1][0] / m[0][0];
    let d = m[1][1] - l * m[0][1];
    let y = (rhs[1] - l * rhs[0]) / d;
    let x = (rhs[0] - m[0][1] * y) / m[0][0];
    [x, y]
}

/// Central difference derivative.
pub fn central_diff(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridKind {
    Minimum,
    Maximum,
    Saddle,
}

#[derive(Clone, Copy, Debug)]
pub struct GridCritical {
    pub r: f64,
    pub theta: f64,
    pub kind: GridKind,
}

pub const GRID: usize = 2001;

/// Critical points of `g(r, theta) = r^2 + chi(r) cos(theta)` found by brute
/// force. The gradient is estimated by central differences of `g` on a
/// `GRID x GRID` lattice over `[-delta, delta] x [0, 2 pi)`, periodic in
/// theta. A node is reported when its gradient norm is a strict local
/// minimum among its eight neighbours and below a threshold proportional to
/// the mesh size times the largest second derivative.
pub fn grid_critical_points(bump: &PerturbationBump) -> Vec<GridCritical> {
    let n = GRID;
    let half = (n - 1) / 2;
    let delta = bump.delta;
    let hr = delta / half as f64;
    let nt = n - 1;
    let ht = std::f64::consts::TAU / nt as f64;
    let r_at = |i: usize| delta * (i as f64 - half as f64) / half as f64;
    let th_at = |j: usize| std::f64::consts::TAU * j as f64 / nt as f64;

    let mut g = vec![0.0; n * nt];
    for i in 0..n {
        let r = r_at(i);
        for j in 0..nt {
            g[i * nt + j] = bump.integral(r, th_at(j));
        }
    }
    let at = |i: usize, j: usize| g[i * nt + (j % nt)];
    let grad2 = |i: usize, j: usize| {
        let gr = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hr);
        let gt = (at(i, j + 1) - at(i, j + nt - 1)) / (2.0 * ht);
        gr * gr + gt * gt
    };
    let mut norm = vec![f64::INFINITY; n * nt];
    for i in 1..n - 1 {
        for j in 0..nt {
            norm[i * nt + j] = grad2(i, j);
        }
    }

    // |g_rr| <= 2 + max|chi''| and |g_tt| <= eps^2. A quintic transition of
    // height eps^2 over width eps has |chi''| <= 10 / sqrt(3) < 6.
    let eps = bump.epsilon;
    let max_rr = 8.0;
    let threshold = 2.0 * (hr * max_rr + ht * eps * eps);
    let threshold2 = threshold * threshold;

    let mut found = Vec::new();
    for i in 2..n - 2 {
        for j in 0..nt {
            let v = norm[i * nt + j];
            if v > threshold2 {
                continue;
            }
            let mut is_min = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = (i as i64 + di) as usize;
                    let jj = ((j as i64 + dj).rem_euclid(nt as i64)) as usize;
                    if norm[ii * nt + jj] <= v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if !is_min {
                continue;
            }
            let grr = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (hr * hr);
            let gtt = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j + nt - 1)) / (ht * ht);
            let grt = (at(i + 1, j + 1) - at(i + 1, j + nt - 1) - at(i - 1, j + 1) + at(i - 1, j + nt - 1))
                / (4.0 * hr * ht);
            let det = grr * gtt - grt * grt;
            let kind = if det < 0.0 {
                GridKind::Saddle
            } else if grr > 0.0 {
                GridKind::Minimum
            } else {
                GridKind::Maximum
            };
            found.push(GridCritical {
                r: r_at(i),
                theta: th_at(j),
                kind,
            });
        }
    }
    found
}

/// Distance between angles on the circle.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
