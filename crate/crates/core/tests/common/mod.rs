//! Brute-force oracles. None of these touch the hull engine: facets come from
//! scanning point subsets, volumes from a pulling triangulation built on those
//! facets, and membership from exact barycentric solves.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use numtope::arith::{affine_rank, int_det_i64, primitive_kernel_vector, rank};

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Facet inequalities `a.x <= b` of a full-dimensional point set in `R^d`.
pub fn brute_facets(points: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let d = points[0].len();
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    if d == 1 {
        let lo = points.iter().map(|p| p[0]).min().unwrap();
        let hi = points.iter().map(|p| p[0]).max().unwrap();
        return vec![(vec![-1], -lo), (vec![1], hi)];
    }
    for s in subsets(points.len(), d) {
        let rows: Vec<Vec<i64>> = s[1..]
            .iter()
            .map(|&i| points[i].iter().zip(&points[s[0]]).map(|(a, b)| a - b).collect())
            .collect();
        if rank(&rows) != d - 1 {
            continue;
        }
        let Some(a) = primitive_kernel_vector(&rows, d) else {
            continue;
        };
        let mut a: Vec<i64> = a.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let mut b = dot(&a, &points[s[0]]);
        let vals: Vec<i64> = points.iter().map(|p| dot(&a, p)).collect();
        if vals.iter().all(|&v| v >= b) {
            a.iter_mut().for_each(|x| *x = -*x);
            b = -b;
        } else if !vals.iter().all(|&v| v <= b) {
            continue;
        }
        if !out.contains(&(a.clone(), b)) {
            out.push((a, b));
        }
    }
    out
}

/// Coordinates on which the affine hull of `pts` projects injectively.
fn spanning_coords(pts: &[&Vec<i64>]) -> Vec<usize> {
    let d = pts[0].len();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let target = rank(&diffs);
    let mut cols = Vec::new();
    for j in 0..d {
        cols.push(j);
        let sub: Vec<Vec<i64>> = diffs.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        if rank(&sub) < cols.len() {
            cols.pop();
        }
        if cols.len() == target {
            break;
        }
    }
    cols
}

/// Pulling triangulation of the face spanned by `face` (indices into `all`):
/// cone from its lexicographically smallest point over the triangulated
/// facets not containing it.
pub fn pulling_triangulation(all: &[Vec<i64>], face: &[usize]) -> Vec<Vec<usize>> {
    let pts: Vec<&Vec<i64>> = face.iter().map(|&i| &all[i]).collect();
    let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    let k = affine_rank(&refs).unwrap_or(0);
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let cols = spanning_coords(&pts);
    let proj: Vec<Vec<i64>> = pts.iter().map(|p| cols.iter().map(|&c| p[c]).collect()).collect();
    let apex = (0..face.len()).min_by_key(|&i| &proj[i]).unwrap();
    let mut out = Vec::new();
    for (a, b) in brute_facets(&proj) {
        let on: Vec<usize> = (0..face.len()).filter(|&i| dot(&a, &proj[i]) == b).collect();
        if on.contains(&apex) {
            continue;
        }
        let sub: Vec<usize> = on.iter().map(|&i| face[i]).collect();
        for mut s in pulling_triangulation(all, &sub) {
            s.push(face[apex]);
            out.push(s);
        }
    }
    out
}

/// Normalized volume of `conv(points)` from the pulling triangulation.
pub fn oracle_normalized_volume(points: &[Vec<i64>]) -> BigInt {
    if points[0].is_empty() {
        return BigInt::from(1);
    }
    let all: Vec<usize> = (0..points.len()).collect();
    pulling_triangulation(points, &all)
        .into_iter()
        .map(|s| {
            let m: Vec<Vec<i64>> = s[1..]
                .iter()
                .map(|&i| points[i].iter().zip(&points[s[0]]).map(|(a, b)| a - b).collect())
                .collect();
            int_det_i64(&m).unwrap().abs()
        })
        .sum()
}

/// Solves `cols * lambda = rhs` exactly; `None` if inconsistent.
fn solve(cols: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let d = rhs.len();
    let k = cols.len();
    let q = |v: i64| BigRational::from_integer(v.into());
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| q(c[i])).collect();
            row.push(q(rhs[i]));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..d).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][k].clone();
    }
    Some(sol)
}

/// Whether `x` lies in the convex hull of `others`, by Caratheodory: some
/// affinely independent subset contains it with non-negative barycentric
/// coordinates.
pub fn in_hull(x: &[i64], others: &[&[i64]]) -> bool {
    let d = x.len();
    for size in 1..=(d + 1).min(others.len()) {
        for s in subsets(others.len(), size) {
            let base = others[s[0]];
            let cols: Vec<Vec<i64>> = s[1..]
                .iter()
                .map(|&i| others[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            if !cols.is_empty() && rank(&cols) < cols.len() {
                continue;
            }
            let rhs: Vec<i64> = x.iter().zip(base).map(|(a, b)| a - b).collect();
            if let Some(l) = solve(&cols, &rhs) {
                let total: BigRational = l.iter().cloned().sum();
                if l.iter().all(|v| !v.is_negative()) && total <= BigRational::from_integer(1.into()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Indices of the points that are not in the hull of the others.
pub fn oracle_vertices(points: &[Vec<i64>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let others: Vec<&[i64]> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.as_slice())
                .collect();
            others.is_empty() || !in_hull(&points[i], &others)
        })
        .collect()
}

/// `|tP ∩ Z^d|` by scanning every point of the bounding box of `tP`.
pub fn grid_count(points: &[Vec<i64>], t: i64) -> u64 {
    let d = points[0].len();
    if d == 0 {
        return 1;
    }
    let facets = brute_facets(points);
    let lo: Vec<i64> = (0..d).map(|k| t * points.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| t * points.iter().map(|p| p[k]).max().unwrap()).collect();
    let mut x = lo.clone();
    let mut count = 0;
    loop {
        if facets.iter().all(|(a, b)| dot(a, &x) <= t * b) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == d {
                return count;
            }
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

/// Exponent vectors of `1..=n` in dimension `pi(n)`.
pub fn natural_points(n: u64) -> Vec<Vec<i64>> {
    let cloud = numtope::numsys::member_points(&numtope::numsys::SubsetSpec::naturals(), n).unwrap();
    cloud.members.iter().map(|(_, v)| v.coords().to_vec()).collect()
}
