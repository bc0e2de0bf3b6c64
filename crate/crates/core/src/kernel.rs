//! Integer hull kernel: brute-force facet and extreme-point search over
//! integer-scaled coordinates.
//!
//! All callers map points into full-dimensional chart coordinates and clear
//! denominators first. The kernel runs on i128 when every scaled coordinate
//! fits below 2^26 (which makes all cofactor products in dimension <= 4
//! provably overflow-free) and falls back to BigInt otherwise. Rank tests
//! always run in BigInt.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::RatVec;
use crate::rational::Rational;

pub(crate) trait KInt:
    Signed + Integer + Ord + Clone + std::hash::Hash + std::fmt::Debug + Into<BigInt>
{
}
impl KInt for i128 {}
impl KInt for BigInt {}

pub(crate) struct KFacet<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub tight: Vec<usize>,
}

fn dot<T: KInt>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}


fn det3<T: KInt>(m: &[Vec<T>]) -> T {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

fn det_rec<T: KInt>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        3 => det3(m),
        n => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                    .collect();
                let term = m[0][j].clone() * det_rec(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Cofactor vector N of d-1 rows in R^d, written into `out`:
/// det([w; rows]) = w · N. Allocation-free through dimension 4.
fn cross_into<T: KInt>(rows: &[Vec<T>], out: &mut [T]) {
    let d = rows.len() + 1;
    match d {
        2 => {
            out[0] = rows[0][1].clone();
            out[1] = -rows[0][0].clone();
        }
        3 => {
            let (a, b) = (&rows[0], &rows[1]);
            out[0] = a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone();
            out[1] = a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone();
            out[2] = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
        }
        4 => {
            let (a, b, c) = (&rows[0], &rows[1], &rows[2]);
            // 2x2 minors of the last two rows
            let m = |i: usize, j: usize| b[i].clone() * c[j].clone() - b[j].clone() * c[i].clone();
            let (m01, m02, m03) = (m(0, 1), m(0, 2), m(0, 3));
            let (m12, m13, m23) = (m(1, 2), m(1, 3), m(2, 3));
            out[0] = a[1].clone() * m23.clone() - a[2].clone() * m13.clone()
                + a[3].clone() * m12.clone();
            out[1] = -(a[0].clone() * m23 - a[2].clone() * m03.clone()
                + a[3].clone() * m02.clone());
            out[2] = a[0].clone() * m13 - a[1].clone() * m03 + a[3].clone() * m01.clone();
            out[3] = -(a[0].clone() * m12 - a[1].clone() * m02 + a[2].clone() * m01);
        }
        _ => {
            for (j, slot) in out.iter_mut().enumerate() {
                let minor: Vec<Vec<T>> = rows
                    .iter()
                    .map(|r| (0..d).filter(|&c| c != j).map(|c| r[c].clone()).collect())
                    .collect();
                let det = det_rec(&minor);
                *slot = if j % 2 == 0 { det } else { -det };
            }
        }
    }
}

/// Visits every d-subset of 0..m in lexicographic order without allocating.
fn for_each_combination(m: usize, d: usize, f: &mut impl FnMut(&[usize])) {
    if d == 0 || d > m {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        f(&idx);
        // advance odometer
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - d {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All facets of the hull of a full-dimensional point set in R^d, d >= 2,
/// oriented outward and gcd-reduced.
fn facets_fulldim<T: KInt>(pts: &[Vec<T>], d: usize) -> Vec<KFacet<T>> {
    let m = pts.len();
    debug_assert!(d >= 2 && m > d);
    let mut seen: HashSet<(Vec<T>, T)> = HashSet::new();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<T>> = vec![vec![T::zero(); d]; d - 1];
    let mut cross: Vec<T> = vec![T::zero(); d];
    for_each_combination(m, d, &mut |combo| {
        let base = &pts[combo[0]];
        for (row, &i) in rows.iter_mut().zip(&combo[1..]) {
            for ((slot, a), b) in row.iter_mut().zip(&pts[i]).zip(base) {
                *slot = a.clone() - b.clone();
            }
        }
        cross_into(&rows, &mut cross);
        if cross.iter().all(|x| x.is_zero()) {
            return;
        }
        let normal = cross.clone();
        let offset = dot(&normal, base);
        let mut any_less = false;
        let mut any_greater = false;
        for p in pts {
            let v = dot(&normal, p);
            if v > offset {
                any_greater = true;
            } else if v < offset {
                any_less = true;
            }
            if any_less && any_greater {
                return;
            }
        }
        debug_assert!(any_less || any_greater, "point set not full-dimensional");
        let (mut normal, mut offset) = if any_greater {
            (normal.into_iter().map(|x| -x).collect::<Vec<T>>(), -offset)
        } else {
            (normal, offset)
        };
        let mut g = offset.abs();
        for x in &normal {
            g = g.gcd(x);
        }
        if g > T::one() {
            normal = normal.into_iter().map(|x| x / g.clone()).collect();
            offset = offset / g.clone();
        }
        if seen.insert((normal.clone(), offset.clone())) {
            let tight: Vec<usize> = (0..m).filter(|&i| dot(&normal, &pts[i]) == offset).collect();
            out.push(KFacet {
                normal,
                offset,
                tight,
            });
        }
    });
    out
}

fn rank_bigint(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n_cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n_cols {
        let pivot = match (rank..m.len()).find(|&i| !m[i][col].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for i in rank + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..n_cols {
                    m[i][j] = &m[i][j] * &p - &f * &m[rank][j];
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn extreme_mask<T: KInt>(pts: &[Vec<T>], facets: &[KFacet<T>], d: usize) -> Vec<bool> {
    let m = pts.len();
    let mut tight_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (fi, f) in facets.iter().enumerate() {
        for &i in &f.tight {
            tight_at[i].push(fi);
        }
    }
    (0..m)
        .map(|i| {
            if tight_at[i].len() < d {
                return false;
            }
            let rows: Vec<Vec<BigInt>> = tight_at[i]
                .iter()
                .map(|&fi| facets[fi].normal.iter().map(|x| x.clone().into()).collect())
                .collect();
            rank_bigint(&rows) == d
        })
        .collect()
}

/// Exact 2D hull (monotone chain); returns indices of the extreme points
/// of a deduplicated, affinely 2-dimensional point set.
fn hull_2d_indices<T: KInt>(pts: &[Vec<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    if idx.len() <= 2 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| -> T {
        let (po, pa, pb) = (&pts[o], &pts[a], &pts[b]);
        (pa[0].clone() - po[0].clone()) * (pb[1].clone() - po[1].clone())
            - (pa[1].clone() - po[1].clone()) * (pb[0].clone() - po[0].clone())
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) <= T::zero()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) <= T::zero()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Clears denominators; returns integer coordinates and the common scale D.
pub(crate) fn scale_to_int(points: &[RatVec]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    for p in points {
        for c in &p.0 {
            scale = scale.lcm(c.denom());
        }
    }
    let scaled = points
        .iter()
        .map(|p| {
            p.0.iter()
                .map(|c| c.numer() * (&scale / c.denom()))
                .collect()
        })
        .collect();
    (scaled, scale)
}

fn try_i128(pts: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    let bound = BigInt::from(1i64 << 26);
    pts.iter()
        .map(|p| {
            p.iter()
                .map(|c| {
                    if c.abs() <= bound {
                        c.to_i128()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Sound but incomplete pruning: a point that is the midpoint of two other
/// candidates is never extreme. Collapses the grid-like candidate sets that
/// Minkowski sums of boxes and zonotopes produce.
fn midpoint_survivors<T: KInt>(pts: &[Vec<T>]) -> Vec<usize> {
    let mut doubled: HashMap<Vec<T>, usize> = HashMap::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        doubled.insert(p.iter().map(|c| c.clone() + c.clone()).collect(), i);
    }
    let mut dead = vec![false; pts.len()];
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let sum: Vec<T> = pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| a.clone() + b.clone())
                .collect();
            if let Some(&k) = doubled.get(&sum) {
                debug_assert!(k != i && k != j, "input points must be deduplicated");
                dead[k] = true;
            }
        }
    }
    (0..pts.len()).filter(|&i| !dead[i]).collect()
}

/// Affine rank of a point set, over exact big integers.
fn affine_rank_int<T: KInt>(pts: &[&Vec<T>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(pts[0])
                .map(|(a, b)| Into::<BigInt>::into(a.clone()) - Into::<BigInt>::into(b.clone()))
                .collect()
        })
        .collect();
    rank_bigint(&rows)
}

fn extreme_indices_int<T: KInt>(pts: &[Vec<T>], d: usize) -> Vec<usize> {
    if d == 2 {
        let mut out = hull_2d_indices(pts);
        out.sort_unstable();
        return out;
    }
    let survivors = midpoint_survivors(pts);
    let sub: Vec<&Vec<T>> = survivors.iter().map(|&i| &pts[i]).collect();
    let m = sub.len();

    // Seed a set of certified vertices: for each direction in the battery,
    // the lexicographic minimum of the maximizer set is extreme.
    let mut in_hull_set = vec![false; m];
    let mark_argmax = |values: &[T], in_set: &mut Vec<bool>| {
        let best = values.iter().max().expect("nonempty");
        let pick = (0..m)
            .filter(|&i| &values[i] == best)
            .min_by(|&a, &b| sub[a].cmp(sub[b]))
            .expect("nonempty");
        in_set[pick] = true;
    };
    for c in 0..d {
        let vals: Vec<T> = sub.iter().map(|p| p[c].clone()).collect();
        mark_argmax(&vals, &mut in_hull_set);
        let vals: Vec<T> = sub.iter().map(|p| -p[c].clone()).collect();
        mark_argmax(&vals, &mut in_hull_set);
    }
    let mut total = vec![T::zero(); d];
    for p in &sub {
        for (t, c) in total.iter_mut().zip(p.iter()) {
            *t = t.clone() + c.clone();
        }
    }
    let m_t = (0..m).fold(T::zero(), |acc, _| acc + T::one());
    for q in &sub {
        // spread direction m*q - total points from the mean toward q
        let dir: Vec<T> = q
            .iter()
            .zip(&total)
            .map(|(a, b)| a.clone() * m_t.clone() - b.clone())
            .collect();
        if dir.iter().all(|x| x.is_zero()) {
            continue;
        }
        let vals: Vec<T> = sub.iter().map(|p| dot(&dir, p)).collect();
        mark_argmax(&vals, &mut in_hull_set);
    }

    // Grow the seed set until it spans the full dimension.
    for i in 0..m {
        let seeded: Vec<&Vec<T>> = (0..m).filter(|&j| in_hull_set[j]).map(|j| sub[j]).collect();
        if affine_rank_int(&seeded) == d {
            break;
        }
        if !in_hull_set[i] {
            let mut trial: Vec<&Vec<T>> = seeded;
            trial.push(sub[i]);
            if affine_rank_int(&trial) > affine_rank_int(&trial[..trial.len() - 1]) {
                in_hull_set[i] = true;
            }
        }
    }

    // Incremental refinement: compute the hull of the certified set; for
    // every facet with candidates strictly outside, the outermost candidate
    // is itself a vertex and joins the set. Points never outside any facet
    // lie in the hull of the others and are non-extreme.
    loop {
        let e_idx: Vec<usize> = (0..m).filter(|&i| in_hull_set[i]).collect();
        let e_pts: Vec<Vec<T>> = e_idx.iter().map(|&i| sub[i].clone()).collect();
        let facets = facets_fulldim(&e_pts, d);
        let mut grew = false;
        for f in &facets {
            let mut best: Option<(T, usize)> = None;
            for i in 0..m {
                if in_hull_set[i] {
                    continue;
                }
                let v = dot(&f.normal, sub[i]);
                if v > f.offset {
                    let better = match &best {
                        None => true,
                        Some((bv, bi)) => v > *bv || (v == *bv && sub[i] < sub[*bi]),
                    };
                    if better {
                        best = Some((v, i));
                    }
                }
            }
            if let Some((_, i)) = best {
                in_hull_set[i] = true;
                grew = true;
            }
        }
        if !grew {
            let mask = extreme_mask(&e_pts, &facets, d);
            return e_idx
                .iter()
                .zip(mask)
                .filter_map(|(&si, keep)| keep.then_some(survivors[si]))
                .collect();
        }
    }
}

/// Indices of the extreme points of a deduplicated point set given in
/// full-dimensional chart coordinates.
pub(crate) fn extreme_indices(chart_pts: &[RatVec]) -> Vec<usize> {
    let d = chart_pts[0].dim();
    if d == 0 {
        return vec![0];
    }
    if d == 1 {
        let lo = (0..chart_pts.len())
            .min_by(|&a, &b| chart_pts[a].0[0].cmp(&chart_pts[b].0[0]))
            .expect("nonempty");
        let hi = (0..chart_pts.len())
            .max_by(|&a, &b| chart_pts[a].0[0].cmp(&chart_pts[b].0[0]))
            .expect("nonempty");
        let mut v = vec![lo, hi];
        v.sort_unstable();
        v.dedup();
        return v;
    }
    if chart_pts.len() <= d + 1 {
        // affinely independent or a simplex: everything is extreme
        return (0..chart_pts.len()).collect();
    }
    let (scaled, _) = scale_to_int(chart_pts);
    match try_i128(&scaled) {
        Some(small) => extreme_indices_int(&small, d),
        None => extreme_indices_int(&scaled, d),
    }
}

/// Facets of the hull of a full-dimensional chart point set (d >= 1):
/// outward rational normals, offsets, and tight point indices.
pub(crate) fn chart_facets(chart_pts: &[RatVec]) -> Vec<(RatVec, Rational, Vec<usize>)> {
    let d = chart_pts[0].dim();
    debug_assert!(d >= 1);
    if d == 1 {
        let xs: Vec<&Rational> = chart_pts.iter().map(|p| &p.0[0]).collect();
        let lo = xs.iter().min().expect("nonempty");
        let hi = xs.iter().max().expect("nonempty");
        let tight_of = |v: &Rational| -> Vec<usize> {
            (0..xs.len()).filter(|&i| xs[i] == v).collect()
        };
        return vec![
            (
                RatVec::from_i64(&[1]),
                (*hi).clone(),
                tight_of(hi),
            ),
            (
                RatVec::from_i64(&[-1]),
                -(*lo).clone(),
                tight_of(lo),
            ),
        ];
    }
    let (scaled, denom) = scale_to_int(chart_pts);
    let scale = Rational::from_integer(denom);
    let to_output = |facets: Vec<KFacet<BigInt>>| -> Vec<(RatVec, Rational, Vec<usize>)> {
        facets
            .into_iter()
            .map(|f| {
                let normal = RatVec(
                    f.normal
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                );
                let offset = Rational::from_integer(f.offset) / &scale;
                (normal, offset, f.tight)
            })
            .collect()
    };
    match try_i128(&scaled) {
        Some(small) => to_output(
            facets_fulldim(&small, d)
                .into_iter()
                .map(|f| KFacet {
                    normal: f.normal.into_iter().map(BigInt::from).collect(),
                    offset: BigInt::from(f.offset),
                    tight: f.tight,
                })
                .collect(),
        ),
        None => to_output(facets_fulldim(&scaled, d)),
    }
}
