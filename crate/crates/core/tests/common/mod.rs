//! Reference computations that share no code with the library: modules are
//! explicit quiver representations and kernels come from row reduction.

#![allow(dead_code)]

use std::collections::HashMap;

use nakayama::{KupischSeries, PdValue, SyzygyResult, UniserialModule};

const P: i64 = 1_000_003;

/// A graded representation of the Nakayama quiver: basis vector `k` sits at
/// vertex `vertex[k]` and the arrows act by the matrix `arrow`.
struct Rep {
    vertex: Vec<usize>,
    arrow: Vec<Vec<i64>>,
}

fn vertex_after(a: &KupischSeries, v: usize, steps: usize) -> usize {
    let n = a.n();
    if a.is_cyclic() {
        (v - 1 + steps) % n + 1
    } else {
        v + steps
    }
}

/// The uniserial representation with the given top and length: a string of
/// one-dimensional spaces joined by identity maps.
fn string(a: &KupischSeries, top: usize, len: usize) -> Rep {
    let vertex = (0..len).map(|k| vertex_after(a, top, k)).collect();
    let mut arrow = vec![vec![0; len]; len];
    for k in 0..len.saturating_sub(1) {
        arrow[k + 1][k] = 1;
    }
    Rep { vertex, arrow }
}

fn inv(x: i64) -> i64 {
    let (mut base, mut e, mut acc) = (x.rem_euclid(P), P - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

/// Basis of the null space of `m` (rows x cols) over GF(P).
fn null_space(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * s % P;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-rows[i][f]).rem_euclid(P);
            }
            v
        })
        .collect()
}

fn rank(vectors: &[Vec<i64>], cols: usize) -> usize {
    vectors.len() - null_space(&transpose(vectors, cols), vectors.len()).len()
}

fn transpose(vectors: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|j| vectors.iter().map(|v| v[j]).collect()).collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b % P).sum::<i64>() % P)
        .collect()
}

/// Kernel of the projective cover of `M(top, len)`, identified by its
/// dimension vector and top. Panics if the kernel is not uniserial.
pub fn syzygy(a: &KupischSeries, top: usize, len: usize) -> Option<(usize, usize)> {
    let c = a.c(top) as usize;
    assert!(len >= 1 && len <= c);
    let cover = string(a, top, c);
    // the cover sends the top generator to the top of M, and hence the
    // basis vector reached by k arrows to the one reached by k arrows in M
    let map: Vec<Vec<i64>> = (0..len).map(|i| (0..c).map(|k| i64::from(i == k)).collect()).collect();
    let target = string(a, top, len);
    for k in 0..c {
        let unit: Vec<i64> = (0..c).map(|j| i64::from(j == k)).collect();
        let lhs = apply(&map, &apply(&cover.arrow, &unit));
        let rhs = apply(&target.arrow, &apply(&map, &unit));
        assert_eq!(lhs, rhs, "cover map does not commute with the arrows");
    }
    let kernel = null_space(&map, c);
    if kernel.is_empty() {
        return None;
    }
    for v in &kernel {
        let image = apply(&cover.arrow, v);
        let mut with = kernel.clone();
        with.push(image);
        assert_eq!(rank(&with, c), kernel.len(), "kernel not closed under arrows");
    }
    // top of the kernel: vectors not reached by an arrow from inside it
    let radical: Vec<Vec<i64>> = kernel.iter().map(|v| apply(&cover.arrow, v)).collect();
    let rad_rank = rank(&radical, c);
    assert_eq!(
        kernel.len() - rad_rank,
        1,
        "kernel of {top},{len} has a decomposable top"
    );
    let top_vertex = (0..c)
        .find(|&k| {
            let unit: Vec<i64> = (0..c).map(|j| i64::from(j == k)).collect();
            let mut in_kernel = kernel.clone();
            in_kernel.push(unit.clone());
            let mut in_radical = radical.clone();
            in_radical.push(unit);
            rank(&in_kernel, c) == kernel.len() && rank(&in_radical, c) > rad_rank
        })
        .map(|k| cover.vertex[k])
        .expect("kernel top is a basis vector");
    Some((top_vertex, kernel.len()))
}

/// Projective dimension by iterating the oracle syzygy. Beyond the number
/// of indecomposables the orbit must have repeated, so the value is infinite.
pub fn projective_dimension(a: &KupischSeries, top: usize, len: usize) -> PdValue {
    pd_from(a, top, len, |t, l| syzygy(a, t, l))
}

fn pd_from(
    a: &KupischSeries,
    top: usize,
    len: usize,
    mut omega: impl FnMut(usize, usize) -> Option<(usize, usize)>,
) -> PdValue {
    let bound: usize = a.entries().iter().map(|&x| x as usize).sum();
    let mut current = (top, len);
    for steps in 0..=bound {
        match omega(current.0, current.1) {
            None => return PdValue::Finite(steps as u32),
            Some(next) => current = next,
        }
    }
    PdValue::Infinite
}

/// Compares library and oracle on every module of `a`; returns mismatches.
pub fn compare(a: &KupischSeries) -> Vec<String> {
    let mut oracle_syzygy = HashMap::new();
    for v in 1..=a.n() {
        for len in 1..=a.c(v) as usize {
            oracle_syzygy.insert((v, len), syzygy(a, v, len));
        }
    }
    let table = nakayama::PdTable::new(a);
    let mut out = Vec::new();
    for (&(v, len), &expected) in &oracle_syzygy {
        let m = UniserialModule::new(v, len as u32);
        let got = match a.syzygy(m).expect("valid module") {
            SyzygyResult::Zero => None,
            SyzygyResult::Module(k) => Some((k.top, k.len as usize)),
        };
        if got != expected {
            out.push(format!("{a}: Ω{m} = {got:?}, oracle {expected:?}"));
        }
        let pd = table.pd(m).expect("valid module");
        let pd_walk = nakayama::projective_dimension(a, m).expect("valid module");
        let oracle = pd_from(a, v, len, |t, l| oracle_syzygy[&(t, l)]);
        if pd != oracle || pd_walk != oracle {
            out.push(format!("{a}: pd {m} = {pd}/{pd_walk}, oracle {oracle}"));
        }
    }
    out.sort();
    out
}

/// Every Kupisch series (all rotations, selfinjective included) with `n`
/// vertices and entries at most `cap`, cyclic then linear.
pub fn all_series(n: usize, cap: u32) -> Vec<KupischSeries> {
    let mut out = Vec::new();
    let mut c = vec![1u32; n];
    loop {
        if let Ok(a) = KupischSeries::cyclic(&c) {
            out.push(a);
        }
        if let Ok(a) = KupischSeries::linear(&c) {
            out.push(a);
        }
        let Some(i) = (0..n).rev().find(|&i| c[i] < cap) else {
            break;
        };
        c[i] += 1;
        for x in &mut c[i + 1..] {
            *x = 1;
        }
    }
    out
}
