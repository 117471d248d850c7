#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use orbitquad::lie::make_sl;
use orbitquad::rep::{parse_rep_expr, weight_decomposition, Rep};

pub type Character = BTreeMap<Vec<i64>, usize>;

pub fn rep(n: usize, expr: &str) -> Rep {
    let g = Arc::new(make_sl(n).unwrap());
    parse_rep_expr(expr).unwrap().build(&g).unwrap()
}

/// Weight multiplicities of a module, read off its weight decomposition.
pub fn character(r: &Rep) -> Character {
    weight_decomposition(r)
        .unwrap()
        .into_iter()
        .map(|ws| {
            let w = ws
                .weight
                .0
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect();
            (w, ws.space.dim())
        })
        .collect()
}

/// Character of the simple sl(n)-module with the given Dynkin labels, by
/// counting semistandard tableaux of the associated partition by content.
pub fn irreducible_character(n: usize, labels: &[i64]) -> Character {
    assert_eq!(labels.len(), n - 1);
    let shape: Vec<usize> = (0..n - 1)
        .map(|i| labels[i..].iter().sum::<i64>() as usize)
        .filter(|&l| l > 0)
        .collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Character::new();
    fill(n, &cells, 0, &mut filling, &mut out);
    out
}

fn fill(
    n: usize,
    cells: &[(usize, usize)],
    k: usize,
    filling: &mut BTreeMap<(usize, usize), usize>,
    out: &mut Character,
) {
    if k == cells.len() {
        let mut content = vec![0i64; n];
        for v in filling.values() {
            content[*v] += 1;
        }
        let w = (0..n - 1).map(|i| content[i] - content[i + 1]).collect();
        *out.entry(w).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { filling[&(r, c - 1)] } else { 0 };
    let lo_col = if r > 0 { filling[&(r - 1, c)] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..n {
        filling.insert((r, c), v);
        fill(n, cells, k + 1, filling, out);
    }
    filling.remove(&(r, c));
}

pub fn add_characters(a: &mut Character, b: &Character) {
    for (w, m) in b {
        *a.entry(w.clone()).or_insert(0) += m;
    }
}

/// Largest family of pairwise incomparable subsets of an `s`-set, by
/// exhaustive branch and bound over the comparability graph.
pub fn max_antichain(s: usize) -> usize {
    let count = 1usize << s;
    let comparable: Vec<u64> = (0..count)
        .map(|a| {
            (0..count)
                .filter(|&b| a != b && (a & b == a || a & b == b))
                .fold(0u64, |m, b| m | (1 << b))
        })
        .collect();
    let all = if count == 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    };
    let mut best = 0;
    search(&comparable, all, 0, &mut best);
    best
}

fn search(comparable: &[u64], candidates: u64, size: usize, best: &mut usize) {
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    if candidates == 0 {
        *best = size;
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1 << v);
    search(comparable, rest & !comparable[v], size + 1, best);
    search(comparable, rest, size, best);
}
