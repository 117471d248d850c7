//! Reduction modulo the prime `2^61 - 1`, for cheap rank lower bounds.
//!
//! Integer vectors independent modulo a prime are independent over the
//! rationals, so every rank computed here is a lower bound for the exact rank.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Mat, Scalar};

pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    let r = n % BigInt::from(PRIME);
    let r = if r < BigInt::zero() { r + PRIME } else { r };
    r.to_u64().expect("residue fits")
}

/// Image of `s` in `F_p`, or `None` when `p` divides its denominator.
pub fn reduce_scalar(s: &Scalar) -> Option<u64> {
    let den = reduce_int(s.denom());
    (den != 0).then(|| mul(reduce_int(s.numer()), inv(den)))
}

pub fn reduce_vec(v: &[Scalar]) -> Option<Vec<u64>> {
    v.iter().map(reduce_scalar).collect()
}

/// Sparse matrix over `F_p`, stored by rows.
#[derive(Clone, Debug)]
pub struct ModMat {
    rows: Vec<Vec<(usize, u64)>>,
}

impl ModMat {
    pub fn reduce(m: &Mat) -> Option<Self> {
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::new();
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    row.push((j, reduce_scalar(x)?));
                }
            }
            rows.push(row);
        }
        Some(ModMat { rows })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(j, a)| add(acc, mul(a, v[j]))))
            .collect()
    }
}

/// Semi-echelon span over `F_p` with monic pivots.
#[derive(Clone, Debug)]
pub struct ModSpan {
    ambient: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModSpan {
    pub fn new(ambient: usize) -> Self {
        ModSpan {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Adds `v` to the span; returns whether the dimension went up.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p];
            if c != 0 {
                let neg = PRIME - c;
                for (x, &r) in w.iter_mut().zip(row) {
                    if r != 0 {
                        *x = add(*x, mul(neg, r));
                    }
                }
            }
        }
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv(w[p]);
        for x in &mut w {
            *x = mul(*x, scale);
        }
        self.rows.push((p, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ints, ratio};

    #[test]
    fn residues() {
        assert_eq!(reduce_scalar(&ratio(1, 2)).map(|h| mul(h, 2)), Some(1));
        assert_eq!(reduce_scalar(&ratio(-1, 1)), Some(PRIME - 1));
        assert_eq!(reduce_scalar(&ratio(1, PRIME as i64)), None);
    }

    #[test]
    fn ranks_match_small_cases() {
        let mut s = ModSpan::new(3);
        assert!(s.insert(&reduce_vec(&ints(&[1, 2, 3])).unwrap()));
        assert!(s.insert(&reduce_vec(&ints(&[2, 4, 7])).unwrap()));
        assert!(!s.insert(&reduce_vec(&ints(&[3, 6, 10])).unwrap()));
        assert_eq!(s.dim(), 2);
        let m = ModMat::reduce(&Mat::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(m.mul_vec(&[1, 2]), vec![2, PRIME - 1]);
    }
}
