//! Brute-force graded Hilbert function: `dim (S/I)_n` from the rank of the
//! span of `m * g` over all monomials `m`, modulo a prime.

use std::collections::HashMap;

use super::corpus::{monomials, Member};

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Rank of the rows, eliminating on the first nonzero column.
fn rank(rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    for mut r in rows {
        loop {
            let Some(c) = r.iter().position(|&v| v != 0) else { break };
            match pivots.get(&c) {
                Some(piv) => {
                    let f = r[c];
                    for j in c..r.len() {
                        if piv[j] != 0 {
                            r[j] = (r[j] + p - f * piv[j] % p) % p;
                        }
                    }
                }
                None => {
                    let s = inv(r[c], p);
                    r.iter_mut().for_each(|v| *v = *v * s % p);
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub fn hilbert_function(m: &Member, upto: u32) -> Vec<u64> {
    assert!(m.graded && m.p > 0);
    let p = m.p as u64;
    (0..=upto)
        .map(|n| {
            let cols = monomials(m.nvars, n);
            let index: HashMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut rows = vec![];
            for g in &m.gens {
                let d = g.degree();
                if d > n {
                    continue;
                }
                for mono in monomials(m.nvars, n - d) {
                    let mut row = vec![0u64; cols.len()];
                    for (c, e) in &g.terms {
                        let prod: Vec<u32> = e.iter().zip(&mono).map(|(a, b)| a + b).collect();
                        let j = index[&prod];
                        row[j] = (row[j] + c.rem_euclid(m.p) as u64) % p;
                    }
                    rows.push(row);
                }
            }
            (cols.len() - rank(rows, p)) as u64
        })
        .collect()
}

/// Standard monomials of a monomial ideal, counted by degree.
pub fn monomial_hilbert_function(m: &Member, upto: u32) -> Vec<u64> {
    (0..=upto)
        .map(|n| {
            monomials(m.nvars, n)
                .iter()
                .filter(|mono| {
                    !m.gens.iter().any(|g| g.terms[0].1.iter().zip(mono.iter()).all(|(a, b)| a <= b))
                })
                .count() as u64
        })
        .collect()
}
