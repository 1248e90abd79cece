//! Independent oracles shared by the integration tests. Nothing here calls
//! the resolution or colon code paths under test.
#![allow(dead_code)]

use std::sync::Arc;

use charpreg::groebner::{normal_form, Ideal};
use charpreg::resolution::BettiTable;
use charpreg::ring::{Monomial, Polynomial, Ring};

/// All monomials of degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix).unwrap());
            prefix.pop();
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(&[]).unwrap());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `dim (R/I)_d` by counting standard monomials of a Gröbner basis.
pub fn hilbert_by_counting(ideal: &Ideal, d: u32) -> i64 {
    let n = ideal.ring().arity();
    let leads = if ideal.is_zero() {
        Vec::new()
    } else {
        ideal.lead_monomials().unwrap()
    };
    monomials_of_degree(n, d)
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as i64
}

/// `dim (coker)_d` from Betti numbers: `sum_i (-1)^i sum_j b_ij dim R_(d-j)`.
pub fn hilbert_from_betti(betti: &BettiTable, n: usize, d: u32) -> i64 {
    let mut total = 0;
    for i in 0..betti.len() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &j in betti.shifts(i) {
            let k = d as i64 - j;
            if k >= 0 {
                total += sign * binom(k + n as i64 - 1, n as i64 - 1);
            }
        }
    }
    total
}

/// Rank of a matrix over `F_p` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `dim (I : J)_d` by brute force: the kernel of the linear map sending a
/// degree-`d` form `r` to the normal forms of `r g` modulo `I`, `g in J`.
pub fn colon_dim_brute_force(i: &Ideal, j: &Ideal, d: u32) -> usize {
    let ring = i.ring();
    let p = ring.characteristic() as u64;
    let gb = i.groebner_basis().unwrap();
    let basis = monomials_of_degree(ring.arity(), d);
    // one column per basis monomial, rows indexed by (generator, monomial of the image)
    let mut images: Vec<Vec<(usize, Monomial, u32)>> = Vec::new();
    let mut row_keys: Vec<(usize, Monomial)> = Vec::new();
    for m in &basis {
        let mut col = Vec::new();
        for (gi, g) in j.generators().iter().enumerate() {
            let prod = &Polynomial::monomial(ring, *m, 1) * g;
            let nf = if gb.is_empty() { prod } else { normal_form(&prod, gb).unwrap() };
            for (mm, c) in nf.terms() {
                if !row_keys.contains(&(gi, *mm)) {
                    row_keys.push((gi, *mm));
                }
                col.push((gi, *mm, *c));
            }
        }
        images.push(col);
    }
    // transpose: rows = basis monomials, so rank = dim of the image
    let rows: Vec<Vec<u64>> = images
        .iter()
        .map(|col| {
            let mut row = vec![0u64; row_keys.len()];
            for (gi, mm, c) in col {
                let k = row_keys.iter().position(|key| *key == (*gi, *mm)).unwrap();
                row[k] = *c as u64;
            }
            row
        })
        .collect();
    basis.len() - rank_mod_p(rows, p)
}

/// `dim J_d` for an ideal `J`, from its Gröbner basis.
pub fn ideal_dim(j: &Ideal, d: u32) -> usize {
    monomials_of_degree(j.ring().arity(), d).len() - hilbert_by_counting(j, d) as usize
}

pub fn var(ring: &Arc<Ring>, name: &str) -> Polynomial {
    Polynomial::var(ring, ring.var_index(name).unwrap())
}
