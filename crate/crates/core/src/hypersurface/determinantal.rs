//! The ideal of 2x2 minors of the generic matrix
//! `[[x, y, z], [u, v, w]]` and its Frobenius-power family.
//!
//! With `g1 = yu - xv`, `g2 = zu - xw`, `g3 = zv - yw` and `q = p^e`:
//!
//! * `h_j = x^j z^q u^(q-j) v^j - x^q y^j w^q` for `0 <= j <= q`, so that
//!   `h_0 = g2^q` and `h_q = x^q g3^q`;
//! * `G = [h_0, ..., h_(q-1), g3^q, g1]` is a Gröbner basis of
//!   `(g1, g2^q, g3^q)` under grevlex with `x > y > z > u > v > w`;
//! * over `S = R/g1R`, `S/(g2^q, g3^q)` has an eventually 2-periodic
//!   linear minimal resolution with Betti shifts
//!   `0; 2q, 2q; 3q (q+1 times); 3q+1 (2q times); 3q+2 (2q times); ...`.

use std::sync::Arc;

use serde::Serialize;

use super::{mono, HypersurfaceContext};
use crate::error::Result;
use crate::groebner::{s_polynomial, Ideal};
use crate::resolution::{GradedFreeModule, GradedMap};
use crate::ring::{MonomialOrder, Polynomial, Ring};

pub const VARS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// The determinantal ideal and its `q = p^e` family.
#[derive(Clone, Debug)]
pub struct Determinantal {
    ring: Arc<Ring>,
    e: u32,
    q: u32,
    pub g1: Polynomial,
    pub g2: Polynomial,
    pub g3: Polynomial,
}

impl Determinantal {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let ring = Ring::new(p, &VARS, MonomialOrder::Grevlex)?;
        Determinantal::in_ring(&ring, e)
    }

    /// Uses an existing ring with variables named `x, y, z, u, v, w` (in that order).
    pub fn in_ring(ring: &Arc<Ring>, e: u32) -> Result<Self> {
        let q = (ring.characteristic() as u64)
            .checked_pow(e)
            .filter(|&q| q <= u16::MAX as u64 / 4)
            .ok_or_else(|| crate::Error::Usage(format!("p^{e} is too large")))? as u32;
        let m = |e: [u32; 6]| mono(ring, &e);
        let g1 = &m([0, 1, 0, 1, 0, 0]) - &m([1, 0, 0, 0, 1, 0]);
        let g2 = &m([0, 0, 1, 1, 0, 0]) - &m([1, 0, 0, 0, 0, 1]);
        let g3 = &m([0, 0, 1, 0, 1, 0]) - &m([0, 1, 0, 0, 0, 1]);
        Ok(Determinantal {
            ring: ring.clone(),
            e,
            q,
            g1,
            g2,
            g3,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    fn m(&self, e: [u32; 6]) -> Polynomial {
        mono(&self.ring, &e)
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, vec![self.g1.clone(), self.g2.clone(), self.g3.clone()]).unwrap()
    }

    pub fn g2q(&self) -> Polynomial {
        self.g2.frobenius_pow(self.e).expect("small exponent")
    }

    pub fn g3q(&self) -> Polynomial {
        self.g3.frobenius_pow(self.e).expect("small exponent")
    }

    /// `(g1, g2^q, g3^q)`, which equals `I^[q] + g1 R`.
    pub fn target_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, vec![self.g1.clone(), self.g2q(), self.g3q()]).unwrap()
    }

    /// `h_j = x^j z^q u^(q-j) v^j - x^q y^j w^q`.
    pub fn h(&self, j: u32) -> Polynomial {
        let q = self.q;
        assert!(j <= q);
        &self.m([j, 0, q, q - j, j, 0]) - &self.m([q, j, 0, 0, 0, q])
    }

    /// `[h_0, ..., h_(q-1), g3^q, g1]`.
    pub fn g_family(&self) -> Vec<Polynomial> {
        let mut g: Vec<Polynomial> = (0..self.q).map(|j| self.h(j)).collect();
        g.push(self.g3q());
        g.push(self.g1.clone());
        g
    }

    /// The `3 x (q+2)` matrix `T` with `G = [g2^q, g3^q, g1] T`.
    ///
    /// Row one is `1, y, ..., y^(q-1), 0, 0`, row two is `e_(q+1)`, and the
    /// third row collects the `g1`-coefficients accumulated by the recursion
    /// `h_(j+1) = y h_j - x^j z^q u^(q-j-1) v^j g1`.
    pub fn t_matrix(&self) -> Vec<Vec<Polynomial>> {
        let q = self.q;
        let zero = Polynomial::zero(&self.ring);
        let one = Polynomial::one(&self.ring);
        let n = q as usize + 2;
        let mut rows = vec![vec![zero.clone(); n]; 3];
        let mut third = zero.clone();
        for j in 0..q {
            rows[0][j as usize] = self.m([0, j, 0, 0, 0, 0]);
            rows[2][j as usize] = third.clone();
            let c = self.m([j, 0, q, q - j - 1, j, 0]);
            third = &(&self.m([0, 1, 0, 0, 0, 0]) * &third) - &c;
        }
        rows[1][n - 2] = one.clone();
        rows[2][n - 1] = one;
        rows
    }

    /// The hypersurface `S = R/g1R`.
    pub fn hypersurface(&self) -> HypersurfaceContext {
        HypersurfaceContext::new(self.g1.clone()).expect("g1 is homogeneous")
    }

    /// `[g2^q, g3^q]: S(-2q)^2 -> S`, presenting `S/(g2^q, g3^q)`.
    pub fn presentation(&self) -> GradedMap {
        GradedMap::row(&self.ring, &[self.g2q(), self.g3q()]).unwrap()
    }

    /// Columns `[y^j v^(q-j); -x^j u^(q-j)]`, `0 <= j <= q`.
    pub fn first_syzygy_columns(&self) -> Vec<Vec<Polynomial>> {
        let q = self.q;
        (0..=q)
            .map(|j| {
                vec![
                    self.m([0, j, 0, 0, q - j, 0]),
                    -&self.m([j, 0, 0, q - j, 0, 0]),
                ]
            })
            .collect()
    }

    /// The matrix `M` of [`Self::first_syzygy_columns`] as a map
    /// `S(-3q)^(q+1) -> S(-2q)^2`.
    pub fn m_matrix(&self) -> GradedMap {
        let q = self.q as i64;
        GradedMap::from_columns(
            &self.ring,
            GradedFreeModule::new(vec![2 * q, 2 * q]),
            self.first_syzygy_columns(),
        )
        .unwrap()
    }

    /// `W_i = x e_i - u e_(i+1)` and `U_i = y e_i - v e_(i+1)` in `R^(q+1)`,
    /// `1 <= i <= q`, as `(W, U)`.
    pub fn w_u_vectors(&self) -> (Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>) {
        let n = self.q as usize + 1;
        let zero = Polynomial::zero(&self.ring);
        let var = |i| Polynomial::var(&self.ring, i);
        let (x, y, u, v) = (var(0), var(1), var(3), var(4));
        let build = |a: &Polynomial, b: &Polynomial| -> Vec<Vec<Polynomial>> {
            (0..self.q as usize)
                .map(|i| {
                    let mut col = vec![zero.clone(); n];
                    col[i] = a.clone();
                    col[i + 1] = -b;
                    col
                })
                .collect()
        };
        (build(&x, &u), build(&y, &v))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityFamily {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityFamily {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub families: Vec<IdentityFamily>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(IdentityFamily::passed)
    }

    pub fn summary(&self) -> String {
        let ok = self.families.iter().filter(|f| f.passed()).count();
        if self.all_pass() {
            format!("all {} identity families pass (q={})", self.families.len(), self.q)
        } else {
            format!(
                "{ok} of {} identity families pass (q={})",
                self.families.len(),
                self.q
            )
        }
    }
}

struct Checker {
    family: IdentityFamily,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Checker {
            family: IdentityFamily {
                name,
                checked: 0,
                failures: Vec::new(),
            },
        }
    }

    fn eq(&mut self, label: String, lhs: &Polynomial, rhs: &Polynomial) {
        self.family.checked += 1;
        if lhs != rhs {
            self.family
                .failures
                .push(format!("{label}: {lhs} != {rhs}"));
        }
    }
}

/// Checks every S-polynomial identity of the family `G`, the factorisation
/// `G = [g2^q, g3^q, g1] T`, and the telescoping sums behind the column
/// relations of `M`, as exact polynomial identities.
pub fn verify_determinantal_identities(p: u64, e: u32) -> Result<IdentityReport> {
    let d = Determinantal::new(p, e)?;
    if d.q < 2 {
        return Err(crate::Error::Usage(format!("q = p^e must be at least 2, got {}", d.q)));
    }
    let q = d.q;
    let m = |ex: [u32; 6]| d.m(ex);
    let g1 = d.g1.clone();
    let g3q = d.g3q();
    let xq = m([q, 0, 0, 0, 0, 0]);
    let wq = m([0, 0, 0, 0, 0, q]);
    let mut families = Vec::new();

    // S(h_j, h_i) = u^(j-i) h_j - x^(j-i) v^(j-i) h_i
    //            = x^q w^q (x^(j-i) y^i v^(j-i) - y^j u^(j-i))
    //            = -x^q w^q sum_k x^(k-1) y^(j-k) u^(j-i-k) v^(k-1) g1
    let mut c = Checker::new("S(h_j, h_i) telescopes into g1-multiples");
    for j in 0..=q {
        for i in 0..=j {
            let (hj, hi) = (d.h(j), d.h(i));
            let d_ = j - i;
            let stated = &(&m([0, 0, 0, d_, 0, 0]) * &hj) - &(&m([d_, 0, 0, 0, d_, 0]) * &hi);
            if i < j {
                c.eq(format!("q={q} (i,j)=({i},{j}) S-polynomial"), &s_polynomial(&hj, &hi)?, &stated);
            }
            let closed = &(&xq * &wq) * &(&m([d_, i, 0, 0, d_, 0]) - &m([0, j, 0, d_, 0, 0]));
            c.eq(format!("q={q} (i,j)=({i},{j}) closed form"), &stated, &closed);
            let mut sum = Polynomial::zero(&d.ring);
            for k in 1..=d_ {
                sum = &sum + &m([k - 1, j - k, 0, d_ - k, k - 1, 0]);
            }
            let tele = -&(&(&(&xq * &wq) * &sum) * &g1);
            c.eq(format!("q={q} (i,j)=({i},{j}) telescoped"), &closed, &tele);
            // the underlying telescoping sum
            let lhs = &sum * &g1;
            let rhs = &m([0, j, 0, d_, 0, 0]) - &m([d_, i, 0, 0, d_, 0]);
            c.eq(format!("q={q} (i,j)=({i},{j}) sum"), &lhs, &rhs);
        }
    }
    families.push(c.family);

    // S(h_j, g3^q) = v^(q-j) h_j - x^j u^(q-j) g3^q
    //             = w^q (x^j y^q u^(q-j) - x^q y^j v^(q-j))
    //             = w^q sum_k x^(j-1+k) y^(q-k) u^(q-j-k) v^(k-1) g1
    let mut c = Checker::new("S(h_j, g3^q) telescopes into g1-multiples");
    for j in 0..=q {
        let hj = d.h(j);
        let stated = &(&m([0, 0, 0, 0, q - j, 0]) * &hj) - &(&m([j, 0, 0, q - j, 0, 0]) * &g3q);
        if j < q {
            c.eq(format!("q={q} j={j} S-polynomial"), &s_polynomial(&hj, &g3q)?, &stated);
        }
        let closed = &wq * &(&m([j, q, 0, q - j, 0, 0]) - &m([q, j, 0, 0, q - j, 0]));
        c.eq(format!("q={q} j={j} closed form"), &stated, &closed);
        let mut sum = Polynomial::zero(&d.ring);
        for k in 1..=q - j {
            sum = &sum + &m([j + k - 1, q - k, 0, q - j - k, k - 1, 0]);
        }
        c.eq(format!("q={q} j={j} telescoped"), &closed, &(&(&wq * &sum) * &g1));
        let rhs = &m([j, q, 0, q - j, 0, 0]) - &m([q, j, 0, 0, q - j, 0]);
        c.eq(format!("q={q} j={j} sum"), &(&sum * &g1), &rhs);
    }
    families.push(c.family);

    // S(h_j, g1) = y h_j - x^j z^q u^(q-j-1) v^j g1 = h_(j+1), 0 <= j <= q-2
    let mut c = Checker::new("S(h_j, g1) = h_(j+1)");
    for j in 0..=q.saturating_sub(2) {
        let hj = d.h(j);
        let stated = &(&m([0, 1, 0, 0, 0, 0]) * &hj) - &(&m([j, 0, q, q - j - 1, j, 0]) * &g1);
        c.eq(format!("q={q} j={j} S-polynomial"), &s_polynomial(&hj, &g1)?, &stated);
        c.eq(format!("q={q} j={j} value"), &stated, &d.h(j + 1));
    }
    families.push(c.family);

    // S(h_(q-1), g1) = y h_(q-1) - x^(q-1) z^q v^(q-1) g1 = x^q g3^q
    let mut c = Checker::new("S(h_(q-1), g1) = x^q g3^q");
    {
        let h = d.h(q - 1);
        let stated = &(&m([0, 1, 0, 0, 0, 0]) * &h) - &(&m([q - 1, 0, q, 0, q - 1, 0]) * &g1);
        c.eq(format!("q={q} S-polynomial"), &s_polynomial(&h, &g1)?, &stated);
        c.eq(format!("q={q} value"), &stated, &(&xq * &g3q));
        c.eq(format!("q={q} h_q"), &d.h(q), &(&xq * &g3q));
        c.eq(format!("q={q} h_0"), &d.h(0), &d.g2q());
    }
    families.push(c.family);

    // S(g3^q, g1) = yu g3^q - z^q v^q g1
    let mut c = Checker::new("S(g3^q, g1) = yu g3^q - z^q v^q g1");
    {
        let stated = &(&m([0, 1, 0, 1, 0, 0]) * &g3q) - &(&m([0, 0, q, 0, q, 0]) * &g1);
        c.eq(format!("q={q} S-polynomial"), &s_polynomial(&g3q, &g1)?, &stated);
    }
    families.push(c.family);

    // G = [g2^q, g3^q, g1] T
    let mut c = Checker::new("G = [g2^q, g3^q, g1] T");
    {
        let t = d.t_matrix();
        let row = [d.g2q(), g3q.clone(), g1.clone()];
        let g = d.g_family();
        for (col, gj) in g.iter().enumerate() {
            let mut acc = Polynomial::zero(&d.ring);
            for (r, f) in row.iter().enumerate() {
                acc = &acc + &(f * &t[r][col]);
            }
            c.eq(format!("q={q} column {col}"), &acc, gj);
        }
        // shape of T: first row 1, y, ..., y^(q-1), 0, 0
        for col in 0..q as usize + 2 {
            let want = if col < q as usize {
                m([0, col as u32, 0, 0, 0, 0])
            } else {
                Polynomial::zero(&d.ring)
            };
            c.eq(format!("q={q} T[0][{col}]"), &t[0][col], &want);
        }
    }
    families.push(c.family);

    // Column relations of M modulo g1:
    //   sum_k x^(k-1) y^(j-k) u^(j-i-k) v^(q-j+k-1) g1 = y^j u^(j-i) v^(q-j) - x^(j-i) y^i v^(q-i)
    // and, with W_l = x e_l - u e_(l+1),
    //   u^(j-i) e_j - x^(j-i) e_i = -sum_k x^(j-i-k) u^(k-1) W_(i+k-1).
    let mut c = Checker::new("column-relation telescoping sums");
    for j in 0..=q {
        for i in 0..j {
            let d_ = j - i;
            let mut sum = Polynomial::zero(&d.ring);
            for k in 1..=d_ {
                sum = &sum + &m([k - 1, j - k, 0, d_ - k, q - j + k - 1, 0]);
            }
            let rhs = &m([0, j, 0, d_, q - j, 0]) - &m([d_, i, 0, 0, q - i, 0]);
            c.eq(format!("q={q} (i,j)=({i},{j}) g1-sum"), &(&sum * &g1), &rhs);
        }
    }
    {
        let (w, _) = d.w_u_vectors();
        let n = q as usize + 1;
        let zero = Polynomial::zero(&d.ring);
        // indices are 0-based here: W_l is w[l] with support {l, l+1}
        for j in 0..n {
            for i in 0..j {
                let d_ = (j - i) as u32;
                let mut lhs = vec![zero.clone(); n];
                lhs[j] = m([0, 0, 0, d_, 0, 0]);
                lhs[i] = -&m([d_, 0, 0, 0, 0, 0]);
                let mut rhs = vec![zero.clone(); n];
                for k in 1..=d_ {
                    let coef = m([d_ - k, 0, 0, k - 1, 0, 0]);
                    let wl = &w[i + k as usize - 1];
                    for (slot, entry) in rhs.iter_mut().zip(wl) {
                        *slot = &*slot - &(&coef * entry);
                    }
                }
                for r in 0..n {
                    c.eq(format!("q={q} (i,j)=({i},{j}) W-sum coordinate {r}"), &lhs[r], &rhs[r]);
                }
            }
        }
    }
    families.push(c.family);

    Ok(IdentityReport {
        p: d.ring.characteristic(),
        e,
        q,
        families,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_family_endpoints() {
        let d = Determinantal::new(2, 1).unwrap();
        assert_eq!(d.h(0), d.g2q());
        let xq = mono(d.ring(), &[2, 0, 0, 0, 0, 0]);
        assert_eq!(d.h(2), &xq * &d.g3q());
        // listed terms are in descending order; signs need p > 2
        let d = Determinantal::new(5, 1).unwrap();
        assert_eq!(d.g1.to_string(), "y*u - x*v");
        assert_eq!(d.g2.to_string(), "z*u - x*w");
        assert_eq!(d.g3.to_string(), "z*v - y*w");
    }

    #[test]
    fn identities_hold_for_small_q() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let r = verify_determinantal_identities(p, e).unwrap();
            assert!(r.all_pass(), "{:#?}", r.families.iter().filter(|f| !f.passed()).collect::<Vec<_>>());
            assert_eq!(r.families.len(), 7);
        }
        assert_eq!(
            verify_determinantal_identities(3, 1).unwrap().summary(),
            "all 7 identity families pass (q=3)"
        );
        assert!(verify_determinantal_identities(2, 0).is_err());
    }

    #[test]
    fn m_columns_are_relations_mod_g1() {
        let d = Determinantal::new(3, 1).unwrap();
        let s = d.hypersurface();
        let comp = d.presentation().compose(&d.m_matrix()).unwrap();
        assert!(s.reduce_map(&comp).is_zero());
        let (w, u) = d.w_u_vectors();
        for col in w.iter().chain(&u) {
            let v = GradedMap::from_columns(
                d.ring(),
                d.m_matrix().source().clone(),
                vec![col.clone()],
            )
            .unwrap();
            assert!(s.reduce_map(&d.m_matrix().compose(&v).unwrap()).is_zero());
        }
    }

    #[test]
    fn periodic_linear_resolution_over_s() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let d = Determinantal::new(p, e).unwrap();
            let q = d.q() as i64;
            let s = d.hypersurface();
            let res = super::super::resolve_over_hypersurface(&s, &d.presentation(), 6).unwrap();
            res.check_complex(&s).unwrap();
            let n = q as usize;
            let want: Vec<Vec<i64>> = vec![
                vec![0],
                vec![2 * q; 2],
                vec![3 * q; n + 1],
                vec![3 * q + 1; 2 * n],
                vec![3 * q + 2; 2 * n],
                vec![3 * q + 3; 2 * n],
                vec![3 * q + 4; 2 * n],
            ];
            let got: Vec<Vec<i64>> = (0..=6).map(|i| res.predicted_twists(i).unwrap()).collect();
            assert_eq!(got, want, "q={q}");
            assert_eq!(res.period_start(), Some(3));
            assert_eq!(res.period_shift(), Some(2));
            assert_eq!(res.predicted_twists(9).unwrap(), vec![3 * q + 7; 2 * n]);
        }
    }

    #[test]
    fn first_syzygies_match_m() {
        use crate::resolution::FreeVector;
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let d = Determinantal::new(p, e).unwrap();
            let s = d.hypersurface();
            let syz = super::super::syz_over_hypersurface(&s, &d.presentation()).unwrap();
            assert_eq!(syz.source().rank(), d.q() as usize + 1);
            let amb = syz.target().clone();
            let as_vectors = |cols: Vec<Vec<Polynomial>>| -> Vec<FreeVector> {
                cols.into_iter().map(|c| FreeVector::new(c, amb.clone()).unwrap()).collect()
            };
            let computed = syz.columns();
            let stated = as_vectors(d.first_syzygy_columns());
            assert!(s.submodule(&amb, &computed).unwrap().contains_all(&stated).unwrap());
            assert!(s.submodule(&amb, &stated).unwrap().contains_all(&computed).unwrap());
        }
    }
}
