//! Smith normal form over `Z` and ranks over prime fields.
//!
//! Both start with the same sparse elimination: repeatedly pick a row with a
//! unit entry (`±1` over `Z`, any nonzero entry over `Z/p`), clear its column
//! with row operations and drop the pivot row and column. Each such step
//! contributes one invariant factor `1`. Over `Z` the rows left without a
//! unit entry are finished by a dense Smith normal form on big integers.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{arg, Result};

/// Nonzero invariant factors `d₁ | d₂ | …` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

#[derive(Clone, Copy)]
enum Ring {
    Integers,
    Mod(i64),
}

impl Ring {
    fn unit_inverse(self, x: i64) -> Option<i64> {
        match self {
            Ring::Integers => (x == 1 || x == -1).then_some(x),
            Ring::Mod(p) => (x != 0).then(|| pow_mod(x, p - 2, p)),
        }
    }

    /// `x − f·y`, or `None` on overflow.
    fn axpy(self, x: i64, f: i64, y: i64) -> Option<i64> {
        match self {
            Ring::Integers => x.checked_sub(f.checked_mul(y)?),
            Ring::Mod(p) => Some(((x as i128 - f as i128 * y as i128).rem_euclid(p as i128)) as i64),
        }
    }

    fn reduce(self, x: i64) -> i64 {
        match self {
            Ring::Integers => x,
            Ring::Mod(p) => x.rem_euclid(p),
        }
    }
}

fn pow_mod(b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1i128;
    let mut base = b.rem_euclid(p) as i128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as i128;
        }
        base = base * base % p as i128;
        e >>= 1;
    }
    r as i64
}

struct Overflow;

struct Eliminator {
    ring: Ring,
    rows: Vec<Vec<(usize, i64)>>,
    col_rows: Vec<Vec<usize>>,
    alive: Vec<bool>,
    pivots: usize,
}

impl Eliminator {
    fn new(m: &IntMatrix, ring: Ring) -> Self {
        let rows: Vec<Vec<(usize, i64)>> = m
            .row_lists()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(c, v)| (c, ring.reduce(v)))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        let mut col_rows = vec![Vec::new(); m.cols()];
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c].push(i);
            }
        }
        Eliminator {
            ring,
            alive: vec![true; rows.len()],
            rows,
            col_rows,
            pivots: 0,
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<i64> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |&(col, _)| col).ok().map(|i| row[i].1)
    }

    /// `rows[t] −= f · rows[p]`, registering fill-in.
    fn subtract(&mut self, t: usize, f: i64, p: usize) -> std::result::Result<(), Overflow> {
        let (a, b) = (&self.rows[t], &self.rows[p]);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut fresh = Vec::new();
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map_or(usize::MAX, |e| e.0);
            let cb = b.get(j).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(a[i]);
                i += 1;
            } else if cb < ca {
                let v = self.ring.axpy(0, f, b[j].1).ok_or(Overflow)?;
                if v != 0 {
                    out.push((cb, v));
                    fresh.push(cb);
                }
                j += 1;
            } else {
                let v = self.ring.axpy(a[i].1, f, b[j].1).ok_or(Overflow)?;
                if v != 0 {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[t] = out;
        for c in fresh {
            self.col_rows[c].push(t);
        }
        Ok(())
    }

    fn run(&mut self) -> std::result::Result<(), Overflow> {
        loop {
            let mut order: Vec<usize> = (0..self.rows.len())
                .filter(|&r| self.alive[r] && !self.rows[r].is_empty())
                .collect();
            order.sort_by_key(|&r| (self.rows[r].len(), r));
            let mut progress = false;
            for r in order {
                if !self.alive[r] {
                    continue;
                }
                let pivot = self.rows[r]
                    .iter()
                    .filter_map(|&(c, v)| self.ring.unit_inverse(v).map(|inv| (c, inv)))
                    .min_by_key(|&(c, _)| (self.col_rows[c].len(), c));
                let Some((c, inv)) = pivot else { continue };
                let targets = std::mem::take(&mut self.col_rows[c]);
                for t in targets {
                    if t == r || !self.alive[t] {
                        continue;
                    }
                    if let Some(a) = self.entry(t, c) {
                        let f = self.ring.axpy(0, -a, inv).ok_or(Overflow)?;
                        self.subtract(t, f, r)?;
                    }
                }
                self.alive[r] = false;
                self.pivots += 1;
                progress = true;
            }
            if !progress {
                return Ok(());
            }
        }
    }

    /// Rows still alive, as a dense big-integer matrix over the columns they use.
    fn residual(&self) -> Vec<Vec<BigInt>> {
        let live: Vec<usize> = (0..self.rows.len())
            .filter(|&r| self.alive[r] && !self.rows[r].is_empty())
            .collect();
        let mut cols: Vec<usize> = live.iter().flat_map(|&r| self.rows[r].iter().map(|e| e.0)).collect();
        cols.sort_unstable();
        cols.dedup();
        live.iter()
            .map(|&r| {
                let mut dense = vec![BigInt::zero(); cols.len()];
                for &(c, v) in &self.rows[r] {
                    dense[cols.binary_search(&c).expect("column listed")] = BigInt::from(v);
                }
                dense
            })
            .collect()
    }
}

/// Smith normal form of an integer matrix, with arbitrary-precision
/// arithmetic wherever entries can grow.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut e = Eliminator::new(m, Ring::Integers);
    if e.run().is_err() {
        tracing::warn!("sparse elimination overflowed; finishing on big integers");
    }
    let residual = e.residual();
    if !residual.is_empty() {
        tracing::debug!(
            rows = residual.len(),
            cols = residual[0].len(),
            "dense Smith form on residual"
        );
    }
    let mut invariants = vec![BigInt::one(); e.pivots];
    invariants.extend(dense_smith(residual));
    SmithForm { invariants }
}

/// Invariant factors of a dense matrix by the smallest-pivot method.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            // Bring the smallest entry of row t and column t to the pivot.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            swap_cols(&mut a, t, best.1);

            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for i in t..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest(a: &[Vec<BigInt>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a {
            row.swap(x, y);
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Rank over the prime field `Z/p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) || p > (1 << 31) {
        return arg(format!("{p} is not a prime below 2^31"));
    }
    let mut e = Eliminator::new(m, Ring::Mod(p as i64));
    // Arithmetic is done in i128 and cannot overflow.
    let _ = e.run();
    Ok(e.pivots)
}

pub fn rank_gf2(m: &IntMatrix) -> usize {
    rank_mod_p(m, 2).expect("2 is prime")
}
