//! Exact integer simplicial homology via sparse Smith normal form.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{Evidence, HomotopyKind, HomotopyTypeReport};

/// Sparse integer matrix stored by columns, each column sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.cols[c].push((r, x));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c]
            .binary_search_by_key(&r, |&(row, _)| row)
            .map_or(0, |i| self.cols[c][i].1)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, x) in col {
                out[r][c] = x;
            }
        }
        out
    }

    /// Matrix with rows and columns reordered: new row `i` is old row
    /// `row_perm[i]`, likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut inverse = vec![0; self.rows];
        for (new, &old) in row_perm.iter().enumerate() {
            inverse[old] = new;
        }
        let cols = col_perm
            .iter()
            .map(|&old| {
                let mut col: Vec<_> = self.cols[old]
                    .iter()
                    .map(|&(r, x)| (inverse[r], x))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// `self · other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.ncols());
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for (c, col) in other.cols.iter().enumerate() {
            for &(k, y) in col {
                for &(r, x) in &self.cols[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] = acc[r].checked_add(x.checked_mul(y)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &r in &touched {
                if acc[r] != 0 {
                    out.cols[c].push((r, acc[r]));
                }
                acc[r] = 0;
            }
            touched.clear();
        }
        Some(out)
    }
}

/// A simplicial boundary map ∂_d from d-faces to (d−1)-faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dimension: usize,
    pub matrix: IntMatrix,
}

/// ∂_d with rows and columns in the complex's face order. Removing the
/// element at position i of the ascending index list carries sign (−1)^i.
pub fn boundary_matrix(c: &SimplicialComplex, d: usize) -> BoundaryMatrix {
    let faces = c.faces_of_dim(d as i32);
    let rows = c.faces_of_dim(d as i32 - 1).len();
    let cols = faces
        .iter()
        .map(|&f| {
            let mut col: Vec<(usize, i64)> = f
                .indices()
                .enumerate()
                .map(|(i, v)| {
                    let row = c.position_in_dim(f.without(v)).expect("closed under faces");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    BoundaryMatrix {
        dimension: d,
        matrix: IntMatrix { rows, cols },
    }
}

/// ∂_1 … ∂_D for a complex of dimension D.
pub fn boundary_matrices(c: &SimplicialComplex) -> Result<Vec<BoundaryMatrix>> {
    let top = c.dimension().ok_or(Error::VoidComplex)?;
    Ok((1..=top.max(0) as usize)
        .map(|d| boundary_matrix(c, d))
        .collect())
}

/// True iff every composite ∂_{d} ∂_{d+1} vanishes.
pub fn boundary_squares_vanish(c: &SimplicialComplex) -> Result<bool> {
    let mats = boundary_matrices(c)?;
    Ok(mats.windows(2).all(|w| {
        w[0].matrix
            .checked_mul(&w[1].matrix)
            .is_some_and(|p| p.nnz() == 0)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries d_1 | d_2 | … | d_r, all positive.
    pub factors: Vec<BigUint>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

trait Scalar: Clone + Debug + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// `self + k·x`
    fn checked_add_mul(&self, k: &Self, x: &Self) -> Option<Self>;
    /// Quotient q with `self − q·p` in `[0, |p|)`.
    fn checked_div_euclid(&self, p: &Self) -> Option<Self>;
    fn divides(&self, x: &Self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn to_biguint_abs(&self) -> BigUint;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_add_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        self.checked_add(k.checked_mul(*x)?)
    }
    fn checked_div_euclid(&self, p: &Self) -> Option<Self> {
        i64::checked_div_euclid(*self, *p)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn to_biguint_abs(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_add_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        Some(self + k * x)
    }
    fn checked_div_euclid(&self, p: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(p);
        // floor division leaves r with the sign of p; shift into [0, |p|)
        Some(if r.is_negative() { q + 1 } else { q })
    }
    fn divides(&self, x: &Self) -> bool {
        (x % self).is_zero()
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_biguint_abs(&self) -> BigUint {
        self.magnitude().clone()
    }
}

struct Overflow;

/// Working copy for elimination. Row lists are supersets of the true row
/// support; stale entries are filtered on use.
struct Elimination<T> {
    cols: Vec<Vec<(usize, T)>>,
    row_cols: Vec<Vec<usize>>,
    col_alive: Vec<bool>,
    row_alive: Vec<bool>,
    factors: Vec<T>,
}

impl<T: Scalar> Elimination<T> {
    fn new(m: &IntMatrix) -> Self {
        let mut row_cols = vec![Vec::new(); m.rows];
        let cols: Vec<Vec<(usize, T)>> = m
            .cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                col.iter()
                    .map(|&(r, x)| {
                        row_cols[r].push(c);
                        (r, T::from_i64(x))
                    })
                    .collect()
            })
            .collect();
        let col_alive = cols.iter().map(|c| !c.is_empty()).collect();
        Elimination {
            cols,
            row_cols,
            col_alive,
            row_alive: vec![true; m.rows],
            factors: Vec::new(),
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&T> {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |e| e.0)
            .ok()
            .map(|i| &col[i].1)
    }

    /// Live columns with a nonzero in row `r`.
    fn row_support(&mut self, r: usize) -> Vec<usize> {
        let mut list = std::mem::take(&mut self.row_cols[r]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&c| self.col_alive[c] && self.entry(r, c).is_some());
        self.row_cols[r] = list.clone();
        list
    }

    /// col[target] += k · col[src]
    fn col_add(&mut self, target: usize, src: usize, k: &T) -> std::result::Result<(), Overflow> {
        let a = std::mem::take(&mut self.cols[target]);
        let b = &self.cols[src];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let v = T::from_i64(0).checked_add_mul(k, &b[j].1).ok_or(Overflow)?;
                self.row_cols[b[j].0].push(target);
                out.push((b[j].0, v));
                j += 1;
            } else {
                let v = a[i].1.checked_add_mul(k, &b[j].1).ok_or(Overflow)?;
                if !v.vanishes() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.cols[target] = out;
        Ok(())
    }

    /// row[target] += k · row[src]
    fn row_add(&mut self, target: usize, src: usize, k: &T) -> std::result::Result<(), Overflow> {
        for c in self.row_support(src) {
            let x = self.entry(src, c).expect("in support").clone();
            let col = &mut self.cols[c];
            match col.binary_search_by_key(&target, |e| e.0) {
                Ok(i) => {
                    let v = col[i].1.checked_add_mul(k, &x).ok_or(Overflow)?;
                    if v.vanishes() {
                        col.remove(i);
                    } else {
                        col[i].1 = v;
                    }
                }
                Err(i) => {
                    let v = T::from_i64(0).checked_add_mul(k, &x).ok_or(Overflow)?;
                    col.insert(i, (target, v));
                    self.row_cols[target].push(c);
                }
            }
        }
        Ok(())
    }

    /// Pivot at (r, c) whose value divides its whole row and column: clear the
    /// row with column operations, then drop row r and column c (the column's
    /// remaining entries vanish under row operations touching nothing else).
    fn eliminate(&mut self, r: usize, c: usize) -> std::result::Result<(), Overflow> {
        let p = self.entry(r, c).expect("pivot present").clone();
        for other in self.row_support(r) {
            if other == c {
                continue;
            }
            let x = self.entry(r, other).expect("in support").clone();
            let q = x.checked_div_euclid(&p).ok_or(Overflow)?;
            let k = q.checked_neg().ok_or(Overflow)?;
            self.col_add(other, c, &k)?;
            if self.cols[other].is_empty() {
                self.col_alive[other] = false;
            }
        }
        self.col_alive[c] = false;
        self.row_alive[r] = false;
        self.cols[c].clear();
        self.factors.push(p);
        Ok(())
    }

    /// Eliminates ±1 pivots, preferring short columns and sparse rows.
    fn unit_phase(&mut self) -> std::result::Result<(), Overflow> {
        loop {
            let mut order: Vec<usize> = (0..self.cols.len())
                .filter(|&c| self.col_alive[c])
                .collect();
            order.sort_by_key(|&c| (self.cols[c].len(), c));
            let mut progress = false;
            for c in order {
                if !self.col_alive[c] {
                    continue;
                }
                let pivot = self.cols[c]
                    .iter()
                    .filter(|(r, x)| self.row_alive[*r] && x.is_unit())
                    .min_by_key(|(r, _)| (self.row_cols[*r].len(), *r))
                    .map(|&(r, _)| r);
                if let Some(r) = pivot {
                    self.eliminate(r, c)?;
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    /// Minimal-magnitude pivoting with Euclidean reduction on whatever the
    /// unit phase left behind.
    fn general_phase(&mut self) -> std::result::Result<(), Overflow> {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for c in (0..self.cols.len()).filter(|&c| self.col_alive[c]) {
                for (r, x) in &self.cols[c] {
                    let better = match best {
                        None => true,
                        Some((br, bc)) => x.cmp_abs(self.entry(br, bc).unwrap()) == Ordering::Less,
                    };
                    if better {
                        best = Some((*r, c));
                    }
                }
            }
            let Some((mut r, mut c)) = best else {
                return Ok(());
            };
            'reduce: loop {
                let p = self.entry(r, c).unwrap().clone();
                let col_rows: Vec<usize> = self.cols[c].iter().map(|e| e.0).collect();
                for r2 in col_rows {
                    let x = self.entry(r2, c).unwrap().clone();
                    if r2 != r && !p.divides(&x) {
                        let q = x.checked_div_euclid(&p).ok_or(Overflow)?;
                        self.row_add(r2, r, &q.checked_neg().ok_or(Overflow)?)?;
                        r = r2;
                        continue 'reduce;
                    }
                }
                for c2 in self.row_support(r) {
                    let x = self.entry(r, c2).unwrap().clone();
                    if c2 != c && !p.divides(&x) {
                        let q = x.checked_div_euclid(&p).ok_or(Overflow)?;
                        self.col_add(c2, c, &q.checked_neg().ok_or(Overflow)?)?;
                        c = c2;
                        continue 'reduce;
                    }
                }
                break;
            }
            self.eliminate(r, c)?;
        }
    }
}

fn diagonal<T: Scalar>(m: &IntMatrix) -> std::result::Result<Vec<BigUint>, Overflow> {
    let mut e = Elimination::<T>::new(m);
    e.unit_phase()?;
    e.general_phase()?;
    Ok(e.factors.iter().map(Scalar::to_biguint_abs).collect())
}

/// Invariant factors and rank of an integer matrix. Runs in machine integers
/// and restarts with arbitrary precision if any intermediate overflows.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let diag = diagonal::<i64>(m)
        .or_else(|_| diagonal::<BigInt>(m))
        .unwrap_or_else(|_| unreachable!("arbitrary precision cannot overflow"));
    let rank = diag.len();
    let mut units = 0;
    let mut rest: Vec<BigUint> = Vec::new();
    for d in diag {
        if d.is_one() {
            units += 1;
        } else {
            rest.push(d);
        }
    }
    // diag(a, b) is equivalent to diag(gcd, lcm)
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = rest[i].lcm(&rest[j]);
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut factors = vec![BigUint::one(); units];
    factors.extend(rest);
    SmithForm { factors, rank }
}

/// Reduced homology with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    /// β̃_0 … β̃_D.
    pub reduced_betti: Vec<u64>,
    /// Invariant factors above one of H̃_d, per dimension 0 … D.
    pub torsion: Vec<Vec<BigUint>>,
    pub void: bool,
    /// β̃_{−1}: one exactly for the complex whose only face is ∅.
    pub reduced_betti_minus_one: u64,
}

impl BettiReport {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn is_acyclic(&self) -> bool {
        !self.void
            && self.reduced_betti_minus_one == 0
            && self.reduced_betti.iter().all(|&b| b == 0)
            && self.is_torsion_free()
    }

    /// Equal homology groups, ignoring trailing zero dimensions.
    pub fn same_homology(&self, other: &BettiReport) -> bool {
        let trim = |r: &BettiReport| {
            let mut groups: Vec<(u64, Vec<BigUint>)> = r
                .reduced_betti
                .iter()
                .copied()
                .zip(r.torsion.iter().cloned())
                .collect();
            while groups.last().is_some_and(|(b, t)| *b == 0 && t.is_empty()) {
                groups.pop();
            }
            (r.void, r.reduced_betti_minus_one, groups)
        };
        trim(self) == trim(other)
    }

    /// Σ (−1)^d β̃_d, including d = −1.
    pub fn euler_characteristic(&self) -> i64 {
        let mut sum = -(self.reduced_betti_minus_one as i64);
        for (d, &b) in self.reduced_betti.iter().enumerate() {
            sum += if d % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        sum
    }

    /// The homotopy type this homology is consistent with, as evidence only.
    pub fn shadow(&self) -> HomotopyTypeReport {
        let kind = if self.void {
            HomotopyKind::Empty
        } else if self.is_acyclic() {
            HomotopyKind::Contractible
        } else {
            let nonzero: Vec<usize> = (0..self.reduced_betti.len())
                .filter(|&d| self.reduced_betti[d] != 0)
                .collect();
            if self.is_torsion_free() && self.reduced_betti_minus_one == 0 && nonzero.len() == 1 {
                HomotopyKind::WedgeOfSpheres {
                    dim: nonzero[0] as i32,
                    count: self.reduced_betti[nonzero[0]] as usize,
                }
            } else {
                HomotopyKind::Undetermined
            }
        };
        let evidence = if kind == HomotopyKind::Undetermined {
            Evidence::None
        } else {
            Evidence::HomologyConsistent
        };
        HomotopyTypeReport { kind, evidence }
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Vec<Value>> = self
            .torsion
            .iter()
            .map(|ts| ts.iter().map(big_to_json).collect())
            .collect();
        let mut v = json!({
            "reduced_betti": self.reduced_betti,
            "torsion": torsion,
            "void": self.void,
            "consistent_with": self.shadow().to_json(),
        });
        if self.reduced_betti_minus_one != 0 {
            v["reduced_betti_minus_one"] = json!(self.reduced_betti_minus_one);
        }
        v
    }
}

fn big_to_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(small) => json!(small),
        None => json!(x.to_string()),
    }
}

/// β̃_d = f_d − rank ∂_d − rank ∂_{d+1}, with ∂_0 the augmentation onto Z.
pub fn reduced_betti(c: &SimplicialComplex) -> BettiReport {
    let Some(top) = c.dimension() else {
        return BettiReport {
            reduced_betti: Vec::new(),
            torsion: Vec::new(),
            void: true,
            reduced_betti_minus_one: 0,
        };
    };
    let top = top.max(-1);
    let dims = (top + 1) as usize;
    // forms[d] is the Smith form of ∂_{d+1}, d = 0 … D−1
    let forms: Vec<SmithForm> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..dims)
            .map(|d| s.spawn(move || smith_normal_form(&boundary_matrix(c, d).matrix)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let f0 = c.faces_of_dim(0).len();
    let rank = |d: usize| -> usize {
        match d {
            0 => usize::from(f0 > 0),
            d if d < dims => forms[d - 1].rank,
            _ => 0,
        }
    };
    let reduced_betti = (0..dims)
        .map(|d| (c.faces_of_dim(d as i32).len() - rank(d) - rank(d + 1)) as u64)
        .collect();
    let torsion = (0..dims)
        .map(|d| {
            if d + 1 < dims {
                forms[d].torsion()
            } else {
                Vec::new()
            }
        })
        .collect();
    BettiReport {
        reduced_betti,
        torsion,
        void: false,
        reduced_betti_minus_one: u64::from(f0 == 0),
    }
}

/// Whether a homology report agrees with a claimed homotopy type.
pub fn homology_consistent_with(r: &BettiReport, h: &HomotopyTypeReport) -> bool {
    match h.kind {
        HomotopyKind::Empty => r.void,
        HomotopyKind::Contractible => r.is_acyclic(),
        HomotopyKind::WedgeOfSpheres { dim, count } => {
            !r.void
                && r.is_torsion_free()
                && if dim < 0 {
                    r.reduced_betti_minus_one == count as u64
                        && r.reduced_betti.iter().all(|&b| b == 0)
                } else {
                    r.reduced_betti_minus_one == 0
                        && (0..r.reduced_betti.len().max(dim as usize + 1)).all(|d| {
                            let b = r.reduced_betti.get(d).copied().unwrap_or(0);
                            b == if d == dim as usize { count as u64 } else { 0 }
                        })
                }
        }
        HomotopyKind::Undetermined => true,
    }
}

/// True iff every factor is positive and divides the next.
pub fn is_divisibility_chain(factors: &[BigUint]) -> bool {
    factors.iter().all(|f| !f.is_zero()) && factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::complex::{
        perfect_matching_complex, reduced_euler_characteristic, Face, DEFAULT_FACE_CAP,
    };
    use crate::families::{cycle, grid_2xn, path, triangle_tiling};
    use proptest::prelude::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// gcd of all k×k minors, by cofactor expansion; only for tiny matrices.
    fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<BigInt> {
        fn det(m: &[Vec<BigInt>]) -> BigInt {
            if m.is_empty() {
                return BigInt::one();
            }
            let mut total = BigInt::zero();
            for j in 0..m.len() {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    total += term
                } else {
                    total -= term
                }
            }
            total
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
                .collect()
        }
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let m: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c])).collect())
                        .collect();
                    g = g.gcd(&det(&m));
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(g);
        }
        out
    }

    fn oracle_factors(a: &[Vec<i64>]) -> Vec<BigUint> {
        let d = determinantal_divisors(a);
        (0..d.len())
            .map(|k| {
                let prev = if k == 0 {
                    BigInt::one()
                } else {
                    d[k - 1].clone()
                };
                (&d[k] / prev).magnitude().clone()
            })
            .collect()
    }

    #[test]
    fn small_smith_forms() {
        let id = IntMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let s = smith_normal_form(&id);
        assert_eq!((s.factors, s.rank), (big(&[1, 1, 1]), 3));
        let s = smith_normal_form(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(s.factors, big(&[2, 4]));
        let s = smith_normal_form(&IntMatrix::from_dense(&[vec![4, 0], vec![0, 6]]));
        assert_eq!(s.factors, big(&[2, 12]));
        let s = smith_normal_form(&IntMatrix::from_dense(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, -4, -16],
        ]));
        assert_eq!(s.factors, big(&[2, 6, 12]));
        let s = smith_normal_form(&IntMatrix::zeros(3, 2));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn hollow_triangle_boundary() {
        let c = independence_complex(&crate::graph::GraphBuilder::new().build().unwrap()).unwrap();
        assert_eq!(reduced_betti(&c).reduced_betti_minus_one, 1);
        let tri = SimplicialComplex::from_facets(
            vec!["0".into(), "1".into(), "2".into()],
            [
                Face::from_indices([0, 1]),
                Face::from_indices([1, 2]),
                Face::from_indices([0, 2]),
            ],
            DEFAULT_FACE_CAP,
        )
        .unwrap();
        let d1 = boundary_matrix(&tri, 1);
        assert_eq!((d1.matrix.nrows(), d1.matrix.ncols()), (3, 3));
        for c in 0..3 {
            let col = d1.matrix.column(c);
            assert_eq!(col.len(), 2);
            assert_eq!(col.iter().map(|e| e.1).sum::<i64>(), 0);
        }
        let s = smith_normal_form(&d1.matrix);
        assert_eq!((s.rank, s.factors), (2, big(&[1, 1])));
        let r = reduced_betti(&tri);
        assert_eq!(r.reduced_betti, vec![0, 1]);
    }

    #[test]
    fn points_and_boundary_list() {
        let pts = SimplicialComplex::from_facets(
            vec!["p".into(), "q".into()],
            [Face::from_indices([0]), Face::from_indices([1])],
            DEFAULT_FACE_CAP,
        )
        .unwrap();
        assert!(boundary_matrices(&pts).unwrap().is_empty());
        assert_eq!(reduced_betti(&pts).reduced_betti, vec![1]);
        assert!(boundary_matrices(&SimplicialComplex::void(vec![])).is_err());
        let v = reduced_betti(&SimplicialComplex::void(vec![]));
        assert!(v.void);
        assert_eq!(v.shadow().kind, HomotopyKind::Empty);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // six-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(
            (0..6).map(|i| i.to_string()).collect(),
            facets.iter().map(|f| Face::from_indices(f.iter().copied())),
            DEFAULT_FACE_CAP,
        )
        .unwrap();
        let r = reduced_betti(&c);
        assert_eq!(r.reduced_betti, vec![0, 0, 0]);
        assert_eq!(r.torsion, vec![vec![], big(&[2]), vec![]]);
        assert!(!r.is_acyclic());
        assert_eq!(r.shadow().kind, HomotopyKind::Undetermined);
        assert_eq!(r.to_json()["torsion"], json!([[], [2], []]));
    }

    #[test]
    fn known_homology_examples() {
        let b = |c: &SimplicialComplex| reduced_betti(c);
        let g4 = b(&perfect_matching_complex(&grid_2xn(4).unwrap()).unwrap());
        assert_eq!(g4.reduced_betti, vec![0, 1, 0, 0]);
        assert!(g4.is_torsion_free());
        let g5 = b(&perfect_matching_complex(&grid_2xn(5).unwrap()).unwrap());
        assert!(g5.is_acyclic());
        let t3 = b(&perfect_matching_complex(&triangle_tiling(3).unwrap()).unwrap());
        assert_eq!(
            t3.shadow().kind,
            HomotopyKind::WedgeOfSpheres { dim: 1, count: 1 }
        );
        let p3 = b(&independence_complex(&path(3).unwrap()).unwrap());
        assert_eq!(p3.reduced_betti, vec![1, 0]);
    }

    #[test]
    fn consistency_predicate() {
        let s1 = HomotopyTypeReport {
            kind: HomotopyKind::WedgeOfSpheres { dim: 1, count: 1 },
            evidence: Evidence::SingleDimCriticalCells,
        };
        let contractible = HomotopyTypeReport {
            kind: HomotopyKind::Contractible,
            evidence: Evidence::ZeroCriticalCells,
        };
        let undetermined = HomotopyTypeReport {
            kind: HomotopyKind::Undetermined,
            evidence: Evidence::None,
        };
        let report = |betti: Vec<u64>| BettiReport {
            torsion: vec![Vec::new(); betti.len()],
            reduced_betti: betti,
            void: false,
            reduced_betti_minus_one: 0,
        };
        assert!(homology_consistent_with(&report(vec![0, 1]), &s1));
        assert!(homology_consistent_with(&report(vec![0, 0]), &contractible));
        assert!(!homology_consistent_with(
            &report(vec![1, 0]),
            &contractible
        ));
        assert!(!homology_consistent_with(&report(vec![0, 2]), &s1));
        assert!(!homology_consistent_with(&report(vec![0]), &s1));
        assert!(homology_consistent_with(&report(vec![3, 1]), &undetermined));
        let mut torsion = report(vec![0, 1, 0]);
        torsion.torsion[0] = big(&[2]);
        assert!(!homology_consistent_with(&torsion, &s1));
    }

    #[test]
    fn boundary_squares_vanish_on_examples() {
        for c in [
            perfect_matching_complex(&grid_2xn(4).unwrap()).unwrap(),
            perfect_matching_complex(&grid_2xn(7).unwrap()).unwrap(),
            independence_complex(&cycle(7).unwrap()).unwrap(),
        ] {
            assert!(boundary_squares_vanish(&c).unwrap());
        }
    }

    #[test]
    fn betti_euler_agrees_with_face_count() {
        for n in 2..=8 {
            let c = perfect_matching_complex(&grid_2xn(n).unwrap()).unwrap();
            let r = reduced_betti(&c);
            assert_eq!(
                Some(r.euler_characteristic()),
                reduced_euler_characteristic(&c)
            );
        }
        for m in 3..=9 {
            let c = independence_complex(&cycle(m).unwrap()).unwrap();
            assert_eq!(
                Some(reduced_betti(&c).euler_characteristic()),
                reduced_euler_characteristic(&c)
            );
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big_entry = i64::MAX / 3;
        let m = IntMatrix::from_dense(&[
            vec![big_entry, big_entry - 1],
            vec![big_entry - 7, big_entry + 5],
        ]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, oracle_factors(&m.to_dense()));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn smith_matches_determinantal_divisors(a in small_matrix()) {
            let s = smith_normal_form(&IntMatrix::from_dense(&a));
            prop_assert!(is_divisibility_chain(&s.factors));
            prop_assert_eq!(s.factors, oracle_factors(&a));
        }

        #[test]
        fn smith_is_permutation_invariant(
            a in small_matrix(),
            row_keys in proptest::collection::vec(any::<u32>(), 4),
            col_keys in proptest::collection::vec(any::<u32>(), 4),
        ) {
            let m = IntMatrix::from_dense(&a);
            let mut rp: Vec<usize> = (0..m.nrows()).collect();
            rp.sort_by_key(|&i| row_keys[i]);
            let mut cp: Vec<usize> = (0..m.ncols()).collect();
            cp.sort_by_key(|&i| col_keys[i]);
            prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m.permuted(&rp, &cp)));
        }

        #[test]
        fn boundary_smith_invariant_under_shuffles(n in 3usize..=6, d in 1usize..=2, key in any::<u64>()) {
            let c = perfect_matching_complex(&grid_2xn(n).unwrap()).unwrap();
            let m = boundary_matrix(&c, d).matrix;
            let shuffle = |len: usize, salt: u64| {
                let mut p: Vec<usize> = (0..len).collect();
                p.sort_by_key(|&i| (i as u64 ^ salt).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                p
            };
            let shuffled = m.permuted(&shuffle(m.nrows(), key), &shuffle(m.ncols(), key.rotate_left(17)));
            prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&shuffled));
        }
    }
}
