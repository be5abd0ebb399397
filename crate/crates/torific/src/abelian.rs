//! Exact integer linear algebra: matrices and normal forms, finitely
//! generated abelian groups, homomorphisms, and rational polyhedral cones
//! with dualization.
//!
//! Everything here is arbitrary precision; there is no floating point
//! anywhere in the crate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::TorificError;

pub type Int = BigInt;

// ---------------------------------------------------------------------------
// vector helpers
// ---------------------------------------------------------------------------

pub fn vec_zero(d: usize) -> Vec<Int> {
    vec![Int::zero(); d]
}

pub fn vec_is_zero(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Int, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the gcd of the entries; the zero vector is returned as is.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Graded-lex order: first by coordinate sum, then lexicographically.
pub fn grlex_cmp(a: &[Int], b: &[Int]) -> Ordering {
    let sa: Int = a.iter().sum();
    let sb: Int = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

pub fn sort_vectors(vs: &mut Vec<Vec<Int>>) {
    vs.sort_by(|a, b| grlex_cmp(a, b));
    vs.dedup();
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                (0..self.cols).map(|j| self.get(i, j).clone()).collect::<Vec<_>>()
            )?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>], cols: usize) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, x) in r.iter().enumerate() {
                *m.get_mut(i, j) = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Int>> =
            rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        IntMatrix::from_rows(&data, cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *m.get_mut(i, j) += prod;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(&self.row(i), v)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ia = a * self.cols + j;
            let ib = b * self.cols + j;
            self.data.swap(ia, ib);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let ia = i * self.cols + a;
            let ib = i * self.cols + b;
            self.data.swap(ia, ib);
        }
    }

    /// row[a] += c * row[b]
    fn add_row(&mut self, a: usize, b: usize, c: &Int) {
        for j in 0..self.cols {
            let t = c * self.get(b, j);
            *self.get_mut(a, j) += t;
        }
    }

    fn add_col(&mut self, a: usize, b: usize, c: &Int) {
        for i in 0..self.rows {
            let t = c * self.get(i, b);
            *self.get_mut(i, a) += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            *self.get_mut(a, j) = v;
        }
    }

    pub fn rank(&self) -> usize {
        let (_, d, _) = smith_normal_form(self);
        let mut r = 0;
        for i in 0..d.rows.min(d.cols) {
            if !d.get(i, i).is_zero() {
                r += 1;
            }
        }
        r
    }
}

/// Rank of a set of vectors.
pub fn rank_of(vs: &[Vec<Int>], d: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(vs, d).rank()
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Computes unimodular `U`, `V` and diagonal `D` with `U * m * V = D` and
/// each diagonal entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        // Find a pivot: nonzero entry with minimal absolute value in the
        // remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d.get(i, j).is_zero() {
                    match &pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d.get(i, j).abs() < d.get(*pi, *pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut done = true;
            for i in (t + 1)..d.rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = div_round(d.get(i, t), d.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    d.add_row(i, t, &nq);
                    u.add_row(i, t, &nq);
                }
                if !d.get(i, t).is_zero() {
                    // Remainder smaller than pivot: swap up and restart.
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    done = false;
                }
            }
            for j in (t + 1)..d.cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = div_round(d.get(t, j), d.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    d.add_col(j, t, &nq);
                    v.add_col(j, t, &nq);
                }
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // Pivot must divide every remaining entry; if not, mix the
            // offending row in and restart.
            let mut fixed = true;
            'scan: for i in (t + 1)..d.rows {
                for j in (t + 1)..d.cols {
                    if !(d.get(i, j) % d.get(t, t)).is_zero() {
                        let one = Int::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Rounded division: quotient minimizing |a - q*b|.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// |det| of a square matrix via SNF.
pub fn abs_det(m: &IntMatrix) -> Int {
    assert_eq!(m.rows, m.cols);
    let (_, d, _) = smith_normal_form(m);
    let mut p = Int::one();
    for i in 0..m.rows {
        p *= d.get(i, i);
    }
    p.abs()
}

// ---------------------------------------------------------------------------
// lattices
// ---------------------------------------------------------------------------

/// Canonical (row Hermite form) basis of the lattice spanned by the given
/// vectors in Z^d. Zero rows are dropped; pivots are positive and entries
/// above each pivot are reduced into [0, pivot).
pub fn lattice_basis(gens: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = gens.iter().filter(|v| !vec_is_zero(v)).cloned().collect();
    for v in &rows {
        assert_eq!(v.len(), d);
    }
    let mut basis: Vec<Vec<Int>> = Vec::new();
    let mut pivot_row = 0usize;
    rows.sort();
    for col in 0..d {
        loop {
            // Gather rows with nonzero entry in this column at or below
            // pivot_row; reduce them against each other.
            let mut idx: Vec<usize> = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if idx.is_empty() {
                break;
            }
            if idx.len() == 1 {
                let r = rows.remove(idx[0]);
                basis.push(r);
                break;
            }
            // Reduce the larger against the smaller.
            idx.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let small = idx[0];
            for &i in &idx[1..] {
                let q = {
                    let (q, _) = rows[i][col].div_rem(&rows[small][col]);
                    q
                };
                if !q.is_zero() {
                    let s = rows[small].clone();
                    let delta = vec_scale(&q, &s);
                    rows[i] = vec_sub(&rows[i], &delta);
                }
            }
            rows.retain(|v| !vec_is_zero(v));
        }
        let _ = pivot_row;
        pivot_row += 1;
    }
    // basis now echelon by leading column; normalize signs and reduce above.
    for b in basis.iter_mut() {
        let lead = b.iter().position(|x| !x.is_zero()).unwrap();
        if b[lead].is_negative() {
            *b = vec_neg(b);
        }
    }
    basis.sort_by_key(|b| b.iter().position(|x| !x.is_zero()).unwrap());
    // Reduce entries above pivots.
    for i in (0..basis.len()).rev() {
        let lead = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        for j in 0..i {
            let q = basis[j][lead].div_floor(&basis[i][lead]);
            if !q.is_zero() {
                let delta = vec_scale(&q, &basis[i]);
                basis[j] = vec_sub(&basis[j], &delta);
            }
        }
    }
    basis
}

/// Basis of the integer kernel {x : m x = 0} via SNF.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    let (_, d, v) = smith_normal_form(m);
    let mut out = Vec::new();
    for j in 0..m.cols {
        let dj = if j < m.rows.min(m.cols) { d.get(j, j).clone() } else { Int::zero() };
        if dj.is_zero() {
            out.push(v.col(j));
        }
    }
    lattice_basis(&out, m.cols)
}

/// Basis of the saturation of the span of `sub` in Z^d (the kernel of the
/// torsion-free part of the quotient Z^d / span).
pub fn lattice_quotient_saturation(sub: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    lattice_saturation(sub, d)
}

/// Basis of the saturation of the span of `sub` in Z^d: all integer vectors
/// lying in the rational span.
pub fn lattice_saturation(sub: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    let b = lattice_basis(sub, d);
    if b.is_empty() {
        return Vec::new();
    }
    // Orthogonal complement of the span, then its kernel again.
    let normals = kernel_basis(&IntMatrix::from_rows(&b, d));
    if normals.is_empty() {
        return lattice_basis(&identity_rows(d), d);
    }
    kernel_basis(&IntMatrix::from_rows(&normals, d))
}

fn identity_rows(d: usize) -> Vec<Vec<Int>> {
    (0..d)
        .map(|i| {
            let mut v = vec_zero(d);
            v[i] = Int::one();
            v
        })
        .collect()
}

/// Basis of the intersection of two lattices in Z^d.
pub fn lattice_intersection(a: &[Vec<Int>], b: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    let ab = lattice_basis(a, d);
    let bb = lattice_basis(b, d);
    if ab.is_empty() || bb.is_empty() {
        return Vec::new();
    }
    // Solve A^T x = B^T y; the kernel of [A^T | -B^T] parameterizes the
    // intersection.
    let k1 = ab.len();
    let k2 = bb.len();
    let mut m = IntMatrix::zero(d, k1 + k2);
    for (j, v) in ab.iter().enumerate() {
        for i in 0..d {
            *m.get_mut(i, j) = v[i].clone();
        }
    }
    for (j, v) in bb.iter().enumerate() {
        for i in 0..d {
            *m.get_mut(i, k1 + j) = -v[i].clone();
        }
    }
    let kern = kernel_basis(&m);
    let at = IntMatrix::from_rows(&ab, d).transpose();
    let gens: Vec<Vec<Int>> = kern.iter().map(|xy| at.mul_vec(&xy[..k1])).collect();
    lattice_basis(&gens, d)
}

/// Expresses membership in the lattice spanned by `basis` as linear
/// equations (pinning the rational span) plus congruences (pinning the
/// finite index inside the saturation).
pub fn lattice_membership_constraints(
    basis: &[Vec<Int>],
    d: usize,
) -> (Vec<Vec<Int>>, Vec<(Vec<Int>, Int)>) {
    let lb = lattice_basis(basis, d);
    if lb.is_empty() {
        return (identity_rows(d), Vec::new());
    }
    let sat = lattice_saturation(&lb, d);
    let equations = kernel_basis(&IntMatrix::from_rows(&sat, d));
    let k = sat.len();
    let s = left_inverse(&sat, d);
    // Coordinates of the basis inside the saturation.
    let cols: Vec<Vec<Int>> = lb.iter().map(|v| s.mul_vec(v)).collect();
    let a = IntMatrix::from_rows(&cols, k).transpose();
    let (u, dd, _v) = smith_normal_form(&a);
    let us = u.mul(&s);
    let mut congruences = Vec::new();
    for i in 0..k {
        let di = dd.get(i, i).abs();
        assert!(!di.is_zero(), "basis must be linearly independent");
        if di >= Int::from(2) {
            congruences.push((us.row(i), di));
        }
    }
    (equations, congruences)
}

/// Membership of a vector in the lattice spanned by `basis` (a lattice
/// basis; any generating set works).
pub fn in_lattice(v: &[Int], basis: &[Vec<Int>], d: usize) -> bool {
    if vec_is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let m = IntMatrix::from_rows(basis, d).transpose();
    solve_integer(&m, v).is_some()
}

/// Lattice equality as canonical Hermite bases.
pub fn lattices_equal(a: &[Vec<Int>], b: &[Vec<Int>], d: usize) -> bool {
    lattice_basis(a, d) == lattice_basis(b, d)
}

/// Solves m x = b exactly over Z, if a solution exists.
pub fn solve_integer(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let (u, d, v) = smith_normal_form(m);
    let ub = u.mul_vec(b);
    let mut y = vec_zero(m.cols);
    for i in 0..m.rows {
        let di = if i < m.cols { d.get(i, i).clone() } else { Int::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(v.mul_vec(&y))
}

/// Solves m x = c*b with minimal positive integer c (rational solve with a
/// cleared denominator). Returns (c, x) or None when b is not in the span.
pub fn solve_rational(m: &IntMatrix, b: &[Int]) -> Option<(Int, Vec<Int>)> {
    let (u, d, v) = smith_normal_form(m);
    let ub = u.mul_vec(b);
    // y_i = ub_i / d_i ; find lcm of denominators.
    let mut denom = Int::one();
    for i in 0..m.rows {
        let di = if i < m.cols { d.get(i, i).clone() } else { Int::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let g = ub[i].gcd(&di);
            let red = (&di / g).abs();
            denom = denom.lcm(&red);
        }
    }
    let mut y = vec_zero(m.cols);
    for i in 0..m.rows.min(m.cols) {
        let di = d.get(i, i);
        if !di.is_zero() {
            y[i] = &ub[i] * &denom / di;
        }
    }
    Some((denom, v.mul_vec(&y)))
}

/// For a saturated lattice basis (rows), returns a matrix S with
/// S * basis^T = identity, i.e. integer coordinates of lattice members.
pub fn left_inverse(basis: &[Vec<Int>], d: usize) -> IntMatrix {
    let k = basis.len();
    let w = IntMatrix::from_rows(basis, d).transpose(); // d x k
    let (u, dd, v) = smith_normal_form(&w);
    for i in 0..k {
        assert!(
            dd.get(i, i).is_one(),
            "left_inverse requires a saturated lattice basis"
        );
    }
    // w = u^-1 [I;0] v^-1, so S = v [I_k | 0] u.
    let mut ik0 = IntMatrix::zero(k, d);
    for i in 0..k {
        *ik0.get_mut(i, i) = Int::one();
    }
    v.mul(&ik0.mul(&u))
}

// ---------------------------------------------------------------------------
// finitely generated abelian groups
// ---------------------------------------------------------------------------

/// L = Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_i | d_{i+1}, each d_i ≥ 2.
/// Elements are integer tuples of length free_rank + k; the torsion slots
/// are reduced modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl FgAbelianGroup {
    pub fn free(r: usize) -> Self {
        FgAbelianGroup { free_rank: r, torsion: Vec::new() }
    }

    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self, TorificError> {
        for (i, t) in torsion.iter().enumerate() {
            if *t < Int::from(2) {
                return Err(TorificError::InvalidInput(
                    "torsion invariants must be >= 2".into(),
                ));
            }
            if i > 0 && !(t % &torsion[i - 1]).is_zero() {
                return Err(TorificError::InvalidInput(
                    "torsion invariants must form a divisibility chain".into(),
                ));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Canonical representative: torsion coordinates reduced into [0, d_i).
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.len());
        let mut out = v.to_vec();
        for (i, t) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            out[j] = out[j].mod_floor(t);
        }
        out
    }

    pub fn zero(&self) -> Vec<Int> {
        vec_zero(self.len())
    }

    pub fn is_zero_elt(&self, v: &[Int]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&vec_add(a, b))
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        self.reduce(&vec_neg(a))
    }

    pub fn elements_equal(&self, a: &[Int], b: &[Int]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// Relation rows of the presentation Z^len / relations: the torsion
    /// relations d_i * e_{free_rank+i}.
    pub fn relation_columns(&self) -> Vec<Vec<Int>> {
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut v = vec_zero(self.len());
                v[self.free_rank + i] = t.clone();
                v
            })
            .collect()
    }
}

/// A homomorphism Z^source_rank -> target (matrix columns are the images of
/// the standard basis). Maps from groups with torsion are represented by a
/// matrix on representatives that respects the torsion relations of the
/// source; this is checked by `hom_from_group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source_rank: usize,
    pub source_torsion: Vec<Int>,
    pub target: FgAbelianGroup,
    /// target.len() x (source_rank + source_torsion.len())
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn from_free(source_rank: usize, target: FgAbelianGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows, target.len());
        assert_eq!(matrix.cols, source_rank);
        GroupHom { source_rank, source_torsion: Vec::new(), target, matrix }
    }

    pub fn from_group(
        source: &FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, TorificError> {
        assert_eq!(matrix.rows, target.len());
        assert_eq!(matrix.cols, source.len());
        // d_i * (image of torsion generator i) must vanish in the target.
        for (i, t) in source.torsion.iter().enumerate() {
            let img = matrix.col(source.free_rank + i);
            if !target.is_zero_elt(&vec_scale(t, &img)) {
                return Err(TorificError::InvalidInput(
                    "matrix does not respect source torsion".into(),
                ));
            }
        }
        Ok(GroupHom {
            source_rank: source.free_rank,
            source_torsion: source.torsion.clone(),
            target,
            matrix,
        })
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }
}

/// Cokernel of a homomorphism into `target`: the quotient target/im(h) in
/// invariant factor form, plus the canonical projection.
pub fn cokernel(h: &GroupHom) -> (FgAbelianGroup, GroupHom) {
    quotient_by_columns(&h.target, &h.matrix.rows_vec_cols())
}

impl IntMatrix {
    /// Columns as vectors.
    fn rows_vec_cols(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }
}

/// Quotient of `target` by the subgroup generated by the given element
/// representatives. Returns the quotient and the projection from `target`.
pub fn quotient_by_columns(
    target: &FgAbelianGroup,
    columns: &[Vec<Int>],
) -> (FgAbelianGroup, GroupHom) {
    let n = target.len();
    let mut cols: Vec<Vec<Int>> = columns.to_vec();
    cols.extend(target.relation_columns());
    let rel = if cols.is_empty() {
        IntMatrix::zero(n, 0)
    } else {
        IntMatrix::from_rows(&cols, n).transpose()
    };
    let (u, d, _v) = smith_normal_form(&rel);
    // Quotient coordinates are Ux; coordinate i is modulo d_i (0 = free).
    let mut free_rows: Vec<usize> = Vec::new();
    let mut torsion_rows: Vec<(usize, Int)> = Vec::new();
    for i in 0..n {
        let di = if i < rel.cols.min(n) { d.get(i, i).clone() } else { Int::zero() };
        if di.is_zero() {
            free_rows.push(i);
        } else if !di.is_one() {
            torsion_rows.push((i, di));
        }
    }
    let torsion: Vec<Int> = torsion_rows.iter().map(|(_, t)| t.clone()).collect();
    let q = FgAbelianGroup { free_rank: free_rows.len(), torsion };
    let mut proj = IntMatrix::zero(q.len(), n);
    for (new_i, &i) in free_rows.iter().enumerate() {
        for j in 0..n {
            *proj.get_mut(new_i, j) = u.get(i, j).clone();
        }
    }
    for (k, (i, _)) in torsion_rows.iter().enumerate() {
        for j in 0..n {
            *proj.get_mut(free_rows.len() + k, j) = u.get(*i, j).clone();
        }
    }
    let hom = GroupHom {
        source_rank: target.free_rank,
        source_torsion: target.torsion.clone(),
        target: q.clone(),
        matrix: proj,
    };
    (q, hom)
}

// ---------------------------------------------------------------------------
// cones
// ---------------------------------------------------------------------------

/// A rational polyhedral cone with both descriptions kept consistent.
///
/// `rays` is a generating set: extreme rays modulo lineality plus a ± pair
/// for each lineality basis vector. `halfspaces` are the generators of the
/// dual cone in the same normal form, so the cone is exactly
/// {x : <h, x> >= 0 for all h in halfspaces}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub ambient_rank: usize,
    pub rays: Vec<Vec<Int>>,
    pub halfspaces: Vec<Vec<Int>>,
}

impl Cone {
    pub fn from_rays(ambient_rank: usize, gens: &[Vec<Int>]) -> Cone {
        for g in gens {
            assert_eq!(g.len(), ambient_rank, "ray dimension mismatch");
        }
        let halfspaces = dual_generators(gens, ambient_rank);
        let rays = dual_generators(&halfspaces, ambient_rank);
        Cone { ambient_rank, rays, halfspaces }
    }

    pub fn from_halfspaces(ambient_rank: usize, normals: &[Vec<Int>]) -> Cone {
        let rays = dual_generators(normals, ambient_rank);
        let halfspaces = dual_generators(&rays, ambient_rank);
        Cone { ambient_rank, rays, halfspaces }
    }

    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.halfspaces.clone(),
            halfspaces: self.rays.clone(),
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.halfspaces.iter().all(|h| !dot(h, v).is_negative())
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.rays, self.ambient_rank)
    }

    /// Pointed iff the dual cone is full dimensional.
    pub fn is_pointed(&self) -> bool {
        rank_of(&self.halfspaces, self.ambient_rank) == self.ambient_rank
    }

    /// Lineality sublattice basis: the largest linear subspace contained in
    /// the cone.
    pub fn lineality(&self) -> Vec<Vec<Int>> {
        if self.halfspaces.is_empty() {
            return lattice_basis(&identity_rows(self.ambient_rank), self.ambient_rank);
        }
        kernel_basis(&IntMatrix::from_rows(&self.halfspaces, self.ambient_rank))
    }

    /// Set equality via the canonical double description.
    pub fn set_equal(&self, other: &Cone) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.rays.iter().all(|r| other.contains(r))
            && other.rays.iter().all(|r| self.contains(r))
    }
}

/// Generators of the dual cone {x : <c, x> >= 0 for all c in constraints}:
/// extreme rays in a canonical representation plus ± pairs for a canonical
/// lineality basis. Enumerates candidate rays from kernels of constraint
/// subsets; fine for the low dimensions this crate works in.
pub fn dual_generators(constraints: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    if d == 0 {
        return Vec::new();
    }
    let nontrivial: Vec<Vec<Int>> = constraints
        .iter()
        .filter(|c| !vec_is_zero(c))
        .map(|c| primitive(c))
        .collect();
    let lin = if nontrivial.is_empty() {
        lattice_basis(&identity_rows(d), d)
    } else {
        kernel_basis(&IntMatrix::from_rows(&nontrivial, d))
    };
    let lin_dim = lin.len();
    let r_eff = d - lin_dim;
    let mut out: Vec<Vec<Int>> = Vec::new();
    for b in &lin {
        out.push(b.clone());
        out.push(vec_neg(b));
    }
    if r_eff == 0 {
        sort_vectors(&mut out);
        return out;
    }
    // Dedup constraints for the subset enumeration.
    let mut uniq = nontrivial.clone();
    uniq.sort();
    uniq.dedup();
    let target_rank = r_eff - 1;
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for subset in subsets_of_size(uniq.len(), target_rank) {
        let rows: Vec<Vec<Int>> = subset.iter().map(|&i| uniq[i].clone()).collect();
        if rank_of(&rows, d) != target_rank {
            continue;
        }
        let kern = if rows.is_empty() {
            lattice_basis(&identity_rows(d), d)
        } else {
            kernel_basis(&IntMatrix::from_rows(&rows, d))
        };
        if kern.len() != lin_dim + 1 {
            continue;
        }
        // Pick a kernel vector outside the lineality and canonicalize modulo
        // the lineality lattice.
        let mut w: Option<Vec<Int>> = None;
        for k in &kern {
            if !in_rational_span(k, &lin, d) {
                w = Some(k.clone());
                break;
            }
        }
        let Some(w) = w else { continue };
        for cand in [w.clone(), vec_neg(&w)] {
            if nontrivial.iter().all(|c| !dot(c, &cand).is_negative()) {
                let canon = reduce_mod_lattice(&primitive(&cand), &lin);
                let canon = primitive(&canon);
                if !vec_is_zero(&canon) {
                    rays.push(canon);
                }
                break;
            }
        }
    }
    rays.sort();
    rays.dedup();
    out.extend(rays);
    sort_vectors(&mut out);
    out
}

fn in_rational_span(v: &[Int], basis: &[Vec<Int>], d: usize) -> bool {
    if vec_is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let m = IntMatrix::from_rows(basis, d).transpose();
    solve_rational(&m, v).is_some()
}

/// Reduce a vector modulo a Hermite-form lattice basis (canonical coset
/// representative as far as the pivots allow).
fn reduce_mod_lattice(v: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    let mut out = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|x| !x.is_zero()).unwrap();
        let q = out[lead].div_floor(&b[lead]);
        if !q.is_zero() {
            let delta = vec_scale(&q, b);
            out = vec_sub(&out, &delta);
        }
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
