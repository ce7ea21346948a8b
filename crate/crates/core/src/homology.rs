//! Exact integer linear algebra and the arrow chain complex.
//!
//! The complex is `Z^Q2 --∂1--> Z^Q1 --∂0--> Z^Q0` with `∂1(τ)` the sum of the
//! three arrows of an internal triangle and `∂0(α) = t(α) − s(α)`. Its first
//! homology is the first homology of the surface.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curves::ArrowChain;
use crate::error::{ensure_invariant, Error, Result};
use crate::surface::{Quiver, SurfaceProfile};

/// Dense row-major matrix over arbitrary precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// Smith normal form with both transforms and their inverses.
struct Smith {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op on d is mirrored on u; its inverse is applied as a column op to u_inv.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let k: BigInt = $k;
            d.add_row($dst, $src, &k);
            u.add_row($dst, $src, &k);
            u_inv.add_col($src, $dst, &-k);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let k: BigInt = $k;
            d.add_col($dst, $src, &k);
            v.add_col($dst, $src, &k);
            v_inv.add_row($src, $dst, &-k);
        }};
    }

    let mut t = 0;
    while t < rows.min(cols) {
        let mut found = false;
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot;
            // re-selecting it every round keeps coefficients small.
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = d.get(r, c);
                    if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < d.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break };
            found = true;
            row_swap!(t, pr);
            col_swap!(t, pc);
            let mut clean = true;
            for r in t + 1..rows {
                if !d.get(r, t).is_zero() {
                    let q = nearest_quotient(d.get(r, t), d.get(t, t));
                    row_add!(r, t, -q);
                    clean &= d.get(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !d.get(t, c).is_zero() {
                    let q = nearest_quotient(d.get(t, c), d.get(t, t));
                    col_add!(c, t, -q);
                    clean &= d.get(t, c).is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold in any row whose entries the pivot does not divide.
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !(d.get(r, c) % &pivot).is_zero()));
            match bad {
                Some(r) => row_add!(t, r, BigInt::one()),
                None => break,
            }
        }
        if !found {
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // Negating row t of u is undone by negating column t of u_inv.
            for r in 0..rows {
                let x = -u_inv.get(r, t);
                u_inv.set(r, t, x);
            }
        }
        t += 1;
    }
    Smith { d, u, u_inv, v, v_inv, rank: t }
}

/// `round(a / b)`, so that the remainder is at most |b|/2 in magnitude.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// Returns `(U, D, V)` with `U·M·V = D`, `U`, `V` unimodular and `D` diagonal
/// with non-negative entries, each dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m);
    (s.u, s.d, s.v)
}

/// The arrow chain complex of a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// Q1 × Q2: column `τ` holds the three arrows of internal triangle `τ`.
    pub d1: IntMatrix,
    /// Q0 × Q1: column `α` is `t(α) − s(α)`.
    pub d0: IntMatrix,
}

pub fn chain_complex(quiver: &Quiver) -> Result<ChainComplex> {
    let (q0, q1, q2) = (quiver.vertices().len(), quiver.arrows().len(), quiver.internal_triangles().len());
    let mut d1 = IntMatrix::zeros(q1, q2);
    for (j, t) in quiver.internal_triangles().iter().enumerate() {
        for a in t.arrows {
            d1.set(a.0, j, BigInt::one());
        }
    }
    let mut d0 = IntMatrix::zeros(q0, q1);
    for a in quiver.arrows() {
        let s = quiver.vertex_index(a.source).unwrap();
        let t = quiver.vertex_index(a.target).unwrap();
        // a loop arrow has zero boundary
        let ts = d0.get(t, a.id.0) + 1;
        d0.set(t, a.id.0, ts);
        let ss = d0.get(s, a.id.0) - 1;
        d0.set(s, a.id.0, ss);
    }
    ensure_invariant!(d0.mul(&d1).is_zero(), "∂0∂1 ≠ 0");
    Ok(ChainComplex { d1, d0 })
}

/// First homology with the data needed to read off classes of cycles.
#[derive(Debug, Clone)]
pub struct H1Structure {
    rank: usize,
    arrows: usize,
    d0: IntMatrix,
    /// Rows of V0⁻¹ beyond the rank of ∂0: coordinates on ker ∂0.
    kernel_coords: IntMatrix,
    /// U of the Smith form of ∂1 written in kernel coordinates.
    u_b: IntMatrix,
    /// Number of coordinates killed by boundaries.
    boundary_rank: usize,
    basis: Vec<ArrowChain>,
}

/// Computes H0 and H1 of the complex, checking them against the profile.
pub fn homology(complex: &ChainComplex, profile: &SurfaceProfile) -> Result<H1Structure> {
    let q1 = complex.d0.cols;
    let q0 = complex.d0.rows;
    let s0 = smith(&complex.d0);
    let r0 = s0.rank;
    ensure_invariant!(q0 == 0 || q0 - r0 == 1, "H0 has rank {}, expected 1", q0 - r0);
    ensure_invariant!(
        s0.d.diagonal().iter().take(r0).all(|x| x.is_one()),
        "H0 has torsion"
    );
    let k = q1 - r0;
    let mut kernel_coords = IntMatrix::zeros(k, q1);
    for i in 0..k {
        for j in 0..q1 {
            kernel_coords.set(i, j, s0.v_inv.get(r0 + i, j).clone());
        }
    }
    let b = kernel_coords.mul(&complex.d1);
    let sb = smith(&b);
    ensure_invariant!(
        smith(&complex.d1).rank == complex.d1.cols,
        "∂1 is not injective"
    );
    ensure_invariant!(
        sb.d.diagonal().iter().all(|x| x.is_zero() || x.is_one()),
        "H1 has torsion"
    );
    let rank = k - sb.rank;
    let expected = 2 * profile.genus + profile.boundary_components + profile.punctures;
    let expected = expected.saturating_sub(1);
    ensure_invariant!(rank == expected, "H1 rank {rank}, expected {expected}");

    // Cycles representing the free generators: K · U_B⁻¹ e_j.
    let mut kernel_basis = IntMatrix::zeros(q1, k);
    for i in 0..q1 {
        for j in 0..k {
            kernel_basis.set(i, j, s0.v.get(i, r0 + j).clone());
        }
    }
    let gens = kernel_basis.mul(&sb.u_inv);
    let basis = (sb.rank..k)
        .map(|j| {
            (0..q1)
                .map(|i| to_i64(gens.get(i, j)))
                .collect::<Result<Vec<_>>>()
                .map(ArrowChain)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(H1Structure {
        rank,
        arrows: q1,
        d0: complex.d0.clone(),
        kernel_coords,
        u_b: sb.u,
        boundary_rank: sb.rank,
        basis,
    })
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvariantViolation(format!("coefficient {x} exceeds 64 bits")))
}

impl H1Structure {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cycles whose classes are the standard generators.
    pub fn basis(&self) -> &[ArrowChain] {
        &self.basis
    }

    pub fn is_cycle(&self, chain: &ArrowChain) -> bool {
        chain.0.len() == self.arrows && {
            let v: Vec<BigInt> = chain.0.iter().map(|c| BigInt::from(*c)).collect();
            self.d0.mul_vec(&v).iter().all(Zero::is_zero)
        }
    }

    /// Coordinates of the class of a cycle in the standard generators.
    pub fn class_of(&self, chain: &ArrowChain) -> Result<Vec<i64>> {
        if chain.0.len() != self.arrows {
            return Err(Error::InvalidCurve(format!(
                "chain has {} coefficients, quiver has {} arrows",
                chain.0.len(),
                self.arrows
            )));
        }
        if !self.is_cycle(chain) {
            return Err(Error::NotACycle);
        }
        let v: Vec<BigInt> = chain.0.iter().map(|c| BigInt::from(*c)).collect();
        let y = self.kernel_coords.mul_vec(&v);
        let z = self.u_b.mul_vec(&y);
        z[self.boundary_rank..].iter().map(to_i64).collect()
    }
}

/// The unique `(λ, μ)` with `[cycle] = λ[a] + μ[b]`.
pub fn class_coordinates(
    h1: &H1Structure,
    cycle: &ArrowChain,
    basis: (&ArrowChain, &ArrowChain),
) -> Result<(i64, i64)> {
    if h1.rank != 2 {
        return Err(Error::UnsupportedProfile(format!("H1 has rank {}, expected 2", h1.rank)));
    }
    let z = h1.class_of(cycle)?;
    let a = h1.class_of(basis.0)?;
    let b = h1.class_of(basis.1)?;
    let det = a[0] * b[1] - a[1] * b[0];
    if det.abs() != 1 {
        return Err(Error::NotABasis);
    }
    let lambda = (z[0] * b[1] - z[1] * b[0]) * det;
    let mu = (a[0] * z[1] - a[1] * z[0]) * det;
    Ok((lambda, mu))
}
