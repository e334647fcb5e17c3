//! Smith normal form over `Z` and finitely generated abelian groups.
//!
//! Entries are arbitrary-precision integers; unimodular transforms on random
//! inputs grow quickly and fixed-width arithmetic would silently overflow.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lens::{BasisTag, TorusClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    /// A matrix with no rows but a declared column count.
    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
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
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
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
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(source, j) * factor;
            self.entries[target * self.cols + j] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, source) * factor;
            self.entries[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Position of the smallest nonzero |entry| in the block `[t.., t..]`,
/// scanning row-major; ties go to the first hit.
fn smallest_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let a = m.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);

    for t in 0..steps {
        let Some((pi, pj)) = smallest_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;

            for i in t + 1..d.rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..d.cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }

            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let (pi, pj) = smallest_pivot_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }

            // divisibility: the pivot must divide every remaining entry
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..d.rows)
                .find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition { u, d, v }
}

fn smallest_pivot_in_cross(m: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = ((t, t), m.get(t, t).abs());
    for i in t + 1..m.rows {
        let a = m.get(i, t).abs();
        if !a.is_zero() && a < best.1 {
            best = ((i, t), a);
        }
    }
    for j in t + 1..m.cols {
        let a = m.get(t, j).abs();
        if !a.is_zero() && a < best.1 {
            best = ((t, j), a);
        }
    }
    best.0
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`
/// with `d₁ | d₂ | … | d_k`, every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    torsion: Vec<BigUint>,
    free_rank: usize,
}

impl AbelianGroup {
    /// Builds a group from an invariant-factor chain; rejects broken chains.
    pub fn new(torsion: Vec<BigUint>, free_rank: usize) -> Result<Self> {
        if torsion.iter().any(|d| *d < BigUint::from(2u8)) {
            return Err(Error::Domain("invariant factors must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Domain(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(AbelianGroup { torsion, free_rank })
    }

    pub fn from_factors(torsion: &[u64], free_rank: usize) -> Result<Self> {
        AbelianGroup::new(
            torsion.iter().map(|&d| BigUint::from(d)).collect(),
            free_rank,
        )
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            d => AbelianGroup {
                torsion: vec![BigUint::from(d)],
                free_rank: 0,
            },
        }
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator_count() <= 1
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    /// Builds the group from a list of diagonal entries: zero gives a free
    /// summand, one is dropped.
    fn from_diagonal(diag: &[BigInt], cols: usize) -> Self {
        let nonzero: Vec<&BigInt> = diag.iter().filter(|d| !d.is_zero()).collect();
        let mut torsion: Vec<BigUint> = nonzero
            .iter()
            .map(|d| d.magnitude().clone())
            .filter(|d| !d.is_one())
            .collect();
        torsion.sort();
        AbelianGroup {
            torsion,
            free_rank: cols - nonzero.len(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Quotient of `ambient` by the rows of `relations`, one relation per row,
/// written on the ambient generators (free generators first).
pub fn cokernel(relations: &IntMatrix, ambient: &AbelianGroup) -> Result<AbelianGroup> {
    let gens = ambient.generator_count();
    if relations.cols() != gens {
        return Err(Error::Usage(format!(
            "relation matrix has {} columns but {ambient} has {gens} generators",
            relations.cols()
        )));
    }
    let extra = ambient.torsion.len();
    let mut full = IntMatrix::zeros(relations.rows() + extra, gens);
    for i in 0..relations.rows() {
        for j in 0..gens {
            full.set(i, j, relations.get(i, j).clone());
        }
    }
    for (k, d) in ambient.torsion.iter().enumerate() {
        let col = ambient.free_rank + k;
        full.set(relations.rows() + k, col, BigInt::from(d.clone()));
    }
    let snf = smith_normal_form(&full);
    Ok(AbelianGroup::from_diagonal(&snf.invariant_factors(), gens))
}

/// `H₁(∂νK) → H₁(νK) ≅ Z ⊕ Z₂`, `(n, ℓ) ↦ (2n, ℓ mod 2)`.
pub fn inclusion_map_h1(c: &TorusClass) -> Result<(i64, u8)> {
    if c.basis != BasisTag::NuKBoundary {
        return Err(Error::Usage(format!(
            "inclusion map expects a class on nuk, got {c}"
        )));
    }
    Ok((2 * c.interval(), c.fiber().rem_euclid(2) as u8))
}

/// `H₁` of the Dehn filling of `νK` whose meridian is glued to `(n, ℓ)`.
pub fn dehn_filling_h1(n: i64, l: i64) -> Result<AbelianGroup> {
    if n.gcd(&l) != 1 {
        return Err(Error::NotPrimitive { n, l });
    }
    let (a, b) = inclusion_map_h1(&TorusClass::nuk(n, l))?;
    let ambient = AbelianGroup::from_factors(&[2], 1)?;
    cokernel(&IntMatrix::from_rows(&[vec![a, b as i64]]), &ambient)
}

/// Convenience for reports: the order as a machine integer when it fits.
pub fn order_u64(g: &AbelianGroup) -> Option<u64> {
    g.order().and_then(|o| o.to_u64())
}
