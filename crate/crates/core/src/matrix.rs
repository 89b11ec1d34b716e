use std::collections::HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::{ModVec, ModuleSpace};
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_strings()).finish()
    }
}

impl Matrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn diagonal(ring: &RingRef, diag: &[Polynomial]) -> Matrix {
        let mut m = Matrix::zeros(ring, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::precondition("ragged matrix rows"));
        }
        let nrows = rows.len();
        Ok(Matrix { ring: ring.clone(), rows: nrows, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds an `rows × columns.len()` matrix from its columns.
    pub fn from_columns(ring: &RingRef, rows: usize, columns: &[Vec<Polynomial>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    /// Parses a row-major grid of polynomial strings.
    pub fn parse(ring: &RingRef, rows: usize, cols: usize, cells: &[&str]) -> Result<Matrix> {
        if cells.len() != rows * cols {
            return Err(AlgebraError::precondition(format!("expected {} entries, got {}", rows * cols, cells.len())));
        }
        let entries = cells.iter().map(|c| Polynomial::parse(ring, c)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| -e)
    }

    pub fn scale(&self, c: &Polynomial) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(i, j).is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// `[self | other]`
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut out = Matrix::zeros(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `[self; other]`
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, rows.len(), self.cols);
        for (a, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(a, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.rows, cols.len());
        for i in 0..self.rows {
            for (b, &j) in cols.iter().enumerate() {
                out.set(i, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        self.select_rows(&(start..end).collect::<Vec<_>>())
    }

    /// Drops zero columns.
    pub fn compact(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero())).collect();
        self.select_columns(&keep)
    }

    pub fn to_vectors(&self, space: &ModuleSpace) -> Vec<ModVec> {
        (0..self.cols).map(|j| space.vector(&self.column(j))).collect()
    }

    pub fn from_vectors(space: &ModuleSpace, vs: &[ModVec]) -> Matrix {
        let cols: Vec<Vec<Polynomial>> = vs.iter().map(|v| space.components(v)).collect();
        Matrix::from_columns(&space.ring, space.rank, &cols)
    }

    /// All `t × t` minors, keyed by (row mask, column mask).
    pub fn minor_table(&self, t: usize) -> HashMap<(u128, u128), Polynomial> {
        assert!(self.rows < 128 && self.cols < 128, "matrix too large for minor enumeration");
        let mut level: HashMap<(u128, u128), Polynomial> = HashMap::new();
        if t == 0 {
            level.insert((0, 0), Polynomial::one(&self.ring));
            return level;
        }
        if t > self.rows || t > self.cols {
            return level;
        }
        level.insert((0, 0), Polynomial::one(&self.ring));
        let row_sets = |k: usize| subsets(self.rows, k);
        for size in 1..=t {
            let mut next = HashMap::new();
            for cset in subsets(self.cols, size) {
                let last = *cset.last().unwrap();
                let cmask = mask(&cset);
                let prev_cmask = cmask & !(1u128 << last);
                for rset in row_sets(size) {
                    let mut acc = Polynomial::zero(&self.ring);
                    for (pos, &i) in rset.iter().enumerate() {
                        let a = self.get(i, last);
                        if a.is_zero() {
                            continue;
                        }
                        let sub = mask(&rset) & !(1u128 << i);
                        let Some(d) = level.get(&(sub, prev_cmask)) else { continue };
                        if d.is_zero() {
                            continue;
                        }
                        let term = a * d;
                        // expansion along the last column: sign (-1)^(pos + size - 1)
                        acc = if (pos + size - 1) % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    next.insert((mask(&rset), cmask), acc);
                }
            }
            level = next;
        }
        level
    }

    /// Nonzero `t × t` minors, deduplicated up to units.
    pub fn minors(&self, t: usize) -> Vec<Polynomial> {
        let table = self.minor_table(t);
        let mut keys: Vec<_> = table.keys().copied().collect();
        keys.sort_unstable();
        let mut out: Vec<Polynomial> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for k in keys {
            let m = &table[&k];
            if !m.is_zero() && seen.insert(m.monic()) {
                out.push(m.clone());
            }
        }
        out
    }

    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Polynomial::one(&self.ring);
        }
        let full = (1u128 << self.rows) - 1;
        self.minor_table(self.rows).remove(&(full, full)).expect("full minor")
    }

    /// The ℓ-th compound matrix: rows and columns indexed by ℓ-subsets in lex order.
    pub fn compound(&self, l: usize) -> Matrix {
        let rs = subsets(self.rows, l);
        let cs = subsets(self.cols, l);
        let table = self.minor_table(l);
        let mut out = Matrix::zeros(&self.ring, rs.len(), cs.len());
        for (a, r) in rs.iter().enumerate() {
            for (b, c) in cs.iter().enumerate() {
                if let Some(d) = table.get(&(mask(r), mask(c))) {
                    out.set(a, b, d.clone());
                }
            }
        }
        out
    }
}

fn mask(set: &[usize]) -> u128 {
    set.iter().fold(0, |m, &i| m | (1u128 << i))
}

/// All `k`-subsets of `0..n`, each ascending, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 && cur[0] >= n - k {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
