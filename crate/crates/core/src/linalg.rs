//! Dense linear algebra over a prime field GF(p).
//!
//! Vectors are `u32` slices with entries in `[0, p)`. [`Echelon`] keeps an
//! incrementally built row echelon form so that very tall systems can be
//! reduced one row at a time without ever being stored.

use crate::fields::inv_mod;

/// Row echelon form under incremental insertion.
///
/// Stored rows are normalized (pivot entry 1) and each row is zero in the
/// pivot columns of all rows inserted before it. Over GF(2) rows are kept
/// bit-packed and reduced by XOR.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    cols: usize,
    store: Store,
    pivots: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Store {
    Dense(Vec<Vec<u32>>),
    Packed(Vec<Vec<u64>>),
}

fn pack(row: &[u32]) -> Vec<u64> {
    let mut words = vec![0u64; row.len().div_ceil(64)];
    for (i, &x) in row.iter().enumerate() {
        if x % 2 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn unpack(words: &[u64], cols: usize) -> Vec<u32> {
    (0..cols).map(|i| ((words[i / 64] >> (i % 64)) & 1) as u32).collect()
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

impl Echelon {
    pub fn new(p: u32, cols: usize) -> Self {
        let store = if p == 2 {
            Store::Packed(Vec::new())
        } else {
            Store::Dense(Vec::new())
        };
        Echelon {
            p,
            cols,
            store,
            pivots: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Stored rows in insertion order, as dense vectors.
    fn dense_rows(&self) -> Vec<Vec<u32>> {
        match &self.store {
            Store::Dense(rows) => rows.clone(),
            Store::Packed(rows) => rows.iter().map(|w| unpack(w, self.cols)).collect(),
        }
    }

    /// Reduces `row` against dense stored rows, returning entries in `[0, p)`.
    ///
    /// Entries are accumulated unreduced in `u64` and only taken mod p when
    /// read as a pivot coefficient; each update adds less than p^2, so with
    /// p < 2^16 and fewer than 2^31 stored rows nothing overflows. Larger
    /// primes reduce after every update.
    fn reduce_dense(&self, rows: &[Vec<u32>], row: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let lazy = p < 1 << 16;
        let mut acc: Vec<u64> = row.iter().map(|&x| x as u64 % p).collect();
        for (stored, &pc) in rows.iter().zip(&self.pivots) {
            let c = acc[pc] % p;
            if c == 0 {
                continue;
            }
            let factor = p - c;
            for (x, &s) in acc[pc..].iter_mut().zip(&stored[pc..]) {
                *x += factor * s as u64;
                if !lazy {
                    *x %= p;
                }
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    fn reduce_packed(&self, rows: &[Vec<u64>], row: &[u32]) -> Vec<u64> {
        let mut w = pack(row);
        for (stored, &pc) in rows.iter().zip(&self.pivots) {
            if (w[pc / 64] >> (pc % 64)) & 1 == 1 {
                for (x, s) in w[pc / 64..].iter_mut().zip(&stored[pc / 64..]) {
                    *x ^= s;
                }
            }
        }
        w
    }

    /// Inserts a row; returns true if the rank grew. The leftmost nonzero
    /// entry of the reduced row becomes its pivot.
    pub fn insert(&mut self, row: &[u32]) -> bool {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        match &self.store {
            Store::Packed(rows) => {
                let w = self.reduce_packed(rows, row);
                let Some(pc) = first_bit(&w) else {
                    return false;
                };
                self.pivots.push(pc);
                if let Store::Packed(rows) = &mut self.store {
                    rows.push(w);
                }
            }
            Store::Dense(rows) => {
                let mut r = self.reduce_dense(rows, row);
                let Some(pc) = r.iter().position(|&x| x != 0) else {
                    return false;
                };
                let inv = inv_mod(r[pc], self.p) as u64;
                for x in r[pc..].iter_mut() {
                    *x = (*x as u64 * inv % self.p as u64) as u32;
                }
                self.pivots.push(pc);
                if let Store::Dense(rows) = &mut self.store {
                    rows.push(r);
                }
            }
        }
        true
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: &[u32]) -> bool {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        match &self.store {
            Store::Packed(rows) => first_bit(&self.reduce_packed(rows, row)).is_none(),
            Store::Dense(rows) => self.reduce_dense(rows, row).iter().all(|&x| x == 0),
        }
    }

    /// Reduced row echelon form: rows sorted by pivot, each pivot column
    /// zero in every other row.
    pub fn rref(&self) -> Vec<(usize, Vec<u32>)> {
        let p = self.p as u64;
        let stored = self.dense_rows();
        let mut order: Vec<usize> = (0..stored.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<(usize, Vec<u32>)> = order
            .into_iter()
            .map(|i| (self.pivots[i], stored[i].clone()))
            .collect();
        for i in (0..rows.len()).rev() {
            let (pc, pivot_row) = (rows[i].0, rows[i].1.clone());
            for (_, other) in rows.iter_mut().take(i) {
                let c = other[pc] as u64;
                if c == 0 {
                    continue;
                }
                for (x, &s) in other[pc..].iter_mut().zip(&pivot_row[pc..]) {
                    *x = ((*x as u64 + (p - c) * s as u64) % p) as u32;
                }
            }
        }
        rows
    }

    /// A basis of the nullspace: one vector per free column (ascending),
    /// with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for (pc, _) in &rref {
            is_pivot[*pc] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (pc, row) in &rref {
                    v[*pc] = (self.p - row[free]) % self.p;
                }
                v
            })
            .collect()
    }
}

/// Rank of a matrix given as rows.
pub fn rank(p: u32, rows: &[Vec<u32>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut e = Echelon::new(p, first.len());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Nullspace basis of a matrix with `cols` columns given as rows.
pub fn kernel(p: u32, cols: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(p, cols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

/// `M v` for a row-major `rows x cols` matrix.
pub fn mat_vec(p: u32, m: &[u32], cols: usize, v: &[u32]) -> Vec<u32> {
    let p = p as u64;
    m.chunks(cols)
        .map(|row| {
            let terms = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64);
            let sum = if p < 1 << 16 {
                terms.sum::<u64>()
            } else {
                terms.fold(0, |acc, t| (acc + t) % p)
            };
            (sum % p) as u32
        })
        .collect()
}
