//! Bit-packed 0/1 matrix with row- and column-major views.
//!
//! Cover LP matrices are dense 0/1; packing 64 entries per word keeps the
//! simplex pricing passes cache-friendly at a few thousand rows/columns.

#[derive(Clone, Debug)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words_per_col: usize,
    row_major: Vec<u64>,
    col_major: Vec<u64>,
}

impl BitMat {
    pub fn from_rows(rows: usize, cols: usize, bits: &[Vec<u64>]) -> BitMat {
        let words_per_row = cols.div_ceil(64);
        let words_per_col = rows.div_ceil(64);
        let mut row_major = vec![0u64; rows * words_per_row];
        for (i, r) in bits.iter().enumerate() {
            row_major[i * words_per_row..(i + 1) * words_per_row].copy_from_slice(r);
        }
        let mut m = BitMat {
            rows,
            cols,
            words_per_row,
            words_per_col,
            row_major,
            col_major: Vec::new(),
        };
        m.rebuild_col_major();
        m
    }

    /// Build from a membership predicate, parallelizing over rows.
    pub fn build<F: Fn(usize, usize) -> bool + Sync>(rows: usize, cols: usize, f: F) -> BitMat {
        use rayon::prelude::*;
        let words_per_row = cols.div_ceil(64);
        let bits: Vec<Vec<u64>> = (0..rows)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words_per_row];
                for j in 0..cols {
                    if f(i, j) {
                        row[j / 64] |= 1u64 << (j % 64);
                    }
                }
                row
            })
            .collect();
        BitMat::from_rows(rows, cols, &bits)
    }

    fn rebuild_col_major(&mut self) {
        let mut col_major = vec![0u64; self.cols * self.words_per_col];
        for i in 0..self.rows {
            let base = i * self.words_per_row;
            for w in 0..self.words_per_row {
                let mut word = self.row_major[base + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    let j = w * 64 + b;
                    col_major[j * self.words_per_col + i / 64] |= 1u64 << (i % 64);
                    word &= word - 1;
                }
            }
        }
        self.col_major = col_major;
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_major[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.row_major[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    #[inline]
    fn col_words(&self, j: usize) -> &[u64] {
        &self.col_major[j * self.words_per_col..(j + 1) * self.words_per_col]
    }

    /// `sum_j M[i,j] * x[j]`
    #[inline]
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        dot_bits(self.row_words(i), x)
    }

    /// `sum_i M[i,j] * y[i]`
    #[inline]
    pub fn col_dot(&self, j: usize, y: &[f64]) -> f64 {
        dot_bits(self.col_words(j), y)
    }

    /// `out[i] += f * M[i,j]` over the column's set bits.
    #[inline]
    pub fn col_axpy(&self, j: usize, f: f64, out: &mut [f64]) {
        axpy_bits(self.col_words(j), f, out);
    }

    /// `out[j] += f * M[i,j]` over the row's set bits.
    #[inline]
    pub fn row_axpy(&self, i: usize, f: f64, out: &mut [f64]) {
        axpy_bits(self.row_words(i), f, out);
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row_words(i))
    }

    pub fn col_ones(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.col_words(j))
    }

    pub fn count_row(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_col(&self, j: usize) -> usize {
        self.col_words(j).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[inline]
fn dot_bits(words: &[u64], x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (w, chunk) in words.iter().zip(x.chunks(64)) {
        let mut word = *w;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            acc += chunk[b];
            word &= word - 1;
        }
    }
    acc
}

#[inline]
fn axpy_bits(words: &[u64], f: f64, out: &mut [f64]) {
    for (w, chunk) in words.iter().zip(out.chunks_mut(64)) {
        let mut word = *w;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            chunk[b] += f;
            word &= word - 1;
        }
    }
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_dots() {
        let m = BitMat::build(3, 130, |i, j| (i + j) % 3 == 0);
        assert_eq!(m.get(0, 0), true);
        assert_eq!(m.get(0, 1), false);
        assert_eq!(m.get(1, 2), true);
        let x = vec![1.0; 130];
        for i in 0..3 {
            let expect = (0..130).filter(|j| (i + j) % 3 == 0).count() as f64;
            assert_eq!(m.row_dot(i, &x), expect);
            assert_eq!(m.count_row(i), expect as usize);
        }
        let y = vec![2.0; 3];
        for j in 0..130 {
            let expect = 2.0 * (0..3).filter(|i| (i + j) % 3 == 0).count() as f64;
            assert_eq!(m.col_dot(j, &y), expect);
        }
    }

    #[test]
    fn axpy_matches_get() {
        let m = BitMat::build(70, 5, |i, j| i % (j + 2) == 0);
        let mut out = vec![0.0; 70];
        m.col_axpy(3, 1.5, &mut out);
        for i in 0..70 {
            let expect = if m.get(i, 3) { 1.5 } else { 0.0 };
            assert_eq!(out[i], expect);
        }
    }
}
