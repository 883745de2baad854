use super::{CodeError, Z4Word};

/// Dense matrix over Z4, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Matrix {
    rows: Vec<Vec<u8>>,
    ncols: usize,
}

impl Z4Matrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged Z4 matrix");
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|e| e & 3).collect())
            .collect();
        Z4Matrix { rows, ncols }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// `self · otherᵀ` over Z4.
    pub fn mul_transpose(&self, other: &Z4Matrix) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| {
                other
                    .rows
                    .iter()
                    .map(|s| Z4Word(r.clone()).dot(&Z4Word(s.clone())))
                    .collect()
            })
            .collect()
    }
}

/// Basis of `{c : H·c = 0}` over Z4.
///
/// Phase one pivots on unit entries until none remain; phase two rejects any
/// leftover row, which could only hold multiples of 2 and would make the
/// kernel non-free. The result is in systematic form: one basis vector per
/// non-pivot column.
pub fn kernel_generator_matrix(h: &Z4Matrix) -> Result<Z4Matrix, CodeError> {
    let mut rows = h.rows.clone();
    let ncols = h.ncols;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; rows.len()];

    loop {
        let found = (0..rows.len())
            .filter(|&r| !used[r])
            .find_map(|r| rows[r].iter().position(|&e| e & 1 == 1).map(|c| (r, c)));
        let Some((r, c)) = found else { break };
        // Units of Z4 are self-inverse.
        let inv = rows[r][c];
        for e in rows[r].iter_mut() {
            *e = (*e * inv) & 3;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let m = row[c];
            for (e, &p) in row.iter_mut().zip(&pivot_row) {
                *e = (*e + 4 * 4 - m * p) & 3;
            }
        }
        used[r] = true;
        pivots.push((r, c));
    }

    if let Some(r) = (0..rows.len()).find(|&r| !used[r] && rows[r].iter().any(|&e| e != 0)) {
        return Err(CodeError::NonFree { row: r });
    }

    let mut is_pivot_col = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot_col[c] = true;
    }
    let basis = (0..ncols)
        .filter(|&j| !is_pivot_col[j])
        .map(|j| {
            let mut v = vec![0u8; ncols];
            v[j] = 1;
            for &(r, c) in &pivots {
                v[c] = (4 - rows[r][j]) & 3;
            }
            v
        })
        .collect::<Vec<_>>();
    if basis.is_empty() {
        return Ok(Z4Matrix { rows: Vec::new(), ncols });
    }
    Ok(Z4Matrix::from_rows(basis))
}

/// All `4^k` Z4-combinations of the rows of a free generator matrix.
pub fn enumerate_code(g: &Z4Matrix) -> Vec<Z4Word> {
    let k = g.nrows();
    assert!(k <= 12, "refusing to enumerate 4^{k} codewords");
    let mut out = Vec::with_capacity(1 << (2 * k));
    for idx in 0u64..(1u64 << (2 * k)) {
        let mut w = vec![0u8; g.ncols];
        for (i, row) in g.rows.iter().enumerate() {
            let s = ((idx >> (2 * i)) & 3) as u8;
            if s == 0 {
                continue;
            }
            for (e, &x) in w.iter_mut().zip(row) {
                *e = (*e + s * x) & 3;
            }
        }
        out.push(Z4Word(w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_row() {
        let h = Z4Matrix::from_rows(vec![vec![1, 1, 1]]);
        let g = kernel_generator_matrix(&h).unwrap();
        assert_eq!(g.nrows(), 2);
        assert!(g.mul_transpose(&h).iter().flatten().all(|&e| e == 0));
    }

    #[test]
    fn non_free_kernel_detected() {
        let h = Z4Matrix::from_rows(vec![vec![2, 0]]);
        assert_eq!(kernel_generator_matrix(&h), Err(CodeError::NonFree { row: 0 }));
    }

    #[test]
    fn unit_three_pivot() {
        let h = Z4Matrix::from_rows(vec![vec![3, 2, 1], vec![0, 1, 1]]);
        let g = kernel_generator_matrix(&h).unwrap();
        assert_eq!(g.nrows(), 1);
        assert!(g.mul_transpose(&h).iter().flatten().all(|&e| e == 0));
        assert_eq!(enumerate_code(&g).len(), 4);
    }
}
