use serde::Serialize;

use super::{BigraphInstance, InstanceError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceStats {
    pub n_cols: usize,
    pub m_rows: usize,
    pub num_edges: usize,
    /// `num_edges / (n_cols * m_rows)`
    pub m_dens: f64,
    /// Maximum column degree.
    pub m_cd: usize,
}

/// Binate literals count as edges, in both the density and the degrees.
pub fn compute_stats(instance: &BigraphInstance) -> InstanceStats {
    let num_edges = instance.num_edges();
    let n_cols = instance.n_cols();
    let m_rows = instance.m_rows();
    let m_cd = instance.column_degrees().into_iter().max().unwrap_or(0);
    InstanceStats {
        n_cols,
        m_rows,
        num_edges,
        m_dens: num_edges as f64 / (n_cols as f64 * m_rows as f64),
        m_cd,
    }
}

/// Dense row-major 0/1 view of a unate instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    m_rows: usize,
    n_cols: usize,
    cells: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn m_rows(&self) -> usize {
        self.m_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n_cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.n_cols];
        for row in self.cells.chunks_exact(self.n_cols) {
            for (s, &v) in sums.iter_mut().zip(row) {
                *s += v as usize;
            }
        }
        sums
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.cells
            .chunks_exact(self.n_cols)
            .map(|row| row.iter().map(|&v| v as usize).sum())
            .collect()
    }

    pub fn to_nested(&self) -> Vec<Vec<u8>> {
        self.cells
            .chunks_exact(self.n_cols)
            .map(<[u8]>::to_vec)
            .collect()
    }
}

pub fn to_incidence_matrix(instance: &BigraphInstance) -> Result<IncidenceMatrix, InstanceError> {
    instance.require_unate()?;
    let (m, n) = (instance.m_rows(), instance.n_cols());
    let mut cells = vec![0u8; m * n];
    for (r, clause) in instance.rows().iter().enumerate() {
        for &lit in clause {
            cells[r * n + lit as usize - 1] = 1;
        }
    }
    Ok(IncidenceMatrix {
        m_rows: m,
        n_cols: n,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let inst = BigraphInstance::unit("one", 1, vec![vec![1]]).unwrap();
        let s = compute_stats(&inst);
        assert_eq!(s.m_dens, 1.0);
        assert_eq!(s.m_cd, 1);
        assert_eq!(s.num_edges, 1);
        assert_eq!(to_incidence_matrix(&inst).unwrap().to_nested(), vec![vec![1]]);
    }

    #[test]
    fn binate_literals_count_as_edges_but_block_matrix() {
        let inst = BigraphInstance::unit("b", 2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
        let s = compute_stats(&inst);
        assert_eq!(s.num_edges, 4);
        assert_eq!(s.m_cd, 2);
        assert!(matches!(
            to_incidence_matrix(&inst),
            Err(InstanceError::UnateRequired { .. })
        ));
    }

    #[test]
    fn matrix_sums_match_degrees() {
        let inst =
            BigraphInstance::unit("t", 3, vec![vec![1, 2], vec![2, 3], vec![2]]).unwrap();
        let mat = to_incidence_matrix(&inst).unwrap();
        assert_eq!(mat.col_sums(), vec![1, 3, 1]);
        assert_eq!(mat.row_sums(), vec![2, 2, 1]);
        assert_eq!(mat.row(1), &[0, 1, 1]);
        assert_eq!(mat.get(2, 1), 1);
    }
}
