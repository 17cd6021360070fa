/// Dense matrix over F2 with bit-packed rows, sized for the small linear
/// systems that show up in graded rank and membership computations.
#[derive(Debug, Clone)]
pub struct F2Matrix {
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn new(ncols: usize) -> Self {
        F2Matrix {
            ncols,
            rows: Vec::new(),
        }
    }

    fn words(&self) -> usize {
        self.ncols.div_ceil(64)
    }

    pub fn push_empty_row(&mut self) {
        let w = self.words();
        self.rows.push(vec![0; w]);
    }

    pub fn push_row(&mut self, cols: impl IntoIterator<Item = usize>) {
        self.push_empty_row();
        let r = self.rows.len() - 1;
        for c in cols {
            self.set(r, c);
        }
    }

    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(col < self.ncols);
        self.rows[row][col / 64] ^= 1 << (col % 64);
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row][col / 64] >> (col % 64) & 1 == 1
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(pivot) = (rank..self.rows.len()).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.rows.swap(rank, pivot);
            let prow = self.rows[rank].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != rank && row[col / 64] >> (col % 64) & 1 == 1 {
                    for (w, p) in row.iter_mut().zip(&prow) {
                        *w ^= p;
                    }
                }
            }
            rank += 1;
            if rank == self.rows.len() {
                break;
            }
        }
        rank
    }

    pub fn rank(mut self) -> usize {
        self.eliminate()
    }

    /// For a system whose last column holds the right-hand side: whether
    /// A x = b has a solution, i.e. rank [A] = rank [A | b].
    pub fn solvable_with_last_column_as_rhs(mut self) -> bool {
        assert!(self.ncols >= 1);
        self.eliminate();
        let rhs = self.ncols - 1;
        // Inconsistent iff some reduced row is exactly (0 ... 0 | 1).
        !self.rows.iter().enumerate().any(|(r, _)| {
            self.get(r, rhs) && (0..rhs).all(|c| !self.get(r, c))
        })
    }
}
