use super::ModelError;

/// Discrete solution with `n` components on `J` cells.
///
/// Stored cell-major so that `cell(j)` is the vector `u_j ∈ ℝⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    n: usize,
    data: Vec<f64>,
}

impl VectorField {
    pub fn zeros(n: usize, cells: usize) -> Self {
        assert!(n >= 1, "a vector field needs at least one component");
        Self { n, data: vec![0.0; n * cells] }
    }

    /// Builds a field from per-cell vectors; every entry must be finite.
    pub fn from_cells<V: AsRef<[f64]>>(cells: &[V]) -> Result<Self, ModelError> {
        let n = cells.first().map(|c| c.as_ref().len()).unwrap_or(0);
        if n == 0 {
            return Err(ModelError::Shape("field needs at least one cell and one component".into()));
        }
        let mut data = Vec::with_capacity(n * cells.len());
        for (j, c) in cells.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != n {
                return Err(ModelError::Shape(format!("cell {j} has {} components, expected {n}", c.len())));
            }
            data.extend_from_slice(c);
        }
        Self::from_flat(n, data)
    }

    /// Cell-major flat storage: entry `(i, j)` at `j * n + i`.
    pub fn from_flat(n: usize, data: Vec<f64>) -> Result<Self, ModelError> {
        if n == 0 || data.is_empty() || data.len() % n != 0 {
            return Err(ModelError::Shape(format!("{} values cannot form cells of {n} components", data.len())));
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFinite { component: k % n, cell: k / n });
        }
        Ok(Self { n, data })
    }

    /// Builds a field by applying `f` to every cell of another field.
    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert!(n > 0 && data.len() % n == 0);
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.data.len() / self.n
    }

    #[inline]
    pub fn cell(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    #[inline]
    pub fn cell_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn cells(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.n)
    }

    /// `u_j^{(i)}`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.n + i]
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn component(&self, i: usize) -> Vec<f64> {
        self.cells().map(|c| c[i]).collect()
    }

    pub fn radius(&self, j: usize) -> f64 {
        norm(self.cell(j))
    }

    pub fn radii(&self) -> Vec<f64> {
        self.cells().map(norm).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.cells().map(norm).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// First non-finite entry as `(component, cell)`.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|v| !v.is_finite()).map(|k| (k % self.n, k / self.n))
    }

    /// `sqrt(dx Σ_j |u_j|²)`.
    pub fn l2_norm(&self, dx: f64) -> f64 {
        (dx * self.data.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// Per-component `dx Σ_j u_j^{(i)}`.
    pub fn mass(&self, dx: f64) -> Vec<f64> {
        let mut m = vec![0.0; self.n];
        for c in self.cells() {
            for (acc, v) in m.iter_mut().zip(c) {
                *acc += v;
            }
        }
        m.iter_mut().for_each(|v| *v *= dx);
        m
    }

    /// `Σ_j |u_j - u_{j-1}|` over interior interfaces, per component.
    pub fn total_variation(&self) -> Vec<f64> {
        let mut tv = vec![0.0; self.n];
        for j in 1..self.num_cells() {
            for (i, acc) in tv.iter_mut().enumerate() {
                *acc += (self.get(i, j) - self.get(i, j - 1)).abs();
            }
        }
        tv
    }

    /// `α self + β other`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self, ModelError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<(), ModelError> {
        if self.n != other.n || self.data.len() != other.data.len() {
            return Err(ModelError::Shape(format!(
                "field shapes differ: {}x{} vs {}x{}",
                self.n,
                self.num_cells(),
                other.n,
                other.num_cells()
            )));
        }
        Ok(())
    }
}

/// Euclidean norm.
#[inline]
pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σ_j |r_j - r_{j-1}|` for a scalar lattice function.
pub fn scalar_total_variation(r: &[f64]) -> f64 {
    r.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}
