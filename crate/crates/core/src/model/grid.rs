use super::ModelError;

/// Uniform cell-centred grid on `[x_min, x_max)` with `num_cells` cells.
///
/// Cell `j` is `[x_min + j dx, x_min + (j+1) dx)` with centre
/// `x_min + (j + 1/2) dx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    num_cells: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, num_cells: usize) -> Result<Self, ModelError> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(ModelError::InvalidParameter(format!(
                "grid bounds must be finite with x_max > x_min, got [{x_min}, {x_max}]"
            )));
        }
        if num_cells == 0 {
            return Err(ModelError::InvalidParameter("grid needs at least one cell".into()));
        }
        Ok(Self { x_min, x_max, num_cells })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.num_cells as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    /// Left and right edges of cell `j`.
    pub fn cell_bounds(&self, j: usize) -> (f64, f64) {
        let dx = self.dx();
        (self.x_min + j as f64 * dx, self.x_min + (j + 1) as f64 * dx)
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.num_cells).map(move |j| self.center(j))
    }
}
