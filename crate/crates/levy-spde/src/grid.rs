//! Rectangular lattices in 1–3 dimensions. Points are stored in lexicographic
//! order; every point carries a cell of volume h1·…·hd around it, which is
//! what the noise simulator and all grid quadratures use.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid dimension must be 1–3, got {0}")]
    Dimension(usize),
    #[error("axis {axis}: need at least 2 points, got {n}")]
    Resolution { axis: usize, n: usize },
    #[error("axis {axis}: empty box [{lo}, {hi}]")]
    EmptyBox { axis: usize, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    dim: usize,
    lo: [f64; 3],
    hi: [f64; 3],
    n: [usize; 3],
}

impl GridSpec {
    pub fn new(boxes: &[(f64, f64)], resolution: &[usize]) -> Result<Self, GridError> {
        let dim = boxes.len();
        if dim == 0 || dim > 3 || resolution.len() != dim {
            return Err(GridError::Dimension(dim));
        }
        let mut lo = [0.0; 3];
        let mut hi = [1.0; 3];
        let mut n = [1usize; 3];
        for axis in 0..dim {
            if resolution[axis] < 2 {
                return Err(GridError::Resolution {
                    axis,
                    n: resolution[axis],
                });
            }
            if !(boxes[axis].1 > boxes[axis].0) {
                return Err(GridError::EmptyBox {
                    axis,
                    lo: boxes[axis].0,
                    hi: boxes[axis].1,
                });
            }
            lo[axis] = boxes[axis].0;
            hi[axis] = boxes[axis].1;
            n[axis] = resolution[axis];
        }
        Ok(GridSpec { dim, lo, hi, n })
    }

    /// Uniform cube [lo, hi]^d with n points per axis.
    pub fn cube(dim: usize, lo: f64, hi: f64, n: usize) -> Result<Self, GridError> {
        let boxes: Vec<(f64, f64)> = (0..dim).map(|_| (lo, hi)).collect();
        let res: Vec<usize> = (0..dim).map(|_| n).collect();
        GridSpec::new(&boxes, &res)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> [usize; 3] {
        self.n
    }

    pub fn bounds(&self, axis: usize) -> (f64, f64) {
        (self.lo[axis], self.hi[axis])
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.n[axis] - 1) as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim).map(|a| self.spacing(a)).product()
    }

    pub fn coords(&self, flat: usize) -> [usize; 3] {
        let k = flat % self.n[2];
        let rest = flat / self.n[2];
        let j = rest % self.n[1];
        let i = rest / self.n[1];
        [i, j, k]
    }

    pub fn flat(&self, c: [usize; 3]) -> usize {
        (c[0] * self.n[1] + c[1]) * self.n[2] + c[2]
    }

    pub fn position(&self, flat: usize) -> [f64; 3] {
        let c = self.coords(flat);
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.lo[a] + c[a] as f64 * self.spacing(a);
        }
        x
    }

    pub fn is_boundary(&self, flat: usize) -> bool {
        let c = self.coords(flat);
        (0..self.dim).any(|a| c[a] == 0 || c[a] == self.n[a] - 1)
    }

    /// Flat index of the grid point nearest to x (clamped to the box).
    pub fn nearest(&self, x: &[f64]) -> usize {
        let mut c = [0usize; 3];
        for a in 0..self.dim {
            let h = self.spacing(a);
            let t = ((x[a] - self.lo[a]) / h).round();
            c[a] = t.clamp(0.0, (self.n[a] - 1) as f64) as usize;
        }
        self.flat(c)
    }

    /// Evaluate f at every point, lexicographic order.
    pub fn sample<F: Fn(&[f64; 3]) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.len()).map(|i| f(&self.position(i))).collect()
    }

    /// Σ_points f(x)·g(x)·cell_volume, the grid quadrature of ∫ f g.
    pub fn dot(&self, f: &[f64], g: &[f64]) -> f64 {
        assert_eq!(f.len(), self.len());
        assert_eq!(g.len(), self.len());
        let v = self.cell_volume();
        f.iter().zip(g).map(|(a, b)| a * b).sum::<f64>() * v
    }

    pub fn euclid(a: &[f64; 3], b: &[f64; 3]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}
