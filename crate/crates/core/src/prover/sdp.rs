//! A small log-barrier interior-point solver for the numeric search stage.
//!
//! Problem: optimise `c` subject to
//! `g_H = s·(c − e_H) − Σ_b ⟨Q_b, M_b^H⟩ ≥ 0` for every constraint `H`,
//! `Q_b ⪰ 0` and `tr Q_b ≤ R`, where `s = +1` minimises `c` and `s = −1`
//! maximises it. Results are untrusted and only seed exact verification.

use nalgebra::{DMatrix, DVector};

pub struct SdpConstraint {
    pub e: f64,
    /// One symmetric matrix per block.
    pub mats: Vec<DMatrix<f64>>,
}

pub struct SdpProblem {
    pub sign: f64,
    pub dims: Vec<usize>,
    pub constraints: Vec<SdpConstraint>,
    pub trace_bound: f64,
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub c: f64,
    pub q: Vec<DMatrix<f64>>,
    pub newton_steps: usize,
}

/// Position of each upper-triangular entry `(i, j)` in the variable vector.
struct Layout {
    offsets: Vec<usize>,
    len: usize,
}

impl Layout {
    fn new(dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut len = 1;
        for &m in dims {
            offsets.push(len);
            len += m * (m + 1) / 2;
        }
        Layout { offsets, len }
    }

    fn var(&self, b: usize, m: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.offsets[b] + i * m - i * (i + 1) / 2 + j
    }
}

struct Barrier<'a> {
    p: &'a SdpProblem,
    layout: Layout,
    /// Linear barrier rows `(a, shift)` with `g = a·x − shift`.
    rows: Vec<(DVector<f64>, f64)>,
}

impl<'a> Barrier<'a> {
    fn new(p: &'a SdpProblem) -> Self {
        let layout = Layout::new(&p.dims);
        let mut rows = Vec::new();
        for con in &p.constraints {
            let mut a = DVector::zeros(layout.len);
            a[0] = p.sign;
            for (b, &m) in p.dims.iter().enumerate() {
                for i in 0..m {
                    for j in i..m {
                        let w = if i == j { 1.0 } else { 2.0 };
                        a[layout.var(b, m, i, j)] -= w * con.mats[b][(i, j)];
                    }
                }
            }
            rows.push((a, p.sign * con.e));
        }
        for (b, &m) in p.dims.iter().enumerate() {
            let mut a = DVector::zeros(layout.len);
            for i in 0..m {
                a[layout.var(b, m, i, i)] = -1.0;
            }
            rows.push((a, -p.trace_bound));
        }
        Barrier { p, layout, rows }
    }

    fn block(&self, x: &DVector<f64>, b: usize) -> DMatrix<f64> {
        let m = self.p.dims[b];
        DMatrix::from_fn(m, m, |i, j| x[self.layout.var(b, m, i, j)])
    }

    /// Barrier value, or `None` outside the interior.
    fn value(&self, x: &DVector<f64>, t: f64) -> Option<f64> {
        let mut f = t * self.p.sign * x[0];
        for (a, shift) in &self.rows {
            let g = a.dot(x) - shift;
            if g <= 0.0 {
                return None;
            }
            f -= g.ln();
        }
        for b in 0..self.p.dims.len() {
            let chol = self.block(x, b).cholesky()?;
            let logdet: f64 = chol.l().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
            if !logdet.is_finite() {
                return None;
            }
            f -= logdet;
        }
        Some(f)
    }

    fn grad_hess(&self, x: &DVector<f64>, t: f64) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.layout.len;
        let mut grad = DVector::zeros(n);
        let mut hess = DMatrix::zeros(n, n);
        grad[0] = t * self.p.sign;
        for (a, shift) in &self.rows {
            let g = a.dot(x) - shift;
            grad -= a / g;
            hess += (a * a.transpose()) / (g * g);
        }
        for (b, &m) in self.p.dims.iter().enumerate() {
            let s = self.block(x, b).try_inverse().expect("interior point has invertible blocks");
            // A_k = S E_k for each entry variable of the block
            let mut vars = Vec::new();
            let mut prods = Vec::new();
            for i in 0..m {
                for j in i..m {
                    let mut e = DMatrix::zeros(m, m);
                    e[(i, j)] = 1.0;
                    e[(j, i)] = 1.0;
                    vars.push(self.layout.var(b, m, i, j));
                    prods.push(&s * e);
                }
            }
            for (k, ak) in prods.iter().enumerate() {
                grad[vars[k]] -= ak.trace();
                for (l, al) in prods.iter().enumerate() {
                    hess[(vars[k], vars[l])] += (ak * al).trace();
                }
            }
        }
        (grad, hess)
    }
}

/// Runs the barrier method; `None` if the budget of Newton steps runs out
/// before the duality-gap estimate drops below `gap`.
pub fn solve(p: &SdpProblem, max_newton: usize, gap: f64) -> Option<SdpSolution> {
    let bar = Barrier::new(p);
    let n = bar.layout.len;
    let mut x = DVector::zeros(n);
    for (b, &m) in p.dims.iter().enumerate() {
        let start = (p.trace_bound / (4.0 * m.max(1) as f64)).min(0.5);
        for i in 0..m {
            x[bar.layout.var(b, m, i, i)] = start;
        }
    }
    // choose c so that every linear constraint is slack by 1
    let mut need = f64::NEG_INFINITY;
    for (a, shift) in bar.rows.iter().take(p.constraints.len()) {
        let rest = a.dot(&x) - shift;
        need = need.max(1.0 - rest);
    }
    x[0] = if p.constraints.is_empty() { 0.0 } else { p.sign * need };

    let nu = (bar.rows.len() + p.dims.iter().sum::<usize>()) as f64;
    let mut t = 1.0;
    let mut steps = 0;
    loop {
        loop {
            if steps >= max_newton {
                return None;
            }
            steps += 1;
            let (grad, hess) = bar.grad_hess(&x, t);
            let dx = match hess.clone().cholesky() {
                Some(ch) => ch.solve(&(-&grad)),
                None => hess.lu().solve(&(-&grad))?,
            };
            let decrement = -grad.dot(&dx);
            if !decrement.is_finite() {
                return None;
            }
            if decrement / 2.0 < 1e-9 {
                break;
            }
            let f0 = bar.value(&x, t)?;
            let mut alpha = 1.0;
            let mut moved = false;
            for _ in 0..80 {
                let trial = &x + &dx * alpha;
                if let Some(f1) = bar.value(&trial, t) {
                    if f1 <= f0 - 0.25 * alpha * decrement {
                        // a step lost in rounding counts as no move
                        moved = trial != x;
                        x = trial;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if nu / t < gap {
            break;
        }
        t *= 10.0;
    }
    Some(SdpSolution {
        c: x[0],
        q: (0..p.dims.len()).map(|b| bar.block(&x, b)).collect(),
        newton_steps: steps,
    })
}
