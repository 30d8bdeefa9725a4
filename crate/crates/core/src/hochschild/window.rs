use super::algebra::{Gen, GradedAlgebra};
use super::ops::{total_order, total_weight, Tensor};

/// Finite window of tensors, cut out by constraints on cyclically contiguous
/// blocks of factors. Blocks of a tensor are closed under the merges and
/// rotations performed by `b`, `b′`, `t`, so every window is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    /// Weight range of a single factor.
    pub factor_weights: (i64, i64),
    /// Order range of a single factor.
    pub factor_orders: (i64, i64),
    /// Every proper cyclic block has weight sum in this range.
    pub proper_block_weights: Option<(i64, i64)>,
    /// Every cyclic block, the full tensor included, has order sum at most this.
    pub block_order_max: Option<i64>,
    /// Tensors of total order `≤ floor` are zero in the quotient.
    pub order_floor: Option<i64>,
}

impl Window {
    /// All tensors of weight `w` in an algebra graded by `ℕ`-weights; the
    /// window for `ℚ[x]`.
    pub fn nonnegative(w: i64) -> Self {
        Window::poles(w, 0)
    }

    /// Laurent window with pole bound `l`: proper cyclic blocks have weight at
    /// least `min(w, 0) − l`.
    pub fn poles(w: i64, l: i64) -> Self {
        let floor = w.min(0) - l;
        Window {
            factor_weights: (floor, w - floor),
            factor_orders: (0, 0),
            proper_block_weights: Some((floor, w - floor)),
            block_order_max: None,
            order_floor: None,
        }
    }

    /// Window for finite-dimensional algebras concentrated in weight and order 0.
    pub fn finite() -> Self {
        Window { factor_weights: (0, 0), factor_orders: (0, 0), proper_block_weights: None, block_order_max: None, order_floor: None }
    }

    /// Symbol window: proper cyclic blocks have Fourier weight in `[−fourier,
    /// fourier]`, all cyclic blocks have order at most `top`, and tensors of
    /// total order `≤ floor` are divided out.
    pub fn symbol(fourier: i64, top: i64, floor: i64) -> Self {
        Window {
            factor_weights: (-fourier, fourier),
            factor_orders: (floor + 1 - top, top),
            proper_block_weights: Some((-fourier, fourier)),
            block_order_max: Some(top),
            order_floor: Some(floor),
        }
    }

    pub fn floor(&self) -> i64 {
        self.order_floor.unwrap_or(i64::MIN)
    }

    /// Whether `t` satisfies every constraint, total weight aside.
    pub fn admits(&self, t: &[Gen]) -> bool {
        let n = t.len();
        for g in t {
            if g.is_formal_unit() {
                continue;
            }
            if g.w < self.factor_weights.0 || g.w > self.factor_weights.1 || g.o < self.factor_orders.0 || g.o > self.factor_orders.1 {
                return false;
            }
        }
        for len in 1..=n {
            for start in 0..n {
                if len == n && start > 0 {
                    break;
                }
                let (mut w, mut o) = (0, 0);
                for i in 0..len {
                    let g = &t[(start + i) % n];
                    w += g.w;
                    o += g.o;
                }
                if len < n {
                    if let Some((lo, hi)) = self.proper_block_weights {
                        if w < lo || w > hi {
                            return false;
                        }
                    }
                }
                if let Some(top) = self.block_order_max {
                    if o > top {
                        return false;
                    }
                }
            }
        }
        total_order(t) > self.floor()
    }

    /// Basis tensors of degree `q` and total weight `w`, sorted by total order
    /// and then lexicographically.
    pub fn tensors<A: GradedAlgebra + ?Sized>(&self, alg: &A, q: usize, w: i64) -> Vec<Tensor> {
        let factors = alg.basis(self.factor_weights, self.factor_orders);
        let n = q + 1;
        let (wmin, wmax) = match (factors.iter().map(|g| g.w).min(), factors.iter().map(|g| g.w).max()) {
            (Some(a), Some(b)) => (a, b),
            _ => return vec![],
        };
        let mut out = Vec::new();
        let mut cur: Vec<Gen> = Vec::with_capacity(n);
        self.extend(&factors, n, w, (wmin, wmax), &mut cur, &mut out);
        out.sort_by(|a, b| total_order(a).cmp(&total_order(b)).then_with(|| a.cmp(b)));
        out
    }

    fn extend(&self, factors: &[Gen], n: usize, w: i64, wr: (i64, i64), cur: &mut Vec<Gen>, out: &mut Vec<Tensor>) {
        if cur.len() == n {
            if total_weight(cur) == w && self.admits(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let left = (n - cur.len() - 1) as i64;
        let sofar = total_weight(cur);
        for g in factors {
            let rest = w - sofar - g.w;
            if rest < left * wr.0 || rest > left * wr.1 {
                continue;
            }
            cur.push(*g);
            if self.prefix_ok(cur, n) {
                self.extend(factors, n, w, wr, cur, out);
            }
            cur.pop();
        }
    }

    /// Checks the non-wrapping blocks that end at the last factor of `cur`.
    fn prefix_ok(&self, cur: &[Gen], n: usize) -> bool {
        let end = cur.len();
        let (mut w, mut o) = (0, 0);
        for start in (0..end).rev() {
            w += cur[start].w;
            o += cur[start].o;
            let len = end - start;
            if len < n {
                if let Some((lo, hi)) = self.proper_block_weights {
                    if w < lo || w > hi {
                        return false;
                    }
                }
            }
            if let Some(top) = self.block_order_max {
                if o > top {
                    return false;
                }
            }
        }
        true
    }
}
