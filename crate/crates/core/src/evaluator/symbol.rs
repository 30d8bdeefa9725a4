use num_traits::One;

use crate::error::{Error, Result};
use crate::hochschild::{Gen, GradedAlgebra, Window};
use crate::qlinalg::{q_int, Q};

/// Connected component of `T*S¹ ∖ 0`: `ξ > 0` or `ξ < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub const BOTH: [Sheet; 2] = [Sheet::Plus, Sheet::Minus];

    pub fn tag(self) -> u32 {
        match self {
            Sheet::Plus => 0,
            Sheet::Minus => 1,
        }
    }

    fn sign(self) -> i64 {
        match self {
            Sheet::Plus => 1,
            Sheet::Minus => -1,
        }
    }
}

/// Complete symbols on one sheet of `T*S¹ ∖ 0`, basis `e^{imx}|ξ|^j`
/// (Fourier weight `m`, order `j`), composed by
/// `a ∘ b = Σ_k (−i)^k/k! ∂_ξ^k a ∂_x^k b`.
///
/// For `e^{im₁x}|ξ|^{j₁} ∘ e^{im₂x}|ξ|^{j₂}` the `k`-th term is
/// `binom(j₁, k) (±m₂)^k e^{i(m₁+m₂)x}|ξ|^{j₁+j₂−k}`, with `binom` the
/// generalized binomial coefficient and the sign that of the sheet. The
/// series is cut below `min_order`. With `graded` set only the `k = 0` term
/// is kept, giving the commutative algebra `Gr`.
#[derive(Clone, Debug)]
pub struct SymbolModel {
    pub sheet: Sheet,
    pub min_order: i64,
    pub graded: bool,
}

/// `j(j−1)…(j−k+1)/k!` for any integer `j`.
pub fn binom_gen(j: i64, k: i64) -> Q {
    let mut c = q_int(1);
    for i in 0..k {
        c = c * q_int(j - i) / q_int(i + 1);
    }
    c
}

impl SymbolModel {
    pub fn new(sheet: Sheet, min_order: i64) -> Self {
        SymbolModel { sheet, min_order, graded: false }
    }

    pub fn associated_graded(&self) -> Self {
        SymbolModel { graded: true, ..self.clone() }
    }

    /// Model whose products are exact on tensors of `window`.
    pub fn for_window(sheet: Sheet, window: &Window) -> Self {
        SymbolModel::new(sheet, window.factor_orders.0)
    }

    pub fn gen(&self, m: i64, j: i64) -> Gen {
        Gen::new(m, j, self.sheet.tag())
    }
}

impl GradedAlgebra for SymbolModel {
    type F = Q;

    fn name(&self) -> String {
        format!("{}symbols on the {:?} sheet", if self.graded { "graded " } else { "" }, self.sheet)
    }

    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen> {
        let mut out = Vec::new();
        for m in w.0..=w.1 {
            for j in o.0.max(self.min_order)..=o.1 {
                out.push(self.gen(m, j));
            }
        }
        out
    }

    fn mul(&self, a: &Gen, b: &Gen) -> Vec<(Gen, Q)> {
        if a.tag != self.sheet.tag() || b.tag != self.sheet.tag() {
            return vec![];
        }
        let m2 = b.w * self.sheet.sign();
        let mut out = Vec::new();
        let mut k = 0i64;
        loop {
            let o = a.o + b.o - k;
            if o < self.min_order {
                break;
            }
            if k > 0 && (m2 == 0 || (a.o >= 0 && k > a.o) || self.graded) {
                break;
            }
            let mut c = binom_gen(a.o, k);
            for _ in 0..k {
                c *= q_int(m2);
            }
            if c != q_int(0) {
                out.push((self.gen(a.w + b.w, o), c));
            }
            k += 1;
        }
        out
    }

    fn unit(&self) -> Option<Gen> {
        Some(self.gen(0, 0))
    }

    fn is_commutative(&self) -> bool {
        self.graded
    }
}

/// Builds the model for `window`, refusing windows without a single chain.
pub fn build_symbol_model(sheet: Sheet, window: &Window) -> Result<SymbolModel> {
    if window.factor_orders.0 > window.factor_orders.1 || window.factor_weights.0 > window.factor_weights.1 {
        return Err(Error::input("symbol window is empty"));
    }
    let model = SymbolModel::for_window(sheet, window);
    debug_assert!(model.mul(&model.gen(0, 0), &model.gen(0, 0)) == vec![(model.gen(0, 0), Q::one())]);
    Ok(model)
}
