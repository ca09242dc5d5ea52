//! The deficiency subspaces `K± = ker(±i - H*)` and two independent routes
//! from `U` to boundary data.
//!
//! `K+` is spanned by `L+`, `R+` and `K-` by `L-`, `R-`:
//!
//! ```text
//! L±(x) = N e^{(1∓i)x/√2}    for x < -Λ,   0 for x > +Λ
//! R±(x) = N e^{(-1±i)x/√2}   for x > +Λ,   0 for x < -Λ
//! N     = 2^{1/4} e^{Λ/√2}
//! ```
//!
//! Every function in the domain of the extension `H_U` has boundary values
//! equal to those of `c_L L+ + c_R R+ + c_L U L+ + c_R U R+`, where
//! `U L+ = u₁₁L- + u₁₂R-` and `U R+ = u₂₁L- + u₂₂R-`.
//!
//! [`domain_sample`] evaluates that sum function by function.
//! [`oracle_boundary_matrix`] instead forms the matrices `A±` mapping
//! `(c_L, c_R)` to the boundary vectors and returns `A₊A₋⁻¹`. Neither route
//! uses the closed-form α map, so both can check it.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{BoundaryData, JunctionGeometry, QuaternionDecomposition};
use crate::matrix::{C2Matrix, UnitaryU2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Island {
    /// `(-∞, -Λ)`
    Left,
    /// `(+Λ, +∞)`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeficiencyTag {
    LPlus,
    LMinus,
    RPlus,
    RMinus,
}

impl DeficiencyTag {
    pub const ALL: [DeficiencyTag; 4] = [Self::LPlus, Self::LMinus, Self::RPlus, Self::RMinus];

    pub fn island(self) -> Island {
        match self {
            Self::LPlus | Self::LMinus => Island::Left,
            Self::RPlus | Self::RMinus => Island::Right,
        }
    }

    /// `κ` in `f(x) = N e^{κx}`, so that `f' = κf`.
    pub fn rate(self) -> Complex64 {
        let s = FRAC_1_SQRT_2;
        match self {
            Self::LPlus => Complex64::new(s, -s),
            Self::LMinus => Complex64::new(s, s),
            Self::RPlus => Complex64::new(-s, s),
            Self::RMinus => Complex64::new(-s, -s),
        }
    }

    /// `±i`: `H* f = -f'' = eigenvalue · f`.
    pub fn eigenvalue(self) -> Complex64 {
        match self {
            Self::LPlus | Self::RPlus => Complex64::i(),
            Self::LMinus | Self::RMinus => -Complex64::i(),
        }
    }
}

/// `2^{1/4} e^{Λ/√2}`
pub fn normalization(geom: &JunctionGeometry) -> f64 {
    2f64.powf(0.25) * (geom.lambda() * FRAC_1_SQRT_2).exp()
}

/// `R₊(+Λ) = N e^{(-1+i)Λ/√2}`. Every deficiency function's boundary value
/// is this or its conjugate.
pub fn r_plus_boundary(geom: &JunctionGeometry) -> Complex64 {
    let l = geom.lambda() * FRAC_1_SQRT_2;
    normalization(geom) * Complex64::new(-l, l).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficiencyFunction {
    pub tag: DeficiencyTag,
    pub geom: JunctionGeometry,
}

impl DeficiencyFunction {
    pub fn new(tag: DeficiencyTag, geom: JunctionGeometry) -> Self {
        Self { tag, geom }
    }

    fn supports(&self, x: f64) -> bool {
        let lambda = self.geom.lambda();
        match self.tag.island() {
            Island::Left => x <= -lambda,
            Island::Right => x >= lambda,
        }
    }

    /// Value at `x ∈ Ω_Λ`; `0` on the opposite island. At `x = ±Λ` this is
    /// the one-sided limit from the supported side.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let lambda = self.geom.lambda();
        if x.abs() < lambda {
            return Err(Error::InsideJunction { x, lambda });
        }
        if !self.supports(x) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(normalization(&self.geom) * (self.tag.rate() * x).exp())
    }

    pub fn derivative(&self, x: f64) -> Result<Complex64> {
        Ok(self.tag.rate() * self.eval(x)?)
    }

    /// Limit at the island's own endpoint.
    pub fn boundary_value(&self) -> Complex64 {
        let endpoint = match self.tag.island() {
            Island::Left => -self.geom.lambda(),
            Island::Right => self.geom.lambda(),
        };
        normalization(&self.geom) * (self.tag.rate() * endpoint).exp()
    }

    /// `∫|f|² = N² e^{-√2Λ}/√2` in closed form.
    pub fn norm_sqr(&self) -> f64 {
        let n = normalization(&self.geom);
        n * n * (-SQRT_2 * self.geom.lambda()).exp() / SQRT_2
    }
}

/// `c_L L+ + c_R R+ + c_L U L+ + c_R U R+` on `Ω_Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainFunction {
    pub u: UnitaryU2,
    pub geom: JunctionGeometry,
    pub c_left: Complex64,
    pub c_right: Complex64,
}

impl DomainFunction {
    pub fn new(u: UnitaryU2, geom: JunctionGeometry, c_left: Complex64, c_right: Complex64) -> Self {
        Self {
            u,
            geom,
            c_left,
            c_right,
        }
    }

    /// Expansion coefficients over the four deficiency functions.
    fn terms(&self) -> [(DeficiencyTag, Complex64); 4] {
        let m = self.u.matrix();
        let (cl, cr) = (self.c_left, self.c_right);
        [
            (DeficiencyTag::LPlus, cl),
            (DeficiencyTag::RPlus, cr),
            (DeficiencyTag::LMinus, cl * m.m11 + cr * m.m21),
            (DeficiencyTag::RMinus, cl * m.m12 + cr * m.m22),
        ]
    }

    fn sum_on(
        &self,
        island: Island,
        x: f64,
        f: impl Fn(&DeficiencyFunction, f64) -> Result<Complex64>,
    ) -> Result<Complex64> {
        let lambda = self.geom.lambda();
        let on_island = match island {
            Island::Left => x <= -lambda,
            Island::Right => x >= lambda,
        };
        if !on_island {
            return Err(Error::InsideJunction { x, lambda });
        }
        self.terms()
            .iter()
            .filter(|(tag, _)| tag.island() == island)
            .try_fold(Complex64::new(0.0, 0.0), |acc, &(tag, coeff)| {
                Ok(acc + coeff * f(&DeficiencyFunction::new(tag, self.geom), x)?)
            })
    }

    /// `ψ(x)` for `x` in the closure of `island`.
    pub fn value_on(&self, island: Island, x: f64) -> Result<Complex64> {
        self.sum_on(island, x, DeficiencyFunction::eval)
    }

    /// `ψ'(x)` from the analytic derivative of each basis function.
    pub fn derivative_on(&self, island: Island, x: f64) -> Result<Complex64> {
        self.sum_on(island, x, DeficiencyFunction::derivative)
    }

    pub fn boundary_data(&self) -> BoundaryData {
        let lambda = self.geom.lambda();
        let eval = |island, x, deriv: bool| {
            let r = if deriv {
                self.derivative_on(island, x)
            } else {
                self.value_on(island, x)
            };
            r.expect("endpoints lie on their islands")
        };
        BoundaryData::new(
            eval(Island::Right, lambda, false),
            eval(Island::Right, lambda, true),
            eval(Island::Left, -lambda, false),
            eval(Island::Left, -lambda, true),
        )
    }
}

/// Boundary values of the domain function with coefficients `(c_L, c_R)`,
/// evaluated directly from the deficiency basis.
pub fn domain_sample(
    u: &UnitaryU2,
    geom: &JunctionGeometry,
    c_left: Complex64,
    c_right: Complex64,
) -> BoundaryData {
    DomainFunction::new(*u, *geom, c_left, c_right).boundary_data()
}

/// `(ψ(+Λ), ψ'(+Λ))ᵀ = A₊ (c_L, c_R)ᵀ` and `(ψ(-Λ), ψ'(-Λ))ᵀ = A₋ (c_L, c_R)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryMatrixPair {
    pub a_plus: C2Matrix,
    pub a_minus: C2Matrix,
}

impl BoundaryMatrixPair {
    /// `det A₋ = i√2 |R₊(+Λ)|² γ₃γ₂`.
    pub fn closed_form_det_a_minus(d: &QuaternionDecomposition, geom: &JunctionGeometry) -> Complex64 {
        Complex64::new(0.0, SQRT_2) * r_plus_boundary(geom).norm_sqr() * d.gamma3 * d.gamma2
    }
}

/// With `R = R₊(+Λ)`, `η = e^{iπ/4}`:
///
/// ```text
/// A₊ = [[ -γ₃γ₂* R*,   R + γ₃γ₁* R*         ],
///       [ ηγ₃γ₂* R*,  -(η* R + ηγ₃γ₁* R*)   ]]
/// A₋ = [[ R + γ₃γ₁ R*,        γ₃γ₂ R*  ],
///       [ η* R + ηγ₃γ₁ R*,    ηγ₃γ₂ R* ]]
/// ```
pub fn boundary_matrices(d: &QuaternionDecomposition, geom: &JunctionGeometry) -> BoundaryMatrixPair {
    let r = r_plus_boundary(geom);
    let rc = r.conj();
    let eta = Complex64::cis(FRAC_PI_4);
    let (g1, g2, g3) = (d.gamma1, d.gamma2, d.gamma3);

    let a_plus = C2Matrix::new(
        -g3 * g2.conj() * rc,
        r + g3 * g1.conj() * rc,
        eta * g3 * g2.conj() * rc,
        -(eta.conj() * r + eta * g3 * g1.conj() * rc),
    );
    let a_minus = C2Matrix::new(
        r + g3 * g1 * rc,
        g3 * g2 * rc,
        eta.conj() * r + eta * g3 * g1 * rc,
        eta * g3 * g2 * rc,
    );
    BoundaryMatrixPair { a_plus, a_minus }
}

/// Relative size of `det A₋` (against `|R₊(+Λ)|²`) below which the pair is
/// treated as singular.
const SINGULAR_DET_REL: f64 = 1e-14;

/// `B_α = A₊A₋⁻¹`, built without the closed-form α map.
pub fn oracle_boundary_matrix(d: &QuaternionDecomposition, geom: &JunctionGeometry) -> Result<C2Matrix> {
    let pair = boundary_matrices(d, geom);
    let det = pair.a_minus.det();
    if !(det.norm() > SINGULAR_DET_REL * r_plus_boundary(geom).norm_sqr()) {
        return Err(Error::SingularBoundaryMatrix);
    }
    let inv = pair.a_minus.inverse().ok_or(Error::SingularBoundaryMatrix)?;
    Ok(pair.a_plus * inv)
}
