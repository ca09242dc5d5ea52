use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary: max |U†U - I| = {residual:.3e} exceeds {tol:.1e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("extension is diagonal and has no transfer-type boundary matrix; use the rho family")]
    Diagonal,

    #[error("extension is non-diagonal and has no decoupled rho form; use the alpha family")]
    NonDiagonal,

    #[error("{which} is not unimodular: |{which}| = {modulus}")]
    NotUnimodular { which: &'static str, modulus: f64 },

    #[error(
        "vector is not in class alpha: |a1 a4* - a2 a3* - 1| = {determinant:.3e}, \
         |Im a1 a3*| = {im13:.3e}, |Im a2 a4*| = {im24:.3e} (tol {tol:.1e})"
    )]
    NotClassAlpha {
        determinant: f64,
        im13: f64,
        im24: f64,
        tol: f64,
    },

    #[error("alpha1 and alpha2 both vanish; the vector cannot be in class alpha")]
    DegeneratePivot,

    #[error("junction half-length must be finite and non-negative, got {0}")]
    InvalidGeometry(f64),

    #[error("extended real must be finite or +inf, got {0}")]
    InvalidExtendedReal(f64),

    #[error("x = {x} lies inside the junction (-{lambda}, +{lambda})")]
    InsideJunction { x: f64, lambda: f64 },

    #[error("boundary matrix A- is singular; the oracle needs a non-diagonal extension")]
    SingularBoundaryMatrix,

    #[error("wavenumber must be positive and finite, got {0}")]
    InvalidWavenumber(f64),

    #[error("scattering system is singular at k = {0}")]
    SingularScattering(f64),

    #[error("transmission amplitude vanishes (|t| = {0:.3e}); its phase is undefined")]
    UndefinedPhase(f64),
}
