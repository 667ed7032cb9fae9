use num_complex::Complex64;

/// Absolute residual of one verified identity at one `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub tau: Complex64,
    pub residual_abs: f64,
    pub tol: f64,
    pub pass: bool,
    /// Which identity was checked, e.g. `"p6-picard"`.
    pub context: String,
    /// Period/formula variant the evaluation used.
    pub convention: String,
}

impl ResidualReport {
    /// `pass` is derived, never supplied: it is `residual_abs <= tol`.
    pub fn new(
        tau: Complex64,
        residual_abs: f64,
        tol: f64,
        context: impl Into<String>,
        convention: impl Into<String>,
    ) -> Self {
        ResidualReport {
            tau,
            residual_abs,
            tol,
            pass: residual_abs <= tol,
            context: context.into(),
            convention: convention.into(),
        }
    }

    /// Attaches the evaluation point.
    pub fn at(mut self, tau: Complex64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_context(mut self, context: impl Into<String>, convention: impl Into<String>) -> Self {
        self.context = context.into();
        self.convention = convention.into();
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.pass = self.residual_abs <= tol;
        self
    }
}
