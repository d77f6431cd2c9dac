//! Weierstrass gap sequences at ramification points of trigonal curves.
//!
//! A trigonal plane model `y³ + x^μ A(x) y + x^ν B(x) = 0` with Maroni
//! invariant `m` falls into one of four cases according to `(μ, ν)`; each
//! case has a Newton polygon and a linear functional whose level lines
//! through interior points give the gap sequence at the point over `x = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, TransformError};
use crate::lattice::{Direction, LatticePoint};
use crate::poly::Poly;
use crate::polygon::LatticePolygon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
}

impl fmt::Display for ModelCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelCase::I => "i",
            ModelCase::II => "ii",
            ModelCase::III => "iii",
            ModelCase::IV => "iv",
        };
        f.write_str(s)
    }
}

/// Which case the exponents `(μ, ν)` of a model fall in. `μ = ν = 0` is
/// case (iii) only when the discriminant has odd order at `x = 0`; that is
/// checked by [`case_iii_transform`].
pub fn case_of_exponents(mu: i64, nu: i64) -> Result<ModelCase, ModelError> {
    match (mu, nu) {
        (mu, 1) if mu >= 1 => Ok(ModelCase::I),
        (mu, 2) if mu >= 2 => Ok(ModelCase::II),
        (1, nu) if nu > 1 => Ok(ModelCase::IV),
        (0, 0) => Ok(ModelCase::III),
        _ => Err(ModelError::Invalid(format!("(mu, nu) = ({mu}, {nu}) has no ramification point over x = 0"))),
    }
}

/// Largest Maroni invariant accepted; the model polygon has `3m + 6` columns.
pub const M_LIMIT: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigonalModel {
    pub case: ModelCase,
    pub m: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    /// `None` stands for `α = ∞`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<i64>,
}

impl TrigonalModel {
    pub fn new(case: ModelCase, m: i64) -> Self {
        TrigonalModel { case, m, mu: None, nu: None, alpha: None, beta: None }
    }

    pub fn with_mu(mut self, mu: i64) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_nu(mut self, nu: i64) -> Self {
        self.nu = Some(nu);
        self
    }

    pub fn with_alpha(mut self, alpha: i64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_beta(mut self, beta: i64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let m = self.m;
        if m < 0 {
            return Err(ModelError::Invalid(format!("Maroni invariant m = {m} is negative")));
        }
        if m > M_LIMIT {
            return Err(ModelError::Invalid(format!("Maroni invariant m = {m} exceeds {M_LIMIT}")));
        }
        let deg_a = 2 * m + 4;
        let deg_b = 3 * m + 6;
        let check_mu = |lo: i64| match self.mu {
            Some(mu) if mu < lo || mu > deg_a => Err(ModelError::Invalid(format!("mu = {mu} outside [{lo}, {deg_a}]"))),
            _ => Ok(()),
        };
        let fixed_nu = |want: i64| match self.nu {
            Some(nu) if nu != want => {
                Err(ModelError::Invalid(format!("case {} needs nu = {want}, got {nu}", self.case)))
            }
            _ => Ok(()),
        };
        match self.case {
            ModelCase::I => {
                fixed_nu(1)?;
                check_mu(1)?;
            }
            ModelCase::II => {
                fixed_nu(2)?;
                check_mu(2)?;
            }
            ModelCase::III => {
                if self.mu.is_some_and(|mu| mu != 0) || self.nu.is_some_and(|nu| nu != 0) {
                    return Err(ModelError::Invalid("case iii needs mu = nu = 0".into()));
                }
                let beta = self.beta.ok_or(ModelError::MissingParameter("beta"))?;
                if beta < 1 {
                    return Err(ModelError::Invalid(format!("beta = {beta} must be positive")));
                }
                if beta % 2 == 0 {
                    return Err(ModelError::BetaEven(beta));
                }
                if let Some(alpha) = self.alpha {
                    if alpha < 1 || alpha > deg_a {
                        return Err(ModelError::Invalid(format!("alpha = {alpha} outside [1, {deg_a}]")));
                    }
                    if beta >= 2 * alpha {
                        return Err(ModelError::Invalid(format!("beta = {beta} is not below 2 alpha = {}", 2 * alpha)));
                    }
                }
                if beta >= deg_a {
                    return Err(ModelError::Invalid(format!("beta = {beta} is not below 2m + 4 = {deg_a}")));
                }
            }
            ModelCase::IV => {
                if self.mu.is_some_and(|mu| mu != 1) {
                    return Err(ModelError::Invalid("case iv needs mu = 1".into()));
                }
                let nu = self.nu.ok_or(ModelError::MissingParameter("nu"))?;
                if nu < 2 || nu > deg_b {
                    return Err(ModelError::Invalid(format!("nu = {nu} outside [2, {deg_b}]")));
                }
            }
        }
        Ok(())
    }

    /// Genus of the curve, from the case formulas.
    pub fn expected_genus(&self) -> i64 {
        let m = self.m;
        match self.case {
            ModelCase::I => 3 * m + 4,
            ModelCase::II | ModelCase::IV => 3 * m + 3,
            ModelCase::III => 3 * m - (self.beta.unwrap_or(1) - 9) / 2,
        }
    }

    /// The functional `f` and offset `c`: `j` is a gap iff the line
    /// `f = c + j` meets the interior of the polygon in a lattice point.
    pub fn functional(&self) -> (Direction, i64) {
        let dir = |x, y| Direction::new(x, y).expect("primitive");
        match self.case {
            ModelCase::I => (dir(3, 1), 3),
            ModelCase::II => (dir(3, 2), 6),
            ModelCase::III => {
                let beta = self.beta.expect("validated");
                (dir(2, beta), 2 * beta)
            }
            ModelCase::IV => (dir(2, 1), 3),
        }
    }

    pub fn ramification(&self) -> (RamType, SeqType) {
        match self.case {
            ModelCase::I => (RamType::Total, SeqType::I),
            ModelCase::II => (RamType::Total, SeqType::II),
            ModelCase::III => (RamType::Ordinary, SeqType::I),
            ModelCase::IV => (RamType::Ordinary, SeqType::II),
        }
    }
}

/// Newton polygon of the model after blowing up over `x = 0`.
pub fn model_polygon(model: &TrigonalModel) -> Result<LatticePolygon, ModelError> {
    model.validate()?;
    let top = 3 * model.m + 6;
    let pts: Vec<(i64, i64)> = match model.case {
        ModelCase::I => vec![(0, 3), (1, 0), (top, 0)],
        ModelCase::II => vec![(0, 3), (2, 0), (top, 0)],
        ModelCase::III => vec![(0, 3), (0, 2), (model.beta.expect("validated"), 0), (top, 0)],
        ModelCase::IV => vec![(0, 3), (1, 1), (model.nu.expect("validated"), 0), (top, 0)],
    };
    let pts: Vec<LatticePoint> = pts.into_iter().map(Into::into).collect();
    Ok(LatticePolygon::from_points(&pts).expect("non-empty"))
}

/// `{ j >= 1 : f(u) = offset + j for some interior lattice point u }`.
pub fn gap_sequence(p: &LatticePolygon, f: Direction, offset: i64) -> Vec<i64> {
    let mut gaps: Vec<i64> = p.interior_points().into_iter().map(|u| f.eval(u) - offset).filter(|&j| j >= 1).collect();
    gaps.sort_unstable();
    gaps.dedup();
    gaps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamType {
    Total,
    Ordinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqType {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub case: ModelCase,
    pub m: i64,
    pub genus: i64,
    pub gaps: Vec<i64>,
    pub ram_type: RamType,
    pub seq_type: SeqType,
    pub functional: Direction,
    pub offset: i64,
}

/// Sweeps the model polygon and checks the result against the closed form.
pub fn gap_report(model: &TrigonalModel) -> Result<GapReport, ModelError> {
    let p = model_polygon(model)?;
    let (f, offset) = model.functional();
    let gaps = gap_sequence(&p, f, offset);
    let genus = p.genus();
    let (ram_type, seq_type) = model.ramification();
    let closed = closed_form_gaps(ram_type, seq_type, model.m, genus)?;
    if closed != gaps || gaps.len() as i64 != genus {
        return Err(ModelError::ClosedFormMismatch { swept: gaps, closed });
    }
    Ok(GapReport { case: model.case, m: model.m, genus, gaps, ram_type, seq_type, functional: f, offset })
}

/// The four gap sequences of a ramification point of a trigonal curve of
/// genus `g` and Maroni invariant `m`.
pub fn closed_form_gaps(ram: RamType, t: SeqType, m: i64, g: i64) -> Result<Vec<i64>, ModelError> {
    if m < 0 || g < 0 {
        return Err(ModelError::EmptyRange { m, g });
    }
    if m > M_LIMIT || g > 4 * M_LIMIT {
        return Err(ModelError::Invalid(format!("m = {m}, g = {g} beyond the supported range")));
    }
    let (prefix, start, end, step): (Vec<i64>, i64, i64, i64) = match (ram, t) {
        (RamType::Total, t) => {
            let prefix = (1..=3 * m + 2).filter(|j| j % 3 != 0).collect();
            match t {
                SeqType::I => (prefix, 3 * m + 4, 3 * (g - m) - 5, 3),
                SeqType::II => (prefix, 3 * m + 5, 3 * (g - m) - 4, 3),
            }
        }
        (RamType::Ordinary, SeqType::I) => ((1..=2 * m + 3).collect(), 2 * m + 5, 2 * (g - m) - 3, 2),
        (RamType::Ordinary, SeqType::II) => ((1..=2 * m + 2).collect(), 2 * m + 4, 2 * (g - m) - 2, 2),
    };
    if end < start - step {
        return Err(ModelError::EmptyRange { m, g });
    }
    let mut gaps = prefix;
    gaps.extend((start..=end).step_by(step as usize));
    if gaps.len() as i64 != g {
        return Err(ModelError::EmptyRange { m, g });
    }
    Ok(gaps)
}

/// Result of rewriting a case-(iii) model as
/// `y³ + 3k y² + x^α C(x) y + x^β D(x) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseIiiForm {
    /// `None` when `A` is the bare constant `-3k²`.
    pub alpha: Option<usize>,
    pub beta: usize,
    pub c: Poly,
    pub d: Poly,
    /// Order of `4A³ + 27B²` at `x = 0`.
    pub discriminant_order: usize,
}

impl CaseIiiForm {
    /// The model for Maroni invariant `m`, checking the degree bookkeeping
    /// `deg C + α = 2m + 4` and `deg D + β = 3m + 6`.
    pub fn model(&self, m: i64) -> Result<TrigonalModel, ModelError> {
        if let Some(alpha) = self.alpha {
            let deg = self.c.degree().expect("C(0) is nonzero") + alpha;
            if deg as i64 != 2 * m + 4 {
                return Err(ModelError::Invalid(format!("deg C + alpha = {deg}, expected 2m + 4 = {}", 2 * m + 4)));
            }
        }
        let deg = self.d.degree().expect("D(0) is nonzero") + self.beta;
        if deg as i64 != 3 * m + 6 {
            return Err(ModelError::Invalid(format!("deg D + beta = {deg}, expected 3m + 6 = {}", 3 * m + 6)));
        }
        let mut model = TrigonalModel::new(ModelCase::III, m).with_beta(self.beta as i64);
        model.alpha = self.alpha.map(|a| a as i64);
        model.validate()?;
        Ok(model)
    }
}

/// Substitutes `y ↦ y + k` in `y³ + A(x) y + B(x)` with
/// `A(0) = -3k²`, `B(0) = 2k³`.
pub fn case_iii_transform(a: &Poly, b: &Poly, k: &BigRational) -> Result<CaseIiiForm, TransformError> {
    if k.is_zero() {
        return Err(TransformError::NormalFormViolation("k must be nonzero"));
    }
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let k2 = k * k;
    let k3 = &k2 * k;
    if a.coeff(0) != -(int(3) * &k2) {
        return Err(TransformError::NormalFormViolation("A(0) must equal -3k^2"));
    }
    if b.coeff(0) != int(2) * &k3 {
        return Err(TransformError::NormalFormViolation("B(0) must equal 2k^3"));
    }
    // x^α C(x) = A + 3k², x^β D(x) = kA + B + k³
    let xc = a + &Poly::constant(int(3) * &k2);
    let xd = &(&a.scale(k) + b) + &Poly::constant(k3);
    let alpha = xc.mindeg();
    let beta = xd.mindeg().ok_or(TransformError::NormalFormViolation("k a_i + b_i vanishes for every i"))?;
    if beta % 2 == 0 {
        return Err(TransformError::BetaEven(beta));
    }
    let disc = &a.pow(3).scale(&int(4)) + &b.pow(2).scale(&int(27));
    let order = disc.mindeg().unwrap_or(usize::MAX);
    if order != beta {
        return Err(TransformError::DiscriminantOrderMismatch { order, beta });
    }
    let c = match alpha {
        Some(al) => xc.shift_down(al),
        None => Poly::default(),
    };
    let d = xd.shift_down(beta);
    Ok(CaseIiiForm { alpha, beta, c, d, discriminant_order: order })
}
