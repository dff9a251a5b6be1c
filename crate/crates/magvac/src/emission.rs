//! Spontaneous photon emission from the magnetized vacuum.
//!
//! A fermion of mass m in field eB radiates lines labelled by the level drop
//! n0 >= 1. Combining energy conservation with the level structure ties the
//! photon momentum components to n0 through
//!
//!   2 eB n0 = k_perp^2 + 2 m omega,   omega = sqrt(k_perp^2 + k_par^2),
//!
//! so each line sweeps k_perp from k_max down to 0, where k_max solves
//! k_max^2 + 2 m k_max = 2 eB n0 and the parallel momentum grows to
//! k_par_max = k_max (1 + k_max / 2m).
//!
//! The transverse matrix element enters through the kernel
//!
//!   K(n0, k_perp) = 2 e_r^2 exp(2 ln|H_{n0}(xi)| - xi^2 - ln(2^{n0} n0!))
//!                   * sum_f c_f Q_f^2 m_f / eB,  xi = k_perp / sqrt(eB),
//!
//! assembled in log space so high orders stay finite. The spectral density
//! per species is K_f times eB w / (4 pi^2 m_f |k_par|) with w = omega for
//! the [`Measure::Paper`] convention and w = k_perp for the exact transverse
//! phase-space ring ([`Measure::Exact`]). The integrable 1/|k_par| edge at
//! k_perp = k_max is removed exactly by the substitution
//! k_perp = k_max cos t, after which every line integral is smooth on
//! [0, pi/2].
//!
//! Rates are densities per unit time in natural units (eV); the burst
//! duration and emitting volume stay symbolic and multiply the results
//! downstream. Photon counts in a burst follow a Poisson law in the mean
//! n_bar, evaluated here in log space.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;
use crate::units::{ConstantsMode, FieldStrength, PhysicalConstants};
use crate::vacuum::{FermionSet, FermionSpecies};

/// Transverse weight convention in the spectral density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// w = omega in the density and k_perp as the tabulated photon energy.
    Paper,
    /// w = k_perp (the true transverse ring) and omega as the photon energy.
    Exact,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Paper => write!(f, "paper"),
            Measure::Exact => write!(f, "exact"),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Measure::Paper),
            "exact" => Ok(Measure::Exact),
            other => Err(Error::Config(format!(
                "unknown measure {other:?}; expected \"paper\" or \"exact\""
            ))),
        }
    }
}

/// A photon by its momentum components relative to the field axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonMode {
    pub k_perp_ev: f64,
    pub k_par_ev: f64,
}

impl PhotonMode {
    pub fn omega_ev(&self) -> f64 {
        self.k_perp_ev.hypot(self.k_par_ev)
    }
}

/// One emission line: species, level drop, nominal energy n0 eB / m, and the
/// integrated number rate it contributes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhotonLine {
    pub species: String,
    pub n0: u32,
    pub omega_ev: f64,
    pub weight: f64,
}

/// Optional kinematic caps applied to line integrals and sampling.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Cutoffs {
    /// Keep only |k_par| below this value when set.
    pub k_par_max_ev: Option<f64>,
}

/// Level drop implied by a photon's momenta: n0 = (k_perp^2 + 2 m omega)/2eB.
/// Real-valued; emitted photons land on integers n0 >= 1.
pub fn quantization_n0(k_perp_ev: f64, k_par_ev: f64, m_ev: f64, eb_ev2: f64) -> Result<f64> {
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("quantization needs eB > 0, got {eb_ev2}")));
    }
    if !(m_ev.is_finite() && m_ev > 0.0) {
        return Err(Error::Domain(format!("quantization needs m > 0, got {m_ev}")));
    }
    if !(k_perp_ev.is_finite() && k_perp_ev >= 0.0) || !k_par_ev.is_finite() {
        return Err(Error::Domain(format!(
            "quantization needs finite momenta with k_perp >= 0, got ({k_perp_ev}, {k_par_ev})"
        )));
    }
    let omega = k_perp_ev.hypot(k_par_ev);
    Ok((k_perp_ev * k_perp_ev + 2.0 * m_ev * omega) / (2.0 * eb_ev2))
}

/// Kinematics of a single line for one species.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineGeometry {
    pub n0: u32,
    pub m_ev: f64,
    pub eb_ev2: f64,
    /// Largest transverse momentum on the line.
    pub k_max_ev: f64,
    /// Parallel momentum reached as k_perp -> 0.
    pub k_par_max_ev: f64,
}

impl LineGeometry {
    pub fn new(n0: u32, m_ev: f64, eb_ev2: f64) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::Domain("line index n0 must be >= 1".into()));
        }
        if !(m_ev.is_finite() && m_ev > 0.0) {
            return Err(Error::Domain(format!("line geometry needs m > 0, got {m_ev}")));
        }
        if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
            return Err(Error::Domain(format!("line geometry needs eB > 0, got {eb_ev2}")));
        }
        let s = 2.0 * eb_ev2 * n0 as f64;
        let k_max = s / (m_ev + (m_ev * m_ev + s).sqrt());
        let k_par_max = k_max * (1.0 + k_max / (2.0 * m_ev));
        Ok(LineGeometry { n0, m_ev, eb_ev2, k_max_ev: k_max, k_par_max_ev: k_par_max })
    }

    /// Parametrization k_perp = k_max cos t, t in [0, pi/2].
    pub fn k_perp_at(&self, t: f64) -> f64 {
        self.k_max_ev * t.cos()
    }

    /// Photon energy along the line: omega = k_max + (k_max^2 - k_perp^2)/2m.
    pub fn omega_at_k_perp(&self, k_perp: f64) -> f64 {
        self.k_max_ev
            + (self.k_max_ev - k_perp) * (self.k_max_ev + k_perp) / (2.0 * self.m_ev)
    }

    /// |k_par| along the line, through the cancellation-free product form
    /// omega - k_perp = (k_max - k_perp)(k_perp + k_max + 2m)/2m.
    pub fn k_par_at(&self, t: f64) -> f64 {
        let k = self.k_perp_at(t);
        let omega = self.omega_at_k_perp(k);
        let half = t / 2.0;
        let om_minus_k = 2.0 * self.k_max_ev * half.sin().powi(2) * (k + self.k_max_ev + 2.0 * self.m_ev)
            / (2.0 * self.m_ev);
        (om_minus_k * (omega + k)).sqrt()
    }

    /// Regularized Jacobian sin t / |k_par|, finite on the whole range:
    /// 2 cos(t/2) sqrt(m / (k_max (k_perp + k_max + 2m)(omega + k_perp))).
    pub fn reg_at(&self, t: f64) -> f64 {
        let k = self.k_perp_at(t);
        let omega = self.omega_at_k_perp(k);
        2.0 * (t / 2.0).cos()
            * (self.m_ev
                / (self.k_max_ev * (k + self.k_max_ev + 2.0 * self.m_ev) * (omega + k)))
                .sqrt()
    }

    pub fn t_of_k_perp(&self, k_perp: f64) -> f64 {
        (k_perp / self.k_max_ev).clamp(0.0, 1.0).acos()
    }

    /// Largest t kept under a |k_par| cap: bisection on the strictly
    /// increasing k_par(t).
    pub fn t_cap(&self, cutoffs: &Cutoffs) -> f64 {
        let cap = match cutoffs.k_par_max_ev {
            None => return PI / 2.0,
            Some(c) => c,
        };
        if cap >= self.k_par_max_ev {
            return PI / 2.0;
        }
        if cap <= 0.0 {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0f64, PI / 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.k_par_at(mid) > cap {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

fn check_field_inputs(eb_ev2: f64, fermions: &FermionSet, consts: &PhysicalConstants) -> Result<()> {
    if !(eb_ev2.is_finite() && eb_ev2 >= 0.0) {
        return Err(Error::Domain(format!("emission needs eB >= 0, got {eb_ev2}")));
    }
    fermions.validate()?;
    consts.validate()
}

/// Transverse emission kernel summed over species; see the module header for
/// the formula. Positive for k_perp > 0 away from Hermite zeros.
pub fn rate_kernel(
    n0: u32,
    k_perp_ev: f64,
    eb_ev2: f64,
    fermions: &FermionSet,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if n0 == 0 {
        return Err(Error::Domain("rate_kernel needs n0 >= 1".into()));
    }
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("rate_kernel needs eB > 0, got {eb_ev2}")));
    }
    if !(k_perp_ev.is_finite() && k_perp_ev >= 0.0) {
        return Err(Error::Domain(format!("rate_kernel needs k_perp >= 0, got {k_perp_ev}")));
    }
    check_field_inputs(eb_ev2, fermions, consts)?;
    let xi = k_perp_ev / eb_ev2.sqrt();
    let shape = kernel_shape(n0, xi);
    let mass_sum: f64 = fermions
        .species
        .iter()
        .map(|s| s.colors as f64 * s.charge_q * s.charge_q * s.mass_ev)
        .sum();
    Ok(2.0 * consts.e_r_squared() * shape * mass_sum / eb_ev2)
}

/// exp(2 ln|H_{n0}(xi)| - xi^2 - ln(2^{n0} n0!)), the species-independent
/// shape factor of the kernel.
fn kernel_shape(n0: u32, xi: f64) -> f64 {
    let (ln_h, _) = specfun::hermite_ln(n0, xi);
    (2.0 * ln_h - xi * xi - specfun::log_weight(n0)).exp()
}

/// Algebraic reduction of the kernel on the first line:
/// 4 e_r^2 e^{-k^2/eB} k^2 sum_f c_f Q_f^2 m_f / (eB)^2. Kept as an
/// independent route for cross-checks.
pub fn first_line_kernel_closed_form(
    k_perp_ev: f64,
    eb_ev2: f64,
    fermions: &FermionSet,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("closed form needs eB > 0, got {eb_ev2}")));
    }
    check_field_inputs(eb_ev2, fermions, consts)?;
    let mass_sum: f64 = fermions
        .species
        .iter()
        .map(|s| s.colors as f64 * s.charge_q * s.charge_q * s.mass_ev)
        .sum();
    let k2 = k_perp_ev * k_perp_ev;
    Ok(4.0 * consts.e_r_squared() * (-k2 / eb_ev2).exp() * k2 * mass_sum / (eb_ev2 * eb_ev2))
}

/// Spectral density in t for one species on one line; integrating this over
/// [0, pi/2] gives the line's number rate. `energy_weight` multiplies in the
/// per-photon energy for energy spectra.
pub(crate) fn line_density_at(
    geometry: &LineGeometry,
    species: &FermionSpecies,
    e_r2: f64,
    measure: Measure,
    t: f64,
    energy_weight: bool,
) -> f64 {
    let k = geometry.k_perp_at(t);
    let xi = k / geometry.eb_ev2.sqrt();
    let shape = kernel_shape(geometry.n0, xi);
    let kernel = 2.0 * e_r2
        * species.colors as f64
        * species.charge_q
        * species.charge_q
        * (species.mass_ev / geometry.eb_ev2)
        * shape;
    let omega = geometry.omega_at_k_perp(k);
    let w = match measure {
        Measure::Paper => omega,
        Measure::Exact => k,
    };
    let mut density = kernel * geometry.eb_ev2 * w / (4.0 * PI * PI * species.mass_ev)
        * geometry.k_max_ev
        * geometry.reg_at(t);
    if energy_weight {
        density *= match measure {
            Measure::Paper => k,
            Measure::Exact => omega,
        };
    }
    density
}

pub(crate) fn integrate_line(
    geometry: &LineGeometry,
    species: &FermionSpecies,
    e_r2: f64,
    measure: Measure,
    t_lo: f64,
    t_hi: f64,
    energy_weight: bool,
) -> Result<f64> {
    if t_hi <= t_lo {
        return Ok(0.0);
    }
    quad::integrate(
        |t| line_density_at(geometry, species, e_r2, measure, t, energy_weight),
        t_lo,
        t_hi,
        1e-11,
        0.0,
    )
}

/// All lines up to n0_max for every species, with integrated number rates.
/// A zero field carries no lines.
pub fn photon_lines(
    field: &FieldStrength,
    fermions: &FermionSet,
    n0_max: u32,
    measure: Measure,
    cutoffs: &Cutoffs,
    consts: &PhysicalConstants,
) -> Result<Vec<PhotonLine>> {
    if n0_max == 0 {
        return Err(Error::Domain("n0_max must be >= 1".into()));
    }
    let eb = field.eb_ev2();
    check_field_inputs(eb, fermions, consts)?;
    if eb == 0.0 {
        return Ok(Vec::new());
    }
    let e_r2 = consts.e_r_squared();
    let mut lines = Vec::with_capacity(fermions.species.len() * n0_max as usize);
    for species in &fermions.species {
        for n0 in 1..=n0_max {
            let geometry = LineGeometry::new(n0, species.mass_ev, eb)?;
            let t_hi = geometry.t_cap(cutoffs);
            let weight = integrate_line(&geometry, species, e_r2, measure, 0.0, t_hi, false)?;
            lines.push(PhotonLine {
                species: species.name.clone(),
                n0,
                omega_ev: n0 as f64 * eb / species.mass_ev,
                weight,
            });
        }
    }
    Ok(lines)
}

/// Total number rate: the sum of all line weights.
pub fn mean_photon_rate(
    field: &FieldStrength,
    fermions: &FermionSet,
    n0_max: u32,
    measure: Measure,
    cutoffs: &Cutoffs,
    consts: &PhysicalConstants,
) -> Result<f64> {
    Ok(photon_lines(field, fermions, n0_max, measure, cutoffs, consts)?
        .iter()
        .map(|l| l.weight)
        .sum())
}

/// Binned transverse-momentum spectrum configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub n0_max: u32,
    pub bins: usize,
    /// Upper edge of the binned range; defaults to the largest line k_max.
    pub k_perp_max_ev: Option<f64>,
    pub measure: Measure,
    pub cutoffs: Cutoffs,
}

/// One row of the binned spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumBin {
    pub k_perp_lo_ev: f64,
    pub k_perp_hi_ev: f64,
    pub number_rate: f64,
    pub energy_rate: f64,
}

/// Per-species annotation carried in the table metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeciesFlag {
    pub name: String,
    pub mass_ev: f64,
    pub eb_over_m2: f64,
    /// Set when eB/m^2 > 0.1: level spacing comparable to the rest mass.
    pub strong_field: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumMeta {
    pub b_gauss: f64,
    pub eb_ev2: f64,
    pub constants_mode: ConstantsMode,
    pub measure: Measure,
    pub n0_max: u32,
    pub k_perp_max_ev: f64,
    pub species: Vec<SpeciesFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub bins: Vec<SpectrumBin>,
    pub meta: SpectrumMeta,
}

/// Uniform-k_perp binned spectrum, accumulated line by line with the exact
/// t-space edges of every bin.
pub fn spectrum(
    field: &FieldStrength,
    fermions: &FermionSet,
    config: &SpectrumConfig,
    consts: &PhysicalConstants,
) -> Result<SpectrumTable> {
    if config.n0_max == 0 {
        return Err(Error::Domain("n0_max must be >= 1".into()));
    }
    if config.bins == 0 {
        return Err(Error::Domain("spectrum needs at least one bin".into()));
    }
    let eb = field.eb_ev2();
    check_field_inputs(eb, fermions, consts)?;
    let widest_k_max = if eb == 0.0 {
        0.0
    } else {
        fermions
            .species
            .iter()
            .map(|s| {
                LineGeometry::new(config.n0_max, s.mass_ev, eb).map(|g| g.k_max_ev)
            })
            .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))?
    };
    let k_perp_max = match config.k_perp_max_ev {
        Some(k) if k.is_finite() && k > 0.0 => k,
        Some(k) => {
            return Err(Error::Domain(format!("k_perp_max must be positive, got {k}")));
        }
        None => widest_k_max,
    };
    let mut bins: Vec<SpectrumBin> = (0..config.bins)
        .map(|i| {
            let width = k_perp_max / config.bins as f64;
            SpectrumBin {
                k_perp_lo_ev: i as f64 * width,
                k_perp_hi_ev: (i + 1) as f64 * width,
                number_rate: 0.0,
                energy_rate: 0.0,
            }
        })
        .collect();
    if eb > 0.0 && k_perp_max > 0.0 {
        let e_r2 = consts.e_r_squared();
        for species in &fermions.species {
            for n0 in 1..=config.n0_max {
                let geometry = LineGeometry::new(n0, species.mass_ev, eb)?;
                let t_end = geometry.t_cap(&config.cutoffs);
                for bin in bins.iter_mut() {
                    if bin.k_perp_lo_ev >= geometry.k_max_ev {
                        continue;
                    }
                    // k_perp decreases with t, so the bin's upper edge maps
                    // to the lower t limit.
                    let t_lo = geometry.t_of_k_perp(bin.k_perp_hi_ev);
                    let t_hi = geometry.t_of_k_perp(bin.k_perp_lo_ev).min(t_end);
                    bin.number_rate += integrate_line(
                        &geometry, species, e_r2, config.measure, t_lo, t_hi, false,
                    )?;
                    bin.energy_rate += integrate_line(
                        &geometry, species, e_r2, config.measure, t_lo, t_hi, true,
                    )?;
                }
            }
        }
    }
    let species_flags = fermions
        .species
        .iter()
        .map(|s| {
            let ratio = if s.mass_ev > 0.0 { eb / (s.mass_ev * s.mass_ev) } else { f64::NAN };
            SpeciesFlag {
                name: s.name.clone(),
                mass_ev: s.mass_ev,
                eb_over_m2: ratio,
                strong_field: ratio > 0.1,
            }
        })
        .collect();
    Ok(SpectrumTable {
        bins,
        meta: SpectrumMeta {
            b_gauss: field.gauss(),
            eb_ev2: eb,
            constants_mode: consts.mode,
            measure: config.measure,
            n0_max: config.n0_max,
            k_perp_max_ev: k_perp_max,
            species: species_flags,
        },
    })
}

/// Number rate split at |k_par| = k_perp (emission angle 45 degrees).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerpendicularSplit {
    pub perpendicular: f64,
    pub parallel: f64,
    pub ratio: f64,
}

/// Split every line at the t where k_par(t) = k_perp(t) and sum the two
/// sides. With [`Measure::Exact`] the perpendicular side dominates in weak
/// fields, matching the isotropic solid-angle ratio 1 + sqrt(2).
pub fn perpendicular_split(
    field: &FieldStrength,
    fermions: &FermionSet,
    n0_max: u32,
    measure: Measure,
    consts: &PhysicalConstants,
) -> Result<PerpendicularSplit> {
    if n0_max == 0 {
        return Err(Error::Domain("n0_max must be >= 1".into()));
    }
    let eb = field.eb_ev2();
    check_field_inputs(eb, fermions, consts)?;
    if eb == 0.0 {
        return Err(Error::Domain("perpendicular split needs a nonzero field".into()));
    }
    let e_r2 = consts.e_r_squared();
    let mut perp = 0.0;
    let mut par = 0.0;
    for species in &fermions.species {
        for n0 in 1..=n0_max {
            let geometry = LineGeometry::new(n0, species.mass_ev, eb)?;
            // g(t) = k_par - k_perp rises monotonically from -k_max to
            // k_par_max, so it has a single root.
            let (mut lo, mut hi) = (0.0f64, PI / 2.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if geometry.k_par_at(mid) > geometry.k_perp_at(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-15 {
                    break;
                }
            }
            let t_star = 0.5 * (lo + hi);
            perp += integrate_line(&geometry, species, e_r2, measure, 0.0, t_star, false)?;
            par += integrate_line(&geometry, species, e_r2, measure, t_star, PI / 2.0, false)?;
        }
    }
    Ok(PerpendicularSplit { perpendicular: perp, parallel: par, ratio: perp / par })
}

/// Poisson probability of n photons at mean n_bar, in log space; n_bar = 0
/// concentrates all probability at n = 0.
pub fn poisson_probability(n_bar: f64, n: u64) -> Result<f64> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(Error::Domain(format!("poisson mean must be >= 0, got {n_bar}")));
    }
    if n_bar == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    let ln_fact = if n <= u32::MAX as u64 {
        specfun::ln_factorial(n as u32)
    } else {
        // Stirling directly; n this large only occurs for absurd queries.
        (nf + 0.5) * nf.ln() - nf + 0.5 * (2.0 * PI).ln()
    };
    Ok((nf * n_bar.ln() - n_bar - ln_fact).exp())
}

/// Residual of the plane-wave overlap identity for the transverse level
/// functions: a Gaussian-times-Hermite Fourier transform reproduces the same
/// Hermite polynomial at the scaled frequency with phase (-i)^n. Verified by
/// direct quadrature; the residual is the vector mismatch over the natural
/// magnitude scale.
pub fn fourier_hermite_check(n: u32, k_x: f64, p_y: f64, eb_ev2: f64) -> Result<f64> {
    if n > 4 {
        return Err(Error::Domain(format!(
            "fourier check is budgeted for n <= 4, got {n}"
        )));
    }
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("fourier check needs eB > 0, got {eb_ev2}")));
    }
    if !(k_x.is_finite() && p_y.is_finite()) {
        return Err(Error::Domain("fourier check needs finite k_x and p_y".into()));
    }
    let root_eb = eb_ev2.sqrt();
    let kappa = k_x / root_eb;
    let h = |u: f64| specfun::hermite(n, u).expect("n <= 4 is within the order cap");
    let cos_part = quad::integrate(
        |u| (kappa * u).cos() * (-0.5 * u * u).exp() * h(u),
        -14.0,
        14.0,
        1e-12,
        1e-12,
    )?;
    let sin_part = quad::integrate(
        |u| (kappa * u).sin() * (-0.5 * u * u).exp() * h(u),
        -14.0,
        14.0,
        1e-12,
        1e-12,
    )?;
    let theta = -k_x * p_y / eb_ev2;
    let (re0, im0) = (cos_part, -sin_part);
    let lhs_re = (theta.cos() * re0 - theta.sin() * im0) / root_eb;
    let lhs_im = (theta.sin() * re0 + theta.cos() * im0) / root_eb;
    let scale = (2.0 * PI / eb_ev2).sqrt();
    let magnitude = scale * specfun::hermite(n, kappa)? * (-0.5 * kappa * kappa).exp();
    let phi = -(n as f64) * PI / 2.0 + theta;
    let rhs_re = magnitude * phi.cos();
    let rhs_im = magnitude * phi.sin();
    let mismatch = (lhs_re - rhs_re).hypot(lhs_im - rhs_im);
    Ok(mismatch / magnitude.abs().max(scale))
}
