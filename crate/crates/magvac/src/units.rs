//! Unit systems and the physical-constants table.
//!
//! Every physics module works in natural Heaviside-Lorentz units (hbar = c =
//! 1, field energy density B^2/2, e_r^2 = 4 pi alpha). This module is the one
//! place that converts external representations in and out:
//!
//! * magnetic field: eB\[eV^2\] = m_e^2 * (B / B_c), with B_c the electron
//!   critical field in Gauss,
//! * length/volume: 1 eV^-1 = hbar*c in cm,
//! * energy: 1 eV = 1.602176634e-12 erg.
//!
//! Two built-in constant modes exist so that rounded in-text figures stay
//! reproducible next to CODATA evaluations: `paper` (alpha = 1/137 exactly,
//! m_e = 5.11e5 eV, B_c = 4.414e13 G) and `modern` (CODATA 2018). The mode is
//! recorded in every CLI output. No conversion constant is inlined anywhere
//! else in the crate.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fine-structure constant of the `paper` mode, exactly 1/137.
pub const ALPHA_PAPER: f64 = 1.0 / 137.0;
/// Electron mass in eV of the `paper` mode (rounded textbook value).
pub const M_E_EV_PAPER: f64 = 5.11e5;
/// Electron critical field in Gauss of the `paper` mode (rounded textbook value).
pub const B_C_GAUSS_PAPER: f64 = 4.414e13;
/// Fine-structure constant, CODATA 2018.
pub const ALPHA_CODATA: f64 = 7.2973525693e-3;
/// Electron mass in eV, CODATA 2018.
pub const M_E_EV_CODATA: f64 = 510998.95;
/// Electron critical field m_e^2 c^3 / (e hbar) in Gauss, derived from CODATA 2018.
pub const B_C_GAUSS_CODATA: f64 = 4.4140052e13;
/// erg per eV; exact under the 2019 SI definition of the elementary charge.
pub const ERG_PER_EV: f64 = 1.602176634e-12;
/// hbar*c in eV*cm, CODATA 2018 (197.3269804 MeV fm).
pub const CM_PER_INVERSE_EV: f64 = 1.973269804e-5;
/// hbar in eV*s, CODATA 2018.
pub const S_PER_INVERSE_EV: f64 = 6.582119569e-16;
/// Newtonian gravitational constant in m^3 kg^-1 s^-2, CODATA 2018.
pub const G_SI: f64 = 6.67430e-11;
/// Speed of light in m/s; exact.
pub const C_M_PER_S: f64 = 2.99792458e8;
/// Elementary charge in Coulomb; exact under the 2019 SI.
pub const ELEMENTARY_CHARGE_C: f64 = 1.602176634e-19;
/// Solar mass in grams, IAU 2015 nominal value.
pub const M_SUN_G: f64 = 1.98841e33;
/// Electron mass in grams, CODATA 2018.
pub const M_ELECTRON_G: f64 = 9.1093837015e-28;
/// Tesla per Gauss; exact.
pub const TESLA_PER_GAUSS: f64 = 1.0e-4;

/// Which constants table is active; recorded in every machine-readable output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsMode {
    Paper,
    Modern,
    Custom,
}

impl fmt::Display for ConstantsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantsMode::Paper => write!(f, "paper"),
            ConstantsMode::Modern => write!(f, "modern"),
            ConstantsMode::Custom => write!(f, "custom"),
        }
    }
}

/// The active constants table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub mode: ConstantsMode,
    /// Fine-structure constant alpha = e_r^2 / (4 pi).
    pub alpha: f64,
    /// Electron mass in eV.
    pub m_e_ev: f64,
    /// Electron critical field in Gauss (eB = m_e^2 at B = B_c).
    pub b_c_gauss: f64,
    pub erg_per_ev: f64,
    pub cm_per_inverse_ev: f64,
    pub s_per_inverse_ev: f64,
}

/// On-disk override file; any subset of keys may be present.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    alpha: Option<f64>,
    #[serde(rename = "m_e_eV")]
    m_e_ev: Option<f64>,
    #[serde(rename = "B_c_gauss")]
    b_c_gauss: Option<f64>,
    #[serde(rename = "erg_per_eV")]
    erg_per_ev: Option<f64>,
}

impl PhysicalConstants {
    pub fn paper() -> Self {
        Self {
            mode: ConstantsMode::Paper,
            alpha: ALPHA_PAPER,
            m_e_ev: M_E_EV_PAPER,
            b_c_gauss: B_C_GAUSS_PAPER,
            erg_per_ev: ERG_PER_EV,
            cm_per_inverse_ev: CM_PER_INVERSE_EV,
            s_per_inverse_ev: S_PER_INVERSE_EV,
        }
    }

    pub fn modern() -> Self {
        Self {
            mode: ConstantsMode::Modern,
            alpha: ALPHA_CODATA,
            m_e_ev: M_E_EV_CODATA,
            b_c_gauss: B_C_GAUSS_CODATA,
            ..Self::paper()
        }
    }

    /// Squared renormalized charge e_r^2 = 4 pi alpha (Heaviside-Lorentz).
    pub fn e_r_squared(&self) -> f64 {
        4.0 * PI * self.alpha
    }

    /// Applies overrides from a JSON file (keys: alpha, m_e_eV, B_c_gauss,
    /// erg_per_eV); the result is tagged [`ConstantsMode::Custom`].
    pub fn with_overrides_from_file(self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let file: ConstantsFile = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid constants file {}: {e}", path.display())))?;
        let mut out = self;
        out.mode = ConstantsMode::Custom;
        if let Some(v) = file.alpha {
            out.alpha = v;
        }
        if let Some(v) = file.m_e_ev {
            out.m_e_ev = v;
        }
        if let Some(v) = file.b_c_gauss {
            out.b_c_gauss = v;
        }
        if let Some(v) = file.erg_per_ev {
            out.erg_per_ev = v;
        }
        out.validate()?;
        Ok(out)
    }

    /// Reject non-finite or non-positive constants; overridden sets must stay
    /// physically meaningful.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("m_e_eV", self.m_e_ev),
            ("B_c_gauss", self.b_c_gauss),
            ("erg_per_eV", self.erg_per_ev),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Config(format!(
                    "constant {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Magnetic field strength in both representations: Gauss externally, the
/// product eB in eV^2 internally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldStrength {
    gauss: f64,
    eb_ev2: f64,
}

impl FieldStrength {
    pub fn zero() -> Self {
        Self { gauss: 0.0, eb_ev2: 0.0 }
    }

    pub fn from_gauss(b_gauss: f64, consts: &PhysicalConstants) -> Result<Self> {
        Ok(Self { gauss: b_gauss, eb_ev2: gauss_to_natural(b_gauss, consts)? })
    }

    pub fn from_natural(eb_ev2: f64, consts: &PhysicalConstants) -> Result<Self> {
        if !eb_ev2.is_finite() || eb_ev2 < 0.0 {
            return Err(Error::Domain(format!("eB must be >= 0 eV^2, got {eb_ev2}")));
        }
        let gauss = eb_ev2 / (consts.m_e_ev * consts.m_e_ev) * consts.b_c_gauss;
        Ok(Self { gauss, eb_ev2 })
    }

    pub fn gauss(&self) -> f64 {
        self.gauss
    }

    pub fn eb_ev2(&self) -> f64 {
        self.eb_ev2
    }
}

/// Volume in both representations: cm^3 externally, eV^-3 internally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Volume {
    cm3: f64,
    natural_ev3: f64,
}

impl Volume {
    pub fn from_cm3(cm3: f64, consts: &PhysicalConstants) -> Result<Self> {
        if !cm3.is_finite() || cm3 <= 0.0 {
            return Err(Error::Domain(format!("volume must be > 0 cm^3, got {cm3}")));
        }
        Ok(Self { cm3, natural_ev3: cm3 / consts.cm_per_inverse_ev.powi(3) })
    }

    pub fn from_natural(natural_ev3: f64, consts: &PhysicalConstants) -> Result<Self> {
        if !natural_ev3.is_finite() || natural_ev3 <= 0.0 {
            return Err(Error::Domain(format!("volume must be > 0 eV^-3, got {natural_ev3}")));
        }
        Ok(Self { cm3: natural_ev3 * consts.cm_per_inverse_ev.powi(3), natural_ev3 })
    }

    pub fn cm3(&self) -> f64 {
        self.cm3
    }

    pub fn natural_ev3(&self) -> f64 {
        self.natural_ev3
    }
}

/// eB\[eV^2\] = m_e^2 * (B / B_c); monotone and exactly linear in B.
pub fn gauss_to_natural(b_gauss: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !b_gauss.is_finite() || b_gauss < 0.0 {
        return Err(Error::Domain(format!("field must be >= 0 Gauss, got {b_gauss}")));
    }
    Ok(consts.m_e_ev * consts.m_e_ev * (b_gauss / consts.b_c_gauss))
}

/// Linear energy conversion eV -> erg.
pub fn natural_to_erg(energy_ev: f64, consts: &PhysicalConstants) -> f64 {
    energy_ev * consts.erg_per_ev
}

/// Linear energy conversion erg -> eV.
pub fn erg_to_natural(energy_erg: f64, consts: &PhysicalConstants) -> f64 {
    energy_erg / consts.erg_per_ev
}
