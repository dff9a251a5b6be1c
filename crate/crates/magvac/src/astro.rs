//! Order-of-magnitude estimators for magnetized compact objects.
//!
//! The vacuum energy release for a star-sized volume is scored against the
//! 1e42..1e46 erg band of observed magnetar outbursts, and the magnetic force
//! on a surface electron (q v B at v = c) is compared with the star's gravity
//! (G M m / R^2). Both comparisons carry explicit decade offsets
//! log10(value / anchor) instead of pass/fail verdicts, because the anchors
//! are themselves order-of-magnitude quotes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{
    FieldStrength, PhysicalConstants, Volume, C_M_PER_S, ELEMENTARY_CHARGE_C, G_SI, M_ELECTRON_G,
    M_SUN_G, TESLA_PER_GAUSS,
};
use crate::vacuum::{self, FermionSet};

/// Lower edge of the outburst energy band, erg.
pub const RELEASE_BAND_LO_ERG: f64 = 1.0e42;
/// Upper edge of the outburst energy band, erg.
pub const RELEASE_BAND_HI_ERG: f64 = 1.0e46;
/// Quoted gravitational pull on a surface electron, N.
pub const ANCHOR_F_GRAV_N: f64 = 2.0e-12;
/// Quoted magnetic force on a surface electron at v = c and B = 1e15 G, N.
pub const ANCHOR_F_MAG_N: f64 = 5.0;

/// A star by the three numbers the estimators need.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactObject {
    pub name: String,
    pub mass_g: f64,
    pub radius_cm: f64,
    pub b_surface_gauss: f64,
}

impl CompactObject {
    /// One solar mass in a 10 km radius with the given surface field.
    pub fn magnetar(b_surface_gauss: f64) -> Self {
        CompactObject {
            name: "magnetar".into(),
            mass_g: M_SUN_G,
            radius_cm: 1.0e6,
            b_surface_gauss,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (label, v) in [
            ("mass_g", self.mass_g),
            ("radius_cm", self.radius_cm),
            ("b_surface_gauss", self.b_surface_gauss),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "compact object {label} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// How to turn the object into an emitting volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum VolumeModel {
    /// V = R^3: the cube of the radius.
    CubeOfRadius,
    /// An explicit volume in cm^3.
    ExplicitCm3(f64),
}

impl VolumeModel {
    pub fn volume_cm3(&self, object: &CompactObject) -> Result<f64> {
        match *self {
            VolumeModel::CubeOfRadius => Ok(object.radius_cm.powi(3)),
            VolumeModel::ExplicitCm3(v) if v.is_finite() && v > 0.0 => Ok(v),
            VolumeModel::ExplicitCm3(v) => {
                Err(Error::Domain(format!("explicit volume must be positive, got {v}")))
            }
        }
    }
}

/// Released vacuum energy scored against the outburst band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReleaseEstimate {
    pub object: CompactObject,
    pub volume_cm3: f64,
    pub field_energy_erg: f64,
    /// |Delta E| in erg.
    pub release_erg: f64,
    pub band_lo_erg: f64,
    pub band_hi_erg: f64,
    pub within_band: bool,
    /// log10(release / band edge); negative means below that edge.
    pub log10_vs_band_lo: f64,
    pub log10_vs_band_hi: f64,
}

pub fn release_estimate(
    object: &CompactObject,
    volume_model: VolumeModel,
    fermions: &FermionSet,
    consts: &PhysicalConstants,
) -> Result<ReleaseEstimate> {
    object.validate()?;
    let field = FieldStrength::from_gauss(object.b_surface_gauss, consts)?;
    let volume_cm3 = volume_model.volume_cm3(object)?;
    let volume = Volume::from_cm3(volume_cm3, consts)?;
    let report = vacuum::delta_e(&field, &volume, fermions, consts)?;
    let release = report.delta_e_erg.abs();
    Ok(ReleaseEstimate {
        object: object.clone(),
        volume_cm3,
        field_energy_erg: report.field_energy_erg,
        release_erg: release,
        band_lo_erg: RELEASE_BAND_LO_ERG,
        band_hi_erg: RELEASE_BAND_HI_ERG,
        within_band: (RELEASE_BAND_LO_ERG..=RELEASE_BAND_HI_ERG).contains(&release),
        log10_vs_band_lo: (release / RELEASE_BAND_LO_ERG).log10(),
        log10_vs_band_hi: (release / RELEASE_BAND_HI_ERG).log10(),
    })
}

/// Magnetic versus gravitational force on a surface electron.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForceComparison {
    pub object: CompactObject,
    /// G M m_e / R^2 in newtons.
    pub f_grav_n: f64,
    /// e c B in newtons.
    pub f_mag_n: f64,
    pub mag_over_grav: f64,
    pub anchor_f_grav_n: f64,
    pub anchor_f_mag_n: f64,
    pub log10_grav_vs_anchor: f64,
    pub log10_mag_vs_anchor: f64,
}

pub fn force_comparison(object: &CompactObject) -> Result<ForceComparison> {
    object.validate()?;
    let mass_kg = object.mass_g * 1.0e-3;
    let m_e_kg = M_ELECTRON_G * 1.0e-3;
    let radius_m = object.radius_cm * 1.0e-2;
    let f_grav = G_SI * mass_kg * m_e_kg / (radius_m * radius_m);
    let b_tesla = object.b_surface_gauss * TESLA_PER_GAUSS;
    let f_mag = ELEMENTARY_CHARGE_C * C_M_PER_S * b_tesla;
    Ok(ForceComparison {
        object: object.clone(),
        f_grav_n: f_grav,
        f_mag_n: f_mag,
        mag_over_grav: f_mag / f_grav,
        anchor_f_grav_n: ANCHOR_F_GRAV_N,
        anchor_f_mag_n: ANCHOR_F_MAG_N,
        log10_grav_vs_anchor: (f_grav / ANCHOR_F_GRAV_N).log10(),
        log10_mag_vs_anchor: (f_mag / ANCHOR_F_MAG_N).log10(),
    })
}
