//! Vacuum energy of charged fermions in a uniform magnetic field.
//!
//! One-loop level structure: a fermion of mass m and charge fraction Q sees
//! levels eps = -sqrt(p_z^2 + m^2 + eB(2n + 1 - alpha)) with alpha = +/-1,
//! which collapse onto the combined index k = n + (1 - alpha)/2 carrying
//! multiplicity 1 for k = 0 and 2 for k >= 1, each with transverse degeneracy
//! eB/2pi per unit area.
//!
//! Dimensional regularization of the summed zero-point energy leaves a single
//! pole Gamma(-eps/2) whose residue is
//!
//! * free vacuum:      m^4 V / (8 pi^2)
//! * magnetized vacuum: [ (eB)^2/(12 pi^2) + m^4/(8 pi^2) ] V
//!
//! so the mass term cancels in the difference and
//! Delta E = -sum_f c_f Q_f^2 (eB)^2 V / (12 pi^2): the magnetized vacuum is
//! lower. Relative to the classical field energy (eB)^2 V / (8 pi alpha) the
//! release ratio is sum_f c_f Q_f^2 * 2 alpha / (3 pi), and flux conservation
//! turns it into a screened field B' = B sqrt(1 - ratio).
//!
//! The residues are stored as separate (field, mass) coefficients, so the
//! mass cancellation is structural rather than numerical; an independent
//! route through the Hurwitz zeta continuation cross-checks the magnetized
//! residue.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{self, PoleExpansion};
use crate::units::{FieldStrength, PhysicalConstants, Volume};

/// Spin projection entering the level formula through alpha = +/-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn alpha(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// Combined Landau index k = n + (1 - alpha)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandauLevel {
    pub k: u32,
}

impl LandauLevel {
    /// Spin multiplicity: the lowest level is reached one way, all others two.
    pub fn multiplicity(&self) -> u32 {
        if self.k == 0 {
            1
        } else {
            2
        }
    }

    /// Level energy -sqrt(p_z^2 + m^2 + 2 k eB).
    pub fn energy(&self, p_z: f64, m: f64, eb_ev2: f64) -> f64 {
        -(p_z * p_z + m * m + 2.0 * self.k as f64 * eb_ev2).sqrt()
    }
}

/// Negative-branch free level -sqrt(p^2 + m^2).
pub fn free_energy_level(p: f64, m: f64) -> f64 {
    -p.hypot(m)
}

/// Negative-branch level -sqrt(p_z^2 + m^2 + eB(2n + 1 - alpha)).
pub fn landau_energy(p_z: f64, m: f64, n: u32, spin: Helicity, eb_ev2: f64) -> Result<f64> {
    if !(eb_ev2.is_finite() && eb_ev2 >= 0.0) {
        return Err(Error::Domain(format!("landau_energy needs eB >= 0, got {eb_ev2}")));
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::Domain(format!("landau_energy needs m >= 0, got {m}")));
    }
    let shift = 2.0 * n as f64 + 1.0 - spin.alpha();
    Ok(-(p_z * p_z + m * m + shift * eb_ev2).sqrt())
}

/// Transverse states per unit area in one Landau level: eB / 2 pi.
pub fn landau_degeneracy_per_area(eb_ev2: f64) -> f64 {
    eb_ev2 / (2.0 * PI)
}

/// Pole part of a regularized vacuum energy: the symbolic Gamma(-eps/2)
/// expansion times (field_coeff (eB)^2 + mass_coeff m^4) V. Keeping the two
/// coefficients separate lets differences cancel the mass term exactly even
/// when m^4 dwarfs (eB)^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedEnergy {
    pub pole: PoleExpansion,
    /// Coefficient of (eB)^2 V in the residue.
    pub field_coeff: f64,
    /// Coefficient of m^4 V in the residue.
    pub mass_coeff: f64,
}

impl RegularizedEnergy {
    /// Numeric residue for given field, mass, and volume.
    pub fn pole_residue(&self, eb_ev2: f64, m_ev: f64, volume_ev3: f64) -> f64 {
        (self.field_coeff * eb_ev2 * eb_ev2 + self.mass_coeff * m_ev.powi(4)) * volume_ev3
    }
}

/// Residue structure of the field-free vacuum energy: m^4 V / (8 pi^2).
pub fn regularized_energy_free() -> RegularizedEnergy {
    RegularizedEnergy {
        pole: PoleExpansion::gamma_neg_half_eps(),
        field_coeff: 0.0,
        mass_coeff: 1.0 / (8.0 * PI * PI),
    }
}

/// Residue structure of the magnetized vacuum energy:
/// [(eB)^2/(12 pi^2) + m^4/(8 pi^2)] V.
pub fn regularized_energy_landau() -> RegularizedEnergy {
    RegularizedEnergy {
        pole: PoleExpansion::gamma_neg_half_eps(),
        field_coeff: 1.0 / (12.0 * PI * PI),
        mass_coeff: 1.0 / (8.0 * PI * PI),
    }
}

/// Residue difference (landau - free), cancelling shared coefficients
/// structurally; for the standard pair this is exactly (eB)^2 V / (12 pi^2)
/// for every mass.
pub fn pole_difference(
    landau: &RegularizedEnergy,
    free: &RegularizedEnergy,
    eb_ev2: f64,
    m_ev: f64,
    volume_ev3: f64,
) -> f64 {
    ((landau.field_coeff - free.field_coeff) * eb_ev2 * eb_ev2
        + (landau.mass_coeff - free.mass_coeff) * m_ev.powi(4))
        * volume_ev3
}

/// Magnetized residue per unit volume by the independent zeta route:
/// the level sum maps onto (2eB)^2 [zeta(-1, q) + zeta(-1, q+1)] with
/// q = m^2 / 2eB, and the continuation at -1 supplies the finite residue
/// -(2eB)^2 [zeta(-1,q) + zeta(-1,q+1)] / (8 pi^2).
pub fn landau_pole_coeff_via_zeta(m_ev: f64, eb_ev2: f64) -> Result<f64> {
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("zeta route needs eB > 0, got {eb_ev2}")));
    }
    if !(m_ev.is_finite() && m_ev > 0.0) {
        return Err(Error::Domain(format!("zeta route needs m > 0, got {m_ev}")));
    }
    let q = m_ev * m_ev / (2.0 * eb_ev2);
    let z = specfun::hurwitz_zeta(-1.0, q)? + specfun::hurwitz_zeta(-1.0, q + 1.0)?;
    let two_eb = 2.0 * eb_ev2;
    Ok(-two_eb * two_eb * z / (8.0 * PI * PI))
}

/// One charged fermion species: charge fraction Q (units of e), mass in eV,
/// and color multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FermionSpecies {
    pub name: String,
    #[serde(rename = "Q")]
    pub charge_q: f64,
    #[serde(rename = "mass_eV")]
    pub mass_ev: f64,
    pub colors: u32,
}

impl FermionSpecies {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Domain("fermion species needs a name".into()));
        }
        if !(self.mass_ev.is_finite() && self.mass_ev > 0.0) {
            return Err(Error::Domain(format!(
                "species {}: mass must be positive, got {}",
                self.name, self.mass_ev
            )));
        }
        if !self.charge_q.is_finite() {
            return Err(Error::Domain(format!("species {}: non-finite charge", self.name)));
        }
        if self.colors == 0 {
            return Err(Error::Domain(format!("species {}: colors must be >= 1", self.name)));
        }
        Ok(())
    }
}

/// The set of species summed over in vacuum-energy and emission formulas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FermionSet {
    pub species: Vec<FermionSpecies>,
}

impl FermionSet {
    /// Three charged leptons and six quarks; the electron mass comes from the
    /// active constants so both rounding conventions stay coherent.
    pub fn standard_model(m_e_ev: f64) -> Self {
        let s = |name: &str, q: f64, mass_ev: f64, colors: u32| FermionSpecies {
            name: name.to_string(),
            charge_q: q,
            mass_ev,
            colors,
        };
        FermionSet {
            species: vec![
                s("electron", -1.0, m_e_ev, 1),
                s("muon", -1.0, 1.056583755e8, 1),
                s("tau", -1.0, 1.77686e9, 1),
                s("up", 2.0 / 3.0, 2.16e6, 3),
                s("down", -1.0 / 3.0, 4.67e6, 3),
                s("strange", -1.0 / 3.0, 9.34e7, 3),
                s("charm", 2.0 / 3.0, 1.27e9, 3),
                s("bottom", -1.0 / 3.0, 4.18e9, 3),
                s("top", 2.0 / 3.0, 1.7269e11, 3),
            ],
        }
    }

    /// Just the electron, the species that dominates low-field emission.
    pub fn electron_only(m_e_ev: f64) -> Self {
        FermionSet {
            species: vec![FermionSpecies {
                name: "electron".to_string(),
                charge_q: -1.0,
                mass_ev: m_e_ev,
                colors: 1,
            }],
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| {
            Error::Config(format!("cannot open fermion file {}: {e}", path.display()))
        })?;
        let set: FermionSet = serde_json::from_reader(BufReader::new(file)).map_err(|e| {
            Error::Config(format!("cannot parse fermion file {}: {e}", path.display()))
        })?;
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.species.is_empty() {
            return Err(Error::Domain("fermion set must contain at least one species".into()));
        }
        for sp in &self.species {
            sp.validate()?;
        }
        Ok(())
    }

    /// sum_f colors_f Q_f^2, the charge factor in front of (eB)^2 terms.
    pub fn sum_colors_q2(&self) -> f64 {
        self.species.iter().map(|s| s.colors as f64 * s.charge_q * s.charge_q).sum()
    }
}

/// Vacuum energy shift and its comparison against the classical field energy.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DeltaEnergyReport {
    pub b_gauss: f64,
    pub eb_ev2: f64,
    pub volume_cm3: f64,
    pub sum_colors_q2: f64,
    /// Energy shift in eV (negative: the magnetized vacuum is lower).
    pub delta_e_ev: f64,
    /// Classical field energy (eB)^2 V / (8 pi alpha) in eV.
    pub field_energy_ev: f64,
    /// |Delta E| / field energy = sum_colors_q2 * 2 alpha / (3 pi).
    pub energy_release_ratio: f64,
    /// Energy shift in erg, scaled from the cgs field energy B^2 V / 8 pi.
    pub delta_e_erg: f64,
    /// Classical field energy B^2 V / 8 pi in erg.
    pub field_energy_erg: f64,
}

/// Vacuum energy shift for a field filling a volume.
pub fn delta_e(
    field: &FieldStrength,
    volume: &Volume,
    fermions: &FermionSet,
    consts: &PhysicalConstants,
) -> Result<DeltaEnergyReport> {
    fermions.validate()?;
    consts.validate()?;
    let eb = field.eb_ev2();
    let v_nat = volume.natural_ev3();
    let sum = fermions.sum_colors_q2();
    let delta_e_ev = -sum * eb * eb * v_nat / (12.0 * PI * PI);
    let field_energy_ev = eb * eb * v_nat / (8.0 * PI * consts.alpha);
    let ratio = sum * 2.0 * consts.alpha / (3.0 * PI);
    let field_energy_erg = field.gauss() * field.gauss() / (8.0 * PI) * volume.cm3();
    let delta_e_erg = -ratio * field_energy_erg;
    Ok(DeltaEnergyReport {
        b_gauss: field.gauss(),
        eb_ev2: eb,
        volume_cm3: volume.cm3(),
        sum_colors_q2: sum,
        delta_e_ev,
        field_energy_ev,
        energy_release_ratio: ratio,
        delta_e_erg,
        field_energy_erg,
    })
}

/// Screened macroscopic field after the vacuum absorbs its share of the
/// field energy at fixed flux.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ScreeningReport {
    pub b_gauss: f64,
    pub eb_ev2: f64,
    pub sum_colors_q2: f64,
    pub energy_release_ratio: f64,
    /// B'/B = sqrt(1 - ratio); independent of the field strength.
    pub reduction_factor: f64,
    pub b_screened_gauss: f64,
}

pub fn screened_field(
    field: &FieldStrength,
    fermions: &FermionSet,
    consts: &PhysicalConstants,
) -> Result<ScreeningReport> {
    fermions.validate()?;
    consts.validate()?;
    let sum = fermions.sum_colors_q2();
    let ratio = sum * 2.0 * consts.alpha / (3.0 * PI);
    if ratio >= 1.0 {
        return Err(Error::Domain(format!(
            "energy release ratio {ratio} >= 1: screening formula loses meaning"
        )));
    }
    let reduction = (1.0 - ratio).sqrt();
    Ok(ScreeningReport {
        b_gauss: field.gauss(),
        eb_ev2: field.eb_ev2(),
        sum_colors_q2: sum,
        energy_release_ratio: ratio,
        reduction_factor: reduction,
        b_screened_gauss: field.gauss() * reduction,
    })
}

/// Two routes to the same level sum: raw partial sums with integral tails
/// against the Hurwitz continuation.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReductionCheck {
    pub z: f64,
    pub direct_sum: f64,
    pub via_zeta: f64,
    pub relative_residual: f64,
}

/// Check that sum_n [(m^2 + 2eB n)^z + (m^2 + 2eB(n+1))^z] equals
/// (2eB)^z [zeta(-z, q) + zeta(-z, q+1)] with q = m^2/2eB. Requires z < -1
/// so both series converge; the direct side uses `n_terms` raw terms plus an
/// Euler-Maclaurin tail per series.
pub fn zeta_reduction_check(z: f64, m_ev: f64, eb_ev2: f64, n_terms: u64) -> Result<ReductionCheck> {
    if !(z.is_finite() && z < -1.0) {
        return Err(Error::Domain(format!(
            "reduction check needs z < -1 for convergence, got {z}"
        )));
    }
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("reduction check needs eB > 0, got {eb_ev2}")));
    }
    if !(m_ev.is_finite() && m_ev > 0.0) {
        return Err(Error::Domain(format!("reduction check needs m > 0, got {m_ev}")));
    }
    if n_terms == 0 {
        return Err(Error::Domain("reduction check needs at least one term".into()));
    }
    let m2 = m_ev * m_ev;
    let two_eb = 2.0 * eb_ev2;
    let mut direct = 0.0;
    for shift in [0.0, 1.0] {
        let mut partial = 0.0;
        for n in 0..n_terms {
            partial += (m2 + two_eb * (n as f64 + shift)).powf(z);
        }
        let x0 = m2 + two_eb * (n_terms as f64 + shift);
        partial += x0.powf(z + 1.0) / (-(z + 1.0) * two_eb) + 0.5 * x0.powf(z);
        direct += partial;
    }
    let q = m2 / two_eb;
    let via_zeta = two_eb.powf(z)
        * (specfun::hurwitz_zeta(-z, q)? + specfun::hurwitz_zeta(-z, q + 1.0)?);
    let relative_residual = (direct - via_zeta).abs() / via_zeta.abs();
    Ok(ReductionCheck { z, direct_sum: direct, via_zeta, relative_residual })
}

/// Landau-level versus free-mode state counting below a momentum cutoff in a
/// periodic box.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StateCountReport {
    pub eb_ev2: f64,
    pub cutoff_ev: f64,
    pub box_size_inverse_ev: f64,
    pub landau_states: f64,
    pub free_states: f64,
    pub relative_difference: f64,
}

/// Count states with p_z^2 + 2 k eB <= Lambda^2 (Landau side, transverse
/// degeneracy eB L^2 / 2 pi, multiplicity 1/2/2/...) against free modes with
/// p^2 <= Lambda^2 (both spins) on the same L^3 box with periodic momenta
/// 2 pi n / L. The two counts agree as eB -> 0.
pub fn state_count_comparison(eb_ev2: f64, cutoff_ev: f64, box_l: f64) -> Result<StateCountReport> {
    if !(eb_ev2.is_finite() && eb_ev2 > 0.0) {
        return Err(Error::Domain(format!("state count needs eB > 0, got {eb_ev2}")));
    }
    if !(cutoff_ev.is_finite() && cutoff_ev > 0.0) {
        return Err(Error::Domain(format!("state count needs a positive cutoff, got {cutoff_ev}")));
    }
    if !(box_l.is_finite() && box_l > 0.0) {
        return Err(Error::Domain(format!("state count needs a positive box, got {box_l}")));
    }
    let r = box_l * cutoff_ev / (2.0 * PI);
    let estimate = 8.0 / 3.0 * PI * r * r * r;
    if estimate > 2.0e8 {
        return Err(Error::Limit(format!(
            "state count of order {estimate:.3e} exceeds the enumeration budget"
        )));
    }
    let lam2 = cutoff_ev * cutoff_ev;
    let n_perp = r.floor() as i64;
    let mut free: u64 = 0;
    for nx in -n_perp..=n_perp {
        let px = 2.0 * PI * nx as f64 / box_l;
        for ny in -n_perp..=n_perp {
            let py = 2.0 * PI * ny as f64 / box_l;
            let p_perp2 = px * px + py * py;
            if p_perp2 > lam2 {
                continue;
            }
            let pz = (lam2 - p_perp2).sqrt();
            free += 2 * (box_l * pz / (2.0 * PI)).floor() as u64 + 1;
        }
    }
    let free_states = 2.0 * free as f64;
    let degeneracy = eb_ev2 * box_l * box_l / (2.0 * PI);
    let mut landau_states = 0.0;
    let mut k: u64 = 0;
    loop {
        let rad = lam2 - 2.0 * k as f64 * eb_ev2;
        if rad < 0.0 {
            break;
        }
        let pz = rad.sqrt();
        let nz = 2.0 * (box_l * pz / (2.0 * PI)).floor() + 1.0;
        let mult = LandauLevel { k: k.min(u32::MAX as u64) as u32 }.multiplicity() as f64;
        landau_states += mult * degeneracy * nz;
        k += 1;
    }
    Ok(StateCountReport {
        eb_ev2,
        cutoff_ev,
        box_size_inverse_ev: box_l,
        landau_states,
        free_states,
        relative_difference: (landau_states - free_states) / free_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::ConstantsMode;
    use approx::assert_relative_eq;
    use std::io::Write as _;

    #[test]
    fn landau_energy_matches_combined_index() {
        let eb = 0.37;
        let m = 1.2;
        let p_z = 0.8;
        // (n, alpha=+1) maps to k = n; (n, alpha=-1) to k = n + 1.
        for n in 0..6u32 {
            let plus = landau_energy(p_z, m, n, Helicity::Plus, eb).unwrap();
            assert_relative_eq!(
                plus,
                LandauLevel { k: n }.energy(p_z, m, eb),
                max_relative = 1e-15
            );
            let minus = landau_energy(p_z, m, n, Helicity::Minus, eb).unwrap();
            assert_relative_eq!(
                minus,
                LandauLevel { k: n + 1 }.energy(p_z, m, eb),
                max_relative = 1e-15
            );
        }
        // k = 0 at zero momentum is the free level.
        let ground = landau_energy(0.3, m, 0, Helicity::Plus, eb).unwrap();
        assert_relative_eq!(ground, free_energy_level(0.3, m), max_relative = 1e-15);
        assert!(matches!(landau_energy(0.0, m, 0, Helicity::Plus, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn level_multiplicities() {
        assert_eq!(LandauLevel { k: 0 }.multiplicity(), 1);
        for k in 1..5u32 {
            assert_eq!(LandauLevel { k }.multiplicity(), 2);
        }
    }

    #[test]
    fn degeneracy_per_area() {
        assert_relative_eq!(landau_degeneracy_per_area(1.0), 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(
            landau_degeneracy_per_area(591.5745355686453),
            591.5745355686453 / (2.0 * PI),
            max_relative = 1e-15
        );
    }

    #[test]
    fn pole_difference_is_mass_independent() {
        let free = regularized_energy_free();
        let landau = regularized_energy_landau();
        let eb = 0.5915745355686452;
        let vol = 2.0e5;
        let expected = eb * eb * vol / (12.0 * PI * PI);
        let mut diffs = Vec::new();
        for m in [0.1, 1.0, 511000.0] {
            let d = pole_difference(&landau, &free, eb, m, vol);
            assert_relative_eq!(d, expected, max_relative = 1e-15);
            diffs.push(d.to_bits());
        }
        // Structural cancellation: the three differences are bit-identical.
        assert!(diffs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn zeta_route_reproduces_landau_residue() {
        for (m, eb) in [(1.3, 0.7), (0.1, 0.02), (2.0, 5.0)] {
            let via = landau_pole_coeff_via_zeta(m, eb).unwrap();
            let structural = regularized_energy_landau().pole_residue(eb, m, 1.0);
            assert_relative_eq!(via, structural, max_relative = 1e-11);
        }
        assert!(matches!(landau_pole_coeff_via_zeta(1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn standard_model_charge_sum_is_eight() {
        let set = FermionSet::standard_model(5.11e5);
        assert_eq!(set.species.len(), 9);
        assert!((set.sum_colors_q2() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn fermion_set_json_round_trip() {
        let set = FermionSet::electron_only(510998.95);
        let mut tmp = tempfile::NamedTempFile::new().unwrap();
        write!(tmp, "{}", serde_json::to_string(&set).unwrap()).unwrap();
        let loaded = FermionSet::from_json_file(tmp.path()).unwrap();
        assert_eq!(loaded, set);
    }

    #[test]
    fn fermion_file_rejects_bad_content() {
        let mut bad_mass = tempfile::NamedTempFile::new().unwrap();
        write!(
            bad_mass,
            r#"{{"species":[{{"name":"x","Q":1.0,"mass_eV":-2.0,"colors":1}}]}}"#
        )
        .unwrap();
        assert!(matches!(FermionSet::from_json_file(bad_mass.path()), Err(Error::Domain(_))));

        let mut unknown_key = tempfile::NamedTempFile::new().unwrap();
        write!(
            unknown_key,
            r#"{{"species":[{{"name":"x","Q":1.0,"mass_eV":2.0,"colors":1,"spin":0.5}}]}}"#
        )
        .unwrap();
        assert!(matches!(FermionSet::from_json_file(unknown_key.path()), Err(Error::Config(_))));

        let mut not_json = tempfile::NamedTempFile::new().unwrap();
        write!(not_json, "species: electron").unwrap();
        assert!(matches!(FermionSet::from_json_file(not_json.path()), Err(Error::Config(_))));

        let mut empty = tempfile::NamedTempFile::new().unwrap();
        write!(empty, r#"{{"species":[]}}"#).unwrap();
        assert!(matches!(FermionSet::from_json_file(empty.path()), Err(Error::Domain(_))));
    }

    #[test]
    fn delta_e_reference_anchor() {
        let consts = PhysicalConstants::paper();
        let set = FermionSet::standard_model(consts.m_e_ev);
        let field = FieldStrength::from_gauss(1.0e13, &consts).unwrap();
        let volume = Volume::from_cm3(1.0e18, &consts).unwrap();
        let report = delta_e(&field, &volume, &set, &consts).unwrap();
        assert_relative_eq!(report.field_energy_erg, 3.978873577297384e42, max_relative = 1e-12);
        assert_relative_eq!(report.delta_e_erg, -4.930471223471425e40, max_relative = 1e-12);
        assert!(report.delta_e_ev < 0.0);
        assert_relative_eq!(
            report.energy_release_ratio,
            16.0 * consts.alpha / (3.0 * PI),
            max_relative = 1e-12
        );
        // The two routes to the ratio agree: formula against ev-route quotient.
        assert_relative_eq!(
            -report.delta_e_ev / report.field_energy_ev,
            report.energy_release_ratio,
            max_relative = 1e-12
        );
    }

    #[test]
    fn screening_reference_values() {
        let paper = PhysicalConstants::paper();
        let modern = PhysicalConstants::modern();
        let field = FieldStrength::from_gauss(1.0e15, &paper).unwrap();
        let set_p = FermionSet::standard_model(paper.m_e_ev);
        let r_p = screened_field(&field, &set_p, &paper).unwrap();
        assert_relative_eq!(r_p.reduction_factor, 0.9937848732298581, max_relative = 1e-12);

        let field_m = FieldStrength::from_gauss(1.0e15, &modern).unwrap();
        let set_m = FermionSet::standard_model(modern.m_e_ev);
        let r_m = screened_field(&field_m, &set_m, &modern).unwrap();
        assert_relative_eq!(r_m.reduction_factor, 0.9937865110353715, max_relative = 1e-12);
        assert_relative_eq!(
            r_m.b_screened_gauss,
            1.0e15 * r_m.reduction_factor,
            max_relative = 1e-15
        );
    }

    #[test]
    fn screening_rejects_overcritical_charge_sum() {
        let consts = PhysicalConstants::paper();
        let heavy = FermionSet {
            species: vec![FermionSpecies {
                name: "bulk".into(),
                charge_q: 30.0,
                mass_ev: 1.0e9,
                colors: 1,
            }],
        };
        let field = FieldStrength::from_gauss(1.0e15, &consts).unwrap();
        assert!(matches!(screened_field(&field, &heavy, &consts), Err(Error::Domain(_))));
    }

    #[test]
    fn reduction_check_residuals() {
        let cases = [
            (-2.0, 1.0, 0.5),
            (-1.5, 2.0, 1.0),
            (-3.0, 1.3, 0.25),
            (-1.5, 1.0, 500.0),
        ];
        for (z, m, eb) in cases {
            let check = zeta_reduction_check(z, m, eb, 200_000).unwrap();
            assert!(
                check.relative_residual < 1.0e-10,
                "z={z} m={m} eB={eb}: residual {}",
                check.relative_residual
            );
        }
        assert!(matches!(zeta_reduction_check(-1.0, 1.0, 0.5, 1000), Err(Error::Domain(_))));
        assert!(matches!(zeta_reduction_check(-0.5, 1.0, 0.5, 1000), Err(Error::Domain(_))));
    }

    #[test]
    fn state_count_reference_values() {
        let r = state_count_comparison(0.01, 1.0, 640.0).unwrap();
        assert_eq!(r.free_states, 8853150.0);
        assert_relative_eq!(r.landau_states, 8841701.34796442, max_relative = 1e-12);
        assert_relative_eq!(r.relative_difference, -0.0012931727165561508, max_relative = 1e-9);
        // Agreement tightens as the field weakens.
        let half = state_count_comparison(0.005, 1.0, 640.0).unwrap();
        let quarter = state_count_comparison(0.0025, 1.0, 640.0).unwrap();
        assert_relative_eq!(half.relative_difference, -0.0008145474583278894, max_relative = 1e-9);
        assert_relative_eq!(
            quarter.relative_difference,
            -0.00020706155365465037,
            max_relative = 1e-9
        );
        assert!(quarter.relative_difference.abs() < half.relative_difference.abs());
        assert!(half.relative_difference.abs() < r.relative_difference.abs());
    }

    #[test]
    fn state_count_guards() {
        assert!(matches!(state_count_comparison(0.0, 1.0, 640.0), Err(Error::Domain(_))));
        assert!(matches!(state_count_comparison(0.01, 1.0, 1.0e6), Err(Error::Limit(_))));
    }

    #[test]
    fn delta_e_zero_field_is_zero() {
        let consts = PhysicalConstants::modern();
        let set = FermionSet::standard_model(consts.m_e_ev);
        let field = FieldStrength::zero();
        let volume = Volume::from_cm3(1.0, &consts).unwrap();
        let report = delta_e(&field, &volume, &set, &consts).unwrap();
        assert_eq!(report.delta_e_ev, 0.0);
        assert_eq!(report.field_energy_erg, 0.0);
        assert!(report.energy_release_ratio > 0.0);
        assert_eq!(consts.mode, ConstantsMode::Modern);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn release_ratio_is_field_independent(exp in 0.0f64..15.0) {
                let consts = PhysicalConstants::paper();
                let set = FermionSet::standard_model(consts.m_e_ev);
                let field = FieldStrength::from_gauss(10f64.powf(exp), &consts).unwrap();
                let volume = Volume::from_cm3(1.0, &consts).unwrap();
                let report = delta_e(&field, &volume, &set, &consts).unwrap();
                let expected = 16.0 * consts.alpha / (3.0 * PI);
                prop_assert!((report.energy_release_ratio - expected).abs() <= 1e-14);
            }

            #[test]
            fn delta_e_scales_with_square_of_field(exp in 2.0f64..10.0) {
                let consts = PhysicalConstants::modern();
                let set = FermionSet::electron_only(consts.m_e_ev);
                let b = 10f64.powf(exp);
                let volume = Volume::from_cm3(1.0e6, &consts).unwrap();
                let f1 = FieldStrength::from_gauss(b, &consts).unwrap();
                let f2 = FieldStrength::from_gauss(2.0 * b, &consts).unwrap();
                let r1 = delta_e(&f1, &volume, &set, &consts).unwrap();
                let r2 = delta_e(&f2, &volume, &set, &consts).unwrap();
                prop_assert!((r2.delta_e_ev / r1.delta_e_ev - 4.0).abs() < 1e-10);
            }

            #[test]
            fn landau_levels_order_downward(k in 0u32..50, p in 0.0f64..10.0) {
                let lower = LandauLevel { k }.energy(p, 1.0, 0.3);
                let upper = LandauLevel { k: k + 1 }.energy(p, 1.0, 0.3);
                prop_assert!(upper < lower);
            }
        }
    }
}
