//! Published equilibrium data used as fixtures: four comparison sets for
//! the one-electron diatomic ion (each row pairs our model's published
//! result with an independent variational calculation), the charge study,
//! and upper bounds on the critical charges.
//!
//! The comparison columns are displayed, never asserted.

// Published values such as 0.318 are data, not approximations of 1/π.
#![allow(clippy::approx_constant)]

/// One row of a comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub field_gauss: f64,
    /// Published equilibrium distance of this model, bohr.
    pub distance: f64,
    /// Published `-E₂` of this model, hartree.
    pub binding: f64,
    /// Equilibrium distance of the comparison calculation, if given.
    pub other_distance: Option<f64>,
    /// `-E` of the comparison calculation.
    pub other_binding: f64,
}

const fn row(
    field_gauss: f64,
    distance: f64,
    binding: f64,
    other_distance: Option<f64>,
    other_binding: f64,
) -> ComparisonRow {
    ComparisonRow {
        field_gauss,
        distance,
        binding,
        other_distance,
        other_binding,
    }
}

/// Named comparison sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonSet {
    Melo,
    Guillou,
    Lai,
    Heyl,
}

impl ComparisonSet {
    pub const ALL: [ComparisonSet; 4] = [Self::Melo, Self::Guillou, Self::Lai, Self::Heyl];

    pub fn rows(self) -> &'static [ComparisonRow] {
        match self {
            Self::Melo => MELO,
            Self::Guillou => GUILLOU,
            Self::Lai => LAI,
            Self::Heyl => HEYL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Melo => "melo",
            Self::Guillou => "guillou",
            Self::Lai => "lai",
            Self::Heyl => "heyl",
        }
    }

    /// Fields of the set, in table order.
    pub fn fields(self) -> Vec<f64> {
        self.rows().iter().map(|r| r.field_gauss).collect()
    }
}

pub const MELO: &[ComparisonRow] = &[
    row(1e10, 1.494, 1.49, Some(1.232), 1.42),
    row(5e10, 0.813, 2.92, Some(0.736), 2.77),
    row(1e11, 0.632, 3.84, Some(0.604), 3.64),
    row(5e11, 0.364, 6.97, Some(0.351), 6.59),
    row(1e12, 0.291, 8.86, Some(0.285), 8.38),
    row(5e12, 0.182, 14.90, Some(0.179), 14.08),
    row(1e13, 0.148, 18.35, Some(0.149), 17.32),
    row(5e13, 0.099, 28.76, Some(0.104), 26.90),
    row(1e14, 0.084, 34.40, Some(0.085), 31.86),
];

pub const GUILLOU: &[ComparisonRow] = &[
    row(1.175e10, 1.403, 1.59, Some(1.358), 1.54),
    row(2.35e10, 1.073, 2.14, Some(1.038), 2.06),
    row(3.525e10, 0.923, 2.53, Some(0.893), 2.43),
    row(4.7e10, 0.830, 2.84, Some(0.803), 2.73),
    row(5.875e10, 0.766, 3.11, Some(0.740), 2.98),
    row(1.175e11, 0.596, 4.08, Some(0.578), 3.91),
    row(2.35e11, 0.467, 5.30, Some(0.455), 5.08),
    row(4.7e11, 0.371, 6.82, Some(0.362), 6.54),
    row(7.05e11, 0.325, 7.86, Some(0.318), 7.55),
    row(1.175e12, 0.276, 9.36, Some(0.271), 9.01),
    row(2.35e12, 0.224, 11.75, Some(0.221), 11.35),
    row(4.7e12, 0.183, 14.62, Some(0.181), 14.17),
];

pub const LAI: &[ComparisonRow] = &[
    row(1e11, 0.632, 3.84, Some(0.61), 3.67),
    row(5e11, 0.364, 6.97, Some(0.35), 6.69),
    row(1e12, 0.291, 8.86, Some(0.280), 8.53),
    row(2e12, 0.235, 11.16, Some(0.230), 10.78),
    row(5e12, 0.180, 14.90, Some(0.180), 14.46),
    row(8e12, 0.158, 17.18, Some(0.15), 16.71),
    row(1e13, 0.148, 18.35, Some(0.15), 17.88),
    row(1e14, 0.084, 34.40, Some(0.085), 33.83),
    row(5e14, 0.060, 50.60, Some(0.060), 50.07),
];

pub const HEYL: &[ComparisonRow] = &[
    row(9.4e12, 0.151, 18.02, None, 17.52),
    row(2.35e13, 0.119, 23.43, None, 22.89),
    row(4.7e13, 0.100, 28.29, None, 27.69),
    row(9.4e13, 0.085, 33.87, None, 33.28),
    row(2.35e14, 0.070, 42.44, None, 41.73),
    row(4.7e14, 0.061, 49.89, None, 49.14),
];

/// Equilibrium of the ion with two nuclei of charge `Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeRow {
    pub field_gauss: f64,
    pub charge: f64,
    pub distance: f64,
    pub binding: f64,
}

const fn zrow(field_gauss: f64, charge: f64, distance: f64, binding: f64) -> ChargeRow {
    ChargeRow {
        field_gauss,
        charge,
        distance,
        binding,
    }
}

/// Charge study, `Z > 1` entries. The `(1e13, 1.4)` distance is printed as
/// "0168" in the source and read as 0.168.
pub const CHARGE_STUDY: &[ChargeRow] = &[
    zrow(1e10, 1.2, 1.718, 1.71),
    zrow(1e11, 1.2, 0.712, 4.51),
    zrow(1e11, 1.4, 0.810, 5.19),
    zrow(1e12, 1.2, 0.318, 10.58),
    zrow(1e12, 1.4, 0.353, 12.27),
    zrow(1e12, 1.6, 0.400, 13.99),
    zrow(1e12, 1.8, 0.445, 15.78),
    zrow(1e13, 1.2, 0.157, 22.23),
    zrow(1e13, 1.4, 0.168, 25.98),
    zrow(1e13, 1.6, 0.183, 29.67),
    zrow(1e13, 1.8, 0.202, 33.39),
    zrow(1e13, 2.0, 0.227, 37.26),
    zrow(1e14, 1.2, 0.087, 42.33),
    zrow(1e14, 1.4, 0.090, 50.05),
    zrow(1e14, 1.6, 0.095, 57.55),
    zrow(1e14, 1.8, 0.101, 64.88),
    zrow(1e14, 2.0, 0.108, 72.14),
    zrow(1e14, 2.2, 0.118, 79.44),
    zrow(1e14, 2.4, 0.131, 86.98),
];

/// Published upper bounds on the two charge thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalBound {
    pub field_gauss: f64,
    pub bound_state: f64,
    pub critical: f64,
}

pub const CRITICAL_BOUNDS: &[CriticalBound] = &[
    CriticalBound {
        field_gauss: 1e10,
        bound_state: 1.32,
        critical: 1.58,
    },
    CriticalBound {
        field_gauss: 1e11,
        bound_state: 1.55,
        critical: 2.05,
    },
    CriticalBound {
        field_gauss: 1e12,
        bound_state: 1.80,
        critical: 2.60,
    },
    CriticalBound {
        field_gauss: 1e13,
        bound_state: 2.10,
        critical: 3.10,
    },
    CriticalBound {
        field_gauss: 1e14,
        bound_state: 2.43,
        critical: 3.50,
    },
];

/// Fields spanning five decades, used for trend checks and figure data.
pub const DECADE_FIELDS: [f64; 5] = [1e10, 1e11, 1e12, 1e13, 1e14];
