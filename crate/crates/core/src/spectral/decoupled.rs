use serde::{Deserialize, Serialize};

use super::{Frequencies, LevelSpec, SheetLabel, Sign};
use crate::scalar::Scalar;

/// One state of the uncoupled pair, `E = sx(2kx+1)ν + sy(2ky+1)ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoupledState<T> {
    pub kx: u32,
    pub ky: u32,
    pub sx: Sign,
    pub sy: Sign,
    /// Integer coefficient of `ν`, `sx·(2kx+1)`.
    pub nu_coeff: i64,
    /// Integer coefficient of `ω`, `sy·(2ky+1)`.
    pub omega_coeff: i64,
    pub energy: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Quartet,
    Octet,
}

/// The decoupled states continued into each other on the surface of one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoupledGroup<T> {
    pub level: LevelSpec,
    pub kind: GroupKind,
    /// Each state with the sheet labels whose `g = 0` value it is
    /// (two labels on a quartet, one on an octet).
    pub states: Vec<(DecoupledState<T>, Vec<SheetLabel>)>,
}

impl<T: Scalar> DecoupledGroup<T> {
    pub fn energies(&self) -> Vec<T> {
        self.states.iter().map(|(s, _)| s.energy).collect()
    }
}

/// All decoupled states with `kx + ky = n`, grouped by `m = |kx − ky|`.
pub fn decoupled_spectrum<T: Scalar>(freqs: &Frequencies<T>, n: u32) -> Vec<DecoupledGroup<T>> {
    LevelSpec::all(n)
        .map(|level| {
            let m = level.m;
            let kind = if m == 0 { GroupKind::Quartet } else { GroupKind::Octet };
            let mut pairs: Vec<(u32, u32)> = vec![((n + m) / 2, (n - m) / 2)];
            if m > 0 {
                pairs.push(((n - m) / 2, (n + m) / 2));
            }
            let mut states = Vec::with_capacity(8);
            for (kx, ky) in pairs {
                for sx in Sign::BOTH {
                    for sy in Sign::BOTH {
                        let nu_coeff = sx.as_i64() * (2 * i64::from(kx) + 1);
                        let omega_coeff = sy.as_i64() * (2 * i64::from(ky) + 1);
                        let energy = T::from_i64(nu_coeff).unwrap() * freqs.nu()
                            + T::from_i64(omega_coeff).unwrap() * freqs.omega();
                        let state = DecoupledState { kx, ky, sx, sy, nu_coeff, omega_coeff, energy };
                        let diff = if kx >= ky { Sign::Plus } else { Sign::Minus };
                        let label = SheetLabel::from_decoupled(freqs, sx, sy, diff);
                        let labels = if m == 0 { vec![label, label.twin()] } else { vec![label] };
                        states.push((state, labels));
                    }
                }
            }
            DecoupledGroup { level, kind, states }
        })
        .collect()
}
