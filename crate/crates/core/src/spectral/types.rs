use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance below which `ν` and `ω` count as equal.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    #[inline]
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of `x`, with zero counted as `Plus`.
    #[inline]
    pub fn of<T: Scalar>(x: T) -> Sign {
        if x < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' | 'p' => Some(Sign::Plus),
            '-' | 'm' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Natural frequencies `ν` (x oscillator) and `ω` (y oscillator).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frequencies<T> {
    nu: T,
    omega: T,
}

impl<T: Scalar> Frequencies<T> {
    pub fn new(nu: T, omega: T) -> Result<Self> {
        if !(nu.is_finite() && omega.is_finite()) || nu <= T::zero() || omega <= T::zero() {
            return Err(Error::invalid(format!(
                "frequencies must be finite and positive (nu = {nu}, omega = {omega})"
            )));
        }
        Ok(Frequencies { nu, omega })
    }

    #[inline]
    pub fn nu(&self) -> T {
        self.nu
    }

    #[inline]
    pub fn omega(&self) -> T {
        self.omega
    }

    /// `|ν − ω| ≤ 1e-9·max(ν, ω)`.
    pub fn is_equal(&self) -> bool {
        (self.nu - self.omega).abs() <= T::lit(DEGENERACY_TOLERANCE) * self.nu.max(self.omega)
    }

    /// Sign of `ν − ω`; equal frequencies count as `Plus`.
    pub fn detuning_sign(&self) -> Sign {
        if self.is_equal() {
            Sign::Plus
        } else {
            Sign::of(self.nu - self.omega)
        }
    }

    /// `2νω`, where the real-axis branch points sit.
    pub fn real_threshold(&self) -> T {
        T::lit(2.0) * self.nu * self.omega
    }

    /// `|ν² − ω²|`, the distance of the imaginary-axis branch points from the origin.
    pub fn imaginary_threshold(&self) -> T {
        (self.nu * self.nu - self.omega * self.omega).abs()
    }
}

/// Total excitation `n` and constituent difference `m` (`m ≤ n`, `m ≡ n mod 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelSpec {
    pub n: u32,
    pub m: u32,
}

impl LevelSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if m > n || !(n - m).is_multiple_of(2) {
            return Err(Error::invalid(format!("m must satisfy m <= n and m = n (mod 2), got n = {n}, m = {m}")));
        }
        Ok(LevelSpec { n, m })
    }

    pub const fn ground() -> Self {
        LevelSpec { n: 0, m: 0 }
    }

    /// Difference numbers admitted at total excitation `n`, ascending.
    pub fn allowed_m(n: u32) -> impl Iterator<Item = u32> {
        (n % 2..=n).step_by(2)
    }

    /// All levels with total excitation `n`.
    pub fn all(n: u32) -> impl Iterator<Item = LevelSpec> {
        Self::allowed_m(n).map(move |m| LevelSpec { n, m })
    }

    /// `m = 0`: the two mirror quartets coincide and sheets pair up in `sB`.
    pub fn is_quartet(&self) -> bool {
        self.m == 0
    }
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.n, self.m)
    }
}

/// Sign choices selecting one of the eight sheets of `E_n(g)`.
///
/// * `inner`: `+` puts the `ν² + ω² + S` radical in the `(n+1)`-weighted slot
///   (the `E_n⁺` family), `−` puts `ν² + ω² − S` there (`E_n⁻`).
/// * `outer` (sA): sign of the `(n+1)`-weighted radical.
/// * `diff` (sB): sign of the `m`-weighted radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheetLabel {
    pub inner: Sign,
    pub outer: Sign,
    pub diff: Sign,
}

impl SheetLabel {
    pub const fn new(inner: Sign, outer: Sign, diff: Sign) -> Self {
        SheetLabel { inner, outer, diff }
    }

    /// The conventional sheet `(+, +, +)`.
    pub const CONVENTIONAL: SheetLabel = SheetLabel::new(Sign::Plus, Sign::Plus, Sign::Plus);

    pub const ALL: [SheetLabel; 8] = {
        use Sign::{Minus as M, Plus as P};
        [
            SheetLabel::new(P, P, P),
            SheetLabel::new(P, P, M),
            SheetLabel::new(P, M, P),
            SheetLabel::new(P, M, M),
            SheetLabel::new(M, P, P),
            SheetLabel::new(M, P, M),
            SheetLabel::new(M, M, P),
            SheetLabel::new(M, M, M),
        ]
    };

    /// Position in [`SheetLabel::ALL`].
    pub fn index(self) -> usize {
        let bit = |s: Sign| usize::from(s == Sign::Minus);
        bit(self.inner) * 4 + bit(self.outer) * 2 + bit(self.diff)
    }

    /// Label whose `g = 0` value is the decoupled state with phases `sx`, `sy`
    /// and `sign(kx − ky) = diff`.
    ///
    /// Same phases (`sx = sy`) land on the `inner = +` family; mixed phases
    /// on `inner = −`. For `m = 0` the `diff` sign is immaterial.
    pub fn from_decoupled<T: Scalar>(freqs: &Frequencies<T>, sx: Sign, sy: Sign, diff: Sign) -> SheetLabel {
        let detuning = freqs.detuning_sign();
        if sx == sy {
            SheetLabel::new(Sign::Plus, sx, sx * diff * detuning)
        } else {
            SheetLabel::new(Sign::Minus, sx * detuning, sx * diff)
        }
    }

    /// Ground-state sheet for phases `(sx, sy)`.
    pub fn ground<T: Scalar>(freqs: &Frequencies<T>, sx: Sign, sy: Sign) -> SheetLabel {
        Self::from_decoupled(freqs, sx, sy, Sign::Plus)
    }

    /// The sheet with the same value when `m = 0` (`sB` flipped).
    pub fn twin(self) -> SheetLabel {
        SheetLabel { diff: self.diff.flip(), ..self }
    }

    /// `true` when the decoupled limit of this sheet has both oscillators in
    /// the same (conventional or unconventional) phase.
    pub fn is_same_phase(self) -> bool {
        self.inner == Sign::Plus
    }
}

impl fmt::Display for SheetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.inner, self.outer, self.diff)
    }
}

impl FromStr for SheetLabel {
    type Err = Error;

    /// Accepts `"+-+"`, `"+,-,+"` or `"(+,-,+)"`.
    fn from_str(s: &str) -> Result<Self> {
        let signs: Vec<Sign> = s
            .chars()
            .filter(|c| !matches!(c, ',' | '(' | ')' | ' '))
            .map(|c| Sign::from_symbol(c).ok_or(()))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid(format!("bad sheet label {s:?}")))?;
        match signs[..] {
            [inner, outer, diff] => Ok(SheetLabel { inner, outer, diff }),
            _ => Err(Error::invalid(format!("sheet label needs three signs, got {s:?}"))),
        }
    }
}

impl Serialize for SheetLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SheetLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
