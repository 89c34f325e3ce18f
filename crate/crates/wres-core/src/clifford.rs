//! Abstract Clifford algebra over Q(i) generated by c(e_1..e_7) and
//! cbar(e_1..e_7): all fourteen generators mutually anticommute, c-generators
//! square to -1, cbar-generators to +1.
//!
//! Words are bitmasks in a fixed global order (cbar_1 < .. < cbar_7 <
//! c_1 < .. < c_7); multiplication computes the reordering parity by counting
//! crossings. The trace functional returns 8 times the coefficient of the
//! empty word, the normalization used for the 7-dimensional boundary
//! computation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalars::GaussianRational;

pub const DIM: u8 = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliffordError {
    #[error("generator index {0} out of range 1..=7")]
    IndexOutOfRange(u8),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorKind {
    /// c(e_i), squares to -1
    C,
    /// cbar(e_i), squares to +1
    Cbar,
}

/// Canonical word: cbar factors (ascending index) then c factors (ascending).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CliffordWord {
    /// bits 0..=6: cbar_1..cbar_7
    pub bar_mask: u8,
    /// bits 0..=6: c_1..c_7
    pub plain_mask: u8,
}

impl CliffordWord {
    pub const IDENTITY: CliffordWord = CliffordWord { bar_mask: 0, plain_mask: 0 };

    pub fn is_identity(&self) -> bool {
        self.bar_mask == 0 && self.plain_mask == 0
    }

    pub fn generator_count(&self) -> u32 {
        self.bar_mask.count_ones() + self.plain_mask.count_ones()
    }

    fn combined(&self) -> u16 {
        (self.bar_mask as u16) | ((self.plain_mask as u16) << 7)
    }

    fn from_combined(bits: u16) -> Self {
        CliffordWord { bar_mask: (bits & 0x7f) as u8, plain_mask: ((bits >> 7) & 0x7f) as u8 }
    }

    /// Product of two canonical words: resulting word, sign and square factors.
    pub fn mul(&self, rhs: &CliffordWord) -> (i8, CliffordWord) {
        let a = self.combined();
        let b = rhs.combined();
        // Crossings needed to merge-sort the concatenation a then b: each
        // generator of b moves left past every generator of a with a larger
        // position in the global order.
        let mut swaps = 0u32;
        let mut bits = b;
        while bits != 0 {
            let i = bits.trailing_zeros();
            swaps += (a >> (i + 1)).count_ones();
            bits &= bits - 1;
        }
        // Colliding c-generators contribute -1 each; cbar collisions +1.
        let plain_collisions = (self.plain_mask & rhs.plain_mask).count_ones();
        let total = swaps + plain_collisions;
        let sign = if total.is_multiple_of(2) { 1 } else { -1 };
        (sign, CliffordWord::from_combined(a ^ b))
    }

    pub fn render(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in 0..7 {
            if self.bar_mask & (1 << i) != 0 {
                parts.push(format!("cb{}", i + 1));
            }
        }
        for i in 0..7 {
            if self.plain_mask & (1 << i) != 0 {
                parts.push(format!("c{}", i + 1));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Debug for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Finite Q(i)-linear combination of canonical words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CliffordElement {
    terms: BTreeMap<CliffordWord, GaussianRational>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_word(CliffordWord::IDENTITY, GaussianRational::one())
    }

    pub fn from_word(word: CliffordWord, coeff: GaussianRational) -> Self {
        let mut e = Self::zero();
        e.add_word(word, coeff);
        e
    }

    /// Single generator c(e_index) or cbar(e_index).
    pub fn generator(kind: GeneratorKind, index: u8) -> Result<Self, CliffordError> {
        if !(1..=DIM).contains(&index) {
            return Err(CliffordError::IndexOutOfRange(index));
        }
        let bit = 1u8 << (index - 1);
        let word = match kind {
            GeneratorKind::C => CliffordWord { bar_mask: 0, plain_mask: bit },
            GeneratorKind::Cbar => CliffordWord { bar_mask: bit, plain_mask: 0 },
        };
        Ok(Self::from_word(word, GaussianRational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_word(&mut self, word: CliffordWord, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(GaussianRational::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CliffordWord, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn word_count(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_word(*w, v.clone() * c.clone());
        }
        out
    }

    /// Normalized trace: 8 times the coefficient of the empty word. Every
    /// non-empty canonical word is traceless.
    pub fn trace(&self) -> GaussianRational {
        self.terms
            .get(&CliffordWord::IDENTITY)
            .map(|c| c.scale(&crate::scalars::rat(8, 1)))
            .unwrap_or_else(GaussianRational::zero)
    }
}

impl Add for CliffordElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_word(w, c);
        }
        out
    }
}

impl Sub for CliffordElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_word(w, -c);
        }
        out
    }
}

impl Mul for CliffordElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let (sign, w) = wa.mul(wb);
                let mut coeff = ca.clone() * cb.clone();
                if sign < 0 {
                    coeff = -coeff;
                }
                out.add_word(w, coeff);
            }
        }
        out
    }
}

impl Neg for CliffordElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({}) {}", c, w.render()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// c(e_i), panicking on a bad index; convenience for internal table code.
pub fn c(i: u8) -> CliffordElement {
    CliffordElement::generator(GeneratorKind::C, i).expect("index in range")
}

/// cbar(e_i).
pub fn cb(i: u8) -> CliffordElement {
    CliffordElement::generator(GeneratorKind::Cbar, i).expect("index in range")
}
