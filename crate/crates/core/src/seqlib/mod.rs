//! Binary spreading sequences and their correlation functions.
//!
//! Three families live here: complete complementary codes (CCC), which carry
//! the stego payload, and the m-sequence / Gold baselines they are compared
//! against. Chips are small integers (`±1` for every generated code) so all
//! correlations are exact in `i64`.

mod ccc;
mod codefile;
mod correlation;
mod lfsr;

pub use ccc::{generate_ccc, sylvester_hadamard, validate_ccc, CccValidation, Violation};
pub use codefile::{read_code, write_code};
pub use correlation::{
    aperiodic_correlation, correlation_sum, periodic_correlation, CorrelationMode, PackedSequence,
};
pub use lfsr::{generate_gold, generate_msequence, LfsrSpec};

use crate::error::{Error, Result};

/// A finite chip sequence, zero-extended outside `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    chips: Vec<i8>,
}

impl Sequence {
    pub fn new(chips: Vec<i8>) -> Result<Self> {
        if chips.is_empty() {
            return Err(Error::InvalidSequence(
                "sequence must hold at least one chip".into(),
            ));
        }
        Ok(Self { chips })
    }

    /// Parses the `+`/`-` shorthand, e.g. `"-+--"`.
    pub fn from_signs(signs: &str) -> Result<Self> {
        let chips = signs
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidSequence(format!("unexpected sign {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(chips)
    }

    pub fn chips(&self) -> &[i8] {
        &self.chips
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.chips.iter().all(|&c| c == 1 || c == -1)
    }

    pub fn energy(&self) -> i64 {
        self.chips
            .iter()
            .map(|&c| i64::from(c) * i64::from(c))
            .sum()
    }

    /// Chip at `index`, or 0 outside the support.
    pub fn at(&self, index: isize) -> i8 {
        if index < 0 {
            return 0;
        }
        self.chips.get(index as usize).copied().unwrap_or(0)
    }

    /// Cyclic shift to the right by `shift`: `out[u] = self[(u - shift) mod len]`.
    pub fn rotated(&self, shift: usize) -> Self {
        let len = self.len();
        let shift = shift % len;
        let chips = (0..len)
            .map(|u| self.chips[(u + len - shift) % len])
            .collect();
        Self { chips }
    }
}

/// One auto-complementary code: `n` sequences of a common length `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFamily {
    index: usize,
    members: Vec<Sequence>,
}

impl CodeFamily {
    pub fn new(index: usize, members: Vec<Sequence>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::ShapeMismatch(format!(
                "family {index} has no members"
            )));
        };
        let len = first.len();
        if let Some(bad) = members.iter().find(|s| s.len() != len) {
            return Err(Error::ShapeMismatch(format!(
                "family {index}: member lengths {len} and {}",
                bad.len()
            )));
        }
        Ok(Self { index, members })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn members(&self) -> &[Sequence] {
        &self.members
    }

    pub fn member(&self, j: usize) -> &Sequence {
        &self.members[j]
    }

    /// Number of members `n`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Common member length `l`.
    pub fn member_len(&self) -> usize {
        self.members[0].len()
    }
}

/// An `(m, n, l)` complete complementary code.
///
/// Construction only checks shapes; use [`validate_ccc`] to check the
/// correlation property. [`generate_ccc`] always validates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteComplementaryCode {
    families: Vec<CodeFamily>,
    amplitude: i64,
}

impl CompleteComplementaryCode {
    pub fn from_families(families: Vec<CodeFamily>) -> Result<Self> {
        let Some(first) = families.first() else {
            return Err(Error::ShapeMismatch("code has no families".into()));
        };
        let (n, l) = (first.size(), first.member_len());
        if let Some(bad) = families
            .iter()
            .find(|f| f.size() != n || f.member_len() != l)
        {
            return Err(Error::ShapeMismatch(format!(
                "family {} is {}x{}, expected {n}x{l}",
                bad.index(),
                bad.size(),
                bad.member_len()
            )));
        }
        let amplitude = first.members().iter().map(Sequence::energy).sum();
        Ok(Self {
            families,
            amplitude,
        })
    }

    /// Wraps a single sequence as a degenerate `(1, 1, l)` code. Used for the
    /// m-sequence and Gold baselines.
    pub fn single(sequence: Sequence) -> Self {
        let amplitude = sequence.energy();
        let family = CodeFamily {
            index: 0,
            members: vec![sequence],
        };
        Self {
            families: vec![family],
            amplitude,
        }
    }

    pub fn families(&self) -> &[CodeFamily] {
        &self.families
    }

    pub fn family(&self, i: usize) -> &CodeFamily {
        &self.families[i]
    }

    /// `(m, n, l)`.
    pub fn params(&self) -> (usize, usize, usize) {
        let first = &self.families[0];
        (self.families.len(), first.size(), first.member_len())
    }

    /// Zero-shift peak `A` of the correlation sum; `n * l` for binary chips.
    pub fn amplitude(&self) -> i64 {
        self.amplitude
    }

    pub fn is_binary(&self) -> bool {
        self.families
            .iter()
            .flat_map(|f| f.members())
            .all(Sequence::is_binary)
    }
}
