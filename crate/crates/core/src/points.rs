//! Point sets on a declared ambient interval, residue-class selection,
//! and binary indicator sequences.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Sorted finite set of real positions with a declared ambient interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    positions: Vec<f64>,
    ambient_lo: f64,
    ambient_hi: f64,
}

impl PointSet {
    pub fn new(positions: Vec<f64>, ambient_lo: f64, ambient_hi: f64) -> Result<Self> {
        if !(ambient_lo < ambient_hi) {
            return Err(Error::Parameter(format!(
                "ambient interval [{ambient_lo}, {ambient_hi}] is empty"
            )));
        }
        for w in positions.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Integrity(format!(
                    "positions not strictly ascending near {}",
                    w[0]
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (positions.first(), positions.last()) {
            if first < ambient_lo || last > ambient_hi {
                return Err(Error::Domain(format!(
                    "positions [{first}, {last}] escape ambient [{ambient_lo}, {ambient_hi}]"
                )));
            }
        }
        Ok(Self {
            positions,
            ambient_lo,
            ambient_hi,
        })
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn ambient_lo(&self) -> f64 {
        self.ambient_lo
    }

    pub fn ambient_hi(&self) -> f64 {
        self.ambient_hi
    }

    pub fn ambient_width(&self) -> f64 {
        self.ambient_hi - self.ambient_lo
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Subset whose members satisfy `p mod modulus ∈ residues`.
    /// Ambient interval is preserved. Positions must be integral.
    pub fn select_residues(&self, spec: &ResidueSpec) -> Result<PointSet> {
        let mut kept = Vec::new();
        for &p in &self.positions {
            if p.fract() != 0.0 || p < 0.0 {
                return Err(Error::Domain(format!(
                    "residue selection needs nonnegative integer positions, got {p}"
                )));
            }
            let r = (p as u64) % spec.modulus;
            if spec.residues.contains(&r) {
                kept.push(p);
            }
        }
        PointSet::new(kept, self.ambient_lo, self.ambient_hi)
    }

    /// Indicator bits for n = 1..N: bit n-1 is 1 iff n is a member.
    pub fn indicator_sequence(&self, n: usize) -> Result<BitSequence> {
        let mut bits = vec![false; n];
        for &p in &self.positions {
            if p.fract() != 0.0 || p < 0.0 {
                return Err(Error::Domain(format!(
                    "indicator sequence needs integer positions, got {p}"
                )));
            }
            let v = p as usize;
            if (1..=n).contains(&v) {
                bits[v - 1] = true;
            }
        }
        BitSequence::new(bits)
    }

    /// CSV with a single `position` header line.
    pub fn to_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "position")?;
        for p in &self.positions {
            writeln!(w, "{p}")?;
        }
        Ok(())
    }

    pub fn from_csv<R: BufRead>(r: R, ambient_lo: f64, ambient_hi: f64) -> Result<Self> {
        let mut positions = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || (i == 0 && t == "position") {
                continue;
            }
            let v: f64 = t.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a number, got {t:?}"),
            })?;
            positions.push(v);
        }
        PointSet::new(positions, ambient_lo, ambient_hi)
    }
}

/// Residue classes mod a positive modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSpec {
    pub modulus: u64,
    pub residues: BTreeSet<u64>,
}

impl ResidueSpec {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Parameter("modulus must be positive".into()));
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if residues.is_empty() {
            return Err(Error::Parameter("residue set must be nonempty".into()));
        }
        if let Some(&r) = residues.iter().next_back() {
            if r >= modulus {
                return Err(Error::Parameter(format!(
                    "residue {r} not below modulus {modulus}"
                )));
            }
        }
        Ok(Self { modulus, residues })
    }

    /// The mod-16 class {1, 5, 9, 13} studied throughout.
    pub fn mod16_default() -> Self {
        Self::new(16, [1, 5, 9, 13]).expect("static spec is valid")
    }
}

/// Finite 0/1 sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyInput("bit sequence must have length >= 1".into()));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Single line of ASCII 0/1.
    pub fn to_ascii(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_ascii(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.trim().chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("invalid bit character {c:?} at column {}", i + 1),
                    })
                }
            }
        }
        BitSequence::new(bits)
    }
}
