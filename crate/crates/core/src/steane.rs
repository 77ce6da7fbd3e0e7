//! The `[7,1,3]` Steane code.
//!
//! Both sectors use the Hamming(7,4) parity-check matrix whose column `q` is
//! the binary expansion of `q + 1`. Stabilizer generator `i` (X- or Z-type)
//! acts on every qubit whose label has bit `i` set.

use crate::pauli::PauliOperator;

pub const N: usize = 7;
pub const K: usize = 1;
pub const D: usize = 3;

/// Support masks of the three check rows.
pub const CHECK_MASKS: [u64; 3] = {
    let mut rows = [0u64; 3];
    let mut q = 0;
    while q < N {
        let label = q + 1;
        let mut i = 0;
        while i < 3 {
            if label >> i & 1 == 1 {
                rows[i] |= 1 << q;
            }
            i += 1;
        }
        q += 1;
    }
    rows
};

const ALL: u64 = (1 << N) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("expected a {N}-qubit operator, got {0} qubits")]
    Dimension(usize),
    #[error("residual has nonzero syndrome (x={x:03b}, z={z:03b}); correct it first")]
    NonzeroSyndrome { x: u8, z: u8 },
}

/// Three syndrome bits per sector.
///
/// `x` is computed against the Z-type checks and detects X components; `z`
/// against the X-type checks and detects Z components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Syndrome {
    pub x: u8,
    pub z: u8,
}

impl Syndrome {
    pub fn is_trivial(&self) -> bool {
        self.x == 0 && self.z == 0
    }
}

/// Static description of the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDefinition {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub x_stabilizers: [PauliOperator; 3],
    pub z_stabilizers: [PauliOperator; 3],
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
}

impl CodeDefinition {
    pub fn steane() -> Self {
        let op = |x: u64, z: u64| PauliOperator::from_masks(N, x, z).expect("7-qubit masks");
        Self {
            n: N,
            k: K,
            d: D,
            x_stabilizers: CHECK_MASKS.map(|m| op(m, 0)),
            z_stabilizers: CHECK_MASKS.map(|m| op(0, m)),
            logical_x: op(ALL, 0),
            logical_z: op(0, ALL),
        }
    }

    /// The six generators, X-type first.
    pub fn stabilizers(&self) -> [PauliOperator; 6] {
        let [a, b, c] = self.x_stabilizers;
        let [d, e, f] = self.z_stabilizers;
        [a, b, c, d, e, f]
    }
}

fn parity(v: u64) -> u8 {
    (v.count_ones() & 1) as u8
}

/// Syndrome of a 7-bit mask against the check rows.
pub fn mask_syndrome(mask: u64) -> u8 {
    let mut s = 0u8;
    for (i, row) in CHECK_MASKS.iter().enumerate() {
        s |= parity(mask & row) << i;
    }
    s
}

pub fn syndrome(e: &PauliOperator) -> Result<Syndrome, CodeError> {
    if e.num_qubits() != N {
        return Err(CodeError::Dimension(e.num_qubits()));
    }
    Ok(Syndrome { x: mask_syndrome(e.x_mask()), z: mask_syndrome(e.z_mask()) })
}

/// Lookup-table decoder: syndrome value to the qubit to flip.
///
/// The standard table maps syndrome `s != 0` to qubit `s - 1`. Tables can be
/// altered (see [`Decoder::with_swapped`]) to check that the fault scan
/// notices a broken indicator block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decoder {
    table: [Option<u8>; 8],
}

impl Default for Decoder {
    fn default() -> Self {
        Self::standard()
    }
}

impl Decoder {
    pub const fn standard() -> Self {
        let mut table = [None; 8];
        let mut s = 1;
        while s < 8 {
            table[s] = Some((s - 1) as u8);
            s += 1;
        }
        Self { table }
    }

    /// Same table with the entries for syndromes `a` and `b` exchanged.
    pub fn with_swapped(mut self, a: u8, b: u8) -> Self {
        self.table.swap(a as usize & 7, b as usize & 7);
        self
    }

    pub fn decode(&self, syn: u8) -> Option<usize> {
        self.table[syn as usize & 7].map(usize::from)
    }

    /// Correction mask (7 bits) for a bit pattern read off a code word.
    pub fn correction_mask(&self, word_bits: u64) -> u64 {
        self.decode(mask_syndrome(word_bits)).map_or(0, |q| 1 << q)
    }

    /// Correction used by the zero-purification indicator: besides the
    /// single flipped bit it also undoes a logical parity flip, so a word read
    /// off a `|0>_L` is returned to an even codeword.
    pub fn parity_correction_mask(&self, word_bits: u64) -> u64 {
        let single = self.correction_mask(word_bits);
        if parity(word_bits ^ single) == 1 {
            single ^ ALL
        } else {
            single
        }
    }
}

/// Standard-table decode of a 3-bit syndrome.
pub fn decode_syndrome(syn: u8) -> Option<usize> {
    Decoder::standard().decode(syn)
}

/// Applies one round of ideal correction in both sectors.
pub fn correct(e: &PauliOperator) -> Result<PauliOperator, CodeError> {
    let s = syndrome(e)?;
    let d = Decoder::standard();
    let fx = d.decode(s.x).map_or(0, |q| 1u64 << q);
    let fz = d.decode(s.z).map_or(0, |q| 1u64 << q);
    Ok(PauliOperator::from_masks(N, e.x_mask() ^ fx, e.z_mask() ^ fz).expect("7-qubit masks"))
}

/// `true` when a syndrome-free residual acts as a nontrivial logical operator.
///
/// With zero syndrome, the X part lies in the Hamming code; it is a
/// stabilizer exactly when it has even weight, i.e. when it commutes with
/// `Z^7`. The Z part is symmetric.
pub fn is_logical_error(residual: &PauliOperator) -> Result<bool, CodeError> {
    let s = syndrome(residual)?;
    if !s.is_trivial() {
        return Err(CodeError::NonzeroSyndrome { x: s.x, z: s.z });
    }
    let code = CodeDefinition::steane();
    Ok(!residual.commutes_with(&code.logical_x) || !residual.commutes_with(&code.logical_z))
}
