//! Phase-free Pauli operators on up to 64 qubits.

use core::fmt;
use core::ops::Mul;

/// Maximum number of qubits a [`PauliOperator`] can address.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PauliError {
    #[error("operator width {0} exceeds {MAX_QUBITS} qubits")]
    TooWide(usize),
    #[error("mask has bits set beyond qubit {width}")]
    MaskOutOfRange { width: usize },
    #[error("width mismatch: {left} vs {right} qubits")]
    WidthMismatch { left: usize, right: usize },
    #[error("qubit {qubit} out of range for a {width}-qubit operator")]
    QubitOutOfRange { qubit: usize, width: usize },
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Index encoding used for fault enumeration: bit 0 = X, bit 1 = Z.
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An `n`-qubit Pauli operator with phases dropped.
///
/// Bit `q` of `x_mask` (`z_mask`) is set when the operator has an X (Z)
/// component on qubit `q`; Y sets both.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x_mask: u64,
    z_mask: u64,
}

fn width_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        Self::from_masks(n, 0, 0)
    }

    pub fn from_masks(n: usize, x_mask: u64, z_mask: u64) -> Result<Self, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooWide(n));
        }
        let m = width_mask(n);
        if x_mask & !m != 0 || z_mask & !m != 0 {
            return Err(PauliError::MaskOutOfRange { width: n });
        }
        Ok(Self { n, x_mask, z_mask })
    }

    /// A single-qubit Pauli `p` acting on `qubit`.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<Self, PauliError> {
        if qubit >= n {
            return Err(PauliError::QubitOutOfRange { qubit, width: n });
        }
        let (x, z) = p.bits();
        Self::from_masks(n, (x as u64) << qubit, (z as u64) << qubit)
    }

    /// Parses strings such as `"XIZZY"`; qubit 0 is the leftmost letter.
    pub fn parse(s: &str) -> Option<Self> {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut n = 0usize;
        for (q, ch) in s.chars().enumerate() {
            let p = match ch {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return None,
            };
            if q >= MAX_QUBITS {
                return None;
            }
            let (px, pz) = p.bits();
            x |= (px as u64) << q;
            z |= (pz as u64) << q;
            n = q + 1;
        }
        Self::from_masks(n, x, z).ok()
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x_mask >> qubit & 1 == 1, self.z_mask >> qubit & 1 == 1)
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    /// Product up to phase. Errors when widths differ.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n != other.n {
            return Err(PauliError::WidthMismatch { left: self.n, right: other.n });
        }
        Ok(Self {
            n: self.n,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
        })
    }

    /// Symplectic inner product; `true` when the operators commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        let overlap = (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        overlap.is_multiple_of(2)
    }

    /// X part only.
    pub fn x_part(&self) -> Self {
        Self { n: self.n, x_mask: self.x_mask, z_mask: 0 }
    }

    /// Z part only.
    pub fn z_part(&self) -> Self {
        Self { n: self.n, x_mask: 0, z_mask: self.z_mask }
    }
}

impl Mul for PauliOperator {
    type Output = PauliOperator;

    /// Panics on width mismatch; use [`PauliOperator::try_mul`] to handle it.
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("Pauli width mismatch")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}
