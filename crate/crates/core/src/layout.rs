//! Protection-block geometry on the width-`L+1` stripe.

use num_bigint::BigUint;

use crate::steane;

/// How logical zeros reach the error-correction block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockVariant {
    /// Zeros are supplied by adjacent circuitry: 27 slots.
    Minimal27,
    /// Zeros are prepared and purified inside the block: 46 slots.
    WithPrep46,
}

impl BlockVariant {
    pub const ALL: [BlockVariant; 2] = [BlockVariant::Minimal27, BlockVariant::WithPrep46];

    /// Block length in level-`(L-1)` qubits.
    pub fn block_length(self) -> u32 {
        match self {
            BlockVariant::Minimal27 => 27,
            BlockVariant::WithPrep46 => 46,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockVariant::Minimal27 => "minimal-27",
            BlockVariant::WithPrep46 => "with-prep-46",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotRole {
    /// One of the seven qubits of the protected code word.
    Data,
    /// One of the seven qubits of a logical-zero word.
    Zero,
    /// Indicator-block ancilla.
    Ancilla,
}

/// A contiguous run of slots with one role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub role: SlotRole,
    pub len: u32,
}

const fn seg(role: SlotRole, len: u32) -> Segment {
    Segment { role, len }
}

// The 27-slot order is a choice: only the role counts are fixed. It mirrors
// the 46-slot sequence.
const MINIMAL_27: [Segment; 5] = [
    seg(SlotRole::Data, 7),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Ancilla, 3),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Ancilla, 3),
];

const WITH_PREP_46: [Segment; 8] = [
    seg(SlotRole::Data, 7),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Ancilla, 3),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Ancilla, 4),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Zero, 7),
    seg(SlotRole::Ancilla, 4),
];

/// Slot roles along one row of a protection block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockMap {
    pub variant: BlockVariant,
    pub segments: &'static [Segment],
}

impl BlockMap {
    pub fn len(&self) -> u32 {
        self.segments.iter().map(|s| s.len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn roles(&self) -> impl Iterator<Item = SlotRole> + '_ {
        self.segments.iter().flat_map(|s| core::iter::repeat_n(s.role, s.len as usize))
    }

    pub fn count(&self, role: SlotRole) -> u32 {
        self.segments.iter().filter(|s| s.role == role).map(|s| s.len).sum()
    }

    /// First column of each zero word, in order.
    pub fn zero_word_offsets(&self) -> impl Iterator<Item = u32> + '_ {
        self.segments.iter().scan(0u32, |col, s| {
            let start = *col;
            *col += s.len;
            Some((s.role, start))
        })
        .filter(|(r, _)| *r == SlotRole::Zero)
        .map(|(_, c)| c)
    }
}

pub fn block_map(variant: BlockVariant) -> BlockMap {
    let segments: &'static [Segment] = match variant {
        BlockVariant::Minimal27 => &MINIMAL_27,
        BlockVariant::WithPrep46 => &WITH_PREP_46,
    };
    BlockMap { variant, segments }
}

/// Physical qubits needed to store and protect one level-`level` qubit.
pub fn physical_qubits(level: u32, variant: BlockVariant) -> BigUint {
    BigUint::from(variant.block_length()).pow(level)
}

/// Number of parallel qubit rows for `level` levels of concatenation.
pub fn stripe_width(level: u32) -> u64 {
    u64::from(level) + 1
}

/// Sanity constant: a code word is seven sites long.
pub const WORD_LEN: u32 = steane::N as u32;

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn minimal_map() {
        let m = block_map(BlockVariant::Minimal27);
        assert_eq!(m.len(), 27);
        assert_eq!(m.count(SlotRole::Data), 7);
        assert_eq!(m.count(SlotRole::Zero), 14);
        assert_eq!(m.count(SlotRole::Ancilla), 6);
        assert_eq!(m.zero_word_offsets().collect::<Vec<_>>(), [7, 17]);
    }

    #[test]
    fn prep_map_sequence() {
        use SlotRole::*;
        let m = block_map(BlockVariant::WithPrep46);
        let lens: Vec<(SlotRole, u32)> = m.segments.iter().map(|s| (s.role, s.len)).collect();
        assert_eq!(
            lens,
            [(Data, 7), (Zero, 7), (Ancilla, 3), (Zero, 7), (Ancilla, 4), (Zero, 7), (Zero, 7), (Ancilla, 4)]
        );
        assert_eq!(m.len(), 46);
        assert_eq!(m.roles().count(), 46);
        assert_eq!((m.count(Data), m.count(Zero), m.count(Ancilla)), (7, 28, 11));
        assert_eq!(m.zero_word_offsets().collect::<Vec<_>>(), [7, 17, 28, 35]);
    }

    #[test]
    fn qubit_counts() {
        assert_eq!(physical_qubits(0, BlockVariant::Minimal27), BigUint::from(1u32));
        assert_eq!(physical_qubits(1, BlockVariant::Minimal27), BigUint::from(27u32));
        assert_eq!(physical_qubits(2, BlockVariant::WithPrep46), BigUint::from(2116u32));
        // 46^20 does not fit in 64 bits.
        assert!(physical_qubits(20, BlockVariant::WithPrep46).bits() > 64);
    }

    #[test]
    fn widths() {
        assert_eq!(stripe_width(0), 1);
        assert_eq!(stripe_width(1), 2);
        assert_eq!(stripe_width(3), 4);
    }

    proptest::proptest! {
        #[test]
        fn self_similar(level in 1u32..40) {
            for v in BlockVariant::ALL {
                proptest::prop_assert_eq!(
                    physical_qubits(level, v),
                    physical_qubits(level - 1, v) * BigUint::from(v.block_length())
                );
                proptest::prop_assert_eq!(block_map(v).len(), v.block_length());
            }
        }
    }
}
