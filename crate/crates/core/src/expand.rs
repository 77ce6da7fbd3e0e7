//! Explicit level-1 circuits for the building blocks.
//!
//! All generators place gates with a per-site frontier (as-soon-as-possible
//! after the previous gate on any shared site). Indicator reads are pinned to
//! the timestep right after the last gate on the words they read.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use crate::circuit::{Circuit, Gate, GateKind, Site};
use crate::classical::{ControlRef, IndicatorKind, Word};
use crate::cost::{self, CommModel};
use crate::layout::{block_map, BlockVariant, SlotRole};
use crate::steane;

const W: usize = steane::N;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    LogicalSwap,
    ZeroPrep,
    EcBlock,
    RemoteCnotGadget,
    LogicalCnotRows,
}

impl Block {
    pub const ALL: [Block; 5] =
        [Block::LogicalSwap, Block::ZeroPrep, Block::EcBlock, Block::RemoteCnotGadget, Block::LogicalCnotRows];

    pub fn name(self) -> &'static str {
        match self {
            Block::LogicalSwap => "swap",
            Block::ZeroPrep => "zero-prep",
            Block::EcBlock => "ec",
            Block::RemoteCnotGadget => "remote-cnot",
            Block::LogicalCnotRows => "cnot-rows",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == s)
    }

    /// Communication model the block is normally expanded under.
    pub fn default_model(self) -> CommModel {
        match self {
            Block::LogicalSwap | Block::LogicalCnotRows => CommModel::Swap,
            _ => CommModel::Free,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("only level 1 is expanded explicitly, got level {0}")]
    Level(u32),
    #[error("{} is not available for model {} / {}", .block.name(), .model.name(), .variant.name())]
    Unsupported { block: Block, model: CommModel, variant: BlockVariant },
    #[error("layout has {width} row(s); the row-based CNOT needs a spare row")]
    NoSpareRow { width: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionRequest {
    pub block: Block,
    pub model: CommModel,
    pub variant: BlockVariant,
    pub level: u32,
}

impl ExpansionRequest {
    pub fn new(block: Block, variant: BlockVariant) -> Self {
        Self { block, model: block.default_model(), variant, level: 1 }
    }
}

pub fn expand(req: &ExpansionRequest) -> Result<Circuit, ExpandError> {
    if req.level != 1 {
        return Err(ExpandError::Level(req.level));
    }
    let unsupported = ExpandError::Unsupported { block: req.block, model: req.model, variant: req.variant };
    match req.block {
        Block::LogicalSwap if req.model == CommModel::RemoteCnot => Err(unsupported),
        Block::LogicalSwap => Ok(logical_swap(W).circuit),
        Block::ZeroPrep => Ok(zero_prep()),
        Block::EcBlock => ec_block(req.variant, req.model).map(|e| e.circuit),
        Block::RemoteCnotGadget => Ok(remote_cnot_gadget(4).circuit),
        Block::LogicalCnotRows if req.model != CommModel::Swap => Err(unsupported),
        Block::LogicalCnotRows => logical_cnot_rows(req.variant, 2).map(|e| e.circuit),
    }
}

/// As-soon-as-possible placement with a frontier per site.
#[derive(Debug, Default)]
struct Sched {
    frontier: BTreeMap<Site, usize>,
}

impl Sched {
    fn ready(&self, sites: &[Site]) -> usize {
        sites.iter().map(|s| self.frontier.get(s).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    fn hold(&mut self, sites: &[Site], t: usize) {
        for s in sites {
            let f = self.frontier.entry(*s).or_insert(0);
            *f = (*f).max(t);
        }
    }

    fn place(&mut self, c: &mut Circuit, g: Gate, min_t: usize) -> usize {
        let t = self.ready(&g.targets).max(min_t);
        self.hold(&g.targets, t + 1);
        c.add_at(t, g);
        t
    }

    fn horizon(&self) -> usize {
        self.frontier.values().copied().max().unwrap_or(0)
    }
}

/// Logical SWAP of two adjacent words on one row.
#[derive(Debug, Clone)]
pub struct SwapExpansion {
    pub circuit: Circuit,
    /// Timestep ranges of the interleave, transversal and undo phases.
    pub phases: [Range<usize>; 3],
    pub phase_gates: [usize; 3],
}

/// Adjacent transpositions taking `a_0..a_k b_0..b_k` to `a_0 b_0 a_1 b_1 ...`.
fn interleave_swaps(k: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for j in 0..k {
        // b_j starts at k + j and must end at 2j + 1.
        for pos in (2 * j + 2..=k + j).rev() {
            out.push((pos - 1, pos));
        }
    }
    out
}

/// `word_len` qubits of word A at columns `0..k`, word B at `k..2k`.
pub fn logical_swap(word_len: usize) -> SwapExpansion {
    let k = word_len as u32;
    let mut c = Circuit::new(1, 2 * k);
    let mut sched = Sched::default();
    let at = |col| Site::new(0, col);

    let inter = interleave_swaps(k);
    let mut phases: [Range<usize>; 3] = [0..0, 0..0, 0..0];
    let mut phase_gates = [0; 3];
    let mut start = 0;
    let transversal: Vec<(u32, u32)> = (0..k).map(|j| (2 * j, 2 * j + 1)).collect();
    let undo: Vec<(u32, u32)> = inter.iter().rev().copied().collect();
    for (p, swaps) in [inter, transversal, undo].into_iter().enumerate() {
        for (a, b) in &swaps {
            sched.place(&mut c, Gate::swap(at(*a), at(*b)), start);
        }
        let end = sched.horizon().max(start);
        phases[p] = start..end;
        phase_gates[p] = swaps.len();
        start = end;
    }
    SwapExpansion { circuit: c, phases, phase_gates }
}

// Encoder footprint: cells 0..=4 along the row at offset 0..=4, cells 5 and 6
// on the next row under offsets 1 and 2.
const PREP_CELLS: [(u32, u32); W] = [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 1), (1, 2)];
const PREP_H: [usize; 3] = [0, 1, 2];
const PREP_CNOTS: [(usize, usize); 9] = [(1, 5), (2, 3), (1, 2), (0, 1), (2, 1), (2, 6), (1, 2), (3, 4), (2, 3)];
/// Hamming label (code qubit + 1) held by each cell after encoding.
const PREP_LABELS: [usize; W] = [1, 5, 3, 7, 4, 2, 6];

fn prep_footprint(row: u32, col: u32) -> [Site; W] {
    PREP_CELLS.map(|(dr, dc)| Site::new(row + dr, col + dc))
}

fn prep_word(row: u32, col: u32) -> Word {
    let cells = prep_footprint(row, col);
    let mut word = cells;
    for (cell, label) in PREP_LABELS.iter().enumerate() {
        word[label - 1] = cells[cell];
    }
    word
}

fn emit_zero_prep(c: &mut Circuit, sched: &mut Sched, row: u32, col: u32) -> Word {
    let cells = prep_footprint(row, col);
    for h in PREP_H {
        sched.place(c, Gate::h(cells[h]), 0);
    }
    for (a, b) in PREP_CNOTS {
        sched.place(c, Gate::cnot(cells[a], cells[b]), 0);
    }
    prep_word(row, col)
}

/// Logical-zero encoder on the width-2 stripe: 3 H + 9 CNOT, all
/// nearest-neighbour. Code qubit order of the output is given by
/// [`zero_prep_word`].
pub fn zero_prep() -> Circuit {
    let mut c = Circuit::new(2, 5);
    emit_zero_prep(&mut c, &mut Sched::default(), 0, 0);
    c
}

/// Sites of code qubits `0..7` after [`zero_prep`].
pub fn zero_prep_word() -> Word {
    prep_word(0, 0)
}

/// An error-correction block and where its protected word lives.
#[derive(Debug, Clone)]
pub struct EcExpansion {
    pub circuit: Circuit,
    pub data: Word,
}

pub fn ec_block(variant: BlockVariant, model: CommModel) -> Result<EcExpansion, ExpandError> {
    if model != CommModel::Free {
        return Err(ExpandError::Unsupported { block: Block::EcBlock, model, variant });
    }
    Ok(match variant {
        BlockVariant::Minimal27 => {
            let mut c = Circuit::new(1, variant.block_length());
            let data = emit_ec_minimal(&mut c, 0, 0);
            EcExpansion { circuit: c, data }
        }
        BlockVariant::WithPrep46 => ec_with_prep(),
    })
}

/// Sites `[Z1, psi, Z2]` of column triple `j` in the 27-site row.
fn triple(row: u32, j: usize) -> [Site; 3] {
    let base = 3 * j as u32;
    [Site::new(row, base), Site::new(row, base + 1), Site::new(row, base + 2)]
}

/// Data word sites of a 27-site error-correction row.
pub fn minimal_data_word(row: u32) -> Word {
    core::array::from_fn(|j| triple(row, j)[1])
}

/// Emits the 70-gate block on `row`, occupying timesteps `t0..t0 + 9`.
///
/// The row holds seven triples `[Z1_j, psi_j, Z2_j]` followed by six idle
/// ancillae. `Z1` extracts bit flips through `H; CNOT psi->Z1`, is read, then
/// uncomputed; `Z2` extracts phase flips through `CNOT Z2->psi; H`, likewise.
/// Both zero words return to `|0>_L`.
pub fn emit_ec_minimal(c: &mut Circuit, row: u32, t0: usize) -> Word {
    let z1: Word = core::array::from_fn(|j| triple(row, j)[0]);
    let psi = minimal_data_word(row);
    let z2: Word = core::array::from_fn(|j| triple(row, j)[2]);
    for j in 0..W {
        c.add_at(t0, Gate::h(z1[j]));
        c.add_at(t0 + 1, Gate::cnot(psi[j], z1[j]));
        c.add_at(t0 + 2, Gate::cnot(psi[j], z1[j]));
        c.add_at(t0 + 3, Gate::h(z1[j]));
        let flip = ControlRef::indicator(IndicatorKind::Decode, t0 + 2, &[z1], j as u8);
        c.add_at(t0 + 3, Gate::cc_x(psi[j], &[flip]));
        c.add_at(t0 + 4, Gate::cnot(z2[j], psi[j]));
        c.add_at(t0 + 5, Gate::h(z2[j]));
        c.add_at(t0 + 6, Gate::h(z2[j]));
        c.add_at(t0 + 7, Gate::cnot(z2[j], psi[j]));
        let phase = ControlRef::indicator(IndicatorKind::Decode, t0 + 6, &[z2], j as u8);
        c.add_at(t0 + 8, Gate::cc_z(psi[j], &[phase]));
    }
    psi
}

struct PrepBlock {
    c: Circuit,
    sched: Sched,
    slots: [u32; 4],
}

impl PrepBlock {
    fn prep(&mut self, slot: usize) -> Word {
        emit_zero_prep(&mut self.c, &mut self.sched, 0, self.slots[slot])
    }

    fn reset(&mut self, w: &Word) {
        for s in w {
            self.sched.place(&mut self.c, Gate::prep_zero(*s), 0);
        }
    }

    fn transversal(&mut self, ctrl: &Word, tgt: &Word) {
        for q in 0..W {
            self.sched.place(&mut self.c, Gate::cnot(ctrl[q], tgt[q]), 0);
        }
    }

    fn transversal_h(&mut self, w: &Word) {
        for s in w {
            self.sched.place(&mut self.c, Gate::h(*s), 0);
        }
    }

    /// Classically controlled correction of `target` from an indicator over
    /// `words`, read after every gate already placed on them.
    fn correct(&mut self, kind: GateKind, indicator: IndicatorKind, target: &Word, words: &[Word]) {
        let read: Vec<Site> = words.iter().flatten().chain(target.iter()).copied().collect();
        let t = self.sched.ready(&read);
        for q in 0..W {
            let ctrl = ControlRef::indicator(indicator, t, words, q as u8);
            let g = if kind == GateKind::CcX { Gate::cc_x(target[q], &[ctrl]) } else { Gate::cc_z(target[q], &[ctrl]) };
            self.sched.place(&mut self.c, g, t);
        }
        self.sched.hold(&read, t);
    }

    /// Checks `kept` against two fresh check words at slots 1 and 2, then
    /// resets them.
    fn purify(&mut self, kept: &Word) {
        let b = self.prep(1);
        let cw = self.prep(2);
        self.transversal(kept, &b);
        self.transversal(kept, &cw);
        self.correct(GateKind::CcX, IndicatorKind::Purify, kept, &[b, cw]);
        self.reset(&b);
        self.reset(&cw);
    }
}

/// The 298-gate block with inline zero preparation.
///
/// Four purified zeros are made at slots s1 and s4, each checked by two raw
/// zeros at s2 and s3. Each sector extracts the syndrome twice and corrects
/// only where both extractions agree.
fn ec_with_prep() -> EcExpansion {
    let map = block_map(BlockVariant::WithPrep46);
    let zero: Vec<u32> = map.zero_word_offsets().collect();
    let mut b = PrepBlock {
        c: Circuit::new(2, map.len()),
        sched: Sched::default(),
        slots: [zero[0], zero[1], zero[2], zero[3]],
    };
    let data_col = map.segments.iter().position(|s| s.role == SlotRole::Data).unwrap_or(0) as u32;
    let psi: Word = core::array::from_fn(|q| Site::new(0, data_col + q as u32));

    // Bit flips.
    let a = b.prep(0);
    let d = emit_zero_prep(&mut b.c, &mut b.sched, 0, b.slots[3]);
    b.purify(&a);
    b.purify(&d);
    b.transversal_h(&a);
    b.transversal(&psi, &a);
    b.transversal_h(&d);
    b.transversal(&psi, &d);
    b.correct(GateKind::CcX, IndicatorKind::Decode, &psi, &[a, d]);
    b.reset(&a);
    b.reset(&d);

    // Phase flips.
    let p3 = b.prep(0);
    let p4 = emit_zero_prep(&mut b.c, &mut b.sched, 0, b.slots[3]);
    b.purify(&p3);
    b.purify(&p4);
    b.transversal(&p3, &psi);
    b.transversal_h(&p3);
    b.transversal(&p4, &psi);
    b.transversal_h(&p4);
    b.correct(GateKind::CcZ, IndicatorKind::Decode, &psi, &[p3, p4]);

    EcExpansion { circuit: b.c, data: psi }
}

/// Teleportation-based CNOT between the ends of a row.
#[derive(Debug, Clone)]
pub struct RemoteCnotExpansion {
    pub circuit: Circuit,
    pub control: Site,
    pub target: Site,
    /// The two halves of the shared `|Psi+>` pair, assumed present on input.
    pub epr: [Site; 2],
}

pub fn remote_cnot_gadget(length: u32) -> RemoteCnotExpansion {
    let length = length.max(4);
    let (ctl, e1, e2, tgt) = (Site::new(0, 0), Site::new(0, 1), Site::new(0, length - 2), Site::new(0, length - 1));
    let mut c = Circuit::new(1, length);
    c.push_layer([Gate::cnot(ctl, e1)]);
    c.push_layer([Gate::measure_z(e1, "m1")]);
    c.push_layer([Gate::cc_x(e2, &[ControlRef::named("m1").negate()])]);
    c.push_layer([Gate::cnot(e2, tgt)]);
    c.push_layer([Gate::h(e2)]);
    c.push_layer([Gate::measure_z(e2, "m2")]);
    c.push_layer([Gate::cc_z(ctl, &[ControlRef::named("m2")])]);
    RemoteCnotExpansion { circuit: c, control: ctl, target: tgt, epr: [e1, e2] }
}

/// Row-based logical CNOT between two neighbouring blocks.
#[derive(Debug, Clone)]
pub struct CnotRowsExpansion {
    pub circuit: Circuit,
    /// Data sites of the control and target words.
    pub control: Word,
    pub target: Word,
    /// SWAPs spent moving the target word into place (one direction).
    pub outbound_swaps: u64,
    pub total_swaps: u64,
    pub cnots: u64,
    /// `7 + outbound_swaps`, comparable with the tabulated unitary count.
    pub derived_unitary: u64,
    pub tabulated_unitary: u64,
}

impl CnotRowsExpansion {
    pub fn matches_table(&self) -> bool {
        self.derived_unitary == self.tabulated_unitary
    }
}

/// Blocks `A` (control) and `B` (target) sit side by side on row 0 and
/// `width - 1` further rows are free. `B`'s data word is bubbled left until
/// it touches `A`'s, dropped to row 1, shifted under `A`'s word, combined by
/// seven vertical CNOTs, and everything is undone in reverse order.
pub fn logical_cnot_rows(variant: BlockVariant, width: u32) -> Result<CnotRowsExpansion, ExpandError> {
    if width < 2 {
        return Err(ExpandError::NoSpareRow { width });
    }
    let len = variant.block_length();
    let w = W as u32;
    let mut c = Circuit::new(width, 2 * len);
    let mut sched = Sched::default();
    let control: Word = core::array::from_fn(|q| Site::new(0, q as u32));
    let target: Word = core::array::from_fn(|q| Site::new(0, len + q as u32));

    let mut moves: Vec<(Site, Site)> = Vec::new();
    for q in 0..w {
        for col in (w + q + 1..=len + q).rev() {
            moves.push((Site::new(0, col - 1), Site::new(0, col)));
        }
    }
    for q in 0..w {
        moves.push((Site::new(0, w + q), Site::new(1, w + q)));
    }
    for q in 0..w {
        for col in (q + 1..=w + q).rev() {
            moves.push((Site::new(1, col - 1), Site::new(1, col)));
        }
    }
    for (a, b) in &moves {
        sched.place(&mut c, Gate::swap(*a, *b), 0);
    }
    for q in 0..w {
        sched.place(&mut c, Gate::cnot(Site::new(0, q), Site::new(1, q)), 0);
    }
    for (a, b) in moves.iter().rev() {
        sched.place(&mut c, Gate::swap(*a, *b), 0);
    }

    let outbound = moves.len() as u64;
    let (n_u, n_uc) = cost::unitary_count(CommModel::Swap, variant);
    Ok(CnotRowsExpansion {
        circuit: c,
        control,
        target,
        outbound_swaps: outbound,
        total_swaps: 2 * outbound,
        cnots: u64::from(w),
        derived_unitary: u64::from(w) + outbound,
        tabulated_unitary: n_u + n_uc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Applies every SWAP of `c` (in order) to a labelled array per site.
    fn permute(c: &Circuit, labels: &mut BTreeMap<Site, u32>) {
        for (_, _, g) in c.gates() {
            if g.kind == GateKind::Swap {
                let a = labels.get(&g.targets[0]).copied();
                let b = labels.get(&g.targets[1]).copied();
                for (s, v) in [(g.targets[0], b), (g.targets[1], a)] {
                    match v {
                        Some(v) => labels.insert(s, v),
                        None => labels.remove(&s),
                    };
                }
            }
        }
    }

    fn kinds(c: &Circuit) -> Vec<(GateKind, usize)> {
        c.count_by_kind().into_iter().collect()
    }

    #[test]
    fn swap_counts_and_phases() {
        let e = logical_swap(7);
        assert_eq!(kinds(&e.circuit), vec![(GateKind::Swap, 49)]);
        assert_eq!(e.phase_gates, [21, 7, 21]);
        assert!(e.circuit.validate_nearest_neighbor().is_empty());
        assert_eq!(e.circuit.check(), Ok(()));
        assert_eq!(e.phases[0].end, e.phases[1].start);
        assert_eq!(e.phases[1].end - e.phases[1].start, 1);
    }

    #[test]
    fn swap_exchanges_words() {
        for k in 1..=7u32 {
            let e = logical_swap(k as usize);
            let mut labels: BTreeMap<Site, u32> = (0..2 * k).map(|i| (Site::new(0, i), i)).collect();
            permute(&e.circuit, &mut labels);
            for j in 0..k {
                assert_eq!(labels[&Site::new(0, j)], k + j);
                assert_eq!(labels[&Site::new(0, k + j)], j);
            }
        }
        assert_eq!(logical_swap(1).circuit.gate_count(), 1);
    }

    #[test]
    fn swap_phases_are_inverse() {
        let e = logical_swap(7);
        let steps = &e.circuit.timesteps;
        let mut first = Circuit::new(1, 14);
        first.timesteps = steps[e.phases[0].clone()].to_vec();
        let mut third = Circuit::new(1, 14);
        third.timesteps = steps[e.phases[2].clone()].to_vec();
        let mut labels: BTreeMap<Site, u32> = (0..14).map(|i| (Site::new(0, i), i)).collect();
        let start = labels.clone();
        permute(&first, &mut labels);
        assert_ne!(labels, start);
        permute(&third, &mut labels);
        assert_eq!(labels, start);
    }

    #[test]
    fn zero_prep_shape() {
        let c = zero_prep();
        assert_eq!(kinds(&c), vec![(GateKind::H, 3), (GateKind::Cnot, 9)]);
        assert!(c.validate_nearest_neighbor().is_empty());
        assert_eq!(c.check(), Ok(()));
        let word = zero_prep_word();
        let mut sorted = word.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 7);
    }

    #[test]
    fn minimal_ec_shape() {
        let e = ec_block(BlockVariant::Minimal27, CommModel::Free).unwrap();
        let c = &e.circuit;
        assert_eq!(
            kinds(c),
            vec![(GateKind::H, 28), (GateKind::Cnot, 28), (GateKind::CcX, 7), (GateKind::CcZ, 7)]
        );
        assert_eq!(c.counted_operations(), 70);
        assert_eq!(c.length, 27);
        assert!(c.validate_nearest_neighbor().is_empty());
        assert_eq!(c.check(), Ok(()));
    }

    #[test]
    fn prep_ec_shape() {
        let e = ec_block(BlockVariant::WithPrep46, CommModel::Free).unwrap();
        let c = &e.circuit;
        assert_eq!(c.counted_operations(), 298);
        let h = c.count_by_kind();
        assert_eq!(h[&GateKind::H], 28 + 36);
        assert_eq!(h[&GateKind::Cnot], 28 + 108 + 56);
        assert_eq!(h[&GateKind::CcX], 7 + 28);
        assert_eq!(h[&GateKind::CcZ], 7);
        assert_eq!(c.check(), Ok(()));
        // Only the long-range transversal CNOTs break adjacency.
        for v in c.validate_nearest_neighbor() {
            assert_eq!(v.gate.kind, GateKind::Cnot);
        }
    }

    #[test]
    fn unsupported_combinations() {
        assert!(matches!(ec_block(BlockVariant::Minimal27, CommModel::Swap), Err(ExpandError::Unsupported { .. })));
        let req = ExpansionRequest { level: 2, ..ExpansionRequest::new(Block::ZeroPrep, BlockVariant::Minimal27) };
        assert_eq!(expand(&req), Err(ExpandError::Level(2)));
        let req = ExpansionRequest {
            model: CommModel::RemoteCnot,
            ..ExpansionRequest::new(Block::LogicalSwap, BlockVariant::Minimal27)
        };
        assert!(matches!(expand(&req), Err(ExpandError::Unsupported { .. })));
    }

    #[test]
    fn gadget_shape() {
        let g = remote_cnot_gadget(6);
        assert_eq!(g.circuit.counted_operations(), 5);
        assert_eq!(g.circuit.count_by_kind()[&GateKind::MeasureZ], 2);
        assert!(g.circuit.validate_nearest_neighbor().is_empty());
        assert_eq!(g.circuit.check(), Ok(()));
    }

    #[test]
    fn cnot_rows_counts() {
        let e = logical_cnot_rows(BlockVariant::Minimal27, 2).unwrap();
        assert_eq!(e.outbound_swaps, 196);
        assert_eq!(e.derived_unitary, 203);
        assert!(e.matches_table());
        let h = e.circuit.count_by_kind();
        assert_eq!(h[&GateKind::Cnot], 7);
        assert_eq!(h[&GateKind::Swap], 392);
        assert!(e.circuit.validate_nearest_neighbor().is_empty());

        let e = logical_cnot_rows(BlockVariant::WithPrep46, 3).unwrap();
        assert_eq!(e.derived_unitary, 336);
        assert_eq!(e.tabulated_unitary, 343);
        assert!(!e.matches_table());
        assert!(e.circuit.validate_nearest_neighbor().is_empty());

        assert_eq!(
            logical_cnot_rows(BlockVariant::Minimal27, 1).unwrap_err(),
            ExpandError::NoSpareRow { width: 1 }
        );
    }

    #[test]
    fn cnot_rows_restores_positions() {
        for v in BlockVariant::ALL {
            let e = logical_cnot_rows(v, 2).unwrap();
            let c = &e.circuit;
            let mut labels: BTreeMap<Site, u32> = BTreeMap::new();
            for q in 0..7 {
                labels.insert(e.control[q], q as u32);
                labels.insert(e.target[q], 100 + q as u32);
            }
            let start = labels.clone();
            permute(c, &mut labels);
            assert_eq!(labels, start);

            // Each CNOT meets the matching control and target qubits.
            for (t, _, g) in c.gates().filter(|(_, _, g)| g.kind == GateKind::Cnot) {
                let mut before = Circuit::new(c.width, c.length);
                before.timesteps = c.timesteps[..t].to_vec();
                let mut mid = start.clone();
                permute(&before, &mut mid);
                let q = mid[&g.targets[0]];
                assert!(q < 7);
                assert_eq!(mid[&g.targets[1]], 100 + q);
            }
        }
    }
}
