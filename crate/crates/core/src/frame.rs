//! Pauli-frame propagation through Clifford circuits with feed-forward.
//!
//! The frame records the difference between the faulty and the ideal run.
//! Classically controlled gates fire differently from the ideal run exactly
//! when the XOR of their control differences is 1. For a measured bit the
//! difference is the X component of the frame at readout; for an indicator
//! output it is the indicator value itself, which is 0 in the ideal run.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{Circuit, GateKind, Site};
use crate::classical::{BitSource, ControlRef, IndicatorKind, Word};
use crate::pauli::PauliOperator;
use crate::steane::{self, Decoder};

const XBIT: u8 = 1;
const ZBIT: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("{0} cannot be propagated as a Pauli frame")]
    Unsupported(GateKind),
    #[error("classical control `{0}` is malformed")]
    Control(String),
    #[error("control bit `{0}` is read before any measurement writes it")]
    Unwritten(String),
    #[error("no gate at timestep {timestep}, index {gate}")]
    NoSuchGate { timestep: usize, gate: usize },
    #[error("fault acts on {got} qubit(s) but the gate has {expected} site(s)")]
    FaultSupport { expected: usize, got: usize },
    #[error("gate at timestep {timestep} uses an indicator read at later timestep {reads}")]
    FutureRead { timestep: usize, reads: usize },
    #[error("fault Pauli is the identity")]
    IdentityFault,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Src {
    Measured(usize),
    Indicator { slot: usize, bit: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Op {
    H(usize),
    Cnot(usize, usize),
    Swap(usize, usize),
    Reset(usize),
    Measure { q: usize, bit: usize },
    Flip { q: usize, pauli: u8, controls: Vec<Src> },
    /// Evaluate indicator `slot` over the listed words (site indices).
    Indicate { slot: usize, kind: IndicatorKind, words: Vec<[usize; steane::N]> },
    Nop,
}

/// A fault: a Pauli applied right after gate `gate` of timestep `timestep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaultLocation {
    pub timestep: usize,
    pub gate: usize,
    /// Acts on the gate's quantum sites, in target order.
    pub pauli: PauliOperator,
}

/// Indicator bit, decode kind and the site indices of its check words.
type IndicatorRead = (String, IndicatorKind, Vec<[usize; steane::N]>);

/// A circuit lowered to indexed frame operations.
#[derive(Debug, Clone)]
pub struct CompiledCircuit {
    length: u32,
    sites: usize,
    ops: Vec<Op>,
    /// Op position of gate `(t, i)`, for counted gates only.
    gate_ops: BTreeMap<(usize, usize), usize>,
    /// Counted gate locations in circuit order: `(t, i, sites)`.
    locations: Vec<(usize, usize, Vec<usize>)>,
    measured: usize,
    indicators: usize,
    flips: usize,
}

impl CompiledCircuit {
    pub fn new(c: &Circuit) -> Result<Self, FrameError> {
        let length = c.length;
        let idx = |s: &Site| (s.row * length + s.col) as usize;
        let mut ops = Vec::new();
        let mut gate_ops = BTreeMap::new();
        let mut locations = Vec::new();
        let mut bits: BTreeMap<String, usize> = BTreeMap::new();
        let mut taps: BTreeMap<String, usize> = BTreeMap::new();
        let mut flips = 0;

        // Indicator reads, keyed by the timestep they read at.
        let mut reads: BTreeMap<usize, Vec<IndicatorRead>> = BTreeMap::new();
        for (t, _, g) in c.gates() {
            for text in &g.classical_controls {
                let r = ControlRef::parse(text).map_err(|_| FrameError::Control(text.clone()))?;
                if let BitSource::Indicator(tap) = &r.source {
                    if tap.timestep > t {
                        return Err(FrameError::FutureRead { timestep: t, reads: tap.timestep });
                    }
                    let id = tap.block_id();
                    let at = reads.entry(tap.timestep).or_default();
                    if !at.iter().any(|(x, _, _)| *x == id) {
                        let words = tap.words.iter().map(|w: &Word| w.map(|s| idx(&s))).collect();
                        at.push((id, tap.kind, words));
                    }
                }
            }
        }

        for (t, step) in c.timesteps.iter().enumerate() {
            for (id, kind, words) in reads.remove(&t).unwrap_or_default() {
                let slot = taps.len();
                taps.insert(id, slot);
                ops.push(Op::Indicate { slot, kind, words });
            }
            for (i, g) in step.iter().enumerate() {
                let q: Vec<usize> = g.targets.iter().map(idx).collect();
                let op = match g.kind {
                    GateKind::H => Op::H(q[0]),
                    GateKind::Cnot => Op::Cnot(q[0], q[1]),
                    GateKind::Swap => Op::Swap(q[0], q[1]),
                    GateKind::PrepZero => Op::Reset(q[0]),
                    GateKind::PauliX | GateKind::PauliZ => Op::Nop,
                    GateKind::MeasureZ => {
                        let next = bits.len();
                        let bit = *bits.entry(g.classical_controls[0].clone()).or_insert(next);
                        Op::Measure { q: q[0], bit }
                    }
                    GateKind::CcX | GateKind::CcZ => {
                        let mut controls = Vec::new();
                        for text in &g.classical_controls {
                            let r = ControlRef::parse(text).map_err(|_| FrameError::Control(text.clone()))?;
                            controls.push(match &r.source {
                                BitSource::Named(n) => {
                                    Src::Measured(*bits.get(n).ok_or_else(|| FrameError::Unwritten(n.clone()))?)
                                }
                                BitSource::Indicator(tap) => Src::Indicator { slot: taps[&tap.block_id()], bit: tap.bit },
                            });
                        }
                        flips += 1;
                        let pauli = if g.kind == GateKind::CcX { XBIT } else { ZBIT };
                        Op::Flip { q: q[0], pauli, controls }
                    }
                    GateKind::RemoteCnot => return Err(FrameError::Unsupported(g.kind)),
                };
                if g.kind.is_counted() {
                    gate_ops.insert((t, i), ops.len());
                    locations.push((t, i, q));
                }
                ops.push(op);
            }
        }
        Ok(Self {
            length,
            sites: (c.width * c.length) as usize,
            ops,
            gate_ops,
            locations,
            measured: bits.len(),
            indicators: taps.len(),
            flips,
        })
    }

    pub fn site_index(&self, s: Site) -> usize {
        (s.row * self.length + s.col) as usize
    }

    /// Number of fault locations (counted gates).
    pub fn location_count(&self) -> usize {
        self.locations.len()
    }

    /// `(timestep, gate, arity)` of every fault location.
    pub fn locations(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.locations.iter().map(|(t, i, q)| (*t, *i, q.len()))
    }

    pub fn scratch(&self) -> Scratch {
        Scratch {
            frame: alloc::vec![0; self.sites],
            measured: alloc::vec![false; self.measured],
            indicators: alloc::vec![0; self.indicators],
            fired: Vec::with_capacity(self.flips),
        }
    }

    /// Converts user-facing fault locations into injections.
    pub fn injections(&self, faults: &[FaultLocation]) -> Result<Vec<Injection>, FrameError> {
        let mut out = Vec::with_capacity(faults.len());
        for f in faults {
            let &op = self
                .gate_ops
                .get(&(f.timestep, f.gate))
                .ok_or(FrameError::NoSuchGate { timestep: f.timestep, gate: f.gate })?;
            let sites = &self.locations.iter().find(|(t, i, _)| (*t, *i) == (f.timestep, f.gate)).expect("indexed").2;
            if f.pauli.num_qubits() != sites.len() {
                return Err(FrameError::FaultSupport { expected: sites.len(), got: f.pauli.num_qubits() });
            }
            if f.pauli.is_identity() {
                return Err(FrameError::IdentityFault);
            }
            let mut code = 0u8;
            for (k, _) in sites.iter().enumerate() {
                let (x, z) = f.pauli.get(k).bits();
                code |= (u8::from(x) | u8::from(z) << 1) << (2 * k);
            }
            out.push(Injection { op, sites: [sites[0], *sites.get(1).unwrap_or(&sites[0])], code });
        }
        out.sort_by_key(|i| i.op);
        Ok(out)
    }

    /// Injection for location `loc` (index into [`Self::locations`]) with
    /// Pauli code `code` (`bits(site0) | bits(site1) << 2`, x = 1, z = 2).
    pub fn injection(&self, loc: usize, code: u8) -> Injection {
        let (t, i, q) = &self.locations[loc];
        Injection { op: self.gate_ops[&(*t, *i)], sites: [q[0], *q.get(1).unwrap_or(&q[0])], code }
    }

    /// Propagates `faults` (sorted by op) and leaves the final frame in
    /// `scratch`.
    pub fn run(&self, faults: &[Injection], decoder: &Decoder, s: &mut Scratch) {
        s.frame.iter_mut().for_each(|b| *b = 0);
        s.measured.iter_mut().for_each(|b| *b = false);
        s.indicators.iter_mut().for_each(|b| *b = 0);
        s.fired.clear();
        let mut next = 0;
        let start = faults.first().map_or(self.ops.len(), |f| f.op);
        // Before the first fault the frame is trivial and nothing fires.
        s.fired.extend(self.ops[..start].iter().filter(|o| matches!(o, Op::Flip { .. })).map(|_| false));
        for (pos, op) in self.ops.iter().enumerate().skip(start) {
            let f = &mut s.frame;
            match op {
                Op::H(a) => {
                    let v = f[*a];
                    f[*a] = (v & XBIT) << 1 | (v & ZBIT) >> 1;
                }
                Op::Cnot(c, t) => {
                    f[*t] ^= f[*c] & XBIT;
                    f[*c] ^= f[*t] & ZBIT;
                }
                Op::Swap(a, b) => f.swap(*a, *b),
                Op::Reset(a) => f[*a] = 0,
                Op::Measure { q, bit } => s.measured[*bit] = f[*q] & XBIT != 0,
                Op::Nop => {}
                Op::Indicate { slot, kind, words } => {
                    let mut v = 0x7f;
                    for w in words {
                        let mut bits = 0u64;
                        for (k, q) in w.iter().enumerate() {
                            bits |= u64::from(f[*q] & XBIT) << k;
                        }
                        v &= match kind {
                            IndicatorKind::Decode => decoder.correction_mask(bits),
                            IndicatorKind::Purify => decoder.parity_correction_mask(bits),
                        };
                    }
                    s.indicators[*slot] = v as u8;
                }
                Op::Flip { q, pauli, controls } => {
                    let mut fire = false;
                    for c in controls {
                        fire ^= match *c {
                            Src::Measured(b) => s.measured[b],
                            Src::Indicator { slot, bit } => s.indicators[slot] >> bit & 1 == 1,
                        };
                    }
                    if fire {
                        f[*q] ^= pauli;
                    }
                    s.fired.push(fire);
                }
            }
            while next < faults.len() && faults[next].op == pos {
                let inj = &faults[next];
                s.frame[inj.sites[0]] ^= inj.code & 3;
                if inj.code >> 2 != 0 {
                    s.frame[inj.sites[1]] ^= inj.code >> 2;
                }
                next += 1;
            }
        }
    }

    /// Frame restricted to `word`, as a 7-qubit Pauli.
    pub fn word_frame(&self, s: &Scratch, word: &Word) -> PauliOperator {
        let (mut x, mut z) = (0u64, 0u64);
        for (k, site) in word.iter().enumerate() {
            let v = s.frame[self.site_index(*site)];
            x |= u64::from(v & XBIT) << k;
            z |= u64::from(v & ZBIT != 0) << k;
        }
        PauliOperator::from_masks(steane::N, x, z).expect("7-qubit masks")
    }
}

/// A fault ready for [`CompiledCircuit::run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Injection {
    op: usize,
    sites: [usize; 2],
    code: u8,
}

/// Reusable working memory for propagation.
#[derive(Debug, Clone)]
pub struct Scratch {
    frame: Vec<u8>,
    measured: Vec<bool>,
    indicators: Vec<u8>,
    fired: Vec<bool>,
}

impl Scratch {
    /// Which classically controlled gates fired differently from the ideal
    /// run, in circuit order.
    pub fn fired(&self) -> &[bool] {
        &self.fired
    }
}

/// Residual errors on the data words after one final perfect correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Frame on each data word before the final correction.
    pub raw: Vec<PauliOperator>,
    /// After the final correction; syndrome-free.
    pub residual: Vec<PauliOperator>,
    pub logical_failure: bool,
}

pub fn classify(c: &CompiledCircuit, s: &Scratch, data: &[Word]) -> Outcome {
    let mut raw = Vec::with_capacity(data.len());
    let mut residual = Vec::with_capacity(data.len());
    let mut fail = false;
    for w in data {
        let r = c.word_frame(s, w);
        let fixed = steane::correct(&r).expect("7-qubit word");
        fail |= steane::is_logical_error(&fixed).expect("corrected residual is syndrome-free");
        raw.push(r);
        residual.push(fixed);
    }
    Outcome { raw, residual, logical_failure: fail }
}

/// Propagates `faults` through `circuit` and classifies the data words.
pub fn propagate(circuit: &Circuit, faults: &[FaultLocation], data: &[Word]) -> Result<Outcome, FrameError> {
    propagate_with(circuit, faults, data, &Decoder::standard())
}

pub fn propagate_with(
    circuit: &Circuit,
    faults: &[FaultLocation],
    data: &[Word],
    decoder: &Decoder,
) -> Result<Outcome, FrameError> {
    let c = CompiledCircuit::new(circuit)?;
    let inj = c.injections(faults)?;
    let mut s = c.scratch();
    c.run(&inj, decoder, &mut s);
    Ok(classify(&c, &s, data))
}
