//! Circuit intermediate representation.
//!
//! A [`Circuit`] is a grid of sites (`width` rows by `length` columns) and an
//! ordered list of timesteps. Gates inside one timestep act on disjoint sites.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::classical::{BitSource, ClassicalParseError, ControlRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    Cnot,
    Swap,
    /// Composite teleportation-based CNOT; costed as 5 operations.
    RemoteCnot,
    /// Bit flip controlled by classical bits.
    CcX,
    /// Phase flip controlled by classical bits.
    CcZ,
    PrepZero,
    MeasureZ,
    PauliX,
    PauliZ,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::H,
        GateKind::Cnot,
        GateKind::Swap,
        GateKind::RemoteCnot,
        GateKind::CcX,
        GateKind::CcZ,
        GateKind::PrepZero,
        GateKind::MeasureZ,
        GateKind::PauliX,
        GateKind::PauliZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::RemoteCnot => "REMOTE_CNOT",
            GateKind::CcX => "CC_X",
            GateKind::CcZ => "CC_Z",
            GateKind::PrepZero => "PREP_ZERO",
            GateKind::MeasureZ => "MEASURE_Z",
            GateKind::PauliX => "PAULI_X",
            GateKind::PauliZ => "PAULI_Z",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Number of quantum sites the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Swap | GateKind::RemoteCnot => 2,
            _ => 1,
        }
    }

    pub fn is_classically_controlled(self) -> bool {
        matches!(self, GateKind::CcX | GateKind::CcZ)
    }

    /// Whether the gate enters operation counts. Preparation and readout
    /// are not counted.
    pub fn is_counted(self) -> bool {
        !matches!(self, GateKind::PrepZero | GateKind::MeasureZ)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub row: u32,
    pub col: u32,
}

impl Site {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    pub fn manhattan(&self, other: &Site) -> u32 {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    /// `[control, target]` for CNOT-like gates.
    pub targets: Vec<Site>,
    /// Control bits for CC gates; the destination bit for `MEASURE_Z`.
    pub classical_controls: Vec<String>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<Site>) -> Self {
        Self { kind, targets, classical_controls: Vec::new() }
    }

    pub fn h(s: Site) -> Self {
        Self::new(GateKind::H, alloc::vec![s])
    }

    pub fn cnot(control: Site, target: Site) -> Self {
        Self::new(GateKind::Cnot, alloc::vec![control, target])
    }

    pub fn swap(a: Site, b: Site) -> Self {
        Self::new(GateKind::Swap, alloc::vec![a, b])
    }

    pub fn prep_zero(s: Site) -> Self {
        Self::new(GateKind::PrepZero, alloc::vec![s])
    }

    pub fn measure_z(s: Site, bit: &str) -> Self {
        Self { kind: GateKind::MeasureZ, targets: alloc::vec![s], classical_controls: alloc::vec![bit.to_string()] }
    }

    pub fn cc_x(s: Site, controls: &[ControlRef]) -> Self {
        Self::controlled(GateKind::CcX, s, controls)
    }

    pub fn cc_z(s: Site, controls: &[ControlRef]) -> Self {
        Self::controlled(GateKind::CcZ, s, controls)
    }

    fn controlled(kind: GateKind, s: Site, controls: &[ControlRef]) -> Self {
        Self { kind, targets: alloc::vec![s], classical_controls: controls.iter().map(|c| c.to_string()).collect() }
    }

    pub fn is_two_site(&self) -> bool {
        self.targets.len() == 2
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        if !self.classical_controls.is_empty() {
            write!(f, " [{}]", self.classical_controls.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("timestep {timestep}, gate {gate}: site {site} outside {width}x{length} grid")]
    OutOfBounds { timestep: usize, gate: usize, site: Site, width: u32, length: u32 },
    #[error("timestep {timestep}, gate {gate}: {kind} takes {expected} site(s), got {got}")]
    Arity { timestep: usize, gate: usize, kind: GateKind, expected: usize, got: usize },
    #[error("timestep {timestep}, gate {gate}: repeated target {site}")]
    RepeatedTarget { timestep: usize, gate: usize, site: Site },
    #[error("timestep {timestep}: site {site} used by two gates")]
    SiteConflict { timestep: usize, site: Site },
    #[error("timestep {timestep}, gate {gate}: {kind} needs {what}")]
    Controls { timestep: usize, gate: usize, kind: GateKind, what: &'static str },
    #[error("timestep {timestep}, gate {gate}: classical bit `{name}` is not declared")]
    UndeclaredBit { timestep: usize, gate: usize, name: String },
    #[error("timestep {timestep}, gate {gate}: {source}")]
    BadControl { timestep: usize, gate: usize, source: ClassicalParseError },
}

/// A two-site gate whose sites are not adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnViolation {
    pub timestep: usize,
    pub gate_index: usize,
    pub gate: Gate,
}

fn bare(bit: &str) -> &str {
    bit.strip_prefix('!').unwrap_or(bit)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub width: u32,
    pub length: u32,
    pub classical_bits: Vec<String>,
    pub timesteps: Vec<Vec<Gate>>,
}

impl Circuit {
    pub fn new(width: u32, length: u32) -> Self {
        Self { width, length, classical_bits: Vec::new(), timesteps: Vec::new() }
    }

    pub fn in_bounds(&self, s: &Site) -> bool {
        s.row < self.width && s.col < self.length
    }

    /// Adds `name` to the declared classical bits if missing.
    pub fn declare_bit(&mut self, name: &str) {
        if !self.classical_bits.iter().any(|b| b == name) {
            self.classical_bits.push(name.to_string());
        }
    }

    /// Places `gate` in timestep `t`, creating empty timesteps as needed.
    /// Control bits are declared automatically. No conflict check is done
    /// here; see [`Circuit::check`].
    pub fn add_at(&mut self, t: usize, gate: Gate) {
        self.declare_controls(&gate);
        if self.timesteps.len() <= t {
            self.timesteps.resize_with(t + 1, Vec::new);
        }
        self.timesteps[t].push(gate);
    }

    /// Appends `gate` at the earliest timestep after every earlier gate that
    /// touches one of its sites or classical bits.
    pub fn push_asap(&mut self, gate: Gate) -> usize {
        let mut t = 0;
        for (i, step) in self.timesteps.iter().enumerate().rev() {
            let blocked = step.iter().any(|g| {
                g.targets.iter().any(|s| gate.targets.contains(s))
                    || g.classical_controls.iter().any(|b| gate.classical_controls.iter().any(|c| bare(b) == bare(c)))
            });
            if blocked {
                t = i + 1;
                break;
            }
        }
        self.add_at(t, gate);
        t
    }

    /// Appends a fresh timestep holding `gates`.
    pub fn push_layer(&mut self, gates: impl IntoIterator<Item = Gate>) -> usize {
        let t = self.timesteps.len();
        self.timesteps.push(Vec::new());
        for g in gates {
            self.add_at(t, g);
        }
        t
    }

    fn declare_controls(&mut self, gate: &Gate) {
        for c in &gate.classical_controls {
            self.declare_bit(bare(c));
        }
    }

    pub fn depth(&self) -> usize {
        self.timesteps.len()
    }

    /// All gates with their `(timestep, index)` positions.
    pub fn gates(&self) -> impl Iterator<Item = (usize, usize, &Gate)> {
        self.timesteps.iter().enumerate().flat_map(|(t, step)| step.iter().enumerate().map(move |(i, g)| (t, i, g)))
    }

    pub fn gate_count(&self) -> usize {
        self.timesteps.iter().map(Vec::len).sum()
    }

    /// Gates that enter operation counts (everything but preparation and
    /// readout).
    pub fn counted_operations(&self) -> usize {
        self.gates().filter(|(_, _, g)| g.kind.is_counted()).count()
    }

    pub fn count_by_kind(&self) -> BTreeMap<GateKind, usize> {
        let mut h = BTreeMap::new();
        for (_, _, g) in self.gates() {
            *h.entry(g.kind).or_insert(0) += 1;
        }
        h
    }

    /// Every two-site gate whose sites are not at Manhattan distance 1.
    pub fn validate_nearest_neighbor(&self) -> Vec<NnViolation> {
        self.gates()
            .filter(|(_, _, g)| g.is_two_site() && g.targets[0].manhattan(&g.targets[1]) != 1)
            .map(|(t, i, g)| NnViolation { timestep: t, gate_index: i, gate: g.clone() })
            .collect()
    }

    /// Splits every timestep into single-gate timesteps, in order.
    pub fn serialized(&self) -> Circuit {
        let mut out = Circuit { timesteps: Vec::new(), ..self.clone() };
        for g in self.timesteps.iter().flatten() {
            out.timesteps.push(alloc::vec![g.clone()]);
        }
        out
    }

    /// Checks the structural invariants: bounds, arity, distinct targets,
    /// per-timestep site exclusivity and classical-bit declarations.
    pub fn check(&self) -> Result<(), CircuitError> {
        let declared: BTreeSet<&str> = self.classical_bits.iter().map(String::as_str).collect();
        for (t, step) in self.timesteps.iter().enumerate() {
            let mut used = BTreeSet::new();
            for (i, g) in step.iter().enumerate() {
                let expected = g.kind.arity();
                if g.targets.len() != expected {
                    return Err(CircuitError::Arity {
                        timestep: t,
                        gate: i,
                        kind: g.kind,
                        expected,
                        got: g.targets.len(),
                    });
                }
                for (j, s) in g.targets.iter().enumerate() {
                    if !self.in_bounds(s) {
                        return Err(CircuitError::OutOfBounds {
                            timestep: t,
                            gate: i,
                            site: *s,
                            width: self.width,
                            length: self.length,
                        });
                    }
                    if g.targets[..j].contains(s) {
                        return Err(CircuitError::RepeatedTarget { timestep: t, gate: i, site: *s });
                    }
                    if !used.insert(*s) {
                        return Err(CircuitError::SiteConflict { timestep: t, site: *s });
                    }
                }
                self.check_controls(t, i, g, &declared)?;
            }
        }
        Ok(())
    }

    fn check_controls(&self, t: usize, i: usize, g: &Gate, declared: &BTreeSet<&str>) -> Result<(), CircuitError> {
        let n = g.classical_controls.len();
        match g.kind {
            GateKind::CcX | GateKind::CcZ if n == 0 => {
                return Err(CircuitError::Controls { timestep: t, gate: i, kind: g.kind, what: "at least one control bit" })
            }
            GateKind::MeasureZ if n != 1 => {
                return Err(CircuitError::Controls {
                    timestep: t,
                    gate: i,
                    kind: g.kind,
                    what: "exactly one destination bit",
                })
            }
            GateKind::CcX | GateKind::CcZ | GateKind::MeasureZ => {}
            _ if n != 0 => {
                return Err(CircuitError::Controls { timestep: t, gate: i, kind: g.kind, what: "no classical bits" })
            }
            _ => {}
        }
        for c in &g.classical_controls {
            let r = ControlRef::parse(c).map_err(|source| CircuitError::BadControl { timestep: t, gate: i, source })?;
            if g.kind == GateKind::MeasureZ && (r.negated || !matches!(r.source, BitSource::Named(_))) {
                return Err(CircuitError::Controls { timestep: t, gate: i, kind: g.kind, what: "a plain bit name" });
            }
            if let BitSource::Indicator(tap) = &r.source {
                for s in tap.words.iter().flatten() {
                    if !self.in_bounds(s) {
                        return Err(CircuitError::OutOfBounds {
                            timestep: t,
                            gate: i,
                            site: *s,
                            width: self.width,
                            length: self.length,
                        });
                    }
                }
            }
            let name = r.bit_name();
            if !declared.contains(name.as_str()) {
                return Err(CircuitError::UndeclaredBit { timestep: t, gate: i, name });
            }
        }
        Ok(())
    }
}
