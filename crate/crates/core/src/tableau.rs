//! Stabilizer tableau simulator (Aaronson-Gottesman), up to 64 qubits.
//!
//! Used as an independent check on the expander: it tracks full stabilizer
//! states with signs, unlike the sign-free Pauli frames in [`crate::frame`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{Circuit, GateKind, Site};
use crate::classical::{BitSource, ControlRef};
use crate::pauli::{PauliOperator, MAX_QUBITS};

/// One generator: `(-1)^sign * prod_j i^(x_j z_j) X_j^x_j Z_j^z_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub x: u64,
    pub z: u64,
    pub sign: bool,
}

impl Row {
    fn bit(v: u64, j: usize) -> i32 {
        (v >> j & 1) as i32
    }

    /// `self <- other * self`, keeping track of the sign.
    fn absorb(&mut self, other: &Row, n: usize) {
        let mut sum = 2 * (i32::from(self.sign) + i32::from(other.sign));
        for j in 0..n {
            let (x1, z1) = (Self::bit(other.x, j), Self::bit(other.z, j));
            let (x2, z2) = (Self::bit(self.x, j), Self::bit(self.z, j));
            sum += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                _ => x2 * (1 - 2 * z2),
            };
        }
        self.sign = sum.rem_euclid(4) == 2;
        self.x ^= other.x;
        self.z ^= other.z;
    }

    fn anticommutes(&self, x: u64, z: u64) -> bool {
        ((self.x & z).count_ones() + (self.z & x).count_ones()) % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("tableau supports at most {MAX_QUBITS} qubits, got {0}")]
    TooWide(usize),
    #[error("{0} is not simulated by the tableau")]
    Unsupported(GateKind),
    #[error("classical control `{0}` is not a measured bit")]
    Control(String),
    #[error("measurement `{bit}` is deterministic with outcome {actual}, cannot force {forced}")]
    Forced { bit: String, actual: bool, forced: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    /// Destabilizers `0..n`, stabilizers `n..2n`.
    rows: Vec<Row>,
}

impl Tableau {
    /// `|0...0>` on `n` qubits.
    pub fn new(n: usize) -> Result<Self, TableauError> {
        if n > MAX_QUBITS {
            return Err(TableauError::TooWide(n));
        }
        let mut rows = Vec::with_capacity(2 * n);
        rows.extend((0..n).map(|j| Row { x: 1 << j, z: 0, sign: false }));
        rows.extend((0..n).map(|j| Row { x: 0, z: 1 << j, sign: false }));
        Ok(Self { n, rows })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[Row] {
        &self.rows[self.n..]
    }

    pub fn h(&mut self, a: usize) {
        for r in &mut self.rows {
            let (x, z) = (r.x >> a & 1, r.z >> a & 1);
            r.sign ^= x & z == 1;
            r.x = r.x & !(1 << a) | z << a;
            r.z = r.z & !(1 << a) | x << a;
        }
    }

    pub fn s(&mut self, a: usize) {
        for r in &mut self.rows {
            let (x, z) = (r.x >> a & 1, r.z >> a & 1);
            r.sign ^= x & z == 1;
            r.z ^= x << a;
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        for r in &mut self.rows {
            let (xc, zc, xt, zt) = (r.x >> c & 1, r.z >> c & 1, r.x >> t & 1, r.z >> t & 1);
            r.sign ^= xc & zt & (xt ^ zc ^ 1) == 1;
            r.x ^= xc << t;
            r.z ^= zt << c;
        }
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.cnot(a, b);
        self.cnot(b, a);
        self.cnot(a, b);
    }

    pub fn x(&mut self, a: usize) {
        for r in &mut self.rows {
            r.sign ^= r.z >> a & 1 == 1;
        }
    }

    pub fn z(&mut self, a: usize) {
        for r in &mut self.rows {
            r.sign ^= r.x >> a & 1 == 1;
        }
    }

    /// Z-basis measurement. A random outcome is replaced by `force` when
    /// given. Returns `(outcome, was_random)`.
    pub fn measure(&mut self, a: usize, force: Option<bool>) -> (bool, bool) {
        let n = self.n;
        if let Some(p) = (n..2 * n).find(|&i| self.rows[i].x >> a & 1 == 1) {
            let pivot = self.rows[p];
            for i in 0..2 * n {
                if i != p && self.rows[i].x >> a & 1 == 1 {
                    self.rows[i].absorb(&pivot, n);
                }
            }
            self.rows[p - n] = pivot;
            let outcome = force.unwrap_or(false);
            self.rows[p] = Row { x: 0, z: 1 << a, sign: outcome };
            (outcome, true)
        } else {
            let mut acc = Row { x: 0, z: 0, sign: false };
            for i in 0..n {
                if self.rows[i].x >> a & 1 == 1 {
                    let s = self.rows[i + n];
                    acc.absorb(&s, n);
                }
            }
            (acc.sign, false)
        }
    }

    pub fn reset(&mut self, a: usize) {
        if self.measure(a, Some(false)).0 {
            self.x(a);
        }
    }

    /// `Some(+1 | -1)` when `p` (or `-p`) is in the stabilizer group,
    /// `None` when its expectation is zero.
    pub fn expectation(&self, p: &PauliOperator) -> Option<i8> {
        let (x, z) = (p.x_mask(), p.z_mask());
        if self.stabilizers().iter().any(|r| r.anticommutes(x, z)) {
            return None;
        }
        let mut acc = Row { x: 0, z: 0, sign: false };
        for i in 0..self.n {
            if self.rows[i].anticommutes(x, z) {
                let s = self.rows[i + self.n];
                acc.absorb(&s, self.n);
            }
        }
        debug_assert_eq!((acc.x, acc.z), (x, z));
        Some(if acc.sign { -1 } else { 1 })
    }

    /// Reduced row-echelon stabilizer generators; equal for equal states.
    pub fn canonical(&self) -> Vec<Row> {
        let n = self.n;
        let mut rows: Vec<Row> = self.stabilizers().to_vec();
        let mut top = 0;
        // Columns: X bits first, then Z bits.
        for col in 0..2 * n {
            let has = |r: &Row| if col < n { r.x >> col & 1 == 1 } else { r.z >> (col - n) & 1 == 1 };
            let Some(p) = (top..rows.len()).find(|&i| has(&rows[i])) else { continue };
            rows.swap(top, p);
            let pivot = rows[top];
            for i in 0..rows.len() {
                if i != top && has(&rows[i]) {
                    rows[i].absorb(&pivot, n);
                }
            }
            top += 1;
        }
        rows
    }

    /// Runs the quantum and classical content of `circuit`. `index` maps
    /// grid sites to tableau qubits; `forced` fixes random measurement
    /// outcomes by bit name. Returns every measured bit.
    pub fn run(
        &mut self,
        circuit: &Circuit,
        index: &dyn Fn(Site) -> usize,
        forced: &BTreeMap<String, bool>,
    ) -> Result<BTreeMap<String, bool>, TableauError> {
        let mut bits = BTreeMap::new();
        for (_, _, g) in circuit.gates() {
            let q: Vec<usize> = g.targets.iter().map(|s| index(*s)).collect();
            match g.kind {
                GateKind::H => self.h(q[0]),
                GateKind::Cnot => self.cnot(q[0], q[1]),
                GateKind::Swap => self.swap(q[0], q[1]),
                GateKind::PauliX => self.x(q[0]),
                GateKind::PauliZ => self.z(q[0]),
                GateKind::PrepZero => self.reset(q[0]),
                GateKind::MeasureZ => {
                    let name = g.classical_controls[0].clone();
                    let want = forced.get(&name).copied();
                    let (outcome, random) = self.measure(q[0], want);
                    if let (false, Some(f)) = (random, want) {
                        if f != outcome {
                            return Err(TableauError::Forced { bit: name, actual: outcome, forced: f });
                        }
                    }
                    bits.insert(name, outcome);
                }
                GateKind::CcX | GateKind::CcZ => {
                    let mut fire = false;
                    for c in &g.classical_controls {
                        let r = ControlRef::parse(c).map_err(|_| TableauError::Control(c.clone()))?;
                        let BitSource::Named(name) = &r.source else {
                            return Err(TableauError::Control(c.clone()));
                        };
                        let v = *bits.get(name).ok_or_else(|| TableauError::Control(c.clone()))?;
                        fire ^= v ^ r.negated;
                    }
                    if fire {
                        if g.kind == GateKind::CcX {
                            self.x(q[0]);
                        } else {
                            self.z(q[0]);
                        }
                    }
                }
                GateKind::RemoteCnot => return Err(TableauError::Unsupported(g.kind)),
            }
        }
        Ok(bits)
    }
}
