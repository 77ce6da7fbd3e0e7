//! Expander circuits checked against the stabilizer tableau.

use std::collections::BTreeMap;

use nnft_core::circuit::Site;
use nnft_core::expand::{remote_cnot_gadget, zero_prep, zero_prep_word};
use nnft_core::steane::CodeDefinition;
use nnft_core::tableau::Tableau;
use nnft_core::PauliOperator;

/// Lifts a 7-qubit operator onto the tableau qubits of `word`.
fn lift(p: &PauliOperator, word: &[usize; 7], n: usize) -> PauliOperator {
    let (mut x, mut z) = (0u64, 0u64);
    for (q, &site) in word.iter().enumerate() {
        x |= (p.x_mask() >> q & 1) << site;
        z |= (p.z_mask() >> q & 1) << site;
    }
    PauliOperator::from_masks(n, x, z).unwrap()
}

#[test]
fn zero_prep_yields_logical_zero() {
    let c = zero_prep();
    let n = (c.width * c.length) as usize;
    let idx = |s: Site| (s.row * c.length + s.col) as usize;
    let mut t = Tableau::new(n).unwrap();
    t.run(&c, &idx, &BTreeMap::new()).unwrap();
    let word = zero_prep_word().map(idx);
    let code = CodeDefinition::steane();
    for s in code.stabilizers() {
        assert_eq!(t.expectation(&lift(&s, &word, n)), Some(1), "{s}");
    }
    assert_eq!(t.expectation(&lift(&code.logical_z, &word, n)), Some(1));
    assert_eq!(t.expectation(&lift(&code.logical_x, &word, n)), None);
}

const C: usize = 0;
const E1: usize = 1;
const E2: usize = 2;
const T: usize = 3;

fn gadget_index(length: u32) -> impl Fn(Site) -> usize {
    move |s: Site| match s.col {
        0 => C,
        1 => E1,
        c if c == length - 2 => E2,
        _ => T,
    }
}

fn share_epr(t: &mut Tableau) {
    t.h(E1);
    t.cnot(E1, E2);
    t.x(E2);
}

/// Prepares one of the six single-qubit stabilizer states.
fn prepare(t: &mut Tableau, q: usize, which: usize) {
    match which {
        0 => {}
        1 => t.x(q),
        2 => t.h(q),
        3 => {
            t.x(q);
            t.h(q);
        }
        4 => {
            t.h(q);
            t.s(q);
        }
        _ => {
            t.x(q);
            t.h(q);
            t.s(q);
        }
    }
}

fn forced(m1: bool, m2: bool) -> BTreeMap<String, bool> {
    BTreeMap::from([("m1".to_string(), m1), ("m2".to_string(), m2)])
}

#[test]
fn gadget_matches_cnot_on_choi_state() {
    for length in [4u32, 9] {
        let g = remote_cnot_gadget(length);
        let idx = gadget_index(length);
        let (rc, rt) = (4, 5);
        let bell = |t: &mut Tableau| {
            t.h(C);
            t.cnot(C, rc);
            t.h(T);
            t.cnot(T, rt);
        };
        let mut want = Tableau::new(6).unwrap();
        bell(&mut want);
        want.cnot(C, T);
        for m1 in [false, true] {
            for m2 in [false, true] {
                let mut t = Tableau::new(6).unwrap();
                bell(&mut t);
                share_epr(&mut t);
                let bits = t.run(&g.circuit, &idx, &forced(m1, m2)).unwrap();
                assert_eq!((bits["m1"], bits["m2"]), (m1, m2));
                t.reset(E1);
                t.reset(E2);
                assert_eq!(t.canonical(), want.canonical(), "outcomes {m1} {m2}");
            }
        }
    }
}

#[test]
fn gadget_matches_cnot_on_product_states() {
    let g = remote_cnot_gadget(4);
    let idx = gadget_index(4);
    for a in 0..6 {
        for b in 0..6 {
            let mut want = Tableau::new(4).unwrap();
            prepare(&mut want, C, a);
            prepare(&mut want, T, b);
            want.cnot(C, T);
            for m1 in [false, true] {
                for m2 in [false, true] {
                    let mut t = Tableau::new(4).unwrap();
                    prepare(&mut t, C, a);
                    prepare(&mut t, T, b);
                    share_epr(&mut t);
                    t.run(&g.circuit, &idx, &forced(m1, m2)).unwrap();
                    t.reset(E1);
                    t.reset(E2);
                    assert_eq!(t.canonical(), want.canonical(), "states {a} {b}, outcomes {m1} {m2}");
                }
            }
        }
    }
}

#[test]
fn gadget_leaves_target_alone_when_control_is_off() {
    let g = remote_cnot_gadget(4);
    let mut t = Tableau::new(4).unwrap();
    share_epr(&mut t);
    t.run(&g.circuit, &gadget_index(4), &forced(false, true)).unwrap();
    assert_eq!(t.expectation(&PauliOperator::parse("IIIZ").unwrap()), Some(1));
    assert_eq!(t.expectation(&PauliOperator::parse("ZIII").unwrap()), Some(1));
}
