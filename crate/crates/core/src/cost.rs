//! Gate-count accounting for one level of concatenation.
//!
//! Counts are per level-`L` operation, in level-`(L-1)` operations. A
//! [`Term`] is `multiplicity x (computational + communication)`; the
//! computational part goes to `N_U`/`N_E` and the communication part to
//! `N_Uc`/`N_Ec`.
//!
//! The term tables below are data. The expander re-derives the subset that
//! can be checked geometrically (transversal gates, logical SWAP, zero
//! preparation, the error-correction block itself).

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::layout::BlockVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommModel {
    /// Any two qubits interact directly.
    Free,
    /// Distant CNOTs by teleportation: 5 operations each, 1 of which is the
    /// useful interaction.
    RemoteCnot,
    /// Nearest-neighbour SWAP chains on the stripe.
    Swap,
}

impl CommModel {
    pub const ALL: [CommModel; 3] = [CommModel::Free, CommModel::RemoteCnot, CommModel::Swap];

    pub fn name(self) -> &'static str {
        match self {
            CommModel::Free => "free",
            CommModel::RemoteCnot => "recnot",
            CommModel::Swap => "swap",
        }
    }
}

/// Operations per remote CNOT between two level-`(L-1)` qubits.
pub const REMOTE_CNOT_OPS: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub label: &'static str,
    pub multiplicity: u64,
    pub computational: u64,
    pub communication: u64,
}

impl Term {
    const fn new(label: &'static str, multiplicity: u64, computational: u64, communication: u64) -> Self {
        Self { label, multiplicity, computational, communication }
    }

    pub fn count(&self) -> u64 {
        self.multiplicity * (self.computational + self.communication)
    }

    pub fn computational_total(&self) -> u64 {
        self.multiplicity * self.computational
    }

    pub fn communication_total(&self) -> u64 {
        self.multiplicity * self.communication
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBreakdown {
    pub model: CommModel,
    pub variant: BlockVariant,
    pub n_u: u64,
    pub n_uc: u64,
    pub n_e: u64,
    pub n_ec: u64,
    pub unitary_terms: Vec<Term>,
    pub ec_terms: Vec<Term>,
}

impl CountBreakdown {
    pub fn n_total(&self) -> u64 {
        self.n_u + self.n_uc + self.n_e + self.n_ec
    }

    pub fn unitary_total(&self) -> u64 {
        self.n_u + self.n_uc
    }

    pub fn ec_total(&self) -> u64 {
        self.n_e + self.n_ec
    }
}

fn sums(terms: &[Term]) -> (u64, u64) {
    terms.iter().fold((0, 0), |(a, b), t| (a + t.computational_total(), b + t.communication_total()))
}

// Per-gadget constants.
const W: u64 = 7;
const RECNOT_COMM: u64 = W * (REMOTE_CNOT_OPS - 1);

fn base_ec_terms(model: CommModel) -> Vec<Term> {
    match model {
        CommModel::Free => alloc::vec![
            Term::new("CNOT", 4, W, 0),
            Term::new("H", 4, W, 0),
            Term::new("Lambda2(X)", 1, W, 0),
            Term::new("Lambda2(Z)", 1, W, 0),
        ],
        CommModel::RemoteCnot => alloc::vec![
            Term::new("reCNOT", 4, W, RECNOT_COMM),
            Term::new("H", 4, W, 0),
            Term::new("Lambda2(X) as reCNOT", 1, W, RECNOT_COMM),
            Term::new("Lambda2(Z) as reCNOT", 1, W, RECNOT_COMM),
        ],
        CommModel::Swap => alloc::vec![
            Term::new("CNOT data-zero + 112 SWAP", 4, W, 112),
            Term::new("H", 4, W, 0),
            Term::new("logical SWAP zero-zero + 84 SWAP", 2, W, 84),
            Term::new("Lambda2(X) + 154 SWAP", 1, W, 154),
            Term::new("Lambda2(Z) + 154 SWAP", 1, W, 154),
        ],
    }
}

fn prep_ec_terms(model: CommModel) -> Vec<Term> {
    match model {
        CommModel::Free => alloc::vec![
            Term::new("zero prep (3 H + 9 CNOT)", 12, 12, 0),
            Term::new("purification Lambda2(X)", 4, W, 0),
            Term::new("purification CNOT", 8, W, 0),
        ],
        CommModel::RemoteCnot => alloc::vec![
            // 3 H + 3 CNOT + 6 reCNOT: 12 useful operations, 6 x 4 communication.
            Term::new("zero prep (3 H + 3 CNOT + 6 reCNOT)", 12, 12, 6 * (REMOTE_CNOT_OPS - 1)),
            Term::new("purification Lambda2(X) as reCNOT", 4, W, RECNOT_COMM),
            Term::new("purification reCNOT", 8, W, RECNOT_COMM),
        ],
        CommModel::Swap => alloc::vec![
            // 27 operations per zero: the 12 gates of the encoder plus 15 SWAPs.
            Term::new("zero prep (27 ops)", 12, 12, 15),
            Term::new("logical SWAP zero-zero + 84 SWAP", 2, W, 84),
            Term::new("logical SWAP + 98 SWAP", 4, W, 98),
            Term::new("CNOT + 112 SWAP", 4, W, 112),
            Term::new("CNOT + 168 SWAP", 4, W, 168),
            Term::new("Lambda2(X) + 154 SWAP", 4, W, 154),
        ],
    }
}

fn unitary_terms(model: CommModel, variant: BlockVariant) -> Vec<Term> {
    match (model, variant) {
        (CommModel::Free, _) => alloc::vec![Term::new("transversal CNOT", 1, W, 0)],
        (CommModel::RemoteCnot, _) => alloc::vec![Term::new("transversal reCNOT", 1, W, RECNOT_COMM)],
        (CommModel::Swap, BlockVariant::Minimal27) => alloc::vec![Term::new("row-based CNOT + 196 SWAP", 1, W, 196)],
        (CommModel::Swap, BlockVariant::WithPrep46) => alloc::vec![Term::new("row-based CNOT + 336 SWAP", 1, W, 336)],
    }
}

/// `(N_U, N_Uc)` for a two-qubit logical unitary.
pub fn unitary_count(model: CommModel, variant: BlockVariant) -> (u64, u64) {
    sums(&unitary_terms(model, variant))
}

/// `(N_E, N_Ec, terms)` for one error-correction block.
pub fn ec_count(model: CommModel, variant: BlockVariant) -> (u64, u64, Vec<Term>) {
    let mut terms = base_ec_terms(model);
    if variant == BlockVariant::WithPrep46 {
        terms.extend(prep_ec_terms(model));
    }
    let (e, ec) = sums(&terms);
    (e, ec, terms)
}

pub fn breakdown(model: CommModel, variant: BlockVariant) -> CountBreakdown {
    let u_terms = unitary_terms(model, variant);
    let (n_u, n_uc) = sums(&u_terms);
    let (n_e, n_ec, ec_terms) = ec_count(model, variant);
    CountBreakdown { model, variant, n_u, n_uc, n_e, n_ec, unitary_terms: u_terms, ec_terms }
}

/// `N = N_U + N_Uc + N_E + N_Ec`.
pub fn level_cost(model: CommModel, variant: BlockVariant) -> u64 {
    breakdown(model, variant).n_total()
}

/// Approximate physical gate count `N^L`.
pub fn physical_gate_count(level: u32, model: CommModel, variant: BlockVariant) -> BigUint {
    BigUint::from(level_cost(model, variant)).pow(level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("a logical SWAP is not mediated by remote CNOTs")]
    UnsupportedModel(CommModel),
}

/// Logical SWAP between adjacent words on one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicalSwapCost {
    pub computational: u64,
    pub communication: u64,
    /// SWAPs to interleave and to undo the interleave.
    pub interleave: u64,
    pub deinterleave: u64,
}

pub fn logical_swap_cost(model: CommModel) -> Result<LogicalSwapCost, CostError> {
    match model {
        CommModel::Free => Ok(LogicalSwapCost { computational: W, communication: 0, interleave: 0, deinterleave: 0 }),
        CommModel::Swap => {
            // Bubbling word B through word A: sum_{j=1..7} (7 - j) = 21 each way.
            let inter = W * (W - 1) / 2;
            Ok(LogicalSwapCost { computational: W, communication: 2 * inter, interleave: inter, deinterleave: inter })
        }
        CommModel::RemoteCnot => Err(CostError::UnsupportedModel(model)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BlockVariant::*;
    use CommModel::*;

    #[test]
    fn unitary_counts() {
        assert_eq!(unitary_count(Free, Minimal27), (7, 0));
        assert_eq!(unitary_count(RemoteCnot, Minimal27), (7, 28));
        assert_eq!(unitary_count(RemoteCnot, WithPrep46).0 + unitary_count(RemoteCnot, WithPrep46).1, 35);
        assert_eq!(unitary_count(Swap, Minimal27), (7, 196));
        assert_eq!(unitary_count(Swap, WithPrep46), (7, 336));
    }

    #[test]
    fn ec_counts_and_terms() {
        let (e, ec, terms) = ec_count(Free, Minimal27);
        assert_eq!((e, ec), (70, 0));
        assert_eq!(terms.iter().map(Term::count).collect::<Vec<_>>(), [28, 28, 7, 7]);

        let (e, ec, terms) = ec_count(RemoteCnot, Minimal27);
        assert_eq!(e + ec, 238);
        assert_eq!(terms.iter().map(Term::count).collect::<Vec<_>>(), [140, 28, 35, 35]);

        let (_, _, terms) = ec_count(RemoteCnot, WithPrep46);
        assert_eq!(terms[4..].iter().map(Term::count).collect::<Vec<_>>(), [432, 140, 280]);

        let (_, _, terms) = ec_count(Free, WithPrep46);
        assert_eq!(terms[4..].iter().map(Term::count).collect::<Vec<_>>(), [144, 28, 56]);

        let (e, ec, terms) = ec_count(Swap, Minimal27);
        assert_eq!(e + ec, 1008);
        assert_eq!(terms.iter().map(Term::count).collect::<Vec<_>>(), [476, 28, 182, 161, 161]);

        let (e, ec, terms) = ec_count(Swap, WithPrep46);
        assert_eq!(e + ec, 3754);
        assert_eq!(terms[5..].iter().map(Term::count).collect::<Vec<_>>(), [324, 182, 420, 476, 700, 644]);
    }

    #[test]
    fn level_costs() {
        assert_eq!(level_cost(Free, Minimal27), 77);
        assert_eq!(level_cost(Swap, WithPrep46), 4097);
        assert_eq!(level_cost(RemoteCnot, Minimal27), 273);
        assert_eq!(physical_gate_count(0, Free, Minimal27), BigUint::from(1u32));
        assert_eq!(physical_gate_count(1, Free, Minimal27), BigUint::from(77u32));
        assert_eq!(physical_gate_count(2, Swap, WithPrep46), BigUint::from(16_785_409u64));
    }

    #[test]
    fn term_sums_match_aggregates() {
        for m in CommModel::ALL {
            for v in BlockVariant::ALL {
                let b = breakdown(m, v);
                let ec_sum: u64 = b.ec_terms.iter().map(Term::count).sum();
                let u_sum: u64 = b.unitary_terms.iter().map(Term::count).sum();
                assert_eq!(ec_sum, b.ec_total());
                assert_eq!(u_sum, b.unitary_total());
                assert_eq!(b.n_total(), b.ec_total() + b.unitary_total());
            }
        }
    }

    #[test]
    fn monotone_in_model_and_variant() {
        for v in BlockVariant::ALL {
            assert!(level_cost(Free, v) < level_cost(RemoteCnot, v));
            assert!(level_cost(RemoteCnot, v) < level_cost(Swap, v));
        }
        for m in CommModel::ALL {
            assert!(level_cost(m, WithPrep46) > level_cost(m, Minimal27));
        }
    }

    #[test]
    fn logical_swap() {
        let s = logical_swap_cost(Swap).unwrap();
        assert_eq!((s.computational, s.communication), (7, 42));
        assert_eq!((s.interleave, s.deinterleave), (21, 21));
        assert_eq!(logical_swap_cost(Free).unwrap().communication, 0);
        assert_eq!(logical_swap_cost(RemoteCnot), Err(CostError::UnsupportedModel(RemoteCnot)));
    }

    proptest::proptest! {
        #[test]
        fn gate_count_recursion(level in 0u32..12) {
            for m in CommModel::ALL {
                for v in BlockVariant::ALL {
                    proptest::prop_assert_eq!(
                        physical_gate_count(level + 1, m, v),
                        physical_gate_count(level, m, v) * BigUint::from(level_cost(m, v))
                    );
                }
            }
        }
    }
}
