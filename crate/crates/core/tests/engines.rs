mod common;

use apr_core::oracle::{oracle_partial, oracle_total};
use apr_core::proof::{check_graph_properties, proof_graph, validate_pre_proof, Classification};
use apr_core::{check_partial, check_total, prove, ProverConfig, SplitStrategy, VerdictKind};
use common::{arb_instance, naive_partial, naive_total};
use proptest::prelude::*;

const STRATEGIES: [SplitStrategy; 2] = [SplitStrategy::Eager, SplitStrategy::Monolithic];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn prover_agrees_with_both_oracles(inst in arb_instance(8)) {
        let pred = inst.pred();
        let partial = oracle_partial(&inst.ars, &pred).unwrap();
        let total = oracle_total(&inst.ars, &pred).unwrap();
        if inst.ars.len() <= 5 {
            prop_assert_eq!(partial.valid, naive_partial(&inst.ars, &inst.p, &inst.q));
            prop_assert_eq!(total.valid, naive_total(&inst.ars, &inst.p, &inst.q));
        }
        for w in partial.witness.iter().chain(&total.witness) {
            prop_assert!(w.check(&inst.ars, &inst.p, &inst.q).is_ok());
        }
        for strategy in STRATEGIES {
            let cfg = ProverConfig::with_strategy(strategy);
            let vp = check_partial(&inst.ars, &pred, &cfg).unwrap();
            prop_assert_eq!(vp.kind == VerdictKind::PartiallyValid, partial.valid);
            let vt = check_total(&inst.ars, &pred, &cfg).unwrap();
            prop_assert_eq!(vt.kind == VerdictKind::TotallyValid, total.valid);
            for w in vp.witness.iter().chain(&vt.witness) {
                prop_assert!(w.check(&inst.ars, &inst.p, &inst.q).is_ok(), "{:?}", w);
            }
            prop_assert_eq!(vp.witness.is_some(), !vp.kind.holds());
            prop_assert_eq!(vt.witness.is_some(), !vt.kind.holds());
        }
    }

    #[test]
    fn pre_proofs_are_well_formed(inst in arb_instance(8)) {
        for strategy in STRATEGIES {
            let pp = prove(&inst.ars, &inst.pred(), &ProverConfig::with_strategy(strategy)).unwrap();
            let report = validate_pre_proof(&inst.ars, &pp);
            prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
            prop_assert_ne!(report.classification, Classification::Open);
            prop_assert!(pp.is_closed());
            let g = proof_graph(&pp).unwrap();
            prop_assert!(check_graph_properties(&inst.ars, &g).is_empty());
            // only Der nodes act as companions
            for &c in pp.companions.values() {
                prop_assert_eq!(pp.tree.node(c).rule, Some(apr_core::RuleName::Der));
            }
        }
    }

    #[test]
    fn strategies_agree(inst in arb_instance(8)) {
        let pred = inst.pred();
        let eager = ProverConfig::with_strategy(SplitStrategy::Eager);
        let mono = ProverConfig::with_strategy(SplitStrategy::Monolithic);
        prop_assert_eq!(
            check_total(&inst.ars, &pred, &eager).unwrap().kind,
            check_total(&inst.ars, &pred, &mono).unwrap().kind
        );
    }
}
