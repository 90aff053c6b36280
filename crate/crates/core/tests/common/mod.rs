#![allow(dead_code)]

use proptest::prelude::*;
use workbench::machine::{BinaryTM, Dir, HaltMode, Rule};

/// Random machines with 1..=3 working states in any halting mode.
pub fn arb_tm() -> impl Strategy<Value = BinaryTM> {
    (1usize..=3, 0u8..3).prop_flat_map(|(k, mode)| {
        let mode = match mode {
            0 => HaltMode::LeftRollOff,
            1 => HaltMode::ExplicitHaltState,
            _ => HaltMode::RightRollOff,
        };
        let n = if mode == HaltMode::ExplicitHaltState { k + 1 } else { k };
        let rule = (0..n, any::<bool>(), any::<bool>()).prop_map(|(next, write, right)| Rule {
            next,
            write,
            dir: if right { Dir::R } else { Dir::L },
        });
        proptest::collection::vec(rule, 2 * k).prop_map(move |rules| {
            let triples = rules.into_iter().enumerate().map(|(i, r)| (i / 2, i % 2 == 1, r));
            let halts: Vec<usize> = if mode == HaltMode::ExplicitHaltState { vec![k] } else { vec![] };
            BinaryTM::new(n, 0, triples, halts, mode).unwrap()
        })
    })
}

pub fn arb_input(max: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), 0..=max)
}
