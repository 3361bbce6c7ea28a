// SPDX-License-Identifier: Apache-2.0
//! NPN canonization, ISOP and factoring against brute-force oracles.

mod common;

use proptest::prelude::*;

use common::npn_oracle::{apply_oracle, brute_force_classes};

use aig_orch::npn::{npn_canon, npn_classes, NpnTransform, RewriteLibrary};
use aig_orch::sop::{compile_form, factor, factor_best, isop, Cube, Sop};
use aig_orch::truth::TruthTable;

#[test]
fn npn_partition_is_exact() {
    let roots = brute_force_classes();
    let mut root_of_canon = std::collections::HashMap::new();
    let mut canon_of_root = std::collections::HashMap::new();
    for f in 0..=u16::MAX {
        let (c, t) = npn_canon(f);
        assert_eq!(t.apply(f), c, "transform of {f:#06x}");
        assert_eq!(t.inverse().apply(c), f);
        let r = roots[f as usize];
        assert_eq!(*root_of_canon.entry(c).or_insert(r), r);
        assert_eq!(*canon_of_root.entry(r).or_insert(c), c);
    }
    assert_eq!(canon_of_root.len(), 222);
    assert_eq!(npn_classes().len(), 222);
    // canonical form is the smallest member
    for f in 0..=u16::MAX {
        assert!(npn_canon(f).0 <= f);
    }
}

#[test]
fn transforms_follow_their_definition() {
    let all = NpnTransform::all();
    assert_eq!(all.len(), 768);
    for (i, t) in all.iter().enumerate() {
        for f in [0x8000u16, 0x6996, 0x1234, 0xCAFE, 0x0FF0] {
            assert_eq!(t.apply(f), apply_oracle(t, f));
            let u = &all[(i * 31 + 7) % all.len()];
            assert_eq!(t.then(u).apply(f), u.apply(t.apply(f)));
        }
    }
}

#[test]
fn library_templates_simulate_to_their_keys() {
    let lib = RewriteLibrary::standard();
    assert_eq!(lib.num_classes(), 222);
    for (canon, templates) in lib.iter() {
        assert!(!templates.is_empty());
        for t in templates {
            assert_eq!(t.truth(), canon);
        }
    }
    let back = RewriteLibrary::from_bytes(&lib.to_bytes()).unwrap();
    assert_eq!(&back, lib);
}

fn check_cover(tt: &TruthTable) {
    let n = tt.arity();
    let sop = isop(tt);
    for x in 0..1usize << n {
        assert_eq!(sop.eval(x), tt.bit(x), "cover of {tt:?} at {x}");
    }
    let form = factor(&sop);
    let (best, compl) = factor_best(tt);
    let (net, out) = compile_form(&best, compl);
    let net_tt = net.truth(out);
    for x in 0..1usize << n {
        assert_eq!(form.eval(x), tt.bit(x), "factored form of {tt:?} at {x}");
        assert_eq!(best.eval(x) ^ compl, tt.bit(x));
        assert_eq!(net_tt.bit(x), tt.bit(x));
    }
}

fn is_irredundant(tt: &TruthTable, sop: &Sop) -> bool {
    let n = tt.arity();
    let covers =
        |cubes: &[Cube]| (0..1usize << n).all(|x| cubes.iter().any(|c| c.eval(x)) == tt.bit(x));
    (0..sop.cubes.len()).all(|i| {
        let mut rest = sop.cubes.clone();
        rest.remove(i);
        !covers(&rest)
    })
}

#[test]
fn all_three_input_functions() {
    for bits in 0..256u64 {
        let tt = TruthTable::from_u64(3, bits);
        check_cover(&tt);
        assert!(is_irredundant(&tt, &isop(&tt)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_functions_up_to_eight_inputs(n in 1usize..=8, seed in any::<u64>(), density in 1u32..4) {
        let mut s = seed | 1;
        let mut tt = TruthTable::zero(n);
        for x in 0..1usize << n {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            tt.set_bit(x, (s & 3) < density as u64);
        }
        check_cover(&tt);
        if n <= 5 {
            prop_assert!(is_irredundant(&tt, &isop(&tt)));
        }
    }
}
