mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use ovw_core::henson::{edge, phi_embed, GraphSpec, HVertex};
use ovw_core::largeness::{density, syndetic_holds, thick_holds, Family};
use ovw_core::search::cdrt::{encode, phi};
use ovw_core::search::embed::HEmbedding;
use ovw_core::search::prehomog::leq_m_check;
use ovw_core::space::words_up_to;
use ovw_core::tree::tree_from_generator;
use ovw_core::word::{
    decompose, recompose, substitute_complete, LeftVarWord, OmegaPrefix, Symbol, VarWord, Word,
};

/// A prefix-valid word: each choice picks a letter, an old variable or the next new one.
fn prefix_word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prefix_word_in(k, 0..=max_len)
}

fn prefix_word_of_len(k: usize, len: usize) -> impl Strategy<Value = Word> {
    prefix_word_in(k, len..=len)
}

fn prefix_word_in(k: usize, lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<u8>(), lens).prop_map(move |choices| {
        let mut used = 0usize;
        let mut out = Word::empty();
        for c in choices {
            let r = c as usize % (k + used + 1);
            if r < k {
                out.push(Symbol::Letter(r as u8));
            } else {
                out.push(Symbol::Var((r - k) as u8));
                used += usize::from(r - k == used);
            }
        }
        out
    })
}

/// An ordered word with variable indices non-decreasing and introduced in order.
fn ordered_word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    ordered_word_in(k, 0..=max_len)
}

fn ordered_word_of_len(k: usize, len: usize) -> impl Strategy<Value = Word> {
    ordered_word_in(k, len..=len)
}

fn ordered_word_in(k: usize, lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<u8>(), lens).prop_map(move |choices| {
        let mut current: Option<u8> = None;
        let mut out = Word::empty();
        for c in choices {
            let r = c as usize % (k + 2);
            if r < k {
                out.push(Symbol::Letter(r as u8));
            } else if r == k && current.is_some() {
                out.push(Symbol::Var(current.unwrap()));
            } else {
                let next = current.map_or(0, |j| j + 1);
                current = Some(next);
                out.push(Symbol::Var(next));
            }
        }
        out
    })
}

fn dim(x: &Word) -> usize {
    vars_of(x).iter().max().map_or(0, |&j| j as usize + 1)
}

fn family(k: usize, n: usize, bits: &[bool]) -> Family {
    let words = words_up_to(k, n);
    Family::from_words(k, n, words.into_iter().zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(x, _)| x))
        .unwrap()
}

/// Dense random membership: each word is in with probability 13/16.
fn dense_bits(len: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec((0u8..16).prop_map(|x| x < 13), len)
}

fn vertex() -> impl Strategy<Value = HVertex> {
    (1usize..=10)
        .prop_flat_map(|len| (Just(len), 1u64..(1u64 << len)))
        .prop_map(|(len, bits)| HVertex::new(len, bits))
}

proptest! {
    #[test]
    fn substitution_associates(wd in prefix_word(2, 12), v in prefix_word(2, 12), u in prefix_word(2, 6)) {
        let (pw, pv) = (OmegaPrefix::new(wd.clone(), 2).unwrap(), OmegaPrefix::new(v.clone(), 2).unwrap());
        let lhs = pv.substitute(&u).ok().and_then(|vu| pw.substitute(&vu).ok());
        let rhs = pw.compose(&pv).substitute(&u).ok();
        prop_assert_eq!(lhs.is_some(), rhs.is_some());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, subst(&v, &u, false).and_then(|vu| subst(&wd, &vu, false)));
    }

    #[test]
    fn complete_substitution_keeps_dimension(
        (g, u) in ordered_word(2, 12).prop_flat_map(|g| { let n = dim(&g); (Just(g), prefix_word_of_len(2, n)) }),
    ) {
        let n = dim(&g);
        let m = dim(&u);
        let out = substitute_complete(&g, n, &u).unwrap();
        prop_assert!(is_var_word(&out, 2, m), "{}[{}] = {} is not {}-dimensional", g, u, out, m);
        if m == 0 {
            prop_assert!(out.iter().all(|s| !s.is_var()));
        }
    }

    #[test]
    fn letter_instances_have_no_variables(g in ordered_word(3, 12), seed in prop::collection::vec(0u8..3, 12)) {
        let n = dim(&g);
        let u: Word = seed[..n].iter().map(|&a| Symbol::Letter(a)).collect();
        let out = substitute_complete(&g, n, &u).unwrap();
        prop_assert!(out.iter().all(|s| !s.is_var()));
        prop_assert_eq!(out.len(), g.len());
    }

    #[test]
    fn decompose_round_trips(g in ordered_word(3, 16)) {
        let vw = VarWord::new(g.clone(), 3, dim(&g), true).unwrap();
        let d = decompose(&vw).unwrap();
        prop_assert_eq!(d.blocks.len(), dim(&g));
        prop_assert_eq!(recompose(&d, 3).unwrap(), vw);
    }

    #[test]
    fn tree_levels_are_bounded(g in ordered_word(2, 12)) {
        let t = tree_from_generator(&VarWord::new(g.clone(), 2, dim(&g), true).unwrap()).unwrap();
        let mut total = 0;
        for j in 0..=t.dim() {
            let level = t.level(j).unwrap();
            prop_assert!(level.len() <= 2usize.pow(j as u32));
            total += level.len();
        }
        prop_assert_eq!(total, t.elements().len());
        prop_assert_eq!(t.size(), g.len());
    }

    #[test]
    fn subtree_of_instance(
        (g, v) in ordered_word(2, 10).prop_flat_map(|g| { let n = dim(&g); (Just(g), ordered_word_of_len(2, n)) }),
    ) {
        let n = dim(&g);
        let sub = substitute_complete(&g, n, &v).unwrap();
        let small = tree_from_generator(&VarWord::new(sub, 2, dim(&v), true).unwrap()).unwrap();
        let big = tree_from_generator(&VarWord::new(g.clone(), 2, n, true).unwrap()).unwrap();
        let big_set: BTreeSet<&Word> = big.elements().iter().collect();
        for x in small.elements() {
            prop_assert!(big_set.contains(x), "{} not in the tree of {}", x, g);
        }
    }

    #[test]
    fn largeness_is_monotone(a in dense_bits(127), b in prop::collection::vec(any::<bool>(), 127)) {
        let (k, n, ell) = (2, 6, 2);
        let s = family(k, n, &a);
        let bigger = s.union(&family(k, n, &b));
        for r in 0..=n {
            prop_assert!(density(&s, r).unwrap() <= density(&bigger, r).unwrap());
        }
        if syndetic_holds(&s, ell) {
            prop_assert!(syndetic_holds(&bigger, ell));
        }
        if thick_holds(&s, ell) {
            prop_assert!(thick_holds(&bigger, ell));
        }
        prop_assert_eq!(syndetic_holds(&s, ell), syndetic(&s.members().collect(), k, n, ell));
        prop_assert_eq!(thick_holds(&s, ell), thick(&s.members().collect(), k, n, ell));
    }

    #[test]
    fn syndetic_meets_thick(a in dense_bits(127), b in dense_bits(127)) {
        let (s, t) = (family(2, 6, &a), family(2, 6, &b));
        if syndetic_holds(&s, 2) && thick_holds(&t, 2) {
            prop_assert!(!s.intersection(&t).is_empty());
        }
    }

    #[test]
    fn block_embedding_maps_trees_to_trees(
        blocks in prop::collection::vec(prop::collection::vec(prop::option::of(0u8..2), 0..4), 1..5),
        g in ordered_word(2, 4),
    ) {
        let blocks: Vec<LeftVarWord> = blocks
            .iter()
            .map(|b| {
                let mut x = Word::new(vec![Symbol::Var(0)]);
                for s in b {
                    x.push(s.map_or(Symbol::Var(0), Symbol::Letter));
                }
                LeftVarWord::new(x, 2).unwrap()
            })
            .collect();
        let h = HEmbedding::new(blocks);
        prop_assume!(g.len() <= h.domain_len());
        let n = dim(&g);
        let image_gen = h.apply_var(&g).unwrap();
        let image = tree_from_generator(&VarWord::new(image_gen, 2, n, true).unwrap()).unwrap();
        let source = tree_from_generator(&VarWord::new(g, 2, n, true).unwrap()).unwrap();
        let mapped: BTreeSet<Word> = source.elements().iter().map(|x| h.apply(x).unwrap()).collect();
        prop_assert_eq!(mapped, image.elements().iter().cloned().collect::<BTreeSet<_>>());
        for x in source.elements() {
            prop_assert!(image.contains(&h.apply(x).unwrap()));
        }
    }

    #[test]
    fn leq_is_transitive_and_nested(
        wd in prefix_word(2, 12),
        t1 in prefix_word(2, 8),
        t2 in prefix_word(2, 8),
        m in 0usize..3,
    ) {
        // V = z_0 ⋯ z_{m-1} followed by a prefix-valid tail over the remaining variables.
        let starts = |t: &Word| -> OmegaPrefix {
            let mut v: Vec<Symbol> = (0..m as u8).map(Symbol::Var).collect();
            v.extend(t.iter().map(|&s| match s {
                Symbol::Var(j) => Symbol::Var(j + m as u8),
                a => a,
            }));
            OmegaPrefix::new(Word::new(v), 2).unwrap()
        };
        let w0 = OmegaPrefix::new(wd, 2).unwrap();
        let w1 = w0.compose(&starts(&t1));
        let w2 = w1.compose(&starts(&t2));
        prop_assert!(leq_m_check(&w1, &w0, m).holds);
        prop_assert!(leq_m_check(&w2, &w1, m).holds);
        prop_assert!(leq_m_check(&w2, &w0, m).holds);
        if leq_m_check(&w1, &w0, m + 1).holds {
            prop_assert!(leq_m_check(&w1, &w0, m).holds);
        }
    }

    #[test]
    fn edges_are_symmetric(v in vertex(), u in vertex()) {
        prop_assert_eq!(edge(v, u), edge(u, v));
        prop_assert!(!edge(v, v));
        prop_assert_eq!(edge(v, u), edge_def(&v.to_word(), &u.to_word()));
    }

    #[test]
    fn phi_preserves_edges(n in 1usize..9, bits in prop::collection::vec(any::<bool>(), 36)) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&p, _)| p).collect();
        let g = GraphSpec::from_edges(n, &edges);
        prop_assume!(g.find_triangle().is_none());
        let e = phi_embed(&g).unwrap();
        prop_assert!(e.preserved);
        for (i, j) in pairs {
            let (a, b) = (&e.images[i].word, &e.images[j].word);
            prop_assert_eq!(g.adjacent(i, j), edge_def(a, b));
        }
    }

    #[test]
    fn encode_then_phi_is_identity(u in prefix_word(2, 10), n in 0usize..3) {
        if let Some(v) = encode(&u, 2, n) {
            prop_assert!(is_var_word(&v, 0, 2 + n));
            prop_assert_eq!(phi(&v, 2), u);
        }
    }
}
