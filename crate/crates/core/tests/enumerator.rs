mod common;

use common::recount_block;
use definability_core::enumerator::{
    apply_instruction, block_boundaries, encode_instructions, enumerate, instructions_from_arities, Instruction,
};
use definability_core::term::{GeneratorKind, RelationTerm, TermKind};

use GeneratorKind::{Add, Mul, Nat};

const GOLDEN: [(u8, usize, usize, u32); 16] = [
    (0, 0, 0, 3),
    (0, 0, 0, 3),
    (0, 0, 0, 1),
    (1, 1, 0, 3),
    (1, 2, 0, 3),
    (1, 3, 0, 1),
    (2, 1, 2, 3),
    (3, 1, 1, 3),
    (3, 1, 2, 3),
    (3, 2, 1, 3),
    (3, 2, 2, 3),
    (4, 1, 0, 4),
    (4, 2, 0, 4),
    (4, 3, 0, 2),
    (5, 1, 0, 2),
    (5, 2, 0, 2),
];

fn tuples(v: &[Instruction]) -> Vec<(u8, usize, usize, u32)> {
    v.iter().map(Instruction::tuple).collect()
}

#[test]
fn golden_instructions() {
    assert_eq!(tuples(&encode_instructions(&[Add, Mul, Nat], 16)), GOLDEN);
    assert_eq!(encode_instructions(&[Add, Mul, Nat], 17)[16].tuple(), (1, 1, 0, 3));
}

#[test]
fn first_sixteen_terms() {
    let ts = enumerate(&[Add, Mul, Nat], 16);
    let a = |k: usize| ts[k - 1].clone();
    assert_eq!(a(4), RelationTerm::complement(&a(1)));
    assert_eq!(a(6), RelationTerm::complement(&a(3)));
    assert_eq!(a(7), RelationTerm::union(&a(1), &a(2)).unwrap());
    assert_eq!(a(10), RelationTerm::swap(&a(2), 1).unwrap());
    assert_eq!(a(14).render(), "(lift (base nat))");
    assert_eq!(a(16), RelationTerm::project(&a(2)).unwrap());
    assert_eq!(enumerate(&[Add, Mul, Nat], 3).len(), 3);
}

#[test]
fn two_generator_block() {
    let ts = enumerate(&[Add, Mul], 13);
    let count = |f: fn(&TermKind) -> bool| ts[2..].iter().filter(|t| f(t.kind())).count();
    assert_eq!(count(|k| matches!(k, TermKind::Complement(_))), 2);
    assert_eq!(count(|k| matches!(k, TermKind::Union(..))), 1);
    assert_eq!(count(|k| matches!(k, TermKind::Swap(..))), 4);
    assert_eq!(count(|k| matches!(k, TermKind::Lift(_))), 2);
    assert_eq!(count(|k| matches!(k, TermKind::Project(_))), 2);
}

const BLOCK_ONE_ARITIES: [u32; 16] = [3, 3, 1, 3, 3, 1, 3, 3, 3, 3, 3, 4, 4, 2, 2, 2];

#[test]
fn boundaries_match_recount() {
    let ks = block_boundaries(&[Add, Mul, Nat], 3).0;
    assert_eq!(&ks[..2], &[3, 16]);
    assert_eq!(ks[2], 16 + recount_block(&BLOCK_ONE_ARITIES));
    assert_eq!(block_boundaries(&[Add], 2).0, vec![1, 6]);
    assert_eq!(ks[1], 3 + recount_block(&[3, 3, 1]));
}

#[test]
fn block_views_agree() {
    assert_eq!(tuples(&instructions_from_arities(&[3, 3, 1])), GOLDEN[3..]);
    assert_eq!(tuples(&instructions_from_arities(&[1])), vec![(1, 1, 0, 1), (4, 1, 0, 2)]);
    let arities: Vec<u32> = GOLDEN.iter().map(|t| t.3).collect();
    assert_eq!(arities, BLOCK_ONE_ARITIES);
    let gens = [Add, Mul, Nat];
    let ks = block_boundaries(&gens, 4).0;
    let stream = encode_instructions(&gens, ks[3]);
    for w in ks.windows(2) {
        let before: Vec<u32> = stream[..w[0]].iter().map(|i| i.arity).collect();
        assert_eq!(instructions_from_arities(&before), stream[w[0]..w[1]]);
    }
}

#[test]
fn stream_well_formed_and_reproducible() {
    let gens = [Add, Mul, Nat];
    let n = block_boundaries(&gens, 3).0[2];
    let stream = encode_instructions(&gens, n);
    let mut rebuilt: Vec<RelationTerm> = Vec::new();
    for (pos, ins) in stream.iter().enumerate() {
        assert!(ins.is_well_formed(), "{ins:?}");
        assert!(ins.a <= pos && (ins.opcode != 2 || ins.b <= pos), "{ins:?} at {}", pos + 1);
        let t = apply_instruction(ins, gens.get(pos).copied(), &rebuilt).unwrap();
        assert_eq!(t.arity(), ins.arity);
        rebuilt.push(t);
    }
    assert_eq!(rebuilt, enumerate(&gens, n));
    assert_eq!(stream, encode_instructions(&gens, n));
}
