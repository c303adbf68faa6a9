//! Breadth-first enumeration of every relation term generated from a list
//! of generators, and its encoding as instruction 4-tuples.
//!
//! Block `n + 1` applies each operation to all relations `1..=k_n` in the
//! order: complements, unions of equal-arity pairs `i < j`, adjacent
//! transpositions, set multiplications, projections. Duplicates are kept.

use alloc::vec::Vec;

use crate::term::{GeneratorKind, RelationTerm};

pub const OP_GIVEN: u8 = 0;
pub const OP_COMPLEMENT: u8 = 1;
pub const OP_UNION: u8 = 2;
pub const OP_PERMUTATION: u8 = 3;
pub const OP_SET_MULTIPLICATION: u8 = 4;
pub const OP_PROJECTION: u8 = 5;

/// One enumeration step: `(opcode, a, b, arity)` with 1-based operand
/// indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Instruction {
    pub opcode: u8,
    pub a: usize,
    pub b: usize,
    pub arity: u32,
}

impl Instruction {
    pub const fn new(opcode: u8, a: usize, b: usize, arity: u32) -> Self {
        Instruction { opcode, a, b, arity }
    }

    pub fn tuple(&self) -> (u8, usize, usize, u32) {
        (self.opcode, self.a, self.b, self.arity)
    }

    /// Checks the shape constraints that do not depend on other
    /// instructions.
    pub fn is_well_formed(&self) -> bool {
        if self.arity == 0 {
            return false;
        }
        match self.opcode {
            OP_GIVEN => self.a == 0 && self.b == 0,
            OP_COMPLEMENT | OP_SET_MULTIPLICATION | OP_PROJECTION => self.a >= 1 && self.b == 0,
            OP_UNION => 0 < self.a && self.a < self.b,
            OP_PERMUTATION => self.a >= 1 && self.b >= 1 && (self.b as u32) < self.arity,
            _ => false,
        }
    }
}

/// Strictly increasing `k_1, k_2, ...`; `k_n` is the index of the last
/// relation of block `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockBoundaries(pub Vec<usize>);

/// Instructions produced by one enumeration step over relations with the
/// given arities; operand indices refer to positions in `arities`.
pub fn instructions_from_arities(arities: &[u32]) -> Vec<Instruction> {
    let mut out = Vec::new();
    let n = arities.len();
    for (i, &a) in arities.iter().enumerate() {
        out.push(Instruction::new(OP_COMPLEMENT, i + 1, 0, a));
    }
    for i in 0..n {
        for j in i + 1..n {
            if arities[i] == arities[j] {
                out.push(Instruction::new(OP_UNION, i + 1, j + 1, arities[i]));
            }
        }
    }
    for (i, &a) in arities.iter().enumerate() {
        for p in 1..a {
            out.push(Instruction::new(OP_PERMUTATION, i + 1, p as usize, a));
        }
    }
    for (i, &a) in arities.iter().enumerate() {
        out.push(Instruction::new(OP_SET_MULTIPLICATION, i + 1, 0, a + 1));
    }
    for (i, &a) in arities.iter().enumerate() {
        if a >= 2 {
            out.push(Instruction::new(OP_PROJECTION, i + 1, 0, a - 1));
        }
    }
    out
}

/// Size of the block generated from relations of the given arities.
///
/// Counted without materializing the block: complements and lifts are one
/// per relation, unions are equal-arity unordered pairs, transpositions
/// number `arity - 1` per relation and projections one per relation of
/// arity at least 2.
pub fn block_size(arities: &[u32]) -> usize {
    let n = arities.len();
    let mut by_arity = alloc::collections::BTreeMap::<u32, usize>::new();
    for &a in arities {
        *by_arity.entry(a).or_default() += 1;
    }
    let unions: usize = by_arity.values().map(|&m| m * m.saturating_sub(1) / 2).sum();
    let perms: usize = by_arity.iter().map(|(&a, &m)| m * (a as usize - 1)).sum();
    let projections = arities.iter().filter(|&&a| a >= 2).count();
    n + unions + perms + n + projections
}

/// Lazy instruction stream.
#[derive(Clone, Debug)]
pub struct InstructionStream {
    arities: Vec<u32>,
    block: Vec<Instruction>,
    next_in_block: usize,
    generators: Vec<GeneratorKind>,
    emitted: usize,
}

impl InstructionStream {
    pub fn new(generators: &[GeneratorKind]) -> Self {
        InstructionStream {
            arities: Vec::new(),
            block: Vec::new(),
            next_in_block: 0,
            generators: generators.to_vec(),
            emitted: 0,
        }
    }
}

impl Iterator for InstructionStream {
    type Item = Instruction;

    fn next(&mut self) -> Option<Instruction> {
        if self.emitted < self.generators.len() {
            let a = self.generators[self.emitted].arity();
            self.emitted += 1;
            self.arities.push(a);
            return Some(Instruction::new(OP_GIVEN, 0, 0, a));
        }
        if self.arities.is_empty() {
            return None;
        }
        if self.next_in_block == self.block.len() {
            self.block = instructions_from_arities(&self.arities);
            self.next_in_block = 0;
        }
        let ins = self.block[self.next_in_block];
        self.next_in_block += 1;
        if self.next_in_block == self.block.len() {
            // Block finished: its arities join the operand pool.
            self.arities.extend(self.block.iter().map(|i| i.arity));
        }
        self.emitted += 1;
        Some(ins)
    }
}

pub fn encode_instructions(generators: &[GeneratorKind], count: usize) -> Vec<Instruction> {
    InstructionStream::new(generators).take(count).collect()
}

/// Applies one instruction to the terms built so far.
pub fn apply_instruction(
    ins: &Instruction,
    generator: Option<GeneratorKind>,
    terms: &[RelationTerm],
) -> crate::Result<RelationTerm> {
    let operand =
        |k: usize| terms.get(k.wrapping_sub(1)).ok_or(crate::Error::IndexOutOfRange { index: k, len: terms.len() });
    match ins.opcode {
        OP_GIVEN => generator.map(RelationTerm::base).ok_or_else(|| {
            crate::Error::InvalidInstance(alloc::string::String::from("given relation without generator"))
        }),
        OP_COMPLEMENT => Ok(RelationTerm::complement(operand(ins.a)?)),
        OP_UNION => RelationTerm::union(operand(ins.a)?, operand(ins.b)?),
        OP_PERMUTATION => RelationTerm::swap(operand(ins.a)?, ins.b as u32),
        OP_SET_MULTIPLICATION => Ok(RelationTerm::lift(operand(ins.a)?)),
        OP_PROJECTION => RelationTerm::project(operand(ins.a)?),
        op => Err(crate::Error::InvalidInstance(alloc::format!("unknown opcode {op}"))),
    }
}

/// Lazy term stream; every term is built from earlier terms by the
/// corresponding instruction.
#[derive(Clone, Debug)]
pub struct TermStream {
    instructions: InstructionStream,
    generators: Vec<GeneratorKind>,
    terms: Vec<RelationTerm>,
}

impl TermStream {
    pub fn new(generators: &[GeneratorKind]) -> Self {
        TermStream {
            instructions: InstructionStream::new(generators),
            generators: generators.to_vec(),
            terms: Vec::new(),
        }
    }
}

impl Iterator for TermStream {
    type Item = (Instruction, RelationTerm);

    fn next(&mut self) -> Option<Self::Item> {
        let ins = self.instructions.next()?;
        let g = self.generators.get(self.terms.len()).copied();
        let t = apply_instruction(&ins, g, &self.terms).expect("stream instructions are consistent");
        self.terms.push(t.clone());
        Some((ins, t))
    }
}

pub fn enumerate(generators: &[GeneratorKind], count: usize) -> Vec<RelationTerm> {
    TermStream::new(generators).take(count).map(|(_, t)| t).collect()
}

/// First `blocks` block boundaries.
pub fn block_boundaries(generators: &[GeneratorKind], blocks: usize) -> BlockBoundaries {
    let mut arities: Vec<u32> = generators.iter().map(|g| g.arity()).collect();
    let mut ks = Vec::with_capacity(blocks);
    if blocks == 0 || arities.is_empty() {
        return BlockBoundaries(ks);
    }
    ks.push(arities.len());
    while ks.len() < blocks {
        if ks.len() + 1 == blocks {
            let k = arities.len() + block_size(&arities);
            ks.push(k);
            break;
        }
        let block = instructions_from_arities(&arities);
        arities.extend(block.iter().map(|i| i.arity));
        ks.push(arities.len());
    }
    BlockBoundaries(ks)
}
