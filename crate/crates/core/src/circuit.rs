//! Arithmetic circuits over an arbitrary ring.
//!
//! Transform constructions are written once against [`Builder`]. The
//! [`CircuitBuilder`] records gates into a [`Circuit`] that can be dumped and
//! evaluated later over any [`Ring`]; [`DirectEval`] performs the same
//! arithmetic immediately without materializing gates.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::ring::Ring;

pub type GateId = usize;

/// Operands always refer to gates with smaller ids, so the gate list is a
/// topological order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    /// Integer constant, embedded into the ring at evaluation time.
    ConstInt(i64),
    Add(GateId, GateId),
    Mul(GateId, GateId),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CircuitStats {
    pub gates: usize,
    pub adds: usize,
    pub muls: usize,
    pub consts: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    inputs: usize,
    outputs: IndexMap<String, GateId>,
}

impl Circuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> &IndexMap<String, GateId> {
        &self.outputs
    }

    pub fn stats(&self) -> CircuitStats {
        let mut s = CircuitStats {
            gates: self.gates.len(),
            ..Default::default()
        };
        for g in &self.gates {
            match g {
                Gate::Add(..) => s.adds += 1,
                Gate::Mul(..) => s.muls += 1,
                Gate::ConstInt(_) => s.consts += 1,
                Gate::Input(_) => {}
            }
        }
        s
    }

    /// Evaluates every gate once, in id order, and returns the outputs keyed
    /// by label in registration order.
    pub fn evaluate<R: Ring>(&self, inputs: &[R::Elem], ring: &R) -> Result<IndexMap<String, R::Elem>> {
        if inputs.len() != self.inputs {
            return Err(Error::arg(format!(
                "circuit expects {} inputs, got {}",
                self.inputs,
                inputs.len()
            )));
        }
        let mut vals: Vec<R::Elem> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(slot) => inputs[slot].clone(),
                Gate::ConstInt(z) => ring.from_integer(z),
                Gate::Add(l, r) => ring.add(&vals[l], &vals[r]),
                Gate::Mul(l, r) => ring.mul(&vals[l], &vals[r]),
            };
            vals.push(v);
        }
        Ok(self
            .outputs
            .iter()
            .map(|(label, &id)| (label.clone(), vals[id].clone()))
            .collect())
    }
}

/// One gate per line (`<id> INPUT <slot>`, `<id> CONST <z>`,
/// `<id> ADD <l> <r>`, `<id> MUL <l> <r>`), then `OUTPUT <label> <id>` lines.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, g) in self.gates.iter().enumerate() {
            match g {
                Gate::Input(slot) => writeln!(f, "{id} INPUT {slot}")?,
                Gate::ConstInt(z) => writeln!(f, "{id} CONST {z}")?,
                Gate::Add(l, r) => writeln!(f, "{id} ADD {l} {r}")?,
                Gate::Mul(l, r) => writeln!(f, "{id} MUL {l} {r}")?,
            }
        }
        for (label, id) in &self.outputs {
            writeln!(f, "OUTPUT {label} {id}")?;
        }
        Ok(())
    }
}

/// The arithmetic interface shared by circuit construction and direct
/// evaluation. A `Wire` is a gate handle or a concrete ring value.
pub trait Builder {
    type Wire: Clone;

    fn add(&mut self, a: &Self::Wire, b: &Self::Wire) -> Self::Wire;
    fn mul(&mut self, a: &Self::Wire, b: &Self::Wire) -> Self::Wire;
    fn constant(&mut self, z: i64) -> Self::Wire;

    fn add_assign(&mut self, acc: &mut Self::Wire, b: &Self::Wire) {
        *acc = self.add(acc, b);
    }

    /// `c * w` as a constant gate feeding a multiplication.
    fn scale(&mut self, c: i64, w: &Self::Wire) -> Self::Wire {
        let k = self.constant(c);
        self.mul(&k, w)
    }
}

/// Sums where `None` stands for a structural zero, so absent terms never
/// produce gates.
pub(crate) fn add_opt<B: Builder>(b: &mut B, acc: &mut Option<B::Wire>, w: &B::Wire) {
    match acc {
        Some(a) => b.add_assign(a, w),
        None => *acc = Some(w.clone()),
    }
}

/// Records gates. Constants are pooled: each distinct integer gets one gate.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    circuit: Circuit,
    consts: HashMap<i64, GateId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, g: Gate) -> GateId {
        self.circuit.gates.push(g);
        self.circuit.gates.len() - 1
    }

    /// Allocates the next input slot.
    pub fn input(&mut self) -> GateId {
        let slot = self.circuit.inputs;
        self.circuit.inputs += 1;
        self.push(Gate::Input(slot))
    }

    pub fn output(&mut self, label: impl Into<String>, id: GateId) {
        assert!(id < self.circuit.gates.len(), "output refers to unknown gate {id}");
        self.circuit.outputs.insert(label.into(), id);
    }

    pub fn gate_count(&self) -> usize {
        self.circuit.gates.len()
    }

    pub fn finish(self) -> Circuit {
        self.circuit
    }
}

impl Builder for CircuitBuilder {
    type Wire = GateId;

    fn add(&mut self, a: &GateId, b: &GateId) -> GateId {
        self.push(Gate::Add(*a, *b))
    }

    fn mul(&mut self, a: &GateId, b: &GateId) -> GateId {
        self.push(Gate::Mul(*a, *b))
    }

    fn constant(&mut self, z: i64) -> GateId {
        if let Some(&id) = self.consts.get(&z) {
            return id;
        }
        let id = self.push(Gate::ConstInt(z));
        self.consts.insert(z, id);
        id
    }
}

/// Evaluates eagerly in a concrete ring.
#[derive(Debug, Clone, Copy)]
pub struct DirectEval<'r, R> {
    ring: &'r R,
}

impl<'r, R: Ring> DirectEval<'r, R> {
    pub fn new(ring: &'r R) -> Self {
        DirectEval { ring }
    }

    pub fn ring(&self) -> &R {
        self.ring
    }
}

impl<R: Ring> Builder for DirectEval<'_, R> {
    type Wire = R::Elem;

    fn add(&mut self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.add(a, b)
    }

    fn mul(&mut self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.mul(a, b)
    }

    fn constant(&mut self, z: i64) -> R::Elem {
        self.ring.from_integer(z)
    }

    fn add_assign(&mut self, acc: &mut R::Elem, b: &R::Elem) {
        self.ring.add_assign(acc, b);
    }
}
