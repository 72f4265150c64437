//! Dense tensors with reverse-mode automatic differentiation.
//!
//! A [`Graph`] owns every tensor created during a forward pass and records
//! the operation that produced it. [`Graph::backward`] replays adjoints in
//! exact reverse execution order, accumulating gradients additively into
//! every reachable tensor that requires them. Execution is sequential and
//! deterministic: identical inputs give bitwise-identical gradients.
//!
//! Broadcasting is deliberately narrow: same-shape, scalar-with-tensor, and
//! row-vector-with-matrix on the last axis.

mod gradcheck;
mod ops;

pub use gradcheck::{grad_check, grad_check_entries};

use crate::error::{Error, Result};
use crate::Scalar;

/// Handle to a tensor stored in a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TensorId(pub(crate) usize);

#[derive(Debug, Clone)]
pub(crate) enum OpKind {
    Leaf,
    Add(TensorId, TensorId),
    Sub(TensorId, TensorId),
    Mul(TensorId, TensorId),
    Scale(TensorId, Scalar),
    Matmul(TensorId, TensorId),
    Transpose(TensorId),
    Softmax { x: TensorId, axis: usize },
    LogSoftmax { x: TensorId, axis: usize },
    LayerNorm { x: TensorId, gamma: TensorId, beta: TensorId, eps: Scalar },
    Gelu(TensorId),
    L2Normalize { x: TensorId, axis: usize, eps: Scalar },
    Slice { x: TensorId, axis: usize, start: usize, end: usize },
    Concat { xs: Vec<TensorId>, axis: usize },
    Mean(TensorId),
    Log(TensorId),
    Exp(TensorId),
    Diag(TensorId),
}

#[derive(Debug)]
pub(crate) struct Node {
    pub shape: Vec<usize>,
    pub data: Vec<Scalar>,
    pub grad: Option<Vec<Scalar>>,
    /// Leaf flag: the caller asked for a gradient on this tensor.
    pub requires_grad: bool,
    /// Derived flag: some leaf below this node requires a gradient.
    pub needs_grad: bool,
    pub op: OpKind,
    /// Per-op auxiliary values saved by the forward pass (norms, row stats).
    pub saved: Vec<Scalar>,
}

/// Records executed operations and replays their adjoints in reverse.
#[derive(Debug, Default)]
pub struct Graph {
    pub(crate) nodes: Vec<Node>,
    backward_done: bool,
}

pub(crate) fn numel(shape: &[usize]) -> usize {
    shape.iter().product()
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            nodes: Vec::new(),
            backward_done: false,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Insert a leaf tensor. Only leaves may require gradients directly.
    pub fn leaf(&mut self, shape: &[usize], data: Vec<Scalar>, requires_grad: bool) -> Result<TensorId> {
        if shape.iter().any(|&d| d == 0) {
            return Err(Error::Contract(format!("zero-sized dimension in shape {shape:?}")));
        }
        if numel(shape) != data.len() {
            return Err(Error::Dimension {
                op: "leaf",
                lhs: shape.to_vec(),
                rhs: vec![data.len()],
            });
        }
        Ok(self.push(shape.to_vec(), data, requires_grad, OpKind::Leaf, Vec::new()))
    }

    /// Leaf that never accumulates a gradient.
    pub fn constant(&mut self, shape: &[usize], data: Vec<Scalar>) -> Result<TensorId> {
        self.leaf(shape, data, false)
    }

    pub fn scalar(&mut self, value: Scalar, requires_grad: bool) -> TensorId {
        self.push(vec![1], vec![value], requires_grad, OpKind::Leaf, Vec::new())
    }

    pub fn shape(&self, id: TensorId) -> &[usize] {
        &self.nodes[id.0].shape
    }

    pub fn data(&self, id: TensorId) -> &[Scalar] {
        &self.nodes[id.0].data
    }

    /// Gradient buffer, if backward has deposited one.
    pub fn grad(&self, id: TensorId) -> Option<&[Scalar]> {
        self.nodes[id.0].grad.as_deref()
    }

    /// Value of a single-element tensor.
    pub fn value(&self, id: TensorId) -> Scalar {
        debug_assert_eq!(self.nodes[id.0].data.len(), 1);
        self.nodes[id.0].data[0]
    }

    pub(crate) fn push(
        &mut self,
        shape: Vec<usize>,
        data: Vec<Scalar>,
        requires_grad: bool,
        op: OpKind,
        saved: Vec<Scalar>,
    ) -> TensorId {
        let needs_grad = requires_grad
            || match &op {
                OpKind::Leaf => false,
                _ => self.op_inputs(&op).iter().any(|t| self.nodes[t.0].needs_grad),
            };
        self.nodes.push(Node {
            shape,
            data,
            grad: None,
            requires_grad,
            needs_grad,
            op,
            saved,
        });
        TensorId(self.nodes.len() - 1)
    }

    fn op_inputs(&self, op: &OpKind) -> Vec<TensorId> {
        match op {
            OpKind::Leaf => vec![],
            OpKind::Add(a, b) | OpKind::Sub(a, b) | OpKind::Mul(a, b) | OpKind::Matmul(a, b) => {
                vec![*a, *b]
            }
            OpKind::Scale(a, _)
            | OpKind::Transpose(a)
            | OpKind::Gelu(a)
            | OpKind::Mean(a)
            | OpKind::Log(a)
            | OpKind::Exp(a)
            | OpKind::Diag(a) => vec![*a],
            OpKind::Softmax { x, .. }
            | OpKind::LogSoftmax { x, .. }
            | OpKind::L2Normalize { x, .. }
            | OpKind::Slice { x, .. } => vec![*x],
            OpKind::LayerNorm { x, gamma, beta, .. } => vec![*x, *gamma, *beta],
            OpKind::Concat { xs, .. } => xs.clone(),
        }
    }

    /// Replay adjoints in reverse execution order from a scalar loss.
    ///
    /// Every leaf with `requires_grad` holds a fully accumulated gradient
    /// afterwards (all zeros if the loss does not depend on it). Calling
    /// backward again without [`Graph::zero_grads`] is an error.
    pub fn backward(&mut self, loss: TensorId) -> Result<()> {
        if numel(&self.nodes[loss.0].shape) != 1 {
            return Err(Error::Contract(format!(
                "backward requires a scalar loss, got shape {:?}",
                self.nodes[loss.0].shape
            )));
        }
        if self.backward_done {
            return Err(Error::Contract(
                "backward already ran on this graph; call zero_grads to reset".into(),
            ));
        }
        self.backward_done = true;

        self.add_grad(loss, &[1.0]);
        for idx in (0..=loss.0).rev() {
            if !self.nodes[idx].needs_grad || self.nodes[idx].grad.is_none() {
                continue;
            }
            let dy = self.nodes[idx].grad.clone().expect("grad present");
            let contributions = self.backward_node(idx, &dy)?;
            for (target, contrib) in contributions {
                self.add_grad(target, &contrib);
            }
        }

        // Disconnected leaves still report a (zero) gradient.
        for node in &mut self.nodes {
            if node.requires_grad && node.grad.is_none() {
                node.grad = Some(vec![0.0; node.data.len()]);
            }
        }
        Ok(())
    }

    /// Drop all gradients and re-arm backward.
    pub fn zero_grads(&mut self) {
        for node in &mut self.nodes {
            node.grad = None;
        }
        self.backward_done = false;
    }

    pub(crate) fn add_grad(&mut self, id: TensorId, contrib: &[Scalar]) {
        let node = &mut self.nodes[id.0];
        debug_assert_eq!(node.data.len(), contrib.len());
        match node.grad {
            Some(ref mut g) => {
                for (gi, ci) in g.iter_mut().zip(contrib) {
                    *gi += ci;
                }
            }
            None => node.grad = Some(contrib.to_vec()),
        }
    }
}
