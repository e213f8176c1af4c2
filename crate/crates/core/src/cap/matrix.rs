//! Square matrices over the `(∨, ⊗)` semiring of a quantale.

use crate::quantale::{QuantaleMode, QuantaleValue};
use crate::vfunc::VFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VMatrix {
    mode: QuantaleMode,
    n: usize,
    entries: Vec<QuantaleValue>,
}

impl VMatrix {
    pub fn from_fn(mode: QuantaleMode, n: usize, f: impl Fn(usize, usize) -> QuantaleValue) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        VMatrix { mode, n, entries }
    }

    /// Top on the diagonal, bottom elsewhere.
    pub fn identity(mode: QuantaleMode, n: usize) -> Self {
        Self::from_fn(mode, n, |i, j| if i == j { mode.top() } else { mode.bottom() })
    }

    pub fn mode(&self) -> QuantaleMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &QuantaleValue {
        &self.entries[i * self.n + j]
    }

    /// `(A ⊗ B)(i, j) = ⋁_k A(i, k) ⊗ B(k, j)`.
    pub fn compose(&self, other: &VMatrix) -> VMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        VMatrix::from_fn(self.mode, n, |i, j| {
            let terms: Vec<QuantaleValue> = (0..n).map(|k| self.get(i, k) * other.get(k, j)).collect();
            self.mode.join(&terms)
        })
    }

    /// Pointwise join.
    pub fn join(&self, other: &VMatrix) -> VMatrix {
        VMatrix::from_fn(self.mode, self.n, |i, j| self.get(i, j).join(other.get(i, j)))
    }

    /// `(M ⊗ f)(i) = ⋁_j M(i, j) ⊗ f(j)`.
    pub fn apply(&self, f: &VFunction) -> VFunction {
        assert_eq!(self.n, f.len(), "matrix and function sizes differ");
        let values = (0..self.n)
            .map(|i| {
                let terms: Vec<QuantaleValue> = (0..self.n).map(|j| self.get(i, j) * f.get(j)).collect();
                self.mode.join(&terms)
            })
            .collect();
        VFunction::new(f.carrier(), self.mode, values).expect("same shape")
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_top())
    }

    /// `M ⊗ M <= M`.
    pub fn is_transitive(&self) -> bool {
        let sq = self.compose(self);
        sq.entries.iter().zip(&self.entries).all(|(a, b)| a <= b)
    }

    /// Kleene closure `M* = ⋁_k M^k` of a reflexive matrix, by repeated
    /// squaring up to a power of at least `n - 1`. Reflexivity makes the
    /// powers increase, and no path needs to revisit a vertex because every
    /// cycle weighs at most top.
    pub fn kleene_star(&self) -> VMatrix {
        let mut m = self.join(&VMatrix::identity(self.mode, self.n));
        let mut power = 1usize;
        while power + 1 < self.n {
            m = m.compose(&m);
            power *= 2;
        }
        m
    }
}
