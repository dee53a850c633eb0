use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::linalg::{SparseMatrix, SparseRow};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::virasoro::{index_of, weight_basis, PBWVector};

use super::ModuleSpec;

/// Row label of `A_n`: the word `L_mu` applied to generator `generator`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowLabel {
    pub generator: usize,
    pub mu: Partition,
}

/// The matrix `A_n`: coefficients of `L_mu u_k` in the weight-`n` PBW basis.
pub struct WeightMatrix {
    pub weight: u32,
    pub columns: Vec<Partition>,
    pub row_labels: Vec<RowLabel>,
    pub matrix: SparseMatrix<Rational>,
}

/// Cache of `L_mu u_k`, built from `L_mu u_k = L_{-mu_1} (L_{mu'} u_k)`.
#[derive(Default)]
pub(crate) struct WordCache {
    words: RwLock<HashMap<(usize, Partition), Arc<PBWVector>>>,
}

impl WordCache {
    fn get(&self, spec: &ModuleSpec, generator: usize, mu: &Partition) -> Arc<PBWVector> {
        let key = (generator, mu.clone());
        if let Some(v) = self.words.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = match mu.parts().first() {
            None => Arc::new(spec.generators[generator].clone()),
            Some(&first) => {
                let inner = self.get(spec, generator, &mu.tail());
                Arc::new(spec.verma.apply_mode(-(first as i32), &inner))
            }
        };
        self.words.write().unwrap().insert(key, v.clone());
        v
    }
}

impl ModuleSpec {
    /// `L_mu u_k` in PBW normal form.
    pub fn word_on_generator(&self, generator: usize, mu: &Partition) -> Arc<PBWVector> {
        self.words.get(self, generator, mu)
    }

    /// Builds `A_n`. Generator blocks are stacked in configuration order and
    /// rows within a block follow the monomial order of `mu`, descending.
    pub fn build_an(&self, n: u32) -> WeightMatrix {
        let columns = weight_basis(n);
        let index = index_of(&columns);
        let mut row_labels = Vec::new();
        let mut matrix = SparseMatrix::new(columns.len());
        for (k, g) in self.generators.iter().enumerate() {
            let w = g.weight() as u32;
            if w > n {
                continue;
            }
            for mu in weight_basis(n - w) {
                let v = self.word_on_generator(k, &mu);
                let row: SparseRow<Rational> =
                    v.terms().iter().map(|(lambda, c)| (index[lambda] as u32, c.clone())).collect();
                matrix.push_row(row);
                row_labels.push(RowLabel { generator: k, mu });
            }
        }
        WeightMatrix { weight: n, columns, row_labels, matrix }
    }
}
