//! The Jacobian dual matrix of a map: x-derivatives of the x-linear Rees
//! relations, read over the target ring.

use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::polymatrix::{rank_over, PolyMatrix};
use crate::poly::Poly;
use crate::rees::{linear_part, ReesChunk};
use crate::variety::Variety;

#[derive(Clone, Debug)]
pub struct JacobianDual<F: Field> {
    /// The x-linear relations the rows come from, in `k[X, Y]`.
    pub liftings: Vec<Poly<F>>,
    /// One row per lifting, one column per source variable, entries in the
    /// target ring.
    pub matrix: PolyMatrix<F>,
    pub target: Arc<Variety<F>>,
}

impl<F: Field> JacobianDual<F> {
    /// Builds the matrix from the x-linear part of `chunk`; `target` must
    /// have one variable per `Y` of the chunk ring.
    pub fn from_chunk(chunk: &ReesChunk<F>, target: Arc<Variety<F>>) -> Self {
        let nx = chunk.nx;
        let ny = chunk.ring.nvars() - nx;
        assert_eq!(ny, target.nvars(), "target ring does not match the chunk");
        let liftings = linear_part(chunk);
        let mut var_map = vec![usize::MAX; nx];
        var_map.extend(0..ny);
        let tring = target.ring().clone();
        let matrix = liftings
            .iter()
            .map(|p| {
                (0..nx)
                    .map(|i| target.reduce(&p.partial_derivative(i).remap(&tring, &var_map)))
                    .collect()
            })
            .collect();
        JacobianDual { liftings, matrix, target }
    }

    pub fn nrows(&self) -> usize {
        self.matrix.len()
    }

    pub fn ncols(&self) -> usize {
        self.liftings.first().map_or(0, |p| p.ring().nvars() - self.target.nvars())
    }

    /// Rank over the fraction field of the target coordinate ring.
    pub fn rank(&self) -> usize {
        rank_over(&self.matrix, &self.target)
    }
}

impl<F: Field> fmt::Display for JacobianDual<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
