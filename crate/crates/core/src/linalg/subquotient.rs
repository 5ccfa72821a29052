use num_traits::Zero;

use super::echelon::Echelon;
use super::matrix::{RatMatrix, SparseVec};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Cohomology `ker(out) / im(in)` at the middle slot of
/// `· --in--> V --out--> ·`, with an explicit basis of representatives.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: usize,
    cycles: Vec<SparseVec>,
    boundaries: Vec<SparseVec>,
    reps: Vec<SparseVec>,
    /// Spans the cycle space: boundaries first, then representatives; tags
    /// give coordinates in the representative basis.
    basis: Echelon,
}

impl Subquotient {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycles.len()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundaries.len()
    }

    pub fn cycles(&self) -> &[SparseVec] {
        &self.cycles
    }

    pub fn boundaries(&self) -> &[SparseVec] {
        &self.boundaries
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the cycle `v` in the representative basis, modulo
    /// boundaries. Fails if `v` is not a cycle.
    pub fn project(&self, v: &SparseVec) -> Result<Vec<Rational>> {
        let (residual, coeffs) = self.basis.reduce(v);
        if !residual.is_empty() {
            return Err(Error::NotChainMap(format!(
                "vector with {} nonzero entries is not a cycle",
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.reps.len()];
        for (i, c) in self.basis.tag_combination(&coeffs) {
            out[i] = c;
        }
        Ok(out)
    }

    /// The projection as a `dim × ambient` matrix on the cycle space,
    /// evaluated on the cycle basis: column `k` is the projection of
    /// `cycles()[k]`.
    pub fn projection_on_cycles(&self) -> RatMatrix {
        let cols = self
            .cycles
            .iter()
            .map(|z| to_sparse(self.project(z).expect("cycle basis projects")))
            .collect();
        RatMatrix::from_columns(self.reps.len(), cols)
    }
}

fn to_sparse(dense: Vec<Rational>) -> SparseVec {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Cohomology at the middle of `incoming` followed by `outgoing`.
pub fn subquotient(incoming: &RatMatrix, outgoing: &RatMatrix) -> Result<Subquotient> {
    let ambient = outgoing.ncols();
    if incoming.nrows() != ambient {
        return Err(Error::DimensionMismatch(format!(
            "incoming map lands in dimension {}, outgoing starts from {}",
            incoming.nrows(),
            ambient
        )));
    }
    for col in incoming.columns() {
        if !outgoing.mul_vec(col).is_empty() {
            return Err(Error::NonZeroSquare(
                "composite of incoming and outgoing maps".into(),
            ));
        }
    }
    let cycles = outgoing.kernel_basis();
    let mut basis = Echelon::with_tracking(ambient, cycles.len());
    let mut boundaries = Vec::new();
    for col in incoming.columns() {
        if basis.insert(col).is_some() {
            boundaries.push(col.clone());
        }
    }
    let mut reps = Vec::new();
    for z in &cycles {
        if basis.insert_tracked(z, reps.len()).is_ok() {
            reps.push(z.clone());
        }
    }
    Ok(Subquotient {
        ambient,
        cycles,
        boundaries,
        reps,
        basis,
    })
}

/// Matrix of the map induced by `map` from `from` to `to`, in their
/// representative bases. Checks that cycles go to cycles and boundaries to
/// boundaries.
pub fn induced_map(from: &Subquotient, to: &Subquotient, map: &RatMatrix) -> Result<RatMatrix> {
    if map.ncols() != from.ambient || map.nrows() != to.ambient {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, subquotients live in {} and {}",
            map.nrows(),
            map.ncols(),
            from.ambient,
            to.ambient
        )));
    }
    for b in &from.boundaries {
        let image = map.mul_vec(b);
        let coords = to
            .project(&image)
            .map_err(|_| Error::NotChainMap("boundary not sent to a cycle".into()))?;
        if coords.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotChainMap("boundary not sent to a boundary".into()));
        }
    }
    let mut cols = Vec::with_capacity(from.reps.len());
    for r in &from.reps {
        let image = map.mul_vec(r);
        let coords = to
            .project(&image)
            .map_err(|_| Error::NotChainMap("cycle not sent to a cycle".into()))?;
        cols.push(to_sparse(coords));
    }
    Ok(RatMatrix::from_columns(to.dim(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn trivial_maps() {
        let sq = subquotient(&RatMatrix::zeros(3, 0), &RatMatrix::zeros(0, 3)).unwrap();
        assert_eq!(sq.dim(), 3);
        assert_eq!(sq.projection_on_cycles(), RatMatrix::identity(3));
    }

    #[test]
    fn kernel_of_sum_map() {
        let sq = subquotient(
            &RatMatrix::zeros(2, 0),
            &RatMatrix::from_dense(&[vec![1, 1]]),
        )
        .unwrap();
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.representatives()[0], vec![(0, r(1)), (1, r(-1))]);
        assert_eq!(
            sq.project(&vec![(0, r(-2)), (1, r(2))]).unwrap(),
            vec![r(-2)]
        );
        assert!(sq.project(&vec![(0, r(1))]).is_err());
    }

    #[test]
    fn everything_bounds() {
        let sq = subquotient(&RatMatrix::identity(2), &RatMatrix::zeros(0, 2)).unwrap();
        assert_eq!((sq.dim(), sq.cycle_dim(), sq.boundary_dim()), (0, 2, 2));
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let a_in = RatMatrix::from_dense(&[vec![1], vec![0]]);
        let a_out = RatMatrix::from_dense(&[vec![1, 1]]);
        assert!(matches!(
            subquotient(&a_in, &a_out),
            Err(Error::NonZeroSquare(_))
        ));
        assert!(matches!(
            subquotient(&RatMatrix::zeros(3, 1), &a_out),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn projection_is_modulo_boundaries() {
        // ℚ^3 with boundary span{(1,1,0)}, no outgoing constraint.
        let a_in = RatMatrix::from_dense(&[vec![1], vec![1], vec![0]]);
        let sq = subquotient(&a_in, &RatMatrix::zeros(0, 3)).unwrap();
        assert_eq!(sq.dim(), 2);
        let p = sq.project(&vec![(0, r(1)), (1, r(1))]).unwrap();
        assert!(p.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn induced_identity_and_zero() {
        let a_out = RatMatrix::from_dense(&[vec![1, -1, 0]]);
        let a_in = RatMatrix::from_dense(&[vec![1], vec![1], vec![0]]);
        let from = subquotient(&a_in, &a_out).unwrap();
        let to = subquotient(&a_in, &a_out).unwrap();
        assert_eq!(
            induced_map(&from, &to, &RatMatrix::identity(3)).unwrap(),
            RatMatrix::identity(from.dim())
        );
        assert!(induced_map(&from, &to, &RatMatrix::zeros(3, 3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn non_chain_maps_are_rejected() {
        let from = subquotient(&RatMatrix::zeros(2, 0), &RatMatrix::zeros(0, 2)).unwrap();
        let to = subquotient(
            &RatMatrix::zeros(2, 0),
            &RatMatrix::from_dense(&[vec![1, 1]]),
        )
        .unwrap();
        assert!(matches!(
            induced_map(&from, &to, &RatMatrix::identity(2)),
            Err(Error::NotChainMap(_))
        ));
        let from = subquotient(&RatMatrix::identity(1), &RatMatrix::zeros(0, 1)).unwrap();
        let to = subquotient(&RatMatrix::zeros(1, 0), &RatMatrix::zeros(0, 1)).unwrap();
        assert!(matches!(
            induced_map(&from, &to, &RatMatrix::identity(1)),
            Err(Error::NotChainMap(_))
        ));
    }
}
