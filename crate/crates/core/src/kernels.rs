//! Kernel polynomials `P_m` (`T₊P_m = 0`) and `Q_m` (`K₊Q_m = 0`) computed
//! by exact linear algebra over the monomial-symmetric basis.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactcore::{
    even_sym_basis, sym_basis, ExactMatrix, ExactScalar, MultiPoly, Partition,
};
use crate::operators::{apply, ModelKind, ModelParams};

/// Matrix of the raising operator from degree `m` to degree `m − 2`.
#[derive(Clone, Debug)]
pub struct RaisingMatrix {
    pub matrix: ExactMatrix,
    /// Column labels (domain basis).
    pub domain: Vec<(Partition, MultiPoly)>,
    /// Row labels (codomain basis); empty for `m < 2`.
    pub codomain: Vec<(Partition, MultiPoly)>,
}

fn basis_for(params: &ModelParams, degree: u32) -> Vec<(Partition, MultiPoly)> {
    match params.kind() {
        ModelKind::An => sym_basis(params.n(), degree),
        ModelKind::Bn => even_sym_basis(params.n(), degree),
    }
}

/// Columns are the images of the degree-`m` basis elements, written in the
/// degree-`m − 2` basis. Each image's coordinates are read off its dominant
/// monomials and the image is rebuilt from them, so a coordinate outside the
/// codomain span is reported instead of dropped.
pub fn raising_matrix(params: &ModelParams, m: u32) -> Result<RaisingMatrix> {
    let domain = basis_for(params, m);
    let codomain = if m >= 2 {
        basis_for(params, m - 2)
    } else {
        Vec::new()
    };
    let n = params.n();
    let mut matrix = ExactMatrix::zeros(codomain.len(), domain.len());
    for (col, (label, p)) in domain.iter().enumerate() {
        let image = apply(params, params.raising_tag(), p)?;
        let mut rebuilt = MultiPoly::zero(n);
        for (row, (mu, q)) in codomain.iter().enumerate() {
            let lead = mu.exponents(n).expect("codomain partitions fit");
            let c = image.coefficient(lead.as_slice());
            rebuilt = &rebuilt + &q.scale(&c);
            matrix.set(row, col, c);
        }
        if rebuilt != image {
            return Err(Error::InvalidParams(format!(
                "image of {label} under {} is outside the symmetric codomain",
                params.raising_tag()
            )));
        }
    }
    Ok(RaisingMatrix {
        matrix,
        domain,
        codomain,
    })
}

/// Basis of the kernel of the raising operator in degree `m`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub params: ModelParams,
    pub m: u32,
    /// Elements with graded-lex leading coefficient 1.
    pub basis: Vec<MultiPoly>,
    /// Dimension of the degree-`m` (even, for B_N) symmetric space.
    pub domain_dimension: usize,
    pub rank: usize,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Re-applies the raising operator to every element, independently of the
    /// elimination that produced them.
    pub fn verify(&self) -> Result<Vec<bool>> {
        self.basis
            .iter()
            .map(|p| Ok(apply(&self.params, self.params.raising_tag(), p)?.is_zero()))
            .collect()
    }
}

fn normalize_leading(p: MultiPoly) -> MultiPoly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => {
            let inv = ExactScalar::one() / c;
            p.scale(&inv)
        }
        _ => p,
    }
}

/// Kernel of `T₊` (A_N) or `K₊` (B_N) on degree-`m` symmetric polynomials.
pub fn kernel_basis(params: &ModelParams, m: u32) -> Result<KernelBasis> {
    let rm = raising_matrix(params, m)?;
    let rank = rm.matrix.rank();
    let n = params.n();
    let basis = rm
        .matrix
        .nullspace()
        .into_iter()
        .map(|v| {
            let p = v
                .iter()
                .zip(&rm.domain)
                .filter(|(c, _)| !c.is_zero())
                .fold(MultiPoly::zero(n), |acc, (c, (_, q))| &acc + &q.scale(c));
            normalize_leading(p)
        })
        .collect();
    Ok(KernelBasis {
        params: params.clone(),
        m,
        basis,
        domain_dimension: rm.domain.len(),
        rank,
    })
}

/// `Q_m` basis for the B_N model; odd `m` gives an empty basis.
pub fn bn_kernel_basis(params: &ModelParams, m: u32) -> Result<KernelBasis> {
    if params.kind() != ModelKind::Bn {
        return Err(Error::ModelMismatch {
            op: "K+",
            model: params.kind().name(),
        });
    }
    kernel_basis(params, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{integer, parse_poly, rational};

    fn an22() -> ModelParams {
        ModelParams::a_n(2, integer(2)).unwrap()
    }

    #[test]
    fn low_degree_matrices_have_no_rows() {
        for m in 0..2 {
            let rm = raising_matrix(&an22(), m).unwrap();
            assert_eq!(rm.matrix.rows(), 0);
        }
    }

    #[test]
    fn degree_two_matrix() {
        let rm = raising_matrix(&an22(), 2).unwrap();
        assert_eq!(rm.matrix.rows(), 1);
        assert_eq!(rm.matrix.row(0), &[integer(6), integer(-2)]);
    }

    #[test]
    fn entries_are_affine_in_alpha() {
        let at = |a: ExactScalar| {
            let p = ModelParams::a_n(3, a).unwrap();
            raising_matrix(&p, 4).unwrap().matrix
        };
        let (m0, m1, m2) = (at(integer(0)), at(integer(1)), at(rational(5, 2)));
        for r in 0..m0.rows() {
            for c in 0..m0.cols() {
                let slope = m1.get(r, c) - m0.get(r, c);
                assert_eq!(m2.get(r, c), &(m0.get(r, c) + &slope * rational(5, 2)));
            }
        }
    }

    #[test]
    fn kernels_in_low_degree() {
        let params = an22();
        let k0 = kernel_basis(&params, 0).unwrap();
        assert_eq!(k0.basis, vec![MultiPoly::one(2)]);
        let k1 = kernel_basis(&params, 1).unwrap();
        assert_eq!(k1.basis, vec![parse_poly("x1 + x2", 2).unwrap()]);
        let k2 = kernel_basis(&params, 2).unwrap();
        assert_eq!(k2.basis, vec![parse_poly("x1^2 + 3*x1*x2 + x2^2", 2).unwrap()]);
        assert!(k2.verify().unwrap().iter().all(|&ok| ok));
    }

    #[test]
    fn bn_kernels() {
        let params = ModelParams::b_n(2, integer(1), integer(1)).unwrap();
        assert_eq!(bn_kernel_basis(&params, 0).unwrap().basis, vec![MultiPoly::one(2)]);
        assert_eq!(bn_kernel_basis(&params, 2).unwrap().dimension(), 0);
        assert_eq!(bn_kernel_basis(&params, 3).unwrap().dimension(), 0);
        let k4 = bn_kernel_basis(&params, 4).unwrap();
        assert_eq!(k4.dimension() + k4.rank, k4.domain_dimension);
        assert!(k4.verify().unwrap().iter().all(|&ok| ok));
        assert!(bn_kernel_basis(&an22(), 0).is_err());
    }
}
