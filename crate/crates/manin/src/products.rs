//! Manin white and black products of quadratic presentations.
//!
//! The white product lives on the tensor generator space: its relation
//! space is the preimage, under the splitting map of weight-two
//! components, of `R1 (x) F2 + F1 (x) R2`.  The black product is the
//! image of the intersection `R1 (x) F2 /\ F1 (x) R2` under the adjoint
//! of the splitting map.  The adjoint is taken with respect to the
//! pairing that couples the first tensor slot to its dual basis plainly
//! and the second through the symmetry-type metric; this is the pairing
//! the decorated-copy machinery in [`crate::derived`] extends.

use crate::linalg::{image_of, preimage, subspace_intersection, Subspace};
use crate::presentation::QuadraticPresentation;
use crate::weight2::{w2_decode, w2_dim, w2_gram_diag, w2_index, CyclicLabel, GeneratorSpace};
use crate::{rat, QMatrix, QSubspace, Rat, Result};
use num_traits::Zero;

/// Splitting map of the weight-two component over a tensor generator
/// space into the tensor of the two weight-two components: the basis
/// tree `((e1 x e2), (f1 x f2), l)` maps to `(e1, f1, l) (x) (e2, f2, l)`.
/// The matrix acts on column vectors; it is injective.
pub struct PhiMap {
    pub source: GeneratorSpace,
    pub matrix: QMatrix,
    d1: usize,
    d2: usize,
}

impl PhiMap {
    pub fn new(e1: &GeneratorSpace, e2: &GeneratorSpace) -> Self {
        let (d1, d2) = (e1.dim(), e2.dim());
        let source = GeneratorSpace::tensor(e1, e2);
        let source_dim = w2_dim(&source);
        let (w1, w2) = (3 * d1 * d1, 3 * d2 * d2);
        let mut matrix = QMatrix::zeros(w1 * w2, source_dim);
        for a1 in 0..d1 {
            for a2 in 0..d2 {
                for b1 in 0..d1 {
                    for b2 in 0..d2 {
                        for l in CyclicLabel::all() {
                            let src =
                                w2_index(&source, a1 * d2 + a2, b1 * d2 + b2, l);
                            let f1 = w2_index(e1, a1, b1, l);
                            let f2 = w2_index(e2, a2, b2, l);
                            matrix.set(f1 * w2 + f2, src, rat(1));
                        }
                    }
                }
            }
        }
        PhiMap {
            source,
            matrix,
            d1,
            d2,
        }
    }

    pub fn source_dim(&self) -> usize {
        3 * self.d1 * self.d1 * self.d2 * self.d2
    }

    pub fn target_dim(&self) -> usize {
        9 * self.d1 * self.d1 * self.d2 * self.d2
    }
}

/// Diagonal of the pairing between the weight-two component over a
/// tensor space `E1 (x) E2` and the one over `E1^v (x) E2^v`: the first
/// slot pairs its dual basis plainly, the second through the
/// symmetry-type metric.
pub fn tensor_pairing_diag(e1: &GeneratorSpace, e2: &GeneratorSpace) -> Vec<Rat> {
    let g2 = e2.gram_diag();
    let t = GeneratorSpace::tensor(e1, e2);
    let d2 = e2.dim();
    (0..w2_dim(&t))
        .map(|idx| {
            let (a, b, _) = w2_decode(&t, idx);
            &g2[a % d2] * &g2[b % d2]
        })
        .collect()
}

/// Adjoint of the splitting map built on the dual spaces, expressed in
/// the coordinates of `F(E1^v (x) E2^v)(3)`.
pub struct PsiMap {
    pub matrix: QMatrix,
}

impl PsiMap {
    /// `q1`, `q2` are the presentations being multiplied; the adjoint
    /// is of the splitting map on their dual generator spaces.
    pub fn new(q1: &GeneratorSpace, q2: &GeneratorSpace) -> Self {
        let d1 = q1.dual();
        let d2 = q2.dual();
        let phi = PhiMap::new(&d1, &d2);
        let v_diag = tensor_pairing_diag(&d1, &d2);
        let wf1 = w2_gram_diag(&d1);
        let wf2 = w2_gram_diag(&d2);
        let (n1, n2) = (wf1.len(), wf2.len());
        // P = W_V^-1 . F^T . W_B with both grams diagonal +-1.
        let mut matrix = QMatrix::zeros(v_diag.len(), n1 * n2);
        for w in 0..n1 * n2 {
            let b = &wf1[w / n2] * &wf2[w % n2];
            for v in 0..v_diag.len() {
                let f = phi.matrix.at(w, v);
                if !f.is_zero() {
                    matrix.set(v, w, &v_diag[v] * f * &b);
                }
            }
        }
        PsiMap { matrix }
    }
}

/// Lift `R (x) full` and `full (x) R` into the tensor of weight-two
/// components (first factor major).
fn lift_left(r: &QSubspace, other_dim: usize) -> QSubspace {
    let ident = QMatrix::identity(other_dim);
    Subspace::from_matrix(r.basis().kronecker(&ident))
}

fn lift_right(this_dim: usize, r: &QSubspace) -> QSubspace {
    let ident = QMatrix::identity(this_dim);
    Subspace::from_matrix(ident.kronecker(r.basis()))
}

/// Manin white product.
pub fn white(
    p1: &QuadraticPresentation,
    p2: &QuadraticPresentation,
) -> Result<QuadraticPresentation> {
    let phi = PhiMap::new(p1.space(), p2.space());
    let (w1, w2) = (w2_dim(p1.space()), w2_dim(p2.space()));
    let a = lift_left(p1.relations(), w2);
    let b = lift_right(w1, p2.relations());
    let sum = crate::linalg::subspace_sum(&a, &b)?;
    let relations = preimage(&phi.matrix, &sum)?;
    QuadraticPresentation::new(
        &format!("{}o{}", p1.name, p2.name),
        phi.source,
        relations,
    )
}

/// Manin black product.
pub fn black(
    q1: &QuadraticPresentation,
    q2: &QuadraticPresentation,
) -> Result<QuadraticPresentation> {
    let psi = PsiMap::new(q1.space(), q2.space());
    let (w1, w2) = (w2_dim(q1.space()), w2_dim(q2.space()));
    let a = lift_left(q1.relations(), w2);
    let b = lift_right(w1, q2.relations());
    let inter = subspace_intersection(&a, &b)?;
    let relations = image_of(&psi.matrix, &inter)?;
    let space = GeneratorSpace::tensor(q1.space(), q2.space());
    QuadraticPresentation::new(&format!("{}*{}", q1.name, q2.name), space, relations)
}

/// Checks that the dual of the white product is the black product of
/// the duals, under the canonical identification of the dual of a
/// tensor space with the tensor of the duals.
pub fn verify_white_black_duality(
    p1: &QuadraticPresentation,
    p2: &QuadraticPresentation,
) -> Result<bool> {
    let w = white(p1, p2)?;
    let dual_white = w.koszul_dual();
    let b = black(&p1.koszul_dual(), &p2.koszul_dual())?;
    // The two complements are taken under pairings differing by a
    // diagonal sign; transport the black coordinates accordingly.
    let w_t = w2_gram_diag(w.space());
    let w_v = tensor_pairing_diag(p1.space(), p2.space());
    let rows = b
        .relations()
        .basis_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .enumerate()
                .map(|(k, x)| &w_t[k] * &w_v[k] * x)
                .collect()
        })
        .collect();
    let transported = Subspace::from_rows(w_t.len(), rows);
    Ok(transported == *dual_white.relations())
}

/// Arity-3 dimension of the Hadamard (componentwise tensor) product.
pub fn hadamard_dim3(p1: &QuadraticPresentation, p2: &QuadraticPresentation) -> usize {
    p1.dim_arity3() * p2.dim_arity3()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm3;
    use crate::presentation::{catalog_get, catalog_match, match_presentations, w2_pair};
    use crate::weight2::s3_matrix;

    #[test]
    fn phi_is_injective() {
        for (a, b) in [("perm", "lie"), ("com", "com"), ("perm", "poiss")] {
            let p1 = catalog_get(a).unwrap();
            let p2 = catalog_get(b).unwrap();
            let phi = PhiMap::new(p1.space(), p2.space());
            assert_eq!(phi.matrix.rank(), phi.source_dim());
            assert_eq!(phi.matrix.rows(), phi.target_dim());
        }
    }

    #[test]
    fn phi_is_equivariant() {
        for (a, b) in [("perm", "lie"), ("perm", "com"), ("com", "poiss")] {
            let p1 = catalog_get(a).unwrap();
            let p2 = catalog_get(b).unwrap();
            let phi = PhiMap::new(p1.space(), p2.space());
            for sigma in [Perm3::transposition(1, 2), Perm3::cycle()] {
                // Column-action matrices are the transposes of the
                // row-image matrices.
                let sv = s3_matrix(&sigma, &phi.source).transpose();
                let s1 = s3_matrix(&sigma, p1.space()).transpose();
                let s2 = s3_matrix(&sigma, p2.space()).transpose();
                let lhs = phi.matrix.matmul(&sv);
                let rhs = s1.kronecker(&s2).matmul(&phi.matrix);
                assert_eq!(lhs, rhs, "{a} {b} {sigma}");
            }
        }
    }

    #[test]
    fn psi_is_adjoint_to_phi() {
        // <psi(u), v> = <u, phi(v)> over full bases, i.e.
        // W_V . P = F^T . W_B as matrices.
        for (a, b) in [("prelie", "com"), ("prelie", "poiss"), ("lie", "ass")] {
            let q1 = catalog_get(a).unwrap();
            let q2 = catalog_get(b).unwrap();
            let d1 = q1.space().dual();
            let d2 = q2.space().dual();
            let phi = PhiMap::new(&d1, &d2);
            let psi = PsiMap::new(q1.space(), q2.space());
            let w_v = QMatrix::diagonal(tensor_pairing_diag(&d1, &d2));
            let wf1 = w2_gram_diag(&d1);
            let wf2 = w2_gram_diag(&d2);
            let w_b = QMatrix::diagonal(
                (0..wf1.len() * wf2.len())
                    .map(|k| &wf1[k / wf2.len()] * &wf2[k % wf2.len()])
                    .collect(),
            );
            assert_eq!(
                w_v.matmul(&psi.matrix),
                phi.matrix.transpose().matmul(&w_b),
                "{a} {b}"
            );
        }
    }

    #[test]
    fn white_perm_lie_is_leib() {
        let w = white(catalog_get("perm").unwrap(), catalog_get("lie").unwrap()).unwrap();
        assert_eq!(w.dim_relations(), 6);
        assert_eq!(catalog_match(&w), Some("leib"));
    }

    #[test]
    fn white_with_com_is_identity() {
        let com = catalog_get("com").unwrap();
        for name in ["lie", "com", "ass", "perm", "poiss"] {
            let p = catalog_get(name).unwrap();
            let w = white(com, p).unwrap();
            assert!(
                match_presentations(&w, p).is_some(),
                "com o {name} should match {name}"
            );
        }
    }

    #[test]
    fn white_perm_poiss_has_thirty_relations() {
        let w = white(catalog_get("perm").unwrap(), catalog_get("poiss").unwrap()).unwrap();
        assert_eq!(w.dim_relations(), 30);
        assert_eq!(w.dim_arity3(), 18);
        // Equals the dual of the pre-Poisson presentation.
        let dual_prepoiss = catalog_get("prepoiss").unwrap().koszul_dual();
        assert!(match_presentations(&w, &dual_prepoiss).is_some());
        assert_eq!(catalog_match(&w), Some("dualprepoiss"));
    }

    #[test]
    fn black_prelie_poiss_is_prepoiss() {
        let b = black(
            catalog_get("prelie").unwrap(),
            catalog_get("poiss").unwrap(),
        )
        .unwrap();
        assert_eq!(b.dim_relations(), 18);
        assert_eq!(catalog_match(&b), Some("prepoiss"));
    }

    #[test]
    fn black_with_lie_is_identity_on_relations() {
        // With a one-dimensional first factor the tensor basis
        // identifies with the second factor's basis index-wise, and the
        // black relation space is literally the relation space of the
        // second factor.  (The S2-action on the tensor generators picks
        // up the sign of the antisymmetric factor, so this is a
        // coordinate statement, not a tag-preserving matching.)
        let lie = catalog_get("lie").unwrap();
        for name in ["lie", "com", "ass", "perm", "poiss"] {
            let p = catalog_get(name).unwrap();
            let b = black(lie, p).unwrap();
            assert_eq!(
                b.relations(),
                p.relations(),
                "lie * {name} relation space"
            );
        }
    }

    #[test]
    fn black_prelie_com_is_zinbiel() {
        let b = black(catalog_get("prelie").unwrap(), catalog_get("com").unwrap()).unwrap();
        let zinbiel = catalog_get("zinbiel").unwrap();
        assert!(match_presentations(&b, zinbiel).is_some());
        assert_eq!(catalog_match(&b), Some("zinbiel"));
    }

    #[test]
    fn white_black_duality() {
        for (a, b) in [
            ("perm", "lie"),
            ("perm", "com"),
            ("perm", "ass"),
            ("com", "com"),
        ] {
            let p1 = catalog_get(a).unwrap();
            let p2 = catalog_get(b).unwrap();
            assert!(
                verify_white_black_duality(p1, p2).unwrap(),
                "duality for ({a}, {b})"
            );
        }
    }

    #[test]
    fn white_black_duality_perm_poiss() {
        let p1 = catalog_get("perm").unwrap();
        let p2 = catalog_get("poiss").unwrap();
        assert!(verify_white_black_duality(p1, p2).unwrap());
    }

    #[test]
    fn white_and_black_relations_are_complementary() {
        // The white relation space of (p1, p2) pairs to zero with the
        // black relation space of the duals, and the dimensions add up.
        for (a, b) in [("perm", "lie"), ("perm", "com")] {
            let p1 = catalog_get(a).unwrap();
            let p2 = catalog_get(b).unwrap();
            let w = white(p1, p2).unwrap();
            let bl = black(&p1.koszul_dual(), &p2.koszul_dual()).unwrap();
            let diag = tensor_pairing_diag(p1.space(), p2.space());
            for u in w.relations().basis_rows() {
                for v in bl.relations().basis_rows() {
                    let mut acc = Rat::zero();
                    for k in 0..diag.len() {
                        if !u[k].is_zero() && !v[k].is_zero() {
                            acc += &u[k] * &v[k] * &diag[k];
                        }
                    }
                    assert!(acc.is_zero());
                }
            }
            assert_eq!(
                w.dim_relations() + bl.dim_relations(),
                w2_dim(w.space())
            );
        }
    }

    #[test]
    fn hadamard_dimensions() {
        let perm = catalog_get("perm").unwrap();
        let lie = catalog_get("lie").unwrap();
        let poiss = catalog_get("poiss").unwrap();
        let com = catalog_get("com").unwrap();
        assert_eq!(hadamard_dim3(perm, lie), 6);
        assert_eq!(
            hadamard_dim3(perm, lie),
            white(perm, lie).unwrap().dim_arity3()
        );
        assert_eq!(hadamard_dim3(perm, poiss), 18);
        assert_eq!(
            hadamard_dim3(perm, poiss),
            white(perm, poiss).unwrap().dim_arity3()
        );
        assert_eq!(hadamard_dim3(com, lie), 2);
        assert_eq!(hadamard_dim3(com, lie), lie.dim_arity3());
    }

    #[test]
    fn white_pairs_to_zero_with_black_under_w2_pairing() {
        // Same statement through the presentation-level helper, for a
        // pair with trivial twists.
        let lie = catalog_get("lie").unwrap();
        let com = catalog_get("com").unwrap();
        let w = white(com, lie).unwrap();
        let b = black(&com.koszul_dual(), &lie.koszul_dual()).unwrap();
        for u in w.relations().basis_rows() {
            for v in b.relations().basis_rows() {
                assert!(w2_pair(w.space(), &u, &v).is_zero());
            }
        }
    }
}
