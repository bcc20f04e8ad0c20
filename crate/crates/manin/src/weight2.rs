//! Binary generator spaces with their S2-action and the weight-two
//! component of the free operad on them.
//!
//! A space of binary generators carries an action of the transposition
//! `(12)`: a generator is symmetric, antisymmetric, or one half of a
//! free pair `(g, g^op)` where `g^op` is the formal transposition of
//! `g`.  The weight-two component on `E` is spanned by left combs
//! `outer(inner(x_i, x_j), x_k)` with `(i, j, k)` running over the
//! three cyclic labels `(1,2,3), (3,1,2), (2,3,1)`, so its dimension is
//! `3 (dim E)^2`.  Every tree normalizes into that basis using only the
//! `(12)`-action on its two vertices, and relabelling leaves by a
//! permutation followed by normalization defines the S3-action.

use crate::linalg::{Matrix, Subspace};
use crate::perm::Perm3;
use crate::{rat, Error, QMatrix, QSubspace, Rat, Result};
use num_traits::Zero;

/// Symmetry type of a binary generator under the transposition `(12)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetryTag {
    Symmetric,
    Antisymmetric,
    FreePair,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum GenKind {
    Symmetric,
    Antisymmetric,
    /// First member of a free pair; `partner` is the index of its
    /// formal transposition.
    FreePrimary { partner: usize },
    FreePartner { primary: usize },
}

/// A named binary generator.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    kind: GenKind,
}

impl Generator {
    pub fn tag(&self) -> SymmetryTag {
        match self.kind {
            GenKind::Symmetric => SymmetryTag::Symmetric,
            GenKind::Antisymmetric => SymmetryTag::Antisymmetric,
            GenKind::FreePrimary { .. } | GenKind::FreePartner { .. } => SymmetryTag::FreePair,
        }
    }

    /// Index of the other member of a free pair.
    pub fn partner(&self) -> Option<usize> {
        match self.kind {
            GenKind::FreePrimary { partner } => Some(partner),
            GenKind::FreePartner { primary } => Some(primary),
            _ => None,
        }
    }

    pub fn is_free_partner(&self) -> bool {
        matches!(self.kind, GenKind::FreePartner { .. })
    }

    /// Symmetric, antisymmetric and first-of-pair generators are
    /// primary; the formal transpositions are not.
    pub fn is_primary(&self) -> bool {
        !self.is_free_partner()
    }
}

/// Basis of binary operations together with the matrix of the
/// `(12)`-action.  Row `i` of `action12` holds the coordinates of
/// `g_i . (12)`.
#[derive(Clone, Debug)]
pub struct GeneratorSpace {
    gens: Vec<Generator>,
    action12: QMatrix,
}

impl GeneratorSpace {
    /// Builds a space from declarations; a `FreePair` declaration named
    /// `g` introduces the two generators `g` and `g^op`.
    pub fn new(decls: &[(&str, SymmetryTag)]) -> Self {
        let mut gens = Vec::new();
        for (name, tag) in decls {
            match tag {
                SymmetryTag::Symmetric => gens.push(Generator {
                    name: name.to_string(),
                    kind: GenKind::Symmetric,
                }),
                SymmetryTag::Antisymmetric => gens.push(Generator {
                    name: name.to_string(),
                    kind: GenKind::Antisymmetric,
                }),
                SymmetryTag::FreePair => {
                    let i = gens.len();
                    gens.push(Generator {
                        name: name.to_string(),
                        kind: GenKind::FreePrimary { partner: i + 1 },
                    });
                    gens.push(Generator {
                        name: format!("{name}^op"),
                        kind: GenKind::FreePartner { primary: i },
                    });
                }
            }
        }
        let d = gens.len();
        let mut action = QMatrix::zeros(d, d);
        for (i, g) in gens.iter().enumerate() {
            match g.kind {
                GenKind::Symmetric => action.set(i, i, rat(1)),
                GenKind::Antisymmetric => action.set(i, i, rat(-1)),
                GenKind::FreePrimary { partner } => action.set(i, partner, rat(1)),
                GenKind::FreePartner { primary } => action.set(i, primary, rat(1)),
            }
        }
        GeneratorSpace {
            gens,
            action12: action,
        }
    }

    /// Reconstructs the symmetry classification from an explicit
    /// involutive signed-permutation action.  A generator sent to a
    /// multiple of a *different* basis generator forms a free pair with
    /// it (the smaller index is the primary member).
    pub fn from_action(names: Vec<String>, action12: QMatrix) -> Result<Self> {
        let d = names.len();
        if action12.rows() != d || action12.cols() != d {
            return Err(Error::DimensionMismatch(
                "generator action must be square of the generator count".into(),
            ));
        }
        if action12.matmul(&action12) != QMatrix::identity(d) {
            return Err(Error::InternalConsistency(
                "generator action is not an involution".into(),
            ));
        }
        let mut targets = Vec::with_capacity(d);
        for i in 0..d {
            let nonzero: Vec<usize> = (0..d).filter(|&j| !action12.at(i, j).is_zero()).collect();
            if nonzero.len() != 1 {
                return Err(Error::InternalConsistency(
                    "generator action is not a signed permutation".into(),
                ));
            }
            let j = nonzero[0];
            let c = action12.at(i, j).clone();
            if c != rat(1) && c != rat(-1) {
                return Err(Error::InternalConsistency(
                    "generator action entries must be +1 or -1".into(),
                ));
            }
            targets.push((j, c));
        }
        let mut gens = Vec::with_capacity(d);
        for (i, name) in names.into_iter().enumerate() {
            let (j, ref c) = targets[i];
            let kind = if j == i {
                if *c == rat(1) {
                    GenKind::Symmetric
                } else {
                    GenKind::Antisymmetric
                }
            } else if i < j {
                GenKind::FreePrimary { partner: j }
            } else {
                GenKind::FreePartner { primary: j }
            };
            gens.push(Generator { name, kind });
        }
        Ok(GeneratorSpace { gens, action12 })
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn action12(&self) -> &QMatrix {
        &self.action12
    }

    /// Image of generator `i` under the transposition, as a sparse
    /// linear combination.
    pub fn apply12(&self, i: usize) -> Vec<(usize, Rat)> {
        (0..self.dim())
            .filter_map(|j| {
                let c = self.action12.at(i, j);
                if c.is_zero() {
                    None
                } else {
                    Some((j, c.clone()))
                }
            })
            .collect()
    }

    /// Diagonal of the generator-level pairing with the dual space:
    /// `-1` on the transposition members of free pairs, `+1` elsewhere.
    pub fn gram_diag(&self) -> Vec<Rat> {
        self.gens
            .iter()
            .map(|g| if g.is_free_partner() { rat(-1) } else { rat(1) })
            .collect()
    }

    /// Dual generator space: symmetric and antisymmetric swap, free
    /// pairs stay free pairs, and the action is the one making the
    /// pairing change sign under the transposition.
    pub fn dual(&self) -> GeneratorSpace {
        let names = self
            .gens
            .iter()
            .map(|g| match g.kind {
                GenKind::FreePartner { primary } => format!("{}^v^op", self.gens[primary].name),
                _ => format!("{}^v", g.name),
            })
            .collect();
        let g = QMatrix::diagonal(self.gram_diag());
        let action = {
            let gag = g.matmul(&self.action12).matmul(&g);
            Matrix::from_fn(self.dim(), self.dim(), |r, c| -gag.at(c, r).clone())
        };
        GeneratorSpace::from_action(names, action)
            .expect("dual of a valid generator space is valid")
    }

    /// Tensor product with the diagonal action; basis is lexicographic
    /// with the left factor major.
    pub fn tensor(a: &GeneratorSpace, b: &GeneratorSpace) -> GeneratorSpace {
        let names = a
            .gens
            .iter()
            .flat_map(|ga| {
                b.gens
                    .iter()
                    .map(move |gb| format!("{}@{}", ga.name, gb.name))
            })
            .collect();
        let action = a.action12.kronecker(&b.action12);
        GeneratorSpace::from_action(names, action)
            .expect("tensor of valid generator spaces is valid")
    }

    /// Same classification and action; names are ignored.
    pub fn structural_eq(&self, other: &GeneratorSpace) -> bool {
        self.dim() == other.dim()
            && self
                .gens
                .iter()
                .zip(other.gens.iter())
                .all(|(a, b)| a.kind == b.kind)
            && self.action12 == other.action12
    }
}

/// The three cyclic leaf labels of the standard weight-two basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CyclicLabel(usize);

pub const LABEL_TRIPLES: [[usize; 3]; 3] = [[1, 2, 3], [3, 1, 2], [2, 3, 1]];

impl CyclicLabel {
    pub fn all() -> [CyclicLabel; 3] {
        [CyclicLabel(0), CyclicLabel(1), CyclicLabel(2)]
    }

    pub fn from_index(i: usize) -> CyclicLabel {
        assert!(i < 3);
        CyclicLabel(i)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn triple(self) -> [usize; 3] {
        LABEL_TRIPLES[self.0]
    }

    /// `Some` exactly for the three even leaf orders.
    pub fn from_triple(t: [usize; 3]) -> Option<CyclicLabel> {
        LABEL_TRIPLES.iter().position(|&x| x == t).map(CyclicLabel)
    }
}

/// Dimension of the weight-two component over `e`.
pub fn w2_dim(e: &GeneratorSpace) -> usize {
    3 * e.dim() * e.dim()
}

/// Index of the basis element `(outer, inner, label)`.
pub fn w2_index(e: &GeneratorSpace, outer: usize, inner: usize, label: CyclicLabel) -> usize {
    (outer * e.dim() + inner) * 3 + label.index()
}

/// Inverse of [`w2_index`].
pub fn w2_decode(e: &GeneratorSpace, idx: usize) -> (usize, usize, CyclicLabel) {
    let label = CyclicLabel::from_index(idx % 3);
    let rest = idx / 3;
    (rest / e.dim(), rest % e.dim(), label)
}

/// Element of the weight-two component, in the standard basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight2Vector {
    pub coeffs: Vec<Rat>,
}

impl Weight2Vector {
    pub fn zero(e: &GeneratorSpace) -> Self {
        Weight2Vector {
            coeffs: vec![Rat::zero(); w2_dim(e)],
        }
    }

    pub fn basis(e: &GeneratorSpace, outer: usize, inner: usize, label: CyclicLabel) -> Self {
        let mut v = Weight2Vector::zero(e);
        v.coeffs[w2_index(e, outer, inner, label)] = rat(1);
        v
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Weight2Vector { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &Weight2Vector, c: &Rat) {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Linear combination of basis trees.
    pub fn combine(e: &GeneratorSpace, terms: &[(Rat, Tree3)]) -> Result<Self> {
        let mut acc = Weight2Vector::zero(e);
        for (c, t) in terms {
            let v = normalize_tree(t, e)?;
            acc.add_scaled(&v, c);
        }
        Ok(acc)
    }
}

/// Shape of a two-vertex tree on three leaves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TreeShape {
    /// `outer(inner(x_a, x_b), x_c)`
    LeftComb,
    /// `outer(x_a, inner(x_b, x_c))`
    RightComb,
}

/// Two-vertex tree: an outer and an inner generator with a leaf
/// labelling by a permutation of `{1, 2, 3}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tree3 {
    pub shape: TreeShape,
    pub outer: usize,
    pub inner: usize,
    pub leaves: [usize; 3],
}

impl Tree3 {
    pub fn left(outer: usize, inner: usize, leaves: [usize; 3]) -> Self {
        Tree3 {
            shape: TreeShape::LeftComb,
            outer,
            inner,
            leaves,
        }
    }

    pub fn right(outer: usize, inner: usize, leaves: [usize; 3]) -> Self {
        Tree3 {
            shape: TreeShape::RightComb,
            outer,
            inner,
            leaves,
        }
    }
}

fn check_tree(t: &Tree3, e: &GeneratorSpace) -> Result<()> {
    if t.outer >= e.dim() {
        return Err(Error::UnknownGenerator(t.outer));
    }
    if t.inner >= e.dim() {
        return Err(Error::UnknownGenerator(t.inner));
    }
    let mut seen = [false; 3];
    for &l in &t.leaves {
        if !(1..=3).contains(&l) || seen[l - 1] {
            return Err(Error::InvalidTree(format!(
                "leaves {:?} are not a permutation of 1,2,3",
                t.leaves
            )));
        }
        seen[l - 1] = true;
    }
    Ok(())
}

/// Expresses a tree in the standard basis.  A right comb rewrites as a
/// left comb by transposing the outer generator; a left comb whose leaf
/// triple is odd transposes the inner generator to swap its two leaves.
pub fn normalize_tree(t: &Tree3, e: &GeneratorSpace) -> Result<Weight2Vector> {
    check_tree(t, e)?;
    Ok(normalize_unchecked(t, e))
}

fn normalize_unchecked(t: &Tree3, e: &GeneratorSpace) -> Weight2Vector {
    match t.shape {
        TreeShape::RightComb => {
            // outer(x_a, inner(x_b, x_c)) = outer^(12)(inner(x_b, x_c), x_a)
            let [a, b, c] = t.leaves;
            let mut acc = Weight2Vector::zero(e);
            for (j, coeff) in e.apply12(t.outer) {
                let sub = normalize_unchecked(&Tree3::left(j, t.inner, [b, c, a]), e);
                acc.add_scaled(&sub, &coeff);
            }
            acc
        }
        TreeShape::LeftComb => {
            if let Some(label) = CyclicLabel::from_triple(t.leaves) {
                Weight2Vector::basis(e, t.outer, t.inner, label)
            } else {
                // Swap the two inner leaves: apply (12) to the inner
                // generator.  Exactly one of the two orders is cyclic.
                let [a, b, c] = t.leaves;
                let mut acc = Weight2Vector::zero(e);
                for (j, coeff) in e.apply12(t.inner) {
                    let sub = normalize_unchecked(&Tree3::left(t.outer, j, [b, a, c]), e);
                    acc.add_scaled(&sub, &coeff);
                }
                acc
            }
        }
    }
}

/// Relabels the leaves of every basis tree by `sigma` and renormalizes.
pub fn s3_action(sigma: &Perm3, v: &Weight2Vector, e: &GeneratorSpace) -> Weight2Vector {
    let mut acc = Weight2Vector::zero(e);
    for (idx, c) in v.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (outer, inner, label) = w2_decode(e, idx);
        let [i, j, k] = label.triple();
        let t = Tree3::left(outer, inner, [sigma.apply(i), sigma.apply(j), sigma.apply(k)]);
        let moved = normalize_unchecked(&t, e);
        acc.add_scaled(&moved, c);
    }
    acc
}

/// Matrix of the S3-action of `sigma` on the weight-two component
/// (row `i` is the image of basis element `i`).
pub fn s3_matrix(sigma: &Perm3, e: &GeneratorSpace) -> QMatrix {
    let n = w2_dim(e);
    let mut rows = Vec::with_capacity(n);
    for idx in 0..n {
        let mut v = Weight2Vector::zero(e);
        v.coeffs[idx] = rat(1);
        rows.push(s3_action(sigma, &v, e).coeffs);
    }
    Matrix::from_rows(n, rows)
}

/// Smallest S3-stable subspace containing the given vectors.
pub fn s3_span(vectors: &[Weight2Vector], e: &GeneratorSpace) -> QSubspace {
    let mut rows = Vec::new();
    for v in vectors {
        for sigma in Perm3::all() {
            rows.push(s3_action(&sigma, v, e).coeffs);
        }
    }
    Subspace::from_rows(w2_dim(e), rows)
}

/// Checks that a subspace of the weight-two component is stable under
/// all six leaf relabellings; returns the offending permutation on
/// failure.
pub fn s3_stable(s: &QSubspace, e: &GeneratorSpace) -> std::result::Result<(), Perm3> {
    for sigma in Perm3::all() {
        for row in s.basis_rows() {
            let moved = s3_action(&sigma, &Weight2Vector::from_coeffs(row), e);
            if !s.contains(&moved.coeffs) {
                return Err(sigma);
            }
        }
    }
    Ok(())
}

/// Diagonal of the pairing between the weight-two components over `e`
/// and over its dual: the product of the generator grams at the two
/// vertices, the labels paired identically.
pub fn w2_gram_diag(e: &GeneratorSpace) -> Vec<Rat> {
    let g = e.gram_diag();
    let n = w2_dim(e);
    (0..n)
        .map(|idx| {
            let (a, b, _) = w2_decode(e, idx);
            &g[a] * &g[b]
        })
        .collect()
}

/// Renders a basis element as a monomial, e.g. `br(br(x1,x2),x3)`.
pub fn w2_basis_name(e: &GeneratorSpace, idx: usize) -> String {
    let (a, b, l) = w2_decode(e, idx);
    let [i, j, k] = l.triple();
    format!("{}({}(x{},x{}),x{})", e.name(a), e.name(b), i, j, k)
}

/// Renders a weight-two vector as a signed sum of monomials.
pub fn w2_render(e: &GeneratorSpace, coeffs: &[Rat]) -> String {
    let mut out = String::new();
    for (idx, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = w2_basis_name(e, idx);
        let abs = if c < &Rat::zero() { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if c < &Rat::zero() {
                out.push_str("- ");
            }
        } else if c < &Rat::zero() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if abs == rat(1) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", abs, mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lie_space() -> GeneratorSpace {
        GeneratorSpace::new(&[("br", SymmetryTag::Antisymmetric)])
    }

    fn free_space() -> GeneratorSpace {
        GeneratorSpace::new(&[("pr", SymmetryTag::FreePair)])
    }

    #[test]
    fn free_pair_declaration_expands() {
        let e = free_space();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.name(1), "pr^op");
        assert_eq!(e.generators()[0].partner(), Some(1));
        assert!(e.generators()[0].is_primary());
        assert!(!e.generators()[1].is_primary());
    }

    #[test]
    fn action_is_involution() {
        for e in [lie_space(), free_space()] {
            assert_eq!(
                e.action12().matmul(e.action12()),
                QMatrix::identity(e.dim())
            );
        }
    }

    #[test]
    fn normalize_standard_left_comb() {
        let e = lie_space();
        let v = normalize_tree(&Tree3::left(0, 0, [1, 2, 3]), &e).unwrap();
        assert_eq!(v, Weight2Vector::basis(&e, 0, 0, CyclicLabel::from_index(0)));
    }

    #[test]
    fn normalize_odd_left_comb_swaps_inner() {
        // outer'(inner(x1,x3),x2) picks up the inner transposition and
        // lands on the cyclic label (3,1,2); antisymmetric inner gives
        // coefficient -1.
        let e = lie_space();
        let v = normalize_tree(&Tree3::left(0, 0, [1, 3, 2]), &e).unwrap();
        let mut expected = Weight2Vector::zero(&e);
        expected.coeffs[w2_index(&e, 0, 0, CyclicLabel::from_index(1))] = rat(-1);
        assert_eq!(v, expected);
    }

    #[test]
    fn normalize_right_comb() {
        // br(x1, br(x2,x3)) with antisymmetric br: one outer
        // transposition, so -1 on the label (2,3,1).
        let e = lie_space();
        let v = normalize_tree(&Tree3::right(0, 0, [1, 2, 3]), &e).unwrap();
        let mut expected = Weight2Vector::zero(&e);
        expected.coeffs[w2_index(&e, 0, 0, CyclicLabel::from_index(2))] = rat(-1);
        assert_eq!(v, expected);
    }

    #[test]
    fn unknown_generator_rejected() {
        let e = lie_space();
        assert!(matches!(
            normalize_tree(&Tree3::left(1, 0, [1, 2, 3]), &e),
            Err(Error::UnknownGenerator(1))
        ));
    }

    #[test]
    fn s3_identity_fixes_everything() {
        let e = free_space();
        for idx in 0..w2_dim(&e) {
            let mut v = Weight2Vector::zero(&e);
            v.coeffs[idx] = rat(1);
            assert_eq!(s3_action(&Perm3::identity(), &v, &e), v);
        }
    }

    #[test]
    fn s3_transposition_on_antisymmetric_basis() {
        let e = lie_space();
        let v = Weight2Vector::basis(&e, 0, 0, CyclicLabel::from_index(0));
        let moved = s3_action(&Perm3::transposition(1, 2), &v, &e);
        let mut expected = Weight2Vector::zero(&e);
        expected.coeffs[0] = rat(-1);
        assert_eq!(moved, expected);
    }

    #[test]
    fn s3_cycle_rotates_labels_of_free_pair() {
        let e = free_space();
        // The 3-cycle with images (3,1,2) carries the cyclic labels
        // (1,2,3) -> (3,1,2) -> (2,3,1) in order.
        let sigma = Perm3::from_images([3, 1, 2]);
        let v = Weight2Vector::basis(&e, 0, 1, CyclicLabel::from_index(0));
        let moved = s3_action(&sigma, &v, &e);
        assert_eq!(moved, Weight2Vector::basis(&e, 0, 1, CyclicLabel::from_index(1)));
        let again = s3_action(&sigma, &moved, &e);
        assert_eq!(again, Weight2Vector::basis(&e, 0, 1, CyclicLabel::from_index(2)));
    }

    fn random_space(rng: &mut ChaCha8Rng) -> GeneratorSpace {
        let tags = [
            SymmetryTag::Symmetric,
            SymmetryTag::Antisymmetric,
            SymmetryTag::FreePair,
        ];
        let n = rng.gen_range(1..=2);
        let decls: Vec<(String, SymmetryTag)> = (0..n)
            .map(|i| (format!("g{i}"), tags[rng.gen_range(0..3)]))
            .collect();
        let borrowed: Vec<(&str, SymmetryTag)> =
            decls.iter().map(|(s, t)| (s.as_str(), *t)).collect();
        GeneratorSpace::new(&borrowed)
    }

    fn random_tree(rng: &mut ChaCha8Rng, e: &GeneratorSpace) -> Tree3 {
        let mut leaves = [1, 2, 3];
        for i in (1..3).rev() {
            leaves.swap(i, rng.gen_range(0..=i));
        }
        Tree3 {
            shape: if rng.gen_bool(0.5) {
                TreeShape::LeftComb
            } else {
                TreeShape::RightComb
            },
            outer: rng.gen_range(0..e.dim()),
            inner: rng.gen_range(0..e.dim()),
            leaves,
        }
    }

    #[test]
    fn normalization_commutes_with_relabelling() {
        // Normalizing, then acting by sigma, equals relabelling the
        // tree leaves by sigma and normalizing.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let e = random_space(&mut rng);
            let t = random_tree(&mut rng, &e);
            for sigma in Perm3::all() {
                let lhs = s3_action(&sigma, &normalize_tree(&t, &e).unwrap(), &e);
                let mut relabelled = t;
                for l in relabelled.leaves.iter_mut() {
                    *l = sigma.apply(*l);
                }
                let rhs = normalize_tree(&relabelled, &e).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn s3_action_is_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..100 {
            let e = random_space(&mut rng);
            let t = random_tree(&mut rng, &e);
            let v = normalize_tree(&t, &e).unwrap();
            for a in Perm3::all() {
                for b in Perm3::all() {
                    let lhs = s3_action(&a.compose(&b), &v, &e);
                    let rhs = s3_action(&a, &s3_action(&b, &v, &e), &e);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn transpositions_are_involutions_on_w2() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..50 {
            let e = random_space(&mut rng);
            let v = normalize_tree(&random_tree(&mut rng, &e), &e).unwrap();
            for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                let s = Perm3::transposition(a, b);
                assert_eq!(s3_action(&s, &s3_action(&s, &v, &e), &e), v);
            }
        }
    }

    #[test]
    fn jacobi_span_is_one_dimensional() {
        let e = lie_space();
        let jacobi = Weight2Vector::combine(
            &e,
            &[
                (rat(1), Tree3::right(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::left(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::right(0, 0, [2, 1, 3])),
            ],
        )
        .unwrap();
        let span = s3_span(&[jacobi], &e);
        assert_eq!(span.dim(), 1);
    }

    #[test]
    fn empty_span_is_zero() {
        let e = lie_space();
        assert_eq!(s3_span(&[], &e), QSubspace::zero_space(3));
    }

    #[test]
    fn associativity_span_of_free_pair_is_six_dimensional() {
        let e = free_space();
        let assoc = Weight2Vector::combine(
            &e,
            &[
                (rat(1), Tree3::left(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::right(0, 0, [1, 2, 3])),
            ],
        )
        .unwrap();
        assert_eq!(s3_span(&[assoc], &e).dim(), 6);
        assert_eq!(w2_dim(&e), 12);
    }

    #[test]
    fn dual_swaps_symmetry() {
        let e = GeneratorSpace::new(&[
            ("m", SymmetryTag::Symmetric),
            ("b", SymmetryTag::Antisymmetric),
            ("f", SymmetryTag::FreePair),
        ]);
        let d = e.dual();
        assert_eq!(d.generators()[0].tag(), SymmetryTag::Antisymmetric);
        assert_eq!(d.generators()[1].tag(), SymmetryTag::Symmetric);
        assert_eq!(d.generators()[2].tag(), SymmetryTag::FreePair);
        assert_eq!(d.name(2), "f^v");
        assert_eq!(d.name(3), "f^v^op");
        // Double dual restores the structure.
        assert!(e.structural_eq(&d.dual()));
    }

    #[test]
    fn pairing_invariance_on_generators() {
        // <e.(12), f.(12)> = -<e, f> for the generator pairing.
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let e = random_space(&mut rng);
            let d = e.dual();
            let g = e.gram_diag();
            let n = e.dim();
            for i in 0..n {
                for j in 0..n {
                    let mut paired = Rat::zero();
                    for (a, ca) in e.apply12(i) {
                        for (b, cb) in d.apply12(j) {
                            if a == b {
                                paired += ca.clone() * cb * &g[a];
                            }
                        }
                    }
                    let direct = if i == j { g[i].clone() } else { Rat::zero() };
                    assert_eq!(paired, -direct);
                }
            }
        }
    }
}
