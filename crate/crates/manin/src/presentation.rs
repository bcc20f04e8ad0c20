//! Quadratic presentations: a binary generator space together with an
//! S3-stable relation subspace of its weight-two component.
//!
//! The module also carries the named presentations used throughout
//! (Lie, Com, Ass, Perm, Leib, preLie, Zinbiel, Poisson and both
//! pre-Poisson variants), the arity-3 dimension formula, Koszul duals,
//! the closed-form composition table of the permutation-algebra
//! operad, and generator-matching between presentations.

use std::sync::OnceLock;

use crate::linalg::{kernel, Subspace};
use crate::weight2::{
    s3_span, s3_stable, w2_dim, w2_gram_diag, w2_index, GeneratorSpace, SymmetryTag, Tree3,
    Weight2Vector,
};
use crate::{rat, Error, QMatrix, QSubspace, Rat, Result};
use num_traits::Zero;

/// A binary quadratic presentation `(E, R)`.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    pub name: String,
    space: GeneratorSpace,
    relations: QSubspace,
}

impl QuadraticPresentation {
    /// Checks the ambient dimension and S3-stability of the relation
    /// space.
    pub fn new(name: &str, space: GeneratorSpace, relations: QSubspace) -> Result<Self> {
        if relations.ambient_dim() != w2_dim(&space) {
            return Err(Error::DimensionMismatch(format!(
                "relation space ambient {} but weight-two component has dimension {}",
                relations.ambient_dim(),
                w2_dim(&space)
            )));
        }
        if let Err(sigma) = s3_stable(&relations, &space) {
            return Err(Error::NotStable(sigma.to_string()));
        }
        Ok(QuadraticPresentation {
            name: name.to_string(),
            space,
            relations,
        })
    }

    /// Builds a presentation whose relation space is the S3-span of
    /// the given identities.
    pub fn from_identities(
        name: &str,
        space: GeneratorSpace,
        identities: &[Vec<(Rat, Tree3)>],
    ) -> Result<Self> {
        let mut vectors = Vec::with_capacity(identities.len());
        for terms in identities {
            vectors.push(Weight2Vector::combine(&space, terms)?);
        }
        let relations = s3_span(&vectors, &space);
        QuadraticPresentation::new(name, space, relations)
    }

    pub fn space(&self) -> &GeneratorSpace {
        &self.space
    }

    pub fn relations(&self) -> &QSubspace {
        &self.relations
    }

    pub fn dim_generators(&self) -> usize {
        self.space.dim()
    }

    pub fn dim_relations(&self) -> usize {
        self.relations.dim()
    }

    /// `dim P(3) = 3 (dim E)^2 - dim R`.
    pub fn dim_arity3(&self) -> usize {
        w2_dim(&self.space) - self.relations.dim()
    }

    /// The Koszul dual presentation: dual generators with the
    /// orthogonal complement of the relations under the weight-two
    /// extension of the generator pairing.
    pub fn koszul_dual(&self) -> QuadraticPresentation {
        let dual_space = self.space.dual();
        let w = QMatrix::diagonal(w2_gram_diag(&self.space));
        let r_perp = kernel(&self.relations.basis().matmul(&w));
        QuadraticPresentation::new(&format!("{}!", self.name), dual_space, r_perp)
            .expect("orthogonal complement of a stable space is stable")
    }

    /// True iff dualizing twice returns the same relation subspace
    /// under the index identification of a generator with its double
    /// dual.
    pub fn double_dual_check(&self) -> bool {
        let dd = self.koszul_dual().koszul_dual();
        dd.space.structural_eq(&self.space) && dd.relations == self.relations
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Basis element `e^n_j` of the arity-`n` component of the
/// permutation-algebra operad; `j` marks the rightmost factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PermBasisElement {
    pub arity: usize,
    pub index: usize,
}

impl PermBasisElement {
    pub fn new(arity: usize, index: usize) -> Self {
        assert!(arity >= 1 && (1..=arity).contains(&index));
        PermBasisElement { arity, index }
    }
}

/// The closed-form composition `e^m_i o_j e^n_k`.
pub fn perm_compose(
    a: PermBasisElement,
    j: usize,
    b: PermBasisElement,
) -> Result<PermBasisElement> {
    if !(1..=a.arity).contains(&j) {
        return Err(Error::PositionOutOfRange(format!(
            "position {} in arity {}",
            j, a.arity
        )));
    }
    let arity = a.arity + b.arity - 1;
    let index = if a.index < j {
        a.index
    } else if a.index == j {
        a.index + b.index - 1
    } else {
        a.index + b.arity - 1
    };
    Ok(PermBasisElement { arity, index })
}

fn lie_like(name: &str, tag: SymmetryTag) -> Result<QuadraticPresentation> {
    // br(x1, br(x2,x3)) - br(br(x1,x2),x3) - br(x2, br(x1,x3))
    let space = GeneratorSpace::new(&[("br", tag)]);
    QuadraticPresentation::from_identities(
        name,
        space,
        &[vec![
            (rat(1), Tree3::right(0, 0, [1, 2, 3])),
            (rat(-1), Tree3::left(0, 0, [1, 2, 3])),
            (rat(-1), Tree3::right(0, 0, [2, 1, 3])),
        ]],
    )
}

fn assoc_identity(g: usize) -> Vec<(Rat, Tree3)> {
    vec![
        (rat(1), Tree3::left(g, g, [1, 2, 3])),
        (rat(-1), Tree3::right(g, g, [1, 2, 3])),
    ]
}

fn build_catalog() -> Vec<QuadraticPresentation> {
    let lie = lie_like("lie", SymmetryTag::Antisymmetric).expect("lie presentation");
    let leib = lie_like("leib", SymmetryTag::FreePair).expect("leib presentation");

    let com = QuadraticPresentation::from_identities(
        "com",
        GeneratorSpace::new(&[("pr", SymmetryTag::Symmetric)]),
        &[assoc_identity(0)],
    )
    .expect("com presentation");

    let ass = QuadraticPresentation::from_identities(
        "ass",
        GeneratorSpace::new(&[("pr", SymmetryTag::FreePair)]),
        &[assoc_identity(0)],
    )
    .expect("ass presentation");

    // Associativity plus (x1*x2)*x3 = (x2*x1)*x3.
    let perm = QuadraticPresentation::from_identities(
        "perm",
        GeneratorSpace::new(&[("pr", SymmetryTag::FreePair)]),
        &[
            assoc_identity(0),
            vec![
                (rat(1), Tree3::left(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::left(0, 0, [2, 1, 3])),
            ],
        ],
    )
    .expect("perm presentation");

    // Symmetric product pr (index 0), antisymmetric bracket br
    // (index 1): associativity, the Jacobi identity, and the bracket
    // acting as a derivation of the product.
    let poiss = QuadraticPresentation::from_identities(
        "poiss",
        GeneratorSpace::new(&[
            ("pr", SymmetryTag::Symmetric),
            ("br", SymmetryTag::Antisymmetric),
        ]),
        &[
            assoc_identity(0),
            vec![
                (rat(1), Tree3::right(1, 1, [1, 2, 3])),
                (rat(-1), Tree3::left(1, 1, [1, 2, 3])),
                (rat(-1), Tree3::right(1, 1, [2, 1, 3])),
            ],
            vec![
                (rat(1), Tree3::right(1, 0, [1, 2, 3])),
                (rat(-1), Tree3::left(0, 1, [1, 2, 3])),
                (rat(-1), Tree3::right(0, 1, [2, 1, 3])),
            ],
        ],
    )
    .expect("poiss presentation");

    // Free bracket br (0, 1) and free product pr (2, 3); the Leibniz
    // identity for br, the permutation-algebra relations for pr, and
    // the three mixed compatibilities, all with degree-zero signs.
    let dual_pre_poiss = QuadraticPresentation::from_identities(
        "dualprepoiss",
        GeneratorSpace::new(&[
            ("br", SymmetryTag::FreePair),
            ("pr", SymmetryTag::FreePair),
        ]),
        &[
            // (I) Leibniz
            vec![
                (rat(1), Tree3::right(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::left(0, 0, [1, 2, 3])),
                (rat(-1), Tree3::right(0, 0, [2, 1, 3])),
            ],
            // (II) perm
            assoc_identity(2),
            vec![
                (rat(1), Tree3::left(2, 2, [1, 2, 3])),
                (rat(-1), Tree3::left(2, 2, [2, 1, 3])),
            ],
            // [x1, x2*x3] = [x1,x2]*x3 + x2*[x1,x3]
            vec![
                (rat(1), Tree3::right(0, 2, [1, 2, 3])),
                (rat(-1), Tree3::left(2, 0, [1, 2, 3])),
                (rat(-1), Tree3::right(2, 0, [2, 1, 3])),
            ],
            // [x1*x2, x3] = x1*[x2,x3] + x2*[x1,x3]
            vec![
                (rat(1), Tree3::left(0, 2, [1, 2, 3])),
                (rat(-1), Tree3::right(2, 0, [1, 2, 3])),
                (rat(-1), Tree3::right(2, 0, [2, 1, 3])),
            ],
            // [x1,x2]*x3 + [x2,x1]*x3 = 0
            vec![
                (rat(1), Tree3::left(2, 0, [1, 2, 3])),
                (rat(1), Tree3::left(2, 0, [2, 1, 3])),
            ],
        ],
    )
    .expect("dualprepoiss presentation");

    let prelie = perm.koszul_dual().renamed("prelie");
    let zinbiel = leib.koszul_dual().renamed("zinbiel");
    let prepoiss = dual_pre_poiss.koszul_dual().renamed("prepoiss");

    vec![
        lie, com, ass, perm, leib, prelie, zinbiel, poiss, dual_pre_poiss, prepoiss,
    ]
}

static CATALOG: OnceLock<Vec<QuadraticPresentation>> = OnceLock::new();

/// The built-in presentations, in a fixed order.
pub fn catalog() -> &'static [QuadraticPresentation] {
    CATALOG.get_or_init(build_catalog)
}

pub fn catalog_get(name: &str) -> Option<&'static QuadraticPresentation> {
    catalog().iter().find(|p| p.name == name)
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|p| p.name.as_str()).collect()
}

/// Weight-two matrix induced by a generator map `t` (row `i` of `t` is
/// the image of generator `i` of `from` in the coordinates of `to`).
/// Rows are indexed by the source basis, so a coordinate row vector
/// transforms by right multiplication.
pub fn induced_w2_map(t: &QMatrix, from: &GeneratorSpace, to: &GeneratorSpace) -> QMatrix {
    let rows = w2_dim(from);
    let cols = w2_dim(to);
    let mut m = QMatrix::zeros(rows, cols);
    for a in 0..from.dim() {
        for ap in 0..to.dim() {
            let ta = t.at(a, ap);
            if ta.is_zero() {
                continue;
            }
            for b in 0..from.dim() {
                for bp in 0..to.dim() {
                    let tb = t.at(b, bp);
                    if tb.is_zero() {
                        continue;
                    }
                    for l in crate::weight2::CyclicLabel::all() {
                        m.set(w2_index(from, a, b, l), w2_index(to, ap, bp, l), ta * tb);
                    }
                }
            }
        }
    }
    m
}

/// Image of a relation subspace under the weight-two map induced by a
/// generator map.
pub fn transport_relations(
    t: &QMatrix,
    from: &GeneratorSpace,
    to: &GeneratorSpace,
    relations: &QSubspace,
) -> QSubspace {
    let m = induced_w2_map(t, from, to);
    let rows = relations
        .basis_rows()
        .into_iter()
        .map(|r| m.apply_left(&r))
        .collect();
    Subspace::from_rows(w2_dim(to), rows)
}

fn carries_relations(t: &QMatrix, p: &QuadraticPresentation, q: &QuadraticPresentation) -> bool {
    // Relation dimensions agree by the caller's prefilter, so
    // containment of the transformed basis is equality.
    let m = induced_w2_map(t, &p.space, &q.space);
    p.relations
        .basis_rows()
        .into_iter()
        .all(|r| q.relations.contains(&m.apply_left(&r)))
}

fn equivariant(t: &QMatrix, p: &GeneratorSpace, q: &GeneratorSpace) -> bool {
    p.action12().matmul(t) == t.matmul(q.action12())
}

/// Positional generator matching: the k-th primary generator of each
/// symmetry class maps to the k-th primary of the same class on the
/// other side, and free-pair partners extend equivariantly.
fn canonical_generator_map(p: &GeneratorSpace, q: &GeneratorSpace) -> Option<QMatrix> {
    let classes = [
        SymmetryTag::Symmetric,
        SymmetryTag::Antisymmetric,
        SymmetryTag::FreePair,
    ];
    let d = p.dim();
    if q.dim() != d {
        return None;
    }
    let mut t = QMatrix::zeros(d, d);
    let mut assigned: Vec<Option<usize>> = vec![None; d];
    for class in classes {
        let from: Vec<usize> = (0..d)
            .filter(|&i| p.generators()[i].is_primary() && p.generators()[i].tag() == class)
            .collect();
        let to: Vec<usize> = (0..d)
            .filter(|&i| q.generators()[i].is_primary() && q.generators()[i].tag() == class)
            .collect();
        if from.len() != to.len() {
            return None;
        }
        for (&i, &j) in from.iter().zip(to.iter()) {
            assigned[i] = Some(j);
        }
    }
    for (i, j) in assigned.iter().enumerate() {
        if let Some(j) = j {
            t.set(i, *j, rat(1));
        }
    }
    // Partner rows extend equivariantly: with g_partner.(12) equal to
    // twist * g_primary, row(partner) = twist * (row(primary) . action_q).
    for i in 0..d {
        let gen = &p.generators()[i];
        if gen.is_free_partner() {
            let primary = gen.partner().unwrap();
            let twist = p.action12().at(i, primary).clone();
            let row = t.row(primary).to_vec();
            let moved = q.action12().apply_left(&row);
            for (c, v) in moved.into_iter().enumerate() {
                t.set(i, c, v * twist.clone());
            }
        }
    }
    equivariant(&t, p, q).then_some(t)
}

fn signed_permutations(p: &GeneratorSpace, q: &GeneratorSpace) -> Vec<QMatrix> {
    fn rec(
        p: &GeneratorSpace,
        q: &GeneratorSpace,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<QMatrix>,
    ) {
        let d = p.dim();
        if perm.len() == d {
            for mask in 0..(1u32 << d) {
                let mut t = QMatrix::zeros(d, d);
                for (i, &j) in perm.iter().enumerate() {
                    let s = if mask & (1 << i) != 0 { rat(-1) } else { rat(1) };
                    t.set(i, j, s);
                }
                if equivariant(&t, p, q) {
                    out.push(t);
                }
            }
            return;
        }
        let i = perm.len();
        for j in 0..d {
            if !used[j] && p.generators()[i].tag() == q.generators()[j].tag() {
                used[j] = true;
                perm.push(j);
                rec(p, q, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if q.dim() == p.dim() {
        rec(p, q, &mut Vec::new(), &mut vec![false; p.dim()], &mut out);
    }
    out
}

/// Finds an invertible S2-equivariant generator map carrying the
/// relations of `p` onto those of `q`: first the positional canonical
/// map, then an exhaustive search over signed generator permutations.
pub fn match_presentations(
    p: &QuadraticPresentation,
    q: &QuadraticPresentation,
) -> Option<QMatrix> {
    if p.dim_generators() != q.dim_generators() || p.dim_relations() != q.dim_relations() {
        return None;
    }
    if let Some(t) = canonical_generator_map(&p.space, &q.space) {
        if carries_relations(&t, p, q) {
            return Some(t);
        }
    }
    signed_permutations(&p.space, &q.space)
        .into_iter()
        .find(|t| carries_relations(t, p, q))
}

/// Name of the first catalog entry isomorphic to `p` by generator
/// matching, if any.
pub fn catalog_match(p: &QuadraticPresentation) -> Option<&'static str> {
    catalog()
        .iter()
        .find(|q| match_presentations(p, q).is_some())
        .map(|q| q.name.as_str())
}

/// Pairing of weight-two vectors over `e` and over its dual.
pub fn w2_pair(e: &GeneratorSpace, u: &[Rat], v: &[Rat]) -> Rat {
    let diag = w2_gram_diag(e);
    let mut acc = Rat::zero();
    for ((a, b), g) in u.iter().zip(v.iter()).zip(diag.iter()) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b * g;
        }
    }
    acc
}
