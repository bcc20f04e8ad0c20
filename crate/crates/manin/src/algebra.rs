//! Finite-dimensional algebras given by structure constants, with
//! optional differential, averaging or Rota-Baxter operators, and
//! exhaustive relation checks against quadratic presentations.
//!
//! Every structural identity an operator role promises is verified on
//! all basis pairs when the algebra is constructed, so a value carrying
//! a role tag cannot exist with a false one.

use crate::presentation::QuadraticPresentation;
use crate::weight2::{w2_decode, w2_render, GeneratorSpace};
use crate::{rat, Error, QMatrix, Rat, Result};
use num_traits::Zero;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorRole {
    Differential,
    Averaging,
    RotaBaxter,
}

impl OperatorRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorRole::Differential => "differential",
            OperatorRole::Averaging => "averaging",
            OperatorRole::RotaBaxter => "rota-baxter",
        }
    }
}

/// Unary operator on the algebra; row `i` of `matrix` is the image of
/// basis element `i`.
#[derive(Clone, Debug)]
pub struct UnaryOperator {
    pub name: String,
    pub role: OperatorRole,
    pub degree: i64,
    pub matrix: QMatrix,
}

/// One multiplication, as a structure-constant tensor:
/// `tensor[(i * n + j) * n + k]` is the coefficient of basis element
/// `k` in the product of basis elements `i` and `j`.
#[derive(Clone, Debug)]
pub struct Product {
    pub name: String,
    tensor: Vec<Rat>,
}

impl Product {
    pub fn new(name: &str, n: usize, tensor: Vec<Rat>) -> Self {
        assert_eq!(tensor.len(), n * n * n, "structure constant tensor size");
        Product {
            name: name.to_string(),
            tensor,
        }
    }

    pub fn from_entries(name: &str, n: usize, entries: &[(usize, usize, usize, Rat)]) -> Self {
        let mut tensor = vec![Rat::zero(); n * n * n];
        for (i, j, k, c) in entries {
            tensor[(i * n + j) * n + k] = c.clone();
        }
        Product {
            name: name.to_string(),
            tensor,
        }
    }

    pub fn coeffs(&self, n: usize, i: usize, j: usize) -> &[Rat] {
        &self.tensor[(i * n + j) * n..(i * n + j) * n + n]
    }
}

/// Finite-dimensional (optionally graded) algebra with named
/// multiplications and at most one tagged unary operator.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub name: String,
    basis: Vec<String>,
    degrees: Vec<i64>,
    products: Vec<Product>,
    operator: Option<UnaryOperator>,
}

fn vec_add_scaled(acc: &mut [Rat], v: &[Rat], c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v.iter()) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

impl FiniteAlgebra {
    pub fn new(
        name: &str,
        basis: Vec<String>,
        degrees: Vec<i64>,
        products: Vec<Product>,
        operator: Option<UnaryOperator>,
    ) -> Result<Self> {
        if degrees.len() != basis.len() {
            return Err(Error::DimensionMismatch(
                "degree list must match the basis".into(),
            ));
        }
        let a = FiniteAlgebra {
            name: name.to_string(),
            basis,
            degrees,
            products,
            operator,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn products(&self) -> &[Product] {
        &self.products
    }

    pub fn product_names(&self) -> Vec<String> {
        self.products.iter().map(|p| p.name.clone()).collect()
    }

    pub fn product_index(&self, name: &str) -> Option<usize> {
        self.products.iter().position(|p| p.name == name)
    }

    pub fn operator(&self) -> Option<&UnaryOperator> {
        self.operator.as_ref()
    }

    /// Replaces the operator and revalidates.
    pub fn with_operator(mut self, op: UnaryOperator) -> Result<Self> {
        self.operator = Some(op);
        self.validate()?;
        Ok(self)
    }

    pub fn without_operator(mut self) -> Self {
        self.operator = None;
        self
    }

    /// Product of two coordinate vectors under multiplication `p`.
    pub fn mul(&self, p: usize, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                vec_add_scaled(&mut out, self.products[p].coeffs(n, i, j), &c);
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = rat(1);
        v
    }

    /// Image of a coordinate vector under the unary operator.
    pub fn apply_operator(&self, v: &[Rat]) -> Vec<Rat> {
        let op = self.operator.as_ref().expect("operator present");
        op.matrix.apply_left(v)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for p in &self.products {
            if p.tensor.len() != n * n * n {
                return Err(Error::DimensionMismatch(format!(
                    "product {} tensor size",
                    p.name
                )));
            }
            for i in 0..n {
                for j in 0..n {
                    for (k, c) in p.coeffs(n, i, j).iter().enumerate() {
                        if !c.is_zero() && self.degrees[k] != self.degrees[i] + self.degrees[j] {
                            return Err(Error::Validation(format!(
                                "product {} does not respect degrees at ({}, {})",
                                p.name, self.basis[i], self.basis[j]
                            )));
                        }
                    }
                }
            }
        }
        if let Some(op) = &self.operator {
            if op.matrix.rows() != n || op.matrix.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "operator {} must be {}x{}",
                    op.name, n, n
                )));
            }
            for i in 0..n {
                for (k, c) in op.matrix.row(i).iter().enumerate() {
                    if !c.is_zero() && self.degrees[k] != self.degrees[i] + op.degree {
                        return Err(Error::Validation(format!(
                            "operator {} does not respect degrees at {}",
                            op.name, self.basis[i]
                        )));
                    }
                }
            }
            match op.role {
                OperatorRole::Differential => self.validate_differential(op)?,
                OperatorRole::Averaging => self.validate_averaging(op)?,
                OperatorRole::RotaBaxter => self.validate_rota_baxter(op)?,
            }
        }
        Ok(())
    }

    fn validate_differential(&self, op: &UnaryOperator) -> Result<()> {
        if op.degree % 2 == 0 {
            return Err(Error::Validation(format!(
                "differential {} must have odd degree",
                op.name
            )));
        }
        if !op.matrix.matmul(&op.matrix).is_zero() {
            return Err(Error::Validation(format!(
                "differential {} does not square to zero",
                op.name
            )));
        }
        let n = self.dim();
        for (pi, p) in self.products.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    // d(xy) = (dx)y + (-1)^|x| x(dy)
                    let lhs = self.apply_operator(&{
                        let mut v = vec![Rat::zero(); n];
                        vec_add_scaled(&mut v, p.coeffs(n, i, j), &rat(1));
                        v
                    });
                    let mut rhs = self.mul(pi, &op.matrix.row(i).to_vec(), &self.basis_vec(j));
                    let sign = if self.degrees[i] % 2 == 0 { rat(1) } else { rat(-1) };
                    let right = self.mul(pi, &self.basis_vec(i), &op.matrix.row(j).to_vec());
                    vec_add_scaled(&mut rhs, &right, &sign);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "operator {} is not a derivation of {} at ({}, {})",
                            op.name, p.name, self.basis[i], self.basis[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_averaging(&self, op: &UnaryOperator) -> Result<()> {
        let n = self.dim();
        for (pi, p) in self.products.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let ai = op.matrix.row(i).to_vec();
                    let aj = op.matrix.row(j).to_vec();
                    let both = self.mul(pi, &ai, &aj);
                    let left = self.apply_operator(&self.mul(pi, &ai, &self.basis_vec(j)));
                    let right = self.apply_operator(&self.mul(pi, &self.basis_vec(i), &aj));
                    if left != both || right != both {
                        return Err(Error::Validation(format!(
                            "operator {} fails the averaging identity for {} at ({}, {})",
                            op.name, p.name, self.basis[i], self.basis[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_rota_baxter(&self, op: &UnaryOperator) -> Result<()> {
        let n = self.dim();
        for (pi, p) in self.products.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let bi = op.matrix.row(i).to_vec();
                    let bj = op.matrix.row(j).to_vec();
                    let lhs = self.mul(pi, &bi, &bj);
                    let mut inner = self.mul(pi, &bi, &self.basis_vec(j));
                    let right = self.mul(pi, &self.basis_vec(i), &bj);
                    vec_add_scaled(&mut inner, &right, &rat(1));
                    let rhs = self.apply_operator(&inner);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "operator {} fails the Rota-Baxter identity for {} at ({}, {})",
                            op.name, p.name, self.basis[i], self.basis[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn require_role(&self, role: OperatorRole) -> Result<&UnaryOperator> {
        match &self.operator {
            None => Err(Error::MissingOperator(role.as_str().to_string())),
            Some(op) if op.role != role => Err(Error::RoleMismatch {
                expected: role.as_str().to_string(),
                found: op.role.as_str().to_string(),
            }),
            Some(op) => Ok(op),
        }
    }
}

/// New products named after an original multiplication.
fn derived_product_tensors(
    a: &FiniteAlgebra,
    build: impl Fn(usize, usize, usize) -> Vec<Rat>,
) -> Vec<Vec<Rat>> {
    let n = a.dim();
    (0..a.products.len())
        .map(|p| {
            let mut tensor = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    tensor.extend(build(p, i, j));
                }
            }
            tensor
        })
        .collect()
}

/// Shifted algebra whose multiplications are the two one-sided
/// differential twists of each original multiplication: the left
/// family `<m>_d` is `-(-1)^|x| s m(dx, y)`, the right family `<m>^d`
/// is `s m(x, dy)`.  Left family first, then the right family.
pub fn derived_brackets(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let op = a.require_role(OperatorRole::Differential)?.clone();
    let n = a.dim();
    let left = derived_product_tensors(a, |p, i, j| {
        let mut v = a.mul(p, &op.matrix.row(i).to_vec(), &a.basis_vec(j));
        let sign = if a.degrees[i] % 2 == 0 { rat(-1) } else { rat(1) };
        for x in v.iter_mut() {
            *x *= &sign;
        }
        v
    });
    let right = derived_product_tensors(a, |p, i, j| {
        a.mul(p, &a.basis_vec(i), &op.matrix.row(j).to_vec())
    });
    let mut products = Vec::with_capacity(2 * a.products.len());
    for (p, tensor) in left.into_iter().enumerate() {
        products.push(Product::new(&format!("{}_d", a.products[p].name), n, tensor));
    }
    for (p, tensor) in right.into_iter().enumerate() {
        products.push(Product::new(&format!("{}^d", a.products[p].name), n, tensor));
    }
    FiniteAlgebra::new(
        &format!("s{}", a.name),
        a.basis.iter().map(|b| format!("s{b}")).collect(),
        a.degrees.iter().map(|d| d + 1).collect(),
        products,
        None,
    )
}

/// Unshifted algebra with the two averaging-twisted multiplications
/// `<m>_al : (x, y) -> m(a x, y)` and `<m>_ar : (x, y) -> m(x, a y)`.
pub fn averaging_brackets(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let op = a.require_role(OperatorRole::Averaging)?.clone();
    build_twisted(a, &op, "_al", "_ar")
}

/// Algebra with the Rota-Baxter-twisted multiplications
/// `<m>_bl : (x, y) -> m(b x, y)` and `<m>_br : (x, y) -> m(x, b y)`.
pub fn dual_derived_products(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let op = a.require_role(OperatorRole::RotaBaxter)?.clone();
    build_twisted(a, &op, "_bl", "_br")
}

fn build_twisted(
    a: &FiniteAlgebra,
    op: &UnaryOperator,
    left_suffix: &str,
    right_suffix: &str,
) -> Result<FiniteAlgebra> {
    let n = a.dim();
    let left = derived_product_tensors(a, |p, i, j| {
        a.mul(p, &op.matrix.row(i).to_vec(), &a.basis_vec(j))
    });
    let right = derived_product_tensors(a, |p, i, j| {
        a.mul(p, &a.basis_vec(i), &op.matrix.row(j).to_vec())
    });
    let mut products = Vec::with_capacity(2 * a.products.len());
    for (p, tensor) in left.into_iter().enumerate() {
        products.push(Product::new(
            &format!("{}{}", a.products[p].name, left_suffix),
            n,
            tensor,
        ));
    }
    for (p, tensor) in right.into_iter().enumerate() {
        products.push(Product::new(
            &format!("{}{}", a.products[p].name, right_suffix),
            n,
            tensor,
        ));
    }
    FiniteAlgebra::new(
        &a.name.to_string(),
        a.basis.clone(),
        a.degrees.clone(),
        products,
        None,
    )
}

/// Algebra with the commutator multiplications
/// `<m>_cm : (x, y) -> m(b x, y) + m(x, b y)`.
pub fn commutator_products(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let op = a.require_role(OperatorRole::RotaBaxter)?.clone();
    let n = a.dim();
    let tensors = derived_product_tensors(a, |p, i, j| {
        let mut v = a.mul(p, &op.matrix.row(i).to_vec(), &a.basis_vec(j));
        let right = a.mul(p, &a.basis_vec(i), &op.matrix.row(j).to_vec());
        vec_add_scaled(&mut v, &right, &rat(1));
        v
    });
    let products = tensors
        .into_iter()
        .enumerate()
        .map(|(p, t)| Product::new(&format!("{}_cm", a.products[p].name), n, t))
        .collect();
    FiniteAlgebra::new(&a.name, a.basis.clone(), a.degrees.clone(), products, None)
}

/// How a generator acts on the algebra: a named multiplication, or the
/// graded flip of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignedProduct {
    Named(String),
    Flip(String),
}

pub type Assignment = Vec<AssignedProduct>;

/// Positional assignment for a plain presentation: primary generators
/// take the products in order, free-pair partners the graded flip of
/// their primary's product.
pub fn default_assignment(space: &GeneratorSpace, products: &[String]) -> Result<Assignment> {
    let primaries: Vec<usize> = (0..space.dim())
        .filter(|&i| space.generators()[i].is_primary())
        .collect();
    if primaries.len() != products.len() {
        return Err(Error::IncompatibleAssignment(format!(
            "{} primary generators but {} products",
            primaries.len(),
            products.len()
        )));
    }
    let mut out = vec![None; space.dim()];
    for (k, &i) in primaries.iter().enumerate() {
        out[i] = Some(AssignedProduct::Named(products[k].clone()));
    }
    for i in 0..space.dim() {
        let g = &space.generators()[i];
        if g.is_free_partner() {
            let primary = g.partner().unwrap();
            let k = primaries.iter().position(|&x| x == primary).unwrap();
            out[i] = Some(AssignedProduct::Flip(products[k].clone()));
        }
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

/// Assignment for a tensor-shaped presentation built on `base` (slot
/// major: the first-slot primary block before the partner block): the
/// left product family goes to the primary slot, the right family to
/// the partner slot, and base free-pair partners flip across the
/// families.
pub fn construction_assignment(
    base: &GeneratorSpace,
    left: &[String],
    right: &[String],
) -> Result<Assignment> {
    let primaries: Vec<usize> = (0..base.dim())
        .filter(|&i| base.generators()[i].is_primary())
        .collect();
    if primaries.len() != left.len() || primaries.len() != right.len() {
        return Err(Error::IncompatibleAssignment(format!(
            "{} primary generators but {} left / {} right products",
            primaries.len(),
            left.len(),
            right.len()
        )));
    }
    let pidx = |h: usize| primaries.iter().position(|&x| x == h).unwrap();
    let mut out = Vec::with_capacity(2 * base.dim());
    for slot in 0..2 {
        for h in 0..base.dim() {
            let g = &base.generators()[h];
            let (h0, flipped) = match g.partner() {
                Some(p) if g.is_free_partner() => (p, true),
                _ => (h, false),
            };
            let k = pidx(h0);
            let entry = match (slot, flipped) {
                (0, false) => AssignedProduct::Named(left[k].clone()),
                (0, true) => AssignedProduct::Flip(right[k].clone()),
                (_, false) => AssignedProduct::Named(right[k].clone()),
                (_, true) => AssignedProduct::Flip(left[k].clone()),
            };
            out.push(entry);
        }
    }
    Ok(out)
}

/// Failure record: a relation (or generator symmetry) id together with
/// the offending basis tuples, in deterministic order.
#[derive(Clone, Debug)]
pub struct RelationFailure {
    pub id: String,
    pub counterexamples: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub failures: Vec<RelationFailure>,
    pub relations_checked: usize,
    pub triples_checked: usize,
}

impl RelationReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for RelationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            write!(
                f,
                "all {} relations hold on {} basis triples",
                self.relations_checked, self.triples_checked
            )
        } else {
            writeln!(f, "{} relation(s) violated:", self.failures.len())?;
            for fail in &self.failures {
                writeln!(
                    f,
                    "  {} — {} counterexample(s), first {:?}",
                    fail.id,
                    fail.counterexamples.len(),
                    fail.counterexamples.first()
                )?;
            }
            Ok(())
        }
    }
}

struct RepTable {
    tensor: Vec<Rat>,
    n: usize,
}

impl RepTable {
    fn coeffs(&self, i: usize, j: usize) -> &[Rat] {
        &self.tensor[(i * self.n + j) * self.n..(i * self.n + j) * self.n + self.n]
    }
}

fn build_rep(a: &FiniteAlgebra, assigned: &AssignedProduct) -> Result<RepTable> {
    let n = a.dim();
    let (name, flipped) = match assigned {
        AssignedProduct::Named(s) => (s, false),
        AssignedProduct::Flip(s) => (s, true),
    };
    let p = a
        .product_index(name)
        .ok_or_else(|| Error::IncompatibleAssignment(format!("unknown product {name}")))?;
    let mut tensor = vec![Rat::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let src = if flipped {
                a.products[p].coeffs(n, j, i)
            } else {
                a.products[p].coeffs(n, i, j)
            };
            let sign = if flipped && a.degrees[i] % 2 != 0 && a.degrees[j] % 2 != 0 {
                rat(-1)
            } else {
                rat(1)
            };
            for (k, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    tensor[(i * n + j) * n + k] = c * &sign;
                }
            }
        }
    }
    Ok(RepTable { tensor, n })
}

/// Koszul sign of rearranging three graded arguments into the order of
/// a cyclic label.
fn koszul_sign(label: [usize; 3], degs: [i64; 3]) -> Rat {
    let d = |i: usize| degs[i - 1];
    match label {
        [1, 2, 3] => rat(1),
        // x3 moves in front of x1 x2
        [3, 1, 2] => {
            if d(3) % 2 != 0 && (d(1) + d(2)) % 2 != 0 {
                rat(-1)
            } else {
                rat(1)
            }
        }
        // x1 moves behind x2 x3
        [2, 3, 1] => {
            if d(1) % 2 != 0 && (d(2) + d(3)) % 2 != 0 {
                rat(-1)
            } else {
                rat(1)
            }
        }
        _ => unreachable!("cyclic labels only"),
    }
}

/// Evaluates every relation of `p` on every triple of basis elements
/// of `a`, with Koszul signs from the grading.  Generator symmetries
/// are checked first and reported like relations.
pub fn check_presentation(
    a: &FiniteAlgebra,
    p: &QuadraticPresentation,
    assignment: &Assignment,
) -> Result<RelationReport> {
    let e = p.space();
    if assignment.len() != e.dim() {
        return Err(Error::IncompatibleAssignment(format!(
            "{} generators but {} assignments",
            e.dim(),
            assignment.len()
        )));
    }
    let n = a.dim();
    let reps: Vec<RepTable> = assignment
        .iter()
        .map(|asg| build_rep(a, asg))
        .collect::<Result<_>>()?;

    let mut report = RelationReport::default();

    // Generator symmetry: rep(g . (12)) must be the graded flip of
    // rep(g) on every basis pair.
    for g in 0..e.dim() {
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut moved = vec![Rat::zero(); n];
                for (gp, c) in e.apply12(g) {
                    vec_add_scaled(&mut moved, reps[gp].coeffs(i, j), &c);
                }
                let sign = if a.degrees[i] % 2 != 0 && a.degrees[j] % 2 != 0 {
                    rat(-1)
                } else {
                    rat(1)
                };
                let mut flipped = vec![Rat::zero(); n];
                vec_add_scaled(&mut flipped, reps[g].coeffs(j, i), &sign);
                if moved != flipped {
                    bad.push(vec![a.basis[i].clone(), a.basis[j].clone()]);
                }
            }
        }
        if !bad.is_empty() {
            report.failures.push(RelationFailure {
                id: format!("symmetry:{}", e.name(g)),
                counterexamples: bad,
            });
        }
    }

    // Composite tables rep_a(rep_b(x, y), z), built lazily per pair.
    let mut composites: Vec<Option<Vec<Rat>>> = vec![None; e.dim() * e.dim()];
    let mut composite = |outer: usize, inner: usize, reps: &Vec<RepTable>| -> Vec<Rat> {
        let key = outer * e.dim() + inner;
        if let Some(t) = &composites[key] {
            return t.clone();
        }
        let mut t = vec![Rat::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                let w = reps[inner].coeffs(i, j);
                for k in 0..n {
                    let off = ((i * n + j) * n + k) * n;
                    for (l, c) in w.iter().enumerate() {
                        if !c.is_zero() {
                            vec_add_scaled(
                                &mut t[off..off + n],
                                reps[outer].coeffs(l, k),
                                c,
                            );
                        }
                    }
                }
            }
        }
        composites[key] = Some(t.clone());
        t
    };

    for (ri, row) in p.relations().basis_rows().into_iter().enumerate() {
        let support: Vec<(usize, usize, [usize; 3], Rat)> = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let (outer, inner, l) = w2_decode(e, idx);
                (outer, inner, l.triple(), c.clone())
            })
            .collect();
        let tables: Vec<(usize, usize, [usize; 3], Rat, Vec<Rat>)> = support
            .into_iter()
            .map(|(o, i, l, c)| {
                let t = composite(o, i, &reps);
                (o, i, l, c, t)
            })
            .collect();
        let mut bad = Vec::new();
        for v1 in 0..n {
            for v2 in 0..n {
                for v3 in 0..n {
                    let args = [v1, v2, v3];
                    let degs = [a.degrees[v1], a.degrees[v2], a.degrees[v3]];
                    let mut acc = vec![Rat::zero(); n];
                    for (_, _, l, c, t) in &tables {
                        let sign = koszul_sign(*l, degs);
                        let (i, j, k) = (args[l[0] - 1], args[l[1] - 1], args[l[2] - 1]);
                        let off = ((i * n + j) * n + k) * n;
                        let coeff = c * &sign;
                        vec_add_scaled(&mut acc, &t[off..off + n], &coeff);
                    }
                    if !acc.iter().all(|x| x.is_zero()) {
                        bad.push(vec![
                            a.basis[v1].clone(),
                            a.basis[v2].clone(),
                            a.basis[v3].clone(),
                        ]);
                    }
                    report.triples_checked += 1;
                }
            }
        }
        report.relations_checked += 1;
        if !bad.is_empty() {
            report.failures.push(RelationFailure {
                id: format!("relation {}: {}", ri, w2_render(e, &row)),
                counterexamples: bad,
            });
        }
    }
    Ok(report)
}

/// Builds the commutators of the Rota-Baxter twists and checks the
/// original presentation on them.
pub fn commutator_check(
    a: &FiniteAlgebra,
    p: &QuadraticPresentation,
) -> Result<RelationReport> {
    let c = commutator_products(a)?;
    let assignment = default_assignment(p.space(), &c.product_names())?;
    check_presentation(&c, p, &assignment)
}

/// Restricts the derived brackets to the span of a sub-basis that is a
/// trivial subalgebra, and checks the original presentation there.
pub fn verify_abelian_restriction(
    a: &FiniteAlgebra,
    p: &QuadraticPresentation,
    sub: &[usize],
) -> Result<RelationReport> {
    let n = a.dim();
    for &i in sub {
        if i >= n {
            return Err(Error::DimensionMismatch(format!(
                "sub-basis index {i} out of range"
            )));
        }
    }
    // The sub-basis must span a trivial subalgebra.
    for (pi, prod) in a.products.iter().enumerate() {
        let _ = pi;
        for &i in sub {
            for &j in sub {
                if !prod.coeffs(n, i, j).iter().all(|c| c.is_zero()) {
                    return Err(Error::NotTrivial(format!(
                        "{}({}, {}) is nonzero",
                        prod.name, a.basis[i], a.basis[j]
                    )));
                }
            }
        }
    }
    let derived = derived_brackets(a)?;
    // The shifted span must be closed under every derived bracket.
    for prod in derived.products() {
        for &i in sub {
            for &j in sub {
                let v = prod.coeffs(n, i, j);
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() && !sub.contains(&k) {
                        return Err(Error::NotClosed(format!(
                            "{}({}, {}) has a component outside the span ({})",
                            prod.name, derived.basis[i], derived.basis[j], derived.basis[k]
                        )));
                    }
                }
            }
        }
    }
    // Restricted algebra carrying only the left derived family.
    let m = sub.len();
    let mut products = Vec::new();
    for (pi, prod) in derived.products.iter().enumerate() {
        if pi >= a.products.len() {
            break; // right family
        }
        let mut tensor = Vec::with_capacity(m * m * m);
        for &i in sub {
            for &j in sub {
                let full = prod.coeffs(n, i, j);
                for &k in sub {
                    tensor.push(full[k].clone());
                }
            }
        }
        products.push(Product::new(&prod.name, m, tensor));
    }
    let restricted = FiniteAlgebra::new(
        &format!("{}|sub", derived.name),
        sub.iter().map(|&i| derived.basis[i].clone()).collect(),
        sub.iter().map(|&i| derived.degrees[i]).collect(),
        products,
        None,
    )?;
    let assignment = default_assignment(p.space(), &restricted.product_names())?;
    check_presentation(&restricted, p, &assignment)
}

// ---------------------------------------------------------------------
// Built-in examples.

/// The two-dimensional nonabelian Lie algebra: [e, f] = e.
pub fn nonabelian_lie2() -> FiniteAlgebra {
    let br = Product::from_entries(
        "br",
        2,
        &[(0, 1, 0, rat(1)), (1, 0, 0, rat(-1))],
    );
    FiniteAlgebra::new(
        "lie2",
        vec!["e".into(), "f".into()],
        vec![0, 0],
        vec![br],
        None,
    )
    .expect("nonabelian lie2 is valid")
}

/// Truncated polynomials with the integration operator: basis
/// `1, t, ..., t^(n-1)` with `t^n = 0` and `b(t^k) = t^(k+1)/(k+1)`.
pub fn truncated_poly(n: usize) -> FiniteAlgebra {
    assert!(n >= 2);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                entries.push((i, j, i + j, rat(1)));
            }
        }
    }
    let pr = Product::from_entries("pr", n, &entries);
    let mut beta = QMatrix::zeros(n, n);
    for k in 0..n - 1 {
        beta.set(k, k + 1, Rat::new(1.into(), ((k + 1) as i64).into()));
    }
    FiniteAlgebra::new(
        &format!("kt{n}"),
        (0..n).map(|k| format!("t{k}")).collect(),
        vec![0; n],
        vec![pr],
        Some(UnaryOperator {
            name: "int".into(),
            role: OperatorRole::RotaBaxter,
            degree: 0,
            matrix: beta,
        }),
    )
    .expect("truncated polynomial algebra is valid")
}

/// Differential forms of the truncated polynomials: functions
/// `t0..t(n-1)` in degree 0 and forms `t0dt..t(n-2)dt` in degree 1.
/// The form module is truncated one step earlier than the functions —
/// `d` of the discarded top power has to vanish for the derivation
/// rule to survive the truncation.
pub fn de_rham(n: usize) -> FiniteAlgebra {
    assert!(n >= 2);
    let nf = n - 1;
    let dim = n + nf;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                entries.push((i, j, i + j, rat(1)));
            }
        }
        for j in 0..nf {
            if i + j < nf {
                entries.push((i, n + j, n + i + j, rat(1)));
                entries.push((n + j, i, n + i + j, rat(1)));
            }
        }
    }
    let pr = Product::from_entries("pr", dim, &entries);
    let mut d = QMatrix::zeros(dim, dim);
    for k in 1..n {
        if k - 1 < nf {
            d.set(k, n + k - 1, rat(k as i64));
        }
    }
    let mut basis: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
    basis.extend((0..nf).map(|k| format!("t{k}dt")));
    let mut degrees = vec![0i64; n];
    degrees.extend(vec![1i64; nf]);
    FiniteAlgebra::new(
        &format!("omega{n}"),
        basis,
        degrees,
        vec![pr],
        Some(UnaryOperator {
            name: "d".into(),
            role: OperatorRole::Differential,
            degree: 1,
            matrix: d,
        }),
    )
    .expect("truncated de Rham algebra is valid")
}

/// The differential graded Lie algebra `lie2 (x) de_rham(n)`.  Basis
/// elements are `g_w` for `g` in `{e, f}` and `w` a form basis element;
/// the bracket is `[x (x) w, y (x) u] = [x, y] (x) w u` and the
/// differential acts on the form factor.
pub fn dg_lie(n: usize) -> FiniteAlgebra {
    let g = nonabelian_lie2();
    let omega = de_rham(n);
    let (gd, od) = (g.dim(), omega.dim());
    let dim = gd * od;
    let idx = |a: usize, w: usize| a * od + w;
    let mut entries = Vec::new();
    for a in 0..gd {
        for b in 0..gd {
            let gc = g.products()[0].coeffs(gd, a, b);
            for w in 0..od {
                for u in 0..od {
                    let oc = omega.products()[0].coeffs(od, w, u);
                    for (c, cc) in gc.iter().enumerate() {
                        if cc.is_zero() {
                            continue;
                        }
                        for (v, vc) in oc.iter().enumerate() {
                            if !vc.is_zero() {
                                entries.push((idx(a, w), idx(b, u), idx(c, v), cc * vc));
                            }
                        }
                    }
                }
            }
        }
    }
    let br = Product::from_entries("br", dim, &entries);
    let dw = &omega.operator().unwrap().matrix;
    let mut d = QMatrix::zeros(dim, dim);
    for a in 0..gd {
        for w in 0..od {
            for u in 0..od {
                let c = dw.at(w, u);
                if !c.is_zero() {
                    d.set(idx(a, w), idx(a, u), c.clone());
                }
            }
        }
    }
    let mut basis = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for a in 0..gd {
        for w in 0..od {
            basis.push(format!("{}_{}", g.basis_names()[a], omega.basis_names()[w]));
            degrees.push(omega.degrees()[w]);
        }
    }
    FiniteAlgebra::new(
        &format!("dglie{n}"),
        basis,
        degrees,
        vec![br],
        Some(UnaryOperator {
            name: "d".into(),
            role: OperatorRole::Differential,
            degree: 1,
            matrix: d,
        }),
    )
    .expect("dg Lie algebra is valid")
}

/// `K[t]/(t^2)` with the averaging operator projecting onto the span
/// of the unit.
pub fn kt2_projection_averaging() -> FiniteAlgebra {
    let pr = Product::from_entries(
        "pr",
        2,
        &[(0, 0, 0, rat(1)), (0, 1, 1, rat(1)), (1, 0, 1, rat(1))],
    );
    let mut alpha = QMatrix::zeros(2, 2);
    alpha.set(0, 0, rat(1));
    FiniteAlgebra::new(
        "kt2",
        vec!["u".into(), "t".into()],
        vec![0, 0],
        vec![pr],
        Some(UnaryOperator {
            name: "proj".into(),
            role: OperatorRole::Averaging,
            degree: 0,
            matrix: alpha,
        }),
    )
    .expect("projection averaging algebra is valid")
}
