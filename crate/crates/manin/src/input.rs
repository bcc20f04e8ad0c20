//! Line-oriented text format for presentations and algebras.
//!
//! Presentation documents:
//!
//! ```text
//! operad lie
//! gen br antisym
//! rel br(x1,br(x2,x3)) - br(br(x1,x2),x3) - br(x2,br(x1,x3))
//! ```
//!
//! A `free` generator declaration implicitly declares the partner
//! `<name>^op`.  Relation lines are orbit representatives; the stored
//! relation space is their S3-span.  Coefficients are integers or
//! `p/q` fractions, attached with `*`.
//!
//! Algebra documents:
//!
//! ```text
//! algebra kt4
//! element t0 0
//! element t1 0
//! product pr
//! mul pr t0 t0 = t0
//! mul pr t0 t1 = t1
//! operator int rota-baxter 0
//! opmap int t0 = t1
//! ```
//!
//! Unlisted products and operator images are zero.  `#` starts a
//! comment.

use crate::algebra::{FiniteAlgebra, OperatorRole, Product, UnaryOperator};
use crate::presentation::{transport_relations, QuadraticPresentation};
use crate::weight2::{s3_span, w2_render, GeneratorSpace, SymmetryTag, Tree3, Weight2Vector};
use crate::{rat, Error, QMatrix, Rat, Result};
use num_traits::Zero;

struct Cursor<'a> {
    line: &'a str,
    lineno: usize,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a str, lineno: usize) -> Self {
        Cursor { line, lineno, pos: 0 }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.lineno,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.line[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of line"))),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    /// Whitespace-delimited word, for keyword-like tokens.
    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a word, found end of line"));
        }
        Ok(self.line[start..self.pos].to_string())
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            Some(c) => return Err(self.error(format!("expected a name, found '{c}'"))),
            None => return Err(self.error("expected a name, found end of line")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '^')
        {
            self.bump();
        }
        Ok(self.line[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let numer: i64 = self.line[start..self.pos]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        if self.peek() == Some('/') {
            self.bump();
            let dstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if dstart == self.pos {
                return Err(self.error("expected a denominator"));
            }
            let denom: i64 = self.line[dstart..self.pos]
                .parse()
                .map_err(|_| self.error("number out of range"))?;
            if denom == 0 {
                return Err(self.error("zero denominator"));
            }
            Ok(Rat::new(numer.into(), denom.into()))
        } else {
            Ok(rat(numer))
        }
    }
}

fn gen_index(space: &GeneratorSpace, name: &str, cur: &Cursor) -> Result<usize> {
    (0..space.dim())
        .find(|&i| space.name(i) == name)
        .ok_or_else(|| cur.error(format!("unknown generator '{name}'")))
}

/// Leaf token `x1`, `x2`, `x3`.
fn leaf(cur: &mut Cursor) -> Result<usize> {
    let name = cur.ident()?;
    match name.as_str() {
        "x1" => Ok(1),
        "x2" => Ok(2),
        "x3" => Ok(3),
        other => Err(cur.error(format!("expected a leaf x1, x2 or x3, found '{other}'"))),
    }
}

/// `g(g'(xA,xB),xC)` or `g(xA,g'(xB,xC))`.
fn monomial(cur: &mut Cursor, space: &GeneratorSpace) -> Result<Tree3> {
    let outer_name = cur.ident()?;
    let outer = gen_index(space, &outer_name, cur)?;
    cur.expect('(')?;
    cur.skip_ws();
    // Leaf first means a right comb, generator first a left comb.
    let rest = &cur.line[cur.pos..];
    let leaf_first = ["x1", "x2", "x3"]
        .iter()
        .any(|l| rest.starts_with(l) && !rest[l.len()..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_' || c == '^'));
    let tree = if leaf_first {
        let a = leaf(cur)?;
        cur.expect(',')?;
        let inner_name = cur.ident()?;
        let inner = gen_index(space, &inner_name, cur)?;
        cur.expect('(')?;
        let b = leaf(cur)?;
        cur.expect(',')?;
        let c = leaf(cur)?;
        cur.expect(')')?;
        Tree3::right(outer, inner, [a, b, c])
    } else {
        let inner_name = cur.ident()?;
        let inner = gen_index(space, &inner_name, cur)?;
        cur.expect('(')?;
        let a = leaf(cur)?;
        cur.expect(',')?;
        let b = leaf(cur)?;
        cur.expect(')')?;
        cur.expect(',')?;
        let c = leaf(cur)?;
        Tree3::left(outer, inner, [a, b, c])
    };
    cur.expect(')')?;
    Ok(tree)
}

/// `[rat *] mono ((+|-) [rat *] mono)*`, with an optional leading sign.
fn relation_terms(cur: &mut Cursor, space: &GeneratorSpace) -> Result<Vec<(Rat, Tree3)>> {
    let mut terms = Vec::new();
    let mut sign = rat(1);
    cur.skip_ws();
    if cur.peek() == Some('-') {
        cur.bump();
        sign = rat(-1);
    } else if cur.peek() == Some('+') {
        cur.bump();
    }
    loop {
        cur.skip_ws();
        let coeff = if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let c = cur.number()?;
            cur.expect('*')?;
            c
        } else {
            rat(1)
        };
        let tree = monomial(cur, space)?;
        terms.push((sign.clone() * coeff, tree));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                sign = rat(1);
            }
            Some('-') => {
                cur.bump();
                sign = rat(-1);
            }
            Some(c) => return Err(cur.error(format!("expected '+', '-' or end of line, found '{c}'"))),
        }
    }
    Ok(terms)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a presentation document.
pub fn parse_presentation(text: &str) -> Result<QuadraticPresentation> {
    let mut name: Option<String> = None;
    let mut decls: Vec<(String, SymmetryTag)> = Vec::new();
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, lineno + 1);
        let keyword = cur.ident()?;
        match keyword.as_str() {
            "operad" => {
                name = Some(cur.ident()?);
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing input"));
                }
            }
            "gen" => {
                let gname = cur.ident()?;
                let tag = match cur.ident()?.as_str() {
                    "sym" => SymmetryTag::Symmetric,
                    "antisym" => SymmetryTag::Antisymmetric,
                    "free" => SymmetryTag::FreePair,
                    other => {
                        return Err(cur.error(format!(
                            "expected sym, antisym or free, found '{other}'"
                        )))
                    }
                };
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing input"));
                }
                decls.push((gname, tag));
            }
            "rel" => {
                rel_lines.push((lineno + 1, cur.line[cur.pos..].to_string()));
            }
            other => {
                return Err(cur.error(format!(
                    "expected operad, gen or rel, found '{other}'"
                )))
            }
        }
    }
    let name = name.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'operad <name>' line".into(),
    })?;
    let borrowed: Vec<(&str, SymmetryTag)> = decls.iter().map(|(s, t)| (s.as_str(), *t)).collect();
    let space = GeneratorSpace::new(&borrowed);
    let mut vectors = Vec::new();
    for (lineno, body) in &rel_lines {
        let mut cur = Cursor::new(body, *lineno);
        // Column offsets are relative to the relation body.
        let terms = relation_terms(&mut cur, &space)?;
        vectors.push(Weight2Vector::combine(&space, &terms)?);
    }
    let relations = s3_span(&vectors, &space);
    QuadraticPresentation::new(&name, space, relations)
}

/// Renders a presentation as a reparsable document.  Generators print
/// in primary order (free partners are implicit), and a free pair
/// whose transposition carries a sign is re-based so that the printed
/// pair is a plain one.
pub fn presentation_document(p: &QuadraticPresentation) -> String {
    let space = p.space();
    let d = space.dim();
    let primaries: Vec<usize> = (0..d)
        .filter(|&i| space.generators()[i].is_primary())
        .collect();
    let mut decls: Vec<(String, SymmetryTag)> = Vec::new();
    let mut doc_pos = vec![0usize; d];
    let mut next = 0usize;
    for &i in &primaries {
        let g = &space.generators()[i];
        decls.push((sanitize_name(&g.name, &decls), g.tag()));
        doc_pos[i] = next;
        next += match g.tag() {
            SymmetryTag::FreePair => 2,
            _ => 1,
        };
    }
    let borrowed: Vec<(&str, SymmetryTag)> = decls.iter().map(|(s, t)| (s.as_str(), *t)).collect();
    let doc_space = GeneratorSpace::new(&borrowed);
    // Map original coordinates onto the document space; a twisted pair
    // re-bases by the sign of its transposition.
    let mut t = QMatrix::zeros(d, doc_space.dim());
    for &i in &primaries {
        t.set(i, doc_pos[i], rat(1));
    }
    for i in 0..d {
        let g = &space.generators()[i];
        if g.is_free_partner() {
            let primary = g.partner().unwrap();
            let twist = space.action12().at(i, primary).clone();
            t.set(i, doc_pos[primary] + 1, twist);
        }
    }
    let relations = transport_relations(&t, space, &doc_space, p.relations());
    let mut out = format!("operad {}\n", p.name);
    for (name, tag) in &decls {
        let tag = match tag {
            SymmetryTag::Symmetric => "sym",
            SymmetryTag::Antisymmetric => "antisym",
            SymmetryTag::FreePair => "free",
        };
        out.push_str(&format!("gen {name} {tag}\n"));
    }
    for row in relations.basis_rows() {
        out.push_str(&format!("rel {}\n", w2_render(&doc_space, &row)));
    }
    out
}

/// Document generator names must be plain identifiers; tensor names
/// like `a@b` are rewritten.
fn sanitize_name(name: &str, taken: &[(String, SymmetryTag)]) -> String {
    let mut base: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '^' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if base.is_empty() || !base.chars().next().unwrap().is_ascii_alphabetic() {
        base.insert(0, 'g');
    }
    // The ^op suffix is reserved for partners.
    while base.ends_with("^op") {
        base.truncate(base.len() - 3);
    }
    let mut candidate = base.clone();
    let mut k = 0;
    while taken.iter().any(|(n, _)| n == &candidate) {
        k += 1;
        candidate = format!("{base}{k}");
    }
    candidate
}

/// `rat '*' name`, or a bare name.
fn combo(cur: &mut Cursor, names: &[String]) -> Result<Vec<Rat>> {
    let n = names.len();
    let mut out = vec![Rat::zero(); n];
    cur.skip_ws();
    if cur.peek() == Some('0') {
        let save = cur.pos;
        cur.bump();
        if cur.at_end() {
            return Ok(out);
        }
        cur.pos = save;
    }
    let mut sign = rat(1);
    if cur.peek() == Some('-') {
        cur.bump();
        sign = rat(-1);
    }
    loop {
        cur.skip_ws();
        let coeff = if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let c = cur.number()?;
            cur.expect('*')?;
            c
        } else {
            rat(1)
        };
        let name = cur.ident()?;
        let idx = names
            .iter()
            .position(|x| x == &name)
            .ok_or_else(|| cur.error(format!("unknown basis element '{name}'")))?;
        out[idx] += sign.clone() * coeff;
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                sign = rat(1);
            }
            Some('-') => {
                cur.bump();
                sign = rat(-1);
            }
            Some(c) => return Err(cur.error(format!("expected '+', '-' or end of line, found '{c}'"))),
        }
    }
    Ok(out)
}

/// Parses an algebra document; all construction-time operator checks
/// run on the result.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let mut name: Option<String> = None;
    let mut basis: Vec<String> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    let mut product_names: Vec<String> = Vec::new();
    let mut mul_lines: Vec<(usize, String)> = Vec::new();
    let mut operator: Option<(String, OperatorRole, i64)> = None;
    let mut opmap_lines: Vec<(usize, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, lineno + 1);
        let keyword = cur.ident()?;
        match keyword.as_str() {
            "algebra" => {
                name = Some(cur.ident()?);
            }
            "element" => {
                let ename = cur.ident()?;
                cur.skip_ws();
                let neg = cur.peek() == Some('-');
                if neg {
                    cur.bump();
                }
                let deg = cur.number()?;
                if !deg.is_integer() {
                    return Err(cur.error("degree must be an integer"));
                }
                let mut deg: i64 = deg.to_integer().try_into().map_err(|_| cur.error("degree out of range"))?;
                if neg {
                    deg = -deg;
                }
                basis.push(ename);
                degrees.push(deg);
            }
            "product" => {
                product_names.push(cur.ident()?);
            }
            "operator" => {
                let oname = cur.ident()?;
                let role = match cur.word()?.as_str() {
                    "differential" => OperatorRole::Differential,
                    "averaging" => OperatorRole::Averaging,
                    "rota-baxter" | "rota" => OperatorRole::RotaBaxter,
                    other => {
                        return Err(cur.error(format!(
                            "expected differential, averaging or rota-baxter, found '{other}'"
                        )))
                    }
                };
                cur.skip_ws();
                let neg = cur.peek() == Some('-');
                if neg {
                    cur.bump();
                }
                let deg = cur.number()?;
                let mut deg: i64 = deg.to_integer().try_into().map_err(|_| cur.error("degree out of range"))?;
                if neg {
                    deg = -deg;
                }
                operator = Some((oname, role, deg));
            }
            "mul" => mul_lines.push((lineno + 1, cur.line[cur.pos..].to_string())),
            "opmap" => opmap_lines.push((lineno + 1, cur.line[cur.pos..].to_string())),
            other => {
                return Err(cur.error(format!(
                    "expected algebra, element, product, operator, mul or opmap, found '{other}'"
                )))
            }
        }
    }
    let name = name.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'algebra <name>' line".into(),
    })?;
    let n = basis.len();
    let mut tensors: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n * n * n]; product_names.len()];
    for (lineno, body) in &mul_lines {
        let mut cur = Cursor::new(body, *lineno);
        let pname = cur.ident()?;
        let p = product_names
            .iter()
            .position(|x| x == &pname)
            .ok_or_else(|| cur.error(format!("unknown product '{pname}'")))?;
        let lname = cur.ident()?;
        let i = basis
            .iter()
            .position(|x| x == &lname)
            .ok_or_else(|| cur.error(format!("unknown basis element '{lname}'")))?;
        let rname = cur.ident()?;
        let j = basis
            .iter()
            .position(|x| x == &rname)
            .ok_or_else(|| cur.error(format!("unknown basis element '{rname}'")))?;
        cur.expect('=')?;
        let v = combo(&mut cur, &basis)?;
        for (k, c) in v.into_iter().enumerate() {
            tensors[p][(i * n + j) * n + k] = c;
        }
    }
    let products = product_names
        .iter()
        .zip(tensors)
        .map(|(pname, t)| Product::new(pname, n, t))
        .collect();
    let op = if let Some((oname, role, degree)) = operator {
        let mut matrix = QMatrix::zeros(n, n);
        for (lineno, body) in &opmap_lines {
            let mut cur = Cursor::new(body, *lineno);
            let o = cur.ident()?;
            if o != oname {
                return Err(cur.error(format!("unknown operator '{o}'")));
            }
            let ename = cur.ident()?;
            let i = basis
                .iter()
                .position(|x| x == &ename)
                .ok_or_else(|| cur.error(format!("unknown basis element '{ename}'")))?;
            cur.expect('=')?;
            let v = combo(&mut cur, &basis)?;
            for (k, c) in v.into_iter().enumerate() {
                matrix.set(i, k, c);
            }
        }
        Some(UnaryOperator {
            name: oname,
            role,
            degree,
            matrix,
        })
    } else {
        if let Some((lineno, _)) = opmap_lines.first() {
            return Err(Error::Parse {
                line: *lineno,
                col: 1,
                msg: "opmap without an operator declaration".into(),
            });
        }
        None
    };
    FiniteAlgebra::new(&name, basis, degrees, products, op)
}

fn render_combo(names: &[String], v: &[Rat]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = if c < &Rat::zero() { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if c < &Rat::zero() {
                out.push_str("-");
            }
        } else if c < &Rat::zero() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if abs == rat(1) {
            out.push_str(&names[k]);
        } else {
            out.push_str(&format!("{}*{}", abs, names[k]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders an algebra as a reparsable document (sparse: zero rows are
/// omitted).
pub fn algebra_document(a: &FiniteAlgebra) -> String {
    let n = a.dim();
    let names = a.basis_names().to_vec();
    let mut out = format!("algebra {}\n", a.name);
    for (b, d) in names.iter().zip(a.degrees()) {
        out.push_str(&format!("element {b} {d}\n"));
    }
    for p in a.products() {
        out.push_str(&format!("product {}\n", p.name));
    }
    for p in a.products() {
        for i in 0..n {
            for j in 0..n {
                let v = p.coeffs(n, i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    out.push_str(&format!(
                        "mul {} {} {} = {}\n",
                        p.name,
                        names[i],
                        names[j],
                        render_combo(&names, v)
                    ));
                }
            }
        }
    }
    if let Some(op) = a.operator() {
        out.push_str(&format!(
            "operator {} {} {}\n",
            op.name,
            op.role.as_str(),
            op.degree
        ));
        for i in 0..n {
            let row = op.matrix.row(i);
            if row.iter().any(|c| !c.is_zero()) {
                out.push_str(&format!(
                    "opmap {} {} = {}\n",
                    op.name,
                    names[i],
                    render_combo(&names, row)
                ));
            }
        }
    }
    out
}
