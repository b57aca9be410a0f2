//! Multiplicative-additive structure on polytope spaces.

use crate::error::Result;
use crate::guard::{check, Guards};
use crate::index::IndexSet;
use crate::polar::{canonicalize, polar_vertices_capped};
use crate::rational::one;
use crate::seq::{outer, Sequence};
use crate::space::PolytopeSpace;

pub fn dual(a: &PolytopeSpace) -> PolytopeSpace {
    a.dual()
}

/// The one-point self-dual space.
pub fn unit() -> PolytopeSpace {
    let g = vec![Sequence(vec![one()])];
    PolytopeSpace::from_parts(IndexSet::unit(), g.clone(), g, "1")
}

/// The space on the empty index set.
pub fn zero() -> PolytopeSpace {
    let g = vec![Sequence(vec![])];
    PolytopeSpace::from_parts(IndexSet::empty(), g.clone(), g, "0")
}

fn concat(a: &Sequence, b: &Sequence) -> Sequence {
    Sequence(a.entries().iter().chain(b.entries()).cloned().collect())
}

/// `A × B`: norm `max(‖u‖, ‖v‖)`.
pub fn product(a: &PolytopeSpace, b: &PolytopeSpace, guards: &Guards) -> Result<PolytopeSpace> {
    check("polar_vertices", a.p().len() * b.p().len(), guards.polar_vertices)?;
    let index = IndexSet::disjoint_union(a.index(), b.index());
    let p = a.p().iter().flat_map(|x| b.p().iter().map(move |y| concat(x, y))).collect();
    let (za, zb) = (Sequence::zeros(a.dim()), Sequence::zeros(b.dim()));
    let q = a
        .q()
        .iter()
        .map(|x| concat(x, &zb))
        .chain(b.q().iter().map(|y| concat(&za, y)))
        .filter(|g| !(g.is_zero() && !index.is_empty()))
        .collect::<Vec<_>>();
    let q = if q.is_empty() { vec![Sequence(vec![])] } else { q };
    Ok(PolytopeSpace::from_parts(index, p, q, format!("({} & {})", a.name, b.name)))
}

/// `A ⊕ B = (A* × B*)*`: norm `‖u‖ + ‖v‖`.
pub fn coproduct(a: &PolytopeSpace, b: &PolytopeSpace, guards: &Guards) -> Result<PolytopeSpace> {
    let mut s = product(&a.dual(), &b.dual(), guards)?.dual();
    s.name = format!("({} + {})", a.name, b.name);
    Ok(s)
}

fn outer_set(xs: &[Sequence], ys: &[Sequence], guards: &Guards) -> Result<Vec<Sequence>> {
    check("polar_vertices", xs.len() * ys.len(), guards.polar_vertices)?;
    let v: Vec<Sequence> = xs.iter().flat_map(|x| ys.iter().map(move |y| outer(x, y))).collect();
    canonicalize(&v)
}

/// Space on `I × J` whose dual ball is generated by `gens`.
fn from_closed_q(index: IndexSet, gens: Vec<Sequence>, guards: &Guards, name: String) -> Result<PolytopeSpace> {
    check("index_size", index.len(), guards.index_size)?;
    if index.is_empty() {
        let mut z = zero();
        z.name = name;
        return Ok(z);
    }
    let p = polar_vertices_capped(&gens, index.len(), guards.polar_vertices)?;
    Ok(PolytopeSpace::from_parts(index, p, gens, name))
}

/// `A ⊸ B`, indexed by `I × J` in the row-major order of [`crate::MatrixRep`].
pub fn hom(a: &PolytopeSpace, b: &PolytopeSpace, guards: &Guards) -> Result<PolytopeSpace> {
    let index = IndexSet::product(a.index(), b.index());
    let q = if index.is_empty() {
        vec![]
    } else {
        outer_set(a.p(), b.q(), guards)?
    };
    from_closed_q(index, q, guards, format!("({} -o {})", a.name, b.name))
}

/// `A ⊗ B`, ball generated by `p ⊗ p'`.
pub fn tensor(a: &PolytopeSpace, b: &PolytopeSpace, guards: &Guards) -> Result<PolytopeSpace> {
    let index = IndexSet::product(a.index(), b.index());
    let p = if index.is_empty() {
        vec![]
    } else {
        outer_set(a.p(), b.p(), guards)?
    };
    let mut s = from_closed_q(index, p, guards, String::new())?.dual();
    s.name = format!("({} * {})", a.name, b.name);
    Ok(s)
}

/// `A ⅋ B = (A* ⊗ B*)*`.
pub fn cotensor(a: &PolytopeSpace, b: &PolytopeSpace, guards: &Guards) -> Result<PolytopeSpace> {
    let mut s = tensor(&a.dual(), &b.dual(), guards)?.dual();
    s.name = format!("({} | {})", a.name, b.name);
    Ok(s)
}
