//! Elimination, quotients, saturation, intersection and syzygies.

use std::collections::VecDeque;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::{PolyRing, RingRef};

use super::engine::{Engine, MTerm, ModuleCtx, Truncation};
use super::{groebner, mvec_component, poly_to_mvec};

/// Generators of the syzygy module: each column `a` satisfies
/// `sum a_i f_i = 0` in the quotient ring.
#[derive(Clone, Debug)]
pub struct SyzygyMatrix<F: Field> {
    pub columns: Vec<Vec<Poly<F>>>,
}

impl<F: Field> SyzygyMatrix<F> {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }
}

fn ring_of<F: Field>(gens: &[Poly<F>]) -> Result<RingRef<F>> {
    Ok(gens.first().ok_or(Error::EmptyInput)?.ring().clone())
}

/// Generators of `ideal(gens) ∩ k[remaining vars]`, computed with a block
/// order whose first block holds `drop_vars`. Results live in the input ring.
pub fn eliminate<F: Field>(gens: &[Poly<F>], drop_vars: &[usize]) -> Result<Vec<Poly<F>>> {
    let gens: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let ring = ring_of(&gens)?;
    let n = ring.nvars();
    let keep: Vec<usize> = (0..n).filter(|i| !drop_vars.contains(i)).collect();
    let perm: Vec<usize> = drop_vars.iter().copied().chain(keep.iter().copied()).collect();
    // position of old variable i in the permuted ring
    let mut to_new = vec![0; n];
    for (newpos, &old) in perm.iter().enumerate() {
        to_new[old] = newpos;
    }
    let w = ring.weights();
    let wd: Vec<u32> = drop_vars.iter().map(|&i| w[i]).collect();
    let wk: Vec<u32> = keep.iter().map(|&i| w[i]).collect();
    let mut blocks = Vec::new();
    if !wd.is_empty() {
        blocks.push((wd.len(), MonomialOrder::weighted(wd)));
    }
    if !wk.is_empty() {
        blocks.push((wk.len(), MonomialOrder::weighted(wk)));
    }
    let names: Vec<String> = perm.iter().map(|&i| ring.names()[i].clone()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| w[i]).collect();
    let elim_ring = PolyRing::new(ring.field().clone(), names)
        .with_weights(weights)
        .with_order(MonomialOrder::block(blocks))
        .into_ref();
    let mapped: Vec<Poly<F>> = gens.iter().map(|g| g.remap(&elim_ring, &to_new)).collect();
    let gb = groebner(&elim_ring, &mapped);
    let nd = drop_vars.len();
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(_, m)| m.exps()[..nd].iter().all(|&e| e == 0)))
        .map(|g| g.remap(&ring, &perm).monic())
        .collect())
}

/// Assigns component shifts making the column vectors homogeneous when
/// possible; unconstrained or inconsistent components get shift 0.
fn infer_shifts<F: Field>(nrows: usize, columns: &[Vec<Poly<F>>]) -> Vec<i64> {
    let ncols = columns.len();
    let total = nrows + ncols;
    let mut shift: Vec<Option<i64>> = vec![None; total];
    // edges: (row r, col i, degree)
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); total];
    for (i, col) in columns.iter().enumerate() {
        for (r, p) in col.iter().enumerate() {
            if p.is_zero() || !p.is_homogeneous() {
                continue;
            }
            let d = p.weighted_degree().unwrap() as i64;
            // shift_row + d = shift_col
            adj[r].push((nrows + i, d));
            adj[nrows + i].push((r, -d));
        }
    }
    let mut consistent = true;
    for start in 0..total {
        if shift[start].is_some() {
            continue;
        }
        shift[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = shift[u].unwrap();
            for &(v, d) in &adj[u] {
                match shift[v] {
                    None => {
                        shift[v] = Some(su + d);
                        queue.push_back(v);
                    }
                    Some(sv) if sv != su + d => consistent = false,
                    _ => {}
                }
            }
        }
    }
    if !consistent {
        return vec![0; total];
    }
    let mut out: Vec<i64> = shift.into_iter().map(|s| s.unwrap()).collect();
    let min = out.iter().copied().min().unwrap_or(0);
    for s in out.iter_mut() {
        *s -= min;
    }
    out
}

/// Generators of `{ a in k[X]^c : sum_i a_i * columns[i] ∈ span(relations) }`
/// where columns and relations are vectors of length `nrows`.
pub(crate) fn syzygy_module<F: Field>(
    ring: &RingRef<F>,
    nrows: usize,
    columns: &[Vec<Poly<F>>],
    relations: &[Vec<Poly<F>>],
) -> Vec<Vec<Poly<F>>> {
    let ncols = columns.len();
    let f = ring.field();
    let shifts = infer_shifts(nrows, columns);
    let ctx = ModuleCtx::new(ring, nrows + ncols).with_shifts(shifts);
    let mut gens = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let mut terms: Vec<MTerm<F>> = Vec::new();
        for (r, p) in col.iter().enumerate() {
            terms.extend(poly_to_mvec(p, r as u32).terms);
        }
        terms.push(MTerm {
            c: f.one(),
            m: Monomial::one(ring.nvars()),
            comp: (nrows + i) as u32,
        });
        gens.push(ctx.canonicalize(terms));
    }
    for rel in relations {
        let mut terms: Vec<MTerm<F>> = Vec::new();
        for (r, p) in rel.iter().enumerate() {
            terms.extend(poly_to_mvec(p, r as u32).terms);
        }
        let v = ctx.canonicalize(terms);
        if !v.is_zero() {
            gens.push(v);
        }
    }
    let mut engine = Engine::new(ctx, gens);
    engine.run(Truncation::None);
    let basis = engine.reduced_basis();
    basis
        .iter()
        .filter(|v| v.lead().unwrap().comp as usize >= nrows)
        .map(|v| {
            (0..ncols)
                .map(|i| mvec_component(ring, v, (nrows + i) as u32))
                .collect()
        })
        .collect()
}

/// The first syzygies of `forms` over `k[X]/(modulo)`, entries reduced
/// modulo the relations; zero columns are dropped.
pub fn syzygies<F: Field>(forms: &[Poly<F>], modulo: &[Poly<F>]) -> Result<SyzygyMatrix<F>> {
    let ring = ring_of(forms)?;
    let columns: Vec<Vec<Poly<F>>> = forms.iter().map(|f| vec![f.clone()]).collect();
    let relations: Vec<Vec<Poly<F>>> = modulo.iter().filter(|g| !g.is_zero()).map(|g| vec![g.clone()]).collect();
    let cols = syzygy_module(&ring, 1, &columns, &relations);
    Ok(SyzygyMatrix {
        columns: reduce_columns(&ring, cols, modulo),
    })
}

/// Syzygies of vectors: all `a` with `sum a_i * columns[i] ≡ 0` modulo
/// `modulo` in every component. Entries are reduced modulo `modulo`.
pub fn syzygies_of_vectors<F: Field>(
    ring: &RingRef<F>,
    columns: &[Vec<Poly<F>>],
    modulo: &[Poly<F>],
) -> Result<Vec<Vec<Poly<F>>>> {
    let nrows = columns.first().ok_or(Error::EmptyInput)?.len();
    if columns.iter().any(|c| c.len() != nrows) {
        return Err(Error::Invalid("columns have different lengths".into()));
    }
    let mut relations = Vec::new();
    for g in modulo.iter().filter(|g| !g.is_zero()) {
        for r in 0..nrows {
            let mut v = vec![Poly::zero(ring); nrows];
            v[r] = g.clone();
            relations.push(v);
        }
    }
    let cols = syzygy_module(ring, nrows, columns, &relations);
    Ok(reduce_columns(ring, cols, modulo))
}

fn reduce_columns<F: Field>(ring: &RingRef<F>, cols: Vec<Vec<Poly<F>>>, modulo: &[Poly<F>]) -> Vec<Vec<Poly<F>>> {
    let gb = groebner(ring, modulo);
    cols.into_iter()
        .map(|c| c.iter().map(|p| gb.reduce(p)).collect::<Vec<_>>())
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .collect()
}

/// Generators of `(ideal : f)`.
pub fn ideal_quotient<F: Field>(ideal: &[Poly<F>], f: &Poly<F>) -> Result<Vec<Poly<F>>> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let ring = f.ring().clone();
    let ideal: Vec<Poly<F>> = ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
    if ideal.is_empty() {
        return Ok(Vec::new());
    }
    let relations: Vec<Vec<Poly<F>>> = ideal.iter().map(|g| vec![g.clone()]).collect();
    let cols = syzygy_module(&ring, 1, &[vec![f.clone()]], &relations);
    let gens: Vec<Poly<F>> = cols.into_iter().map(|mut c| c.remove(0)).collect();
    Ok(groebner(&ring, &gens).into_generators())
}

/// `(ideal : J) = ∩ (ideal : g)` over the generators `g` of `J`.
pub fn ideal_quotient_by_ideal<F: Field>(ideal: &[Poly<F>], j: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let mut acc: Option<Vec<Poly<F>>> = None;
    for g in j.iter().filter(|g| !g.is_zero()) {
        let q = ideal_quotient(ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    acc.ok_or(Error::ZeroDivisor)
}

/// Generators of `I ∩ J` (a reduced Gröbner basis).
pub fn intersect<F: Field>(i: &[Poly<F>], j: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let i: Vec<Poly<F>> = i.iter().filter(|g| !g.is_zero()).cloned().collect();
    let j: Vec<Poly<F>> = j.iter().filter(|g| !g.is_zero()).cloned().collect();
    if i.is_empty() || j.is_empty() {
        return Ok(Vec::new());
    }
    let ring = i[0].ring().clone();
    let zero = Poly::zero(&ring);
    let mut relations = Vec::new();
    for g in &i {
        relations.push(vec![g.clone(), zero.clone()]);
    }
    for h in &j {
        relations.push(vec![zero.clone(), h.clone()]);
    }
    let one = Poly::one(&ring);
    let cols = syzygy_module(&ring, 2, &[vec![one.clone(), one]], &relations);
    let gens: Vec<Poly<F>> = cols.into_iter().map(|mut c| c.remove(0)).collect();
    Ok(groebner(&ring, &gens).into_generators())
}

/// `I : x_var^∞` for a homogeneous ideal: a Gröbner basis in degree reverse
/// lexicographic order with `x_var` last, divided by the largest power of
/// `x_var` in each element.
pub fn saturate_by_variable<F: Field>(ideal: &[Poly<F>], var: usize) -> Result<Vec<Poly<F>>> {
    let ideal: Vec<Poly<F>> = ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
    if ideal.is_empty() {
        return Ok(Vec::new());
    }
    let ring = ideal[0].ring().clone();
    if !ideal.iter().all(|g| g.is_homogeneous()) {
        return saturate_iterated(&ideal, &Poly::var(&ring, var));
    }
    let n = ring.nvars();
    let perm: Vec<usize> = (0..n).filter(|&i| i != var).chain(std::iter::once(var)).collect();
    let mut to_new = vec![0; n];
    for (p, &old) in perm.iter().enumerate() {
        to_new[old] = p;
    }
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let names: Vec<String> = perm.iter().map(|&i| ring.names()[i].clone()).collect();
    let r2 = PolyRing::new(ring.field().clone(), names)
        .with_weights(weights.clone())
        .with_order(MonomialOrder::weighted(weights))
        .into_ref();
    let gb = groebner(&r2, &ideal.iter().map(|g| g.remap(&r2, &to_new)).collect::<Vec<_>>());
    let divided: Vec<Poly<F>> = gb
        .generators()
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|(_, m)| m.exp(n - 1)).min().unwrap();
            let mut e = vec![0u16; n];
            e[n - 1] = k;
            g.exact_div(&Poly::monomial(&r2, r2.field().one(), Monomial::from_exps(&e)))
                .expect("power of the last variable divides")
                .remap(&ring, &perm)
        })
        .collect();
    Ok(groebner(&ring, &divided).into_generators())
}

/// `I : f^∞`. For homogeneous input a new variable `w` of weight `deg f` is
/// adjoined with relation `w - f`, saturated by `w` in reverse-lex order with
/// `w` last, and substituted back; otherwise the quotient is iterated.
pub fn saturate_by_element<F: Field>(ideal: &[Poly<F>], f: &Poly<F>) -> Result<Vec<Poly<F>>> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let ring = f.ring().clone();
    let ideal: Vec<Poly<F>> = ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
    if ideal.is_empty() {
        return Ok(Vec::new());
    }
    if f.is_constant() {
        return Ok(groebner(&ring, &ideal).into_generators());
    }
    if f.len() == 1 && f.degree() == Some(1) {
        let var = f.support()[0];
        return saturate_by_variable(&ideal, var);
    }
    if !f.is_homogeneous() || !ideal.iter().all(|g| g.is_homogeneous()) {
        return saturate_iterated(&ideal, f);
    }
    let n = ring.nvars();
    let mut names = ring.names().to_vec();
    names.push(fresh_name(&names, "w"));
    let mut weights = ring.weights().to_vec();
    let wf = f.weighted_degree().unwrap();
    weights.push(u32::try_from(wf).map_err(|_| Error::Invalid("degree too large".into()))?);
    let r2 = PolyRing::new(ring.field().clone(), names)
        .with_weights(weights.clone())
        .with_order(MonomialOrder::weighted(weights))
        .into_ref();
    let embed: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Poly<F>> = ideal.iter().map(|g| g.remap(&r2, &embed)).collect();
    gens.push(Poly::var(&r2, n).sub(&f.remap(&r2, &embed)));
    let sat = saturate_by_variable(&gens, n)?;
    let mut images: Vec<Poly<F>> = (0..n).map(|i| Poly::var(&ring, i)).collect();
    images.push(f.clone());
    let back: Vec<Poly<F>> = sat.iter().map(|g| g.substitute(&images)).collect::<Result<_>>()?;
    Ok(groebner(&ring, &back).into_generators())
}

/// `I : f^∞` by iterating quotients until the ideal stabilizes.
pub fn saturate_iterated<F: Field>(ideal: &[Poly<F>], f: &Poly<F>) -> Result<Vec<Poly<F>>> {
    let ring = f.ring().clone();
    let mut cur = groebner(&ring, ideal).into_generators();
    loop {
        let next = ideal_quotient(&cur, f)?;
        if ideal_equal(&ring, &cur, &next) {
            return Ok(next);
        }
        cur = next;
    }
}

/// `I : J^∞`, the intersection of the saturations by the generators of `J`.
pub fn saturate<F: Field>(ideal: &[Poly<F>], j: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let mut acc: Option<Vec<Poly<F>>> = None;
    for g in j.iter().filter(|g| !g.is_zero()) {
        let s = saturate_by_element(ideal, g)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
        if acc.as_ref().is_some_and(|a| a.is_empty()) {
            break;
        }
    }
    acc.ok_or(Error::ZeroDivisor)
}

/// Ideal containment `I ⊆ J`.
pub fn is_subideal<F: Field>(ring: &RingRef<F>, i: &[Poly<F>], j: &[Poly<F>]) -> bool {
    let gb = groebner(ring, j);
    i.iter().all(|g| gb.contains(g))
}

pub fn ideal_equal<F: Field>(ring: &RingRef<F>, i: &[Poly<F>], j: &[Poly<F>]) -> bool {
    is_subideal(ring, i, j) && is_subideal(ring, j, i)
}

/// Some `q` with `q * f ≡ g` modulo `modulo`, when it exists.
pub fn lift_quotient<F: Field>(g: &Poly<F>, f: &Poly<F>, modulo: &[Poly<F>]) -> Option<Poly<F>> {
    let ring = f.ring().clone();
    let gb = groebner(&ring, modulo);
    let g = gb.reduce(g);
    if g.is_zero() {
        return Some(Poly::zero(&ring));
    }
    if modulo.iter().all(|p| p.is_zero()) {
        return g.exact_div(f);
    }
    let relations: Vec<Vec<Poly<F>>> = modulo.iter().filter(|p| !p.is_zero()).map(|p| vec![p.clone()]).collect();
    let cols = syzygy_module(&ring, 1, &[vec![g.clone()], vec![f.clone()]], &relations);
    let fld = ring.field();
    for c in cols {
        if c[0].is_constant() && !c[0].is_zero() {
            let inv = fld.inv(c[0].leading_coeff().unwrap()).unwrap();
            return Some(gb.reduce(&c[1].scale(&fld.neg(&inv))));
        }
    }
    None
}

pub(crate) fn fresh_name(existing: &[String], base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while existing.contains(&name) {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}
