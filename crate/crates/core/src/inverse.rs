//! Birationality, inverse maps and closed embeddings through the Jacobian
//! dual matrix.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::syzygies_of_vectors;
use crate::jacobian::JacobianDual;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::polymatrix::{determinant, evaluate, rank_over, scalar_rank};
use crate::rational_map::RationalMap;
use crate::rees::{rees_full, rees_saturation, ReesChunk, ReesComputation};
use crate::variety::{MinimalPresentation, Variety};

/// How the Rees relations feeding the Jacobian dual are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Truncated stages first, then the full basis from where they stopped.
    #[default]
    Hybrid,
    /// The full Rees ideal by elimination.
    Rees,
    /// Truncated stages only.
    Simis,
    /// Saturation of the symmetric algebra ideal.
    Saturation,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hybrid" => Ok(Strategy::Hybrid),
            "rees" => Ok(Strategy::Rees),
            "simis" => Ok(Strategy::Simis),
            "saturation" => Ok(Strategy::Saturation),
            _ => Err(Error::Invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hybrid => "hybrid",
            Strategy::Rees => "rees",
            Strategy::Simis => "simis",
            Strategy::Saturation => "saturation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseOptions {
    pub strategy: Strategy,
    /// Stage degree after which the hybrid strategy stops truncating.
    pub hybrid_limit: u32,
    /// Submatrix draws for the minors method; `None` picks a count from the
    /// number of source variables, `Some(0)` goes straight to syzygies.
    pub minors_count: Option<u32>,
    /// Use the given target instead of computing the image.
    pub assume_dominant: bool,
    pub check_birational: bool,
    /// Try to certify the rank at random points before eliminating.
    pub quick_rank: bool,
    pub seed: u64,
    /// Maximum number of stages for the pure truncated strategy.
    pub step_limit: usize,
}

impl Default for InverseOptions {
    fn default() -> Self {
        InverseOptions {
            strategy: Strategy::Hybrid,
            hybrid_limit: 15,
            minors_count: None,
            assume_dominant: false,
            check_birational: true,
            quick_rank: true,
            seed: 0,
            step_limit: 30,
        }
    }
}

impl InverseOptions {
    pub fn validate(&self) -> Result<()> {
        if self.hybrid_limit == 0 {
            return Err(Error::Invalid("hybrid limit must be at least 1".into()));
        }
        if self.step_limit == 0 {
            return Err(Error::Invalid("step limit must be at least 1".into()));
        }
        Ok(())
    }
}

/// Sink for progress messages.
pub type Trace<'a> = &'a mut dyn FnMut(&str);

/// Stage degrees of the truncated strategies: 1, 2, 4, 7, 11, 16, ...
pub fn stage_schedule() -> impl Iterator<Item = u32> {
    (0u32..).scan(1u32, |n, step| {
        let cur = *n;
        *n = n.saturating_add(step + 1);
        Some(cur)
    })
}

const QUICK_ATTEMPTS: usize = 10;

/// Everything learned about a map while building its Jacobian dual.
#[derive(Clone, Debug)]
pub struct DualAnalysis<F: Field> {
    pub presentation: MinimalPresentation<F>,
    /// The forms rewritten in the coordinates of the re-presented source.
    pub forms: Vec<Poly<F>>,
    /// The target used: the image unless dominance was assumed.
    pub target: Arc<Variety<F>>,
    pub chunk: ReesChunk<F>,
    pub dual: JacobianDual<F>,
    pub rank: usize,
    /// Stage degrees visited by the truncated strategies.
    pub stages: Vec<u32>,
}

impl<F: Field> DualAnalysis<F> {
    /// Embedding dimension of the source.
    pub fn edim(&self) -> usize {
        self.presentation.variety.nvars()
    }

    pub fn is_birational(&self) -> bool {
        self.rank + 1 == self.edim()
    }

    fn sampler(&self, quick: bool) -> Option<Sampler<'_, F>> {
        (quick && self.presentation.variety.is_projective_space()).then_some(Sampler { forms: &self.forms })
    }
}

/// Points of the image `f(p)` for random `p` in the source space.
struct Sampler<'a, F: Field> {
    forms: &'a [Poly<F>],
}

impl<F: Field> Sampler<'_, F> {
    fn point<R: Rng>(&self, rng: &mut R) -> Vec<F::Elem> {
        let field = self.forms[0].field();
        let n = self.forms[0].ring().nvars();
        let p: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        self.forms.iter().map(|f| f.evaluate(&p)).collect()
    }

    fn rank<R: Rng>(&self, dual: &JacobianDual<F>, rows: &[usize], rng: &mut R) -> usize {
        let field = self.forms[0].field();
        let y = self.point(rng);
        let sub: Vec<Vec<Poly<F>>> = rows.iter().map(|&i| dual.matrix[i].clone()).collect();
        scalar_rank(field, &evaluate(&sub, &y))
    }
}

fn all_rows<F: Field>(dual: &JacobianDual<F>) -> Vec<usize> {
    (0..dual.nrows()).collect()
}

/// Rank of the dual over the target, trying random points first.
fn certify_rank<F: Field>(
    dual: &JacobianDual<F>,
    goal: usize,
    sampler: Option<&Sampler<'_, F>>,
    rng: &mut ChaCha8Rng,
    trace: Trace<'_>,
) -> usize {
    if dual.nrows() < goal {
        return rank_over(&dual.matrix, &dual.target);
    }
    if let Some(s) = sampler {
        let rows = all_rows(dual);
        for attempt in 1..=QUICK_ATTEMPTS {
            if s.rank(dual, &rows, rng) >= goal {
                trace(&format!("rank {goal} reached at a random point (attempt {attempt})"));
                return goal;
            }
        }
        trace("random points did not reach full rank; eliminating");
    }
    rank_over(&dual.matrix, &dual.target)
}

/// Builds the Jacobian dual of `map` with the chosen strategy.
pub fn jacobian_dual<F: Field>(map: &RationalMap<F>, opts: &InverseOptions, trace: Trace<'_>) -> Result<DualAnalysis<F>> {
    opts.validate()?;
    let source = map.source();
    if !source.assume_domain() || !map.target().assume_domain() {
        return Err(Error::NotDomain);
    }
    let presentation = source.minimal_presentation()?;
    let src = presentation.variety.clone();
    if !presentation.is_identity() {
        trace(&format!(
            "source spans a linear subspace; working in {} variables instead of {}",
            src.nvars(),
            source.nvars()
        ));
    }
    let forms = map
        .forms()
        .iter()
        .map(|f| f.substitute(&presentation.to_new).map(|g| src.reduce(&g)))
        .collect::<Result<Vec<_>>>()?;
    let target = if opts.assume_dominant {
        map.target().clone()
    } else {
        trace("computing the image");
        let image = map.image()?;
        trace(&format!("image ideal has {} generators", image.ideal().len()));
        image
    };
    let goal = src.nvars() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stages = Vec::new();
    let sampler_forms = forms.clone();
    let sampler = (opts.quick_rank && src.is_projective_space()).then_some(Sampler { forms: &sampler_forms });

    let finish = |chunk: ReesChunk<F>, stages: Vec<u32>, rng: &mut ChaCha8Rng, trace: Trace<'_>| {
        let dual = JacobianDual::from_chunk(&chunk, target.clone());
        trace(&format!("Jacobian dual has {} rows and {} columns", dual.nrows(), src.nvars()));
        let rank = certify_rank(&dual, goal, sampler.as_ref(), rng, trace);
        DualAnalysis {
            presentation: presentation.clone(),
            forms: forms.clone(),
            target: target.clone(),
            chunk,
            dual,
            rank,
            stages,
        }
    };

    match opts.strategy {
        Strategy::Rees => {
            trace("computing the full Rees ideal");
            let chunk = rees_full(&src, target.ring(), &forms)?;
            Ok(finish(chunk, stages, &mut rng, trace))
        }
        Strategy::Saturation => {
            trace("saturating the symmetric algebra ideal");
            let chunk = rees_saturation(&src, target.ring(), &forms)?;
            Ok(finish(chunk, stages, &mut rng, trace))
        }
        Strategy::Simis | Strategy::Hybrid => {
            let mut comp = ReesComputation::new(&src, target.ring(), &forms)?;
            for (i, n) in stage_schedule().enumerate() {
                if opts.strategy == Strategy::Simis && i >= opts.step_limit {
                    return Err(Error::StepLimitExceeded { stages: i });
                }
                comp.run_to(n);
                stages.push(n);
                let complete = comp.is_complete();
                if complete {
                    trace(&format!("stage {n}: the Rees ideal is complete"));
                } else {
                    trace(&format!("stage {n}: relations of y-degree up to {n} found"));
                }
                let a = finish(comp.chunk(), stages.clone(), &mut rng, trace);
                if a.rank >= goal || complete {
                    return Ok(a);
                }
                if opts.strategy == Strategy::Hybrid && n >= opts.hybrid_limit {
                    trace(&format!("no full rank by stage {n}; finishing the Rees ideal from the current state"));
                    comp.run_full();
                    return Ok(finish(comp.chunk(), stages, &mut rng, trace));
                }
            }
            unreachable!("the stage schedule is infinite")
        }
    }
}

/// Decides whether `map` is birational onto its image (or onto its target
/// when dominance is assumed).
pub fn is_birational<F: Field>(map: &RationalMap<F>, opts: &InverseOptions, trace: Trace<'_>) -> Result<bool> {
    let a = jacobian_dual(map, opts, trace)?;
    Ok(a.is_birational())
}

/// A representative of the inverse, from the target (or image) back to the
/// source.
pub fn inverse_of_map<F: Field>(map: &RationalMap<F>, opts: &InverseOptions, trace: Trace<'_>) -> Result<RationalMap<F>> {
    let a = jacobian_dual(map, opts, trace)?;
    if !a.is_birational() {
        if opts.check_birational {
            return Err(Error::NotBirational);
        }
        trace("the rank is too small, but continuing since the check is disabled");
    }
    let coords = inverse_coordinates(&a, opts, trace)?;
    let target = a.target.clone();
    let forms = a
        .presentation
        .to_new
        .iter()
        .map(|x| x.substitute(&coords).map(|g| target.reduce(&g)))
        .collect::<Result<Vec<_>>>()?;
    let inverse = RationalMap::new(target, map.source().clone(), forms).map_err(|e| match e {
        Error::AllFormsZero => Error::NoInverseFound,
        e => e,
    })?;
    trace(&format!("inverse has degree {}", inverse.degree()));
    Ok(inverse)
}

/// Coordinates of the inverse in the re-presented source coordinates.
fn inverse_coordinates<F: Field>(a: &DualAnalysis<F>, opts: &InverseOptions, trace: Trace<'_>) -> Result<Vec<Poly<F>>> {
    let edim = a.edim();
    let goal = edim - 1;
    let count = opts.minors_count.unwrap_or(2 + edim as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let sampler = a.sampler(opts.quick_rank);
    if goal == 0 {
        // a map from a point
        return Ok(vec![Poly::one(a.target.ring())]);
    }
    if count > 0 && a.dual.nrows() >= goal {
        trace(&format!("looking for a {goal}x{edim} submatrix of rank {goal}"));
        for attempt in 0..count {
            let Some(rows) = select_rows(&a.dual, goal, attempt, sampler.as_ref(), &mut rng) else {
                continue;
            };
            let coords = strip_content(signed_minors(&a.dual, &rows, &a.target));
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            trace(&format!("found a nonzero maximal minor on attempt {}", attempt + 1));
            return Ok(coords);
        }
        trace("no usable submatrix found; computing the null space instead");
    }
    null_space_coordinates(a, trace)
}

/// Rows of a submatrix of full rank `goal`, picked greedily: cheapest rows
/// first on the first attempt, random order afterwards.
fn select_rows<F: Field>(
    dual: &JacobianDual<F>,
    goal: usize,
    attempt: u32,
    sampler: Option<&Sampler<'_, F>>,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let weight = |i: usize| -> u32 { dual.matrix[i].iter().filter_map(|p| p.degree()).sum() };
    let mut order: Vec<usize> = all_rows(dual);
    if attempt == 0 {
        let keys: Vec<(u32, u64)> = order.iter().map(|&i| (weight(i), rng.gen())).collect();
        order.sort_by_key(|&i| keys[i]);
    } else {
        order.shuffle(rng);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(goal);
    for i in order {
        chosen.push(i);
        let r = match sampler {
            Some(s) => s.rank(dual, &chosen, rng),
            None => {
                let sub: Vec<Vec<Poly<F>>> = chosen.iter().map(|&k| dual.matrix[k].clone()).collect();
                rank_over(&sub, &dual.target)
            }
        };
        if r < chosen.len() {
            chosen.pop();
        } else if chosen.len() == goal {
            return Some(chosen);
        }
    }
    None
}

/// `(-1)^i` times the minor with column `i` removed.
fn signed_minors<F: Field>(dual: &JacobianDual<F>, rows: &[usize], target: &Variety<F>) -> Vec<Poly<F>> {
    let ncols = dual.matrix[rows[0]].len();
    (0..ncols)
        .map(|skip| {
            let sub: Vec<Vec<Poly<F>>> = rows
                .iter()
                .map(|&r| {
                    dual.matrix[r]
                        .iter()
                        .enumerate()
                        .filter(|(c, _)| *c != skip)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let d = target.reduce(&determinant(&sub));
            if skip % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
        .collect()
}

fn null_space_coordinates<F: Field>(a: &DualAnalysis<F>, trace: Trace<'_>) -> Result<Vec<Poly<F>>> {
    let edim = a.edim();
    if a.dual.nrows() == 0 {
        return Err(Error::NoInverseFound);
    }
    let ring = a.target.ring();
    let columns: Vec<Vec<Poly<F>>> = (0..edim).map(|c| a.dual.matrix.iter().map(|row| row[c].clone()).collect()).collect();
    let syz = syzygies_of_vectors(ring, &columns, a.target.gb().generators())?;
    trace(&format!("null space has {} generators", syz.len()));
    syz.into_iter()
        .filter(|v| v.iter().any(|p| p.degree().is_some_and(|d| d > 0)))
        .map(strip_content)
        .find(|v| v.iter().any(|p| !a.target.is_zero(p)))
        .ok_or(Error::NoInverseFound)
}

/// Divides every coordinate by the largest monomial dividing all of them.
fn strip_content<F: Field>(coords: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let mut gcd: Option<Vec<u16>> = None;
    for p in &coords {
        for (_, m) in p.terms() {
            gcd = Some(match gcd {
                None => m.exps().to_vec(),
                Some(g) => g.iter().zip(m.exps()).map(|(a, b)| (*a).min(*b)).collect(),
            });
        }
    }
    let Some(g) = gcd.filter(|g| g.iter().any(|&e| e > 0)) else {
        return coords;
    };
    let g = Monomial::from_exps(&g);
    coords
        .into_iter()
        .map(|p| {
            let ring = p.ring().clone();
            let terms = p.into_terms().into_iter().map(|(c, m)| (c, m.div(&g).expect("common divisor"))).collect();
            Poly::from_terms(&ring, terms)
        })
        .collect()
}

/// Decides whether a map is a closed embedding: regular, birational onto
/// its image, and with a regular inverse.
pub fn is_embedding<F: Field>(map: &RationalMap<F>, opts: &InverseOptions, trace: Trace<'_>) -> Result<bool> {
    trace("checking that the base locus is empty");
    if !map.is_regular()? {
        trace("the map has base points");
        return Ok(false);
    }
    trace("computing the image");
    let onto = map.with_target(map.image()?)?;
    let o = InverseOptions {
        assume_dominant: true,
        check_birational: true,
        minors_count: Some(opts.minors_count.unwrap_or(0)),
        ..opts.clone()
    };
    let inverse = match inverse_of_map(&onto, &o, trace) {
        Ok(inv) => inv,
        Err(Error::NotBirational) => {
            trace("the map is not birational onto its image");
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    trace("checking that the inverse has no base points");
    let regular = inverse.is_regular()?;
    Ok(regular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gabber, map_between_spaces, rational_normal_curve, standard_cremona, veronese_surface};
    use crate::field::{PrimeField, RationalField};
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;

    fn quiet() -> impl FnMut(&str) {
        |_: &str| {}
    }

    fn assert_round_trip<F: Field>(map: &RationalMap<F>, inv: &RationalMap<F>) {
        let there_and_back = map.then(inv).unwrap();
        assert!(there_and_back.is_same_map(&RationalMap::identity(map.source().clone())).unwrap());
        let back_and_there = inv.then(&map.with_target(inv.source().clone()).unwrap()).unwrap();
        assert!(back_and_there.is_same_map(&RationalMap::identity(inv.source().clone())).unwrap());
    }

    #[test]
    fn schedule_starts_as_expected() {
        let s: Vec<u32> = stage_schedule().take(7).collect();
        assert_eq!(s, [1, 2, 4, 7, 11, 16, 22]);
    }

    #[test]
    fn cremona_is_its_own_inverse() {
        let f = standard_cremona(&RationalField);
        let opts = InverseOptions::default();
        assert!(is_birational(&f, &opts, &mut quiet()).unwrap());
        let inv = inverse_of_map(&f, &opts, &mut quiet()).unwrap();
        let expected = map_between_spaces(&RationalField, &["a", "b", "c"], &["x", "y", "z"], &["b*c", "a*c", "a*b"]).unwrap();
        assert_eq!(inv.forms().iter().map(|p| p.to_string()).collect::<Vec<_>>(), expected.forms().iter().map(|p| p.to_string()).collect::<Vec<_>>());
        assert_round_trip(&f, &inv);
        let by_syzygies = inverse_of_map(&f, &InverseOptions { minors_count: Some(0), ..opts }, &mut quiet()).unwrap();
        assert!(by_syzygies.is_same_map(&inv).unwrap());
    }

    #[test]
    fn projection_is_not_birational() {
        let f = map_between_spaces(&RationalField, &["x", "y", "z"], &["a", "b"], &["x", "y"]).unwrap();
        for strategy in [Strategy::Hybrid, Strategy::Rees, Strategy::Simis, Strategy::Saturation] {
            let opts = InverseOptions { strategy, ..Default::default() };
            assert!(!is_birational(&f, &opts, &mut quiet()).unwrap(), "{strategy}");
        }
        assert_eq!(inverse_of_map(&f, &InverseOptions::default(), &mut quiet()).unwrap_err(), Error::NotBirational);
    }

    #[test]
    fn simis_respects_the_step_limit() {
        let k = PrimeField::new(101).unwrap();
        let f = gabber(&k, 3, 3).unwrap();
        let opts = InverseOptions { strategy: Strategy::Simis, step_limit: 2, ..Default::default() };
        assert_eq!(is_birational(&f, &opts, &mut quiet()).unwrap_err(), Error::StepLimitExceeded { stages: 2 });
    }

    #[test]
    fn gabber_inverse_degree() {
        let k = PrimeField::new(101).unwrap();
        let f = gabber(&k, 3, 2).unwrap();
        let inv = inverse_of_map(&f, &InverseOptions::default(), &mut quiet()).unwrap();
        assert_eq!(inv.degree(), 4);
        assert_round_trip(&f, &inv);
    }

    #[test]
    fn strategies_and_options_agree() {
        let k = PrimeField::new(32003).unwrap();
        let maps = vec![standard_cremona(&k), gabber(&k, 2, 3).unwrap(), gabber(&k, 3, 2).unwrap()];
        for f in &maps {
            let reference = inverse_of_map(f, &InverseOptions::default(), &mut quiet()).unwrap();
            for strategy in [Strategy::Rees, Strategy::Simis, Strategy::Saturation] {
                for quick_rank in [true, false] {
                    for minors_count in [None, Some(0)] {
                        let opts = InverseOptions { strategy, quick_rank, minors_count, ..Default::default() };
                        let inv = inverse_of_map(f, &opts, &mut quiet()).unwrap();
                        assert!(inv.is_same_map(&reference).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_onto_the_image() {
        let f = rational_normal_curve(&RationalField, 3);
        let inv = inverse_of_map(&f, &InverseOptions::default(), &mut quiet()).unwrap();
        assert_eq!(inv.source().ideal().len(), 3);
        assert_round_trip(&f, &inv);
    }

    #[test]
    fn degenerate_source_is_re_presented() {
        let r = PolyRing::new(RationalField, vec!["x".into(), "y".into(), "z".into(), "w".into()]).into_ref();
        let src = Arc::new(Variety::new(&r, vec![parse_poly(&r, "w-x").unwrap()]).unwrap());
        let t = PolyRing::new(RationalField, vec!["a".into(), "b".into(), "c".into()]).into_ref();
        let forms = ["y*z", "w*z", "x*y"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let f = RationalMap::new(src, Arc::new(Variety::projective_space(&t)), forms).unwrap();
        let inv = inverse_of_map(&f, &InverseOptions::default(), &mut quiet()).unwrap();
        assert_eq!(inv.forms().len(), 4);
        assert_eq!(inv.forms()[0], inv.forms()[3]);
        assert_round_trip(&f, &inv);
    }

    #[test]
    fn embeddings() {
        let opts = InverseOptions::default();
        assert!(is_embedding(&rational_normal_curve(&RationalField, 3), &opts, &mut quiet()).unwrap());
        assert!(is_embedding(&rational_normal_curve(&RationalField, 2), &opts, &mut quiet()).unwrap());
        assert!(is_embedding(&veronese_surface(&RationalField), &opts, &mut quiet()).unwrap());
        assert!(!is_embedding(&standard_cremona(&RationalField), &opts, &mut quiet()).unwrap());
        // a regular map of degree two onto a line is not injective
        let double = map_between_spaces(&RationalField, &["s", "t"], &["a", "b"], &["s^2", "t^2"]).unwrap();
        assert!(!is_embedding(&double, &opts, &mut quiet()).unwrap());
    }

    #[test]
    fn invalid_options_are_rejected() {
        let f = standard_cremona(&RationalField);
        let opts = InverseOptions { hybrid_limit: 0, ..Default::default() };
        assert!(matches!(is_birational(&f, &opts, &mut quiet()), Err(Error::Invalid(_))));
    }
}
