//! Representatives of rational maps `X ⇢ Y` and the operations that do not
//! need the Rees algebra: equality, images, dominance and base loci.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{eliminate, fresh_name, groebner, ideal_quotient_by_ideal, lift_quotient, saturate};
use crate::poly::Poly;
use crate::polymatrix::{evaluate, scalar_rank};
use crate::ring::{same_ring, PolyRing};
use crate::variety::Variety;

/// Forms `f_0, ..., f_m` of a common degree on the source, one per target
/// coordinate, reduced modulo the source ideal.
#[derive(Clone, Debug)]
pub struct RationalMap<F: Field> {
    source: Arc<Variety<F>>,
    target: Arc<Variety<F>>,
    forms: Vec<Poly<F>>,
    degree: u32,
}

impl<F: Field> RationalMap<F> {
    /// Validates and builds a representative.
    pub fn new(source: Arc<Variety<F>>, target: Arc<Variety<F>>, forms: Vec<Poly<F>>) -> Result<Self> {
        let map = Self::unchecked(source, target, forms)?;
        let images = map.forms.clone();
        for (j, b) in map.target.gb().generators().iter().enumerate() {
            let pulled = b.substitute(&images)?;
            if !map.source.is_zero(&pulled) {
                return Err(Error::NotInTarget(j));
            }
        }
        Ok(map)
    }

    /// Checks shape, homogeneity and degrees, but not that the image lies
    /// in the target.
    pub(crate) fn unchecked(source: Arc<Variety<F>>, target: Arc<Variety<F>>, forms: Vec<Poly<F>>) -> Result<Self> {
        if forms.len() != target.nvars() {
            return Err(Error::TargetArity {
                expected: target.nvars(),
                found: forms.len(),
            });
        }
        let mut degree = None;
        for (i, f) in forms.iter().enumerate() {
            if !same_ring(f.ring(), source.ring()) {
                return Err(Error::RingMismatch);
            }
            if !f.is_homogeneous() {
                return Err(Error::InhomogeneousForm(i));
            }
            if let Some(d) = f.degree() {
                match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::DegreeMismatch {
                            index: i,
                            expected: e,
                            found: d,
                        })
                    }
                    _ => {}
                }
            }
        }
        let forms: Vec<Poly<F>> = forms.iter().map(|f| source.reduce(f)).collect();
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::AllFormsZero);
        }
        Ok(RationalMap {
            source,
            target,
            forms,
            degree: degree.unwrap(),
        })
    }

    /// The identity map of a variety.
    pub fn identity(v: Arc<Variety<F>>) -> Self {
        let forms = (0..v.nvars()).map(|i| Poly::var(v.ring(), i)).collect();
        RationalMap {
            source: v.clone(),
            target: v,
            forms,
            degree: 1,
        }
    }

    pub fn source(&self) -> &Arc<Variety<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Variety<F>> {
        &self.target
    }

    pub fn forms(&self) -> &[Poly<F>] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Index of the first form that does not vanish on the source.
    pub fn first_nonzero(&self) -> usize {
        self.forms.iter().position(|f| !f.is_zero()).expect("validated map")
    }

    /// The same forms, viewed as a map into another target.
    pub fn with_target(&self, target: Arc<Variety<F>>) -> Result<Self> {
        if !same_ring(target.ring(), self.target.ring()) {
            return Err(Error::SourceTargetMismatch);
        }
        RationalMap::new(self.source.clone(), target, self.forms.clone())
    }

    /// `other ∘ self`: substitutes the forms of `self` into those of `other`.
    pub fn then(&self, other: &RationalMap<F>) -> Result<RationalMap<F>> {
        if !same_ring(self.target.ring(), other.source.ring()) {
            return Err(Error::SourceTargetMismatch);
        }
        let forms = other
            .forms
            .iter()
            .map(|g| g.substitute(&self.forms))
            .collect::<Result<Vec<_>>>()?;
        RationalMap::unchecked(self.source.clone(), other.target.clone(), forms)
    }

    /// True when both representatives define the same rational map: every
    /// cross product `f_i g_j - f_j g_i` vanishes on the source.
    pub fn is_same_map(&self, other: &RationalMap<F>) -> Result<bool> {
        if !self.source.same_as(&other.source) || !same_ring(self.target.ring(), other.target.ring()) {
            return Err(Error::SourceTargetMismatch);
        }
        let (f, g) = (&self.forms, &other.forms);
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let m = f[i].mul(&g[j]).sub(&f[j].mul(&g[i]));
                if !self.source.is_zero(&m) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The kernel of `k[Y] → k[X]/a`, `Y_j ↦ f_j`, as a reduced Gröbner
    /// basis in the target's ambient ring.
    pub fn ideal_of_image(&self) -> Result<Vec<Poly<F>>> {
        if self.jacobian_has_full_rank() {
            return Ok(Vec::new());
        }
        let src = self.source.ring();
        let tgt = self.target.ring();
        let (n, m) = (src.nvars(), tgt.nvars());
        let mut names: Vec<String> = src.names().to_vec();
        for y in tgt.names() {
            let fresh = fresh_name(&names, y);
            names.push(fresh);
        }
        let mut weights = vec![1u32; n];
        weights.extend(std::iter::repeat_n(self.degree.max(1), m));
        let big = PolyRing::new(src.field().clone(), names).with_weights(weights).into_ref();
        let x_in: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Poly<F>> = self.source.ideal().iter().map(|g| g.remap(&big, &x_in)).collect();
        for (j, f) in self.forms.iter().enumerate() {
            gens.push(Poly::var(&big, n + j).sub(&f.remap(&big, &x_in)));
        }
        let elim = eliminate(&gens, &(0..n).collect::<Vec<_>>())?;
        let back: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
        let kernel: Vec<Poly<F>> = elim.iter().map(|g| g.remap(tgt, &back)).collect();
        Ok(groebner(tgt, &kernel).into_generators())
    }

    /// Certifies that the forms are algebraically independent: the Jacobian
    /// matrix has full rank at some random point of the source space. The
    /// rank at a point never exceeds the generic rank, so a hit is conclusive.
    fn jacobian_has_full_rank(&self) -> bool {
        let src = self.source.ring();
        let (n, m) = (src.nvars(), self.forms.len());
        if !self.source.is_projective_space() || m > n {
            return false;
        }
        let jac: Vec<Vec<Poly<F>>> = self.forms.iter().map(|f| (0..n).map(|i| f.partial_derivative(i)).collect()).collect();
        let field = src.field();
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
        (0..3).any(|_| {
            let point: Vec<F::Elem> = (0..n).map(|_| field.random(&mut rng)).collect();
            scalar_rank(field, &evaluate(&jac, &point)) == m
        })
    }

    /// True when the image is dense in the target.
    pub fn is_dominant(&self) -> Result<bool> {
        Ok(self.ideal_of_image()?.iter().all(|g| self.target.is_zero(g)))
    }

    /// The image as a variety in the target's ambient space.
    pub fn image(&self) -> Result<Arc<Variety<F>>> {
        Ok(Arc::new(Variety::new(self.target.ring(), self.ideal_of_image()?)?))
    }

    /// The ideal generated by the coordinates of every representative of
    /// the map, optionally saturated by the irrelevant ideal. Returned as a
    /// reduced Gröbner basis, without elements of the source ideal.
    pub fn base_locus(&self, saturate_output: bool) -> Result<Vec<Poly<F>>> {
        if !self.source.assume_domain() {
            return Err(Error::NotDomain);
        }
        let ring = self.source.ring();
        let a = self.source.ideal();
        let k = self.first_nonzero();
        let fk = &self.forms[k];
        let mut num: Vec<Poly<F>> = a.to_vec();
        num.push(fk.clone());
        let mut den: Vec<Poly<F>> = a.to_vec();
        den.extend(self.forms.iter().filter(|f| !f.is_zero()).cloned());
        let colon = ideal_quotient_by_ideal(&num, &den)?;
        let mut coords: Vec<Poly<F>> = a.to_vec();
        for g in colon {
            if self.source.is_zero(&g) {
                continue;
            }
            for f in &self.forms {
                let prod = self.source.reduce(&g.mul(f));
                let q = if a.is_empty() {
                    prod.exact_div(fk).filter(|q| q.mul(fk) == prod)
                } else {
                    lift_quotient(&prod, fk, a)
                };
                coords.push(q.ok_or(Error::ExactDivision)?);
            }
        }
        let ideal = if saturate_output {
            let irrelevant: Vec<Poly<F>> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
            saturate(&coords, &irrelevant)?
        } else {
            groebner(ring, &coords).into_generators()
        };
        Ok(ideal.into_iter().filter(|g| !self.source.is_zero(g)).collect())
    }

    /// True when the base locus is empty.
    pub fn is_regular(&self) -> Result<bool> {
        let b = self.base_locus(true)?;
        Ok(b.iter().any(|g| g.is_constant() && !g.is_zero()))
    }
}

/// Canonical text of an ideal: `ideal(g1, g2, ...)`.
pub fn format_ideal<F: Field>(gens: &[Poly<F>]) -> String {
    if gens.is_empty() {
        return "ideal(0)".to_string();
    }
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("ideal({})", parts.join(", "))
}

/// Canonical text of a list of forms: `[f0, f1, ...]`.
pub fn format_forms<F: Field>(forms: &[Poly<F>]) -> String {
    let parts: Vec<String> = forms.iter().map(|g| g.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalField;
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;
    use proptest::prelude::*;

    fn space(names: &[&str]) -> Arc<Variety<RationalField>> {
        let r = PolyRing::new(RationalField, names.iter().map(|s| s.to_string()).collect()).into_ref();
        Arc::new(Variety::projective_space(&r))
    }

    fn map(src: &Arc<Variety<RationalField>>, tgt: &Arc<Variety<RationalField>>, forms: &[&str]) -> Result<RationalMap<RationalField>> {
        let f = forms.iter().map(|s| parse_poly(src.ring(), s).unwrap()).collect();
        RationalMap::new(src.clone(), tgt.clone(), f)
    }

    #[test]
    fn validation() {
        let p2 = space(&["x", "y", "z"]);
        let t = space(&["a", "b", "c"]);
        assert!(map(&p2, &t, &["y*z", "x*z", "x*y"]).is_ok());
        let t2 = space(&["a", "b"]);
        let p1 = space(&["x", "y"]);
        assert!(matches!(map(&p1, &t2, &["x", "y^2"]), Err(Error::DegreeMismatch { index: 1, .. })));
        let r = p2.ring().clone();
        let line = Arc::new(Variety::new(&r, vec![Poly::var(&r, 0)]).unwrap());
        assert_eq!(map(&line, &t2, &["x", "x"]).unwrap_err(), Error::AllFormsZero);
        assert!(matches!(map(&p2, &t, &["x", "y"]), Err(Error::TargetArity { .. })));
        assert_eq!(map(&p2, &t, &["x", "y", "z^2"]).unwrap_err(), Error::DegreeMismatch { index: 2, expected: 1, found: 2 });
        assert_eq!(map(&p2, &t, &["x", "y^2", "z"]).unwrap_err(), Error::DegreeMismatch { index: 1, expected: 1, found: 2 });
        let conic_ring = t.ring().clone();
        let conic = Arc::new(Variety::new(&conic_ring, vec![parse_poly(&conic_ring, "a*c-b^2").unwrap()]).unwrap());
        assert_eq!(map(&p2, &conic, &["x", "y", "z"]).unwrap_err(), Error::NotInTarget(0));
    }

    #[test]
    fn same_map_examples() {
        let p2 = space(&["x", "y", "z"]);
        let t = space(&["a", "b", "c"]);
        let f = map(&p2, &t, &["x", "y", "z"]).unwrap();
        assert!(f.is_same_map(&map(&p2, &t, &["2*x", "2*y", "2*z"]).unwrap()).unwrap());
        let p1 = space(&["x", "y"]);
        let t1 = space(&["a", "b"]);
        let g = map(&p1, &t1, &["x", "y"]).unwrap();
        assert!(g.is_same_map(&map(&p1, &t1, &["x^2", "x*y"]).unwrap()).unwrap());
        assert!(!g.is_same_map(&map(&p1, &t1, &["y", "x"]).unwrap()).unwrap());
        assert_eq!(g.is_same_map(&f).unwrap_err(), Error::SourceTargetMismatch);
    }

    #[test]
    fn images() {
        let p1 = space(&["x", "y"]);
        let p2 = space(&["Y0", "Y1", "Y2"]);
        let v = map(&p1, &p2, &["x^2", "x*y", "y^2"]).unwrap();
        assert_eq!(format_ideal(&v.ideal_of_image().unwrap()), "ideal(Y1^2-Y0*Y2)");
        assert!(!v.is_dominant().unwrap());
        let conic = v.image().unwrap();
        assert!(v.with_target(conic).unwrap().is_dominant().unwrap());

        let p3 = space(&["Y0", "Y1", "Y2", "Y3"]);
        let c = map(&p1, &p3, &["x^3", "x^2*y", "x*y^2", "y^3"]).unwrap();
        let img = c.ideal_of_image().unwrap();
        assert_eq!(img.len(), 3);
        for g in &img {
            assert_eq!(g.degree(), Some(2));
            assert!(g.substitute(c.forms()).unwrap().is_zero());
        }

        let p2x = space(&["x", "y", "z"]);
        let cr = map(&p2x, &p2, &["y*z", "x*z", "x*y"]).unwrap();
        assert!(cr.ideal_of_image().unwrap().is_empty());
        assert!(cr.is_dominant().unwrap());
    }

    #[test]
    fn base_loci() {
        let p2 = space(&["x", "y", "z"]);
        let t = space(&["a", "b", "c"]);
        let f = map(&p2, &t, &["x^2*y", "x^2*z", "x*y*z"]).unwrap();
        assert_eq!(format_ideal(&f.base_locus(true).unwrap()), "ideal(y*z, x*z, x*y)");
        assert!(!f.is_regular().unwrap());
        let id = RationalMap::identity(p2.clone());
        assert_eq!(format_ideal(&id.base_locus(true).unwrap()), "ideal(1)");
        assert!(id.is_regular().unwrap());
        let cr = map(&p2, &t, &["y*z", "x*z", "x*y"]).unwrap();
        assert_eq!(format_ideal(&cr.base_locus(true).unwrap()), "ideal(y*z, x*z, x*y)");
        let p1 = space(&["s", "t"]);
        let p3 = space(&["a", "b", "c", "d"]);
        let tc = map(&p1, &p3, &["s^3", "s^2*t", "s*t^2", "t^3"]).unwrap();
        assert!(tc.is_regular().unwrap());
    }

    #[test]
    fn base_locus_on_a_cone() {
        // the cone over a conic, mapped by the linear forms (a, b); on the
        // cone a*c = b^2 the map extends as (b, c) where a vanishes
        let r = PolyRing::new(RationalField, ["a", "b", "c"].iter().map(|s| s.to_string()).collect()).into_ref();
        let cone = Arc::new(Variety::new(&r, vec![parse_poly(&r, "a*c-b^2").unwrap()]).unwrap());
        let p1 = space(&["u", "v"]);
        let f = map(&cone, &p1, &["a", "b"]).unwrap();
        let b = f.base_locus(false).unwrap();
        let gb = groebner(&r, &[b.clone(), cone.ideal().to_vec()].concat());
        for s in ["a", "b", "c"] {
            assert!(gb.contains(&parse_poly(&r, s).unwrap()), "{s}");
        }
    }

    #[test]
    fn base_locus_independent_of_pivot() {
        let p2 = space(&["x", "y", "z"]);
        let t = space(&["a", "b", "c"]);
        let forms = ["x^2*y", "x^2*z", "x*y*z"];
        let base = map(&p2, &t, &forms).unwrap().base_locus(true).unwrap();
        // rotate the forms so a different one comes first
        for shift in 1..3 {
            let rot: Vec<&str> = (0..3).map(|i| forms[(i + shift) % 3]).collect();
            let b = map(&p2, &t, &rot).unwrap().base_locus(true).unwrap();
            assert_eq!(format_ideal(&b), format_ideal(&base));
        }
    }

    #[test]
    fn composition() {
        let p2 = space(&["x", "y", "z"]);
        let cr = map(&p2, &p2, &["y*z", "x*z", "x*y"]).unwrap();
        let twice = cr.then(&cr).unwrap();
        assert!(twice.is_same_map(&RationalMap::identity(p2.clone())).unwrap());
    }

    fn random_form() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..4, 6)
    }

    fn quadric(p: &Arc<Variety<RationalField>>, c: &[i64]) -> Poly<RationalField> {
        let r = p.ring();
        let mons = ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"];
        mons.iter()
            .zip(c)
            .fold(Poly::zero(r), |acc, (m, &k)| acc.add(&parse_poly(r, &format!("{k}*{m}")).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn same_map_is_an_equivalence(c in prop::collection::vec(random_form(), 3), h1 in random_form(), h2 in random_form()) {
            let p2 = space(&["x", "y", "z"]);
            let forms: Vec<_> = c.iter().map(|k| quadric(&p2, k)).collect();
            let (h1, h2) = (quadric(&p2, &h1), quadric(&p2, &h2));
            prop_assume!(forms.iter().any(|f| !f.is_zero()) && !h1.is_zero() && !h2.is_zero());
            let f = RationalMap::new(p2.clone(), p2.clone(), forms.clone()).unwrap();
            let g = RationalMap::new(p2.clone(), p2.clone(), forms.iter().map(|x| x.mul(&h1)).collect()).unwrap();
            let k = RationalMap::new(p2.clone(), p2.clone(), forms.iter().map(|x| x.mul(&h2)).collect()).unwrap();
            prop_assert!(f.is_same_map(&f).unwrap());
            prop_assert_eq!(f.is_same_map(&g).unwrap(), g.is_same_map(&f).unwrap());
            prop_assert!(g.is_same_map(&k).unwrap() && k.is_same_map(&f).unwrap());
            let swapped: Vec<_> = vec![forms[1].clone(), forms[0].clone(), forms[2].clone()];
            let s = RationalMap::new(p2.clone(), p2.clone(), swapped).unwrap();
            if f.is_same_map(&s).unwrap() {
                prop_assert!(g.is_same_map(&s).unwrap());
            }
        }
    }
}
