//! Ready-made maps used by tests, benchmarks and the CLI.

use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::rational_map::RationalMap;
use crate::ring::{PolyRing, RingRef};
use crate::variety::Variety;

fn space<F: Field>(field: &F, names: &[String]) -> Arc<Variety<F>> {
    let ring: RingRef<F> = PolyRing::new(field.clone(), names.to_vec()).into_ref();
    Arc::new(Variety::projective_space(&ring))
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A map between projective spaces with the given variable names, forms
/// written in the source variables.
pub fn map_between_spaces<F: Field>(field: &F, src: &[&str], tgt: &[&str], forms: &[&str]) -> Result<RationalMap<F>> {
    let s = space(field, &src.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let t = space(field, &tgt.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let f = forms
        .iter()
        .map(|text| parse_poly(s.ring(), text).map_err(|e| crate::error::Error::Invalid(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    RationalMap::new(s, t, f)
}

/// `P^n ⇢ P^n` given by `x0^d, x1 x0^(d-1)` and `x_i x0^(d-1) + x_(i-1)^d`
/// for `i >= 2`; birational with an inverse of degree `d^(n-1)`.
pub fn gabber<F: Field>(field: &F, n: usize, d: u32) -> Result<RationalMap<F>> {
    assert!(n >= 1 && d >= 1);
    let src = space(field, &indexed("x", n + 1));
    let tgt = space(field, &indexed("y", n + 1));
    let ring = src.ring();
    let x = |i: usize| Poly::var(ring, i);
    let lead = x(0).pow(d - 1);
    let mut forms = vec![x(0).pow(d), x(1).mul(&lead)];
    for i in 2..=n {
        forms.push(x(i).mul(&lead).add(&x(i - 1).pow(d)));
    }
    RationalMap::new(src, tgt, forms)
}

/// The quadratic map `(x1 x2, x0 x2, x0 x1)` of the plane.
pub fn standard_cremona<F: Field>(field: &F) -> RationalMap<F> {
    map_between_spaces(field, &["x", "y", "z"], &["a", "b", "c"], &["y*z", "x*z", "x*y"]).expect("valid map")
}

/// The degree-`d` Veronese embedding of `P^1`.
pub fn rational_normal_curve<F: Field>(field: &F, d: u32) -> RationalMap<F> {
    let src = space(field, &["s".to_string(), "t".to_string()]);
    let tgt = space(field, &indexed("y", d as usize + 1));
    let ring = src.ring();
    let forms = (0..=d).map(|i| Poly::var(ring, 0).pow(d - i).mul(&Poly::var(ring, 1).pow(i))).collect();
    RationalMap::new(src, tgt, forms).expect("valid map")
}

/// The quadratic Veronese embedding `P^2 → P^5`.
pub fn veronese_surface<F: Field>(field: &F) -> RationalMap<F> {
    map_between_spaces(
        field,
        &["x", "y", "z"],
        &["a", "b", "c", "d", "e", "f"],
        &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"],
    )
    .expect("valid map")
}

/// The quintic Cremona transformation of `P^4`
/// `(x^5, y x^4, z x^4 + y^5, t x^4 + z^5, u x^4 + t^5)`.
pub fn quintic_cremona<F: Field>(field: &F) -> RationalMap<F> {
    map_between_spaces(
        field,
        &["x", "y", "z", "t", "u"],
        &["y0", "y1", "y2", "y3", "y4"],
        &["x^5", "y*x^4", "z*x^4+y^5", "t*x^4+z^5", "u*x^4+t^5"],
    )
    .expect("valid map")
}
