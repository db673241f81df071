//! Dense matrices of polynomials: fraction-free elimination for ranks and
//! determinants, and scalar evaluation.

use crate::field::Field;
use crate::poly::Poly;
use crate::variety::Variety;

pub type PolyMatrix<F> = Vec<Vec<Poly<F>>>;

fn cost<F: Field>(p: &Poly<F>) -> (u32, usize) {
    (p.degree().unwrap_or(0), p.len())
}

/// Determinant of a square matrix over the polynomial ring (Bareiss).
pub fn determinant<F: Field>(m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix expected");
    if n == 0 {
        panic!("empty matrix");
    }
    let ring = m[0][0].ring().clone();
    let mut a: PolyMatrix<F> = m.to_vec();
    let mut prev = Poly::one(&ring);
    let mut negate = false;
    for k in 0..n {
        // cheapest nonzero pivot in column k
        let Some(p) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| cost(&a[i][k])) else {
            return Poly::zero(&ring);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = if k == 0 {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = Poly::zero(&ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Rank over the fraction field of `k[Y]/b`, assuming `b` is prime.
///
/// Over a polynomial ring this is Bareiss elimination with full pivoting;
/// with relations the division step is skipped and entries are reduced
/// modulo `b` after every update.
pub fn rank_over<F: Field>(m: &[Vec<Poly<F>>], target: &Variety<F>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ring = target.ring().clone();
    let exact = target.is_projective_space();
    let mut a: PolyMatrix<F> = m.iter().map(|r| r.iter().map(|p| target.reduce(p)).collect()).collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut prev = Poly::one(&ring);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| cost(&a[i][j]) < cost(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(pi, k);
        for row in a.iter_mut() {
            row.swap(pj, k);
        }
        rank += 1;
        for i in k + 1..rows {
            if !exact && a[i][k].is_zero() {
                continue;
            }
            for j in k + 1..cols {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = if !exact {
                    target.reduce(&num)
                } else if k == 0 {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = Poly::zero(&ring);
        }
        prev = a[k][k].clone();
    }
    rank
}

/// Evaluates every entry at a point.
pub fn evaluate<F: Field>(m: &[Vec<Poly<F>>], point: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    m.iter().map(|r| r.iter().map(|p| p.evaluate(point)).collect()).collect()
}

/// Rank of a matrix over the field.
pub fn scalar_rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(p, rank);
        let inv = field.inv(&a[rank][c]).unwrap();
        for i in rank + 1..a.len() {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..cols {
                let t = field.mul(&factor, &a[rank][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::parse::parse_poly;
    use crate::ring::{PolyRing, RingRef};
    use proptest::prelude::*;

    fn ring() -> RingRef<RationalField> {
        PolyRing::new(RationalField, vec!["a".into(), "b".into(), "c".into()]).into_ref()
    }

    fn mat(r: &RingRef<RationalField>, rows: &[&[&str]]) -> PolyMatrix<RationalField> {
        rows.iter().map(|row| row.iter().map(|s| parse_poly(r, s).unwrap()).collect()).collect()
    }

    /// Cofactor expansion, used as an independent check.
    fn cofactor<F: Field>(m: &[Vec<Poly<F>>]) -> Poly<F> {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Poly::zero(m[0][0].ring());
        for j in 0..n {
            let minor: Vec<Vec<Poly<F>>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let t = m[0][j].mul(&cofactor(&minor));
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let r = ring();
        let m = mat(&r, &[&["a", "b"], &["c", "a+b"]]);
        assert_eq!(determinant(&m), cofactor(&m));
        let z = mat(&r, &[&["0", "b", "c"], &["a", "0", "c"], &["a", "b", "0"]]);
        assert_eq!(determinant(&z), cofactor(&z));
        assert_eq!(determinant(&z).to_string(), "2*a*b*c");
    }

    #[test]
    fn rank_over_quotient() {
        let r = PolyRing::new(RationalField, vec!["Y0".into(), "Y1".into()]).into_ref();
        let v = Variety::new(&r, vec![Poly::var(&r, 0)]).unwrap();
        let m = vec![vec![Poly::var(&r, 0)], vec![Poly::var(&r, 1)]];
        assert_eq!(rank_over(&m, &v), 1);
        let m2 = vec![vec![Poly::var(&r, 0), Poly::var(&r, 1)]];
        assert_eq!(rank_over(&m2, &v), 1);
        let m3 = vec![vec![Poly::var(&r, 0)]];
        assert_eq!(rank_over(&m3, &v), 0);
    }

    #[test]
    fn cremona_dual_has_rank_two() {
        let r = ring();
        let psi = mat(&r, &[&["a", "-b", "0"], &["0", "b", "-c"]]);
        assert_eq!(rank_over(&psi, &Variety::projective_space(&r)), 2);
        let lowrank = mat(&r, &[&["a", "b", "c"], &["a^2", "a*b", "a*c"], &["b", "c", "a"]]);
        assert_eq!(rank_over(&lowrank, &Variety::projective_space(&r)), 2);
    }

    fn entry() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["0", "a", "b", "c", "a+b", "a*b", "c^2-a", "2*a", "b*c+1"]).prop_map(String::from)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bareiss_matches_cofactor(entries in prop::collection::vec(entry(), 9)) {
            let r = ring();
            let m: PolyMatrix<RationalField> = entries.chunks(3).map(|row| row.iter().map(|s| parse_poly(&r, s).unwrap()).collect()).collect();
            prop_assert_eq!(determinant(&m), cofactor(&m));
        }

        #[test]
        fn evaluation_never_raises_rank(entries in prop::collection::vec(entry(), 12), pt in prop::collection::vec(0u32..101, 3)) {
            let k = PrimeField::new(101).unwrap();
            let r = PolyRing::new(k, vec!["a".into(), "b".into(), "c".into()]).into_ref();
            let m: PolyMatrix<PrimeField> = entries.chunks(3).map(|row| row.iter().map(|s| parse_poly(&r, s).unwrap()).collect()).collect();
            let generic = rank_over(&m, &Variety::projective_space(&r));
            let at = scalar_rank(&k, &evaluate(&m, &pt));
            prop_assert!(at <= generic);
        }
    }
}
