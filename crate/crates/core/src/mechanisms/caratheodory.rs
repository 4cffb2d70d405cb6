//! Exact Carathéodory reduction in the plane: any convex combination of
//! points in R^2 equals a combination of at most three of them.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Point = (Rational, Rational);

/// Weighted mean of `points`.
pub fn weighted_mean(points: &[Point], weights: &[Rational]) -> Point {
    points.iter().zip(weights).fold((Rational::zero(), Rational::zero()), |(x, y), ((px, py), w)| {
        (x + px * w, y + py * w)
    })
}

/// Returns `(index, weight)` pairs over at most three input points whose
/// weights sum to 1 and whose mean equals the mean of the input
/// distribution exactly. Candidates are tried as singletons, then pairs,
/// then triples, in index order; the first feasible one wins.
pub fn caratheodory_prune(points: &[Point], weights: &[Rational]) -> Result<Vec<(usize, Rational)>> {
    if points.len() != weights.len() || points.is_empty() {
        return Err(Error::Precondition("need matching, non-empty points and weights".into()));
    }
    if weights.iter().sum::<Rational>() != Rational::one() || weights.iter().any(|w| *w < Rational::zero()) {
        return Err(Error::Precondition("weights must be non-negative and sum to 1".into()));
    }
    let target = weighted_mean(points, weights);
    let n = points.len();

    if let Some(i) = points.iter().position(|p| *p == target) {
        return Ok(alloc::vec![(i, Rational::one())]);
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(l) = segment_weight(&points[i], &points[j], &target) {
                return Ok(alloc::vec![(i, l.clone()), (j, Rational::one() - l)]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for m in j + 1..n {
                if let Some((a, b, c)) = barycentric(&points[i], &points[j], &points[m], &target) {
                    return Ok([(i, a), (j, b), (m, c)].into_iter().filter(|(_, w)| !w.is_zero()).collect());
                }
            }
        }
    }
    Err(Error::Invariant("no decomposition into three points found".into()))
}

/// `λ` with `t = λ p + (1-λ) q`, `λ ∈ [0,1]`, if `t` lies on segment `pq`.
fn segment_weight(p: &Point, q: &Point, t: &Point) -> Option<Rational> {
    let (dx, dy) = (&p.0 - &q.0, &p.1 - &q.1);
    let l = if !dx.is_zero() {
        (&t.0 - &q.0) / dx
    } else if !dy.is_zero() {
        (&t.1 - &q.1) / dy
    } else {
        return None;
    };
    let on_line = &l * &p.0 + (Rational::one() - &l) * &q.0 == t.0 && &l * &p.1 + (Rational::one() - &l) * &q.1 == t.1;
    (on_line && l >= Rational::zero() && l <= Rational::one()).then_some(l)
}

/// Barycentric coordinates of `t` in triangle `abc`, if non-degenerate and inside.
fn barycentric(a: &Point, b: &Point, c: &Point, t: &Point) -> Option<(Rational, Rational, Rational)> {
    let (ax, ay) = (&a.0 - &c.0, &a.1 - &c.1);
    let (bx, by) = (&b.0 - &c.0, &b.1 - &c.1);
    let (tx, ty) = (&t.0 - &c.0, &t.1 - &c.1);
    let det = &ax * &by - &bx * &ay;
    if det.is_zero() {
        return None;
    }
    let l1 = (&tx * &by - &bx * &ty) / &det;
    let l2 = (&ax * &ty - &tx * &ay) / &det;
    let l3 = Rational::one() - &l1 - &l2;
    let zero = Rational::zero();
    (l1 >= zero && l2 >= zero && l3 >= zero).then_some((l1, l2, l3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(x: i64, y: i64) -> Point {
        (int(x), int(y))
    }

    #[test]
    fn identical_points_collapse() {
        let pts = alloc::vec![pt(1, 2); 6];
        let w = alloc::vec![ratio(1, 6); 6];
        assert_eq!(caratheodory_prune(&pts, &w).unwrap(), alloc::vec![(0, int(1))]);
    }

    #[test]
    fn collinear_points_use_a_pair() {
        let pts = alloc::vec![pt(0, 0), pt(1, 1), pt(2, 2), pt(4, 4)];
        let w = alloc::vec![ratio(1, 4); 4];
        let out = caratheodory_prune(&pts, &w).unwrap();
        assert_eq!(out.len(), 2);
        let (p, q): (Vec<Point>, Vec<Rational>) = out.iter().map(|(i, w)| (pts[*i].clone(), w.clone())).unzip();
        assert_eq!(weighted_mean(&p, &q), weighted_mean(&pts, &w));
    }

    #[test]
    fn triangle_interior() {
        let pts = alloc::vec![pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1), pt(3, 3), pt(2, 0)];
        let w = alloc::vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(1, 10), ratio(2, 10), ratio(1, 10)];
        let out = caratheodory_prune(&pts, &w).unwrap();
        assert!(out.len() <= 3);
        let (p, q): (Vec<Point>, Vec<Rational>) = out.iter().map(|(i, w)| (pts[*i].clone(), w.clone())).unzip();
        assert_eq!(q.iter().sum::<Rational>(), int(1));
        assert_eq!(weighted_mean(&p, &q), weighted_mean(&pts, &w));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(caratheodory_prune(&[pt(0, 0)], &[ratio(1, 2)]).is_err());
        assert!(caratheodory_prune(&[], &[]).is_err());
    }
}
