//! Membership in Walkup's class and the exact face-vector formulas and
//! lower bounds for its members. All arithmetic is exact integer arithmetic.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::betti_numbers;
use crate::stacked::is_stacked_sphere;

/// `true` when every vertex link is a stacked `(d-1)`-sphere. In dimensions
/// 1 and 2 this is exactly "closed triangulated manifold".
pub fn in_walkup_class(x: &SimplicialComplex) -> bool {
    if x.dim() == 0 {
        return false;
    }
    (0..x.num_vertices())
        .into_par_iter()
        .all(|v| x.link_of(&[v]).is_ok_and(|lk| is_stacked_sphere(&lk)))
}

/// `f_1 = C(f_0, 2)`.
pub fn is_two_neighborly(x: &SimplicialComplex) -> bool {
    let n = x.num_vertices() as u64;
    x.faces(1).len() as u64 == n * (n.saturating_sub(1)) / 2
}

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exact_div(num: i128, den: i128, what: impl FnOnce() -> String) -> Result<i128> {
    if num % den != 0 {
        return Err(Error::NonIntegralResult(what()));
    }
    Ok(num / den)
}

fn to_fvector(values: Vec<i128>) -> Result<FVector> {
    values
        .iter()
        .map(|&v| u64::try_from(v).map_err(|_| Error::InvalidParameters(format!("negative face count {v}"))))
        .collect::<Result<Vec<_>>>()
        .map(FVector)
}

/// Face vector of any stacked `d`-sphere on `f0` vertices.
pub fn stacked_sphere_fvector(d: usize, f0: u64) -> Result<FVector> {
    if d < 1 || f0 < d as u64 + 2 {
        return Err(Error::InvalidParameters(format!("need d >= 1 and f0 >= d + 2 (d = {d}, f0 = {f0})")));
    }
    let (d, n) = (d as i128, f0 as i128);
    let mut f = vec![n];
    for j in 1..d {
        f.push(binomial(d + 1, j) * n - j * binomial(d + 2, j + 1));
    }
    f.push(d * n - (d + 2) * (d - 1));
    to_fvector(f)
}

/// Face vector of a connected member of the class in even dimension `d`,
/// from `f_0` and the Euler characteristic.
pub fn walkup_fvector_even(d: usize, f0: u64, chi: i64) -> Result<FVector> {
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    if d < 2 {
        return Err(Error::InvalidParameters(format!("dimension {d} < 2")));
    }
    let (d, n, chi) = (d as i128, f0 as i128, chi as i128);
    let mut f = vec![n];
    for j in 1..d {
        let half = exact_div(j * binomial(d + 2, j + 1) * chi, 2, || format!("f_{j} with chi = {chi}"))?;
        f.push(binomial(d + 1, j) * n - half);
    }
    let half = exact_div((d + 2) * (d - 1) * chi, 2, || format!("f_{d} with chi = {chi}"))?;
    f.push(d * n - half);
    to_fvector(f)
}

/// Face vector of a class member from `f_0` and `f_1`, valid in every
/// dimension `d >= 2`.
pub fn fvector_from_f0_f1(d: usize, f0: u64, f1: u64) -> Result<FVector> {
    if d < 2 {
        return Err(Error::InvalidParameters(format!("dimension {d} < 2")));
    }
    let (d, n, e) = (d as i128, f0 as i128, f1 as i128);
    let mut f = vec![n];
    for j in 1..d {
        let num = 2 * binomial(d, j - 1) * e - (j - 1) * binomial(d + 1, j) * n;
        f.push(exact_div(num, j + 1, || format!("f_{j} = {num}/{}", j + 1))?);
    }
    let num = (2 * d - 2) * e - (d - 2) * (d + 1) * n;
    f.push(exact_div(num, d + 1, || format!("f_{d} = {num}/{}", d + 1))?);
    to_fvector(f)
}

/// Dehn–Sommerville completion for closed 4-manifolds:
/// `(f0, f1, 4f1 - 10(f0 - χ), 5f1 - 15(f0 - χ), 2f1 - 6(f0 - χ))`.
pub fn dehn_sommerville_4(f0: u64, f1: u64, chi: i64) -> Result<FVector> {
    let (n, e, c) = (f0 as i128, f1 as i128, chi as i128);
    to_fvector(vec![n, e, 4 * e - 10 * (n - c), 5 * e - 15 * (n - c), 2 * e - 6 * (n - c)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub tight: bool,
}

impl Inequality {
    fn new(name: &str, lhs: i128, rhs: i128) -> Self {
        Self { name: name.to_string(), lhs: lhs as i64, rhs: rhs as i64, tight: lhs == rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

/// Lower-bound report for a closed connected 4-manifold candidate.
///
/// Instances `a1..a4` are the face-count bounds, doubled to stay integral
/// (`2 f_j >= 2 C(5, j) f_0 - j C(6, j+1) χ`, and `2 f_4 >= 8 f_0 - 18 χ`);
/// `b` is `f_0 (f_0 - 11) >= -15 χ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub f_vector: FVector,
    pub euler: i64,
    pub inequalities: Vec<Inequality>,
    pub part_a_tight: bool,
    pub part_b_tight: bool,
    pub overall_equality: bool,
    pub two_neighborly: bool,
    pub walkup_member: bool,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.name == name)
    }
}

/// Evaluates both lower bounds. The input must be 4-dimensional, closed,
/// connected, and have vertex links with the ℤ₂-homology of a 3-sphere;
/// genuine PL-manifoldness is not certified.
pub fn check_bounds_4manifold(x: &SimplicialComplex) -> Result<BoundReport> {
    let reject = |why: &str| Err(Error::NotClosedConnected4Manifold(why.to_string()));
    if x.dim() != 4 {
        return reject("dimension is not 4");
    }
    if !x.is_closed_pseudomanifold() {
        return reject("not a closed pseudomanifold");
    }
    let betti = betti_numbers(x);
    if betti[0] != 1 {
        return reject("not connected");
    }
    let links_ok = (0..x.num_vertices()).into_par_iter().all(|v| {
        x.link_of(&[v]).is_ok_and(|lk| lk.dim() == 3 && betti_numbers(&lk) == [1, 0, 0, 1])
    });
    if !links_ok {
        return reject("some vertex link is not a ℤ₂-homology 3-sphere");
    }
    let f = x.f_vector();
    let euler = f.euler_characteristic();
    let (n, c) = (f.0[0] as i128, euler as i128);
    let mut inequalities = Vec::new();
    for j in 1..4i128 {
        inequalities.push(Inequality::new(
            &format!("a{j}"),
            2 * f.0[j as usize] as i128,
            2 * binomial(5, j) * n - j * binomial(6, j + 1) * c,
        ));
    }
    inequalities.push(Inequality::new("a4", 2 * f.0[4] as i128, 8 * n - 18 * c));
    inequalities.push(Inequality::new("b", n * (n - 11), -15 * c));
    let part_a_tight = inequalities[..4].iter().all(|i| i.tight);
    let part_b_tight = inequalities[4].tight;
    Ok(BoundReport {
        f_vector: f,
        euler,
        part_a_tight,
        part_b_tight,
        overall_equality: part_a_tight && part_b_tight,
        two_neighborly: is_two_neighborly(x),
        walkup_member: in_walkup_class(x),
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(v: &[u64]) -> FVector {
        FVector(v.to_vec())
    }

    #[test]
    fn stacked_formula() {
        assert_eq!(stacked_sphere_fvector(4, 30).unwrap(), fv(&[30, 135, 260, 255, 102]));
        assert_eq!(stacked_sphere_fvector(3, 10).unwrap(), fv(&[10, 30, 40, 20]));
        assert_eq!(stacked_sphere_fvector(1, 7).unwrap(), fv(&[7, 7]));
        for d in 1..8u64 {
            let f = stacked_sphere_fvector(d as usize, d + 2).unwrap();
            let expect: Vec<u64> =
                (0..=d).map(|j| binomial(d as i128 + 2, j as i128 + 1) as u64).collect();
            assert_eq!(f.0, expect);
        }
        assert!(stacked_sphere_fvector(4, 5).is_err());
        assert!(stacked_sphere_fvector(0, 5).is_err());
    }

    #[test]
    fn even_formula() {
        assert_eq!(walkup_fvector_even(4, 15, -4).unwrap(), fv(&[15, 105, 230, 240, 96]));
        assert_eq!(walkup_fvector_even(4, 11, 0).unwrap(), fv(&[11, 55, 110, 110, 44]));
        for n in 6..40 {
            assert_eq!(walkup_fvector_even(4, n, 2).unwrap(), stacked_sphere_fvector(4, n).unwrap());
        }
        assert_eq!(walkup_fvector_even(3, 10, 0), Err(Error::OddDimension(3)));
        assert!(matches!(walkup_fvector_even(4, 15, -3), Err(Error::NonIntegralResult(_))));
    }

    #[test]
    fn from_f0_f1() {
        assert_eq!(fvector_from_f0_f1(4, 15, 105).unwrap(), fv(&[15, 105, 230, 240, 96]));
        let f = fvector_from_f0_f1(3, 10, 30).unwrap();
        assert_eq!(f, fv(&[10, 30, 40, 20]));
        assert_eq!(f.euler_characteristic(), 0);
        assert!(matches!(fvector_from_f0_f1(4, 15, 104), Err(Error::NonIntegralResult(_))));
    }

    #[test]
    fn agrees_with_even_formula() {
        for n in 6..30u64 {
            for chi in (-10..=2).step_by(2) {
                let Ok(a) = walkup_fvector_even(4, n, chi) else { continue };
                assert_eq!(fvector_from_f0_f1(4, n, a.0[1]).unwrap(), a);
            }
        }
        for n in 8..30u64 {
            for chi in -6..=2 {
                let Ok(a) = walkup_fvector_even(6, n, chi) else { continue };
                assert_eq!(fvector_from_f0_f1(6, n, a.0[1]).unwrap(), a);
            }
        }
    }

    #[test]
    fn dehn_sommerville() {
        assert_eq!(dehn_sommerville_4(15, 105, -4).unwrap(), fv(&[15, 105, 230, 240, 96]));
        assert_eq!(dehn_sommerville_4(6, 15, 2).unwrap(), fv(&[6, 15, 20, 15, 6]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
    }
}
