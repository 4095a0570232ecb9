//! Membership functions, fuzzification and centroid defuzzification.
//!
//! Two membership shapes are supported, both centred on a category mean
//! `mu` with spread `sigma`:
//!
//! * Gaussian: `exp(-(x - mu)^2 / (2 sigma^2))`
//! * Rational: `1 / (1 + (|x - mu| / sigma)^p)`
//!
//! Both return values in `(0, 1]`, with exactly `1.0` at `x == mu`. Where
//! the true value is not representable in `f64` (it rounds to `1.0` for a
//! tiny nonzero distance, or underflows to `0.0` far in the tails) the
//! result is pinned to the nearest representable value inside the range:
//! [`BELOW_ONE`] or [`f64::MIN_POSITIVE`] respectively.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Largest `f64` strictly below one.
pub const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

fn check_finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite, got {v}")))
    }
}

fn check_positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

/// Keeps a membership computed at nonzero distance strictly inside (0, 1).
#[inline]
fn partial(u: f64) -> f64 {
    u.clamp(f64::MIN_POSITIVE, BELOW_ONE)
}

/// Gaussian membership of `x` in a category centred at `mu` with spread `sigma`.
pub fn gaussian_membership(x: f64, mu: f64, sigma: f64) -> Result<f64> {
    check_finite("x", x)?;
    check_finite("mu", mu)?;
    check_positive("sigma", sigma)?;
    Ok(gaussian_unchecked(x, mu, sigma))
}

/// Rational membership `1 / (1 + (|x - mu| / sigma)^p)`.
pub fn rational_membership(x: f64, mu: f64, sigma: f64, p: f64) -> Result<f64> {
    check_finite("x", x)?;
    check_finite("mu", mu)?;
    check_positive("sigma", sigma)?;
    check_positive("p", p)?;
    Ok(rational_unchecked(x, mu, sigma, p))
}

#[inline]
fn gaussian_unchecked(x: f64, mu: f64, sigma: f64) -> f64 {
    let d = x - mu;
    if d == 0.0 {
        return 1.0;
    }
    let z = d / sigma;
    partial((-0.5 * z * z).exp())
}

#[inline]
fn rational_unchecked(x: f64, mu: f64, sigma: f64, p: f64) -> f64 {
    let d = (x - mu).abs();
    if d == 0.0 {
        return 1.0;
    }
    let r = d / sigma;
    let t = r.powf(p);
    let u = if t.is_finite() {
        1.0 / (1.0 + t)
    } else {
        // t overflowed; 1/(1+t) ~ r^-p to within f64 precision here
        r.powf(-p)
    };
    partial(u)
}

/// Membership function shape shared by every category in a [`CategorySet`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MembershipKind {
    Gaussian,
    Rational { p: f64 },
}

impl MembershipKind {
    pub fn rational(p: f64) -> Result<Self> {
        check_positive("p", p)?;
        Ok(MembershipKind::Rational { p })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MembershipKind::Gaussian => Ok(()),
            MembershipKind::Rational { p } => check_positive("p", p),
        }
    }
}

impl Default for MembershipKind {
    fn default() -> Self {
        MembershipKind::Rational { p: 2.0 }
    }
}

/// One fuzzy set: a named category with centre, spread and ranking weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyCategory {
    name: String,
    mu: f64,
    sigma: f64,
    weight: f64,
}

impl FuzzyCategory {
    pub fn new(name: impl Into<String>, mu: f64, sigma: f64, weight: f64) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::invalid("name", "must not be empty"));
        }
        check_finite("mu", mu)?;
        check_positive("sigma", sigma)?;
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::invalid(
                "weight",
                format!("must be finite and >= 0, got {weight}"),
            ));
        }
        Ok(FuzzyCategory {
            name,
            mu,
            sigma,
            weight,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Membership of `x` in this category under `kind`. `kind` must already
    /// be validated, which [`CategorySet`] guarantees.
    #[inline]
    pub fn membership(&self, x: f64, kind: MembershipKind) -> f64 {
        match kind {
            MembershipKind::Gaussian => gaussian_unchecked(x, self.mu, self.sigma),
            MembershipKind::Rational { p } => rational_unchecked(x, self.mu, self.sigma, p),
        }
    }
}

/// An ordered, non-empty list of uniquely named categories plus the
/// membership shape used to evaluate them.
#[derive(Debug, Clone, PartialEq)]
pub struct CategorySet {
    categories: Vec<FuzzyCategory>,
    kind: MembershipKind,
}

impl CategorySet {
    pub fn new(categories: Vec<FuzzyCategory>, kind: MembershipKind) -> Result<Self> {
        if categories.is_empty() {
            return Err(Error::invalid("categories", "at least one category is required"));
        }
        kind.validate()?;
        for (i, c) in categories.iter().enumerate() {
            if categories[..i].iter().any(|prev| prev.name == c.name) {
                return Err(Error::invalid(
                    "name",
                    format!("duplicate category name {:?}", c.name),
                ));
            }
        }
        Ok(CategorySet { categories, kind })
    }

    pub fn categories(&self) -> &[FuzzyCategory] {
        &self.categories
    }

    pub fn kind(&self) -> MembershipKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.categories.iter().map(|c| c.name.as_str())
    }

    /// Same categories with every weight replaced by `weights[j]`.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                actual: weights.len(),
            });
        }
        let categories = self
            .categories
            .iter()
            .zip(weights)
            .map(|(c, &w)| FuzzyCategory::new(c.name.clone(), c.mu, c.sigma, w))
            .collect::<Result<Vec<_>>>()?;
        CategorySet::new(categories, self.kind)
    }

    /// Memberships of one crisp value in every category, in category order.
    pub fn memberships(&self, x: f64) -> Result<Vec<f64>> {
        check_finite("x", x)?;
        Ok(self
            .categories
            .iter()
            .map(|c| c.membership(x, self.kind))
            .collect())
    }
}

/// Row-major `n x m` matrix of membership degrees: one row per feature,
/// one column per category.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl MembershipMatrix {
    /// Builds a matrix from row-major values, checking shape and range.
    pub fn from_rows(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(values.len()) {
            return Err(Error::Dimension {
                expected: rows.saturating_mul(cols),
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return Err(Error::invalid(
                "membership",
                format!("entries must lie in (0, 1], got {bad}"),
            ));
        }
        Ok(MembershipMatrix { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.values[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact(0) panics; a 0-column matrix cannot be built anyway
        self.values.chunks_exact(self.cols.max(1))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Fuzzifies `values` against every category in `cats`.
pub fn fuzzify(values: &[f64], cats: &CategorySet) -> Result<MembershipMatrix> {
    fuzzify_with(values, cats, Execution::default())
}

pub fn fuzzify_with(values: &[f64], cats: &CategorySet, exec: Execution) -> Result<MembershipMatrix> {
    if values.is_empty() {
        return Err(Error::EmptyInput("no crisp values to fuzzify"));
    }
    let rows = exec::try_map_collect(exec, values, |&x| cats.memberships(x))?;
    Ok(MembershipMatrix {
        rows: values.len(),
        cols: cats.len(),
        values: rows.into_iter().flatten().collect(),
    })
}

/// Weighted centroid of the category means: `sum(u_j mu_j) / sum(u_j)`.
///
/// Lossy: many membership rows share a centroid.
pub fn defuzzify(row: &[f64], cats: &CategorySet) -> Result<f64> {
    if row.len() != cats.len() {
        return Err(Error::Dimension {
            expected: cats.len(),
            actual: row.len(),
        });
    }
    if let Some(bad) = row.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
        return Err(Error::invalid(
            "membership",
            format!("entries must lie in (0, 1], got {bad}"),
        ));
    }
    let mus = cats.categories.iter().map(|c| c.mu);
    let (lo, hi) = mus
        .clone()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| (lo.min(m), hi.max(m)));
    if lo == hi {
        return Ok(lo);
    }
    let total: f64 = row.iter().sum();
    let num: f64 = row.iter().zip(mus).map(|(u, m)| u * m).sum();
    // rounding can push the quotient a hair outside the hull
    Ok((num / total).clamp(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    fn cat(name: &str, mu: f64, sigma: f64) -> FuzzyCategory {
        FuzzyCategory::new(name, mu, sigma, 1.0).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_membership(5.0, 5.0, 2.0).unwrap(), 1.0);
        // exp(-1/2), exp(-9/2) from a 40-digit mpmath evaluation
        assert!(rel_eq(gaussian_membership(1.0, 0.0, 1.0).unwrap(), 0.606_530_659_712_633_4, 1e-12));
        assert!(rel_eq(gaussian_membership(0.0, 3.0, 1.0).unwrap(), 0.011_108_996_538_242_306, 1e-12));
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rational_membership(7.25, 7.25, 0.3, 5.5).unwrap(), 1.0);
        assert_eq!(rational_membership(1.0, 0.0, 1.0, 2.0).unwrap(), 0.5);
        assert!(rel_eq(rational_membership(3.0, 0.0, 1.0, 2.0).unwrap(), 0.1, 1e-12));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(gaussian_membership(0.0, 0.0, 0.0).is_err());
        assert!(gaussian_membership(0.0, 0.0, -1.0).is_err());
        assert!(gaussian_membership(f64::NAN, 0.0, 1.0).is_err());
        assert!(gaussian_membership(0.0, f64::INFINITY, 1.0).is_err());
        assert!(rational_membership(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(rational_membership(0.0, 0.0, 0.0, 2.0).is_err());
        assert!(rational_membership(0.0, 0.0, 1.0, f64::INFINITY).is_err());
        match rational_membership(0.0, 0.0, 1.0, -1.0) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "p"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(MembershipKind::rational(0.0).is_err());
    }

    #[test]
    fn category_validation() {
        assert!(FuzzyCategory::new("", 0.0, 1.0, 1.0).is_err());
        assert!(FuzzyCategory::new("a", 0.0, 0.0, 1.0).is_err());
        assert!(FuzzyCategory::new("a", 0.0, 1.0, -0.5).is_err());
        assert!(FuzzyCategory::new("a", 0.0, 1.0, f64::NAN).is_err());
        assert!(CategorySet::new(vec![], MembershipKind::Gaussian).is_err());
        let dup = CategorySet::new(vec![cat("a", 0.0, 1.0), cat("a", 1.0, 1.0)], MembershipKind::Gaussian);
        assert!(matches!(dup, Err(Error::InvalidParameter { field: "name", .. })));
        let bad_kind = CategorySet::new(vec![cat("a", 0.0, 1.0)], MembershipKind::Rational { p: -2.0 });
        assert!(bad_kind.is_err());
    }

    #[test]
    fn extreme_distances_stay_in_range() {
        let far = gaussian_membership(1e300, -1e300, 1e-300).unwrap();
        assert_eq!(far, f64::MIN_POSITIVE);
        let far = rational_membership(1e300, -1e300, 1e-300, 50.0).unwrap();
        assert_eq!(far, f64::MIN_POSITIVE);
        let near = gaussian_membership(1e-12, 0.0, 1.0).unwrap();
        assert_eq!(near, BELOW_ONE);
        let near = rational_membership(1e-12, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(near, BELOW_ONE);
    }

    #[test]
    fn fuzzify_examples() {
        let g = CategorySet::new(vec![cat("c", 0.0, 1.0)], MembershipKind::Gaussian).unwrap();
        assert_eq!(fuzzify(&[0.0], &g).unwrap().as_slice(), &[1.0]);

        let r = CategorySet::new(
            vec![cat("lo", 0.0, 1.0), cat("hi", 1.0, 1.0)],
            MembershipKind::Rational { p: 2.0 },
        )
        .unwrap();
        let m = fuzzify(&[0.0, 1.0], &r).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.row(0), &[1.0, 0.5]);
        assert_eq!(m.row(1), &[0.5, 1.0]);

        let g = CategorySet::new(vec![cat("a", 97.0, 10.0), cat("z", 122.0, 10.0)], MembershipKind::Gaussian)
            .unwrap();
        let m = fuzzify(&[97.0, 98.0], &g).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        // exp(-1/200)
        assert!(rel_eq(m.get(1, 0), 0.995_012_479_192_682_3, 1e-12));
    }

    #[test]
    fn fuzzify_empty_is_error() {
        let g = CategorySet::new(vec![cat("c", 0.0, 1.0)], MembershipKind::Gaussian).unwrap();
        assert!(matches!(fuzzify(&[], &g), Err(Error::EmptyInput(_))));
        assert!(fuzzify(&[f64::NAN], &g).is_err());
    }

    #[test]
    fn defuzzify_examples() {
        let one = CategorySet::new(vec![cat("c", 42.0, 3.0)], MembershipKind::default()).unwrap();
        assert_eq!(defuzzify(&[0.37], &one).unwrap(), 42.0);

        let two = CategorySet::new(vec![cat("a", 0.0, 1.0), cat("b", 10.0, 1.0)], MembershipKind::default())
            .unwrap();
        assert_eq!(defuzzify(&[0.5, 0.5], &two).unwrap(), 5.0);
        assert!(rel_eq(defuzzify(&[0.8, 0.2], &two).unwrap(), 2.0, 1e-12));
        assert!(matches!(defuzzify(&[0.5], &two), Err(Error::Dimension { expected: 2, actual: 1 })));
        assert!(defuzzify(&[0.0, 0.5], &two).is_err());
    }

    #[test]
    fn matrix_from_rows_checks() {
        assert!(MembershipMatrix::from_rows(2, 2, vec![1.0; 3]).is_err());
        assert!(MembershipMatrix::from_rows(1, 2, vec![1.0, 0.0]).is_err());
        assert!(MembershipMatrix::from_rows(1, 2, vec![1.0, 0.3]).is_ok());
    }

    fn kind_strategy() -> impl Strategy<Value = MembershipKind> {
        prop_oneof![
            Just(MembershipKind::Gaussian),
            (0.25f64..12.0).prop_map(|p| MembershipKind::Rational { p }),
        ]
    }

    proptest! {
        #[test]
        fn range_and_full_membership(x in -1e3f64..1e3, mu in -1e3f64..1e3, sigma in 1e-3f64..1e3, kind in kind_strategy()) {
            let u = cat("c", mu, sigma).membership(x, kind);
            prop_assert!(u > 0.0 && u <= 1.0);
            prop_assert_eq!(u == 1.0, x == mu);
            prop_assert_eq!(cat("c", mu, sigma).membership(mu, kind), 1.0);
        }

        // dyadic grid keeps mu +/- d exact so only the membership is under test
        #[test]
        fn symmetric_about_mu(mu_q in -4096i64..4096, d_q in 0i64..8192, sigma in 0.1f64..50.0, kind in kind_strategy()) {
            let (mu, d) = (mu_q as f64 / 64.0, d_q as f64 / 64.0);
            let c = cat("c", mu, sigma);
            prop_assert_eq!(c.membership(mu + d, kind), c.membership(mu - d, kind));
        }

        #[test]
        fn decays_with_distance(d1 in 0.0f64..8.0, gap in 1e-6f64..8.0, sigma in 0.1f64..10.0, kind in kind_strategy()) {
            let c = cat("c", 0.0, sigma);
            let (near, far) = (d1 * sigma, (d1 + gap) * sigma);
            prop_assert!(c.membership(far, kind) < c.membership(near, kind));
        }

        #[test]
        fn matrix_is_elementwise(values in prop::collection::vec(-500f64..500.0, 1..40), kind in kind_strategy()) {
            let cats = CategorySet::new(vec![cat("a", -10.0, 3.0), cat("b", 0.5, 0.25), cat("c", 120.0, 40.0)], kind).unwrap();
            let m = fuzzify(&values, &cats).unwrap();
            for (i, &x) in values.iter().enumerate() {
                for (j, c) in cats.categories().iter().enumerate() {
                    let scalar = match kind {
                        MembershipKind::Gaussian => gaussian_membership(x, c.mu(), c.sigma()).unwrap(),
                        MembershipKind::Rational { p } => rational_membership(x, c.mu(), c.sigma(), p).unwrap(),
                    };
                    prop_assert_eq!(m.get(i, j), scalar);
                }
            }
        }

        #[test]
        fn defuzzify_stays_in_hull(mus in prop::collection::vec(-1e4f64..1e4, 1..8), x in -1e4f64..1e4, kind in kind_strategy()) {
            let cats = CategorySet::new(
                mus.iter().enumerate().map(|(j, &m)| cat(&format!("c{j}"), m, 50.0)).collect(),
                kind,
            ).unwrap();
            let row = cats.memberships(x).unwrap();
            let c = defuzzify(&row, &cats).unwrap();
            let lo = mus.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = mus.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo <= c && c <= hi);
        }

        #[test]
        fn single_category_round_trip(mu in -1e6f64..1e6, x in -1e6f64..1e6, kind in kind_strategy()) {
            let cats = CategorySet::new(vec![cat("only", mu, 17.0)], kind).unwrap();
            let m = fuzzify(&[x], &cats).unwrap();
            prop_assert_eq!(defuzzify(m.row(0), &cats).unwrap(), mu);
        }
    }
}
