//! Cycle indices of automorphism groups and the counts derived from them.
//!
//! A cycle index is kept unreduced: one unit of coefficient per group
//! element, over the group order. The labeled count `n!/|A|` and the text
//! format both need the order itself.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::canonical::AutomorphismGroup;
use crate::error::{Error, Result};

/// Exponent vector `(e_1, ..., e_n)`: `e_i` cycles of length `i`.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndex {
    n: usize,
    terms: BTreeMap<Exponents, BigUint>,
    denominator: BigUint,
}

impl CycleIndex {
    /// Adds one to the coefficient of each element's cycle-type monomial.
    pub fn of_group(group: &AutomorphismGroup) -> Self {
        let mut terms: BTreeMap<Exponents, BigUint> = BTreeMap::new();
        for p in group.elements() {
            *terms.entry(p.cycle_type()).or_default() += 1u32;
        }
        CycleIndex {
            n: group.degree(),
            terms,
            denominator: BigUint::from(group.order()),
        }
    }

    /// Builds a cycle index from explicit terms, checking that every
    /// monomial is a cycle type of `n` and that coefficients sum to the
    /// denominator.
    pub fn from_terms(
        n: usize,
        terms: BTreeMap<Exponents, BigUint>,
        denominator: BigUint,
    ) -> Result<Self> {
        for e in terms.keys() {
            if e.len() != n {
                return Err(Error::NonIntegral {
                    what: format!("exponent vector of length {} for n={n}", e.len()),
                });
            }
            let weight: usize = e.iter().enumerate().map(|(i, &x)| (i + 1) * x as usize).sum();
            if weight != n {
                return Err(Error::NonIntegral {
                    what: format!("cycle type {e:?} of weight {weight} for n={n}"),
                });
            }
        }
        let total: BigUint = terms.values().sum();
        if total != denominator {
            return Err(Error::NonIntegral {
                what: format!("coefficient sum {total} over denominator {denominator}"),
            });
        }
        Ok(CycleIndex {
            n,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            denominator,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Terms in display order: descending lexicographic on `(e_1, ..., e_n)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigUint)> {
        self.terms.iter().rev()
    }

    /// `n! / |A|`: the number of distinct labelings of the graph.
    pub fn labeled_count(&self) -> Result<BigUint> {
        let fact = factorial(self.n);
        let (q, r) = fact.div_rem(&self.denominator);
        if !r.is_zero() {
            return Err(Error::NonIntegral {
                what: format!("{}!/{}", self.n, self.denominator),
            });
        }
        Ok(q)
    }

    /// Substitutes `t_i -> 1 + x^i` and expands. Coefficient `r` counts the
    /// ways to mark `r` nodes up to automorphism.
    pub fn rooted_polynomial(&self) -> Result<RootedPolynomial> {
        let mut acc = vec![BigRational::zero(); self.n + 1];
        let denom = BigRational::from_integer(self.denominator.clone().into());
        for (exps, coeff) in &self.terms {
            let mut poly = vec![BigRational::one()];
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    poly = mul_one_plus_power(&poly, i + 1);
                }
            }
            let scale = BigRational::from_integer(coeff.clone().into()) / &denom;
            for (slot, c) in acc.iter_mut().zip(poly) {
                *slot += c * &scale;
            }
        }
        let coefficients = acc
            .into_iter()
            .enumerate()
            .map(|(r, c)| {
                if !c.is_integer() {
                    return Err(Error::NonIntegral {
                        what: format!("rooted coefficient x^{r} = {c}"),
                    });
                }
                c.to_integer().to_biguint().ok_or_else(|| Error::NonIntegral {
                    what: format!("negative rooted coefficient x^{r}"),
                })
            })
            .collect::<Result<_>>()?;
        Ok(RootedPolynomial { coefficients })
    }
}

/// `poly * (1 + x^i)`.
fn mul_one_plus_power(poly: &[BigRational], i: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); poly.len() + i];
    for (d, c) in poly.iter().enumerate() {
        out[d] += c;
        out[d + i] += c;
    }
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Integer polynomial in `x`; `coefficients[r]` is the count with `r` marked nodes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootedPolynomial {
    pub coefficients: Vec<BigUint>,
}

impl RootedPolynomial {
    pub fn zero(n: usize) -> Self {
        RootedPolynomial {
            coefficients: vec![BigUint::zero(); n + 1],
        }
    }

    pub fn add_assign(&mut self, other: &RootedPolynomial) {
        if self.coefficients.len() < other.coefficients.len() {
            self.coefficients
                .resize(other.coefficients.len(), BigUint::zero());
        }
        for (a, b) in self.coefficients.iter_mut().zip(&other.coefficients) {
            *a += b;
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        c.iter().eq(c.iter().rev())
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coefficients.iter().map(|c| c.to_u64()).collect()
    }
}

/// Rooted counts per node count: row `n` sums the rooted polynomials of
/// every class on `n` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootedTable {
    pub rows: BTreeMap<usize, RootedPolynomial>,
}

impl RootedTable {
    pub fn row(&self, n: usize) -> Option<&RootedPolynomial> {
        self.rows.get(&n)
    }
}

/// Sums rooted polynomials over complete per-`n` record lists.
pub fn rooted_table<'a, I>(records_by_n: I) -> Result<RootedTable>
where
    I: IntoIterator<Item = (usize, &'a [crate::enumerate::GraphRecord])>,
{
    let mut table = RootedTable::default();
    for (n, records) in records_by_n {
        let mut row = RootedPolynomial::zero(n);
        for rec in records {
            row.add_assign(&rec.cycle_index.rooted_polynomial()?);
        }
        table.rows.insert(n, row);
    }
    Ok(table)
}
