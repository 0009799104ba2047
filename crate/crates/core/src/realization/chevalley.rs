//! Chevalley basis structure constants.
//!
//! Signs follow the extraspecial-pair convention: for every non-simple
//! positive root `ξ`, the pair `(α₀, β₀)` with `α₀ + β₀ = ξ` and `α₀` minimal
//! gets `N_{α₀,β₀} = p + 1 > 0`; every other constant is forced by the
//! quadratic relations between structure constants. The basis is
//! `h_0..h_{r-1}`, then `e_α` for positive roots in order, then `e_{-α}` in
//! the same order.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::rootsystem::{Root, RootSystemData};
use crate::scalar::{qi, rational_to_i64, Q};

/// Index bookkeeping for the split Chevalley basis.
pub(crate) struct ChevalleyBasis<'a> {
    rsd: &'a RootSystemData,
    index: HashMap<Root, usize>,
}

impl<'a> ChevalleyBasis<'a> {
    pub(crate) fn new(rsd: &'a RootSystemData) -> Self {
        let index = rsd
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        ChevalleyBasis { rsd, index }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rsd.rank() + 2 * self.rsd.positive_roots.len()
    }

    /// Coordinate of `e_α` for a positive or negative root.
    pub(crate) fn root_coordinate(&self, root: &Root) -> Option<usize> {
        let r = self.rsd.rank();
        let n = self.rsd.positive_roots.len();
        if root.is_positive() {
            self.index.get(root).map(|i| r + i)
        } else {
            self.index.get(&root.neg()).map(|i| r + n + i)
        }
    }

    fn is_root(&self, root: &Root) -> bool {
        !root.is_zero() && self.root_coordinate(root).is_some()
    }
}

/// Structure constants `N_{α,β}` of `[e_α, e_β] = N_{α,β} e_{α+β}`.
struct Constants<'a> {
    basis: &'a ChevalleyBasis<'a>,
    /// Both orders of every positive pair with positive sum.
    positive: HashMap<(usize, usize), i64>,
}

impl Constants<'_> {
    fn inner(&self, a: &Root, b: &Root) -> i64 {
        self.basis.rsd.cartan.root_inner(a, b)
    }

    /// `N_{x,y}` for roots with `x + y` a root; zero when `x + y` is not a root.
    fn get(&self, x: &Root, y: &Root) -> Result<i64> {
        let z = x.add(y);
        if !self.basis.is_root(&z) {
            return Ok(0);
        }
        match (x.is_positive(), y.is_positive()) {
            (true, true) => {
                let i = self.basis.index[x];
                let j = self.basis.index[y];
                self.positive.get(&(i, j)).copied().ok_or_else(|| {
                    Error::construction(format!("structure constant N({x},{y}) requested before it was fixed"))
                })
            }
            (false, false) => Ok(-self.get(&x.neg(), &y.neg())?),
            _ => {
                // x + y + w = 0: N_{x,y}/(w,w) = N_{y,w}/(x,x) = N_{w,x}/(y,y)
                let w = z.neg();
                let (num, den) = if y.is_positive() == w.is_positive() {
                    (self.inner(&w, &w) * self.get(y, &w)?, self.inner(x, x))
                } else {
                    (self.inner(&w, &w) * self.get(&w, x)?, self.inner(y, y))
                };
                if num % den != 0 {
                    return Err(Error::construction(format!("non-integral structure constant N({x},{y})")));
                }
                Ok(num / den)
            }
        }
    }
}

/// Largest `p` with `β - pα` a root.
fn string_below(basis: &ChevalleyBasis<'_>, alpha: &Root, beta: &Root) -> i64 {
    let mut p = 0;
    while basis.is_root(&beta.sub(&alpha.scaled(p + 1))) {
        p += 1;
    }
    p
}

fn fix_positive_constants(basis: &ChevalleyBasis<'_>) -> Result<HashMap<(usize, usize), i64>> {
    let rsd = basis.rsd;
    let roots = &rsd.positive_roots;
    let mut consts = Constants {
        basis,
        positive: HashMap::new(),
    };
    for xi in roots.iter().filter(|x| x.height() > 1) {
        // special pairs (α, β), α ≺ β, in root order
        let pairs: Vec<(usize, usize)> = roots
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let b = xi.sub(a);
                let j = *basis.index.get(&b)?;
                (i < j).then_some((i, j))
            })
            .collect();
        let &(i0, j0) = pairs
            .first()
            .ok_or_else(|| Error::construction(format!("root {xi} has no decomposition")))?;
        let (a0, b0) = (&roots[i0], &roots[j0]);
        let n0 = string_below(basis, a0, b0) + 1;
        consts.positive.insert((i0, j0), n0);
        consts.positive.insert((j0, i0), -n0);
        let xi_len = qi(consts.inner(xi, xi));
        for &(i, j) in &pairs[1..] {
            let (a, b) = (&roots[i], &roots[j]);
            let mut bracket = Q::zero();
            let d1 = b.sub(a0);
            if basis.is_root(&d1) {
                let t = qi(consts.get(b, &a0.neg())? * consts.get(a, &b0.neg())?);
                bracket += t / qi(consts.inner(&d1, &d1));
            }
            let d2 = a.sub(a0);
            if basis.is_root(&d2) {
                let t = qi(consts.get(&a0.neg(), a)? * consts.get(b, &b0.neg())?);
                bracket += t / qi(consts.inner(&d2, &d2));
            }
            let value = xi_len.clone() * bracket / qi(n0);
            let n = rational_to_i64(&value)
                .ok_or_else(|| Error::construction(format!("non-integral structure constant N({a},{b})")))?;
            let expected = string_below(basis, a, b) + 1;
            if n.abs() != expected {
                return Err(Error::construction(format!(
                    "|N({a},{b})| = {} but the root string predicts {expected}",
                    n.abs()
                )));
            }
            consts.positive.insert((i, j), n);
            consts.positive.insert((j, i), -n);
        }
    }
    Ok(consts.positive)
}

/// Structure constants of the split Chevalley basis.
pub(crate) fn chevalley_constants(rsd: &RootSystemData) -> Result<StructureConstants<Q>> {
    let basis = ChevalleyBasis::new(rsd);
    let positive = fix_positive_constants(&basis)?;
    let consts = Constants {
        basis: &basis,
        positive,
    };
    let cartan = &rsd.cartan;
    let r = rsd.rank();
    let all_roots: Vec<Root> = rsd
        .positive_roots
        .iter()
        .cloned()
        .chain(rsd.positive_roots.iter().map(Root::neg))
        .collect();
    let mut entries: Vec<(usize, usize, usize, Q)> = Vec::new();
    for alpha in &all_roots {
        let x = basis.root_coordinate(alpha).unwrap();
        // [h_j, e_α] = α(h_j) e_α with α(h_j) = Σ_i c_i C[i][j]
        for j in 0..r {
            let v = cartan.coroot_pairing(alpha, j);
            if v != 0 {
                entries.push((j, x, x, qi(v)));
                entries.push((x, j, x, qi(-v)));
            }
        }
        // [e_α, e_{-α}] = h_α = Σ_i c_i (α_i, α_i)/(α, α) h_i
        let y = basis.root_coordinate(&alpha.neg()).unwrap();
        let len = cartan.root_inner(alpha, alpha);
        for i in 0..r {
            let c = alpha.coeffs[i];
            if c != 0 {
                let simple = Root::simple(r, i);
                let coef = Q::new((c * cartan.root_inner(&simple, &simple)).into(), len.into());
                entries.push((x, y, i, coef));
            }
        }
        for beta in &all_roots {
            let n = consts.get(alpha, beta)?;
            if n != 0 {
                let z = basis.root_coordinate(&alpha.add(beta)).unwrap();
                entries.push((x, basis.root_coordinate(beta).unwrap(), z, qi(n)));
            }
        }
    }
    let sc = StructureConstants::from_entries(basis.dim(), entries);
    if !sc.is_antisymmetric() {
        return Err(Error::construction("Chevalley bracket is not antisymmetric"));
    }
    if let Some((i, j, k)) = sc.jacobi_violation() {
        return Err(Error::construction(format!("Jacobi identity fails on basis triple ({i},{j},{k})")));
    }
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{cartan_matrix, generate_positive_roots};

    fn constants(series: char, rank: usize) -> StructureConstants<Q> {
        chevalley_constants(&generate_positive_roots(&cartan_matrix(series, rank).unwrap())).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let s = constants('A', 1);
        // basis h, e, f
        assert_eq!(s.coefficient(0, 1, 1), qi(2));
        assert_eq!(s.coefficient(0, 2, 2), qi(-2));
        assert_eq!(s.coefficient(1, 2, 0), qi(1));
    }

    #[test]
    fn all_rank_two_types_satisfy_jacobi() {
        for (s, r) in [('A', 2), ('B', 2), ('G', 2)] {
            let sc = constants(s, r);
            assert_eq!(sc.jacobi_violation(), None, "{s}{r}");
        }
    }

    #[test]
    fn extraspecial_constants_are_positive() {
        let a2 = generate_positive_roots(&cartan_matrix('A', 2).unwrap());
        let sc = chevalley_constants(&a2).unwrap();
        // [e_{α0}, e_{α1}] = +e_{α0+α1}
        assert_eq!(sc.coefficient(2, 3, 4), qi(1));
        assert_eq!(sc.coefficient(3, 2, 4), qi(-1));
    }
}
