//! Finite root systems: Cartan matrices, positive roots and highest roots.
//!
//! Cartan matrices follow the convention `C[i][j] = ⟨α_i, α_j^∨⟩ =
//! 2(α_i, α_j) / (α_j, α_j)`. With this convention the builtin labeling is
//! Bourbaki's: in `B_n` the last simple root is short, in `C_n` it is long,
//! in `F4` the roots `α_0, α_1` are long, and in `G2` the root `α_0` is short,
//! giving `G2 = [[2, -1], [-3, 2]]` and highest root `3α_0 + 2α_1`.
//!
//! Simple roots are addressed by 0-based index everywhere.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{qi, Q};

/// A root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Indices of simple roots with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Coefficient-wise `self ≥ other`.
    pub fn dominates(&self, other: &Root) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sort key for positive roots: by height, then coefficient vectors in
/// decreasing lexicographic order (so simple roots come out as α_0, α_1, …).
fn root_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs))
}

/// A validated Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    series_labels: Option<Vec<(char, usize)>>,
    /// Half squared lengths `(α_i, α_i) / 2`, integral and coprime per component.
    half_lengths: Vec<i64>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn series_labels(&self) -> Option<&[(char, usize)]> {
        self.series_labels.as_deref()
    }

    /// Human-readable name such as `A2` or `A1+B3`, or `custom`.
    pub fn name(&self) -> String {
        match &self.series_labels {
            Some(labels) => labels
                .iter()
                .map(|(s, r)| format!("{s}{r}"))
                .collect::<Vec<_>>()
                .join("+"),
            None => "custom".to_string(),
        }
    }

    /// Symmetric invariant form on simple roots, `(α_i, α_j) = C[i][j] · d_j`.
    pub fn inner_products(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.entries[i][j] * self.half_lengths[j]).collect())
            .collect()
    }

    pub fn half_lengths(&self) -> &[i64] {
        &self.half_lengths
    }

    /// `(α, β)` for roots in simple-root coordinates.
    pub fn root_inner(&self, a: &Root, b: &Root) -> i64 {
        let r = self.rank();
        let mut total = 0;
        for i in 0..r {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..r {
                total += a.coeffs[i] * b.coeffs[j] * self.entries[i][j] * self.half_lengths[j];
            }
        }
        total
    }

    /// `⟨β, α_i^∨⟩ = Σ_j b_j C[j][i]`.
    pub fn coroot_pairing(&self, beta: &Root, i: usize) -> i64 {
        beta.coeffs
            .iter()
            .enumerate()
            .map(|(j, &b)| b * self.entries[j][i])
            .sum()
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                comp.push(i);
                for j in 0..r {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The Cartan matrix as a rational matrix.
    pub fn to_matrix(&self) -> Matrix<Q> {
        let r = self.rank();
        Matrix::from_fn(r, r, |i, j| qi(self.entries[i][j]))
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Builds the Cartan matrix of a builtin finite type.
pub fn cartan_matrix(series: char, rank: usize) -> Result<CartanMatrix> {
    let invalid = || Error::input(format!("no finite root system of type {series}{rank}"));
    let s = series.to_ascii_uppercase();
    // (α_i, α_i) and the off-diagonal inner products (α_i, α_j) on edges
    let (lengths, edges): (Vec<i64>, Vec<(usize, usize, i64)>) = match s {
        'A' if rank >= 1 => (vec![2; rank], chain(rank, -1, -1)),
        'B' if rank >= 2 => {
            let mut lengths = vec![4; rank];
            lengths[rank - 1] = 2;
            (lengths, chain(rank, -2, -2))
        }
        'C' if rank >= 3 => {
            let mut lengths = vec![2; rank];
            lengths[rank - 1] = 4;
            (lengths, chain(rank, -1, -2))
        }
        'D' if rank >= 4 => {
            let mut edges = chain(rank - 1, -1, -1);
            edges.push((rank - 3, rank - 1, -1));
            (vec![2; rank], edges)
        }
        'E' if (6..=8).contains(&rank) => {
            // Bourbaki: 1-3-4-5-6(-7-8) with 2 attached to 4 (1-based)
            let mut edges = vec![(0, 2, -1), (1, 3, -1)];
            for i in 2..rank - 1 {
                edges.push((i, i + 1, -1));
            }
            (vec![2; rank], edges)
        }
        'F' if rank == 4 => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
        'G' if rank == 2 => (vec![2, 6], vec![(0, 1, -3)]),
        _ => return Err(invalid()),
    };
    let mut form = vec![vec![0i64; rank]; rank];
    for (i, l) in lengths.iter().enumerate() {
        form[i][i] = *l;
    }
    for (i, j, v) in edges {
        form[i][j] = v;
        form[j][i] = v;
    }
    let entries = (0..rank)
        .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[j][j]).collect())
        .collect();
    let mut cm = validate_cartan(entries)?;
    cm.series_labels = Some(vec![(s, rank)]);
    Ok(cm)
}

fn chain(n: usize, inner: i64, last: i64) -> Vec<(usize, usize, i64)> {
    (0..n.saturating_sub(1))
        .map(|i| (i, i + 1, if i + 2 == n { last } else { inner }))
        .collect()
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[CartanMatrix]) -> CartanMatrix {
    let r: usize = blocks.iter().map(CartanMatrix::rank).sum();
    let mut entries = vec![vec![0; r]; r];
    let mut half_lengths = Vec::with_capacity(r);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                entries[offset + i][offset + j] = b.entries[i][j];
            }
        }
        half_lengths.extend_from_slice(&b.half_lengths);
        offset += b.rank();
    }
    let series_labels = blocks
        .iter()
        .map(|b| b.series_labels.clone())
        .collect::<Option<Vec<_>>>()
        .map(|v| v.concat());
    CartanMatrix {
        entries,
        series_labels,
        half_lengths,
    }
}

/// Parses `A2`, `G2`, `A1+B3` into a Cartan matrix.
pub fn parse_type(spec: &str) -> Result<CartanMatrix> {
    let blocks = spec
        .split('+')
        .map(|part| {
            let part = part.trim();
            let mut chars = part.chars();
            let series = chars
                .next()
                .ok_or_else(|| Error::input(format!("empty type in {spec:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::input(format!("bad rank in type {part:?}")))?;
            cartan_matrix(series, rank)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(direct_sum(&blocks))
}

/// Validates an integer matrix as a Cartan matrix of finite type.
///
/// Both transposes of a non-simply-laced matrix are accepted; they describe
/// the same type with long and short roots relabeled.
pub fn validate_cartan(entries: Vec<Vec<i64>>) -> Result<CartanMatrix> {
    let r = entries.len();
    if r == 0 {
        return Err(Error::Cartan {
            invariant: "shape",
            detail: "matrix is empty".into(),
        });
    }
    if entries.iter().any(|row| row.len() != r) {
        return Err(Error::Cartan {
            invariant: "shape",
            detail: "matrix is not square".into(),
        });
    }
    for i in 0..r {
        if entries[i][i] != 2 {
            return Err(Error::Cartan {
                invariant: "diagonal",
                detail: format!("entry ({i},{i}) is {} instead of 2", entries[i][i]),
            });
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if entries[i][j] > 0 {
                return Err(Error::Cartan {
                    invariant: "off-diagonal sign",
                    detail: format!("entry ({i},{j}) is positive"),
                });
            }
            if (entries[i][j] == 0) != (entries[j][i] == 0) {
                return Err(Error::Cartan {
                    invariant: "zero pattern",
                    detail: format!("entry ({i},{j}) and ({j},{i}) disagree on being zero"),
                });
            }
        }
    }
    let half_lengths = symmetrize(&entries)?;
    // Principal minors of C are positive iff the symmetrized form C·D is
    // positive definite (D is a positive diagonal matrix).
    let sym = Matrix::from_fn(r, r, |i, j| qi(entries[i][j] * half_lengths[j]));
    if !sym.is_positive_definite() {
        let det = Matrix::from_fn(r, r, |i, j| qi(entries[i][j])).determinant();
        return Err(Error::Cartan {
            invariant: "finite type",
            detail: format!("not every principal minor is positive (determinant {det})"),
        });
    }
    Ok(CartanMatrix {
        entries,
        series_labels: None,
        half_lengths,
    })
}

/// Finds positive `d` with `C[i][j] d_j = C[j][i] d_i`, integral and coprime
/// on each component.
fn symmetrize(entries: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = entries.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(qi(1));
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i == j || entries[i][j] == 0 {
                    continue;
                }
                // C[i][j] d_j = C[j][i] d_i
                let want = di.clone() * qi(entries[j][i]) / qi(entries[i][j]);
                match &d[j] {
                    Some(existing) if *existing != want => {
                        return Err(Error::Cartan {
                            invariant: "finite type",
                            detail: "matrix is not symmetrizable".into(),
                        });
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(want);
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        comps.push(comp);
    }
    let mut out = vec![0i64; r];
    for comp in comps {
        let lcm = comp.iter().fold(num_bigint::BigInt::from(1), |acc, &i| {
            num_integer_lcm(&acc, d[i].as_ref().unwrap().denom())
        });
        let scaled: Vec<i64> = comp
            .iter()
            .map(|&i| {
                let v = d[i].clone().unwrap() * Q::from_integer(lcm.clone());
                crate::scalar::rational_to_i64(&v).expect("symmetrizer overflow")
            })
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &v| gcd(acc, v));
        for (&i, v) in comp.iter().zip(scaled) {
            out[i] = v / g;
        }
    }
    Ok(out)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn num_integer_lcm(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Zero;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let t = &x % &y;
        x = y;
        y = t;
    }
    a * b / x
}

/// Combinatorial data of a root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemData {
    pub cartan: CartanMatrix,
    /// Positive roots ordered by height, then by decreasing coefficients.
    pub positive_roots: Vec<Root>,
    /// Partition of simple-root indices into irreducible blocks.
    pub components: Vec<Vec<usize>>,
    /// One highest root per component, in component order.
    pub highest_roots: Vec<Root>,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Assembles root data from an explicit list of positive roots. Used
    /// for externally supplied realizations, whose restricted root systems
    /// need not be reduced.
    pub fn from_positive_roots(cartan: CartanMatrix, mut roots: Vec<Root>) -> Result<Self> {
        let r = cartan.rank();
        if roots.iter().any(|a| a.rank() != r || !a.is_positive()) {
            return Err(Error::input("positive roots must be nonnegative vectors of the right rank"));
        }
        roots.sort_by(root_order);
        roots.dedup();
        for i in 0..r {
            if !roots.contains(&Root::simple(r, i)) {
                return Err(Error::input(format!("simple root {i} is missing from the root list")));
            }
        }
        let components = cartan.components();
        let mut highest_roots = Vec::new();
        for comp in &components {
            let members: Vec<&Root> = roots
                .iter()
                .filter(|a| a.support().iter().all(|i| comp.contains(i)))
                .collect();
            let top = members
                .iter()
                .max_by(|a, b| root_order(a, b))
                .copied()
                .cloned()
                .ok_or_else(|| Error::input("empty component"))?;
            if !members.iter().all(|a| top.dominates(a)) {
                return Err(Error::input(format!(
                    "root {top} of maximal height does not dominate its component"
                )));
            }
            highest_roots.push(top);
        }
        Ok(RootSystemData {
            cartan,
            positive_roots: roots,
            components,
            highest_roots,
        })
    }

    /// Index of a positive root in `positive_roots`.
    pub fn position(&self, root: &Root) -> Option<usize> {
        self.positive_roots.iter().position(|a| a == root)
    }

    /// Component index containing simple root `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&i))
            .expect("simple root index out of range")
    }
}

/// Enumerates the positive roots by root strings.
///
/// A positive root `β ≠ α_i` extends to `β + α_i` exactly when the
/// `α_i`-string through `β`, which starts at `β - pα_i`, reaches past `β`:
/// `q = p - ⟨β, α_i^∨⟩ > 0`. Working height by height, every `β - kα_i` is
/// already known when `β` is processed.
pub fn generate_positive_roots(cartan: &CartanMatrix) -> RootSystemData {
    let r = cartan.rank();
    let mut known: HashSet<Root> = HashSet::new();
    let mut layer: Vec<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut all = Vec::new();
    known.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let ai = Root::simple(r, i);
                if *beta == ai {
                    continue;
                }
                let mut p = 0;
                while known.contains(&beta.sub(&ai.scaled(p + 1))) {
                    p += 1;
                }
                let q = p - cartan.coroot_pairing(beta, i);
                let up = beta.add(&ai);
                if q > 0 && known.insert(up.clone()) {
                    next.push(up);
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    all.sort_by(root_order);
    RootSystemData::from_positive_roots(cartan.clone(), all)
        .expect("root string enumeration yields a valid root system")
}

/// Positive roots obtained as the closure of the simple roots under simple
/// reflections `s_i(β) = β - ⟨β, α_i^∨⟩ α_i`. Independent of
/// [`generate_positive_roots`]; used to cross-check it.
pub fn positive_roots_by_reflection(cartan: &CartanMatrix) -> Vec<Root> {
    let r = cartan.rank();
    let mut seen: HashSet<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut queue: VecDeque<Root> = seen.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let k = cartan.coroot_pairing(&beta, i);
            let image = beta.sub(&Root::simple(r, i).scaled(k));
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut pos: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
    pos.sort_by(root_order);
    pos
}

fn check_subset(rank: usize, subset: &[usize]) -> Result<()> {
    match subset.iter().find(|&&i| i >= rank) {
        Some(i) => Err(Error::input(format!("simple root index {i} out of range for rank {rank}"))),
        None => Ok(()),
    }
}

/// The roots `±β` whose support lies in `subset`: positives first, then
/// their negatives in the same order.
pub fn spanned_roots(rsd: &RootSystemData, subset: &[usize]) -> Result<Vec<Root>> {
    check_subset(rsd.rank(), subset)?;
    let pos: Vec<Root> = rsd
        .positive_roots
        .iter()
        .filter(|a| a.support().iter().all(|i| subset.contains(i)))
        .cloned()
        .collect();
    let neg: Vec<Root> = pos.iter().map(Root::neg).collect();
    Ok(pos.into_iter().chain(neg).collect())
}

/// Whether `subset` is orthogonal to its complement: `C[i][j] = 0` for all
/// `i ∈ subset`, `j ∉ subset`.
pub fn is_trivial_subset(cartan: &CartanMatrix, subset: &[usize]) -> bool {
    let r = cartan.rank();
    subset.iter().filter(|&&i| i < r).all(|&i| {
        (0..r)
            .filter(|j| !subset.contains(j))
            .all(|j| cartan.get(i, j) == 0 && cartan.get(j, i) == 0)
    })
}

/// All subsets of `0..rank`, the full set included, in lexicographic order
/// of their sorted index lists.
pub fn all_subsets(rank: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << rank))
        .map(|mask| (0..rank).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort();
    subsets
}
