//! Exact dynamic programming for the arrays v(n,j), c(n,i,j), b(n,i,j)
//! and the sequence a_n.
//!
//! Tables are dense and triangular, indexed one-based as `[n][i][j]`.
//! Inner sums that run along a row or a diagonal of a marginal are
//! answered from prefix sums, which keeps a full build at O(N⁴).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Pascal's triangle up to a fixed size; out-of-range arguments give 0.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl Binomials {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        for a in 0..=max {
            let mut row = vec![BigUint::one(); a + 1];
            for b in 1..a {
                row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
            }
            rows.push(row);
        }
        Self {
            rows,
            zero: BigUint::zero(),
        }
    }

    pub fn get(&self, a: i64, b: i64) -> &BigUint {
        if a < 0 || b < 0 || b > a {
            return &self.zero;
        }
        &self.rows[a as usize][b as usize]
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Suffix sums of a one-based row: `out[t] = Σ_{k ≥ t} row[k]`, with one
/// trailing zero so `out[len]` is valid.
fn suffix_sums(row: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); row.len() + 1];
    for t in (0..row.len()).rev() {
        out[t] = &out[t + 1] + &row[t];
    }
    out
}

/// v(n,j): permutations of `[n]` avoiding 1̄2̄3 and 12̄3̄ that end in j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VTable {
    /// `cells[n][j]`, `1 ≤ j ≤ n`; index 0 unused.
    cells: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl VTable {
    pub fn max_n(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn get(&self, n: usize, j: usize) -> &BigUint {
        if n == 0 || n > self.max_n() || j == 0 || j > n {
            return &self.zero;
        }
        &self.cells[n][j]
    }

    /// Σ_j v(n,j).
    pub fn total(&self, n: usize) -> BigUint {
        (1..=n).map(|j| self.get(n, j)).sum()
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.cells[n][1..]
    }
}

/// Fills v(n,j) for `1 ≤ j ≤ n ≤ max_n`.
pub fn compute_v(max_n: usize) -> VTable {
    assert!(max_n >= 1, "N must be positive");
    let binom = Binomials::new(max_n);
    let mut cells: Vec<Vec<BigUint>> = vec![vec![]];
    // suffix[n][t] = Σ_{i ≥ t} v(n,i)
    let mut suffix: Vec<Vec<BigUint>> = vec![vec![BigUint::zero()]];
    for n in 1..=max_n {
        let mut row = vec![BigUint::zero(); n + 1];
        row[n] = BigUint::one();
        if n >= 2 {
            row[1] = suffix[n - 1][1].clone();
        }
        for j in 2..n {
            let mut val = suffix[n - 1][j].clone();
            for d in 2..=j {
                let w = binom.get(j as i64 - 2, d as i64 - 2);
                // Σ_{i=j+1}^{n} v(n-d, i-d): the tail of row n-d from j+1-d
                val += w * &suffix[n - d][j + 1 - d];
            }
            row[j] = val;
        }
        suffix.push(suffix_sums(&row));
        cells.push(row);
    }
    VTable {
        cells,
        zero: BigUint::zero(),
    }
}

/// A three-index count array with its final-letter marginals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    /// `cells[n][i][j]`, `1 ≤ i, j ≤ n`.
    cells: Vec<Vec<Vec<BigUint>>>,
    /// `marginal[n][j] = Σ_i cells[n][i][j]`.
    marginal: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl CountTable {
    fn with_size(max_n: usize) -> Self {
        Self {
            cells: (0..=max_n)
                .map(|n| vec![vec![BigUint::zero(); n + 1]; n + 1])
                .collect(),
            marginal: (0..=max_n).map(|n| vec![BigUint::zero(); n + 1]).collect(),
            zero: BigUint::zero(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> &BigUint {
        if n > self.max_n() || i == 0 || j == 0 || i > n || j > n {
            return &self.zero;
        }
        &self.cells[n][i][j]
    }

    /// Σ_i cell(n,i,j); zero outside the table.
    pub fn marginal(&self, n: usize, j: usize) -> &BigUint {
        if n > self.max_n() || j == 0 || j > n {
            return &self.zero;
        }
        &self.marginal[n][j]
    }

    /// Σ_{i,j} cell(n,i,j).
    pub fn total(&self, n: usize) -> BigUint {
        if n > self.max_n() {
            return BigUint::zero();
        }
        self.marginal[n].iter().sum()
    }

    fn finish_row(&mut self, n: usize) {
        for j in 1..=n {
            self.marginal[n][j] = (1..=n).map(|i| &self.cells[n][i][j]).sum();
        }
    }

    /// Cells `(i, j)` where the stored marginal disagrees with its column sum.
    pub fn marginal_violations(&self, n: usize) -> Vec<usize> {
        (1..=n)
            .filter(|&j| {
                let s: BigUint = (1..=n).map(|i| &self.cells[n][i][j]).sum();
                s != self.marginal[n][j]
            })
            .collect()
    }

    /// Adds one to a cell and its marginal. Exists so verification can be
    /// shown to catch a bad cell.
    #[doc(hidden)]
    pub fn inject_fault(&mut self, n: usize, i: usize, j: usize) {
        self.cells[n][i][j] += 1u32;
        self.marginal[n][j] += 1u32;
    }
}

/// c(n,i,j): members of L_n^* with 1 left of n and 2 right of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTable(pub CountTable);

/// b(n,i,j): members of L_n^* with 1 right of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BTable(pub CountTable);

impl CTable {
    pub fn max_n(&self) -> usize {
        self.0.max_n()
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> &BigUint {
        self.0.get(n, i, j)
    }

    /// c(n,k), taken as zero unless `n > k ≥ 2`.
    pub fn marginal(&self, n: i64, k: i64) -> &BigUint {
        if !(n > k && k >= 2) || n as usize > self.max_n() {
            return &self.0.zero;
        }
        self.0.marginal(n as usize, k as usize)
    }

    pub fn total(&self, n: usize) -> BigUint {
        self.0.total(n)
    }

    /// Violations of the boundary values and forced zeros, as `(n,i,j)`.
    pub fn structural_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for n in 2..=self.max_n() {
            for i in 1..=n {
                for j in 1..=n {
                    let cell = self.get(n, i, j);
                    let expected_zero = i == j
                        || j == n
                        || j == 1
                        || i == 1
                        || (n >= 4 && 3 <= i && i < j && j < n)
                        || (n == 2);
                    let forced = if i == n && j < n && n >= 3 {
                        Some(BigUint::from((j == 2) as u32))
                    } else if expected_zero {
                        Some(BigUint::zero())
                    } else if n >= 4 && i == 2 && j == n - 1 {
                        Some(pow2(n - 4))
                    } else {
                        None
                    };
                    if let Some(f) = forced {
                        if *cell != f {
                            bad.push((n, i, j));
                        }
                    }
                }
            }
        }
        bad
    }
}

impl BTable {
    pub fn max_n(&self) -> usize {
        self.0.max_n()
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> &BigUint {
        self.0.get(n, i, j)
    }

    /// b(n,k), zero outside `2 ≤ n ≤ N`, `1 ≤ k ≤ n`.
    pub fn marginal(&self, n: i64, k: i64) -> &BigUint {
        if n < 2 || k < 1 || k > n || n as usize > self.max_n() {
            return &self.0.zero;
        }
        self.0.marginal(n as usize, k as usize)
    }

    pub fn total(&self, n: usize) -> BigUint {
        self.0.total(n)
    }

    pub fn structural_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for n in 2..=self.max_n() {
            for i in 1..=n {
                for j in 1..=n {
                    let cell = self.get(n, i, j);
                    let forced = if i == j || j == n {
                        Some(BigUint::zero())
                    } else if i == n {
                        Some(BigUint::from((j == 1) as u32))
                    } else if 2 <= i && i < j && j < n {
                        Some(BigUint::zero())
                    } else {
                        None
                    };
                    if let Some(f) = forced {
                        if *cell != f {
                            bad.push((n, i, j));
                        }
                    }
                }
            }
        }
        bad
    }
}

/// Fills c(n,i,j) for `n ≤ max_n` from the v table.
pub fn compute_c(max_n: usize, v: &VTable) -> Result<CTable> {
    if v.max_n() < max_n {
        return Err(Error::TableMismatch(format!(
            "v table reaches n = {}, c needs {max_n}",
            v.max_n()
        )));
    }
    let binom = Binomials::new(max_n);
    let v_suffix: Vec<Vec<BigUint>> = (0..=max_n)
        .map(|m| {
            let mut row = vec![BigUint::zero()];
            row.extend((1..=m).map(|j| v.get(m, j).clone()));
            suffix_sums(&row)
        })
        .collect();
    let mut table = CTable(CountTable::with_size(max_n));
    for n in 3..=max_n {
        let mut cells = std::mem::take(&mut table.0.cells[n]);
        cells[n][2] = BigUint::one();
        if n >= 4 {
            let ni = n as i64;
            for i in 3..n {
                cells[i][2] = (2..i as i64)
                    .map(|d| table.marginal(ni - i as i64 + d, d))
                    .sum();
                for j in 3..i {
                    cells[i][j] = table.marginal(ni - 1, i as i64 - 1).clone();
                }
            }
            cells[2][n - 1] = pow2(n - 4);
            for j in 3..=n - 2 {
                let mut val = BigUint::zero();
                for d in 3..=j {
                    for e in 0..=j - d {
                        let w = binom.get(j as i64 - 3, d as i64 - 3)
                            * binom.get((j - d) as i64, e as i64);
                        // Σ_{k=j+1}^{n-1} v(n-d-e-1, k-d-e): tail of row m
                        let m = n - d - e - 1;
                        val += w * &v_suffix[m][j + 1 - d - e];
                    }
                }
                cells[2][j] = val;
            }
        }
        table.0.cells[n] = cells;
        table.0.finish_row(n);
    }
    Ok(table)
}

/// Fills b(n,i,j) for `n ≤ max_n` from the completed c table.
pub fn compute_b(max_n: usize, c: &CTable) -> Result<BTable> {
    if c.max_n() < max_n {
        return Err(Error::TableMismatch(format!(
            "c table reaches n = {}, b needs {max_n}",
            c.max_n()
        )));
    }
    let binom = Binomials::new(max_n);
    // diag[g][r] = Σ_{s=2}^{r} c(s+g, s)
    let diag: Vec<Vec<BigUint>> = (0..=max_n)
        .map(|g| {
            let mut acc = BigUint::zero();
            let mut out = vec![BigUint::zero(); max_n + 1];
            for (r, slot) in out.iter_mut().enumerate().skip(2) {
                acc += c.marginal((r + g) as i64, r as i64);
                *slot = acc.clone();
            }
            out
        })
        .collect();
    let mut table = BTable(CountTable::with_size(max_n));
    let push_suffix = |table: &BTable, n: usize, b_suffix: &mut Vec<Vec<BigUint>>| {
        let mut row = vec![BigUint::zero()];
        row.extend((1..=n).map(|k| table.marginal(n as i64, k as i64).clone()));
        b_suffix.push(suffix_sums(&row));
    };
    // b_suffix[m][t] = Σ_{k ≥ t} b(m,k); rows 0 and 1 are empty
    let mut b_suffix: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); 2], vec![BigUint::zero(); 3]];
    if max_n >= 2 {
        table.0.cells[2][2][1] = BigUint::one();
        table.0.finish_row(2);
        push_suffix(&table, 2, &mut b_suffix);
    }
    for n in 3..=max_n {
        let ni = n as i64;
        let mut cells = std::mem::take(&mut table.0.cells[n]);
        cells[n][1] = BigUint::one();
        for i in 2..n {
            let prev = table.marginal(ni - 1, i as i64 - 1);
            let mut val = prev.clone();
            for d in 2..i as i64 {
                val += c.marginal(ni - i as i64 + d, d);
            }
            cells[i][1] = val;
            for j in 2..i {
                cells[i][j] = prev.clone();
            }
        }
        for j in 2..n {
            let mut val = pow2(j - 2);
            for d in 2..=j {
                let w = binom.get(j as i64 - 2, d as i64 - 2);
                if w.is_zero() {
                    continue;
                }
                // Σ_{k=j+1}^{n-1} b(n-d, k-d): row n-d from j+1-d to its end
                let m = n - d;
                let mut inner = if m >= 2 {
                    b_suffix[m][j + 1 - d].clone()
                } else {
                    BigUint::zero()
                };
                // Σ_{k=j+1}^{n-1} Σ_{ℓ=d}^{k-2} c(n-ℓ, k-ℓ), one diagonal per k
                for k in j + 1..n {
                    if k >= d + 2 {
                        inner += &diag[n - k][k - d];
                    }
                }
                val += w * inner;
            }
            cells[1][j] = val;
        }
        table.0.cells[n] = cells;
        table.0.finish_row(n);
        push_suffix(&table, n, &mut b_suffix);
    }
    Ok(table)
}

/// a_1, …, a_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASequence {
    values: Vec<BigUint>,
}

impl ASequence {
    pub fn from_values(values: Vec<BigUint>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// a_n, one-based.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Assembles a_n from the b and c marginals.
pub fn compute_a(max_n: usize, b: &BTable, c: &CTable) -> Result<ASequence> {
    if b.max_n() < max_n || c.max_n() < max_n {
        return Err(Error::TableMismatch(format!(
            "a needs tables to n = {max_n}, have b to {} and c to {}",
            b.max_n(),
            c.max_n()
        )));
    }
    let mut values = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        if n == 1 {
            values.push(BigUint::one());
            continue;
        }
        let mut a = BigUint::one() + b.total(n);
        for d in 0..=n - 2 {
            a += c.total(n - d);
        }
        values.push(a);
    }
    Ok(ASequence { values })
}

/// The full set of tables up to one size.
#[derive(Clone, Debug)]
pub struct Recurrences {
    pub v: VTable,
    pub c: CTable,
    pub b: BTable,
    pub a: ASequence,
}

impl Recurrences {
    pub fn compute(max_n: usize) -> Self {
        let v = compute_v(max_n);
        let c = compute_c(max_n, &v).expect("v sized to N");
        let b = compute_b(max_n, &c).expect("c sized to N");
        let a = compute_a(max_n, &b, &c).expect("tables sized to N");
        Self { v, c, b, a }
    }

    pub fn max_n(&self) -> usize {
        self.a.len()
    }
}

/// Outcome of checking a_n^{n+1} < a_{n+1}^n over a computed range.
/// Evidence only; nothing here proves the inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    /// `(n, holds)` for `1 ≤ n < N`.
    pub inequality: Vec<(usize, bool)>,
    /// a_{n+1}/a_n for `1 ≤ n < N`.
    pub ratios: Vec<BigRational>,
}

impl ConjectureReport {
    pub fn inequality_holds(&self) -> bool {
        self.inequality.iter().all(|&(_, ok)| ok)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.inequality.iter().find(|(_, ok)| !ok).map(|&(n, _)| n)
    }

    /// Whether the growth ratios strictly increase over the range.
    pub fn ratios_increasing(&self) -> bool {
        self.ratios.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn check_conjectures(a: &ASequence) -> ConjectureReport {
    let n_max = a.len();
    let mut inequality = Vec::new();
    let mut ratios = Vec::new();
    for n in 1..n_max {
        let lhs = Pow::pow(a.get(n), (n + 1) as u32);
        let rhs = Pow::pow(a.get(n + 1), n as u32);
        inequality.push((n, lhs < rhs));
        ratios.push(BigRational::new(
            BigInt::from(a.get(n + 1).clone()),
            BigInt::from(a.get(n).clone()),
        ));
    }
    ConjectureReport { inequality, ratios }
}
