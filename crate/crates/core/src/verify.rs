//! Closed-form bounds, exhaustive oracles for small `n`, and the bounds
//! table comparing formulas against the witnesses.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::automata::DEFAULT_SUBSET_CAP;
use crate::error::{Error, Result};
use crate::partition::factorial;
use crate::semigroup::{close_with_cap, TransformationSemigroup, DEFAULT_CLOSURE_CAP};
use crate::transform::Transformation;
use crate::witness::{gf_q, gs_n, witness_b};

/// Largest `n` for which `F_Q` is enumerated by default.
pub const DEFAULT_F_Q_CAP: usize = 8;
/// Largest `n` for which the submonoid search runs by default.
pub const DEFAULT_BRUTE_CAP: usize = 4;

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `g(n) = Σ_{r=1}^{n} C(n−1, r−1) (n−r)!`, the size of the largest
/// J-trivial submonoid of `F_Q`.
pub fn g_of_n(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidSize { n });
    }
    Ok((1..=n).map(|r| binomial(n - 1, r - 1) * factorial(n - r)).sum())
}

/// `⌊e (n−1)!⌋` as the exact sum `Σ_{k=0}^{n−1} (n−1)!/k!`.
pub fn floor_e_factorial(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Domain(format!("the floor form needs n >= 2, got {n}")));
    }
    // (n-1)!/k! = (k+1)(k+2)...(n-1), accumulated from k = n-1 downwards
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for k in (0..n - 1).rev() {
        term *= BigUint::from(k + 1);
        sum += &term;
    }
    Ok(sum)
}

/// All non-decreasing maps on `n` states (`n!` of them) in canonical order.
pub fn enumerate_f_q(n: usize) -> Result<Vec<Transformation>> {
    enumerate_f_q_with_cap(n, DEFAULT_F_Q_CAP)
}

pub fn enumerate_f_q_with_cap(n: usize, cap: usize) -> Result<Vec<Transformation>> {
    if n == 0 {
        return Err(Error::InvalidSize { n });
    }
    if n > cap {
        return Err(Error::ResourceLimit { what: "non-decreasing enumeration size n", limit: cap });
    }
    let mut out = Vec::new();
    let mut images: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(Transformation::from_zero_based(images.clone()));
        // odometer: position i ranges over i..n, rightmost digit fastest
        let Some(pos) = (0..n).rev().find(|&i| images[i] + 1 < n as u32) else {
            break;
        };
        images[pos] += 1;
        for (i, slot) in images.iter_mut().enumerate().skip(pos + 1) {
            *slot = i as u32;
        }
    }
    Ok(out)
}

type Mask = u128;

/// Exhaustive search over the submonoids of `F_Q`.
///
/// Elements are indexed in canonical order and sets are bitmasks, so `n <= 5`.
pub struct SubmonoidSearch {
    n: usize,
    elements: Vec<Transformation>,
    product: Vec<u8>,
    identity: usize,
    // compatible[x]: elements y such that {x, y} passes the pairwise J-triviality tests
    compatible: Vec<Mask>,
    universe: Mask,
}

impl SubmonoidSearch {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_BRUTE_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n > cap.min(5) {
            return Err(Error::ResourceLimit { what: "submonoid search size n", limit: cap.min(5) });
        }
        let elements = enumerate_f_q(n)?;
        let m = elements.len();
        let index = |t: &Transformation| elements.binary_search(t).expect("F_Q is closed");
        let mut product = Vec::with_capacity(m * m);
        for x in &elements {
            for y in &elements {
                product.push(index(&x.then(y)) as u8);
            }
        }
        let identity = index(&Transformation::identity(n)?);
        let orbits: Vec<_> = elements.iter().map(Transformation::orbits).collect();
        let fixed: Vec<_> = elements.iter().map(Transformation::fixed_points).collect();
        let compatible = (0..m)
            .map(|x| {
                (0..m)
                    .filter(|&y| {
                        let joined = orbits[x].join(&orbits[y]).expect("same size");
                        orbits[product[x * m + y] as usize] == joined
                            && orbits[product[y * m + x] as usize] == joined
                            && (fixed[x] != fixed[y] || orbits[x] == orbits[y])
                    })
                    .fold(0 as Mask, |acc, y| acc | (1 << y))
            })
            .collect();
        let universe = if m == 128 { Mask::MAX } else { (1 << m) - 1 };
        Ok(Self { n, elements, product, identity, compatible, universe })
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    fn closure_with(&self, set: Mask, extra: usize) -> Mask {
        let m = self.elements.len();
        let mut current = set;
        let mut pending = vec![extra];
        current |= 1 << extra;
        while let Some(e) = pending.pop() {
            let mut members = current;
            while members != 0 {
                let x = members.trailing_zeros() as usize;
                members &= members - 1;
                for p in [self.product[e * m + x], self.product[x * m + e]] {
                    let p = p as usize;
                    if current & (1 << p) == 0 {
                        current |= 1 << p;
                        pending.push(p);
                    }
                }
            }
        }
        current
    }

    fn pairwise_ok(&self, old: Mask, new: Mask) -> bool {
        let mut added = new & !old;
        while added != 0 {
            let y = added.trailing_zeros() as usize;
            added &= added - 1;
            if new & !self.compatible[y] != 0 {
                return false;
            }
        }
        true
    }

    fn to_semigroup(&self, set: Mask) -> TransformationSemigroup {
        let members: Vec<Transformation> =
            (0..self.elements.len()).filter(|&i| set & (1 << i) != 0).map(|i| self.elements[i].clone()).collect();
        TransformationSemigroup::from_closed_set(self.n, members.clone(), members).expect("search keeps sets closed")
    }

    /// Calls `visit` once per submonoid of `F_Q` (each containing the
    /// identity), restricted to J-trivial ones when `j_trivial_only`.
    pub fn for_each(&self, j_trivial_only: bool, mut visit: impl FnMut(TransformationSemigroup)) {
        let start = 1 << self.identity;
        self.walk(start, 0, 0, j_trivial_only, &mut |set| visit(self.to_semigroup(set)), None);
    }

    /// Largest J-trivial submonoid; the first one met in canonical order wins ties.
    pub fn max_j_trivial(&self) -> (usize, TransformationSemigroup) {
        let mut best = (0usize, 0 as Mask);
        let start = 1 << self.identity;
        let mut bound = 0usize;
        self.walk(
            start,
            0,
            0,
            true,
            &mut |set| {
                let size = set.count_ones() as usize;
                if size > best.0 {
                    best = (size, set);
                }
            },
            Some(&mut bound),
        );
        (best.0, self.to_semigroup(best.1))
    }

    fn walk(
        &self,
        current: Mask,
        excluded: Mask,
        from: usize,
        j_only: bool,
        leaf: &mut dyn FnMut(Mask),
        mut best: Option<&mut usize>,
    ) {
        if let Some(b) = best.as_deref() {
            let remaining = (self.universe & !current & !excluded).count_ones() as usize;
            if current.count_ones() as usize + remaining <= *b {
                return;
            }
        }
        let m = self.elements.len();
        let Some(c) = (from..m).find(|&i| (current | excluded) & (1 << i) == 0) else {
            if let Some(b) = best.as_deref_mut() {
                *b = (*b).max(current.count_ones() as usize);
            }
            leaf(current);
            return;
        };
        let with = self.closure_with(current, c);
        if with & excluded == 0 && (!j_only || self.pairwise_ok(current, with)) {
            self.walk(with, excluded, c + 1, j_only, leaf, best.as_deref_mut());
        }
        self.walk(current, excluded | (1 << c), c + 1, j_only, leaf, best);
    }
}

/// Size and canonical witness of the largest J-trivial submonoid of `F_Q`.
pub fn brute_max_j_trivial(n: usize) -> Result<(usize, TransformationSemigroup)> {
    brute_max_j_trivial_with_cap(n, DEFAULT_BRUTE_CAP)
}

pub fn brute_max_j_trivial_with_cap(n: usize, cap: usize) -> Result<(usize, TransformationSemigroup)> {
    Ok(SubmonoidSearch::with_cap(n, cap)?.max_j_trivial())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Value(BigUint),
    Skipped(String),
}

impl Cell {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Cell::Value(v) => Some(v),
            Cell::Skipped(_) => None,
        }
    }

    fn from_result(r: Result<BigUint>) -> Result<Cell> {
        match r {
            Ok(v) => Ok(Cell::Value(v)),
            Err(e @ Error::ResourceLimit { .. }) => Ok(Cell::Skipped(e.to_string())),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Skipped(_) => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: usize,
    pub r_trivial_bound: BigUint,
    pub j_trivial_bound: BigUint,
    pub floor_e_form: BigUint,
    pub reversal_bound: BigUint,
    pub witnessed_sigma_r: Cell,
    pub witnessed_sigma_j: Cell,
    pub witnessed_rev: Cell,
    pub brute_max_j: Cell,
}

impl BoundsRow {
    /// Every computed witness meets its bound and the two forms of `g(n)` agree.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.floor_e_form != self.j_trivial_bound {
            out.push(format!(
                "n={}: floor form {} differs from g(n) {}",
                self.n, self.floor_e_form, self.j_trivial_bound
            ));
        }
        for (name, cell, bound) in [
            ("witnessed_sigma_r", &self.witnessed_sigma_r, &self.r_trivial_bound),
            ("witnessed_sigma_j", &self.witnessed_sigma_j, &self.j_trivial_bound),
            ("witnessed_rev", &self.witnessed_rev, &self.reversal_bound),
            ("brute_max_j", &self.brute_max_j, &self.j_trivial_bound),
        ] {
            if let Some(v) = cell.value() {
                if v != bound {
                    out.push(format!("n={}: {name} = {v} but the bound is {bound}", self.n));
                }
            }
        }
        out
    }

    fn cells(&self) -> [String; 9] {
        [
            self.n.to_string(),
            self.r_trivial_bound.to_string(),
            self.j_trivial_bound.to_string(),
            self.floor_e_form.to_string(),
            self.reversal_bound.to_string(),
            self.witnessed_sigma_r.to_string(),
            self.witnessed_sigma_j.to_string(),
            self.witnessed_rev.to_string(),
            self.brute_max_j.to_string(),
        ]
    }
}

/// Per-column caps for [`bounds_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsOptions {
    /// Largest `n` whose `GF_Q` closure is computed.
    pub sigma_r_max_n: usize,
    /// Largest `n` whose `GS_n` closure is computed.
    pub sigma_j_max_n: usize,
    /// Largest `n` whose reversal is determinized.
    pub reversal_max_n: usize,
    /// Largest `n` for the submonoid search.
    pub brute_max_n: usize,
    /// Lifts the search's own size cap (it still cannot exceed 5).
    pub force_brute: bool,
    pub closure_cap: usize,
    pub subset_cap: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            sigma_r_max_n: 8,
            sigma_j_max_n: 8,
            reversal_max_n: 16,
            brute_max_n: DEFAULT_BRUTE_CAP,
            force_brute: false,
            closure_cap: DEFAULT_CLOSURE_CAP,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

fn capped(n: usize, max_n: usize, what: &'static str, f: impl FnOnce() -> Result<BigUint>) -> Result<Cell> {
    if n > max_n {
        return Ok(Cell::Skipped(format!("{what} limited to n <= {max_n}")));
    }
    Cell::from_result(f())
}

/// One row per `n = 2..=max_n`. Columns over their cap are marked skipped
/// instead of failing the report.
pub fn bounds_report(max_n: usize, options: &BoundsOptions) -> Result<Vec<BoundsRow>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("--max-n must be at least 2, got {max_n}")));
    }
    (2..=max_n).map(|n| bounds_row(n, options)).collect()
}

pub fn bounds_row(n: usize, options: &BoundsOptions) -> Result<BoundsRow> {
    let closure_size = |gens: Vec<Transformation>| -> Result<BigUint> {
        Ok(BigUint::from(close_with_cap(&gens, options.closure_cap)?.len()))
    };
    let brute_cap = if options.force_brute { options.brute_max_n } else { DEFAULT_BRUTE_CAP };
    Ok(BoundsRow {
        n,
        r_trivial_bound: factorial(n),
        j_trivial_bound: g_of_n(n)?,
        floor_e_form: floor_e_factorial(n)?,
        reversal_bound: BigUint::one() << (n - 1),
        witnessed_sigma_r: capped(n, options.sigma_r_max_n, "sigma_r", || closure_size(gf_q(n)?))?,
        witnessed_sigma_j: capped(n, options.sigma_j_max_n, "sigma_j", || closure_size(gs_n(n)?))?,
        witnessed_rev: capped(n, options.reversal_max_n, "reversal", || {
            Ok(BigUint::from(witness_b(n)?.reversal_complexity_with_cap(options.subset_cap)?))
        })?,
        brute_max_j: capped(n, options.brute_max_n, "brute force", || {
            Ok(BigUint::from(brute_max_j_trivial_with_cap(n, brute_cap)?.0))
        })?,
    })
}

pub const BOUNDS_COLUMNS: [&str; 9] = [
    "n",
    "r_trivial_bound",
    "j_trivial_bound",
    "floor_e_form",
    "reversal_bound",
    "witnessed_sigma_r",
    "witnessed_sigma_j",
    "witnessed_rev",
    "brute_max_j",
];

/// Header plus one tab-separated line per row.
pub fn bounds_tsv(rows: &[BoundsRow]) -> String {
    let mut out = BOUNDS_COLUMNS.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.cells().join("\t"));
        out.push('\n');
    }
    out
}

/// Right-aligned table followed by a note for every distinct skip reason.
pub fn bounds_text(rows: &[BoundsRow]) -> String {
    let table: Vec<[String; 9]> =
        std::iter::once(BOUNDS_COLUMNS.map(str::to_string)).chain(rows.iter().map(BoundsRow::cells)).collect();
    let widths: Vec<usize> = (0..9).map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for line in &table {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    let mut notes: Vec<&str> = Vec::new();
    for row in rows {
        for cell in [&row.witnessed_sigma_r, &row.witnessed_sigma_j, &row.witnessed_rev, &row.brute_max_j] {
            if let Cell::Skipped(reason) = cell {
                if !notes.contains(&reason.as_str()) {
                    notes.push(reason);
                }
            }
        }
    }
    for note in notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}
