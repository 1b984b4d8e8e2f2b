//! Triangles of special numbers: Stirling numbers of both kinds, unsigned
//! r-Stirling numbers of the first kind, Lah numbers, associated Stirling
//! numbers of the second kind and binomial coefficients.
//!
//! Every triangle is grown lazily and cached process-wide behind a mutex, so
//! lookups from several threads are safe. Values are exact big integers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{factorial, Rational, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    Stirling1Unsigned,
    Stirling1Signed,
    Stirling2,
    /// Unsigned r-Stirling numbers of the first kind for a fixed `r`.
    RStirling1Unsigned(usize),
    Lah,
    /// Partitions into blocks of size at least `m` (`m >= 1`).
    AssocStirling2(usize),
    Binomial,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Stirling1Unsigned => write!(f, "stirling1"),
            TableKind::Stirling1Signed => write!(f, "stirling1-signed"),
            TableKind::Stirling2 => write!(f, "stirling2"),
            TableKind::RStirling1Unsigned(r) => write!(f, "r-stirling1:{r}"),
            TableKind::Lah => write!(f, "lah"),
            TableKind::AssocStirling2(m) => write!(f, "assoc-stirling2:{m}"),
            TableKind::Binomial => write!(f, "binomial"),
        }
    }
}

impl FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let param = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| format!("bad parameter in table kind {s:?}"))
        };
        match s.split_once(':') {
            None => match s {
                "stirling1" => Ok(TableKind::Stirling1Unsigned),
                "stirling1-signed" => Ok(TableKind::Stirling1Signed),
                "stirling2" => Ok(TableKind::Stirling2),
                "lah" => Ok(TableKind::Lah),
                "binomial" => Ok(TableKind::Binomial),
                _ => Err(format!("unknown table kind {s:?}")),
            },
            Some(("r-stirling1", r)) => Ok(TableKind::RStirling1Unsigned(param(r)?)),
            Some(("assoc-stirling2", m)) => match param(m)? {
                0 => Err("assoc-stirling2 needs m >= 1".to_string()),
                m => Ok(TableKind::AssocStirling2(m)),
            },
            Some(_) => Err(format!("unknown table kind {s:?}")),
        }
    }
}

/// A triangular table `rows[n][k]`, `0 <= k <= n`, for one [`TableKind`].
#[derive(Debug, Clone)]
pub struct NumberTable {
    kind: TableKind,
    rows: Vec<Vec<BigInt>>,
}

impl NumberTable {
    pub fn new(kind: TableKind) -> Self {
        NumberTable {
            kind,
            rows: Vec::new(),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero outside the triangle.
    pub fn get(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.ensure_rows(n + 1);
        self.rows[n][k].clone()
    }

    /// Grows the table to at least `count` rows.
    pub fn ensure_rows(&mut self, count: usize) {
        if self.rows.len() >= count {
            return;
        }
        if let TableKind::AssocStirling2(m) = self.kind {
            let target = count.max(2 * self.rows.len());
            self.rows = assoc_triangle(m, target);
            return;
        }
        while self.rows.len() < count {
            let n = self.rows.len();
            let row = match self.rows.last() {
                None => self.first_row(),
                Some(prev) => self.next_row(n, prev),
            };
            self.rows.push(row);
        }
    }

    fn first_row(&self) -> Vec<BigInt> {
        match self.kind {
            TableKind::RStirling1Unsigned(r) if r > 0 => vec![BigInt::zero()],
            _ => vec![BigInt::one()],
        }
    }

    /// Row `n` from row `n - 1` by the kind's defining recurrence.
    fn next_row(&self, n: usize, prev: &[BigInt]) -> Vec<BigInt> {
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let below = |k: usize| if k == 0 { BigInt::zero() } else { at(k - 1) };
        let big = |v: usize| BigInt::from(v);
        (0..=n)
            .map(|k| match self.kind {
                TableKind::Stirling2 => big(k) * at(k) + below(k),
                TableKind::Stirling1Unsigned => big(n - 1) * at(k) + below(k),
                TableKind::Stirling1Signed => below(k) - big(n - 1) * at(k),
                TableKind::RStirling1Unsigned(r) => {
                    if n < r {
                        BigInt::zero()
                    } else if n == r {
                        if k == r { BigInt::one() } else { BigInt::zero() }
                    } else {
                        big(n - 1) * at(k) + below(k)
                    }
                }
                TableKind::Lah => big(n - 1 + k) * at(k) + below(k),
                TableKind::Binomial => at(k) + below(k),
                TableKind::AssocStirling2(_) => unreachable!("built by series extraction"),
            })
            .collect()
    }
}

/// `{n k}^(m) = n! [t^n] (e^t - sum_{j<m} t^j/j!)^k / k!` for `n < rows`.
fn assoc_triangle(m: usize, rows: usize) -> Vec<Vec<BigInt>> {
    assert!(m >= 1, "associated Stirling numbers need m >= 1");
    let order = rows.saturating_sub(1);
    let base = TruncSeries::from_fn(order, |j| {
        if j >= m { Rational::one() } else { Rational::zero() }
    });
    let mut table: Vec<Vec<BigInt>> = (0..rows).map(|n| vec![BigInt::zero(); n + 1]).collect();
    let mut power = TruncSeries::one(order);
    for k in 0..rows {
        if k > 0 {
            if k * m > order {
                break;
            }
            power = power.mul(&base).expect("same order");
        }
        let k_fact = Rational::from_integer(factorial(k));
        for (n, row) in table.iter_mut().enumerate().skip(k) {
            let value = power.coeff(n).coeff(0) / &k_fact;
            debug_assert!(value.is_integer());
            row[k] = value.to_integer();
        }
    }
    table
}

static TABLES: LazyLock<Mutex<HashMap<TableKind, NumberTable>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Looks up `(n, k)` in the shared cache for `kind`.
pub fn lookup(kind: TableKind, n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if let TableKind::AssocStirling2(_) = kind {
        // Series extraction calls back into the binomial table, so the
        // triangle is built without holding the lock.
        let cached = {
            let tables = TABLES.lock().expect("table cache poisoned");
            tables
                .get(&kind)
                .and_then(|t| t.rows.get(n).map(|row| row[k].clone()))
        };
        if let Some(v) = cached {
            return v;
        }
        let mut fresh = NumberTable::new(kind);
        fresh.ensure_rows(n + 1);
        let v = fresh.rows[n][k].clone();
        let mut tables = TABLES.lock().expect("table cache poisoned");
        let slot = tables.entry(kind).or_insert_with(|| NumberTable::new(kind));
        if slot.rows.len() < fresh.rows.len() {
            *slot = fresh;
        }
        return v;
    }
    let mut tables = TABLES.lock().expect("table cache poisoned");
    tables
        .entry(kind)
        .or_insert_with(|| NumberTable::new(kind))
        .get(n, k)
}

/// The first `rows` rows of a triangle.
pub fn triangle(kind: TableKind, rows: usize) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|n| (0..=n).map(|k| lookup(kind, n, k)).collect())
        .collect()
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    lookup(TableKind::Stirling2, n, k)
}

pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    lookup(TableKind::Stirling1Unsigned, n, k)
}

pub fn stirling1_signed(n: usize, k: usize) -> BigInt {
    lookup(TableKind::Stirling1Signed, n, k)
}

/// Unsigned r-Stirling number of the first kind; zero unless `n, k >= r`.
pub fn r_stirling1_unsigned(n: usize, k: usize, r: usize) -> BigInt {
    lookup(TableKind::RStirling1Unsigned(r), n, k)
}

pub fn lah(n: usize, k: usize) -> BigInt {
    lookup(TableKind::Lah, n, k)
}

pub fn assoc_stirling2(m: usize, n: usize, k: usize) -> BigInt {
    lookup(TableKind::AssocStirling2(m), n, k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    lookup(TableKind::Binomial, n, k)
}
