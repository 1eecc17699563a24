use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Order of the product `st` of two distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidOrder {
    Finite(u32),
    Infinite,
}

impl BraidOrder {
    pub fn is_crystallographic(self) -> bool {
        matches!(
            self,
            BraidOrder::Finite(2) | BraidOrder::Finite(3) | BraidOrder::Infinite
        )
    }
}

impl fmt::Display for BraidOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidOrder::Finite(m) => write!(f, "{m}"),
            BraidOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for BraidOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "inf" {
            return Ok(BraidOrder::Infinite);
        }
        match s.parse::<u32>() {
            Ok(m) if m >= 2 => Ok(BraidOrder::Finite(m)),
            Ok(m) => Err(format!("m = {m} must be at least 2")),
            Err(_) => Err(format!("expected an integer >= 2 or `inf`, found `{s}`")),
        }
    }
}

/// Presentation data `m(s,t)` of a Coxeter system. Generators are indexed
/// `0..rank` internally and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    // row-major rank x rank; the diagonal is unused and holds Finite(1)
    orders: Vec<BraidOrder>,
}

impl CoxeterMatrix {
    /// Builds a matrix where every unlisted pair commutes (`m = 2`).
    /// Pairs are 0-based.
    pub fn from_pairs(rank: usize, pairs: &[(usize, usize, BraidOrder)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be at least 1".into()));
        }
        let mut orders = vec![BraidOrder::Finite(2); rank * rank];
        for i in 0..rank {
            orders[i * rank + i] = BraidOrder::Finite(1);
        }
        for &(i, j, m) in pairs {
            if i >= rank || j >= rank || i == j {
                return Err(Error::InvalidMatrix(format!(
                    "pair ({}, {}) is not a pair of distinct generators in 1..={rank}",
                    i + 1,
                    j + 1
                )));
            }
            if let BraidOrder::Finite(v) = m {
                if v < 2 {
                    return Err(Error::InvalidMatrix(format!("m({}, {}) = {v} < 2", i + 1, j + 1)));
                }
            }
            orders[i * rank + j] = m;
            orders[j * rank + i] = m;
        }
        Ok(CoxeterMatrix { rank, orders })
    }

    /// Dihedral group of order `2m`, or the infinite dihedral group.
    pub fn dihedral(m: BraidOrder) -> Result<Self> {
        Self::from_pairs(2, &[(0, 1, m)])
    }

    /// Rank-`rank` group in which every pair of generators has the same order.
    pub fn uniform(rank: usize, m: BraidOrder) -> Result<Self> {
        let pairs: Vec<_> = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j, m))).collect();
        Self::from_pairs(rank, &pairs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m(i, j)` for 0-based generators; `Finite(1)` on the diagonal.
    pub fn order(&self, i: usize, j: usize) -> BraidOrder {
        self.orders[i * self.rank + j]
    }

    pub fn is_crystallographic(&self) -> bool {
        (0..self.rank)
            .flat_map(|i| (i + 1..self.rank).map(move |j| (i, j)))
            .all(|(i, j)| self.order(i, j).is_crystallographic())
    }

    /// Parses the line-oriented group file format:
    ///
    /// ```text
    /// rank 2
    /// m 1 2 3
    /// ```
    ///
    /// Every unordered pair `i < j` must be listed exactly once. Blank lines
    /// and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rank: Option<usize> = None;
        let mut seen: Vec<Option<BraidOrder>> = Vec::new();
        let err = |line: usize, msg: String| Error::Parse { line, msg };

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["rank", r] => {
                    if rank.is_some() {
                        return Err(err(lineno, "duplicate `rank` statement".into()));
                    }
                    let r: usize = r.parse().map_err(|_| err(lineno, format!("invalid rank `{r}`")))?;
                    if r == 0 {
                        return Err(err(lineno, "rank must be at least 1".into()));
                    }
                    rank = Some(r);
                    seen = vec![None; r * r];
                }
                ["m", i, j, v] => {
                    let r = rank.ok_or_else(|| err(lineno, "`m` before `rank`".into()))?;
                    let i: usize = i.parse().map_err(|_| err(lineno, format!("invalid generator `{i}`")))?;
                    let j: usize = j.parse().map_err(|_| err(lineno, format!("invalid generator `{j}`")))?;
                    if !(1 <= i && i < j && j <= r) {
                        return Err(err(lineno, format!("need 1 <= i < j <= {r}, found i={i} j={j}")));
                    }
                    let m: BraidOrder = v.parse().map_err(|e| err(lineno, e))?;
                    let slot = &mut seen[(i - 1) * r + (j - 1)];
                    if slot.is_some() {
                        return Err(err(lineno, format!("pair ({i}, {j}) listed twice")));
                    }
                    *slot = Some(m);
                }
                _ => return Err(err(lineno, format!("unrecognised statement `{line}`"))),
            }
        }

        let r = rank.ok_or_else(|| err(0, "missing `rank` statement".into()))?;
        let mut pairs = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                match seen[i * r + j] {
                    Some(m) => pairs.push((i, j, m)),
                    None => return Err(err(0, format!("pair ({}, {}) is missing", i + 1, j + 1))),
                }
            }
        }
        Self::from_pairs(r, &pairs)
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                writeln!(f, "m {} {} {}", i + 1, j + 1, self.order(i, j))?;
            }
        }
        Ok(())
    }
}
