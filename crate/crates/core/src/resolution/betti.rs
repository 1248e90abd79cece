use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, Ideal};

/// Graded Betti numbers: for each homological index the sorted list of shifts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiTable {
    shifts: Vec<Vec<i64>>,
    complete: bool,
}

#[derive(Serialize)]
pub struct BettiColumn {
    pub homological_degree: usize,
    pub twists: Vec<i64>,
}

impl BettiTable {
    /// `complete` is false for a truncated head of an infinite resolution.
    pub fn from_modules(modules: impl IntoIterator<Item = Vec<i64>>, complete: bool) -> Self {
        let shifts = modules
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        BettiTable { shifts, complete }
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self, i: usize) -> &[i64] {
        &self.shifts[i]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(Vec::len).collect()
    }

    pub fn columns(&self) -> Vec<BettiColumn> {
        self.shifts
            .iter()
            .enumerate()
            .map(|(i, t)| BettiColumn {
                homological_degree: i,
                twists: t.clone(),
            })
            .collect()
    }

    /// `1, 2(-4), 3(-6)`: rank with the shift when all shifts agree.
    pub fn compact(&self) -> String {
        self.shifts
            .iter()
            .map(|t| {
                let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
                for &d in t {
                    *counts.entry(d).or_default() += 1;
                }
                if counts.is_empty() {
                    return "0".to_string();
                }
                counts
                    .iter()
                    .map(|(&d, &n)| if d == 0 { format!("{n}") } else { format!("{n}(-{d})") })
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for BettiTable {
    /// The usual layout: column `i` is the homological index, row `j` counts
    /// shifts equal to `i + j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut table: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.shifts.iter().enumerate() {
            for &d in t {
                table.entry(d - i as i64).or_insert_with(|| vec![0; self.shifts.len()])[i] += 1;
            }
        }
        let width = 4;
        write!(f, "{:>6}", "")?;
        for i in 0..self.shifts.len() {
            write!(f, "{i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for t in &self.shifts {
            write!(f, "{:>width$}", t.len())?;
        }
        writeln!(f)?;
        for (row, counts) in &table {
            write!(f, "{:>6}", format!("{row}:"))?;
            for &n in counts {
                if n == 0 {
                    write!(f, "{:>width$}", ".")?;
                } else {
                    write!(f, "{n:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `max_{i,j} (d_ij - i)` over a finite minimal resolution.
pub fn regularity(betti: &BettiTable) -> Result<i64> {
    if !betti.complete {
        return Err(Error::Usage(
            "regularity needs a finite resolution, not a truncated one".into(),
        ));
    }
    betti
        .shifts
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().map(move |&d| d - i as i64))
        .max()
        .ok_or_else(|| Error::Usage("regularity of the zero module".into()))
}

/// Degrees of a minimal homogeneous generating set of `I`, ascending.
pub fn minimal_generator_degrees(ideal: &Ideal) -> Result<Vec<u32>> {
    let mut degs: Vec<u32> = minimal_generators(ideal)?
        .iter()
        .filter_map(|g| g.degree())
        .collect();
    degs.sort_unstable();
    Ok(degs)
}
