//! Explicit scheme instances: a relation matrix on `n` points, loaded from
//! a plain-text file and checked exhaustively against prescribed
//! intersection numbers.
//!
//! File format (whitespace separated):
//!
//! ```text
//! n c
//! <n rows of n entries, each in 0..=c>
//! ```
//!
//! Entry `(x, y)` is the index of the relation containing the pair; `0` is
//! the identity relation, so the diagonal must be `0` and nothing else may
//! be. The matrix must be symmetric.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

/// A parsed relation matrix.
pub struct SchemeInstance {
    n: usize,
    classes: usize,
    rel: Vec<u8>, // row-major n*n
}

/// Witness for a failed intersection-number check: the pair `(x, y)` in
/// relation `relation` has `found` common neighbours of type `(i, j)` where
/// `expected` were required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleMismatch {
    pub x: usize,
    pub y: usize,
    pub relation: u8,
    pub i: u8,
    pub j: u8,
    pub expected: u64,
    pub found: u64,
}

impl fmt::Display for TripleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}) in relation {}: found {} common neighbours of type ({}, {}), expected {}",
            self.x, self.y, self.relation, self.found, self.i, self.j, self.expected
        )
    }
}

impl SchemeInstance {
    /// Parses the text format, validating shape, symmetry, diagonal and
    /// entry range. Error messages carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: "expected point count".into() })?;
        let classes: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: "expected class count".into() })?;
        if n == 0 || classes == 0 || classes > 250 {
            return Err(Error::Parse { line: 1, msg: format!("bad header: n={n}, classes={classes}") });
        }
        if parts.next().is_some() {
            return Err(Error::Parse { line: 1, msg: "trailing tokens after header".into() });
        }

        let mut rel = vec![0u8; n * n];
        let mut rows_read = 0usize;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if rows_read == n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("more than {n} matrix rows"),
                });
            }
            let mut count = 0usize;
            for tok in line.split_whitespace() {
                let v: u8 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad entry {tok:?}"),
                })?;
                if v as usize > classes {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("entry {v} exceeds class count {classes}"),
                    });
                }
                if count == n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("row has more than {n} entries"),
                    });
                }
                rel[rows_read * n + count] = v;
                count += 1;
            }
            if count != n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("row has {count} entries, expected {n}"),
                });
            }
            rows_read += 1;
        }
        if rows_read != n {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("file has {rows_read} matrix rows, expected {n}"),
            });
        }

        let inst = SchemeInstance { n, classes, rel };
        for x in 0..n {
            if inst.relation(x, x) != 0 {
                return Err(Error::Parse {
                    line: x + 2,
                    msg: format!("diagonal entry at point {x} must be 0"),
                });
            }
            for y in 0..x {
                if inst.relation(x, y) != inst.relation(y, x) {
                    return Err(Error::Parse {
                        line: x + 2,
                        msg: format!("asymmetric entries at ({x}, {y})"),
                    });
                }
                if inst.relation(x, y) == 0 {
                    return Err(Error::Parse {
                        line: x + 2,
                        msg: format!("off-diagonal entry at ({x}, {y}) must not be 0"),
                    });
                }
            }
        }
        Ok(inst)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Number of points.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of non-identity classes.
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Relation index of the pair `(x, y)`.
    pub fn relation(&self, x: usize, y: usize) -> u8 {
        self.rel[x * self.n + y]
    }

    /// For one pair, the 2-dimensional profile counting common neighbours
    /// by their relation types to `x` and to `y`.
    pub fn pair_profile(&self, x: usize, y: usize) -> Vec<Vec<u64>> {
        let c = self.classes + 1;
        let mut counts = vec![vec![0u64; c]; c];
        let row_x = &self.rel[x * self.n..(x + 1) * self.n];
        let row_y = &self.rel[y * self.n..(y + 1) * self.n];
        for z in 0..self.n {
            counts[row_x[z] as usize][row_y[z] as usize] += 1;
        }
        counts
    }

    /// Per-class neighbour counts, checked to be the same at every point.
    /// Index 0 (the identity relation) always contributes 1.
    pub fn valencies(&self) -> Result<Vec<u64>> {
        let c = self.classes + 1;
        let count_at = |x: usize| {
            let mut counts = vec![0u64; c];
            for y in 0..self.n {
                counts[self.relation(x, y) as usize] += 1;
            }
            counts
        };
        let first = count_at(0);
        for x in 1..self.n {
            let here = count_at(x);
            if here != first {
                return Err(Error::BadParameters(format!(
                    "non-uniform valencies: point 0 sees {first:?}, point {x} sees {here:?}"
                )));
            }
        }
        Ok(first)
    }

    /// Exhaustive check of the full intersection-number table: for every
    /// ordered pair of distinct points and every type pair `(i, j)`, the
    /// number of common neighbours must match `numbers[i][j][rel(x,y)]`.
    /// Returns the first mismatch as a witness.
    pub fn verify_intersection_numbers(
        &self,
        numbers: &[Vec<Vec<BigInt>>],
    ) -> std::result::Result<(), Box<TripleMismatch>> {
        let c = self.classes + 1;
        // Dense u64 copy for the hot loop.
        let mut expect = vec![0u64; c * c * c];
        for i in 0..c {
            for j in 0..c {
                for k in 0..c {
                    expect[(i * c + j) * c + k] =
                        numbers[i][j][k].to_u64().expect("intersection number fits in u64");
                }
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let k = self.relation(x, y) as usize;
                let counts = self.pair_profile(x, y);
                for (i, row) in counts.iter().enumerate() {
                    for (j, &found) in row.iter().enumerate() {
                        let expected = expect[(i * c + j) * c + k];
                        if found != expected {
                            return Err(Box::new(TripleMismatch {
                                x,
                                y,
                                relation: k as u8,
                                i: i as u8,
                                j: j as u8,
                                expected,
                                found,
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pentagon: distance-2 scheme on 5 points.
    fn pentagon() -> String {
        let mut s = String::from("5 2\n");
        for x in 0..5i32 {
            let row: Vec<String> = (0..5i32)
                .map(|y| {
                    let d = (x - y).rem_euclid(5).min((y - x).rem_euclid(5));
                    d.to_string()
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    fn pentagon_numbers() -> Vec<Vec<Vec<BigInt>>> {
        // intersection numbers of the 5-cycle distance scheme
        let mut p = vec![vec![vec![BigInt::from(0); 3]; 3]; 3];
        let set = |p: &mut Vec<Vec<Vec<BigInt>>>, i: usize, j: usize, k: usize, v: i64| {
            p[i][j][k] = BigInt::from(v);
        };
        for j in 0..3 {
            set(&mut p, 0, j, j, 1);
            set(&mut p, j, 0, j, 1);
        }
        set(&mut p, 1, 1, 0, 2);
        set(&mut p, 2, 2, 0, 2);
        set(&mut p, 1, 1, 2, 1);
        set(&mut p, 1, 2, 1, 1);
        set(&mut p, 2, 1, 1, 1);
        set(&mut p, 1, 2, 2, 1);
        set(&mut p, 2, 1, 2, 1);
        set(&mut p, 2, 2, 1, 1);
        // note p(0,0,0) = 1 set by the loop above (j = 0)
        p
    }

    #[test]
    fn pentagon_parses_and_verifies() {
        let inst = SchemeInstance::parse(&pentagon()).unwrap();
        assert_eq!(inst.order(), 5);
        assert_eq!(inst.classes(), 2);
        assert_eq!(inst.valencies().unwrap(), vec![1, 2, 2]);
        inst.verify_intersection_numbers(&pentagon_numbers()).unwrap();
    }

    #[test]
    fn perturbed_entry_yields_witness() {
        // swap one symmetric pair of entries between classes 1 and 2
        let text = pentagon();
        let inst = SchemeInstance::parse(&text).unwrap();
        let mut rel = inst.rel.clone();
        let (x, y) = (0usize, 1usize);
        rel[x * 5 + y] = 2;
        rel[y * 5 + x] = 2;
        let bad = SchemeInstance { n: 5, classes: 2, rel };
        let err = bad.verify_intersection_numbers(&pentagon_numbers()).unwrap_err();
        // the witness names a real pair
        assert!(err.x < 5 && err.y < 5);
        assert_ne!(err.expected, err.found);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            SchemeInstance::parse(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(SchemeInstance::parse("abc 2\n").is_err());
        // truncated: claims 5 points, provides 3 rows
        let mut t = String::from("5 2\n");
        t.push_str("0 1 2 2 1\n1 0 1 2 2\n2 1 0 1 2\n");
        assert!(matches!(
            SchemeInstance::parse(&t),
            Err(Error::Parse { .. })
        ));
        // diagonal violation
        let d = "2 1\n1 1\n1 0\n";
        assert!(SchemeInstance::parse(d).is_err());
        // asymmetric
        let a = "3 2\n0 1 2\n2 0 1\n1 2 0\n";
        assert!(SchemeInstance::parse(a).is_err());
        // entry out of range
        let o = "2 1\n0 3\n3 0\n";
        assert!(SchemeInstance::parse(o).is_err());
    }

    #[test]
    fn non_uniform_valencies_detected() {
        // path P3 distance matrix has non-uniform distance profile
        let p3 = "3 2\n0 1 2\n1 0 1\n2 1 0\n";
        let inst = SchemeInstance::parse(p3).unwrap();
        assert!(inst.valencies().is_err());
    }

    #[test]
    fn pair_profile_counts_all_points() {
        let inst = SchemeInstance::parse(&pentagon()).unwrap();
        let prof = inst.pair_profile(0, 1);
        let total: u64 = prof.iter().flatten().sum();
        assert_eq!(total, 5);
    }
}
