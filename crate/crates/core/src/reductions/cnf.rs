use std::fmt;

use crate::error::{Error, Result};

/// A 3-CNF formula in DIMACS convention: literal `j` is `w_j`, `-j` is its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(Error::Parse(format!("literal {l} out of range for {num_vars} variables")));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dimacs())
    }
}

/// Truth values `b_1..b_n`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: i32) -> bool {
        let v = self.0[lit.unsigned_abs() as usize - 1];
        if lit > 0 { v } else { !v }
    }

    pub fn satisfies(&self, cnf: &CnfFormula) -> bool {
        self.0.len() == cnf.num_vars && cnf.clauses.iter().all(|c| c.iter().any(|&l| self.value(l)))
    }

    /// The `i`-th assignment in the order where `w_1` is the most significant bit.
    pub fn from_index(n: usize, idx: u64) -> Self {
        Assignment((0..n).map(|j| (idx >> (n - 1 - j)) & 1 == 1).collect())
    }
}

/// Parses DIMACS CNF with exactly three literals per clause. Comment lines and
/// everything after a `%` line are ignored; clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut declared: Option<usize> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<i32> = Vec::new();
    let mut max_var = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() < 2 || parts[0] != "cnf" {
                return Err(Error::Parse(format!("bad header line {line:?}")));
            }
            declared = Some(parts[1].parse().map_err(|_| Error::Parse(format!("bad variable count in {line:?}")))?);
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                if cur.len() != 3 {
                    return Err(Error::Parse(format!("clause {cur:?} has {} literals, expected 3", cur.len())));
                }
                clauses.push([cur[0], cur[1], cur[2]]);
                cur.clear();
            } else {
                max_var = max_var.max(lit.unsigned_abs() as usize);
                cur.push(lit);
            }
        }
    }
    if !cur.is_empty() {
        return Err(Error::Parse(format!("unterminated clause {cur:?}")));
    }
    let n = declared.unwrap_or(max_var);
    if max_var > n {
        return Err(Error::Parse(format!("literal {max_var} exceeds declared {n} variables")));
    }
    CnfFormula::new(n, clauses)
}
