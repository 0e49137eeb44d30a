use super::cnf::{Assignment, CnfFormula};
use crate::error::{Error, Result};

/// Largest variable count accepted by [`brute_force_sat`].
pub const MAX_BRUTE_FORCE_VARS: usize = 25;

/// Depth-first search with unit propagation. Variables are branched in index
/// order, `false` first, so the result is the lexicographically first satisfying
/// assignment (with `false < true` and `w_1` most significant).
pub fn brute_force_sat(cnf: &CnfFormula) -> Result<Option<Assignment>> {
    if cnf.num_vars > MAX_BRUTE_FORCE_VARS {
        return Err(Error::Precondition(format!(
            "brute force limited to {MAX_BRUTE_FORCE_VARS} variables, got {}",
            cnf.num_vars
        )));
    }
    let mut vals: Vec<Option<bool>> = vec![None; cnf.num_vars];
    Ok(search(cnf, &mut vals).map(|v| Assignment(v.into_iter().map(|b| b.unwrap_or(false)).collect())))
}

fn lit_value(vals: &[Option<bool>], l: i32) -> Option<bool> {
    vals[l.unsigned_abs() as usize - 1].map(|v| if l > 0 { v } else { !v })
}

/// Assigns forced literals until a fixpoint; false on conflict.
fn propagate(cnf: &CnfFormula, vals: &mut [Option<bool>]) -> bool {
    loop {
        let mut changed = false;
        for c in &cnf.clauses {
            let mut unassigned = None;
            let mut free = 0;
            let mut sat = false;
            for &l in c {
                match lit_value(vals, l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        free += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match (free, unassigned) {
                (0, _) => return false,
                (1, Some(l)) => {
                    vals[l.unsigned_abs() as usize - 1] = Some(l > 0);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(cnf: &CnfFormula, vals: &mut [Option<bool>]) -> Option<Vec<Option<bool>>> {
    if !propagate(cnf, vals) {
        return None;
    }
    let Some(var) = vals.iter().position(Option::is_none) else {
        return Some(vals.to_vec());
    };
    for choice in [false, true] {
        let mut next = vals.to_vec();
        next[var] = Some(choice);
        if let Some(found) = search(cnf, &mut next) {
            return Some(found);
        }
    }
    None
}
