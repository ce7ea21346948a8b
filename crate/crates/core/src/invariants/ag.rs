//! The Avella-Alaminos–Geiss invariant of a gentle algebra.
//!
//! Each vertex gets two in-slots and two out-slots. An arrow entering in slot
//! `k` continues without relation through out-slot `k` and with a relation
//! through out-slot `1 − k`. Permitted threads follow the first rule,
//! forbidden threads the second; a missing slot ends a thread, and a pair of
//! missing slots is a trivial thread.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{is_gentle, GentlePresentation};

/// Multiset of pairs (n, m), stored as pair → multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AgInvariant(pub BTreeMap<(u64, u64), u64>);

impl AgInvariant {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Pairs in increasing order, repeated by multiplicity.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.0
            .iter()
            .flat_map(|(p, k)| std::iter::repeat_n(*p, *k as usize))
            .collect()
    }

    fn add(&mut self, p: (u64, u64)) {
        *self.0.entry(p).or_default() += 1;
    }
}

impl fmt::Display for AgInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(n, m)| format!("({n},{m})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

struct Slots {
    /// `in_arrow[v][k]`: arrow occupying in-slot `k` at `v`.
    in_arrow: Vec<[Option<usize>; 2]>,
    out_arrow: Vec<[Option<usize>; 2]>,
    in_slot: Vec<usize>,
    out_slot: Vec<usize>,
}

fn assign_slots(pres: &GentlePresentation) -> Result<Slots> {
    let n = pres.vertex_count;
    let m = pres.arrows.len();
    let mut in_arrow = vec![[None; 2]; n];
    let mut out_arrow = vec![[None; 2]; n];
    let mut in_slot = vec![0; m];
    let mut out_slot = vec![usize::MAX; m];
    for (i, a) in pres.arrows.iter().enumerate() {
        let v = a.target;
        let k = in_arrow[v].iter().position(Option::is_none).ok_or_else(|| {
            Error::NotGentle(format!("vertex {v} has more than two incoming arrows"))
        })?;
        in_arrow[v][k] = Some(i);
        in_slot[i] = k;
    }
    let conflict = |v: usize| Error::NotGentle(format!("inconsistent arrow pairing at vertex {v}"));
    let mut free = Vec::new();
    for (i, b) in pres.arrows.iter().enumerate() {
        let v = b.source;
        let mut want = None;
        for a in in_arrow[v].iter().flatten() {
            let k = in_slot[*a];
            let slot = if pres.is_relation(*a, i) { 1 - k } else { k };
            if want.is_some_and(|w| w != slot) {
                return Err(conflict(v));
            }
            want = Some(slot);
        }
        match want {
            Some(k) => {
                if out_arrow[v][k].is_some() {
                    return Err(conflict(v));
                }
                out_arrow[v][k] = Some(i);
                out_slot[i] = k;
            }
            None => free.push(i),
        }
    }
    for i in free {
        let v = pres.arrows[i].source;
        let k = out_arrow[v].iter().position(Option::is_none).ok_or_else(|| {
            Error::NotGentle(format!("vertex {v} has more than two outgoing arrows"))
        })?;
        out_arrow[v][k] = Some(i);
        out_slot[i] = k;
    }
    Ok(Slots { in_arrow, out_arrow, in_slot, out_slot })
}

struct Thread {
    /// (vertex, missing in-slot) at the start.
    start: (usize, usize),
    /// (vertex, missing out-slot) at the end.
    end: (usize, usize),
    len: usize,
}

/// Follows threads from every open start; `turn` maps an in-slot to the out-slot taken.
fn threads(pres: &GentlePresentation, s: &Slots, turn: impl Fn(usize) -> usize) -> (Vec<Thread>, Vec<bool>) {
    let mut used = vec![false; pres.arrows.len()];
    let mut out = Vec::new();
    for v in 0..pres.vertex_count {
        for k in 0..2 {
            if s.in_arrow[v][k].is_some() {
                continue;
            }
            let (mut w, mut slot, mut len) = (v, turn(k), 0);
            while let Some(b) = s.out_arrow[w][slot] {
                used[b] = true;
                len += 1;
                w = pres.arrows[b].target;
                slot = turn(s.in_slot[b]);
            }
            out.push(Thread { start: (v, k), end: (w, slot), len });
        }
    }
    (out, used)
}

/// Number of arrows on closed cycles of the given continuation rule, one entry per cycle.
fn cycles(pres: &GentlePresentation, s: &Slots, used: &[bool], turn: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut seen = used.to_vec();
    let mut lens = Vec::new();
    for start in 0..pres.arrows.len() {
        if seen[start] {
            continue;
        }
        let mut b = start;
        let mut len = 0;
        while !seen[b] {
            seen[b] = true;
            len += 1;
            let w = pres.arrows[b].target;
            match s.out_arrow[w][turn(s.in_slot[b])] {
                Some(next) => b = next,
                None => break,
            }
        }
        lens.push(len);
    }
    lens
}

/// Computes the AG invariant of a gentle presentation.
pub fn ag_invariant(pres: &GentlePresentation) -> Result<AgInvariant> {
    if !is_gentle(pres) {
        return Err(Error::NotGentle("presentation violates the gentle conditions".into()));
    }
    let s = assign_slots(pres)?;
    debug_assert!(s.out_slot.iter().all(|k| *k < 2));
    let (permitted, p_used) = threads(pres, &s, |k| k);
    if p_used.iter().any(|u| !u) {
        return Err(Error::NotGentle("oriented cycle without relations".into()));
    }
    let (forbidden, f_used) = threads(pres, &s, |k| 1 - k);

    let forbidden_by_end: HashMap<(usize, usize), usize> =
        forbidden.iter().enumerate().map(|(i, t)| (t.end, i)).collect();
    let permitted_by_start: HashMap<(usize, usize), usize> =
        permitted.iter().enumerate().map(|(i, t)| (t.start, i)).collect();

    let mut result = AgInvariant::default();
    let mut visited = vec![false; permitted.len()];
    for first in 0..permitted.len() {
        if visited[first] {
            continue;
        }
        let (mut n, mut m) = (0u64, 0u64);
        let mut h = first;
        while !visited[h] {
            visited[h] = true;
            n += 1;
            let pi = forbidden_by_end[&permitted[h].end];
            m += forbidden[pi].len as u64;
            h = permitted_by_start[&forbidden[pi].start];
        }
        if h != first {
            return Err(Error::InvariantViolation("thread walk is not a permutation".into()));
        }
        result.add((n, m));
    }
    for len in cycles(pres, &s, &f_used, |k| 1 - k) {
        result.add((0, len as u64));
    }
    Ok(result)
}
