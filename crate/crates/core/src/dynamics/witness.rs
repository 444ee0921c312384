use std::fmt;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{is_interior, tau, tau_star, Cycle, DynamicsError, LatticePoint, ParameterVector};
use crate::geometry::{ConvexCell, LinearConstraint, Relation};

pub const DEFAULT_WITNESS_BUDGET: usize = 10_000_000;

/// A witness set `V_r` together with its `τ_r` and `τ*_r` successors.
///
/// Vertices are stored in sorted order; successors are indices into that order.
#[derive(Clone, Debug)]
pub struct WitnessGraph {
    dim: usize,
    vertices: Vec<LatticePoint>,
    index: FxHashMap<LatticePoint, u32>,
    tau_next: Vec<u32>,
    tau_star_next: Vec<u32>,
}

impl PartialEq for WitnessGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.tau_next == other.tau_next && self.tau_star_next == other.tau_star_next
    }
}

impl Eq for WitnessGraph {}

impl WitnessGraph {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn contains(&self, a: &LatticePoint) -> bool {
        self.index.contains_key(a)
    }

    pub fn index_of(&self, a: &LatticePoint) -> Option<usize> {
        self.index.get(a).map(|&i| i as usize)
    }

    pub fn tau_successor(&self, i: usize) -> &LatticePoint {
        &self.vertices[self.tau_next[i] as usize]
    }

    pub fn tau_star_successor(&self, i: usize) -> &LatticePoint {
        &self.vertices[self.tau_star_next[i] as usize]
    }

    pub fn tau_successor_index(&self, i: usize) -> usize {
        self.tau_next[i] as usize
    }

    /// `(a, τ(a), τ*(a))` for every vertex, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (&LatticePoint, &LatticePoint, &LatticePoint)> + '_ {
        (0..self.len()).map(|i| (&self.vertices[i], self.tau_successor(i), self.tau_star_successor(i)))
    }
}

pub fn witness_set(r: &ParameterVector) -> Result<WitnessGraph, DynamicsError> {
    witness_set_with_budget(r, DEFAULT_WITNESS_BUDGET)
}

/// Closes `{±e_i}` under `τ_r` and `τ*_r`.
pub fn witness_set_with_budget(r: &ParameterVector, budget: usize) -> Result<WitnessGraph, DynamicsError> {
    if !is_interior(r) {
        return Err(DynamicsError::NotInterior);
    }
    let d = r.dim();
    let mut index: FxHashMap<LatticePoint, u32> = FxHashMap::default();
    let mut points: Vec<LatticePoint> = Vec::new();
    for i in 0..d {
        for sign in [1, -1] {
            let p = LatticePoint::unit(d, i, sign);
            index.insert(p.clone(), points.len() as u32);
            points.push(p);
        }
    }
    let mut raw_tau = Vec::new();
    let mut raw_star = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let a = &points[i];
        let t = tau(r, a)?;
        let s = tau_star(r, a)?;
        let mut target = |b: LatticePoint, points: &mut Vec<LatticePoint>| -> Result<u32, DynamicsError> {
            if let Some(&j) = index.get(&b) {
                return Ok(j);
            }
            if points.len() >= budget {
                return Err(DynamicsError::ResourceLimit { budget });
            }
            let j = points.len() as u32;
            index.insert(b.clone(), j);
            points.push(b);
            Ok(j)
        };
        let ti = target(t, &mut points)?;
        let si = target(s, &mut points)?;
        raw_tau.push(ti);
        raw_star.push(si);
        i += 1;
    }

    let mut order: Vec<u32> = (0..points.len() as u32).collect();
    order.sort_unstable_by(|&x, &y| points[x as usize].cmp(&points[y as usize]));
    let mut rank = vec![0u32; points.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old as usize] = new as u32;
    }
    let tau_next = order.iter().map(|&old| rank[raw_tau[old as usize] as usize]).collect();
    let tau_star_next = order.iter().map(|&old| rank[raw_star[old as usize] as usize]).collect();
    let mut slots: Vec<Option<LatticePoint>> = points.into_iter().map(Some).collect();
    let vertices: Vec<LatticePoint> = order
        .iter()
        .map(|&old| slots[old as usize].take().expect("each vertex moved once"))
        .collect();
    for (k, v) in vertices.iter().enumerate() {
        index.insert(v.clone(), k as u32);
    }
    Ok(WitnessGraph {
        dim: d,
        vertices,
        index,
        tau_next,
        tau_star_next,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Finite,
    NonFinite,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "Finite",
            Verdict::NonFinite => "NonFinite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessDecision {
    pub verdict: Verdict,
    pub witness_cycle: Option<Cycle>,
}

impl FinitenessDecision {
    pub fn is_finite(&self) -> bool {
        self.verdict == Verdict::Finite
    }
}

impl fmt::Display for FinitenessDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness_cycle {
            Some(c) => write!(f, "{} cycle={c}", self.verdict),
            None => write!(f, "{}", self.verdict),
        }
    }
}

pub fn decide_finiteness(r: &ParameterVector) -> Result<FinitenessDecision, DynamicsError> {
    Ok(decide_on_graph(&witness_set(r)?))
}

/// Walks `τ`-successors from each unresolved vertex; a vertex is resolved once
/// its orbit is known to reach 0. Every vertex is visited at most twice.
pub fn decide_on_graph(g: &WitnessGraph) -> FinitenessDecision {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const RESOLVED: u8 = 2;
    let mut state = vec![UNSEEN; g.len()];
    if let Some(z) = g.index_of(&LatticePoint::zero(g.dim())) {
        state[z] = RESOLVED;
    }
    let mut path = Vec::new();
    for start in 0..g.len() {
        if state[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = start;
        loop {
            match state[v] {
                RESOLVED => break,
                ON_PATH => {
                    let pos = path.iter().position(|&p| p == v).expect("vertex on path");
                    let cycle =
                        Cycle::new_unchecked(path[pos..].iter().map(|&i: &usize| g.vertices[i].clone()).collect());
                    return FinitenessDecision {
                        verdict: Verdict::NonFinite,
                        witness_cycle: Some(cycle),
                    };
                }
                _ => {
                    state[v] = ON_PATH;
                    path.push(v);
                    v = g.tau_successor_index(v);
                }
            }
        }
        for &p in &path {
            state[p] = RESOLVED;
        }
    }
    FinitenessDecision {
        verdict: Verdict::Finite,
        witness_cycle: None,
    }
}

/// The cell `P_r` of parameters sharing the witness graph of `r`.
pub fn characteristic_cell(r: &ParameterVector) -> Result<ConvexCell, DynamicsError> {
    let g = witness_set(r)?;
    characteristic_cell_of(r, &g)
}

/// [`characteristic_cell`] for an already computed witness graph `g` of `r`.
pub fn characteristic_cell_of(r: &ParameterVector, g: &WitnessGraph) -> Result<ConvexCell, DynamicsError> {
    let mut constraints = Vec::with_capacity(2 * g.len());
    for a in g.vertices() {
        if a.is_zero() {
            continue;
        }
        let normal: Vec<BigInt> = a.entries().iter().map(|&x| BigInt::from(x)).collect();
        let f = BigInt::from(r.floor_dot(a.entries())?);
        if r.dot_is_integer(a.entries()) {
            constraints.push(LinearConstraint::from_integers(normal, -f, Relation::Eq));
        } else {
            let neg: Vec<BigInt> = normal.iter().map(|x| -x).collect();
            constraints.push(LinearConstraint::from_integers(normal, -f.clone(), Relation::Gt));
            constraints.push(LinearConstraint::from_integers(neg, f + 1, Relation::Gt));
        }
    }
    Ok(ConvexCell::from_normalized(r.dim(), constraints))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: &[i64]) -> LatticePoint {
        LatticePoint::new(a)
    }

    #[test]
    fn witness_examples() {
        let g = witness_set(&ParameterVector::from_ratios(&[(0, 1), (0, 1)]).unwrap()).unwrap();
        assert_eq!(
            g.vertices(),
            &[p(&[-1, 0]), p(&[0, -1]), p(&[0, 0]), p(&[0, 1]), p(&[1, 0])]
        );
        let g = witness_set(&ParameterVector::from_ratios(&[(-1, 3), (1, 3)]).unwrap()).unwrap();
        assert_eq!(g.len(), 7);
        assert!(g.contains(&p(&[-1, 1])) && g.contains(&p(&[1, -1])) && g.contains(&p(&[0, 0])));
        assert_eq!(
            witness_set(&ParameterVector::from_ratios(&[(1, 1), (0, 1)]).unwrap()).unwrap_err(),
            DynamicsError::NotInterior
        );
    }

    #[test]
    fn budget_is_enforced() {
        let r = ParameterVector::from_ratios(&[(-1, 3), (1, 3)]).unwrap();
        assert_eq!(
            witness_set_with_budget(&r, 5).unwrap_err(),
            DynamicsError::ResourceLimit { budget: 5 }
        );
    }

    #[test]
    fn decision_examples() {
        let d = decide_finiteness(&ParameterVector::from_ratios(&[(1, 2), (1, 2)]).unwrap()).unwrap();
        assert_eq!(d.verdict, Verdict::Finite);
        assert!(d.witness_cycle.is_none());
        let d = decide_finiteness(&ParameterVector::from_ratios(&[(-1, 3), (1, 3)]).unwrap()).unwrap();
        assert_eq!(d.to_string(), "NonFinite cycle=((1,0),(0,1))");
        let d = decide_finiteness(&ParameterVector::from_ratios(&[(265, 266), (1, 4)]).unwrap()).unwrap();
        assert_eq!(d.verdict, Verdict::NonFinite);
    }

    #[test]
    fn characteristic_cell_of_origin_is_a_point() {
        let r = ParameterVector::from_ratios(&[(0, 1), (0, 1)]).unwrap();
        let cell = characteristic_cell(&r).unwrap();
        assert_eq!(cell.constraints().len(), 2);
        assert!(cell.constraints().iter().all(|c| c.relation() == Relation::Eq));
        let r = ParameterVector::from_ratios(&[(1, 2), (1, 2)]).unwrap();
        let cell = characteristic_cell(&r).unwrap();
        assert!(cell.contains(r.entries()).unwrap());
    }
}
