use super::{FamilyError, FamilyId};
use srs_core::dynamics::{Cycle, LatticePoint};

/// `s` followed by `t`.
pub fn concat<T: Clone>(s: &[T], t: &[T]) -> Vec<T> {
    let mut out = s.to_vec();
    out.extend_from_slice(t);
    out
}

/// The first entries of all tuples in order, then the second entries, and so
/// on; exhausted tuples are skipped.
pub fn shuffle<T: Clone>(tuples: &[Vec<T>]) -> Vec<T> {
    let longest = tuples.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(tuples.iter().map(Vec::len).sum());
    for i in 0..longest {
        out.extend(tuples.iter().filter_map(|t| t.get(i).cloned()));
    }
    out
}

type P = (i64, i64);

fn seq(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> P) -> Vec<P> {
    range.map(f).collect()
}

fn cat(parts: Vec<Vec<P>>) -> Vec<P> {
    parts.into_iter().fold(Vec::new(), |acc, p| concat(&acc, &p))
}

fn parts(id: FamilyId, n: i64) -> Vec<Vec<P>> {
    match id {
        FamilyId::C0 if n == 1 => vec![vec![(-3, 3), (3, -2), (-2, 1), (1, 1), (1, -2), (-2, 3), (3, -3)]],
        FamilyId::C0 => vec![vec![
            (-5, 1),
            (1, 5),
            (5, -3),
            (-3, -3),
            (-3, 5),
            (5, 1),
            (1, -5),
            (-5, 2),
            (2, 4),
            (4, -4),
            (-4, -1),
            (-1, 5),
            (5, -1),
            (-1, -4),
            (-4, 4),
            (4, 2),
            (2, -5),
        ]],
        FamilyId::C1 => vec![
            cat(vec![
                seq(1..=n, |k| (-2 * n, 2 * k)),
                seq(1..=n - 1, |k| (-2 * n + 2 * k, 2 * n)),
                seq(1..=n - 1, |k| (2 * k - 1, 2 * n - 2 * k)),
                seq(1..=n, |k| (2 * n - 1, -2 * k + 1)),
                seq(1..=n - 1, |k| (2 * n - 2 * k - 1, -2 * n + 1)),
                seq(1..=n - 1, |k| (-2 * k, -2 * n + 2 * k + 1)),
            ]),
            cat(vec![
                seq(1..=n - 1, |k| (2 * k, 2 * n - 2 * k)),
                seq(1..=n, |k| (2 * n, -2 * k + 1)),
                seq(1..=n - 1, |k| (2 * n - 2 * k, -2 * n + 1)),
                seq(1..=n - 1, |k| (-2 * k + 1, -2 * n + 2 * k + 1)),
                seq(1..=n, |k| (-2 * n + 1, 2 * k)),
                seq(1..=n - 1, |k| (-2 * n + 2 * k + 1, 2 * n)),
            ]),
            cat(vec![
                seq(1..=n - 1, |k| (2 * n - 2 * k, -2 * n)),
                seq(1..=n - 1, |k| (-2 * k + 1, -2 * n + 2 * k)),
                seq(1..=n, |k| (-2 * n + 1, 2 * k - 1)),
                seq(1..=n - 1, |k| (-2 * n + 2 * k + 1, 2 * n - 1)),
                seq(1..=n - 1, |k| (2 * k, 2 * n - 2 * k - 1)),
                seq(1..=n, |k| (2 * n, -2 * k)),
            ]),
        ],
        FamilyId::C2 => vec![
            cat(vec![
                seq(1..=n + 1, |k| (-2 * n, 2 * k - 1)),
                seq(1..=n - 1, |k| (-2 * n + 2 * k, 2 * n + 1)),
            ]),
            cat(vec![
                seq(1..=n, |k| (2 * k - 1, 2 * n - 2 * k + 1)),
                seq(1..=n, |k| (2 * n + 1, -2 * k)),
            ]),
            cat(vec![
                seq(1..=n, |k| (2 * n - 2 * k + 1, -2 * n)),
                seq(1..=n - 1, |k| (-2 * k, -2 * n + 2 * k)),
            ]),
        ],
        FamilyId::C3 => vec![
            cat(vec![
                vec![(-2 * n - 1, 1)],
                seq(1..=n, |k| (-2 * n + 2 * k - 2, -2 * k)),
                seq(1..=n, |k| (2 * k - 1, -2 * n - 1)),
            ]),
            cat(vec![
                vec![(1, 2 * n + 1)],
                seq(1..=n - 1, |k| (-2 * k, 2 * n + 2)),
                vec![(-2 * n, 2 * n + 1)],
                seq(1..=n - 1, |k| (-2 * n - 1, 2 * n - 2 * k + 1)),
            ]),
            cat(vec![
                vec![(2 * n + 1, -2 * n)],
                seq(1..=n - 1, |k| (2 * n + 2, -2 * n + 2 * k)),
                seq(1..=n, |k| (2 * n - 2 * k + 3, 2 * k - 1)),
            ]),
        ],
        FamilyId::C4 => vec![
            cat(vec![
                vec![(-2 * n - 1, 2)],
                seq(1..=n, |k| (-2 * n + 2 * k - 2, -2 * k + 1)),
                seq(1..=n - 1, |k| (2 * k - 1, -2 * n)),
                vec![(2 * n - 1, -2 * n + 1)],
                seq(1..=n - 1, |k| (2 * n, -2 * n + 2 * k + 1)),
                seq(1..=n, |k| (2 * n - 2 * k + 1, 2 * k)),
                seq(1..=n - 1, |k| (-2 * k, 2 * n + 1)),
                vec![(-2 * n, 2 * n)],
                seq(1..=n - 2, |k| (-2 * n - 1, 2 * n - 2 * k)),
            ]),
            cat(vec![
                vec![(2, 2 * n)],
                seq(1..=n - 1, |k| (-2 * k + 1, 2 * n + 1)),
                vec![(-2 * n + 1, 2 * n)],
                seq(1..=n - 1, |k| (-2 * n, 2 * n - 2 * k)),
                seq(1..=n, |k| (-2 * n + 2 * k - 1, -2 * k + 1)),
                seq(1..=n - 1, |k| (2 * k, -2 * n)),
                vec![(2 * n, -2 * n + 1)],
                seq(1..=n - 1, |k| (2 * n + 1, -2 * n + 2 * k + 1)),
                seq(1..=n - 1, |k| (2 * n - 2 * k + 2, 2 * k)),
            ]),
            cat(vec![
                vec![(2 * n, -2 * n)],
                seq(1..=n - 1, |k| (2 * n + 1, -2 * n + 2 * k)),
                seq(1..=n, |k| (2 * n - 2 * k + 2, 2 * k - 1)),
                seq(1..=n - 1, |k| (-2 * k + 1, 2 * n)),
                vec![(-2 * n + 1, 2 * n - 1)],
                seq(1..=n - 1, |k| (-2 * n, 2 * n - 2 * k - 1)),
                seq(1..=n, |k| (-2 * n + 2 * k - 1, -2 * k)),
                seq(1..=n - 1, |k| (2 * k, -2 * n - 1)),
            ]),
        ],
        FamilyId::C5 => vec![
            cat(vec![vec![(-n - 1, 1)], seq(1..=n - 1, |k| (-n + k - 1, k + 2))]),
            cat(vec![
                vec![(1, n + 1)],
                seq(1..=n - 2, |k| (k + 2, n - k + 1)),
                vec![(n + 1, 1)],
            ]),
            cat(vec![seq(1..=n - 1, |k| (n - k + 2, -k - 1)), vec![(1, -n - 1)]]),
            seq(1..=n - 1, |k| (-k - 1, -n + k - 1)),
        ],
        FamilyId::C6 => vec![
            cat(vec![seq(1..=n, |k| (-n + k - 1, -k)), vec![(1, -n)]]),
            cat(vec![
                seq(1..=n, |k| (-k, n - k + 1)),
                seq(1..=n, |k| (n - k + 1, k + 1)),
            ]),
            cat(vec![seq(1..=n - 1, |k| (k + 1, -n + k)), vec![(n + 1, 1)]]),
        ],
    }
}

/// The shuffled point tuple of a family member, before any reordering.
pub fn family_points(id: FamilyId, n: u32) -> Result<Vec<LatticePoint>, FamilyError> {
    id.check(n)?;
    let pts = shuffle(&parts(id, i64::from(n)));
    Ok(pts.into_iter().map(|(x, y)| LatticePoint::new(&[x, y])).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCycle {
    pub cycle: Cycle,
    /// The shuffled tuple was not shift compatible and had to be reordered.
    pub reordered: bool,
}

/// The cycle of a family member.
///
/// If the shuffled tuple is not shift compatible, its points are rearranged
/// into the unique cyclic order in which each point's first entry equals the
/// previous point's last entry, starting from the same first point.
pub fn family_cycle(id: FamilyId, n: u32) -> Result<FamilyCycle, FamilyError> {
    let pts = family_points(id, n)?;
    if let Ok(cycle) = Cycle::new(pts.clone()) {
        return Ok(FamilyCycle {
            cycle,
            reordered: false,
        });
    }
    let order = compatible_order(&pts).map_err(|e| FamilyError::NoCompatibleOrder(format!("{id}({n}): {e}")))?;
    let cycle = Cycle::new(order.into_iter().map(|i| pts[i].clone()).collect())?;
    Ok(FamilyCycle { cycle, reordered: true })
}

/// All Hamiltonian cycles of the shift relation through `pts[0]`; succeeds
/// only if there is exactly one.
fn compatible_order(pts: &[LatticePoint]) -> Result<Vec<usize>, String> {
    let mut sorted: Vec<&LatticePoint> = pts.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("repeated point".into());
    }
    let next: Vec<Vec<usize>> = pts
        .iter()
        .map(|p| (0..pts.len()).filter(|&j| p.shifts_into(&pts[j])).collect())
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut path = vec![0];
    let mut used = vec![false; pts.len()];
    used[0] = true;
    search(&next, &mut path, &mut used, &mut found);
    match found.len() {
        0 => Err("no order exists".into()),
        1 => Ok(found.pop().expect("one order")),
        _ => Err("several orders exist".into()),
    }
}

fn search(next: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], found: &mut Vec<Vec<usize>>) {
    if found.len() > 1 {
        return;
    }
    let last = *path.last().expect("nonempty path");
    if path.len() == next.len() {
        if next[last].contains(&path[0]) {
            found.push(path.clone());
        }
        return;
    }
    for &j in &next[last] {
        if !used[j] {
            used[j] = true;
            path.push(j);
            search(next, path, used, found);
            path.pop();
            used[j] = false;
        }
    }
}
