use proptest::prelude::*;

use srs_core::geometry::{cell_vertices_2d, ConvexCell, LinearConstraint, Relation};
use srs_families::{concat, family_cycle, shuffle, verify_equality, FamilyId};

/// Round-robin merge written with explicit cursors.
fn interleave(tuples: &[Vec<u32>]) -> Vec<u32> {
    let mut cursors = vec![0usize; tuples.len()];
    let mut out = Vec::new();
    loop {
        let mut moved = false;
        for (t, c) in tuples.iter().zip(cursors.iter_mut()) {
            if *c < t.len() {
                out.push(t[*c]);
                *c += 1;
                moved = true;
            }
        }
        if !moved {
            return out;
        }
    }
}

fn family() -> impl Strategy<Value = (FamilyId, u32)> {
    prop::sample::select(FamilyId::ALL.to_vec()).prop_flat_map(|id| (Just(id), id.min_n()..=id.max_n().unwrap_or(5)))
}

proptest! {
    #[test]
    fn shuffle_matches_round_robin(tuples in prop::collection::vec(prop::collection::vec(any::<u32>(), 0..8), 0..5)) {
        prop_assert_eq!(shuffle(&tuples), interleave(&tuples));
    }

    #[test]
    fn concat_appends(s in prop::collection::vec(any::<u8>(), 0..8), t in prop::collection::vec(any::<u8>(), 0..8)) {
        let c = concat(&s, &t);
        prop_assert_eq!(&c[..s.len()], &s[..]);
        prop_assert_eq!(&c[s.len()..], &t[..]);
    }

    #[test]
    fn family_cycles_are_shift_compatible((id, n) in family()) {
        let fc = family_cycle(id, n).unwrap();
        let pts = fc.cycle.points();
        for i in 0..pts.len() {
            prop_assert!(pts[i].shifts_into(&pts[(i + 1) % pts.len()]));
        }
    }

    #[test]
    fn certificate_accepts_computed_polygons(
        x0 in -9i64..9, y0 in -9i64..9, w in 1i64..9, h in 1i64..9,
        cut in (-3i64..=3, -3i64..=3, -20i64..=20),
        strict in prop::collection::vec(any::<bool>(), 5),
        flip in any::<prop::sample::Index>(),
    ) {
        let rel = |s: bool| if s { Relation::Gt } else { Relation::Ge };
        let mut rows = vec![
            LinearConstraint::from_i64(&[1, 0], -x0, rel(strict[0])),
            LinearConstraint::from_i64(&[-1, 0], x0 + w, rel(strict[1])),
            LinearConstraint::from_i64(&[0, 1], -y0, rel(strict[2])),
            LinearConstraint::from_i64(&[0, -1], y0 + h, rel(strict[3])),
        ];
        if cut.0 != 0 || cut.1 != 0 {
            rows.push(LinearConstraint::from_i64(&[cut.0, cut.1], cut.2, rel(strict[4])));
        }
        let cell = ConvexCell::from_normalized(2, rows);
        let Ok(poly) = cell_vertices_2d(&cell) else { return Ok(()) };
        prop_assume!(poly.vertices.len() >= 3);
        let cert = verify_equality(cell.constraints(), &poly);
        prop_assert!(cert.pass, "{:?}", cert);
        prop_assert_eq!(cert.checks.len(), 5);

        let mut wrong = poly.clone();
        let k = flip.index(wrong.vertices.len());
        wrong.vertices[k].contained = !wrong.vertices[k].contained;
        prop_assert!(!verify_equality(cell.constraints(), &wrong).pass);
    }
}
