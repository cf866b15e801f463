mod common;

use common::{grid_oracle_edges, integer_instance, predicate_edges};
use yaolab::geometry::{region_empty, PointSet};
use yaolab::is_del_edge;

#[test]
fn predicate_matches_grid_oracle() {
    for seed in 0..300u64 {
        let n = 2 + (seed % 7) as usize;
        let ps = integer_instance(seed, n, 15);
        assert_eq!(
            predicate_edges(&ps),
            grid_oracle_edges(&ps),
            "seed {seed}: {:?}",
            ps.points()
        );
    }
}

#[test]
fn oracle_handles_blocked_pair() {
    let ps = PointSet::from_coords(&[(0., 0.), (4., 1.), (1., 4.), (2., 2.)]).unwrap();
    assert_eq!(predicate_edges(&ps), grid_oracle_edges(&ps));
    assert!(grid_oracle_edges(&ps).contains(&(0, 1)));
    let ps = PointSet::from_coords(&[(0., 0.), (4., 1.), (1., 4.), (2., 2.), (3., -1.)]).unwrap();
    assert_eq!(predicate_edges(&ps), grid_oracle_edges(&ps));
    assert!(!grid_oracle_edges(&ps).contains(&(0, 1)));
}

#[test]
fn witnesses_are_empty_and_touch_both_endpoints() {
    for seed in 300..400u64 {
        let ps = integer_instance(seed, 8, 15);
        for u in 0..ps.len() {
            for v in u + 1..ps.len() {
                if let Some(sq) = is_del_edge(&ps, u, v).unwrap() {
                    assert!(
                        sq.on_boundary(ps[u]) && sq.on_boundary(ps[v]),
                        "seed {seed} ({u},{v})"
                    );
                    assert!(region_empty(&ps, &sq, &[u, v]));
                    assert_eq!(sq.side(), ps[u].dinf(&ps[v]));
                }
            }
        }
    }
}
