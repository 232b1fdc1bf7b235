use pgexpander::bounds::{self, SearchOptions, SearchStatus};
use pgexpander::TannerGraph;

fn search(p: usize, delta: usize) -> bounds::SearchResult {
    let g = TannerGraph::build(5).unwrap();
    bounds::search_min_config(&g, p, delta, SearchOptions::default()).unwrap()
}

#[test]
fn degree_eight_needs_twelve_per_side() {
    for p in 9..=11 {
        let r = search(p, 8);
        assert_eq!(r.status, SearchStatus::NotFound, "p = {p}");
        assert!(r.witness.is_none());
    }
    let r = search(12, 8);
    assert_eq!(r.status, SearchStatus::Found);
    let (pts, hyps) = r.witness.unwrap();
    assert!(bounds::verify_witness(&pts, &hyps, 12, 8));
}

#[test]
fn degree_seven_needs_nine_per_side() {
    assert_eq!(search(8, 7).status, SearchStatus::NotFound);
    let r = search(9, 7);
    let (pts, hyps) = r.witness.expect("witness");
    assert!(bounds::verify_witness(&pts, &hyps, 9, 7));
}

#[test]
fn square_witnesses_up_to_degree_four() {
    for delta in 2..=4 {
        let r = search(delta, delta);
        let (pts, hyps) = r.witness.expect("witness");
        assert!(bounds::verify_witness(&pts, &hyps, delta, delta));
    }
}

#[test]
fn spectral_bound_is_consistent_with_search() {
    for delta in 5..=8u64 {
        let lower = bounds::eig_xi_lower_bound(delta, 63, 31, 4).unwrap() as usize;
        if lower > delta as usize {
            assert_eq!(search(lower - 1, delta as usize).status, SearchStatus::NotFound);
        }
    }
}
