use wedge_core::{
    convex_hull, enumerate_lattice_convex, is_lattice_convex, verify_grid, GridSpec,
    PointConfiguration, Verdict,
};

fn exception_counts(w: u32, h: u32, jobs: Option<usize>) -> (usize, Vec<(u64, usize)>) {
    let run = verify_grid(&GridSpec::new(w, h).unwrap(), jobs).unwrap();
    assert!(run.summary.violations.is_empty());
    (
        run.summary.configs,
        run.summary
            .exceptions_seen
            .iter()
            .map(|e| (e.k, e.count))
            .collect(),
    )
}

#[test]
fn frozen_class_counts() {
    assert_eq!(exception_counts(2, 2, None), (132, vec![(1, 4)]));
    assert_eq!(exception_counts(3, 2, None), (420, vec![(1, 8), (2, 4)]));
}

#[test]
fn worker_count_does_not_change_results() {
    let g = GridSpec::new(3, 2).unwrap();
    let one = verify_grid(&g, Some(1)).unwrap();
    let many = verify_grid(&g, Some(4)).unwrap();
    assert_eq!(one, many);
    assert_eq!(
        serde_json::to_string(&one.summary).unwrap(),
        serde_json::to_string(&many.summary).unwrap()
    );
}

#[test]
fn unit_square_subsets() {
    let corners = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let mut raw = 0;
    for mask in 1u32..16 {
        let pts: Vec<_> = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| corners[i])
            .collect();
        assert!(is_lattice_convex(&PointConfiguration::from_xy(&pts)).unwrap());
        raw += 1;
    }
    assert_eq!(raw, 15);
    assert_eq!(
        enumerate_lattice_convex(&GridSpec::new(1, 1).unwrap())
            .unwrap()
            .len(),
        10
    );
}

#[test]
fn four_point_exceptions_match_pick() {
    // triangles with three boundary points and one interior point
    let run = verify_grid(&GridSpec::new(3, 2).unwrap(), None).unwrap();
    for o in &run.outcomes {
        let hull = convex_hull(&o.report.base).unwrap();
        let pick = o.report.n == 4
            && hull.vertices().len() == 3
            && hull.boundary_point_count() == 3
            && hull.double_area() == 3;
        assert_eq!(pick, o.report.exception_k == Some(1), "{:?}", o.report.base);
        assert_eq!(o.report.verdict, Verdict::Conforms);
    }
}

#[test]
fn grid_listing_is_normalized_and_sorted() {
    let list = enumerate_lattice_convex(&GridSpec::new(2, 2).unwrap()).unwrap();
    assert!(list.windows(2).all(|w| w[0] < w[1]));
    for s in &list {
        assert_eq!(&s.normalized(), s);
        assert!(is_lattice_convex(s).unwrap());
    }
}

#[test]
fn p_good_witness_survives_in_bigger_polygons() {
    use wedge_core::{is_p_good, remove_vertex, vertex_set, wedge};
    let list = enumerate_lattice_convex(&GridSpec::new(2, 2).unwrap()).unwrap();
    let mut checked = 0;
    for small in list.iter().filter(|s| s.len() >= 2) {
        for big in list.iter().filter(|b| small.is_subset(b)) {
            for p in 1..small.len() {
                let Some(w) = is_p_good(small, p).unwrap() else {
                    continue;
                };
                for v in vertex_set(big).unwrap().iter() {
                    let rest = remove_vertex(big, v).unwrap();
                    assert!(
                        wedge(&rest, p).unwrap().contains(&w),
                        "{small:?} {big:?} {p}"
                    );
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}
