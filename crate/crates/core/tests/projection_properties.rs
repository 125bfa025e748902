use apollonia_core::longest_path::longest_path_exact;
use apollonia_core::rng::{stream_rng, uniform_index};
use apollonia_core::{Ran, VertexPath};
use proptest::prelude::*;

fn random_walk(ran: &Ran, seed: u64) -> VertexPath {
    let adj = ran.adjacency();
    let mut rng = stream_rng(seed, 3);
    let mut on_path = vec![false; ran.vertex_count()];
    let mut v = uniform_index(&mut rng, ran.vertex_count()) as u32;
    let mut path = vec![v];
    on_path[v as usize] = true;
    loop {
        let free: Vec<u32> = adj.neighbors(v).iter().copied().filter(|&w| !on_path[w as usize]).collect();
        if free.is_empty() {
            break;
        }
        v = free[uniform_index(&mut rng, free.len())];
        on_path[v as usize] = true;
        path.push(v);
    }
    VertexPath::new(path)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn projection_of_random_walks(n in 0usize..300, seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let ran = Ran::generate(n, seed);
        let path = random_walk(&ran, seed);
        let sigma = (n as f64 * frac) as usize;
        let q = ran.project_path(sigma, &path).unwrap();
        q.check_in(&ran.prefix(sigma).unwrap()).unwrap();
        let check = ran.projection_check(sigma, &path).unwrap();
        prop_assert!(check.upper_ok());
        prop_assert!(check.run_bound_holds(), "{:?}", check);
        prop_assert_eq!(check.tau, q.vertices().len());
    }

    #[test]
    fn projection_of_longest_paths(n in 0usize..300, seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let ran = Ran::generate(n, seed);
        let path = longest_path_exact(&ran).path;
        let sigma = (n as f64 * frac) as usize;
        let check = ran.projection_check(sigma, &path).unwrap();
        prop_assert!(check.upper_ok());
        prop_assert!(check.run_bound_holds());
    }
}

#[test]
fn full_prefix_projection_is_identity() {
    let ran = Ran::generate(100, 1);
    let path = longest_path_exact(&ran).path;
    assert_eq!(ran.project_path(100, &path).unwrap(), path);
    assert_eq!(ran.visited_faces(100, &path).unwrap(), 0);
}
