use secdom::formulations::lookup;
use secdom::graphs::{gp_graph, hex_grid, queen_graph, square_grid, torus_grid, Graph};
use secdom::solve::{solve_formulation, SolveConfig};
use std::time::Instant;

fn run(kind: &str, label: &str, g: &Graph) {
    let f = lookup(kind).unwrap();
    let t = Instant::now();
    let r = solve_formulation(g, f, &SolveConfig::default()).unwrap();
    println!(
        "{kind:9} {label:10} n={:3} obj={:?} nodes={} lp_it={} t={:.2}s",
        g.n(),
        r.objective,
        r.nodes,
        r.lp_iterations,
        t.elapsed().as_secs_f64()
    );
}

#[test]
#[ignore]
fn probe_improved_families() {
    run("improved", "grid5", &square_grid(5).unwrap());
    run("improved", "grid6", &square_grid(6).unwrap());
    run("improved", "torus5", &torus_grid(5).unwrap());
    run("improved", "hex4", &hex_grid(4).unwrap());
    run("improved", "gp15_1", &gp_graph(15, 1).unwrap());
    run("improved", "gp15_2", &gp_graph(15, 2).unwrap());
    run("improved", "queen5", &queen_graph(5).unwrap());
}

#[test]
#[ignore]
fn probe_improved_queen6() {
    run("improved", "queen6", &queen_graph(6).unwrap());
}

#[test]
#[ignore]
fn probe_lp_queen6_root() {
    use secdom::solve::{solve_lp, DenseLp};
    let g = queen_graph(6).unwrap();
    let f = lookup("improved").unwrap();
    let m = f.build(&g).unwrap();
    let lp = DenseLp::from_model(&m);
    let t = Instant::now();
    let r = solve_lp(&lp, &lp.lower, &lp.upper, 2_000_000);
    match r {
        Ok(sol) => println!(
            "root status={:?} obj={:.6} iters={} t={:.2}s",
            sol.status,
            sol.objective,
            sol.iterations,
            t.elapsed().as_secs_f64()
        ),
        Err(e) => println!("root err={e:?} t={:.2}s", t.elapsed().as_secs_f64()),
    }
}

#[test]
#[ignore]
fn probe_burger() {
    run("burger", "grid4", &square_grid(4).unwrap());
    run("burger", "grid5", &square_grid(5).unwrap());
    run("burger", "torus4", &torus_grid(4).unwrap());
    run("burger", "queen4", &queen_graph(4).unwrap());
    run("burger", "gp10_1", &gp_graph(10, 1).unwrap());
    run("burger", "gp10_2", &gp_graph(10, 2).unwrap());
}

#[test]
#[ignore]
fn probe_lp_scdom_root() {
    use rand::SeedableRng;
    use secdom::solve::{solve_lp, DenseLp};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = secdom::graphs::random_connected(&mut rng, 9, 3);
    let f = lookup("scdom").unwrap();
    let m = f.build(&g).unwrap();
    let lp = DenseLp::from_model(&m);
    println!("rows={} cols={}", lp.rows.len(), lp.ncols);
    let t = Instant::now();
    let r = solve_lp(&lp, &lp.lower, &lp.upper, 200_000);
    match r {
        Ok(sol) => println!(
            "root status={:?} obj={:.6} iters={} t={:.2}s",
            sol.status,
            sol.objective,
            sol.iterations,
            t.elapsed().as_secs_f64()
        ),
        Err(e) => println!("root err={e:?} t={:.2}s", t.elapsed().as_secs_f64()),
    }
}

#[test]
#[ignore]
fn probe_scdom_tree() {
    use rand::SeedableRng;
    use secdom::solve::{branch_and_bound, DenseLp, SearchLimits};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = secdom::graphs::random_connected(&mut rng, 9, 3);
    let f = lookup("scdom").unwrap();
    let m = f.build(&g).unwrap();
    let lp = DenseLp::from_model(&m);
    for cap in [500usize, 2000, 8000] {
        let t = Instant::now();
        let out = branch_and_bound(
            &lp,
            None,
            &SearchLimits {
                time_limit: None,
                node_limit: Some(cap),
                lp_iteration_cap: 200_000,
            },
        )
        .unwrap();
        println!(
            "cap={cap} status={:?} inc={:?} lb={:?} nodes={} lp_it={} t={:.2}s",
            out.status,
            out.incumbent.as_ref().map(|(o, _)| *o),
            out.lower_bound,
            out.nodes,
            out.lp_iterations,
            t.elapsed().as_secs_f64()
        );
        if out.status == secdom::solve::SearchStatus::Optimal {
            break;
        }
    }
}

#[test]
#[ignore]
fn probe_scdom_small() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for i in 0..5 {
        let g = secdom::graphs::random_connected(&mut rng, 9, 3);
        eprintln!("DBG starting rand9_{i} n={} m={}", g.n(), g.m());
        run("scdom", &format!("rand9_{i}"), &g);
    }
    eprintln!("DBG starting grid3");
    run("scdom", "grid3", &square_grid(3).unwrap());
}
