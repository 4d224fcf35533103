//! Acceptance criteria, one verdict line each.
//!
//! Every criterion is a fixed-seed computation with a pinned time budget; a
//! criterion passes when it reports no failures and finishes within budget.
//! Budgets assume the workspace test profile (optimized).

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::*;
use connective::oracle;
use connective::{
    canonical_representation, check_adjunction, connectivity_order, device_of_structure,
    iso_rho_down_g, kleisli_compose, phi_kappa, structure_of_device, u_t, v_t, ConnectivitySpace,
    FiniteTopology, Representation, StructureRelation, Subset,
};

/// Failures collected by a criterion, plus a short note on what was covered.
#[derive(Default)]
struct Report {
    covered: String,
    failures: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn() -> Report,
}

fn s(indices: &[usize]) -> Subset {
    Subset::from_indices(indices.iter().copied())
}

fn borromean() -> Report {
    let mut r = Report::default();
    let b3 = ConnectivitySpace::generated(numbered(3), [s(&[0, 1, 2])], true).unwrap();
    let kappa = oracle::materialize(&b3).unwrap();
    let expected = vec![Subset::EMPTY, s(&[0]), s(&[1]), s(&[2]), s(&[0, 1, 2])];
    r.check(kappa.kappa() == expected, || format!("κ(B3) = {:?}", kappa.kappa()));
    for pair in [s(&[0, 1]), s(&[0, 2]), s(&[1, 2])] {
        r.check(!b3.is_connected(pair).unwrap(), || format!("pair {pair:?} connected"));
    }
    r.check(b3.is_connected(Subset::full(3)).unwrap(), || "triple not connected".into());
    let order = connectivity_order(&b3).unwrap();
    let by_definition = oracle::order_by_definition(&b3).unwrap();
    r.check(order == 1 && by_definition == 1, || {
        format!("order {order}, by definition {by_definition}")
    });
    r.covered = format!("κ has {} members, order {order}", kappa.kappa().len());
    r
}

fn topology_example() -> Report {
    let mut r = Report::default();
    let g = numbered(3);
    r.check(
        FiniteTopology::new(g.clone(), [s(&[0, 1]), s(&[0, 2])]).is_err(),
        || "unclosed opens accepted".into(),
    );
    let top = FiniteTopology::new(g, [s(&[0, 1]), s(&[0, 2]), s(&[0])]).unwrap();
    let pair = s(&[1, 2]);
    let in_u = u_t(&top).is_connected(pair).unwrap();
    let in_v = v_t(&top).is_connected(pair).unwrap();
    r.check(!in_u, || "{2,3} connected in u_t".into());
    r.check(in_v, || "{2,3} not connected in v_t".into());
    r.covered = format!("{{2,3}}: u_t {in_u}, v_t {in_v}");
    r
}

fn separation_round_trip() -> Report {
    let mut r = Report::default();
    let mut count = 0;
    for n in 0..=4 {
        for space in all_spaces(n, true) {
            let back = structure_of_device(&device_of_structure(&space).unwrap());
            let relation = back.compare(&space).unwrap();
            r.check(relation == StructureRelation::Equal, || format!("{space:?}: {relation}"));
            count += 1;
        }
    }
    r.covered = format!("{count} integral structures");
    r
}

fn membership_equivalence() -> Report {
    let mut r = Report::default();
    let mut queries = 0u64;
    for n in 0..=4 {
        let g = numbered(n);
        for (gens, integral) in oracle::generator_families(n).unwrap() {
            let space = ConnectivitySpace::generated(g.clone(), gens.clone(), integral).unwrap();
            let closed = oracle::closure(&gens, integral, &g).unwrap();
            for a in g.full().subsets() {
                let fast = space.is_connected(a).unwrap();
                r.check(fast == closed.contains(a), || format!("{space:?} on {a:?}"));
                queries += 1;
            }
        }
    }
    let mut rng = rng(4);
    let g = numbered(12);
    for _ in 0..1000 {
        let (gens, integral) = random_generators(&mut rng, 12, 8);
        let space = ConnectivitySpace::generated(g.clone(), gens.clone(), integral).unwrap();
        let a = random_subset(&mut rng, 12);
        let expected = oracle::closure_membership(&gens, integral, &g, a).unwrap();
        r.check(space.is_connected(a).unwrap() == expected, || format!("{space:?} on {a:?}"));
    }
    r.covered = format!("{queries} exhaustive queries, 1000 random at n = 12");
    r
}

fn same_rep(a: &Representation, b: &Representation) -> bool {
    a.images() == b.images()
        && a.object().compare(b.object()).unwrap() == StructureRelation::Equal
        && a.space().compare(b.space()).unwrap() == StructureRelation::Equal
}

fn monad_laws() -> Report {
    let mut r = Report::default();
    let spaces: Vec<ConnectivitySpace> = (0..=2).flat_map(|n| all_spaces(n, false)).collect();
    // reps[i][j]: every representation spaces[i] ⇝ spaces[j]
    let reps: Vec<Vec<Vec<Representation>>> = spaces
        .iter()
        .map(|x| spaces.iter().map(|y| all_representations(x, y)).collect())
        .collect();
    let mut units = 0;
    let mut triples = 0;
    for (i, x) in spaces.iter().enumerate() {
        for (j, y) in spaces.iter().enumerate() {
            for rho in &reps[i][j] {
                let left = kleisli_compose(&Representation::unit(y), rho).unwrap();
                let right = kleisli_compose(rho, &Representation::unit(x)).unwrap();
                r.check(same_rep(&left, rho) && same_rep(&right, rho), || format!("unit law at {rho:?}"));
                units += 1;
            }
        }
    }
    for i in 0..spaces.len() {
        for j in 0..spaces.len() {
            for k in 0..spaces.len() {
                if reps[i][j].is_empty() || reps[j][k].is_empty() {
                    continue;
                }
                for l in 0..spaces.len() {
                    for rho in &reps[i][j] {
                        for tau in &reps[j][k] {
                            let tau_rho = kleisli_compose(tau, rho).unwrap();
                            for sigma in &reps[k][l] {
                                let outer = kleisli_compose(&kleisli_compose(sigma, tau).unwrap(), rho).unwrap();
                                let inner = kleisli_compose(sigma, &tau_rho).unwrap();
                                r.check(outer.images() == inner.images(), || {
                                    format!("associativity at {rho:?}, {tau:?}, {sigma:?}")
                                });
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut rng = rng(5);
    let mut random = 0;
    while random < 500 {
        let chain: Vec<ConnectivitySpace> = (0..4)
            .map(|_| {
                let n = rng.gen_range(1..=4);
                random_space(&mut rng, n, 3)
            })
            .collect();
        let (Some(rho), Some(tau), Some(sigma)) = (
            random_representation(&mut rng, &chain[0], &chain[1]),
            random_representation(&mut rng, &chain[1], &chain[2]),
            random_representation(&mut rng, &chain[2], &chain[3]),
        ) else {
            continue;
        };
        let outer = kleisli_compose(&kleisli_compose(&sigma, &tau).unwrap(), &rho).unwrap();
        let inner = kleisli_compose(&sigma, &kleisli_compose(&tau, &rho).unwrap()).unwrap();
        let left = kleisli_compose(&Representation::unit(rho.space()), &rho).unwrap();
        let right = kleisli_compose(&rho, &Representation::unit(rho.object())).unwrap();
        r.check(same_rep(&outer, &inner), || format!("random associativity at {rho:?}"));
        r.check(same_rep(&left, &rho) && same_rep(&right, &rho), || format!("random unit law at {rho:?}"));
        random += 1;
    }
    r.covered = format!("{units} unit checks, {triples} exhaustive triples, {random} random triples");
    r
}

fn adjunction() -> Report {
    let mut r = Report::default();
    let mut rng = rng(6);
    let mut homs = 0;
    let mut inhabited = 0;
    for _ in 0..150 {
        let n = rng.gen_range(1..=3);
        let z = random_regular_foliation(&mut rng, n);
        let rho = random_rio(&mut rng, 3);
        let report = check_adjunction(&z, &rho).unwrap();
        r.check(report.holds(), || format!("{z:?} / {rho:?}: {:?}", report.failures));
        homs += report.representation_homs;
        inhabited += usize::from(report.representation_homs > 0);
    }
    r.covered = format!("150 pairs, {inhabited} with morphisms, {homs} morphisms matched");
    r
}

fn coarse_leaf_isomorphism() -> Report {
    let mut r = Report::default();
    let mut rng = rng(7);
    for _ in 0..100 {
        let rho = random_clear_distinct(&mut rng, 4);
        match iso_rho_down_g(&rho) {
            Ok(iso) => {
                let images_kept = (0..rho.object().len())
                    .all(|a| iso.down.image(iso.forward.alpha.apply(a)) == rho.image(a));
                let beta_identity = iso.forward.beta.images().iter().enumerate().all(|(i, &j)| i == j);
                r.check(images_kept && beta_identity, || format!("{rho:?}: wrong isomorphism"));
            }
            Err(e) => r.failures.push(format!("{rho:?}: {e}")),
        }
    }
    r.covered = "100 representations".into();
    r
}

fn canonical_representations() -> Report {
    let mut r = Report::default();
    let check = |r: &mut Report, x: &ConnectivitySpace| match canonical_representation(x) {
        Ok(rep) => {
            let ok = rep.is_clear().unwrap() && rep.is_distinct() && rep.space().is_integral();
            r.check(ok, || format!("{x:?}: not clear/distinct/integral"));
        }
        Err(e) => r.failures.push(format!("{x:?}: {e}")),
    };
    let mut count = 0;
    for n in 0..=4 {
        for x in all_spaces(n, false) {
            check(&mut r, &x);
            count += 1;
        }
    }
    let mut rng = rng(8);
    for _ in 0..200 {
        let n = rng.gen_range(5..=8);
        check(&mut r, &random_space(&mut rng, n, 6));
    }
    r.covered = format!("{count} exhaustive, 200 random");
    r
}

/// Distinct representation with an integral object; images cover a random
/// part of the space.
fn random_distinct_integral(rng: &mut ChaCha8Rng) -> Representation {
    loop {
        let ny = rng.gen_range(1..=6);
        let nx = rng.gen_range(1..=ny);
        let x = random_integral_space(rng, nx, 3);
        let y = random_space(rng, ny, 4);
        let mut order = random_permutation(rng, ny);
        order.truncate(rng.gen_range(nx..=ny));
        let mut images = vec![Subset::EMPTY; nx];
        for (i, &p) in order.iter().enumerate() {
            let pile = if i < nx { i } else { rng.gen_range(0..nx) };
            images[pile] = images[pile].with(p);
        }
        if let Ok(rep) = Representation::new(x, y, images) {
            return rep;
        }
    }
}

fn phi_regularity_and_leaves() -> Report {
    let mut r = Report::default();
    let mut rng = rng(9);
    for _ in 0..200 {
        let rho = random_distinct_integral(&mut rng);
        let z = phi_kappa(&rho).unwrap();
        r.check(z.is_regular().unwrap(), || format!("{rho:?}: phi not regular"));
        let mut images = rho.images().to_vec();
        images.sort();
        let leaves = z.leaves().unwrap();
        r.check(leaves == images, || format!("{rho:?}: leaves {leaves:?}"));
    }
    r.covered = "200 representations".into();
    r
}

fn order_suite() -> Report {
    let mut r = Report::default();
    let mut count = 0;
    for n in 0..=4 {
        for space in all_spaces(n, false) {
            let fast = connectivity_order(&space).unwrap();
            let slow = oracle::order_by_definition(&space).unwrap();
            r.check(fast == slow, || format!("{space:?}: {fast} vs {slow}"));
            count += 1;
        }
    }
    let mut rng = rng(10);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let space = random_space(&mut rng, n, 6);
        let fast = connectivity_order(&space).unwrap();
        let slow = oracle::order_by_definition(&space).unwrap();
        r.check(fast == slow, || format!("{space:?}: {fast} vs {slow}"));
        for _ in 0..20 {
            let perm = random_permutation(&mut rng, n);
            let moved = connectivity_order(&relabel(&space, &perm)).unwrap();
            r.check(moved == fast, || format!("{space:?} relabeled by {perm:?}: {moved}"));
        }
    }
    r.covered = format!("{count} exhaustive, 200 random with 20 relabelings each");
    r
}

fn diffeology_predicate() -> Report {
    let mut r = Report::default();
    let mut count = 0;
    for n in 0..=4 {
        for s in oracle::enumerate_structures(&numbered(n), false).unwrap() {
            let space = s.to_space();
            r.check(space.is_diffeologizable() == s.is_integral(), || format!("{space:?}"));
            count += 1;
        }
    }
    r.covered = format!("{count} structures");
    r
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: "1", title: "Borromean space", budget: Duration::from_secs(1), run: borromean },
    Criterion { id: "2", title: "two connectivity functors on a 3-point topology", budget: Duration::from_secs(1), run: topology_example },
    Criterion { id: "3", title: "separation device round trip", budget: Duration::from_secs(60), run: separation_round_trip },
    Criterion { id: "4", title: "membership against the closure oracle", budget: Duration::from_secs(60), run: membership_equivalence },
    Criterion { id: "5", title: "Kleisli monad laws", budget: Duration::from_secs(30), run: monad_laws },
    Criterion { id: "6", title: "leaf representation adjunction", budget: Duration::from_secs(120), run: adjunction },
    Criterion { id: "7", title: "representation isomorphic to its coarse leaf representation", budget: Duration::from_secs(30), run: coarse_leaf_isomorphism },
    Criterion { id: "8", title: "canonical clear distinct representations", budget: Duration::from_secs(60), run: canonical_representations },
    Criterion { id: "9", title: "phi regularity and leaves", budget: Duration::from_secs(30), run: phi_regularity_and_leaves },
    Criterion { id: "10", title: "connectivity order against the oracle", budget: Duration::from_secs(60), run: order_suite },
    Criterion { id: "D", title: "diffeologizable iff integral", budget: Duration::from_secs(10), run: diffeology_predicate },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let pass = report.failures.is_empty() && in_budget;
        println!(
            "[{}] criterion {}: {} ({}; {:.3} s of {} s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            report.covered,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if !in_budget {
            println!("    over budget");
        }
        for f in report.failures.iter().take(5) {
            println!("    {f}");
        }
        if report.failures.len() > 5 {
            println!("    ... {} more", report.failures.len() - 5);
        }
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
