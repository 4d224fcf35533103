mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::*;
use connective::{
    device_of_structure, is_morphism, orbit_device, structure_of_device, u_t, v_t, FiniteTopology,
    PermutationGroup, SeparationDevice, SetMap, StructureRelation, Subset,
};

fn random_device(rng: &mut ChaCha8Rng, n: usize, pairs: usize) -> SeparationDevice {
    let mut out = Vec::new();
    // one point admits no pair of disjoint nonempty sets
    let pairs = if n < 2 { 0 } else { pairs };
    while out.len() < pairs {
        let s = random_subset(rng, n);
        let t = random_subset(rng, n).difference(s);
        if !s.is_empty() && !t.is_empty() {
            out.push((s, t));
        }
    }
    SeparationDevice::new(numbered(n), out).unwrap()
}

fn random_topology(rng: &mut ChaCha8Rng, n: usize) -> FiniteTopology {
    let count = rng.gen_range(0..4);
    let opens: Vec<Subset> = (0..count).map(|_| random_subset(rng, n)).collect();
    FiniteTopology::close(numbered(n), opens).unwrap()
}

fn is_continuous(f: &SetMap, from: &FiniteTopology, to: &FiniteTopology) -> bool {
    to.opens().iter().all(|&o| {
        let preimage: Subset = (0..f.source().len()).filter(|&x| o.contains(f.apply(x))).collect();
        from.opens().contains(&preimage)
    })
}

#[test]
fn device_round_trip_on_every_integral_structure_up_to_four_points() {
    for n in 0..=4 {
        for space in all_spaces(n, true) {
            let back = structure_of_device(&device_of_structure(&space).unwrap());
            assert_eq!(back.compare(&space).unwrap(), StructureRelation::Equal, "{space:?}");
        }
    }
}

#[test]
fn device_structures_are_integral_and_match_separation() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let pairs = rng.gen_range(0..4);
        let device = random_device(&mut rng, n, pairs);
        let space = device.structure();
        assert!(space.is_integral());
        for a in space.ground().full().subsets() {
            assert_eq!(space.is_connected(a).unwrap(), !device.separated(a).unwrap());
        }
    }
}

#[test]
fn orbit_device_separates_exactly_the_translates() {
    let mut rng = rng(32);
    for n in 1..=4 {
        let g = numbered(n);
        let groups = [
            PermutationGroup::trivial(g.clone()),
            PermutationGroup::symmetric(g.clone()),
            PermutationGroup::new(
                g.clone(),
                vec![SetMap::new(g.clone(), g.clone(), random_permutation(&mut rng, n)).unwrap()],
            )
            .unwrap(),
        ];
        for group in &groups {
            let elements = group.elements().unwrap();
            for _ in 0..10 {
                let pairs = rng.gen_range(1..3);
                let device = random_device(&mut rng, n, pairs);
                let orbit = orbit_device(group, &device).unwrap();
                for a in g.full().subsets() {
                    let expected = elements
                        .iter()
                        .any(|phi| device.separated(phi.image(a)).unwrap());
                    assert_eq!(orbit.separated(a).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn classical_connectedness_is_finer_than_open_pair_separation() {
    let mut rng = rng(33);
    for _ in 0..300 {
        let n = rng.gen_range(0..=6);
        let top = random_topology(&mut rng, n);
        assert!(u_t(&top).compare(&v_t(&top)).unwrap().is_at_most(), "{top:?}");
    }
}

#[test]
fn continuous_maps_are_morphisms_of_open_pair_structures() {
    let mut rng = rng(34);
    let mut checked = 0;
    while checked < 300 {
        let n1 = rng.gen_range(1..=5);
        let n2 = rng.gen_range(1..=5);
        let t1 = random_topology(&mut rng, n1);
        let t2 = random_topology(&mut rng, n2);
        let images = (0..n1).map(|_| rng.gen_range(0..n2)).collect();
        let f = SetMap::new(numbered(n1), numbered(n2), images).unwrap();
        if !is_continuous(&f, &t1, &t2) {
            continue;
        }
        assert!(is_morphism(&f, &v_t(&t1), &v_t(&t2)).unwrap());
        assert!(is_morphism(&f, &u_t(&t1), &u_t(&t2)).unwrap());
        checked += 1;
    }
}

#[test]
fn topology_closure_keeps_the_opens_and_is_closed() {
    let mut rng = rng(35);
    for _ in 0..200 {
        let n = rng.gen_range(0..=6);
        let opens: Vec<Subset> = (0..3).map(|_| random_subset(&mut rng, n)).collect();
        let top = FiniteTopology::close(numbered(n), opens.clone()).unwrap();
        let listed = top.opens();
        for &o in &opens {
            assert!(listed.contains(&o));
        }
        assert!(FiniteTopology::new(numbered(n), listed.to_vec()).is_ok());
    }
}
