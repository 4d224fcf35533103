#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use connective::oracle;
use connective::{ConnectivitySpace, Foliation, GroundSet, Representation, SetMap, Subset};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn numbered(n: usize) -> Arc<GroundSet> {
    GroundSet::numbered(n).unwrap().shared()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Subset {
    Subset::from_bits(rng.gen::<u64>()).intersection(Subset::full(n))
}

/// Generators of random sizes; integral with probability 1/2, and non-integral
/// spaces list a random selection of singletons.
pub fn random_generators(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> (Vec<Subset>, bool) {
    let mut gens = Vec::new();
    if n == 0 {
        return (gens, rng.gen());
    }
    let count = rng.gen_range(0..=max_gens);
    for _ in 0..count {
        let len = rng.gen_range(2..=n.clamp(2, 5));
        let g: Subset = (0..len).map(|_| rng.gen_range(0..n)).collect();
        gens.push(g);
    }
    let integral = rng.gen_bool(0.5);
    if !integral {
        gens.extend((0..n).filter(|_| rng.gen_bool(0.5)).map(Subset::singleton));
    }
    (gens, integral)
}

pub fn random_space(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> ConnectivitySpace {
    let (gens, integral) = random_generators(rng, n, max_gens);
    ConnectivitySpace::generated(numbered(n), gens, integral).unwrap()
}

pub fn random_integral_space(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> ConnectivitySpace {
    let (gens, _) = random_generators(rng, n, max_gens);
    ConnectivitySpace::generated(numbered(n), gens, true).unwrap()
}

/// Every structure on `n ≤ 4` points as a space generated by its irreducible
/// parts.
pub fn all_spaces(n: usize, integral_only: bool) -> Vec<ConnectivitySpace> {
    oracle::enumerate_structures(&numbered(n), integral_only)
        .unwrap()
        .iter()
        .map(|s| s.to_space())
        .collect()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Image of `space` under the bijection `perm` (point `i` becomes `perm[i]`).
pub fn relabel(space: &ConnectivitySpace, perm: &[usize]) -> ConnectivitySpace {
    let g = space.ground().clone();
    let f = SetMap::new(g.clone(), g.clone(), perm.to_vec()).unwrap();
    let gens: Vec<Subset> = space.generators().unwrap().iter().map(|&s| f.image(s)).collect();
    ConnectivitySpace::generated(g, gens, space.is_integral()).unwrap()
}

/// Every representation `x ⇝ y`.
pub fn all_representations(x: &ConnectivitySpace, y: &ConnectivitySpace) -> Vec<Representation> {
    let choices: Vec<Subset> = y.ground().full().subsets().filter(|s| !s.is_empty()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; x.len()];
    let total = choices.len().pow(x.len() as u32);
    for _ in 0..total {
        let images = idx.iter().map(|&i| choices[i]).collect();
        if let Ok(rep) = Representation::new(x.clone(), y.clone(), images) {
            out.push(rep);
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < choices.len() {
                break;
            }
            *slot = 0;
        }
    }
    out
}

/// A random valid representation `x ⇝ y`, if one is found quickly.
pub fn random_representation(
    rng: &mut ChaCha8Rng,
    x: &ConnectivitySpace,
    y: &ConnectivitySpace,
) -> Option<Representation> {
    for _ in 0..64 {
        let images = (0..x.len())
            .map(|_| loop {
                let s = random_subset(rng, y.len());
                if !s.is_empty() {
                    break s;
                }
            })
            .collect();
        if let Ok(rep) = Representation::new(x.clone(), y.clone(), images) {
            return Some(rep);
        }
    }
    None
}

/// Regular foliation: the internal structure is generated by externally
/// connected sets, so it is contained in the external one.
pub fn random_regular_foliation(rng: &mut ChaCha8Rng, n: usize) -> Foliation {
    let external = random_space(rng, n, 3);
    let kappa1: Vec<Subset> = external
        .connected_sets()
        .unwrap()
        .into_iter()
        .filter(|k| !k.is_empty())
        .collect();
    let gens: Vec<Subset> = kappa1.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    let integral = external.is_integral() && rng.gen_bool(0.5);
    let internal = ConnectivitySpace::generated(external.ground().clone(), gens, integral).unwrap();
    Foliation::new(internal, external).unwrap()
}

/// Clear, distinct representation with an integral object. Drawn from three
/// families: units of integral spaces, leaf representations of regular
/// foliations, and random disjoint-image representations filtered by the
/// checkers.
pub fn random_rio(rng: &mut ChaCha8Rng, max_n: usize) -> Representation {
    loop {
        let candidate = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=max_n);
                Representation::unit(&random_integral_space(rng, n, 3))
            }
            1 => {
                let n = rng.gen_range(1..=max_n);
                connective::r_down(&random_regular_foliation(rng, n)).unwrap()
            }
            _ => {
                let ny = rng.gen_range(1..=max_n);
                let nx = rng.gen_range(1..=ny);
                let y = random_space(rng, ny, 3);
                let x = random_integral_space(rng, nx, 2);
                // disjoint images: deal the points of y into nx nonempty piles
                let mut order: Vec<usize> = (0..ny).collect();
                order.shuffle(rng);
                let mut images = vec![Subset::EMPTY; nx];
                for (i, &p) in order.iter().enumerate() {
                    let pile = if i < nx { i } else { rng.gen_range(0..nx) };
                    images[pile] = images[pile].with(p);
                }
                match Representation::new(x, y, images) {
                    Ok(rep) => rep,
                    Err(_) => continue,
                }
            }
        };
        if candidate.object().is_integral()
            && candidate.is_distinct()
            && candidate.is_clear().unwrap()
        {
            return candidate;
        }
    }
}

/// Clear and distinct, object not necessarily integral.
pub fn random_clear_distinct(rng: &mut ChaCha8Rng, max_n: usize) -> Representation {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=max_n);
        connective::canonical_representation(&random_space(rng, n, 3)).unwrap()
    } else {
        random_rio(rng, max_n)
    }
}
