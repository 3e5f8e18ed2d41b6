//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use foliares::classes::SplitBundle;
use foliares::residue::Scenario;
use foliares::{LocalPoly, MultiDegree, MultiProjectiveSpace};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

pub fn read_scenario(name: &str) -> String {
    std::fs::read_to_string(scenario_path(name)).expect("bundled scenario")
}

/// Factor dimensions with `1 <= sum <= max_dim`.
pub fn random_dims(rng: &mut StdRng, max_dim: u32) -> Vec<u32> {
    let total = rng.gen_range(1..=max_dim);
    let mut dims = Vec::new();
    let mut left = total;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        dims.push(d);
        left -= d;
    }
    dims
}

pub fn random_degree(rng: &mut StdRng, s: usize, lo: i64, hi: i64) -> MultiDegree {
    MultiDegree::new((0..s).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// A valid scenario (`dim X >= 1`, `1 <= k <= dim X`) on a random
/// multiprojective space of dimension at most `max_dim`, multidegrees in
/// `[-3, 3]`. `k` is forced when given.
pub fn random_scenario(rng: &mut StdRng, max_dim: u32, k: Option<usize>) -> Scenario {
    loop {
        let dims = random_dims(rng, max_dim);
        let y = MultiProjectiveSpace::new(dims).unwrap();
        let dim_y = y.dim() as usize;
        if dim_y < 1 {
            continue;
        }
        let rank = rng.gen_range(0..dim_y);
        let n = dim_y - rank;
        let k = match k {
            Some(k) if k <= n => k,
            Some(_) => continue,
            None => rng.gen_range(1..=n),
        };
        let s = y.num_factors();
        let x = SplitBundle::new(&y, (0..rank).map(|_| random_degree(rng, s, -3, 3)).collect()).unwrap();
        let c = SplitBundle::new(&y, (0..k).map(|_| random_degree(rng, s, -3, 3)).collect()).unwrap();
        return Scenario::new(y, x, c).expect("valid by construction");
    }
}

/// Minimal generators of the monomial ideal whose standard monomials are
/// the order ideal `staircase` (an empty staircase gives the unit ideal).
pub fn staircase_generators(nvars: usize, staircase: &BTreeSet<Vec<u32>>) -> Vec<LocalPoly> {
    if staircase.is_empty() {
        return vec![LocalPoly::constant(nvars, BigRational::from_integer(1.into()))];
    }
    let mut gens = Vec::new();
    let mut seen = BTreeSet::new();
    for m in staircase {
        for i in 0..nvars {
            let mut up = m.clone();
            up[i] += 1;
            if staircase.contains(&up) || !seen.insert(up.clone()) {
                continue;
            }
            // minimal: every predecessor lies in the staircase
            let minimal = (0..nvars).all(|j| {
                if up[j] == 0 {
                    return true;
                }
                let mut down = up.clone();
                down[j] -= 1;
                staircase.contains(&down)
            });
            if minimal {
                gens.push(LocalPoly::monomial(up, BigRational::from_integer(1.into())));
            }
        }
    }
    gens
}

/// Every order ideal of monomials in two variables with all degrees
/// `<= max_deg`: staircases are partitions fitting under the diagonal.
pub fn all_staircases_2(max_deg: u32) -> Vec<BTreeSet<Vec<u32>>> {
    // column heights h_0 >= h_1 >= ... with i + (h_i - 1) <= max_deg
    fn rec(i: u32, prev: u32, max_deg: u32, cols: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cols.clone());
        if i > max_deg {
            return;
        }
        let cap = prev.min(max_deg - i + 1);
        for h in 1..=cap {
            cols.push(h);
            rec(i + 1, h, max_deg, cols, out);
            cols.pop();
        }
    }
    let mut shapes = Vec::new();
    rec(0, max_deg + 1, max_deg, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|cols| {
            let mut set = BTreeSet::new();
            for (i, h) in cols.iter().enumerate() {
                for j in 0..*h {
                    set.insert(vec![i as u32, j]);
                }
            }
            set
        })
        .collect()
}

/// A random order ideal in `nvars` variables within total degree `max_deg`:
/// the down-closure of a few random monomials.
pub fn random_staircase(rng: &mut StdRng, nvars: usize, max_deg: u32) -> BTreeSet<Vec<u32>> {
    let mut set = BTreeSet::new();
    let corners = rng.gen_range(0..=4);
    for _ in 0..corners {
        let mut m = vec![0u32; nvars];
        let mut budget = rng.gen_range(0..=max_deg);
        for e in m.iter_mut() {
            let take = rng.gen_range(0..=budget);
            *e = take;
            budget -= take;
        }
        // down-closure of m
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if set.insert(c.clone()) {
                for i in 0..nvars {
                    if c[i] > 0 {
                        let mut d = c.clone();
                        d[i] -= 1;
                        stack.push(d);
                    }
                }
            }
        }
    }
    set
}
