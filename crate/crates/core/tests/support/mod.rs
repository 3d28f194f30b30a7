//! Brute-force orbit counting on truth tables, sharing no code with the
//! library. Only usable for `n <= 3`, where a truth table fits in a `u8`.

use std::collections::HashSet;

/// Value of variable `j` (1-based) at point `p`: `x1` is the most
/// significant of the `n` bits.
fn var(n: usize, j: usize, p: usize) -> bool {
    p >> (n - j) & 1 == 1
}

/// Truth table of the monomial over the variable set `vars`.
fn monomial_table(n: usize, vars: usize) -> u8 {
    let mut t = 0u8;
    for p in 0..1 << n {
        if (1..=n).filter(|j| vars >> (j - 1) & 1 == 1).all(|j| var(n, j, p)) {
            t |= 1 << p;
        }
    }
    t
}

/// All truth tables of degree at most `deg` (empty span when `deg < 0`).
pub fn reed_muller(n: usize, deg: i32) -> Vec<u8> {
    let gens: Vec<u8> = (0..1usize << n)
        .filter(|vars| (vars.count_ones() as i32) <= deg)
        .map(|vars| monomial_table(n, vars))
        .collect();
    let mut span: HashSet<u8> = HashSet::from([0]);
    for g in gens {
        let next: Vec<u8> = span.iter().map(|f| f ^ g).collect();
        span.extend(next);
    }
    let mut out: Vec<u8> = span.into_iter().collect();
    out.sort_unstable();
    out
}

/// Every affine map of `F_2^n` as a permutation of points, built from
/// matrices given by their columns as point images of unit vectors.
pub fn affine_point_maps(n: usize) -> Vec<Vec<usize>> {
    let size = 1usize << n;
    let mut maps = Vec::new();
    // Choose images of the n unit points (1 << (n - j)) and of 0.
    for cols in 0..size.pow(n as u32) {
        let images: Vec<usize> = (0..n).map(|j| cols / size.pow(j as u32) % size).collect();
        let linear = |p: usize| {
            (1..=n)
                .filter(|&j| var(n, j, p))
                .fold(0usize, |acc, j| acc ^ images[j - 1])
        };
        let table: Vec<usize> = (0..size).map(linear).collect();
        let distinct: HashSet<usize> = table.iter().copied().collect();
        if distinct.len() != size {
            continue;
        }
        for shift in 0..size {
            maps.push(table.iter().map(|&y| y ^ shift).collect());
        }
    }
    maps
}

/// Number of orbits of `AGL(n,2)` on `R(s,n)/R(k,n)`, by canonical forms.
pub fn brute_force_orbits(n: usize, s: usize, k: i32) -> usize {
    let functions = reed_muller(n, s as i32);
    let low = reed_muller(n, k);
    let coset_key = |f: u8| low.iter().map(|r| f ^ r).min().unwrap();
    let maps = affine_point_maps(n);
    let act = |f: u8, map: &[usize]| (0..1usize << n).fold(0u8, |acc, x| acc | ((f >> map[x]) & 1) << x);
    let canon: HashSet<u8> = functions
        .iter()
        .map(|&f| maps.iter().map(|m| coset_key(act(f, m))).min().unwrap())
        .collect();
    canon.len()
}

#[test]
fn brute_force_sanity() {
    assert_eq!(affine_point_maps(3).len(), 1344);
    assert_eq!(affine_point_maps(2).len(), 24);
    assert_eq!(reed_muller(3, 1).len(), 16);
    assert_eq!(reed_muller(3, -1), vec![0]);
    // Constants and non-constants.
    assert_eq!(brute_force_orbits(3, 1, 0), 2);
}
