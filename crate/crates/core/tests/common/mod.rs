#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use glpair_core::carter::SurfaceDiagram;
use glpair_core::coloring::checkerboard_colorings;
use glpair_core::{BandEvent, DiskBandSurface, GaussCode, SymMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const THREE_SEVEN: &str = "O1-U2-O3+U1-O2-U3+";
pub const THREE_FIVE: &str = "O1-O2-O3-U1-U2-U3-";
pub const FIVE_2024: &str = "O1-O2-O3+U1-U2-O4-O5+U3+U4-U5+";
pub const VIRTUAL_TREFOIL: &str = "O1+O2+U1+U2+";
pub const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";

pub fn data_path(name: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p
}

pub fn load_surface(name: &str) -> DiskBandSurface {
    std::fs::read_to_string(data_path(name)).unwrap().parse().unwrap()
}

/// Text of a code on `over_first.len()` crossings. `slots` is a permutation of `0..2n`;
/// slot `t` is a pass through crossing `t / 2`, over when `t % 2` matches
/// `over_first[c]`. The first `cut` slots form component one.
pub fn code_text(slots: &[usize], over_first: &[bool], signs: &[bool], cut: Option<usize>) -> String {
    let token = |t: usize| {
        let c = t / 2;
        let over = (t % 2 == 0) == over_first[c];
        format!("{}{}{}", if over { 'O' } else { 'U' }, c + 1, if signs[c] { '+' } else { '-' })
    };
    match cut {
        None => slots.iter().map(|&t| token(t)).collect(),
        Some(k) => {
            let a: String = slots[..k].iter().map(|&t| token(t)).collect();
            let b: String = slots[k..].iter().map(|&t| token(t)).collect();
            format!("{a};{b}")
        }
    }
}

pub fn random_code(rng: &mut impl Rng, n: usize, two_components: bool) -> GaussCode {
    let mut slots: Vec<usize> = (0..2 * n).collect();
    slots.shuffle(rng);
    let over: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let signs: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let cut = two_components.then(|| rng.gen_range(1..2 * n));
    code_text(&slots, &over, &signs, cut).parse().unwrap()
}

/// Arbitrary Gauss codes with 1 to `max_n` crossings and one or two
/// nonempty components.
pub fn arb_code(max_n: usize) -> impl Strategy<Value = GaussCode> {
    (1..=max_n, any::<bool>())
        .prop_flat_map(|(n, two)| {
            (
                Just(n),
                Just((0..2 * n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
                if two { (1..2 * n).prop_map(Some).boxed() } else { Just(None).boxed() },
            )
        })
        .prop_map(|(_, slots, over, signs, cut)| code_text(&slots, &over, &signs, cut).parse().unwrap())
}

pub fn colorable_connected(code: &GaussCode) -> bool {
    let d = SurfaceDiagram::new(code);
    d.is_connected() && matches!(checkerboard_colorings(&d), Ok(Some(_)))
}

/// Colorable connected codes: every one-component code on at most 3
/// crossings, plus a seeded sample of one- and two-component codes on up
/// to 6 crossings.
pub fn corpus() -> Vec<GaussCode> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |code: GaussCode, out: &mut Vec<GaussCode>| {
        if seen.insert(code.to_string()) && colorable_connected(&code) {
            out.push(code);
        }
    };
    for n in 1..=3usize {
        let mut words = Vec::new();
        permutations(&mut (0..2 * n).collect::<Vec<_>>(), 0, &mut words);
        for w in &words {
            if w[0] != 0 {
                continue;
            }
            for mask in 0..(1u32 << (2 * n)) {
                let over: Vec<bool> = (0..n).map(|c| mask >> c & 1 == 1).collect();
                let signs: Vec<bool> = (0..n).map(|c| mask >> (n + c) & 1 == 1).collect();
                push(code_text(w, &over, &signs, None).parse().unwrap(), &mut out);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut extra = 0;
    while extra < 150 {
        let n = rng.gen_range(2..=6);
        let two = rng.gen_bool(0.3);
        let before = out.len();
        push(random_code(&mut rng, n, two), &mut out);
        extra += out.len() - before;
    }
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Sign counts `(pos, neg, zero)` of the eigenvalues, with zero threshold `tol`.
pub fn float_inertia(rows: &[Vec<i64>], tol: f64) -> (usize, usize, usize) {
    let n = rows.len();
    if n == 0 {
        return (0, 0, 0);
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    let eig = m.symmetric_eigen();
    let mut counts = (0, 0, 0);
    for &x in eig.eigenvalues.iter() {
        if x > tol {
            counts.0 += 1;
        } else if x < -tol {
            counts.1 += 1;
        } else {
            counts.2 += 1;
        }
    }
    counts
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return rows[0][0] as i128;
    }
    let mut total = 0i128;
    for j in 0..n {
        if rows[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        total += s * rows[0][j] as i128 * cofactor_det(&minor);
    }
    total
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

pub fn is_allowable(rows: &[Vec<i64>]) -> bool {
    rows.len() % 2 == 0 || (0..rows.len()).any(|i| rows[i][i] % 2 != 0)
}

pub fn arb_symmetric(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        })
    })
}

pub fn sym(rows: &[Vec<i64>]) -> SymMatrix {
    SymMatrix::from_i64_rows(rows).unwrap()
}

/// Disk-band surfaces with up to `max_bands` bands in random foot order,
/// with random twists and band crossings.
pub fn arb_surface(max_bands: usize) -> impl Strategy<Value = DiskBandSurface> {
    (1..=max_bands)
        .prop_flat_map(|n| {
            let feet: Vec<usize> = (0..n).flat_map(|b| [b, b]).collect();
            (
                proptest::collection::vec(-3i64..=3, n),
                Just(feet).prop_shuffle(),
                proptest::collection::vec((0..n, 0..n, any::<bool>(), any::<bool>()), 0..4),
            )
        })
        .prop_map(|(twists, feet, raw)| {
            let events = raw
                .into_iter()
                .filter(|&(a, b, _, _)| a != b)
                .map(|(a, b, classical, positive)| {
                    if classical {
                        BandEvent::Classical { over: a, under: b, sign: if positive { 1 } else { -1 } }
                    } else {
                        BandEvent::Virtual { a, b }
                    }
                })
                .collect();
            DiskBandSurface::new(twists, feet, events).unwrap()
        })
}

/// Number of proper two-colorings of the face adjacency graph, by trying
/// all `2^F` assignments.
pub fn brute_force_colorings(diag: &SurfaceDiagram) -> usize {
    let f = diag.n_faces();
    let sides = diag.edge_sides();
    (0..(1u64 << f))
        .filter(|mask| sides.iter().all(|&(a, b)| (mask >> a & 1) != (mask >> b & 1)))
        .count()
}
