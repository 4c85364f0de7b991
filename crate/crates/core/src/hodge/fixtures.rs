//! Deterministic sample data: random degenerate double complexes, divisor strata
//! and assembled exact sequences.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClemensSchmidBlock, ClemensSchmidData, DoubleComplex, ExactChain, StrataData};
use crate::linalg::RatMatrix;
use crate::{int, Rational};

fn one() -> Rational {
    int(1)
}

/// Random unimodular matrix: unit lower triangular times unit upper triangular.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut lower = RatMatrix::identity(n);
    let mut upper = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, int(rng.gen_range(-2..=2)));
            upper.set(j, i, int(rng.gen_range(-2..=2)));
        }
    }
    lower.mul(&upper).expect("square")
}

#[derive(Clone, Copy)]
enum Piece {
    Dot,
    Horizontal,
    Vertical,
    Square,
}

/// Direct sum of dots, horizontal and vertical pairs, and anticommuting squares,
/// conjugated by a random change of basis at every position. Such complexes
/// degenerate at `E_2` for both filtrations.
pub fn random_degenerate_complex(seed: u64, width: usize, height: usize) -> DoubleComplex {
    assert!(width >= 1 && height >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = rng.gen_range(1..=6);
    let mut cells: Vec<Vec<usize>> = vec![vec![0; height]; width];
    let mut hmaps: Vec<(usize, usize, usize, usize, i64)> = Vec::new();
    let mut vmaps: Vec<(usize, usize, usize, usize, i64)> = Vec::new();
    let push = |cells: &mut Vec<Vec<usize>>, p: usize, q: usize| -> usize {
        cells[p][q] += 1;
        cells[p][q] - 1
    };
    for _ in 0..pieces {
        let mut kind = match rng.gen_range(0..4) {
            0 => Piece::Dot,
            1 => Piece::Horizontal,
            2 => Piece::Vertical,
            _ => Piece::Square,
        };
        if width < 2 && matches!(kind, Piece::Horizontal | Piece::Square)
            || height < 2 && matches!(kind, Piece::Vertical | Piece::Square)
        {
            kind = Piece::Dot;
        }
        match kind {
            Piece::Dot => {
                let (p, q) = (rng.gen_range(0..width), rng.gen_range(0..height));
                push(&mut cells, p, q);
            }
            Piece::Horizontal => {
                let (p, q) = (rng.gen_range(0..width - 1), rng.gen_range(0..height));
                let a = push(&mut cells, p, q);
                let b = push(&mut cells, p + 1, q);
                hmaps.push((p, q, a, b, 1));
            }
            Piece::Vertical => {
                let (p, q) = (rng.gen_range(0..width), rng.gen_range(0..height - 1));
                let a = push(&mut cells, p, q);
                let b = push(&mut cells, p, q + 1);
                vmaps.push((p, q, a, b, 1));
            }
            Piece::Square => {
                let (p, q) = (rng.gen_range(0..width - 1), rng.gen_range(0..height - 1));
                let a = push(&mut cells, p, q);
                let b = push(&mut cells, p + 1, q);
                let c = push(&mut cells, p, q + 1);
                let d = push(&mut cells, p + 1, q + 1);
                hmaps.push((p, q, a, b, 1));
                vmaps.push((p, q, a, c, 1));
                hmaps.push((p, q + 1, c, d, 1));
                vmaps.push((p + 1, q, b, d, -1));
            }
        }
    }
    let dims = cells;
    let bases: Vec<Vec<RatMatrix>> =
        dims.iter().map(|col| col.iter().map(|&n| random_invertible(&mut rng, n)).collect()).collect();
    let conjugate = |entries: &[(usize, usize, usize, usize, i64)], dp: usize, dq: usize| {
        let mut out: BTreeMap<(usize, usize), RatMatrix> = BTreeMap::new();
        for &(p, q, a, b, s) in entries {
            let m = out.entry((p, q)).or_insert_with(|| RatMatrix::zeros(dims[p + dp][q + dq], dims[p][q]));
            m.set(b, a, int(s));
        }
        out.into_iter()
            .map(|((p, q), m)| {
                let src_inv = bases[p][q].inverse().expect("invertible");
                let conj = bases[p + dp][q + dq].mul(&m).and_then(|x| x.mul(&src_inv)).expect("shape");
                ((p, q), conj)
            })
            .collect::<BTreeMap<_, _>>()
    };
    let h = conjugate(&hmaps, 1, 0);
    let v = conjugate(&vmaps, 0, 1);
    DoubleComplex::new(dims, h, v).expect("degenerate pieces form a double complex")
}

/// A zigzag with a nonzero `d_2` for the column filtration:
/// `A(0,1) -> B(1,1) <- C(1,0) -> D(2,0)`, all one-dimensional.
pub fn zigzag_counterexample() -> DoubleComplex {
    let one_map = || RatMatrix::from_i64(&[vec![1]]).expect("1x1");
    let dims = vec![vec![0, 1], vec![1, 1], vec![1, 0]];
    let h = BTreeMap::from([((0, 1), one_map()), ((1, 0), one_map())]);
    let v = BTreeMap::from([((1, 0), one_map())]);
    DoubleComplex::new(dims, h, v).expect("zigzag is a double complex")
}

/// Two smooth rational curves meeting transversally in one point.
pub fn two_curves_meeting() -> StrataData {
    let restriction = BTreeMap::from([((0, 0), RatMatrix::from_i64(&[vec![1, -1]]).expect("1x2"))]);
    StrataData::new(vec![vec![2, 0, 2], vec![1]], restriction)
}

/// A cycle of `n >= 2` smooth curves of genus `g`, each meeting the next once.
pub fn cycle_of_curves(n: usize, genus: usize) -> StrataData {
    assert!(n >= 2);
    let mut r = RatMatrix::zeros(n, n);
    for j in 0..n {
        r.add_to(j, j, &one());
        r.add_to(j, (j + 1) % n, &-one());
    }
    StrataData::new(vec![vec![n, 2 * genus * n, n], vec![n]], BTreeMap::from([((0, 0), r)]))
}

/// Three planes in general position meeting along three lines and one point.
pub fn three_planes() -> StrataData {
    // Level 1: three P^2; level 2: three P^1; level 3: one point.
    let mut d0 = RatMatrix::zeros(3, 3);
    // Lines ordered 01, 02, 12; restriction H^0(D_i) -> H^0(D_ij) with sign (+ for j, - for i).
    for (row, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        d0.set(row, i, -one());
        d0.set(row, j, one());
    }
    let d1 = RatMatrix::from_i64(&[vec![1, -1, 1]]).expect("1x3");
    let mut d0_deg2 = RatMatrix::zeros(3, 3);
    for (row, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        d0_deg2.set(row, i, -one());
        d0_deg2.set(row, j, one());
    }
    StrataData::new(
        vec![vec![3, 0, 3, 0, 3], vec![3, 0, 3], vec![1]],
        BTreeMap::from([((0, 0), d0), ((1, 0), d1), ((0, 2), d0_deg2)]),
    )
}

/// Random exact chain `0 -> V_0 -> ... -> V_n -> 0` with prescribed map ranks.
pub fn random_exact_chain(seed: u64, ranks: &[usize]) -> ExactChain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims = Vec::with_capacity(ranks.len() + 1);
    for i in 0..=ranks.len() {
        let incoming = if i > 0 { ranks[i - 1] } else { 0 };
        let outgoing = ranks.get(i).copied().unwrap_or(0);
        dims.push(incoming + outgoing);
    }
    let bases: Vec<RatMatrix> = dims.iter().map(|&n| random_invertible(&mut rng, n)).collect();
    let maps = ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let incoming = if i > 0 { ranks[i - 1] } else { 0 };
            let mut m = RatMatrix::zeros(dims[i + 1], dims[i]);
            for t in 0..r {
                m.set(t, incoming + t, one());
            }
            let src_inv = bases[i].inverse().expect("invertible");
            bases[i + 1].mul(&m).and_then(|x| x.mul(&src_inv)).expect("shape")
        })
        .collect();
    ExactChain::unlabelled(dims, maps).expect("consistent shapes")
}

/// An exact Clemens-Schmid sequence with `blocks` degrees, assembled from random
/// short exact pieces. The two nearby-fibre nodes of each block have equal dimension.
pub fn assembled_clemens_schmid(seed: u64, relative_dim: usize, blocks: usize) -> ClemensSchmidData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Ranks along the chain; ranks[4j + 1] == ranks[4j + 3] keeps the nearby nodes equal.
    let maps = 4 * blocks - 1;
    let mut ranks: Vec<usize> = (0..maps).map(|_| rng.gen_range(0..=2)).collect();
    for j in 0..blocks {
        if 4 * j + 3 < maps {
            ranks[4 * j + 3] = ranks[4 * j + 1];
        } else {
            ranks[4 * j + 1] = 0;
        }
    }
    let chain = random_exact_chain(rng.gen(), &ranks);
    let block = |j: usize| ClemensSchmidBlock {
        degree: 2 * j,
        homology_dim: chain.dims[4 * j],
        special_dim: chain.dims[4 * j + 1],
        nearby_dim: chain.dims[4 * j + 2],
        alpha: chain.maps[4 * j].clone(),
        restriction: chain.maps[4 * j + 1].clone(),
        monodromy_log: chain.maps[4 * j + 2].clone(),
        beta: chain.maps.get(4 * j + 3).cloned(),
    };
    ClemensSchmidData { relative_dim, blocks: (0..blocks).map(block).collect() }
}
