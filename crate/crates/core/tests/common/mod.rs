#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tgwa::multiquiver::row_gcds;
use tgwa::{int, parse_poly, random_config, rat, Matrix, Poly, Rational, ShiftSystem, VertexConfig};

pub fn p(s: &str, m: usize) -> Poly {
    parse_poly(s, m).unwrap()
}

pub const F: &str = "(u2+u3)^2 - (u1^3 - u1 + 1)";

pub fn cubic_sys() -> ShiftSystem {
    ShiftSystem::from_i64(&[&[2, -3, 0, 0], &[4, -5, 1, -3], &[-2, 2, -1, 3]]).unwrap()
}

pub fn f() -> Poly {
    p(F, 3)
}

pub fn f_monic() -> Poly {
    f().make_monic().unwrap().1
}

/// Keys of the staircase in doubled coordinates, as drawn.
pub const STAIRCASE: [(i64, i64); 5] = [(1, 0), (3, 2), (2, 1), (4, 3), (6, 3)];

pub fn staircase() -> VertexConfig {
    VertexConfig::new(&cubic_sys(), f_monic(), (0, 1), STAIRCASE.map(|k| (k, 1))).unwrap()
}

pub fn gl3_sys() -> ShiftSystem {
    ShiftSystem::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]).unwrap()
}

pub fn gl3_beta() -> Matrix {
    Matrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1]])
}

/// A random valid beta: every row has exactly one positive and one negative entry.
pub fn random_beta(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize, bound: i64) -> Matrix {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(2..=max_n);
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| {
            let mut row = vec![0; n];
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(rng);
            row[cols[0]] = rng.gen_range(1..=bound);
            row[cols[1]] = -rng.gen_range(1..=bound);
            row
        })
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(&refs)
}

pub fn product_of_gcds(beta: &Matrix) -> i64 {
    row_gcds(beta).unwrap().into_iter().product()
}

/// A random orbit with a rank-1 stabilizer `<(r, s)>`, `r, s >= 1`, on a
/// random pair of an `n`-column system whose other columns fix the generator.
pub struct Instance {
    pub sys: ShiftSystem,
    pub generator: Poly,
    pub pair: (usize, usize),
    pub label: String,
}

fn rational_matrix(rows: Vec<Vec<Rational>>) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(3..=4);
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    let (i, j) = (cols[0], cols[1]);
    match rng.gen_range(0..3) {
        2 => {
            // Cubic: pair columns are the staircase columns plus multiples of
            // the fixing direction (0, 1, -1); the rest are multiples of it.
            let base = cubic_sys();
            let fix = [0, 1, -1];
            let mut rows = vec![vec![int(0); n]; 3];
            for c in 0..n {
                let k = rng.gen_range(-2..=2);
                for (r, row) in rows.iter_mut().enumerate() {
                    let pairwise = if c == i {
                        base.alpha().get(r, 0).clone()
                    } else if c == j {
                        base.alpha().get(r, 1).clone()
                    } else {
                        int(0)
                    };
                    row[c] = pairwise + int(k * fix[r]);
                }
            }
            let sys = ShiftSystem::new(rational_matrix(rows)).unwrap();
            Instance { sys, generator: f_monic(), pair: (i, j), label: "cubic".into() }
        }
        kind => {
            let m = rng.gen_range(1..=3);
            let k = rng.gen_range(0..m);
            let a = rng.gen_range(1..=4);
            let b = -rng.gen_range(1..=4);
            let flip = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut rows = vec![vec![int(0); n]; m];
            for (r, row) in rows.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    *x = if r == k {
                        if c == i {
                            int(flip * a)
                        } else if c == j {
                            int(flip * b)
                        } else {
                            int(0)
                        }
                    } else {
                        rat(rng.gen_range(-6..=6), rng.gen_range(1..=2))
                    };
                }
            }
            let c = Poly::constant(m, rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
            let generator = if kind == 0 { &Poly::var(m, k) + &c } else { &Poly::var(m, k).pow(2) + &c };
            let sys = ShiftSystem::new(rational_matrix(rows)).unwrap();
            Instance { label: generator.to_string(), generator, sys, pair: (i, j) }
        }
    }
}

pub fn random_instance_config(rng: &mut ChaCha8Rng, inst: &Instance, max_loops: usize) -> VertexConfig {
    let loops = rng.gen_range(1..=max_loops);
    random_config(&inst.sys, inst.generator.clone(), inst.pair, loops, rng.gen()).unwrap()
}
