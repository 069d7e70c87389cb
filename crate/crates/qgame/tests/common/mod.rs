//! Randomized generators shared by the integration tests. Everything is
//! driven by a caller-seeded generator so failures reproduce exactly.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

use qgame::game::{BimatrixGame, PayoffPair};
use qgame::quantum::{JointUnitary, LocalUnitary, TwoQubitState};

/// A uniform-ish element of U(2) via the phase/angle parameterization.
pub fn random_local_unitary(rng: &mut StdRng) -> LocalUnitary {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let alpha: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let beta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let gamma: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let g = Complex64::from_polar(1.0, alpha);
    let m = [
        [
            g * Complex64::from_polar(theta.cos(), beta),
            g * Complex64::from_polar(theta.sin(), gamma),
        ],
        [
            g * -Complex64::from_polar(theta.sin(), -gamma),
            g * Complex64::from_polar(theta.cos(), -beta),
        ],
    ];
    LocalUnitary::new(m).expect("parameterized matrix is unitary")
}

/// A random 4x4 unitary: Gram-Schmidt on random complex columns, run twice
/// for numerical headroom.
pub fn random_joint_unitary(rng: &mut StdRng) -> JointUnitary {
    loop {
        let mut cols: Vec<[Complex64; 4]> = (0..4)
            .map(|_| {
                std::array::from_fn(|_| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                })
            })
            .collect();
        if orthonormalize(&mut cols) && orthonormalize(&mut cols) {
            let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
            for (j, col) in cols.iter().enumerate() {
                for i in 0..4 {
                    m[i][j] = col[i];
                }
            }
            if let Ok(u) = JointUnitary::new(m) {
                return u;
            }
        }
    }
}

fn orthonormalize(cols: &mut [[Complex64; 4]]) -> bool {
    for j in 0..cols.len() {
        for k in 0..j {
            let proj: Complex64 = (0..4).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..4 {
                let delta = proj * cols[k][i];
                cols[j][i] -= delta;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return false;
        }
        for entry in cols[j].iter_mut() {
            *entry /= norm;
        }
    }
    true
}

pub fn random_state(rng: &mut StdRng) -> TwoQubitState {
    loop {
        let amps: [Complex64; 4] = std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        if let Ok(state) = TwoQubitState::new(amps.map(|a| a / norm)) {
            return state;
        }
    }
}

pub fn random_game(rng: &mut StdRng, rows: usize, cols: usize) -> BimatrixGame {
    let cells = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| PayoffPair::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                .collect()
        })
        .collect();
    BimatrixGame::new(
        (0..rows).map(|i| i.to_string()).collect(),
        (0..cols).map(|j| j.to_string()).collect(),
        cells,
    )
    .expect("random grid is rectangular and finite")
}
