//! Dense two-qubit statevector simulation.
//!
//! States live over the computational basis |00>, |01>, |10>, |11>, with
//! Alice owning the first (left) qubit. Unitaries are validated at
//! construction, global phases are never normalized away, and all
//! operations are pure functions over immutable values.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (normalization, unitarity).
pub const TOL_ALGEBRAIC: f64 = 1e-12;

/// A single complex amplitude.
pub type Amplitude = Complex64;

/// Computational-basis outcome labels in basis order.
pub const OUTCOME_LABELS: [&str; 4] = ["00", "01", "10", "11"];

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
const C_I: Complex64 = Complex64::new(0.0, 1.0);

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Pure state of two qubits: four amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    /// Builds a state from its four amplitudes (basis order 00, 01, 10, 11).
    /// The amplitudes must be finite and normalized within [`TOL_ALGEBRAIC`].
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|a| !finite(*a)) {
            return Err(Error::NonFinite("state amplitude"));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_ALGEBRAIC {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    /// The basis state |k> for k in 0..4.
    ///
    /// Panics if `k > 3`.
    pub fn basis(k: usize) -> Self {
        assert!(k < 4, "basis index out of range: {k}");
        let mut amps = [C_ZERO; 4];
        amps[k] = C_ONE;
        Self { amps }
    }

    pub fn amps(&self) -> &[Complex64; 4] {
        &self.amps
    }

    /// Born-rule probabilities of the four computational-basis outcomes.
    pub fn outcome_distribution(&self) -> OutcomeDistribution {
        let mut p = [0.0; 4];
        for (pk, a) in p.iter_mut().zip(&self.amps) {
            *pk = a.norm_sqr();
        }
        OutcomeDistribution { p }
    }
}

/// Probability distribution over the four measurement outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    p: [f64; 4],
}

impl OutcomeDistribution {
    /// Validates entries in [0, 1] summing to 1 within [`TOL_ALGEBRAIC`].
    pub fn new(p: [f64; 4]) -> Result<Self> {
        for &pk in &p {
            if !pk.is_finite() || !(-TOL_ALGEBRAIC..=1.0 + TOL_ALGEBRAIC).contains(&pk) {
                return Err(Error::InvalidProbability { value: pk });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > TOL_ALGEBRAIC {
            return Err(Error::NotADistribution { sum });
        }
        Ok(Self { p })
    }

    pub fn probabilities(&self) -> &[f64; 4] {
        &self.p
    }
}

/// A validated 2x2 unitary acting on one player's qubit, with an optional
/// display label.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    m: [[Complex64; 2]; 2],
    name: Option<String>,
}

impl LocalUnitary {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        Self::build(m, None)
    }

    pub fn named(m: [[Complex64; 2]; 2], name: impl Into<String>) -> Result<Self> {
        Self::build(m, Some(name.into()))
    }

    fn build(m: [[Complex64; 2]; 2], name: Option<String>) -> Result<Self> {
        if m.iter().flatten().any(|z| !finite(*z)) {
            return Err(Error::NonFinite("unitary entry"));
        }
        let deviation = unitarity_deviation_2(&m);
        if deviation > TOL_ALGEBRAIC {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { m, name })
    }

    /// The identity, the classical "do nothing" move.
    pub fn identity() -> Self {
        Self::build([[C_ONE, C_ZERO], [C_ZERO, C_ONE]], Some("I".into())).unwrap()
    }

    /// The bit flip X.
    pub fn pauli_x() -> Self {
        Self::build([[C_ZERO, C_ONE], [C_ONE, C_ZERO]], Some("X".into())).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::build([[C_ZERO, -C_I], [C_I, C_ZERO]], Some("Y".into())).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::build([[C_ONE, C_ZERO], [C_ZERO, -C_ONE]], Some("Z".into())).unwrap()
    }

    /// iY = [[0, 1], [-1, 0]], the "defect" move of the quantized dilemma.
    pub fn i_pauli_y() -> Self {
        Self::build([[C_ZERO, C_ONE], [-C_ONE, C_ZERO]], Some("iY".into())).unwrap()
    }

    /// iZ = diag(i, -i), the extra "quantum" move.
    pub fn i_pauli_z() -> Self {
        Self::build([[C_I, C_ZERO], [C_ZERO, -C_I]], Some("iZ".into())).unwrap()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }
}

/// A validated 4x4 unitary acting on both qubits at once.
#[derive(Debug, Clone, PartialEq)]
pub struct JointUnitary {
    m: [[Complex64; 4]; 4],
}

impl JointUnitary {
    pub fn new(m: [[Complex64; 4]; 4]) -> Result<Self> {
        if m.iter().flatten().any(|z| !finite(*z)) {
            return Err(Error::NonFinite("unitary entry"));
        }
        let deviation = unitarity_deviation_4(&m);
        if deviation > TOL_ALGEBRAIC {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        let mut m = [[C_ZERO; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = C_ONE;
        }
        Self { m }
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut m = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.m[j][i].conj();
            }
        }
        Self { m }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C_ZERO;
                for (k, row) in other.m.iter().enumerate() {
                    acc += self.m[i][k] * row[j];
                }
                m[i][j] = acc;
            }
        }
        Self { m }
    }

    /// Applies the unitary to a state; the norm is preserved.
    pub fn apply(&self, s: &TwoQubitState) -> TwoQubitState {
        let a = s.amps();
        let mut out = [C_ZERO; 4];
        for (i, row) in self.m.iter().enumerate() {
            let mut acc = C_ZERO;
            for (aj, mij) in a.iter().zip(row) {
                acc += mij * aj;
            }
            out[i] = acc;
        }
        TwoQubitState::new(out).expect("unitary application preserves the norm")
    }
}

/// Kronecker product a (x) b, with `a` acting on Alice's (left) qubit.
pub fn tensor(a: &LocalUnitary, b: &LocalUnitary) -> JointUnitary {
    let ma = a.matrix();
    let mb = b.matrix();
    let mut m = [[C_ZERO; 4]; 4];
    for ra in 0..2 {
        for rb in 0..2 {
            for ca in 0..2 {
                for cb in 0..2 {
                    m[2 * ra + rb][2 * ca + cb] = ma[ra][ca] * mb[rb][cb];
                }
            }
        }
    }
    JointUnitary::new(m).expect("tensor product of unitaries is unitary")
}

/// The disentangling gate applied before measurement in the quantized
/// dilemma: exp{-i pi Y(x)Y / 4} = (I - i Y(x)Y) / sqrt(2), which is exact
/// because (Y(x)Y)^2 = I.
pub fn disentangler() -> JointUnitary {
    let yy = tensor(&LocalUnitary::pauli_y(), &LocalUnitary::pauli_y());
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = *yy.matrix();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let id = if i == j { C_ONE } else { C_ZERO };
            *entry = (id - C_I * *entry) * inv_sqrt2;
        }
    }
    JointUnitary::new(m).expect("disentangler is unitary")
}

fn unitarity_deviation_2(m: &[[Complex64; 2]; 2]) -> f64 {
    let mut max = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = C_ZERO;
            for k in 0..2 {
                acc += m[k][i].conj() * m[k][j];
            }
            let id = if i == j { C_ONE } else { C_ZERO };
            max = max.max((acc - id).norm());
        }
    }
    max
}

fn unitarity_deviation_4(m: &[[Complex64; 4]; 4]) -> f64 {
    let mut max = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = C_ZERO;
            for k in 0..4 {
                acc += m[k][i].conj() * m[k][j];
            }
            let id = if i == j { C_ONE } else { C_ZERO };
            max = max.max((acc - id).norm());
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// (|00> - i|11>) / sqrt(2), the entangled start of the quantized dilemma.
    fn ewl_state() -> TwoQubitState {
        TwoQubitState::new([
            c(FRAC_1_SQRT_2, 0.0),
            C_ZERO,
            C_ZERO,
            c(0.0, -FRAC_1_SQRT_2),
        ])
        .unwrap()
    }

    fn bell_plus() -> TwoQubitState {
        TwoQubitState::new([c(FRAC_1_SQRT_2, 0.0), C_ZERO, C_ZERO, c(FRAC_1_SQRT_2, 0.0)]).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64) {
        assert!((a - b).norm() <= TOL_ALGEBRAIC, "{a} != {b}");
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let t = tensor(&LocalUnitary::identity(), &LocalUnitary::identity());
        assert_eq!(t.matrix(), JointUnitary::identity().matrix());
    }

    #[test]
    fn tensor_xx_flips_both_bits() {
        let t = tensor(&LocalUnitary::pauli_x(), &LocalUnitary::pauli_x());
        let out = t.apply(&TwoQubitState::basis(0));
        assert_eq!(
            out.outcome_distribution().probabilities(),
            &[0.0, 0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn tensor_iy_iz_matches_hand_kronecker() {
        // Frozen from the Kronecker product of iY = [[0,1],[-1,0]] and
        // iZ = diag(i,-i): the only nonzero entries are the four below.
        let t = tensor(&LocalUnitary::i_pauli_y(), &LocalUnitary::i_pauli_z());
        let m = t.matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (2, 0) => c(0.0, -1.0),
                    (3, 1) => c(0.0, 1.0),
                    (0, 2) => c(0.0, 1.0),
                    (1, 3) => c(0.0, -1.0),
                    _ => C_ZERO,
                };
                assert_close(m[i][j], expected);
            }
        }
    }

    #[test]
    fn apply_identity_is_noop() {
        let s = ewl_state();
        let out = JointUnitary::identity().apply(&s);
        assert_eq!(out, s);
    }

    #[test]
    fn apply_i_tensor_iy_to_ewl_state() {
        // Frozen from the direct 4x4 matrix-vector product:
        // (I (x) iY) (|00> - i|11>)/sqrt(2) = (-|01> - i|10>)/sqrt(2).
        let t = tensor(&LocalUnitary::identity(), &LocalUnitary::i_pauli_y());
        let out = t.apply(&ewl_state());
        let amps = out.amps();
        assert_close(amps[0], C_ZERO);
        assert_close(amps[1], c(-FRAC_1_SQRT_2, 0.0));
        assert_close(amps[2], c(0.0, -FRAC_1_SQRT_2));
        assert_close(amps[3], C_ZERO);
    }

    #[test]
    fn apply_i_tensor_x_to_bell_plus() {
        let t = tensor(&LocalUnitary::identity(), &LocalUnitary::pauli_x());
        let out = t.apply(&bell_plus());
        let p = *out.outcome_distribution().probabilities();
        assert!((p[1] - 0.5).abs() <= TOL_ALGEBRAIC);
        assert!((p[2] - 0.5).abs() <= TOL_ALGEBRAIC);
    }

    #[test]
    fn disentangler_maps_ewl_state_to_00() {
        let out = disentangler().apply(&ewl_state());
        let p = *out.outcome_distribution().probabilities();
        assert!((p[0] - 1.0).abs() <= TOL_ALGEBRAIC);
        // up to a global phase the state is exactly |00>
        assert!((out.amps()[0].norm() - 1.0).abs() <= TOL_ALGEBRAIC);
    }

    #[test]
    fn disentangler_after_iz_on_bob_gives_11() {
        let moved =
            tensor(&LocalUnitary::identity(), &LocalUnitary::i_pauli_z()).apply(&ewl_state());
        let out = disentangler().apply(&moved);
        let p = *out.outcome_distribution().probabilities();
        assert!((p[3] - 1.0).abs() <= TOL_ALGEBRAIC);
        assert!((out.amps()[3].norm() - 1.0).abs() <= TOL_ALGEBRAIC);
    }

    #[test]
    fn disentangler_is_unitary() {
        let d = disentangler();
        let prod = d.compose(&d.dagger());
        let id = JointUnitary::identity();
        for i in 0..4 {
            for j in 0..4 {
                assert_close(prod.matrix()[i][j], id.matrix()[i][j]);
            }
        }
    }

    #[test]
    fn yy_squares_to_identity_exactly() {
        // All entries of Y(x)Y are 0 or +-1, so the square is bitwise exact.
        let yy = tensor(&LocalUnitary::pauli_y(), &LocalUnitary::pauli_y());
        let sq = yy.compose(&yy);
        assert_eq!(sq.matrix(), JointUnitary::identity().matrix());
    }

    #[test]
    fn outcome_distribution_examples() {
        let bell = *bell_plus().outcome_distribution().probabilities();
        for (got, want) in bell.iter().zip([0.5, 0.0, 0.0, 0.5]) {
            assert!((got - want).abs() <= TOL_ALGEBRAIC);
        }
        assert_eq!(
            TwoQubitState::basis(1)
                .outcome_distribution()
                .probabilities(),
            &[0.0, 1.0, 0.0, 0.0]
        );

        // Frozen from the (I (x) iY) example above.
        let s = TwoQubitState::new([
            C_ZERO,
            c(-FRAC_1_SQRT_2, 0.0),
            c(0.0, -FRAC_1_SQRT_2),
            C_ZERO,
        ])
        .unwrap();
        let p = *s.outcome_distribution().probabilities();
        assert!((p[0]).abs() <= TOL_ALGEBRAIC);
        assert!((p[1] - 0.5).abs() <= TOL_ALGEBRAIC);
        assert!((p[2] - 0.5).abs() <= TOL_ALGEBRAIC);
        assert!((p[3]).abs() <= TOL_ALGEBRAIC);
    }

    #[test]
    fn rejects_unnormalized_state() {
        let err = TwoQubitState::new([C_ONE, C_ONE, C_ZERO, C_ZERO]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn rejects_non_finite_state() {
        let err = TwoQubitState::new([c(f64::NAN, 0.0), C_ZERO, C_ZERO, C_ZERO]).unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
    }

    #[test]
    fn rejects_non_unitary_matrix() {
        let err = LocalUnitary::new([[C_ONE, C_ONE], [C_ZERO, C_ONE]]).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }

    #[test]
    fn distribution_validation() {
        assert!(OutcomeDistribution::new([0.25; 4]).is_ok());
        assert!(matches!(
            OutcomeDistribution::new([0.5, 0.5, 0.5, -0.5]).unwrap_err(),
            Error::InvalidProbability { .. }
        ));
        assert!(matches!(
            OutcomeDistribution::new([0.5, 0.4, 0.0, 0.0]).unwrap_err(),
            Error::NotADistribution { .. }
        ));
    }

    /// Full parameterization of U(2): a global phase times an SU(2) element.
    fn local_from_angles(theta: f64, alpha: f64, beta: f64, gamma: f64) -> LocalUnitary {
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

    fn arb_local_unitary() -> impl Strategy<Value = LocalUnitary> {
        (0.0..TAU, 0.0..TAU, 0.0..TAU, 0.0..TAU)
            .prop_map(|(t, a, b, g)| local_from_angles(t, a, b, g))
    }

    fn arb_state() -> impl Strategy<Value = TwoQubitState> {
        prop::array::uniform8(-1.0f64..1.0).prop_filter_map("state must have nonzero norm", |v| {
            let amps = [c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5]), c(v[6], v[7])];
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                return None;
            }
            let scaled = amps.map(|a| a / norm);
            TwoQubitState::new(scaled).ok()
        })
    }

    fn arb_qubit() -> impl Strategy<Value = [Complex64; 2]> {
        prop::array::uniform4(-1.0f64..1.0).prop_filter_map("qubit must have nonzero norm", |v| {
            let amps = [c(v[0], v[1]), c(v[2], v[3])];
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                return None;
            }
            Some(amps.map(|a| a / norm))
        })
    }

    proptest! {
        #[test]
        fn prop_constructed_unitaries_pass_the_invariant(u in arb_local_unitary(), v in arb_local_unitary()) {
            prop_assert!(unitarity_deviation_2(u.matrix()) <= TOL_ALGEBRAIC);
            let joint = tensor(&u, &v).compose(&disentangler());
            prop_assert!(unitarity_deviation_4(joint.matrix()) <= TOL_ALGEBRAIC);
        }

        #[test]
        fn prop_norm_preserved(u in arb_local_unitary(), v in arb_local_unitary(), s in arb_state()) {
            let out = tensor(&u, &v).apply(&s);
            let norm_sq: f64 = out.amps().iter().map(|a| a.norm_sqr()).sum();
            prop_assert!((norm_sq - 1.0).abs() <= TOL_ALGEBRAIC);
        }

        #[test]
        fn prop_global_phase_leaves_distribution_unchanged(s in arb_state(), theta in 0.0..TAU) {
            let phase = Complex64::from_polar(1.0, theta);
            let rotated = TwoQubitState::new(s.amps().map(|a| a * phase)).unwrap();
            let p = s.outcome_distribution();
            let q = rotated.outcome_distribution();
            for k in 0..4 {
                prop_assert!((p.probabilities()[k] - q.probabilities()[k]).abs() <= TOL_ALGEBRAIC);
            }
        }

        #[test]
        fn prop_product_states_factorize(a in arb_qubit(), b in arb_qubit()) {
            let amps = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
            let s = TwoQubitState::new(amps).unwrap();
            let p = s.outcome_distribution();
            let pa = [a[0].norm_sqr(), a[1].norm_sqr()];
            let pb = [b[0].norm_sqr(), b[1].norm_sqr()];
            for k in 0..4 {
                let expect = pa[k >> 1] * pb[k & 1];
                prop_assert!((p.probabilities()[k] - expect).abs() <= TOL_ALGEBRAIC);
            }
        }
    }
}
