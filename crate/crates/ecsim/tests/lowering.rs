//! Property tests for the native-set lowering and partial-trace
//! bookkeeping, plus the duration scale of the decryption circuit.

use proptest::prelude::*;

use ecsim::circuit::{
    circuit_unitary, lower_to_native, run_statevector, total_duration, Circuit, GateDurations,
};
use ecsim::protocol::append_decryption;

// Random mixed circuits (Clifford and arbitrary-angle Rz) on few qubits.
#[derive(Debug, Clone)]
enum Move {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    Sx(usize),
    Rz(usize, f64),
    Cnot(usize, usize),
    Cz(usize, usize),
}

fn any_move(n: usize) -> impl Strategy<Value = Move> {
    prop_oneof![
        (0..n).prop_map(Move::H),
        (0..n).prop_map(Move::X),
        (0..n).prop_map(Move::Z),
        (0..n).prop_map(Move::S),
        (0..n).prop_map(Move::Sdg),
        (0..n).prop_map(Move::Sx),
        (0..n, -6.0f64..6.0).prop_map(|(q, t)| Move::Rz(q, t)),
        (0..n, 0..n).prop_map(|(a, b)| Move::Cnot(a, b)),
        (0..n, 0..n).prop_map(|(a, b)| Move::Cz(a, b)),
    ]
}

fn build(n: usize, moves: &[Move]) -> Circuit {
    let mut c = Circuit::new(n);
    for m in moves {
        let _ = match *m {
            Move::H(q) => c.h(q),
            Move::X(q) => c.x(q),
            Move::Z(q) => c.z(q),
            Move::S(q) => c.s(q),
            Move::Sdg(q) => c.sdg(q),
            Move::Sx(q) => c.sx(q),
            Move::Rz(q, t) => c.rz(q, t),
            Move::Cnot(a, b) if a != b => c.cnot(a, b),
            Move::Cz(a, b) if a != b => c.cz(a, b),
            _ => Ok(()),
        };
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lowering_preserves_the_unitary_up_to_phase(
        moves in proptest::collection::vec(any_move(6), 0..40),
    ) {
        let c = build(6, &moves);
        let lowered = lower_to_native(&c).unwrap();
        prop_assert!(ecsim::circuit::is_native(&lowered));
        let a = circuit_unitary(&c).unwrap();
        let b = circuit_unitary(&lowered).unwrap();
        let d = a.phase_distance(&b).unwrap();
        prop_assert!(d < 1e-9, "phase distance {d:.3e}");
    }

    #[test]
    fn partial_trace_has_unit_trace_for_every_subset(
        moves in proptest::collection::vec(any_move(4), 0..30),
        subset_mask in 1usize..16,
    ) {
        let c = build(4, &moves);
        let sv = run_statevector(&c).unwrap();
        let keep: Vec<usize> = (0..4).filter(|q| subset_mask >> q & 1 == 1).collect();
        let rho = sv.reduced(&keep).unwrap();
        let tr = rho.trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
    }
}

#[test]
fn decryption_duration_is_of_order_one_microsecond() {
    // lowered two-clone decryption under the default timing table
    let mut c = Circuit::new(3);
    append_decryption(&mut c, 0, 1, &[2]).unwrap();
    let lowered = lower_to_native(&c).unwrap();
    let d = total_duration(&lowered, &GateDurations::default()).unwrap();
    assert!(
        (0.1..10.0).contains(&d),
        "decryption duration {d} us is not of order 1 us"
    );
    // and the 3 us measurement window dominates it roughly threefold
    assert!(GateDurations::default().measure_us / d > 1.0);
}
