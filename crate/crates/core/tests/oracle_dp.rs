use circavoid::oracle::{count_circular_avoiders, count_l, OracleReport};
use circavoid::perm::circular_target;
use circavoid::recurrence::Recurrences;
use circavoid::series::GfBundle;
use circavoid::verify::{self, Fault, FaultTable, VerifyConfig};
use num_bigint::BigUint;

#[test]
fn cells_agree_through_eight() {
    let rec = Recurrences::compute(8);
    for n in 2..=8 {
        let o = OracleReport::compute(n);
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(*rec.b.get(n, i, j), BigUint::from(o.b_cell(i, j)), "b({n},{i},{j})");
                assert_eq!(*rec.c.get(n, i, j), BigUint::from(o.c_cell(i, j)), "c({n},{i},{j})");
            }
            assert_eq!(*rec.v.get(n, i), BigUint::from(o.v_cell(i)), "v({n},{i})");
        }
    }
}

#[test]
fn circular_count_is_shifted_linear_count() {
    let rec = Recurrences::compute(8);
    for n in 2..=8 {
        assert_eq!(BigUint::from(count_l(n)), *rec.a.get(n));
        assert_eq!(
            BigUint::from(count_circular_avoiders(n, &circular_target())),
            *rec.a.get(n - 1)
        );
    }
}

#[test]
fn corrupted_cell_is_named() {
    let mut rec = Recurrences::compute(9);
    Fault {
        table: FaultTable::C,
        n: 6,
        i: 4,
        j: 3,
    }
    .apply(&mut rec);
    let out = verify::check_oracle_vs_dp(&rec, 7);
    assert!(!out.passed);
    assert!(out.detail.starts_with("c(6,4,3)"), "{}", out.detail);
}

#[test]
fn corrupted_cell_beyond_oracle_range_breaks_series_agreement() {
    let mut rec = Recurrences::compute(14);
    Fault {
        table: FaultTable::B,
        n: 12,
        i: 5,
        j: 2,
    }
    .apply(&mut rec);
    let gf = GfBundle::compute(14).unwrap();
    let out = verify::check_series_vs_dp(&rec, &gf);
    assert!(!out.passed);
    assert!(out.detail.contains("x^12"), "{}", out.detail);
}

#[test]
fn small_suite_with_fault_fails_and_clean_suite_passes() {
    let small = VerifyConfig {
        oracle_max: 6,
        reduction_max: 6,
        table_n: 12,
        order: 12,
        weighted_max: 8,
        bivariate_max: 7,
        ..VerifyConfig::default()
    };
    let clean = verify::run(&small);
    assert!(clean.passed(), "{clean}");
    let faulty = verify::run(&VerifyConfig {
        fault: Some(Fault {
            table: FaultTable::B,
            n: 5,
            i: 3,
            j: 2,
        }),
        ..small
    });
    assert!(!faulty.passed());
    let text = faulty.to_string();
    assert!(text.contains("FAIL oracle vs recurrence: b(5,3,2)"), "{text}");
}
