use clap::Parser;
use proptest::prelude::*;

use thinbasis::cli::Cli;
use thinbasis::error::{EXIT_GAP, EXIT_OK};
use thinbasis::record::{Envelope, Num, Output};
use thinbasis::render::parse;
use thinbasis::{execute, exit_code_for};
use thinbasis_core::Nat;

fn envelope(args: &[&str]) -> Envelope {
    let cli = Cli::try_parse_from(std::iter::once("thinbasis").chain(args.iter().copied())).unwrap();
    let run = execute(&cli).unwrap();
    assert_eq!(parse(&run.rendered).unwrap(), run.envelope, "{args:?}");
    run.envelope
}

#[test]
fn every_report_type_round_trips() {
    let cases: &[&[&str]] = &[
        &["construct", "--h", "3", "--ells", "20"],
        &["construct", "--g", "3", "--h", "2"],
        &["construct", "--aprime", "6,10,15"],
        &["decompose", "--h", "2", "--n", "98765432109876543210987654321"],
        &["decompose", "--h", "4", "--n", "0"],
        &["decompose", "--aprime", "3,5", "--n", "123456789012345678901"],
        &["decompose", "--g", "2", "--h", "3", "--n", "99999999999999999999"],
        &["enumerate", "--h", "2", "--x", "2000"],
        &["verify", "--h", "2", "--N", "5000", "--seed", "18446744073709551615"],
        &["verify", "--aprime", "3,5", "--N", "500"],
        &["profile", "--h", "3", "--x", "1000000000"],
        &["compare", "--h", "3", "--x", "100000"],
        &["profile", "--g", "2", "--h", "3", "--x", "1000000000000000000000000"],
    ];
    for args in cases {
        envelope(args);
    }
}

#[test]
fn seed_beyond_safe_range_is_a_string() {
    let cli = Cli::try_parse_from(["thinbasis", "verify", "--h", "2", "--N", "100", "--seed", "18446744073709551615"]).unwrap();
    let run = execute(&cli).unwrap();
    let v: serde_json::Value = serde_json::from_str(&run.rendered).unwrap();
    assert_eq!(v["result"]["samples"]["seed"], "18446744073709551615");
}

#[test]
fn failed_checks_map_to_exit_1() {
    let Output::Verify(mut report) = envelope(&["verify", "--h", "2", "--N", "1000"]).output else {
        panic!("verify output expected")
    };
    assert_eq!(exit_code_for(&Output::Verify(report.clone())), EXIT_OK);
    report.coverage.covered = false;
    report.coverage.first_gap = Some(Num::from(21));
    report.passed = false;
    assert_eq!(exit_code_for(&Output::Verify(report)), EXIT_GAP);
}

proptest! {
    #[test]
    fn num_round_trips(digits in "[1-9][0-9]{0,60}") {
        let n = Num(digits.parse::<Nat>().unwrap());
        let s = serde_json::to_string(&n).unwrap();
        prop_assert_eq!(s.starts_with('"'), n.0 > Nat::from(thinbasis::record::MAX_SAFE_INTEGER));
        prop_assert_eq!(serde_json::from_str::<Num>(&s).unwrap(), n);
    }

    #[test]
    fn decompositions_round_trip(n in any::<u128>()) {
        let text = n.to_string();
        let env = envelope(&["decompose", "--h", "3", "--n", &text]);
        let Output::Decompose(d) = env.output else { panic!() };
        prop_assert!(d.sum_ok && d.members_ok);
    }
}
