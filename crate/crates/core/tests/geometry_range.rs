//! Range sweeps for the intersection formulas: the Bezout identity is an
//! algebraic identity and must hold with zero exceptions, the closed formula
//! must match the Puiseux substitution oracle on every coprime quadruple, and
//! the general form must be branch-additive.

use qpi_core::geometry::{
    affine_intersection_points, bezout_ledger, mult_at_infinity_coprime, mult_at_infinity_general,
    puiseux_order_oracle,
};

fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

#[test]
fn bezout_identity_is_exceptionless_up_to_ten() {
    let mut count = 0;
    for a in 1..=10u64 {
        for b in 1..=10u64 {
            for c in 1..=10u64 {
                for d in 1..=10u64 {
                    if a * d == b * c {
                        continue;
                    }
                    count += 1;
                    let ledger = bezout_ledger(a, b, c, d).unwrap();
                    assert_eq!(ledger.total, (a + b) * (c + d));
                    assert_eq!(ledger.affine, (a * d).abs_diff(b * c));
                    assert_eq!(
                        ledger.total,
                        ledger.affine + ledger.at010 + ledger.at100,
                        "({a},{b},{c},{d})"
                    );
                }
            }
        }
    }
    assert!(count > 9000, "swept only {count} quadruples");
}

#[test]
fn formula_matches_puiseux_oracle_on_all_coprime_quadruples() {
    for a in 1..=10u64 {
        for b in 1..=10u64 {
            if gcd(a, b) != 1 {
                continue;
            }
            for c in 1..=10u64 {
                for d in 1..=10u64 {
                    if gcd(c, d) != 1 || a * d == b * c {
                        continue;
                    }
                    let (m010, m100) = mult_at_infinity_coprime(a, b, c, d).unwrap();
                    assert_eq!(puiseux_order_oracle(a, b, c, d).unwrap(), m010);
                    assert_eq!(puiseux_order_oracle(b, a, d, c).unwrap(), m100);
                }
            }
        }
    }
}

#[test]
fn general_form_is_branch_additive() {
    for a in 1..=10u64 {
        for b in 1..=10u64 {
            for c in 1..=10u64 {
                for d in 1..=10u64 {
                    if a * d == b * c {
                        continue;
                    }
                    let d1 = gcd(a, b);
                    let d2 = gcd(c, d);
                    let per_branch =
                        mult_at_infinity_coprime(a / d1, b / d1, c / d2, d / d2).unwrap();
                    let general = mult_at_infinity_general(a, b, c, d).unwrap();
                    assert_eq!(general, (d1 * d2 * per_branch.0, d1 * d2 * per_branch.1));
                }
            }
        }
    }
}

#[test]
fn affine_points_complete_and_transversal() {
    // Exact enumeration with the cyclotomic transversality certificate on
    // the small-determinant range, plus larger spot checks.
    for a in 1..=5u64 {
        for b in 1..=5u64 {
            for c in 1..=5u64 {
                for d in 1..=5u64 {
                    if a * d == b * c {
                        continue;
                    }
                    let points = affine_intersection_points(a, b, c, d).unwrap();
                    assert_eq!(points.len() as u64, (a * d).abs_diff(b * c));
                }
            }
        }
    }
    for (a, b, c, d) in [(3, 1, 2, 2), (2, 4, 3, 9), (7, 2, 3, 8), (10, 9, 8, 7)] {
        let points = affine_intersection_points(a, b, c, d).unwrap();
        assert_eq!(points.len() as u64, (a * d).abs_diff(b * c));
    }
}
