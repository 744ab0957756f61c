use quadwiener::bounds::*;
use quadwiener::Rational;

#[test]
fn conjectured_max_is_integral_and_increasing() {
    let mut prev = 0;
    for n in 4..=1_000_000i64 {
        let m = n as i128;
        let numer = if n % 2 == 0 { m * m * m + 14 * m - 24 } else { m * m * m + 11 * m - 12 };
        assert_eq!(numer % 12, 0, "n = {n}");
        let v = conjectured_max(n).unwrap();
        assert_eq!(v as i128, numer / 12);
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn degree2_combinations() {
    for n in 5..=10_000 {
        if n % 2 == 0 {
            assert_eq!(degree2_even_combination(n), even_extremal_poly(n));
        } else {
            assert_eq!(degree2_odd_combination(n), odd_extremal_poly(n));
        }
    }
}

#[test]
fn contraction_combination_with_measured_distance_sum() {
    // the five vertices around x1, x2 contribute 1 + 1 + 2 + 2 + 1 each
    for n in 7..=10_000 {
        let measured = contraction_combination(n, 14);
        assert_eq!(measured, odd_extremal_poly(n));
        let r = Rational::new(1, 12);
        let stated = r * (n * n * n) + Rational::new(11, 12) * n - 3;
        assert_eq!(contraction_combination(n, 12), stated);
    }
}

#[test]
fn good_vertex_combination_closed_form() {
    for n in 4..=10_000 {
        assert_eq!(good_vertex_combination(n), good_vertex_closed_form(n));
        let below = good_vertex_closed_form(n) < odd_extremal_poly(n);
        // odd - closed form = (n^2 - 20n + 79) / 36, negative exactly for 6 <= n <= 14
        assert_eq!(below, !(6..=14).contains(&n), "n = {n}");
    }
}

#[test]
fn split_combination_closed_form() {
    for x in 1..=300 {
        for n in x + 4..=x + 300 {
            assert_eq!(split_combination(n, x), split_closed_form(n, x), "n = {n}, x = {x}");
        }
    }
}

#[test]
fn split_bound_range() {
    // 12 (rhs - lhs) as an integer polynomial
    let gap = |n: i64, x: i64| 5 * n + n * x * x - x * x * x - 4 * x * x - 11 * x - 20;
    for x in 4..=60 {
        for n in x + 4..=600 {
            assert_eq!((odd_extremal_poly(n) - split_closed_form(n, x)) * 12, Rational::int(gap(n, x)));
        }
    }
    for x in 4..=10_000i64 {
        for n in x + 8..=10_000 {
            assert!(gap(n, x) > 0, "n = {n}, x = {x}");
        }
    }
    // (x, n) = (4, 9) lies below n = x + 8 and is a genuine exception
    assert_eq!(gap(9, 4), -3);
    assert!(split_closed_form(9, 4) > odd_extremal_poly(9));
}
