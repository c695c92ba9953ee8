//! Reduced-form count with the outer loop over `a`, as a cross-check of
//! the main class-number routine.

/// `h(d)` for a negative discriminant `d`, or `None` if `d` is not one.
pub fn class_number_alt(d: i64) -> Option<u64> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return None;
    }
    let gcd = |mut x: i64, mut y: i64| {
        (x, y) = (x.abs(), y.abs());
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in (1 - a)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    Some(h)
}
