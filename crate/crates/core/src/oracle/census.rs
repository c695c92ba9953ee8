//! Brute-force census of elliptic curves over small fields, written against
//! its own table arithmetic so that it shares nothing with the main path.

use std::collections::{BTreeMap, BTreeSet};

use super::OracleError;

/// Largest field order accepted by the census.
pub const CENSUS_LIMIT: u64 = 200;
/// Fields up to this order are censused over all `q^5` coefficient tuples
/// with classes found as explicit orbits.
pub const EXHAUSTIVE_LIMIT: u64 = 32;

/// `F_{p^a}` as addition and multiplication tables on element indices.
/// Index `i` has coefficients `c_0..c_{a-1}` (constant first) with
/// `i = sum c_k p^(a-1-k)`.
struct Gf {
    p: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Product of two coefficient vectors over `F_p`, constant first.
fn poly_mul(x: &[usize], y: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    out
}

/// Remainder of `x` modulo the monic `m`.
fn poly_rem(x: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = x.to_vec();
    let d = m.len() - 1;
    while r.len() > d {
        let lead = r.pop().unwrap();
        let shift = r.len() - d;
        for k in 0..d {
            r[shift + k] = (r[shift + k] + (p - lead) * m[k]) % p;
        }
    }
    r.resize(d, 0);
    r
}

/// All monic polynomials of the given degree, constant first.
fn monics(p: usize, deg: usize) -> Vec<Vec<usize>> {
    (0..p.pow(deg as u32))
        .map(|mut n| {
            let mut f: Vec<usize> = (0..deg)
                .map(|_| {
                    let c = n % p;
                    n /= p;
                    c
                })
                .collect();
            f.push(1);
            f
        })
        .collect()
}

/// Irreducible iff no monic factor of degree `1..=deg/2` divides it.
fn irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| monics(p, d).iter().all(|g| poly_rem(f, g, p).iter().any(|&c| c != 0)))
}

impl Gf {
    fn new(p: usize, a: usize) -> Gf {
        let q = p.pow(a as u32);
        let modulus = if a == 1 {
            vec![0, 1]
        } else {
            monics(p, a).into_iter().find(|f| f[0] != 0 && irreducible(f, p)).expect("irreducible exists")
        };
        let coeffs: Vec<Vec<usize>> = (0..q)
            .map(|mut i| {
                let mut c = vec![0; a];
                for k in (0..a).rev() {
                    c[k] = i % p;
                    i /= p;
                }
                c
            })
            .collect();
        let index = |c: &[usize]| c.iter().fold(0, |acc, &x| acc * p + x);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for x in 0..q {
            for y in 0..q {
                let s: Vec<usize> = (0..a).map(|k| (coeffs[x][k] + coeffs[y][k]) % p).collect();
                add[x * q + y] = index(&s) as u16;
                mul[x * q + y] = index(&poly_rem(&poly_mul(&coeffs[x], &coeffs[y], p), &modulus, p)) as u16;
            }
        }
        let neg = (0..q).map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u16).collect();
        let one = p.pow(a as u32 - 1);
        let inv = (0..q).map(|x| (0..q).find(|&y| mul[x * q + y] as usize == one).unwrap_or(0) as u16).collect();
        Gf { p, q, add, mul, neg, inv }
    }

    fn a(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q + y as usize]
    }
    fn s(&self, x: u16, y: u16) -> u16 {
        self.a(x, self.neg[y as usize])
    }
    fn m(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.q + y as usize]
    }
    /// The integer `n` reduced into the prime subfield.
    fn int(&self, n: i64) -> u16 {
        (n.rem_euclid(self.p as i64) as usize * (self.q / self.p)) as u16
    }
    fn k(&self, n: i64, x: u16) -> u16 {
        self.m(self.int(n), x)
    }
}

/// `(discriminant, c4)` of `[a1, a2, a3, a4, a6]`.
fn disc_c4(f: &Gf, c: [u16; 5]) -> (u16, u16) {
    let [a1, a2, a3, a4, a6] = c;
    let b2 = f.a(f.m(a1, a1), f.k(4, a2));
    let b4 = f.a(f.k(2, a4), f.m(a1, a3));
    let b6 = f.a(f.m(a3, a3), f.k(4, a6));
    let b8 = {
        let t = f.a(f.m(f.m(a1, a1), a6), f.k(4, f.m(a2, a6)));
        let t = f.s(t, f.m(f.m(a1, a3), a4));
        let t = f.a(t, f.m(a2, f.m(a3, a3)));
        f.s(t, f.m(a4, a4))
    };
    let c4 = f.s(f.m(b2, b2), f.k(24, b4));
    let d = {
        let t = f.neg[f.m(f.m(b2, b2), b8) as usize];
        let t = f.s(t, f.k(8, f.m(b4, f.m(b4, b4))));
        let t = f.s(t, f.k(27, f.m(b6, b6)));
        f.a(t, f.k(9, f.m(b2, f.m(b4, b6))))
    };
    (d, c4)
}

/// `#{y : y^2 + c y = v}` for all `c, v`.
fn solution_counts(f: &Gf) -> Vec<u8> {
    let q = f.q;
    let mut cnt = vec![0u8; q * q];
    for c in 0..q as u16 {
        for y in 0..q as u16 {
            let v = f.a(f.m(y, y), f.m(c, y));
            cnt[c as usize * q + v as usize] += 1;
        }
    }
    cnt
}

fn count_points(f: &Gf, cnt: &[u8], c: [u16; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = c;
    let mut n = 1u64;
    for x in 0..f.q as u16 {
        let lin = f.a(f.m(a1, x), a3);
        let x2 = f.m(x, x);
        let rhs = f.a(f.a(f.m(x2, x), f.m(a2, x2)), f.a(f.m(a4, x), a6));
        n += cnt[lin as usize * f.q + rhs as usize] as u64;
    }
    n
}

/// Image of a model under `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
fn transform(f: &Gf, c: [u16; 5], u: u16, r: u16, s: u16, t: u16) -> [u16; 5] {
    let [a1, a2, a3, a4, a6] = c;
    let ui = f.inv[u as usize];
    let ui2 = f.m(ui, ui);
    let ui3 = f.m(ui2, ui);
    let ui4 = f.m(ui2, ui2);
    let ui6 = f.m(ui3, ui3);
    let n1 = f.a(a1, f.k(2, s));
    let n2 = f.s(f.a(f.s(a2, f.m(s, a1)), f.k(3, r)), f.m(s, s));
    let n3 = f.a(f.a(a3, f.m(r, a1)), f.k(2, t));
    let n4 = {
        let v = f.s(a4, f.m(s, a3));
        let v = f.a(v, f.k(2, f.m(r, a2)));
        let v = f.s(v, f.m(f.a(t, f.m(r, s)), a1));
        let v = f.a(v, f.k(3, f.m(r, r)));
        f.s(v, f.k(2, f.m(s, t)))
    };
    let n6 = {
        let r2 = f.m(r, r);
        let v = f.a(a6, f.m(r, a4));
        let v = f.a(v, f.m(r2, a2));
        let v = f.a(v, f.m(r2, r));
        let v = f.s(v, f.m(t, a3));
        let v = f.s(v, f.m(t, t));
        f.s(v, f.m(f.m(r, t), a1))
    };
    [f.m(n1, ui), f.m(n2, ui2), f.m(n3, ui3), f.m(n4, ui4), f.m(n6, ui6)]
}

/// Curves over one small field, bucketed by number of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    /// Order to the set of j-invariant indices realized with that order.
    pub by_order: BTreeMap<u64, BTreeSet<u64>>,
    /// `(order, j index)` to the number of isomorphism classes; present
    /// only for exhaustive censuses.
    pub class_counts: Option<BTreeMap<(u64, u64), usize>>,
}

/// Census of `F_{p^a}`, `p^a <= CENSUS_LIMIT`.
///
/// Up to [`EXHAUSTIVE_LIMIT`] every coefficient tuple is visited and classes
/// are whole orbits under all admissible changes of variables. Above it the
/// census covers the families `y^2 = x^3 + a4 x + a6` (p >= 5),
/// `y^2 = x^3 + a2 x^2 + a4 x + a6` (p = 3), and `y^2 + xy = x^3 + a2 x^2 + a4 x + a6`
/// with `y^2 + a3 y = x^3 + a4 x + a6` (p = 2), reporting j-sets only.
pub fn brute_force_curve_census(p: u64, a: u32) -> Result<Census, OracleError> {
    if !is_prime_naive(p) || a == 0 {
        return Err(OracleError::NotPrimePower(p, a));
    }
    let q = p.checked_pow(a).filter(|&q| q <= CENSUS_LIMIT).ok_or(OracleError::FieldTooLarge(p, a))?;
    let f = Gf::new(p as usize, a as usize);
    let cnt = solution_counts(&f);
    let j_of = |c: [u16; 5]| -> Option<u64> {
        let (d, c4) = disc_c4(&f, c);
        (d != 0).then(|| f.m(f.m(f.m(c4, c4), c4), f.inv[d as usize]) as u64)
    };
    let mut census = Census { q, by_order: BTreeMap::new(), class_counts: None };
    if q <= EXHAUSTIVE_LIMIT {
        let qs = q as usize;
        let decode = |mut code: usize| {
            let mut c = [0u16; 5];
            for slot in c.iter_mut() {
                *slot = (code % qs) as u16;
                code /= qs;
            }
            c
        };
        let encode = |c: [u16; 5]| c.iter().rev().fold(0usize, |acc, &x| acc * qs + x as usize);
        let mut seen = vec![false; qs.pow(5)];
        let mut classes = BTreeMap::new();
        for code in 0..qs.pow(5) {
            if seen[code] {
                continue;
            }
            let c = decode(code);
            for u in 1..qs as u16 {
                for r in 0..qs as u16 {
                    for s in 0..qs as u16 {
                        for t in 0..qs as u16 {
                            seen[encode(transform(&f, c, u, r, s, t))] = true;
                        }
                    }
                }
            }
            if let Some(j) = j_of(c) {
                let n = count_points(&f, &cnt, c);
                census.by_order.entry(n).or_default().insert(j);
                *classes.entry((n, j)).or_default() += 1;
            }
        }
        census.class_counts = Some(classes);
        return Ok(census);
    }
    let one = f.int(1);
    let mut models: Vec<[u16; 5]> = Vec::new();
    for x in 0..q as u16 {
        for y in 0..q as u16 {
            match p {
                2 => {
                    for z in 0..q as u16 {
                        models.push([one, x, 0, y, z]);
                        if x != 0 {
                            models.push([0, 0, x, y, z]);
                        }
                    }
                }
                3 => models.extend((0..q as u16).map(|z| [0, x, 0, y, z])),
                _ => models.push([0, 0, 0, x, y]),
            }
        }
    }
    for c in models {
        if let Some(j) = j_of(c) {
            census.by_order.entry(count_points(&f, &cnt, c)).or_default().insert(j);
        }
    }
    Ok(census)
}
