//! Univariate polynomials as coefficient vectors, constant term first.

use num::{BigInt, BigRational, Integer, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{bigint_small, Field, PrimeField};

fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            f.add_mul_assign(&mut out[i + j], x, y);
        }
    }
    trim(f, &mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `b`.
pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = degree(f, b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]);
    let mut r = a.to_vec();
    trim(f, &mut r);
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            let t = f.mul(&c, bc);
            r[i + shift] = f.sub(&r[i + shift], &t);
        }
        trim(f, &mut r);
    }
    r
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = a.to_vec();
    trim(f, &mut a);
    if let Some(last) = a.last().cloned() {
        let inv = f.inv(&last);
        for c in a.iter_mut() {
            *c = f.mul(c, &inv);
        }
    }
    a
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut result = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

pub(crate) fn roots_mod_p(f: &PrimeField, poly: &[u32]) -> Vec<u32> {
    let p = f.modulus();
    let mut poly = poly.to_vec();
    trim(f, &mut poly);
    if degree(f, &poly).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if p < 4096 {
        return (0..p).filter(|x| eval(f, &poly, x) == 0).collect();
    }
    // Product of the distinct linear factors.
    let xp = powmod(f, &[0, 1], p as u64, &poly);
    let mut xp_minus_x = xp;
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = f.sub(&xp_minus_x[1], &1);
    let g = gcd(f, &poly, &xp_minus_x);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(f, g, &mut rng, &mut out);
    out
}

/// Cantor-Zassenhaus equal-degree splitting for a squarefree product of
/// linear factors.
fn split_linear(f: &PrimeField, g: Vec<u32>, rng: &mut ChaCha8Rng, out: &mut Vec<u32>) {
    let p = f.modulus();
    match degree(f, &g) {
        None | Some(0) => {}
        Some(1) => {
            let g = monic(f, &g);
            out.push(f.neg(&g[0]));
        }
        Some(_) => loop {
            let a = f.random(rng);
            let h = powmod(f, &[a, 1], (p as u64 - 1) / 2, &g);
            let mut h1 = h;
            if h1.is_empty() {
                h1.push(0);
            }
            h1[0] = f.sub(&h1[0], &1);
            let d = gcd(f, &g, &h1);
            let dd = degree(f, &d).unwrap_or(0);
            if dd > 0 && dd < degree(f, &g).unwrap() {
                let other = exact_div(f, &g, &d);
                split_linear(f, d, rng, out);
                split_linear(f, other, rng, out);
                return;
            }
        },
    }
}

fn exact_div<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = degree(f, b).unwrap();
    let da = degree(f, a).unwrap();
    let lead_inv = f.inv(&b[db]);
    let mut r = a.to_vec();
    let mut q = vec![f.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = f.mul(&r[k + db], &lead_inv);
        for (i, bc) in b[..=db].iter().enumerate() {
            let t = f.mul(&c, bc);
            r[i + k] = f.sub(&r[i + k], &t);
        }
        q[k] = c;
    }
    q
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots by the rational root theorem. Gives up (returning what it
/// has) when the extreme coefficients are too large to factor.
pub(crate) fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> = poly.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        out.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() < 2 {
        return out;
    }
    let (Some(a0), Some(an)) = (bigint_small(&ints[0]), bigint_small(ints.last().unwrap())) else {
        return out;
    };
    if a0 > DIVISOR_LIMIT || an > DIVISOR_LIMIT {
        return out;
    }
    let q = super::field::Rationals;
    let reduced: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let dens = divisors(an);
    for num in divisors(a0) {
        for den in &dens {
            if num.gcd(den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(num) * sign, BigInt::from(*den));
                if eval(&q, &reduced, &cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}
