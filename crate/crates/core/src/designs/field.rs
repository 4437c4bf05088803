//! Small finite fields for the plane constructions.
//!
//! Elements of GF(p^m) are encoded as integers `0..q` whose base-`p` digits
//! are the polynomial coefficients, lowest degree first. The element order used
//! everywhere (slope enumeration, point coordinates) is this integer order.

use crate::error::{param, Result};

#[derive(Clone, Debug)]
pub struct GaloisField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl GaloisField {
    /// Supported orders: primes below 100, and 4, 8, 9 via the fixed
    /// irreducible polynomials x^2+x+1, x^3+x+1 and x^2+1.
    pub fn new(q: usize) -> Result<Self> {
        let (p, modulus): (usize, &[usize]) = match q {
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ if (2..100).contains(&q) && is_prime(q) => (q, &[0, 1]),
            _ => return param(format!("no finite field of order {q} available")),
        };
        let m = modulus.len() - 1;
        let to_digits = |mut a: usize| {
            let mut d = vec![0; m];
            for x in d.iter_mut() {
                *x = a % p;
                a /= p;
            }
            d
        };
        let from_digits = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * p + x);

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = to_digits(a);
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = from_digits(&sum);

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0; 2 * m];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (m..2 * m).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (i, mc) in modulus.iter().enumerate() {
                        let t = deg - m + i;
                        prod[t] = (prod[t] + p * p - c * mc % p) % p;
                    }
                }
                mul[a * q + b] = from_digits(&prod[..m]);
            }
        }
        Ok(Self { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
