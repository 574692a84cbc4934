use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::zmatrix::ZMatrix;
use super::LinalgError;

/// Square matrix over Z/pZ with entries reduced into [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    n: usize,
    p: u64,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn new(n: usize, p: u64, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        assert!(entries.iter().all(|&e| e < p), "entries must be reduced");
        FpMatrix { n, p, entries }
    }

    pub fn zeros(n: usize, p: u64) -> Self {
        FpMatrix {
            n,
            p,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, p);
        for i in 0..n {
            m.entries[i * n + i] = 1 % p;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let n = self.n;
        let p = self.p as u128;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                }
                entries[i * n + j] = (acc % p) as u64;
            }
        }
        FpMatrix {
            n,
            p: self.p,
            entries,
        }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Deterministic primality by trial division; moduli here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Entrywise reduction of an integer matrix into [0, p). Rejects composite p.
pub fn mod_p_reduce(m: &ZMatrix, p: u64) -> Result<FpMatrix, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let big_p = BigInt::from(p);
    let entries = m
        .entries()
        .iter()
        .map(|e| {
            let mut r = e % &big_p;
            if r < BigInt::zero() {
                r += &big_p;
            }
            r.to_u64().expect("residue fits in u64")
        })
        .collect();
    Ok(FpMatrix {
        n: m.n(),
        p,
        entries,
    })
}
