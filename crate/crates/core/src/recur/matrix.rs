//! Transfer matrices, exact counting sequences and matrix minimal
//! polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{self, PolyP};
use super::poly::IntPoly;
use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::par::Execution;

/// `a(n) = v M^n w` with `M` stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingSystem {
    /// `rows[i]` lists `(j, M[i][j])` for the nonzero entries.
    rows: Vec<Vec<(u32, u64)>>,
    start: usize,
    accepting: Vec<bool>,
}

impl CountingSystem {
    pub fn from_dense(matrix: &[Vec<u64>], start: usize, accepting: Vec<bool>) -> Result<CountingSystem> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Input("transfer matrix must be square and nonempty".into()));
        }
        if accepting.len() != n || start >= n {
            return Err(Error::Input("vectors do not match the matrix dimension".into()));
        }
        let rows = matrix
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &m)| m != 0)
                    .map(|(j, &m)| (j as u32, m))
                    .collect()
            })
            .collect();
        Ok(CountingSystem { rows, start, accepting })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c as usize == j)
            .map_or(0, |(_, m)| *m)
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.rows[i].iter().map(|(_, m)| m).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Row vector times matrix, generic over the ring.
    fn row_times<T, F>(&self, x: &[T], zero: T, mut acc: F) -> Vec<T>
    where
        T: Clone,
        F: FnMut(&mut T, &T, u64),
    {
        let mut y = vec![zero; self.dim()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, m) in row {
                acc(&mut y[j as usize], &x[i], m);
            }
        }
        y
    }
}

/// `M[i][j]` = number of letters taking state `i` to state `j`, dead state
/// included.
pub fn transfer_matrix(d: &Dfa) -> CountingSystem {
    let k = d.alphabet_size();
    let rows = (0..d.state_count() as u32)
        .map(|q| {
            let mut row: Vec<(u32, u64)> = Vec::with_capacity(k);
            for a in 0..k as u8 {
                let t = d.next(q, a);
                match row.iter_mut().find(|(j, _)| *j == t) {
                    Some(e) => e.1 += 1,
                    None => row.push((t, 1)),
                }
            }
            row.sort_unstable();
            row
        })
        .collect();
    CountingSystem {
        rows,
        start: d.start() as usize,
        accepting: d.accepting().to_vec(),
    }
}

/// Exact `a(0..=n)`.
pub fn sequence(cs: &CountingSystem, n: usize) -> Vec<BigInt> {
    let mut x = vec![BigInt::zero(); cs.dim()];
    x[cs.start] = BigInt::from(1);
    let mut out = Vec::with_capacity(n + 1);
    for t in 0..=n {
        out.push(x.iter().zip(&cs.accepting).filter(|(_, &f)| f).map(|(v, _)| v).sum());
        if t < n {
            x = cs.row_times(&x, BigInt::zero(), |y, xi, m| {
                if !xi.is_zero() {
                    *y += xi * m;
                }
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct MinPolyOptions {
    pub seed: u64,
    /// Random projections combined per prime.
    pub projections: usize,
    /// Primes drawn before giving up.
    pub max_primes: usize,
    pub execution: Execution,
}

impl Default for MinPolyOptions {
    fn default() -> Self {
        MinPolyOptions {
            seed: 1,
            projections: 2,
            max_primes: 8,
            execution: Execution::default(),
        }
    }
}

/// Minimal polynomial of `M` (monic, integer coefficients).
pub fn matrix_min_poly(cs: &CountingSystem) -> Result<IntPoly> {
    matrix_min_poly_with(cs, &MinPolyOptions::default())
}

pub fn matrix_min_poly_with(cs: &CountingSystem, options: &MinPolyOptions) -> Result<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut residues: Vec<(u64, PolyP)> = Vec::new();
    for _ in 0..options.max_primes {
        let p = modp::random_prime(&mut rng);
        if residues.iter().any(|r| r.0 == p) {
            continue;
        }
        let mut mp: PolyP = vec![1];
        for _ in 0..options.projections.max(1) {
            mp = modp::lcm(&mp, &projected_min_poly(cs, p, &mut rng), p);
        }
        // a projection can only lose factors, so the largest degree wins
        match residues.first().map(|r| modp::degree(&r.1)) {
            Some(d) if modp::degree(&mp) < d => continue,
            Some(d) if modp::degree(&mp) > d => residues.clear(),
            _ => {}
        }
        residues.push((p, mp));
        if residues.len() >= 2 {
            let candidate = crt_symmetric(&residues);
            if annihilates_matrix(cs, &candidate, options.execution) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "minimal polynomial not confirmed after {} primes",
        options.max_primes
    )))
}

/// Minimal polynomial of `s_t = u M^t v` for random `u`, `v` over `F_p`.
fn projected_min_poly(cs: &CountingSystem, p: u64, rng: &mut ChaCha8Rng) -> PolyP {
    let n = cs.dim();
    let mut x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let dot = |x: &[u64]| {
        x.iter()
            .zip(&v)
            .fold(0u64, |acc, (&a, &b)| modp::add_mod(acc, modp::mul_mod(a, b, p), p))
    };
    let mut seq = vec![dot(&x)];
    // the degree of the prefix's linear complexity saturates at the true
    // degree; stop once comfortably past twice that
    while seq.len() < 2 * n + 2 {
        x = cs.row_times(&x, 0u64, |y, xi, m| {
            *y = modp::add_mod(*y, modp::mul_mod(*xi, m % p, p), p)
        });
        seq.push(dot(&x));
        if seq.len() % 16 == 0 {
            let poly = modp::berlekamp_massey(&seq, p);
            if seq.len() >= 2 * modp::degree(&poly) + 16 {
                return poly;
            }
        }
    }
    modp::berlekamp_massey(&seq, p)
}

/// Combines residues of a monic polynomial and lifts symmetrically.
fn crt_symmetric(residues: &[(u64, PolyP)]) -> IntPoly {
    let deg = modp::degree(&residues[0].1);
    let mut modulus = BigInt::from(1);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (p, poly) in residues {
        let pb = BigInt::from(*p);
        // x ≡ c (mod modulus), x ≡ r (mod p)
        let inv = modulus.mod_floor(&pb).modinv(&pb).expect("distinct primes");
        for (i, c) in coeffs.iter_mut().enumerate() {
            let r = BigInt::from(*poly.get(i).unwrap_or(&0));
            let delta = ((r - &*c) * &inv).mod_floor(&pb);
            *c += &modulus * delta;
        }
        modulus *= pb;
    }
    let half = &modulus / 2;
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| if c > half { c - &modulus } else { c })
            .collect(),
    )
}

/// Whether `p(M) e_j = 0` for every basis vector, by Horner's rule with
/// matrix-vector products. Columns run in parallel; each tries checked
/// 128-bit arithmetic before falling back to big integers.
pub fn annihilates_matrix(cs: &CountingSystem, p: &IntPoly, execution: Execution) -> bool {
    if p.is_zero() {
        return true;
    }
    let small: Option<Vec<i128>> = p.coeffs().iter().map(ToPrimitive::to_i128).collect();
    let n = cs.dim();
    execution
        .map_range(n, |j| {
            if let Some(c) = &small {
                if let Some(zero) = column_check_i128(cs, c, j) {
                    return zero;
                }
            }
            column_check_big(cs, p.coeffs(), j)
        })
        .into_iter()
        .all(|ok| ok)
}

/// `None` on overflow.
fn column_check_i128(cs: &CountingSystem, c: &[i128], j: usize) -> Option<bool> {
    let n = cs.dim();
    let d = c.len() - 1;
    let mut y = vec![0i128; n];
    y[j] = c[d];
    for i in (0..d).rev() {
        let mut next = vec![0i128; n];
        for (r, row) in cs.rows.iter().enumerate() {
            let mut acc: i128 = 0;
            for &(col, m) in row {
                acc = acc.checked_add(y[col as usize].checked_mul(m as i128)?)?;
            }
            next[r] = acc;
        }
        next[j] = next[j].checked_add(c[i])?;
        y = next;
    }
    Some(y.iter().all(|&v| v == 0))
}

fn column_check_big(cs: &CountingSystem, c: &[BigInt], j: usize) -> bool {
    let n = cs.dim();
    let d = c.len() - 1;
    let mut y = vec![BigInt::zero(); n];
    y[j] = c[d].clone();
    for i in (0..d).rev() {
        let mut next = vec![BigInt::zero(); n];
        for (r, row) in cs.rows.iter().enumerate() {
            for &(col, m) in row {
                let v = &y[col as usize];
                if !v.is_zero() {
                    next[r] += v * m;
                }
            }
        }
        next[j] += &c[i];
        y = next;
    }
    y.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_state_system() {
        let cs = CountingSystem::from_dense(&[vec![2]], 0, vec![true]).unwrap();
        let a = sequence(&cs, 10);
        assert!(a.iter().enumerate().all(|(n, v)| *v == BigInt::from(1u64 << n)));
        assert_eq!(matrix_min_poly(&cs).unwrap(), IntPoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn min_poly_of_small_matrices() {
        // nilpotent Jordan block of size 3 plus a 2-cycle
        let m = vec![
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1],
            vec![0, 0, 0, 1, 0],
        ];
        let cs = CountingSystem::from_dense(&m, 0, vec![true; 5]).unwrap();
        assert_eq!(matrix_min_poly(&cs).unwrap(), IntPoly::from_i64(&[0, 0, 0, -1, 0, 1]));
        // identity: X - 1 even though the dimension is 3
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let cs = CountingSystem::from_dense(&id, 0, vec![true; 3]).unwrap();
        assert_eq!(matrix_min_poly(&cs).unwrap(), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn verification_rejects_wrong_polynomials() {
        let cs = CountingSystem::from_dense(&[vec![1, 1], vec![1, 0]], 0, vec![true, true]).unwrap();
        let fib = IntPoly::from_i64(&[-1, -1, 1]);
        assert!(annihilates_matrix(&cs, &fib, Execution::Sequential));
        assert!(!annihilates_matrix(
            &cs,
            &IntPoly::from_i64(&[1, -1, 1]),
            Execution::Parallel
        ));
        assert_eq!(matrix_min_poly(&cs).unwrap(), fib);
    }

    #[test]
    fn transfer_matrix_counts_letters() {
        let d = Dfa::from_rows(
            2,
            &[vec![1, 2], vec![3, 2], vec![1, 3], vec![3, 3]],
            0,
            vec![true, true, true, false],
        )
        .unwrap();
        let cs = transfer_matrix(&d);
        assert!((0..cs.dim()).all(|i| cs.row_sum(i) == 2));
        assert_eq!(cs.entry(3, 3), 2);
        let a = sequence(&cs, 6);
        assert_eq!(a, [1, 2, 2, 2, 2, 2, 2].map(BigInt::from).to_vec());
    }
}
