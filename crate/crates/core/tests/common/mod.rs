//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here recomputes results by the most elementary method
//! available — textbook row reduction over the rationals, exhaustive
//! enumeration, minor gcds — so the fast library routines are checked
//! against code that shares none of their machinery.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use skewdyn::poly::Poly;
use skewdyn::rat::{pow_rat, rat, Rat};
use skewdyn::system::SkewSystem;

/// Textbook Gauss–Jordan reduction over the rationals.  Returns the
/// reduced rows (zero rows dropped) and the pivot column of each.
pub fn naive_rref(rows: &[Vec<Rat>], cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            r.clone()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for e in m[row].iter_mut() {
            *e *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..cols {
                    let s = &m[row][c] * &f;
                    m[i][c] -= s;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn naive_rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    naive_rref(rows, cols).0.len()
}

/// Kernel basis of the homogeneous system `rows · x = 0`, one vector per
/// free column, by back-substitution from the reduced form.
pub fn naive_kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let (rref, pivots) = naive_rref(rows, cols);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![rat(0); cols];
        v[free] = rat(1);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rref[r][free];
        }
        basis.push(v);
    }
    basis
}

/// All invariant lines of a 2-step-free search done the slow way: for each
/// candidate eigenvalue `c = p/q` in a box, set up the identity
/// `A(x) v(x) = c v(x + sigma)` as linear conditions on the coefficients of
/// `v` by sampling enough integer points, and read off the kernel.  Returns
/// `(c, kernel dimension)` pairs for every `c` with a nonzero solution.
pub fn oracle_line_spectrum(
    s: &SkewSystem,
    sigma: i64,
    m: usize,
    c_box: i64,
) -> Vec<(Rat, usize)> {
    let n = s.dim();
    let a = if sigma == 1 {
        s.matrix().clone()
    } else {
        assert_eq!(sigma, 2);
        s.cocycle(2)
    };
    let d = a.max_degree();
    let cols = n * (m + 1);
    let samples = (d + m + 2) as i64;
    let mut out = Vec::new();
    for p in -c_box..=c_box {
        for q in 1..=c_box {
            if p == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let c = Rat::new(BigInt::from(p), BigInt::from(q));
            let mut rows = Vec::new();
            for t in 0..samples {
                let x = rat(t);
                let xs = rat(t + sigma);
                for i in 0..n {
                    let mut row = vec![rat(0); cols];
                    for j in 0..n {
                        let aij = a.entry(i, j).eval(&x);
                        for k in 0..=m {
                            row[j * (m + 1) + k] += &aij * pow_rat(&x, k as i64).unwrap();
                        }
                    }
                    for k in 0..=m {
                        row[i * (m + 1) + k] -= &c * pow_rat(&xs, k as i64).unwrap();
                    }
                    rows.push(row);
                }
            }
            let kernel = naive_kernel(&rows, cols);
            if !kernel.is_empty() {
                out.push((c, kernel.len()));
            }
        }
    }
    out
}

/// Elementary divisors by the minor-gcd formula: `d_k = g_k / g_{k-1}`
/// where `g_k` is the gcd of all `k × k` minors.  Exponential in the size,
/// fine for the small matrices used in tests.
pub fn minor_gcd_divisors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    let max_k = r.min(c);
    let mut gs = vec![BigInt::one()];
    for k in 1..=max_k {
        let mut g = BigInt::zero();
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor = det_bigint(&submatrix(rows, &rs, &cs));
                g = g.gcd(&minor);
            }
        }
        if g.is_zero() {
            break;
        }
        gs.push(g);
    }
    (1..gs.len()).map(|k| &gs[k] / &gs[k - 1]).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn submatrix(rows: &[Vec<BigInt>], rs: &[usize], cs: &[usize]) -> Vec<Vec<BigInt>> {
    rs.iter()
        .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
        .collect()
}

/// Cofactor-expansion determinant; the matrices are at most 4 × 4.
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_bigint(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Every integer exponent vector `k` in the box `[-b, b]^n` with
/// `prod a_i^{k_i} = 1`, computed by exhaustive enumeration.
pub fn box_relation_solutions(a: &[Rat], b: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut k = vec![-b; n];
    loop {
        let mut prod = rat(1);
        for i in 0..n {
            prod *= pow_rat(&a[i], k[i]).unwrap();
        }
        if prod == rat(1) {
            out.push(k.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            k[i] += 1;
            if k[i] <= b {
                break;
            }
            k[i] = -b;
            i += 1;
        }
    }
}

/// Membership of `k` in the row span over the integers of an
/// echelon-form basis (as produced by a Hermite reduction): strip one
/// basis row at a time by exact integer division at its pivot.
pub fn in_lattice(basis: &[Vec<BigInt>], k: &[i64]) -> bool {
    let mut v: Vec<BigInt> = k.iter().map(|&e| BigInt::from(e)).collect();
    for row in basis {
        let Some(p) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        if v[p].is_zero() {
            continue;
        }
        let (q, r) = v[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for (vi, ri) in v.iter_mut().zip(row) {
            *vi -= &q * ri;
        }
    }
    v.iter().all(|e| e.is_zero())
}

/// Exact check of the defining identity of a claimed invariant line by
/// polynomial arithmetic only (no library verification helpers).
pub fn line_identity_holds(a: &skewdyn::polymat::PolyMatrix, c: &Rat, v: &[Poly]) -> bool {
    let n = a.dim();
    for i in 0..n {
        let mut lhs = Poly::zero();
        for j in 0..n {
            lhs = lhs.add(&a.entry(i, j).mul(&v[j]));
        }
        let rhs = v[i].shift_int(1).scale(c);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Deterministic pseudo-random rationals/polynomials for randomized suites.
pub struct TestRng(pub rand_chacha::ChaCha8Rng);

impl TestRng {
    pub fn seeded(seed: u64) -> TestRng {
        use rand::SeedableRng;
        TestRng(rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        use rand::Rng;
        self.0.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn rat(&mut self, bound: i64) -> Rat {
        Rat::new(
            BigInt::from(self.int(-bound, bound)),
            BigInt::from(self.int(1, bound)),
        )
    }

    pub fn nonzero_rat(&mut self, bound: i64) -> Rat {
        Rat::new(
            BigInt::from(self.nonzero_int(bound)),
            BigInt::from(self.int(1, bound)),
        )
    }

    pub fn poly(&mut self, max_deg: usize, bound: i64) -> Poly {
        let deg = self.int(0, max_deg as i64) as usize;
        Poly::new((0..=deg).map(|_| rat(self.int(-bound, bound))).collect())
    }
}

/// A random gauge transform built from elementary operations, so it is
/// unimodular by construction: products of shears `I + p(x) E_ij`,
/// permutations, and nonzero constant scalings.
pub fn random_gauge(rng: &mut TestRng, n: usize, ops: usize, max_deg: usize) -> skewdyn::system::GaugeTransform {
    use skewdyn::polymat::PolyMatrix;
    let mut t = PolyMatrix::identity(n);
    for _ in 0..ops {
        let mut e = PolyMatrix::identity(n);
        match rng.int(0, 2) {
            0 => {
                let i = rng.int(0, n as i64 - 1) as usize;
                let j = loop {
                    let j = rng.int(0, n as i64 - 1) as usize;
                    if j != i {
                        break j;
                    }
                };
                *e.entry_mut(i, j) = rng.poly(max_deg, 2);
            }
            1 => {
                let i = rng.int(0, n as i64 - 1) as usize;
                let j = loop {
                    let j = rng.int(0, n as i64 - 1) as usize;
                    if j != i {
                        break j;
                    }
                };
                let rows = {
                    let mut m = PolyMatrix::identity(n);
                    *m.entry_mut(i, i) = Poly::zero();
                    *m.entry_mut(j, j) = Poly::zero();
                    *m.entry_mut(i, j) = Poly::one();
                    *m.entry_mut(j, i) = Poly::one();
                    m
                };
                e = rows;
            }
            _ => {
                let i = rng.int(0, n as i64 - 1) as usize;
                *e.entry_mut(i, i) = Poly::constant(rng.nonzero_rat(3));
            }
        }
        t = t.mul(&e);
    }
    skewdyn::system::GaugeTransform::new(t).expect("elementary products are unimodular")
}
