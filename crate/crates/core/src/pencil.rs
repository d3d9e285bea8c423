//! Linear pencils behind the invariant searches.
//!
//! Both searches — skew eigenvectors `A(x) v(x) = c * v(x + s)` and
//! semi-invariant polynomials `P(x+1, A(x) y) = q * P(x, y)` — are linear
//! in the unknown coefficients once the scalar is fixed, so each becomes a
//! one-parameter pencil `Op - c * Emb` over the coefficient space.
//!
//! The solving strategy never factors anything.  The rows of the pencil
//! whose output degree stays within the input degree bound form a square
//! block in which the embedding is unit triangular (a binomial shift
//! matrix) or the identity, hence invertible over the integers.  Any
//! solution therefore satisfies `G * vec = c_scaled * vec` for an integer
//! matrix `G` obtained by clearing denominators, so every admissible scalar
//! is an integer eigenvalue of `G` divided by a known denominator.  The
//! characteristic polynomial of `G` is monic with integer coefficients, its
//! rational roots are integers, and those are isolated by bisection inside
//! a Gershgorin bound.  Each candidate is then checked against the full
//! rectangular pencil by an exact kernel computation, which also weeds out
//! eigenvalues of the square block that do not survive the remaining rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{exact_kernel, exact_rank};
use crate::multipoly::{monomials_homogeneous, Mono, MultiPoly};
use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::rat::Rat;
use crate::roots::integer_roots_bounded;
use crate::Result;

/// A pencil `Op - c * Emb` together with its integer square reduction.
pub(crate) struct Pencil {
    /// Full operator matrix, `rows x cols`.
    op: Vec<Vec<Rat>>,
    /// Full embedding matrix, same shape; zero outside the top block.
    emb: Vec<Vec<Rat>>,
    /// Integer reduction of the top block: solutions of the full pencil
    /// satisfy `g * vec = z * vec` with `z = denom * c`.
    g: Vec<Vec<BigInt>>,
    /// Denominator linking integer eigenvalues to scalar candidates.
    denom: BigInt,
}

impl Pencil {
    pub fn cols(&self) -> usize {
        self.g.len()
    }

    /// Denominator linking integer eigenvalues of the reduction to scalar
    /// candidates: `c = z / denom`.
    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Monic integer characteristic polynomial of the reduction, ascending.
    pub fn char_poly(&self) -> Vec<BigInt> {
        char_poly_int(&self.g)
    }

    /// All rational scalars that can possibly admit a nonzero solution,
    /// sorted ascending.  Zero is excluded: the operator side is injective
    /// for an invertible system, so no solution has scalar zero.
    pub fn candidates(&self) -> Vec<Rat> {
        let cp = self.char_poly();
        let bound = gershgorin_bound(&self.g);
        let mut out: Vec<Rat> = integer_roots_bounded(&cp, &bound)
            .into_iter()
            .filter(|z| !z.is_zero())
            .map(|z| Rat::new(z, self.denom.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Exact kernel of the full pencil at the scalar `c`.
    pub fn kernel_at(&self, c: &Rat) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self
            .op
            .iter()
            .zip(&self.emb)
            .map(|(o, e)| {
                o.iter()
                    .zip(e)
                    .map(|(ov, ev)| ov - &(c * ev))
                    .collect()
            })
            .collect();
        exact_kernel(&rows, self.cols())
    }

    /// Rank of the pencil over the rational function field in `c`,
    /// certified by specialising at an integer `t` that is not an
    /// eigenvalue of the square reduction: there the top block is
    /// invertible, the specialised rank equals the column count, and the
    /// generic rank is sandwiched between the two.
    pub fn function_field_rank(&self) -> usize {
        let cp = self.char_poly();
        let mut t: i64 = 0;
        loop {
            let z = BigInt::from(t) * &self.denom;
            let val = eval_int_poly(&cp, &z);
            if !val.is_zero() {
                break;
            }
            t += 1;
        }
        let tr = Rat::from(BigInt::from(t));
        let rows: Vec<Vec<Rat>> = self
            .op
            .iter()
            .zip(&self.emb)
            .map(|(o, e)| {
                o.iter()
                    .zip(e)
                    .map(|(ov, ev)| ov - &(&tr * ev))
                    .collect()
            })
            .collect();
        exact_rank(&rows, self.cols())
    }
}

fn eval_int_poly(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Gershgorin disc bound on the absolute value of any eigenvalue: the
/// smaller of the maximal absolute row sum and column sum, floored at one.
fn gershgorin_bound(g: &[Vec<BigInt>]) -> BigInt {
    let n = g.len();
    let mut row_max = BigInt::zero();
    let mut col_sums = vec![BigInt::zero(); n];
    for row in g {
        let mut sum = BigInt::zero();
        for (j, v) in row.iter().enumerate() {
            let a = v.abs();
            col_sums[j] += &a;
            sum += a;
        }
        if sum > row_max {
            row_max = sum;
        }
    }
    let col_max = col_sums.into_iter().max().unwrap_or_else(BigInt::zero);
    let bound = row_max.min(col_max);
    if bound.is_zero() {
        BigInt::one()
    } else {
        bound
    }
}

/// Characteristic polynomial of an integer matrix by the trace recursion
/// (`M_k = G (M_{k-1} + a_{k-1} I)`, `a_k = -tr(M_k) / k`; all divisions
/// exact).  Returned ascending and monic.
pub(crate) fn char_poly_int(g: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = g.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut coeffs_desc: Vec<BigInt> = Vec::with_capacity(n + 1);
    coeffs_desc.push(BigInt::one());
    let mut m: Vec<Vec<BigInt>> = g.to_vec();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| m[i][i].clone()).sum();
        let (a_k, rem) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "trace recursion divides exactly");
        coeffs_desc.push(a_k.clone());
        if k == n {
            break;
        }
        // M <- G * (M + a_k I)
        for i in 0..n {
            m[i][i] += &a_k;
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                let gv = &g[i][l];
                if gv.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if m[l][j].is_zero() {
                        continue;
                    }
                    let prod = gv * &m[l][j];
                    next[i][j] += prod;
                }
            }
        }
        m = next;
    }
    coeffs_desc.reverse();
    coeffs_desc
}

fn binomial_table(size: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); size]; size];
    for i in 0..size {
        t[i][0] = BigInt::one();
        for j in 1..=i {
            t[i][j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
    }
    t
}

/// Least common multiple of the denominators of all coefficients of `a`.
fn matrix_denominator(a: &PolyMatrix) -> BigInt {
    let mut l = BigInt::one();
    for row in a.rows() {
        for p in row {
            for c in p.coeffs() {
                l = l.lcm(c.denom());
            }
        }
    }
    l
}

/// Pencil for the skew eigenvector problem with step `sigma`:
/// `A(x) v(x) = c * v(x + sigma)` over vectors of polynomial degree at most
/// `m`.  Columns are indexed degree-major: column `j * n + k` is the
/// coefficient of `x^j` in component `k`.
pub(crate) fn line_pencil(a: &PolyMatrix, sigma: i64, m: usize) -> Pencil {
    let n = a.dim();
    let d = a.max_degree();
    let cols = n * (m + 1);
    let out_degs = d + m + 1;
    let rows = n * out_degs;
    let binom = binomial_table(m + 2);
    let sig = BigInt::from(sigma);

    let mut op = vec![vec![Rat::zero(); cols]; rows];
    let mut emb = vec![vec![Rat::zero(); cols]; rows];
    for j in 0..=m {
        for k in 0..n {
            let col = j * n + k;
            // x^j * (column k of A) contributes to every component.
            for l in 0..n {
                let entry = a.entry(l, k);
                for i in j..out_degs {
                    let c = entry.coeff(i - j);
                    if !c.is_zero() {
                        op[i * n + l][col] = c;
                    }
                }
            }
            // (x + sigma)^j in component k.
            let mut pw = BigInt::one();
            for i in (0..=j).rev() {
                emb[i * n + k][col] = Rat::from(&binom[j][i] * &pw);
                pw *= &sig;
            }
        }
    }

    // Integer reduction: scale A to integer coefficients, take the top
    // square block, and undo the shift embedding (its inverse is the shift
    // by -sigma, also integer and unit triangular).
    let lambda = matrix_denominator(a);
    let lam_r = Rat::from(lambda.clone());
    let top_int: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| {
            (0..cols)
                .map(|cidx| {
                    let v = &op[r][cidx] * &lam_r;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let mut g = vec![vec![BigInt::zero(); cols]; cols];
    for i in 0..=m {
        for l in 0..n {
            let out_row = i * n + l;
            // Row (i, l) of S^{-1} * T: sum over degrees j >= i.
            for j in i..=m {
                let coef = &binom[j][i] * (-&sig).pow((j - i) as u32);
                if coef.is_zero() {
                    continue;
                }
                let src = j * n + l;
                for cidx in 0..cols {
                    if top_int[src][cidx].is_zero() {
                        continue;
                    }
                    let prod = &coef * &top_int[src][cidx];
                    g[out_row][cidx] += prod;
                }
            }
        }
    }
    Pencil {
        op,
        emb,
        g,
        denom: lambda,
    }
}

/// Decodes a kernel vector of the line pencil into one polynomial per
/// component.
pub(crate) fn vector_to_polys(vec: &[Rat], n: usize) -> Vec<Poly> {
    let degs = vec.len() / n;
    (0..n)
        .map(|k| Poly::new((0..degs).map(|j| vec[j * n + k].clone()).collect()))
        .collect()
}

/// Pencil for the semi-invariant problem on `y`-homogeneous polynomials of
/// degree `h` with `x`-degree at most `e_max`:
/// `P(x+1, A(x) y) = q * P(x, y)`.  Returns the pencil and the input
/// monomial basis (ascending), which indexes the pencil columns.
pub(crate) fn semi_pencil(a: &PolyMatrix, h: u32, e_max: u32) -> Result<(Pencil, Vec<Mono>)> {
    let n = a.dim();
    let d = a.max_degree() as u32;
    let in_basis = monomials_homogeneous(n, e_max, h);
    let out_basis = monomials_homogeneous(n, e_max + h * d, h);
    let cols = in_basis.len();
    let rows = out_basis.len();
    // The input basis is a prefix of the output basis: both are sorted and
    // for fixed homogeneity the order is by x-degree first.
    debug_assert!(in_basis.iter().zip(&out_basis).all(|(a, b)| a == b));
    let index_of = |mono: &Mono| -> usize {
        out_basis
            .binary_search(mono)
            .expect("composed monomial stays within the output basis")
    };

    let one = Rat::one();
    let mut op = vec![vec![Rat::zero(); cols]; rows];
    let mut emb = vec![vec![Rat::zero(); cols]; rows];
    for (cidx, mono) in in_basis.iter().enumerate() {
        let p = MultiPoly::from_terms(n, vec![(mono.clone(), one.clone())]);
        let image = p.compose(&one, a)?;
        for (m, coeff) in image.terms() {
            op[index_of(m)][cidx] = coeff.clone();
        }
        emb[cidx][cidx] = one.clone();
    }

    // Integer reduction: substituting `lambda * A` multiplies the image of
    // a degree-h form by lambda^h, so the top block times lambda^h is
    // integer and candidates are integer eigenvalues divided by lambda^h.
    let lambda = matrix_denominator(a);
    let denom = lambda.pow(h);
    let denom_r = Rat::from(denom.clone());
    let g: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| {
            (0..cols)
                .map(|cidx| {
                    let v = &op[r][cidx] * &denom_r;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    Ok((
        Pencil {
            op,
            emb,
            g,
            denom,
        },
        in_basis,
    ))
}

/// Decodes a kernel vector of the semi-invariant pencil into a polynomial
/// on the given monomial basis.
pub(crate) fn vector_to_multipoly(vec: &[Rat], basis: &[Mono], n: usize) -> MultiPoly {
    MultiPoly::from_terms(
        n,
        basis
            .iter()
            .zip(vec)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    )
}
