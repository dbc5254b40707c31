//! Small exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{RatVec, Q};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RatVec], n: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(RatVec).collect(), pivots)
}

pub fn rank(rows: &[RatVec], n: usize) -> usize {
    rref(rows, n).1.len()
}

/// Basis of {x : row·x = 0 for every row}, as primitive integer vectors.
pub fn nullspace(rows: &[RatVec], n: usize) -> Vec<RatVec> {
    let (r, pivots) = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = RatVec::zeros(n);
            v.0[f] = Q::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v.0[pc] = -row.0[f].clone();
            }
            v.primitive()
        })
        .collect()
}

/// Canonical basis of the span of `rows`: RREF rows scaled to primitive integers.
pub fn span_basis(rows: &[RatVec], n: usize) -> Vec<RatVec> {
    let mut b: Vec<RatVec> = rref(rows, n).0.iter().map(RatVec::primitive).collect();
    b.sort();
    b
}

/// Orthogonal projection of `x` onto the orthogonal complement of span(`basis`).
pub fn project_out(x: &RatVec, basis: &[RatVec]) -> RatVec {
    if basis.is_empty() {
        return x.clone();
    }
    // Gram-Schmidt on the fly; bases here are tiny.
    let ortho = gram_schmidt(basis);
    let mut y = x.clone();
    for b in &ortho {
        let c = y.dot(b) / b.dot(b);
        y = y.sub(&b.scale(&c));
    }
    y
}

fn gram_schmidt(basis: &[RatVec]) -> Vec<RatVec> {
    let mut out: Vec<RatVec> = Vec::new();
    for v in basis {
        let mut w = v.clone();
        for b in &out {
            let c = w.dot(b) / b.dot(b);
            w = w.sub(&b.scale(&c));
        }
        if !w.is_zero() {
            out.push(w);
        }
    }
    out
}

/// Solve `Σ λ_i cols[i] = x` for linearly independent `cols`, if `x` is in their span.
pub fn solve_in_span(cols: &[RatVec], x: &RatVec) -> Option<Vec<Q>> {
    let n = x.dim();
    let k = cols.len();
    // augmented system, rows = coordinates
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c.0[i].clone()).collect();
            r.push(x.0[i].clone());
            RatVec(r)
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut lam = vec![Q::zero(); k];
    for (row, &pc) in r.iter().zip(&pivots) {
        lam[pc] = row.0[k].clone();
    }
    Some(lam)
}

/// Left inverse `M` with `M·S = I` for linearly independent columns `S`.
/// For `x` in span(S), the coefficients are `M·x`.
pub fn left_inverse(cols: &[RatVec]) -> Vec<RatVec> {
    let n = cols[0].dim();
    let k = cols.len();
    // Gram matrix G = SᵀS, M = G⁻¹ Sᵀ
    let g: Vec<Vec<Q>> = (0..k)
        .map(|i| (0..k).map(|j| cols[i].dot(&cols[j])).collect())
        .collect();
    let ginv = invert(&g).expect("columns must be independent");
    (0..k)
        .map(|i| {
            RatVec(
                (0..n)
                    .map(|c| (0..k).fold(Q::zero(), |acc, j| acc + &ginv[i][j] * &cols[j].0[c]))
                    .collect(),
            )
        })
        .collect()
}

pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let k = m.len();
    let rows: Vec<RatVec> = (0..k)
        .map(|i| {
            let mut r = m[i].clone();
            r.extend((0..k).map(|j| if i == j { Q::one() } else { Q::zero() }));
            RatVec(r)
        })
        .collect();
    let (r, pivots) = rref(&rows, 2 * k);
    if pivots.len() < k || pivots[k - 1] >= k {
        return None;
    }
    Some(r.iter().map(|row| row.0[k..].to_vec()).collect())
}

/// Integer solution of `Σ c_j cols[j] = b`, via column-style Hermite reduction.
pub fn solve_integer(cols: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = b.len();
    let s = cols.len();
    // a[j] is column j; v tracks the unimodular transform (columns of identity)
    let mut a: Vec<Vec<BigInt>> = cols.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..s)
        .map(|j| (0..s).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut piv_col = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for row in 0..n {
        if piv_col == s {
            break;
        }
        // Euclid on entries a[j][row] for j >= piv_col
        loop {
            let nz: Vec<usize> = (piv_col..s).filter(|&j| !a[j][row].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    a.swap(piv_col, j);
                    v.swap(piv_col, j);
                }
                break;
            }
            let jmin = *nz
                .iter()
                .min_by(|&&x, &&y| a[x][row].abs().cmp(&a[y][row].abs()))
                .unwrap();
            for &j in &nz {
                if j != jmin {
                    let f = a[j][row].div_floor(&a[jmin][row]);
                    for i in 0..n {
                        let d = &f * &a[jmin][i];
                        a[j][i] -= d;
                    }
                    for i in 0..s {
                        let d = &f * &v[jmin][i];
                        v[j][i] -= d;
                    }
                }
            }
        }
        if !a[piv_col][row].is_zero() {
            pivots.push((row, piv_col));
            piv_col += 1;
        }
    }
    // forward substitution on the echelon columns
    let mut y = vec![BigInt::zero(); s];
    let mut resid: Vec<BigInt> = b.to_vec();
    for &(row, col) in &pivots {
        let (qq, rr) = resid[row].div_rem(&a[col][row]);
        if !rr.is_zero() {
            return None;
        }
        for i in 0..n {
            let d = &qq * &a[col][i];
            resid[i] -= d;
        }
        y[col] = qq;
    }
    if resid.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut c = vec![BigInt::zero(); s];
    for (j, yj) in y.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        for i in 0..s {
            c[i] += yj * &v[j][i];
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(&[RatVec::from_ints(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.dot(&RatVec::from_ints(&[1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn integer_solve() {
        let cols = vec![bi(&[1, 0]), bi(&[1, 1]), bi(&[1, 2])];
        let b = bi(&[3, -4]);
        let c = solve_integer(&cols, &b).unwrap();
        let mut got = bi(&[0, 0]);
        for (cj, col) in c.iter().zip(&cols) {
            for i in 0..2 {
                got[i] += cj * &col[i];
            }
        }
        assert_eq!(got, b);
        // 2ℤ cannot hit 1
        assert!(solve_integer(&[bi(&[2])], &bi(&[1])).is_none());
    }

    #[test]
    fn span_solve() {
        let cols = vec![RatVec::from_ints(&[1, 0, 1]), RatVec::from_ints(&[0, 1, 1])];
        let lam = solve_in_span(&cols, &RatVec::from_ints(&[2, 3, 5])).unwrap();
        assert_eq!(lam, vec![Q::from_integer(2.into()), Q::from_integer(3.into())]);
        assert!(solve_in_span(&cols, &RatVec::from_ints(&[1, 0, 0])).is_none());
        let m = left_inverse(&cols);
        let x = RatVec::from_ints(&[2, 3, 5]);
        assert_eq!(m[0].dot(&x), Q::from_integer(2.into()));
    }
}
