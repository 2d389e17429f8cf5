//! Exact dense linear algebra over Q(i), at the tiny sizes the geometry needs.

use crate::arith::GaussianRational;

type Gq = GaussianRational;

/// Row echelon rank.
pub(crate) fn rank(rows: &[Vec<Gq>]) -> usize {
    let mut m: Vec<Vec<Gq>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    let mut col = 0;
    while r < nrows && col < ncols {
        let Some(p) = (r..nrows).find(|&k| !m[k][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            m[r][c] = &m[r][c] * &inv;
        }
        for k in 0..nrows {
            if k != r && !m[k][col].is_zero() {
                let f = m[k][col].clone();
                for c in col..ncols {
                    let d = &f * &m[r][c];
                    m[k][c] = &m[k][c] - &d;
                }
            }
        }
        r += 1;
        col += 1;
    }
    r
}

/// Basis of the right nullspace of the matrix, as vectors of length `ncols`.
pub(crate) fn nullspace(rows: &[Vec<Gq>], ncols: usize) -> Vec<Vec<Gq>> {
    let mut m: Vec<Vec<Gq>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            m[r][c] = &m[r][c] * &inv;
        }
        for k in 0..nrows {
            if k != r && !m[k][col].is_zero() {
                let f = m[k][col].clone();
                for c in col..ncols {
                    let d = &f * &m[r][c];
                    m[k][c] = &m[k][c] - &d;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Gq::zero(); ncols];
        v[free] = Gq::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn det3(m: &[[Gq; 3]; 3]) -> Gq {
    let det2 = |a: &Gq, b: &Gq, c: &Gq, d: &Gq| -> Gq { &(a * d) - &(b * c) };
    let c0 = det2(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
    let c1 = det2(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
    let c2 = det2(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
    &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
}

/// Adjugate of a 3x3 matrix: `m * adjugate(m) = det(m) * I`.
pub(crate) fn adjugate3(m: &[[Gq; 3]; 3]) -> [[Gq; 3]; 3] {
    let det2 = |a: &Gq, b: &Gq, c: &Gq, d: &Gq| -> Gq { &(a * d) - &(b * c) };
    let cof = |r: usize, c: usize| -> Gq {
        let rs: Vec<usize> = (0..3).filter(|&k| k != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&k| k != c).collect();
        let minor = det2(&m[rs[0]][cs[0]], &m[rs[0]][cs[1]], &m[rs[1]][cs[0]], &m[rs[1]][cs[1]]);
        if (r + c) % 2 == 0 {
            minor
        } else {
            -&minor
        }
    };
    let mut out: [[Gq; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Gq::zero()));
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = cof(c, r);
        }
    }
    out
}

/// Inverse of a 3x3 matrix via the adjugate, if the determinant is nonzero.
pub(crate) fn invert3(m: &[[Gq; 3]; 3]) -> Option<[[Gq; 3]; 3]> {
    let det2 = |a: &Gq, b: &Gq, c: &Gq, d: &Gq| -> Gq { &(a * d) - &(b * c) };
    let cof = |r: usize, c: usize| -> Gq {
        let rs: Vec<usize> = (0..3).filter(|&k| k != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&k| k != c).collect();
        let minor = det2(&m[rs[0]][cs[0]], &m[rs[0]][cs[1]], &m[rs[1]][cs[0]], &m[rs[1]][cs[1]]);
        if (r + c) % 2 == 0 {
            minor
        } else {
            -&minor
        }
    };
    let det = &(&(&m[0][0] * &cof(0, 0)) + &(&m[0][1] * &cof(0, 1))) + &(&m[0][2] * &cof(0, 2));
    if det.is_zero() {
        return None;
    }
    let dinv = det.inv().expect("nonzero determinant");
    let mut out = std::array::from_fn(|_| std::array::from_fn(|_| Gq::zero()));
    let o: &mut [[Gq; 3]; 3] = &mut out;
    for r in 0..3 {
        for c in 0..3 {
            // adjugate transposes the cofactor matrix
            o[r][c] = &cof(c, r) * &dinv;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gq(n: i64) -> Gq {
        Gq::from_int(n)
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![gq(1), gq(0), gq(1)],
            vec![gq(0), gq(1), gq(1)],
            vec![gq(1), gq(1), gq(2)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = row
                .iter()
                .zip(&ns[0])
                .fold(Gq::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn invert3_roundtrip() {
        let m = [
            [gq(1), gq(2), gq(0)],
            [gq(0), gq(1), gq(4)],
            [gq(5), gq(0), gq(1)],
        ];
        let inv = invert3(&m).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let mut dot = Gq::zero();
                for k in 0..3 {
                    dot = &dot + &(&m[r][k] * &inv[k][c]);
                }
                assert_eq!(dot, if r == c { gq(1) } else { gq(0) });
            }
        }
        let sing = [
            [gq(1), gq(2), gq(3)],
            [gq(2), gq(4), gq(6)],
            [gq(0), gq(1), gq(1)],
        ];
        assert!(invert3(&sing).is_none());
    }
}
