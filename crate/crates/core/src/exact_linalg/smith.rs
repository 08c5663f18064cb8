//! Smith normal form over ℤ with unimodular certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMatrix, GaussianRational, LinalgError};

/// `left · input · right = diag(divisors)` with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonnegative, with `divisors[i] | divisors[i + 1]`; length `min(rows, cols)`.
    pub divisors: Vec<BigInt>,
    pub left: ExactMatrix,
    pub right: ExactMatrix,
}

impl SmithForm {
    /// Nonzero divisors only.
    pub fn nonzero_divisors(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-multiplies the certificate and compares with the diagonal.
    pub fn verify(&self, input: &ExactMatrix) -> bool {
        let (rows, cols) = input.shape();
        let prod = &(&self.left * input) * &self.right;
        let diag = ExactMatrix::from_fn(rows, cols, |r, c| {
            if r == c {
                GaussianRational::from(self.divisors[r].clone())
            } else {
                GaussianRational::zero()
            }
        });
        let unimodular = |m: &ExactMatrix| {
            m.determinant()
                .ok()
                .and_then(|d| d.to_integer())
                .is_some_and(|d| d.abs().is_one())
        };
        prod == diag && unimodular(&self.left) && unimodular(&self.right)
    }
}

type IntMat = Vec<Vec<BigInt>>;

fn to_int_matrix(m: &ExactMatrix) -> Result<IntMat, LinalgError> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| m[(r, c)].to_integer().ok_or(LinalgError::NonIntegral { row: r, col: c }))
                .collect()
        })
        .collect()
}

fn int_identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn from_int_matrix(m: &IntMat, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| GaussianRational::from(m[r][c].clone()))
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    for c in 0..m[dst].len() {
        let v = &m[src][c] * q;
        m[dst][c] -= v;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[src] * q;
        row[dst] -= v;
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of an integer matrix (entries must be real integers).
pub fn smith_normal_form(input: &ExactMatrix) -> Result<SmithForm, LinalgError> {
    let (rows, cols) = input.shape();
    let mut a = to_int_matrix(input)?;
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                break;
            };
            a.swap(t, pr);
            u.swap(t, pr);
            swap_cols(&mut a, t, pc);
            swap_cols(&mut v, t, pc);

            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                row_axpy(&mut a, r, t, &q);
                row_axpy(&mut u, r, t, &q);
                dirty |= !a[r][t].is_zero();
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                col_axpy(&mut a, c, t, &q);
                col_axpy(&mut v, c, t, &q);
                dirty |= !a[t][c].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !a[r][c].is_multiple_of(&a[t][t]));
            match offender {
                Some((r, _)) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, r, &minus_one);
                    row_axpy(&mut u, t, r, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    let divisors = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Ok(SmithForm {
        divisors,
        left: from_int_matrix(&u, rows, rows),
        right: from_int_matrix(&v, cols, cols),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(rows: &[&[i64]]) -> Vec<i64> {
        let m = ExactMatrix::from_i64_rows(rows);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.verify(&m), "certificate failed for {rows:?}");
        snf.divisors.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn hand_computed_forms() {
        assert_eq!(divisors(&[&[0, -2], &[2, 0]]), vec![2, 2]);
        assert_eq!(divisors(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(divisors(&[&[2, 4], &[6, 8]]), vec![2, 4]);
    }

    #[test]
    fn divisibility_fixup_is_applied() {
        // diag(2, 3) is not in Smith form; the invariant factors are (1, 6).
        assert_eq!(divisors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(divisors(&[&[0, 0], &[0, 0]]), vec![0, 0]);
        assert_eq!(divisors(&[&[4, 6, 2]]), vec![2]);
    }

    #[test]
    fn non_integral_input_is_rejected() {
        let m = ExactMatrix::from_rows(&[vec![GaussianRational::ratio(1, 2)]], 1).unwrap();
        assert_eq!(smith_normal_form(&m), Err(LinalgError::NonIntegral { row: 0, col: 0 }));
        let m = ExactMatrix::from_rows(&[vec![GaussianRational::i()]], 1).unwrap();
        assert!(smith_normal_form(&m).is_err());
    }
}
