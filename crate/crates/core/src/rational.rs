//! Exact rational helpers: parsing and small dense linear algebra.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Parse `"n"`, `"-n"`, `"n/d"` or a plain decimal like `"0.25"`. Error messages carry
/// the byte offset of the offending character.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = |pos: usize, msg: &str| Error::Parse {
        input: s.to_string(),
        position: pos,
        message: msg.to_string(),
    };
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    if t.is_empty() {
        return Err(bad(0, "empty rational"));
    }
    let int = |part: &str, at: usize| -> Result<i64> {
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() {
            return Err(bad(at, "expected digits"));
        }
        if let Some(i) = digits.find(|c: char| !c.is_ascii_digit()) {
            return Err(bad(at + (part.len() - digits.len()) + i, "unexpected character"));
        }
        part.parse::<i64>().map_err(|_| bad(at, "integer out of range"))
    };
    if let Some(slash) = t.find('/') {
        let n = int(&t[..slash], offset)?;
        let d = int(&t[slash + 1..], offset + slash + 1)?;
        if d == 0 {
            return Err(bad(offset + slash + 1, "zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some(dot) = t.find('.') {
        let whole = &t[..dot];
        let frac = &t[dot + 1..];
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(offset + dot + 1, "malformed decimal"));
        }
        let negative = whole.starts_with('-');
        let w = if whole == "-" || whole == "+" || whole.is_empty() { 0 } else { int(whole, offset)? };
        let f = frac.parse::<i64>().map_err(|_| bad(offset + dot + 1, "malformed decimal"))?;
        let scale = 10i64.pow(frac.len() as u32);
        let mag = Q::new(w.abs() * scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    Ok(Q::from_integer(int(t, offset)?))
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..m).map(|j| (0..k).fold(Q::zero(), |s, l| s + row[l] * b[l][j])).collect())
        .collect()
}

pub fn mat_vec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y)).collect()
}

pub fn transpose(a: &QMat) -> QMat {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(a: &QMat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if !f.is_zero() {
                for k in c..n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
    }
    d
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let piv = m[c][c];
        for v in m[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..2 * n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational(" -2/6").unwrap(), q(-1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), qi(7));
    }

    #[test]
    fn zero_denominator_reports_position() {
        match parse_rational("1/0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_rational("1/x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = vec![vec![qi(2), qi(-1)], vec![qi(-3), qi(2)]];
        assert_eq!(det(&a), qi(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
    }
}
