use num_rational::Ratio;

use super::{FormulaError, FormulaResult, Intermediate};

fn overflow(k: usize) -> FormulaError {
    FormulaError::Overflow { k }
}

/// Σ cᵢ kⁱ with checked arithmetic; coefficients from the constant term up.
fn poly(k: i64, coeffs: &[i64], at: usize) -> Result<i64, FormulaError> {
    coeffs.iter().rev().try_fold(0i64, |acc, &c| {
        acc.checked_mul(k)
            .and_then(|v| v.checked_add(c))
            .ok_or_else(|| overflow(at))
    })
}

fn binom(n: i64, r: i64) -> Option<i64> {
    if r < 0 || n < r {
        return Some(0);
    }
    let mut acc: i64 = 1;
    for i in 0..r {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of `b + c + d + e = h` in positive integers, up to the swap
/// `(b↔c, d↔e)`, from the three closed-form contributions b < c,
/// b = c with d < e, and b = c with d = e.
pub fn z_count(h: usize) -> Result<i64, FormulaError> {
    if h < 4 {
        return Err(FormulaError::KBelowRange { k: h, min: 4 });
    }
    let m = (h / 2) as i64;
    let z = if h % 2 == 1 {
        m * (m - 1) * (4 * m - 5) / 6 + m * (m - 1) / 2
    } else {
        (m - 1) * (m - 2) * (4 * m - 3) / 6 + (m - 2) * (m - 1) / 2 + (m - 1)
    };
    Ok(z)
}

/// x = Σ_{h=4}^{k−1} z(h).
pub fn x_sum(k: usize) -> Result<i64, FormulaError> {
    if k < 5 {
        return Err(FormulaError::KBelowRange { k, min: 5 });
    }
    (4..k).try_fold(0i64, |acc, h| {
        acc.checked_add(z_count(h)?).ok_or_else(|| overflow(k))
    })
}

/// The parity-split closed form for x, evaluated at k.
pub fn x_closed_form(k: usize) -> Result<Ratio<i64>, FormulaError> {
    if k < 5 {
        return Err(FormulaError::KBelowRange { k, min: 5 });
    }
    let coeffs: [i64; 5] = if k % 2 == 1 {
        [33, -62, 38, -10, 1]
    } else {
        [48, -68, 38, -10, 1]
    };
    Ok(Ratio::new(poly(k as i64, &coeffs, k)?, 48))
}

const NU_ODD: [i64; 5] = [213, -410, 260, -70, 7];
const NU_EVEN: [i64; 5] = [288, -440, 260, -70, 7];
const QUARTIC: [i64; 5] = [288, -515, 290, -70, 7];

/// ν for genus 2, h = 3, π = [2k].
pub fn nu_genus2(k: usize) -> Result<FormulaResult, FormulaError> {
    if k < 5 {
        return Err(FormulaError::KBelowRange { k, min: 5 });
    }
    let kk = k as i64;
    // 48ν = 7k⁴ − 70k³ + 290k² − 515k + 288 − 30(2k − 5)⌊k/2⌋
    let main = poly(kk, &QUARTIC, k)?;
    let correction = (2 * kk - 5)
        .checked_mul(kk / 2)
        .and_then(|v| v.checked_mul(30))
        .ok_or_else(|| overflow(k))?;
    let scaled = main.checked_sub(correction).ok_or_else(|| overflow(k))?;
    if scaled % 48 != 0 || scaled < 0 {
        return Err(FormulaError::Inconsistent("48 | closed form"));
    }
    let nu = scaled / 48;

    let x = x_sum(k)?;
    let x_closed = x_closed_form(k)?;
    if x_closed != Ratio::from_integer(x) {
        return Err(FormulaError::Inconsistent("x sum equals its closed form"));
    }
    let y = binom(kk - 1, 4).ok_or_else(|| overflow(k))?;
    let five_x_plus_y = x
        .checked_mul(5)
        .and_then(|v| v.checked_add(y))
        .ok_or_else(|| overflow(k))?;
    if five_x_plus_y != nu {
        return Err(FormulaError::Inconsistent("nu = 5x + y"));
    }

    let nu_odd = Ratio::new(poly(kk, &NU_ODD, k)?, 48);
    let nu_even = Ratio::new(poly(kk, &NU_EVEN, k)?, 48);
    // 2(k/2 − ⌊k/2⌋) is k mod 2
    let parity = Ratio::from_integer(kk % 2);
    if nu_even + parity * (nu_odd - nu_even) != Ratio::from_integer(nu) {
        return Err(FormulaError::Inconsistent("parity interpolation"));
    }

    Ok(FormulaResult {
        nu: nu as u64,
        label: None,
        formula: "genus2-h3",
        intermediates: vec![
            Intermediate::int("x", x),
            Intermediate {
                name: "x_closed",
                value: x_closed,
            },
            Intermediate::int("y", y),
            Intermediate {
                name: "nu_odd",
                value: nu_odd,
            },
            Intermediate {
                name: "nu_even",
                value: nu_even,
            },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit count of compositions of h into four parts under (b↔c, d↔e),
    /// by explicit enumeration.
    fn z_brute(h: usize) -> i64 {
        let mut count = 0;
        for b in 1..h {
            for c in 1..h {
                for d in 1..h {
                    if b + c + d >= h {
                        continue;
                    }
                    let e = h - b - c - d;
                    // keep the lexicographically larger of the two images
                    if (b, c, d, e) >= (c, b, e, d) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn z_small_values() {
        assert_eq!(z_count(4).unwrap(), 1);
        assert_eq!(z_count(5).unwrap(), 2);
        assert_eq!(z_count(6).unwrap(), 6);
        assert!(z_count(3).is_err());
    }

    #[test]
    fn z_matches_brute_force() {
        for h in 4..=40 {
            assert_eq!(z_count(h).unwrap(), z_brute(h), "h={h}");
        }
    }

    #[test]
    fn x_values() {
        assert_eq!(x_sum(5).unwrap(), 1);
        assert_eq!(x_sum(6).unwrap(), 3);
        assert_eq!(x_closed_form(5).unwrap(), Ratio::from_integer(1));
        assert_eq!(x_closed_form(6).unwrap(), Ratio::from_integer(3));
        assert_eq!(x_closed_form(7).unwrap(), Ratio::from_integer(x_sum(7).unwrap()));
        assert!(x_sum(4).is_err());
    }

    #[test]
    fn nu_values() {
        let nu = |k| nu_genus2(k).unwrap().nu;
        assert_eq!(nu(5), 6);
        assert_eq!(nu(6), 20);
        assert_eq!(nu(7), 60);
        let r = nu_genus2(5).unwrap();
        assert_eq!(r.intermediate("nu_odd"), Some(Ratio::from_integer(6)));
        assert_eq!(r.intermediate("y"), Some(Ratio::from_integer(1)));
        assert_eq!(nu_genus2(6).unwrap().intermediate("nu_even"), Some(Ratio::from_integer(20)));
        assert_eq!(nu_genus2(7).unwrap().intermediate("nu_odd"), Some(Ratio::from_integer(60)));
    }

    #[test]
    fn identities_hold_to_200() {
        for k in 5..=200 {
            let r = nu_genus2(k).unwrap();
            let x = x_sum(k).unwrap();
            let y = binom(k as i64 - 1, 4).unwrap();
            assert_eq!(r.nu as i64, 5 * x + y);
        }
    }

    #[test]
    fn large_k_is_exact_or_reports_overflow() {
        assert!(nu_genus2(10_000).is_ok());
        assert_eq!(nu_genus2(1_000_000).unwrap_err(), FormulaError::Overflow { k: 1_000_000 });
    }
}
