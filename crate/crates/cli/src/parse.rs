//! Small argument grammars: complex numbers, grids and ranges.

use num_complex::Complex64;

/// `re` or `re,im`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("'{s}' is not a complex number (expected re or re,im)"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("'{s}' is not a complex number (expected re or re,im)")),
    }
}

/// `step:count` for `step·k`, `k = 1..=count`, or a comma list.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let bad = || format!("'{s}' is not a grid (expected step:count or a comma list)");
    if let Some((step, count)) = s.split_once(':') {
        let step: f64 = step.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        return Ok((1..=count).map(|k| step * k as f64).collect());
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect()
}

/// `a..b` (inclusive) or a single integer.
pub fn range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("'{s}' is not a range (expected a..b or n)");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

/// `re,im;re,im;...`.
pub fn points(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammars() {
        assert_eq!(complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(complex("-1,2").unwrap(), Complex64::new(-1.0, 2.0));
        assert!(complex("a,b").is_err());
        assert_eq!(grid("1e-3:3").unwrap().len(), 3);
        assert!((grid("1e-3:8").unwrap()[7] - 8e-3).abs() < 1e-18);
        assert_eq!(grid("0,0.5").unwrap(), vec![0.0, 0.5]);
        assert_eq!(range("5..50").unwrap(), (5, 50));
        assert_eq!(range("5..=7").unwrap(), (5, 7));
        assert_eq!(range("4").unwrap(), (4, 4));
        assert!(range("9..3").is_err());
        assert_eq!(points("1,0;0,1").unwrap().len(), 2);
    }
}
