use crate::{Error, Real, Result};

/// Natural log of the main term of the probability that a fixed graph `H`
/// with the given degree sequence is contained in a uniform random d-regular
/// graph on `n` vertices:
/// `Σⱼ ln (d)_{deg j} − |E(H)| ln 2 − Σ_{i<|E(H)|} ln(dn/2 − i)`,
/// where `(d)_k` is the falling factorial.
pub fn mckay_log_prob<F: Real>(n: usize, d: usize, h_degrees: &[usize], h_edges: usize) -> Result<F> {
    let half = d * n / 2;
    if h_degrees.len() > n || h_degrees.iter().any(|&k| k > d) {
        return Err(Error::Domain("degree sequence does not fit the regular host".into()));
    }
    if h_degrees.iter().sum::<usize>() != 2 * h_edges || h_edges > half || d * n % 2 == 1 {
        return Err(Error::Domain("edge count inconsistent with degrees or host".into()));
    }
    let falling: F = h_degrees
        .iter()
        .flat_map(|&k| (0..k).map(move |i| F::from_count(d - i).ln()))
        .fold(F::zero(), |a, b| a + b);
    let pairs: F = (0..h_edges).map(|i| F::from_count(half - i).ln()).fold(F::zero(), |a, b| a + b);
    Ok(falling - F::from_count(h_edges) * F::LN_2() - pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_and_empty() {
        for (n, d) in [(10, 3), (100, 4), (7, 2)] {
            let mut degs = vec![0; n];
            degs[0] = 1;
            degs[1] = 1;
            let v: f64 = mckay_log_prob(n, d, &degs, 1).unwrap();
            assert!((v - (d as f64 / n as f64).ln()).abs() < 1e-12);
            assert_eq!(mckay_log_prob::<f64>(n, d, &[], 0).unwrap(), 0.0);
        }
    }

    #[test]
    fn matchings_decrease() {
        let mut last = 0.0;
        for m in 1..=5 {
            let degs: Vec<usize> = (0..10).map(|i| (i < 2 * m) as usize).collect();
            let v: f64 = mckay_log_prob(10, 3, &degs, m).unwrap();
            assert!(v.is_finite() && v < last);
            last = v;
        }
        assert!(mckay_log_prob::<f64>(10, 3, &[4, 0], 2).is_err());
        assert!(mckay_log_prob::<f64>(10, 3, &[1, 1], 2).is_err());
    }
}
