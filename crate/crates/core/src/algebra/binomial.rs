use num_bigint::BigInt;
use num_traits::Zero;

/// Binomial coefficient extended by zero: `C(n, m) = 0` whenever
/// `n < 0`, `m < 0` or `n < m`.
pub fn binomial_z(n: i64, m: i64) -> BigInt {
    if n < 0 || m < 0 || n < m {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(m.min(n - m)))
}
