//! Closed-form upper bounds on the size of an `(n, 4, 3)_q` code.

use std::fmt;

use crate::error::{invalid, Result};

/// `C(m, j)`, zero when `j > m`. Exact; panics on `u64` overflow.
pub fn binomial(m: u64, j: u64) -> u64 {
    if j > m {
        return 0;
    }
    let j = j.min(m - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Which branch of the `U_q(n)` definition applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCase {
    /// `n ≡ 5 (mod 6)` and `q ≢ 1 (mod 3)`: the floor is reduced by one.
    MinusOne,
    Otherwise,
}

impl BoundCase {
    pub fn of(n: u64, q: u64) -> Self {
        if n % 6 == 5 && q % 3 != 1 {
            BoundCase::MinusOne
        } else {
            BoundCase::Otherwise
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BoundCase::MinusOne => "n=5mod6,q!=1mod3",
            BoundCase::Otherwise => "otherwise",
        }
    }
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn check_params(n: u64, q: u64) -> Result<()> {
    if n < 3 {
        return invalid(format!("n must be at least 3 (got {n})"));
    }
    if q < 2 {
        return invalid(format!("q must be at least 2 (got {q})"));
    }
    Ok(())
}

/// `U_q(n) = floor((q-1) n floor((n-1)/2) / 3)`, minus one when
/// `n ≡ 5 (mod 6)` and `q ≢ 1 (mod 3)`.
pub fn u_q(n: u64, q: u64) -> Result<u64> {
    check_params(n, q)?;
    let base = (q - 1) * n * ((n - 1) / 2) / 3;
    Ok(match BoundCase::of(n, q) {
        BoundCase::MinusOne => base - 1,
        BoundCase::Otherwise => base,
    })
}

/// `min{U_q(n), C(n, 3)}`.
pub fn upper_bound(n: u64, q: u64) -> Result<u64> {
    Ok(u_q(n, q)?.min(binomial(n, 3)))
}

/// The exact value of `A_q(n, 4, 3)`. Numerically identical to
/// [`upper_bound`]; kept separate so callers can say which claim they mean.
pub fn main_theorem_value(n: u64, q: u64) -> Result<u64> {
    upper_bound(n, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub q: u64,
    pub u_q_n: u64,
    pub binom_n_3: u64,
    pub main_value: u64,
    pub case: BoundCase,
}

impl BoundReport {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        let u_q_n = u_q(n, q)?;
        let binom_n_3 = binomial(n, 3);
        Ok(BoundReport {
            n,
            q,
            u_q_n,
            binom_n_3,
            main_value: u_q_n.min(binom_n_3),
            case: BoundCase::of(n, q),
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "q={}", self.q)?;
        writeln!(f, "u_q_n={}", self.u_q_n)?;
        writeln!(f, "binom_n_3={}", self.binom_n_3)?;
        writeln!(f, "main_value={}", self.main_value)?;
        write!(f, "case_tag={}", self.case)
    }
}
