//! Exact arithmetic in `Q(√q)` and `Q(q^{1/4})`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(x: &BigRational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// `Some(s)` when `q = s^2`.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

/// `a + b√q`. When `q` is a perfect square `b` is folded into `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt {
    q: u64,
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Self {
        match exact_sqrt(q) {
            Some(s) => QSqrt { q, a: a + b * BigRational::from_integer(BigInt::from(s)), b: BigRational::zero() },
            None => QSqrt { q, a, b },
        }
    }

    pub fn rational(q: u64, a: BigRational) -> Self {
        QSqrt { q, a, b: BigRational::zero() }
    }

    /// `√q` itself.
    pub fn root(q: u64) -> Self {
        Self::new(q, BigRational::zero(), BigRational::one())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn sign(&self) -> Sign {
        qsqrt_sign(self)
    }
}

/// Sign of `a + b√q`: when `a` and `b` disagree in sign the answer is the
/// sign of `a` times the sign of `a^2 - q b^2`.
pub fn qsqrt_sign(x: &QSqrt) -> Sign {
    let sa = Sign::of_rational(&x.a);
    let sb = Sign::of_rational(&x.b);
    if sb == Sign::Zero {
        return sa;
    }
    if sa == Sign::Zero || sa == sb {
        return sb;
    }
    let q = BigRational::from_integer(BigInt::from(x.q));
    let disc = &x.a * &x.a - &x.b * &x.b * q;
    sa.times(Sign::of_rational(&disc))
}

impl Add for &QSqrt {
    type Output = QSqrt;
    fn add(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        QSqrt { q: self.q, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QSqrt {
    type Output = QSqrt;
    fn sub(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        QSqrt { q: self.q, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QSqrt {
    type Output = QSqrt;
    fn mul(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        let q = BigRational::from_integer(BigInt::from(self.q));
        QSqrt {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt { q: self.q, a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})·√{}", self.a, self.b, self.q)
        }
    }
}

/// `c_0 + c_1 r + c_2 r^2 + c_3 r^3` with `r = q^{1/4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticSurd {
    q: u64,
    pub c: [BigRational; 4],
}

impl QuarticSurd {
    pub fn zero(q: u64) -> Self {
        QuarticSurd { q, c: [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Adds `x · r^k`.
    pub fn add_scaled(&mut self, k: usize, x: &BigRational) {
        self.c[k] += x;
    }

    /// `X + rY` with `X = c_0 + c_2 √q`, `Y = c_1 + c_3 √q`.
    fn halves(&self) -> (QSqrt, QSqrt) {
        (
            QSqrt::new(self.q, self.c[0].clone(), self.c[2].clone()),
            QSqrt::new(self.q, self.c[1].clone(), self.c[3].clone()),
        )
    }

    /// Value as `a + b√q` when the odd powers of `r` vanish.
    pub fn to_qsqrt(&self) -> Option<QSqrt> {
        (self.c[1].is_zero() && self.c[3].is_zero()).then(|| self.halves().0)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let x = self.to_qsqrt()?;
        x.b.is_zero().then_some(x.a)
    }

    /// Exact sign: with `X`, `Y` as above and `r^2 = √q`, opposite signs
    /// are resolved by the sign of `X^2 - √q · Y^2 ∈ Q(√q)`.
    pub fn sign(&self) -> Sign {
        let (x, y) = self.halves();
        let sx = x.sign();
        let sy = y.sign();
        if sy == Sign::Zero {
            return sx;
        }
        if sx == Sign::Zero || sx == sy {
            return sy;
        }
        let s = QSqrt::root(self.q);
        let disc = &(&x * &x) - &(&s * &(&y * &y));
        sx.times(disc.sign())
    }
}

impl fmt::Display for QuarticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c[0])?;
        for k in 1..4 {
            if !self.c[k].is_zero() {
                write!(f, " + ({})·{}^({}/4)", self.c[k], self.q, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn qsqrt_signs() {
        assert_eq!(QSqrt::new(3, r(0), r(0)).sign(), Sign::Zero);
        assert_eq!(QSqrt::new(3, r(-2), r(1)).sign(), Sign::Negative);
        assert_eq!(QSqrt::new(3, r(-1), r(1)).sign(), Sign::Positive);
        assert_eq!(QSqrt::new(4, r(-2), r(1)).sign(), Sign::Zero);
        assert_eq!(QSqrt::new(9, r(1), r(2)), QSqrt::rational(9, r(7)));
    }

    #[test]
    fn quartic_signs() {
        // 3^{1/4} ≈ 1.316
        let mut x = QuarticSurd::zero(3);
        x.add_scaled(1, &r(1));
        x.add_scaled(0, &BigRational::new(BigInt::from(-131), BigInt::from(100)));
        assert_eq!(x.sign(), Sign::Positive);
        x.add_scaled(0, &BigRational::new(BigInt::from(-1), BigInt::from(100)));
        assert_eq!(x.sign(), Sign::Negative);
        // r^2 - √3 = 0 and 16^{1/4} = 2
        let mut z = QuarticSurd::zero(3);
        z.add_scaled(2, &r(1));
        z.c[0] = r(0);
        let mut w = z.clone();
        w.add_scaled(2, &r(-1));
        assert_eq!(w.sign(), Sign::Zero);
        let mut t = QuarticSurd::zero(16);
        t.add_scaled(1, &r(1));
        t.add_scaled(0, &r(-2));
        assert_eq!(t.sign(), Sign::Zero);
    }
}
