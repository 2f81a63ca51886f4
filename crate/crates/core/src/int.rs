//! Exact integer with an inline fast path. Series coefficients almost always
//! fit in an `i64`; overflow promotes to a heap `BigInt`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Int {
    S(i64),
    B(Box<BigInt>),
}

impl Default for Int {
    fn default() -> Self {
        Int::S(0)
    }
}

impl Int {
    pub fn one() -> Self {
        Int::S(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Int::S(v) => *v == 0,
            Int::B(b) => b.is_zero(),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::S(v) => BigInt::from(*v),
            Int::B(b) => (**b).clone(),
        }
    }

    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Int::S(v),
            None => Int::B(Box::new(b)),
        }
    }

    fn normalize(&mut self) {
        if let Int::B(b) = self {
            if let Some(v) = b.to_i64() {
                *self = Int::S(v);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Int) {
        if let (Int::S(a), Int::S(b)) = (&*self, o) {
            if let Some(s) = a.checked_add(*b) {
                *self = Int::S(s);
                return;
            }
        }
        *self = Int::from_big(self.to_big() + o.to_big());
    }

    pub fn sub_assign(&mut self, o: &Int) {
        if let (Int::S(a), Int::S(b)) = (&*self, o) {
            if let Some(s) = a.checked_sub(*b) {
                *self = Int::S(s);
                return;
            }
        }
        *self = Int::from_big(self.to_big() - o.to_big());
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::S(s), Int::S(x), Int::S(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::S(r);
                    return;
                }
            }
        }
        let mut r = Int::from_big(self.to_big() + a.to_big() * b.to_big());
        r.normalize();
        *self = r;
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::S(v) => match v.checked_neg() {
                Some(n) => Int::S(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::B(b) => Int::from_big(-(**b).clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow() {
        let mut a = Int::S(i64::MAX);
        a.add_assign(&Int::S(1));
        assert!(matches!(a, Int::B(_)));
        a.sub_assign(&Int::S(1));
        assert_eq!(a, Int::S(i64::MAX));
        let mut z = Int::S(0);
        z.add_mul(&Int::S(i64::MAX), &Int::S(4));
        assert_eq!(z.to_big(), BigInt::from(i64::MAX) * 4);
        assert_eq!(Int::S(i64::MIN).neg().to_big(), -BigInt::from(i64::MIN));
    }
}
