use super::ball::RealBall;
use crate::error::Result;
use std::fmt;

/// A rectangular complex enclosure `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> ComplexBall {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealBall) -> ComplexBall {
        let prec = re.prec();
        ComplexBall {
            re,
            im: RealBall::zero(prec),
        }
    }

    pub fn zero(prec: u32) -> ComplexBall {
        ComplexBall::from_real(RealBall::zero(prec))
    }

    pub fn one(prec: u32) -> ComplexBall {
        ComplexBall::from_real(RealBall::one(prec))
    }

    pub fn i(prec: u32) -> ComplexBall {
        ComplexBall::new(RealBall::zero(prec), RealBall::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.neg())
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> ComplexBall {
        ComplexBall::new(self.im.neg(), self.re.clone())
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBall::new(re, im)
    }

    pub fn scale(&self, r: &RealBall) -> ComplexBall {
        ComplexBall::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn norm_sqr(&self) -> RealBall {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn div(&self, o: &ComplexBall) -> Result<ComplexBall> {
        let n = o.norm_sqr();
        let t = self.mul(&o.conj());
        Ok(ComplexBall::new(t.re.div(&n)?, t.im.div(&n)?))
    }

    pub fn pow(&self, mut e: u64) -> ComplexBall {
        let mut base = self.clone();
        let mut acc = ComplexBall::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}
