//! Complex arithmetic over `Real`.

use std::fmt;

use super::Real;

/// Complex number with high-precision rectangular parts.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Complex {
        Complex {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Complex {
        Complex {
            re: Real::one(prec),
            im: Real::zero(prec),
        }
    }

    pub fn from_real(re: Real) -> Complex {
        let prec = re.prec();
        Complex {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Complex {
        Complex {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, s: &Real) -> Complex {
        Complex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let d = o.norm_sqr();
        assert!(!d.is_zero(), "complex division by zero");
        let n = self.mul(&o.conj());
        Complex {
            re: &n.re / &d,
            im: &n.im / &d,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn exp(&self) -> Complex {
        let m = self.re.exp();
        if self.im.is_zero() {
            let prec = self.prec();
            return Complex {
                re: m,
                im: Real::zero(prec),
            };
        }
        let (s, c) = self.im.sin_cos();
        Complex {
            re: &m * &c,
            im: &m * &s,
        }
    }

    /// Principal logarithm; panics at zero.
    pub fn ln(&self) -> Complex {
        assert!(!self.is_zero(), "ln of complex zero");
        Complex {
            re: self.abs().ln(),
            im: self.im.atan2(&self.re),
        }
    }

    /// Principal power `z^a` for real exponent `a`.
    pub fn pow_real(&self, a: &Real) -> Complex {
        self.ln().scale(a).exp()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex({} + {}i)",
            self.re.to_decimal(18),
            self.im.to_decimal(18)
        )
    }
}
