//! Double-double arithmetic for the alternating Bessel series.
//!
//! The ascending series for J_nu(z) cancels catastrophically once |z|
//! exceeds ~15: the largest intermediate term grows like e^|z| while the sum
//! stays O(1). Accumulating in a double-double (~31 significant digits)
//! pushes full f64 accuracy out to |z| ~ 35. Only the handful of operations
//! the series needs are implemented.

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Division by an exactly representable double.
    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let (p1, p2) = two_prod(q1, d);
        let r = Dd::from_sum(self.hi - p1, -p2).add(Dd::from_f64(self.lo));
        let q2 = (r.hi + r.lo) / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Full double-double division.
    #[inline]
    pub fn div(self, d: Dd) -> Dd {
        let q1 = self.hi / d.hi;
        let r = self.sub(d.mul(Dd::from_f64(q1)));
        let q2 = r.hi / d.hi;
        let r = r.sub(d.mul(Dd::from_f64(q2)));
        let q3 = r.hi / d.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }
}

/// Complex value with double-double components.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    #[inline]
    pub fn new(re: f64, im: f64) -> Self {
        Cdd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn add(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn div_f64(self, d: f64) -> Cdd {
        Cdd {
            re: self.re.div_f64(d),
            im: self.im.div_f64(d),
        }
    }

    /// Division by a real double-double.
    #[inline]
    pub fn div_dd(self, d: Dd) -> Cdd {
        Cdd {
            re: self.re.div(d),
            im: self.im.div(d),
        }
    }

    /// Cheap magnitude estimate (1-norm), enough for stopping tests.
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.abs() + self.im.abs()
    }
}
