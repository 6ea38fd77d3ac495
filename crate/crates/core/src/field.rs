//! Arithmetic in F_q for q = p^k with p an odd prime.
//!
//! An element is stored as a single index in `[0, q)`: the coefficients of
//! its polynomial representative `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` packed
//! base p with `c_0` least significant. For k = 1 the index is the residue.
//! Indices below p are exactly the prime subfield.
//!
//! Multiplication goes through discrete exp/log tables built from the
//! smallest-index generator of F_q^*; addition is digit-wise mod p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Built-in moduli: for every odd prime power q = p^k <= 2401 with k >= 2,
/// the monic irreducible polynomial of degree k whose lower coefficients
/// `[c_0, .., c_{k-1}]`, read as a base-p index, are smallest.
/// Coefficients are listed constant term first.
pub const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (7, 4, &[1, 1, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
    (17, 2, &[3, 0, 1]),
    (19, 2, &[1, 0, 1]),
    (23, 2, &[1, 0, 1]),
    (29, 2, &[2, 0, 1]),
    (31, 2, &[1, 0, 1]),
    (37, 2, &[2, 0, 1]),
    (41, 2, &[3, 0, 1]),
    (43, 2, &[1, 0, 1]),
    (47, 2, &[1, 0, 1]),
];

/// A field element, identified by its packed coefficient index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Operation selector for [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
}

/// A finite field of odd characteristic together with its lookup tables.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    // exp[i] = g^i for i in 0..q-1
    exp: Vec<u32>,
    // log[x] for x != 0; log[0] is unused
    log: Vec<u32>,
    trace: Vec<u32>,
    eta: Vec<i8>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn builtin_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    BUILTIN_MODULI
        .iter()
        .find(|(bp, bk, _)| *bp == p && *bk == k)
        .map(|(_, _, m)| m.to_vec())
}

/// Remainder of `a` modulo `b` over F_p; both are coefficient vectors,
/// constant term first, `b` monic.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c as u64 % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, deg);
            g.push(1);
            if poly_rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `k` over F_p in the ordering used by
/// [`BUILTIN_MODULI`].
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|idx| {
            let mut f = digits(idx, p, k as usize);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// Builds F_{p^k}. `modulus` lists the k+1 coefficients of a monic
    /// irreducible polynomial, constant term first; it must be `None` for
    /// k = 1 and defaults to [`BUILTIN_MODULI`] (or the same search rule
    /// beyond the table) otherwise.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::UnsupportedDegree {
                p,
                k,
                reason: "degree must be at least 1",
            });
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::UnsupportedDegree {
                p,
                k,
                reason: "field order exceeds 65536",
            });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = if k == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidModulus(
                    "prime fields take no modulus".into(),
                ));
            }
            None
        } else {
            let m = match modulus {
                Some(m) => m,
                None => builtin_modulus(p, k).unwrap_or_else(|| smallest_irreducible(p, k)),
            };
            if m.len() != k as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients, got {}",
                    k + 1,
                    m.len()
                )));
            }
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!(
                    "coefficient {c} not reduced mod {p}"
                )));
            }
            if m[k as usize] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus(m, p));
            }
            Some(m)
        };

        let mut field = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
            eta: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Multiplication without tables, used while building them.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        match &self.modulus {
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
            Some(m) => {
                let k = self.k as usize;
                let p = self.p as u64;
                let da = digits(a as u64, self.p, k);
                let db = digits(b as u64, self.p, k);
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                    }
                }
                let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
                let mut r = poly_rem(&prod, m, self.p);
                r.resize(k, 0);
                pack(&r, self.p)
            }
        }
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = (q - 1) as u64;
        let primes = factorize(order);
        let generator = (1..q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&l| self.slow_pow(g, order / l) != 1)
            })
            .expect("F_q^* is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        self.exp = exp;
        self.log = log;

        // eta(x) = +1 iff log x is even
        self.eta = (0..q)
            .map(|x| match x {
                0 => 0,
                _ if self.log[x as usize] % 2 == 0 => 1,
                _ => -1,
            })
            .collect();

        // Tr(x) = sum of the k Frobenius conjugates
        let mut trace = Vec::with_capacity(q as usize);
        for x in 0..q {
            let mut acc = Elem::ZERO;
            let mut conj = Elem(x);
            for _ in 0..self.k {
                acc = self.add(acc, conj);
                conj = self.pow(conj, self.p as u64);
            }
            assert!(acc.0 < self.p, "trace must land in the prime subfield");
            trace.push(acc.0);
        }
        self.trace = trace;
    }

    fn slow_pow(&self, base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// Iterator over all elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    /// Iterator over F_q^*.
    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(Error::InvalidElement(index))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Polynomial coefficients of `x`, constant term first.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        digits(x.0 as u64, self.p, self.k as usize)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (mut a, mut b) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut a = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.k == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let n = self.q - 1;
        let s = self.log[a.index()] + self.log[b.index()];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.index()];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.index()] as u64;
        Elem(self.exp[((l as u128 * e as u128) % n as u128) as usize])
    }

    /// Dispatches one of the six field operations. For `Neg` and `Inv` the
    /// second operand is ignored; for `Pow` it is the exponent.
    pub fn arith(&self, op: ArithOp, x: Elem, y: u64) -> Result<Elem> {
        let ey = || {
            u32::try_from(y)
                .ok()
                .filter(|&v| v < self.q)
                .map(Elem)
                .ok_or(Error::InvalidElement(y.min(u32::MAX as u64) as u32))
        };
        Ok(match op {
            ArithOp::Add => self.add(x, ey()?),
            ArithOp::Sub => self.sub(x, ey()?),
            ArithOp::Mul => self.mul(x, ey()?),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x)?,
            ArithOp::Pow => self.pow(x, y),
        })
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.index()]
    }

    /// Quadratic character with the convention eta(0) = 0.
    #[inline]
    pub fn eta(&self, x: Elem) -> i8 {
        self.eta[x.index()]
    }

    /// eta(-1), i.e. +1 iff q = 1 mod 4.
    pub fn eta_minus_one(&self) -> i8 {
        self.eta(self.neg(Elem::ONE))
    }

    /// Smallest-index i with i^2 = -1, if any.
    pub fn sqrt_minus_one(&self) -> Option<Elem> {
        let m1 = self.neg(Elem::ONE);
        self.elements().find(|&x| self.square(x) == m1)
    }

    /// Solutions of s^2 = a (zero, one or two of them).
    pub fn sqrt_count(&self, a: Elem) -> usize {
        match self.eta(a) {
            0 => 1,
            1 => 2,
            _ => 0,
        }
    }

    /// Discrete log to the table generator; `None` at zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.index()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(2, 1, None), Err(Error::EvenCharacteristic(2)));
        assert_eq!(FieldSpec::new(9, 1, None), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::new(1, 1, None), Err(Error::NotPrime(1)));
        assert!(matches!(
            FieldSpec::new(3, 0, None),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            FieldSpec::new(3, 11, None),
            Err(Error::UnsupportedDegree { .. })
        ));
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(matches!(
            FieldSpec::new(3, 2, Some(vec![2, 0, 1])),
            Err(Error::ReducibleModulus(..))
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(vec![1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(vec![1, 1])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(5, 1, Some(vec![0, 1])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn small_fields() {
        assert_eq!(f(3, 1).q(), 3);
        let f9 = FieldSpec::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.q(), 9);
        // x^2 + 1 has no root mod 3
        assert!((0..3u32).all(|x| (x * x + 1) % 3 != 0));
    }

    #[test]
    fn arith_examples() {
        let f3 = f(3, 1);
        assert_eq!(f3.add(Elem(1), Elem(2)), Elem(0));
        let f5 = f(5, 1);
        assert_eq!(f5.inv(Elem(2)), Ok(Elem(3)));
        assert_eq!(f5.inv(Elem(0)), Err(Error::DivisionByZero));
        let f9 = FieldSpec::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let x = Elem(3);
        assert_eq!(f9.mul(x, x), Elem(2));
        assert_eq!(f9.arith(ArithOp::Mul, x, 3), Ok(Elem(2)));
        assert_eq!(f9.arith(ArithOp::Pow, x, 2), Ok(Elem(2)));
        assert_eq!(f9.arith(ArithOp::Neg, Elem(1), 0), Ok(Elem(2)));
        assert_eq!(f9.arith(ArithOp::Inv, Elem(0), 0), Err(Error::DivisionByZero));
        assert!(f9.arith(ArithOp::Add, x, 9).is_err());
    }

    #[test]
    fn trace_examples() {
        for (p, k) in [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3)] {
            assert_eq!(f(p, k).trace(Elem::ZERO), 0);
        }
        assert_eq!(f(3, 1).trace(Elem(2)), 2);
        let f9 = FieldSpec::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.trace(Elem(1)), 2);
        // Tr(x) = x + x^3 = x - x = 0 when x^2 = -1
        assert_eq!(f9.trace(Elem(3)), 0);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(f(7, 1).eta(Elem(1)), 1);
        assert_eq!(f(7, 1).eta(Elem(3)), -1);
        assert_eq!(f(5, 1).eta(Elem(4)), 1);
        assert_eq!(f(5, 1).eta(Elem(0)), 0);
        assert_eq!(f(5, 1).eta_minus_one(), 1);
        assert_eq!(f(7, 1).eta_minus_one(), -1);
        assert_eq!(f(3, 2).eta_minus_one(), 1);
    }

    #[test]
    fn sqrt_minus_one_is_smallest() {
        assert_eq!(f(5, 1).sqrt_minus_one(), Some(Elem(2)));
        assert_eq!(f(13, 1).sqrt_minus_one(), Some(Elem(5)));
        assert_eq!(f(7, 1).sqrt_minus_one(), None);
        assert_eq!(f(3, 2).sqrt_minus_one(), Some(Elem(3)));
    }

    #[test]
    fn builtin_table_is_smallest_irreducible() {
        for &(p, k, m) in BUILTIN_MODULI {
            assert!(is_irreducible(m, p), "{p}^{k}");
            assert_eq!(smallest_irreducible(p, k), m, "{p}^{k}");
            assert!((p as u64).pow(k) <= 2401);
        }
        // every odd prime power q <= 2401 with k >= 2 is covered
        let covered = (3..=2401u64)
            .filter(|&p| is_prime(p))
            .flat_map(|p| (2..12u32).filter(move |&k| p.checked_pow(k).is_some_and(|v| v <= 2401)).map(move |k| (p, k)))
            .count();
        assert_eq!(covered, BUILTIN_MODULI.len());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (5, 2), (3, 3), (7, 2), (11, 2)] {
            let fl = f(p, k);
            assert!(fl.q() <= 121);
            let one = Elem::ONE;
            for x in fl.units() {
                assert_eq!(fl.mul(x, fl.inv(x).unwrap()), one);
                assert_eq!(fl.pow(x, fl.q() as u64 - 1), one);
            }
            for x in fl.elements() {
                assert_eq!(fl.add(x, fl.neg(x)), Elem::ZERO);
                for y in fl.elements() {
                    assert_eq!(fl.add(x, y), fl.add(y, x));
                    assert_eq!(fl.mul(x, y), fl.mul(y, x));
                    assert_eq!(
                        fl.trace(fl.add(x, y)),
                        (fl.trace(x) + fl.trace(y)) % fl.p()
                    );
                    assert_eq!(fl.mul(x, y), Elem(fl.slow_mul(x.0, y.0)));
                    if !x.is_zero() && !y.is_zero() {
                        assert_eq!(fl.eta(fl.mul(x, y)), fl.eta(x) * fl.eta(y));
                    }
                }
            }
            let squares = fl.units().filter(|&x| fl.eta(x) == 1).count();
            assert_eq!(squares, (fl.q() as usize - 1) / 2);
        }
    }

    #[test]
    fn distributive_spot_check() {
        let fl = f(3, 3);
        for a in fl.elements() {
            for b in fl.elements().step_by(5) {
                for c in fl.elements().step_by(7) {
                    assert_eq!(
                        fl.mul(a, fl.add(b, c)),
                        fl.add(fl.mul(a, b), fl.mul(a, c))
                    );
                }
            }
        }
    }
}
