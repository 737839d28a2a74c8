//! Commutative semirings used as coefficient rings.
//!
//! A [`Semiring`] is a *descriptor*: it owns whatever runtime data the
//! carrier needs (the modulus of GF(p), for instance) and performs the
//! arithmetic on plain element values. Carriers whose arithmetic needs no
//! runtime data implement [`Scalar`] on top of `num_traits::{Zero, One}`
//! and are lifted to descriptors through [`Numeric`].

use std::collections::BTreeSet;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Declared structural flags of a coefficient semiring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Flags {
    pub additively_idempotent: bool,
    pub semifield: bool,
    pub field: bool,
    pub boolean: bool,
}

/// Four-way tag consumed by the congruence-simpleness decider.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Field,
    Boolean,
    OtherSemifield,
    General,
}

impl Classification {
    pub fn is_semifield(self) -> bool {
        !matches!(self, Classification::General)
    }
}

impl Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Field => "field",
            Classification::Boolean => "boolean",
            Classification::OtherSemifield => "other_semifield",
            Classification::General => "general",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiringError {
    #[error("inconsistent semiring flags for {name}: {reason}")]
    InconsistentFlags { name: String, reason: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid scalar literal {literal:?} for {semiring}: {reason}")]
    BadLiteral {
        semiring: String,
        literal: String,
        reason: String,
    },
    #[error("unknown semiring {0:?} (expected boolean, nat, rational, tropical or gf:<p>)")]
    UnknownSemiring(String),
}

/// A commutative semiring descriptor.
pub trait Semiring: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse of a nonzero element, when it exists.
    fn inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn flags(&self) -> Flags;

    /// Finitely many distinct elements used for law checking.
    fn samples(&self) -> Vec<Self::Elem>;

    fn parse_scalar(&self, literal: &str) -> Result<Self::Elem, SemiringError>;

    fn format_scalar(&self, a: &Self::Elem) -> String;
}

/// Carrier types whose semiring structure is fixed at compile time.
pub trait Scalar:
    Zero + One + Add<Output = Self> + Mul<Output = Self> + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    const NAME: &'static str;

    fn flags() -> Flags;
    fn inverse(&self) -> Option<Self>;
    fn parse_literal(literal: &str) -> Result<Self, String>;
    fn samples() -> Vec<Self>;
}

/// Descriptor for any [`Scalar`] carrier.
pub struct Numeric<T>(PhantomData<fn() -> T>);

impl<T> Numeric<T> {
    pub const fn new() -> Self {
        Numeric(PhantomData)
    }
}

impl<T> Default for Numeric<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Numeric<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Numeric<T> {}

impl<T: Scalar> Debug for Numeric<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Numeric<{}>", T::NAME)
    }
}

impl<T: Scalar> Semiring for Numeric<T> {
    type Elem = T;

    fn name(&self) -> String {
        T::NAME.to_string()
    }
    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &T) -> Option<T> {
        a.inverse()
    }
    fn flags(&self) -> Flags {
        T::flags()
    }
    fn samples(&self) -> Vec<T> {
        T::samples()
    }
    fn parse_scalar(&self, literal: &str) -> Result<T, SemiringError> {
        T::parse_literal(literal.trim()).map_err(|reason| SemiringError::BadLiteral {
            semiring: T::NAME.to_string(),
            literal: literal.to_string(),
            reason,
        })
    }
    fn format_scalar(&self, a: &T) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Boolean semifield

/// Element of the Boolean semifield: `1 + 1 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bit(pub bool);

impl Add for Bit {
    type Output = Bit;
    fn add(self, rhs: Bit) -> Bit {
        Bit(self.0 || rhs.0)
    }
}

impl Mul for Bit {
    type Output = Bit;
    fn mul(self, rhs: Bit) -> Bit {
        Bit(self.0 && rhs.0)
    }
}

impl Zero for Bit {
    fn zero() -> Self {
        Bit(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Bit {
    fn one() -> Self {
        Bit(true)
    }
}

impl Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Scalar for Bit {
    const NAME: &'static str = "boolean";

    fn flags() -> Flags {
        Flags {
            additively_idempotent: true,
            semifield: true,
            field: false,
            boolean: true,
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn parse_literal(literal: &str) -> Result<Self, String> {
        match literal {
            "0" => Ok(Bit(false)),
            "1" => Ok(Bit(true)),
            _ => Err("expected 0 or 1".into()),
        }
    }
    fn samples() -> Vec<Self> {
        vec![Bit(false), Bit(true)]
    }
}

// ---------------------------------------------------------------------------
// Natural numbers

impl Scalar for BigUint {
    const NAME: &'static str = "nat";

    fn flags() -> Flags {
        Flags::default()
    }
    fn inverse(&self) -> Option<Self> {
        self.is_one().then(BigUint::one)
    }
    fn parse_literal(literal: &str) -> Result<Self, String> {
        if literal.is_empty() || !literal.bytes().all(|b| b.is_ascii_digit()) {
            return Err("expected a decimal natural number".into());
        }
        BigUint::from_str(literal).map_err(|e| e.to_string())
    }
    fn samples() -> Vec<Self> {
        [0u32, 1, 2, 3, 7].into_iter().map(BigUint::from).collect()
    }
}

// ---------------------------------------------------------------------------
// Rationals

impl Scalar for BigRational {
    const NAME: &'static str = "rational";

    fn flags() -> Flags {
        Flags {
            additively_idempotent: false,
            semifield: true,
            field: true,
            boolean: false,
        }
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn parse_literal(literal: &str) -> Result<Self, String> {
        parse_fraction(literal)
    }
    fn samples() -> Vec<Self> {
        [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 4), (5, 3)]
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect()
    }
}

/// Parses `a`, `-a`, `a/b` or a terminating decimal `a.b`.
fn parse_fraction(literal: &str) -> Result<BigRational, String> {
    let (neg, body) = match literal.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, literal),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err("expected a/b with decimal integers".into());
        }
        let den = BigInt::from_str(den).map_err(|e| e.to_string())?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        BigRational::new(BigInt::from_str(num).map_err(|e| e.to_string())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return Err("expected a decimal number".into());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let whole = BigInt::from_str(&format!("{int}{frac}")).map_err(|e| e.to_string())?;
        BigRational::new(whole, scale)
    } else {
        if !digits(body) {
            return Err("expected an integer, a/b or a decimal".into());
        }
        BigRational::from_integer(BigInt::from_str(body).map_err(|e| e.to_string())?)
    };
    Ok(if neg { -value } else { value })
}

// ---------------------------------------------------------------------------
// Tropical (max, +) semifield with exact rational carrier

/// Element of the max-plus semifield. `MaxPlus(None)` is −∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MaxPlus(pub Option<BigRational>);

impl MaxPlus {
    pub fn finite(value: BigRational) -> Self {
        MaxPlus(Some(value))
    }

    pub fn from_integer(value: i64) -> Self {
        MaxPlus(Some(BigRational::from_integer(BigInt::from(value))))
    }

    pub fn neg_infinity() -> Self {
        MaxPlus(None)
    }
}

impl Add for MaxPlus {
    type Output = MaxPlus;
    fn add(self, rhs: MaxPlus) -> MaxPlus {
        std::cmp::max(self, rhs)
    }
}

impl Mul for MaxPlus {
    type Output = MaxPlus;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: MaxPlus) -> MaxPlus {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => MaxPlus(Some(a + b)),
            _ => MaxPlus(None),
        }
    }
}

impl Zero for MaxPlus {
    fn zero() -> Self {
        MaxPlus(None)
    }
    fn is_zero(&self) -> bool {
        self.0.is_none()
    }
}

impl One for MaxPlus {
    fn one() -> Self {
        MaxPlus(Some(BigRational::zero()))
    }
}

impl Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("-inf"),
            Some(q) => f.write_str(&format_decimal(q)),
        }
    }
}

/// Exact decimal rendering when the denominator is of the form 2^a·5^b,
/// `a/b` otherwise.
fn format_decimal(q: &BigRational) -> String {
    if q.is_integer() {
        return q.to_integer().to_string();
    }
    let mut den = q.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = (q * BigRational::from_integer(BigInt::from(10u32).pow(places))).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{:0>width$}", digits, width = places as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

impl Scalar for MaxPlus {
    const NAME: &'static str = "tropical";

    fn flags() -> Flags {
        Flags {
            additively_idempotent: true,
            semifield: true,
            field: false,
            boolean: false,
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.0.as_ref().map(|q| MaxPlus(Some(-q.clone())))
    }
    fn parse_literal(literal: &str) -> Result<Self, String> {
        if literal == "-inf" {
            return Ok(MaxPlus(None));
        }
        parse_fraction(literal).map(|q| MaxPlus(Some(q)))
    }
    fn samples() -> Vec<Self> {
        vec![
            MaxPlus(None),
            MaxPlus::from_integer(0),
            MaxPlus::from_integer(1),
            MaxPlus(Some(BigRational::new(5.into(), 2.into()))),
            MaxPlus(Some(BigRational::new((-3).into(), 2.into()))),
        ]
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// GF(p) for a prime `p` checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, SemiringError> {
        if !is_prime(p) {
            return Err(SemiringError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 1;
        let mut b = base as u128 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u64
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Semiring for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("gf:{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (!(*a).is_multiple_of(self.p)).then(|| self.pow(*a, self.p - 2))
    }
    fn flags(&self) -> Flags {
        Flags {
            additively_idempotent: false,
            semifield: true,
            field: true,
            boolean: false,
        }
    }
    fn samples(&self) -> Vec<u64> {
        if self.p <= 7 {
            (0..self.p).collect()
        } else {
            let set: BTreeSet<u64> = [0, 1, 2, 3, self.p / 2, self.p - 2, self.p - 1].into_iter().collect();
            set.into_iter().collect()
        }
    }
    fn parse_scalar(&self, literal: &str) -> Result<u64, SemiringError> {
        let literal = literal.trim();
        let value = BigInt::from_str(literal)
            .ok()
            .filter(|_| {
                let body = literal.strip_prefix('-').unwrap_or(literal);
                !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
            })
            .ok_or_else(|| SemiringError::BadLiteral {
                semiring: self.name(),
                literal: literal.to_string(),
                reason: "expected an integer".into(),
            })?;
        let reduced = value.mod_floor(&BigInt::from(self.p));
        Ok(u64::try_from(reduced).expect("residue fits the modulus"))
    }
    fn format_scalar(&self, a: &u64) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Law checking and classification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    AddCommutative,
    AddAssociative,
    AddIdentity,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
    MultiplicativeInverse,
    IdempotenceFlag,
}

/// A failed law instance with the tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<E> {
    pub law: Law,
    pub witness: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<E> {
    pub violations: Vec<Violation<E>>,
}

impl<E> AxiomReport<E> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

/// Exhaustively checks every unary, binary and ternary law instance over
/// `samples`. Violations are collected, never raised.
pub fn check_axioms<S: Semiring>(s: &S, samples: &[S::Elem]) -> AxiomReport<S::Elem> {
    let mut violations = Vec::new();
    let mut fail = |law, witness: &[&S::Elem]| {
        violations.push(Violation {
            law,
            witness: witness.iter().map(|e| (*e).clone()).collect(),
        })
    };
    let zero = s.zero();
    let one = s.one();
    let flags = s.flags();

    for a in samples {
        if s.add(a, &zero) != *a || s.add(&zero, a) != *a {
            fail(Law::AddIdentity, &[a]);
        }
        if s.mul(a, &one) != *a || s.mul(&one, a) != *a {
            fail(Law::MulIdentity, &[a]);
        }
        if !s.is_zero(&s.mul(a, &zero)) || !s.is_zero(&s.mul(&zero, a)) {
            fail(Law::ZeroAnnihilates, &[a]);
        }
        if flags.additively_idempotent && s.add(a, a) != *a {
            fail(Law::IdempotenceFlag, &[a]);
        }
        if flags.semifield && !s.is_zero(a) {
            match s.inv(a) {
                Some(i) if s.mul(a, &i) == one => {}
                _ => fail(Law::MultiplicativeInverse, &[a]),
            }
        }
        for b in samples {
            if s.add(a, b) != s.add(b, a) {
                fail(Law::AddCommutative, &[a, b]);
            }
            if s.mul(a, b) != s.mul(b, a) {
                fail(Law::MulCommutative, &[a, b]);
            }
            for c in samples {
                if s.add(&s.add(a, b), c) != s.add(a, &s.add(b, c)) {
                    fail(Law::AddAssociative, &[a, b, c]);
                }
                if s.mul(&s.mul(a, b), c) != s.mul(a, &s.mul(b, c)) {
                    fail(Law::MulAssociative, &[a, b, c]);
                }
                if s.mul(a, &s.add(b, c)) != s.add(&s.mul(a, b), &s.mul(a, c)) {
                    fail(Law::LeftDistributive, &[a, b, c]);
                }
                if s.mul(&s.add(a, b), c) != s.add(&s.mul(a, c), &s.mul(b, c)) {
                    fail(Law::RightDistributive, &[a, b, c]);
                }
            }
        }
    }
    if !flags.additively_idempotent && !samples.is_empty() && samples.iter().all(|a| s.add(a, a) == *a) {
        fail(Law::IdempotenceFlag, &[]);
    }
    AxiomReport { violations }
}

/// Folds the declared flags into the four-way tag, rejecting inconsistent
/// declarations.
pub fn classify<S: Semiring>(s: &S) -> Result<Classification, SemiringError> {
    let f = s.flags();
    let bad = |reason: &str| SemiringError::InconsistentFlags {
        name: s.name(),
        reason: reason.to_string(),
    };
    if f.field && !f.semifield {
        return Err(bad("field without semifield"));
    }
    if f.field && (f.additively_idempotent || f.boolean) {
        return Err(bad("a field cannot be additively idempotent"));
    }
    if f.boolean {
        if !(f.semifield && f.additively_idempotent) {
            return Err(bad("boolean requires semifield and additive idempotency"));
        }
        let got: BTreeSet<_> = s.samples().into_iter().collect();
        let want: BTreeSet<_> = [s.zero(), s.one()].into_iter().collect();
        if got != want {
            return Err(bad("boolean sampler must yield exactly {0, 1}"));
        }
    }
    Ok(if f.field {
        Classification::Field
    } else if f.boolean {
        Classification::Boolean
    } else if f.semifield {
        Classification::OtherSemifield
    } else {
        Classification::General
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Booleans, Naturals, Rationals, Tropical};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[derive(Clone, Debug)]
    struct Subtraction;

    impl Semiring for Subtraction {
        type Elem = BigRational;
        fn name(&self) -> String {
            "subtraction".into()
        }
        fn zero(&self) -> BigRational {
            BigRational::zero()
        }
        fn one(&self) -> BigRational {
            BigRational::one()
        }
        fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a - b
        }
        fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a * b
        }
        fn flags(&self) -> Flags {
            Flags::default()
        }
        fn samples(&self) -> Vec<BigRational> {
            vec![q(0, 1), q(1, 1), q(2, 1)]
        }
        fn parse_scalar(&self, l: &str) -> Result<BigRational, SemiringError> {
            Rationals::new().parse_scalar(l)
        }
        fn format_scalar(&self, a: &BigRational) -> String {
            a.to_string()
        }
    }

    #[test]
    fn builtins_satisfy_all_laws() {
        assert!(check_axioms(&Booleans::new(), &Booleans::new().samples()).is_clean());
        assert!(check_axioms(&Naturals::new(), &Naturals::new().samples()).is_clean());
        assert!(check_axioms(&Rationals::new(), &Rationals::new().samples()).is_clean());
        assert!(check_axioms(&Tropical::new(), &Tropical::new().samples()).is_clean());
        for p in [2, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            assert!(check_axioms(&f, &f.samples()).is_clean(), "gf:{p}");
        }
    }

    #[test]
    fn tropical_named_samples_pass() {
        let t = Tropical::new();
        let samples = vec![
            MaxPlus::neg_infinity(),
            MaxPlus::from_integer(0),
            MaxPlus::from_integer(1),
            MaxPlus::finite(q(5, 2)),
        ];
        assert!(check_axioms(&t, &samples).is_clean());
    }

    #[test]
    fn subtraction_breaks_commutativity_at_one_two() {
        let report = check_axioms(&Subtraction, &Subtraction.samples());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == Law::AddCommutative && v.witness == vec![q(1, 1), q(2, 1)]));
    }

    #[test]
    fn classification_of_builtins() {
        assert_eq!(classify(&Booleans::new()).unwrap(), Classification::Boolean);
        assert_eq!(classify(&Tropical::new()).unwrap(), Classification::OtherSemifield);
        assert_eq!(classify(&Naturals::new()).unwrap(), Classification::General);
        assert_eq!(classify(&Rationals::new()).unwrap(), Classification::Field);
        assert_eq!(classify(&PrimeField::new(2).unwrap()).unwrap(), Classification::Field);
    }

    #[derive(Clone, Debug)]
    struct FieldOnly;

    impl Semiring for FieldOnly {
        type Elem = Bit;
        fn name(&self) -> String {
            "broken".into()
        }
        fn zero(&self) -> Bit {
            Bit(false)
        }
        fn one(&self) -> Bit {
            Bit(true)
        }
        fn add(&self, a: &Bit, b: &Bit) -> Bit {
            Bit(a.0 ^ b.0)
        }
        fn mul(&self, a: &Bit, b: &Bit) -> Bit {
            *a * *b
        }
        fn flags(&self) -> Flags {
            Flags {
                field: true,
                ..Flags::default()
            }
        }
        fn samples(&self) -> Vec<Bit> {
            Bit::samples()
        }
        fn parse_scalar(&self, l: &str) -> Result<Bit, SemiringError> {
            Booleans::new().parse_scalar(l)
        }
        fn format_scalar(&self, a: &Bit) -> String {
            a.to_string()
        }
    }

    #[test]
    fn field_without_semifield_is_a_configuration_error() {
        assert!(matches!(
            classify(&FieldOnly),
            Err(SemiringError::InconsistentFlags { .. })
        ));
    }

    #[test]
    fn gf_rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(SemiringError::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(SemiringError::NotPrime(1)));
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn literals() {
        let r = Rationals::new();
        assert_eq!(r.parse_scalar("2/3").unwrap(), q(2, 3));
        assert_eq!(r.parse_scalar("-4").unwrap(), q(-4, 1));
        assert!(r.parse_scalar("1/0").is_err());
        let t = Tropical::new();
        assert_eq!(t.parse_scalar("-inf").unwrap(), MaxPlus::neg_infinity());
        assert_eq!(t.parse_scalar("2.5").unwrap(), MaxPlus::finite(q(5, 2)));
        assert_eq!(t.format_scalar(&MaxPlus::finite(q(5, 2))), "2.5");
        assert_eq!(t.format_scalar(&MaxPlus::finite(q(-1, 8))), "-0.125");
        assert_eq!(t.format_scalar(&MaxPlus::finite(q(1, 3))), "1/3");
        let g = PrimeField::new(5).unwrap();
        assert_eq!(g.parse_scalar("7").unwrap(), 2);
        assert_eq!(g.parse_scalar("-1").unwrap(), 4);
        assert!(Naturals::new().parse_scalar("-1").is_err());
        assert!(Booleans::new().parse_scalar("2").is_err());
    }

    #[test]
    fn idempotency_flag_matches_behaviour() {
        fn agrees<S: Semiring>(s: &S) -> bool {
            let idem = s.samples().iter().all(|x| s.add(x, x) == *x);
            idem == s.flags().additively_idempotent
        }
        assert!(agrees(&Booleans::new()));
        assert!(agrees(&Naturals::new()));
        assert!(agrees(&Rationals::new()));
        assert!(agrees(&Tropical::new()));
        assert!(agrees(&PrimeField::new(3).unwrap()));
    }
}
