//! Ordinals below ω^ω in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents and non-zero coefficients, so structural
//! equality is ordinal equality. Textual form uses `w` for ω:
//! `w^2*3+w+4`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("Overflow: result does not fit the ordinal representation")]
    Overflow,
    #[error("NotLimit: {0} is a successor ordinal")]
    NotLimit(Ordinal),
    #[error("SyntaxError at column {column}: {message}")]
    Syntax { column: usize, message: String },
}

impl OrdinalError {
    pub fn name(&self) -> &'static str {
        match self {
            OrdinalError::Overflow => "Overflow",
            OrdinalError::NotLimit(_) => "NotLimit",
            OrdinalError::Syntax { .. } => "SyntaxError",
        }
    }
}

/// Zero, successor (carrying the predecessor) or limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdinalClass {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(u32, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(0, n)],
            }
        }
    }

    /// ω^e.
    pub fn omega_pow(e: u32) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// Builds an ordinal from CNF terms, rejecting non-canonical input.
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<Self, OrdinalError> {
        for (i, &(e, c)) in terms.iter().enumerate() {
            if c == 0 {
                return Err(OrdinalError::Syntax {
                    column: i + 1,
                    message: "zero coefficient".into(),
                });
            }
            if i > 0 && terms[i - 1].0 <= e {
                return Err(OrdinalError::Syntax {
                    column: i + 1,
                    message: "exponents must strictly decrease".into(),
                });
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(&(0, _)))
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(&(e, _)) if e > 0)
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }

    /// Exponent of the last CNF term; `None` for zero.
    pub fn trailing_exponent(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0)
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn classify(&self) -> OrdinalClass {
        match self.terms.last() {
            None => OrdinalClass::Zero,
            Some(&(0, c)) => {
                let mut terms = self.terms.clone();
                if c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 = c - 1;
                }
                OrdinalClass::Successor(Ordinal { terms })
            }
            Some(_) => OrdinalClass::Limit,
        }
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        match self.classify() {
            OrdinalClass::Successor(p) => Some(p),
            _ => None,
        }
    }

    /// Ordinal sum `self + rhs`; terms of `self` below the leading exponent
    /// of `rhs` are absorbed.
    pub fn try_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(&(lead, lead_coeff)) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<(u32, u64)> = self
            .terms
            .iter()
            .copied()
            .take_while(|&(e, _)| e >= lead)
            .collect();
        match terms.last_mut() {
            Some(last) if last.0 == lead => {
                last.1 = last
                    .1
                    .checked_add(lead_coeff)
                    .ok_or(OrdinalError::Overflow)?;
                terms.extend_from_slice(&rhs.terms[1..]);
            }
            _ => terms.extend_from_slice(&rhs.terms),
        }
        Ok(Ordinal { terms })
    }

    pub fn succ(&self) -> Result<Ordinal, OrdinalError> {
        self.try_add(&Ordinal::one())
    }

    /// The unique `b` with `ω·b = self`. Defined for zero and limits.
    pub fn divide_by_omega(&self) -> Result<Ordinal, OrdinalError> {
        if self.is_successor() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        Ok(Ordinal {
            terms: self.terms.iter().map(|&(e, c)| (e - 1, c)).collect(),
        })
    }

    /// `ω^m · self`, i.e. every exponent raised by `m`.
    pub fn mul_omega_pow(&self, m: u32) -> Result<Ordinal, OrdinalError> {
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| e.checked_add(m).map(|e| (e, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(OrdinalError::Overflow)?;
        Ok(Ordinal { terms })
    }

    /// Splits `self = ω^m · quotient + remainder` with `remainder < ω^m`.
    pub fn div_rem_omega_pow(&self, m: u32) -> (Ordinal, Ordinal) {
        let split = self.terms.partition_point(|&(e, _)| e >= m);
        let quotient = self.terms[..split]
            .iter()
            .map(|&(e, c)| (e - m, c))
            .collect();
        let remainder = self.terms[split..].to_vec();
        (Ordinal { terms: quotient }, Ordinal { terms: remainder })
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Scanner<'_> {
    fn error(&self, message: impl Into<String>) -> OrdinalError {
        OrdinalError::Syntax {
            column: self.offset + self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat<T: FromStr>(&mut self) -> Result<T, OrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().map_err(|_| OrdinalError::Syntax {
            column: self.offset + start + 1,
            message: format!("number `{text}` out of range"),
        })
    }

    fn term(&mut self) -> Result<(u32, u64), OrdinalError> {
        let start = self.pos;
        if self.eat(b'w') {
            let exponent = if self.eat(b'^') {
                let at = self.pos;
                let e: u32 = self.nat()?;
                if e == 0 {
                    self.pos = at;
                    return Err(self.error("exponent 0 is written as a plain number"));
                }
                e
            } else {
                1
            };
            let coefficient = if self.eat(b'*') {
                let at = self.pos;
                let c: u64 = self.nat()?;
                if c == 0 {
                    self.pos = at;
                    return Err(self.error("zero coefficient"));
                }
                c
            } else {
                1
            };
            Ok((exponent, coefficient))
        } else {
            let c: u64 = self.nat()?;
            if c == 0 {
                self.pos = start;
                return Err(self.error("zero term inside a sum"));
            }
            Ok((0, c))
        }
    }
}

/// Parses an ordinal, reporting columns relative to `offset` (used when the
/// ordinal is embedded in a larger literal).
pub(crate) fn parse_at(text: &str, offset: usize) -> Result<Ordinal, OrdinalError> {
    let mut sc = Scanner {
        bytes: text.as_bytes(),
        pos: 0,
        offset,
    };
    if text == "0" {
        return Ok(Ordinal::zero());
    }
    let mut terms: Vec<(u32, u64)> = Vec::new();
    loop {
        let start = sc.pos;
        let term = sc.term()?;
        if let Some(&(prev, _)) = terms.last() {
            if prev <= term.0 {
                sc.pos = start;
                return Err(sc.error("non-canonical: exponents must strictly decrease"));
            }
        }
        terms.push(term);
        if sc.peek().is_none() {
            break;
        }
        if !sc.eat(b'+') {
            return Err(sc.error("expected `+`"));
        }
    }
    Ok(Ordinal { terms })
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_at(s.trim(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Lexicographic comparison on (exponent, coefficient) pairs, written out
    /// independently of the `Ord` impl.
    fn cnf_oracle_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
        let pad = |x: &Ordinal| {
            let mut v: Vec<(i64, u64)> = x.terms().iter().map(|&(e, c)| (e as i64, c)).collect();
            v.resize(8, (-1, 0));
            v
        };
        pad(a).cmp(&pad(b))
    }

    #[test]
    fn compare_examples() {
        assert_eq!(o("w").cmp(&o("5")), Ordering::Greater);
        assert_eq!(o("w*2+1").cmp(&o("w*2+1")), Ordering::Equal);
        assert_eq!(o("w^2").cmp(&o("w*9+7")), Ordering::Greater);
        assert_eq!(cnf_oracle_cmp(&o("w^2"), &o("w*9+7")), Ordering::Greater);
    }

    /// Order type of a concatenation, computed on a materialised prefix:
    /// an ordinal `ω·a + n` (a, n finite) is a list of `a` copies of ω
    /// followed by `n` points. Appending another such list and re-reading
    /// the shape gives the sum.
    fn concat_oracle(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        // blocks: each ω-block is "infinite", trailing points are a finite tail
        let mut blocks = a.0;
        let mut tail = a.1;
        if b.0 > 0 {
            // the finite tail of `a` is swallowed by the first ω-block of `b`
            tail = 0;
            blocks += b.0;
        }
        tail += b.1;
        (blocks, tail)
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("1").try_add(&o("w")).unwrap(), o("w"));
        assert_eq!(o("w").try_add(&o("1")).unwrap(), o("w+1"));
        assert_eq!(concat_oracle((2, 3), (1, 0)), (3, 0));
        assert_eq!(o("w*2+3").try_add(&o("w")).unwrap(), o("w*3"));
    }

    #[test]
    fn add_overflow() {
        let big = Ordinal::nat(u64::MAX);
        assert_eq!(big.try_add(&o("1")), Err(OrdinalError::Overflow));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(o("0").classify(), OrdinalClass::Zero);
        assert_eq!(o("w+4").classify(), OrdinalClass::Successor(o("w+3")));
        assert_eq!(o("w^2*3").classify(), OrdinalClass::Limit);
    }

    #[test]
    fn divide_by_omega_examples() {
        assert_eq!(o("w").divide_by_omega().unwrap(), o("1"));
        let b = o("w^2*2+w*5").divide_by_omega().unwrap();
        assert_eq!(b, o("w*2+5"));
        assert_eq!(b.mul_omega_pow(1).unwrap(), o("w^2*2+w*5"));
        assert_eq!(
            o("3").divide_by_omega(),
            Err(OrdinalError::NotLimit(o("3")))
        );
        assert_eq!(o("0").divide_by_omega().unwrap(), o("0"));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(
            o("w^2*3+w+4"),
            Ordinal::from_terms(vec![(2, 3), (1, 1), (0, 4)]).unwrap()
        );
        assert_eq!(o("0"), Ordinal::zero());
        assert_eq!(o("w*2").to_string(), "w*2");
        assert_eq!(o("w^1").to_string(), "w");
    }

    #[test]
    fn parse_errors_report_position() {
        match "w+w^2".parse::<Ordinal>() {
            Err(OrdinalError::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        match "w*".parse::<Ordinal>() {
            Err(OrdinalError::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!("w+w".parse::<Ordinal>().is_err());
        assert!("3+w".parse::<Ordinal>().is_err());
        assert!("w+0".parse::<Ordinal>().is_err());
        assert!("x".parse::<Ordinal>().is_err());
        assert!("".parse::<Ordinal>().is_err());
        assert!("w^0".parse::<Ordinal>().is_err());
    }

    #[test]
    fn div_rem() {
        let (q, r) = o("w^3*2+w^2+w*4+7").div_rem_omega_pow(2);
        assert_eq!(q, o("w*2+1"));
        assert_eq!(r, o("w*4+7"));
        let (q, r) = o("5").div_rem_omega_pow(0);
        assert_eq!((q, r), (o("5"), o("0")));
    }

    pub(crate) fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        proptest::collection::btree_map(0u32..5, 1u64..6, 0..4).prop_map(|m| {
            let terms = m.into_iter().rev().collect();
            Ordinal::from_terms(terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn compare_is_total_and_transitive(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.cmp(&b), cnf_oracle_cmp(&a, &b));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn add_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            let left = a.try_add(&b).unwrap().try_add(&c).unwrap();
            let right = a.try_add(&b.try_add(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn add_is_monotone_on_the_right(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            if b < c {
                prop_assert!(a.try_add(&b).unwrap() < a.try_add(&c).unwrap());
            }
            prop_assert!(a.try_add(&b).unwrap() >= a);
        }

        #[test]
        fn successor_classification(a in arb_ordinal()) {
            prop_assert_eq!(a.succ().unwrap().classify(), OrdinalClass::Successor(a));
        }

        #[test]
        fn divide_inverts_multiply(a in arb_ordinal(), m in 1u32..4) {
            let mut back = a.mul_omega_pow(m).unwrap();
            for _ in 0..m {
                back = back.divide_by_omega().unwrap();
            }
            prop_assert_eq!(back, a);
        }

        #[test]
        fn div_rem_recombines(a in arb_ordinal(), m in 0u32..5) {
            let (q, r) = a.div_rem_omega_pow(m);
            prop_assert!(r < Ordinal::omega_pow(m));
            prop_assert_eq!(q.mul_omega_pow(m).unwrap().try_add(&r).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }
    }
}
