//! Grade-index monoids: naturals, pairs under several orders, weighted
//! naturals and ordinals below epsilon_0 with the natural (Hessenberg) sum.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinal below epsilon_0 in Cantor normal form.
///
/// `terms` holds `(exponent, coefficient)` with strictly decreasing exponents
/// and positive coefficients. The empty list is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCnf {
    terms: Vec<(OrdinalCnf, u64)>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        OrdinalCnf {
            terms: vec![(Self::zero(), n)],
        }
    }

    /// omega^e * c
    pub fn omega_pow(e: OrdinalCnf, c: u64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        OrdinalCnf { terms: vec![(e, c)] }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::finite(1), 1)
    }

    /// Builds from raw terms, rejecting anything that is not in normal form.
    pub fn from_terms(terms: Vec<(OrdinalCnf, u64)>) -> Result<Self> {
        for (i, (_, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::InvalidIndex("zero coefficient in CNF".into()));
            }
            if i > 0 && terms[i - 1].0.cmp(&terms[i].0) != Ordering::Greater {
                return Err(Error::InvalidIndex(
                    "CNF exponents must strictly decrease".into(),
                ));
            }
        }
        Ok(OrdinalCnf { terms })
    }

    pub fn terms(&self) -> &[(OrdinalCnf, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The finite value, if the ordinal is below omega.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Natural sum: align exponents and add coefficients.
    pub fn hessenberg_sum(&self, other: &OrdinalCnf) -> OrdinalCnf {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                match self.terms[i].0.cmp(&other.terms[j].0) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(other.terms[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = self.terms[i].1 + other.terms[j].1;
                        out.push((self.terms[i].0.clone(), c));
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        OrdinalCnf { terms: out }
    }

    /// Parses `w^2*3 + w*1 + 5`; exponents may be parenthesised ordinals.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = OrdParser {
            s: s.as_bytes(),
            pos: 0,
        };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!(
                "unexpected input at offset {} in ordinal {:?}",
                p.pos, s
            )));
        }
        Ok(v)
    }
}

impl Ord for OrdinalCnf {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                o => return o,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            match e.as_finite() {
                Some(1) => {}
                Some(k) => write!(f, "^{k}")?,
                None => write!(f, "^({e})")?,
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

struct OrdParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at offset {start}")));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| Error::Parse(format!("bad number: {e}")))
    }

    fn sum(&mut self) -> Result<OrdinalCnf> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        let terms: Vec<_> = terms.into_iter().filter(|t| t.1 > 0).collect();
        OrdinalCnf::from_terms(terms)
            .map_err(|_| Error::Parse("ordinal is not in Cantor normal form".into()))
    }

    fn term(&mut self) -> Result<(OrdinalCnf, u64)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        let e = self.sum()?;
                        if self.peek() != Some(b')') {
                            return Err(Error::Parse("missing ')'".into()));
                        }
                        self.pos += 1;
                        e
                    } else {
                        OrdinalCnf::finite(self.number()?)
                    }
                } else {
                    OrdinalCnf::finite(1)
                };
                let coef = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.number()?
                } else {
                    1
                };
                Ok((exp, coef))
            }
            Some(c) if c.is_ascii_digit() => Ok((OrdinalCnf::zero(), self.number()?)),
            _ => Err(Error::Parse(format!(
                "expected 'w' or a number at offset {}",
                self.pos
            ))),
        }
    }
}

/// Element of one of the shipped grading monoids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GradeIndex {
    Nat(u64),
    Pair(u64, u64),
    Ordinal(OrdinalCnf),
}

impl fmt::Display for GradeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeIndex::Nat(n) => write!(f, "{n}"),
            GradeIndex::Pair(m, n) => write!(f, "({m},{n})"),
            GradeIndex::Ordinal(o) => write!(f, "{o}"),
        }
    }
}

/// Order verdict. `Le` and `Ge` are strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Le,
    Ge,
    Eq,
    Incomparable,
}

impl Comparison {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Le,
            Ordering::Greater => Comparison::Ge,
            Ordering::Equal => Comparison::Eq,
        }
    }

    /// Non-strict `a <= b`.
    pub fn is_le(self) -> bool {
        matches!(self, Comparison::Le | Comparison::Eq)
    }
}

/// The monoids the engine is instantiated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoidInstance {
    N,
    N2Usual,
    N2Lex,
    /// Pairs compared by total degree: equal, or strictly smaller sum.
    N2Total,
    /// Pairs mapped to naturals through `wx*m + wy*n`; compared by weight.
    WeightedN { wx: u64, wy: u64 },
    Ordinal,
}

impl MonoidInstance {
    pub fn zero(&self) -> GradeIndex {
        match self {
            MonoidInstance::N => GradeIndex::Nat(0),
            MonoidInstance::Ordinal => GradeIndex::Ordinal(OrdinalCnf::zero()),
            _ => GradeIndex::Pair(0, 0),
        }
    }

    fn check(&self, a: &GradeIndex) -> Result<()> {
        let ok = matches!(
            (self, a),
            (MonoidInstance::N, GradeIndex::Nat(_))
                | (MonoidInstance::Ordinal, GradeIndex::Ordinal(_))
                | (MonoidInstance::N2Usual, GradeIndex::Pair(..))
                | (MonoidInstance::N2Lex, GradeIndex::Pair(..))
                | (MonoidInstance::N2Total, GradeIndex::Pair(..))
                | (MonoidInstance::WeightedN { .. }, GradeIndex::Pair(..))
        );
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!("{a} is not valid for {self:?}")))
        }
    }

    /// Weight of a pair under `WeightedN`.
    pub fn weight(&self, a: &GradeIndex) -> Option<u64> {
        match (self, a) {
            (MonoidInstance::WeightedN { wx, wy }, GradeIndex::Pair(m, n)) => Some(wx * m + wy * n),
            _ => None,
        }
    }
}

pub fn monoid_add(inst: MonoidInstance, a: &GradeIndex, b: &GradeIndex) -> Result<GradeIndex> {
    inst.check(a)?;
    inst.check(b)?;
    Ok(match (a, b) {
        (GradeIndex::Nat(x), GradeIndex::Nat(y)) => GradeIndex::Nat(x + y),
        (GradeIndex::Pair(a1, a2), GradeIndex::Pair(b1, b2)) => GradeIndex::Pair(a1 + b1, a2 + b2),
        (GradeIndex::Ordinal(x), GradeIndex::Ordinal(y)) => GradeIndex::Ordinal(x.hessenberg_sum(y)),
        _ => unreachable!(),
    })
}

pub fn monoid_leq(inst: MonoidInstance, a: &GradeIndex, b: &GradeIndex) -> Result<Comparison> {
    inst.check(a)?;
    inst.check(b)?;
    if a == b {
        return Ok(Comparison::Eq);
    }
    Ok(match (inst, a, b) {
        (_, GradeIndex::Nat(x), GradeIndex::Nat(y)) => Comparison::from_ordering(x.cmp(y)),
        (_, GradeIndex::Ordinal(x), GradeIndex::Ordinal(y)) => Comparison::from_ordering(x.cmp(y)),
        (MonoidInstance::N2Usual, GradeIndex::Pair(a1, a2), GradeIndex::Pair(b1, b2)) => {
            if a1 <= b1 && a2 <= b2 {
                Comparison::Le
            } else if a1 >= b1 && a2 >= b2 {
                Comparison::Ge
            } else {
                Comparison::Incomparable
            }
        }
        (MonoidInstance::N2Lex, GradeIndex::Pair(a1, a2), GradeIndex::Pair(b1, b2)) => {
            Comparison::from_ordering((a1, a2).cmp(&(b1, b2)))
        }
        (MonoidInstance::N2Total, GradeIndex::Pair(a1, a2), GradeIndex::Pair(b1, b2)) => {
            match (a1 + a2).cmp(&(b1 + b2)) {
                Ordering::Equal => Comparison::Incomparable,
                o => Comparison::from_ordering(o),
            }
        }
        (MonoidInstance::WeightedN { .. }, GradeIndex::Pair(..), GradeIndex::Pair(..)) => {
            let (wa, wb) = (inst.weight(a).unwrap(), inst.weight(b).unwrap());
            match wa.cmp(&wb) {
                Ordering::Equal => Comparison::Incomparable,
                o => Comparison::from_ordering(o),
            }
        }
        _ => unreachable!(),
    })
}

pub fn hessenberg_sum(a: &OrdinalCnf, b: &OrdinalCnf) -> OrdinalCnf {
    a.hessenberg_sum(b)
}

/// An ordered commutative monoid, abstract enough that tests can plug in
/// instances that are deliberately not good.
pub trait OrderedMonoid {
    type Elem: Clone + fmt::Display;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Comparison;
}

impl OrderedMonoid for MonoidInstance {
    type Elem = GradeIndex;

    fn zero(&self) -> GradeIndex {
        MonoidInstance::zero(self)
    }

    fn add(&self, a: &GradeIndex, b: &GradeIndex) -> GradeIndex {
        monoid_add(*self, a, b).expect("sample element of the wrong kind")
    }

    fn compare(&self, a: &GradeIndex, b: &GradeIndex) -> Comparison {
        monoid_leq(*self, a, b).expect("sample element of the wrong kind")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub elements: Vec<String>,
}

/// Checks the good-monoid axioms over all sample pairs and triples:
/// `0 <= a`, `a < b => a+c < b+c`, `a <= b => a+c <= b+c`.
pub fn check_good_axioms<M: OrderedMonoid>(inst: &M, sample: &[M::Elem]) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let zero = inst.zero();
    for a in sample {
        if !inst.compare(&zero, a).is_le() {
            out.push(AxiomViolation {
                axiom: "0 <= a".into(),
                elements: vec![a.to_string()],
            });
        }
    }
    for a in sample {
        for b in sample {
            let ab = inst.compare(a, b);
            if !ab.is_le() {
                continue;
            }
            for c in sample {
                let ac = inst.add(a, c);
                let bc = inst.add(b, c);
                let r = inst.compare(&ac, &bc);
                if ab == Comparison::Le && r != Comparison::Le {
                    out.push(AxiomViolation {
                        axiom: "a < b implies a+c < b+c".into(),
                        elements: vec![a.to_string(), b.to_string(), c.to_string()],
                    });
                }
                if !r.is_le() {
                    out.push(AxiomViolation {
                        axiom: "a <= b implies a+c <= b+c".into(),
                        elements: vec![a.to_string(), b.to_string(), c.to_string()],
                    });
                }
            }
        }
    }
    out
}

/// Filtration level index with entries allowed down to -1.
///
/// Entries below -1 are clamped on construction, since levels below -1
/// coincide with level -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtPair {
    pub m: i32,
    pub n: i32,
}

impl ExtPair {
    pub fn new(m: i32, n: i32) -> Self {
        ExtPair {
            m: m.max(-1),
            n: n.max(-1),
        }
    }

    pub fn total(&self) -> i32 {
        self.m + self.n
    }

    /// Componentwise order.
    pub fn le(&self, other: &ExtPair) -> bool {
        self.m <= other.m && self.n <= other.n
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = s.split(',');
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a.trim(), b.trim()),
            _ => return Err(Error::Parse(format!("expected m,n, got {s:?}"))),
        };
        let m = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {a:?}")))?;
        let n = b
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {b:?}")))?;
        Ok(ExtPair::new(m, n))
    }
}

impl fmt::Display for ExtPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OrdinalCnf {
        OrdinalCnf::parse(s).unwrap()
    }

    #[test]
    fn pair_addition() {
        let i = MonoidInstance::N2Usual;
        let r = monoid_add(i, &GradeIndex::Pair(1, 0), &GradeIndex::Pair(0, 1)).unwrap();
        assert_eq!(r, GradeIndex::Pair(1, 1));
        let r = monoid_add(i, &GradeIndex::Pair(0, 0), &GradeIndex::Pair(3, 2)).unwrap();
        assert_eq!(r, GradeIndex::Pair(3, 2));
        assert!(monoid_add(i, &GradeIndex::Nat(1), &GradeIndex::Pair(0, 1)).is_err());
    }

    #[test]
    fn ordinal_sums() {
        assert_eq!(hessenberg_sum(&w("w*2+3"), &w("w*1+4")), w("w*3+7"));
        assert_eq!(hessenberg_sum(&w("w*2+3"), &w("w*1+4")).to_string(), "w*3+7");
        assert_eq!(hessenberg_sum(&OrdinalCnf::zero(), &w("w^2+1")), w("w^2+1"));
        assert_eq!(
            hessenberg_sum(&w("w^2*1"), &w("w*3+1")).to_string(),
            "w^2+w*3+1"
        );
        assert_eq!(hessenberg_sum(&w("w"), &w("w")).to_string(), "w*2");
    }

    #[test]
    fn ordinal_parser_rejects_non_cnf() {
        assert!(OrdinalCnf::parse("w + w^2").is_err());
        assert!(OrdinalCnf::parse("3 + w").is_err());
        assert!(OrdinalCnf::parse("w*1 + w*2").is_err());
        assert!(OrdinalCnf::parse("w^(w+1)*2 + w^(w) + 7").is_ok());
        assert_eq!(w("w^(w+1)*2 + w^(w) + 7").to_string(), "w^(w+1)*2+w^(w)+7");
        assert_eq!(w("0"), OrdinalCnf::zero());
    }

    #[test]
    fn orders() {
        let u = MonoidInstance::N2Usual;
        let p = |a, b| GradeIndex::Pair(a, b);
        assert_eq!(monoid_leq(u, &p(1, 0), &p(1, 2)).unwrap(), Comparison::Le);
        assert_eq!(monoid_leq(u, &p(1, 0), &p(0, 1)).unwrap(), Comparison::Incomparable);
        let l = MonoidInstance::N2Lex;
        assert_eq!(monoid_leq(l, &p(0, 5), &p(1, 0)).unwrap(), Comparison::Le);
        let t = MonoidInstance::N2Total;
        assert_eq!(monoid_leq(t, &p(0, 1), &p(1, 1)).unwrap(), Comparison::Le);
        assert_eq!(monoid_leq(t, &p(2, 0), &p(1, 1)).unwrap(), Comparison::Incomparable);
        let o = MonoidInstance::Ordinal;
        let a = GradeIndex::Ordinal(w("w*2"));
        let b = GradeIndex::Ordinal(w("w^2"));
        assert_eq!(monoid_leq(o, &a, &b).unwrap(), Comparison::Le);
    }

    fn pairs() -> Vec<GradeIndex> {
        (0..=3)
            .flat_map(|a| (0..=3).map(move |b| GradeIndex::Pair(a, b)))
            .collect()
    }

    #[test]
    fn shipped_instances_are_good() {
        for inst in [
            MonoidInstance::N2Usual,
            MonoidInstance::N2Lex,
            MonoidInstance::N2Total,
            MonoidInstance::WeightedN { wx: 2, wy: 1 },
        ] {
            assert!(check_good_axioms(&inst, &pairs()).is_empty(), "{inst:?}");
        }
        let nats: Vec<_> = (0..6).map(GradeIndex::Nat).collect();
        assert!(check_good_axioms(&MonoidInstance::N, &nats).is_empty());
        let ords: Vec<_> = ["0", "1", "w", "w+3", "w^2*2+1", "w^(w)"]
            .iter()
            .map(|s| GradeIndex::Ordinal(w(s)))
            .collect();
        assert!(check_good_axioms(&MonoidInstance::Ordinal, &ords).is_empty());
    }

    struct Integers;
    impl OrderedMonoid for Integers {
        type Elem = i64;
        fn zero(&self) -> i64 {
            0
        }
        fn add(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn compare(&self, a: &i64, b: &i64) -> Comparison {
            Comparison::from_ordering(a.cmp(b))
        }
    }

    #[test]
    fn integers_are_not_good() {
        let rep = check_good_axioms(&Integers, &[-2, -1, 0, 1, 2]);
        assert!(rep.iter().any(|v| v.axiom == "0 <= a"));
    }

    #[test]
    fn ext_pair_clamps() {
        assert_eq!(ExtPair::new(-3, 2), ExtPair::new(-1, 2));
        assert_eq!(ExtPair::parse("2,-1").unwrap(), ExtPair { m: 2, n: -1 });
        assert_eq!(ExtPair::parse("(-5,0)").unwrap(), ExtPair { m: -1, n: 0 });
    }
}
