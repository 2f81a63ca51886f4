//! Truncated noncommutative power series over the integers and the Magnus
//! expansion `x_i -> 1 + X_i`, `y_j -> 1 + Y_j`.
//!
//! Series are stored densely over the monomials that fit under the bound, in
//! (length, lex) order with a child table for appending a symbol. Right
//! multiplication by a generator is then a single linear sweep. With unit
//! weights a monomial of length `d` sits at `offsets[d]` plus its base-`k`
//! value, which gives products a fast path.

// the kernels index several degree tables with one loop variable
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::words::{AlphabetSpec, FreeGroupAut, Word};

/// Homogeneous or mixed noncommutative polynomial: symbol sequence to
/// nonzero coefficient. Symbols are zero-based, x's first.
pub type Poly = BTreeMap<Vec<u8>, BigInt>;

/// Upper limit on dense slots per series.
pub const MAX_SLOTS: usize = 1 << 22;

/// Symbol weights for truncation; `(1,1)` is plain total degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Weights {
    pub wx: u32,
    pub wy: u32,
}

impl Weights {
    pub const UNIT: Weights = Weights { wx: 1, wy: 1 };
    pub const ALT: Weights = Weights { wx: 2, wy: 1 };

    pub fn new(wx: u32, wy: u32) -> Result<Self> {
        if wx == 0 || wy == 0 {
            return Err(Error::InvalidDegree("weights must be positive".into()));
        }
        Ok(Weights { wx, wy })
    }

    pub fn is_unit(&self) -> bool {
        self.wx == 1 && self.wy == 1
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected wx,wy, got {s:?}")))?;
        let p = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad weight {t:?}")))
        };
        Self::new(p(a)?, p(b)?)
    }
}

const NONE: u32 = u32::MAX;

/// Slot layout shared by all series with the same alphabet, bound and
/// weights. Slots enumerate the monomials of weight at most `bound` in
/// (length, lex) order, which is a breadth-first walk of the prefix trie.
#[derive(Debug)]
struct Shape {
    alpha: AlphabetSpec,
    bound: u32,
    weights: Weights,
    k: usize,
    maxlen: usize,
    /// First slot of each length block, with the total appended.
    offsets: Vec<usize>,
    /// Powers of `k`; with unit weights slot = offsets[d] + base-k value.
    pow: Vec<usize>,
    child: Vec<u32>,
    parent: Vec<u32>,
    len: Vec<u8>,
    last: Vec<u8>,
    xcount: Vec<u8>,
}

impl Shape {
    fn slots(&self) -> usize {
        self.len.len()
    }

    fn unit(&self) -> bool {
        self.weights.is_unit()
    }

    fn weight(&self, idx: usize) -> u32 {
        let xc = self.xcount[idx] as u32;
        self.weights.wx * xc + self.weights.wy * (self.len[idx] as u32 - xc)
    }

    fn child(&self, idx: usize, s: usize) -> Option<usize> {
        let c = self.child[idx * self.k + s];
        (c != NONE).then_some(c as usize)
    }

    fn symbols(&self, idx: usize) -> Vec<u8> {
        let mut out = vec![0u8; self.len[idx] as usize];
        let mut cur = idx;
        for t in (0..out.len()).rev() {
            out[t] = self.last[cur];
            cur = self.parent[cur] as usize;
        }
        out
    }

    fn index_of(&self, syms: &[u8]) -> Option<usize> {
        let mut cur = 0usize;
        for &s in syms {
            if s as usize >= self.k {
                return None;
            }
            cur = self.child(cur, s as usize)?;
        }
        Some(cur)
    }
}

type ShapeKey = (usize, usize, u32, Weights);

fn shape_for(alpha: &AlphabetSpec, bound: u32, weights: Weights) -> Result<Arc<Shape>> {
    static CACHE: OnceLock<Mutex<HashMap<ShapeKey, Arc<Shape>>>> = OnceLock::new();
    let key = (alpha.p, alpha.q, bound, weights);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let k = alpha.rank();
    let maxlen = (bound / weights.wx.min(weights.wy)) as usize;
    if maxlen > u8::MAX as usize {
        return Err(Error::TooLarge(format!("bound {bound} is too large")));
    }
    let too_large = || {
        Error::TooLarge(format!(
            "series over {k} symbols at bound {bound} exceeds {MAX_SLOTS} slots"
        ))
    };
    let sw = |s: usize| if s < alpha.p { weights.wx } else { weights.wy };
    let mut parent = vec![0u32];
    let mut len = vec![0u8];
    let mut last = vec![0u8];
    let mut xcount = vec![0u8];
    let mut wt = vec![0u32];
    let mut child: Vec<u32> = Vec::new();
    let mut idx = 0;
    while idx < len.len() {
        for s in 0..k {
            if wt[idx] + sw(s) > bound {
                child.push(NONE);
                continue;
            }
            let new = len.len();
            if new >= MAX_SLOTS {
                return Err(too_large());
            }
            child.push(new as u32);
            parent.push(idx as u32);
            len.push(len[idx] + 1);
            last.push(s as u8);
            xcount.push(xcount[idx] + u8::from(s < alpha.p));
            wt.push(wt[idx] + sw(s));
        }
        idx += 1;
    }
    let maxlen = *len.iter().max().unwrap() as usize;
    let mut offsets = vec![0usize; maxlen + 2];
    for d in 1..=maxlen + 1 {
        offsets[d] = len.partition_point(|&l| (l as usize) < d);
    }
    let mut pow = vec![1usize];
    for d in 0..=maxlen {
        pow.push(pow[d].saturating_mul(k));
    }
    let shape = Arc::new(Shape {
        alpha: *alpha,
        bound,
        weights,
        k,
        maxlen,
        offsets,
        pow,
        child,
        parent,
        len,
        last,
        xcount,
    });
    cache.lock().unwrap().insert(key, shape.clone());
    Ok(shape)
}

/// Monomial in the series symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn bidegree(&self, alpha: &AlphabetSpec) -> (usize, usize) {
        let xs = self.0.iter().filter(|&&s| (s as usize) < alpha.p).count();
        (xs, self.0.len() - xs)
    }

    pub fn display<'a>(&'a self, alpha: &'a AlphabetSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { m: &self.0, alpha }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a [u8],
    alpha: &'a AlphabetSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.m.len() {
            let mut j = i;
            while j < self.m.len() && self.m[j] == self.m[i] {
                j += 1;
            }
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", symbol_name(self.alpha, self.m[i]))?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

pub fn symbol_name(alpha: &AlphabetSpec, s: u8) -> String {
    let s = s as usize;
    if s < alpha.p {
        format!("X{}", s + 1)
    } else {
        format!("Y{}", s - alpha.p + 1)
    }
}

/// Formats a polynomial as `X1*Y1 - Y1*X1`, ordered by (degree, lex).
pub fn format_poly(alpha: &AlphabetSpec, p: &Poly) -> String {
    let mut keys: Vec<&Vec<u8>> = p.keys().collect();
    keys.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let terms: Vec<(String, BigInt)> = keys
        .into_iter()
        .map(|k| (Monomial(k.clone()).display(alpha).to_string(), p[k].clone()))
        .collect();
    format_terms(&terms)
}

pub(crate) fn format_terms(terms: &[(String, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (name, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if name == "1" {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(name);
        } else {
            s.push_str(&format!("{a}*{name}"));
        }
    }
    s
}

/// Parses `X1*Y1 - 2*Y1*X1 + X1^2`.
pub fn parse_poly(alpha: &AlphabetSpec, s: &str) -> Result<Poly> {
    let mut out = Poly::new();
    let cleaned = s.replace('-', " + -");
    for term in cleaned.split('+') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (neg, body) = match term.strip_prefix('-') {
            Some(r) => (true, r.trim()),
            None => (false, term),
        };
        let mut coef = BigInt::one();
        let mut syms = Vec::new();
        for f in body.split(|c: char| c == '*' || c.is_whitespace()) {
            if f.is_empty() {
                continue;
            }
            if f.chars().all(|c| c.is_ascii_digit()) {
                coef *= f
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {f:?}")))?;
                continue;
            }
            let (base, e) = match f.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
                ),
                None => (f, 1),
            };
            let bad = || Error::InvalidLetter(format!("unknown symbol {base:?}"));
            if base.len() < 2 {
                return Err(bad());
            }
            let idx: usize = base[1..].parse().map_err(|_| bad())?;
            let sym = match &base[..1] {
                "X" if idx >= 1 && idx <= alpha.p => idx - 1,
                "Y" if idx >= 1 && idx <= alpha.q => alpha.p + idx - 1,
                _ => return Err(bad()),
            };
            for _ in 0..e {
                syms.push(sym as u8);
            }
        }
        if neg {
            coef = -coef;
        }
        let e = out.entry(syms.clone()).or_insert_with(BigInt::zero);
        *e += coef;
        if e.is_zero() {
            out.remove(&syms);
        }
    }
    Ok(out)
}

/// Truncated series with integer coefficients.
#[derive(Clone)]
pub struct Series {
    shape: Arc<Shape>,
    c: Vec<Int>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.c == other.c
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

impl Series {
    pub fn zero(alpha: &AlphabetSpec, bound: u32, weights: Weights) -> Result<Self> {
        let shape = shape_for(alpha, bound, weights)?;
        let c = vec![Int::S(0); shape.slots()];
        Ok(Series { shape, c })
    }

    pub fn one(alpha: &AlphabetSpec, bound: u32, weights: Weights) -> Result<Self> {
        let mut s = Self::zero(alpha, bound, weights)?;
        s.c[0] = Int::one();
        Ok(s)
    }

    /// Series from explicit terms; terms beyond the bound are dropped.
    pub fn from_poly(alpha: &AlphabetSpec, bound: u32, weights: Weights, p: &Poly) -> Result<Self> {
        let mut s = Self::zero(alpha, bound, weights)?;
        for (k, v) in p {
            if k.iter().any(|&x| x as usize >= alpha.rank()) {
                return Err(Error::InvalidLetter(format!("symbol out of range in {k:?}")));
            }
            if let Some(idx) = s.shape.index_of(k) {
                s.c[idx] = Int::from_big(v.clone());
            }
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> &AlphabetSpec {
        &self.shape.alpha
    }

    pub fn bound(&self) -> u32 {
        self.shape.bound
    }

    pub fn weights(&self) -> Weights {
        self.shape.weights
    }

    fn same_shape(&self, o: &Series) -> bool {
        Arc::ptr_eq(&self.shape, &o.shape)
            || (self.shape.alpha == o.shape.alpha
                && self.shape.bound == o.shape.bound
                && self.shape.weights == o.shape.weights)
    }

    fn check_shape(&self, o: &Series) -> Result<()> {
        if self.same_shape(o) {
            Ok(())
        } else {
            Err(Error::BoundMismatch)
        }
    }

    pub fn coeff(&self, syms: &[u8]) -> BigInt {
        self.shape
            .index_of(syms)
            .map(|i| self.c[i].to_big())
            .unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.c[0].to_big()
    }

    /// Nonzero entries per length block, as block-local indices.
    fn nonzero_blocks(&self) -> Vec<Vec<(usize, &Int)>> {
        let sh = &self.shape;
        (0..=sh.maxlen)
            .map(|d| {
                let base = sh.offsets[d];
                self.c[base..sh.offsets[d + 1]]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        self.check_shape(o)?;
        let mut r = self.clone();
        for (a, b) in r.c.iter_mut().zip(o.c.iter()) {
            if !b.is_zero() {
                a.add_assign(b);
            }
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        self.check_shape(o)?;
        let mut r = self.clone();
        for (a, b) in r.c.iter_mut().zip(o.c.iter()) {
            if !b.is_zero() {
                a.sub_assign(b);
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> Series {
        let mut r = self.clone();
        for a in r.c.iter_mut() {
            if !a.is_zero() {
                *a = a.neg();
            }
        }
        r
    }

    /// `out[u.v] += a * b[v]` for every `v` that fits after `u`, optionally
    /// skipping the empty `v`.
    fn scatter(sh: &Shape, out: &mut [Int], u: usize, a: &Int, b: &[Int], skip_empty: bool) {
        let mut stack = vec![(u, 0usize)];
        while let Some((r, bp)) = stack.pop() {
            if !(skip_empty && bp == 0) && !b[bp].is_zero() {
                out[r].add_mul(a, &b[bp]);
            }
            for s in 0..sh.k {
                if let Some(nr) = sh.child(r, s) {
                    // a suffix never outweighs the whole word
                    let nb = sh.child(bp, s).expect("suffix fits");
                    stack.push((nr, nb));
                }
            }
        }
    }

    pub fn mul(&self, o: &Series) -> Result<Series> {
        self.check_shape(o)?;
        let sh = &self.shape;
        let mut out = vec![Int::S(0); sh.slots()];
        if sh.unit() {
            let an = self.nonzero_blocks();
            let bn = o.nonzero_blocks();
            for d1 in 0..=sh.maxlen {
                for &(i, a) in &an[d1] {
                    for d2 in 0..=(sh.maxlen - d1) {
                        let base = sh.offsets[d1 + d2] + i * sh.pow[d2];
                        for &(j, b) in &bn[d2] {
                            out[base + j].add_mul(a, b);
                        }
                    }
                }
            }
        } else {
            for (u, a) in self.c.iter().enumerate() {
                if !a.is_zero() {
                    Self::scatter(sh, &mut out, u, a, &o.c, false);
                }
            }
        }
        Ok(Series {
            shape: sh.clone(),
            c: out,
        })
    }

    /// Right multiplication by `1 + S` (or its inverse) for symbol `s`.
    pub fn mul_symbol_right(&mut self, s: usize, inverse: bool) {
        let sh = self.shape.clone();
        let step = |c: &mut Vec<Int>, idx: usize| {
            if c[idx].is_zero() {
                return;
            }
            if let Some(ch) = sh.child(idx, s) {
                let v = c[idx].clone();
                if inverse {
                    c[ch].sub_assign(&v);
                } else {
                    c[ch].add_assign(&v);
                }
            }
        };
        if !inverse {
            // children come later, so walk backwards to avoid reuse
            for idx in (0..sh.slots()).rev() {
                step(&mut self.c, idx);
            }
        } else {
            // T = S - T*X, forwards so each slot is final before use
            for idx in 0..sh.slots() {
                step(&mut self.c, idx);
            }
        }
    }

    /// Right multiplication by the expansion of one signed letter.
    pub fn mul_letter_right(&mut self, l: i32) {
        let s = self.shape.alpha.symbol(l);
        self.mul_symbol_right(s, l < 0);
    }

    /// Multiplicative inverse; the constant term must be 1.
    pub fn inverse(&self) -> Result<Series> {
        if self.c[0] != Int::one() {
            return Err(Error::InvalidDegree("inverse needs constant term 1".into()));
        }
        let sh = &self.shape;
        let mut t = vec![Int::S(0); sh.slots()];
        t[0] = Int::one();
        if sh.unit() {
            let sn = self.nonzero_blocks();
            for d in 1..=sh.maxlen {
                for e in 1..=d {
                    let dt = d - e;
                    for lt in 0..sh.pow[dt] {
                        let ti = sh.offsets[dt] + lt;
                        if t[ti].is_zero() {
                            continue;
                        }
                        let tv = t[ti].neg();
                        let base = sh.offsets[d] + lt * sh.pow[e];
                        for &(j, b) in &sn[e] {
                            t[base + j].add_mul(&tv, b);
                        }
                    }
                }
            }
        } else {
            // T[u] is final once every proper prefix of u has scattered
            for u in 0..sh.slots() {
                if t[u].is_zero() {
                    continue;
                }
                let tv = t[u].neg();
                let mut out = std::mem::take(&mut t);
                Self::scatter(sh, &mut out, u, &tv, &self.c, true);
                t = out;
            }
        }
        Ok(Series {
            shape: sh.clone(),
            c: t,
        })
    }

    /// The same series truncated at a smaller bound.
    pub fn truncate(&self, bound: u32) -> Result<Series> {
        if bound > self.shape.bound {
            return Err(Error::BoundExceeded {
                degree: bound,
                bound: self.shape.bound,
            });
        }
        let mut r = Series::zero(&self.shape.alpha, bound, self.shape.weights)?;
        for dst in 0..r.shape.slots() {
            let src = self
                .shape
                .index_of(&r.shape.symbols(dst))
                .expect("smaller bound embeds");
            r.c[dst] = self.c[src].clone();
        }
        Ok(r)
    }

    /// Nonzero terms sorted by (weighted degree, length, lexicographic).
    pub fn terms(&self) -> Vec<(Monomial, BigInt)> {
        let sh = &self.shape;
        let mut v: Vec<(u32, usize)> = (0..sh.slots())
            .filter(|&i| !self.c[i].is_zero())
            .map(|i| (sh.weight(i), i))
            .collect();
        v.sort();
        v.into_iter()
            .map(|(_, idx)| (Monomial(sh.symbols(idx)), self.c[idx].to_big()))
            .collect()
    }

    /// Homogeneous bidegree-(m,n) part; empty for (0,0).
    pub fn bidegree_part(&self, m: usize, n: usize) -> Result<Poly> {
        let sh = &self.shape;
        let d = m + n;
        let deg = sh.weights.wx * m as u32 + sh.weights.wy * n as u32;
        if deg > sh.bound {
            return Err(Error::BoundExceeded {
                degree: deg,
                bound: sh.bound,
            });
        }
        let mut out = Poly::new();
        if d == 0 {
            return Ok(out);
        }
        for idx in sh.offsets[d]..sh.offsets[d + 1] {
            if sh.xcount[idx] as usize == m && !self.c[idx].is_zero() {
                out.insert(sh.symbols(idx), self.c[idx].to_big());
            }
        }
        Ok(out)
    }

    /// All terms of weighted degree exactly `w`.
    pub fn weight_part(&self, w: u32) -> Result<Poly> {
        let sh = &self.shape;
        if w > sh.bound {
            return Err(Error::BoundExceeded {
                degree: w,
                bound: sh.bound,
            });
        }
        let mut out = Poly::new();
        if w == 0 {
            return Ok(out);
        }
        for idx in 1..sh.slots() {
            if !self.c[idx].is_zero() && sh.weight(idx) == w {
                out.insert(sh.symbols(idx), self.c[idx].to_big());
            }
        }
        Ok(out)
    }

    /// First nonconstant term (by length, then lex) whose bidegree is not
    /// componentwise at least `(m,n)`.
    pub fn first_violation(&self, m: usize, n: usize) -> Option<(Monomial, BigInt)> {
        let sh = &self.shape;
        (1..sh.slots())
            .find(|&idx| {
                let xc = sh.xcount[idx] as usize;
                !self.c[idx].is_zero() && (xc < m || sh.len[idx] as usize - xc < n)
            })
            .map(|idx| (Monomial(sh.symbols(idx)), self.c[idx].to_big()))
    }

    /// Bidegrees `(x count, y count)` carrying a nonzero nonconstant term.
    pub fn support_bidegrees(&self) -> Vec<(usize, usize)> {
        let sh = &self.shape;
        let mut seen = std::collections::BTreeSet::new();
        for idx in 1..sh.slots() {
            if !self.c[idx].is_zero() {
                let xc = sh.xcount[idx] as usize;
                seen.insert((xc, sh.len[idx] as usize - xc));
            }
        }
        seen.into_iter().collect()
    }

    /// Smallest weighted degree of a nonconstant term, if any.
    pub fn min_weight(&self) -> Option<u32> {
        let sh = &self.shape;
        (1..sh.slots())
            .filter(|&idx| !self.c[idx].is_zero())
            .map(|idx| sh.weight(idx))
            .min()
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == Int::one() && self.c[1..].iter().all(Int::is_zero)
    }

    /// Substitutes `S -> images[S] - 1` for every symbol. Each image must
    /// have constant term 1, so the result is exact up to the bound.
    pub fn substitute(&self, images: &[Series]) -> Result<Series> {
        let sh = &self.shape;
        if images.len() != sh.k {
            return Err(Error::InvalidIndex(format!(
                "expected {} images, got {}",
                sh.k,
                images.len()
            )));
        }
        let mut deltas = Vec::with_capacity(sh.k);
        for im in images {
            self.check_shape(im)?;
            if im.c[0] != Int::one() {
                return Err(Error::InvalidDegree("images need constant term 1".into()));
            }
            let mut d = im.clone();
            d.c[0] = Int::S(0);
            deltas.push(d);
        }
        // prefix products along the trie; a subtree with no coefficients
        // contributes nothing and is skipped
        let mut live = vec![false; sh.slots()];
        for idx in (0..sh.slots()).rev() {
            if !self.c[idx].is_zero() {
                live[idx] = true;
            }
            if live[idx] && idx > 0 {
                live[sh.parent[idx] as usize] = true;
            }
        }
        let mut out = Series::zero(&sh.alpha, sh.bound, sh.weights)?;
        let mut stack = vec![(0usize, Series::one(&sh.alpha, sh.bound, sh.weights)?)];
        while let Some((idx, prod)) = stack.pop() {
            if !self.c[idx].is_zero() {
                for (o, p) in out.c.iter_mut().zip(prod.c.iter()) {
                    if !p.is_zero() {
                        o.add_mul(&self.c[idx], p);
                    }
                }
            }
            for s in 0..sh.k {
                if let Some(ch) = sh.child(idx, s) {
                    if live[ch] {
                        stack.push((ch, prod.mul(&deltas[s])?));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha = self.shape.alpha;
        let terms: Vec<(String, BigInt)> = self
            .terms()
            .into_iter()
            .map(|(m, c)| (m.display(&alpha).to_string(), c))
            .collect();
        write!(f, "{}", format_terms(&terms))
    }
}

/// Magnus expansion of a word, truncated at `bound`.
pub fn magnus_expand(alpha: &AlphabetSpec, w: &Word, bound: u32, weights: Weights) -> Result<Series> {
    let mut s = Series::one(alpha, bound, weights)?;
    for &l in w.letters() {
        alpha.check(l)?;
        s.mul_letter_right(l);
    }
    Ok(s)
}

/// Bidegree-(m,n) homogeneous part of the expansion of `w`.
pub fn delta_component(alpha: &AlphabetSpec, w: &Word, mn: (usize, usize), bound: u32) -> Result<Poly> {
    let (m, n) = mn;
    if (m + n) as u32 > bound {
        return Err(Error::BoundExceeded {
            degree: (m + n) as u32,
            bound,
        });
    }
    magnus_expand(alpha, w, bound, Weights::UNIT)?.bidegree_part(m, n)
}

/// Outcome of the dimension-filtration membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// Every nonconstant term up to `bound` has bidegree at least the target.
    Verified { bound: u32 },
    /// A term of too-small bidegree; a sound certificate of non-membership.
    Refuted { witness: Monomial, coeff: BigInt },
}

impl MembershipVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, MembershipVerdict::Verified { .. })
    }
}

pub fn series_membership(s: &Series, mn: (usize, usize)) -> MembershipVerdict {
    match s.first_violation(mn.0, mn.1) {
        None => MembershipVerdict::Verified { bound: s.bound() },
        Some((witness, coeff)) => MembershipVerdict::Refuted { witness, coeff },
    }
}

pub fn dmn_membership(alpha: &AlphabetSpec, w: &Word, mn: (usize, usize), bound: u32) -> Result<MembershipVerdict> {
    if ((mn.0 + mn.1) as u32) > bound {
        return Err(Error::BoundExceeded {
            degree: (mn.0 + mn.1) as u32,
            bound,
        });
    }
    let s = magnus_expand(alpha, w, bound, Weights::UNIT)?;
    Ok(series_membership(&s, mn))
}

/// Exact membership in the k-th lower central term.
pub fn gamma_membership(alpha: &AlphabetSpec, w: &Word, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidDegree("k must be at least 1".into()));
    }
    if k == 1 || w.is_empty() {
        return Ok(true);
    }
    Ok(magnus_expand(alpha, w, k - 1, Weights::UNIT)?.is_one())
}

/// Least weighted degree of a nonconstant term of the expansion, `None`
/// when there is none up to the bound.
pub fn weighted_filtration_level(alpha: &AlphabetSpec, w: &Word, weights: Weights, bound: u32) -> Result<Option<u32>> {
    Ok(magnus_expand(alpha, w, bound, weights)?.min_weight())
}

/// Expansions of the generator images of an automorphism, so that
/// expansions of `h(w)` for many short `w` reuse one set of products. It can
/// also be composed directly at the series level, which is exact up to the
/// bound and avoids the word growth of composing long images.
#[derive(Clone, Debug)]
pub struct AutExpansion {
    alpha: AlphabetSpec,
    gens: Vec<Series>,
    gens_inv: Vec<Series>,
}

impl AutExpansion {
    pub fn new(h: &FreeGroupAut, bound: u32, weights: Weights) -> Result<Self> {
        let alpha = *h.alphabet();
        let gens = h
            .fwd_table()
            .iter()
            .map(|img| magnus_expand(&alpha, img, bound, weights))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(gens)
    }

    /// From the expansions of the generator images, in symbol order.
    pub fn from_images(gens: Vec<Series>) -> Result<Self> {
        let alpha = *gens
            .first()
            .ok_or_else(|| Error::InvalidIndex("no generator images".into()))?
            .alphabet();
        if gens.len() != alpha.rank() {
            return Err(Error::InvalidIndex(format!(
                "expected {} images, got {}",
                alpha.rank(),
                gens.len()
            )));
        }
        let gens_inv = gens.iter().map(Series::inverse).collect::<Result<Vec<_>>>()?;
        Ok(AutExpansion {
            alpha,
            gens,
            gens_inv,
        })
    }

    pub fn alphabet(&self) -> &AlphabetSpec {
        &self.alpha
    }

    pub fn bound(&self) -> u32 {
        self.gens[0].bound()
    }

    pub fn weights(&self) -> Weights {
        self.gens[0].weights()
    }

    /// Expansion of the image of generator symbol `s`.
    pub fn generator_image(&self, s: usize) -> &Series {
        &self.gens[s]
    }

    /// Expansion of `self ∘ other`: substitute our images into theirs.
    pub fn compose(&self, other: &AutExpansion) -> Result<AutExpansion> {
        let gens = other
            .gens
            .iter()
            .map(|g| g.substitute(&self.gens))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(gens)
    }

    /// Expansion of `h(w)`.
    pub fn image(&self, w: &Word) -> Series {
        let alpha = &self.alpha;
        let pick = |l: i32| {
            let s = alpha.symbol(l);
            if l > 0 {
                &self.gens[s]
            } else {
                &self.gens_inv[s]
            }
        };
        let ls = w.letters();
        if ls.is_empty() {
            let g = &self.gens[0];
            return Series::one(alpha, g.bound(), g.weights()).expect("shape exists");
        }
        let mut acc = pick(ls[0]).clone();
        for &l in &ls[1..] {
            acc = acc.mul(pick(l)).expect("same shape");
        }
        acc
    }

    /// Expansion of `[h,w] = h(w) w^-1`.
    pub fn commutator(&self, w: &Word) -> Series {
        let mut s = self.image(w);
        for &l in w.inverse().letters() {
            s.mul_letter_right(l);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a11() -> AlphabetSpec {
        AlphabetSpec::new(1, 1).unwrap()
    }

    fn ex(a: &AlphabetSpec, s: &str, b: u32) -> Series {
        magnus_expand(a, &Word::parse(a, s).unwrap(), b, Weights::UNIT).unwrap()
    }

    #[test]
    fn basic_expansions() {
        let a = a11();
        assert_eq!(ex(&a, "x1", 3).to_string(), "1 + X1");
        assert_eq!(ex(&a, "x1^-1", 3).to_string(), "1 - X1 + X1^2 - X1^3");
        let c = ex(&a, "x1 y1 x1^-1 y1^-1", 4);
        let p = c.bidegree_part(1, 1).unwrap();
        assert_eq!(format_poly(&a, &p), "X1*Y1 - Y1*X1");
        assert!(c.bidegree_part(1, 0).unwrap().is_empty());
        assert!(c.bidegree_part(0, 1).unwrap().is_empty());
        assert!(c.bidegree_part(0, 0).unwrap().is_empty());
    }

    #[test]
    fn products() {
        let a = a11();
        let g = Series::from_poly(&a, 2, Weights::UNIT, &parse_poly(&a, "1 - X1 + X1^2").unwrap()).unwrap();
        assert!(ex(&a, "x1", 2).mul(&g).unwrap().is_one());
        let p = ex(&a, "x1", 3).mul(&ex(&a, "y1", 3)).unwrap();
        assert_eq!(p.to_string(), "1 + X1 + Y1 + X1*Y1");
        assert_eq!(p.coeff(&[0, 1]), BigInt::one());
        assert!(p.coeff(&[1, 0]).is_zero());
        assert_eq!(ex(&a, "x1", 3).mul(&ex(&a, "x1", 4)), Err(Error::BoundMismatch));
    }

    #[test]
    fn inverse_series() {
        let a = AlphabetSpec::new(2, 1).unwrap();
        let s = ex(&a, "x1 y1^2 x2^-1 y1", 5);
        assert!(s.mul(&s.inverse().unwrap()).unwrap().is_one());
        assert_eq!(s.inverse().unwrap(), ex(&a, "y1^-1 x2 y1^-2 x1^-1", 5));
    }

    #[test]
    fn membership() {
        let a = AlphabetSpec::new(2, 1).unwrap();
        let w = |s: &str| Word::parse(&a, s).unwrap();
        match dmn_membership(&a, &w("x1"), (0, 1), 3).unwrap() {
            MembershipVerdict::Refuted { witness, coeff } => {
                assert_eq!(witness, Monomial(vec![0]));
                assert_eq!(coeff, BigInt::one());
            }
            v => panic!("{v:?}"),
        }
        let c = crate::words::commutator(&w("x1"), &w("y1"));
        assert!(dmn_membership(&a, &c, (1, 1), 4).unwrap().is_verified());
        let cc = crate::words::commutator(&w("x2"), &crate::words::commutator(&w("x2"), &w("y1")));
        assert!(dmn_membership(&a, &cc, (2, 1), 4).unwrap().is_verified());
        assert!(dmn_membership(&a, &cc, (2, 1), 2).is_err());
        assert!(gamma_membership(&a, &c, 2).unwrap());
        assert!(!gamma_membership(&a, &c, 3).unwrap());
        assert!(gamma_membership(&a, &Word::identity(), 7).unwrap());
        let c3 = crate::words::commutator(&w("x1"), &c);
        assert!(gamma_membership(&a, &c3, 3).unwrap());
    }

    #[test]
    fn weighted_levels() {
        let a = a11();
        let lvl = |s: &str| {
            weighted_filtration_level(&a, &Word::parse(&a, s).unwrap(), Weights::ALT, 6).unwrap()
        };
        assert_eq!(lvl("x1"), Some(2));
        assert_eq!(lvl("y1"), Some(1));
        assert_eq!(lvl("x1 y1 x1^-1 y1^-1"), Some(3));
        assert_eq!(lvl(""), None);
    }

    #[test]
    fn weighted_truncation_drops_heavy_terms() {
        let a = a11();
        let s = magnus_expand(&a, &Word::parse(&a, "x1^-1 y1^-1").unwrap(), 3, Weights::ALT).unwrap();
        for (m, _) in s.terms() {
            let (xs, ys) = m.bidegree(&a);
            assert!(2 * xs + ys <= 3);
        }
        assert_eq!(s.coeff(&[0, 1]), BigInt::one());
        assert!(s.coeff(&[0, 0]).is_zero());
    }

    #[test]
    fn poly_roundtrip() {
        let a = AlphabetSpec::new(2, 2).unwrap();
        let p = parse_poly(&a, "X1^2*Y1 - 2*X1*Y1*X1 + Y1*X1^2").unwrap();
        assert_eq!(format_poly(&a, &p), "X1^2*Y1 - 2*X1*Y1*X1 + Y1*X1^2");
        assert!(parse_poly(&a, "X3").is_err());
    }

    #[test]
    fn aut_expansion_matches_direct() {
        let a = AlphabetSpec::new(2, 1).unwrap();
        let w = |s: &str| Word::parse(&a, s).unwrap();
        let h = FreeGroupAut::from_images(a, &[(1, w("y1^-1 x1 y1"))], &[(1, w("y1 x1 y1^-1"))]).unwrap();
        let e = AutExpansion::new(&h, 5, Weights::UNIT).unwrap();
        let u = w("x2 y1^-1 x1 x2");
        let direct = magnus_expand(&a, &h.act_commutator(&u), 5, Weights::UNIT).unwrap();
        assert_eq!(e.commutator(&u), direct);
    }

    #[test]
    fn weighted_products_match_expansion() {
        let a = AlphabetSpec::new(2, 2).unwrap();
        let w = |s: &str| Word::parse(&a, s).unwrap();
        let u = w("x1 y2^-1 x2 y1^2");
        let v = w("y1^-1 x1^-1 y2 x2^-2");
        for wt in [Weights::ALT, Weights::new(1, 3).unwrap()] {
            let su = magnus_expand(&a, &u, 7, wt).unwrap();
            let sv = magnus_expand(&a, &v, 7, wt).unwrap();
            assert_eq!(su.mul(&sv).unwrap(), magnus_expand(&a, &u.mul(&v), 7, wt).unwrap());
            assert_eq!(su.inverse().unwrap(), magnus_expand(&a, &u.inverse(), 7, wt).unwrap());
            assert_eq!(su.truncate(4).unwrap(), magnus_expand(&a, &u, 4, wt).unwrap());
        }
    }

    #[test]
    fn composition_by_substitution() {
        let a = AlphabetSpec::new(2, 1).unwrap();
        let w = |s: &str| Word::parse(&a, s).unwrap();
        let f = FreeGroupAut::from_images(a, &[(1, w("y1^-1 x1 y1"))], &[(1, w("y1 x1 y1^-1"))]).unwrap();
        let g = FreeGroupAut::from_images(a, &[(3, w("y1 x2"))], &[(3, w("y1 x2^-1"))]).unwrap();
        let fg = f.compose(&g).unwrap();
        let ef = AutExpansion::new(&f, 5, Weights::UNIT).unwrap();
        let eg = AutExpansion::new(&g, 5, Weights::UNIT).unwrap();
        let direct = AutExpansion::new(&fg, 5, Weights::UNIT).unwrap();
        let composed = ef.compose(&eg).unwrap();
        for s in 0..3 {
            assert_eq!(composed.generator_image(s), direct.generator_image(s));
        }
    }
}
