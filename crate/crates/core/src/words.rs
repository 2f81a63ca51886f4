//! Free groups on a split alphabet `x1..xp, y1..yq`, automorphisms given by
//! image tables, and (m,n)-commutator enumeration.
//!
//! A letter is a nonzero `i32`: `1..=p` are the x-generators, `p+1..=p+q`
//! the y-generators, and negation is inversion.

use std::fmt;

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlphabetSpec {
    pub p: usize,
    pub q: usize,
}

impl AlphabetSpec {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidLetter("alphabet needs p+q >= 1".into()));
        }
        if p + q > 64 {
            return Err(Error::TooLarge(format!("alphabet of {} generators", p + q)));
        }
        Ok(AlphabetSpec { p, q })
    }

    /// Surface alphabet with `p = q = g`.
    pub fn surface(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::NotSurfaceMode);
        }
        Self::new(g, g)
    }

    pub fn rank(&self) -> usize {
        self.p + self.q
    }

    pub fn is_surface(&self) -> bool {
        self.p == self.q && self.p >= 1
    }

    pub fn genus(&self) -> Result<usize> {
        if self.is_surface() {
            Ok(self.p)
        } else {
            Err(Error::NotSurfaceMode)
        }
    }

    pub fn x(&self, i: usize) -> Letter {
        debug_assert!(i >= 1 && i <= self.p);
        i as Letter
    }

    pub fn y(&self, j: usize) -> Letter {
        debug_assert!(j >= 1 && j <= self.q);
        (self.p + j) as Letter
    }

    /// Zero-based symbol index of a letter; x's first.
    pub fn symbol(&self, l: Letter) -> usize {
        (l.unsigned_abs() - 1) as usize
    }

    pub fn is_x(&self, l: Letter) -> bool {
        (l.unsigned_abs() as usize) <= self.p
    }

    pub fn check(&self, l: Letter) -> Result<()> {
        if l == 0 || l.unsigned_abs() as usize > self.rank() {
            Err(Error::InvalidLetter(format!(
                "letter {l} outside alphabet p={} q={}",
                self.p, self.q
            )))
        } else {
            Ok(())
        }
    }

    /// Positive generators in order x1..xp, y1..yq.
    pub fn generators(&self) -> impl Iterator<Item = Letter> {
        1..=(self.rank() as Letter)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let g = l.unsigned_abs() as usize;
        if g <= self.p {
            format!("x{g}")
        } else {
            format!("y{}", g - self.p)
        }
    }

    /// Parses a generator name such as `x2` or `y1` (positive only).
    pub fn parse_generator(&self, s: &str) -> Result<Letter> {
        let bad = || Error::InvalidLetter(format!("unknown generator {s:?}"));
        let (kind, idx) = s.split_at(1.min(s.len()));
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "x" if idx >= 1 && idx <= self.p => Ok(self.x(idx)),
            "y" if idx >= 1 && idx <= self.q => Ok(self.y(idx)),
            _ => Err(bad()),
        }
    }

    /// Smallest alphabet mentioning every generator of a word text.
    pub fn infer(text: &str) -> Result<Self> {
        let (mut p, mut q) = (0usize, 0usize);
        for tok in text.split_whitespace() {
            let base = tok.split('^').next().unwrap_or("");
            if base.len() < 2 {
                continue;
            }
            let idx: usize = base[1..].parse().unwrap_or(0);
            match &base[..1] {
                "x" => p = p.max(idx),
                "y" => q = q.max(idx),
                _ => {}
            }
        }
        if p + q == 0 {
            p = 1;
        }
        Self::new(p, q)
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Free reduction of a raw letter sequence, checked against `alpha`.
    pub fn reduce(alpha: &AlphabetSpec, raw: &[Letter]) -> Result<Self> {
        for &l in raw {
            alpha.check(l)?;
        }
        Ok(Self::reduce_unchecked(raw.iter().copied()))
    }

    pub(crate) fn reduce_unchecked(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == -b[k] {
            k += 1;
        }
        let mut v = Vec::with_capacity(a.len() + b.len() - 2 * k);
        v.extend_from_slice(&a[..a.len() - k]);
        v.extend_from_slice(&b[k..]);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u w u^-1`
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    /// (x-count, y-count) with multiplicity.
    pub fn bidegree(&self, alpha: &AlphabetSpec) -> (usize, usize) {
        let xs = self.0.iter().filter(|&&l| alpha.is_x(l)).count();
        (xs, self.0.len() - xs)
    }

    /// Exponent sum of each generator, indexed by symbol.
    pub fn exponent_sums(&self, alpha: &AlphabetSpec) -> Vec<i64> {
        let mut v = vec![0i64; alpha.rank()];
        for &l in &self.0 {
            v[alpha.symbol(l)] += l.signum() as i64;
        }
        v
    }

    /// Parses `x1 y2^-1 x1^3`. Adjacent generators may also be separated by `*`.
    pub fn parse(alpha: &AlphabetSpec, s: &str) -> Result<Word> {
        let mut raw = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() || tok == "1" || tok == "e" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                    (b, e)
                }
                None => (tok, 1),
            };
            let g = alpha.parse_generator(base)?;
            let l = if exp < 0 { -g } else { g };
            for _ in 0..exp.unsigned_abs() {
                raw.push(l);
            }
        }
        Ok(Self::reduce_unchecked(raw))
    }

    pub fn display<'a>(&'a self, alpha: &'a AlphabetSpec) -> WordDisplay<'a> {
        WordDisplay { w: self, alpha }
    }
}

pub struct WordDisplay<'a> {
    w: &'a Word,
    alpha: &'a AlphabetSpec,
}

impl fmt::Display for WordDisplay<'_> {
    /// Runs of the same letter are written with an exponent; the identity is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = &self.w.0;
        if ls.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = (j - i) as i64 * ls[i].signum() as i64;
            write!(f, "{}", self.alpha.letter_name(ls[i]))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `[a,b] = a b a^-1 b^-1`
pub fn commutator(a: &Word, b: &Word) -> Word {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// Right-nested bracket `[u1,[u2,[...,[u_{r-1},u_r]...]]]`.
pub fn multibracket(us: &[Word]) -> Result<Word> {
    let (last, rest) = us.split_last().ok_or(Error::EmptyBracket)?;
    Ok(rest
        .iter()
        .rev()
        .fold(last.clone(), |acc, u| commutator(u, &acc)))
}

/// All right-nested brackets of `m` x-letters and `n` y-letters, positive
/// letters only, in lexicographic order of the letter sequence (x's before
/// y's, lower index first).
pub fn enumerate_mn_commutators(
    alpha: &AlphabetSpec,
    m: usize,
    n: usize,
    nontrivial_only: bool,
) -> Result<Vec<(Vec<Letter>, Word)>> {
    if m + n == 0 {
        return Err(Error::InvalidDegree("(0,0) has no commutators".into()));
    }
    if (m > 0 && alpha.p == 0) || (n > 0 && alpha.q == 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(m + n);
    enum_rec(alpha, m, n, &mut seq, &mut out, nontrivial_only);
    Ok(out)
}

fn enum_rec(
    alpha: &AlphabetSpec,
    m: usize,
    n: usize,
    seq: &mut Vec<Letter>,
    out: &mut Vec<(Vec<Letter>, Word)>,
    nontrivial_only: bool,
) {
    if m == 0 && n == 0 {
        let ws: Vec<Word> = seq.iter().map(|&l| Word::letter(l)).collect();
        let w = multibracket(&ws).expect("nonempty");
        if !nontrivial_only || !w.is_empty() {
            out.push((seq.clone(), w));
        }
        return;
    }
    if m > 0 {
        for i in 1..=alpha.p {
            seq.push(alpha.x(i));
            enum_rec(alpha, m - 1, n, seq, out, nontrivial_only);
            seq.pop();
        }
    }
    if n > 0 {
        for j in 1..=alpha.q {
            seq.push(alpha.y(j));
            enum_rec(alpha, m, n - 1, seq, out, nontrivial_only);
            seq.pop();
        }
    }
}

/// Surface boundary word `prod_i [x_i^-1, y_i^-1]`.
pub fn boundary_word(g: usize) -> Result<Word> {
    let alpha = AlphabetSpec::surface(g)?;
    let mut w = Word::identity();
    for i in 1..=g {
        let c = commutator(
            &Word::letter(-alpha.x(i)),
            &Word::letter(-alpha.y(i)),
        );
        w = w.mul(&c);
    }
    Ok(w)
}

/// Automorphism of the free group given by generator images and a verified
/// inverse table. Tables are indexed by zero-based symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupAut {
    alpha: AlphabetSpec,
    fwd: Vec<Word>,
    inv: Vec<Word>,
}

impl FreeGroupAut {
    /// Checks that both tables compose to the identity on every generator.
    pub fn new(alpha: AlphabetSpec, fwd: Vec<Word>, inv: Vec<Word>) -> Result<Self> {
        if fwd.len() != alpha.rank() || inv.len() != alpha.rank() {
            return Err(Error::NotAnAutomorphism(format!(
                "tables need {} entries, got {} and {}",
                alpha.rank(),
                fwd.len(),
                inv.len()
            )));
        }
        for w in fwd.iter().chain(inv.iter()) {
            for &l in w.letters() {
                alpha.check(l)?;
            }
        }
        let a = FreeGroupAut { alpha, fwd, inv };
        for g in alpha.generators() {
            let gw = Word::letter(g);
            let there = a.apply(&a.apply_inverse(&gw));
            let back = a.apply_inverse(&a.apply(&gw));
            if there != gw || back != gw {
                return Err(Error::NotAnAutomorphism(format!(
                    "tables are not mutually inverse on {}",
                    alpha.letter_name(g)
                )));
            }
        }
        Ok(a)
    }

    pub fn identity(alpha: AlphabetSpec) -> Self {
        let t: Vec<Word> = alpha.generators().map(Word::letter).collect();
        FreeGroupAut {
            alpha,
            fwd: t.clone(),
            inv: t,
        }
    }

    /// Automorphism moving only the listed generators; inverses are
    /// supplied the same way.
    pub fn from_images(
        alpha: AlphabetSpec,
        fwd: &[(Letter, Word)],
        inv: &[(Letter, Word)],
    ) -> Result<Self> {
        let mut f: Vec<Word> = alpha.generators().map(Word::letter).collect();
        let mut b = f.clone();
        for (g, w) in fwd {
            alpha.check(*g)?;
            f[alpha.symbol(*g)] = w.clone();
        }
        for (g, w) in inv {
            alpha.check(*g)?;
            b[alpha.symbol(*g)] = w.clone();
        }
        Self::new(alpha, f, b)
    }

    pub fn alphabet(&self) -> &AlphabetSpec {
        &self.alpha
    }

    pub fn fwd_table(&self) -> &[Word] {
        &self.fwd
    }

    pub fn inv_table(&self) -> &[Word] {
        &self.inv
    }

    pub fn image(&self, g: Letter) -> &Word {
        &self.fwd[self.alpha.symbol(g)]
    }

    fn apply_with(table: &[Word], alpha: &AlphabetSpec, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len() * 4);
        for &l in w.letters() {
            let img = &table[alpha.symbol(l)];
            if l > 0 {
                for &c in img.letters() {
                    push_reduced(&mut out, c);
                }
            } else {
                for &c in img.letters().iter().rev() {
                    push_reduced(&mut out, -c);
                }
            }
        }
        Word(out)
    }

    pub fn apply(&self, w: &Word) -> Word {
        Self::apply_with(&self.fwd, &self.alpha, w)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        Self::apply_with(&self.inv, &self.alpha, w)
    }

    /// `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &FreeGroupAut) -> Result<FreeGroupAut> {
        if self.alpha != other.alpha {
            return Err(Error::InvalidLetter("alphabets differ".into()));
        }
        let fwd = other.fwd.iter().map(|w| self.apply(w)).collect();
        let inv = self.inv.iter().map(|w| other.apply_inverse(w)).collect();
        Ok(FreeGroupAut {
            alpha: self.alpha,
            fwd,
            inv,
        })
    }

    pub fn inverse(&self) -> FreeGroupAut {
        FreeGroupAut {
            alpha: self.alpha,
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> FreeGroupAut {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeGroupAut::identity(self.alpha);
        for _ in 0..e.unsigned_abs() {
            out = out.compose(&base).expect("same alphabet");
        }
        out
    }

    /// `[g,h] = g h g^-1 h^-1`
    pub fn commutator(&self, other: &FreeGroupAut) -> Result<FreeGroupAut> {
        self.compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())
    }

    /// `f h f^-1`
    pub fn conjugate_by(&self, f: &FreeGroupAut) -> Result<FreeGroupAut> {
        f.compose(self)?.compose(&f.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.fwd
            .iter()
            .zip(self.alpha.generators())
            .all(|(w, g)| w.letters() == [g])
    }

    pub fn fixes_boundary(&self) -> Result<bool> {
        let g = self.alpha.genus()?;
        let z = boundary_word(g)?;
        Ok(self.apply(&z) == z)
    }

    /// `[h,w] = h(w) w^-1`
    pub fn act_commutator(&self, w: &Word) -> Word {
        self.apply(w).mul(&w.inverse())
    }

    /// Longest image word and total image length, a rough size measure.
    pub fn size(&self) -> (usize, usize) {
        let max = self.fwd.iter().map(Word::len).max().unwrap_or(0);
        let tot = self.fwd.iter().map(Word::len).sum();
        (max, tot)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a22() -> AlphabetSpec {
        AlphabetSpec::new(2, 2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(&a22(), s).unwrap()
    }

    #[test]
    fn reduction() {
        let a = a22();
        assert!(Word::reduce(&a, &[1, -1]).unwrap().is_empty());
        assert_eq!(Word::reduce(&a, &[1, 3, -3, 2]).unwrap(), w("x1 x2"));
        let r = w("x1 y2^-1 x1");
        assert_eq!(Word::reduce(&a, r.letters()).unwrap(), r);
        assert!(Word::reduce(&a, &[5]).is_err());
        assert!(Word::reduce(&a, &[0]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let a = a22();
        let u = w("x1 y2^-1 x1^3 y1^-2");
        assert_eq!(u.display(&a).to_string(), "x1 y2^-1 x1^3 y1^-2");
        assert_eq!(Word::identity().display(&a).to_string(), "1");
        assert!(Word::parse(&a, "x3").is_err());
        assert!(Word::parse(&a, "z1").is_err());
    }

    #[test]
    fn commutators() {
        assert!(commutator(&w("x1"), &w("x1")).is_empty());
        assert_eq!(commutator(&w("x1"), &w("y1")), w("x1 y1 x1^-1 y1^-1"));
        // [ab,c] = a[b,c]a^-1 [a,c]
        let lhs = commutator(&w("x1 x2"), &w("y1"));
        let rhs = commutator(&w("x2"), &w("y1"))
            .conjugate_by(&w("x1"))
            .mul(&commutator(&w("x1"), &w("y1")));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multibrackets() {
        assert_eq!(multibracket(&[w("x1")]).unwrap(), w("x1"));
        assert_eq!(
            multibracket(&[w("x2"), w("x2"), w("y1")]).unwrap(),
            commutator(&w("x2"), &commutator(&w("x2"), &w("y1")))
        );
        assert!(multibracket(&[w("x1"), w("x1")]).unwrap().is_empty());
        assert_eq!(multibracket(&[]), Err(Error::EmptyBracket));
    }

    #[test]
    fn enumeration_counts() {
        let a = a22();
        for (m, n) in [(1, 0), (0, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let all = enumerate_mn_commutators(&a, m, n, false).unwrap();
            let binom = (1..=m + n).product::<usize>()
                / ((1..=m).product::<usize>() * (1..=n).product::<usize>());
            assert_eq!(all.len(), binom * 2usize.pow((m + n) as u32));
        }
        assert!(enumerate_mn_commutators(&a, 0, 0, false).is_err());
    }

    #[test]
    fn worked_lists() {
        let a = a22();
        let show = |m, n| -> Vec<String> {
            enumerate_mn_commutators(&a, m, n, true)
                .unwrap()
                .into_iter()
                .map(|(s, _)| {
                    let ws: Vec<String> = s.iter().map(|&l| a.letter_name(l)).collect();
                    ws.join(",")
                })
                .collect()
        };
        assert_eq!(show(1, 0), ["x1", "x2"]);
        assert_eq!(show(0, 1), ["y1", "y2"]);
        assert_eq!(show(2, 0), ["x1,x2", "x2,x1"]);
        assert_eq!(show(0, 2), ["y1,y2", "y2,y1"]);
        assert_eq!(
            show(1, 1),
            [
                "x1,y1", "x1,y2", "x2,y1", "x2,y2", "y1,x1", "y1,x2", "y2,x1", "y2,x2"
            ]
        );
    }

    fn phi_x1y1() -> FreeGroupAut {
        let a = a22();
        FreeGroupAut::from_images(
            a,
            &[(1, w("y1^-1 x1 y1"))],
            &[(1, w("y1 x1 y1^-1"))],
        )
        .unwrap()
    }

    #[test]
    fn automorphisms() {
        let a = a22();
        let h = phi_x1y1();
        assert_eq!(h.apply(&w("x1")), w("y1^-1 x1 y1"));
        assert!(h.compose(&h.inverse()).unwrap().is_identity());
        assert_eq!(h.compose(&h).unwrap().apply(&w("x1")), w("y1^-2 x1 y1^2"));
        let k = FreeGroupAut::from_images(
            a,
            &[(1, w("x1 y1 x2 y1^-1 x2^-1"))],
            &[(1, w("x1 x2 y1 x2^-1 y1^-1"))],
        )
        .unwrap();
        assert_eq!(k.apply(&w("x1")), w("x1").mul(&commutator(&w("y1"), &w("x2"))));
        let c = h.commutator(&k).unwrap();
        for g in a.generators() {
            let gw = Word::letter(g);
            let direct = h.apply(&k.apply(&h.apply_inverse(&k.apply_inverse(&gw))));
            assert_eq!(c.apply(&gw), direct);
        }
        let bad = FreeGroupAut::from_images(a, &[(1, w("x1 y1"))], &[(1, w("x1"))]);
        assert!(matches!(bad, Err(Error::NotAnAutomorphism(_))));
        assert!(!h.fixes_boundary().unwrap());
        assert!(FreeGroupAut::identity(a).fixes_boundary().unwrap());
    }

    #[test]
    fn boundary() {
        let a = AlphabetSpec::surface(1).unwrap();
        assert_eq!(
            boundary_word(1).unwrap(),
            Word::parse(&a, "x1^-1 y1^-1 x1 y1").unwrap()
        );
        assert!(boundary_word(0).is_err());
        let h = FreeGroupAut::identity(AlphabetSpec::new(2, 1).unwrap());
        assert_eq!(h.fixes_boundary(), Err(Error::NotSurfaceMode));
    }
}
