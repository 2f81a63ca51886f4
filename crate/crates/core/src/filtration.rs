//! Leading terms of words in the double lower central series, integral
//! spanning checks for the associated graded pieces, and evidence reports.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freelie::{self, lie_project, lie_rank, lyndon_basis, Bidegree, LieElement};
use crate::magnus::{self, magnus_expand, MembershipVerdict, Series, Weights};
use crate::snf;
use crate::words::{enumerate_mn_commutators, AlphabetSpec, Letter, Word};

pub(crate) fn big_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

pub(crate) fn verdict_json(alpha: &AlphabetSpec, v: &MembershipVerdict) -> Value {
    match v {
        MembershipVerdict::Verified { bound } => json!({"verdict": "verified", "bound": bound, "model": "monomial-bidegree"}),
        MembershipVerdict::Refuted { witness, coeff } => json!({
            "verdict": "refuted",
            "witness": witness.display(alpha).to_string(),
            "coeff": big_json(coeff),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeadingTerm {
    pub word: Word,
    pub grade: Bidegree,
    /// Present exactly when the verdict is `Verified`.
    pub value: Option<LieElement>,
    pub verdict: MembershipVerdict,
}

impl LeadingTerm {
    pub fn to_json(&self, alpha: &AlphabetSpec) -> Value {
        json!({
            "word": self.word.display(alpha).to_string(),
            "grade": [self.grade.0, self.grade.1],
            "value": self.value.as_ref().map(|v| v.to_string()),
            "membership": verdict_json(alpha, &self.verdict),
        })
    }
}

/// Verdict and projected `(m,n)` part of an already computed expansion.
pub fn leading_term_of_series(s: &Series, mn: Bidegree) -> Result<(MembershipVerdict, Option<LieElement>)> {
    let verdict = magnus::series_membership(s, mn);
    if !verdict.is_verified() {
        return Ok((verdict, None));
    }
    let part = s.bidegree_part(mn.0, mn.1)?;
    let value = lie_project(s.alphabet(), &part)?;
    Ok((verdict, Some(value)))
}

pub fn leading_term(alpha: &AlphabetSpec, w: &Word, mn: Bidegree, bound: u32) -> Result<LeadingTerm> {
    let need = (mn.0 + mn.1 + 1) as u32;
    if bound < need {
        return Err(Error::BoundExceeded { degree: need, bound });
    }
    let s = magnus_expand(alpha, w, bound, Weights::UNIT)?;
    let (verdict, value) = leading_term_of_series(&s, mn)?;
    Ok(LeadingTerm {
        word: w.clone(),
        grade: mn,
        value,
        verdict,
    })
}

/// Right-nested Lie bracket of generators, the graded image of the group
/// multibracket with the same letters.
pub fn lie_commutator(alpha: &AlphabetSpec, seq: &[Letter]) -> Result<LieElement> {
    let (last, rest) = seq.split_last().ok_or(Error::EmptyBracket)?;
    let gen = |l: Letter| LieElement::generator(alpha, alpha.symbol(l));
    Ok(rest
        .iter()
        .rev()
        .fold(gen(*last), |acc, &l| gen(l).bracket(&acc)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanReport {
    pub grade: Bidegree,
    pub rank_expected: usize,
    pub rank_found: usize,
    pub elementary_divisors: Vec<BigInt>,
    pub spanned: bool,
    /// Commutators whose leading term disagrees with the Lie commutator.
    pub witnesses: Vec<String>,
}

impl SpanReport {
    pub fn to_json(&self) -> Value {
        json!({
            "grade": [self.grade.0, self.grade.1],
            "rank_expected": self.rank_expected,
            "rank_found": self.rank_found,
            "elementary_divisors": self.elementary_divisors.iter().map(big_json).collect::<Vec<_>>(),
            "spanned": self.spanned,
            "witnesses": self.witnesses,
        })
    }
}

/// Stacks the leading terms of all nontrivial (m,n)-commutators and checks
/// that they span `Lie_{m,n}` over the integers. Each leading term is also
/// compared against the Lie commutator with the same letters.
pub fn graded_span_check(alpha: &AlphabetSpec, mn: Bidegree) -> Result<SpanReport> {
    let (m, n) = mn;
    let comms = enumerate_mn_commutators(alpha, m, n, true)?;
    let rank_expected = lie_rank(alpha, mn);
    let bound = (m + n + 1) as u32;
    let results: Vec<Result<(Vec<BigInt>, Option<String>)>> = {
        use rayon::prelude::*;
        comms
            .par_iter()
            .map(|(seq, w)| {
                let lt = leading_term(alpha, w, mn, bound)?;
                let expect = lie_commutator(alpha, seq)?;
                let names: Vec<String> = seq.iter().map(|&l| alpha.letter_name(l)).collect();
                let bad = match &lt.value {
                    Some(v) if *v == expect => None,
                    Some(v) => Some(format!("[{}]: got {v}, expected {expect}", names.join(","))),
                    None => Some(format!("[{}]: membership refuted", names.join(","))),
                };
                let row = lt.value.unwrap_or_else(|| LieElement::zero(alpha)).component(mn);
                Ok((row, bad))
            })
            .collect()
    };
    let mut rows = Vec::with_capacity(results.len());
    let mut witnesses = Vec::new();
    for r in results {
        let (row, bad) = r?;
        rows.push(row);
        witnesses.extend(bad);
    }
    let elementary_divisors = if rank_expected == 0 { Vec::new() } else { snf::smith_diagonal(&rows) };
    let spanned = elementary_divisors.len() == rank_expected && elementary_divisors.iter().all(One::is_one);
    Ok(SpanReport {
        grade: mn,
        rank_expected,
        rank_found: elementary_divisors.len(),
        elementary_divisors,
        spanned,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaReport {
    pub degree: usize,
    pub rank_total: usize,
    pub ranks: Vec<(Bidegree, usize)>,
    pub rank_sum_matches: bool,
    pub elementary_divisors: Vec<BigInt>,
    pub unimodular: bool,
}

impl GammaReport {
    pub fn ok(&self) -> bool {
        self.rank_sum_matches && self.unimodular
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "rank_total": self.rank_total,
            "ranks": self.ranks.iter().map(|((m, n), r)| json!({"grade": [m, n], "rank": r})).collect::<Vec<_>>(),
            "rank_sum_matches": self.rank_sum_matches,
            "elementary_divisors": self.elementary_divisors.iter().map(big_json).collect::<Vec<_>>(),
            "unimodular": self.unimodular,
        })
    }
}

/// Symbol permutation interleaving the two letter classes, so that the
/// comparison basis is not just the union of the bigraded ones.
fn interleave(alpha: &AlphabetSpec) -> Vec<u8> {
    let mut order = Vec::with_capacity(alpha.rank());
    for i in 0..alpha.p.max(alpha.q) {
        if i < alpha.p {
            order.push(i);
        }
        if i < alpha.q {
            order.push(alpha.p + i);
        }
    }
    let mut perm = vec![0u8; alpha.rank()];
    for (pos, &s) in order.iter().enumerate() {
        perm[s] = pos as u8;
    }
    perm
}

/// Checks that the bigraded pieces of total degree `m` assemble to an
/// integral basis of the degree-`m` piece of the free Lie ring on all
/// letters. The bigraded basis elements are relabeled by an interleaving
/// permutation and expressed in the ordinary Lyndon basis; the resulting
/// square matrix must be unimodular.
pub fn gamma_decomposition_check(alpha: &AlphabetSpec, m: usize) -> Result<GammaReport> {
    if m == 0 {
        return Err(Error::InvalidDegree("m must be at least 1".into()));
    }
    let k = alpha.rank();
    let rank_total = freelie::lyndon_words(k, m).len();
    let ranks: Vec<(Bidegree, usize)> = (0..=m).rev().map(|i| ((i, m - i), lie_rank(alpha, (i, m - i)))).collect();
    let sum: usize = ranks.iter().map(|(_, r)| r).sum();
    let perm = interleave(alpha);
    let mut rows = Vec::with_capacity(sum);
    for ((i, j), _) in &ranks {
        let basis = lyndon_basis(alpha, (*i, *j));
        for idx in 0..basis.len() {
            let relabeled: magnus::Poly = basis
                .mu(idx)
                .iter()
                .map(|(w, c)| (w.iter().map(|&s| perm[s as usize]).collect(), c.clone()))
                .collect();
            rows.push(freelie::project_total(k, m, &relabeled)?);
        }
    }
    let elementary_divisors = snf::smith_diagonal(&rows);
    let unimodular =
        rows.len() == rank_total && elementary_divisors.len() == rank_total && elementary_divisors.iter().all(One::is_one);
    Ok(GammaReport {
        degree: m,
        rank_total,
        ranks,
        rank_sum_matches: sum == rank_total,
        elementary_divisors,
        unimodular,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub grade: Bidegree,
    pub commutators: usize,
    /// Commutators passing both the (m,0) and (0,n) membership tests.
    pub easy_inclusion_passes: usize,
    pub failures: Vec<String>,
    /// Monomials up to the bound with bidegree >= (m,0) and >= (0,n).
    pub intersection_monomials: usize,
    /// Monomials up to the bound with bidegree >= (m,n).
    pub mn_monomials: usize,
    pub span_rank: usize,
    pub lie_rank: usize,
    pub bound: u32,
}

impl IntersectionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "grade": [self.grade.0, self.grade.1],
            "commutators": self.commutators,
            "easy_inclusion_passes": self.easy_inclusion_passes,
            "failures": self.failures,
            "intersection_monomials": self.intersection_monomials,
            "mn_monomials": self.mn_monomials,
            "model_intersection_equals_mn": self.intersection_monomials == self.mn_monomials,
            "span_rank": self.span_rank,
            "lie_rank": self.lie_rank,
            "bound": self.bound,
            "note": "model-level evidence only; no claim about the group-level equality",
        })
    }
}

pub fn intersection_evidence(alpha: &AlphabetSpec, mn: Bidegree, bound: u32) -> Result<IntersectionReport> {
    let (m, n) = mn;
    if m == 0 || n == 0 {
        return Err(Error::InvalidDegree("evidence concerns m,n >= 1".into()));
    }
    if ((m + n) as u32) > bound {
        return Err(Error::BoundExceeded {
            degree: (m + n) as u32,
            bound,
        });
    }
    let comms = enumerate_mn_commutators(alpha, m, n, true)?;
    let mut passes = 0;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (seq, w) in &comms {
        let s = magnus_expand(alpha, w, bound, Weights::UNIT)?;
        let a = magnus::series_membership(&s, (m, 0)).is_verified();
        let b = magnus::series_membership(&s, (0, n)).is_verified();
        if a && b {
            passes += 1;
        } else {
            let names: Vec<String> = seq.iter().map(|&l| alpha.letter_name(l)).collect();
            failures.push(format!("[{}]", names.join(",")));
        }
        if let (_, Some(v)) = leading_term_of_series(&s, mn)? {
            rows.push(v.component(mn));
        }
    }
    // monomial counts by bidegree: C(i+j, i) p^i q^j
    let (p, q) = (alpha.p as u128, alpha.q as u128);
    let mut inter = 0u128;
    let mut full = 0u128;
    for d in 1..=bound as usize {
        for i in 0..=d {
            let j = d - i;
            let cnt = binom(d, i) * p.pow(i as u32) * q.pow(j as u32);
            if i >= m && j >= n {
                full += cnt;
            }
            let above_m0 = i >= m;
            let above_0n = j >= n;
            if above_m0 && above_0n {
                inter += cnt;
            }
        }
    }
    let span_rank = if rows.is_empty() { 0 } else { snf::rank(&rows) };
    Ok(IntersectionReport {
        grade: mn,
        commutators: comms.len(),
        easy_inclusion_passes: passes,
        failures,
        intersection_monomials: inter as usize,
        mn_monomials: full as usize,
        span_rank,
        lie_rank: lie_rank(alpha, mn),
        bound,
    })
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::commutator;

    fn a(p: usize, q: usize) -> AlphabetSpec {
        AlphabetSpec::new(p, q).unwrap()
    }

    #[test]
    fn leading_terms() {
        let al = a(1, 1);
        let w = |s: &str| Word::parse(&al, s).unwrap();
        let lt = leading_term(&al, &commutator(&w("x1"), &w("y1")), (1, 1), 3).unwrap();
        assert_eq!(lt.value.unwrap().to_string(), "[a1,b1]");
        let lt = leading_term(&al, &Word::identity(), (1, 1), 3).unwrap();
        assert!(lt.verdict.is_verified());
        assert!(lt.value.unwrap().is_zero());
        assert!(leading_term(&al, &w("x1"), (1, 1), 2).is_err());
        let lt = leading_term(&al, &w("x1"), (0, 1), 3).unwrap();
        assert!(lt.value.is_none());
    }

    #[test]
    fn spans() {
        let r = graded_span_check(&a(2, 2), (1, 1)).unwrap();
        assert_eq!(r.rank_expected, 4);
        assert!(r.spanned && r.witnesses.is_empty());
        let r = graded_span_check(&a(1, 1), (2, 0)).unwrap();
        assert_eq!(r.rank_expected, 0);
        assert!(r.spanned);
        let r = graded_span_check(&a(2, 2), (2, 1)).unwrap();
        assert_eq!(r.rank_expected, 8);
        assert!(r.spanned && r.witnesses.is_empty());
    }

    #[test]
    fn gamma_ranks() {
        let g1 = a(1, 1);
        let r = gamma_decomposition_check(&g1, 2).unwrap();
        assert_eq!(r.rank_total, 1);
        assert_eq!(r.ranks.iter().map(|x| x.1).collect::<Vec<_>>(), vec![0, 1, 0]);
        assert!(r.ok());
        let r = gamma_decomposition_check(&a(2, 2), 2).unwrap();
        assert_eq!(r.rank_total, 6);
        assert_eq!(r.ranks.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 4, 1]);
        assert!(r.ok());
        let r = gamma_decomposition_check(&g1, 1).unwrap();
        assert_eq!(r.rank_total, 2);
        assert!(r.ok());
    }

    #[test]
    fn intersection_evidence_small_cases() {
        let r = intersection_evidence(&a(2, 2), (1, 1), 4).unwrap();
        assert_eq!(r.commutators, 8);
        assert_eq!(r.easy_inclusion_passes, 8);
        assert_eq!(r.intersection_monomials, r.mn_monomials);
        let r = intersection_evidence(&a(1, 1), (2, 1), 5).unwrap();
        assert_eq!(r.easy_inclusion_passes, r.commutators);
        assert!(matches!(intersection_evidence(&a(1, 1), (2, 0), 4), Err(Error::InvalidDegree(_))));
    }
}
