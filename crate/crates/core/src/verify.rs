//! The executable fact list: worked values, structural property suites and
//! catalog-wide compatibility checks for the double Johnson maps. Each fact
//! aggregates a family of checks and lists the cases that failed.
//!
//! The groups below are public so that the acceptance tests can run them
//! one criterion at a time; `run` stitches them together for the CLI.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, BlockShape, CatalogEntry, Mode};
use crate::error::{Error, Result};
use crate::filtration;
use crate::freelie::{self, Derivation, LieElement, Wedge3};
use crate::grading::{
    check_good_axioms, hessenberg_sum, monoid_add, monoid_leq, Comparison, ExtPair, GradeIndex, MonoidInstance,
    OrderedMonoid, OrdinalCnf,
};
use crate::johnson::{self, Battery};
use crate::magnus::{self, Series, Weights};
use crate::snf;
use crate::words::{commutator, enumerate_mn_commutators, multibracket, AlphabetSpec, FreeGroupAut, Word};

/// Module a fact belongs to, used for `--scope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Area {
    Grading,
    Words,
    Magnus,
    Freelie,
    Filtration,
    Johnson,
    Catalog,
}

impl Area {
    pub const ALL: [Area; 7] = [
        Area::Grading,
        Area::Words,
        Area::Magnus,
        Area::Freelie,
        Area::Filtration,
        Area::Johnson,
        Area::Catalog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Area::Grading => "grading",
            Area::Words => "words",
            Area::Magnus => "magnus",
            Area::Freelie => "freelie",
            Area::Filtration => "filtration",
            Area::Johnson => "johnson",
            Area::Catalog => "catalog",
        }
    }
}

impl fmt::Display for Area {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Area {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Area::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown scope {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub area: Area,
    /// What is being checked, in words.
    pub anchor: String,
    pub passed: bool,
    pub checks: usize,
    /// Failing cases, or a short summary when everything passed.
    pub detail: String,
}

/// Counts checks and keeps the first few failures.
struct Tally {
    area: Area,
    anchor: String,
    checks: usize,
    failures: Vec<String>,
    note: String,
}

const MAX_LISTED: usize = 8;

impl Tally {
    fn new(area: Area, anchor: impl Into<String>) -> Self {
        Tally {
            area,
            anchor: anchor.into(),
            checks: 0,
            failures: Vec::new(),
            note: String::new(),
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    fn fail(&mut self, case: String) {
        self.checks += 1;
        self.failures.push(case);
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = s.into();
        self
    }

    fn fact(self) -> Fact {
        let passed = self.failures.is_empty() && self.checks > 0;
        let detail = if self.checks == 0 {
            "no checks ran".into()
        } else if passed {
            self.note
        } else {
            let mut shown: Vec<String> = self.failures.iter().take(MAX_LISTED).cloned().collect();
            if self.failures.len() > MAX_LISTED {
                shown.push(format!("... {} more", self.failures.len() - MAX_LISTED));
            }
            shown.join("; ")
        };
        Fact {
            area: self.area,
            anchor: self.anchor,
            passed,
            checks: self.checks,
            detail,
        }
    }
}

fn single(area: Area, anchor: &str, ok: bool, detail: String) -> Fact {
    Fact {
        area,
        anchor: anchor.into(),
        passed: ok,
        checks: 1,
        detail,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub bound: u32,
    pub battery: Battery,
    /// Random cases per sampled property.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            bound: johnson::DEFAULT_BOUND,
            battery: Battery::default(),
            samples: 1000,
            seed: johnson::DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub facts: Vec<Fact>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> Vec<&Fact> {
        self.facts.iter().filter(|f| !f.passed).collect()
    }

    pub fn to_json(&self, s: &Settings) -> Value {
        json!({
            "passed": self.passed(),
            "settings": {
                "bound": s.bound,
                "battery": s.battery.size,
                "seed": s.seed,
                "samples": s.samples,
            },
            "total": self.facts.len(),
            "failed": self.failures().len(),
            "facts": self.facts,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.facts {
            let mark = if f.passed { "PASS" } else { "FAIL" };
            let detail = if f.detail.is_empty() { String::new() } else { format!("  {}", f.detail) };
            out.push_str(&format!("{mark}  {:<10} {} ({} checks){detail}\n", f.area.name(), f.anchor, f.checks));
        }
        out.push_str(&format!(
            "{} of {} facts passed\n",
            self.facts.len() - self.failures().len(),
            self.facts.len()
        ));
        out
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_word(r: &mut ChaCha8Rng, alpha: &AlphabetSpec, max_len: usize) -> Word {
    let k = alpha.rank() as i32;
    let len = r.gen_range(0..=max_len);
    let raw: Vec<i32> = (0..len)
        .map(|_| {
            let l = r.gen_range(1..=k);
            if r.gen_bool(0.5) {
                l
            } else {
                -l
            }
        })
        .collect();
    Word::reduce(alpha, &raw).expect("letters in range")
}

fn random_lie(r: &mut ChaCha8Rng, alpha: &AlphabetSpec, mn: freelie::Bidegree) -> LieElement {
    let n = freelie::lie_rank(alpha, mn);
    let coords = (0..n).map(|_| BigInt::from(r.gen_range(-3..=3))).collect();
    LieElement::from_coords(alpha, mn, coords).expect("rank matches")
}

// ---------------------------------------------------------------------------
// worked values

/// Worked symbolic values: the double Magnus components of `[x1,y1]`, the
/// natural sum example, the symplectic images of the Goeritz generators and
/// the small lists of (m,n)-commutators.
pub fn worked_values() -> Vec<Fact> {
    let mut out = Vec::new();

    let a11 = AlphabetSpec::new(1, 1).expect("valid");
    let c = commutator(&Word::parse(&a11, "x1").unwrap(), &Word::parse(&a11, "y1").unwrap());
    let d11 = magnus::delta_component(&a11, &c, (1, 1), 3);
    let want = magnus::parse_poly(&a11, "X1*Y1 - Y1*X1").expect("literal");
    out.push(single(
        Area::Magnus,
        "delta_{1,1}([x1,y1]) = X1 Y1 - Y1 X1",
        d11.as_ref().is_ok_and(|p| *p == want),
        format!("{:?}", d11.map(|p| magnus::format_poly(&a11, &p))),
    ));
    let zero10 = magnus::delta_component(&a11, &c, (1, 0), 3).is_ok_and(|p| p.is_empty());
    let zero01 = magnus::delta_component(&a11, &c, (0, 1), 3).is_ok_and(|p| p.is_empty());
    out.push(single(
        Area::Magnus,
        "delta_{1,0}([x1,y1]) = delta_{0,1}([x1,y1]) = 0",
        zero10 && zero01,
        String::new(),
    ));

    let sum = OrdinalCnf::parse("w*2+3")
        .and_then(|a| OrdinalCnf::parse("w*1+4").map(|b| hessenberg_sum(&a, &b).to_string()));
    out.push(single(
        Area::Grading,
        "natural sum (w*2+3) # (w*1+4) = w*3+7",
        sum.as_deref() == Ok("w*3+7"),
        format!("{sum:?}"),
    ));

    let mut t = Tally::new(Area::Catalog, "sigma(phi_ik) = block-diag(e_ik(1), e_ki(-1))");
    for g in 2..=3usize {
        for i in 1..=g {
            for k in 1..=g {
                if i == k {
                    continue;
                }
                let mut want = vec![vec![BigInt::zero(); 2 * g]; 2 * g];
                for (r, row) in want.iter_mut().enumerate() {
                    row[r] = BigInt::one();
                }
                want[i - 1][k - 1] = BigInt::one();
                want[g + k - 1][g + i - 1] = -BigInt::one();
                let got = catalog::phi(g, i, k).and_then(|h| catalog::sigma(&h));
                let shape = got.as_ref().map(catalog::block_shape_classify);
                t.check(
                    got.as_ref() == Ok(&want) && shape == Ok(BlockShape::G),
                    || format!("g={g} phi_{i}{k}: {got:?}"),
                );
            }
        }
    }
    out.push(t.note("g = 2, 3").fact());

    let mut t = Tally::new(Area::Catalog, "sigma([t_x1,t_y1]) = [[1,1],[1,2]] has no block shape");
    let m = catalog::twist_x(1, 1)
        .and_then(|a| a.commutator(&catalog::twist_y(1, 1)?))
        .and_then(|h| catalog::sigma(&h));
    let want = snf::from_i64(&[vec![1, 1], vec![1, 2]]);
    t.check(m.as_ref() == Ok(&want), || format!("{m:?}"));
    t.check(
        m.as_ref().map(catalog::block_shape_classify) == Ok(BlockShape::None),
        || "shape".into(),
    );
    out.push(t.fact());

    let a22 = AlphabetSpec::new(2, 2).expect("valid");
    let show = |m, n| -> Vec<String> {
        enumerate_mn_commutators(&a22, m, n, true)
            .unwrap_or_default()
            .into_iter()
            .map(|(s, _)| {
                let mut names = s.iter().rev().map(|&l| a22.letter_name(l));
                let last = names.next().unwrap_or_default();
                names.fold(last, |acc, a| format!("[{a},{acc}]"))
            })
            .collect()
    };
    let mut t = Tally::new(Area::Words, "(m,n)-commutator lists for p = q = 2");
    let lists: [((usize, usize), Vec<&str>); 5] = [
        ((1, 0), vec!["x1", "x2"]),
        ((0, 1), vec!["y1", "y2"]),
        ((2, 0), vec!["[x1,x2]", "[x2,x1]"]),
        ((0, 2), vec!["[y1,y2]", "[y2,y1]"]),
        (
            (1, 1),
            vec![
                "[x1,y1]", "[x1,y2]", "[x2,y1]", "[x2,y2]", "[y1,x1]", "[y1,x2]", "[y2,x1]", "[y2,x2]",
            ],
        ),
    ];
    for ((m, n), want) in lists {
        let got = show(m, n);
        t.check(got == want, || format!("({m},{n}): {got:?}"));
    }
    let some21 = show(2, 1);
    for w in ["[x2,[x1,y2]]", "[x2,[x2,y1]]", "[x2,[x2,y2]]"] {
        t.check(some21.iter().any(|s| s == w), || format!("(2,1) lacks {w}"));
    }
    out.push(t.fact());
    out
}

// ---------------------------------------------------------------------------
// first Johnson images of the twist elements

/// `τ_1` of `[t_{x_ik}, t_{x_ij}]` and of `h_ij` at genus 3.
pub fn twist_wedges(bound: u32) -> Vec<Fact> {
    let g = 3;
    let mut a = Tally::new(Area::Johnson, "tau_1([t_x_ik, t_x_ij]) = a_i^a_j^a_k");
    for i in 1..=g {
        for j in 1..=g {
            for k in 1..=g {
                if i == j || j == k || i == k {
                    continue;
                }
                let want = Wedge3::parse(g, &format!("a{i}^a{j}^a{k}")).expect("literal");
                let got = catalog::twist_commutator(g, i, j, k)
                    .and_then(|h| johnson::tau_classical(&h, 1, bound))
                    .map(|t| t.wedge());
                t_check_wedge(&mut a, &got, &want, || format!("i,j,k = {i},{j},{k}"));
            }
        }
    }
    let mut b = Tally::new(Area::Johnson, "tau_1(h_ij) = b_i^a_i^a_j");
    for i in 1..=g {
        for j in 1..=g {
            if i == j {
                continue;
            }
            let want = Wedge3::parse(g, &format!("b{i}^a{i}^a{j}")).expect("literal");
            let got = catalog::h_pair(g, i, j)
                .and_then(|h| johnson::tau_classical(&h, 1, bound))
                .map(|t| t.wedge());
            t_check_wedge(&mut b, &got, &want, || format!("i,j = {i},{j}"));
        }
    }
    vec![a.note(format!("g = 3, bound {bound}")).fact(), b.note(format!("g = 3, bound {bound}")).fact()]
}

fn t_check_wedge(t: &mut Tally, got: &Result<Option<Wedge3>>, want: &Wedge3, case: impl FnOnce() -> String) {
    match got {
        Ok(Some(w)) if w == want => t.check(true, String::new),
        Ok(Some(w)) => t.fail(format!("{}: got {w}", case())),
        Ok(None) => t.fail(format!("{}: not a wedge", case())),
        Err(e) => t.fail(format!("{}: {e}", case())),
    }
}

// ---------------------------------------------------------------------------
// leading terms against Lie commutators

/// For `p,q <= max_pq` and `m+n <= max_total`: every nontrivial
/// (m,n)-commutator has the matching Lie commutator as its leading term, and
/// these span `Lie_{m,n}` over the integers.
pub fn leading_term_oracle(max_pq: usize, max_total: usize) -> Vec<Fact> {
    let mut cases = Vec::new();
    for p in 1..=max_pq {
        for q in 1..=max_pq {
            for d in 1..=max_total {
                for m in 0..=d {
                    cases.push((p, q, m, d - m));
                }
            }
        }
    }
    let results: Vec<(String, Result<filtration::SpanReport>)> = cases
        .par_iter()
        .map(|&(p, q, m, n)| {
            let alpha = AlphabetSpec::new(p, q).expect("valid");
            (format!("p={p} q={q} ({m},{n})"), filtration::graded_span_check(&alpha, (m, n)))
        })
        .collect();
    let mut lt = Tally::new(Area::Filtration, "leading term of each (m,n)-commutator is the Lie commutator");
    let mut span = Tally::new(Area::Filtration, "(m,n)-commutators span Lie_{m,n} with unit divisors");
    for (case, r) in results {
        match r {
            Ok(r) => {
                lt.check(r.witnesses.is_empty(), || format!("{case}: {}", r.witnesses.join(", ")));
                span.check(r.spanned, || format!("{case}: divisors {:?}", r.elementary_divisors));
            }
            Err(e) => {
                lt.fail(format!("{case}: {e}"));
                span.fail(format!("{case}: {e}"));
            }
        }
    }
    let note = format!("p,q <= {max_pq}, m+n <= {max_total}");
    vec![lt.note(note.clone()).fact(), span.note(note).fact()]
}

// ---------------------------------------------------------------------------
// compatibility of the Johnson maps on the catalog

struct EntryTaus {
    symplectic: Vec<(String, bool)>,
    classical: Vec<(String, bool)>,
    alternative: Vec<(String, bool)>,
    kernel: Vec<(String, bool)>,
    errors: Vec<String>,
}

fn entry_compatibility(e: &CatalogEntry, s: &Settings, max_total: i32, cmp_total: i32) -> EntryTaus {
    let mut r = EntryTaus {
        symplectic: Vec::new(),
        classical: Vec::new(),
        alternative: Vec::new(),
        kernel: Vec::new(),
        errors: Vec::new(),
    };
    let h = match e.to_aut() {
        Ok(h) => h,
        Err(err) => {
            r.errors.push(format!("{}: {err}", e.name));
            return r;
        }
    };
    let bound = s.bound.max((max_total + 2) as u32);
    let pr = match johnson::probe(&h, max_total, bound, s.battery) {
        Ok(p) => p,
        Err(err) => {
            r.errors.push(format!("{}: probe: {err}", e.name));
            return r;
        }
    };
    let admits_tau = |l: &ExtPair| {
        l.total() >= 1 && ((l.m >= 0 && l.n >= 0) || (l.m >= 2 && l.n == -1) || (l.n >= 2 && l.m == -1))
    };
    for level in pr.verified_all.iter().filter(|l| admits_tau(l)) {
        let case = |what: &str| format!("{} at {level}{what}", e.name);
        let t = match johnson::tau_at(&h, *level, bound, s.battery) {
            Ok(t) => t,
            Err(err) => {
                r.errors.push(format!("{}: {err}", case("")));
                continue;
            }
        };
        // free-mode entries need not fix the boundary word, so only surface
        // entries are held to the contraction condition
        if let (Mode::Surface, Some(ok)) = (e.mode, t.symplectic_ok) {
            r.symplectic.push((case(""), ok));
        }
        // a level strictly above in the same quadrant forces the value to vanish
        let above = [ExtPair::new(level.m + 1, level.n), ExtPair::new(level.m, level.n + 1)];
        if above.iter().any(|a| pr.is_verified(*a)) {
            r.kernel.push((case(""), t.value.is_zero()));
        }
        if level.total() > cmp_total {
            continue;
        }
        let total = level.total() as u32;
        match johnson::tau_classical(&h, total, bound.max(total + 2)) {
            Ok(c) => r.classical.push((case(""), freelie::j_map(&t.value) == c.value)),
            Err(err) => r.classical.push((format!("{}: {err}", case("")), false)),
        }
        let w = 2 * level.m + level.n;
        if w >= 1 {
            let w = w as u32;
            let alt = johnson::tau_alt(&h, w, bound.max(w + 2));
            let mapped = freelie::ja_map(&t.value, *level);
            match (alt, mapped) {
                (Ok(a), Ok(m)) => r.alternative.push((case(""), a.value == m)),
                (Err(err), _) | (_, Err(err)) => r.alternative.push((format!("{}: {err}", case("")), false)),
            }
        }
    }
    r
}

/// For every catalog element and every probe-verified level: the double
/// Johnson value is symplectic (levels up to total `max_total`), its
/// regrading equals the classical value and its weighted regrading equals
/// the alternative value (levels up to total `cmp_total`), and it vanishes
/// when a higher level is also verified.
pub fn compatibility(catalogs: &[(String, Vec<CatalogEntry>)], s: &Settings, max_total: i32, cmp_total: i32) -> Vec<Fact> {
    let mut sym = Tally::new(Area::Johnson, "double Johnson values are symplectic derivations");
    let mut cls = Tally::new(Area::Johnson, "regrading the double value gives the classical value");
    let mut alt = Tally::new(Area::Johnson, "weighted regrading gives the alternative value");
    let mut ker = Tally::new(Area::Johnson, "double value vanishes below a verified level");
    let mut errs = Tally::new(Area::Johnson, "double Johnson values exist at verified levels");
    let entries: Vec<&CatalogEntry> = catalogs.iter().flat_map(|(_, es)| es.iter()).collect();
    let results: Vec<EntryTaus> = entries
        .par_iter()
        .map(|e| entry_compatibility(e, s, max_total, cmp_total))
        .collect();
    for r in results {
        for (case, ok) in r.symplectic {
            sym.check(ok, || case);
        }
        for (case, ok) in r.classical {
            cls.check(ok, || case);
        }
        for (case, ok) in r.alternative {
            alt.check(ok, || case);
        }
        for (case, ok) in r.kernel {
            ker.check(ok, || case);
        }
        errs.check(r.errors.is_empty(), || r.errors.join("; "));
    }
    let note = format!("{} entries, bound {}", entries.len(), s.bound);
    vec![
        errs.note(note.clone()).fact(),
        sym.note(format!("surface entries, levels with m+n <= {max_total}")).fact(),
        cls.note(format!("levels with m+n <= {cmp_total}")).fact(),
        alt.note(format!("levels with m+n <= {cmp_total} and 2m+n >= 1")).fact(),
        ker.note(note).fact(),
    ]
}

// ---------------------------------------------------------------------------
// Magnus generators

/// All ten Magnus families at `(2,2)` and `(3,3)` verify their claimed
/// quadrant level; each family has a member refuting both levels above.
pub fn magnus_classification(s: &Settings) -> Vec<Fact> {
    let mut verified = Tally::new(Area::Catalog, "Magnus generators verify their quadrant level");
    let mut sharp = Tally::new(Area::Catalog, "each Magnus family has a member refuting both next levels");
    for (p, q) in [(2, 2), (3, 3)] {
        let gens = match catalog::magnus_generators(p, q) {
            Ok(g) => g,
            Err(e) => {
                verified.fail(format!("({p},{q}): {e}"));
                continue;
            }
        };
        // (family, case, (level verified, both next levels refuted))
        type Outcome = (u8, String, Result<(bool, bool)>);
        let results: Vec<Outcome> = gens
            .par_iter()
            .map(|e| {
                let fam = e.family.unwrap_or(0);
                let [m, n] = e.claims.level.unwrap_or([0, 0]);
                let level = ExtPair::new(m, n);
                let up = [ExtPair::new(m + 1, n), ExtPair::new(m, n + 1)];
                let max_total = level.total() + 1;
                let r = e.to_aut().and_then(|h| {
                    let pr = johnson::probe(&h, max_total, s.bound.max((max_total + 2) as u32), s.battery)?;
                    Ok((pr.is_verified(level), up.iter().all(|u| pr.is_refuted(*u))))
                });
                (fam, format!("({p},{q}) {} at {level}", e.name), r)
            })
            .collect();
        for fam in 1..=10u8 {
            let members: Vec<_> = results.iter().filter(|(f, ..)| *f == fam).collect();
            // families 5 and 8 need three distinct letters of one kind
            if members.is_empty() {
                continue;
            }
            let mut any_sharp = false;
            for (_, case, r) in members {
                match r {
                    Ok((v, up)) => {
                        verified.check(*v, || case.clone());
                        any_sharp |= *up;
                    }
                    Err(e) => verified.fail(format!("{case}: {e}")),
                }
            }
            sharp.check(any_sharp, || format!("({p},{q}) family {fam}"));
        }
    }
    vec![
        verified.note(format!("(p,q) = (2,2), (3,3), bound {}", s.bound)).fact(),
        sharp.note("every nonempty family at each size").fact(),
    ]
}

// ---------------------------------------------------------------------------
// Torelli reconstruction

/// Each Torelli element of a surface catalog is rebuilt, up to the kernel of
/// `τ_1`, from the quadrant generators of the same catalog.
pub fn torelli_reconstruction(catalogs: &[(String, Vec<CatalogEntry>)]) -> Vec<Fact> {
    let mut t = Tally::new(Area::Johnson, "Torelli elements split into the four quadrants");
    for (name, entries) in catalogs {
        if entries.iter().all(|e| e.mode != Mode::Surface) {
            continue;
        }
        let gens = match catalog::quadrant_generators(entries) {
            Ok(g) => g,
            Err(e) => {
                t.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let torelli = catalog::torelli_entries(entries);
        let results: Vec<(String, Result<johnson::Reconstruction>)> = torelli
            .par_iter()
            .map(|e| {
                let r = e.to_aut().and_then(|h| johnson::reconstruct_torelli(&h, &gens));
                (format!("{name}:{}", e.name), r)
            })
            .collect();
        for (case, r) in results {
            match r {
                Ok(r) => t.check(r.ok() && r.residual.is_zero(), || format!("{case}: residual {}", r.residual)),
                Err(e) => t.fail(format!("{case}: {e}")),
            }
        }
    }
    vec![t.note("residual tau_1 is zero").fact()]
}

// ---------------------------------------------------------------------------
// structural suites

/// Integers under the usual order: not good, since negatives sit below 0.
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
        match a.cmp(b) {
            std::cmp::Ordering::Less => Comparison::Le,
            std::cmp::Ordering::Greater => Comparison::Ge,
            std::cmp::Ordering::Equal => Comparison::Eq,
        }
    }
}

fn random_ordinal(r: &mut ChaCha8Rng, depth: u32) -> OrdinalCnf {
    let n = r.gen_range(0..=3);
    let mut exps: Vec<OrdinalCnf> = (0..n)
        .map(|_| {
            if depth > 0 && r.gen_bool(0.2) {
                random_ordinal(r, depth - 1)
            } else {
                OrdinalCnf::finite(r.gen_range(0..4))
            }
        })
        .collect();
    exps.sort();
    exps.dedup();
    exps.reverse();
    let terms = exps.into_iter().map(|e| (e, r.gen_range(1..4))).collect();
    OrdinalCnf::from_terms(terms).expect("decreasing exponents")
}

pub fn grading_suite(s: &Settings) -> Vec<Fact> {
    let mut out = Vec::new();
    let pairs: Vec<GradeIndex> = (0..4).flat_map(|m| (0..4).map(move |n| GradeIndex::Pair(m, n))).collect();
    let nats: Vec<GradeIndex> = (0..12).map(GradeIndex::Nat).collect();
    let mut r = rng(s.seed, 1);
    let ords: Vec<GradeIndex> = (0..14).map(|_| GradeIndex::Ordinal(random_ordinal(&mut r, 1))).collect();
    let instances: Vec<(MonoidInstance, &[GradeIndex])> = vec![
        (MonoidInstance::N, &nats),
        (MonoidInstance::N2Usual, &pairs),
        (MonoidInstance::N2Lex, &pairs),
        (MonoidInstance::N2Total, &pairs),
        (MonoidInstance::WeightedN { wx: 2, wy: 1 }, &pairs),
        (MonoidInstance::Ordinal, &ords),
    ];

    let mut good = Tally::new(Area::Grading, "shipped monoids are good ordered commutative monoids");
    let mut laws = Tally::new(Area::Grading, "monoid laws: associative, commutative, zero is neutral");
    let mut order = Tally::new(Area::Grading, "comparison is a partial order");
    for (inst, sample) in &instances {
        let v = check_good_axioms(inst, sample);
        good.check(v.is_empty(), || format!("{inst:?}: {:?}", v.first()));
        for a in sample.iter() {
            let zero = inst.zero();
            laws.check(monoid_add(*inst, &zero, a).as_ref() == Ok(a), || format!("{inst:?}: 0+{a}"));
            order.check(monoid_leq(*inst, a, a) == Ok(Comparison::Eq), || format!("{inst:?}: {a} vs itself"));
            for b in sample.iter() {
                let ab = monoid_add(*inst, a, b);
                laws.check(ab == monoid_add(*inst, b, a), || format!("{inst:?}: {a}+{b}"));
                let le_ab = monoid_leq(*inst, a, b).map(Comparison::is_le).unwrap_or(false);
                let le_ba = monoid_leq(*inst, b, a).map(Comparison::is_le).unwrap_or(false);
                order.check(!(le_ab && le_ba) || a == b, || format!("{inst:?}: antisymmetry {a},{b}"));
                for c in sample.iter() {
                    let l = ab.clone().and_then(|x| monoid_add(*inst, &x, c));
                    let rr = monoid_add(*inst, b, c).and_then(|x| monoid_add(*inst, a, &x));
                    laws.check(l == rr, || format!("{inst:?}: ({a}+{b})+{c}"));
                    let le_bc = monoid_leq(*inst, b, c).map(Comparison::is_le).unwrap_or(false);
                    let le_ac = monoid_leq(*inst, a, c).map(Comparison::is_le).unwrap_or(false);
                    order.check(!(le_ab && le_bc) || le_ac, || format!("{inst:?}: transitivity {a},{b},{c}"));
                }
            }
        }
    }
    out.push(good.fact());
    out.push(laws.fact());
    out.push(order.fact());

    let bad = check_good_axioms(&Integers, &[-2, -1, 0, 1, 2]);
    out.push(single(
        Area::Grading,
        "the integers fail the axiom 0 <= a",
        bad.iter().any(|v| v.axiom == "0 <= a"),
        format!("{} violations", bad.len()),
    ));

    let mut canc = Tally::new(Area::Grading, "natural sum is cancellative");
    let mut r = rng(s.seed, 2);
    for _ in 0..s.samples {
        let (a, a2, b) = (random_ordinal(&mut r, 1), random_ordinal(&mut r, 1), random_ordinal(&mut r, 1));
        let same = hessenberg_sum(&a, &b) == hessenberg_sum(&a2, &b);
        canc.check(!same || a == a2, || format!("{a}, {a2}, {b}"));
        canc.check(hessenberg_sum(&a, &b) == hessenberg_sum(&b, &a), || format!("commutes {a}, {b}"));
    }
    out.push(canc.note(format!("{} random triples", s.samples)).fact());

    let mut ex = Tally::new(Area::Grading, "worked grade comparisons and sums");
    let p = |m, n| GradeIndex::Pair(m, n);
    ex.check(monoid_add(MonoidInstance::N2Usual, &p(1, 0), &p(0, 1)) == Ok(p(1, 1)), || "(1,0)+(0,1)".into());
    ex.check(monoid_leq(MonoidInstance::N2Usual, &p(1, 0), &p(1, 2)) == Ok(Comparison::Le), || "(1,0) vs (1,2)".into());
    ex.check(
        monoid_leq(MonoidInstance::N2Usual, &p(1, 0), &p(0, 1)) == Ok(Comparison::Incomparable),
        || "(1,0) vs (0,1)".into(),
    );
    ex.check(monoid_leq(MonoidInstance::N2Lex, &p(0, 5), &p(1, 0)) == Ok(Comparison::Le), || "lex (0,5) vs (1,0)".into());
    for (a, b, want) in [("0", "w^2*3+1", "w^2*3+1"), ("w^2", "w*3+1", "w^2+w*3+1"), ("w", "w", "w*2")] {
        let got = OrdinalCnf::parse(a).and_then(|x| OrdinalCnf::parse(b).map(|y| hessenberg_sum(&x, &y).to_string()));
        ex.check(got.as_deref() == Ok(want), || format!("{a} # {b}: {got:?}"));
    }
    out.push(ex.fact());
    out
}

pub fn words_suite(s: &Settings) -> Vec<Fact> {
    let alpha = AlphabetSpec::new(2, 2).expect("valid");
    let mut r = rng(s.seed, 3);
    let mut ids = Tally::new(Area::Words, "commutator identities hold as reduced words");
    for _ in 0..s.samples {
        let a = random_word(&mut r, &alpha, 6);
        let b = random_word(&mut r, &alpha, 6);
        let c = random_word(&mut r, &alpha, 6);
        let show = || format!("a={} b={} c={}", a.display(&alpha), b.display(&alpha), c.display(&alpha));
        ids.check(commutator(&a, &b).inverse() == commutator(&b, &a), || format!("[a,b]^-1: {}", show()));
        ids.check(
            commutator(&a.mul(&b), &c) == commutator(&b, &c).conjugate_by(&a).mul(&commutator(&a, &c)),
            || format!("[ab,c]: {}", show()),
        );
        ids.check(
            commutator(&a, &b.mul(&c)) == commutator(&a, &b).mul(&commutator(&a, &c).conjugate_by(&b)),
            || format!("[a,bc]: {}", show()),
        );
        let hall = commutator(&commutator(&a, &b), &c.conjugate_by(&b))
            .mul(&commutator(&commutator(&b, &c), &a.conjugate_by(&c)))
            .mul(&commutator(&commutator(&c, &a), &b.conjugate_by(&a)));
        ids.check(hall.is_empty(), || format!("Hall-Witt: {}", show()));
    }

    let mut count = Tally::new(Area::Words, "(m,n)-commutator count is C(m+n,m) p^m q^n");
    for p in 1..=2usize {
        for q in 1..=2usize {
            let al = AlphabetSpec::new(p, q).expect("valid");
            for d in 1..=4usize {
                for m in 0..=d {
                    let n = d - m;
                    let want = binom(d, m) * p.pow(m as u32) * q.pow(n as u32);
                    let got = enumerate_mn_commutators(&al, m, n, false).map(|v| v.len());
                    count.check(got == Ok(want), || format!("p={p} q={q} ({m},{n}): {got:?}"));
                }
            }
        }
    }

    let mut apply = Tally::new(Area::Words, "automorphisms act letterwise and respect reduction");
    let h = FreeGroupAut::from_images(
        alpha,
        &[(alpha.x(1), Word::parse(&alpha, "y1^-1 x1 y1").expect("literal"))],
        &[(alpha.x(1), Word::parse(&alpha, "y1 x1 y1^-1").expect("literal"))],
    )
    .expect("valid table");
    let k = alpha.rank() as i32;
    for _ in 0..s.samples / 4 {
        let raw: Vec<i32> = (0..r.gen_range(0..10))
            .map(|_| {
                let l = r.gen_range(1..=k);
                if r.gen_bool(0.5) {
                    l
                } else {
                    -l
                }
            })
            .collect();
        let reduced = Word::reduce(&alpha, &raw).expect("in range");
        let mut letterwise = Vec::new();
        for &l in &raw {
            let img = &h.fwd_table()[alpha.symbol(l)];
            let img = if l > 0 { img.clone() } else { img.inverse() };
            letterwise.extend_from_slice(img.letters());
        }
        let direct = Word::reduce(&alpha, &letterwise).expect("in range");
        apply.check(h.apply(&reduced) == direct, || format!("{raw:?}"));
    }

    let mut ex = Tally::new(Area::Words, "worked brackets and images");
    let w = |t: &str| Word::parse(&alpha, t).expect("literal");
    ex.check(multibracket(&[w("x1")]) == Ok(w("x1")), || "[x1]".into());
    ex.check(
        multibracket(&[w("x2"), w("x2"), w("y1")]) == Ok(commutator(&w("x2"), &commutator(&w("x2"), &w("y1")))),
        || "[x2,x2,y1]".into(),
    );
    ex.check(
        commutator(&w("x1 x2"), &w("y1")) == commutator(&w("x2"), &w("y1")).conjugate_by(&w("x1")).mul(&commutator(&w("x1"), &w("y1"))),
        || "[x1x2,y1]".into(),
    );
    ex.check(h.apply(&w("x1")) == w("y1^-1 x1 y1"), || "phi_x1y1(x1)".into());
    ex.check(h.compose(&h).map(|hh| hh.apply(&w("x1"))) == Ok(w("y1^-2 x1 y1^2")), || "phi_x1y1^2(x1)".into());
    ex.check(
        crate::words::boundary_word(1).map(|b| b.display(&AlphabetSpec::surface(1).unwrap()).to_string()).as_deref()
            == Ok("x1^-1 y1^-1 x1 y1"),
        || "boundary g=1".into(),
    );
    vec![
        ids.note(format!("{} random triples", s.samples)).fact(),
        count.fact(),
        apply.fact(),
        ex.fact(),
    ]
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn magnus_suite(s: &Settings) -> Vec<Fact> {
    let alpha = AlphabetSpec::new(2, 2).expect("valid");
    let mut r = rng(s.seed, 4);
    let unit = Weights::UNIT;
    let alt = Weights::ALT;
    let n = (s.samples / 4).max(1);
    let mut mult = Tally::new(Area::Magnus, "expansion is multiplicative and inverts");
    let mut trunc = Tally::new(Area::Magnus, "re-truncation is coherent");
    for _ in 0..n {
        let u = random_word(&mut r, &alpha, 6);
        let v = random_word(&mut r, &alpha, 6);
        for (wt, bound) in [(unit, 4u32), (alt, 5u32)] {
            let eu = magnus::magnus_expand(&alpha, &u, bound, wt).expect("expands");
            let ev = magnus::magnus_expand(&alpha, &v, bound, wt).expect("expands");
            let euv = magnus::magnus_expand(&alpha, &u.mul(&v), bound, wt).expect("expands");
            let show = || format!("u={} v={} {wt:?}", u.display(&alpha), v.display(&alpha));
            mult.check(eu.mul(&ev).as_ref() == Ok(&euv), show);
            let einv = magnus::magnus_expand(&alpha, &u.inverse(), bound, wt).expect("expands");
            mult.check(eu.mul(&einv).is_ok_and(|x| x.is_one()), || format!("u={} inverse", u.display(&alpha)));
            mult.check(eu.inverse().as_ref() == Ok(&einv), || format!("u={} series inverse", u.display(&alpha)));
            for lower in 1..bound {
                let direct = magnus::magnus_expand(&alpha, &u, lower, wt).expect("expands");
                trunc.check(eu.truncate(lower).as_ref() == Ok(&direct), || {
                    format!("u={} {wt:?} {bound}->{lower}", u.display(&alpha))
                });
            }
        }
    }

    let mut shape = Tally::new(Area::Magnus, "(m,n)-commutators expand to 1 + (bidegree >= (m,n))");
    for p in 1..=2 {
        for q in 1..=2 {
            let al = AlphabetSpec::new(p, q).expect("valid");
            for d in 1..=4usize {
                for m in 0..=d {
                    let nn = d - m;
                    for (seq, c) in enumerate_mn_commutators(&al, m, nn, true).unwrap_or_default() {
                        let ser = magnus::magnus_expand(&al, &c, (d + 1) as u32, unit).expect("expands");
                        let ok = magnus::series_membership(&ser, (m, nn)).is_verified()
                            && (0..d).all(|t| (0..=t).all(|i| ser.bidegree_part(i, t - i).is_ok_and(|x| x.is_empty())));
                        shape.check(ok, || format!("p={p} q={q} {seq:?}"));
                    }
                }
            }
        }
    }

    let mut gamma = Tally::new(Area::Magnus, "brackets of k letters lie in Gamma_k");
    for _ in 0..n {
        let k = r.gen_range(2..=4usize);
        let len = r.gen_range(k..=k + 1);
        let ws: Vec<Word> = (0..len)
            .map(|_| {
                let l = r.gen_range(1..=alpha.rank() as i32);
                Word::letter(if r.gen_bool(0.5) { l } else { -l })
            })
            .collect();
        let a = multibracket(&ws).expect("nonempty");
        let b = multibracket(&ws[1..].iter().chain(&ws[..1]).cloned().collect::<Vec<_>>()).expect("nonempty");
        let prod = a.mul(&b);
        gamma.check(magnus::gamma_membership(&alpha, &prod, k as u32) == Ok(true), || {
            format!("k={k} {}", prod.display(&alpha))
        });
    }
    gamma.check(
        magnus::gamma_membership(&alpha, &Word::identity(), 5) == Ok(true),
        || "identity".into(),
    );

    let mut ex = Tally::new(Area::Magnus, "worked expansions and weighted levels");
    let a11 = AlphabetSpec::new(1, 1).expect("valid");
    let w = |t: &str| Word::parse(&a11, t).expect("literal");
    let inv = magnus::magnus_expand(&a11, &w("x1^-1"), 3, unit).map(|x| x.to_string());
    ex.check(inv.as_deref() == Ok("1 - X1 + X1^2 - X1^3"), || format!("x1^-1: {inv:?}"));
    let c = commutator(&w("x1"), &w("y1"));
    ex.check(magnus::gamma_membership(&a11, &c, 2) == Ok(true), || "[x1,y1] in Gamma_2".into());
    ex.check(magnus::gamma_membership(&a11, &c, 3) == Ok(false), || "[x1,y1] not in Gamma_3".into());
    let cc = commutator(&w("x1"), &c);
    ex.check(magnus::gamma_membership(&a11, &cc, 3) == Ok(true), || "[x1,[x1,y1]] in Gamma_3".into());
    ex.check(
        magnus::dmn_membership(&a11, &c, (1, 1), 4).is_ok_and(|v| v.is_verified()),
        || "[x1,y1] at (1,1)".into(),
    );
    ex.check(
        magnus::dmn_membership(&a11, &w("x1"), (0, 1), 3).is_ok_and(|v| !v.is_verified()),
        || "x1 refuted at (0,1)".into(),
    );
    for (word, want) in [("x1", 2u32), ("y1", 1)] {
        let got = magnus::weighted_filtration_level(&a11, &w(word), alt, 4);
        ex.check(got == Ok(Some(want)), || format!("{word}: {got:?}"));
    }
    let got = magnus::weighted_filtration_level(&a11, &c, alt, 4);
    ex.check(got == Ok(Some(3)), || format!("[x1,y1]: {got:?}"));
    let one = Series::one(&a11, 2, unit).expect("valid");
    let x = Series::from_poly(&a11, 2, unit, &magnus::parse_poly(&a11, "X1").unwrap()).unwrap();
    let geo = Series::from_poly(&a11, 2, unit, &magnus::parse_poly(&a11, "-X1 + X1^2").unwrap()).unwrap();
    let prod = one.add(&x).and_then(|a| a.mul(&one.add(&geo)?));
    ex.check(prod.is_ok_and(|p| p.is_one()), || "(1+X1)(1-X1+X1^2)".into());

    vec![
        mult.note(format!("{n} random pairs, unit and (2,1) weights")).fact(),
        trunc.fact(),
        shape.note("p,q <= 2, m+n <= 4").fact(),
        gamma.fact(),
        ex.fact(),
    ]
}

fn random_derivation(r: &mut ChaCha8Rng, alpha: &AlphabetSpec, m: usize, n: usize) -> Derivation {
    let values = (0..alpha.rank())
        .map(|s| {
            if s < alpha.p {
                random_lie(r, alpha, (m + 1, n))
            } else {
                random_lie(r, alpha, (m, n + 1))
            }
        })
        .collect();
    Derivation::new(alpha, values).expect("one value per generator")
}

fn kernel_rows(alpha: &AlphabetSpec, level: ExtPair, ker: &[Derivation]) -> snf::Matrix {
    let slot = |s: usize| -> Option<freelie::Bidegree> {
        let (m, n) = if s < alpha.p { (level.m + 1, level.n) } else { (level.m, level.n + 1) };
        (m >= 0 && n >= 0).then_some((m as usize, n as usize))
    };
    ker.iter()
        .map(|d| {
            (0..alpha.rank())
                .filter_map(|s| slot(s).map(|bd| d.value(s).component(bd)))
                .flatten()
                .collect()
        })
        .collect()
}

pub fn freelie_suite(s: &Settings) -> Vec<Fact> {
    let mut r = rng(s.seed, 5);
    let n = (s.samples / 20).max(1);
    let mut lie = Tally::new(Area::Freelie, "bracket is bilinear, antisymmetric and satisfies Jacobi");
    let mut proj = Tally::new(Area::Freelie, "projection inverts the embedding into the tensor algebra");
    let grades: Vec<freelie::Bidegree> = (1..=3).flat_map(|d| (0..=d).map(move |m| (m, d - m))).collect();
    for (p, q) in [(1, 1), (2, 1), (2, 2)] {
        let alpha = AlphabetSpec::new(p, q).expect("valid");
        for _ in 0..n {
            let mut pick = || grades[r.gen_range(0..grades.len())];
            let (gu, gv, gw) = (pick(), pick(), pick());
            if gu.0 + gu.1 + gv.0 + gv.1 + gw.0 + gw.1 > 6 {
                continue;
            }
            let u = random_lie(&mut r, &alpha, gu);
            let u2 = random_lie(&mut r, &alpha, gu);
            let v = random_lie(&mut r, &alpha, gv);
            let w = random_lie(&mut r, &alpha, gw);
            let case = || format!("p={p} q={q} grades {gu:?} {gv:?} {gw:?}");
            lie.check(u.bracket(&v) == v.bracket(&u).neg(), case);
            lie.check(u.bracket(&u).is_zero(), case);
            lie.check(u.add(&u2).bracket(&v) == u.bracket(&v).add(&u2.bracket(&v)), case);
            let jac = u.bracket(&v.bracket(&w)).add(&v.bracket(&w.bracket(&u))).add(&w.bracket(&u.bracket(&v)));
            lie.check(jac.is_zero(), case);
            proj.check(freelie::lie_project(&alpha, &u.mu()).as_ref() == Ok(&u), case);
        }
    }

    let mut rank = Tally::new(Area::Freelie, "rank of Lie_{m,n} counts Lyndon words");
    for (p, q) in [(1, 1), (2, 1), (2, 2)] {
        let alpha = AlphabetSpec::new(p, q).expect("valid");
        for d in 1..=6usize {
            let k = (p + q) as u64;
            let mut counts = vec![0usize; d + 1];
            for code in 0..k.pow(d as u32) {
                let mut c = code;
                let w: Vec<u8> = (0..d)
                    .map(|_| {
                        let s = (c % k) as u8;
                        c /= k;
                        s
                    })
                    .collect();
                if freelie::is_lyndon(&w) {
                    counts[w.iter().filter(|&&s| (s as usize) < p).count()] += 1;
                }
            }
            for (m, want) in counts.iter().enumerate() {
                let got = freelie::lie_rank(&alpha, (m, d - m));
                rank.check(got == *want, || format!("p={p} q={q} ({m},{}): {got} vs {want}", d - m));
            }
        }
    }
    let a22 = AlphabetSpec::new(2, 2).expect("valid");
    rank.check(freelie::lie_rank(&a22, (2, 1)) == 8, || "p=q=2 (2,1) is 8".into());

    let mut nested = Tally::new(Area::Freelie, "right-nested brackets [a,..,[a,b]] span Lie_{m,1}");
    for (p, q) in [(1, 1), (2, 2)] {
        let alpha = AlphabetSpec::new(p, q).expect("valid");
        for m in 1..=4usize {
            let mut rows = Vec::new();
            for code in 0..p.pow(m as u32) {
                for j in 1..=q {
                    let mut c = code;
                    let mut e = LieElement::b(&alpha, j);
                    for _ in 0..m {
                        e = LieElement::a(&alpha, c % p + 1).bracket(&e);
                        c /= p;
                    }
                    rows.push(e.component((m, 1)));
                }
            }
            let want = freelie::lie_rank(&alpha, (m, 1));
            let ok = snf::rows_span_lattice(&rows, want);
            nested.check(ok, || format!("p={p} q={q} m={m}"));
        }
    }

    let mut xi = Tally::new(Area::Freelie, "contraction equals the derivation applied to Omega");
    let mut xi_n = 0;
    for g in 1..=2usize {
        let alpha = AlphabetSpec::surface(g).expect("valid");
        let om = freelie::omega(g).expect("surface");
        for (m, nn) in [(1, 0), (0, 1), (1, 1), (2, 0)] {
            for _ in 0..(n / 4).max(2) {
                let d = random_derivation(&mut r, &alpha, m, nn);
                let ok = freelie::xi_contract(&d).is_ok_and(|x| x == freelie::derivation_apply(&d, &om));
                xi.check(ok, || format!("g={g} ({m},{nn}): {d}"));
                xi_n += 1;
            }
        }
    }

    let mut ker = Tally::new(Area::Freelie, "derivation kernels are saturated and contract to zero");
    for (g, level, want) in [
        (2, ExtPair::new(2, -1), Some(0)),
        (3, ExtPair::new(2, -1), Some(1)),
        (2, ExtPair::new(1, 0), Some(2)),
        (2, ExtPair::new(0, 1), Some(2)),
        (1, ExtPair::new(1, 1), None),
        (2, ExtPair::new(1, 1), None),
        (2, ExtPair::new(-1, 2), Some(0)),
    ] {
        let alpha = AlphabetSpec::surface(g).expect("valid");
        match freelie::dmn_kernel(&alpha, level) {
            Ok(k) => {
                if let Some(w) = want {
                    ker.check(k.len() == w, || format!("g={g} {level}: rank {}", k.len()));
                }
                let rows = kernel_rows(&alpha, level, &k);
                let divs = snf::smith_diagonal(&rows);
                ker.check(divs.len() == k.len() && divs.iter().all(One::is_one), || {
                    format!("g={g} {level}: divisors {divs:?}")
                });
                let interior = level.m >= 0 && level.n >= 0;
                for d in k.iter().filter(|_| interior) {
                    ker.check(freelie::xi_contract(d).is_ok_and(|x| x.is_zero()), || format!("g={g} {level}: {d}"));
                }
            }
            Err(e) => ker.fail(format!("g={g} {level}: {e}")),
        }
    }

    let mut wedge = Tally::new(Area::Freelie, "wedge encoding roundtrips on a basis of the third exterior power");
    for g in 1..=2usize {
        let k = (2 * g) as u8;
        for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    let w = Wedge3::basis(g, a, b, c);
                    let back = freelie::wedge3_encode(&w).and_then(|d| freelie::wedge3_decode(&d));
                    wedge.check(back.as_ref() == Ok(&w), || format!("{w}"));
                }
            }
        }
    }
    vec![
        lie.note(format!("{n} random triples per alphabet")).fact(),
        proj.fact(),
        rank.note("p,q <= 2, m+n <= 6").fact(),
        nested.note("m <= 4").fact(),
        xi.note(format!("{xi_n} random derivations")).fact(),
        ker.fact(),
        wedge.fact(),
    ]
}

pub fn filtration_suite(s: &Settings) -> Vec<Fact> {
    let mut out = Vec::new();
    let mut gamma = Tally::new(Area::Filtration, "Lie_m(H) is the direct sum of the Lie_{i,j} with i+j = m");
    let cases: Vec<(usize, usize)> = (1..=2).flat_map(|g| (1..=6).map(move |m| (g, m))).collect();
    let reports: Vec<_> = cases
        .par_iter()
        .map(|&(g, m)| {
            let alpha = AlphabetSpec::surface(g).expect("valid");
            ((g, m), filtration::gamma_decomposition_check(&alpha, m))
        })
        .collect();
    for ((g, m), rep) in reports {
        match rep {
            Ok(rep) => gamma.check(rep.ok(), || format!("g={g} m={m}: {}", rep.to_json())),
            Err(e) => gamma.fail(format!("g={g} m={m}: {e}")),
        }
    }
    out.push(gamma.note("g <= 2, m <= 6").fact());

    let alpha = AlphabetSpec::new(2, 2).expect("valid");
    let mut r = rng(s.seed, 6);
    let mut hom = Tally::new(Area::Filtration, "leading terms add, negate on inverses and ignore conjugation");
    for mn in [(1, 1), (2, 1), (1, 2), (2, 0)] {
        let comms = enumerate_mn_commutators(&alpha, mn.0, mn.1, true).unwrap_or_default();
        let bound = (mn.0 + mn.1 + 1) as u32;
        for _ in 0..(s.samples / 40).max(1) {
            let c1 = &comms[r.gen_range(0..comms.len())].1;
            let c2 = &comms[r.gen_range(0..comms.len())].1;
            let u = random_word(&mut r, &alpha, 4);
            let v = random_word(&mut r, &alpha, 4);
            let w1 = c1.conjugate_by(&u);
            let w2 = c2.conjugate_by(&v);
            let lt = |w: &Word| filtration::leading_term(&alpha, w, mn, bound).ok().and_then(|t| t.value);
            let (l1, l2) = (lt(&w1), lt(&w2));
            let case = || format!("{mn:?} {} / {}", w1.display(&alpha), w2.display(&alpha));
            match (l1, l2) {
                (Some(a), Some(b)) => {
                    hom.check(lt(&w1.mul(&w2)) == Some(a.add(&b)), case);
                    hom.check(lt(&w1.inverse()) == Some(a.neg()), case);
                    hom.check(lt(c1) == Some(a), case);
                }
                _ => hom.fail(format!("{}: not verified", case())),
            }
        }
    }
    out.push(hom.fact());

    let mut ev = Tally::new(Area::Filtration, "easy inclusion K_{m,n} in K_{m,0} and K_{0,n} at the model level");
    for (p, q, mn, want) in [(2, 2, (1, 1), Some(8)), (1, 1, (2, 1), None)] {
        let al = AlphabetSpec::new(p, q).expect("valid");
        match filtration::intersection_evidence(&al, mn, 4) {
            Ok(rep) => {
                ev.check(rep.failures.is_empty() && rep.easy_inclusion_passes == rep.commutators, || {
                    format!("p={p} q={q} {mn:?}: {:?}", rep.failures)
                });
                if let Some(w) = want {
                    ev.check(rep.commutators == w, || format!("p={p} q={q}: {} commutators", rep.commutators));
                }
            }
            Err(e) => ev.fail(format!("p={p} q={q} {mn:?}: {e}")),
        }
    }
    let degenerate = filtration::intersection_evidence(&alpha, (2, 0), 4);
    ev.check(matches!(degenerate, Err(Error::InvalidDegree(_))), || "(2,0) accepted".into());
    out.push(ev.note("no claim about the group-level equality").fact());
    out
}

// ---------------------------------------------------------------------------
// catalog and Johnson extras

/// Every catalog entry passes validation at the configured bound.
pub fn catalog_validation(catalogs: &[(String, Vec<CatalogEntry>)], s: &Settings) -> Vec<Fact> {
    let mut out = Vec::new();
    for (name, entries) in catalogs {
        let mut t = Tally::new(Area::Catalog, format!("catalog {name} entries pass validation"));
        let reports = catalog::validate_all(entries, s.bound, s.battery);
        for rep in reports {
            let bad: Vec<String> = rep
                .failures()
                .iter()
                .map(|c| format!("{}: {} ({})", rep.name, c.claim, c.detail))
                .collect();
            t.check(bad.is_empty(), || bad.join("; "));
        }
        out.push(t.note(format!("{} entries, bound {}", entries.len(), s.bound)).fact());
    }
    out
}

/// Twist-group entries: `[h,y]` lies in (1,0) and `[h,x]` in (2,0), and
/// mirrored for the parallel twists.
pub fn twist_group_shadow(catalogs: &[(String, Vec<CatalogEntry>)], s: &Settings) -> Vec<Fact> {
    let mut t = Tally::new(Area::Catalog, "twist-group commutators [h,y] in (1,0) and [h,x] in (2,0)");
    for (name, entries) in catalogs {
        for e in entries {
            let dual = match e.claims.shape {
                Some(BlockShape::T) => false,
                Some(BlockShape::TPrime) => true,
                _ => continue,
            };
            let h = match e.to_aut() {
                Ok(h) => h,
                Err(err) => {
                    t.fail(format!("{name}:{}: {err}", e.name));
                    continue;
                }
            };
            let alpha = *h.alphabet();
            for l in alpha.generators() {
                let c = h.act_commutator(&Word::letter(l));
                let x = alpha.is_x(l);
                let mn = match (x, dual) {
                    (false, false) => (1, 0),
                    (true, false) => (2, 0),
                    (true, true) => (0, 1),
                    (false, true) => (0, 2),
                };
                let ok = magnus::dmn_membership(&alpha, &c, mn, s.bound).is_ok_and(|v| v.is_verified());
                t.check(ok, || format!("{name}:{} on {}", e.name, alpha.letter_name(l)));
            }
        }
    }
    vec![t.fact()]
}

/// Additivity of the double maps, and invariance of levels under Goeritz
/// conjugation, on small samples at genus 3.
pub fn johnson_extras(s: &Settings) -> Vec<Fact> {
    let g = 3;
    let mut add = Tally::new(Area::Johnson, "double Johnson maps are additive at a fixed level");
    let level10 = ExtPair::new(1, 0);
    let level01 = ExtPair::new(0, 1);
    let tau = |h: &FreeGroupAut, l: ExtPair| johnson::tau_at(h, l, s.bound.max(4), s.battery).map(|t| t.value);
    type Pair = Result<(FreeGroupAut, FreeGroupAut)>;
    let pairs: Vec<(&str, Pair, ExtPair)> = vec![
        ("h_12 h_21", catalog::h_pair(g, 1, 2).and_then(|a| Ok((a, catalog::h_pair(g, 2, 1)?))), level10),
        ("h_23 h_12_3", catalog::h_pair(g, 2, 3).and_then(|a| Ok((a, catalog::h_triple(g, 1, 2, 3)?))), level10),
        (
            "h_12' h_31'",
            catalog::h_pair(g, 1, 2)
                .and_then(|a| catalog::mirrored(&a))
                .and_then(|a| Ok((a, catalog::mirrored(&catalog::h_pair(g, 3, 1)?)?))),
            level01,
        ),
    ];
    for (name, p, l) in pairs {
        let r = p.and_then(|(a, b)| {
            let ab = a.compose(&b)?;
            Ok(tau(&ab, l)? == tau(&a, l)?.add(&tau(&b, l)?))
        });
        add.check(r == Ok(true), || format!("{name} at {l}: {r:?}"));
    }
    let l11 = ExtPair::new(1, 1);
    let r = catalog::twist_delta(g).and_then(|d| Ok(tau(&d.compose(&d)?, l11)? == tau(&d, l11)?.scale(&BigInt::from(2))));
    add.check(r == Ok(true), || format!("t_delta^2 at (1,1): {r:?}"));

    let mut inv = Tally::new(Area::Johnson, "levels are invariant under Goeritz conjugation");
    let conj: Vec<(&str, Result<FreeGroupAut>)> = vec![
        ("phi_13", catalog::phi(g, 1, 3)),
        ("knob_2", catalog::knob(g, 2)),
        ("swap_1", catalog::handle_swap(g, 1)),
    ];
    let targets: Vec<(&str, Result<FreeGroupAut>, ExtPair)> = vec![
        ("h_12", catalog::h_pair(g, 1, 2), level10),
        ("h_21'", catalog::h_pair(g, 2, 1).and_then(|h| catalog::mirrored(&h)), level01),
        ("t_delta", catalog::twist_delta(g), l11),
    ];
    for (fname, f) in &conj {
        for (hname, h, l) in &targets {
            let r = match (f, h) {
                (Ok(f), Ok(h)) => h.conjugate_by(f).and_then(|c| {
                    let pr = johnson::probe(&c, l.total(), s.bound.max((l.total() + 2) as u32), s.battery)?;
                    Ok(pr.is_verified(*l))
                }),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            inv.check(r == Ok(true), || format!("{fname} {hname} {fname}^-1 at {l}: {r:?}"));
        }
    }
    vec![add.fact(), inv.fact()]
}

// ---------------------------------------------------------------------------
// the full run

fn load_catalogs() -> (Vec<(String, Vec<CatalogEntry>)>, Option<Fact>) {
    match catalog::default_catalog() {
        Ok(c) => (c, None),
        Err(e) => (
            Vec::new(),
            Some(single(Area::Catalog, "default catalog loads", false, e.to_string())),
        ),
    }
}

/// Runs every group touching the given areas and keeps the facts in scope.
pub fn run(scope: &[Area], s: &Settings) -> Report {
    let wants = |areas: &[Area]| areas.iter().any(|a| scope.contains(a));
    let needs_catalog = wants(&[Area::Johnson, Area::Catalog]);
    let (catalogs, load_error) = if needs_catalog { load_catalogs() } else { (Vec::new(), None) };
    let mut facts = Vec::new();
    facts.extend(load_error);
    if wants(&[Area::Grading, Area::Words, Area::Magnus, Area::Catalog]) {
        facts.extend(worked_values());
    }
    if wants(&[Area::Grading]) {
        facts.extend(grading_suite(s));
    }
    if wants(&[Area::Words]) {
        facts.extend(words_suite(s));
    }
    if wants(&[Area::Magnus]) {
        facts.extend(magnus_suite(s));
    }
    if wants(&[Area::Freelie]) {
        facts.extend(freelie_suite(s));
    }
    if wants(&[Area::Filtration]) {
        facts.extend(leading_term_oracle(2, 5));
        facts.extend(filtration_suite(s));
    }
    if wants(&[Area::Johnson]) {
        facts.extend(twist_wedges(4));
        facts.extend(compatibility(&catalogs, s, 4, 3));
        facts.extend(torelli_reconstruction(&catalogs));
        facts.extend(johnson_extras(s));
    }
    if wants(&[Area::Catalog]) {
        facts.extend(catalog_validation(&catalogs, s));
        facts.extend(twist_group_shadow(&catalogs, s));
        facts.extend(magnus_classification(s));
    }
    facts.retain(|f| scope.contains(&f.area));
    Report { facts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values_pass() {
        for f in worked_values() {
            assert!(f.passed, "{}: {}", f.anchor, f.detail);
        }
    }

    #[test]
    fn tally_reports_failures() {
        let mut t = Tally::new(Area::Words, "x");
        t.check(true, String::new);
        t.check(false, || "bad case".into());
        let f = t.fact();
        assert!(!f.passed);
        assert_eq!(f.checks, 2);
        assert_eq!(f.detail, "bad case");
        assert!(!Tally::new(Area::Words, "empty").fact().passed);
    }

    #[test]
    fn scope_parsing() {
        assert_eq!("grading".parse::<Area>().unwrap(), Area::Grading);
        assert!("nope".parse::<Area>().is_err());
    }

    #[test]
    fn grading_scope_runs_only_grading() {
        let s = Settings {
            samples: 50,
            ..Settings::default()
        };
        let r = run(&[Area::Grading], &s);
        assert!(r.facts.iter().all(|f| f.area == Area::Grading));
        assert!(r.passed(), "{}", r.to_text());
    }
}
