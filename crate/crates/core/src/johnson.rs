//! Johnson homomorphisms on free-group automorphisms: the classical `τ_n`,
//! the double `τ_{m,n}`, the edge maps `τ_{m,-1}` and `τ_{-1,n}`, and the
//! weighted `τ^a_m`. Also filtration-level probing and the reconstruction of
//! a Torelli element from the quadrant split of its first Johnson image.
//!
//! Values are derivations given by their values on generators: `d(a_i)` is
//! the leading term of `[h,x_i]` and `d(b_i)` that of `[h,y_i]`. In tensor
//! form this is `Σ a_i⊗lt[h,y_i] - Σ b_i⊗lt[h,x_i]`, so the minus sign on the
//! x-side lives in the tensor identification, not in the values.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filtration::big_json;
use crate::freelie::{lie_project, wedge3_decode, xi_contract, Derivation, Wedge3};
use crate::grading::ExtPair;
use crate::magnus::{AutExpansion, Monomial, Series, Weights};
use crate::words::{AlphabetSpec, FreeGroupAut, Word};

pub const DEFAULT_BOUND: u32 = 6;
pub const DEFAULT_BATTERY: usize = 8;
pub const DEFAULT_SEED: u64 = 0;
/// Longest random conjugator in a battery.
pub const MAX_CONJUGATOR_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauKind {
    Classical(u32),
    Double(ExtPair),
    Edge(ExtPair),
    Alternative(u32),
}

impl fmt::Display for TauKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauKind::Classical(n) => write!(f, "classical({n})"),
            TauKind::Double(l) => write!(f, "double{l}"),
            TauKind::Edge(l) => write!(f, "edge{l}"),
            TauKind::Alternative(m) => write!(f, "alternative({m})"),
        }
    }
}

/// How much a level check proves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Magnus criterion for a lower central series, decisive.
    Exact,
    /// Monomial bidegree test on generators plus a random battery; a
    /// refutation is sound, a pass is evidence.
    SemiDecision { bound: u32, battery: usize, seed: u64 },
}

impl Regime {
    fn to_json(self) -> Value {
        match self {
            Regime::Exact => json!({"regime": "exact"}),
            Regime::SemiDecision { bound, battery, seed } => json!({
                "regime": "semi-decision",
                "bound": bound,
                "battery": battery,
                "seed": seed,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauValue {
    pub kind: TauKind,
    pub value: Derivation,
    /// `Some(Ξ(value) == 0)` in surface mode, `None` for free alphabets.
    pub symplectic_ok: Option<bool>,
    pub regime: Regime,
}

impl TauValue {
    /// The ∧³H form, when the value is a degree-one surface derivation that
    /// lies in the image of the encoding.
    pub fn wedge(&self) -> Option<Wedge3> {
        let degree_one = match self.kind {
            TauKind::Classical(n) => n == 1,
            TauKind::Double(l) | TauKind::Edge(l) => l.total() == 1,
            TauKind::Alternative(_) => false,
        };
        if !degree_one || !self.value.alphabet().is_surface() {
            return None;
        }
        wedge3_decode(&self.value).ok()
    }

    pub fn to_json(&self) -> Value {
        let alpha = *self.value.alphabet();
        let values: Vec<Value> = (0..alpha.rank())
            .map(|s| {
                json!({
                    "generator": crate::freelie::lie_symbol_name(&alpha, s as u8),
                    "value": self.value.value(s).to_string(),
                })
            })
            .collect();
        json!({
            "kind": self.kind.to_string(),
            "values": values,
            "symplectic_ok": self.symplectic_ok,
            "wedge": self.wedge().map(|w| w.to_string()),
            "check": self.regime.to_json(),
        })
    }
}

/// Which handlebody kernel a test word lies in: conjugates of x's are in
/// `K_{1,0}`, conjugates of y's in `K_{0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Least bidegree `[h,w]` must reach for `h` at `level` and `w` on `side`.
pub fn side_requirement(level: ExtPair, side: Side) -> (usize, usize) {
    let c = |v: i32| v.max(0) as usize;
    match side {
        Side::X => (c(level.m + 1), c(level.n)),
        Side::Y => (c(level.m), c(level.n + 1)),
    }
}

/// Generators followed by `size` seeded random conjugates `u g u^-1`, with
/// `1 <= |u| <= 6`. Sides alternate so both kernels are exercised.
pub fn battery_words(alpha: &AlphabetSpec, size: usize, seed: u64) -> Vec<(Side, Word)> {
    let mut out: Vec<(Side, Word)> = alpha
        .generators()
        .map(|l| {
            let side = if alpha.is_x(l) { Side::X } else { Side::Y };
            (side, Word::letter(l))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = alpha.rank() as i32;
    for t in 0..size {
        let (side, count) = if t % 2 == 0 && alpha.p > 0 || alpha.q == 0 {
            (Side::X, alpha.p)
        } else {
            (Side::Y, alpha.q)
        };
        let g = if side == Side::X {
            alpha.x(rng.gen_range(1..=count))
        } else {
            alpha.y(rng.gen_range(1..=count))
        };
        let u = loop {
            let len = rng.gen_range(1..=MAX_CONJUGATOR_LEN);
            let raw: Vec<i32> = (0..len)
                .map(|_| {
                    let l = rng.gen_range(1..=rank);
                    if rng.gen_bool(0.5) {
                        l
                    } else {
                        -l
                    }
                })
                .collect();
            let u = Word::reduce(alpha, &raw).expect("letters in range");
            if !u.is_empty() {
                break u;
            }
        };
        out.push((side, Word::letter(g).conjugate_by(&u)));
    }
    out
}

/// One expanded test commutator `[h^±1, w]`.
struct Probe {
    side: Side,
    word: Word,
    inverse: bool,
    series: Series,
    support: Vec<(usize, usize)>,
}

fn expand_probes(exps: &[(bool, &AutExpansion)], words: &[(Side, Word)]) -> Vec<Probe> {
    let jobs: Vec<(bool, &AutExpansion, Side, &Word)> = exps
        .iter()
        .flat_map(|&(inv, e)| words.iter().map(move |(s, w)| (inv, e, *s, w)))
        .collect();
    jobs.into_par_iter()
        .map(|(inverse, e, side, w)| {
            let series = e.commutator(w);
            let support = series.support_bidegrees();
            Probe {
                side,
                word: w.clone(),
                inverse,
                series,
                support,
            }
        })
        .collect()
}

/// Sound certificate that `h` is not at a level.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub level: ExtPair,
    pub word: Word,
    /// Whether the witness came from `h^-1`.
    pub inverse: bool,
    pub side: Side,
    pub witness: Monomial,
    pub coeff: BigInt,
}

impl Refutation {
    pub fn to_json(&self, alpha: &AlphabetSpec) -> Value {
        json!({
            "level": [self.level.m, self.level.n],
            "commutator": format!(
                "[h{},{}]",
                if self.inverse { "^-1" } else { "" },
                self.word.display(alpha)
            ),
            "witness": self.witness.display(alpha).to_string(),
            "bidegree": self.witness.bidegree(alpha),
            "coeff": big_json(&self.coeff),
        })
    }

    fn detail(&self, alpha: &AlphabetSpec) -> String {
        let (a, b) = self.witness.bidegree(alpha);
        format!(
            "[h{},{}] has term {}*{} of bidegree ({a},{b})",
            if self.inverse { "^-1" } else { "" },
            self.word.display(alpha),
            self.coeff,
            self.witness.display(alpha)
        )
    }
}

fn check_level(probes: &[Probe], level: ExtPair) -> Option<Refutation> {
    for p in probes {
        let (a, b) = side_requirement(level, p.side);
        if p.support.iter().all(|&(x, y)| x >= a && y >= b) {
            continue;
        }
        let (witness, coeff) = p.series.first_violation(a, b).expect("support says so");
        return Some(Refutation {
            level,
            word: p.word.clone(),
            inverse: p.inverse,
            side: p.side,
            witness,
            coeff,
        });
    }
    None
}

fn not_in_level(alpha: &AlphabetSpec, r: &Refutation) -> Error {
    Error::NotInLevel {
        level: format!("M{}", r.level),
        detail: r.detail(alpha),
    }
}

/// Knobs for the semi-decision checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Battery {
    pub size: usize,
    pub seed: u64,
}

impl Default for Battery {
    fn default() -> Self {
        Battery {
            size: DEFAULT_BATTERY,
            seed: DEFAULT_SEED,
        }
    }
}

fn symplectic(d: &Derivation) -> Result<Option<bool>> {
    if d.alphabet().is_surface() {
        Ok(Some(xi_contract(d)?.is_zero()))
    } else {
        Ok(None)
    }
}

/// Projects the weighted-degree-`w` part of each generator commutator.
fn values_at_weight(exp: &AutExpansion, probes: &[Series], w_of: impl Fn(usize) -> u32) -> Result<Derivation> {
    let alpha = *exp.alphabet();
    let vals = probes
        .iter()
        .enumerate()
        .map(|(s, ser)| lie_project(&alpha, &ser.weight_part(w_of(s))?))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(&alpha, vals)
}

fn generator_commutators(exp: &AutExpansion) -> Vec<Series> {
    exp.alphabet()
        .generators()
        .map(|l| exp.commutator(&Word::letter(l)))
        .collect()
}

/// Classical `τ_n` from a precomputed unit-weight expansion. The check that
/// every `[h,g]` lies in `Γ_{n+1}` is exact.
pub fn tau_classical_of(exp: &AutExpansion, n: u32) -> Result<TauValue> {
    if n == 0 {
        return Err(Error::InvalidDegree("classical tau needs n >= 1".into()));
    }
    if !exp.weights().is_unit() {
        return Err(Error::InvalidDegree("classical tau needs unit weights".into()));
    }
    if exp.bound() < n + 1 {
        return Err(Error::BoundExceeded {
            degree: n + 1,
            bound: exp.bound(),
        });
    }
    let alpha = *exp.alphabet();
    let comms = generator_commutators(exp);
    for (s, ser) in comms.iter().enumerate() {
        if let Some(low) = ser.min_weight().filter(|&w| w <= n) {
            let (mono, c) = ser
                .terms()
                .into_iter()
                .find(|(m, _)| m.0.len() as u32 == low)
                .expect("term of minimal degree");
            return Err(Error::NotInLevel {
                level: format!("Gamma_{}", n + 1),
                detail: format!(
                    "[h,{}] has term {c}*{} of degree {low}",
                    alpha.letter_name(s as i32 + 1),
                    mono.display(&alpha)
                ),
            });
        }
    }
    let value = values_at_weight(exp, &comms, |_| n + 1)?;
    Ok(TauValue {
        kind: TauKind::Classical(n),
        symplectic_ok: symplectic(&value)?,
        value,
        regime: Regime::Exact,
    })
}

pub fn tau_classical(h: &FreeGroupAut, n: u32, bound: u32) -> Result<TauValue> {
    if bound < n + 2 {
        return Err(Error::BoundExceeded { degree: n + 2, bound });
    }
    tau_classical_of(&AutExpansion::new(h, bound, Weights::UNIT)?, n)
}

fn tau_at_level(h: &FreeGroupAut, level: ExtPair, bound: u32, battery: Battery, kind: TauKind) -> Result<TauValue> {
    let alpha = *h.alphabet();
    let need = (level.total() + 2) as u32;
    if bound < need {
        return Err(Error::BoundExceeded { degree: need, bound });
    }
    let exp = AutExpansion::new(h, bound, Weights::UNIT)?;
    let words = battery_words(&alpha, battery.size, battery.seed);
    let probes = expand_probes(&[(false, &exp)], &words);
    if let Some(r) = check_level(&probes, level) {
        return Err(not_in_level(&alpha, &r));
    }
    let comms: Vec<Series> = probes[..alpha.rank()].iter().map(|p| p.series.clone()).collect();
    let deg = (level.total() + 1) as u32;
    let value = values_at_weight(&exp, &comms, |_| deg)?;
    Ok(TauValue {
        kind,
        symplectic_ok: symplectic(&value)?,
        value,
        regime: Regime::SemiDecision {
            bound,
            battery: battery.size,
            seed: battery.seed,
        },
    })
}

/// Double `τ_{m,n}` for `m,n >= 0`, `m+n >= 1`.
pub fn tau_double_with(h: &FreeGroupAut, level: ExtPair, bound: u32, battery: Battery) -> Result<TauValue> {
    if level.m < 0 || level.n < 0 || level.total() < 1 {
        return Err(Error::InvalidDegree(format!(
            "double tau needs m,n >= 0 and m+n >= 1, got {level}"
        )));
    }
    tau_at_level(h, level, bound, battery, TauKind::Double(level))
}

pub fn tau_double(h: &FreeGroupAut, level: ExtPair, bound: u32) -> Result<TauValue> {
    tau_double_with(h, level, bound, Battery::default())
}

/// Edge `τ_{m,-1}` (m >= 2) or `τ_{-1,n}` (n >= 2): the classical
/// `τ_{m+n}` restricted, whose values must sit in `Lie(A)` on b's only, or
/// in `Lie(B)` on a's only.
pub fn tau_edge_with(h: &FreeGroupAut, level: ExtPair, bound: u32, battery: Battery) -> Result<TauValue> {
    let ok = (level.n == -1 && level.m >= 2) || (level.m == -1 && level.n >= 2);
    if !ok {
        return Err(Error::InvalidDegree(format!(
            "edge tau needs (m,-1) with m >= 2 or (-1,n) with n >= 2, got {level}"
        )));
    }
    let t = tau_at_level(h, level, bound, battery, TauKind::Edge(level))?;
    let alpha = *h.alphabet();
    // values sit one degree above the total, i.e. in degree m (or n)
    let d = (level.total() + 1) as usize;
    let mut constrained = true;
    for s in 0..alpha.rank() {
        let v = t.value.value(s);
        let allowed: Option<(usize, usize)> = match (level.n == -1, s < alpha.p) {
            (true, true) | (false, false) => None,
            (true, false) => Some((d, 0)),
            (false, true) => Some((0, d)),
        };
        let fits = match allowed {
            None => v.is_zero(),
            Some(bd) => v.bidegrees().iter().all(|&x| x == bd),
        };
        constrained &= fits;
    }
    if !constrained {
        return Err(Error::NotInLevel {
            level: format!("D{level}"),
            detail: format!("edge value leaves its one-sided target: {}", t.value),
        });
    }
    Ok(t)
}

pub fn tau_edge(h: &FreeGroupAut, level: ExtPair, bound: u32) -> Result<TauValue> {
    tau_edge_with(h, level, bound, Battery::default())
}

/// Weighted `τ^a_m` with x of weight 2 and y of weight 1: `[h,y_i]` must
/// start at weight `m+1` and `[h,x_i]` at `m+2`. The weighted lower central
/// series of a free group is detected exactly by the weighted expansion.
pub fn tau_alt(h: &FreeGroupAut, m: u32, bound: u32) -> Result<TauValue> {
    if m == 0 {
        return Err(Error::InvalidDegree("alternative tau needs m >= 1".into()));
    }
    if bound < m + 2 {
        return Err(Error::BoundExceeded { degree: m + 2, bound });
    }
    let alpha = *h.alphabet();
    let exp = AutExpansion::new(h, bound, Weights::ALT)?;
    let comms = generator_commutators(&exp);
    let want = |s: usize| if s < alpha.p { m + 2 } else { m + 1 };
    for (s, ser) in comms.iter().enumerate() {
        if let Some(low) = ser.min_weight().filter(|&w| w < want(s)) {
            return Err(Error::NotInLevel {
                level: format!("K^a_{}", want(s)),
                detail: format!(
                    "[h,{}] has a term of weight {low}",
                    alpha.letter_name(s as i32 + 1)
                ),
            });
        }
    }
    let value = values_at_weight(&exp, &comms, want)?;
    Ok(TauValue {
        kind: TauKind::Alternative(m),
        symplectic_ok: symplectic(&value)?,
        value,
        regime: Regime::Exact,
    })
}

/// Dispatch on the level: interior levels give `τ_{m,n}`, edges the edge map.
pub fn tau_at(h: &FreeGroupAut, level: ExtPair, bound: u32, battery: Battery) -> Result<TauValue> {
    if level.m >= 0 && level.n >= 0 {
        tau_double_with(h, level, bound, battery)
    } else {
        tau_edge_with(h, level, bound, battery)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub alpha: AlphabetSpec,
    pub max_total: i32,
    pub bound: u32,
    pub battery: Battery,
    /// Maximal verified levels.
    pub verified: Vec<ExtPair>,
    /// Every verified level in range.
    pub verified_all: Vec<ExtPair>,
    /// One witness per refuted level in range.
    pub refutations: Vec<Refutation>,
}

impl ProbeResult {
    pub fn is_verified(&self, level: ExtPair) -> bool {
        self.verified_all.contains(&level)
    }

    pub fn refutation(&self, level: ExtPair) -> Option<&Refutation> {
        self.refutations.iter().find(|r| r.level == level)
    }

    pub fn is_refuted(&self, level: ExtPair) -> bool {
        self.refutation(level).is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verified": self.verified.iter().map(|l| [l.m, l.n]).collect::<Vec<_>>(),
            "refutations": self.refutations.iter().map(|r| r.to_json(&self.alpha)).collect::<Vec<_>>(),
            "max_total": self.max_total,
            "check": Regime::SemiDecision {
                bound: self.bound,
                battery: self.battery.size,
                seed: self.battery.seed,
            }
            .to_json(),
        })
    }
}

/// Extended levels with `m,n >= -1` and `m+n <= max_total`, in (total, m)
/// order.
pub fn levels_up_to(max_total: i32) -> Vec<ExtPair> {
    let mut out = Vec::new();
    for t in -2..=max_total {
        for m in -1..=(t + 1) {
            let n = t - m;
            if n >= -1 {
                out.push(ExtPair { m, n });
            }
        }
    }
    out
}

/// Tests every extended level up to `max_total` against `[h^±1, w]` for the
/// generators and a seeded battery of conjugates.
pub fn probe(h: &FreeGroupAut, max_total: i32, bound: u32, battery: Battery) -> Result<ProbeResult> {
    let need = (max_total + 2).max(1) as u32;
    if bound < need {
        return Err(Error::BoundExceeded { degree: need, bound });
    }
    let alpha = *h.alphabet();
    let fwd = AutExpansion::new(h, bound, Weights::UNIT)?;
    let inv = AutExpansion::new(&h.inverse(), bound, Weights::UNIT)?;
    let words = battery_words(&alpha, battery.size, battery.seed);
    let probes = expand_probes(&[(false, &fwd), (true, &inv)], &words);
    let mut verified_all = Vec::new();
    let mut refutations = Vec::new();
    for level in levels_up_to(max_total) {
        match check_level(&probes, level) {
            None => verified_all.push(level),
            Some(r) => refutations.push(r),
        }
    }
    let verified = verified_all
        .iter()
        .filter(|&l| !verified_all.iter().any(|o| o != l && l.le(o)))
        .copied()
        .collect();
    Ok(ProbeResult {
        alpha,
        max_total,
        bound,
        battery,
        verified,
        verified_all,
        refutations,
    })
}

/// Automorphism whose first Johnson image is `±` a single ∧³H basis
/// element.
#[derive(Debug, Clone)]
pub struct QuadrantGenerator {
    pub name: String,
    pub aut: FreeGroupAut,
    pub tau1: Wedge3,
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub tau1: Wedge3,
    /// Parts with three, two, one and zero a's.
    pub parts: [Wedge3; 4],
    /// Per part, generator names with exponents.
    pub factors: [Vec<(String, i64)>; 4],
    /// `τ_1((h_1 h_2 h_3 h_4)^-1 h)`.
    pub residual: Wedge3,
}

impl Reconstruction {
    pub fn ok(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tau1": self.tau1.to_string(),
            "parts": self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "factors": self.factors.iter().map(|f| {
                f.iter().map(|(n, e)| json!({"generator": n, "exponent": e})).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "residual": self.residual.to_string(),
            "ok": self.ok(),
        })
    }
}

fn tau1_wedge(exp: &AutExpansion) -> Result<Wedge3> {
    let t = tau_classical_of(exp, 1)?;
    wedge3_decode(&t.value)
}

/// Splits `τ_1(h)` into its four quadrant parts, realizes each part as a
/// product of the supplied generators, and recomputes `τ_1` of
/// `(h_1 h_2 h_3 h_4)^-1 h`. Compositions are done on truncated
/// expansions, which determine `τ_1` exactly and avoid word growth.
pub fn reconstruct_torelli(h: &FreeGroupAut, gens: &[QuadrantGenerator]) -> Result<Reconstruction> {
    const BOUND: u32 = 3;
    let alpha = *h.alphabet();
    let g = alpha.genus()?;
    let eh = AutExpansion::new(h, BOUND, Weights::UNIT)?;
    let tau1 = tau1_wedge(&eh)?;
    let parts = tau1.split_by_a_count();
    let lookup = |key: (u8, u8, u8)| -> Result<(&QuadrantGenerator, BigInt)> {
        for q in gens {
            if q.tau1.coeffs.len() == 1 {
                if let Some(c) = q.tau1.coeffs.get(&key) {
                    if c.abs().is_one() {
                        return Ok((q, c.clone()));
                    }
                }
            }
        }
        let mut w = Wedge3::new(g);
        w.add_term(key.0, key.1, key.2, BigInt::one());
        Err(Error::Catalog(format!("no quadrant generator realizes {w}")))
    };
    let mut factors: [Vec<(String, i64)>; 4] = Default::default();
    let id = AutExpansion::new(&FreeGroupAut::identity(alpha), BOUND, Weights::UNIT)?;
    // acc = h1 h2 h3 h4 so far, acc_inv its inverse
    let mut acc = id.clone();
    let mut acc_inv = id;
    for (k, part) in parts.iter().enumerate() {
        for (key, c) in &part.coeffs {
            let (q, sign) = lookup(*key)?;
            let e: BigInt = c * &sign;
            let e = i64::try_from(&e).map_err(|_| Error::TooLarge(format!("exponent {e}")))?;
            let (base, base_inv) = if e > 0 {
                (q.aut.clone(), q.aut.inverse())
            } else {
                (q.aut.inverse(), q.aut.clone())
            };
            let step = AutExpansion::new(&base, BOUND, Weights::UNIT)?;
            let step_inv = AutExpansion::new(&base_inv, BOUND, Weights::UNIT)?;
            for _ in 0..e.unsigned_abs() {
                acc = acc.compose(&step)?;
                acc_inv = step_inv.compose(&acc_inv)?;
            }
            factors[k].push((q.name.clone(), e));
        }
    }
    let residual = tau1_wedge(&acc_inv.compose(&eh)?)?;
    Ok(Reconstruction {
        tau1,
        parts,
        factors,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> AlphabetSpec {
        AlphabetSpec::surface(1).unwrap()
    }

    fn aut(alpha: AlphabetSpec, fwd: &[(i32, &str)], inv: &[(i32, &str)]) -> FreeGroupAut {
        let w = |s: &str| Word::parse(&alpha, s).unwrap();
        let f: Vec<(i32, Word)> = fwd.iter().map(|(l, s)| (*l, w(s))).collect();
        let i: Vec<(i32, Word)> = inv.iter().map(|(l, s)| (*l, w(s))).collect();
        FreeGroupAut::from_images(alpha, &f, &i).unwrap()
    }

    #[test]
    fn identity_has_zero_taus() {
        let a = AlphabetSpec::surface(2).unwrap();
        let id = FreeGroupAut::identity(a);
        assert!(tau_classical(&id, 1, 3).unwrap().value.is_zero());
        assert!(tau_classical(&id, 2, 4).unwrap().value.is_zero());
        let t = tau_double(&id, ExtPair::new(1, 0), 4).unwrap();
        assert!(t.value.is_zero());
        assert_eq!(t.symplectic_ok, Some(true));
        assert!(tau_edge(&id, ExtPair::new(2, -1), 4).unwrap().value.is_zero());
        assert!(tau_edge(&id, ExtPair::new(-1, 2), 4).unwrap().value.is_zero());
        assert!(tau_alt(&id, 2, 4).unwrap().value.is_zero());
        let p = probe(&id, 2, 4, Battery::default()).unwrap();
        assert!(p.refutations.is_empty());
        assert_eq!(p.verified.len(), 5);
    }

    #[test]
    fn twist_is_not_torelli() {
        // t_x: y1 -> x1 y1 acts nontrivially on homology
        let a = s1();
        let t = aut(a, &[(2, "x1 y1")], &[(2, "x1^-1 y1")]);
        match tau_classical(&t, 1, 3) {
            Err(Error::NotInLevel { level, .. }) => assert_eq!(level, "Gamma_2"),
            r => panic!("{r:?}"),
        }
        let p = probe(&t, 2, 4, Battery::default()).unwrap();
        assert!(p.is_verified(ExtPair::new(1, -1)));
        assert!(p.is_refuted(ExtPair::new(2, -1)));
        assert!(p.is_refuted(ExtPair::new(1, 0)));
        // the handlebody twist does not preserve the y-kernel
        assert!(p.is_refuted(ExtPair::new(0, 0)));
        assert!(p.is_verified(ExtPair::new(0, -1)));
    }

    #[test]
    fn levels_enumeration() {
        let l = levels_up_to(1);
        assert_eq!(l.first(), Some(&ExtPair { m: -1, n: -1 }));
        assert!(l.contains(&ExtPair { m: 2, n: -1 }));
        assert!(l.contains(&ExtPair { m: -1, n: 2 }));
        assert!(!l.contains(&ExtPair { m: 3, n: -1 }));
        assert_eq!(l.len(), 1 + 2 + 3 + 4);
    }

    #[test]
    fn battery_is_seeded() {
        let a = AlphabetSpec::surface(2).unwrap();
        let b1 = battery_words(&a, 8, 7);
        let b2 = battery_words(&a, 8, 7);
        assert_eq!(b1, b2);
        assert_eq!(b1.len(), 12);
        assert_ne!(b1, battery_words(&a, 8, 8));
        for (side, w) in &b1[4..] {
            // u g u^-1 has the abelianization of g
            let sums = w.exponent_sums(&a);
            let hit = sums.iter().position(|&e| e == 1).unwrap();
            assert_eq!(*side == Side::X, hit < a.p);
        }
    }
}
