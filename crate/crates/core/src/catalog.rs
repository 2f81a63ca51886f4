//! Generator catalogs: mapping classes of the genus-g surface with one
//! boundary component, written as automorphisms of the free group on
//! x1..xg, y1..yg, plus the Magnus generators of IA(F_{p,q}). Each entry
//! carries claims that `validate` re-checks from scratch.
//!
//! Twist conventions cannot be read off pictures, so the base tables below
//! are pinned data: each was chosen to fix the boundary word, to have the
//! expected symplectic block shape, and to give the expected first Johnson
//! images. Entries on other handles are transported by handle swaps.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freelie::Wedge3;
use crate::grading::ExtPair;
use crate::johnson::{self, Battery, QuadrantGenerator};
use crate::snf::{self, Matrix};
use crate::words::{AlphabetSpec, FreeGroupAut, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Surface,
    Free,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Claims attached to an entry. Absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixes_boundary: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<BlockShape>,
    /// A level the probe must verify.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<[i32; 2]>,
    /// Levels the probe must refute.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refutes: Vec<[i32; 2]>,
    /// Expected first Johnson image in ∧³H, e.g. `b1^a1^a2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<String>,
    /// Member of the quadrant generating set used for Torelli reconstruction.
    #[serde(default, skip_serializing_if = "is_false")]
    pub quadrant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub p: usize,
    pub q: usize,
    pub mode: Mode,
    /// Magnus family number for Aut-side entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<u8>,
    /// Images of the moved generators; others are fixed.
    pub fwd: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
    pub claims: Claims,
}

impl CatalogEntry {
    pub fn alphabet(&self) -> Result<AlphabetSpec> {
        let a = AlphabetSpec::new(self.p, self.q)?;
        if self.mode == Mode::Surface && !a.is_surface() {
            return Err(Error::Catalog(format!("{}: surface entry needs p = q", self.name)));
        }
        Ok(a)
    }

    /// The automorphism; fails if the tables are not mutually inverse.
    pub fn to_aut(&self) -> Result<FreeGroupAut> {
        let alpha = self.alphabet()?;
        let table = |m: &BTreeMap<String, String>| -> Result<Vec<(Letter, Word)>> {
            m.iter()
                .map(|(g, w)| Ok((alpha.parse_generator(g)?, Word::parse(&alpha, w)?)))
                .collect()
        };
        FreeGroupAut::from_images(alpha, &table(&self.fwd)?, &table(&self.inv)?)
            .map_err(|e| match e {
                Error::NotAnAutomorphism(m) => Error::NotAnAutomorphism(format!("{}: {m}", self.name)),
                e => Error::Catalog(format!("{}: {e}", self.name)),
            })
    }

    pub fn from_aut(name: &str, mode: Mode, h: &FreeGroupAut, claims: Claims) -> Self {
        let alpha = *h.alphabet();
        let table = |t: &[Word]| -> BTreeMap<String, String> {
            alpha
                .generators()
                .zip(t.iter())
                .filter(|(g, w)| w.letters() != [*g])
                .map(|(g, w)| (alpha.letter_name(g), w.display(&alpha).to_string()))
                .collect()
        };
        CatalogEntry {
            name: name.to_string(),
            p: alpha.p,
            q: alpha.q,
            mode,
            family: None,
            fwd: table(h.fwd_table()),
            inv: table(h.inv_table()),
            claims,
        }
    }
}

// ---------------------------------------------------------------------------
// symplectic representation

/// Standard `J = [[0, I], [-I, 0]]`.
pub fn symplectic_j(g: usize) -> Matrix {
    let mut j = vec![vec![BigInt::zero(); 2 * g]; 2 * g];
    for i in 0..g {
        j[i][g + i] = BigInt::one();
        j[g + i][i] = -BigInt::one();
    }
    j
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|c| row.iter().zip(b.iter()).map(|(x, r)| x * &r[c]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn is_symplectic(m: &Matrix) -> bool {
    let g = m.len() / 2;
    m.len() == 2 * g && mat_mul(&mat_mul(&transpose(m), &symplectic_j(g)), m) == symplectic_j(g)
}

/// Action on `H_1` in the basis a1..ag, b1..bg: column `c` holds the
/// exponent sums of the image of generator `c`.
pub fn sigma(h: &FreeGroupAut) -> Result<Matrix> {
    let alpha = *h.alphabet();
    alpha.genus()?;
    if !h.fixes_boundary()? {
        return Err(Error::SymplecticCheckFailed("the element does not fix the boundary word".into()));
    }
    let k = alpha.rank();
    let mut m = vec![vec![BigInt::zero(); k]; k];
    for (c, w) in h.fwd_table().iter().enumerate() {
        for (r, e) in w.exponent_sums(&alpha).into_iter().enumerate() {
            m[r][c] = BigInt::from(e);
        }
    }
    if !is_symplectic(&m) {
        return Err(Error::SymplecticCheckFailed(format!("{m:?}")));
    }
    Ok(m)
}

/// Block patterns `[[P,Q],[R,S]]` of symplectic matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockShape {
    /// Handlebody image: `R = 0`, `P^-1 Q` symmetric.
    H,
    /// Dual handlebody image: `Q = 0`, `P^T R` symmetric.
    #[serde(rename = "H'")]
    HPrime,
    /// Goeritz image: `Q = R = 0`.
    G,
    /// `[[I,Q],[0,I]]` with `Q` symmetric.
    T,
    /// `[[I,0],[R,I]]` with `R` symmetric.
    #[serde(rename = "T'")]
    TPrime,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockShape::H => "H",
            BlockShape::HPrime => "H'",
            BlockShape::G => "G",
            BlockShape::T => "T",
            BlockShape::TPrime => "T'",
            BlockShape::None => "none",
        };
        write!(f, "{s}")
    }
}

fn block(m: &Matrix, r: usize, c: usize, g: usize) -> Matrix {
    m[r * g..(r + 1) * g]
        .iter()
        .map(|row| row[c * g..(c + 1) * g].to_vec())
        .collect()
}

fn is_zero_mat(a: &Matrix) -> bool {
    a.iter().flatten().all(Zero::is_zero)
}

fn is_identity_mat(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(i, r)| {
        r.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

fn is_symmetric(a: &Matrix) -> bool {
    *a == transpose(a)
}

/// Most specific matching shape, tried in the order G, T, T', H, H'.
pub fn block_shape_classify(m: &Matrix) -> BlockShape {
    let g = m.len() / 2;
    if !is_symplectic(m) {
        return BlockShape::None;
    }
    let (p, q, r, s) = (block(m, 0, 0, g), block(m, 0, 1, g), block(m, 1, 0, g), block(m, 1, 1, g));
    if is_zero_mat(&q) && is_zero_mat(&r) {
        return BlockShape::G;
    }
    let unipotent = is_identity_mat(&p) && is_identity_mat(&s);
    if unipotent && is_zero_mat(&r) && is_symmetric(&q) {
        return BlockShape::T;
    }
    if unipotent && is_zero_mat(&q) && is_symmetric(&r) {
        return BlockShape::TPrime;
    }
    // with R = 0 the symplectic condition gives P^-1 = S^T
    if is_zero_mat(&r) && is_symmetric(&mat_mul(&transpose(&s), &q)) {
        return BlockShape::H;
    }
    if is_zero_mat(&q) && is_symmetric(&mat_mul(&transpose(&p), &r)) {
        return BlockShape::HPrime;
    }
    BlockShape::None
}

// ---------------------------------------------------------------------------
// pinned base tables, written on the first one or two handles

struct Base {
    g: usize,
    fwd: &'static [(&'static str, &'static str)],
    inv: &'static [(&'static str, &'static str)],
}

/// Twist about the meridian `x1`.
const TWIST_X: Base = Base {
    g: 1,
    fwd: &[("y1", "x1 y1")],
    inv: &[("y1", "x1^-1 y1")],
};

/// Twist about the parallel `y1`.
const TWIST_Y: Base = Base {
    g: 1,
    fwd: &[("x1", "y1^-1 x1")],
    inv: &[("x1", "y1 x1")],
};

/// Half twist of the first handle, in the Goeritz group.
const KNOB: Base = Base {
    g: 1,
    fwd: &[("x1", "y1^-1 x1^-1 y1"), ("y1", "y1^-1 x1^-1 y1^-1 x1 y1")],
    inv: &[("x1", "x1^-1 y1^-1 x1^-1 y1 x1"), ("y1", "x1^-1 y1^-1 x1")],
};

/// Twist about the curve cutting off the first handle: conjugation of
/// x1, y1 by `c1 = x1^-1 y1^-1 x1 y1`.
const TWIST_DELTA: Base = Base {
    g: 1,
    fwd: &[
        ("x1", "y1^-1 x1^-1 y1 x1 x1 x1^-1 y1^-1 x1 y1"),
        ("y1", "y1^-1 x1^-1 y1 x1 y1 x1^-1 y1^-1 x1 y1"),
    ],
    inv: &[
        ("x1", "x1^-1 y1^-1 x1 y1 x1 y1^-1 x1^-1 y1 x1"),
        ("y1", "x1^-1 y1^-1 x1 y1 y1 y1^-1 x1^-1 y1 x1"),
    ],
};

/// Goeritz element acting on homology by `a2 -> a2 + a1`, `b1 -> b1 - b2`.
const PHI_12: Base = Base {
    g: 2,
    fwd: &[
        ("x2", "y2 x2 y1^-1 x1 y1 x2^-1 y2^-1 x2"),
        ("y1", "y1 x2^-1 y2^-1 x2"),
    ],
    inv: &[
        ("x2", "x2 y1^-1 x1^-1 y1"),
        ("y1", "x1 y1 x2^-1 y2 x2 y1^-1 x1^-1 y1"),
    ],
};

/// Torelli element of level (1,0) with first Johnson image `b2^a2^a1`.
const H_21: Base = Base {
    g: 2,
    fwd: &[
        ("y1", "x1 y1 y2^-1 x2^-1 y2 x2 y1^-1 x1^-1 y1"),
        ("x2", "y1^-1 x1 y1 x2 y1^-1 x1^-1 y1"),
        ("y2", "y1^-1 x1 y1 y2 y1^-1 x1^-1 y1"),
    ],
    inv: &[
        (
            "x2",
            "y2^-1 x2^-1 y2 x2 y1^-1 x1^-1 y1 x2^-1 y2^-1 x2 y2 x2 y2^-1 x2^-1 y2 x2 y1^-1 x1 y1 x2^-1 y2^-1 x2 y2",
        ),
        ("y1", "y1 x2^-1 y2^-1 x2 y2"),
        (
            "y2",
            "y2^-1 x2^-1 y2 x2 y1^-1 x1^-1 y1 x2^-1 y2^-1 x2 y2 x2^-1 y2 x2 y1^-1 x1 y1 x2^-1 y2^-1 x2 y2",
        ),
    ],
};

/// Places a base table on the given handles (1-based) of genus `g`.
fn place(base: &Base, g: usize, handles: &[usize]) -> Result<FreeGroupAut> {
    let small = AlphabetSpec::surface(base.g)?;
    let alpha = AlphabetSpec::surface(g)?;
    let map = |l: Letter| -> Letter {
        let a = l.unsigned_abs() as usize;
        let (is_x, k) = if a <= base.g { (true, a) } else { (false, a - base.g) };
        let h = handles[k - 1];
        let m = if is_x { alpha.x(h) } else { alpha.y(h) };
        if l > 0 {
            m
        } else {
            -m
        }
    };
    let conv = |t: &[(&str, &str)]| -> Result<Vec<(Letter, Word)>> {
        t.iter()
            .map(|(gen, w)| {
                let l = map(small.parse_generator(gen)?);
                let raw: Vec<Letter> = Word::parse(&small, w)?.letters().iter().map(|&x| map(x)).collect();
                Ok((l, Word::reduce(&alpha, &raw)?))
            })
            .collect()
    };
    FreeGroupAut::from_images(alpha, &conv(base.fwd)?, &conv(base.inv)?)
}

fn handle_commutator(alpha: &AlphabetSpec, k: usize) -> Word {
    let x = Word::letter(alpha.x(k));
    let y = Word::letter(alpha.y(k));
    crate::words::commutator(&x.inverse(), &y.inverse())
}

/// Swap of handles `k` and `k+1` preserving the boundary word.
pub fn handle_swap(g: usize, k: usize) -> Result<FreeGroupAut> {
    let alpha = AlphabetSpec::surface(g)?;
    if k == 0 || k >= g {
        return Err(Error::InvalidIndex(format!("swap needs 1 <= k < {g}, got {k}")));
    }
    let ck = handle_commutator(&alpha, k);
    let ck1 = handle_commutator(&alpha, k + 1);
    let l = |v: Letter| Word::letter(v);
    let fwd = [
        (alpha.x(k), l(alpha.x(k + 1)).conjugate_by(&ck)),
        (alpha.y(k), l(alpha.y(k + 1)).conjugate_by(&ck)),
        (alpha.x(k + 1), l(alpha.x(k))),
        (alpha.y(k + 1), l(alpha.y(k))),
    ];
    let ck1i = ck1.inverse();
    let inv = [
        (alpha.x(k), l(alpha.x(k + 1))),
        (alpha.y(k), l(alpha.y(k + 1))),
        (alpha.x(k + 1), l(alpha.x(k)).conjugate_by(&ck1i)),
        (alpha.y(k + 1), l(alpha.y(k)).conjugate_by(&ck1i)),
    ];
    FreeGroupAut::from_images(alpha, &fwd, &inv)
}

/// Product of handle swaps carrying handle `src[t]` to position `dst[t]`;
/// the remaining handles keep their relative order.
fn handle_permutation(g: usize, src: &[usize], dst: &[usize]) -> Result<FreeGroupAut> {
    let mut target = vec![0usize; g + 1];
    for (s, d) in src.iter().zip(dst) {
        target[*s] = *d;
    }
    let rest_src: Vec<usize> = (1..=g).filter(|i| !src.contains(i)).collect();
    let rest_dst: Vec<usize> = (1..=g).filter(|i| !dst.contains(i)).collect();
    for (s, d) in rest_src.iter().zip(&rest_dst) {
        target[*s] = *d;
    }
    let mut arr: Vec<usize> = target[1..].to_vec();
    let mut f = FreeGroupAut::identity(AlphabetSpec::surface(g)?);
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..arr.len().saturating_sub(1) {
            if arr[k] > arr[k + 1] {
                arr.swap(k, k + 1);
                f = handle_swap(g, k + 1)?.compose(&f)?;
                changed = true;
            }
        }
    }
    Ok(f)
}

fn transported(base: &Base, g: usize, src: &[usize], dst: &[usize]) -> Result<FreeGroupAut> {
    let handles: Vec<usize> = (1..=base.g).collect();
    let p = handle_permutation(g, src, dst)?;
    place(base, g, &handles)?.conjugate_by(&p)
}

pub fn twist_x(g: usize, k: usize) -> Result<FreeGroupAut> {
    place(&TWIST_X, g, &[k])
}

pub fn twist_y(g: usize, k: usize) -> Result<FreeGroupAut> {
    place(&TWIST_Y, g, &[k])
}

pub fn knob(g: usize, j: usize) -> Result<FreeGroupAut> {
    place(&KNOB, g, &[j])
}

pub fn twist_delta(g: usize) -> Result<FreeGroupAut> {
    place(&TWIST_DELTA, g, &[1])
}

/// Goeritz element with `σ = diag(e_ik(1), e_ki(-1))`.
pub fn phi(g: usize, i: usize, k: usize) -> Result<FreeGroupAut> {
    transported(&PHI_12, g, &[1, 2], &[i, k])
}

/// Level-(1,0) Torelli element with `τ_1 = b_i^a_i^a_j`.
pub fn h_pair(g: usize, i: usize, j: usize) -> Result<FreeGroupAut> {
    transported(&H_21, g, &[2, 1], &[i, j])
}

/// Twist about a meridian in the class `a_i - a_j`, as `φ(j,i)^-1`-conjugate of
/// the twist about `x_i`.
pub fn twist_x_pair(g: usize, i: usize, j: usize) -> Result<FreeGroupAut> {
    twist_x(g, i)?.conjugate_by(&phi(g, j, i)?.inverse())
}

/// `[t_{x_ik}, t_{x_ij}]`, with `τ_1 = a_i^a_j^a_k`.
pub fn twist_commutator(g: usize, i: usize, j: usize, k: usize) -> Result<FreeGroupAut> {
    twist_x_pair(g, i, k)?.commutator(&twist_x_pair(g, i, j)?)
}

/// `φ(i,k)^-1 h_ij φ(i,k) h_ij^-1` for `k` outside `{i,j}`, with
/// `τ_1 = b_k^a_i^a_j`.
pub fn h_triple(g: usize, i: usize, j: usize, k: usize) -> Result<FreeGroupAut> {
    let h = h_pair(g, i, j)?;
    h.conjugate_by(&phi(g, i, k)?.inverse())?.compose(&h.inverse())
}

/// Exchange of the two handlebodies: `x_i <-> y_{g+1-i}`. It sends the
/// boundary word to its inverse, so conjugating by it preserves the
/// boundary-fixing property and swaps the roles of x and y.
pub fn mirror(g: usize) -> Result<FreeGroupAut> {
    let alpha = AlphabetSpec::surface(g)?;
    let imgs: Vec<(Letter, Word)> = (1..=g)
        .flat_map(|i| {
            [
                (alpha.x(i), Word::letter(alpha.y(g + 1 - i))),
                (alpha.y(i), Word::letter(alpha.x(g + 1 - i))),
            ]
        })
        .collect();
    FreeGroupAut::from_images(alpha, &imgs, &imgs)
}

pub fn mirrored(h: &FreeGroupAut) -> Result<FreeGroupAut> {
    h.conjugate_by(&mirror(h.alphabet().genus()?)?)
}

/// `τ_1` of a mirrored element: the mirror is anti-symplectic, so the
/// wedge picks up a sign on top of relabeling `a_i <-> b_{g+1-i}`.
pub fn mirror_wedge(w: &Wedge3) -> Wedge3 {
    let g = w.g as u8;
    let m = |s: u8| if s < g { g + (g - 1 - s) } else { g - 1 - (s - g) };
    let mut out = Wedge3::new(w.g);
    for ((s, t, r), c) in &w.coeffs {
        out.add_term(m(*s), m(*t), m(*r), -c.clone());
    }
    out
}

fn wedge(g: usize, terms: &[(&str, i64)]) -> Wedge3 {
    let text: Vec<String> = terms.iter().map(|(t, c)| format!("{c}*{t}")).collect();
    Wedge3::parse(g, &text.join(" + ")).expect("well-formed wedge")
}

fn ident_matrix(k: usize) -> Vec<Vec<i64>> {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

fn lvl(m: i32, n: i32) -> Option<[i32; 2]> {
    Some([m, n])
}

/// Default surface catalog at genus `g`.
pub fn surface_catalog(g: usize) -> Result<Vec<CatalogEntry>> {
    let k = 2 * g;
    let mut out = Vec::new();
    let mut push = |name: String, h: FreeGroupAut, claims: Claims| {
        out.push(CatalogEntry::from_aut(&name, Mode::Surface, &h, claims));
    };
    let torelli = |level: Option<[i32; 2]>, refutes: Vec<[i32; 2]>, tau1: Option<Wedge3>, quadrant: bool| Claims {
        fixes_boundary: Some(true),
        sigma: Some(ident_matrix(k)),
        shape: Some(BlockShape::G),
        level,
        refutes,
        tau1: tau1.map(|w| w.to_string()),
        quadrant,
    };
    for i in 1..=g {
        let mut s = ident_matrix(k);
        s[i - 1][g + i - 1] = 1;
        push(
            format!("t_x{i}"),
            twist_x(g, i)?,
            Claims {
                fixes_boundary: Some(true),
                sigma: Some(s),
                shape: Some(BlockShape::T),
                level: lvl(1, -1),
                refutes: vec![[2, -1], [1, 0]],
                ..Claims::default()
            },
        );
    }
    for i in 1..=g {
        let mut s = ident_matrix(k);
        s[g + i - 1][i - 1] = -1;
        push(
            format!("t_y{i}"),
            twist_y(g, i)?,
            Claims {
                fixes_boundary: Some(true),
                sigma: Some(s),
                shape: Some(BlockShape::TPrime),
                level: lvl(-1, 1),
                refutes: vec![[-1, 2], [0, 1]],
                ..Claims::default()
            },
        );
    }
    for j in 1..=g {
        let mut s = ident_matrix(k);
        s[j - 1][j - 1] = -1;
        s[g + j - 1][g + j - 1] = -1;
        push(
            format!("knob_{j}"),
            knob(g, j)?,
            Claims {
                fixes_boundary: Some(true),
                sigma: Some(s),
                shape: Some(BlockShape::G),
                level: lvl(0, 0),
                refutes: vec![[1, 0], [0, 1]],
                ..Claims::default()
            },
        );
    }
    push(
        "t_delta".into(),
        twist_delta(g)?,
        torelli(lvl(1, 1), vec![[2, 1], [1, 2]], Some(Wedge3::new(g)), false),
    );
    if g == 1 {
        let c = twist_x(1, 1)?.commutator(&twist_y(1, 1)?)?;
        push(
            "twist_commutator_xy".into(),
            c,
            Claims {
                fixes_boundary: Some(true),
                sigma: Some(vec![vec![1, 1], vec![1, 2]]),
                shape: Some(BlockShape::None),
                refutes: vec![[0, 0]],
                ..Claims::default()
            },
        );
    }
    for k2 in 1..g {
        push(
            format!("swap_{k2}"),
            handle_swap(g, k2)?,
            Claims {
                fixes_boundary: Some(true),
                shape: Some(BlockShape::G),
                level: lvl(0, 0),
                ..Claims::default()
            },
        );
    }
    for i in 1..=g {
        for kk in 1..=g {
            if i == kk {
                continue;
            }
            let mut s = ident_matrix(k);
            s[i - 1][kk - 1] = 1;
            s[g + kk - 1][g + i - 1] = -1;
            push(
                format!("phi_{i}{kk}"),
                phi(g, i, kk)?,
                Claims {
                    fixes_boundary: Some(true),
                    sigma: Some(s),
                    shape: Some(BlockShape::G),
                    level: lvl(0, 0),
                    refutes: vec![[1, 0], [0, 1]],
                    ..Claims::default()
                },
            );
        }
    }
    for i in 1..=g {
        for j in (i + 1)..=g {
            let mut s = ident_matrix(k);
            s[i - 1][g + i - 1] = 1;
            s[j - 1][g + j - 1] = 1;
            s[i - 1][g + j - 1] = -1;
            s[j - 1][g + i - 1] = -1;
            push(
                format!("t_x{i}{j}"),
                twist_x_pair(g, i, j)?,
                Claims {
                    fixes_boundary: Some(true),
                    sigma: Some(s),
                    shape: Some(BlockShape::T),
                    level: lvl(1, -1),
                    refutes: vec![[2, -1], [1, 0]],
                    ..Claims::default()
                },
            );
        }
    }
    // quadrant generators: ∧²A⊗B and its mirror A⊗∧²B
    for i in 1..=g {
        for j in 1..=g {
            if i == j {
                continue;
            }
            let name = |s: &str| format!("b{i}^a{i}^a{j}").replace('b', s);
            let w = wedge(g, &[(&name("b"), 1)]);
            let h = h_pair(g, i, j)?;
            push(format!("h_{i}{j}"), h.clone(), torelli(lvl(1, 0), vec![[2, 0], [1, 1]], Some(w.clone()), true));
            push(
                format!("h_{i}{j}'"),
                mirrored(&h)?,
                torelli(lvl(0, 1), vec![[0, 2], [1, 1]], Some(mirror_wedge(&w)), true),
            );
        }
    }
    for kk in 1..=g {
        for i in 1..=g {
            for j in (i + 1)..=g {
                if kk == i || kk == j {
                    continue;
                }
                let w = wedge(g, &[(&format!("b{kk}^a{i}^a{j}"), 1)]);
                let h = h_triple(g, i, j, kk)?;
                push(format!("h_{i}{j}_{kk}"), h.clone(), torelli(lvl(1, 0), vec![[2, 0], [1, 1]], Some(w.clone()), true));
                push(
                    format!("h_{i}{j}_{kk}'"),
                    mirrored(&h)?,
                    torelli(lvl(0, 1), vec![[0, 2], [1, 1]], Some(mirror_wedge(&w)), true),
                );
            }
        }
    }
    // ∧³A and ∧³B
    for i in 1..=g {
        for j in (i + 1)..=g {
            for kk in (j + 1)..=g {
                let w = wedge(g, &[(&format!("a{i}^a{j}^a{kk}"), 1)]);
                let c = twist_commutator(g, i, j, kk)?;
                push(
                    format!("tx_comm_{i}{j}{kk}"),
                    c.clone(),
                    torelli(lvl(2, -1), vec![[3, -1], [2, 0]], Some(w.clone()), true),
                );
                push(
                    format!("ty_comm_{i}{j}{kk}"),
                    mirrored(&c)?,
                    torelli(lvl(-1, 2), vec![[-1, 3], [0, 2]], Some(mirror_wedge(&w)), true),
                );
            }
        }
    }
    if g >= 3 {
        // commutators of two Goeritz elements dragging handle 1, and the
        // mirrored pair
        let e = phi(g, 2, 1)?.commutator(&phi(g, 3, 1)?)?;
        let w = wedge(g, &[("a2^a3^b1", -1)]);
        push("eyeglass_comm".into(), e.clone(), torelli(lvl(1, 0), vec![], Some(w.clone()), false));
        push("eyeglass_comm'".into(), mirrored(&e)?, torelli(lvl(0, 1), vec![], Some(mirror_wedge(&w)), false));
    }
    if g >= 2 {
        // a Torelli element with parts in two quadrants
        let m = h_pair(g, 2, 1)?.compose(&mirrored(&h_pair(g, 2, 1)?)?)?;
        let w = wedge(g, &[("b2^a2^a1", 1)]);
        let w = w.add(&mirror_wedge(&w));
        push("torelli_mix".into(), m, torelli(lvl(0, 0), vec![[1, 0], [0, 1]], Some(w), false));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Magnus generators of IA(F_{p,q})

/// The ten Magnus families with their quadrant levels. Names follow the
/// generators, e.g. `phi_x1x2` or `phi_y1x1x2`.
pub fn magnus_generators(p: usize, q: usize) -> Result<Vec<CatalogEntry>> {
    let alpha = AlphabetSpec::new(p, q)?;
    if p + q < 3 {
        return Err(Error::InvalidIndex("Magnus generators need p+q >= 3".into()));
    }
    let xs: Vec<Letter> = (1..=p).map(|i| alpha.x(i)).collect();
    let ys: Vec<Letter> = (1..=q).map(|j| alpha.y(j)).collect();
    let mut out = Vec::new();
    let level_of = |fam: u8| -> (i32, i32) {
        match fam {
            1 | 4 | 5 | 9 => (1, 0),
            2 | 3 | 6 | 8 => (0, 1),
            7 => (-1, 2),
            _ => (2, -1),
        }
    };
    let mut add = |fam: u8, a: Letter, rest: &[Letter]| -> Result<()> {
        let la = Word::letter(a);
        let (f, i, tag) = match rest {
            [b] => {
                let lb = Word::letter(*b);
                (la.conjugate_by(&lb.inverse()), la.conjugate_by(&lb), vec![a, *b])
            }
            [b, c] => {
                let k = crate::words::commutator(&Word::letter(*b), &Word::letter(*c));
                (la.mul(&k), la.mul(&k.inverse()), vec![a, *b, *c])
            }
            _ => unreachable!(),
        };
        let h = FreeGroupAut::from_images(alpha, &[(a, f)], &[(a, i)])?;
        let name: String = tag.iter().map(|&l| alpha.letter_name(l)).collect();
        let (m, n) = level_of(fam);
        let mut e = CatalogEntry::from_aut(
            &format!("phi_{name}"),
            Mode::Free,
            &h,
            Claims {
                level: lvl(m, n),
                refutes: vec![[m + 1, n], [m, n + 1]],
                ..Claims::default()
            },
        );
        e.family = Some(fam);
        out.push(e);
        Ok(())
    };
    for &a in &xs {
        for &b in &xs {
            if a != b {
                add(1, a, &[b])?;
            }
        }
    }
    for &a in &ys {
        for &b in &ys {
            if a != b {
                add(2, a, &[b])?;
            }
        }
    }
    for &a in &xs {
        for &b in &ys {
            add(3, a, &[b])?;
        }
    }
    for &a in &ys {
        for &b in &xs {
            add(4, a, &[b])?;
        }
    }
    for &a in &xs {
        for &b in &xs {
            for &c in &xs {
                if a != b && a != c && b < c {
                    add(5, a, &[b, c])?;
                }
            }
        }
    }
    for &a in &xs {
        for &b in &xs {
            for &c in &ys {
                if a != b {
                    add(6, a, &[b, c])?;
                }
            }
        }
    }
    for &a in &xs {
        for &b in &ys {
            for &c in &ys {
                if b < c {
                    add(7, a, &[b, c])?;
                }
            }
        }
    }
    for &a in &ys {
        for &b in &ys {
            for &c in &ys {
                if a != b && a != c && b < c {
                    add(8, a, &[b, c])?;
                }
            }
        }
    }
    for &a in &ys {
        for &b in &xs {
            for &c in &ys {
                if a != c {
                    add(9, a, &[b, c])?;
                }
            }
        }
    }
    for &a in &ys {
        for &b in &xs {
            for &c in &xs {
                if b < c {
                    add(10, a, &[b, c])?;
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// files

/// Shipped catalog files: name and entries.
pub fn builtin_catalogs() -> Result<Vec<(String, Vec<CatalogEntry>)>> {
    let mut out = Vec::new();
    for g in 1..=3 {
        out.push((format!("surface_g{g}"), surface_catalog(g)?));
    }
    for (p, q) in [(2, 1), (2, 2), (3, 3)] {
        out.push((format!("free_p{p}q{q}"), magnus_generators(p, q)?));
    }
    Ok(out)
}

const EMBEDDED: &[(&str, &str)] = &[
    ("surface_g1", include_str!("../catalog/surface_g1.json")),
    ("surface_g2", include_str!("../catalog/surface_g2.json")),
    ("surface_g3", include_str!("../catalog/surface_g3.json")),
    ("free_p2q1", include_str!("../catalog/free_p2q1.json")),
    ("free_p2q2", include_str!("../catalog/free_p2q2.json")),
    ("free_p3q3", include_str!("../catalog/free_p3q3.json")),
];

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))
}

pub fn to_json_text(entries: &[CatalogEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("entries serialize");
    s.push('\n');
    s
}

/// Writes the builtin catalogs as `<name>.json` files.
pub fn export(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Catalog(e.to_string()))?;
    let mut written = Vec::new();
    for (name, entries) in builtin_catalogs()? {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, to_json_text(&entries)).map_err(|e| Error::Catalog(e.to_string()))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

pub fn load_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

/// Catalog files in load order: the embedded defaults, or every `*.json`
/// in `BIGRADE_CATALOG_DIR` when that is set.
pub fn default_catalog() -> Result<Vec<(String, Vec<CatalogEntry>)>> {
    if let Ok(dir) = std::env::var("BIGRADE_CATALOG_DIR") {
        let mut paths: Vec<_> = std::fs::read_dir(&dir)
            .map_err(|e| Error::Catalog(format!("{dir}: {e}")))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        return paths
            .into_iter()
            .map(|p| {
                let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
                Ok((name, load_file(&p)?))
            })
            .collect();
    }
    EMBEDDED
        .iter()
        .map(|(n, t)| Ok((n.to_string(), parse_catalog(t)?)))
        .collect()
}

/// Looks up `name` or `file:name` (e.g. `surface_g3:h_12`).
pub fn find(name: &str) -> Result<CatalogEntry> {
    let (file, entry) = match name.split_once(':') {
        Some((f, e)) => (Some(f), e),
        None => (None, name),
    };
    for (fname, entries) in default_catalog()? {
        if file.is_some_and(|f| f != fname) {
            continue;
        }
        if let Some(e) = entries.into_iter().find(|e| e.name == entry) {
            return Ok(e);
        }
    }
    Err(Error::Catalog(format!("no catalog entry named {name:?}")))
}

// ---------------------------------------------------------------------------
// validation

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed(), "checks": self.checks})
    }
}

fn matrix_i64(m: &Matrix) -> Vec<Vec<i64>> {
    m.iter()
        .map(|r| r.iter().map(|v| i64::try_from(v).unwrap_or(i64::MAX)).collect())
        .collect()
}

/// Re-derives every claim of an entry.
pub fn validate(entry: &CatalogEntry, bound: u32, battery: Battery) -> ValidationReport {
    let mut checks = Vec::new();
    let mut check = |claim: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            claim: claim.to_string(),
            passed,
            detail,
        });
    };
    let h = match entry.to_aut() {
        Ok(h) => {
            check("inverse tables", true, String::new());
            h
        }
        Err(e) => {
            check("inverse tables", false, e.to_string());
            return ValidationReport {
                name: entry.name.clone(),
                checks,
            };
        }
    };
    let c = &entry.claims;
    if entry.mode == Mode::Surface {
        let fixes = h.fixes_boundary().unwrap_or(false);
        let want = c.fixes_boundary.unwrap_or(true);
        check("fixes boundary", fixes == want, format!("computed {fixes}"));
        if fixes {
            match sigma(&h) {
                Ok(m) => {
                    if let Some(want) = &c.sigma {
                        let got = matrix_i64(&m);
                        check("sigma value", &got == want, format!("computed {got:?}"));
                    }
                    if let Some(want) = c.shape {
                        let got = block_shape_classify(&m);
                        check("sigma block shape", got == want, format!("computed {got}"));
                    }
                }
                Err(e) => check("sigma symplectic", false, e.to_string()),
            }
        }
    }
    let levels: Vec<ExtPair> = c
        .level
        .iter()
        .chain(c.refutes.iter())
        .map(|[m, n]| ExtPair::new(*m, *n))
        .collect();
    if !levels.is_empty() {
        let max_total = levels.iter().map(ExtPair::total).max().unwrap_or(0);
        match johnson::probe(&h, max_total, bound.max((max_total + 2) as u32), battery) {
            Ok(pr) => {
                if let Some([m, n]) = c.level {
                    let l = ExtPair::new(m, n);
                    let detail = match pr.refutation(l) {
                        Some(r) => r.to_json(&pr.alpha).to_string(),
                        None => "verified".into(),
                    };
                    check(&format!("level {l}"), pr.is_verified(l), detail);
                }
                for [m, n] in &c.refutes {
                    let l = ExtPair::new(*m, *n);
                    let detail = match pr.refutation(l) {
                        Some(r) => r.to_json(&pr.alpha).to_string(),
                        None => "no witness found".into(),
                    };
                    check(&format!("refutes {l}"), pr.is_refuted(l), detail);
                }
            }
            Err(e) => check("probe", false, e.to_string()),
        }
    }
    if let Some(want) = &c.tau1 {
        let g = entry.p;
        match (Wedge3::parse(g, want), johnson::tau_classical(&h, 1, bound.max(3))) {
            (Ok(w), Ok(t)) => {
                let got = t.wedge();
                check(
                    "tau1",
                    got.as_ref() == Some(&w),
                    format!("computed {}", got.map_or("not a wedge".into(), |x| x.to_string())),
                );
                if let Some([m, n]) = c.level {
                    let l = ExtPair::new(m, n);
                    if l.total() == 1 {
                        match johnson::tau_at(&h, l, bound.max(3), battery) {
                            Ok(t) => {
                                let got = t.wedge();
                                check(
                                    &format!("tau at {l}"),
                                    got.as_ref() == Some(&w),
                                    format!("computed {}", got.map_or("not a wedge".into(), |x| x.to_string())),
                                );
                            }
                            Err(e) => check(&format!("tau at {l}"), false, e.to_string()),
                        }
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => check("tau1", false, e.to_string()),
        }
    }
    ValidationReport {
        name: entry.name.clone(),
        checks,
    }
}

pub fn validate_all(entries: &[CatalogEntry], bound: u32, battery: Battery) -> Vec<ValidationReport> {
    entries.par_iter().map(|e| validate(e, bound, battery)).collect()
}

/// Quadrant generators of a surface catalog, with their computed `τ_1`.
pub fn quadrant_generators(entries: &[CatalogEntry]) -> Result<Vec<QuadrantGenerator>> {
    entries
        .iter()
        .filter(|e| e.claims.quadrant)
        .map(|e| {
            let aut = e.to_aut()?;
            let t = johnson::tau_classical(&aut, 1, 3)?;
            let tau1 = t
                .wedge()
                .ok_or_else(|| Error::Catalog(format!("{}: τ_1 is not a wedge", e.name)))?;
            Ok(QuadrantGenerator {
                name: e.name.clone(),
                aut,
                tau1,
            })
        })
        .collect()
}

/// Entries whose automorphism acts trivially on homology.
pub fn torelli_entries(entries: &[CatalogEntry]) -> Vec<CatalogEntry> {
    entries
        .iter()
        .filter(|e| e.mode == Mode::Surface)
        .filter(|e| {
            e.to_aut()
                .ok()
                .and_then(|h| sigma(&h).ok())
                .is_some_and(|m| {
                    let id = snf::from_i64(&ident_matrix(m.len()));
                    m == id
                })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_tables_fix_boundary() {
        for g in 1..=3 {
            for h in [twist_x(g, g).unwrap(), twist_y(g, 1).unwrap(), knob(g, g).unwrap(), twist_delta(g).unwrap()] {
                assert!(h.fixes_boundary().unwrap());
            }
        }
        for (i, k) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
            assert!(phi(3, i, k).unwrap().fixes_boundary().unwrap());
            assert!(h_pair(3, i, k).unwrap().fixes_boundary().unwrap());
        }
        assert!(handle_swap(3, 2).unwrap().fixes_boundary().unwrap());
        assert!(mirror(3).unwrap().apply(&crate::words::boundary_word(3).unwrap()) == crate::words::boundary_word(3).unwrap().inverse());
    }

    #[test]
    fn sigma_values() {
        let id = FreeGroupAut::identity(AlphabetSpec::surface(2).unwrap());
        assert_eq!(matrix_i64(&sigma(&id).unwrap()), ident_matrix(4));
        assert_eq!(block_shape_classify(&sigma(&id).unwrap()), BlockShape::G);
        // e_ik(1) in the a-block and e_ki(-1) in the b-block
        let m = matrix_i64(&sigma(&phi(3, 1, 3).unwrap()).unwrap());
        let mut want = ident_matrix(6);
        want[0][2] = 1;
        want[5][3] = -1;
        assert_eq!(m, want);
        let t = sigma(&twist_x(2, 2).unwrap()).unwrap();
        assert_eq!(block_shape_classify(&t), BlockShape::T);
        let k = sigma(&knob(2, 1).unwrap()).unwrap();
        assert_eq!(block_shape_classify(&k), BlockShape::G);
    }

    #[test]
    fn shapes() {
        let m = snf::from_i64(&[vec![1, 1], vec![1, 2]]);
        assert_eq!(block_shape_classify(&m), BlockShape::None);
        let h = snf::from_i64(&[vec![-1, 2], vec![0, -1]]);
        assert_eq!(block_shape_classify(&h), BlockShape::H);
        let hp = snf::from_i64(&[vec![-1, 0], vec![3, -1]]);
        assert_eq!(block_shape_classify(&hp), BlockShape::HPrime);
        let tp = snf::from_i64(&[vec![1, 0], vec![-2, 1]]);
        assert_eq!(block_shape_classify(&tp), BlockShape::TPrime);
        let bad = snf::from_i64(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(block_shape_classify(&bad), BlockShape::None);
    }

    #[test]
    fn mirror_wedge_is_an_involution() {
        let w = Wedge3::parse(3, "a1^a2^b3 - 2*b1^b2^b3").unwrap();
        assert_eq!(mirror_wedge(&mirror_wedge(&w)), w);
        assert_eq!(mirror_wedge(&Wedge3::parse(3, "a1^a2^a3").unwrap()).to_string(), "b1^b2^b3");
    }

    #[test]
    fn magnus_counts() {
        let f = magnus_generators(3, 3).unwrap();
        let count = |fam: u8| f.iter().filter(|e| e.family == Some(fam)).count();
        assert_eq!(
            (1..=10).map(count).collect::<Vec<_>>(),
            vec![6, 6, 9, 9, 3, 18, 9, 3, 18, 9]
        );
        assert!(magnus_generators(1, 1).is_err());
        for e in &f {
            assert!(e.to_aut().is_ok(), "{}", e.name);
        }
    }

    #[test]
    fn shipped_files_match_a_fresh_build() {
        let fresh = builtin_catalogs().unwrap();
        for ((name, text), (fname, entries)) in EMBEDDED.iter().zip(&fresh) {
            assert_eq!(name, fname);
            assert_eq!(*text, to_json_text(entries), "{name}.json is stale");
        }
    }

    #[test]
    fn corrupted_claims_are_named() {
        let mut e = find("surface_g2:h_12").unwrap();
        assert!(validate(&e, 3, Battery::default()).passed());
        e.claims.tau1 = Some("a1^a2^b2".into());
        e.claims.level = Some([2, 0]);
        let r = validate(&e, 3, Battery::default());
        let failed: Vec<&str> = r.failures().iter().map(|c| c.claim.as_str()).collect();
        assert_eq!(failed, vec!["level (2,0)", "tau1"]);
        let mut e = find("t_x1").unwrap();
        e.inv.insert("y1".into(), "x1 y1".into());
        let r = validate(&e, 3, Battery::default());
        assert_eq!(r.failures()[0].claim, "inverse tables");
    }

    #[test]
    fn edge_tau_of_twist_commutator() {
        let c = twist_commutator(3, 1, 2, 3).unwrap();
        let t = johnson::tau_at(&c, ExtPair::new(2, -1), 4, Battery::default()).unwrap();
        assert_eq!(t.wedge().unwrap().to_string(), "a1^a2^a3");
        let m = mirrored(&c).unwrap();
        let t = johnson::tau_at(&m, ExtPair::new(-1, 2), 4, Battery::default()).unwrap();
        assert_eq!(t.wedge().unwrap().to_string(), "b1^b2^b3");
    }

    #[test]
    fn quadrant_set_reconstructs_mixed_element() {
        let cat = surface_catalog(3).unwrap();
        let gens = quadrant_generators(&cat).unwrap();
        assert_eq!(gens.len(), 20);
        let h = cat.iter().find(|e| e.name == "torelli_mix").unwrap().to_aut().unwrap();
        let r = johnson::reconstruct_torelli(&h, &gens).unwrap();
        assert!(r.ok());
        assert!(r.residual.is_zero());
    }

    #[test]
    fn entry_roundtrip() {
        let e = &surface_catalog(2).unwrap()[0];
        let back = parse_catalog(&to_json_text(std::slice::from_ref(e))).unwrap();
        assert_eq!(&back[0], e);
        assert_eq!(back[0].to_aut().unwrap(), twist_x(2, 1).unwrap());
    }
}
