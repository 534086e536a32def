//! Affine Weyl group elements as exact affine maps.
//!
//! An element `u` is stored as the map `γ ↦ Pγ + ξ` sending a point to its
//! image `γu` under the (right) defining action, so `P` is the finite part
//! `P_{ū}` and `ξ = ξ(u)` is the coroot-lattice translation. Left
//! multiplication by a letter pre-composes:
//!
//! ```text
//! s_i · u  =  (P · P_{s̄_i},  ξ + P · ξ(s_i)),   ξ(s_0) = θ∨, ξ(s_i) = 0 (i ≥ 1)
//! ```
//!
//! Three representations share that convention:
//! [`AffineElement`] (big rationals, the reference), [`IntAffine`] (integer
//! matrices at the root system's common scale) and [`FastElement`] (finite
//! part as an index into an enumerated [`FiniteWeylTable`] when one fits).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_q, QMat, QVec, Q};
use crate::rootsys::{Family, RootSystem};

pub const DEFAULT_WEYL_BUDGET: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    system: (Family, usize),
    p: QMat,
    xi: QVec,
}

impl AffineElement {
    pub fn identity(rs: &RootSystem) -> Self {
        AffineElement {
            system: (rs.family(), rs.rank()),
            p: QMat::identity(rs.ambient_dim()),
            xi: QVec::zeros(rs.ambient_dim()),
        }
    }

    /// The element represented by a word in written order (rightmost letter
    /// applied first).
    pub fn from_word(rs: &RootSystem, letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .rev()
            .try_fold(Self::identity(rs), |u, &i| u.apply_letter(rs, i))
    }

    pub fn finite_part(&self) -> &QMat {
        &self.p
    }

    pub fn translation(&self) -> &QVec {
        &self.xi
    }

    pub fn system(&self) -> (Family, usize) {
        self.system
    }

    pub fn is_identity(&self) -> bool {
        self.xi.is_zero() && self.p == QMat::identity(self.p.rows())
    }

    fn check_system(&self, rs: &RootSystem) -> Result<()> {
        if self.system != (rs.family(), rs.rank()) {
            Err(Error::MixedRootSystems)
        } else {
            Ok(())
        }
    }

    /// `s_i · self`.
    pub fn apply_letter(&self, rs: &RootSystem, letter: usize) -> Result<Self> {
        self.check_system(rs)?;
        rs.check_letter(letter)?;
        let p = &self.p * rs.reflection(letter);
        let xi = if letter == 0 {
            &self.xi + &self.p.mul_vec(rs.theta_coroot())
        } else {
            self.xi.clone()
        };
        Ok(AffineElement {
            system: self.system,
            p,
            xi,
        })
    }

    /// Image of a point: `γ ↦ Pγ + ξ`.
    pub fn act(&self, point: &QVec) -> QVec {
        &self.p.mul_vec(point) + &self.xi
    }

    pub fn inverse(&self) -> Self {
        let pt = self.p.transpose();
        let xi = -&pt.mul_vec(&self.xi);
        AffineElement {
            system: self.system,
            p: pt,
            xi,
        }
    }

    /// Centroid `u•` of the alcove `A u`.
    pub fn centroid(&self, rs: &RootSystem) -> QVec {
        self.act(rs.fundamental_centroid())
    }

    /// Number of hyperplanes `H_β^k` separating `u•` from `1•`.
    pub fn coxeter_length(&self, rs: &RootSystem) -> u64 {
        let c = self.centroid(rs);
        let base = rs.fundamental_centroid();
        rs.positive_roots()
            .iter()
            .map(|b| {
                let hi = c.dot(b).floor().to_integer();
                let lo = base.dot(b).floor().to_integer();
                (hi - lo).abs().to_u64().expect("length fits in u64")
            })
            .sum()
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            p: self.p.to_string_rows(),
            xi: self.xi.to_strings(),
        }
    }

    pub fn from_json(rs: &RootSystem, json: &ElementJson) -> Result<Self> {
        let n = rs.ambient_dim();
        let parse = |s: &String| parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")));
        if json.p.len() != n || json.p.iter().any(|r| r.len() != n) || json.xi.len() != n {
            return Err(Error::Parse(format!("element must be {n}x{n} with a length-{n} translation")));
        }
        let rows = json
            .p
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let xi = QVec(json.xi.iter().map(parse).collect::<Result<Vec<_>>>()?);
        Ok(AffineElement {
            system: (rs.family(), rs.rank()),
            p: QMat::from_rows(rows),
            xi,
        })
    }
}

/// Group product `u·v`, acting on points as `γ ↦ (γu)v`. With this
/// convention `multiply(s_i, u) == u.apply_letter(i)`.
pub fn multiply(u: &AffineElement, v: &AffineElement) -> Result<AffineElement> {
    if u.system != v.system {
        return Err(Error::MixedRootSystems);
    }
    Ok(AffineElement {
        system: u.system,
        p: &v.p * &u.p,
        xi: &v.xi + &v.p.mul_vec(&u.xi),
    })
}

pub fn apply_letter(rs: &RootSystem, u: &AffineElement, letter: usize) -> Result<AffineElement> {
    u.apply_letter(rs, letter)
}

pub fn centroid(rs: &RootSystem, u: &AffineElement) -> QVec {
    u.centroid(rs)
}

pub fn coxeter_length(rs: &RootSystem, u: &AffineElement) -> u64 {
    u.coxeter_length(rs)
}

/// JSON form `{P: row-major rational strings, xi: rational strings}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    pub xi: Vec<String>,
}

/// Scaled integer matrix helpers. All matrices are `n × n` row-major and
/// hold `D · P`; products divide by `D` and assert exactness.
pub(crate) fn mat_mul_scaled(a: &[i64], b: &[i64], n: usize, d: i64, out: &mut [i64]) {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for k in 0..n {
                s += a[i * n + k] * b[k * n + j];
            }
            assert!(s % d == 0, "scaled product left the 1/D grid");
            out[i * n + j] = s / d;
        }
    }
}

pub(crate) fn mat_vec_scaled(a: &[i64], v: &[i64], n: usize, d: i64, out: &mut [i64]) {
    for i in 0..n {
        let mut s = 0i64;
        for k in 0..n {
            s += a[i * n + k] * v[k];
        }
        assert!(s % d == 0, "scaled product left the 1/D grid");
        out[i] = s / d;
    }
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Floor of `⟨x, β⟩` for every positive root, where `x = P·1•` with `P`
/// given as a scaled matrix.
fn centroid_floors(rs: &RootSystem, m: &[i64]) -> Vec<i64> {
    let sd = rs.scaled();
    let n = rs.ambient_dim();
    let mut mz = vec![0i64; n];
    // M·z with z = c·1•; no division (scale D·c kept in the denominator).
    for i in 0..n {
        mz[i] = (0..n).map(|k| m[i * n + k] * sd.centroid[k]).sum();
    }
    let den = sd.scale * sd.scale * sd.centroid_den;
    sd.positive_roots
        .iter()
        .map(|b| Integer::div_floor(&dot_i64(b, &mz), &den))
        .collect()
}

/// An affine element with integer entries at the root system's scale `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntAffine {
    pub m: Vec<i64>,
    pub xi: Vec<i64>,
}

impl IntAffine {
    pub fn identity(rs: &RootSystem) -> Self {
        let n = rs.ambient_dim();
        let d = rs.scaled().scale;
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = d;
        }
        IntAffine { m, xi: vec![0; n] }
    }

    /// In-place `self ← s_i · self`, reusing `scratch` (length `n²`).
    pub fn apply_letter_into(&mut self, rs: &RootSystem, letter: usize, scratch: &mut Vec<i64>) {
        let sd = rs.scaled();
        let n = rs.ambient_dim();
        if letter == 0 {
            let mut t = vec![0i64; n];
            mat_vec_scaled(&self.m, &sd.theta_coroot, n, sd.scale, &mut t);
            for (x, y) in self.xi.iter_mut().zip(&t) {
                *x += y;
            }
        }
        scratch.resize(n * n, 0);
        mat_mul_scaled(&self.m, &sd.reflections[letter], n, sd.scale, scratch);
        std::mem::swap(&mut self.m, scratch);
    }

    pub fn apply_letter(&self, rs: &RootSystem, letter: usize) -> Self {
        let mut out = self.clone();
        let mut scratch = Vec::new();
        out.apply_letter_into(rs, letter, &mut scratch);
        out
    }

    pub fn finite_is_identity(&self, rs: &RootSystem) -> bool {
        *self == IntAffine {
            xi: self.xi.clone(),
            ..IntAffine::identity(rs)
        }
    }

    pub fn to_exact(&self, rs: &RootSystem) -> AffineElement {
        let n = rs.ambient_dim();
        let d = BigInt::from(rs.scaled().scale);
        let qd = |x: i64| Q::new(BigInt::from(x), d.clone());
        AffineElement {
            system: (rs.family(), rs.rank()),
            p: QMat::from_rows((0..n).map(|i| (0..n).map(|j| qd(self.m[i * n + j])).collect()).collect()),
            xi: QVec(self.xi.iter().map(|&x| qd(x)).collect()),
        }
    }

    pub fn from_exact(rs: &RootSystem, u: &AffineElement) -> Self {
        let d = Q::from_integer(BigInt::from(rs.scaled().scale));
        let conv = |x: &Q| {
            let y = x * &d;
            assert!(y.is_integer(), "element not on the 1/D grid");
            y.to_integer().to_i64().expect("fits in i64")
        };
        IntAffine {
            m: u.p.entries().iter().map(conv).collect(),
            xi: u.xi.0.iter().map(conv).collect(),
        }
    }

    pub fn coxeter_length(&self, rs: &RootSystem) -> u64 {
        let floors = centroid_floors(rs, &self.m);
        length_from_floors(rs, &floors, &self.xi)
    }
}

fn length_from_floors(rs: &RootSystem, floors: &[i64], xi: &[i64]) -> u64 {
    let sd = rs.scaled();
    let d2 = sd.scale * sd.scale;
    // floor(⟨1•, β⟩) = 0 for positive β, and ⟨ξ, β⟩ ∈ ℤ.
    sd.positive_roots
        .iter()
        .zip(floors)
        .map(|(b, f)| {
            let t = dot_i64(b, xi);
            debug_assert!(t % d2 == 0);
            (f + t / d2).unsigned_abs()
        })
        .sum()
}

/// The finite Weyl group `W̄`, enumerated as scaled integer matrices with
/// right-multiplication tables by each `P_{s̄_i}` and per-element geometry
/// caches used by the Monte Carlo fast path.
#[derive(Clone, Debug)]
pub struct FiniteWeylTable {
    n: usize,
    elements: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    /// `next[w][i]` is the index of `M_w · P_{s̄_i}`.
    next: Vec<Vec<u32>>,
    theta_images: Vec<Vec<i64>>,
    floors: Vec<Vec<i64>>,
    centroid_images: Vec<Vec<f64>>,
}

pub fn enumerate_finite_weyl(rs: &RootSystem, budget: usize) -> Result<FiniteWeylTable> {
    FiniteWeylTable::new(rs, budget)
}

impl FiniteWeylTable {
    pub fn new(rs: &RootSystem, budget: usize) -> Result<Self> {
        if rs.weyl_order() > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: "finite Weyl group enumeration",
                needed: rs.weyl_order(),
                budget: budget as u128,
            });
        }
        let n = rs.ambient_dim();
        let sd = rs.scaled();
        let letters = rs.num_letters();
        let id = IntAffine::identity(rs).m;
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut next: Vec<Vec<u32>> = Vec::new();
        let mut scratch = vec![0i64; n * n];
        let mut w = 0;
        while w < elements.len() {
            let mut row = Vec::with_capacity(letters);
            for i in 0..letters {
                mat_mul_scaled(&elements[w], &sd.reflections[i], n, sd.scale, &mut scratch);
                let idx = match index.get(&scratch) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= budget {
                            return Err(Error::BudgetExceeded {
                                what: "finite Weyl group enumeration",
                                needed: elements.len() as u128 + 1,
                                budget: budget as u128,
                            });
                        }
                        let k = elements.len() as u32;
                        elements.push(scratch.clone());
                        index.insert(scratch.clone(), k);
                        k
                    }
                };
                row.push(idx);
            }
            next.push(row);
            w += 1;
        }

        let centroid_f: Vec<f64> = rs.fundamental_centroid().to_f64();
        let mut theta_images = Vec::with_capacity(elements.len());
        let mut floors = Vec::with_capacity(elements.len());
        let mut centroid_images = Vec::with_capacity(elements.len());
        for m in &elements {
            let mut t = vec![0i64; n];
            mat_vec_scaled(m, &sd.theta_coroot, n, sd.scale, &mut t);
            theta_images.push(t);
            floors.push(centroid_floors(rs, m));
            let img: Vec<f64> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| m[i * n + k] as f64 * centroid_f[k])
                        .sum::<f64>()
                        / sd.scale as f64
                })
                .collect();
            centroid_images.push(img);
        }

        Ok(FiniteWeylTable {
            n,
            elements,
            index,
            next,
            theta_images,
            floors,
            centroid_images,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    /// Scaled matrix `D · P_w`.
    pub fn matrix(&self, w: u32) -> &[i64] {
        &self.elements[w as usize]
    }

    pub fn index_of(&self, scaled: &[i64]) -> Option<u32> {
        self.index.get(scaled).copied()
    }

    /// Index of `P_w · P_{s̄_i}`, the finite part of `s_i · u` when `ū = w`.
    pub fn step(&self, w: u32, letter: usize) -> u32 {
        self.next[w as usize][letter]
    }

    /// Index of `P_a · P_b`.
    pub fn product(&self, rs: &RootSystem, a: u32, b: u32) -> u32 {
        let mut out = vec![0i64; self.n * self.n];
        mat_mul_scaled(self.matrix(a), self.matrix(b), self.n, rs.scaled().scale, &mut out);
        self.index_of(&out).expect("closed under products")
    }

    pub fn theta_image(&self, w: u32) -> &[i64] {
        &self.theta_images[w as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum FinitePart {
    Index(u32),
    Matrix(Vec<i64>),
}

/// Walk state for the Monte Carlo kernels. Exact: the translation is the
/// scaled integer vector `D · ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FastElement {
    finite: FinitePart,
    xi: Vec<i64>,
}

impl FastElement {
    pub fn scaled_translation(&self) -> &[i64] {
        &self.xi
    }

    pub fn finite_index(&self) -> Option<u32> {
        match self.finite {
            FinitePart::Index(w) => Some(w),
            FinitePart::Matrix(_) => None,
        }
    }
}

/// Group arithmetic for walks: table-driven when `W̄` fits in the budget,
/// scaled integer matrices otherwise.
#[derive(Clone, Debug)]
pub struct FastGroup<'a> {
    rs: &'a RootSystem,
    table: Option<FiniteWeylTable>,
}

impl<'a> FastGroup<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_budget(rs, DEFAULT_WEYL_BUDGET)
    }

    pub fn with_budget(rs: &'a RootSystem, budget: usize) -> Self {
        FastGroup {
            rs,
            table: FiniteWeylTable::new(rs, budget).ok(),
        }
    }

    /// Matrix path regardless of `|W̄|`.
    pub fn matrix_only(rs: &'a RootSystem) -> Self {
        FastGroup { rs, table: None }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn table(&self) -> Option<&FiniteWeylTable> {
        self.table.as_ref()
    }

    pub fn identity(&self) -> FastElement {
        let n = self.rs.ambient_dim();
        FastElement {
            finite: match &self.table {
                Some(t) => FinitePart::Index(t.identity_index()),
                None => FinitePart::Matrix(IntAffine::identity(self.rs).m),
            },
            xi: vec![0; n],
        }
    }

    pub fn apply_letter(&self, u: &mut FastElement, letter: usize) {
        match (&mut u.finite, &self.table) {
            (FinitePart::Index(w), Some(t)) => {
                if letter == 0 {
                    for (x, y) in u.xi.iter_mut().zip(t.theta_image(*w)) {
                        *x += y;
                    }
                }
                *w = t.step(*w, letter);
            }
            (FinitePart::Matrix(m), _) => {
                let mut ia = IntAffine {
                    m: std::mem::take(m),
                    xi: std::mem::take(&mut u.xi),
                };
                let mut scratch = Vec::new();
                ia.apply_letter_into(self.rs, letter, &mut scratch);
                *m = ia.m;
                u.xi = ia.xi;
            }
            (FinitePart::Index(_), None) => unreachable!("indexed element without a table"),
        }
    }

    /// `u ← v · u`.
    pub fn left_multiply(&self, v: &FastElement, u: &mut FastElement) {
        let n = self.rs.ambient_dim();
        let d = self.rs.scaled().scale;
        let pu = self.matrix_of(u);
        let mut t = vec![0i64; n];
        mat_vec_scaled(&pu, &v.xi, n, d, &mut t);
        for (x, y) in u.xi.iter_mut().zip(&t) {
            *x += y;
        }
        let pv = self.matrix_of(v);
        let mut prod = vec![0i64; n * n];
        mat_mul_scaled(&pu, &pv, n, d, &mut prod);
        u.finite = match &self.table {
            Some(t) => FinitePart::Index(t.index_of(&prod).expect("closed under products")),
            None => FinitePart::Matrix(prod),
        };
    }

    fn matrix_of(&self, u: &FastElement) -> Vec<i64> {
        match (&u.finite, &self.table) {
            (FinitePart::Index(w), Some(t)) => t.matrix(*w).to_vec(),
            (FinitePart::Matrix(m), _) => m.clone(),
            (FinitePart::Index(_), None) => unreachable!("indexed element without a table"),
        }
    }

    pub fn finite_is_identity(&self, u: &FastElement) -> bool {
        match &u.finite {
            FinitePart::Index(w) => *w == 0,
            FinitePart::Matrix(m) => *m == IntAffine::identity(self.rs).m,
        }
    }

    pub fn is_identity(&self, u: &FastElement) -> bool {
        u.xi.iter().all(|&x| x == 0) && self.finite_is_identity(u)
    }

    pub fn coxeter_length(&self, u: &FastElement) -> u64 {
        match (&u.finite, &self.table) {
            (FinitePart::Index(w), Some(t)) => length_from_floors(self.rs, &t.floors[*w as usize], &u.xi),
            _ => length_from_floors(self.rs, &centroid_floors(self.rs, &self.matrix_of(u)), &u.xi),
        }
    }

    /// Ambient float coordinates of `u•`.
    pub fn centroid_f64(&self, u: &FastElement) -> Vec<f64> {
        let d = self.rs.scaled().scale as f64;
        let base: Vec<f64> = match (&u.finite, &self.table) {
            (FinitePart::Index(w), Some(t)) => t.centroid_images[*w as usize].clone(),
            _ => {
                let m = self.matrix_of(u);
                let n = self.rs.ambient_dim();
                let c = self.rs.fundamental_centroid().to_f64();
                (0..n)
                    .map(|i| (0..n).map(|k| m[i * n + k] as f64 * c[k]).sum::<f64>() / d)
                    .collect()
            }
        };
        base.iter().zip(&u.xi).map(|(b, x)| b + *x as f64 / d).collect()
    }

    /// Ambient float coordinates of `ξ(u)`.
    pub fn translation_f64(&self, u: &FastElement) -> Vec<f64> {
        let d = self.rs.scaled().scale as f64;
        u.xi.iter().map(|&x| x as f64 / d).collect()
    }

    pub fn to_int_affine(&self, u: &FastElement) -> IntAffine {
        IntAffine {
            m: self.matrix_of(u),
            xi: u.xi.clone(),
        }
    }

    pub fn to_exact(&self, u: &FastElement) -> AffineElement {
        self.to_int_affine(u).to_exact(self.rs)
    }
}

/// Scalar used by callers that need `D` as a rational.
pub fn scale_q(rs: &RootSystem) -> Q {
    Q::from_integer(BigInt::from(rs.scaled().scale))
}
