//! The quivers `Q(f,g,h)`: `f` arrows `1 → 2`, `g` arrows `2 → 3` and `h`
//! arrows `3 → 2`, and the construction of the indecomposable representation
//! for each of their real roots.
//!
//! Letters of Weyl words are vertex positions, so `0, 1, 2` stand for
//! `s1, s2, s3`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{bgp_construct, sigma};
use crate::linalg::{Field, Mat};
use crate::quiver::{apply_word, classify_root, ringel_form, root_expression, DimVector, Quiver, RootClass, WeylWord};
use crate::rep::{simple_rep, Representation};

const S1: usize = 0;
const S2: usize = 1;
const S3: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    f: usize,
    g: usize,
    h: usize,
}

impl FamilyParams {
    pub fn new(f: usize, g: usize, h: usize) -> Result<FamilyParams> {
        if f == 0 || g == 0 || h == 0 {
            return Err(Error::input(format!("family parameters must be at least 1, got ({f},{g},{h})")));
        }
        Ok(FamilyParams { f, g, h })
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn h(&self) -> usize {
        self.h
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({},{},{})", self.f, self.g, self.h)
    }
}

/// Vertices `1, 2, 3`; arrows `lambda1..f`, `mu1..g`, `nu1..h` in that order.
pub fn build_family(p: FamilyParams) -> Quiver {
    let mut arrows = Vec::new();
    for k in 1..=p.f {
        arrows.push((format!("lambda{k}"), "1".to_string(), "2".to_string()));
    }
    for k in 1..=p.g {
        arrows.push((format!("mu{k}"), "2".to_string(), "3".to_string()));
    }
    for k in 1..=p.h {
        arrows.push((format!("nu{k}"), "3".to_string(), "2".to_string()));
    }
    Quiver::new(&["1".to_string(), "2".to_string(), "3".to_string()], &arrows).expect("family quiver is well formed")
}

/// The full subquiver on vertices `1, 2`: the generalized Kronecker quiver
/// with `f` arrows.
pub fn prime_subquiver(f: usize) -> Quiver {
    let arrows: Vec<(String, String, String)> =
        (1..=f).map(|k| (format!("lambda{k}"), "1".to_string(), "2".to_string())).collect();
    Quiver::new(&["1".to_string(), "2".to_string()], &arrows).expect("Kronecker quiver is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EKind {
    Zeta1,
    Zeta2,
    Rho1,
    Rho2,
    Identity,
}

/// An element of `E`: `ζ1(n) = (s1 s2)^n s1`, `ζ2(n) = (s2 s1)^n s2`,
/// `ρ1(n) = (s1 s2)^n`, `ρ2(n) = (s2 s1)^n`, or the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EElement {
    pub kind: EKind,
    pub n: usize,
}

impl EElement {
    pub const IDENTITY: EElement = EElement { kind: EKind::Identity, n: 0 };

    pub fn zeta1(n: usize) -> EElement {
        EElement { kind: EKind::Zeta1, n }
    }

    pub fn zeta2(n: usize) -> EElement {
        EElement { kind: EKind::Zeta2, n }
    }

    /// `ρ1(0)` is the identity and is returned as such.
    pub fn rho1(n: usize) -> EElement {
        if n == 0 {
            EElement::IDENTITY
        } else {
            EElement { kind: EKind::Rho1, n }
        }
    }

    pub fn rho2(n: usize) -> EElement {
        if n == 0 {
            EElement::IDENTITY
        } else {
            EElement { kind: EKind::Rho2, n }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == EKind::Identity
    }
}

impl fmt::Display for EElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EKind::Zeta1 => write!(f, "zeta1({})", self.n),
            EKind::Zeta2 => write!(f, "zeta2({})", self.n),
            EKind::Rho1 => write!(f, "rho1({})", self.n),
            EKind::Rho2 => write!(f, "rho2({})", self.n),
            EKind::Identity => f.write_str("1"),
        }
    }
}

fn alternating(first: usize, len: usize) -> Vec<usize> {
    let other = if first == S1 { S2 } else { S1 };
    (0..len).map(|k| if k % 2 == 0 { first } else { other }).collect()
}

pub fn word_of(e: EElement) -> WeylWord {
    WeylWord(match e.kind {
        EKind::Zeta1 => alternating(S1, 2 * e.n + 1),
        EKind::Zeta2 => alternating(S2, 2 * e.n + 1),
        EKind::Rho1 => alternating(S1, 2 * e.n),
        EKind::Rho2 => alternating(S2, 2 * e.n),
        EKind::Identity => Vec::new(),
    })
}

/// Syntactic match of an alternating word in `s1, s2` against the shapes of `E`.
pub fn recognize_e(w: &[usize]) -> Option<EElement> {
    let Some(&first) = w.first() else {
        return Some(EElement::IDENTITY);
    };
    if first > S2 || w != alternating(first, w.len()) {
        return None;
    }
    let n = w.len() / 2;
    Some(match (first, w.len() % 2) {
        (S1, 1) => EElement::zeta1(n),
        (_, 1) => EElement::zeta2(n),
        (S1, _) => EElement::rho1(n),
        _ => EElement::rho2(n),
    })
}

/// Shortens an alternating word using `(s1 s2)^3 = 1`, valid when `f = 1`.
fn reduce_dihedral(block: Vec<usize>) -> Vec<usize> {
    let len = block.len() % 6;
    if len <= 3 {
        return block[..len].to_vec();
    }
    let other = if block[0] == S1 { S2 } else { S1 };
    alternating(other, 6 - len)
}

/// `s1 · block`, cancelling a leading `s1`.
fn prepend_s1(mut block: Vec<usize>, p: FamilyParams) -> Vec<usize> {
    if block.first() == Some(&S1) {
        block.remove(0);
    } else {
        block.insert(0, S1);
    }
    if p.f == 1 {
        reduce_dihedral(block)
    } else {
        block
    }
}

/// `w = χ_m s3 χ_{m-1} s3 ... s3 χ_1`, stored as `[χ_m, ..., χ_1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarForm {
    pub chis: Vec<EElement>,
}

impl StarForm {
    pub fn flatten(&self) -> WeylWord {
        let mut letters = Vec::new();
        for (k, chi) in self.chis.iter().enumerate() {
            if k > 0 {
                letters.push(S3);
            }
            letters.extend(word_of(*chi).0);
        }
        WeylWord(letters)
    }

    /// Checks the grammar: at least two blocks; every block except the last is
    /// `ζ1(n)` with `n >= 1` or some `ζ2(n)`; the first may also be the
    /// identity; when `f = 1` every `n` is at most 1.
    pub fn check_grammar(&self, p: FamilyParams) -> Result<()> {
        let m = self.chis.len();
        if m < 2 {
            return Err(Error::input("a star form needs at least one s3 separator"));
        }
        for (k, chi) in self.chis.iter().enumerate() {
            let last = k == m - 1;
            let ok = match chi.kind {
                EKind::Zeta1 => last || chi.n >= 1,
                EKind::Zeta2 => true,
                EKind::Identity => last || k == 0,
                EKind::Rho1 | EKind::Rho2 => last,
            };
            if !ok {
                return Err(Error::input(format!("block {} ({chi}) is not allowed at that position", k + 1)));
            }
            if p.f == 1 && chi.n > 1 {
                return Err(Error::input(format!("block {chi} exceeds n = 1 although f = 1")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for StarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chis.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" s3 "))
    }
}

/// Splits `w` at every `s3` into alternating blocks, left to right.
fn segment(w: &WeylWord, p: FamilyParams) -> Result<Vec<Vec<usize>>> {
    if let Some(&bad) = w.letters().iter().find(|&&l| l > S3) {
        return Err(Error::input(format!("letter {bad} is not a vertex of the family")));
    }
    let mut blocks: Vec<Vec<usize>> = w.letters().split(|&l| l == S3).map(<[usize]>::to_vec).collect();
    for (k, b) in blocks.iter_mut().enumerate() {
        if recognize_e(b).is_none() {
            return Err(Error::input(format!("block {} {:?} does not alternate between s1 and s2", k + 1, b)));
        }
        if p.f == 1 {
            *b = reduce_dihedral(std::mem::take(b));
        }
    }
    Ok(blocks)
}

/// Splits `w` into blocks and checks the starting shape of the rewriting:
/// at least one `s3`, no leading lone `s1`, and no interior block that is
/// empty or a lone `s1`.
fn segment_checked(w: &WeylWord, p: FamilyParams) -> Result<Vec<Vec<usize>>> {
    let blocks = segment(w, p)?;
    let m = blocks.len();
    if m < 2 {
        return Err(Error::input("word contains no s3 and already lies in E"));
    }
    if blocks[0] == [S1] {
        return Err(Error::input("leading block is s1"));
    }
    for (k, b) in blocks.iter().enumerate().take(m - 1).skip(1) {
        if b.is_empty() || *b == [S1] {
            return Err(Error::input(format!("interior block {} is {}", k + 1, if b.is_empty() { "empty" } else { "s1" })));
        }
    }
    Ok(blocks)
}

/// Whether `w` has the shape [`rewrite_to_star`] accepts.
pub fn is_segmentable(w: &WeylWord, p: FamilyParams) -> bool {
    segment_checked(w, p).is_ok()
}

/// Rewrites `w` into the star form by descending induction over the blocks,
/// moving a trailing `s1` of any `ρ` block across the following `s3`.
pub fn rewrite_to_star(w: &WeylWord, p: FamilyParams) -> Result<StarForm> {
    let mut blocks = segment_checked(w, p)?;
    let m = blocks.len();
    let mut chis = Vec::with_capacity(m);
    for k in 0..m - 1 {
        let e = recognize_e(&blocks[k]).expect("segment checked alternation");
        let (chi, carry) = match e.kind {
            EKind::Identity if k == 0 => (e, false),
            EKind::Zeta1 if e.n >= 1 => (e, false),
            EKind::Zeta2 => (e, false),
            EKind::Rho1 => (EElement::zeta1(e.n), true),
            EKind::Rho2 => (EElement::zeta2(e.n - 1), true),
            _ => return Err(Error::input(format!("block {} became {e} during rewriting", k + 1))),
        };
        if carry {
            let next = std::mem::take(&mut blocks[k + 1]);
            blocks[k + 1] = prepend_s1(next, p);
        }
        chis.push(chi);
    }
    chis.push(recognize_e(&blocks[m - 1]).expect("prepending s1 keeps alternation"));
    let form = StarForm { chis };
    form.check_grammar(p)?;
    Ok(form)
}

/// The `Q'(f)` root `χ'` with `σ_{ζ_i(n)} = σ_{X_χ'}`, as a dimension vector
/// over `Q(f,g,h)` with zero third coordinate.
pub fn sigma_zeta(i: usize, n: usize, p: FamilyParams) -> Result<DimVector> {
    if i == 1 && n == 0 {
        return Err(Error::input("zeta1(n) needs n >= 1 here"));
    }
    if p.f == 1 && n > 1 {
        return Err(Error::input("with f = 1 only n <= 1 occurs"));
    }
    let (element, start) = match (i, n % 2) {
        (1, 0) => (EElement::rho1(n / 2), S1),
        (1, _) => (EElement::zeta1((n - 1) / 2), S2),
        (2, 0) => (EElement::rho2(n / 2), S2),
        (2, _) => (EElement::zeta2((n - 1) / 2), S1),
        _ => return Err(Error::input(format!("zeta index must be 1 or 2, got {i}"))),
    };
    let q = build_family(p);
    apply_word(&q, &word_of(element), &DimVector::unit(3, start))
}

fn zeta_index(e: EElement) -> Option<(usize, usize)> {
    match e.kind {
        EKind::Zeta1 => Some((1, e.n)),
        EKind::Zeta2 => Some((2, e.n)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "functor", rename_all = "snake_case")]
pub enum StageTag {
    /// Start from a simple representation.
    Simple { vertex: String },
    /// Start from a representation of `Q'(f)` built by BGP reflections.
    Bgp { word: String },
    /// `σ_{S(vertex)}`.
    SigmaSimple { vertex: String },
    /// `σ_{X_root}` standing for `σ_element`.
    SigmaRoot { element: String, root: DimVector },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    #[serde(flatten)]
    pub tag: StageTag,
    pub dims: DimVector,
    pub predicted_end_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub params: FamilyParams,
    pub target: DimVector,
    /// Greedy root expression `w` and start vertex `j` with `α = w(e_j)`.
    pub word: Option<String>,
    pub start_vertex: Option<String>,
    pub star_form: Option<String>,
    pub stages: Vec<Stage>,
}

impl ConstructionTrace {
    fn new(p: FamilyParams, target: DimVector) -> ConstructionTrace {
        ConstructionTrace { params: p, target, word: None, start_vertex: None, star_form: None, stages: Vec::new() }
    }
}

/// Sums the endomorphism-dimension increments `<Y,S><S,Y>` over the σ stages
/// of a trace, starting from 1 at the base.
pub fn predicted_end_dim(trace: &ConstructionTrace) -> i64 {
    let q = build_family(trace.params);
    let mut total = 1;
    let mut previous: Option<&DimVector> = None;
    for stage in &trace.stages {
        let s = match &stage.tag {
            StageTag::Simple { .. } | StageTag::Bgp { .. } => {
                total = 1;
                previous = Some(&stage.dims);
                continue;
            }
            StageTag::SigmaSimple { vertex } => DimVector::unit(3, q.vertex_index(vertex).expect("trace vertex")),
            StageTag::SigmaRoot { root, .. } => root.clone(),
        };
        let y = previous.expect("σ stage after a base");
        total += ringel_form(&q, y, &s).unwrap() * ringel_form(&q, &s, y).unwrap();
        previous = Some(&stage.dims);
    }
    total
}

struct Builder {
    p: FamilyParams,
    q: Quiver,
    field: Field,
    trace: ConstructionTrace,
    end: i64,
}

impl Builder {
    fn fail(&self, err: Error) -> Error {
        match err {
            Error::Construction { .. } => err,
            other => Error::Construction { message: other.to_string(), trace: Box::new(self.trace.clone()) },
        }
    }

    fn push(&mut self, tag: StageTag, x: &Representation) {
        self.trace.stages.push(Stage { tag, dims: x.dim_vector(), predicted_end_dim: self.end });
    }

    fn start_simple(&mut self, j: usize) -> Result<Representation> {
        let x = simple_rep(&self.q, self.field, j)?;
        self.end = 1;
        self.push(StageTag::Simple { vertex: self.q.vertex_id(j).to_string() }, &x);
        Ok(x)
    }

    fn start_bgp(&mut self, alpha: &DimVector) -> Result<Representation> {
        let x = prime_root_rep(self.p, self.field, alpha)?;
        let q2 = prime_subquiver(self.p.f);
        let restricted = DimVector::new(alpha.coords()[..2].to_vec());
        let (w, j) = root_expression(&q2, &restricted)?;
        self.end = 1;
        let word = format!("{} e{}", w.display(&q2), q2.vertex_id(j));
        self.push(StageTag::Bgp { word }, &x);
        Ok(x)
    }

    fn apply(&mut self, s: &Representation, x: &Representation, tag: StageTag) -> Result<Representation> {
        let y = x.dim_vector();
        let d = s.dim_vector();
        let out = sigma(s, x)?;
        self.end += ringel_form(&self.q, &y, &d)? * ringel_form(&self.q, &d, &y)?;
        self.push(tag, &out);
        Ok(out)
    }

    fn apply_simple(&mut self, v: usize, x: &Representation) -> Result<Representation> {
        let s = simple_rep(&self.q, self.field, v)?;
        self.apply(&s, x, StageTag::SigmaSimple { vertex: self.q.vertex_id(v).to_string() })
    }

    fn apply_zeta(&mut self, chi: EElement, x: &Representation) -> Result<Representation> {
        let (i, n) = zeta_index(chi).ok_or_else(|| Error::input(format!("{chi} is not a zeta element")))?;
        let root = sigma_zeta(i, n, self.p)?;
        let s = prime_root_rep(self.p, self.field, &root)?;
        self.apply(&s, x, StageTag::SigmaRoot { element: chi.to_string(), root })
    }

    /// `X_{χ1(e_j)}`.
    fn base(&mut self, chi: EElement, j: usize) -> Result<Representation> {
        let alpha = apply_word(&self.q, &word_of(chi), &DimVector::unit(3, j))?;
        if alpha.simple_index() == Some(j) {
            return self.start_simple(j);
        }
        if j != S3 {
            return self.start_bgp(&alpha);
        }
        // ρ1(n)(e3) = ζ1(n)(e3) and ρ2(n)(e3) = ζ2(n-1)(e3) since s1 fixes e3
        let zeta = match chi.kind {
            EKind::Rho1 => EElement::zeta1(chi.n),
            EKind::Rho2 => EElement::zeta2(chi.n - 1),
            _ => chi,
        };
        let s3 = self.start_simple(S3)?;
        self.apply_zeta(zeta, &s3)
    }
}

/// The representation of `Q'(f)` for a real root `alpha` (third coordinate
/// zero), extended by zero to `Q(f,g,h)`.
pub fn prime_root_rep(p: FamilyParams, field: Field, alpha: &DimVector) -> Result<Representation> {
    if alpha.len() != 3 || alpha[2] != 0 {
        return Err(Error::input(format!("{alpha} is not supported on vertices 1 and 2")));
    }
    let q2 = prime_subquiver(p.f);
    let x = bgp_construct(&q2, field, &DimVector::new(alpha.coords()[..2].to_vec()))?;
    let q = build_family(p);
    let dims = vec![x.dims()[0], x.dims()[1], 0];
    let mut mats: Vec<Mat> = x.mats().to_vec();
    for a in &q.arrows()[p.f..] {
        mats.push(Mat::zeros(field, dims[a.head], dims[a.tail]));
    }
    Representation::new(q, field, dims, mats)
}

/// `X_{χ(e_j)}` for an element `χ` of `E`: a simple representation, a BGP
/// construction on `Q'(f)` when `j` is 1 or 2, or `σ_ζ S(3)` when `j = 3`.
pub fn base_rep(chi: EElement, j: usize, p: FamilyParams, field: Field) -> Result<Representation> {
    if j > S3 {
        return Err(Error::input(format!("vertex index {j} out of range")));
    }
    let q = build_family(p);
    let alpha = apply_word(&q, &word_of(chi), &DimVector::unit(3, j))?;
    if !matches!(classify_root(&q, &alpha)?, RootClass::Real | RootClass::Simple) {
        return Err(Error::domain(format!("{alpha} is not a real root")));
    }
    let mut b = Builder { p, q, field, trace: ConstructionTrace::new(p, alpha), end: 1 };
    b.base(chi, j)
}

/// Constructs the indecomposable representation of the real root `alpha` of
/// `Q(f,g,h)` together with the functor sequence that produced it.
pub fn construct(alpha: &DimVector, p: FamilyParams, field: Field) -> Result<(Representation, ConstructionTrace)> {
    let q = build_family(p);
    match classify_root(&q, alpha)? {
        RootClass::Simple | RootClass::Real => {}
        class => return Err(Error::domain(format!("{alpha} is not a real root over {p} (classified {class})"))),
    }
    let mut b = Builder { p, q: q.clone(), field, trace: ConstructionTrace::new(p, alpha.clone()), end: 1 };
    let result = run_pipeline(&mut b, alpha);
    let x = result.map_err(|e| b.fail(e))?;
    if x.dim_vector() != *alpha {
        return Err(b.fail(Error::domain(format!("pipeline produced {} instead of {alpha}", x.dim_vector()))));
    }
    Ok((x, b.trace))
}

fn run_pipeline(b: &mut Builder, alpha: &DimVector) -> Result<Representation> {
    let q = b.q.clone();
    if let Some(j) = alpha.simple_index() {
        return b.start_simple(j);
    }
    let (w, j) = root_expression(&q, alpha)?;
    b.trace.word = Some(w.display(&q));
    b.trace.start_vertex = Some(q.vertex_id(j).to_string());
    let support = alpha.support();
    if !support.contains(&S3) {
        return b.start_bgp(alpha);
    }
    if !support.contains(&S1) {
        // Q''(g,h): one σ_{S(l)} per descent letter, rightmost first
        let mut x = b.start_simple(j)?;
        for &l in w.letters().iter().rev() {
            x = b.apply_simple(l, &x)?;
        }
        return Ok(x);
    }
    let letters = normalize_head(w.letters().to_vec(), b.p);
    if !letters.contains(&S3) {
        let chi = recognize_e(&letters)
            .ok_or_else(|| Error::input(format!("word {:?} without s3 is not in E", letters)))?;
        return b.base(chi, j);
    }
    let form = rewrite_to_star(&WeylWord(letters), b.p)?;
    let (form, j) = normalize_tail(form, j, &q)?;
    b.trace.star_form = Some(form.to_string());
    let m = form.chis.len();
    let mut x = b.base(form.chis[m - 1], j)?;
    for chi in form.chis[..m - 1].iter().rev() {
        x = b.apply_simple(S3, &x)?;
        if !chi.is_identity() {
            x = b.apply_zeta(*chi, &x)?;
        }
    }
    Ok(x)
}

/// `s1 s3 … = s3 s1 …`: a leading lone `s1` block is moved past the first
/// `s3` and merged into the next block.
fn normalize_head(mut letters: Vec<usize>, p: FamilyParams) -> Vec<usize> {
    if letters.len() >= 2 && letters[0] == S1 && letters[1] == S3 {
        let rest_end = letters[2..].iter().position(|&l| l == S3).map_or(letters.len(), |k| k + 2);
        let next = prepend_s1(letters[2..rest_end].to_vec(), p);
        let mut out = vec![S3];
        out.extend(next);
        out.extend_from_slice(&letters[rest_end..]);
        letters = out;
    }
    letters
}

/// While `χ1(e_j) = e1`, drops `χ1` and the preceding `s3` (which fixes `e1`).
fn normalize_tail(mut form: StarForm, mut j: usize, q: &Quiver) -> Result<(StarForm, usize)> {
    let e1 = DimVector::unit(3, S1);
    while form.chis.len() >= 2 {
        let last = *form.chis.last().unwrap();
        if apply_word(q, &word_of(last), &DimVector::unit(3, j))? != e1 {
            break;
        }
        form.chis.pop();
        j = S1;
    }
    if form.chis.len() < 2 {
        return Err(Error::input("tail normalization collapsed the star form"));
    }
    Ok((form, j))
}
