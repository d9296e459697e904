//! Representations of quivers, morphism spaces and extensions.
//!
//! Hom and Ext¹ are computed from the linear map
//! `δ: C⁰(X,Y) → C¹(X,Y)`, `(φ_i)_i ↦ (φ_j X_a − Y_a φ_i)_{a: i→j}`,
//! whose kernel is `Hom(X,Y)` and whose cokernel is `Ext¹(X,Y)`.
//!
//! Coordinates on `C⁰ = ⊕_i Hom(X_i, Y_i)` run over vertices in quiver order;
//! within a vertex block the matrix units are ordered column-major (column
//! `s` ascending, then row `t`). `C¹ = ⊕_a Hom(X_{t(a)}, Y_{h(a)})` is laid out
//! the same way over arrows. Ext bases picked from matrix units depend on this
//! order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{image_complement_indices, kernel_basis, rank, Field, Mat};
use crate::quiver::{DimVector, Quiver};

/// A vector space per vertex and a matrix per arrow. The matrix of arrow
/// `a: i → j` has shape `dims[j] × dims[i]` and acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Quiver,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

impl Representation {
    pub fn new(quiver: Quiver, field: Field, dims: Vec<usize>, mats: Vec<Mat>) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::input(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if mats.len() != quiver.arrow_count() {
            return Err(Error::input(format!(
                "{} matrices given for {} arrows",
                mats.len(),
                quiver.arrow_count()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            let want = (dims[a.head], dims[a.tail]);
            if m.shape() != want {
                return Err(Error::input(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id, want.0, want.1, m.rows(), m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::input(format!("arrow `{}` matrix is over the wrong field", a.id)));
            }
        }
        Ok(Representation { quiver, field, dims, mats })
    }

    /// The representation with every space zero.
    pub fn zero(quiver: &Quiver, field: Field) -> Representation {
        let dims = vec![0; quiver.vertex_count()];
        let mats = vec![Mat::zeros(field, 0, 0); quiver.arrow_count()];
        Representation { quiver: quiver.clone(), field, dims, mats }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::from_dims(&self.dims)
    }

    /// Sum of all vertex dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mat(&self, arrow: usize) -> &Mat {
        &self.mats[arrow]
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn into_parts(self) -> (Quiver, Field, Vec<usize>, Vec<Mat>) {
        (self.quiver, self.field, self.dims, self.mats)
    }

    pub(crate) fn same_setting(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::input("representations live over different quivers"));
        }
        if self.field != other.field {
            return Err(Error::input(format!(
                "representations live over different fields ({} vs {})",
                self.field, other.field
            )));
        }
        Ok(())
    }

    /// Total number of nonzero matrix entries.
    pub fn nonzero_count(&self) -> usize {
        self.mats.iter().map(Mat::nonzero_count).sum()
    }
}

/// The simple representation `S(i)`.
pub fn simple_rep(q: &Quiver, field: Field, i: usize) -> Result<Representation> {
    q.check_vertex(i)?;
    let mut dims = vec![0; q.vertex_count()];
    dims[i] = 1;
    let mats = q
        .arrows()
        .iter()
        .map(|a| Mat::zeros(field, dims[a.head], dims[a.tail]))
        .collect();
    Representation::new(q.clone(), field, dims, mats)
}

/// `x ⊕ y` with block-diagonal matrices, `x` block first.
pub fn direct_sum(x: &Representation, y: &Representation) -> Result<Representation> {
    x.same_setting(y)?;
    let dims = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
    let mats = x
        .mats
        .iter()
        .zip(&y.mats)
        .map(|(a, b)| Mat::block_diag(x.field, &[a, b]))
        .collect();
    Representation::new(x.quiver.clone(), x.field, dims, mats)
}

/// Per-vertex linear maps between two representations of the same quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub parts: Vec<Mat>,
}

impl Morphism {
    pub fn identity(x: &Representation) -> Morphism {
        Morphism {
            parts: x.dims.iter().map(|&d| Mat::identity(x.field, d)).collect(),
        }
    }

    pub fn zero(x: &Representation, y: &Representation) -> Morphism {
        Morphism {
            parts: x.dims.iter().zip(&y.dims).map(|(&s, &t)| Mat::zeros(x.field, t, s)).collect(),
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        Morphism {
            parts: self.parts.iter().zip(&first.parts).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Mat::is_zero)
    }

    /// Checks shapes and every commuting square `φ_j X_a = Y_a φ_i`.
    pub fn is_morphism(&self, x: &Representation, y: &Representation) -> bool {
        if self.parts.len() != x.dims.len() {
            return false;
        }
        for (i, p) in self.parts.iter().enumerate() {
            if p.shape() != (y.dims[i], x.dims[i]) {
                return false;
            }
        }
        x.quiver.arrows().iter().enumerate().all(|(k, a)| {
            self.parts[a.head].mul(&x.mats[k]) == y.mats[k].mul(&self.parts[a.tail])
        })
    }

    /// Coordinates in `C⁰`, column-major per vertex block.
    pub fn flatten(&self) -> Vec<crate::linalg::Scalar> {
        self.parts.iter().flat_map(Mat::to_column_major).collect()
    }

    /// Whether every part is invertible.
    pub fn is_invertible(&self) -> bool {
        self.parts.iter().all(|p| p.is_square() && p.inverse().is_some())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let parts = self
            .parts
            .iter()
            .map(|p| if p.is_square() { p.inverse() } else { None })
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism { parts })
    }
}

#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The morphism `Σ c_k φ_k`.
    pub fn combination(&self, coeffs: &[crate::linalg::Scalar]) -> Morphism {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = Morphism::zero(&self.source, &self.target);
        for (c, phi) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.parts.iter_mut().zip(&phi.parts) {
                *a = a.add(&p.scale(c));
            }
        }
        acc
    }
}

struct CochainLayout {
    vertex_offsets: Vec<usize>,
    arrow_offsets: Vec<usize>,
    c0: usize,
    c1: usize,
}

impl CochainLayout {
    fn new(x: &Representation, y: &Representation) -> CochainLayout {
        let mut vertex_offsets = Vec::with_capacity(x.dims.len());
        let mut c0 = 0;
        for i in 0..x.dims.len() {
            vertex_offsets.push(c0);
            c0 += x.dims[i] * y.dims[i];
        }
        let mut arrow_offsets = Vec::with_capacity(x.quiver.arrow_count());
        let mut c1 = 0;
        for a in x.quiver.arrows() {
            arrow_offsets.push(c1);
            c1 += x.dims[a.tail] * y.dims[a.head];
        }
        CochainLayout { vertex_offsets, arrow_offsets, c0, c1 }
    }
}

/// The matrix of `δ_{XY}` in the standard cochain coordinates.
pub fn delta_matrix(x: &Representation, y: &Representation) -> Result<Mat> {
    x.same_setting(y)?;
    let field = x.field;
    let layout = CochainLayout::new(x, y);
    let mut delta = Mat::zeros(field, layout.c1, layout.c0);
    for (k, a) in x.quiver.arrows().iter().enumerate() {
        let (i, j) = (a.tail, a.head);
        let (xi, xj, yi, yj) = (x.dims[i], x.dims[j], y.dims[i], y.dims[j]);
        let xa = &x.mats[k];
        let ya = &y.mats[k];
        let row0 = layout.arrow_offsets[k];
        for s in 0..xi {
            for t in 0..yj {
                let row = row0 + s * yj + t;
                // (φ_j X_a)(t, s) = Σ_u φ_j(t, u) X_a(u, s)
                for u in 0..xj {
                    let v = xa.get(u, s);
                    if !v.is_zero() {
                        let col = layout.vertex_offsets[j] + u * yj + t;
                        let cur = delta.get(row, col).clone();
                        delta.set(row, col, &cur + v);
                    }
                }
                // (Y_a φ_i)(t, s) = Σ_v Y_a(t, v) φ_i(v, s)
                for w in 0..yi {
                    let v = ya.get(t, w);
                    if !v.is_zero() {
                        let col = layout.vertex_offsets[i] + s * yi + w;
                        let cur = delta.get(row, col).clone();
                        delta.set(row, col, &cur - v);
                    }
                }
            }
        }
    }
    Ok(delta)
}

/// A basis of `Hom(x, y)`: the kernel basis of δ reshaped into per-vertex maps.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<HomSpace> {
    let delta = delta_matrix(x, y)?;
    let ker = kernel_basis(&delta);
    let layout = CochainLayout::new(x, y);
    let basis = (0..ker.cols())
        .map(|c| {
            let col = ker.column(c);
            let parts = (0..x.dims.len())
                .map(|i| {
                    let off = layout.vertex_offsets[i];
                    let len = x.dims[i] * y.dims[i];
                    Mat::from_column_major(x.field, y.dims[i], x.dims[i], &col[off..off + len])
                })
                .collect();
            Morphism { parts }
        })
        .collect();
    Ok(HomSpace { source: x.clone(), target: y.clone(), basis })
}

pub fn hom_dim(x: &Representation, y: &Representation) -> Result<usize> {
    let delta = delta_matrix(x, y)?;
    Ok(delta.cols() - rank(&delta))
}

pub fn ext_dim(x: &Representation, y: &Representation) -> Result<usize> {
    let delta = delta_matrix(x, y)?;
    Ok(delta.rows() - rank(&delta))
}

/// The matrix unit `M(a, s, t)` in `Hom(X_{t(a)}, Y_{h(a)})`: a one in
/// column `s`, row `t`. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtUnit {
    pub arrow: usize,
    pub col: usize,
    pub row: usize,
}

/// Matrix units whose classes form a basis of `Ext¹(x, y)`, chosen by the
/// greedy ascending scan over `C¹` coordinates.
pub fn ext_unit_basis(x: &Representation, y: &Representation) -> Result<Vec<ExtUnit>> {
    let delta = delta_matrix(x, y)?;
    let layout = CochainLayout::new(x, y);
    let picks = image_complement_indices(&delta, layout.c1);
    let units = picks
        .into_iter()
        .map(|idx| {
            let arrow = layout.arrow_offsets.partition_point(|&off| off <= idx) - 1;
            let height = y.dims[x.quiver.arrow(arrow).head];
            let local = idx - layout.arrow_offsets[arrow];
            ExtUnit { arrow, col: local / height, row: local % height }
        })
        .collect();
    Ok(units)
}

pub fn end_dim(x: &Representation) -> usize {
    hom_dim(x, x).expect("a representation shares its own quiver")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Indecomposable,
    Decomposable,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub verdict: Verdict,
    /// A nontrivial idempotent endomorphism when the verdict is `Decomposable`.
    pub idempotent: Option<Morphism>,
    pub end_dim: usize,
    pub candidates_checked: u64,
}

/// Exhaustive search for a nontrivial idempotent in `End(x)` over a prime
/// field. Runs only when `p^(dim End)` is within `budget`.
pub fn is_indecomposable_oracle(x: &Representation, budget: u64) -> Result<OracleOutcome> {
    let Field::Prime(p) = x.field else {
        return Err(Error::input("the indecomposability oracle needs a prime field"));
    };
    if x.total_dim() == 0 {
        return Err(Error::input("the zero representation is neither decomposable nor indecomposable"));
    }
    let end = hom_basis(x, x)?;
    let d = end.dim();
    let total = (p as u64).checked_pow(d as u32).filter(|&n| n <= budget);
    let Some(total) = total else {
        return Ok(OracleOutcome {
            verdict: Verdict::Inconclusive,
            idempotent: None,
            end_dim: d,
            candidates_checked: 0,
        });
    };
    let id = Morphism::identity(x);
    let mut digits = vec![0u32; d];
    for n in 0..total {
        let mut rest = n;
        for digit in digits.iter_mut() {
            *digit = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let coeffs: Vec<_> = digits.iter().map(|&v| x.field.from_i64(v as i64)).collect();
        let e = end.combination(&coeffs);
        if e.is_zero() || e == id {
            continue;
        }
        if e.after(&e) == e {
            return Ok(OracleOutcome {
                verdict: Verdict::Decomposable,
                idempotent: Some(e),
                end_dim: d,
                candidates_checked: n + 1,
            });
        }
    }
    Ok(OracleOutcome {
        verdict: Verdict::Indecomposable,
        idempotent: None,
        end_dim: d,
        candidates_checked: total,
    })
}

/// Restriction of `x` to the subspaces spanned by the columns of `bases[i]`,
/// which must form a subrepresentation.
pub fn subrepresentation(x: &Representation, bases: &[Mat]) -> Result<Representation> {
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let mut mats = Vec::with_capacity(x.quiver.arrow_count());
    for (k, a) in x.quiver.arrows().iter().enumerate() {
        let image = x.mats[k].mul(&bases[a.tail]);
        let m = crate::linalg::solve(&bases[a.head], &image)
            .ok_or_else(|| Error::domain(format!("subspaces are not stable under arrow `{}`", a.id)))?;
        mats.push(m);
    }
    Representation::new(x.quiver.clone(), x.field, dims, mats)
}

/// Splits `x` along an idempotent `e` into `(im e, ker e)`.
pub fn split_by_idempotent(x: &Representation, e: &Morphism) -> Result<(Representation, Representation)> {
    let images: Vec<Mat> = e.parts.iter().map(crate::linalg::column_basis).collect();
    let kernels: Vec<Mat> = e.parts.iter().map(kernel_basis).collect();
    Ok((subrepresentation(x, &images)?, subrepresentation(x, &kernels)?))
}

/// Looks for mutually inverse morphisms `x → y → x` among the basis of
/// `Hom(x, y)` and then among a fixed family of combinations of it.
pub fn find_isomorphism(x: &Representation, y: &Representation) -> Result<Option<(Morphism, Morphism)>> {
    x.same_setting(y)?;
    if x.dims != y.dims {
        return Ok(None);
    }
    let hom = hom_basis(x, y)?;
    let d = hom.dim();
    if x.total_dim() == 0 {
        return Ok(Some((Morphism::zero(x, y), Morphism::zero(y, x))));
    }
    let f = x.field;
    let mut candidates: Vec<Vec<crate::linalg::Scalar>> = Vec::new();
    for k in 0..d {
        let mut c = vec![f.zero(); d];
        c[k] = f.one();
        candidates.push(c);
    }
    // Moment curve points (1, t, t², ...) avoid any fixed proper hypersurface
    // once enough of them are tried.
    for t in 1..=(2 * x.total_dim() + 2) as i64 {
        let mut c = Vec::with_capacity(d);
        let mut power = f.one();
        for _ in 0..d {
            c.push(power.clone());
            power = &power * &f.from_i64(t);
        }
        candidates.push(c);
    }
    for c in candidates {
        let phi = hom.combination(&c);
        if let Some(psi) = phi.inverse() {
            if psi.is_morphism(y, x) && psi.after(&phi) == Morphism::identity(x) {
                return Ok(Some((phi, psi)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, prime_subquiver, FamilyParams};

    const Q: Field = Field::Rational;

    fn q111() -> Quiver {
        build_family(FamilyParams::new(1, 1, 1).unwrap())
    }

    /// Two parallel arrows `a1, a2: 1 → 2` with matrices `[1]` and `[0]`.
    fn two_arrow_example(field: Field) -> Representation {
        let q = Quiver::new(&["1", "2"], &[("a1", "1", "2"), ("a2", "1", "2")]).unwrap();
        let mats = vec![Mat::from_i64_rows(field, 1, 1, &[vec![1]]), Mat::from_i64_rows(field, 1, 1, &[vec![0]])];
        Representation::new(q, field, vec![1, 1], mats).unwrap()
    }

    #[test]
    fn constructor_validates_shapes() {
        let q = prime_subquiver(1);
        assert!(Representation::new(q.clone(), Q, vec![1, 1], vec![Mat::zeros(Q, 2, 1)]).is_err());
        assert!(Representation::new(q.clone(), Q, vec![1], vec![]).is_err());
        assert!(Representation::new(q, Q, vec![1, 1], vec![Mat::zeros(Field::Prime(2), 1, 1)]).is_err());
    }

    #[test]
    fn simple_rep_shapes() {
        let q = q111();
        let s3 = simple_rep(&q, Q, 2).unwrap();
        assert_eq!(s3.dims(), &[0, 0, 1]);
        assert_eq!(s3.mat(0).shape(), (0, 0));
        assert_eq!(s3.mat(1).shape(), (1, 0));
        assert_eq!(s3.mat(2).shape(), (0, 1));
        assert!(simple_rep(&q, Q, 3).is_err());
    }

    #[test]
    fn simples_are_schurian_and_rigid() {
        let q = build_family(FamilyParams::new(2, 1, 3).unwrap());
        for i in 0..3 {
            let s = simple_rep(&q, Q, i).unwrap();
            assert_eq!(end_dim(&s), 1);
            assert_eq!(ext_dim(&s, &s).unwrap(), 0);
        }
    }

    #[test]
    fn ext_between_simples() {
        let q = q111();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        let s3 = simple_rep(&q, Q, 2).unwrap();
        assert_eq!(ext_dim(&s3, &s2).unwrap(), 1);
        assert_eq!(ext_unit_basis(&s3, &s2).unwrap(), vec![ExtUnit { arrow: 2, col: 0, row: 0 }]);
        let delta = delta_matrix(&s3, &s2).unwrap();
        assert_eq!(delta.shape(), (1, 0));

        let q = build_family(FamilyParams::new(3, 1, 1).unwrap());
        let s1 = simple_rep(&q, Q, 0).unwrap();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        assert_eq!(ext_dim(&s1, &s2).unwrap(), 3);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    }

    #[test]
    fn direct_sum_layout() {
        let q = prime_subquiver(1);
        let s1 = simple_rep(&q, Q, 0).unwrap();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        let sum = direct_sum(&s1, &s2).unwrap();
        assert_eq!(sum.dims(), &[1, 1]);
        assert_eq!(sum.mat(0), &Mat::zeros(Q, 1, 1));
        let zero = Representation::zero(&q, Q);
        assert_eq!(direct_sum(&s1, &zero).unwrap(), s1);
    }

    #[test]
    fn delta_shape_matches_cochains() {
        let x = two_arrow_example(Q);
        let q = x.quiver().clone();
        let y = direct_sum(&x, &simple_rep(&q, Q, 0).unwrap()).unwrap();
        let d = delta_matrix(&x, &y).unwrap();
        assert_eq!(d.shape(), (2, 3));
    }

    #[test]
    fn hom_basis_members_commute() {
        let x = two_arrow_example(Q);
        let hom = hom_basis(&x, &x).unwrap();
        assert_eq!(hom.dim(), 1);
        assert!(hom.basis.iter().all(|m| m.is_morphism(&x, &x)));
    }

    #[test]
    fn oracle_examples() {
        let f2 = Field::Prime(2);
        let q = prime_subquiver(2);
        let s1 = simple_rep(&q, f2, 0).unwrap();
        let out = is_indecomposable_oracle(&s1, 10).unwrap();
        assert_eq!(out.verdict, Verdict::Indecomposable);
        assert_eq!(out.candidates_checked, 2);

        let sum = direct_sum(&s1, &s1).unwrap();
        let out = is_indecomposable_oracle(&sum, 100).unwrap();
        assert_eq!(out.verdict, Verdict::Decomposable);
        let (a, b) = split_by_idempotent(&sum, out.idempotent.as_ref().unwrap()).unwrap();
        assert!(a.total_dim() > 0 && b.total_dim() > 0);

        let x = two_arrow_example(f2);
        assert_eq!(is_indecomposable_oracle(&x, 100).unwrap().verdict, Verdict::Indecomposable);
        assert_eq!(is_indecomposable_oracle(&sum, 2).unwrap().verdict, Verdict::Inconclusive);
        assert!(is_indecomposable_oracle(&two_arrow_example(Q), 100).is_err());
    }

    #[test]
    fn isomorphism_found_for_rescaled_copy() {
        let x = two_arrow_example(Q);
        let (q, field, dims, mut mats) = x.clone().into_parts();
        mats[0] = mats[0].scale(&field.from_i64(5));
        let y = Representation::new(q, field, dims, mats).unwrap();
        let (phi, psi) = find_isomorphism(&x, &y).unwrap().unwrap();
        assert!(phi.is_morphism(&x, &y) && psi.is_morphism(&y, &x));
        let s = simple_rep(x.quiver(), Q, 0).unwrap();
        let t = direct_sum(&s, &simple_rep(x.quiver(), Q, 1).unwrap()).unwrap();
        assert!(find_isomorphism(&x, &t).unwrap().is_none());
    }
}
