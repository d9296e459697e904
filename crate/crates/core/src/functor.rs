//! Functors between representation categories: image-vertex insertion and
//! its collapse, BGP reflections, universal extensions by an exceptional
//! representation and their inverses, plus the maximal-rank checker.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{column_basis, image_complement, kernel_basis, rank, solve, Mat};
use crate::quiver::{ringel_form, root_expression, Arrow, DimVector, Quiver};
use crate::rep::{end_dim, ext_dim, ext_unit_basis, hom_basis, hom_dim, subrepresentation, Representation};

/// Output of [`insert_image_vertex`].
#[derive(Debug, Clone)]
pub struct InsertionResult {
    pub new_quiver: Quiver,
    pub new_rep: Representation,
    pub z_vertex: String,
    /// The map from the new vertex into `X_i`; its columns are a basis of the image.
    pub inclusion: Mat,
    /// Original quiver, vertex and arrow subset.
    pub original: Quiver,
    pub vertex: usize,
    pub subset: Vec<usize>,
    /// New index of each original arrow outside the subset, `None` for subset arrows.
    kept: Vec<Option<usize>>,
    /// New index of `γ_a` for each subset arrow, in subset order.
    gammas: Vec<usize>,
    delta: usize,
}

impl InsertionResult {
    pub fn z_index(&self) -> usize {
        self.new_quiver.vertex_count() - 1
    }

    pub fn z_dim(&self) -> usize {
        self.new_rep.dims()[self.z_index()]
    }
}

fn fresh_id(taken: impl Fn(&str) -> bool, base: &str) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}_{k}")).find(|c| !taken(c)).unwrap()
}

/// Routes the arrows of `subset` (all with head `i`) through a new vertex `z`
/// carrying the image of their joint map into `X_i`.
pub fn insert_image_vertex(x: &Representation, i: usize, subset: &[usize]) -> Result<InsertionResult> {
    let q = x.quiver();
    q.check_vertex(i)?;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::input("arrow subset lists an arrow twice"));
    }
    for &a in subset {
        if a >= q.arrow_count() || q.arrow(a).head != i {
            return Err(Error::input(format!("arrow {a} does not end at vertex `{}`", q.vertex_id(i))));
        }
    }
    let field = x.field();
    let dims = x.dims();
    let blocks: Vec<&Mat> = subset.iter().map(|&a| x.mat(a)).collect();
    let stacked = Mat::hstack(field, dims[i], &blocks);
    let inclusion = column_basis(&stacked);
    let zdim = inclusion.cols();

    let z_vertex = fresh_id(|c| q.vertices().iter().any(|v| v == c), "z");
    let mut vertices = q.vertices().to_vec();
    vertices.push(z_vertex.clone());
    let z = vertices.len() - 1;

    let mut arrows = Vec::new();
    let mut mats = Vec::new();
    let mut kept = vec![None; q.arrow_count()];
    for (k, a) in q.arrows().iter().enumerate() {
        if !subset.contains(&k) {
            kept[k] = Some(arrows.len());
            arrows.push(a.clone());
            mats.push(x.mat(k).clone());
        }
    }
    let taken = |c: &str| q.arrows().iter().any(|a| a.id == c);
    let mut gammas = Vec::new();
    for &k in subset {
        let a = q.arrow(k);
        let id = fresh_id(taken, &format!("gamma_{}", a.id));
        let hat = solve(&inclusion, x.mat(k)).expect("arrow image lies in the column span");
        gammas.push(arrows.len());
        arrows.push(Arrow { id, tail: a.tail, head: z });
        mats.push(hat);
    }
    let delta = arrows.len();
    arrows.push(Arrow { id: fresh_id(taken, "delta"), tail: z, head: i });
    mats.push(inclusion.clone());

    let new_quiver = Quiver::from_parts(vertices, arrows)?;
    let mut new_dims = dims.to_vec();
    new_dims.push(zdim);
    let new_rep = Representation::new(new_quiver.clone(), field, new_dims, mats)?;
    Ok(InsertionResult {
        new_quiver,
        new_rep,
        z_vertex,
        inclusion,
        original: q.clone(),
        vertex: i,
        subset: subset.to_vec(),
        kept,
        gammas,
        delta,
    })
}

/// Composes `δ ∘ γ_a` back into arrow `a` and forgets the inserted vertex.
pub fn collapse(y: &Representation, data: &InsertionResult) -> Result<Representation> {
    if y.quiver() != &data.new_quiver {
        return Err(Error::input("representation does not live over the inserted quiver"));
    }
    let q = &data.original;
    let mut mats = Vec::with_capacity(q.arrow_count());
    for k in 0..q.arrow_count() {
        let m = match data.kept[k] {
            Some(n) => y.mat(n).clone(),
            None => {
                let pos = data.subset.iter().position(|&a| a == k).unwrap();
                y.mat(data.delta).mul(y.mat(data.gammas[pos]))
            }
        };
        mats.push(m);
    }
    let dims = y.dims()[..q.vertex_count()].to_vec();
    Representation::new(q.clone(), y.field(), dims, mats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankViolation {
    pub vertex: String,
    /// Arrow ids of the subset, in quiver order.
    pub arrows: Vec<String>,
    pub side: Side,
    pub achieved: usize,
    pub required: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub subsets_checked: usize,
    pub violations: Vec<RankViolation>,
}

impl RankReport {
    pub fn is_maximal_rank(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Nonempty subsets of `items` in binary-counter order: bit `k` of the counter
/// selects `items[k]`.
pub(crate) fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = items.len();
    assert!(n < usize::BITS as usize, "too many arrows at one vertex");
    (1usize..(1 << n)).map(move |mask| (0..n).filter(|k| mask >> k & 1 == 1).map(|k| items[k]).collect())
}

/// Checks every nonempty subset of incoming arrows (joint map into `X_i`) and
/// of outgoing arrows (joint map out of `X_i`) at every vertex for maximal rank.
pub fn maximal_rank_report(x: &Representation) -> RankReport {
    let q = x.quiver();
    let field = x.field();
    let dims = x.dims();
    let mut report = RankReport::default();
    for i in 0..q.vertex_count() {
        for side in [Side::In, Side::Out] {
            let arrows = match side {
                Side::In => q.incoming(i),
                Side::Out => q.outgoing(i),
            };
            for subset in subsets(&arrows) {
                let blocks: Vec<&Mat> = subset.iter().map(|&a| x.mat(a)).collect();
                let (joint, other) = match side {
                    Side::In => (
                        Mat::hstack(field, dims[i], &blocks),
                        subset.iter().map(|&a| dims[q.arrow(a).tail]).sum::<usize>(),
                    ),
                    Side::Out => (
                        Mat::vstack(field, dims[i], &blocks),
                        subset.iter().map(|&a| dims[q.arrow(a).head]).sum::<usize>(),
                    ),
                };
                let achieved = rank(&joint);
                let required = other.min(dims[i]);
                report.subsets_checked += 1;
                if achieved != required {
                    report.violations.push(RankViolation {
                        vertex: q.vertex_id(i).to_string(),
                        arrows: subset.iter().map(|&a| q.arrow(a).id.clone()).collect(),
                        side,
                        achieved,
                        required,
                    });
                }
            }
        }
    }
    report
}

/// The representation of the opposite quiver given by transposed matrices.
pub fn dual(x: &Representation) -> Representation {
    let mats = x.mats().iter().map(Mat::transpose).collect();
    Representation::new(x.quiver().opposite(), x.field(), x.dims().to_vec(), mats)
        .expect("transposes fit the opposite quiver")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MechanismFailure {
    pub vertex: String,
    pub arrows: Vec<String>,
    pub side: Side,
    pub inserted_dims: DimVector,
    pub self_form: i64,
    pub z_dim: usize,
    pub expected_z_dim: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MechanismReport {
    pub insertions_checked: usize,
    pub failures: Vec<MechanismFailure>,
}

/// For every vertex and nonempty subset of incoming arrows, inserts the image
/// vertex and checks `<d, d> <= 1` for the new dimension vector `d` and that
/// the new vertex has dimension `min(sum of tail dims, dim X_i)`. Outgoing
/// subsets are handled the same way on the dual representation.
pub fn mechanism_report(x: &Representation) -> Result<MechanismReport> {
    let mut report = MechanismReport::default();
    let dual_x = dual(x);
    for (side, rep) in [(Side::In, x), (Side::Out, &dual_x)] {
        let q = rep.quiver();
        let dims = rep.dims();
        for i in 0..q.vertex_count() {
            for subset in subsets(&q.incoming(i)) {
                let ins = insert_image_vertex(rep, i, &subset)?;
                let d = ins.new_rep.dim_vector();
                let self_form = ringel_form(&ins.new_quiver, &d, &d)?;
                let sources: usize = subset.iter().map(|&a| dims[q.arrow(a).tail]).sum();
                let expected = sources.min(dims[i]);
                report.insertions_checked += 1;
                if self_form > 1 || ins.z_dim() != expected {
                    report.failures.push(MechanismFailure {
                        vertex: q.vertex_id(i).to_string(),
                        arrows: subset.iter().map(|&a| q.arrow(a).id.clone()).collect(),
                        side,
                        inserted_dims: d,
                        self_form,
                        z_dim: ins.z_dim(),
                        expected_z_dim: expected,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Plus,
    Minus,
}

/// BGP reflection at `i`: `Plus` needs `i` to be a sink and replaces `X_i` by
/// the kernel of the joint incoming map; `Minus` needs a source and replaces
/// `X_i` by the cokernel of the joint outgoing map. The result lives over
/// `quiver.reversed_at(i)`.
pub fn bgp_reflect(x: &Representation, i: usize, direction: Direction) -> Result<Representation> {
    let q = x.quiver();
    q.check_vertex(i)?;
    let support = x.dim_vector().support();
    if support.iter().all(|&v| v == i) {
        return Err(Error::domain(format!(
            "reflection at `{}` is undefined on a representation supported at that vertex only",
            q.vertex_id(i)
        )));
    }
    let field = x.field();
    let dims = x.dims();
    let new_q = q.reversed_at(i);
    let mut new_dims = dims.to_vec();
    let mut mats = x.mats().to_vec();
    match direction {
        Direction::Plus => {
            if !q.is_sink(i) {
                return Err(Error::input(format!("vertex `{}` is not a sink", q.vertex_id(i))));
            }
            let arrows = q.incoming(i);
            let blocks: Vec<&Mat> = arrows.iter().map(|&a| x.mat(a)).collect();
            let joint = Mat::hstack(field, dims[i], &blocks);
            let kernel = kernel_basis(&joint);
            new_dims[i] = kernel.cols();
            let mut offset = 0;
            for &a in &arrows {
                let len = dims[q.arrow(a).tail];
                mats[a] = kernel.submatrix(offset..offset + len, 0..kernel.cols());
                offset += len;
            }
        }
        Direction::Minus => {
            if !q.is_source(i) {
                return Err(Error::input(format!("vertex `{}` is not a source", q.vertex_id(i))));
            }
            let arrows = q.outgoing(i);
            let blocks: Vec<&Mat> = arrows.iter().map(|&a| x.mat(a)).collect();
            let joint = Mat::vstack(field, dims[i], &blocks);
            let total = joint.rows();
            let image = column_basis(&joint);
            let complement = image_complement(&joint, total);
            let change = Mat::hstack(field, total, &[&image, &complement]);
            let inv = change.inverse().expect("image plus complement is a basis");
            let projection = inv.submatrix(image.cols()..total, 0..total);
            new_dims[i] = complement.cols();
            let mut offset = 0;
            for &a in &arrows {
                let len = dims[q.arrow(a).head];
                mats[a] = projection.submatrix(0..projection.rows(), offset..offset + len);
                offset += len;
            }
        }
    }
    Representation::new(new_q, field, new_dims, mats)
}

/// Builds the indecomposable representation of the real root `alpha` by
/// reflecting a simple representation along the greedy root expression.
/// Every reflection vertex must be a sink or a source at its stage.
pub fn bgp_construct(q: &Quiver, field: crate::linalg::Field, alpha: &DimVector) -> Result<Representation> {
    let (word, j) = root_expression(q, alpha)?;
    let letters = word.letters();
    // orientations[t] is the quiver after reversing at letters[0..t]
    let mut orientations = vec![q.clone()];
    for &l in letters {
        let next = orientations.last().unwrap().reversed_at(l);
        orientations.push(next);
    }
    let mut x = crate::rep::simple_rep(&orientations[letters.len()], field, j)?;
    for t in (0..letters.len()).rev() {
        let l = letters[t];
        let here = &orientations[t + 1];
        let direction = if here.is_sink(l) {
            Direction::Plus
        } else if here.is_source(l) {
            Direction::Minus
        } else {
            return Err(Error::domain(format!(
                "vertex `{}` is neither a sink nor a source where a reflection is needed",
                q.vertex_id(l)
            )));
        };
        x = bgp_reflect(&x, l, direction)?;
    }
    if x.dim_vector() != *alpha {
        return Err(Error::domain(format!("reflections produced {} instead of {alpha}", x.dim_vector())));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub hom_x_s: usize,
    pub hom_s_x: usize,
    pub ext_s_x: usize,
    pub ext_x_s: usize,
    /// `Hom(X, S) = 0`.
    pub in_minus_upper: bool,
    /// `Hom(S, X) = 0`.
    pub in_minus_lower: bool,
}

fn check_exceptional(s: &Representation) -> Result<()> {
    let e = end_dim(s);
    let x = ext_dim(s, s)?;
    if e != 1 || x != 0 {
        return Err(Error::input(format!(
            "S must satisfy dim End = 1 and Ext(S,S) = 0, got {e} and {x}"
        )));
    }
    Ok(())
}

pub fn membership(x: &Representation, s: &Representation) -> Result<MembershipReport> {
    x.same_setting(s)?;
    check_exceptional(s)?;
    let hom_x_s = hom_dim(x, s)?;
    let hom_s_x = hom_dim(s, x)?;
    Ok(MembershipReport {
        hom_x_s,
        hom_s_x,
        ext_s_x: ext_dim(s, x)?,
        ext_x_s: ext_dim(x, s)?,
        in_minus_upper: hom_x_s == 0,
        in_minus_lower: hom_s_x == 0,
    })
}

fn require_hom_zero(from: &Representation, to: &Representation, label: &str) -> Result<()> {
    let d = hom_dim(from, to)?;
    if d != 0 {
        return Err(Error::domain(format!("{label} has dimension {d}, expected 0")));
    }
    Ok(())
}

/// Universal extension of `x` from above by copies of `s`: the middle term of
/// `0 → X → Z → S^r → 0` with `r = dim Ext(S, X)`. Basis order: `x`, then the
/// `r` copies of `s`.
pub fn sigma_bar(s: &Representation, x: &Representation) -> Result<Representation> {
    x.same_setting(s)?;
    check_exceptional(s)?;
    require_hom_zero(x, s, "Hom(X, S)")?;
    let units = ext_unit_basis(s, x)?;
    let r = units.len();
    let q = x.quiver();
    let field = x.field();
    let dims: Vec<usize> = x.dims().iter().zip(s.dims()).map(|(a, b)| a + r * b).collect();
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (b, arrow) in q.arrows().iter().enumerate() {
        let (t, h) = (arrow.tail, arrow.head);
        let mut z = Mat::zeros(field, dims[h], dims[t]);
        z.paste(0, 0, x.mat(b));
        for (k, u) in units.iter().enumerate() {
            let row0 = x.dims()[h] + k * s.dims()[h];
            let col0 = x.dims()[t] + k * s.dims()[t];
            z.paste(row0, col0, s.mat(b));
            if u.arrow == b {
                z.set(u.row, col0 + u.col, field.one());
            }
        }
        mats.push(z);
    }
    Representation::new(q.clone(), field, dims, mats)
}

/// Universal extension of `y` from below by copies of `s`: the middle term of
/// `0 → S^t → U → Y → 0` with `t = dim Ext(Y, S)`. Basis order: the `t` copies
/// of `s`, then `y`.
pub fn sigma_under(s: &Representation, y: &Representation) -> Result<Representation> {
    y.same_setting(s)?;
    check_exceptional(s)?;
    require_hom_zero(s, y, "Hom(S, Y)")?;
    let units = ext_unit_basis(y, s)?;
    let count = units.len();
    let q = y.quiver();
    let field = y.field();
    let dims: Vec<usize> = y.dims().iter().zip(s.dims()).map(|(a, b)| a + count * b).collect();
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (b, arrow) in q.arrows().iter().enumerate() {
        let (t, h) = (arrow.tail, arrow.head);
        let mut u_mat = Mat::zeros(field, dims[h], dims[t]);
        let (sh, st) = (count * s.dims()[h], count * s.dims()[t]);
        for (k, u) in units.iter().enumerate() {
            let row0 = k * s.dims()[h];
            u_mat.paste(row0, k * s.dims()[t], s.mat(b));
            if u.arrow == b {
                u_mat.set(row0 + u.row, st + u.col, field.one());
            }
        }
        u_mat.paste(sh, st, y.mat(b));
        mats.push(u_mat);
    }
    Representation::new(q.clone(), field, dims, mats)
}

/// `σ_S = σ̲_S ∘ σ̄_S`, with both Hom-vanishing preconditions, the
/// intermediate vanishing `Hom(S, σ̄_S X) = 0` and the dimension formula
/// enforced.
pub fn sigma(s: &Representation, x: &Representation) -> Result<Representation> {
    x.same_setting(s)?;
    check_exceptional(s)?;
    require_hom_zero(x, s, "Hom(X, S)")?;
    require_hom_zero(s, x, "Hom(S, X)")?;
    let z = sigma_bar(s, x)?;
    require_hom_zero(s, &z, "Hom(S, σ̄_S X)")?;
    let u = sigma_under(s, &z)?;
    let q = x.quiver();
    let dx = x.dim_vector();
    let ds = s.dim_vector();
    let pairing = crate::quiver::sym_form(q, &dx, &ds)?;
    let expected = dx.sub(&ds.scale(pairing));
    if u.dim_vector() != expected {
        return Err(Error::domain(format!(
            "σ_S produced dimension vector {}, formula gives {expected}",
            u.dim_vector()
        )));
    }
    Ok(u)
}

/// Restricts `z` to the common kernel of all morphisms `z → s`.
pub fn sigma_bar_inv(s: &Representation, z: &Representation) -> Result<Representation> {
    z.same_setting(s)?;
    check_exceptional(s)?;
    let hom = hom_basis(z, s)?;
    if hom.dim() == 0 {
        return Ok(z.clone());
    }
    let field = z.field();
    let bases: Vec<Mat> = (0..z.quiver().vertex_count())
        .map(|i| {
            let parts: Vec<&Mat> = hom.basis.iter().map(|phi| &phi.parts[i]).collect();
            kernel_basis(&Mat::vstack(field, z.dims()[i], &parts))
        })
        .collect();
    subrepresentation(z, &bases)
}

/// Quotient of `u` by the sum of the images of all morphisms `s → u`.
pub fn sigma_under_inv(s: &Representation, u: &Representation) -> Result<Representation> {
    u.same_setting(s)?;
    check_exceptional(s)?;
    let hom = hom_basis(s, u)?;
    if hom.dim() == 0 {
        return Ok(u.clone());
    }
    let field = u.field();
    let q = u.quiver();
    let mut images = Vec::new();
    let mut complements = Vec::new();
    for i in 0..q.vertex_count() {
        let parts: Vec<&Mat> = hom.basis.iter().map(|psi| &psi.parts[i]).collect();
        let joint = Mat::hstack(field, u.dims()[i], &parts);
        images.push(column_basis(&joint));
        complements.push(image_complement(&joint, u.dims()[i]));
    }
    let dims: Vec<usize> = complements.iter().map(Mat::cols).collect();
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (k, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.tail, a.head);
        let basis = Mat::hstack(field, u.dims()[j], &[&images[j], &complements[j]]);
        let coords = solve(&basis, &u.mat(k).mul(&complements[i])).expect("basis spans the space");
        let r = images[j].cols();
        mats.push(coords.submatrix(r..coords.rows(), 0..coords.cols()));
    }
    Representation::new(q.clone(), field, dims, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, prime_subquiver, FamilyParams};
    use crate::linalg::Field;
    use crate::rep::{direct_sum, find_isomorphism, simple_rep};

    const Q: Field = Field::Rational;

    fn q111() -> Quiver {
        build_family(FamilyParams::new(1, 1, 1).unwrap())
    }

    fn two_arrow_example() -> Representation {
        let q = Quiver::new(&["1", "2"], &[("a1", "1", "2"), ("a2", "1", "2")]).unwrap();
        let mats = vec![Mat::from_i64_rows(Q, 1, 1, &[vec![1]]), Mat::from_i64_rows(Q, 1, 1, &[vec![0]])];
        Representation::new(q, Q, vec![1, 1], mats).unwrap()
    }

    #[test]
    fn insertion_examples() {
        let x = two_arrow_example();
        let empty = insert_image_vertex(&x, 1, &[]).unwrap();
        assert_eq!(empty.z_dim(), 0);
        assert_eq!(collapse(&empty.new_rep, &empty).unwrap(), x);

        let zero_map = insert_image_vertex(&x, 1, &[1]).unwrap();
        assert_eq!(zero_map.z_dim(), 0);
        let both = insert_image_vertex(&x, 1, &[0, 1]).unwrap();
        assert_eq!(both.z_dim(), 1);
        assert_eq!(both.new_quiver.arrow_count(), 3);
        assert_eq!(both.new_quiver.arrow(2).id, "delta");
        assert_eq!(collapse(&both.new_rep, &both).unwrap(), x);
        for (k, &a) in both.subset.iter().enumerate() {
            assert_eq!(both.inclusion.mul(both.new_rep.mat(both.gammas[k])), *x.mat(a));
        }
        assert!(insert_image_vertex(&x, 0, &[0]).is_err());
    }

    #[test]
    fn collapse_through_zero_vertex_kills_subset_arrows() {
        let x = two_arrow_example();
        let ins = insert_image_vertex(&x, 1, &[0, 1]).unwrap();
        let (q, field, mut dims, mut mats) = ins.new_rep.clone().into_parts();
        let z = ins.z_index();
        dims[z] = 0;
        for (k, a) in q.arrows().iter().enumerate() {
            mats[k] = if a.tail == z || a.head == z {
                Mat::zeros(field, dims[a.head], dims[a.tail])
            } else {
                mats[k].clone()
            };
        }
        let y = Representation::new(q, field, dims, mats).unwrap();
        let c = collapse(&y, &ins).unwrap();
        assert!(c.mat(0).is_zero() && c.mat(1).is_zero());
    }

    #[test]
    fn rank_report_examples() {
        // the zero arrow fails both as a lone incoming map at 2 and as a lone outgoing map at 1
        let report = maximal_rank_report(&two_arrow_example());
        let expected = vec![
            RankViolation {
                vertex: "1".into(),
                arrows: vec!["a2".into()],
                side: Side::Out,
                achieved: 0,
                required: 1,
            },
            RankViolation {
                vertex: "2".into(),
                arrows: vec!["a2".into()],
                side: Side::In,
                achieved: 0,
                required: 1,
            },
        ];
        assert_eq!(report.violations, expected);
        let q = q111();
        for i in 0..3 {
            assert!(maximal_rank_report(&simple_rep(&q, Q, i).unwrap()).is_maximal_rank());
        }
        let k2 = prime_subquiver(2);
        let x = bgp_construct(&k2, Q, &DimVector::new(vec![2, 1])).unwrap();
        let report = maximal_rank_report(&x);
        assert!(report.is_maximal_rank());
        // vertex 1: three outgoing subsets; vertex 2: three incoming subsets
        assert_eq!(report.subsets_checked, 6);
    }

    #[test]
    fn bgp_examples() {
        let k2 = prime_subquiver(2);
        let s1 = simple_rep(&k2, Q, 0).unwrap();
        let plus = bgp_reflect(&s1, 1, Direction::Plus).unwrap();
        assert_eq!(plus.dims(), &[1, 2]);
        assert!(plus.quiver().is_source(1));
        let s2 = simple_rep(&k2, Q, 1).unwrap();
        let minus = bgp_reflect(&s2, 0, Direction::Minus).unwrap();
        assert_eq!(minus.dims(), &[2, 1]);
        assert!(bgp_reflect(&s2, 1, Direction::Plus).is_err());
        assert!(bgp_reflect(&s1, 1, Direction::Minus).is_err());

        let x = bgp_construct(&k2, Q, &DimVector::new(vec![2, 1])).unwrap();
        assert_eq!(x.quiver(), &k2);
        assert_eq!(end_dim(&x), 1);
        assert_eq!(hom_basis(&x, &x).unwrap().dim(), 1);
    }

    #[test]
    fn bgp_reproduces_kronecker_roots() {
        for f in 1..=3 {
            let q = prime_subquiver(f);
            for alpha in crate::quiver::enumerate_real_roots(&q, 10) {
                let x = bgp_construct(&q, Q, &alpha).unwrap();
                assert_eq!(x.dim_vector(), alpha);
                assert_eq!(end_dim(&x), 1, "{alpha}");
                assert_eq!(ext_dim(&x, &x).unwrap(), 0, "{alpha}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let q = q111();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        let s3 = simple_rep(&q, Q, 2).unwrap();
        let m = membership(&s2, &s3).unwrap();
        assert_eq!((m.hom_x_s, m.hom_s_x, m.ext_s_x, m.ext_x_s), (0, 0, 1, 1));
        assert!(m.in_minus_upper && m.in_minus_lower);
        let m = membership(&s3, &s3).unwrap();
        assert_eq!(m.hom_x_s, 1);
        assert!(!m.in_minus_upper);
        let sum = direct_sum(&s3, &s3).unwrap();
        assert!(membership(&s2, &sum).is_err());
    }

    #[test]
    fn sigma_examples() {
        let q = q111();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        let s3 = simple_rep(&q, Q, 2).unwrap();
        let z = sigma_bar(&s3, &s2).unwrap();
        assert_eq!(z.dims(), &[0, 1, 1]);
        assert!(z.mat(1).is_zero());
        assert_eq!(z.mat(2), &Mat::from_i64_rows(Q, 1, 1, &[vec![1]]));
        let u = sigma_under(&s3, &z).unwrap();
        assert_eq!(u.dims(), &[0, 1, 2]);
        let x = sigma(&s3, &s2).unwrap();
        assert_eq!(x, u);
        assert_eq!(end_dim(&x), 2);
        assert_eq!(x.nonzero_count(), 2);

        // r = 0 leaves x alone
        let s1 = simple_rep(&q, Q, 0).unwrap();
        assert_eq!(sigma_bar(&s3, &s1).unwrap(), s1);
        assert_eq!(sigma_under(&s3, &s1).unwrap(), s1);
        assert!(sigma_bar(&s3, &s3).is_err());
    }

    #[test]
    fn sigma_roundtrips() {
        let q = q111();
        let s2 = simple_rep(&q, Q, 1).unwrap();
        let s3 = simple_rep(&q, Q, 2).unwrap();
        let z = sigma_bar(&s3, &s2).unwrap();
        let back = sigma_bar_inv(&s3, &z).unwrap();
        assert!(find_isomorphism(&back, &s2).unwrap().is_some());
        let u = sigma_under(&s3, &z).unwrap();
        let back = sigma_under_inv(&s3, &u).unwrap();
        assert!(find_isomorphism(&back, &z).unwrap().is_some());
        assert_eq!(sigma_bar_inv(&s3, &s2).unwrap(), s2);
    }

    #[test]
    fn mechanism_on_simple_family_rep() {
        let q = q111();
        let x = sigma(&simple_rep(&q, Q, 2).unwrap(), &simple_rep(&q, Q, 1).unwrap()).unwrap();
        let report = mechanism_report(&x).unwrap();
        assert!(report.failures.is_empty());
        assert!(report.insertions_checked > 0);
    }

    #[test]
    fn dual_is_involutive() {
        let x = two_arrow_example();
        assert_eq!(dual(&dual(&x)), x);
    }
}
