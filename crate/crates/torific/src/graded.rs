//! Gradings of toric monoids by finitely generated abelian groups:
//! degree-zero monoids, taut/loose predicates with dual cross-checks,
//! stabilizer groups at faces, character multisets, and torific ideals.

use num_traits::Zero;

use crate::abelian::{
    grlex_cmp, kernel_basis, lattice_basis, lattice_intersection, lattice_membership_constraints,
    lattice_saturation, lattices_equal, quotient_by_columns, rank_of, solve_integer,
    vec_is_zero, vec_neg, Cone, FgAbelianGroup, GroupHom, Int, IntMatrix,
};
use crate::error::{Result, TorificError};
use crate::hilbert::{module_generators_graded, ConstrainedMonoidSpec, LevelConstraint};
use crate::ideal::{ideal_from, unit_ideal, MonoidIdeal};
use crate::monoid::{
    face_generators, faces, rank, saturated_from_spec, validate_face, Face, ToricMonoid,
};

/// A grading of a toric monoid M ⊂ Z^d by a finitely generated abelian
/// group L, given by a homomorphism χ: Z^d → L restricted to M.
#[derive(Clone, Debug)]
pub struct Grading {
    pub monoid: ToricMonoid,
    pub target: FgAbelianGroup,
    pub map: GroupHom,
}

impl Grading {
    /// Builds a grading from the matrix of χ: rows indexed by the
    /// invariant-factor coordinates of L, columns by Z^d.
    pub fn new(monoid: ToricMonoid, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Grading> {
        if matrix.rows != target.len() || matrix.cols != monoid.ambient_rank {
            return Err(TorificError::DimensionMismatch(format!(
                "grading matrix is {}x{}, expected {}x{}",
                matrix.rows,
                matrix.cols,
                target.len(),
                monoid.ambient_rank
            )));
        }
        let map = GroupHom::from_free(monoid.ambient_rank, target.clone(), matrix);
        Ok(Grading { monoid, target, map })
    }

    /// The level constraints carried by χ: one free equation per free
    /// coordinate of L and one congruence per torsion coordinate, pinning
    /// the degree to `value`.
    fn level_constraints(&self, value: &[Int]) -> Vec<LevelConstraint> {
        let value = self.target.reduce(value);
        let mut levels = Vec::new();
        for i in 0..self.target.len() {
            let row = self.map.matrix.row(i);
            let modulus = if i < self.target.free_rank {
                None
            } else {
                Some(self.target.torsion[i - self.target.free_rank].clone())
            };
            levels.push(LevelConstraint { row, value: value[i].clone(), modulus });
        }
        levels
    }

    /// The constraint system cutting out M itself (cone plus group
    /// membership). Only meaningful for saturated monoids.
    fn monoid_spec(&self) -> ConstrainedMonoidSpec {
        let d = self.monoid.ambient_rank;
        let group = self.monoid.group_basis();
        let (mut equations, congruences) = lattice_membership_constraints(&group, d);
        let mut inequalities = self.monoid.cone().halfspaces;
        equations.retain(|e| !vec_is_zero(e));
        inequalities.retain(|h| !vec_is_zero(h));
        ConstrainedMonoidSpec { ambient_rank: d, inequalities, equations, congruences }
    }
}

/// A multiset of nonzero elements of an abelian group, kept in canonical
/// reduced, sorted, merged form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMultiset {
    pub target: FgAbelianGroup,
    pub entries: Vec<(Vec<Int>, usize)>,
}

impl CharacterMultiset {
    pub fn new(target: FgAbelianGroup, elements: &[Vec<Int>]) -> CharacterMultiset {
        let mut entries: Vec<(Vec<Int>, usize)> = Vec::new();
        for e in elements {
            let r = target.reduce(e);
            if !vec_is_zero(&r) {
                entries.push((r, 1));
            }
        }
        CharacterMultiset { target, entries: merge_entries(entries) }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// The underlying set: each element once, multiplicities dropped.
    pub fn support(&self) -> CharacterMultiset {
        let entries = self.entries.iter().map(|(e, _)| (e.clone(), 1)).collect();
        CharacterMultiset { target: self.target.clone(), entries }
    }
}

fn merge_entries(mut entries: Vec<(Vec<Int>, usize)>) -> Vec<(Vec<Int>, usize)> {
    entries.sort_by(|a, b| grlex_cmp(&a.0, &b.0));
    let mut merged: Vec<(Vec<Int>, usize)> = Vec::new();
    for (e, m) in entries {
        match merged.last_mut() {
            Some((prev, pm)) if *prev == e => *pm += m,
            _ => merged.push((e, m)),
        }
    }
    merged
}

/// χ(v), reduced into invariant-factor form.
pub fn degree(g: &Grading, v: &[Int]) -> Vec<Int> {
    g.map.apply(v)
}

/// The degree-zero part M₀ = M ∩ ker χ of a saturated monoid, as a
/// saturated monoid in the same ambient lattice.
pub fn degree_zero_monoid(g: &Grading) -> Result<ToricMonoid> {
    if !g.monoid.saturated {
        return Err(TorificError::NotSaturatedParent(
            "degree-zero monoid requires a saturated monoid".into(),
        ));
    }
    let mut spec = g.monoid_spec();
    for l in g.level_constraints(&g.target.zero()) {
        match l.modulus {
            None => spec.equations.push(l.row),
            Some(m) => spec.congruences.push((l.row, m)),
        }
    }
    saturated_from_spec(&spec)
}

/// The kernel of χ^gp restricted to group(M), as a lattice in Z^d.
fn kernel_lattice(g: &Grading) -> Vec<Vec<Int>> {
    let d = g.monoid.ambient_rank;
    let group = g.monoid.group_basis();
    let (mut equations, mut congruences) = lattice_membership_constraints(&group, d);
    equations.retain(|e| !vec_is_zero(e));
    for l in g.level_constraints(&g.target.zero()) {
        match l.modulus {
            None => equations.push(l.row),
            Some(m) => congruences.push((l.row, m)),
        }
    }
    let spec =
        ConstrainedMonoidSpec { ambient_rank: d, inequalities: Vec::new(), equations, congruences };
    spec.solution_lattice()
}

/// Rank of the image subgroup χ(M^gp) ⊆ L. Torsion coordinates do not
/// contribute; the rank is that of the free coordinates of χ(generators).
fn image_rank(g: &Grading) -> usize {
    let fr = g.target.free_rank;
    let rows: Vec<Vec<Int>> = g
        .monoid
        .generators
        .iter()
        .map(|gen| g.map.apply(gen)[..fr].to_vec())
        .collect();
    rank_of(&rows, fr)
}

/// Whether the degree l is attained by some element of M, i.e. the slice
/// {m ∈ M : χ(m) = l} is nonempty.
fn slice_nonempty(g: &Grading, l: &[Int]) -> Result<bool> {
    let l = g.target.reduce(l);
    if vec_is_zero(&l) {
        return Ok(true);
    }
    let spec = g.monoid_spec();
    let levels = g.level_constraints(&l);
    Ok(!module_generators_graded(&spec, &levels)?.is_empty())
}

/// Taut and loose, each computed twice: from the definition and from the
/// rank criterion. Disagreement indicates a bug and is reported as an
/// error rather than silently picking one answer.
pub fn is_taut(g: &Grading) -> Result<bool> {
    check_sharp_saturated(g)?;
    let m0 = degree_zero_monoid(g)?;
    // Definition: M₀ contains an inner element of M. For a sharp monoid
    // the sum of the generators of M₀ is the best candidate: any inner
    // element of M in M₀ forces that sum to be inner too.
    let def = if m0.is_trivial() {
        g.monoid.is_trivial()
    } else {
        let mut s = vec![Int::zero(); g.monoid.ambient_rank];
        for gen in &m0.generators {
            for (si, gi) in s.iter_mut().zip(gen) {
                *si += gi;
            }
        }
        crate::monoid::is_inner(&g.monoid, &s)?
    };
    // Criterion: Im(χ) = Im(χ^gp), i.e. the monoid image of χ is already
    // a group: every generator degree has an inverse attained by M.
    let mut crit = true;
    for gen in &g.monoid.generators {
        let l = g.map.apply(gen);
        if vec_is_zero(&l) {
            continue;
        }
        if !slice_nonempty(g, &g.target.neg(&l))? {
            crit = false;
            break;
        }
    }
    if def != crit {
        return Err(TorificError::CriterionMismatch(format!(
            "taut: definition gives {def}, image criterion gives {crit}"
        )));
    }
    Ok(def)
}

pub fn is_loose(g: &Grading) -> Result<bool> {
    check_sharp_saturated(g)?;
    let m0 = degree_zero_monoid(g)?;
    let d = g.monoid.ambient_rank;
    // Definition: group(M₀) = ker(χ^gp|group(M)). Compared through the
    // saturation of group(M₀) inside the kernel plus a rank check, which
    // avoids index computations.
    let ker = kernel_lattice(g);
    let g0 = m0.group_basis();
    let rel_sat = lattice_intersection(&lattice_saturation(&g0, d), &ker, d);
    let def = rank_of(&g0, d) == rank_of(&ker, d) && lattices_equal(&rel_sat, &ker, d);
    // Criterion: rk(M₀) + rk(Im χ) = rk(M).
    let crit = rank(&m0) + image_rank(g) == rank(&g.monoid);
    if def != crit {
        return Err(TorificError::CriterionMismatch(format!(
            "loose: definition gives {def}, rank criterion gives {crit}"
        )));
    }
    Ok(def)
}

fn check_sharp_saturated(g: &Grading) -> Result<()> {
    if !g.monoid.is_sharp() {
        return Err(TorificError::NotSharp("taut/loose require a sharp monoid".into()));
    }
    if !g.monoid.saturated {
        return Err(TorificError::NotSaturatedParent("taut/loose require a saturated monoid".into()));
    }
    Ok(())
}

/// The dual characterization of tautness for surjective χ^gp onto a free
/// target: taut iff the image of L^∨ in N = (M^gp)^∨ meets the dual cone
/// of M only at 0.
pub fn dual_taut_check(g: &Grading) -> Result<bool> {
    if !g.target.torsion.is_empty() {
        return Err(TorificError::NotSurjective(
            "dual check requires a free grading group".into(),
        ));
    }
    let d = g.monoid.ambient_rank;
    let group = g.monoid.group_basis();
    let k = group.len();
    // χ in coordinates of group(M): the matrix of χ^gp on Z^k.
    let bt = IntMatrix::from_rows(&group, d).transpose();
    let chi = g.map.matrix.mul(&bt);
    // Surjectivity of χ^gp onto L = Z^r: the column lattice of χ must be
    // all of Z^r.
    let r = g.target.free_rank;
    let identity: Vec<Vec<Int>> = (0..r)
        .map(|i| {
            let mut e = vec![Int::zero(); r];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let col_lat = lattice_basis(&chi.transpose().rows_vec(), r);
    if !lattices_equal(&col_lat, &identity, r) {
        return Err(TorificError::NotSurjective(
            "group map does not surject onto the grading group".into(),
        ));
    }
    // Dual cone σ ⊂ Z^k of M, cut out by the generator coordinates.
    let mut constraints: Vec<Vec<Int>> = Vec::new();
    for gen in &g.monoid.generators {
        let u = solve_integer(&bt, gen).expect("generator lies in its own group");
        constraints.push(u);
    }
    // Restrict σ to the span of the image of L^∨, which is the row span
    // of χ in Z^k (the transpose embedding).
    let span_rows: Vec<Vec<Int>> = chi.rows_vec();
    let orth = kernel_basis(&IntMatrix::from_rows(&span_rows, k));
    for o in &orth {
        constraints.push(o.clone());
        constraints.push(vec_neg(o));
    }
    let c = Cone::from_halfspaces(k, &constraints);
    Ok(c.rays.is_empty())
}

/// The stabilizer group at a face F: the cokernel L / χ(F^gp) in
/// invariant-factor form, with the projection L → L_F.
pub fn stabilizer_at_face(g: &Grading, f: &Face) -> Result<(FgAbelianGroup, GroupHom)> {
    validate_face(&g.monoid, f)?;
    let cols: Vec<Vec<Int>> =
        face_generators(&g.monoid, f).iter().map(|v| g.map.apply(v)).collect();
    Ok(quotient_by_columns(&g.target, &cols))
}

/// Pushes a character multiset forward along φ, dropping the characters
/// that die and merging the rest.
pub fn reduced_image(s: &CharacterMultiset, phi: &GroupHom) -> CharacterMultiset {
    let mut entries: Vec<(Vec<Int>, usize)> = Vec::new();
    for (e, m) in &s.entries {
        let img = phi.apply(e);
        if !vec_is_zero(&img) {
            entries.push((img, *m));
        }
    }
    CharacterMultiset { target: phi.target.clone(), entries: merge_entries(entries) }
}

/// The balanced closure σ⁰: appends −Σ when the entries do not already
/// sum to zero.
pub fn balanced_closure(s: &CharacterMultiset) -> CharacterMultiset {
    let mut sum = s.target.zero();
    for (e, m) in &s.entries {
        for _ in 0..*m {
            sum = s.target.add(&sum, e);
        }
    }
    if s.target.is_zero_elt(&sum) {
        return s.clone();
    }
    let mut entries = s.entries.clone();
    entries.push((s.target.neg(&sum), 1));
    CharacterMultiset { target: s.target.clone(), entries: merge_entries(entries) }
}

/// The torific ideal I_l of a single character: generated by all
/// l-homogeneous elements of M; the zero ideal when the slice is empty.
pub fn torific_ideal_single(g: &Grading, l: &[Int]) -> Result<MonoidIdeal> {
    if !g.monoid.is_sharp() {
        return Err(TorificError::NotSharp("torific ideals require a sharp monoid".into()));
    }
    if !g.monoid.saturated {
        return Err(TorificError::NotSaturatedParent(
            "torific ideals require a saturated monoid".into(),
        ));
    }
    let l = g.target.reduce(l);
    if vec_is_zero(&l) {
        return Ok(unit_ideal(&g.monoid));
    }
    let spec = g.monoid_spec();
    let gens = module_generators_graded(&spec, &g.level_constraints(&l))?;
    Ok(MonoidIdeal { parent: g.monoid.clone(), gens })
}

/// The torific ideal I_S = Π_{l ∈ S} I_l, with multiplicities; the zero
/// ideal if any factor vanishes, the unit ideal for empty S.
pub fn torific_ideal(g: &Grading, s: &CharacterMultiset) -> Result<MonoidIdeal> {
    let mut acc = unit_ideal(&g.monoid);
    for (l, m) in &s.entries {
        let factor = torific_ideal_single(g, l)?;
        if factor.gens.is_empty() {
            return Ok(MonoidIdeal { parent: g.monoid.clone(), gens: Vec::new() });
        }
        for _ in 0..*m {
            acc = crate::ideal::ideal_product(&acc, &factor)?;
        }
    }
    Ok(acc)
}

/// The degree-zero part J₀ = {j ∈ J : χ(j) = 0} of an ideal, as an ideal
/// of the degree-zero monoid M₀ with minimal generators.
pub fn invariant_ideal_part(g: &Grading, j: &MonoidIdeal) -> Result<MonoidIdeal> {
    let m0 = degree_zero_monoid(g)?;
    let spec = g.monoid_spec();
    let mut candidates: Vec<Vec<Int>> = Vec::new();
    for b in &j.gens {
        let lb = g.map.apply(b);
        if vec_is_zero(&lb) {
            // The coset b + M meets degree zero minimally at b itself.
            candidates.push(b.clone());
            continue;
        }
        // Minimal m ∈ M with χ(m) = −χ(b); then b + m is minimal in the
        // degree-zero part of the coset b + M.
        let levels = g.level_constraints(&g.target.neg(&lb));
        for m in module_generators_graded(&spec, &levels)? {
            candidates.push(m.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    ideal_from(&m0, &candidates)
}

/// Reduces a grading whose units have nonzero degree: replaces L by
/// L / χ(M^×) and composes. Returns the (possibly unchanged) grading and
/// whether a reduction happened.
pub fn reduce_by_unit_degrees(g: &Grading) -> (Grading, bool) {
    let unit_degrees: Vec<Vec<Int>> =
        g.monoid.unit_lattice.iter().map(|u| g.map.apply(u)).collect();
    if unit_degrees.iter().all(|d| vec_is_zero(d)) {
        return (g.clone(), false);
    }
    let (q, proj) = quotient_by_columns(&g.target, &unit_degrees);
    let matrix = proj.matrix.mul(&g.map.matrix);
    let map = GroupHom::from_free(g.monoid.ambient_rank, q.clone(), matrix);
    (Grading { monoid: g.monoid.clone(), target: q, map }, true)
}

/// Convenience: the grading restricted to a localization or other monoid
/// in the same ambient lattice.
pub fn with_monoid(g: &Grading, monoid: ToricMonoid) -> Grading {
    Grading { monoid, target: g.target.clone(), map: g.map.clone() }
}

/// Face signatures for cross-checking coherence: the image of a multiset
/// under the stabilizer projection at each face.
pub fn face_signatures(
    g: &Grading,
    s: &CharacterMultiset,
) -> Result<Vec<(Face, CharacterMultiset)>> {
    let mut out = Vec::new();
    for f in faces(&g.monoid)? {
        let (_, proj) = stabilizer_at_face(g, &f)?;
        out.push((f, reduced_image(s, &proj)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_member, is_zero_ideal};
    use crate::monoid::monoids_equal;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn vv(vs: &[&[i64]]) -> Vec<Vec<Int>> {
        vs.iter().map(|v| iv(v)).collect()
    }

    fn orthant2() -> ToricMonoid {
        let m = ToricMonoid::from_generators(2, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        crate::monoid::saturate(&m).unwrap()
    }

    fn grading_z(m: ToricMonoid, row: &[i64]) -> Grading {
        let matrix = IntMatrix::from_i64(&[row]);
        Grading::new(m, FgAbelianGroup::free(1), matrix).unwrap()
    }

    #[test]
    fn degree_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        assert_eq!(degree(&g, &iv(&[2, 1])), iv(&[1]));
        let zero = Grading::new(orthant2(), FgAbelianGroup::free(1), IntMatrix::zero(1, 2)).unwrap();
        assert_eq!(degree(&zero, &iv(&[5, 7])), iv(&[0]));
        let l = FgAbelianGroup::new(1, vec![Int::from(2)]).unwrap();
        let matrix = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let g = Grading::new(orthant2(), l, matrix).unwrap();
        assert_eq!(degree(&g, &iv(&[1, 3])), iv(&[1, 1]));
    }

    #[test]
    fn degree_zero_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        let m0 = degree_zero_monoid(&g).unwrap();
        assert_eq!(m0.generators, vv(&[&[1, 1]]));

        let g = grading_z(orthant2(), &[1, 1]);
        assert!(degree_zero_monoid(&g).unwrap().is_trivial());

        let g = grading_z(orthant2(), &[1, 0]);
        let m0 = degree_zero_monoid(&g).unwrap();
        assert_eq!(m0.generators, vv(&[&[0, 1]]));
    }

    #[test]
    fn taut_loose_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        assert!(is_taut(&g).unwrap());
        assert!(is_loose(&g).unwrap());

        let g = grading_z(orthant2(), &[1, 1]);
        assert!(!is_taut(&g).unwrap());
        assert!(!is_loose(&g).unwrap());

        let g = grading_z(orthant2(), &[1, 0]);
        assert!(!is_taut(&g).unwrap());
        assert!(is_loose(&g).unwrap());
    }

    #[test]
    fn dual_taut_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        assert!(dual_taut_check(&g).unwrap());
        assert_eq!(dual_taut_check(&g).unwrap(), is_taut(&g).unwrap());

        let g = grading_z(orthant2(), &[1, 0]);
        assert!(!dual_taut_check(&g).unwrap());
        assert_eq!(dual_taut_check(&g).unwrap(), is_taut(&g).unwrap());

        // Half-line graded by the identity: the dual line contains the
        // dual ray, so the check fails, matching tautness.
        let half = {
            let m = ToricMonoid::from_generators(1, &vv(&[&[1]])).unwrap();
            crate::monoid::saturate(&m).unwrap()
        };
        let g = grading_z(half, &[1]);
        assert_eq!(dual_taut_check(&g).unwrap(), is_taut(&g).unwrap());
        assert!(!dual_taut_check(&g).unwrap());
    }

    #[test]
    fn dual_taut_requires_surjective() {
        // χ(a, b) = 2a - 2b does not surject onto Z.
        let g = grading_z(orthant2(), &[2, -2]);
        assert!(matches!(dual_taut_check(&g), Err(TorificError::NotSurjective(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        let fs = faces(&g.monoid).unwrap();
        let vertex = fs.iter().find(|f| f.generator_subset.is_empty()).unwrap();
        let (l, _) = stabilizer_at_face(&g, vertex).unwrap();
        assert_eq!(l.free_rank, 1);
        assert!(l.torsion.is_empty());

        // The face spanned by e1 = (0,1) in grlex position 0, e2 at 1.
        let edge = fs
            .iter()
            .find(|f| face_generators(&g.monoid, f) == vv(&[&[1, 0]]))
            .unwrap();
        let (l, _) = stabilizer_at_face(&g, edge).unwrap();
        assert!(l.is_trivial());

        let g2 = grading_z(orthant2(), &[2, 0]);
        let fs2 = faces(&g2.monoid).unwrap();
        let edge2 = fs2
            .iter()
            .find(|f| face_generators(&g2.monoid, f) == vv(&[&[1, 0]]))
            .unwrap();
        let (l, _) = stabilizer_at_face(&g2, edge2).unwrap();
        assert_eq!(l.free_rank, 0);
        assert_eq!(l.torsion, vec![Int::from(2)]);
    }

    #[test]
    fn reduced_image_examples() {
        let z = FgAbelianGroup::free(1);
        let z2 = FgAbelianGroup::new(0, vec![Int::from(2)]).unwrap();
        let to_z2 = GroupHom::from_free(1, z2.clone(), IntMatrix::from_i64(&[&[1]]));

        let s = CharacterMultiset::new(z.clone(), &vv(&[&[1], &[-1]]));
        let img = reduced_image(&s, &to_z2);
        assert_eq!(img.entries, vec![(iv(&[1]), 2)]);

        let s = CharacterMultiset::new(z.clone(), &vv(&[&[2], &[-2]]));
        assert!(reduced_image(&s, &to_z2).is_empty());

        let idm = GroupHom::from_free(1, z.clone(), IntMatrix::from_i64(&[&[1]]));
        let s = CharacterMultiset::new(z, &vv(&[&[1], &[1], &[-1]]));
        let img = reduced_image(&s, &idm);
        assert_eq!(img.entries, vec![(iv(&[-1]), 1), (iv(&[1]), 2)]);
    }

    #[test]
    fn balanced_closure_examples() {
        let z = FgAbelianGroup::free(1);
        let s = CharacterMultiset::new(z.clone(), &vv(&[&[1], &[-1]]));
        assert_eq!(balanced_closure(&s), s);

        let s = CharacterMultiset::new(z.clone(), &vv(&[&[1], &[1], &[-1]]));
        let b = balanced_closure(&s);
        assert_eq!(b.entries, vec![(iv(&[-1]), 2), (iv(&[1]), 2)]);

        let s = CharacterMultiset::new(z, &[]);
        assert!(balanced_closure(&s).is_empty());
    }

    #[test]
    fn torific_ideal_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        let i1 = torific_ideal_single(&g, &iv(&[1])).unwrap();
        assert_eq!(i1.gens, vv(&[&[1, 0]]));
        let im1 = torific_ideal_single(&g, &iv(&[-1])).unwrap();
        assert_eq!(im1.gens, vv(&[&[0, 1]]));

        let half = {
            let m = ToricMonoid::from_generators(1, &vv(&[&[1]])).unwrap();
            crate::monoid::saturate(&m).unwrap()
        };
        let gh = grading_z(half, &[1]);
        assert!(is_zero_ideal(&torific_ideal_single(&gh, &iv(&[-1])).unwrap()));

        let s = CharacterMultiset::new(FgAbelianGroup::free(1), &vv(&[&[1], &[-1]]));
        let is = torific_ideal(&g, &s).unwrap();
        assert_eq!(is.gens, vv(&[&[1, 1]]));

        let empty = CharacterMultiset::new(FgAbelianGroup::free(1), &[]);
        let u = torific_ideal(&g, &empty).unwrap();
        assert_eq!(u.gens, vec![vec![Int::zero(); 2]]);

        let sh = CharacterMultiset::new(FgAbelianGroup::free(1), &vv(&[&[1], &[-1]]));
        assert!(is_zero_ideal(&torific_ideal(&gh, &sh).unwrap()));
    }

    #[test]
    fn invariant_part_examples() {
        let g = grading_z(orthant2(), &[1, -1]);
        let j = ideal_from(&g.monoid, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        let j0 = invariant_ideal_part(&g, &j).unwrap();
        assert_eq!(j0.gens, vv(&[&[1, 1]]));
        assert_eq!(j0.parent.generators, vv(&[&[1, 1]]));

        let u = unit_ideal(&g.monoid);
        let u0 = invariant_ideal_part(&g, &u).unwrap();
        assert_eq!(u0.gens, vec![vec![Int::zero(); 2]]);

        let g = grading_z(orthant2(), &[1, 1]);
        let j = ideal_from(&g.monoid, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        let j0 = invariant_ideal_part(&g, &j).unwrap();
        assert!(is_zero_ideal(&j0));
    }

    #[test]
    fn torsion_grading_degree_zero() {
        // χ(a, b) = a + b mod 2 into Z/2: degree zero is the even-sum
        // submonoid of N².
        let l = FgAbelianGroup::new(0, vec![Int::from(2)]).unwrap();
        let g = Grading::new(orthant2(), l, IntMatrix::from_i64(&[&[1, 1]])).unwrap();
        let m0 = degree_zero_monoid(&g).unwrap();
        assert_eq!(m0.generators, vv(&[&[0, 2], &[1, 1], &[2, 0]]));
        assert!(is_taut(&g).unwrap());
        assert!(is_loose(&g).unwrap());
    }

    #[test]
    fn unit_degree_reduction() {
        // Localized orthant: units Z(1,0), χ = first coordinate. The
        // reduction kills L entirely.
        let m = ToricMonoid::from_generators(2, &vv(&[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        let m = crate::monoid::saturate(&m).unwrap();
        let g = grading_z(m, &[1, 0]);
        let (r, changed) = reduce_by_unit_degrees(&g);
        assert!(changed);
        assert!(r.target.is_trivial());
        let (same, changed2) = reduce_by_unit_degrees(&grading_z(orthant2(), &[1, -1]));
        assert!(!changed2);
        assert_eq!(same.target.free_rank, 1);
    }

    #[test]
    fn degree_zero_with_units() {
        // Localized orthant graded by the second coordinate: M₀ is the
        // unit line Z(1,0).
        let m = ToricMonoid::from_generators(2, &vv(&[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        let m = crate::monoid::saturate(&m).unwrap();
        let g = grading_z(m, &[0, 1]);
        let m0 = degree_zero_monoid(&g).unwrap();
        assert_eq!(m0.generators, vv(&[&[-1, 0], &[1, 0]]));
        assert_eq!(m0.unit_lattice.len(), 1);
    }

    #[test]
    fn support_and_blowup_equivalence() {
        let g = grading_z(orthant2(), &[1, -1]);
        let s = CharacterMultiset::new(FgAbelianGroup::free(1), &vv(&[&[1], &[1], &[-1]]));
        let i_s = torific_ideal(&g, &s).unwrap();
        let i_supp = torific_ideal(&g, &s.support()).unwrap();
        assert!(crate::ideal::blowups_equal(&i_s, &i_supp).unwrap());
        // The ideals themselves differ: I_S has an extra factor of I_1.
        assert!(ideal_member(&i_supp, &i_s.gens[0]).unwrap());
    }

    #[test]
    fn invariant_part_members_are_degree_zero() {
        let g = grading_z(orthant2(), &[2, -1]);
        let j = ideal_from(&g.monoid, &vv(&[&[1, 0], &[0, 2]])).unwrap();
        let j0 = invariant_ideal_part(&g, &j).unwrap();
        for gen in &j0.gens {
            assert!(vec_is_zero(&degree(&g, gen)));
            assert!(ideal_member(&j, gen).unwrap());
        }
        let m0 = degree_zero_monoid(&g).unwrap();
        assert!(monoids_equal(&j0.parent, &m0).unwrap());
    }
}
