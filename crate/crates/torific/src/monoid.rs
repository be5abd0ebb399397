//! Fine and toric monoid structure theory: faces and prime ideals,
//! heights, inner elements, sharpening, localization, saturation, and the
//! split-off criteria for faces and facets.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::abelian::{
    dot, grlex_cmp, in_lattice, kernel_basis, lattice_basis, lattice_intersection,
    lattice_membership_constraints, lattice_saturation, quotient_by_columns, rank_of,
    solve_integer, vec_add, vec_is_zero, vec_neg, vec_sub, vec_zero, Cone, FgAbelianGroup,
    Int, IntMatrix,
};
use crate::error::{Result, TorificError};
use crate::hilbert::{hilbert_basis, ConstrainedMonoidSpec};

/// A finitely generated submonoid of Z^d. `saturated` records whether the
/// generators are known to be the Hilbert basis of cone ∩ group; it can be
/// re-verified with `verify_saturated`. `unit_lattice` is a basis of
/// M ∩ (−M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricMonoid {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<Int>>,
    pub saturated: bool,
    pub unit_lattice: Vec<Vec<Int>>,
}

/// A face of a monoid: the generators lying on it and a supporting normal
/// with ⟨n, M⟩ ≥ 0 and face = M ∩ n^⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub generator_subset: Vec<usize>,
    pub supporting_normal: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub splits: bool,
    pub complement: Option<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSplitResult {
    pub splits: bool,
    pub generator: Option<Vec<Int>>,
    /// Independently evaluated equivalent criteria:
    /// 0: a complementary face exists (direct search);
    /// 1: the face ideal is prime of height ≥ rk(M) − 1;
    /// 2: the face ideal is prime and at most one edge lies outside;
    /// 3: the face ideal is the union of the other height-1 primes;
    /// 4: the complement prime ideal is principal.
    pub criteria: [bool; 5],
}

impl ToricMonoid {
    /// Builds a monoid from arbitrary generators: canonicalizes the list
    /// and detects the unit lattice.
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<Int>]) -> Result<ToricMonoid> {
        for g in gens {
            if g.len() != ambient_rank {
                return Err(TorificError::DimensionMismatch(format!(
                    "generator has length {}, ambient rank is {}",
                    g.len(),
                    ambient_rank
                )));
            }
        }
        let mut generators: Vec<Vec<Int>> =
            gens.iter().filter(|g| !vec_is_zero(g)).cloned().collect();
        generators.sort_by(|a, b| grlex_cmp(a, b));
        generators.dedup();
        let unit_lattice = detect_units(ambient_rank, &generators);
        Ok(ToricMonoid { ambient_rank, generators, saturated: false, unit_lattice })
    }

    pub(crate) fn assemble(
        ambient_rank: usize,
        mut generators: Vec<Vec<Int>>,
        saturated: bool,
        unit_lattice: Vec<Vec<Int>>,
    ) -> ToricMonoid {
        generators.retain(|g| !vec_is_zero(g));
        generators.sort_by(|a, b| grlex_cmp(a, b));
        generators.dedup();
        ToricMonoid { ambient_rank, generators, saturated, unit_lattice }
    }

    pub fn cone(&self) -> Cone {
        Cone::from_rays(self.ambient_rank, &self.generators)
    }

    pub fn group_basis(&self) -> Vec<Vec<Int>> {
        lattice_basis(&self.generators, self.ambient_rank)
    }

    pub fn is_sharp(&self) -> bool {
        self.unit_lattice.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Unit lattice of the monoid generated by `gens`: generated by the
/// generators whose negative is again in the monoid. Generators paired
/// with their negatives are found structurally; the remaining candidates
/// inside the cone's lineality get a bounded combination search.
fn detect_units(d: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let cone = Cone::from_rays(d, gens);
    let lin = cone.lineality();
    if lin.is_empty() {
        return Vec::new();
    }
    let genset: HashSet<&Vec<Int>> = gens.iter().collect();
    let mut units: Vec<Vec<Int>> = gens
        .iter()
        .filter(|g| genset.contains(&vec_neg(g)))
        .cloned()
        .collect();
    let mut basis = lattice_basis(&units, d);
    let lineal_gens: Vec<&Vec<Int>> = gens
        .iter()
        .filter(|g| cone.halfspaces.iter().all(|h| dot(h, g).is_zero()))
        .collect();
    for g in lineal_gens {
        if in_lattice(g, &basis, d) {
            continue;
        }
        if bounded_combination(&vec_neg(g), gens, 12, 20_000) == Some(true) {
            units.push(g.clone());
            basis = lattice_basis(&units, d);
        }
    }
    basis
}

/// Searches for x as an N-combination of gens with total coefficient sum
/// at most `max_sum` and a node budget. Some(true) if found, Some(false)
/// if exhaustively refuted within the budget, None if the budget ran out.
fn bounded_combination(
    x: &[Int],
    gens: &[Vec<Int>],
    max_sum: usize,
    budget: usize,
) -> Option<bool> {
    let mut nodes = 0usize;
    fn rec(
        x: &[Int],
        gens: &[Vec<Int>],
        from: usize,
        remaining: usize,
        nodes: &mut usize,
        budget: usize,
    ) -> Option<bool> {
        if vec_is_zero(x) {
            return Some(true);
        }
        if remaining == 0 {
            return Some(false);
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let mut exhausted = true;
        for i in from..gens.len() {
            match rec(&vec_sub(x, &gens[i]), gens, i, remaining - 1, nodes, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => exhausted = false,
            }
        }
        if exhausted {
            Some(false)
        } else {
            None
        }
    }
    match rec(x, gens, 0, max_sum, &mut nodes, budget) {
        Some(b) => Some(b),
        None => None,
    }
}

/// Monoid rank: dimension of the rational span of the group generated.
pub fn rank(m: &ToricMonoid) -> usize {
    rank_of(&m.generators, m.ambient_rank)
}

/// Membership x ∈ M. Exact for saturated monoids and for pointed
/// unsaturated ones; bounded search otherwise, which may report
/// UndecidedMembership.
pub fn contains(m: &ToricMonoid, x: &[Int]) -> Result<bool> {
    if x.len() != m.ambient_rank {
        return Err(TorificError::DimensionMismatch(format!(
            "vector has length {}, ambient rank is {}",
            x.len(),
            m.ambient_rank
        )));
    }
    if vec_is_zero(x) {
        return Ok(true);
    }
    if m.is_trivial() {
        return Ok(false);
    }
    let cone = m.cone();
    let group = m.group_basis();
    if !cone.contains(x) || !in_lattice(x, &group, m.ambient_rank) {
        return Ok(false);
    }
    if m.saturated {
        return Ok(true);
    }
    // Strictly positive functional on cone ∖ lineality: sum of the
    // non-paired halfspace normals.
    let hs: HashSet<&Vec<Int>> = cone.halfspaces.iter().collect();
    let mut ell = vec_zero(m.ambient_rank);
    for h in &cone.halfspaces {
        if !hs.contains(&vec_neg(h)) {
            ell = vec_add(&ell, h);
        }
    }
    let pointed = m.generators.iter().all(|g| dot(&ell, g).is_positive());
    if pointed {
        let mut failed: HashSet<Vec<Int>> = HashSet::new();
        return Ok(knapsack_dfs(m, &cone, x, &mut failed));
    }
    // Non-pointed case. The generators inside the lineality space (where
    // ell vanishes) generate a full lattice: a finitely generated monoid
    // whose cone is a linear space is a group, since for each generator
    // g some positive multiple of -g is a sum of generators, and adding
    // back multiples of g walks down to -g itself. So membership splits
    // into a pointed search on the projection modulo the lineality and a
    // lattice test on what remains.
    let d = m.ambient_rank;
    let (lin, pos): (Vec<Vec<Int>>, Vec<Vec<Int>>) =
        m.generators.iter().cloned().partition(|g| dot(&ell, g).is_zero());
    let lin_lattice = lattice_basis(&lin, d);
    let funcs = kernel_basis(&IntMatrix::from_rows(&lin_lattice, d));
    let project = |v: &[Int]| -> Vec<Int> { funcs.iter().map(|f| dot(f, v)).collect() };
    let projected_cone = Cone::from_rays(
        funcs.len(),
        &pos.iter().map(|g| project(g)).collect::<Vec<_>>(),
    );
    let mut failed: HashSet<Vec<Int>> = HashSet::new();
    return Ok(split_dfs(
        x,
        &pos,
        &lin_lattice,
        d,
        &project,
        &projected_cone,
        &mut failed,
    ));
}

/// Searches for a decomposition x = (sum of pos generators) + (lattice
/// element): subtracts pos generators while the projection stays in the
/// pointed projected cone, and tests the residue against the lattice
/// once the projection hits zero.
fn split_dfs(
    rem: &[Int],
    pos: &[Vec<Int>],
    lin_lattice: &[Vec<Int>],
    d: usize,
    project: &dyn Fn(&[Int]) -> Vec<Int>,
    projected_cone: &Cone,
    failed: &mut HashSet<Vec<Int>>,
) -> bool {
    let image = project(rem);
    if vec_is_zero(&image) {
        return in_lattice(rem, lin_lattice, d);
    }
    if failed.contains(rem) {
        return false;
    }
    for g in pos {
        let y = vec_sub(rem, g);
        if projected_cone.contains(&project(&y))
            && split_dfs(&y, pos, lin_lattice, d, project, projected_cone, failed)
        {
            return true;
        }
    }
    failed.insert(rem.to_vec());
    false
}

fn knapsack_dfs(
    m: &ToricMonoid,
    cone: &Cone,
    x: &[Int],
    failed: &mut HashSet<Vec<Int>>,
) -> bool {
    if vec_is_zero(x) {
        return true;
    }
    if failed.contains(x) {
        return false;
    }
    for g in &m.generators {
        let y = vec_sub(x, g);
        if cone.contains(&y) && knapsack_dfs(m, cone, &y, failed) {
            return true;
        }
    }
    failed.insert(x.to_vec());
    false
}

/// The complete face lattice of a sharp saturated monoid, including {0}
/// and the monoid itself. Supporting normals are sums of subsets of the
/// dual cone's extreme rays.
pub fn faces(m: &ToricMonoid) -> Result<Vec<Face>> {
    if !m.is_sharp() {
        return Err(TorificError::NotSharp("faces require a sharp monoid".into()));
    }
    let cone = m.cone();
    // Extreme dual rays (the ± lineality pairs of a lower-dimensional
    // cone's dual contribute nothing to face intersections).
    let hs: HashSet<&Vec<Int>> = cone.halfspaces.iter().collect();
    let extreme: Vec<Vec<Int>> = cone
        .halfspaces
        .iter()
        .filter(|h| !hs.contains(&vec_neg(h)))
        .cloned()
        .collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<Face> = Vec::new();
    let n = extreme.len();
    for mask in 0..(1u64 << n) {
        let mut normal = vec_zero(m.ambient_rank);
        for (i, h) in extreme.iter().enumerate() {
            if mask & (1 << i) != 0 {
                normal = vec_add(&normal, h);
            }
        }
        let subset: Vec<usize> = (0..m.generators.len())
            .filter(|&i| dot(&normal, &m.generators[i]).is_zero())
            .collect();
        if seen.insert(subset.clone()) {
            out.push(Face { generator_subset: subset, supporting_normal: normal });
        }
    }
    out.sort_by(|a, b| {
        a.generator_subset
            .len()
            .cmp(&b.generator_subset.len())
            .then_with(|| a.generator_subset.cmp(&b.generator_subset))
    });
    Ok(out)
}

/// Validates that `f` describes a face of `m` (normal nonnegative on all
/// generators, subset = vanishing locus).
pub fn validate_face(m: &ToricMonoid, f: &Face) -> Result<()> {
    if f.supporting_normal.len() != m.ambient_rank {
        return Err(TorificError::NotAFace("normal has wrong dimension".into()));
    }
    let mut subset = Vec::new();
    for (i, g) in m.generators.iter().enumerate() {
        let v = dot(&f.supporting_normal, g);
        if v.is_negative() {
            return Err(TorificError::NotAFace(
                "supporting normal is negative on a generator".into(),
            ));
        }
        if v.is_zero() {
            subset.push(i);
        }
    }
    if subset != f.generator_subset {
        return Err(TorificError::NotAFace(
            "generator subset does not match the supporting normal".into(),
        ));
    }
    Ok(())
}

pub fn face_generators(m: &ToricMonoid, f: &Face) -> Vec<Vec<Int>> {
    f.generator_subset.iter().map(|&i| m.generators[i].clone()).collect()
}

/// Membership of a monoid element in a face.
pub fn face_member(f: &Face, x: &[Int]) -> bool {
    dot(&f.supporting_normal, x).is_zero()
}

/// Height of the prime ideal M ∖ F: rk(M) − rk(F).
pub fn prime_height(m: &ToricMonoid, f: &Face) -> Result<usize> {
    validate_face(m, f)?;
    Ok(rank(m) - rank_of(&face_generators(m, f), m.ambient_rank))
}

/// True iff v lies in no facet: strictly positive on every extreme dual
/// ray (relative interior of the cone).
pub fn is_inner(m: &ToricMonoid, v: &[Int]) -> Result<bool> {
    if !contains(m, v)? {
        return Err(TorificError::NotMember(format!("{:?}", v)));
    }
    let cone = m.cone();
    let hs: HashSet<&Vec<Int>> = cone.halfspaces.iter().collect();
    for h in &cone.halfspaces {
        if hs.contains(&vec_neg(h)) {
            continue;
        }
        if !dot(h, v).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a saturated monoid as M̄ ⊕ M^×: returns the sharp quotient in
/// the quotient lattice and the projection matrix.
pub fn sharpen(m: &ToricMonoid) -> Result<(ToricMonoid, IntMatrix)> {
    if m.unit_lattice.is_empty() {
        return Ok((m.clone(), IntMatrix::identity(m.ambient_rank)));
    }
    let d = m.ambient_rank;
    let usat = lattice_saturation(&m.unit_lattice, d);
    let cols: Vec<Vec<Int>> = usat.clone();
    let (q, hom) = quotient_by_columns(&FgAbelianGroup::free(d), &cols);
    debug_assert!(q.torsion.is_empty());
    let p = hom.matrix;
    let gens: Vec<Vec<Int>> = m.generators.iter().map(|g| p.mul_vec(g)).collect();
    let sharp = ToricMonoid::assemble(q.free_rank, gens, m.saturated, Vec::new());
    Ok((sharp, p))
}

/// Localization M[−F]: adjoins the negatives of the face generators.
pub fn localize(m: &ToricMonoid, f: &Face) -> Result<ToricMonoid> {
    validate_face(m, f)?;
    let mut gens = m.generators.clone();
    for g in face_generators(m, f) {
        gens.push(vec_neg(&g));
    }
    let mut out = ToricMonoid::from_generators(m.ambient_rank, &gens)?;
    // Localization of a saturated monoid is saturated.
    out.saturated = m.saturated;
    Ok(out)
}

/// Saturation: the monoid of all group(M) points inside cone(M). The
/// result's generators are the units' ± basis together with lifts of the
/// Hilbert basis of the sharp quotient.
pub fn saturate(m: &ToricMonoid) -> Result<ToricMonoid> {
    let d = m.ambient_rank;
    if m.is_trivial() {
        return Ok(ToricMonoid::assemble(d, Vec::new(), true, Vec::new()));
    }
    let cone = m.cone();
    let group = m.group_basis();
    let lin = cone.lineality();
    if lin.is_empty() {
        let (mut equations, congruences) = lattice_membership_constraints(&group, d);
        let mut inequalities = cone.halfspaces.clone();
        // Halfspace pairs of a lower-dimensional cone already pin the
        // span; the lattice equations repeat that, harmlessly.
        equations.retain(|e| !vec_is_zero(e));
        inequalities.retain(|h| !vec_is_zero(h));
        let spec = ConstrainedMonoidSpec { ambient_rank: d, inequalities, equations, congruences };
        let hb = hilbert_basis(&spec)?;
        return Ok(ToricMonoid::assemble(d, hb.elements, true, Vec::new()));
    }
    // Units present: project the lineality away, saturate the sharp
    // image, and lift.
    let units = lattice_intersection(&lin, &group, d);
    let (q, hom) = quotient_by_columns(&FgAbelianGroup::free(d), &lin);
    debug_assert!(q.torsion.is_empty());
    let p = hom.matrix;
    let dq = q.free_rank;
    let img_gens: Vec<Vec<Int>> = m.generators.iter().map(|g| p.mul_vec(g)).collect();
    let img = ToricMonoid::from_generators(dq, &img_gens)?;
    let img_sat = saturate(&img)?;
    // Lift each generator back into group(M).
    let bt = IntMatrix::from_rows(&group, d).transpose();
    let pb = p.mul(&bt);
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for h in &img_sat.generators {
        let w = solve_integer(&pb, h).expect("saturation generator lifts to the group");
        gens.push(bt.mul_vec(&w));
    }
    for u in &units {
        gens.push(u.clone());
        gens.push(vec_neg(u));
    }
    Ok(ToricMonoid::assemble(d, gens, true, units))
}

/// The saturated monoid of all integer solutions to a constraint system.
/// Unlike `hilbert_basis`, this also accepts systems whose solution set
/// contains units: the lineality is projected away, the sharp image is
/// computed there, and the result is lifted back.
pub fn saturated_from_spec(spec: &ConstrainedMonoidSpec) -> Result<ToricMonoid> {
    spec.validate()?;
    let d = spec.ambient_rank;
    let lat = spec.solution_lattice();
    if lat.is_empty() {
        return Ok(ToricMonoid::assemble(d, Vec::new(), true, Vec::new()));
    }
    let orth = kernel_basis(&IntMatrix::from_rows(&lat, d));
    let mut stacked: Vec<Vec<Int>> = spec.inequalities.clone();
    stacked.extend(orth.iter().cloned());
    let lin = kernel_basis(&IntMatrix::from_rows(&stacked, d));
    if lin.is_empty() {
        let hb = hilbert_basis(spec)?;
        return Ok(ToricMonoid::assemble(d, hb.elements, true, Vec::new()));
    }
    // The unit lattice: solutions on which every inequality vanishes.
    let mut unit_spec = spec.clone();
    unit_spec.equations.extend(spec.inequalities.iter().cloned());
    unit_spec.inequalities.clear();
    let units = unit_spec.solution_lattice();
    // Project the lineality away; the inequality rows vanish on it, so
    // they descend through an integer section of the projection.
    let (q, hom) = quotient_by_columns(&FgAbelianGroup::free(d), &lin);
    debug_assert!(q.torsion.is_empty());
    let p = hom.matrix;
    let dq = q.free_rank;
    let mut section_cols: Vec<Vec<Int>> = Vec::with_capacity(dq);
    for i in 0..dq {
        let mut e = vec_zero(dq);
        e[i] = Int::from(1);
        section_cols.push(solve_integer(&p, &e).expect("quotient projection is surjective"));
    }
    let img_lat: Vec<Vec<Int>> = lat.iter().map(|b| p.mul_vec(b)).collect();
    let (img_eqs, img_congs) = lattice_membership_constraints(&img_lat, dq);
    let mut img_ineqs: Vec<Vec<Int>> = Vec::new();
    for r in &spec.inequalities {
        let desc: Vec<Int> = section_cols.iter().map(|s| dot(r, s)).collect();
        if !vec_is_zero(&desc) {
            img_ineqs.push(desc);
        }
    }
    let img_spec = ConstrainedMonoidSpec {
        ambient_rank: dq,
        inequalities: img_ineqs,
        equations: img_eqs,
        congruences: img_congs,
    };
    let hb = hilbert_basis(&img_spec)?;
    // Lift each image generator back into the solution lattice.
    let bt = IntMatrix::from_rows(&lat, d).transpose();
    let pb = p.mul(&bt);
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for h in &hb.elements {
        let w = solve_integer(&pb, h).expect("image generator lifts to the solution lattice");
        gens.push(bt.mul_vec(&w));
    }
    for u in &units {
        gens.push(u.clone());
        gens.push(vec_neg(u));
    }
    Ok(ToricMonoid::assemble(d, gens, true, units))
}

/// Re-verifies the saturation flag by comparison with `saturate`.
pub fn verify_saturated(m: &ToricMonoid) -> Result<bool> {
    let s = saturate(m)?;
    for g in &s.generators {
        if !contains(m, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monoid equality. Saturated inputs compare cones and groups; otherwise
/// mutual generator membership, which may be undecided for non-pointed
/// unsaturated inputs.
pub fn monoids_equal(a: &ToricMonoid, b: &ToricMonoid) -> Result<bool> {
    if a.ambient_rank != b.ambient_rank {
        return Err(TorificError::DimensionMismatch(
            "monoids live in different ambient lattices".into(),
        ));
    }
    if a.saturated && b.saturated {
        return Ok(a.cone().set_equal(&b.cone())
            && lattice_basis(&a.generators, a.ambient_rank)
                == lattice_basis(&b.generators, b.ambient_rank));
    }
    for g in &a.generators {
        if !contains(b, g)? {
            return Ok(false);
        }
    }
    for g in &b.generators {
        if !contains(a, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the ideal of M generated by `ideal_gens`.
pub fn ideal_contains(m: &ToricMonoid, ideal_gens: &[Vec<Int>], x: &[Int]) -> Result<bool> {
    for g in ideal_gens {
        if contains(m, &vec_sub(x, g))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// If the ideal generated by `ideal_gens` is prime, returns the face F
/// with ideal = M ∖ F; otherwise None. Requires a sharp saturated monoid.
pub fn ideal_prime_face(m: &ToricMonoid, ideal_gens: &[Vec<Int>]) -> Result<Option<Face>> {
    let all = faces(m)?;
    'outer: for f in all {
        for g in ideal_gens {
            if !vec_is_zero(g) && face_member(&f, g) {
                continue 'outer;
            }
        }
        for g in &m.generators {
            if !face_member(&f, g) && !ideal_contains(m, ideal_gens, g)? {
                continue 'outer;
            }
        }
        return Ok(Some(f));
    }
    Ok(None)
}

/// Whether the face N splits off: M = N ⊕ K for a face K. Decided by the
/// prime-and-height criterion and cross-checked against a direct search
/// for the complementary face.
pub fn splits_off(m: &ToricMonoid, n: &Face) -> Result<SplitResult> {
    if !m.is_sharp() {
        return Err(TorificError::NotSharp("splits_off requires a sharp monoid".into()));
    }
    validate_face(m, n)?;
    let complement = complementary_face(m, n)?;
    let direct = complement.is_some();
    // Criterion: the ideal (N⁺) is prime of height ≥ rk(N).
    let ideal_gens = face_generators(m, n);
    let by_criterion = match ideal_prime_face(m, &ideal_gens)? {
        Some(f) => prime_height(m, &f)? >= rank_of(&ideal_gens, m.ambient_rank),
        None => false,
    };
    if direct != by_criterion {
        return Err(TorificError::CriterionMismatch(format!(
            "direct split search ({}) disagrees with the prime-height criterion ({})",
            direct, by_criterion
        )));
    }
    Ok(SplitResult { splits: direct, complement })
}

/// Direct search for a face K with M = N ⊕ K: every generator lies on N
/// or K and the ranks are additive.
fn complementary_face(m: &ToricMonoid, n: &Face) -> Result<Option<Face>> {
    let rk_m = rank(m);
    let n_gens = face_generators(m, n);
    let rk_n = rank_of(&n_gens, m.ambient_rank);
    let nset: HashSet<usize> = n.generator_subset.iter().cloned().collect();
    for k in faces(m)? {
        let kset: HashSet<usize> = k.generator_subset.iter().cloned().collect();
        if (0..m.generators.len()).all(|i| nset.contains(&i) || kset.contains(&i)) {
            let k_gens = face_generators(m, &k);
            if rk_n + rank_of(&k_gens, m.ambient_rank) == rk_m {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// Evaluates the five equivalent facet-split criteria independently on a
/// sharp saturated monoid with a facet F, returning all five booleans and
/// the generator of the complement prime when it is principal.
pub fn facet_split(m: &ToricMonoid, f: &Face) -> Result<FacetSplitResult> {
    if !m.is_sharp() {
        return Err(TorificError::NotSharp("facet_split requires a sharp monoid".into()));
    }
    validate_face(m, f)
        .map_err(|_| TorificError::NotAFacet("not a face of the monoid".into()))?;
    if prime_height(m, f)? != 1 {
        return Err(TorificError::NotAFacet("face does not have height 1".into()));
    }
    let rk_m = rank(m);
    let ideal_gens = face_generators(m, f);

    // (a) a complementary face exists.
    let a = complementary_face(m, f)?.is_some();

    // (b) (F⁺) prime of height ≥ rk(M) − 1.
    let prime = ideal_prime_face(m, &ideal_gens)?;
    let b = match &prime {
        Some(p) => prime_height(m, p)? >= rk_m - 1,
        None => false,
    };

    // (c) (F⁺) prime and at most one edge of M lies outside F.
    let cone = m.cone();
    let edges_outside = cone
        .rays
        .iter()
        .filter(|r| dot(&f.supporting_normal, r).is_positive())
        .count();
    let c = prime.is_some() && edges_outside <= 1;

    // (d) (F⁺) equals the union of the other height-1 primes, i.e. the
    // complement of (F⁺) is the intersection of the other facets.
    let all_faces = faces(m)?;
    let mut other_normal = vec_zero(m.ambient_rank);
    for g in &all_faces {
        if prime_height(m, g)? == 1 && g.generator_subset != f.generator_subset {
            other_normal = vec_add(&other_normal, &g.supporting_normal);
        }
    }
    // The intersection face D of the other facets is cut out by the sum
    // of their normals.
    let in_d = |x: &[Int]| dot(&other_normal, x).is_zero();
    let mut d_ok = ideal_gens.iter().all(|g| !in_d(g));
    if d_ok {
        for g in &m.generators {
            if !in_d(g) && !ideal_contains(m, &ideal_gens, g)? {
                d_ok = false;
                break;
            }
        }
    }

    // (e) the prime 𝔭 = M ∖ F is principal. For a saturated monoid the
    // minimal ideal generators of 𝔭 are exactly the irreducible monoid
    // generators outside F.
    let outside: Vec<Vec<Int>> = m
        .generators
        .iter()
        .filter(|g| !face_member(f, g))
        .cloned()
        .collect();
    let e = outside.len() == 1;
    let generator = if e { Some(outside[0].clone()) } else { None };

    Ok(FacetSplitResult { splits: a, generator, criteria: [a, b, c, d_ok, e] })
}
