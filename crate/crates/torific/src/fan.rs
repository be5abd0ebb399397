//! Embedded rational fans with integral structure: subdivision
//! predicates, stellar and barycentric subdivision, and simpleness of
//! finite lattice symmetry groups acting on a fan.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::abelian::{
    dot, grlex_cmp, primitive, rank_of, vec_is_zero, Cone, Int, IntMatrix,
};
use crate::error::{Result, TorificError};
use crate::monoid::{faces, ToricMonoid};

/// A fan in Z^n stored with all faces materialized: `rays` are primitive
/// generators, `cones` are sorted ray-index sets closed under taking
/// faces, including the zero cone as the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatoFan {
    pub rank: usize,
    pub rays: Vec<Vec<Int>>,
    pub cones: Vec<Vec<usize>>,
}

impl KatoFan {
    /// Builds a fan from generating cones, each given by its rays. Faces
    /// are materialized and the pairwise intersection condition checked.
    pub fn from_cones(rank: usize, cone_rays: &[Vec<Vec<Int>>]) -> Result<KatoFan> {
        let mut rays: Vec<Vec<Int>> = Vec::new();
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        cones.insert(Vec::new());
        for cr in cone_rays {
            let prim: Vec<Vec<Int>> = cr
                .iter()
                .filter(|r| !vec_is_zero(r))
                .map(|r| primitive(r))
                .collect();
            if prim.is_empty() {
                continue;
            }
            // Reuse the monoid face machinery: the faces of the cone are
            // exactly the faces of the monoid generated by its rays.
            let m = ToricMonoid::from_generators(rank, &prim)?;
            if !m.is_sharp() {
                return Err(TorificError::NotPointed(format!("{:?}", cr)));
            }
            // Reject listed rays that are not extreme: the stored rays
            // must be the cone's ray set.
            let extreme = m.cone().rays;
            for g in &m.generators {
                if !extreme.contains(g) {
                    return Err(TorificError::InvalidInput(format!(
                        "generator {:?} is not an extreme ray of its cone",
                        g
                    )));
                }
            }
            for f in faces(&m)? {
                let mut idx: Vec<usize> = Vec::new();
                for gi in &f.generator_subset {
                    let ray = m.generators[*gi].clone();
                    let pos = match rays.iter().position(|r| r == &ray) {
                        Some(p) => p,
                        None => {
                            rays.push(ray);
                            rays.len() - 1
                        }
                    };
                    idx.push(pos);
                }
                idx.sort_unstable();
                cones.insert(idx);
            }
        }
        let fan = KatoFan { rank, rays, cones: cones.into_iter().collect() };
        fan.validate()?;
        Ok(fan)
    }

    /// Checks that cones are pointed and pairwise intersect in common
    /// faces.
    pub fn validate(&self) -> Result<()> {
        for c in &self.cones {
            let rs = self.cone_ray_vectors(c);
            if rs.is_empty() {
                continue;
            }
            let cone = Cone::from_rays(self.rank, &rs);
            if !cone.is_pointed() {
                return Err(TorificError::NotPointed(format!("{:?}", c)));
            }
        }
        for a in &self.cones {
            for b in &self.cones {
                if a >= b {
                    continue;
                }
                let ca = Cone::from_rays(self.rank, &self.cone_ray_vectors(a));
                let cb = Cone::from_rays(self.rank, &self.cone_ray_vectors(b));
                let mut hs = ca.halfspaces.clone();
                hs.extend(cb.halfspaces.clone());
                let meet = Cone::from_halfspaces(self.rank, &hs);
                let meet_rays: BTreeSet<Vec<Int>> = meet.rays.iter().cloned().collect();
                let common: Vec<usize> = a
                    .iter()
                    .filter(|i| b.contains(i))
                    .cloned()
                    .collect();
                let face_rays: BTreeSet<Vec<Int>> =
                    self.cone_ray_vectors(&common).into_iter().collect();
                if meet_rays != face_rays || !self.cones.contains(&common) {
                    return Err(TorificError::InvalidInput(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn cone_ray_vectors(&self, c: &[usize]) -> Vec<Vec<Int>> {
        c.iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn cone_dim(&self, c: &[usize]) -> usize {
        rank_of(&self.cone_ray_vectors(c), self.rank)
    }

    /// Maximal cones: those that are faces of nothing bigger.
    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i)))
            })
            .cloned()
            .collect()
    }

    /// Whether v lies in the support of the fan.
    pub fn contains(&self, v: &[Int]) -> bool {
        self.maximal_cones().iter().any(|c| {
            Cone::from_rays(self.rank, &self.cone_ray_vectors(c)).contains(v)
        })
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| self.cone_dim(c) == c.len())
    }
}

/// Fan equality as geometric objects: equality of maximal-cone ray sets.
pub fn fans_equal(a: &KatoFan, b: &KatoFan) -> bool {
    if a.rank != b.rank {
        return false;
    }
    let set = |f: &KatoFan| -> BTreeSet<Vec<Vec<Int>>> {
        f.maximal_cones()
            .iter()
            .map(|c| {
                let mut rs = f.cone_ray_vectors(c);
                rs.sort_by(|x, y| grlex_cmp(x, y));
                rs
            })
            .collect()
    };
    set(a) == set(b)
}

/// Whether `fine` is a subdivision of `coarse`: every cone of `fine` lies
/// in a cone of `coarse` and the supports agree. Coverage of a maximal
/// coarse cone σ is checked with the wall criterion: among the top-
/// dimensional fine cones inside σ, every codimension-1 wall must either
/// lie in a facet of σ or be shared by exactly two of them. Together with
/// the fan axioms of `fine` this pins the support exactly.
pub fn is_subdivision(fine: &KatoFan, coarse: &KatoFan) -> bool {
    if fine.rank != coarse.rank {
        return false;
    }
    let coarse_max = coarse.maximal_cones();
    // Containment of every fine cone in some coarse cone.
    for c in fine.maximal_cones() {
        let rs = fine.cone_ray_vectors(&c);
        let inside = coarse_max.iter().any(|d| {
            let cd = Cone::from_rays(coarse.rank, &coarse.cone_ray_vectors(d));
            rs.iter().all(|r| cd.contains(r))
        });
        if !inside {
            return false;
        }
    }
    for d in &coarse_max {
        if !covers(fine, coarse, d) {
            return false;
        }
    }
    true
}

/// Wall-counting coverage of one maximal coarse cone by the fine cones
/// contained in it.
fn covers(fine: &KatoFan, coarse: &KatoFan, d: &[usize]) -> bool {
    let drays = coarse.cone_ray_vectors(d);
    let dim = coarse.cone_dim(d);
    if dim == 0 {
        return true;
    }
    let cd = Cone::from_rays(coarse.rank, &drays);
    let inside: Vec<Vec<usize>> = fine
        .maximal_cones()
        .into_iter()
        .filter(|c| {
            fine.cone_dim(c) == dim
                && fine.cone_ray_vectors(c).iter().all(|r| cd.contains(r))
        })
        .collect();
    if dim == 1 {
        return inside.iter().any(|c| fine.cone_ray_vectors(c) == drays);
    }
    if inside.is_empty() {
        return false;
    }
    // Facet normals of σ, excluding span-pinning pairs.
    let sigma_normals: Vec<Vec<Int>> = {
        let hs = cd.halfspaces.clone();
        hs.iter()
            .filter(|h| !hs.contains(&h.iter().map(|x| -x).collect::<Vec<Int>>()))
            .cloned()
            .collect()
    };
    for c in &inside {
        let rs = fine.cone_ray_vectors(c);
        let cone = Cone::from_rays(fine.rank, &rs);
        let normals: Vec<Vec<Int>> = cone
            .halfspaces
            .iter()
            .filter(|h| !cone.halfspaces.contains(&h.iter().map(|x| -x).collect::<Vec<Int>>()))
            .cloned()
            .collect();
        for h in &normals {
            let wall: Vec<usize> = c
                .iter()
                .cloned()
                .filter(|&i| dot(h, &fine.rays[i]).is_zero())
                .collect();
            let wall_rays = fine.cone_ray_vectors(&wall);
            if rank_of(&wall_rays, fine.rank) != dim - 1 {
                continue;
            }
            // Wall on the boundary of σ: all wall rays on a facet of σ.
            let on_boundary = sigma_normals
                .iter()
                .any(|s| wall_rays.iter().all(|r| dot(s, r).is_zero()));
            if on_boundary {
                continue;
            }
            let sharing = inside
                .iter()
                .filter(|c2| wall.iter().all(|i| c2.contains(i)))
                .count();
            if sharing != 2 {
                return false;
            }
        }
    }
    true
}

/// Stellar subdivision at a primitive ray v: cones containing v are
/// replaced by the joins of v with their v-free faces; other cones stay.
pub fn stellar_subdivision(f: &KatoFan, v: &[Int]) -> Result<KatoFan> {
    let v = primitive(v);
    if !f.contains(&v) {
        return Err(TorificError::RayOutsideSupport(format!("{:?}", v)));
    }
    let mut new_cones: Vec<Vec<Vec<Int>>> = Vec::new();
    for c in f.maximal_cones() {
        let rs = f.cone_ray_vectors(&c);
        let cone = Cone::from_rays(f.rank, &rs);
        if !cone.contains(&v) {
            new_cones.push(rs);
            continue;
        }
        // Faces of this cone not containing v, joined with v.
        let m = ToricMonoid::from_generators(f.rank, &rs)?;
        for face in faces(&m)? {
            let frays: Vec<Vec<Int>> =
                face.generator_subset.iter().map(|&i| m.generators[i].clone()).collect();
            let fc = Cone::from_rays(f.rank, &frays);
            if !frays.is_empty() && fc.contains(&v) {
                continue;
            }
            if frays.is_empty() && vec_is_zero(&v) {
                continue;
            }
            let mut joined = frays;
            joined.push(v.clone());
            new_cones.push(joined);
        }
    }
    KatoFan::from_cones(f.rank, &new_cones)
}

/// Barycentric subdivision: stellar subdivisions at the barycenters of
/// the original cones of dimension at least 2, processed in strictly
/// decreasing dimension. The barycenter of a cone is the sum of its
/// primitive ray generators; the result is simplicial.
pub fn barycentric_subdivision(f: &KatoFan) -> Result<KatoFan> {
    let mut targets: Vec<(usize, Vec<Int>)> = Vec::new();
    for c in &f.cones {
        let dim = f.cone_dim(c);
        if dim < 2 {
            continue;
        }
        let mut bary = vec![Int::zero(); f.rank];
        for r in f.cone_ray_vectors(c) {
            for (bi, ri) in bary.iter_mut().zip(&r) {
                *bi += ri;
            }
        }
        targets.push((dim, primitive(&bary)));
    }
    // Strictly decreasing dimension; within one dimension the stellar
    // subdivisions commute, so any order works.
    targets.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| grlex_cmp(&a.1, &b.1)));
    let mut out = f.clone();
    for (_, bary) in targets {
        out = stellar_subdivision(&out, &bary)?;
    }
    Ok(out)
}

/// A finite group of lattice symmetries of a fan, given by unimodular
/// generator matrices.
#[derive(Clone, Debug)]
pub struct FanAction {
    pub fan: KatoFan,
    pub group_gens: Vec<IntMatrix>,
    /// Cap on the group closure; exceeding it is reported as an error.
    pub order_bound: usize,
}

impl FanAction {
    pub fn new(fan: KatoFan, group_gens: Vec<IntMatrix>) -> FanAction {
        FanAction { fan, group_gens, order_bound: 5000 }
    }
}

/// The image of a ray index set under a matrix, as a ray index set of the
/// same fan; None if some image ray is not a ray of the fan.
fn map_cone(f: &KatoFan, g: &IntMatrix, c: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(c.len());
    for &i in c {
        let img = primitive(&g.mul_vec(&f.rays[i]));
        out.push(f.rays.iter().position(|r| r == &img)?);
    }
    out.sort_unstable();
    Some(out)
}

/// Enumerates the full group generated by the action's generators,
/// verifying along the way that each element maps the fan to itself.
pub fn group_elements(a: &FanAction) -> Result<Vec<IntMatrix>> {
    let n = a.fan.rank;
    let mut elements: Vec<IntMatrix> = vec![IntMatrix::identity(n)];
    let mut frontier: Vec<IntMatrix> = vec![IntMatrix::identity(n)];
    while let Some(e) = frontier.pop() {
        for g in &a.group_gens {
            let prod = g.mul(&e);
            if elements.contains(&prod) {
                continue;
            }
            for c in &a.fan.cones {
                let img = map_cone(&a.fan, &prod, c)
                    .filter(|i| a.fan.cones.contains(i))
                    .ok_or_else(|| {
                        TorificError::NotAnAutomorphism(format!("cone {:?} is not preserved", c))
                    })?;
                let _ = img;
            }
            elements.push(prod.clone());
            frontier.push(prod);
            if elements.len() > a.order_bound {
                return Err(TorificError::SearchExhausted(format!(
                    "group closure exceeded {} elements",
                    a.order_bound
                )));
            }
        }
    }
    Ok(elements)
}

/// Simpleness: for every cone σ and every group element g stabilizing σ
/// (as a set), g must fix the saturated sublattice spanned by σ
/// pointwise. Since the rays span that sublattice rationally, this is
/// equivalent to fixing every ray of σ.
pub fn is_action_simple(a: &FanAction) -> Result<bool> {
    let elements = group_elements(a)?;
    for g in &elements {
        for c in &a.fan.cones {
            let img = map_cone(&a.fan, g, c)
                .ok_or_else(|| TorificError::NotAnAutomorphism("ray not preserved".into()))?;
            if &img == c {
                for &i in c {
                    if g.mul_vec(&a.fan.rays[i]) != a.fan.rays[i] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
