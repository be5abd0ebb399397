//! Monomial ideals of toric monoids: minimal generation, products and
//! powers, saturation via the Rees monoid, primality, order-function
//! subdivisions of the dual cone, blowup charts, and saturation
//! thresholds.

use num_traits::Zero;

use crate::abelian::{dot, grlex_cmp, vec_add, vec_is_zero, vec_scale, vec_sub, Cone, Int};
use crate::error::{Result, TorificError};
use crate::monoid::{
    contains, ideal_prime_face, prime_height, saturate, validate_face, Face,
    ToricMonoid,
};

/// A monomial ideal of `parent`, stored by its minimal monomial
/// generators. Empty `gens` is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIdeal {
    pub parent: ToricMonoid,
    pub gens: Vec<Vec<Int>>,
}

/// The subdivision of the dual cone σ of the parent by an order function
/// ord_I(v) = min_i ⟨a_i, v⟩: one full-dimensional cell per minimizing
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub ambient_rank: usize,
    pub parent_cone: Cone,
    pub cells: Vec<Cone>,
    pub labels: Vec<usize>,
}

/// A blowup chart with its exceptional element and the generator indices
/// merged into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupChart {
    pub monoid: ToricMonoid,
    pub exceptional: Vec<Int>,
    pub generator_indices: Vec<usize>,
}

/// Report from the saturation threshold search; `window` and `cap`
/// document the verified range, since the search is windowed rather than
/// proven complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub threshold: usize,
    pub window: usize,
    pub cap: usize,
}

/// Builds the ideal generated by `elements`, minimalizing the generators.
pub fn ideal_from(parent: &ToricMonoid, elements: &[Vec<Int>]) -> Result<MonoidIdeal> {
    for e in elements {
        if !contains(parent, e)? {
            return Err(TorificError::NotMember(format!("{:?}", e)));
        }
    }
    let gens = minimalize(parent, elements)?;
    Ok(MonoidIdeal { parent: parent.clone(), gens })
}

/// Drops every element that is another element plus a monoid member.
fn minimalize(parent: &ToricMonoid, elements: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let mut els: Vec<Vec<Int>> = elements.to_vec();
    els.sort_by(|a, b| grlex_cmp(a, b));
    els.dedup();
    let mut out: Vec<Vec<Int>> = Vec::new();
    'next: for (i, e) in els.iter().enumerate() {
        for (j, f) in els.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = vec_sub(e, f);
            if contains(parent, &diff)? {
                // Ties (e - f a unit both ways) keep the earlier element.
                if vec_is_zero(&diff) || !contains(parent, &vec_sub(f, e))? || j < i {
                    continue 'next;
                }
            }
        }
        out.push(e.clone());
    }
    Ok(out)
}

/// Membership in the ideal.
pub fn ideal_member(i: &MonoidIdeal, x: &[Int]) -> Result<bool> {
    for g in &i.gens {
        if contains(&i.parent, &vec_sub(x, g))? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn ideal_product(i: &MonoidIdeal, j: &MonoidIdeal) -> Result<MonoidIdeal> {
    if i.parent != j.parent {
        return Err(TorificError::InvalidInput(
            "ideal product requires the same parent".into(),
        ));
    }
    let mut sums = Vec::new();
    for a in &i.gens {
        for b in &j.gens {
            sums.push(vec_add(a, b));
        }
    }
    Ok(MonoidIdeal { parent: i.parent.clone(), gens: minimalize(&i.parent, &sums)? })
}

pub fn ideal_power(i: &MonoidIdeal, n: usize) -> Result<MonoidIdeal> {
    let mut out = unit_ideal(&i.parent);
    for _ in 0..n {
        out = ideal_product(&out, i)?;
    }
    Ok(out)
}

pub fn unit_ideal(parent: &ToricMonoid) -> MonoidIdeal {
    MonoidIdeal {
        parent: parent.clone(),
        gens: vec![vec![Int::zero(); parent.ambient_rank]],
    }
}

pub fn is_zero_ideal(i: &MonoidIdeal) -> bool {
    i.gens.is_empty()
}

/// Saturation {a ∈ P : n·a ∈ nI for some n > 0}, computed from the Rees
/// monoid R = ⟨P×{0}, gens×{1}⟩: the saturated ideal is generated by the
/// level-1 generators of the saturation of R.
pub fn ideal_saturation(i: &MonoidIdeal) -> Result<MonoidIdeal> {
    if !i.parent.saturated {
        return Err(TorificError::NotSaturatedParent(
            "ideal saturation requires a saturated parent".into(),
        ));
    }
    if is_zero_ideal(i) {
        return Ok(i.clone());
    }
    let d = i.parent.ambient_rank;
    let mut rees_gens: Vec<Vec<Int>> = Vec::new();
    for g in &i.parent.generators {
        let mut v = g.clone();
        v.push(Int::zero());
        rees_gens.push(v);
    }
    for u in &i.parent.unit_lattice {
        for s in [u.clone(), crate::abelian::vec_neg(u)] {
            let mut v = s;
            v.push(Int::zero());
            rees_gens.push(v);
        }
    }
    for a in &i.gens {
        let mut v = a.clone();
        v.push(Int::from(1));
        rees_gens.push(v);
    }
    let rees = ToricMonoid::from_generators(d + 1, &rees_gens)?;
    let sat = saturate(&rees)?;
    let level1: Vec<Vec<Int>> = sat
        .generators
        .iter()
        .filter(|v| v[d] == Int::from(1))
        .map(|v| v[..d].to_vec())
        .collect();
    ideal_from(&i.parent, &level1)
}

/// Prime iff the complement is a face.
pub fn is_prime(i: &MonoidIdeal) -> Result<bool> {
    Ok(ideal_prime_face(&i.parent, &i.gens)?.is_some())
}

/// Height of a prime ideal: rk(M) − rk(F) for the complement face.
pub fn ideal_height(i: &MonoidIdeal) -> Result<usize> {
    match ideal_prime_face(&i.parent, &i.gens)? {
        Some(f) => prime_height(&i.parent, &f),
        None => Err(TorificError::NotPrime(format!("{:?}", i.gens))),
    }
}

/// The prime ideal M ∖ F of a face.
pub fn prime_of_face(m: &ToricMonoid, f: &Face) -> Result<MonoidIdeal> {
    validate_face(m, f)?;
    let outside: Vec<Vec<Int>> = m
        .generators
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.generator_subset.contains(i))
        .map(|(_, g)| g.clone())
        .collect();
    ideal_from(m, &outside)
}

/// Cells of linearity of ord_I on the dual cone σ: for each generator
/// a_i, the cell {v ∈ σ : ⟨a_i, v⟩ ≤ ⟨a_j, v⟩ ∀ j}. Lower-dimensional
/// cells are dropped and duplicates merged.
pub fn order_subdivision(i: &MonoidIdeal) -> Result<Subdivision> {
    if is_zero_ideal(i) {
        return Err(TorificError::ZeroIdeal("order subdivision of the zero ideal".into()));
    }
    let d = i.parent.ambient_rank;
    // σ is cut out by the parent's generators, plus the span conditions
    // carried by the parent cone's halfspace pairs.
    let sigma = Cone::from_halfspaces(d, &i.parent.generators);
    let full_dim = sigma.dim();
    let mut cells: Vec<Cone> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    for (idx, a) in i.gens.iter().enumerate() {
        let mut normals = i.parent.generators.clone();
        for (j, b) in i.gens.iter().enumerate() {
            if j != idx {
                normals.push(vec_sub(b, a));
            }
        }
        let cell = Cone::from_halfspaces(d, &normals);
        if cell.dim() != full_dim {
            continue;
        }
        if cells.iter().any(|c| c.rays == cell.rays) {
            continue;
        }
        cells.push(cell);
        labels.push(idx);
    }
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&x, &y| cells[x].rays.cmp(&cells[y].rays));
    let cells = order.iter().map(|&k| cells[k].clone()).collect();
    let labels = order.iter().map(|&k| labels[k]).collect();
    Ok(Subdivision { ambient_rank: d, parent_cone: sigma, cells, labels })
}

/// One chart per ideal generator a_i: P[I − a_i] generated by P and
/// {a_j − a_i}; saturated on request. Charts with equal monoids are
/// merged, recording the generator indices.
pub fn blowup_charts(i: &MonoidIdeal, saturated: bool) -> Result<Vec<BlowupChart>> {
    if is_zero_ideal(i) {
        return Err(TorificError::ZeroIdeal("blowup of the zero ideal".into()));
    }
    let p = &i.parent;
    let mut charts: Vec<BlowupChart> = Vec::new();
    for (idx, a) in i.gens.iter().enumerate() {
        let mut gens = p.generators.clone();
        for u in &p.unit_lattice {
            gens.push(u.clone());
            gens.push(crate::abelian::vec_neg(u));
        }
        for b in i.gens.iter() {
            let diff = vec_sub(b, a);
            if !vec_is_zero(&diff) {
                gens.push(diff);
            }
        }
        let mut m = ToricMonoid::from_generators(p.ambient_rank, &gens)?;
        if saturated {
            m = saturate(&m)?;
        }
        let mut merged = false;
        for c in charts.iter_mut() {
            let equal = if saturated {
                crate::monoid::monoids_equal(&c.monoid, &m)?
            } else {
                c.monoid.generators == m.generators
            };
            if equal {
                c.generator_indices.push(idx);
                merged = true;
                break;
            }
        }
        if !merged {
            charts.push(BlowupChart {
                monoid: m,
                exceptional: a.clone(),
                generator_indices: vec![idx],
            });
        }
    }
    Ok(charts)
}

/// Chart of the blowup of `j` localized at an arbitrary element `at` of
/// `j` (not necessarily a minimal generator): P[j − at].
pub fn chart_at(parent: &ToricMonoid, j: &MonoidIdeal, at: &[Int]) -> Result<ToricMonoid> {
    let mut gens = parent.generators.clone();
    for u in &parent.unit_lattice {
        gens.push(u.clone());
        gens.push(crate::abelian::vec_neg(u));
    }
    for b in &j.gens {
        let diff = vec_sub(b, at);
        if !vec_is_zero(&diff) {
            gens.push(diff);
        }
    }
    ToricMonoid::from_generators(parent.ambient_rank, &gens)
}

/// Blowup equality, decided on the fan side: equality of the order
/// subdivisions as cell sets.
pub fn blowups_equal(i: &MonoidIdeal, j: &MonoidIdeal) -> Result<bool> {
    let si = order_subdivision(i)?;
    let sj = order_subdivision(j)?;
    Ok(subdivisions_equal(&si, &sj))
}

pub fn subdivisions_equal(a: &Subdivision, b: &Subdivision) -> bool {
    if a.ambient_rank != b.ambient_rank || a.cells.len() != b.cells.len() {
        return false;
    }
    let mut ra: Vec<&Vec<Vec<Int>>> = a.cells.iter().map(|c| &c.rays).collect();
    let mut rb: Vec<&Vec<Vec<Int>>> = b.cells.iter().map(|c| &c.rays).collect();
    ra.sort();
    rb.sort();
    ra == rb
}

/// Outcome of testing one exponent in the threshold searches.
#[derive(Clone, Copy)]
enum Verdict {
    Works,
    Fails,
    Undecided,
}

/// Minimal n₀ such that the saturated charts of I agree with the plain
/// charts of (nI)^sat for all n in [n₀, n₀ + window], with a
/// stabilization certificate at the window end. Refuses to answer past
/// `cap`.
pub fn saturation_threshold(
    i: &MonoidIdeal,
    window: usize,
    cap: usize,
) -> Result<ThresholdReport> {
    threshold_search(i, window, cap, chart_verdict)
}

/// Minimal n such that every chart of (nI)^sat is itself saturated (the
/// blowup of (nI)^sat is already normal), with the same windowed search.
pub fn normalization_threshold(
    i: &MonoidIdeal,
    window: usize,
    cap: usize,
) -> Result<ThresholdReport> {
    threshold_search(i, window, cap, normal_verdict)
}

fn threshold_search(
    i: &MonoidIdeal,
    window: usize,
    cap: usize,
    verdict: fn(&MonoidIdeal, usize) -> Result<Verdict>,
) -> Result<ThresholdReport> {
    if is_zero_ideal(i) {
        return Err(TorificError::ZeroIdeal("threshold of the zero ideal".into()));
    }
    if !i.parent.saturated || !i.parent.is_sharp() {
        return Err(TorificError::NotSaturatedParent(
            "threshold search requires a sharp saturated parent".into(),
        ));
    }
    let mut undecided = 0usize;
    // The candidate windows overlap heavily, so each exponent is judged
    // once and remembered.
    let mut memo: Vec<Option<Verdict>> = vec![None; cap + window + 1];
    let mut judged = |i: &MonoidIdeal, n: usize| -> Result<Verdict> {
        if let Some(v) = memo[n] {
            return Ok(v);
        }
        let v = verdict(i, n)?;
        memo[n] = Some(v);
        Ok(v)
    };
    'candidates: for n0 in 1..=cap {
        for n in n0..=(n0 + window) {
            match judged(i, n)? {
                Verdict::Works => {}
                Verdict::Fails => continue 'candidates,
                Verdict::Undecided => {
                    undecided += 1;
                    continue 'candidates;
                }
            }
        }
        return Ok(ThresholdReport { threshold: n0, window, cap });
    }
    Err(TorificError::ThresholdSearchExhausted(format!(
        "no threshold up to {} (window {}, {} undecided comparisons)",
        cap, window, undecided
    )))
}

/// Chart identity of the threshold lemma at exponent n:
/// P[I − a]^sat = P[(nI)^sat − n·a] for every generator a of I.
fn chart_verdict(i: &MonoidIdeal, n: usize) -> Result<Verdict> {
    let p = &i.parent;
    let jn = ideal_saturation(&ideal_power(i, n)?)?;
    for a in &i.gens {
        let sat_chart = saturate(&chart_at(p, &MonoidIdeal {
            parent: p.clone(),
            gens: i.gens.clone(),
        }, a)?)?;
        let plain = chart_at(p, &jn, &vec_scale(&Int::from(n as i64), a))?;
        match charts_agree(&sat_chart, &plain)? {
            Some(true) => {}
            Some(false) => return Ok(Verdict::Fails),
            None => return Ok(Verdict::Undecided),
        }
    }
    Ok(Verdict::Works)
}

/// Every chart of (nI)^sat is saturated.
fn normal_verdict(i: &MonoidIdeal, n: usize) -> Result<Verdict> {
    let jn = ideal_saturation(&ideal_power(i, n)?)?;
    for chart in blowup_charts(&jn, false)? {
        let sat = saturate(&chart.monoid)?;
        match charts_agree(&sat, &chart.monoid)? {
            Some(true) => {}
            Some(false) => return Ok(Verdict::Fails),
            None => return Ok(Verdict::Undecided),
        }
    }
    Ok(Verdict::Works)
}

/// Equality of a saturated chart against a plain (possibly unsaturated)
/// chart: the plain generators always lie in the saturation, so only the
/// reverse membership is searched; an exhausted search yields None.
fn charts_agree(sat_chart: &ToricMonoid, plain: &ToricMonoid) -> Result<Option<bool>> {
    for g in &plain.generators {
        if !contains(sat_chart, g)? {
            return Ok(Some(false));
        }
    }
    for g in &sat_chart.generators {
        match contains(plain, g) {
            Ok(true) => {}
            Ok(false) => return Ok(Some(false)),
            Err(TorificError::UndecidedMembership(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(true))
}

/// Evaluation of the order function ord_I(v) = min_i ⟨a_i, v⟩.
pub fn order_value(i: &MonoidIdeal, v: &[Int]) -> Result<Int> {
    if is_zero_ideal(i) {
        return Err(TorificError::ZeroIdeal("order function of the zero ideal".into()));
    }
    Ok(i.gens.iter().map(|a| dot(a, v)).min().unwrap())
}

/// Convenience: the maximal ideal P⁺ of a sharp monoid.
pub fn maximal_ideal(m: &ToricMonoid) -> Result<MonoidIdeal> {
    if !m.is_sharp() {
        return Err(TorificError::NotSharp("maximal ideal requires a sharp monoid".into()));
    }
    ideal_from(m, &m.generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::monoids_equal;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn vv(vs: &[&[i64]]) -> Vec<Vec<Int>> {
        vs.iter().map(|v| iv(v)).collect()
    }

    fn orthant2() -> ToricMonoid {
        let mut m = ToricMonoid::from_generators(2, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        m.saturated = true;
        m
    }

    fn a1_cone() -> ToricMonoid {
        let mut m =
            ToricMonoid::from_generators(2, &vv(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        m.saturated = true;
        m
    }

    #[test]
    fn minimal_generators() {
        let p = orthant2();
        let i = ideal_from(&p, &vv(&[&[1, 0], &[2, 0]])).unwrap();
        assert_eq!(i.gens, vv(&[&[1, 0]]));
        let i = ideal_from(&p, &vv(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(i.gens, vv(&[&[0, 1], &[1, 0]]));
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2], &[2, 2]])).unwrap();
        assert_eq!(i.gens, vv(&[&[0, 2], &[2, 0]]));
        assert!(matches!(
            ideal_from(&p, &vv(&[&[-1, 0]])),
            Err(TorificError::NotMember(_))
        ));
    }

    #[test]
    fn products_and_powers() {
        let p = orthant2();
        let i = ideal_from(&p, &vv(&[&[1, 0]])).unwrap();
        let j = ideal_from(&p, &vv(&[&[0, 1]])).unwrap();
        assert_eq!(ideal_product(&i, &j).unwrap().gens, vv(&[&[1, 1]]));
        let any = ideal_from(&p, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(ideal_power(&any, 0).unwrap().gens, vv(&[&[0, 0]]));
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let sq = ideal_power(&i, 2).unwrap();
        assert_eq!(sq.gens, vv(&[&[0, 4], &[2, 2], &[4, 0]]));
    }

    #[test]
    fn saturation_examples() {
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let s = ideal_saturation(&i).unwrap();
        assert_eq!(s.gens, vv(&[&[0, 2], &[1, 1], &[2, 0]]));
        // Oracle: brute-force over lattice points of the parent.
        for x in 0..=4i64 {
            for y in 0..=4i64 {
                if (x + y) % 2 != 0 {
                    continue;
                }
                let v = iv(&[x, y]);
                if !contains(&a1, &v).unwrap() {
                    continue;
                }
                let mut in_sat = false;
                for n in 1..=6usize {
                    let nv = vec_scale(&Int::from(n as i64), &v);
                    if ideal_member(&ideal_power(&i, n).unwrap(), &nv).unwrap() {
                        in_sat = true;
                        break;
                    }
                }
                assert_eq!(ideal_member(&s, &v).unwrap(), in_sat, "at {:?}", v);
            }
        }

        let mut n1 = ToricMonoid::from_generators(1, &vv(&[&[1]])).unwrap();
        n1.saturated = true;
        let i = ideal_from(&n1, &vv(&[&[2]])).unwrap();
        assert_eq!(ideal_saturation(&i).unwrap().gens, vv(&[&[2]]));

        let u = unit_ideal(&orthant2());
        assert_eq!(ideal_saturation(&u).unwrap().gens, u.gens);
    }

    #[test]
    fn primality_and_height() {
        let p = orthant2();
        let e1 = ideal_from(&p, &vv(&[&[1, 0]])).unwrap();
        assert!(is_prime(&e1).unwrap());
        assert_eq!(ideal_height(&e1).unwrap(), 1);
        let pp = ideal_from(&p, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(is_prime(&pp).unwrap());
        assert_eq!(ideal_height(&pp).unwrap(), 2);
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(!is_prime(&i).unwrap());
        assert!(matches!(ideal_height(&i), Err(TorificError::NotPrime(_))));
    }

    #[test]
    fn order_subdivision_examples() {
        let p = orthant2();
        let i = ideal_from(&p, &vv(&[&[1, 0], &[0, 1]])).unwrap();
        let s = order_subdivision(&i).unwrap();
        assert_eq!(s.cells.len(), 2);
        for c in &s.cells {
            assert_eq!(c.dim(), 2);
            for r in &c.rays {
                assert!(s.parent_cone.contains(r));
            }
        }
        let principal = ideal_from(&p, &vv(&[&[1, 1]])).unwrap();
        let s = order_subdivision(&principal).unwrap();
        assert_eq!(s.cells.len(), 1);
        assert!(s.cells[0].set_equal(&s.parent_cone));
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let s = order_subdivision(&i).unwrap();
        assert_eq!(s.cells.len(), 2);
    }

    #[test]
    fn blowup_chart_examples() {
        let p = orthant2();
        let i = maximal_ideal(&p).unwrap();
        let charts = blowup_charts(&i, false).unwrap();
        assert_eq!(charts.len(), 2);
        for c in &charts {
            // Both charts of the plane blowup are isomorphic to N².
            assert_eq!(rank_of_chart(&c.monoid), 2);
            assert!(c.monoid.is_sharp());
        }
        let principal = ideal_from(&p, &vv(&[&[1, 1]])).unwrap();
        let charts = blowup_charts(&principal, false).unwrap();
        assert_eq!(charts.len(), 1);
        assert!(monoids_equal(&charts[0].monoid, &p).unwrap());

        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let charts = blowup_charts(&i, true).unwrap();
        let at = charts
            .iter()
            .find(|c| c.exceptional == iv(&[2, 0]))
            .unwrap();
        let expect = {
            let mut m = ToricMonoid::from_generators(
                2,
                &vv(&[&[2, 0], &[1, 1], &[-1, 1]]),
            )
            .unwrap();
            m.saturated = true;
            m
        };
        assert!(monoids_equal(&at.monoid, &expect).unwrap());
    }

    fn rank_of_chart(m: &ToricMonoid) -> usize {
        crate::monoid::rank(m)
    }

    #[test]
    fn blowups_equal_examples() {
        let p = orthant2();
        let i = maximal_ideal(&p).unwrap();
        for n in 1..=4usize {
            let pn = ideal_power(&i, n).unwrap();
            assert!(blowups_equal(&i, &pn).unwrap());
        }
        let u = unit_ideal(&p);
        assert!(!blowups_equal(&i, &u).unwrap());
        let s = ideal_saturation(&i).unwrap();
        assert!(blowups_equal(&i, &s).unwrap());
    }

    #[test]
    fn threshold_examples() {
        let mut n1 = ToricMonoid::from_generators(1, &vv(&[&[1]])).unwrap();
        n1.saturated = true;
        let i = ideal_from(&n1, &vv(&[&[2]])).unwrap();
        assert_eq!(saturation_threshold(&i, 3, 16).unwrap().threshold, 1);

        let p = orthant2();
        let i = maximal_ideal(&p).unwrap();
        assert_eq!(saturation_threshold(&i, 3, 16).unwrap().threshold, 1);

        // Oracle for the A1 example: direct chart comparison per n.
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let mut oracle = None;
        'n: for n in 1..=8usize {
            let jn = ideal_saturation(&ideal_power(&i, n).unwrap()).unwrap();
            for a in &i.gens {
                let satc = saturate(&chart_at(&a1, &i, a).unwrap()).unwrap();
                let plain = chart_at(&a1, &jn, &vec_scale(&Int::from(n as i64), a)).unwrap();
                if !monoids_equal(&satc, &plain).unwrap() {
                    continue 'n;
                }
            }
            oracle = Some(n);
            break;
        }
        let got = saturation_threshold(&i, 3, 16).unwrap().threshold;
        assert_eq!(Some(got), oracle);
    }

    #[test]
    fn thresholds_agree() {
        let cases = vec![
            (orthant2(), vv(&[&[1, 0], &[0, 1]])),
            (a1_cone(), vv(&[&[2, 0], &[0, 2]])),
            (orthant2(), vv(&[&[2, 0], &[0, 1]])),
        ];
        for (p, gens) in cases {
            let i = ideal_from(&p, &gens).unwrap();
            let a = saturation_threshold(&i, 3, 16).unwrap().threshold;
            let b = normalization_threshold(&i, 3, 16).unwrap().threshold;
            assert_eq!(a, b, "thresholds differ for {:?}", i.gens);
        }
    }

    #[test]
    fn saturation_monotone_idempotent() {
        let a1 = a1_cone();
        let i = ideal_from(&a1, &vv(&[&[2, 0], &[0, 2]])).unwrap();
        let s = ideal_saturation(&i).unwrap();
        for g in &i.gens {
            assert!(ideal_member(&s, g).unwrap());
        }
        let ss = ideal_saturation(&s).unwrap();
        assert_eq!(s.gens, ss.gens);
        // (nI)^sat contains n * I^sat.
        for n in 1..=3usize {
            let ni = ideal_power(&i, n).unwrap();
            let nsat = ideal_saturation(&ni).unwrap();
            let sat_n = ideal_power(&s, n).unwrap();
            for g in &sat_n.gens {
                assert!(ideal_member(&nsat, g).unwrap());
            }
        }
    }
}
