//! The model-case torification pipeline: from a sharp graded monoid M and
//! a character multiset σ, build P = M ⊕ N^σ, blow up the torific ideal,
//! and verify per chart that the resulting action is toroidal, with full
//! divisor bookkeeping and quotient data.

use num_traits::Zero;

use crate::abelian::{
    dot, solve_integer, vec_is_zero, vec_neg, FgAbelianGroup, Int, IntMatrix,
};
use crate::error::{Result, TorificError};
use crate::graded::{
    balanced_closure, degree, degree_zero_monoid, invariant_ideal_part, is_loose, is_taut,
    reduce_by_unit_degrees, reduced_image, stabilizer_at_face, torific_ideal, CharacterMultiset,
    Grading,
};
use crate::ideal::{blowup_charts, is_zero_ideal, MonoidIdeal};
use crate::monoid::{faces, facet_split, monoids_equal, saturate, sharpen, Face, ToricMonoid};

/// A diagonalizable model action: a sharp L-graded toric monoid M and a
/// multiset σ of nonzero characters. The derived data is the monoid
/// P = M ⊕ N^{|σ|} with the i-th new generator graded by the i-th σ
/// entry, and the set R of facet normals dual to those generators: the
/// toroidal divisor omits exactly those components.
#[derive(Clone, Debug)]
pub struct ModelAction {
    pub base: ToricMonoid,
    pub sigma: CharacterMultiset,
    /// Grading of P = M ⊕ N^{|σ|} in ambient rank d + |σ|.
    pub total: Grading,
    /// Facet normals of P removed from the toroidal divisor.
    pub removed: Vec<Vec<Int>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorifyMode {
    /// Blow up I_{σ⁰} for the balanced closure σ⁰.
    Balanced,
    /// Blow up I_σ for σ itself.
    Raw,
}

/// Per-chart outcome of the torification blowup.
#[derive(Clone, Debug)]
pub struct ChartReport {
    pub monoid: ToricMonoid,
    pub grading: Grading,
    /// Facet normals of the chart lying over the exceptional divisor.
    pub exceptional: Vec<Vec<Int>>,
    /// Facet normals whose components stay removed from the divisor.
    pub removed: Vec<Vec<Int>>,
    pub toroidal: bool,
    pub taut: bool,
    pub loose: bool,
    /// Whether the grading group was reduced by nonzero unit degrees.
    pub unit_degrees_reduced: bool,
    /// Indices of the ideal generators whose charts merged into this one.
    pub merged_from: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TorifyReport {
    pub mode: TorifyMode,
    /// The multiset S actually blown up (σ or σ⁰).
    pub characters: CharacterMultiset,
    pub ideal: MonoidIdeal,
    /// True when the torific ideal is zero and the blowup says nothing.
    pub vacuous: bool,
    pub charts: Vec<ChartReport>,
    /// Conjunction of the chart verdicts.
    pub toroidal: bool,
}

/// Quotient-side data: the degree-zero monoid, the invariant part of the
/// torific ideal, and the degree-zero monoids of the torified charts.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub degree_zero: ToricMonoid,
    pub invariant_ideal: MonoidIdeal,
    pub quotient_charts: Vec<ToricMonoid>,
    /// For balanced S: whether the quotient charts match the saturated
    /// blowup charts of (M₀, (I_S)₀). None when S is not balanced.
    pub chart_identity: Option<bool>,
}

/// Assembles P = M ⊕ N^{|σ|} with its grading and removed facet normals.
pub fn build_model(
    base: &ToricMonoid,
    target: &FgAbelianGroup,
    base_matrix: &IntMatrix,
    sigma_elements: &[Vec<Int>],
) -> Result<ModelAction> {
    if !base.is_sharp() {
        return Err(TorificError::NotSharp("model base monoid must be sharp".into()));
    }
    for s in sigma_elements {
        if vec_is_zero(&target.reduce(s)) {
            return Err(TorificError::ZeroCharacterInSigma(format!("{:?}", s)));
        }
    }
    if base_matrix.rows != target.len() || base_matrix.cols != base.ambient_rank {
        return Err(TorificError::DimensionMismatch(format!(
            "grading matrix is {}x{}, expected {}x{}",
            base_matrix.rows,
            base_matrix.cols,
            target.len(),
            base.ambient_rank
        )));
    }
    let d = base.ambient_rank;
    let n = sigma_elements.len();
    // Generators of P: M generators padded with zeros, then the unit
    // vectors of the σ summands.
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for g in &base.generators {
        let mut v = g.clone();
        v.extend(std::iter::repeat(Int::zero()).take(n));
        gens.push(v);
    }
    for i in 0..n {
        let mut v = vec![Int::zero(); d + n];
        v[d + i] = Int::from(1);
        gens.push(v);
    }
    let p = saturate(&ToricMonoid::from_generators(d + n, &gens)?)?;
    // χ on P: the M columns followed by one column per σ entry.
    let mut matrix = IntMatrix::zero(target.len(), d + n);
    for r in 0..target.len() {
        for c in 0..d {
            *matrix.get_mut(r, c) = base_matrix.get(r, c).clone();
        }
        for (i, s) in sigma_elements.iter().enumerate() {
            *matrix.get_mut(r, d + i) = target.reduce(s)[r].clone();
        }
    }
    let total = Grading::new(p, target.clone(), matrix)?;
    let removed: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); d + n];
            v[d + i] = Int::from(1);
            v
        })
        .collect();
    let sigma = CharacterMultiset::new(target.clone(), sigma_elements);
    Ok(ModelAction { base: base.clone(), sigma, total, removed })
}

/// The signature at the closed orbit: σ itself.
pub fn origin_signature(m: &ModelAction) -> CharacterMultiset {
    m.sigma.clone()
}

/// The signature at a face F of P: the image of σ under the stabilizer
/// projection L → L_F with zeros removed.
pub fn face_signature(m: &ModelAction, f: &Face) -> Result<CharacterMultiset> {
    let (_, proj) = stabilizer_at_face(&m.total, f)?;
    Ok(reduced_image(&m.sigma, &proj))
}

/// Facet normals of a monoid: the extreme rays of the dual cone, with the
/// ± pairs that only pin the span filtered out.
pub fn facet_normals(m: &ToricMonoid) -> Vec<Vec<Int>> {
    let hs = m.cone().halfspaces;
    hs.iter().filter(|h| !hs.contains(&vec_neg(h))).cloned().collect()
}

/// Order of an ideal along a dual direction: min over the generators.
fn ideal_order(i: &MonoidIdeal, r: &[Int]) -> Int {
    i.gens.iter().map(|g| dot(g, r)).min().expect("nonzero ideal")
}

/// Classifies the facets of a blowup chart: a normal is exceptional when
/// the pulled-back ideal vanishes along it (which covers every normal new
/// to the chart); a surviving normal is the strict transform of its
/// parent facet and stays removed exactly when the parent facet was.
pub fn divisor_tracking(
    parent: &ToricMonoid,
    ideal: &MonoidIdeal,
    chart: &ToricMonoid,
    removed: &[Vec<Int>],
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let parent_normals = facet_normals(parent);
    let mut exceptional = Vec::new();
    let mut still_removed = Vec::new();
    for r in facet_normals(chart) {
        let new = !parent_normals.contains(&r);
        if new || ideal_order(ideal, &r) > Int::zero() {
            exceptional.push(r);
        } else if removed.contains(&r) {
            still_removed.push(r);
        }
    }
    (exceptional, still_removed)
}

/// Whether the action on the pair (Spec of the monoid, toric divisor
/// minus the removed components) is toroidal: every removed component's
/// prime ideal must be principal with a degree-zero generator. On a split
/// monoid the checks for distinct facets do not interact, so each removed
/// normal is examined independently.
pub fn is_action_toroidal(g: &Grading, removed: &[Vec<Int>]) -> Result<bool> {
    if removed.is_empty() {
        return Ok(true);
    }
    let fs = faces(&g.monoid)?;
    let normals = facet_normals(&g.monoid);
    for r in removed {
        if !normals.contains(r) {
            return Err(TorificError::UnknownComponent(format!("{:?}", r)));
        }
        let f = fs
            .iter()
            .find(|f| {
                &f.supporting_normal == r
                    && crate::monoid::prime_height(&g.monoid, f).unwrap_or(0) == 1
            })
            .ok_or_else(|| TorificError::UnknownComponent(format!("{:?}", r)))?;
        let split = facet_split(&g.monoid, f)?;
        let ok = match &split.generator {
            Some(e) => split.splits && vec_is_zero(&degree(g, e)),
            None => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sharpens a chart and transports its grading and a list of facet
/// normals into the sharpened ambient lattice. The grading group is
/// first reduced by the unit degrees so that the grading descends.
fn sharpen_with_grading(
    g: &Grading,
    normals: &[Vec<Int>],
) -> Result<(Grading, Vec<Vec<Int>>, bool)> {
    let (g, reduced) = reduce_by_unit_degrees(g);
    if g.monoid.is_sharp() {
        return Ok((g, normals.to_vec(), reduced));
    }
    let (sharp, proj) = sharpen(&g.monoid)?;
    // Integer section of the projection: proj is surjective.
    let dq = proj.rows;
    let mut section_cols: Vec<Vec<Int>> = Vec::with_capacity(dq);
    for i in 0..dq {
        let mut e = vec![Int::zero(); dq];
        e[i] = Int::from(1);
        section_cols.push(solve_integer(&proj, &e).expect("sharpening projection is surjective"));
    }
    let compose_row = |row: &[Int]| -> Vec<Int> { section_cols.iter().map(|s| dot(row, s)).collect() };
    let mut matrix = IntMatrix::zero(g.target.len(), dq);
    for r in 0..g.target.len() {
        let row = compose_row(&g.map.matrix.row(r));
        for c in 0..dq {
            *matrix.get_mut(r, c) = row[c].clone();
        }
    }
    let grading = Grading::new(sharp, g.target.clone(), matrix)?;
    let transported: Vec<Vec<Int>> = normals.iter().map(|r| compose_row(r)).collect();
    Ok((grading, transported, reduced))
}

/// Runs the torification blowup and verifies every chart.
pub fn torify(m: &ModelAction, mode: TorifyMode) -> Result<TorifyReport> {
    let s = match mode {
        TorifyMode::Balanced => balanced_closure(&m.sigma),
        TorifyMode::Raw => m.sigma.clone(),
    };
    let ideal = torific_ideal(&m.total, &s)?;
    if is_zero_ideal(&ideal) {
        return Ok(TorifyReport {
            mode,
            characters: s,
            ideal,
            vacuous: true,
            charts: Vec::new(),
            toroidal: true,
        });
    }
    let mut charts = Vec::new();
    let mut all_toroidal = true;
    for chart in blowup_charts(&ideal, true)? {
        let (exceptional, removed) =
            divisor_tracking(&m.total.monoid, &ideal, &chart.monoid, &m.removed);
        let grading = Grading::new(
            chart.monoid.clone(),
            m.total.target.clone(),
            m.total.map.matrix.clone(),
        )?;
        let (sharp_grading, sharp_removed, unit_degrees_reduced) =
            sharpen_with_grading(&grading, &removed)?;
        let toroidal = is_action_toroidal(&sharp_grading, &sharp_removed)?;
        let taut = is_taut(&sharp_grading)?;
        let loose = is_loose(&sharp_grading)?;
        all_toroidal &= toroidal;
        charts.push(ChartReport {
            monoid: chart.monoid,
            grading,
            exceptional,
            removed,
            toroidal,
            taut,
            loose,
            unit_degrees_reduced,
            merged_from: chart.generator_indices,
        });
    }
    Ok(TorifyReport { mode, characters: s, ideal, vacuous: false, charts, toroidal: all_toroidal })
}

/// Whether the entries of a multiset sum to zero.
pub fn is_balanced(s: &CharacterMultiset) -> bool {
    let mut sum = s.target.zero();
    for (e, mult) in &s.entries {
        for _ in 0..*mult {
            sum = s.target.add(&sum, e);
        }
    }
    s.target.is_zero_elt(&sum)
}

/// Quotient data for a torification run: M₀, the invariant part of the
/// torific ideal, and the degree-zero monoids of the charts. For balanced
/// S the quotient charts are matched, as sets, against the saturated
/// blowup charts of (M₀, (I_S)₀).
pub fn quotient_report(m: &ModelAction, report: &TorifyReport) -> Result<QuotientReport> {
    let degree_zero = degree_zero_monoid(&m.total)?;
    let invariant_ideal = if is_zero_ideal(&report.ideal) {
        MonoidIdeal { parent: degree_zero.clone(), gens: Vec::new() }
    } else {
        invariant_ideal_part(&m.total, &report.ideal)?
    };
    let mut quotient_charts = Vec::new();
    for chart in &report.charts {
        let (g, _) = reduce_by_unit_degrees(&chart.grading);
        quotient_charts.push(degree_zero_monoid(&g)?);
    }
    let chart_identity = if is_balanced(&report.characters) && !is_zero_ideal(&invariant_ideal) {
        let downstairs = blowup_charts(&invariant_ideal, true)?;
        let mut matched = true;
        for q in &quotient_charts {
            let mut found = false;
            for c in &downstairs {
                if monoids_equal(q, &c.monoid)? {
                    found = true;
                    break;
                }
            }
            matched &= found;
        }
        for c in &downstairs {
            let mut found = false;
            for q in &quotient_charts {
                if monoids_equal(q, &c.monoid)? {
                    found = true;
                    break;
                }
            }
            matched &= found;
        }
        Some(matched)
    } else {
        None
    };
    Ok(QuotientReport { degree_zero, invariant_ideal, quotient_charts, chart_identity })
}

/// The chart identity as a hard check: errors when S is not balanced.
pub fn verify_quotient_identity(m: &ModelAction, report: &TorifyReport) -> Result<bool> {
    if !is_balanced(&report.characters) {
        return Err(TorificError::NotBalanced(format!("{:?}", report.characters.entries)));
    }
    let q = quotient_report(m, report)?;
    Ok(q.chart_identity.unwrap_or(true))
}
