//! Seeded random instance generation for tests and the CLI `corpus`
//! command. Deterministic for a fixed seed.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{vec_is_zero, FgAbelianGroup, Int, IntMatrix};
use crate::error::Result;
use crate::fan::{stellar_subdivision, FanAction, KatoFan};
use crate::graded::{CharacterMultiset, Grading};
use crate::hilbert::ConstrainedMonoidSpec;
use crate::ideal::{ideal_from, MonoidIdeal};
use crate::monoid::{saturate, ToricMonoid};
use crate::torify::{build_model, ModelAction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> Int {
    Int::from(r.gen_range(lo..=hi))
}

/// A random pointed constraint system: inequalities over a small box,
/// with optional equations and congruences. The orthant rows are always
/// included so the system is pointed and feasible.
pub fn random_spec(r: &mut ChaCha8Rng, max_rank: usize) -> ConstrainedMonoidSpec {
    let d = r.gen_range(1..=max_rank);
    let mut inequalities: Vec<Vec<Int>> = (0..d)
        .map(|i| {
            let mut row = vec![Int::zero(); d];
            row[i] = Int::from(1);
            row
        })
        .collect();
    for _ in 0..r.gen_range(0..=2) {
        let row: Vec<Int> = (0..d).map(|_| int(r, -1, 3)).collect();
        if !vec_is_zero(&row) {
            inequalities.push(row);
        }
    }
    let mut equations = Vec::new();
    if d >= 2 && r.gen_bool(0.3) {
        // A balanced row has nontrivial nonnegative solutions.
        let mut row: Vec<Int> = (0..d).map(|_| int(r, -2, 2)).collect();
        if row.iter().all(|x| x.sign() != num_bigint::Sign::Minus)
            || row.iter().all(|x| x.sign() != num_bigint::Sign::Plus)
        {
            row[0] = Int::from(1);
            row[d - 1] = Int::from(-1);
        }
        equations.push(row);
    }
    let mut congruences = Vec::new();
    if r.gen_bool(0.4) {
        let row: Vec<Int> = (0..d).map(|_| int(r, 0, 2)).collect();
        if !vec_is_zero(&row) {
            congruences.push((row, Int::from(r.gen_range(2..=3))));
        }
    }
    ConstrainedMonoidSpec { ambient_rank: d, inequalities, equations, congruences }
}

/// A random sharp saturated monoid: the saturation of a few random
/// nonnegative generators (nonnegative entries keep the cone pointed).
pub fn random_sharp_saturated_monoid(r: &mut ChaCha8Rng, max_rank: usize) -> Result<ToricMonoid> {
    let d = r.gen_range(1..=max_rank);
    let count = r.gen_range(1..=d + 1);
    let mut gens = Vec::new();
    for _ in 0..count {
        let g: Vec<Int> = (0..d).map(|_| int(r, 0, 3)).collect();
        if !vec_is_zero(&g) {
            gens.push(g);
        }
    }
    if gens.is_empty() {
        let mut g = vec![Int::zero(); d];
        g[0] = Int::from(1);
        gens.push(g);
    }
    saturate(&ToricMonoid::from_generators(d, &gens)?)
}

/// A random grading group: Z, Z², or Z ⊕ Z/2.
pub fn random_group(r: &mut ChaCha8Rng) -> FgAbelianGroup {
    match r.gen_range(0..3) {
        0 => FgAbelianGroup::free(1),
        1 => FgAbelianGroup::free(2),
        _ => FgAbelianGroup::new(1, vec![Int::from(2)]).expect("valid torsion"),
    }
}

/// A random grading of the monoid with small matrix entries.
pub fn random_grading(r: &mut ChaCha8Rng, m: &ToricMonoid) -> Result<Grading> {
    let target = random_group(r);
    let rows: Vec<Vec<Int>> = (0..target.len())
        .map(|_| (0..m.ambient_rank).map(|_| int(r, -2, 2)).collect())
        .collect();
    let matrix = IntMatrix::from_rows(&rows, m.ambient_rank);
    Grading::new(m.clone(), target, matrix)
}

/// A random nonzero ideal of the monoid: generated by small sums of its
/// generators.
pub fn random_ideal(r: &mut ChaCha8Rng, m: &ToricMonoid) -> Result<MonoidIdeal> {
    if m.is_trivial() {
        return ideal_from(m, &[]);
    }
    let count = r.gen_range(1..=3);
    let mut elements = Vec::new();
    for _ in 0..count {
        let mut e = vec![Int::zero(); m.ambient_rank];
        let terms = r.gen_range(1..=3);
        for _ in 0..terms {
            let g = &m.generators[r.gen_range(0..m.generators.len())];
            for (ei, gi) in e.iter_mut().zip(g) {
                *ei += gi;
            }
        }
        elements.push(e);
    }
    ideal_from(m, &elements)
}

/// A random model action: sharp saturated base of rank at most 2, a
/// grading group from `random_group`, and up to three nonzero characters
/// with coordinates in [−3, 3].
pub fn random_model_action(r: &mut ChaCha8Rng) -> Result<ModelAction> {
    let base = random_sharp_saturated_monoid(r, 2)?;
    let target = random_group(r);
    let rows: Vec<Vec<Int>> = (0..target.len())
        .map(|_| (0..base.ambient_rank).map(|_| int(r, -2, 2)).collect())
        .collect();
    let matrix = IntMatrix::from_rows(&rows, base.ambient_rank);
    let count = r.gen_range(0..=3);
    let mut sigma = Vec::new();
    while sigma.len() < count {
        let s: Vec<Int> = (0..target.len()).map(|_| int(r, -3, 3)).collect();
        if !vec_is_zero(&target.reduce(&s)) {
            sigma.push(s);
        }
    }
    build_model(&base, &target, &matrix, &sigma)
}

/// A random nonzero character multiset in the grading's target group.
pub fn random_multiset(r: &mut ChaCha8Rng, target: &FgAbelianGroup, max_size: usize) -> CharacterMultiset {
    let count = r.gen_range(0..=max_size);
    let mut elements = Vec::new();
    while elements.len() < count {
        let s: Vec<Int> = (0..target.len()).map(|_| int(r, -3, 3)).collect();
        if !vec_is_zero(&target.reduce(&s)) {
            elements.push(s);
        }
    }
    CharacterMultiset::new(target.clone(), &elements)
}

fn orthant_rays(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = Int::from(1);
            v
        })
        .collect()
}

/// A random fan of rank 2 or 3 symmetric under coordinate permutations:
/// the positive orthant or the full fan of all orthants, optionally
/// refined by a stellar subdivision at a symmetric ray.
pub fn random_fan(r: &mut ChaCha8Rng, max_rank: usize) -> Result<KatoFan> {
    let n = r.gen_range(2..=max_rank.max(2));
    let fan = if r.gen_bool(0.5) {
        KatoFan::from_cones(n, &[orthant_rays(n)])?
    } else {
        // All 2^n orthants.
        let mut cones = Vec::new();
        for mask in 0..(1u32 << n) {
            let rays: Vec<Vec<Int>> = (0..n)
                .map(|i| {
                    let mut v = vec![Int::zero(); n];
                    v[i] = if mask & (1 << i) != 0 { Int::from(-1) } else { Int::from(1) };
                    v
                })
                .collect();
            cones.push(rays);
        }
        KatoFan::from_cones(n, &cones)?
    };
    if r.gen_bool(0.3) {
        let ones = vec![Int::from(1); n];
        return stellar_subdivision(&fan, &ones);
    }
    Ok(fan)
}

/// A random permutation or sign-permutation action preserving the fan.
/// Sign flips are only used when the fan is symmetric under them (the
/// full-orthant fans from `random_fan`).
pub fn random_fan_action(r: &mut ChaCha8Rng, fan: &KatoFan, allow_signs: bool) -> FanAction {
    let n = fan.rank;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = r.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![Int::zero(); n];
        let sign = if allow_signs && r.gen_bool(0.3) { -1 } else { 1 };
        row[perm[i]] = Int::from(sign);
        rows.push(row);
    }
    let m = IntMatrix::from_rows(&rows, n);
    FanAction::new(fan.clone(), vec![m])
}
