use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{instance_rng, report, LemmaId, LemmaReport, Sweep, Tally};
use crate::binom::binom;
use crate::caps::Caps;
use crate::constructions::extremal_family;
use crate::error::{Error, Result};
use crate::family::{find_involution_clique, is_psi_clique};
use crate::graph::EdgePerm;
use crate::mask::Mask;
use crate::perm::{all_perms, involutions, Perm};
use crate::relation::{
    arrow_masks, c1_size_formula, choosable_in, cycle_partition_of, e_psi_masks, f_r, good_in,
    lemma32_bound, neighborhood_masks,
};
use crate::space::EdgeSpace;

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn small_space(n: usize, r: usize, what: &str) -> Result<EdgeSpace> {
    let space = EdgeSpace::new(n, r)?;
    if space.edge_count() > 63 {
        return Err(Error::capacity(format!(
            "{what} enumerates all graphs; C({n},{r}) edges is too many"
        )));
    }
    Ok(space)
}

fn all_edge_perms(space: &EdgeSpace) -> Vec<EdgePerm> {
    all_perms(space.n())
        .map(|p| EdgePerm::induce(space, &p).expect("same n"))
        .collect()
}

fn hex(space: &EdgeSpace, m: &Mask) -> String {
    m.to_hex(space.edge_count())
}

fn random_graph(rng: &mut ChaCha8Rng, space: &EdgeSpace) -> Mask {
    Mask::from_indices((0..space.edge_count()).filter(|_| rng.gen::<bool>()))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Perm::from_images(&images).expect("shuffled identity")
}

/// Neighbourhood enumeration against a scan of all graphs, for every
/// `(G, phi)`.
pub fn check_lemma_2_3(n: usize, r: usize, caps: &Caps) -> Result<LemmaReport> {
    let space = small_space(n, r, "choosable-pair check")?;
    caps.check_perms(n)?;
    let e = space.edge_count();
    caps.check_work("choosable-pair sweep", factorial(n) << (2 * e))?;
    let eps = all_edge_perms(&space);
    let parts: Vec<Tally> = (0..1u64 << e)
        .into_par_iter()
        .map(|g| {
            let g = Mask::from_u64(g);
            let mut t = Tally::default();
            for ep in &eps {
                t.instances += 1;
                let pairs = choosable_in(&g, ep);
                let mut nb = neighborhood_masks(&g, &pairs);
                nb.sort_unstable();
                let scan: Vec<Mask> = (0..1u64 << e)
                    .map(Mask::from_u64)
                    .filter(|h| arrow_masks(&g, h, ep))
                    .collect();
                if nb != scan || nb.len() != 1 << pairs.len() {
                    t.violation(|| {
                        json!({"graph": hex(&space, &g), "phi": ep.source().to_string(),
                               "enumerated": nb.len(), "scanned": scan.len()})
                    });
                }
            }
            t
        })
        .collect();
    Ok(report(
        LemmaId::ChoosablePairs,
        Sweep::Exhaustive,
        Tally::sum(parts),
        params(&[("n", n.into()), ("r", r.into())]),
        BTreeMap::new(),
    ))
}

/// Maximum of `|C2(psi)|` over involutions equals `f_r(n)` and is attained
/// with at most one fixed point.
pub fn check_lemma_2_4(n_max: usize, r_max: usize, caps: &Caps) -> Result<LemmaReport> {
    caps.check_involutions(n_max)?;
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let invs = involutions(n);
        for r in 1..=r_max.min(n) {
            let space = EdgeSpace::new(n, r)?;
            let best = invs
                .par_iter()
                .map(|psi| {
                    let ep = EdgePerm::induce(&space, psi).expect("same n");
                    (
                        cycle_partition_of(&ep).c2.len() as u64,
                        psi.fixed_points().len(),
                    )
                })
                .reduce(
                    || (0, usize::MAX),
                    |a, b| {
                        if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                            b
                        } else {
                            a
                        }
                    },
                );
            let f = f_r(n, r)?;
            t.instances += 1;
            if best.0 != f || best.1 > 1 {
                t.violation(|| json!({"n": n, "r": r, "formula": f, "max_c2": best.0, "fixed_points": best.1}));
            }
            rows.push(
                json!({"n": n, "r": r, "f": f, "max_c2": best.0, "fixed_points_at_max": best.1}),
            );
        }
    }
    let notes = params(&[("table", Value::Array(rows))]);
    Ok(report(
        LemmaId::MaxTwoCycles,
        Sweep::Exhaustive,
        t,
        params(&[("n_max", n_max.into()), ("r_max", r_max.into())]),
        notes,
    ))
}

/// For every involution, arrow agrees with the structural key and is
/// reflexive and symmetric; classes of the key are then closed under it.
pub fn check_lemma_2_6(n: usize, r: usize, caps: &Caps) -> Result<LemmaReport> {
    let space = small_space(n, r, "involution-relation check")?;
    caps.check_involutions(n)?;
    let e = space.edge_count();
    let invs = involutions(n);
    caps.check_work("involution-relation sweep", (invs.len() as u128) << (2 * e))?;
    let parts: Vec<Tally> = invs
        .par_iter()
        .map(|psi| {
            let ep = EdgePerm::induce(&space, psi).expect("same n");
            let graphs: Vec<Mask> = (0..1u64 << e).map(Mask::from_u64).collect();
            let keys: Vec<(Mask, Mask)> = graphs
                .iter()
                .map(|g| {
                    let img = ep.apply_mask(g);
                    (g.and(&img), g.or(&img))
                })
                .collect();
            let mut t = Tally::default();
            for (i, g) in graphs.iter().enumerate() {
                for (j, h) in graphs.iter().enumerate() {
                    t.instances += 1;
                    let a = arrow_masks(g, h, &ep);
                    let bad = a != (keys[i] == keys[j]) || a != arrow_masks(h, g, &ep) || (i == j && !a);
                    if bad {
                        t.violation(|| json!({"psi": psi.to_string(), "g": hex(&space, g), "h": hex(&space, h)}));
                    }
                }
            }
            t
        })
        .collect();
    Ok(report(
        LemmaId::InvolutionRelation,
        Sweep::Exhaustive,
        Tally::sum(parts),
        params(&[
            ("n", n.into()),
            ("r", r.into()),
            ("involutions", invs.len().into()),
        ]),
        BTreeMap::new(),
    ))
}

fn sample_triple(rng: &mut ChaCha8Rng, space: &EdgeSpace, invs: &[Perm]) -> (Mask, Perm, Perm) {
    let n = space.n();
    let g = random_graph(rng, space);
    // half the draws use an involution for psi, and a quarter reuse it as phi
    let psi = if rng.gen::<bool>() {
        invs[rng.gen_range(0..invs.len())].clone()
    } else {
        random_perm(rng, n)
    };
    let phi = if rng.gen_range(0..4) == 0 {
        psi.clone()
    } else {
        random_perm(rng, n)
    };
    (g, phi, psi)
}

fn sampled_params(n: usize, r: usize, caps: &Caps) -> Result<(EdgeSpace, Vec<Perm>)> {
    let space = EdgeSpace::new(n, r)?;
    caps.check_involutions(n)?;
    Ok((space, involutions(n)))
}

fn good_pair_instance(
    t: &mut Tally,
    space: &EdgeSpace,
    g: &Mask,
    phi: &EdgePerm,
    psi: &EdgePerm,
    nb: &[Mask],
    m: usize,
) {
    let pairs = choosable_in(g, phi);
    let mg = good_in(&pairs, psi).len();
    let e = e_psi_masks(nb, psi);
    let bound = lemma32_bound(m as u32, mg as u32);
    t.instances += 1;
    let ratio = e as f64 / bound;
    t.ratio(ratio);
    let data = || {
        json!({"graph": hex(space, g), "phi": phi.source().to_string(), "psi": psi.source().to_string(),
               "m": m, "m_g": mg, "e_psi": e, "bound": bound})
    };
    if e as f64 > bound {
        t.violation(data);
    } else if ratio == 1.0 {
        t.tight(data);
    }
}

/// `e_psi(N_phi(G)) <= 4^m_g * 3.9^(m - m_g)`.
pub fn check_lemma_3_2(n: usize, r: usize, sweep: Sweep, caps: &Caps) -> Result<LemmaReport> {
    let space = small_space(n, r, "good-pair bound check")?;
    let e = space.edge_count();
    caps.check_enum("neighbourhood", 1u128 << (e / 2))?;
    let tally = match sweep {
        Sweep::Exhaustive => {
            caps.check_perms(n)?;
            caps.check_work("good-pair sweep", (factorial(n) * factorial(n)) << e)?;
            let eps = all_edge_perms(&space);
            let parts: Vec<Tally> = (0..1u64 << e)
                .into_par_iter()
                .map(|g| {
                    let g = Mask::from_u64(g);
                    let mut t = Tally::default();
                    for phi in &eps {
                        let pairs = choosable_in(&g, phi);
                        let nb = neighborhood_masks(&g, &pairs);
                        for psi in &eps {
                            good_pair_instance(&mut t, &space, &g, phi, psi, &nb, pairs.len());
                        }
                    }
                    t
                })
                .collect();
            Tally::sum(parts)
        }
        Sweep::Sampled { samples, seed } => {
            let (space, invs) = sampled_params(n, r, caps)?;
            let parts: Vec<Tally> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = instance_rng(seed, i);
                    let (g, phi, psi) = sample_triple(&mut rng, &space, &invs);
                    let phi = EdgePerm::induce(&space, &phi).expect("same n");
                    let psi = EdgePerm::induce(&space, &psi).expect("same n");
                    let pairs = choosable_in(&g, &phi);
                    let nb = neighborhood_masks(&g, &pairs);
                    let mut t = Tally::default();
                    good_pair_instance(&mut t, &space, &g, &phi, &psi, &nb, pairs.len());
                    t
                })
                .collect();
            Tally::sum(parts)
        }
    };
    Ok(report(
        LemmaId::GoodPairCount,
        sweep,
        tally,
        params(&[("n", n.into()), ("r", r.into())]),
        BTreeMap::new(),
    ))
}

/// Number of 2-cycles of `psi` that are not 2-cycles of `phi`.
fn unshared_two_cycles(phi: &Perm, psi: &Perm) -> usize {
    psi.two_cycles()
        .into_iter()
        .filter(|&(x, y)| phi.apply(x) != y || phi.apply(y) != x)
        .count()
}

fn half_two_cycle_instance(
    t: &mut Tally,
    space: &EdgeSpace,
    g: &Mask,
    pairs_good: usize,
    t_unshared: usize,
    phi: &Perm,
    psi: &Perm,
) {
    let c = space.edge_count() as i64;
    let ct = if t_unshared >= space.r() {
        binom(t_unshared, space.r()) as i64
    } else {
        0
    };
    // m_g <= C(n,r)/2 - C(t,r), doubled to stay in integers
    let lhs = 2 * pairs_good as i64;
    let rhs = c - 2 * ct;
    t.instances += 1;
    if rhs > 0 {
        t.ratio(lhs as f64 / rhs as f64);
    }
    if lhs > rhs {
        t.violation(|| {
            json!({"graph": hex(space, g), "phi": phi.to_string(), "psi": psi.to_string(),
                   "m_g": pairs_good, "t": t_unshared})
        });
    }
}

/// `m_g <= C(n,r)/2 - C(t,r)` with `t` the 2-cycles of `psi` not in `phi`.
pub fn check_lemma_3_4(n: usize, r: usize, sweep: Sweep, caps: &Caps) -> Result<LemmaReport> {
    let space = small_space(n, r, "half-two-cycle check")?;
    let e = space.edge_count();
    let tally = match sweep {
        Sweep::Exhaustive => {
            caps.check_perms(n)?;
            caps.check_work("half-two-cycle sweep", (factorial(n) * factorial(n)) << e)?;
            let eps = all_edge_perms(&space);
            let unshared: Vec<Vec<usize>> = eps
                .iter()
                .map(|phi| {
                    eps.iter()
                        .map(|psi| unshared_two_cycles(phi.source(), psi.source()))
                        .collect()
                })
                .collect();
            let parts: Vec<Tally> = (0..1u64 << e)
                .into_par_iter()
                .map(|g| {
                    let g = Mask::from_u64(g);
                    let mut t = Tally::default();
                    for (a, phi) in eps.iter().enumerate() {
                        let pairs = choosable_in(&g, phi);
                        for (b, psi) in eps.iter().enumerate() {
                            let mg = good_in(&pairs, psi).len();
                            half_two_cycle_instance(
                                &mut t,
                                &space,
                                &g,
                                mg,
                                unshared[a][b],
                                phi.source(),
                                psi.source(),
                            );
                        }
                    }
                    t
                })
                .collect();
            Tally::sum(parts)
        }
        Sweep::Sampled { samples, seed } => {
            let (space, invs) = sampled_params(n, r, caps)?;
            let parts: Vec<Tally> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = instance_rng(seed, i);
                    let (g, phi, psi) = sample_triple(&mut rng, &space, &invs);
                    let ep_phi = EdgePerm::induce(&space, &phi).expect("same n");
                    let ep_psi = EdgePerm::induce(&space, &psi).expect("same n");
                    let mg = good_in(&choosable_in(&g, &ep_phi), &ep_psi).len();
                    let mut t = Tally::default();
                    half_two_cycle_instance(
                        &mut t,
                        &space,
                        &g,
                        mg,
                        unshared_two_cycles(&phi, &psi),
                        &phi,
                        &psi,
                    );
                    t
                })
                .collect();
            Tally::sum(parts)
        }
    };
    Ok(report(
        LemmaId::HalfTwoCycles,
        sweep,
        tally,
        params(&[("n", n.into()), ("r", r.into())]),
        BTreeMap::new(),
    ))
}

/// For every `phi0` in `S_n` and integer `0 <= A <= n/2`, at most `n^(2A)`
/// permutations share at least `n/2 - A` 2-cycles with `phi0`. Runs every
/// `n` from 1 to `n_max`.
pub fn check_lemma_3_7(n_max: usize, caps: &Caps) -> Result<LemmaReport> {
    caps.check_perms(n_max)?;
    let mut total = Tally::default();
    for n in 1..=n_max {
        // 2-cycles as bitmasks over the pairs {x, y}
        let pair_bit = |x: usize, y: usize| 1u64 << ((y - 1) * (y - 2) / 2 + (x - 1));
        let perms: Vec<Perm> = all_perms(n).collect();
        let cyc: Vec<u64> = perms
            .iter()
            .map(|p| {
                p.two_cycles()
                    .into_iter()
                    .fold(0, |acc, (x, y)| acc | pair_bit(x, y))
            })
            .collect();
        let parts: Vec<Tally> = (0..perms.len())
            .into_par_iter()
            .map(|i0| {
                let mut hist = vec![0u128; n / 2 + 1];
                for &c in &cyc {
                    hist[(c & cyc[i0]).count_ones() as usize] += 1;
                }
                let mut t = Tally::default();
                for a in 0..=n / 2 {
                    // shared >= n/2 - A, doubled
                    let need = n as i64 - 2 * a as i64;
                    let count: u128 = hist.iter().enumerate().filter(|(s, _)| 2 * *s as i64 >= need).map(|(_, c)| c).sum();
                    let bound = (n as u128).pow(2 * a as u32);
                    t.instances += 1;
                    t.ratio(count as f64 / bound as f64);
                    if count > bound {
                        t.violation(|| json!({"n": n, "phi0": perms[i0].to_string(), "A": a, "count": count.to_string()}));
                    }
                }
                t
            })
            .collect();
        total = total.merge(Tally::sum(parts));
    }
    Ok(report(
        LemmaId::ClosePermutations,
        Sweep::Exhaustive,
        total,
        params(&[("n_max", n_max.into())]),
        BTreeMap::new(),
    ))
}

fn edge_two_cycles(ep: &EdgePerm) -> usize {
    let table = ep.table();
    table
        .iter()
        .enumerate()
        .filter(|&(e, &f)| (f as usize) > e && table[f as usize] as usize == e)
        .count()
}

/// Report-only: permutations whose induced edge permutation has at least
/// `C(n,r)/2 - delta` 2-cycles, and how many 2-cycles they have themselves
/// against the `n/2 - r delta^(1/r)` benchmark.
pub fn check_lemma_3_3(
    n: usize,
    r: usize,
    delta: f64,
    sweep: Sweep,
    caps: &Caps,
) -> Result<LemmaReport> {
    if !(delta >= 1.0 && delta.is_finite()) {
        return Err(Error::invalid(format!(
            "delta must be at least 1, got {delta}"
        )));
    }
    let space = EdgeSpace::new(n, r)?;
    let half = space.edge_count() as f64 / 2.0;
    let benchmark = n as f64 / 2.0 - r as f64 * delta.powf(1.0 / r as f64);
    let examine = |psi: &Perm| -> (Tally, Option<f64>, u64) {
        let ep = EdgePerm::induce(&space, psi).expect("same n");
        let mut t = Tally::default();
        if (edge_two_cycles(&ep) as f64) < half - delta {
            return (t, None, 1);
        }
        t.instances += 1;
        let own = psi.two_cycles().len() as f64;
        if own < benchmark {
            t.violation(|| json!({"psi": psi.to_string(), "two_cycles": own, "edge_two_cycles": edge_two_cycles(&ep)}));
        }
        (t, Some(own - benchmark), 0)
    };
    let parts: Vec<(Tally, Option<f64>, u64)> = match sweep {
        Sweep::Exhaustive => {
            caps.check_perms(n)?;
            let perms: Vec<Perm> = all_perms(n).collect();
            perms.par_iter().map(examine).collect()
        }
        Sweep::Sampled { samples, seed } => (0..samples)
            .into_par_iter()
            .map(|i| examine(&random_perm(&mut instance_rng(seed, i), n)))
            .collect(),
    };
    let mut margin: Option<f64> = None;
    let mut skipped = 0u64;
    let mut tallies = Vec::with_capacity(parts.len());
    for (t, m, s) in parts {
        if let Some(m) = m {
            margin = Some(margin.map_or(m, |x| x.min(m)));
        }
        skipped += s;
        tallies.push(t);
    }
    let mut notes = params(&[
        ("hypothesis_failed", skipped.into()),
        ("benchmark_two_cycles", benchmark.into()),
    ]);
    if let Some(m) = margin {
        notes.insert("min_margin".into(), m.into());
    }
    Ok(report(
        LemmaId::EdgeTwoCycles,
        sweep,
        Tally::sum(tallies),
        params(&[("n", n.into()), ("r", r.into()), ("delta", delta.into())]),
        notes,
    ))
}

/// The closed-form count of fixed edges against a direct count, for every
/// involution of `S_n`, `n <= n_max`, `r <= r_max`.
pub fn check_eq_2(n_max: usize, r_max: usize, caps: &Caps) -> Result<LemmaReport> {
    caps.check_involutions(n_max)?;
    let mut t = Tally::default();
    for n in 1..=n_max {
        let invs = involutions(n);
        for r in 1..=r_max.min(n) {
            let space = EdgeSpace::new(n, r)?;
            for psi in &invs {
                let ep = EdgePerm::induce(&space, psi)?;
                let direct = cycle_partition_of(&ep).c1.len() as u64;
                let b = psi.two_cycles().len();
                let formula = c1_size_formula(n - 2 * b, b, r);
                t.instances += 1;
                if direct != formula {
                    t.violation(|| json!({"n": n, "r": r, "psi": psi.to_string(), "direct": direct, "formula": formula}));
                }
            }
        }
    }
    Ok(report(
        LemmaId::FixedEdgeCount,
        Sweep::Exhaustive,
        t,
        params(&[("n_max", n_max.into()), ("r_max", r_max.into())]),
        BTreeMap::new(),
    ))
}

/// The extremal family is a `psi`-clique of size `2^f_r(n)`, and no
/// involution clique exceeds that size. Exhaustive mode groups all graphs
/// into classes of every involution; sampled mode enumerates the class of
/// random `(G, psi)`.
pub fn check_prop_2_7(n: usize, r: usize, sweep: Sweep, caps: &Caps) -> Result<LemmaReport> {
    let f = f_r(n, r)?;
    let cap = 1u128 << f;
    let (family, psi) = extremal_family(n, r, caps)?;
    let space = family.space().clone();
    let mut t = Tally::default();
    let mut notes = BTreeMap::new();

    t.instances += 1;
    let size_ok = family.len() as u128 == cap;
    let clique_ok = is_psi_clique(&family, &psi)?;
    let members = family.members();
    let pairwise = if (members.len() as u128).pow(2) <= caps.enum_limit() {
        let ep = EdgePerm::induce(&space, &psi)?;
        let ok = members
            .par_iter()
            .all(|a| members.iter().all(|b| arrow_masks(a, b, &ep)));
        notes.insert(
            "pairwise_arrows_checked".into(),
            json!((members.len() as u64).pow(2)),
        );
        ok
    } else {
        true
    };
    if !(size_ok && clique_ok && pairwise) {
        t.violation(|| json!({"extremal_size": family.len(), "psi_clique": clique_ok, "pairwise": pairwise}));
    }
    if n <= caps.involution_max_n {
        t.instances += 1;
        match find_involution_clique(&family, caps)? {
            Some(found) => {
                notes.insert("detected_involution".into(), found.to_string().into());
            }
            None => t.violation(|| json!({"detected_involution": null})),
        }
    }

    let e = space.edge_count();
    let class_tally = match sweep {
        Sweep::Exhaustive => {
            if e > 30 {
                return Err(Error::capacity(format!(
                    "grouping all 2^{e} graphs is beyond exhaustive scale"
                )));
            }
            caps.check_involutions(n)?;
            let invs = involutions(n);
            caps.check_work("clique-size sweep", (invs.len() as u128) << e)?;
            let parts: Vec<Tally> = invs
                .par_iter()
                .map(|psi| {
                    let ep = EdgePerm::induce(&space, psi).expect("same n");
                    let mut classes: HashMap<(Mask, Mask), u128> = HashMap::new();
                    for g in 0..1u64 << e {
                        let g = Mask::from_u64(g);
                        let img = ep.apply_mask(&g);
                        *classes.entry((g.and(&img), g.or(&img))).or_default() += 1;
                    }
                    let mut t = Tally::default();
                    let mut sizes: Vec<u128> = classes.into_values().collect();
                    sizes.sort_unstable();
                    for s in sizes {
                        t.instances += 1;
                        t.ratio(s as f64 / cap as f64);
                        if s > cap {
                            t.violation(
                                || json!({"psi": psi.to_string(), "class_size": s.to_string()}),
                            );
                        }
                    }
                    t
                })
                .collect();
            Tally::sum(parts)
        }
        Sweep::Sampled { samples, seed } => {
            caps.check_involutions(n)?;
            let invs = involutions(n);
            let parts: Vec<Tally> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = instance_rng(seed, i);
                    let g = random_graph(&mut rng, &space);
                    let psi = &invs[rng.gen_range(0..invs.len())];
                    let ep = EdgePerm::induce(&space, psi).expect("same n");
                    let cp = cycle_partition_of(&ep);
                    let free: Vec<(usize, usize)> =
                        cp.c2.into_iter().filter(|&(a, b)| g.get(a) != g.get(b)).collect();
                    let mut t = Tally::default();
                    t.instances += 1;
                    let size = 1u128 << free.len();
                    t.ratio(size as f64 / cap as f64);
                    // spot-check the class: flipping any subset of free pairs stays inside it
                    let key = |m: &Mask| {
                        let img = ep.apply_mask(m);
                        (m.and(&img), m.or(&img))
                    };
                    let mut flipped = g;
                    for &(a, b) in &free {
                        if rng.gen::<bool>() {
                            flipped.toggle(a);
                            flipped.toggle(b);
                        }
                    }
                    if size > cap || key(&flipped) != key(&g) {
                        t.violation(|| json!({"graph": hex(&space, &g), "psi": psi.to_string(), "free_pairs": free.len()}));
                    }
                    t
                })
                .collect();
            Tally::sum(parts)
        }
    };
    Ok(report(
        LemmaId::CliqueSize,
        sweep,
        t.merge(class_tally),
        params(&[("n", n.into()), ("r", r.into()), ("f", f.into())]),
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn choosable_pairs_four_two() {
        let rep = check_lemma_2_3(4, 2, &caps()).unwrap();
        assert_eq!(rep.instances_checked, 1536);
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn max_two_cycles() {
        let rep = check_lemma_2_4(6, 3, &caps()).unwrap();
        assert_eq!(rep.violations, 0);
        let table = rep.notes["table"].as_array().unwrap();
        let row = table.iter().find(|r| r["n"] == 5 && r["r"] == 2).unwrap();
        assert_eq!(row["max_c2"], 4);
        let row = table.iter().find(|r| r["n"] == 6 && r["r"] == 3).unwrap();
        assert_eq!(row["max_c2"], 10);
    }

    #[test]
    fn involution_relation() {
        let rep = check_lemma_2_6(4, 2, &caps()).unwrap();
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.instances_checked, 10 * 64 * 64);
    }

    #[test]
    fn good_pair_bound_sampled_is_reproducible() {
        let sweep = Sweep::Sampled {
            samples: 2000,
            seed: 42,
        };
        let a = check_lemma_3_2(5, 2, sweep, &caps()).unwrap();
        let b = check_lemma_3_2(5, 2, sweep, &caps()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
        assert!(a.worst_ratio.unwrap() <= 1.0);
        assert_eq!(a.parameters["rng"], super::super::RNG_NAME);
    }

    #[test]
    fn half_two_cycles_small() {
        assert_eq!(
            check_lemma_3_4(4, 2, Sweep::Exhaustive, &caps())
                .unwrap()
                .violations,
            0
        );
        let s = check_lemma_3_4(
            6,
            2,
            Sweep::Sampled {
                samples: 3000,
                seed: 1,
            },
            &caps(),
        )
        .unwrap();
        assert_eq!(s.violations, 0);
    }

    #[test]
    fn close_permutations() {
        let rep = check_lemma_3_7(5, &caps()).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.worst_ratio.unwrap() <= 1.0);
    }

    #[test]
    fn close_permutations_small_case_is_tight() {
        // phi0 = (1 2)(3 4), A = 0: only phi0 itself qualifies
        let perms: Vec<Perm> = all_perms(4).collect();
        let phi0 = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        let count = perms
            .iter()
            .filter(|p| crate::relation::shared_two_cycles(p, &phi0) >= 2)
            .count();
        assert_eq!(count, 1);
    }

    #[test]
    fn edge_two_cycles_report() {
        let rep = check_lemma_3_3(6, 2, 4.0, Sweep::Exhaustive, &caps()).unwrap();
        assert_eq!(rep.mode, super::super::Mode::ReportOnly);
        assert!(rep.passed());
        assert!(rep.notes.contains_key("hypothesis_failed"));
        assert!(check_lemma_3_3(6, 2, 0.5, Sweep::Exhaustive, &caps()).is_err());
    }

    #[test]
    fn fixed_edge_count() {
        let rep = check_eq_2(8, 4, &caps()).unwrap();
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn clique_size() {
        for (n, r) in [(4, 2), (3, 2), (5, 2)] {
            let rep = check_prop_2_7(n, r, Sweep::Exhaustive, &caps()).unwrap();
            assert_eq!(rep.violations, 0, "n={n} r={r}");
            assert!(rep.worst_ratio.unwrap() <= 1.0);
        }
        let rep = check_prop_2_7(
            6,
            2,
            Sweep::Sampled {
                samples: 500,
                seed: 3,
            },
            &caps(),
        )
        .unwrap();
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.notes["pairwise_arrows_checked"], 4096);
    }
}
