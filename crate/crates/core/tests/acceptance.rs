//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use primcover_core::actions::ratio_string;
use primcover_core::covers::{
    branch_lower_bound, genus_criterion_holds, genus_from_action, genus_lower_bound, sample_tuple,
    verify_bg, verify_lemma_fpr, verify_lemma_ind,
};
use primcover_core::lattice::{alternating_lattice, symmetric_lattice, Lattice};
use primcover_core::{
    coset_action, genus_natural_oracle, genus_subcover, is_maximal, maximal_transitive_subgroups,
    omega_ell_action, table1, GroupAction, MaximalMode, PermGroup, Permutation, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

/// `(max fpr, min ind)` over all nontrivial `reps` on `G/H`, by counting.
fn oracle_extremes(group: &PermGroup, h: &PermGroup, reps: &[Permutation]) -> (Rational, usize) {
    let els = elements(group);
    let hs = closure(h.degree(), h.generators());
    let mut max_fpr = r(0, 1);
    let mut min_ind = usize::MAX;
    for g in reps.iter().filter(|g| !g.is_identity()) {
        let (_, fpr, ind) = coset_stats(&els, &hs, g);
        max_fpr = max_fpr.max(fpr);
        min_ind = min_ind.min(ind);
    }
    (max_fpr, min_ind)
}

fn criterion_1() -> Outcome {
    let rows = table1(&[5, 6, 7]).map_err(|e| e.to_string())?;
    let expected: BTreeMap<usize, BTreeSet<(u64, u64, usize, Rational)>> = [
        (5, vec![(10, 12, 4, r(1, 3)), (20, 6, 2, r(1, 3))]),
        (
            6,
            vec![
                (24, 30, 12, r(2, 5)),
                (36, 20, 8, r(2, 5)),
                (60, 12, 4, r(1, 3)),
                (48, 15, 4, r(4, 15)),
                (72, 10, 3, r(3, 10)),
                (120, 6, 1, r(1, 6)),
            ],
        ),
        (7, vec![(42, 120, 56, r(7, 15)), (168, 30, 12, r(2, 5))]),
    ]
    .into_iter()
    .map(|(n, v)| (n, v.into_iter().collect()))
    .collect();
    ensure!(rows.len() == 10, "expected 10 rows, got {}", rows.len());
    let mut got: BTreeMap<usize, BTreeSet<(u64, u64, usize, Rational)>> = BTreeMap::new();
    for row in &rows {
        got.entry(row.n)
            .or_default()
            .insert((row.order, row.index, row.min_index, row.rho));
    }
    ensure!(got == expected, "rows differ: {got:?}");

    // last column positive and equal to the printed margins
    let margins: BTreeMap<(usize, u64), Rational> = [
        ((5, 10), r(5, 33)),
        ((5, 20), r(5, 33)),
        ((6, 24), r(16, 65)),
        ((6, 36), r(16, 65)),
        ((6, 60), r(7, 39)),
        ((6, 48), r(22, 195)),
        ((6, 72), r(19, 130)),
        ((6, 120), r(1, 78)),
        ((7, 42), r(1, 3)),
        ((7, 168), r(4, 15)),
    ]
    .into_iter()
    .collect();
    for row in &rows {
        ensure!(row.margin > r(0, 1), "nonpositive margin in {row:?}");
        ensure!(
            row.margin == margins[&(row.n, row.order)],
            "margin of {row:?}"
        );
        ensure!(
            row.rho - r(2, 2 * row.n as i64 + 1) == row.margin,
            "margin arithmetic"
        );
    }

    // ind recomputed by counting over all nontrivial cycle types
    for n in [5, 6, 7] {
        let sn = PermGroup::symmetric(n);
        let reps = cycle_type_reps(n);
        for mode in [MaximalMode::InAn, MaximalMode::InSnNotAn] {
            for c in maximal_transitive_subgroups(n, mode).map_err(|e| e.to_string())? {
                let (_, min_ind) = oracle_extremes(&sn, &c.representative, &reps);
                let row = rows
                    .iter()
                    .find(|x| x.n == n && x.order == c.order)
                    .unwrap();
                ensure!(min_ind == row.min_index, "oracle ind {min_ind} for {row:?}");
            }
        }
    }
    Ok("10 rows, exact (order, index, ind, rho); margins positive and equal to the table; ind matches counting oracle".into())
}

fn criterion_2() -> Outcome {
    let sn = PermGroup::symmetric(6);
    let reps = cycle_type_reps(6);
    let mut maxima = Vec::new();
    for c in maximal_transitive_subgroups(6, MaximalMode::InSnNotAn).map_err(|e| e.to_string())? {
        let action = coset_action(&sn, &c.representative).map_err(|e| e.to_string())?;
        let max = action.max_fpr().map_err(|e| e.to_string())?.value;
        let (oracle, _) = oracle_extremes(&sn, &c.representative, &reps);
        ensure!(max == oracle, "order {}: {max} vs oracle {oracle}", c.order);
        maxima.push((c.order, max));
    }
    maxima.sort();
    let expected = vec![(48, r(7, 15)), (72, r(2, 5)), (120, r(2, 3))];
    ensure!(maxima == expected, "got {maxima:?}");
    Ok("max fpr on S_6/H for |H| = 48, 72, 120 is 7/15, 2/5, 2/3".into())
}

struct Family {
    case: &'static str,
    group: PermGroup,
    reps: Vec<Permutation>,
    fpr_bound: Rational,
    ind_divisor: i64,
    subgroups: Vec<PermGroup>,
}

fn families(n: usize) -> Vec<Family> {
    let an_classes: Vec<PermGroup> = maximal_transitive_subgroups(n, MaximalMode::InAn)
        .unwrap()
        .into_iter()
        .map(|c| c.representative)
        .collect();
    let sn_classes: Vec<PermGroup> = maximal_transitive_subgroups(n, MaximalMode::InSnNotAn)
        .unwrap()
        .into_iter()
        .map(|c| c.representative)
        .collect();
    vec![
        Family {
            case: "I",
            group: PermGroup::alternating(n),
            reps: even_class_reps(n),
            fpr_bound: r(1, 2),
            ind_divisor: 4,
            subgroups: an_classes.clone(),
        },
        Family {
            case: "II",
            group: PermGroup::symmetric(n),
            reps: cycle_type_reps(n),
            fpr_bound: r(2, 3),
            ind_divisor: 6,
            subgroups: sn_classes,
        },
        Family {
            case: "III",
            group: PermGroup::symmetric(n),
            reps: cycle_type_reps(n),
            fpr_bound: r(3, 4),
            ind_divisor: 8,
            subgroups: an_classes,
        },
    ]
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in [5, 6, 7] {
        let report = verify_lemma_fpr(n).map_err(|e| e.to_string())?;
        ensure!(report.pass, "verify_lemma_fpr({n}) failed");
        for f in families(n) {
            for h in &f.subgroups {
                let (oracle, _) = oracle_extremes(&f.group, h, &f.reps);
                ensure!(
                    oracle <= f.fpr_bound,
                    "n={n} case {}: |H|={} fpr {oracle}",
                    f.case,
                    h.order()
                );
                let lib = coset_action(&f.group, h).unwrap().max_fpr().unwrap().value;
                ensure!(
                    lib == oracle,
                    "n={n} case {}: library {lib} vs oracle {oracle}",
                    f.case
                );
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} (n, case, H) instances within 1/2, 2/3, 3/4 over every nontrivial class"
    ))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for n in [5, 6, 7] {
        let report = verify_lemma_ind(n).map_err(|e| e.to_string())?;
        ensure!(report.pass, "verify_lemma_ind({n}) failed");
        for f in families(n) {
            for h in &f.subgroups {
                let (_, oracle) = oracle_extremes(&f.group, h, &f.reps);
                let index = (f.group.order() / h.order()) as i64;
                ensure!(
                    Rational::from_integer(oracle as i64) >= r(index, f.ind_divisor),
                    "n={n} case {}: ind {oracle} < {index}/{}",
                    f.case,
                    f.ind_divisor
                );
                let lib = coset_action(&f.group, h)
                    .unwrap()
                    .min_index()
                    .unwrap()
                    .value;
                ensure!(
                    lib == oracle,
                    "n={n} case {}: library {lib} vs oracle {oracle}",
                    f.case
                );
                count += 1;
            }
        }
    }
    ensure!(
        coset_action(
            &PermGroup::symmetric(7),
            &maximal_transitive_subgroups(7, MaximalMode::InAn).unwrap()[0].representative
        )
        .unwrap()
        .min_index()
        .unwrap()
        .value
            == 12,
        "min_index(S_7/PSL(2,7)) != 12"
    );
    Ok(format!(
        "{count} (n, case, H) instances meet [G:H]/4, /6, /8 over every nontrivial class"
    ))
}

fn test_groups() -> Vec<PermGroup> {
    let mut v = Vec::new();
    for n in 3..=7 {
        v.push(PermGroup::symmetric(n));
        v.push(PermGroup::alternating(n));
        v.push(PermGroup::dihedral(n));
        v.push(PermGroup::cyclic(n));
    }
    v.push(PermGroup::from_cycle_strings(5, &["(1,2,3,4,5)", "(2,3,5,4)"]).unwrap());
    v.push(PermGroup::from_cycle_strings(7, &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"]).unwrap());
    v.push(
        PermGroup::from_cycle_strings(6, &["(1,2)", "(3,4)", "(5,6)", "(1,3,5)(2,4,6)"]).unwrap(),
    );
    v.push(PermGroup::from_cycle_strings(6, &["(1,2)(3,4)", "(1,2,3)(4,5,6)"]).unwrap());
    v
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6_1);
    let groups = test_groups();
    let mut cache: HashMap<(usize, Vec<Permutation>), (GroupAction, Subgroup)> = HashMap::new();
    let mut samples = 0;
    let mut oracle_checked = 0;
    while samples < 1200 {
        let gi = rng.gen_range(0..groups.len());
        let g = &groups[gi];
        assert!(g.order() <= 5040);
        let k = rng.gen_range(1..=2);
        let mut gens: Vec<Permutation> = (0..k).map(|_| g.random_element(&mut rng)).collect();
        gens.sort();
        let key = (gi, gens.clone());
        let (action, hs) = cache.entry(key).or_insert_with(|| {
            let h = PermGroup::from_generators(gens.clone()).unwrap();
            (coset_action(g, &h).unwrap(), closure(g.degree(), &gens))
        });
        let x = g.random_element(&mut rng);
        let rep = action.element_report(&x).map_err(|e| e.to_string())?;
        let m = rep.size as i64;
        let lhs = Rational::from_integer(rep.ind as i64);
        let rhs = Rational::from_integer(m) / 2 * (Rational::from_integer(1) - rep.fpr);
        ensure!(
            lhs >= rhs,
            "violation: G #{gi}, x = {x}, ind {} < {rhs}",
            rep.ind
        );
        if samples % 10 == 0 {
            let (fix, fpr, ind) = coset_stats(&elements(g), hs, &x);
            ensure!(
                (fix, fpr, ind) == (rep.fixed_points, rep.fpr, rep.ind),
                "oracle mismatch at G #{gi}, x = {x}"
            );
            oracle_checked += 1;
        }
        samples += 1;
    }
    Ok(format!(
        "{samples} samples over {} (G, H) pairs, zero violations; {oracle_checked} cross-checked by counting",
        cache.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut maximal = 0;
    for n in [4, 5] {
        let g = PermGroup::symmetric(n);
        let lattice = Lattice::build(&g).map_err(|e| e.to_string())?;
        let els = elements(&g);
        let subs = all_subgroups_2gen(&els);
        for (i, c) in lattice.classes().iter().enumerate() {
            if c.order == g.order() {
                continue;
            }
            let prim = is_maximal(&g, &c.representative).map_err(|e| e.to_string())?;
            let interval = lattice.interval_maximal(i);
            let hs = closure(n, c.representative.generators());
            let brute = !subs
                .iter()
                .any(|k| k.len() > hs.len() && k.len() < els.len() && hs.is_subset(k));
            ensure!(
                prim == interval && interval == brute,
                "S_{n} class |H|={}: primitive {prim}, interval {interval}, brute {brute}",
                c.order
            );
            checked += 1;
            maximal += prim as usize;
        }
    }
    Ok(format!(
        "{checked} proper classes of S_4 and S_5 agree ({maximal} maximal)"
    ))
}

fn transitive_groups_upto_6() -> Vec<PermGroup> {
    test_groups()
        .into_iter()
        .filter(|g| g.degree() <= 6 && g.is_transitive())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    let groups = transitive_groups_upto_6();
    let mut checked = 0;
    let mut genera = BTreeSet::new();
    while checked < 240 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let r = rng.gen_range(3..=7);
        let t = sample_tuple(g, r, &mut rng).map_err(|e| e.to_string())?;
        let stab = g.point_stabilizer(0);
        let via_cosets = genus_subcover(&t, &stab).map_err(|e| e.to_string())?.genus;
        let direct = genus_natural_oracle(&t).map_err(|e| e.to_string())?;
        ensure!(
            via_cosets == direct,
            "tuple {:?}: {via_cosets} vs {direct}",
            t.branches()
        );
        genera.insert(direct);
        checked += 1;
    }
    Ok(format!(
        "{checked} tuples over {} transitive groups of degree <= 6; genera seen {:?}",
        groups.len(),
        genera
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let s5 = PermGroup::symmetric(5);
    let lattice = symmetric_lattice(5).map_err(|e| e.to_string())?;
    let actions: Vec<GroupAction> = lattice
        .classes()
        .iter()
        .map(|c| coset_action(&s5, &c.representative).unwrap())
        .collect();
    let mut tuples = Vec::new();
    let mut values = 0;
    for _ in 0..60 {
        let r = rng.gen_range(3..=8);
        let t = sample_tuple(&s5, r, &mut rng).map_err(|e| e.to_string())?;
        for a in &actions {
            let rep = genus_from_action(&t, a).map_err(|e| format!("{e} on {:?}", t.branches()))?;
            let sum: usize = rep.branch_indices.iter().sum();
            ensure!(
                2 * rep.genus as i64 == 2 - 2 * rep.subgroup_index as i64 + sum as i64,
                "genus formula"
            );
            values += 1;
        }
        tuples.push(t);
    }
    let mut pairs = 0;
    while pairs < 600 {
        let t = &tuples[rng.gen_range(0..tuples.len())];
        let outer = &lattice.classes()[rng.gen_range(0..lattice.classes().len())].representative;
        let k = rng.gen_range(0..=2);
        let inner = if k == 0 {
            PermGroup::trivial(5)
        } else {
            PermGroup::from_generators((0..k).map(|_| outer.random_element(&mut rng)).collect())
                .unwrap()
        };
        ensure!(inner.is_subgroup_of(outer), "sampled pair not nested");
        let g1 = genus_subcover(t, &inner).map_err(|e| e.to_string())?.genus;
        let g2 = genus_subcover(t, outer).map_err(|e| e.to_string())?.genus;
        ensure!(g1 >= g2, "genus {g1} of D_H1 below genus {g2} of D_H2");
        pairs += 1;
    }
    Ok(format!(
        "{} tuples x {} classes = {values} integral genera; {pairs} nested pairs monotone",
        tuples.len(),
        actions.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let mut tuples = 0;
    let mut instances = 0;
    for n in [5usize, 6] {
        for alt in [false, true] {
            let (g, lattice) = if alt {
                (PermGroup::alternating(n), alternating_lattice(n).unwrap())
            } else {
                (PermGroup::symmetric(n), symmetric_lattice(n).unwrap())
            };
            let qualifying: Vec<(Rational, GroupAction)> = lattice
                .classes()
                .iter()
                .filter(|c| c.is_transitive && c.order < g.order())
                .filter_map(|c| {
                    let a = coset_action(&g, &c.representative).unwrap();
                    let rho = Rational::new(a.min_index().unwrap().value as i64, a.size() as i64);
                    genus_criterion_holds(rho, n as u64).then_some((rho, a))
                })
                .collect();
            ensure!(!qualifying.is_empty(), "no qualifying H for n = {n}");
            for _ in 0..30 {
                let r = rng.gen_range(2 * n + 1..=2 * n + 4);
                let t = sample_tuple(&g, r, &mut rng).map_err(|e| e.to_string())?;
                for (rho, a) in &qualifying {
                    let genus = genus_from_action(&t, a).map_err(|e| e.to_string())?.genus as i64;
                    let m = a.size() as i64;
                    let bound = genus_lower_bound(*rho, r as u64, m as u64);
                    // the exact chain exceeds 1, so an integral genus is at least 2
                    let exact = Rational::from_integer(1)
                        + (Rational::from_integer(r as i64) * rho / 2 - 1) * m;
                    ensure!(
                        genus >= 2 && genus >= bound && exact > Rational::from_integer(1),
                        "n={n}, r={r}, rho={}: genus {genus}, bound {bound}",
                        ratio_string(rho)
                    );
                    instances += 1;
                }
                tuples += 1;
            }
        }
    }
    for n in 3..=10u64 {
        let g = (n - 1) * (n - 1) + 1;
        let b = branch_lower_bound(n, g).map_err(|e| e.to_string())?;
        ensure!(b > 2 * n, "branch bound {b} for n = {n}");
    }
    Ok(format!(
        "{tuples} tuples with r >= 2n+1, {instances} (T, H) instances with genus >= 2 and >= the floored bound; branch bound >= 2n+1 for n = 3..10"
    ))
}

fn criterion_10() -> Outcome {
    // Direct count on 2-subsets: (1,2,3) fixes only {4,5}.
    let a5 = PermGroup::alternating(5);
    let omega2 = omega_ell_action(5, 2, &a5).unwrap();
    let g = p("(1,2,3)", 5);
    let direct = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let (x, y) = (g.apply(a), g.apply(b));
            (x.min(y), x.max(y)) == (a, b)
        })
        .count();
    ensure!(direct == 1, "direct count {direct}");
    ensure!(
        omega2.element_report(&g).unwrap().fpr == r(1, 10),
        "omega_2 fpr"
    );

    let mut parts = Vec::new();
    let mut twisted_notes = Vec::new();
    for n in [5, 6, 7] {
        let report = verify_bg(n).map_err(|e| e.to_string())?;
        let failures: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} {} {}", c.subject, c.value, c.bound))
            .collect();
        ensure!(report.pass, "n = {n}: {failures:?}");
        let twisted: Vec<_> = report.case("bg twisted").collect();
        for c in &twisted {
            twisted_notes.push(format!(
                "{}: {} exceeds 1/r (bound {})",
                c.subject,
                c.value,
                c.bound.trim_start_matches("<= ")
            ));
        }
        parts.push(format!("n={n}: {} checks", report.checks.len()));
    }
    let mut detail = parts.join(", ");
    if !twisted_notes.is_empty() {
        detail.push_str(&format!(
            "; literal A_n-set reading fails at {} instance(s), excused only up to an outer automorphism: {}",
            twisted_notes.len(),
            twisted_notes.join("; ")
        ));
    }
    Ok(detail)
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 10] = [
        ("ratio table rows", criterion_1),
        ("n = 6 max fpr values", criterion_2),
        ("fpr bounds 1/2, 2/3, 3/4", criterion_3),
        ("minimal index bounds /4, /6, /8", criterion_4),
        ("ind >= (m/2)(1 - fpr) on random samples", criterion_5),
        ("primitivity <=> maximality on S_4, S_5", criterion_6),
        ("genus via cosets = natural genus", criterion_7),
        ("genus integrality and cover monotonicity", criterion_8),
        ("genus >= 2 criterion and branch bound", criterion_9),
        ("fpr <= 1/r unless a subset action", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
