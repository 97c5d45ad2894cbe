//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if a criterion outside `KNOWN_FAILURES` fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use qgalg::central::{central_averaged_unit, central_averaged_unit_seeded, central_generators, central_eligible, central_rank, is_cut, subnormal_series};
use qgalg::group::{catalog, catalog_names, FiniteGroup};
use qgalg::idempotents::{pci_abelian, pci_strongly_monomial};
use qgalg::ring::{element_order_bruteforce, IntElement, RatElement};
use qgalg::units::{bass_is_torsion, bass_unit, bicyclic_left, jespers_leal_generators, jespers_parmenter_obstruction, marciniak_sehgal_pair, CertifiedUnit, ObstructionStatus};
use qgalg::wedderburn::classify::ComponentKind;
use qgalg::wedderburn::{decomposition_report, hfa, higman_finite_units, perlis_walker, TriState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(5);
const PCI_SUITE_TIME_LIMIT: Duration = Duration::from_secs(120);
const BASS_RANDOM_INSTANCES: usize = 500;
const RNG_SEED: u64 = 20_240_601;

/// Criterion 1 cannot pass as stated: its golden multiset for Q12 contains
/// Q(sqrt(-3)), but Q12/Q12' is C4, so the commutative part of QQ12 is
/// 2Q + Q(i). The implementation reports the latter.
const KNOWN_FAILURES: &[u32] = &[1];

struct Outcome {
    pass: bool,
    detail: String,
}

fn grp(name: &str) -> Arc<FiniteGroup> {
    Arc::new(catalog(name).unwrap_or_else(|e| panic!("{name}: {e}")))
}

fn corpus(max: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    catalog_names()
        .into_iter()
        .map(|n| {
            let g = grp(&n);
            (n, g)
        })
        .filter(|(_, g)| g.order() <= max)
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn mult_order(k: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut t = 1;
    let mut p = k % n;
    while p != 1 {
        p = p * k % n;
        t += 1;
    }
    t
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Cyclic subgroups as sorted member lists, and the number of conjugacy
/// classes they fall into.
fn cyclic_subgroup_classes(g: &FiniteGroup) -> usize {
    let mut subs: Vec<Vec<usize>> = g
        .elements()
        .map(|x| {
            let mut m: Vec<usize> = (0..g.element_order(x)).map(|i| g.pow(x, i as i64)).collect();
            m.sort();
            m
        })
        .collect();
    subs.sort();
    subs.dedup();
    let mut seen = vec![false; subs.len()];
    let mut classes = 0;
    for i in 0..subs.len() {
        if seen[i] {
            continue;
        }
        classes += 1;
        for y in g.elements() {
            let mut c: Vec<usize> = subs[i].iter().map(|&s| g.mul(g.mul(g.inv(y), s), y)).collect();
            c.sort();
            let j = subs.binary_search(&c).expect("conjugate of a cyclic subgroup is cyclic");
            seen[j] = true;
        }
    }
    classes
}

fn multiset(names: &[&str]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for n in names {
        *m.entry(n.to_string()).or_default() += 1;
    }
    m
}

fn criterion_1() -> Outcome {
    let golden: [(&str, Vec<&str>); 5] = [
        ("D6", vec!["Q", "Q", "M2(Q)"]),
        ("D8", vec!["Q", "Q", "Q", "Q", "M2(Q)"]),
        ("Q8", vec!["Q", "Q", "Q", "Q", "H(Q)"]),
        ("P16", vec!["Q", "Q", "Q", "Q", "Q(i)", "Q(i)", "H(Q)", "M2(Q)"]),
        ("Q12", vec!["Q", "Q", "Q(sqrt(-3))", "(-1,-3/Q)", "M2(Q)"]),
    ];
    let mut bad = Vec::new();
    for (name, want) in golden {
        let start = Instant::now();
        let g = grp(name);
        let comps = decomposition_report(&g).expect("decomposition");
        let elapsed = start.elapsed();
        let got: Vec<&str> = comps.iter().map(|c| c.classification.name.as_str()).collect();
        if multiset(&got) != multiset(&want) {
            bad.push(format!("{name}: got {}, want {}", got.join(" + "), want.join(" + ")));
        }
        if elapsed > GOLDEN_TIME_LIMIT {
            bad.push(format!("{name}: {elapsed:?}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "5 golden decompositions match".into() } else { bad.join("; ") },
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, g) in corpus(32) {
        let pci = pci_strongly_monomial(&g).expect("pci");
        if !pci.certified_strongly_monomial {
            continue;
        }
        checked += 1;
        let ids = &pci.idempotents;
        let one = RatElement::one(&g);
        let zero = RatElement::zero(&g);
        let mut sum = zero.clone();
        for (i, e) in ids.iter().enumerate() {
            sum = &sum + e;
            if &(e * e) != e {
                bad.push(format!("{name}: e{i} not idempotent"));
            }
            for x in g.elements() {
                let xe = RatElement::element(&g, x);
                if &xe * e != e * &xe {
                    bad.push(format!("{name}: e{i} not central"));
                    break;
                }
            }
            for f in &ids[i + 1..] {
                if !(e * f).is_zero() {
                    bad.push(format!("{name}: e{i} not orthogonal"));
                }
            }
        }
        if sum != one {
            bad.push(format!("{name}: sum != 1"));
        }
        let d = cyclic_subgroup_classes(&g);
        if ids.len() != d {
            bad.push(format!("{name}: {} idempotents, d = {d}", ids.len()));
        }
        let dims: usize = decomposition_report(&g).expect("decomposition").iter().map(|c| c.descriptor.dimension).sum();
        if dims != g.order() {
            bad.push(format!("{name}: dimensions sum to {dims}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > PCI_SUITE_TIME_LIMIT {
        bad.push(format!("suite took {elapsed:?}"));
    }
    Outcome {
        pass: bad.is_empty() && checked > 0,
        detail: if bad.is_empty() { format!("{checked} strongly monomial groups in {elapsed:.1?}") } else { bad.join("; ") },
    }
}

fn normalize_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus(32).into_iter().filter(|(_, g)| g.is_abelian()) {
        checked += 1;
        let a = pci_abelian(&g).expect("pci_abelian");
        let s = pci_strongly_monomial(&g).expect("pci_strongly_monomial");
        let mut x: Vec<String> = a.idempotents.iter().map(|e| e.to_string()).collect();
        let mut y: Vec<String> = s.idempotents.iter().map(|e| e.to_string()).collect();
        x.sort();
        y.sort();
        if x != y {
            bad.push(format!("{name}: idempotent sets differ"));
        }
        let mut from_pw: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for (d, k) in perlis_walker(&g).expect("perlis_walker") {
            *from_pw.entry((normalize_conductor(d), phi(d))).or_default() += k;
        }
        let mut from_dec: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for c in decomposition_report(&g).expect("decomposition") {
            match &c.classification.kind {
                ComponentKind::Field { conductor, field, .. } => {
                    *from_dec.entry((normalize_conductor(*conductor), field.degree as u64)).or_default() += 1
                }
                other => bad.push(format!("{name}: noncommutative component {other:?}")),
            }
        }
        if from_pw != from_dec {
            bad.push(format!("{name}: {from_dec:?} vs Perlis-Walker {from_pw:?}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{checked} abelian groups agree") } else { bad.join("; ") },
    }
}

fn criterion_4() -> Outcome {
    let mut instances = 0;
    let mut bad = Vec::new();
    for (name, g) in corpus(16) {
        let bound = 2 * g.order() * g.order();
        for x in g.elements() {
            let n = g.element_order(x) as u64;
            for k in 1..=n {
                if gcd(k, n) != 1 {
                    continue;
                }
                let o = mult_order(k, n);
                let claimed = bass_is_torsion(&g, x, k).expect("valid k");
                for m in [o, 2 * o] {
                    instances += 1;
                    let u = bass_unit(&g, x, k, m as u32).expect("bass unit");
                    let finite = element_order_bruteforce(&u.u, &u.u_inv, bound).expect("unit").is_finite();
                    if finite != claimed {
                        bad.push(format!("{name}: g={} k={k} m={m}", g.label(x)));
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{instances} instances, {} mismatches {}", bad.len(), bad.join("; ")).trim_end().to_string(),
    }
}

fn inverse_holds(u: &CertifiedUnit) -> bool {
    let one = IntElement::one(u.u.group());
    &u.u * &u.u_inv == one && &u.u_inv * &u.u == one
}

fn criterion_5() -> Outcome {
    let mut emitted = 0;
    let mut bad = Vec::new();
    for (name, g) in corpus(32) {
        let mut units = jespers_leal_generators(&g).expect("generators");
        if central_eligible(&g) {
            units.extend(central_generators(&g).expect("central").units);
        }
        for u in &units {
            emitted += 1;
            if !inverse_holds(u) {
                bad.push(format!("{name}: {:?}", u.kind));
            }
        }
    }
    let small = corpus(16);
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut identities = 0;
    while identities < BASS_RANDOM_INSTANCES {
        let (name, g) = &small[rng.gen_range(0..small.len())];
        let x = rng.gen_range(0..g.order());
        let n = g.element_order(x) as u64;
        let k = rng.gen_range(1..=n);
        if gcd(k, n) != 1 {
            continue;
        }
        let o = mult_order(k, n);
        let (m1, m2) = (o * rng.gen_range(1..=3), o * rng.gen_range(1..=3));
        let u1 = bass_unit(g, x, k, m1 as u32).expect("bass");
        let u2 = bass_unit(g, x, k, m2 as u32).expect("bass");
        let u12 = bass_unit(g, x, k, (m1 + m2) as u32).expect("bass");
        let shifted = bass_unit(g, x, k + n * rng.gen_range(1..=4), m1 as u32).expect("bass");
        identities += 1;
        if &u1.u * &u2.u != u12.u {
            bad.push(format!("{name}: m-additivity fails at k={k} m={m1}+{m2}"));
        }
        if shifted.u != u1.u {
            bad.push(format!("{name}: k mod |g| fails at k={k}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{emitted} emitted units verified, {identities} random Bass identities hold")
        } else {
            bad.join("; ")
        },
    }
}

/// Cut iff `g^m` is conjugate to `g` or `g^-1` for all `m` coprime to the
/// exponent.
fn cut_oracle(g: &FiniteGroup) -> bool {
    let e = g.exponent() as u64;
    let conj = |a: usize, b: usize| g.elements().any(|y| g.mul(g.mul(g.inv(y), a), y) == b);
    g.elements().all(|x| {
        (1..e).filter(|&m| gcd(m, e) == 1).all(|m| {
            let xm = g.pow(x, m as i64);
            conj(x, xm) || conj(g.inv(x), xm)
        })
    })
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus(32) {
        checked += 1;
        let rank = central_rank(&g).expect("rank").rank;
        let cut = is_cut(&g);
        if cut != (rank == 0) || cut != cut_oracle(&g) {
            bad.push(format!("{name}: cut {cut}, rank {rank}"));
        }
    }
    for (name, want) in [("C5", 1), ("C8", 1), ("D6", 0), ("D8", 0), ("Q8", 0), ("S3", 0)] {
        let rank = central_rank(&grp(name)).expect("rank").rank;
        if rank != want {
            bad.push(format!("{name}: rank {rank}, want {want}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{checked} groups consistent, named ranks match") } else { bad.join("; ") },
    }
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut certified = 0;
    for name in ["S3", "D8"] {
        let g = grp(name);
        for h in g.elements() {
            for x in g.elements() {
                // b(h, x~) = 1 + (1 - x) h x~
                let u = bicyclic_left(&g, h, x).expect("bicyclic");
                if u.u.is_one() {
                    continue;
                }
                let a = &u.u - &IntElement::one(&g);
                let t = (&a * &a.star()).trace();
                let want = BigInt::from(2 * g.element_order(x));
                let cert = marciniak_sehgal_pair(&g, h, x);
                certified += 1;
                match cert {
                    Ok((_, _, c)) if t == want && c.trace_value.numer() == &want && c.trace_value.denom().is_one() => {}
                    other => bad.push(format!("{name}: h={} g={} T={t} {:?}", g.label(h), g.label(x), other.err())),
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && certified > 0,
        detail: if bad.is_empty() { format!("{certified} nontrivial bicyclic units, T = 2|g| exactly") } else { bad.join("; ") },
    }
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let q16 = grp("Q16");
    let mut averaged = 0;
    for x in q16.elements() {
        let n = q16.element_order(x) as u64;
        if 4 % n == 0 || 6 % n == 0 {
            continue;
        }
        let series = subnormal_series(&q16, x).expect("nilpotent, so subnormal");
        for k in (2..n).filter(|&k| gcd(k, n) == 1) {
            let u = bass_unit(&q16, x, k, mult_order(k, n) as u32).expect("bass");
            let c = central_averaged_unit(&u, x, &series).expect("averaged");
            averaged += 1;
            for y in q16.elements() {
                let ye = IntElement::element(&q16, y);
                if &ye * &c.u != &c.u * &ye {
                    bad.push(format!("Q16: c(u_{k}({})) does not commute with {}", q16.label(x), q16.label(y)));
                }
            }
            for seed in 1..=8 {
                match central_averaged_unit_seeded(&u, x, &series, seed) {
                    Ok(d) if d.u == c.u => {}
                    _ => bad.push(format!("Q16: transversal dependence at seed {seed}")),
                }
            }
        }
    }
    let mut cut_groups = 0;
    for (name, g) in corpus(32) {
        if !cut_oracle(&g) || !central_eligible(&g) {
            continue;
        }
        cut_groups += 1;
        for x in g.elements() {
            let n = g.element_order(x) as u64;
            let Some(series) = subnormal_series(&g, x) else { continue };
            for k in (2..n).filter(|&k| gcd(k, n) == 1) {
                let u = bass_unit(&g, x, k, mult_order(k, n) as u32).expect("bass");
                let c = central_averaged_unit(&u, x, &series).expect("averaged");
                let terms = c.u.terms();
                let trivial_central = terms.len() == 1
                    && terms.iter().all(|(&z, coeff)| {
                        coeff.abs().is_one() && g.elements().all(|y| g.mul(y, z) == g.mul(z, y))
                    });
                if !trivial_central {
                    bad.push(format!("{name}: averaged unit at {} k={k} is not in +-Z(G)", g.label(x)));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && averaged > 0,
        detail: if bad.is_empty() {
            format!("{averaged} Q16 averaged units central and transversal-independent, {cut_groups} cut groups in +-Z(G)")
        } else {
            bad.join("; ")
        },
    }
}

/// `G = Q8 x E` iff some `Q = <i, j> = Q8` and the central involutions
/// `Omega` satisfy `|Omega : Omega n Q| >= |G| / 8`: a complement `E` of
/// `Omega n Q` in `Omega` is then central with `Q n E = 1` and `QE = G`.
fn is_q8_times_elementary(g: &FiniteGroup) -> bool {
    let n = g.order();
    if g.is_abelian() || !n.is_power_of_two() || n < 8 {
        return false;
    }
    let central = |z: usize| g.elements().all(|y| g.mul(y, z) == g.mul(z, y));
    let omega: Vec<usize> = g.elements().filter(|&z| g.mul(z, z) == g.identity() && central(z)).collect();
    for i in g.elements().filter(|&i| g.element_order(i) == 4) {
        let i2 = g.mul(i, i);
        for j in g.elements().filter(|&j| g.element_order(j) == 4 && g.mul(j, j) == i2) {
            if g.mul(g.mul(g.inv(j), i), j) != g.inv(i) {
                continue;
            }
            let mut q: Vec<usize> = (0..4).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| g.mul(g.pow(i, a), g.pow(j, b))).collect();
            q.sort();
            q.dedup();
            if q.len() != 8 {
                continue;
            }
            let meet = omega.iter().filter(|z| q.binary_search(z).is_ok()).count();
            return omega.len() / meet >= n / 8;
        }
    }
    false
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for (name, g) in corpus(usize::MAX) {
        let e = g.exponent();
        let want = if g.is_abelian() { 4 % e == 0 || 6 % e == 0 } else { is_q8_times_elementary(&g) };
        if higman_finite_units(&g) != want {
            bad.push(format!("{name}: higman {}", !want));
        }
    }
    if hfa(&grp("Q8")).expect("hfa") != TriState::True {
        bad.push("hfa(Q8) != TRUE".into());
    }
    if hfa(&grp("D8")).expect("hfa") != TriState::False {
        bad.push("hfa(D8) != FALSE".into());
    }
    if jespers_parmenter_obstruction(&grp("Q16")).expect("obstruction").status != ObstructionStatus::Applies {
        bad.push("obstruction does not apply to Q16".into());
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "higman matches oracle on the corpus, hfa and obstruction as expected".into() } else { bad.join("; ") },
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "golden decompositions", criterion_1),
        (2, "PCI completeness", criterion_2),
        (3, "abelian cross-validation", criterion_3),
        (4, "Bass torsion", criterion_4),
        (5, "unit certification", criterion_5),
        (6, "cut consistency", criterion_6),
        (7, "trace certificates", criterion_7),
        (8, "central averaging", criterion_8),
        (9, "predicates", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, label, run) in criteria {
        let start = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        let note = if !out.pass && KNOWN_FAILURES.contains(&id) { " (known)" } else { "" };
        println!("criterion {id} [{label}]: {status}{note} ({:.1?}) {}", start.elapsed(), out.detail);
        if !out.pass && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
