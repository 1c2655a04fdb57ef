//! Oracle suites run by `bwcontact selftest`.
//!
//! Each suite checks a closed-form computation against an independent route:
//! brute-force search, exhaustive enumeration, or a second algebraic formula.
//! Randomized suites use a fixed seed, so the output is deterministic.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, DegreeSpectrum, QbStatus};
use crate::corpus;
use crate::geography::{self, Catalog};
use crate::isomorphism::{self, Decision, Distinguisher};
use crate::lattice::{self, gcd, Covector};
use crate::manifolds::{self, SymplecticFourManifoldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    /// First failure, or empty.
    pub detail: String,
}

struct Suite {
    name: &'static str,
    cases: u64,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self.failure.unwrap_or_default(),
        }
    }
}

const SEED: u64 = 0x5eed_b007_b7a9;

pub fn run_all() -> Vec<SuiteResult> {
    vec![
        lattice_oracle(),
        level_realization(),
        delta_gcd(),
        qb_oracle(),
        decision_table(),
        spin_level(),
        geography_counts(),
    ]
}

/// Largest `d` with `c = d R + gamma w` over `|gamma|, |R_i| <= bound`, found
/// by trial division; zero when `c` is itself a multiple of `w`.
pub fn brute_force_quotient_divisibility(c: &[i64], w: &[i64], bound: i64) -> u64 {
    let residual = |gamma: i64| -> Vec<i64> { c.iter().zip(w).map(|(a, b)| a - gamma * b).collect() };
    if (-bound..=bound).any(|gamma| residual(gamma).iter().all(|&x| x == 0)) {
        return 0;
    }
    let mut best = 0u64;
    for gamma in -bound..=bound {
        let r = residual(gamma);
        let Some(&lead) = r.iter().find(|&&x| x != 0) else {
            continue;
        };
        let lead = lead.unsigned_abs();
        if lead <= best {
            continue;
        }
        let mut t = 1u64;
        let mut candidates = Vec::new();
        while t * t <= lead {
            if lead % t == 0 {
                candidates.push(t);
                candidates.push(lead / t);
            }
            t += 1;
        }
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        for d in candidates {
            if d <= best {
                break;
            }
            let di = d as i64;
            if r.iter().all(|&x| x % di == 0 && (x / di).abs() <= bound) {
                best = d;
                break;
            }
        }
    }
    best
}

fn random_indivisible(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.random_range(-bound..=bound)).collect();
        if w.iter().fold(0, |g, &x| gcd(g, x.unsigned_abs())) == 1 {
            return w;
        }
    }
}

/// Random valid descriptor of rank `1..=max_rank`.
pub fn random_descriptor(rng: &mut ChaCha8Rng, max_rank: usize, bound: i64) -> SymplecticFourManifoldDescriptor {
    let n = rng.random_range(1..=max_rank);
    let omega = random_indivisible(rng, n, bound);
    let scale = rng.random_range(1..=6i64);
    let c1: Vec<i64> = (0..n).map(|_| scale * rng.random_range(-bound..=bound)).collect();
    let spin = c1.iter().all(|x| x % 2 == 0);
    SymplecticFourManifoldDescriptor {
        name: "random".into(),
        b2: n as u32,
        b2_plus: 1,
        c1: Covector::new(c1).expect("nonempty"),
        omega: Covector::new(omega).expect("nonempty"),
        spin,
    }
}

fn test_corpus() -> Vec<SymplecticFourManifoldDescriptor> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut all: Vec<_> = corpus::bundled().into_iter().map(|(_, d)| d).collect();
    all.extend((0..500).map(|_| random_descriptor(&mut rng, 6, 12)));
    all
}

fn lattice_oracle() -> SuiteResult {
    let mut suite = Suite::new("lattice_oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let n = rng.random_range(1..=5usize);
        let w = random_indivisible(&mut rng, n, 20);
        let c: Vec<i64> = (0..n).map(|_| rng.random_range(-20..=20)).collect();
        let expected = brute_force_quotient_divisibility(&c, &w, 400);
        let got = lattice::quotient_divisibility(
            &Covector::new(c.clone()).expect("nonempty"),
            &Covector::new(w.clone()).expect("nonempty"),
        );
        suite.check(got == Ok(expected), || {
            format!("c = {c:?}, w = {w:?}: brute force {expected}, computed {got:?}")
        });
    }
    suite.finish()
}

fn level_realization() -> SuiteResult {
    let mut suite = Suite::new("level_realization");
    for k in 1..=10i64 {
        for s1 in -10..=10i64 {
            for s2 in -10..=10i64 {
                if gcd(s1.unsigned_abs(), s2.unsigned_abs()) != 1 {
                    continue;
                }
                let c = Covector::new(vec![k, 0, 0, 0]).expect("nonempty");
                let w = Covector::new(vec![s1, s2, 0, 0]).expect("nonempty");
                let got = lattice::quotient_divisibility(&c, &w);
                let expected = k as u64 * s2.unsigned_abs();
                suite.check(got == Ok(expected), || {
                    format!("k = {k}, sigma = ({s1}, {s2}): expected {expected}, got {got:?}")
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for k in 1..=10i64 {
        // canonical class k * v with v primitive but not a coordinate vector
        let v = random_indivisible(&mut rng, 5, 9);
        let c1: Vec<i64> = v.iter().map(|x| -k * x).collect();
        let desc = SymplecticFourManifoldDescriptor {
            name: format!("k = {k}"),
            b2: 5,
            b2_plus: 3,
            spin: c1.iter().all(|x| x % 2 == 0),
            c1: Covector::new(c1).expect("nonempty"),
            omega: Covector::new(random_indivisible(&mut rng, 5, 9)).expect("nonempty"),
        };
        let Ok(desc) = desc.validate() else {
            suite.check(false, || format!("generated descriptor for k = {k} is invalid"));
            continue;
        };
        for m in 1..=10u64 {
            let got = geography::realize_level(&desc, m).map(|r| {
                let recomputed =
                    brute_force_quotient_divisibility(desc.c1().as_slice(), r.omega.as_slice(), 0);
                (r.level, recomputed, lattice::quotient_divisibility_by_minors(desc.c1(), &r.omega))
            });
            let want = m * k as u64;
            suite.check(
                matches!(got, Ok((level, _, Ok(minors))) if level == want && minors == want),
                || format!("realize_level(k = {k}, m = {m}) = {got:?}, expected {want}"),
            );
        }
    }
    suite.finish()
}

fn delta_gcd() -> SuiteResult {
    let mut suite = Suite::new("delta_gcd");
    for desc in test_corpus() {
        let name = desc.name.clone();
        match crate::classify(desc) {
            Ok((_, x)) => suite.check(gcd(x.delta, x.level) == x.dk, || {
                format!("{name}: gcd({}, {}) != d(K) = {}", x.delta, x.level, x.dk)
            }),
            Err(e) => suite.check(false, || format!("{name}: {e}")),
        }
    }
    suite.finish()
}

fn qb_oracle() -> SuiteResult {
    let mut suite = Suite::new("qb_oracle");
    for d in 1..=30u64 {
        for delta in 0..=30u64 {
            let dk = gcd(delta, d);
            for b in 0..d {
                let closed = algebra::qb_status(b, d, dk);
                let members = algebra::qb_members_bruteforce(b, d, delta as i64, 3, 2 * d);
                let ok = match (&closed, &members) {
                    (Ok(s), Ok(m)) => (*s == QbStatus::Infinite) == !m.is_empty(),
                    _ => false,
                };
                suite.check(ok, || format!("d = {d}, delta = {delta}, b = {b}: {closed:?} vs {members:?}"));
                if dk >= 4 && b == 2 {
                    suite.check(closed == Ok(QbStatus::Empty), || {
                        format!("Q_2 not empty for d = {d}, d(K) = {dk}")
                    });
                }
            }
        }
    }
    suite.finish()
}

fn expected_isomorphic(d: u64, a: u64, b: u64) -> bool {
    (d >= 1 && a <= 3 && b <= 3) || (d == 0 && a == b) || (d >= 4 && a == b && a >= 4)
}

/// Admissible canonical divisibilities at level `d` (all of `0..=24` at level 0).
pub fn admissible_divisibilities(d: u64) -> Vec<u64> {
    if d == 0 {
        (0..=24).collect()
    } else {
        (1..=d).filter(|k| d % k == 0).collect()
    }
}

/// A representative `delta` with `gcd(delta, d) = dk`, preferring one other than `dk`.
pub fn alternative_delta(d: u64, dk: u64) -> u64 {
    if d == 0 {
        return dk;
    }
    (0..d).rev().find(|&x| gcd(x, d) == dk).unwrap_or(dk)
}

fn decision_table() -> SuiteResult {
    let mut suite = Suite::new("decision_table");
    for d in 0..=24u64 {
        let ks = admissible_divisibilities(d);
        for &a in &ks {
            for &b in &ks {
                let r = isomorphism::decide(d, a, b);
                let Ok(r) = r else {
                    suite.check(false, || format!("decide({d}, {a}, {b}) failed: {r:?}"));
                    continue;
                };
                let iso = r.decision == Decision::Isomorphic;
                suite.check(iso == expected_isomorphic(d, a, b), || format!("decide({d}, {a}, {b}) = {:?}", r.decision));
                let swapped = isomorphism::decide(d, b, a).map(|s| s.decision);
                suite.check(swapped == Ok(r.decision), || format!("asymmetric at ({d}, {a}, {b})"));
                if !iso && d >= 4 {
                    let ok = match r.distinguisher {
                        Some(Distinguisher::ResidueClass { b: class, .. }) => {
                            algebra::qb_status(class, d, a) != algebra::qb_status(class, d, b)
                        }
                        _ => false,
                    };
                    suite.check(ok, || format!("no valid distinguisher at ({d}, {a}, {b})"));
                }
                if iso {
                    let ok = (|| {
                        let s = DegreeSpectrum::new(d, a, 3, 50).ok()?;
                        let t = DegreeSpectrum::new(d, alternative_delta(d, b), 3, 50).ok()?;
                        let w = isomorphism::build_witness(&s, &t).ok()?.witness?;
                        let deg = |sp: &DegreeSpectrum, idx| sp.q_degrees.iter().find(|g| g.index == idx).map(|g| g.degree);
                        let mut targets = std::collections::HashSet::new();
                        Some(w.triples.iter().all(|tr| {
                            targets.insert(tr.target)
                                && deg(&s, tr.source)
                                    == deg(&t, tr.target).map(|x| x - 2 * d as i64 * tr.alpha)
                        }))
                    })();
                    suite.check(ok == Some(true), || format!("witness check failed at ({d}, {a}, {b})"));
                }
                for &c in &ks {
                    let (Ok(x), Ok(y)) = (isomorphism::decide(d, b, c), isomorphism::decide(d, a, c)) else {
                        continue;
                    };
                    if iso && x.is_isomorphic() {
                        suite.check(y.is_isomorphic(), || format!("not transitive at ({d}, {a}, {b}, {c})"));
                    }
                }
            }
            let reflexive = isomorphism::decide(d, a, a).map(|r| r.is_isomorphic());
            suite.check(reflexive == Ok(true), || format!("not reflexive at ({d}, {a})"));
        }
    }
    suite.finish()
}

fn spin_level() -> SuiteResult {
    let mut suite = Suite::new("spin_level");
    for desc in test_corpus() {
        let name = desc.name.clone();
        let Ok((_, x)) = crate::classify(desc) else {
            suite.check(false, || format!("{name}: classification failed"));
            continue;
        };
        suite.check(x.spin_x == (x.level % 2 == 0), || {
            format!("{name}: spin {} at level {}", x.spin_x, x.level)
        });
        let multiple = if x.dk == 0 { x.level == 0 } else { x.level % x.dk == 0 };
        suite.check(multiple, || format!("{name}: level {} not a multiple of {}", x.level, x.dk));
        suite.check(
            x.barden_name == manifolds::barden_name(x.b2_x, x.spin_x),
            || format!("{name}: name {}", x.barden_name),
        );
    }
    suite.finish()
}

fn geography_counts() -> SuiteResult {
    let mut suite = Suite::new("geography_counts");
    let cat = Catalog::builtin();
    let n = |d| geography::count_n(d).unwrap_or(u64::MAX);
    let n_prime = |d| geography::count_n_prime(d).unwrap_or(u64::MAX);
    suite.check(n(12) == 3, || "N(12) != 3".into());
    suite.check(n_prime(12) == 0, || "N'(12) != 0".into());
    suite.check(n(15) == 2, || "N(15) != 2".into());
    for d in (5..=99u64).step_by(2) {
        let q = cat.q_lower_bound(10, d).map(|x| x.0);
        suite.check(q == Ok(n(d)), || format!("Q(10, {d}) = {q:?}, N = {}", n(d)));
    }
    for d in (4..=100u64).step_by(2) {
        let q = cat.q_lower_bound(22, d).map(|x| x.0);
        suite.check(q == Ok(n(d)), || format!("Q(22, {d}) = {q:?}"));
        let q = cat.q_lower_bound(10, d).map(|x| x.0).unwrap_or(0);
        suite.check(q >= n_prime(d), || format!("Q(10, {d}) = {q} < N'"));
    }
    for m in 1..=3u32 {
        for d in (5..=99u64).step_by(2) {
            let r = cat.contact_count_report(12 * m - 2, d);
            suite.check(
                matches!(&r, Ok(r) if r.lower_bound >= n(d) && !r.spin && r.b2_x == 12 * m - 3),
                || format!("odd level {d}, n = {m}: {r:?}"),
            );
        }
        for d in (4..=100u64).step_by(2) {
            let r = cat.contact_count_report(24 * m - 2, d);
            suite.check(
                matches!(&r, Ok(r) if r.lower_bound >= n(d) && r.spin && r.b2_x == 24 * m - 3),
                || format!("even level {d}, n = {m}: {r:?}"),
            );
            let r = cat.contact_count_report(24 * m - 14, d);
            suite.check(
                matches!(&r, Ok(r) if r.lower_bound >= n_prime(d) && r.b2_x == 24 * m - 15),
                || format!("even level {d}, r = {}: {r:?}", 24 * m - 14),
            );
        }
    }
    suite.finish()
}
