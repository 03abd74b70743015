//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use hirzebruch_core::arrangement::{self, Line, LineArrangement};
use hirzebruch_core::braid::{self, BraidWord, FreeWord};
use hirzebruch_core::degeneration;
use hirzebruch_core::invariants::{self, GroupDescriptor, SurfaceParams};
use hirzebruch_core::regeneration::{self, RegenerationOptions, SIX_POINT_DEGREE};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BRAID_MAX_STRANDS: usize = 8;
const BRAID_TIME_LIMIT: Duration = Duration::from_secs(10);
const ARRANGEMENT_COUNT: usize = 24;
const ARRANGEMENT_PENCILS: usize = 8;
const ARRANGEMENT_MAX_LINES: usize = 8;
const ARRANGEMENT_TIME_LIMIT: Duration = Duration::from_secs(60);
const CHERN_TIME_LIMIT: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn gen(n: usize, l: i32) -> BraidWord {
    BraidWord::new(n, vec![l]).unwrap()
}

fn eq(u: &BraidWord, v: &BraidWord) -> bool {
    braid::are_equal(u, v).unwrap()
}

fn braid_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0;
    for n in 2..=BRAID_MAX_STRANDS {
        let g = (n - 1) as i32;
        for i in 1..=g {
            for j in 1..=g {
                let (si, sj) = (gen(n, i), gen(n, j));
                if (i - j).abs() == 1 {
                    let l = si.compose(&sj).unwrap().compose(&si).unwrap();
                    let r = sj.compose(&si).unwrap().compose(&sj).unwrap();
                    ensure(eq(&l, &r), || format!("braid relation fails for s{i}, s{j} in B{n}"))?;
                } else if (i - j).abs() >= 2 {
                    let l = si.compose(&sj).unwrap();
                    let r = sj.compose(&si).unwrap();
                    ensure(eq(&l, &r), || format!("far commutation fails for s{i}, s{j} in B{n}"))?;
                }
                checks += 1;
            }
        }
        let d2 = braid::full_twist(n);
        ensure(d2.exponent_sum() == (n * (n - 1)) as i64, || format!("degree of the full twist in B{n}"))?;
        for i in 1..=g {
            let s = gen(n, i);
            ensure(eq(&d2.compose(&s).unwrap(), &s.compose(&d2).unwrap()), || {
                format!("full twist does not commute with s{i} in B{n}")
            })?;
            checks += 1;
        }
        // The full twist acts on the free group by conjugation with the boundary word.
        let d = FreeWord::boundary(n);
        let conj = |w: &FreeWord| d.mul(w).unwrap().mul(&d.inverse()).unwrap();
        let mut words: Vec<FreeWord> = (1..=n).map(|i| FreeWord::generator(n, i).unwrap()).collect();
        for _ in 0..5 {
            let letters: Vec<i32> = (0..12)
                .map(|_| {
                    let x = rng.gen_range(1..=n as i32);
                    if rng.gen() {
                        x
                    } else {
                        -x
                    }
                })
                .collect();
            words.push(FreeWord::new(n, letters).unwrap());
        }
        for w in &words {
            ensure(braid::artin_action(&d2, w).unwrap() == conj(w), || {
                format!("full twist action differs from conjugation in B{n}")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact checks for n <= {BRAID_MAX_STRANDS}"))
}

fn random_arrangement(rng: &mut ChaCha8Rng, p: usize, pencil: usize) -> Option<LineArrangement> {
    let mut slopes: Vec<(i64, i64)> = Vec::new();
    while slopes.len() < p {
        let s = (rng.gen_range(-9..=9), rng.gen_range(1..=3));
        let r = BigRational::new(s.0.into(), s.1.into());
        if !slopes.iter().any(|t| BigRational::new(t.0.into(), t.1.into()) == r) {
            slopes.push(s);
        }
    }
    let (x0, y0) = (
        BigRational::from_integer(rng.gen_range(-4..=4).into()),
        BigRational::from_integer(rng.gen_range(-4..=4).into()),
    );
    let lines = slopes
        .iter()
        .enumerate()
        .map(|(i, &(num, den))| {
            let m = BigRational::new(num.into(), den.into());
            let q = if i < pencil {
                &y0 - &m * &x0
            } else {
                BigRational::new(rng.gen_range(-15..=15).into(), rng.gen_range(1..=2).into())
            };
            Line::new(m, q)
        })
        .collect();
    let arr = LineArrangement::new(lines).ok()?;
    arrangement::critical_data(&arr).ok()?;
    Some(arr)
}

fn arrangement_products() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut done, mut pencils, mut factors) = (0, 0, 0);
    while done < ARRANGEMENT_COUNT {
        let p = rng.gen_range(2..=ARRANGEMENT_MAX_LINES);
        let pencil = if pencils < ARRANGEMENT_PENCILS { rng.gen_range(3..=ARRANGEMENT_MAX_LINES).min(p) } else { 0 };
        let Some(arr) = random_arrangement(&mut rng, p, pencil) else { continue };
        let f = arrangement::arrangement_monodromy_factorization(&arr).map_err(|e| e.to_string())?;
        ensure(f.total_claimed_degree() == (p * (p - 1)) as i64, || format!("degree sum for p = {p}"))?;
        ensure(f.verify_product_is_full_twist(), || format!("product is not the full twist for p = {p}"))?;
        factors += f.factors.len();
        if pencil >= 3 {
            pencils += 1;
        }
        done += 1;
    }
    Ok(format!("{done} arrangements ({pencils} with a pencil of 3 or more lines), {factors} factors"))
}

fn degeneration_counts() -> Outcome {
    let mut checked = 0;
    for a in 1..=10u32 {
        for b in 1..=10u32 {
            for k in 0..=4u32 {
                let c = degeneration::build_complex(k, a, b).map_err(|e| e.to_string())?;
                let planes = (2 * a * b + k * b * b) as usize;
                ensure(c.counts().planes == planes, || format!("planes at ({k},{a},{b})"))?;
            }
            let c = degeneration::build_complex(1, a, b).map_err(|e| e.to_string())?;
            let n = c.counts();
            let (au, bu) = (a as usize, b as usize);
            let lines = (6 * au * bu + 3 * bu * bu - 2 * au - 3 * bu) / 2;
            let vertices = bu * (bu + 1) / 2 + (au + 1) * (bu + 1);
            let m0 = bu * (bu + 1) / 2 + 1;
            let nu0 = m0 + au * (bu + 1) + bu;
            ensure(n.lines == lines, || format!("lines at (1,{a},{b}): {} vs {lines}", n.lines))?;
            ensure(n.vertices == vertices, || format!("vertices at (1,{a},{b}): {} vs {vertices}", n.vertices))?;
            let special = c.special_vertices();
            ensure(special == vec![1, m0 + bu, nu0 - bu, nu0], || {
                format!("special vertices at (1,{a},{b}): {special:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} parameter pairs"))
}

fn regeneration_audit() -> Outcome {
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for (k, a, b) in [(1, 1, 1), (1, 1, 2), (1, 2, 2)] {
        let c = degeneration::build_complex(k, a, b).map_err(|e| e.to_string())?;
        let (f, audit) = regeneration::regenerate(&c, &RegenerationOptions::default()).map_err(|e| e.to_string())?;
        let six: Vec<i64> = f.factors.iter().filter(|x| x.is_placeholder()).map(|x| x.meta.claimed_degree).collect();
        ensure(six.iter().all(|&d| d == SIX_POINT_DEGREE), || format!("6-point degree at ({k},{a},{b})"))?;
        ensure(six.len() == audit.six_points, || format!("6-point count at ({k},{a},{b})"))?;
        let r = &audit.report;
        lines.push(format!(
            "({k},{a},{b}) p={} selected {} residual {}, {} residual {}",
            r.strand_count, audit.selected_mode, r.residual, audit.other_mode, audit.other_residual
        ));
        if r.residual != 0 {
            failed.push(format!("({k},{a},{b})"));
        }
    }
    let detail = lines.join("; ");
    if failed.is_empty() {
        Ok(detail)
    } else {
        Err(format!("nonzero residual at {}: {detail}", failed.join(", ")))
    }
}

fn chern_identities() -> Outcome {
    let three = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    let mut checked = 0;
    for k in 0..=6u32 {
        for a in 1..=8u32 {
            for b in 1..=8u32 {
                let p = SurfaceParams::new(k, a, b).unwrap();
                let forms = invariants::closed_forms(p);
                let h = invariants::hirzebruch_data(p);
                let general = invariants::galois_chern(h.ek, h.n, h.c1sq_x, h.c2_x).map_err(|e| e.to_string())?;
                ensure(forms.expanded.same_values(&forms.factored), || format!("expanded vs factored at {p}"))?;
                ensure(forms.factored.same_values(&general), || format!("closed form vs general formula at {p}"))?;
                let special = match k {
                    0 => Some(invariants::chern_y_k0(a, b)),
                    1 => Some(invariants::chern_y_k1(a, b)),
                    _ => None,
                };
                if let Some(s) = special {
                    ensure(s.same_values(&general), || format!("specialization at {p}"))?;
                }
                let tau = invariants::signature(p).map_err(|e| e.to_string())?;
                let direct = (&general.c1sq_coeff - &two * &general.c2_coeff) / &three;
                ensure(tau.coeff == direct && tau.factorial_index == general.factorial_index, || {
                    format!("signature at {p}")
                })?;
                checked += 1;
            }
        }
    }
    for b in 1..=8u32 {
        let v = invariants::veronese_chern(b).map_err(|e| e.to_string())?;
        let y = invariants::chern_y(SurfaceParams::new(1, 0, b).unwrap()).map_err(|e| e.to_string())?;
        ensure(v.same_values(&y), || format!("Veronese formula at b = {b}"))?;
        checked += 1;
    }
    Ok(format!("{checked} parameter sets"))
}

fn equal_chern_pairs() -> Outcome {
    let mut checked = 0;
    for s in (1..=9u32).step_by(2) {
        for t in (1..=9u32).step_by(2) {
            if num_integer::gcd(s, t) != 1 {
                continue;
            }
            let r = invariants::equal_chern_pair(s, t).map_err(|e| e.to_string())?;
            let first = invariants::chern_y(SurfaceParams::new(1, s, 2 * t).unwrap()).map_err(|e| e.to_string())?;
            let second =
                invariants::chern_y(SurfaceParams::new(0, s + t, 2 * t).unwrap()).map_err(|e| e.to_string())?;
            ensure(first.same_values(&second) && r.c1sq_equal && r.c2_equal, || {
                format!("Chern numbers differ at s={s}, t={t}")
            })?;
            ensure(r.first_pi1.is_trivial(), || format!("first group not trivial at s={s}, t={t}"))?;
            let rank = (4 * s * t + 4 * t * t - 2) as u64;
            ensure(r.second_pi1 == GroupDescriptor { torsion_order: 2, rank }, || {
                format!("second group is {} at s={s}, t={t}", r.second_pi1)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coprime odd pairs"))
}

fn classification_cross_checks() -> Outcome {
    let (mut spin_bad, mut gt_bad, mut tau_bad) = (Vec::new(), Vec::new(), Vec::new());
    let mut total = 0;
    for k in 0..=10u32 {
        for a in 1..=20u32 {
            for b in 1..=20u32 {
                let p = SurfaceParams::new(k, a, b).unwrap();
                let m = invariants::branch_invariants(p).map_err(|e| e.to_string())?.m;
                if invariants::spin_by_residues(p) != (m % 4 != 0) {
                    spin_bad.push(p);
                }
                if invariants::general_type_by_cases(p) != (m > 6) {
                    gt_bad.push(p);
                }
                // The positivity table covers b >= 4.
                if b >= 4 {
                    let positive = invariants::signature(p).map_err(|e| e.to_string())?.sign().is_gt();
                    if positive != invariants::positive_signature_table(p) {
                        tau_bad.push(p);
                    }
                }
                total += 1;
            }
        }
    }
    let detail = format!(
        "{total} parameter sets; spin mismatches {}, general type mismatches {}, signature mismatches {}",
        spin_bad.len(),
        gt_bad.len(),
        tau_bad.len()
    );
    if spin_bad.is_empty() && gt_bad.is_empty() && tau_bad.is_empty() {
        return Ok(detail);
    }
    let first: Vec<String> = spin_bad.iter().chain(&gt_bad).chain(&tau_bad).take(6).map(|p| p.to_string()).collect();
    Err(format!("{detail}; first: {}", first.join(" ")))
}

fn signature_examples() -> Outcome {
    let mut bad = Vec::new();
    let zero = [(0, 7, 4), (1, 5, 4), (2, 3, 4), (3, 1, 4)];
    let positive = [(1, 3, 5), (1, 3, 6), (1, 3, 7), (1, 3, 8)];
    for (sign, list) in [(0i8, &zero), (1i8, &positive)] {
        for &(k, a, b) in list {
            let c = invariants::classify(SurfaceParams::new(k, a, b).unwrap()).map_err(|e| e.to_string())?;
            let mut missing = Vec::new();
            if !c.simply_connected {
                missing.push("simply connected");
            }
            if !c.general_type {
                missing.push("general type");
            }
            if c.signature_sign != sign {
                missing.push("signature sign");
            }
            if !c.spin {
                missing.push("spin");
            }
            if !missing.is_empty() {
                bad.push(format!("({k},{a},{b}) not {}", missing.join("/")));
            }
        }
    }
    if bad.is_empty() {
        Ok("8 parameter sets".into())
    } else {
        Err(bad.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("braid axioms", || timed(BRAID_TIME_LIMIT, braid_axioms)),
        ("arrangement monodromy products", || timed(ARRANGEMENT_TIME_LIMIT, arrangement_products)),
        ("degeneration counts", degeneration_counts),
        ("regeneration degree audit", regeneration_audit),
        ("Chern number identities", || timed(CHERN_TIME_LIMIT, chern_identities)),
        ("equal Chern numbers, different groups", equal_chern_pairs),
        ("classification cross-checks", classification_cross_checks),
        ("zero and positive signature examples", signature_examples),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
