//! Acceptance criteria, one line per criterion. Exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latticecurve::campaign::{
    campaign_gonality_consistency, campaign_q4_census, campaign_selfint_bounds, campaign_width_oracle,
    campaign_width_oracle_on, CampaignReport,
};
use latticecurve::curve::{classify_curve, g10_triangle, g4_triangle, PencilCount, NOTE_HYPERCUBIC};
use latticecurve::gaps::{gap_report, model_polygon, ModelCase, TrigonalModel};
use latticecurve::lattice::LatticePoint;
use latticecurve::polygon::{rectangle, standard_simplex, LatticePolygon};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t <= limit, || format!("took {:.2?}, limit {:.0?}", t, limit))
}

fn campaign(r: &CampaignReport) -> Result<(), String> {
    ensure(r.passed(), || {
        let v = &r.violations[0];
        format!("{} violations, first: {} {} {:?}", r.violations.len(), v.polygon, v.claim, v.values)
    })
}

fn genus_ten() -> Outcome {
    let start = Instant::now();
    let r = classify_curve(&g10_triangle()).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let got = (r.genus, r.lattice_width, r.self_intersection, r.gonality, r.clifford);
    ensure(got == (10, 6, 27, 6, Some(3)), || format!("(g, q, C², gon, cliff) = {got:?}"))?;
    ensure(r.pencil_count == PencilCount::Infinite, || format!("pencil count {}", r.pencil_count))?;
    ensure(r.notes.iter().any(|n| n == NOTE_HYPERCUBIC), || "hypercubic note missing".into())?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("g=10 q=6 C²=27 gonality 6 Clifford 3, infinite pencils, {t:.2?}"))
}

fn genus_four() -> Outcome {
    let start = Instant::now();
    let r = classify_curve(&g4_triangle()).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let got = (r.genus, r.lattice_width, r.self_intersection, r.gonality, r.clifford);
    ensure(got == (4, 4, 12, 3, Some(1)), || format!("(g, q, C², gon, cliff) = {got:?}"))?;
    ensure(r.pencil_count == PencilCount::OneOrTwoNotPolygonDetermined, || format!("pencil count {}", r.pencil_count))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("g=4 q=4 C²=12 gonality 3 Clifford 1, {}", r.pencil_count))
}

fn plane_curves() -> Outcome {
    for d in 2..=7 {
        let r = classify_curve(&standard_simplex(d)).map_err(|e| e.to_string())?;
        ensure(r.gonality == d - 1, || format!("d={d}: gonality {}", r.gonality))?;
        if d >= 5 {
            ensure(r.clifford == Some(d - 4), || format!("d={d}: Clifford {:?}", r.clifford))?;
        }
    }
    Ok("dΔ for d = 2..7: gonality d-1, Clifford d-4 from d = 5".into())
}

fn rectangles() -> Outcome {
    let (mut n, mut low) = (0, 0);
    for a in 2..=8 {
        for b in 2..=a {
            let r = classify_curve(&rectangle(a, b)).map_err(|e| e.to_string())?;
            let want = if a == b { 2 } else { 1 };
            ensure(r.gonality == b, || format!("{a}x{b}: gonality {}", r.gonality))?;
            if r.genus < 2 {
                // elliptic: infinitely many degree-2 pencils, no count to check
                ensure(r.pencil_count == PencilCount::Infinite, || format!("{a}x{b}: count {}", r.pencil_count))?;
                low += 1;
                continue;
            }
            ensure(r.pencil_directions.len() == want && r.pencil_count == PencilCount::Exact(want), || {
                format!("{a}x{b}: {} directions, count {}", r.pencil_directions.len(), r.pencil_count)
            })?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} rectangles of genus >= 2: gonality b, one pencil direction unless square; \
         {low} of genus 1 checked for gonality only"
    ))
}

fn bounds(n: i64, limit: Duration) -> Outcome {
    let r = campaign_selfint_bounds(n).map_err(|e| e.to_string())?;
    campaign(&r)?;
    within(Duration::from_secs_f64(r.wall_time_secs), limit)?;
    Ok(format!("N={n}: {} polygons, 0 violations, {:.1}s", r.checked, r.wall_time_secs))
}

fn q4_census() -> Outcome {
    let r = campaign_q4_census(6).map_err(|e| e.to_string())?;
    campaign(&r)?;
    let mut types: Vec<usize> = r.classes.iter().flat_map(|c| c.types.iter().copied()).collect();
    types.sort();
    ensure(types == [1, 2, 3, 4, 5, 6], || format!("reference types covered: {types:?}"))?;
    let classes: Vec<String> = r.classes.iter().map(|c| format!("{:?} C²={}", c.types, c.self_intersection)).collect();
    Ok(format!("all six reference types found; {} unimodular classes: {}", r.classes.len(), classes.join(", ")))
}

fn gap_sequences() -> Outcome {
    let start = Instant::now();
    let mut models = 0;
    for m in 0..=6 {
        let deg_a = 2 * m + 4;
        let mut batch =
            vec![(TrigonalModel::new(ModelCase::I, m), 3 * m + 4), (TrigonalModel::new(ModelCase::II, m), 3 * m + 3)];
        for beta in (1..deg_a).step_by(2) {
            for alpha in (beta + 1) / 2..=deg_a {
                let model = TrigonalModel::new(ModelCase::III, m).with_alpha(alpha).with_beta(beta);
                if model.validate().is_ok() {
                    batch.push((model, 3 * m - (beta - 9) / 2));
                }
            }
        }
        for nu in 2..=2 * m + 5 {
            batch.push((TrigonalModel::new(ModelCase::IV, m).with_nu(nu), 3 * m + 3));
        }
        for (model, genus) in batch {
            let g = gap_report(&model).map_err(|e| format!("{model:?}: {e}"))?;
            let p = model_polygon(&model).map_err(|e| e.to_string())?;
            ensure(g.genus == genus && p.genus() == genus && g.gaps.len() as i64 == genus, || {
                format!("{model:?}: genus {} polygon {} gaps {}", g.genus, p.genus(), g.gaps.len())
            })?;
            models += 1;
        }
    }
    let spot = gap_report(&TrigonalModel::new(ModelCase::I, 1)).map_err(|e| e.to_string())?;
    ensure(spot.gaps == [1, 2, 4, 5, 7, 10, 13], || format!("case i, m=1: {:?}", spot.gaps))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(10))?;
    Ok(format!("{models} models: sweep = closed form, |gaps| = genus, {t:.2?}"))
}

fn random_polygons(count: usize, seed: u64) -> Vec<LatticePolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(3..=12);
        let pts: Vec<LatticePoint> =
            (0..k).map(|_| LatticePoint::new(rng.gen_range(0..=20), rng.gen_range(0..=20))).collect();
        let p = LatticePolygon::from_points(&pts).expect("non-empty");
        if p.is_full_dimensional() {
            out.push(p);
        }
    }
    out
}

fn width_oracle() -> Outcome {
    let box8 = campaign_width_oracle(8).map_err(|e| e.to_string())?;
    campaign(&box8)?;
    let random = campaign_width_oracle_on(&random_polygons(1000, 0x01a7_71ce));
    campaign(&random)?;
    Ok(format!(
        "N=8: {} polygons in {:.0}s, plus {} random, 0 mismatches",
        box8.checked, box8.wall_time_secs, random.checked
    ))
}

fn consistency() -> Outcome {
    let r = campaign_gonality_consistency(5).map_err(|e| e.to_string())?;
    campaign(&r)?;
    Ok(format!(
        "N=5: {} polygons, 0 violations ({} simplices have no fibration and skip that check)",
        r.checked, r.exempt
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("genus 10 triangle", genus_ten),
        ("genus 4 triangle", genus_four),
        ("plane curves", plane_curves),
        ("rectangles", rectangles),
        ("self-intersection bounds, N=6", || bounds(6, Duration::from_secs(300))),
        ("self-intersection bounds, N=7", || bounds(7, Duration::from_secs(600))),
        ("q=4 census", q4_census),
        ("gap sequences", gap_sequences),
        ("lattice width oracle", width_oracle),
        ("toric consistency", consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
