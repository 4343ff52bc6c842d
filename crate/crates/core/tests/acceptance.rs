//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line; the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sfc_core::analysis::{
    dimred_profile, edge_tally, loglog_slope, z_decode, z_encode, DimredConfig, DimredCurve,
};
use sfc_core::bundled;
use sfc_core::cells::{make_serpentine_path, validate_path, AlignmentVariant, Cell, CellClass, NodeBudget};
use sfc_core::realmap::{mid_forward, unit_forward};
use sfc_core::recurrence::{decode, decode_centered, encode, encode_centered, floor_div};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 0x5fc5fc;

fn pow(s: u32, e: u32) -> u64 {
    (s as u64).pow(e)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn isotropy() -> Outcome {
    use AlignmentVariant::*;
    let closing_off: &[(&str, Cell, &[&[u64]])] = &[
        ("hilbert d2", bundled::hilbert(2), &[&[2, 1], &[7, 8], &[32, 31], &[127, 128]]),
        (
            "hilbert d3",
            bundled::hilbert(3),
            &[&[4, 1, 2], &[18, 22, 23], &[171, 174, 166], &[1374, 1355, 1366], &[10902, 10926, 10939]],
        ),
        (
            "hilbert d4",
            bundled::hilbert(4),
            &[&[8, 1, 2, 4], &[44, 58, 71, 82], &[1002, 1104, 1098, 891], &[17011, 16562, 15544, 16418]],
        ),
        (
            "peano d3 precess1",
            bundled::peano(3, PrecessOffsetDiagonal),
            &[&[2, 6, 18], &[236, 240, 252], &[6554, 6558, 6570]],
        ),
        (
            "peano d3 precess",
            bundled::peano(3, PrecessDiagonal),
            &[&[2, 6, 18], &[236, 240, 252], &[6554, 6558, 6570]],
        ),
        ("meander", bundled::meander(), &[&[4, 4], &[40, 40], &[364, 364], &[3280, 3280]]),
    ];
    let mut checked = 0;
    let mut compare = |name: &str, cell: &Cell, levels: u64, closing: bool, want: &[u64]| {
        let tally = edge_tally(cell, levels, closing, NodeBudget::DEFAULT).map_err(|e| e.to_string())?;
        let mut want = want.to_vec();
        want.sort_unstable();
        checked += 1;
        ensure(tally.sorted_counts() == want, || {
            format!("{name} m={levels} closing={closing}: got {:?}, want {want:?}", tally.counts)
        })
    };
    for (name, cell, rows) in closing_off {
        for (i, row) in rows.iter().enumerate() {
            compare(name, cell, i as u64 + 1, false, row)?;
        }
    }
    let h2 = bundled::hilbert(2);
    for (i, row) in [[2u64, 2], [8, 8], [32, 32], [128, 128]].iter().enumerate() {
        compare("hilbert d2", &h2, i as u64 + 1, true, row)?;
    }
    for (v, want) in [(PlainDiagonal, [60u64, 20]), (PrecessDiagonal, [44, 36]), (PrecessOffsetDiagonal, [40, 40])] {
        compare(&format!("peano d2 {v}"), &bundled::peano(2, v), 2, false, &want)?;
    }
    Ok(format!("{checked} tallies match exactly"))
}

fn zcurve_unit_gap() -> Outcome {
    let mut report = Vec::new();
    let mut failed = Vec::new();
    for rank in [2usize, 3, 4, 6, 9] {
        let cfg = DimredConfig { max_gap: 1, ..DimredConfig::default() };
        let series = dimred_profile(DimredCurve::ZCurve { rank }, &cfg).map_err(|e| e.to_string())?;
        let mean = series.gaps[0].mean_distance;
        let bound = if rank == 2 { 1.6 } else { 1.35 };
        report.push(format!("d{rank}={mean:.4}"));
        if mean <= bound || mean.is_nan() {
            failed.push(format!("d{rank} mean {mean:.4} <= {bound}"));
        }
    }
    let report = format!("{} ({} samples, seed {SEED:#x})", report.join(" "), DimredConfig::default().samples);
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(format!("{}; {report}", failed.join(", ")))
    }
}

fn continuity() -> Outcome {
    let catalog = bundled::catalog();
    let mut steps = 0u64;
    for (name, cell) in &catalog {
        let limit = pow(cell.side(), 3 * cell.rank() as u32);
        let bad = (0..limit)
            .into_par_iter()
            .find_first(|&u| {
                let a = encode(&BigUint::from(u), cell);
                let b = encode(&BigUint::from(u + 1), cell);
                a.l1_distance(&b) != BigUint::one()
            });
        ensure(bad.is_none(), || format!("{name}: step at u={} is not a unit step", bad.unwrap()))?;
        steps += limit;
    }
    Ok(format!("{steps} steps over {} cells, zero violations", catalog.len()))
}

fn roundtrips() -> Outcome {
    let mut count = 0u64;
    for (name, cell) in bundled::catalog() {
        let d = cell.rank() as u32;
        let s = cell.side();
        let inputs: Vec<BigUint> = if d == 2 {
            (0..pow(s, 2 * d * d)).map(BigUint::from).collect()
        } else {
            let bound = num_traits::pow(BigUint::from(s), (3 * d * d) as usize);
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ d as u64);
            (0..100_000).map(|_| random_below(&mut rng, &bound)).collect()
        };
        let bad = inputs.par_iter().find_any(|u| decode(&encode(u, &cell), &cell).ok().as_ref() != Some(*u));
        ensure(bad.is_none(), || format!("{name}: q(Q({})) differs", bad.unwrap()))?;
        count += inputs.len() as u64;
    }
    for (name, cell) in bundled::catalog() {
        if !cell.class().is_diagonal() {
            continue;
        }
        let bad = (-10_000i64..=10_000).into_par_iter().find_any(|&u| {
            let u = BigInt::from(u);
            let p = encode_centered(&u, &cell).expect("encodes");
            decode_centered(&p, &cell).ok() != Some(u)
        });
        ensure(bad.is_none(), || format!("{name}: q'(Q'({})) differs", bad.unwrap()))?;
        count += 20_001;
    }
    for rank in [2usize, 3, 4, 6, 9] {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + rank as u64);
        for _ in 0..100_000 {
            let u = BigUint::from(rng.gen::<u64>()) << 64 | BigUint::from(rng.gen::<u64>());
            let back = z_decode(&z_encode(&u, rank).map_err(|e| e.to_string())?);
            ensure(back == u, || format!("z-curve rank {rank}: roundtrip of {u} gave {back}"))?;
        }
        count += 100_000;
    }
    Ok(format!("{count} roundtrips, zero failures"))
}

fn random_below(rng: &mut impl Rng, bound: &BigUint) -> BigUint {
    let bytes = (bound.bits() as usize).div_ceil(8) + 8;
    let raw: Vec<u8> = (0..bytes).map(|_| rng.gen()).collect();
    BigUint::from_bytes_le(&raw) % bound
}

fn self_similarity() -> Outcome {
    let mut count = 0u64;
    for (name, cell) in bundled::catalog() {
        let d = cell.rank() as u32;
        let s = cell.side();
        let block = BigUint::from(pow(s, d * d));
        let width = BigUint::from(pow(s, d));
        let bad = (0..pow(s, d * d)).into_par_iter().find_any(|&u| {
            let u = BigUint::from(u);
            encode(&u, &cell) != floor_div(&encode(&(&u * &block), &cell), &width)
        });
        ensure(bad.is_none(), || format!("{name}: self-similarity fails at u={}", bad.unwrap()))?;
        count += pow(s, d * d);
    }
    Ok(format!("{count} points exact"))
}

fn random_unit_rationals(seed: u64, n: usize) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let den: u64 = rng.gen_range(1..=u64::MAX >> 1);
            let num = rng.gen_range(0..den);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn scaling() -> Outcome {
    let mut count = 0u64;
    for (name, cell) in bundled::catalog() {
        let d = cell.rank() as u32;
        let s = cell.side();
        let block = BigRational::from_integer(BigInt::from(pow(s, d * d)));
        let width = BigRational::from_integer(BigInt::from(pow(s, d)));
        let ys = random_unit_rationals(SEED, 1000);
        for n in [1u64, 2] {
            let bad = ys.par_iter().find_any(|y| {
                let lhs = unit_forward(&(*y / &block), n + 1, &cell).expect("in range");
                let rhs = unit_forward(y, n, &cell).expect("in range");
                lhs.coords().iter().zip(rhs.coords()).any(|(a, b)| *a != b / &width)
            });
            ensure(bad.is_none(), || format!("{name} n={n}: scaling fails at y={}", bad.unwrap()))?;
            count += ys.len() as u64;
        }
    }
    Ok(format!("{count} checks exact"))
}

fn coherence() -> Outcome {
    let mut count = 0u64;
    for (name, cell) in bundled::catalog() {
        let d = cell.rank() as u64;
        let ys = random_unit_rationals(SEED + 7, 1000);
        for n in [1u64, 2, 3] {
            let bound = BigRational::new(BigInt::one(), BigInt::from(cell.side()).pow(n as u32));
            let bad = ys.par_iter().find_any(|y| {
                let e = mid_forward(y, n * d, &cell).expect("in range");
                let f = unit_forward(y, n, &cell).expect("in range");
                e.coords().iter().zip(f.coords()).any(|(a, b)| {
                    let diff = a - b;
                    let abs = if diff < BigRational::from_integer(0.into()) { -diff } else { diff };
                    abs > bound
                })
            });
            ensure(bad.is_none(), || format!("{name} n={n}: E'' strays from F at y={}", bad.unwrap()))?;
            count += ys.len() as u64;
        }
    }
    Ok(format!("{count} checks within s^-n"))
}

fn dimension_reduction() -> Outcome {
    use AlignmentVariant::*;
    let cfg = DimredConfig::default();
    let hilbert = bundled::hilbert(2);
    let peanos: Vec<Cell> =
        [PlainDiagonal, PrecessDiagonal, PrecessOffsetDiagonal].map(|v| bundled::peano(2, v)).into();
    let mut slopes = Vec::new();
    let mut series = Vec::new();
    for cell in std::iter::once(&hilbert).chain(&peanos) {
        let s = dimred_profile(DimredCurve::Cell(cell), &cfg).map_err(|e| e.to_string())?;
        let slope = loglog_slope(&s).map_err(|e| e.to_string())?;
        slopes.push((format!("s{}-{}", cell.side(), cell.variant()), slope));
        series.push(s);
    }
    let mut worst = (0.0f64, 0u64);
    for i in 1..series.len() {
        for j in i + 1..series.len() {
            for (a, b) in series[i].gaps.iter().zip(&series[j].gaps) {
                let rel = (a.mean_distance - b.mean_distance).abs() / a.mean_distance.min(b.mean_distance);
                if rel > worst.0 {
                    worst = (rel, a.gap);
                }
            }
        }
    }
    let text = slopes.iter().map(|(n, s)| format!("{n}={s:.3}")).collect::<Vec<_>>().join(" ");
    let report = format!("slopes {text}; max peano spread {:.2}% at gap {}", worst.0 * 100.0, worst.1);
    let slopes_ok = slopes.iter().all(|(_, s)| (0.45..=0.60).contains(s));
    if slopes_ok && worst.0 < 0.05 {
        Ok(report)
    } else {
        Err(report)
    }
}

fn centered_spread() -> Outcome {
    let cell = bundled::peano(2, AlignmentVariant::PlainDiagonal);
    let points: Vec<Vec<i64>> = (-3280i64..=0)
        .map(|u| encode_centered(&BigInt::from(u), &cell).map(|p| p.to_i64_vec().expect("small")))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let extent = points.iter().flatten().map(|c| c.abs()).max().unwrap_or(0);
    ensure(extent <= 40, || format!("coordinate magnitude {extent} exceeds 40"))?;
    for (k, w) in points.windows(2).enumerate() {
        let l1: i64 = w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).sum();
        ensure(l1 == 1, || format!("step from u={} has L1 {l1}", k as i64 - 3280))?;
    }
    Ok(format!("{} points within [-{extent}, {extent}], unit steps", points.len()))
}

fn generator_envelope() -> Outcome {
    let mut count = 0;
    for d in 2..=5usize {
        for s in 2..=5u32 {
            if pow(s, d as u32) > 10_000 {
                continue;
            }
            let path = make_serpentine_path(d, s).map_err(|e| e.to_string())?;
            let class = validate_path(&path).map_err(|e| format!("d={d} s={s}: {e}"))?;
            let expect_diagonal = s % 2 == 1;
            ensure(class.is_diagonal() == expect_diagonal, || {
                format!("d={d} s={s}: class {class} does not match parity")
            })?;
            if let CellClass::AdjacentCorners { .. } = class {
                ensure(s % 2 == 0, || format!("d={d} s={s}: adjacent corners for odd side"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (d, s) pairs valid with parity-matched corners"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("isotropy tables", isotropy),
        ("z-curve unit-gap displacement", zcurve_unit_gap),
        ("continuity", continuity),
        ("roundtrips", roundtrips),
        ("self-similarity", self_similarity),
        ("scaling identity", scaling),
        ("E''/F coherence", coherence),
        ("dimension-reduction shape", dimension_reduction),
        ("centered spreading", centered_spread),
        ("generator envelope", generator_envelope),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
