//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Each check compares library output against an oracle written here from
//! the defining formulas, not against the library's own fast paths.

use std::time::{Duration, Instant};

use ccstego::analysis::{run_p_vs_m, run_p_vs_n, run_psnr_sweep, SweepOptions};
use ccstego::imaging::{
    dct2, idct2, load_bmp, rgb_to_ycbcr, save_bmp, synthetic_cover, Plane, RgbImage,
};
use ccstego::modem::{
    despread, despread_direct, spread, spread_direct, CarrierVector, Slot, SlotGrid, SymbolStream,
};
use ccstego::seqlib::{
    aperiodic_correlation, correlation_sum, generate_ccc, generate_msequence, periodic_correlation,
    validate_ccc, CodeFamily, CompleteComplementaryCode, CorrelationMode, LfsrSpec, PackedSequence,
    Sequence,
};
use ccstego::stego::{Scheme, StegoCodec, StegoParams};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COVER_SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Zero-extended aperiodic correlation Σ_t a(t)·b(t−τ).
fn oracle_aperiodic(a: &[i8], b: &[i8], tau: isize) -> i64 {
    let at = |s: &[i8], i: isize| {
        if i < 0 || i as usize >= s.len() {
            0
        } else {
            i64::from(s[i as usize])
        }
    };
    (0..a.len() as isize)
        .map(|t| at(a, t) * at(b, t - tau))
        .sum()
}

fn oracle_periodic(a: &[i8], b: &[i8], tau: isize) -> i64 {
    let p = a.len() as isize;
    (0..p)
        .map(|t| i64::from(a[t as usize]) * i64::from(b[(t - tau).rem_euclid(p) as usize]))
        .sum()
}

fn family_sum(code: &CompleteComplementaryCode, i: usize, k: usize, tau: isize) -> i64 {
    code.family(i)
        .members()
        .iter()
        .zip(code.family(k).members())
        .map(|(a, b)| oracle_aperiodic(a.chips(), b.chips(), tau))
        .sum()
}

fn example_code() -> CompleteComplementaryCode {
    let fam = |i, a: &str, b: &str| {
        CodeFamily::new(
            i,
            vec![
                Sequence::from_signs(a).unwrap(),
                Sequence::from_signs(b).unwrap(),
            ],
        )
        .unwrap()
    };
    CompleteComplementaryCode::from_families(vec![fam(0, "-+--", "---+"), fam(1, "+---", "++-+")])
        .unwrap()
}

fn golden_vectors() -> Outcome {
    let code = example_code();
    let mut bad = Vec::new();
    for i in 0..2 {
        for k in 0..2 {
            for tau in -3..=3isize {
                let expected = if i == k && tau == 0 { 8 } else { 0 };
                let oracle = family_sum(&code, i, k, tau);
                let lib = correlation_sum(
                    code.family(i),
                    code.family(k),
                    tau,
                    CorrelationMode::Aperiodic,
                )
                .unwrap();
                if oracle != expected || lib != expected {
                    bad.push(format!("({i},{k},{tau}): oracle {oracle} lib {lib}"));
                }
            }
        }
    }
    let v = validate_ccc(&code);
    let pass = bad.is_empty() && v.passed && v.amplitude == 8;
    outcome(
        pass,
        format!("28 sums exact, A={}, mismatches {:?}", v.amplitude, bad),
    )
}

fn construction_validity() -> Outcome {
    let code = generate_ccc(16).unwrap();
    let v = validate_ccc(&code);
    // Independent exhaustive check by direct summation.
    let mut first_bad = None;
    'outer: for i in 0..16 {
        for k in 0..16 {
            for tau in -255..=255isize {
                let expected = if i == k && tau == 0 { 4096 } else { 0 };
                let got = family_sum(&code, i, k, tau);
                if got != expected {
                    first_bad = Some((i, k, tau, got));
                    break 'outer;
                }
            }
        }
    }
    let pass = v.passed
        && v.amplitude == 4096
        && v.pairs_checked == 256
        && v.shifts_checked == 511
        && first_bad.is_none();
    outcome(
        pass,
        format!(
            "(16,16,256): validator {} over {} pairs x {} shifts, A={}, oracle violation {:?}",
            v.passed, v.pairs_checked, v.shifts_checked, v.amplitude, first_bad
        ),
    )
}

fn zero_interference(cover: &RgbImage) -> Outcome {
    let planes = rgb_to_ycbcr(cover);
    let mut msg = vec![0u8; 2048];
    ChaCha8Rng::seed_from_u64(3).fill_bytes(&mut msg);
    msg[2047] |= 1;
    let mut details = Vec::new();
    let mut pass = true;
    for alpha in [0.01, 0.25, 4.0] {
        let mut p = StegoParams::new("zero-interference", 2048);
        p.alpha = alpha;
        let codec = StegoCodec::new(p).unwrap();
        let stego = codec.embed_planes(&planes, &msg).unwrap();
        let got = codec.extract_planes(&planes, &stego).unwrap().message();
        let collisions = codec.grid().collisions(&[4096]).unwrap();
        let ok = got == msg && collisions == 0;
        pass &= ok;
        details.push(format!(
            "alpha={alpha}: {}",
            if ok { "exact" } else { "MISMATCH" }
        ));
    }
    outcome(
        pass,
        format!("ccc M=1 N=2048 bypass; {}", details.join(", ")),
    )
}

fn sweep_options() -> SweepOptions {
    SweepOptions {
        trials: 10,
        master_seed: 1,
        bypass_quantization: false,
    }
}

fn p_vs_n(cover: &RgbImage) -> Outcome {
    let base = StegoParams::new("", 0);
    let ns = [100, 500, 1000, 1500, 2000];
    let s = run_p_vs_n(cover, &Scheme::ALL, &base, &ns, &sweep_options()).unwrap();
    let mut pass = true;
    let mut cells = Vec::new();
    for r in &s.rows {
        let ok = match r.scheme {
            Scheme::Ccc | Scheme::Mseq => r.mean_p >= 0.999,
            Scheme::Gold => r.n < 500 || r.mean_p < 0.9,
        };
        pass &= ok;
        cells.push(format!("{}@{}={:.3}", r.scheme, r.n, r.mean_p));
    }
    outcome(pass, cells.join(" "))
}

fn psnr_vs_n(cover: &RgbImage) -> Outcome {
    let base = StegoParams::new("", 0);
    let ns: Vec<usize> = (1..=20).map(|k| 100 * k).collect();
    let s = run_psnr_sweep(cover, &base, &ns, &sweep_options()).unwrap();
    let at = |n| s.rows.iter().find(|r| r.n == n).unwrap().mean_psnr_db;
    let (p600, p2000) = (at(600), at(2000));
    let drop = p2000 - p600;
    let monotone = s
        .rows
        .windows(2)
        .all(|w| w[1].mean_psnr_db <= w[0].mean_psnr_db);
    let pass = (p600 - 35.0).abs() <= 2.5 && (drop + 5.2).abs() <= 1.5 && monotone;
    outcome(
        pass,
        format!(
            "PSNR(600)={p600:.2} dB, PSNR(2000)-PSNR(600)={drop:.2} dB, non-increasing={monotone}"
        ),
    )
}

fn p_vs_m(cover: &RgbImage) -> Outcome {
    let base = StegoParams::new("", 0);
    let ms = [1, 2, 4, 8];
    let s = run_p_vs_m(cover, &Scheme::ALL, &base, 2000, &ms, &sweep_options()).unwrap();
    let p = |scheme: Scheme, m: usize| {
        s.rows
            .iter()
            .find(|r| r.scheme == scheme && r.m == m)
            .unwrap()
            .mean_p
    };
    let mut pass = true;
    let mut cells = Vec::new();
    for scheme in Scheme::ALL {
        let series: Vec<f64> = ms.iter().map(|&m| p(scheme, m)).collect();
        pass &= series.windows(2).all(|w| w[1] <= w[0]);
        cells.push(format!(
            "{scheme}=[{}]",
            series
                .iter()
                .map(|v| format!("{v:.3}"))
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    let dominates = ms.iter().all(|&m| p(Scheme::Ccc, m) >= p(Scheme::Gold, m));
    pass &= dominates;
    outcome(pass, format!("{} ccc>=gold={dominates}", cells.join(" ")))
}

fn numerical_infrastructure(cover: &RgbImage) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let plane = Plane::from_vec(
        512,
        512,
        (0..512 * 512)
            .map(|_| rng.random_range(0.0..255.0))
            .collect(),
    );
    let coeffs = dct2(&plane);
    let back = idct2(&coeffs);
    let round_trip = plane
        .data()
        .iter()
        .zip(back.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let parseval = ((coeffs.energy() - plane.energy()) / plane.energy()).abs();

    let bytes = save_bmp(cover);
    let reloaded = load_bmp(&bytes).unwrap();
    let bmp_exact = reloaded == *cover && save_bmp(&reloaded) == bytes;

    let m = generate_msequence(&LfsrSpec::DEGREE12_A).unwrap();
    let chips = m.chips();
    let two_valued = chips.len() == 4095
        && (0..4095isize).all(|s| {
            let v = oracle_periodic(chips, chips, s);
            v == if s == 0 { 4095 } else { -1 }
        });
    let lib_agrees = periodic_correlation(&m, &m, 1, 4095).unwrap() == -1;

    let pass = round_trip <= 1e-9 && parseval <= 1e-6 && bmp_exact && two_valued && lib_agrees;
    outcome(
        pass,
        format!(
            "DCT round trip {round_trip:.2e}, Parseval {parseval:.2e}, BMP bit-exact {bmp_exact}, m-sequence {{4095,-1}} over all shifts {two_valued}"
        ),
    )
}

fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Sequence {
    Sequence::new(
        (0..len)
            .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
            .collect(),
    )
    .unwrap()
}

fn relative_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

// Template by definition: lane j is member j of family q rotated right by r.
fn oracle_template(code: &CompleteComplementaryCode, slot: Slot) -> Vec<f64> {
    let (_, _, tau) = code.params();
    let mut out = Vec::new();
    for member in code.family(slot.family).members() {
        out.extend((0..tau).map(|u| f64::from(member.chips()[(u + tau - slot.shift) % tau])));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    // Packed correlation vs direct summation, integer-exact.
    let mut correlation_cases = 0;
    for _ in 0..300 {
        let len = rng.random_range(1..200);
        let (a, b) = (
            random_sequence(&mut rng, len),
            random_sequence(&mut rng, len),
        );
        let (pa, pb) = (
            PackedSequence::new(&a).unwrap(),
            PackedSequence::new(&b).unwrap(),
        );
        for _ in 0..10 {
            let tau = rng.random_range(-(len as i64) - 2..len as i64 + 2) as isize;
            let oracle = oracle_aperiodic(a.chips(), b.chips(), tau);
            if pa.aperiodic(&pb, tau).unwrap() != oracle
                || aperiodic_correlation(&a, &b, tau).unwrap() != oracle
            {
                failures.push(format!("aperiodic len {len} tau {tau}"));
            }
            let po = oracle_periodic(a.chips(), b.chips(), tau);
            if pa.periodic(&pb, tau, len).unwrap() != po
                || periodic_correlation(&a, &b, tau, len).unwrap() != po
            {
                failures.push(format!("periodic len {len} tau {tau}"));
            }
            correlation_cases += 1;
        }
    }

    // Full (2,2,4) template enumeration against the definition.
    let small = generate_ccc(2).unwrap();
    let grid = SlotGrid::new(small.clone(), 1, 2).unwrap();
    let slots: Vec<Slot> = (0..2)
        .flat_map(|q| {
            (0..4).map(move |r| Slot {
                family: q,
                shift: r,
            })
        })
        .collect();
    for &s in &slots {
        let t = grid.template(s).unwrap();
        if t.values() != oracle_template(&small, s).as_slice() {
            failures.push(format!("template {s:?}"));
        }
        for &u in &slots {
            let dot = t.dot(&CarrierVector::new(oracle_template(&small, u)));
            if dot != if s == u { 8.0 } else { 0.0 } {
                failures.push(format!("orthogonality {s:?} {u:?} = {dot}"));
            }
        }
    }

    // FFT spreading/despreading vs explicit template sums, random grids and loads.
    let mut modem_cases = 0;
    for order in [2usize, 4, 8] {
        let code = generate_ccc(order).unwrap();
        let tau = order * order;
        for _ in 0..20 {
            let channels = rng.random_range(1..=order);
            let d = rng.random_range(1..=3);
            let grid = SlotGrid::new(code.clone(), d, channels).unwrap();
            let len = rng.random_range(0..=2 * tau);
            let streams: Vec<SymbolStream> = (0..channels)
                .map(|i| {
                    SymbolStream::new(i, (0..len).map(|_| rng.random_range(0..16)).collect())
                        .unwrap()
                })
                .collect();
            let fast = spread(&grid, &streams).unwrap();
            let direct = spread_direct(&grid, &streams).unwrap();
            if !fast
                .values()
                .iter()
                .zip(direct.values())
                .all(|(a, b)| relative_close(*a, *b))
            {
                failures.push(format!("spread order {order} M {channels} d {d}"));
            }
            let carrier = CarrierVector::new(
                direct
                    .values()
                    .iter()
                    .map(|v| v + rng.random_range(-3.0..3.0))
                    .collect(),
            );
            for i in 0..channels {
                let f = despread(&grid, &carrier, i, len).unwrap();
                let o = despread_direct(&grid, &carrier, i, len).unwrap();
                if !f.iter().zip(&o).all(|(a, b)| relative_close(*a, *b)) {
                    failures.push(format!(
                        "despread order {order} M {channels} d {d} channel {i}"
                    ));
                }
            }
            modem_cases += 1;
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{correlation_cases} correlation cases, 8x8 (2,2,4) template pairs, {modem_cases} spread/despread grids; failures {:?}",
            &failures[..failures.len().min(5)]
        ),
    )
}

fn main() {
    let cover = synthetic_cover(512, 512, COVER_SEED);
    let criteria: Vec<Criterion<'_>> = vec![
        (
            1,
            "golden vectors",
            Duration::from_secs(1),
            Box::new(golden_vectors),
        ),
        (
            2,
            "construction validity",
            Duration::from_secs(60),
            Box::new(construction_validity),
        ),
        (
            3,
            "zero-interference theorem",
            Duration::from_secs(30),
            Box::new(|| zero_interference(&cover)),
        ),
        (
            4,
            "P vs N",
            Duration::from_secs(15 * 60),
            Box::new(|| p_vs_n(&cover)),
        ),
        (
            5,
            "PSNR vs N",
            Duration::from_secs(15 * 60),
            Box::new(|| psnr_vs_n(&cover)),
        ),
        (
            6,
            "P vs M",
            Duration::from_secs(20 * 60),
            Box::new(|| p_vs_m(&cover)),
        ),
        (
            7,
            "numerical infrastructure",
            Duration::from_secs(60),
            Box::new(|| numerical_infrastructure(&cover)),
        ),
        (
            8,
            "oracle equivalence",
            Duration::from_secs(120),
            Box::new(oracle_equivalence),
        ),
    ];

    let mut failed = 0;
    for (id, name, limit, check) in &criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id} [{name}]: {} ({:.2}s, limit {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
