use super::{amplitude, CarrierVector, SlotGrid, SymbolStream};
use crate::error::{Error, Result};

fn check_streams(grid: &SlotGrid, streams: &[SymbolStream]) -> Result<()> {
    if streams.len() != grid.channels() {
        return Err(Error::StreamCount {
            expected: grid.channels(),
            actual: streams.len(),
        });
    }
    Ok(())
}

/// `Σ_i Σ_k amplitude(x_k^(i)) · template(slot_of(i, k))`.
///
/// Stream `i` of the slice is sent on channel `i`. Symbols sharing a slot
/// superpose; that is how the grid behaves past capacity.
pub fn spread(grid: &SlotGrid, streams: &[SymbolStream]) -> Result<CarrierVector> {
    check_streams(grid, streams)?;
    let mut amps = vec![vec![0.0; grid.lane_len()]; grid.families()];
    for (i, stream) in streams.iter().enumerate() {
        for (k, &x) in stream.symbols().iter().enumerate() {
            let slot = grid.slot_of(i, k)?;
            amps[slot.family][slot.shift] += amplitude(x)?;
        }
    }
    Ok(grid.synthesize(&amps))
}

/// Reference implementation of [`spread`]: adds one template per symbol.
pub fn spread_direct(grid: &SlotGrid, streams: &[SymbolStream]) -> Result<CarrierVector> {
    check_streams(grid, streams)?;
    let mut out = vec![0.0; grid.period()];
    for (i, stream) in streams.iter().enumerate() {
        for (k, &x) in stream.symbols().iter().enumerate() {
            let a = amplitude(x)?;
            let template = grid.template(grid.slot_of(i, k)?)?;
            for (o, t) in out.iter_mut().zip(template.values()) {
                *o += a * t;
            }
        }
    }
    Ok(CarrierVector::new(out))
}

/// Matched-filter outputs `⟨carrier, template(slot_of(channel, k))⟩` for
/// `k = 0..count`.
pub fn despread(
    grid: &SlotGrid,
    carrier: &CarrierVector,
    channel: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let bank = grid.correlate_all(carrier)?;
    (0..count)
        .map(|k| grid.slot_of(channel, k).map(|s| bank[s.family][s.shift]))
        .collect()
}

/// Reference implementation of [`despread`] by explicit inner products.
pub fn despread_direct(
    grid: &SlotGrid,
    carrier: &CarrierVector,
    channel: usize,
    count: usize,
) -> Result<Vec<f64>> {
    if carrier.len() != grid.period() {
        return Err(Error::CarrierLength {
            expected: grid.period(),
            actual: carrier.len(),
        });
    }
    (0..count)
        .map(|k| Ok(carrier.dot(&grid.template(grid.slot_of(channel, k)?)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modem::{decide, Slot};
    use crate::seqlib::{
        generate_ccc, generate_gold, generate_msequence, CompleteComplementaryCode, LfsrSpec,
    };
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(order: usize, d: usize, channels: usize) -> SlotGrid {
        SlotGrid::new(generate_ccc(order).unwrap(), d, channels).unwrap()
    }

    fn random_streams(rng: &mut ChaCha8Rng, channels: usize, len: usize) -> Vec<SymbolStream> {
        (0..channels)
            .map(|i| {
                SymbolStream::new(i, (0..len).map(|_| rng.random_range(0..16)).collect()).unwrap()
            })
            .collect()
    }

    fn assert_close(a: &[f64], b: &[f64], rel: f64) {
        assert_eq!(a.len(), b.len());
        let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= rel * scale, "{x} vs {y}");
        }
    }

    #[test]
    fn single_symbol_is_scaled_template() {
        let g = grid(2, 1, 1);
        let carrier = spread(&g, &[SymbolStream::new(0, vec![15]).unwrap()]).unwrap();
        let expected = g
            .template(Slot {
                family: 0,
                shift: 0,
            })
            .unwrap()
            .scaled(7.5);
        assert_close(carrier.values(), expected.values(), 1e-12);
    }

    #[test]
    fn stream_count_checked() {
        let g = grid(2, 1, 2);
        let one = SymbolStream::new(0, vec![1]).unwrap();
        assert!(matches!(
            spread(&g, &[one]),
            Err(Error::StreamCount {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn colliding_symbols_superpose() {
        // d = 4 on a (2,2,4) grid sends k = 0 and k = 2 to the same slot.
        let g = grid(2, 4, 1);
        assert_eq!(g.slot_of(0, 0).unwrap(), g.slot_of(0, 2).unwrap());
        let both = spread(&g, &[SymbolStream::new(0, vec![3, 9, 12]).unwrap()]).unwrap();
        let t0 = g.template(g.slot_of(0, 0).unwrap()).unwrap();
        let t1 = g.template(g.slot_of(0, 1).unwrap()).unwrap();
        let expected = &(&t0 * (-4.5 + 4.5)) + &(&t1 * 1.5);
        assert_close(both.values(), expected.values(), 1e-12);
    }

    #[test]
    fn full_load_small_grid_recovers_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = grid(2, 1, 2);
        let streams = random_streams(&mut rng, 2, 4);
        let carrier = spread(&g, &streams).unwrap();
        for (i, s) in streams.iter().enumerate() {
            let raw = despread(&g, &carrier, i, 4).unwrap();
            let raw_direct = despread_direct(&g, &carrier, i, 4).unwrap();
            assert_close(&raw, &raw_direct, 1e-12);
            for (r, &x) in raw.iter().zip(s.symbols()) {
                assert!((r - 8.0 * amplitude(x).unwrap()).abs() < 1e-9);
                assert_eq!(decide(*r, 1.0, 8.0), x);
            }
        }
    }

    #[test]
    fn single_symbol_only_lights_its_slot() {
        let g = grid(2, 1, 1);
        for q in 0..2 {
            for r in 0..4 {
                let slot = Slot {
                    family: q,
                    shift: r,
                };
                let carrier = g.template(slot).unwrap().scaled(amplitude(12).unwrap());
                let bank = g.correlate_all(&carrier).unwrap();
                for (fq, row) in bank.iter().enumerate() {
                    for (fr, &v) in row.iter().enumerate() {
                        let expected = if (fq, fr) == (q, r) { 8.0 * 4.5 } else { 0.0 };
                        assert!((v - expected).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_carrier_gives_zero() {
        let g = grid(4, 1, 1);
        let raw = despread(&g, &CarrierVector::zeros(g.period()), 0, 64).unwrap();
        assert!(raw.iter().all(|&v| v.abs() < 1e-12));
        assert!(despread(&g, &CarrierVector::zeros(3), 0, 1).is_err());
    }

    #[test]
    fn default_grid_full_load_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4096);
        let g = grid(16, 1, 1);
        let streams = random_streams(&mut rng, 1, 4096);
        let carrier = spread(&g, &streams).unwrap();
        let raw = despread(&g, &carrier, 0, 4096).unwrap();
        let decoded: Vec<u8> = raw.iter().map(|&r| decide(r, 1.0, g.peak())).collect();
        assert_eq!(decoded, streams[0].symbols());
        let worst = raw
            .iter()
            .zip(streams[0].symbols())
            .map(|(r, &x)| (r - 4096.0 * amplitude(x).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "worst deviation {worst}");
    }

    #[test]
    fn msequence_baseline_isi_is_minus_sum_of_others() {
        let seq = generate_msequence(&LfsrSpec::new(7, 0b10001001, 1)).unwrap();
        let g = SlotGrid::new(CompleteComplementaryCode::single(seq), 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let streams = random_streams(&mut rng, 1, 40);
        let amps: Vec<f64> = streams[0]
            .symbols()
            .iter()
            .map(|&x| amplitude(x).unwrap())
            .collect();
        let total: f64 = amps.iter().sum();
        let carrier = spread(&g, &streams).unwrap();
        let raw = despread(&g, &carrier, 0, 40).unwrap();
        for (r, a) in raw.iter().zip(&amps) {
            // raw = 127·a - (total - a)
            assert!((r - (127.0 * a - (total - a))).abs() < 1e-9);
        }
    }

    #[test]
    fn gold_baseline_interference_matches_sidelobes() {
        let a = LfsrSpec::new(5, 0b100101, 1);
        let b = LfsrSpec::new(5, 0b111101, 1);
        let seq = generate_gold(&a, &b, 3).unwrap();
        let g = SlotGrid::new(CompleteComplementaryCode::single(seq.clone()), 1, 1).unwrap();
        let t0 = g
            .template(Slot {
                family: 0,
                shift: 0,
            })
            .unwrap();
        let carrier = t0.scaled(2.0);
        let raw = despread(&g, &carrier, 0, 31).unwrap();
        for (k, r) in raw.iter().enumerate() {
            let sidelobe =
                crate::seqlib::periodic_correlation(&seq, &seq, k as isize, 31).unwrap() as f64;
            assert!((r - 2.0 * sidelobe).abs() < 1e-9);
        }
    }

    fn small_case() -> impl Strategy<Value = (usize, usize, usize, u64, usize)> {
        // (order, d, channels, seed, symbols per channel)
        prop_oneof![Just(1usize), Just(2), Just(4)].prop_flat_map(|order| {
            (
                Just(order),
                1usize..4,
                1usize..=order,
                any::<u64>(),
                0usize..40,
            )
        })
    }

    proptest! {
        #[test]
        fn fast_paths_match_direct_oracle((order, d, channels, seed, len) in small_case()) {
            let g = grid(order, d, channels);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let streams = random_streams(&mut rng, channels, len);
            let fast = spread(&g, &streams).unwrap();
            let direct = spread_direct(&g, &streams).unwrap();
            assert_close(fast.values(), direct.values(), 1e-9);
            let noisy = crate::modem::add_noise(&direct, 3.0, seed);
            for i in 0..channels {
                let a = despread(&g, &noisy, i, len + 3).unwrap();
                let b = despread_direct(&g, &noisy, i, len + 3).unwrap();
                assert_close(&a, &b, 1e-9);
            }
        }

        #[test]
        fn despread_is_linear(seed in any::<u64>(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let g = grid(4, 1, 2);
            let u = crate::modem::add_noise(&CarrierVector::zeros(g.period()), 1.0, seed);
            let v = crate::modem::add_noise(&CarrierVector::zeros(g.period()), 1.0, seed ^ 0xdead);
            let mix = &(&u * a) + &(&v * b);
            let lhs = despread(&g, &mix, 1, 64).unwrap();
            let du = despread(&g, &u, 1, 64).unwrap();
            let dv = despread(&g, &v, 1, 64).unwrap();
            let rhs: Vec<f64> = du.iter().zip(&dv).map(|(x, y)| a * x + b * y).collect();
            assert_close(&lhs, &rhs, 1e-9);
        }
    }
}
