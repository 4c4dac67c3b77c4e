use super::correlation::{correlation_sum, CorrelationMode, PackedSequence};
use super::{CodeFamily, CompleteComplementaryCode, Sequence};
use crate::error::{Error, Result};

/// Sylvester-type Hadamard matrix, `H[a][b] = (-1)^popcount(a & b)`.
pub fn sylvester_hadamard(order: usize) -> Result<Vec<Vec<i8>>> {
    if !order.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(order));
    }
    Ok((0..order)
        .map(|a| {
            (0..order)
                .map(|b| if (a & b).count_ones() % 2 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect())
}

/// Builds the binary `(N, N, N^2)` complete complementary code
///
/// ```text
/// family i, member j, chip u*N + v  =  H[i][u] * H[j][v] * H[u][v]
/// ```
///
/// with `H` the Sylvester Hadamard matrix of order `N`. The result is
/// exhaustively validated before it is returned; `A = N^3`.
pub fn generate_ccc(order: usize) -> Result<CompleteComplementaryCode> {
    let h = sylvester_hadamard(order)?;
    let families = (0..order)
        .map(|i| {
            let members = (0..order)
                .map(|j| {
                    let chips = (0..order * order)
                        .map(|t| {
                            let (u, v) = (t / order, t % order);
                            h[i][u] * h[j][v] * h[u][v]
                        })
                        .collect();
                    Sequence::new(chips)
                })
                .collect::<Result<Vec<_>>>()?;
            CodeFamily::new(i, members)
        })
        .collect::<Result<Vec<_>>>()?;
    let code = CompleteComplementaryCode::from_families(families)?;

    let report = validate_ccc(&code);
    if !report.passed {
        return Err(Error::ConstructionFailed(format!(
            "{:?}",
            report.first_violation
        )));
    }
    let expected = (order * order * order) as i64;
    if report.amplitude != expected {
        return Err(Error::ConstructionFailed(format!(
            "amplitude {} != {expected}",
            report.amplitude
        )));
    }
    Ok(code)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub family_a: usize,
    pub family_b: usize,
    pub shift: isize,
    pub value: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CccValidation {
    pub passed: bool,
    /// Measured zero-shift peak of family 0 against itself.
    pub amplitude: i64,
    pub pairs_checked: usize,
    pub shifts_checked: usize,
    pub first_violation: Option<Violation>,
}

/// Checks the aperiodic correlation-sum property for every family pair and
/// every shift in `-(l-1)..=(l-1)`: the sum must be `A` when the families
/// match at zero shift and 0 everywhere else.
pub fn validate_ccc(code: &CompleteComplementaryCode) -> CccValidation {
    let (m, _, l) = code.params();
    let span = l as isize - 1;
    let shifts_checked = 2 * l - 1;

    let packed: Option<Vec<Vec<PackedSequence>>> = code
        .families()
        .iter()
        .map(|f| f.members().iter().map(PackedSequence::new).collect())
        .collect();

    let sum = |i: usize, k: usize, shift: isize| -> i64 {
        match &packed {
            Some(p) => p[i]
                .iter()
                .zip(&p[k])
                .map(|(a, b)| a.aperiodic(b, shift).expect("equal lengths"))
                .sum(),
            None => correlation_sum(
                code.family(i),
                code.family(k),
                shift,
                CorrelationMode::Aperiodic,
            )
            .expect("shape checked at construction"),
        }
    };

    let amplitude = sum(0, 0, 0);
    let mut first_violation = None;
    'outer: for i in 0..m {
        for k in 0..m {
            for shift in -span..=span {
                let expected = if i == k && shift == 0 { amplitude } else { 0 };
                let value = sum(i, k, shift);
                if value != expected {
                    first_violation = Some(Violation {
                        family_a: i,
                        family_b: k,
                        shift,
                        value,
                        expected,
                    });
                    break 'outer;
                }
            }
        }
    }
    CccValidation {
        passed: first_violation.is_none() && amplitude > 0,
        amplitude,
        pairs_checked: m * m,
        shifts_checked,
        first_violation,
    }
}
