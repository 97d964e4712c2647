//! The property table: every check the harness knows, with its statement,
//! default tolerance and the cells where it applies.

use gleason_lab::error::Result;
use gleason_lab::gleason::DensityOperator;
use gleason_lab::gleason::{
    convex_split, dim2_counterexample_in, is_extremal, lemma_sampler, measure_from_state,
    random_decomposition, random_pure_state, random_state, random_state_of_rank, reconstruct_state,
};
use gleason_lab::linalg::{LabRng, Matrix, OrthonormalBasis};
use gleason_lab::quantum::{
    expectation, outcome_measure, pvm_of, refinement_study, std_deviation, symmetry_duality_gap,
    Observable, OneParameterGroup, Symmetry,
};
use gleason_lab::scalar::{Algebra, Quaternion};
use gleason_lab::trace::{
    absolute_diagonal_sum, check_norm_inequalities, quaternionic_trace_formula_check, real_trace,
    real_trace_cyclic_gap, realification_check, trace_n, trace_norm, witness,
};

/// One `(algebra, dim, seed)` coordinate of a run.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub algebra: Algebra,
    pub dim: usize,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Measured {
        residual: f64,
        observed: Option<f64>,
        note: Option<String>,
    },
    Skipped(&'static str),
}

impl Outcome {
    fn residual(residual: f64) -> Self {
        Outcome::Measured {
            residual,
            observed: None,
            note: None,
        }
    }

    fn observed(residual: f64, observed: f64) -> Self {
        Outcome::Measured {
            residual,
            observed: Some(observed),
            note: None,
        }
    }
}

/// Residual reported when a check could not be evaluated; finite so that JSON round trips.
pub const FAILED_RESIDUAL: f64 = f64::MAX;

pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    pub tolerance: f64,
    run: fn(&Cell, &mut LabRng) -> Result<Outcome>,
}

impl Property {
    /// Errors become failing records; non-finite residuals are pinned to [`FAILED_RESIDUAL`].
    pub fn evaluate(&self, cell: &Cell) -> Outcome {
        let mut rng = LabRng::seed_from(cell_seed(self.name, cell));
        match (self.run)(cell, &mut rng) {
            Ok(Outcome::Measured {
                residual,
                observed,
                note,
            }) => Outcome::Measured {
                residual: if residual.is_finite() {
                    residual
                } else {
                    FAILED_RESIDUAL
                },
                observed: observed.filter(|v| v.is_finite()),
                note,
            },
            Ok(skip) => skip,
            Err(e) => Outcome::Measured {
                residual: FAILED_RESIDUAL,
                observed: None,
                note: Some(e.to_string()),
            },
        }
    }
}

/// Independent stream per (property, cell), stable across releases.
fn cell_seed(name: &str, cell: &Cell) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = name
        .bytes()
        .chain(cell.algebra.symbol().bytes())
        .chain((cell.dim as u64).to_le_bytes());
    for b in bytes {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ cell.seed.rotate_left(32)
}

pub fn find(name: &str) -> Option<&'static Property> {
    PROPERTIES.iter().find(|p| p.name == name)
}

pub static PROPERTIES: &[Property] = &[
    Property {
        name: "trace.real_basis_invariance",
        statement: "the real part of the basis trace is the same in every orthonormal basis, and the whole trace is for Hermitian operators",
        tolerance: 1e-9,
        run: real_basis_invariance,
    },
    Property {
        name: "trace.real_cyclicity",
        statement: "tr^R(AB) = tr^R(BA) for all operators A, B",
        tolerance: 1e-9,
        run: real_cyclicity,
    },
    Property {
        name: "trace.norm_inequalities",
        statement: "|AB|_1 and |BA|_1 are at most |A|_1 |B|, |A*|_1 = |A|_1 and |A| <= |A|_1",
        tolerance: 1e-9,
        run: norm_inequalities,
    },
    Property {
        name: "trace.absolute_sum_bound",
        statement: "the sum of |<u|Au>| over any orthonormal basis is at most |A|_1",
        tolerance: 1e-9,
        run: absolute_sum_bound,
    },
    Property {
        name: "trace.adapted_basis_formula",
        statement: "on a basis adapted to J and a unit imaginary u, tr_N(A) = tr^R(A) + (u/2)|A - A*|_1",
        tolerance: 1e-8,
        run: adapted_basis_formula,
    },
    Property {
        name: "trace.realification",
        statement: "the trace norm and real trace of a quaternionic operator are a quarter of those of its realification",
        tolerance: 1e-9,
        run: realification,
    },
    Property {
        name: "gleason.round_trip",
        statement: "in dimension at least 3 the frame function of a state-induced measure reconstructs the state",
        tolerance: 1e-8,
        run: round_trip,
    },
    Property {
        name: "gleason.sigma_additivity",
        statement: "a state-induced measure is additive on orthogonal decompositions of the identity and takes values in [0, 1]",
        tolerance: 1e-9,
        run: sigma_additivity,
    },
    Property {
        name: "gleason.extremality",
        statement: "a state is extremal exactly when it is a rank-one projector, and every other state splits into two distinct states",
        tolerance: 1e-10,
        run: extremality,
    },
    Property {
        name: "gleason.convex_unit_lemma",
        statement: "if sum p = sum p q = 1 with p in (0, 1) and q in [0, 1] then every q equals 1",
        tolerance: 1e-6,
        run: convex_unit_lemma,
    },
    Property {
        name: "quantum.pvm_laws",
        statement: "spectral projectors are orthogonal, sum to the identity and satisfy P(E)P(F) = P(E and F)",
        tolerance: 1e-8,
        run: pvm_laws,
    },
    Property {
        name: "quantum.expectation_duality",
        statement: "tr^R(AT) equals the mean of the outcome distribution of A in the state T",
        tolerance: 1e-8,
        run: expectation_duality,
    },
    Property {
        name: "quantum.deviation_duality",
        statement: "the operator and distribution formulas for the standard deviation agree",
        tolerance: 1e-8,
        run: deviation_duality,
    },
    Property {
        name: "quantum.symmetry_duality",
        statement: "tr^R(A U B U^-1) = tr^R(U^-1 A U B) for unitary U and, over C, anti-unitary U",
        tolerance: 1e-9,
        run: symmetry_duality,
    },
    Property {
        name: "quantum.unitary_image",
        statement: "U T U^-1 is a state for every state T and unitary U",
        tolerance: 1e-9,
        run: unitary_image,
    },
    Property {
        name: "quantum.group_law",
        statement: "a one-parameter group built from a Hermitian generator satisfies U(t + s) = U(t) U(s)",
        tolerance: 1e-9,
        run: group_law,
    },
    Property {
        name: "quantum.continuity_refinement",
        statement: "the largest adjacent jump of t -> tr^R(A U(t) B U(t)^-1) halves when the sampling step halves",
        tolerance: 0.05,
        run: continuity_refinement,
    },
    Property {
        name: "counterexample.basis_dependent_trace",
        statement: "left multiplication by j on H^n has trace n j in the standard basis and -n j in the basis scaled by i",
        tolerance: 1e-12,
        run: basis_dependent_trace,
    },
    Property {
        name: "counterexample.noncyclic_trace",
        statement: "diag(i, 0, ...) and diag(j, 0, ...) have tr(AB) = k and tr(BA) = -k while the real parts agree",
        tolerance: 1e-12,
        run: noncyclic_trace,
    },
    Property {
        name: "counterexample.real_absolute_sum",
        statement: "over R the antisymmetric block operator has |A|_1 = n while sum |<u|Au>| vanishes in every basis",
        tolerance: 1e-10,
        run: real_absolute_sum,
    },
    Property {
        name: "counterexample.dim2_measure",
        statement: "in dimension 2 the Bloch-cubic measure is additive on orthogonal pairs yet no state induces it",
        tolerance: 1e-12,
        run: dim2_measure,
    },
];

const DIM_GT_2: &str = "dim>2 required";
const DIM_GT_1: &str = "dim>1 required";
const DIM_EQ_2: &str = "dim=2 required";
const EVEN_DIM: &str = "even dim required";
const ONLY_H: &str = "algebra H required";
const ONLY_R: &str = "algebra R required";

/// Worst residual over `cell.trials` draws; a NaN sticks.
fn trials(cell: &Cell, mut f: impl FnMut() -> Result<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..cell.trials {
        let r = f()?;
        if r.is_nan() || r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

fn real_basis_invariance(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let a = rng.matrix(n, n, alg);
        let h = rng.hermitian(n, alg);
        let (b1, b2) = (rng.basis(n, alg), rng.basis(n, alg));
        let real = (trace_n(&a, &b1)?.re() - trace_n(&a, &b2)?.re()).abs();
        let full = (trace_n(&h, &b1)? - trace_n(&h, &b2)?).norm();
        Ok(real.max(full))
    })?;
    Ok(Outcome::residual(worst))
}

fn real_cyclicity(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        real_trace_cyclic_gap(&rng.matrix(n, n, alg), &rng.matrix(n, n, alg))
    })?;
    Ok(Outcome::residual(worst))
}

fn norm_inequalities(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        Ok(
            check_norm_inequalities(&rng.matrix(n, n, alg), &rng.matrix(n, n, alg))?
                .worst_violation(),
        )
    })?;
    Ok(Outcome::residual(worst))
}

fn absolute_sum_bound(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let a = rng.matrix(n, n, alg);
        let basis = rng.basis(n, alg);
        Ok((absolute_diagonal_sum(&a, &basis)? - trace_norm(&a)?).max(0.0))
    })?;
    Ok(Outcome::residual(worst))
}

fn adapted_basis_formula(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    if cell.algebra != Algebra::Quaternion {
        return Ok(Outcome::Skipped(ONLY_H));
    }
    let n = cell.dim;
    let mut k = 0;
    let worst = trials(cell, || {
        let a = rng.matrix(n, n, Algebra::Quaternion);
        let imaginary = match k % 3 {
            0 => Quaternion::I,
            1 => Quaternion::J,
            _ => rng.unit_imaginary(),
        };
        k += 1;
        let report = quaternionic_trace_formula_check(&a, imaginary)?;
        // normalized so that the tolerance 1e-8 (1 + |A|_1) becomes 1e-8
        Ok(report.residual * 1e-8 / report.tolerance)
    })?;
    Ok(Outcome::residual(worst))
}

fn realification(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    if cell.algebra != Algebra::Quaternion {
        return Ok(Outcome::Skipped(ONLY_H));
    }
    let n = cell.dim;
    let worst = trials(cell, || {
        Ok(realification_check(&rng.matrix(n, n, Algebra::Quaternion))?.residual())
    })?;
    Ok(Outcome::residual(worst))
}

fn round_trip(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    if cell.dim < 3 {
        return Ok(Outcome::Skipped(DIM_GT_2));
    }
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let t = random_state(rng, n, alg);
        let back = reconstruct_state(&measure_from_state(&t).frame_function(), n, alg)?;
        Ok(back.matrix().max_abs_entry_diff(t.matrix()))
    })?;
    Ok(Outcome::residual(worst))
}

fn sigma_additivity(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let mu = measure_from_state(&random_state(rng, n, alg));
        let values: Vec<f64> = random_decomposition(rng, n, alg)
            .iter()
            .map(|p| mu.evaluate(p))
            .collect();
        let out_of_range = values.iter().map(|v| (-v).max(v - 1.0)).fold(0.0, f64::max);
        Ok((values.iter().sum::<f64>() - 1.0).abs().max(out_of_range))
    })?;
    Ok(Outcome::residual(worst))
}

fn extremality(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    if cell.dim < 2 {
        return Ok(Outcome::Skipped(DIM_GT_1));
    }
    let (n, alg) = (cell.dim, cell.algebra);
    let mut misclassified = 0usize;
    let worst = trials(cell, || {
        if !is_extremal(&random_pure_state(rng, n, alg)) {
            misclassified += 1;
        }
        let k = rng.int_in(2, n);
        let t = random_state_of_rank(rng, n, k, alg);
        match convex_split(&t)? {
            Some(split) if split.first.matrix().distance(split.second.matrix()) > 1e-6 => {
                Ok(split.residual(&t))
            }
            _ => {
                misclassified += 1;
                Ok(0.0)
            }
        }
    })?;
    if misclassified > 0 {
        return Ok(Outcome::Measured {
            residual: FAILED_RESIDUAL,
            observed: Some(misclassified as f64),
            note: Some(format!("{misclassified} states misclassified")),
        });
    }
    Ok(Outcome::residual(worst))
}

fn convex_unit_lemma(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let report = lemma_sampler(
        100 * cell.trials,
        (rng.uniform() * 2f64.powi(53)) as u64,
        1e-6,
    );
    Ok(Outcome::Measured {
        residual: report.max_deviation,
        observed: Some(report.hits as f64),
        note: Some(format!(
            "{} hits in {} draws, {} violations",
            report.hits, report.draws, report.violations
        )),
    })
}

/// Hermitian matrix with deliberately repeated eigenvalues.
fn degenerate_observable(rng: &mut LabRng, n: usize, alg: Algebra) -> Result<Observable> {
    let u = rng.unitary(n, alg);
    let values: Vec<f64> = (0..n).map(|_| rng.int_in(0, 3) as f64 - 1.5).collect();
    let d = Matrix::real_diagonal(&values, alg);
    Observable::new((&(&u * &d) * &u.adjoint()).hermitian_part())
}

fn pvm_laws(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let a = degenerate_observable(rng, n, alg)?;
        let pvm = pvm_of(&a);
        let mut worst = pvm.completeness_defect().max(pvm.orthogonality_defect());
        let values: Vec<f64> = pvm.atoms().iter().map(|atom| atom.eigenvalue).collect();
        let e: Vec<f64> = values
            .iter()
            .copied()
            .filter(|_| rng.uniform() < 0.5)
            .collect();
        let f: Vec<f64> = values
            .iter()
            .copied()
            .filter(|_| rng.uniform() < 0.5)
            .collect();
        let pe = pvm.projector_of(|s| e.contains(&s));
        let pf = pvm.projector_of(|s| f.contains(&s));
        let pef = pvm.projector_of(|s| e.contains(&s) && f.contains(&s));
        let pe_or_f = pvm.projector_of(|s| e.contains(&s) || f.contains(&s));
        worst = worst.max((pe.matrix() * pf.matrix()).distance(pef.matrix()));
        // P(E or F) = P(E) + P(F) - P(E and F)
        let sum = &(pe.matrix() + pf.matrix()) - pef.matrix();
        Ok(worst.max(sum.distance(pe_or_f.matrix())))
    })?;
    Ok(Outcome::residual(worst))
}

fn observable_and_state(rng: &mut LabRng, cell: &Cell) -> Result<(Observable, DensityOperator)> {
    let a = Observable::new(rng.hermitian(cell.dim, cell.algebra))?;
    Ok((a, random_state(rng, cell.dim, cell.algebra)))
}

fn expectation_duality(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let worst = trials(cell, || {
        let (a, t) = observable_and_state(rng, cell)?;
        let m = outcome_measure(&a, &t)?;
        Ok((expectation(&a, &t)? - m.mean())
            .abs()
            .max((m.total() - 1.0).abs()))
    })?;
    Ok(Outcome::residual(worst))
}

fn deviation_duality(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let worst = trials(cell, || {
        let (a, t) = observable_and_state(rng, cell)?;
        Ok((std_deviation(&a, &t)? - outcome_measure(&a, &t)?.std_deviation()?).abs())
    })?;
    Ok(Outcome::residual(worst))
}

fn symmetry_duality(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let mut anti = false;
    let worst = trials(cell, || {
        let (a, b) = (rng.matrix(n, n, alg), rng.matrix(n, n, alg));
        let v = rng.unitary(n, alg);
        anti = !anti;
        let u = if anti && alg == Algebra::Complex {
            Symmetry::antiunitary(v)?
        } else {
            Symmetry::unitary(v)?
        };
        symmetry_duality_gap(&a, &b, &u)
    })?;
    Ok(Outcome::residual(worst))
}

fn unitary_image(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let t = random_state(rng, n, alg);
        let image = Symmetry::unitary(rng.unitary(n, alg))?.act_on_state(&t)?;
        Ok((real_trace(image.matrix())? - 1.0).abs())
    })?;
    Ok(Outcome::residual(worst))
}

fn group_law(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let worst = trials(cell, || {
        let g = OneParameterGroup::from_generator(&rng.hermitian(n, alg))?;
        let (t, s) = (rng.gaussian(), rng.gaussian());
        Ok(g.group_law_defect(t, s).max(g.at(t).unitary_defect()))
    })?;
    Ok(Outcome::residual(worst))
}

fn continuity_refinement(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    let (n, alg) = (cell.dim, cell.algebra);
    let mut last_ratio = f64::NAN;
    let worst = trials(cell, || {
        let a = rng.hermitian(n, alg);
        let b = random_state(rng, n, alg);
        let g = OneParameterGroup::from_generator(&rng.hermitian(n, alg))?;
        let reports = refinement_study(&a, &b, |t| g.at(t), 100, 3)?;
        if reports[0].max_jump < 1e-12 {
            // t -> g(t) is constant, nothing to refine
            return Ok(0.0);
        }
        Ok(reports
            .windows(2)
            .map(|w| {
                last_ratio = w[1].max_jump / w[0].max_jump;
                (last_ratio - 0.5).abs()
            })
            .fold(0.0, f64::max))
    })?;
    Ok(Outcome::Measured {
        residual: worst,
        observed: Some(last_ratio),
        note: None,
    })
}

fn basis_dependent_trace(cell: &Cell, _: &mut LabRng) -> Result<Outcome> {
    if cell.algebra != Algebra::Quaternion {
        return Ok(Outcome::Skipped(ONLY_H));
    }
    let n = cell.dim;
    let a = Matrix::scalar_diagonal(n, Quaternion::J);
    let standard = OrthonormalBasis::standard(n, Algebra::Quaternion);
    let t1 = trace_n(&a, &standard)?;
    let ti = trace_n(&a, &standard.right_scaled(Quaternion::I))?;
    let expected = Quaternion::J.scale(n as f64);
    let residual = (t1 - expected).norm().max((ti + expected).norm());
    Ok(Outcome::observed(residual, (t1 - ti).norm()))
}

fn noncyclic_trace(cell: &Cell, _: &mut LabRng) -> Result<Outcome> {
    if cell.algebra != Algebra::Quaternion {
        return Ok(Outcome::Skipped(ONLY_H));
    }
    if cell.dim < 2 {
        return Ok(Outcome::Skipped(DIM_GT_1));
    }
    let (a2, b2) = witness::noncyclic_pair();
    let pad = Matrix::zeros(cell.dim - 2, cell.dim - 2, Algebra::Quaternion);
    let a = Matrix::block_diagonal(&[a2, pad.clone()]);
    let b = Matrix::block_diagonal(&[b2, pad]);
    let ab = (&a * &b).diagonal_sum();
    let ba = (&b * &a).diagonal_sum();
    let residual = (ab - Quaternion::K)
        .norm()
        .max((ba + Quaternion::K).norm())
        .max((ab.re() - ba.re()).abs());
    Ok(Outcome::observed(residual, (ab - ba).norm()))
}

fn real_absolute_sum(cell: &Cell, rng: &mut LabRng) -> Result<Outcome> {
    if cell.algebra != Algebra::Real {
        return Ok(Outcome::Skipped(ONLY_R));
    }
    if !cell.dim.is_multiple_of(2) {
        return Ok(Outcome::Skipped(EVEN_DIM));
    }
    let n = cell.dim;
    let a = witness::antisymmetric_blocks(n / 2);
    let norm = trace_norm(&a)?;
    let sums = trials(cell, || {
        absolute_diagonal_sum(&a, &rng.basis(n, Algebra::Real))
    })?;
    Ok(Outcome::observed(
        sums.max((norm - n as f64).abs()),
        norm - sums,
    ))
}

fn dim2_measure(cell: &Cell, _: &mut LabRng) -> Result<Outcome> {
    if cell.dim != 2 {
        return Ok(Outcome::Skipped(DIM_EQ_2));
    }
    let (_, cert) = dim2_counterexample_in(cell.algebra);
    let separated = cert.fit_max_error > 0.05 && cert.reconstruction_error.is_some();
    Ok(Outcome::Measured {
        residual: if separated {
            cert.max_additivity_error
        } else {
            FAILED_RESIDUAL
        },
        observed: Some(cert.fit_max_error),
        note: cert.reconstruction_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_sorted_by_group() {
        let mut names: Vec<&str> = PROPERTIES.iter().map(|p| p.name).collect();
        names.dedup();
        assert_eq!(names.len(), PROPERTIES.len());
        assert!(PROPERTIES
            .iter()
            .all(|p| p.tolerance > 0.0 && !p.statement.is_empty()));
    }

    #[test]
    fn seeds_differ_between_properties_and_cells() {
        let cell = Cell {
            algebra: Algebra::Real,
            dim: 3,
            seed: 1,
            trials: 1,
        };
        let other = Cell { dim: 4, ..cell };
        assert_ne!(cell_seed("a", &cell), cell_seed("b", &cell));
        assert_ne!(cell_seed("a", &cell), cell_seed("a", &other));
    }

    #[test]
    fn real_witness_gap_is_the_dimension() {
        let cell = Cell {
            algebra: Algebra::Real,
            dim: 4,
            seed: 1,
            trials: 5,
        };
        match find("counterexample.real_absolute_sum")
            .unwrap()
            .evaluate(&cell)
        {
            Outcome::Measured {
                residual, observed, ..
            } => {
                assert!(residual < 1e-10);
                assert!((observed.unwrap() - 4.0).abs() < 1e-10);
            }
            other => panic!("{other:?}"),
        }
    }
}
