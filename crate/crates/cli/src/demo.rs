//! Human-readable transcript of the classic counterexamples: the basis trace
//! over H depends on the basis, it is not cyclic, absolute diagonal sums do not
//! control the trace norm over R, and dimension 2 admits measures that no state
//! induces.

use std::fmt::Write as _;

use gleason_lab::error::Result;
use gleason_lab::gleason::dim2_counterexample_in;
use gleason_lab::linalg::{LabRng, OrthonormalBasis};
use gleason_lab::scalar::{Algebra, Quaternion};
use gleason_lab::trace::{absolute_diagonal_sum, trace_n, trace_norm, witness};

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub sections: Vec<Section>,
}

impl Transcript {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "== {}", s.title);
            for l in &s.lines {
                let _ = writeln!(out, "   {l}");
            }
            out.push('\n');
        }
        out
    }
}

/// Deterministic: random bases come from a fixed seed.
pub fn demo_counterexamples() -> Result<Transcript> {
    let mut sections = Vec::new();

    let a = witness::left_j();
    let one = OrthonormalBasis::standard(1, Algebra::Quaternion);
    let i = one.right_scaled(Quaternion::I);
    sections.push(Section {
        title: "(A) the basis trace over H depends on the basis".into(),
        lines: vec![
            "A = left multiplication by j on H^1".into(),
            format!("trace over {{1}} = {}", trace_n(&a, &one)?),
            format!("trace over {{i}} = {}", trace_n(&a, &i)?),
        ],
    });

    let (a, b) = witness::noncyclic_pair();
    let (ab, ba) = ((&a * &b).diagonal_sum(), (&b * &a).diagonal_sum());
    sections.push(Section {
        title: "(B) the trace over H is not cyclic".into(),
        lines: vec![
            "A = diag(i, 0), B = diag(j, 0)".into(),
            format!("tr(AB) = {ab}"),
            format!("tr(BA) = {ba}"),
            format!("real parts: {} and {}", ab.re(), ba.re()),
        ],
    });

    let mut rng = LabRng::seed_from(0xC0FFEE);
    let mut lines =
        vec!["A = m blocks [[0, -1], [1, 0]] on R^(2m), so A* = -A, AA = -I, |A| = I".into()];
    for m in 1..=8 {
        let a = witness::antisymmetric_blocks(m);
        let n = 2 * m;
        let standard = absolute_diagonal_sum(&a, &OrthonormalBasis::standard(n, Algebra::Real))?;
        let random = absolute_diagonal_sum(&a, &rng.basis(n, Algebra::Real))?;
        lines.push(format!(
            "m = {m}: |A|_1 = {:.12}, sum |<u|Au>| = {standard:.3e} (standard basis), {random:.3e} (random basis)",
            trace_norm(&a)?
        ));
    }
    sections.push(Section {
        title: "(C) over R the absolute diagonal sum misses the trace norm".into(),
        lines,
    });

    let (_, cert) = dim2_counterexample_in(Algebra::Complex);
    sections.push(Section {
        title: "(D) dimension 2: an additive measure no state induces".into(),
        lines: vec![
            "mu(P) = (1 + n_z^3)/2 on rank-one P with Bloch vector n, mu(0) = 0, mu(I) = 1".into(),
            format!(
                "max |mu(P) + mu(I - P) - 1| over {} pairs = {:.3e}",
                cert.additivity_pairs, cert.max_additivity_error
            ),
            format!(
                "best affine trace-form fit misses {} probes by up to {:.4}",
                cert.fit_probes, cert.fit_max_error
            ),
            format!(
                "reconstruction: {}",
                cert.reconstruction_error.as_deref().unwrap_or("succeeded")
            ),
        ],
    });

    Ok(Transcript { sections })
}
