use rustc_hash::{FxHashMap, FxHashSet};

use super::CollapseCertificate;
use crate::complex::CliqueComplex;
use crate::error::VerifyError;
use crate::homology::SimplicialComplex;
use crate::simplex::Simplex;

#[derive(Clone, Debug)]
pub struct Verification {
    pub final_dim: usize,
    pub final_complex: SimplicialComplex,
}

/// Replays a certificate against `c` and checks every step.
///
/// Bookkeeping here is deliberately separate from the engine: each face
/// carries a count of the present faces one dimension up that contain it,
/// so `σ` is free in `τ` exactly when `up[σ] == 1` and `up[τ] == 0`.
pub fn verify_certificate(
    c: &CliqueComplex,
    cert: &CollapseCertificate,
) -> Result<Verification, VerifyError> {
    let actual = c.fingerprint();
    if actual != cert.fingerprint {
        return Err(VerifyError::FingerprintMismatch {
            expected: cert.fingerprint.clone(),
            actual,
        });
    }

    let mut present: FxHashSet<Simplex> = c.all_faces().cloned().collect();
    let mut up: FxHashMap<Simplex, usize> = present.iter().map(|s| (s.clone(), 0)).collect();
    for s in &present {
        for f in s.facets() {
            *up.get_mut(&f)
                .expect("clique complexes are downward closed") += 1;
        }
    }
    let mut per_dim: Vec<usize> = c.f_vector();

    for (index, step) in cert.steps.iter().enumerate() {
        let fail = |reason: String| VerifyError::InvalidStep { index, reason };
        let (sigma, tau) = (&step.free_face, &step.coface);
        if tau.len() != sigma.len() + 1 || !sigma.is_subset_of(tau) {
            return Err(fail(format!("{sigma} is not a facet of {tau}")));
        }
        if sigma.dim() < cert.k {
            return Err(fail(format!(
                "free face {sigma} has dimension below k = {}",
                cert.k
            )));
        }
        if !present.contains(sigma) {
            return Err(fail(format!("free face {sigma} is not in the complex")));
        }
        if !present.contains(tau) {
            return Err(fail(format!("coface {tau} is not in the complex")));
        }
        if up[sigma] != 1 {
            return Err(fail(format!(
                "{sigma} lies in {} faces one dimension up",
                up[sigma]
            )));
        }
        if up[tau] != 0 {
            return Err(fail(format!("coface {tau} is not maximal")));
        }
        for s in [tau, sigma] {
            for f in s.facets() {
                if let Some(cnt) = up.get_mut(&f) {
                    *cnt -= 1;
                }
            }
            present.remove(s);
            up.remove(s);
            per_dim[s.dim()] -= 1;
        }
    }

    let final_dim = per_dim.iter().rposition(|&n| n > 0).unwrap_or(0);
    if final_dim != cert.final_dim {
        return Err(VerifyError::FinalDimMismatch {
            claimed: cert.final_dim,
            actual: final_dim,
        });
    }
    if final_dim > cert.k {
        return Err(VerifyError::TargetNotReached {
            k: cert.k,
            actual: final_dim,
        });
    }
    let final_complex = SimplicialComplex::from_closed_faces(present)
        .expect("collapses keep the complex downward closed");
    Ok(Verification {
        final_dim,
        final_complex,
    })
}
