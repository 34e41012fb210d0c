//! Order-by-order solutions of the functional pentagon and cocycle equations,
//! and the gauge actions relating different solutions.
//!
//! Both lifts run the same loop: compute the defect of the current
//! approximation, take its lowest nonzero homogeneous part (a co-Hochschild
//! cocycle), write it as d of a correction and add the correction. Changing φ
//! by τ changes the pentagon defect by −dτ at leading order, and changing ρ by
//! β changes the cocycle defect by −dβ.

use crate::cohochschild::{solve_coboundary, Coboundary, Cochain};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, RMatrix};
use crate::scalar::Scalar;
use crate::star::{star_all, star_unchecked};
use crate::tensor::{alt_project, coproduct_insert, is_invariant, FormalSeriesTensor};

fn ins<S: Scalar>(f: &FormalSeriesTensor<S>, blocks: &[&[usize]], n: usize) -> FormalSeriesTensor<S> {
    coproduct_insert(f, blocks, n).expect("insertion blocks are valid")
}

fn require_m_tensor<S: Scalar>(f: &FormalSeriesTensor<S>) -> Result<()> {
    if f.in_m_tensor() {
        Ok(())
    } else {
        Err(Error::NotInMTensor)
    }
}

fn require_slots<S: Scalar>(f: &FormalSeriesTensor<S>, slots: usize) -> Result<()> {
    if f.slots() == slots {
        Ok(())
    } else {
        Err(Error::SlotMismatch(f.slots(), slots))
    }
}

/// (φ^{1,2,34} ⋆ φ^{12,3,4}) ⋆ −(φ^{2,3,4} ⋆ φ^{1,23,4} ⋆ φ^{1,2,3}).
pub fn pentagon_defect<S: Scalar>(
    alg: &LieAlgebra<S>,
    phi: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    require_slots(phi, 3)?;
    require_m_tensor(phi)?;
    let a = ins(phi, &[&[0], &[1], &[2, 3]], 4);
    let b = ins(phi, &[&[0, 1], &[2], &[3]], 4);
    let c = ins(phi, &[&[1], &[2], &[3]], 4);
    let d = ins(phi, &[&[0], &[1, 2], &[3]], 4);
    let e = ins(phi, &[&[0], &[1], &[2]], 4);
    let lhs = star_unchecked(alg, &a, &b);
    let rhs = star_all(alg, &[&c, &d, &e])?;
    Ok(star_unchecked(alg, &lhs, &-&rhs))
}

/// (ρ^{1,2} ⋆ ρ^{12,3}) ⋆ −(ρ^{2,3} ⋆ ρ^{1,23} ⋆ φ).
pub fn cocycle_defect<S: Scalar>(
    alg: &LieAlgebra<S>,
    rho: &FormalSeriesTensor<S>,
    phi: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    require_slots(rho, 2)?;
    require_slots(phi, 3)?;
    require_m_tensor(rho)?;
    require_m_tensor(phi)?;
    if rho.trunc() != phi.trunc() {
        return Err(Error::TruncationMismatch(rho.trunc(), phi.trunc()));
    }
    let a = ins(rho, &[&[0], &[1]], 3);
    let b = ins(rho, &[&[0, 1], &[2]], 3);
    let c = ins(rho, &[&[1], &[2]], 3);
    let d = ins(rho, &[&[0], &[1, 2]], 3);
    let lhs = star_unchecked(alg, &a, &b);
    let rhs = star_all(alg, &[&c, &d, phi])?;
    Ok(star_unchecked(alg, &lhs, &-&rhs))
}

/// Alt of the degree-3 cocycle defect of ρ = r against φ = 0. The degree-3
/// part of an associator must have exactly this antisymmetrization for a twist
/// with leading term r to exist; it equals (2/3)·CYB(r).
pub fn twist_class<S: Scalar>(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> Result<FormalSeriesTensor<S>> {
    if !r.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let rho = FormalSeriesTensor::from_r_matrix(r, 3);
    let phi = FormalSeriesTensor::zero(r.dim(), 3, 3);
    Ok(alt_project(&cocycle_defect(alg, &rho, &phi)?.homogeneous_part(3)))
}

fn check_wedge3<S: Scalar>(alg: &LieAlgebra<S>, z: &FormalSeriesTensor<S>) -> Result<()> {
    require_slots(z, 3)?;
    let z3 = z.with_trunc(3);
    if z3 != *z || alt_project(&z3) != z3 {
        return Err(Error::NotInWedge3);
    }
    if !is_invariant(alg, z)? {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

/// Lowest-degree part of a defect, which must not lie below `degree`.
fn defect_part<S: Scalar>(defect: &FormalSeriesTensor<S>, degree: usize) -> Result<Cochain<S>> {
    if defect.order().is_some_and(|o| o < degree) {
        return Err(Error::NotACocycle(format!("defect has terms below degree {degree}")));
    }
    Cochain::homogeneous_part_of(defect, degree)
}

/// Invariant φ ∈ m^{⊗3} with Alt(φ) = Z and pentagon defect zero mod degree N+1.
pub fn lift_associator<S: Scalar>(
    alg: &LieAlgebra<S>,
    z: &FormalSeriesTensor<S>,
    trunc: usize,
) -> Result<FormalSeriesTensor<S>> {
    if trunc < 3 {
        return Err(Error::TruncationTooLow { have: trunc, need: 3 });
    }
    check_wedge3(alg, z)?;
    let mut phi = z.with_trunc(trunc);
    for degree in 4..=trunc {
        let defect = pentagon_defect(alg, &phi)?;
        let c = defect_part(&defect, degree)?;
        if c.is_zero() {
            continue;
        }
        match solve_coboundary(alg, &c, true)? {
            Coboundary::Primitive(tau) => {
                phi = phi.add_unchecked(&tau.into_value().with_trunc(trunc), S::one());
            }
            Coboundary::Obstruction(_) => return Err(Error::ObstructionAt4),
        }
    }
    Ok(phi)
}

/// ρ ∈ m^{⊗2} with degree-(1,1) part r and cocycle defect zero mod degree N+1.
pub fn lift_twist<S: Scalar>(
    alg: &LieAlgebra<S>,
    r: &RMatrix<S>,
    phi: &FormalSeriesTensor<S>,
    trunc: usize,
) -> Result<FormalSeriesTensor<S>> {
    if trunc < 3 {
        return Err(Error::TruncationTooLow { have: trunc, need: 3 });
    }
    require_slots(phi, 3)?;
    if phi.trunc() != trunc {
        return Err(Error::TruncationMismatch(phi.trunc(), trunc));
    }
    if alt_project(&phi.homogeneous_part(3)) != twist_class(alg, r)? {
        return Err(Error::CompatibilityViolation);
    }
    let mut rho = FormalSeriesTensor::from_r_matrix(r, trunc);
    for degree in 3..=trunc {
        let defect = cocycle_defect(alg, &rho, phi)?;
        let c = defect_part(&defect, degree)?;
        if c.is_zero() {
            continue;
        }
        match solve_coboundary(alg, &c, false)? {
            Coboundary::Primitive(beta) => {
                rho = rho.add_unchecked(&beta.into_value().with_trunc(trunc), S::one());
            }
            Coboundary::Obstruction(_) => return Err(Error::CompatibilityViolation),
        }
    }
    Ok(rho)
}

/// σ·φ = σ^{2,3} ⋆ σ^{1,23} ⋆ φ ⋆ (−σ)^{12,3} ⋆ (−σ)^{1,2}.
pub fn gauge_phi<S: Scalar>(
    alg: &LieAlgebra<S>,
    sigma: &FormalSeriesTensor<S>,
    phi: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    require_slots(sigma, 2)?;
    require_m_tensor(sigma)?;
    if !is_invariant(alg, sigma)? {
        return Err(Error::NotInvariant);
    }
    let neg = -sigma;
    let a = ins(sigma, &[&[1], &[2]], 3);
    let b = ins(sigma, &[&[0], &[1, 2]], 3);
    let c = ins(&neg, &[&[0, 1], &[2]], 3);
    let d = ins(&neg, &[&[0], &[1]], 3);
    star_all(alg, &[&a, &b, phi, &c, &d])
}

/// λ·ρ = λ^1 ⋆ λ^2 ⋆ ρ ⋆ (−λ)^{12}.
pub fn gauge_rho<S: Scalar>(
    alg: &LieAlgebra<S>,
    lambda: &FormalSeriesTensor<S>,
    rho: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    require_slots(lambda, 1)?;
    if !lambda.in_m_squared() {
        return Err(Error::NotInMSquared);
    }
    let a = ins(lambda, &[&[0]], 2);
    let b = ins(lambda, &[&[1]], 2);
    let c = ins(&-lambda, &[&[0, 1]], 2);
    star_all(alg, &[&a, &b, rho, &c])
}
