//! Discovery of rational maximal ideals in the support of a module.

use std::collections::BTreeMap;

use chernlab_core::error::{AlgebraError, Result};
use chernlab_core::ideal::Ideal;
use chernlab_core::invariants::PrimeCertificate;
use chernlab_core::module::{fitting_ideal, prune, PresentedModule};
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::RingRef;

/// Point enumeration stops being reasonable beyond this many points.
pub const MAX_POINTS: u64 = 200_000;

/// An ideal with the same radical as the annihilator.
pub fn support_ideal(m: &PresentedModule) -> Result<Ideal> {
    let p = prune(m).module;
    if p.rank() <= 2 {
        Ok(fitting_ideal(0, &p))
    } else {
        p.annihilator()
    }
}

/// All F_p-points where every generator vanishes, as certified maximal ideals.
pub fn rational_points(ring: &RingRef, gens: &[Polynomial]) -> Result<Vec<Vec<u32>>> {
    let p = ring.characteristic() as u64;
    let r = ring.nvars() as u32;
    let total = p.checked_pow(r).filter(|&t| t <= MAX_POINTS).ok_or_else(|| {
        AlgebraError::ResourceLimit(format!("{p}^{r} points is too many to enumerate; declare primes"))
    })?;
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut out = Vec::new();
    let mut point = vec![0u32; r as usize];
    for idx in 0..total {
        let mut k = idx;
        for slot in point.iter_mut() {
            *slot = (k % p) as u32;
            k /= p;
        }
        if gens.iter().all(|g| g.evaluate(&point) == 0) {
            out.push(point.clone());
        }
    }
    Ok(out)
}

pub fn point_prime(ring: &RingRef, point: &[u32]) -> Result<PrimeCertificate> {
    let gens = point
        .iter()
        .enumerate()
        .map(|(i, &a)| &Polynomial::var(ring, i) - &Polynomial::constant(ring, a as i64))
        .collect();
    PrimeCertificate::declare(&Ideal::new(ring, gens)?)
}

/// Rational points in the union of the supports of the given modules, keyed
/// and sorted canonically.
pub fn discover_primes(ring: &RingRef, modules: &[&PresentedModule]) -> Result<Vec<PrimeCertificate>> {
    let mut found = BTreeMap::new();
    for m in modules {
        if m.is_zero()? {
            continue;
        }
        let ideal = support_ideal(m)?;
        if ideal.is_zero() {
            continue;
        }
        for pt in rational_points(ring, ideal.generators())? {
            found.entry(pt.clone()).or_insert(point_prime(ring, &pt)?);
        }
    }
    Ok(found.into_values().collect())
}
