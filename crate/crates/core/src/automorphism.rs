use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Ring automorphism of R given by the images of the variables, stored with
/// an inverse that is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingAutomorphism {
    ring: RingRef,
    forward: Vec<Polynomial>,
    inverse: Vec<Polynomial>,
}

impl RingAutomorphism {
    pub fn new(ring: &RingRef, forward: Vec<Polynomial>, inverse: Vec<Polynomial>) -> Result<Self> {
        let r = ring.nvars();
        if forward.len() != r || inverse.len() != r {
            return Err(AlgebraError::precondition(format!("automorphism needs {r} images each way")));
        }
        if forward.iter().chain(&inverse).any(|f| **f.ring() != **ring) {
            return Err(AlgebraError::precondition("automorphism images live in another ring"));
        }
        for i in 0..r {
            let x = Polynomial::var(ring, i);
            if inverse[i].substitute(&forward) != x || forward[i].substitute(&inverse) != x {
                return Err(AlgebraError::precondition(format!(
                    "the given inverse does not invert the image of {}",
                    ring.var_name(i)
                )));
            }
        }
        Ok(RingAutomorphism { ring: ring.clone(), forward, inverse })
    }

    pub fn identity(ring: &RingRef) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        RingAutomorphism { ring: ring.clone(), forward: vars.clone(), inverse: vars }
    }

    /// The twist `x_i ↦ c_i·x_i + (c_i - 1)` for nonzero constants `c_i`.
    pub fn twist(ring: &RingRef, units: &[u32]) -> Result<Self> {
        let f = ring.field();
        if units.len() != ring.nvars() || units.iter().any(|&c| c % f.characteristic() == 0) {
            return Err(AlgebraError::precondition("twist needs one nonzero constant per variable"));
        }
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        for (i, &c) in units.iter().enumerate() {
            let c = c % f.characteristic();
            let x = Polynomial::var(ring, i);
            let one = Polynomial::one(ring);
            forward.push(&x.scale(c) + &one.scale(f.sub(c, 1)));
            let ci = f.inv(c);
            inverse.push(&x.scale(ci) + &one.scale(f.sub(ci, 1)));
        }
        Self::new(ring, forward, inverse)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn forward(&self) -> &[Polynomial] {
        &self.forward
    }

    pub fn inverse_images(&self) -> &[Polynomial] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, f)| *f == Polynomial::var(&self.ring, i))
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.forward)
    }

    pub fn inverse(&self) -> RingAutomorphism {
        RingAutomorphism { ring: self.ring.clone(), forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &RingAutomorphism) -> RingAutomorphism {
        let forward = other.forward.iter().map(|g| self.apply(g)).collect();
        let inverse = self.inverse.iter().map(|g| g.substitute(&other.inverse)).collect();
        RingAutomorphism { ring: self.ring.clone(), forward, inverse }
    }
}

pub fn apply_automorphism(sigma: &RingAutomorphism, f: &Polynomial) -> Polynomial {
    sigma.apply(f)
}
