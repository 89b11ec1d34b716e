use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{MonomialOrder, MAX_VARS};

/// Largest user-facing number of variables. Two slots are kept free for
/// auxiliary elimination variables.
pub const MAX_RING_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderTag {
    Lex,
    Grevlex,
}

impl OrderTag {
    pub fn name(&self) -> &'static str {
        match self {
            OrderTag::Lex => "lex",
            OrderTag::Grevlex => "grevlex",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderTag::Lex),
            "grevlex" | "grevlex-rev" | "degrevlex" => Ok(OrderTag::Grevlex),
            other => Err(AlgebraError::precondition(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// User-level ring description: F_p[x1..xr] with a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub characteristic: u64,
    pub num_vars: usize,
    pub order: OrderTag,
    /// Variable priority, `None` meaning x1 > x2 > ... > xr.
    pub permutation: Option<Vec<usize>>,
}

impl RingSpec {
    pub fn new(characteristic: u64, num_vars: usize, order: OrderTag) -> Self {
        RingSpec { characteristic, num_vars, order, permutation: None }
    }

    pub fn grevlex(characteristic: u64, num_vars: usize) -> Self {
        Self::new(characteristic, num_vars, OrderTag::Grevlex)
    }

    /// Parses the `p:r:order` shorthand used on the command line.
    pub fn parse_short(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || AlgebraError::precondition(format!("ring `{s}` is not of the form p:r:order"));
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad());
        }
        let p = parts[0].trim().parse::<u64>().map_err(|_| bad())?;
        let r = parts[1].trim().parse::<usize>().map_err(|_| bad())?;
        let order = match parts.get(2) {
            Some(o) => OrderTag::parse(o.trim())?,
            None => OrderTag::Grevlex,
        };
        Ok(RingSpec::new(p, r, order))
    }

    pub fn short(&self) -> String {
        format!("{}:{}:{}", self.characteristic, self.num_vars, self.order.name())
    }
}

/// Resource ceilings. Exceeding any of them yields [`AlgebraError::ResourceLimit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_basis: usize,
    pub max_degree: u32,
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 500, max_degree: 40, timeout: Some(Duration::from_secs(60)) }
    }
}

/// Validated polynomial ring context shared by every polynomial living in it.
#[derive(Debug)]
pub struct Ring {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    spec: RingSpec,
    limits: Limits,
    deadline: Option<Instant>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.order == other.order
    }
}

impl Eq for Ring {}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(spec: RingSpec) -> Result<RingRef> {
        Self::with_limits(spec, Limits::default())
    }

    pub fn with_limits(spec: RingSpec, limits: Limits) -> Result<RingRef> {
        let field = PrimeField::new(spec.characteristic)?;
        let r = spec.num_vars;
        if r == 0 || r > MAX_RING_VARS {
            return Err(AlgebraError::precondition(format!(
                "number of variables must be in 1..={MAX_RING_VARS}, got {r}"
            )));
        }
        let priority = match &spec.permutation {
            Some(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != (0..r).collect::<Vec<_>>() {
                    return Err(AlgebraError::precondition("variable permutation is not a permutation of 0..r"));
                }
                p.clone()
            }
            None => (0..r).collect(),
        };
        let order = match spec.order {
            OrderTag::Lex => MonomialOrder::Lex { priority },
            OrderTag::Grevlex => MonomialOrder::Grevlex { priority },
        };
        let deadline = limits.timeout.map(|t| Instant::now() + t);
        Ok(Arc::new(Ring { field, nvars: r, order, spec, limits, deadline }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Fails with a resource-limit error once the per-scenario deadline has passed.
    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(AlgebraError::ResourceLimit("time limit exceeded".into())),
            _ => Ok(()),
        }
    }

    /// Same variables and field, a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        assert_eq!(order.nvars(), self.nvars);
        Arc::new(Ring {
            field: self.field,
            nvars: self.nvars,
            order,
            spec: self.spec.clone(),
            limits: self.limits.clone(),
            deadline: self.deadline,
        })
    }

    /// The ring with a homogenizing variable appended, under grevlex, or
    /// `None` when no variable slot is left.
    pub fn homogenizing_extension(&self) -> Option<RingRef> {
        let n = self.nvars + 1;
        (n <= MAX_VARS).then(|| {
            Arc::new(Ring {
                field: self.field,
                nvars: n,
                order: MonomialOrder::grevlex(n),
                spec: self.spec.clone(),
                limits: self.limits.clone(),
                deadline: self.deadline,
            })
        })
    }

    /// The ring with `extra` auxiliary variables appended after x1..xr,
    /// ordered so that the auxiliary block is eliminated first.
    pub fn elimination_extension(&self, extra: usize) -> RingRef {
        let n = self.nvars + extra;
        assert!(n <= MAX_VARS, "too many auxiliary variables");
        Arc::new(Ring {
            field: self.field,
            nvars: n,
            order: MonomialOrder::EliminateLast { nvars: n, block: extra },
            spec: self.spec.clone(),
            limits: self.limits.clone(),
            deadline: self.deadline,
        })
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[", self.characteristic())?;
        for i in 0..self.nvars {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.var_name(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(Ring::new(RingSpec::grevlex(6, 2)).is_err());
        assert!(Ring::new(RingSpec::grevlex(5, 0)).is_err());
        assert!(Ring::new(RingSpec::grevlex(5, 7)).is_err());
        let r = Ring::new(RingSpec::grevlex(5, 2)).unwrap();
        assert_eq!(r.to_string(), "F_5[x1,x2]");
    }

    #[test]
    fn short_form() {
        let s = RingSpec::parse_short("101:3:lex").unwrap();
        assert_eq!(s, RingSpec::new(101, 3, OrderTag::Lex));
        assert_eq!(s.short(), "101:3:lex");
        assert!(RingSpec::parse_short("5").is_err());
    }
}
