use std::cmp::Ordering;
use std::fmt;

/// Largest number of variable slots a polynomial may carry, lifted copies included.
pub const MAX_VARS: usize = 16;

/// Exponent vector of a monomial.
///
/// Slots beyond the owning polynomial's variable count are always zero, so the
/// fixed-width storage compares and hashes exactly like the logical exponent list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.0[i] = 1;
        m
    }

    /// Builds a monomial from an exponent list; `None` if the list is too long
    /// or an exponent does not fit.
    pub fn from_exponents(exps: &[u32]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut m = Self::ONE;
        for (slot, &e) in m.0.iter_mut().zip(exps) {
            *slot = u16::try_from(e).ok()?;
        }
        Some(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.0[i])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.0[i] = u16::try_from(e).expect("monomial exponent overflow");
        m
    }

    /// Exponent of variable `i` removed, the rest unchanged.
    pub fn without(&self, i: usize) -> Monomial {
        self.with_exponent(i, 0)
    }

    /// Moves every exponent from slot `v` to slot `mapping[v]`.
    pub fn remap(&self, mapping: &[usize]) -> Monomial {
        let mut out = Self::ONE;
        for (v, &target) in mapping.iter().enumerate() {
            if self.0[v] != 0 {
                out.0[target] = out.0[target]
                    .checked_add(self.0[v])
                    .expect("monomial exponent overflow");
            }
        }
        out
    }

    /// Splits into the part supported on `keep` and the rest.
    pub fn split(&self, keep: &[usize]) -> (Monomial, Monomial) {
        let mut inside = Self::ONE;
        let mut outside = *self;
        for &v in keep {
            inside.0[v] = self.0[v];
            outside.0[v] = 0;
        }
        (inside, outside)
    }
}

/// Graded lexicographic: total degree first, then the exponent of the first
/// variable, then the second, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}
