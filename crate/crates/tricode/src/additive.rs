//! Equivalence of binomials restricted to a subgroup of the units.
//!
//! For additive codes the coefficient scalars live in a subring, so the
//! witnessing unit of an equivalence must be drawn from a subgroup G of the
//! full unit group: the nonzero Teichmuller representatives, the units of a
//! subring generated by a smaller Galois coefficient ring, or any custom
//! subgroup. Classes are again cosets, now of H_{G,k} = {alpha^(n-k) x^k +
//! alpha^n : alpha in G} inside the binomials with coefficients in G, and
//! the Teichmuller case has a fully closed-form count.

use crate::arith::{checked_pow, gcd, mod_inverse};
use crate::equiv::Binomial;
use crate::ring::{ChainRing, RingElement, UnitGroupStructure};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Which subgroup of the units a `UnitSubgroup` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    /// The nonzero Teichmuller representatives, cyclic of order p^r - 1.
    Teichmuller,
    /// Units of the subring generated by the scalars, gamma, and the
    /// Teichmuller element of order p^(r') - 1.
    SubringUnits(usize),
    Custom,
}

/// An explicit subgroup of the unit group of a chain ring.
#[derive(Clone, Debug)]
pub struct UnitSubgroup {
    ring: ChainRing,
    kind: SubgroupKind,
    elements: Vec<RingElement>,
    index: BTreeSet<Vec<u64>>,
    decomposition: UnitGroupStructure,
    generator: Option<RingElement>,
    dlog: Option<BTreeMap<Vec<u64>, u128>>,
}

impl UnitSubgroup {
    /// The cyclic group of nonzero Teichmuller representatives.
    pub fn teichmuller(ring: &ChainRing, max_units: u128) -> Result<UnitSubgroup> {
        let order = ring.q() - 1;
        if order > max_units {
            return Err(Error::BoundExceeded(format!(
                "teichmuller group of order {order} exceeds the bound {max_units}"
            )));
        }
        let xi = ring.teichmuller_generator()?;
        let mut elements = Vec::with_capacity(order as usize);
        let mut dlog = BTreeMap::new();
        let mut x = ring.one();
        for i in 0..order {
            dlog.insert(x.coords().to_vec(), i);
            elements.push(x.clone());
            x = &x * &xi;
        }
        debug_assert_eq!(x, ring.one());
        elements.sort_by(|a, b| a.coords().cmp(b.coords()));
        let index = elements.iter().map(|e| e.coords().to_vec()).collect();
        Ok(UnitSubgroup {
            ring: ring.clone(),
            kind: SubgroupKind::Teichmuller,
            elements,
            index,
            decomposition: UnitGroupStructure {
                p: ring.p(),
                coprime_order: order,
                p_exponents: Vec::new(),
            },
            generator: Some(xi),
            dlog: Some(dlog),
        })
    }

    /// Units of the subring spanned over the scalars by gamma and the
    /// Teichmuller element of order p^(r') - 1, for a divisor r' of r.
    /// With r' = r this is the full unit group.
    pub fn subring_units(ring: &ChainRing, r_sub: usize, max_units: u128) -> Result<UnitSubgroup> {
        let r = ring.r();
        if r_sub == 0 || r % r_sub != 0 {
            return Err(Error::Invalid(format!(
                "subring parameter {r_sub} must be a positive divisor of r = {r}"
            )));
        }
        if r_sub == r {
            let mut g = UnitSubgroup::full(ring, max_units)?;
            g.kind = SubgroupKind::SubringUnits(r);
            return Ok(g);
        }
        let a: Vec<i64> = ring.eisenstein_data().iter().map(|&c| c as i64).collect();
        let sub = ChainRing::with_params(ring.p(), ring.m(), r_sub, ring.e(), ring.t(), Some(a), None)?;
        if sub.size() > max_units {
            return Err(Error::BoundExceeded(format!(
                "subring of size {} exceeds the bound {max_units}",
                sub.size()
            )));
        }
        let decomposition = sub.unit_group_structure(max_units)?;
        let xi = ring.teichmuller_generator()?;
        let step = (ring.q() - 1) / (sub.q() - 1);
        let omega_sub = xi.pow(step);
        let mut basis = Vec::new();
        let mut moduli = Vec::new();
        for j in 0..ring.e() {
            let gj = ring.gamma_pow(j as u32);
            let mut wi = ring.one();
            for _ in 0..r_sub {
                basis.push(&gj * &wi);
                moduli.push(if j < ring.t() {
                    ring.pm()
                } else {
                    ring.pm() / ring.p()
                });
                wi = &wi * &omega_sub;
            }
        }
        let mut digits = vec![0u64; basis.len()];
        let mut seen = BTreeSet::new();
        let mut elements = Vec::new();
        loop {
            let mut x = ring.zero();
            for (d, b) in digits.iter().zip(&basis) {
                if *d != 0 {
                    x = &x + &(&ring.from_int(*d as i64) * b);
                }
            }
            if x.is_unit() && seen.insert(x.coords().to_vec()) {
                elements.push(x);
            }
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < moduli[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
        debug_assert_eq!(elements.len() as u128, sub.units_count());
        elements.sort_by(|a, b| a.coords().cmp(b.coords()));
        Ok(UnitSubgroup {
            ring: ring.clone(),
            kind: SubgroupKind::SubringUnits(r_sub),
            index: seen,
            elements,
            decomposition,
            generator: None,
            dlog: None,
        })
    }

    /// The full unit group.
    pub fn full(ring: &ChainRing, max_units: u128) -> Result<UnitSubgroup> {
        if ring.units_count() > max_units {
            return Err(Error::BoundExceeded(format!(
                "unit group of size {} exceeds the bound {max_units}",
                ring.units_count()
            )));
        }
        let mut elements: Vec<RingElement> = ring.units().collect();
        elements.sort_by(|a, b| a.coords().cmp(b.coords()));
        let index = elements.iter().map(|e| e.coords().to_vec()).collect();
        let decomposition = ring.unit_group_structure(max_units)?;
        Ok(UnitSubgroup {
            ring: ring.clone(),
            kind: SubgroupKind::SubringUnits(ring.r()),
            elements,
            index,
            decomposition,
            generator: None,
            dlog: None,
        })
    }

    /// Wraps a caller-supplied set of units, after checking it really is a
    /// subgroup: nonempty, contains 1, and closed under multiplication.
    pub fn custom(ring: &ChainRing, elements: &[RingElement]) -> Result<UnitSubgroup> {
        let mut index = BTreeSet::new();
        let mut dedup = Vec::new();
        for x in elements {
            if x.ring() != ring {
                return Err(Error::RingMismatch(
                    "subgroup element from a different ring".into(),
                ));
            }
            if !x.is_unit() {
                return Err(Error::NotAUnit(format!("{x} is not a unit")));
            }
            if index.insert(x.coords().to_vec()) {
                dedup.push(x.clone());
            }
        }
        if !index.contains(ring.one().coords()) {
            return Err(Error::Invalid("subgroup must contain 1".into()));
        }
        for x in &dedup {
            for y in &dedup {
                if !index.contains((x * y).coords()) {
                    return Err(Error::Invalid(format!(
                        "set is not closed under multiplication: {x} * {y} escapes"
                    )));
                }
            }
        }
        dedup.sort_by(|a, b| a.coords().cmp(b.coords()));
        let decomposition = invariants_from_elements(ring, &dedup);
        Ok(UnitSubgroup {
            ring: ring.clone(),
            kind: SubgroupKind::Custom,
            elements: dedup,
            index,
            decomposition,
            generator: None,
            dlog: None,
        })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    /// The elements, sorted by canonical coordinates.
    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.ring() == &self.ring && self.index.contains(x.coords())
    }

    /// Cyclic decomposition of the subgroup.
    pub fn decomposition(&self) -> &UnitGroupStructure {
        &self.decomposition
    }

    /// The distinguished generator, for the Teichmuller kind.
    pub fn generator(&self) -> Option<&RingElement> {
        self.generator.as_ref()
    }
}

/// Abelian invariants of a multiplicatively closed set of units, split into
/// the part coprime to p (cyclic, inside the Teichmuller group) and the
/// p-power part, whose cyclic exponents come from the counts of solutions
/// of x^(p^j) = 1 exactly as for the full unit group.
fn invariants_from_elements(ring: &ChainRing, elements: &[RingElement]) -> UnitGroupStructure {
    let p = ring.p() as u128;
    let mut p_part: u128 = 1;
    let mut coprime = elements.len() as u128;
    while coprime % p == 0 {
        coprime /= p;
        p_part *= p;
    }
    let one = ring.one();
    let sylow: Vec<&RingElement> = elements.iter().filter(|g| g.pow(p_part) == one).collect();
    let mut counts = Vec::new();
    let mut pj: u128 = 1;
    loop {
        let c = sylow.iter().filter(|g| g.pow(pj) == one).count() as u64;
        counts.push(c);
        if c as u128 == sylow.len() as u128 {
            break;
        }
        pj *= p;
    }
    let log_p = |n: u64| -> u32 {
        let mut v = n;
        let mut l = 0;
        while v > 1 {
            v /= ring.p();
            l += 1;
        }
        l
    };
    let mut ranks = Vec::new();
    for j in 1..counts.len() {
        let diff = log_p(counts[j]) - log_p(counts[j - 1]);
        if diff == 0 {
            break;
        }
        ranks.push(diff);
    }
    let mut exps = Vec::new();
    for (j, &rank) in ranks.iter().enumerate() {
        let next = ranks.get(j + 1).copied().unwrap_or(0);
        for _ in 0..rank - next {
            exps.push(j as u32 + 1);
        }
    }
    exps.sort_unstable();
    UnitGroupStructure {
        p: ring.p(),
        coprime_order: coprime,
        p_exponents: exps,
    }
}

fn check_inputs(a: &Binomial, b: &Binomial, n: u64, group: &UnitSubgroup) -> Result<()> {
    if a.ring() != b.ring() || a.ring() != group.ring() {
        return Err(Error::RingMismatch(
            "binomials and subgroup must share one ring".into(),
        ));
    }
    if a.k() != b.k() {
        return Err(Error::Invalid(format!(
            "binomials of degrees {} and {} are never comparable",
            a.k(),
            b.k()
        )));
    }
    if a.k() >= n {
        return Err(Error::Invalid(format!(
            "need 0 < k < n, got k = {}, n = {n}",
            a.k()
        )));
    }
    for c in [a.b1(), a.b0(), b.b1(), b.b0()] {
        if !group.contains(c) {
            return Err(Error::Invalid(format!(
                "coefficient {c} lies outside the subgroup"
            )));
        }
    }
    Ok(())
}

/// Searches the subgroup for a unit alpha with b1*alpha^(n-k) = a1 and
/// b0*alpha^n = a0. Both binomials must have all coefficients in the
/// subgroup. For the Teichmuller kind the search is exact linear-congruence
/// arithmetic on exponents of the generator; otherwise the subgroup is
/// scanned in coordinate order, so the witness is deterministic.
pub fn restricted_equivalent(
    a: &Binomial,
    b: &Binomial,
    n: u64,
    group: &UnitSubgroup,
) -> Result<Option<RingElement>> {
    check_inputs(a, b, n, group)?;
    let k = a.k();
    let c1 = &(a.b1() * &b.b1().inv()?);
    let c0 = &(a.b0() * &b.b0().inv()?);
    if let (Some(dlog), Some(xi)) = (&group.dlog, &group.generator) {
        let m = group.order();
        let e1 = *dlog
            .get(c1.coords())
            .ok_or_else(|| Error::Internal("quotient left the teichmuller group".into()))?;
        let e0 = *dlog
            .get(c0.coords())
            .ok_or_else(|| Error::Internal("quotient left the teichmuller group".into()))?;
        let aa = (n - k) as u128 % m;
        let bb = n as u128 % m;
        let g = gcd(aa, m);
        if e1 % g != 0 {
            return Ok(None);
        }
        let step = m / g;
        let i0 = if step == 1 {
            0
        } else {
            let inv = mod_inverse((aa / g) % step, step)
                .ok_or_else(|| Error::Internal("congruence solver lost coprimality".into()))?;
            (e1 / g) % step * inv % step
        };
        for j in 0..g {
            let i = i0 + j * step;
            if bb * i % m == e0 {
                return Ok(Some(xi.pow(i)));
            }
        }
        return Ok(None);
    }
    for alpha in &group.elements {
        if alpha.pow((n - k) as u128) == *c1 && alpha.pow(n as u128) == *c0 {
            return Ok(Some(alpha.clone()));
        }
    }
    Ok(None)
}

/// Number of restricted equivalence classes on the binomials with both
/// coefficients in the subgroup: the index of H_{G,k} = {alpha^(n-k) x^k +
/// alpha^n : alpha in G}, which for the Teichmuller kind collapses to
/// (p^r - 1) * gcd(p^r - 1, k, n).
pub fn restricted_class_count(
    ring: &ChainRing,
    n: u64,
    k: u64,
    group: &UnitSubgroup,
) -> Result<u128> {
    if group.ring() != ring {
        return Err(Error::RingMismatch(
            "subgroup belongs to a different ring".into(),
        ));
    }
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    if group.kind == SubgroupKind::Teichmuller {
        let q1 = ring.q() - 1;
        return Ok(q1 * gcd(q1, gcd(n as u128, k as u128)));
    }
    let mut pairs = BTreeSet::new();
    for alpha in &group.elements {
        pairs.insert((
            alpha.pow((n - k) as u128).coords().to_vec(),
            alpha.pow(n as u128).coords().to_vec(),
        ));
    }
    let h = pairs.len() as u128;
    let b = group
        .order()
        .checked_mul(group.order())
        .ok_or(Error::Overflow("binomial space"))?;
    if h == 0 || b % h != 0 {
        return Err(Error::Internal(
            "subgroup image size does not divide the binomial space".into(),
        ));
    }
    Ok(b / h)
}

/// Size of H_{T,k} for the Teichmuller group: (p^r - 1) / gcd(p^r - 1, k, n),
/// the order of xi^(n-k) x^k + xi^n under the componentwise product.
pub fn hgk_size_teichmuller(ring: &ChainRing, n: u64, k: u64) -> u128 {
    let q1 = ring.q() - 1;
    q1 / gcd(q1, gcd(n as u128, k as u128))
}

/// Number of Teichmuller-witnessed classes when the coefficients range over
/// the full Galois coefficient ring GR(p^m, r) instead of the Teichmuller
/// set: p^(2r(m-1)) * (p^r - 1) * gcd(p^r - 1, k, n).
pub fn gr_coefficient_class_count(ring: &ChainRing, n: u64, k: u64) -> Result<u128> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let q1 = ring.q() - 1;
    let g = gcd(q1, gcd(n as u128, k as u128));
    let coeff_units = checked_pow(ring.p() as u128, 2 * ring.r() as u32 * (ring.m() - 1))?;
    coeff_units
        .checked_mul(q1)
        .and_then(|x| x.checked_mul(g))
        .ok_or(Error::Overflow("class count"))
}
