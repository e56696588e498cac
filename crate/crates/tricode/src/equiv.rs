//! Equivalence of binomials under the componentwise unit action.
//!
//! Binomials b1*x^k + b0 with unit coefficients form a group under the
//! componentwise product. Two of them are n-equivalent when a unit alpha
//! satisfies b1*alpha^(n-k) = a1 and b0*alpha^n = a0; the witnesses form the
//! subgroup H_k = {alpha^(n-k) x^k + alpha^n}, so classes are cosets and the
//! class count is the index [B_k : H_k]. The count has a closed form driven
//! by the cyclic decomposition of the unit group, implemented here alongside
//! the certificate search and the degree-one isometry tests.

use crate::arith::{checked_pow, divisors, euler_phi, ext_gcd, gcd, valuation};
use crate::poly::RingPoly;
use crate::ring::{ChainRing, RingElement, UnitGroupStructure};
use crate::{Error, Result};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Unit-group sizes up to this run the built-in coset cross-check inside
/// `count_classes_k`.
const SELF_CHECK_UNITS: u128 = 4096;

fn inv_unit(x: &RingElement) -> RingElement {
    x.inv().expect("coefficient validated as a unit")
}

fn pow_signed(x: &RingElement, e: i128) -> RingElement {
    if e >= 0 {
        x.pow(e as u128)
    } else {
        inv_unit(x).pow(e.unsigned_abs())
    }
}

/// A binomial b1*x^k + b0 over a chain ring, with both coefficients units.
#[derive(Clone, PartialEq, Eq)]
pub struct Binomial {
    ring: ChainRing,
    k: u64,
    b1: RingElement,
    b0: RingElement,
}

impl Binomial {
    pub fn new(k: u64, b1: RingElement, b0: RingElement) -> Result<Binomial> {
        if b1.ring() != b0.ring() {
            return Err(Error::RingMismatch(
                "binomial coefficients come from different rings".into(),
            ));
        }
        if k == 0 {
            return Err(Error::Invalid("binomial degree k must be positive".into()));
        }
        if !b1.is_unit() || !b0.is_unit() {
            return Err(Error::NotAUnit(
                "both binomial coefficients must be units".into(),
            ));
        }
        let ring = b1.ring().clone();
        Ok(Binomial { ring, k, b1, b0 })
    }

    /// The identity of the componentwise group: x^k + 1.
    pub fn identity(ring: &ChainRing, k: u64) -> Result<Binomial> {
        Binomial::new(k, ring.one(), ring.one())
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn b1(&self) -> &RingElement {
        &self.b1
    }

    pub fn b0(&self) -> &RingElement {
        &self.b0
    }

    /// The polynomial b1*x^k + b0.
    pub fn to_poly(&self) -> RingPoly {
        RingPoly::x_pow(&self.ring, self.k as usize)
            .scale(&self.b1)
            .add(&RingPoly::constant(self.b0.clone()))
    }

    fn compatible(&self, other: &Binomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "binomials live in different rings".into(),
            ));
        }
        if self.k != other.k {
            return Err(Error::Invalid(format!(
                "binomials of degrees {} and {} are never comparable",
                self.k, other.k
            )));
        }
        Ok(())
    }

    /// Componentwise product.
    pub fn star(&self, other: &Binomial) -> Result<Binomial> {
        self.compatible(other)?;
        Ok(Binomial {
            ring: self.ring.clone(),
            k: self.k,
            b1: &self.b1 * &other.b1,
            b0: &self.b0 * &other.b0,
        })
    }

    /// Componentwise inverse.
    pub fn star_inv(&self) -> Binomial {
        Binomial {
            ring: self.ring.clone(),
            k: self.k,
            b1: inv_unit(&self.b1),
            b0: inv_unit(&self.b0),
        }
    }

    /// Componentwise power, negative exponents through the inverse.
    pub fn star_pow(&self, e: i128) -> Binomial {
        Binomial {
            ring: self.ring.clone(),
            k: self.k,
            b1: pow_signed(&self.b1, e),
            b0: pow_signed(&self.b0, e),
        }
    }

    fn key(&self) -> (Vec<u64>, Vec<u64>) {
        (self.b1.coords().to_vec(), self.b0.coords().to_vec())
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x^{} + {}", self.b1, self.k, self.b0)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.ring.name())
    }
}

/// Witness that two binomials are n-equivalent, possibly after applying a
/// componentwise Frobenius power to the right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub alpha: RingElement,
    /// l such that the relations hold against b^(* p^l); 0 for plain
    /// n-equivalence.
    pub frobenius_star_exponent: u32,
}

impl EquivalenceCertificate {
    /// Checks b1*alpha^(n-k) = a1 and b0*alpha^n = a0, with b replaced by
    /// its p^l-th componentwise power when the exponent is positive.
    pub fn holds(&self, a: &Binomial, b: &Binomial, n: u64) -> Result<bool> {
        a.compatible(b)?;
        if a.k >= n {
            return Err(Error::Invalid(format!(
                "need 0 < k < n, got k = {}, n = {n}",
                a.k
            )));
        }
        let pl = checked_pow(a.ring.p() as u128, self.frobenius_star_exponent)?;
        let bb = b.star_pow(pl as i128);
        let up = self.alpha.pow((n - a.k) as u128);
        let down = self.alpha.pow(n as u128);
        Ok(&bb.b1 * &up == a.b1 && &bb.b0 * &down == a.b0)
    }

    pub fn to_value(&self) -> Value {
        json!({ "alpha": self.alpha.to_value(), "l": self.frobenius_star_exponent })
    }
}

fn certify(alpha: &RingElement, c1: &RingElement, c0: &RingElement, n: u64, k: u64) -> bool {
    alpha.pow((n - k) as u128) == *c1 && alpha.pow(n as u128) == *c0
}

/// Searches for a unit alpha with b1*alpha^(n-k) = a1 and b0*alpha^n = a0.
///
/// When gcd(n, k) = 1 the Bezout relation u*n + v*(n-k) = 1 pins the only
/// possible witness down to alpha = c0^u * c1^v for c = a * b^(-1), so the
/// answer is exact without enumeration. Otherwise the units are scanned,
/// refusing if there are more than `max_units` of them.
pub fn n_equivalent(
    a: &Binomial,
    b: &Binomial,
    n: u64,
    max_units: u128,
) -> Result<Option<EquivalenceCertificate>> {
    a.compatible(b)?;
    let k = a.k;
    if k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let c1 = &a.b1 * &inv_unit(&b.b1);
    let c0 = &a.b0 * &inv_unit(&b.b0);
    let found = if gcd(n as u128, k as u128) == 1 {
        let (g, u, v) = ext_gcd(n as i128, (n - k) as i128);
        debug_assert_eq!(g, 1);
        let alpha = &pow_signed(&c0, u) * &pow_signed(&c1, v);
        certify(&alpha, &c1, &c0, n, k).then_some(alpha)
    } else {
        if a.ring.units_count() > max_units {
            return Err(Error::BoundExceeded(format!(
                "searching {} units exceeds the bound {max_units}",
                a.ring.units_count()
            )));
        }
        a.ring.units().find(|alpha| certify(alpha, &c1, &c0, n, k))
    };
    Ok(found.map(|alpha| EquivalenceCertificate {
        alpha,
        frobenius_star_exponent: 0,
    }))
}

/// The subgroup H_k = {alpha^(n-k) x^k + alpha^n : alpha a unit}, sorted by
/// coefficient coordinates.
pub fn hk_subgroup(ring: &ChainRing, n: u64, k: u64, max_units: u128) -> Result<Vec<Binomial>> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    if ring.units_count() > max_units {
        return Err(Error::BoundExceeded(format!(
            "enumerating {} units exceeds the bound {max_units}",
            ring.units_count()
        )));
    }
    let mut seen: BTreeMap<(Vec<u64>, Vec<u64>), Binomial> = BTreeMap::new();
    for alpha in ring.units() {
        let b = Binomial {
            ring: ring.clone(),
            k,
            b1: alpha.pow((n - k) as u128),
            b0: alpha.pow(n as u128),
        };
        seen.entry(b.key()).or_insert(b);
    }
    Ok(seen.into_values().collect())
}

/// The n-equivalence class of a, namely the coset a * H_k, sorted by
/// coefficient coordinates.
pub fn equivalence_class(a: &Binomial, n: u64, max_units: u128) -> Result<Vec<Binomial>> {
    let h = hk_subgroup(&a.ring, n, a.k, max_units)?;
    let mut out: BTreeMap<(Vec<u64>, Vec<u64>), Binomial> = BTreeMap::new();
    for g in &h {
        let c = a.star(g)?;
        out.insert(c.key(), c);
    }
    Ok(out.into_values().collect())
}

/// Inputs for counting units of order p^l * u inside a unit group
/// decomposed as Z_{p^{m_1}} x ... x Z_{p^{m_J}} x Z_{p^r - 1} with the
/// exponents ascending.
#[derive(Clone, Debug)]
pub struct OrderTypeContext {
    decomposition: UnitGroupStructure,
    l: u32,
    u: u128,
}

impl OrderTypeContext {
    pub fn new(decomposition: &UnitGroupStructure, l: u32, u: u128) -> Result<OrderTypeContext> {
        if u == 0 || decomposition.coprime_order % u != 0 {
            return Err(Error::Invalid(format!(
                "u = {u} must divide the coprime unit order {}",
                decomposition.coprime_order
            )));
        }
        Ok(OrderTypeContext {
            decomposition: decomposition.clone(),
            l,
            u,
        })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn u(&self) -> u128 {
        self.u
    }

    /// The per-block caps l_j = min(l, m_j).
    pub fn capped_exponents(&self) -> Vec<u32> {
        self.decomposition
            .p_exponents
            .iter()
            .map(|&m| self.l.min(m))
            .collect()
    }

    /// Index of the first block whose cap reaches l, if any.
    pub fn first_full_block(&self) -> Option<usize> {
        self.decomposition
            .p_exponents
            .iter()
            .position(|&m| m >= self.l)
    }
}

/// Number of units whose order is exactly p^l * u.
///
/// For l > 0 this is a difference of two sums of totient products, one over
/// all exponent tuples (t_1, ..., t_J) with t_j <= l_j and one over the
/// tuples additionally capped at l - 1 from the first full block onward.
/// Each sum collapses to a product of prime powers because the totients of
/// 1, p, ..., p^c add up to p^c. Returns 0 when l exceeds the largest block
/// exponent, since no unit has that order.
pub fn ord_count(ctx: &OrderTypeContext) -> Result<u128> {
    let phi_u = euler_phi(ctx.u)?;
    if ctx.l == 0 {
        return Ok(phi_u);
    }
    let exps = &ctx.decomposition.p_exponents;
    if exps.last().copied().unwrap_or(0) < ctx.l {
        return Ok(0);
    }
    let p = ctx.decomposition.p as u128;
    let eps = ctx.first_full_block().expect("l <= m_J checked above");
    let mut full: u128 = 1;
    let mut capped: u128 = 1;
    for (j, &m) in exps.iter().enumerate() {
        let lj = ctx.l.min(m);
        full = full
            .checked_mul(checked_pow(p, lj)?)
            .ok_or(Error::Overflow("order census"))?;
        let cap = if j >= eps { ctx.l - 1 } else { lj };
        capped = capped
            .checked_mul(checked_pow(p, cap)?)
            .ok_or(Error::Overflow("order census"))?;
    }
    phi_u
        .checked_mul(full - capped)
        .ok_or(Error::Overflow("order census"))
}

/// The cap min(v_p(gcd(n, k)), m_J) on the p-part of orders dividing
/// gcd(n, k); m_J is 0 for fields.
pub fn omega(ring: &ChainRing, n: u64, k: u64, max_units: u128) -> Result<u32> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let decomposition = ring.unit_group_structure(max_units)?;
    let g = gcd(n as u128, k as u128);
    let cap = decomposition.p_exponents.last().copied().unwrap_or(0);
    Ok(valuation(g, ring.p() as u128).min(cap))
}

/// Number of units alpha with alpha^n = alpha^(n-k) = 1, equivalently with
/// order dividing gcd(n, k): the sum of ord_count over l up to omega and u
/// running through the divisors of gcd(n, k, p^r - 1).
pub fn kernel_size(ring: &ChainRing, n: u64, k: u64, max_units: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let decomposition = ring.unit_group_structure(max_units)?;
    let g = gcd(n as u128, k as u128);
    let w = valuation(g, ring.p() as u128)
        .min(decomposition.p_exponents.last().copied().unwrap_or(0));
    let mut total: u128 = 0;
    for u in divisors(gcd(g, decomposition.coprime_order))? {
        for l in 0..=w {
            let ctx = OrderTypeContext::new(&decomposition, l, u)?;
            total = total
                .checked_add(ord_count(&ctx)?)
                .ok_or(Error::Overflow("kernel size"))?;
        }
    }
    Ok(total)
}

/// Number of n-equivalence classes on the degree-k binomials:
/// |R^x| * kernel_size, which equals the index [B_k : H_k].
///
/// For unit groups of at most 4096 elements the coset index is also computed
/// by direct enumeration and compared, so a disagreement surfaces as a
/// cross-check error instead of a wrong count.
pub fn count_classes_k(ring: &ChainRing, n: u64, k: u64, max_units: u128) -> Result<u128> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let ker = kernel_size(ring, n, k, max_units)?;
    let units = ring.units_count();
    let count = units
        .checked_mul(ker)
        .ok_or(Error::Overflow("class count"))?;
    if units <= SELF_CHECK_UNITS {
        let mut pairs = BTreeSet::new();
        for alpha in ring.units() {
            pairs.insert((
                alpha.pow((n - k) as u128).coords().to_vec(),
                alpha.pow(n as u128).coords().to_vec(),
            ));
        }
        let h = pairs.len() as u128;
        let b = units * units;
        if h == 0 || b % h != 0 || b / h != count {
            return Err(Error::SelfCheck(format!(
                "closed-form class count {count} disagrees with the coset index {b}/{h}"
            )));
        }
    }
    Ok(count)
}

/// Total number of n-equivalence classes over all degrees 0 < k < n.
pub fn count_classes_total(ring: &ChainRing, n: u64, max_units: u128) -> Result<u128> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got n = {n}")));
    }
    let mut total: u128 = 0;
    for k in 1..n {
        total = total
            .checked_add(count_classes_k(ring, n, k, max_units)?)
            .ok_or(Error::Overflow("class count"))?;
    }
    Ok(total)
}

/// One binomial per n-equivalence class on degree k: the coordinatewise
/// lexicographically smallest member of each coset, in ascending order.
pub fn class_representatives(
    ring: &ChainRing,
    n: u64,
    k: u64,
    max_units: u128,
) -> Result<Vec<Binomial>> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let units_count = ring.units_count();
    let space = units_count
        .checked_mul(units_count)
        .ok_or(Error::Overflow("binomial space"))?;
    if space > max_units {
        return Err(Error::BoundExceeded(format!(
            "enumerating {space} binomials exceeds the bound {max_units}"
        )));
    }
    let h = hk_subgroup(ring, n, k, max_units)?;
    let mut units: Vec<RingElement> = ring.units().collect();
    units.sort_by(|x, y| x.coords().cmp(y.coords()));
    let mut seen: BTreeSet<(Vec<u64>, Vec<u64>)> = BTreeSet::new();
    let mut reps = Vec::new();
    for b1 in &units {
        for b0 in &units {
            if seen.contains(&(b1.coords().to_vec(), b0.coords().to_vec())) {
                continue;
            }
            let rep = Binomial {
                ring: ring.clone(),
                k,
                b1: b1.clone(),
                b0: b0.clone(),
            };
            for g in &h {
                seen.insert(rep.star(g)?.key());
            }
            reps.push(rep);
        }
    }
    Ok(reps)
}

/// When gcd(n, k) = 1, decides whether a is n-equivalent to x^k + 1 and
/// returns the witnessing unit.
///
/// The test is the single relation a0^(n-k) = a1^n; when it holds, the
/// Bezout pair u*n + v*(n-k) = 1 gives the witness alpha = a1^v * a0^u.
pub fn equivalent_to_unital(a: &Binomial, n: u64) -> Result<Option<RingElement>> {
    let k = a.k;
    if k >= n {
        return Err(Error::Invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    if gcd(n as u128, k as u128) != 1 {
        return Err(Error::NotCoprime(format!(
            "unital reduction needs gcd(n, k) = 1, got gcd({n}, {k}) = {}",
            gcd(n as u128, k as u128)
        )));
    }
    if a.b0.pow((n - k) as u128) != a.b1.pow(n as u128) {
        return Ok(None);
    }
    let (_, u, v) = ext_gcd(n as i128, (n - k) as i128);
    let alpha = &pow_signed(&a.b1, v) * &pow_signed(&a.b0, u);
    debug_assert!(certify(&alpha, &a.b1, &a.b0, n, k));
    Ok(Some(alpha))
}

/// Isometry classification for degree-one binomials.
///
/// Over rings of characteristic p^m with m > 1, isometry coincides with
/// plain n-equivalence, so the answer is exact. Over rings of
/// characteristic p, isometric pairs must satisfy a ~ b^(* p^l) for some
/// p^l < n; absence of every such certificate refutes isometry, while a
/// certificate with positive exponent only reports the Frobenius relation
/// without claiming isometry.
pub fn isometry_b1_classify(
    a: &Binomial,
    b: &Binomial,
    n: u64,
    max_units: u128,
) -> Result<Option<EquivalenceCertificate>> {
    a.compatible(b)?;
    if a.k != 1 {
        return Err(Error::Invalid(format!(
            "isometry classification handles degree 1 only, got {}",
            a.k
        )));
    }
    if a.ring.m() > 1 {
        return n_equivalent(a, b, n, max_units);
    }
    let p = a.ring.p() as u128;
    let mut pl: u128 = 1;
    let mut l = 0u32;
    while pl < n as u128 {
        let bb = b.star_pow(pl as i128);
        if let Some(mut cert) = n_equivalent(a, &bb, n, max_units)? {
            cert.frobenius_star_exponent = l;
            return Ok(Some(cert));
        }
        l += 1;
        pl = pl.checked_mul(p).ok_or(Error::Overflow("frobenius step"))?;
    }
    Ok(None)
}

/// Unit alpha with a1 = alpha^(n-1) and a0 = alpha^n, whose existence is
/// equivalent to a being n-isometric to x + 1. Since gcd(n, n-1) = 1 the
/// only candidate is a1^(-1) * a0.
pub fn isometric_to_x_plus_1(a: &Binomial, n: u64) -> Result<Option<RingElement>> {
    if a.k != 1 {
        return Err(Error::Invalid(format!(
            "the x + 1 test handles degree 1 only, got {}",
            a.k
        )));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got n = {n}")));
    }
    let alpha = &inv_unit(&a.b1) * &a.b0;
    if certify(&alpha, &a.b1, &a.b0, n, 1) {
        Ok(Some(alpha))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u128 = 1 << 20;

    fn ring(name: &str) -> ChainRing {
        ChainRing::parse(name).unwrap()
    }

    fn bino(r: &ChainRing, k: u64, b1: i64, b0: i64) -> Binomial {
        Binomial::new(k, r.from_int(b1), r.from_int(b0)).unwrap()
    }

    fn bino_c(r: &ChainRing, k: u64, b1: &[i64], b0: &[i64]) -> Binomial {
        Binomial::new(k, r.from_coords(b1).unwrap(), r.from_coords(b0).unwrap()).unwrap()
    }

    #[test]
    fn star_group_axioms() {
        for name in ["Z(4)", "F(5)", "GR(4,2)", "FU(2,3)"] {
            let r = ring(name);
            let units: Vec<RingElement> = r.units().collect();
            let k = 3;
            let id = Binomial::identity(&r, k).unwrap();
            let all: Vec<Binomial> = units
                .iter()
                .flat_map(|b1| {
                    units
                        .iter()
                        .map(|b0| Binomial::new(k, b1.clone(), b0.clone()).unwrap())
                        .collect::<Vec<_>>()
                })
                .collect();
            for a in &all {
                assert_eq!(a.star(&id).unwrap(), *a);
                assert_eq!(a.star(&a.star_inv()).unwrap(), id);
                assert_eq!(a.star_pow(-1), a.star_inv());
                assert_eq!(a.star_pow(3), a.star(a).unwrap().star(a).unwrap());
            }
            for a in all.iter().take(4) {
                for b in all.iter().take(4) {
                    for c in all.iter().take(4) {
                        assert_eq!(
                            a.star(b).unwrap().star(c).unwrap(),
                            a.star(&b.star(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn star_concrete_products() {
        let f5 = ring("F(5)");
        let lhs = bino(&f5, 1, 2, 3).star(&bino(&f5, 1, 3, 2)).unwrap();
        assert_eq!(lhs, bino(&f5, 1, 1, 1));

        let f4 = ring("F(4)");
        let w = bino_c(&f4, 1, &[0, 1], &[0, 1]);
        let w2 = bino_c(&f4, 1, &[1, 1], &[1, 1]);
        assert_eq!(w.star_pow(2), w2);

        let p = bino(&f5, 3, 4, 2).to_poly();
        assert_eq!(p, RingPoly::from_ints(&f5, &[2, 0, 0, 4]));
        assert_eq!(format!("{}", bino(&f5, 3, 4, 2)), "4*x^3 + 2");
    }

    #[test]
    fn mismatched_binomials_are_refused() {
        let z4 = ring("Z(4)");
        let z8 = ring("Z(8)");
        let a = bino(&z4, 1, 1, 3);
        let b = bino(&z4, 2, 1, 3);
        assert!(matches!(a.star(&b), Err(Error::Invalid(_))));
        assert!(matches!(n_equivalent(&a, &b, 5, B), Err(Error::Invalid(_))));
        let c = bino(&z8, 1, 1, 3);
        assert!(matches!(
            n_equivalent(&a, &c, 5, B),
            Err(Error::RingMismatch(_))
        ));
        assert!(matches!(
            n_equivalent(&a, &a, 1, B),
            Err(Error::Invalid(_))
        ));
        assert!(Binomial::new(1, z4.from_int(2), z4.from_int(1)).is_err());
        assert!(Binomial::new(0, z4.from_int(1), z4.from_int(1)).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let f5 = ring("F(5)");
        let a = bino(&f5, 1, 4, 2);
        let b = bino(&f5, 1, 1, 1);
        let cert = n_equivalent(&a, &b, 3, B).unwrap().unwrap();
        assert_eq!(cert.alpha, f5.from_int(3));
        assert_eq!(cert.frobenius_star_exponent, 0);
        assert!(cert.holds(&a, &b, 3).unwrap());
        assert_eq!(
            cert.to_value(),
            serde_json::json!({ "alpha": 3, "l": 0 })
        );

        let same = n_equivalent(&a, &a, 3, B).unwrap().unwrap();
        assert_eq!(same.alpha, f5.one());

        let z4 = ring("Z(4)");
        let a = bino(&z4, 1, 1, 3);
        let b = bino(&z4, 1, 1, 1);
        assert!(n_equivalent(&a, &b, 2, B).unwrap().is_none());
    }

    #[test]
    fn equivalence_matches_subgroup_membership() {
        let z8 = ring("Z(8)");
        let n = 4;
        let k = 2;
        let h = hk_subgroup(&z8, n, k, B).unwrap();
        let keys: BTreeSet<_> = h.iter().map(|b| b.key()).collect();
        let units: Vec<RingElement> = z8.units().collect();
        for b1a in &units {
            for b0a in &units {
                let a = Binomial::new(k, b1a.clone(), b0a.clone()).unwrap();
                for b1b in &units {
                    for b0b in &units {
                        let b = Binomial::new(k, b1b.clone(), b0b.clone()).unwrap();
                        let cert = n_equivalent(&a, &b, n, B).unwrap();
                        let member = keys.contains(&a.star(&b.star_inv()).unwrap().key());
                        assert_eq!(cert.is_some(), member);
                        if let Some(c) = cert {
                            assert!(c.holds(&a, &b, n).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let gr = ring("GR(4,2)");
        let n = 6;
        let k = 2;
        let units: Vec<RingElement> = gr.units().collect();
        let pick = |i: usize, j: usize| {
            Binomial::new(k, units[i % 12].clone(), units[j % 12].clone()).unwrap()
        };
        for step in 0..6 {
            let a = pick(step, 5 + step);
            let b = pick(2 * step + 1, 7 + step);
            let refl = n_equivalent(&a, &a, n, B).unwrap().unwrap();
            assert!(refl.holds(&a, &a, n).unwrap());
            let ab = n_equivalent(&a, &b, n, B).unwrap();
            let ba = n_equivalent(&b, &a, n, B).unwrap();
            assert_eq!(ab.is_some(), ba.is_some());
            if let (Some(ab), Some(ba)) = (ab, ba) {
                assert!(ab.holds(&a, &b, n).unwrap());
                assert!(ba.holds(&b, &a, n).unwrap());
                for next in 0..6 {
                    let c = pick(3 * next + 2, next);
                    if let Some(bc) = n_equivalent(&b, &c, n, B).unwrap() {
                        let ac = n_equivalent(&a, &c, n, B).unwrap().unwrap();
                        assert!(ac.holds(&a, &c, n).unwrap());
                        let composed = EquivalenceCertificate {
                            alpha: &ab.alpha * &bc.alpha,
                            frobenius_star_exponent: 0,
                        };
                        assert!(composed.holds(&a, &c, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn hk_subgroup_examples() {
        let z4 = ring("Z(4)");
        let h = hk_subgroup(&z4, 2, 1, B).unwrap();
        assert_eq!(h, vec![bino(&z4, 1, 1, 1), bino(&z4, 1, 3, 1)]);

        let f4 = ring("F(4)");
        let h = hk_subgroup(&f4, 27, 3, B).unwrap();
        assert_eq!(h, vec![Binomial::identity(&f4, 3).unwrap()]);

        for (name, n) in [("Z(4)", 6), ("Z(9)", 6), ("GR(4,2)", 6), ("FU(2,3)", 4)] {
            let r = ring(name);
            for k in 1..n {
                let h = hk_subgroup(&r, n, k, B).unwrap();
                let ker = kernel_size(&r, n, k, B).unwrap();
                assert_eq!(h.len() as u128 * ker, r.units_count());
            }
        }
    }

    #[test]
    fn equivalence_class_examples() {
        let z4 = ring("Z(4)");
        let a = bino(&z4, 1, 1, 3);
        let class = equivalence_class(&a, 2, B).unwrap();
        assert_eq!(class, vec![bino(&z4, 1, 1, 3), bino(&z4, 1, 3, 3)]);

        let id = Binomial::identity(&z4, 1).unwrap();
        assert_eq!(equivalence_class(&id, 2, B).unwrap(), hk_subgroup(&z4, 2, 1, B).unwrap());

        let gr = ring("GR(4,2)");
        let n = 6;
        for k in 1..n {
            let id = Binomial::identity(&gr, k).unwrap();
            let size = equivalence_class(&id, n, B).unwrap().len() as u128;
            let count = count_classes_k(&gr, n, k, B).unwrap();
            let units = gr.units_count();
            assert_eq!(size * count, units * units);
        }
    }

    #[test]
    fn ord_count_examples() {
        let f9 = ring("F(9)");
        let d = f9.unit_group_structure(B).unwrap();
        assert_eq!(d.p_exponents, Vec::<u32>::new());
        let ctx = OrderTypeContext::new(&d, 0, 8).unwrap();
        assert_eq!(ord_count(&ctx).unwrap(), 4);
        assert!(OrderTypeContext::new(&d, 0, 3).is_err());

        let fu = ring("FU(9,4)");
        let d = fu.unit_group_structure(B).unwrap();
        assert_eq!(d.p_exponents, vec![1, 1, 2, 2]);
        let ctx = OrderTypeContext::new(&d, 1, 1).unwrap();
        assert_eq!(ctx.capped_exponents(), vec![1, 1, 1, 1]);
        assert_eq!(ctx.first_full_block(), Some(0));
        assert_eq!(ord_count(&ctx).unwrap(), 80);
        let ctx = OrderTypeContext::new(&d, 2, 1).unwrap();
        assert_eq!(ctx.first_full_block(), Some(2));
        assert_eq!(ord_count(&ctx).unwrap(), 648);
        let ctx = OrderTypeContext::new(&d, 3, 1).unwrap();
        assert_eq!(ord_count(&ctx).unwrap(), 0);
    }

    #[test]
    fn ord_counts_partition_the_unit_group() {
        for name in [
            "Z(4)",
            "Z(8)",
            "F(9)",
            "GR(4,2)",
            "GR(8,2)",
            "FU(2,3)",
            "FU(9,4)",
            "CR(3,2,1,2,1)",
        ] {
            let r = ring(name);
            let d = r.unit_group_structure(B).unwrap();
            let top = d.p_exponents.last().copied().unwrap_or(0);
            let mut total = 0u128;
            for u in divisors(d.coprime_order).unwrap() {
                for l in 0..=top {
                    total += ord_count(&OrderTypeContext::new(&d, l, u).unwrap()).unwrap();
                }
            }
            assert_eq!(total, r.units_count(), "order census over {name}");
        }
    }

    #[test]
    fn kernel_size_matches_enumeration() {
        let cases = [
            ("Z(4)", 2, 1),
            ("Z(8)", 4, 2),
            ("Z(9)", 6, 3),
            ("GR(4,2)", 6, 2),
            ("GR(4,2)", 6, 3),
            ("GR(4,2)", 6, 4),
            ("F(4)", 27, 3),
            ("F(9)", 12, 3),
            ("FU(2,3)", 4, 2),
            ("CR(3,2,1,2,1)", 6, 3),
        ];
        for (name, n, k) in cases {
            let r = ring(name);
            let g = gcd(n as u128, k as u128);
            let brute = r
                .units()
                .filter(|alpha| alpha.pow(g) == r.one())
                .count() as u128;
            assert_eq!(kernel_size(&r, n, k, B).unwrap(), brute, "kernel over {name}");
        }
        let fu = ring("FU(9,4)");
        assert_eq!(kernel_size(&fu, 12, 3, B).unwrap(), 81);
        assert_eq!(kernel_size(&fu, 12, 5, B).unwrap(), 1);
        assert_eq!(kernel_size(&ring("F(4)"), 27, 3, B).unwrap(), 3);
    }

    #[test]
    fn omega_examples() {
        let fu = ring("FU(9,4)");
        for k in [3, 6, 9] {
            assert_eq!(omega(&fu, 12, k, B).unwrap(), 1);
        }
        assert_eq!(omega(&fu, 12, 4, B).unwrap(), 0);
        assert_eq!(omega(&ring("F(4)"), 27, 3, B).unwrap(), 0);
        assert_eq!(omega(&ring("Z(8)"), 8, 4, B).unwrap(), 1);
        assert_eq!(omega(&ring("Z(9)"), 9, 3, B).unwrap(), 1);
    }

    #[test]
    fn class_counts_over_f9_u4() {
        let fu = ring("FU(9,4)");
        assert_eq!(count_classes_k(&fu, 12, 1, B).unwrap(), 5832);
        assert_eq!(count_classes_k(&fu, 12, 2, B).unwrap(), 11664);
        assert_eq!(count_classes_k(&fu, 12, 3, B).unwrap(), 472392);
        assert_eq!(count_classes_k(&fu, 12, 6, B).unwrap(), 944784);
        assert_eq!(count_classes_k(&fu, 12, 9, B).unwrap(), 472392);
        assert_eq!(count_classes_total(&fu, 12, B).unwrap(), 1982880);
    }

    #[test]
    fn class_counts_over_f4() {
        let f4 = ring("F(4)");
        assert_eq!(count_classes_k(&f4, 27, 1, B).unwrap(), 3);
        assert_eq!(count_classes_k(&f4, 27, 3, B).unwrap(), 9);
        assert_eq!(count_classes_total(&f4, 27, B).unwrap(), 126);
    }

    #[test]
    fn field_total_matches_gcd_sum() {
        for (name, q, n) in [("F(9)", 9u128, 12u64), ("F(5)", 5, 7), ("F(4)", 4, 27)] {
            let r = ring(name);
            let expected: u128 = (1..n)
                .map(|k| gcd(gcd(n as u128, k as u128), q - 1))
                .sum::<u128>()
                * (q - 1);
            assert_eq!(count_classes_total(&r, n, B).unwrap(), expected);
        }
    }

    #[test]
    fn coprime_degree_count_is_the_unit_count() {
        for name in ["Z(4)", "Z(9)", "GR(4,2)", "FU(2,3)", "F(9)"] {
            let r = ring(name);
            let n = 10;
            for k in 1..n {
                if gcd(n as u128, k as u128) == 1 {
                    assert_eq!(count_classes_k(&r, n, k, B).unwrap(), r.units_count());
                }
            }
        }
    }

    #[test]
    fn representatives_partition_the_binomials() {
        let z4 = ring("Z(4)");
        let reps = class_representatives(&z4, 2, 1, B).unwrap();
        assert_eq!(reps, vec![bino(&z4, 1, 1, 1), bino(&z4, 1, 1, 3)]);

        let f4 = ring("F(4)");
        let reps = class_representatives(&f4, 27, 1, B).unwrap();
        assert_eq!(reps.len(), 3);

        for (name, n) in [("Z(8)", 4), ("GR(4,2)", 6), ("FU(2,3)", 4), ("F(5)", 10)] {
            let r = ring(name);
            for k in 1..n {
                let reps = class_representatives(&r, n, k, B).unwrap();
                assert_eq!(reps.len() as u128, count_classes_k(&r, n, k, B).unwrap());
                for pair in reps.windows(2) {
                    assert!(pair[0].key() < pair[1].key());
                }
                for rep in reps.iter().take(3) {
                    let class = equivalence_class(rep, n, B).unwrap();
                    assert_eq!(class[0], *rep, "representative is its coset minimum");
                }
            }
        }
    }

    #[test]
    fn unital_reduction() {
        let f5 = ring("F(5)");
        let a = bino(&f5, 1, 4, 2);
        let alpha = equivalent_to_unital(&a, 3).unwrap().unwrap();
        assert_eq!(alpha, f5.from_int(3));
        let id = Binomial::identity(&f5, 1).unwrap();
        let cert = EquivalenceCertificate {
            alpha,
            frobenius_star_exponent: 0,
        };
        assert!(cert.holds(&a, &id, 3).unwrap());

        assert_eq!(
            equivalent_to_unital(&id, 3).unwrap().unwrap(),
            f5.one()
        );
        assert!(equivalent_to_unital(&bino(&f5, 1, 1, 2), 3).unwrap().is_none());

        let fu = ring("FU(9,4)");
        let a = Binomial::identity(&fu, 3).unwrap();
        assert!(matches!(
            equivalent_to_unital(&a, 12),
            Err(Error::NotCoprime(_))
        ));
    }

    #[test]
    fn isometry_classification() {
        let f4 = ring("F(4)");
        let a = bino_c(&f4, 1, &[1, 1], &[1, 1]);
        let b = bino_c(&f4, 1, &[0, 1], &[0, 1]);
        let cert = isometry_b1_classify(&a, &b, 5, B).unwrap().unwrap();
        assert_eq!(cert.frobenius_star_exponent, 1);
        assert_eq!(cert.alpha, f4.one());
        assert!(cert.holds(&a, &b, 5).unwrap());

        let same = isometry_b1_classify(&a, &a, 5, B).unwrap().unwrap();
        assert_eq!(same.frobenius_star_exponent, 0);

        let z4 = ring("Z(4)");
        let a = bino(&z4, 1, 1, 3);
        let b = bino(&z4, 1, 1, 1);
        assert!(isometry_b1_classify(&a, &b, 2, B).unwrap().is_none());

        let bad = bino(&z4, 2, 1, 3);
        assert!(isometry_b1_classify(&bad, &bad, 4, B).is_err());
    }

    #[test]
    fn x_plus_1_test() {
        let f5 = ring("F(5)");
        assert_eq!(
            isometric_to_x_plus_1(&bino(&f5, 1, 4, 2), 3).unwrap(),
            Some(f5.from_int(3))
        );
        assert_eq!(
            isometric_to_x_plus_1(&bino(&f5, 1, 1, 1), 3).unwrap(),
            Some(f5.one())
        );
        let z4 = ring("Z(4)");
        assert!(isometric_to_x_plus_1(&bino(&z4, 1, 1, 3), 2).unwrap().is_none());
        let f4 = ring("F(4)");
        let w = bino_c(&f4, 1, &[0, 1], &[0, 1]);
        assert!(isometric_to_x_plus_1(&w, 5).unwrap().is_none());
        assert!(isometric_to_x_plus_1(&bino(&f5, 2, 1, 1), 3).is_err());
    }
}
