//! Polynomials over a finite chain ring.
//!
//! Coefficients are ascending with trailing zeros trimmed. Division requires a
//! divisor with unit leading coefficient. The factorization entry point covers
//! monic polynomials whose residue image is squarefree: the image is factored
//! over the residue field and the factors are lifted layer by layer along
//! powers of the maximal ideal until the product is exact (over a field the
//! residue factorization is already the answer and multiplicities are allowed).
//!
//! The module also carries the trinomial discriminant in closed form and the
//! multiplicative order of x modulo a field polynomial, both of which the code
//! enumeration and transfer layers depend on.

use std::fmt;

use serde_json::Value;

use crate::arith::{factorize, gcd, lcm};
use crate::field::{Fq, FqElem, FqPoly};
use crate::ring::{ChainRing, RingElement};
use crate::{Error, Result};

/// Dense polynomial over a chain ring, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct RingPoly {
    ring: ChainRing,
    coeffs: Vec<RingElement>,
}

impl RingPoly {
    pub fn new(ring: &ChainRing, coeffs: Vec<RingElement>) -> RingPoly {
        let mut p = RingPoly {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(ring: &ChainRing) -> RingPoly {
        RingPoly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &ChainRing) -> RingPoly {
        RingPoly::constant(ring.one())
    }

    pub fn constant(c: RingElement) -> RingPoly {
        let ring = c.ring().clone();
        RingPoly::new(&ring, vec![c])
    }

    pub fn x(ring: &ChainRing) -> RingPoly {
        RingPoly::x_pow(ring, 1)
    }

    pub fn x_pow(ring: &ChainRing, k: usize) -> RingPoly {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = ring.one();
        RingPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_ints(ring: &ChainRing, coeffs: &[i64]) -> RingPoly {
        RingPoly::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    /// Parses either a JSON list of coefficient values (ascending) or a sum of
    /// terms like `x^3 - 2*x + 1` or `[0,1]*x^2 + [2,1]`.
    pub fn parse(ring: &ChainRing, text: &str) -> Result<RingPoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact.starts_with('[') {
            if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(&compact) {
                let coeffs = items
                    .iter()
                    .map(|v| ring.element_from_value(v))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(RingPoly::new(ring, coeffs));
            }
        }
        let mut chunks: Vec<&str> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        for (i, ch) in compact.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    chunks.push(&compact[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        chunks.push(&compact[start..]);
        let mut out = RingPoly::zero(ring);
        for chunk in chunks {
            let (coef, exp) = parse_term(ring, chunk)?;
            let mono = RingPoly::x_pow(ring, exp).scale(&coef);
            out = out.add(&mono);
        }
        Ok(out)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| *c == self.ring.one()).unwrap_or(false)
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        RingPoly::new(&self.ring, out)
    }

    pub fn sub(&self, other: &RingPoly) -> RingPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.sub(&self.coeff(i), &other.coeff(i)));
        }
        RingPoly::new(&self.ring, out)
    }

    pub fn neg(&self) -> RingPoly {
        RingPoly::new(
            &self.ring,
            self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero(&self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ring.mul(a, b);
                out[i + j] = self.ring.add(&out[i + j], &t);
            }
        }
        RingPoly::new(&self.ring, out)
    }

    pub fn scale(&self, c: &RingElement) -> RingPoly {
        RingPoly::new(
            &self.ring,
            self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect(),
        )
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> RingPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RingPoly {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Euclidean division; the divisor needs a unit leading coefficient.
    pub fn divmod(&self, g: &RingPoly) -> Result<(RingPoly, RingPoly)> {
        let dg = g
            .deg()
            .ok_or_else(|| Error::Invalid("division by the zero polynomial".into()))?;
        let lg = g.leading().unwrap();
        let lg_inv = self.ring.inv(lg).map_err(|_| {
            Error::NotAUnit("divisor has a non-unit leading coefficient".into())
        })?;
        let mut rem = self.clone();
        let mut quot = vec![self.ring.zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.deg() {
            if dr < dg {
                break;
            }
            let c = self.ring.mul(rem.leading().unwrap(), &lg_inv);
            let pos = dr - dg;
            quot[pos] = self.ring.add(&quot[pos], &c);
            for j in 0..=dg {
                let t = self.ring.mul(&c, &g.coeff(j));
                rem.coeffs[pos + j] = self.ring.sub(&rem.coeffs[pos + j], &t);
            }
            rem.trim();
        }
        Ok((RingPoly::new(&self.ring, quot), rem))
    }

    pub fn rem(&self, g: &RingPoly) -> Result<RingPoly> {
        Ok(self.divmod(g)?.1)
    }

    pub fn pow_mod(&self, mut k: u128, m: &RingPoly) -> Result<RingPoly> {
        let mut base = self.rem(m)?;
        let mut acc = RingPoly::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &RingElement) -> RingElement {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    /// Coefficient-wise image in the residue field.
    pub fn residue_poly(&self) -> FqPoly {
        let fq = self.ring.residue_field();
        fq.ptrim(self.coeffs.iter().map(|c| self.ring.residue(c)).collect())
    }

    /// Coefficient-wise lift of a residue-field polynomial.
    pub fn lift_from_field(ring: &ChainRing, f: &FqPoly) -> RingPoly {
        RingPoly::new(ring, f.iter().map(|c| ring.lift(c)).collect())
    }

    /// Coefficient-wise exact division by gamma^k.
    pub fn div_gamma_exact(&self, k: u32) -> Result<RingPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.ring.div_gamma_exact(c, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPoly::new(&self.ring, coeffs))
    }

    /// Scales by gamma^k.
    pub fn gamma_scale(&self, k: u32) -> RingPoly {
        self.scale(&self.ring.gamma_pow(k))
    }
}

fn parse_term(ring: &ChainRing, term: &str) -> Result<(RingElement, usize)> {
    let (negate, rest) = match term.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if rest.is_empty() {
        return Err(Error::Parse(format!("empty term in polynomial near {term:?}")));
    }
    let (coef_text, exp) = match rest.find('x') {
        None => (rest, 0usize),
        Some(pos) => {
            let after = &rest[pos + 1..];
            let exp = if after.is_empty() {
                1
            } else if let Some(e) = after.strip_prefix('^') {
                e.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
            } else {
                return Err(Error::Parse(format!("malformed term {term:?}")));
            };
            let mut c = &rest[..pos];
            if let Some(stripped) = c.strip_suffix('*') {
                c = stripped;
            }
            (c, exp)
        }
    };
    let coef = if coef_text.is_empty() {
        ring.one()
    } else {
        ring.element_from_str(coef_text)?
    };
    Ok((if negate { ring.neg(&coef) } else { coef }, exp))
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let one = self.ring.one();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if *c == one && i == 1 => f.write_str("x")?,
                _ if *c == one => write!(f, "x^{i}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.ring.name())
    }
}

/// Builds the trinomial modulus x^n - a x^k - b.
pub fn trinomial_modulus(
    ring: &ChainRing,
    n: usize,
    k: usize,
    a: &RingElement,
    b: &RingElement,
) -> Result<RingPoly> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!(
            "trinomial exponent k = {k} must satisfy 0 < k < n = {n}"
        )));
    }
    if n > 1 << 16 {
        return Err(Error::Unsupported(format!("degree {n} above 2^16")));
    }
    let mut coeffs = vec![ring.zero(); n + 1];
    coeffs[0] = ring.neg(b);
    coeffs[k] = ring.neg(a);
    coeffs[n] = ring.one();
    Ok(RingPoly::new(ring, coeffs))
}

/// A factorization unit * prod factors[i]^mult[i].
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: RingElement,
    pub factors: Vec<(RingPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> RingPoly {
        let mut out = RingPoly::constant(self.unit.clone());
        for (g, m) in &self.factors {
            for _ in 0..*m {
                out = out.mul(g);
            }
        }
        out
    }
}

/// Lifts a coprime monic factorization of the residue image of a monic f to an
/// exact factorization over the chain ring, one maximal-ideal layer at a time.
pub fn hensel_lift(f: &RingPoly, bars: &[FqPoly]) -> Result<Vec<RingPoly>> {
    let ring = f.ring().clone();
    let fq = ring.residue_field();
    if !f.is_monic() {
        return Err(Error::Invalid("lifting requires a monic polynomial".into()));
    }
    if bars.is_empty() {
        return Err(Error::Invalid("no residue factors supplied".into()));
    }
    for bar in bars {
        let d = fq
            .pdeg(bar)
            .ok_or_else(|| Error::Invalid("zero residue factor".into()))?;
        if d == 0 || bar[d] != fq.one() {
            return Err(Error::Invalid(
                "residue factors must be monic and nonconstant".into(),
            ));
        }
    }
    let mut prod_bar = fq.pone();
    for bar in bars {
        prod_bar = fq.pmul(&prod_bar, bar);
    }
    if prod_bar != f.residue_poly() {
        return Err(Error::Invalid(
            "residue factors do not multiply to the residue image".into(),
        ));
    }
    for (i, bi) in bars.iter().enumerate() {
        for bj in &bars[i + 1..] {
            if !fq.pis_one(&fq.pgcd(bi, bj)?) {
                return Err(Error::NotCoprime(
                    "residue factors must be pairwise coprime".into(),
                ));
            }
        }
    }
    // partial-product inverses over the residue field
    let mut sigmas: Vec<FqPoly> = Vec::with_capacity(bars.len());
    for (i, bar) in bars.iter().enumerate() {
        let mut others = fq.pone();
        for (j, other) in bars.iter().enumerate() {
            if i != j {
                others = fq.pmod(&fq.pmul(&others, other), bar)?;
            }
        }
        sigmas.push(fq.pinv_mod(&others, bar)?);
    }
    let mut lifts: Vec<RingPoly> = bars
        .iter()
        .map(|bar| RingPoly::lift_from_field(&ring, bar))
        .collect();
    for layer in 1..ring.s() {
        let mut prod = RingPoly::one(&ring);
        for g in &lifts {
            prod = prod.mul(g);
        }
        let delta = f.sub(&prod);
        if delta.is_zero() {
            break;
        }
        let scaled = delta.div_gamma_exact(layer).map_err(|_| {
            Error::Internal("lifting defect is not divisible by the expected power".into())
        })?;
        let dbar = scaled.residue_poly();
        for (i, bar) in bars.iter().enumerate() {
            let ui = fq.pmod(&fq.pmul(&dbar, &sigmas[i]), bar)?;
            let correction = RingPoly::lift_from_field(&ring, &ui).gamma_scale(layer);
            lifts[i] = lifts[i].add(&correction);
        }
    }
    let mut check = RingPoly::one(&ring);
    for g in &lifts {
        check = check.mul(g);
    }
    if check != *f {
        return Err(Error::Internal(
            "lifted factors do not multiply back exactly".into(),
        ));
    }
    Ok(lifts)
}

/// Factors a polynomial with unit leading coefficient over the chain ring.
///
/// Over a field this is the complete factorization (multiplicities allowed
/// unless `require_squarefree` is set). Over a proper chain ring the residue
/// image must be squarefree; the result is the exact product of monic lifts of
/// the residue factors, each appearing once.
pub fn factor_basic_irreducible(
    f: &RingPoly,
    require_squarefree: bool,
) -> Result<Factorization> {
    let ring = f.ring().clone();
    let fq = ring.residue_field();
    let lead = f
        .leading()
        .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?
        .clone();
    if !ring.is_unit(&lead) {
        return Err(Error::NotAUnit(
            "factorization requires a unit leading coefficient".into(),
        ));
    }
    let monic = f.scale(&ring.inv(&lead)?);
    let res = monic.residue_poly();
    let (_, bar_factors) = fq.factor(&res)?;
    let has_repeats = bar_factors.iter().any(|(_, m)| *m > 1);
    if ring.is_field() {
        if require_squarefree && has_repeats {
            return Err(Error::NotSquareFree(
                "polynomial has repeated factors".into(),
            ));
        }
        let factors = bar_factors
            .into_iter()
            .map(|(g, m)| (RingPoly::lift_from_field(&ring, &g), m))
            .collect();
        return Ok(Factorization {
            unit: lead,
            factors,
        });
    }
    if has_repeats {
        return Err(Error::NotSquareFree(
            "the residue image has repeated factors, so the factors cannot be lifted".into(),
        ));
    }
    let bars: Vec<FqPoly> = bar_factors.into_iter().map(|(g, _)| g).collect();
    let lifts = hensel_lift(&monic, &bars)?;
    Ok(Factorization {
        unit: lead,
        factors: lifts.into_iter().map(|g| (g, 1)).collect(),
    })
}

/// Is the residue image of f squarefree?
pub fn is_residue_squarefree(f: &RingPoly) -> Result<bool> {
    f.ring().residue_field().pis_squarefree(&f.residue_poly())
}

/// Multiplicative order of x modulo f over F_q; f needs a nonzero constant
/// term.
pub fn poly_order(fq: &Fq, f: &FqPoly) -> Result<u128> {
    let d = fq
        .pdeg(f)
        .ok_or_else(|| Error::Invalid("zero polynomial has no order".into()))?;
    if d == 0 {
        return Err(Error::Invalid("constant polynomial has no order".into()));
    }
    if fq.is_zero_elem(&f[0]) {
        return Err(Error::Invalid(
            "x divides the polynomial, so x has no order modulo it".into(),
        ));
    }
    let monic = fq.pmonic(f)?;
    let (_, factors) = fq.factor(&monic)?;
    let mut result: u128 = 1;
    let mut max_mult = 1u32;
    let x = fq.px();
    for (g, mult) in &factors {
        let dg = fq.pdeg(g).unwrap();
        let mut qd1: u128 = 1;
        for _ in 0..dg {
            qd1 = qd1
                .checked_mul(fq.q())
                .ok_or(Error::Overflow("field size power"))?;
        }
        qd1 -= 1;
        let mut ord = qd1;
        for (prime, _) in factorize(qd1)? {
            while ord % prime == 0 {
                let cand = fq.ppow_mod(&x, ord / prime, g)?;
                if fq.pis_one(&cand) {
                    ord /= prime;
                } else {
                    break;
                }
            }
        }
        result = lcm(result, ord)?;
        max_mult = max_mult.max(*mult);
    }
    if max_mult > 1 {
        let mut pt: u128 = 1;
        while pt < max_mult as u128 {
            pt = pt
                .checked_mul(fq.p() as u128)
                .ok_or(Error::Overflow("multiplicity adjustment"))?;
        }
        result = result
            .checked_mul(pt)
            .ok_or(Error::Overflow("polynomial order"))?;
    }
    Ok(result)
}

/// Discriminant of the literal trinomial x^n + a x^k + b over F_q, in closed
/// form. With d = gcd(n,k), N = n/d, K = k/d:
///
/// disc = (-1)^(n(n-1)/2) b^(k-1) [n^N b^(N-K) - (-1)^N (n-k)^(N-K) k^K a^N]^d
pub fn trinomial_discriminant(
    fq: &Fq,
    n: u64,
    k: u64,
    a: &FqElem,
    b: &FqElem,
) -> Result<FqElem> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!(
            "trinomial exponent k = {k} must satisfy 0 < k < n = {n}"
        )));
    }
    if n > 1 << 31 {
        return Err(Error::Unsupported("trinomial degree above 2^31".into()));
    }
    let d = gcd(n as u128, k as u128);
    let nn = (n as u128) / d;
    let kk = (k as u128) / d;
    let int = |v: u64| fq.from_int(v as i64);
    let term1 = fq.mul(&fq.pow(&int(n), nn), &fq.pow(b, nn - kk));
    let mut term2 = fq.mul(
        &fq.pow(&int(n - k), nn - kk),
        &fq.mul(&fq.pow(&int(k), kk), &fq.pow(a, nn)),
    );
    if nn % 2 == 1 {
        term2 = fq.neg(&term2);
    }
    let bracket = fq.sub(&term1, &term2);
    let mut disc = fq.mul(&fq.pow(b, (k - 1) as u128), &fq.pow(&bracket, d));
    if (n as u128) * ((n - 1) as u128) / 2 % 2 == 1 {
        disc = fq.neg(&disc);
    }
    Ok(disc)
}

/// Whether x^n - a x^k - b is squarefree over F_q for every pair of units
/// (a, b): exactly when p divides nk but not n + k.
pub fn trinomial_always_squarefree(p: u64, n: u64, k: u64) -> bool {
    (n % p == 0 || k % p == 0) && (n + k) % p != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(text: &str) -> ChainRing {
        ChainRing::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let z9 = ring("Z(9)");
        let f = RingPoly::parse(&z9, "x^3 - 2*x + 1").unwrap();
        assert_eq!(f, RingPoly::from_ints(&z9, &[1, -2, 0, 1]));
        assert_eq!(f.to_string(), "1 + 7*x + x^3");
        assert_eq!(RingPoly::parse(&z9, &f.to_string()).unwrap(), f);

        let gr = ring("GR(4,2)");
        let g = RingPoly::parse(&gr, "[1,2]*x^2 + [0,1]").unwrap();
        assert_eq!(g.coeff(0).coords(), &[0, 1]);
        assert_eq!(g.coeff(2).coords(), &[1, 2]);
        assert_eq!(RingPoly::parse(&gr, &g.to_string()).unwrap(), g);

        // JSON coefficient-list syntax
        let h = RingPoly::parse(&gr, "[[0,1], 0, [1,2]]").unwrap();
        assert_eq!(h, g);

        // x alone, signs, repeated monomials
        let k = RingPoly::parse(&z9, "-x + x + 2x^2").unwrap();
        assert_eq!(k, RingPoly::from_ints(&z9, &[0, 0, 2]));
        assert!(RingPoly::parse(&z9, "x^").is_err());
        assert!(RingPoly::parse(&z9, "y + 1").is_err());
    }

    #[test]
    fn division_round_trips_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for text in ["Z(9)", "GR(4,2)", "FU(2,3)", "CR(3,2,1,2,1;[1])"] {
            let rg = ring(text);
            let elems: Vec<_> = rg.elements().collect();
            for _ in 0..40 {
                let f = RingPoly::new(
                    &rg,
                    (0..rng.gen_range(0..6))
                        .map(|_| elems[rng.gen_range(0..elems.len())].clone())
                        .collect(),
                );
                // monic divisor of random degree
                let dg = rng.gen_range(1..4);
                let mut gc: Vec<_> = (0..dg)
                    .map(|_| elems[rng.gen_range(0..elems.len())].clone())
                    .collect();
                gc.push(rg.one());
                let g = RingPoly::new(&rg, gc);
                let (q, r) = f.divmod(&g).unwrap();
                assert_eq!(q.mul(&g).add(&r), f, "{text}");
                assert!(r.deg().map(|d| d < g.deg().unwrap()).unwrap_or(true));
            }
        }
        // non-unit leading coefficient is rejected
        let z4 = ring("Z(4)");
        let f = RingPoly::from_ints(&z4, &[1, 1, 1]);
        let g = RingPoly::from_ints(&z4, &[1, 2]);
        assert!(f.divmod(&g).is_err());
    }

    #[test]
    fn lift_quadratic_over_z9() {
        let z9 = ring("Z(9)");
        let f = RingPoly::from_ints(&z9, &[2, 3, 1]); // x^2 + 3x + 2
        let fq = z9.residue_field();
        let bars = vec![fq.poly_from_base(&[1, 1]), fq.poly_from_base(&[2, 1])];
        let lifts = hensel_lift(&f, &bars).unwrap();
        assert_eq!(lifts[0], RingPoly::from_ints(&z9, &[1, 1]));
        assert_eq!(lifts[1], RingPoly::from_ints(&z9, &[2, 1]));
        assert_eq!(lifts[0].mul(&lifts[1]), f);
    }

    #[test]
    fn lift_recovers_exact_factors() {
        // (x - 1)(x - (2+u)) over F_9[u]/(u^4): residues x-1, x-2 are coprime
        let fu = ring("FU(9,4)");
        let one = fu.one();
        let a = fu.element_from_str("[2,1]").unwrap(); // 2 + u
        let f1 = RingPoly::new(&fu, vec![fu.neg(&one), one.clone()]);
        let f2 = RingPoly::new(&fu, vec![fu.neg(&a), one.clone()]);
        let f = f1.mul(&f2);
        let fq = fu.residue_field();
        let (_, bars) = fq.factor(&f.residue_poly()).unwrap();
        let bars: Vec<_> = bars.into_iter().map(|(g, _)| g).collect();
        assert_eq!(bars.len(), 2);
        let lifts = hensel_lift(&f, &bars).unwrap();
        let mut prod = RingPoly::one(&fu);
        for g in &lifts {
            prod = prod.mul(g);
        }
        assert_eq!(prod, f);
        // uniqueness: the lifts are exactly the constructions above
        assert!(lifts.contains(&f1));
        assert!(lifts.contains(&f2));
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let z9 = ring("Z(9)");
        let f = RingPoly::from_ints(&z9, &[2, 3, 1]);
        let fq = z9.residue_field();
        // not the right product
        assert!(hensel_lift(&f, &[fq.poly_from_base(&[1, 1]), fq.poly_from_base(&[1, 1])]).is_err());
        // not monic upstairs
        let g = RingPoly::from_ints(&z9, &[2, 3, 2]);
        assert!(hensel_lift(&g, &[fq.poly_from_base(&[1, 1])]).is_err());
    }

    #[test]
    fn factor_cube_roots_of_unity_over_z4() {
        let z4 = ring("Z(4)");
        let f = RingPoly::from_ints(&z4, &[-1, 0, 0, 1]); // x^3 - 1
        let fact = factor_basic_irreducible(&f, false).unwrap();
        assert_eq!(fact.unit, z4.one());
        assert_eq!(fact.factors.len(), 2);
        let polys: Vec<&RingPoly> = fact.factors.iter().map(|(g, _)| g).collect();
        assert!(polys.contains(&&RingPoly::from_ints(&z4, &[3, 1]))); // x - 1
        assert!(polys.contains(&&RingPoly::from_ints(&z4, &[1, 1, 1]))); // x^2 + x + 1
        assert_eq!(fact.product(), f);
    }

    #[test]
    fn factor_respects_squarefree_requirements() {
        let z4 = ring("Z(4)");
        // x^2 + 1 has residue (x+1)^2
        let f = RingPoly::from_ints(&z4, &[1, 0, 1]);
        assert!(matches!(
            factor_basic_irreducible(&f, false),
            Err(Error::NotSquareFree(_))
        ));
        assert!(!is_residue_squarefree(&f).unwrap());

        // over a field, multiplicities are fine unless explicitly rejected
        let f2 = ring("F(2)");
        let g = RingPoly::from_ints(&f2, &[1, 0, 1]); // (x+1)^2
        let fact = factor_basic_irreducible(&g, false).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0].1, 2);
        assert_eq!(fact.product(), g);
        assert!(factor_basic_irreducible(&g, true).is_err());
    }

    #[test]
    fn factor_scales_out_the_unit() {
        let z9 = ring("Z(9)");
        // 2(x+1)(x+2) = 2x^2 + 6x + 4
        let f = RingPoly::from_ints(&z9, &[4, 6, 2]);
        let fact = factor_basic_irreducible(&f, false).unwrap();
        assert_eq!(fact.unit, z9.from_int(2));
        assert_eq!(fact.product(), f);
    }

    #[test]
    fn orders_of_x_modulo_field_polynomials() {
        let f2 = Fq::generate(2, 1).unwrap();
        assert_eq!(poly_order(&f2, &f2.poly_from_base(&[1, 1, 1])).unwrap(), 3);
        assert_eq!(poly_order(&f2, &f2.poly_from_base(&[1, 1, 0, 1])).unwrap(), 7);
        // (x+1)^2: order doubles to clear the repeated factor
        assert_eq!(poly_order(&f2, &f2.poly_from_base(&[1, 0, 1])).unwrap(), 2);
        let f3 = Fq::generate(3, 1).unwrap();
        assert_eq!(poly_order(&f3, &f3.poly_from_base(&[1, 0, 1])).unwrap(), 4);
        assert_eq!(poly_order(&f3, &f3.poly_from_base(&[2, 1])).unwrap(), 1); // x - 1
        assert!(poly_order(&f3, &f3.poly_from_base(&[0, 1])).is_err());
        // brute-force cross-check: order of x mod f equals the first k with
        // x^k = 1
        for coeffs in [[1u64, 1, 1], [2, 0, 1], [1, 2, 1], [2, 2, 1]] {
            let f = f3.poly_from_base(&coeffs);
            let ord = poly_order(&f3, &f).unwrap();
            let x = f3.px();
            let mut k = 1u128;
            let mut acc = f3.pmod(&x, &f).unwrap();
            while !f3.pis_one(&acc) {
                acc = f3.pmod(&f3.pmul(&acc, &x), &f).unwrap();
                k += 1;
            }
            assert_eq!(ord, k, "{coeffs:?}");
        }
    }

    /// Resultant of f and g by the Euclidean identity, used as an independent
    /// check on the closed-form discriminant.
    fn resultant(fq: &Fq, f: &FqPoly, g: &FqPoly) -> FqElem {
        let df = match fq.pdeg(f) {
            Some(d) => d,
            None => return fq.zero(),
        };
        let dg = match fq.pdeg(g) {
            Some(d) => d,
            None => return fq.zero(),
        };
        if dg == 0 {
            return fq.pow(&g[0], df as u128);
        }
        if df == 0 {
            return fq.pow(&f[0], dg as u128);
        }
        if df < dg {
            let sign = fq.pow(&fq.from_int(-1), (df * dg) as u128);
            return fq.mul(&sign, &resultant(fq, g, f));
        }
        let r = fq.pmod(f, g).unwrap();
        let dr = fq.pdeg(&r).map(|d| d as i64).unwrap_or(-1);
        if dr < 0 {
            return fq.zero();
        }
        let lead_pow = fq.pow(&g[dg], (df as i64 - dr) as u128);
        let sign = fq.pow(&fq.from_int(-1), (df * dg) as u128);
        fq.mul(&sign, &fq.mul(&lead_pow, &resultant(fq, g, &r)))
    }

    fn disc_by_resultant(fq: &Fq, f: &FqPoly) -> FqElem {
        let n = fq.pdeg(f).unwrap();
        let fp = fq.pderiv(f);
        if fq.pis_zero(&fp) {
            return fq.zero();
        }
        let res = resultant(fq, f, &fp);
        let sign = fq.pow(&fq.from_int(-1), (n * (n - 1) / 2) as u128);
        // f is monic in every use below, so no leading-coefficient division
        fq.mul(&sign, &res)
    }

    #[test]
    fn resultant_matches_quadratic_formula() {
        let f7 = Fq::generate(7, 1).unwrap();
        for a in 0..7i64 {
            for b in 0..7i64 {
                let f = f7.ptrim(vec![f7.from_int(b), f7.from_int(a), f7.one()]);
                if f7.pdeg(&f) != Some(2) {
                    continue;
                }
                let expect = f7.sub(
                    &f7.mul(&f7.from_int(a), &f7.from_int(a)),
                    &f7.from_int(4 * b),
                );
                assert_eq!(disc_by_resultant(&f7, &f), expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn trinomial_discriminant_known_values() {
        let f5 = Fq::generate(5, 1).unwrap();
        // x^2 + x + 1 over F_5: disc = -3 = 2
        let d = trinomial_discriminant(&f5, 2, 1, &f5.one(), &f5.one()).unwrap();
        assert_eq!(d, f5.from_int(2));
        let f7 = Fq::generate(7, 1).unwrap();
        // x^3 + x + 1 over F_7: disc = -31 = 4
        let d = trinomial_discriminant(&f7, 3, 1, &f7.one(), &f7.one()).unwrap();
        assert_eq!(d, f7.from_int(4));
    }

    #[test]
    fn trinomial_discriminant_matches_resultant() {
        for fq in [
            Fq::generate(2, 2).unwrap(),
            Fq::generate(3, 2).unwrap(),
            Fq::generate(5, 1).unwrap(),
            Fq::generate(7, 1).unwrap(),
        ] {
            let units: Vec<FqElem> = fq
                .all_elems()
                .into_iter()
                .filter(|e| !fq.is_zero_elem(e))
                .collect();
            for n in 2..=6u64 {
                for k in 1..n {
                    for a in &units {
                        for b in &units {
                            let closed = trinomial_discriminant(&fq, n, k, a, b).unwrap();
                            let mut coeffs = vec![fq.zero(); n as usize + 1];
                            coeffs[0] = b.clone();
                            coeffs[k as usize] = a.clone();
                            coeffs[n as usize] = fq.one();
                            let f = fq.ptrim(coeffs);
                            assert_eq!(
                                closed,
                                disc_by_resultant(&fq, &f),
                                "q={} n={n} k={k} a={a:?} b={b:?}",
                                fq.q()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_criterion_is_sufficient() {
        // whenever the criterion holds, every unit-coefficient trinomial has a
        // nonzero discriminant (the converse is not claimed: x^4 - ax - b over
        // F_3 is always squarefree even though 3 divides neither 4 nor 1)
        for (p, fq) in [
            (2u64, Fq::generate(2, 2).unwrap()),
            (3, Fq::generate(3, 1).unwrap()),
            (5, Fq::generate(5, 1).unwrap()),
        ] {
            for n in 2..=7u64 {
                for k in 1..n {
                    if !trinomial_always_squarefree(p, n, k) {
                        continue;
                    }
                    let units: Vec<FqElem> = fq
                        .all_elems()
                        .into_iter()
                        .filter(|e| !fq.is_zero_elem(e))
                        .collect();
                    for a in &units {
                        for b in &units {
                            // the modulus convention negates both coefficients,
                            // which leaves squarefreeness unchanged
                            let d = trinomial_discriminant(&fq, n, k, &fq.neg(a), &fq.neg(b))
                                .unwrap();
                            assert!(!fq.is_zero_elem(&d), "p={p} n={n} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trinomial_modulus_shape() {
        let z4 = ring("Z(4)");
        let a = z4.one();
        let b = z4.one();
        let f = trinomial_modulus(&z4, 3, 1, &a, &b).unwrap();
        assert_eq!(f, RingPoly::from_ints(&z4, &[-1, -1, 0, 1]));
        assert!(trinomial_modulus(&z4, 3, 3, &a, &b).is_err());
        assert!(trinomial_modulus(&z4, 3, 0, &a, &b).is_err());
    }

    #[test]
    fn pow_mod_and_eval() {
        let z9 = ring("Z(9)");
        let f = RingPoly::from_ints(&z9, &[-1, 0, 0, 1]); // x^3 - 1
        let x = RingPoly::x(&z9);
        let r = x.pow_mod(3, &f).unwrap();
        assert_eq!(r, RingPoly::one(&z9));
        let g = RingPoly::from_ints(&z9, &[1, 2, 1]);
        assert_eq!(g.eval(&z9.from_int(2)), z9.from_int(9 % 9));
        assert_eq!(g.eval(&z9.from_int(1)), z9.from_int(4));
    }
}
