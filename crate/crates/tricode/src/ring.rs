//! Finite chain rings and exact arithmetic on their elements.
//!
//! A ring here is R = GR(p^m, r)[u] / (g(u), p^(m-1) u^t) where GR(p^m, r) is
//! the Galois ring Z_{p^m}[w]/(h) and g(u) = u^e - p(a_0 + a_1 u + ... +
//! a_{e-1} u^{e-1}) is an Eisenstein polynomial (a_0 a unit). The parameter
//! tuple (p, m, r, e, t) with 1 <= t <= e determines R up to the choice of h
//! and the a_l. Every nonzero ideal is a power of the maximal ideal, which is
//! generated by u; the nilpotency index of u is s = (m-1)e + t and |R| = p^(rs).
//!
//! Elements are stored as length r*e coordinate vectors over the integers:
//! coordinate j*r + i is the coefficient of w^i u^j, reduced mod p^m for j < t
//! and mod p^(m-1) for j >= t. This is a complete residue system, so equality
//! is coordinate equality.
//!
//! Ring descriptions parse from a small text format:
//!
//! * `Z(p^m)` integers mod a prime power,
//! * `F(p^r)` a finite field,
//! * `GR(p^m,r)` a Galois ring,
//! * `FU(p^r,s)` the quotient F_{p^r}[u]/(u^s),
//! * `CR(p,m,r,e,t)` the general case, optionally followed by `;[a_0,...]`
//!   (Eisenstein data, default [1]) and `;[h_0,...,1]` (the degree-r modulus
//!   of the residue field, ascending, default the lexicographically smallest
//!   monic irreducible).

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::arith::{checked_pow, factorize, mod_inverse};
use crate::field::{Fq, FqElem};
use crate::{Error, Result};

/// Shared immutable ring description.
#[derive(Debug, PartialEq, Eq)]
pub struct RingData {
    p: u64,
    m: u32,
    r: usize,
    e: usize,
    t: usize,
    s: u32,
    pm: u64,
    /// Eisenstein data: u^e = p * (a[0] + a[1] u + ... + a[e-1] u^(e-1)),
    /// entries reduced mod p^m, a[0] a unit.
    a: Vec<u64>,
    /// Whether a/h were the defaults (affects the printed name).
    default_a: bool,
    default_h: bool,
    fq: Fq,
    size: u128,
    units: u128,
}

/// A finite chain ring; cheap to clone and carried by every element.
#[derive(Clone, Debug)]
pub struct ChainRing(Arc<RingData>);

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for ChainRing {}

/// An element of a chain ring, in canonical coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: ChainRing,
    coords: Vec<u64>,
}

impl ChainRing {
    /// Full constructor. `a` is the Eisenstein data (ascending, length <= e,
    /// default [1]); `h` the residue-field modulus over F_p (ascending with
    /// leading coefficient 1, length r+1, default generated).
    pub fn with_params(
        p: u64,
        m: u32,
        r: usize,
        e: usize,
        t: usize,
        a: Option<Vec<i64>>,
        h: Option<Vec<u64>>,
    ) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m == 0 || r == 0 || e == 0 || t == 0 || t > e {
            return Err(Error::Invalid(
                "ring parameters require m,r,e >= 1 and 1 <= t <= e".into(),
            ));
        }
        if m == 1 && e != t {
            return Err(Error::Invalid(
                "when m = 1 the ring is F_q[u]/(u^t), so e must equal t".into(),
            ));
        }
        if r > 64 || e > 64 {
            return Err(Error::Unsupported("extension degrees above 64".into()));
        }
        let pm128 = checked_pow(p as u128, m)?;
        if pm128 > 1 << 31 {
            return Err(Error::Unsupported(
                "p^m above 2^31 (coordinate arithmetic width)".into(),
            ));
        }
        let pm = pm128 as u64;
        let default_h = h.is_none();
        let fq = match h {
            Some(h) => Fq::new(p, r, h)?,
            None => Fq::generate(p, r)?,
        };
        let default_a = a.is_none();
        let a = match a {
            Some(list) => {
                if list.len() > e {
                    return Err(Error::Invalid(format!(
                        "Eisenstein data has {} entries but the degree is {e}",
                        list.len()
                    )));
                }
                let mut v: Vec<u64> = list
                    .iter()
                    .map(|&x| x.rem_euclid(pm as i64) as u64)
                    .collect();
                v.resize(e, 0);
                v
            }
            None => {
                let mut v = vec![0; e];
                v[0] = 1;
                v
            }
        };
        if a[0] % p == 0 {
            return Err(Error::Invalid(
                "the constant Eisenstein coefficient must be a unit".into(),
            ));
        }
        let s = (m - 1) * e as u32 + t as u32;
        let size = checked_pow(p as u128, r as u32 * s)?;
        let q = checked_pow(p as u128, r as u32)?;
        let units = checked_pow(p as u128, r as u32 * (s - 1))?
            .checked_mul(q - 1)
            .ok_or(Error::Overflow("unit count"))?;
        Ok(ChainRing(Arc::new(RingData {
            p,
            m,
            r,
            e,
            t,
            s,
            pm,
            a,
            default_a,
            default_h,
            fq,
            size,
            units,
        })))
    }

    /// Parses a ring description in the `Z/F/GR/FU/CR` format.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in ring description {text:?}")))?;
        if !compact.ends_with(')') {
            return Err(Error::Parse(format!(
                "expected ')' at the end of ring description {text:?}"
            )));
        }
        let name = &compact[..open];
        let body = &compact[open + 1..compact.len() - 1];
        let prime_power = |n: u128| -> Result<(u64, u32)> {
            let f = factorize(n)?;
            if f.len() != 1 {
                return Err(Error::Parse(format!("{n} is not a prime power")));
            }
            Ok((f[0].0 as u64, f[0].1))
        };
        match name {
            "Z" => {
                let n: u128 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in Z({body})")))?;
                let (p, m) = prime_power(n)?;
                Self::with_params(p, m, 1, 1, 1, None, None)
            }
            "F" => {
                let n: u128 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in F({body})")))?;
                let (p, r) = prime_power(n)?;
                Self::with_params(p, 1, r as usize, 1, 1, None, None)
            }
            "GR" => {
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::Parse("GR takes two arguments: GR(p^m,r)".into()));
                }
                let n: u128 = parts[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in GR({body})")))?;
                let r: usize = parts[1]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree in GR({body})")))?;
                let (p, m) = prime_power(n)?;
                Self::with_params(p, m, r, 1, 1, None, None)
            }
            "FU" => {
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::Parse("FU takes two arguments: FU(p^r,s)".into()));
                }
                let n: u128 = parts[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in FU({body})")))?;
                let s: usize = parts[1]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in FU({body})")))?;
                let (p, r) = prime_power(n)?;
                Self::with_params(p, 1, r as usize, s, s, None, None)
            }
            "CR" => {
                let sections: Vec<&str> = body.split(';').collect();
                if sections.is_empty() || sections.len() > 3 {
                    return Err(Error::Parse(
                        "CR takes CR(p,m,r,e,t) with up to two ;[...] sections".into(),
                    ));
                }
                let nums: Vec<&str> = sections[0].split(',').collect();
                if nums.len() != 5 {
                    return Err(Error::Parse("CR needs five parameters p,m,r,e,t".into()));
                }
                let parse_u = |s: &str, what: &str| -> Result<u64> {
                    s.parse()
                        .map_err(|_| Error::Parse(format!("bad {what} in CR({body})")))
                };
                let p = parse_u(nums[0], "prime")?;
                let m = parse_u(nums[1], "precision")? as u32;
                let r = parse_u(nums[2], "inertia degree")? as usize;
                let e = parse_u(nums[3], "ramification degree")? as usize;
                let t = parse_u(nums[4], "cutoff")? as usize;
                let parse_list = |s: &str| -> Result<Vec<i64>> {
                    serde_json::from_str::<Vec<i64>>(s)
                        .map_err(|_| Error::Parse(format!("bad list {s} in CR({body})")))
                };
                let a = match sections.get(1) {
                    Some(sec) if !sec.is_empty() => Some(parse_list(sec)?),
                    _ => None,
                };
                let h = match sections.get(2) {
                    Some(sec) if !sec.is_empty() => {
                        let list = parse_list(sec)?;
                        if list.iter().any(|&x| x < 0) {
                            return Err(Error::Parse(
                                "field modulus coefficients must be non-negative".into(),
                            ));
                        }
                        Some(list.into_iter().map(|x| x as u64).collect())
                    }
                    _ => None,
                };
                Self::with_params(p, m, r, e, t, a, h)
            }
            other => Err(Error::Parse(format!(
                "unknown ring constructor {other:?} (expected Z, F, GR, FU, or CR)"
            ))),
        }
    }

    /// Canonical printable name.
    pub fn name(&self) -> String {
        let d = &*self.0;
        let friendly = d.default_a && d.default_h;
        if friendly && d.e == 1 && d.t == 1 {
            if d.m == 1 && d.r == 1 {
                return format!("F({})", d.p);
            }
            if d.m == 1 {
                return format!("F({})", self.q());
            }
            if d.r == 1 {
                return format!("Z({})", d.pm);
            }
            return format!("GR({},{})", d.pm, d.r);
        }
        if friendly && d.m == 1 {
            return format!("FU({},{})", self.q(), d.t);
        }
        let a_len = d.a.iter().rposition(|&x| x != 0).map_or(1, |i| i + 1);
        let a_list: Vec<String> = d.a[..a_len].iter().map(|x| x.to_string()).collect();
        let mut out = format!(
            "CR({},{},{},{},{};[{}]",
            d.p,
            d.m,
            d.r,
            d.e,
            d.t,
            a_list.join(",")
        );
        if !d.default_h {
            let h_list: Vec<String> = d.fq.modulus().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!(";[{}]", h_list.join(",")));
        }
        out.push(')');
        out
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    pub fn t(&self) -> usize {
        self.0.t
    }

    /// Nilpotency index of the maximal-ideal generator: s = (m-1)e + t.
    pub fn s(&self) -> u32 {
        self.0.s
    }

    /// The scalar modulus p^m.
    pub fn pm(&self) -> u64 {
        self.0.pm
    }

    /// Residue field size q = p^r.
    pub fn q(&self) -> u128 {
        (self.0.p as u128).pow(self.0.r as u32)
    }

    /// |R| = p^(rs).
    pub fn size(&self) -> u128 {
        self.0.size
    }

    /// |R^x| = p^(r(s-1)) (q - 1).
    pub fn units_count(&self) -> u128 {
        self.0.units
    }

    /// Whether R is a field (s = 1).
    pub fn is_field(&self) -> bool {
        self.0.s == 1
    }

    pub fn residue_field(&self) -> &Fq {
        &self.0.fq
    }

    pub fn eisenstein_data(&self) -> &[u64] {
        &self.0.a
    }

    fn mod_at(&self, j: usize) -> u64 {
        if j < self.0.t {
            self.0.pm
        } else {
            self.0.pm / self.0.p
        }
    }

    fn check_same(&self, x: &RingElement) {
        assert!(
            *self == x.ring,
            "element of {} used with {}",
            x.ring.name(),
            self.name()
        );
    }

    // ---- element constructors ----------------------------------------------

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            coords: vec![0; self.0.r * self.0.e],
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        let mut z = self.zero();
        z.coords[0] = n.rem_euclid(self.0.pm as i64) as u64 % self.mod_at(0);
        z
    }

    /// The maximal-ideal generator: the image of u. For e = 1 this is the
    /// scalar p*a_0.
    pub fn gamma(&self) -> RingElement {
        if self.0.e > 1 {
            let mut z = self.zero();
            z.coords[self.0.r] = 1 % self.mod_at(1);
            z
        } else {
            self.from_int((self.0.p * self.0.a[0] % self.0.pm) as i64)
        }
    }

    /// The Galois-ring generator w (zero when r = 1).
    pub fn omega(&self) -> RingElement {
        let mut z = self.zero();
        if self.0.r > 1 {
            z.coords[1] = 1;
        }
        z
    }

    /// gamma^k (zero for k >= s).
    pub fn gamma_pow(&self, k: u32) -> RingElement {
        if k >= self.0.s {
            return self.zero();
        }
        let mut acc = self.one();
        let g = self.gamma();
        for _ in 0..k {
            acc = self.mul(&acc, &g);
        }
        acc
    }

    /// Builds an element from raw coordinates (length r*e, coefficient of
    /// w^i u^j at j*r + i), reducing each into canonical range.
    pub fn from_coords(&self, raw: &[i64]) -> Result<RingElement> {
        let n = self.0.r * self.0.e;
        if raw.len() > n {
            return Err(Error::Invalid(format!(
                "{} coordinates supplied but the ring has {n}",
                raw.len()
            )));
        }
        let mut coords = vec![0u64; n];
        for (k, &v) in raw.iter().enumerate() {
            let j = k / self.0.r;
            let mj = self.mod_at(j);
            if mj > 1 {
                coords[k] = v.rem_euclid(mj as i64) as u64;
            }
        }
        Ok(RingElement {
            ring: self.clone(),
            coords,
        })
    }

    /// Parses an element from a JSON-style value: a bare integer is a scalar;
    /// a flat integer list is read along w when e = 1 and along u otherwise;
    /// a nested list gives one w-list (or scalar) per power of u.
    pub fn element_from_value(&self, v: &Value) -> Result<RingElement> {
        let as_int = |v: &Value| -> Result<i64> {
            v.as_i64()
                .ok_or_else(|| Error::Parse(format!("expected an integer, found {v}")))
        };
        match v {
            Value::Number(_) => Ok(self.from_int(as_int(v)?)),
            Value::Array(items) => {
                let nested = items.iter().any(|x| x.is_array());
                let d = &*self.0;
                let mut raw = vec![0i64; d.r * d.e];
                if nested {
                    if items.len() > d.e {
                        return Err(Error::Parse(format!(
                            "{} coefficients along u but the ring has degree {}",
                            items.len(),
                            d.e
                        )));
                    }
                    for (j, item) in items.iter().enumerate() {
                        match item {
                            Value::Array(inner) => {
                                if inner.len() > d.r {
                                    return Err(Error::Parse(format!(
                                        "{} coefficients along w but the ring has degree {}",
                                        inner.len(),
                                        d.r
                                    )));
                                }
                                for (i, c) in inner.iter().enumerate() {
                                    raw[j * d.r + i] = as_int(c)?;
                                }
                            }
                            _ => raw[j * d.r] = as_int(item)?,
                        }
                    }
                } else if d.e == 1 {
                    if items.len() > d.r {
                        return Err(Error::Parse(format!(
                            "{} coefficients along w but the ring has degree {}",
                            items.len(),
                            d.r
                        )));
                    }
                    for (i, c) in items.iter().enumerate() {
                        raw[i] = as_int(c)?;
                    }
                } else {
                    if items.len() > d.e {
                        return Err(Error::Parse(format!(
                            "{} coefficients along u but the ring has degree {}",
                            items.len(),
                            d.e
                        )));
                    }
                    for (j, c) in items.iter().enumerate() {
                        raw[j * d.r] = as_int(c)?;
                    }
                }
                self.from_coords(&raw)
            }
            other => Err(Error::Parse(format!(
                "expected an integer or list for a ring element, found {other}"
            ))),
        }
    }

    /// Parses an element from text (JSON integer or list syntax).
    pub fn element_from_str(&self, text: &str) -> Result<RingElement> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad element {text:?}: {e}")))?;
        self.element_from_value(&v)
    }

    // ---- arithmetic ----------------------------------------------------------

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.check_same(x);
        self.check_same(y);
        let r = self.0.r;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .enumerate()
            .map(|(k, (&a, &b))| {
                let mj = self.mod_at(k / r);
                if mj <= 1 {
                    0
                } else {
                    (a + b) % mj
                }
            })
            .collect();
        RingElement {
            ring: self.clone(),
            coords,
        }
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        self.check_same(x);
        let r = self.0.r;
        let coords = x
            .coords
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let mj = self.mod_at(k / r);
                if mj <= 1 {
                    0
                } else {
                    (mj - a) % mj
                }
            })
            .collect();
        RingElement {
            ring: self.clone(),
            coords,
        }
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.check_same(x);
        self.check_same(y);
        let d = &*self.0;
        let (r, e) = (d.r, d.e);
        let pm = d.pm as u128;
        let wslots = 2 * r - 1;
        let mut acc = vec![0u128; (2 * e - 1) * wslots];
        for j1 in 0..e {
            for i1 in 0..r {
                let xv = x.coords[j1 * r + i1];
                if xv == 0 {
                    continue;
                }
                for j2 in 0..e {
                    for i2 in 0..r {
                        let yv = y.coords[j2 * r + i2];
                        if yv == 0 {
                            continue;
                        }
                        acc[(j1 + j2) * wslots + i1 + i2] += xv as u128 * yv as u128;
                    }
                }
            }
        }
        // fold w-degrees >= r inside each u-slice using the field modulus,
        // whose non-leading coefficients lift verbatim to Z_{p^m}
        let h = d.fq.modulus();
        for slice in 0..2 * e - 1 {
            let base = slice * wslots;
            for deg in (r..wslots).rev() {
                let c = acc[base + deg] % pm;
                acc[base + deg] = 0;
                if c == 0 {
                    continue;
                }
                for (l, &hl) in h.iter().enumerate().take(r) {
                    if hl != 0 {
                        let sub = c * hl as u128 % pm;
                        let cell = &mut acc[base + deg - r + l];
                        *cell = (*cell % pm + pm - sub) % pm;
                    }
                }
            }
            for i in 0..r {
                acc[base + i] %= pm;
            }
        }
        // cascade u-degrees >= e down via u^e = p(a_0 + ... + a_{e-1} u^{e-1});
        // every step multiplies by p, so this terminates at u-degree < e
        for j in (e..2 * e - 1).rev() {
            for i in 0..r {
                let c = acc[j * wslots + i] % pm;
                acc[j * wslots + i] = 0;
                if c == 0 {
                    continue;
                }
                for (l, &al) in d.a.iter().enumerate() {
                    let coef = d.p as u128 * al as u128 % pm;
                    if coef == 0 {
                        continue;
                    }
                    let cell = &mut acc[(j - e + l) * wslots + i];
                    *cell = (*cell + c * coef) % pm;
                }
            }
        }
        let mut coords = vec![0u64; r * e];
        for j in 0..e {
            let mj = self.mod_at(j) as u128;
            for i in 0..r {
                coords[j * r + i] = if mj <= 1 {
                    0
                } else {
                    (acc[j * wslots + i] % mj) as u64
                };
            }
        }
        RingElement {
            ring: self.clone(),
            coords,
        }
    }

    pub fn pow(&self, x: &RingElement, mut k: u128) -> RingElement {
        let mut base = x.clone();
        let mut out = self.one();
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        out
    }

    /// Image in the residue field F_q = R / (gamma).
    pub fn residue(&self, x: &RingElement) -> FqElem {
        self.check_same(x);
        x.coords[..self.0.r]
            .iter()
            .map(|&c| c % self.0.p)
            .collect()
    }

    /// Coordinate lift of a residue-field element (the section that writes
    /// the field coordinates straight into the w-slots of u^0).
    pub fn lift(&self, c: &FqElem) -> RingElement {
        assert_eq!(c.len(), self.0.r, "residue element width mismatch");
        let mut z = self.zero();
        z.coords[..self.0.r].copy_from_slice(c);
        z
    }

    pub fn is_unit(&self, x: &RingElement) -> bool {
        let res = self.residue(x);
        res.iter().any(|&c| c != 0)
    }

    /// Multiplicative inverse of a unit, by Newton iteration from the
    /// residue-field inverse.
    pub fn inv(&self, x: &RingElement) -> Result<RingElement> {
        let res = self.residue(x);
        if res.iter().all(|&c| c == 0) {
            return Err(Error::NotAUnit(format!("{x} is not invertible")));
        }
        let mut y = self.lift(&self.0.fq.inv(&res)?);
        let one = self.one();
        let two = self.from_int(2);
        for _ in 0..self.0.s + 2 {
            let prod = self.mul(x, &y);
            if prod == one {
                return Ok(y);
            }
            y = self.mul(&y, &self.sub(&two, &prod));
        }
        Err(Error::Internal(
            "inverse iteration failed to converge".into(),
        ))
    }

    // ---- Teichmüller representatives ----------------------------------------

    /// The multiplicative representative over a residue class: the unique
    /// fixed point of x -> x^q lying over c.
    pub fn teichmuller_lift(&self, c: &FqElem) -> RingElement {
        let q = self.q();
        let mut x = self.lift(c);
        for _ in 0..self.0.s + 2 {
            let next = self.pow(&x, q);
            if next == x {
                return x;
            }
            x = next;
        }
        unreachable!("q-power iteration stabilizes within s steps")
    }

    /// All q multiplicative representatives, in residue-field order.
    pub fn teichmuller_set(&self) -> Vec<RingElement> {
        self.0
            .fq
            .all_elems()
            .iter()
            .map(|c| self.teichmuller_lift(c))
            .collect()
    }

    /// A generator of the order q-1 cyclic group of nonzero multiplicative
    /// representatives.
    pub fn teichmuller_generator(&self) -> Result<RingElement> {
        let g = self.0.fq.primitive_element()?;
        Ok(self.teichmuller_lift(&g))
    }

    // ---- gamma-adic structure ------------------------------------------------

    /// One exact solution y of gamma * y = x. Errors unless x is in the
    /// maximal ideal.
    ///
    /// Writing x = sum x_j u^j, the solution has y_{e-1} = (x_0 / p) a_0^{-1}
    /// taken mod p^(m-1) and y_{j-1} = x_j - p a_j y_{e-1}; any lift ambiguity
    /// lands in coordinates that vanish after multiplying back by gamma.
    fn solve_gamma(&self, x: &RingElement) -> Result<RingElement> {
        self.check_same(x);
        let d = &*self.0;
        let res = self.residue(x);
        if res.iter().any(|&c| c != 0) {
            return Err(Error::Invalid(
                "element is a unit, not divisible by gamma".into(),
            ));
        }
        let (r, e) = (d.r, d.e);
        let pm1 = d.pm / d.p;
        let mut coords = vec![0u64; r * e];
        let mut w = vec![0u64; r];
        if d.m > 1 {
            let a0_inv = mod_inverse(d.a[0] as u128, pm1 as u128)
                .expect("Eisenstein constant is a unit") as u64;
            for i in 0..r {
                w[i] = (x.coords[i] / d.p) % pm1 * a0_inv % pm1;
            }
        }
        let top = self.mod_at(e - 1);
        for i in 0..r {
            coords[(e - 1) * r + i] = if top <= 1 { 0 } else { w[i] % top };
        }
        for j in 1..e {
            let mj = self.mod_at(j - 1);
            if mj <= 1 {
                continue;
            }
            let coef = d.p % mj * (d.a[j] % mj) % mj;
            for i in 0..r {
                let sub = coef * (w[i] % mj) % mj;
                coords[(j - 1) * r + i] = (x.coords[j * r + i] % mj + mj - sub) % mj;
            }
        }
        Ok(RingElement {
            ring: self.clone(),
            coords,
        })
    }

    /// Exact division by gamma, normalized so the quotient's top gamma-adic
    /// digit is zero. Errors unless x is in the maximal ideal.
    pub fn div_gamma(&self, x: &RingElement) -> Result<RingElement> {
        self.div_gamma_exact(x, 1)
    }

    /// k-fold exact division by gamma: shifts the gamma-adic digits of x down
    /// by k places. Errors if any of the low k digits is nonzero.
    pub fn div_gamma_exact(&self, x: &RingElement, k: u32) -> Result<RingElement> {
        if k == 0 {
            return Ok(x.clone());
        }
        let digits = self.gamma_digits(x);
        let k = k as usize;
        if digits.iter().take(k).any(|d| d.iter().any(|&c| c != 0)) {
            return Err(Error::Invalid(format!(
                "element is not divisible by gamma^{k}"
            )));
        }
        Ok(self.from_digits(digits.get(k..).unwrap_or(&[])))
    }

    /// gamma-adic digits of x: the unique d_0, ..., d_{s-1} in F_q with
    /// x = sum gamma^i lift(d_i).
    pub fn gamma_digits(&self, x: &RingElement) -> Vec<FqElem> {
        self.check_same(x);
        let mut digits = Vec::with_capacity(self.0.s as usize);
        let mut rest = x.clone();
        for _ in 0..self.0.s {
            let dig = self.residue(&rest);
            rest = self
                .solve_gamma(&self.sub(&rest, &self.lift(&dig)))
                .expect("residue was subtracted");
            digits.push(dig);
        }
        debug_assert!(rest.is_zero(), "gamma-adic expansion must terminate");
        digits
    }

    /// Assembles sum gamma^i lift(digits[i]).
    fn from_digits(&self, digits: &[FqElem]) -> RingElement {
        let mut out = self.zero();
        for (i, dig) in digits.iter().enumerate().take(self.0.s as usize) {
            let term = self.mul(&self.gamma_pow(i as u32), &self.lift(dig));
            out = self.add(&out, &term);
        }
        out
    }

    /// Rebuilds the element with all gamma-adic digits at positions >= lambda
    /// cleared: the canonical representative of x modulo gamma^lambda.
    pub fn reduce_mod_gamma_pow(&self, x: &RingElement, lambda: u32) -> RingElement {
        let mut digits = self.gamma_digits(x);
        digits.truncate(lambda.min(self.0.s) as usize);
        self.from_digits(&digits)
    }

    /// gamma-adic valuation: the largest k with x in gamma^k R (s for zero).
    pub fn valuation(&self, x: &RingElement) -> u32 {
        let digits = self.gamma_digits(x);
        for (i, dig) in digits.iter().enumerate() {
            if dig.iter().any(|&c| c != 0) {
                return i as u32;
            }
        }
        self.0.s
    }

    /// Splits nonzero x as gamma^v * w with w a unit; errors on zero.
    pub fn val_unit(&self, x: &RingElement) -> Result<(u32, RingElement)> {
        if x.is_zero() {
            return Err(Error::Invalid(
                "zero has no valuation decomposition".into(),
            ));
        }
        let v = self.valuation(x);
        let w = self.div_gamma_exact(x, v)?;
        Ok((v, w))
    }

    // ---- multiplicative structure ---------------------------------------------

    /// Order of a unit in R^x.
    pub fn element_order(&self, x: &RingElement) -> Result<u128> {
        if !self.is_unit(x) {
            return Err(Error::NotAUnit(format!(
                "{x} is not a unit, so it has no multiplicative order"
            )));
        }
        let d = &*self.0;
        let q = self.q();
        let mut factors = factorize(q - 1)?;
        let k = d.r as u32 * (d.s - 1);
        if k > 0 {
            factors.push((d.p as u128, k));
        }
        let mut ord = self.units_count();
        let one = self.one();
        for (prime, _) in factors {
            while ord % prime == 0 && self.pow(x, ord / prime) == one {
                ord /= prime;
            }
        }
        Ok(ord)
    }

    /// The abelian-group structure of R^x as a cyclic part of order q-1 times
    /// a p-group given by its cyclic exponents (ascending).
    ///
    /// Closed forms cover fields, Galois rings, and F_q[u]/(u^s); other
    /// parameter combinations fall back to order statistics over the unit
    /// group, bounded by `max_units`.
    pub fn unit_group_structure(&self, max_units: u128) -> Result<UnitGroupStructure> {
        let d = &*self.0;
        let q = self.q();
        let mut exps: Vec<u32>;
        if d.s == 1 {
            exps = Vec::new();
        } else if d.e == 1 && d.t == 1 {
            // Galois ring GR(p^m, r), m = s >= 2
            if d.p > 2 || d.m <= 2 {
                exps = vec![d.m - 1; d.r];
            } else {
                exps = vec![1, d.m - 2];
                exps.extend(std::iter::repeat(d.m - 1).take(d.r - 1));
                exps.sort_unstable();
            }
        } else if d.m == 1 {
            // F_q[u]/(u^s): one rank-r block of exponent ceil(log_p(s/i))
            // for every i < s coprime to p
            let s = d.s as u64;
            exps = Vec::new();
            for i in 1..s {
                if i % d.p == 0 {
                    continue;
                }
                let mut alpha = 0u32;
                let mut v = i;
                while v < s {
                    alpha += 1;
                    v *= d.p;
                }
                exps.extend(std::iter::repeat(alpha).take(d.r));
            }
            exps.sort_unstable();
        } else {
            exps = self.unit_structure_by_order_statistics(max_units)?;
        }
        debug_assert_eq!(
            exps.iter().map(|&x| x as u64).sum::<u64>(),
            d.r as u64 * (d.s as u64 - 1),
            "p-group exponents must account for the full Sylow subgroup"
        );
        Ok(UnitGroupStructure {
            p: d.p,
            coprime_order: q - 1,
            p_exponents: exps,
        })
    }

    fn unit_structure_by_order_statistics(&self, max_units: u128) -> Result<Vec<u32>> {
        let d = &*self.0;
        if self.units_count() > max_units {
            return Err(Error::BoundExceeded(format!(
                "unit group of size {} exceeds the scan bound {max_units}",
                self.units_count()
            )));
        }
        // c_j = #{units x : x^(p^j) = 1}; the multiset of cyclic exponents is
        // the conjugate of the partition log_p(c_j) - log_p(c_{j-1})
        let k = d.r as u32 * (d.s - 1);
        let mut counts = vec![0u64; k as usize + 1];
        let one = self.one();
        for x in self.units() {
            let mut y = x;
            for j in 0..=k {
                if j > 0 {
                    y = self.pow(&y, d.p as u128);
                }
                if y == one {
                    for c in counts.iter_mut().skip(j as usize) {
                        *c += 1;
                    }
                    break;
                }
            }
        }
        let log_p = |n: u64| -> u32 {
            let mut v = n;
            let mut l = 0;
            while v > 1 {
                debug_assert_eq!(v % d.p, 0);
                v /= d.p;
                l += 1;
            }
            l
        };
        let mut ranks = Vec::new(); // ranks[j] = #{i : m_i >= j+1}
        for j in 1..=k as usize {
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
        Ok(exps)
    }

    // ---- enumeration ----------------------------------------------------------

    /// Iterates over all ring elements (mixed-radix counter on coordinates).
    pub fn elements(&self) -> Elements {
        Elements {
            ring: self.clone(),
            next: Some(vec![0; self.0.r * self.0.e]),
        }
    }

    /// Iterates over the units.
    pub fn units(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.elements().filter(|x| x.ring.is_unit(x))
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Element iterator in coordinate-counter order.
pub struct Elements {
    ring: ChainRing,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = RingElement;

    fn next(&mut self) -> Option<RingElement> {
        let cur = self.next.take()?;
        let r = self.ring.0.r;
        let mut succ = cur.clone();
        let mut k = 0;
        loop {
            if k == succ.len() {
                break; // wrapped: this was the last element
            }
            let mj = self.ring.mod_at(k / r);
            succ[k] += 1;
            if succ[k] < mj {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
            k += 1;
        }
        Some(RingElement {
            ring: self.ring.clone(),
            coords: cur,
        })
    }
}

/// Structure of the unit group: Z_{q-1} x prod Z_{p^{e_i}}.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UnitGroupStructure {
    pub p: u64,
    /// Order of the cyclic factor coprime to p (always q - 1).
    pub coprime_order: u128,
    /// Exponents e_i of the p-power cyclic factors, ascending.
    pub p_exponents: Vec<u32>,
}

impl UnitGroupStructure {
    pub fn order(&self) -> u128 {
        let p_part: u128 = self
            .p_exponents
            .iter()
            .map(|&e| (self.p as u128).pow(e))
            .product();
        self.coprime_order * p_part
    }

    /// Printable form like "Z_8 x Z_3^2 x Z_9^2".
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.coprime_order > 1 {
            parts.push(format!("Z_{}", self.coprime_order));
        }
        let mut i = 0;
        while i < self.p_exponents.len() {
            let e = self.p_exponents[i];
            let count = self.p_exponents[i..].iter().take_while(|&&x| x == e).count();
            let modulus = (self.p as u128).pow(e);
            if count == 1 {
                parts.push(format!("Z_{modulus}"));
            } else {
                parts.push(format!("Z_{modulus}^{count}"));
            }
            i += count;
        }
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }
}

impl RingElement {
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self)
    }

    pub fn pow(&self, k: u128) -> RingElement {
        self.ring.pow(self, k)
    }

    pub fn inv(&self) -> Result<RingElement> {
        self.ring.inv(self)
    }

    /// JSON-shaped value mirroring the accepted input syntax.
    pub fn to_value(&self) -> Value {
        let d = &*self.ring.0;
        if d.r == 1 && d.e == 1 {
            return Value::from(self.coords[0]);
        }
        if d.e == 1 {
            return Value::from(self.coords.clone());
        }
        if d.r == 1 {
            return Value::from(self.coords.clone());
        }
        let rows: Vec<Value> = (0..d.e)
            .map(|j| Value::from(self.coords[j * d.r..(j + 1) * d.r].to_vec()))
            .collect();
        Value::from(rows)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_value())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.to_value(), self.ring.name())
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.ring.add(self, rhs)
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.ring.sub(self, rhs)
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.ring.mul(self, rhs)
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.ring.neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text: &str) -> ChainRing {
        ChainRing::parse(text).unwrap()
    }

    #[test]
    fn invariants_and_exhaustive_counts() {
        // (description, s, |R|, |R^x|)
        let table: &[(&str, u32, u128, u128)] = &[
            ("Z(4)", 2, 4, 2),
            ("Z(8)", 3, 8, 4),
            ("Z(9)", 2, 9, 6),
            ("F(4)", 1, 4, 3),
            ("F(9)", 1, 9, 8),
            ("GR(4,2)", 2, 16, 12),
            ("GR(8,2)", 3, 64, 48),
            ("GR(9,2)", 2, 81, 72),
            ("FU(2,3)", 3, 8, 4),
            ("FU(9,4)", 4, 6561, 5832),
            ("CR(3,2,1,2,1;[1])", 3, 27, 18),
        ];
        for &(text, s, size, units) in table {
            let rg = ring(text);
            assert_eq!(rg.s(), s, "{text}");
            assert_eq!(rg.size(), size, "{text}");
            assert_eq!(rg.units_count(), units, "{text}");
            assert_eq!(rg.elements().count() as u128, size, "{text}");
            assert_eq!(rg.units().count() as u128, units, "{text}");
        }
    }

    #[test]
    fn names_round_trip() {
        for text in ["Z(8)", "F(9)", "GR(4,2)", "FU(9,4)", "CR(3,2,1,2,1;[1])"] {
            let rg = ring(text);
            assert_eq!(rg.name(), text);
            assert_eq!(ChainRing::parse(&rg.name()).unwrap(), rg);
        }
        // spellings that normalize
        assert_eq!(ring("Z( 9 )").name(), "Z(9)");
        assert_eq!(ring("CR(2,2,1,1,1)").name(), "Z(4)");
        assert_eq!(ring("CR(3,1,2,4,4)").name(), "FU(9,4)");
    }

    #[test]
    fn galois_ring_generator_relation() {
        // GR(4,2) with the canonical modulus w^2 + w + 1: w*w = 3w + 3
        let rg = ring("GR(4,2)");
        let w = rg.omega();
        let ww = rg.mul(&w, &w);
        assert_eq!(ww.coords(), &[3, 3]);
        // and w^3 = w * w^2 = 3w^2 + 3w = 3(3w+3) + 3w = 12w + 9 = 1 mod 4
        let www = rg.mul(&ww, &w);
        assert_eq!(www, rg.one());
    }

    #[test]
    fn residue_and_lift() {
        let rg = ring("GR(4,2)");
        let x = rg.element_from_str("[2,1]").unwrap(); // 2 + w
        let res = rg.residue(&x);
        assert_eq!(res, vec![0, 1]); // w-bar
        let back = rg.lift(&res);
        assert_eq!(back.coords(), &[0, 1]);
    }

    #[test]
    fn addition_subtraction_negation() {
        let rg = ring("Z(9)");
        let a = rg.from_int(7);
        let b = rg.from_int(5);
        assert_eq!(rg.add(&a, &b), rg.from_int(3));
        assert_eq!(rg.sub(&a, &b), rg.from_int(2));
        assert_eq!(rg.neg(&a), rg.from_int(2));
        assert_eq!(&a + &b, rg.from_int(12));
    }

    #[test]
    fn eisenstein_relations() {
        // Z_9[u]/(u^2 - 3, 3u): u^2 = 3, u^3 = 3u = 0
        let rg = ring("CR(3,2,1,2,1;[1])");
        let u = rg.gamma();
        let u2 = rg.mul(&u, &u);
        assert_eq!(u2, rg.from_int(3));
        assert!(rg.mul(&u2, &u).is_zero());
        assert_eq!(rg.valuation(&u2), 2);
        assert_eq!(rg.gamma_digits(&rg.from_int(3)), vec![
            vec![0],
            vec![0],
            vec![1]
        ]);
        // ramified division: 3 / u = u
        assert_eq!(rg.div_gamma(&rg.from_int(3)).unwrap(), u);
    }

    #[test]
    fn gamma_in_unramified_rings() {
        // in Z(9), gamma = 3 and 6 / gamma = 2
        let rg = ring("Z(9)");
        assert_eq!(rg.gamma(), rg.from_int(3));
        assert_eq!(rg.div_gamma(&rg.from_int(6)).unwrap(), rg.from_int(2));
        assert!(rg.div_gamma(&rg.from_int(4)).is_err());
    }

    #[test]
    fn division_round_trips_everywhere() {
        for text in ["Z(8)", "GR(4,2)", "FU(9,4)", "CR(3,2,1,2,1;[1])", "GR(9,2)"] {
            let rg = ring(text);
            let g = rg.gamma();
            for x in rg.elements() {
                let gx = rg.mul(&g, &x);
                let y = rg.div_gamma(&gx).unwrap();
                assert_eq!(rg.mul(&g, &y), gx, "{text}: gamma*({x}) round trip");
            }
        }
    }

    #[test]
    fn digit_expansion_reconstructs() {
        for text in ["Z(8)", "GR(4,2)", "FU(2,3)", "CR(3,2,1,2,1;[1])"] {
            let rg = ring(text);
            for x in rg.elements() {
                let digits = rg.gamma_digits(&x);
                assert_eq!(digits.len(), rg.s() as usize);
                let mut back = rg.zero();
                for (i, d) in digits.iter().enumerate() {
                    let term = rg.mul(&rg.gamma_pow(i as u32), &rg.lift(d));
                    back = rg.add(&back, &term);
                }
                assert_eq!(back, x, "{text}");
                // truncation at s is the identity
                assert_eq!(rg.reduce_mod_gamma_pow(&x, rg.s()), x);
            }
        }
    }

    #[test]
    fn inverses_for_all_units() {
        for text in ["Z(9)", "GR(4,2)", "FU(2,3)", "CR(3,2,1,2,1;[1])"] {
            let rg = ring(text);
            for x in rg.units() {
                let y = rg.inv(&x).unwrap();
                assert_eq!(rg.mul(&x, &y), rg.one(), "{text}");
            }
        }
        let rg = ring("FU(9,4)");
        let x = rg.element_from_str("[1,1]").unwrap(); // 1 + u
        let y = rg.inv(&x).unwrap();
        assert_eq!(rg.mul(&x, &y), rg.one());
        // (1+u)^-1 = 1 + 2u + u^2 + 2u^3 over F_9 scalars
        assert_eq!(y, rg.element_from_str("[1,2,1,2]").unwrap());
    }

    #[test]
    fn teichmuller_sets() {
        let z9 = ring("Z(9)");
        let reps: Vec<u64> = z9.teichmuller_set().iter().map(|x| x.coords()[0]).collect();
        assert_eq!(reps, vec![0, 1, 8]);
        for x in z9.teichmuller_set() {
            assert_eq!(z9.pow(&x, 3), x);
        }
        let gr = ring("GR(9,2)");
        let set = gr.teichmuller_set();
        assert_eq!(set.len(), 9);
        for x in &set {
            assert_eq!(gr.pow(x, 9), *x);
        }
        // closed under multiplication
        for x in &set {
            for y in &set {
                let prod = gr.mul(x, y);
                assert!(set.contains(&prod));
            }
        }
        let xi = gr.teichmuller_generator().unwrap();
        assert_eq!(gr.element_order(&xi).unwrap(), 8);
    }

    #[test]
    fn element_orders() {
        let z9 = ring("Z(9)");
        assert_eq!(z9.element_order(&z9.from_int(2)).unwrap(), 6);
        assert_eq!(z9.element_order(&z9.from_int(8)).unwrap(), 2);
        assert!(z9.element_order(&z9.from_int(3)).is_err());
        let fu = ring("FU(9,4)");
        let x = fu.element_from_str("[1,1]").unwrap();
        assert_eq!(fu.element_order(&x).unwrap(), 9);
        // exhaustive: order divides |R^x| and matches a brute-force scan
        let rg = ring("GR(4,2)");
        for x in rg.units() {
            let ord = rg.element_order(&x).unwrap();
            let mut acc = x.clone();
            let mut brute = 1u128;
            while acc != rg.one() {
                acc = rg.mul(&acc, &x);
                brute += 1;
            }
            assert_eq!(ord, brute);
        }
    }

    #[test]
    fn unit_group_structures() {
        let cases: &[(&str, u128, &[u32])] = &[
            ("F(9)", 8, &[]),
            ("Z(4)", 1, &[1]),
            ("Z(8)", 1, &[1, 1]),
            ("Z(9)", 2, &[1]),
            ("Z(16)", 1, &[1, 2]),
            ("GR(4,2)", 3, &[1, 1]),
            ("GR(8,2)", 3, &[1, 1, 2]),
            ("GR(9,2)", 8, &[1, 1]),
            ("FU(2,3)", 1, &[2]),
            ("FU(9,4)", 8, &[1, 1, 2, 2]),
        ];
        for &(text, coprime, exps) in cases {
            let rg = ring(text);
            let st = rg.unit_group_structure(1 << 20).unwrap();
            assert_eq!(st.coprime_order, coprime, "{text}");
            assert_eq!(st.p_exponents, exps, "{text}");
            assert_eq!(st.order(), rg.units_count(), "{text}");
        }
    }

    #[test]
    fn order_statistics_agree_with_closed_forms() {
        // force the scan path and compare against the closed-form answer
        for text in ["Z(8)", "Z(9)", "GR(4,2)", "FU(2,3)", "FU(4,3)", "FU(9,4)"] {
            let rg = ring(text);
            let closed = rg.unit_group_structure(1 << 20).unwrap();
            let scanned = rg.unit_structure_by_order_statistics(1 << 20).unwrap();
            assert_eq!(closed.p_exponents, scanned, "{text}");
        }
        // a ramified ring has no closed form; sanity-check the scan directly
        let rg = ring("CR(3,2,1,2,1;[1])");
        let st = rg.unit_group_structure(1 << 20).unwrap();
        assert_eq!(st.order(), 18);
        assert_eq!(st.coprime_order, 2);
        // 1+u has additive-style order dividing 9; the group of 1-units has
        // order 9 and is either Z_9 or Z_3^2
        let one_units: Vec<_> = rg
            .units()
            .filter(|x| rg.residue(x) == vec![1])
            .collect();
        assert_eq!(one_units.len(), 9);
        let max_ord = one_units
            .iter()
            .map(|x| rg.element_order(x).unwrap())
            .max()
            .unwrap();
        let expect = if max_ord == 9 { vec![2] } else { vec![1, 1] };
        assert_eq!(st.p_exponents, expect);
    }

    #[test]
    fn element_parsing_and_display() {
        let gr = ring("GR(4,2)");
        assert_eq!(gr.element_from_str("[3,2]").unwrap().coords(), &[3, 2]);
        assert_eq!(gr.element_from_str("7").unwrap().coords(), &[3, 0]);
        assert_eq!(gr.element_from_str("-1").unwrap().coords(), &[3, 0]);
        let fu = ring("FU(9,4)");
        // flat lists run along u when e > 1
        assert_eq!(
            fu.element_from_str("[1,2,0,1]").unwrap().coords(),
            &[1, 0, 2, 0, 0, 0, 1, 0]
        );
        // nested lists give w-coefficients per power of u
        let x = fu.element_from_str("[[1,2],[0,1]]").unwrap();
        assert_eq!(x.coords(), &[1, 2, 0, 1, 0, 0, 0, 0]);
        // display round-trips through the parser
        for text in ["Z(9)", "GR(4,2)", "FU(9,4)", "CR(3,2,1,2,1;[1])"] {
            let rg = ring(text);
            for x in rg.elements().take(50) {
                let shown = x.to_string();
                assert_eq!(rg.element_from_str(&shown).unwrap(), x, "{text}: {shown}");
            }
        }
        // out-of-range shapes are rejected
        assert!(gr.element_from_str("[1,2,3]").is_err());
        assert!(fu.element_from_str("[[1],[1],[1],[1],[1]]").is_err());
    }

    #[test]
    fn ring_validation_errors() {
        assert!(ChainRing::parse("Z(6)").is_err()); // not a prime power
        assert!(ChainRing::parse("Q(4)").is_err());
        assert!(ChainRing::with_params(4, 1, 1, 1, 1, None, None).is_err());
        assert!(ChainRing::with_params(3, 2, 1, 2, 3, None, None).is_err()); // t > e
        assert!(ChainRing::with_params(3, 1, 1, 3, 2, None, None).is_err()); // m=1, e != t
        assert!(ChainRing::with_params(3, 2, 1, 2, 1, Some(vec![3]), None).is_err()); // a0 not unit
        assert!(ChainRing::with_params(2, 2, 2, 1, 1, None, Some(vec![0, 0, 1])).is_err());
        // reducible h: x^2 - 1 over F_3
        assert!(ChainRing::with_params(3, 1, 2, 1, 1, None, Some(vec![2, 0, 1])).is_err());
    }

    #[test]
    fn mixed_radix_coordinates_in_ramified_rings() {
        // CR(2,2,1,3,2): coords mod 4,4,2; s = 3+2 = 5; |R| = 2^5
        let rg = ring("CR(2,2,1,3,2;[1])");
        assert_eq!(rg.s(), 5);
        assert_eq!(rg.size(), 32);
        assert_eq!(rg.elements().count(), 32);
        let u = rg.gamma();
        assert_eq!(rg.valuation(&u), 1);
        assert!(rg.pow(&u, 5).is_zero());
        assert!(!rg.pow(&u, 4).is_zero());
        // u^3 = 2(a_0) = 2, and 2 has valuation e = 3
        assert_eq!(rg.pow(&u, 3), rg.from_int(2));
        assert_eq!(rg.valuation(&rg.from_int(2)), 3);
    }
}
