//! Arithmetic and polynomial factorization over the finite field F_{p^r}.
//!
//! This is the residue-field kernel used by the chain-ring layer: elements are
//! length-r coefficient vectors over F_p in the basis 1, w, ..., w^(r-1) where
//! w is a root of a fixed monic irreducible `h`. Polynomials over the field are
//! dense ascending coefficient vectors with trailing zeros trimmed.
//!
//! Factorization is exact and deterministic: squarefree decomposition (with
//! p-th-root extraction in characteristic p), distinct-degree splitting, and
//! equal-degree splitting that scans splitting polynomials in a fixed order
//! instead of sampling them. Degree-one pieces fall back to scanning the field
//! for roots, which doubles as the small-degree fallback path.

use crate::arith::factorize;
use crate::{Error, Result};

/// Field element: exactly `r` coefficients over F_p, ascending powers of w.
pub type FqElem = Vec<u64>;

/// Dense polynomial over F_{p^r}: ascending coefficients, trailing zeros trimmed.
pub type FqPoly = Vec<FqElem>;

/// The field F_{p^r} = F_p[w]/(h(w)), h monic irreducible of degree r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    r: usize,
    /// Monic irreducible modulus over F_p, ascending, length r+1, h[r] = 1.
    h: Vec<u64>,
}

impl Fq {
    /// Builds F_{p^r} from an explicit monic modulus over F_p (length r+1).
    pub fn new(p: u64, r: usize, h: Vec<u64>) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if r == 0 || h.len() != r + 1 || h[r] != 1 || h.iter().any(|&c| c >= p) {
            return Err(Error::Invalid(
                "field modulus must be monic of degree r with coefficients below p".into(),
            ));
        }
        if r > 1 {
            let base = Fq {
                p,
                r: 1,
                h: vec![0, 1],
            };
            let candidate: FqPoly = h.iter().map(|&c| vec![c]).collect();
            if !base.is_irreducible(&candidate) {
                return Err(Error::Invalid("field modulus is reducible over F_p".into()));
            }
        }
        Ok(Fq { p, r, h })
    }

    /// Builds F_{p^r} with the canonical modulus: the lexicographically
    /// smallest monic irreducible of degree r over F_p (by the base-p value of
    /// its non-leading coefficients).
    pub fn generate(p: u64, r: usize) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::Invalid("field degree must be positive".into()));
        }
        if r == 1 {
            // F_p itself; modulus x keeps w = 0
            return Ok(Fq {
                p,
                r,
                h: vec![0, 1],
            });
        }
        let base = Fq {
            p,
            r: 1,
            h: vec![0, 1],
        };
        let count = crate::arith::checked_pow(p as u128, r as u32)?;
        for n in 0..count {
            let mut h = Vec::with_capacity(r + 1);
            let mut v = n;
            for _ in 0..r {
                h.push((v % p as u128) as u64);
                v /= p as u128;
            }
            h.push(1);
            let candidate: FqPoly = h.iter().map(|&c| vec![c]).collect();
            if base.is_irreducible(&candidate) {
                return Ok(Fq { p, r, h });
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Field size p^r.
    pub fn q(&self) -> u128 {
        (self.p as u128).pow(self.r as u32)
    }

    /// The modulus h as a vector over F_p.
    pub fn modulus(&self) -> &[u64] {
        &self.h
    }

    // ---- elements ----------------------------------------------------------

    pub fn zero(&self) -> FqElem {
        vec![0; self.r]
    }

    pub fn one(&self) -> FqElem {
        let mut e = vec![0; self.r];
        e[0] = 1;
        e
    }

    /// w (the extension generator); equals 0 when r = 1.
    pub fn gen(&self) -> FqElem {
        let mut e = vec![0; self.r];
        if self.r > 1 {
            e[1] = 1;
        }
        e
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let mut e = vec![0; self.r];
        e[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn is_zero_elem(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect()
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let r = self.r;
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += (x as u128) * (y as u128);
            }
        }
        // reduce by h: w^r = -(h[0] + ... + h[r-1] w^(r-1))
        for d in (r..2 * r - 1).rev() {
            let c = prod[d] % p;
            prod[d] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..r {
                if self.h[j] != 0 {
                    // subtract c * h[j] at position d - r + j
                    let sub = c * self.h[j] as u128 % p;
                    let idx = d - r + j;
                    prod[idx] = (prod[idx] + p - sub) % p;
                }
            }
        }
        (0..r).map(|i| (prod[i] % p) as u64).collect()
    }

    pub fn pow(&self, a: &FqElem, mut k: u128) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse (errors on zero).
    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero_elem(a) {
            return Err(Error::NotAUnit("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// All field elements in lexicographic coefficient order (base-p counter).
    pub fn all_elems(&self) -> Vec<FqElem> {
        let mut out = Vec::with_capacity(self.q() as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.r {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: &FqElem) -> Result<u128> {
        if self.is_zero_elem(a) {
            return Err(Error::NotAUnit("zero has no multiplicative order".into()));
        }
        let mut ord = self.q() - 1;
        for (prime, _) in factorize(ord)? {
            while ord % prime == 0 {
                let cand = self.pow(a, ord / prime);
                if cand == self.one() {
                    ord /= prime;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// A generator of F_{p^r}^× (smallest in coefficient order).
    pub fn primitive_element(&self) -> Result<FqElem> {
        let target = self.q() - 1;
        for e in self.all_elems() {
            if self.is_zero_elem(&e) {
                continue;
            }
            if self.elem_order(&e)? == target {
                return Ok(e);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    // ---- polynomials -------------------------------------------------------

    fn lift_base_poly(&self, coeffs: &[u64]) -> FqPoly {
        coeffs
            .iter()
            .map(|&c| {
                let mut e = vec![0; self.r];
                e[0] = c % self.p;
                e
            })
            .collect()
    }

    /// Interprets a vector over F_p as a polynomial with constant-in-w
    /// coefficients (used for the modulus itself).
    pub fn poly_from_base(&self, coeffs: &[u64]) -> FqPoly {
        self.ptrim(self.lift_base_poly(coeffs))
    }

    pub fn ptrim(&self, mut f: FqPoly) -> FqPoly {
        while f
            .last()
            .map(|c| self.is_zero_elem(c))
            .unwrap_or(false)
        {
            f.pop();
        }
        f
    }

    /// Degree, or None for the zero polynomial.
    pub fn pdeg(&self, f: &FqPoly) -> Option<usize> {
        f.iter().rposition(|c| !self.is_zero_elem(c))
    }

    pub fn pzero(&self) -> FqPoly {
        Vec::new()
    }

    pub fn pone(&self) -> FqPoly {
        vec![self.one()]
    }

    pub fn px(&self) -> FqPoly {
        vec![self.zero(), self.one()]
    }

    pub fn pconst(&self, c: FqElem) -> FqPoly {
        self.ptrim(vec![c])
    }

    pub fn pis_zero(&self, f: &FqPoly) -> bool {
        self.pdeg(f).is_none()
    }

    pub fn pis_one(&self, f: &FqPoly) -> bool {
        self.pdeg(f) == Some(0) && f[0] == self.one()
    }

    pub fn padd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).unwrap_or(&z);
            let y = b.get(i).unwrap_or(&z);
            out.push(self.add(x, y));
        }
        self.ptrim(out)
    }

    pub fn psub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).unwrap_or(&z);
            let y = b.get(i).unwrap_or(&z);
            out.push(self.sub(x, y));
        }
        self.ptrim(out)
    }

    pub fn pmul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if self.pis_zero(a) || self.pis_zero(b) {
            return self.pzero();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero_elem(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        self.ptrim(out)
    }

    pub fn pscale(&self, a: &FqPoly, c: &FqElem) -> FqPoly {
        self.ptrim(a.iter().map(|x| self.mul(x, c)).collect())
    }

    /// Euclidean division by a nonzero divisor: f = q*g + rem, deg rem < deg g.
    pub fn pdivmod(&self, f: &FqPoly, g: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let dg = self
            .pdeg(g)
            .ok_or_else(|| Error::Invalid("division by the zero polynomial".into()))?;
        let lg_inv = self.inv(&g[dg])?;
        let mut rem = f.clone();
        let mut quot = vec![self.zero(); f.len().saturating_sub(dg)];
        while let Some(dr) = self.pdeg(&rem) {
            if dr < dg {
                break;
            }
            let c = self.mul(&rem[dr], &lg_inv);
            let shift = dr - dg;
            quot[shift] = self.add(&quot[shift], &c);
            for j in 0..=dg {
                let t = self.mul(&c, &g[j]);
                rem[shift + j] = self.sub(&rem[shift + j], &t);
            }
        }
        Ok((self.ptrim(quot), self.ptrim(rem)))
    }

    pub fn pmod(&self, f: &FqPoly, g: &FqPoly) -> Result<FqPoly> {
        Ok(self.pdivmod(f, g)?.1)
    }

    /// Monic normalization of a nonzero polynomial.
    pub fn pmonic(&self, f: &FqPoly) -> Result<FqPoly> {
        let d = self
            .pdeg(f)
            .ok_or_else(|| Error::Invalid("cannot normalize the zero polynomial".into()))?;
        let inv = self.inv(&f[d])?;
        Ok(self.pscale(f, &inv))
    }

    /// Monic gcd.
    pub fn pgcd(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        let mut a = a.clone();
        let mut b = b.clone();
        while !self.pis_zero(&b) {
            let r = self.pmod(&a, &b)?;
            a = b;
            b = r;
        }
        if self.pis_zero(&a) {
            Ok(a)
        } else {
            self.pmonic(&a)
        }
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
    pub fn pext_gcd(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly, FqPoly)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.pone(), self.pzero());
        let (mut t0, mut t1) = (self.pzero(), self.pone());
        while !self.pis_zero(&r1) {
            let (q, r) = self.pdivmod(&r0, &r1)?;
            let ns = self.psub(&s0, &self.pmul(&q, &s1));
            let nt = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
            t0 = std::mem::replace(&mut t1, nt);
        }
        if self.pis_zero(&r0) {
            return Ok((r0, s0, t0));
        }
        let d = self.pdeg(&r0).unwrap();
        let c = self.inv(&r0[d])?;
        Ok((
            self.pscale(&r0, &c),
            self.pscale(&s0, &c),
            self.pscale(&t0, &c),
        ))
    }

    /// Inverse of a modulo m (coprime, deg m ≥ 1).
    pub fn pinv_mod(&self, a: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
        let (g, s, _) = self.pext_gcd(a, m)?;
        if !self.pis_one(&g) {
            return Err(Error::Invalid(
                "polynomial has no inverse modulo the given modulus".into(),
            ));
        }
        self.pmod(&s, m)
    }

    pub fn ppow_mod(&self, a: &FqPoly, mut k: u128, m: &FqPoly) -> Result<FqPoly> {
        let mut base = self.pmod(a, m)?;
        let mut acc = self.pone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.pmod(&self.pmul(&acc, &base), m)?;
            }
            base = self.pmod(&self.pmul(&base, &base), m)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn pderiv(&self, f: &FqPoly) -> FqPoly {
        if f.len() <= 1 {
            return self.pzero();
        }
        let mut out = Vec::with_capacity(f.len() - 1);
        for (i, c) in f.iter().enumerate().skip(1) {
            let k = self.from_int(i as i64);
            out.push(self.mul(c, &k));
        }
        self.ptrim(out)
    }

    pub fn peval(&self, f: &FqPoly, x: &FqElem) -> FqElem {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Is f squarefree? (Nonzero constants count as squarefree.)
    pub fn pis_squarefree(&self, f: &FqPoly) -> Result<bool> {
        match self.pdeg(f) {
            None => Ok(false),
            Some(0) => Ok(true),
            Some(_) => {
                let d = self.pderiv(f);
                if self.pis_zero(&d) {
                    return Ok(false); // f is a p-th power
                }
                Ok(self.pdeg(&self.pgcd(f, &d)?) == Some(0))
            }
        }
    }

    /// Deterministic irreducibility test (Rabin).
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let n = match self.pdeg(f) {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        let q = self.q();
        let x = self.px();
        // x^(q^n) ≡ x mod f
        let mut xp = x.clone();
        for _ in 0..n {
            xp = match self.ppow_mod(&xp, q, f) {
                Ok(v) => v,
                Err(_) => return false, // non-unit leading coefficient
            };
        }
        if self.psub(&xp, &x) != self.pzero() {
            return false;
        }
        // gcd(x^(q^(n/l)) - x, f) = 1 for every prime l | n
        let primes: Vec<usize> = factorize(n as u128)
            .expect("small degree")
            .into_iter()
            .map(|(p, _)| p as usize)
            .collect();
        for l in primes {
            let mut xe = x.clone();
            for _ in 0..n / l {
                xe = self.ppow_mod(&xe, q, f).expect("monic-normalizable");
            }
            let g = self
                .pgcd(&self.psub(&xe, &x), f)
                .expect("gcd over a field");
            if self.pdeg(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// p-th root of f, assuming f = g(x^p) (derivative zero).
    fn pth_root(&self, f: &FqPoly) -> FqPoly {
        let p = self.p as usize;
        // coefficient roots: c^(p^(r-1)) is the p-th root in F_{p^r}
        let root_exp = (self.p as u128).pow((self.r - 1) as u32);
        let mut out = Vec::new();
        let mut i = 0;
        while i < f.len() {
            out.push(self.pow(&f[i], root_exp));
            i += p;
        }
        self.ptrim(out)
    }

    /// Squarefree decomposition of a monic polynomial: pairwise-coprime monic
    /// squarefree parts with their multiplicities, product over parts^mult = f.
    pub fn squarefree_decomposition(&self, f: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
        let d = self
            .pdeg(f)
            .ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
        if d == 0 {
            return Ok(Vec::new());
        }
        let f = self.pmonic(f)?;
        let fp = self.pderiv(&f);
        if self.pis_zero(&fp) {
            let root = self.pth_root(&f);
            let inner = self.squarefree_decomposition(&root)?;
            return Ok(inner
                .into_iter()
                .map(|(g, m)| (g, m * self.p as u32))
                .collect());
        }
        let mut out = Vec::new();
        let mut c = self.pgcd(&f, &fp)?;
        let mut w = self.pdivmod(&f, &c)?.0;
        let mut i = 1u32;
        while self.pdeg(&w) != Some(0) {
            let y = self.pgcd(&w, &c)?;
            let z = self.pdivmod(&w, &y)?.0;
            if self.pdeg(&z) != Some(0) {
                out.push((z, i));
            }
            c = self.pdivmod(&c, &y)?.0;
            w = y;
            i += 1;
        }
        if self.pdeg(&c) != Some(0) {
            // leftover p-th power part
            let root = self.pth_root(&c);
            for (g, m) in self.squarefree_decomposition(&root)? {
                out.push((g, m * self.p as u32));
            }
        }
        Ok(out)
    }

    /// Distinct-degree splitting of a monic squarefree polynomial:
    /// (product of all irreducible factors of degree d, d) pairs.
    fn distinct_degree_split(&self, f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
        let q = self.q();
        let mut out = Vec::new();
        let mut g = f.clone();
        let mut h = self.pmod(&self.px(), &g)?;
        let mut d = 0usize;
        while let Some(dg) = self.pdeg(&g) {
            if dg == 0 {
                break;
            }
            d += 1;
            if 2 * d > dg {
                out.push((g.clone(), dg));
                break;
            }
            h = self.ppow_mod(&h, q, &g)?;
            let split = self.pgcd(&self.psub(&h, &self.px()), &g)?;
            if self.pdeg(&split) != Some(0) {
                out.push((split.clone(), d));
                g = self.pdivmod(&g, &split)?.0;
                h = self.pmod(&h, &g)?;
            }
        }
        Ok(out)
    }

    /// All monic polynomials of degree below `max_deg`, excluding constants,
    /// in a fixed enumeration order. Used as deterministic splitting probes.
    fn probe_polys(&self, max_deg: usize) -> ProbeIter<'_> {
        ProbeIter {
            fq: self,
            deg: 1,
            max_deg,
            counter: vec![self.zero(); 1],
            done: false,
        }
    }

    /// Equal-degree splitting: f monic squarefree, all factors of degree d.
    fn equal_degree_split(&self, f: &FqPoly, d: usize) -> Result<Vec<FqPoly>> {
        let df = self.pdeg(f).unwrap_or(0);
        if df == d {
            return Ok(vec![f.clone()]);
        }
        if d == 1 {
            // root scan; complete because all factors are linear
            let mut out = Vec::new();
            for c in self.all_elems() {
                if self.is_zero_elem(&self.peval(f, &c)) {
                    out.push(self.ptrim(vec![self.neg(&c), self.one()]));
                    if out.len() == df {
                        break;
                    }
                }
            }
            return Ok(out);
        }
        // find one proper splitter, then recurse on both halves
        let qd = {
            let mut acc = 1u128;
            for _ in 0..d {
                acc = acc
                    .checked_mul(self.q())
                    .ok_or(Error::Overflow("equal-degree splitting"))?;
            }
            acc
        };
        for probe in self.probe_polys(2 * d) {
            let g = if self.p == 2 {
                // trace map: T(a) = a + a^2 + ... + a^(2^(rd-1)) mod f
                let mut tr = self.pmod(&probe, f)?;
                let mut pw = tr.clone();
                for _ in 1..(self.r * d) {
                    pw = self.pmod(&self.pmul(&pw, &pw), f)?;
                    tr = self.padd(&tr, &pw);
                }
                self.pgcd(&tr, f)?
            } else {
                let e = self.ppow_mod(&probe, (qd - 1) / 2, f)?;
                self.pgcd(&self.psub(&e, &self.pone()), f)?
            };
            let dg = self.pdeg(&g).unwrap_or(0);
            if dg > 0 && dg < df {
                let rest = self.pdivmod(f, &g)?.0;
                let mut out = self.equal_degree_split(&g, d)?;
                out.extend(self.equal_degree_split(&rest, d)?);
                return Ok(out);
            }
        }
        Err(Error::Internal(
            "equal-degree splitting exhausted its probe sequence".into(),
        ))
    }

    /// Complete factorization of a nonzero polynomial into monic irreducibles
    /// with multiplicities, sorted by (degree, coefficients). Returns the
    /// leading unit separately.
    pub fn factor(&self, f: &FqPoly) -> Result<(FqElem, Vec<(FqPoly, u32)>)> {
        let d = self
            .pdeg(f)
            .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?;
        let unit = f[d].clone();
        if d == 0 {
            return Ok((unit, Vec::new()));
        }
        let f = self.pmonic(f)?;
        let mut out: Vec<(FqPoly, u32)> = Vec::new();
        for (part, mult) in self.squarefree_decomposition(&f)? {
            for (block, deg) in self.distinct_degree_split(&part)? {
                for irr in self.equal_degree_split(&block, deg)? {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        Ok((unit, out))
    }

    /// Roots of f in F_{p^r} (without multiplicity).
    pub fn roots(&self, f: &FqPoly) -> Result<Vec<FqElem>> {
        if self.pis_zero(f) {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        let mut out = Vec::new();
        for c in self.all_elems() {
            if self.is_zero_elem(&self.peval(f, &c)) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// Iterator over nonconstant monic-ish probe polynomials in a fixed order:
/// degree 1 upward, coefficients counting in base q.
struct ProbeIter<'a> {
    fq: &'a Fq,
    deg: usize,
    max_deg: usize,
    counter: Vec<FqElem>,
    done: bool,
}

impl<'a> Iterator for ProbeIter<'a> {
    type Item = FqPoly;

    fn next(&mut self) -> Option<FqPoly> {
        if self.done {
            return None;
        }
        let mut poly: FqPoly = self.counter.clone();
        poly.push(self.fq.one());
        // advance the base-q counter over the non-leading coefficients
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.deg += 1;
                if self.deg > self.max_deg {
                    self.done = true;
                } else {
                    self.counter = vec![self.fq.zero(); self.deg];
                }
                break;
            }
            if advance_elem(&mut self.counter[i], self.fq.p()) {
                break;
            }
            i += 1;
        }
        Some(poly)
    }
}

/// Increments a coefficient vector as a base-p counter; false on wraparound.
fn advance_elem(e: &mut FqElem, p: u64) -> bool {
    for c in e.iter_mut() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Fq {
        Fq::generate(2, 2).unwrap()
    }

    fn f9() -> Fq {
        Fq::generate(3, 2).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        // lex-smallest irreducibles: x^2+x+1 over F_2, x^2+1 over F_3
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(f9().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let fq = f9();
        let elems = fq.all_elems();
        assert_eq!(elems.len(), 9);
        for a in &elems {
            for b in &elems {
                assert_eq!(fq.mul(a, b), fq.mul(b, a));
                for c in &elems {
                    let lhs = fq.mul(a, &fq.add(b, c));
                    let rhs = fq.add(&fq.mul(a, b), &fq.mul(a, c));
                    assert_eq!(lhs, rhs);
                    assert_eq!(
                        fq.mul(&fq.mul(a, b), c),
                        fq.mul(a, &fq.mul(b, c))
                    );
                }
            }
            if !fq.is_zero_elem(a) {
                let inv = fq.inv(a).unwrap();
                assert_eq!(fq.mul(a, &inv), fq.one());
            }
        }
    }

    #[test]
    fn orders_and_primitivity() {
        let fq = f9();
        let g = fq.primitive_element().unwrap();
        assert_eq!(fq.elem_order(&g).unwrap(), 8);
        // w^2 = -1 means w has order 4
        assert_eq!(fq.elem_order(&fq.gen()).unwrap(), 4);
        let f4 = f4();
        assert_eq!(f4.elem_order(&f4.gen()).unwrap(), 3);
    }

    #[test]
    fn divmod_round_trip() {
        let fq = f9();
        // f = x^3 + wx + 2, g = x + w
        let w = fq.gen();
        let f = vec![fq.from_int(2), w.clone(), fq.zero(), fq.one()];
        let g = vec![w.clone(), fq.one()];
        let (q, r) = fq.pdivmod(&f, &g).unwrap();
        let back = fq.padd(&fq.pmul(&q, &g), &r);
        assert_eq!(back, fq.ptrim(f));
        assert!(fq.pdeg(&r).map(|d| d < 1).unwrap_or(true));
    }

    #[test]
    fn factor_x_cubed_minus_one_over_f2() {
        let fq = Fq::generate(2, 1).unwrap();
        // x^3 + 1 = (x+1)(x^2+x+1)
        let f = fq.poly_from_base(&[1, 0, 0, 1]);
        let (unit, factors) = fq.factor(&f).unwrap();
        assert_eq!(unit, fq.one());
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, fq.poly_from_base(&[1, 1]));
        assert_eq!(factors[1].0, fq.poly_from_base(&[1, 1, 1]));
        let back = fq.pmul(&factors[0].0, &factors[1].0);
        assert_eq!(back, f);
    }

    #[test]
    fn factor_with_multiplicity_and_pth_powers() {
        let fq = Fq::generate(2, 1).unwrap();
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2 (derivative vanishes)
        let f = fq.poly_from_base(&[1, 0, 1, 0, 1]);
        let (_, factors) = fq.factor(&f).unwrap();
        assert_eq!(factors, vec![(fq.poly_from_base(&[1, 1, 1]), 2)]);
        assert!(!fq.pis_squarefree(&f).unwrap());

        // (x^2+1)^3 = x^6 + 1 over F_3
        let f3 = Fq::generate(3, 1).unwrap();
        let f = f3.poly_from_base(&[1, 0, 0, 0, 0, 0, 1]);
        let (_, factors) = f3.factor(&f).unwrap();
        assert_eq!(factors, vec![(f3.poly_from_base(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn factor_random_products_round_trip() {
        // deterministic pseudo-random products over F_4: multiply out, factor,
        // compare multisets
        let fq = f4();
        let irreducibles: Vec<FqPoly> = vec![
            fq.poly_from_base(&[0, 1]),          // x
            fq.poly_from_base(&[1, 1]),          // x+1
            vec![fq.gen(), fq.one()],            // x+w
            fq.poly_from_base(&[1, 1, 1]),       // x^2+x+1 splits over F_4!
        ];
        // x^2+x+1 = (x+w)(x+w^2) over F_4, so use a genuinely irreducible one
        let irr2 = vec![fq.gen(), fq.one(), fq.one()]; // x^2 + x + w
        assert!(fq.is_irreducible(&irr2));
        assert!(!fq.is_irreducible(&irreducibles[3]));

        let f = fq.pmul(
            &fq.pmul(&irreducibles[1], &irreducibles[1]),
            &fq.pmul(&irreducibles[2], &irr2),
        );
        let (_, factors) = fq.factor(&f).unwrap();
        let total: usize = factors
            .iter()
            .map(|(g, m)| fq.pdeg(g).unwrap() * *m as usize)
            .sum();
        assert_eq!(total, fq.pdeg(&f).unwrap());
        let mut back = fq.pone();
        for (g, m) in &factors {
            assert!(fq.is_irreducible(g));
            for _ in 0..*m {
                back = fq.pmul(&back, g);
            }
        }
        assert_eq!(back, f);
    }

    #[test]
    fn irreducibility_across_degrees() {
        let fq = Fq::generate(5, 1).unwrap();
        assert!(fq.is_irreducible(&fq.poly_from_base(&[2, 0, 1]))); // x^2+2
        assert!(!fq.is_irreducible(&fq.poly_from_base(&[4, 0, 1]))); // x^2-1 = (x-1)(x+1)
        // x^3+x+1 has no roots mod 5, hence is irreducible
        let f = fq.poly_from_base(&[1, 1, 0, 1]);
        assert!(fq.is_irreducible(&f));
        assert!(fq.roots(&f).unwrap().is_empty());
    }
}
