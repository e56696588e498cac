//! Ideals of R[x]/(f) over a finite chain ring R, treated as polycyclic codes
//! of length n = deg f.
//!
//! The central object is the standard form of an ideal: a triangular
//! generating set {gamma^{lambda_i} g_i} with monic g_i, strictly increasing
//! lambda_i and strictly decreasing degrees. It is computed by echelonizing
//! the R-module spanned by the x-shifts of the generators (positions are
//! degrees 0..n-1, pivots prefer small gamma-valuation), which terminates
//! deterministically and yields a canonical, idempotent result. On top of it
//! sit membership, cardinality, brute-force minimum distance, ideal
//! enumeration for square-free residues, principal generators, and the
//! substitution isomorphism that rewrites codes over F_q[x]/(f(x^{p^k})) as
//! codes over a chain ring with modulus f.

use std::collections::{HashMap, VecDeque};

use crate::arith::{checked_pow, mod_inverse};
use crate::poly::{factor_basic_irreducible, poly_order, RingPoly};
use crate::ring::{ChainRing, RingElement};
use crate::{Error, Result};

/// One row gamma^lambda * g of a triangular generating set; g is monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRow {
    pub lambda: u32,
    pub g: RingPoly,
}

/// An ideal of R[x]/(modulus) held in standard form.
///
/// Rows are sorted by strictly increasing lambda and strictly decreasing
/// degree; an empty row list is the zero code. Row polynomials are reduced so
/// that every coefficient has zero gamma-adic digits at level s - lambda and
/// above, which makes equal ideals compare equal structurally.
#[derive(Clone, Debug, PartialEq)]
pub struct PolycyclicCode {
    ring: ChainRing,
    modulus: RingPoly,
    rows: Vec<CodeRow>,
}

impl PolycyclicCode {
    /// Standard form of the ideal generated by `gens` in R[x]/(modulus).
    ///
    /// Echelonizes the R-module spanned by all x-shifts of the generators.
    /// Working rows keep their full coefficient vectors; whenever a row with
    /// pivot valuation lambda > 0 is stored, its gamma^(s-lambda) multiple is
    /// queued as well so that tail coefficients of too-small valuation are
    /// flushed out into rows of lower degree. Ties at one degree keep the
    /// smaller valuation and re-reduce the other row.
    pub fn standard_form(modulus: &RingPoly, gens: &[RingPoly]) -> Result<PolycyclicCode> {
        let ring = modulus.ring().clone();
        let n = match modulus.deg() {
            Some(n) if n >= 1 && modulus.is_monic() => n,
            _ => {
                return Err(Error::Invalid(
                    "modulus must be monic of degree at least 1".into(),
                ))
            }
        };
        for g in gens {
            if g.ring() != &ring {
                return Err(Error::RingMismatch(
                    "generator is not over the modulus ring".into(),
                ));
            }
        }
        let s = ring.s();

        let mut table: Vec<Option<(u32, RingPoly)>> = vec![None; n];
        let mut queue: VecDeque<RingPoly> = VecDeque::new();
        for g in gens {
            let mut cur = g.rem(modulus)?;
            for _ in 0..n {
                if cur.is_zero() {
                    break;
                }
                queue.push_back(cur.clone());
                cur = cur.shift(1).rem(modulus)?;
            }
        }

        while let Some(first) = queue.pop_front() {
            let mut v = first;
            loop {
                if v.is_zero() {
                    break;
                }
                let d = v.deg().expect("nonzero polynomial has a degree");
                let (lam, w) = ring.val_unit(v.leading().expect("nonzero"))?;
                v = v.scale(&ring.inv(&w)?);
                match table[d].take() {
                    None => {
                        if lam > 0 {
                            queue.push_back(v.gamma_scale(s - lam));
                        }
                        table[d] = Some((lam, v));
                        break;
                    }
                    Some((rl, rv)) => {
                        if lam < rl {
                            if lam > 0 {
                                queue.push_back(v.gamma_scale(s - lam));
                            }
                            table[d] = Some((lam, v));
                            v = rv;
                        } else {
                            let reduced = v.sub(&rv.gamma_scale(lam - rl));
                            table[d] = Some((rl, rv));
                            debug_assert!(reduced.deg().map_or(true, |dd| dd < d));
                            v = reduced;
                        }
                    }
                }
            }
        }

        // Canonicalize tails: at every lower pivot position, clear the
        // gamma-adic digits the corresponding row can reach.
        let pivots: Vec<usize> = (0..n).filter(|&d| table[d].is_some()).collect();
        for idx in 0..pivots.len() {
            let d = pivots[idx];
            let (lam, mut v) = table[d].take().expect("pivot present");
            for &dp in pivots[..idx].iter().rev() {
                let (lp, rowp) = table[dp].as_ref().expect("pivot present");
                let c = v.coeff(dp);
                let keep = ring.reduce_mod_gamma_pow(&c, *lp);
                let excess = ring.sub(&c, &keep);
                if !excess.is_zero() {
                    let mult = ring.div_gamma_exact(&excess, *lp)?;
                    v = v.sub(&rowp.scale(&mult));
                }
            }
            table[d] = Some((lam, v));
        }

        // Keep a row only where the valuation strictly drops; divide out the
        // pivot valuation to expose the monic generator.
        let mut kept: Vec<CodeRow> = Vec::new();
        let mut best = s + 1;
        for slot in table.into_iter() {
            if let Some((lam, v)) = slot {
                debug_assert!(lam <= best.min(s));
                if lam < best {
                    let g = v.div_gamma_exact(lam).map_err(|_| {
                        Error::Internal(
                            "echelon row is not divisible by its pivot valuation".into(),
                        )
                    })?;
                    debug_assert!(g.is_monic());
                    kept.push(CodeRow { lambda: lam, g });
                    best = lam;
                }
            }
        }
        kept.reverse();
        Ok(PolycyclicCode {
            ring,
            modulus: modulus.clone(),
            rows: kept,
        })
    }

    /// The zero ideal of R[x]/(modulus).
    pub fn zero_code(modulus: &RingPoly) -> Result<PolycyclicCode> {
        PolycyclicCode::standard_form(modulus, &[])
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn modulus(&self) -> &RingPoly {
        &self.modulus
    }

    pub fn rows(&self) -> &[CodeRow] {
        &self.rows
    }

    /// Code length n = deg of the modulus.
    pub fn length(&self) -> usize {
        self.modulus.deg().expect("modulus is monic of positive degree")
    }

    pub fn is_zero_code(&self) -> bool {
        self.rows.is_empty()
    }

    /// Per-degree pivot valuations: entry d is the smallest lambda of a row
    /// with deg g <= d, or s where no row reaches down to degree d.
    pub fn lambda_profile(&self) -> Vec<u32> {
        let n = self.length();
        let s = self.ring.s();
        let mut prof = vec![s; n];
        for (d, slot) in prof.iter_mut().enumerate() {
            for row in &self.rows {
                if row.g.deg().expect("rows are monic") <= d {
                    *slot = row.lambda;
                    break;
                }
            }
        }
        prof
    }

    /// Number of codewords: the product of p^(r(s - lambda(d))) over all
    /// degree positions d.
    pub fn cardinality(&self) -> Result<u128> {
        let q = self.ring.q();
        let s = self.ring.s();
        let mut total: u128 = 1;
        for lam in self.lambda_profile() {
            for _ in 0..(s - lam) {
                total = total
                    .checked_mul(q)
                    .ok_or(Error::Overflow("code cardinality"))?;
            }
        }
        Ok(total)
    }

    /// Ideal membership by strong reduction: repeatedly cancel the leading
    /// term of h against the unique row whose generator degree does not
    /// exceed it, which requires the term's coefficient valuation to be at
    /// least that row's lambda.
    pub fn contains(&self, h: &RingPoly) -> Result<bool> {
        if h.ring() != &self.ring {
            return Err(Error::RingMismatch(
                "polynomial is not over the code's ring".into(),
            ));
        }
        let mut v = h.rem(&self.modulus)?;
        'reduce: loop {
            if v.is_zero() {
                return Ok(true);
            }
            let d = v.deg().expect("nonzero");
            for row in &self.rows {
                let gd = row.g.deg().expect("rows are monic");
                if gd <= d {
                    let lc = v.coeff(d);
                    if self.ring.valuation(&lc) < row.lambda {
                        return Ok(false);
                    }
                    let mult = self.ring.div_gamma_exact(&lc, row.lambda)?;
                    let sub = row
                        .g
                        .gamma_scale(row.lambda)
                        .shift(d - gd)
                        .scale(&mult);
                    v = v.sub(&sub);
                    debug_assert!(v.deg().map_or(true, |dd| dd < d));
                    continue 'reduce;
                }
            }
            return Ok(false);
        }
    }

    /// Triangular generating set of the preimage ideal in R[x]: the rows,
    /// preceded by (0, modulus) unless a valuation-zero row already exists.
    pub fn minimal_sgb(&self) -> Vec<CodeRow> {
        let mut out = Vec::new();
        if self.rows.first().map_or(true, |r| r.lambda > 0) {
            out.push(CodeRow {
                lambda: 0,
                g: self.modulus.clone(),
            });
        }
        out.extend(self.rows.iter().cloned());
        out
    }

    /// For a modulus with square-free residue, the gamma-level at which each
    /// basic irreducible factor enters the code: pairs (f_i, a_i) with
    /// a_i = min { j : gamma^j * prod of the other factors lies in the code },
    /// or s when no level works. The exponent vector determines the ideal.
    pub fn factor_exponents(&self) -> Result<Vec<(RingPoly, u32)>> {
        let fact = factor_basic_irreducible(&self.modulus, true)?;
        let factors: Vec<RingPoly> = fact.factors.iter().map(|(f, _)| f.clone()).collect();
        let s = self.ring.s();
        let mut out = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            let mut cofactor = RingPoly::one(&self.ring);
            for (l, other) in factors.iter().enumerate() {
                if l != i {
                    cofactor = cofactor.mul(other);
                }
            }
            let mut level = s;
            for j in 0..s {
                if self.contains(&cofactor.gamma_scale(j))? {
                    level = j;
                    break;
                }
            }
            out.push((f.clone(), level));
        }
        Ok(out)
    }

    /// Generating rows satisfying the divisibility chain
    /// g_u | ... | g_1 | g_0 | modulus: row j carries gamma^j times the
    /// product of the factors whose level exceeds j, kept where the product
    /// strictly shrinks. Requires a modulus with square-free residue.
    pub fn chain_rows(&self) -> Result<Vec<CodeRow>> {
        let exps = self.factor_exponents()?;
        let s = self.ring.s();
        let n = self.length();
        let mut out: Vec<CodeRow> = Vec::new();
        let mut prev_deg = n;
        for j in 0..s {
            let mut prod = RingPoly::one(&self.ring);
            for (f, a) in &exps {
                if *a > j {
                    prod = prod.mul(f);
                }
            }
            let d = prod.deg().expect("product of monic factors");
            if d < prev_deg {
                prev_deg = d;
                out.push(CodeRow {
                    lambda: j,
                    g: prod,
                });
            }
        }
        Ok(out)
    }

    /// Single generator of the code, available when the modulus has
    /// square-free residue: the sum gamma^{lambda_i} g_i over the
    /// divisibility-chain rows.
    pub fn principal_generator(&self) -> Result<RingPoly> {
        let mut g = RingPoly::zero(&self.ring);
        for row in self.chain_rows()? {
            g = g.add(&row.g.gamma_scale(row.lambda));
        }
        g.rem(&self.modulus)
    }

    /// Minimum Hamming weight over the nonzero codewords, or None for the
    /// zero code. Enumerates codewords through the triangular rows, so the
    /// cardinality must not exceed `max_codewords`.
    pub fn min_distance(&self, max_codewords: u128) -> Result<Option<u32>> {
        if self.rows.is_empty() {
            return Ok(None);
        }
        let card = self.cardinality()?;
        if card > max_codewords {
            return Err(Error::BoundExceeded(format!(
                "code has {card} words, limit {max_codewords}"
            )));
        }
        let ring = &self.ring;
        let n = self.length();
        let s = ring.s();
        let prof = self.lambda_profile();

        let mut gens: Vec<(u32, Vec<RingElement>)> = Vec::new();
        for d in 0..n {
            if prof[d] >= s {
                continue;
            }
            let row = self
                .rows
                .iter()
                .find(|r| r.g.deg().expect("monic") <= d)
                .expect("profile came from a row");
            let w = row
                .g
                .gamma_scale(row.lambda)
                .shift(d - row.g.deg().expect("monic"));
            let mut dense = vec![ring.zero(); n];
            for (i, c) in w.coeffs().iter().enumerate() {
                dense[i] = c.clone();
            }
            gens.push((s - prof[d], dense));
        }

        let mut reps: HashMap<u32, Vec<RingElement>> = HashMap::new();
        for (free, _) in &gens {
            reps.entry(*free)
                .or_insert_with(|| digit_representatives(ring, *free));
        }

        let zero_sum = vec![ring.zero(); n];
        let mut best: Option<u32> = None;
        distance_walk(ring, &gens, &reps, 0, &zero_sum, false, &mut best);
        Ok(best)
    }

    /// Structural invariants plus a full recomputation of the standard form
    /// from this code's own rows, which must reproduce it exactly.
    pub fn verify(&self) -> Result<()> {
        let s = self.ring.s();
        let n = self.length();
        let mut prev: Option<(u32, usize)> = None;
        for row in &self.rows {
            if !row.g.is_monic() {
                return Err(Error::SelfCheck("row generator is not monic".into()));
            }
            if row.lambda >= s {
                return Err(Error::SelfCheck("row valuation is out of range".into()));
            }
            let d = row.g.deg().expect("monic");
            if d >= n {
                return Err(Error::SelfCheck("row degree reaches the modulus".into()));
            }
            if let Some((pl, pd)) = prev {
                if row.lambda <= pl || d >= pd {
                    return Err(Error::SelfCheck(
                        "rows are not strictly ordered by valuation and degree".into(),
                    ));
                }
            }
            prev = Some((row.lambda, d));
        }
        let gens: Vec<RingPoly> = self
            .rows
            .iter()
            .map(|r| r.g.gamma_scale(r.lambda))
            .collect();
        let again = PolycyclicCode::standard_form(&self.modulus, &gens)?;
        if again != *self {
            return Err(Error::SelfCheck(
                "standard form failed to reproduce itself".into(),
            ));
        }
        Ok(())
    }
}

/// All canonical elements whose gamma-adic digits vanish at level `free` and
/// above: the coefficient transversal attached to a row with s - lambda =
/// free.
fn digit_representatives(ring: &ChainRing, free: u32) -> Vec<RingElement> {
    let fq = ring.residue_field();
    let field_elems = fq.all_elems();
    let mut out = Vec::new();
    let mut idx = vec![0usize; free as usize];
    loop {
        let digits: Vec<_> = idx.iter().map(|&i| field_elems[i].clone()).collect();
        let mut acc = ring.zero();
        for (i, dig) in digits.iter().enumerate() {
            acc = ring.add(&acc, &ring.mul(&ring.gamma_pow(i as u32), &ring.lift(dig)));
        }
        out.push(acc);
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return out;
            }
            idx[pos - 1] += 1;
            if idx[pos - 1] < field_elems.len() {
                break;
            }
            idx[pos - 1] = 0;
            pos -= 1;
        }
    }
}

fn distance_walk(
    ring: &ChainRing,
    gens: &[(u32, Vec<RingElement>)],
    reps: &HashMap<u32, Vec<RingElement>>,
    idx: usize,
    sum: &[RingElement],
    any: bool,
    best: &mut Option<u32>,
) {
    if *best == Some(1) {
        return;
    }
    if idx == gens.len() {
        if any {
            let wt = sum.iter().filter(|c| !c.is_zero()).count() as u32;
            debug_assert!(wt > 0, "distinct digit tuples give distinct codewords");
            if best.map_or(true, |b| wt < b) {
                *best = Some(wt);
            }
        }
        return;
    }
    let (free, dense) = &gens[idx];
    for c in &reps[free] {
        if c.is_zero() {
            distance_walk(ring, gens, reps, idx + 1, sum, any, best);
        } else {
            let mut next = sum.to_vec();
            for (slot, coeff) in next.iter_mut().zip(dense.iter()) {
                *slot = ring.add(slot, &ring.mul(c, coeff));
            }
            distance_walk(ring, gens, reps, idx + 1, &next, true, best);
        }
    }
}

/// Reduction in R[x] (no modulus): cancels leading terms of h against
/// x-shift multiples of the rows for as long as some row applies. The result
/// is zero exactly when h lies in the R[x]-ideal the rows generate, provided
/// the rows form a triangular generating set of that ideal.
pub fn reduce_by_rows(rows: &[CodeRow], h: &RingPoly) -> Result<RingPoly> {
    let ring = h.ring().clone();
    let mut v = h.clone();
    'reduce: loop {
        if v.is_zero() {
            return Ok(v);
        }
        let d = v.deg().expect("nonzero");
        for row in rows {
            let gd = row.g.deg().expect("rows are monic");
            if gd <= d {
                let lc = v.coeff(d);
                if ring.valuation(&lc) < row.lambda {
                    return Ok(v);
                }
                let mult = ring.div_gamma_exact(&lc, row.lambda)?;
                let sub = row.g.gamma_scale(row.lambda).shift(d - gd).scale(&mult);
                v = v.sub(&sub);
                continue 'reduce;
            }
        }
        return Ok(v);
    }
}

/// An ideal produced by `enumerate_codes_squarefree`, tagged with its
/// exponent vector: factor i is carried from gamma-level exponents[i] on.
#[derive(Clone, Debug)]
pub struct EnumeratedIdeal {
    pub exponents: Vec<u32>,
    pub code: PolycyclicCode,
}

/// Every ideal of R[x]/(modulus) when the modulus has square-free residue:
/// with modulus = f_1 ... f_nu the basic-irreducible factorization, the ideal
/// for exponents (a_1, ..., a_nu) in {0..s}^nu is generated by
/// { gamma^j * prod over a_i > j of f_i : 0 <= j < s }, giving (s+1)^nu
/// pairwise distinct ideals in lexicographic exponent order.
pub fn enumerate_codes_squarefree(
    modulus: &RingPoly,
    max_count: u128,
) -> Result<Vec<EnumeratedIdeal>> {
    let ring = modulus.ring().clone();
    let fact = factor_basic_irreducible(modulus, true)?;
    let factors: Vec<RingPoly> = fact.factors.iter().map(|(f, _)| f.clone()).collect();
    let nu = factors.len();
    let s = ring.s();
    let count = checked_pow(s as u128 + 1, nu as u32)?;
    if count > max_count {
        return Err(Error::BoundExceeded(format!(
            "{count} ideals exceed the limit {max_count}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut a = vec![0u32; nu];
    loop {
        let mut gens = Vec::new();
        for j in 0..s {
            let mut g = RingPoly::one(&ring);
            for (i, f) in factors.iter().enumerate() {
                if a[i] > j {
                    g = g.mul(f);
                }
            }
            gens.push(g.gamma_scale(j));
        }
        out.push(EnumeratedIdeal {
            exponents: a.clone(),
            code: PolycyclicCode::standard_form(modulus, &gens)?,
        });
        let mut pos = nu;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            if a[pos - 1] < s {
                a[pos - 1] += 1;
                break;
            }
            a[pos - 1] = 0;
            pos -= 1;
        }
    }
}

/// Substitution isomorphism F_q[x]/(f(x^{p^k})) -> W[y]/(f(y)) where
/// W = F_q[v]/(v^{p^k}) is a finite chain ring.
///
/// With e the multiplicative order of x modulo f and e' the inverse of p^k
/// modulo e, the map sends x to (1+v) y^{e'}; a source monomial x^j with
/// j = i p^k + l therefore lands on (1+v)^l y^{(i + e'l) mod e}. Ideals map
/// to ideals bijectively with matching cardinalities.
pub struct ReprootDomain {
    source: ChainRing,
    target: ChainRing,
    source_modulus: RingPoly,
    target_modulus: RingPoly,
    pk: usize,
    e: u128,
    e_prime: u128,
}

impl ReprootDomain {
    pub fn new(field: &ChainRing, f: &RingPoly, k: u32) -> Result<ReprootDomain> {
        if !field.is_field() {
            return Err(Error::Invalid(
                "the coefficient ring of the base polynomial must be a field".into(),
            ));
        }
        if f.ring() != field {
            return Err(Error::RingMismatch(
                "base polynomial is not over the given field".into(),
            ));
        }
        let n = match f.deg() {
            Some(n) if n >= 1 && f.is_monic() => n,
            _ => {
                return Err(Error::Invalid(
                    "base polynomial must be monic of degree at least 1".into(),
                ))
            }
        };
        if f.coeff(0).is_zero() {
            return Err(Error::Invalid(
                "base polynomial must have a nonzero constant term".into(),
            ));
        }
        let fq = field.residue_field();
        let fbar = f.residue_poly();
        if !fq.pis_squarefree(&fbar)? {
            return Err(Error::NotSquareFree(
                "base polynomial must be square-free".into(),
            ));
        }
        let p = field.p();
        let pk = checked_pow(p as u128, k)?;
        if pk > 64 {
            return Err(Error::BoundExceeded(format!(
                "p^k = {pk} exceeds the supported nilpotency 64"
            )));
        }
        let pk = pk as usize;
        let e = poly_order(fq, &fbar)?;
        let e_prime = if e == 1 {
            0
        } else {
            mod_inverse(pk as u128 % e, e).ok_or_else(|| {
                Error::NotCoprime(format!("p^k = {pk} is not invertible modulo the order {e}"))
            })?
        };
        let target = ChainRing::with_params(
            p,
            1,
            field.r(),
            pk,
            pk,
            None,
            Some(fq.modulus().to_vec()),
        )?;

        let mut src_coeffs = vec![field.zero(); n * pk + 1];
        for (j, c) in f.coeffs().iter().enumerate() {
            src_coeffs[j * pk] = c.clone();
        }
        let source_modulus = RingPoly::new(field, src_coeffs);

        let tgt_coeffs: Vec<RingElement> = f
            .coeffs()
            .iter()
            .map(|c| target.lift(&field.residue(c)))
            .collect();
        let target_modulus = RingPoly::new(&target, tgt_coeffs);

        Ok(ReprootDomain {
            source: field.clone(),
            target,
            source_modulus,
            target_modulus,
            pk,
            e,
            e_prime,
        })
    }

    /// The field the source codes live over.
    pub fn source_ring(&self) -> &ChainRing {
        &self.source
    }

    /// The chain ring W = F_q[v]/(v^{p^k}).
    pub fn target_ring(&self) -> &ChainRing {
        &self.target
    }

    /// f(x^{p^k}) over the source field.
    pub fn source_modulus(&self) -> &RingPoly {
        &self.source_modulus
    }

    /// f over W.
    pub fn target_modulus(&self) -> &RingPoly {
        &self.target_modulus
    }

    /// Multiplicative order e of x modulo f.
    pub fn order(&self) -> u128 {
        self.e
    }

    /// The inverse of p^k modulo e (0 when e = 1).
    pub fn exponent_inverse(&self) -> u128 {
        self.e_prime
    }

    /// Image of a source polynomial under the substitution, reduced modulo f
    /// over W.
    pub fn map_poly(&self, h: &RingPoly) -> Result<RingPoly> {
        if h.ring() != &self.source {
            return Err(Error::RingMismatch(
                "polynomial is not over the source field".into(),
            ));
        }
        let h = h.rem(&self.source_modulus)?;
        let one_plus_v = self.target.add(&self.target.one(), &self.target.gamma());
        let mut v_pows = Vec::with_capacity(self.pk);
        let mut acc_el = self.target.one();
        for _ in 0..self.pk {
            v_pows.push(acc_el.clone());
            acc_el = self.target.mul(&acc_el, &one_plus_v);
        }
        let mut y_pow_cache: HashMap<u128, RingPoly> = HashMap::new();
        let mut acc = RingPoly::zero(&self.target);
        for (j, c) in h.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = (j / self.pk) as u128;
            let l = j % self.pk;
            let exp = (i + self.e_prime * l as u128) % self.e;
            let ypow = match y_pow_cache.get(&exp) {
                Some(p) => p.clone(),
                None => {
                    let p = RingPoly::x(&self.target).pow_mod(exp, &self.target_modulus)?;
                    y_pow_cache.insert(exp, p.clone());
                    p
                }
            };
            let coef = self
                .target
                .mul(&self.target.lift(&self.source.residue(c)), &v_pows[l]);
            acc = acc.add(&ypow.scale(&coef));
        }
        Ok(acc)
    }

    /// Standard form over W of the image of the ideal the generators span.
    pub fn transfer(&self, gens: &[RingPoly]) -> Result<PolycyclicCode> {
        let mapped: Vec<RingPoly> = gens
            .iter()
            .map(|g| self.map_poly(g))
            .collect::<Result<_>>()?;
        PolycyclicCode::standard_form(&self.target_modulus, &mapped)
    }
}
