//! Sparse supercommutative polynomials with Koszul sign discipline.
//!
//! A [`Signature`] fixes counts `(r, s)` of even and odd indices; six
//! indeterminate families (λ, μ, ν, ∂, ∂_y, y) each carry `r+s` indexed
//! symbols. Indices `1..=r` are even, `r+1..=r+s` are odd. The canonical word
//! order is family-major (λ < μ < ν < ∂ < ∂_y < y), index-ascending within a
//! family; every monomial is stored in this normal form and every operation
//! that reorders symbols accrues the Koszul sign (−1) per transposition of
//! adjacent odd symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::rational::{parse_rational, rat, Rational};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    Lambda,
    Mu,
    Nu,
    Partial,
    PartialY,
    Y,
}

pub const FAMILIES: [Family; 6] = [
    Family::Lambda,
    Family::Mu,
    Family::Nu,
    Family::Partial,
    Family::PartialY,
    Family::Y,
];

impl Family {
    pub fn rank(self) -> usize {
        match self {
            Family::Lambda => 0,
            Family::Mu => 1,
            Family::Nu => 2,
            Family::Partial => 3,
            Family::PartialY => 4,
            Family::Y => 5,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Family::Lambda => "l",
            Family::Mu => "m",
            Family::Nu => "n",
            Family::Partial => "d",
            Family::PartialY => "dy",
            Family::Y => "y",
        }
    }
}

/// Counts of even and odd indices shared by all families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pub r: u8,
    pub s: u8,
}

impl Signature {
    pub fn new(r: u8, s: u8) -> Self {
        assert!(r <= 8 && s <= 8, "signatures up to (8,8) are supported");
        Signature { r, s }
    }

    pub fn n(&self) -> u8 {
        self.r + self.s
    }

    /// Parity of the index: odd iff `index > r`.
    pub fn odd_index(&self, index: u8) -> bool {
        index > self.r
    }

    pub fn check_index(&self, index: u8) -> Result<(), AlgebraError> {
        if index == 0 || index > self.n() {
            return Err(AlgebraError::IndexOutOfRange {
                index,
                r: self.r,
                s: self.s,
            });
        }
        Ok(())
    }

    fn even_slot(&self, f: Family, index: u8) -> u8 {
        debug_assert!(index >= 1 && index <= self.r);
        (f.rank() as u8) * self.r + (index - 1)
    }

    fn odd_pos(&self, f: Family, index: u8) -> u8 {
        debug_assert!(index > self.r && index <= self.n());
        (f.rank() as u8) * self.s + (index - self.r - 1)
    }

    fn slot_symbol(&self, slot: u8) -> Symbol {
        let f = FAMILIES[(slot / self.r) as usize];
        Symbol::new(f, slot % self.r + 1)
    }

    fn pos_symbol(&self, pos: u8) -> Symbol {
        let f = FAMILIES[(pos / self.s) as usize];
        Symbol::new(f, self.r + pos % self.s + 1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Symbol {
    pub family: Family,
    pub index: u8,
}

impl Symbol {
    pub fn new(family: Family, index: u8) -> Self {
        Symbol { family, index }
    }

    pub fn lambda(index: u8) -> Self {
        Symbol::new(Family::Lambda, index)
    }

    pub fn mu(index: u8) -> Self {
        Symbol::new(Family::Mu, index)
    }

    pub fn nu(index: u8) -> Self {
        Symbol::new(Family::Nu, index)
    }

    pub fn partial(index: u8) -> Self {
        Symbol::new(Family::Partial, index)
    }

    pub fn partial_y(index: u8) -> Self {
        Symbol::new(Family::PartialY, index)
    }

    pub fn y(index: u8) -> Self {
        Symbol::new(Family::Y, index)
    }

    pub fn is_odd(&self, sig: &Signature) -> bool {
        sig.odd_index(self.index)
    }

    pub fn text(&self) -> String {
        format!("{}{}", self.family.prefix(), self.index)
    }

    pub fn parse(s: &str) -> Result<Symbol, AlgebraError> {
        // "dy" must be tried before "d".
        for f in [
            Family::PartialY,
            Family::Lambda,
            Family::Mu,
            Family::Nu,
            Family::Partial,
            Family::Y,
        ] {
            if let Some(rest) = s.strip_prefix(f.prefix()) {
                if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                    let index: u8 = rest
                        .parse()
                        .map_err(|_| AlgebraError::UnknownSymbol(s.to_string()))?;
                    return Ok(Symbol::new(f, index));
                }
            }
        }
        Err(AlgebraError::UnknownSymbol(s.to_string()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

fn mask_inversions(earlier: u64, later: u64) -> u32 {
    // Transpositions needed to merge the word `earlier ++ later` into
    // canonical order: each bit of `later` passes the bits of `earlier`
    // strictly above it.
    let mut inv = 0u32;
    let mut b = later;
    while b != 0 {
        let p = b.trailing_zeros();
        if p < 63 {
            inv += (earlier >> (p + 1)).count_ones();
        }
        b &= b - 1;
    }
    inv
}

/// A normal-form word: even exponents per slot, odd presence bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SuperMonomial {
    even: SmallVec<[(u8, u8); 6]>,
    odd: u64,
}

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd == 0
    }

    pub fn from_symbol(sig: &Signature, sym: Symbol) -> Self {
        let mut m = SuperMonomial::default();
        if sym.is_odd(sig) {
            m.odd = 1u64 << sig.odd_pos(sym.family, sym.index);
        } else {
            m.even.push((sig.even_slot(sym.family, sym.index), 1));
        }
        m
    }

    /// Parity of the monomial: parity of the number of odd symbols.
    pub fn parity(&self) -> bool {
        self.odd.count_ones() % 2 == 1
    }

    pub fn odd_is_empty(&self) -> bool {
        self.odd == 0
    }

    pub fn total_degree(&self) -> u32 {
        self.even.iter().map(|&(_, e)| e as u32).sum::<u32>() + self.odd.count_ones()
    }

    pub fn degree_in(&self, sig: &Signature, fam: Family) -> u32 {
        let lo_slot = (fam.rank() as u8) * sig.r;
        let even: u32 = self
            .even
            .iter()
            .filter(|&&(s, _)| s >= lo_slot && s < lo_slot + sig.r)
            .map(|&(_, e)| e as u32)
            .sum();
        let lo = (fam.rank() as u32) * sig.s as u32;
        let mask = if sig.s == 0 {
            0
        } else {
            (((1u64 << sig.s) - 1) << lo) & self.odd
        };
        even + mask.count_ones()
    }

    pub fn exponent(&self, sig: &Signature, sym: Symbol) -> u8 {
        if sym.is_odd(sig) {
            ((self.odd >> sig.odd_pos(sym.family, sym.index)) & 1) as u8
        } else {
            let slot = sig.even_slot(sym.family, sym.index);
            self.even
                .iter()
                .find(|&&(s, _)| s == slot)
                .map(|&(_, e)| e)
                .unwrap_or(0)
        }
    }

    /// Product of two normal-form words, left factor first. `None` when an
    /// odd symbol repeats.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(SuperMonomial, i64)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let sign = if mask_inversions(self.odd, other.odd) % 2 == 0 {
            1
        } else {
            -1
        };
        let mut even = SmallVec::<[(u8, u8); 6]>::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.even.len() || j < other.even.len() {
            match (self.even.get(i), other.even.get(j)) {
                (Some(&(sa, ea)), Some(&(sb, eb))) => {
                    if sa < sb {
                        even.push((sa, ea));
                        i += 1;
                    } else if sb < sa {
                        even.push((sb, eb));
                        j += 1;
                    } else {
                        even.push((sa, ea + eb));
                        i += 1;
                        j += 1;
                    }
                }
                (Some(&t), None) => {
                    even.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    even.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((SuperMonomial { even, odd: self.odd | other.odd }, sign))
    }

    /// Split into (symbols whose family satisfies `keep`, the rest). Both
    /// halves stay canonical; no sign is attached — callers recombine with
    /// [`SuperMonomial::mul`] when order matters.
    pub fn split(
        &self,
        sig: &Signature,
        keep: impl Fn(Family) -> bool,
    ) -> (SuperMonomial, SuperMonomial) {
        let mut a = SuperMonomial::default();
        let mut b = SuperMonomial::default();
        for &(slot, e) in &self.even {
            let f = FAMILIES[(slot / sig.r) as usize];
            if keep(f) {
                a.even.push((slot, e));
            } else {
                b.even.push((slot, e));
            }
        }
        let mut keep_mask = 0u64;
        if sig.s > 0 {
            for f in FAMILIES {
                if keep(f) {
                    keep_mask |= ((1u64 << sig.s) - 1) << (f.rank() as u32 * sig.s as u32);
                }
            }
        }
        a.odd = self.odd & keep_mask;
        b.odd = self.odd & !keep_mask;
        (a, b)
    }

    /// Split by an arbitrary symbol predicate. Both halves stay canonical.
    pub fn split_by(
        &self,
        sig: &Signature,
        keep: impl Fn(Symbol) -> bool,
    ) -> (SuperMonomial, SuperMonomial) {
        let mut a = SuperMonomial::default();
        let mut b = SuperMonomial::default();
        for &(slot, e) in &self.even {
            if keep(sig.slot_symbol(slot)) {
                a.even.push((slot, e));
            } else {
                b.even.push((slot, e));
            }
        }
        let mut bits = self.odd;
        while bits != 0 {
            let p = bits.trailing_zeros() as u8;
            if keep(sig.pos_symbol(p)) {
                a.odd |= 1 << p;
            } else {
                b.odd |= 1 << p;
            }
            bits &= bits - 1;
        }
        (a, b)
    }

    /// Left derivative with respect to an odd symbol: the sign counts the odd
    /// symbols strictly to the left of `sym` in the canonical word.
    pub fn odd_left_deriv(&self, sig: &Signature, sym: Symbol) -> Option<(SuperMonomial, i64)> {
        let pos = sig.odd_pos(sym.family, sym.index);
        if self.odd & (1 << pos) == 0 {
            return None;
        }
        let below = self.odd & ((1u64 << pos) - 1);
        let sign = if below.count_ones() % 2 == 0 { 1 } else { -1 };
        let mut m = self.clone();
        m.odd &= !(1 << pos);
        Some((m, sign))
    }

    /// d/d(sym) for an even symbol; returns the decremented monomial and the
    /// old exponent.
    pub fn even_deriv(&self, sig: &Signature, sym: Symbol) -> Option<(SuperMonomial, u8)> {
        let slot = sig.even_slot(sym.family, sym.index);
        let k = self.even.iter().position(|&(s, _)| s == slot)?;
        let (_, e) = self.even[k];
        let mut m = self.clone();
        if e == 1 {
            m.even.remove(k);
        } else {
            m.even[k].1 -= 1;
        }
        Some((m, e))
    }

    /// The canonical word, one entry per symbol occurrence, ascending.
    pub fn word(&self, sig: &Signature) -> Vec<Symbol> {
        let mut entries: Vec<(u32, Symbol, u8)> = Vec::new();
        for &(slot, e) in &self.even {
            let sym = sig.slot_symbol(slot);
            // Sort key: family rank, then index.
            entries.push(((sym.family.rank() as u32) << 8 | sym.index as u32, sym, e));
        }
        let mut b = self.odd;
        while b != 0 {
            let p = b.trailing_zeros() as u8;
            let sym = sig.pos_symbol(p);
            entries.push(((sym.family.rank() as u32) << 8 | sym.index as u32, sym, 1));
            b &= b - 1;
        }
        entries.sort_by_key(|&(k, _, _)| k);
        let mut out = Vec::new();
        for (_, sym, e) in entries {
            for _ in 0..e {
                out.push(sym);
            }
        }
        out
    }
}

/// Exact-rational linear combination of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperPolynomial {
    pub sig: Signature,
    terms: BTreeMap<SuperMonomial, Rational>,
}

/// Parity of a (possibly zero, possibly inhomogeneous) expression.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityQ {
    Zero,
    Homogeneous(bool),
    Mixed,
}

impl SuperPolynomial {
    pub fn zero(sig: Signature) -> Self {
        SuperPolynomial { sig, terms: BTreeMap::new() }
    }

    pub fn constant(sig: Signature, c: Rational) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(SuperMonomial::one(), c);
        p
    }

    pub fn one(sig: Signature) -> Self {
        Self::constant(sig, rat(1))
    }

    pub fn symbol(sig: Signature, sym: Symbol) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(SuperMonomial::from_symbol(&sig, sym), rat(1));
        p
    }

    /// Normalizes an ordered word of symbols: the Koszul sign of the sorting
    /// permutation is applied, and a repeated odd symbol gives zero.
    pub fn from_word(sig: Signature, word: &[Symbol], coeff: Rational) -> Result<Self, AlgebraError> {
        let mut mono = SuperMonomial::one();
        let mut sign = 1i64;
        for sym in word {
            sig.check_index(sym.index)?;
            match mono.mul(&SuperMonomial::from_symbol(&sig, *sym)) {
                Some((m, s)) => {
                    mono = m;
                    sign *= s;
                }
                None => return Ok(Self::zero(sig)),
            }
        }
        let mut p = Self::zero(sig);
        p.add_term(mono, coeff * rat(sign as i128));
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &SuperMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SuperPolynomial) {
        debug_assert_eq!(self.sig, other.sig);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_assign_scaled(&mut self, other: &SuperPolynomial, k: &Rational) {
        debug_assert_eq!(self.sig, other.sig);
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone() * k.clone());
        }
    }

    pub fn neg(&self) -> SuperPolynomial {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn scale(&self, k: &Rational) -> SuperPolynomial {
        if k.is_zero() {
            return Self::zero(self.sig);
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.clone() * k.clone();
        }
        p
    }

    pub fn add(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn sub(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut p = self.clone();
        p.add_assign_scaled(other, &rat(-1));
        p
    }

    /// Supercommutative product. Errors when the signatures differ.
    pub fn checked_mul(&self, other: &SuperPolynomial) -> Result<SuperPolynomial, AlgebraError> {
        if self.sig != other.sig {
            return Err(AlgebraError::SignatureMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &SuperPolynomial) -> SuperPolynomial {
        debug_assert_eq!(self.sig, other.sig);
        let mut out = Self::zero(self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    out.add_term(m, ca.clone() * cb.clone() * rat(sign as i128));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperPolynomial {
        let mut out = Self::one(self.sig);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Left Grassmann derivative with respect to an odd symbol.
    pub fn odd_left_derivative(&self, sym: Symbol) -> Result<SuperPolynomial, AlgebraError> {
        if !sym.is_odd(&self.sig) {
            return Err(AlgebraError::ExpectedOdd);
        }
        let mut out = Self::zero(self.sig);
        for (m, c) in &self.terms {
            if let Some((m2, sign)) = m.odd_left_deriv(&self.sig, sym) {
                out.add_term(m2, c.clone() * rat(sign as i128));
            }
        }
        Ok(out)
    }

    /// d/d(sym) for an even symbol.
    pub fn even_derivative(&self, sym: Symbol) -> Result<SuperPolynomial, AlgebraError> {
        if sym.is_odd(&self.sig) {
            return Err(AlgebraError::ExpectedEven);
        }
        let mut out = Self::zero(self.sig);
        for (m, c) in &self.terms {
            if let Some((m2, e)) = m.even_deriv(&self.sig, sym) {
                out.add_term(m2, c.clone() * rat(e as i128));
            }
        }
        Ok(out)
    }

    /// Signed left derivative, dispatching on the parity of `sym`.
    pub fn derivative(&self, sym: Symbol) -> SuperPolynomial {
        if sym.is_odd(&self.sig) {
            self.odd_left_derivative(sym).expect("parity checked")
        } else {
            self.even_derivative(sym).expect("parity checked")
        }
    }

    pub fn parity(&self) -> ParityQ {
        let mut seen: Option<bool> = None;
        for m in self.terms.keys() {
            match seen {
                None => seen = Some(m.parity()),
                Some(p) if p == m.parity() => {}
                Some(_) => return ParityQ::Mixed,
            }
        }
        match seen {
            None => ParityQ::Zero,
            Some(p) => ParityQ::Homogeneous(p),
        }
    }

    /// Replaces every occurrence of `target` in place by `replacement`,
    /// expanded multilinearly and renormalized. The replacement must be
    /// homogeneous of the target's parity (zero is allowed).
    pub fn substitute(
        &self,
        target: Symbol,
        replacement: &SuperPolynomial,
    ) -> Result<SuperPolynomial, AlgebraError> {
        if replacement.sig != self.sig {
            return Err(AlgebraError::SignatureMismatch);
        }
        let target_odd = target.is_odd(&self.sig);
        match replacement.parity() {
            ParityQ::Zero => {}
            ParityQ::Homogeneous(p) if p == target_odd => {}
            _ => return Err(AlgebraError::ParityMismatch),
        }
        let mut out = Self::zero(self.sig);
        for (m, c) in &self.terms {
            if target_odd {
                let pos = self.sig.odd_pos(target.family, target.index);
                if m.odd & (1 << pos) == 0 {
                    out.add_term(m.clone(), c.clone());
                    continue;
                }
                // Split the word around the target's position: all even
                // content rides with the left half (even symbols commute
                // freely), odd bits split by position.
                let mut u = m.clone();
                u.odd &= (1u64 << pos) - 1;
                let mut v = SuperMonomial::one();
                v.odd = m.odd & !((1u64 << (pos + 1)) - 1);
                for (mq, cq) in &replacement.terms {
                    if let Some((uq, s1)) = u.mul(mq) {
                        if let Some((uqv, s2)) = uq.mul(&v) {
                            out.add_term(
                                uqv,
                                c.clone() * cq.clone() * rat((s1 * s2) as i128),
                            );
                        }
                    }
                }
            } else {
                let slot = self.sig.even_slot(target.family, target.index);
                let e = m
                    .even
                    .iter()
                    .find(|&&(sl, _)| sl == slot)
                    .map(|&(_, e)| e)
                    .unwrap_or(0);
                if e == 0 {
                    out.add_term(m.clone(), c.clone());
                    continue;
                }
                let mut base = m.clone();
                base.even.retain(|&mut (sl, _)| sl != slot);
                let pw = replacement.pow(e as u32);
                for (mq, cq) in &pw.terms {
                    if let Some((bm, s)) = base.mul(mq) {
                        out.add_term(bm, c.clone() * cq.clone() * rat(s as i128));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Round-trippable text form: terms joined by ` + `/` - `, each term a
    /// rational and `*`-joined symbols, e.g. `-1/2*l5*d6`.
    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&mag.to_string());
            for sym in m.word(&self.sig) {
                out.push('*');
                out.push_str(&sym.text());
            }
        }
        out
    }

    pub fn parse(sig: Signature, input: &str) -> Result<SuperPolynomial, AlgebraError> {
        let mut out = Self::zero(sig);
        for (coeff, word) in tokenize_terms(input)? {
            let mut syms = Vec::new();
            for w in word {
                syms.push(Symbol::parse(&w)?);
            }
            let p = Self::from_word(sig, &syms, coeff)?;
            out.add_assign(&p);
        }
        Ok(out)
    }
}

/// Splits `a + b - c` style input into (coefficient, symbol-token) terms.
/// Shared by the polynomial and element parsers.
pub(crate) fn tokenize_terms(input: &str) -> Result<Vec<(Rational, Vec<String>)>, AlgebraError> {
    let input = input.trim();
    if input.is_empty() || input == "0" {
        return Ok(Vec::new());
    }
    fn flush(
        buf: &mut String,
        sign: i128,
        terms: &mut Vec<(Rational, Vec<String>)>,
    ) -> Result<(), AlgebraError> {
        let t = buf.trim();
        if t.is_empty() {
            return Err(AlgebraError::Parse("empty term".into()));
        }
        let mut parts = t.split('*').map(|p| p.trim().to_string());
        let head = parts.next().unwrap();
        let mut words: Vec<String> = Vec::new();
        let coeff = if head
            .chars()
            .next()
            .map(|c| c.is_ascii_digit() || c == '-')
            .unwrap_or(false)
        {
            parse_rational(&head)?
        } else {
            words.push(head);
            rat(1)
        };
        words.extend(parts);
        terms.push((coeff * rat(sign), words));
        buf.clear();
        Ok(())
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i128;
    for c in input.chars() {
        match c {
            '+' | '-' if !current.trim().is_empty() => {
                flush(&mut current, sign, &mut terms)?;
                sign = if c == '-' { -1 } else { 1 };
            }
            '-' => sign = -sign,
            '+' => {}
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        flush(&mut current, sign, &mut terms)?;
    }
    Ok(terms)
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn sig44() -> Signature {
        Signature::new(4, 4)
    }

    fn lam(i: u8) -> Symbol {
        Symbol::lambda(i)
    }

    #[test]
    fn normalize_word_examples() {
        let sig = sig44();
        let p = SuperPolynomial::from_word(sig, &[lam(5), lam(6)], rat(1)).unwrap();
        assert_eq!(p.text(), "1*l5*l6");
        let q = SuperPolynomial::from_word(sig, &[lam(6), lam(5)], rat(1)).unwrap();
        assert_eq!(q.text(), "-1*l5*l6");
        let z = SuperPolynomial::from_word(sig, &[lam(5), lam(5)], rat(1)).unwrap();
        assert!(z.is_zero());
        assert!(SuperPolynomial::from_word(sig, &[lam(9)], rat(1)).is_err());
    }

    #[test]
    fn multiply_examples() {
        let sig = sig44();
        let l1 = SuperPolynomial::symbol(sig, lam(1));
        let l2 = SuperPolynomial::symbol(sig, lam(2));
        assert_eq!(l1.mul(&l2), l2.mul(&l1));
        let d5 = SuperPolynomial::symbol(sig, Symbol::partial(5));
        let d678 = SuperPolynomial::from_word(
            sig,
            &[Symbol::partial(6), Symbol::partial(7), Symbol::partial(8)],
            rat(1),
        )
        .unwrap();
        let prod = d5.mul(&d678);
        assert_eq!(prod.text(), "1*d5*d6*d7*d8");
        let d56 = SuperPolynomial::from_word(sig, &[Symbol::partial(5), Symbol::partial(6)], rat(1)).unwrap();
        assert!(d56.mul(&d5).is_zero());
        let other = Signature::new(1, 0);
        let q = SuperPolynomial::one(other);
        assert_eq!(d5.checked_mul(&q), Err(AlgebraError::SignatureMismatch));
    }

    #[test]
    fn substitute_examples() {
        let sig = sig44();
        // λ1 -> -λ1 - ∂1 on λ1
        let l1 = SuperPolynomial::symbol(sig, lam(1));
        let repl = SuperPolynomial::parse(sig, "-1*l1 - 1*d1").unwrap();
        assert_eq!(l1.substitute(lam(1), &repl).unwrap().text(), "-1*l1 - 1*d1");
        // λ5λ6 with λ5 -> -λ5-∂5: in-place replacement then canonical reorder.
        let p = SuperPolynomial::from_word(sig, &[lam(5), lam(6)], rat(1)).unwrap();
        let repl5 = SuperPolynomial::parse(sig, "-1*l5 - 1*d5").unwrap();
        let got = p.substitute(lam(5), &repl5).unwrap();
        // −λ5λ6 − ∂5λ6, the second word reordering to +λ6∂5.
        assert_eq!(got, SuperPolynomial::parse(sig, "-1*l5*l6 + 1*l6*d5").unwrap());
        // λ5λ6 with λ6 -> ∂5.
        let repl6 = SuperPolynomial::symbol(sig, Symbol::partial(5));
        let got = p.substitute(lam(6), &repl6).unwrap();
        assert_eq!(got, SuperPolynomial::parse(sig, "1*l5*d5").unwrap());
        // parity mismatch rejected
        let even = SuperPolynomial::symbol(sig, lam(1));
        assert_eq!(p.substitute(lam(5), &even), Err(AlgebraError::ParityMismatch));
        // identity substitution
        let idp = p.substitute(lam(5), &SuperPolynomial::symbol(sig, lam(5))).unwrap();
        assert_eq!(idp, p);
    }

    #[test]
    fn derivative_examples() {
        let sig = sig44();
        let y = |i| Symbol::y(i);
        let y56 = SuperPolynomial::from_word(sig, &[y(5), y(6)], rat(1)).unwrap();
        assert_eq!(y56.odd_left_derivative(y(5)).unwrap().text(), "1*y6");
        assert_eq!(y56.odd_left_derivative(y(6)).unwrap().text(), "-1*y5");
        assert!(y56.odd_left_derivative(y(7)).unwrap().is_zero());
        assert_eq!(y56.odd_left_derivative(y(1)), Err(AlgebraError::ExpectedOdd));
        let y1sq = SuperPolynomial::parse(sig, "1*y1*y1").unwrap();
        assert_eq!(y1sq.even_derivative(y(1)).unwrap().text(), "2*y1");
        let y2 = SuperPolynomial::symbol(sig, y(2));
        assert!(y2.even_derivative(y(1)).unwrap().is_zero());
        let y1y5 = SuperPolynomial::from_word(sig, &[y(1), y(5)], rat(1)).unwrap();
        assert_eq!(y1y5.even_derivative(y(1)).unwrap().text(), "1*y5");
    }

    #[test]
    fn parser_round_trip_spot() {
        let sig = sig44();
        let p = SuperPolynomial::parse(sig, "-1/2*l5*d6 + 3*y1*y1*y5 - 2*dy7").unwrap();
        let q = SuperPolynomial::parse(sig, &p.text()).unwrap();
        assert_eq!(p, q);
    }

    fn arb_poly(sig: Signature, max_terms: usize) -> impl Strategy<Value = SuperPolynomial> {
        let sym = (0usize..6, 1u8..=8).prop_map(|(f, i)| Symbol::new(FAMILIES[f], i));
        let word = proptest::collection::vec(sym, 0..4);
        let term = (word, -4i128..=4).prop_map(move |(w, c)| {
            SuperPolynomial::from_word(sig, &w, rat(c)).unwrap()
        });
        proptest::collection::vec(term, 1..=max_terms).prop_map(move |ts| {
            let mut p = SuperPolynomial::zero(sig);
            for t in ts {
                p.add_assign(&t);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn mul_associative(a in arb_poly(sig44(), 3), b in arb_poly(sig44(), 3), c in arb_poly(sig44(), 3)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn mul_supercommutative(a in arb_poly(sig44(), 3), b in arb_poly(sig44(), 3)) {
            // Check on homogeneous parts.
            for (ma, ca) in a.terms() {
                for (mb, cb) in b.terms() {
                    let mut x = SuperPolynomial::zero(sig44());
                    x.add_term(ma.clone(), ca.clone());
                    let mut y = SuperPolynomial::zero(sig44());
                    y.add_term(mb.clone(), cb.clone());
                    let sign = if ma.parity() && mb.parity() { -1 } else { 1 };
                    prop_assert_eq!(x.mul(&y), y.mul(&x).scale(&rat(sign)));
                }
            }
        }

        #[test]
        fn odd_derivative_is_odd_derivation(a in arb_poly(sig44(), 3), b in arb_poly(sig44(), 3)) {
            let d = Symbol::y(5);
            // restrict to homogeneous left factors
            for (ma, ca) in a.terms() {
                let mut x = SuperPolynomial::zero(sig44());
                x.add_term(ma.clone(), ca.clone());
                let lhs = x.mul(&b).odd_left_derivative(d).unwrap();
                let sign = if ma.parity() { -1 } else { 1 };
                let rhs = x
                    .odd_left_derivative(d)
                    .unwrap()
                    .mul(&b)
                    .add(&x.mul(&b.odd_left_derivative(d).unwrap()).scale(&rat(sign)));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn parse_print_round_trip(a in arb_poly(sig44(), 4)) {
            let text = a.text();
            let back = SuperPolynomial::parse(sig44(), &text).unwrap();
            prop_assert_eq!(a, back);
        }

        #[test]
        fn normalize_permutation_sign(perm in proptest::sample::select(vec![
            vec![0usize,1,2], vec![0,2,1], vec![1,0,2], vec![1,2,0], vec![2,0,1], vec![2,1,0],
        ])) {
            // permutations of the odd word (y5, y6, y7)
            let sig = sig44();
            let base = [Symbol::y(5), Symbol::y(6), Symbol::y(7)];
            let word: Vec<Symbol> = perm.iter().map(|&i| base[i]).collect();
            let p = SuperPolynomial::from_word(sig, &word, rat(1)).unwrap();
            // sign of permutation
            let mut inv = 0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            let want = SuperPolynomial::from_word(sig, &base, rat(if inv % 2 == 0 { 1 } else { -1 })).unwrap();
            prop_assert_eq!(p, want);
        }
    }

    #[test]
    fn substitution_is_involution_for_minus_lambda_minus_partial() {
        let sig = sig44();
        let p = SuperPolynomial::parse(sig, "1*l5*l6*d1 - 2*l1*l1*l7").unwrap();
        let mut q = p.clone();
        for _ in 0..2 {
            for i in 1..=8u8 {
                let repl = SuperPolynomial::parse(sig, &format!("-1*l{i} - 1*d{i}")).unwrap();
                q = q.substitute(lam(i), &repl).unwrap();
            }
        }
        assert_eq!(q, p);
    }

    #[test]
    fn half_coefficient_survives_round_trip() {
        let sig = sig44();
        let p = SuperPolynomial::constant(sig, ratio(-1, 2));
        assert_eq!(p.text(), "-1/2");
        assert_eq!(SuperPolynomial::parse(sig, "-1/2").unwrap(), p);
    }
}
