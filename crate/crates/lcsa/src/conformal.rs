//! Free `F[∂]`-modules over named generators and λ-brackets extended by
//! sesquilinearity.
//!
//! An [`Element`] is a finite sum of terms `coefficient · monomial ·
//! generator`, the monomial a normal-form word over the λ/μ/ν/∂/∂_y/y
//! families and the generator a symbol at the right end of the word. One
//! Koszul engine normalizes everything: the bimodule rule
//! `a ∂_i = (−1)^{p_i p(a)} ∂_i a` is exactly the sign of sorting the word.
//!
//! The bracket of two generators is stored in a [`GeneratorTable`];
//! everything else is computed from the sesquilinearity rules
//! `[(∂_i a)_λ b] = −λ_i [a_λ b]` and `[a_λ (b ∂_i)] = [a_λ b](∂_i + λ_i)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::AlgebraError;
use crate::rational::{rat, Rational};
use crate::superpoly::{tokenize_terms, Family, ParityQ, Signature, SuperMonomial, SuperPolynomial, Symbol};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenInfo {
    pub name: String,
    pub odd: bool,
    pub degree: i64,
}

impl GenInfo {
    pub fn new(name: impl Into<String>, odd: bool, degree: i64) -> Self {
        GenInfo { name: name.into(), odd, degree }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ETerm {
    pub mono: SuperMonomial,
    pub gen: u8,
}

/// Element of a free module over named generators, with monomial prefixes.
///
/// With ∂-only monomials this is a conformal element; λ/μ content makes it a
/// λ-element. The reading is always left to right: monomial word, then the
/// generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    pub sig: Signature,
    terms: BTreeMap<ETerm, Rational>,
}

impl Element {
    pub fn zero(sig: Signature) -> Self {
        Element { sig, terms: BTreeMap::new() }
    }

    pub fn generator(sig: Signature, gen: u8) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(SuperMonomial::one(), gen, rat(1));
        e
    }

    pub fn from_parts(sig: Signature, mono: SuperMonomial, gen: u8, coeff: Rational) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(mono, gen, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ETerm, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &SuperMonomial, gen: u8) -> Rational {
        self.terms
            .get(&ETerm { mono: mono.clone(), gen })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: SuperMonomial, gen: u8, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = ETerm { mono, gen };
        match self.terms.entry(key) {
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

    pub fn add_assign(&mut self, other: &Element) {
        debug_assert_eq!(self.sig, other.sig);
        for (t, c) in &other.terms {
            self.add_term(t.mono.clone(), t.gen, c.clone());
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Element, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.mono.clone(), t.gen, c.clone() * k.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(other);
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign_scaled(other, &rat(-1));
        e
    }

    pub fn neg(&self) -> Element {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, k: &Rational) -> Element {
        if k.is_zero() {
            return Self::zero(self.sig);
        }
        let mut e = self.clone();
        for c in e.terms.values_mut() {
            *c = c.clone() * k.clone();
        }
        e
    }

    /// Left multiplication by a scalar polynomial: the polynomial's word is
    /// prepended, Koszul-normalized against each term's monomial. No
    /// generator crossing happens on the left.
    pub fn poly_mul_left(&self, p: &SuperPolynomial) -> Element {
        debug_assert_eq!(self.sig, p.sig);
        let mut out = Self::zero(self.sig);
        for (mp, cp) in p.terms() {
            for (t, ct) in &self.terms {
                if let Some((m, sign)) = mp.mul(&t.mono) {
                    out.add_term(m, t.gen, cp.clone() * ct.clone() * rat(sign as i128));
                }
            }
        }
        out
    }

    /// Appends `s` at the right end of each term's word (to the right of the
    /// generator) and normalizes it into canonical position. The move past
    /// the generator contributes `(−1)^{p(s) p(gen)}`.
    pub fn right_mul_symbol(&self, s: Symbol, gens: &[GenInfo]) -> Element {
        let s_odd = s.is_odd(&self.sig);
        let sm = SuperMonomial::from_symbol(&self.sig, s);
        let mut out = Self::zero(self.sig);
        for (t, c) in &self.terms {
            let gen_sign = if s_odd && gens[t.gen as usize].odd { -1 } else { 1 };
            if let Some((m, sign)) = t.mono.mul(&sm) {
                out.add_term(m, t.gen, c.clone() * rat((gen_sign * sign) as i128));
            }
        }
        out
    }

    /// Multiplies `s` onto the front of each term's word.
    pub fn front_mul_symbol(&self, s: Symbol) -> Element {
        let sm = SuperMonomial::from_symbol(&self.sig, s);
        let mut out = Self::zero(self.sig);
        for (t, c) in &self.terms {
            if let Some((m, sign)) = sm.mul(&t.mono) {
                out.add_term(m, t.gen, c.clone() * rat(sign as i128));
            }
        }
        out
    }

    /// Positional substitution inside each term's word; the replacement must
    /// be homogeneous of the target's parity, so the generator is never
    /// crossed with a sign change.
    pub fn substitute(
        &self,
        target: Symbol,
        replacement: &SuperPolynomial,
    ) -> Result<Element, AlgebraError> {
        let target_odd = target.is_odd(&self.sig);
        match replacement.parity() {
            ParityQ::Zero => {}
            ParityQ::Homogeneous(p) if p == target_odd => {}
            _ => return Err(AlgebraError::ParityMismatch),
        }
        let mut out = Self::zero(self.sig);
        for (t, c) in &self.terms {
            let mut single = SuperPolynomial::zero(self.sig);
            single.add_term(t.mono.clone(), rat(1));
            let subbed = single.substitute(target, replacement)?;
            for (m, cm) in subbed.terms() {
                out.add_term(m.clone(), t.gen, c.clone() * cm.clone());
            }
        }
        Ok(out)
    }

    /// Moves every λ-family symbol to the μ family, preserving positions.
    /// The element must be μ-free.
    pub fn rename_lambda_to_mu(&self) -> Element {
        let sig = self.sig;
        let mut out = Self::zero(sig);
        for (t, c) in &self.terms {
            let (lpart, rest) = t.mono.split(&sig, |f| f == Family::Lambda);
            debug_assert_eq!(rest.degree_in(&sig, Family::Mu), 0);
            let mut mu_part = SuperMonomial::one();
            for sym in lpart.word(&sig) {
                let (m, sign) = mu_part
                    .mul(&SuperMonomial::from_symbol(&sig, Symbol::mu(sym.index)))
                    .expect("distinct positions");
                debug_assert_eq!(sign, 1);
                mu_part = m;
            }
            let (m, sign) = mu_part.mul(&rest).expect("disjoint families");
            debug_assert_eq!(sign, 1);
            out.add_term(m, t.gen, c.clone());
        }
        out
    }

    /// Parity of the element with generator parities supplied. `None` when
    /// zero or inhomogeneous.
    pub fn parity(&self, gens: &[GenInfo]) -> Option<bool> {
        let mut seen: Option<bool> = None;
        for t in self.terms.keys() {
            let p = t.mono.parity() ^ gens[t.gen as usize].odd;
            match seen {
                None => seen = Some(p),
                Some(q) if q == p => {}
                Some(_) => return None,
            }
        }
        seen
    }

    /// ℤ-degree: `deg(gen) − 2·(total λ/μ/ν/∂ degree)`. `None` marks an
    /// inhomogeneous element; zero elements have every degree.
    pub fn degree(&self, gens: &[GenInfo]) -> DegreeQ {
        let mut seen: Option<i64> = None;
        for t in self.terms.keys() {
            let shift = 2 * (t.mono.degree_in(&self.sig, Family::Lambda)
                + t.mono.degree_in(&self.sig, Family::Mu)
                + t.mono.degree_in(&self.sig, Family::Nu)
                + t.mono.degree_in(&self.sig, Family::Partial)) as i64;
            let d = gens[t.gen as usize].degree - shift;
            match seen {
                None => seen = Some(d),
                Some(q) if q == d => {}
                Some(_) => return DegreeQ::Inhomogeneous,
            }
        }
        match seen {
            None => DegreeQ::Zero,
            Some(d) => DegreeQ::Homogeneous(d),
        }
    }

    pub fn text(&self, gens: &[GenInfo]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
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
            for sym in t.mono.word(&self.sig) {
                out.push('*');
                out.push_str(&sym.text());
            }
            out.push('*');
            out.push_str(&gens[t.gen as usize].name);
        }
        out
    }

    /// Parses the element grammar: each term ends with a generator name.
    pub fn parse(sig: Signature, gens: &[GenInfo], input: &str) -> Result<Element, AlgebraError> {
        let mut out = Self::zero(sig);
        for (coeff, words) in tokenize_terms(input)? {
            let Some((last, syms)) = words.split_last() else {
                return Err(AlgebraError::Parse("term without generator".into()));
            };
            let gen = gens
                .iter()
                .position(|g| &g.name == last)
                .ok_or_else(|| AlgebraError::UnknownGenerator(last.clone()))?;
            let mut parsed = Vec::new();
            for w in syms {
                parsed.push(Symbol::parse(w)?);
            }
            let p = SuperPolynomial::from_word(sig, &parsed, coeff)?;
            for (m, c) in p.terms() {
                out.add_term(m.clone(), gen as u8, c.clone());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegreeQ {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

impl DegreeQ {
    /// Whether the element is compatible with degree `d` (zero always is).
    pub fn is(&self, d: i64) -> bool {
        match self {
            DegreeQ::Zero => true,
            DegreeQ::Homogeneous(x) => *x == d,
            DegreeQ::Inhomogeneous => false,
        }
    }
}

/// Which parameter family a bracket emits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutFam {
    Lambda,
    Mu,
}

impl OutFam {
    fn symbol(self, index: u8) -> Symbol {
        match self {
            OutFam::Lambda => Symbol::lambda(index),
            OutFam::Mu => Symbol::mu(index),
        }
    }
}

/// How ∂-factors on the right slot are folded back in.
///
/// `Bracket` uses `[a_λ (b ∂_i)] = [a_λ b](∂_i + λ_i)` after rewriting
/// `∂_i b = (−1)^{p_i p(b)} b ∂_i`; `Module` uses the module axiom
/// `a_λ(∂_i v) = (−1)^{p_i p(a)} (∂_i + λ_i)(a_λ v)` with front
/// multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RightRule {
    Bracket,
    Module,
}

/// Bilinear sesquilinear extension of a generator-pair core.
///
/// Both slots may carry λ/μ/ν prefixes: a prefix on the left slot passes out
/// untouched, a prefix `P` on the right slot passes the acting element `a`
/// and contributes `(−1)^{p(P) p(a)}`.
pub fn extend_bilinear(
    sig: Signature,
    left: &Element,
    left_gens: &[GenInfo],
    right: &Element,
    right_gens: &[GenInfo],
    core: &mut dyn FnMut(u8, u8) -> Element,
    out_gens: &[GenInfo],
    out: OutFam,
    rule: RightRule,
) -> Element {
    let prefix_fam = |f: Family| f == Family::Lambda || f == Family::Mu || f == Family::Nu;
    let mut acc = Element::zero(sig);
    for (tl, cl) in left.terms() {
        let (pl, dl) = tl.mono.split(&sig, prefix_fam);
        debug_assert_eq!(dl.degree_in(&sig, Family::Y), 0, "left slot must be y-free");
        let p_acting = dl.parity() ^ left_gens[tl.gen as usize].odd;
        for (tr, cr) in right.terms() {
            let (pr, dr) = tr.mono.split(&sig, prefix_fam);
            let sign_pull = if pr.parity() && p_acting { -1i64 } else { 1 };

            let mut elem = core(tl.gen, tr.gen);
            if out == OutFam::Mu {
                elem = elem.rename_lambda_to_mu();
            }

            // Right-slot ∂ factors, outermost first for the signs; the
            // multiplications by (∂_j + λ_j) apply innermost first.
            let dr_word = dr.word(&sig);
            let mut sign_right = 1i64;
            match rule {
                RightRule::Bracket => {
                    let mut suffix_parity = dr.parity() ^ right_gens[tr.gen as usize].odd;
                    for sym in &dr_word {
                        let p_sym = sym.is_odd(&sig);
                        // parity of what remains to the right of this factor
                        if p_sym {
                            suffix_parity ^= true;
                            if suffix_parity {
                                sign_right = -sign_right;
                            }
                        }
                    }
                }
                RightRule::Module => {
                    if p_acting {
                        let odd_count = dr_word.iter().filter(|s| s.is_odd(&sig)).count();
                        if odd_count % 2 == 1 {
                            sign_right = -1;
                        }
                    }
                }
            }
            for sym in dr_word.iter().rev() {
                let with_d;
                let with_l;
                match rule {
                    RightRule::Bracket => {
                        with_d = elem.right_mul_symbol(Symbol::partial(sym.index), out_gens);
                        with_l = elem.right_mul_symbol(out.symbol(sym.index), out_gens);
                    }
                    RightRule::Module => {
                        with_d = elem.front_mul_symbol(Symbol::partial(sym.index));
                        with_l = elem.front_mul_symbol(out.symbol(sym.index));
                    }
                }
                elem = with_d.add(&with_l);
            }

            // Left-slot ∂ factors: each contributes −λ_i as a left prefix, in
            // word order.
            let mut lam_prefix = SuperMonomial::one();
            let mut sign_left = 1i64;
            for sym in dl.word(&sig) {
                sign_left = -sign_left;
                let (m, sign) = lam_prefix
                    .mul(&SuperMonomial::from_symbol(&sig, out.symbol(sym.index)))
                    .expect("ascending word");
                debug_assert_eq!(sign, 1);
                lam_prefix = m;
            }

            // Assemble the full prefix pl · pr · λ(dl).
            let Some((p1, s1)) = pl.mul(&pr) else { continue };
            let Some((p_all, s2)) = p1.mul(&lam_prefix) else { continue };
            let mut prefix_poly = SuperPolynomial::zero(sig);
            prefix_poly.add_term(p_all, rat((s1 * s2) as i128));

            let coeff =
                cl.clone() * cr.clone() * rat((sign_pull * sign_right * sign_left) as i128);
            acc.add_assign_scaled(&elem.poly_mul_left(&prefix_poly), &coeff);
        }
    }
    acc
}

/// Generator list plus the bracket table `[g_i λ g_j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorTable {
    pub sig: Signature,
    pub gens: Vec<GenInfo>,
    entries: Vec<Element>,
}

impl GeneratorTable {
    /// Validates that each entry is homogeneous with parity `p(g)+p(h)` and
    /// degree `deg g + deg h`.
    pub fn new(
        sig: Signature,
        gens: Vec<GenInfo>,
        entries: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        let n = gens.len();
        if entries.len() != n * n {
            return Err(AlgebraError::InvalidTable(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let e = &entries[i * n + j];
                let want_parity = gens[i].odd ^ gens[j].odd;
                if let Some(p) = e.parity(&gens) {
                    if p != want_parity {
                        return Err(AlgebraError::InvalidTable(format!(
                            "entry ({},{}) has parity {}, expected {}",
                            gens[i].name, gens[j].name, p as u8, want_parity as u8
                        )));
                    }
                }
                match e.degree(&gens) {
                    DegreeQ::Zero => {}
                    DegreeQ::Homogeneous(d) => {
                        if d != gens[i].degree + gens[j].degree {
                            return Err(AlgebraError::InvalidTable(format!(
                                "entry ({},{}) has degree {}, expected {}",
                                gens[i].name,
                                gens[j].name,
                                d,
                                gens[i].degree + gens[j].degree
                            )));
                        }
                    }
                    DegreeQ::Inhomogeneous => {
                        return Err(AlgebraError::InvalidTable(format!(
                            "entry ({},{}) is inhomogeneous",
                            gens[i].name, gens[j].name
                        )));
                    }
                }
            }
        }
        Ok(GeneratorTable { sig, gens, entries })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.gens.len() + j]
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.sig, i as u8)
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// `[a_λ b]` for conformal elements over this table.
    pub fn bracket(&self, a: &Element, b: &Element) -> Element {
        self.bracket_out(a, b, OutFam::Lambda)
    }

    pub fn bracket_out(&self, a: &Element, b: &Element, out: OutFam) -> Element {
        extend_bilinear(
            self.sig,
            a,
            &self.gens,
            b,
            &self.gens,
            &mut |i, j| self.entry(i as usize, j as usize).clone(),
            &self.gens,
            out,
            RightRule::Bracket,
        )
    }

    /// `[X_{λ+μ} c]` for a λ-element `X`: λ-prefixes pass out untouched, the
    /// bracket of the ∂-core is computed in λ and then shifted λ ↦ λ+μ.
    pub fn bracket_at_lambda_plus_mu(&self, x: &Element, c: &Element) -> Element {
        let sig = self.sig;
        let mut acc = Element::zero(sig);
        for (t, ct) in x.terms() {
            let (prefix, d) = t
                .mono
                .split(&sig, |f| f == Family::Lambda || f == Family::Mu || f == Family::Nu);
            debug_assert_eq!(prefix.degree_in(&sig, Family::Mu), 0);
            let single = Element::from_parts(sig, d, t.gen, rat(1));
            let mut inner = self.bracket(&single, c);
            inner = shift_lambda_to_lambda_plus_mu(&inner);
            let mut prefix_poly = SuperPolynomial::zero(sig);
            prefix_poly.add_term(prefix, rat(1));
            acc.add_assign_scaled(&inner.poly_mul_left(&prefix_poly), ct);
        }
        acc
    }

    /// `[b_λ a] + (−1)^{p(a)p(b)} [a_{−λ−∂} b]`; zero certifies conformal
    /// skew-symmetry for the pair.
    pub fn skew_defect(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        let pa = a.parity(&self.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let pb = b.parity(&self.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let lhs = self.bracket(b, a);
        let mut shifted = self.bracket(a, b);
        for i in 1..=self.sig.n() {
            let repl = SuperPolynomial::parse(self.sig, &format!("-1*l{i} - 1*d{i}"))
                .expect("well formed");
            shifted = shifted.substitute(Symbol::lambda(i), &repl)?;
        }
        let sign = if pa && pb { -1 } else { 1 };
        Ok(lhs.add(&shifted.scale(&rat(sign))))
    }

    /// `[a_λ [b_μ c]] − [[a_λ b]_{λ+μ} c] − (−1)^{p(a)p(b)} [b_μ [a_λ c]]`.
    pub fn jacobi_defect(
        &self,
        a: &Element,
        b: &Element,
        c: &Element,
    ) -> Result<Element, AlgebraError> {
        let pa = a.parity(&self.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let pb = b.parity(&self.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let bc = self.bracket_out(b, c, OutFam::Mu);
        let t1 = self.bracket(a, &bc);
        let ab = self.bracket(a, b);
        let t2 = self.bracket_at_lambda_plus_mu(&ab, c);
        let ac = self.bracket(a, c);
        let t3 = self.bracket_out(b, &ac, OutFam::Mu);
        let sign = if pa && pb { -1 } else { 1 };
        Ok(t1.sub(&t2).sub(&t3.scale(&rat(sign))))
    }

    /// Declarative text format: one `gen` line per generator, then one line
    /// per ordered pair.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gens {
            out.push_str(&format!(
                "gen {} {} {}\n",
                g.name,
                if g.odd { "odd" } else { "even" },
                g.degree
            ));
        }
        for i in 0..self.gens.len() {
            for j in 0..self.gens.len() {
                out.push_str(&format!(
                    "[{},{}] = {}\n",
                    self.gens[i].name,
                    self.gens[j].name,
                    self.entry(i, j).text(&self.gens)
                ));
            }
        }
        out
    }

    pub fn parse(sig: Signature, input: &str) -> Result<GeneratorTable, AlgebraError> {
        let mut gens: Vec<GenInfo> = Vec::new();
        let mut pairs: Vec<(String, String, String)> = Vec::new();
        for line in input.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gen ") {
                let mut it = rest.split_whitespace();
                let name = it.next().ok_or_else(|| AlgebraError::Parse("gen line".into()))?;
                let parity = it.next().ok_or_else(|| AlgebraError::Parse("gen line".into()))?;
                let degree: i64 = it
                    .next()
                    .ok_or_else(|| AlgebraError::Parse("gen line".into()))?
                    .parse()
                    .map_err(|_| AlgebraError::Parse("gen degree".into()))?;
                let odd = match parity {
                    "odd" => true,
                    "even" => false,
                    other => return Err(AlgebraError::Parse(format!("parity `{other}`"))),
                };
                gens.push(GenInfo::new(name, odd, degree));
            } else if let Some(rest) = line.strip_prefix('[') {
                let (head, body) = rest
                    .split_once("] =")
                    .ok_or_else(|| AlgebraError::Parse(format!("bracket line `{line}`")))?;
                let (gi, gj) = head
                    .split_once(',')
                    .ok_or_else(|| AlgebraError::Parse(format!("bracket head `{head}`")))?;
                pairs.push((gi.trim().to_string(), gj.trim().to_string(), body.trim().to_string()));
            } else {
                return Err(AlgebraError::Parse(format!("unrecognized line `{line}`")));
            }
        }
        let n = gens.len();
        let mut entries = vec![Element::zero(sig); n * n];
        for (gi, gj, body) in pairs {
            let i = gens
                .iter()
                .position(|g| g.name == gi)
                .ok_or_else(|| AlgebraError::UnknownGenerator(gi.clone()))?;
            let j = gens
                .iter()
                .position(|g| g.name == gj)
                .ok_or_else(|| AlgebraError::UnknownGenerator(gj.clone()))?;
            entries[i * n + j] = Element::parse(sig, &gens, &body)?;
        }
        GeneratorTable::new(sig, gens, entries)
    }
}

/// Substitutes λ_i ↦ λ_i + μ_i, positionally, for every index.
pub fn shift_lambda_to_lambda_plus_mu(e: &Element) -> Element {
    let sig = e.sig;
    let mut out = e.clone();
    for i in 1..=sig.n() {
        let repl = SuperPolynomial::parse(sig, &format!("1*l{i} + 1*m{i}")).expect("well formed");
        out = out.substitute(Symbol::lambda(i), &repl).expect("parity preserved");
    }
    out
}

impl fmt::Display for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rw::build_rw;

    fn rw44() -> GeneratorTable {
        build_rw(4, 4)
    }

    #[test]
    fn right_multiply_examples() {
        let t = rw44();
        let sig = t.sig;
        let a2 = Element::generator(sig, 1);
        let got = a2.right_mul_symbol(Symbol::partial(5), &t.gens);
        assert_eq!(got.text(&t.gens), "1*d5*a2");
        let a5 = Element::generator(sig, 4);
        let got = a5.right_mul_symbol(Symbol::partial(5), &t.gens);
        assert_eq!(got.text(&t.gens), "-1*d5*a5");
        // (1, λ5, a1) · λ6: λ6 passes the even generator a1 with no sign and
        // sorts after λ5.
        let e = Element::parse(sig, &t.gens, "1*l5*a1").unwrap();
        let got = e.right_mul_symbol(Symbol::lambda(6), &t.gens);
        assert_eq!(got.text(&t.gens), "1*l5*l6*a1");
    }

    #[test]
    fn bracket_with_left_partial() {
        let t = rw44();
        let sig = t.sig;
        let d1a1 = Element::parse(sig, &t.gens, "1*d1*a1").unwrap();
        let a2 = Element::generator(sig, 1);
        let got = t.bracket(&d1a1, &a2);
        let want = Element::parse(sig, &t.gens, "-1*l1*d1*a2 - 1*l1*l1*a2 - 1*l1*l2*a1").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_zero_slot() {
        let t = rw44();
        let z = Element::zero(t.sig);
        let a1 = t.generator(0);
        assert!(t.bracket(&z, &a1).is_zero());
        assert!(t.bracket(&a1, &z).is_zero());
    }

    #[test]
    fn bracket_both_slots_with_partials_matches_term_expansion() {
        // [(∂5 a1)_λ (∂5 a2)] must equal −λ5 ([a1_λ a2](∂5+λ5)) with the sign
        // of rewriting ∂5 a2 = a2 ∂5 (a2 even).
        let t = rw44();
        let sig = t.sig;
        let lhs = t.bracket(
            &Element::parse(sig, &t.gens, "1*d5*a1").unwrap(),
            &Element::parse(sig, &t.gens, "1*d5*a2").unwrap(),
        );
        let core = t.bracket(&t.generator(0), &t.generator(1));
        let rm = core
            .right_mul_symbol(Symbol::partial(5), &t.gens)
            .add(&core.right_mul_symbol(Symbol::lambda(5), &t.gens));
        let want = rm.poly_mul_left(&SuperPolynomial::parse(sig, "-1*l5").unwrap());
        assert_eq!(lhs, want);
    }

    #[test]
    fn degree_examples() {
        let t = rw44();
        let a1 = t.generator(0);
        assert_eq!(a1.degree(&t.gens), DegreeQ::Homogeneous(-2));
        let d1a1 = Element::parse(t.sig, &t.gens, "1*d1*a1").unwrap();
        assert_eq!(d1a1.degree(&t.gens), DegreeQ::Homogeneous(-4));
        let mix = a1.add(&d1a1);
        assert_eq!(mix.degree(&t.gens), DegreeQ::Inhomogeneous);
    }

    #[test]
    fn skew_defect_vanishes_on_sample_pairs() {
        let t = rw44();
        for (i, j) in [(0usize, 0usize), (4, 4), (0, 4), (4, 6), (2, 3)] {
            let d = t.skew_defect(&t.generator(i), &t.generator(j)).unwrap();
            assert!(d.is_zero(), "skew defect ({i},{j}) = {}", d.text(&t.gens));
        }
    }

    #[test]
    fn jacobi_defect_vanishes_on_sample_triples() {
        let t = rw44();
        for (i, j, k) in [
            (0usize, 1usize, 2usize),
            (4, 4, 4),
            (0, 4, 5),
            (4, 5, 6),
            (3, 4, 0),
        ] {
            let d = t
                .jacobi_defect(&t.generator(i), &t.generator(j), &t.generator(k))
                .unwrap();
            assert!(d.is_zero(), "jacobi defect ({i},{j},{k}) = {}", d.text(&t.gens));
        }
    }

    #[test]
    fn sesquilinearity_left_rule_holds() {
        let t = rw44();
        let sig = t.sig;
        for i in 1..=8u8 {
            let a = Element::parse(sig, &t.gens, "1*d2*a3").unwrap();
            let da = a.front_mul_symbol(Symbol::partial(i));
            let b = Element::parse(sig, &t.gens, "1*d5*a6").unwrap();
            let lhs = t.bracket(&da, &b);
            let rhs = t
                .bracket(&a, &b)
                .poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::lambda(i)))
                .neg();
            assert_eq!(lhs, rhs, "index {i}");
        }
    }

    #[test]
    fn table_text_round_trip() {
        let t = rw44();
        let text = t.to_text();
        let back = GeneratorTable::parse(t.sig, &text).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn lambda_plus_mu_shift_is_positional() {
        let t = rw44();
        let sig = t.sig;
        let e = Element::parse(sig, &t.gens, "1*l5*l6*a1").unwrap();
        let got = shift_lambda_to_lambda_plus_mu(&e);
        let want = Element::parse(
            sig,
            &t.gens,
            "1*l5*l6*a1 + 1*l5*m6*a1 - 1*l6*m5*a1 + 1*m5*m6*a1",
        )
        .unwrap();
        assert_eq!(got, want);
    }
}
