//! Finite-rank conformal modules, the conformal dual, and the dictionary
//! between conformal modules and truncated continuous modules over the
//! annihilation algebra.
//!
//! A module is a generator list plus an action table `a_λ(m)`; the engine
//! extends it with the module axiom
//! `a_λ(∂_i v) = (−1)^{p_i p(a)} (∂_i + λ_i)(a_λ v)` (front multiplication),
//! sharing the prefix conventions of the bracket engine. Dual elements are
//! value tables `f_ν(m_j)`; the dual action is
//! `(a_λ f)_ν(m) = −(−1)^{p(a)p(f)} f_{ν−λ}(a_λ m)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::conformal::{extend_bilinear, Element, GenInfo, GeneratorTable, OutFam, RightRule};
use crate::error::AlgebraError;
use crate::rational::{rat, Rational};
use crate::superpoly::{Family, Signature, SuperMonomial, SuperPolynomial, Symbol};

/// Finite generator list with an action table over a fixed algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConformalModule {
    pub sig: Signature,
    pub gens: Vec<GenInfo>,
    /// `action[i][j] = g_i λ-acting on m_j`, an element over the module
    /// generators.
    pub action: Vec<Vec<Element>>,
}

impl ConformalModule {
    /// The adjoint module: module generators are the algebra generators and
    /// the action table is the bracket table.
    pub fn adjoint(alg: &GeneratorTable) -> Self {
        let n = alg.gens.len();
        let action = (0..n)
            .map(|i| (0..n).map(|j| alg.entry(i, j).clone()).collect())
            .collect();
        ConformalModule { sig: alg.sig, gens: alg.gens.clone(), action }
    }

    /// Rank-1 module over a one-generator type-(1,0) algebra with
    /// `a_λ m = (∂ + cλ) m`.
    pub fn rank1(alg: &GeneratorTable, c: Rational, odd: bool) -> Self {
        assert_eq!(alg.gens.len(), 1);
        let sig = alg.sig;
        let mut act = Element::zero(sig);
        act.add_term(SuperMonomial::from_symbol(&sig, Symbol::partial(1)), 0, rat(1));
        act.add_term(SuperMonomial::from_symbol(&sig, Symbol::lambda(1)), 0, c);
        ConformalModule {
            sig,
            gens: vec![GenInfo::new("v", odd, 0)],
            action: vec![vec![act]],
        }
    }

    /// Direct sum of a rank-1 module and its parity shift, for morphism
    /// tests: generators `v` (even) and `w` (odd) with the same weight.
    pub fn rank1_with_shift(alg: &GeneratorTable, c: Rational) -> Self {
        assert_eq!(alg.gens.len(), 1);
        let sig = alg.sig;
        let entry = |g: u8| {
            let mut act = Element::zero(sig);
            act.add_term(SuperMonomial::from_symbol(&sig, Symbol::partial(1)), g, rat(1));
            act.add_term(SuperMonomial::from_symbol(&sig, Symbol::lambda(1)), g, c.clone());
            act
        };
        ConformalModule {
            sig,
            gens: vec![GenInfo::new("v", false, 0), GenInfo::new("w", true, 0)],
            action: vec![vec![entry(0), entry(1)]],
        }
    }

    pub fn generator(&self, j: usize) -> Element {
        Element::generator(self.sig, j as u8)
    }

    /// `a_λ(v)` (or `a_μ(v)`) extended from the table.
    pub fn act(&self, alg: &GeneratorTable, a: &Element, v: &Element, out: OutFam) -> Element {
        extend_bilinear(
            self.sig,
            a,
            &alg.gens,
            v,
            &self.gens,
            &mut |i, j| self.action[i as usize][j as usize].clone(),
            &self.gens,
            out,
            RightRule::Module,
        )
    }

    /// `(X)_{λ+μ}(v)` for a λ-element X of the algebra: λ-prefixes pass out
    /// untouched, the ∂-core acts in λ and is then shifted λ ↦ λ+μ.
    pub fn act_at_lambda_plus_mu(
        &self,
        alg: &GeneratorTable,
        x: &Element,
        v: &Element,
    ) -> Element {
        let sig = self.sig;
        let mut acc = Element::zero(sig);
        for (t, ct) in x.terms() {
            let (prefix, d) = t
                .mono
                .split(&sig, |f| f == Family::Lambda || f == Family::Mu || f == Family::Nu);
            let single = Element::from_parts(sig, d, t.gen, rat(1));
            let inner = self.act(alg, &single, v, OutFam::Lambda);
            let shifted = crate::conformal::shift_lambda_to_lambda_plus_mu(&inner);
            let mut prefix_poly = SuperPolynomial::zero(sig);
            prefix_poly.add_term(prefix, rat(1));
            acc.add_assign_scaled(&shifted.poly_mul_left(&prefix_poly), ct);
        }
        acc
    }

    /// The declarative text format shared with generator tables: `gen` lines
    /// for the module generators, then one action line per (algebra gen,
    /// module gen) pair.
    pub fn to_text(&self, alg: &GeneratorTable) -> String {
        let mut out = String::new();
        for g in &self.gens {
            out.push_str(&format!(
                "gen {} {} {}\n",
                g.name,
                if g.odd { "odd" } else { "even" },
                g.degree
            ));
        }
        for (i, arow) in self.action.iter().enumerate() {
            for (j, entry) in arow.iter().enumerate() {
                out.push_str(&format!(
                    "[{},{}] = {}\n",
                    alg.gens[i].name,
                    self.gens[j].name,
                    entry.text(&self.gens)
                ));
            }
        }
        out
    }

    pub fn parse(
        alg: &GeneratorTable,
        input: &str,
    ) -> Result<ConformalModule, AlgebraError> {
        let sig = alg.sig;
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
                    .ok_or_else(|| AlgebraError::Parse(format!("action line `{line}`")))?;
                let (gi, gj) = head
                    .split_once(',')
                    .ok_or_else(|| AlgebraError::Parse(format!("action head `{head}`")))?;
                pairs.push((gi.trim().to_string(), gj.trim().to_string(), body.trim().to_string()));
            } else {
                return Err(AlgebraError::Parse(format!("unrecognized line `{line}`")));
            }
        }
        let mut action =
            vec![vec![Element::zero(sig); gens.len()]; alg.gens.len()];
        for (gi, gj, body) in pairs {
            let i = alg.gen_index(&gi)?;
            let j = gens
                .iter()
                .position(|g| g.name == gj)
                .ok_or_else(|| AlgebraError::UnknownGenerator(gj.clone()))?;
            action[i][j] = Element::parse(sig, &gens, &body)?;
        }
        Ok(ConformalModule { sig, gens, action })
    }

    /// (M1) cross-check: `a_λ(∂_i v)` against
    /// `(−1)^{p_i p(a)} (∂_i(a_λ v) + λ_i(a_λ v))`.
    pub fn m1_defect(
        &self,
        alg: &GeneratorTable,
        a: &Element,
        i: u8,
        v: &Element,
    ) -> Result<Element, AlgebraError> {
        let pa = a.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let lhs = self.act(alg, a, &v.front_mul_symbol(Symbol::partial(i)), OutFam::Lambda);
        let av = self.act(alg, a, v, OutFam::Lambda);
        let mut rhs = av.front_mul_symbol(Symbol::partial(i));
        rhs.add_assign(&av.front_mul_symbol(Symbol::lambda(i)));
        let sign = if self.sig.odd_index(i) && pa { -1 } else { 1 };
        Ok(lhs.sub(&rhs.scale(&rat(sign))))
    }

    /// (M2) defect `a_λ(b_μ v) − (−1)^{p(a)p(b)} b_μ(a_λ v) − (a_λ b)_{λ+μ} v`.
    pub fn m2_defect(
        &self,
        alg: &GeneratorTable,
        a: &Element,
        b: &Element,
        v: &Element,
    ) -> Result<Element, AlgebraError> {
        let pa = a.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let pb = b.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let t1 = self.act(alg, a, &self.act(alg, b, v, OutFam::Mu), OutFam::Lambda);
        let t3 = self.act(alg, b, &self.act(alg, a, v, OutFam::Lambda), OutFam::Mu);
        let t2 = self.act_at_lambda_plus_mu(alg, &alg.bracket(a, b), v);
        let sign = if pa && pb { -1 } else { 1 };
        Ok(t1.sub(&t3.scale(&rat(sign))).sub(&t2))
    }
}

/// Dual element: the value table `f_ν(m_j)`. Values of base functionals live
/// in F[ν]; action parameters add λ and μ content.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualElement {
    pub odd: bool,
    pub values: Vec<SuperPolynomial>,
}

impl DualElement {
    pub fn zero(sig: Signature, rank: usize, odd: bool) -> Self {
        DualElement { odd, values: vec![SuperPolynomial::zero(sig); rank] }
    }

    /// The dual basis functional `f^k` with `f^k_ν(m_j) = δ_{kj}` and the
    /// parity of `m_k`.
    pub fn dual_basis(m: &ConformalModule, k: usize) -> Self {
        let mut values = vec![SuperPolynomial::zero(m.sig); m.gens.len()];
        values[k] = SuperPolynomial::one(m.sig);
        DualElement { odd: m.gens[k].odd, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> DualElement {
        DualElement {
            odd: self.odd,
            values: self.values.iter().map(|p| p.scale(k)).collect(),
        }
    }

    pub fn sub(&self, other: &DualElement) -> DualElement {
        DualElement {
            odd: self.odd,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// The ∂-action `(∂_i f)_ν(m) = −ν_i f_ν(m)`, with ν_i inserted after
    /// any λ/μ prefix of the value.
    pub fn partial_action(&self, sig: Signature, i: u8) -> DualElement {
        let nu = SuperMonomial::from_symbol(&sig, Symbol::nu(i));
        let values = self
            .values
            .iter()
            .map(|p| {
                let mut out = SuperPolynomial::zero(sig);
                for (m, c) in p.terms() {
                    let (prefix, rest) =
                        m.split(&sig, |f| f == Family::Lambda || f == Family::Mu);
                    if let Some((pn, s1)) = prefix.mul(&nu) {
                        if let Some((full, s2)) = pn.mul(&rest) {
                            out.add_term(full, -c.clone() * rat((s1 * s2) as i128));
                        }
                    }
                }
                out
            })
            .collect();
        DualElement { odd: self.odd, values }
    }
}

/// Evaluates a functional on a module element:
/// `f_ν(P · ∂_D · m_j) = (−1)^{p(P)p(f)} P · Π(±ν) · f_ν(m_j)` with the
/// ∂-peel rule `f_ν(∂_i m) = (−1)^{p_i p(f)} ν_i f_ν(m)` applied outermost
/// first.
pub fn dual_eval(m: &ConformalModule, f: &DualElement, x: &Element) -> SuperPolynomial {
    let sig = m.sig;
    let mut out = SuperPolynomial::zero(sig);
    for (t, c) in x.terms() {
        let (prefix, d) = t
            .mono
            .split(&sig, |fam| fam == Family::Lambda || fam == Family::Mu);
        debug_assert_eq!(d.degree_in(&sig, Family::Nu), 0, "module elements are ν-free");
        let sign_p = if prefix.parity() && f.odd { -1i64 } else { 1 };
        let mut nu_word = SuperMonomial::one();
        let mut sign_d = 1i64;
        for sym in d.word(&sig) {
            if sym.is_odd(&sig) && f.odd {
                sign_d = -sign_d;
            }
            let (w, s) = nu_word
                .mul(&SuperMonomial::from_symbol(&sig, Symbol::nu(sym.index)))
                .expect("module ∂-words have no repeated odd symbols");
            sign_d *= s;
            nu_word = w;
        }
        let mut head = SuperPolynomial::zero(sig);
        if let Some((pm, s)) = prefix.mul(&nu_word) {
            head.add_term(pm, rat((sign_p * sign_d * s) as i128));
        } else {
            continue;
        }
        out.add_assign_scaled(&head.mul(&f.values[t.gen as usize]), c);
    }
    out
}

fn shift_param(sig: Signature, p: &SuperPolynomial, from: Family, minus: Family) -> SuperPolynomial {
    // ν_i ↦ ν_i − λ_i (or ν_i − μ_i), positionally.
    let mut out = p.clone();
    for i in 1..=sig.n() {
        let target = Symbol::new(from, i);
        let mut repl = SuperPolynomial::symbol(sig, target);
        repl.add_assign_scaled(&SuperPolynomial::symbol(sig, Symbol::new(minus, i)), &rat(-1));
        out = out.substitute(target, &repl).expect("parity preserved");
    }
    out
}

/// The dual λ-action `(a_λ f)_ν(m) = −(−1)^{p(a)p(f)} f_{ν−λ}(a_λ m)`,
/// assembled per term of `a` with the left sesquilinearity rule for ∂'s.
pub fn dual_action(
    alg: &GeneratorTable,
    m: &ConformalModule,
    a: &Element,
    f: &DualElement,
    out: OutFam,
) -> DualElement {
    let sig = m.sig;
    let out_fam = match out {
        OutFam::Lambda => Family::Lambda,
        OutFam::Mu => Family::Mu,
    };
    let pa = a.parity(&alg.gens).expect("homogeneous action element");
    let mut result = DualElement::zero(sig, m.gens.len(), pa ^ f.odd);
    for (t, c) in a.terms() {
        let (prefix, d) = t
            .mono
            .split(&sig, |fam| fam == Family::Lambda || fam == Family::Mu || fam == Family::Nu);
        // left ∂'s: each gives a −λ_i (or −μ_i) prefix on the values
        let mut lam_prefix = SuperMonomial::one();
        let mut sign_left = 1i64;
        for sym in d.word(&sig) {
            sign_left = -sign_left;
            let (w, s) = lam_prefix
                .mul(&SuperMonomial::from_symbol(&sig, Symbol::new(out_fam, sym.index)))
                .expect("ascending");
            sign_left *= s;
            lam_prefix = w;
        }
        let g_odd = alg.gens[t.gen as usize].odd;
        let core_sign = if g_odd && f.odd { 1i64 } else { -1 };
        for j in 0..m.gens.len() {
            let mut entry = m.action[t.gen as usize][j].clone();
            if out == OutFam::Mu {
                entry = entry.rename_lambda_to_mu();
            }
            let raw = dual_eval(m, f, &entry);
            let shifted = shift_param(sig, &raw, Family::Nu, out_fam);
            let mut head = SuperPolynomial::zero(sig);
            if let Some((pm, s)) = prefix.mul(&lam_prefix) {
                head.add_term(pm, rat((sign_left * core_sign * s) as i128));
            } else {
                continue;
            }
            result.values[j].add_assign_scaled(&head.mul(&shifted), c);
        }
    }
    result
}

/// `(X)_{λ+μ} f` for a λ-element X: prefixes pass out, the core acts in λ
/// and the values are then shifted λ ↦ λ+μ.
pub fn dual_action_at_lambda_plus_mu(
    alg: &GeneratorTable,
    m: &ConformalModule,
    x: &Element,
    f: &DualElement,
) -> DualElement {
    let sig = m.sig;
    let px = x.parity(&alg.gens).expect("homogeneous");
    let mut result = DualElement::zero(sig, m.gens.len(), px ^ f.odd);
    for (t, c) in x.terms() {
        let (prefix, d) = t
            .mono
            .split(&sig, |fam| fam == Family::Lambda || fam == Family::Mu || fam == Family::Nu);
        let single = Element::from_parts(sig, d, t.gen, rat(1));
        let inner = dual_action(alg, m, &single, f, OutFam::Lambda);
        let mut prefix_poly = SuperPolynomial::zero(sig);
        prefix_poly.add_term(prefix, rat(1));
        for j in 0..m.gens.len() {
            let mut v = inner.values[j].clone();
            for i in 1..=sig.n() {
                let repl = SuperPolynomial::parse(sig, &format!("1*l{i} + 1*m{i}"))
                    .expect("well formed");
                v = v.substitute(Symbol::lambda(i), &repl).expect("parity preserved");
            }
            result.values[j].add_assign_scaled(&prefix_poly.mul(&v), c);
        }
    }
    result
}

/// (M2) defect on the dual module, as a value table.
pub fn dual_m2_defect(
    alg: &GeneratorTable,
    m: &ConformalModule,
    a: &Element,
    b: &Element,
    f: &DualElement,
) -> Result<DualElement, AlgebraError> {
    let pa = a.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
    let pb = b.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
    let t1 = dual_action(alg, m, a, &dual_action(alg, m, b, f, OutFam::Mu), OutFam::Lambda);
    let t3 = dual_action(alg, m, b, &dual_action(alg, m, a, f, OutFam::Lambda), OutFam::Mu);
    let t2 = dual_action_at_lambda_plus_mu(alg, m, &alg.bracket(a, b), f);
    let sign = if pa && pb { rat(-1) } else { rat(1) };
    Ok(t1.sub(&t3.scale(&sign)).sub(&t2))
}

/// (M1) cross-check on the dual: `a_λ(∂_i f)` against
/// `(−1)^{p_i p(a)} (∂_i + λ_i)(a_λ f)` with the functional ∂-action.
pub fn dual_m1_defect(
    alg: &GeneratorTable,
    m: &ConformalModule,
    a: &Element,
    i: u8,
    f: &DualElement,
) -> Result<DualElement, AlgebraError> {
    let sig = m.sig;
    let pa = a.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
    let lhs = dual_action(alg, m, a, &f.partial_action(sig, i), OutFam::Lambda);
    let af = dual_action(alg, m, a, f, OutFam::Lambda);
    let mut rhs = af.partial_action(sig, i);
    let li = SuperPolynomial::symbol(sig, Symbol::lambda(i));
    for j in 0..m.gens.len() {
        rhs.values[j].add_assign(&li.mul(&af.values[j]));
    }
    let sign = if sig.odd_index(i) && pa { rat(-1) } else { rat(1) };
    Ok(lhs.sub(&rhs.scale(&sign)))
}

/// Module morphism as an F[∂]-matrix with a parity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub odd: bool,
    /// `mat[k][j]`: coefficient of target generator k in T(m_j).
    pub mat: Vec<Vec<SuperPolynomial>>,
}

impl Morphism {
    pub fn identity(m: &ConformalModule) -> Self {
        let n = m.gens.len();
        let mat = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        if k == j {
                            SuperPolynomial::one(m.sig)
                        } else {
                            SuperPolynomial::zero(m.sig)
                        }
                    })
                    .collect()
            })
            .collect();
        Morphism { odd: false, mat }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|row| row.iter().all(|p| p.is_zero()))
    }

    /// `T(x)` with `T(P(∂) m_j) = (−1)^{p(P) p(T)} P(∂) T(m_j)`.
    pub fn apply(&self, x: &Element) -> Element {
        let sig = x.sig;
        let mut out = Element::zero(sig);
        for (t, c) in x.terms() {
            let sign = if t.mono.parity() && self.odd { rat(-1) } else { rat(1) };
            let mut mono_poly = SuperPolynomial::zero(sig);
            mono_poly.add_term(t.mono.clone(), rat(1));
            for (k, row_entry) in self.mat.iter().map(|row| &row[t.gen as usize]).enumerate() {
                if row_entry.is_zero() {
                    continue;
                }
                let prod = mono_poly.mul(row_entry);
                for (mm, cc) in prod.terms() {
                    out.add_term(mm.clone(), k as u8, c.clone() * cc.clone() * sign.clone());
                }
            }
        }
        out
    }

    /// `S ∘ T`, with the Koszul sign of S passing T's coefficients.
    pub fn compose(s: &Morphism, t: &Morphism) -> Morphism {
        let sig_cols = t.mat[0].len();
        let rows = s.mat.len();
        let inner = t.mat.len();
        let sig = t.mat[0][0].sig;
        let mut mat =
            vec![vec![SuperPolynomial::zero(sig); sig_cols]; rows];
        for l in 0..rows {
            for j in 0..sig_cols {
                let mut acc = SuperPolynomial::zero(sig);
                for k in 0..inner {
                    let p = &t.mat[k][j];
                    if p.is_zero() || s.mat[l][k].is_zero() {
                        continue;
                    }
                    // S passes P_kj
                    for (mono, c) in p.terms() {
                        let sign = if mono.parity() && s.odd { rat(-1) } else { rat(1) };
                        let mut mp = SuperPolynomial::zero(sig);
                        mp.add_term(mono.clone(), c.clone() * sign);
                        acc.add_assign(&mp.mul(&s.mat[l][k]));
                    }
                }
                mat[l][j] = acc;
            }
        }
        Morphism { odd: s.odd ^ t.odd, mat }
    }

    /// Defect of morphism condition (2) on a generator pair:
    /// `T(a_λ m_j) − (−1)^{p(a)p(T)} a_λ T(m_j)`.
    pub fn condition2_defect(
        &self,
        alg: &GeneratorTable,
        src: &ConformalModule,
        dst: &ConformalModule,
        a: &Element,
        j: usize,
    ) -> Result<Element, AlgebraError> {
        let pa = a.parity(&alg.gens).ok_or(AlgebraError::Inhomogeneous)?;
        let lhs = self.apply(&src.act(alg, a, &src.generator(j), OutFam::Lambda));
        let rhs = dst.act(alg, a, &self.apply(&src.generator(j)), OutFam::Lambda);
        let sign = if pa && self.odd { -1 } else { 1 };
        Ok(lhs.sub(&rhs.scale(&rat(sign))))
    }
}

/// `T∨(f)` for `T: M → N` and `f ∈ N∨`:
/// `(T∨ f)_ν(m_j) = (−1)^{p(T)p(f)} f_ν(T(m_j))`.
pub fn dual_morphism(
    t: &Morphism,
    src: &ConformalModule,
    dst: &ConformalModule,
    f: &DualElement,
) -> DualElement {
    let sign = if t.odd && f.odd { rat(-1) } else { rat(1) };
    let values = (0..src.gens.len())
        .map(|j| dual_eval(dst, f, &t.apply(&src.generator(j))).scale(&sign))
        .collect();
    DualElement { odd: t.odd ^ f.odd, values }
}

/// A truncated continuous action: `(y_K a).v` as coefficient vectors over a
/// finite basis, zero beyond the truncation window.
#[derive(Clone, Debug)]
pub struct TruncatedAction {
    pub sig: Signature,
    pub trunc: u32,
    pub basis: Vec<GenInfo>,
    /// (K, algebra generator, basis index) → coefficients over the basis.
    pub data: BTreeMap<(SuperMonomial, usize, usize), Vec<Rational>>,
}

impl TruncatedAction {
    /// Rejects data with nonzero action beyond the truncation window.
    pub fn new(
        sig: Signature,
        trunc: u32,
        basis: Vec<GenInfo>,
        data: BTreeMap<(SuperMonomial, usize, usize), Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        for ((k, _, _), coeffs) in &data {
            if k.total_degree() > trunc && coeffs.iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::ContinuityViolated);
            }
        }
        Ok(TruncatedAction { sig, trunc, basis, data })
    }

    fn lookup(&self, k: &SuperMonomial, gen: usize, v: usize) -> Vec<Rational> {
        self.data
            .get(&(k.clone(), gen, v))
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); self.basis.len()])
    }
}

/// Sign and normalization of the reversed monomial: `λ_{K̄} = sign · λ_K`
/// with sign `(−1)^{t(t−1)/2}` for t odd entries, and `f(K) = Π m_i(K)!`.
fn reversal_sign_and_factorial(sig: &Signature, k: &SuperMonomial) -> (i64, Rational) {
    let t = k
        .word(sig)
        .iter()
        .filter(|s| s.is_odd(sig))
        .count() as u32;
    let sign = if (t * t.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let mut f = rat(1);
    for i in 1..=sig.n() {
        let e = k.exponent(sig, Symbol::y(i)) as i128;
        let mut fact = 1i128;
        for x in 1..=e {
            fact *= x;
        }
        f = f * rat(fact);
    }
    (sign, f)
}

/// Assembles the conformal λ-action
/// `a_λ v = Σ_K (−1)^{p_K} (λ_{K̄} / f(K)) (y_K a).v`
/// from a truncated continuous action. The result is an element over the
/// module basis with λ-monomial prefixes.
pub fn modcorr_assemble(act: &TruncatedAction, alg_gen: usize, v: usize) -> Element {
    let sig = act.sig;
    let mut out = Element::zero(sig);
    for k_mono in crate::geometry::y_monomials(sig, act.trunc) {
        let coeffs = act.lookup(&k_mono, alg_gen, v);
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let (rev_sign, f_k) = reversal_sign_and_factorial(&sig, &k_mono);
        let p_k = if k_mono.parity() { -1i64 } else { 1 };
        // λ_K as a monomial in the λ family
        let mut lam = SuperMonomial::one();
        for sym in k_mono.word(&sig) {
            let (m, s) = lam
                .mul(&SuperMonomial::from_symbol(&sig, Symbol::lambda(sym.index)))
                .expect("ascending");
            debug_assert_eq!(s, 1);
            lam = m;
        }
        let scale = rat((p_k * rev_sign) as i128) / f_k;
        for (b, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(lam.clone(), b as u8, c.clone() * scale.clone());
            }
        }
    }
    out
}

/// Reads the continuous action back off an assembled λ-action.
pub fn modcorr_extract(
    act_template: &TruncatedAction,
    assembled: &Element,
    alg_gen: usize,
    v: usize,
) -> BTreeMap<(SuperMonomial, usize, usize), Vec<Rational>> {
    let sig = act_template.sig;
    let mut out = BTreeMap::new();
    for k_mono in crate::geometry::y_monomials(sig, act_template.trunc) {
        let (rev_sign, f_k) = reversal_sign_and_factorial(&sig, &k_mono);
        let p_k = if k_mono.parity() { -1i64 } else { 1 };
        let mut lam = SuperMonomial::one();
        for sym in k_mono.word(&sig) {
            lam = lam
                .mul(&SuperMonomial::from_symbol(&sig, Symbol::lambda(sym.index)))
                .expect("ascending")
                .0;
        }
        let mut coeffs = vec![Rational::zero(); act_template.basis.len()];
        let mut any = false;
        for (b, c) in coeffs.iter_mut().enumerate() {
            let got = assembled.coeff(&lam, b as u8);
            if !got.is_zero() {
                *c = got * f_k.clone() * rat((p_k * rev_sign) as i128);
                any = true;
            }
        }
        if any {
            out.insert((k_mono, alg_gen, v), coeffs);
        }
    }
    out
}
