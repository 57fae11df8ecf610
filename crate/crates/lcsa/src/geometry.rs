//! Polynomial superderivations for W(4,4) and the vector-field ⊕ one-form
//! model of E(4,4).
//!
//! W(r,s) acts on polynomial superfunctions in y₁…y_{r+s}. E(4,4) has even
//! part the vector fields on four even variables and odd part the one-forms,
//! with
//!
//! ```text
//! [X, ω]   = L_X(ω) − ½ div(X) ω,
//! [ω₁, ω₂] = dω₁ ∧ ω₂ + ω₁ ∧ dω₂,
//! ```
//!
//! three-forms identified with vector fields by contraction against
//! dx₁∧dx₂∧dx₃∧dx₄. The embedding Φ: E(4,4) → W(4,4) is given by explicit
//! first/second/third-derivative correction tables β₁, β₂, β₃, γ₁, γ₂.

use std::collections::BTreeMap;

use crate::conformal::Element;
use crate::rational::{rat, ratio, Rational};
use crate::re44::{epsilon4, epsilon_complement, Re44};
use crate::superpoly::{Family, ParityQ, Signature, SuperMonomial, SuperPolynomial, Symbol};

/// Superderivation Σ f_k ∂_{y_k} with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    pub sig: Signature,
    pub coeffs: Vec<SuperPolynomial>,
}

impl VectorField {
    pub fn zero(sig: Signature) -> Self {
        VectorField {
            sig,
            coeffs: vec![SuperPolynomial::zero(sig); sig.n() as usize],
        }
    }

    pub fn unit(sig: Signature, dir: u8) -> Self {
        let mut v = Self::zero(sig);
        v.coeffs[(dir - 1) as usize] = SuperPolynomial::one(sig);
        v
    }

    pub fn monomial(sig: Signature, mono: &SuperMonomial, dir: u8) -> Self {
        let mut v = Self::zero(sig);
        v.coeffs[(dir - 1) as usize].add_term(mono.clone(), rat(1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add_assign_scaled(&mut self, other: &VectorField, k: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_scaled(b, k);
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut v = self.clone();
        v.add_assign_scaled(other, &rat(1));
        v
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let mut v = self.clone();
        v.add_assign_scaled(other, &rat(-1));
        v
    }

    pub fn scale(&self, k: &Rational) -> VectorField {
        VectorField {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn poly_mul(&self, p: &SuperPolynomial) -> VectorField {
        VectorField {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| p.mul(c)).collect(),
        }
    }

    /// Applies the derivation to a superfunction: Σ f_k ∂_{y_k}(g), the
    /// derivative taken as a signed left derivative.
    pub fn apply(&self, g: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.sig);
        for (k, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let d = g.derivative(Symbol::y(k as u8 + 1));
            out.add_assign(&f.mul(&d));
        }
        out
    }

    /// Splits into (even, odd) derivation parts; the parity of `f ∂_{y_k}`
    /// is `p(f) + p_k`.
    pub fn parity_split(&self) -> (VectorField, VectorField) {
        let mut even = VectorField::zero(self.sig);
        let mut odd = VectorField::zero(self.sig);
        for (k, f) in self.coeffs.iter().enumerate() {
            let dir_odd = self.sig.odd_index(k as u8 + 1);
            for (m, c) in f.terms() {
                let p = m.parity() ^ dir_odd;
                let target = if p { &mut odd } else { &mut even };
                target.coeffs[k].add_term(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    pub fn parity(&self) -> ParityQ {
        let (even, odd) = self.parity_split();
        match (even.is_zero(), odd.is_zero()) {
            (true, true) => ParityQ::Zero,
            (false, true) => ParityQ::Homogeneous(false),
            (true, false) => ParityQ::Homogeneous(true),
            (false, false) => ParityQ::Mixed,
        }
    }

    /// Principal degree with deg y_k = 1, deg ∂_{y_k} = −1; `None` when
    /// inhomogeneous, `Some(0)` for the zero field.
    pub fn principal_degree(&self) -> Option<i64> {
        let mut seen: Option<i64> = None;
        for f in self.coeffs.iter() {
            for (m, _) in f.terms() {
                let d = m.total_degree() as i64 - 1;
                match seen {
                    None => seen = Some(d),
                    Some(q) if q == d => {}
                    Some(_) => return None,
                }
            }
        }
        Some(seen.unwrap_or(0))
    }

    pub fn text(&self) -> String {
        let mut parts = Vec::new();
        for (k, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                parts.push(format!("({})*dy{}", f.text(), k + 1));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Supercommutator of derivations, computed coordinate-wise:
/// `[X,Y](y_m) = X(Y(y_m)) − (−1)^{p(X)p(Y)} Y(X(y_m))`.
pub fn vf_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let sig = x.sig;
    let mut out = VectorField::zero(sig);
    let (xe, xo) = x.parity_split();
    let (ye, yo) = y.parity_split();
    for (xp, x_odd) in [(&xe, false), (&xo, true)] {
        if xp.is_zero() {
            continue;
        }
        for (yp, y_odd) in [(&ye, false), (&yo, true)] {
            if yp.is_zero() {
                continue;
            }
            let sign = if x_odd && y_odd { rat(-1) } else { rat(1) };
            for m in 0..sig.n() as usize {
                let mut h = xp.apply(&yp.coeffs[m]);
                h.add_assign_scaled(&yp.apply(&xp.coeffs[m]), &-sign.clone());
                out.coeffs[m].add_assign(&h);
            }
        }
    }
    out
}

/// Differential form over the even variables x₁…x₄ with antisymmetric index
/// sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    pub sig: Signature,
    pub degree: u8,
    comps: BTreeMap<Vec<u8>, SuperPolynomial>,
}

impl Form {
    pub fn new(sig: Signature, degree: u8) -> Self {
        Form { sig, degree, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    /// Adds `p · dx_{i₀} ∧ … ∧ dx_{i_{k−1}}`, sorting indices with the
    /// permutation sign; repeated indices contribute zero.
    pub fn add_component(&mut self, idx: &[u8], p: &SuperPolynomial) {
        debug_assert_eq!(idx.len(), self.degree as usize);
        let mut sorted: Vec<u8> = idx.to_vec();
        let mut sign = 1i128;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        self.comps
            .entry(sorted)
            .or_insert_with(|| SuperPolynomial::zero(self.sig))
            .add_assign_scaled(p, &rat(sign));
    }

    pub fn component(&self, idx: &[u8]) -> SuperPolynomial {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| SuperPolynomial::zero(self.sig))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &SuperPolynomial)> {
        self.comps.iter().filter(|(_, p)| !p.is_zero())
    }

    /// d(p dx_I) = Σ_j (∂p/∂x_j) dx_j ∧ dx_I.
    pub fn d(&self) -> Form {
        let mut out = Form::new(self.sig, self.degree + 1);
        for (idx, p) in self.components() {
            for j in 1..=4u8 {
                let dp = p.derivative(Symbol::y(j));
                if dp.is_zero() {
                    continue;
                }
                let mut widx = vec![j];
                widx.extend_from_slice(idx);
                out.add_component(&widx, &dp);
            }
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::new(self.sig, self.degree + other.degree);
        for (i1, p1) in self.components() {
            for (i2, p2) in other.components() {
                let prod = p1.mul(p2);
                if prod.is_zero() {
                    continue;
                }
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                out.add_component(&idx, &prod);
            }
        }
        out
    }

    fn plus(mut self, other: &Form) -> Form {
        debug_assert_eq!(self.degree, other.degree);
        for (idx, p) in other.components() {
            self.add_component(idx, p);
        }
        self
    }

    /// Solves ι_X(dx₁∧dx₂∧dx₃∧dx₄) = (this three-form): the component at
    /// dx_I with I omitting k feeds ∂_{x_k} with the sign (−1)^{k−1} of
    /// ι_{∂_k}(volume).
    pub fn contract_with_volume(&self) -> Vec<SuperPolynomial> {
        debug_assert_eq!(self.degree, 3);
        let mut out = vec![SuperPolynomial::zero(self.sig); 4];
        for k in 1..=4u8 {
            let idx: Vec<u8> = (1..=4).filter(|&m| m != k).collect();
            let sign = if k % 2 == 1 { rat(1) } else { rat(-1) };
            out[(k - 1) as usize] = self.component(&idx).scale(&sign);
        }
        out
    }
}

/// Element of E(4,4): a vector field on x₁…x₄ plus a one-form Σ f_i dx_i,
/// coefficients polynomial in the even variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct E44Element {
    pub sig: Signature,
    pub vf: Vec<SuperPolynomial>,
    pub form: Vec<SuperPolynomial>,
}

impl E44Element {
    pub fn zero(sig: Signature) -> Self {
        E44Element {
            sig,
            vf: vec![SuperPolynomial::zero(sig); 4],
            form: vec![SuperPolynomial::zero(sig); 4],
        }
    }

    pub fn vector_field(sig: Signature, r: u8, f: &SuperPolynomial) -> Self {
        let mut e = Self::zero(sig);
        e.vf[(r - 1) as usize] = f.clone();
        e
    }

    pub fn one_form(sig: Signature, i: u8, f: &SuperPolynomial) -> Self {
        let mut e = Self::zero(sig);
        e.form[(i - 1) as usize] = f.clone();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.vf.iter().all(|p| p.is_zero()) && self.form.iter().all(|p| p.is_zero())
    }

    pub fn add_assign_scaled(&mut self, other: &E44Element, k: &Rational) {
        for (a, b) in self.vf.iter_mut().zip(&other.vf) {
            a.add_assign_scaled(b, k);
        }
        for (a, b) in self.form.iter_mut().zip(&other.form) {
            a.add_assign_scaled(b, k);
        }
    }

    pub fn add(&self, other: &E44Element) -> E44Element {
        let mut e = self.clone();
        e.add_assign_scaled(other, &rat(1));
        e
    }

    pub fn sub(&self, other: &E44Element) -> E44Element {
        let mut e = self.clone();
        e.add_assign_scaled(other, &rat(-1));
        e
    }

    pub fn scale(&self, k: &Rational) -> E44Element {
        E44Element {
            sig: self.sig,
            vf: self.vf.iter().map(|p| p.scale(k)).collect(),
            form: self.form.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Principal degree with deg x_i = 1 and deg d = −2, so both ∂_{x_i} and
    /// dx_i sit in degree −1.
    pub fn principal_degree(&self) -> Option<i64> {
        let mut seen: Option<i64> = None;
        for f in self.vf.iter().chain(self.form.iter()) {
            for (m, _) in f.terms() {
                let d = m.total_degree() as i64 - 1;
                match seen {
                    None => seen = Some(d),
                    Some(q) if q == d => {}
                    Some(_) => return None,
                }
            }
        }
        Some(seen.unwrap_or(0))
    }

    pub fn text(&self) -> String {
        let mut parts = Vec::new();
        for (k, f) in self.vf.iter().enumerate() {
            if !f.is_zero() {
                parts.push(format!("({})*d/dx{}", f.text(), k + 1));
            }
        }
        for (k, f) in self.form.iter().enumerate() {
            if !f.is_zero() {
                parts.push(format!("({})*dx{}", f.text(), k + 1));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn divergence(sig: Signature, vf: &[SuperPolynomial]) -> SuperPolynomial {
    let mut div = SuperPolynomial::zero(sig);
    for (j, u) in vf.iter().enumerate() {
        div.add_assign(&u.derivative(Symbol::y(j as u8 + 1)));
    }
    div
}

/// The E(4,4) bracket on all four parity sectors.
pub fn e44_bracket(u: &E44Element, v: &E44Element) -> E44Element {
    let sig = u.sig;
    let mut out = E44Element::zero(sig);

    let apply = |vfc: &[SuperPolynomial], g: &SuperPolynomial| -> SuperPolynomial {
        let mut acc = SuperPolynomial::zero(sig);
        for (j, f) in vfc.iter().enumerate() {
            acc.add_assign(&f.mul(&g.derivative(Symbol::y(j as u8 + 1))));
        }
        acc
    };

    // even–even: the classical bracket of vector fields
    for m in 0..4 {
        let mut h = apply(&u.vf, &v.vf[m]);
        h.add_assign_scaled(&apply(&v.vf, &u.vf[m]), &rat(-1));
        out.vf[m].add_assign(&h);
    }

    // even–odd: [X, ω] = L_X(ω) − ½ div(X) ω, where
    // L_X(Σ f_i dx_i) = Σ X(f_i) dx_i + Σ f_i d(X(x_i));
    // odd–even by super-skew: [ω, X] = −[X, ω].
    let mut lie_minus_shift = |x: &[SuperPolynomial], w: &[SuperPolynomial], sign: Rational| {
        let div = divergence(sig, x);
        for k in 0..4 {
            let mut h = apply(x, &w[k]);
            for i in 0..4 {
                h.add_assign(&w[i].mul(&x[i].derivative(Symbol::y(k as u8 + 1))));
            }
            h.add_assign_scaled(&div.mul(&w[k]), &ratio(-1, 2));
            out.form[k].add_assign(&h.scale(&sign));
        }
    };
    lie_minus_shift(&u.vf, &v.form, rat(1));
    lie_minus_shift(&v.vf, &u.form, rat(-1));

    // odd–odd: dω₁ ∧ ω₂ + ω₁ ∧ dω₂ contracted against the volume form
    let to_form = |w: &[SuperPolynomial]| {
        let mut f = Form::new(sig, 1);
        for (i, p) in w.iter().enumerate() {
            f.add_component(&[i as u8 + 1], p);
        }
        f
    };
    let w1 = to_form(&u.form);
    let w2 = to_form(&v.form);
    let three = w1.d().wedge(&w2).plus(&w1.wedge(&w2.d()));
    for (m, p) in three.contract_with_volume().into_iter().enumerate() {
        out.vf[m].add_assign(&p);
    }

    out
}

/// (j, h, k) with ε(i, j, h, k) = 1, the cyclic completion of a single index.
fn cyclic_complement(i: u8) -> (u8, u8, u8) {
    let rest: Vec<u8> = (1..=4).filter(|&x| x != i).collect();
    if epsilon4([i, rest[0], rest[1], rest[2]]) == 1 {
        (rest[0], rest[1], rest[2])
    } else {
        (rest[0], rest[2], rest[1])
    }
}

fn y_sym(sig: Signature, i: u8) -> SuperPolynomial {
    SuperPolynomial::symbol(sig, Symbol::y(i))
}

/// β₁(r,i): −y_{r+4}∂_{y_{i+4}}, plus the half-Euler correction when r = i.
pub fn beta1(sig: Signature, r: u8, i: u8) -> VectorField {
    let mut v = VectorField::zero(sig);
    v.coeffs[(i + 4 - 1) as usize] = y_sym(sig, r + 4).scale(&rat(-1));
    if r == i {
        for l in 5..=8u8 {
            v.coeffs[(l - 1) as usize].add_assign(&y_sym(sig, l).scale(&ratio(1, 2)));
        }
    }
    v
}

/// β₂(i) = −½ (y_{j+4} y_{h+4} ∂_{y_k} + y_{h+4} y_{k+4} ∂_{y_j} +
/// y_{k+4} y_{j+4} ∂_{y_h}) for ε(i,j,h,k) = 1.
pub fn beta2(sig: Signature, i: u8) -> VectorField {
    let (j, h, k) = cyclic_complement(i);
    let mut v = VectorField::zero(sig);
    let mut put = |a: u8, b: u8, dir: u8| {
        let p = y_sym(sig, a + 4).mul(&y_sym(sig, b + 4)).scale(&ratio(-1, 2));
        v.coeffs[(dir - 1) as usize].add_assign(&p);
    };
    put(j, h, k);
    put(h, k, j);
    put(k, j, h);
    v
}

/// β₃(i,l) = ½ y_{j+4} y_{h+4} y_{k+4} ∂_{y_{l+4}} for ε(i,j,h,k) = 1.
pub fn beta3(sig: Signature, i: u8, l: u8) -> VectorField {
    let (j, h, k) = cyclic_complement(i);
    let mut v = VectorField::zero(sig);
    v.coeffs[(l + 4 - 1) as usize] = y_sym(sig, j + 4)
        .mul(&y_sym(sig, h + 4))
        .mul(&y_sym(sig, k + 4))
        .scale(&ratio(1, 2));
    v
}

/// γ₁(i,j) = y_{h+4}∂_{y_k} − y_{k+4}∂_{y_h} for ε(i,j,h,k) = 1; zero at
/// i = j.
pub fn gamma1(sig: Signature, i: u8, j: u8) -> VectorField {
    let mut v = VectorField::zero(sig);
    if i == j {
        return v;
    }
    let (h, k) = epsilon_complement(i, j);
    v.coeffs[(k - 1) as usize] = y_sym(sig, h + 4);
    v.coeffs[(h - 1) as usize] = y_sym(sig, k + 4).scale(&rat(-1));
    v
}

/// γ₂(i,j,l) = −y_{h+4} y_{k+4} ∂_{y_{l+4}} for ε(i,j,h,k) = 1; zero at
/// i = j.
pub fn gamma2(sig: Signature, i: u8, j: u8, l: u8) -> VectorField {
    let mut v = VectorField::zero(sig);
    if i == j {
        return v;
    }
    let (h, k) = epsilon_complement(i, j);
    v.coeffs[(l + 4 - 1) as usize] = y_sym(sig, h + 4).mul(&y_sym(sig, k + 4)).scale(&rat(-1));
    v
}

/// The embedding Φ: E(4,4) → W(4,4), applied table by table.
pub fn phi_embed(u: &E44Element) -> VectorField {
    let sig = u.sig;
    let mut out = VectorField::zero(sig);
    let dy = |f: &SuperPolynomial, i: u8| f.derivative(Symbol::y(i));
    for r in 1..=4u8 {
        let f = &u.vf[(r - 1) as usize];
        if f.is_zero() {
            continue;
        }
        out.coeffs[(r - 1) as usize].add_assign(f);
        for i in 1..=4u8 {
            out.add_assign_scaled(&beta1(sig, r, i).poly_mul(&dy(f, i)), &rat(1));
            out.add_assign_scaled(&beta2(sig, i).poly_mul(&dy(&dy(f, r), i)), &rat(1));
            for l in 1..=4u8 {
                out.add_assign_scaled(
                    &beta3(sig, i, l).poly_mul(&dy(&dy(&dy(f, r), i), l)),
                    &rat(1),
                );
            }
        }
    }
    for i in 1..=4u8 {
        let f = &u.form[(i - 1) as usize];
        if f.is_zero() {
            continue;
        }
        out.coeffs[(i + 4 - 1) as usize].add_assign(f);
        for j in 1..=4u8 {
            out.add_assign_scaled(&gamma1(sig, i, j).poly_mul(&dy(f, j)), &rat(1));
            for l in 1..=4u8 {
                out.add_assign_scaled(&gamma2(sig, i, j, l).poly_mul(&dy(&dy(f, j), l)), &rat(1));
            }
        }
    }
    out
}

/// φ: W(4,4) → 𝒜(RW(4,4)), sending x_K ∂_{x_i} to −y_K a_i.
pub fn w_to_ann(v: &VectorField) -> Element {
    let mut out = Element::zero(v.sig);
    for (k, f) in v.coeffs.iter().enumerate() {
        for (m, c) in f.terms() {
            debug_assert_eq!(m.degree_in(&v.sig, Family::Y), m.total_degree());
            out.add_term(m.clone(), k as u8, -c.clone());
        }
    }
    out
}

/// Ψ: E(4,4) → 𝒜(RE(4,4)) ⊂ 𝒜(RW(4,4)):
/// `f ∂_{x_i} ↦ −½ f(y) y₅y₆y₇y₈ α_i`, `f dx_i ↦ −f(y) y₅y₆y₇y₈ α_{i+4}`,
/// reduced to annihilation normal form.
pub fn psi_iso(u: &E44Element, re: &Re44) -> Element {
    let sig = u.sig;
    let odd_block = SuperPolynomial::from_word(
        sig,
        &[Symbol::y(5), Symbol::y(6), Symbol::y(7), Symbol::y(8)],
        rat(1),
    )
    .unwrap();
    let mut pre = Element::zero(sig);
    for i in 1..=4u8 {
        let f = &u.vf[(i - 1) as usize];
        if !f.is_zero() {
            let block = f.mul(&odd_block);
            pre.add_assign_scaled(&re.alpha(i).poly_mul_left(&block), &ratio(-1, 2));
        }
        let g = &u.form[(i - 1) as usize];
        if !g.is_zero() {
            let block = g.mul(&odd_block);
            pre.add_assign_scaled(&re.alpha(i + 4).poly_mul_left(&block), &rat(-1));
        }
    }
    crate::annihilation::reduce_to_normal_form(&pre)
}

/// Enumerates the y-monomials of total degree ≤ maxdeg, sorted by degree.
pub fn y_monomials(sig: Signature, maxdeg: u32) -> Vec<SuperMonomial> {
    let mut even_parts: Vec<(SuperMonomial, u32)> = vec![(SuperMonomial::one(), 0)];
    for i in 1..=sig.r {
        let mut next = Vec::new();
        for (m, d) in &even_parts {
            let mut cur = m.clone();
            let mut deg = *d;
            loop {
                next.push((cur.clone(), deg));
                if deg >= maxdeg {
                    break;
                }
                let (c2, s) = cur
                    .mul(&SuperMonomial::from_symbol(&sig, Symbol::y(i)))
                    .expect("even symbol");
                debug_assert_eq!(s, 1);
                cur = c2;
                deg += 1;
            }
        }
        even_parts = next;
    }
    let mut out = Vec::new();
    for subset in 0u32..(1 << sig.s) {
        let odd_count = subset.count_ones();
        if odd_count > maxdeg {
            continue;
        }
        let mut odd_mono = SuperMonomial::one();
        for b in 0..sig.s {
            if subset & (1 << b) != 0 {
                let (m, s) = odd_mono
                    .mul(&SuperMonomial::from_symbol(&sig, Symbol::y(sig.r + b + 1)))
                    .expect("distinct odd");
                debug_assert_eq!(s, 1);
                odd_mono = m;
            }
        }
        for (m, d) in &even_parts {
            if d + odd_count <= maxdeg {
                let (full, s) = m.mul(&odd_mono).expect("disjoint");
                debug_assert_eq!(s, 1);
                out.push((full, d + odd_count));
            }
        }
    }
    out.sort_by_key(|(m, d)| (*d, m.clone()));
    out.into_iter().map(|(m, _)| m).collect()
}

/// Monomial basis of E(4,4) with coefficient degree ≤ maxdeg:
/// all `x^α ∂_{x_r}` and `x^α dx_i`.
pub fn e44_basis(sig: Signature, maxdeg: u32) -> Vec<E44Element> {
    let mut out = Vec::new();
    for m in y_monomials(sig, maxdeg) {
        if !m.odd_is_empty() {
            continue;
        }
        let mut p = SuperPolynomial::zero(sig);
        p.add_term(m.clone(), rat(1));
        for r in 1..=4u8 {
            out.push(E44Element::vector_field(sig, r, &p));
        }
        for i in 1..=4u8 {
            out.push(E44Element::one_form(sig, i, &p));
        }
    }
    out
}

/// The image of `f ∂_{x₁}`, written out term by term following the long
/// worked expansion; an independent oracle against [`phi_embed`].
pub fn phi_example_vf1(sig: Signature, f: &SuperPolynomial) -> VectorField {
    let d = |g: &SuperPolynomial, i: u8| g.derivative(Symbol::y(i));
    let mono = |idx: &[u8], c: Rational| -> SuperPolynomial {
        let word: Vec<Symbol> = idx.iter().map(|&i| Symbol::y(i)).collect();
        SuperPolynomial::from_word(sig, &word, c).unwrap()
    };
    let mut out = VectorField::zero(sig);
    out.coeffs[0] = f.clone();
    let mut add = |coeff: &SuperPolynomial, parts: &[(&[u8], i128, u8)]| {
        for (ys, num, dir) in parts {
            let mut v = VectorField::zero(sig);
            v.coeffs[(*dir - 1) as usize] = mono(ys, ratio(*num, 2));
            out.add_assign_scaled(&v.poly_mul(coeff), &rat(1));
        }
    };
    // ½ ∂1f (−y5∂5 + y6∂6 + y7∂7 + y8∂8)
    add(&d(f, 1), &[(&[5], -1, 5), (&[6], 1, 6), (&[7], 1, 7), (&[8], 1, 8)]);
    // −∂2f y5∂6 − ∂3f y5∂7 − ∂4f y5∂8
    add(&d(f, 2), &[(&[5], -2, 6)]);
    add(&d(f, 3), &[(&[5], -2, 7)]);
    add(&d(f, 4), &[(&[5], -2, 8)]);
    // ½ ∂1∂if corrections
    add(&d(&d(f, 1), 1), &[(&[6, 7], -1, 4), (&[7, 8], -1, 2), (&[6, 8], 1, 3)]);
    add(&d(&d(f, 1), 2), &[(&[5, 8], -1, 3), (&[7, 8], 1, 1), (&[5, 7], 1, 4)]);
    add(&d(&d(f, 1), 3), &[(&[5, 6], -1, 4), (&[6, 8], -1, 1), (&[5, 8], 1, 2)]);
    add(&d(&d(f, 1), 4), &[(&[5, 6], 1, 3), (&[5, 7], -1, 2), (&[6, 7], 1, 1)]);
    // ½ ∂1∂i∂lf corrections
    let d1 = d(f, 1);
    for (i, ys, num) in [
        (1u8, [6u8, 7, 8], 1i128),
        (2, [5, 7, 8], -1),
        (3, [5, 6, 8], 1),
        (4, [5, 6, 7], -1),
    ] {
        let d1i = d(&d1, i);
        for l in 1..=4u8 {
            add(&d(&d1i, l), &[(&ys, num, l + 4)]);
        }
    }
    out
}

/// The image of `f dx₁`, term by term, as an independent oracle.
pub fn phi_example_form1(sig: Signature, f: &SuperPolynomial) -> VectorField {
    let d = |g: &SuperPolynomial, i: u8| g.derivative(Symbol::y(i));
    let mono = |idx: &[u8], c: Rational| -> SuperPolynomial {
        let word: Vec<Symbol> = idx.iter().map(|&i| Symbol::y(i)).collect();
        SuperPolynomial::from_word(sig, &word, c).unwrap()
    };
    let mut out = VectorField::zero(sig);
    out.coeffs[4] = f.clone();
    let mut add = |coeff: &SuperPolynomial, parts: &[(&[u8], i128, u8)]| {
        for (ys, num, dir) in parts {
            let mut v = VectorField::zero(sig);
            v.coeffs[(*dir - 1) as usize] = mono(ys, rat(*num));
            out.add_assign_scaled(&v.poly_mul(coeff), &rat(1));
        }
    };
    add(&d(f, 2), &[(&[7], 1, 4), (&[8], -1, 3)]);
    add(&d(f, 3), &[(&[8], 1, 2), (&[6], -1, 4)]);
    add(&d(f, 4), &[(&[6], 1, 3), (&[7], -1, 2)]);
    for (j, ys, num) in [(2u8, [7u8, 8], -1i128), (3, [6, 8], 1), (4, [6, 7], -1)] {
        let dj = d(f, j);
        for l in 1..=4u8 {
            add(&d(&dj, l), &[(&ys, num, l + 4)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rw::build_rw;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sig() -> Signature {
        Signature::new(4, 4)
    }

    fn yp(idx: &[u8]) -> SuperPolynomial {
        let word: Vec<Symbol> = idx.iter().map(|&i| Symbol::y(i)).collect();
        SuperPolynomial::from_word(sig(), &word, rat(1)).unwrap()
    }

    #[test]
    fn vf_bracket_basics() {
        let s = sig();
        let x = VectorField::unit(s, 1);
        let mut y = VectorField::zero(s);
        y.coeffs[0] = yp(&[1]);
        assert_eq!(vf_bracket(&x, &y), VectorField::unit(s, 1));
        // odd-odd anticommutator
        let x = VectorField::unit(s, 5);
        let mut y = VectorField::zero(s);
        y.coeffs[4] = yp(&[5]);
        assert_eq!(vf_bracket(&x, &y), VectorField::unit(s, 5));
        // y5∂_{y6} and y6∂_{y5} are both even derivations; their commutator
        // is the usual gl-relation.
        let mut x = VectorField::zero(s);
        x.coeffs[5] = yp(&[5]);
        let mut y = VectorField::zero(s);
        y.coeffs[4] = yp(&[6]);
        let got = vf_bracket(&x, &y);
        let mut want = VectorField::zero(s);
        want.coeffs[4] = yp(&[5]);
        want.coeffs[5] = yp(&[6]).neg();
        assert_eq!(got, want);
    }

    #[test]
    fn vf_bracket_is_a_derivation() {
        let s = sig();
        let mut x = VectorField::zero(s);
        x.coeffs[0] = yp(&[5, 6]);
        x.coeffs[6] = yp(&[1]);
        let mut y = VectorField::zero(s);
        y.coeffs[4] = yp(&[1, 2]);
        y.coeffs[1] = yp(&[7]);
        let f = yp(&[1, 5]);
        let g = yp(&[2, 6]);
        let (xe, xo) = x.parity_split();
        let (ye, yo) = y.parity_split();
        for (xp, px) in [(&xe, false), (&xo, true)] {
            for (yq, py) in [(&ye, false), (&yo, true)] {
                let b = vf_bracket(xp, yq);
                let pb = px ^ py;
                // f here is odd, so D(fg) = D(f)g + (−1)^{p(D)} f D(g)
                let lhs = b.apply(&f.mul(&g));
                let sign = if pb { rat(-1) } else { rat(1) };
                let rhs = b.apply(&f).mul(&g).add(&f.mul(&b.apply(&g)).scale(&sign));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn forms_d_squared_zero_and_wedge_symmetry() {
        let s = sig();
        let mut w = Form::new(s, 1);
        w.add_component(&[1], &yp(&[1, 2]));
        w.add_component(&[3], &yp(&[2, 4]));
        assert!(w.d().d().is_zero());
        let mut e = Form::new(s, 1);
        e.add_component(&[2], &yp(&[1]));
        let we = w.wedge(&e);
        let ew = e.wedge(&w);
        for (idx, p) in we.components() {
            assert_eq!(ew.component(idx), p.neg());
        }
        let dw = w.d();
        assert_eq!(dw.wedge(&e), e.wedge(&dw));
    }

    #[test]
    fn e44_bracket_examples() {
        let s = sig();
        // [x1∂_{x1}, dx1] = ½ dx1
        let u = E44Element::vector_field(s, 1, &yp(&[1]));
        let v = E44Element::one_form(s, 1, &SuperPolynomial::one(s));
        let want = E44Element::one_form(s, 1, &SuperPolynomial::constant(s, ratio(1, 2)));
        assert_eq!(e44_bracket(&u, &v), want);
        // [dx1, x3 dx2] = ∂_{x4}
        let u = E44Element::one_form(s, 1, &SuperPolynomial::one(s));
        let v = E44Element::one_form(s, 2, &yp(&[3]));
        let want = E44Element::vector_field(s, 4, &SuperPolynomial::one(s));
        assert_eq!(e44_bracket(&u, &v), want);
        // [dx_s, f ∂_{x_r}] = ½ (∂_{x_r} f) dx_s for r ≠ s
        let f = yp(&[1, 1]);
        let u = E44Element::one_form(s, 2, &SuperPolynomial::one(s));
        let v = E44Element::vector_field(s, 1, &f);
        let want = E44Element::one_form(s, 2, &yp(&[1]));
        assert_eq!(e44_bracket(&u, &v), want);
    }

    #[test]
    fn principal_degrees() {
        let s = sig();
        assert_eq!(
            E44Element::vector_field(s, 1, &SuperPolynomial::one(s)).principal_degree(),
            Some(-1)
        );
        assert_eq!(E44Element::one_form(s, 2, &yp(&[1])).principal_degree(), Some(0));
        assert_eq!(
            E44Element::vector_field(s, 3, &yp(&[1, 2])).principal_degree(),
            Some(1)
        );
    }

    #[test]
    fn phi_on_simple_elements() {
        let s = sig();
        let u = E44Element::vector_field(s, 1, &SuperPolynomial::one(s));
        assert_eq!(phi_embed(&u), VectorField::unit(s, 1));
        let u = E44Element::vector_field(s, 1, &yp(&[2]));
        let mut want = VectorField::zero(s);
        want.coeffs[0] = yp(&[2]);
        want.coeffs[5] = yp(&[5]).neg();
        assert_eq!(phi_embed(&u), want);
    }

    #[test]
    fn phi_matches_worked_displays() {
        let s = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..8 {
            let mut f = SuperPolynomial::zero(s);
            for _ in 0..4 {
                let deg = rng.gen_range(0..=3);
                let mut word = Vec::new();
                for _ in 0..deg {
                    word.push(Symbol::y(rng.gen_range(1..=4)));
                }
                f.add_assign(
                    &SuperPolynomial::from_word(s, &word, rat(rng.gen_range(-3..=3))).unwrap(),
                );
            }
            assert_eq!(
                phi_embed(&E44Element::vector_field(s, 1, &f)),
                phi_example_vf1(s, &f),
                "vector-field display"
            );
            assert_eq!(
                phi_embed(&E44Element::one_form(s, 1, &f)),
                phi_example_form1(s, &f),
                "one-form display"
            );
        }
    }

    #[test]
    fn phi_proof_identities() {
        let s = sig();
        for t in 1..=4u8 {
            let d = VectorField::unit(s, t + 4);
            for i in 1..=4u8 {
                // [∂_{y_{t+4}}, β2(i)] = ½ γ1(t,i) and
                // [∂_{y_{t+4}}, β3(i,l)] = ½ γ2(t,i,l): the halves are what
                // the table commutators produce, matched on the other side by
                // the ½ in [dx_s, f ∂_{x_r}] = ½ (∂_{x_r} f) dx_s.
                assert_eq!(
                    vf_bracket(&d, &beta2(s, i)),
                    gamma1(s, t, i).scale(&ratio(1, 2)),
                    "beta2 {t},{i}"
                );
                for l in 1..=4u8 {
                    assert_eq!(
                        vf_bracket(&d, &beta3(s, i, l)),
                        gamma2(s, t, i, l).scale(&ratio(1, 2)),
                        "beta3 {t},{i},{l}"
                    );
                }
                // [∂_{y_{t+4}}, β1(r,i)] = −δ_{t,r} ∂_{y_{i+4}} + δ_{r,i} ½ ∂_{y_{t+4}}
                for r in 1..=4u8 {
                    let got = vf_bracket(&d, &beta1(s, r, i));
                    let mut want = VectorField::zero(s);
                    if t == r {
                        want.add_assign_scaled(&VectorField::unit(s, i + 4), &rat(-1));
                    }
                    if r == i {
                        want.add_assign_scaled(&VectorField::unit(s, t + 4), &ratio(1, 2));
                    }
                    assert_eq!(got, want, "beta1 {t},{r},{i}");
                }
            }
            for r in 1..=4u8 {
                let dr = VectorField::unit(s, r);
                for i in 1..=4u8 {
                    assert!(vf_bracket(&dr, &beta2(s, i)).is_zero());
                    for l in 1..=4u8 {
                        assert!(vf_bracket(&dr, &beta3(s, i, l)).is_zero());
                        assert!(vf_bracket(&dr, &gamma2(s, i, t, l)).is_zero());
                    }
                    assert!(vf_bracket(&dr, &beta1(s, t, i)).is_zero());
                    assert!(vf_bracket(&dr, &gamma1(s, i, t)).is_zero());
                }
            }
        }
    }

    #[test]
    fn phi_homomorphism_spot_checks() {
        let s = sig();
        let cases = vec![
            (
                E44Element::vector_field(s, 1, &SuperPolynomial::one(s)),
                E44Element::vector_field(s, 3, &yp(&[1, 2])),
            ),
            (
                E44Element::one_form(s, 1, &SuperPolynomial::one(s)),
                E44Element::one_form(s, 2, &yp(&[3])),
            ),
            (
                E44Element::one_form(s, 1, &SuperPolynomial::one(s)),
                E44Element::one_form(s, 1, &yp(&[1, 3])),
            ),
            (
                E44Element::vector_field(s, 2, &yp(&[2])),
                E44Element::one_form(s, 3, &yp(&[1, 4])),
            ),
        ];
        for (u, v) in cases {
            let lhs = phi_embed(&e44_bracket(&u, &v));
            let rhs = vf_bracket(&phi_embed(&u), &phi_embed(&v));
            assert_eq!(lhs, rhs, "u = {}, v = {}", u.text(), v.text());
        }
    }

    #[test]
    fn psi_on_basic_elements() {
        let s = sig();
        let re = Re44::new(build_rw(4, 4));
        let u = E44Element::vector_field(s, 1, &SuperPolynomial::one(s));
        assert_eq!(psi_iso(&u, &re), crate::conformal::Element::generator(s, 0).neg());
        let u = E44Element::one_form(s, 1, &SuperPolynomial::one(s));
        assert_eq!(psi_iso(&u, &re), crate::conformal::Element::generator(s, 4).neg());
    }

    #[test]
    fn psi_equals_phi_composition() {
        let s = sig();
        let re = Re44::new(build_rw(4, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let mut u = E44Element::zero(s);
            for slot in 0..8 {
                let deg = rng.gen_range(0..=2);
                let mut word = Vec::new();
                for _ in 0..deg {
                    word.push(Symbol::y(rng.gen_range(1..=4)));
                }
                let p = SuperPolynomial::from_word(s, &word, rat(rng.gen_range(-2..=2))).unwrap();
                if slot < 4 {
                    u.vf[slot].add_assign(&p);
                } else {
                    u.form[slot - 4].add_assign(&p);
                }
            }
            assert_eq!(psi_iso(&u, &re), w_to_ann(&phi_embed(&u)));
        }
    }

    #[test]
    fn basis_counts() {
        let s = sig();
        assert_eq!(e44_basis(s, 0).len(), 8);
        assert_eq!(e44_basis(s, 3).len(), 35 * 8);
        assert_eq!(y_monomials(s, 3).len(), 129);
    }
}
