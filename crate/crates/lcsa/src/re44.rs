//! The generators α₁…α₈ of RE(4,4) inside RW(4,4).
//!
//! With `B_{uv} = Σ_{i=1}^4 u_i v_{i+4}` and
//! `C_{uv} = Σ_{i=1}^4 (u_i v_{i+4} + u_{i+4} v_i)`, the generators are
//!
//! ```text
//! α_i = ∂_i B_{∂∂} C_{∂a} − 2 ν_i C_{∂a} + ∂_i B_{νa},
//! ```
//!
//! where ν₁ = ∂₆∂₇∂₈, ν₂ = −∂₅∂₇∂₈, ν₃ = ∂₅∂₆∂₈, ν₄ = −∂₅∂₆∂₇, ν₅…ν₈ = 0.
//! RE(4,4) is the `F[∂]`-submodule of RW(4,4) they generate: a free
//! `F[∂₁..∂₄]`-module with basis α₁…α₈, closed under the λ-bracket, with the
//! closed form implemented in [`Re44::closed_form_bracket`].

use crate::conformal::{Element, GenInfo, GeneratorTable};
use crate::error::AlgebraError;
use crate::rational::{rat, ratio, Rational};
use crate::superpoly::{Family, Signature, SuperMonomial, SuperPolynomial, Symbol};

/// Sign of the permutation (p₀, p₁, p₂, p₃) of (1, 2, 3, 4); 0 on repeats.
pub fn epsilon4(p: [u8; 4]) -> i64 {
    let mut inv = 0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if p[a] == p[b] {
                return 0;
            }
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The ordered pair (h, k) with ε(i, j, h, k) = 1, for distinct i, j ≤ 4.
pub fn epsilon_complement(i: u8, j: u8) -> (u8, u8) {
    let rest: Vec<u8> = (1..=4).filter(|&x| x != i && x != j).collect();
    debug_assert_eq!(rest.len(), 2);
    if epsilon4([i, j, rest[0], rest[1]]) == 1 {
        (rest[0], rest[1])
    } else {
        (rest[1], rest[0])
    }
}

/// The two pairing shapes behind every B/C constant:
/// `B_{uv} = Σ_{i=1}^4 u_i v_{i+4}` and
/// `C_{uv} = Σ_{i=1}^4 (u_i v_{i+4} + u_{i+4} v_i)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairingKind {
    B,
    C,
}

/// Scalar-valued pairing of two indexed families.
pub fn pairing_poly(
    sig: Signature,
    kind: PairingKind,
    u: impl Fn(u8) -> SuperPolynomial,
    v: impl Fn(u8) -> SuperPolynomial,
) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero(sig);
    for i in 1..=4u8 {
        p.add_assign(&u(i).mul(&v(i + 4)));
        if kind == PairingKind::C {
            p.add_assign(&u(i + 4).mul(&v(i)));
        }
    }
    p
}

/// Element-valued pairing: the right family consists of module elements.
pub fn pairing_elem(
    sig: Signature,
    kind: PairingKind,
    u: impl Fn(u8) -> SuperPolynomial,
    v: impl Fn(u8) -> Element,
) -> Element {
    let mut e = Element::zero(sig);
    for i in 1..=4u8 {
        e.add_assign(&v(i + 4).poly_mul_left(&u(i)));
        if kind == PairingKind::C {
            e.add_assign(&v(i).poly_mul_left(&u(i + 4)));
        }
    }
    e
}

fn partial_word(sig: Signature, indices: &[u8], coeff: Rational) -> SuperPolynomial {
    let word: Vec<Symbol> = indices.iter().map(|&i| Symbol::partial(i)).collect();
    SuperPolynomial::from_word(sig, &word, coeff).expect("indices in range")
}

fn lambda_word(sig: Signature, indices: &[u8], coeff: Rational) -> SuperPolynomial {
    let word: Vec<Symbol> = indices.iter().map(|&i| Symbol::lambda(i)).collect();
    SuperPolynomial::from_word(sig, &word, coeff).expect("indices in range")
}

/// Coordinates f₁…f₈ ∈ F[∂₁..∂₄] over the basis α₁…α₈.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Re44Element {
    pub coords: Vec<SuperPolynomial>,
}

impl Re44Element {
    pub fn zero(sig: Signature) -> Self {
        Re44Element { coords: vec![SuperPolynomial::zero(sig); 8] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add_assign_scaled(&mut self, other: &Re44Element, k: &Rational) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            a.add_assign_scaled(b, k);
        }
    }

    pub fn scale(&self, k: &Rational) -> Re44Element {
        Re44Element { coords: self.coords.iter().map(|c| c.scale(k)).collect() }
    }
}

/// RW(4,4) together with the expanded α generators.
pub struct Re44 {
    pub rw: GeneratorTable,
    alphas: Vec<Element>,
}

impl Re44 {
    pub fn new(rw: GeneratorTable) -> Self {
        assert_eq!(rw.sig, Signature::new(4, 4));
        let mut ctx = Re44 { rw, alphas: Vec::new() };
        ctx.alphas = (1..=8).map(|i| ctx.alpha_expand(i)).collect();
        ctx
    }

    pub fn sig(&self) -> Signature {
        self.rw.sig
    }

    pub fn nu(&self, i: u8) -> SuperPolynomial {
        let sig = self.sig();
        match i {
            1 => partial_word(sig, &[6, 7, 8], rat(1)),
            2 => partial_word(sig, &[5, 7, 8], rat(-1)),
            3 => partial_word(sig, &[5, 6, 8], rat(1)),
            4 => partial_word(sig, &[5, 6, 7], rat(-1)),
            _ => SuperPolynomial::zero(sig),
        }
    }

    /// μ_i: the ν triples written in λ; zero for i ≥ 5.
    pub fn mu_const(&self, i: u8) -> SuperPolynomial {
        let sig = self.sig();
        match i {
            1 => lambda_word(sig, &[6, 7, 8], rat(1)),
            2 => lambda_word(sig, &[5, 7, 8], rat(-1)),
            3 => lambda_word(sig, &[5, 6, 8], rat(1)),
            4 => lambda_word(sig, &[5, 6, 7], rat(-1)),
            _ => SuperPolynomial::zero(sig),
        }
    }

    /// ρ_i: ν_i with one ∂ replaced by λ, summed over the three placements.
    pub fn rho(&self, i: u8) -> SuperPolynomial {
        let sig = self.sig();
        let mixed = |idx: [u8; 3], sign: i128| {
            let mut p = SuperPolynomial::zero(sig);
            for pick in 0..3 {
                let word: Vec<Symbol> = idx
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| if k == pick { Symbol::lambda(n) } else { Symbol::partial(n) })
                    .collect();
                p.add_assign(&SuperPolynomial::from_word(sig, &word, rat(sign)).unwrap());
            }
            p
        };
        match i {
            1 => mixed([6, 7, 8], 1),
            2 => mixed([5, 7, 8], -1),
            3 => mixed([5, 6, 8], 1),
            4 => mixed([5, 6, 7], -1),
            _ => SuperPolynomial::zero(sig),
        }
    }

    /// σ_i: ν_i with two ∂ replaced by λ, summed over the three placements.
    pub fn sigma(&self, i: u8) -> SuperPolynomial {
        let sig = self.sig();
        let mixed = |idx: [u8; 3], sign: i128| {
            let mut p = SuperPolynomial::zero(sig);
            for dpick in 0..3 {
                let word: Vec<Symbol> = idx
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| if k == dpick { Symbol::partial(n) } else { Symbol::lambda(n) })
                    .collect();
                p.add_assign(&SuperPolynomial::from_word(sig, &word, rat(sign)).unwrap());
            }
            p
        };
        match i {
            1 => mixed([6, 7, 8], 1),
            2 => mixed([5, 7, 8], -1),
            3 => mixed([5, 6, 8], 1),
            4 => mixed([5, 6, 7], -1),
            _ => SuperPolynomial::zero(sig),
        }
    }

    pub fn b_dd(&self) -> SuperPolynomial {
        let sig = self.sig();
        let d = |i: u8| SuperPolynomial::symbol(sig, Symbol::partial(i));
        pairing_poly(sig, PairingKind::B, d, d)
    }

    pub fn b_ll(&self) -> SuperPolynomial {
        let sig = self.sig();
        let l = |i: u8| SuperPolynomial::symbol(sig, Symbol::lambda(i));
        pairing_poly(sig, PairingKind::B, l, l)
    }

    /// C_{λ∂} = Σ (λ_i ∂_{i+4} + λ_{i+4} ∂_i).
    pub fn c_ld(&self) -> SuperPolynomial {
        let sig = self.sig();
        pairing_poly(
            sig,
            PairingKind::C,
            |i| SuperPolynomial::symbol(sig, Symbol::lambda(i)),
            |i| SuperPolynomial::symbol(sig, Symbol::partial(i)),
        )
    }

    /// B_{μ∂} = Σ μ_i ∂_{i+4}; C_{μ∂} collapses to the same sum since μ
    /// vanishes on indices 5..8.
    pub fn b_md(&self) -> SuperPolynomial {
        let sig = self.sig();
        pairing_poly(
            sig,
            PairingKind::B,
            |i| self.mu_const(i),
            |i| SuperPolynomial::symbol(sig, Symbol::partial(i)),
        )
    }

    /// C_{λμ} = Σ (λ_i μ_{i+4} + λ_{i+4} μ_i), collapsing to Σ λ_{i+4} μ_i.
    pub fn c_lm(&self) -> SuperPolynomial {
        let sig = self.sig();
        pairing_poly(
            sig,
            PairingKind::C,
            |i| SuperPolynomial::symbol(sig, Symbol::lambda(i)),
            |i| self.mu_const(i),
        )
    }

    /// C_{λν} = Σ (λ_i ν_{i+4} + λ_{i+4} ν_i), collapsing to Σ λ_{i+4} ν_i.
    pub fn c_ln(&self) -> SuperPolynomial {
        let sig = self.sig();
        pairing_poly(
            sig,
            PairingKind::C,
            |i| SuperPolynomial::symbol(sig, Symbol::lambda(i)),
            |i| self.nu(i),
        )
    }

    /// C_{∂a} = Σ (∂_i a_{i+4} + ∂_{i+4} a_i).
    pub fn c_da(&self) -> Element {
        let sig = self.sig();
        pairing_elem(
            sig,
            PairingKind::C,
            |i| SuperPolynomial::symbol(sig, Symbol::partial(i)),
            |i| Element::generator(sig, i - 1),
        )
    }

    /// B_{νa} = Σ ν_i a_{i+4}.
    pub fn b_nua(&self) -> Element {
        let sig = self.sig();
        pairing_elem(sig, PairingKind::B, |i| self.nu(i), |i| {
            Element::generator(sig, i - 1)
        })
    }

    /// C_{λa} = Σ (λ_i a_{i+4} + λ_{i+4} a_i) over the RW generators.
    pub fn c_la_gens(&self) -> Element {
        let sig = self.sig();
        pairing_elem(
            sig,
            PairingKind::C,
            |i| SuperPolynomial::symbol(sig, Symbol::lambda(i)),
            |i| Element::generator(sig, i - 1),
        )
    }

    /// B_{μa} = Σ μ_i a_{i+4} over the RW generators.
    pub fn b_ma_gens(&self) -> Element {
        let sig = self.sig();
        pairing_elem(sig, PairingKind::B, |i| self.mu_const(i), |i| {
            Element::generator(sig, i - 1)
        })
    }

    fn alpha_expand(&self, i: u8) -> Element {
        let sig = self.sig();
        let di = SuperPolynomial::symbol(sig, Symbol::partial(i));
        let c_da = self.c_da();
        let term1 = c_da.poly_mul_left(&self.b_dd()).poly_mul_left(&di);
        let term2 = c_da.poly_mul_left(&self.nu(i)).scale(&rat(-2));
        let term3 = self.b_nua().poly_mul_left(&di);
        term1.add(&term2).add(&term3)
    }

    /// α_i fully expanded in RW(4,4).
    pub fn alpha(&self, i: u8) -> &Element {
        &self.alphas[(i - 1) as usize]
    }

    /// ∂-monomial times α_i, expanded in RW(4,4).
    pub fn d_mono_alpha(&self, mono: &SuperMonomial, i: u8) -> Element {
        let mut p = SuperPolynomial::zero(self.sig());
        p.add_term(mono.clone(), rat(1));
        self.alpha(i).poly_mul_left(&p)
    }

    /// Expansion of a coordinate vector: Σ f_i α_i.
    pub fn expand(&self, v: &Re44Element) -> Element {
        let mut out = Element::zero(self.sig());
        for i in 1..=8u8 {
            out.add_assign(&self.alpha(i).poly_mul_left(&v.coords[(i - 1) as usize]));
        }
        out
    }

    /// Defect of a rewriting relation; zero means the relation holds. The
    /// relations, for i, j ∈ {5,…,8}, i ≠ j where applicable:
    ///
    /// 1. `∂_i α_i = 0`
    /// 2. `∂_i α_j = −∂_j α_i`
    /// 3. `∂_i α_{j−4} = ∂_{j−4} α_i`
    /// 4. `∂_i α_{i−4} = ∂_{i−4} α_i − 2 Σ_k ∂_k α_{k+4}`
    /// 5. `2 ∂_i α_j = ∂_p α_q − ∂_q α_p` with ε(i−4, j−4, p, q) = 1
    pub fn relation_defect(&self, k: u8, i: u8, j: u8) -> Result<Element, AlgebraError> {
        let sig = self.sig();
        let d = |idx: u8, alpha_idx: u8| -> Element {
            self.alpha(alpha_idx)
                .poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::partial(idx)))
        };
        let defect = match k {
            1 => d(i, i),
            2 => d(i, j).add(&d(j, i)),
            3 => d(i, j - 4).sub(&d(j - 4, i)),
            4 => {
                let mut sum = Element::zero(sig);
                for m in 1..=4u8 {
                    sum.add_assign(&d(m, m + 4));
                }
                d(i, i - 4).sub(&d(i - 4, i)).add(&sum.scale(&rat(2)))
            }
            5 => {
                let (p, q) = epsilon_complement(i - 4, j - 4);
                d(i, j).scale(&rat(2)).sub(&d(p, q)).add(&d(q, p))
            }
            _ => return Err(AlgebraError::Parse(format!("unknown relation {k}"))),
        };
        Ok(defect)
    }

    /// Keeps the terms divisible by ∂₅∂₆∂₇∂₈, reads f_i off the coefficient
    /// of `∂₅∂₆∂₇∂₈ a_i` (halved for i ≤ 4), and verifies Σ f_i α_i = e.
    pub fn coordinates(&self, e: &Element) -> Result<Re44Element, AlgebraError> {
        let sig = self.sig();
        let mut out = Re44Element::zero(sig);
        for (t, c) in e.terms() {
            let (dpart, rest) = t.mono.split(&sig, |f| f == Family::Partial);
            if !rest.is_one() {
                return Err(AlgebraError::NotInSpan);
            }
            let (odd_d, even_d) =
                dpart.split_by(&sig, |sym| sig.odd_index(sym.index));
            if odd_d.total_degree() != 4 {
                continue; // not divisible by the full odd block
            }
            let scale = if t.gen < 4 { ratio(1, 2) } else { rat(1) };
            out.coords[t.gen as usize].add_term(even_d, c.clone() * scale);
        }
        if &self.expand(&out) != e {
            return Err(AlgebraError::NotInSpan);
        }
        Ok(out)
    }

    /// Rewrites `mono · α_i` into coordinates over α₁…α₈ by eliminating
    /// ∂₅…∂₈ one at a time, highest index first, relation (5) preferred over
    /// (4) when the α index differs.
    pub fn reduce(&self, mono: &SuperMonomial, i: u8) -> Re44Element {
        let sig = self.sig();
        let mut out = Re44Element::zero(sig);
        let mut work: Vec<(Rational, SuperMonomial, u8)> = vec![(rat(1), mono.clone(), i)];
        while let Some((c, m, t)) = work.pop() {
            let (odd_d, even_d) = m.split_by(&sig, |sym| sig.odd_index(sym.index));
            if odd_d.is_one() {
                out.coords[(t - 1) as usize].add_term(even_d, c);
                continue;
            }
            // highest odd ∂ index present
            let o = odd_d
                .word(&sig)
                .last()
                .map(|s| s.index)
                .expect("nonempty odd part");
            // write m = ±(m_rest · ∂_o) with ∂_o at the word end, adjacent
            // to α_t; the sign is the Koszul cost of that factorization.
            let (m_rest, _) = m.odd_left_deriv(&sig, Symbol::partial(o)).expect("present");
            let (m_check, to_back_sign) = m_rest
                .mul(&SuperMonomial::from_symbol(&sig, Symbol::partial(o)))
                .expect("bit was removed");
            debug_assert_eq!(m_check, m);
            let cc = c * rat(to_back_sign as i128);
            // apply the relation to ∂_o α_t
            if t == o {
                continue; // relation (1): zero
            } else if t > 4 {
                // relation (5)
                let (p, q) = epsilon_complement(o - 4, t - 4);
                for (idx, tgt, k) in [(p, q, ratio(1, 2)), (q, p, ratio(-1, 2))] {
                    let (m2, s2) = m_rest
                        .mul(&SuperMonomial::from_symbol(&sig, Symbol::partial(idx)))
                        .expect("even partial");
                    work.push((cc.clone() * k * rat(s2 as i128), m2, tgt));
                }
            } else if t == o - 4 {
                // relation (4)
                let (m2, s2) = m_rest
                    .mul(&SuperMonomial::from_symbol(&sig, Symbol::partial(t)))
                    .expect("even partial");
                work.push((cc.clone() * rat(s2 as i128), m2, o));
                for k in 1..=4u8 {
                    let (m3, s3) = m_rest
                        .mul(&SuperMonomial::from_symbol(&sig, Symbol::partial(k)))
                        .expect("even partial");
                    work.push((cc.clone() * rat(-2) * rat(s3 as i128), m3, k + 4));
                }
            } else {
                // relation (3): ∂_o α_t = ∂_t α_o for even t ≠ o−4
                let (m2, s2) = m_rest
                    .mul(&SuperMonomial::from_symbol(&sig, Symbol::partial(t)))
                    .expect("even partial");
                work.push((cc * rat(s2 as i128), m2, o));
            }
        }
        out
    }

    /// The closed-form bracket
    ///
    /// ```text
    /// [α_i λ α_j] = (λ_i λ_j B_{λλ} − 2 λ_i μ_j − 2 λ_j μ_i) C_{λα}
    ///             + 3 λ_i λ_j B_{μα}
    ///             + (λ_i B_{μ∂} + λ_i B_{λλ} C_{λ∂} − 2 μ_i C_{λ∂}) α_j
    /// ```
    ///
    /// with `C_{λα} = Σ (λ_k α_{k+4} + λ_{k+4} α_k)` and
    /// `B_{μα} = Σ μ_k α_{k+4}`, all α's expanded in RW(4,4).
    pub fn closed_form_bracket(&self, i: u8, j: u8) -> Element {
        let sig = self.sig();
        let li = SuperPolynomial::symbol(sig, Symbol::lambda(i));
        let lj = SuperPolynomial::symbol(sig, Symbol::lambda(j));

        let mut c_la = Element::zero(sig);
        for k in 1..=4u8 {
            c_la.add_assign(
                &self
                    .alpha(k + 4)
                    .poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::lambda(k))),
            );
            c_la.add_assign(
                &self
                    .alpha(k)
                    .poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::lambda(k + 4))),
            );
        }
        let mut b_ma = Element::zero(sig);
        for k in 1..=4u8 {
            b_ma.add_assign(&self.alpha(k + 4).poly_mul_left(&self.mu_const(k)));
        }

        let mut scalar1 = li.mul(&lj).mul(&self.b_ll());
        scalar1.add_assign_scaled(&li.mul(&self.mu_const(j)), &rat(-2));
        scalar1.add_assign_scaled(&lj.mul(&self.mu_const(i)), &rat(-2));
        let term1 = c_la.poly_mul_left(&scalar1);

        let term2 = b_ma.poly_mul_left(&li.mul(&lj)).scale(&rat(3));

        let mut scalar3 = li.mul(&self.b_md());
        scalar3.add_assign(&li.mul(&self.b_ll()).mul(&self.c_ld()));
        scalar3.add_assign_scaled(&self.mu_const(i).mul(&self.c_ld()), &rat(-2));
        let term3 = self.alpha(j).poly_mul_left(&scalar3);

        term1.add(&term2).add(&term3)
    }

    /// Sesquilinear expansion of `[α_i λ α_j]` straight from the RW table.
    pub fn expanded_bracket(&self, i: u8, j: u8) -> Element {
        self.rw.bracket(self.alpha(i), self.alpha(j))
    }

    /// Defects of the four helper identities used alongside the closed form:
    ///
    /// 1. `[B_{νa} λ B_{νa}] = −B_{μ∂} B_{νa}`
    /// 2. `[C_{∂a} λ C_{∂a}] = −(2 B_{λλ} + C_{λ∂}) C_{∂a}`
    /// 3. `[B_{νa} λ C_{∂a}] = ½ C_{λμ} C_{λa} − B_{μ∂} C_{∂a} − C_{λ∂} B_{μa}
    ///    − B_{μ∂} C_{λa} + C_{λμ} C_{∂a}`
    /// 4. `[C_{∂a} λ B_{νa}] = −C_{λ∂} B_{ρa} − C_{λ∂} B_{νa} − 2 B_{λλ} B_{νa}
    ///    + C_{λν} C_{λa} + C_{λ∂} B_{μa} − B_{μ∂} C_{λa} − ½ C_{λμ} C_{∂a}
    ///    + ½ C_{λμ} C_{λa} + 2 B_{μ∂} C_{∂a} + C_{λ∂} B_{σa} + 2 B_{∂∂} B_{μa}`
    pub fn helper_defect(&self, which: u8) -> Result<Element, AlgebraError> {
        let b_nua = self.b_nua();
        let c_da = self.c_da();
        let c_la = self.c_la_gens();
        let b_ma = self.b_ma_gens();
        let mut b_ra = Element::zero(self.sig());
        let mut b_sa = Element::zero(self.sig());
        for i in 1..=4u8 {
            b_ra.add_assign(&Element::generator(self.sig(), i + 3).poly_mul_left(&self.rho(i)));
            b_sa.add_assign(&Element::generator(self.sig(), i + 3).poly_mul_left(&self.sigma(i)));
        }
        let lhs;
        let mut rhs = Element::zero(self.sig());
        match which {
            1 => {
                lhs = self.rw.bracket(&b_nua, &b_nua);
                rhs.add_assign_scaled(&b_nua.poly_mul_left(&self.b_md()), &rat(-1));
            }
            2 => {
                lhs = self.rw.bracket(&c_da, &c_da);
                let mut scal = self.b_ll().scale(&rat(2));
                scal.add_assign(&self.c_ld());
                rhs.add_assign_scaled(&c_da.poly_mul_left(&scal), &rat(-1));
            }
            3 => {
                lhs = self.rw.bracket(&b_nua, &c_da);
                rhs.add_assign_scaled(&c_la.poly_mul_left(&self.c_lm()), &ratio(1, 2));
                rhs.add_assign_scaled(&c_da.poly_mul_left(&self.b_md()), &rat(-1));
                rhs.add_assign_scaled(&b_ma.poly_mul_left(&self.c_ld()), &rat(-1));
                rhs.add_assign_scaled(&c_la.poly_mul_left(&self.b_md()), &rat(-1));
                rhs.add_assign(&c_da.poly_mul_left(&self.c_lm()));
            }
            4 => {
                lhs = self.rw.bracket(&c_da, &b_nua);
                rhs.add_assign_scaled(&b_ra.poly_mul_left(&self.c_ld()), &rat(-1));
                rhs.add_assign_scaled(&b_nua.poly_mul_left(&self.c_ld()), &rat(-1));
                rhs.add_assign_scaled(&b_nua.poly_mul_left(&self.b_ll()), &rat(-2));
                rhs.add_assign(&c_la.poly_mul_left(&self.c_ln()));
                rhs.add_assign(&b_ma.poly_mul_left(&self.c_ld()));
                rhs.add_assign_scaled(&c_la.poly_mul_left(&self.b_md()), &rat(-1));
                rhs.add_assign_scaled(&c_da.poly_mul_left(&self.c_lm()), &ratio(-1, 2));
                rhs.add_assign_scaled(&c_la.poly_mul_left(&self.c_lm()), &ratio(1, 2));
                rhs.add_assign_scaled(&c_da.poly_mul_left(&self.b_md()), &rat(2));
                rhs.add_assign(&b_sa.poly_mul_left(&self.c_ld()));
                rhs.add_assign_scaled(&b_ma.poly_mul_left(&self.b_dd()), &rat(2));
            }
            _ => return Err(AlgebraError::Parse(format!("unknown helper identity {which}"))),
        }
        Ok(lhs.sub(&rhs))
    }

    /// Re-expresses `[α_i λ α_j]` as a table entry over the α generators:
    /// group by λ-monomial, take coordinates of each ∂-a block.
    pub fn bracket_in_alpha_coordinates(&self, i: u8, j: u8) -> Result<Element, AlgebraError> {
        let sig = self.sig();
        let full = self.expanded_bracket(i, j);
        // group terms by λ-part
        let mut groups: std::collections::BTreeMap<SuperMonomial, Element> =
            std::collections::BTreeMap::new();
        for (t, c) in full.terms() {
            let (lpart, rest) = t.mono.split(&sig, |f| f == Family::Lambda);
            groups
                .entry(lpart)
                .or_insert_with(|| Element::zero(sig))
                .add_term(rest, t.gen, c.clone());
        }
        let mut out = Element::zero(sig);
        for (lpart, elem) in groups {
            let coords = self.coordinates(&elem)?;
            let mut lpoly = SuperPolynomial::zero(sig);
            lpoly.add_term(lpart, rat(1));
            for (k, f) in coords.coords.iter().enumerate() {
                let piece = Element::generator(sig, k as u8).poly_mul_left(f).poly_mul_left(&lpoly);
                out.add_assign(&piece);
            }
        }
        Ok(out)
    }

    /// Evaluates an element written over the α generators (λ/μ prefixes and
    /// ∂-words allowed) back into RW(4,4). RE(4,4) is free over F[∂₁..∂₄]
    /// only, so zero tests of table-level defects must pass through this
    /// map: odd ∂'s act on the α's via the relations, not freely.
    pub fn expand_alpha_words(&self, e: &Element) -> Element {
        let sig = self.sig();
        let mut out = Element::zero(sig);
        for (t, c) in e.terms() {
            let mut p = SuperPolynomial::zero(sig);
            p.add_term(t.mono.clone(), rat(1));
            out.add_assign_scaled(&self.alpha(t.gen + 1).poly_mul_left(&p), c);
        }
        out
    }

    /// The RE(4,4) generator table over α₁…α₈ with coefficients in
    /// F[∂₁..∂₄]: every entry is the expanded bracket pushed through
    /// [`Re44::coordinates`].
    pub fn alpha_table(&self) -> Result<GeneratorTable, AlgebraError> {
        let sig = self.sig();
        let gens: Vec<GenInfo> = (1..=8)
            .map(|i| GenInfo::new(format!("alpha{i}"), i > 4, -10))
            .collect();
        let mut entries = Vec::with_capacity(64);
        for i in 1..=8u8 {
            for j in 1..=8u8 {
                entries.push(self.bracket_in_alpha_coordinates(i, j)?);
            }
        }
        GeneratorTable::new(sig, gens, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::DegreeQ;
    use crate::rw::build_rw;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> Re44 {
        Re44::new(build_rw(4, 4))
    }

    #[test]
    fn epsilon_basics() {
        assert_eq!(epsilon4([1, 2, 3, 4]), 1);
        assert_eq!(epsilon4([2, 1, 3, 4]), -1);
        assert_eq!(epsilon4([1, 1, 3, 4]), 0);
        assert_eq!(epsilon_complement(1, 2), (3, 4));
        assert_eq!(epsilon_complement(4, 2), (1, 3));
        assert_eq!(epsilon_complement(4, 1), (3, 2));
    }

    #[test]
    fn alpha_frozen_coefficients() {
        let c = ctx();
        let sig = c.sig();
        let mono = |idx: &[u8]| {
            partial_word(sig, idx, rat(1))
                .terms()
                .next()
                .unwrap()
                .0
                .clone()
        };
        // coefficient of ∂5∂6∂7∂8 a1 in α1 is 2
        assert_eq!(c.alpha(1).coeff(&mono(&[5, 6, 7, 8]), 0), rat(2));
        // coefficient of ∂1∂6∂7∂8 a5 in α1 is −1
        assert_eq!(c.alpha(1).coeff(&mono(&[1, 6, 7, 8]), 4), rat(-1));
        // coefficient of ∂5∂6∂7∂8 a5 in α5 is 1
        assert_eq!(c.alpha(5).coeff(&mono(&[5, 6, 7, 8]), 4), rat(1));
    }

    #[test]
    fn alpha_parity_and_degree() {
        let c = ctx();
        for i in 1..=8u8 {
            let a = c.alpha(i);
            assert_eq!(a.parity(&c.rw.gens), Some(i > 4), "alpha{i} parity");
            assert_eq!(a.degree(&c.rw.gens), DegreeQ::Homogeneous(-10), "alpha{i} degree");
        }
    }

    #[test]
    fn relations_hold() {
        let c = ctx();
        for i in 5..=8u8 {
            assert!(c.relation_defect(1, i, 0).unwrap().is_zero(), "rel1 i={i}");
            assert!(c.relation_defect(4, i, 0).unwrap().is_zero(), "rel4 i={i}");
            for j in 5..=8u8 {
                if i == j {
                    continue;
                }
                assert!(c.relation_defect(2, i, j).unwrap().is_zero(), "rel2 {i}{j}");
                assert!(c.relation_defect(3, i, j).unwrap().is_zero(), "rel3 {i}{j}");
                assert!(c.relation_defect(5, i, j).unwrap().is_zero(), "rel5 {i}{j}");
            }
        }
    }

    #[test]
    fn coordinates_of_basis_and_linearity() {
        let c = ctx();
        let sig = c.sig();
        let v = c.coordinates(c.alpha(3)).unwrap();
        for (k, f) in v.coords.iter().enumerate() {
            if k == 2 {
                assert_eq!(f, &SuperPolynomial::one(sig));
            } else {
                assert!(f.is_zero());
            }
        }
        // ∂1 α2 + ∂2 α1 → f1 = ∂2, f2 = ∂1
        let e = c
            .alpha(2)
            .poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::partial(1)))
            .add(&c.alpha(1).poly_mul_left(&SuperPolynomial::symbol(sig, Symbol::partial(2))));
        let v = c.coordinates(&e).unwrap();
        assert_eq!(v.coords[0], SuperPolynomial::symbol(sig, Symbol::partial(2)));
        assert_eq!(v.coords[1], SuperPolynomial::symbol(sig, Symbol::partial(1)));
        // a raw RW generator is not in the span
        let raw = Element::generator(sig, 0);
        assert_eq!(c.coordinates(&raw), Err(AlgebraError::NotInSpan));
    }

    #[test]
    fn reduce_examples() {
        let c = ctx();
        let sig = c.sig();
        let m = |idx: &[u8]| {
            partial_word(sig, idx, rat(1))
                .terms()
                .next()
                .unwrap()
                .0
                .clone()
        };
        // ∂5 α5 → 0
        assert!(c.reduce(&m(&[5]), 5).is_zero());
        // ∂8 α6 → ½(∂1 α3 − ∂3 α1), per relation (5) with ε(4,2,1,3) = 1
        let v = c.reduce(&m(&[8]), 6);
        assert_eq!(v.coords[0], SuperPolynomial::symbol(sig, Symbol::partial(3)).scale(&ratio(-1, 2)));
        assert_eq!(v.coords[2], SuperPolynomial::symbol(sig, Symbol::partial(1)).scale(&ratio(1, 2)));
        // ∂1 α1 stays put
        let v = c.reduce(&m(&[1]), 1);
        assert_eq!(v.coords[0], SuperPolynomial::symbol(sig, Symbol::partial(1)));
    }

    #[test]
    fn reduce_agrees_with_coordinates_on_sampled_monomials() {
        let c = ctx();
        let sig = c.sig();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(0..=4);
            let mut word = Vec::new();
            for _ in 0..deg {
                word.push(Symbol::partial(rng.gen_range(1..=8)));
            }
            let Ok(p) = SuperPolynomial::from_word(sig, &word, rat(1)) else {
                continue;
            };
            if p.is_zero() {
                continue;
            }
            let mono = p.terms().next().unwrap().0.clone();
            let i = rng.gen_range(1..=8);
            let via_reduce = c.reduce(&mono, i);
            let via_coords = c.coordinates(&c.d_mono_alpha(&mono, i)).unwrap();
            assert_eq!(via_reduce, via_coords, "mono {mono:?} alpha{i}");
        }
    }

    #[test]
    fn freeness_on_random_vectors() {
        let c = ctx();
        let sig = c.sig();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut v = Re44Element::zero(sig);
            let mut any = false;
            for k in 0..8 {
                for _ in 0..2 {
                    let deg = rng.gen_range(0..=3);
                    let mut word = Vec::new();
                    for _ in 0..deg {
                        word.push(Symbol::partial(rng.gen_range(1..=4)));
                    }
                    let coeff = rat(rng.gen_range(-3..=3));
                    if coeff.is_zero() {
                        continue;
                    }
                    any = true;
                    v.coords[k].add_assign(
                        &SuperPolynomial::from_word(sig, &word, coeff).unwrap(),
                    );
                }
            }
            let e = c.expand(&v);
            if v.is_zero() {
                assert!(e.is_zero());
                continue;
            }
            assert!(any);
            assert!(!e.is_zero(), "nonzero coordinates must expand to nonzero");
            assert_eq!(c.coordinates(&e).unwrap(), v, "projection recovers the coordinates");
        }
    }

    #[test]
    fn closed_form_waypoints_for_55() {
        let c = ctx();
        // λ5 B_{μ∂} α5 = 0
        let sig = c.sig();
        let l5 = SuperPolynomial::symbol(sig, Symbol::lambda(5));
        let aux = c.alpha(5).poly_mul_left(&c.b_md()).poly_mul_left(&l5);
        assert!(aux.is_zero());
        // [α5 λ α5] = λ5 B_{λλ} C_{λ∂} α5
        let want = c
            .alpha(5)
            .poly_mul_left(&c.c_ld())
            .poly_mul_left(&c.b_ll())
            .poly_mul_left(&l5);
        assert_eq!(c.expanded_bracket(5, 5), want);
        assert_eq!(c.closed_form_bracket(5, 5), want);
    }

    #[test]
    fn main_theorem_sample_pairs() {
        let c = ctx();
        for (i, j) in [(1u8, 1u8), (5, 5), (1, 5), (5, 1), (2, 7), (8, 3), (6, 6)] {
            let lhs = c.expanded_bracket(i, j);
            let rhs = c.closed_form_bracket(i, j);
            assert_eq!(lhs, rhs, "pair ({i},{j})");
        }
    }

    #[test]
    fn helper_identities_hold() {
        let c = ctx();
        for which in 1..=4u8 {
            let d = c.helper_defect(which).unwrap();
            assert!(d.is_zero(), "helper {which}: {} terms", d.num_terms());
        }
    }
}
