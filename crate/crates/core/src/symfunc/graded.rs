//! The truncated graded ring of characteristic forms.
//!
//! Generators are the even power sums of the tangent roots (`pX2, pX4, pX6`),
//! of each E8 bundle's roots (`pY2_i, pY4_i, pY6_i`, `i = 1..3`) and the Euler
//! class `U` of the rank-two bundle. `pX2j`, `pY2j_i` have weight `2j`, `U` has
//! weight 1; everything above weight 6 (form degree 12) is dropped.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::{int, signed_term, Coefficient, Rational};

/// Top weighted degree kept by the ring.
pub const TOP_DEGREE: usize = 6;

const NGENS: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Tangent power sum `Σ X_k^p`, `p ∈ {2, 4, 6}`.
    PX(u8),
    /// Power sum `Σ Y_l^p` of E8 bundle `i`, `p ∈ {2, 4, 6}`, `i ∈ {1, 2, 3}`.
    PY(u8, u8),
    /// Euler class of the rank-two bundle.
    U,
}

impl Generator {
    pub const ALL: [Generator; NGENS] = [
        Generator::PX(2),
        Generator::PX(4),
        Generator::PX(6),
        Generator::PY(2, 1),
        Generator::PY(2, 2),
        Generator::PY(2, 3),
        Generator::PY(4, 1),
        Generator::PY(4, 2),
        Generator::PY(4, 3),
        Generator::PY(6, 1),
        Generator::PY(6, 2),
        Generator::PY(6, 3),
        Generator::U,
    ];

    pub fn degree(self) -> usize {
        match self {
            Generator::PX(p) | Generator::PY(p, _) => p as usize,
            Generator::U => 1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Generator::PX(p) => (p as usize) / 2 - 1,
            Generator::PY(p, i) => 3 + 3 * ((p as usize) / 2 - 1) + (i as usize - 1),
            Generator::U => 12,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            Generator::PX(p) => matches!(p, 2 | 4 | 6),
            Generator::PY(p, i) => matches!(p, 2 | 4 | 6) && (1..=3).contains(&i),
            Generator::U => true,
        }
    }

    pub fn name(self) -> String {
        match self {
            Generator::PX(p) => format!("pX{p}"),
            Generator::PY(p, i) => format!("pY{p}_{i}"),
            Generator::U => "U".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Generator> {
        let s = s.trim();
        if s == "U" {
            return Some(Generator::U);
        }
        let g = if let Some(rest) = s.strip_prefix("pX") {
            Generator::PX(rest.parse().ok()?)
        } else {
            let rest = s.strip_prefix("pY")?;
            let (p, i) = rest.split_once('_')?;
            Generator::PY(p.parse().ok()?, i.parse().ok()?)
        };
        g.is_valid().then_some(g)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over [`Generator::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u8; NGENS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NGENS])
    }

    pub fn of(g: Generator) -> Self {
        let mut e = [0; NGENS];
        e[g.slot()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, g: Generator) -> u8 {
        self.0[g.slot()]
    }

    pub fn degree(&self) -> usize {
        Generator::ALL.iter().map(|g| g.degree() * self.exponent(*g) as usize).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u8)> + '_ {
        Generator::ALL.iter().filter_map(|g| {
            let e = self.exponent(*g);
            (e > 0).then_some((*g, e))
        })
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self
            .factors()
            .map(|(g, e)| if e == 1 { g.name() } else { format!("{}^{e}", g.name()) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses the output of [`Monomial::name`].
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "1" {
            return Some(Monomial::one());
        }
        let mut m = Monomial::one();
        for part in s.split('*') {
            let (g, e) = match part.split_once('^') {
                Some((g, e)) => (Generator::parse(g)?, e.trim().parse::<u8>().ok()?),
                None => (Generator::parse(part)?, 1),
            };
            m.0[g.slot()] = m.0[g.slot()].checked_add(e)?;
        }
        (m.degree() <= TOP_DEGREE).then_some(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

struct Basis {
    monomials: Vec<Monomial>,
    degrees: Vec<u8>,
    index: HashMap<Monomial, u16>,
    // product index, or NONE when the product overflows the top degree
    table: Vec<u16>,
    // index of each generator's monomial
    gen_index: [u16; NGENS],
}

const NONE: u16 = u16::MAX;

fn enumerate(slot: usize, budget: usize, cur: &mut [u8; NGENS], out: &mut Vec<Monomial>) {
    if slot == NGENS {
        out.push(Monomial(*cur));
        return;
    }
    let d = Generator::ALL[slot].degree();
    let mut e = 0;
    while e * d <= budget {
        cur[slot] = e as u8;
        enumerate(slot + 1, budget - e * d, cur, out);
        e += 1;
    }
    cur[slot] = 0;
}

fn basis() -> &'static Basis {
    static BASIS: OnceLock<Basis> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut monomials = Vec::new();
        enumerate(0, TOP_DEGREE, &mut [0; NGENS], &mut monomials);
        // graded lexicographic: degree first, then larger exponents of earlier generators first
        monomials.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
        let n = monomials.len();
        let degrees: Vec<u8> = monomials.iter().map(|m| m.degree() as u8).collect();
        let index: HashMap<Monomial, u16> =
            monomials.iter().enumerate().map(|(i, m)| (*m, i as u16)).collect();
        let mut table = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                if degrees[i] as usize + degrees[j] as usize <= TOP_DEGREE {
                    let mut e = monomials[i].0;
                    for (k, x) in e.iter_mut().enumerate() {
                        *x += monomials[j].0[k];
                    }
                    table[i * n + j] = index[&Monomial(e)];
                }
            }
        }
        let gen_index = Generator::ALL.map(|g| index[&Monomial::of(g)]);
        Basis { monomials, degrees, index, table, gen_index }
    })
}

/// Number of monomials of weighted degree at most [`TOP_DEGREE`].
pub fn basis_size() -> usize {
    basis().monomials.len()
}

/// Element of the truncated graded ring with exact rational coefficients.
///
/// Stored as `(monomial index, coefficient)` pairs sorted by grlex index with
/// no zero coefficients, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedElem {
    terms: Vec<(u16, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminateError {
    #[error("replacement for {var} has terms outside degree {degree}")]
    DegreeMismatch { var: Generator, degree: usize },
    #[error("replacement for {var} contains {var} itself")]
    SelfReferential { var: Generator },
}

impl GradedElem {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(0, c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn gen(g: Generator) -> Self {
        assert!(g.is_valid(), "invalid generator {g:?}");
        Self { terms: vec![(basis().gen_index[g.slot()], Rational::one())] }
    }

    /// `c · m`, or zero if `m` is above the top degree.
    pub fn term(m: Monomial, c: Rational) -> Self {
        match basis().index.get(&m) {
            Some(&i) if !c.is_zero() => Self { terms: vec![(i, c)] },
            _ => Self::zero(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let b = basis();
        let mut dense: Vec<Rational> = vec![Rational::zero(); b.monomials.len()];
        for (m, c) in terms {
            if let Some(&i) = b.index.get(&m) {
                dense[i as usize] += c;
            }
        }
        Self::from_dense(dense)
    }

    fn from_dense(dense: Vec<Rational>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u16, c))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        let b = basis();
        self.terms.iter().map(move |(i, c)| (b.monomials[*i as usize], c))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        basis()
            .index
            .get(m)
            .and_then(|i| self.terms.binary_search_by_key(i, |t| t.0).ok())
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn scalar(&self) -> Rational {
        match self.terms.first() {
            Some((0, c)) => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Highest degree with a nonzero term (0 for zero).
    pub fn max_degree(&self) -> usize {
        let b = basis();
        self.terms.last().map(|(i, _)| b.degrees[*i as usize] as usize).unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        let b = basis();
        self.terms.iter().all(|(i, _)| b.degrees[*i as usize] as usize == d)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let b = basis();
        let n = b.monomials.len();
        let mut dense: Vec<Rational> = vec![Rational::zero(); n];
        let mut touched = false;
        for (i, x) in &self.terms {
            let row = &b.table[*i as usize * n..(*i as usize + 1) * n];
            for (j, y) in &other.terms {
                let k = row[*j as usize];
                if k == NONE {
                    // terms are sorted by degree, so the rest overflow too
                    break;
                }
                dense[k as usize] += x * y;
                touched = true;
            }
        }
        if !touched {
            return Self::zero();
        }
        Self::from_dense(dense)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Projection onto weighted degree `d`.
    pub fn degree_component(&self, d: usize) -> Self {
        let b = basis();
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| b.degrees[*i as usize] as usize == d)
                .cloned()
                .collect(),
        }
    }

    /// Multiplies each degree-`d` term by `f(d)`.
    pub fn map_by_degree(&self, f: impl Fn(usize) -> Rational) -> Self {
        let b = basis();
        let factors: Vec<Rational> = (0..=TOP_DEGREE).map(&f).collect();
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (*i, c * &factors[b.degrees[*i as usize] as usize]))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { terms }
    }

    /// Multiplies each term by `f(monomial)`.
    pub fn map_by_monomial(&self, f: impl Fn(&Monomial) -> Rational) -> Self {
        let b = basis();
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (*i, c * f(&b.monomials[*i as usize])))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { terms }
    }

    /// The ring endomorphism induced by `g ↦ image(g)`.
    pub fn substitute(&self, image: impl Fn(Generator) -> GradedElem) -> Self {
        let images: Vec<GradedElem> = Generator::ALL.iter().map(|g| image(*g)).collect();
        // powers[slot][e] = image^e, built lazily up to the exponents needed
        let mut powers: Vec<Vec<GradedElem>> = images.iter().map(|_| vec![GradedElem::one()]).collect();
        let mut acc = GradedElem::zero();
        for (m, c) in self.terms() {
            let mut t = GradedElem::constant(c.clone());
            for (g, e) in m.factors() {
                let slot = g.slot();
                while powers[slot].len() <= e as usize {
                    let next = powers[slot].last().unwrap().mul(&images[slot]);
                    powers[slot].push(next);
                }
                t = t.mul(&powers[slot][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `replacement` for `var`; the replacement must be homogeneous of
    /// the same degree and free of `var`.
    pub fn eliminate(&self, var: Generator, replacement: &GradedElem) -> Result<Self, EliminateError> {
        check_replacement(var, replacement)?;
        Ok(self.substitute(|g| if g == var { replacement.clone() } else { GradedElem::gen(g) }))
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.terms().any(|(m, _)| m.exponent(g) > 0)
    }

    /// True when every monomial has an even power of `U`.
    pub fn is_even_in_u(&self) -> bool {
        self.terms().all(|(m, _)| m.exponent(Generator::U) % 2 == 0)
    }

    /// Evaluates at rational generator values.
    pub fn eval(&self, value: impl Fn(Generator) -> Rational) -> Rational {
        let vals: Vec<Rational> = Generator::ALL.iter().map(|g| value(*g)).collect();
        let mut acc = Rational::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for (g, e) in m.factors() {
                for _ in 0..e {
                    t *= &vals[g.slot()];
                }
            }
            acc += t;
        }
        acc
    }

    /// First monomial (grlex) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, Rational, Rational)> {
        let diff = self.sub(other);
        let first = diff.terms().next().map(|(m, _)| m);
        first.map(|m| (m, self.coeff(&m), other.coeff(&m)))
    }
}

pub(crate) fn check_replacement(var: Generator, replacement: &GradedElem) -> Result<(), EliminateError> {
    if !replacement.is_homogeneous(var.degree()) {
        return Err(EliminateError::DegreeMismatch { var, degree: var.degree() });
    }
    if replacement.contains(var) {
        return Err(EliminateError::SelfReferential { var });
    }
    Ok(())
}

impl fmt::Display for GradedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let body = if m == Monomial::one() { String::new() } else { m.name() };
            f.write_str(&signed_term(k == 0, c, &body))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElem({self})")
    }
}

impl Coefficient for GradedElem {
    fn zero_elem() -> Self {
        GradedElem::zero()
    }
    fn one_elem() -> Self {
        GradedElem::one()
    }
    fn is_zero_elem(&self) -> bool {
        GradedElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        GradedElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        GradedElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        GradedElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        GradedElem::neg(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        GradedElem::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        GradedElem::constant(c)
    }
    fn scalar_part(&self) -> Rational {
        self.scalar()
    }
    fn nilpotency_bound() -> usize {
        TOP_DEGREE
    }
}
