//! Brute-force oracle: substitute explicit rational Chern roots `t·r` and
//! compare every form against products and sums of exponentials in `t`.
//!
//! A degree-`d` monomial in the generators picks up `t^d` under the scaling,
//! so the `t^d` coefficient of the explicit computation must equal the
//! evaluated degree-`d` component of the symbolic one.

use e8anomaly::bundles::{ch_delta, ch_str, char_form, e8_halfsum, witten_series, CharForm, WittenKind};
use e8anomaly::ring::{factorial, int, rat, Coefficient, Rational};
use e8anomaly::series::{sparse_one_plus, QxSeries};
use e8anomaly::symfunc::{Generator, GradedElem, TOP_DEGREE};
use e8anomaly::theta::{theta_const8, ThetaKind};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = TOP_DEGREE + 1;
const ORDER: usize = 7;

/// Polynomial in `t` truncated above `t^6`.
#[derive(Debug, Clone, PartialEq)]
struct TPoly([Rational; N]);

impl Coefficient for TPoly {
    fn zero_elem() -> Self {
        TPoly(std::array::from_fn(|_| int(0)))
    }
    fn one_elem() -> Self {
        Self::from_rational(int(1))
    }
    fn is_zero_elem(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        TPoly(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
    fn sub(&self, o: &Self) -> Self {
        TPoly(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
    fn mul(&self, o: &Self) -> Self {
        TPoly(std::array::from_fn(|d| (0..=d).map(|i| &self.0[i] * &o.0[d - i]).sum()))
    }
    fn neg(&self) -> Self {
        TPoly(std::array::from_fn(|i| -&self.0[i]))
    }
    fn scale(&self, c: &Rational) -> Self {
        TPoly(std::array::from_fn(|i| &self.0[i] * c))
    }
    fn from_rational(c: Rational) -> Self {
        let mut p = Self::zero_elem();
        p.0[0] = c;
        p
    }
    fn scalar_part(&self) -> Rational {
        self.0[0].clone()
    }
    fn nilpotency_bound() -> usize {
        TOP_DEGREE
    }
}

/// `e^{t r}`.
fn exp_t(r: &Rational) -> TPoly {
    let mut pow = Rational::one();
    TPoly(std::array::from_fn(|j| {
        if j > 0 {
            pow *= r;
        }
        &pow / factorial(j as u32)
    }))
}

fn c(n: i64) -> TPoly {
    TPoly::from_rational(int(n))
}

struct Roots {
    x: Vec<Rational>,
    y: [Vec<Rational>; 3],
    u: Rational,
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

impl Roots {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let x = (0..6).map(|_| random_rational(rng)).collect();
        let y = std::array::from_fn(|_| (0..8).map(|_| random_rational(rng)).collect());
        Roots { x, y, u: random_rational(rng) }
    }

    fn power_sum(roots: &[Rational], p: u8) -> Rational {
        roots.iter().map(|r| (0..p).fold(Rational::one(), |a, _| a * r)).sum()
    }

    fn value(&self, g: Generator) -> Rational {
        match g {
            Generator::PX(p) => Self::power_sum(&self.x, p),
            Generator::PY(p, i) => Self::power_sum(&self.y[i as usize - 1], p),
            Generator::U => self.u.clone(),
        }
    }

    /// The twelve roots `±X_k` of `T_C`.
    fn tangent(&self) -> Vec<Rational> {
        self.x.iter().flat_map(|r| [r.clone(), -r]).collect()
    }

    fn xi(&self) -> Vec<Rational> {
        vec![self.u.clone(), -&self.u]
    }

    /// A form evaluated at the scaled roots, degree by degree.
    fn eval(&self, g: &GradedElem) -> TPoly {
        TPoly(std::array::from_fn(|d| g.degree_component(d).eval(|x| self.value(x))))
    }
}

fn sum_exp(roots: &[Rational]) -> TPoly {
    roots.iter().fold(TPoly::zero_elem(), |a, r| a.add(&exp_t(r)))
}

/// Coefficients of `Π_r (1 + z e^{t r})` (`alternating`) or `Π_r 1/(1 − z e^{t r})`, up to `z^k`.
fn power_classes(roots: &[Rational], k: usize, alternating: bool) -> Vec<TPoly> {
    let mut poly = vec![TPoly::one_elem()];
    poly.resize(k + 1, TPoly::zero_elem());
    for r in roots {
        let e = exp_t(r);
        if alternating {
            for j in (1..=k).rev() {
                poly[j] = poly[j].add(&poly[j - 1].mul(&e));
            }
        } else {
            for j in 1..=k {
                poly[j] = poly[j].add(&poly[j - 1].mul(&e));
            }
        }
    }
    poly
}

fn assignments() -> Vec<Roots> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ede8);
    (0..20).map(|_| Roots::random(&mut rng)).collect()
}

#[test]
fn chern_characters_of_bundle_expressions() {
    for roots in assignments() {
        let t = roots.tangent();
        let xi = roots.xi();
        let wedge_t = power_classes(&t, 4, true);
        let sym_t = power_classes(&t, 2, false);
        let wedge_xi = power_classes(&xi, 2, true);
        let cases: Vec<(&str, TPoly)> = vec![
            ("TC", sum_exp(&t)),
            ("XiC", sum_exp(&xi)),
            ("wedge(2, TC)", wedge_t[2].clone()),
            ("wedge(3, TC)", wedge_t[3].clone()),
            ("wedge(4, TC)", wedge_t[4].clone()),
            ("sym(2, TC)", sym_t[2].clone()),
            ("wedge(2, XiC)", wedge_xi[2].clone()),
            ("sym(2, XiC)", power_classes(&xi, 2, false)[2].clone()),
            ("tilde(TC) * tilde(XiC)", sum_exp(&t).sub(&c(12)).mul(&sum_exp(&xi).sub(&c(2)))),
            ("2 * wedge(2, TC) - TC * TC + 3", wedge_t[2].scale(&int(2)).sub(&sum_exp(&t).mul(&sum_exp(&t))).add(&c(3))),
        ];
        for (expr, want) in cases {
            let got = roots.eval(&ch_str(expr).unwrap());
            assert_eq!(got, want, "{expr}");
        }
    }
}

#[test]
fn wedge_of_direct_sum_matches_subsets() {
    for roots in assignments().into_iter().take(5) {
        let mut all = roots.tangent();
        all.extend(roots.xi());
        let want = power_classes(&all, 4, true);
        for (k, w) in want.iter().enumerate() {
            let got = roots.eval(&ch_str(&format!("wedge({k}, TC + XiC)")).unwrap());
            assert_eq!(&got, w, "k = {k}");
        }
    }
}

/// `sinh(t r / 2) / (t r / 2)`.
fn sinhc_half(r: &Rational) -> TPoly {
    let h = r / int(2);
    let mut pow = Rational::one();
    TPoly(std::array::from_fn(|j| {
        let v = if j % 2 == 0 { &pow / factorial(j as u32 + 1) } else { Rational::zero() };
        pow *= &h;
        v
    }))
}

fn cosh_half_t(r: &Rational) -> TPoly {
    exp_t(&(r / int(2))).add(&exp_t(&(-r / int(2)))).scale(&rat(1, 2))
}

#[test]
fn characteristic_forms() {
    for roots in assignments() {
        let mut ahat = TPoly::one_elem();
        let mut lhat = TPoly::one_elem();
        let mut delta = TPoly::one_elem();
        for r in &roots.x {
            let inv = sinhc_half(r).inverse().unwrap();
            ahat = ahat.mul(&inv);
            lhat = lhat.mul(&inv.mul(&cosh_half_t(r)).scale(&int(2)));
            delta = delta.mul(&cosh_half_t(r).scale(&int(2)));
        }
        assert_eq!(roots.eval(&char_form(CharForm::AHat)), ahat);
        assert_eq!(roots.eval(&char_form(CharForm::LHat)), lhat);
        assert_eq!(roots.eval(&ch_delta()), delta);
        assert_eq!(roots.eval(&char_form(CharForm::CoshHalfC)), cosh_half_t(&roots.u));
    }
}

fn lift(s: &QxSeries<Rational>) -> QxSeries<TPoly> {
    s.map(|x| TPoly::from_rational(x.clone()))
}

/// `Π_{k ∈ powers} (1 + sign·e^{t r} u^k)`, or its inverse when `inverse` holds,
/// normalized by the same product at `r = 0`.
fn root_product(r: &Rational, powers: &[usize], sign: i64, inverse: bool) -> QxSeries<TPoly> {
    let mut acc = QxSeries::one(ORDER);
    for &k in powers {
        let f = sparse_one_plus(&[(k, exp_t(r).scale(&int(sign)))], ORDER);
        let norm = lift(&sparse_one_plus(&[(k, int(sign))], ORDER));
        let (num, den) = if inverse { (norm, f) } else { (f, norm) };
        acc = acc.mul_series(&num).mul_series(&den.inv().unwrap());
    }
    acc
}

fn whole() -> Vec<usize> {
    (1..).map(|n| 2 * n).take_while(|&k| k < ORDER).collect()
}

fn half() -> Vec<usize> {
    (1..).map(|n| 2 * n - 1).take_while(|&k| k < ORDER).collect()
}

/// One infinite tensor factor over explicit roots:
/// `S_{q^n}` is `(sym, whole)`, `∧_{±q^{n−1/2}}` is `(±1, half)`, `∧_{q^n}` is `(1, whole)`.
fn family(roots: &[Rational], sym: bool, sign: i64, powers: &[usize]) -> QxSeries<TPoly> {
    roots.iter().fold(QxSeries::one(ORDER), |acc, r| {
        let f = if sym { root_product(r, powers, -1, true) } else { root_product(r, powers, sign, false) };
        acc.mul_series(&f)
    })
}

fn explicit_witten(kind: WittenKind, roots: &Roots) -> QxSeries<TPoly> {
    let t = roots.tangent();
    let xi = roots.xi();
    let s = family(&t, true, 0, &whole());
    match kind {
        WittenKind::Theta1 => s.mul_series(&family(&t, false, 1, &whole())),
        WittenKind::Theta2 => s.mul_series(&family(&t, false, -1, &half())),
        WittenKind::Theta3 => s.mul_series(&family(&t, false, 1, &half())),
        WittenKind::Theta => s
            .mul_series(&family(&xi, false, 1, &whole()))
            .mul_series(&family(&xi, false, -1, &half()))
            .mul_series(&family(&xi, false, 1, &half())),
        WittenKind::Phi => s
            .mul_series(&family(&t, false, 1, &whole()))
            .mul_series(&family(&t, false, -1, &half()))
            .mul_series(&family(&t, false, 1, &half())),
    }
}

#[test]
fn witten_series_at_explicit_roots() {
    let symbolic: Vec<_> = WittenKind::ALL.iter().map(|&k| witten_series(k, ORDER).series).collect();
    for roots in assignments().into_iter().take(8) {
        for (kind, sym) in WittenKind::ALL.iter().zip(&symbolic) {
            let want = explicit_witten(*kind, &roots);
            for k in 0..ORDER {
                assert_eq!(roots.eval(&sym.coeff(k)), want.coeff(k), "{} at u^{k}", kind.name());
            }
        }
    }
}

/// `θ_k(y, τ) / θ_k(0, τ)` from the product formulas.
fn explicit_theta_ratio(kind: ThetaKind, y: &Rational) -> QxSeries<TPoly> {
    let pair = |sign: i64, powers: &[usize]| {
        root_product(y, powers, sign, false).mul_series(&root_product(&-y, powers, sign, false))
    };
    match kind {
        ThetaKind::Theta1 => pair(1, &whole()).mul_coeff(&cosh_half_t(y)),
        ThetaKind::Theta2 => pair(-1, &half()),
        ThetaKind::Theta3 => pair(1, &half()),
        ThetaKind::Theta => unreachable!(),
    }
}

#[test]
fn e8_halfsum_at_explicit_roots() {
    let symbolic: Vec<_> = (1..=3u8).map(|i| e8_halfsum(i, ORDER)).collect();
    for roots in assignments().into_iter().take(6) {
        for (i, got) in symbolic.iter().enumerate() {
            let mut want: Option<QxSeries<TPoly>> = None;
            for kind in ThetaKind::EVEN {
                let mut term = lift(&theta_const8(kind, ORDER).unwrap());
                for y in &roots.y[i] {
                    term = term.mul_series(&explicit_theta_ratio(kind, y));
                }
                want = Some(match want {
                    None => term,
                    Some(w) => w.try_add(&term).unwrap(),
                });
            }
            let want = want.unwrap().scale(&rat(1, 2));
            assert_eq!(got.eighth_exponent(), want.eighth_exponent());
            for k in 0..ORDER {
                assert_eq!(roots.eval(&got.coeff(k)), want.coeff(k), "bundle {} at u^{k}", i + 1);
            }
        }
    }
}
