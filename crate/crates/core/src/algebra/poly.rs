use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{is_negative, rational_to_string, Rational, Scalar};
use crate::error::{domain, Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed, ordered set of indeterminates.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors, so the
/// representation is canonical: no zero coefficients are stored and two
/// equal polynomials have identical term maps. A polynomial whose only term
/// is constant is compatible with every indeterminate set.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.is_constant() && other.is_constant() {
            return self.constant_term() == other.constant_term();
        }
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    /// The zero polynomial with no indeterminates.
    pub fn zero() -> Self {
        Self::zero_in(&[] as &[&str])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::constant_in(&[] as &[&str], c)
    }

    pub fn zero_in<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The polynomial consisting of the single indeterminate `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero_in(vars);
        let idx = p.index_of(name)?;
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(e, Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return domain(format!(
                    "exponent vector of length {} for {} indeterminates",
                    e.len(),
                    p.vars.len()
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Domain(format!("unknown indeterminate {name:?}")))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Largest exponent of `name` occurring in any term.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let i = self.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn with_vars(&self, vars: &Arc<[String]>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return MultiPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        // only called on constants
        MultiPoly::constant_in(vars, self.constant_term())
    }

    fn common_vars(&self, other: &Self) -> Result<Arc<[String]>> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return Ok(self.vars.clone());
        }
        if self.is_constant() {
            return Ok(other.vars.clone());
        }
        if other.is_constant() {
            return Ok(self.vars.clone());
        }
        domain(format!(
            "mismatched indeterminate sets {:?} and {:?}",
            self.vars, other.vars
        ))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let vars = self.common_vars(other)?;
        let mut out = self.with_vars(&vars);
        let rhs = other.with_vars(&vars);
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let vars = self.common_vars(other)?;
        let a = self.with_vars(&vars);
        let b = other.with_vars(&vars);
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Evaluates at an assignment covering every indeterminate that occurs
    /// in a nonconstant term.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match assignment.get(v) {
                Some(x) => values.push(Some(x.clone())),
                None => {
                    if self.terms.keys().any(|e| e[i] > 0) {
                        return domain(format!("no value assigned to indeterminate {v:?}"));
                    }
                    values.push(None);
                }
            }
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let x = values[i].as_ref().expect("checked above");
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes a rational value for one indeterminate, keeping the
    /// indeterminate set. Constants pass through unchanged.
    pub fn substitute(&self, name: &str, value: &Rational) -> Result<Self> {
        if self.is_constant() && !self.vars.iter().any(|v| v == name) {
            return Ok(self.clone());
        }
        let i = self.index_of(name)?;
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0);
            out.add_term(e2, c * num_traits::pow(value.clone(), k as usize));
        }
        Ok(out)
    }

    /// Coefficients `c_0, c_1, ...` of a polynomial in a single
    /// indeterminate (constants are accepted).
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.vars.len() > 1 && !self.is_constant() {
            return domain("polynomial is not univariate");
        }
        let deg = self.total_degree() as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.first().copied().unwrap_or(0) as usize;
            out[k] = c.clone();
        }
        Ok(out)
    }

    /// Builds the univariate polynomial `sum c_k v^k`.
    pub fn from_univariate(var: &str, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero_in(&[var]);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let bad = |what: &str| Error::Parse {
                pos: 0,
                msg: format!("bad {what} in polynomial term"),
            };
            let n: BigInt = t.num.parse().map_err(|_| bad("numerator"))?;
            let d: BigInt = t.den.parse().map_err(|_| bad("denominator"))?;
            if !d.is_positive() {
                return Err(bad("denominator"));
            }
            terms.push((t.exp.clone(), Rational::new(n, d)));
        }
        Self::from_terms(&json.vars, terms)
    }

    fn sorted_terms(&self, descending: bool) -> Vec<(&Vec<u32>, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            let by_degree = if descending { db.cmp(&da) } else { da.cmp(&db) };
            by_degree.then_with(|| b.cmp(a))
        });
        ts
    }

    /// Human-readable form with the highest degree first, e.g. `x^2+x`.
    pub fn to_string_descending(&self) -> String {
        self.render(true)
    }

    fn render(&self, descending: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms(descending).into_iter().enumerate() {
            let neg = is_negative(c);
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = self.monomial_string(e);
            if mono.is_empty() {
                out.push_str(&rational_to_string(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else if abs.is_integer() {
                out.push_str(&rational_to_string(&abs));
                out.push_str(&mono);
            } else {
                out.push('(');
                out.push_str(&rational_to_string(&abs));
                out.push(')');
                out.push_str(&mono);
            }
        }
        out
    }

    fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], k)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Lowest degree first, e.g. `1+2q+q^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl std::ops::Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: MultiPoly) -> MultiPoly {
        self.try_add(&other).expect("indeterminate sets differ")
    }
}

impl std::ops::Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: MultiPoly) -> MultiPoly {
        self.try_mul(&other).expect("indeterminate sets differ")
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}

impl Scalar for MultiPoly {
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("indeterminate sets differ")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("indeterminate sets differ")
    }
    fn negated(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn accumulate(&mut self, other: &Self) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            for (e, c) in &other.terms {
                self.add_term(e.clone(), c.clone());
            }
        } else {
            *self = self.plus(other);
        }
    }
}

/// JSON wire form: `{"vars":["q"],"terms":[{"exp":[2],"num":"1","den":"1"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(d)?;
        MultiPoly::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;
    use proptest::prelude::*;

    fn q() -> MultiPoly {
        MultiPoly::var(&["q"], "q").unwrap()
    }

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn monomial_product() {
        let qq = q().try_mul(&q()).unwrap();
        assert_eq!(qq.to_string(), "q^2");
        assert_eq!(qq.coeff(&[2]), r("1"));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = MultiPoly::one().try_add(&q()).unwrap();
        let b = a.neg();
        let s = a.try_add(&b).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn binomial_square() {
        let a = MultiPoly::one().try_add(&q()).unwrap();
        let sq = a.try_mul(&a).unwrap();
        assert_eq!(sq.to_string(), "1+2q+q^2");
        assert_eq!(sq.to_string_descending(), "q^2+2q+1");
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let t = MultiPoly::var(&["t"], "t").unwrap();
        assert!(matches!(q().try_add(&t), Err(Error::Domain(_))));
        assert!(q().try_mul(&t).is_err());
        // constants adapt to any set
        assert!(q().try_add(&MultiPoly::constant(r("3"))).is_ok());
    }

    #[test]
    fn evaluation() {
        let p = MultiPoly::one().try_add(&q()).unwrap();
        let mut a = BTreeMap::new();
        a.insert("q".to_string(), r("1"));
        assert_eq!(p.eval(&a).unwrap(), r("2"));

        let t = MultiPoly::var(&["t"], "t").unwrap();
        let p = t.try_mul(&t).unwrap().try_add(&t).unwrap();
        let mut a = BTreeMap::new();
        a.insert("t".to_string(), r("1/2"));
        assert_eq!(p.eval(&a).unwrap(), r("3/4"));
        assert!(p.eval(&BTreeMap::new()).is_err());
    }

    #[test]
    fn power_sum_evaluation() {
        let p = MultiPoly::var(&["x_1", "x_2"], "x_2").unwrap();
        let alpha = [r("1/2"), r("1/2")];
        let x2: Rational = alpha.iter().map(|a| a * a).sum();
        let mut a = BTreeMap::new();
        a.insert("x_2".to_string(), x2);
        assert_eq!(p.eval(&a).unwrap(), r("1/2"));
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::from_terms(&["q"], vec![(vec![2], r("1")), (vec![0], r("-3/4"))]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["q"],"terms":[{"exp":[0],"num":"-3","den":"4"},{"exp":[2],"num":"1","den":"1"}]}"#
        );
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_of_rational_coefficients() {
        let p = MultiPoly::from_terms(&["x_1", "x_2"], vec![(vec![2, 1], r("3/2")), (vec![0, 0], r("-1"))])
            .unwrap();
        assert_eq!(p.to_string(), "-1+(3/2)x_1^2*x_2");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(
                &["a", "b"],
                ts.into_iter()
                    .map(|((i, j), n, d)| (vec![i, j], Rational::new(n.into(), d.into()))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let ab = a.try_mul(&b).unwrap();
            prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
            prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
            let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
            let rhs = ab.try_add(&a.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.try_add(&b).unwrap().try_add(&c).unwrap(), a.try_add(&b.try_add(&c).unwrap()).unwrap());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), x in -4i64..5, y in 1i64..5) {
            let mut asg = BTreeMap::new();
            asg.insert("a".to_string(), Rational::new(x.into(), y.into()));
            asg.insert("b".to_string(), Rational::new((x - 1).into(), (y + 1).into()));
            let prod = a.try_mul(&b).unwrap().eval(&asg).unwrap();
            prop_assert_eq!(prod, a.eval(&asg).unwrap() * b.eval(&asg).unwrap());
            let sum = a.try_add(&b).unwrap().eval(&asg).unwrap();
            prop_assert_eq!(sum, a.eval(&asg).unwrap() + b.eval(&asg).unwrap());
        }
    }
}
