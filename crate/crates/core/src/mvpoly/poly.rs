use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_VARS};
use super::PolyError;
use crate::exactlinalg::QMatrix;
use crate::exactnum::{QSqrt2, Rational};

/// Sparse multivariate polynomial with coefficients in Q(sqrt 2).
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct MvPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, QSqrt2>,
}

impl MvPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MvPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: QSqrt2) -> Self {
        let mut p = MvPoly::zero(nvars);
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = MvPoly::zero(nvars);
        p.add_term(Monomial::var(i), &QSqrt2::one());
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[QSqrt2]) -> Self {
        let mut p = MvPoly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, QSqrt2)>>(nvars: usize, terms: I) -> Self {
        let mut p = MvPoly::zero(nvars);
        for (m, c) in terms {
            assert!(m.support_len() <= nvars, "monomial uses too many variables");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QSqrt2)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QSqrt2 {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QSqrt2 {
        self.coeff(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: &QSqrt2) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MvPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn scale(&self, c: &QSqrt2) -> MvPoly {
        if c.is_zero() {
            return MvPoly::zero(self.nvars);
        }
        MvPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MvPoly {
        let mut acc = MvPoly::constant(self.nvars, QSqrt2::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[QSqrt2]) -> QSqrt2 {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<QSqrt2>> = point
            .iter()
            .map(|x| {
                let mut pw = vec![QSqrt2::one()];
                for k in 1..=max_deg {
                    let next = &pw[k - 1] * x;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = QSqrt2::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn graded_part(&self, d: u32) -> MvPoly {
        MvPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, i: usize) -> MvPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = MvPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] = e - 1;
            out.add_term(dm, &c.scale(&Rational::from_int(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MvPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Matrix of second partials; computed on and above the diagonal and
    /// mirrored, so the result is exactly symmetric.
    pub fn hessian(&self) -> Vec<Vec<MvPoly>> {
        let n = self.nvars;
        let grad = self.gradient();
        let mut h = vec![vec![MvPoly::zero(n); n]; n];
        for i in 0..n {
            for j in i..n {
                let d = grad[i].partial(j);
                h[j][i] = d.clone();
                h[i][j] = d;
            }
        }
        h
    }

    /// Composition `p(A x + b)`, where `A` has one row per variable of `p`
    /// and one column per variable of the result.
    pub fn substitute_linear(&self, a: &QMatrix, b: &[QSqrt2]) -> Result<MvPoly, PolyError> {
        if a.rows() != self.nvars || b.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: a.rows(),
            });
        }
        let new_vars = a.cols();
        if new_vars > MAX_VARS {
            return Err(PolyError::TooManyVariables(new_vars));
        }
        let images: Vec<MvPoly> = (0..self.nvars)
            .map(|i| {
                let mut y = MvPoly::constant(new_vars, b[i].clone());
                for j in 0..new_vars {
                    y.add_term(Monomial::var(j), a.get(i, j));
                }
                y
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn compose(&self, images: &[MvPoly]) -> MvPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let new_vars = images.first().map_or(0, MvPoly::nvars);
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let mut powers: Vec<Vec<MvPoly>> = Vec::with_capacity(images.len());
        for y in images {
            let mut pw = vec![MvPoly::constant(new_vars, QSqrt2::one())];
            for k in 1..=max_deg {
                let next = &pw[k - 1] * y;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = MvPoly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut t = MvPoly::constant(new_vars, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            for (tm, tc) in &t.terms {
                out.add_term(*tm, tc);
            }
        }
        out
    }

    /// Drops every term involving a variable with index `>= k` (i.e. sets
    /// those variables to zero) and keeps the first `k` variables.
    pub fn section(&self, k: usize) -> MvPoly {
        assert!(k <= self.nvars);
        MvPoly {
            nvars: k,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.support_len() <= k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lines of the form `e1 e2 ... en: coefficient`, in ascending
    /// graded-lex order.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars {}\n", self.nvars);
        for (m, c) in &self.terms {
            let exps: Vec<String> = m.0[..self.nvars].iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("{}: {}\n", exps.join(" "), c));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MvPoly, PolyError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(PolyError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let nvars: usize = header
            .trim()
            .strip_prefix("vars ")
            .and_then(|n| n.trim().parse().ok())
            .filter(|&n| n <= MAX_VARS)
            .ok_or(PolyError::Parse {
                line: 1,
                msg: "expected `vars <n>` header".into(),
            })?;
        let mut p = MvPoly::zero(nvars);
        for (idx, line) in lines {
            let err = |msg: &str| PolyError::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let (exps, coef) = line.split_once(':').ok_or_else(|| err("missing ':'"))?;
            let exps: Vec<u8> = exps
                .split_whitespace()
                .map(|e| e.parse::<u8>())
                .collect::<Result<_, _>>()
                .map_err(|_| err("bad exponent"))?;
            if exps.len() != nvars {
                return Err(err("wrong number of exponents"));
            }
            let c = crate::exactnum::parse_qsqrt2(coef).map_err(|e| err(&e.to_string()))?;
            p.add_term(Monomial::from_exponents(&exps), &c);
        }
        Ok(p)
    }
}

impl fmt::Debug for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("{c:?}*x^{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&MvPoly> for &MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: &MvPoly) -> MvPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&MvPoly> for &MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: &MvPoly) -> MvPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&MvPoly> for &MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: &MvPoly) -> MvPoly {
        self.check_vars(rhs);
        let mut acc: FxHashMap<Monomial, QSqrt2> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|c| *c += &prod).or_insert(prod);
            }
        }
        MvPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        MvPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_poly_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<MvPoly> for MvPoly {
            type Output = MvPoly;
            fn $method(self, rhs: MvPoly) -> MvPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&MvPoly> for MvPoly {
            type Output = MvPoly;
            fn $method(self, rhs: &MvPoly) -> MvPoly {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);
