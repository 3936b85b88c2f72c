//! Homogeneous forms in `K[x, y, z]` and binary forms in `K[s, t]`.
//!
//! Monomials of a fixed degree are ordered graded-lexicographically with
//! `x > y > z`, i.e. by descending exponent triple. Every coefficient vector,
//! multiplication matrix and serialized polynomial uses this order.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// `x^i y^j z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: [usize; 3],
}

impl Monomial {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Monomial { exps: [i, j, k] }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().sum()
    }

    /// Position within [`monomial_basis`] of its own degree.
    pub fn index(&self) -> usize {
        let d = self.degree();
        let [i, j, _] = self.exps;
        let rest = d - i;
        rest * (rest + 1) / 2 + (rest - j)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps[0] + other.exps[0],
            self.exps[1] + other.exps[1],
            self.exps[2] + other.exps[2],
        )
    }
}

/// `dim R_d = C(d+2, 2)`, zero for negative `d`.
pub fn num_monomials(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

pub fn monomial_basis(d: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(num_monomials(d as i64));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Monomial::new(i, j, d - i - j));
        }
    }
    out
}

/// A homogeneous polynomial of a fixed degree, stored densely in the
/// canonical monomial order. The zero polynomial keeps its degree.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogPoly<E> {
    degree: usize,
    coeffs: Vec<E>,
}

impl<E: Clone> HomogPoly<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, degree: usize) -> Self {
        HomogPoly {
            degree,
            coeffs: vec![field.zero(); num_monomials(degree as i64)],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<E>) -> Result<Self> {
        let want = num_monomials(degree as i64);
        if coeffs.len() != want {
            return Err(Error::Shape(format!(
                "degree {degree} form needs {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(HomogPoly { degree, coeffs })
    }

    /// Builds a form from `(monomial, coefficient)` terms; repeated monomials add up.
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, E)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Degree(format!(
                    "term {:?} has degree {}, expected {degree}",
                    m.exps,
                    m.degree()
                )));
            }
            let slot = &mut p.coeffs[m.index()];
            *slot = field.add(slot, &c);
        }
        Ok(p)
    }

    /// `a x + b y + c z`.
    pub fn linear(a: E, b: E, c: E) -> Self {
        HomogPoly {
            degree: 1,
            coeffs: vec![a, b, c],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> &E {
        assert_eq!(m.degree(), self.degree);
        &self.coeffs[m.index()]
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Nonzero terms in canonical order.
    pub fn terms<'a, F: Field<Elem = E>>(
        &'a self,
        field: &'a F,
    ) -> impl Iterator<Item = (Monomial, &'a E)> + 'a {
        monomial_basis(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(move |(_, c)| !field.is_zero(c))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero(field, self.degree + other.degree);
        for (m, a) in self.terms(field) {
            for (n, b) in other.terms(field) {
                let slot = &mut out.coeffs[m.times(&n).index()];
                *slot = field.add(slot, &field.mul(a, b));
            }
        }
        out
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> HomogPoly<T> {
        HomogPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Matrix of `g ↦ f·g` from `R_d` to `R_{d+e}`, `e = deg f`, in canonical bases.
pub fn mult_matrix<F: Field>(field: &F, f: &HomogPoly<F::Elem>, d: usize) -> Matrix<F::Elem> {
    let e = f.degree();
    let rows = num_monomials((d + e) as i64);
    let source = monomial_basis(d);
    let mut m = Matrix::zeros(field, rows, source.len());
    for (col, mono) in source.iter().enumerate() {
        for (n, c) in f.terms(field) {
            m.set(mono.times(&n).index(), col, c.clone());
        }
    }
    m
}

/// Every coefficient independent and uniform over the field.
pub fn random_homog<F: Field, R: Rng + ?Sized>(
    field: &F,
    d: usize,
    rng: &mut R,
) -> HomogPoly<F::Elem> {
    HomogPoly {
        degree: d,
        coeffs: (0..num_monomials(d as i64))
            .map(|_| field.sample(rng))
            .collect(),
    }
}

/// A binary form in `s, t`; `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> BinaryForm<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "binary form needs at least one coefficient"
        );
        BinaryForm { coeffs }
    }

    pub fn constant(c: E) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        BinaryForm { coeffs: out }
    }
}

/// Matrix of `h ↦ g·h` from `S_d` to `S_{d+e}` for `S = K[s, t]`.
pub fn binary_mult_matrix<F: Field>(
    field: &F,
    g: &BinaryForm<F::Elem>,
    d: usize,
) -> Matrix<F::Elem> {
    let e = g.degree();
    let mut m = Matrix::zeros(field, d + e + 1, d + 1);
    for col in 0..=d {
        for (i, c) in g.coeffs().iter().enumerate() {
            m.set(col + i, col, c.clone());
        }
    }
    m
}

/// The line through two points, parametrized as `[s : t] ↦ s·P0 + t·P1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineParam<E> {
    pub p0: [E; 3],
    pub p1: [E; 3],
}

impl<E: Clone> LineParam<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, p0: [E; 3], p1: [E; 3]) -> Result<Self> {
        let line = LineParam { p0, p1 };
        if !line.is_valid(field) {
            return Err(Error::Degree("line points are linearly dependent".into()));
        }
        Ok(line)
    }

    /// A uniformly random line; dependent point pairs are redrawn.
    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(field: &F, rng: &mut R) -> Self {
        loop {
            let p0 = [field.sample(rng), field.sample(rng), field.sample(rng)];
            let p1 = [field.sample(rng), field.sample(rng), field.sample(rng)];
            let line = LineParam { p0, p1 };
            if line.is_valid(field) {
                return line;
            }
        }
    }

    fn is_valid<F: Field<Elem = E>>(&self, field: &F) -> bool {
        let (a, b) = (&self.p0, &self.p1);
        let minor =
            |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
        !(field.is_zero(&minor(0, 1)) && field.is_zero(&minor(0, 2)) && field.is_zero(&minor(1, 2)))
    }

    /// The restriction of each coordinate to the line, as linear binary forms.
    fn coordinate_forms(&self) -> [BinaryForm<E>; 3] {
        std::array::from_fn(|v| BinaryForm::new(vec![self.p0[v].clone(), self.p1[v].clone()]))
    }
}

/// Substitutes the line parametrization into `f`.
pub fn restrict_to_line<F: Field>(
    field: &F,
    f: &HomogPoly<F::Elem>,
    line: &LineParam<F::Elem>,
) -> BinaryForm<F::Elem> {
    let d = f.degree();
    let coords = line.coordinate_forms();
    let powers: Vec<Vec<BinaryForm<F::Elem>>> = coords
        .iter()
        .map(|c| {
            let mut pw = vec![BinaryForm::constant(field.one())];
            for k in 1..=d {
                let next = pw[k - 1].mul(field, c);
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut acc = vec![field.zero(); d + 1];
    for (m, c) in f.terms(field) {
        let [i, j, k] = m.exps;
        let term = powers[0][i]
            .mul(field, &powers[1][j])
            .mul(field, &powers[2][k]);
        for (slot, x) in acc.iter_mut().zip(term.coeffs()) {
            *slot = field.add(slot, &field.mul(c, x));
        }
    }
    BinaryForm::new(acc)
}
