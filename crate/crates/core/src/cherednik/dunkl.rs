use num_traits::Zero;
use thiserror::Error;

use crate::cyclo::{dot, int, CycloMatrix, CyclotomicNumber, Rational};
use crate::group::{FiniteMatrixGroup, ReflectionSet};

use super::operator::LinearOperator;
use super::poly::{MonomialBasis, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DunklError {
    #[error("(s - 1)f is not divisible by the root form of reflection {reflection} (input {input})")]
    DivisionFailure { reflection: usize, input: String },
    #[error("element {0} is not a reflection")]
    NotAReflection(usize),
    #[error("parameter c is not conjugation invariant: class of element {0} assigned twice with different values")]
    NonInvariantParameter(usize),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("image of basis monomial {0} leaves the truncation")]
    Overflow(usize),
}

/// A conjugacy class of reflections together with its parameter `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub c: Rational,
}

/// The polynomial representation of `H_{t,c}(h, G)` through Dunkl operators, truncated at degree `D`.
pub struct DunklRep<'g> {
    group: &'g FiniteMatrixGroup,
    refl: ReflectionSet,
    t: Rational,
    classes: Vec<ReflectionClass>,
    /// `c(s)` aligned with `refl.reflections`.
    c_of: Vec<Rational>,
    cap: usize,
    basis: MonomialBasis,
    inverses: Vec<CycloMatrix>,
}

impl<'g> DunklRep<'g> {
    /// `assignments` pairs any member of a reflection class with its `c` value;
    /// unassigned classes get `c = 0`.
    pub fn new(
        group: &'g FiniteMatrixGroup,
        t: Rational,
        assignments: &[(usize, Rational)],
        cap: usize,
    ) -> Result<Self, DunklError> {
        let refl = group.find_reflections();
        let all = group.conjugacy_classes();
        let lookup = group.class_lookup(&all);
        let mut classes: Vec<ReflectionClass> = Vec::new();
        let mut class_slot = vec![usize::MAX; all.len()];
        for r in &refl.reflections {
            let ci = lookup[r.element];
            if class_slot[ci] == usize::MAX {
                class_slot[ci] = classes.len();
                classes.push(ReflectionClass {
                    representative: all[ci].representative,
                    members: all[ci].members.clone(),
                    c: Rational::zero(),
                });
            }
        }
        let mut assigned = vec![false; classes.len()];
        for (elem, value) in assignments {
            if *elem >= group.order() || refl.by_element(*elem).is_none() {
                return Err(DunklError::NotAReflection(*elem));
            }
            let slot = class_slot[lookup[*elem]];
            if assigned[slot] && classes[slot].c != *value {
                return Err(DunklError::NonInvariantParameter(classes[slot].representative));
            }
            assigned[slot] = true;
            classes[slot].c = value.clone();
        }
        let c_of = refl.reflections.iter().map(|r| classes[class_slot[lookup[r.element]]].c.clone()).collect();
        let inverses = (0..group.order()).map(|i| group.element(group.inverse(i)).clone()).collect();
        Ok(Self { group, refl, t, classes, c_of, cap, basis: MonomialBasis::new(group.dim(), cap), inverses })
    }

    /// The same `c` on every reflection class.
    pub fn uniform(group: &'g FiniteMatrixGroup, t: Rational, c: Rational, cap: usize) -> Self {
        let refl = group.find_reflections();
        let assignments: Vec<(usize, Rational)> = refl.reflections.iter().map(|r| (r.element, c.clone())).collect();
        Self::new(group, t, &assignments, cap).expect("uniform parameter is invariant")
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        self.group
    }

    pub fn reflections(&self) -> &ReflectionSet {
        &self.refl
    }

    pub fn classes(&self) -> &[ReflectionClass] {
        &self.classes
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    fn scalar(&self, q: &Rational) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(q.clone(), self.conductor())
    }

    /// `(g·f)(v) = f(g⁻¹ v)`.
    pub fn act(&self, g: usize, f: &Poly) -> Poly {
        f.substitute(&self.inverses[g])
    }

    fn check_vector(&self, y: &[CyclotomicNumber]) -> Result<(), DunklError> {
        if y.len() != self.dim() {
            return Err(DunklError::DimensionMismatch { expected: self.dim(), got: y.len() });
        }
        Ok(())
    }

    /// `D_y f = t ∂_y f + Σ_s 2c(s)/(1 − λ_s) · α_s(y) · (s·f − f)/α_s`.
    pub fn apply(&self, y: &[CyclotomicNumber], f: &Poly) -> Result<Poly, DunklError> {
        self.check_vector(y)?;
        let e = self.conductor();
        let mut out = f.directional(y).scale(&self.scalar(&self.t));
        let one = CyclotomicNumber::one(e);
        for (r, c) in self.refl.reflections.iter().zip(&self.c_of) {
            if c.is_zero() {
                continue;
            }
            let ay = dot(&r.coroot, y);
            if ay.is_zero() {
                continue;
            }
            let diff = self.act(r.element, f).sub(f);
            let quotient = diff
                .div_linear(&r.coroot)
                .ok_or_else(|| DunklError::DivisionFailure { reflection: r.element, input: format!("{f:?}") })?;
            let denom = (&one - &r.eigenvalue).inv().expect("reflection eigenvalue differs from 1");
            let coef = &(&self.scalar(&(c * int(2))) * &denom) * &ay;
            out = out.add(&quotient.scale(&coef));
        }
        Ok(out)
    }

    pub fn dunkl_operator(&self, y: &[CyclotomicNumber]) -> Result<LinearOperator, DunklError> {
        self.check_vector(y)?;
        LinearOperator::from_fn(&self.basis, self.conductor(), self.cap as i64, -1, |p| self.apply(y, p), DunklError::Overflow)
    }

    /// `t ∂_y`, the `c = 0` operator.
    pub fn derivative_operator(&self, y: &[CyclotomicNumber]) -> Result<LinearOperator, DunklError> {
        self.check_vector(y)?;
        let t = self.scalar(&self.t);
        LinearOperator::from_fn(&self.basis, self.conductor(), self.cap as i64, -1, |p| Ok(p.directional(y).scale(&t)), DunklError::Overflow)
    }

    pub fn group_operator(&self, g: usize) -> LinearOperator {
        LinearOperator::from_fn(&self.basis, self.conductor(), self.cap as i64, 0, |p| Ok::<_, DunklError>(self.act(g, p)), DunklError::Overflow)
            .expect("group action preserves degree")
    }

    /// Multiplication by the linear form `u`, honest on degrees `≤ D − 1`.
    pub fn multiplication_operator(&self, u: &[CyclotomicNumber]) -> Result<LinearOperator, DunklError> {
        self.check_vector(u)?;
        let form = Poly::linear(u, self.conductor());
        LinearOperator::from_fn(&self.basis, self.conductor(), self.cap as i64 - 1, 1, |p| Ok(p.mul(&form)), DunklError::Overflow)
    }

    pub(crate) fn unit_vector(&self, i: usize) -> Vec<CyclotomicNumber> {
        let e = self.conductor();
        (0..self.dim()).map(|j| if i == j { CyclotomicNumber::one(e) } else { CyclotomicNumber::zero(e) }).collect()
    }
}

pub fn dunkl_operator(rep: &DunklRep<'_>, y: &[CyclotomicNumber]) -> Result<LinearOperator, DunklError> {
    rep.dunkl_operator(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::group::catalog::*;

    fn num(q: Rational, e: u32) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(q, e)
    }

    #[test]
    fn z2_values_match_direct_expansion() {
        let g = z2();
        let e = g.conductor();
        let gamma = rat(1, 3);
        let rep = DunklRep::uniform(&g, int(1), gamma.clone(), 6);
        let y = vec![num(int(1), e)];
        let x = Poly::variable(0, 1, e);
        // (s - 1)x^k = ((-1)^k - 1) x^k, so D(x^k) = (k + γ((-1)^k - 1)) x^{k-1}.
        for k in 1..6u32 {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let want = x.pow(k - 1).scale(&num(int(k as i64) + &gamma * (sign - int(1)), e));
            assert_eq!(rep.apply(&y, &x.pow(k)).unwrap(), want, "k = {k}");
        }
        let one = Poly::constant(num(int(1), e), 1);
        assert!(rep.apply(&y, &one).unwrap().is_zero());
    }

    #[test]
    fn zero_parameter_is_the_derivative() {
        let g = z2();
        let rep = DunklRep::uniform(&g, int(1), int(0), 5);
        let y = vec![CyclotomicNumber::one(g.conductor())];
        assert_eq!(rep.dunkl_operator(&y).unwrap(), rep.derivative_operator(&y).unwrap());
    }

    #[test]
    fn zero_vector_gives_zero_operator() {
        let g = s3_refl();
        let rep = DunklRep::uniform(&g, int(1), int(1), 4);
        let y = vec![CyclotomicNumber::zero(g.conductor()); 2];
        assert!(rep.dunkl_operator(&y).unwrap().is_zero());
    }

    #[test]
    fn parameter_validation() {
        let g = s3_refl();
        let refl = g.find_reflections();
        let (a, b) = (refl.reflections[0].element, refl.reflections[1].element);
        assert!(DunklRep::new(&g, int(1), &[(a, int(1)), (b, int(1))], 3).is_ok());
        assert!(matches!(
            DunklRep::new(&g, int(1), &[(a, int(1)), (b, int(2))], 3),
            Err(DunklError::NonInvariantParameter(_))
        ));
        assert!(matches!(DunklRep::new(&g, int(1), &[(0, int(1))], 3), Err(DunklError::NotAReflection(0))));
        let rep = DunklRep::new(&g, int(1), &[(a, rat(1, 2))], 3).unwrap();
        assert_eq!(rep.classes().len(), 1);
        assert_eq!(rep.classes()[0].c, rat(1, 2));
    }
}
