use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::cyclo::{sparse_rank, CycloMatrix, CyclotomicNumber, Rational};

use super::dunkl::{DunklError, DunklRep};
use super::operator::{count_upto, LinearOperator};
use super::poly::{monomials_of_degree, Exponent, Poly};

/// Outcome of one family of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Highest input degree on which the relation was tested.
    pub verified_degree: i64,
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Fitted coefficient of the mixed relation on one class of reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaFit {
    pub representative: usize,
    pub class_size: usize,
    pub c: Rational,
    pub kappa: Option<CyclotomicNumber>,
    /// `κ(s)/c(s)`, present when `c ≠ 0` and the fit succeeded.
    pub ratio: Option<CyclotomicNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    pub checks: Vec<RelationCheck>,
    pub kappa: Vec<KappaFit>,
    /// The κ values are uniquely determined by the operator data.
    pub kappa_unique: bool,
}

impl CommutationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn relation(name: &'static str, outcomes: Vec<(bool, i64, String)>) -> RelationCheck {
    let verified_degree = outcomes.iter().map(|o| o.1).min().unwrap_or(-1);
    let cases = outcomes.len();
    let failures: Vec<String> = outcomes.into_iter().filter(|o| !o.0).map(|o| o.2).collect();
    RelationCheck { name, passed: failures.is_empty(), verified_degree, cases, failures }
}

/// Check the defining relations of `H_{t,c}` on the truncated polynomial representation.
///
/// (a) `[D_y, D_y'] = 0`, (b) `[x_u, x_u'] = 0`, (c) `g D_y g⁻¹ = D_{gy}` for generators,
/// (d) `[D_y, x_u] = t⟨y,u⟩ + Σ_s κ(s) α_s(y) u(α_s^∨) s` with one fitted `κ` per class,
/// and (e) when `c ≡ 0`, `D_y = t ∂_y`.
pub fn verify_commutation_relations(rep: &DunklRep<'_>) -> Result<CommutationReport, DunklError> {
    let n = rep.dim();
    let units: Vec<Vec<CyclotomicNumber>> = (0..n).map(|i| rep.unit_vector(i)).collect();
    let dunkl: Vec<LinearOperator> = units.iter().map(|y| rep.dunkl_operator(y)).collect::<Result<_, _>>()?;
    let mult: Vec<LinearOperator> = units.iter().map(|u| rep.multiplication_operator(u)).collect::<Result<_, _>>()?;
    let group = rep.group();

    let mut checks = Vec::new();

    let mut a = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = dunkl[i].commutator(&dunkl[j]);
            a.push((c.is_zero(), c.domain_degree(), format!("[D_{}, D_{}]", i + 1, j + 1)));
        }
    }
    checks.push(relation("dunkl-commute", a));

    let mut b = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = mult[i].commutator(&mult[j]);
            b.push((c.is_zero(), c.domain_degree(), format!("[x_{}, x_{}]", i + 1, j + 1)));
        }
    }
    checks.push(relation("coordinates-commute", b));

    let mut c = Vec::new();
    for &g in group.generator_indices() {
        let gop = rep.group_operator(g);
        let ginv = rep.group_operator(group.inverse(g));
        for (i, y) in units.iter().enumerate() {
            let lhs = gop.compose(&dunkl[i]).compose(&ginv);
            let gy = group.element(g).apply(y);
            let rhs = rep.dunkl_operator(&gy)?;
            let d = lhs.sub(&rhs);
            c.push((d.is_zero(), d.domain_degree(), format!("g{g} D_{} g^-1 = D_(g y)", i + 1)));
        }
    }
    checks.push(relation("equivariance", c));

    let (mixed, kappa, kappa_unique) = fit_mixed_relation(rep, &dunkl, &mult)?;
    checks.push(mixed);

    if rep.classes().iter().all(|cl| cl.c.is_zero()) {
        let mut deg = Vec::new();
        for (i, y) in units.iter().enumerate() {
            let d = dunkl[i].sub(&rep.derivative_operator(y)?);
            deg.push((d.is_zero(), d.domain_degree(), format!("D_{} = t d/dx_{}", i + 1, i + 1)));
        }
        checks.push(relation("c0-derivative", deg));
    }
    Ok(CommutationReport { checks, kappa, kappa_unique })
}

fn fit_mixed_relation(
    rep: &DunklRep<'_>,
    dunkl: &[LinearOperator],
    mult: &[LinearOperator],
) -> Result<(RelationCheck, Vec<KappaFit>, bool), DunklError> {
    let n = rep.dim();
    let e = rep.conductor();
    let cap = rep.cap() as i64;
    let (d, cod) = (cap - 1, cap);
    let refl = rep.reflections();
    let classes = rep.classes();
    let t = CyclotomicNumber::from_rational(rep.t().clone(), e);
    let identity = LinearOperator::identity(n, cap, e);
    let group_ops: HashMap<usize, Vec<CyclotomicNumber>> =
        refl.reflections.iter().map(|r| (r.element, rep.group_operator(r.element).flatten(d, cod))).collect();
    let class_of = |elem: usize| classes.iter().position(|cl| cl.members.contains(&elem)).expect("reflection class");

    let block = count_upto(n, d) * count_upto(n, cod);
    let rows = block * n * n;
    let k = classes.len();
    let mut system = CycloMatrix::zero(rows, k, e);
    let mut rhs = vec![CyclotomicNumber::zero(e); rows];
    let mut verified = i64::MAX;
    for i in 0..n {
        for j in 0..n {
            let mut target = dunkl[i].commutator(&mult[j]);
            verified = verified.min(target.domain_degree());
            if i == j {
                target = target.sub(&identity.scale(&t));
            }
            let offset = (i * n + j) * block;
            for (r, v) in target.flatten(d, cod).into_iter().enumerate() {
                rhs[offset + r] = v;
            }
            for rd in &refl.reflections {
                let w = &rd.coroot[i] * &rd.root[j];
                if w.is_zero() {
                    continue;
                }
                let col = class_of(rd.element);
                for (r, v) in group_ops[&rd.element].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let cur = system.get(offset + r, col) + &(&w * v);
                    system.set(offset + r, col, cur);
                }
            }
        }
    }
    let unique = system.rank() == k;
    let solution = system.solve(&rhs);
    let check = RelationCheck {
        name: "mixed",
        passed: solution.is_some(),
        verified_degree: verified,
        cases: n * n,
        failures: if solution.is_some() { Vec::new() } else { vec!["no κ fits [D_y, x_u] - t<y,u>".into()] },
    };
    let kappa = classes
        .iter()
        .enumerate()
        .map(|(ci, cl)| {
            let kap = solution.as_ref().map(|s| s[ci].clone());
            let ratio = match (&kap, cl.c.is_zero()) {
                (Some(kv), false) => Some(kv * &CyclotomicNumber::from_rational(cl.c.clone(), e).inv().expect("nonzero c")),
                _ => None,
            };
            KappaFit { representative: cl.representative, class_size: cl.members.len(), c: cl.c.clone(), kappa: kap, ratio }
        })
        .collect();
    Ok((check, kappa, unique))
}

/// Rank of the normal-ordered words `x^a D^b g` on `C[h]_{≤D}` against the smash-product count.
///
/// `baseline_rank` is the same rank at `c = 0`. The predicted count is only reached once
/// `D` is large enough for the level; below that both ranks fall short together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub level: usize,
    pub degree_cap: usize,
    pub predicted: usize,
    pub rank: usize,
    pub baseline_rank: usize,
}

impl PbwReport {
    pub fn matches(&self) -> bool {
        self.predicted == self.rank
    }

    /// The deformed rank equals the undeformed one.
    pub fn flat(&self) -> bool {
        self.rank == self.baseline_rank
    }
}

fn multi_indices(n: usize, max: usize) -> Vec<Exponent> {
    (0..=max).flat_map(|k| monomials_of_degree(n, k)).collect()
}

pub fn pbw_spot_check(rep: &DunklRep<'_>, level: usize) -> Result<PbwReport, DunklError> {
    let (predicted, rank) = word_rank(rep, level)?;
    let baseline_rank = if rep.classes().iter().all(|c| c.c.is_zero()) {
        rank
    } else {
        let flat = DunklRep::uniform(rep.group(), rep.t().clone(), Rational::zero(), rep.cap());
        word_rank(&flat, level)?.1
    };
    Ok(PbwReport { level, degree_cap: rep.cap(), predicted, rank, baseline_rank })
}

fn word_rank(rep: &DunklRep<'_>, level: usize) -> Result<(usize, usize), DunklError> {
    let n = rep.dim();
    let e = rep.conductor();
    let cap = rep.cap();
    let group = rep.group();
    let xs = multi_indices(n, cap.saturating_sub(level));
    let ds = multi_indices(n, level.min(cap));
    let units: Vec<Vec<CyclotomicNumber>> = (0..n).map(|i| rep.unit_vector(i)).collect();
    let inputs: Vec<Poly> = rep
        .basis()
        .monomials()
        .iter()
        .map(|m| Poly::monomial(m.clone(), CyclotomicNumber::one(e)))
        .collect();

    // D^b g applied to every input, then x^a on top.
    let mut columns: HashMap<(usize, Exponent), usize> = HashMap::new();
    // A word x^a D^b g shifts degree by |a| - |b|, so rows split into independent blocks.
    let mut blocks: BTreeMap<i64, Vec<Vec<(usize, CyclotomicNumber)>>> = BTreeMap::new();
    for g in 0..group.order() {
        let moved: Vec<Poly> = inputs.iter().map(|p| rep.act(g, p)).collect();
        for b in &ds {
            let mut applied = moved.clone();
            for (i, &bi) in b.iter().enumerate() {
                for _ in 0..bi {
                    applied = applied.iter().map(|p| rep.apply(&units[i], p)).collect::<Result<_, _>>()?;
                }
            }
            for a in &xs {
                let xa = Poly::monomial(a.clone(), CyclotomicNumber::one(e));
                let mut row = Vec::new();
                for (j, p) in applied.iter().enumerate() {
                    for (m, c) in p.mul(&xa).terms() {
                        let next = columns.len();
                        let col = *columns.entry((j, m.clone())).or_insert(next);
                        row.push((col, c.clone()));
                    }
                }
                let shift = a.iter().sum::<u32>() as i64 - b.iter().sum::<u32>() as i64;
                blocks.entry(shift).or_default().push(row);
            }
        }
    }
    let rank = blocks.values().map(|rows| sparse_rank(rows)).sum();
    let predicted = xs.len() * ds.len() * group.order();
    Ok((predicted, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{int, rat};
    use crate::group::catalog::*;

    #[test]
    fn z2_relations_and_kappa() {
        let g = z2();
        for c in [int(0), rat(1, 3), int(2)] {
            let rep = DunklRep::uniform(&g, int(1), c.clone(), 6);
            let r = verify_commutation_relations(&rep).unwrap();
            assert!(r.all_passed(), "{r:?}");
            assert_eq!(r.kappa.len(), 1);
            let kappa = r.kappa[0].kappa.clone().unwrap();
            assert_eq!(kappa, CyclotomicNumber::from_rational(-c.clone(), g.conductor()));
            if !c.is_zero() {
                assert_eq!(r.kappa[0].ratio.clone().unwrap(), CyclotomicNumber::from_int(-1, g.conductor()));
            } else {
                assert!(r.check("c0-derivative").unwrap().passed);
            }
        }
    }

    #[test]
    fn s3_dunkl_operators_commute() {
        let g = s3_refl();
        let rep = DunklRep::uniform(&g, int(1), int(1), 5);
        let r = verify_commutation_relations(&rep).unwrap();
        assert!(r.check("dunkl-commute").unwrap().passed);
        assert!(r.all_passed(), "{r:?}");
        assert!(r.kappa_unique);
        assert_eq!(r.kappa[0].ratio.clone().unwrap(), CyclotomicNumber::from_int(-1, g.conductor()));
    }

    #[test]
    fn conjugated_operator_is_not_the_original() {
        let g = s3_refl();
        let rep = DunklRep::uniform(&g, int(1), int(1), 3);
        let y = rep.unit_vector(0);
        let s = g.generator_indices()[0];
        let gy = g.element(s).apply(&y);
        assert_ne!(gy, y);
        let lhs = rep.group_operator(s).compose(&rep.dunkl_operator(&y).unwrap()).compose(&rep.group_operator(g.inverse(s)));
        assert!(!lhs.agrees_with(&rep.dunkl_operator(&y).unwrap()));
        assert!(lhs.agrees_with(&rep.dunkl_operator(&gy).unwrap()));
    }

    #[test]
    fn pbw_counts_for_z2() {
        let g = z2();
        for c in [int(0), rat(1, 3)] {
            let rep = DunklRep::uniform(&g, int(1), c, 4);
            let r0 = pbw_spot_check(&rep, 0).unwrap();
            assert_eq!(r0.predicted, 5 * 2);
            assert!(r0.matches());
            let r1 = pbw_spot_check(&rep, 1).unwrap();
            assert_eq!(r1.predicted, 4 * 2 * 2);
            assert!(r1.matches(), "{r1:?}");
            assert!(r1.flat());
        }
    }
}
