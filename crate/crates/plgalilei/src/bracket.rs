//! Fundamental Poisson brackets of the group coordinates: an oracle computed
//! directly from the defining bivector contraction, the closed-form bracket
//! table, and pointwise Jacobi verification.
//!
//! The oracle is authoritative: it contracts the bivector field with
//! right-invariant derivatives of arbitrary observables and is valid for
//! every parameter set. The closed table is the cross-checked convenience
//! layer; it assumes the rotation-rotation block of the field vanishes, which
//! holds exactly when `n = 0`.

use crate::dual::Dual;
use crate::eta::{eval_eta, eval_eta_matrix, EtaLifted, EtaParameters, Formula};
use crate::group::{compose, exp_generator, GroupElement, DIM};
use crate::linalg::{eps, Mat3, Vec3};
use crate::scalar::{Ring, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One of the sixteen coordinate functions on the group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coordinate {
    /// Time translation coordinate `t`.
    Time,
    /// Space translation coordinate `a_i` (index 0-2).
    Space(usize),
    /// Boost coordinate `v_i` (index 0-2).
    Boost(usize),
    /// Rotation matrix entry `R_ij` (indices 0-2).
    Rotation(usize, usize),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Time => write!(f, "t"),
            Coordinate::Space(i) => write!(f, "a{}", i + 1),
            Coordinate::Boost(i) => write!(f, "v{}", i + 1),
            Coordinate::Rotation(i, j) => write!(f, "R{}{}", i + 1, j + 1),
        }
    }
}

impl std::str::FromStr for Coordinate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        all_coordinates()
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown coordinate {s}"))
    }
}

/// All sixteen coordinates in display order.
pub fn all_coordinates() -> Vec<Coordinate> {
    let mut out = vec![Coordinate::Time];
    out.extend((0..3).map(Coordinate::Space));
    out.extend((0..3).map(Coordinate::Boost));
    for i in 0..3 {
        for j in 0..3 {
            out.push(Coordinate::Rotation(i, j));
        }
    }
    out
}

/// Evaluate a coordinate function at a group point over any ring.
pub fn coordinate_value<T: Ring>(g: &GroupElement<T>, c: Coordinate) -> T {
    match c {
        Coordinate::Time => g.t.clone(),
        Coordinate::Space(i) => g.a[i].clone(),
        Coordinate::Boost(i) => g.v[i].clone(),
        Coordinate::Rotation(i, j) => g.r[i][j].clone(),
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BracketError {
    #[error("closed-form bracket table requires n = 0 (nonzero n gives the rotation sector nonzero brackets; use the oracle)")]
    ClosedFormInapplicable,
}

/// The flow of generator `k` through `g`, lifted to dual numbers: evaluating
/// an observable here and taking the derivative part is the right-invariant
/// derivative along `X_k`.
fn jet_through<T: Ring>(k: usize, g: &GroupElement<T>) -> GroupElement<Dual<T>> {
    compose(&exp_generator(k, Dual::seed(T::zero())), &g.lift())
}

/// Poisson bracket of two arbitrary observables from the defining
/// contraction: `{f, h}(g) = sum_ij eta^ij(g) (X^_i f)(g) (X^_j h)(g)`.
/// Valid for every parameter set, including `n != 0`.
pub fn bracket_oracle_general(
    p: &EtaParameters,
    g: &GroupElement<Scalar>,
    f: &dyn Fn(&GroupElement<Dual<Scalar>>) -> Dual<Scalar>,
    h: &dyn Fn(&GroupElement<Dual<Scalar>>) -> Dual<Scalar>,
) -> Scalar {
    let m = eval_eta_matrix(p, g, Formula::Corrected);
    let jets: Vec<GroupElement<Dual<Scalar>>> = (0..DIM).map(|k| jet_through(k, g)).collect();
    let mut total = Scalar::zero();
    for i in 0..DIM {
        let xf = f(&jets[i]).du;
        if xf.is_zero() {
            continue;
        }
        for j in 0..DIM {
            if m[i][j].is_zero() {
                continue;
            }
            total = total + &m[i][j] * &xf * h(&jets[j]).du;
        }
    }
    total
}

/// Poisson bracket of two coordinate functions from the defining contraction.
pub fn bracket_oracle(
    f: Coordinate,
    h: Coordinate,
    p: &EtaParameters,
    g: &GroupElement<Scalar>,
) -> Scalar {
    bracket_oracle_general(p, g, &|gd| coordinate_value(gd, f), &|gd| coordinate_value(gd, h))
}

/// The nine weighted component blocks of the bivector field at a point, read
/// off the antisymmetric coefficient matrix (axial blocks via the quarter-
/// epsilon contraction).
struct Components<T: Ring> {
    psi: Vec3<T>,
    phi: Vec3<T>,
    gam: Vec3<T>,
    lam: Vec3<T>,
    ups: Mat3<T>,
    sig: Mat3<T>,
    xi: Vec3<T>,
    om: Mat3<T>,
}

fn components_at<T: Ring>(p: &EtaLifted<T>, g: &GroupElement<T>) -> Components<T> {
    let m = eval_eta(p, g, Formula::Corrected).to_matrix();
    let axial = |base: usize| -> Vec3<T> {
        std::array::from_fn(|i| {
            let mut acc = T::zero();
            for j in 0..3 {
                for k in 0..3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        acc = acc + T::frac(e, 4) * m[base + j][base + k].clone();
                    }
                }
            }
            acc
        })
    };
    Components {
        psi: std::array::from_fn(|i| m[0][7 + i].clone()),
        phi: std::array::from_fn(|i| m[0][1 + i].clone()),
        gam: std::array::from_fn(|i| m[0][4 + i].clone()),
        lam: axial(1),
        ups: std::array::from_fn(|i| std::array::from_fn(|j| m[1 + i][4 + j].clone())),
        sig: std::array::from_fn(|i| std::array::from_fn(|j| m[1 + i][7 + j].clone())),
        xi: axial(4),
        om: std::array::from_fn(|i| std::array::from_fn(|j| m[4 + i][7 + j].clone())),
    }
}

/// `sum_{j,l} eps_{bjl} x_l blk_j` helper for the recurring epsilon sums.
fn eps_contract<T: Ring>(b: usize, x: &Vec3<T>, blk: &dyn Fn(usize) -> T) -> T {
    let mut acc = T::zero();
    for j in 0..3 {
        for l in 0..3 {
            let e = eps(b, j, l);
            if e != 0 {
                acc = acc + T::from_int(e) * x[l].clone() * blk(j);
            }
        }
    }
    acc
}

fn axial_pair<T: Ring>(a: usize, b: usize, x: &Vec3<T>) -> T {
    let mut acc = T::zero();
    for j in 0..3 {
        let e = eps(a, b, j);
        if e != 0 {
            acc = acc + T::from_int(e) * x[j].clone();
        }
    }
    acc
}

fn rank(c: Coordinate) -> u8 {
    match c {
        Coordinate::Time => 0,
        Coordinate::Space(_) => 1,
        Coordinate::Boost(_) => 2,
        Coordinate::Rotation(_, _) => 3,
    }
}

/// Closed-form bracket of two coordinates at a point, as a polynomial in the
/// coordinates and the bivector components. Assumes the rotation-rotation
/// block vanishes (`n = 0`).
fn closed_bracket<T: Ring>(c: &Components<T>, g: &GroupElement<T>, f: Coordinate, h: Coordinate) -> T {
    if rank(f) > rank(h) {
        return -closed_bracket(c, g, h, f);
    }
    let two = T::from_int(2);
    match (f, h) {
        (Coordinate::Rotation(_, _), Coordinate::Rotation(_, _)) => T::zero(),
        (Coordinate::Boost(a), Coordinate::Rotation(b, d)) => {
            let col: Vec3<T> = std::array::from_fn(|l| g.r[l][d].clone());
            eps_contract(b, &col, &|j| c.om[a][j].clone())
        }
        (Coordinate::Space(a), Coordinate::Rotation(b, d)) => {
            let col: Vec3<T> = std::array::from_fn(|l| g.r[l][d].clone());
            eps_contract(b, &col, &|j| c.sig[a][j].clone() + g.t.clone() * c.om[a][j].clone())
        }
        (Coordinate::Time, Coordinate::Rotation(b, d)) => {
            let col: Vec3<T> = std::array::from_fn(|l| g.r[l][d].clone());
            eps_contract(b, &col, &|j| c.psi[j].clone())
        }
        (Coordinate::Time, Coordinate::Boost(a)) => {
            c.gam[a].clone() + eps_contract(a, &g.v, &|j| c.psi[j].clone())
        }
        (Coordinate::Boost(a), Coordinate::Boost(b)) => {
            two * axial_pair(a, b, &c.xi)
                + eps_contract(b, &g.v, &|j| c.om[a][j].clone())
                - eps_contract(a, &g.v, &|j| c.om[b][j].clone())
        }
        (Coordinate::Space(a), Coordinate::Boost(b)) => {
            c.ups[a][b].clone()
                + eps_contract(b, &g.v, &|j| c.sig[a][j].clone())
                + two.clone() * g.t.clone() * axial_pair(a, b, &c.xi)
                + g.t.clone() * eps_contract(b, &g.v, &|j| c.om[a][j].clone())
                - eps_contract(a, &g.a, &|j| c.om[b][j].clone())
        }
        (Coordinate::Space(a), Coordinate::Space(b)) => {
            two.clone() * axial_pair(a, b, &c.lam)
                + g.t.clone() * c.ups[a][b].clone()
                - g.t.clone() * c.ups[b][a].clone()
                + two * g.t.clone() * g.t.clone() * axial_pair(a, b, &c.xi)
                + eps_contract(b, &g.a, &|j| c.sig[a][j].clone())
                - eps_contract(a, &g.a, &|j| c.sig[b][j].clone())
                + g.t.clone() * eps_contract(b, &g.a, &|j| c.om[a][j].clone())
                - g.t.clone() * eps_contract(a, &g.a, &|j| c.om[b][j].clone())
        }
        (Coordinate::Time, Coordinate::Space(a)) => {
            c.phi[a].clone()
                + g.t.clone() * c.gam[a].clone()
                + eps_contract(a, &g.a, &|j| c.psi[j].clone())
        }
        (Coordinate::Time, Coordinate::Time) => T::zero(),
        _ => unreachable!("ranks are ordered"),
    }
}

/// The full antisymmetric table of coordinate brackets at a point, keyed by
/// `{f,h}` coordinate-pair strings.
#[derive(Serialize, Debug)]
pub struct BracketTable {
    pub entries: BTreeMap<String, Scalar>,
}

impl BracketTable {
    pub fn get(&self, f: Coordinate, h: Coordinate) -> &Scalar {
        &self.entries[&format!("{{{f},{h}}}")]
    }
}

/// Evaluate every closed-form coordinate bracket at `g`. Errors when
/// `n != 0`, where the closed table does not apply (use the oracle).
pub fn bracket_table_closed(
    p: &EtaParameters,
    g: &GroupElement<Scalar>,
) -> Result<BracketTable, BracketError> {
    if !p.n.iter().all(Scalar::is_zero) {
        return Err(BracketError::ClosedFormInapplicable);
    }
    let c = components_at(&p.lift::<Scalar>(), g);
    let coords = all_coordinates();
    let mut entries = BTreeMap::new();
    for &f in &coords {
        for &h in &coords {
            entries.insert(format!("{{{f},{h}}}"), closed_bracket(&c, g, f, h));
        }
    }
    Ok(BracketTable { entries })
}

/// One closed-form bracket entry at a point, without building the full table.
pub fn closed_bracket_entry(
    p: &EtaParameters,
    g: &GroupElement<Scalar>,
    f: Coordinate,
    h: Coordinate,
) -> Result<Scalar, BracketError> {
    if !p.n.iter().all(Scalar::is_zero) {
        return Err(BracketError::ClosedFormInapplicable);
    }
    let c = components_at(&p.lift::<Scalar>(), g);
    Ok(closed_bracket(&c, g, f, h))
}

/// Precomputed state for pointwise Jacobi residuals at a fixed `(p, g)`: the
/// coefficient matrix at `g` and, for each of the ten flow directions, the
/// dual-lifted point and the bivector components there.
pub struct JacobiContext {
    matrix: crate::linalg::Mat10<Scalar>,
    jets: Vec<(GroupElement<Dual<Scalar>>, Components<Dual<Scalar>>)>,
}

impl JacobiContext {
    pub fn new(p: &EtaParameters, g: &GroupElement<Scalar>) -> Result<Self, BracketError> {
        if !p.n.iter().all(Scalar::is_zero) {
            return Err(BracketError::ClosedFormInapplicable);
        }
        let lifted: EtaLifted<Dual<Scalar>> = p.lift();
        let jets = (0..DIM)
            .map(|k| {
                let gd = jet_through(k, g);
                let comp = components_at(&lifted, &gd);
                (gd, comp)
            })
            .collect();
        Ok(JacobiContext { matrix: eval_eta_matrix(p, g, Formula::Corrected), jets })
    }

    /// `sum_cyc {f, {h, k}}` at the context point: the inner bracket is the
    /// closed-form polynomial, differentiated through dual coordinates.
    pub fn residual(&self, triple: [Coordinate; 3]) -> Scalar {
        let [a, b, c] = triple;
        let mut total = Scalar::zero();
        for (f, h, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            for i in 0..DIM {
                let xf = coordinate_value(&self.jets[i].0, f).du;
                if xf.is_zero() {
                    continue;
                }
                for j in 0..DIM {
                    if self.matrix[i][j].is_zero() {
                        continue;
                    }
                    let inner = closed_bracket(&self.jets[j].1, &self.jets[j].0, h, k).du;
                    total = total + &self.matrix[i][j] * &xf * inner;
                }
            }
        }
        total
    }
}

/// Pointwise Jacobi residual of one coordinate triple. Zero at every point
/// exactly when the bracket is Poisson there; generic cocycle parameters off
/// the classification variety produce nonzero residuals.
pub fn check_bracket_jacobi(
    p: &EtaParameters,
    g: &GroupElement<Scalar>,
    triple: [Coordinate; 3],
) -> Result<Scalar, BracketError> {
    Ok(JacobiContext::new(p, g)?.residual(triple))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sample_family, sample_row, FamilyId};
    use crate::eta::sample_parameters;
    use crate::group::sample_group_element;
    use crate::linalg::id3;
    use crate::rng::SampleRng;

    fn family_one_anchor() -> (EtaParameters, GroupElement<Scalar>) {
        let mut p = EtaParameters::default();
        p.alpha = [Scalar::zero(), Scalar::zero(), Scalar::one()];
        p.beta = Scalar::one();
        let g = GroupElement {
            t: Scalar::zero(),
            a: std::array::from_fn(|_| Scalar::zero()),
            v: [Scalar::one(), Scalar::zero(), Scalar::zero()],
            r: id3(),
        };
        (p, g)
    }

    #[test]
    fn anchor_time_boost_brackets() {
        let (p, g) = family_one_anchor();
        let want = [Scalar::one(), Scalar::one(), Scalar::zero()];
        for a in 0..3 {
            assert_eq!(
                bracket_oracle(Coordinate::Time, Coordinate::Boost(a), &p, &g),
                want[a],
                "{{t,v{}}}",
                a + 1
            );
        }
        let table = bracket_table_closed(&p, &g).unwrap();
        for a in 0..3 {
            assert_eq!(*table.get(Coordinate::Time, Coordinate::Boost(a)), want[a]);
        }
    }

    #[test]
    fn zero_parameters_give_zero_brackets() {
        let mut rng = SampleRng::new(61);
        let p = EtaParameters::default();
        let g = sample_group_element(&mut rng, 2);
        let table = bracket_table_closed(&p, &g).unwrap();
        assert!(table.entries.values().all(Scalar::is_zero));
        assert!(bracket_oracle(Coordinate::Space(0), Coordinate::Boost(1), &p, &g).is_zero());
    }

    #[test]
    fn closed_table_matches_oracle() {
        let mut rng = SampleRng::new(62);
        for _ in 0..2 {
            let mut p = sample_parameters(&mut rng, 2);
            p.n = std::array::from_fn(|_| Scalar::zero());
            let g = sample_group_element(&mut rng, 2);
            let table = bracket_table_closed(&p, &g).unwrap();
            for f in all_coordinates() {
                for h in all_coordinates() {
                    assert_eq!(
                        *table.get(f, h),
                        bracket_oracle(f, h, &p, &g),
                        "{{{f},{h}}}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_is_antisymmetric() {
        let mut rng = SampleRng::new(63);
        let mut p = sample_parameters(&mut rng, 2);
        p.n = std::array::from_fn(|_| Scalar::zero());
        let g = sample_group_element(&mut rng, 2);
        let table = bracket_table_closed(&p, &g).unwrap();
        for f in all_coordinates() {
            assert!(table.get(f, f).is_zero());
            for h in all_coordinates() {
                let fh = table.get(f, h).clone();
                assert_eq!(fh, -table.get(h, f).clone());
            }
        }
    }

    #[test]
    fn nonzero_n_is_rejected_by_table_but_not_oracle() {
        let mut p = EtaParameters::default();
        p.n = [Scalar::one(), Scalar::zero(), Scalar::zero()];
        let g = GroupElement::identity();
        assert_eq!(
            bracket_table_closed(&p, &g).unwrap_err(),
            BracketError::ClosedFormInapplicable
        );
        // the oracle still evaluates (and vanishes at the identity)
        assert!(bracket_oracle(Coordinate::Rotation(0, 0), Coordinate::Rotation(1, 1), &p, &g)
            .is_zero());
    }

    #[test]
    fn oracle_satisfies_leibniz() {
        let mut rng = SampleRng::new(64);
        let mut p = sample_parameters(&mut rng, 2);
        p.n = std::array::from_fn(|_| Scalar::zero());
        let g = sample_group_element(&mut rng, 2);
        let f = Coordinate::Space(0);
        let h = Coordinate::Boost(1);
        let k = Coordinate::Time;
        let product = |gd: &GroupElement<Dual<Scalar>>| {
            coordinate_value(gd, f) * coordinate_value(gd, h)
        };
        let lhs = bracket_oracle_general(&p, &g, &product, &|gd| coordinate_value(gd, k));
        let rhs = coordinate_value(&g, f) * bracket_oracle(h, k, &p, &g)
            + coordinate_value(&g, h) * bracket_oracle(f, k, &p, &g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_vanishes_on_catalog_points() {
        let mut rng = SampleRng::new(65);
        for p in [
            sample_family(FamilyId::I, &mut rng),
            sample_family(FamilyId::VI, &mut rng),
            sample_row(15, 1, &mut rng),
        ] {
            let g = sample_group_element(&mut rng, 2);
            let ctx = JacobiContext::new(&p, &g).unwrap();
            let triples = [
                [Coordinate::Time, Coordinate::Boost(0), Coordinate::Boost(1)],
                [Coordinate::Space(0), Coordinate::Boost(1), Coordinate::Rotation(2, 0)],
                [Coordinate::Time, Coordinate::Space(2), Coordinate::Rotation(0, 1)],
            ];
            for tr in triples {
                assert!(ctx.residual(tr).is_zero(), "triple {:?}", tr);
            }
        }
    }

    #[test]
    fn jacobi_detects_off_variety_parameters() {
        // family I spoiled with xi: co-fails with the dual Jacobi check
        let mut rng = SampleRng::new(66);
        let mut p = sample_family(FamilyId::I, &mut rng);
        p.xi = [Scalar::zero(), Scalar::zero(), Scalar::one()];
        let g = sample_group_element(&mut rng, 2);
        let ctx = JacobiContext::new(&p, &g).unwrap();
        let mut found = false;
        let coords = all_coordinates();
        'outer: for (x, &f) in coords.iter().enumerate() {
            for (y, &h) in coords.iter().enumerate().skip(x + 1) {
                for &k in coords.iter().skip(y + 1) {
                    if !ctx.residual([f, h, k]).is_zero() {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found);
        assert!(!crate::bialgebra::check_dual_jacobi(
            &crate::bialgebra::dual_structure_constants(&p)
        )
        .is_empty());
    }

    #[test]
    fn repeated_entries_give_zero_jacobi() {
        let mut rng = SampleRng::new(67);
        let p = sample_family(FamilyId::II, &mut rng);
        let g = sample_group_element(&mut rng, 2);
        let ctx = JacobiContext::new(&p, &g).unwrap();
        let r = ctx.residual([Coordinate::Boost(0), Coordinate::Boost(0), Coordinate::Time]);
        assert!(r.is_zero());
    }

    #[test]
    fn table_serializes_with_pair_keys() {
        let (p, g) = family_one_anchor();
        let table = bracket_table_closed(&p, &g).unwrap();
        let j = serde_json::to_string(&table).unwrap();
        assert!(j.contains("{t,v1}"));
        assert!(j.contains("\"1\""));
        assert_eq!("a1".parse::<Coordinate>().unwrap(), Coordinate::Space(0));
        assert!("q7".parse::<Coordinate>().is_err());
    }
}
