//! Linear symplectomorphisms of the contact plane, their action on the
//! twelve equations, and the symbol-rank invariant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::poly::{var, var_name, var_pair, N, NVARS};
use crate::exterior::{ExteriorForm, PolyU};
use crate::linalg::QMatrix;
use crate::mae::{self, restrict_to_lagrangian, MAEEntry};
use crate::par::{self, Exec};
use crate::rational::{self, q, qr, Q};

/// A linear map on covector coordinates `(dx⁰..dx⁴, du₀..du₄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SympMap {
    pub name: String,
    pub matrix: QMatrix,
}

/// `J = (0 id; −id 0)`, pairing `dxⁱ` with `duᵢ`.
pub fn j_matrix() -> QMatrix {
    let mut j = QMatrix::zeros(2 * N, 2 * N);
    for i in 0..N {
        j.set(i, N + i, q(1));
        j.set(N + i, i, q(-1));
    }
    j
}

impl SympMap {
    /// Fails unless `SᵀJS = J`.
    pub fn new(name: &str, matrix: QMatrix) -> Result<SympMap> {
        let s = SympMap { name: name.into(), matrix };
        if s.matrix.rows() != 2 * N || !s.matrix.is_square() {
            return Err(Error::domain("symplectic maps are 10×10"));
        }
        if !s.is_symplectic() {
            return Err(Error::Certificate(format!("{name} does not preserve J")));
        }
        Ok(s)
    }

    pub fn is_symplectic(&self) -> bool {
        let j = j_matrix();
        &(&self.matrix.transpose() * &j) * &self.matrix == j
    }

    pub fn identity() -> SympMap {
        SympMap { name: "id".into(), matrix: QMatrix::identity(2 * N) }
    }

    pub fn pullback(&self, form: &ExteriorForm) -> Result<ExteriorForm> {
        form.pullback(&self.matrix)
    }

    pub fn compose(&self, other: &SympMap) -> SympMap {
        SympMap {
            name: format!("{}·{}", self.name, other.name),
            matrix: &self.matrix * &other.matrix,
        }
    }
}

/// The Legendre-type map `(0 id; −id 0)`.
pub fn tau() -> SympMap {
    SympMap { name: "τ".into(), matrix: j_matrix() }
}

/// The partial Legendre map in the `(dx⁴, du₄)` plane.
pub fn xi() -> SympMap {
    let mut m = QMatrix::identity(2 * N);
    m.set(4, 4, q(0));
    m.set(9, 9, q(0));
    m.set(4, 9, q(1));
    m.set(9, 4, q(-1));
    SympMap { name: "ξ".into(), matrix: m }
}

pub fn generator_by_name(name: &str) -> Result<SympMap> {
    match name {
        "tau" | "τ" => Ok(tau()),
        "xi" | "ξ" => Ok(xi()),
        "id" => Ok(SympMap::identity()),
        _ => Err(Error::unknown("generator", name, &["tau", "xi", "id"])),
    }
}

/// Image of an equation under `s`, with the catalogue entries it matches.
#[derive(Clone, Debug)]
pub struct ActedEquation {
    pub source: usize,
    pub generator: String,
    pub form: ExteriorForm,
    pub poly: PolyU,
    /// 1-based entries whose polynomial is a nonzero multiple of `poly`.
    pub poly_matches: Vec<usize>,
    /// 1-based entries whose form is a nonzero multiple of `form`.
    pub form_matches: Vec<usize>,
}

pub fn act_on_equation(s: &SympMap, e: &MAEEntry, catalogue: &[MAEEntry]) -> Result<ActedEquation> {
    let form = s.pullback(&e.form)?;
    let poly = restrict_to_lagrangian(&form)?;
    let poly_matches = if is_trivial(&poly) {
        Vec::new()
    } else {
        catalogue.iter().filter(|c| c.poly.is_proportional(&poly)).map(|c| c.index).collect()
    };
    let form_matches = catalogue
        .iter()
        .filter(|c| c.form.ratio_to(&form).is_some())
        .map(|c| c.index)
        .collect();
    Ok(ActedEquation {
        source: e.index,
        generator: s.name.clone(),
        form,
        poly,
        poly_matches,
        form_matches,
    })
}

/// Zero or constant: no equation, or one without solutions.
pub fn is_trivial(p: &PolyU) -> bool {
    p.is_zero() || p.is_constant()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Linking {
    /// Entries are equal when their restricted polynomials are proportional.
    Polynomial,
    /// Entries are equal when their forms are proportional.
    Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivClass {
    /// 1-based entry indices, ascending.
    pub members: Vec<usize>,
    pub representative: usize,
    pub name: String,
    pub short: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub generators: Vec<String>,
    pub linking: Linking,
    pub classes: Vec<EquivClass>,
    /// Excluded entries: zero or constant polynomial under polynomial
    /// linking, nonzero constant under form linking.
    pub trivial: Vec<usize>,
}

impl Partition {
    pub fn representatives(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| c.short.clone().unwrap_or_else(|| c.name.clone()))
            .collect()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Finest partition with `e ~ S(e)` for every generator `S`.
pub fn classify(entries: &[MAEEntry], gens: &[SympMap], linking: Linking) -> Result<Partition> {
    let n = entries.len();
    let trivial: Vec<usize> = match linking {
        Linking::Polynomial => entries.iter().filter(|e| is_trivial(&e.poly)).map(|e| e.index).collect(),
        Linking::Form => entries
            .iter()
            .filter(|e| e.poly.is_constant() && !e.poly.is_zero())
            .map(|e| e.index)
            .collect(),
    };
    let pos = |idx: usize| entries.iter().position(|e| e.index == idx).unwrap();
    let mut parent: Vec<usize> = (0..n).collect();
    for s in gens {
        for e in entries.iter().filter(|e| !trivial.contains(&e.index)) {
            let img = act_on_equation(s, e, entries)?;
            let targets = match linking {
                Linking::Polynomial => img.poly_matches,
                Linking::Form => img.form_matches,
            };
            for t in targets.into_iter().filter(|t| !trivial.contains(t)) {
                union(&mut parent, pos(e.index), pos(t));
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        if !trivial.contains(&entries[i].index) {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
    }
    let classes = groups
        .into_values()
        .map(|members| {
            // lowest polynomial degree, then lowest index; zero polys last
            let rep = *members
                .iter()
                .min_by_key(|&&i| (entries[i].poly.degree().unwrap_or(u32::MAX), entries[i].index))
                .unwrap();
            EquivClass {
                members: members.iter().map(|&i| entries[i].index).collect(),
                representative: entries[rep].index,
                name: entries[rep].ascii.clone(),
                short: entries[rep].short.map(String::from),
            }
        })
        .collect();
    Ok(Partition {
        generators: gens.iter().map(|s| s.name.clone()).collect(),
        linking,
        classes,
        trivial,
    })
}

/// The six representative equations with their polynomials as listed.
pub const NAMED_EQUATIONS: [&str; 6] = ["Q1", "L1", "Q2", "D", "L2", "Q3"];

pub fn named_equation(name: &str) -> Result<PolyU> {
    use crate::mae::MinorSum;
    match name {
        "Q1" => Ok(mae::q1_expanded()),
        "L1" => Ok(&PolyU::u(0, 3) + &PolyU::u(1, 2)),
        "Q2" => MinorSum(vec![(1, vec![0, 1, 2], vec![1, 2, 3]), (1, vec![0, 1, 3], vec![0, 2, 3])]).expand(),
        "D" => Ok(mae::det_u()),
        "L2" => Ok(PolyU::u(4, 4)),
        "Q3" => Ok(mae::q3_expanded()),
        _ => Err(Error::unknown("equation", name, &NAMED_EQUATIONS)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    pub matrix: QMatrix,
    pub rank: usize,
}

/// `s_ii = ∂F/∂u_ii`, `s_ij = ½ ∂F/∂u_ij` at `point`.
pub fn symbol(f: &PolyU, point: &[Q]) -> Result<SymbolMatrix> {
    if point.len() != NVARS {
        return Err(Error::domain(format!("a point has {NVARS} coordinates")));
    }
    let mut m = QMatrix::zeros(N, N);
    for v in 0..NVARS {
        let (i, j) = var_pair(v);
        let d = f.derivative(v).eval(point);
        if i == j {
            m.set(i, i, d);
        } else {
            let h = d / q(2);
            m.set(i, j, h.clone());
            m.set(j, i, h);
        }
    }
    let rank = m.rank();
    Ok(SymbolMatrix { matrix: m, rank })
}

/// `Σ u_ij ∂F/∂u_ij = d·F` for `F` homogeneous of degree `d`.
pub fn euler_holds(f: &PolyU) -> bool {
    let Some(d) = f.homogeneous_degree() else {
        return f.is_zero();
    };
    let lhs = (0..NVARS).fold(PolyU::zero(), |acc, v| {
        let (i, j) = var_pair(v);
        &acc + &(&PolyU::u(i, j) * &f.derivative(v))
    });
    lhs == f.scale(&q(d as i64))
}

/// First variable in which `f` is of degree one, with `f = c·v + r`.
fn linear_chart(f: &PolyU) -> Option<(usize, PolyU, PolyU)> {
    (0..NVARS).find_map(|v| {
        let mut c = PolyU::zero();
        let mut r = PolyU::zero();
        for (m, k) in f.terms() {
            match m.exponent(v) {
                0 => r = &r + &PolyU::monomial(*m, k.clone()),
                1 => {
                    let mut vars = m.vars();
                    let pos = vars.iter().position(|&x| x == v).unwrap();
                    vars.remove(pos);
                    c = &c + &PolyU::monomial(crate::exterior::Monomial::from_vars(&vars), k.clone());
                }
                _ => return None,
            }
        }
        (!c.is_zero()).then_some((v, c, r))
    })
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    qr(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// `n` seeded points on `{f = 0}`, solving for the first variable in which
/// `f` is linear. Sample `i` draws from stream `i` of the seed.
pub fn sample_hypersurface(f: &PolyU, seed: u64, n: usize, exec: Exec) -> Result<Vec<Vec<Q>>> {
    let (v, c, r) = linear_chart(f).ok_or_else(|| Error::domain("no linear chart for sampling"))?;
    Ok(par::map_range(exec, n, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        loop {
            let mut p: Vec<Q> = (0..NVARS).map(|_| random_q(&mut rng)).collect();
            p[v] = Q::zero();
            let cv = c.eval(&p);
            if cv.is_zero() {
                continue;
            }
            p[v] = -r.eval(&p) / cv;
            return p;
        }
    }))
}

/// Deterministic probe points: zero, elementary symmetric matrices, and
/// rank-one `ξξᵀ` for small `ξ`.
pub fn probe_points() -> Vec<Vec<Q>> {
    let mut pts = vec![vec![Q::zero(); NVARS]];
    for v in 0..NVARS {
        let mut p = vec![Q::zero(); NVARS];
        p[v] = Q::one();
        pts.push(p);
    }
    for a in 0..N {
        for b in a + 1..N {
            for sign in [1, -1] {
                let mut x = [0i64; N];
                x[a] = 1;
                x[b] = sign;
                pts.push(
                    (0..NVARS)
                        .map(|v| {
                            let (i, j) = var_pair(v);
                            q(x[i] * x[j])
                        })
                        .collect(),
                );
            }
        }
    }
    pts
}

/// Symbol ranks at the given points.
pub fn ranks_at(f: &PolyU, points: &[Vec<Q>], exec: Exec) -> Result<Vec<usize>> {
    par::map(exec, points, |p| symbol(f, p).map(|s| s.rank)).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub equation: String,
    pub rank: usize,
    pub point: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub pair: [String; 2],
    /// Attained symbol ranks over all on-hypersurface points tried, including
    /// singular ones.
    pub ranks: BTreeMap<String, Vec<usize>>,
    pub verdict: String,
    pub witness: Option<Witness>,
}

pub fn point_json(p: &[Q]) -> BTreeMap<String, String> {
    (0..NVARS).map(|v| (var_name(v), rational::to_string(&p[v]))).collect()
}

/// Parses `u03=1,u12=-1/2` (unlisted variables are zero).
pub fn parse_point(s: &str) -> Result<Vec<Q>> {
    let mut p = vec![Q::zero(); NVARS];
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (name, val) = item
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("expected name=value, got `{item}`")))?;
        let v = crate::exterior::poly::parse_var(name.trim())?;
        p[v] = rational::parse(val.trim()).ok_or_else(|| Error::domain(format!("bad value `{val}`")))?;
    }
    Ok(p)
}

/// On-hypersurface points for `f`: the probes that lie on it plus `n` samples.
fn hypersurface_points(f: &PolyU, seed: u64, n: usize, exec: Exec) -> Result<Vec<Vec<Q>>> {
    let mut pts: Vec<Vec<Q>> = probe_points().into_iter().filter(|p| f.eval(p).is_zero()).collect();
    pts.extend(sample_hypersurface(f, seed, n, exec)?);
    Ok(pts)
}

/// Compares symbol ranks on two hypersurfaces.
///
/// "separated" needs one side linear (so its symbol has constant rank `r`)
/// and a smooth point of the other side, symbol nonzero, with rank other than
/// `r`. Smooth points only: a vanishing symbol at a singular point is not an
/// invariant of the equation's contact class.
pub fn separate(
    (n1, f1): (&str, &PolyU),
    (n2, f2): (&str, &PolyU),
    seed: u64,
    samples: usize,
    exec: Exec,
) -> Result<SeparationReport> {
    let mut ranks = BTreeMap::new();
    let mut data = Vec::new();
    for (name, f) in [(n1, f1), (n2, f2)] {
        let pts = hypersurface_points(f, seed, samples, exec)?;
        let rk = ranks_at(f, &pts, exec)?;
        let mut attained: Vec<usize> = rk.clone();
        attained.sort_unstable();
        attained.dedup();
        ranks.insert(name.to_string(), attained);
        data.push((name, f, pts, rk));
    }
    let mut witness = None;
    for (a, b) in [(0, 1), (1, 0)] {
        let (_, fa, _, ra) = &data[a];
        if fa.degree() != Some(1) || n1 == n2 && f1 == f2 {
            continue;
        }
        let r = ra[0];
        let (nb, _, pb, rb) = &data[b];
        if let Some(k) = (0..pb.len()).find(|&k| rb[k] != 0 && rb[k] != r) {
            witness = Some(Witness {
                equation: nb.to_string(),
                rank: rb[k],
                point: point_json(&pb[k]),
            });
            break;
        }
    }
    Ok(SeparationReport {
        pair: [n1.to_string(), n2.to_string()],
        ranks,
        verdict: if witness.is_some() { "separated" } else { "inconclusive" }.into(),
        witness,
    })
}

/// `g·τ = τ·ḡ` for `g = diag(A, A⁻ᵀ)`, `ḡ = diag(A⁻ᵀ, A)`.
pub fn conjugation_identity(a: &QMatrix) -> Result<bool> {
    if a.rows() != N || !a.is_square() {
        return Err(Error::domain("A must be 5×5"));
    }
    let ait = a.inverse()?.transpose();
    let g = QMatrix::block_diag(a, &ait);
    let gbar = QMatrix::block_diag(&ait, a);
    let t = tau().matrix;
    Ok(&g * &t == &t * &gbar)
}

/// The symmetric point with the given full matrix entries `u_ij`.
pub fn point(entries: &[(usize, usize, Q)]) -> Vec<Q> {
    let mut p = vec![Q::zero(); NVARS];
    for (i, j, x) in entries {
        p[var(*i, *j)] = x.clone();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mae::catalogue;

    #[test]
    fn generators_are_symplectic() {
        assert!(tau().is_symplectic());
        assert!(xi().is_symplectic());
        let t2 = &tau().matrix * &tau().matrix;
        assert_eq!(t2, QMatrix::identity(10).scale(&q(-1)));
        assert!(SympMap::new("bad", QMatrix::identity(10).scale(&q(2))).is_err());
    }

    #[test]
    fn tau_on_top_forms() {
        let f = ExteriorForm::from_word(10, &[0, 1, 2, 3, 9], q(1)).unwrap();
        let g = tau().pullback(&f).unwrap();
        assert_eq!(g.num_terms(), 1);
        assert!(!g.coeff(&[4, 5, 6, 7, 8]).is_zero());
        assert_eq!(xi().matrix.get(1, 1), &q(1));
    }

    #[test]
    fn form_level_partition() {
        let cat = catalogue().unwrap();
        let p = classify(&cat, &[tau()], Linking::Form).unwrap();
        let m: Vec<Vec<usize>> = p.classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(m, vec![vec![1, 2], vec![3, 6], vec![4, 5], vec![8, 9], vec![10], vec![11, 12]]);
        assert_eq!(p.trivial, vec![7]);
        let p = classify(&cat, &[tau(), xi()], Linking::Form).unwrap();
        assert_eq!(p.representatives(), ["Q1", "L1", "L2", "Q3"]);
        let none = classify(&cat, &[], Linking::Polynomial).unwrap();
        assert_eq!(none.classes.len(), 12 - none.trivial.len());
    }

    #[test]
    fn symbols() {
        let l1 = named_equation("L1").unwrap();
        assert_eq!(symbol(&l1, &vec![Q::zero(); NVARS]).unwrap().rank, 4);
        let q1 = named_equation("Q1").unwrap();
        assert_eq!(symbol(&q1, &vec![Q::zero(); NVARS]).unwrap().rank, 0);
        assert!(euler_holds(&q1));
        assert!(euler_holds(&named_equation("Q3").unwrap()));
        for p in sample_hypersurface(&q1, 7, 10, Exec::Parallel).unwrap() {
            assert!(q1.eval(&p).is_zero());
        }
    }

    #[test]
    fn sampling_is_deterministic_across_policies() {
        let q1 = named_equation("Q1").unwrap();
        assert_eq!(
            sample_hypersurface(&q1, 3, 20, Exec::Sequential).unwrap(),
            sample_hypersurface(&q1, 3, 20, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn point_parsing() {
        let p = parse_point("u30=1/2, u44=-3").unwrap();
        assert_eq!(p[var(0, 3)], qr(1, 2));
        assert_eq!(p[var(4, 4)], q(-3));
        assert!(parse_point("u55=1").is_err());
        assert!(parse_point("u00").is_err());
    }
}
