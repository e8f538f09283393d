//! Monge–Ampère polynomials of invariant 5-forms: restriction of a 5-form on
//! the contact plane to the Lagrangian plane with Hessian `(u_ij)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::poly::{symbolic_u, N};
use crate::exterior::{ExteriorForm, PolyTermJson, PolyU};
use crate::invariants::{twelve_five_forms, NamedForm};
use crate::par::{self, Exec};
use crate::rational::{q, Q};
use num_traits::Zero;

/// Covector names of the Darboux basis: basis index `i < 5` is `dxⁱ`, `5 + j` is `du_j`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DarbouxDictionary;

const DX_UNICODE: [&str; 5] = ["dx⁰", "dx¹", "dx²", "dx³", "dx⁴"];
const DU_UNICODE: [&str; 5] = ["du₀", "du₁", "du₂", "du₃", "du₄"];

impl DarbouxDictionary {
    pub fn unicode(&self, i: usize) -> &'static str {
        if i < N {
            DX_UNICODE[i]
        } else {
            DU_UNICODE[i - N]
        }
    }

    pub fn ascii(&self, i: usize) -> String {
        if i < N {
            format!("dx{i}")
        } else {
            format!("du{}", i - N)
        }
    }

    /// Index of `dxk`/`duk` (or the Unicode spelling).
    pub fn index(&self, name: &str) -> Result<usize> {
        (0..2 * N)
            .find(|&i| self.ascii(i) == name || self.unicode(i) == name)
            .ok_or_else(|| {
                let valid: Vec<String> = (0..2 * N).map(|i| self.ascii(i)).collect();
                let valid: Vec<&str> = valid.iter().map(String::as_str).collect();
                Error::unknown("covector", name, &valid)
            })
    }

    /// True when basis index `i` is one of the `du_j`.
    pub fn is_du(&self, i: usize) -> bool {
        i >= N
    }
}

/// Leibniz determinant of a square polynomial matrix, skipping zero entries.
pub fn det_poly(m: &[Vec<PolyU>]) -> PolyU {
    fn rec(m: &[Vec<PolyU>], row: usize, used: &mut [bool], acc: &PolyU, sign: bool, out: &mut PolyU) {
        if row == m.len() {
            *out = if sign { &*out - acc } else { &*out + acc };
            return;
        }
        // the number of used columns to the right of c counts inversions
        for c in 0..m.len() {
            if used[c] || m[row][c].is_zero() {
                continue;
            }
            let inv = used[c + 1..].iter().filter(|&&u| u).count();
            used[c] = true;
            rec(m, row + 1, used, &(acc * &m[row][c]), sign ^ (inv % 2 == 1), out);
            used[c] = false;
        }
    }
    let mut out = PolyU::zero();
    rec(m, 0, &mut vec![false; m.len()], &PolyU::constant(q(1)), false, &mut out);
    out
}

/// `F(u) = Ω(ℓ₀,…,ℓ₄)` with `ℓ_b = e_b + Σ_j u_bj f_j`.
pub fn restrict_to_lagrangian(form: &ExteriorForm) -> Result<PolyU> {
    if form.dim() != 2 * N || form.degree() != N {
        return Err(Error::domain("restriction needs a 5-form over the 10 covectors"));
    }
    let u = symbolic_u();
    let mut total = PolyU::zero();
    for (idx, c) in form.terms() {
        // rows: covectors θ_a; columns: ℓ_b
        let m: Vec<Vec<PolyU>> = idx
            .as_slice()
            .iter()
            .map(|&a| {
                (0..N)
                    .map(|b| {
                        if a < N {
                            PolyU::constant(if a == b { q(1) } else { q(0) })
                        } else {
                            u[b][a - N].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        total = &total + &det_poly(&m).scale(c);
    }
    Ok(total)
}

/// Determinant of `(u_ij)` after deleting `rows` and `cols`.
pub fn minor(rows: &[usize], cols: &[usize]) -> Result<PolyU> {
    let valid = |s: &[usize]| {
        s.iter().all(|&i| i < N) && s.iter().enumerate().all(|(k, i)| !s[..k].contains(i))
    };
    if rows.len() != cols.len() || rows.len() > N - 1 || !valid(rows) || !valid(cols) {
        return Err(Error::domain(format!("invalid minor deletion {rows:?}/{cols:?}")));
    }
    let u = symbolic_u();
    let keep_r: Vec<usize> = (0..N).filter(|i| !rows.contains(i)).collect();
    let keep_c: Vec<usize> = (0..N).filter(|i| !cols.contains(i)).collect();
    let m: Vec<Vec<PolyU>> = keep_r
        .iter()
        .map(|&i| keep_c.iter().map(|&j| u[i][j].clone()).collect())
        .collect();
    Ok(det_poly(&m))
}

pub fn det_u() -> PolyU {
    det_poly(&symbolic_u())
}

/// A linear combination `Σ c · M^{cols}_{rows}` of minors.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSum(pub Vec<(i64, Vec<usize>, Vec<usize>)>);

impl MinorSum {
    pub fn expand(&self) -> Result<PolyU> {
        let mut p = PolyU::zero();
        for (c, rows, cols) in &self.0 {
            p = &p + &minor(rows, cols)?.scale(&q(*c));
        }
        Ok(p)
    }

    /// E.g. `10M^{034}_{124} - 3M^{034}_{034}`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, (c, rows, cols)) in self.0.iter().enumerate() {
            let digits = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<String>();
            let sign = match (k, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}M^{{{}}}_{{{}}}", digits(cols), digits(rows)));
        }
        s
    }
}

fn ms(terms: &[(i64, &[usize], &[usize])]) -> MinorSum {
    MinorSum(terms.iter().map(|(c, r, l)| (*c, r.to_vec(), l.to_vec())).collect())
}

/// Tabulated value of each of the twelve entries, in minor notation.
#[derive(Clone, Debug, PartialEq)]
pub enum Tabulated {
    Minors(MinorSum),
    Linear(PolyU),
    Det,
    Empty,
}

/// The twelve tabulated right-hand sides (rows: removed rows, then removed columns).
pub fn tabulated() -> Vec<Tabulated> {
    use Tabulated::*;
    vec![
        Minors(ms(&[(10, &[1, 2, 4], &[0, 3, 4]), (-3, &[0, 3, 4], &[0, 3, 4]), (-3, &[1, 2, 4], &[1, 2, 4])])),
        Minors(ms(&[(10, &[1, 2], &[0, 3]), (-3, &[0, 3], &[0, 3]), (-3, &[1, 2], &[1, 2])])),
        Linear(&PolyU::u(0, 3).scale(&q(6)) + &PolyU::u(1, 2).scale(&q(6))),
        Minors(ms(&[(6, &[0, 1, 2], &[1, 2, 3]), (6, &[0, 1, 3], &[0, 2, 3])])),
        Minors(ms(&[(-6, &[0, 4], &[3, 4]), (-6, &[1, 4], &[2, 4])])),
        Minors(ms(&[(3, &[0], &[3]), (3, &[1], &[2])])),
        Det,
        Linear(PolyU::u(4, 4)),
        Minors(ms(&[(1, &[4], &[4])])),
        Empty,
        Minors(ms(&[(2, &[0, 1, 4], &[2, 3, 4]), (2, &[0, 2, 4], &[1, 3, 4]), (1, &[0, 3, 4], &[0, 3, 4]), (1, &[1, 2, 4], &[1, 2, 4])])),
        Minors(ms(&[(2, &[0, 1], &[2, 3]), (2, &[0, 2], &[1, 3]), (1, &[0, 3], &[0, 3]), (1, &[1, 2], &[1, 2])])),
    ]
}

/// Short names of the six representative equations, by 1-based entry.
pub const SHORT_NAMES: [(usize, &str); 6] = [(1, "Q1"), (3, "L1"), (4, "Q2"), (8, "L2"), (10, "D"), (11, "Q3")];

/// How a computed restriction compares with its tabulated value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatus {
    /// Proportional to the tabulated polynomial.
    Match,
    /// Tabulated as nonzero but vanishes on every Lagrangian plane.
    Vanishes,
    /// Nonzero and not proportional to the tabulated polynomial.
    Differs,
    /// One of the two rows tabulated as `det(u)` / `∅`.
    DetEmptySwap,
}

impl TableStatus {
    pub fn note(self) -> Option<&'static str> {
        match self {
            TableStatus::Match => None,
            TableStatus::Vanishes => Some("restriction is identically zero; the tabulated polynomial is not reproduced"),
            TableStatus::Differs => Some("restriction differs from the tabulated minor sum by term signs"),
            TableStatus::DetEmptySwap => Some(
                "table lists det(u) for the all-dx row and the empty set for the all-du row; direct evaluation gives the constant 1 and det(u)",
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MAEEntry {
    /// 1-based position.
    pub index: usize,
    pub name: String,
    pub ascii: String,
    pub short: Option<&'static str>,
    pub form: ExteriorForm,
    pub poly: PolyU,
    pub tabulated: Tabulated,
    /// Set when `poly` is proportional to the tabulated minor expression.
    pub minor_expr: Option<String>,
    pub status: TableStatus,
}

impl MAEEntry {
    /// True when the restriction is proportional to the tabulated value.
    pub fn matches_table(&self) -> bool {
        match &self.tabulated {
            Tabulated::Minors(m) => m.expand().is_ok_and(|p| self.poly.is_proportional(&p)),
            Tabulated::Linear(p) => self.poly.is_proportional(p),
            Tabulated::Det | Tabulated::Empty => false,
        }
    }

    pub fn discrepancy(&self) -> Option<&'static str> {
        self.status.note()
    }

    pub fn label(&self) -> String {
        match self.short {
            Some(s) => format!("{} ({s})", self.name),
            None => self.name.clone(),
        }
    }
}

fn entry(i: usize, nf: NamedForm, tab: Tabulated) -> Result<MAEEntry> {
    let poly = restrict_to_lagrangian(&nf.form)?;
    let short = SHORT_NAMES.iter().find(|(k, _)| *k == i + 1).map(|(_, s)| *s);
    let mut e = MAEEntry {
        index: i + 1,
        name: nf.name,
        ascii: nf.ascii,
        short,
        form: nf.form,
        poly,
        tabulated: tab,
        minor_expr: None,
        status: TableStatus::Match,
    };
    e.status = if matches!(e.tabulated, Tabulated::Det | Tabulated::Empty) {
        TableStatus::DetEmptySwap
    } else if e.matches_table() {
        TableStatus::Match
    } else if e.poly.is_zero() {
        TableStatus::Vanishes
    } else {
        TableStatus::Differs
    };
    e.minor_expr = match &e.tabulated {
        Tabulated::Minors(m) if e.matches_table() => Some(m.render()),
        _ if e.poly == det_u() => Some("det(u)".into()),
        _ => None,
    };
    Ok(e)
}

/// The twelve entries, computed concurrently under `exec`.
pub fn catalogue_with(exec: Exec) -> Result<Vec<MAEEntry>> {
    let forms = twelve_five_forms()?;
    let items: Vec<(usize, NamedForm, Tabulated)> = forms
        .into_iter()
        .zip(tabulated())
        .enumerate()
        .map(|(i, (f, t))| (i, f, t))
        .collect();
    par::map(exec, &items, |(i, f, t)| entry(*i, f.clone(), t.clone()))
        .into_iter()
        .collect()
}

pub fn catalogue() -> Result<Vec<MAEEntry>> {
    catalogue_with(Exec::default())
}

/// Looks up an entry by short name, ASCII or Unicode name, or 1-based index.
pub fn find<'a>(cat: &'a [MAEEntry], key: &str) -> Result<&'a MAEEntry> {
    cat.iter()
        .find(|e| {
            e.short == Some(key) || e.ascii == key || e.name == key || key.parse() == Ok(e.index)
        })
        .ok_or_else(|| {
            let valid: Vec<&str> = SHORT_NAMES.iter().map(|(_, s)| *s).collect();
            Error::unknown("equation", key, &valid)
        })
}

/// The expanded quadratic `Q1`.
pub fn q1_expanded() -> PolyU {
    PolyU::parse("3*u03^2 + 3*u12^2 - 10*u02*u13 - 3*u11*u22 + 10*u01*u23 - 3*u00*u33").unwrap()
}

/// The expanded quadratic `Q3`.
pub fn q3_expanded() -> PolyU {
    PolyU::parse("2*u02*u13 + u11*u22 + 2*u01*u23 + u00*u33 - u03^2 - 4*u12*u03 - u12^2").unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryJson {
    pub index: usize,
    pub name: String,
    pub short: Option<String>,
    pub degree: Option<u32>,
    pub poly: Vec<PolyTermJson>,
    pub minors: Option<String>,
    pub table_status: TableStatus,
    pub discrepancy: Option<String>,
}

impl From<&MAEEntry> for EntryJson {
    fn from(e: &MAEEntry) -> Self {
        EntryJson {
            index: e.index,
            name: e.ascii.clone(),
            short: e.short.map(String::from),
            degree: e.poly.degree(),
            poly: e.poly.to_json(),
            minors: e.minor_expr.clone(),
            table_status: e.status,
            discrepancy: e.discrepancy().map(String::from),
        }
    }
}

/// `u` as a polynomial-free evaluation point, for checks.
pub fn zero_point() -> Vec<Q> {
    vec![Q::zero(); crate::exterior::poly::NVARS]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::poly::{var, NVARS};

    fn word(w: &[usize]) -> ExteriorForm {
        ExteriorForm::from_word(10, w, q(1)).unwrap()
    }

    #[test]
    fn simple_restrictions() {
        assert_eq!(restrict_to_lagrangian(&word(&[0, 1, 2, 3, 4])).unwrap(), PolyU::constant(q(1)));
        assert_eq!(restrict_to_lagrangian(&word(&[0, 1, 2, 3, 9])).unwrap(), PolyU::u(4, 4));
        assert_eq!(restrict_to_lagrangian(&word(&[5, 6, 7, 8, 9])).unwrap(), det_u());
        assert!(restrict_to_lagrangian(&word(&[0, 1, 2, 3])).is_err());
    }

    #[test]
    fn minors() {
        let m = minor(&[1, 2, 4], &[1, 2, 4]).unwrap();
        assert_eq!(m, PolyU::parse("u00*u33 - u03^2").unwrap());
        let m = minor(&[1, 2, 4], &[0, 3, 4]).unwrap();
        assert_eq!(m, PolyU::parse("u01*u23 - u02*u13").unwrap());
        let mut id = vec![q(0); NVARS];
        for i in 0..5 {
            id[var(i, i)] = q(1);
        }
        assert_eq!(minor(&[4], &[4]).unwrap().eval(&id), q(1));
        assert!(minor(&[1], &[]).is_err());
        assert!(minor(&[1, 1], &[0, 2]).is_err());
    }

    #[test]
    fn catalogue_against_table() {
        let cat = catalogue().unwrap();
        assert_eq!(cat.len(), 12);
        let status: Vec<TableStatus> = cat.iter().map(|e| e.status).collect();
        use TableStatus::*;
        assert_eq!(
            status,
            [Match, Match, Vanishes, Vanishes, Vanishes, Vanishes, DetEmptySwap, Match, Match, DetEmptySwap, Differs, Differs]
        );
        assert_eq!(cat[6].poly, PolyU::constant(q(1)));
        assert_eq!(cat[9].poly, det_u());
        assert_eq!(cat[0].poly, q1_expanded());
        assert_eq!(
            cat[10].poly,
            PolyU::parse("u00*u33 - 2*u01*u23 + 2*u02*u13 - u03^2 + u11*u22 - u12^2").unwrap()
        );
        assert_eq!(find(&cat, "L2").unwrap().index, 8);
        assert!(find(&cat, "Q9").is_err());
    }

    #[test]
    fn tabulated_minor_sums() {
        let tab = tabulated();
        let Tabulated::Minors(q1) = &tab[0] else { panic!() };
        assert_eq!(q1.expand().unwrap(), q1_expanded());
        let Tabulated::Minors(q3) = &tab[10] else { panic!() };
        assert_eq!(q3.expand().unwrap(), q3_expanded());
        assert_eq!(q1.render(), "10M^{034}_{124} - 3M^{034}_{034} - 3M^{124}_{124}");
    }
}
