//! Reproduction of the two worked tables and the enlargement example
//! against embedded golden data. The golden data is kept as transcribed;
//! differences are reported, not patched.

use crate::cases::case_data;
use crate::composite::enlarge;
use crate::error::{Error, Result};
use crate::invariants::{composite_trace, generalized_trace, offsets, render_invariant_matrix, FTable, Matrix};
use crate::pattern::{render_matrix, ExchangeMatrix, TreeWord};
use crate::polyring::parse_polynomial;

/// Vertices `t0..t3` reached by the directions 1, 2, 1.
pub const WALK: [usize; 3] = [0, 1, 0];

pub const ENLARGEMENT_EXAMPLE: [[i64; 5]; 5] = [
    [0, 0, 1, 1, 1],
    [0, 0, 1, 1, 1],
    [-2, -2, 0, 0, 0],
    [-2, -2, 0, 0, 0],
    [-2, -2, 0, 0, 0],
];

/// Golden matrices of one case: `(label, vertex, rows)`.
type Golden = &'static [(&'static str, usize, &'static [&'static [i64]])];

const CASE1_MATRICES: Golden = &[
    ("C^g", 0, &[&[1, 0], &[0, 1]]),
    ("C^g", 1, &[&[-1, 0], &[0, 1]]),
    ("C^g", 2, &[&[-1, 0], &[0, -1]]),
    ("C^g", 3, &[&[-1, -2], &[0, -1]]),
    ("C^c", 0, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ("C^c", 1, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
    ("C^c", 2, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
    ("C^c", 3, &[&[1, 0, -1], &[0, 1, -1], &[0, 0, -1]]),
    ("G^g", 0, &[&[1, 0], &[0, 1]]),
    ("G^g", 1, &[&[-1, 0], &[0, 1]]),
    ("G^g", 2, &[&[-1, 0], &[0, -1]]),
    ("G^g", 3, &[&[1, 0], &[-2, -1]]),
    ("G^c", 0, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ("G^c", 1, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
    ("G^c", 2, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
    ("G^c", 3, &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, -1]]),
];

/// `F^g_1, F^g_2` per vertex.
const CASE1_FG: [[&str; 2]; 4] = [
    ["1", "1"],
    ["1 + z1_1*y1 + y1^2", "1"],
    ["1 + z1_1*y1 + y1^2", "1 + y2 + z1_1*y1*y2 + y1^2*y2"],
    [
        "1 + 2*y2 + y2^2 + z1_1*y1*y2 + z1_1*y1*y2^2 + y1^2*y2^2",
        "1 + y2 + z1_1*y1*y2 + y1^2*y2",
    ],
];

/// `F^c_11, F^c_12, F^c_21` per vertex.
const CASE1_FC: [[&str; 3]; 4] = [
    ["1", "1", "1"],
    ["1 + y1_1", "1 + y1_2", "1"],
    ["1 + y1_1", "1 + y1_2", "1 + y2_1 + (y1_1 + y1_2)*y2_1 + y1_1*y1_2*y2_1"],
    [
        "1 + y2_1 + y1_2*y2_1",
        "1 + y2_1 + y1_1*y2_1",
        "1 + y2_1 + (y1_1 + y1_2)*y2_1 + y1_1*y1_2*y2_1",
    ],
];

const CASE2_MATRICES: Golden = &[
    ("C^g", 0, &[&[1, 0], &[0, 1]]),
    ("C^g", 1, &[&[-1, 2], &[0, 1]]),
    ("C^g", 2, &[&[11, -2], &[6, -1]]),
    ("C^g", 3, &[&[-11, 20], &[-6, 11]]),
    ("C^c", 0, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]),
    ("C^c", 1, &[&[-1, 0, 1, 1, 1], &[0, -1, 1, 1, 1], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]),
    ("C^c", 2, &[&[5, 6, -1, -1, -1], &[6, 5, -1, -1, -1], &[2, 2, -1, 0, 0], &[2, 2, 0, -1, 0], &[2, 2, 0, 0, -1]]),
    ("C^c", 3, &[&[-5, -6, 10, 10, 10], &[-6, -5, 10, 10, 10], &[-2, -2, 3, 4, 4], &[-2, -2, 4, 3, 4], &[-2, -2, 4, 4, 3]]),
    ("G^g", 0, &[&[1, 0], &[0, 1]]),
    ("G^g", 1, &[&[-1, 0], &[4, 1]]),
    ("G^g", 2, &[&[-1, -3], &[4, 11]]),
    ("G^g", 3, &[&[-11, -3], &[40, 11]]),
    ("G^c", 0, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]),
    ("G^c", 1, &[&[-1, 0, 0, 0, 0], &[0, -1, 0, 0, 0], &[2, 2, 1, 0, 0], &[2, 2, 0, 1, 0], &[2, 2, 0, 0, 1]]),
    ("G^c", 2, &[&[-1, 0, -1, -1, -1], &[0, -1, -1, -1, -1], &[2, 2, 3, 4, 4], &[2, 2, 4, 3, 4], &[2, 2, 4, 4, 3]]),
    ("G^c", 3, &[&[-5, -6, -1, -1, -1], &[-6, -5, -1, -1, -1], &[20, 20, 3, 4, 4], &[20, 20, 4, 3, 4], &[20, 20, 4, 4, 3]]),
];

/// One recomputed table cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub label: String,
    pub vertex: usize,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// A differing entry of a generalized C-matrix, with the value given by
/// the recursion and the block-sum relations evaluated on the golden
/// composite C-matrix at the same vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub label: String,
    pub vertex: usize,
    pub row: usize,
    pub col: usize,
    pub golden: i64,
    pub recursion: i64,
    /// `(form, value)` for the column-sum, row-sum and shifted forms.
    pub relations: Vec<(String, i64)>,
}

impl Discrepancy {
    /// Recursion and every relation form agree with each other.
    pub fn consistent(&self) -> bool {
        self.relations.iter().all(|(_, v)| *v == self.recursion)
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub case: u32,
    pub enlargement: TableEntry,
    pub entries: Vec<TableEntry>,
    pub discrepancies: Vec<Discrepancy>,
}

impl TableReport {
    /// Every entry matches, except C^g entries explained by a consistent
    /// discrepancy.
    pub fn passed(&self) -> bool {
        self.enlargement.matches
            && self.entries.iter().all(|e| {
                e.matches
                    || (e.label == "C^g"
                        && self
                            .discrepancies
                            .iter()
                            .any(|d| d.vertex == e.vertex && d.label == e.label))
            })
            && self.discrepancies.iter().all(Discrepancy::consistent)
    }

    pub fn render(&self) -> String {
        let mut out = format!("table case {}\n", self.case);
        let status = |m: bool| if m { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "enlargement {} {}\n",
            status(self.enlargement.matches),
            self.enlargement.computed
        ));
        for e in &self.entries {
            out.push_str(&format!("{} t{} {} {}\n", e.label, e.vertex, status(e.matches), e.computed));
            if !e.matches {
                out.push_str(&format!("  golden  {}\n", e.expected));
            }
        }
        for d in &self.discrepancies {
            out.push_str(&format!(
                "flagged {} t{} entry ({},{}): golden {}, recursion {}",
                d.label,
                d.vertex,
                d.row + 1,
                d.col + 1,
                d.golden,
                d.recursion
            ));
            for (form, v) in &d.relations {
                out.push_str(&format!(", {form} {v}"));
            }
            out.push_str(if d.consistent() { " (consistent)\n" } else { " (inconsistent)\n" });
        }
        out.push_str(&format!("result {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

fn to_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Values of `c^g_ij` from a composite C-matrix through the column-sum,
/// row-sum (every `l0`) and shifted forms.
fn relation_values(cc: &Matrix, r: &[usize], sigma: &[i8], i: usize, j: usize) -> Vec<(String, i64)> {
    let off = offsets(r);
    let mut out = Vec::new();
    for m0 in 0..r[j] {
        let v: i64 = (0..r[i]).map(|l| cc[off[i] + l][off[j] + m0]).sum();
        out.push((format!("column-sum m0={}", m0 + 1), v));
    }
    for l0 in 0..r[i] {
        let s: i64 = (0..r[j]).map(|m| cc[off[i] + l0][off[j] + m]).sum();
        let v = s * r[i] as i64;
        if v % r[j] as i64 == 0 {
            out.push((format!("row-sum l0={}", l0 + 1), v / r[j] as i64));
        }
    }
    let delta = (i == j) as i64;
    let shifted = cc[off[i]][off[j]] - if off[i] == off[j] { sigma[j] as i64 } else { 0 };
    out.push(("shifted".into(), r[i] as i64 * shifted + sigma[j] as i64 * delta));
    out
}

/// Recomputes every entry of the table of `case` and the enlargement
/// example.
pub fn reproduce(case: u32) -> Result<TableReport> {
    let (b, r) = case_data(case)?;
    let ft = FTable::new(&r)?;
    let w = TreeWord::new(WALK.to_vec(), 2)?;
    let gen = generalized_trace(&b, &r, &w, &ft)?;
    let comp = composite_trace(&b, &r, &w, &ft)?;

    let (eb, er) = case_data(2)?;
    let big = enlarge(&eb, &er);
    let golden: Matrix = ENLARGEMENT_EXAMPLE.iter().map(|r| r.to_vec()).collect();
    let enlargement = TableEntry {
        label: "enlargement".into(),
        vertex: 0,
        expected: render_matrix(&golden),
        computed: big.render(),
        matches: big.rows() == golden.as_slice(),
    };

    let matrices = match case {
        1 => CASE1_MATRICES,
        2 => CASE2_MATRICES,
        _ => return Err(Error::UnknownCase(case.to_string())),
    };
    let mut entries = Vec::new();
    let mut discrepancies = Vec::new();
    for (label, t, rows) in matrices {
        let expected = to_matrix(rows);
        let computed = match *label {
            "C^g" => &gen[*t].c,
            "G^g" => &gen[*t].g,
            "C^c" => &comp[*t].c,
            _ => &comp[*t].g,
        };
        let matches = *computed == expected;
        if !matches && *label == "C^g" {
            let golden_cc = matrices
                .iter()
                .find(|(l, v, _)| *l == "C^c" && v == t)
                .map(|(_, _, rows)| to_matrix(rows))
                .unwrap();
            for i in 0..expected.len() {
                for j in 0..expected.len() {
                    if computed[i][j] != expected[i][j] {
                        discrepancies.push(Discrepancy {
                            label: label.to_string(),
                            vertex: *t,
                            row: i,
                            col: j,
                            golden: expected[i][j],
                            recursion: computed[i][j],
                            relations: relation_values(&golden_cc, &r, &comp[*t].sigma, i, j),
                        });
                    }
                }
            }
        }
        entries.push(TableEntry {
            label: label.to_string(),
            vertex: *t,
            expected: render_invariant_matrix(&expected),
            computed: render_invariant_matrix(computed),
            matches,
        });
    }
    if case == 1 {
        for (t, row) in CASE1_FG.iter().enumerate() {
            for (i, text) in row.iter().enumerate() {
                entries.push(poly_entry(format!("F^g_{}", i + 1), t, text, &gen[t].f[i], &ft)?);
            }
        }
        let names = ["F^c_11", "F^c_12", "F^c_21"];
        for (t, row) in CASE1_FC.iter().enumerate() {
            for (idx, text) in row.iter().enumerate() {
                entries.push(poly_entry(names[idx].to_string(), t, text, &comp[t].f[idx], &ft)?);
            }
        }
    }
    Ok(TableReport {
        case,
        enlargement,
        entries,
        discrepancies,
    })
}

fn poly_entry(
    label: String,
    vertex: usize,
    text: &str,
    computed: &crate::polyring::LaurentPolynomial,
    ft: &FTable,
) -> Result<TableEntry> {
    let expected = parse_polynomial(text, &ft.table)?;
    Ok(TableEntry {
        label,
        vertex,
        expected: expected.render(&ft.table),
        computed: computed.render(&ft.table),
        matches: expected == *computed,
    })
}

/// Enlargement of the example matrix compared with the golden one.
pub fn enlargement_example() -> Result<(ExchangeMatrix, bool)> {
    let (b, r) = case_data(2)?;
    let big = enlarge(&b, &r);
    let ok = big.rows().iter().zip(ENLARGEMENT_EXAMPLE.iter()).all(|(a, e)| a.as_slice() == e);
    Ok((big, ok))
}
