//! Worked examples as executable checks.

use crate::attack::{reconstruction_triangle, recover_state};
use crate::automaton::{cell_trace, CaState};
use crate::error::Result;
use crate::gf2::{poly_pow_mod, BitPoly};
use crate::modeler::{ca_charpoly, coset_polynomial, expand_once, synthesize_ca, RuleVector};
use crate::phaseshift::{phase_report, transfer_polynomials};
use crate::sequences::{berlekamp_massey, seq_period, BitSeq, Lfsr};
use crate::shrinker::{sg_generate, ShrinkingGenerator};

/// Outcome of one worked example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn poly(s: &str) -> BitPoly {
    s.parse().expect("literal polynomial")
}

fn bits(s: &str) -> BitSeq {
    s.parse().expect("literal bit string")
}

fn show_period(p: Option<usize>) -> String {
    p.map_or_else(|| "undetermined".into(), |p| p.to_string())
}

fn rules(s: &str) -> RuleVector {
    s.parse().expect("literal rule vector")
}

/// Expected rows of the reconstruction triangle, row `t` holding cells `t+1..=10`.
pub const TABLE_ROWS: [&str; 10] = [
    "0001110110",
    "010010001",
    "11101010",
    "1101011",
    "101001",
    "01110",
    "0101",
    "100",
    "10",
    "1",
];

fn lfsr_streams() -> Result<Check> {
    let a = Lfsr::new(poly("1+D+D^3"), &bits("100"))?.generate(7);
    let b = Lfsr::new(poly("1+D^3+D^4"), &bits("1000"))?.generate(15);
    let passed = a == bits("0011101") && b == bits("000100110101111");
    Ok(Check {
        name: "register streams",
        passed,
        detail: format!("R1 {a}, R2 {b}"),
    })
}

fn small_generator() -> Result<Check> {
    let sg = ShrinkingGenerator::new(
        Lfsr::new(poly("1+D+D^3"), &bits("100"))?,
        Lfsr::new(poly("1+D^3+D^4"), &bits("1000"))?,
    )?;
    let s = sg_generate(&sg, 120)?;
    let period = seq_period(&s);
    let ones = s[..60].iter().filter(|&&b| b).count();
    let lc = berlekamp_massey(&s).lc;
    let passed = s.starts_with(&bits("01011011"))
        && period == Some(60)
        && ones == 32
        && lc > 8
        && lc <= 16;
    Ok(Check {
        name: "shrunken sequence (L1 = 3, L2 = 4)",
        passed,
        detail: format!(
            "prefix {}, period {}, ones {ones}, linear complexity {lc}",
            s.window(0, 8),
            show_period(period)
        ),
    })
}

fn model_pipeline() -> Result<Check> {
    let p = coset_polynomial(&poly("1+D+D^3+D^4+D^5"), 2)?;
    let (a, b) = synthesize_ca(&p)?;
    let (ea, eb) = (expand_once(&a), expand_once(&b));
    let m = ca_charpoly(&ea);
    let passed = p == poly("1+D^2+D^5")
        && a == rules("01111")
        && b == rules("11110")
        && ea == rules("0111001110")
        && eb == rules("1111111111")
        && m == poly("1+D^4+D^10");
    Ok(Check {
        name: "automaton model (L1 = 2, L2 = 5)",
        passed,
        detail: format!("P = {p}; {a} / {b} -> {ea} / {eb}; charpoly {m}"),
    })
}

fn state_recovery() -> Result<Check> {
    let rv = rules("0111001110");
    let window = bits("0101101001");
    let state = recover_state(&rv, &window)?;
    let triangle = reconstruction_triangle(&rv, &window)?;
    let table_ok = triangle
        .iter()
        .zip(TABLE_ROWS)
        .all(|(row, want)| row.to_string() == want);
    let trace = cell_trace(&rv, &state, 10, 124)?;
    let period = seq_period(&trace);
    let passed = state == "0001110110".parse::<CaState>()?
        && table_ok
        && period == Some(62)
        && trace.starts_with(&window);
    Ok(Check {
        name: "initial state from 10 keystream bits",
        passed,
        detail: format!(
            "state {state}, table rows match: {table_ok}, period {}",
            show_period(period)
        ),
    })
}

fn phaseshift() -> Result<Check> {
    let rv = rules("0011001100");
    let expected = [
        "1+D+D^2+D^3+D^4+D^9",
        "1+D+D^3+D^4+D^5+D^6+D^8",
        "1+D^3+D^5+D^6+D^7",
        "D^6",
        "1+D^3+D^5",
        "D+D^4",
        "1+D^2+D^3",
        "1+D^2",
        "D",
        "1",
    ];
    let pis_ok = transfer_polynomials(&rv)
        .iter()
        .zip(expected)
        .all(|(t, e)| t.poly == poly(e));
    let report = phase_report(&rv)?;
    let shifts = |cell: usize, others: [usize; 3]| -> Option<[u64; 3]> {
        let class = report.class_of(cell)?;
        if class.reference != cell {
            return None;
        }
        let mut out = [0; 3];
        for (o, c) in out.iter_mut().zip(others) {
            *o = class.shift_of(c)?;
        }
        Some(out)
    };
    let m = poly("1+D+D^3+D^4+D^5").square();
    let d26 = poly_pow_mod(&BitPoly::x(), 26, &m)?;
    let passed = pis_ok
        && report.charpoly == m
        && shifts(1, [2, 3, 7]) == Some([1, 26, 6])
        && shifts(10, [9, 8, 4]) == Some([1, 26, 6])
        && report.unmatched == [5, 6]
        && d26 == poly("1+D^2");
    Ok(Check {
        name: "phaseshift classes of 0011001100",
        passed,
        detail: format!(
            "transfer polynomials match: {pis_ok}, unmatched {:?}, D^26 mod M = {d26}",
            report.unmatched
        ),
    })
}

/// Runs every worked example. Internal errors count as failures.
pub fn worked_examples() -> Vec<Check> {
    let runs: [(&'static str, fn() -> Result<Check>); 5] = [
        ("register streams", lfsr_streams),
        ("shrunken sequence (L1 = 3, L2 = 4)", small_generator),
        ("automaton model (L1 = 2, L2 = 5)", model_pipeline),
        ("initial state from 10 keystream bits", state_recovery),
        ("phaseshift classes of 0011001100", phaseshift),
    ];
    runs.iter()
        .map(|&(name, f)| {
            f().unwrap_or_else(|e| Check {
                name,
                passed: false,
                detail: e.to_string(),
            })
        })
        .collect()
}
