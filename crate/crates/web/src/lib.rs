//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document; failures come back as `{"error": "..."}`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use nk_core::algebra::FinitelyPresentedAlgebra;
use nk_core::error::Error;
use nk_core::field::Q;
use nk_core::nk_engine::{bass_report, tk_table, tk_table_curve, NKTable};
use nk_core::semigroup::NumericalSemigroup;
use nk_core::verify::{builtin, run_suite, Suite, SuiteOptions, Target, BUILTINS};

enum Input {
    Ring(FinitelyPresentedAlgebra<Q>),
    Semigroup(NumericalSemigroup),
}

/// A ring description, a builtin name, or `semigroup 2,3`.
fn input(src: &str) -> Result<Input, Error> {
    let src = src.trim();
    if let Some(rest) = src.strip_prefix("semigroup") {
        let gens = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("bad generator '{s}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Input::Semigroup(NumericalSemigroup::new(&gens)?));
    }
    let text = builtin(src).unwrap_or(src);
    Ok(Input::Ring(FinitelyPresentedAlgebra::parse(text)?))
}

fn table(src: &str, lo: i64, hi: i64, weight: u32) -> Result<NKTable, Error> {
    match input(src)? {
        Input::Ring(r) => tk_table(&r, lo, hi, Some(weight)),
        Input::Semigroup(s) => tk_table_curve(&s, None, lo, hi, weight),
    }
}

fn respond<T: Serialize>(r: Result<T, Error>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

/// The `TK_n^(i)` table for `lo <= n <= hi`.
#[wasm_bindgen]
pub fn compute_table(ring: &str, lo: i32, hi: i32, weight: u32) -> String {
    if lo > hi || hi - lo > 8 || hi > 5 {
        return respond::<()>(Err(Error::Invalid(
            "choose lo <= hi <= 5 with at most 9 rows".into(),
        )));
    }
    respond(table(ring, lo as i64, hi as i64, weight))
}

/// Verdicts on `NK_n`, `NK_{n-1}` and `N²K_n`, with the prose block.
#[wasm_bindgen]
pub fn bass_verdict(ring: &str, n: i32, weight: u32) -> String {
    #[derive(Serialize)]
    struct Out {
        verdicts: nk_core::nk_engine::BassReport,
        text: String,
    }
    if !(-3..=4).contains(&n) {
        return respond::<()>(Err(Error::Invalid("choose -3 <= n <= 4".into())));
    }
    let n = n as i64;
    respond(
        table(ring, (n - 1).min(-1), n, weight)
            .and_then(|t| bass_report(&t, n))
            .map(|v| Out {
                text: v.render(),
                verdicts: v,
            }),
    )
}

/// One verification suite; `ring` may be empty for `cartier` and `cech`.
#[wasm_bindgen]
pub fn verify_suite(suite: &str, ring: &str, big_n: u32, weight: u32) -> String {
    let run = || -> Result<_, Error> {
        let suite: Suite = suite.parse()?;
        let target = if ring.trim().is_empty() {
            Target::Default
        } else {
            match input(ring)? {
                Input::Ring(r) => Target::ring(ring.trim(), r),
                Input::Semigroup(s) => Target::ring(ring.trim(), s.presentation()?),
            }
        };
        let opts = SuiteOptions {
            n: big_n.min(3) as usize,
            weight: Some(weight),
            ..Default::default()
        };
        let weight_free = matches!(&target, Target::Ring { ring, .. } if ring.is_zero_dimensional())
            && suite != Suite::Cartier;
        let opts = if weight_free {
            SuiteOptions {
                weight: None,
                ..opts
            }
        } else {
            opts
        };
        let report = run_suite(suite, &target, &opts)?;
        Ok(
            serde_json::json!({ "passed": report.passed(), "text": report.render(), "report": report }),
        )
    };
    respond(run())
}

/// `[[name, description], …]`
#[wasm_bindgen]
pub fn builtins() -> String {
    serde_json::to_string(BUILTINS).expect("serializable")
}
