use nk_core::nk_engine::{NKTable, RingClass};

/// Rows `TK_n` with `n` decreasing, columns `i`; entries exact only up to
/// the truncation carry a `*`.
pub fn table(t: &NKTable) -> String {
    let mut s = String::new();
    let class = match t.class {
        RingClass::Artinian => "Artinian".to_string(),
        RingClass::Curve => format!(
            "numerical-semigroup ring, weights ≤ {}",
            t.weight_bound.unwrap_or(0)
        ),
    };
    s.push_str(&format!("TK_n^(i) of {} ({class})\n", t.ring));
    let cols = t.max_i();
    let width = 6;
    s.push_str(&format!("{:<8}", ""));
    for i in 1..=cols {
        s.push_str(&format!("{:>width$}", format!("i={i}")));
    }
    s.push_str("   NK_n per t-weight\n");
    let mut starred = false;
    for n in (t.n_min..=t.n_max).rev() {
        s.push_str(&format!("{:<8}", format!("TK_{n}")));
        for i in 1..=cols {
            let cell = match t.get(n, i) {
                Some(e) if e.certified_to.is_some() && e.dim > 0 => {
                    starred = true;
                    format!("{}*", e.dim)
                }
                Some(e) => e.dim.to_string(),
                None => String::new(),
            };
            s.push_str(&format!("{cell:>width$}"));
        }
        let total = t.total(n).unwrap_or(0);
        s.push_str(&format!("   {total}\n"));
    }
    if starred {
        s.push_str(&format!(
            "* exact in weights ≤ {}\n",
            t.weight_bound.unwrap_or(0)
        ));
    }
    let nonzero: Vec<_> = t.entries.iter().filter(|e| e.dim > 0).collect();
    if !nonzero.is_empty() {
        s.push_str("nonzero entries:\n");
        for e in nonzero {
            s.push_str(&format!(
                "  TK_{}^({}) dim {} [{}]",
                e.n,
                e.i,
                e.dim,
                branch(e.branch)
            ));
            if let Some(pw) = &e.per_weight {
                let parts: Vec<String> = pw
                    .iter()
                    .map(|p| format!("w{}:{}", p.weight, p.dim))
                    .collect();
                s.push_str(&format!(" weights {}", parts.join(" ")));
            }
            s.push('\n');
            if !e.witnesses.is_empty() {
                s.push_str(&format!("    e.g. {}\n", e.witnesses.join(", ")));
            }
        }
    }
    s
}

fn branch(b: nk_core::nk_engine::Branch) -> &'static str {
    use nk_core::nk_engine::Branch::*;
    match b {
        Hochschild => "HH_{n-1}^(i-1)",
        ExactSequence => "Ω → Ω_cdh",
        CdhVanishing => "cdh vanishing",
    }
}

#[cfg(test)]
mod tests {
    use nk_core::nk_engine::tk_table_curve;
    use nk_core::semigroup::NumericalSemigroup;

    #[test]
    fn staircase_and_stars() {
        let t = tk_table_curve(
            &NumericalSemigroup::new(&[3, 4, 5]).unwrap(),
            None,
            -1,
            2,
            12,
        )
        .unwrap();
        let s = super::table(&t);
        let rows: Vec<&str> = s
            .lines()
            .filter(|l| l.starts_with("TK_") && !l.starts_with("TK_n"))
            .collect();
        assert_eq!(
            rows[0].split_whitespace().collect::<Vec<_>>(),
            ["TK_2", "0", "5*", "0", "0", "5"]
        );
        assert_eq!(
            rows[3].split_whitespace().collect::<Vec<_>>(),
            ["TK_-1", "0", "0"]
        );
        assert!(s.contains("* exact in weights ≤ 12"));
    }
}
