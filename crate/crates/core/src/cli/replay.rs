//! Golden replay of the published numeric examples, backing `verify-paper`.

use std::collections::BTreeSet;

use serde_json::json;

use super::output::Table;
use super::{Report, EXIT_MISMATCH, EXIT_OK};
use crate::arith::{factorize, mod_inverse, Rational};
use crate::dedekind::{dedekind_fast, dedekind_oracle, three_term};
use crate::equality::{classify_pair, equality_classes, Relation, UnitTable};
use crate::families::{
    corollary1_family, corollary3_family, corollary4_family, shift_t, table1_row, theorem1_family,
    QuadraticFamily, Sign,
};

type Check = fn() -> Result<(), String>;

/// One replayable example.
pub struct Item {
    pub id: &'static str,
    pub title: &'static str,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub result: Result<(), String>,
}

macro_rules! expect_eq {
    ($got:expr, $want:expr) => {{
        let (got, want) = (&$got, &$want);
        if got != want {
            return Err(format!(
                "{}: expected {:?}, got {:?}",
                stringify!($got),
                want,
                got
            ));
        }
    }};
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

fn sum_41_200() -> Result<(), String> {
    let v = dedekind_fast(41, 200).map_err(e)?;
    expect_eq!(v, Rational::new(501, 100));
    expect_eq!(dedekind_oracle(41, 200).map_err(e)?, v);
    expect_eq!(
        format!("{} ({})", v, v.to_decimal(10)),
        "501/100 (5.0100000000)".to_string()
    );
    Ok(())
}

fn theorem1_d8_n5() -> Result<(), String> {
    let f = theorem1_family(8, 5, Sign::Plus).map_err(e)?;
    expect_eq!(f.members, vec![41u64, 81, 121, 161]);
    expect_eq!(f.predicted_value, Rational::new(1, 100) + int(5));
    for m in 1..=4i128 {
        expect_eq!(
            dedekind_fast(1 + 40 * m, 200).map_err(e)?,
            f.predicted_value
        );
    }
    Ok(())
}

fn pair_kinds_200() -> Result<(), String> {
    expect_eq!(
        classify_pair(41, 81, 200).map_err(e)?.relation,
        Relation::NonObviousEqual
    );
    // 41 * 161 ≡ 1 (mod 200)
    expect_eq!(
        classify_pair(41, 161, 200).map_err(e)?.relation,
        Relation::ObviousInverse
    );
    Ok(())
}

fn corollary1_example1() -> Result<(), String> {
    let f = corollary1_family(6, 4, 2, 4, Sign::Plus).map_err(e)?;
    let want = Rational::new(2, 1296) + int(13);
    expect_eq!(f.predicted_value, want);
    for m in [1i128, 2, 4, 5, 7, 8] {
        expect_eq!(dedekind_fast(1 + 144 * m, 1296).map_err(e)?, want);
    }
    let non_obvious: Vec<(u64, u64)> = [(1i128, 2i128), (1, 4), (2, 4)]
        .iter()
        .filter(|&&(a, b)| {
            classify_pair(1 + 144 * a, 1 + 144 * b, 1296)
                .map(|v| v.relation == Relation::NonObviousEqual)
                .unwrap_or(false)
        })
        .map(|&(a, b)| (a as u64, b as u64))
        .collect();
    expect_eq!(non_obvious.len(), 3usize);
    Ok(())
}

fn corollary1_example2() -> Result<(), String> {
    let f = corollary1_family(12, 3, 1, 6, Sign::Plus).map_err(e)?;
    let want = Rational::new(2, 1728);
    expect_eq!(f.predicted_value, want);
    for m in [1i128, 5, 7, 11] {
        expect_eq!(dedekind_fast(1 + 72 * m, 1728).map_err(e)?, want);
    }
    for (a, b) in [(1i128, 5i128), (1, 7), (1, 11), (5, 7), (5, 11), (7, 11)] {
        expect_eq!(
            classify_pair(1 + 72 * a, 1 + 72 * b, 1728)
                .map_err(e)?
                .relation,
            Relation::NonObviousEqual
        );
    }
    Ok(())
}

fn corollary3_p5() -> Result<(), String> {
    let f = corollary3_family(5, Sign::Plus).map_err(e)?;
    expect_eq!(f.predicted_value, Rational::new(2, 25) - int(2));
    let classes = equality_classes(25).map_err(e)?;
    let class = classes
        .iter()
        .find(|c| c.contains(6))
        .ok_or("no class of 6")?;
    expect_eq!(class.members, f.members);
    expect_eq!(class.members, vec![6u64, 11, 16, 21]);
    Ok(())
}

fn powers_243() -> Result<(), String> {
    let base = Rational::new(83, 243);
    let ms: Vec<i128> = (0..27).filter(|m| m % 3 != 0).collect();
    let mut zs = BTreeSet::new();
    for &m in &ms {
        let z = dedekind_fast(1 + 9 * m, 243).map_err(e)? - base.clone();
        if !z.is_integer() {
            return Err(format!("S(1+9*{m},243) - 83/243 = {z} is not an integer"));
        }
        zs.insert(z.floor().to_string().parse::<i64>().map_err(e)?);
    }
    expect_eq!(
        zs.into_iter().collect::<Vec<_>>(),
        vec![-27i64, -19, -11, -3, 5, 13, 21]
    );
    let reps = [1i128, 2, 4, 10, 11, 13, 14, 16, 17];
    let mut pairs = Vec::new();
    for (i, &a) in reps.iter().enumerate() {
        for &b in &reps[i + 1..] {
            if dedekind_fast(1 + 9 * a, 243).map_err(e)?
                == dedekind_fast(1 + 9 * b, 243).map_err(e)?
            {
                pairs.push((a, b));
            }
        }
    }
    expect_eq!(pairs, vec![(4i128, 14i128), (11, 16)]);
    expect_eq!(
        dedekind_fast(1 + 9 * 4, 243).map_err(e)? - base.clone(),
        int(5)
    );
    expect_eq!(dedekind_fast(1 + 9 * 11, 243).map_err(e)? - base, int(-11));
    Ok(())
}

fn quad_example() -> Result<QuadraticFamily, String> {
    corollary4_family(7, &[11, 13, 17, 29]).map_err(e)
}

fn corollary4_solutions() -> Result<(), String> {
    let f = quad_example()?;
    expect_eq!((f.q, f.k), (53u64, 1u64));
    expect_eq!((f.n, f.nt), (70499u64, 493493u64));
    expect_eq!(f.solutions.len(), 16usize);
    if !f.solutions.contains(&706) {
        return Err("706 is not among the solutions".into());
    }
    Ok(())
}

fn corollary4_arguments() -> Result<(), String> {
    let f = quad_example()?;
    expect_eq!(
        f.arguments[..5].to_vec(),
        vec![4943u64, 58535, 79556, 94669, 148261]
    );
    let inverses: Vec<u64> = f.arguments[..5]
        .iter()
        .map(|&a| mod_inverse(a as i128, f.nt))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    expect_eq!(inverses, vec![488601u64, 435009, 413988, 398875, 345283]);
    Ok(())
}

fn corollary4_value() -> Result<(), String> {
    let f = quad_example()?;
    let want = Rational::new(2, 493493) + Rational::new(7, 70499) - int(3);
    expect_eq!(f.predicted_value, want);
    expect_eq!(
        f.predicted_value.to_decimal(10),
        "-2.9998966551".to_string()
    );
    let v = f.verify();
    if !v.passed() {
        return Err(format!("mismatching members: {:?}", v.mismatches));
    }
    expect_eq!(dedekind_fast(4943, 493493).map_err(e)?, want);
    Ok(())
}

fn shift_t_example() -> Result<(), String> {
    let g = shift_t(&quad_example()?, 2).map_err(e)?;
    expect_eq!(g.t, 141005u64);
    expect_eq!(factorize(g.t), vec![(5u64, 1u32), (28201, 1)]);
    expect_eq!(g.arguments.len(), 16usize);
    expect_eq!(
        g.predicted_value.to_decimal(10),
        "-0.9999007076".to_string()
    );
    let v = g.verify();
    if !v.passed() {
        return Err(format!("mismatching members: {:?}", v.mismatches));
    }
    Ok(())
}

fn factorizations() -> Result<(), String> {
    expect_eq!(
        factorize(493493),
        vec![(7u64, 1u32), (11, 1), (13, 1), (17, 1), (29, 1)]
    );
    expect_eq!(mod_inverse(4943, 493493).map_err(e)?, 488601u64);
    Ok(())
}

fn table_row(t: u64, q: u64, k: u64, primes: [u64; 6]) -> Result<(), String> {
    let row = table1_row(t).map_err(e)?;
    expect_eq!((row.t, row.q, row.k), (t, q, k));
    expect_eq!(row.primes, primes.to_vec());
    Ok(())
}

fn n17017_partners() -> Result<(), String> {
    let table = UnitTable::new(17017).map_err(e)?;
    let counts: Vec<usize> = (2..=6)
        .map(|m| table.pivot_report(m).map(|p| p.partners))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    expect_eq!(counts, vec![16usize, 16, 16, 16, 8]);
    Ok(())
}

fn n17017_equal_counts() -> Result<(), String> {
    let table = UnitTable::new(17017).map_err(e)?;
    let four = table.pivot_report(4).map_err(e)?;
    let five = table.pivot_report(5).map_err(e)?;
    expect_eq!(four.largest_equal_group, 8usize);
    expect_eq!(five.largest_equal_group, 10usize);
    for m in 2..=6 {
        if !table.pivot_report(m).map_err(e)?.non_obvious_among_partners {
            return Err(format!("no non-obvious equality among the partners of {m}"));
        }
    }
    Ok(())
}

fn three_term_replay() -> Result<(), String> {
    // d = n, c = m - l n with (m, n, l) = (2, 5, 1)
    let (m, n, l) = (2i128, 5u64, 1i128);
    let t = three_term(m, n, m - l * n as i128, n).map_err(e)?;
    expect_eq!(t.q, 25u64);
    if !t.holds() {
        return Err(format!("lhs {} != rhs {}", t.lhs, t.rhs));
    }
    let m_star = mod_inverse(m, n).map_err(e)? as i128;
    let s = dedekind_fast(-1 - l * n as i128 * m_star, 25).map_err(e)?;
    expect_eq!(
        s + Rational::new(2, 25) + Rational::from(l) - int(3),
        Rational::zero()
    );
    Ok(())
}

pub fn items() -> Vec<Item> {
    macro_rules! row {
        ($id:literal, $t:expr, $q:expr, $k:expr, $p:expr) => {
            Item {
                id: $id,
                title: concat!("eligible primes for t = ", stringify!($t)),
                check: || table_row($t, $q, $k, $p),
            }
        };
    }
    vec![
        Item {
            id: "sum-41-200",
            title: "S(41,200) = 501/100 = 5.01",
            check: sum_41_200,
        },
        Item {
            id: "theorem1-d8-n5",
            title: "S(1+40m,200) = 1/100 + 5 for m = 1..4",
            check: theorem1_d8_n5,
        },
        Item {
            id: "pairs-200",
            title: "(41,81) non-obvious, (41,161) obvious mod 200",
            check: pair_kinds_200,
        },
        Item {
            id: "corollary1-l6-k4",
            title: "S(1+144m,1296) = 2/1296 + 13",
            check: corollary1_example1,
        },
        Item {
            id: "corollary1-l12-k3",
            title: "S(1+72m,1728) = 2/1728",
            check: corollary1_example2,
        },
        Item {
            id: "corollary3-p5",
            title: "class of 6 mod 25 is {6,11,16,21}",
            check: corollary3_p5,
        },
        Item {
            id: "powers-243",
            title: "S(1+9m,243) = 83/243 + z, equal pairs (4,14), (11,16)",
            check: powers_243,
        },
        Item {
            id: "quad-solutions",
            title: "16 roots of m^2 - 7m - 1 mod 70499, including 706",
            check: corollary4_solutions,
        },
        Item {
            id: "quad-arguments",
            title: "first five arguments 1+7m and their inverses mod 493493",
            check: corollary4_arguments,
        },
        Item {
            id: "quad-value",
            title: "common value 2/493493 + 7/70499 - 3 ≈ -2.9998966551",
            check: corollary4_value,
        },
        Item {
            id: "quad-shift",
            title: "t1 = 7 + 2*70499 = 141005 = 5*28201, value ≈ -0.9999007076",
            check: shift_t_example,
        },
        Item {
            id: "factorize-493493",
            title: "493493 = 7*11*13*17*29 and 4943* = 488601",
            check: factorizations,
        },
        row!("table1-t1", 1, 5, 1, [11, 19, 29, 31, 41, 59]),
        row!("table1-t2", 2, 2, 2, [7, 17, 23, 31, 41, 47]),
        row!("table1-t3", 3, 13, 1, [17, 23, 29, 43, 53, 61]),
        row!("table1-t5", 5, 29, 1, [7, 13, 23, 53, 59, 67]),
        row!("table1-t6", 6, 10, 2, [13, 31, 37, 41, 43, 53]),
        row!("table1-t7", 7, 53, 1, [11, 13, 17, 29, 37, 43]),
        row!("table1-t10", 10, 26, 2, [11, 17, 19, 23, 37, 59]),
        Item {
            id: "n17017-partners",
            title: "condition partners 16,16,16,16,8 for m1 = 2..6 mod 17017",
            check: n17017_partners,
        },
        Item {
            id: "n17017-equal",
            title: "equal-value groups of 8 (m1 = 4) and 10 (m1 = 5) mod 17017",
            check: n17017_equal_counts,
        },
        Item {
            id: "three-term-replay",
            title: "0 = S(-1-lnm*, ln^2) + 2/(ln^2) + l - 3 at (m,n,l) = (2,5,1)",
            check: three_term_replay,
        },
    ]
}

/// Runs every item whose id starts with `only` (all items when `None`).
pub fn run_items(only: Option<&str>) -> Vec<Outcome> {
    items()
        .into_iter()
        .filter(|it| only.is_none_or(|p| it.id.starts_with(p)))
        .map(|it| Outcome {
            id: it.id,
            title: it.title,
            result: (it.check)(),
        })
        .collect()
}

pub fn cmd_verify(list: bool, only: Option<&str>) -> Report {
    if list {
        let selected: Vec<Item> = items()
            .into_iter()
            .filter(|it| only.is_none_or(|p| it.id.starts_with(p)))
            .collect();
        let mut text = String::new();
        let mut t = Table::new(&["id", "title"]);
        for it in &selected {
            text.push_str(&format!("{}  {}\n", it.id, it.title));
            t.push(vec![it.id.into(), it.title.into()]);
        }
        let json = json!({
            "items": selected.iter().map(|it| json!({"id": it.id, "title": it.title})).collect::<Vec<_>>(),
        });
        return Report {
            text,
            json,
            tables: vec![t],
            exit_code: EXIT_OK,
        };
    }
    let outcomes = run_items(only);
    let failed = outcomes.iter().filter(|o| o.result.is_err()).count();
    let mut text = String::new();
    let mut t = Table::new(&["id", "status", "detail"]);
    for o in &outcomes {
        match &o.result {
            Ok(()) => text.push_str(&format!("PASS {}  {}\n", o.id, o.title)),
            Err(msg) => text.push_str(&format!("FAIL {}  {}\n     {}\n", o.id, o.title, msg)),
        }
        t.push(vec![
            o.id.into(),
            if o.result.is_ok() { "pass" } else { "fail" }.into(),
            o.result.clone().err().unwrap_or_default(),
        ]);
    }
    text.push_str(&format!(
        "{} passed, {} failed\n",
        outcomes.len() - failed,
        failed
    ));
    let json = json!({
        "passed": outcomes.len() - failed,
        "failed": failed,
        "items": outcomes.iter().map(|o| json!({
            "id": o.id,
            "title": o.title,
            "pass": o.result.is_ok(),
            "detail": o.result.clone().err(),
        })).collect::<Vec<_>>(),
    });
    Report {
        text,
        json,
        tables: vec![t],
        exit_code: if failed == 0 { EXIT_OK } else { EXIT_MISMATCH },
    }
}
