use proptest::prelude::*;
use su21_cli::expr::parse_element_expr;

const U_GENS: [&str; 10] = ["E", "F", "h1", "h2", "H1", "H2", "E1", "E2", "F1", "F2"];
const C_GENS: [&str; 4] = ["E1", "E2", "F1", "F2"];

fn side(gens: &'static [&'static str], max_exp: u32) -> impl Strategy<Value = String> {
    prop::collection::vec((0..gens.len(), 1..=max_exp), 0..4).prop_map(move |fs| {
        if fs.is_empty() {
            return "1".to_string();
        }
        fs.iter().map(|(g, e)| if *e == 1 { gens[*g].to_string() } else { format!("{}^{e}", gens[*g]) }).collect::<Vec<_>>().join(" ")
    })
}

fn term(with_w: bool) -> impl Strategy<Value = String> {
    (1u32..5, 1u32..4, side(&U_GENS, 2), side(&C_GENS, 1), 1usize..=2).prop_map(move |(n, d, u, c, s)| {
        let body = format!("{n}/{d} {u} (x) {c}");
        if with_w {
            format!("{body} (x) w{s}")
        } else {
            body
        }
    })
}

fn expr() -> impl Strategy<Value = String> {
    any::<bool>().prop_flat_map(|w| {
        prop::collection::vec((any::<bool>(), term(w)), 1..4).prop_map(|ts| {
            let mut s = String::new();
            for (i, (neg, t)) in ts.iter().enumerate() {
                match (i, neg) {
                    (0, true) => s.push('-'),
                    (0, false) => {}
                    (_, true) => s.push_str(" - "),
                    (_, false) => s.push_str(" + "),
                }
                s.push_str(t);
            }
            s
        })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(text in expr()) {
        let a = parse_element_expr(&text, Some(2)).unwrap();
        let printed = a.to_string();
        let b = parse_element_expr(&printed, Some(2)).unwrap();
        prop_assert_eq!(a, b, "{} printed as {}", text, printed);
    }

    #[test]
    fn whitespace_insensitive(text in expr()) {
        let squeezed: String = text.split(' ').collect::<Vec<_>>().join("  ");
        prop_assert_eq!(parse_element_expr(&text, Some(2)).unwrap(), parse_element_expr(&squeezed, Some(2)).unwrap());
    }
}
