//! Benchmark inputs.

use layconf::{parse_trs, IndexedTrs};

pub const NKH: &str = "(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> c(g))";
pub const VHUET: &str = "(VAR x) (RULES f(x,x) ->2 a(x,x)  f(x,c(x)) ->2 b(x)  f(c(x),c(x)) ->3 f(x,c(x))  a(x,x) ->1 e(x)  b(x) ->1 e(c(x))  g ->0 c(g))";
pub const UNREALIZABLE: &str = "(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> d(g))";

/// Named systems used by the benches.
pub fn systems() -> Vec<(&'static str, IndexedTrs)> {
    [("nkh", NKH), ("vhuet", VHUET), ("unrealizable", UNREALIZABLE)]
        .into_iter()
        .map(|(n, s)| (n, parse_trs(s).expect("bench input parses")))
        .collect()
}

/// `f(x_1, ..., x_n) = f(c(x_2), ..., c(x_n), c(x_1))`, a cyclic problem of size `n`.
pub fn cyclic_problem(n: usize) -> (String, String, Vec<String>) {
    let vars: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let lhs = format!("f({})", vars.join(","));
    let rot: Vec<String> = (0..n).map(|k| format!("c({})", vars[(k + 1) % n])).collect();
    (lhs, format!("f({})", rot.join(",")), vars)
}
