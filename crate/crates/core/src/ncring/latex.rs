use std::fmt::Write as _;

use super::NCPoly;

/// `s2t` ↦ `\sigma^{2}\tau`; product names keep their parentheses.
pub fn element_latex(name: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = name.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let base = match c {
            's' => "\\sigma",
            't' => "\\tau",
            'e' => {
                out.push('1');
                continue;
            }
            other => {
                out.push(other);
                continue;
            }
        };
        out.push_str(base);
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if i > start {
            let exp: String = chars[start..i].iter().collect();
            write!(out, "^{{{exp}}}").unwrap();
        }
    }
    out
}

fn var_latex(name: &str) -> String {
    match name.split_once('_') {
        Some((head, tail)) => format!("{head}_{{{tail}}}"),
        None => name.to_string(),
    }
}

/// LaTeX in the `σ^k(x)` notation, with runs of equal factors written as
/// powers.
pub fn to_latex(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let ctx = p.ctx();
    let grp = ctx.group();
    let mut out = String::new();
    for (i, (w, c)) in p.terms().iter().enumerate() {
        let abs = c.abs();
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if w.is_empty() || !abs.is_one() {
            write!(out, "{abs}").unwrap();
        }
        let syms = w.syms();
        let mut k = 0;
        while k < syms.len() {
            let s = syms[k];
            let mut run = 1;
            while k + run < syms.len() && syms[k + run] == s {
                run += 1;
            }
            let v = var_latex(ctx.var_name(s.var()));
            let factor = if s.elem() == 0 {
                v
            } else {
                format!("{}({v})", element_latex(grp.name(s.elem())))
            };
            if run > 1 {
                if s.elem() == 0 {
                    write!(out, "{factor}^{{{run}}}").unwrap();
                } else {
                    write!(out, "\\left({factor}\\right)^{{{run}}}").unwrap();
                }
            } else {
                out.push_str(&factor);
            }
            k += run;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_names() {
        assert_eq!(element_latex("s"), "\\sigma");
        assert_eq!(element_latex("s2t"), "\\sigma^{2}\\tau");
        assert_eq!(element_latex("st2"), "\\sigma\\tau^{2}");
        assert_eq!(element_latex("(s,e)"), "(\\sigma,1)");
    }
}
