use super::Formula;

#[derive(Debug, Clone, Copy)]
pub(super) enum Style {
    Ascii,
    Unicode,
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 0,
        Formula::Imp(..) => 1,
        Formula::Cond(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        Formula::Var(_) | Formula::Meta(_) => 6,
    }
}

// Parentheses are the minimum the grammar needs, plus one house rule: a
// conditional that is an operand of a binary Boolean connective is always
// wrapped, as in `(A>C)&(B>C)->(A|B>C)`.
pub(super) fn render(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    write(f, style, &mut out);
    out
}

fn sym(style: Style, ascii: &'static str, uni: &'static str) -> &'static str {
    match style {
        Style::Ascii => ascii,
        Style::Unicode => uni,
    }
}

fn write(f: &Formula, style: Style, out: &mut String) {
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Meta(c) => out.push(*c),
        Formula::Not(a) => {
            out.push_str(sym(style, "~", "¬"));
            operand(a, level(a) < 5, style, out);
        }
        Formula::And(a, b) => binary(a, b, 4, sym(style, "&", "∧"), true, style, out),
        Formula::Or(a, b) => binary(a, b, 3, sym(style, "|", "∨"), true, style, out),
        Formula::Cond(a, b) => {
            operand(a, level(a) <= 2, style, out);
            out.push_str(sym(style, ">", " > "));
            operand(b, level(b) <= 2, style, out);
        }
        Formula::Imp(a, b) => binary(a, b, 1, sym(style, "->", " → "), false, style, out),
        Formula::Iff(a, b) => binary(a, b, 0, sym(style, "<->", " ↔ "), false, style, out),
    }
}

fn binary(
    a: &Formula,
    b: &Formula,
    own: u8,
    op: &str,
    left_assoc: bool,
    style: Style,
    out: &mut String,
) {
    let is_cond = |x: &Formula| matches!(x, Formula::Cond(..));
    let left_parens = is_cond(a) || if left_assoc { level(a) < own } else { level(a) <= own };
    operand(a, left_parens, style, out);
    out.push_str(op);
    operand(b, is_cond(b) || level(b) <= own, style, out);
}

fn operand(f: &Formula, parens: bool, style: Style, out: &mut String) {
    if parens {
        out.push('(');
        write(f, style, out);
        out.push(')');
    } else {
        write(f, style, out);
    }
}
