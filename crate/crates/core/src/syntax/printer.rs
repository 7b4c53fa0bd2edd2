//! ASCII printing. Base-language output re-parses to the same tree; the
//! expanded constructors print as `box^{S}`, `dia^{S}`, `inv-box^{S}`,
//! `inv-dia^{S}`, `A`, `E`, `forall i.` and `exists i.`.

use std::fmt;

use super::formula::Formula;

const BINDER: u8 = 0;
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;
const ATOM: u8 = 6;

fn prec(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Bot | Top | Prop(_) | Nom(_) => ATOM,
        Iff(..) => IFF,
        Imp(..) => IMP,
        Or(..) => OR,
        And(..) => AND,
        ForallNom(..) | ExistsNom(..) => BINDER,
        _ => PREFIX,
    }
}

fn write_at(out: &mut String, f: &Formula, min: u8) {
    let wrap = prec(f) < min;
    if wrap {
        out.push('(');
    }
    write_formula(out, f);
    if wrap {
        out.push(')');
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    use Formula::*;
    let infix = |out: &mut String, a: &Formula, op: &str, b: &Formula, l: u8, r: u8| {
        write_at(out, a, l);
        out.push_str(op);
        write_at(out, b, r);
    };
    match f {
        Bot => out.push_str("bot"),
        Top => out.push_str("top"),
        Prop(p) | Nom(p) => out.push_str(p),
        And(a, b) => infix(out, a, " & ", b, AND, PREFIX),
        Or(a, b) => infix(out, a, " | ", b, OR, AND),
        Imp(a, b) => infix(out, a, " -> ", b, OR, IMP),
        Iff(a, b) => infix(out, a, " <-> ", b, IMP, IFF),
        Not(a) => prefix(out, "~", a),
        Dia(a) => prefix(out, "<>", a),
        Box(a) => prefix(out, "[]", a),
        SDia(a) => prefix(out, "<!>", a),
        SBox(a) => prefix(out, "[!]", a),
        LBox(s, a) => prefix(out, &format!("box^{{{s}}} "), a),
        LDia(s, a) => prefix(out, &format!("dia^{{{s}}} "), a),
        InvLBox(s, a) => prefix(out, &format!("inv-box^{{{s}}} "), a),
        InvLDia(s, a) => prefix(out, &format!("inv-dia^{{{s}}} "), a),
        GBox(a) => prefix(out, "A ", a),
        GDia(a) => prefix(out, "E ", a),
        ForallNom(i, a) => {
            out.push_str(&format!("forall {i}. "));
            write_at(out, a, BINDER);
        }
        ExistsNom(i, a) => {
            out.push_str(&format!("exists {i}. "));
            write_at(out, a, BINDER);
        }
    }
}

fn prefix(out: &mut String, op: &str, a: &Formula) {
    out.push_str(op);
    write_at(out, a, PREFIX);
}

pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula::{nom, prop, EdgeLabelSet};

    #[test]
    fn documented_tokens() {
        assert_eq!(print_formula(&Formula::imp(Formula::dia(prop("p")), prop("p"))), "<>p -> p");
        assert_eq!(
            print_formula(&Formula::ldia(EdgeLabelSet::singleton("i1", "i2"), Formula::Top)),
            "dia^{(i1,i2)} top"
        );
        assert_eq!(print_formula(&Formula::gbox(nom("i"))), "A i");
        assert_eq!(
            print_formula(&Formula::inv_lbox(EdgeLabelSet::new(), Formula::not(nom("i1")))),
            "inv-box^{} ~i1"
        );
        assert_eq!(
            print_formula(&Formula::and(
                Formula::exists_nom("i2", nom("i2")),
                Formula::Top
            )),
            "(exists i2. i2) & top"
        );
    }

    #[test]
    fn parenthesisation() {
        let f = Formula::imp(Formula::imp(prop("p"), prop("q")), prop("r"));
        assert_eq!(print_formula(&f), "(p -> q) -> r");
        let g = Formula::and(prop("p"), Formula::and(prop("q"), prop("r")));
        assert_eq!(print_formula(&g), "p & (q & r)");
        let h = Formula::not(Formula::and(prop("p"), Formula::sdia(prop("q"))));
        assert_eq!(print_formula(&h), "~(p & <!>q)");
    }
}
