//! Compile a replacement-of-equivalents step into RCEA, RCEC and PC lines.

use condlogic::corpus::Catalog;
use condlogic::kernel::{check_proof, replacement_proof, RuleRegistry};
use condlogic::{parse, Path, Step};

fn main() -> condlogic::Result<()> {
    let mut catalog = Catalog::bundled();
    catalog.system_mut("SDA+RCEA").unwrap().rules.push("RCEC".into());

    let cases = [
        ("(~p|q)>r", vec![Path(vec![Step::Left])], "~p|q", "p->q"),
        ("~(s>(p&q))", vec![Path(vec![Step::Only, Step::Right])], "p&q", "q&p"),
        ("(p&q>p&q)&r", vec![Path(vec![Step::Left, Step::Left]), Path(vec![Step::Left, Step::Right])], "p&q", "q&p"),
    ];
    for (host, paths, lhs, rhs) in cases {
        let proof = replacement_proof("re", "SDA+RCEA", &parse(host)?, &paths, &parse(lhs)?, &parse(rhs)?, |_| true)?;
        let report = check_proof(&proof, &catalog, &RuleRegistry::new());
        println!("{report}\n");
    }
    Ok(())
}
