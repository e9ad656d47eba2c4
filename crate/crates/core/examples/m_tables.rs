//! The m-tables of arrow indices and their consistency suite.

use sl2lift::lift::m_table;

fn main() -> sl2lift::Result<()> {
    for (p, f) in [(2, 3), (3, 2), (5, 1)] {
        let t = m_table(p, f)?;
        println!("({p},{f}) κ = {}, scale {}", t.kappa, t.scale);
        for (q, row) in t.m.iter().enumerate() {
            println!("  q={q}: {row:?}");
        }
        let rep = t.suite_report(6);
        for c in &rep.checks {
            println!("  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.id);
        }
    }
    Ok(())
}
