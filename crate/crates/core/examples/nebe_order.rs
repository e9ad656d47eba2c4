//! The conjectural basic order of Z₂SL₂(2^f), built from a decomposition matrix.

use sl2lift::fixture::DecompFixture;
use sl2lift::lift::verify_nebe;

fn main() -> sl2lift::Result<()> {
    let path = std::env::args().nth(1);
    let fixtures = match &path {
        Some(p) => vec![DecompFixture::load(p)?],
        None => vec![
            DecompFixture::from_json(include_str!("../fixtures/sl2_4.json"))?,
            DecompFixture::from_json(include_str!("../fixtures/sl2_8.json"))?,
        ],
    };
    for fx in fixtures {
        let (o, rep) = verify_nebe(&fx)?;
        println!("{}: {} idempotents, |G| = {}", fx.group, o.num_idempotents(), fx.group_order());
        for c in &rep.checks {
            println!("  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.id);
        }
    }
    Ok(())
}
