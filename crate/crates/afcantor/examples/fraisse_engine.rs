//! Run the engine on the all-dimensions category and replay its log.

use afcantor::bratteli::{check_cantor, CheckOptions};
use afcantor::fdalg::compose;
use afcantor::fraisse::{absorb_search, build_fraisse, CategorySpec, Schedule};

fn main() -> afcantor::Result<()> {
    let (d, log) = build_fraisse(&CategorySpec::all_dims(6), 40, Schedule::default())?;
    println!("{} levels, {} records", d.depth(), log.records.len());
    let top = d.depth() - 1;
    let mut exact = 0;
    for r in &log.records {
        let req = &r.request;
        if let Some((level, delta)) = absorb_search(&d, req.stage, &req.arrow, req.stage, top)?.found() {
            if level == r.level && compose(&delta, &req.arrow)? == d.connecting(req.stage, level)? {
                exact += 1;
            }
        }
    }
    println!("records replayed exactly: {exact}/{}", log.records.len());
    let opts = CheckOptions {
        source_levels: Some(3),
        ..Default::default()
    };
    println!("cantor check: {:?}", check_cantor(&d, &opts)?.verdict);
    Ok(())
}
