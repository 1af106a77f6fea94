use nilflex_core::catalog::{verify_all, RunConfig};
fn main() {
    let t = std::time::Instant::now();
    let summary = verify_all(&RunConfig::default()).expect("pipeline runs");
    for row in &summary.rows {
        if row.ok {
            println!("ok   {}", row.structure);
        } else {
            println!("FAIL {} :: {:?}", row.structure, row.mismatches);
        }
    }
    println!("flexible set ok: {}", summary.flexible_set_ok);
    println!("four dim ok:     {}", summary.four_dim_ok);
    println!("kt cup ok:       {}", summary.kt_cup_ok);
    println!("product row ok:  {}", summary.product_row_ok);
    println!("PASSED: {}  ({:.1?})", summary.passed, t.elapsed());
}
