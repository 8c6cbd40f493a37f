// Prints the basis multiplication table and checks it against the
// generating products closed under subscript symmetries.

use splitocto::octonion::MulTable;
use splitocto::OctIndex;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = MulTable::figure();
    let labels: Vec<String> = OctIndex::ALL.iter().map(|i| i.label()).collect();
    println!("{:>22} | {}", "", labels.join(" "));
    for (row, name) in table.labels().iter().zip(&labels) {
        println!("{name:>22} | {}", row.join(" "));
    }
    println!("nonzero products: {}", table.nonzero_count());

    let (generated, conflicts) = MulTable::from_rules();
    let diff = table.diff(&generated);
    println!("regenerated from rules: {} conflicts, {} differences", conflicts.len(), diff.len());
    if !(conflicts.is_empty() && diff.is_empty()) {
        return Err(format!("table mismatch: {diff:?} {conflicts:?}").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("table example failed");
}
