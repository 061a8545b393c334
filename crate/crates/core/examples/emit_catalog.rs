//! Prints a catalog semigroup as a Cayley file: `emit_catalog i2`.

use noble_core::catalog;
use noble_core::io::emit_cayley;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let table = match which.as_str() {
        "e1" | "e2" | "e3" | "e4" => catalog::chain(which[1..].parse().unwrap()),
        "c2" => catalog::cyclic_group(2),
        "s3" => catalog::symmetric_group_3(),
        "b2" => catalog::brandt_b2(),
        "i2" => catalog::i2(),
        "i3" => catalog::symmetric_inverse(3),
        _ => {
            eprintln!("usage: emit_catalog e1|e2|e3|e4|c2|s3|b2|i2|i3");
            std::process::exit(2);
        }
    };
    print!("{}", emit_cayley(&table.with_name(which)));
}
