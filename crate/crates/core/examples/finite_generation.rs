//! Every element of the kind algebra is a product of elements of rank at
//! most 2.

use omegaclone::kind::{generator_decompose, generators, product, KindElement};
use omegaclone::term::Ranked;

fn main() {
    println!("{} generators: {}", generators().len(),
        generators().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    for a in KindElement::enumerate(3).iter().filter(|a| a.rank() == 3).take(8) {
        let w = generator_decompose(a, 4).unwrap();
        assert_eq!(&product(&w).unwrap(), a);
        println!("{a} = pr {w}");
    }
}
