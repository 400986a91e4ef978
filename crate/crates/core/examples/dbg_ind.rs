use std::time::Instant;
use biratio_core::exact::rational::rat;
use biratio_core::family::builders::{build_family_map, FamilyParams};
use biratio_core::maps::{ind_disjoint, indeterminacy_set};

fn main() {
    for d in [2u64, 3] {
        let t0 = Instant::now();
        let f = build_family_map(&FamilyParams::new(2, d, rat(1, 3), rat(2, 5)), Some(4096)).unwrap();
        println!("d={d} build: {:?}", t0.elapsed());
        let t1 = Instant::now();
        let ind = indeterminacy_set(&f).unwrap();
        println!("d={d} ind(f): {:?} points {}", t1.elapsed(), ind.points.len());
        let t2 = Instant::now();
        let cert = ind_disjoint(&f).unwrap();
        println!("d={d} disjoint: {:?} verdict {}", t2.elapsed(), cert.is_disjoint());
    }
}
