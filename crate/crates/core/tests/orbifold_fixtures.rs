use std::time::Instant;

use orbihom::algebra::{FiniteGroup, GSet};
use orbihom::orbifold::{sector_count_oracle, verify_theorem, OrbifoldProblem, Verdict};
use orbihom::Rationals;

fn fixtures() -> Vec<(&'static str, GSet)> {
    let z2_three = GSet::new(FiniteGroup::cyclic(2), 3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
    vec![
        ("Z/2 on a point", GSet::trivial(FiniteGroup::cyclic(2), 1)),
        ("Z/2 swap", GSet::rotation(2)),
        ("Z/2 on 3 points", z2_three),
        ("Z/3 free", GSet::rotation(3)),
        ("S3 on 3 points", GSet::natural(3)),
        ("Z/4 rotation", GSet::rotation(4)),
    ]
}

#[test]
fn desk_scale_fixtures_pass() {
    for (name, set) in fixtures() {
        let start = Instant::now();
        let p = OrbifoldProblem::from_gset(&Rationals, &set, 3).unwrap();
        let r = verify_theorem(&p).unwrap();
        let h0 = r.hochschild.source[0].dim;
        eprintln!("{name}: {:?} in {:?}, HH0 = {h0}", r.verdict, start.elapsed());
        assert_eq!(r.verdict, Verdict::Pass, "{name}");
        assert_eq!(h0, sector_count_oracle(&set), "{name}");
        assert_eq!(r.sectors.total_contribution(), h0, "{name}");
    }
}
